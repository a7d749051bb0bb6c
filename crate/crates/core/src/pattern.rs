//! Target patterns `T` whose copies are counted.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::counting::{injective_homomorphisms, Count};
use crate::error::{Error, Result};
use crate::generate::{complete_multipartite, generate, GenSpec};
use crate::graph::Graph;
use crate::graph6;

/// The pattern graph `T`.
///
/// Literal syntax: `K3` (clique), `K3(2)` (blow-up `K_3(2)`), `K3+(2)` (coned
/// blow-up `K_3(2)` plus an apex) and `g6:<graph6>` for anything else.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Clique(usize),
    Blowup { m: usize, t: usize },
    ConedBlowup { m: usize, t: usize },
    Arbitrary(Graph),
}

impl Pattern {
    pub fn edge() -> Self {
        Pattern::Clique(2)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Pattern::Clique(0) => Err(Error::InvalidParameter("clique pattern needs m >= 1".into())),
            Pattern::Blowup { m, t } | Pattern::ConedBlowup { m, t } if m == 0 || t == 0 => Err(
                Error::InvalidParameter(format!("blow-up pattern needs m, t >= 1, got m={m} t={t}")),
            ),
            _ => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Pattern::Clique(m) => *m,
            Pattern::Blowup { m, t } => m * t,
            Pattern::ConedBlowup { m, t } => m * t + 1,
            Pattern::Arbitrary(g) => g.n(),
        }
    }

    /// The pattern as a concrete graph.
    pub fn graph(&self) -> Graph {
        match self {
            Pattern::Clique(m) => Graph::complete(*m),
            Pattern::Blowup { m, t } => complete_multipartite(&vec![*t; *m]),
            Pattern::ConedBlowup { m, t } => generate(&GenSpec::ConedBlowup { m: *m, t: *t })
                .expect("validated coned blow-up parameters"),
            Pattern::Arbitrary(g) => g.clone(),
        }
    }

    /// `|Aut(T)|`: closed forms for cliques and blow-ups, exhaustive
    /// self-embedding search otherwise.
    pub fn automorphism_count(&self) -> Result<Count> {
        match *self {
            Pattern::Clique(m) => factorial(m),
            Pattern::Blowup { m, t } => {
                let tf = factorial(t)?;
                let mut acc = factorial(m)?;
                for _ in 0..m {
                    acc = acc.checked_mul(tf).ok_or(Error::CountOverflow)?;
                }
                Ok(acc)
            }
            _ => {
                let g = self.graph();
                injective_homomorphisms(&g, &g)
            }
        }
    }
}

fn factorial(n: usize) -> Result<Count> {
    (1..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(i).ok_or(Error::CountOverflow))
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Clique(m) => write!(f, "K{m}"),
            Pattern::Blowup { m, t } => write!(f, "K{m}({t})"),
            Pattern::ConedBlowup { m, t } => write!(f, "K{m}+({t})"),
            Pattern::Arbitrary(g) => write!(f, "g6:{}", graph6::encode(g)),
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse(format!("unknown pattern literal {s:?}"));
        if let Some(code) = s.strip_prefix("g6:") {
            return Ok(Pattern::Arbitrary(graph6::decode(code)?));
        }
        let body = s.strip_prefix('K').ok_or_else(err)?;
        let digits_end = body.find(|c: char| !c.is_ascii_digit()).unwrap_or(body.len());
        let m: usize = body[..digits_end].parse().map_err(|_| err())?;
        let rest = &body[digits_end..];
        let pattern = if rest.is_empty() {
            Pattern::Clique(m)
        } else {
            let (coned, inner) = match rest.strip_prefix('+') {
                Some(r) => (true, r),
                None => (false, rest),
            };
            let t: usize = inner
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.parse().ok())
                .ok_or_else(err)?;
            if coned {
                Pattern::ConedBlowup { m, t }
            } else {
                Pattern::Blowup { m, t }
            }
        };
        pattern.validate()?;
        Ok(pattern)
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!("K3".parse::<Pattern>().unwrap(), Pattern::Clique(3));
        assert_eq!("K3(2)".parse::<Pattern>().unwrap(), Pattern::Blowup { m: 3, t: 2 });
        assert_eq!("K3+(2)".parse::<Pattern>().unwrap(), Pattern::ConedBlowup { m: 3, t: 2 });
        assert_eq!("g6:Bw".parse::<Pattern>().unwrap(), Pattern::Arbitrary(Graph::complete(3)));
        for bad in ["K", "C4", "K3(", "K3(x)", "K3+2", "K0", "K2(0)", "g6:"] {
            assert!(bad.parse::<Pattern>().is_err(), "{bad} should not parse");
        }
        for ok in ["K1", "K4(3)", "K2+(1)", "g6:Dhc"] {
            assert_eq!(ok.parse::<Pattern>().unwrap().to_string(), ok);
        }
    }

    #[test]
    fn automorphism_closed_forms_match_search() {
        for m in 1..=5 {
            let p = Pattern::Clique(m);
            let generic = Pattern::Arbitrary(p.graph()).automorphism_count().unwrap();
            assert_eq!(p.automorphism_count().unwrap(), generic);
        }
        for (m, t) in [(2, 1), (2, 2), (2, 3), (3, 2), (2, 4), (4, 2)] {
            let p = Pattern::Blowup { m, t };
            let generic = Pattern::Arbitrary(p.graph()).automorphism_count().unwrap();
            assert_eq!(p.automorphism_count().unwrap(), generic, "K{m}({t})");
        }
        // C_4 = K_2(2)
        assert_eq!(Pattern::Blowup { m: 2, t: 2 }.automorphism_count().unwrap(), 8);
    }

    #[test]
    fn coned_automorphisms() {
        // K_3 plus apex is K_4
        assert_eq!(Pattern::ConedBlowup { m: 3, t: 1 }.automorphism_count().unwrap(), 24);
        // K_2(2) plus apex is the wheel W_4: the 8 symmetries of the rim
        assert_eq!(Pattern::ConedBlowup { m: 2, t: 2 }.automorphism_count().unwrap(), 8);
    }
}

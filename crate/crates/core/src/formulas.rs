//! Closed-form predictions, degree thresholds and counting bounds.
//!
//! Every value is an exact rational. Asymptotic `(1 + o(1))` factors are
//! dropped, so predictions are leading terms. Constants that have no explicit
//! value (`c'_2`, `c_1`, `c_2`, ...) are parameters supplied by the caller.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, binomial, clamp_nonnegative, factorial, generalized_binomial, int, pow};

macro_rules! formula_ids {
    ($($variant:ident => $name:literal,)*) => {
        /// Names of the formulas that [`evaluate`] understands.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub enum FormulaId {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl FormulaId {
            pub const ALL: &'static [FormulaId] = &[$(FormulaId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(FormulaId::$variant => $name,)*
                }
            }
        }
    };
}

formula_ids! {
    ExClique => "ex-clique",
    ExBlowup => "ex-blowup",
    AesThreshold => "aes-threshold",
    EsThreshold => "es-threshold",
    PartitionLowerClique => "partition-lower-clique",
    PartitionLowerBlowup => "partition-lower-blowup",
    RemovalDeltaClique => "removal-delta-clique",
    RemovalBoundClique => "removal-bound-clique",
    SparseCopyBound => "sparse-copy-bound",
    FValue => "f-value",
    FMaximizer => "f-maximizer",
    RemovalBoundBlowup => "removal-bound-blowup",
    RemovalRatioBlowup => "removal-ratio-blowup",
    ReinsertionGainClique => "reinsertion-gain-clique",
    ReinsertionGainBlowup => "reinsertion-gain-blowup",
    DichotomyRemoval => "dichotomy-removal",
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown formula {s:?}")))
    }
}

/// An evaluated formula together with the arguments it was evaluated at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub formula: FormulaId,
    pub params: BTreeMap<String, String>,
    #[serde(with = "rational::as_string")]
    pub value: BigRational,
    /// Caveats attached to the value, such as an unverified parameter regime.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Prediction {
    fn new(formula: FormulaId, params: &[(&str, String)], value: BigRational) -> Self {
        Prediction {
            formula,
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            value,
            note: None,
        }
    }
}

/// Arguments for [`evaluate`]. Each formula reads the fields it needs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    pub n: Option<BigRational>,
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub t: Option<usize>,
    pub eps: Option<BigRational>,
    pub c: Option<BigRational>,
    pub d: Option<BigRational>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn check_nonnegative(name: &str, x: &BigRational) -> Result<()> {
    if x.is_negative() {
        return Err(bad(format!("{name} must be non-negative, got {x}")));
    }
    Ok(())
}

fn check_eps(eps: &BigRational) -> Result<()> {
    if eps.is_negative() || *eps >= BigRational::one() {
        return Err(bad(format!("epsilon must lie in [0, 1), got {eps}")));
    }
    Ok(())
}

fn check_clique_range(k: usize, m: usize) -> Result<()> {
    if m == 0 || k <= m {
        return Err(bad(format!("need k > m >= 1, got k={k} m={m}")));
    }
    Ok(())
}

fn big(x: usize) -> BigRational {
    int(x as u64)
}

fn from_int(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

fn upow(x: &BigRational, e: usize) -> BigRational {
    pow(x, e as u32)
}

/// `C(k-1, m) (n/(k-1))^m`, the leading term of `ex(n, K_m, H)` for `chi(H) = k`.
pub fn predict_ex_clique(n: &BigRational, k: usize, m: usize) -> Result<Prediction> {
    check_clique_range(k, m)?;
    check_nonnegative("n", n)?;
    let value = from_int(binomial(k as u64 - 1, m as u64)) * upow(&(n / big(k - 1)), m);
    Ok(Prediction::new(
        FormulaId::ExClique,
        &[("n", n.to_string()), ("k", k.to_string()), ("m", m.to_string())],
        value,
    ))
}

/// `C(n/m, t)^m` with the falling-factorial binomial at a rational argument,
/// the leading term of `ex(n, K_m(t), H)` for `chi(H) = m + 1`. Negative
/// values (tiny `n`) are reported as 0.
pub fn predict_ex_blowup(n: &BigRational, m: usize, t: usize) -> Result<Prediction> {
    if m == 0 || t == 0 {
        return Err(bad(format!("need m, t >= 1, got m={m} t={t}")));
    }
    check_nonnegative("n", n)?;
    let per_part = generalized_binomial(&(n / big(m)), t as u32);
    let value = clamp_nonnegative(upow(&per_part, m));
    Ok(Prediction::new(
        FormulaId::ExBlowup,
        &[("n", n.to_string()), ("m", m.to_string()), ("t", t.to_string())],
        value,
    ))
}

/// `1 - 3/(3k-4)`: a `K_k`-free graph with minimum degree at least this
/// fraction of `n` is `(k-1)`-colorable.
pub fn aes_threshold(k: usize) -> Result<BigRational> {
    if k < 3 {
        return Err(bad(format!("threshold needs k >= 3, got {k}")));
    }
    Ok(BigRational::one() - BigRational::new(3.into(), (3 * k as i64 - 4).into()))
}

/// `1 - 1/(k - 3/2) = 1 - 2/(2k-3)`.
pub fn es_threshold(k: usize) -> Result<BigRational> {
    if k < 3 {
        return Err(bad(format!("threshold needs k >= 3, got {k}")));
    }
    Ok(BigRational::one() - BigRational::new(2.into(), (2 * k as i64 - 3).into()))
}

/// True when the first threshold is at least the second, which is what lets
/// `H`-freeness at the first threshold imply `K_k`-freeness.
pub fn aes_dominates_es(k: usize) -> Result<bool> {
    Ok(aes_threshold(k)? >= es_threshold(k)?)
}

/// `d >= (1 - 3/(3k-4)) n`, decided in integers.
pub fn meets_aes_degree(d: usize, n: usize, k: usize) -> bool {
    (d as i128) * (3 * k as i128 - 4) >= (3 * k as i128 - 7) * n as i128
}

/// `delta >= phi * n`, decided exactly.
pub fn meets_degree_fraction(delta: usize, n: usize, phi: &BigRational) -> bool {
    big(delta) >= phi * big(n)
}

/// `(1 - m(m-1)/2 eps) C(k-1, m) (n/(k-1))^m`, a lower bound on the copies
/// of `K_m` in a best `(k-1)`-partite subgraph when `delta(G) > (1-eps) n`.
/// Clamped at 0.
pub fn partition_lower_clique(n: &BigRational, k: usize, m: usize, eps: &BigRational) -> Result<Prediction> {
    check_eps(eps)?;
    let base = predict_ex_clique(n, k, m)?.value;
    let factor = BigRational::one() - big(m * (m - 1)) / big(2) * eps;
    Ok(Prediction::new(
        FormulaId::PartitionLowerClique,
        &[
            ("n", n.to_string()),
            ("k", k.to_string()),
            ("m", m.to_string()),
            ("eps", eps.to_string()),
        ],
        clamp_nonnegative(factor * base),
    ))
}

/// `(1 - c eps) n^{mt} / (t! m^t)^m`, clamped at 0.
pub fn partition_lower_blowup(n: &BigRational, m: usize, t: usize, eps: &BigRational, c: &BigRational) -> Result<Prediction> {
    if m == 0 || t == 0 {
        return Err(bad(format!("need m, t >= 1, got m={m} t={t}")));
    }
    check_nonnegative("n", n)?;
    check_eps(eps)?;
    check_nonnegative("c", c)?;
    let denom = upow(&(from_int(factorial(t as u64)) * upow(&big(m), t)), m);
    let value = (BigRational::one() - c * eps) * upow(n, m * t) / denom;
    Ok(Prediction::new(
        FormulaId::PartitionLowerBlowup,
        &[
            ("n", n.to_string()),
            ("m", m.to_string()),
            ("t", t.to_string()),
            ("eps", eps.to_string()),
            ("c", c.to_string()),
        ],
        clamp_nonnegative(value),
    ))
}

fn check_removal_clique(k: usize, m: usize) -> Result<()> {
    if m < 2 || k <= m {
        return Err(bad(format!("need k > m >= 2, got k={k} m={m}")));
    }
    Ok(())
}

/// The `delta` defined by `((1 - 3/(3k-4)) / (k-2))^{m-1} = (1 - delta) / (k-1)^{m-1}`.
pub fn removal_delta_clique(k: usize, m: usize) -> Result<BigRational> {
    check_removal_clique(k, m)?;
    let base = big(k - 1) * aes_threshold(k)? / big(k - 2);
    Ok(BigRational::one() - upow(&base, m - 1))
}

/// Copies of `K_m` lost when removing a vertex of degree below the threshold
/// from an `n_j`-vertex graph: `n_j^{m-1} C(k-1, m) m / (k-1)^m (1 - delta)`.
/// Returns the bound and `delta`.
pub fn removal_bound_clique(n_j: &BigRational, k: usize, m: usize) -> Result<(Prediction, BigRational)> {
    check_nonnegative("n", n_j)?;
    let delta = removal_delta_clique(k, m)?;
    let value = upow(n_j, m - 1) * from_int(binomial(k as u64 - 1, m as u64)) * big(m) / upow(&big(k - 1), m)
        * (BigRational::one() - &delta);
    let p = Prediction::new(
        FormulaId::RemovalBoundClique,
        &[("n", n_j.to_string()), ("k", k.to_string()), ("m", m.to_string())],
        value,
    );
    Ok((p, delta))
}

fn check_blowup_sparse(m: usize, t: usize) -> Result<()> {
    if m < 2 || t == 0 {
        return Err(bad(format!("need m >= 2 and t >= 1, got m={m} t={t}")));
    }
    Ok(())
}

/// `f(d) = d^{t(m-1)} (n_i - d)^{t-1}`.
pub fn f_value(n_i: &BigRational, m: usize, t: usize, d: &BigRational) -> Result<BigRational> {
    check_blowup_sparse(m, t)?;
    Ok(upow(d, t * (m - 1)) * upow(&(n_i - d), t - 1))
}

/// `beta = (1 - (t-1)/(tm-1)) n_i`, where `f` peaks on `[0, n_i]`.
pub fn f_maximizer(n_i: &BigRational, m: usize, t: usize) -> Result<BigRational> {
    check_blowup_sparse(m, t)?;
    check_nonnegative("n", n_i)?;
    Ok((BigRational::one() - big(t - 1) / big(t * m - 1)) * n_i)
}

/// Checks `f` at `samples + 1` evenly spaced points of `[0, beta]` and reports
/// whether the values never decrease.
pub fn f_nondecreasing_to_maximizer(n_i: &BigRational, m: usize, t: usize, samples: usize) -> Result<bool> {
    let beta = f_maximizer(n_i, m, t)?;
    let samples = samples.max(1);
    let mut prev: Option<BigRational> = None;
    for i in 0..=samples {
        let d = &beta * big(i) / big(samples);
        let v = f_value(n_i, m, t, &d)?;
        if prev.as_ref().is_some_and(|p| v < *p) {
            return Ok(false);
        }
        prev = Some(v);
    }
    Ok(true)
}

/// `1 - (t-1)/(tm-1) > 1 - 3/(3m-1)`: the maximizer of `f` lies beyond the
/// peeling threshold, so `f` is increasing up to the threshold.
pub fn maximizer_exceeds_threshold(m: usize, t: usize) -> Result<bool> {
    check_blowup_sparse(m, t)?;
    let lhs = BigRational::one() - big(t - 1) / big(t * m - 1);
    let rhs = BigRational::one() - big(3) / big(3 * m - 1);
    Ok(lhs > rhs)
}

/// `(n_i - d)^{t-1} / (t-1)! * (d^t / ((m-1)^t t!))^{m-1}`, the bound on
/// copies of `K_m(t)` through a vertex of degree `d` whose own class lies
/// outside its neighborhood.
pub fn sparse_copy_bound(n_i: &BigRational, d: &BigRational, m: usize, t: usize) -> Result<Prediction> {
    check_blowup_sparse(m, t)?;
    check_nonnegative("d", d)?;
    if d > n_i {
        return Err(bad(format!("need d <= n, got d={d} n={n_i}")));
    }
    let outside = upow(&(n_i - d), t - 1) / from_int(factorial(t as u64 - 1));
    let inside = upow(d, t) / (upow(&big(m - 1), t) * from_int(factorial(t as u64)));
    Ok(Prediction::new(
        FormulaId::SparseCopyBound,
        &[
            ("n", n_i.to_string()),
            ("d", d.to_string()),
            ("m", m.to_string()),
            ("t", t.to_string()),
        ],
        outside * upow(&inside, m - 1),
    ))
}

fn check_blowup_removal(m: usize, t: usize) -> Result<()> {
    if m < 3 || t == 0 {
        return Err(bad(format!("the blow-up removal bound needs m >= 3 and t >= 1, got m={m} t={t}")));
    }
    Ok(())
}

/// `mt / (m^{mt} (t!)^m)`, the per-vertex share of `C(n/m, t)^m` copies.
fn blowup_share(m: usize, t: usize) -> BigRational {
    big(m * t) / (upow(&big(m), m * t) * upow(&from_int(factorial(t as u64)), m))
}

/// `(1 + 1/(3m-1))^{t-1} (1 - 1/((3m-1)(m-1)))^{t(m-1)}`: the explicit sparse
/// removal bound divided by `n_i^{mt-1} mt / (m^{mt} (t!)^m)`. A value below 1
/// is the gap that makes peeling lose copies.
pub fn removal_ratio_blowup(m: usize, t: usize) -> Result<BigRational> {
    check_blowup_removal(m, t)?;
    let a = BigRational::one() + BigRational::new(1.into(), (3 * m as i64 - 1).into());
    let b = BigRational::one() - BigRational::new(1.into(), ((3 * m as i64 - 1) * (m as i64 - 1)).into());
    Ok(upow(&a, t - 1) * upow(&b, t * (m - 1)))
}

/// The explicit bound on sparse copies of `K_m(t)` lost with one peeled
/// vertex, together with its reference value and their ratio.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupRemoval {
    pub bound: Prediction,
    /// `n_i^{mt-1} mt / (m^{mt} (t!)^m)`.
    #[serde(with = "rational::as_string")]
    pub reference: BigRational,
    #[serde(with = "rational::as_string")]
    pub ratio: BigRational,
}

/// `n_i^{mt-1} (3/(3m-1))^{t-1} (1 - 3/(3m-1))^{t(m-1)} / ((t-1)! (m-1)^{t(m-1)} (t!)^{m-1})`.
///
/// Copies through the removed vertex that meet its own class are
/// `o(n_i^{mt-1})` and are not included.
pub fn removal_bound_blowup(n_i: &BigRational, m: usize, t: usize) -> Result<BlowupRemoval> {
    check_blowup_removal(m, t)?;
    check_nonnegative("n", n_i)?;
    let s = BigRational::new(3.into(), (3 * m as i64 - 1).into());
    let numer = upow(&s, t - 1) * upow(&(BigRational::one() - &s), t * (m - 1));
    let denom = from_int(factorial(t as u64 - 1))
        * upow(&big(m - 1), t * (m - 1))
        * upow(&from_int(factorial(t as u64)), m - 1);
    let scale = upow(n_i, m * t - 1);
    let value = &scale * numer / denom;
    let reference = &scale * blowup_share(m, t);
    let ratio = removal_ratio_blowup(m, t)?;
    let mut bound = Prediction::new(
        FormulaId::RemovalBoundBlowup,
        &[("n", n_i.to_string()), ("m", m.to_string()), ("t", t.to_string())],
        value,
    );
    bound.note = Some("excludes the lower-order dense-copy term".into());
    Ok(BlowupRemoval { bound, reference, ratio })
}

/// `q^{m-1} C(k-1, m) m / (k-1)^m (1 - c eps)`: copies of `K_m` gained by
/// re-inserting one vertex into a best `(k-1)`-partite subgraph on `q`
/// vertices. Clamped at 0.
pub fn reinsertion_gain_clique(q: &BigRational, k: usize, m: usize, eps: &BigRational, c: &BigRational) -> Result<Prediction> {
    check_clique_range(k, m)?;
    check_nonnegative("n", q)?;
    check_eps(eps)?;
    check_nonnegative("c", c)?;
    let value = upow(q, m - 1) * from_int(binomial(k as u64 - 1, m as u64)) * big(m) / upow(&big(k - 1), m)
        * (BigRational::one() - c * eps);
    Ok(Prediction::new(
        FormulaId::ReinsertionGainClique,
        &[
            ("n", q.to_string()),
            ("k", k.to_string()),
            ("m", m.to_string()),
            ("eps", eps.to_string()),
            ("c", c.to_string()),
        ],
        clamp_nonnegative(value),
    ))
}

/// `q^{mt-1} mt / (t! m^t)^m (1 - c eps)`, the blow-up analogue. Clamped at 0.
pub fn reinsertion_gain_blowup(q: &BigRational, m: usize, t: usize, eps: &BigRational, c: &BigRational) -> Result<Prediction> {
    if m == 0 || t == 0 {
        return Err(bad(format!("need m, t >= 1, got m={m} t={t}")));
    }
    check_nonnegative("n", q)?;
    check_eps(eps)?;
    check_nonnegative("c", c)?;
    let value = upow(q, m * t - 1) * blowup_share(m, t) * (BigRational::one() - c * eps);
    Ok(Prediction::new(
        FormulaId::ReinsertionGainBlowup,
        &[
            ("n", q.to_string()),
            ("m", m.to_string()),
            ("t", t.to_string()),
            ("eps", eps.to_string()),
            ("c", c.to_string()),
        ],
        clamp_nonnegative(value),
    ))
}

/// `n_j^{mt-1} C(k-1, m) mt / ((k-1)^m (t! m^{t-1})^m)`, the per-vertex
/// removal coefficient without its `(1 - delta)` factor.
///
/// It agrees with the clique bound when `t = 1` and with the blow-up bound
/// when `k = m + 1`. Other `(k, m, t)` are outside the regime where the
/// coefficient is derived and carry a note saying so.
pub fn dichotomy_removal(n_j: &BigRational, k: usize, m: usize, t: usize) -> Result<Prediction> {
    check_clique_range(k, m)?;
    if t == 0 {
        return Err(bad("need t >= 1"));
    }
    check_nonnegative("n", n_j)?;
    let inner = from_int(factorial(t as u64)) * upow(&big(m), t - 1);
    let value = upow(n_j, m * t - 1) * from_int(binomial(k as u64 - 1, m as u64)) * big(m * t)
        / (upow(&big(k - 1), m) * upow(&inner, m));
    let mut p = Prediction::new(
        FormulaId::DichotomyRemoval,
        &[
            ("n", n_j.to_string()),
            ("k", k.to_string()),
            ("m", m.to_string()),
            ("t", t.to_string()),
        ],
        value,
    );
    if !(k == m + 1 || t == 1) {
        p.note = Some("unverified: derived only for k = m + 1 or t = 1".into());
    }
    Ok(p)
}

/// Evaluates the formula `id` on the relevant fields of `p`.
pub fn evaluate(id: FormulaId, p: &Params) -> Result<Prediction> {
    fn need<T: Clone>(x: &Option<T>, name: &str) -> Result<T> {
        x.clone().ok_or_else(|| bad(format!("missing parameter {name}")))
    }
    let zero = BigRational::zero();
    let eps = p.eps.clone().unwrap_or_else(|| zero.clone());
    let c = p.c.clone().unwrap_or_else(|| zero.clone());
    let scalar = |value: BigRational, params: &[(&str, String)]| Prediction::new(id, params, value);
    Ok(match id {
        FormulaId::ExClique => predict_ex_clique(&need(&p.n, "n")?, need(&p.k, "k")?, need(&p.m, "m")?)?,
        FormulaId::ExBlowup => predict_ex_blowup(&need(&p.n, "n")?, need(&p.m, "m")?, need(&p.t, "t")?)?,
        FormulaId::AesThreshold => {
            let k = need(&p.k, "k")?;
            scalar(aes_threshold(k)?, &[("k", k.to_string())])
        }
        FormulaId::EsThreshold => {
            let k = need(&p.k, "k")?;
            scalar(es_threshold(k)?, &[("k", k.to_string())])
        }
        FormulaId::PartitionLowerClique => {
            partition_lower_clique(&need(&p.n, "n")?, need(&p.k, "k")?, need(&p.m, "m")?, &eps)?
        }
        FormulaId::PartitionLowerBlowup => {
            partition_lower_blowup(&need(&p.n, "n")?, need(&p.m, "m")?, need(&p.t, "t")?, &eps, &c)?
        }
        FormulaId::RemovalDeltaClique => {
            let (k, m) = (need(&p.k, "k")?, need(&p.m, "m")?);
            scalar(removal_delta_clique(k, m)?, &[("k", k.to_string()), ("m", m.to_string())])
        }
        FormulaId::RemovalBoundClique => removal_bound_clique(&need(&p.n, "n")?, need(&p.k, "k")?, need(&p.m, "m")?)?.0,
        FormulaId::SparseCopyBound => {
            sparse_copy_bound(&need(&p.n, "n")?, &need(&p.d, "d")?, need(&p.m, "m")?, need(&p.t, "t")?)?
        }
        FormulaId::FValue => {
            let (n, d, m, t) = (need(&p.n, "n")?, need(&p.d, "d")?, need(&p.m, "m")?, need(&p.t, "t")?);
            let params = [
                ("n", n.to_string()),
                ("d", d.to_string()),
                ("m", m.to_string()),
                ("t", t.to_string()),
            ];
            scalar(f_value(&n, m, t, &d)?, &params)
        }
        FormulaId::FMaximizer => {
            let (n, m, t) = (need(&p.n, "n")?, need(&p.m, "m")?, need(&p.t, "t")?);
            let params = [("n", n.to_string()), ("m", m.to_string()), ("t", t.to_string())];
            scalar(f_maximizer(&n, m, t)?, &params)
        }
        FormulaId::RemovalBoundBlowup => removal_bound_blowup(&need(&p.n, "n")?, need(&p.m, "m")?, need(&p.t, "t")?)?.bound,
        FormulaId::RemovalRatioBlowup => {
            let (m, t) = (need(&p.m, "m")?, need(&p.t, "t")?);
            scalar(removal_ratio_blowup(m, t)?, &[("m", m.to_string()), ("t", t.to_string())])
        }
        FormulaId::ReinsertionGainClique => {
            reinsertion_gain_clique(&need(&p.n, "n")?, need(&p.k, "k")?, need(&p.m, "m")?, &eps, &c)?
        }
        FormulaId::ReinsertionGainBlowup => {
            reinsertion_gain_blowup(&need(&p.n, "n")?, need(&p.m, "m")?, need(&p.t, "t")?, &eps, &c)?
        }
        FormulaId::DichotomyRemoval => {
            dichotomy_removal(&need(&p.n, "n")?, need(&p.k, "k")?, need(&p.m, "m")?, need(&p.t, "t")?)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn n(x: i64) -> BigRational {
        int(x)
    }

    #[test]
    fn extremal_predictions() {
        assert_eq!(predict_ex_clique(&n(8), 3, 2).unwrap().value, n(16));
        assert_eq!(predict_ex_clique(&n(6), 4, 3).unwrap().value, n(8));
        assert_eq!(predict_ex_clique(&n(0), 5, 2).unwrap().value, n(0));
        assert!(predict_ex_clique(&n(6), 3, 3).is_err());
        assert_eq!(predict_ex_blowup(&n(6), 2, 2).unwrap().value, n(9));
        assert_eq!(predict_ex_blowup(&n(6), 3, 1).unwrap().value, n(8));
        for m in 1..=6 {
            assert_eq!(predict_ex_blowup(&n(2 * m), m as usize, 1).unwrap().value, n(1 << m));
        }
        // C(1/3, 2)^3 = (-1/9)^3 is clamped.
        assert_eq!(predict_ex_blowup(&n(1), 3, 2).unwrap().value, n(0));
        assert_eq!(predict_ex_blowup(&n(1), 2, 2).unwrap().value, ratio(1, 64));
    }

    #[test]
    fn thresholds() {
        assert_eq!(aes_threshold(3).unwrap(), ratio(2, 5));
        assert_eq!(es_threshold(3).unwrap(), ratio(1, 3));
        assert_eq!(aes_threshold(4).unwrap(), ratio(5, 8));
        assert_eq!(es_threshold(4).unwrap(), ratio(3, 5));
        assert!(aes_threshold(2).is_err());
        for k in 3..30 {
            assert!(aes_dominates_es(k).unwrap());
        }
        assert!(meets_aes_degree(2, 5, 3));
        assert!(!meets_aes_degree(1, 5, 3));
    }

    #[test]
    fn threshold_gap_identity() {
        for k in 3..20i64 {
            let lhs = BigRational::new(1.into(), (k - 1).into()) - aes_threshold(k as usize).unwrap() / n(k - 2);
            assert_eq!(lhs, BigRational::new(1.into(), ((3 * k - 4) * (k - 2) * (k - 1)).into()));
        }
    }

    #[test]
    fn partition_bounds() {
        assert_eq!(partition_lower_clique(&n(10), 3, 2, &n(0)).unwrap().value, n(25));
        assert_eq!(partition_lower_clique(&n(10), 3, 2, &ratio(1, 10)).unwrap().value, ratio(45, 2));
        assert_eq!(partition_lower_blowup(&n(6), 2, 2, &n(0), &n(7)).unwrap().value, ratio(81, 4));
        assert!(partition_lower_clique(&n(10), 3, 2, &n(1)).is_err());
    }

    #[test]
    fn removal_deltas() {
        assert_eq!(removal_delta_clique(4, 3).unwrap(), ratio(31, 256));
        assert_eq!(removal_delta_clique(3, 2).unwrap(), ratio(1, 5));
        assert!(removal_delta_clique(3, 1).is_err());
        let (bound, _) = removal_bound_clique(&n(10), 3, 2).unwrap();
        // 10 * 1 * 2/4 * 4/5
        assert_eq!(bound.value, n(4));
    }

    #[test]
    fn removal_bound_rewrites() {
        // C(k-2, m-1) / (k-1)^{m-1} = C(k-1, m) m / (k-1)^m
        for k in 3..12u64 {
            for m in 2..k {
                let lhs = from_int(binomial(k - 2, m - 1)) / upow(&int(k - 1), m as usize - 1);
                let rhs = from_int(binomial(k - 1, m)) * int(m) / upow(&int(k - 1), m as usize);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn sparse_bounds() {
        assert_eq!(f_maximizer(&n(10), 2, 2).unwrap(), ratio(20, 3));
        assert_eq!(sparse_copy_bound(&n(10), &n(6), 3, 2).unwrap().value, n(81));
        assert_eq!(sparse_copy_bound(&n(10), &n(0), 3, 2).unwrap().value, n(0));
        assert!(f_nondecreasing_to_maximizer(&n(10), 3, 2, 50).unwrap());
    }

    #[test]
    fn blowup_removal() {
        assert_eq!(removal_ratio_blowup(3, 1).unwrap(), ratio(225, 256));
        assert_eq!(
            removal_ratio_blowup(3, 1).unwrap(),
            BigRational::one() - removal_delta_clique(4, 3).unwrap()
        );
        let r = removal_bound_blowup(&n(12), 3, 2).unwrap();
        assert_eq!(&r.bound.value / &r.reference, r.ratio);
        assert!(removal_bound_blowup(&n(12), 2, 2).is_err());
    }

    #[test]
    fn dichotomy_regimes() {
        // t = 1 matches the clique bound before its (1 - delta) factor.
        let (clique, delta) = removal_bound_clique(&n(9), 5, 3).unwrap();
        let d = dichotomy_removal(&n(9), 5, 3, 1).unwrap();
        assert_eq!(d.value * (BigRational::one() - delta), clique.value);
        assert!(d.note.is_none());
        // k = m + 1 matches the blow-up reference.
        let b = removal_bound_blowup(&n(9), 3, 2).unwrap();
        assert_eq!(dichotomy_removal(&n(9), 4, 3, 2).unwrap().value, b.reference);
        assert!(dichotomy_removal(&n(9), 5, 3, 2).unwrap().note.is_some());
    }

    #[test]
    fn ids_round_trip() {
        for &id in FormulaId::ALL {
            assert_eq!(id.name().parse::<FormulaId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{}\"", id.name()));
        }
    }

    #[test]
    fn evaluate_dispatch() {
        let p = Params {
            k: Some(3),
            ..Params::default()
        };
        let out = evaluate(FormulaId::AesThreshold, &p).unwrap();
        assert_eq!(out.value, ratio(2, 5));
        assert!(evaluate(FormulaId::ExClique, &p).is_err());
    }
}

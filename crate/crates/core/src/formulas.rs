//! Closed-form extremal values for subspace partitions and maximal partial spreads.
//!
//! Everything is exact over arbitrary-precision integers. Parameter ranges the
//! closed forms do not cover are reported through [`Extremal::Open`] or
//! [`Extremal::Nonexistent`] instead of an error, so sweep tables stay honest.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `n = k·t + r` with `0 ≤ r < t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParameterSet {
    pub n: u32,
    pub t: u32,
    pub k: u32,
    pub r: u32,
}

impl ParameterSet {
    pub fn new(n: u32, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::OutOfRange("t must be positive".into()));
        }
        Ok(ParameterSet { n, t, k: n / t, r: n % t })
    }

    /// The ceiling of (t + r)/2.
    pub fn beta(&self) -> u32 {
        (self.t + self.r).div_ceil(2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extremal {
    Defined(BigUint),
    Open,
    Nonexistent,
}

/// Which rule produced an [`ExtremalValue`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    /// t = n: the single part V.
    WholeSpace,
    /// t = 1: every point is a part.
    Points,
    /// t divides n: a t-spread.
    Spread,
    /// n ≥ 2t, r ≥ 1 for σ; n ≥ 2t for ρ.
    ClosedForm,
    /// n = N − t + 1 ≥ 2t, reduced to σ_q(n, t).
    MaximalSpread,
    /// t < n < 2t, or outside the range any closed form covers.
    OpenRange,
    /// t < n < 2t for ρ: two parts of dimension ≥ t would meet nontrivially,
    /// so the minimum part dimension cannot be exactly t.
    TwoLargeParts,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalValue {
    pub status: Extremal,
    pub case: Case,
}

impl ExtremalValue {
    fn defined(v: BigUint, case: Case) -> Self {
        ExtremalValue { status: Extremal::Defined(v), case }
    }

    pub fn value(&self) -> Option<&BigUint> {
        match &self.status {
            Extremal::Defined(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.value().and_then(|v| v.to_u64())
    }

    pub fn is_open(&self) -> bool {
        self.status == Extremal::Open
    }

    pub fn status_word(&self) -> &'static str {
        match self.status {
            Extremal::Defined(_) => "defined",
            Extremal::Open => "open",
            Extremal::Nonexistent => "nonexistent",
        }
    }
}

impl fmt::Display for ExtremalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Extremal::Defined(v) => write!(f, "{v}"),
            Extremal::Open => write!(f, "open"),
            Extremal::Nonexistent => write!(f, "nonexistent"),
        }
    }
}

fn pow(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

/// (q^i − 1)/(q − 1), the number of points of an i-space.
pub fn theta(i: u32, q: u64) -> BigUint {
    (pow(q, i) - 1u32) / BigUint::from(q - 1)
}

/// Number of hyperplanes of V(n, q) through a fixed i-space, clamped at 0.
pub fn h(n: u32, i: u32, q: u64) -> BigUint {
    if i >= n {
        BigUint::zero()
    } else {
        theta(n - i, q)
    }
}

/// q^r · Σ_{i=0}^{k−2} q^{it}.
pub fn ell(n: u32, t: u32, q: u64) -> Result<BigUint> {
    let ps = ParameterSet::new(n, t)?;
    if ps.k < 2 {
        return Err(Error::OutOfRange(format!("ell needs n ≥ 2t, got n={n}, t={t}")));
    }
    let sum: BigUint = (0..=ps.k - 2).map(|i| pow(q, i * t)).sum();
    Ok(pow(q, ps.r) * sum)
}

fn check_range(n: u32, t: u32) -> Result<ParameterSet> {
    if t < 1 || t > n {
        return Err(Error::OutOfRange(format!("need 1 ≤ t ≤ n, got n={n}, t={t}")));
    }
    ParameterSet::new(n, t)
}

/// Minimum size of a partition of V(n, q) whose largest part has dimension t.
pub fn sigma(n: u32, t: u32, q: u64) -> Result<ExtremalValue> {
    let ps = check_range(n, t)?;
    Ok(if t == n {
        ExtremalValue::defined(BigUint::from(1u32), Case::WholeSpace)
    } else if t == 1 {
        ExtremalValue::defined(theta(n, q), Case::Points)
    } else if ps.r == 0 {
        ExtremalValue::defined(theta(n, q) / theta(t, q), Case::Spread)
    } else if ps.k >= 2 {
        let v = ell(n, t, q)? * pow(q, t) + pow(q, ps.beta()) + 1u32;
        ExtremalValue::defined(v, Case::ClosedForm)
    } else {
        ExtremalValue { status: Extremal::Open, case: Case::OpenRange }
    })
}

/// Maximum size of a partition of V(n, q) whose smallest part has dimension t.
pub fn rho(n: u32, t: u32, q: u64) -> Result<ExtremalValue> {
    let ps = check_range(n, t)?;
    Ok(if t == n {
        ExtremalValue::defined(BigUint::from(1u32), Case::WholeSpace)
    } else if t == 1 {
        ExtremalValue::defined(theta(n, q), Case::Points)
    } else if ps.k >= 2 {
        ExtremalValue::defined(ell(n, t, q)? * pow(q, t) + 1u32, Case::ClosedForm)
    } else {
        ExtremalValue { status: Extremal::Nonexistent, case: Case::TwoLargeParts }
    })
}

/// Minimum size of a maximal partial t-spread of V(big_n, q).
pub fn tau(big_n: u32, t: u32, q: u64) -> Result<ExtremalValue> {
    if big_n < 1 || t < 1 || t > big_n {
        return Err(Error::OutOfRange(format!("need 1 ≤ t ≤ N, got N={big_n}, t={t}")));
    }
    let n = big_n - t + 1;
    if t > 1 && n >= 2 * t {
        let s = sigma(n, t, q)?;
        Ok(ExtremalValue { status: s.status, case: Case::MaximalSpread })
    } else {
        Ok(ExtremalValue { status: Extremal::Open, case: Case::OpenRange })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl Relation {
    fn new(lhs: BigUint, rhs: BigUint) -> Self {
        Relation { holds: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

/// Exact evaluation of the three θ/ℓ relations for one parameter triple.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub n: u32,
    pub t: u32,
    pub q: u64,
    /// θ_{n−t} − θ_r = ℓ θ_t
    pub shift: Relation,
    /// θ_{a+b} − θ_b = q^b θ_a for every a + b ≤ n; failing pairs listed
    pub splitting_checked: usize,
    pub splitting_failures: Vec<(u32, u32)>,
    /// θ_n − ℓ q^t θ_t = θ_{t+r}
    pub residual: Relation,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.shift.holds && self.splitting_failures.is_empty() && self.residual.holds
    }
}

pub fn check_relations(n: u32, t: u32, q: u64) -> Result<RelationReport> {
    let ps = ParameterSet::new(n, t)?;
    let l = ell(n, t, q)?;
    let shift = Relation::new(theta(n - t, q) - theta(ps.r, q), &l * theta(t, q));
    let mut checked = 0;
    let mut failures = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            checked += 1;
            if theta(a + b, q) - theta(b, q) != pow(q, b) * theta(a, q) {
                failures.push((a, b));
            }
        }
    }
    let residual = Relation::new(theta(n, q) - &l * pow(q, t) * theta(t, q), theta(t + ps.r, q));
    Ok(RelationReport { n, t, q, shift, splitting_checked: checked, splitting_failures: failures, residual })
}

/// Known bounds on τ_q(4, 2), kept for reference only.
#[derive(Clone, Debug, Serialize)]
pub struct ReferenceBounds {
    pub q: u64,
    /// τ_q(4,2) ≥ 2q
    pub lower: u64,
    /// (2 log₂ q + 1) q + 1, stated for odd q
    pub odd_upper: f64,
    /// (6.1 ln q + 1) q + 1, stated for even q above an unquantified threshold
    pub even_upper: f64,
    pub q_is_odd: bool,
    pub informational: bool,
}

impl ReferenceBounds {
    /// The upper bound whose parity condition matches `q`.
    pub fn applicable_upper(&self) -> f64 {
        if self.q_is_odd {
            self.odd_upper
        } else {
            self.even_upper
        }
    }
}

pub fn reference_bounds(q: u64) -> ReferenceBounds {
    let qf = q as f64;
    ReferenceBounds {
        q,
        lower: 2 * q,
        odd_upper: (2.0 * qf.log2() + 1.0) * qf + 1.0,
        even_upper: (6.1 * qf.ln() + 1.0) * qf + 1.0,
        q_is_odd: q % 2 == 1,
        informational: true,
    }
}

#[derive(Clone, Debug)]
pub struct AntimonotoneTable {
    pub n: u32,
    pub q: u64,
    pub rows: Vec<(u32, ExtremalValue)>,
    pub strictly_decreasing: bool,
}

/// σ_q(n, t) across `ts`, checking strict decrease over the defined entries.
pub fn antimonotone_table(n: u32, q: u64, ts: impl IntoIterator<Item = u32>) -> Result<AntimonotoneTable> {
    let mut rows = Vec::new();
    for t in ts {
        if t <= 1 || 2 * t > n {
            return Err(Error::OutOfRange(format!("t={t} outside 1 < t ≤ n/2 for n={n}")));
        }
        rows.push((t, sigma(n, t, q)?));
    }
    let defined: Vec<&BigUint> = rows.iter().filter_map(|(_, v)| v.value()).collect();
    let strictly_decreasing = defined.windows(2).all(|w| w[0] > w[1]);
    Ok(AntimonotoneTable { n, q, rows, strictly_decreasing })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn val(e: ExtremalValue) -> u64 {
        e.as_u64().expect("defined")
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta(5, 2), big(31));
        assert_eq!(theta(0, 7), big(0));
        assert_eq!(theta(3, 3), big(13));
    }

    #[test]
    fn h_values() {
        assert_eq!(h(5, 2, 2), big(7));
        assert_eq!(h(4, 4, 2), big(0));
        assert_eq!(h(4, 6, 2), big(0));
    }

    #[test]
    fn ell_values() {
        assert_eq!(ell(5, 2, 2).unwrap(), big(2));
        assert_eq!(ell(8, 3, 2).unwrap(), big(4));
        assert_eq!(ell(6, 2, 2).unwrap(), big(5));
        assert!(matches!(ell(3, 2, 2), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn sigma_values() {
        assert_eq!(val(sigma(5, 2, 2).unwrap()), 13);
        assert_eq!(val(sigma(4, 2, 2).unwrap()), 5);
        assert!(sigma(5, 3, 2).unwrap().is_open());
        assert_eq!(val(sigma(7, 7, 3).unwrap()), 1);
        assert_eq!(val(sigma(6, 1, 2).unwrap()), 63);
        assert!(sigma(3, 4, 2).is_err());
    }

    #[test]
    fn rho_values() {
        assert_eq!(val(rho(5, 2, 2).unwrap()), 9);
        assert_eq!(val(rho(7, 3, 3).unwrap()), 82);
        assert_eq!(rho(3, 2, 2).unwrap().status, Extremal::Nonexistent);
        assert_eq!(rho(3, 2, 2).unwrap().case, Case::TwoLargeParts);
    }

    #[test]
    fn tau_values() {
        assert_eq!(val(tau(5, 2, 2).unwrap()), 5);
        assert_eq!(val(tau(6, 2, 2).unwrap()), 13);
        assert!(tau(4, 2, 3).unwrap().is_open());
        assert!(tau(5, 1, 2).unwrap().is_open());
    }

    #[test]
    fn relation_examples() {
        let r = check_relations(5, 2, 2).unwrap();
        assert_eq!((r.shift.lhs.as_str(), r.shift.rhs.as_str()), ("6", "6"));
        assert_eq!((r.residual.lhs.as_str(), r.residual.rhs.as_str()), ("7", "7"));
        let r = check_relations(8, 3, 2).unwrap();
        assert_eq!(r.residual.lhs, "31");
        assert!(r.all_hold());
        assert!(check_relations(3, 2, 2).is_err());
    }

    #[test]
    fn reference_bound_values() {
        assert_eq!(reference_bounds(2).lower, 4);
        let b3 = reference_bounds(3);
        assert_eq!(b3.lower, 6);
        assert!((b3.odd_upper - 13.5098).abs() < 1e-3);
        assert!((reference_bounds(9).odd_upper - 67.0587).abs() < 1e-3);
        assert!(!reference_bounds(4).q_is_odd);
    }

    #[test]
    fn antimonotone_examples() {
        let tab = antimonotone_table(12, 2, 2..=6).unwrap();
        assert!(tab.strictly_decreasing);
        let tab = antimonotone_table(6, 2, [2, 3]).unwrap();
        assert_eq!(val(tab.rows[0].1.clone()), 21);
        assert_eq!(val(tab.rows[1].1.clone()), 9);
        assert!(antimonotone_table(10, 3, 2..=5).unwrap().strictly_decreasing);
        assert!(antimonotone_table(6, 2, [4]).is_err());
    }

    #[test]
    fn sigma_rho_congruence_and_gap() {
        for q in [2u64, 3, 4, 5] {
            for t in 2..=6u32 {
                for n in 2 * t..=18 {
                    let s = sigma(n, t, q).unwrap();
                    let r = rho(n, t, q).unwrap();
                    let (s, r) = (s.value().unwrap().clone(), r.value().unwrap().clone());
                    assert_eq!(&r % pow(q, t), big(1));
                    if n % t == 0 {
                        assert_eq!(s, theta(n, q) / theta(t, q));
                        assert_eq!(s, r);
                    } else {
                        let beta = ParameterSet::new(n, t).unwrap().beta();
                        assert_eq!(s - r, pow(q, beta));
                    }
                }
            }
        }
    }
}

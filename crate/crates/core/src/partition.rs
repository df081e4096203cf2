//! Subspace partitions, their type vectors and the hyperplane counting identities.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{self, Extremal};
use crate::geometry::{Space, Subspace};
use crate::gf::FieldElement;

/// Counts `(m_{n−1}, …, m_1)` of parts by dimension. A part equal to V is not counted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionType {
    // m[i] = number of parts of dimension i; index 0 and n are always zero
    m: Vec<u64>,
}

impl PartitionType {
    pub fn m(&self, i: usize) -> u64 {
        self.m.get(i).copied().unwrap_or(0)
    }

    /// `(m_{n−1}, …, m_1)`.
    pub fn descending(&self) -> Vec<u64> {
        self.m[1..].iter().rev().copied().collect()
    }
}

/// `(b_{n−1}, …, b_1)`: parts of each dimension contained in a hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HyperplaneType {
    b: Vec<u64>,
}

impl HyperplaneType {
    pub fn b(&self, i: usize) -> u64 {
        self.b.get(i).copied().unwrap_or(0)
    }

    pub fn descending(&self) -> Vec<u64> {
        self.b[1..].iter().rev().copied().collect()
    }
}

/// Number of hyperplanes `s_b` of each occurring type `b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeDistribution {
    pub counts: BTreeMap<HyperplaneType, u64>,
}

impl TypeDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `Σ_b f(b) s_b`.
    pub fn weighted_sum(&self, f: impl Fn(&HyperplaneType) -> BigUint) -> BigUint {
        self.counts.iter().map(|(b, &s)| f(b) * s).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(name: impl Into<String>, lhs: BigUint, rhs: BigUint) -> Self {
        IdentityCheck { name: name.into(), holds: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PackingReport {
    pub d: usize,
    pub d2: usize,
    pub checks: Vec<IdentityCheck>,
}

impl PackingReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unverifiable,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub j: usize,
    pub dims: Vec<usize>,
    pub counts: Vec<u64>,
    pub lhs: u64,
    pub bound: String,
    pub verdict: Verdict,
}

/// Everything `verify` checks on a partition.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub size: usize,
    pub hyperplanes: usize,
    pub size_identity_failures: Vec<usize>,
    pub packing: Vec<PackingReport>,
    pub congruence_holds: bool,
    pub conjecture: Vec<ConjectureReport>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.size_identity_failures.is_empty()
            && self.packing.iter().all(PackingReport::all_hold)
            && self.congruence_holds
            && self.conjecture.iter().all(|c| c.verdict != Verdict::Fail)
    }
}

fn choose2(x: u64) -> BigUint {
    BigUint::from(x) * BigUint::from(x.saturating_sub(1)) / 2u32
}

/// A collection of nonzero subspaces covering every point of V exactly once.
#[derive(Clone, Debug)]
pub struct SubspacePartition {
    space: Arc<Space>,
    parts: Vec<Subspace>,
}

impl PartialEq for SubspacePartition {
    fn eq(&self, other: &Self) -> bool {
        *self.space == *other.space && self.parts == other.parts
    }
}

impl Eq for SubspacePartition {}

impl SubspacePartition {
    /// Checks the exact-cover property; the error names one offending point
    /// and at most two parts.
    pub fn validate(space: Arc<Space>, mut parts: Vec<Subspace>) -> Result<Self> {
        for w in &parts {
            if w.n() != space.n() {
                return Err(Error::DimensionMismatch { expected: space.n(), found: w.n() });
            }
            if w.is_zero() {
                return Err(Error::PreconditionUnmet("partition parts must be nonzero".into()));
            }
        }
        let mut owner = vec![usize::MAX; space.num_points()];
        for (k, w) in parts.iter().enumerate() {
            for p in space.point_indices(w) {
                if owner[p] != usize::MAX {
                    return Err(Error::NotAPartition { point: p, parts: vec![owner[p], k] });
                }
                owner[p] = k;
            }
        }
        if let Some(p) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::NotAPartition { point: p, parts: vec![] });
        }
        parts.sort_by(Subspace::partition_order);
        Ok(SubspacePartition { space, parts })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn min_dim(&self) -> usize {
        self.parts.iter().map(Subspace::dim).min().unwrap_or(0)
    }

    pub fn max_dim(&self) -> usize {
        self.parts.iter().map(Subspace::dim).max().unwrap_or(0)
    }

    pub fn partition_type(&self) -> PartitionType {
        let mut m = vec![0; self.n()];
        for w in &self.parts {
            if w.dim() < self.n() {
                m[w.dim()] += 1;
            }
        }
        PartitionType { m }
    }

    /// Distinct part dimensions in increasing order with their multiplicities.
    pub fn dimension_profile(&self) -> Vec<(usize, u64)> {
        let mut by_dim: BTreeMap<usize, u64> = BTreeMap::new();
        for w in &self.parts {
            *by_dim.entry(w.dim()).or_default() += 1;
        }
        by_dim.into_iter().collect()
    }

    fn type_for_functional(&self, f: &[FieldElement]) -> HyperplaneType {
        let mut b = vec![0; self.n()];
        for w in &self.parts {
            if w.dim() < self.n() && w.rows().all(|r| self.space.dot(f, r).is_zero()) {
                b[w.dim()] += 1;
            }
        }
        HyperplaneType { b }
    }

    pub fn hyperplane_type(&self, h: &Subspace) -> Result<HyperplaneType> {
        if h.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: h.n() });
        }
        if h.dim() + 1 != self.n() {
            return Err(Error::NotAHyperplane { n: self.n(), dim: h.dim() });
        }
        let functional = self.space.annihilator(h);
        Ok(self.type_for_functional(functional.row(0)))
    }

    pub fn type_distribution(&self) -> TypeDistribution {
        let counts = (0..self.space.num_points())
            .into_par_iter()
            .fold(BTreeMap::new, |mut acc: BTreeMap<HyperplaneType, u64>, i| {
                *acc.entry(self.type_for_functional(self.space.hyperplane_functional(i))).or_default() += 1;
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            });
        TypeDistribution { counts }
    }

    fn q_big(&self) -> BigUint {
        BigUint::from(self.space.q())
    }

    /// `1 + Σ_{i=1}^{n−1} b_i q^i`.
    pub fn size_from_type(&self, b: &HyperplaneType) -> BigUint {
        let q = self.q_big();
        BigUint::one() + (1..self.n()).map(|i| BigUint::from(b.b(i)) * q.pow(i as u32)).sum::<BigUint>()
    }

    pub fn check_size_identity(&self, h: &Subspace) -> Result<IdentityCheck> {
        let b = self.hyperplane_type(h)?;
        Ok(IdentityCheck::new("size", self.size_from_type(&b), BigUint::from(self.len())))
    }

    pub fn check_packing_identities(&self, d: usize, d2: usize) -> Result<PackingReport> {
        let dist = self.type_distribution();
        self.packing_with(&dist, d, d2)
    }

    fn packing_with(&self, dist: &TypeDistribution, d: usize, d2: usize) -> Result<PackingReport> {
        let n = self.n();
        if n < 3 || !(1..=n - 2).contains(&d) || !(1..=n - 2).contains(&d2) {
            return Err(Error::PreconditionUnmet(format!("need 1 ≤ d, d' ≤ n−2, got d={d}, d'={d2}, n={n}")));
        }
        let ty = self.partition_type();
        let (md, md2) = (ty.m(d), ty.m(d2));
        if md == 0 || md2 == 0 {
            return Err(Error::PreconditionUnmet(format!("partition has no part of dimension {}", if md == 0 { d } else { d2 })));
        }
        let (nn, q) = (n as u32, self.space.q() as u64);
        let mut checks = vec![IdentityCheck::new(
            "(i) Σ s_b = θ_n",
            BigUint::from(dist.total()),
            formulas::h(nn, 0, q),
        )];
        let mut single = |dd: usize, m: u64| {
            checks.push(IdentityCheck::new(
                format!("(ii) Σ b_{dd} s_b = m_{dd} h(n,{dd})"),
                dist.weighted_sum(|b| BigUint::from(b.b(dd))),
                BigUint::from(m) * formulas::h(nn, dd as u32, q),
            ));
            checks.push(IdentityCheck::new(
                format!("(iii) Σ C(b_{dd},2) s_b = C(m_{dd},2) h(n,{})", 2 * dd),
                dist.weighted_sum(|b| choose2(b.b(dd))),
                choose2(m) * formulas::h(nn, 2 * dd as u32, q),
            ));
        };
        single(d, md);
        if d2 != d {
            single(d2, md2);
            checks.push(IdentityCheck::new(
                format!("(iv) Σ b_{d} b_{d2} s_b = m_{d} m_{d2} h(n,{})", d + d2),
                dist.weighted_sum(|b| BigUint::from(b.b(d)) * b.b(d2)),
                BigUint::from(md) * md2 * formulas::h(nn, (d + d2) as u32, q),
            ));
        }
        Ok(PackingReport { d, d2, checks })
    }

    /// Dimensions `d` with `1 ≤ d ≤ n−2` and `m_d > 0`.
    pub fn admissible_dims(&self) -> Vec<usize> {
        let ty = self.partition_type();
        (1..self.n().saturating_sub(1)).filter(|&d| ty.m(d) > 0).collect()
    }

    /// `|Π| ≡ 1 (mod q^t)` where t is the smallest part dimension.
    pub fn size_congruence_holds(&self) -> bool {
        let t = self.min_dim() as u32;
        let modulus = BigUint::from(self.space.q()).pow(t);
        modulus.is_one() || BigUint::from(self.len()) % modulus == BigUint::one()
    }

    /// `n_1 + … + n_j ≥ σ_q(d_{j+1}, d_j)`, three-valued because σ is open for
    /// `d_j < d_{j+1} < 2 d_j`.
    pub fn check_conjecture(&self, j: usize) -> Result<ConjectureReport> {
        let profile = self.dimension_profile();
        if profile.len() < 2 || j == 0 || j >= profile.len() {
            return Err(Error::PreconditionUnmet(format!(
                "need 1 ≤ j < {} distinct part dimensions, got j={j}",
                profile.len()
            )));
        }
        let lhs: u64 = profile[..j].iter().map(|&(_, c)| c).sum();
        let (dj, dj1) = (profile[j - 1].0 as u32, profile[j].0 as u32);
        let sigma = formulas::sigma(dj1, dj, self.space.q() as u64)?;
        let verdict = match &sigma.status {
            Extremal::Defined(v) if BigUint::from(lhs) >= *v => Verdict::Pass,
            Extremal::Defined(_) => Verdict::Fail,
            _ => Verdict::Unverifiable,
        };
        Ok(ConjectureReport {
            j,
            dims: profile.iter().map(|&(d, _)| d).collect(),
            counts: profile.iter().map(|&(_, c)| c).collect(),
            lhs,
            bound: sigma.to_string(),
            verdict,
        })
    }

    /// Size identity at every hyperplane, packing identities for every admissible
    /// pair, the size congruence and the conjecture at every level.
    pub fn check_all(&self) -> IdentityReport {
        let size = BigUint::from(self.len());
        let size_identity_failures: Vec<usize> = (0..self.space.num_points())
            .into_par_iter()
            .filter(|&i| self.size_from_type(&self.type_for_functional(self.space.hyperplane_functional(i))) != size)
            .collect();
        let dist = self.type_distribution();
        let dims = self.admissible_dims();
        let mut packing = Vec::new();
        for (a, &d) in dims.iter().enumerate() {
            for &d2 in &dims[a..] {
                packing.push(self.packing_with(&dist, d, d2).expect("admissible"));
            }
        }
        let levels = self.dimension_profile().len();
        let conjecture = (1..levels).filter_map(|j| self.check_conjecture(j).ok()).collect();
        IdentityReport {
            size: self.len(),
            hyperplanes: self.space.num_points(),
            size_identity_failures,
            packing,
            congruence_holds: self.size_congruence_holds(),
            conjecture,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{beutelspacher_partition, desarguesian_spread, pi_big_m, pi_m};
    use crate::gf::FieldSpec;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn spread42() -> SubspacePartition {
        desarguesian_spread(2, 2, &f2()).unwrap()
    }

    fn whole(n: usize) -> SubspacePartition {
        let space = Space::new(n, f2()).unwrap();
        let v = space.whole();
        SubspacePartition::validate(space, vec![v]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(spread42().len(), 5);
        assert_eq!(whole(4).len(), 1);

        let space = Space::new(4, f2()).unwrap();
        let a = space.subspace_from_rows(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let b = space.subspace_from_rows(&[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        match SubspacePartition::validate(space.clone(), vec![a.clone(), b]) {
            Err(Error::NotAPartition { point, parts }) => {
                assert_eq!(parts, vec![0, 1]);
                assert_eq!(space.point(point), space.vector(&[1, 0, 0, 0]).unwrap().as_slice());
            }
            other => panic!("expected an overlap witness, got {other:?}"),
        }
        match SubspacePartition::validate(space.clone(), vec![a]) {
            Err(Error::NotAPartition { parts, .. }) => assert!(parts.is_empty()),
            other => panic!("expected an uncovered witness, got {other:?}"),
        }
        assert!(SubspacePartition::validate(space.clone(), vec![space.zero(), space.whole()]).is_err());
    }

    #[test]
    fn type_examples() {
        let pm = pi_m(5, 2, &f2()).unwrap().partition;
        assert_eq!((pm.partition_type().m(3), pm.partition_type().m(2), pm.partition_type().m(1)), (1, 8, 0));
        let big = pi_big_m(5, 2, &f2()).unwrap().partition;
        assert_eq!((big.partition_type().m(2), big.partition_type().m(1)), (9, 4));
        let w = whole(4);
        assert!(w.partition_type().descending().iter().all(|&m| m == 0));
    }

    #[test]
    fn hyperplane_type_examples() {
        let s = spread42();
        for h in s.space().hyperplanes() {
            assert_eq!(s.hyperplane_type(&h).unwrap().b(2), 1);
            assert!(s.check_size_identity(&h).unwrap().holds);
        }
        let w = whole(4);
        let h = w.space().hyperplanes().next().unwrap();
        assert!(w.hyperplane_type(&h).unwrap().descending().iter().all(|&b| b == 0));
        assert!(matches!(w.hyperplane_type(&w.space().whole()), Err(Error::NotAHyperplane { .. })));

        let pm = pi_m(5, 2, &f2()).unwrap().partition;
        let big_part = pm.parts().iter().find(|p| p.dim() == 3).unwrap().clone();
        let mut seen = 0;
        for h in pm.space().hyperplanes() {
            if pm.space().contains(&h, &big_part).unwrap() {
                let b = pm.hyperplane_type(&h).unwrap();
                assert_eq!((b.b(3), b.b(2)), (1, 0));
                assert!(pm.check_size_identity(&h).unwrap().holds);
                seen += 1;
            }
        }
        assert_eq!(seen, 3);
    }

    #[test]
    fn distribution_examples() {
        let d = spread42().type_distribution();
        assert_eq!(d.counts.len(), 1);
        assert_eq!(d.total(), 15);
        let big = pi_big_m(5, 2, &f2()).unwrap().partition;
        assert_eq!(big.type_distribution().total(), 31);
    }

    #[test]
    fn packing_examples() {
        let s = spread42();
        let rep = s.check_packing_identities(2, 2).unwrap();
        assert!(rep.all_hold());
        assert_eq!((rep.checks[1].lhs.as_str(), rep.checks[1].rhs.as_str()), ("15", "15"));
        assert_eq!((rep.checks[2].lhs.as_str(), rep.checks[2].rhs.as_str()), ("0", "0"));

        let big = pi_big_m(5, 2, &f2()).unwrap().partition;
        let rep = big.check_packing_identities(2, 1).unwrap();
        assert_eq!(rep.checks.len(), 6);
        assert!(rep.all_hold());
        assert!(matches!(big.check_packing_identities(3, 1), Err(Error::PreconditionUnmet(_))));
        assert!(matches!(s.check_packing_identities(3, 2), Err(Error::PreconditionUnmet(_))));
    }

    #[test]
    fn conjecture_examples() {
        let big = pi_big_m(5, 2, &f2()).unwrap().partition;
        let c = big.check_conjecture(1).unwrap();
        assert_eq!((c.lhs, c.bound.as_str(), c.verdict), (4, "3", Verdict::Pass));

        let pm = pi_m(5, 2, &f2()).unwrap().partition;
        let c = pm.check_conjecture(1).unwrap();
        assert_eq!((c.lhs, c.verdict), (8, Verdict::Unverifiable));

        let b = beutelspacher_partition(4, 1, &f2()).unwrap().partition;
        assert_eq!(b.dimension_profile(), vec![(1, 8), (3, 1)]);
        let c = b.check_conjecture(1).unwrap();
        assert_eq!((c.lhs, c.bound.as_str(), c.verdict), (8, "7", Verdict::Pass));

        assert!(spread42().check_conjecture(1).is_err());
        assert!(big.check_conjecture(2).is_err());
    }

    #[test]
    fn full_reports_hold_on_constructions() {
        for p in [spread42(), pi_m(5, 2, &f2()).unwrap().partition, pi_big_m(7, 3, &f2()).unwrap().partition, whole(3)] {
            let rep = p.check_all();
            assert!(rep.all_hold(), "{rep:?}");
            assert_eq!(rep.hyperplanes, p.space().num_points());
        }
    }
}

//! Explicit partitions: Desarguesian spreads, the one-big-part partition obtained
//! by sectioning a spread, and the extremal partitions built from it by recursion.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::ParameterSet;
use crate::geometry::{Space, Subspace, Vector};
use crate::gf::{FieldElement, FieldSpec};
use crate::partition::SubspacePartition;
use crate::spreadlab::PartialSpread;

/// The construction call a certificate came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Recipe {
    Spread { k: usize, t: usize },
    Beutelspacher { n: usize, d: usize },
    PiMin { n: usize, t: usize },
    PiMax { n: usize, t: usize },
}

/// One step of a construction trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Step {
    /// t-spread of V(kt, q) from the 1-spaces of GF(q^t)^k.
    Spread { k: usize, t: usize, extension_order: u32, size: usize },
    /// Cut the s-spread of V(2s, q) with the first n coordinates.
    Section { s: usize, n: usize, d: usize, big_part: Vec<Vec<u32>> },
    /// Recurse into the residual subspace, given by its basis in V(n).
    Recurse { from_dim: usize, residual: Vec<Vec<u32>> },
    /// Replace the residual part by a one-big-part partition of it.
    Refine { dim: usize, small: usize, big: usize },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Spread { k, t, extension_order, size } => {
                write!(f, "spread: {size} {t}-spaces of V({}) from GF({extension_order})^{k}", k * t)
            }
            Step::Section { s, n, d, big_part } => write!(
                f,
                "section: {s}-spread of V({}) cut by the first {n} coordinates -> one {s}-space {big_part:?} and {d}-spaces",
                2 * s
            ),
            Step::Recurse { from_dim, residual } => {
                write!(f, "recurse: residual of dimension {} inside V({from_dim}), basis {residual:?}", residual.len())
            }
            Step::Refine { dim, small, big } => {
                write!(f, "refine: residual {dim}-space split into one {big}-space and {small}-spaces")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConstructionCertificate {
    pub partition: SubspacePartition,
    pub recipe: Recipe,
    pub trace: Vec<Step>,
}

impl ConstructionCertificate {
    /// Runs the recipe again from scratch.
    pub fn replay(&self) -> Result<SubspacePartition> {
        let field = self.partition.space().field();
        let cert = run(self.recipe, field)?;
        Ok(cert.partition)
    }
}

pub fn run(recipe: Recipe, field: &FieldSpec) -> Result<ConstructionCertificate> {
    match recipe {
        Recipe::Spread { k, t } => {
            let (partition, step) = spread_with_step(k, t, field)?;
            Ok(ConstructionCertificate { partition, recipe, trace: vec![step] })
        }
        Recipe::Beutelspacher { n, d } => beutelspacher_partition(n, d, field),
        Recipe::PiMin { n, t } => pi_m(n, t, field),
        Recipe::PiMax { n, t } => pi_big_m(n, t, field),
    }
}

/// The t-spaces of V(kt, q) arising as GF(q^t)-points of GF(q^t)^k.
fn spread_members(space: &Space, k: usize, t: usize) -> Result<(Vec<Subspace>, u32)> {
    let base = space.field();
    let ext = FieldSpec::new(base.p(), base.e() * t as u32, None)?;

    // Embed GF(q) through a root of its modulus; prime-field constants share encodings.
    let alpha = ext
        .elements()
        .find(|&a| {
            let mut acc = FieldElement::ZERO;
            for &c in base.modulus().iter().rev() {
                acc = ext.add(ext.mul(acc, a), FieldElement::from_raw(c));
            }
            acc.is_zero()
        })
        .expect("GF(q) embeds in GF(q^t)");
    let embed = |c: FieldElement| {
        base.decode(c)
            .iter()
            .enumerate()
            .fold(FieldElement::ZERO, |acc, (i, &d)| ext.add(acc, ext.mul(FieldElement::from_raw(d), ext.pow(alpha, i as u64))))
    };

    // Coordinates of GF(q^t) over GF(q) in the basis 1, γ, …, γ^{t−1}.
    let gamma = ext.primitive_element();
    let powers: Vec<FieldElement> = (0..t).map(|j| ext.pow(gamma, j as u64)).collect();
    let q = base.q() as usize;
    let mut coords: Vec<Option<Vector>> = vec![None; ext.q() as usize];
    for m in 0..q.pow(t as u32) {
        let mut rest = m;
        let c: Vector = (0..t)
            .map(|_| {
                let d = FieldElement::from_raw((rest % q) as u32);
                rest /= q;
                d
            })
            .collect();
        let x = c.iter().zip(&powers).fold(FieldElement::ZERO, |acc, (&ci, &g)| ext.add(acc, ext.mul(embed(ci), g)));
        coords[x.value() as usize] = Some(c);
    }
    let coords: Vec<Vector> = coords.into_iter().map(|c| c.expect("powers of γ form a basis")).collect();

    let ext_space = Space::new(k, ext.clone())?;
    let members = (0..ext_space.num_points())
        .map(|i| {
            let x = ext_space.point(i);
            let rows: Vec<Vector> = powers
                .iter()
                .map(|&g| x.iter().flat_map(|&xi| coords[ext.mul(g, xi).value() as usize].iter().copied()).collect())
                .collect();
            space.span_unchecked(rows)
        })
        .collect();
    Ok((members, ext.q()))
}

fn spread_with_step(k: usize, t: usize, field: &FieldSpec) -> Result<(SubspacePartition, Step)> {
    if k == 0 || t == 0 {
        return Err(Error::OutOfRange(format!("spread needs k, t ≥ 1, got k={k}, t={t}")));
    }
    let space = Space::new(k * t, field.clone())?;
    let (members, order) = spread_members(&space, k, t)?;
    let size = members.len();
    let partition = SubspacePartition::validate(space, members)?;
    Ok((partition, Step::Spread { k, t, extension_order: order, size }))
}

/// A t-spread of V(kt, q) viewed as GF(q^t)-points of a k-dimensional space.
pub fn desarguesian_spread(k: usize, t: usize, field: &FieldSpec) -> Result<SubspacePartition> {
    Ok(spread_with_step(k, t, field)?.0)
}

/// One (n−d)-space and q^{n−d} d-spaces of V(n, q), returned as `(big, small)`.
fn section_parts(n: usize, d: usize, field: &FieldSpec, trace: &mut Vec<Step>) -> Result<(Subspace, Vec<Subspace>)> {
    if d < 1 || 2 * d > n {
        return Err(Error::OutOfRange(format!("need 1 ≤ d ≤ n/2, got n={n}, d={d}")));
    }
    let s = n - d;
    let big = Space::new(2 * s, field.clone())?;
    let (members, order) = spread_members(&big, 2, s)?;
    trace.push(Step::Spread { k: 2, t: s, extension_order: order, size: members.len() });

    let kept = big.coordinate_subspace(0..s);
    let section = big.coordinate_subspace(0..n);
    let small_space = Space::new(n, field.clone())?;
    let project = |w: &Subspace| -> Subspace {
        small_space.span_unchecked(w.rows().map(|r| r[..n].to_vec()).collect())
    };

    let mut small = Vec::with_capacity(members.len() - 1);
    let mut found_kept = false;
    for w in &members {
        if *w == kept {
            found_kept = true;
            continue;
        }
        small.push(project(&big.intersect(w, &section)?));
    }
    debug_assert!(found_kept, "the first-component element belongs to the spread");
    let big_part = project(&kept);
    trace.push(Step::Section { s, n, d, big_part: big_part.to_rows() });
    Ok((big_part, small))
}

/// One (n−d)-space and q^{n−d} d-spaces partitioning V(n, q).
pub fn beutelspacher_partition(n: usize, d: usize, field: &FieldSpec) -> Result<ConstructionCertificate> {
    let mut trace = Vec::new();
    let (big, mut parts) = section_parts(n, d, field, &mut trace)?;
    parts.push(big);
    let partition = SubspacePartition::validate(Space::new(n, field.clone())?, parts)?;
    Ok(ConstructionCertificate { partition, recipe: Recipe::Beutelspacher { n, d }, trace })
}

/// Peels off t-spaces until the residual has dimension t + r. Returns the
/// t-parts and a basis of the residual, all in V(n).
fn peel(space: &Arc<Space>, t: usize, field: &FieldSpec, trace: &mut Vec<Step>) -> Result<(Vec<Subspace>, Vec<Vector>)> {
    let n = space.n();
    let mut residual: Vec<Vector> = space.whole().rows().map(|r| r.to_vec()).collect();
    let mut parts = Vec::new();
    let mut m = n;
    while m >= 2 * t {
        let (big, small) = section_parts(m, t, field, trace)?;
        parts.extend(small.iter().map(|w| space.image(w, &residual)));
        let next = space.image(&big, &residual);
        residual = next.rows().map(|r| r.to_vec()).collect();
        trace.push(Step::Recurse { from_dim: m, residual: next.to_rows() });
        m -= t;
    }
    Ok((parts, residual))
}

fn check_k(n: usize, t: usize) -> Result<ParameterSet> {
    let ps = ParameterSet::new(n as u32, t as u32)?;
    if ps.k < 2 {
        return Err(Error::OutOfRange(format!("need n = kt + r with k ≥ 2, got n={n}, t={t}")));
    }
    Ok(ps)
}

/// ℓq^t t-spaces and one (t+r)-space: a partition of size ρ_q(n, t).
pub fn pi_m(n: usize, t: usize, field: &FieldSpec) -> Result<ConstructionCertificate> {
    check_k(n, t)?;
    let space = Space::new(n, field.clone())?;
    let mut trace = Vec::new();
    let (mut parts, residual) = peel(&space, t, field, &mut trace)?;
    parts.push(space.span_unchecked(residual));
    let partition = SubspacePartition::validate(space, parts)?;
    Ok(ConstructionCertificate { partition, recipe: Recipe::PiMin { n, t }, trace })
}

/// ℓq^t t-spaces, q^{⌈(t+r)/2⌉} ⌊(t+r)/2⌋-spaces and one ⌈(t+r)/2⌉-space:
/// a partition of size σ_q(n, t).
pub fn pi_big_m(n: usize, t: usize, field: &FieldSpec) -> Result<ConstructionCertificate> {
    let ps = check_k(n, t)?;
    if ps.r == 0 {
        return Err(Error::OutOfRange(format!("need 1 ≤ r < t, got r = 0 for n={n}, t={t}")));
    }
    let space = Space::new(n, field.clone())?;
    let mut trace = Vec::new();
    let (mut parts, residual) = peel(&space, t, field, &mut trace)?;
    let rest = residual.len();
    let (big, small) = section_parts(rest, rest / 2, field, &mut trace)?;
    parts.extend(small.iter().map(|w| space.image(w, &residual)));
    parts.push(space.image(&big, &residual));
    trace.push(Step::Refine { dim: rest, small: rest / 2, big: rest - rest / 2 });
    let partition = SubspacePartition::validate(space, parts)?;
    Ok(ConstructionCertificate { partition, recipe: Recipe::PiMax { n, t }, trace })
}

/// A t-spread of the first n coordinates of V(n+t−1, q); maximal as a partial spread.
pub fn embedded_spread_maximal(n: usize, t: usize, field: &FieldSpec) -> Result<PartialSpread> {
    if t == 0 || !n.is_multiple_of(t) || n < 2 * t {
        return Err(Error::OutOfRange(format!("need t | n and n ≥ 2t, got n={n}, t={t}")));
    }
    let small = Space::new(n, field.clone())?;
    let big = Space::new(n + t - 1, field.clone())?;
    let (members, _) = spread_members(&small, n / t, t)?;
    let basis: Vec<Vector> = big.coordinate_subspace(0..n).rows().map(|r| r.to_vec()).collect();
    let embedded = members.iter().map(|w| big.image(w, &basis)).collect();
    PartialSpread::new(big, t, embedded)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    fn dims(p: &SubspacePartition) -> Vec<usize> {
        p.parts().iter().map(Subspace::dim).collect()
    }

    #[test]
    fn spreads() {
        let s = desarguesian_spread(2, 2, &gf(2)).unwrap();
        assert_eq!(s.len(), 5);
        assert!(dims(&s).iter().all(|&d| d == 2));
        assert_eq!(desarguesian_spread(3, 2, &gf(2)).unwrap().len(), 21);
        assert_eq!(desarguesian_spread(2, 3, &gf(3)).unwrap().len(), 28);
        assert_eq!(desarguesian_spread(2, 2, &gf(4)).unwrap().len(), 17);
        assert_eq!(desarguesian_spread(1, 3, &gf(2)).unwrap().len(), 1);
        assert!(desarguesian_spread(0, 2, &gf(2)).is_err());
    }

    #[test]
    fn spread_over_custom_modulus() {
        // GF(9) built from x^2 + x + 2 instead of the default x^2 + 1
        let f = FieldSpec::new(3, 2, Some(&[2, 1, 1])).unwrap();
        assert_eq!(desarguesian_spread(2, 2, &f).unwrap().len(), 82);
    }

    #[test]
    fn beutelspacher_examples() {
        let c = beutelspacher_partition(4, 2, &gf(2)).unwrap();
        assert_eq!(dims(&c.partition), vec![2; 5]);
        let c = beutelspacher_partition(5, 2, &gf(2)).unwrap();
        assert_eq!(dims(&c.partition), [vec![3], vec![2; 8]].concat());
        let c = beutelspacher_partition(3, 1, &gf(2)).unwrap();
        assert_eq!(dims(&c.partition), [vec![2], vec![1; 4]].concat());
        assert!(beutelspacher_partition(5, 3, &gf(2)).is_err());
    }

    #[test]
    fn pi_m_examples() {
        let c = pi_m(5, 2, &gf(2)).unwrap();
        assert_eq!(dims(&c.partition), [vec![3], vec![2; 8]].concat());
        let c = pi_m(8, 3, &gf(2)).unwrap();
        assert_eq!(dims(&c.partition), [vec![5], vec![3; 32]].concat());
        let c = pi_m(6, 2, &gf(2)).unwrap();
        assert_eq!(dims(&c.partition), vec![2; 21]);
        assert!(pi_m(3, 2, &gf(2)).is_err());
    }

    #[test]
    fn pi_big_m_examples() {
        let c = pi_big_m(5, 2, &gf(2)).unwrap();
        assert_eq!(dims(&c.partition), [vec![2; 9], vec![1; 4]].concat());
        let c = pi_big_m(7, 3, &gf(2)).unwrap();
        assert_eq!(dims(&c.partition), [vec![3; 16], vec![2; 5]].concat());
        let c = pi_big_m(8, 3, &gf(2)).unwrap();
        assert_eq!(c.partition.len(), 41);
        assert_eq!(dims(&c.partition), [vec![3; 33], vec![2; 8]].concat());
        assert!(pi_big_m(6, 2, &gf(2)).is_err());
    }

    #[test]
    fn replay_reproduces() {
        for recipe in [Recipe::PiMin { n: 7, t: 3 }, Recipe::PiMax { n: 7, t: 2 }, Recipe::Spread { k: 3, t: 2 }] {
            let c = run(recipe, &gf(2)).unwrap();
            assert_eq!(c.replay().unwrap(), c.partition);
            assert!(!c.trace.is_empty());
        }
    }

    #[test]
    fn embedded_sizes() {
        assert_eq!(embedded_spread_maximal(4, 2, &gf(2)).unwrap().len(), 5);
        assert_eq!(embedded_spread_maximal(4, 2, &gf(3)).unwrap().len(), 10);
        assert_eq!(embedded_spread_maximal(6, 3, &gf(2)).unwrap().len(), 9);
        assert!(embedded_spread_maximal(5, 2, &gf(2)).is_err());
    }
}

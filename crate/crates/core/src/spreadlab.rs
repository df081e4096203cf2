//! Partial t-spreads: holes, maximality, greedy completion, blocking sets and
//! the partition a spread induces on a subspace it blocks.

use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::geometry::{gaussian_binomial, PointSet, Space, Subspace, Vector};
use crate::gf::FieldElement;
use crate::partition::SubspacePartition;

/// Default cap on the number of candidate subspaces a blocking-subspace search may face.
pub const DEFAULT_BLOCKING_LIMIT: u64 = 1_000_000;

/// Pairwise trivially-intersecting t-subspaces.
#[derive(Clone, Debug)]
pub struct PartialSpread {
    space: Arc<Space>,
    t: usize,
    members: Vec<Subspace>,
    covered: PointSet,
}

impl PartialEq for PartialSpread {
    fn eq(&self, other: &Self) -> bool {
        *self.space == *other.space && self.t == other.t && self.members == other.members
    }
}

impl Eq for PartialSpread {}

/// Points not covered by any member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleSet {
    pub holes: PointSet,
}

impl HoleSet {
    pub fn count(&self) -> usize {
        self.holes.count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Maximality {
    Maximal,
    /// A t-space lying entirely in the holes.
    Extendable(Subspace),
}

impl Maximality {
    pub fn is_maximal(&self) -> bool {
        matches!(self, Maximality::Maximal)
    }
}

impl PartialSpread {
    /// Validates dimensions and pairwise disjointness; member indices in errors
    /// refer to the input order.
    pub fn new(space: Arc<Space>, t: usize, mut members: Vec<Subspace>) -> Result<Self> {
        if t == 0 || t > space.n() {
            return Err(Error::BadDimension { n: space.n(), d: t });
        }
        let mut covered = PointSet::new(space.num_points());
        let mut owner = vec![usize::MAX; space.num_points()];
        for (k, w) in members.iter().enumerate() {
            if w.n() != space.n() {
                return Err(Error::DimensionMismatch { expected: space.n(), found: w.n() });
            }
            if w.dim() != t {
                return Err(Error::WrongDimension { index: k, expected: t, found: w.dim() });
            }
            for p in space.point_indices(w) {
                if owner[p] != usize::MAX {
                    return Err(Error::NotDisjoint(owner[p], k));
                }
                owner[p] = k;
                covered.insert(p);
            }
        }
        members.sort();
        Ok(PartialSpread { space, t, members, covered })
    }

    pub fn empty(space: Arc<Space>, t: usize) -> Result<Self> {
        Self::new(space, t, Vec::new())
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Union of the members as a point set.
    pub fn covered(&self) -> &PointSet {
        &self.covered
    }

    pub fn holes(&self) -> HoleSet {
        HoleSet { holes: self.covered.complement() }
    }

    pub fn is_maximal(&self) -> Maximality {
        match find_subspace_within(&self.space, &self.holes().holes, self.t) {
            Some(w) => Maximality::Extendable(w),
            None => Maximality::Maximal,
        }
    }

    /// Adds t-spaces in canonical enumeration order while they fit.
    pub fn greedy_complete(&self) -> PartialSpread {
        let mut covered = self.covered.clone();
        let mut members = self.members.clone();
        for w in self.space.subspaces(self.t).expect("t ≤ n") {
            let pts = self.space.points_of(&w);
            if pts.is_disjoint(&covered) {
                covered.union_with(&pts);
                members.push(w);
            }
        }
        members.sort();
        PartialSpread { space: self.space.clone(), t: self.t, members, covered }
    }

    /// `{W ∩ B : W ∈ S}` as a partition of `B`, re-expressed in the coordinates
    /// of B's RREF basis.
    pub fn induced_partition(&self, b: &Subspace) -> Result<SubspacePartition> {
        if b.n() != self.space.n() {
            return Err(Error::DimensionMismatch { expected: self.space.n(), found: b.n() });
        }
        let local = Space::new(b.dim(), self.space.field().clone())?;
        let mut parts = Vec::with_capacity(self.members.len());
        for (k, w) in self.members.iter().enumerate() {
            let x = self.space.intersect(w, b)?;
            if x.is_zero() {
                return Err(Error::NotBlocked(k));
            }
            let rows: Vec<Vector> =
                x.rows().map(|r| self.space.coordinates_in(b, r).expect("W ∩ B lies in B")).collect();
            parts.push(local.span_unchecked(rows));
        }
        SubspacePartition::validate(local, parts)
    }

    /// An `n`-subspace whose points all lie in the union of the members.
    pub fn find_trivial_blocking_subspace(&self, n: usize, limit: u64) -> Result<Option<Subspace>> {
        let big_n = self.space.n();
        if n + self.t != big_n + 1 {
            return Err(Error::PreconditionUnmet(format!(
                "ambient dimension {big_n} must equal n + t − 1 = {}",
                n + self.t - 1
            )));
        }
        let candidates = gaussian_binomial(big_n, n, self.space.q() as u64)?;
        if candidates > BigUint::from(limit) {
            return Err(Error::TooLarge(format!("{candidates} candidate {n}-subspaces exceed the limit {limit}")));
        }
        Ok(find_subspace_within(&self.space, &self.covered, n))
    }
}

/// True iff every t-subspace contains a point of `points`.
pub fn is_blocking_set(space: &Space, points: &PointSet, t: usize) -> bool {
    find_subspace_within(space, &points.complement(), t).is_none()
}

/// Backtracking search for a `d`-subspace all of whose points lie in `allowed`.
///
/// A subspace W is built from points p_1, p_2, … where p_{j+1} is the least
/// point of W outside span(p_1..p_j). Every point a new basis vector brings in
/// must therefore be allowed and exceed p_{j+1}, which visits each W once.
pub fn find_subspace_within(space: &Space, allowed: &PointSet, d: usize) -> Option<Subspace> {
    if d == 0 {
        return Some(space.zero());
    }
    search_from(space, allowed, None, d)
}

/// As [`find_subspace_within`], restricted to subspaces containing the point `seed`.
pub fn find_subspace_through(space: &Space, allowed: &PointSet, seed: usize, d: usize) -> Option<Subspace> {
    if d == 0 || !allowed.contains(seed) {
        return None;
    }
    search_from(space, allowed, Some(seed), d)
}

fn search_from(space: &Space, allowed: &PointSet, seed: Option<usize>, d: usize) -> Option<Subspace> {
    if d > space.n() {
        return None;
    }
    let f = space.field();
    let nonzero: Vec<FieldElement> = f.elements().skip(1).collect();
    let mut span = vec![vec![FieldElement::ZERO; space.n()]];
    let mut basis = Vec::with_capacity(d);
    if let Some(s) = seed {
        let v = space.point(s);
        span.extend(nonzero.iter().map(|&l| v.iter().map(|&a| f.mul(l, a)).collect::<Vector>()));
        basis.push(v.to_vec());
    }
    let cands: Vec<usize> = allowed.iter().filter(|&p| Some(p) != seed).collect();
    if extend(space, allowed, &cands, d, 0, &nonzero, &mut basis, &mut span) {
        Some(space.span_unchecked(basis))
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    space: &Space,
    allowed: &PointSet,
    cands: &[usize],
    d: usize,
    from: usize,
    nonzero: &[FieldElement],
    basis: &mut Vec<Vector>,
    span: &mut Vec<Vector>,
) -> bool {
    if basis.len() == d {
        return true;
    }
    let f = space.field();
    let needed = space.theta(d) - space.theta(basis.len());
    let mut buf = vec![FieldElement::ZERO; space.n()];
    for (ci, &p) in cands.iter().enumerate().skip(from) {
        if cands.len() - ci < needed {
            break;
        }
        let v = space.point(p);
        let fits = span[1..].iter().all(|u| {
            for ((w, &a), &b) in buf.iter_mut().zip(v).zip(u) {
                *w = f.add(a, b);
            }
            matches!(space.point_index(&buf), Some(i) if i > p && allowed.contains(i))
        });
        if !fits {
            continue;
        }
        let old = span.len();
        for &lambda in nonzero {
            for i in 0..old {
                let w: Vector = v.iter().zip(&span[i]).map(|(&a, &b)| f.add(f.mul(lambda, a), b)).collect();
                span.push(w);
            }
        }
        basis.push(v.to_vec());
        if extend(space, allowed, cands, d, ci + 1, nonzero, basis, span) {
            return true;
        }
        basis.pop();
        span.truncate(old);
    }
    false
}

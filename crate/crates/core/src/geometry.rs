//! Vectors, points and subspaces of V(n, q).
//!
//! Subspaces are kept in reduced row echelon form, which makes equality,
//! hashing and ordering structural. Points (1-spaces) are numbered densely by
//! the lexicographic order of their canonical representative, the spanning
//! vector whose first nonzero coordinate is 1.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

/// Default upper bound on the number of points of an ambient space.
pub const DEFAULT_POINT_LIMIT: u128 = 1 << 20;

pub type Vector = Vec<FieldElement>;

/// A fixed-length bit vector indexed by point number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    len: usize,
    words: Vec<u64>,
}

impl PointSet {
    pub fn new(len: usize) -> Self {
        PointSet { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = PointSet { len, words: vec![!0; len.div_ceil(64)] };
        s.trim();
        s
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), len.div_ceil(64));
        let mut s = PointSet { len, words };
        s.trim();
        s
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !0u64 >> extra;
            }
        }
    }

    /// Universe size, not the number of members.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &PointSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn complement(&self) -> PointSet {
        let mut c = PointSet { len: self.len, words: self.words.iter().map(|w| !w).collect() };
        c.trim();
        c
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

/// A subspace of V(n, q) stored as its RREF basis, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    dim: usize,
    entries: Vec<FieldElement>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n, dim: 0, entries: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.entries.chunks(self.n.max(1)).take(self.dim)
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(|r| r.iter().map(|x| x.value()).collect()).collect()
    }

    /// Order used for the parts of a partition: dimension descending, then RREF.
    pub fn partition_order(a: &Subspace, b: &Subspace) -> Ordering {
        b.dim.cmp(&a.dim).then_with(|| a.entries.cmp(&b.entries))
    }
}

impl std::fmt::Display for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.rows().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            for x in r {
                write!(f, "{x}")?;
            }
        }
        write!(f, ">")
    }
}

/// The ambient space V(n, q) with its point numbering.
#[derive(Debug)]
pub struct Space {
    n: usize,
    field: FieldSpec,
    q: usize,
    // theta[j] = number of points of V(j, q)
    theta: Vec<usize>,
    points: Vec<FieldElement>,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.field == other.field
    }
}

impl Eq for Space {}

fn theta_u128(j: usize, q: u128) -> Option<u128> {
    let mut acc: u128 = 0;
    for _ in 0..j {
        acc = acc.checked_mul(q)?.checked_add(1)?;
    }
    Some(acc)
}

impl Space {
    pub fn new(n: usize, field: FieldSpec) -> Result<Arc<Space>> {
        Self::with_limit(n, field, DEFAULT_POINT_LIMIT)
    }

    pub fn with_limit(n: usize, field: FieldSpec, limit: u128) -> Result<Arc<Space>> {
        if n == 0 {
            return Err(Error::BadDimension { n, d: 0 });
        }
        let q = field.q() as usize;
        let count = theta_u128(n, q as u128).unwrap_or(u128::MAX);
        if count > limit {
            return Err(Error::SpaceTooLarge { points: count, limit });
        }
        let theta: Vec<usize> = (0..=n).map(|j| theta_u128(j, q as u128).unwrap() as usize).collect();

        let mut points = Vec::with_capacity(theta[n] * n);
        for pivot in (0..n).rev() {
            let tail = n - 1 - pivot;
            for t in 0..q.pow(tail as u32) {
                let start = points.len();
                points.resize(start + n, FieldElement::ZERO);
                points[start + pivot] = FieldElement::ONE;
                let mut rest = t;
                for j in (pivot + 1..n).rev() {
                    points[start + j] = FieldElement::from_raw((rest % q) as u32);
                    rest /= q;
                }
            }
        }
        Ok(Arc::new(Space { n, field, q, theta, points }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// θ_j as a machine integer, for j ≤ n.
    pub fn theta(&self, j: usize) -> usize {
        self.theta[j]
    }

    pub fn num_points(&self) -> usize {
        self.theta[self.n]
    }

    pub fn point(&self, index: usize) -> &[FieldElement] {
        &self.points[index * self.n..(index + 1) * self.n]
    }

    /// Index of the point spanned by `v`; `None` for the zero vector.
    pub fn point_index(&self, v: &[FieldElement]) -> Option<usize> {
        debug_assert_eq!(v.len(), self.n);
        let pivot = v.iter().position(|x| !x.is_zero())?;
        let scale = if v[pivot] == FieldElement::ONE { None } else { Some(self.field.inv(v[pivot]).ok()?) };
        let mut tail = 0usize;
        for &x in &v[pivot + 1..] {
            let x = match scale {
                Some(s) => self.field.mul(x, s),
                None => x,
            };
            tail = tail * self.q + x.value() as usize;
        }
        Some(self.theta[self.n - 1 - pivot] + tail)
    }

    pub fn vector(&self, values: &[u32]) -> Result<Vector> {
        if values.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: values.len() });
        }
        values.iter().map(|&v| self.field.element(v)).collect()
    }

    pub fn zero(&self) -> Subspace {
        Subspace::zero(self.n)
    }

    pub fn whole(&self) -> Subspace {
        let mut entries = vec![FieldElement::ZERO; self.n * self.n];
        for i in 0..self.n {
            entries[i * self.n + i] = FieldElement::ONE;
        }
        Subspace { n: self.n, dim: self.n, entries }
    }

    /// Span of the coordinate vectors `e_i` for `i` in `coords`.
    pub fn coordinate_subspace(&self, coords: impl IntoIterator<Item = usize>) -> Subspace {
        let rows: Vec<Vector> = coords
            .into_iter()
            .map(|i| {
                let mut v = vec![FieldElement::ZERO; self.n];
                v[i] = FieldElement::ONE;
                v
            })
            .collect();
        self.span_unchecked(rows)
    }

    pub fn span<V: AsRef<[FieldElement]>>(&self, vectors: &[V]) -> Result<Subspace> {
        for v in vectors {
            let v = v.as_ref();
            if v.len() != self.n {
                return Err(Error::DimensionMismatch { expected: self.n, found: v.len() });
            }
            if let Some(x) = v.iter().find(|x| x.value() >= self.field.q()) {
                return Err(Error::FieldMismatch { value: x.value(), q: self.field.q() });
            }
        }
        Ok(self.span_unchecked(vectors.iter().map(|v| v.as_ref().to_vec()).collect()))
    }

    pub(crate) fn span_unchecked(&self, mut rows: Vec<Vector>) -> Subspace {
        let f = &self.field;
        let n = self.n;
        let mut rank = 0;
        for col in 0..n {
            let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pr);
            let inv = f.inv(rows[rank][col]).expect("pivot is nonzero");
            for x in rows[rank].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let c = row[col];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        Subspace { n, dim: rank, entries: rows.concat() }
    }

    /// Parses a basis that must already be in RREF.
    pub fn subspace_from_rows(&self, rows: &[Vec<u32>]) -> Result<Subspace> {
        let vectors: Vec<Vector> = rows.iter().map(|r| self.vector(r)).collect::<Result<_>>()?;
        let s = self.span_unchecked(vectors.clone());
        if s.dim != vectors.len() || s.entries != vectors.concat() {
            return Err(Error::NotRref(format!("{rows:?}")));
        }
        Ok(s)
    }

    fn check(&self, w: &Subspace) -> Result<()> {
        if w.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: w.n });
        }
        Ok(())
    }

    /// Linear combination `Σ coeffs_i · row_i(w)`.
    pub fn combine(&self, w: &Subspace, coeffs: &[FieldElement]) -> Vector {
        let f = &self.field;
        let mut v = vec![FieldElement::ZERO; self.n];
        for (row, &c) in w.rows().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        v
    }

    /// Indices of the θ_dim points of `w`.
    pub fn point_indices(&self, w: &Subspace) -> Vec<usize> {
        let d = w.dim;
        let mut out = Vec::with_capacity(self.theta.get(d).copied().unwrap_or(0));
        let mut coeffs = vec![FieldElement::ZERO; d];
        for lead in 0..d {
            let tail = d - 1 - lead;
            for t in 0..self.q.pow(tail as u32) {
                coeffs.iter_mut().for_each(|c| *c = FieldElement::ZERO);
                coeffs[lead] = FieldElement::ONE;
                let mut rest = t;
                for j in (lead + 1..d).rev() {
                    coeffs[j] = FieldElement::from_raw((rest % self.q) as u32);
                    rest /= self.q;
                }
                let v = self.combine(w, &coeffs);
                out.push(self.point_index(&v).expect("rows are independent"));
            }
        }
        out
    }

    pub fn points_of(&self, w: &Subspace) -> PointSet {
        PointSet::from_indices(self.num_points(), self.point_indices(w))
    }

    /// `v` reduced against the RREF basis of `w`; zero iff `v ∈ w`.
    pub fn reduce(&self, w: &Subspace, v: &[FieldElement]) -> Vector {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, p) in w.rows().zip(w.pivots()) {
            let c = v[p];
            if !c.is_zero() {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, w: &Subspace, v: &[FieldElement]) -> bool {
        self.reduce(w, v).iter().all(|x| x.is_zero())
    }

    /// True iff `u ⊆ w`.
    pub fn contains(&self, w: &Subspace, u: &Subspace) -> Result<bool> {
        self.check(w)?;
        self.check(u)?;
        Ok(u.dim <= w.dim && u.rows().all(|r| self.contains_vector(w, r)))
    }

    /// Coordinates of `v ∈ w` with respect to the RREF basis of `w`.
    pub fn coordinates_in(&self, w: &Subspace, v: &[FieldElement]) -> Option<Vector> {
        self.contains_vector(w, v).then(|| w.pivots().into_iter().map(|p| v[p]).collect())
    }

    /// `{x : ⟨x, w⟩ = 0}` for the standard dot product.
    pub fn annihilator(&self, w: &Subspace) -> Subspace {
        let f = &self.field;
        let pivots = w.pivots();
        let rows: Vec<Vector> = (0..self.n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut x = vec![FieldElement::ZERO; self.n];
                x[free] = FieldElement::ONE;
                for (row, &p) in w.rows().zip(&pivots) {
                    x[p] = f.neg(row[free]);
                }
                x
            })
            .collect();
        self.span_unchecked(rows)
    }

    pub fn sum(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check(a)?;
        self.check(b)?;
        let rows: Vec<Vector> = a.rows().chain(b.rows()).map(|r| r.to_vec()).collect();
        Ok(self.span_unchecked(rows))
    }

    pub fn intersect(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check(a)?;
        self.check(b)?;
        let dual = self.sum(&self.annihilator(a), &self.annihilator(b))?;
        Ok(self.annihilator(&dual))
    }

    /// Every `d`-subspace in lexicographic order of the flattened RREF matrix.
    pub fn subspaces(&self, d: usize) -> Result<std::vec::IntoIter<Subspace>> {
        if d > self.n {
            return Err(Error::BadDimension { n: self.n, d });
        }
        let mut out = Vec::new();
        let mut pivots: Vec<usize> = (0..d).collect();
        loop {
            self.push_with_pivots(&pivots, &mut out);
            // next combination
            let mut i = d;
            loop {
                if i == 0 {
                    out.sort();
                    return Ok(out.into_iter());
                }
                i -= 1;
                if pivots[i] < self.n - d + i {
                    pivots[i] += 1;
                    for j in i + 1..d {
                        pivots[j] = pivots[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn push_with_pivots(&self, pivots: &[usize], out: &mut Vec<Subspace>) {
        let (n, d) = (self.n, pivots.len());
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| (pivots[i] + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
            .collect();
        let mut base = vec![FieldElement::ZERO; d * n];
        for (i, &p) in pivots.iter().enumerate() {
            base[i * n + p] = FieldElement::ONE;
        }
        let combos = self.q.pow(free.len() as u32);
        for mut k in 0..combos {
            let mut entries = base.clone();
            for &(i, c) in free.iter().rev() {
                entries[i * n + c] = FieldElement::from_raw((k % self.q) as u32);
                k /= self.q;
            }
            out.push(Subspace { n, dim: d, entries });
        }
    }

    /// The canonical functional of hyperplane number `index`.
    pub fn hyperplane_functional(&self, index: usize) -> &[FieldElement] {
        self.point(index)
    }

    /// All hyperplanes, as kernels of the canonical functionals in point order.
    pub fn hyperplanes(&self) -> impl Iterator<Item = Subspace> + '_ {
        (0..self.num_points()).map(move |i| self.annihilator(&self.span_unchecked(vec![self.point(i).to_vec()])))
    }

    pub fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        a.iter().zip(b).fold(FieldElement::ZERO, |acc, (&x, &y)| self.field.add(acc, self.field.mul(x, y)))
    }

    /// Image of `w ⊆ V(m)` under the map sending `e_i` to `basis[i]`.
    pub fn image<B: AsRef<[FieldElement]>>(&self, w: &Subspace, basis: &[B]) -> Subspace {
        let f = &self.field;
        let rows: Vec<Vector> = w
            .rows()
            .map(|r| {
                let mut v = vec![FieldElement::ZERO; self.n];
                for (&c, b) in r.iter().zip(basis) {
                    if !c.is_zero() {
                        for (x, &y) in v.iter_mut().zip(b.as_ref()) {
                            *x = f.add(*x, f.mul(c, y));
                        }
                    }
                }
                v
            })
            .collect();
        self.span_unchecked(rows)
    }
}

/// Number of `k`-subspaces of V(n, q).
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::BadDimension { n, d: k });
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize, q: u64) -> Arc<Space> {
        Space::new(n, FieldSpec::of_order(q).unwrap()).unwrap()
    }

    fn vecs(s: &Space, rows: &[&[u32]]) -> Vec<Vector> {
        rows.iter().map(|r| s.vector(r).unwrap()).collect()
    }

    #[test]
    fn span_examples() {
        let s = space(3, 2);
        let w = s.span(&vecs(&s, &[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert_eq!(w.to_rows(), vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let s2 = space(2, 2);
        let w = s2.span(&vecs(&s2, &[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(w.dim(), 1);
        assert_eq!(w.to_rows(), vec![vec![1, 1]]);
        assert!(s.span::<Vector>(&[]).unwrap().is_zero());
        assert!(matches!(s.span(&[vec![FieldElement::ONE]]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn point_numbering_is_lexicographic() {
        for (n, q) in [(3, 2), (3, 3), (2, 4), (4, 2)] {
            let s = space(n, q);
            for i in 0..s.num_points() {
                assert_eq!(s.point_index(s.point(i)), Some(i));
                if i > 0 {
                    assert!(s.point(i - 1) < s.point(i));
                }
            }
            assert_eq!(s.point_index(&vec![FieldElement::ZERO; n]), None);
        }
    }

    #[test]
    fn points_of_examples() {
        let s = space(4, 2);
        let w = s.subspaces(2).unwrap().next().unwrap();
        assert_eq!(s.points_of(&w).count(), 3);
        assert!(s.points_of(&s.zero()).is_empty());
        let s5 = space(5, 2);
        assert_eq!(s5.points_of(&s5.whole()).count(), 31);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(space(4, 2).subspaces(2).unwrap().count(), 35);
        assert_eq!(space(5, 2).subspaces(2).unwrap().count(), 155);
        let zero: Vec<_> = space(4, 3).subspaces(0).unwrap().collect();
        assert_eq!(zero, vec![Subspace::zero(4)]);
        assert!(matches!(space(3, 2).subspaces(4), Err(Error::BadDimension { .. })));
    }

    #[test]
    fn enumeration_is_sorted_and_canonical() {
        let s = space(4, 3);
        let all: Vec<_> = s.subspaces(2).unwrap().collect();
        for w in all.windows(2) {
            assert!(w[0].entries() < w[1].entries());
        }
        for w in &all {
            let rows: Vec<Vector> = w.rows().map(|r| r.to_vec()).collect();
            assert_eq!(&s.span(&rows).unwrap(), w);
        }
    }

    #[test]
    fn hyperplane_examples() {
        assert_eq!(space(4, 2).hyperplanes().count(), 15);
        let s = space(5, 2);
        let hs: Vec<_> = s.hyperplanes().collect();
        assert_eq!(hs.len(), 31);
        assert!(hs.iter().all(|h| h.dim() == 4));
    }

    #[test]
    fn intersections_in_v42() {
        let s = space(4, 2);
        let a = s.span(&vecs(&s, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap();
        let b = s.span(&vecs(&s, &[&[1, 0, 0, 0], &[0, 0, 1, 0]])).unwrap();
        assert_eq!(s.intersect(&a, &b).unwrap().dim(), 1);
        assert_eq!(s.sum(&a, &b).unwrap().dim(), 3);
        assert_eq!(s.intersect(&a, &a).unwrap(), a);
    }

    #[test]
    fn containment() {
        let s = space(5, 2);
        for h in s.hyperplanes().take(5) {
            for u in s.subspaces(2).unwrap() {
                let by_points = s.points_of(&u).is_subset(&s.points_of(&h));
                assert_eq!(s.contains(&h, &u).unwrap(), by_points);
            }
            assert!(s.contains(&h, &s.zero()).unwrap());
        }
    }

    #[test]
    fn rref_input_validation() {
        let s = space(3, 2);
        assert!(s.subspace_from_rows(&[vec![1, 0, 1], vec![0, 1, 0]]).is_ok());
        assert!(matches!(s.subspace_from_rows(&[vec![1, 1, 0], vec![0, 1, 0]]), Err(Error::NotRref(_))));
        assert!(matches!(s.subspace_from_rows(&[vec![0, 1, 0], vec![1, 0, 0]]), Err(Error::NotRref(_))));
        assert!(matches!(s.subspace_from_rows(&[vec![2, 0, 0]]), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(6, 3, 2).unwrap(), BigUint::from(1395u32));
        assert_eq!(gaussian_binomial(5, 1, 3).unwrap(), BigUint::from(121u32));
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn space_limit() {
        let f = FieldSpec::prime(2).unwrap();
        assert!(matches!(Space::with_limit(21, f, DEFAULT_POINT_LIMIT), Err(Error::SpaceTooLarge { .. })));
    }

    #[test]
    fn point_set_ops() {
        let mut a = PointSet::new(70);
        a.insert(3);
        a.insert(65);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![3, 65]);
        let c = a.complement();
        assert_eq!(c.count(), 68);
        assert!(a.is_disjoint(&c));
        assert!(PointSet::full(70).is_subset(&PointSet::full(70)));
        assert_eq!(PointSet::full(70).count(), 70);
    }
}

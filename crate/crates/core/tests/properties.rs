use std::sync::Arc;

use proptest::prelude::*;
use subpart::spreadlab::{find_subspace_within, is_blocking_set};
use subpart::{FieldSpec, PartialSpread, PointSet, Space, Subspace, SubspacePartition};

fn space(n: usize, q: u64) -> Arc<Space> {
    Space::new(n, FieldSpec::of_order(q).unwrap()).unwrap()
}

fn random_subspace(s: &Space, rows: &[Vec<u32>]) -> Subspace {
    let q = s.q() as u32;
    let vecs: Vec<_> = rows.iter().map(|r| s.vector(&r.iter().map(|x| x % q).collect::<Vec<_>>()).unwrap()).collect();
    s.span(&vecs).unwrap()
}

fn matrix(n: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..16, n), 0..=max_rows)
}

/// Members picked greedily from a shuffled list of t-spaces.
fn random_spread(s: &Arc<Space>, t: usize, picks: &[usize]) -> PartialSpread {
    let all: Vec<Subspace> = s.subspaces(t).unwrap().collect();
    let mut covered = PointSet::new(s.num_points());
    let mut members = Vec::new();
    for &i in picks {
        let w = &all[i % all.len()];
        let pts = s.points_of(w);
        if pts.is_disjoint(&covered) {
            covered.union_with(&pts);
            members.push(w.clone());
        }
    }
    PartialSpread::new(s.clone(), t, members).unwrap()
}

/// The spread's members together with every hole as a 1-space.
fn fill_with_points(sp: &PartialSpread) -> SubspacePartition {
    let s = sp.space();
    let mut parts = sp.members().to_vec();
    parts.extend(sp.holes().holes.iter().map(|p| s.span(&[s.point(p)]).unwrap()));
    SubspacePartition::validate(s.clone(), parts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modular_dimension_law(q in prop::sample::select(vec![2u64, 3, 4]), a in matrix(5, 4), b in matrix(5, 4)) {
        let s = space(5, q);
        let (a, b) = (random_subspace(&s, &a), random_subspace(&s, &b));
        let sum = s.sum(&a, &b).unwrap();
        let meet = s.intersect(&a, &b).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        prop_assert!(s.contains(&sum, &a).unwrap() && s.contains(&a, &meet).unwrap());
    }

    #[test]
    fn containment_matches_point_sets(q in prop::sample::select(vec![2u64, 3]), a in matrix(4, 3), b in matrix(4, 3)) {
        let s = space(4, q);
        let (a, b) = (random_subspace(&s, &a), random_subspace(&s, &b));
        prop_assert_eq!(s.contains(&a, &b).unwrap(), s.points_of(&b).is_subset(&s.points_of(&a)));
    }

    #[test]
    fn partition_validity_matches_point_counts(rows in prop::collection::vec(matrix(4, 2), 1..12)) {
        let s = space(4, 2);
        let parts: Vec<Subspace> = rows.iter().map(|m| random_subspace(&s, m)).filter(|w| !w.is_zero()).collect();
        let mut hits = vec![0usize; s.num_points()];
        for w in &parts {
            for p in s.point_indices(w) {
                hits[p] += 1;
            }
        }
        let exact = !parts.is_empty() && hits.iter().all(|&h| h == 1);
        prop_assert_eq!(SubspacePartition::validate(s.clone(), parts).is_ok(), exact);
    }

    #[test]
    fn identities_hold_on_random_partitions(n in 4usize..=5, picks in prop::collection::vec(0usize..10_000, 0..40)) {
        let s = space(n, 2);
        let sp = random_spread(&s, 2, &picks);
        prop_assume!(!sp.is_empty());
        let p = fill_with_points(&sp);
        let report = p.check_all();
        prop_assert!(report.size_identity_failures.is_empty());
        prop_assert!(report.packing.iter().all(|k| k.all_hold()));
        prop_assert!(report.congruence_holds);
    }

    #[test]
    fn spread_holes_and_maximality(q in prop::sample::select(vec![2u64, 3]), picks in prop::collection::vec(0usize..100_000, 0..30)) {
        let s = space(4, q);
        let sp = random_spread(&s, 2, &picks);
        let theta_t = s.theta(2);
        prop_assert_eq!(sp.holes().count(), s.num_points() - sp.len() * theta_t);
        let brute = s.subspaces(2).unwrap().any(|w| s.points_of(&w).is_disjoint(sp.covered()));
        prop_assert_eq!(!sp.is_maximal().is_maximal(), brute);
        let g = sp.greedy_complete();
        prop_assert!(g.is_maximal().is_maximal());
        prop_assert!(is_blocking_set(&s, g.covered(), 2));
    }

    #[test]
    fn induced_partition_dimensions(picks in prop::collection::vec(0usize..100_000, 0..40), b in matrix(5, 4)) {
        let s = space(5, 2);
        let sp = random_spread(&s, 2, &picks).greedy_complete();
        let b = random_subspace(&s, &b);
        prop_assume!(b.dim() >= 1);
        if let Ok(p) = sp.induced_partition(&b) {
            let low = (2 + b.dim()).saturating_sub(5).max(1);
            prop_assert!(p.parts().iter().all(|w| (low..=2).contains(&w.dim())));
            prop_assert_eq!(p.n(), b.dim());
        }
    }

    #[test]
    fn kernel_finds_only_allowed_subspaces(bits in prop::collection::vec(any::<bool>(), 31), d in 1usize..=3) {
        let s = space(5, 2);
        let allowed = PointSet::from_indices(31, bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
        let brute = s.subspaces(d).unwrap().find(|w| s.points_of(w).is_subset(&allowed));
        let found = find_subspace_within(&s, &allowed, d);
        prop_assert_eq!(found.is_some(), brute.is_some());
        if let Some(w) = found {
            prop_assert!(s.points_of(&w).is_subset(&allowed));
        }
    }
}

//! From a maximal partial spread of minimum size to a partition of a blocking
//! subspace: search, locate the subspace inside the union, intersect.

use subpart::search::{find_maximal_spread_of_size, Budget, Certificate, SearchOptions};
use subpart::spreadlab::DEFAULT_BLOCKING_LIMIT;
use subpart::FieldSpec;

fn main() -> subpart::Result<()> {
    // Pass "6" to run the V(6,2), size-13 instance; it explores about 6·10^7 nodes.
    let big = std::env::args().nth(1).is_some_and(|a| a == "6");
    let (n, size) = if big { (6, 13) } else { (5, 5) };
    let opts = SearchOptions { budget: Budget::nodes(100_000_000), ..Default::default() };
    let r = find_maximal_spread_of_size(n, 2, size, &FieldSpec::prime(2)?, opts)?;
    println!("search: {} after {} nodes", r.status, r.nodes);
    let Some(Certificate::Spread(s)) = r.certificate else {
        return Ok(());
    };
    let b = s
        .find_trivial_blocking_subspace(n - 1, DEFAULT_BLOCKING_LIMIT)?
        .expect("a minimum maximal spread covers an (N−t+1)-space");
    println!("blocking subspace {b}");
    let p = s.induced_partition(&b)?;
    println!("induced partition of V({},2): {} parts, profile {:?}", p.n(), p.len(), p.dimension_profile());
    Ok(())
}

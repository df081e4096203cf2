//! Exact searches that recompute σ, ρ and τ for small parameters.

use subpart::search::{self, SearchOptions};
use subpart::FieldSpec;

fn main() -> subpart::Result<()> {
    let f = FieldSpec::prime(2)?;
    let o = SearchOptions::default();
    let runs = [
        ("sigma_2(5,2)", search::min_partition_size(5, 2, &f, o)?),
        ("rho_2(5,2)", search::max_partition_size(5, 2, &f, o)?),
        ("rho_2(3,2)", search::max_partition_size(3, 2, &f, o)?),
        ("max partial 2-spread of V(5,2)", search::max_partial_spread_size(5, 2, &f, o)?),
        ("tau_2(5,2)", search::min_maximal_spread_size(5, 2, &f, o)?),
        ("tau_2(4,2)", search::min_maximal_spread_size(4, 2, &f, o)?),
    ];
    for (name, r) in runs {
        let value = r.optimum.map_or("-".to_string(), |v| v.to_string());
        println!("{name}: {value} [{}] after {} nodes; {}", r.status, r.nodes, r.proof);
    }
    Ok(())
}

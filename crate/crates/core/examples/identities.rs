//! Hyperplane types and the counting identities on a constructed partition.

use subpart::construct::pi_big_m;
use subpart::FieldSpec;

fn main() -> subpart::Result<()> {
    let p = pi_big_m(5, 2, &FieldSpec::prime(2)?)?.partition;
    let dist = p.type_distribution();
    for (b, s) in &dist.counts {
        println!("hyperplane type {:?} occurs {s} times, size from type {}", b.descending(), p.size_from_type(b));
    }
    let report = p.check_all();
    for pk in &report.packing {
        for c in &pk.checks {
            println!("d={} d'={} {}: {} = {} {}", pk.d, pk.d2, c.name, c.lhs, c.rhs, if c.holds { "ok" } else { "FAILED" });
        }
    }
    for c in &report.conjecture {
        println!("level {}: {} ≥ {} -> {:?}", c.j, c.lhs, c.bound, c.verdict);
    }
    println!("all identities hold: {}", report.all_hold());
    Ok(())
}

//! Partial spreads: holes, maximality witnesses and greedy completion.

use subpart::spreadlab::Maximality;
use subpart::{FieldSpec, PartialSpread, Space};

fn main() -> subpart::Result<()> {
    let v = Space::new(5, FieldSpec::prime(2)?)?;
    let empty = PartialSpread::empty(v.clone(), 2)?;
    if let Maximality::Extendable(w) = empty.is_maximal() {
        println!("empty spread extends by {w}");
    }
    let g = empty.greedy_complete();
    println!("greedy completion: {} lines, {} holes, maximal {}", g.len(), g.holes().count(), g.is_maximal().is_maximal());
    match g.find_trivial_blocking_subspace(4, 1_000_000)? {
        Some(b) => println!("4-space inside the union: {b}"),
        None => println!("no 4-space inside the union"),
    }
    Ok(())
}

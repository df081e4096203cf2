//! The extremal partitions for (n, t) = (8, 3) over GF(2), with their traces.

use subpart::construct::{pi_big_m, pi_m};
use subpart::FieldSpec;

fn main() -> subpart::Result<()> {
    let f = FieldSpec::prime(2)?;
    for cert in [pi_m(8, 3, &f)?, pi_big_m(8, 3, &f)?] {
        println!("{:?}: {} parts, profile {:?}", cert.recipe, cert.partition.len(), cert.partition.dimension_profile());
        for step in &cert.trace {
            println!("  {step}");
        }
        assert_eq!(cert.replay()?, cert.partition);
    }
    Ok(())
}

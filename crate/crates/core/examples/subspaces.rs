//! Points, spans, intersections and enumeration in V(4, 2).

use subpart::{gaussian_binomial, FieldSpec, Space};

fn main() -> subpart::Result<()> {
    let v = Space::new(4, FieldSpec::prime(2)?)?;
    println!("V(4,2) has {} points", v.num_points());

    let a = v.subspace_from_rows(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]])?;
    let b = v.span(&[v.vector(&[0, 1, 0, 0])?, v.vector(&[0, 0, 1, 1])?])?;
    println!("A = {a}, points {:?}", v.point_indices(&a));
    println!("B = {b}, points {:?}", v.point_indices(&b));
    println!("A ∩ B = {}", v.intersect(&a, &b)?);
    println!("A + B = {}", v.sum(&a, &b)?);

    for d in 0..=4 {
        let count = v.subspaces(d)?.count();
        println!("{d}-subspaces: {count} (gaussian binomial {})", gaussian_binomial(4, d, 2)?);
    }
    Ok(())
}

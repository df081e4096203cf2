//! Arithmetic in GF(9) with the default and a custom modulus.

use subpart::FieldSpec;

fn main() -> subpart::Result<()> {
    let f = FieldSpec::new(3, 2, None)?;
    println!("GF({}) modulus {:?}, primitive element {}", f.q(), f.modulus(), f.primitive_element().value());

    let a = f.element(5)?;
    let b = f.element(7)?;
    println!("{} + {} = {}", a.value(), b.value(), f.add(a, b).value());
    println!("{} * {} = {}", a.value(), b.value(), f.mul(a, b).value());
    println!("{}^-1 = {}", a.value(), f.inv(a)?.value());
    println!("{}^8 = {}", a.value(), f.pow(a, 8).value());

    let g = FieldSpec::new(3, 2, Some(&[2, 1, 1]))?;
    println!("same field, modulus {:?}: 5 * 7 = {}", g.modulus(), g.mul(g.element(5)?, g.element(7)?).value());
    println!("{}", serde_json::to_string(&f).expect("serializable"));
    Ok(())
}

//! Projection onto the Lorentz cone and the Moreau decomposition
//! `x = x₊ − x₋` for the Lorentz cone and the orthant.

use sqc::cones::{abs_lorentz, moreau_decompose, ConeSpec};
use sqc::vector;

fn main() -> sqc::Result<()> {
    let x = [0.3, 1.0, -2.0];
    for k in [ConeSpec::lorentz(3), ConeSpec::orthant(3)] {
        let p = moreau_decompose(&k, &x)?;
        println!("{} cone, x = {x:?}", k.name());
        println!("  x+ = {:?}", p.plus);
        println!("  x- = {:?}", p.minus);
        println!("  <x+, x-> = {:.3e}", vector::dot(&p.plus, &p.minus));
        println!("  |x - (x+ - x-)| = {:.3e}", vector::dist(&x, &vector::sub(&p.plus, &p.minus)));
    }
    // |eⁿ| with respect to the Lorentz cone is e¹
    println!("|e3|_L = {:?}", abs_lorentz(&[0.0, 0.0, 1.0])?);
    Ok(())
}

//! Elliptic level cones of a spectrum, numerical intersection tests, and
//! membership in the dual of the cone `𝒲`.

use sqc::cones::{elliptic_levelcone, intersection_trivial, w_dual_contains, ConeSpec, WConeSpec};
use sqc::linalg::{spectral_decompose, SymmetricMatrix, DEFAULT_GAP_TOL};

fn main() -> sqc::Result<()> {
    let a = SymmetricMatrix::diag(&[0.0, 1.0, 3.0])?;
    let dec = spectral_decompose(&a, DEFAULT_GAP_TOL)?;
    let k = ConeSpec::lorentz(3);

    let level = elliptic_levelcone(&dec, 0.5)?;
    println!("level cone at c = 0.5: {level:?}");
    for (label, l) in [("K ∩ L", level.clone()), ("K ∩ -L", level.negated())] {
        let r = intersection_trivial(&k, &l, 64, 1e-9, 3)?;
        println!("{label}: {:?}, best joint margin {:.3e}", r.status, r.best_joint_margin);
    }

    let w = WConeSpec::new(dec.clone(), k)?;
    for v in [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]] {
        let r = w_dual_contains(&w, &v, 2000, 1e-9, 5)?;
        println!("v = {v:?} in W*: {:?} (min value {:.3e})", r.status, r.min_value);
    }
    Ok(())
}

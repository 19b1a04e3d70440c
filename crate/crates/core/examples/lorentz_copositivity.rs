//! Exact Lorentz copositivity through the multiplier `ρ` with `A − ρJ ⪰ 0`,
//! next to the sampled refuter.

use sqc::copositivity::{lorentz_copositive, sampled_copositive};
use sqc::cones::ConeSpec;
use sqc::linalg::SymmetricMatrix;

fn main() -> sqc::Result<()> {
    let cases = [
        ("J = diag(1, -1, -1)", SymmetricMatrix::lorentz_j(3)),
        ("diag(1, 0, -1)", SymmetricMatrix::diag(&[1.0, 0.0, -1.0])?),
        ("diag(1, 0, -2)", SymmetricMatrix::diag(&[1.0, 0.0, -2.0])?),
    ];
    for (label, a) in cases {
        let exact = lorentz_copositive(&a, 1e-9)?;
        let sampled = sampled_copositive(&a, &ConeSpec::lorentz(3), 2000, 7, 1e-9)?;
        println!("{label}");
        println!("  exact:   {:?}, rho = {:?}, floor = {:.3e}", exact.status, exact.rho, exact.psd_floor);
        println!("  sampled: {:?}, witness = {:?}", sampled.status, sampled.witness);
    }
    Ok(())
}

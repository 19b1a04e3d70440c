//! Sublevel cones `{x ∈ K : ⟨(A − cI)x, x⟩ ≤ 0}` at a sweep of levels and
//! conversion of a sublevel counterexample into a geodesic one.

use sqc::cones::ConeSpec;
use sqc::linalg::SymmetricMatrix;
use sqc::oracle::{sublevel_convexity_test, LevelSelection, OracleOptions};

fn main() -> sqc::Result<()> {
    let k = ConeSpec::lorentz(3);
    let a = SymmetricMatrix::diag(&[0.5, 0.0, 1.0])?;
    let opts = OracleOptions::default();
    for levels in [LevelSelection::Sweep(8), LevelSelection::Explicit(vec![0.25, 0.4])] {
        let out = sublevel_convexity_test(&a, &k, &levels, &opts)?;
        println!("{levels:?}: {:?} after {} combinations", out.status, out.tested);
        if let Some(cx) = out.counterexample {
            println!("  sublevel margin {:.3e}", cx.margin());
            if let Some(g) = cx.to_geodesic(&a) {
                println!("  as a geodesic violation: margin {:.3e}, verified = {}", g.margin(), g.verify(&a, &k, opts.tol)?);
            }
        }
    }
    Ok(())
}

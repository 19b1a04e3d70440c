//! The geodesic, pairwise and sublevel oracles on a quasi-convex and a
//! non-quasi-convex form, with re-verification of the counterexample.

use sqc::cones::ConeSpec;
use sqc::linalg::SymmetricMatrix;
use sqc::oracle::{
    geodesic_quasiconvexity_test, pairwise_test, sublevel_convexity_test, LevelSelection, OracleOptions,
};

fn main() -> sqc::Result<()> {
    let k = ConeSpec::lorentz(3);
    let opts = OracleOptions {
        samples: 5000,
        ..OracleOptions::default()
    };
    for d in [[0.0, 1.0, 1.0], [1.0, 0.0, 1.0]] {
        let a = SymmetricMatrix::diag(&d)?;
        println!("A = diag{d:?}");
        let runs = [
            ("geodesic", geodesic_quasiconvexity_test(&a, &k, &opts)?),
            ("pairwise", pairwise_test(&a, &k, &opts)?),
            ("sublevel", sublevel_convexity_test(&a, &k, &LevelSelection::PairMaximum, &opts)?),
        ];
        for (name, out) in runs {
            match &out.counterexample {
                Some(cx) => println!(
                    "  {name}: violation with margin {:.3e} after {} pairs, verified = {}",
                    cx.margin(),
                    out.tested,
                    cx.verify(&a, &k, opts.tol)?
                ),
                None => println!("  {name}: nothing found in {} pairs", out.tested),
            }
        }
    }
    Ok(())
}

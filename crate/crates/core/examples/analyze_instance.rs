//! Full analysis of a matrix on a cone: condition outcomes, verdict and the
//! condition that decided it.

use sqc::analysis::{analyze, AnalysisOptions};
use sqc::cones::ConeSpec;
use sqc::linalg::SymmetricMatrix;

fn main() -> sqc::Result<()> {
    let opts = AnalysisOptions {
        exhaustive: true,
        ..AnalysisOptions::default()
    };
    let cases = [
        ("diag(0,1,1) on Lorentz", SymmetricMatrix::diag(&[0.0, 1.0, 1.0])?, ConeSpec::lorentz(3)),
        ("diag(1,0,1) on Lorentz", SymmetricMatrix::diag(&[1.0, 0.0, 1.0])?, ConeSpec::lorentz(3)),
        ("diag(0,1,1.4) on Lorentz", SymmetricMatrix::diag(&[0.0, 1.0, 1.4])?, ConeSpec::lorentz(3)),
        ("diag(1,2,3) on orthant", SymmetricMatrix::diag(&[1.0, 2.0, 3.0])?, ConeSpec::orthant(3)),
    ];
    for (label, a, k) in cases {
        let r = analyze(&a, &k, &opts);
        println!("{label}: {} (by {})", r.verdict, r.decided_by.as_deref().unwrap_or("-"));
        for o in &r.outcomes {
            println!("  {:<18} {:?}", o.condition_id.as_str(), o.status);
        }
    }
    Ok(())
}

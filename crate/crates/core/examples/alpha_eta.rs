//! The quantities `α` and `η` on the Lorentz cone and the orthant, and the
//! sufficient condition built from them.

use sqc::analysis::{compute_alpha_eta, sufficient_alpha_eta, AnalysisOptions};
use sqc::cones::ConeSpec;
use sqc::linalg::{householder, spectral_decompose, SymmetricMatrix, DEFAULT_GAP_TOL};

fn main() -> sqc::Result<()> {
    let opts = AnalysisOptions::default();
    for n in [3, 5, 8] {
        let mut d: Vec<f64> = (0..n).map(|i| 1.0 + 0.05 * i as f64).collect();
        d[0] = 0.0;
        let a = SymmetricMatrix::diag(&d)?;
        let ae = compute_alpha_eta(&spectral_decompose(&a, DEFAULT_GAP_TOL)?, &ConeSpec::lorentz(n), &opts)?;
        println!("Lorentz n={n}: alpha = {:.12}, eta = {:.6}", ae.alpha, ae.eta);
    }
    let h = householder(&[1.0, 1.0, 1.0])?;
    let ae = compute_alpha_eta(&spectral_decompose(&h, DEFAULT_GAP_TOL)?, &ConeSpec::orthant(3), &opts)?;
    println!("orthant, Householder along (1,1,1): alpha = {:.12}, eta = {:.6}", ae.alpha, ae.eta);

    for top in [1.4, 2.0, 2.1] {
        let a = SymmetricMatrix::diag(&[0.0, 1.0, 1.0, top])?;
        let o = sufficient_alpha_eta(&a, &ConeSpec::lorentz(4), &opts)?;
        println!("diag(0,1,1,{top}): {:?}", o.status);
    }
    Ok(())
}

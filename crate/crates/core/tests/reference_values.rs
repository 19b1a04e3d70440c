//! Reference values checked against independent test-side computations.

#![allow(clippy::needless_range_loop)]

mod common;

use sqc::analysis::{
    analyze, compute_alpha_eta, necessary_conditions, sufficient_alpha_eta, sufficient_best_iii,
    sufficient_countergg, sufficient_two_eig, AnalysisOptions, ConditionId, ConditionStatus, Verdict,
};
use sqc::cones::{
    abs_lorentz, intersection_trivial, project_lorentz, w_dual_contains, ConeSpec, EllipticCone,
    IntersectionStatus, Membership, WConeSpec,
};
use sqc::copositivity::{lorentz_copositive, sampled_copositive, z_property_sampled, CopositivityStatus, ZPropertyResult};
use sqc::linalg::{householder, spectral_decompose, SymmetricMatrix, DEFAULT_GAP_TOL};
use sqc::oracle::{geodesic_point, geodesic_quasiconvexity_test, sublevel_convexity_test, LevelSelection, OracleOptions};

fn rows(a: &SymmetricMatrix) -> Vec<Vec<f64>> {
    a.to_rows()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn householder_spectrum_and_isometry() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h = householder(&[1.0, 1.0]).unwrap();
    let ev = common::jacobi_eigenvalues(&rows(&h));
    assert!(close(&ev, &[-1.0, 1.0], 1e-12));
    assert!(close(&h.apply(&[s, s]), &[-s, -s], 1e-12));
    assert!(close(&h.apply(&[s, -s]), &[s, -s], 1e-12));
    let dec = spectral_decompose(&h, DEFAULT_GAP_TOL).unwrap();
    let v1 = dec.eigenvector(0);
    assert!((common::dot(v1, &[s, s]).abs() - 1.0).abs() < 1e-12);

    let h = householder(&[1.0, 2.0, 2.0]).unwrap();
    let mut rng = common::rng(1);
    for _ in 0..100 {
        let x = common::gaussian(&mut rng, 3);
        assert!((common::norm(&h.apply(&x)) - common::norm(&x)).abs() < 1e-10);
    }
}

#[test]
fn elliptic_membership_by_direct_evaluation() {
    let e = ConeSpec::Elliptic(EllipticCone::axis_aligned(3, &[4.0, 4.0]).unwrap());
    let x = [1.0, 0.4, 0.0];
    assert!(1.0 >= (4.0f64 * 0.16).sqrt());
    assert!(e.contains(&x, 1e-12).unwrap());
    // min of ⟨e¹, x⟩ over unit generators is 1/√(1 + 1/4)
    let mut rng = common::rng(2);
    let mut m = f64::INFINITY;
    for _ in 0..20000 {
        let phi = rand::Rng::random::<f64>(&mut rng) * std::f64::consts::TAU;
        let g = [1.0, 0.5 * phi.cos(), 0.5 * phi.sin()];
        m = m.min(g[0] / common::norm(&g));
    }
    assert!((m - 1.0 / 1.25f64.sqrt()).abs() < 1e-6);
    assert_eq!(e.dual_contains(&[1.0, 0.0, 0.0], 1e-9).unwrap(), Membership::Yes);
}

#[test]
fn lorentz_projection_matches_descent() {
    for (x, plus) in [
        ([0.0, 1.0, 0.0], [0.5, 0.5, 0.0]),
        ([1.0, 2.0, 0.0], [1.5, 1.5, 0.0]),
    ] {
        let p = project_lorentz(&x);
        let reference = common::lorentz_projection_by_descent(&x);
        assert!(close(&p.plus, &reference, 1e-6), "{:?} vs {reference:?}", p.plus);
        assert!(close(&p.plus, &plus, 1e-12));
    }
    let p = project_lorentz(&[0.0, 1.0, 0.0]);
    assert!(close(&p.minus, &[0.5, -0.5, 0.0], 1e-12));
    // |x| equals plus + minus
    for x in [[1.0, 2.0, 0.0], [0.0, 0.0, 1.0]] {
        let p = project_lorentz(&x);
        let sum: Vec<f64> = p.plus.iter().zip(&p.minus).map(|(a, b)| a + b).collect();
        assert!(close(&abs_lorentz(&x).unwrap(), &sum, 1e-12));
    }
    assert!(close(&abs_lorentz(&[1.0, 2.0, 0.0]).unwrap(), &[2.0, 1.0, 0.0], 1e-12));
    assert!(close(&abs_lorentz(&[0.0, 0.0, 1.0]).unwrap(), &[1.0, 0.0, 0.0], 1e-12));
}

#[test]
fn w_dual_membership_of_the_bottom_eigenvector() {
    let dec = spectral_decompose(&SymmetricMatrix::diag(&[0.0, 1.0, 3.0]).unwrap(), DEFAULT_GAP_TOL).unwrap();
    let w = WConeSpec::new(dec, ConeSpec::lorentz(3)).unwrap();
    let yes = w_dual_contains(&w, &[1.0, 0.0, 0.0], 4000, 1e-9, 3).unwrap();
    assert_eq!(yes.status, Membership::Yes);
    let no = w_dual_contains(&w, &[-1.0, 0.0, 0.0], 4000, 1e-9, 3).unwrap();
    assert_eq!(no.status, Membership::No);
    let x = no.witness.unwrap();
    assert!(common::in_lorentz(&x, 1e-9) && x[0] > 0.0);
}

#[test]
fn orthant_and_opposed_elliptic_cone_meet_only_at_zero() {
    let basis = vec![vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
    let l = ConeSpec::Elliptic(EllipticCone::new(vec![-1.0, 0.0, 0.0], basis, vec![1.0, 1.0]).unwrap());
    let r = intersection_trivial(&ConeSpec::orthant(3), &l, 64, 1e-9, 4).unwrap();
    assert_eq!(r.status, IntersectionStatus::Trivial);
    assert!(r.best_joint_margin < 0.0);
}

#[test]
fn lorentz_copositivity_witnesses() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let a = SymmetricMatrix::diag(&[1.0, -1.5, -1.5]).unwrap();
    let c = lorentz_copositive(&a, 1e-9).unwrap();
    assert_eq!(c.status, CopositivityStatus::NotCopositive);
    let w = c.witness.unwrap();
    assert!(common::in_lorentz(&w, 1e-9));
    assert!((a.quad(&w) / common::dot(&w, &w) + 0.25).abs() < 1e-6);
    let (m, _) = common::lorentz_cap_min(&rows(&a), 40000, 5);
    assert!((m + 0.25).abs() < 1e-3);
    assert!((a.quad(&[s, s, 0.0]) + 0.25).abs() < 1e-12);

    let a = SymmetricMatrix::diag(&[0.0, -1.0, -1.0]).unwrap();
    let c = sampled_copositive(&a, &ConeSpec::lorentz(3), 2000, 6, 1e-9).unwrap();
    assert_eq!(c.status, CopositivityStatus::NotCopositive);
    let w = c.witness.unwrap();
    assert!((a.quad(&w) / common::dot(&w, &w) + 0.5).abs() < 1e-6);
    assert_eq!(lorentz_copositive(&a, 1e-9).unwrap().status, CopositivityStatus::NotCopositive);
}

#[test]
fn z_property_of_the_identity() {
    let r = z_property_sampled(&SymmetricMatrix::identity(3), &ConeSpec::lorentz(3), 500, 7, 1e-9).unwrap();
    assert!(matches!(r, ZPropertyResult::Consistent));
}

#[test]
fn multiplicity_two_is_refuted_and_an_oracle_agrees() {
    let a = SymmetricMatrix::diag(&[0.0, 0.0, 1.0]).unwrap();
    let opts = AnalysisOptions::default();
    let nec = necessary_conditions(&a, &ConeSpec::lorentz(3), &opts).unwrap();
    assert_eq!(nec[0].condition_id, ConditionId::NecMultOne);
    assert_eq!(nec[0].status, ConditionStatus::Fails);
    assert_eq!(analyze(&a, &ConeSpec::lorentz(3), &opts).verdict, Verdict::CertifiedNot);
    // direct search for a geodesic bump with the test-side slerp
    let r = rows(&a);
    let mut rng = common::rng(8);
    let found = (0..20000).any(|_| {
        let x = common::lorentz_cap_point(&mut rng, 3);
        let y = common::lorentz_cap_point(&mut rng, 3);
        common::geodesic_excess(&r, &x, &y, 64) > 1e-8
    });
    assert!(found);
}

#[test]
fn two_eigenvalue_and_best_examples() {
    let opts = AnalysisOptions::default();
    let h = householder(&[1.0, 1.0, 1.0]).unwrap();
    assert_eq!(sufficient_two_eig(&h, &ConeSpec::orthant(3), &opts).unwrap().status, ConditionStatus::Holds);
    let h = householder(&[2.0, 1.0, 1.0]).unwrap();
    assert_eq!(sufficient_best_iii(&h, &ConeSpec::orthant(3), &opts).unwrap().status, ConditionStatus::Holds);
    let a = SymmetricMatrix::diag(&[1.0, 0.0, 1.0]).unwrap();
    assert_ne!(sufficient_best_iii(&a, &ConeSpec::lorentz(3), &opts).unwrap().status, ConditionStatus::Holds);
}

#[test]
fn countergg_orthant_pattern_holds() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for n in [3, 4, 6] {
        let mut v1 = vec![0.0; n];
        let mut vn = vec![0.0; n];
        v1[0] = s;
        v1[n - 1] = s;
        vn[0] = s;
        vn[n - 1] = -s;
        let mut vecs = vec![v1];
        vecs.extend((1..n - 1).map(|i| sqc::vector::unit(n, i)));
        vecs.push(vn);
        let mut lam = vec![1.6; n];
        lam[0] = 0.0;
        lam[n - 1] = 2.0;
        let a = SymmetricMatrix::from_spectrum(&lam, &vecs).unwrap();
        let ev = common::jacobi_eigenvalues(&rows(&a));
        assert!(close(&ev, &lam, 1e-12));
        let o = sufficient_countergg(&a, &ConeSpec::orthant(n), &AnalysisOptions::default()).unwrap();
        assert_eq!(o.status, ConditionStatus::Holds, "n={n}");
    }
}

#[test]
fn alpha_and_eta_against_dense_sampling() {
    let opts = AnalysisOptions::default();
    for n in [3, 5, 8] {
        let mut d: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * i as f64).collect();
        d[0] = 0.0;
        let dec = spectral_decompose(&SymmetricMatrix::diag(&d).unwrap(), DEFAULT_GAP_TOL).unwrap();
        let ae = compute_alpha_eta(&dec, &ConeSpec::lorentz(n), &opts).unwrap();
        assert!((ae.alpha - 0.5).abs() < 1e-6);
        if n == 3 {
            // η = max y₃²/y₁² over the rim, attained at (1, 0, 1)/√2
            let mut rng = common::rng(9);
            let eta = (0..50000)
                .map(|_| {
                    let y = common::lorentz_rim_point(&mut rng, 3);
                    y[2] * y[2] / (y[0] * y[0])
                })
                .fold(0.0, f64::max);
            assert!((ae.eta - 1.0).abs() < 1e-6 && (eta - 1.0).abs() < 1e-4);
        }
    }
    // orthant, v¹ = (1,1,1)/√3: α = min ⟨v¹,y⟩² over the unit orthant patch
    let h = householder(&[1.0, 1.0, 1.0]).unwrap();
    let ae = compute_alpha_eta(&spectral_decompose(&h, DEFAULT_GAP_TOL).unwrap(), &ConeSpec::orthant(3), &opts).unwrap();
    let mut grid_min = f64::INFINITY;
    let m = 200;
    for i in 0..=m {
        for j in 0..=m - i {
            let y = [i as f64, j as f64, (m - i - j) as f64];
            let r = common::norm(&y);
            let d = (y[0] + y[1] + y[2]) / (r * 3f64.sqrt());
            grid_min = grid_min.min(d * d);
        }
    }
    assert!((ae.alpha - 1.0 / 3.0).abs() < 1e-12 && (grid_min - 1.0 / 3.0).abs() < 1e-12);
    assert!(close(&ae.alpha_argmin.iter().map(|v| v.abs()).collect::<Vec<_>>(), &[1.0, 0.0, 0.0], 1e-12)
        || ae.alpha_argmin.iter().filter(|v| v.abs() > 0.5).count() == 1);

    let a = SymmetricMatrix::diag(&[0.0, 1.0, 1.4]).unwrap();
    let o = sufficient_alpha_eta(&a, &ConeSpec::lorentz(3), &opts).unwrap();
    // λₙ = 1.4 < λ₂ + (λ₂ − λ₁)/2 = 1.5
    assert_eq!(o.status, ConditionStatus::Holds);
    let a = SymmetricMatrix::diag(&[0.0, 1.0, 1.2, 1.4]).unwrap();
    assert_eq!(sufficient_alpha_eta(&a, &ConeSpec::lorentz(4), &opts).unwrap().status, ConditionStatus::Holds);
}

#[test]
fn selfdual_characterization_cases() {
    let opts = AnalysisOptions::default();
    let a = SymmetricMatrix::diag(&[0.0, 1.0, 1.0]).unwrap();
    assert_eq!(analyze(&a, &ConeSpec::lorentz(3), &opts).verdict, Verdict::CertifiedQuasiconvex);
    let a = SymmetricMatrix::diag(&[0.0, 1.0, 5.0]).unwrap();
    let r = analyze(&a, &ConeSpec::lorentz(3), &opts);
    assert_eq!(r.verdict, Verdict::CertifiedNot);
    // λ₂I − A = diag(1, 0, −4) has a Lorentz witness
    let b = SymmetricMatrix::diag(&[1.0, 0.0, -4.0]).unwrap();
    let c = lorentz_copositive(&b, 1e-9).unwrap();
    let w = c.witness.unwrap();
    assert!(common::in_lorentz(&w, 1e-9) && b.quad(&w) < 0.0);
}

#[test]
fn lambda2_split_on_perturbed_diagonal() {
    let opts = AnalysisOptions::default();
    let mut rng = common::rng(10);
    for _ in 0..5 {
        let mut d = common::diag(&[0.0, 1.0, 5.0]);
        // λ₂ = 1 stays inside the cap range (0, 2.5) under a small symmetric bump
        for i in 0..3 {
            for j in i..3 {
                let e = 0.01 * common::gaussian(&mut rng, 1)[0];
                d[i][j] += e;
                if i != j {
                    d[j][i] += e;
                }
            }
        }
        let a = SymmetricMatrix::from_rows(&d).unwrap();
        let r = analyze(&a, &ConeSpec::lorentz(3), &opts);
        assert_eq!(r.verdict, Verdict::CertifiedNot);
        assert_eq!(r.decided_by.as_deref(), Some("NEC_LAMBDA2_SPLIT"));
    }
}

#[test]
fn geodesic_point_angle() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x = [1.0, 0.0, 0.0];
    let y = [s, s, 0.0];
    let g = geodesic_point(&x, &y, 0.5).unwrap();
    let angle = common::dot(&x, &g).acos();
    assert!((angle - std::f64::consts::PI / 8.0).abs() < 1e-12);
    assert!(close(&g, &common::slerp(&x, &y, 0.5), 1e-12));
}

#[test]
fn oracle_reference_cases() {
    let k = ConeSpec::lorentz(3);
    let opts = OracleOptions::default();
    let bad = SymmetricMatrix::two_level(&[0.0, 1.0, 0.0], 0.0, 1.0).unwrap();
    let out = geodesic_quasiconvexity_test(&bad, &k, &opts).unwrap();
    let cx = out.counterexample.unwrap();
    let (x, y) = cx.endpoints();
    assert!(common::geodesic_excess(&rows(&bad), x, y, 512) > 1e-8);

    let good = SymmetricMatrix::two_level(&[1.0, 0.0, 0.0], 0.0, 1.0).unwrap();
    let big = OracleOptions {
        samples: 100_000,
        ..OracleOptions::default()
    };
    assert!(!geodesic_quasiconvexity_test(&good, &k, &big).unwrap().is_violated());

    let a = SymmetricMatrix::diag(&[0.0, 0.05, 1.0]).unwrap();
    let out = sublevel_convexity_test(&a, &k, &LevelSelection::Sweep(16), &opts).unwrap();
    let cx = out.counterexample.expect("non-convex sublevel set");
    assert!(cx.verify(&a, &k, opts.tol).unwrap());
}

//! Dense symmetric linear algebra: the matrix type, a cyclic Jacobi
//! eigen-solver with deterministic output, PSD testing and the Householder
//! reflector.

use crate::error::{Error, Result};
use crate::vector;

const MAX_JACOBI_SWEEPS: usize = 100;

/// Default relative factor for grouping eigenvalues into clusters.
pub const DEFAULT_GAP_TOL: f64 = 1e-8;

/// Dense `n × n` real symmetric matrix stored row-major.
///
/// Construction always symmetrizes the input as `(A + Aᵀ)/2`, so
/// `get(i, j) == get(j, i)` holds bit-for-bit.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn from_row_major(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "matrix dimension must be at least 2, got {n}"
            )));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        for (k, v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: k / n,
                    col: k % n,
                });
            }
        }
        let mut data = entries;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (data[i * n + j] + data[j * n + i]);
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::from_row_major(n, entries)
    }

    /// Largest `|a_ij - a_ji|` of a square row list, before symmetrization.
    pub fn max_asymmetry(rows: &[Vec<f64>]) -> f64 {
        let n = rows.len();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                if let (Some(a), Some(b)) = (rows[i].get(j), rows[j].get(i)) {
                    worst = worst.max((a - b).abs());
                }
            }
        }
        worst
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 2, "matrix dimension must be at least 2");
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Result<Self> {
        let n = values.len();
        let mut entries = vec![0.0; n * n];
        for (i, v) in values.iter().enumerate() {
            entries[i * n + i] = *v;
        }
        Self::from_row_major(n, entries)
    }

    /// `J = diag(1, -1, ..., -1)`, the Gram matrix of the Lorentz cone.
    pub fn lorentz_j(n: usize) -> Self {
        let mut m = Self::zeros(n);
        m.data[0] = 1.0;
        for i in 1..n {
            m.data[i * n + i] = -1.0;
        }
        m
    }

    /// `Σ λ_i v_i v_iᵀ` for the given eigenpairs.
    pub fn from_spectrum(eigenvalues: &[f64], eigenvectors: &[Vec<f64>]) -> Result<Self> {
        let n = eigenvalues.len();
        if eigenvectors.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: eigenvectors.len(),
            });
        }
        let mut entries = vec![0.0; n * n];
        for (lambda, v) in eigenvalues.iter().zip(eigenvectors) {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            for i in 0..n {
                for j in 0..n {
                    entries[i * n + j] += lambda * v[i] * v[j];
                }
            }
        }
        Self::from_row_major(n, entries)
    }

    /// `μ I - (μ - λ) v vᵀ / ‖v‖²`: eigenvalue `λ` along `v`, `μ` elsewhere.
    pub fn two_level(v: &[f64], lambda: f64, mu: f64) -> Result<Self> {
        let u = vector::normalized(v)
            .ok_or_else(|| Error::InvalidInput("zero direction vector".into()))?;
        let n = u.len();
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let id = if i == j { mu } else { 0.0 };
                entries[i * n + j] = id - (mu - lambda) * u[i] * u[j];
            }
        }
        Self::from_row_major(n, entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        (0..self.n).map(|i| vector::dot(self.row(i), x)).collect()
    }

    /// `⟨Ax, x⟩`
    pub fn quad(&self, x: &[f64]) -> f64 {
        self.bilinear(x, x)
    }

    /// `⟨Ax, y⟩`
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        (0..self.n).map(|i| y[i] * vector::dot(self.row(i), x)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| alpha * v).collect(),
        }
    }

    /// `A + c I`
    pub fn shifted(&self, c: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.data[i * self.n + i] += c;
        }
        m
    }

    /// `A + alpha B`
    pub fn add_scaled(&self, alpha: f64, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + alpha * b)
                .collect(),
        }
    }

    /// `Bᵀ A B` where `B` is given by its columns.
    pub fn congruence(&self, columns: &[Vec<f64>]) -> Self {
        let n = self.n;
        let a_cols: Vec<Vec<f64>> = columns.iter().map(|c| self.apply(c)).collect();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = vector::dot(&columns[i], &a_cols[j]);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self { n, data }
    }

    /// `R A Rᵀ` for a square `R` given by rows.
    pub fn conjugate_by(&self, rows: &[Vec<f64>]) -> Self {
        // R A Rᵀ = (Rᵀ)ᵀ A (Rᵀ); the columns of Rᵀ are the rows of R.
        self.congruence(rows)
    }
}

/// Eigenvalues in ascending order with an orthonormal eigenvector system.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Vec<f64>>,
    multiplicity_of_smallest: usize,
    gap_tolerance: f64,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[Vec<f64>] {
        &self.eigenvectors
    }

    /// Eigenvalue `i` (0-based, ascending).
    pub fn eigenvalue(&self, i: usize) -> f64 {
        self.eigenvalues[i]
    }

    pub fn eigenvector(&self, i: usize) -> &[f64] {
        &self.eigenvectors[i]
    }

    pub fn multiplicity_of_smallest(&self) -> usize {
        self.multiplicity_of_smallest
    }

    /// Absolute tolerance used to group eigenvalues.
    pub fn gap_tolerance(&self) -> f64 {
        self.gap_tolerance
    }

    /// Sizes of the groups of consecutive eigenvalues whose neighbours lie
    /// within the gap tolerance.
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![1usize];
        for w in self.eigenvalues.windows(2) {
            if w[1] - w[0] <= self.gap_tolerance {
                *sizes.last_mut().unwrap() += 1;
            } else {
                sizes.push(1);
            }
        }
        sizes
    }

    /// Only one eigenvalue, so `q_A` is constant on the sphere.
    pub fn is_scalar(&self) -> bool {
        self.cluster_sizes().len() == 1
    }

    /// `λ₁ < λ₂ = ... = λₙ`.
    pub fn is_two_level(&self) -> bool {
        let c = self.cluster_sizes();
        c.len() == 2 && c[0] == 1
    }

    /// `λ₁ < λ₂ = ... = λₙ₋₁ < λₙ` (for n = 3: three distinct values).
    pub fn is_three_level(&self) -> bool {
        let c = self.cluster_sizes();
        c.len() == 3 && c[0] == 1 && c[2] == 1
    }

    pub fn reconstruct(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_spectrum(&self.eigenvalues, &self.eigenvectors)
            .expect("decomposition has consistent dimensions")
    }
}

/// Cyclic Jacobi decomposition of `a`.
///
/// `gap_tol` is a relative factor: eigenvalues are grouped when they differ by
/// at most `gap_tol · (1 + max|λ|)`. Eigenvector signs are normalized so the
/// first largest-magnitude component is positive.
pub fn spectral_decompose(a: &SymmetricMatrix, gap_tol: f64) -> Result<SpectralDecomposition> {
    if gap_tol.is_nan() || gap_tol <= 0.0 {
        return Err(Error::InvalidInput("gap tolerance must be positive".into()));
    }
    let n = a.dim();
    let mut m: Vec<f64> = a.data.clone();
    let mut v = SymmetricMatrix::identity(n).data;
    let frob = a.frobenius_norm();
    let threshold = (n as f64) * f64::EPSILON * frob;

    let off_norm = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += m[i * n + j] * m[i * n + j];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut converged = frob == 0.0;
    for _ in 0..MAX_JACOBI_SWEEPS {
        if converged || off_norm(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_norm(&m) > threshold {
        return Err(Error::SolverFailure {
            sweeps: MAX_JACOBI_SWEEPS,
        });
    }

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|j| {
            let mut col: Vec<f64> = (0..n).map(|i| v[i * n + j]).collect();
            normalize_sign(&mut col);
            (m[j * n + j], col)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));

    let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let eigenvectors: Vec<Vec<f64>> = pairs.into_iter().map(|p| p.1).collect();
    let scale = 1.0 + eigenvalues[0].abs().max(eigenvalues[n - 1].abs());
    let gap_tolerance = gap_tol * scale;
    let multiplicity_of_smallest = eigenvalues
        .iter()
        .take_while(|l| **l - eigenvalues[0] <= gap_tolerance)
        .count();

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        multiplicity_of_smallest,
        gap_tolerance,
    })
}

fn normalize_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    // first component within rounding of the maximum magnitude decides
    if let Some(lead) = v.iter().position(|x| x.abs() >= max * (1.0 - 1e-12)) {
        if v[lead] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Outcome of a PSD test.
#[derive(Clone, Debug, PartialEq)]
pub struct PsdCheck {
    pub psd: bool,
    pub min_eigenvalue: f64,
    /// Unit vector `u` with `⟨Au, u⟩ < -tol` when the test fails.
    pub witness: Option<Vec<f64>>,
}

pub fn is_psd(a: &SymmetricMatrix, tol: f64) -> Result<PsdCheck> {
    let dec = spectral_decompose(a, DEFAULT_GAP_TOL)?;
    let min_eigenvalue = dec.eigenvalue(0);
    if min_eigenvalue >= -tol {
        return Ok(PsdCheck {
            psd: true,
            min_eigenvalue,
            witness: None,
        });
    }
    Ok(PsdCheck {
        psd: false,
        min_eigenvalue,
        witness: Some(dec.eigenvector(0).to_vec()),
    })
}

/// Smallest eigenvalue only.
pub fn min_eigenvalue(a: &SymmetricMatrix) -> Result<f64> {
    Ok(spectral_decompose(a, DEFAULT_GAP_TOL)?.eigenvalue(0))
}

/// Householder reflector `I - 2 v vᵀ / ‖v‖²`.
pub fn householder(v: &[f64]) -> Result<SymmetricMatrix> {
    if v.len() < 2 {
        return Err(Error::InvalidInput(
            "householder vector needs dimension at least 2".into(),
        ));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("householder vector is not finite".into()));
    }
    let nn = vector::dot(v, v);
    if nn == 0.0 {
        return Err(Error::InvalidInput("householder vector is zero".into()));
    }
    let n = v.len();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { 1.0 } else { 0.0 };
            entries[i * n + j] = id - 2.0 * v[i] * v[j] / nn;
        }
    }
    SymmetricMatrix::from_row_major(n, entries)
}

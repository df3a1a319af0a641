//! Dense complex linear algebra for matrices up to 4×4.
//!
//! This is the numeric kernel behind every verification oracle in the crate:
//! Hermitian diagonalization (cyclic Jacobi with complex rotations), PSD
//! matrix square roots, trace norms, Haar-random unitaries, tensor products
//! and partial traces. The dimension cap keeps everything auditable; there is
//! deliberately no general LAPACK-class scope here.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Hard cap on matrix dimension.
pub const MAX_DIM: usize = 4;

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense row-major complex matrix with dimensions at most 4×4.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: [Complex64; MAX_DIM * MAX_DIM],
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&rows) && (1..=MAX_DIM).contains(&cols));
        ComplexMatrix {
            rows,
            cols,
            data: [C_ZERO; MAX_DIM * MAX_DIM],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C_ONE;
        }
        m
    }

    /// Build an n×n matrix from a row-major slice of entries.
    pub fn from_rows(n: usize, entries: &[Complex64]) -> Self {
        assert_eq!(entries.len(), n * n);
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = entries[i * n + j];
            }
        }
        m
    }

    /// Build an n×n real diagonal matrix.
    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(*d, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn conjugate(&self) -> ComplexMatrix {
        let mut out = self.clone();
        for z in out.data.iter_mut() {
            *z = z.conj();
        }
        out
    }

    pub fn scale(&self, factor: f64) -> ComplexMatrix {
        let mut out = self.clone();
        for z in out.data.iter_mut() {
            *z *= factor;
        }
        out
    }

    pub fn scale_complex(&self, factor: Complex64) -> ComplexMatrix {
        let mut out = self.clone();
        for z in out.data.iter_mut() {
            *z *= factor;
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (z, w) in out.data.iter_mut().zip(other.data.iter()) {
            *z += w;
        }
        out
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (z, w) in out.data.iter_mut().zip(other.data.iter()) {
            *z -= w;
        }
        out
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C_ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry magnitude.
    pub fn norm_max(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                m = m.max(self[(i, j)].norm());
            }
        }
        m
    }

    /// Largest deviation from the conjugate transpose.
    pub fn max_asymmetry(&self) -> f64 {
        assert!(self.is_square());
        let mut m = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                m = m.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        m
    }

    /// Hermitian within `tol` scaled by max(1, ‖M‖_max).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.max_asymmetry() <= tol * self.norm_max().max(1.0)
    }

    /// Column `j` as a vector of length `rows`.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * MAX_DIM + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * MAX_DIM + j]
    }
}

/// Kronecker product. The result must still fit in the 4×4 cap.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    assert!(ra * rb <= MAX_DIM && ca * cb <= MAX_DIM);
    let mut out = ComplexMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Which qubit of a two-qubit system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubit {
    First,
    Second,
}

/// Partial trace of a 4×4 two-qubit operator over one qubit.
pub fn partial_trace(m: &ComplexMatrix, traced_out: Qubit) -> ComplexMatrix {
    assert_eq!((m.rows(), m.cols()), (4, 4));
    let mut out = ComplexMatrix::zeros(2, 2);
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = C_ZERO;
            for k in 0..2 {
                let (i, j) = match traced_out {
                    // trace over the first qubit, keep the second
                    Qubit::First => (k * 2 + a, k * 2 + b),
                    // trace over the second qubit, keep the first
                    Qubit::Second => (a * 2 + k, b * 2 + k),
                };
                acc += m[(i, j)];
            }
            out[(a, b)] = acc;
        }
    }
    out
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(
        2,
        &[C_ZERO, C_ONE, C_ONE, C_ZERO],
    )
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(
        2,
        &[
            C_ZERO,
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            C_ZERO,
        ],
    )
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(
        2,
        &[C_ONE, C_ZERO, C_ZERO, Complex64::new(-1.0, 0.0)],
    )
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are ascending; `eigenvectors` holds the matching orthonormal
/// eigenvectors as columns. Exactly degenerate eigenvalues keep the order in
/// which the Jacobi iteration produced them (stable index tie-break), so
/// repeated runs give identical output.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, idx: usize) -> Vec<Complex64> {
        self.eigenvectors.column(idx)
    }

    /// Rebuild Σᵢ λᵢ |vᵢ⟩⟨vᵢ|.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for (idx, lambda) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvector(idx);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += lambda * v[i] * v[j].conj();
                }
            }
        }
        out
    }
}

/// Diagonalize a Hermitian matrix by cyclic Jacobi with complex rotations.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let asym = m.max_asymmetry();
    if asym > 1e-12 * m.norm_max().max(1.0) {
        return Err(Error::NotHermitian {
            max_asymmetry: asym,
        });
    }

    let n = m.rows();
    // Work on the Hermitian average so stray asymmetry within tolerance
    // cannot leak into the iteration.
    let mut a = m.add(&m.adjoint()).scale(0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = a.norm_max();

    if scale > 0.0 {
        let tol = f64::EPSILON * scale;
        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(a[(p, q)].norm());
                }
            }
            if off <= tol {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    let abs_apq = apq.norm();
                    if abs_apq <= tol * 1e-2 {
                        continue;
                    }
                    let alpha = a[(p, p)].re;
                    let beta = a[(q, q)].re;
                    // phase that makes the pivot real, then a real rotation
                    let u = apq / abs_apq;
                    let tau = (beta - alpha) / (2.0 * abs_apq);
                    let t = if tau == 0.0 {
                        1.0
                    } else {
                        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let u_conj = u.conj();

                    // rows/columns outside the pivot block
                    for k in 0..n {
                        if k == p || k == q {
                            continue;
                        }
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        let new_kp = akp * c - akq * u_conj * s;
                        let new_kq = akp * s + akq * u_conj * c;
                        a[(k, p)] = new_kp;
                        a[(p, k)] = new_kp.conj();
                        a[(k, q)] = new_kq;
                        a[(q, k)] = new_kq.conj();
                    }
                    // pivot block
                    let app = c * c * alpha - 2.0 * s * c * abs_apq + s * s * beta;
                    let aqq = s * s * alpha + 2.0 * s * c * abs_apq + c * c * beta;
                    a[(p, p)] = Complex64::new(app, 0.0);
                    a[(q, q)] = Complex64::new(aqq, 0.0);
                    a[(p, q)] = C_ZERO;
                    a[(q, p)] = C_ZERO;

                    // accumulate eigenvectors: V <- V R
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c - vkq * u_conj * s;
                        v[(k, q)] = vkp * s + vkq * u_conj * c;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .total_cmp(&a[(j, j)].re)
            .then(i.cmp(&j))
    });

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvalues.push(a[(src, src)].re);
        // fix the free phase: largest component made real and positive
        let col = v.column(src);
        let mut kmax = 0;
        for (k, z) in col.iter().enumerate() {
            if z.norm() > col[kmax].norm() {
                kmax = k;
            }
        }
        let phase = if col[kmax].norm() > 0.0 {
            col[kmax].conj() / col[kmax].norm()
        } else {
            C_ONE
        };
        for (k, z) in col.iter().enumerate() {
            eigenvectors[(k, dst)] = z * phase;
        }
    }

    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Schatten 1-norm: sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "trace norm needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let gram = m.adjoint().mul(m);
    let spec = eig_hermitian(&gram)?;
    Ok(spec
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .sum())
}

/// PSD square root via eigendecomposition.
///
/// Eigenvalues in [-1e-10, 0) are treated as rounding debris and clamped to
/// zero; anything more negative is rejected.
pub fn matrix_sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spec = eig_hermitian(m)?;
    let min_eig = spec.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_eig < -1e-10 {
        return Err(Error::NotPositiveSemiDefinite {
            min_eigenvalue: min_eig,
        });
    }
    let n = spec.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for (idx, &lambda) in spec.eigenvalues.iter().enumerate() {
        let root = lambda.max(0.0).sqrt();
        if root == 0.0 {
            continue;
        }
        let vcol = spec.eigenvector(idx);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += root * vcol[i] * vcol[j].conj();
            }
        }
    }
    Ok(out)
}

/// Haar-random unitary drawn from an explicit RNG stream.
///
/// QR of a complex Ginibre sample via modified Gram-Schmidt; Gram-Schmidt
/// yields the factor with positive real diagonal R, whose Q is exactly
/// Haar-distributed.
pub fn haar_random_unitary_from<R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix {
    assert!(dim == 2 || dim == 4, "supported dimensions are 2 and 4");
    loop {
        let mut g = ComplexMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                g[(i, j)] = Complex64::new(re, im);
            }
        }
        if let Some(q) = gram_schmidt(&g) {
            return q;
        }
        // rank-deficient draw (probability zero up to rounding): resample
    }
}

/// Haar-random unitary of dimension 2 or 4 from a fixed seed (deterministic).
pub fn haar_random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    haar_random_unitary_from(dim, &mut rng)
}

fn gram_schmidt(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = g.rows();
    let mut q = g.clone();
    for j in 0..n {
        // two orthogonalization passes for numerical safety
        for _ in 0..2 {
            for k in 0..j {
                let mut proj = C_ZERO;
                for i in 0..n {
                    proj += q[(i, k)].conj() * q[(i, j)];
                }
                for i in 0..n {
                    let qik = q[(i, k)];
                    q[(i, j)] -= proj * qik;
                }
            }
        }
        let norm: f64 = (0..n).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        for i in 0..n {
            q[(i, j)] /= norm;
        }
    }
    Some(q)
}

//! Thermal equilibrium state of the dimer: partition function, populations,
//! and the X-shaped Gibbs density matrix.
//!
//! All Boltzmann factors are taken against the singlet-shifted levels
//! {0, J−E₀, J, J+E₀}, so the partition function reads
//! Z = 1 + e^{−βJ}(1 + 2·cosh βE₀). Populations are evaluated in log space
//! (softmax against the smallest level), which keeps the T → 0 limit exact:
//! the state degrades gracefully to the pure ground state instead of
//! overflowing.

use num_complex::Complex64;

use crate::dimer::{energy_levels, DimerParams, StateLabel};
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, ComplexMatrix};
use crate::units::K_B;

/// A validated 4×4 density matrix in the product basis: Hermitian,
/// unit trace, positive semi-definite (within tolerance).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4(ComplexMatrix);

impl DensityMatrix4 {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if (m.rows(), m.cols()) != (4, 4) {
            return Err(Error::NotDensityMatrix(format!(
                "expected 4x4, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if !m.is_hermitian(1e-14) {
            return Err(Error::NotDensityMatrix(format!(
                "not Hermitian (max asymmetry {:e})",
                m.max_asymmetry()
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::NotDensityMatrix(format!(
                "trace must be 1, got {} + {}i",
                tr.re, tr.im
            )));
        }
        let spec = eig_hermitian(&m)?;
        let min_eig = spec.eigenvalues[0];
        if min_eig < -1e-12 {
            return Err(Error::NotDensityMatrix(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(DensityMatrix4(m))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    /// Projector |ψ⟩⟨ψ| onto a normalized pure state.
    pub fn from_pure(state: &[Complex64; 4]) -> Result<Self> {
        let norm_sqr: f64 = state.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-12 {
            return Err(Error::NotDensityMatrix(format!(
                "pure state not normalized: |ψ|² = {norm_sqr}"
            )));
        }
        let mut m = ComplexMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = state[i] * state[j].conj();
            }
        }
        DensityMatrix4::new(m)
    }

    /// Projector onto a coupled-basis state.
    pub fn basis_projector(label: StateLabel) -> Self {
        DensityMatrix4::from_pure(&label.basis_vector())
            .expect("coupled basis vectors are normalized")
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix4::new(ComplexMatrix::identity(4).scale(0.25))
            .expect("I/4 is a density matrix")
    }

    /// Purity Tr ρ².
    pub fn purity(&self) -> f64 {
        self.0.mul(&self.0).trace().re
    }

    /// `⟨O⟩ = Re Tr[ρO]`.
    pub fn expectation(&self, op: &ComplexMatrix) -> f64 {
        self.0.mul(op).trace().re
    }
}

impl serde::Serialize for DensityMatrix4 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        // 4×4 nested arrays of [re, im] pairs, row-major product basis
        let rows: Vec<Vec<[f64; 2]>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        let z = self.0[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        serde::Serialize::serialize(&rows, serializer)
    }
}

/// The thermal state in compact X form: four diagonal entries in the product
/// basis and the single real off-diagonal element between |↑↓⟩ and |↓↑⟩.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct XState {
    /// Diagonal entries (|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩).
    pub diag: [f64; 4],
    /// The ⟨↑↓|ρ|↓↑⟩ element; negative when the singlet dominates.
    pub inner_offdiag: f64,
}

impl XState {
    pub fn new(diag: [f64; 4], inner_offdiag: f64) -> Result<Self> {
        for d in diag {
            if !d.is_finite() || d < -1e-14 {
                return Err(Error::NotDensityMatrix(format!(
                    "X-state diagonal entry out of range: {d}"
                )));
            }
        }
        let sum: f64 = diag.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::NotDensityMatrix(format!(
                "X-state diagonal must sum to 1, got {sum}"
            )));
        }
        // positivity of the central block
        let bound = (diag[1].max(0.0) * diag[2].max(0.0)).sqrt();
        if inner_offdiag.abs() > bound + 1e-12 {
            return Err(Error::NotDensityMatrix(format!(
                "X-state off-diagonal {inner_offdiag} exceeds positivity bound {bound}"
            )));
        }
        Ok(XState {
            diag,
            inner_offdiag,
        })
    }

    /// Embed into a full density matrix (zeros everywhere outside the X).
    pub fn to_density_matrix(&self) -> DensityMatrix4 {
        let mut m = ComplexMatrix::zeros(4, 4);
        for (i, d) in self.diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(*d, 0.0);
        }
        m[(1, 2)] = Complex64::new(self.inner_offdiag, 0.0);
        m[(2, 1)] = Complex64::new(self.inner_offdiag, 0.0);
        DensityMatrix4::new(m).expect("validated X state embeds into a density matrix")
    }
}

/// Thermal occupation of the four coupled-basis states.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Populations {
    pub singlet: f64,
    pub up_up: f64,
    pub triplet_zero: f64,
    pub down_down: f64,
}

impl Populations {
    pub fn get(&self, label: StateLabel) -> f64 {
        match label {
            StateLabel::Singlet => self.singlet,
            StateLabel::UpUp => self.up_up,
            StateLabel::TripletZero => self.triplet_zero,
            StateLabel::DownDown => self.down_down,
        }
    }

    /// In the fixed coupled order {singlet, up_up, triplet_zero, down_down}.
    pub fn as_array(&self) -> [f64; 4] {
        [self.singlet, self.up_up, self.triplet_zero, self.down_down]
    }
}

fn check_temperature(t_kelvin: f64) -> Result<f64> {
    if !t_kelvin.is_finite() || t_kelvin <= 0.0 {
        return Err(Error::invalid(format!(
            "temperature must be positive, got {t_kelvin} K"
        )));
    }
    Ok(1.0 / (K_B * t_kelvin))
}

/// Partition function over the singlet-shifted levels:
/// Z = 1 + e^{−βJ}(1 + 2·cosh βE₀).
pub fn partition_function(p: &DimerParams, t_kelvin: f64) -> Result<f64> {
    let beta = check_temperature(t_kelvin)?;
    let j = p.j();
    let e0 = p.e0();
    // written as a sum of pure exponentials so no 0·∞ form can appear
    Ok(1.0
        + (-beta * j).exp()
        + (-beta * (j - e0)).exp()
        + (-beta * (j + e0)).exp())
}

/// Gibbs populations of the coupled-basis levels, evaluated in log space.
pub fn populations(p: &DimerParams, t_kelvin: f64) -> Result<Populations> {
    let beta = check_temperature(t_kelvin)?;
    let levels = energy_levels(p);
    let min_e = levels
        .iter()
        .map(|(_, e)| *e)
        .fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = levels
        .iter()
        .map(|(_, e)| (-beta * (e - min_e)).exp())
        .collect();
    let total: f64 = weights.iter().sum();
    Ok(Populations {
        singlet: weights[0] / total,
        up_up: weights[1] / total,
        triplet_zero: weights[2] / total,
        down_down: weights[3] / total,
    })
}

/// Thermal Gibbs state as an X state in the product basis.
///
/// Assembled from the closed-form populations (fast and underflow-safe);
/// tests verify it against e^{−βH}/Z by diagonalization.
pub fn gibbs_state(p: &DimerParams, t_kelvin: f64) -> Result<XState> {
    let pops = populations(p, t_kelvin)?;
    let b = 0.5 * (pops.singlet + pops.triplet_zero);
    let z = 0.5 * (pops.triplet_zero - pops.singlet);
    XState::new([pops.up_up, b, b, pops.down_down], z)
}

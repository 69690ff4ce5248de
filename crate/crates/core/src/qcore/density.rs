//! Reduced density matrices: partial trace, fidelity, purity.

use num_complex::Complex64;

use crate::error::SimError;
use crate::qcore::{StateVector, SubsystemLabel};
use crate::tolerance::{TOL_IDENTITY, TOL_POSITIVITY};
use crate::Result;

/// A validated density matrix: Hermitian within 1e-10, unit trace within
/// 1e-10, eigenvalues no lower than −1e-9.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(SimError::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        let rho = Self { dim, entries };
        let herm = rho.hermiticity_deviation();
        if herm > TOL_IDENTITY {
            return Err(SimError::InvalidDensity(format!(
                "not Hermitian (max deviation {herm})"
            )));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > TOL_IDENTITY || tr.im.abs() > TOL_IDENTITY {
            return Err(SimError::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let min_eig = rho
            .eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -TOL_POSITIVITY {
            return Err(SimError::InvalidDensity(format!(
                "negative eigenvalue {min_eig}"
            )));
        }
        Ok(rho)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.entry(i, j) - self.entry(j, i).conj()).norm());
            }
        }
        worst
    }

    /// tr(ρ²); for Hermitian ρ this is Σ|ρ_ij|², real by construction.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    /// Eigenvalues of the (Hermitian) matrix via cyclic Jacobi rotations.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(self.dim, &self.entries)
    }
}

/// Eigenvalues of a Hermitian matrix by complex Jacobi rotations.
pub fn hermitian_eigenvalues(dim: usize, entries: &[Complex64]) -> Vec<f64> {
    let mut a = entries.to_vec();
    let idx = |i: usize, j: usize| i * dim + j;
    for _sweep in 0..100 {
        let off: f64 = (0..dim)
            .flat_map(|p| ((p + 1)..dim).map(move |q| (p, q)))
            .map(|(p, q)| a[idx(p, q)].norm_sqr())
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                let apq = a[idx(p, q)];
                let m = apq.norm();
                if m < 1e-300 {
                    continue;
                }
                let sigma = apq / m;
                let app = a[idx(p, p)].re;
                let aqq = a[idx(q, q)].re;
                let tau = (aqq - app) / (2.0 * m);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G has g_pp = c, g_pq = s·σ, g_qp = −s·σ*, g_qq = c;
                // update A ← G† A G using Hermitian symmetry.
                for i in 0..dim {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[idx(i, p)];
                    let aiq = a[idx(i, q)];
                    let new_ip = c * aip - s * sigma.conj() * aiq;
                    let new_iq = s * sigma * aip + c * aiq;
                    a[idx(i, p)] = new_ip;
                    a[idx(p, i)] = new_ip.conj();
                    a[idx(i, q)] = new_iq;
                    a[idx(q, i)] = new_iq.conj();
                }
                a[idx(p, p)] = Complex64::new(app - t * m, 0.0);
                a[idx(q, q)] = Complex64::new(aqq + t * m, 0.0);
                a[idx(p, q)] = Complex64::ZERO;
                a[idx(q, p)] = Complex64::ZERO;
            }
        }
    }
    let mut eigs: Vec<f64> = (0..dim).map(|i| a[idx(i, i)].re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

/// Reduced density matrix of `s` on the kept subsystems; the first kept
/// label owns the most significant bit of the reduced index.
pub fn partial_trace(s: &StateVector, keep: &[SubsystemLabel]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(SimError::EmptyKeep);
    }
    for (i, l) in keep.iter().enumerate() {
        if keep[..i].contains(l) {
            return Err(SimError::DuplicateLabel(*l));
        }
    }
    let keep_shifts: Vec<usize> = keep
        .iter()
        .map(|&l| s.bit_shift(l))
        .collect::<Result<_>>()?;
    let k = keep.len();
    let rest_shifts: Vec<usize> = (0..s.num_qubits())
        .map(|pos| s.num_qubits() - 1 - pos)
        .filter(|sh| !keep_shifts.contains(sh))
        .collect();

    let full = |kept_index: usize, rest_index: usize| -> usize {
        let mut idx = 0usize;
        for (m, &sh) in keep_shifts.iter().enumerate() {
            idx |= ((kept_index >> (k - 1 - m)) & 1) << sh;
        }
        for (m, &sh) in rest_shifts.iter().enumerate() {
            idx |= ((rest_index >> m) & 1) << sh;
        }
        idx
    };

    let dk = 1usize << k;
    let dr = 1usize << rest_shifts.len();
    let amps = s.amplitudes();
    let mut entries = vec![Complex64::ZERO; dk * dk];
    for i in 0..dk {
        for j in 0..dk {
            let mut acc = Complex64::ZERO;
            for r in 0..dr {
                acc += amps[full(i, r)] * amps[full(j, r)].conj();
            }
            entries[i * dk + j] = acc;
        }
    }
    DensityMatrix::new(dk, entries)
}

/// ⟨ψ|ρ|ψ⟩: how much of the pure state `psi` the mixed state contains.
pub fn fidelity(rho: &DensityMatrix, psi: &StateVector) -> Result<f64> {
    if rho.dim() != psi.dim() {
        return Err(SimError::DimensionMismatch {
            expected: rho.dim(),
            got: psi.dim(),
        });
    }
    let a = psi.amplitudes();
    let mut acc = Complex64::ZERO;
    for i in 0..rho.dim() {
        for j in 0..rho.dim() {
            acc += a[i].conj() * rho.entry(i, j) * a[j];
        }
    }
    Ok(acc.re)
}

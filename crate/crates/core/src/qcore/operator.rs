//! Dense complex operators on 1–2 qubit subspaces (dim ≤ 16 overall).

use num_complex::Complex64;

use crate::error::SimError;
use crate::qcore::{StateVector, SubsystemLabel};
use crate::tolerance::TOL_IDENTITY;
use crate::Result;

/// A dim×dim complex matrix, row-major, dim a power of two. The unitary
/// flag is set only by constructors that verified UU† = I.
#[derive(Debug, Clone)]
pub struct Operator {
    dim: usize,
    entries: Vec<Complex64>,
    unitary: bool,
}

impl Operator {
    /// General (not necessarily unitary) operator, e.g. a projector.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || !dim.is_power_of_two() {
            return Err(SimError::BadOperatorDim(dim));
        }
        if entries.len() != dim * dim {
            return Err(SimError::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self {
            dim,
            entries,
            unitary: false,
        })
    }

    /// Operator checked to satisfy UU† = I within 1e-10 (max-entry norm).
    pub fn unitary(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        let mut op = Self::new(dim, entries)?;
        let product = op.matmul(&op.dagger())?;
        let deviation = product.max_entry_distance(&Self::identity(dim))?;
        if deviation > TOL_IDENTITY {
            return Err(SimError::NotUnitary { deviation });
        }
        op.unitary = true;
        Ok(op)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::ONE;
        }
        Self {
            dim,
            entries,
            unitary: true,
        }
    }

    pub fn pauli_x() -> Self {
        Self::two_by_two([0.0, 1.0, 1.0, 0.0], true)
    }

    pub fn pauli_y() -> Self {
        let e = vec![
            Complex64::ZERO,
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::ZERO,
        ];
        Self {
            dim: 2,
            entries: e,
            unitary: true,
        }
    }

    pub fn pauli_z() -> Self {
        Self::two_by_two([1.0, 0.0, 0.0, -1.0], true)
    }

    /// CNOT on two qubits, first (most significant) qubit controls.
    pub fn cnot() -> Self {
        let mut entries = vec![Complex64::ZERO; 16];
        for (row, col) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
            entries[row * 4 + col] = Complex64::ONE;
        }
        Self {
            dim: 4,
            entries,
            unitary: true,
        }
    }

    /// Rank-one projector |ψ⟩⟨ψ| onto a pure state.
    pub fn projector_onto(psi: &StateVector) -> Self {
        let d = psi.dim();
        let a = psi.amplitudes();
        let mut entries = vec![Complex64::ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[i * d + j] = a[i] * a[j].conj();
            }
        }
        Self {
            dim: d,
            entries,
            unitary: false,
        }
    }

    fn two_by_two(re: [f64; 4], unitary: bool) -> Self {
        Self {
            dim: 2,
            entries: re.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
            unitary,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// Conjugate transpose. Unitarity is preserved.
    pub fn dagger(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![Complex64::ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        Self {
            dim: d,
            entries,
            unitary: self.unitary,
        }
    }

    /// Matrix product self · rhs.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(SimError::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let d = self.dim;
        let mut entries = vec![Complex64::ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let aik = self.entries[i * d + k];
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += aik * rhs.entries[k * d + j];
                }
            }
        }
        Ok(Self {
            dim: d,
            entries,
            unitary: self.unitary && rhs.unitary,
        })
    }

    /// Largest entry-wise modulus of self − rhs.
    pub fn max_entry_distance(&self, rhs: &Self) -> Result<f64> {
        if self.dim != rhs.dim {
            return Err(SimError::DimensionMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_entry_distance(&self.dagger()).unwrap() <= tol
    }

    pub fn is_idempotent(&self, tol: f64) -> bool {
        self.matmul(self)
            .and_then(|sq| sq.max_entry_distance(self))
            .map(|d| d <= tol)
            .unwrap_or(false)
    }

    /// Matrix-vector product on a raw amplitude slice.
    pub(crate) fn mat_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim;
        debug_assert_eq!(v.len(), d);
        self.entries
            .chunks_exact(d)
            .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
            .collect()
    }
}

/// Applies `u` to the listed target subsystems of `s`, identity elsewhere.
/// The first target owns the most significant bit of the operator index,
/// matching the state convention. Requires a verified-unitary operator.
pub fn apply(u: &Operator, targets: &[SubsystemLabel], s: &StateVector) -> Result<StateVector> {
    if !u.is_unitary() {
        let product = u.matmul(&u.dagger())?;
        let deviation = product.max_entry_distance(&Operator::identity(u.dim()))?;
        return Err(SimError::NotUnitary { deviation });
    }
    apply_matrix(u, targets, s)
}

/// Same embedding as [`apply`], without the unitarity requirement. Used
/// internally for projectors; the output is renormalized by the caller
/// when needed, so this returns raw amplitudes.
pub(crate) fn apply_matrix_raw(
    u: &Operator,
    targets: &[SubsystemLabel],
    s: &StateVector,
) -> Result<Vec<Complex64>> {
    let k = targets.len();
    if u.dim() != 1usize << k {
        return Err(SimError::DimensionMismatch {
            expected: 1usize << k,
            got: u.dim(),
        });
    }
    for (i, t) in targets.iter().enumerate() {
        if targets[..i].contains(t) {
            return Err(SimError::DuplicateLabel(*t));
        }
    }
    let shifts: Vec<usize> = targets
        .iter()
        .map(|&t| s.bit_shift(t))
        .collect::<Result<_>>()?;
    let target_mask: usize = shifts.iter().map(|&sh| 1usize << sh).sum();
    let d = u.dim();
    // spread[r] places operator-index bits at their state positions
    let spread: Vec<usize> = (0..d)
        .map(|r| {
            shifts
                .iter()
                .enumerate()
                .map(|(m, &sh)| ((r >> (k - 1 - m)) & 1) << sh)
                .sum()
        })
        .collect();

    let mut amps = s.amplitudes().to_vec();
    let mut block = vec![Complex64::ZERO; d];
    for base in 0..amps.len() {
        if base & target_mask != 0 {
            continue;
        }
        for r in 0..d {
            block[r] = amps[base | spread[r]];
        }
        let out = u.mat_vec(&block);
        for r in 0..d {
            amps[base | spread[r]] = out[r];
        }
    }
    Ok(amps)
}

pub(crate) fn apply_matrix(
    u: &Operator,
    targets: &[SubsystemLabel],
    s: &StateVector,
) -> Result<StateVector> {
    let amps = apply_matrix_raw(u, targets, s)?;
    StateVector::new(s.labels().to_vec(), amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::tensor;
    use num_complex::Complex64 as C;

    const SQ: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn phi_plus(l0: SubsystemLabel, l1: SubsystemLabel) -> StateVector {
        StateVector::new(
            vec![l0, l1],
            vec![
                C::new(SQ, 0.0),
                C::ZERO,
                C::ZERO,
                C::new(SQ, 0.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn pauli_x_flips_basis() {
        let s = StateVector::basis_state(vec![SubsystemLabel::B], 0).unwrap();
        let out = apply(&Operator::pauli_x(), &[SubsystemLabel::B], &s).unwrap();
        assert_eq!(out.amplitudes()[1], C::ONE);
        assert_eq!(out.amplitudes()[0], C::ZERO);
    }

    #[test]
    fn identity_is_exact() {
        let s = phi_plus(SubsystemLabel::A, SubsystemLabel::B);
        let out = apply(&Operator::identity(2), &[SubsystemLabel::A], &s).unwrap();
        assert_eq!(out.amplitudes(), s.amplitudes());
    }

    #[test]
    fn x_on_half_of_bell_gives_psi_plus() {
        // X on A of |Φ+⟩ → (|10⟩+|01⟩)/√2
        let s = phi_plus(SubsystemLabel::A, SubsystemLabel::B);
        let out = apply(&Operator::pauli_x(), &[SubsystemLabel::A], &s).unwrap();
        let expect = [C::ZERO, C::new(SQ, 0.0), C::new(SQ, 0.0), C::ZERO];
        for (a, e) in out.amplitudes().iter().zip(expect.iter()) {
            assert!((a - e).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_unknown_label() {
        let s = StateVector::basis_state(vec![SubsystemLabel::B], 0).unwrap();
        let e = apply(&Operator::pauli_x(), &[SubsystemLabel::A], &s);
        assert!(matches!(e, Err(SimError::UnknownLabel(SubsystemLabel::A))));
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let s = phi_plus(SubsystemLabel::A, SubsystemLabel::B);
        let e = apply(
            &Operator::pauli_x(),
            &[SubsystemLabel::A, SubsystemLabel::B],
            &s,
        );
        assert!(matches!(e, Err(SimError::DimensionMismatch { .. })));
    }

    #[test]
    fn rejects_non_unitary() {
        let s = StateVector::basis_state(vec![SubsystemLabel::B], 0).unwrap();
        let p = Operator::projector_onto(&s);
        let full = tensor(
            &StateVector::basis_state(vec![SubsystemLabel::A], 0).unwrap(),
            &s,
        )
        .unwrap();
        assert!(matches!(
            apply(&p, &[SubsystemLabel::B], &full),
            Err(SimError::NotUnitary { .. })
        ));
    }

    #[test]
    fn unitary_constructor_validates() {
        let e = Operator::unitary(2, vec![C::ONE, C::ONE, C::ZERO, C::ONE]);
        assert!(matches!(e, Err(SimError::NotUnitary { .. })));
        assert!(Operator::unitary(
            2,
            vec![C::ONE, C::ZERO, C::ZERO, C::new(0.0, 1.0)]
        )
        .is_ok());
    }

    #[test]
    fn cnot_truth_table() {
        for (input, want) in [(0b00usize, 0b00usize), (0b01, 0b01), (0b10, 0b11), (0b11, 0b10)] {
            let s = StateVector::basis_state(
                vec![SubsystemLabel::A, SubsystemLabel::Blank],
                input,
            )
            .unwrap();
            let out = apply(
                &Operator::cnot(),
                &[SubsystemLabel::A, SubsystemLabel::Blank],
                &s,
            )
            .unwrap();
            assert_eq!(out.amplitudes()[want], C::ONE, "input {input:02b}");
        }
    }

    #[test]
    fn apply_respects_target_order() {
        // CNOT with targets listed (Blank, A): Blank controls.
        let s = StateVector::basis_state(vec![SubsystemLabel::A, SubsystemLabel::Blank], 0b01)
            .unwrap();
        let out = apply(
            &Operator::cnot(),
            &[SubsystemLabel::Blank, SubsystemLabel::A],
            &s,
        )
        .unwrap();
        // Blank=1 controls, so A flips: |A=1, Blank=1⟩ = index 0b11.
        assert_eq!(out.amplitudes()[0b11], C::ONE);
    }
}

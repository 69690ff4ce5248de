//! Pure states over labeled two-level subsystems.
//!
//! Basis-index convention: the FIRST label owns the MOST significant bit.
//! For labels `[A1, A, B]` the amplitude at index `0b101` belongs to
//! `|1⟩_A1 |0⟩_A |1⟩_B`. The convention is fixed here once; every other
//! module inherits it.

use std::fmt;

use num_complex::Complex64;

use crate::error::SimError;
use crate::qcore::SubsystemLabel;
use crate::tolerance::TOL_IDENTITY;
use crate::Result;

/// A normalized pure state over an ordered list of labeled qubits.
#[derive(Debug, Clone)]
pub struct StateVector {
    labels: Vec<SubsystemLabel>,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state, validating label uniqueness, the amplitude count
    /// (exactly 2^n) and the norm (1 within 1e-10).
    pub fn new(labels: Vec<SubsystemLabel>, amps: Vec<Complex64>) -> Result<Self> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(SimError::DuplicateLabel(*l));
            }
        }
        if amps.len() != 1usize << labels.len() {
            return Err(SimError::BadAmplitudeCount {
                labels: labels.len(),
                got: amps.len(),
            });
        }
        let state = Self { labels, amps };
        let norm = state.norm();
        // Written so a NaN norm (non-finite amplitudes) also fails.
        if !((norm - 1.0).abs() <= TOL_IDENTITY) {
            return Err(SimError::NotNormalized { norm });
        }
        Ok(state)
    }

    /// The computational basis state `|index⟩` over the given labels.
    pub fn basis_state(labels: Vec<SubsystemLabel>, index: usize) -> Result<Self> {
        let dim = 1usize << labels.len();
        if index >= dim {
            return Err(SimError::DimensionMismatch {
                expected: dim,
                got: index,
            });
        }
        let mut amps = vec![Complex64::ZERO; dim];
        amps[index] = Complex64::ONE;
        Self::new(labels, amps)
    }

    /// Single-qubit state `a0|0⟩ + a1|1⟩` on `label`.
    pub fn single_qubit(label: SubsystemLabel, a0: Complex64, a1: Complex64) -> Result<Self> {
        Self::new(vec![label], vec![a0, a1])
    }

    pub fn labels(&self) -> &[SubsystemLabel] {
        &self.labels
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Position of `label` in the label list.
    pub fn position(&self, label: SubsystemLabel) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(SimError::UnknownLabel(label))
    }

    /// Bit shift of `label` inside a basis index (first label = MSB).
    pub(crate) fn bit_shift(&self, label: SubsystemLabel) -> Result<usize> {
        Ok(self.num_qubits() - 1 - self.position(label)?)
    }

    /// Same amplitudes under a fresh set of labels.
    pub fn relabeled(&self, labels: Vec<SubsystemLabel>) -> Result<Self> {
        if labels.len() != self.labels.len() {
            return Err(SimError::DimensionMismatch {
                expected: self.labels.len(),
                got: labels.len(),
            });
        }
        Self::new(labels, self.amps.clone())
    }

    /// Inner product ⟨self|other⟩. Labels must match exactly.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.labels != other.labels {
            return Err(SimError::NotProductForm(
                "inner product requires identical label lists".into(),
            ));
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Squared overlap |⟨self|other⟩|², the phase-insensitive equality
    /// measure used by every state comparison in the protocol checks.
    pub fn overlap_sq(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Euclidean distance between amplitude vectors (phase-sensitive).
    pub fn amplitude_distance(&self, other: &Self) -> Result<f64> {
        if self.labels != other.labels {
            return Err(SimError::NotProductForm(
                "distance requires identical label lists".into(),
            ));
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num_qubits();
        let mut first = true;
        for (idx, amp) in self.amps.iter().enumerate() {
            if amp.norm_sqr() < 1e-24 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)|{:0width$b}⟩", amp.re, amp.im, idx, width = n)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Kronecker product of two states; labels of `a` come first and keep the
/// most significant bits.
pub fn tensor(a: &StateVector, b: &StateVector) -> Result<StateVector> {
    for l in b.labels() {
        if a.labels().contains(l) {
            return Err(SimError::DuplicateLabel(*l));
        }
    }
    let mut labels = a.labels().to_vec();
    labels.extend_from_slice(b.labels());
    let mut amps = Vec::with_capacity(a.dim() * b.dim());
    for x in a.amplitudes() {
        for y in b.amplitudes() {
            amps.push(x * y);
        }
    }
    StateVector::new(labels, amps)
}

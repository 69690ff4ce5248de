//! Dense complex pure-state simulation over labeled two-level subsystems.

mod density;
mod label;
mod measure;
mod operator;
mod random;
mod state;

pub use density::{fidelity, hermitian_eigenvalues, partial_trace, DensityMatrix};
pub use label::SubsystemLabel;
pub use measure::{born_distribution, measure, sample_outcome, MeasurementRecord};
pub use operator::{apply, Operator};
pub use random::{random_pure_state, random_unitary};
pub use state::{tensor, StateVector};

pub(crate) use operator::apply_matrix_raw;

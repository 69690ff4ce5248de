//! Subsystem labels.

use std::fmt;

/// Identifier of one two-level subsystem inside a [`super::StateVector`].
///
/// The canonical protocol set is `A1` (the particle carrying the unknown
/// state), `A` (Alice's half of the shared pair) and `B` (Bob's half).
/// `Blank` is the target qubit of a cloning attempt; `Aux(k)` covers
/// everything else, e.g. freshly sampled random states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubsystemLabel {
    A1,
    A,
    B,
    Blank,
    Aux(u8),
}

impl fmt::Display for SubsystemLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsystemLabel::A1 => write!(f, "A1"),
            SubsystemLabel::A => write!(f, "A"),
            SubsystemLabel::B => write!(f, "B"),
            SubsystemLabel::Blank => write!(f, "blank"),
            SubsystemLabel::Aux(k) => write!(f, "aux{k}"),
        }
    }
}

//! The quantum torus `Z1 Z2 = q^2 Z2 Z1`, word weights and the quantum expansion.

mod expansion;
mod torus;
mod weights;

pub use expansion::{quantum_cluster_variable, quantum_expansion, quantum_seed, verify_quantum_recurrence};
pub use torus::{QLaurent, QuantumElement};
pub use weights::{uq, wq_allpairs, wq_closed, wq_closed_strict_sign, WeightTable};

//! Werner-invariant operators: the `A_D` construction, the Hermitian basis,
//! invariance checks and an independent commutant computation.

pub mod basis;
pub mod checks;
pub mod commutant;
pub mod operators;

pub use basis::{
    decompose, decompose_float, hermitian_basis, hermitian_coords, hermitian_coords_f64, span_rank,
    BasisElement, Decomposition, ExactCoefficients, Provenance, WernerBasis, BASIS_MAX_N,
    FLOAT_SPAN_TOL,
};
pub use checks::{
    check_mixed_werner, check_mixed_werner_float, haar_su2, twirl_check, CheckOutcome,
    CheckRegistry, CommutatorCheck, InvarianceCheck, Operand, TwirlCheck, FLOAT_TOL, TWIRL_TOL,
};
pub use commutant::{commutant_oracle, same_span, Commutant, COMMUTANT_MAX_N};
pub use operators::{a_operator, i_y, m_map, pizza_operator, tensor_power};

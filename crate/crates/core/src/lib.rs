//! Octonions, Spin(9,1) twistors, and the open-orbit model of `SL(2, O)`.
//!
//! The 32-dimensional space of pairs of twistors carries a quartic
//! determinant whose non-vanishing locus plays the role of the invertible
//! 2x2 octonionic matrices. This crate implements the underlying algebra
//! end to end: octonion arithmetic, the three triality products, the
//! conformal generator actions on scalars and twistors, the quartic
//! invariant and its polarization, the Hessian metric with its signatures,
//! the duality loci with their retraction, Moebius normal forms, and an
//! independent quaternionic determinant oracle, together with seeded
//! verification suites over all of it.

pub mod error;
pub mod invariants;
pub mod linalg;
pub mod lorentz;
pub mod octonion;
pub mod quaternion_check;
pub mod suites;
pub mod triality;
pub mod twistor;

pub use error::{Error, Result};
pub use invariants::{
    det_rho, duality_residual, f_ab, grad_det, hessian_log_det, mu, mu_null_pair, normalize, p_map,
    p_map_dual_route, q_map, quartic_polarization, restricted_signature, retract, sl2h_embed,
    NormalForm, OctMatrix2, Rho, Subspace, SymBilinear32, DUALITY_KAPPA, NEAR_SINGULAR_FLOOR,
};
pub use lorentz::{
    clifford_action, lorentz_form, vector_action, vector_action_word, ConformalGenerator,
    ConformalWord, LorentzVector,
};
pub use octonion::{
    oct_conj, oct_inv, oct_mul, quaternion_subalgebra, Octonion, QuaternionSubalgebra, Vector8,
};
pub use quaternion_check::{cdet_oracle, embed_complex, mu_vs_qdet, qdet, QMat2, Quaternion};
pub use suites::{run_suite, suite_names, SuiteReport};
pub use triality::{cliff_v_on_minus, cliff_v_on_plus, pair_spinors, Chirality, Spinor};
pub use twistor::{
    act, act_word, dual_pairing, evaluate, project, zero_point, Duality, PointS8, Twistor,
};

//! Chevalley–Eilenberg cohomology of finite-dimensional graded Lie
//! (super)algebras relative to their degree-zero part.

pub mod algebra;
pub mod linalg;
pub mod module;
pub mod complex;
pub mod checks;

pub use algebra::{current_algebra, t3_algebra, FiniteGradedLie, Generator};
pub use checks::{ext_euler, phi_cocycle_check, t3_verify, verify_euler_vs_pairing, EulerReport, PhiReport, T3Report};
pub use complex::{ce_complex, cohomology, CEComplex, CohomologyTable, DEFAULT_MAX_COCHAINS};
pub use module::FiniteModule;

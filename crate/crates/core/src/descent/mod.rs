//! Brown algebras, descent of symplectic involutions, and the real forms of
//! E7.

pub mod brown;
pub mod hermitian;
pub mod quatconst;
pub mod symplem;
pub mod table;

pub use brown::{brown_conj, brown_descend, brown_mul, brown_varpi, check_brown, BrownElement, Flavor};
pub use hermitian::{hermitian_trace_form, witt_index_hermitian, HermitianForm};
pub use quatconst::{check_quatconst, quatconst_build, quatconst_from, DescentDatum, QuatConst};
pub use symplem::{hermitian_coefficients, symplem_verify, SymplemOutcome, SymplemParams};
pub use table::{e7_real_table, RealFormRow};

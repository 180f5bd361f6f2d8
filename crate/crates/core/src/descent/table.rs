//! Witt indices of the symplectic involutions behind the four real forms of
//! E7.

use serde::Serialize;

use super::hermitian::{witt_index_hermitian, HermitianForm};
use crate::albert::AlbertAlgebra;
use crate::error::Result;
use crate::forms::QuadraticForm;
use crate::scalar::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealFormRow {
    pub quaternion: &'static str,
    pub albert: &'static str,
    pub witt_index: usize,
    pub tits_index: &'static str,
    pub comment: &'static str,
}

/// `w(M₂₈(Q), σ)` with `σ` adjoint to `⟨1⟩ ⊥ T` over `Q`, signs only.
pub fn witt_for(q: (i64, i64), trace: &QuadraticForm) -> Result<usize> {
    let mut coeffs = vec![Scalar::one()];
    coeffs.extend(trace.coeffs().iter().cloned());
    witt_index_hermitian(&HermitianForm::new(Scalar::integer(q.0), Scalar::integer(q.1), coeffs)?)
}

pub fn e7_real_table() -> Result<Vec<RealFormRow>> {
    let split = AlbertAlgebra::split().trace_form();
    let compact = AlbertAlgebra::division().trace_form();
    let rows = [
        ("M2(R)", (1, 1), "J^d", &split, "E⁰₇,₇", "split"),
        ("M2(R)", (1, 1), "H3(O,1)", &compact, "E²⁸₇,₃", ""),
        ("H", (-1, -1), "J^d", &split, "E⁹₇,₄", ""),
        ("H", (-1, -1), "H3(O,1)", &compact, "E¹³³₇,₀", "anisotropic/compact"),
    ];
    rows.into_iter()
        .map(|(quaternion, q, albert, trace, tits_index, comment)| {
            Ok(RealFormRow { quaternion, albert, witt_index: witt_for(q, trace)?, tits_index, comment })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        let rows = e7_real_table().unwrap();
        let w: Vec<usize> = rows.iter().map(|r| r.witt_index).collect();
        assert_eq!(w, vec![28, 28, 24, 0]);
    }
}

//! Diagonal hermitian forms over a quaternion algebra and their quadratic
//! trace forms.

use serde::Serialize;

use crate::composition::CompositionAlgebra;
use crate::error::{AlgebraError, Result};
use crate::forms::QuadraticForm;
use crate::scalar::{Ring, Scalar};

/// `⟨c₁, …, cₙ⟩` over `(a, b)_F`, hermitian for the canonical involution.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HermitianForm {
    pub a: Scalar,
    pub b: Scalar,
    coeffs: Vec<Scalar>,
}

impl HermitianForm {
    pub fn new(a: Scalar, b: Scalar, coeffs: Vec<Scalar>) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(AlgebraError::ZeroParameter("quaternion parameter"));
        }
        if let Some(i) = coeffs.iter().position(Ring::is_zero) {
            return Err(AlgebraError::ZeroCoefficient(i));
        }
        Ok(HermitianForm { a, b, coeffs })
    }

    /// The hermitian form with the same coefficients as a diagonal quadratic form.
    pub fn from_quadratic(a: Scalar, b: Scalar, q: &QuadraticForm) -> Result<Self> {
        Self::new(a, b, q.coeffs().to_vec())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn orthogonal_sum(&self, other: &HermitianForm) -> Result<HermitianForm> {
        if self.a != other.a || self.b != other.b {
            return Err(AlgebraError::MixedAlgebras);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(other.coeffs.iter().cloned());
        Ok(HermitianForm { coeffs, ..self.clone() })
    }

    /// Coefficientwise equality up to rational squares after scaling by `λ`.
    pub fn is_similar_diagonal(&self, other: &HermitianForm, lambda: &Scalar) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(x, y)| (x / &(y * lambda)).is_square())
    }
}

/// `q(v) = h(v, v)`: `⊥ cᵢ · n_Q` with `n_Q = ⟨1, −a, −b, ab⟩`.
pub fn hermitian_trace_form(h: &HermitianForm) -> Result<QuadraticForm> {
    let norm = CompositionAlgebra::quaternion(h.a.clone(), h.b.clone())?.norm_form();
    let mut coeffs = Vec::with_capacity(4 * h.dim());
    for c in &h.coeffs {
        coeffs.extend(norm.coeffs().iter().map(|x| x * c));
    }
    QuadraticForm::new(coeffs)
}

/// Half the Witt index of the trace form, over a real-closed field.
pub fn witt_index_hermitian(h: &HermitianForm) -> Result<usize> {
    let w = hermitian_trace_form(h)?.signature_and_witt().witt_index;
    if w % 2 != 0 {
        return Err(AlgebraError::InvalidParameter(format!("trace form has odd Witt index {w}")));
    }
    Ok(w / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::integer(n)
    }

    fn hamilton(coeffs: &[i64]) -> HermitianForm {
        HermitianForm::new(s(-1), s(-1), coeffs.iter().map(|&c| s(c)).collect()).unwrap()
    }

    #[test]
    fn unit_form_over_hamilton() {
        let h = hamilton(&[1]);
        assert_eq!(hermitian_trace_form(&h).unwrap().coeffs(), &[s(1), s(1), s(1), s(1)]);
        assert_eq!(witt_index_hermitian(&h).unwrap(), 0);
    }

    #[test]
    fn hyperbolic_plane_over_hamilton() {
        let h = hamilton(&[1, -1]);
        let sig = hermitian_trace_form(&h).unwrap().signature_and_witt();
        assert_eq!((sig.positives, sig.negatives), (4, 4));
        assert_eq!(witt_index_hermitian(&h).unwrap(), 2);
    }

    #[test]
    fn zero_coefficient_rejected() {
        assert_eq!(HermitianForm::new(s(-1), s(-1), vec![s(1), s(0)]), Err(AlgebraError::ZeroCoefficient(1)));
    }

    #[test]
    fn mixed_algebras_rejected() {
        let h = hamilton(&[1]);
        let g = HermitianForm::new(s(1), s(1), vec![s(1)]).unwrap();
        assert!(h.orthogonal_sum(&g).is_err());
    }
}

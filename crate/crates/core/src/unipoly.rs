use std::fmt;
use std::ops::Mul;

use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Mat2;

/// Univariate polynomial over a finite field, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<FieldElement>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> UniPoly {
        UniPoly::new(field, Vec::new())
    }

    pub fn one(field: FieldSpec) -> UniPoly {
        UniPoly::new(field, vec![field.one()])
    }

    /// `x − root`.
    pub fn linear(root: FieldElement) -> UniPoly {
        let field = root.spec();
        UniPoly::new(field, vec![-root, field.one()])
    }

    /// `∏ (x − r)` over the given roots.
    pub fn from_roots(field: FieldSpec, roots: impl IntoIterator<Item = FieldElement>) -> UniPoly {
        roots
            .into_iter()
            .fold(UniPoly::one(field), |acc, r| &acc * &UniPoly::linear(r))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, &c| acc * x + c)
    }

    /// Horner evaluation at a matrix argument.
    pub fn eval_matrix(&self, m: &Mat2) -> Mat2 {
        self.coeffs
            .iter()
            .rev()
            .fold(Mat2::zero(self.field), |acc, &c| acc * *m + Mat2::scalar(c))
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(self.field, out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (deg, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{c}*x")?,
                (d, true) => write!(f, "x^{d}")?,
                (d, false) => write!(f, "{c}*x^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn trims_and_multiplies() {
        let f = make_field(5, 1).unwrap();
        let p = UniPoly::new(f, vec![f.one(), f.zero(), f.zero()]);
        assert_eq!(p.degree(), Some(0));
        let q = UniPoly::from_roots(f, [f.from_int(1), f.from_int(4)]);
        // (x−1)(x−4) = x² − 5x + 4 = x² + 4 over F_5
        assert_eq!(q, UniPoly::new(f, vec![f.from_int(4), f.zero(), f.one()]));
        assert_eq!(q.eval(f.from_int(4)), f.zero());
        assert_eq!(q.to_string(), "x^2 + 4");
        assert!(UniPoly::zero(f).degree().is_none());
    }
}

//! 2×2 matrices over a finite field, under the associative, Jordan and
//! commutator products.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::field::{FieldElement, FieldSpec};
use crate::unipoly::UniPoly;

pub const E11: usize = 0;
pub const E12: usize = 1;
pub const E21: usize = 2;
pub const E22: usize = 3;

/// Names of the matrix units in the fixed basis order.
pub const BASIS_NAMES: [&str; 4] = ["e11", "e12", "e21", "e22"];

/// Which bilinear product the matrix space carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    /// Ordinary matrix product `ab`.
    Associative,
    /// `a∘b = (ab + ba)/2`.
    Jordan,
    /// `[a, b] = ab − ba`.
    Commutator,
}

impl ProductKind {
    pub const ALL: [ProductKind; 3] = [
        ProductKind::Associative,
        ProductKind::Jordan,
        ProductKind::Commutator,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ProductKind::Associative => "associative",
            ProductKind::Jordan => "jordan",
            ProductKind::Commutator => "commutator",
        }
    }

    #[inline]
    pub fn apply(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        match self {
            ProductKind::Associative => *a * *b,
            ProductKind::Jordan => (*a * *b + *b * *a).scale(a.field().half()),
            ProductKind::Commutator => *a * *b - *b * *a,
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "associative" | "assoc" => Ok(ProductKind::Associative),
            "jordan" => Ok(ProductKind::Jordan),
            "commutator" | "lie" => Ok(ProductKind::Commutator),
            other => Err(Error::Parse(format!("unknown product `{other}`"))),
        }
    }
}

/// `kind` product of two matrices over the same field.
pub fn mul(kind: ProductKind, a: &Mat2, b: &Mat2) -> Mat2 {
    kind.apply(a, b)
}

/// Coarse shape of a single matrix.
///
/// The identity matrix is both scalar and idempotent; the scalar tag wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixClass {
    Zero,
    Nilpotent,
    Idempotent,
    Scalar,
    InvertibleNonscalar,
    DegenerateOther,
}

/// A 2×2 matrix, entries stored row-major as `e11, e12, e21, e22`
/// coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    entries: [FieldElement; 4],
}

impl Mat2 {
    pub fn new(entries: [FieldElement; 4]) -> Mat2 {
        debug_assert!(entries.iter().all(|e| e.spec() == entries[0].spec()));
        Mat2 { entries }
    }

    pub fn from_ints(field: FieldSpec, ints: [i64; 4]) -> Mat2 {
        Mat2 {
            entries: ints.map(|n| field.from_int(n)),
        }
    }

    pub fn zero(field: FieldSpec) -> Mat2 {
        Mat2 {
            entries: [field.zero(); 4],
        }
    }

    /// The identity matrix `E`.
    pub fn identity(field: FieldSpec) -> Mat2 {
        Mat2::scalar(field.one())
    }

    pub fn scalar(c: FieldElement) -> Mat2 {
        let z = c.spec().zero();
        Mat2 {
            entries: [c, z, z, c],
        }
    }

    /// The matrix unit at basis position `idx` (see [`BASIS_NAMES`]).
    pub fn unit(field: FieldSpec, idx: usize) -> Mat2 {
        let mut m = Mat2::zero(field);
        m.entries[idx] = field.one();
        m
    }

    pub fn units(field: FieldSpec) -> [Mat2; 4] {
        [0, 1, 2, 3].map(|i| Mat2::unit(field, i))
    }

    pub fn field(&self) -> FieldSpec {
        self.entries[0].spec()
    }

    /// Coefficients on `e11, e12, e21, e22`.
    pub fn entries(&self) -> &[FieldElement; 4] {
        &self.entries
    }

    pub fn coeff(&self, idx: usize) -> FieldElement {
        self.entries[idx]
    }

    /// Entry at 1-based `(row, col)`.
    pub fn at(&self, row: usize, col: usize) -> FieldElement {
        self.entries[(row - 1) * 2 + (col - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn det(&self) -> FieldElement {
        let [a, b, c, d] = self.entries;
        a * d - b * c
    }

    pub fn trace(&self) -> FieldElement {
        self.entries[0] + self.entries[3]
    }

    pub fn transpose(&self) -> Mat2 {
        let [a, b, c, d] = self.entries;
        Mat2 {
            entries: [a, c, b, d],
        }
    }

    pub fn scale(&self, c: FieldElement) -> Mat2 {
        Mat2 {
            entries: self.entries.map(|e| e * c),
        }
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let inv_det = self.det().inv()?;
        let [a, b, c, d] = self.entries;
        Some(Mat2 {
            entries: [d, -b, -c, a],
        }
        .scale(inv_det))
    }

    /// `Some(c)` when the matrix is `c·E`.
    pub fn as_scalar(&self) -> Option<FieldElement> {
        let [a, b, c, d] = self.entries;
        (b.is_zero() && c.is_zero() && a == d).then_some(a)
    }

    pub fn classify(&self) -> MatrixClass {
        if self.is_zero() {
            return MatrixClass::Zero;
        }
        if self.as_scalar().is_some() {
            return MatrixClass::Scalar;
        }
        let sq = *self * *self;
        if sq.is_zero() {
            MatrixClass::Nilpotent
        } else if sq == *self {
            MatrixClass::Idempotent
        } else if !self.det().is_zero() {
            MatrixClass::InvertibleNonscalar
        } else {
            MatrixClass::DegenerateOther
        }
    }

    /// Monic annihilating polynomial of least degree.
    pub fn minimal_polynomial(&self) -> UniPoly {
        let field = self.field();
        match self.as_scalar() {
            Some(c) => UniPoly::new(field, vec![-c, field.one()]),
            // Cayley–Hamilton: x² − tr·x + det, and no linear polynomial
            // annihilates a non-scalar matrix.
            None => UniPoly::new(field, vec![self.det(), -self.trace(), field.one()]),
        }
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    #[inline]
    fn add(self, rhs: Mat2) -> Mat2 {
        let a = self.entries;
        let b = rhs.entries;
        Mat2 {
            entries: [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]],
        }
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    #[inline]
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    #[inline]
    fn neg(self) -> Mat2 {
        Mat2 {
            entries: self.entries.map(|e| -e),
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    #[inline]
    fn mul(self, rhs: Mat2) -> Mat2 {
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = rhs.entries;
        Mat2 {
            entries: [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h],
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Every 2×2 matrix over `field`, in lexicographic coefficient order.
pub fn all_matrices(field: FieldSpec) -> impl Iterator<Item = Mat2> {
    let q = field.order();
    (0..q.pow(4)).map(move |mut n| {
        let mut idx = [0usize; 4];
        for slot in idx.iter_mut().rev() {
            *slot = n % q;
            n /= q;
        }
        Mat2::new(idx.map(|i| field.element(i)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn f3() -> FieldSpec {
        make_field(3, 1).unwrap()
    }

    #[test]
    fn product_examples() {
        let f = f3();
        let [e11, e12, e21, e22] = Mat2::units(f);
        assert_eq!(mul(ProductKind::Associative, &e12, &e21), e11);
        // (e11 + e22)/2 = 2E over F_3
        assert_eq!(
            mul(ProductKind::Jordan, &e12, &e21),
            Mat2::scalar(f.from_int(2))
        );
        assert_eq!(mul(ProductKind::Commutator, &e11, &e12), e12);
        assert_eq!(e11 + e22, Mat2::identity(f));
    }

    #[test]
    fn product_relations_exhaustive_f3() {
        let f = f3();
        let mats: Vec<Mat2> = all_matrices(f).collect();
        assert_eq!(mats.len(), 81);
        let two = f.from_int(2);
        for a in &mats {
            for b in &mats {
                let j = mul(ProductKind::Jordan, a, b);
                let c = mul(ProductKind::Commutator, a, b);
                assert_eq!(j, mul(ProductKind::Jordan, b, a));
                assert_eq!(c, -mul(ProductKind::Commutator, b, a));
                assert_eq!(j.scale(two) + c, (*a * *b).scale(two));
            }
        }
    }

    #[test]
    fn jordan_identity_exhaustive_f3() {
        let f = f3();
        let mats: Vec<Mat2> = all_matrices(f).collect();
        let j = |x: &Mat2, y: &Mat2| mul(ProductKind::Jordan, x, y);
        for a in &mats {
            let aa = j(a, a);
            for b in &mats {
                assert_eq!(j(&aa, &j(b, a)), j(&j(&aa, b), a));
            }
        }
    }

    #[test]
    fn classify_examples() {
        let f = f3();
        let [e11, e12, _, _] = Mat2::units(f);
        assert_eq!(e12.classify(), MatrixClass::Nilpotent);
        assert_eq!(e11.classify(), MatrixClass::Idempotent);
        assert_eq!(Mat2::identity(f).classify(), MatrixClass::Scalar);
        assert_eq!(Mat2::zero(f).classify(), MatrixClass::Zero);
        assert_eq!(
            Mat2::from_ints(f, [1, 1, 0, 2]).classify(),
            MatrixClass::InvertibleNonscalar
        );
        assert_eq!(
            Mat2::from_ints(f, [2, 0, 0, 0]).classify(),
            MatrixClass::DegenerateOther
        );
    }

    #[test]
    fn minimal_polynomial_examples() {
        let f = f3();
        let [e11, e12, _, _] = Mat2::units(f);
        // x² − x
        assert_eq!(
            e11.minimal_polynomial(),
            UniPoly::new(f, vec![f.zero(), -f.one(), f.one()])
        );
        // x − 1
        assert_eq!(
            Mat2::identity(f).minimal_polynomial(),
            UniPoly::new(f, vec![-f.one(), f.one()])
        );
        // x²
        assert_eq!(
            e12.minimal_polynomial(),
            UniPoly::new(f, vec![f.zero(), f.zero(), f.one()])
        );
    }

    #[test]
    fn minimal_polynomial_annihilates_exhaustive_f3() {
        for m in all_matrices(f3()) {
            let mp = m.minimal_polynomial();
            assert!(mp.is_monic());
            assert!(mp.eval_matrix(&m).is_zero(), "{m}");
        }
    }

    #[test]
    fn inverse_and_transpose() {
        for m in all_matrices(make_field(5, 1).unwrap()) {
            match m.inverse() {
                Some(inv) => assert_eq!(m * inv, Mat2::identity(m.field())),
                None => assert!(m.det().is_zero()),
            }
            // transpose is an antiautomorphism
            let n = Mat2::from_ints(m.field(), [1, 2, 3, 4]);
            assert_eq!((m * n).transpose(), n.transpose() * m.transpose());
        }
    }
}

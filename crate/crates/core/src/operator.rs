//! Linear operators on the 4-dimensional matrix space.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{self, Row};
use crate::matrix::{Mat2, ProductKind, BASIS_NAMES};

/// A linear map `M₂(F) → M₂(F)`, stored as the images of `e11, e12, e21, e22`.
///
/// Ordering is lexicographic on the 16 coefficients, image by image.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Op4 {
    images: [Mat2; 4],
}

/// Kernel and image of an [`Op4`], bases in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelImage {
    pub ker_dim: usize,
    pub ker_basis: Vec<Mat2>,
    pub im_dim: usize,
    pub im_basis: Vec<Mat2>,
}

fn to_row(m: &Mat2) -> Row {
    m.entries().to_vec()
}

fn from_row(r: &[FieldElement]) -> Mat2 {
    Mat2::new([r[0], r[1], r[2], r[3]])
}

/// Reduced echelon basis of the span of `mats`.
pub fn echelon_basis(field: FieldSpec, mats: &[Mat2]) -> Vec<Mat2> {
    let rows: Vec<Row> = mats.iter().map(to_row).collect();
    linalg::rref(field, &rows, 4).0.iter().map(|r| from_row(r)).collect()
}

/// Whether `m` lies in the span of `basis`.
pub fn in_span(field: FieldSpec, basis: &[Mat2], m: &Mat2) -> bool {
    let rows: Vec<Row> = basis.iter().map(to_row).collect();
    linalg::in_span(field, &rows, m.entries())
}

/// First pair of basis positions `(i, j)` whose product leaves the span, if any.
pub fn closure_violation(
    field: FieldSpec,
    basis: &[Mat2],
    product: ProductKind,
) -> Option<(usize, usize, Mat2)> {
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let xy = product.apply(x, y);
            if !in_span(field, basis, &xy) {
                return Some((i, j, xy));
            }
        }
    }
    None
}

impl Op4 {
    pub fn new(images: [Mat2; 4]) -> Op4 {
        Op4 { images }
    }

    pub fn zero(field: FieldSpec) -> Op4 {
        Op4::new([Mat2::zero(field); 4])
    }

    pub fn identity(field: FieldSpec) -> Op4 {
        Op4::new(Mat2::units(field))
    }

    /// `images[j]` holds the integer coefficients of `R(e_j)`.
    pub fn from_ints(field: FieldSpec, images: [[i64; 4]; 4]) -> Op4 {
        Op4::new(images.map(|im| Mat2::from_ints(field, im)))
    }

    /// Inverse of [`Op4::coeffs`].
    pub fn from_coeffs(coeffs: &[FieldElement; 16]) -> Op4 {
        Op4::new([0, 1, 2, 3].map(|j| {
            Mat2::new([
                coeffs[4 * j],
                coeffs[4 * j + 1],
                coeffs[4 * j + 2],
                coeffs[4 * j + 3],
            ])
        }))
    }

    pub fn field(&self) -> FieldSpec {
        self.images[0].field()
    }

    pub fn image(&self, j: usize) -> &Mat2 {
        &self.images[j]
    }

    pub fn images(&self) -> &[Mat2; 4] {
        &self.images
    }

    /// The 16 coefficients: entry `4j + c` is the `e_c` coordinate of `R(e_j)`.
    pub fn coeffs(&self) -> [FieldElement; 16] {
        let mut out = [self.field().zero(); 16];
        for (j, im) in self.images.iter().enumerate() {
            out[4 * j..4 * j + 4].copy_from_slice(im.entries());
        }
        out
    }

    #[inline]
    pub fn apply(&self, m: &Mat2) -> Mat2 {
        let c = m.entries();
        self.images[0].scale(c[0])
            + self.images[1].scale(c[1])
            + self.images[2].scale(c[2])
            + self.images[3].scale(c[3])
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Op4) -> Op4 {
        Op4::new(inner.images.map(|im| self.apply(&im)))
    }

    pub fn scale(&self, c: FieldElement) -> Op4 {
        Op4::new(self.images.map(|im| im.scale(c)))
    }

    pub fn pow(&self, k: u32) -> Op4 {
        (0..k).fold(Op4::identity(self.field()), |acc, _| self.compose(&acc))
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Mat2::is_zero)
    }

    /// `R + c·id`.
    pub fn shift(&self, c: FieldElement) -> Op4 {
        *self + Op4::identity(self.field()).scale(c)
    }

    /// Matrix of the operator in the basis, `m[i][j]` = `e_i` coordinate of `R(e_j)`.
    pub fn matrix(&self) -> Vec<Row> {
        (0..4)
            .map(|i| (0..4).map(|j| self.images[j].coeff(i)).collect())
            .collect()
    }

    pub fn from_matrix(m: &[Row]) -> Op4 {
        Op4::new([0, 1, 2, 3].map(|j| Mat2::new([m[0][j], m[1][j], m[2][j], m[3][j]])))
    }

    pub fn kernel_image(&self) -> KernelImage {
        let field = self.field();
        let im_basis = echelon_basis(field, &self.images);
        let ker_basis: Vec<Mat2> = linalg::nullspace(field, &self.matrix(), 4)
            .iter()
            .map(|r| from_row(r))
            .collect();
        KernelImage {
            ker_dim: ker_basis.len(),
            ker_basis,
            im_dim: im_basis.len(),
            im_basis,
        }
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.field(), &self.matrix(), 4)
    }
}

impl Add for Op4 {
    type Output = Op4;
    fn add(self, rhs: Op4) -> Op4 {
        Op4::new([0, 1, 2, 3].map(|j| self.images[j] + rhs.images[j]))
    }
}

impl Sub for Op4 {
    type Output = Op4;
    fn sub(self, rhs: Op4) -> Op4 {
        self + (-rhs)
    }
}

impl Neg for Op4 {
    type Output = Op4;
    fn neg(self) -> Op4 {
        Op4::new(self.images.map(|im| -im))
    }
}

impl fmt::Display for Op4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, im) in BASIS_NAMES.iter().zip(&self.images) {
            if im.is_zero() {
                continue;
            }
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{name} -> ")?;
            write_combination(f, im)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Writes `m` as a combination of matrix units, e.g. `e11 + 2*e12`.
pub fn write_combination(f: &mut impl fmt::Write, m: &Mat2) -> fmt::Result {
    let mut first = true;
    for (name, c) in BASIS_NAMES.iter().zip(m.entries()) {
        if c.is_zero() {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        if c.is_one() {
            f.write_str(name)?;
        } else {
            write!(f, "{c}*{name}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Debug for Op4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Op4{{{self}}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::matrix::{E12, E21};

    #[test]
    fn kernel_image_examples() {
        let f = make_field(3, 1).unwrap();
        // e21 -> e12
        let a1 = Op4::from_ints(f, [[0; 4], [0; 4], [0, 1, 0, 0], [0; 4]]);
        let ki = a1.kernel_image();
        assert_eq!((ki.ker_dim, ki.im_dim), (3, 1));
        assert_eq!(ki.im_basis, vec![Mat2::unit(f, E12)]);
        for k in &ki.ker_basis {
            assert!(a1.apply(k).is_zero());
        }
        let z = Op4::zero(f).kernel_image();
        assert_eq!((z.ker_dim, z.im_dim), (4, 0));
        let id = Op4::identity(f).kernel_image();
        assert_eq!((id.ker_dim, id.im_dim), (0, 4));
    }

    #[test]
    fn coeff_roundtrip_and_compose() {
        let f = make_field(5, 1).unwrap();
        let r = Op4::from_ints(f, [[1, 2, 3, 4], [0, 1, 0, 2], [4, 4, 0, 1], [2, 0, 0, 3]]);
        assert_eq!(Op4::from_coeffs(&r.coeffs()), r);
        assert_eq!(Op4::from_matrix(&r.matrix()), r);
        let id = Op4::identity(f);
        assert_eq!(r.compose(&id), r);
        assert_eq!(id.compose(&r), r);
        assert_eq!(r.pow(2), r.compose(&r));
        let m = Mat2::unit(f, E21);
        assert_eq!(r.compose(&r).apply(&m), r.apply(&r.apply(&m)));
    }

    #[test]
    fn display_is_readable() {
        let f = make_field(3, 1).unwrap();
        let r = Op4::from_ints(f, [[0, 1, 0, 0], [0; 4], [0; 4], [0, 2, 0, 0]]);
        assert_eq!(r.to_string(), "e11 -> e12, e22 -> 2*e12");
        assert_eq!(Op4::zero(f).to_string(), "0");
    }
}

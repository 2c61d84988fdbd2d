//! Subspaces of `M₂(F)` closed under a product.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{Mat2, ProductKind};
use crate::operator::{closure_violation, echelon_basis};

/// A proper nonzero subspace closed under `product`, basis in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subalgebra {
    basis: Vec<Mat2>,
    product: ProductKind,
}

impl Subalgebra {
    /// Checks closure; the error names the first basis pair whose product leaves the span.
    pub fn new(field: FieldSpec, span: &[Mat2], product: ProductKind) -> Result<Subalgebra> {
        let basis = echelon_basis(field, span);
        if basis.is_empty() || basis.len() > 3 {
            return Err(Error::InvalidOptions(format!(
                "subalgebra dimension {} outside 1..=3",
                basis.len()
            )));
        }
        if let Some((i, j, xy)) = closure_violation(field, &basis, product) {
            return Err(Error::NotClosed {
                product: product.to_string(),
                x: basis[i].to_string(),
                y: format!("{} (product {xy})", basis[j]),
            });
        }
        Ok(Subalgebra { basis, product })
    }

    pub fn basis(&self) -> &[Mat2] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn product(&self) -> ProductKind {
        self.product
    }

    pub fn field(&self) -> FieldSpec {
        self.basis[0].field()
    }
}

impl Serialize for Subalgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Subalgebra", 2)?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("product", &self.product)?;
        st.end()
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (k - 1..n)
        .flat_map(|last| {
            combinations(last, k - 1).into_iter().map(move |mut c| {
                c.push(last);
                c
            })
        })
        .collect()
}

/// Every `dim`-dimensional subspace of `F⁴`, one reduced echelon basis each.
pub fn enumerate_subspaces(field: FieldSpec, dim: usize) -> Vec<Vec<Mat2>> {
    let elems: Vec<FieldElement> = field.elements().collect();
    let mut out = Vec::new();
    for pivots in combinations(4, dim) {
        // free slots: (row, col) with col right of the row's pivot and not a pivot column
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                let pivots = &pivots;
                (p + 1..4).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let count = elems.len().pow(free.len() as u32);
        for mut code in 0..count {
            let mut rows = vec![[field.zero(); 4]; dim];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = field.one();
            }
            for &(r, c) in &free {
                rows[r][c] = elems[code % elems.len()];
                code /= elems.len();
            }
            out.push(rows.into_iter().map(Mat2::new).collect());
        }
    }
    out
}

/// All closed subspaces of dimension 1–3, sorted by dimension then basis.
/// Also returns the number of subspaces scanned.
pub fn enumerate_subalgebras(field: FieldSpec, product: ProductKind) -> (Vec<Subalgebra>, usize) {
    let mut scanned = 0;
    let mut out = Vec::new();
    for dim in 1..=3 {
        for basis in enumerate_subspaces(field, dim) {
            scanned += 1;
            if closure_violation(field, &basis, product).is_none() {
                out.push(Subalgebra { basis, product });
            }
        }
    }
    out.sort_by(|a, b| (a.dim(), &a.basis).cmp(&(b.dim(), &b.basis)));
    (out, scanned)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::matrix::{E11, E12, E21, E22};
    use crate::operator::in_span;

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        let f = make_field(3, 1).unwrap();
        let counts: Vec<usize> = (1..=3).map(|d| enumerate_subspaces(f, d).len()).collect();
        assert_eq!(counts, vec![40, 130, 40]);
        for d in 1..=3 {
            for b in enumerate_subspaces(f, d) {
                assert_eq!(echelon_basis(f, &b), b);
            }
        }
    }

    #[test]
    fn jordan_census_examples() {
        let f = make_field(3, 1).unwrap();
        let u = |i| Mat2::unit(f, i);
        let (jordan, scanned) = enumerate_subalgebras(f, ProductKind::Jordan);
        assert_eq!(scanned, 210);
        let has = |span: &[Mat2], list: &[Subalgebra]| {
            let b = echelon_basis(f, span);
            list.iter().any(|s| s.basis() == b)
        };
        let h2 = [u(E11), u(E22), u(E12) + u(E21)];
        assert!(has(&h2, &jordan));
        assert!(has(&[u(E11)], &jordan));
        assert!(has(&[Mat2::identity(f)], &jordan));
        assert!(has(&[u(E12)], &jordan));
        let (assoc, _) = enumerate_subalgebras(f, ProductKind::Associative);
        assert!(!has(&h2, &assoc));
        for s in jordan.iter().chain(&assoc) {
            // independent closure re-check on every pair of spanned elements
            for x in s.basis() {
                for y in s.basis() {
                    assert!(in_span(f, s.basis(), &s.product().apply(x, y)));
                }
            }
        }
        let err = Subalgebra::new(f, &h2, ProductKind::Associative).unwrap_err();
        assert!(matches!(err, Error::NotClosed { .. }));
    }
}

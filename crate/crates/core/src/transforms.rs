//! The equivalence moves on operators: automorphisms and antiautomorphisms of
//! `M₂(F)`, nonzero scalars, and the involution `φ(R) = −R − λ·id`.
//!
//! Every automorphism of `M₂(F)⁽⁺⁾` is inner or inner composed with transpose,
//! so the group is `PGL₂(q)`, optionally doubled by the transpose.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Mat2;
use crate::operator::{echelon_basis, Op4};

/// `m ↦ g · τ(m) · g⁻¹`, where `τ` is the transpose when the flag is set.
///
/// Matrices are kept normalized: first nonzero entry (row-major) equal to 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupElement {
    use_transpose: bool,
    matrix: Mat2,
    inverse: Mat2,
}

fn normalize(m: &Mat2) -> Mat2 {
    let lead = m
        .entries()
        .iter()
        .find(|c| !c.is_zero())
        .copied()
        .expect("invertible matrix has a nonzero entry");
    m.scale(lead.inv().expect("nonzero"))
}

impl GroupElement {
    pub fn new(matrix: Mat2, use_transpose: bool) -> Result<GroupElement> {
        if matrix.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let matrix = normalize(&matrix);
        let inverse = matrix.inverse().expect("nonzero determinant");
        Ok(GroupElement {
            use_transpose,
            matrix,
            inverse,
        })
    }

    pub fn identity(field: FieldSpec) -> GroupElement {
        GroupElement::new(Mat2::identity(field), false).expect("identity is invertible")
    }

    pub fn transpose(field: FieldSpec) -> GroupElement {
        GroupElement::new(Mat2::identity(field), true).expect("identity is invertible")
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    pub fn use_transpose(&self) -> bool {
        self.use_transpose
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    /// The (anti)automorphism applied to a single matrix.
    pub fn map(&self, m: &Mat2) -> Mat2 {
        let t = if self.use_transpose { m.transpose() } else { *m };
        self.matrix * t * self.inverse
    }

    /// The map as an operator.
    pub fn as_operator(&self) -> Op4 {
        Op4::new(Mat2::units(self.field()).map(|u| self.map(&u)))
    }

    /// `self ∘ other` as maps on matrices.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let inner = if self.use_transpose {
            other.inverse.transpose()
        } else {
            other.matrix
        };
        GroupElement::new(
            self.matrix * inner,
            self.use_transpose ^ other.use_transpose,
        )
        .expect("product of invertible matrices")
    }

    pub fn inverse(&self) -> GroupElement {
        // (m ↦ g mᵀ g⁻¹)⁻¹ = (m ↦ gᵀ mᵀ g⁻ᵀ)
        let m = if self.use_transpose {
            self.matrix.transpose()
        } else {
            self.inverse
        };
        GroupElement::new(m, self.use_transpose).expect("invertible")
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = &self.matrix;
        let rows = [[m.at(1, 1), m.at(1, 2)], [m.at(2, 1), m.at(2, 2)]];
        let mut st = s.serialize_struct("GroupElement", 2)?;
        st.serialize_field("matrix", &rows)?;
        st.serialize_field("transpose", &self.use_transpose)?;
        st.end()
    }
}

/// `ψ⁻¹ ∘ R ∘ ψ` for the map `ψ` of `g`.
pub fn act(g: &GroupElement, r: &Op4) -> Op4 {
    g.inverse().as_operator().compose(&r.compose(&g.as_operator()))
}

pub fn scale_op(alpha: FieldElement, r: &Op4) -> Op4 {
    r.scale(alpha)
}

/// `−R − λ·id`.
pub fn apply_phi(r: &Op4, lambda: FieldElement) -> Op4 {
    -r.shift(lambda)
}

/// Which moves generate the equivalence relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub field: FieldSpec,
    pub include_transpose: bool,
    pub include_scalars: bool,
    pub include_phi: bool,
}

impl GroupSpec {
    pub fn new(field: FieldSpec, transpose: bool, scalars: bool, phi: bool) -> GroupSpec {
        GroupSpec {
            field,
            include_transpose: transpose,
            include_scalars: scalars,
            include_phi: phi,
        }
    }

    /// Scalars only preserve weight 0; `φ` only makes sense for nonzero weight.
    pub fn validate(&self, lambda: FieldElement) -> Result<()> {
        if lambda.spec() != self.field {
            return Err(Error::FieldMismatch);
        }
        if self.include_scalars && self.include_phi {
            return Err(Error::InvalidGroup(
                "scalars and phi cannot be combined".into(),
            ));
        }
        if self.include_scalars && !lambda.is_zero() {
            return Err(Error::InvalidGroup(
                "scalar moves require weight 0".into(),
            ));
        }
        if self.include_phi && lambda.is_zero() {
            return Err(Error::InvalidGroup(
                "phi moves require a nonzero weight".into(),
            ));
        }
        Ok(())
    }
}

/// `PGL₂(q)` in lexicographic order of normalized matrices, then the same list
/// composed with transpose when enabled.
pub fn enumerate_group(spec: &GroupSpec) -> Vec<GroupElement> {
    let f = spec.field;
    let mut base = Vec::new();
    for m in crate::matrix::all_matrices(f) {
        let lead = m.entries().iter().find(|c| !c.is_zero());
        if lead.is_some_and(|c| c.is_one()) && !m.det().is_zero() {
            base.push(GroupElement::new(m, false).expect("checked"));
        }
    }
    if spec.include_transpose {
        let flipped: Vec<GroupElement> = base
            .iter()
            .map(|g| GroupElement::new(g.matrix, true).expect("checked"))
            .collect();
        base.extend(flipped);
    }
    base
}

/// One equivalence move: conjugate, then scale, then optionally apply `φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitMove {
    pub group: GroupElement,
    pub scalar: FieldElement,
    pub phi: bool,
}

impl OrbitMove {
    pub fn apply(&self, r: &Op4, lambda: FieldElement) -> Op4 {
        let moved = scale_op(self.scalar, &act(&self.group, r));
        if self.phi {
            apply_phi(&moved, lambda)
        } else {
            moved
        }
    }
}

impl Serialize for OrbitMove {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OrbitMove", 3)?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("scalar", &self.scalar)?;
        st.serialize_field("phi", &self.phi)?;
        st.end()
    }
}

/// Precomputed move set for repeated canonicalization.
pub struct Canonicalizer {
    spec: GroupSpec,
    lambda: FieldElement,
    // (ψ⁻¹, ψ) as operators
    group: Vec<(GroupElement, Op4, Op4)>,
    scalars: Vec<FieldElement>,
}

impl Canonicalizer {
    pub fn new(spec: GroupSpec, lambda: FieldElement) -> Result<Canonicalizer> {
        spec.validate(lambda)?;
        let group = enumerate_group(&spec)
            .into_iter()
            .map(|g| (g, g.inverse().as_operator(), g.as_operator()))
            .collect();
        let scalars = if spec.include_scalars {
            spec.field.units().collect()
        } else {
            vec![spec.field.one()]
        };
        Ok(Canonicalizer {
            spec,
            lambda,
            group,
            scalars,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn lambda(&self) -> FieldElement {
        self.lambda
    }

    pub fn group_len(&self) -> usize {
        self.group.len()
    }

    /// Visits every image of `r` with the move producing it.
    fn for_each_image(&self, r: &Op4, mut visit: impl FnMut(Op4, OrbitMove)) {
        let phis: &[bool] = if self.spec.include_phi {
            &[false, true]
        } else {
            &[false]
        };
        for (g, inv, fwd) in &self.group {
            let conj = inv.compose(&r.compose(fwd));
            for &scalar in &self.scalars {
                let scaled = conj.scale(scalar);
                for &phi in phis {
                    let img = if phi {
                        apply_phi(&scaled, self.lambda)
                    } else {
                        scaled
                    };
                    visit(
                        img,
                        OrbitMove {
                            group: *g,
                            scalar,
                            phi,
                        },
                    );
                }
            }
        }
    }

    pub fn canonicalize(&self, r: &Op4) -> Op4 {
        self.canonicalize_with_witness(r).0
    }

    /// Canonical form and a move sending `r` to it.
    pub fn canonicalize_with_witness(&self, r: &Op4) -> (Op4, OrbitMove) {
        let mut best: Option<(Op4, OrbitMove)> = None;
        self.for_each_image(r, |img, mv| {
            if best.as_ref().is_none_or(|(b, _)| img < *b) {
                best = Some((img, mv));
            }
        });
        best.expect("group contains the identity")
    }

    /// A move sending `from` to `to`, if they are equivalent.
    pub fn find_move(&self, from: &Op4, to: &Op4) -> Option<OrbitMove> {
        let mut found = None;
        self.for_each_image(from, |img, mv| {
            if found.is_none() && img == *to {
                found = Some(mv);
            }
        });
        found
    }

    /// Canonical form of a subspace (given by any spanning set) under the
    /// matrix moves only.
    pub fn canonical_subspace(&self, basis: &[Mat2]) -> Vec<Mat2> {
        let f = self.spec.field;
        self.group
            .iter()
            .map(|(g, _, _)| {
                let moved: Vec<Mat2> = basis.iter().map(|m| g.map(m)).collect();
                echelon_basis(f, &moved)
            })
            .min()
            .unwrap_or_default()
    }
}

pub fn canonicalize(r: &Op4, spec: &GroupSpec, lambda: FieldElement) -> Result<Op4> {
    Ok(Canonicalizer::new(*spec, lambda)?.canonicalize(r))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub canonical: Op4,
    pub members: usize,
    /// `(member, move)` with `move.apply(member) == canonical`.
    pub representative_witnesses: Option<Vec<(Op4, OrbitMove)>>,
}

impl Serialize for Orbit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Orbit", 2)?;
        st.serialize_field("canonical", &self.canonical)?;
        st.serialize_field("members", &self.members)?;
        st.end()
    }
}

/// Groups `ops` by canonical form, sorted by canonical form. With
/// `witnesses`, each orbit records a move for its smallest member.
pub fn partition_orbits(ops: &[Op4], canon: &Canonicalizer, witnesses: bool) -> Vec<Orbit> {
    let forms: Vec<(Op4, OrbitMove)> = ops
        .par_iter()
        .map(|r| canon.canonicalize_with_witness(r))
        .collect();
    let mut groups: BTreeMap<Op4, Vec<(Op4, OrbitMove)>> = BTreeMap::new();
    for (r, (c, mv)) in ops.iter().zip(forms) {
        groups.entry(c).or_default().push((*r, mv));
    }
    groups
        .into_iter()
        .map(|(canonical, mut members)| {
            members.sort_by_key(|a| a.0);
            Orbit {
                canonical,
                members: members.len(),
                representative_witnesses: witnesses.then(|| vec![members[0]]),
            }
        })
        .collect()
}

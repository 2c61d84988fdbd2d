//! JSON literal formats shared by every tool that reads or writes operators.
//!
//! An operator literal looks like
//!
//! ```json
//! {"field":{"p":3,"deg":1},"images":{"e11":[0,1,0,0],"e12":[0,0,0,0],"e21":[0,0,0,0],"e22":[0,2,0,0]}}
//! ```
//!
//! Coefficients are integers in `[0, p)` over a prime field and `[c0, c1]`
//! pairs over `F_{p^2}`.

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{make_field, FieldElement, FieldSpec};
use crate::identities::{CheckResult, Problem, Splitting, StructuralReport, Witness};
use crate::matrix::{Mat2, BASIS_NAMES};
use crate::operator::Op4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldLiteral {
    pub p: u32,
    pub deg: u32,
}

impl FieldLiteral {
    pub fn of(field: FieldSpec) -> FieldLiteral {
        FieldLiteral {
            p: field.p(),
            deg: field.deg(),
        }
    }

    pub fn resolve(&self) -> Result<FieldSpec> {
        make_field(self.p, self.deg)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let [c0, c1] = self.coords();
        if self.spec().deg() == 1 {
            s.serialize_u32(c0)
        } else {
            [c0, c1].serialize(s)
        }
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

impl Serialize for Op4 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Images<'a>(&'a [Mat2; 4]);
        impl Serialize for Images<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(4))?;
                for (name, im) in BASIS_NAMES.iter().zip(self.0) {
                    m.serialize_entry(name, im)?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("Op4", 2)?;
        st.serialize_field("field", &FieldLiteral::of(self.field()))?;
        st.serialize_field("images", &Images(self.images()))?;
        st.end()
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let args: Vec<&str> = self.args.iter().map(|&a| BASIS_NAMES[a]).collect();
        let mut st = s.serialize_struct("Witness", 3)?;
        st.serialize_field("args", &args)?;
        st.serialize_field("lhs", &self.lhs)?;
        st.serialize_field("rhs", &self.rhs)?;
        st.end()
    }
}

impl Serialize for CheckResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CheckResult", 2)?;
        st.serialize_field("passed", &self.passed)?;
        st.serialize_field("witness", &self.witness)?;
        st.end()
    }
}

impl Serialize for Splitting {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Splitting", 2)?;
        st.serialize_field("a_basis", &self.a_basis)?;
        st.serialize_field("b_basis", &self.b_basis)?;
        st.end()
    }
}

impl Serialize for StructuralReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StructuralReport", 6)?;
        st.serialize_field("unit_in_image", &self.unit_in_image)?;
        st.serialize_field("ker_dim", &self.ker_dim)?;
        st.serialize_field("image_of_unit", &self.image_of_unit)?;
        st.serialize_field("nilpotency_exponents", &self.nilpotency_exponents)?;
        st.serialize_field("hrs", &self.hrs)?;
        st.serialize_field("splitting", &self.splitting)?;
        st.end()
    }
}

/// Wire form of a [`Problem`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemLiteral {
    pub product: crate::matrix::ProductKind,
    pub identity: crate::identities::IdentityKind,
    pub weight: CoeffLiteral,
}

impl ProblemLiteral {
    pub fn of(p: &Problem) -> ProblemLiteral {
        let [c0, c1] = p.weight.coords();
        let weight = if p.field().deg() == 1 {
            CoeffLiteral::Int(c0 as u64)
        } else {
            CoeffLiteral::Pair([c0 as u64, c1 as u64])
        };
        ProblemLiteral {
            product: p.product,
            identity: p.identity,
            weight,
        }
    }

    pub fn resolve(&self, field: FieldSpec) -> Result<Problem> {
        Ok(Problem::new(
            self.product,
            self.identity,
            self.weight.resolve(field)?,
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffLiteral {
    Int(u64),
    Pair([u64; 2]),
}

impl CoeffLiteral {
    pub fn resolve(&self, field: FieldSpec) -> Result<FieldElement> {
        match *self {
            CoeffLiteral::Int(c) => field.from_coords(c, 0),
            CoeffLiteral::Pair([c0, c1]) => {
                if field.deg() == 1 {
                    return Err(Error::Parse(
                        "pair coefficient given for a prime field".into(),
                    ));
                }
                field.from_coords(c0, c1)
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ImagesLiteral {
    e11: [CoeffLiteral; 4],
    e12: [CoeffLiteral; 4],
    e21: [CoeffLiteral; 4],
    e22: [CoeffLiteral; 4],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorLiteral {
    field: FieldLiteral,
    images: ImagesLiteral,
}

fn resolve_mat(field: FieldSpec, c: &[CoeffLiteral; 4]) -> Result<Mat2> {
    let mut out = [field.zero(); 4];
    for (slot, lit) in out.iter_mut().zip(c) {
        *slot = lit.resolve(field)?;
    }
    Ok(Mat2::new(out))
}

/// Parses one operator literal.
pub fn parse_operator(text: &str) -> Result<Op4> {
    let lit: OperatorLiteral = serde_json::from_str(text)?;
    let field = lit.field.resolve()?;
    let im = &lit.images;
    Ok(Op4::new([
        resolve_mat(field, &im.e11)?,
        resolve_mat(field, &im.e12)?,
        resolve_mat(field, &im.e21)?,
        resolve_mat(field, &im.e22)?,
    ]))
}

/// Compact single-line operator literal.
pub fn operator_to_string(r: &Op4) -> String {
    serde_json::to_string(r).expect("operator serialization is infallible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literal_shape() {
        let f = make_field(3, 1).unwrap();
        let r = Op4::from_ints(f, [[0, 1, 0, 0], [0; 4], [0; 4], [0, 2, 0, 0]]);
        assert_eq!(
            operator_to_string(&r),
            r#"{"field":{"p":3,"deg":1},"images":{"e11":[0,1,0,0],"e12":[0,0,0,0],"e21":[0,0,0,0],"e22":[0,2,0,0]}}"#
        );
        let f9 = make_field(3, 2).unwrap();
        let s = operator_to_string(&Op4::identity(f9));
        assert!(s.starts_with(r#"{"field":{"p":3,"deg":2},"images":{"e11":[[1,0],[0,0],[0,0],[0,0]]"#));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in [
            "",
            "{}",
            r#"{"field":{"p":3,"deg":1},"images":{"e11":[0,1,0,0]}}"#,
            r#"{"field":{"p":3,"deg":1},"images":{"e11":[3,0,0,0],"e12":[0,0,0,0],"e21":[0,0,0,0],"e22":[0,0,0,0]}}"#,
            r#"{"field":{"p":4,"deg":1},"images":{"e11":[0,0,0,0],"e12":[0,0,0,0],"e21":[0,0,0,0],"e22":[0,0,0,0]}}"#,
            r#"{"field":{"p":3,"deg":1},"images":{"e11":[[0,1],0,0,0],"e12":[0,0,0,0],"e21":[0,0,0,0],"e22":[0,0,0,0]}}"#,
        ] {
            assert!(parse_operator(bad).is_err(), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn literal_roundtrip(coeffs in proptest::collection::vec((0u64..3, 0u64..3), 16), deg in 1u32..=2) {
            let f = make_field(3, deg).unwrap();
            let els: Vec<FieldElement> = coeffs
                .iter()
                .map(|&(a, b)| f.from_coords(a, if deg == 1 { 0 } else { b }).unwrap())
                .collect();
            let r = Op4::from_coeffs(&els.try_into().unwrap());
            prop_assert_eq!(parse_operator(&operator_to_string(&r)).unwrap(), r);
        }
    }
}

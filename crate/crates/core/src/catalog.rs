//! Named operators, parametric families, the splitting construction,
//! automorphism families and subalgebra representatives.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{make_field, FieldElement, FieldSpec};
use crate::linalg;
use crate::matrix::{Mat2, ProductKind, E11, E12, E21, E22};
use crate::operator::{closure_violation, echelon_basis, Op4};
use crate::search::Subalgebra;
use crate::transforms::{act, GroupElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogName {
    A1,
    A2,
    A3,
    A4,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    R1,
    R2,
    S1,
    S2,
    Z1,
    Fam3,
    Fam4,
}

impl CatalogName {
    pub const ALL: [CatalogName; 17] = [
        CatalogName::A1,
        CatalogName::A2,
        CatalogName::A3,
        CatalogName::A4,
        CatalogName::B1,
        CatalogName::B2,
        CatalogName::B3,
        CatalogName::B4,
        CatalogName::B5,
        CatalogName::B6,
        CatalogName::R1,
        CatalogName::R2,
        CatalogName::S1,
        CatalogName::S2,
        CatalogName::Z1,
        CatalogName::Fam3,
        CatalogName::Fam4,
    ];

    /// The six weight-0 representatives.
    pub const WEIGHT0_REPS: [CatalogName; 6] = [
        CatalogName::A1,
        CatalogName::A2,
        CatalogName::A3,
        CatalogName::A4,
        CatalogName::R1,
        CatalogName::R2,
    ];

    /// The eight weight-1 representatives.
    pub const WEIGHT1_REPS: [CatalogName; 8] = [
        CatalogName::B1,
        CatalogName::B2,
        CatalogName::B3,
        CatalogName::B4,
        CatalogName::B5,
        CatalogName::B6,
        CatalogName::S1,
        CatalogName::S2,
    ];

    pub fn name(&self) -> &'static str {
        use CatalogName::*;
        match self {
            A1 => "A1",
            A2 => "A2",
            A3 => "A3",
            A4 => "A4",
            B1 => "B1",
            B2 => "B2",
            B3 => "B3",
            B4 => "B4",
            B5 => "B5",
            B6 => "B6",
            R1 => "R1",
            R2 => "R2",
            S1 => "S1",
            S2 => "S2",
            Z1 => "Z1",
            Fam3 => "fam3",
            Fam4 => "fam4",
        }
    }

    pub fn is_family(&self) -> bool {
        matches!(self, CatalogName::Fam3 | CatalogName::Fam4)
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CatalogName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CatalogName::ALL
            .into_iter()
            .find(|n| n.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownCatalogName(s.to_string()))
    }
}

/// A catalog name with its parameters; `params` is set exactly for the families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogKey {
    pub name: CatalogName,
    pub params: Option<(FieldElement, FieldElement)>,
}

impl CatalogKey {
    pub fn new(name: CatalogName, params: Option<(FieldElement, FieldElement)>) -> Result<CatalogKey> {
        if name.is_family() != params.is_some() {
            return Err(Error::CatalogParams(format!(
                "{name} {} parameters",
                if name.is_family() { "requires" } else { "takes no" }
            )));
        }
        Ok(CatalogKey { name, params })
    }

    pub fn plain(name: CatalogName) -> CatalogKey {
        CatalogKey::new(name, None).expect("plain name")
    }

    pub fn family(name: CatalogName, alpha: FieldElement, beta: FieldElement) -> Result<CatalogKey> {
        CatalogKey::new(name, Some((alpha, beta)))
    }
}

fn op(field: FieldSpec, images: [[i64; 4]; 4]) -> Op4 {
    Op4::from_ints(field, images)
}

pub fn catalog_operator(key: &CatalogKey, field: FieldSpec) -> Result<Op4> {
    use CatalogName::*;
    const Z: [i64; 4] = [0; 4];
    if let Some((a, b)) = key.params {
        if a.spec() != field || b.spec() != field {
            return Err(Error::FieldMismatch);
        }
    }
    let r = match key.name {
        A1 => op(field, [Z, Z, [0, 1, 0, 0], Z]),
        A2 => op(field, [Z, Z, [1, 0, 0, 0], Z]),
        A3 => op(field, [Z, Z, [1, 0, 0, 0], [0, 1, 0, 0]]),
        A4 => op(field, [[0, 1, 0, 0], Z, [-1, 0, 0, 0], Z]),
        B1 => op(field, [[0, 0, 0, 1], [0, -1, 0, 0], Z, Z]),
        B2 => op(field, [[-1, 0, 0, 0], [0, -1, 0, 0], Z, Z]),
        B3 => op(field, [Z, Z, [0, 0, -1, 0], Z]),
        B4 => op(field, [Z, Z, [1, 0, -1, 0], Z]),
        B5 => op(field, [Z, [1, -1, 0, 0], [0, 0, -1, 1], Z]),
        B6 => op(field, [[-1, 0, 0, 0], [0, -1, 0, 0], Z, [1, 0, 0, 0]]),
        R1 | Z1 => op(field, [[0, 1, 0, 0], Z, Z, [0, -1, 0, 0]]),
        R2 => op(field, [Z, [1, 0, 0, 0], [1, 0, 0, 0], Z]),
        S1 => op(field, [Z, [0, -1, 0, 0], [0, 1, 0, 0], Z]),
        S2 => op(field, [Z, [-1, -1, 0, 0], [1, 1, 0, 0], Z]),
        Fam3 | Fam4 => {
            let (alpha, beta) = key.params.ok_or_else(|| {
                Error::CatalogParams(format!("{} requires alpha and beta", key.name))
            })?;
            let z = Mat2::zero(field);
            let e11 = Mat2::unit(field, E11);
            let e12 = Mat2::unit(field, E12);
            if key.name == Fam3 {
                Op4::new([z, e11.scale(alpha), e11.scale(beta), z])
            } else {
                Op4::new([e12.scale(alpha), z, e12.scale(beta), e12.scale(-alpha)])
            }
        }
    };
    Ok(r)
}

/// Intermediate operators of the nonzero-weight case analysis, as conjugates
/// of catalog entries: `case1` is `B1` under transpose, `case2` is `B2`.
pub fn case_alias(alias: &str, field: FieldSpec) -> Option<(CatalogName, GroupElement)> {
    match alias {
        "case1" => Some((CatalogName::B1, GroupElement::transpose(field))),
        "case2" => Some((CatalogName::B2, GroupElement::identity(field))),
        _ => None,
    }
}

pub fn case_operator(alias: &str, field: FieldSpec) -> Result<Op4> {
    let (name, g) =
        case_alias(alias, field).ok_or_else(|| Error::UnknownCatalogName(alias.to_string()))?;
    Ok(act(&g, &catalog_operator(&CatalogKey::plain(name), field)?))
}

/// One step of a normalization chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalizationStep {
    Conjugate(GroupElement),
    Scale(FieldElement),
}

impl NormalizationStep {
    pub fn apply(&self, r: &Op4) -> Op4 {
        match self {
            NormalizationStep::Conjugate(g) => act(g, r),
            NormalizationStep::Scale(c) => r.scale(*c),
        }
    }
}

/// Moves taking a family member to a named representative, when the needed
/// roots exist in the field. `(0, 0)` is the zero operator and has none.
pub fn normalize_family(key: &CatalogKey, field: FieldSpec) -> Option<(CatalogName, Vec<NormalizationStep>)> {
    use NormalizationStep::*;
    let (mut alpha, mut beta) = key.params?;
    let mut steps = Vec::new();
    match key.name {
        CatalogName::Fam3 => {
            if alpha.is_zero() {
                if beta.is_zero() {
                    return None;
                }
                steps.push(Conjugate(GroupElement::transpose(field)));
                (alpha, beta) = (beta, alpha);
            }
            steps.push(Scale(alpha.inv()?));
            let beta = beta * alpha.inv()?;
            if beta.is_zero() {
                // e12 -> e11 alone is the transpose of A2
                steps.push(Conjugate(GroupElement::transpose(field)));
                return Some((CatalogName::A2, steps));
            }
            let root = beta.sqrt()?;
            steps.push(Conjugate(psi(field, root)?));
            steps.push(Scale(root.inv()?));
            Some((CatalogName::R2, steps))
        }
        CatalogName::Fam4 => {
            if alpha.is_zero() {
                if beta.is_zero() {
                    return None;
                }
                steps.push(Scale(beta.inv()?));
                return Some((CatalogName::A1, steps));
            }
            steps.push(Scale(alpha.inv()?));
            let beta = beta * alpha.inv()?;
            if !beta.is_zero() {
                steps.push(Conjugate(psi(field, beta)?));
                steps.push(Scale(beta));
                steps.push(Conjugate(varphi(field, field.half())));
            }
            Some((CatalogName::R1, steps))
        }
        _ => None,
    }
}

pub fn apply_steps(steps: &[NormalizationStep], r: &Op4) -> Op4 {
    steps.iter().fold(*r, |acc, s| s.apply(&acc))
}

/// The operator vanishing on `A` and acting as `−λ` on `B`.
pub fn make_splitting(
    a_basis: &[Mat2],
    b_basis: &[Mat2],
    lambda: FieldElement,
    product: ProductKind,
) -> Result<Op4> {
    let field = lambda.spec();
    let a = echelon_basis(field, a_basis);
    let b = echelon_basis(field, b_basis);
    let joint = echelon_basis(field, &[a.clone(), b.clone()].concat());
    if a.len() + b.len() != 4 || joint.len() != 4 {
        return Err(Error::NotDirectSum(format!(
            "dimensions {} + {} with joint span {}",
            a.len(),
            b.len(),
            joint.len()
        )));
    }
    for part in [&a, &b] {
        if let Some((i, j, xy)) = closure_violation(field, part, product) {
            return Err(Error::NotClosed {
                product: product.to_string(),
                x: part[i].to_string(),
                y: format!("{} (product {xy})", part[j]),
            });
        }
    }
    // columns: the new basis and its images, both in unit coordinates
    let cols: Vec<Mat2> = a.iter().chain(&b).copied().collect();
    let images: Vec<Mat2> = a
        .iter()
        .map(|_| Mat2::zero(field))
        .chain(b.iter().map(|m| m.scale(-lambda)))
        .collect();
    let to_rows = |ms: &[Mat2]| -> Vec<linalg::Row> {
        (0..4).map(|i| ms.iter().map(|m| m.coeff(i)).collect()).collect()
    };
    let basis_inv = linalg::inverse(field, &to_rows(&cols)).ok_or(Error::SingularMatrix)?;
    Ok(Op4::from_matrix(&linalg::mat_mul(field, &to_rows(&images), &basis_inv)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutoFamily {
    /// `e12 ↦ r·e12`, `e21 ↦ e21/r`.
    PsiR,
    /// `e11 ↦ e11 + t·e12`.
    VarphiT,
    /// Conjugation by `[[a, s], [−s, a]]` with `s² = 1 − a²`.
    PA,
}

impl FromStr for AutoFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi_r" | "psi" => Ok(AutoFamily::PsiR),
            "varphi_t" | "varphi" => Ok(AutoFamily::VarphiT),
            "P_a" | "p" => Ok(AutoFamily::PA),
            other => Err(Error::AutomorphismParam(format!("unknown family '{other}'"))),
        }
    }
}

fn psi(field: FieldSpec, r: FieldElement) -> Option<GroupElement> {
    let rinv = r.inv()?;
    GroupElement::new(Mat2::new([field.one(), field.zero(), field.zero(), rinv]), false).ok()
}

fn varphi(field: FieldSpec, t: FieldElement) -> GroupElement {
    GroupElement::new(Mat2::new([field.one(), -t, field.zero(), field.one()]), false)
        .expect("unipotent")
}

pub fn catalog_automorphism(family: AutoFamily, param: FieldElement) -> Result<GroupElement> {
    let field = param.spec();
    match family {
        AutoFamily::PsiR => psi(field, param)
            .ok_or_else(|| Error::AutomorphismParam("psi_r needs r != 0".into())),
        AutoFamily::VarphiT => Ok(varphi(field, param)),
        AutoFamily::PA => {
            let s = (field.one() - param * param).sqrt().ok_or_else(|| {
                Error::AutomorphismParam(format!("1 - a^2 is not a square for a = {param}"))
            })?;
            GroupElement::new(Mat2::new([param, s, -s, param]), false)
                .map_err(|_| Error::AutomorphismParam("degenerate P_a".into()))
        }
    }
}

/// Names of the eight subalgebra representatives.
pub const SUBALGEBRA_NAMES: [&str; 8] = [
    "L(e11)",
    "L(e12)",
    "L(E)",
    "L(e11,e12)",
    "L(e11,e22)",
    "L(E,e12)",
    "L(e11,e22,e12)",
    "H2",
];

pub fn subalgebra_span(name: &str, field: FieldSpec) -> Result<Vec<Mat2>> {
    let u = |i| Mat2::unit(field, i);
    let id = Mat2::identity(field);
    let span = match name {
        "L(e11)" | "Fe11" => vec![u(E11)],
        "L(e12)" | "Fe12" => vec![u(E12)],
        "L(E)" | "FE" => vec![id],
        "L(e11,e12)" => vec![u(E11), u(E12)],
        "L(e11,e22)" => vec![u(E11), u(E22)],
        "L(E,e12)" => vec![id, u(E12)],
        "L(e11,e22,e12)" => vec![u(E11), u(E22), u(E12)],
        "H2" | "L(e11,e22,e12+e21)" => vec![u(E11), u(E22), u(E12) + u(E21)],
        other => return Err(Error::UnknownCatalogName(other.to_string())),
    };
    Ok(echelon_basis(field, &span))
}

/// A representative as a Jordan subalgebra.
pub fn catalog_subalgebra(name: &str, field: FieldSpec) -> Result<Subalgebra> {
    Subalgebra::new(field, &subalgebra_span(name, field)?, ProductKind::Jordan)
}

fn parse_param(field: FieldSpec, s: &str) -> Result<FieldElement> {
    let bad = || Error::CatalogParams(format!("bad parameter '{s}'"));
    match s.split_once(',') {
        None => {
            let v: i64 = s.parse().map_err(|_| bad())?;
            Ok(field.from_int(v))
        }
        Some((c0, c1)) => {
            let c0: u64 = c0.parse().map_err(|_| bad())?;
            let c1: u64 = c1.parse().map_err(|_| bad())?;
            field.from_coords(c0, c1)
        }
    }
}

/// A parsed `catalog:` reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRef {
    pub label: String,
    pub field: FieldSpec,
    pub operator: Op4,
}

/// Parses `catalog:NAME?field=p[,deg]&alpha=a&beta=b`. Without `field=` the
/// default field is used. `NAME` may also be `case1` or `case2`.
pub fn parse_catalog_ref(s: &str, default_field: Option<FieldSpec>) -> Result<CatalogRef> {
    let body = s
        .strip_prefix("catalog:")
        .ok_or_else(|| Error::Parse(format!("'{s}' is not a catalog reference")))?;
    let (name, query) = body.split_once('?').unwrap_or((body, ""));
    let mut field = default_field;
    let (mut alpha, mut beta) = (None, None);
    for pair in query.split('&').filter(|p| !p.is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad query item '{pair}'")))?;
        match k {
            "field" => {
                let (p, deg) = v.split_once(',').unwrap_or((v, "1"));
                let p: u32 = p.parse().map_err(|_| Error::Parse(format!("bad field '{v}'")))?;
                let deg: u32 = deg.parse().map_err(|_| Error::Parse(format!("bad field '{v}'")))?;
                field = Some(make_field(p, deg)?);
            }
            "alpha" => alpha = Some(v.to_string()),
            "beta" => beta = Some(v.to_string()),
            other => return Err(Error::Parse(format!("unknown query key '{other}'"))),
        }
    }
    let field = field.ok_or_else(|| Error::Parse(format!("'{s}' names no field")))?;
    if case_alias(name, field).is_some() {
        if alpha.is_some() || beta.is_some() {
            return Err(Error::CatalogParams(format!("{name} takes no parameters")));
        }
        return Ok(CatalogRef {
            label: name.to_string(),
            field,
            operator: case_operator(name, field)?,
        });
    }
    let cname: CatalogName = name.parse()?;
    let params = match (alpha, beta) {
        (None, None) => None,
        (Some(a), Some(b)) => Some((parse_param(field, &a)?, parse_param(field, &b)?)),
        _ => {
            return Err(Error::CatalogParams(
                "alpha and beta must be given together".into(),
            ))
        }
    };
    let key = CatalogKey::new(cname, params)?;
    Ok(CatalogRef {
        label: cname.to_string(),
        field,
        operator: catalog_operator(&key, field)?,
    })
}

//! Rota–Baxter and symmetrized Rota–Baxter identity checks, plus the
//! structural invariants that RB operators are expected to satisfy.
//!
//! Both identities are bilinear in `(x, y)`, so checking the 16 ordered pairs
//! of matrix units is a complete check.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{Mat2, ProductKind};
use crate::operator::{closure_violation, echelon_basis, in_span, Op4};
use crate::unipoly::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityKind {
    /// `R(x)R(y) = R(R(x)y + xR(y) + λxy)`.
    Rb,
    /// `2R(x)R(y) = R(R(x)y + xR(y) + yR(x) + R(y)x + λxy + λyx)`.
    Symmetrized,
}

impl IdentityKind {
    pub fn name(&self) -> &'static str {
        match self {
            IdentityKind::Rb => "rb",
            IdentityKind::Symmetrized => "symmetrized",
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "rb" => Ok(IdentityKind::Rb),
            "symmetrized" | "sym" => Ok(IdentityKind::Symmetrized),
            other => Err(Error::Parse(format!("unknown identity `{other}`"))),
        }
    }
}

/// Which identity, under which product, at which weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Problem {
    pub product: ProductKind,
    pub identity: IdentityKind,
    pub weight: FieldElement,
}

impl Problem {
    pub fn new(product: ProductKind, identity: IdentityKind, weight: FieldElement) -> Problem {
        Problem {
            product,
            identity,
            weight,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.weight.spec()
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.product, self.identity, self.weight
        )
    }
}

/// A basis substitution at which an identity fails, with both sides evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Basis positions substituted for the identity's arguments, in order.
    pub args: Vec<usize>,
    pub lhs: Mat2,
    pub rhs: Mat2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn pass() -> CheckResult {
        CheckResult {
            passed: true,
            witness: None,
        }
    }

    pub fn fail(witness: Witness) -> CheckResult {
        CheckResult {
            passed: false,
            witness: Some(witness),
        }
    }
}

/// Both sides of the identity at `(x, y) = (e_a, e_b)`.
#[inline]
pub fn identity_sides(r: &Op4, prob: &Problem, a: usize, b: usize) -> (Mat2, Mat2) {
    let field = r.field();
    let x = Mat2::unit(field, a);
    let y = Mat2::unit(field, b);
    sides_at(r, prob, &x, &y)
}

/// Both sides of the identity at arbitrary `x, y`.
#[inline]
pub fn sides_at(r: &Op4, prob: &Problem, x: &Mat2, y: &Mat2) -> (Mat2, Mat2) {
    let p = prob.product;
    let rx = r.apply(x);
    let ry = r.apply(y);
    let lam = prob.weight;
    match prob.identity {
        IdentityKind::Rb => {
            let lhs = p.apply(&rx, &ry);
            let arg = p.apply(&rx, y) + p.apply(x, &ry) + p.apply(x, y).scale(lam);
            (lhs, r.apply(&arg))
        }
        IdentityKind::Symmetrized => {
            let lhs = p.apply(&rx, &ry);
            let lhs = lhs + lhs;
            let arg = p.apply(&rx, y)
                + p.apply(x, &ry)
                + p.apply(y, &rx)
                + p.apply(&ry, x)
                + (p.apply(x, y) + p.apply(y, x)).scale(lam);
            (lhs, r.apply(&arg))
        }
    }
}

/// Checks the identity on all 16 ordered basis pairs, row-major; the witness
/// is the first failing pair.
pub fn check_identity(r: &Op4, prob: &Problem) -> CheckResult {
    let units = Mat2::units(r.field());
    for a in 0..4 {
        for b in 0..4 {
            let (lhs, rhs) = sides_at(r, prob, &units[a], &units[b]);
            if lhs != rhs {
                return CheckResult::fail(Witness {
                    args: vec![a, b],
                    lhs,
                    rhs,
                });
            }
        }
    }
    CheckResult::pass()
}

/// Shorthand for `check_identity(..).passed`.
pub fn satisfies(r: &Op4, prob: &Problem) -> bool {
    check_identity(r, prob).passed
}

/// `R(x)R(y) = R(y)R(x)` (associative product) on all basis pairs.
pub fn image_commutes(r: &Op4) -> bool {
    let ims = r.images();
    (0..4).all(|a| (0..4).all(|b| ims[a] * ims[b] == ims[b] * ims[a]))
}

/// A decomposition of the matrix space into a kernel part `A` (where `R`
/// vanishes) and a part `B` where `R` acts as `−λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub a_basis: Vec<Mat2>,
    pub b_basis: Vec<Mat2>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralReport {
    pub unit_in_image: bool,
    pub ker_dim: usize,
    pub image_of_unit: Mat2,
    /// Least `(k, l)` (by `k + l`, then larger `k`) with `R^k (R + λ)^l = 0`, `k, l ≤ 4`.
    pub nilpotency_exponents: Option<(u32, u32)>,
    /// `(r, s)` with `H_{r,s}` equal to the minimal polynomial of `R(1)`.
    pub hrs: Option<(u32, u32)>,
    pub splitting: Option<Splitting>,
}

pub fn structural_report(r: &Op4, lambda: FieldElement) -> StructuralReport {
    let field = r.field();
    let ki = r.kernel_image();
    let unit = Mat2::identity(field);
    let image_of_unit = r.apply(&unit);
    StructuralReport {
        unit_in_image: in_span(field, &ki.im_basis, &unit),
        ker_dim: ki.ker_dim,
        image_of_unit,
        nilpotency_exponents: nilpotency_exponents(r, lambda),
        hrs: hrs_match(&image_of_unit.minimal_polynomial()),
        splitting: detect_splitting(r, lambda),
    }
}

/// Search `k, l ≤ 4` for `R^k (R + λ id)^l = 0`.
pub fn nilpotency_exponents(r: &Op4, lambda: FieldElement) -> Option<(u32, u32)> {
    let shifted = r.shift(lambda);
    let r_pows: Vec<Op4> = (0..=4).map(|k| r.pow(k)).collect();
    let s_pows: Vec<Op4> = (0..=4).map(|l| shifted.pow(l)).collect();
    for total in 0..=8u32 {
        let k_hi = total.min(4);
        let k_lo = total.saturating_sub(4);
        for k in (k_lo..=k_hi).rev() {
            let l = total - k;
            if r_pows[k as usize].compose(&s_pows[l as usize]).is_zero() {
                return Some((k, l));
            }
        }
    }
    None
}

/// Splitting test: `R` diagonalizable with eigenvalues in `{0, −λ}` and both
/// eigenspaces closed under the Jordan product.
pub fn detect_splitting(r: &Op4, lambda: FieldElement) -> Option<Splitting> {
    let field = r.field();
    // x(x + λ) is squarefree for λ ≠ 0; for λ = 0 only R = 0 qualifies.
    if !r.compose(&r.shift(lambda)).is_zero() {
        return None;
    }
    let a_basis = r.kernel_image().ker_basis;
    let b_basis = r.shift(lambda).kernel_image().ker_basis;
    if a_basis.len() + b_basis.len() != 4 {
        return None;
    }
    let closed = |basis: &[Mat2]| closure_violation(field, basis, ProductKind::Jordan).is_none();
    (closed(&a_basis) && closed(&b_basis)).then_some(Splitting { a_basis, b_basis })
}

/// `H_{r,s}(x) = (x − 1)(x − 2)…(x − r) · x(x + 1)…(x + s − 1)`, integers
/// mapped into the field. `s = 0` drops the factor `x`.
pub fn hrs_poly(field: FieldSpec, r: u32, s: u32) -> UniPoly {
    let roots = (1..=r as i64)
        .map(|i| field.from_int(i))
        .chain((0..s as i64).map(|j| field.from_int(-j)));
    UniPoly::from_roots(field, roots)
}

/// Finds `(r, s)` with `H_{r,s} = p`; among the pairs of the right degree the
/// smallest `r` wins.
pub fn hrs_match(p: &UniPoly) -> Option<(u32, u32)> {
    if !p.is_monic() {
        return None;
    }
    let n = p.degree()? as u32;
    (0..=n)
        .map(|r| (r, n - r))
        .find(|&(r, s)| hrs_poly(p.field(), r, s) == *p)
}

/// Structure constants of a bilinear product on the matrix space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    pub table: [[Mat2; 4]; 4],
}

impl ProductTable {
    pub fn field(&self) -> FieldSpec {
        self.table[0][0].field()
    }

    pub fn entry(&self, a: usize, b: usize) -> &Mat2 {
        &self.table[a][b]
    }

    /// Bilinear extension of the table.
    pub fn mul(&self, u: &Mat2, v: &Mat2) -> Mat2 {
        let mut acc = Mat2::zero(self.field());
        for (a, ua) in u.entries().iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, vb) in v.entries().iter().enumerate() {
                if vb.is_zero() {
                    continue;
                }
                acc = acc + self.table[a][b].scale(*ua * *vb);
            }
        }
        acc
    }

    pub fn of_product(field: FieldSpec, product: ProductKind) -> ProductTable {
        let u = Mat2::units(field);
        ProductTable {
            table: [0, 1, 2, 3].map(|a| [0, 1, 2, 3].map(|b| product.apply(&u[a], &u[b]))),
        }
    }
}

/// `x*y = (R(x)y + xR(y) + yR(x) + R(y)x + λxy + λyx)/2` on basis pairs.
pub fn derived_product(r: &Op4, lambda: FieldElement) -> ProductTable {
    let field = r.field();
    let u = Mat2::units(field);
    let half = field.half();
    let entry = |a: usize, b: usize| {
        let (x, y) = (&u[a], &u[b]);
        let (rx, ry) = (r.apply(x), r.apply(y));
        (rx * *y + *x * ry + *y * rx + ry * *x + (*x * *y + *y * *x).scale(lambda)).scale(half)
    };
    ProductTable {
        table: [0, 1, 2, 3].map(|a| [0, 1, 2, 3].map(|b| entry(a, b))),
    }
}

fn distinct_permutations(t: [usize; 3]) -> Vec<[usize; 3]> {
    let [i, j, k] = t;
    let mut perms = vec![
        [i, j, k],
        [i, k, j],
        [j, i, k],
        [j, k, i],
        [k, i, j],
        [k, j, i],
    ];
    perms.sort_unstable();
    perms.dedup();
    perms
}

/// Commutativity plus the Jordan identity `((x*x)*y)*x = (x*x)*(y*x)`.
///
/// The Jordan identity is cubic in `x`; its coefficient on each monomial
/// `x_i x_j x_k` is the sum of the multilinear expansion over the distinct
/// orderings of `(i, j, k)`, which is exact in every characteristic.
pub fn check_jordan_axioms(t: &ProductTable) -> CheckResult {
    let field = t.field();
    for a in 0..4 {
        for b in 0..4 {
            if t.table[a][b] != t.table[b][a] {
                return CheckResult::fail(Witness {
                    args: vec![a, b],
                    lhs: t.table[a][b],
                    rhs: t.table[b][a],
                });
            }
        }
    }
    let u = Mat2::units(field);
    for i in 0..4 {
        for j in i..4 {
            for k in j..4 {
                for y in 0..4 {
                    let mut lhs = Mat2::zero(field);
                    let mut rhs = Mat2::zero(field);
                    for [p, q, s] in distinct_permutations([i, j, k]) {
                        let pq = t.table[p][q];
                        lhs = lhs + t.mul(&t.mul(&pq, &u[y]), &u[s]);
                        rhs = rhs + t.mul(&pq, &t.table[y][s]);
                    }
                    if lhs != rhs {
                        return CheckResult::fail(Witness {
                            args: vec![i, j, k, y],
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
    }
    CheckResult::pass()
}

/// The span `Im R` in echelon form.
pub fn image_basis(r: &Op4) -> Vec<Mat2> {
    echelon_basis(r.field(), r.images())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::matrix::{all_matrices, E11, E12, E21, E22};

    fn f3() -> FieldSpec {
        make_field(3, 1).unwrap()
    }

    fn a1(f: FieldSpec) -> Op4 {
        Op4::from_ints(f, [[0; 4], [0; 4], [0, 1, 0, 0], [0; 4]])
    }

    fn r1(f: FieldSpec) -> Op4 {
        Op4::from_ints(f, [[0, 1, 0, 0], [0; 4], [0; 4], [0, -1, 0, 0]])
    }

    fn r2(f: FieldSpec) -> Op4 {
        Op4::from_ints(f, [[0; 4], [1, 0, 0, 0], [1, 0, 0, 0], [0; 4]])
    }

    fn s1(f: FieldSpec) -> Op4 {
        Op4::from_ints(f, [[0; 4], [0, -1, 0, 0], [0, 1, 0, 0], [0; 4]])
    }

    fn prob(f: FieldSpec, p: ProductKind, i: IdentityKind, w: i64) -> Problem {
        Problem::new(p, i, f.from_int(w))
    }

    /// Independent oracle: integer 2×2 arithmetic mod p over every pair of
    /// matrices, no basis reduction, no library products.
    fn oracle_holds(r: &Op4, p: i64, product: ProductKind, ident: IdentityKind, lam: i64) -> bool {
        type M = [i64; 4];
        let md = |m: M| m.map(|x| x.rem_euclid(p));
        let mm = |a: M, b: M| {
            md([
                a[0] * b[0] + a[1] * b[2],
                a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2],
                a[2] * b[1] + a[3] * b[3],
            ])
        };
        let add = |a: M, b: M| md([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]);
        let sc = |c: i64, a: M| md(a.map(|x| x * c));
        let half = (p + 1) / 2;
        let prod = |a: M, b: M| match product {
            ProductKind::Associative => mm(a, b),
            ProductKind::Jordan => sc(half, add(mm(a, b), mm(b, a))),
            ProductKind::Commutator => add(mm(a, b), sc(-1, mm(b, a))),
        };
        let imgs: Vec<M> = r
            .images()
            .iter()
            .map(|m| m.entries().map(|e| e.coords()[0] as i64))
            .collect();
        let rop = |m: M| {
            (0..4).fold([0; 4], |acc, j| add(acc, sc(m[j], imgs[j])))
        };
        let all: Vec<M> = (0..p.pow(4))
            .map(|n| [n / p.pow(3) % p, n / p.pow(2) % p, n / p % p, n % p])
            .collect();
        for &x in &all {
            for &y in &all {
                let (rx, ry) = (rop(x), rop(y));
                let (lhs, arg) = match ident {
                    IdentityKind::Rb => (
                        prod(rx, ry),
                        add(add(prod(rx, y), prod(x, ry)), sc(lam, prod(x, y))),
                    ),
                    IdentityKind::Symmetrized => (
                        sc(2, prod(rx, ry)),
                        add(
                            add(add(prod(rx, y), prod(x, ry)), add(prod(y, rx), prod(ry, x))),
                            sc(lam, add(prod(x, y), prod(y, x))),
                        ),
                    ),
                };
                if lhs != rop(arg) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn check_identity_examples() {
        let f = f3();
        use IdentityKind::*;
        use ProductKind::*;
        assert!(satisfies(&a1(f), &prob(f, Associative, Rb, 0)));
        let res = check_identity(&r1(f), &prob(f, Associative, Rb, 0));
        assert!(!res.passed);
        let w = res.witness.unwrap();
        assert_eq!(w.args, vec![E11, E21]);
        assert!(w.lhs.is_zero());
        assert_eq!(w.rhs, Mat2::unit(f, E12));
        assert!(satisfies(&r1(f), &prob(f, Jordan, Rb, 0)));
        assert!(satisfies(&r2(f), &prob(f, Associative, Symmetrized, 0)));
        assert!(satisfies(&s1(f), &prob(f, Associative, Symmetrized, 1)));
    }

    #[test]
    fn basis_check_agrees_with_full_pair_oracle() {
        let f = f3();
        use IdentityKind::*;
        use ProductKind::*;
        let ops = [a1(f), r1(f), r2(f), s1(f), Op4::identity(f), Op4::zero(f)];
        for r in &ops {
            for product in [Associative, Jordan, Commutator] {
                for ident in [Rb, Symmetrized] {
                    for lam in [0, 1] {
                        assert_eq!(
                            satisfies(r, &prob(f, product, ident, lam)),
                            oracle_holds(r, 3, product, ident, lam),
                            "{r} {product} {ident} {lam}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn witness_reevaluates_as_violation() {
        let f = make_field(5, 1).unwrap();
        let r = Op4::from_ints(f, [[1, 2, 0, 0], [0, 0, 3, 0], [1, 0, 0, 4], [0, 1, 1, 0]]);
        let p = prob(f, ProductKind::Jordan, IdentityKind::Rb, 1);
        let w = check_identity(&r, &p).witness.unwrap();
        let (l, rr) = identity_sides(&r, &p, w.args[0], w.args[1]);
        assert_eq!((l, rr), (w.lhs, w.rhs));
        assert_ne!(l, rr);
    }

    #[test]
    fn structural_report_examples() {
        let f = f3();
        let rep = structural_report(&r2(f), f.zero());
        assert!(!rep.unit_in_image);
        // Rank one: the kernel is spanned by e11, e22 and e12 - e21.
        assert_eq!(rep.ker_dim, 3);
        assert!(rep.image_of_unit.is_zero());
        assert_eq!(rep.nilpotency_exponents, Some((2, 0)));

        let rep = structural_report(&s1(f), f.one());
        let sp = rep.splitting.expect("S1 splits");
        let h2 = echelon_basis(
            f,
            &[
                Mat2::unit(f, E11),
                Mat2::unit(f, E22),
                Mat2::unit(f, E12) + Mat2::unit(f, E21),
            ],
        );
        assert_eq!(sp.a_basis, h2);
        assert_eq!(sp.b_basis, vec![Mat2::unit(f, E12)]);

        let rep = structural_report(&Op4::zero(f), f.one());
        let sp = rep.splitting.unwrap();
        assert_eq!(sp.a_basis, Mat2::units(f).to_vec());
        assert!(sp.b_basis.is_empty());
    }

    #[test]
    fn hrs_examples() {
        let f = f3();
        let x = UniPoly::new(f, vec![f.zero(), f.one()]);
        assert_eq!(hrs_match(&x), Some((0, 1)));
        let xx1 = UniPoly::from_roots(f, [f.zero(), f.one()]);
        assert_eq!(hrs_match(&xx1), Some((1, 1)));
        // x² + 1 has no roots in F_3
        let irr = UniPoly::new(f, vec![f.one(), f.zero(), f.one()]);
        assert_eq!(hrs_match(&irr), None);
        assert_eq!(hrs_match(&UniPoly::one(f)), Some((0, 0)));
    }

    #[test]
    fn derived_product_examples() {
        let f = f3();
        let t = derived_product(&r2(f), f.zero());
        let half = f.half();
        let expected = (Mat2::unit(f, E12) + Mat2::unit(f, E21)).scale(half);
        assert_eq!(*t.entry(E12, E21), expected);
        assert!(check_jordan_axioms(&t).passed);

        let t0 = derived_product(&Op4::zero(f), f.one());
        assert_eq!(t0, ProductTable::of_product(f, ProductKind::Jordan));
        assert!(check_jordan_axioms(&t0).passed);
    }

    #[test]
    fn jordan_axioms_reject_associative_table() {
        let f = f3();
        let t = ProductTable::of_product(f, ProductKind::Associative);
        let res = check_jordan_axioms(&t);
        assert!(!res.passed);
        assert_eq!(res.witness.unwrap().args.len(), 2);
    }

    #[test]
    fn jordan_axioms_agree_with_pointwise_check_f3() {
        // Over F_3 the multilinear check and the pointwise identity on all
        // 81 × 81 pairs must agree for the Jordan product.
        let f = f3();
        let t = ProductTable::of_product(f, ProductKind::Jordan);
        let mats: Vec<Mat2> = all_matrices(f).collect();
        let pointwise = mats.iter().all(|x| {
            let xx = t.mul(x, x);
            mats.iter()
                .all(|y| t.mul(&t.mul(&xx, y), x) == t.mul(&xx, &t.mul(y, x)))
        });
        assert!(pointwise);
        assert!(check_jordan_axioms(&t).passed);
    }

    #[test]
    fn image_commutes_examples() {
        let f = f3();
        assert!(image_commutes(&r2(f)));
        assert!(!image_commutes(&Op4::identity(f)));
        assert!(image_commutes(&Op4::zero(f)));
    }
}

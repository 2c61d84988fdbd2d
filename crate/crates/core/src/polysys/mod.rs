//! Integer polynomial systems in the 16 operator coefficients.
//!
//! Variable `4j + c` is the `e_c` coordinate of `R(e_j)`, named
//! `a11 … a22` for `R(e11)`, `b11 … b22` for `R(e12)`, `c..` for `R(e21)` and
//! `d..` for `R(e22)`. Variable 16 (`lam`) stands for the weight when it is
//! kept symbolic.
//!
//! Coefficients are integers; reduction mod `p` happens when a polynomial is
//! compiled for a field. Jordan systems use the doubled product `ab + ba`,
//! which scales every generated polynomial by 2 and leaves zero sets
//! unchanged in odd characteristic.

mod export;
mod parse;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::identities::IdentityKind;
use crate::matrix::ProductKind;

pub use export::{export_system, ExportFormat};
pub use parse::parse_poly;

pub const NVARS: usize = 17;
pub const LAMBDA_VAR: usize = 16;

pub type Monomial = [u8; NVARS];

const LETTERS: [char; 4] = ['a', 'b', 'c', 'd'];
const COORDS: [&str; 4] = ["11", "12", "21", "22"];

pub fn var_name(i: usize) -> String {
    if i == LAMBDA_VAR {
        "lam".to_string()
    } else {
        format!("{}{}", LETTERS[i / 4], COORDS[i % 4])
    }
}

pub fn var_index(name: &str) -> Option<usize> {
    (0..NVARS).find(|&i| var_name(i) == name)
}

/// Sparse polynomial with integer coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, i64>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn constant(c: i64) -> MultiPoly {
        MultiPoly::monomial(c, [0; NVARS])
    }

    pub fn var(i: usize) -> MultiPoly {
        let mut e = [0; NVARS];
        e[i] = 1;
        MultiPoly::monomial(1, e)
    }

    pub fn monomial(c: i64, exps: Monomial) -> MultiPoly {
        let mut p = MultiPoly::zero();
        p.add_term(exps, c);
        p
    }

    fn add_term(&mut self, exps: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(exps).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Bit `i` set iff variable `i` occurs.
    pub fn var_mask(&self) -> u32 {
        self.terms.keys().fold(0, |acc, m| {
            m.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(acc, |a, (i, _)| a | (1 << i))
        })
    }

    pub fn scale(&self, c: i64) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, k) in self.terms() {
            out.add_term(*m, k * c);
        }
        out
    }

    /// Replaces each bound variable by its polynomial.
    pub fn substitute(&self, subs: &BTreeMap<usize, MultiPoly>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms() {
            let mut term = MultiPoly::constant(c);
            let mut rest = [0u8; NVARS];
            for (i, &e) in m.iter().enumerate() {
                match subs.get(&i) {
                    Some(s) => (0..e).for_each(|_| term = &term * s),
                    None => rest[i] = e,
                }
            }
            out = &out + &(&term * &MultiPoly::monomial(1, rest));
        }
        out
    }

    /// Maps variable indices through `perm`.
    pub fn permute_vars(&self, perm: &[usize; NVARS]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms() {
            let mut e = [0u8; NVARS];
            for (i, &x) in m.iter().enumerate() {
                e[perm[i]] += x;
            }
            out.add_term(e, c);
        }
        out
    }

    /// Evaluation over a field; `point[i]` is the value of variable `i`.
    pub fn eval(&self, field: FieldSpec, point: &[FieldElement; NVARS]) -> FieldElement {
        let mut acc = field.zero();
        for (m, c) in self.terms() {
            let mut t = field.from_int(c);
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= point[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn compile(&self, field: FieldSpec, lambda: Option<FieldElement>) -> CompiledPoly {
        CompiledPoly::new(self, field, lambda)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(-1)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in rhs.terms() {
                let mut e = *ma;
                for (x, y) in e.iter_mut().zip(mb) {
                    *x += y;
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&export::render_poly(self))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

/// A polynomial reduced into a field, flattened for fast evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
    // term t uses vars[offsets[t]..offsets[t + 1]], with repetition
    offsets: Vec<u16>,
    vars: Vec<u8>,
    mask: u32,
}

impl CompiledPoly {
    fn new(p: &MultiPoly, field: FieldSpec, lambda: Option<FieldElement>) -> CompiledPoly {
        let mut merged: BTreeMap<Vec<u8>, FieldElement> = BTreeMap::new();
        for (m, c) in p.terms() {
            let mut coeff = field.from_int(c);
            let mut vars = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                match (i == LAMBDA_VAR, lambda) {
                    (true, Some(l)) => coeff *= l.pow(e as u64),
                    _ => vars.extend(std::iter::repeat_n(i as u8, e as usize)),
                }
            }
            *merged.entry(vars).or_insert(field.zero()) += coeff;
        }
        let mut out = CompiledPoly {
            field,
            coeffs: Vec::new(),
            offsets: vec![0],
            vars: Vec::new(),
            mask: 0,
        };
        for (vars, c) in merged {
            if c.is_zero() {
                continue;
            }
            for &v in &vars {
                out.mask |= 1 << v;
            }
            out.coeffs.push(c);
            out.vars.extend(vars);
            out.offsets.push(out.vars.len() as u16);
        }
        out
    }

    /// `Σ c·x_v` with field coefficients.
    pub fn linear(field: FieldSpec, terms: &[(usize, FieldElement)]) -> CompiledPoly {
        let mut out = CompiledPoly {
            field,
            coeffs: Vec::new(),
            offsets: vec![0],
            vars: Vec::new(),
            mask: 0,
        };
        for &(v, c) in terms.iter().filter(|(_, c)| !c.is_zero()) {
            out.mask |= 1 << v;
            out.coeffs.push(c);
            out.vars.push(v as u8);
            out.offsets.push(out.vars.len() as u16);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Bit `i` set iff variable `i` occurs after reduction.
    pub fn var_mask(&self) -> u32 {
        self.mask
    }

    #[inline]
    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        let mut acc = self.field.zero();
        for (t, &c) in self.coeffs.iter().enumerate() {
            let (lo, hi) = (self.offsets[t] as usize, self.offsets[t + 1] as usize);
            let mut v = c;
            for &i in &self.vars[lo..hi] {
                v *= point[i as usize];
            }
            acc += v;
        }
        acc
    }

    #[inline]
    pub fn vanishes(&self, point: &[FieldElement]) -> bool {
        self.is_zero() || self.eval(point).is_zero()
    }
}

/// How the weight enters a generated system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightSpec {
    Const(i64),
    Symbolic,
}

/// Linear substitutions applied to the coefficients before expansion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ansatz {
    subs: BTreeMap<usize, MultiPoly>,
}

impl Ansatz {
    pub fn new() -> Ansatz {
        Ansatz::default()
    }

    /// Binds `var` to `value`; `value` must be at most linear and mention no bound variable.
    pub fn bind(mut self, var: usize, value: MultiPoly) -> Result<Ansatz> {
        if self.subs.contains_key(&var) {
            return Err(Error::InconsistentAnsatz(format!(
                "{} bound twice",
                var_name(var)
            )));
        }
        if value.total_degree() > 1 {
            return Err(Error::InconsistentAnsatz(format!(
                "{} bound to a nonlinear expression",
                var_name(var)
            )));
        }
        let mask = value.var_mask();
        let bound = self.subs.keys().fold(1u32 << var, |m, &v| m | (1 << v));
        if mask & bound != 0 {
            return Err(Error::InconsistentAnsatz(format!(
                "{} bound to an expression in bound variables",
                var_name(var)
            )));
        }
        if self.subs.values().any(|s| s.var_mask() & (1 << var) != 0) {
            return Err(Error::InconsistentAnsatz(format!(
                "{} already used in another binding",
                var_name(var)
            )));
        }
        self.subs.insert(var, value);
        Ok(self)
    }

    /// Every image lies in `span(e11, e12)`.
    pub fn upper_row() -> Ansatz {
        [2, 3, 6, 7, 10, 11, 14, 15]
            .into_iter()
            .try_fold(Ansatz::new(), |a, v| a.bind(v, MultiPoly::zero()))
            .expect("disjoint bindings")
    }

    pub fn by_name(name: &str) -> Result<Ansatz> {
        match name {
            "none" => Ok(Ansatz::new()),
            "eq3" | "upper-row" => Ok(Ansatz::upper_row()),
            other => Err(Error::InvalidOptions(format!("unknown ansatz '{other}'"))),
        }
    }

    pub fn substitutions(&self) -> &BTreeMap<usize, MultiPoly> {
        &self.subs
    }

    pub fn is_bound(&self, var: usize) -> bool {
        self.subs.contains_key(&var)
    }

    /// Operator coefficients left free, in index order.
    pub fn free_vars(&self) -> Vec<usize> {
        (0..16).filter(|v| !self.is_bound(*v)).collect()
    }
}

type SymMat = [MultiPoly; 4];

fn sym_const(idx: usize) -> SymMat {
    let mut m: SymMat = Default::default();
    m[idx] = MultiPoly::constant(1);
    m
}

fn sym_add(a: &SymMat, b: &SymMat) -> SymMat {
    [0, 1, 2, 3].map(|i| &a[i] + &b[i])
}

fn sym_scale(a: &SymMat, s: &MultiPoly) -> SymMat {
    [0, 1, 2, 3].map(|i| &a[i] * s)
}

fn sym_assoc(a: &SymMat, b: &SymMat) -> SymMat {
    let e = |i: usize, j: usize| &a[i] * &b[j];
    [
        &e(0, 0) + &e(1, 2),
        &e(0, 1) + &e(1, 3),
        &e(2, 0) + &e(3, 2),
        &e(2, 1) + &e(3, 3),
    ]
}

/// The integral product: associative, `ab + ba`, or `ab − ba`.
fn sym_product(kind: ProductKind, a: &SymMat, b: &SymMat) -> SymMat {
    match kind {
        ProductKind::Associative => sym_assoc(a, b),
        ProductKind::Jordan => sym_add(&sym_assoc(a, b), &sym_assoc(b, a)),
        ProductKind::Commutator => {
            let ba = sym_assoc(b, a);
            let ab = sym_assoc(a, b);
            [0, 1, 2, 3].map(|i| &ab[i] - &ba[i])
        }
    }
}

/// The symbolic operator applied to a symbolic matrix.
fn sym_apply(images: &[SymMat; 4], z: &SymMat) -> SymMat {
    let mut out: SymMat = Default::default();
    for (w, zw) in z.iter().enumerate() {
        if !zw.is_zero() {
            out = sym_add(&out, &sym_scale(&images[w], zw));
        }
    }
    out
}

/// One polynomial per basis pair and result coordinate, in row-major pair
/// order; zero polynomials and exact duplicates dropped.
pub fn generate_system(
    product: ProductKind,
    identity: IdentityKind,
    weight: WeightSpec,
    ansatz: Option<&Ansatz>,
) -> Vec<MultiPoly> {
    let subs = ansatz.map(|a| a.substitutions().clone()).unwrap_or_default();
    let images: [SymMat; 4] =
        [0, 1, 2, 3].map(|j| [0, 1, 2, 3].map(|c| MultiPoly::var(4 * j + c).substitute(&subs)));
    let lam = match weight {
        WeightSpec::Const(c) => MultiPoly::constant(c),
        WeightSpec::Symbolic => MultiPoly::var(LAMBDA_VAR),
    };
    let prod = |a: &SymMat, b: &SymMat| sym_product(product, a, b);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let (x, y) = (sym_const(i), sym_const(j));
            let (rx, ry) = (&images[i], &images[j]);
            let (lhs, arg) = match identity {
                IdentityKind::Rb => {
                    let arg = sym_add(
                        &sym_add(&prod(rx, &y), &prod(&x, ry)),
                        &sym_scale(&prod(&x, &y), &lam),
                    );
                    (prod(rx, ry), arg)
                }
                IdentityKind::Symmetrized => {
                    let mut arg = sym_add(&prod(rx, &y), &prod(&x, ry));
                    arg = sym_add(&arg, &sym_add(&prod(&y, rx), &prod(ry, &x)));
                    let xy_yx = sym_add(&prod(&x, &y), &prod(&y, &x));
                    arg = sym_add(&arg, &sym_scale(&xy_yx, &lam));
                    (sym_scale(&prod(rx, ry), &MultiPoly::constant(2)), arg)
                }
            };
            let rhs = sym_apply(&images, &arg);
            for c in 0..4 {
                let p = &lhs[c] - &rhs[c];
                if !p.is_zero() && seen.insert(p.clone()) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// The weight-0 Jordan system under the upper-row ansatz as stated in the
/// literature: seven quadratics plus `a11 = −b12 = −d11`.
pub const LITERATURE_WEIGHT0_SYSTEM: [&str; 9] = [
    "a11 + b12",
    "a11 + d11",
    "d11^2 + b11*a12",
    "b11*c12 - c11*d11",
    "d11*c12 + a12*(d12 + c11 + a12)",
    "a11*(d12 + a12)",
    "b11*(d12 + a12)",
    "c12*(d12 + a12)",
    "(d12 + a12)*(d12 - a12 - c11)",
];

/// Number of leading linear relations in [`LITERATURE_WEIGHT0_SYSTEM`].
pub const LITERATURE_LINEAR_RELATIONS: usize = 2;

pub fn literature_weight0_system() -> Vec<MultiPoly> {
    LITERATURE_WEIGHT0_SYSTEM
        .iter()
        .map(|s| parse_poly(s).expect("well-formed built-in system"))
        .collect()
}

/// Result of comparing two vanishing loci.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LocusComparison {
    pub equal: bool,
    pub points: u64,
    pub first_count: u64,
    pub second_count: u64,
    pub first_only: u64,
    pub second_only: u64,
    /// Smallest point (lexicographic in `vars` order) in exactly one locus.
    pub counterexample: Option<Vec<(String, FieldElement)>>,
}

impl LocusComparison {
    /// Locus of the first system ⊆ locus of the second.
    pub fn first_in_second(&self) -> bool {
        self.first_only == 0
    }

    pub fn second_in_first(&self) -> bool {
        self.second_only == 0
    }
}

fn check_vars(systems: &[&[MultiPoly]], vars: &[usize]) -> Result<()> {
    let allowed = vars.iter().fold(0u32, |m, &v| m | (1 << v));
    for sys in systems {
        for p in sys.iter() {
            if p.var_mask() & !allowed != 0 {
                return Err(Error::InvalidOptions(format!(
                    "polynomial {p} uses variables outside the active list"
                )));
            }
        }
    }
    Ok(())
}

fn point_count(field: FieldSpec, nvars: usize, budget: u64) -> Result<u64> {
    let q = field.order() as u64;
    let total = (0..nvars).try_fold(1u64, |acc, _| acc.checked_mul(q));
    match total {
        Some(t) if t <= budget => Ok(t),
        _ => Err(Error::BudgetExceeded {
            budget,
            what: format!("{q}^{nvars} evaluation points"),
        }),
    }
}

/// Runs `visit` on every assignment of `vars` over `field`, in parallel over
/// the first variable; each block's results are folded with `reduce`.
fn sweep<T: Send>(
    field: FieldSpec,
    vars: &[usize],
    init: impl Fn() -> T + Sync,
    visit: impl Fn(&mut T, &[FieldElement; NVARS]) + Sync,
    reduce: impl Fn(T, T) -> T + Sync + Send,
) -> T {
    let q = field.order();
    let n = vars.len();
    let elems: Vec<FieldElement> = field.elements().collect();
    let block = |first: usize| {
        let mut acc = init();
        let mut point = [field.zero(); NVARS];
        let mut digits = vec![0usize; n];
        if n > 0 {
            digits[0] = first;
            point[vars[0]] = elems[first];
        }
        loop {
            visit(&mut acc, &point);
            // odometer over positions 1..n, last fastest
            let mut k = n;
            loop {
                if k <= 1 {
                    return acc;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < q {
                    point[vars[k]] = elems[digits[k]];
                    break;
                }
                digits[k] = 0;
                point[vars[k]] = elems[0];
            }
        }
    };
    if n == 0 {
        return block(0);
    }
    (0..q)
        .into_par_iter()
        .map(block)
        .reduce_with(reduce)
        .expect("field is nonempty")
}

fn compile_all(sys: &[MultiPoly], field: FieldSpec) -> Vec<CompiledPoly> {
    sys.iter().map(|p| p.compile(field, None)).collect()
}

/// Exhaustively compares the zero sets of two systems over the listed variables.
pub fn solution_sets_equal(
    first: &[MultiPoly],
    second: &[MultiPoly],
    field: FieldSpec,
    vars: &[usize],
    budget: u64,
) -> Result<LocusComparison> {
    check_vars(&[first, second], vars)?;
    let points = point_count(field, vars.len(), budget)?;
    let (c1, c2) = (compile_all(first, field), compile_all(second, field));
    #[derive(Default)]
    struct Acc {
        first: u64,
        second: u64,
        first_only: u64,
        second_only: u64,
        cex: Option<Vec<FieldElement>>,
    }
    let acc = sweep(
        field,
        vars,
        Acc::default,
        |acc, pt| {
            let in1 = c1.iter().all(|p| p.vanishes(pt));
            let in2 = c2.iter().all(|p| p.vanishes(pt));
            acc.first += in1 as u64;
            acc.second += in2 as u64;
            if in1 != in2 {
                if in1 {
                    acc.first_only += 1;
                } else {
                    acc.second_only += 1;
                }
                if acc.cex.is_none() {
                    acc.cex = Some(vars.iter().map(|&v| pt[v]).collect());
                }
            }
        },
        |a, b| Acc {
            first: a.first + b.first,
            second: a.second + b.second,
            first_only: a.first_only + b.first_only,
            second_only: a.second_only + b.second_only,
            cex: a.cex.or(b.cex),
        },
    );
    Ok(LocusComparison {
        equal: acc.first_only == 0 && acc.second_only == 0,
        points,
        first_count: acc.first,
        second_count: acc.second,
        first_only: acc.first_only,
        second_only: acc.second_only,
        counterexample: acc
            .cex
            .map(|pt| vars.iter().map(|&v| var_name(v)).zip(pt).collect()),
    })
}

/// Size of the zero set over the listed variables.
pub fn count_solutions(sys: &[MultiPoly], field: FieldSpec, vars: &[usize], budget: u64) -> Result<u64> {
    check_vars(&[sys], vars)?;
    point_count(field, vars.len(), budget)?;
    let compiled = compile_all(sys, field);
    Ok(sweep(
        field,
        vars,
        || 0u64,
        |n, pt| *n += compiled.iter().all(|p| p.vanishes(pt)) as u64,
        |a, b| a + b,
    ))
}

/// Polynomials with their solution counts over a few fields.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SystemReport {
    pub polynomials: Vec<String>,
    pub variable_count: usize,
    pub solution_counts: Vec<(String, u64)>,
}

/// Variable permutation induced by transpose (swaps the `12` and `21` roles).
pub fn transpose_permutation() -> [usize; NVARS] {
    let swap = [0, 2, 1, 3];
    let mut perm = [0; NVARS];
    for j in 0..4 {
        for c in 0..4 {
            perm[4 * j + c] = 4 * swap[j] + swap[c];
        }
    }
    perm[LAMBDA_VAR] = LAMBDA_VAR;
    perm
}

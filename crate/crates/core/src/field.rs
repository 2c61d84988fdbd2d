//! Prime fields `F_p` and their quadratic extensions `F_{p^2}`, odd `p` only.
//!
//! Every field is built once and interned: a [`FieldSpec`] is a cheap copyable
//! handle to precomputed addition, multiplication, inverse and square-root
//! tables, so the exhaustive searches never divide at runtime.
//!
//! Elements of `F_{p^2}` are `c0 + c1·w` with `w² = nonresidue`. Element indices
//! follow the lexicographic order of the coordinate pair `(c0, c1)`, which makes
//! the derived ordering on [`FieldElement`] the canonical coordinate order.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest supported field order. Tables are `q²` entries each.
pub const MAX_ORDER: u64 = 1024;

const NO_ROOT: u16 = u16::MAX;

struct FieldData {
    p: u32,
    deg: u32,
    nonresidue: u32,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    sqrt: Vec<u16>,
    coords: Vec<[u32; 2]>,
    half: u16,
}

/// Handle to an interned finite field of odd characteristic.
#[derive(Clone, Copy)]
pub struct FieldSpec(&'static FieldData);

static FIELDS: OnceLock<Mutex<Vec<&'static FieldData>>> = OnceLock::new();

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds (or fetches the interned copy of) `F_{p^deg}`.
///
/// For `deg = 2` the smallest quadratic non-residue modulo `p` is used to
/// build the extension.
pub fn make_field(p: u32, deg: u32) -> Result<FieldSpec> {
    if p == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if deg != 1 && deg != 2 {
        return Err(Error::UnsupportedDegree(deg));
    }
    let order = (p as u64).pow(deg);
    if order > MAX_ORDER {
        return Err(Error::FieldTooLarge {
            order,
            max: MAX_ORDER,
        });
    }
    let registry = FIELDS.get_or_init(|| Mutex::new(Vec::new()));
    let mut fields = registry.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(found) = fields.iter().find(|f| f.p == p && f.deg == deg) {
        return Ok(FieldSpec(found));
    }
    let data: &'static FieldData = Box::leak(Box::new(build_tables(p, deg)));
    fields.push(data);
    Ok(FieldSpec(data))
}

fn smallest_nonresidue(p: u32) -> u32 {
    let squares: Vec<bool> = {
        let mut s = vec![false; p as usize];
        for x in 0..p as u64 {
            s[((x * x) % p as u64) as usize] = true;
        }
        s
    };
    (2..p).find(|&n| !squares[n as usize]).unwrap_or(0)
}

fn build_tables(p: u32, deg: u32) -> FieldData {
    let nonresidue = if deg == 2 { smallest_nonresidue(p) } else { 0 };
    let q = (p as usize).pow(deg);
    let pp = p as u64;
    let coords: Vec<[u32; 2]> = (0..q)
        .map(|i| {
            if deg == 1 {
                [i as u32, 0]
            } else {
                [(i / p as usize) as u32, (i % p as usize) as u32]
            }
        })
        .collect();
    let index = |c: [u64; 2]| -> u16 {
        if deg == 1 {
            (c[0] % pp) as u16
        } else {
            ((c[0] % pp) * pp + (c[1] % pp)) as u16
        }
    };
    let mut add = vec![0u16; q * q];
    let mut mul = vec![0u16; q * q];
    for a in 0..q {
        let [a0, a1] = coords[a].map(u64::from);
        for b in 0..q {
            let [b0, b1] = coords[b].map(u64::from);
            add[a * q + b] = index([a0 + b0, a1 + b1]);
            let c0 = a0 * b0 + (nonresidue as u64) * ((a1 * b1) % pp);
            let c1 = a0 * b1 + a1 * b0;
            mul[a * q + b] = index([c0, c1]);
        }
    }
    let neg: Vec<u16> = (0..q)
        .map(|a| {
            let [a0, a1] = coords[a].map(u64::from);
            index([(pp - a0) % pp, (pp - a1) % pp])
        })
        .collect();
    let one = index([1, 0]);
    let mut inv = vec![0u16; q];
    for a in 1..q {
        inv[a] = (1..q)
            .find(|&b| mul[a * q + b] == one)
            .map(|b| b as u16)
            .unwrap_or(0);
    }
    // Ascending index is lexicographic coordinate order, so the first root
    // found is the lexicographically smaller of ±y.
    let mut sqrt = vec![NO_ROOT; q];
    for y in 0..q {
        let sq = mul[y * q + y] as usize;
        if sqrt[sq] == NO_ROOT {
            sqrt[sq] = y as u16;
        }
    }
    let half = index([pp.div_ceil(2), 0]);
    FieldData {
        p,
        deg,
        nonresidue,
        q,
        add,
        mul,
        neg,
        inv,
        sqrt,
        coords,
        half,
    }
}

impl FieldSpec {
    /// Same as [`make_field`].
    pub fn new(p: u32, deg: u32) -> Result<Self> {
        make_field(p, deg)
    }

    pub fn prime(p: u32) -> Result<Self> {
        make_field(p, 1)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn deg(&self) -> u32 {
        self.0.deg
    }

    /// The non-residue adjoined as `w²` for degree-2 fields.
    pub fn nonresidue(&self) -> Option<u32> {
        (self.0.deg == 2).then_some(self.0.nonresidue)
    }

    /// Number of elements `q = p^deg`.
    pub fn order(&self) -> usize {
        self.0.q
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { spec: *self, idx: 0 }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// `1/2`, precomputed.
    pub fn half(&self) -> FieldElement {
        FieldElement {
            spec: *self,
            idx: self.0.half,
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        let r = n.rem_euclid(p) as u32;
        self.element_at_coords(r, 0)
    }

    /// Element `c0 + c1·w`; `c1` must be zero for prime fields.
    pub fn from_coords(&self, c0: u64, c1: u64) -> Result<FieldElement> {
        let p = self.0.p;
        for v in [c0, c1] {
            if v >= p as u64 {
                return Err(Error::CoordinateOutOfRange { value: v, p });
            }
        }
        if self.0.deg == 1 && c1 != 0 {
            return Err(Error::CoordinateOutOfRange { value: c1, p });
        }
        Ok(self.element_at_coords(c0 as u32, c1 as u32))
    }

    fn element_at_coords(&self, c0: u32, c1: u32) -> FieldElement {
        let idx = if self.0.deg == 1 {
            c0
        } else {
            c0 * self.0.p + c1
        };
        FieldElement {
            spec: *self,
            idx: idx as u16,
        }
    }

    /// Element with the given position in canonical order (`0..order()`).
    pub fn element(&self, index: usize) -> FieldElement {
        assert!(index < self.0.q, "field index out of range");
        FieldElement {
            spec: *self,
            idx: index as u16,
        }
    }

    /// All elements in canonical (lexicographic coordinate) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        let spec = *self;
        (0..self.0.q).map(move |i| FieldElement {
            spec,
            idx: i as u16,
        })
    }

    /// All nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> + Clone {
        self.elements().skip(1)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.deg.hash(state);
    }
}

impl PartialOrd for FieldSpec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldSpec {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.p, self.0.deg).cmp(&(other.0.p, other.0.deg))
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.deg == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.deg)
        }
    }
}

/// An element of a [`FieldSpec`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    spec: FieldSpec,
    idx: u16,
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// Position in canonical order; a dense key for tables.
    pub fn index(&self) -> usize {
        self.idx as usize
    }

    /// Canonical coordinates `[c0, c1]` (`c1 = 0` over a prime field).
    pub fn coords(&self) -> [u32; 2] {
        self.spec.0.coords[self.idx as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.idx == 0
    }

    pub fn is_one(&self) -> bool {
        self.coords() == [1, 0]
    }

    pub fn inv(&self) -> Option<FieldElement> {
        (!self.is_zero()).then(|| FieldElement {
            spec: self.spec,
            idx: self.spec.0.inv[self.idx as usize],
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = *self;
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// A square root, choosing the lexicographically smaller of `±y`.
    pub fn sqrt(&self) -> Option<FieldElement> {
        let r = self.spec.0.sqrt[self.idx as usize];
        (r != NO_ROOT).then_some(FieldElement {
            spec: self.spec,
            idx: r,
        })
    }

    #[inline]
    fn table_op(self, rhs: FieldElement, table: &[u16]) -> FieldElement {
        debug_assert!(self.spec == rhs.spec, "mixed-field arithmetic");
        let q = self.spec.0.q;
        FieldElement {
            spec: self.spec,
            idx: table[self.idx as usize * q + rhs.idx as usize],
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.table_op(rhs, &self.spec.0.add)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.table_op(rhs, &self.spec.0.mul)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> FieldElement {
        FieldElement {
            spec: self.spec,
            idx: self.spec.0.neg[self.idx as usize],
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + (-rhs)
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: FieldElement) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = *self * rhs;
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c0, c1] = self.coords();
        match (c0, c1) {
            (c0, 0) => write!(f, "{c0}"),
            (0, c1) => write!(f, "{c1}w"),
            (c0, c1) => write!(f, "{c0}+{c1}w"),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<FieldSpec> {
        vec![make_field(3, 1).unwrap(), make_field(3, 2).unwrap()]
    }

    #[test]
    fn construction_examples() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(f3.order(), 3);
        assert_eq!(f3.nonresidue(), None);
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.order(), 9);
        assert_eq!(f9.nonresidue(), Some(2));
        assert_eq!(make_field(2, 1).unwrap_err(), Error::CharacteristicTwo);
        assert_eq!(make_field(9, 1).unwrap_err(), Error::NotPrime(9));
        assert_eq!(make_field(5, 3).unwrap_err(), Error::UnsupportedDegree(3));
        assert!(matches!(
            make_field(1031, 1),
            Err(Error::FieldTooLarge { .. })
        ));
        // interned
        assert_eq!(make_field(3, 1).unwrap(), f3);
        assert_ne!(f3, f9);
    }

    #[test]
    fn nonresidues_for_small_primes() {
        // smallest non-squares: 5 -> 2, 7 -> 3, 11 -> 2, 13 -> 2, 17 -> 3
        for (p, n) in [(5, 2), (7, 3), (11, 2), (13, 2), (17, 3)] {
            assert_eq!(make_field(p, 2).unwrap().nonresidue(), Some(n));
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_fields() {
            let zero = f.zero();
            let one = f.one();
            for a in f.elements() {
                assert_eq!(a + zero, a);
                assert_eq!(a * one, a);
                assert_eq!(a + (-a), zero);
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), one);
                }
                for b in f.elements() {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for c in f.elements() {
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                    }
                }
            }
            assert!(zero.inv().is_none());
        }
    }

    #[test]
    fn f9_has_no_zero_divisors() {
        let f9 = make_field(3, 2).unwrap();
        for a in f9.units() {
            for b in f9.units() {
                assert!(!(a * b).is_zero());
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(f3.one().sqrt(), Some(f3.one()));
        // squares in F_3 are 0 and 1 only
        assert_eq!(f3.from_int(2).sqrt(), None);
        let f9 = make_field(3, 2).unwrap();
        let two = f9.from_int(2);
        let y = two.sqrt().expect("every element of F_3 is a square in F_9");
        assert_eq!(y * y, two);
    }

    #[test]
    fn sqrt_recovers_up_to_sign() {
        for f in all_fields() {
            for x in f.elements() {
                let y = (x * x).sqrt().unwrap();
                assert!(y == x || y == -x);
                assert!(y <= -y);
            }
        }
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let f9 = make_field(3, 2).unwrap();
        let coords: Vec<[u32; 2]> = f9.elements().map(|e| e.coords()).collect();
        let mut sorted = coords.clone();
        sorted.sort();
        assert_eq!(coords, sorted);
        assert_eq!(f9.from_coords(1, 2).unwrap().coords(), [1, 2]);
        assert!(f9.from_coords(3, 0).is_err());
        assert!(make_field(3, 1).unwrap().from_coords(1, 1).is_err());
    }

    #[test]
    fn half_and_from_int() {
        for p in [3, 5, 7, 11] {
            let f = make_field(p, 1).unwrap();
            assert_eq!(f.half() * f.from_int(2), f.one());
            assert_eq!(f.from_int(-1), -f.one());
            assert_eq!(f.from_int(p as i64 + 2), f.from_int(2));
        }
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = make_field(5, 2).unwrap();
        for a in f.elements() {
            let mut acc = f.one();
            for e in 0..30u64 {
                assert_eq!(a.pow(e), acc);
                acc *= a;
            }
        }
    }
}

//! Finite fields GF(p^l) realized as GF(p)[X] modulo a fixed monic irreducible.
//!
//! A field is built once per `(p, l)` and cached for the life of the process.
//! Elements are plain integer encodings `Σ digits[i]·p^i`; all arithmetic goes
//! through the owning [`FieldSpec`], which carries log/exp tables so that
//! multiplication is two lookups.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on `p^l` for any constructed field.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

/// Fields up to this order get a full addition table.
const ADD_TABLE_MAX: u32 = 256;

/// A field element, identified by its canonical encoding in `[0, p^l)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub u32);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    pub fn encoding(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct FieldInner {
    p: u32,
    l: u32,
    order: u32,
    /// Ascending coefficients, length `l + 1`, monic.
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[i] = g^i` for `i < 2(q-1)`, doubled so sums of logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// A concrete finite field GF(p^l). Cloning is cheap (shared tables).
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.l == other.inner.l
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.p.hash(state);
        self.inner.l.hash(state);
        self.inner.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self.descriptor())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.l)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.descriptor())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        FieldSpec::parse_descriptor(&s).map_err(serde::de::Error::custom)
    }
}

/// Checked entry point for single field operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arith {
    Add(Element, Element),
    Sub(Element, Element),
    Mul(Element, Element),
    Inv(Element),
    Neg(Element),
    Pow(Element, i64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm_u64(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd_u64(a, b)).checked_mul(b)
}

fn field_cache() -> &'static Mutex<HashMap<(u32, u32), FieldSpec>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FieldSpec>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Build the canonical GF(p^l) under the default size cap.
pub fn build_field(p: u64, l: u32) -> Result<FieldSpec> {
    build_field_with_cap(p, l, DEFAULT_FIELD_CAP)
}

/// Build the canonical GF(p^l), refusing fields with more than `cap` elements.
pub fn build_field_with_cap(p: u64, l: u32, cap: u64) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if l == 0 {
        return Err(Error::DegreeOutOfRange("extension degree must be >= 1".into()));
    }
    let order = (p as u128).checked_pow(l).unwrap_or(u128::MAX);
    if order > cap as u128 || order > u32::MAX as u128 {
        return Err(Error::DegreeOutOfRange(format!(
            "{p}^{l} exceeds the field-size cap {cap}"
        )));
    }
    let key = (p as u32, l);
    if let Some(f) = field_cache().lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    let field = FieldSpec {
        inner: Arc::new(FieldInner::construct(p as u32, l, order as u32)),
    };
    field_cache()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert(field.clone());
    Ok(field)
}

// ---- raw GF(p)[X] helpers on ascending coefficient vectors ----

fn raw_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo monic `m` over GF(p).
fn raw_rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    raw_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap() as u64;
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (lead * c as u64) % p as u64;
            let idx = shift + i;
            r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        raw_trim(&mut r);
    }
    r
}

fn raw_is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return true;
    }
    if m[0] == 0 {
        return false;
    }
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                cand.push((k % p as u64) as u32);
                k /= p as u64;
            }
            cand.push(1);
            if raw_rem_monic(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `l`, comparing the
/// ascending coefficient tuple `(a_0, ..., a_{l-1}, 1)` from `a_0` onward.
fn canonical_modulus(p: u32, l: u32) -> Vec<u32> {
    if l == 1 {
        return vec![0, 1];
    }
    let l = l as usize;
    let mut digits = vec![0u32; l];
    loop {
        let mut cand = digits.clone();
        cand.push(1);
        if raw_is_irreducible(&cand, p) {
            return cand;
        }
        // odometer with a_0 most significant
        let mut i = l;
        loop {
            if i == 0 {
                unreachable!("an irreducible polynomial of every degree exists");
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
        }
    }
}

impl FieldInner {
    fn construct(p: u32, l: u32, order: u32) -> FieldInner {
        let modulus = canonical_modulus(p, l);
        let slow = SlowArith { p, l, modulus: &modulus };
        let group = order as u64 - 1;
        let factors = prime_factors(group);
        let generator = (1..order)
            .find(|&x| factors.iter().all(|&r| slow.pow(x, group / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");

        let g = group as usize;
        let mut exp = vec![0u32; 2 * g];
        let mut log = vec![u32::MAX; order as usize];
        let mut cur = 1u32;
        for i in 0..g {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = slow.mul(cur, generator);
        }
        for i in g..2 * g {
            exp[i] = exp[i - g];
        }

        let neg = (0..order).map(|x| slow.neg(x)).collect();
        let add = (order <= ADD_TABLE_MAX).then(|| {
            let mut t = Vec::with_capacity((order * order) as usize);
            for a in 0..order {
                for b in 0..order {
                    t.push(slow.add(a, b));
                }
            }
            t
        });
        FieldInner {
            p,
            l,
            order,
            modulus,
            generator,
            exp,
            log,
            neg,
            add,
        }
    }
}

/// Table-free arithmetic used while bootstrapping a field.
struct SlowArith<'a> {
    p: u32,
    l: u32,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn decode(&self, x: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.l as usize);
        let mut x = x;
        for _ in 0..self.l {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    fn encode(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.l {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self
            .decode(a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.encode(&d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.decode(a), self.decode(b));
        let p = self.p as u64;
        let mut prod = vec![0u32; da.len() + db.len()];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        let mut r = raw_rem_monic(&prod, self.modulus, self.p);
        r.resize(self.l as usize, 0);
        self.encode(&r)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    /// Extension degree `l` over the prime field.
    pub fn degree(&self) -> u32 {
        self.inner.l
    }

    /// Number of elements `p^l`.
    pub fn order(&self) -> u32 {
        self.inner.order
    }

    /// Ascending coefficients of the defining modulus (monic, length `l + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn contains(&self, x: Element) -> bool {
        x.0 < self.inner.order
    }

    pub fn check(&self, x: Element) -> Result<Element> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// `"p^l/a0,a1,...,al"` with ascending modulus coefficients.
    pub fn descriptor(&self) -> String {
        let coeffs: Vec<String> = self.inner.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{}/{}", self.inner.p, self.inner.l, coeffs.join(","))
    }

    /// Parse either `"p^l"` or the full `"p^l/coeffs"` descriptor. The modulus,
    /// when given, must equal the canonical one.
    pub fn parse_descriptor(s: &str) -> Result<FieldSpec> {
        let (head, tail) = match s.split_once('/') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let (p, l) = head
            .split_once('^')
            .ok_or_else(|| Error::Parse(format!("expected p^l, got {s:?}")))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad characteristic in {s:?}")))?;
        let l: u32 = l
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in {s:?}")))?;
        let field = build_field(p, l)?;
        if let Some(tail) = tail {
            let coeffs = tail
                .split(',')
                .map(|c| c.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
            if coeffs != field.inner.modulus {
                return Err(Error::Parse(format!(
                    "modulus {tail} is not the canonical modulus of {field}"
                )));
            }
        }
        Ok(field)
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        debug_assert!(self.contains(a) && self.contains(b));
        let f = &*self.inner;
        if let Some(t) = &f.add {
            return Element(t[(a.0 * f.order + b.0) as usize]);
        }
        if f.p == 2 {
            return Element(a.0 ^ b.0);
        }
        if f.l == 1 {
            return Element((a.0 + b.0) % f.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..f.l {
            out += ((x % f.p + y % f.p) % f.p) * place;
            x /= f.p;
            y /= f.p;
            place *= f.p;
        }
        Element(out)
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        Element(self.inner.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        debug_assert!(self.contains(a) && self.contains(b));
        if a.0 == 0 || b.0 == 0 {
            return Element::ZERO;
        }
        let f = &*self.inner;
        Element(f.exp[(f.log[a.0 as usize] + f.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Element) -> Result<Element> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &*self.inner;
        let g = f.order - 1;
        Ok(Element(f.exp[((g - f.log[a.0 as usize]) % g) as usize]))
    }

    pub fn div(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a non-negative exponent; `0^0 = 1`.
    pub fn pow(&self, a: Element, e: u64) -> Element {
        if e == 0 {
            return Element::ONE;
        }
        if a.is_zero() {
            return Element::ZERO;
        }
        let f = &*self.inner;
        let g = (f.order - 1) as u64;
        let k = (f.log[a.0 as usize] as u64 * (e % g)) % g;
        Element(f.exp[k as usize])
    }

    /// `a^e` for any integer exponent; negative exponents need a nonzero base.
    pub fn pow_signed(&self, a: Element, e: i64) -> Result<Element> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn arith(&self, op: Arith) -> Result<Element> {
        match op {
            Arith::Add(a, b) => Ok(self.add(self.check(a)?, self.check(b)?)),
            Arith::Sub(a, b) => Ok(self.sub(self.check(a)?, self.check(b)?)),
            Arith::Mul(a, b) => Ok(self.mul(self.check(a)?, self.check(b)?)),
            Arith::Inv(a) => self.inv(self.check(a)?),
            Arith::Neg(a) => Ok(self.neg(self.check(a)?)),
            Arith::Pow(a, e) => self.pow_signed(self.check(a)?, e),
        }
    }

    /// Image of an integer under `Z -> GF(p) ⊆ GF(p^l)`.
    pub fn from_int(&self, k: i64) -> Element {
        Element(k.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Base-p digits of `x`, least significant first (length `l`).
    pub fn digits(&self, x: Element) -> Vec<u32> {
        SlowArith {
            p: self.inner.p,
            l: self.inner.l,
            modulus: &self.inner.modulus,
        }
        .decode(x.0)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Element> {
        if digits.len() != self.inner.l as usize || digits.iter().any(|&d| d >= self.inner.p) {
            return Err(Error::FieldMismatch);
        }
        Ok(Element(
            digits.iter().rev().fold(0u32, |acc, &c| acc * self.inner.p + c),
        ))
    }

    /// All elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.inner.order).map(Element)
    }

    pub fn generator(&self) -> Element {
        Element(self.inner.generator)
    }

    /// Discrete logarithm to the base of [`FieldSpec::generator`].
    pub fn log(&self, x: Element) -> Option<u32> {
        (!x.is_zero()).then(|| self.inner.log[x.0 as usize])
    }

    /// `g^k` for the fixed generator `g`.
    pub fn exp(&self, k: u64) -> Element {
        let g = (self.inner.order - 1) as u64;
        Element(self.inner.exp[(k % g) as usize])
    }

    /// Multiplicative order, `None` for zero.
    pub fn mult_order(&self, x: Element) -> Option<u64> {
        let g = (self.inner.order - 1) as u64;
        self.log(x).map(|k| g / gcd_u64(k as u64, g))
    }

    /// Whether `x` lies in the unique subfield of order `p^d`.
    pub fn in_subfield(&self, x: Element, d: u32) -> bool {
        self.pow(x, (self.inner.p as u64).pow(d)) == x
    }

    pub fn is_prime_field_element(&self, x: Element) -> bool {
        x.0 < self.inner.p
    }
}

/// All `p^l` elements, ascending by encoding.
pub fn enumerate_elements(field: &FieldSpec) -> Vec<Element> {
    field.elements().collect()
}

/// The element of smallest encoding whose multiplicative order is `p^l - 1`.
pub fn multiplicative_generator(field: &FieldSpec) -> Element {
    field.generator()
}

/// GF(p^d) for every divisor `d` of `l`, ordered by `d`.
pub fn subfield_lattice(field: &FieldSpec) -> Result<Vec<FieldSpec>> {
    let l = field.degree();
    (1..=l)
        .filter(|d| l.is_multiple_of(*d))
        .map(|d| build_field(field.p() as u64, d))
        .collect()
}

/// `{ x : x^i = 1 }`, sorted by encoding.
pub fn roots_of_unity(field: &FieldSpec, i: u64) -> Vec<Element> {
    let g = (field.order() - 1) as u64;
    field
        .elements()
        .skip(1)
        .filter(|&x| (field.log(x).unwrap() as u64 * (i % g)).is_multiple_of(g))
        .collect()
}

/// The canonical embedding of a subfield, materialized as a lookup table.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: FieldSpec,
    sup: FieldSpec,
    root: Element,
    table: Vec<Element>,
    inverse: HashMap<Element, Element>,
}

impl Embedding {
    /// Maps the residue of `X` in `sub` to the smallest-encoding root of
    /// `sub.modulus` in `sup`.
    pub fn new(sub: &FieldSpec, sup: &FieldSpec) -> Result<Embedding> {
        if sub.p() != sup.p() || !sup.degree().is_multiple_of(sub.degree()) {
            return Err(Error::NotASubfield {
                sub: sub.to_string(),
                sup: sup.to_string(),
            });
        }
        let modulus: Vec<Element> = sub.modulus().iter().map(|&c| Element(c)).collect();
        let root = sup
            .elements()
            .find(|&y| {
                modulus
                    .iter()
                    .rev()
                    .fold(Element::ZERO, |acc, &c| sup.add(sup.mul(acc, y), c))
                    .is_zero()
            })
            .ok_or(Error::NoRootFound)?;
        let powers: Vec<Element> = (0..sub.degree())
            .map(|i| sup.pow(root, i as u64))
            .collect();
        let table: Vec<Element> = sub
            .elements()
            .map(|x| {
                sub.digits(x)
                    .iter()
                    .zip(&powers)
                    .fold(Element::ZERO, |acc, (&d, &r)| {
                        sup.add(acc, sup.mul(Element(d), r))
                    })
            })
            .collect();
        let inverse = sub.elements().map(|x| (table[x.0 as usize], x)).collect();
        Ok(Embedding {
            sub: sub.clone(),
            sup: sup.clone(),
            root,
            table,
            inverse,
        })
    }

    pub fn sub(&self) -> &FieldSpec {
        &self.sub
    }

    pub fn sup(&self) -> &FieldSpec {
        &self.sup
    }

    /// Image of the generator-of-definition (the residue of `X`).
    pub fn root(&self) -> Element {
        self.root
    }

    pub fn apply(&self, x: Element) -> Result<Element> {
        self.sub.check(x)?;
        Ok(self.table[x.0 as usize])
    }

    /// The element of `sub` mapping to `y`, if `y` lies in the image.
    pub fn preimage(&self, y: Element) -> Option<Element> {
        self.inverse.get(&y).copied()
    }
}

/// Image of `x` under the canonical embedding `sub -> sup`.
pub fn embed(x: Element, sub: &FieldSpec, sup: &FieldSpec) -> Result<Element> {
    sub.check(x)?;
    Embedding::new(sub, sup)?.apply(x)
}

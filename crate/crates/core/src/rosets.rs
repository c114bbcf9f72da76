//! Sums of roots of unity and the sets built from the cycle permutation
//! matrix.
//!
//! - `SR_n`: elements of the base field that are sums of at most `n` roots of
//!   unity taken from extensions of degree `<= D`. The empty sum is allowed,
//!   so `0` is always a member.
//! - `L_{m,n}`: polynomials `Σ α_i X^{a_i}` with `a_i < m` and non-negative
//!   integer coefficients summing to at most `n` (the zero polynomial
//!   included).
//! - `W_m`: the union of the spectra of `f(P_m)` over `f ∈ L_{m,n}`, where
//!   `P_m` is the permutation matrix of the `m`-cycle.
//!
//! All root-of-unity arithmetic happens in one compositum
//! GF(p^(l·lcm(1..D))), which contains every extension of degree `<= D`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::companion::st_set;
use crate::error::{Error, Result};
use crate::gf::{build_field_with_cap, gcd_u64, lcm_u64, prime_factors, Element, Embedding, FieldSpec, DEFAULT_FIELD_CAP};
use crate::mat::{eval_at_matrix, permutation_matrix, Mat, Potency};
use crate::poly::{roots_in_extensions, Poly};

/// `multiplicity · root`, with the root given in the smallest extension
/// GF(q^d), `d <= D`, that contains it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrTerm {
    pub multiplicity: u32,
    pub root: Element,
    pub home: FieldSpec,
    pub order: u64,
}

/// One way of writing `value` as a sum of roots of unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrWitness {
    pub value: Element,
    pub terms: Vec<SrTerm>,
}

impl SrWitness {
    /// Σ multiplicities.
    pub fn length(&self) -> u32 {
        self.terms.iter().map(|t| t.multiplicity).sum()
    }

    /// lcm of the root orders, raised to 2 when it is 1 (only the root 1 or
    /// no roots at all).
    pub fn common_order(&self) -> Result<u64> {
        let m = self
            .terms
            .iter()
            .try_fold(1u64, |acc, t| lcm_u64(acc, t.order))
            .ok_or(Error::ExponentOverflow)?;
        Ok(m.max(2))
    }
}

fn too_large(p: u64, e: u32, cap: u64) -> Error {
    Error::FieldTooLarge {
        order: (p as u128).checked_pow(e).unwrap_or(u128::MAX),
        cap,
    }
}

fn checked_field(p: u64, e: u32, cap: u64) -> Result<FieldSpec> {
    let order = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
    if order > cap as u128 {
        return Err(too_large(p, e, cap));
    }
    build_field_with_cap(p, e, cap)
}

/// The field GF(q^L), `L = lcm(1..D)`, with embeddings of the base field and
/// of every GF(q^d), `d <= D`.
#[derive(Clone, Debug)]
pub struct Compositum {
    base: FieldSpec,
    big: FieldSpec,
    ext_bound: usize,
    homes: Vec<Embedding>,
}

impl Compositum {
    pub fn new(base: &FieldSpec, ext_bound: usize) -> Result<Compositum> {
        Compositum::with_cap(base, ext_bound, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(base: &FieldSpec, ext_bound: usize, cap: u64) -> Result<Compositum> {
        if ext_bound == 0 {
            return Err(Error::DegreeOutOfRange("extension bound must be >= 1".into()));
        }
        let p = base.p() as u64;
        let l = base.degree();
        let mut big_degree = 1u64;
        for d in 1..=ext_bound as u64 {
            big_degree = lcm_u64(big_degree, d).ok_or(Error::ExponentOverflow)?;
        }
        let e = big_degree
            .checked_mul(l as u64)
            .filter(|&e| e <= 64)
            .ok_or_else(|| too_large(p, 64, cap))? as u32;
        let big = checked_field(p, e, cap)?;
        let homes = (1..=ext_bound as u32)
            .map(|d| {
                let home = if d == 1 {
                    base.clone()
                } else {
                    checked_field(p, l * d, cap)?
                };
                Embedding::new(&home, &big)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Compositum {
            base: base.clone(),
            big,
            ext_bound,
            homes,
        })
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn big(&self) -> &FieldSpec {
        &self.big
    }

    pub fn ext_bound(&self) -> usize {
        self.ext_bound
    }

    /// Image of a base-field element.
    pub fn lift(&self, x: Element) -> Result<Element> {
        self.homes[0].apply(x)
    }

    /// Base-field preimage, if `y` lies in the image of the base field.
    pub fn lower(&self, y: Element) -> Option<Element> {
        self.homes[0].preimage(y)
    }

    /// Smallest `d <= D` with `y ∈ GF(q^d)`.
    pub fn home_degree(&self, y: Element) -> Option<usize> {
        let l = self.base.degree();
        (1..=self.ext_bound).find(|&d| self.big.in_subfield(y, l * d as u32))
    }

    fn term_for(&self, y: Element, multiplicity: u32) -> SrTerm {
        let d = self.home_degree(y).expect("root lies in a bounded extension");
        let emb = &self.homes[d - 1];
        SrTerm {
            multiplicity,
            root: emb.preimage(y).expect("root lies in its home field"),
            home: emb.sub().clone(),
            order: self.big.mult_order(y).expect("roots of unity are nonzero"),
        }
    }

    /// Re-embed every root of `w` and compare the weighted sum with `value`.
    pub fn replay(&self, w: &SrWitness) -> Result<bool> {
        let f = &self.big;
        let mut acc = Element::ZERO;
        for t in &w.terms {
            let d = (t.home.degree() / self.base.degree()) as usize;
            let emb = self
                .homes
                .get(d.wrapping_sub(1))
                .filter(|e| e.sub() == &t.home)
                .ok_or(Error::FieldMismatch)?;
            let y = emb.apply(t.root)?;
            if t.multiplicity == 0 || f.mult_order(y) != Some(t.order) {
                return Ok(false);
            }
            acc = f.add(acc, f.mul(f.from_int(t.multiplicity as i64), y));
        }
        Ok(acc == self.lift(w.value)?)
    }
}

const UNSET: u32 = u32::MAX;

/// `SR_n` with one canonical witness per member.
///
/// The canonical witness of `t` uses the fewest terms, and among those the
/// lexicographically least sequence of root encodings in the compositum.
/// Witnesses with exactly `k` terms are available through
/// [`SrSet::witness_with_length`].
#[derive(Clone, Debug)]
pub struct SrSet {
    comp: Compositum,
    n: usize,
    // first[k][v]: least root u with v - u a sum of exactly k - 1 roots
    first: Vec<Vec<u32>>,
    members: Vec<SrWitness>,
}

impl SrSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn compositum(&self) -> &Compositum {
        &self.comp
    }

    pub fn field(&self) -> &FieldSpec {
        self.comp.base()
    }

    pub fn members(&self) -> &[SrWitness] {
        &self.members
    }

    /// Members sorted by encoding.
    pub fn elements(&self) -> Vec<Element> {
        self.members.iter().map(|w| w.value).collect()
    }

    pub fn contains(&self, t: Element) -> bool {
        self.witness(t).is_some()
    }

    pub fn witness(&self, t: Element) -> Option<&SrWitness> {
        self.members
            .binary_search_by_key(&t, |w| w.value)
            .ok()
            .map(|i| &self.members[i])
    }

    fn reachable(&self, k: usize, v: Element) -> bool {
        if k == 0 {
            v.is_zero()
        } else {
            self.first[k][v.0 as usize] != UNSET
        }
    }

    /// Lexicographically least witness for `t` with exactly `k` terms.
    pub fn witness_with_length(&self, t: Element, k: usize) -> Result<Option<SrWitness>> {
        if k > self.n {
            return Ok(None);
        }
        let big = self.comp.big();
        let v = self.comp.lift(t)?;
        if !self.reachable(k, v) {
            return Ok(None);
        }
        let mut roots = Vec::with_capacity(k);
        let mut cur = v;
        for j in (1..=k).rev() {
            let u = Element(self.first[j][cur.0 as usize]);
            roots.push(u);
            cur = big.sub(cur, u);
        }
        debug_assert!(cur.is_zero());
        let mut grouped: Vec<(Element, u32)> = Vec::new();
        for u in roots {
            match grouped.last_mut() {
                Some((last, mult)) if *last == u => *mult += 1,
                _ => grouped.push((u, 1)),
            }
        }
        let terms = grouped
            .into_iter()
            .map(|(u, mult)| self.comp.term_for(u, mult))
            .collect();
        Ok(Some(SrWitness { value: t, terms }))
    }

    /// Report form: sorted encodings plus the canonical witnesses.
    pub fn report(&self) -> SrReport {
        SrReport {
            field: self.field().clone(),
            n: self.n,
            ext_bound: self.comp.ext_bound(),
            elements: self.members.iter().map(|w| w.value.0).collect(),
            witnesses: self.members.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrReport {
    pub field: FieldSpec,
    pub n: usize,
    pub ext_bound: usize,
    pub elements: Vec<u32>,
    pub witnesses: Vec<SrWitness>,
}

/// `SR_n` over `field` with roots of unity from extensions of degree `<= D`.
pub fn sr_set(n: usize, field: &FieldSpec, ext_bound: usize) -> Result<SrSet> {
    sr_set_with_cap(n, field, ext_bound, DEFAULT_FIELD_CAP)
}

/// [`sr_set`] with an explicit bound on the compositum size.
pub fn sr_set_with_cap(n: usize, field: &FieldSpec, ext_bound: usize, cap: u64) -> Result<SrSet> {
    let comp = Compositum::with_cap(field, ext_bound, cap)?;
    let big = comp.big().clone();
    let size = big.order() as usize;
    let units: Vec<Element> = big
        .elements()
        .skip(1)
        .filter(|&y| comp.home_degree(y).is_some())
        .collect();
    let mut first: Vec<Vec<u32>> = vec![Vec::new()];
    let mut prev: Vec<Element> = vec![Element::ZERO];
    for _ in 1..=n {
        let mut table = vec![UNSET; size];
        for &u in &units {
            for &s in &prev {
                let v = big.add(s, u);
                if table[v.0 as usize] == UNSET {
                    table[v.0 as usize] = u.0;
                }
            }
        }
        prev = (0..size as u32)
            .filter(|&v| table[v as usize] != UNSET)
            .map(Element)
            .collect();
        first.push(table);
    }
    let mut set = SrSet {
        comp,
        n,
        first,
        members: Vec::new(),
    };
    let mut members = Vec::new();
    for t in field.elements() {
        for k in 0..=n {
            if let Some(w) = set.witness_with_length(t, k)? {
                members.push(w);
                break;
            }
        }
    }
    set.members = members;
    Ok(set)
}

/// An element of `L_{m,n}`: `(exponent, coefficient)` pairs with ascending
/// exponents and positive coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly {
    terms: Vec<(u32, u32)>,
}

impl IntPoly {
    pub fn new(mut terms: Vec<(u32, u32)>) -> Result<IntPoly> {
        terms.retain(|&(_, c)| c > 0);
        terms.sort_unstable();
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Parse("repeated exponent".into()));
        }
        Ok(IntPoly { terms })
    }

    pub fn zero() -> IntPoly {
        IntPoly { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[(u32, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_sum(&self) -> u32 {
        self.terms.iter().map(|&(_, c)| c).sum()
    }

    pub fn max_exponent(&self) -> Option<u32> {
        self.terms.last().map(|&(e, _)| e)
    }

    /// Integer coefficients reduced into the prime field of `field`.
    pub fn to_poly(&self, field: &FieldSpec) -> Poly {
        let deg = self.max_exponent().map_or(0, |e| e as usize + 1);
        let mut coeffs = vec![Element::ZERO; deg];
        for &(e, c) in &self.terms {
            coeffs[e as usize] = field.from_int(c as i64);
        }
        Poly::new(field, coeffs).expect("prime-field coefficients")
    }

    /// `Σ c·x^e` in `field`.
    pub fn eval(&self, field: &FieldSpec, x: Element) -> Element {
        self.terms.iter().fold(Element::ZERO, |acc, &(e, c)| {
            field.add(acc, field.mul(field.from_int(c as i64), field.pow(x, e as u64)))
        })
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("X")?,
                (1, c) => write!(f, "{c}X")?,
                (e, 1) => write!(f, "X^{e}")?,
                (e, c) => write!(f, "{c}X^{e}")?,
            }
        }
        Ok(())
    }
}

/// Ascending `k`-subsets of `0..m`, lexicographic.
fn subsets(m: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(start: u32, m: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for e in start..m {
            cur.push(e);
            go(e + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Positive `k`-tuples with sum `<= n`, lexicographic.
fn coefficient_tuples(k: usize, n: u32) -> Vec<Vec<u32>> {
    fn go(k: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let left = (k - cur.len() - 1) as u32;
        for c in 1..=budget.saturating_sub(left) {
            cur.push(c);
            go(k, budget - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, n, &mut Vec::new(), &mut out);
    out
}

/// `L_{m,n}` ordered by support size, then exponents, then coefficients.
/// There are `C(m+n, n)` of them.
pub fn enumerate_l(m: u32, n: u32) -> Result<Vec<IntPoly>> {
    if m < 2 {
        return Err(Error::BadDimension(m as usize));
    }
    if n < 1 {
        return Err(Error::BadDimension(n as usize));
    }
    let mut out = Vec::new();
    for k in 0..=(n.min(m) as usize) {
        for exps in subsets(m, k) {
            for coeffs in coefficient_tuples(k, n) {
                out.push(IntPoly {
                    terms: exps.iter().copied().zip(coeffs).collect(),
                });
            }
        }
    }
    Ok(out)
}

/// An element of `W_m`, located in the smallest extension containing it, with
/// the first `f ∈ L_{m,n}` whose spectrum produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WMember {
    pub value: Element,
    pub field: FieldSpec,
    pub provenance: IntPoly,
}

/// Eigenvalues of `f(P_m)` lying in extensions of degree `<= D`, each in the
/// smallest such extension. Sorted by (extension degree, encoding).
pub fn spectrum(f: &IntPoly, m: u32, field: &FieldSpec, ext_bound: usize) -> Result<Vec<(Element, FieldSpec)>> {
    let p = permutation_matrix(m as usize, field)?;
    let fp = eval_at_matrix(&f.to_poly(field), &p)?;
    let mut out: Vec<(Element, FieldSpec)> = roots_in_extensions(&fp.char_poly(), ext_bound)?
        .roots
        .into_iter()
        .map(|r| (r.root, r.field))
        .collect();
    out.sort_by_key(|(x, k)| (k.degree(), *x));
    out.dedup();
    Ok(out)
}

/// `W_m = ∪_{f ∈ L_{m,n}} Spec(f(P_m))`, spectra resolved up to degree `D`.
pub fn w_set(m: u32, n: u32, field: &FieldSpec, ext_bound: usize) -> Result<Vec<WMember>> {
    let p = field.p() as u64;
    for d in 1..=ext_bound as u32 {
        let e = field.degree() * d;
        if (p as u128).checked_pow(e).unwrap_or(u128::MAX) > DEFAULT_FIELD_CAP as u128 {
            return Err(too_large(p, e, DEFAULT_FIELD_CAP));
        }
    }
    let mut seen: BTreeMap<(u32, u32), WMember> = BTreeMap::new();
    for f in enumerate_l(m, n)? {
        for (x, k) in spectrum(&f, m, field, ext_bound)? {
            seen.entry((k.degree(), x.0)).or_insert_with(|| WMember {
                value: x,
                field: k,
                provenance: f.clone(),
            });
        }
    }
    Ok(seen.into_values().collect())
}

/// First `α` in the prime field with `(ω - α)^m` in the prime field, together
/// with that power `u`.
pub fn eq4omega_check(omega: Element, field: &FieldSpec, m: u64) -> Result<Option<(Element, Element)>> {
    field.check(omega)?;
    Ok((0..field.p()).map(Element).find_map(|alpha| {
        let u = field.pow(field.sub(omega, alpha), m);
        field.is_prime_field_element(u).then_some((alpha, u))
    }))
}

/// Number of positive divisors.
pub fn divisor_count(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    prime_factors(m)
        .into_iter()
        .map(|r| {
            let mut k = m;
            let mut e = 0;
            while k.is_multiple_of(r) {
                k /= r;
                e += 1;
            }
            e + 1
        })
        .product()
}

/// Whether `gcd(bc, a)` divides `gcd(b, a)·gcd(c, a)`, with the quotient
/// when it does.
pub fn gcd_divides(a: u64, b: u64, c: u64) -> (bool, Option<u128>) {
    let lhs = gcd_u128(b as u128 * c as u128, a as u128);
    let rhs = gcd_u64(b, a) as u128 * gcd_u64(c, a) as u128;
    if lhs != 0 && rhs.is_multiple_of(lhs) {
        (true, Some(rhs / lhs))
    } else {
        (false, None)
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// The polynomial `f ∈ L_{m,n}` and primitive `m`-th root `ε` with
/// `f(ε) = value`, read off a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WCertificate {
    pub value: Element,
    pub m: u64,
    pub f: IntPoly,
    /// `ε^m = 1` and `f(ε)` equals the value in the compositum.
    pub eigenvalue_check: bool,
    /// `det(value·I - f(P_m)) = 0` over the base field; skipped above `m_max`.
    pub determinant_check: Option<bool>,
}

impl WCertificate {
    pub fn holds(&self) -> bool {
        self.eigenvalue_check && self.determinant_check != Some(false)
    }
}

/// Place an `SR_n` witness in `W_m`, `m` the common order of its roots:
/// write every root as `ε^a` for a fixed `ε` generating the roots of order
/// dividing `m`, sum the
/// multiplicities into `f = Σ α X^a`, and check that `value` is an eigenvalue
/// of `f(P_m)`.
pub fn w_certificate(w: &SrWitness, comp: &Compositum, m_max: u64) -> Result<WCertificate> {
    let big = comp.big();
    let group = big.order() as u64 - 1;
    let m = w.common_order()?;
    // true lcm of the orders; it is 1 only when every root is 1, and then
    // ε = 1, an eigenvalue of every P_m
    let order = if w.terms.iter().all(|t| t.order == 1) { 1 } else { m };
    if !group.is_multiple_of(order) {
        return Err(Error::FieldMismatch);
    }
    let step = group / order;
    let eps = big.exp(step);
    let mut exps: BTreeMap<u32, u32> = BTreeMap::new();
    for t in &w.terms {
        let d = (t.home.degree() / comp.base().degree()) as usize;
        let y = comp.homes[d - 1].apply(t.root)?;
        let log = big.log(y).ok_or(Error::DivisionByZero)? as u64;
        if !log.is_multiple_of(step) {
            return Err(Error::FieldMismatch);
        }
        *exps.entry((log / step) as u32).or_default() += t.multiplicity;
    }
    let f = IntPoly {
        terms: exps.into_iter().collect(),
    };
    let eigenvalue_check = big.pow(eps, m) == Element::ONE && f.eval(big, eps) == comp.lift(w.value)?;
    let determinant_check = if m <= m_max {
        let base = comp.base();
        let p = permutation_matrix(m as usize, base)?;
        let fp = eval_at_matrix(&f.to_poly(base), &p)?;
        let shifted = Mat::scalar(base, m as usize, w.value).sub(&fp)?;
        Some(shifted.determinant().is_zero())
    } else {
        None
    };
    Ok(WCertificate {
        value: w.value,
        m,
        f,
        eigenvalue_check,
        determinant_check,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentFailure {
    pub value: Element,
    pub length: usize,
    pub m: u64,
}

/// Outcome of [`check_containments`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub field: FieldSpec,
    pub n: usize,
    pub ext_bound: usize,
    pub m_max: u64,
    pub potency: Potency,
    pub st: Vec<u32>,
    pub sr: Vec<u32>,
    /// Members of `ST_n` missing from `SR_n`.
    pub st_outside_sr: Vec<u32>,
    /// Witnesses (one per member and term count) placed in `W_m`.
    pub placements_checked: usize,
    pub placement_failures: Vec<ContainmentFailure>,
    /// Witnesses whose common order `m` has fewer divisors than distinct
    /// root orders, or `m` in `2..=m_max` with `d(m) < 1`.
    pub divisor_failures: Vec<u64>,
    pub pass: bool,
}

/// `ST_n ⊆ SR_n`, `SR_n ⊆ ∪ W_m` witness by witness, and the divisor-count
/// facts used between them.
pub fn check_containments(
    n: usize,
    field: &FieldSpec,
    ext_bound: usize,
    m_max: u64,
    potency: Potency,
    enum_cap: u64,
) -> Result<ContainmentReport> {
    let st = st_set(n, field, potency, enum_cap)?;
    let sr = sr_set(n, field, ext_bound)?;
    let st_outside_sr: Vec<u32> = st.iter().filter(|t| !sr.contains(**t)).map(|t| t.0).collect();
    let mut placements_checked = 0;
    let mut placement_failures = Vec::new();
    let mut divisor_failures = Vec::new();
    for t in sr.elements() {
        for k in 0..=n {
            let Some(w) = sr.witness_with_length(t, k)? else {
                continue;
            };
            let cert = w_certificate(&w, sr.compositum(), m_max)?;
            placements_checked += 1;
            if !cert.holds() || cert.f.coefficient_sum() as usize > n {
                placement_failures.push(ContainmentFailure {
                    value: t,
                    length: k,
                    m: cert.m,
                });
            }
            let mut orders: Vec<u64> = w.terms.iter().map(|t| t.order).collect();
            orders.sort_unstable();
            orders.dedup();
            if divisor_count(cert.m) < orders.len() as u64 {
                divisor_failures.push(cert.m);
            }
        }
    }
    divisor_failures.extend((2..=m_max).filter(|&m| divisor_count(m) < 1));
    let pass = st_outside_sr.is_empty() && placement_failures.is_empty() && divisor_failures.is_empty();
    Ok(ContainmentReport {
        field: field.clone(),
        n,
        ext_bound,
        m_max,
        potency,
        st: st.iter().map(|t| t.0).collect(),
        sr: sr.elements().iter().map(|t| t.0).collect(),
        st_outside_sr,
        placements_checked,
        placement_failures,
        divisor_failures,
        pass,
    })
}

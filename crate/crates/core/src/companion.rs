//! Companion matrices, potent companions with a prescribed trace, and the
//! trace-matching decomposition `C = P + (C - P)`.
//!
//! Companions use the last-column convention: ones on the subdiagonal and
//! `(-a_0, …, -a_{n-1})` in the last column. Two companions of equal size then
//! differ only in their last column `v`, and `(C - C')² = v_{n-1}·(C - C')`, so
//! the difference is square-zero exactly when the traces agree.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::gf::{Element, FieldSpec};
use crate::mat::{Mat, Potency};
use crate::poly::Poly;
use crate::witness::{Source, Witness};

/// Default cap on the number of objects any enumeration may visit.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;

/// A monic polynomial together with its companion matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionForm {
    poly: Poly,
    matrix: Mat,
}

impl CompanionForm {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn field(&self) -> &FieldSpec {
        self.matrix.field()
    }

    /// Lower coefficients `(a_0, …, a_{n-1})` of the defining polynomial.
    pub fn coeffs(&self) -> Vec<Element> {
        (0..self.n()).map(|k| self.poly.coeff(k)).collect()
    }

    /// `-a_{n-1}`.
    pub fn trace(&self) -> Element {
        self.matrix.trace()
    }
}

pub fn companion_of(g: &Poly) -> Result<CompanionForm> {
    let n = match g.degree() {
        None => return Err(Error::NotMonic),
        Some(0) => return Err(Error::ZeroDegree),
        Some(n) => n,
    };
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    let f = g.field();
    let mut m = Mat::zero(f, n);
    for i in 1..n {
        m.set(i, i - 1, Element::ONE);
    }
    for i in 0..n {
        m.set(i, n - 1, f.neg(g.coeff(i)));
    }
    Ok(CompanionForm {
        poly: g.clone(),
        matrix: m,
    })
}

/// Companion of `X^n + a_{n-1}X^{n-1} + … + a_0` from `(a_0, …, a_{n-1})`.
pub fn companion_from_coeffs(field: &FieldSpec, coeffs: &[Element]) -> Result<CompanionForm> {
    let mut v = coeffs.to_vec();
    v.push(Element::ONE);
    companion_of(&Poly::new(field, v)?)
}

fn enumeration_size(q: u64, n: usize, cap: u64) -> Result<u64> {
    let count = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::EnumerationTooLarge { count, cap });
    }
    Ok(count as u64)
}

/// Number of `n×n` companions over `field`, refused above `cap`.
pub fn companion_count(n: usize, field: &FieldSpec, cap: u64) -> Result<u64> {
    enumeration_size(field.order() as u64, n, cap)
}

/// Coefficient tuple at position `index` in lexicographic order of
/// `(a_0, …, a_{n-1})`.
pub fn coeffs_at(index: u64, n: usize, field: &FieldSpec) -> Vec<Element> {
    let q = field.order() as u64;
    let mut out = vec![Element::ZERO; n];
    let mut k = index;
    for slot in out.iter_mut().rev() {
        *slot = Element((k % q) as u32);
        k /= q;
    }
    out
}

/// All `q^n` companions in lexicographic order of `(a_0, …, a_{n-1})`.
/// Index ranges may be handed to separate consumers via [`coeffs_at`].
pub fn enumerate_companions(
    n: usize,
    field: &FieldSpec,
    cap: u64,
) -> Result<impl Iterator<Item = CompanionForm> + '_> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let count = companion_count(n, field, cap)?;
    Ok((0..count).map(move |k| {
        companion_from_coeffs(field, &coeffs_at(k, n, field)).expect("valid coefficients")
    }))
}

fn sum(field: &FieldSpec, xs: &[Element]) -> Element {
    xs.iter().fold(Element::ZERO, |acc, &x| field.add(acc, x))
}

/// Greedy choice of `n` distinct roots summing to `t`: roots `0, …, n-2`, the
/// last root forced to `t - Σ`. On a collision the colliding root is retired
/// and replaced by the smallest element neither chosen nor retired.
fn greedy_roots(t: Element, n: usize, field: &FieldSpec) -> Option<Vec<Element>> {
    let mut chosen: Vec<Element> = (0..n as u32 - 1).map(Element).collect();
    let mut retired = HashSet::new();
    loop {
        let last = field.sub(t, sum(field, &chosen));
        match chosen.iter().position(|&r| r == last) {
            None => {
                chosen.push(last);
                return Some(chosen);
            }
            Some(j) => {
                retired.insert(chosen[j]);
                let next = field
                    .elements()
                    .find(|x| !retired.contains(x) && !chosen.contains(x))?;
                chosen[j] = next;
            }
        }
    }
}

/// Lexicographically first `n`-subset of the field summing to `t`.
fn first_subset_with_sum(t: Element, n: usize, field: &FieldSpec) -> Option<Vec<Element>> {
    let q = field.order() as usize;
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let pick: Vec<Element> = idx.iter().map(|&i| Element(i as u32)).collect();
        if sum(field, &pick) == t {
            return Some(pick);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < q - n + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..n {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A companion with `n` distinct roots in the base field summing to `t`, so
/// its characteristic polynomial is squarefree and the matrix is potent under
/// either [`Potency`] notion.
///
/// Roots come from the greedy rule above, falling back to the
/// lexicographically first `n`-subset when the greedy rule runs out of
/// elements. In characteristic 2 with `n = 2` and `t = 0` no such subset
/// exists and [`Error::TraceNotRealizable`] is returned.
pub fn potent_companion_with_trace(t: Element, n: usize, field: &FieldSpec) -> Result<CompanionForm> {
    field.check(t)?;
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let q = field.order() as u64;
    if q <= n as u64 {
        return Err(Error::FieldTooSmall { q, n });
    }
    let roots = greedy_roots(t, n, field)
        .or_else(|| first_subset_with_sum(t, n, field))
        .ok_or(Error::TraceNotRealizable { trace: t.0, n })?;
    companion_of(&Poly::from_roots(field, &roots))
}

/// First companion in coefficient order with trace `t` that is potent under
/// `potency`, or `None` when `t ∉ ST_n`. Visits at most `q^(n-1)` candidates.
pub fn potent_companion_search(
    t: Element,
    n: usize,
    field: &FieldSpec,
    potency: Potency,
    cap: u64,
) -> Result<Option<CompanionForm>> {
    field.check(t)?;
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let count = enumeration_size(field.order() as u64, n - 1, cap)?;
    let top = field.neg(t);
    for k in 0..count {
        let mut coeffs = coeffs_at(k, n - 1, field);
        coeffs.push(top);
        coeffs.push(Element::ONE);
        let g = Poly::new(field, coeffs)?;
        if potency.admits_min_poly(&g) {
            return Ok(Some(companion_of(&g)?));
        }
    }
    Ok(None)
}

/// Trace-matching decomposition of a companion matrix.
///
/// `P` is a potent companion with `trace P = trace C`, so `N = C - P` lives in
/// the last column and squares to zero. When `q ≥ n + 1` the potent companion
/// comes from [`potent_companion_with_trace`]; otherwise (or when that reports
/// the trace unrealizable) [`potent_companion_search`] supplies it. If
/// `trace C ∉ ST_n`, a scalar shift `P = λI` with `(C - λI)² = 0` is tried,
/// which covers the characteristic-2, `n = 2`, trace-0 companions `X² + a`
/// under [`Potency::Semisimple`]. Returns `None` when none of these apply.
pub fn decompose_wp2(c: &CompanionForm, potency: Potency, cap: u64) -> Result<Option<Witness>> {
    let field = c.field();
    let n = c.n();
    let t = c.trace();
    let q = field.order() as u64;
    let mut potent = None;
    if q > n as u64 {
        match potent_companion_with_trace(t, n, field) {
            Ok(pc) => potent = Some(pc),
            Err(Error::TraceNotRealizable { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if potent.is_none() {
        potent = potent_companion_search(t, n, field, potency, cap)?;
    }
    let coeffs = c.coeffs();
    if let Some(pc) = potent {
        let p = pc.matrix().clone();
        let nil = c.matrix().sub(&p)?;
        return Witness::new(c.matrix(), &coeffs, potency, p, nil, Source::Constructive).map(Some);
    }
    for lambda in field.elements() {
        let p = Mat::scalar(field, n, lambda);
        let nil = c.matrix().sub(&p)?;
        if nil.is_square_zero() {
            return Witness::new(c.matrix(), &coeffs, potency, p, nil, Source::Constructive).map(Some);
        }
    }
    Ok(None)
}

/// `ST_n`: traces of `n×n` companions that are potent under `potency`.
/// Sorted by encoding.
pub fn st_set(n: usize, field: &FieldSpec, potency: Potency, cap: u64) -> Result<Vec<Element>> {
    companion_count(n, field, cap)?;
    let mut out = Vec::new();
    for t in field.elements() {
        if potent_companion_search(t, n, field, potency, cap)?.is_some() {
            out.push(t);
        }
    }
    Ok(out)
}

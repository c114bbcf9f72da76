//! Dense univariate polynomials over a [`FieldSpec`].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{build_field, Element, Embedding, FieldSpec};

/// Largest degree accepted by [`factor`].
pub const FACTOR_DEGREE_CAP: usize = 12;

/// A polynomial with coefficients in ascending degree order, trailing zeros
/// stripped (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Element>,
    field: FieldSpec,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c.0) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, _) => write!(f, "{c}X")?,
                (_, 1) => write!(f, "X^{k}")?,
                _ => write!(f, "{c}X^{k}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub(crate) fn from_raw(field: &FieldSpec, mut coeffs: Vec<Element>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            coeffs,
            field: field.clone(),
        }
    }

    pub fn new(field: &FieldSpec, coeffs: Vec<Element>) -> Result<Poly> {
        for &c in &coeffs {
            field.check(c)?;
        }
        Ok(Poly::from_raw(field, coeffs))
    }

    pub fn from_encodings(field: &FieldSpec, enc: &[u32]) -> Result<Poly> {
        Poly::new(field, enc.iter().map(|&e| Element(e)).collect())
    }

    /// Parse comma-separated ascending coefficient encodings, e.g. `"1,0,1"`.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Poly> {
        let enc = s
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad polynomial {s:?}")))?;
        Poly::from_encodings(field, &enc)
    }

    /// Comma-separated ascending coefficient encodings (`"0"` for zero).
    pub fn serialize(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.0.to_string()).collect();
        parts.join(",")
    }

    pub fn zero(field: &FieldSpec) -> Poly {
        Poly::from_raw(field, Vec::new())
    }

    pub fn one(field: &FieldSpec) -> Poly {
        Poly::constant(field, Element::ONE)
    }

    pub fn x(field: &FieldSpec) -> Poly {
        Poly::monomial(field, Element::ONE, 1)
    }

    pub fn constant(field: &FieldSpec, c: Element) -> Poly {
        Poly::from_raw(field, vec![c])
    }

    pub fn monomial(field: &FieldSpec, c: Element, k: usize) -> Poly {
        let mut v = vec![Element::ZERO; k + 1];
        v[k] = c;
        Poly::from_raw(field, v)
    }

    /// `Π (X - r)` over the given roots.
    pub fn from_roots(field: &FieldSpec, roots: &[Element]) -> Poly {
        roots.iter().fold(Poly::one(field), |acc, &r| {
            let lin = Poly::from_raw(field, vec![field.neg(r), Element::ONE]);
            acc.mul_unchecked(&lin)
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Element {
        self.coeffs.get(k).copied().unwrap_or(Element::ZERO)
    }

    pub fn encodings(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Element {
        self.coeffs.last().copied().unwrap_or(Element::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Element::ONE
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|k| f.add(self.coeff(k), other.coeff(k)))
            .collect();
        Poly::from_raw(f, v)
    }

    pub(crate) fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut v = vec![Element::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::from_raw(f, v)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Element) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(&self.field), |acc, _| acc.mul_unchecked(self))
    }

    /// Quotient and remainder with `deg r < deg g`.
    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(g)?;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(g.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dg {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![Element::ZERO; r.len() - dg];
        for k in (dg..r.len()).rev() {
            let c = f.mul(r[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            q[k - dg] = c;
            for (j, &b) in g.coeffs.iter().enumerate() {
                let idx = k - dg + j;
                r[idx] = f.sub(r[idx], f.mul(c, b));
            }
        }
        r.truncate(dg);
        Ok((Poly::from_raw(f, q), Poly::from_raw(f, r)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        Ok(self.divmod(g)?.1)
    }

    /// Whether `self` divides `g`. Zero divides only zero.
    pub fn divides(&self, g: &Poly) -> Result<bool> {
        if self.is_zero() {
            self.same_field(g)?;
            return Ok(g.is_zero());
        }
        Ok(g.rem(self)?.is_zero())
    }

    /// Formal derivative; `k·c` is reduced mod p.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| f.mul(f.from_int(k as i64), c))
            .collect();
        Poly::from_raw(f, v)
    }

    pub fn eval(&self, x: Element) -> Result<Element> {
        self.field.check(x)?;
        let f = &self.field;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(Element::ZERO, |acc, &c| f.add(f.mul(acc, x), c)))
    }

    /// Divide by the leading coefficient (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Map coefficients through a field embedding.
    pub fn embed(&self, e: &Embedding) -> Result<Poly> {
        if e.sub() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let v = self
            .coeffs
            .iter()
            .map(|&c| e.apply(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_raw(e.sup(), v))
    }

    /// Order used for factor lists: degree first, then the ascending
    /// coefficient tuple.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

/// Every monic polynomial of degree `d`, indexed `0..q^d` with `a_0` varying fastest.
pub fn monic_polys(field: &FieldSpec, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.order() as u64;
    let count = q.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push(Element((idx % q) as u32));
            idx /= q;
        }
        v.push(Element::ONE);
        Poly::from_raw(field, v)
    })
}

/// True iff `f` has no repeated irreducible factor. A nonconstant `f` with
/// vanishing derivative is a p-th power and therefore not squarefree.
pub fn is_squarefree(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(true);
    }
    let d = f.derivative();
    if d.is_zero() {
        return Ok(false);
    }
    Ok(f.gcd(&d)?.degree() == Some(0))
}

/// Monic irreducible factors with multiplicities, by trial division against
/// monic polynomials of increasing degree.
pub fn factor(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let deg = f.degree().unwrap();
    if deg > FACTOR_DEGREE_CAP {
        return Err(Error::DegreeOutOfRange(format!(
            "factor supports degree <= {FACTOR_DEGREE_CAP}, got {deg}"
        )));
    }
    let field = f.field();
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().is_some_and(|k| 2 * d <= k) {
        for g in monic_polys(field, d) {
            let mut mult = 0;
            loop {
                let (q, r) = rest.divmod(&g)?;
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
            if rest.degree().is_some_and(|k| k < d) {
                break;
            }
        }
        d += 1;
    }
    if rest.degree().is_some_and(|k| k >= 1) {
        out.push((rest, 1));
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

/// A root of an irreducible factor, located in the extension it generates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionRoot {
    pub root: Element,
    pub field: FieldSpec,
    pub factor: Poly,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionRoots {
    pub roots: Vec<ExtensionRoot>,
    /// Irreducible factors of degree above the bound, with multiplicities.
    pub unresolved: Vec<(Poly, usize)>,
}

/// Roots of every irreducible factor of degree `d <= max_degree`, found by
/// exhaustive evaluation in GF(p^(l·d)).
pub fn roots_in_extensions(f: &Poly, max_degree: usize) -> Result<ExtensionRoots> {
    if max_degree == 0 {
        return Err(Error::DegreeOutOfRange("extension bound must be >= 1".into()));
    }
    let base = f.field();
    let mut roots = Vec::new();
    let mut unresolved = Vec::new();
    for (g, mult) in factor(f)? {
        let d = g.degree().unwrap();
        if d > max_degree {
            unresolved.push((g, mult));
            continue;
        }
        if d == 1 {
            roots.push(ExtensionRoot {
                root: base.neg(g.coeff(0)),
                field: base.clone(),
                factor: g,
                multiplicity: mult,
            });
            continue;
        }
        let ext = build_field(base.p() as u64, base.degree() * d as u32)?;
        let emb = Embedding::new(base, &ext)?;
        let g_ext = g.embed(&emb)?;
        for x in ext.elements() {
            if g_ext.eval(x)?.is_zero() {
                roots.push(ExtensionRoot {
                    root: x,
                    field: ext.clone(),
                    factor: g.clone(),
                    multiplicity: mult,
                });
            }
        }
    }
    Ok(ExtensionRoots { roots, unresolved })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, l: u32) -> FieldSpec {
        build_field(p, l).unwrap()
    }

    fn poly(f: &FieldSpec, c: &[u32]) -> Poly {
        Poly::from_encodings(f, c).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f2 = gf(2, 1);
        let g = poly(&f2, &[1, 0, 1]).gcd(&poly(&f2, &[1, 1])).unwrap();
        assert_eq!(g, poly(&f2, &[1, 1]));
        let f3 = gf(3, 1);
        assert!(poly(&f3, &[0, 0, 0, 1]).derivative().is_zero());
        assert_eq!(poly(&f3, &[2, 0, 1]).eval(Element(2)).unwrap(), Element(0));
    }

    #[test]
    fn errors() {
        let f3 = gf(3, 1);
        let f5 = gf(5, 1);
        assert_eq!(
            poly(&f3, &[1, 1]).divmod(&Poly::zero(&f3)).unwrap_err(),
            Error::DivisionByZero
        );
        assert_eq!(
            poly(&f3, &[1, 1]).add(&poly(&f5, &[1])).unwrap_err(),
            Error::FieldMismatch
        );
        assert_eq!(Poly::from_encodings(&f3, &[3]).unwrap_err(), Error::FieldMismatch);
        assert_eq!(is_squarefree(&Poly::zero(&f3)), Err(Error::ZeroPolynomial));
        let big = Poly::monomial(&f3, Element::ONE, 13);
        assert!(matches!(factor(&big), Err(Error::DegreeOutOfRange(_))));
    }

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        let f = gf(5, 1);
        let p = poly(&f, &[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(poly(&f, &[0, 0]).degree(), None);
        assert_eq!(p.serialize(), "1,2");
        assert_eq!(Poly::parse(&f, "1, 2,0").unwrap(), p);
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(&poly(&gf(5, 1), &[0, 1])).unwrap());
        assert!(!is_squarefree(&poly(&gf(2, 1), &[1, 0, 1])).unwrap());
        assert!(is_squarefree(&poly(&gf(2, 1), &[0, 1, 1])).unwrap());
    }

    #[test]
    fn factor_examples() {
        let f2 = gf(2, 1);
        assert_eq!(
            factor(&poly(&f2, &[1, 0, 0, 1])).unwrap(),
            vec![(poly(&f2, &[1, 1]), 1), (poly(&f2, &[1, 1, 1]), 1)]
        );
        let f3 = gf(3, 1);
        assert_eq!(
            factor(&poly(&f3, &[2, 0, 1])).unwrap(),
            vec![(poly(&f3, &[1, 1]), 1), (poly(&f3, &[2, 1]), 1)]
        );
        for f in [gf(2, 1), gf(5, 1), gf(2, 2)] {
            assert_eq!(
                factor(&Poly::monomial(&f, Element::ONE, 2)).unwrap(),
                vec![(Poly::x(&f), 2)]
            );
        }
        assert!(factor(&poly(&f3, &[2])).unwrap().is_empty());
    }

    #[test]
    fn roots_in_extension_examples() {
        let f2 = gf(2, 1);
        let r = roots_in_extensions(&poly(&f2, &[1, 1, 1]), 2).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots.iter().all(|x| x.field.order() == 4));
        let mut orders: Vec<_> = r.roots.iter().map(|x| x.field.mult_order(x.root)).collect();
        orders.dedup();
        assert_eq!(orders, vec![Some(3)]);

        let f3 = gf(3, 1);
        let r = roots_in_extensions(&poly(&f3, &[2, 1]), 1).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!((r.roots[0].root, r.roots[0].field.clone()), (Element(1), f3));

        let r = roots_in_extensions(&poly(&f2, &[1, 1, 1]), 1).unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.unresolved, vec![(poly(&f2, &[1, 1, 1]), 1)]);
    }

    #[test]
    fn extension_roots_are_roots() {
        let f = gf(3, 1);
        // (X^2+1)(X^3+2X+1)(X+2)^2 over GF(3)
        let a = poly(&f, &[1, 0, 1]);
        let b = poly(&f, &[1, 2, 0, 1]);
        let c = poly(&f, &[2, 1]).pow(2);
        let prod = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = roots_in_extensions(&prod, 3).unwrap();
        assert_eq!(r.roots.len(), 1 + 2 + 3);
        for root in &r.roots {
            let e = Embedding::new(&f, &root.field).unwrap();
            assert!(prod.embed(&e).unwrap().eval(root.root).unwrap().is_zero());
        }
        let r = roots_in_extensions(&prod, 2).unwrap();
        assert_eq!(r.unresolved, vec![(b, 1)]);
    }

    fn all_polys(f: &FieldSpec, max_deg: usize) -> Vec<Poly> {
        let q = f.order() as u64;
        let mut out = Vec::new();
        for d in 0..=max_deg {
            for idx in 0..q.pow(d as u32 + 1) {
                let mut k = idx;
                let mut v = Vec::new();
                for _ in 0..=d {
                    v.push(Element((k % q) as u32));
                    k /= q;
                }
                if v[d].is_zero() {
                    continue;
                }
                out.push(Poly::from_raw(f, v));
            }
        }
        out
    }

    #[test]
    fn factor_reconstructs_and_agrees_with_squarefree() {
        for f in [gf(2, 1), gf(3, 1), gf(2, 2)] {
            for p in all_polys(&f, 4) {
                let fac = factor(&p).unwrap();
                let prod = fac
                    .iter()
                    .fold(Poly::one(&f), |acc, (g, m)| acc.mul(&g.pow(*m as u32)).unwrap());
                assert_eq!(prod, p.monic(), "{p}");
                for (g, _) in &fac {
                    assert!(g.is_monic());
                }
                let sf = fac.iter().all(|(_, m)| *m == 1);
                assert_eq!(is_squarefree(&p).unwrap(), sf, "{p}");
            }
        }
    }

    #[test]
    fn divmod_identity_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for f in [gf(2, 1), gf(3, 1), gf(2, 2), gf(5, 1), gf(3, 2)] {
            let q = f.order();
            for _ in 0..10_000 {
                let da = rng.gen_range(0..8);
                let db = rng.gen_range(0..5);
                let a = Poly::from_raw(&f, (0..=da).map(|_| Element(rng.gen_range(0..q))).collect());
                let mut bv: Vec<_> = (0..=db).map(|_| Element(rng.gen_range(0..q))).collect();
                bv[db] = Element(rng.gen_range(1..q));
                let b = Poly::from_raw(&f, bv);
                let (qq, r) = a.divmod(&b).unwrap();
                assert!(r.degree().is_none_or(|k| k < db));
                assert_eq!(qq.mul(&b).unwrap().add(&r).unwrap(), a);
            }
        }
    }
}

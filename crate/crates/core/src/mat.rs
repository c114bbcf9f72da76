//! Dense square matrices over a [`FieldSpec`], with characteristic and
//! minimal polynomials and the potency predicates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{lcm_u64, prime_factors, Element, FieldSpec};
use crate::poly::{is_squarefree, Poly};

/// Which matrices count as potent.
///
/// `Definition` is `M^(k+1) = M` for some `k >= 1`. `Semisimple` additionally
/// asks for a diagonalizable invertible part, i.e. a squarefree minimal
/// polynomial; in characteristic `p` it is strictly smaller (the matrix
/// `[[0,1],[1,0]]` over GF(2) is potent but not semisimple).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Potency {
    #[default]
    Definition,
    Semisimple,
}

impl Potency {
    pub const ALL: [Potency; 2] = [Potency::Definition, Potency::Semisimple];

    pub fn name(self) -> &'static str {
        match self {
            Potency::Definition => "definition",
            Potency::Semisimple => "semisimple",
        }
    }

    /// Structural test on the minimal polynomial.
    pub fn holds(self, m: &Mat) -> bool {
        self.admits_min_poly(&m.min_poly())
    }

    /// Direct power test, independent of [`Potency::holds`].
    pub fn holds_iterative(self, m: &Mat) -> Result<bool> {
        match self {
            Potency::Definition => m.is_potent_iterative(),
            Potency::Semisimple => m.is_semisimple_potent_iterative(),
        }
    }

    /// Whether a matrix with minimal polynomial `g` is potent under this
    /// notion. For a companion matrix `g` is its defining polynomial.
    pub fn admits_min_poly(self, g: &Poly) -> bool {
        match self {
            Potency::Definition => !(g.coeff(0).is_zero() && g.coeff(1).is_zero()),
            Potency::Semisimple => is_squarefree(g).unwrap_or(false),
        }
    }
}

impl fmt::Display for Potency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Potency {
    type Err = Error;

    fn from_str(s: &str) -> Result<Potency> {
        match s {
            "definition" => Ok(Potency::Definition),
            "semisimple" => Ok(Potency::Semisimple),
            _ => Err(Error::Parse(format!("unknown potency notion {s:?}"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    entries: Vec<Element>,
    field: FieldSpec,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}]{:?}", self.field, self.to_rows())
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl Mat {
    pub(crate) fn from_raw(field: &FieldSpec, n: usize, entries: Vec<Element>) -> Mat {
        debug_assert_eq!(entries.len(), n * n);
        Mat {
            n,
            entries,
            field: field.clone(),
        }
    }

    /// Row-major entries; `entries.len()` must be `n²`.
    pub fn new(field: &FieldSpec, n: usize, entries: Vec<Element>) -> Result<Mat> {
        if n == 0 {
            return Err(Error::BadDimension(0));
        }
        if entries.len() != n * n {
            return Err(Error::BadDimension(entries.len()));
        }
        for &e in &entries {
            field.check(e)?;
        }
        Ok(Mat::from_raw(field, n, entries))
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u32>]) -> Result<Mat> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadDimension(n));
        }
        Mat::new(
            field,
            n,
            rows.iter().flatten().map(|&e| Element(e)).collect(),
        )
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|e| e.0).collect())
            .collect()
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Mat {
        Mat::from_raw(field, n, vec![Element::ZERO; n * n])
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Mat {
        Mat::scalar(field, n, Element::ONE)
    }

    pub fn scalar(field: &FieldSpec, n: usize, c: Element) -> Mat {
        Mat::diag(field, &vec![c; n])
    }

    pub fn diag(field: &FieldSpec, d: &[Element]) -> Mat {
        let n = d.len();
        let mut m = Mat::zero(field, n);
        for (i, &c) in d.iter().enumerate() {
            m.entries[i * n + i] = c;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Element {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Element) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub(crate) fn compatible_with(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.compatible_with(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.compatible_with(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.compatible_with(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let e = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Mat::from_raw(f, self.n, e)
    }

    pub(crate) fn sub_unchecked(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let e = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Mat::from_raw(f, self.n, e)
    }

    pub(crate) fn mul_unchecked(&self, other: &Mat) -> Mat {
        let mut out = vec![Element::ZERO; self.n * self.n];
        mul_into(&self.field, self.n, &self.entries, &other.entries, &mut out);
        Mat::from_raw(&self.field, self.n, out)
    }

    pub fn neg(&self) -> Mat {
        let f = &self.field;
        Mat::from_raw(f, self.n, self.entries.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn scalar_mul(&self, c: Element) -> Result<Mat> {
        let f = &self.field;
        f.check(c)?;
        Ok(Mat::from_raw(
            f,
            self.n,
            self.entries.iter().map(|&a| f.mul(a, c)).collect(),
        ))
    }

    /// `self^e` by repeated squaring; `self^0` is the identity.
    pub fn pow(&self, mut e: u64) -> Mat {
        let mut acc = Mat::identity(&self.field, self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Element {
        (0..self.n).fold(Element::ZERO, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let e = (0..n * n).map(|k| self.get(k % n, k / n)).collect();
        Mat::from_raw(&self.field, n, e)
    }

    pub fn commutes_with(&self, other: &Mat) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Characteristic polynomial `det(X·I - M)` by the division-free
    /// Berkowitz recurrence.
    pub fn char_poly(&self) -> Poly {
        let f = &self.field;
        let n = self.n;
        // highest-degree coefficient first
        let mut poly = vec![Element::ONE];
        for r in 0..n {
            let a = self.get(r, r);
            let mut t = Vec::with_capacity(r + 2);
            t.push(Element::ONE);
            t.push(f.neg(a));
            let mut v: Vec<Element> = (0..r).map(|i| self.get(i, r)).collect();
            for _ in 0..r {
                let dot = (0..r).fold(Element::ZERO, |acc, j| {
                    f.add(acc, f.mul(self.get(r, j), v[j]))
                });
                t.push(f.neg(dot));
                v = (0..r)
                    .map(|i| {
                        (0..r).fold(Element::ZERO, |acc, j| {
                            f.add(acc, f.mul(self.get(i, j), v[j]))
                        })
                    })
                    .collect();
            }
            let next: Vec<Element> = (0..r + 2)
                .map(|j| {
                    (0..=j.min(r)).fold(Element::ZERO, |acc, i| {
                        f.add(acc, f.mul(t[j - i], poly[i]))
                    })
                })
                .collect();
            poly = next;
        }
        poly.reverse();
        Poly::from_raw(f, poly)
    }

    /// Minimal polynomial: the first linear dependence among `I, M, M², …`
    /// viewed as vectors of length `n²`.
    pub fn min_poly(&self) -> Poly {
        let f = &self.field;
        let n = self.n;
        let width = n + 1;
        let mut basis: Vec<(usize, Vec<Element>, Vec<Element>)> = Vec::new();
        let mut power = Mat::identity(f, n);
        for k in 0..=n {
            let mut v = power.entries.clone();
            let mut comb = vec![Element::ZERO; width];
            comb[k] = Element::ONE;
            for (piv, bv, bc) in &basis {
                let c = v[*piv];
                if c.is_zero() {
                    continue;
                }
                for (x, &y) in v.iter_mut().zip(bv) {
                    *x = f.sub(*x, f.mul(c, y));
                }
                for (x, &y) in comb.iter_mut().zip(bc) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
            match v.iter().position(|e| !e.is_zero()) {
                None => return Poly::from_raw(f, comb),
                Some(piv) => {
                    let inv = f.inv(v[piv]).expect("pivot is nonzero");
                    v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                    comb.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                    basis.push((piv, v, comb));
                }
            }
            power = power.mul_unchecked(self);
        }
        unreachable!("Cayley-Hamilton bounds the minimal polynomial degree by n")
    }

    /// `M^(k+1) = M` for some `k >= 1`. Over a finite field this holds
    /// exactly when `X²` does not divide the minimal polynomial, i.e. `M` is
    /// an invertible block plus a zero block.
    pub fn is_potent(&self) -> bool {
        Potency::Definition.holds(self)
    }

    /// Direct check `M^(K+1) = M` with `K` the exponent of `GL_n(q)`, see
    /// [`gl_exponent`].
    pub fn is_potent_iterative(&self) -> Result<bool> {
        let k = gl_exponent(self.n, self.field.order() as u64)?;
        let e = k.checked_add(1).ok_or(Error::ExponentOverflow)?;
        Ok(self.pow(e) == *self)
    }

    /// Potent with a diagonalizable invertible part: the minimal polynomial
    /// is squarefree.
    pub fn is_semisimple_potent(&self) -> bool {
        Potency::Semisimple.holds(self)
    }

    /// Direct check `M^(k*+1) = M` with `k* = lcm_{d=1..n}(q^d - 1)`.
    pub fn is_semisimple_potent_iterative(&self) -> Result<bool> {
        let k = universal_exponent(self.n, self.field.order() as u64)?;
        let e = k.checked_add(1).ok_or(Error::ExponentOverflow)?;
        Ok(self.pow(e) == *self)
    }

    /// `N² = 0`, the zero matrix included.
    pub fn is_square_zero(&self) -> bool {
        square_is_zero(&self.field, self.n, &self.entries)
    }

    /// Least `t > 1` with `P^t = P`, or `None` when `P` is not potent.
    pub fn potency_exponent(&self) -> Result<Option<u64>> {
        let q = self.field.order() as u64;
        let big = gl_exponent(self.n, q)?;
        if !self.is_potent() {
            return Ok(None);
        }
        // {e >= 1 : P^(e+1) = P} is the set of multiples of its least element,
        // which divides K; shrink K one prime at a time.
        let mut e = big;
        let mut primes: Vec<u64> = vec![self.field.p() as u64];
        for d in 1..=self.n as u32 {
            primes.extend(prime_factors(q.pow(d) - 1));
        }
        primes.sort_unstable();
        primes.dedup();
        for r in primes {
            while e % r == 0 && self.pow(e / r + 1) == *self {
                e /= r;
            }
        }
        Ok(Some(e + 1))
    }

    /// `det(M)` by Gaussian elimination.
    pub fn determinant(&self) -> Element {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = Element::ONE;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Element::ZERO;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let inv = f.inv(pv).expect("pivot is nonzero");
            for r in col + 1..n {
                let c = f.mul(a[r * n + col], inv);
                if c.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(c, a[col * n + j]));
                }
            }
        }
        det
    }

    /// Whether `λ` is an eigenvalue, i.e. `det(λI - M) = 0`.
    pub fn is_eigenvalue(&self, lambda: Element) -> Result<bool> {
        self.field.check(lambda)?;
        let shifted = Mat::scalar(&self.field, self.n, lambda).sub_unchecked(self);
        Ok(shifted.determinant().is_zero())
    }
}

/// `out = a·b` for row-major `n×n` slices.
pub(crate) fn mul_into(f: &FieldSpec, n: usize, a: &[Element], b: &[Element], out: &mut [Element]) {
    for i in 0..n {
        for j in 0..n {
            let mut acc = Element::ZERO;
            for k in 0..n {
                acc = f.add(acc, f.mul(a[i * n + k], b[k * n + j]));
            }
            out[i * n + j] = acc;
        }
    }
}

/// `a² = 0`, exiting at the first nonzero entry.
pub(crate) fn square_is_zero(f: &FieldSpec, n: usize, a: &[Element]) -> bool {
    for i in 0..n {
        for j in 0..n {
            let mut acc = Element::ZERO;
            for k in 0..n {
                acc = f.add(acc, f.mul(a[i * n + k], a[k * n + j]));
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

/// `lcm_{d=1..n}(q^d - 1)`; every semisimple potent `n×n` matrix over GF(q)
/// satisfies `M^(k+1) = M` for this `k`.
pub fn universal_exponent(n: usize, q: u64) -> Result<u64> {
    let mut k = 1u64;
    let mut qd = 1u64;
    for _ in 0..n {
        qd = qd.checked_mul(q).ok_or(Error::ExponentOverflow)?;
        k = lcm_u64(k, qd - 1).ok_or(Error::ExponentOverflow)?;
    }
    Ok(k)
}

/// Exponent of `GL_n(q)`: `lcm_{d=1..n}(q^d - 1) · p^e` with `p^e` the least
/// power of the characteristic that is `>= n`. Every potent `n×n` matrix over
/// GF(q) satisfies `M^(K+1) = M` for this `K`.
pub fn gl_exponent(n: usize, q: u64) -> Result<u64> {
    let p = prime_factors(q).first().copied().unwrap_or(q);
    let mut pe = 1u64;
    while (pe as usize) < n {
        pe = pe.checked_mul(p).ok_or(Error::ExponentOverflow)?;
    }
    universal_exponent(n, q)?
        .checked_mul(pe)
        .ok_or(Error::ExponentOverflow)
}

/// The `m×m` permutation matrix of the cycle `(1 2 … m)`: entry `(i, j)` is 1
/// exactly when `j = τ(i)`.
pub fn permutation_matrix(m: usize, field: &FieldSpec) -> Result<Mat> {
    if m < 2 {
        return Err(Error::BadDimension(m));
    }
    let mut p = Mat::zero(field, m);
    for i in 0..m {
        p.set(i, (i + 1) % m, Element::ONE);
    }
    Ok(p)
}

/// `g(M)` by Horner's rule.
pub fn eval_at_matrix(g: &Poly, m: &Mat) -> Result<Mat> {
    if g.field() != m.field() {
        return Err(Error::FieldMismatch);
    }
    let f = m.field();
    let id = Mat::identity(f, m.n());
    Ok(g.coeffs().iter().rev().fold(Mat::zero(f, m.n()), |acc, &c| {
        acc.mul_unchecked(m)
            .add_unchecked(&id.scalar_mul(c).expect("coefficient in field"))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    fn gf(p: u64, l: u32) -> FieldSpec {
        build_field(p, l).unwrap()
    }

    fn mat(f: &FieldSpec, rows: &[&[u32]]) -> Mat {
        Mat::from_rows(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn poly(f: &FieldSpec, c: &[u32]) -> Poly {
        Poly::from_encodings(f, c).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f2 = gf(2, 1);
        assert_eq!(Mat::identity(&f2, 3).trace(), Element(1));
        let f3 = gf(3, 1);
        let m = mat(&f3, &[&[1, 2], &[0, 1]]);
        assert_eq!(m.pow(0), Mat::identity(&f3, 2));
        let s = mat(&f3, &[&[0, 1], &[1, 0]]);
        assert_eq!(s.mul(&s).unwrap(), Mat::identity(&f3, 2));
        assert_eq!(m.transpose(), mat(&f3, &[&[1, 0], &[2, 1]]));
        assert_eq!(m.scalar_mul(Element(2)).unwrap(), mat(&f3, &[&[2, 1], &[0, 2]]));
    }

    #[test]
    fn errors() {
        let f3 = gf(3, 1);
        let f5 = gf(5, 1);
        let a = Mat::identity(&f3, 2);
        assert_eq!(
            a.add(&Mat::identity(&f3, 3)).unwrap_err(),
            Error::DimensionMismatch(2, 3)
        );
        assert_eq!(a.mul(&Mat::identity(&f5, 2)).unwrap_err(), Error::FieldMismatch);
        assert_eq!(Mat::new(&f3, 0, vec![]).unwrap_err(), Error::BadDimension(0));
        assert!(Mat::from_rows(&f3, &[vec![0, 3], vec![0, 0]]).is_err());
        assert_eq!(permutation_matrix(1, &f3).unwrap_err(), Error::BadDimension(1));
        let big = Mat::identity(&gf(2, 10), 7);
        assert_eq!(big.is_potent_iterative(), Err(Error::ExponentOverflow));
    }

    #[test]
    fn permutation_matrices() {
        let f2 = gf(2, 1);
        assert_eq!(
            permutation_matrix(3, &f2).unwrap(),
            mat(&f2, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])
        );
        let f3 = gf(3, 1);
        assert_eq!(permutation_matrix(2, &f3).unwrap(), mat(&f3, &[&[0, 1], &[1, 0]]));
        let f5 = gf(5, 1);
        let p4 = permutation_matrix(4, &f5).unwrap();
        assert_eq!(p4.pow(4), Mat::identity(&f5, 4));
        assert_ne!(p4.pow(2), Mat::identity(&f5, 4));
    }

    #[test]
    fn char_poly_examples() {
        let f5 = gf(5, 1);
        assert_eq!(
            Mat::zero(&f5, 3).char_poly(),
            Poly::monomial(&f5, Element::ONE, 3)
        );
        let f2 = gf(2, 1);
        assert_eq!(
            permutation_matrix(3, &f2).unwrap().char_poly(),
            poly(&f2, &[1, 0, 0, 1])
        );
        let f3 = gf(3, 1);
        assert_eq!(mat(&f3, &[&[0, 1], &[1, 0]]).char_poly(), poly(&f3, &[2, 0, 1]));
    }

    #[test]
    fn permutation_char_poly_is_x_m_minus_one() {
        for f in [gf(2, 1), gf(3, 1), gf(5, 1)] {
            for m in 2..=6 {
                let mut expect = vec![0u32; m + 1];
                expect[0] = f.neg(Element::ONE).0;
                expect[m] = 1;
                assert_eq!(
                    permutation_matrix(m, &f).unwrap().char_poly(),
                    poly(&f, &expect)
                );
            }
        }
    }

    #[test]
    fn min_poly_examples() {
        let f3 = gf(3, 1);
        assert_eq!(Mat::identity(&f3, 2).min_poly(), poly(&f3, &[2, 1]));
        assert_eq!(
            mat(&f3, &[&[0, 1], &[0, 0]]).min_poly(),
            poly(&f3, &[0, 0, 1])
        );
        assert_eq!(
            Mat::diag(&f3, &[Element(1), Element(2)]).min_poly(),
            poly(&f3, &[2, 0, 1])
        );
        assert_eq!(Mat::zero(&f3, 3).min_poly(), Poly::x(&f3));
    }

    #[test]
    fn potency_predicates() {
        let f2 = gf(2, 1);
        let f3 = gf(3, 1);
        assert!(Mat::identity(&f3, 2).is_potent());
        assert!(!mat(&f3, &[&[0, 1], &[0, 0]]).is_potent());
        // [[0,1],[1,0]]^3 = itself over GF(2), minimal polynomial (X+1)^2
        let swap2 = mat(&f2, &[&[0, 1], &[1, 0]]);
        assert!(swap2.is_potent());
        assert_eq!(swap2.pow(3), swap2);
        assert!(!swap2.is_semisimple_potent());
        assert!(!swap2.is_semisimple_potent_iterative().unwrap());
        assert!(mat(&f3, &[&[0, 1], &[1, 0]]).is_potent());
        assert!(mat(&f3, &[&[0, 1], &[1, 0]]).is_semisimple_potent());
        assert!(!mat(&f3, &[&[0, 0], &[1, 0]]).is_potent());

        assert!(Mat::zero(&f3, 2).is_potent_iterative().unwrap());
        assert!(Mat::identity(&f3, 2).is_potent_iterative().unwrap());
        // companion of X^2
        assert!(!mat(&f3, &[&[0, 0], &[1, 0]]).is_potent_iterative().unwrap());

        assert!(Mat::zero(&f3, 2).is_square_zero());
        assert!(mat(&f3, &[&[0, 1], &[0, 0]]).is_square_zero());
        assert!(!Mat::identity(&f3, 2).is_square_zero());
    }

    #[test]
    fn potency_oracle_pairs_agree() {
        for f in [gf(2, 1), gf(3, 1), gf(2, 2)] {
            let q = f.order();
            for idx in 0..q.pow(4) {
                let e = (0..4).map(|k| Element((idx / q.pow(k)) % q)).collect();
                let m = Mat::new(&f, 2, e).unwrap();
                assert_eq!(m.is_potent(), m.is_potent_iterative().unwrap(), "{m:?}");
                assert_eq!(
                    m.is_semisimple_potent(),
                    m.is_semisimple_potent_iterative().unwrap(),
                    "{m:?}"
                );
                assert!(!m.is_semisimple_potent() || m.is_potent());
            }
        }
    }

    #[test]
    fn exponents_of_general_linear_groups() {
        assert_eq!(universal_exponent(2, 2).unwrap(), 3);
        assert_eq!(gl_exponent(2, 2).unwrap(), 6);
        assert_eq!(gl_exponent(1, 5).unwrap(), 4);
        assert_eq!(gl_exponent(3, 2).unwrap(), 84);
        assert_eq!(gl_exponent(4, 3).unwrap(), 1040 * 9);
    }

    #[test]
    fn potency_exponents() {
        let f3 = gf(3, 1);
        assert_eq!(Mat::identity(&f3, 2).potency_exponent().unwrap(), Some(2));
        assert_eq!(Mat::zero(&f3, 2).potency_exponent().unwrap(), Some(2));
        assert_eq!(
            mat(&f3, &[&[0, 1], &[1, 0]]).potency_exponent().unwrap(),
            Some(3)
        );
        assert_eq!(mat(&f3, &[&[0, 1], &[0, 0]]).potency_exponent().unwrap(), None);
    }

    #[test]
    fn potency_exponent_is_least() {
        let f = gf(2, 2);
        let q = f.order();
        for idx in 0..q.pow(4) {
            let e = (0..4).map(|k| Element((idx / q.pow(k)) % q)).collect();
            let m = Mat::new(&f, 2, e).unwrap();
            let brute = (2..=gl_exponent(2, q as u64).unwrap() + 1).find(|&t| m.pow(t) == m);
            assert_eq!(m.potency_exponent().unwrap(), brute, "{m:?}");
            assert_eq!(m.is_potent(), brute.is_some(), "{m:?}");
        }
    }

    #[test]
    fn determinant_and_eigenvalues() {
        let f5 = gf(5, 1);
        let m = mat(&f5, &[&[1, 2, 0], &[3, 4, 1], &[0, 1, 1]]);
        // 1(4-1) - 2(3-0) = -3 = 2
        assert_eq!(m.determinant(), Element(2));
        let d = Mat::diag(&f5, &[Element(1), Element(3)]);
        assert!(d.is_eigenvalue(Element(3)).unwrap());
        assert!(!d.is_eigenvalue(Element(2)).unwrap());
    }

    #[test]
    fn cayley_hamilton_small() {
        let f = gf(3, 1);
        for idx in 0..81u32 {
            let e = (0..4).map(|k| Element((idx / 3u32.pow(k)) % 3)).collect();
            let m = Mat::new(&f, 2, e).unwrap();
            assert!(eval_at_matrix(&m.char_poly(), &m).unwrap().is_zero());
            assert!(eval_at_matrix(&m.min_poly(), &m).unwrap().is_zero());
            assert!(m.min_poly().divides(&m.char_poly()).unwrap());
        }
    }

    #[test]
    fn serialize_rows() {
        let f3 = gf(3, 1);
        let m = mat(&f3, &[&[0, 1], &[2, 0]]);
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[0,1],[2,0]]");
    }
}

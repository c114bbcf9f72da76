//! Exhaustive decomposition searches, the commuting-case certificates, and
//! field-wide verification reports.
//!
//! Candidates `N` are visited in encoding order: the `n²` entries read
//! row-major as base-`q` digits, entry `(0, 0)` most significant. Only the
//! square-zero ones are kept, and the first `N` with `C - N` potent wins.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::companion::{coeffs_at, companion_count, companion_from_coeffs, decompose_wp2, CompanionForm};
use crate::error::{Error, Result};
use crate::gf::{Element, FieldSpec};
use crate::mat::{square_is_zero, Mat, Potency};
use crate::poly::Poly;
use crate::witness::{Source, Witness};
use crate::VERSION;

/// Default cap on `q^(n²)`, the number of candidate matrices per search.
pub const DEFAULT_BRUTE_CAP: u64 = 1 << 24;

/// Every square-zero `n×n` matrix over `field`, in encoding order.
pub fn square_zero_matrices(n: usize, field: &FieldSpec, cap: u64) -> Result<Vec<Mat>> {
    if n == 0 {
        return Err(Error::BadDimension(0));
    }
    let q = field.order() as u64;
    let count = (q as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::SearchSpaceTooLarge { count, cap });
    }
    let cells = n * n;
    let mut digits = vec![0u32; cells];
    let mut entries = vec![Element::ZERO; cells];
    let mut out = Vec::new();
    for _ in 0..count as u64 {
        for (e, &d) in entries.iter_mut().zip(&digits) {
            *e = Element(d);
        }
        if square_is_zero(field, n, &entries) {
            out.push(Mat::new(field, n, entries.clone())?);
        }
        // increment, last cell least significant
        for d in digits.iter_mut().rev() {
            *d += 1;
            if (*d as u64) < q {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

fn search(
    c: &Mat,
    stratum: &[Mat],
    potency: Potency,
    commuting: bool,
) -> Result<Option<(Mat, Mat)>> {
    for nil in stratum {
        let p = c.sub(nil)?;
        if commuting && !p.commutes_with(nil)? {
            continue;
        }
        if potency.holds(&p) {
            return Ok(Some((p, nil.clone())));
        }
    }
    Ok(None)
}

fn coeffs_of(c: &Mat) -> Vec<Element> {
    let n = c.n();
    let f = c.field();
    (0..n).map(|i| f.neg(c.get(i, n - 1))).collect()
}

fn brute_with(c: &CompanionForm, stratum: &[Mat], potency: Potency, commuting: bool) -> Result<Option<Witness>> {
    match search(c.matrix(), stratum, potency, commuting)? {
        None => Ok(None),
        Some((p, nil)) => Witness::new(c.matrix(), &c.coeffs(), potency, p, nil, Source::Brute).map(Some),
    }
}

fn as_companion(c: &Mat) -> Result<CompanionForm> {
    let form = companion_from_coeffs(c.field(), &coeffs_of(c))?;
    if form.matrix() != c {
        return Err(Error::Parse("matrix is not in companion form".into()));
    }
    Ok(form)
}

/// First decomposition `C = P + N` with `N² = 0` and `P` potent, or `None`
/// when no square-zero `N` works. Exact at desk scale.
pub fn brute_decompose(c: &Mat, potency: Potency, cap: u64) -> Result<Option<Witness>> {
    let form = as_companion(c)?;
    let stratum = square_zero_matrices(c.n(), c.field(), cap)?;
    brute_with(&form, &stratum, potency, false)
}

/// As [`brute_decompose`], additionally requiring `PN = NP`.
pub fn brute_commuting_decompose(c: &Mat, potency: Potency, cap: u64) -> Result<Option<Witness>> {
    let form = as_companion(c)?;
    let stratum = square_zero_matrices(c.n(), c.field(), cap)?;
    brute_with(&form, &stratum, potency, true)
}

/// Number of square-zero `N` with `C - N` potent (and commuting with `N`
/// when asked).
pub fn count_decompositions(c: &Mat, potency: Potency, commuting: bool, cap: u64) -> Result<usize> {
    let stratum = square_zero_matrices(c.n(), c.field(), cap)?;
    let mut count = 0;
    for nil in &stratum {
        let p = c.sub(nil)?;
        if (!commuting || p.commutes_with(nil)?) && potency.holds(&p) {
            count += 1;
        }
    }
    Ok(count)
}

fn pow_mod(base: &Poly, mut e: u64, modulus: &Poly) -> Result<Poly> {
    let mut acc = Poly::one(base.field()).rem(modulus)?;
    let mut b = base.rem(modulus)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b)?.rem(modulus)?;
        }
        b = b.mul(&b)?.rem(modulus)?;
        e >>= 1;
    }
    Ok(acc)
}

fn require_invertible(c: &Mat) -> Result<Poly> {
    let chi = c.char_poly();
    if chi.coeff(0).is_zero() {
        return Err(Error::NotInvertible);
    }
    Ok(chi)
}

/// Whether `χ_C` divides `(X^(t-1) - 1)²`.
pub fn check_root_of_unity_certificate(c: &Mat, t: u64) -> Result<bool> {
    let chi = require_invertible(c)?;
    if t <= 1 {
        return Err(Error::BadExponent(t));
    }
    let f = c.field();
    let r = pow_mod(&Poly::x(f), t - 1, &chi)?.sub(&Poly::one(f))?;
    Ok(r.mul(&r)?.rem(&chi)?.is_zero())
}

/// Coefficients `c_k` with `P = Σ c_k C^k`, `k < n`, by elimination on the
/// `n² × n` system.
fn polynomial_in(c: &Mat, p: &Mat) -> Result<Poly> {
    let f = c.field();
    let n = c.n();
    let mut powers = vec![Mat::identity(f, n)];
    for k in 1..n {
        powers.push(powers[k - 1].mul(c)?);
    }
    // rows: one per matrix cell; columns: c_0 … c_{n-1}, then the target
    let mut rows: Vec<Vec<Element>> = (0..n * n)
        .map(|cell| {
            let mut row: Vec<Element> = powers.iter().map(|m| m.entries()[cell]).collect();
            row.push(p.entries()[cell]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][col])?;
        rows[r].iter_mut().for_each(|x| *x = f.mul(*x, inv));
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let k = rows[i][col];
                for j in 0..=n {
                    let v = f.mul(k, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], v);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return Err(Error::NoPolynomialRepresentation);
    }
    let mut coeffs = vec![Element::ZERO; n];
    for (i, &col) in pivots.iter().enumerate() {
        coeffs[col] = rows[i][n];
    }
    let q = Poly::new(f, coeffs)?;
    if crate::mat::eval_at_matrix(&q, c)? != *p {
        return Err(Error::NoPolynomialRepresentation);
    }
    Ok(q)
}

/// Express a matrix commuting with the companion `C` as `q(C)`, and report
/// whether `χ_C` divides `(q(X) - X)²`.
pub fn check_fixed_point_certificate(c: &Mat, p: &Mat) -> Result<(Poly, bool)> {
    let chi = require_invertible(c)?;
    if !c.commutes_with(p)? {
        return Err(Error::NotCommuting);
    }
    let q = polynomial_in(c, p)?;
    let d = q.sub(&Poly::x(c.field()))?;
    let holds = d.mul(&d)?.rem(&chi)?.is_zero();
    Ok((q, holds))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Constructive,
    Brute,
    Commuting,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Constructive => "constructive",
            Mode::Brute => "brute",
            Mode::Commuting => "commuting",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "constructive" => Ok(Mode::Constructive),
            "brute" => Ok(Mode::Brute),
            "commuting" => Ok(Mode::Commuting),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Decomposable,
    NotDecomposable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    /// `(a_0, …, a_{n-1})`.
    pub g: Vec<u32>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub decomposable: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub field: FieldSpec,
    pub n: usize,
    pub mode: Mode,
    pub potency: Potency,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub version: String,
}

impl VerifyReport {
    /// Re-verify every attached witness against its record.
    pub fn reverify(&self) -> std::result::Result<(), String> {
        for r in &self.records {
            match (&r.status, &r.witness) {
                (Status::Decomposable, Some(w)) => {
                    w.verify()?;
                    if w.companion_coeffs != r.g || w.potency != self.potency {
                        return Err(format!("witness for {:?} belongs elsewhere", r.g));
                    }
                    if self.mode == Mode::Commuting && !w.commuting {
                        return Err(format!("witness for {:?} does not commute", r.g));
                    }
                }
                (Status::Decomposable, None) => return Err(format!("{:?} has no witness", r.g)),
                (Status::NotDecomposable, Some(_)) => {
                    return Err(format!("{:?} is not decomposable but has a witness", r.g))
                }
                (Status::NotDecomposable, None) => {}
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub potency: Potency,
    pub brute_cap: u64,
    pub enum_cap: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            potency: Potency::Definition,
            brute_cap: DEFAULT_BRUTE_CAP,
            enum_cap: crate::companion::DEFAULT_ENUM_CAP,
            jobs: None,
        }
    }
}

fn decide(
    index: u64,
    n: usize,
    field: &FieldSpec,
    mode: Mode,
    stratum: &[Mat],
    opts: &VerifyOptions,
) -> Result<Record> {
    let g = coeffs_at(index, n, field);
    let form = companion_from_coeffs(field, &g)?;
    let witness = match mode {
        Mode::Constructive => decompose_wp2(&form, opts.potency, opts.enum_cap)?,
        Mode::Brute => brute_with(&form, stratum, opts.potency, false)?,
        Mode::Commuting => brute_with(&form, stratum, opts.potency, true)?,
    };
    if let Some(w) = &witness {
        w.verify().map_err(Error::WitnessRejected)?;
        if mode == Mode::Commuting && !w.commuting {
            return Err(Error::WitnessRejected("commuting flag unset".into()));
        }
    }
    Ok(Record {
        g: g.iter().map(|e| e.0).collect(),
        status: if witness.is_some() {
            Status::Decomposable
        } else {
            Status::NotDecomposable
        },
        witness,
    })
}

/// Decide every `n×n` companion over `field` in the given mode. Records are
/// in coefficient order whatever the thread count.
pub fn verify_field(n: usize, field: &FieldSpec, mode: Mode, opts: &VerifyOptions) -> Result<VerifyReport> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let q = field.order() as u64;
    if mode == Mode::Constructive && q <= n as u64 {
        return Err(Error::FieldTooSmall { q, n });
    }
    let count = companion_count(n, field, opts.enum_cap)?;
    let stratum = match mode {
        Mode::Constructive => Vec::new(),
        Mode::Brute | Mode::Commuting => square_zero_matrices(n, field, opts.brute_cap)?,
    };
    let run = || -> Result<Vec<Record>> {
        (0..count)
            .into_par_iter()
            .map(|k| decide(k, n, field, mode, &stratum, opts))
            .collect()
    };
    let records = match opts.jobs {
        None => run()?,
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Parse(e.to_string()))?
            .install(run)?,
    };
    let decomposable = records.iter().filter(|r| r.status == Status::Decomposable).count();
    Ok(VerifyReport {
        field: field.clone(),
        n,
        mode,
        potency: opts.potency,
        summary: Summary {
            total: records.len(),
            decomposable,
            failed: records.len() - decomposable,
        },
        records,
        version: VERSION.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureScan {
    pub report: VerifyReport,
    /// Coefficient tuples of companions with no commuting decomposition.
    pub non_decomposable: Vec<Vec<u32>>,
}

/// Commuting-mode verification plus the list of companions without a
/// commuting decomposition.
pub fn conjecture_scan(n: usize, field: &FieldSpec, opts: &VerifyOptions) -> Result<ConjectureScan> {
    let report = verify_field(n, field, Mode::Commuting, opts)?;
    let non_decomposable = report
        .records
        .iter()
        .filter(|r| r.status == Status::NotDecomposable)
        .map(|r| r.g.clone())
        .collect();
    Ok(ConjectureScan {
        report,
        non_decomposable,
    })
}

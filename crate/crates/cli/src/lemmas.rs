//! The lemma suite run by `weakper lemmas`: each claim checked exhaustively
//! on one field where that is cheap, and on seeded samples otherwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use weakper_core::gf::subfield_lattice;
use weakper_core::mat::eval_at_matrix;
use weakper_core::{
    brute_commuting_decompose, check_containments, check_fixed_point_certificate,
    check_root_of_unity_certificate, decompose_wp2, enumerate_companions, eq4omega_check,
    gcd_divides, sr_set, st_set, w_set, Element, Embedding, Error, FieldSpec, Mat, Potency, Result,
};

/// Largest `m` for which `W_m` is materialized; larger characteristic
/// polynomials of `f(P_m)` exceed the factoring bound.
const W_MATERIALIZE_MAX: u64 = 12;
const GCD_TRIPLES: usize = 10_000;
const GCD_MAX: u64 = 1_000_000;
const RANDOM_MATRICES: usize = 200;
/// Subfields up to this order have their embeddings checked on all pairs.
const EMBED_PAIRS_MAX: u32 = 256;

#[derive(Debug, Clone)]
pub struct LemmaConfig {
    pub field: FieldSpec,
    pub n: usize,
    pub ext_bound: usize,
    pub m_max: u64,
    pub potency: Potency,
    pub seed: u64,
    pub brute_cap: u64,
    pub enum_cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaResult {
    pub name: &'static str,
    pub claim: &'static str,
    pub status: LemmaStatus,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub field: FieldSpec,
    pub n: usize,
    pub ext_bound: usize,
    pub m_max: u64,
    pub potency: Potency,
    pub seed: u64,
    pub lemmas: Vec<LemmaResult>,
    pub version: String,
}

impl LemmaReport {
    pub fn failed(&self) -> usize {
        self.lemmas.iter().filter(|l| l.status == LemmaStatus::Fail).count()
    }
}

/// Tallies one lemma; the first counterexample is kept.
struct Tally {
    checked: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally { checked: 0, counterexample: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(what());
        }
    }

    fn finish(self, name: &'static str, claim: &'static str) -> LemmaResult {
        LemmaResult {
            name,
            claim,
            status: if self.counterexample.is_some() { LemmaStatus::Fail } else { LemmaStatus::Pass },
            checked: self.checked,
            counterexample: self.counterexample,
            note: None,
        }
    }
}

fn skipped(name: &'static str, claim: &'static str, note: String) -> LemmaResult {
    LemmaResult {
        name,
        claim,
        status: LemmaStatus::Skipped,
        checked: 0,
        counterexample: None,
        note: Some(note),
    }
}

fn is_resource_error(e: &Error) -> bool {
    matches!(
        e,
        Error::SearchSpaceTooLarge { .. } | Error::EnumerationTooLarge { .. } | Error::FieldTooLarge { .. }
    )
}

pub fn run(cfg: &LemmaConfig) -> Result<LemmaReport> {
    let lemmas = vec![
        subfield_embeddings(cfg)?,
        st_in_sr(cfg)?,
        field_in_sr(cfg)?,
        sr_in_w(cfg)?,
        omega_alpha(cfg)?,
        distinct_diagonal(cfg)?,
        trace_in_sr(cfg)?,
        sufficiency(cfg)?,
        commuting_certificates(cfg)?,
        gcd_lemma(cfg),
        cayley_hamilton(cfg)?,
    ];
    Ok(LemmaReport {
        field: cfg.field.clone(),
        n: cfg.n,
        ext_bound: cfg.ext_bound,
        m_max: cfg.m_max,
        potency: cfg.potency,
        seed: cfg.seed,
        lemmas,
        version: weakper_core::VERSION.to_string(),
    })
}

fn subfield_embeddings(cfg: &LemmaConfig) -> Result<LemmaResult> {
    let mut t = Tally::new();
    let lattice = subfield_lattice(&cfg.field)?;
    for sub in &lattice {
        for sup in lattice.iter().filter(|s| s.degree() % sub.degree() == 0) {
            let e = Embedding::new(sub, sup)?;
            let image: Vec<Element> = sub.elements().map(|x| e.apply(x)).collect::<Result<_>>()?;
            let mut sorted = image.clone();
            sorted.sort_unstable();
            sorted.dedup();
            t.check(sorted.len() == image.len(), || format!("{sub} -> {sup} is not injective"));
            if sub.order() > EMBED_PAIRS_MAX {
                continue;
            }
            for a in sub.elements() {
                for b in sub.elements() {
                    let (ea, eb) = (image[a.0 as usize], image[b.0 as usize]);
                    let ok = image[sub.add(a, b).0 as usize] == sup.add(ea, eb)
                        && image[sub.mul(a, b).0 as usize] == sup.mul(ea, eb);
                    t.check(ok, || format!("{sub} -> {sup} breaks at ({a}, {b})"));
                }
            }
        }
    }
    Ok(t.finish("subfield-embeddings", "each GF(p^d) with d | l embeds in GF(p^l) as a subfield"))
}

fn st_in_sr(cfg: &LemmaConfig) -> Result<LemmaResult> {
    let mut t = Tally::new();
    let st = st_set(cfg.n, &cfg.field, cfg.potency, cfg.enum_cap)?;
    let sr = sr_set(cfg.n, &cfg.field, cfg.ext_bound)?;
    for x in st {
        t.check(sr.contains(x), || format!("trace {x} of a potent companion is not in SR_{}", cfg.n));
    }
    Ok(t.finish("st-in-sr", "traces of potent companions are sums of at most n roots of unity"))
}

fn field_in_sr(cfg: &LemmaConfig) -> Result<LemmaResult> {
    let mut t = Tally::new();
    let sr = sr_set(cfg.n, &cfg.field, cfg.ext_bound)?;
    for x in cfg.field.elements() {
        t.check(sr.contains(x), || format!("{x} is not in SR_{}", cfg.n));
    }
    Ok(t.finish("field-in-sr", "every field element lies in SR_n"))
}

fn sr_in_w(cfg: &LemmaConfig) -> Result<LemmaResult> {
    let mut t = Tally::new();
    let r = check_containments(cfg.n, &cfg.field, cfg.ext_bound, cfg.m_max, cfg.potency, cfg.enum_cap)?;
    // check_containments covers ST within SR as well; count only placements.
    t.checked = r.placements_checked;
    if let Some(f) = r.placement_failures.first() {
        t.counterexample = Some(format!("{} (witness of length {}) is not placed in W_{}", f.value, f.length, f.m));
    } else if let Some(m) = r.divisor_failures.first() {
        t.counterexample = Some(format!("common order {m} has too few divisors"));
    }
    Ok(t.finish("sr-in-w", "each sum of roots of unity is an eigenvalue of f(P_m) for some f in L_{m,n}"))
}

fn omega_alpha(cfg: &LemmaConfig) -> Result<LemmaResult> {
    let mut t = Tally::new();
    for m in 2..=cfg.m_max.min(W_MATERIALIZE_MAX) {
        for w in w_set(m as u32, cfg.n as u32, &cfg.field, cfg.ext_bound)? {
            let found = eq4omega_check(w.value, &w.field, m)?;
            t.check(found.is_some(), || {
                format!(
                    "ω = {} in {} (eigenvalue of f(P_{m}) for f = {}) has no α in the prime field with (ω - α)^{m} in the prime field",
                    w.value, w.field, w.provenance
                )
            });
        }
    }
    Ok(t.finish("omega-alpha", "every ω in W_m has (ω - α)^m = u with α, u in the prime field"))
}

fn distinct_diagonal(cfg: &LemmaConfig) -> Result<LemmaResult> {
    let mut t = Tally::new();
    let q = cfg.field.order() as usize;
    if q < cfg.n {
        return Ok(skipped(
            "distinct-diagonal",
            "a diagonal matrix with distinct entries is potent and non-derogatory",
            format!("fewer than {} field elements", cfg.n),
        ));
    }
    // Increasing n-subsets in lexicographic order, up to the enumeration cap.
    let mut idx: Vec<usize> = (0..cfg.n).collect();
    loop {
        if t.checked as u64 >= cfg.enum_cap {
            break;
        }
        let d: Vec<Element> = idx.iter().map(|&i| Element(i as u32)).collect();
        let m = Mat::diag(&cfg.field, &d);
        let ok = Potency::ALL
            .iter()
            .all(|p| p.holds(&m) && p.holds_iterative(&m).unwrap_or(false))
            && m.min_poly() == m.char_poly();
        t.check(ok, || format!("diag{:?}", idx));
        let Some(k) = (0..cfg.n).rev().find(|&k| idx[k] < q - cfg.n + k) else {
            break;
        };
        idx[k] += 1;
        for j in k + 1..cfg.n {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(t.finish("distinct-diagonal", "a diagonal matrix with distinct entries is potent and non-derogatory"))
}

fn trace_in_sr(cfg: &LemmaConfig) -> Result<LemmaResult> {
    let mut t = Tally::new();
    let sr = sr_set(cfg.n, &cfg.field, cfg.ext_bound)?;
    for c in enumerate_companions(cfg.n, &cfg.field, cfg.enum_cap)? {
        if let Some(w) = decompose_wp2(&c, cfg.potency, cfg.enum_cap)? {
            t.check(sr.contains(w.potent.trace()), || format!("companion {:?}", w.companion_coeffs));
        }
    }
    Ok(t.finish("trace-in-sr", "a decomposable companion has its trace in SR_n"))
}

fn sufficiency(cfg: &LemmaConfig) -> Result<LemmaResult> {
    let name = "wp2-sufficiency";
    let claim = "over a field of order at least n + 1 every companion is potent plus square-zero";
    if (cfg.field.order() as usize) <= cfg.n {
        return Ok(skipped(name, claim, format!("field order {} is at most n", cfg.field.order())));
    }
    let mut t = Tally::new();
    for c in enumerate_companions(cfg.n, &cfg.field, cfg.enum_cap)? {
        let w = decompose_wp2(&c, cfg.potency, cfg.enum_cap)?;
        let ok = w.as_ref().is_some_and(|w| w.verify().is_ok());
        t.check(ok, || format!("companion {:?}", c.coeffs().iter().map(|e| e.0).collect::<Vec<_>>()));
    }
    Ok(t.finish(name, claim))
}

fn commuting_certificates(cfg: &LemmaConfig) -> Result<LemmaResult> {
    let name = "commuting-certificates";
    let claim = "commuting witnesses on invertible companions satisfy both divisibility certificates";
    let mut t = Tally::new();
    for c in enumerate_companions(cfg.n, &cfg.field, cfg.enum_cap)? {
        if c.coeffs()[0].is_zero() {
            continue;
        }
        let w = match brute_commuting_decompose(c.matrix(), cfg.potency, cfg.brute_cap) {
            Ok(w) => w,
            Err(e) if is_resource_error(&e) => return Ok(skipped(name, claim, e.to_string())),
            Err(e) => return Err(e),
        };
        let Some(w) = w else { continue };
        let Some(exp) = w.potency_exponent else {
            t.check(false, || format!("witness for {:?} has no exponent", w.companion_coeffs));
            continue;
        };
        let roots = check_root_of_unity_certificate(c.matrix(), exp)?;
        let (q, fixed) = check_fixed_point_certificate(c.matrix(), &w.potent)?;
        t.check(roots && fixed, || {
            format!("companion {:?}, t = {exp}, P = q(C) with q = {q}", w.companion_coeffs)
        });
    }
    Ok(t.finish(name, claim))
}

fn gcd_lemma(cfg: &LemmaConfig) -> LemmaResult {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..GCD_TRIPLES {
        let (a, b, c) = (rng.gen_range(1..=GCD_MAX), rng.gen_range(1..=GCD_MAX), rng.gen_range(1..=GCD_MAX));
        t.check(gcd_divides(a, b, c).0, || format!("a = {a}, b = {b}, c = {c}"));
    }
    t.finish("gcd", "gcd(bc, a) divides gcd(b, a)·gcd(c, a)")
}

fn cayley_hamilton(cfg: &LemmaConfig) -> Result<LemmaResult> {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let q = cfg.field.order();
    for _ in 0..RANDOM_MATRICES {
        let e = (0..cfg.n * cfg.n).map(|_| Element(rng.gen_range(0..q))).collect();
        let m = Mat::new(&cfg.field, cfg.n, e)?;
        let chi = m.char_poly();
        let mu = m.min_poly();
        let ok = eval_at_matrix(&chi, &m)?.is_zero() && eval_at_matrix(&mu, &m)?.is_zero() && mu.divides(&chi)?;
        t.check(ok, || format!("{:?}", m.to_rows()));
    }
    Ok(t.finish("cayley-hamilton", "χ(M) = 0 and the minimal polynomial divides χ"))
}

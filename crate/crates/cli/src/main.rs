//! `weakper`: decompose companion matrices over finite fields, verify whole
//! fields, inspect the trace sets and run the lemma suite.

mod cache;
mod lemmas;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use weakper_core::gf::{roots_of_unity, subfield_lattice};
use weakper_core::search::Status;
use weakper_core::{
    brute_commuting_decompose, brute_decompose, check_containments, companion_of, conjecture_scan,
    decompose_wp2, divisor_count, sr_set, st_set, verify_field, w_set, Embedding, Error, FieldSpec,
    Mode, Poly, Potency, VerifyOptions, VerifyReport, Witness, DEFAULT_BRUTE_CAP, DEFAULT_ENUM_CAP,
};

use cache::{write_atomic, Cache, CacheKey};

/// Exit codes.
const EXIT_LEMMA_FAILED: u8 = 1;
const EXIT_INVALID_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

const DEFAULT_SEED: u64 = 0x5eed;
const DEFAULT_M_MAX: u64 = 12;
/// `field-info` lists roots of unity element by element up to this order.
const LIST_ELEMENTS_MAX: u32 = 4096;

#[derive(Parser, Debug)]
#[command(name = "weakper", version, about = "Potent plus square-zero decompositions of companion matrices over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Field as p^l, optionally with its modulus: p^l/a0,...,al
    #[arg(long, global = true, default_value = "3^1")]
    field: String,

    /// Matrix size
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Potency notion: definition (M^(k+1) = M) or semisimple (squarefree minimal polynomial)
    #[arg(long, global = true, default_value = "definition")]
    potency: Potency,

    /// Largest extension degree searched for roots of unity and spectra (defaults to n)
    #[arg(long, global = true)]
    ext_bound: Option<usize>,

    /// Largest m for which W_m membership is confirmed by a determinant
    #[arg(long, global = true, default_value_t = DEFAULT_M_MAX)]
    m_max: u64,

    /// Cap on candidate square-zero matrices per companion
    #[arg(long, global = true, default_value_t = DEFAULT_BRUTE_CAP)]
    brute_cap: u64,

    /// Cap on enumerated companions
    #[arg(long, global = true, default_value_t = DEFAULT_ENUM_CAP)]
    enum_cap: u64,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cache directory for field reports (WEAKPER_CACHE takes precedence)
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads for field-wide searches (defaults to all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Subfield lattice, generator, and roots of unity
    FieldInfo,
    /// Decompose the companion matrix of one monic polynomial
    Decompose {
        /// Ascending coefficients including the leading 1, e.g. 1,3,1 for X^2+3X+1
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "constructive")]
        mode: Mode,
    },
    /// Decide every companion matrix of size n over the field
    Verify {
        #[arg(long, default_value = "constructive")]
        mode: Mode,
    },
    /// ST_n, SR_n, W_m for small m, and the containments between them
    Sets {
        /// Materialize W_m for 2 <= m <= this bound
        #[arg(long, default_value_t = 4)]
        w_max: u32,
    },
    /// Companions with no commuting decomposition
    Conjecture,
    /// Run the lemma suite and report pass/fail per lemma
    Lemmas,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Raised for bad arguments the parser cannot catch.
#[derive(Debug)]
struct InvalidInput(String);

impl std::fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidInput {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    InvalidInput(msg.into()).into()
}

/// Rendered output plus whether a checked claim failed.
struct Rendered {
    body: String,
    failed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if let Err(e) = emit(&cli, &r.body) {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_INVALID_INPUT);
            }
            if r.failed {
                ExitCode::from(EXIT_LEMMA_FAILED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(core) = e.downcast_ref::<Error>() {
        return match core {
            Error::SearchSpaceTooLarge { .. }
            | Error::EnumerationTooLarge { .. }
            | Error::FieldTooLarge { .. }
            | Error::ExponentOverflow => EXIT_RESOURCE,
            Error::WitnessRejected(_) | Error::NoRootFound | Error::NoPolynomialRepresentation => {
                EXIT_LEMMA_FAILED
            }
            _ => EXIT_INVALID_INPUT,
        };
    }
    EXIT_INVALID_INPUT
}

fn emit(cli: &Cli, body: &str) -> Result<()> {
    match &cli.out {
        Some(path) => write_atomic(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Rendered> {
    for (name, v) in [("--brute-cap", cli.brute_cap), ("--enum-cap", cli.enum_cap), ("--m-max", cli.m_max)] {
        if v == 0 {
            return Err(invalid(format!("{name} must be positive")));
        }
    }
    if cli.jobs == Some(0) || cli.ext_bound == Some(0) || cli.n == Some(0) {
        return Err(invalid("--jobs, --ext-bound and --n must be positive"));
    }
    let field = FieldSpec::parse_descriptor(&cli.field)?;
    match &cli.command {
        Command::FieldInfo => field_info(cli, &field),
        Command::Decompose { poly, mode } => decompose(cli, &field, poly, *mode),
        Command::Verify { mode } => verify(cli, &field, *mode),
        Command::Sets { w_max } => sets(cli, &field, *w_max),
        Command::Conjecture => conjecture(cli, &field),
        Command::Lemmas => run_lemmas(cli, &field),
    }
}

fn n_of(cli: &Cli) -> usize {
    cli.n.unwrap_or(2)
}

fn ext_bound_of(cli: &Cli) -> usize {
    cli.ext_bound.unwrap_or_else(|| n_of(cli))
}

fn options(cli: &Cli) -> VerifyOptions {
    VerifyOptions {
        potency: cli.potency,
        brute_cap: cli.brute_cap,
        enum_cap: cli.enum_cap,
        jobs: cli.jobs,
    }
}

fn cache(cli: &Cli) -> Result<Option<Cache>> {
    let dir = std::env::var_os("WEAKPER_CACHE")
        .filter(|d| !d.is_empty())
        .map(PathBuf::from)
        .or_else(|| cli.cache.clone());
    dir.map(|d| Cache::new(&d)).transpose()
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct SubfieldInfo {
    field: FieldSpec,
    /// Image of the subfield's X under the embedding.
    embedding_root: u32,
}

#[derive(Serialize)]
struct RootsInfo {
    order: u64,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<u32>>,
}

#[derive(Serialize)]
struct FieldInfo {
    field: FieldSpec,
    order: u32,
    modulus: Vec<u32>,
    generator: u32,
    subfields: Vec<SubfieldInfo>,
    /// For each divisor `i` of `q - 1`, the elements with `x^i = 1`.
    roots_of_unity: Vec<RootsInfo>,
}

fn field_info(cli: &Cli, field: &FieldSpec) -> Result<Rendered> {
    let subfields = subfield_lattice(field)?
        .into_iter()
        .map(|s| {
            let e = Embedding::new(&s, field)?;
            Ok(SubfieldInfo { embedding_root: e.root().0, field: s })
        })
        .collect::<Result<Vec<_>>>()?;
    let g = (field.order() - 1) as u64;
    let roots_of_unity = (1..=g)
        .filter(|i| g.is_multiple_of(*i))
        .map(|i| {
            let r = roots_of_unity(field, i);
            RootsInfo {
                order: i,
                count: r.len(),
                elements: (field.order() <= LIST_ELEMENTS_MAX).then(|| r.iter().map(|x| x.0).collect()),
            }
        })
        .collect();
    let info = FieldInfo {
        field: field.clone(),
        order: field.order(),
        modulus: field.modulus().to_vec(),
        generator: field.generator().0,
        subfields,
        roots_of_unity,
    };
    let body = match cli.format {
        Format::Json => json(&info)?,
        Format::Csv => csv(
            &["field", "order", "generator", "subfields", "divisors_of_q_minus_1"],
            &[vec![
                field.to_string(),
                info.order.to_string(),
                info.generator.to_string(),
                info.subfields.len().to_string(),
                divisor_count(g).to_string(),
            ]],
        ),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "{} with modulus {}", field, Poly::from_encodings(field, field.modulus())?)?;
            writeln!(s, "generator: {}", info.generator)?;
            for sf in &info.subfields {
                writeln!(s, "subfield {} via X -> {}", sf.field, sf.embedding_root)?;
            }
            for r in &info.roots_of_unity {
                writeln!(s, "x^{} = 1: {} elements", r.order, r.count)?;
            }
            s
        }
    };
    Ok(Rendered { body, failed: false })
}

#[derive(Serialize)]
struct DecomposeOutput {
    field: FieldSpec,
    poly: Vec<u32>,
    mode: Mode,
    potency: Potency,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

fn decompose(cli: &Cli, field: &FieldSpec, poly: &str, mode: Mode) -> Result<Rendered> {
    let g = Poly::parse(field, poly)?;
    if !g.is_monic() || g.degree().unwrap_or(0) == 0 {
        return Err(invalid(format!("{poly:?} is not a monic polynomial of positive degree")));
    }
    let c = companion_of(&g)?;
    if let Some(n) = cli.n {
        if n != c.n() {
            return Err(invalid(format!("--n {n} disagrees with the degree {} of --poly", c.n())));
        }
    }
    let witness = match mode {
        Mode::Constructive => decompose_wp2(&c, cli.potency, cli.enum_cap)?,
        Mode::Brute => brute_decompose(c.matrix(), cli.potency, cli.brute_cap)?,
        Mode::Commuting => brute_commuting_decompose(c.matrix(), cli.potency, cli.brute_cap)?,
    };
    if let Some(w) = &witness {
        w.verify().map_err(Error::WitnessRejected)?;
    }
    let out = DecomposeOutput {
        field: field.clone(),
        poly: g.encodings(),
        mode,
        potency: cli.potency,
        status: if witness.is_some() { Status::Decomposable } else { Status::NotDecomposable },
        witness,
    };
    let status = if out.witness.is_some() { "decomposable" } else { "not_decomposable" };
    let body = match cli.format {
        Format::Json => json(&out)?,
        Format::Csv => csv(
            &["field", "poly", "mode", "potency", "status"],
            &[vec![
                field.to_string(),
                g.to_string(),
                mode.name().into(),
                cli.potency.name().into(),
                status.into(),
            ]],
        ),
        Format::Text => {
            let mut s = format!("{} over {}: {status}\n", g, field);
            if let Some(w) = &out.witness {
                writeln!(s, "P = {:?}", w.potent.to_rows())?;
                writeln!(s, "N = {:?}", w.nilpotent.to_rows())?;
                if let Some(t) = w.potency_exponent {
                    writeln!(s, "P^{t} = P")?;
                }
            }
            s
        }
    };
    Ok(Rendered { body, failed: false })
}

/// Load a cached report or compute and store it. The returned JSON is the
/// canonical serialization either way.
fn cached_report(
    cli: &Cli,
    key: CacheKey,
    compute: impl FnOnce() -> Result<String>,
    validate: impl Fn(&str) -> Result<()>,
) -> Result<String> {
    let Some(cache) = cache(cli)? else {
        return compute();
    };
    if let Some(hit) = cache.load(&key) {
        if validate(&hit).is_ok() {
            return Ok(hit);
        }
        eprintln!("warning: discarding invalid cache entry {}", cache.path(&key).display());
    }
    let fresh = compute()?;
    cache.store(&key, &fresh)?;
    Ok(fresh)
}

fn check_report(text: &str) -> Result<VerifyReport> {
    let r: VerifyReport = serde_json::from_str(text).context("parsing cached report")?;
    r.reverify().map_err(|e| anyhow::anyhow!(e))?;
    if r.version != weakper_core::VERSION {
        bail!("cached report is from {}", r.version);
    }
    Ok(r)
}

fn verify_summary(r: &VerifyReport) -> Vec<String> {
    vec![
        r.field.to_string(),
        r.n.to_string(),
        r.mode.name().into(),
        r.potency.name().into(),
        r.summary.total.to_string(),
        r.summary.decomposable.to_string(),
        r.summary.failed.to_string(),
        r.version.clone(),
    ]
}

const VERIFY_HEADER: [&str; 8] = ["field", "n", "mode", "potency", "total", "decomposable", "failed", "version"];

fn verify_text(r: &VerifyReport) -> String {
    let mut s = format!(
        "{} n={} mode={} potency={}: {}/{} decomposable\n",
        r.field,
        r.n,
        r.mode.name(),
        r.potency.name(),
        r.summary.decomposable,
        r.summary.total
    );
    for rec in r.records.iter().filter(|rec| rec.status == Status::NotDecomposable) {
        let _ = writeln!(s, "not decomposable: {:?}", rec.g);
    }
    s
}

fn verify(cli: &Cli, field: &FieldSpec, mode: Mode) -> Result<Rendered> {
    let n = n_of(cli);
    let opts = options(cli);
    let key = CacheKey {
        kind: "verify",
        field: field.clone(),
        n,
        mode,
        potency: cli.potency,
        brute_cap: cli.brute_cap,
        enum_cap: cli.enum_cap,
    };
    let text = cached_report(
        cli,
        key,
        || json(&verify_field(n, field, mode, &opts)?),
        |t| check_report(t).map(|_| ()),
    )?;
    let report = check_report(&text)?;
    // A constructive miss contradicts sufficiency; brute misses are data.
    let failed = mode == Mode::Constructive && report.summary.failed > 0;
    let body = match cli.format {
        Format::Json => text,
        Format::Csv => csv(&VERIFY_HEADER, &[verify_summary(&report)]),
        Format::Text => verify_text(&report),
    };
    Ok(Rendered { body, failed })
}

fn conjecture(cli: &Cli, field: &FieldSpec) -> Result<Rendered> {
    let n = n_of(cli);
    let opts = options(cli);
    let key = CacheKey {
        kind: "conjecture",
        field: field.clone(),
        n,
        mode: Mode::Commuting,
        potency: cli.potency,
        brute_cap: cli.brute_cap,
        enum_cap: cli.enum_cap,
    };
    let parse = |t: &str| -> Result<weakper_core::search::ConjectureScan> {
        let scan: weakper_core::search::ConjectureScan = serde_json::from_str(t)?;
        check_report(&serde_json::to_string(&scan.report)?)?;
        Ok(scan)
    };
    let text = cached_report(cli, key, || json(&conjecture_scan(n, field, &opts)?), |t| parse(t).map(|_| ()))?;
    let scan = parse(&text)?;
    let body = match cli.format {
        Format::Json => text,
        Format::Csv => {
            let mut header = VERIFY_HEADER.to_vec();
            header.push("non_decomposable");
            let mut row = verify_summary(&scan.report);
            row.push(scan.non_decomposable.len().to_string());
            csv(&header, &[row])
        }
        Format::Text => verify_text(&scan.report),
    };
    Ok(Rendered { body, failed: false })
}

#[derive(Serialize)]
struct WSetOutput {
    m: u32,
    members: Vec<weakper_core::rosets::WMember>,
}

#[derive(Serialize)]
struct SetsOutput {
    field: FieldSpec,
    n: usize,
    ext_bound: usize,
    potency: Potency,
    st: Vec<u32>,
    sr: weakper_core::rosets::SrReport,
    w: Vec<WSetOutput>,
    containments: weakper_core::rosets::ContainmentReport,
}

fn sets(cli: &Cli, field: &FieldSpec, w_max: u32) -> Result<Rendered> {
    let n = n_of(cli);
    let d = ext_bound_of(cli);
    let st: Vec<u32> = st_set(n, field, cli.potency, cli.enum_cap)?.iter().map(|x| x.0).collect();
    let sr = sr_set(n, field, d)?.report();
    let w = (2..=w_max)
        .map(|m| Ok(WSetOutput { m, members: w_set(m, n as u32, field, d)? }))
        .collect::<Result<Vec<_>>>()?;
    let containments = check_containments(n, field, d, cli.m_max, cli.potency, cli.enum_cap)?;
    let failed = !containments.pass;
    let out = SetsOutput { field: field.clone(), n, ext_bound: d, potency: cli.potency, st, sr, w, containments };
    let list = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let body = match cli.format {
        Format::Json => json(&out)?,
        Format::Csv => csv(
            &["field", "n", "ext_bound", "potency", "st", "sr", "placements", "pass"],
            &[vec![
                field.to_string(),
                n.to_string(),
                d.to_string(),
                cli.potency.name().into(),
                list(&out.st),
                list(&out.sr.elements),
                out.containments.placements_checked.to_string(),
                out.containments.pass.to_string(),
            ]],
        ),
        Format::Text => {
            let mut s = format!("{} n={} D={} potency={}\n", field, n, d, cli.potency.name());
            writeln!(s, "ST = {{{}}}", list(&out.st))?;
            writeln!(s, "SR = {{{}}}", list(&out.sr.elements))?;
            for wm in &out.w {
                let members: Vec<String> = wm.members.iter().map(|x| format!("{}@{}", x.value, x.field)).collect();
                writeln!(s, "W_{} = {{{}}}", wm.m, members.join(" "))?;
            }
            writeln!(
                s,
                "containments: {} ({} placements)",
                if out.containments.pass { "pass" } else { "FAIL" },
                out.containments.placements_checked
            )?;
            s
        }
    };
    Ok(Rendered { body, failed })
}

fn run_lemmas(cli: &Cli, field: &FieldSpec) -> Result<Rendered> {
    let cfg = lemmas::LemmaConfig {
        field: field.clone(),
        n: n_of(cli),
        ext_bound: ext_bound_of(cli),
        m_max: cli.m_max,
        potency: cli.potency,
        seed: cli.seed,
        brute_cap: cli.brute_cap,
        enum_cap: cli.enum_cap,
    };
    let report = lemmas::run(&cfg)?;
    let failed = report.failed() > 0;
    let status = |s: lemmas::LemmaStatus| match s {
        lemmas::LemmaStatus::Pass => "PASS",
        lemmas::LemmaStatus::Fail => "FAIL",
        lemmas::LemmaStatus::Skipped => "SKIP",
    };
    let body = match cli.format {
        Format::Json => json(&report)?,
        Format::Csv => csv(
            &["lemma", "status", "checked"],
            &report
                .lemmas
                .iter()
                .map(|l| vec![l.name.to_string(), status(l.status).to_lowercase(), l.checked.to_string()])
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut s = String::new();
            for l in &report.lemmas {
                write!(s, "{} {}: {} ({} checked)", status(l.status), l.name, l.claim, l.checked)?;
                if let Some(c) = &l.counterexample {
                    write!(s, "; counterexample: {c}")?;
                }
                if let Some(note) = &l.note {
                    write!(s, "; {note}")?;
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Rendered { body, failed })
}

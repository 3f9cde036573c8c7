//! Argument types and command dispatch for the `omega23` binary.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use omega23::certify::{certification_input, certify_generation, CertBudget, Verdict, DEFAULT_ORBIT_CAP};
use omega23::ff::prime_power;
use omega23::forms::{gram_matrix, omega_order, witt_type, OrthoSpace};
use omega23::gens::{build_pair, classify, default_a, search_a, GenPair};
use omega23::oracle::{classify_by_isotropic_count, group_counts};
use omega23::order::OrderConfig;
use omega23::verify::{
    load_claims, pair_params, verify_all, verify_case_a, verify_case_b, verify_order_claims_with, verify_structural,
    VerificationReport, CLAIMS_JSONL,
};
use omega23::{Error, Field, Matrix, DEFAULT_SEED};

pub mod render;

pub const SEED_ENV: &str = "OMEGA23_SEED";

/// Exit statuses.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INCONCLUSIVE: i32 = 3;
}

#[derive(Parser, Debug)]
#[command(name = "omega23", version, about = "(2,3)-generators of orthogonal groups over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized steps (certification, factoring).
    #[arg(long, global = true, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the generator pair and print it.
    Generate(PairArgs),
    /// Run identity checks on a pair and/or the order-claims table.
    Verify(VerifyArgs),
    /// Decide generation with a stabilizer chain.
    Certify(CertifyArgs),
    /// List admissible parameters and the counting-bound report.
    SearchA(SearchArgs),
    /// Spinor norm of a matrix with respect to a Gram matrix.
    Spinor(SpinorArgs),
    /// Brute-force checks of the group-order and form-type formulas.
    Oracle(OracleArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    #[arg(long)]
    pub n: usize,
    /// Field order, as `27` or `3^3`.
    #[arg(long, value_parser = parse_q)]
    pub q: u64,
    /// Parameter in field syntax: an integer, or a coefficient array such as `[0,1]`.
    /// Defaults to the canonical admissible choice.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Build even when the parameter is not admissible.
    #[arg(long)]
    pub force: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Structural,
    Case,
    All,
    Claims,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_parser = parse_q)]
    pub q: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long)]
    pub force: bool,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Also evaluate the order-claims rows for this `(n, q)`.
    #[arg(long)]
    pub claims: bool,
    /// Claims table to use instead of the built-in one.
    #[arg(long)]
    pub claims_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Certify `⟨y, τ⟩` on the 9-dimensional block instead of `⟨x, y⟩`.
    #[arg(long)]
    pub restrict_s9: bool,
    #[arg(long)]
    pub budget_seconds: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
    pub orbit_cap: usize,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_q)]
    pub q: u64,
    /// Only the first admissible value.
    #[arg(long)]
    pub first: bool,
}

#[derive(Args, Debug)]
pub struct SpinorArgs {
    #[arg(long, value_parser = parse_q)]
    pub q: u64,
    /// Matrix JSON (`{"rows","cols","entries"}` or a list of rows), or `@path`.
    #[arg(long)]
    pub matrix: String,
    /// Gram matrix in the same syntax; defaults to the construction's form in that dimension.
    #[arg(long)]
    pub gram: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    All,
    OmegaOrder,
    WittType,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_q)]
    pub q: u64,
    #[arg(long, value_enum, default_value_t = OracleKind::All)]
    pub kind: OracleKind,
}

/// A failure before any check could run.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Build(Error),
    Io(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Build(_) => "build",
            CliError::Io(_) => "io",
        }
    }

    pub fn to_json(&self) -> Value {
        let message = match self {
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
            CliError::Build(e) => e.to_string(),
        };
        json!({ "error": { "kind": self.kind(), "message": message } })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Build(e)
    }
}

/// Report plus exit status.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

pub fn parse_q(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let q = match s.split_once('^') {
        Some((p, f)) => {
            let p: u64 = p.trim().parse().map_err(|e| format!("bad prime {p:?}: {e}"))?;
            let f: u32 = f.trim().parse().map_err(|e| format!("bad exponent {f:?}: {e}"))?;
            p.checked_pow(f).ok_or_else(|| format!("{s} overflows"))?
        }
        None => s.parse().map_err(|e| format!("bad field order {s:?}: {e}"))?,
    };
    match prime_power(q) {
        Some((2, _)) => Err("q must be odd".into()),
        Some(_) => Ok(q),
        None => Err(format!("{q} is not a prime power")),
    }
}

fn field(q: u64) -> Result<Field, CliError> {
    Ok(Field::from_order(q)?)
}

fn build(args: &PairArgs) -> Result<GenPair, CliError> {
    let k = field(args.q)?;
    let a = match &args.a {
        Some(s) => k.parse_elem(s)?,
        None => default_a(args.n, &k)?,
    };
    Ok(build_pair(args.n, &k, a, args.force)?)
}

fn status(passed: bool) -> i32 {
    if passed {
        exit::PASS
    } else {
        exit::CHECK_FAILED
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Generate(args) => generate(args),
        Command::Verify(args) => verify(args, cli.seed),
        Command::Certify(args) => certify(args, cli.seed),
        Command::SearchA(args) => search(args),
        Command::Spinor(args) => spinor(args),
        Command::Oracle(args) => oracle(args),
    }
}

fn generate(args: &PairArgs) -> Result<Outcome, CliError> {
    let pair = build(args)?;
    let report = json!({
        "params": pair_params(&pair),
        "admissibility": pair.admissibility,
        "gram": pair.space.gram().to_json(),
        "x": pair.x.to_json(),
        "y": pair.y.to_json(),
    });
    Ok(Outcome { report, code: exit::PASS })
}

fn claims_text(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => Ok(CLAIMS_JSONL.to_string()),
    }
}

fn verify(args: &VerifyArgs, seed: u64) -> Result<Outcome, CliError> {
    let cfg = OrderConfig { seed, ..OrderConfig::default() };
    let claims_report = |n: Option<usize>, q: Option<u64>| -> Result<VerificationReport, CliError> {
        let claims: Vec<_> = load_claims(&claims_text(&args.claims_file)?)?
            .into_iter()
            .filter(|c| n.is_none_or(|n| c.n == n) && q.is_none_or(|q| c.q == q))
            .collect();
        Ok(verify_order_claims_with(&claims, &cfg))
    };
    if args.suite == Suite::Claims {
        let r = claims_report(args.n, args.q)?;
        let code = status(r.passed());
        return Ok(Outcome { report: report_json(&r), code });
    }
    let (Some(n), Some(q)) = (args.n, args.q) else {
        return Err(CliError::Usage(format!("--n and --q are required for --suite {:?}", args.suite).to_lowercase()));
    };
    let pair = build(&PairArgs { n, q, a: args.a.clone(), force: args.force })?;
    let mut r = match args.suite {
        Suite::Structural => verify_structural(&pair),
        Suite::Case => match pair.tag.case {
            omega23::gens::Case::A => verify_case_a(&pair)?,
            _ => verify_case_b(&pair)?,
        },
        _ => verify_all(&pair)?,
    };
    if args.claims {
        let extra = claims_report(Some(n), Some(q))?;
        r.timing_ms += extra.timing_ms;
        r.absorb("claims: ", extra);
    }
    let code = status(r.passed());
    Ok(Outcome { report: report_json(&r), code })
}

fn report_json(r: &VerificationReport) -> Value {
    let mut v = serde_json::to_value(r).expect("report serializes");
    let counts = json!({
        "pass": r.count(omega23::verify::Status::Pass),
        "fail": r.count(omega23::verify::Status::Fail),
        "skip": r.count(omega23::verify::Status::Skip),
    });
    v["summary"] = counts;
    v
}

fn certify(args: &CertifyArgs, seed: u64) -> Result<Outcome, CliError> {
    let pair = build(&args.pair)?;
    let budget = CertBudget {
        time_limit: args.budget_seconds.map(Duration::from_secs),
        orbit_cap: args.orbit_cap,
        ..CertBudget::default()
    };
    let result = certify_generation(&pair, args.restrict_s9, seed, &budget)?;
    let (gens, space) = certification_input(&pair, args.restrict_s9)?;
    let contained = gens.iter().all(|g| space.in_omega(g).ok());
    let code = match result.verdict {
        Verdict::Generates => exit::PASS,
        Verdict::ProperSubgroup => exit::CHECK_FAILED,
        Verdict::Inconclusive if !contained => exit::CHECK_FAILED,
        Verdict::Inconclusive => exit::INCONCLUSIVE,
    };
    let report = serde_json::to_value(&result).expect("certificate serializes");
    Ok(Outcome { report, code })
}

fn search(args: &SearchArgs) -> Result<Outcome, CliError> {
    let k = field(args.q)?;
    let tag = classify(args.n)?;
    match search_a(args.n, &k, !args.first) {
        Ok(r) => {
            let report = json!({
                "n": args.n,
                "q": k.q(),
                "field": k.header(),
                "case": tag.case.to_string(),
                "values": r.values.iter().map(|&a| k.to_json(a)).collect::<Vec<_>>(),
                "bound": r.bound,
            });
            Ok(Outcome { report, code: exit::PASS })
        }
        Err(Error::NoAdmissibleParameter { .. }) => {
            let report = json!({
                "n": args.n,
                "q": k.q(),
                "field": k.header(),
                "case": tag.case.to_string(),
                "values": [],
                "bound": omega23::gens::counting_bound(args.n, &k)?,
            });
            Ok(Outcome { report, code: exit::CHECK_FAILED })
        }
        Err(e) => Err(e.into()),
    }
}

/// Matrix from inline JSON or `@path`; accepts the report form or a bare list of rows.
pub fn read_matrix(k: &Field, src: &str) -> Result<Matrix, CliError> {
    let text = match src.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?,
        None => src.to_string(),
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("matrix JSON: {e}")))?;
    let v = match v {
        Value::Array(rows) => {
            let cols = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
            json!({ "rows": rows.len(), "cols": cols, "entries": rows })
        }
        other => other,
    };
    Ok(Matrix::from_json(k, &v)?)
}

fn spinor(args: &SpinorArgs) -> Result<Outcome, CliError> {
    let k = field(args.q)?;
    let g = read_matrix(&k, &args.matrix)?;
    if !g.is_square() {
        return Err(Error::NotSquare(g.rows(), g.cols()).into());
    }
    let n = g.rows();
    let space = match &args.gram {
        Some(src) => OrthoSpace::new(read_matrix(&k, src)?)?,
        None => gram_matrix(classify(n)?.case.family(), n, &k)?,
    };
    let membership = space.in_omega(&g);
    let isometry = space.preserves(&g);
    let (norm, centers) = if isometry {
        let centers = space.reflection_decomposition(&g)?;
        let norm = space.spinor_norm(&g)?;
        (json!(if norm.is_square { "square" } else { "nonsquare" }), json!(centers.len()))
    } else {
        (Value::Null, Value::Null)
    };
    let report = json!({
        "n": n,
        "q": k.q(),
        "field": k.header(),
        "eps": space.eps(),
        "isometry": isometry,
        "det": k.to_json(g.det()?),
        "spinor_norm": norm,
        "reflections": centers,
        "in_omega": membership.ok(),
        "failures": membership.failures,
    });
    Ok(Outcome { report, code: exit::PASS })
}

fn oracle(args: &OracleArgs) -> Result<Outcome, CliError> {
    let k = field(args.q)?;
    let space = OrthoSpace::new(Matrix::identity(&k, args.n))?;
    let mut report = json!({ "n": args.n, "q": k.q(), "field": k.header(), "eps": space.eps() });
    let mut ok = true;
    if matches!(args.kind, OracleKind::All | OracleKind::OmegaOrder) {
        let counts = group_counts(&space)?;
        let formula = omega_order(args.n, space.eps(), args.q)?;
        let matches = formula == counts.omega.into();
        ok &= matches && counts.omega_has_index_two();
        report["omega_order"] = json!({
            "isometries": counts.isometries,
            "special": counts.special,
            "omega": counts.omega,
            "formula": formula.to_string(),
            "matches": matches,
            "index_two": counts.omega_has_index_two(),
        });
    }
    if matches!(args.kind, OracleKind::All | OracleKind::WittType) {
        let counted = classify_by_isotropic_count(&space)?;
        let predicted = witt_type(args.n, args.q);
        ok &= counted == predicted;
        report["witt_type"] = json!({
            "isotropic": space.isotropic_count()?,
            "counted": counted,
            "predicted": predicted,
            "matches": counted == predicted,
        });
    }
    Ok(Outcome { report, code: status(ok) })
}

mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use arboreal::frobenius::{census, compare, Candidate, FrobError};
use arboreal::localfields::{ramification_report, LocalError};
use arboreal::pcf::{
    disc_iterate, embedding_target, pcf_classify, square_prediction, verify_square_prediction,
    PcfError, SquareEvidence, DEFAULT_ORBIT_BOUND,
};
use arboreal::permgroup::{
    chief_series, harvest_group, minimal_normal_subgroups, rank2_witness, tower_e, ArborealGroup,
    Family, GroupError, DEFAULT_ENUMERATION_BOUND, DEFAULT_RANK_ATTEMPTS,
};
use arboreal::polyarith::{is_square_rat, parse_rat, IterPoly, PolyError, Rat};
use arboreal::treewreath::{TreeError, TreeShape};

use output::{render, Format};

#[derive(Parser, Debug)]
#[command(name = "arboreal", version, about = "Arboreal groups, iterate discriminants and Frobenius evidence")]
struct Cli {
    /// Seed for randomized searches; reported values do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Largest prime sampled by `frob`.
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    prime_bound: u64,
    /// Largest group order enumerated element by element.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
    enum_bound: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// `full`, `E` or `F`.
    family: String,
    d: usize,
    n: usize,
    /// `m` for `E`, `m1 m2` for `F`.
    params: Vec<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a tree group and report its order, chief series, rank witness or tower.
    Group {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        order: bool,
        #[arg(long)]
        chief: bool,
        #[arg(long)]
        rank: bool,
        #[arg(long)]
        tower: bool,
        #[arg(long, default_value_t = DEFAULT_RANK_ATTEMPTS)]
        rank_attempts: usize,
    },
    /// Discriminant of f^n - α by the recursion, checked against the direct value.
    Disc {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        n: usize,
        /// Require the discriminant to be a rational square.
        #[arg(long)]
        verify_square: bool,
    },
    /// Critical orbit, square prediction and embedding target of f.
    Pcf {
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// Base point for the square check.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ORBIT_BOUND)]
        orbit_bound: usize,
    },
    /// Valuation condition, Eisenstein shifts and ramification evidence.
    Local {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        n: usize,
    },
    /// Frobenius degree partitions of f^n - α against candidate censuses.
    Frob {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        n: usize,
        /// Candidate family: `full`, `E:m` or `F:m1,m2`; repeatable.
        #[arg(long = "candidate", default_value = "full")]
        candidates: Vec<String>,
    },
    /// Exact cycle-type census of a tree group.
    Census {
        #[command(flatten)]
        family: FamilyArgs,
    },
}

#[derive(Debug)]
enum Failure {
    /// A hard check did not pass; the report is still printed.
    Check(Value, Option<String>, String),
    Usage(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(..) => 1,
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
        }
    }
}

impl From<TreeError> for Failure {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::TooLarge { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::EnumerationBound { .. }
            | GroupError::HarvestFailure { .. }
            | GroupError::NonTermination { .. } => Failure::Resource(e.to_string()),
            GroupError::Tree(t) => t.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<PcfError> for Failure {
    fn from(e: PcfError) -> Self {
        match e {
            PcfError::Poly(p) => p.into(),
            PcfError::RecursionMismatch { .. } => Failure::Check(Value::Null, None, e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<LocalError> for Failure {
    fn from(e: LocalError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<FrobError> for Failure {
    fn from(e: FrobError) -> Self {
        match e {
            FrobError::Group(g) => g.into(),
            FrobError::Poly(p) => p.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Report {
    value: Value,
    tsv: Option<String>,
}

impl Report {
    fn new(value: Value) -> Self {
        Report { value, tsv: None }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn parse_poly(s: &str) -> Result<IterPoly, Failure> {
    s.parse::<IterPoly>().map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_alpha(s: &str) -> Result<Rat, Failure> {
    parse_rat(s).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_family(args: &FamilyArgs) -> Result<(TreeShape, Family), Failure> {
    let shape = TreeShape::new(args.d, args.n)?;
    let family = match (args.family.as_str(), args.params.as_slice()) {
        ("full" | "Full", []) => Family::Full,
        ("E" | "e", [m]) => Family::E { m: *m },
        ("F" | "f", [m1, m2]) => Family::F { m1: *m1, m2: *m2 },
        (name, params) => {
            return Err(Failure::Usage(format!(
                "family {name:?} with {} parameter(s); expected `full`, `E m` or `F m1 m2`",
                params.len()
            )))
        }
    };
    family.validate(shape)?;
    Ok((shape, family))
}

fn build(shape: TreeShape, family: Family, seed: u64) -> Result<ArborealGroup, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(harvest_group(shape, family, &mut rng)?)
}

struct GroupRequest {
    order: bool,
    chief: bool,
    rank: bool,
    tower: bool,
    rank_attempts: usize,
}

fn cmd_group(cli: &Cli, args: &FamilyArgs, req: GroupRequest) -> Result<Report, Failure> {
    let (shape, family) = parse_family(args)?;
    let built = build(shape, family, cli.seed)?;
    let order = built.group.order();
    let mut report = json!({
        "family": family.to_string(),
        "d": shape.d,
        "n": shape.n,
    });
    let mut failures = Vec::new();
    let all = !(req.order || req.chief || req.rank || req.tower);
    if req.order || all {
        let closed = family.closed_form_order(shape);
        report["order"] = json!(order.to_string());
        report["closed_form_order"] = json!(closed.to_string());
        report["order_certified"] = json!(closed == order);
    }
    if req.chief {
        let series = chief_series(&built.group, cli.enum_bound)?;
        let minimal = minimal_normal_subgroups(&built.group, cli.enum_bound)?;
        report["chief"] = json!({
            "count": series.len(),
            "unique": series.len() == 1,
            "factor_orders": series.first().map(|s| s.factor_orders()),
            "minimal_normal_orders": minimal.iter().map(|m| m.order().to_string()).collect::<Vec<_>>(),
        });
    }
    if req.rank {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        match rank2_witness(&built.group, req.rank_attempts, &mut rng)? {
            Some(w) => {
                report["rank"] = json!({
                    "witness_found": true,
                    "attempts": w.attempts,
                    "x": w.x.to_string(),
                    "y": w.y.to_string(),
                    "generated_order": order.to_string(),
                });
            }
            None => {
                report["rank"] = json!({ "witness_found": false, "attempts": req.rank_attempts });
                failures.push("no generating pair found within the attempt budget".to_string());
            }
        }
    }
    if req.tower {
        if family != (Family::E { m: 2 }) {
            return Err(Failure::Usage("--tower applies to `E d n 2`".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        match tower_e(shape, &mut rng) {
            Ok(t) => {
                report["tower"] = json!({
                    "verified": true,
                    "orders": t.orders(),
                    "factor_orders": t.factor_orders(),
                })
            }
            Err(e @ (GroupError::TowerInclusion(_) | GroupError::TowerNormality(_))) => {
                report["tower"] = json!({ "verified": false, "error": e.to_string() });
                failures.push(e.to_string());
            }
            Err(e) => return Err(e.into()),
        }
    }
    finish(report, None, failures)
}

fn finish(value: Value, tsv: Option<String>, failures: Vec<String>) -> Result<Report, Failure> {
    if failures.is_empty() {
        Ok(Report { value, tsv })
    } else {
        Err(Failure::Check(value, tsv, failures.join("; ")))
    }
}

fn cmd_disc(f: &str, alpha: &str, n: usize, verify_square: bool) -> Result<Report, Failure> {
    let f = parse_poly(f)?;
    let alpha = parse_alpha(alpha)?;
    let report = disc_iterate(&f, &alpha, n)?;
    let mut value = to_value(&report);
    value["f"] = json!(f.pretty());
    let mut failures = Vec::new();
    if verify_square {
        let square = is_square_rat(&report.disc_value);
        value["square_checked"] = json!(square);
        if !square {
            failures.push(format!("disc(f^{n} - α) is not a rational square"));
        }
    }
    finish(value, None, failures)
}

fn cmd_pcf(f: &str, alpha: Option<&str>, bound: usize) -> Result<Report, Failure> {
    let f = parse_poly(f)?;
    let profile = match pcf_classify(&f, bound) {
        Ok(p) => p,
        Err(e @ (PcfError::NotPcf | PcfError::NotPcfWithinBound { .. })) => {
            let value = json!({ "f": f.pretty(), "is_pcf": false, "reason": e.to_string() });
            return Err(Failure::Check(value, None, e.to_string()));
        }
        Err(e) => return Err(e.into()),
    };
    let prediction = square_prediction(&profile);
    let mut value = json!({
        "f": f.pretty(),
        "is_pcf": true,
        "d": profile.degree,
        "L": profile.tail,
        "O": profile.period,
        "case": prediction.case,
        "n_star": prediction.n_star,
        "m_star": prediction.m_star,
        "target_group": embedding_target(&profile).label(),
    });
    let mut failures = Vec::new();
    if let Some(alpha) = alpha {
        let alpha = parse_alpha(alpha)?;
        let check = verify_square_prediction(&f, &profile, &alpha)?;
        value["alpha"] = json!(alpha.to_string());
        value["disc_n"] = json!(check.disc_n.to_string());
        value["square_checked"] = json!(check.holds());
        value["square_evidence"] = json!(match check.evidence {
            SquareEvidence::Exact { .. } => "exact",
            SquareEvidence::Structural { .. } => "structural",
        });
        if !check.holds() {
            failures.push("the predicted square could not be verified".to_string());
        }
    }
    finish(value, None, failures)
}

fn cmd_local(f: &str, alpha: &str, n: usize) -> Result<Report, Failure> {
    let f = parse_poly(f)?;
    let alpha = parse_alpha(alpha)?;
    let report = ramification_report(&f, &alpha, n)?;
    let mut failures = Vec::new();
    if !report.all_evidenced() {
        failures.push("ramification evidence incomplete".to_string());
    }
    let mut value = to_value(&report);
    value["f"] = json!(f.pretty());
    finish(value, None, failures)
}

fn cmd_frob(cli: &Cli, f: &str, alpha: &str, n: usize, names: &[String]) -> Result<Report, Failure> {
    let f = parse_poly(f)?;
    let alpha = parse_alpha(alpha)?;
    let d = f.degree().unwrap_or(0);
    let shape = TreeShape::new(d, n)?;
    let mut candidates = Vec::new();
    for name in names {
        let family: Family = name.parse()?;
        family.validate(shape)?;
        let built = build(shape, family, cli.seed)?;
        candidates.push(Candidate {
            name: family.to_string(),
            census: census(&built.group, cli.enum_bound)?,
        });
    }
    let report = compare(&f, &alpha, n, cli.prime_bound, &candidates)?;
    let mut failures: Vec<String> = report
        .candidates
        .iter()
        .filter(|c| !c.containment)
        .map(|c| format!("observed partitions outside {}", c.name))
        .collect();
    if report.insufficient_data {
        failures.push("no good primes below the bound".into());
    }
    let tsv = report.to_tsv();
    finish(to_value(&report), Some(tsv), failures)
}

fn cmd_census(cli: &Cli, args: &FamilyArgs) -> Result<Report, Failure> {
    let (shape, family) = parse_family(args)?;
    let built = build(shape, family, cli.seed)?;
    let c = census(&built.group, cli.enum_bound)?;
    let frequencies: serde_json::Map<String, Value> = c
        .frequencies()
        .into_iter()
        .map(|(t, q)| (t.to_string(), json!(q.to_string())))
        .collect();
    Ok(Report::new(json!({
        "family": family.to_string(),
        "d": shape.d,
        "n": shape.n,
        "order": c.order.to_string(),
        "counts": to_value(&c.counts),
        "frequencies": frequencies,
        "total": c.total_frequency().to_string(),
    })))
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Group {
            family,
            order,
            chief,
            rank,
            tower,
            rank_attempts,
        } => cmd_group(
            cli,
            family,
            GroupRequest {
                order: *order,
                chief: *chief,
                rank: *rank,
                tower: *tower,
                rank_attempts: *rank_attempts,
            },
        ),
        Command::Disc {
            f,
            alpha,
            n,
            verify_square,
        } => cmd_disc(f, alpha, *n, *verify_square),
        Command::Pcf { f, alpha, orbit_bound } => cmd_pcf(f, alpha.as_deref(), *orbit_bound),
        Command::Local { f, alpha, n } => cmd_local(f, alpha, *n),
        Command::Frob {
            f,
            alpha,
            n,
            candidates,
        } => cmd_frob(cli, f, alpha, *n, candidates),
        Command::Census { family } => cmd_census(cli, family),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(&cli) {
        Ok(report) => {
            let _ = stdout.write_all(render(&report.value, cli.format, report.tsv).as_bytes());
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let code = failure.code();
            match failure {
                Failure::Check(value, tsv, message) => {
                    if !value.is_null() {
                        let _ = stdout.write_all(render(&value, cli.format, tsv).as_bytes());
                    }
                    eprintln!("check failed: {message}");
                }
                Failure::Usage(message) => eprintln!("error: {message}"),
                Failure::Resource(message) => eprintln!("resource limit: {message}"),
            }
            ExitCode::from(code)
        }
    }
}

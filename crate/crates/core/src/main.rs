//! `ctw`: command-line surface for the constant-term workbench.
//!
//! Exit codes: 0 all-MATCH, 1 any MISMATCH, 2 invalid input.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ct_workbench::tournament::{r1_family, r2_family};
use ct_workbench::verify::{enumerate_instances, SweepSummary};
use ct_workbench::{
    build_product, default_ceiling, verify_instance, GroundSet, IdentityInstance, ProductSpec,
    QPolicy, QSet, SweepSpec, Theorem, VerificationReport, Verdict,
};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ctw", version, about = "Exact constant-term identity workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify one instance (inline flags) or a batch (--instances file)
    Verify(VerifyArgs),
    /// Exhaustively verify a bounded family of instances
    Sweep(SweepArgs),
    /// Expand a product spec and print its constant term
    Ct(CtArgs),
    /// List tournaments E-bar-Q with transitivity, winners and families
    Tournaments(TournArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    theorem: Option<String>,
    /// Inline exponent vector, e.g. --a 1,2,1
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<u32>>,
    #[arg(long)]
    n: Option<usize>,
    /// Q set as JSON pairs, e.g. --Q "[[1,3]]"
    #[arg(long = "Q")]
    q: Option<String>,
    /// Permutation for COR_I/COR_II, e.g. --sigma 2,1,3
    #[arg(long, value_delimiter = ',')]
    sigma: Option<Vec<usize>>,
    /// Batch mode: JSON file with one instance object or an array of them
    #[arg(long)]
    instances: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Term-count ceiling override
    #[arg(long)]
    ceiling: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    theorem: String,
    /// n or an inclusive range lo..hi, e.g. --n 2..3
    #[arg(long)]
    n: String,
    #[arg(long = "amax")]
    a_max: u32,
    #[arg(long = "a0max")]
    a0_max: Option<u32>,
    #[arg(long = "asummax")]
    a_sum_max: Option<u32>,
    /// Q enumeration policy: all | empty
    #[arg(long = "qpolicy", default_value = "all")]
    q_policy: String,
    /// Explicit Q list as JSON, e.g. --qlist "[[],[[3,4]]]"; overrides --qpolicy
    #[arg(long = "qlist")]
    q_list: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    ceiling: Option<usize>,
}

#[derive(Args)]
struct CtArgs {
    /// Product spec JSON file
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Product spec JSON inline
    #[arg(long = "spec-json")]
    spec_json: Option<String>,
    #[arg(long)]
    ceiling: Option<usize>,
}

#[derive(Args)]
struct TournArgs {
    #[arg(long)]
    n: usize,
    /// Ground set for Q subsets: e | q1 | q2
    #[arg(long, default_value = "e")]
    ground: String,
    /// Print only the named family (r1 | r2) for a single --Q
    #[arg(long)]
    family: Option<String>,
    #[arg(long = "Q")]
    q: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Sweep(args) => cmd_sweep(args),
        Cmd::Ct(args) => cmd_ct(args),
        Cmd::Tournaments(args) => cmd_tournaments(args),
    }
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, String> {
    let pairs: Vec<[usize; 2]> =
        serde_json::from_str(text).map_err(|e| format!("bad Q JSON: {e}"))?;
    Ok(pairs.into_iter().map(|[i, j]| (i, j)).collect())
}

fn default_n(theorem: Theorem, a: &[u32]) -> usize {
    match theorem {
        Theorem::Dixon => 0,
        Theorem::Dyson | Theorem::QDyson | Theorem::Main1 | Theorem::Main2 => {
            a.len().saturating_sub(1)
        }
        _ => a.len(),
    }
}

fn print_reports(reports: &[VerificationReport], format: Format) {
    match format {
        Format::Json => {
            for r in reports {
                println!("{}", serde_json::to_string(r).expect("report serializes"));
            }
        }
        Format::Tsv => {
            println!("theorem\tn\ta\tQ\tsigma\tverdict\tlhs\trhs\tmillis");
            for r in reports {
                let a = r
                    .instance
                    .a
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let q = r
                    .instance
                    .q
                    .as_ref()
                    .map(|q| format!("{:?}", q.pairs().iter().collect::<Vec<_>>()))
                    .unwrap_or_else(|| "-".into());
                let sigma = r
                    .sigma
                    .as_ref()
                    .map(|s| format!("{s:?}"))
                    .unwrap_or_else(|| "-".into());
                let lhs = r
                    .lhs_ct
                    .as_ref()
                    .map(|p| p.to_string())
                    .unwrap_or_else(|| "-".into());
                let rhs = r
                    .rhs
                    .as_ref()
                    .map(|v| format!("({}) / ({})", v.num(), v.den()))
                    .unwrap_or_else(|| "-".into());
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.instance.theorem, r.instance.n, a, q, sigma, r.verdict, lhs, rhs, r.millis
                );
            }
        }
        Format::Pretty => {
            for r in reports {
                let mut line = format!(
                    "{:<9} {} n={} a={:?}",
                    r.verdict.to_string(),
                    r.instance.theorem,
                    r.instance.n,
                    r.instance.a
                );
                if let Some(q) = &r.instance.q {
                    line += &format!(" Q={:?}", q.pairs().iter().collect::<Vec<_>>());
                }
                if let Some(s) = &r.sigma {
                    line += &format!(" sigma={s:?}");
                }
                if let Some(lhs) = &r.lhs_ct {
                    line += &format!("  ct = {lhs}");
                }
                if r.verdict == Verdict::Mismatch {
                    if let Some(rhs) = &r.rhs {
                        line += &format!("  rhs = ({}) / ({})", rhs.num(), rhs.den());
                    }
                }
                line += &format!("  [{} ms]", r.millis);
                println!("{line}");
            }
        }
    }
}

fn exit_for(reports: &[VerificationReport]) -> ExitCode {
    if reports
        .iter()
        .any(|r| r.verdict == Verdict::Mismatch)
    {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let ceiling = args.ceiling.unwrap_or_else(default_ceiling);
    let inline_given =
        args.theorem.is_some() || args.a.is_some() || args.q.is_some() || args.sigma.is_some();
    let instances: Vec<IdentityInstance> = match (&args.instances, inline_given) {
        (Some(_), true) => {
            return Err("--instances and inline flags are mutually exclusive".into());
        }
        (Some(path), false) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            match serde_json::from_str::<Vec<IdentityInstance>>(&text) {
                Ok(list) => list,
                Err(_) => vec![serde_json::from_str::<IdentityInstance>(&text)
                    .map_err(|e| format!("bad instance JSON: {e}"))?],
            }
        }
        (None, _) => {
            let theorem: Theorem = args
                .theorem
                .as_deref()
                .ok_or("missing --theorem")?
                .parse()?;
            let a = args.a.clone().unwrap_or_default();
            let n = args.n.unwrap_or_else(|| default_n(theorem, &a));
            let q = args.q.as_deref().map(parse_pairs).transpose()?;
            vec![IdentityInstance::new(theorem, n, a, q, args.sigma.clone())
                .map_err(|e| e.to_string())?]
        }
    };
    let reports: Vec<_> = instances
        .iter()
        .map(|inst| verify_instance(inst, ceiling))
        .collect();
    print_reports(&reports, args.format);
    Ok(exit_for(&reports))
}

fn parse_n_range(text: &str) -> Result<(usize, usize), String> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = lo.trim().parse().map_err(|_| format!("bad range {text:?}"))?;
        let hi = hi.trim().parse().map_err(|_| format!("bad range {text:?}"))?;
        if lo > hi {
            return Err(format!("empty range {text:?}"));
        }
        Ok((lo, hi))
    } else {
        let n = text.trim().parse().map_err(|_| format!("bad n {text:?}"))?;
        Ok((n, n))
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, String> {
    let ceiling = args.ceiling.unwrap_or_else(default_ceiling);
    let theorem: Theorem = args.theorem.parse()?;
    let (n_min, n_max) = parse_n_range(&args.n)?;
    let q_policy = if let Some(list) = &args.q_list {
        let entries: Vec<Vec<[usize; 2]>> =
            serde_json::from_str(list).map_err(|e| format!("bad --qlist JSON: {e}"))?;
        QPolicy::List(
            entries
                .into_iter()
                .map(|pairs| pairs.into_iter().map(|[i, j]| (i, j)).collect())
                .collect(),
        )
    } else {
        match args.q_policy.as_str() {
            "all" => QPolicy::AllSubsets,
            "empty" => QPolicy::EmptyOnly,
            other => return Err(format!("unknown --qpolicy {other:?}")),
        }
    };
    let spec = SweepSpec {
        theorem,
        n_min,
        n_max,
        a_max: args.a_max,
        a0_max: args.a0_max,
        a_sum_max: args.a_sum_max,
        q_policy,
    };
    // validate enumeration before spending time verifying
    enumerate_instances(&spec)?;
    let reports = ct_workbench::sweep(&spec, ceiling)?;
    print_reports(&reports, args.format);
    let summary = SweepSummary::of(&reports);
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&serde_json::json!({ "summary": summary }))
                .expect("summary serializes")
        ),
        Format::Tsv | Format::Pretty => println!(
            "summary: total={} match={} mismatch={} skipped={}",
            summary.total, summary.matches, summary.mismatches, summary.skipped
        ),
    }
    Ok(exit_for(&reports))
}

fn cmd_ct(args: CtArgs) -> Result<ExitCode, String> {
    let ceiling = args.ceiling.unwrap_or_else(default_ceiling);
    let text = match (&args.spec, &args.spec_json) {
        (Some(_), Some(_)) => {
            return Err("--spec and --spec-json are mutually exclusive".into());
        }
        (Some(path), None) => {
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
        }
        (None, Some(inline)) => inline.clone(),
        (None, None) => return Err("need --spec or --spec-json".into()),
    };
    let spec: ProductSpec =
        serde_json::from_str(&text).map_err(|e| format!("bad product spec JSON: {e}"))?;
    let poly = build_product(&spec, ceiling).map_err(|e| e.to_string())?;
    println!("{}", poly.ct_all());
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TournRow {
    q: Vec<(usize, usize)>,
    transitive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    winner: Option<Vec<usize>>,
    dominant_sets: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<Vec<Vec<usize>>>,
}

fn family_for(q: &QSet) -> Result<Option<Vec<Vec<usize>>>, String> {
    match q.ground() {
        GroundSet::E => Ok(None),
        GroundSet::Q1 => Ok(Some(r1_family(q))),
        GroundSet::Q2 => r2_family(q).map(Some),
    }
}

fn cmd_tournaments(args: TournArgs) -> Result<ExitCode, String> {
    if args.n > 7 {
        return Err("exhaustive listings support n <= 7".into());
    }
    let ground = match args.ground.as_str() {
        "e" => GroundSet::E,
        "q1" => GroundSet::Q1,
        "q2" => GroundSet::Q2,
        other => return Err(format!("unknown ground set {other:?}")),
    };
    if let Some(family) = &args.family {
        let ground = match family.as_str() {
            "r1" => GroundSet::Q1,
            "r2" => GroundSet::Q2,
            other => return Err(format!("unknown family {other:?}")),
        };
        let pairs = args.q.as_deref().map(parse_pairs).transpose()?.unwrap_or_default();
        let q = QSet::new(args.n, ground, pairs).map_err(|e| e.to_string())?;
        let fam = family_for(&q)?.expect("q1/q2 ground has a family");
        let row = serde_json::json!({
            "q": q.pairs().iter().collect::<Vec<_>>(),
            "family": fam,
        });
        println!("{row}");
        return Ok(ExitCode::SUCCESS);
    }
    let mut rows = Vec::new();
    for q in QSet::all_subsets(args.n, ground) {
        let t = q.e_bar();
        let transitive = t.is_transitive();
        rows.push(TournRow {
            q: q.pairs().iter().copied().collect(),
            transitive,
            winner: if transitive {
                t.winner_permutation().ok()
            } else {
                None
            },
            dominant_sets: t.dominant_sets(),
            family: family_for(&q)?,
        });
    }
    match args.format {
        Format::Json => {
            for row in &rows {
                println!("{}", serde_json::to_string(row).expect("row serializes"));
            }
        }
        Format::Tsv | Format::Pretty => {
            println!("Q\ttransitive\twinner\tdominant_sets\tfamily");
            for row in &rows {
                println!(
                    "{:?}\t{}\t{}\t{:?}\t{}",
                    row.q,
                    row.transitive,
                    row.winner
                        .as_ref()
                        .map(|w| format!("{w:?}"))
                        .unwrap_or_else(|| "-".into()),
                    row.dominant_sets,
                    row.family
                        .as_ref()
                        .map(|f| format!("{f:?}"))
                        .unwrap_or_else(|| "-".into()),
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

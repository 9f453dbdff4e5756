use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use burnside::atoric::{atoric_quotient, identify, is_atoric, sharp_hom_dimension};
use burnside::catalog::{self, CATALOG_ENV};
use burnside::functor::{evaluation_decomposition, BurnsideFunctor};
use burnside::idempotents::{epsilon, minimal_sections};
use burnside::verify::{self, Config, Report, Status};
use burnside::Group;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "burnside", version, about = "Exact checks in double Burnside algebras of small groups")]
struct Cli {
    /// Extra catalog file (JSON array of {name, degree, generators}).
    #[arg(long, global = true, env = CATALOG_ENV)]
    catalog: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List catalog groups.
    GroupsList {
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Atoric test and the largest atoric quotient of a p-group.
    Atoric {
        #[arg(long)]
        group: String,
    },
    /// Decompose the evaluation of a biset functor at a group.
    Decompose {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "burnside")]
        functor: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count basis elements of the morphism space from P to Q with atoric quotient L, two ways.
    HomDim {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        l: String,
    },
    /// List minimal sections; with --emit, serialize every ε_{T,S}^G.
    Epsilon {
        #[arg(long)]
        group: String,
        #[arg(long)]
        emit: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite names or `all`; repeatable or comma separated.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    suite: Vec<String>,
    /// Group names; repeatable or comma separated. Default: the whole catalog.
    #[arg(long, value_delimiter = ',')]
    group: Vec<String>,
    #[arg(long, default_value_t = 16)]
    max_order: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    full_basis_max_order: usize,
    #[arg(long, default_value_t = 16)]
    sampled_max_order: usize,
    #[arg(long, default_value_t = 50)]
    sample_count: usize,
    /// Omit timestamps and timings so equal inputs give identical bytes.
    #[arg(long)]
    no_timestamp: bool,
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    if let Some(path) = &cli.catalog {
        // parse first so a malformed file is an error rather than a warning
        let extra = catalog::load_file(path)?;
        // the catalog reads the env var on its own
        if std::env::var_os(CATALOG_ENV).as_deref() != Some(path.as_os_str()) {
            catalog::register(extra);
        }
    }
    match cli.cmd {
        Cmd::GroupsList { max_order } => groups_list(max_order),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Atoric { group } => cmd_atoric(&group),
        Cmd::Decompose { group, functor, out } => cmd_decompose(&group, &functor, out),
        Cmd::HomDim { p, q, l } => cmd_hom_dim(&p, &q, &l),
        Cmd::Epsilon { group, emit, out } => cmd_epsilon(&group, emit, out),
    }
}

fn emit(value: &Value, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn groups_list(max_order: Option<usize>) -> Result<bool> {
    println!("{:<10} {:>5}  {:<8} {:<8} {:<6}", "name", "order", "p-group", "atoric", "P^@");
    for g in catalog::all_groups()? {
        if max_order.is_some_and(|m| g.order() > m) {
            continue;
        }
        let (atoric, at) = if g.is_p_group() {
            let at = atoric_quotient(&g)?;
            (is_atoric(&g)?.to_string(), identify(at.group()).unwrap_or_else(|| format!("order {}", at.group().order())))
        } else {
            ("-".into(), "-".into())
        };
        println!("{:<10} {:>5}  {:<8} {:<8} {:<6}", g.name(), g.order(), g.is_p_group(), atoric, at);
    }
    Ok(true)
}

fn select_groups(names: &[String], max_order: usize) -> Result<Vec<Arc<Group>>> {
    if names.is_empty() {
        return Ok(catalog::groups_up_to(max_order)?);
    }
    names.iter().map(|n| Ok(catalog::get(n)?)).collect()
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let cfg = Config {
        full_basis_max_order: args.full_basis_max_order,
        sampled_max_order: args.sampled_max_order,
        sample_count: args.sample_count,
        seed: args.seed,
        ..Config::default()
    };
    cfg.validate()?;
    let suites = verify::expand_suites(&args.suite)?;
    let groups = select_groups(&args.group, args.max_order)?;
    let mut reports: Vec<Report> = verify::run_many(&groups, &suites, &cfg)?;
    if args.no_timestamp {
        for r in &mut reports {
            r.elapsed_ms = None;
        }
    }
    let mut ok = true;
    for r in &reports {
        let count = |s: Status| r.checks.iter().filter(|c| c.status == s).count();
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        eprintln!(
            "{verdict} {:<10} {:<10} {} passed, {} skipped, {} failed",
            r.group,
            r.suite,
            count(Status::Pass),
            count(Status::Skipped),
            count(Status::Fail)
        );
        for c in r.failures() {
            eprintln!("    {}: {}", c.name, c.witness.as_deref().unwrap_or(""));
        }
        ok &= r.passed();
    }
    let mut doc = json!({ "config": cfg, "passed": ok, "reports": reports });
    if !args.no_timestamp {
        let now = SystemTime::now().duration_since(UNIX_EPOCH)?.as_secs();
        doc["generated_at"] = json!(now);
    }
    emit(&doc, args.out.as_ref())?;
    Ok(ok)
}

fn cmd_atoric(name: &str) -> Result<bool> {
    let p = catalog::get(name)?;
    if !p.is_p_group() {
        bail!("{} is not a p-group", p.name());
    }
    let d = atoric_quotient(&p)?;
    let q = d.group();
    emit(
        &json!({
            "group": p.name(),
            "order": p.order(),
            "atoric": is_atoric(&p)?,
            "kernel": d.kernel.to_vec(),
            "complement": d.complement.to_vec(),
            "quotient_order": q.order(),
            "quotient": identify(q),
        }),
        None,
    )?;
    Ok(true)
}

fn cmd_decompose(name: &str, functor: &str, out: Option<PathBuf>) -> Result<bool> {
    if !functor.eq_ignore_ascii_case("burnside") {
        bail!("unknown functor `{functor}` (available: burnside)");
    }
    let g = catalog::get(name)?;
    let d = evaluation_decomposition(&BurnsideFunctor, &g)?;
    let mut doc = serde_json::to_value(&d)?;
    doc["checks"] = json!({
        "images_in_summands": d.images_in_summands,
        "uv_identity": d.uv_identity,
        "vu_identity": d.vu_identity,
        "dims_balance": d.dims_balance,
    });
    emit(&doc, out.as_ref())?;
    Ok(d.passed())
}

fn cmd_hom_dim(p: &str, q: &str, l: &str) -> Result<bool> {
    let (p, q, l) = (catalog::get(p)?, catalog::get(q)?, catalog::get(l)?);
    let c = sharp_hom_dimension(&p, &q, &l)?;
    emit(&json!({ "p": p.name(), "q": q.name(), "l": l.name(), "counts": c, "agree": c.agree() }), None)?;
    Ok(c.agree())
}

fn cmd_epsilon(name: &str, emit_all: bool, out: Option<PathBuf>) -> Result<bool> {
    let g = catalog::get(name)?;
    let ms = minimal_sections(&g);
    let mut items = Vec::new();
    for c in &ms.classes {
        let q = g.section_group(&c.t, &c.s)?;
        let mut item = json!({
            "t": c.t.to_vec(),
            "s": c.s.to_vec(),
            "orbit_size": c.orbit.len(),
            "quotient": identify(&q.group).unwrap_or_else(|| format!("order {}", q.group.order())),
        });
        if emit_all {
            item["epsilon"] = serde_json::to_value(epsilon(&g, &c.t, &c.s)?.to_json())?;
        }
        items.push(item);
    }
    emit(&json!({ "group": g.name(), "count": items.len(), "sections": items }), out.as_ref())?;
    Ok(true)
}

//! `zetaforms`: construct form families, verify instances, print bounds, run sweeps and
//! check the `N = D` specialization. Exit codes: 0 all pass, 1 check failure, 2 usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use zetaforms_core::analytic::{growth_study, PrecisionContext};
use zetaforms_core::checks::{self, CheckOptions, Instance};
use zetaforms_core::exact::rational;
use zetaforms_core::forms::FormFamily;
use zetaforms_core::pade::{basis_hash, s_column_space};
use zetaforms_core::pipeline::{fsz_equivalence, fsz_tolerance, theorem1_bound, EliminationPlan, FszInstance};

const GROWTH_SLACK: f64 = 2.0;

#[derive(Parser)]
#[command(name = "zetaforms", version, about = "Linear forms in Dirichlet L-values: construction and certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct VerifyFlags {
    /// Comma-separated checks, or `all`.
    #[arg(long, default_value = "integrality,orders,product,rank,lambda")]
    checks: String,
    /// Derivative levels to build (default min(d_0 - 1, 3(a+N))).
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long, default_value_t = 256)]
    precision_bits: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Build the family of an instance file and dump the partial fractions and s-matrix.
    Construct {
        instance: PathBuf,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run checks on an instance file and write a certificate.
    Verify {
        instance: PathBuf,
        #[command(flatten)]
        flags: VerifyFlags,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimension bound for `a`, `N`, with an elimination plan when `--epsilon` is given.
    Bounds {
        a: u64,
        #[arg(value_name = "N")]
        big_n: u64,
        /// Rational in (0, 1/4), e.g. `1/10`.
        #[arg(long)]
        epsilon: Option<String>,
        /// Parity of the default eliminated exponents.
        #[arg(long, default_value_t = 1)]
        p: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certificates for a template over several `n`, plus column-space stability and growth.
    Sweep {
        template: PathBuf,
        /// Comma-separated values of n.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[command(flatten)]
        flags: VerifyFlags,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Both sides of the `N = D`, `f = 1` identity for a plan file `{a, r, n, p, D, w}`.
    Fsz {
        plan: PathBuf,
        #[arg(long, default_value_t = 256)]
        precision_bits: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure exits: `Usage` maps to 2, `Failed` to 1 after output was written.
enum Exit {
    Usage(String),
    Failed,
}

impl From<zetaforms_core::Error> for Exit {
    fn from(e: zetaforms_core::Error) -> Self {
        Exit::Usage(e.to_string())
    }
}

fn usage(e: impl std::fmt::Display) -> Exit {
    Exit::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Writes to `out` through a temporary file and rename, or to stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Exit> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.write_all(b"\n"))
                .map_err(usage)
        }
        Some(path) => {
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, format!("{text}\n"))
                .and_then(|_| fs::rename(&tmp, path))
                .map_err(|e| usage(format!("{}: {e}", path.display())))
        }
    }
}

fn options(flags: &VerifyFlags) -> Result<CheckOptions, Exit> {
    Ok(CheckOptions {
        k_max: flags.kmax,
        precision: PrecisionContext::new(flags.precision_bits)?,
        ..CheckOptions::default()
    })
}

fn construct(instance: &Path, kmax: Option<usize>, out: Option<&Path>) -> Result<(), Exit> {
    let inst = Instance::from_json(&read(instance)?)?;
    let params = inst.params()?;
    inst.function()?;
    let family = FormFamily::construct(&params, params.k_max(kmax))?;
    let s = family.compute_ski()?;
    let table = zetaforms_core::forms::partial_fractions_product(&params)
        .or_else(|_| zetaforms_core::forms::partial_fractions_solve(&zetaforms_core::forms::build_f(&params), &params))?;
    let dump = json!({
        "instance": inst,
        "d0": params.d0(),
        "q": params.q(),
        "delta": params.delta().to_string(),
        "levels": family.levels(),
        "partial_fractions": table,
        "s": s.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "basis_hash": basis_hash(&s_column_space(&s)?),
    });
    emit(out, &dump.to_string())
}

fn verify(instance: &Path, flags: &VerifyFlags, out: Option<&Path>) -> Result<(), Exit> {
    let selected = checks::select_checks(&flags.checks)?;
    let inst = Instance::from_json(&read(instance)?)?;
    let cert = checks::run_checks(&inst.params()?, &inst.function()?, &selected, options(flags)?)?;
    emit(out, &serde_json::to_string(&cert).map_err(usage)?)?;
    if cert.all_pass {
        Ok(())
    } else {
        Err(Exit::Failed)
    }
}

fn bounds(a: u64, big_n: u64, epsilon: Option<&str>, p: u8, out: Option<&Path>) -> Result<(), Exit> {
    let t = theorem1_bound(a, big_n)?;
    let mut doc = serde_json::to_value(t.report()).map_err(usage)?;
    if let Some(e) = epsilon {
        let eps = rational::parse(e)?;
        let plan = EliminationPlan::build(&eps, a, p, None)?;
        doc["plan_sizes"] = serde_json::to_value(plan.sizes()?).map_err(usage)?;
        doc["plan"] = serde_json::to_value(plan).map_err(usage)?;
    }
    emit(out, &doc.to_string())
}

fn pool() -> Result<rayon::ThreadPool, Exit> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("ZETAFORMS_THREADS") {
        let n: usize = v.parse().map_err(|_| usage(format!("ZETAFORMS_THREADS = `{v}` is not a count")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(usage)
}

fn sweep(template: &Path, ns: &[u64], flags: &VerifyFlags, out: Option<&Path>) -> Result<(), Exit> {
    let selected = checks::select_checks(&flags.checks)?;
    let base: Value = serde_json::from_str(&read(template)?).map_err(usage)?;
    let opts = options(flags)?;
    let mut instances = Vec::with_capacity(ns.len());
    for &n in ns {
        let mut v = base.clone();
        v["n"] = json!(n);
        let inst: Instance = serde_json::from_value(v).map_err(usage)?;
        instances.push((inst.params()?, inst.function()?));
    }
    let certs = pool()?.install(|| {
        instances
            .par_iter()
            .map(|(params, f)| checks::run_checks(params, f, &selected, opts))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let hashes: Vec<Option<String>> = certs.iter().map(|c| c.basis_hash.clone()).collect();
    let stable = match hashes.as_slice() {
        [.., x, y] => x.is_some() && x == y,
        _ => false,
    };
    let (template_params, f) = &instances[0];
    let growth = growth_study(template_params, f, ns, GROWTH_SLACK, opts.precision)?;
    let mut lines: Vec<String> = certs
        .iter()
        .map(|c| serde_json::to_string(c).expect("certificate serializes"))
        .collect();
    let summary = json!({
        "stability": {"basis_hashes": hashes, "stable": stable},
        "growth": growth,
    });
    lines.push(summary.to_string());
    emit(out, &lines.join("\n"))?;
    if certs.iter().all(|c| c.all_pass) && stable {
        Ok(())
    } else {
        Err(Exit::Failed)
    }
}

fn fsz(plan: &Path, precision_bits: u32, out: Option<&Path>) -> Result<(), Exit> {
    let inst: FszInstance = serde_json::from_str(&read(plan)?).map_err(usage)?;
    let ctx = PrecisionContext::new(precision_bits)?;
    let outcome = fsz_equivalence(&inst.params()?, inst.d, &inst.w, ctx)?;
    let pass = outcome.holds && outcome.zero_start && outcome.bound_below(&fsz_tolerance());
    let mut doc = serde_json::to_value(outcome.report()).map_err(usage)?;
    doc["pass"] = json!(pass);
    emit(out, &doc.to_string())?;
    if pass {
        Ok(())
    } else {
        Err(Exit::Failed)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct { instance, kmax, out } => construct(instance, *kmax, out.as_deref()),
        Command::Verify { instance, flags, out } => verify(instance, flags, out.as_deref()),
        Command::Bounds { a, big_n, epsilon, p, out } => bounds(*a, *big_n, epsilon.as_deref(), *p, out.as_deref()),
        Command::Sweep { template, n, flags, out } => sweep(template, n, flags, out.as_deref()),
        Command::Fsz { plan, precision_bits, out } => fsz(plan, *precision_bits, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit::Failed) => ExitCode::from(1),
        Err(Exit::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

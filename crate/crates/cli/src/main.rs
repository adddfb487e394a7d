//! `gmac`: command-line front end for graded Macdonald computations.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use graded_macdonald::charring::{display_schur, monomial_sym, schur_char};
use graded_macdonald::config::{check_trunc, finite_algebra, read_json, AlgebraConfig};
use graded_macdonald::homology::{
    ce_complex, cohomology, phi_cocycle_check, t3_verify, verify_euler_vs_pairing, FiniteGradedLie, FiniteModule,
    DEFAULT_MAX_COCHAINS,
};
use graded_macdonald::pairing::pair;
use graded_macdonald::{Error, MacdonaldEngine, Result, RootSystem, Trunc, Weight};

use report::{status, Format, Report};

/// Environment variable naming the default cache directory.
const CACHE_DIR_ENV: &str = "GMAC_CACHE_DIR";
const CACHE_FILE: &str = "gmac-cache.json";

#[derive(Parser)]
#[command(name = "gmac", version, about = "Generalized Macdonald polynomials and constant-term pairings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Pretty)]
    format: FormatArg,
    /// Cache file for Macdonald polynomials.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Ignore and do not write any cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Pretty,
}

#[derive(clap::Args, Clone, Copy)]
struct TruncArgs {
    #[arg(long = "Nq")]
    nq: Option<i64>,
    #[arg(long = "Nt")]
    nt: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// P_lambda in the monomial and Schur bases, with its norm.
    Macpoly {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        trunc: TruncArgs,
    },
    /// Norms <P_lambda, P_lambda> for dominant lambda <= lambda-max.
    Norms {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        lambda_max: String,
        #[command(flatten)]
        trunc: TruncArgs,
    },
    /// BGG reciprocity diagnostics.
    BggVerify {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        lambda_max: String,
        #[command(flatten)]
        trunc: TruncArgs,
    },
    /// Norms of g (x) C[x] against the product formula.
    NormProductVerify {
        #[arg(long)]
        rs: String,
        #[arg(long)]
        lambda_max: String,
        #[arg(long = "Nq")]
        nq: i64,
    },
    /// <f_lambda, f_mu> for monomial or Schur functions.
    Pair {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value_t = BasisArg::Monomial)]
        basis: BasisArg,
        #[command(flatten)]
        trunc: TruncArgs,
    },
    /// Relative Chevalley-Eilenberg cohomology of a finite algebra.
    Cohomology {
        #[arg(long)]
        algebra: PathBuf,
        /// Coefficient module as JSON (default: trivial).
        #[arg(long)]
        module: Option<PathBuf>,
        /// Highest weight of an sl2 coefficient module instead of --module.
        #[arg(long)]
        lambda: Option<i64>,
        #[command(flatten)]
        trunc: TruncArgs,
    },
    /// Euler characteristic of relative Ext against the pairing.
    EulerVerify {
        #[arg(long)]
        algebra: PathBuf,
        /// sl2 modules L(0), ..., L(lambda-max) when no --module is given.
        #[arg(long, default_value = "4")]
        lambda_max: String,
        /// Module JSON files; all ordered pairs are compared.
        #[arg(long)]
        module: Vec<PathBuf>,
        #[command(flatten)]
        trunc: TruncArgs,
    },
    /// Relative cohomology of T(3) with trivial coefficients.
    T3Verify,
    /// The relative 2-cocycle phi_{x,y} on g (x) C[x, y].
    PhiVerify {
        #[arg(long)]
        rs: String,
        #[arg(long, default_value_t = 2)]
        generators: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Monomial,
    Schur,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let fmt = match cli.format {
                FormatArg::Json => Format::Json,
                FormatArg::Csv => Format::Csv,
                FormatArg::Pretty => Format::Pretty,
            };
            match report.render(fmt) {
                Ok(s) => {
                    print!("{s}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_internal() || matches!(e, Error::TooLarge(_)) {
        1
    } else {
        2
    }
}

fn cfg(m: impl std::fmt::Display) -> Error {
    Error::Config(m.to_string())
}

fn parse_rs(s: &str) -> Result<RootSystem> {
    s.parse().map_err(|e: Error| cfg(e))
}

fn parse_weight(rs: &RootSystem, s: &str) -> Result<Weight> {
    let w: Weight = s.parse()?;
    rs.check_dominant(&w).map_err(cfg)?;
    Ok(w)
}

fn cache_path(cli: &Cli) -> Option<PathBuf> {
    if cli.no_cache {
        return None;
    }
    cli.cache
        .clone()
        .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(|d| Path::new(&d).join(CACHE_FILE)))
}

fn load_cache(engine: &MacdonaldEngine, path: &Path) {
    if !path.exists() {
        return;
    }
    let loaded = std::fs::read_to_string(path)
        .map_err(|e| e.to_string())
        .and_then(|s| serde_json::from_str::<Value>(&s).map_err(|e| e.to_string()))
        .and_then(|v| engine.import_json(&v).map_err(|e| e.to_string()).map(|n| (n, v)));
    match loaded {
        Ok((0, v)) if !v["entries"].as_array().is_some_and(Vec::is_empty) => {
            eprintln!("warning: cache {} has another format version; recomputing", path.display());
        }
        Ok(_) => {}
        Err(e) => eprintln!("warning: ignoring unreadable cache {}: {e}", path.display()),
    }
}

fn save_cache(engine: &MacdonaldEngine, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| cfg(format!("cannot create {}: {e}", dir.display())))?;
    }
    let text = serde_json::to_string_pretty(&engine.export_json()).expect("cache serializes");
    std::fs::write(path, text + "\n").map_err(|e| cfg(format!("cannot write {}: {e}", path.display())))
}

fn uses_engine(c: &Command) -> bool {
    matches!(
        c,
        Command::Macpoly { .. } | Command::Norms { .. } | Command::BggVerify { .. } | Command::NormProductVerify { .. }
    )
}

fn run(cli: &Cli) -> Result<Report> {
    let engine = MacdonaldEngine::global();
    let cache = cache_path(cli).filter(|_| uses_engine(&cli.command));
    if let Some(p) = &cache {
        load_cache(engine, p);
    }
    let report = dispatch(&cli.command, engine)?;
    if let Some(p) = &cache {
        save_cache(engine, p)?;
    }
    Ok(report)
}

fn pairing_setup(path: &Path, t: TruncArgs) -> Result<(AlgebraConfig, Trunc)> {
    let config = AlgebraConfig::load(path)?;
    let trunc = config.trunc(t.nq, t.nt)?;
    Ok((config, trunc))
}

fn finite_setup(path: &Path, t: TruncArgs) -> Result<(FiniteGradedLie, Trunc)> {
    let v = read_json(path)?;
    let lie = finite_algebra(&v)?;
    let nq = t.nq.or_else(|| v.get("Nq").and_then(Value::as_i64)).ok_or_else(|| cfg("Nq not given"))?;
    let nt = t.nt.or_else(|| v.get("Nt").and_then(Value::as_i64)).unwrap_or(0);
    Ok((lie, check_trunc(nq, nt)?))
}

fn dispatch(command: &Command, engine: &MacdonaldEngine) -> Result<Report> {
    match command {
        Command::Macpoly { algebra, lambda, trunc } => {
            let (config, trunc) = pairing_setup(algebra, *trunc)?;
            let data = config.data(trunc)?;
            let rs = data.rs();
            let lambda = parse_weight(rs, lambda)?;
            let r = engine.macdonald_polynomial(&data, &lambda)?;
            let mut rep = Report::new("macpoly", &["basis", "weight", "coefficient"]);
            rep.meta("algebra", json!(data.name()));
            rep.meta("trunc", json!(trunc.to_string()));
            rep.meta("lambda", json!(lambda.to_string()));
            rep.meta("P", json!(r.p.display_monomial(rs)));
            rep.meta("P_schur", json!(display_schur(rs, &r.p)?));
            rep.meta("norm", json!(r.norm.to_string()));
            for (w, c) in r.monomial_coefficients(rs) {
                rep.row(vec!["m".into(), w.to_string(), c.to_string()]);
            }
            for (w, c) in r.schur_coefficients(rs)? {
                rep.row(vec!["s".into(), w.to_string(), c.to_string()]);
            }
            for (w, c) in &r.incomparable_residue {
                rep.row(vec!["incomparable".into(), w.to_string(), c.to_string()]);
            }
            Ok(rep)
        }
        Command::Norms { algebra, lambda_max, trunc } => {
            let (config, trunc) = pairing_setup(algebra, *trunc)?;
            let data = config.data(trunc)?;
            let bound = parse_weight(data.rs(), lambda_max)?;
            let mut rep = Report::new("norms", &["lambda", "norm"]);
            rep.meta("algebra", json!(data.name()));
            rep.meta("trunc", json!(trunc.to_string()));
            for w in data.rs().dominant_weights_in_box(&bound) {
                let n = engine.macdonald_norm(&data, &w)?;
                rep.row(vec![w.to_string(), n.to_string()]);
            }
            Ok(rep)
        }
        Command::BggVerify { algebra, lambda_max, trunc } => {
            let (config, trunc) = pairing_setup(algebra, *trunc)?;
            let data = config.data(trunc)?;
            let bound = parse_weight(data.rs(), lambda_max)?;
            let r = engine.verify_bgg(&data, &bound)?;
            let mut rep = Report::new("bgg-verify", &["lambda", "mu", "m", "schur_coefficient", "status", "reason"]);
            rep.meta("algebra", json!(r.algebra));
            rep.meta("trunc", json!(r.trunc.to_string()));
            rep.meta("lambda_max", json!(r.lambda_max.to_string()));
            for row in &r.rows {
                rep.row(vec![
                    row.lambda.to_string(),
                    row.mu.to_string(),
                    row.m.to_string(),
                    row.schur_coefficient.to_string(),
                    status(row.pass()).into(),
                    row.failure.clone().unwrap_or_default(),
                ]);
            }
            rep.set_status(r.pass());
            Ok(rep)
        }
        Command::NormProductVerify { rs, lambda_max, nq } => {
            let rs = parse_rs(rs)?;
            let bound = parse_weight(&rs, lambda_max)?;
            check_trunc(*nq, 0)?;
            let r = engine.verify_norm_product(&rs, &bound, *nq)?;
            let mut rep = Report::new("norm-product-verify", &["lambda", "norm", "expected", "status", "reciprocal_match"]);
            rep.meta("algebra", json!(r.algebra));
            rep.meta("trunc", json!(r.trunc.to_string()));
            for row in &r.rows {
                rep.row(vec![
                    row.lambda.to_string(),
                    row.norm.to_string(),
                    row.expected.to_string(),
                    status(row.pass).into(),
                    row.reciprocal_match.to_string(),
                ]);
            }
            rep.set_status(r.pass());
            Ok(rep)
        }
        Command::Pair { algebra, lambda, mu, basis, trunc } => {
            let (config, trunc) = pairing_setup(algebra, *trunc)?;
            let data = config.data(trunc)?;
            let rs = data.rs();
            let (l, m) = (parse_weight(rs, lambda)?, parse_weight(rs, mu)?);
            let build = |w: &Weight| match basis {
                BasisArg::Monomial => monomial_sym(rs, w, trunc),
                BasisArg::Schur => schur_char(rs, w, trunc),
            };
            let v = pair(&data, &build(&l)?, &build(&m)?)?;
            let mut rep = Report::new("pair", &["q", "t", "coefficient"]);
            rep.meta("algebra", json!(data.name()));
            rep.meta("trunc", json!(trunc.to_string()));
            rep.meta("value", json!(v.to_string()));
            for (a, b, c) in v.terms() {
                rep.row(vec![a.to_string(), b.to_string(), c.to_string()]);
            }
            Ok(rep)
        }
        Command::Cohomology { algebra, module, lambda, trunc } => {
            let (lie, trunc) = finite_setup(algebra, *trunc)?;
            let k = match (module, lambda) {
                (Some(_), Some(_)) => return Err(cfg("give --module or --lambda, not both")),
                (Some(p), None) => FiniteModule::from_json(&lie, &read_json(p)?)?,
                (None, Some(l)) => FiniteModule::sl2_irrep(&lie, *l)?,
                (None, None) => FiniteModule::trivial(&lie, 0, 0),
            };
            let complex = ce_complex(&lie, &k, trunc, DEFAULT_MAX_COCHAINS)?;
            let table = cohomology(&complex);
            let mut rep = Report::new("cohomology", &["degree", "q", "t", "parity", "dim"]);
            rep.meta("algebra", json!(lie.name()));
            rep.meta("trunc", json!(trunc.to_string()));
            rep.meta("cochain_dims", json!(complex.invariant_dims()));
            rep.meta("euler", json!(table.euler(trunc).to_string()));
            for (key, d) in &table.dims {
                rep.row(vec![
                    key.degree.to_string(),
                    key.q.to_string(),
                    key.t.to_string(),
                    key.parity.to_string(),
                    d.to_string(),
                ]);
            }
            Ok(rep)
        }
        Command::EulerVerify { algebra, lambda_max, module, trunc } => {
            let (lie, trunc) = finite_setup(algebra, *trunc)?;
            let modules: Vec<(String, FiniteModule)> = if module.is_empty() {
                let bound = parse_weight(lie.rs(), lambda_max)?;
                lie.rs()
                    .dominant_weights_in_box(&bound)
                    .into_iter()
                    .map(|w| Ok((format!("L{w}"), FiniteModule::sl2_irrep(&lie, w.0[0])?)))
                    .collect::<Result<_>>()?
            } else {
                module
                    .iter()
                    .map(|p| Ok((p.display().to_string(), FiniteModule::from_json(&lie, &read_json(p)?)?)))
                    .collect::<Result<_>>()?
            };
            let mut rep = Report::new("euler-verify", &["M", "N", "euler", "pairing", "status"]);
            rep.meta("algebra", json!(lie.name()));
            rep.meta("trunc", json!(trunc.to_string()));
            let mut all = true;
            for (a, m) in &modules {
                for (b, n) in &modules {
                    let r = verify_euler_vs_pairing(&lie, m, n, trunc)?;
                    all &= r.pass;
                    rep.row(vec![a.clone(), b.clone(), r.euler.to_string(), r.pairing.to_string(), status(r.pass).into()]);
                }
            }
            rep.set_status(all);
            Ok(rep)
        }
        Command::T3Verify => {
            let r = t3_verify()?;
            let mut rep = Report::new("t3-verify", &["degree", "cochains", "cohomology"]);
            rep.meta("algebra", json!("t3"));
            for i in 0..r.cochain_dims.len() {
                rep.row(vec![i.to_string(), r.cochain_dims[i].to_string(), r.cohomology_dims[i].to_string()]);
            }
            rep.set_status(r.pass());
            Ok(rep)
        }
        Command::PhiVerify { rs, generators } => {
            let rs = parse_rs(rs)?;
            let r = phi_cocycle_check(&rs, *generators).map_err(|e| match e {
                Error::InvalidData(m) => cfg(m),
                e => e,
            })?;
            let mut rep = Report::new("phi-verify", &["check", "value"]);
            rep.meta("algebra", json!(r.algebra));
            for (k, v) in [
                ("c1_dim", r.c1_dim.to_string()),
                ("phi_nonzero", r.phi_nonzero.to_string()),
                ("phi_invariant", r.phi_invariant.to_string()),
                ("d_phi_zero", r.d_phi_zero.to_string()),
                ("h2_q2", r.h2_q2.to_string()),
                ("class_nonzero", r.class_nonzero().to_string()),
            ] {
                rep.row(vec![k.into(), v]);
            }
            rep.set_status(r.pass());
            Ok(rep)
        }
    }
}

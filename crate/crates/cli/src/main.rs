//! `resforge`: power residue symbols, module determinants, extension
//! cocycles and verification suites from the command line.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use resforge::arith::{parse_elem, KElem, LocalField, MuScalar, RElem};
use resforge::extension::{cocycle, comm_symbol};
use resforge::lattice::{matrix, FiniteModule, ModMap};
use resforge::symbols::{crosscheck_with, default_precision, Method, SymbolReport};
use resforge::torsor::{DetCtx, DEFAULT_BOUND};
use resforge::verify::{at_sweep_precision, run_suite, Suite, VerifyConfig};
use resforge::{Error, Result};

/// Largest symbol table `table` will produce.
const TABLE_LIMIT: u64 = 200_000;

#[derive(Parser)]
#[command(name = "resforge", version, about = "Power residue symbols over unramified p-adic fields")]
struct Cli {
    #[command(flatten)]
    cfg: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Config {
    /// Residue characteristic.
    #[arg(long, global = true, env = "RESFORGE_P", default_value_t = 7)]
    p: u64,
    /// Residue degree of the unramified extension.
    #[arg(long, global = true, env = "RESFORGE_F", default_value_t = 1)]
    f: u32,
    /// Order of the roots of unity; must divide q - 1 (default q - 1).
    #[arg(long, global = true, env = "RESFORGE_N")]
    n: Option<u64>,
    /// Relative precision of parsed elements (default: sum of |valuations| + 2).
    #[arg(long, global = true, env = "RESFORGE_PREC", value_parser = clap::value_parser!(u32).range(1..))]
    prec: Option<u32>,
    /// Largest module that may be enumerated.
    #[arg(long, global = true, env = "RESFORGE_BOUND", default_value_t = DEFAULT_BOUND)]
    bound: u64,
    /// Seed for randomized property runs.
    #[arg(long, global = true, env = "RESFORGE_SEED", default_value_t = 42)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, env = "RESFORGE_FORMAT", value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Muset,
    Extension,
    All,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Muset => Method::Muset,
            MethodArg::Extension => Method::Extension,
            MethodArg::All => Method::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Zolotarev,
    Muset,
    Torsor,
    Lattice,
    Cocycle,
    Theorem,
    Corollary,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Zolotarev => Suite::Zolotarev,
            SuiteArg::Muset => Suite::Muset,
            SuiteArg::Torsor => Suite::Torsor,
            SuiteArg::Lattice => Suite::Lattice,
            SuiteArg::Cocycle => Suite::Cocycle,
            SuiteArg::Theorem => Suite::Theorem,
            SuiteArg::Corollary => Suite::Corollary,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the symbol (a, b)_n by one or all routes.
    Symbol {
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        /// First argument, e.g. `3`, `pi^2*5`, `1/7`, `pi^-1*[1,2]`.
        #[arg(allow_hyphen_values = true)]
        a: String,
        /// Second argument.
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Run a verification suite; exits 1 on any failure.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Random samples per randomized property.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Valuation range of the symbol sweeps.
        #[arg(long, default_value_t = 2)]
        vmax: i64,
    },
    /// Tabulate symbols over valuations in [-vmax, vmax] and all unit residues.
    Table {
        #[arg(long, default_value_t = 1)]
        vmax: i64,
        #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
        method: MethodArg,
    },
    /// Determinant of an automorphism of a finite module ⊕ O/pi^e.
    Det {
        /// Exponents of the summands, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        exps: Vec<u32>,
        /// Integer matrix as JSON, e.g. `[[2,1],[0,3]]`.
        matrix: String,
    },
    /// Cocycle values c(f, g), c(g, f) and, for commuting f and g, {f, g}.
    Cocycle {
        /// Matrix of element strings as JSON, e.g. `[["pi","1"],["0","3"]]`.
        #[arg(value_name = "F")]
        lhs: String,
        #[arg(value_name = "G")]
        rhs: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let cfg = &cli.cfg;
    let lf = LocalField::new(cfg.p, cfg.f)?;
    let n = cfg.n.unwrap_or(lf.q() - 1);
    match &cli.command {
        Command::Symbol { method, a, b } => cmd_symbol(cfg, lf, n, (*method).into(), a, b),
        Command::Verify { suite, samples, vmax } => cmd_verify(cfg, (*suite).into(), *samples, *vmax),
        Command::Table { vmax, method } => cmd_table(cfg, lf, n, *vmax, (*method).into()),
        Command::Det { exps, matrix } => cmd_det(cfg, lf, n, exps, matrix),
        Command::Cocycle { lhs, rhs } => cmd_cocycle(cfg, lf, n, lhs, rhs),
    }
}

fn emit_json<T: Serialize>(value: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::Invalid(e.to_string()))?;
    let mut out = io::stdout().lock();
    writeln!(out, "{s}").or_else(ignore_broken_pipe)
}

/// A reader that stopped early (`| head`) is not an error.
fn ignore_broken_pipe(e: io::Error) -> Result<()> {
    if e.kind() == io::ErrorKind::BrokenPipe {
        Ok(())
    } else {
        Err(Error::Invalid(e.to_string()))
    }
}

/// Parses both arguments at the requested precision, or at the default
/// precision for their valuations, retrying at full precision when that
/// proves insufficient.
fn with_parsed<T>(
    cfg: &Config,
    lf: &LocalField,
    a: &str,
    b: &str,
    eval: impl Fn(&KElem, &KElem) -> Result<T>,
) -> Result<T> {
    let parse = |prec| Ok::<_, Error>((parse_elem(lf, a, prec)?, parse_elem(lf, b, prec)?));
    if let Some(prec) = cfg.prec {
        let (x, y) = parse(prec.min(lf.nmax()))?;
        return eval(&x, &y);
    }
    let (x, y) = parse(lf.nmax())?;
    let vals: Vec<i64> = [x, y].iter().filter_map(KElem::valuation).collect();
    let (x, y) = parse(default_precision(&vals).min(lf.nmax()))?;
    match eval(&x, &y) {
        Err(Error::Precision(_)) => {
            let (x, y) = parse(lf.nmax())?;
            eval(&x, &y)
        }
        other => other,
    }
}

fn show(s: &Option<MuScalar>) -> String {
    s.map_or_else(|| "-".to_string(), |s| s.to_string())
}

fn print_report(r: &SymbolReport) {
    println!("({}, {})_{} over p = {}, f = {}", r.a, r.b, r.n, r.p, r.f);
    println!("  direct     {}", show(&r.direct));
    println!("  muset      {}", show(&r.muset));
    println!("  extension  {}", show(&r.extension));
    println!("  agree      {}", if r.agree { "yes" } else { "NO" });
}

fn cmd_symbol(cfg: &Config, lf: LocalField, n: u64, method: Method, a: &str, b: &str) -> Result<ExitCode> {
    let dc = DetCtx::new(lf.clone(), n)?.with_bound(cfg.bound);
    let report = with_parsed(cfg, &lf, a, b, |x, y| crosscheck_with(&dc, x, y, method))?;
    match cfg.format {
        Format::Json => emit_json(&report)?,
        _ => print_report(&report),
    }
    Ok(if report.agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_verify(cfg: &Config, suite: Suite, samples: usize, vmax: i64) -> Result<ExitCode> {
    let vc = VerifyConfig {
        p: cfg.p,
        f: cfg.f,
        n: cfg.n,
        seed: cfg.seed,
        bound: cfg.bound,
        samples,
        vmax,
    };
    let report = run_suite(suite, &vc)?;
    match cfg.format {
        Format::Json => emit_json(&report)?,
        _ => {
            println!("suite {} (p = {}, f = {}, seed = {})", report.suite, report.p, report.f, report.seed);
            for prop in &report.properties {
                println!(
                    "  {:<4} {:<58} cases {:>7}  failures {:>4}  rejected {:>4}",
                    if prop.passed() { "ok" } else { "FAIL" },
                    prop.name,
                    prop.cases,
                    prop.failures,
                    prop.rejected
                );
            }
            if let Some(ce) = report.properties.iter().find_map(|p| p.counterexample.as_ref()) {
                println!("first counterexample: {ce}");
            }
            println!("{}", if report.passed { "PASS" } else { "FAIL" });
        }
    }
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

/// One cell of a symbol table.
#[derive(Serialize)]
struct TableRow {
    va: i64,
    ua: u32,
    vb: i64,
    ub: u32,
    a: String,
    b: String,
    /// Exponent of `zeta_n`.
    exp: u64,
    value: String,
    agree: bool,
}

#[derive(Serialize)]
struct Table {
    p: u64,
    f: u32,
    n: u64,
    vmax: i64,
    method: Method,
    rows: Vec<TableRow>,
}

fn cmd_table(cfg: &Config, lf: LocalField, n: u64, vmax: i64, method: Method) -> Result<ExitCode> {
    if vmax < 0 {
        return Err(Error::Invalid("vmax must be non-negative".into()));
    }
    let units = lf.q() - 1;
    let side = (2 * vmax as u64 + 1).saturating_mul(units);
    let entries = side.saturating_mul(side);
    if entries > TABLE_LIMIT {
        return Err(Error::Bound {
            size: format!("{entries} table entries"),
            bound: TABLE_LIMIT,
        });
    }
    let dc = DetCtx::new(lf.clone(), n)?.with_bound(cfg.bound);
    let mut rows = Vec::with_capacity(entries as usize);
    for va in -vmax..=vmax {
        for ua in 1..=units as u32 {
            for vb in -vmax..=vmax {
                for ub in 1..=units as u32 {
                    let report = at_sweep_precision(&lf, (va, ua), (vb, ub), |a, b| {
                        crosscheck_with(&dc, a, b, method)
                    })?;
                    let value = [report.direct, report.muset, report.extension]
                        .into_iter()
                        .flatten()
                        .next()
                        .expect("at least one route is evaluated");
                    rows.push(TableRow {
                        va,
                        ua,
                        vb,
                        ub,
                        a: report.a,
                        b: report.b,
                        exp: value.exp(),
                        value: value.to_string(),
                        agree: report.agree,
                    });
                }
            }
        }
    }
    let all_agree = rows.iter().all(|r| r.agree);
    if cfg.format == Format::Json {
        emit_json(&Table {
            p: lf.p(),
            f: lf.f(),
            n,
            vmax,
            method,
            rows,
        })?;
    } else {
        let stdout = io::stdout();
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(stdout.lock());
        let written = rows
            .iter()
            .try_for_each(|row| w.serialize(row))
            .and_then(|()| w.flush().map_err(csv::Error::from));
        if let Err(e) = written {
            match e.into_kind() {
                csv::ErrorKind::Io(io) => ignore_broken_pipe(io)?,
                other => return Err(Error::Invalid(format!("{other:?}"))),
            }
        }
    }
    Ok(if all_agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

#[derive(Serialize)]
struct DetReport {
    exps: Vec<u32>,
    n: u64,
    filtration: MuScalar,
    enumeration: Option<MuScalar>,
}

fn cmd_det(cfg: &Config, lf: LocalField, n: u64, exps: &[u32], mat: &str) -> Result<ExitCode> {
    let rows: Vec<Vec<i64>> =
        serde_json::from_str(mat).map_err(|e| Error::Parse(format!("matrix: {e}")))?;
    let t = FiniteModule::new(&lf, exps);
    if t.exps().len() != exps.len() {
        return Err(Error::Invalid("exponents must be positive".into()));
    }
    let top = exps.iter().copied().max().unwrap_or(0);
    let entries = rows
        .iter()
        .map(|r| r.iter().map(|&x| lf.ring.from_i64(x, top)).collect::<Vec<RElem>>())
        .collect();
    let g = ModMap::new(&lf.ring, t.clone(), t, entries)?;
    let dc = DetCtx::new(lf, n)?.with_bound(cfg.bound);
    let filtration = dc.det_of_module_aut(&g)?;
    let enumeration = match dc.det_of_module_aut_brute(&g) {
        Ok(d) => Some(d),
        Err(Error::Bound { .. }) => None,
        Err(e) => return Err(e),
    };
    let report = DetReport {
        exps: exps.to_vec(),
        n,
        filtration,
        enumeration,
    };
    match cfg.format {
        Format::Json => emit_json(&report)?,
        _ => {
            println!("det on O/pi^{exps:?}, n = {n}");
            println!("  filtration   {filtration}");
            println!("  enumeration  {}", show(&enumeration));
        }
    }
    Ok(if enumeration.is_none_or(|e| e == filtration) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

#[derive(Serialize)]
struct CocycleReport {
    n: u64,
    c_fg: MuScalar,
    c_gf: MuScalar,
    commutator: Option<MuScalar>,
}

fn cmd_cocycle(cfg: &Config, lf: LocalField, n: u64, f: &str, g: &str) -> Result<ExitCode> {
    let prec = cfg.prec.unwrap_or(lf.nmax()).min(lf.nmax());
    let parse = |s: &str| -> Result<_> {
        let rows: Vec<Vec<String>> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("matrix: {e}")))?;
        matrix::parse_matrix(&lf, &rows, prec)
    };
    let (fm, gm) = (parse(f)?, parse(g)?);
    let dc = DetCtx::new(lf.clone(), n)?.with_bound(cfg.bound);
    let report = CocycleReport {
        n,
        c_fg: cocycle(&dc, &fm, &gm)?,
        c_gf: cocycle(&dc, &gm, &fm)?,
        commutator: match comm_symbol(&dc, &fm, &gm) {
            Ok(s) => Some(s),
            Err(Error::NotCommuting) => None,
            Err(e) => return Err(e),
        },
    };
    match cfg.format {
        Format::Json => emit_json(&report)?,
        _ => {
            println!("c(f, g)  {}", report.c_fg);
            println!("c(g, f)  {}", report.c_gf);
            println!("{{f, g}}   {}", show(&report.commutator));
        }
    }
    Ok(ExitCode::SUCCESS)
}

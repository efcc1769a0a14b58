use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multidecomp::catalog::{self, CatalogRecord};
use multidecomp::cyclo::IntPoly;
use multidecomp::periods::{
    decomposition_from_report, gaussian_periods, period_polynomial, polynomial_discriminant,
    resolvent_power, PeriodSystem, DEFAULT_MAX_E, DEFAULT_MAX_P,
};
use multidecomp::search::{
    distance_class_check, search, Filter, SearchConfig, DEFAULT_NODE_BUDGET,
};
use multidecomp::squares::{two_squares_representable, Representability};
use multidecomp::verify::verify_paper;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

mod table;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "multidecomp",
    version,
    about = "Balanced pairwise-product decompositions and the cyclotomic algebra behind them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Re-derive every identity around 1318 and the cyclotomic quintic.
    VerifyPaper {
        #[arg(long)]
        json: bool,
        /// Corrupt the expected value of the named check (harness testing).
        #[arg(long, hide = true)]
        corrupt: Option<String>,
    },
    /// Search for tuples whose pairwise products split into equal-sum blocks.
    Search(SearchArgs),
    /// Gaussian periods, period polynomial and discriminant.
    Periods {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        json: bool,
    },
    /// The resolvent power R_t^e = p·a and its derived quantities.
    Resolvent {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether N is a sum of two squares.
    TwoSquares {
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Discriminant of an integer polynomial, coefficients highest degree first.
    Discriminant {
        #[arg(required = true, allow_negative_numbers = true)]
        coeffs: Vec<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Inspect a catalog file.
    Catalog {
        #[command(subcommand)]
        op: CatalogOp,
    },
}

#[derive(Args)]
struct SystemArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    e: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_P)]
    max_p: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_E)]
    max_e: u64,
}

impl SystemArgs {
    fn system(&self) -> Result<PeriodSystem, Failure> {
        if self.p > self.max_p || self.e > self.max_e {
            return Err(Failure::usage(format!(
                "(p, e) = ({}, {}) exceeds limits p <= {}, e <= {} (raise with --max-p/--max-e)",
                self.p, self.e, self.max_p, self.max_e
            )));
        }
        PeriodSystem::new(self.p, self.e).map_err(Failure::usage)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    CubeGap,
    PrimeGap,
    DistanceClassOnly,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::CubeGap => Filter::CubeGap,
            FilterArg::PrimeGap => Filter::PrimeGap,
            FilterArg::DistanceClassOnly => Filter::DistanceClassOnly,
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    min: u64,
    #[arg(long)]
    max: u64,
    #[arg(long)]
    distinct: bool,
    /// Require all blocks to hold the same number of pairs.
    #[arg(long)]
    equal_size: bool,
    #[arg(long = "filter", value_enum)]
    filters: Vec<FilterArg>,
    #[arg(long, default_value_t = usize::MAX, hide_default_value = true)]
    limit: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value = "jsonl")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append results to this catalog, skipping known keys.
    #[arg(long)]
    db: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
}

#[derive(Subcommand)]
enum CatalogOp {
    List {
        #[arg(long)]
        db: PathBuf,
    },
    Export {
        #[arg(long)]
        db: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Append records from an exported JSONL file.
    Import {
        #[arg(long)]
        db: PathBuf,
        file: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(e: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::VerifyPaper { json, corrupt } => cmd_verify(&mut out, json, corrupt.as_deref()),
        Command::Search(args) => cmd_search(args),
        Command::Periods { sys, json } => cmd_periods(&mut out, &sys, json),
        Command::Resolvent { sys, t, json } => cmd_resolvent(&mut out, &sys, t, json),
        Command::TwoSquares { n, seed, json } => cmd_two_squares(&mut out, n, seed, json),
        Command::Discriminant { coeffs, json } => cmd_discriminant(&mut out, &coeffs, json),
        Command::Catalog { op } => cmd_catalog(&mut out, op),
    }
}

fn big(v: &BigInt) -> Value {
    if let Some(x) = v.to_i64() {
        json!(x)
    } else if let Some(x) = v.to_u64() {
        json!(x)
    } else {
        json!(v.to_string())
    }
}

fn cmd_verify(out: &mut impl Write, as_json: bool, corrupt: Option<&str>) -> Result<u8, Failure> {
    let checks = verify_paper(corrupt);
    for c in &checks {
        if as_json {
            writeln!(out, "{}", serde_json::to_string(c).unwrap())?;
        } else {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            writeln!(out, "[{mark}] {:<15} {}", c.name, c.actual)?;
            if !c.pass {
                writeln!(out, "       expected        {}", c.expected)?;
            }
        }
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    if failed.is_empty() {
        if !as_json {
            writeln!(out, "{} checks passed", checks.len())?;
        }
        Ok(0)
    } else {
        eprintln!("verification failed: {}", failed.join(", "));
        Ok(EXIT_VERIFY_FAILED)
    }
}

fn cmd_search(args: SearchArgs) -> Result<u8, Failure> {
    let cfg = SearchConfig {
        k: args.k,
        m: args.m,
        lo: args.min,
        hi: args.max,
        distinct: args.distinct,
        equal_size: args.equal_size,
        filters: args.filters.iter().map(|&f| f.into()).collect(),
        limit: args.limit,
        jobs: args.jobs,
        node_budget: args.node_budget,
    };
    cfg.validate().map_err(Failure::usage)?;
    let outcome = search(&cfg).map_err(Failure::usage)?;

    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };
    match args.format {
        Format::Jsonl => {
            for inst in &outcome.instances {
                writeln!(sink, "{}", catalog::instance_line(inst))?;
            }
        }
        Format::Table => table::write_instances(&mut sink, &outcome.instances)?,
    }
    sink.flush()?;

    if let Some(db) = &args.db {
        let now = chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string();
        let records: Vec<CatalogRecord> = outcome
            .instances
            .iter()
            .map(|i| CatalogRecord::new(i.clone(), now.clone()))
            .collect();
        let added = catalog::append(db, &records).map_err(Failure::usage)?;
        eprintln!("catalog {}: {added} new record(s)", db.display());
    }
    if outcome.aborted {
        eprintln!(
            "node budget of {} exhausted; output holds the {} result(s) found before the cut",
            cfg.node_budget,
            outcome.instances.len()
        );
        return Ok(EXIT_BUDGET);
    }
    Ok(0)
}

fn cmd_periods(out: &mut impl Write, args: &SystemArgs, as_json: bool) -> Result<u8, Failure> {
    let sys = args.system()?;
    let periods = gaussian_periods(&sys);
    let poly = period_polynomial(&sys).map_err(Failure::usage)?;
    let disc = polynomial_discriminant(&poly).map_err(Failure::usage)?;
    let reflected = -&poly.reflect();
    let exps: Vec<Vec<usize>> = periods
        .iter()
        .map(|eta| {
            eta.raw_coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    if as_json {
        let v = json!({
            "p": sys.p, "e": sys.e, "f": sys.f, "g": sys.g,
            "periods": periods.iter().zip(&exps).enumerate().map(|(j, (eta, ex))| json!({
                "index": j,
                "exponents": ex,
                "value": eta.numeric_embed().re,
            })).collect::<Vec<_>>(),
            "polynomial": poly.coeffs().iter().map(big).collect::<Vec<_>>(),
            "polynomial_text": poly.to_string(),
            "reflected_text": reflected.to_string(),
            "discriminant": big(&disc),
        });
        writeln!(out, "{v}")?;
        return Ok(0);
    }
    writeln!(
        out,
        "p = {}, e = {}, f = {}, g = {}",
        sys.p, sys.e, sys.f, sys.g
    )?;
    for (j, (eta, ex)) in periods.iter().zip(&exps).enumerate() {
        let terms: Vec<String> = ex.iter().map(|i| format!("z^{i}")).collect();
        writeln!(
            out,
            "eta_{j} = {}  ~ {:.10}",
            terms.join(" + "),
            eta.numeric_embed().re
        )?;
    }
    writeln!(out, "period polynomial: {poly}")?;
    writeln!(out, "-P(-x):            {reflected}")?;
    writeln!(out, "discriminant: {disc}")?;
    Ok(0)
}

fn cmd_resolvent(
    out: &mut impl Write,
    args: &SystemArgs,
    t: u64,
    as_json: bool,
) -> Result<u8, Failure> {
    let sys = args.system()?;
    let rep = resolvent_power(&sys, t).map_err(Failure::usage)?;
    let inst = decomposition_from_report(&rep).map_err(Failure::usage)?;
    let classes = distance_class_check(&inst.tuple).map_err(Failure::usage)?;
    if as_json {
        let v = json!({
            "system": sys,
            "t": t,
            "gauss_conj_product": big(&rep.gauss_conj_product),
            "element": rep.element.to_string(),
            "canonical": rep.canonical.to_string(),
            "associate": rep.associate,
            "coeff_tuple": rep.coeff_tuple.iter().map(big).collect::<Vec<_>>(),
            "conj_product": big(&rep.conj_product),
            "norm": big(&rep.norm),
            "class_sums": classes.sums,
            "sum_squares": inst.sum_squares,
            "gap": inst.gap,
        });
        writeln!(out, "{v}")?;
        return Ok(0);
    }
    let tuple: Vec<String> = rep.coeff_tuple.iter().map(|c| c.to_string()).collect();
    writeln!(
        out,
        "system: p = {}, e = {}, f = {}, g = {}, t = {t}",
        sys.p, sys.e, sys.f, sys.g
    )?;
    writeln!(out, "R_t * conj(R_t) = {}", rep.gauss_conj_product)?;
    writeln!(out, "a = R_t^{} / {} = {}", sys.e, sys.p, rep.element)?;
    writeln!(
        out,
        "canonical associate: {} (= {}zeta^{} * a)",
        rep.canonical,
        if rep.associate.sign < 0 { "-" } else { "" },
        rep.associate.shift
    )?;
    writeln!(out, "coeff_tuple: ({})", tuple.join(", "))?;
    writeln!(out, "conj_product: {}", rep.conj_product)?;
    writeln!(out, "norm: {}", rep.norm)?;
    let sums: Vec<String> = classes.sums.iter().map(|s| s.to_string()).collect();
    writeln!(out, "distance class sums: {}", sums.join(", "))?;
    writeln!(
        out,
        "sum of squares - class sum = {} - {} = {}",
        inst.sum_squares, inst.block_sum, inst.gap
    )?;
    Ok(0)
}

fn cmd_two_squares(out: &mut impl Write, n: u64, seed: u64, as_json: bool) -> Result<u8, Failure> {
    let r = two_squares_representable(n, seed);
    if as_json {
        let mut v = serde_json::to_value(r).unwrap();
        v["n"] = json!(n);
        writeln!(out, "{v}")?;
        return Ok(0);
    }
    match r {
        Representability::Representable { witness } => {
            writeln!(out, "{n} = {}^2 + {}^2", witness.x, witness.y)?
        }
        Representability::NotRepresentable { offending_prime } => writeln!(
            out,
            "{n} not representable ({offending_prime} ≡ 3 mod 4 divides it to an odd power)"
        )?,
    }
    Ok(0)
}

fn cmd_discriminant(out: &mut impl Write, coeffs: &[i64], as_json: bool) -> Result<u8, Failure> {
    let low_first: Vec<i64> = coeffs.iter().rev().copied().collect();
    let poly = IntPoly::from_i64(&low_first);
    let disc = polynomial_discriminant(&poly).map_err(Failure::usage)?;
    if as_json {
        writeln!(
            out,
            "{}",
            json!({ "polynomial": poly.to_string(), "discriminant": big(&disc) })
        )?;
    } else {
        writeln!(out, "disc({poly}) = {disc}")?;
    }
    Ok(0)
}

fn cmd_catalog(out: &mut impl Write, op: CatalogOp) -> Result<u8, Failure> {
    match op {
        CatalogOp::List { db } => {
            for r in catalog::load(&db).map_err(Failure::usage)? {
                writeln!(
                    out,
                    "{}\ttuple={:?}\tblock_sum={}",
                    r.key, r.instance.tuple, r.instance.block_sum
                )?;
            }
        }
        CatalogOp::Export { db, out: path } => {
            let text = catalog::export(&catalog::load(&db).map_err(Failure::usage)?);
            match path {
                Some(p) => fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        CatalogOp::Import { db, file } => {
            let records = catalog::load(&file).map_err(Failure::usage)?;
            let added = catalog::append(&db, &records).map_err(Failure::usage)?;
            writeln!(out, "{added} new record(s)")?;
        }
    }
    Ok(0)
}

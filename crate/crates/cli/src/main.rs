//! `freehop`: Hurwitz tables, Möbius functions, moment/cumulant transforms and verification suites.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hurwitz::{HurwitzError, HurwitzTable, Kind};
use ps_core::{moebius, moebius_hbar, FunctionError, PS_BOUND};
use serde_json::{json, Value};
use series_core::{CoefficientTable, SeriesError};
use std::path::PathBuf;
use std::process::ExitCode;
use transforms::verify::{run_suite, Report, VerifyParams, SUITES};
use transforms::{transform, Direction, Relation, Route, TransformConfig, TransformError};

#[derive(Parser)]
#[command(name = "freehop", version, about = "Exact moment/cumulant transforms of higher-order free probability")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write tables as CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate monotone or free single Hurwitz numbers of degree d.
    Hurwitz {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Largest number of transpositions.
        #[arg(long)]
        hbar: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Möbius function on PS(d), or its ħ-extension to order hbar.
    Moebius {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        hbar: Option<i32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Moments to cumulants (m2c) or cumulants to moments (c2m).
    Transform(TransformArgs),
    /// Run a verification suite; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// The Gaussian fixture: κ_{0;2} = 1 and the resulting one-point moments.
    Gue {
        /// Largest doubled genus.
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        deg: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Strict,
    Weak,
    FreeSingle,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Strict => Kind::Strict,
            KindArg::Weak => Kind::Weak,
            KindArg::FreeSingle => Kind::FreeSingle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    M2c,
    C2m,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Hurwitz,
    Convolution,
    Schur,
    Formula,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(value_enum)]
    direction: DirectionArg,
    #[arg(long, value_enum)]
    route: RouteArg,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Total degree (default: the degree declared by the input).
    #[arg(long)]
    deg: Option<usize>,
    #[arg(long)]
    hbar: Option<i32>,
    /// Largest doubled genus of the output (default: the largest in the input).
    #[arg(long)]
    genus: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    suite: String,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    hbar: Option<i32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    deg: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Truncation(String),
    Verification(usize),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Truncation(_) => 3,
        }
    }
}

impl From<TransformError> for Failure {
    fn from(e: TransformError) -> Self {
        if e.is_truncation() {
            Failure::Truncation(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<HurwitzError> for Failure {
    fn from(e: HurwitzError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<FunctionError> for Failure {
    fn from(e: FunctionError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        TransformError::from(e).into()
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            // a closed pipe is not an error
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            Ok(())
        }
    }
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn table_csv(t: &CoefficientTable) -> String {
    csv_text(&["g2", "k", "value"], t.entries().map(|(g2, k, v)| vec![g2.to_string(), join(k), v.to_string()]))
}

fn with_metadata(t: &CoefficientTable, meta: Value) -> String {
    let mut v: Value = serde_json::from_str(&t.to_json()).expect("table JSON");
    v["metadata"] = meta;
    serde_json::to_string_pretty(&v).expect("serializable")
}

fn run_hurwitz(csv: bool, d: usize, kind: Kind, hbar: Option<usize>, out: Option<PathBuf>) -> Result<(), Failure> {
    if d > hurwitz::TABLE_BOUND {
        return Err(HurwitzError::BoundExceeded { d, bound: hurwitz::TABLE_BOUND }.into());
    }
    let max_r = hbar.unwrap_or(match kind {
        Kind::Weak => 2 * d.saturating_sub(1),
        _ => d.saturating_sub(1),
    });
    let t = HurwitzTable::cached(d, kind, max_r)?;
    let t = if max_r < t.max_r {
        let values = t.values.into_iter().filter(|((_, _, r), _)| *r <= max_r).collect();
        HurwitzTable { max_r, values, ..t }
    } else {
        t
    };
    let text = if csv {
        csv_text(
            &["lambda", "nu", "r", "value"],
            t.values.iter().map(|((l, n, r), v)| vec![join(l.parts()), join(n.parts()), r.to_string(), v.to_string()]),
        )
    } else {
        t.to_json()
    };
    emit(out.as_ref(), &text)
}

fn run_moebius(csv: bool, d: usize, hbar: Option<i32>, out: Option<PathBuf>) -> Result<(), Failure> {
    let rows: Vec<(String, String, String)> = match hbar {
        None => moebius(d, PS_BOUND)?
            .support()
            .map(|(x, v)| (x.partition.to_string(), x.perm.to_string(), v.to_string()))
            .collect(),
        Some(k) => {
            if d > PS_BOUND {
                return Err(Failure::Input(format!("degree {d} exceeds the bound {PS_BOUND}")));
            }
            moebius_hbar(d, k)?
                .support()
                .map(|(x, v)| (x.partition.to_string(), x.perm.to_string(), v.to_string()))
                .collect()
        }
    };
    let text = if csv {
        csv_text(&["partition", "perm", "value"], rows.into_iter().map(|(a, b, c)| vec![a, b, c]))
    } else {
        let entries: Vec<Value> = rows.into_iter().map(|(a, b, c)| json!({"partition": a, "perm": b, "value": c})).collect();
        serde_json::to_string_pretty(&json!({"d": d, "hbar": hbar, "entries": entries})).expect("serializable")
    };
    emit(out.as_ref(), &text)
}

fn run_transform(csv: bool, a: TransformArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&a.input).map_err(|e| Failure::Input(format!("cannot read {}: {e}", a.input.display())))?;
    let table = CoefficientTable::from_json(&text).map_err(|e| Failure::Input(e.to_string()))?;
    let degree = a
        .deg
        .or(table.degree)
        .ok_or_else(|| Failure::Input("the input declares no degree; pass --deg".into()))?;
    let g2_max = a.genus.unwrap_or_else(|| table.genera().into_iter().max().unwrap_or(0));
    let (direction, dname) = match a.direction {
        DirectionArg::C2m => (Direction::C2m, "c2m"),
        DirectionArg::M2c => (Direction::M2c, "m2c"),
    };
    let route = match a.route {
        RouteArg::Hurwitz => Route::Hurwitz,
        RouteArg::Convolution => Route::Convolution,
        RouteArg::Schur => Route::Schur,
        RouteArg::Formula => Route::Formula,
    };
    let cfg = TransformConfig { degree, hbar: a.hbar, g2_max, route };
    let result = transform(&table, direction, &cfg)?;
    let text = if csv {
        table_csv(&result)
    } else {
        with_metadata(&result, json!({"direction": dname, "route": route.name(), "degree": degree, "hbar": a.hbar, "genus": g2_max}))
    };
    emit(Some(&a.out), &text)
}

fn report_csv(reports: &[Report]) -> String {
    csv_text(
        &["suite", "input", "expected", "got", "pass"],
        reports.iter().flat_map(|r| {
            r.cases.iter().map(|c| vec![r.suite.clone(), c.input.to_string(), c.expected.clone(), c.got.clone(), c.pass.to_string()])
        }),
    )
}

fn run_verify(csv: bool, a: VerifyArgs) -> Result<(), Failure> {
    let names: Vec<&str> = if a.suite == "all" { SUITES.to_vec() } else { vec![a.suite.as_str()] };
    let params = VerifyParams { d: a.d, hbar: a.hbar, n: a.n, degree: a.deg, samples: a.samples, seed: a.seed };
    let reports = names.iter().map(|n| run_suite(n, &params)).collect::<Result<Vec<_>, _>>()?;
    let text = if csv {
        report_csv(&reports)
    } else if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0]).expect("serializable")
    } else {
        serde_json::to_string_pretty(&reports).expect("serializable")
    };
    emit(a.out.as_ref(), &text)?;
    let failures: usize = reports.iter().map(|r| r.failures()).sum();
    for r in &reports {
        eprintln!("{}: {} checks, {} failed", r.suite, r.cases.len(), r.failures());
    }
    if failures > 0 {
        return Err(Failure::Verification(failures));
    }
    Ok(())
}

fn run_gue(csv: bool, genus: u32, deg: usize, out: Option<PathBuf>) -> Result<(), Failure> {
    let cumulants = transforms::fixtures::gue_cumulants(deg);
    let rel = Relation::forward(&cumulants, deg)?;
    let mut moments = CoefficientTable::new(Some(deg));
    for g2 in (0..=genus).step_by(2) {
        moments = moments.add(&rel.sector(g2, 1)?);
    }
    let text = if csv {
        table_csv(&moments)
    } else {
        let c: Value = serde_json::from_str(&cumulants.to_json()).expect("table JSON");
        let m: Value = serde_json::from_str(&moments.to_json()).expect("table JSON");
        serde_json::to_string_pretty(&json!({"genus": genus, "degree": deg, "cumulants": c, "moments": m})).expect("serializable")
    };
    emit(out.as_ref(), &text)
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Input("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Input(e.to_string()))?;
    }
    let csv = cli.csv;
    match cli.command {
        Command::Hurwitz { d, kind, hbar, out } => run_hurwitz(csv, d, kind.into(), hbar, out),
        Command::Moebius { d, hbar, out } => run_moebius(csv, d, hbar, out),
        Command::Transform(a) => run_transform(csv, a),
        Command::Verify(a) => run_verify(csv, a),
        Command::Gue { genus, deg, out } => run_gue(csv, genus, deg, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Truncation(m) => eprintln!("truncation: {m}"),
                Failure::Verification(n) => eprintln!("verification failed: {n} checks"),
            }
            ExitCode::from(f.code())
        }
    }
}

//! The `kinj` command line: classify complexes, probe stable hom spaces,
//! decompose path representations, realize labels, run Ziegler-spectrum
//! reports, and self-test on seeded random inputs.
//!
//! All subcommands write JSON to stdout. Exit codes: 0 on success, 1 on a
//! domain error (bad file, invalid complex, unstable probe), 2 on a usage
//! error. `KINJ_MAX_WINDOW` caps the stabilization search (default 64).

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::anmod::{hom_k_dim, AnAlgebra, HomKOutcome, InjComplex, DEFAULT_MAX_WINDOW};
use crate::classify::{classify_complex, labels_to_json, realize_label, CanonLabel, LabelMultiset};
use crate::exactlin::Field;
use crate::gen;
use crate::rep::intervals::decompose_intervals;
use crate::rep::Rep;
use crate::quiver::BoundQuiver;
use crate::ziegler::{
    bounded_label_grid, cover_analysis, endofinite_certificate, hom_table, HomTable,
};

/// Inclusive degree range written `lo:hi`.
#[derive(Clone, Copy, Debug)]
pub struct Window(pub i64, pub i64);

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
        let lo: i64 = lo
            .trim()
            .parse()
            .map_err(|e| format!("bad range start {lo:?}: {e}"))?;
        let hi: i64 = hi
            .trim()
            .parse()
            .map_err(|e| format!("bad range end {hi:?}: {e}"))?;
        if lo > hi {
            return Err(format!("empty range {lo}:{hi}"));
        }
        Ok(Window(lo, hi))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "kinj",
    version,
    about = "Complexes of injectives over radical-square-zero cyclic Nakayama algebras"
)]
struct Cli {
    /// Scalar field: `rational` or `fp:<p>`
    #[arg(long, global = true, default_value = "rational")]
    field: String,
    /// Human-oriented output: pretty JSON, aligned text for tables
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a complex file into its multiset of canonical labels
    Classify {
        /// Complex JSON file
        complex: PathBuf,
    },
    /// Stable hom dimension from one complex file to another
    Hom {
        /// Source complex JSON file
        x: PathBuf,
        /// Target complex JSON file
        y: PathBuf,
    },
    /// Decompose a path-window representation file into interval modules
    DecomposeRep {
        /// Representation JSON file: `{"quiver": .., "dims": .., "maps": ..}`
        rep: PathBuf,
    },
    /// Realize a label as a complex over a window
    Realize {
        /// Label written `start:end:anchor`; infinite ends as `-inf`/`+inf`
        #[arg(allow_hyphen_values = true)]
        label: String,
        /// Number of vertices of the cycle
        #[arg(long)]
        n: usize,
        /// Degree window `lo:hi` governing infinite directions
        #[arg(long, allow_hyphen_values = true)]
        window: Window,
    },
    /// Ziegler-spectrum reports over grids of labels
    Ziegler {
        #[command(subcommand)]
        report: ZieglerReport,
    },
    /// Seeded random self-test of the classification pipeline
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ZieglerReport {
    /// Pairwise stable hom dimensions over all bounded labels in a range
    Table {
        /// Number of vertices of the cycle
        #[arg(long)]
        n: usize,
        /// Degree range `lo:hi` for the bounded label grid
        #[arg(long, allow_hyphen_values = true)]
        range: Window,
    },
    /// Endofiniteness certificate for one label
    Endofinite {
        /// Label written `start:end:anchor`
        #[arg(allow_hyphen_values = true)]
        label: String,
        /// Number of vertices of the cycle
        #[arg(long)]
        n: usize,
        /// Degree range `lo:hi` for the bounded probe grid
        #[arg(long, allow_hyphen_values = true, default_value = "-2:2")]
        probes: Window,
        /// Increasing window half-widths used to test stabilization
        #[arg(long, value_delimiter = ',', default_value = "2,4,6")]
        schedule: Vec<i64>,
    },
    /// Membership of bounded labels in half-infinite open sets, with escape
    /// certificates against every finite subfamily
    Cover {
        /// Number of vertices of the cycle
        #[arg(long)]
        n: usize,
        /// Half-infinite generators, comma separated, each `start:+inf:anchor`
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        generators: Vec<String>,
        /// Degree range `lo:hi` for the bounded pool
        #[arg(long, allow_hyphen_values = true)]
        pool: Window,
    },
}

enum Output {
    Json(serde_json::Value),
    Text(String),
}

/// Parse and execute an argument vector; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let field = match Field::parse_spec(&cli.field) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match execute(&cli.command, field, cli.pretty) {
        Ok(Output::Json(v)) => {
            let mut rendered = if cli.pretty {
                serde_json::to_string_pretty(&v)
            } else {
                serde_json::to_string(&v)
            }
            .expect("serializing an in-memory value cannot fail");
            rendered.push('\n');
            emit(&rendered)
        }
        Ok(Output::Text(mut s)) => {
            if !s.ends_with('\n') {
                s.push('\n');
            }
            emit(&s)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

/// Write the payload to stdout. A closed pipe (`kinj .. | head`) is an
/// ordinary early exit, not a failure.
fn emit(s: &str) -> i32 {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(s.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => 0,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(command: &Command, field: Field, pretty: bool) -> Result<Output, String> {
    match command {
        Command::Classify { complex } => {
            let x = load_complex(field, complex)?;
            let labels = classify_complex(&x).map_err(|e| e.to_string())?;
            Ok(Output::Json(labels_to_json(&labels)))
        }
        Command::Hom { x, y } => {
            let x = load_complex(field, x)?;
            let y = load_complex(field, y)?;
            let out = hom_k_dim(&x, &y, max_window()?).map_err(|e| e.to_string())?;
            Ok(Output::Json(out.to_json()))
        }
        Command::DecomposeRep { rep } => {
            let rep = load_rep(field, rep)?;
            let dec = decompose_intervals(&rep).map_err(|e| e.to_string())?;
            // report degrees when the window is a run of integers, else
            // walk positions within each component
            let intervals = dec.labeled_intervals().unwrap_or_else(|| dec.intervals.clone());
            let intervals: Vec<serde_json::Value> = intervals
                .iter()
                .map(|iv| {
                    serde_json::json!({
                        "component": iv.component,
                        "a": iv.a,
                        "b": iv.b,
                        "mult": iv.mult,
                        "clippedLeft": iv.clipped_left,
                        "clippedRight": iv.clipped_right,
                    })
                })
                .collect();
            Ok(Output::Json(serde_json::json!({ "intervals": intervals })))
        }
        Command::Realize { label, n, window } => {
            let algebra = Arc::new(AnAlgebra::new(*n).map_err(|e| e.to_string())?);
            let label = CanonLabel::parse(label, *n).map_err(|e| e.to_string())?;
            let x = realize_label(algebra, field, &label, (window.0, window.1))
                .map_err(|e| e.to_string())?;
            Ok(Output::Json(x.to_json()))
        }
        Command::Ziegler { report } => execute_ziegler(report, field, pretty),
        Command::Selftest { seed, cases } => {
            Ok(Output::Json(selftest(field, *seed, *cases)))
        }
    }
}

fn execute_ziegler(report: &ZieglerReport, field: Field, pretty: bool) -> Result<Output, String> {
    match report {
        ZieglerReport::Table { n, range } => {
            let algebra = Arc::new(AnAlgebra::new(*n).map_err(|e| e.to_string())?);
            let labels = bounded_label_grid(*n, range.0, range.1);
            let table =
                hom_table(&algebra, field, &labels, max_window()?).map_err(|e| e.to_string())?;
            if pretty {
                Ok(Output::Text(render_hom_table(&table)))
            } else {
                Ok(Output::Json(table.to_json()))
            }
        }
        ZieglerReport::Endofinite {
            label,
            n,
            probes,
            schedule,
        } => {
            if schedule.len() < 2 {
                return Err("schedule needs at least two window half-widths".into());
            }
            let algebra = Arc::new(AnAlgebra::new(*n).map_err(|e| e.to_string())?);
            let label = CanonLabel::parse(label, *n).map_err(|e| e.to_string())?;
            let grid = bounded_label_grid(*n, probes.0, probes.1);
            let cert = endofinite_certificate(&algebra, field, &label, &grid, schedule)
                .map_err(|e| e.to_string())?;
            Ok(Output::Json(cert.to_json()))
        }
        ZieglerReport::Cover {
            n,
            generators,
            pool,
        } => {
            let algebra = Arc::new(AnAlgebra::new(*n).map_err(|e| e.to_string())?);
            let opens: Vec<CanonLabel> = generators
                .iter()
                .map(|s| CanonLabel::parse(s, *n).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let grid = bounded_label_grid(*n, pool.0, pool.1);
            let report = cover_analysis(&algebra, field, &opens, &grid, max_window()?)
                .map_err(|e| e.to_string())?;
            Ok(Output::Json(report.to_json()))
        }
    }
}

fn max_window() -> Result<i64, String> {
    match std::env::var("KINJ_MAX_WINDOW") {
        Ok(s) => {
            let w: i64 = s
                .trim()
                .parse()
                .map_err(|_| format!("KINJ_MAX_WINDOW must be an integer, got {s:?}"))?;
            if w < 1 {
                return Err(format!("KINJ_MAX_WINDOW must be at least 1, got {w}"));
            }
            Ok(w)
        }
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_WINDOW),
        Err(e) => Err(format!("KINJ_MAX_WINDOW: {e}")),
    }
}

fn load_json(path: &Path) -> Result<serde_json::Value, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_complex(field: Field, path: &Path) -> Result<InjComplex, String> {
    let v = load_json(path)?;
    InjComplex::from_json(field, &v).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_rep(field: Field, path: &Path) -> Result<Rep, String> {
    let v = load_json(path)?;
    let qv = v
        .get("quiver")
        .ok_or_else(|| format!("{}: missing \"quiver\" field", path.display()))?;
    let quiver = BoundQuiver::from_json(qv).map_err(|e| format!("{}: {e}", path.display()))?;
    Rep::from_json(Arc::new(quiver), field, &v).map_err(|e| format!("{}: {e}", path.display()))
}

fn render_hom_table(table: &HomTable) -> String {
    let names: Vec<String> = table.labels.iter().map(|l| l.to_string()).collect();
    let cells: Vec<Vec<String>> = table
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|o| match o {
                    HomKOutcome::Stable { dim, .. } => dim.to_string(),
                    HomKOutcome::Unstable { dim_at_cutoff, .. } => format!("{dim_at_cutoff}?"),
                })
                .collect()
        })
        .collect();
    let rowhead = names.iter().map(String::len).max().unwrap_or(0);
    let widths: Vec<usize> = names
        .iter()
        .enumerate()
        .map(|(c, name)| {
            cells
                .iter()
                .map(|row| row[c].len())
                .chain(std::iter::once(name.len()))
                .max()
                .unwrap()
        })
        .collect();
    let mut out = String::from("stable dim of Hom(row, column); `?` marks window cutoff\n");
    out.push_str(&format!("{:rowhead$}", ""));
    for (c, name) in names.iter().enumerate() {
        out.push_str(&format!("  {:>width$}", name, width = widths[c]));
    }
    out.push('\n');
    for (r, name) in names.iter().enumerate() {
        out.push_str(&format!("{name:>rowhead$}"));
        for (c, cell) in cells[r].iter().enumerate() {
            out.push_str(&format!("  {:>width$}", cell, width = widths[c]));
        }
        out.push('\n');
    }
    out
}

fn field_spec(field: Field) -> String {
    match field {
        Field::Rational => "rational".to_string(),
        Field::Fp(p) => format!("fp:{p}"),
    }
}

/// One self-test case: a random radical complex must classify identically
/// after contractible noise and base change, its labels must realize to a
/// complex with the same classification, and a random path representation
/// must pass its own decomposition receipt.
fn selftest_case(rng: &mut impl rand::Rng, field: Field, case: usize) -> Option<serde_json::Value> {
    let fail = |stage: &str, detail: String| {
        Some(serde_json::json!({ "case": case, "stage": stage, "detail": detail }))
    };
    let shape = gen::random_shape(rng, 4, 5, 2);
    let algebra = Arc::new(AnAlgebra::new(shape.n).expect("shapes have n >= 1"));
    let base = gen::random_radical_complex(
        rng,
        &algebra,
        field,
        shape.lo,
        shape.columns,
        shape.max_mult,
        shape.below,
        shape.above,
    );
    let want: LabelMultiset = match classify_complex(&base) {
        Ok(l) => l,
        Err(e) => return fail("classify", e.to_string()),
    };

    let padded = gen::inject_contractible_pair(rng, &base);
    let noisy = gen::conjugate_random(rng, &padded);
    match classify_complex(&noisy) {
        Ok(got) if got == want => {}
        Ok(got) => {
            return fail(
                "invariance",
                format!("expected {}, got {}", labels_to_json(&want), labels_to_json(&got)),
            )
        }
        Err(e) => return fail("invariance", e.to_string()),
    }

    let window = base.window();
    let mut sum = crate::anmod::zero_complex(algebra.clone(), field, window.0, window.1);
    for (label, &mult) in &want {
        for _ in 0..mult {
            let summand = match realize_label(algebra.clone(), field, label, window) {
                Ok(s) => s,
                Err(e) => return fail("realize", e.to_string()),
            };
            sum = match sum.direct_sum(&summand) {
                Ok(s) => s,
                Err(e) => return fail("realize", e.to_string()),
            };
        }
    }
    match classify_complex(&sum) {
        Ok(got) if got == want => {}
        Ok(got) => {
            return fail(
                "roundtrip",
                format!("expected {}, got {}", labels_to_json(&want), labels_to_json(&got)),
            )
        }
        Err(e) => return fail("roundtrip", e.to_string()),
    }

    let rep = gen::random_path_rep(rng, field, 8, 4);
    match decompose_intervals(&rep) {
        Ok(dec) if dec.verify(&rep) => None,
        Ok(_) => fail("rep", "decomposition receipt failed".to_string()),
        Err(e) => fail("rep", e.to_string()),
    }
}

fn selftest(field: Field, seed: u64, cases: usize) -> serde_json::Value {
    let mut rng = gen::rng_from_seed(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        if let Some(f) = selftest_case(&mut rng, field, case) {
            failures.push(f);
        }
    }
    serde_json::json!({
        "seed": seed,
        "cases": cases,
        "field": field_spec(field),
        "failureCount": failures.len(),
        "failures": failures,
        "ok": failures.is_empty(),
    })
}

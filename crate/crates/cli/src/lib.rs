//! Command-line front end. `run` takes the argument list and output
//! streams so the binary and the tests share one entry point.

use std::fmt::Debug;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use psun_core::acceptance::run_all;
use psun_core::invariants::{
    blow_up_kappa, formal_dimension, framed_dimension, kappa, q_relative, BundleData, ManifoldTopology,
};
use psun_core::json::{int_string, int_value, rational_string};
use psun_core::knots::{alexander, braid_closure_wirtinger, determinant};
use psun_core::mahler::{
    asymptotic_table, mahler_measure_integral, mahler_measure_roots, odd_ladder, table_csv, table_json,
    DEFAULT_SAMPLES,
};
use psun_core::rep_variety::repvar_report;
use psun_core::series::{donaldson_series_xk, DEFAULT_ORDER};
use psun_core::{BraidWord, KnotTable, LaurentPoly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SELFTEST: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "psun", version, about = "Knot invariants, branched-cover products and PSU(N) bookkeeping")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Knot table to use instead of the built-in one.
    #[arg(long, global = true, value_name = "PATH")]
    table: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct KnotAtN {
    /// Table name (e.g. 4_1) or a literal braid word.
    knot: String,
    #[arg(long = "n", value_name = "N")]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symmetrized Alexander polynomial.
    Alexander { knot: String },
    /// Product of Delta over the nontrivial N-th roots of unity.
    Invariant(KnotAtN),
    /// First homology of the N-fold cyclic branched cover.
    Homology(KnotAtN),
    /// Flat-connection data at rank N.
    Repvar {
        #[command(flatten)]
        at: KnotAtN,
    },
    /// Donaldson series exp(s^2 Q/2) Delta(exp(2 F s)).
    Series {
        knot: String,
        #[arg(long = "q-h", value_name = "RATIONAL")]
        q_h: BigRational,
        #[arg(long = "f-h", value_name = "RATIONAL")]
        f_h: BigRational,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Mahler measure and the odd-N asymptotic table.
    Mahler {
        knot: String,
        #[arg(long = "n-max", default_value_t = 99)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Emit the table as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Instanton number and formal dimension.
    Dim {
        #[arg(long = "n", value_name = "N")]
        n: usize,
        /// Use the K3 surface and its bundle with c1 = (N+1)h.
        #[arg(long, conflicts_with = "blow_up")]
        k3: bool,
        /// Use the exceptional-sphere bundle of a blow-up.
        #[arg(long = "blow-up")]
        blow_up: bool,
        #[arg(long = "b2-plus", required_unless_present_any = ["k3", "blow_up"])]
        b2_plus: Option<i64>,
        #[arg(long, default_value_t = 0)]
        b1: i64,
        #[arg(long, required_unless_present_any = ["k3", "blow_up"])]
        c2: Option<i64>,
        #[arg(long = "c1-sq", required_unless_present_any = ["k3", "blow_up"])]
        c1_sq: Option<i64>,
    },
    /// Run the acceptance suite.
    Selftest,
}

/// A failed computation: the error's variant name plus its message.
#[derive(Debug)]
struct Failure {
    name: String,
    message: String,
}

const WRAPPERS: &[&str] = &["Invariant", "Linalg", "Poly", "Knot"];

/// Innermost variant name of a (possibly wrapped) error, read off `Debug`.
fn variant_name<E: Debug>(e: &E) -> String {
    let dbg = format!("{e:?}");
    let mut rest = dbg.as_str();
    loop {
        let end = rest.find(|c: char| !c.is_alphanumeric() && c != '_').unwrap_or(rest.len());
        let name = &rest[..end];
        if WRAPPERS.contains(&name) && rest[end..].starts_with('(') {
            rest = &rest[end + 1..];
            continue;
        }
        return name.to_string();
    }
}

impl<E: Debug + std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { name: variant_name(&e), message: e.to_string() }
    }
}

struct Ctx {
    table: KnotTable,
    json: bool,
}

impl Ctx {
    fn knot(&self, knot_ref: &str) -> Result<(BraidWord, LaurentPoly), Failure> {
        let b = self.table.resolve(knot_ref)?;
        let d = alexander(&b)?;
        Ok((b, d))
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable"))
}

pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let table = match &cli.table {
        None => KnotTable::builtin(),
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match KnotTable::parse(&text) {
                Ok(t) => t,
                Err(e) => return report(err, Failure::from(e)),
            },
            Err(e) => {
                let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
    };
    let ctx = Ctx { table, json: cli.json };
    match dispatch(&ctx, cli.command, out, err) {
        Ok(code) => code,
        Err(f) => report(err, f),
    }
}

fn report(err: &mut dyn Write, f: Failure) -> i32 {
    let _ = writeln!(err, "error: {}: {}", f.name, f.message);
    EXIT_COMPUTATION
}

fn dispatch(ctx: &Ctx, command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Alexander { knot } => {
            let (_, d) = ctx.knot(&knot)?;
            if ctx.json {
                emit(out, &json!({
                    "schema": 1,
                    "knot": knot,
                    "alexander": d,
                    "text": d.to_string(),
                    "determinant": int_string(&determinant(&d)),
                }))?;
            } else {
                writeln!(out, "{d}")?;
            }
        }
        Command::Invariant(KnotAtN { knot, n }) => {
            let (_, d) = ctx.knot(&knot)?;
            let r = q_relative(&d, n)?;
            if ctx.json {
                emit(out, &r.to_json(&knot))?;
            } else {
                let note = match (r.degenerate, r.sign_determined) {
                    (true, _) => " (degenerate: Delta vanishes at a root of unity)",
                    (false, true) => "",
                    (false, false) => " (magnitude; sign undetermined for even N)",
                };
                writeln!(out, "{knot} N={n}: {}{note}", r.value)?;
            }
        }
        Command::Homology(KnotAtN { knot, n }) => {
            let (_, d) = ctx.knot(&knot)?;
            let r = q_relative(&d, n)?;
            if ctx.json {
                emit(out, &json!({
                    "schema": 1,
                    "knot": knot,
                    "N": n,
                    "invariant_factors": r.homology.invariant_factors.iter().map(int_string).collect::<Vec<_>>(),
                    "free_rank": r.homology.free_rank,
                    "order": r.homology.order().as_ref().map(int_string),
                }))?;
            } else {
                writeln!(out, "{}", r.homology)?;
            }
        }
        Command::Repvar { at: KnotAtN { knot, n } } => {
            let (b, d) = ctx.knot(&knot)?;
            let mut report = repvar_report(&d, &braid_closure_wirtinger(&b), n)?;
            report["knot"] = json!(knot);
            if ctx.json {
                emit(out, &report)?;
            } else {
                let show = |v: &Value| v.as_str().map_or("infinite".to_string(), str::to_string);
                writeln!(out, "T3 flat points: {}", report["t3_points"])?;
                writeln!(out, "kernel of Delta(tau): {} ({})", show(&report["kernel_count"]), group_text(&report["group"]))?;
                writeln!(out, "Wirtinger torus count: {}", show(&report["wirtinger_count"]))?;
            }
        }
        Command::Series { knot, q_h, f_h, order } => {
            let (_, d) = ctx.knot(&knot)?;
            let s = donaldson_series_xk(&d, &q_h, &f_h, order);
            if ctx.json {
                emit(out, &json!({
                    "schema": 1,
                    "knot": knot,
                    "Q_h": rational_string(&q_h),
                    "F_h": rational_string(&f_h),
                    "order": order,
                    "coefficients": s.to_json(),
                }))?;
            } else {
                for (k, c) in s.coeffs().iter().enumerate() {
                    writeln!(out, "s^{k}: {c}")?;
                }
            }
        }
        Command::Mahler { knot, n_max, samples, csv } => {
            let (_, d) = ctx.knot(&knot)?;
            let by_roots = mahler_measure_roots(&d)?;
            let by_integral = mahler_measure_integral(&d, samples)?;
            let rows = asymptotic_table(&d, &odd_ladder(n_max))?;
            if csv {
                write!(out, "{}", table_csv(&rows))?;
            } else if ctx.json {
                let mut v = table_json(&knot, &rows);
                v["mahler_roots"] = json!(by_roots);
                v["mahler_integral"] = json!(by_integral);
                emit(out, &v)?;
            } else {
                writeln!(out, "Mahler measure: {by_roots:.12} (roots), {by_integral:.12} (integral)")?;
                if let Some(last) = rows.iter().rev().find(|r| r.difference.is_some()) {
                    writeln!(out, "N={}: (1/N) log q_N - log alpha = {:.3e}", last.n, last.difference.unwrap_or(0.0))?;
                }
                let flagged: Vec<String> = rows.iter().filter(|r| r.degenerate).map(|r| r.n.to_string()).collect();
                if !flagged.is_empty() {
                    writeln!(out, "degenerate N: {}", flagged.join(", "))?;
                }
            }
        }
        Command::Dim { n, k3, blow_up, b2_plus, b1, c2, c1_sq } => {
            if n < 2 {
                writeln!(err, "error: --n must be at least 2")?;
                return Ok(EXIT_USAGE);
            }
            let (topo, kap) = if k3 {
                let b = BundleData::k3(n);
                (ManifoldTopology::k3(), kappa(n, b.c2.unwrap_or(0), b.c1_sq))
            } else if blow_up {
                (ManifoldTopology::new("blow-up sphere", 0, 0), blow_up_kappa(n))
            } else {
                let topo = ManifoldTopology::new("X", b2_plus.unwrap_or(0), b1);
                (topo, kappa(n, c2.unwrap_or(0), c1_sq.unwrap_or(0)))
            };
            if !blow_up {
                if let Some(w) = topo.hypothesis_warning() {
                    writeln!(err, "warning: {w}")?;
                }
            }
            let dim = formal_dimension(n, &kap, &topo)?;
            let mut v = json!({ "schema": 1, "N": n, "kappa": rational_string(&kap), "dim": int_value(&dim) });
            if blow_up {
                v["framed_dim"] = int_value(&framed_dimension(n, &kap, &topo)?);
            }
            if ctx.json {
                emit(out, &v)?;
            } else {
                write!(out, "kappa = {kap}, dim = {dim}")?;
                if let Some(f) = v.get("framed_dim") {
                    write!(out, ", framed dim = {f}")?;
                }
                writeln!(out)?;
            }
        }
        Command::Selftest => {
            let reports = run_all();
            let all = reports.iter().all(|r| r.passed);
            if ctx.json {
                emit(out, &json!({
                    "schema": 1,
                    "passed": all,
                    "criteria": reports.iter().map(|r| json!({
                        "id": r.id,
                        "name": r.name,
                        "passed": r.passed,
                        "detail": r.detail,
                        "seconds": r.elapsed.as_secs_f64(),
                    })).collect::<Vec<_>>(),
                }))?;
            } else {
                for r in &reports {
                    writeln!(out, "{r}")?;
                }
            }
            return Ok(if all { EXIT_OK } else { EXIT_SELFTEST });
        }
    }
    Ok(EXIT_OK)
}

fn group_text(group: &Value) -> String {
    let free = group["free_rank"].as_u64().unwrap_or(0);
    let mut parts: Vec<String> = Vec::new();
    if free > 0 {
        parts.push(if free == 1 { "Z".into() } else { format!("Z^{free}") });
    }
    if let Some(fs) = group["invariant_factors"].as_array() {
        parts.extend(fs.iter().map(|f| format!("Z/{f}").replace('"', "")));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

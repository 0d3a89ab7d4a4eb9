//! The `qo` command line.
//!
//! [`run`] parses arguments, dispatches, and returns the process exit code:
//! 0 on success, 1 on a domain, input or I/O error, 2 on a usage error.
//! Errors go to the error stream as one line starting with a stable tag,
//! `error[usage]:`, `error[parse]:`, `error[io]:` or `error[domain]:`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quotient_orders::design::{
    claim_check_x_leq_p, counterexample_search, solve_closest_to_bound, solve_design, solve_tracking_target,
    DesignProblem, DesignSolution, SearchReport, Variant,
};
use quotient_orders::order::{
    action_properties, induced_relation, submajorize_compare, FiniteRelation, GroupAction, InduceMode,
};
use quotient_orders::setclass::{burnside_count, enumerate_set_classes, proposition1_report, sck_minimal, SetClass};
use quotient_orders::spectra::{export_dot, load_named, normalize, RawSpectrum};
use quotient_orders::timbre::{brightness_compare, brightness_hasse, TimbralVector, DEFAULT_TOL};
use quotient_orders::Error;

/// Seed used by `timbre counterexample` when neither `--seed` nor `QO_SEED`
/// is given.
pub const DEFAULT_SEED: u64 = 2024;

#[derive(Debug, Parser)]
#[command(name = "qo", version, about = "Induced orders on set classes and timbres")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transposition classes of pitch class sets.
    #[command(subcommand)]
    Setclass(SetclassCmd),
    /// Brightness of harmonic spectra and sound design.
    #[command(subcommand)]
    Timbre(TimbreCmd),
    /// Relations and group actions on finite sets.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Compare two multisets of pitches by submajorization.
    Submajorize {
        /// JSON array of numbers.
        a: PathBuf,
        /// JSON array of numbers.
        b: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum SetclassCmd {
    /// Minimal classes of SC_k, one per line.
    Minimal {
        #[arg(long)]
        edo: usize,
        #[arg(long)]
        max_second: usize,
    },
    /// Number of classes, cross-checked against Burnside's formula.
    Count {
        #[arg(long)]
        edo: usize,
    },
    /// Compare order-minimality in SC_k with the thirds criterion.
    CheckProp1 {
        #[arg(long)]
        edo: usize,
        #[arg(long)]
        max_second: usize,
    },
}

#[derive(Debug, Args)]
struct Ingest {
    /// Keep only the lowest N harmonics of each spectrum.
    #[arg(long, value_name = "N")]
    truncate: Option<usize>,
    /// Zero-pad each spectrum up to N harmonics.
    #[arg(long, value_name = "N")]
    pad_to: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    /// Minimize ‖x − p‖₁.
    L1min,
    /// Minimize ‖x − p‖₁ + ‖x − b‖₁.
    L1min2,
    /// Among ‖x − p‖₁ optima, the one closest to the bound.
    ClosestToBound,
    /// Among ‖x − p‖₁ optima, the one matching the target wherever the bound is slack.
    TrackTarget,
}

#[derive(Debug, Subcommand)]
enum TimbreCmd {
    /// Brightness verdict of A against B.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        ingest: Ingest,
    },
    /// Hasse diagram of every CSV spectrum in a directory.
    Hasse {
        dir: PathBuf,
        /// Write the diagram as Graphviz DOT.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        ingest: Ingest,
    },
    /// Closest timbre to a target that is no brighter than a bound.
    Design {
        #[arg(long, value_name = "CSV")]
        target: PathBuf,
        #[arg(long, value_name = "CSV")]
        bound: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::L1min)]
        variant: VariantArg,
        /// Also write the solution JSON here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[command(flatten)]
        ingest: Ingest,
    },
    /// Random search for instances where b ∧ p is not an ℓ1 optimum.
    Counterexample {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, env = "QO_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also write the report JSON here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum OrderCmd {
    /// Action properties and the induced relations on orbits.
    Check {
        #[arg(long, value_name = "JSON")]
        relation: PathBuf,
        #[arg(long, value_name = "JSON")]
        action: PathBuf,
    },
}

enum Failure {
    Domain(Error),
    Write(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Write(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Run the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let rendered = e.render().to_string();
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = writeln!(err, "error[usage]: missing subcommand\n\n{}", rendered.trim_end());
                return 2;
            }
            let message = rendered.trim_start_matches("error: ").trim_end();
            let _ = writeln!(err, "error[usage]: {message}");
            return 2;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error[{}]: {e}", tag(&e));
            1
        }
        // a closed pipe downstream is not worth a diagnostic
        Err(Failure::Write(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Write(e)) => {
            let _ = writeln!(err, "error[io]: writing output: {e}");
            1
        }
    }
}

fn tag(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } | Error::Json(_) => "parse",
        Error::Io { .. } => "io",
        _ => "domain",
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Setclass(cmd) => setclass(cmd, json, out),
        Command::Timbre(cmd) => timbre(cmd, json, out),
        Command::Order(OrderCmd::Check { relation, action }) => order_check(relation, action, json, out),
        Command::Submajorize { a, b } => submajorize(a, b, json, out),
    }
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Outcome {
    writeln!(out, "{}", serde_json::to_string_pretty(value).map_err(Error::from)?)?;
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Outcome {
    fs::write(path, contents).map_err(|e| Error::Io {
        path: path.to_owned(),
        source: e,
    })?;
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_owned(),
        source: e,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        line: e.line() as u64,
        message: e.to_string(),
    })
}

fn class_json(c: &SetClass) -> Value {
    json!({ "edo": c.edo(), "members": c.members() })
}

fn setclass(cmd: &SetclassCmd, json: bool, out: &mut dyn Write) -> Outcome {
    match *cmd {
        SetclassCmd::Minimal { edo, max_second } => {
            let classes = sck_minimal(edo, max_second)?;
            if json {
                emit_json(out, &Value::Array(classes.iter().map(class_json).collect()))?;
            } else {
                for c in &classes {
                    writeln!(out, "{c}")?;
                }
            }
        }
        SetclassCmd::Count { edo } => {
            let count = enumerate_set_classes(edo)?.len() as u64;
            let burnside = burnside_count(edo);
            if json {
                emit_json(
                    out,
                    &json!({ "edo": edo, "count": count, "burnside": burnside, "agrees": count == burnside }),
                )?;
            } else {
                writeln!(out, "{count}")?;
                let verdict = if count == burnside { "agrees" } else { "DISAGREES" };
                writeln!(out, "burnside {burnside} {verdict}")?;
            }
            if count != burnside {
                return Err(Error::InvalidArgument(format!("enumeration {count} differs from Burnside {burnside}")).into());
            }
        }
        SetclassCmd::CheckProp1 { edo, max_second } => {
            let r = proposition1_report(edo, max_second)?;
            if json {
                emit_json(
                    out,
                    &json!({
                        "edo": r.edo,
                        "max_second": r.max_second,
                        "members": r.members,
                        "agrees": r.agrees,
                        "order_minimal": r.order_minimal.iter().map(class_json).collect::<Vec<_>>(),
                        "thirds_minimal": r.thirds_minimal.iter().map(class_json).collect::<Vec<_>>(),
                    }),
                )?;
            } else {
                let verdict = if r.agrees { "agrees" } else { "disagrees" };
                writeln!(
                    out,
                    "N={} k={}: {} classes in SC_k, {} minimal; thirds criterion {verdict}",
                    r.edo,
                    r.max_second,
                    r.members,
                    r.order_minimal.len()
                )?;
                if !r.agrees {
                    let show = |v: &[SetClass]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
                    writeln!(out, "order-minimal:  {}", show(&r.order_minimal))?;
                    writeln!(out, "thirds-minimal: {}", show(&r.thirds_minimal))?;
                }
            }
        }
    }
    Ok(())
}

fn ingest(path: &Path, opts: &Ingest) -> Result<TimbralVector, Error> {
    let mut raw: RawSpectrum = load_named(path)?;
    if let Some(n) = opts.truncate {
        raw = raw.truncate(n)?;
    }
    normalize(&raw, opts.pad_to)
}

fn spectra_in(dir: &Path) -> Result<Vec<PathBuf>, Error> {
    let entries = fs::read_dir(dir).map_err(|e| Error::Io {
        path: dir.to_owned(),
        source: e,
    })?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry
            .map_err(|e| Error::Io {
                path: dir.to_owned(),
                source: e,
            })?
            .path();
        if path.extension().is_some_and(|x| x.eq_ignore_ascii_case("csv")) {
            paths.push(path);
        }
    }
    paths.sort();
    if paths.is_empty() {
        return Err(Error::InvalidArgument(format!("no .csv spectra in {}", dir.display())));
    }
    Ok(paths)
}

fn solution_json(problem: &DesignProblem, s: &DesignSolution) -> Value {
    let optimal = s.is_optimal();
    json!({
        "x": s.x,
        "objective": if optimal { json!(s.objective) } else { Value::Null },
        "tv_distance": if optimal { json!(s.tv_distance()) } else { Value::Null },
        "x_leq_p": optimal && claim_check_x_leq_p(problem, s),
        "status": s.status,
    })
}

fn report_json(r: &SearchReport) -> Value {
    serde_json::to_value(r).expect("search reports serialize")
}

fn timbre(cmd: &TimbreCmd, json: bool, out: &mut dyn Write) -> Outcome {
    match cmd {
        TimbreCmd::Compare { a, b, tol, ingest: opts } => {
            let (x, y) = (ingest(a, opts)?, ingest(b, opts)?);
            let verdict = brightness_compare(&x, &y, *tol)?;
            if json {
                emit_json(out, &json!({ "a": x.name(), "b": y.name(), "verdict": verdict }))?;
            } else {
                writeln!(out, "{verdict}")?;
            }
        }
        TimbreCmd::Hasse { dir, dot, tol, ingest: opts } => {
            let collection = spectra_in(dir)?
                .iter()
                .map(|p| ingest(p, opts))
                .collect::<Result<Vec<_>, _>>()?;
            let hasse = brightness_hasse(&collection, *tol)?;
            if let Some(path) = dot {
                write_file(path, &export_dot(&hasse))?;
            }
            let mut maximal = hasse.maximal_names();
            maximal.sort_unstable();
            let mut minimal = hasse.minimal_names();
            minimal.sort_unstable();
            let mut edges = hasse.edges();
            edges.sort_unstable();
            let mut near: Vec<(&str, &str)> = hasse
                .near_equal
                .iter()
                .map(|&(i, j)| (hasse.names[i].as_str(), hasse.names[j].as_str()))
                .collect();
            near.sort_unstable();
            if json {
                let mut nodes: Vec<&str> = hasse.names.iter().map(String::as_str).collect();
                nodes.sort_unstable();
                emit_json(
                    out,
                    &json!({
                        "nodes": nodes,
                        "edges": edges,
                        "maximal": maximal,
                        "minimal": minimal,
                        "near_equal": near,
                    }),
                )?;
            } else {
                writeln!(out, "maximal: {}", maximal.join(", "))?;
                writeln!(out, "minimal: {}", minimal.join(", "))?;
                for (u, v) in &edges {
                    writeln!(out, "{u} -> {v}")?;
                }
                for (u, v) in &near {
                    writeln!(out, "near-equal: {u} ~ {v}")?;
                }
            }
        }
        TimbreCmd::Design {
            target,
            bound,
            variant,
            out: path,
            ingest: opts,
        } => {
            let (p, b) = (ingest(target, opts)?, ingest(bound, opts)?);
            let model = if *variant == VariantArg::L1min2 {
                Variant::BiObjective
            } else {
                Variant::ClosestToTarget
            };
            let problem = DesignProblem::new(p, b, model)?;
            let solution = match variant {
                VariantArg::L1min | VariantArg::L1min2 => solve_design(&problem)?,
                VariantArg::ClosestToBound => solve_closest_to_bound(&problem)?,
                VariantArg::TrackTarget => solve_tracking_target(&problem)?,
            };
            let value = solution_json(&problem, &solution);
            if let Some(path) = path {
                let text = serde_json::to_string_pretty(&value).map_err(Error::from)?;
                write_file(path, &format!("{text}\n"))?;
            }
            if json {
                emit_json(out, &value)?;
            } else if solution.is_optimal() {
                writeln!(out, "status: optimal")?;
                writeln!(out, "objective: {:.9}", solution.objective)?;
                writeln!(out, "tv_distance: {:.9}", solution.tv_distance())?;
                writeln!(out, "x_leq_p: {}", value["x_leq_p"])?;
                writeln!(out, "harmonic  target    bound     x")?;
                let (pp, bp) = (problem.target().power(), problem.bound().power());
                for (k, xk) in solution.x.iter().enumerate() {
                    writeln!(out, "{:>8}  {:.6}  {:.6}  {:.6}", k + 1, pp[k], bp[k], xk)?;
                }
            } else {
                writeln!(out, "status: {}", value["status"].as_str().unwrap_or("unknown"))?;
            }
            if !solution.is_optimal() {
                return Err(Error::InvalidArgument(format!("solver finished with status {}", value["status"])).into());
            }
        }
        TimbreCmd::Counterexample {
            n,
            trials,
            seed,
            out: path,
        } => {
            let report = counterexample_search(*n, *trials, *seed)?;
            let value = report_json(&report);
            if let Some(path) = path {
                let text = serde_json::to_string_pretty(&value).map_err(Error::from)?;
                write_file(path, &format!("{text}\n"))?;
            }
            if json {
                emit_json(out, &value)?;
            } else {
                match &report.found {
                    Some(c) => {
                        writeln!(out, "found at trial {} (seed {}, n {})", c.trial, report.seed, report.n)?;
                        writeln!(out, "target:   {:?}", c.target)?;
                        writeln!(out, "bound:    {:?}", c.bound)?;
                        writeln!(out, "b ∧ p:    {:?}", c.infimum)?;
                        writeln!(out, "‖b∧p − p‖₁ = {:.9}, LP optimum = {:.9}, gap = {:.3e}", c.infimum_objective, c.lp_objective, c.gap)?;
                    }
                    None => writeln!(
                        out,
                        "not found in {} trials (seed {}, n {}); largest gap {:.3e}",
                        report.trials_run, report.seed, report.n, report.max_gap
                    )?,
                }
            }
        }
    }
    Ok(())
}

fn pairs_json(rel: &FiniteRelation) -> Value {
    json!(rel.strict_pairs().collect::<Vec<_>>())
}

fn order_check(relation: &Path, action: &Path, json: bool, out: &mut dyn Write) -> Outcome {
    let rel: FiniteRelation = read_json(relation)?;
    let group: GroupAction = read_json(action)?;
    let axioms = rel.axioms();
    let props = action_properties(&rel, &group)?;
    let strong = induced_relation(&rel, &group, InduceMode::Strong)?;
    let weak = induced_relation(&rel, &group, InduceMode::Weak)?;
    let (s, w) = (strong.relation.as_ref().unwrap(), weak.relation.as_ref().unwrap());
    let s_axioms = s.axioms();
    let strong_equals_weak = s == w;
    // Theorem-level expectations, each only meaningful under its hypothesis
    let preorder_ok = s_axioms.is_preorder();
    let collapse_ok = !props.increasing || strong_equals_weak;
    let antisym_ok = !props.transverse || s_axioms.antisymmetric;
    if json {
        emit_json(
            out,
            &json!({
                "relation": { "size": rel.size(), "reflexive": axioms.reflexive, "antisymmetric": axioms.antisymmetric, "transitive": axioms.transitive },
                "group_order": group.order(),
                "increasing": props.increasing,
                "transverse": props.transverse,
                "orbits": strong.orbits,
                "strong": pairs_json(s),
                "weak": pairs_json(w),
                "strong_is_preorder": preorder_ok,
                "strong_is_antisymmetric": s_axioms.antisymmetric,
                "strong_equals_weak": strong_equals_weak,
                "consistent": preorder_ok && collapse_ok && antisym_ok,
            }),
        )?;
    } else {
        writeln!(
            out,
            "relation: size {}, reflexive {}, antisymmetric {}, transitive {}",
            rel.size(),
            axioms.reflexive,
            axioms.antisymmetric,
            axioms.transitive
        )?;
        writeln!(out, "group: {} elements", group.order())?;
        writeln!(out, "increasing: {}", props.increasing)?;
        writeln!(out, "transverse: {}", props.transverse)?;
        let orbits: Vec<String> = strong
            .orbits
            .iter()
            .map(|o| format!("{{{}}}", o.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        writeln!(out, "orbits: {}", orbits.join(" "))?;
        let show = |r: &FiniteRelation| {
            r.strict_pairs().map(|(i, j)| format!("{i}<{j}")).collect::<Vec<_>>().join(" ")
        };
        writeln!(out, "strong (orbit indices): {}", show(s))?;
        writeln!(out, "weak (orbit indices): {}", show(w))?;
        writeln!(out, "strong is a preorder: {preorder_ok}")?;
        writeln!(out, "strong is antisymmetric: {}", s_axioms.antisymmetric)?;
        writeln!(out, "strong equals weak: {strong_equals_weak}")?;
    }
    Ok(())
}

fn submajorize(a: &Path, b: &Path, json: bool, out: &mut dyn Write) -> Outcome {
    let x: Vec<f64> = read_json(a)?;
    let y: Vec<f64> = read_json(b)?;
    let verdict = submajorize_compare(&x, &y)?;
    if json {
        emit_json(out, &json!({ "verdict": verdict }))?;
    } else {
        writeln!(out, "{verdict}")?;
    }
    Ok(())
}

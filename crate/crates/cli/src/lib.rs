//! The `rcx` command line: generators, builders, verifiers and reports over
//! JSON point-set and polyhedron files.
//!
//! Exit codes: 0 on success, 1 when a check returns a well-formed negative
//! verdict, 2 on usage, input or resource errors.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use rcx_core::families::{BasicFamily, Family, GraphFamily};
use rcx_core::hiding::{
    build_arb_hiding, build_diff_hiding, build_parity_hiding, build_perm_hiding, build_simplex_hiding,
    build_tjoin_hiding, build_tsp_hiding, max_hiding_in_box, verify_hiding, HidingFailure,
};
use rcx_core::lattice::LatticeBox;
use rcx_core::lp::{HPolyhedron, Separation};
use rcx_core::relax::{
    build_conn_cut_relaxation, build_cube_relaxation, build_rado_permutahedron, build_subtour_relaxation,
    irredundant_count, verify_relaxation, RelaxationFailure,
};
use rcx_core::sepindex::{bound_report, build_binary_relaxation, jeroslow_index, rationalize_halfspace, SeparationSystem};
use rcx_core::{Limits, PointSet, DEFAULT_CAP};

pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub report_path: Option<PathBuf>,
    pub summary: String,
    /// Document text meant for standard output, when no output file was named.
    pub stdout: Option<String>,
}

#[derive(Parser, Debug)]
#[command(name = "rcx", version, about = "Exact relaxation-complexity toolkit")]
struct Cli {
    /// Largest lattice box that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    max_lattice: u64,
    /// Largest candidate count a generator may examine.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    max_subsets: u64,
    /// Write a JSON report of the verdict to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a point family, e.g. `gen stsp 5` or `gen tjoins 6 --t 1,2`.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build, verify or search hiding sets.
    #[command(subcommand)]
    Hiding(HidingCommand),
    /// Build, verify or reduce relaxations.
    #[command(subcommand)]
    Relax(RelaxCommand),
    /// Exact separation index of a binary set.
    Index {
        x: PathBuf,
        /// Largest cube dimension to accept.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// One halfspace inducing a binary set on the cube, if any.
    Rationalize { x: PathBuf },
    /// Certified lower and upper bounds for a family.
    Report {
        #[command(flatten)]
        family: FamilyArgs,
        /// Also search for a largest hiding set in this box (`lo:hi,...`).
        #[arg(long = "box")]
        search_box: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// cube, simplex, even, odd, perm, diff, stsp, atsp, conn, spt, arb, forests, branch or tjoins.
    name: String,
    /// Size parameters (`diff` takes m and n, the others one value).
    params: Vec<usize>,
    /// Odd-degree nodes for `tjoins`, 1-based and comma separated.
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<usize>>,
    /// Fixed root node (1-based) for `arb` and `branch`.
    #[arg(long)]
    root: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum HidingCommand {
    /// Build a hiding set: tsp N, arb N, diff n, perm n, tjoin n --t .., parity n, simplex d.
    Build {
        construction: String,
        params: Vec<usize>,
        #[arg(long)]
        directed: bool,
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<usize>>,
        /// Which T-join set to write.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        part: u8,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify that H is a hiding set for X.
    Verify { h: PathBuf, x: PathBuf },
    /// Largest hiding set for X inside a box.
    Max {
        x: PathBuf,
        #[arg(long = "box")]
        search_box: String,
    },
}

#[derive(Subcommand, Debug)]
enum RelaxCommand {
    /// Build a relaxation: cube d, subtour n [--directed], conn n, rado n, binary X.json [--system S.json].
    Build {
        name: String,
        args: Vec<String>,
        #[arg(long)]
        directed: bool,
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that the lattice points of P are exactly those of conv(X).
    Verify { p: PathBuf, x: PathBuf },
    /// Count irredundant inequalities of P.
    Irredundant { p: PathBuf },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
    Core(rcx_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<rcx_core::Error> for CliError {
    fn from(e: rcx_core::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a subcommand produced before reporting.
struct Outcome {
    exit_code: i32,
    status: &'static str,
    summary: String,
    fields: Value,
    document: Option<(Option<PathBuf>, String)>,
}

impl Outcome {
    fn ok(summary: String, fields: Value) -> Self {
        Outcome { exit_code: 0, status: "ok", summary, fields, document: None }
    }

    fn verdict(passed: bool, status: &'static str, summary: String, fields: Value) -> Self {
        Outcome { exit_code: if passed { 0 } else { 1 }, status, summary, fields, document: None }
    }

    fn with_document(mut self, path: Option<PathBuf>, text: String) -> Self {
        self.document = Some((path, text));
        self
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        let inner = e.into_inner();
        if at == "." {
            CliError::Input(format!("{}: {inner}", path.display()))
        } else {
            CliError::Input(format!("{}: field `{at}`: {inner}", path.display()))
        }
    })
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values serialize");
    s.push('\n');
    s
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn one_param(name: &str, params: &[usize]) -> CliResult<usize> {
    match params {
        [v] => Ok(*v),
        _ => Err(CliError::Usage(format!("{name} takes exactly one size parameter, got {}", params.len()))),
    }
}

fn parse_family(args: &FamilyArgs) -> CliResult<Family> {
    let name = args.name.as_str();
    if args.t.is_some() && name != "tjoins" {
        return Err(CliError::Usage("--t applies only to tjoins".into()));
    }
    if args.root.is_some() && !matches!(name, "arb" | "branch") {
        return Err(CliError::Usage("--root applies only to arb and branch".into()));
    }
    let root = args.root.map(|r| r.checked_sub(1).ok_or_else(|| CliError::Usage("--root is 1-based".into()))).transpose()?;
    if name == "diff" {
        return match args.params[..] {
            [m, n] => Ok(Family::Basic(BasicFamily::Diff { m, n })),
            _ => Err(CliError::Usage(format!("diff takes two size parameters m n, got {}", args.params.len()))),
        };
    }
    let v = one_param(name, &args.params)?;
    let graph = |kind| Ok(Family::Graph { kind, n: v });
    match name {
        "cube" => Ok(Family::Basic(BasicFamily::Cube(v))),
        "simplex" => Ok(Family::Basic(BasicFamily::Simplex(v))),
        "even" => Ok(Family::Basic(BasicFamily::Even(v))),
        "odd" => Ok(Family::Basic(BasicFamily::Odd(v))),
        "perm" => Ok(Family::Basic(BasicFamily::Perm(v))),
        "stsp" => graph(GraphFamily::Stsp),
        "atsp" => graph(GraphFamily::Atsp),
        "conn" => graph(GraphFamily::Conn),
        "spt" => graph(GraphFamily::Spt),
        "forests" => graph(GraphFamily::Forests),
        "arb" => graph(GraphFamily::Arb { root }),
        "branch" => graph(GraphFamily::Branch { root }),
        "tjoins" => graph(GraphFamily::TJoins { t: args.t.clone().unwrap_or_default() }),
        other => Err(CliError::Core(rcx_core::Error::UnknownFamily(other.to_string()))),
    }
}

fn set_fields(set: &PointSet) -> Value {
    json!({ "dim": set.dim(), "count": set.len(), "digest": set.digest(), "family": set.family })
}

fn emit_set(set: &PointSet, output: Option<PathBuf>, what: &str) -> Outcome {
    let target = output.as_ref().map_or("stdout".to_string(), |p| p.display().to_string());
    let summary = format!("{what}: {} points of dimension {} to {target}", set.len(), set.dim());
    Outcome::ok(summary, set_fields(set)).with_document(output, to_pretty(set))
}

fn cmd_gen(family: &FamilyArgs, output: Option<PathBuf>, limits: &Limits) -> CliResult<Outcome> {
    let set = parse_family(family)?.generate(limits)?;
    Ok(emit_set(&set, output, "generated"))
}

fn hiding_build(
    construction: &str,
    params: &[usize],
    directed: bool,
    t: Option<Vec<usize>>,
    part: u8,
    limits: &Limits,
) -> CliResult<PointSet> {
    if t.is_some() && construction != "tjoin" {
        return Err(CliError::Usage("--t applies only to tjoin".into()));
    }
    let v = one_param(construction, params)?;
    Ok(match construction {
        "tsp" => build_tsp_hiding(v, directed)?,
        "arb" => build_arb_hiding(v, directed)?,
        "diff" => build_diff_hiding(v, limits)?,
        "perm" => build_perm_hiding(v, limits)?,
        "parity" => build_parity_hiding(v, limits)?,
        "simplex" => build_simplex_hiding(v)?,
        "tjoin" => {
            let (h1, h2) = build_tjoin_hiding(v, &t.unwrap_or_default(), limits)?;
            if part == 1 {
                h1
            } else {
                h2
            }
        }
        other => return Err(CliError::Usage(format!("unknown hiding construction `{other}`"))),
    })
}

fn describe_hiding_failure(f: &HidingFailure) -> String {
    let pt = |p: &[i64]| format!("({})", p.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
    match f {
        HidingFailure::NotInAffineHull { index, point } => format!("H[{index}] = {} is not in aff(X)", pt(point)),
        HidingFailure::InsideHull { index, point } => format!("H[{index}] = {} lies in conv(X)", pt(point)),
        HidingFailure::SegmentMissesHull { i, j, a, b } => {
            format!("segment H[{i}] = {} to H[{j}] = {} misses conv(X)", pt(a), pt(b))
        }
    }
}

fn cmd_hiding(cmd: HidingCommand, limits: &Limits) -> CliResult<Outcome> {
    match cmd {
        HidingCommand::Build { construction, params, directed, t, part, output } => {
            let set = hiding_build(&construction, &params, directed, t, part, limits)?;
            Ok(emit_set(&set, output, "built"))
        }
        HidingCommand::Verify { h, x } => {
            let hs: PointSet = read_json(&h)?;
            let xs: PointSet = read_json(&x)?;
            let cert = verify_hiding(&hs, &xs)?;
            let summary = match &cert.failure {
                None => format!("valid hiding set, bound {}", cert.bound),
                Some(f) => format!("not a hiding set: {}", describe_hiding_failure(f)),
            };
            let fields = json!({ "bound": cert.bound, "lower_bound": cert.lower_bound(), "certificate": cert });
            Ok(Outcome::verdict(cert.valid(), if cert.valid() { "valid" } else { "invalid" }, summary, fields))
        }
        HidingCommand::Max { x, search_box } => {
            let xs: PointSet = read_json(&x)?;
            let bx = LatticeBox::parse(&search_box)?;
            let r = max_hiding_in_box(&xs, &bx, limits)?;
            let summary = format!("largest hiding set in the box has {} points ({} candidates)", r.size, r.candidates);
            Ok(Outcome::ok(summary, json!({ "size": r.size, "candidates": r.candidates, "witness": r.witness })))
        }
    }
}

fn usize_arg(name: &str, args: &[String]) -> CliResult<usize> {
    match args {
        [v] => v.parse().map_err(|_| CliError::Usage(format!("{name}: `{v}` is not a nonnegative integer"))),
        _ => Err(CliError::Usage(format!("{name} takes exactly one argument, got {}", args.len()))),
    }
}

fn read_system(path: &Path) -> CliResult<SeparationSystem> {
    let mut v: Value = read_json(path)?;
    if let Some(inner) = v.get_mut("system") {
        v = inner.take();
    }
    serde_path_to_error::deserialize(v).map_err(|e| CliError::Input(format!("{}: field `{}`: {}", path.display(), e.path(), e.inner())))
}

fn cmd_relax(cmd: RelaxCommand, limits: &Limits) -> CliResult<Outcome> {
    match cmd {
        RelaxCommand::Build { name, args, directed, system, output } => {
            if directed && name != "subtour" {
                return Err(CliError::Usage("--directed applies only to subtour".into()));
            }
            if system.is_some() && name != "binary" {
                return Err(CliError::Usage("--system applies only to binary".into()));
            }
            let p: HPolyhedron = match name.as_str() {
                "cube" => build_cube_relaxation(usize_arg(&name, &args)?)?,
                "subtour" => build_subtour_relaxation(usize_arg(&name, &args)?, directed, limits)?,
                "conn" => build_conn_cut_relaxation(usize_arg(&name, &args)?, limits)?,
                "rado" => build_rado_permutahedron(usize_arg(&name, &args)?, limits)?,
                "binary" => {
                    let [path] = &args[..] else {
                        return Err(CliError::Usage("binary takes the point-set file as its only argument".into()));
                    };
                    let xs: PointSet = read_json(Path::new(path))?;
                    let sys = system.as_deref().map(read_system).transpose()?;
                    build_binary_relaxation(&xs, sys.as_ref(), limits)?
                }
                other => return Err(CliError::Usage(format!("unknown relaxation `{other}`"))),
            };
            let target = output.as_ref().map_or("stdout".to_string(), |p| p.display().to_string());
            let summary = format!("built {name} relaxation: {} rows in dimension {} to {target}", p.len(), p.dim());
            Ok(Outcome::ok(summary, json!({ "rows": p.len(), "dim": p.dim() })).with_document(output, to_pretty(&p)))
        }
        RelaxCommand::Verify { p, x } => {
            let poly: HPolyhedron = read_json(&p)?;
            let xs: PointSet = read_json(&x)?;
            let r = verify_relaxation(&poly, &xs, limits)?;
            let pt = |v: &[i64]| format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
            let summary = match &r.failure {
                None => format!("verified, {} lattice points", r.lattice_count.unwrap_or(0)),
                Some(RelaxationFailure::ExtraLatticePoint(v)) => format!("failed: extra lattice point {}", pt(v)),
                Some(RelaxationFailure::MissingPoint(v)) => format!("failed: point {} of X violates P", pt(v)),
                Some(RelaxationFailure::UnboundedWithFiniteX(ray)) => format!("failed: P recedes along {ray}"),
            };
            let fields = json!({ "lattice_count": r.lattice_count, "hull_points": r.hull_points, "failure": r.failure });
            Ok(Outcome::verdict(r.verified(), r.status(), summary, fields))
        }
        RelaxCommand::Irredundant { p } => {
            let poly: HPolyhedron = read_json(&p)?;
            let r = irredundant_count(&poly)?;
            let summary = format!(
                "{} irredundant inequalities, {} equalities, {} redundant rows",
                r.inequalities,
                r.equalities,
                r.redundant_rows.len()
            );
            Ok(Outcome::ok(summary, serde_json::to_value(&r).expect("serializable")))
        }
    }
}

fn cmd_index(x: &Path, limit: Option<usize>, limits: &Limits) -> CliResult<Outcome> {
    let xs: PointSet = read_json(x)?;
    let limits = limit.map_or(*limits, |d| limits.with_index_dim(d));
    let r = jeroslow_index(&xs, &limits)?;
    let summary = format!("index {} (clique bound {}, {} maximal coverable sets)", r.k, r.clique_bound, r.maximal_sets);
    Ok(Outcome::ok(
        summary,
        json!({ "index": r.k, "clique_bound": r.clique_bound, "maximal_sets": r.maximal_sets, "system": r.system }),
    ))
}

fn cmd_rationalize(x: &Path, limits: &Limits) -> CliResult<Outcome> {
    let xs: PointSet = read_json(x)?;
    Ok(match rationalize_halfspace(&xs, limits)? {
        Separation::Separated(h) => {
            Outcome::verdict(true, "separable", format!("separable by {h}"), json!({ "halfspace": h }))
        }
        Separation::NotSeparable => Outcome::verdict(
            false,
            "not_separable",
            "not separable: no single halfspace induces X on the cube".into(),
            json!({ "halfspace": null }),
        ),
    })
}

fn cmd_report(family: &FamilyArgs, search_box: Option<String>, output: Option<PathBuf>, limits: &Limits) -> CliResult<Outcome> {
    let fam = parse_family(family)?;
    let bx = search_box.as_deref().map(LatticeBox::parse).transpose()?;
    let r = bound_report(&fam, bx.as_ref(), limits)?;
    let show = |b: &Option<rcx_core::sepindex::CertifiedBound>| match b {
        Some(b) if b.certified => b.value.to_string(),
        Some(b) => format!("{} (uncertified)", b.value),
        None => "none".into(),
    };
    let summary = format!("{fam}: lower bound {}, upper bound {}", show(&r.lower_bound), show(&r.upper_bound));
    let fields = serde_json::to_value(&r).expect("serializable");
    let mut outcome = Outcome::ok(summary, fields);
    outcome.document = Some((output, String::new()));
    Ok(outcome)
}

fn report_value(command: &str, status: &str, fields: Value) -> Value {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": command, "status": status });
    if let (Value::Object(map), Value::Object(extra)) = (&mut v, fields) {
        map.extend(extra);
    }
    v
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gen { .. } => "gen",
        Command::Hiding(HidingCommand::Build { .. }) => "hiding build",
        Command::Hiding(HidingCommand::Verify { .. }) => "hiding verify",
        Command::Hiding(HidingCommand::Max { .. }) => "hiding max",
        Command::Relax(RelaxCommand::Build { .. }) => "relax build",
        Command::Relax(RelaxCommand::Verify { .. }) => "relax verify",
        Command::Relax(RelaxCommand::Irredundant { .. }) => "relax irredundant",
        Command::Index { .. } => "index",
        Command::Rationalize { .. } => "rationalize",
        Command::Report { .. } => "report",
    }
}

fn dispatch(command: Command, limits: &Limits) -> CliResult<Outcome> {
    match command {
        Command::Gen { family, output } => cmd_gen(&family, output, limits),
        Command::Hiding(c) => cmd_hiding(c, limits),
        Command::Relax(c) => cmd_relax(c, limits),
        Command::Index { x, limit } => cmd_index(&x, limit, limits),
        Command::Rationalize { x } => cmd_rationalize(&x, limits),
        Command::Report { family, search_box, output } => cmd_report(&family, search_box, output, limits),
    }
}

fn finish(command: &str, report: Option<PathBuf>, outcome: Outcome) -> CliResult<CommandResult> {
    let value = report_value(command, outcome.status, outcome.fields);
    let mut stdout = None;
    if let Some((path, text)) = outcome.document {
        let text = if command == "report" { to_pretty(&value) } else { text };
        match path {
            Some(p) => write_file(&p, &text)?,
            None => stdout = Some(text),
        }
    }
    if let Some(path) = &report {
        write_file(path, &to_pretty(&value))?;
    }
    Ok(CommandResult { exit_code: outcome.exit_code, report_path: report, summary: outcome.summary, stdout })
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            let code = if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) { 0 } else { 2 };
            let (summary, stdout) = if code == 0 { (String::new(), Some(text)) } else { (text.trim_end().to_string(), None) };
            return CommandResult { exit_code: code, report_path: None, summary, stdout };
        }
    };
    let limits = Limits::default().with_max_lattice(cli.max_lattice).with_max_subsets(cli.max_subsets);
    let name = command_name(&cli.command);
    let report = cli.report.clone();
    let result = dispatch(cli.command, &limits).and_then(|o| finish(name, report.clone(), o));
    match result {
        Ok(r) => r,
        Err(e) => {
            let summary = format!("error: {e}");
            let mut report_path = None;
            if let Some(path) = report {
                let value = report_value(name, "error", json!({ "error": e.to_string() }));
                if fs::write(&path, to_pretty(&value)).is_ok() {
                    report_path = Some(path);
                }
            }
            CommandResult { exit_code: 2, report_path, summary, stdout: None }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_parsing() {
        let args = |name: &str, params: Vec<usize>| FamilyArgs { name: name.into(), params, t: None, root: None };
        assert_eq!(parse_family(&args("diff", vec![2, 3])).unwrap(), Family::Basic(BasicFamily::Diff { m: 2, n: 3 }));
        assert!(matches!(parse_family(&args("diff", vec![2])), Err(CliError::Usage(_))));
        assert!(matches!(parse_family(&args("stsp", vec![])), Err(CliError::Usage(_))));
        assert!(matches!(parse_family(&args("tsp", vec![4])), Err(CliError::Core(rcx_core::Error::UnknownFamily(_)))));
        let rooted = FamilyArgs { name: "arb".into(), params: vec![4], t: None, root: Some(2) };
        assert_eq!(parse_family(&rooted).unwrap(), Family::Graph { kind: GraphFamily::Arb { root: Some(1) }, n: 4 });
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["rcx", "frobnicate"]).exit_code, 2);
        assert_eq!(run(["rcx", "gen"]).exit_code, 2);
        assert_eq!(run(["rcx", "--help"]).exit_code, 0);
    }

    #[test]
    fn report_fields_are_merged_after_schema_fields() {
        let v = report_value("gen", "ok", json!({ "count": 3 }));
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["command"], "gen");
        assert_eq!(v["count"], 3);
    }
}

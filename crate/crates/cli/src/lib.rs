//! Argument handling, orchestration and report rendering for the `coxcoh` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use coxcoh::cochain::{build_coxeter_complex, cohomology, simplicial_reduced_complex};
use coxcoh::configspace;
use coxcoh::coxeter::{all_independent_sets, parse_graph, CoxeterGraph};
use coxcoh::exactfield::{FieldSpec, RankMode};
use coxcoh::report::{all_passed, Check};
use coxcoh::representations::{
    direct_sum, natural, reflection, regular, sign, sign_twist, specht, tensor_power, trivial, zero, Representation,
};
use coxcoh::theorems::{self, TableComparison, Verdict};
use coxcoh::tor;
use coxcoh::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "coxcoh", version, about = "Coxeter cochain complexes and their cohomology, computed exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// How ranks are computed.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for modular prime selection.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cohomology of one group with coefficients in a representation.
    Cohomology {
        graph: String,
        /// reflection, trivial[:d], sign, regular, natural, tensor:M, specht:3,1, zero;
        /// `a+b` for direct sums and `sgn*a` for sign twists.
        #[arg(long, default_value = "reflection")]
        rep: String,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Relative cube complex of the three-equal arrangement against Q[S_n].
    Configspace {
        #[arg(long)]
        n: usize,
    },
    /// Tor of Q[x_1..x_m]/m^3 against tensor-power Coxeter cohomology.
    Tor {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        i_max: usize,
    },
    /// Independence complex of a Coxeter graph.
    Indcomplex { graph: String },
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    Trivial {
        #[arg(long, default_value_t = 9)]
        n_max: usize,
    },
    Reflection {
        /// Comma-separated graph specs; the default covers all finite families.
        #[arg(long)]
        groups: Option<String>,
    },
    Kunneth,
    Les,
    Split,
    Geometric {
        #[arg(long)]
        groups: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Modular,
    Auto,
}

impl From<ModeArg> for RankMode {
    fn from(m: ModeArg) -> RankMode {
        match m {
            ModeArg::Exact => RankMode::Exact,
            ModeArg::Modular => RankMode::Modular,
            ModeArg::Auto => RankMode::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    #[serde(rename = "M")]
    pub m: u64,
    pub minpoly: String,
}

impl FieldInfo {
    pub fn of(f: &FieldSpec) -> FieldInfo {
        FieldInfo { m: f.m(), minpoly: f.minpoly().display("y") }
    }
}

/// Everything a run reports; serialized as the JSON schema of the tool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub group: Option<String>,
    pub field: Option<FieldInfo>,
    pub space_dims: Vec<usize>,
    pub h_dims: Vec<usize>,
    pub euler: Option<i64>,
    pub mode: String,
    pub checks: Vec<Check>,
    /// `"pass"` when every check passed.
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl Report {
    fn new(command: impl Into<String>, mode: RankMode) -> Report {
        Report {
            command: command.into(),
            group: None,
            field: None,
            space_dims: Vec::new(),
            h_dims: Vec::new(),
            euler: None,
            mode: mode.to_string(),
            checks: Vec::new(),
            verdict: String::new(),
            details: Value::Null,
        }
    }

    fn finish(mut self) -> Report {
        self.verdict = if all_passed(&self.checks) { "pass" } else { "fail" }.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

/// Result of one invocation: exit status plus the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command. Writes
/// `--out` itself; everything else is left to the caller.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => return error_outcome(&e),
    };
    let text = emit(&report, cli.format);
    let code = if report.passed() { EXIT_PASS } else { EXIT_CHECK_FAILED };
    let stderr = if report.passed() { String::new() } else { failure_diff(&report) };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr },
            Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("cannot write {}: {e}\n", path.display()) },
        },
        None => Outcome { code, stdout: text, stderr },
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let code = match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Internal(_) | Error::SolveFailed(_) => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    };
    let mut stderr = format!("error: {e}\n");
    if code == EXIT_USAGE {
        stderr.push_str("see `coxcoh --help` for usage\n");
    }
    Outcome { code, stdout: String::new(), stderr }
}

fn failure_diff(r: &Report) -> String {
    let mut s = String::new();
    for c in r.checks.iter().filter(|c| !c.passed()) {
        let _ = writeln!(s, "FAILED {}: {}", c.name, c.detail);
    }
    s
}

/// Renders a report; JSON output is byte-stable for equal reports.
pub fn emit(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => table(r),
    }
}

fn table(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "command     {}", r.command);
    if let Some(g) = &r.group {
        let _ = writeln!(s, "group       {g}");
    }
    match &r.field {
        Some(f) if f.m == 1 => {
            let _ = writeln!(s, "field       Q");
        }
        Some(f) => {
            let _ = writeln!(s, "field       Q(2cos(pi/{})), minpoly {}", f.m, f.minpoly);
        }
        None => {}
    }
    if !r.space_dims.is_empty() {
        let _ = writeln!(s, "space dims  {:?}", r.space_dims);
    }
    if !r.h_dims.is_empty() {
        let _ = writeln!(s, "H dims      {:?}", r.h_dims);
    }
    if let Some(e) = r.euler {
        let _ = writeln!(s, "euler       {e}");
    }
    let _ = writeln!(s, "mode        {}", r.mode);
    if !r.details.is_null() {
        let _ = writeln!(s, "details     {}", r.details);
    }
    if !r.checks.is_empty() {
        let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let _ = writeln!(s, "checks");
        for c in &r.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(s, "  {status}  {:width$}  {}", c.name, c.detail);
        }
    }
    let _ = writeln!(s, "verdict     {}", r.verdict);
    s
}

/// Runs the parsed command and builds its report.
pub fn execute(cli: &Cli) -> coxcoh::Result<Report> {
    let mode: RankMode = cli.mode.into();
    let seed = cli.seed;
    let report = match &cli.command {
        Command::Cohomology { graph, rep } => cmd_cohomology(graph, rep, mode, seed)?,
        Command::Verify { suite } => cmd_verify(suite)?,
        Command::Configspace { n } => cmd_configspace(*n, mode, seed)?,
        Command::Tor { m, i_max } => cmd_tor(*m, *i_max, mode, seed)?,
        Command::Indcomplex { graph } => cmd_indcomplex(graph, mode, seed)?,
    };
    Ok(report.finish())
}

/// Parses a representation kind such as `reflection`, `trivial:2`,
/// `sgn*specht:2,1` or `reflection+trivial` for the graph `g`.
pub fn parse_rep(g: &CoxeterGraph, spec: &str) -> coxcoh::Result<Representation> {
    let bad = |reason: String| Error::InvalidRepresentation(format!("{spec:?}: {reason}"));
    let mut acc: Option<Representation> = None;
    for term in spec.split('+') {
        let (twist, base) = match term.strip_prefix("sgn*") {
            Some(rest) => (true, rest),
            None => (false, term),
        };
        let (kind, arg) = match base.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (base, None),
        };
        let int_arg = |default: Option<usize>| -> coxcoh::Result<usize> {
            match (arg, default) {
                (Some(a), _) => a.parse().map_err(|_| bad(format!("expected an integer after {kind}:"))),
                (None, Some(d)) => Ok(d),
                (None, None) => Err(bad(format!("{kind} needs an argument"))),
            }
        };
        let rep = match kind {
            "reflection" => reflection(g)?,
            "trivial" => trivial(g, int_arg(Some(1))?),
            "sign" => sign(g),
            "regular" => regular(g)?,
            "natural" => natural(g)?,
            "tensor" => tensor_power(g, int_arg(None)?)?,
            "zero" => zero(g),
            "specht" => {
                let lambda: Vec<usize> = arg
                    .ok_or_else(|| bad("specht needs a partition, e.g. specht:2,1".into()))?
                    .split(',')
                    .map(|p| p.parse().map_err(|_| bad(format!("bad part {p:?}"))))
                    .collect::<coxcoh::Result<_>>()?;
                specht(g, &lambda)?
            }
            other => return Err(bad(format!("unknown kind {other:?}"))),
        };
        let rep = if twist { sign_twist(&rep) } else { rep };
        acc = Some(match acc {
            None => rep,
            Some(prev) => direct_sum(&prev, &rep)?,
        });
    }
    acc.ok_or_else(|| bad("empty".into()))
}

fn split_groups(list: &str) -> coxcoh::Result<Vec<CoxeterGraph>> {
    if list.starts_with("custom;") {
        return Ok(vec![parse_graph(list)?]);
    }
    list.split(',').map(parse_graph).collect()
}

fn cmd_cohomology(graph: &str, rep: &str, mode: RankMode, seed: u64) -> coxcoh::Result<Report> {
    let g = parse_graph(graph)?;
    let r = parse_rep(&g, rep)?;
    let cox = build_coxeter_complex(&r)?;
    let h = cohomology(&cox, mode, seed)?;
    let mut out = Report::new("cohomology", mode);
    out.group = Some(g.name().to_string());
    out.field = Some(FieldInfo::of(r.field()));
    out.space_dims = h.space_dims.clone();
    out.h_dims = h.dims.clone();
    out.euler = Some(h.euler);
    let blocks: Vec<Value> = h
        .block_structure
        .iter()
        .enumerate()
        .map(|(k, bs)| json!({"degree": k, "blocks": bs.iter().map(|(t, d)| json!({"T": t, "dim": d})).collect::<Vec<_>>()}))
        .collect();
    out.details = json!({"representation": r.label(), "warnings": r.warnings(), "block_structure": blocks});
    out.checks.push(Check::new("d squared is zero", cox.complex.check_d_squared().is_ok(), json!({})));
    let space_euler = coxcoh::cochain::alternating_sum(0, &h.space_dims);
    out.checks.push(Check::new(
        "euler characteristic of spaces equals that of cohomology",
        space_euler == h.euler,
        json!({"spaces": space_euler, "cohomology": h.euler}),
    ));
    if h.probabilistic {
        out.checks.push(Check::new("modular ranks agree across primes", h.agreed, json!({})));
    }
    if rep == "reflection" && !g.has_infinite_label() {
        if let Ok(exp) = theorems::reflection_expected(&g) {
            out.checks.push(table_check(&g, &exp, &h.dims));
        }
    }
    Ok(out)
}

fn table_check(g: &CoxeterGraph, expected: &[(usize, usize)], computed: &[usize]) -> Check {
    let len = expected.iter().map(|(k, _)| k + 1).max().unwrap_or(0).max(computed.len());
    let mut exp = vec![0; len];
    for &(k, d) in expected {
        exp[k] = d;
    }
    let verdict = theorems::compare_dims(&exp, computed);
    Check::new(format!("{} against the tabulated case", g.name()), verdict.is_match(), json!(verdict))
}

fn table_rows(rows: Vec<TableComparison>, exact_only: bool) -> Vec<Check> {
    rows.into_iter()
        .map(|r| {
            let verdict_ok = if exact_only { r.verdict == Verdict::ExactMatch } else { r.verdict.is_match() };
            let ok = verdict_ok && r.euler_consistent && r.nonzero_multisets_agree();
            Check::new(
                r.group.clone(),
                ok,
                json!({
                    "expected": r.expected,
                    "computed": r.computed,
                    "space_dims": r.space_dims,
                    "euler": r.euler,
                    "euler_consistent": r.euler_consistent,
                    "comparison": r.verdict,
                }),
            )
        })
        .collect()
}

/// The suites always use exact ranks.
fn cmd_verify(suite: &Suite) -> coxcoh::Result<Report> {
    let (name, checks) = match suite {
        Suite::Trivial { n_max } => ("verify trivial", table_rows(theorems::verify_trivial_table(*n_max)?, true)),
        Suite::Reflection { groups } => {
            let gs = match groups {
                Some(list) => split_groups(list)?,
                None => theorems::default_reflection_groups(),
            };
            ("verify reflection", table_rows(theorems::verify_reflection_table(&gs)?, false))
        }
        Suite::Kunneth => {
            let cases = theorems::default_kunneth_cases()?;
            let checks = cases.iter().map(|(a, b)| theorems::kunneth_check(a, b)).collect::<coxcoh::Result<_>>()?;
            ("verify kunneth", checks)
        }
        Suite::Split => {
            let cases = theorems::default_split_cases()?;
            let checks =
                cases.iter().map(|(a, b)| theorems::split_additivity_check(a, b)).collect::<coxcoh::Result<_>>()?;
            ("verify split", checks)
        }
        Suite::Les => {
            let mut checks = Vec::new();
            for (rep, s) in theorems::default_les_cases()? {
                let res = theorems::les_check(&rep, s)?;
                for c in res.checks {
                    checks.push(Check { name: format!("{} s={}: {}", res.group, s + 1, c.name), ..c });
                }
            }
            ("verify les", checks)
        }
        Suite::Geometric { groups } => {
            let gs = match groups {
                Some(list) => split_groups(list)?,
                None => theorems::default_reflection_groups(),
            };
            let checks = gs.iter().map(|g| theorems::geometric_check(g, 1)).collect::<coxcoh::Result<_>>()?;
            ("verify geometric", checks)
        }
    };
    let mut out = Report::new(name, RankMode::Exact);
    out.checks = checks;
    Ok(out)
}

fn cmd_configspace(n: usize, mode: RankMode, seed: u64) -> coxcoh::Result<Report> {
    let mut out;
    if n == 7 {
        out = Report::new("configspace", RankMode::Exact);
        out.group = Some("A6".into());
        out.space_dims = (0..=n).map(|k| configspace::enumerate_cells(n, k).len()).collect();
        let ok = configspace::boundary_squared_zero_sparse(n)?;
        out.checks.push(Check::new("boundary squares to zero", ok, json!({"n": n, "method": "symbolic"})));
        return Ok(out);
    }
    let mode = if mode == RankMode::Auto && n >= 6 { RankMode::Modular } else { mode };
    let r = configspace::compare_homology(n, mode, seed)?;
    out = Report::new("configspace", mode);
    out.group = Some(CoxeterGraph::type_a(n - 1).name().to_string());
    out.field = Some(FieldInfo::of(&FieldSpec::rationals()));
    out.space_dims = r.cell_dims.clone();
    out.h_dims = r.relative_h.clone();
    out.euler = Some(coxcoh::cochain::alternating_sum(0, &r.relative_h));
    out.details = json!({
        "coxeter_space_dims": r.coxeter_space_dims,
        "coxeter_h_dims": r.coxeter_h,
        "complement_h_dims": r.complement_h,
        "probabilistic": r.probabilistic,
    });
    out.checks = r.checks;
    Ok(out)
}

fn cmd_tor(m: usize, i_max: usize, mode: RankMode, seed: u64) -> coxcoh::Result<Report> {
    let r = tor::compare_tor(m, i_max, mode, seed)?;
    let mut out = Report::new("tor", mode);
    out.field = Some(FieldInfo::of(&FieldSpec::rationals()));
    out.space_dims = r.space_dims.clone();
    out.h_dims = r.tor_dims.clone();
    out.details = json!({
        "m": m,
        "first_degree": 1,
        "coxeter_dims": r.coxeter_dims,
        "probabilistic": r.probabilistic,
    });
    out.checks = r.checks;
    Ok(out)
}

fn cmd_indcomplex(graph: &str, mode: RankMode, seed: u64) -> coxcoh::Result<Report> {
    let g = parse_graph(graph)?;
    let sets = all_independent_sets(&g);
    let simp = simplicial_reduced_complex(&g, 1)?;
    let h = simp.homology(mode, seed)?;
    let mut out = Report::new("indcomplex", mode);
    out.group = Some(g.name().to_string());
    out.space_dims = sets.iter().map(Vec::len).collect();
    out.h_dims = h.dims.clone();
    out.euler = Some(h.euler());
    out.details = json!({
        "degree_convention": "degree k holds k-element independent sets; H at k is reduced H^(k-1)",
        "facets": maximal_sets(&sets).iter().map(|t| t.iter().map(|s| s + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    out.checks.push(theorems::geometric_check(&g, 1)?);
    Ok(out)
}

fn maximal_sets(sets: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let all: Vec<&Vec<usize>> = sets.iter().flatten().collect();
    all.iter()
        .filter(|t| !all.iter().any(|u| u.len() > t.len() && t.iter().all(|x| u.contains(x))))
        .map(|t| (*t).clone())
        .collect()
}

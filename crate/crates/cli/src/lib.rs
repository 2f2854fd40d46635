//! Command implementations for the `omega` binary.
//!
//! Every command renders into a `String` so the binary, the tests and any
//! other caller get byte-identical output.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use omega_core::bounds::{
    self, bound_report, render_decimal, render_integer_decimal, verify_propositions, BoundReport,
    PropositionRow,
};
use omega_core::enumerate::{count_latin_squares, enumerate_vertices};
use omega_core::error::{FormatError, TensorError};
use omega_core::format::{parse_tensor, tensor_to_json, vertex_set_to_json};
use omega_core::{build_omega_h, random_tensor, StochasticTensor};

pub const MAX_BOUNDS_N: usize = 30;
pub const MAX_LATIN_N: usize = 5;
/// Largest `n` that `bounds --with-enumeration` will enumerate.
pub const MAX_ENUMERATION_N: usize = 3;

#[derive(Parser, Debug)]
#[command(name = "omega", version, about = "Exact toolkit for the stochastic tensor polytope")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Backtrack,
    Permanent,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Every vertex-count bound for n, or one table row per n with --n-max.
    Bounds {
        #[arg(long)]
        n: usize,
        /// Report every n from --n to --n-max.
        #[arg(long)]
        n_max: Option<usize>,
        /// Also enumerate the vertices (n <= 3 only).
        #[arg(long)]
        with_enumeration: bool,
    },
    /// Enumerate all vertices of the polytope.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Write the vertex-set document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a tensor and test whether it is a vertex.
    Check {
        /// Tensor document to read.
        file: Option<PathBuf>,
        /// Expected dimension (required with --seed).
        #[arg(long)]
        n: Option<usize>,
        /// Use a seeded random tensor instead of a file.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write a tensor as a convex combination of vertices.
    Decompose {
        file: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// With --seed, also write the generated tensor here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count Latin squares of order n.
    Latin {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Check the bound comparisons for n = 2..=n-max.
    Verify {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
}

/// Failure with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Validation or verification failed (exit 1). Carries the rendered output.
    Failed(String),
    /// Bad arguments or unparsable input (exit 2).
    Usage(String),
    /// I/O failure (exit 1).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) | CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Failed(m) | CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

/// Rendered stdout plus any warnings meant for stderr.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
}

type CmdResult = Result<Output, CliError>;

pub fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Bounds {
            n,
            n_max,
            with_enumeration,
        } => cmd_bounds(*n, *n_max, *with_enumeration, cli.format),
        Command::Enumerate { n, out } => cmd_enumerate(*n, out.as_ref(), cli.format),
        Command::Check { file, n, seed } => cmd_check(file.as_ref(), *n, *seed, cli.format),
        Command::Decompose { file, n, seed, out } => {
            cmd_decompose(file.as_ref(), *n, *seed, out.as_ref(), cli.format)
        }
        Command::Latin { n, method } => cmd_latin(*n, *method, cli.format),
        Command::Verify { n_max } => cmd_verify(*n_max, cli.format),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

/// Exact integer when short, otherwise `factored ≈ approx`.
fn show_integer(v: &BigUint, factored: Option<String>) -> String {
    let exact = v.to_string();
    if exact.len() <= 7 {
        return exact;
    }
    match factored {
        Some(f) => format!("{f} ≈ {}", render_integer_decimal(v)),
        None => format!("≈ {}", render_integer_decimal(v)),
    }
}

fn show_rational(v: &BigRational, factored: Option<String>) -> String {
    if v.is_integer() {
        return show_integer(&v.to_integer().to_biguint().expect("nonnegative"), factored);
    }
    let exact = v.to_string();
    match factored {
        Some(f) if exact.len() > 12 => format!("{f} ≈ {}", render_decimal(v)),
        _ if exact.len() > 12 => format!("≈ {}", render_decimal(v)),
        _ => format!("{exact} ≈ {}", render_decimal(v)),
    }
}

fn tick(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "n/a",
    }
}

pub fn cmd_bounds(n: usize, n_max: Option<usize>, with_enumeration: bool, format: Format) -> CmdResult {
    let last = n_max.unwrap_or(n);
    if !(2..=MAX_BOUNDS_N).contains(&n) || !(n..=MAX_BOUNDS_N).contains(&last) {
        return Err(usage(format!(
            "bounds needs 2 <= n <= n-max <= {MAX_BOUNDS_N}, got n = {n}, n-max = {last}"
        )));
    }
    let mut out = Output::default();
    let mut reports = Vec::new();
    for k in n..=last {
        let mut r = bound_report(k).map_err(|e| usage(e.to_string()))?;
        if with_enumeration {
            if k <= MAX_ENUMERATION_N {
                let h = build_omega_h(k).expect("k >= 2");
                r.enumerated = Some(enumerate_vertices(&h).map_err(|e| CliError::Failed(e.to_string()))?.len());
            } else {
                out.warnings.push(format!(
                    "not enumerating n = {k}: the vertex count is unknown and enumeration is only run for n <= {MAX_ENUMERATION_N}"
                ));
            }
        }
        reports.push(r);
    }
    out.stdout = match format {
        Format::Json if n_max.is_none() => to_json(&reports[0].to_document()),
        Format::Json => to_json(&reports.iter().map(BoundReport::to_document).collect::<Vec<_>>()),
        Format::Csv => bounds_csv(&reports),
        Format::Table if n_max.is_none() => bounds_detail(&reports[0]),
        Format::Table => bounds_tables(&reports),
    };
    Ok(out)
}

fn f0_cell(r: &BoundReport) -> String {
    r.enumerated.map_or_else(|| "?".to_string(), |v| v.to_string())
}

fn bounds_detail(r: &BoundReport) -> String {
    let mut s = String::new();
    let d = bounds::dimension_of(r.n);
    let f = bounds::facets_of(r.n);
    let _ = writeln!(s, "n = {}  (dimension {d}, facets {f})", r.n);
    let lines: Vec<(&str, String)> = vec![
        ("(n!)^(2n)/n^(n^2)", show_rational(&r.lower_latin_ratio, None)),
        (
            "Latin squares L_n",
            r.latin_count.as_ref().map_or("not computed".into(), |c| c.to_string()),
        ),
        ("lower bound theorem l0", r.lbt_lower.map_or("n/a".into(), |v| v.to_string())),
        (
            "Barnette simplicial max",
            r.barnette_simplicial_max.as_ref().map_or("n/a".into(), |v| v.to_string()),
        ),
        ("vertices f0", f0_cell(r)),
        ("new upper (UBT)", show_integer(&r.new_upper, Some(r.new_upper_factored()))),
        ("old upper", show_rational(&r.old_upper, Some(r.old_upper_factored()))),
        (
            "n^(3n^2)",
            show_integer(&r.linial_luria_upper, Some(format!("{}^{}", r.n, 3 * r.n * r.n))),
        ),
    ];
    for (k, v) in lines {
        let _ = writeln!(s, "  {k:<26} {v}");
    }
    let v = &r.verdicts;
    let _ = writeln!(s, "verdicts:");
    let checks = [
        ("new upper < old upper", Some(v.new_below_old)),
        ("new upper < n^(3n^2)", Some(v.new_below_linial_luria)),
        ("l0 matches closed form", v.lbt_matches_closed_form),
        ("l0 vs ratio as expected", v.lbt_vs_latin_ratio),
        ("l0 <= new upper", v.lbt_below_new_upper),
        ("ratio <= L_n", r.latin_ratio_below_count()),
    ];
    for (k, c) in checks {
        let _ = writeln!(s, "  {k:<26} {}", tick(c));
    }
    s
}

fn bounds_tables(reports: &[BoundReport]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "Lower and upper bounds (old)");
    let _ = writeln!(s, "{:<6} {:<22} {:<6} {}", "case", "lower", "f0", "upper");
    for r in reports {
        let _ = writeln!(
            s,
            "{:<6} {:<22} {:<6} {}",
            format!("n={}", r.n),
            show_rational(&r.lower_latin_ratio, None),
            f0_cell(r),
            show_rational(&r.old_upper, Some(r.old_upper_factored()))
        );
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "Comparison of upper bounds");
    let _ = writeln!(s, "{:<6} {:<6} {:<36} {}", "case", "f0", "new upper", "old upper");
    for r in reports {
        let _ = writeln!(
            s,
            "{:<6} {:<6} {:<36} {}",
            format!("n={}", r.n),
            f0_cell(r),
            show_integer(&r.new_upper, Some(r.new_upper_factored())),
            show_rational(&r.old_upper, Some(r.old_upper_factored()))
        );
    }
    s
}

fn bounds_csv(reports: &[BoundReport]) -> String {
    let opt = |v: Option<String>| v.unwrap_or_default();
    csv_rows(
        &[
            "n",
            "lower_latin_ratio",
            "lower_latin_ratio_approx",
            "latin_count",
            "lbt_lower",
            "barnette_simplicial_max",
            "f0",
            "new_upper",
            "new_upper_factored",
            "new_upper_approx",
            "old_upper",
            "old_upper_factored",
            "old_upper_approx",
            "linial_luria_upper_approx",
            "all_verdicts_hold",
        ],
        reports
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.lower_latin_ratio.to_string(),
                    render_decimal(&r.lower_latin_ratio),
                    opt(r.latin_count.as_ref().map(|v| v.to_string())),
                    opt(r.lbt_lower.map(|v| v.to_string())),
                    opt(r.barnette_simplicial_max.as_ref().map(|v| v.to_string())),
                    f0_cell(r),
                    r.new_upper.to_string(),
                    r.new_upper_factored(),
                    render_integer_decimal(&r.new_upper),
                    r.old_upper.to_string(),
                    r.old_upper_factored(),
                    render_decimal(&r.old_upper),
                    render_integer_decimal(&r.linial_luria_upper),
                    r.verdicts.all_hold().to_string(),
                ]
            })
            .collect(),
    )
}

#[derive(Serialize)]
struct EnumerationSummary {
    n: usize,
    total: usize,
    integral: usize,
    nonintegral: usize,
}

pub fn cmd_enumerate(n: usize, out_path: Option<&PathBuf>, format: Format) -> CmdResult {
    if n == 0 {
        return Err(usage("enumerate needs n >= 1"));
    }
    let mut out = Output::default();
    if n >= 4 {
        out.warnings.push(format!(
            "enumerating n = {n}: runtime and memory are unbounded at this size"
        ));
    }
    let h = build_omega_h(n).expect("n >= 1");
    let vs = enumerate_vertices(&h).map_err(|e| CliError::Failed(e.to_string()))?;
    let doc = vertex_set_to_json(&vs).expect("tensor polytope");
    if let Some(path) = out_path {
        std::fs::write(path, format!("{doc}\n"))
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    let summary = EnumerationSummary {
        n,
        total: vs.len(),
        integral: vs.integral_count,
        nonintegral: vs.nonintegral_count,
    };
    out.stdout = match format {
        Format::Table => format!("{} / {} / {}\n", summary.total, summary.integral, summary.nonintegral),
        Format::Json if out_path.is_none() => format!("{doc}\n"),
        Format::Json => to_json(&summary),
        Format::Csv => csv_rows(
            &["n", "total", "integral", "nonintegral"],
            vec![vec![
                n.to_string(),
                summary.total.to_string(),
                summary.integral.to_string(),
                summary.nonintegral.to_string(),
            ]],
        ),
    };
    Ok(out)
}

/// Either a parsed file or a seeded random tensor. A tensor that parses but
/// violates the stochastic conditions comes back as `Err(Ok(violation))`.
fn load_tensor(
    file: Option<&PathBuf>,
    n: Option<usize>,
    seed: Option<u64>,
) -> Result<Result<StochasticTensor, String>, CliError> {
    let t = match (file, seed) {
        (Some(_), Some(_)) => return Err(usage("give either a tensor file or --seed, not both")),
        (None, None) => return Err(usage("a tensor file or --seed is required")),
        (None, Some(seed)) => {
            let n = n.ok_or_else(|| usage("--seed needs --n"))?;
            random_tensor(n, seed).map_err(|e| usage(e.to_string()))?
        }
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            match parse_tensor(&text) {
                Ok(t) => t,
                Err(FormatError::Tensor(TensorError::Invalid(v))) => return Ok(Err(v.to_string())),
                Err(e) => return Err(usage(format!("{}: {e}", path.display()))),
            }
        }
    };
    if let Some(n) = n {
        if t.n() != n {
            return Err(usage(format!("tensor has n = {}, but --n {n} was given", t.n())));
        }
    }
    Ok(Ok(t))
}

#[derive(Serialize)]
struct CheckReport {
    valid: bool,
    violation: Option<String>,
    vertex: Option<bool>,
    active_rank: Option<usize>,
    ambient_dim: Option<usize>,
}

pub fn cmd_check(file: Option<&PathBuf>, n: Option<usize>, seed: Option<u64>, format: Format) -> CmdResult {
    let report = match load_tensor(file, n, seed)? {
        Err(violation) => CheckReport {
            valid: false,
            violation: Some(violation),
            vertex: None,
            active_rank: None,
            ambient_dim: None,
        },
        Ok(t) => {
            let h = build_omega_h(t.n()).expect("n >= 1");
            let cert = h.is_vertex(&t).map_err(|e| CliError::Failed(e.to_string()))?;
            CheckReport {
                valid: true,
                violation: None,
                vertex: Some(cert.is_vertex()),
                active_rank: Some(cert.active_rank),
                ambient_dim: Some(cert.ambient_dim),
            }
        }
    };
    let text = match format {
        Format::Json => to_json(&report),
        Format::Csv => csv_rows(
            &["valid", "vertex", "active_rank", "violation"],
            vec![vec![
                report.valid.to_string(),
                report.vertex.map(|v| v.to_string()).unwrap_or_default(),
                report.active_rank.map(|v| v.to_string()).unwrap_or_default(),
                report.violation.clone().unwrap_or_default(),
            ]],
        ),
        Format::Table => match (&report.violation, report.vertex, report.active_rank) {
            (Some(v), _, _) => format!("invalid: {v}\n"),
            (None, Some(true), Some(rank)) => format!("valid, vertex, active rank {rank}\n"),
            (None, _, Some(rank)) => format!("valid, not a vertex, active rank {rank}\n"),
            _ => unreachable!("valid reports carry a certificate"),
        },
    };
    if report.valid {
        Ok(Output {
            stdout: text,
            warnings: vec![],
        })
    } else {
        Err(CliError::Failed(text))
    }
}

#[derive(Serialize)]
struct DecompositionTerm {
    weight: String,
    vertex: omega_core::format::TensorDocument,
    integral: bool,
}

#[derive(Serialize)]
struct DecompositionReport {
    n: usize,
    terms: Vec<DecompositionTerm>,
    term_bound: usize,
    reconstruction_exact: bool,
}

pub fn cmd_decompose(
    file: Option<&PathBuf>,
    n: Option<usize>,
    seed: Option<u64>,
    out_path: Option<&PathBuf>,
    format: Format,
) -> CmdResult {
    let t = match load_tensor(file, n, seed)? {
        Ok(t) => t,
        Err(violation) => return Err(CliError::Failed(format!("invalid: {violation}\n"))),
    };
    if let Some(path) = out_path {
        if seed.is_none() {
            return Err(usage("--out is only meaningful with --seed"));
        }
        std::fs::write(path, format!("{}\n", tensor_to_json(&t)))
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    let n = t.n();
    let h = build_omega_h(n).expect("n >= 1");
    let terms = h
        .caratheodory_decompose(&t)
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let term_bound = bounds::dimension_of(n) + 1;

    let weight_sum: BigRational = terms.iter().map(|(w, _)| w.clone()).sum();
    let refs: Vec<(BigRational, &StochasticTensor)> = terms.iter().map(|(w, v)| (w.clone(), v)).collect();
    let all_vertices = terms
        .iter()
        .all(|(_, v)| h.is_vertex(v).map(|c| c.is_vertex()).unwrap_or(false));
    let exact = weight_sum.is_one()
        && terms.iter().all(|(w, _)| w > &BigRational::zero())
        && all_vertices
        && StochasticTensor::convex_combination(&refs).ok().as_ref() == Some(&t);
    let ok = exact && terms.len() <= term_bound;

    let report = DecompositionReport {
        n,
        terms: terms
            .iter()
            .map(|(w, v)| DecompositionTerm {
                weight: w.to_string(),
                vertex: v.into(),
                integral: v.is_integral(),
            })
            .collect(),
        term_bound,
        reconstruction_exact: exact,
    };
    let text = match format {
        Format::Json => to_json(&report),
        Format::Csv => csv_rows(
            &["term", "weight", "integral", "vertex"],
            terms
                .iter()
                .enumerate()
                .map(|(i, (w, v))| {
                    vec![
                        i.to_string(),
                        w.to_string(),
                        v.is_integral().to_string(),
                        flat_entries(v),
                    ]
                })
                .collect(),
        ),
        Format::Table => {
            let mut s = String::new();
            for (i, (w, v)) in terms.iter().enumerate() {
                match v.to_latin() {
                    Some(l) => {
                        let rows: Vec<String> = l
                            .rows()
                            .iter()
                            .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(""))
                            .collect();
                        let _ = writeln!(s, "{i:>3}  {w:<12} latin {}", rows.join("/"));
                    }
                    None => {
                        let _ = writeln!(s, "{i:>3}  {w:<12} [{}]", flat_entries(v));
                    }
                }
            }
            let _ = writeln!(s, "terms: {} (at most {term_bound})", terms.len());
            let _ = writeln!(
                s,
                "reconstruction: {}",
                if exact { "exact" } else { "FAILED" }
            );
            s
        }
    };
    if ok {
        Ok(Output {
            stdout: text,
            warnings: vec![],
        })
    } else {
        Err(CliError::Failed(text))
    }
}

fn flat_entries(t: &StochasticTensor) -> String {
    t.entries()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct LatinReport {
    n: usize,
    backtrack: Option<String>,
    permanent: Option<String>,
    agreement: Option<bool>,
}

pub fn cmd_latin(n: usize, method: Method, format: Format) -> CmdResult {
    if !(1..=MAX_LATIN_N).contains(&n) {
        return Err(usage(format!("latin needs 1 <= n <= {MAX_LATIN_N}, got {n}")));
    }
    let backtrack = matches!(method, Method::Backtrack | Method::Both)
        .then(|| BigUint::from(count_latin_squares(n)));
    let permanent = match method {
        Method::Permanent | Method::Both => {
            Some(bounds::latin_count_shao_wei(n).map_err(|e| usage(e.to_string()))?)
        }
        Method::Backtrack => None,
    };
    let agreement = match (&backtrack, &permanent) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let report = LatinReport {
        n,
        backtrack: backtrack.as_ref().map(|v| v.to_string()),
        permanent: permanent.as_ref().map(|v| v.to_string()),
        agreement,
    };
    let text = match format {
        Format::Json => to_json(&report),
        Format::Csv => csv_rows(
            &["n", "backtrack", "permanent", "agreement"],
            vec![vec![
                n.to_string(),
                report.backtrack.clone().unwrap_or_default(),
                report.permanent.clone().unwrap_or_default(),
                report.agreement.map(|a| a.to_string()).unwrap_or_default(),
            ]],
        ),
        Format::Table => {
            let mut s = String::new();
            if let Some(v) = &report.backtrack {
                let _ = writeln!(s, "backtrack: L_{n} = {v}");
            }
            if let Some(v) = &report.permanent {
                let _ = writeln!(s, "permanent: L_{n} = {v}");
            }
            match agreement {
                Some(true) => s.push_str("agreement\n"),
                Some(false) => s.push_str("DISAGREEMENT\n"),
                None => {}
            }
            s
        }
    };
    if agreement == Some(false) {
        Err(CliError::Failed(text))
    } else {
        Ok(Output {
            stdout: text,
            warnings: vec![],
        })
    }
}

fn direction(o: Option<Ordering>) -> &'static str {
    match o {
        Some(Ordering::Greater) => ">",
        Some(Ordering::Less) => "<",
        Some(Ordering::Equal) => "=",
        None => "n/a",
    }
}

#[derive(Serialize)]
struct VerifyRow {
    n: usize,
    new_upper_approx: String,
    old_upper_approx: String,
    linial_luria_approx: String,
    lbt_lower: Option<usize>,
    lower_latin_ratio_approx: String,
    lbt_vs_ratio: String,
    verdicts: bounds::Verdicts,
    holds: bool,
}

impl From<&PropositionRow> for VerifyRow {
    fn from(r: &PropositionRow) -> Self {
        Self {
            n: r.n,
            new_upper_approx: render_integer_decimal(&r.new_upper),
            old_upper_approx: render_decimal(&r.old_upper),
            linial_luria_approx: render_integer_decimal(&r.linial_luria_upper),
            lbt_lower: r.lbt_lower,
            lower_latin_ratio_approx: render_decimal(&r.lower_latin_ratio),
            lbt_vs_ratio: direction(r.lbt_direction).to_string(),
            verdicts: r.verdicts.clone(),
            holds: r.verdicts.all_hold(),
        }
    }
}

pub fn cmd_verify(n_max: usize, format: Format) -> CmdResult {
    if !(2..=MAX_BOUNDS_N).contains(&n_max) {
        return Err(usage(format!("verify needs 2 <= n-max <= {MAX_BOUNDS_N}, got {n_max}")));
    }
    let rows = verify_propositions(2, n_max).map_err(|e| usage(e.to_string()))?;
    let all = rows.iter().all(|r| r.verdicts.all_hold());
    let table: Vec<VerifyRow> = rows.iter().map(VerifyRow::from).collect();
    let text = match format {
        Format::Json => to_json(&table),
        Format::Csv => csv_rows(
            &[
                "n",
                "new_upper",
                "old_upper",
                "n^(3n^2)",
                "new<old",
                "new<n^(3n^2)",
                "lbt_lower",
                "lbt_closed_form",
                "latin_ratio",
                "lbt_vs_ratio",
                "lbt_vs_ratio_as_expected",
                "lbt<=new",
                "holds",
            ],
            table
                .iter()
                .map(|r| {
                    let opt = |v: Option<bool>| v.map(|b| b.to_string()).unwrap_or_default();
                    vec![
                        r.n.to_string(),
                        r.new_upper_approx.clone(),
                        r.old_upper_approx.clone(),
                        r.linial_luria_approx.clone(),
                        r.verdicts.new_below_old.to_string(),
                        r.verdicts.new_below_linial_luria.to_string(),
                        r.lbt_lower.map(|v| v.to_string()).unwrap_or_default(),
                        opt(r.verdicts.lbt_matches_closed_form),
                        r.lower_latin_ratio_approx.clone(),
                        r.lbt_vs_ratio.clone(),
                        opt(r.verdicts.lbt_vs_latin_ratio),
                        opt(r.verdicts.lbt_below_new_upper),
                        r.holds.to_string(),
                    ]
                })
                .collect(),
        ),
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:>3}  {:<12} {:<12} {:<12} {:<8} {:<8} {:>6} {:<6} {:<12} {:<10} {:<8} {}",
                "n", "new upper", "old upper", "n^(3n^2)", "new<old", "new<LL", "l0", "closed", "ratio", "l0~ratio", "l0<=new", "ok"
            );
            for r in &table {
                let _ = writeln!(
                    s,
                    "{:>3}  {:<12} {:<12} {:<12} {:<8} {:<8} {:>6} {:<6} {:<12} {:<10} {:<8} {}",
                    r.n,
                    r.new_upper_approx,
                    r.old_upper_approx,
                    r.linial_luria_approx,
                    tick(Some(r.verdicts.new_below_old)),
                    tick(Some(r.verdicts.new_below_linial_luria)),
                    r.lbt_lower.map_or("n/a".to_string(), |v| v.to_string()),
                    tick(r.verdicts.lbt_matches_closed_form),
                    r.lower_latin_ratio_approx,
                    format!("{} {}", r.lbt_vs_ratio, tick(r.verdicts.lbt_vs_latin_ratio)),
                    tick(r.verdicts.lbt_below_new_upper),
                    if r.holds { "pass" } else { "FAIL" }
                );
            }
            let _ = writeln!(s, "{}", if all { "all propositions hold" } else { "some propositions FAIL" });
            s
        }
    };
    if all {
        Ok(Output {
            stdout: text,
            warnings: vec![],
        })
    } else {
        Err(CliError::Failed(text))
    }
}

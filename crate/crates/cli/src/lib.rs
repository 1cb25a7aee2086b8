//! Command-line front end: build codes, compute weight hierarchies by any
//! method, run the verification matrix, and search for isotropic subspaces.
//!
//! Exit codes: 0 on success/agreement, 1 on usage or precondition errors
//! (including guardrail refusals), 2 when methods disagree.

pub mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ghw_core::{
    build_code, find_totally_isotropic, ghw_closed_form, parse_modulus, prop1_count, self_dual_subspace,
    weight_hierarchy, Certification, DefiningSetCode, Error, FieldSpec, FormDescriptor, IsotropicOutcome,
    QuadraticForm, Scalar, SearchMethod, SearchOptions, SubspaceEnumerator,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use report::{ErrorBody, ErrorReport, Hierarchies, Params, Prop1Check, RunReport, VerifyCell, VerifySummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

/// Largest field order `verify` accepts without `--force`.
pub const GUARDRAIL_ORDER: u64 = 729;

#[derive(Debug, Parser)]
#[command(name = "ghw", version, about = "Weight hierarchies of quadratic-form defining-set codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the weight hierarchy of C_{D_a}.
    Hierarchy(HierarchyArgs),
    /// Run the agreement matrix over standard and seeded random forms.
    Verify(VerifyArgs),
    /// Build totally isotropic or self-dual subspaces.
    Search(SearchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Wei,
    Lemma1,
    Formula,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long = "p")]
    pub p: u32,
    #[arg(long = "m")]
    pub m: usize,
    /// Ascending-degree coefficients of the modulus, e.g. "1,0,1".
    #[arg(long)]
    pub modulus: Option<String>,
    /// identity | diag:c1,..,cm | gram:row-major entries | trace:gamma
    #[arg(long, default_value = "identity")]
    pub form: String,
}

#[derive(Debug, Args)]
pub struct HierarchyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long = "a", default_value_t = 0)]
    pub a: u32,
    #[arg(long, value_enum, default_value = "all")]
    pub method: Method,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutFormat,
    /// Fill `timings_ms` (makes output run-dependent).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "p", value_delimiter = ',', default_value = "3")]
    pub p: Vec<u32>,
    #[arg(long = "m", value_delimiter = ',', default_value = "3,4")]
    pub m: Vec<usize>,
    /// Extra seeded random forms per discriminant-sign class.
    #[arg(long, default_value_t = 0)]
    pub forms: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Allow fields larger than the guardrail.
    #[arg(long)]
    pub force: bool,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Also check intersection counts against the closed form on every subspace.
    #[arg(long)]
    pub prop1: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// isotropic:R | selfdual
    #[arg(long)]
    pub task: String,
    /// Only decide existence of a self-dual subspace.
    #[arg(long)]
    pub check_only: bool,
    /// Certify self-dual non-existence by exhaustion at any dimension.
    #[arg(long)]
    pub exhaustive: bool,
}

/// A failure that ends the command with a non-zero exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
    pub dimension: Option<usize>,
    pub m: Option<usize>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            kind: "invalid_input",
            message: message.into(),
            dimension: None,
            m: None,
        }
    }

    fn report(&self) -> ErrorReport {
        ErrorReport {
            error: ErrorBody {
                kind: self.kind.to_string(),
                message: self.message.clone(),
                dimension: self.dimension,
                m: self.m,
            },
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (kind, dimension, m, code) = match &e {
            Error::DegenerateDimension { dimension, m } => {
                ("degenerate_dimension", Some(*dimension), Some(*m), EXIT_USAGE)
            }
            Error::SmallDegree { m } => ("theorem_precondition", None, Some(*m), EXIT_USAGE),
            Error::EmptyDefiningSet { .. } => ("empty_defining_set", None, None, EXIT_USAGE),
            Error::Degenerate { .. } => ("degenerate_form", None, None, EXIT_USAGE),
            Error::Verification(_) | Error::BranchDisagreement { .. } => ("inconsistency", None, None, EXIT_DISAGREE),
            _ => ("invalid_input", None, None, EXIT_USAGE),
        };
        Self {
            code,
            kind,
            message: e.to_string(),
            dimension,
            m,
        }
    }
}

fn field_from(args: &FieldArgs) -> Result<FieldSpec, Failure> {
    let spec = match &args.modulus {
        Some(text) => {
            let coeffs = parse_modulus(text).map_err(Failure::usage)?;
            let spec = FieldSpec::with_modulus(args.p, coeffs)?;
            if spec.m() != args.m {
                return Err(Failure::usage(format!(
                    "modulus has degree {} but --m is {}",
                    spec.m(),
                    args.m
                )));
            }
            spec
        }
        None => FieldSpec::new(args.p, args.m)?,
    };
    Ok(spec)
}

fn form_from(args: &FieldArgs, spec: &FieldSpec) -> Result<(FormDescriptor, QuadraticForm), Failure> {
    let desc = FormDescriptor::parse(&args.form).map_err(Failure::usage)?;
    let form = desc.build(spec)?;
    Ok((desc, form))
}

/// Runs the CLI on `args` (including the program name), writing to the given
/// streams, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match cli.command {
        Command::Hierarchy(a) => run_hierarchy(&a, out, err),
        Command::Verify(a) => run_verify(&a, out, err),
        Command::Search(a) => run_search(&a, out, err),
    }
}

fn run_hierarchy(args: &HierarchyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cmd_hierarchy(args) {
        Ok(report) => {
            let text = match args.out {
                OutFormat::Json => report.to_json(),
                OutFormat::Csv => report.to_csv(),
            };
            let _ = out.write_all(text.as_bytes());
            if report.agreement {
                EXIT_OK
            } else {
                let _ = writeln!(err, "error: methods disagree");
                EXIT_DISAGREE
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            if args.out == OutFormat::Json {
                let _ = out.write_all(f.report().to_json().as_bytes());
            }
            f.code
        }
    }
}

/// Builds the field, form and code, then computes the requested hierarchies.
pub fn cmd_hierarchy(args: &HierarchyArgs) -> Result<RunReport, Failure> {
    let spec = field_from(&args.field)?;
    let (desc, form) = form_from(&args.field, &spec)?;
    if args.a >= spec.p() {
        return Err(Failure::usage(format!("--a must lie in [0, {})", spec.p())));
    }
    let a = Scalar(args.a);
    let classification = form.classify(a)?;
    if args.method == Method::Formula && spec.m() < 3 {
        return Err(Error::SmallDegree { m: spec.m() }.into());
    }
    let code = build_code(&form, a)?;
    let dimension = code.dimension();
    let m = spec.m();

    let want = |method: Method| args.method == method || args.method == Method::All;
    let opts = SearchOptions::with_jobs(args.jobs);
    let mut hierarchy = Hierarchies::default();
    let mut timings = BTreeMap::new();

    if (want(Method::Wei) || want(Method::Lemma1)) && dimension < m {
        return Err(Error::DegenerateDimension { dimension, m }.into());
    }
    if want(Method::Formula) {
        let t = Instant::now();
        let prediction = ghw_closed_form(spec.p(), m, classification.epsilon, a)?;
        hierarchy.formula = Some(prediction.values);
        timings.insert("formula".to_string(), t.elapsed().as_millis() as u64);
    }
    for (method, search) in [(Method::Wei, SearchMethod::Wei), (Method::Lemma1, SearchMethod::Lemma1)] {
        if !want(method) {
            continue;
        }
        let t = Instant::now();
        let h = weight_hierarchy(&code, search, opts)?;
        let key = match method {
            Method::Wei => "wei",
            _ => "lemma1",
        };
        timings.insert(key.to_string(), t.elapsed().as_millis() as u64);
        match method {
            Method::Wei => hierarchy.wei = Some(h.values),
            _ => hierarchy.lemma1 = Some(h.values),
        }
    }

    Ok(RunReport {
        params: Params {
            p: spec.p(),
            m,
            modulus: spec.modulus().to_vec(),
            form: desc.to_string(),
            a: a.0,
        },
        theorem: classification.theorem.to_string(),
        n: code.len(),
        dimension,
        agreement: hierarchy.agree(),
        hierarchy,
        timings_ms: if args.timings { timings } else { BTreeMap::new() },
    })
}

/// The four standard forms: identity, diag(1,..,1,g) with `g` the smallest
/// non-residue mod p, Tr(x^2), and Tr(gamma x^2) with `gamma` the smallest
/// non-square of the field.
pub fn standard_forms(spec: &FieldSpec) -> Vec<FormDescriptor> {
    let m = spec.m();
    let g = spec.prime_field().smallest_nonresidue() as i64;
    let mut diag = vec![1i64; m];
    diag[m - 1] = g;
    vec![
        FormDescriptor::Identity,
        FormDescriptor::Diagonal(diag),
        FormDescriptor::TraceIndex(spec.one().index(spec.p())),
        FormDescriptor::TraceIndex(spec.smallest_nonsquare().index(spec.p())),
    ]
}

/// Seeded random non-degenerate Gram forms, `per_class` for each sign.
fn random_forms(spec: &FieldSpec, per_class: usize, seed: u64) -> Vec<FormDescriptor> {
    if per_class == 0 {
        return Vec::new();
    }
    let (p, m) = (spec.p(), spec.m());
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((p as u64) << 32) ^ m as u64);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for _ in 0..10_000 {
        if plus.len() >= per_class && minus.len() >= per_class {
            break;
        }
        let mut g = vec![0i64; m * m];
        for i in 0..m {
            for j in i..m {
                let v = rng.gen_range(0..p) as i64;
                g[i * m + j] = v;
                g[j * m + i] = v;
            }
        }
        let desc = FormDescriptor::Gram(g);
        let form = desc.build(spec).expect("symmetric by construction");
        if !form.is_nondegenerate() {
            continue;
        }
        let bucket = if form.discriminant_sign() == 1 { &mut plus } else { &mut minus };
        if bucket.len() < per_class {
            bucket.push(desc);
        }
    }
    plus.into_iter().chain(minus).collect()
}

fn verify_cell(form: &QuadraticForm, desc: &FormDescriptor, a: u32, jobs: usize) -> VerifyCell {
    let spec = form.spec();
    let (p, m) = (spec.p(), spec.m());
    let mut cell = VerifyCell {
        p,
        m,
        form: desc.to_string(),
        a,
        theorem: String::new(),
        n: 0,
        dimension: 0,
        hierarchy: Hierarchies::default(),
        agreement: false,
        problems: Vec::new(),
    };
    let a = Scalar(a);
    let result = (|| -> Result<(), Error> {
        let class = form.classify(a)?;
        cell.theorem = class.theorem.to_string();
        let code: DefiningSetCode = build_code(form, a)?;
        cell.n = code.len();
        cell.dimension = code.dimension();
        let opts = SearchOptions::with_jobs(jobs);
        let prediction = ghw_closed_form(p, m, class.epsilon, a)?;
        if prediction.predicted_length != code.len() as u64 {
            cell.problems.push(format!(
                "length {} differs from the predicted {}",
                code.len(),
                prediction.predicted_length
            ));
        }
        let wei = weight_hierarchy(&code, SearchMethod::Wei, opts)?;
        let lemma1 = weight_hierarchy(&code, SearchMethod::Lemma1, opts)?;
        for (name, h) in [("wei", &wei), ("lemma1", &lemma1)] {
            for v in h.violations(code.len() as u64) {
                cell.problems.push(format!("{name}: {v}"));
            }
        }
        cell.hierarchy = Hierarchies {
            wei: Some(wei.values),
            lemma1: Some(lemma1.values),
            formula: Some(prediction.values),
        };
        Ok(())
    })();
    if let Err(e) = result {
        cell.problems.push(e.to_string());
    }
    cell.agreement = cell.problems.is_empty() && cell.hierarchy.entries().len() == 3 && cell.hierarchy.agree();
    cell
}

/// Compares enumerated `|H ∩ {f = a}|` with the closed-form count on every
/// subspace `H`, for every `a`.
pub fn prop1_sweep(form: &QuadraticForm) -> (u64, u64) {
    let spec = form.spec();
    let (p, m) = (spec.p(), spec.m());
    let mut comparisons = 0;
    let mut mismatches = 0;
    for d in 0..=m {
        let en = SubspaceEnumerator::for_field(spec, d).expect("d <= m");
        for h in en.iter() {
            let mut counts = vec![0i128; p as usize];
            for x in h.members() {
                counts[form.evaluate(&x).0 as usize] += 1;
            }
            let r = form.restrict(&h);
            for a in 0..p {
                comparisons += 1;
                match prop1_count(d, r.rank, r.sign, Scalar(a), p) {
                    Ok(c) if c == counts[a as usize] => {}
                    _ => mismatches += 1,
                }
            }
        }
    }
    (comparisons, mismatches)
}

/// Runs the agreement matrix. Refuses fields beyond the guardrail unless forced.
pub fn cmd_verify(args: &VerifyArgs) -> Result<VerifySummary, Failure> {
    for &p in &args.p {
        for &m in &args.m {
            if m < 3 {
                return Err(Failure::usage(format!("verify needs m >= 3 (got {m})")));
            }
            let order = (p as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
            if order > GUARDRAIL_ORDER && !args.force {
                return Err(Failure {
                    code: EXIT_USAGE,
                    kind: "guardrail",
                    message: format!("{p}^{m} = {order} exceeds {GUARDRAIL_ORDER}; pass --force to run anyway"),
                    dimension: None,
                    m: Some(m),
                });
            }
        }
    }
    let mut cells = Vec::new();
    let mut prop1 = Vec::new();
    for &p in &args.p {
        for &m in &args.m {
            let spec = FieldSpec::new(p, m)?;
            let mut forms = standard_forms(&spec);
            forms.extend(random_forms(&spec, args.forms, args.seed));
            for desc in &forms {
                let form = desc.build(&spec)?;
                for a in 0..p {
                    cells.push(verify_cell(&form, desc, a, args.jobs));
                }
                if args.prop1 {
                    let (comparisons, mismatches) = prop1_sweep(&form);
                    prop1.push(Prop1Check {
                        p,
                        m,
                        form: desc.to_string(),
                        comparisons,
                        mismatches,
                    });
                }
            }
        }
    }
    let agreeing = cells.iter().filter(|c| c.agreement).count();
    let all_agree = agreeing == cells.len() && prop1.iter().all(|c| c.mismatches == 0);
    Ok(VerifySummary {
        seed: args.seed,
        total: cells.len(),
        agreeing,
        all_agree,
        cells,
        prop1,
    })
}

fn run_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cmd_verify(args) {
        Ok(summary) => {
            let _ = out.write_all(summary.to_json().as_bytes());
            if summary.all_agree {
                EXIT_OK
            } else {
                let _ = writeln!(err, "error: {} of {} cells disagree", summary.total - summary.agreeing, summary.total);
                EXIT_DISAGREE
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dimension_noun(s: usize) -> String {
    match s {
        1 => "lines".to_string(),
        2 => "planes".to_string(),
        _ => format!("{s}-dimensional subspaces"),
    }
}

/// Runs a search task and returns the line to print.
pub fn cmd_search(args: &SearchArgs) -> Result<String, Failure> {
    let spec = field_from(&args.field)?;
    let (_, form) = form_from(&args.field, &spec)?;
    let task = args.task.trim();
    if task == "selfdual" {
        let o = self_dual_subspace(&form, args.check_only, args.exhaustive)?;
        let s = spec.m() / 2;
        return Ok(match (o.exists, o.witness, o.certification) {
            (true, Some(w), _) => w.to_string(),
            (true, None, _) => "exists (sign condition)".to_string(),
            (false, _, Certification::Exhaustive { checked }) => {
                format!("none (exhaustive over {checked} {})", dimension_noun(s))
            }
            (false, _, _) => "none (sign condition)".to_string(),
        });
    }
    if let Some(r) = task.strip_prefix("isotropic:") {
        let r: usize = r
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad isotropic dimension {r:?}")))?;
        return Ok(match find_totally_isotropic(&form, r)? {
            IsotropicOutcome::Found { space, .. } => space.to_string(),
            IsotropicOutcome::NotFound { reached } => {
                format!("none (greedy extension stopped at dimension {reached})")
            }
        });
    }
    Err(Failure::usage(format!("unknown task {task:?}; expected isotropic:R or selfdual")))
}

fn run_search(args: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cmd_search(args) {
        Ok(line) => {
            let _ = writeln!(out, "{line}");
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

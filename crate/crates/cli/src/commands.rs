//! Subcommand runners. Each returns the process exit code: 0 when every
//! assertive claim holds, 1 when one fails. Input and usage problems surface
//! as [`CliError`] and map to exit code 2.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use serde::Serialize;

use rbm2_core::catalog::parse_catalog_ref;
use rbm2_core::identities::{check_identity, IdentityKind, Problem};
use rbm2_core::literal::{parse_operator, FieldLiteral, ProblemLiteral};
use rbm2_core::matrix::{Mat2, BASIS_NAMES};
use rbm2_core::polysys::{export_system, generate_system, Ansatz, ExportFormat, WeightSpec, LAMBDA_VAR};
use rbm2_core::search::{enumerate_operators, read_rbset, write_rbset, OperatorSet, SearchOptions};
use rbm2_core::transforms::{partition_orbits, Canonicalizer, GroupSpec, OrbitMove};
use rbm2_core::{make_field, FieldSpec, Op4, ProductKind};

use crate::args::{Cli, Command, Common, GroupFlags};
use crate::claims::{self, Session};
use crate::report::{human_summary, Status, VerificationReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] rbm2_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

type CliResult<T> = std::result::Result<T, CliError>;

pub fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Verify { operator, common } => verify(&operator, &common),
        Command::Enumerate {
            naive,
            no_prune,
            image_span,
            common,
        } => enumerate(naive, no_prune, &image_span, &common),
        Command::Orbits {
            input,
            group,
            witnesses,
            common,
        } => orbits(&input, group, witnesses, &common),
        Command::Dichotomy { input, common } => dichotomy(&input, &common),
        Command::Classify {
            input,
            group,
            reps,
            common,
        } => classify(&input, group, &reps, &common),
        Command::Subalgebras { common } => {
            let field = field_or_default(&common)?;
            let reports = claims::subalgebra_claims(field, !common.no_timing)?;
            emit_reports(&common, field, &reports)
        }
        Command::Polysys {
            ansatz,
            format,
            symbolic_weight,
            compare_literature,
            common,
        } => polysys(&ansatz, &format, symbolic_weight, compare_literature, &common),
        Command::PaperCheck { skip_oracle, common } => {
            let field = field_or_default(&common)?;
            let session = Session::new(field, common.node_budget, !common.no_timing);
            let reports = claims::all_claims(&session, !skip_oracle)?;
            emit_reports(&common, field, &reports)
        }
    }
}

/// Sizes the global worker pool; must run before any parallel work.
pub fn configure_threads(jobs: Option<usize>) -> CliResult<()> {
    let Some(n) = jobs else { return Ok(()) };
    if n == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

pub fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::Verify { common, .. }
        | Command::Enumerate { common, .. }
        | Command::Orbits { common, .. }
        | Command::Dichotomy { common, .. }
        | Command::Classify { common, .. }
        | Command::Subalgebras { common }
        | Command::Polysys { common, .. }
        | Command::PaperCheck { common, .. } => common,
    }
}

/// `p` or `p,deg`.
pub fn parse_field(s: &str) -> CliResult<FieldSpec> {
    let bad = || CliError::Usage(format!("bad --field '{s}' (expected p or p,deg)"));
    let (p, deg) = s.split_once(',').unwrap_or((s, "1"));
    let p: u32 = p.trim().parse().map_err(|_| bad())?;
    let deg: u32 = deg.trim().parse().map_err(|_| bad())?;
    Ok(make_field(p, deg)?)
}

fn field_flag(common: &Common) -> CliResult<Option<FieldSpec>> {
    common.field.as_deref().map(parse_field).transpose()
}

fn field_or_default(common: &Common) -> CliResult<FieldSpec> {
    Ok(field_flag(common)?.unwrap_or(make_field(3, 1)?))
}

/// Problem from flags; defaults are associative, rb, weight 0.
fn problem_from_flags(common: &Common, field: FieldSpec) -> Problem {
    Problem::new(
        common.product.unwrap_or(ProductKind::Associative),
        common.identity.unwrap_or(IdentityKind::Rb),
        field.from_int(common.weight.unwrap_or(0)),
    )
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// A file path or a `catalog:` reference; the field defaults to `default`.
pub fn load_operator(spec: &str, default: FieldSpec) -> CliResult<(String, Op4)> {
    if spec.starts_with("catalog:") {
        let r = parse_catalog_ref(spec, Some(default))?;
        return Ok((r.label, r.operator));
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let op = parse_operator(text.trim())
        .map_err(|e| CliError::Usage(format!("{spec}: {e}")))?;
    Ok((spec.to_string(), op))
}

fn read_set(path: &Path) -> CliResult<OperatorSet> {
    let file = File::open(path).map_err(io_err(path))?;
    read_rbset(BufReader::new(file)).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Flags that restate a set's header must agree with it.
fn check_set_flags(set: &OperatorSet, common: &Common) -> CliResult<()> {
    let mismatch = |what: &str| {
        CliError::Usage(format!("--{what} disagrees with the set header ({})", claims::problem_label(&set.problem)))
    };
    if field_flag(common)?.is_some_and(|f| f != set.field) {
        return Err(mismatch("field"));
    }
    if common.weight.is_some_and(|w| set.field.from_int(w) != set.problem.weight) {
        return Err(mismatch("weight"));
    }
    if common.product.is_some_and(|p| p != set.problem.product) {
        return Err(mismatch("product"));
    }
    if common.identity.is_some_and(|i| i != set.problem.identity) {
        return Err(mismatch("identity"));
    }
    Ok(())
}

/// Writes to `--out` when given, else to stdout.
fn write_output(common: &Common, text: &str) -> CliResult<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(io_err(path)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization is infallible");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    field: FieldLiteral,
    status: Status,
    reports: &'a [VerificationReport],
}

/// JSON goes to `--out`; stdout gets JSON with `--json`, summary lines otherwise.
fn emit_reports(common: &Common, field: FieldSpec, reports: &[VerificationReport]) -> CliResult<i32> {
    let failed = reports.iter().any(|r| r.failed());
    let doc = ReportDocument {
        field: FieldLiteral::of(field),
        status: if failed { Status::Fail } else { Status::Pass },
        reports,
    };
    let json = to_json(&doc);
    if let Some(path) = &common.out {
        std::fs::write(path, &json).map_err(io_err(path))?;
    }
    if common.json {
        print!("{json}");
    } else {
        print!("{}", human_summary(reports));
    }
    Ok(failed as i32)
}

fn verify(spec: &str, common: &Common) -> CliResult<i32> {
    let flag = field_flag(common)?;
    let (_, op) = load_operator(spec, flag.unwrap_or(make_field(3, 1)?))?;
    if flag.is_some_and(|f| f != op.field()) {
        return Err(CliError::Usage("--field disagrees with the operator's field".into()));
    }
    let prob = problem_from_flags(common, op.field());
    let result = check_identity(&op, &prob);
    write_output(common, &to_json(&result))?;
    Ok(if result.passed { 0 } else { 1 })
}

/// `e11`..`e22`, or `E` for the identity matrix.
fn parse_span_element(name: &str, field: FieldSpec) -> CliResult<Mat2> {
    if name == "E" {
        return Ok(Mat2::identity(field));
    }
    BASIS_NAMES
        .iter()
        .position(|b| *b == name)
        .map(|i| Mat2::unit(field, i))
        .ok_or_else(|| CliError::Usage(format!("unknown span element '{name}' (expected e11, e12, e21, e22 or E)")))
}

fn enumerate(naive: bool, no_prune: bool, image_span: &[String], common: &Common) -> CliResult<i32> {
    let field = field_or_default(common)?;
    let prob = problem_from_flags(common, field);
    let image_constraint = if image_span.is_empty() {
        None
    } else {
        Some(
            image_span
                .iter()
                .map(|n| parse_span_element(n.trim(), field))
                .collect::<CliResult<Vec<_>>>()?,
        )
    };
    let base = if naive {
        SearchOptions::naive()
    } else {
        SearchOptions {
            prune: !no_prune,
            ..SearchOptions::default()
        }
    };
    let opts = SearchOptions {
        image_constraint,
        node_budget: common.node_budget,
        ..base
    };
    let set = enumerate_operators(&prob, field, &opts)?;
    match &common.out {
        Some(path) => {
            let file = File::create(path).map_err(io_err(path))?;
            write_rbset(&set, BufWriter::new(file))?;
            eprintln!(
                "{}: {} operators ({}, {} nodes)",
                claims::problem_label(&prob),
                set.len(),
                set.metadata.mode,
                set.metadata.nodes
            );
        }
        None => write_rbset(&set, std::io::stdout().lock())?,
    }
    Ok(0)
}

fn group_spec(flags: GroupFlags, field: FieldSpec) -> GroupSpec {
    GroupSpec::new(field, flags.transpose, flags.scalars, flags.phi)
}

#[derive(Serialize)]
struct GroupLiteral {
    transpose: bool,
    scalars: bool,
    phi: bool,
}

#[derive(Serialize)]
struct OrbitWitness {
    member: Op4,
    #[serde(rename = "move")]
    mv: OrbitMove,
}

#[derive(Serialize)]
struct OrbitEntry {
    canonical: Op4,
    members: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<OrbitWitness>,
}

#[derive(Serialize)]
struct OrbitDocument {
    problem: ProblemLiteral,
    field: FieldLiteral,
    group: GroupLiteral,
    members: usize,
    orbit_count: usize,
    orbits: Vec<OrbitEntry>,
}

fn orbits(input: &Path, flags: GroupFlags, witnesses: bool, common: &Common) -> CliResult<i32> {
    let set = read_set(input)?;
    check_set_flags(&set, common)?;
    let canon = Canonicalizer::new(group_spec(flags, set.field), set.problem.weight)?;
    let orbits = partition_orbits(&set.ops, &canon, witnesses);
    let doc = OrbitDocument {
        problem: ProblemLiteral::of(&set.problem),
        field: FieldLiteral::of(set.field),
        group: GroupLiteral {
            transpose: flags.transpose,
            scalars: flags.scalars,
            phi: flags.phi,
        },
        members: set.len(),
        orbit_count: orbits.len(),
        orbits: orbits
            .into_iter()
            .map(|o| OrbitEntry {
                canonical: o.canonical,
                members: o.members,
                witness: o
                    .representative_witnesses
                    .and_then(|w| w.into_iter().next())
                    .map(|(member, mv)| OrbitWitness { member, mv }),
            })
            .collect(),
    };
    write_output(common, &to_json(&doc))?;
    Ok(0)
}

fn dichotomy(input: &Path, common: &Common) -> CliResult<i32> {
    let set = read_set(input)?;
    check_set_flags(&set, common)?;
    let report = claims::dichotomy(&set, !common.no_timing)?;
    emit_reports(common, set.field, &[report])
}

fn classify(input: &Path, flags: GroupFlags, reps: &[String], common: &Common) -> CliResult<i32> {
    let set = read_set(input)?;
    check_set_flags(&set, common)?;
    let lambda = set.problem.weight;
    let spec = if flags.transpose || flags.scalars || flags.phi {
        group_spec(flags, set.field)
    } else {
        claims::default_group(set.field, lambda)
    };
    let canon = Canonicalizer::new(spec, lambda)?;
    let reps = if reps.is_empty() {
        claims::default_representatives(set.field, lambda)?
    } else {
        let loaded = reps
            .iter()
            .map(|s| load_operator(s, set.field))
            .collect::<CliResult<Vec<_>>>()?;
        if loaded.iter().any(|(_, r)| r.field() != set.field) {
            return Err(CliError::Usage("representatives must live over the set's field".into()));
        }
        loaded
    };
    let reports = claims::classify(&set, &canon, &reps, !common.no_timing);
    emit_reports(common, set.field, &reports)
}

fn polysys(
    ansatz_name: &str,
    format: &str,
    symbolic_weight: bool,
    compare_literature: bool,
    common: &Common,
) -> CliResult<i32> {
    let ansatz = Ansatz::by_name(ansatz_name)?;
    let format: ExportFormat = format.parse()?;
    let product = common.product.unwrap_or(ProductKind::Associative);
    let identity = common.identity.unwrap_or(IdentityKind::Rb);
    let weight = if symbolic_weight {
        WeightSpec::Symbolic
    } else {
        WeightSpec::Const(common.weight.unwrap_or(0))
    };
    if compare_literature {
        let matches = product == ProductKind::Jordan
            && identity == IdentityKind::Rb
            && weight == WeightSpec::Const(0)
            && ansatz == Ansatz::upper_row();
        if !matches {
            return Err(CliError::Usage(
                "--compare-literature needs --product jordan --identity rb --weight 0 --ansatz eq3".into(),
            ));
        }
        let field = field_or_default(common)?;
        let report = claims::upper_row_system(field, common.node_budget, !common.no_timing)?;
        return emit_reports(common, field, &[report]);
    }
    let sys = generate_system(product, identity, weight, Some(&ansatz));
    let mut vars = ansatz.free_vars();
    if symbolic_weight {
        vars.push(LAMBDA_VAR);
    }
    write_output(common, &export_system(&sys, &vars, format))?;
    Ok(0)
}

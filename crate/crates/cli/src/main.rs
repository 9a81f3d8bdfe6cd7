//! `rhiza`: command-line front end for the algebra workbench.
//!
//! Exit status: 0 ran to completion, 1 a check failed under `--strict`,
//! 2 input or usage error, 3 a checker disagreed with the oracle.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rhiza::algmodel::{parse_algebra_with, parse_matrix_text, serialize_algebra, sum_algebra};
use rhiza::axioms::{
    as_mono, check_alpha_derivation, check_dendriform, check_hom_anti_associative,
    check_jacobi_jordan, check_multiplicativity, check_pre_jacobi_jordan, check_rhizaform,
    inner_derivation, inner_derivation_report, pre_jacobi_jordan_product, subadjacent_bracket,
    AdConvention,
};
use rhiza::catalog::{self, CatalogFilter};
use rhiza::cocycles::{
    check_cocycle_compatibility, check_scalar_cocycle, compatible_cocycle_space,
    describe_vector_space, is_nondegenerate, rhizaform_from_cocycle, scalar_cocycle_space,
    vector_cocycle_space, ScalarForm,
};
use rhiza::exactlin::{format_rational, parse_rational};
use rhiza::family::{
    associated_family, check_anti_associative_family, check_rb_family, check_rhizaform_family,
    check_semigroup, induced_family_rhizaform, parse_family, serialize_family, tensor_collapse,
    FamilyDocument,
};
use rhiza::nilpotency::{
    check_2_nilpotent, check_lemma_inclusions, check_onesided_nilpotency_theorem,
    check_series_equality, full_series, is_nilpotent, left_series, right_series, Series,
};
use rhiza::operators::{
    check_bimodule, check_homomorphism, check_o_operator, check_rota_baxter,
    compatible_from_invertible_o_operator, dual_bimodule, induced_rhizaform_from_o_operator,
    induced_rhizaform_from_rb, regular_bimodule, rhizaform_bimodule, Bimodule, LinearOperator,
};
use rhiza::oracle::{self, Verdict};
use rhiza::{CheckReport, Error, HomAlgebra, LinearMap, Rational};

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_ORACLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "rhiza",
    version,
    about = "Exact checks for Hom-rhizaform algebras and relatives"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Parameter binding, repeatable.
    #[arg(long = "param", global = true, value_name = "NAME=P/Q")]
    params: Vec<String>,
    /// Verify preconditions and exit 1 when a check fails.
    #[arg(long, global = true)]
    strict: bool,
    /// Re-evaluate with the independent brute-force evaluator and diff.
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Check one structure on an algebra file.
    Check(CheckArgs),
    /// Solve for Connes-cocycle spaces.
    Cocycles(CocycleArgs),
    /// Nilpotency series and related checks.
    Nilpotency(NilpotencyArgs),
    /// Build a new algebra from an algebra and an operator or form.
    Induce(InduceArgs),
    /// Work with semigroup-indexed family files.
    Family(FamilyArgs),
    /// The embedded catalog of low-dimensional representatives.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Rhizaform,
    Dendriform,
    AntiAssociative,
    Multiplicativity,
    JacobiJordan,
    PreJacobiJordan,
    Derivation,
    InnerDerivation,
    Bimodule,
    OOperator,
    RotaBaxter,
    Homomorphism,
    TwoNilpotent,
    Cocycle,
    Compatibility,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModuleKind {
    /// `(L_succ, R_prec)` of a rhizaform algebra.
    Rhizaform,
    /// Left and right multiplications of the (sum) algebra.
    Regular,
    /// Dual of the regular bimodule.
    Dual,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    file: PathBuf,
    /// Matrix file: derivation, O-operator, Rota-Baxter operator or homomorphism.
    #[arg(long)]
    operator: Option<PathBuf>,
    /// Matrix file of a scalar bilinear form.
    #[arg(long)]
    form: Option<PathBuf>,
    #[arg(long, value_enum)]
    module: Option<ModuleKind>,
    /// Target algebra file of a homomorphism.
    #[arg(long)]
    target: Option<PathBuf>,
    /// Product a derivation is checked against: a product name or `star`.
    #[arg(long, default_value = "star")]
    product: String,
    /// Comma-separated coordinates of the element of an inner derivation.
    #[arg(long)]
    element: Option<String>,
    #[arg(long, default_value = "star")]
    convention: String,
}

#[derive(Args)]
struct CocycleArgs {
    file: PathBuf,
    /// Algebra-valued cocycles (default).
    #[arg(long, conflicts_with_all = ["scalar", "compatible"])]
    vector: bool,
    /// Scalar cocycles.
    #[arg(long, conflicts_with = "compatible")]
    scalar: bool,
    /// Scalar cocycles that also satisfy the compatibility identity.
    #[arg(long)]
    compatible: bool,
}

#[derive(Args)]
struct NilpotencyArgs {
    file: PathBuf,
    /// Largest g, h in the inclusion check.
    #[arg(long, default_value_t = 4)]
    lemma_max: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    RotaBaxter,
    OOperator,
    InvertibleOOperator,
    Cocycle,
    Sum,
    PreJacobiJordan,
    Bracket,
}

#[derive(Args)]
struct InduceArgs {
    #[arg(long, value_enum)]
    from: Source,
    file: PathBuf,
    #[arg(long)]
    operator: Option<PathBuf>,
    #[arg(long)]
    form: Option<PathBuf>,
    #[arg(long, value_enum)]
    module: Option<ModuleKind>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyAction {
    Check,
    Associated,
    Induce,
    Collapse,
}

#[derive(Args)]
struct FamilyArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = FamilyAction::Check)]
    action: FamilyAction,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entry ids.
    List,
    /// Print one entry as an algebra file.
    Show { id: String },
    /// Verify entries and report findings.
    Verify {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long = "id")]
        ids: Vec<String>,
    },
}

/// Failure modes of a run, mapped to exit codes.
enum Fail {
    Input(String),
    Precondition(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAnOOperator
            | Error::NotRotaBaxter
            | Error::NotACocycle
            | Error::NotASemigroup => Fail::Precondition(e.to_string()),
            other => Fail::Input(other.to_string()),
        }
    }
}

type Run<T> = std::result::Result<T, Fail>;

/// What a subcommand produced.
struct Outcome {
    text: String,
    failed: bool,
    oracle_disagrees: bool,
}

impl Outcome {
    fn plain(text: String) -> Self {
        Outcome {
            text,
            failed: false,
            oracle_disagrees: false,
        }
    }
}

struct Ctx {
    format: Format,
    params: BTreeMap<String, Rational>,
    strict: bool,
    oracle: bool,
}

impl Ctx {
    fn structured(&self) -> bool {
        self.format == Format::Structured
    }

    fn read(&self, path: &Path) -> Run<String> {
        std::fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
    }

    fn algebra(&self, path: &Path) -> Run<HomAlgebra> {
        Ok(parse_algebra_with(&self.read(path)?, &self.params)?)
    }

    fn operator(&self, path: Option<&PathBuf>) -> Run<LinearOperator> {
        let path = path.ok_or_else(|| Fail::Input("--operator is required".into()))?;
        Ok(LinearOperator::new(parse_matrix_text(
            &self.read(path)?,
            &self.params,
        )?))
    }

    fn form(&self, path: Option<&PathBuf>) -> Run<ScalarForm> {
        let path = path.ok_or_else(|| Fail::Input("--form is required".into()))?;
        Ok(ScalarForm::new(parse_matrix_text(
            &self.read(path)?,
            &self.params,
        )?)?)
    }
}

fn parse_params(raw: &[String]) -> Run<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for p in raw {
        let (name, value) = p
            .split_once('=')
            .ok_or_else(|| Fail::Input(format!("--param `{p}`: expected NAME=P/Q")))?;
        let value = parse_rational(value.trim())
            .map_err(|_| Fail::Input(format!("--param `{p}`: `{value}` is not a rational")))?;
        out.insert(name.trim().to_string(), value);
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let ctx = match parse_params(&cli.global.params) {
        Ok(params) => Ctx {
            format: cli.global.format,
            params,
            strict: cli.global.strict,
            oracle: cli.global.oracle,
        },
        Err(f) => return report_fail(f),
    };
    let result = match &cli.command {
        Command::Check(args) => run_check(&ctx, args),
        Command::Cocycles(args) => run_cocycles(&ctx, args),
        Command::Nilpotency(args) => run_nilpotency(&ctx, args),
        Command::Induce(args) => run_induce(&ctx, args),
        Command::Family(args) => run_family(&ctx, args),
        Command::Catalog { action } => run_catalog(&ctx, action),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.oracle_disagrees {
                eprintln!("error: a checker disagrees with the oracle");
                ExitCode::from(EXIT_ORACLE)
            } else if out.failed && ctx.strict {
                ExitCode::from(EXIT_FAILED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => report_fail(f),
    }
}

fn report_fail(f: Fail) -> ExitCode {
    match f {
        Fail::Input(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Fail::Precondition(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn render_report(out: &mut String, r: &CheckReport) {
    if r.passed() {
        let _ = writeln!(out, "{}: pass", r.structure_name());
    } else {
        let _ = writeln!(
            out,
            "{}: FAIL ({} violations)",
            r.structure_name(),
            r.violations().len()
        );
        for v in r.violations() {
            let tuple: Vec<String> = v.basis_tuple.iter().map(|i| (i + 1).to_string()).collect();
            let residual: Vec<String> = v.residual.iter().map(format_rational).collect();
            let labels = if v.labels.is_empty() {
                String::new()
            } else {
                format!(" labels {:?}", v.labels)
            };
            let _ = writeln!(
                out,
                "  {}{} at ({}): residual [{}]",
                v.identity_id,
                labels,
                tuple.join(","),
                residual.join(", ")
            );
        }
    }
    for n in r.notes() {
        let _ = writeln!(out, "  note: {n}");
    }
}

fn oracle_value(library: &CheckReport, oracle: &Verdict) -> Value {
    let lib: Verdict = library.failing_identities().into_iter().collect();
    json!({"agrees": &lib == oracle, "library": lib, "oracle": oracle})
}

/// Renders a list of reports, each paired with an optional oracle verdict.
fn render_reports(ctx: &Ctx, reports: &[(CheckReport, Option<Verdict>)]) -> Outcome {
    let failed = reports.iter().any(|(r, _)| !r.passed());
    let disagree = reports.iter().any(|(r, o)| {
        o.as_ref()
            .is_some_and(|o| &r.failing_identities().into_iter().collect::<Verdict>() != o)
    });
    let text = if ctx.structured() {
        let items: Vec<Value> = reports
            .iter()
            .map(|(r, o)| {
                let mut v = json!({ "report": r });
                if let Some(o) = o {
                    v["oracle"] = oracle_value(r, o);
                }
                v
            })
            .collect();
        json_text(&json!({ "passed": !failed, "checks": items }))
    } else {
        let mut out = String::new();
        for (r, o) in reports {
            render_report(&mut out, r);
            if let Some(o) = o {
                let v = oracle_value(r, o);
                if v["agrees"] == json!(true) {
                    let _ = writeln!(out, "  oracle: agree");
                } else {
                    let _ = writeln!(out, "  oracle: DISAGREE {}", v);
                }
            }
        }
        out
    };
    Outcome {
        text,
        failed,
        oracle_disagrees: disagree,
    }
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

fn module_for(a: &HomAlgebra, sum: &HomAlgebra, kind: Option<ModuleKind>) -> Run<Bimodule> {
    let default = if a.products().contains_key("mul") {
        ModuleKind::Regular
    } else {
        ModuleKind::Rhizaform
    };
    Ok(match kind.unwrap_or(default) {
        ModuleKind::Rhizaform => rhizaform_bimodule(a)?,
        ModuleKind::Regular => regular_bimodule(sum)?,
        ModuleKind::Dual => dual_bimodule(&regular_bimodule(sum)?),
    })
}

/// The single product that the Jacobi-type checks see.
fn derived_product(a: &HomAlgebra, pre: bool) -> Run<rhiza::BilinearOp> {
    if let Ok(m) = a.mul() {
        return Ok(m.clone());
    }
    Ok(if pre {
        pre_jacobi_jordan_product(a)?
    } else {
        subadjacent_bracket(a)?
    })
}

fn prefixed(prefix: &str, v: Verdict) -> Verdict {
    v.into_iter().map(|id| format!("{prefix}{id}")).collect()
}

fn parse_element(raw: &str, n: usize) -> Run<Vec<Rational>> {
    let coords = raw
        .split(',')
        .map(|c| parse_rational(c.trim()).map_err(|_| Fail::Input(format!("bad coordinate `{c}`"))))
        .collect::<Run<Vec<_>>>()?;
    if coords.len() != n {
        return Err(Fail::Input(format!("--element needs {n} coordinates")));
    }
    Ok(coords)
}

fn run_check(ctx: &Ctx, args: &CheckArgs) -> Run<Outcome> {
    let a = ctx.algebra(&args.file)?;
    let al = a.alpha();
    let sum = as_mono(&a)?;
    let (report, verdict): (CheckReport, Box<dyn Fn() -> Run<Verdict>>) = match args.kind {
        Kind::Rhizaform => (
            check_rhizaform(&a)?,
            Box::new(|| Ok(oracle::rhizaform(&a)?)),
        ),
        Kind::Dendriform => (
            check_dendriform(&a)?,
            Box::new(|| Ok(oracle::dendriform(&a)?)),
        ),
        Kind::AntiAssociative => {
            let mul = sum.mul()?.clone();
            let r = check_hom_anti_associative(&mul, al)?;
            (r, Box::new(move || Ok(oracle::anti_associative(&mul, al))))
        }
        Kind::Multiplicativity => {
            let mut r = CheckReport::new("multiplicativity");
            for (name, op) in a.products() {
                r.absorb(&format!("{name}:"), check_multiplicativity(op, al)?);
            }
            (
                r,
                Box::new(|| {
                    Ok(a.products()
                        .iter()
                        .flat_map(|(name, op)| {
                            prefixed(&format!("{name}:"), oracle::multiplicativity(op, al))
                        })
                        .collect())
                }),
            )
        }
        Kind::JacobiJordan | Kind::PreJacobiJordan => {
            let pre = args.kind == Kind::PreJacobiJordan;
            let op = derived_product(&a, pre)?;
            let r = if pre {
                check_pre_jacobi_jordan(&op, al)?
            } else {
                check_jacobi_jordan(&op, al)?
            };
            (
                r,
                Box::new(move || {
                    Ok(if pre {
                        oracle::pre_jacobi_jordan(&op, al)
                    } else {
                        oracle::jacobi_jordan(&op, al)
                    })
                }),
            )
        }
        Kind::Derivation => {
            let d = LinearMap::new(ctx.operator(args.operator.as_ref())?.matrix().clone())?;
            let name = args.product.clone();
            let r = check_alpha_derivation(&d, &a, &name)?;
            (
                r,
                Box::new(move || Ok(oracle::alpha_derivation(&d, &a, &name)?)),
            )
        }
        Kind::InnerDerivation => {
            let raw = args
                .element
                .as_deref()
                .ok_or_else(|| Fail::Input("--element is required".into()))?;
            let z = parse_element(raw, a.dim())?;
            let conv: AdConvention = args.convention.parse()?;
            let r = inner_derivation_report(&z, &a, conv)?;
            let d = inner_derivation(&z, &a, conv)?;
            (
                r,
                Box::new(move || {
                    let mut v = Verdict::new();
                    for name in a.products().keys() {
                        v.extend(oracle::alpha_derivation(&d, &a, name)?);
                    }
                    if a.products().len() > 1 {
                        v.extend(oracle::alpha_derivation(&d, &a, "star")?);
                    }
                    Ok(v)
                }),
            )
        }
        Kind::Bimodule => {
            let m = module_for(&a, &sum, args.module)?;
            let r = check_bimodule(&sum, &m)?;
            (r, Box::new(move || Ok(oracle::bimodule(&sum, &m)?)))
        }
        Kind::OOperator => {
            let m = module_for(&a, &sum, args.module)?;
            let t = ctx.operator(args.operator.as_ref())?;
            let r = check_o_operator(&t, &sum, &m)?;
            (r, Box::new(move || Ok(oracle::o_operator(&t, &sum, &m)?)))
        }
        Kind::RotaBaxter => {
            let r_op = ctx.operator(args.operator.as_ref())?;
            let r = check_rota_baxter(&r_op, &sum)?;
            (r, Box::new(move || Ok(oracle::rota_baxter(&r_op, &sum)?)))
        }
        Kind::Homomorphism => {
            let f = ctx.operator(args.operator.as_ref())?;
            let target = match &args.target {
                Some(p) => ctx.algebra(p)?,
                None => a.clone(),
            };
            let r = check_homomorphism(&f, &a, &target)?;
            (
                r,
                Box::new(move || Ok(oracle::homomorphism(&f, &a, &target)?)),
            )
        }
        Kind::TwoNilpotent => (
            check_2_nilpotent(&a)?,
            Box::new(|| Ok(oracle::two_nilpotent(&a)?)),
        ),
        Kind::Cocycle => {
            let b = ctx.form(args.form.as_ref())?;
            let r = check_scalar_cocycle(&a, &b)?;
            (r, Box::new(move || Ok(oracle::scalar_cocycle(&a, &b)?)))
        }
        Kind::Compatibility => {
            let b = ctx.form(args.form.as_ref())?;
            let r = check_cocycle_compatibility(&a, &b)?;
            (
                r,
                Box::new(move || Ok(oracle::cocycle_compatibility(&a, &b)?)),
            )
        }
    };
    let verdict = if ctx.oracle { Some(verdict()?) } else { None };
    Ok(render_reports(ctx, &[(report, verdict)]))
}

// ---------------------------------------------------------------------------
// cocycles
// ---------------------------------------------------------------------------

fn run_cocycles(ctx: &Ctx, args: &CocycleArgs) -> Run<Outcome> {
    let a = ctx.algebra(&args.file)?;
    let n = a.dim();
    let mut bad = Verdict::new();
    let text = if args.scalar || args.compatible {
        let (label, space) = if args.compatible {
            ("compatible", compatible_cocycle_space(&a)?)
        } else {
            ("scalar", scalar_cocycle_space(&a)?)
        };
        if ctx.oracle {
            for b in &space {
                bad.extend(oracle::scalar_cocycle(&a, b)?);
                if args.compatible {
                    bad.extend(oracle::cocycle_compatibility(&a, b)?);
                }
            }
        }
        if ctx.structured() {
            let basis: Vec<Value> = space
                .iter()
                .map(|b| json!({"matrix": b.matrix().to_strings(), "nondegenerate": is_nondegenerate(b)}))
                .collect();
            json_text(&json!({"kind": label, "dimension": space.len(), "basis": basis}))
        } else {
            let mut out = format!("{label} cocycles: dimension {}\n", space.len());
            for (t, b) in space.iter().enumerate() {
                let rows: Vec<String> = b
                    .matrix()
                    .to_strings()
                    .into_iter()
                    .map(|r| format!("[{}]", r.join(", ")))
                    .collect();
                let nd = if is_nondegenerate(b) {
                    "nondegenerate"
                } else {
                    "degenerate"
                };
                let _ = writeln!(out, "B{} = [{}] ({nd})", t + 1, rows.join(", "));
            }
            out
        }
    } else {
        let space = vector_cocycle_space(&a)?;
        if ctx.oracle {
            for w in &space {
                bad.extend(oracle::vector_cocycle(&a, w.coeffs())?);
            }
        }
        if ctx.structured() {
            let basis: Vec<Value> = space.iter().map(|w| w.to_value()).collect();
            json_text(&json!({
                "kind": "vector",
                "dimension": space.len(),
                "basis": basis,
                "general_element": describe_vector_space(&space, n),
            }))
        } else {
            let mut out = format!("vector cocycles: dimension {}\n", space.len());
            for line in describe_vector_space(&space, n) {
                let _ = writeln!(out, "{line}");
            }
            out
        }
    };
    let mut text = text;
    if ctx.oracle && !ctx.structured() {
        let _ = writeln!(
            text,
            "oracle: {}",
            if bad.is_empty() { "agree" } else { "DISAGREE" }
        );
    }
    Ok(Outcome {
        text,
        failed: false,
        oracle_disagrees: !bad.is_empty(),
    })
}

// ---------------------------------------------------------------------------
// nilpotency
// ---------------------------------------------------------------------------

fn series_value(s: &Series) -> Value {
    json!({"nilpotent": s.nilpotent, "index": s.index, "terms": s.terms})
}

fn render_series(out: &mut String, name: &str, s: &Series) {
    let verdict = match s.index {
        Some(k) => format!("nilpotent, index {k}"),
        None => "not nilpotent".into(),
    };
    let _ = writeln!(out, "{name} series: {verdict}");
    for (k, t) in s.terms.iter().enumerate() {
        let _ = writeln!(
            out,
            "  term {}: dim {} basis {:?}",
            k + 1,
            t.dim(),
            t.to_strings()
        );
    }
}

fn run_nilpotency(ctx: &Ctx, args: &NilpotencyArgs) -> Run<Outcome> {
    let a = ctx.algebra(&args.file)?;
    let series = [
        ("right", right_series(&a)?),
        ("left", left_series(&a)?),
        ("full", full_series(&a)?),
    ];
    let mut checks = vec![
        check_series_equality(&a)?,
        check_lemma_inclusions(&a, args.lemma_max)?,
    ];
    if a.succ().is_ok() {
        checks.push(check_onesided_nilpotency_theorem(&a)?);
    }
    let failed = checks.iter().any(|r| !r.passed());
    let lib = is_nilpotent(&a)?;
    let orc = if ctx.oracle {
        Some(oracle::nilpotency(&a)?)
    } else {
        None
    };
    let disagree = orc.is_some_and(|o| o != lib);
    let text = if ctx.structured() {
        let mut v = json!({
            "nilpotency": lib,
            "series": series.iter().map(|(n, s)| (n.to_string(), series_value(s))).collect::<serde_json::Map<_, _>>(),
            "checks": checks,
        });
        if let Some(o) = orc {
            v["oracle"] = json!({"agrees": o == lib, "oracle": o});
        }
        json_text(&v)
    } else {
        let mut out = String::new();
        for (name, s) in &series {
            render_series(&mut out, name, s);
        }
        for r in &checks {
            render_report(&mut out, r);
        }
        if let Some(o) = orc {
            let _ = writeln!(
                out,
                "oracle: {}",
                if o == lib { "agree" } else { "DISAGREE" }
            );
        }
        out
    };
    Ok(Outcome {
        text,
        failed,
        oracle_disagrees: disagree,
    })
}

// ---------------------------------------------------------------------------
// induce
// ---------------------------------------------------------------------------

fn run_induce(ctx: &Ctx, args: &InduceArgs) -> Run<Outcome> {
    let a = ctx.algebra(&args.file)?;
    let sum = as_mono(&a)?;
    let strict = ctx.strict;
    let out = match args.from {
        Source::RotaBaxter => {
            induced_rhizaform_from_rb(&ctx.operator(args.operator.as_ref())?, &sum, strict)?
        }
        Source::OOperator => {
            let m = module_for(&a, &sum, args.module)?;
            induced_rhizaform_from_o_operator(
                &ctx.operator(args.operator.as_ref())?,
                &sum,
                &m,
                strict,
            )?
        }
        Source::InvertibleOOperator => {
            let m = module_for(&a, &sum, args.module)?;
            compatible_from_invertible_o_operator(
                &ctx.operator(args.operator.as_ref())?,
                &sum,
                &m,
                strict,
            )?
        }
        Source::Cocycle => rhizaform_from_cocycle(&sum, &ctx.form(args.form.as_ref())?, strict)?,
        Source::Sum => sum_algebra(&a)?,
        Source::PreJacobiJordan => HomAlgebra::mono(derived_product(&a, true)?, a.alpha().clone())?,
        Source::Bracket => HomAlgebra::mono(derived_product(&a, false)?, a.alpha().clone())?,
    };
    let mut outcome = Outcome::plain(serialize_algebra(&out));
    if ctx.oracle && out.succ().is_ok() {
        let v = oracle::rhizaform(&out)?;
        let lib: Verdict = check_rhizaform(&out)?
            .failing_identities()
            .into_iter()
            .collect();
        outcome.oracle_disagrees = v != lib;
        if !ctx.structured() && v != lib {
            eprintln!("oracle: library {lib:?} vs oracle {v:?}");
        }
    }
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// family
// ---------------------------------------------------------------------------

fn run_family(ctx: &Ctx, args: &FamilyArgs) -> Run<Outcome> {
    let doc = parse_family(&ctx.read(&args.file)?, &ctx.params)?;
    let with = |v: Verdict| if ctx.oracle { Some(v) } else { None };
    match (doc, args.action) {
        (FamilyDocument::Rhizaform(f), FamilyAction::Check) => {
            let reports = vec![
                (check_semigroup(f.semigroup()), None),
                (
                    check_rhizaform_family(&f),
                    with(oracle::rhizaform_family(&f)),
                ),
            ];
            Ok(render_reports(ctx, &reports))
        }
        (FamilyDocument::Rhizaform(f), FamilyAction::Associated) => {
            let pair = associated_family(&f);
            let r = check_anti_associative_family(f.semigroup(), &pair, f.alpha())?;
            let v = with(oracle::anti_associative_family(
                f.semigroup(),
                &pair,
                f.alpha(),
            ));
            Ok(render_reports(ctx, &[(r, v)]))
        }
        (FamilyDocument::RotaBaxter { algebra, family }, FamilyAction::Check) => {
            let reports = vec![
                (check_semigroup(family.semigroup()), None),
                (
                    check_rb_family(&family, &algebra)?,
                    with(oracle::rb_family(&family, &algebra)?),
                ),
            ];
            Ok(render_reports(ctx, &reports))
        }
        (FamilyDocument::RotaBaxter { algebra, family }, FamilyAction::Induce) => {
            let f = induced_family_rhizaform(&family, &algebra, ctx.strict)?;
            let mut out = Outcome::plain(serialize_family(&f));
            if ctx.oracle {
                let lib: Verdict = check_rhizaform_family(&f)
                    .failing_identities()
                    .into_iter()
                    .collect();
                out.oracle_disagrees = lib != oracle::rhizaform_family(&f);
            }
            Ok(out)
        }
        (FamilyDocument::RotaBaxter { algebra, family }, FamilyAction::Collapse) => {
            let (big, r) = tensor_collapse(&algebra, &family)?;
            let report = check_rota_baxter(&r, &big)?;
            let mut out = Outcome {
                text: String::new(),
                failed: !report.passed(),
                oracle_disagrees: false,
            };
            if ctx.oracle {
                let lib: Verdict = report.failing_identities().into_iter().collect();
                out.oracle_disagrees = lib != oracle::rota_baxter(&r, &big)?;
            }
            let algebra_value: Value = serde_json::from_str(&serialize_algebra(&big))
                .expect("serialized algebras are json");
            out.text = if ctx.structured() {
                json_text(
                    &json!({"algebra": algebra_value, "R": r.matrix().to_strings(), "rota_baxter": report}),
                )
            } else {
                let mut t = serialize_algebra(&big);
                let rows: Vec<String> = r
                    .matrix()
                    .to_strings()
                    .into_iter()
                    .map(|row| format!("[{}]", row.join(", ")))
                    .collect();
                let _ = writeln!(t, "R = [{}]", rows.join(", "));
                render_report(&mut t, &report);
                t
            };
            Ok(out)
        }
        (FamilyDocument::Rhizaform(_), action) => Err(Fail::Input(format!(
            "--action {} needs a Rota-Baxter family file",
            action
                .to_possible_value()
                .expect("no skipped variants")
                .get_name()
        ))),
        (FamilyDocument::RotaBaxter { .. }, FamilyAction::Associated) => Err(Fail::Input(
            "--action associated needs a rhizaform family file".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

fn run_catalog(ctx: &Ctx, action: &CatalogAction) -> Run<Outcome> {
    match action {
        CatalogAction::List => {
            let ids = catalog::entry_ids();
            Ok(Outcome::plain(if ctx.structured() {
                json_text(&json!(ids))
            } else {
                ids.iter().map(|id| format!("{id}\n")).collect()
            }))
        }
        CatalogAction::Show { id } => {
            let a = catalog::load_entry(id, &ctx.params)?;
            Ok(Outcome::plain(serialize_algebra(&a)))
        }
        CatalogAction::Verify { dim, ids } => {
            let filter = CatalogFilter {
                dim: *dim,
                ids: ids.clone(),
            };
            let summary = catalog::verify_all(&filter, &ctx.params)?;
            Ok(Outcome {
                text: if ctx.structured() {
                    summary.to_json()
                } else {
                    summary.to_table()
                },
                failed: false,
                oracle_disagrees: !summary.ok(),
            })
        }
    }
}

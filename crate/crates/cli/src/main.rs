//! `qwmds`: compute, verify and export numerators of twisted quadratic
//! Weyl group multiple Dirichlet series.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwmds_core::globalseries::{
    zeta_factor_descriptor, AffineMap, GlobalSeries, Mod8Character, NumeratorCache,
};
use qwmds_core::numerator::{
    action_identity_check, coeff_fe_check, invariance_check, limiting_condition_check,
    numerator_streaming, solve_from_relations, stable_check, structural_check, support_check,
    CheckReport, LimitingReading, NumeratorJson, NumeratorResult, Polytope, TwistContext,
};
use qwmds_core::polyring::{LaurentPoly, PrettyStyle, TermKey};
use qwmds_core::rootsys::{enumerate_weyl_capped, Family, RootSystem, DEFAULT_GROUP_CAP};
use qwmds_core::Error;
use serde::Serialize;

/// Directory for memoized numerators, shared across runs.
const CACHE_ENV: &str = "QWMDS_CACHE_DIR";

const EXIT_VERIFY: u8 = 2;
const EXIT_CONFIG: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "qwmds", version, about = "Numerators of twisted quadratic Weyl group multiple Dirichlet series")]
struct Cli {
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Refuse Weyl groups larger than this.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_CAP)]
    group_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root system data: Cartan matrix, positive roots, Weyl group order.
    Roots {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute N(x; l).
    Numerator {
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Term order for text output.
        #[arg(long, value_enum, default_value_t = Style::Colex)]
        style: Style,
        /// Write the support and the polytope's lattice points as JSON.
        #[arg(long)]
        emit_support: Option<PathBuf>,
    },
    /// Run the structural checks on a computed or supplied numerator.
    Verify {
        #[command(flatten)]
        twist: TwistArgs,
        /// Read N from a JSON file written by `numerator --format json`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Comma-separated subset of: structure, support, fe, action, stable, invariance, limiting.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckName>,
        /// Add DELTA x^LAMBDA before checking, as `LAMBDA:DELTA`, e.g. `2,2:1`.
        #[arg(long)]
        perturb: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rebuild N from the coefficient relations alone, seeded by a(0) = 1.
    SolveUntwisted {
        #[command(flatten)]
        system: SystemArgs,
        /// Twist to solve for; only l = 0 is guaranteed to be determined.
        #[arg(long, value_delimiter = ',')]
        ell: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Style::Colex)]
        style: Style,
    },
    /// Table of global coefficients H(m; t) and Z-coefficients.
    Global {
        #[command(flatten)]
        system: SystemArgs,
        /// Odd positive twisting integers t_1, ..., t_r.
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<u64>,
        /// Largest m_i.
        #[arg(long)]
        bound: u64,
        /// Characters psi_i from triv, mod4, mod8p, mod8m (default all triv).
        #[arg(long = "char", value_delimiter = ',')]
        chars: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The normalizing zeta factor and the affine maps on s.
    Zeta {
        #[command(flatten)]
        system: SystemArgs,
    },
}

#[derive(Args, Debug, Clone)]
struct SystemArgs {
    /// A, D or E.
    #[arg(long)]
    family: String,
    #[arg(long)]
    rank: usize,
}

#[derive(Args, Debug, Clone)]
struct TwistArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Twisting parameter l_1, ..., l_r.
    #[arg(long, value_delimiter = ',', required = true)]
    ell: Vec<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Style {
    Colex,
    Graded,
}

impl From<Style> for PrettyStyle {
    fn from(s: Style) -> Self {
        match s {
            Style::Colex => PrettyStyle::Colex,
            Style::Graded => PrettyStyle::Graded,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CheckName {
    Structure,
    Support,
    Fe,
    Action,
    Stable,
    Invariance,
    Limiting,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::GroupTooLarge { .. } | Error::ExponentOverflow => EXIT_RESOURCE,
            Error::NotDivisible(_)
            | Error::Structural(_)
            | Error::NotUniquelyDetermined { .. }
            | Error::PolarAtZero { .. }
            | Error::MixedSignDenominator(_)
            | Error::OddIntegerCoefficient => EXIT_VERIFY,
            _ => EXIT_CONFIG,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn config(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn root_system(args: &SystemArgs) -> Result<RootSystem, Failure> {
    let family: Family = args.family.parse()?;
    Ok(RootSystem::new(family, args.rank)?)
}

fn context(rs: &RootSystem, ell: &[u32], cap: usize) -> Result<TwistContext, Failure> {
    if ell.len() != rs.rank() {
        return Err(Error::TwistLength {
            got: ell.len(),
            expected: rs.rank(),
        }
        .into());
    }
    let group = enumerate_weyl_capped(rs, cap)?;
    Ok(TwistContext::with_group(Arc::new(group), ell)?)
}

fn cache() -> NumeratorCache {
    match std::env::var_os(CACHE_ENV) {
        Some(dir) if !dir.is_empty() => NumeratorCache::with_dir(dir),
        _ => NumeratorCache::new(),
    }
}

fn compute(rs: &RootSystem, ell: &[u32], cap: usize) -> Result<NumeratorResult, Failure> {
    let ctx = context(rs, ell, cap)?;
    let n = cache().get(rs, ell)?;
    Ok(NumeratorResult::from_poly(&ctx, n.n().clone())?)
}

fn print_json(value: &impl Serialize) {
    let text = serde_json::to_string_pretty(value).expect("output serializes");
    println!("{text}");
}

fn cmd_roots(system: &SystemArgs, format: Format) -> CmdResult {
    let rs = root_system(system)?;
    match format {
        Format::Json => {
            #[derive(Serialize)]
            #[serde(rename_all = "camelCase")]
            struct Roots {
                #[serde(flatten)]
                descriptor: qwmds_core::rootsys::RootSystemDescriptor,
                weyl_order: String,
                positive_roots: Vec<Vec<i64>>,
                heights: Vec<i64>,
            }
            print_json(&Roots {
                descriptor: rs.descriptor(),
                weyl_order: rs.weyl_order().to_string(),
                positive_roots: rs.positive_roots().to_vec(),
                heights: rs.heights().to_vec(),
            });
        }
        Format::Text | Format::Csv => {
            println!(
                "{}: rank {}, |W| = {}, {} positive roots",
                rs.name(),
                rs.rank(),
                rs.weyl_order(),
                rs.positive_roots().len()
            );
            println!("Cartan matrix:");
            for row in rs.cartan() {
                let cells: Vec<String> = row.iter().map(|c| format!("{c:>2}")).collect();
                println!("  {}", cells.join(" "));
            }
            println!("positive roots (root coordinates, height):");
            for (a, h) in rs.positive_roots().iter().zip(rs.heights()) {
                println!("  {a:?} {h}");
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SupportExport {
    root_system: String,
    ell: Vec<u32>,
    vertices: Vec<Vec<i64>>,
    lattice_points: Vec<Vec<i64>>,
    support: Vec<Vec<i64>>,
}

fn emit_support(res: &NumeratorResult, path: &PathBuf) -> Result<(), Failure> {
    let poly = Polytope::new(res.ctx());
    let mut vertices = poly.vertices().to_vec();
    vertices.sort();
    vertices.dedup();
    let export = SupportExport {
        root_system: res.ctx().rs().name(),
        ell: res.ctx().ell().to_vec(),
        vertices,
        lattice_points: poly.lattice_points(),
        support: res.support(),
    };
    let text = serde_json::to_string_pretty(&export).expect("support serializes");
    std::fs::write(path, text + "\n").map_err(|e| config(format!("{}: {e}", path.display())))
}

fn print_numerator(json: NumeratorJson, text: String, format: Format) {
    match format {
        Format::Json => print_json(&json),
        Format::Csv => {
            let r = json.n.first().map_or(0, |t| t.x.len());
            let header: Vec<String> = (1..=r).map(|i| format!("x{i}")).chain(["t".into(), "c".into()]).collect();
            println!("{}", header.join(","));
            for term in &json.n {
                let mut row: Vec<String> = term.x.iter().map(|e| e.to_string()).collect();
                row.push(term.t.to_string());
                row.push(term.c.to_string());
                println!("{}", row.join(","));
            }
        }
        Format::Text => println!("{text}"),
    }
}

fn cmd_numerator(cli: &Cli, twist: &TwistArgs, format: Format, style: Style, support: Option<&PathBuf>) -> CmdResult {
    let rs = root_system(&twist.system)?;
    if rs.family() == Family::E && rs.rank() >= 7 {
        // Streams over W without storing it; needs the experimental feature.
        if support.is_some() {
            return Err(config("--emit-support needs the Weyl group, unavailable for E7/E8"));
        }
        let n = numerator_streaming(&rs, &twist.ell)?;
        let json = NumeratorJson {
            schema: qwmds_core::numerator::NUMERATOR_SCHEMA.into(),
            root_system: rs.name(),
            ell: twist.ell.clone(),
            monomials: n.support().len(),
            n: n.to_json_terms(),
        };
        print_numerator(json, n.pretty(style.into()), format);
        return Ok(0);
    }
    let res = compute(&rs, &twist.ell, cli.group_cap)?;
    if let Some(path) = support {
        emit_support(&res, path)?;
    }
    print_numerator(res.to_json(), res.n().pretty(style.into()), format);
    Ok(0)
}

/// Parses `LAMBDA:DELTA`, e.g. `2,2:1`.
fn parse_perturbation(spec: &str, rank: usize) -> Result<LaurentPoly, Failure> {
    let bad = || config(format!("--perturb expects LAMBDA:DELTA such as 2,2:1, got {spec:?}"));
    let (lambda, delta) = spec.split_once(':').ok_or_else(bad)?;
    let lambda: Vec<i64> = lambda
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let delta: i128 = delta.trim().parse().map_err(|_| bad())?;
    if lambda.len() != rank {
        return Err(bad());
    }
    Ok(LaurentPoly::monomial(rank, TermKey::new(&lambda, 0), delta))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct VerifyReport {
    root_system: String,
    ell: Vec<u32>,
    #[serde(rename = "N")]
    n: Vec<qwmds_core::polyring::JsonTerm>,
    passed: bool,
    checks: Vec<CheckReport>,
}

fn cmd_verify(
    cli: &Cli,
    twist: &TwistArgs,
    input: Option<&PathBuf>,
    selected: &[CheckName],
    perturb: Option<&str>,
    format: Format,
) -> CmdResult {
    let rs = root_system(&twist.system)?;
    let ctx = context(&rs, &twist.ell, cli.group_cap)?;
    let mut res = match input {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| config(format!("{}: {e}", path.display())))?;
            let json: NumeratorJson =
                serde_json::from_str(&text).map_err(|e| config(format!("{}: {e}", path.display())))?;
            NumeratorResult::from_json(&ctx, &json)?
        }
        None => compute(&rs, &twist.ell, cli.group_cap)?,
    };
    if let Some(spec) = perturb {
        let bump = parse_perturbation(spec, rs.rank())?;
        res = NumeratorResult::from_poly(&ctx, res.n() + &bump)?;
    }
    let all = [
        CheckName::Structure,
        CheckName::Support,
        CheckName::Fe,
        CheckName::Action,
        CheckName::Stable,
        CheckName::Invariance,
        CheckName::Limiting,
    ];
    let selected: Vec<CheckName> = all
        .into_iter()
        .filter(|c| selected.is_empty() || selected.contains(c))
        .collect();
    let checks: Vec<CheckReport> = selected
        .iter()
        .map(|c| match c {
            CheckName::Structure => structural_check(&res),
            CheckName::Support => support_check(&res),
            CheckName::Fe => coeff_fe_check(&res),
            CheckName::Action => action_identity_check(&res),
            CheckName::Stable => stable_check(&res),
            CheckName::Invariance => invariance_check(&res),
            CheckName::Limiting => {
                let mut rep = limiting_condition_check(&res, LimitingReading::ParitySwapped);
                let literal = limiting_condition_check(&res, LimitingReading::AsStated);
                rep.notes.push(format!(
                    "with m_i = 1 for odd l_i instead: {}",
                    if literal.passed { "holds" } else { "fails" }
                ));
                rep
            }
        })
        .collect();
    let passed = checks.iter().all(|c| c.passed);
    match format {
        Format::Json => print_json(&VerifyReport {
            root_system: rs.name(),
            ell: twist.ell.clone(),
            n: res.n().to_json_terms(),
            passed,
            checks,
        }),
        Format::Text | Format::Csv => {
            let failed = checks.iter().filter(|c| !c.passed).count();
            println!("{}: {} checks, {} failed", ctx.label(), checks.len(), failed);
            for c in &checks {
                let verdict = if c.passed { "PASS" } else { "FAIL" };
                print!("{verdict} {} ({} instances)", c.name, c.checked);
                if let Some(f) = &c.first_failure {
                    print!(": {f}");
                }
                println!();
                for note in &c.notes {
                    println!("     {note}");
                }
            }
        }
    }
    Ok(if passed { 0 } else { EXIT_VERIFY })
}

fn cmd_solve(cli: &Cli, system: &SystemArgs, ell: Option<&[u32]>, format: Format, style: Style) -> CmdResult {
    let rs = root_system(system)?;
    let zero = vec![0; rs.rank()];
    let ctx = context(&rs, ell.unwrap_or(&zero), cli.group_cap)?;
    let res = solve_from_relations(&ctx)?;
    print_numerator(res.to_json(), res.n().pretty(style.into()), format);
    Ok(0)
}

fn cmd_global(system: &SystemArgs, t: &[u64], bound: u64, chars: &[String], format: Format) -> CmdResult {
    let rs = root_system(system)?;
    let psi: Vec<Mod8Character> = if chars.is_empty() {
        vec![Mod8Character::Trivial; rs.rank()]
    } else {
        chars.iter().map(|c| c.parse()).collect::<Result<_, _>>()?
    };
    let series = GlobalSeries::with_cache(&rs, t, Arc::new(cache()))?;
    let table = series.z_coefficients(&psi, bound)?;
    match format {
        Format::Json => print_json(&table.to_json()),
        Format::Csv => print!("{}", table.to_csv()),
        Format::Text => {
            let psi: Vec<&str> = psi.iter().map(|c| c.label()).collect();
            println!(
                "{} t={:?} psi=({}) bound {}: {} coefficients",
                rs.name(),
                t,
                psi.join(","),
                bound,
                table.entries.len()
            );
            for e in table.entries.iter().filter(|e| !e.is_zero()) {
                println!("  m={:?} H={} Z={}", e.m, e.h, e.z);
            }
        }
    }
    Ok(0)
}

fn cmd_zeta(system: &SystemArgs) -> CmdResult {
    let rs = root_system(system)?;
    #[derive(Serialize)]
    struct Map {
        node: usize,
        matrix: Vec<Vec<String>>,
        offset: Vec<String>,
    }
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Zeta {
        root_system: String,
        zeta_factors: Vec<qwmds_core::globalseries::ZetaForm>,
        functional_equations: Vec<Map>,
    }
    let maps = (0..rs.rank())
        .map(|j| {
            let m = AffineMap::functional_equation(&rs, j);
            Map {
                node: j + 1,
                matrix: m.matrix.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect(),
                offset: m.offset.iter().map(|c| c.to_string()).collect(),
            }
        })
        .collect();
    print_json(&Zeta {
        root_system: rs.name(),
        zeta_factors: zeta_factor_descriptor(&rs),
        functional_equations: maps,
    });
    Ok(0)
}

fn run(cli: &Cli) -> CmdResult {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| config(format!("--threads: {e}")))?;
    }
    match &cli.command {
        Command::Roots { system, format } => cmd_roots(system, *format),
        Command::Numerator { twist, format, style, emit_support } => {
            cmd_numerator(cli, twist, *format, *style, emit_support.as_ref())
        }
        Command::Verify { twist, input, checks, perturb, format } => {
            cmd_verify(cli, twist, input.as_ref(), checks, perturb.as_deref(), *format)
        }
        Command::SolveUntwisted { system, ell, format, style } => {
            cmd_solve(cli, system, ell.as_deref(), *format, *style)
        }
        Command::Global { system, t, bound, chars, format } => cmd_global(system, t, *bound, chars, *format),
        Command::Zeta { system } => cmd_zeta(system),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => {
            let _ = std::io::stdout().flush();
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

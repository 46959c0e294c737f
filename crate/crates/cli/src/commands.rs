//! Subcommand drivers. Each returns `Ok(passed)`; errors are usage or input
//! problems and map to exit code 2.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use braided_osc::braidtensor::exchange_relations;
use braided_osc::coeffield::{parse_coeff, parse_rational, print_coeff, CoeffError, RatFunc};
use braided_osc::fockrep::{
    occupation_table, occupations_csv, relation_residual, residuals_csv, Degenerate, FockConfig, FockParams, Gauge,
    OccupationRow, RelationResidual,
};
use braided_osc::hopfstruct::{check_axioms, AxiomReport, Catalog, HopfSolution, HopfStructure, Mode};
use braided_osc::solvesearch::{
    check_generic, enumerate_solutions, generate_constraints, match_catalog, BranchOrder, CatalogMatch,
    ConstraintConfig, EnumerationReport, OscillatorType, SearchBounds,
};
use num_rational::BigRational;
use serde::Serialize;

use crate::report::RunReport;
use crate::{DeriveArgs, ExchangeArgs, FockArgs, GaugeArg, Order, VerifyArgs};

/// Tolerance for the floating (hermitian) Fock gauge.
const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] braided_osc::Error),
    #[error("{0}")]
    Coeff(#[from] CoeffError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn load_catalog(path: Option<&Path>) -> CliResult<Catalog> {
    Ok(match path {
        Some(p) => Catalog::load(p)?,
        None => Catalog::builtin()?,
    })
}

fn split_assignment(text: &str) -> CliResult<(&str, &str)> {
    text.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .filter(|(k, v)| !k.is_empty() && !v.is_empty())
        .ok_or_else(|| usage(format!("expected NAME=VALUE, got '{text}'")))
}

fn rational(text: &str) -> CliResult<BigRational> {
    Ok(parse_rational(text)?)
}

fn emit<T: Serialize>(report: &RunReport<T>, out: Option<&Path>) -> CliResult<()> {
    if let Some(path) = out {
        report.write(path)?;
    }
    Ok(())
}

// ---------------------------------------------------------------- verify

/// Applies `--set` substitutions, then `--override` replacements.
fn prepare(sol: &HopfSolution, sets: &[String], overrides: &[String]) -> CliResult<HopfSolution> {
    let mut out = sol.clone();
    for s in sets {
        let (name, expr) = split_assignment(s)?;
        let table = &out.indeterminates;
        let idx = table
            .index_of(name)
            .ok_or_else(|| usage(format!("{}: no symbol '{name}'", sol.label())))?;
        let value = parse_coeff(expr, table)?;
        let mut values: Vec<Option<RatFunc>> = vec![None; table.len()];
        values[idx] = Some(value);
        out = out.map_coeffs(|c| c.substitute_all(&values))?;
        out.free_symbols.retain(|f| f != name);
        out.default_assignment.remove(name);
    }
    for o in overrides {
        let (name, expr) = split_assignment(o)?;
        let value = parse_coeff(expr, &out.indeterminates)?;
        out.set_constant(name, value)?;
    }
    Ok(out)
}

/// The solution's default point with user values merged over it. A value
/// for a square-root composite (e.g. `Q1`) displaces the default of its root.
fn numeric_point(sol: &HopfSolution, user: &BTreeMap<String, BigRational>) -> BTreeMap<String, BigRational> {
    let mut point = sol.default_assignment.clone();
    for name in user.keys() {
        if let Some(&root) = sol.indeterminates.sqrt_aliases().get(name) {
            point.remove(sol.indeterminates.name(root));
        }
    }
    point.extend(user.iter().map(|(k, v)| (k.clone(), v.clone())));
    point
}

fn parse_numeric(text: &str) -> CliResult<BTreeMap<String, BigRational>> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = split_assignment(part)?;
        out.insert(k.to_string(), rational(v)?);
    }
    Ok(out)
}

pub fn verify(args: &VerifyArgs) -> CliResult<bool> {
    let catalog = load_catalog(args.catalog.as_deref())?;
    if args.solution.is_some() && args.table.is_none() {
        return Err(usage("--solution requires --table"));
    }
    let selected: Vec<&HopfSolution> = match (&args.table, &args.solution) {
        (Some(t), Some(s)) => vec![catalog.solution(t, s)?],
        (Some(t), None) => catalog.table(t)?.solutions.iter().collect(),
        (None, _) => catalog.solutions().collect(),
    };
    let user_point = args.numeric.as_deref().map(parse_numeric).transpose()?;

    let mut reports: Vec<AxiomReport> = Vec::with_capacity(selected.len());
    for sol in selected {
        let work = prepare(sol, &args.sets, &args.overrides)?;
        let mode = match &user_point {
            None => Mode::Symbolic,
            Some(user) => Mode::Numeric(numeric_point(&work, user)),
        };
        let report = check_axioms(&work, &mode)?;
        print!("{}", render_verify(&report));
        reports.push(report);
    }
    let passed = reports.iter().all(|r| r.passed);
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!(
        "{} solution(s) checked, {} passed, {} failed",
        reports.len(),
        reports.len() - failed,
        failed
    );
    let mode = if user_point.is_some() { "numeric" } else { "symbolic" };
    let report = RunReport::new("verify", mode, Some(catalog.version), passed, reports);
    emit(&report, args.out.as_deref())?;
    Ok(passed)
}

fn render_verify(r: &AxiomReport) -> String {
    let mut s = String::new();
    let total = r.checks.len();
    let failures: Vec<_> = r.failures().collect();
    let status = if r.passed { "PASS" } else { "FAIL" };
    let _ = writeln!(
        s,
        "table {} sol {} [{}]: {status} ({}/{total} checks)",
        r.table,
        r.solution,
        r.mode,
        total - failures.len()
    );
    for f in failures {
        let _ = writeln!(
            s,
            "  {}({}): residual {}",
            f.axiom,
            f.arguments,
            f.residual.as_deref().unwrap_or("?")
        );
    }
    s
}

// ---------------------------------------------------------------- derive

#[derive(Serialize)]
struct DeriveResult {
    family: &'static str,
    q: String,
    q1: String,
    order: BranchOrder,
    forced: bool,
    complete: bool,
    solution_count: usize,
    irrational_components: usize,
    catalog_table: &'static str,
    skipped_candidates: Vec<String>,
    matches: CatalogMatch,
    enumeration: EnumerationReport,
}

pub fn derive(args: &DeriveArgs) -> CliResult<bool> {
    let (kind, family, table_id, default_q1) = if args.type1 {
        (OscillatorType::Type1, "type1", "1", "9/4")
    } else {
        (OscillatorType::Type2, "type2", "3", "3")
    };
    let q = rational(&args.q)?;
    let q1 = rational(args.q1.as_deref().unwrap_or(default_q1))?;
    if let Err(e) = check_generic(kind, &q, &q1) {
        if !args.force {
            return Err(usage(format!("{e}; pass --force to enumerate anyway")));
        }
        eprintln!("warning: {e}; proceeding because of --force");
    }
    let catalog = load_catalog(args.catalog.as_deref())?;
    let system = generate_constraints(&ConstraintConfig::numeric(kind, q.clone(), q1.clone()))?;
    let order = match args.order {
        Order::Ascending => BranchOrder::Ascending,
        Order::Descending => BranchOrder::Descending,
    };
    let bounds = SearchBounds { max_nodes: args.max_nodes, ..SearchBounds::default() };
    let enumeration = enumerate_solutions(&system, bounds, order);

    let point: BTreeMap<String, BigRational> = [("q".to_string(), q.clone()), ("Q1".to_string(), q1.clone())].into();
    let mut candidates = Vec::new();
    let mut skipped = Vec::new();
    for sol in &catalog.table(table_id)?.solutions {
        match sol.instantiate(&point) {
            Ok(c) => candidates.push(c),
            Err(e) => skipped.push(format!("{}: {e}", sol.label())),
        }
    }
    let matches = match_catalog(&system, &enumeration, &candidates)?;
    let n = enumeration.solutions.len();
    let complete = enumeration.complete();
    let passed = complete && skipped.is_empty() && matches.all_matched();

    if matches.all_matched() {
        println!("{n} solutions, all matched");
    } else {
        let unmatched = matches.matched.iter().filter(|m| m.is_none()).count();
        println!("{n} solutions, {unmatched} without a catalog match");
    }
    for (i, (sol, m)) in enumeration.solutions.iter().zip(&matches.matched).enumerate() {
        match m {
            Some(label) => println!("  solution {}: {label}", i + 1),
            None => {
                println!("  solution {}: no catalog match", i + 1);
                for (k, v) in sol.render(&system.table) {
                    println!("    {k} = {v}");
                }
            }
        }
    }
    for c in &matches.unmatched_candidates {
        println!("  catalog entry not found: {c}");
    }
    for s in &skipped {
        println!("  catalog entry not instantiable here: {s}");
    }
    if !enumeration.irrational.is_empty() {
        println!("  {} irrational component(s) (not counted)", enumeration.irrational.len());
    }
    if !complete {
        println!(
            "  incomplete: {} unresolved, {} abandoned branch(es)",
            enumeration.unresolved.len(),
            enumeration.abandoned.len()
        );
    }

    let result = DeriveResult {
        family,
        q: q.to_string(),
        q1: q1.to_string(),
        order,
        forced: args.force,
        complete,
        solution_count: n,
        irrational_components: enumeration.irrational.len(),
        catalog_table: table_id,
        skipped_candidates: skipped,
        matches,
        enumeration: EnumerationReport::new(&system, &enumeration),
    };
    let report = RunReport::new("derive", "numeric", Some(catalog.version), passed, result);
    emit(&report, args.out.as_deref())?;
    Ok(passed)
}

// ---------------------------------------------------------------- fock

#[derive(Serialize)]
struct FockResult {
    family: &'static str,
    q: String,
    q1: String,
    levels: u32,
    gauge: Gauge,
    limit: bool,
    occupations: Vec<OccupationRow>,
    relations: Vec<RelationResidual>,
}

fn fock_params(args: &FockArgs) -> CliResult<FockParams> {
    let q = rational(&args.q)?;
    let need = |v: &Option<String>, flag: &str| {
        v.as_deref()
            .ok_or_else(|| usage(format!("{flag} is required for this family")))
            .and_then(rational)
    };
    Ok(if args.type1 {
        FockParams::type1(q, need(&args.p_inv_sq, "--p-inv-sq")?)?
    } else if args.type2 {
        FockParams::type2(q, need(&args.p_inv, "--p-inv")?)?
    } else if args.bm1 {
        FockParams::bm1(q)?
    } else {
        FockParams::bm2(q)?
    })
}

pub fn fock(args: &FockArgs) -> CliResult<bool> {
    let params = fock_params(args)?;
    let degenerate = if args.limit { Degenerate::Limit } else { Degenerate::Error };
    let gauge = match args.gauge {
        GaugeArg::Exact => Gauge::Exact,
        GaugeArg::Hermitian => Gauge::Hermitian,
    };
    let rows = occupation_table(&params, args.levels, degenerate)?;
    let cfg = FockConfig::new(params.clone(), args.levels as usize, gauge)?;
    let relations = relation_residual(&cfg)?;
    let passed = rows.iter().all(|r| r.agree) && relations.iter().all(|r| r.holds(HERMITIAN_TOL));

    if args.csv {
        print!("{}", occupations_csv(&rows)?);
        println!();
        print!("{}", residuals_csv(&relations)?);
    } else {
        let occ: Vec<&str> = rows.iter().map(|r| r.closed.as_str()).collect();
        println!("{} q={} Q1={} levels={}", params.family, params.q, params.q1, args.levels);
        println!("occupations {}", occ.join(","));
        for r in &rows {
            let mark = if r.agree { "ok" } else { "MISMATCH" };
            println!("  [{}] closed={} recursive={} {mark}", r.n, r.closed, r.recursive);
        }
        for r in &relations {
            let interior = r.interior_exact.clone().unwrap_or_else(|| format!("{:e}", r.interior));
            let mark = if r.holds(HERMITIAN_TOL) { "ok" } else { "FAIL" };
            println!(
                "  {}: interior {interior} {mark}; boundary {:e} (truncation)",
                r.relation, r.boundary
            );
        }
    }

    let result = FockResult {
        family: params.family.name(),
        q: params.q.to_string(),
        q1: params.q1.to_string(),
        levels: args.levels,
        gauge,
        limit: args.limit,
        occupations: rows,
        relations,
    };
    let mode = match gauge {
        Gauge::Exact => "exact",
        Gauge::Hermitian => "hermitian",
    };
    let report = RunReport::new("fock", mode, None, passed, result);
    emit(&report, args.out.as_deref())?;
    Ok(passed)
}

// ---------------------------------------------------------------- exchange

#[derive(Serialize)]
struct ExchangeResult {
    table: String,
    solution: String,
    z: String,
    relations: Vec<String>,
}

pub fn exchange(args: &ExchangeArgs) -> CliResult<bool> {
    let catalog = load_catalog(args.catalog.as_deref())?;
    let sol = catalog.solution(&args.table, &args.solution)?;
    let table = sol.indeterminates.clone();
    let structure = HopfStructure::new(sol.clone());
    let relations = exchange_relations(structure.braider(), &table)?;
    println!("z = {}", print_coeff(&sol.braid.z, &table));
    for r in &relations {
        println!("{r}");
    }
    let result = ExchangeResult {
        table: sol.table.clone(),
        solution: sol.solution.clone(),
        z: print_coeff(&sol.braid.z, &table),
        relations,
    };
    let report = RunReport::new("exchange", "symbolic", Some(catalog.version), true, result);
    emit(&report, args.out.as_deref())?;
    Ok(true)
}

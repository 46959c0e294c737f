//! The machine-readable solution catalog.
//!
//! The catalog is a TOML document (schema described at the top of
//! `data/catalog.toml`). It is validated on load: every constant must name a
//! real structure constant, parse against its table's indeterminates and
//! survive a print/parse round trip.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num_rational::BigRational;
use serde::Deserialize;

use super::{HopfSolution, CONSTANT_NAMES};
use crate::coeffield::{parse_coeff, parse_rational, print_coeff, IndetTable, RatFunc};
use crate::error::{Error, Result};
use crate::oscalg::OscillatorParams;

/// The catalog shipped with the crate.
pub const BUILTIN_CATALOG: &str = include_str!("../../data/catalog.toml");

const SUPPORTED_VERSION: u32 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    version: u32,
    #[serde(default)]
    table: Vec<RawTable>,
    #[serde(default)]
    derived: Vec<RawDerived>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    id: String,
    title: String,
    indeterminates: Vec<String>,
    #[serde(default)]
    sqrt_aliases: BTreeMap<String, String>,
    #[serde(default)]
    numeric: BTreeMap<String, String>,
    oscillator: RawOscillator,
    #[serde(default)]
    common: BTreeMap<String, String>,
    solution: Vec<RawSolution>,
}

#[derive(Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct RawOscillator {
    q: String,
    #[serde(rename = "Q1")]
    q1: String,
    #[serde(rename = "Q2")]
    q2: String,
    #[serde(rename = "Q3")]
    q3: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolution {
    id: String,
    #[serde(default)]
    free_symbols: Vec<String>,
    oscillator: Option<RawOscillator>,
    constants: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SolutionSelector {
    All(String),
    List(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDerived {
    id: String,
    title: String,
    base: String,
    solutions: SolutionSelector,
    indeterminates: Vec<String>,
    #[serde(default)]
    numeric: BTreeMap<String, String>,
    substitute: BTreeMap<String, String>,
}

/// One table of solutions sharing indeterminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogTable {
    pub id: String,
    pub title: String,
    pub indeterminates: IndetTable,
    pub numeric: BTreeMap<String, BigRational>,
    /// Base table id for tables obtained by substitution.
    pub derived_from: Option<String>,
    pub solutions: Vec<HopfSolution>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub version: u32,
    pub tables: Vec<CatalogTable>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Catalog(msg.into())
}

impl Catalog {
    pub fn builtin() -> Result<Catalog> {
        Catalog::from_toml_str(BUILTIN_CATALOG)
    }

    pub fn load(path: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| bad(format!("{}: {e}", path.display())))?;
        Catalog::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Catalog> {
        let raw: RawCatalog = toml::from_str(text).map_err(|e| bad(e.to_string()))?;
        if raw.version != SUPPORTED_VERSION {
            return Err(bad(format!(
                "unsupported catalog version {} (expected {SUPPORTED_VERSION})",
                raw.version
            )));
        }
        let mut tables = Vec::new();
        for t in &raw.table {
            tables.push(build_table(t)?);
        }
        for d in &raw.derived {
            let base = tables
                .iter()
                .find(|t| t.id == d.base && t.derived_from.is_none())
                .ok_or_else(|| bad(format!("derived table '{}': no base table '{}'", d.id, d.base)))?;
            let derived = build_derived(d, base)?;
            tables.push(derived);
        }
        let mut seen = BTreeSet::new();
        for t in &tables {
            if !seen.insert(t.id.clone()) {
                return Err(bad(format!("duplicate table id '{}'", t.id)));
            }
        }
        Ok(Catalog {
            version: raw.version,
            tables,
        })
    }

    pub fn table(&self, id: &str) -> Result<&CatalogTable> {
        self.tables
            .iter()
            .find(|t| t.id == id)
            .ok_or_else(|| Error::UnknownTable(id.to_string()))
    }

    pub fn solution(&self, table: &str, solution: &str) -> Result<&HopfSolution> {
        self.table(table)?
            .solutions
            .iter()
            .find(|s| s.solution == solution)
            .ok_or_else(|| Error::UnknownSolution {
                table: table.to_string(),
                solution: solution.to_string(),
            })
    }

    /// Every solution, base tables first.
    pub fn solutions(&self) -> impl Iterator<Item = &HopfSolution> {
        self.tables.iter().flat_map(|t| t.solutions.iter())
    }

    /// Solutions transcribed directly from the tables (no derived entries).
    pub fn base_solutions(&self) -> impl Iterator<Item = &HopfSolution> {
        self.tables
            .iter()
            .filter(|t| t.derived_from.is_none())
            .flat_map(|t| t.solutions.iter())
    }
}

/// Every solution of the built-in catalog, derived entries included.
pub fn catalog() -> Result<Vec<HopfSolution>> {
    Ok(Catalog::builtin()?.solutions().cloned().collect())
}

fn indet_table(names: &[String], aliases: &BTreeMap<String, String>, ctx: &str) -> Result<IndetTable> {
    let mut table = IndetTable::new(names).map_err(|e| bad(format!("{ctx}: {e}")))?;
    for (composite, root) in aliases {
        table = table
            .with_sqrt_alias(composite, root)
            .map_err(|e| bad(format!("{ctx}: {e}")))?;
    }
    Ok(table)
}

fn numeric(
    raw: &BTreeMap<String, String>,
    table: &IndetTable,
    ctx: &str,
) -> Result<BTreeMap<String, BigRational>> {
    let mut out = BTreeMap::new();
    for (k, v) in raw {
        if table.index_of(k).is_none() && table.sqrt_root_of(k).is_none() {
            return Err(bad(format!("{ctx}: numeric value for unknown symbol '{k}'")));
        }
        let r = parse_rational(v).map_err(|e| bad(format!("{ctx}: numeric {k}: {e}")))?;
        out.insert(k.clone(), r);
    }
    table
        .index_assignment(&out)
        .map_err(|e| bad(format!("{ctx}: {e}")))?;
    Ok(out)
}

/// Parses a catalog value and checks that printing and re-parsing reproduces it.
fn value(text: &str, table: &IndetTable, ctx: &str) -> Result<RatFunc> {
    let v = parse_coeff(text, table).map_err(|e| bad(format!("{ctx}: '{text}': {e}")))?;
    let again = parse_coeff(&print_coeff(&v, table), table)
        .map_err(|e| bad(format!("{ctx}: round trip of '{text}': {e}")))?;
    if again != v {
        return Err(bad(format!("{ctx}: '{text}' does not round-trip")));
    }
    Ok(v)
}

fn oscillator(raw: &RawOscillator, table: &IndetTable, ctx: &str) -> Result<OscillatorParams> {
    let v = |s: &str| value(s, table, ctx);
    OscillatorParams::new(v(&raw.q)?, v(&raw.q1)?, v(&raw.q2)?, v(&raw.q3)?, RatFunc::zero())
}

fn set_named(sol: &mut HopfSolution, name: &str, v: RatFunc, ctx: &str) -> Result<()> {
    if !CONSTANT_NAMES.contains(&name) {
        return Err(bad(format!("{ctx}: '{name}' is not a structure constant")));
    }
    sol.set_constant(name, v)
}

fn build_table(raw: &RawTable) -> Result<CatalogTable> {
    let ctx = format!("table {}", raw.id);
    let indets = indet_table(&raw.indeterminates, &raw.sqrt_aliases, &ctx)?;
    let numeric = numeric(&raw.numeric, &indets, &ctx)?;
    if raw.solution.is_empty() {
        return Err(bad(format!("{ctx}: no solutions")));
    }
    let mut solutions = Vec::new();
    let mut ids = BTreeSet::new();
    for s in &raw.solution {
        let sctx = format!("{ctx} sol {}", s.id);
        if !ids.insert(s.id.clone()) {
            return Err(bad(format!("{sctx}: duplicate solution id")));
        }
        let osc = oscillator(s.oscillator.as_ref().unwrap_or(&raw.oscillator), &indets, &sctx)?;
        let mut sol = HopfSolution::with_forced_constants(&raw.id, &s.id, indets.clone(), osc);
        for (name, text) in raw.common.iter().chain(s.constants.iter()) {
            let v = value(text, &indets, &format!("{sctx} {name}"))?;
            set_named(&mut sol, name, v, &sctx)?;
        }
        for f in &s.free_symbols {
            if indets.index_of(f).is_none() {
                return Err(bad(format!("{sctx}: free symbol '{f}' is not an indeterminate")));
            }
        }
        sol.free_symbols = s.free_symbols.clone();
        sol.default_assignment = numeric.clone();
        solutions.push(sol);
    }
    Ok(CatalogTable {
        id: raw.id.clone(),
        title: raw.title.clone(),
        indeterminates: indets,
        numeric,
        derived_from: None,
        solutions,
    })
}

fn build_derived(raw: &RawDerived, base: &CatalogTable) -> Result<CatalogTable> {
    let ctx = format!("derived table {}", raw.id);
    let indets = indet_table(&raw.indeterminates, &BTreeMap::new(), &ctx)?;
    let numeric = numeric(&raw.numeric, &indets, &ctx)?;
    let base_names = base.indeterminates.names();
    let mut mapping: Vec<Option<RatFunc>> = vec![None; base_names.len()];
    for (name, text) in &raw.substitute {
        let i = base
            .indeterminates
            .index_of(name)
            .ok_or_else(|| bad(format!("{ctx}: '{name}' is not an indeterminate of table {}", base.id)))?;
        mapping[i] = Some(value(text, &indets, &format!("{ctx} {name}"))?);
    }
    for (i, name) in base_names.iter().enumerate() {
        if mapping[i].is_none() {
            if let Some(j) = indets.index_of(name) {
                mapping[i] = Some(RatFunc::var(j));
            }
        }
    }
    let selected: Vec<&HopfSolution> = match &raw.solutions {
        SolutionSelector::All(s) if s == "all" => base.solutions.iter().collect(),
        SolutionSelector::All(s) => return Err(bad(format!("{ctx}: solutions must be \"all\" or a list, got '{s}'"))),
        SolutionSelector::List(ids) => ids
            .iter()
            .map(|id| {
                base.solutions
                    .iter()
                    .find(|s| &s.solution == id)
                    .ok_or_else(|| bad(format!("{ctx}: no solution {id} in table {}", base.id)))
            })
            .collect::<Result<_>>()?,
    };
    let mut solutions = Vec::new();
    for s in selected {
        let sctx = format!("{ctx} sol {}", s.solution);
        let mut out = s.map_coeffs(|c| {
            for v in c.variables() {
                if mapping[v].is_none() {
                    return Err(crate::coeffield::CoeffError::MissingSymbol(base_names[v].clone()));
                }
            }
            let full: Vec<Option<RatFunc>> = mapping
                .iter()
                .map(|m| Some(m.clone().unwrap_or_else(RatFunc::zero)))
                .collect();
            c.substitute_all(&full)
        })
        .map_err(|e| bad(format!("{sctx}: {e}")))?;
        out.table = raw.id.clone();
        out.indeterminates = indets.clone();
        out.free_symbols
            .retain(|f| !raw.substitute.contains_key(f) && indets.index_of(f).is_some());
        out.default_assignment = numeric.clone();
        solutions.push(out);
    }
    Ok(CatalogTable {
        id: raw.id.clone(),
        title: raw.title.clone(),
        indeterminates: indets,
        numeric,
        derived_from: Some(base.id.clone()),
        solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads() {
        let c = Catalog::builtin().unwrap();
        let counts: Vec<(String, usize)> =
            c.tables.iter().map(|t| (t.id.clone(), t.solutions.len())).collect();
        let expect = [("1", 6), ("3", 2), ("5", 5), ("4", 7), ("bm1", 6), ("bm2", 2), ("lit", 1)];
        assert_eq!(
            counts,
            expect.iter().map(|(a, b)| (a.to_string(), *b)).collect::<Vec<_>>()
        );
        assert_eq!(c.base_solutions().count(), 20);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(Catalog::from_toml_str("version = 2"), Err(Error::Catalog(_))));
        let doc = BUILTIN_CATALOG.replace("k1 = \"-Q1/q\"", "k9 = \"-Q1/q\"");
        assert!(matches!(Catalog::from_toml_str(&doc), Err(Error::Catalog(_))));
        let doc = BUILTIN_CATALOG.replace("b2 = \"(q^2-Q1)/Q1\"", "b2 = \"(q^2-Q1)/\"");
        assert!(matches!(Catalog::from_toml_str(&doc), Err(Error::Catalog(_))));
        let doc = BUILTIN_CATALOG.replace("d1 = \"1/Q1\"", "d1 = \"1/w\"");
        assert!(matches!(Catalog::from_toml_str(&doc), Err(Error::Catalog(_))));
    }

    #[test]
    fn lookups() {
        let c = Catalog::builtin().unwrap();
        assert!(matches!(c.table("9"), Err(Error::UnknownTable(_))));
        assert!(matches!(c.solution("1", "7"), Err(Error::UnknownSolution { .. })));
        let lit = c.solution("lit", "5").unwrap();
        assert!(lit.free_symbols.is_empty());
        let t = &lit.indeterminates;
        assert_eq!(lit.braid.z, parse_coeff("q^2", t).unwrap());
    }
}

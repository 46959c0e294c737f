//! Re-derivation of the solution tables: the polynomial constraint system of
//! the general ansatz, symbolic residual checks of catalogued solutions, and
//! case-splitting enumeration at generic numeric parameters.
//!
//! Every structure constant (and every oscillator parameter not fixed by the
//! [`ConstraintConfig`]) is an unknown. The axioms are expanded on generator
//! arguments and each coefficient of the normal-ordered residual becomes one
//! polynomial equation.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::braidtensor::PeelOrder;
use crate::coeffield::{print_coeff, rational_sqrt, IndetTable, Monomial, Poly, RatFunc};
use crate::error::{Error, Result};
use crate::hopfstruct::{
    residuals, Axiom, CheckId, HopfSolution, HopfStructure, CONSTANT_NAMES, OSCILLATOR_NAMES,
};
use crate::oscalg::OscillatorParams;

/// Which oscillator relation is fixed: type 1 sets `Q2 = 1`, type 2 sets `Q3 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OscillatorType {
    Type1,
    Type2,
}

/// Unknowns fixed to exact values; everything else stays an unknown.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintConfig {
    pub fixed: BTreeMap<String, BigRational>,
}

impl ConstraintConfig {
    /// Nothing fixed: `q`, `Q1..Q4` and all structure constants are unknowns.
    pub fn symbolic() -> Self {
        ConstraintConfig::default()
    }

    /// `q`, `Q1` fixed, the type's own parameter set to 1, the other two `Q`s free.
    pub fn numeric(kind: OscillatorType, q: BigRational, q1: BigRational) -> Self {
        let one = BigRational::one();
        let mut fixed = BTreeMap::from([("q".to_string(), q), ("Q1".to_string(), q1)]);
        match kind {
            OscillatorType::Type1 => fixed.insert("Q2".into(), one),
            OscillatorType::Type2 => fixed.insert("Q3".into(), one),
        };
        ConstraintConfig { fixed }
    }

    pub fn fix(mut self, name: &str, value: BigRational) -> Result<Self> {
        if !is_unknown_name(name) {
            return Err(Error::UnknownConstant(name.to_string()));
        }
        self.fixed.insert(name.to_string(), value);
        Ok(self)
    }

    /// Unknown names, structure constants first, in canonical order.
    pub fn unknowns(&self) -> Vec<&'static str> {
        CONSTANT_NAMES
            .iter()
            .chain(OSCILLATOR_NAMES.iter())
            .copied()
            .filter(|n| !self.fixed.contains_key(*n))
            .collect()
    }
}

fn is_unknown_name(name: &str) -> bool {
    CONSTANT_NAMES.contains(&name) || OSCILLATOR_NAMES.contains(&name)
}

/// Rejects parameters on the degeneracy loci `Q1 ∈ {0, q², −q², q, −q, 1}`;
/// type 1 additionally needs a rational `sqrt(Q1)`.
pub fn check_generic(kind: OscillatorType, q: &BigRational, q1: &BigRational) -> Result<()> {
    if q.is_zero() {
        return Err(Error::ZeroQ);
    }
    let q2 = q * q;
    let loci = [
        (BigRational::zero(), "0"),
        (q2.clone(), "q^2"),
        (-q2, "-q^2"),
        (q.clone(), "q"),
        (-q.clone(), "-q"),
        (BigRational::one(), "1"),
    ];
    if let Some((_, name)) = loci.iter().find(|(v, _)| v == q1) {
        return Err(Error::NonGeneric(format!("Q1 = {name}")));
    }
    if kind == OscillatorType::Type1 && rational_sqrt(q1).is_none() {
        return Err(Error::NonGeneric(format!("sqrt(Q1) = sqrt({q1}) is not rational")));
    }
    Ok(())
}

/// One polynomial equation `poly = 0` with the checks that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub poly: Poly,
    pub sources: Vec<CheckId>,
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub config: ConstraintConfig,
    pub table: IndetTable,
    /// Distinct equations (primitive, positive leading coefficient) in canonical order.
    pub equations: Vec<Equation>,
}

impl ConstraintSystem {
    pub fn render(&self, poly: &Poly) -> String {
        poly.render(self.table.names())
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }
}

fn canonical(p: &Poly) -> Poly {
    p.primitive().sign_normalized()
}

/// Expands the ansatz through every axiom family except the star conditions
/// and collects the coefficient equations. The braiding is peeled right-first,
/// the opposite of the axiom checker's default.
pub fn generate_constraints(config: &ConstraintConfig) -> Result<ConstraintSystem> {
    for name in config.fixed.keys() {
        if !is_unknown_name(name) {
            return Err(Error::UnknownConstant(name.clone()));
        }
    }
    let table = IndetTable::new(&config.unknowns())?;
    let value = |name: &str| -> Result<RatFunc> {
        Ok(match config.fixed.get(name) {
            Some(v) => RatFunc::from_rational(v),
            None => table.symbol(name)?,
        })
    };
    let osc = OscillatorParams::new(value("q")?, value("Q1")?, value("Q2")?, value("Q3")?, value("Q4")?)?;
    let mut sol = HopfSolution::with_forced_constants("ansatz", "ansatz", table.clone(), osc.clone());
    sol.oscillator = osc;
    for name in CONSTANT_NAMES {
        sol.set_constant(name, value(name)?)?;
    }
    let h = HopfStructure::with_order(sol, PeelOrder::RightFirst);
    let mut collected: BTreeMap<Poly, Vec<CheckId>> = BTreeMap::new();
    for (id, res) in residuals(&h)? {
        if matches!(id.axiom, Axiom::StarCoproduct | Axiom::StarAntipode) {
            continue;
        }
        for c in res.coefficients() {
            let p = canonical(c.numer());
            if !p.is_zero() {
                collected.entry(p).or_default().push(id.clone());
            }
        }
    }
    let equations = collected
        .into_iter()
        .map(|(poly, sources)| Equation { poly, sources })
        .collect();
    Ok(ConstraintSystem { config: config.clone(), table, equations })
}

/// A nonzero residual of one equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub equation: String,
    pub sources: Vec<String>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualCheck {
    pub table: String,
    pub solution: String,
    pub equations: usize,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

fn solution_value(sol: &HopfSolution, name: &str) -> Result<RatFunc> {
    let o = &sol.oscillator;
    Ok(match name {
        "q" => o.q.clone(),
        "Q1" => o.q1.clone(),
        "Q2" => o.q2.clone(),
        "Q3" => o.q3.clone(),
        "Q4" => o.q4.clone(),
        _ => sol.constant(name)?.clone(),
    })
}

/// Substitutes every unknown by the solution's value (an expression over the
/// solution's own symbols) and reports the equations that do not vanish.
pub fn residual_check(system: &ConstraintSystem, sol: &HopfSolution) -> Result<ResidualCheck> {
    for (name, v) in &system.config.fixed {
        if solution_value(sol, name)? != RatFunc::from_rational(v) {
            return Err(Error::Search(format!(
                "{} has {name} = {}, but the system fixes {name} = {v}",
                sol.label(),
                print_coeff(&solution_value(sol, name)?, &sol.indeterminates)
            )));
        }
    }
    let values: Vec<Option<RatFunc>> = system
        .table
        .names()
        .iter()
        .map(|n| solution_value(sol, n).map(Some))
        .collect::<Result<_>>()?;
    let witnesses: Vec<Witness> = system
        .equations
        .par_iter()
        .map(|eq| -> Result<Option<Witness>> {
            let r = RatFunc::from_poly(eq.poly.clone()).substitute_all(&values)?;
            Ok((!r.is_zero()).then(|| Witness {
                equation: system.render(&eq.poly),
                sources: eq.sources.iter().map(source_label).collect(),
                residual: print_coeff(&r, &sol.indeterminates),
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(ResidualCheck {
        table: sol.table.clone(),
        solution: sol.solution.clone(),
        equations: system.equations.len(),
        passed: witnesses.is_empty(),
        witnesses,
    })
}

fn source_label(id: &CheckId) -> String {
    format!("{}({})", id.axiom.name(), id.arguments)
}

/// Limits on the elimination tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_nodes: usize,
    pub max_depth: usize,
    /// Largest integer whose divisors are enumerated in the rational-root search.
    pub max_root_search: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_nodes: 200_000, max_depth: 200, max_root_search: 1 << 40 }
    }
}

/// Variable preference when an equation offers several eliminable unknowns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchOrder {
    #[default]
    Ascending,
    Descending,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedSolution {
    /// Value of every unknown, over the system's table (free unknowns map to themselves).
    pub values: BTreeMap<String, RatFunc>,
    pub free: Vec<String>,
}

impl EnumeratedSolution {
    pub fn value(&self, name: &str) -> Option<&RatFunc> {
        self.values.get(name)
    }

    pub fn render(&self, table: &IndetTable) -> BTreeMap<String, String> {
        self.values.iter().map(|(k, v)| (k.clone(), print_coeff(v, table))).collect()
    }
}

/// A branch the solver could not decide; its solutions (if any) are missing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unresolved {
    pub reason: String,
    pub equations: Vec<String>,
}

/// A consistent branch whose remaining unknowns are roots of polynomials
/// without rational roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrrationalSolution {
    pub minimal_polynomials: Vec<String>,
    pub assignments: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abandoned {
    pub reason: String,
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub solutions: Vec<EnumeratedSolution>,
    /// Solution components with irrational coordinates (not rational solutions).
    pub irrational: Vec<IrrationalSolution>,
    pub unresolved: Vec<Unresolved>,
    pub abandoned: Vec<Abandoned>,
    pub nodes: usize,
}

impl Enumeration {
    /// True when every branch was decided: the solution list is complete
    /// over the rationals.
    pub fn complete(&self) -> bool {
        self.unresolved.is_empty() && self.abandoned.is_empty()
    }
}

#[derive(Clone, Debug)]
struct Assignment {
    var: usize,
    num: Poly,
    den: Poly,
}

#[derive(Clone, Debug)]
struct Node {
    eqs: Vec<Poly>,
    assign: Vec<Assignment>,
    nonzero: Vec<Poly>,
    nonzero_vars: BTreeSet<usize>,
    /// Unknowns constrained only by a univariate polynomial without rational
    /// roots; other equations are kept reduced modulo it.
    algebraic: Vec<(usize, Poly)>,
    depth: usize,
}

#[derive(Default)]
struct Outcome {
    leaves: Vec<Vec<Assignment>>,
    irrational: Vec<IrrationalSolution>,
    unresolved: Vec<Unresolved>,
    abandoned: Vec<Abandoned>,
}

impl Outcome {
    fn merge(mut self, other: Outcome) -> Outcome {
        self.leaves.extend(other.leaves);
        self.irrational.extend(other.irrational);
        self.unresolved.extend(other.unresolved);
        self.abandoned.extend(other.abandoned);
        self
    }
}

struct Solver<'a> {
    system: &'a ConstraintSystem,
    bounds: SearchBounds,
    order: BranchOrder,
    nodes: AtomicUsize,
}

/// All rational solutions of the system by case-splitting elimination.
///
/// At each node the first applicable rule is used, on equations sorted by
/// (terms, degree): a linear unknown with constant coefficient is eliminated;
/// a common unknown factor `x` splits into `x = 0 | x ≠ 0`; a univariate
/// equation branches on its rational roots; a linear unknown with polynomial
/// coefficient `c` splits into `c = 0 | x = −rest/c`; repeated factors are
/// removed. A univariate factor without rational roots adjoins its unknown as
/// an algebraic number. Anything else is reported as unresolved.
pub fn enumerate_solutions(system: &ConstraintSystem, bounds: SearchBounds, order: BranchOrder) -> Enumeration {
    let solver = Solver { system, bounds, order, nodes: AtomicUsize::new(0) };
    let root = Node {
        eqs: system.equations.iter().map(|e| e.poly.clone()).collect(),
        assign: Vec::new(),
        nonzero: Vec::new(),
        nonzero_vars: BTreeSet::new(),
        algebraic: Vec::new(),
        depth: 0,
    };
    let outcome = solver.solve(root);
    let mut unresolved = outcome.unresolved;
    let mut unique: BTreeMap<String, EnumeratedSolution> = BTreeMap::new();
    for leaf in outcome.leaves {
        match solver.back_substitute(&leaf) {
            Ok(sol) => {
                let key = format!("{:?}", sol.render(&system.table));
                unique.entry(key).or_insert(sol);
            }
            Err(reason) => unresolved.push(Unresolved { reason, equations: Vec::new() }),
        }
    }
    Enumeration {
        solutions: unique.into_values().collect(),
        irrational: outcome.irrational,
        unresolved,
        abandoned: outcome.abandoned,
        nodes: solver.nodes.load(Ordering::Relaxed),
    }
}

impl Solver<'_> {
    fn render(&self, p: &Poly) -> String {
        self.system.render(p)
    }

    fn vars(&self, p: &Poly) -> Vec<usize> {
        let mut v = p.variables();
        if self.order == BranchOrder::Descending {
            v.reverse();
        }
        v
    }

    fn solve(&self, node: Node) -> Outcome {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if count > self.bounds.max_nodes {
            return Outcome {
                abandoned: vec![Abandoned { reason: "node bound".into(), depth: node.depth }],
                ..Outcome::default()
            };
        }
        if node.depth > self.bounds.max_depth {
            return Outcome {
                abandoned: vec![Abandoned { reason: "depth bound".into(), depth: node.depth }],
                ..Outcome::default()
            };
        }
        let Some(node) = normalize(node) else {
            return Outcome::default();
        };
        if node.eqs.is_empty() {
            if node.algebraic.is_empty() {
                return Outcome { leaves: vec![node.assign], ..Outcome::default() };
            }
            let irrational = IrrationalSolution {
                minimal_polynomials: node.algebraic.iter().map(|(_, f)| self.render(f)).collect(),
                assignments: node
                    .assign
                    .iter()
                    .map(|a| format!("{} = ({})/({})", self.system.table.name(a.var), self.render(&a.num), self.render(&a.den)))
                    .collect(),
            };
            return Outcome { irrational: vec![irrational], ..Outcome::default() };
        }
        let eqs = &node.eqs;

        // linear with constant coefficient
        for e in eqs {
            for x in self.vars(e) {
                if e.degree_in(x) == 1 {
                    let cs = e.coefficients_in(x);
                    if cs[1].is_constant() {
                        return self.solve(substitute(&node, x, &cs[0].neg(), &cs[1], None));
                    }
                }
            }
        }
        // common unknown factor
        for e in eqs {
            let content = e.monomial_content();
            if let Some((x, _)) = self.first_support(&content) {
                let zero = substitute(&node, x, &Poly::zero(), &Poly::one(), None);
                let mut nonzero = node.clone();
                nonzero.depth += 1;
                nonzero.nonzero_vars.insert(x);
                nonzero.nonzero.push(Poly::var(x));
                return self.branch(vec![zero, nonzero]);
            }
        }
        // univariate
        for e in eqs {
            let vs = e.variables();
            if vs.len() == 1 && !node.algebraic.iter().any(|(v, _)| *v == vs[0]) {
                let x = vs[0];
                let (roots, leftover) = match rational_roots(e, x, self.bounds.max_root_search) {
                    Ok(r) => r,
                    Err(reason) => {
                        return Outcome {
                            unresolved: vec![Unresolved { reason, equations: vec![self.render(e)] }],
                            ..Outcome::default()
                        }
                    }
                };
                let mut children: Vec<Node> = roots
                    .iter()
                    .map(|r| {
                        let num = Poly::constant(r.numer().clone());
                        let den = Poly::constant(r.denom().clone());
                        substitute(&node, x, &num, &den, None)
                    })
                    .collect();
                if leftover.degree_in(x) > 0 {
                    let mut adjoined = node.clone();
                    adjoined.depth += 1;
                    adjoined.algebraic.push((x, canonical(&leftover)));
                    children.push(adjoined);
                }
                return self.branch(children);
            }
        }
        // linear with polynomial coefficient
        for e in eqs {
            for x in self.vars(e) {
                if e.degree_in(x) == 1 {
                    let cs = e.coefficients_in(x);
                    let mut vanishing = node.clone();
                    vanishing.depth += 1;
                    vanishing.eqs.push(cs[1].clone());
                    let solved = substitute(&node, x, &cs[0].neg(), &cs[1], Some(cs[1].clone()));
                    return self.branch(vec![vanishing, solved]);
                }
            }
        }
        // repeated factors: e / gcd(e, ∂e/∂x) has the same zeros
        for (i, e) in eqs.iter().enumerate() {
            for x in self.vars(e) {
                if e.degree_in(x) < 2 {
                    continue;
                }
                let g = e.gcd(&derivative(e, x));
                if !g.is_constant() {
                    let mut reduced = node.clone();
                    reduced.depth += 1;
                    reduced.eqs[i] = e.div_exact(&g).expect("gcd divides");
                    return self.solve(reduced);
                }
            }
        }
        Outcome {
            unresolved: vec![Unresolved {
                reason: "no eliminable unknown".into(),
                equations: eqs.iter().take(6).map(|e| self.render(e)).collect(),
            }],
            ..Outcome::default()
        }
    }

    fn first_support(&self, m: &Monomial) -> Option<(usize, u32)> {
        let mut s: Vec<_> = m.support().collect();
        if self.order == BranchOrder::Descending {
            s.reverse();
        }
        s.into_iter().next()
    }

    fn branch(&self, children: Vec<Node>) -> Outcome {
        children
            .into_par_iter()
            .map(|c| self.solve(c))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Outcome::default(), Outcome::merge)
    }

    /// Resolves the assignment chain into values and verifies them against
    /// every original equation.
    fn back_substitute(&self, assign: &[Assignment]) -> std::result::Result<EnumeratedSolution, String> {
        let table = &self.system.table;
        let mut values: Vec<Option<RatFunc>> = vec![None; table.len()];
        for a in assign.iter().rev() {
            let v = RatFunc::new(a.num.clone(), a.den.clone())
                .and_then(|v| v.substitute_all(&values))
                .map_err(|e| format!("back-substitution of {}: {e}", table.name(a.var)))?;
            values[a.var] = Some(v);
        }
        let free: Vec<String> = (0..table.len())
            .filter(|i| values[*i].is_none())
            .map(|i| table.name(i).to_string())
            .collect();
        for eq in &self.system.equations {
            let r = RatFunc::from_poly(eq.poly.clone())
                .substitute_all(&values)
                .map_err(|e| format!("verification: {e}"))?;
            if !r.is_zero() {
                return Err(format!("verification failed on {}", self.render(&eq.poly)));
            }
        }
        let values = (0..table.len())
            .map(|i| {
                let v = values[i].clone().unwrap_or_else(|| RatFunc::var(i));
                (table.name(i).to_string(), v)
            })
            .collect();
        Ok(EnumeratedSolution { values, free })
    }
}

/// `x := num/den` everywhere, with `den ≠ 0` recorded if it is not constant.
fn substitute(node: &Node, x: usize, num: &Poly, den: &Poly, nonzero: Option<Poly>) -> Node {
    let apply = |p: &Poly| p.substitute_fraction(x, num, den);
    let mut nz: Vec<Poly> = node.nonzero.iter().map(apply).collect();
    nz.extend(nonzero);
    let mut assign = node.assign.clone();
    assign.push(Assignment { var: x, num: num.clone(), den: den.clone() });
    let mut eqs: Vec<Poly> = node.eqs.iter().map(apply).collect();
    let mut algebraic = Vec::new();
    for (v, f) in &node.algebraic {
        if *v == x || num.contains_var(*v) || den.contains_var(*v) {
            eqs.push(apply(f));
        } else {
            algebraic.push((*v, f.clone()));
        }
    }
    Node {
        eqs,
        assign,
        nonzero: nz,
        nonzero_vars: node.nonzero_vars.clone(),
        algebraic,
        depth: node.depth + 1,
    }
}

/// Canonicalizes a node; `None` when it is inconsistent.
fn normalize(mut node: Node) -> Option<Node> {
    // Univariate equations in an adjoined unknown refine its polynomial by gcd.
    loop {
        let mut changed = false;
        let mut eqs = Vec::with_capacity(node.eqs.len());
        for e in std::mem::take(&mut node.eqs) {
            let e = reduce_all(&e, &node.algebraic);
            let vs = e.variables();
            let slot = match vs.as_slice() {
                [v] => node.algebraic.iter().position(|(a, _)| a == v),
                _ => None,
            };
            let Some(i) = slot else {
                eqs.push(e);
                continue;
            };
            let (x, f) = node.algebraic[i].clone();
            let g = canonical(&f.gcd(&e));
            if g.is_constant() {
                return None;
            }
            if g.degree_in(x) == 1 {
                node.algebraic.remove(i);
                eqs.push(g);
                changed = true;
            } else if g != f {
                node.algebraic[i].1 = g;
                changed = true;
            }
        }
        node.eqs = eqs;
        if !changed {
            break;
        }
    }
    let mut nonzero = Vec::with_capacity(node.nonzero.len());
    for p in &node.nonzero {
        let p = &reduce_all(p, &node.algebraic);
        if p.is_zero() {
            return None;
        }
        if !p.is_constant() {
            nonzero.push(canonical(p));
        }
    }
    nonzero.sort();
    nonzero.dedup();
    let mut eqs = Vec::with_capacity(node.eqs.len());
    for e in &node.eqs {
        if e.is_zero() {
            continue;
        }
        let content = e.monomial_content();
        let strip: Vec<u32> = (0..content.exps().len())
            .map(|i| if node.nonzero_vars.contains(&i) { content.exp(i) } else { 0 })
            .collect();
        let stripped = if strip.iter().any(|d| *d > 0) {
            e.div_exact(&Poly::monomial(Monomial::from_exps(strip), BigInt::one()))
                .expect("monomial content divides")
        } else {
            e.clone()
        };
        let c = canonical(&stripped);
        if c.is_constant() || nonzero.binary_search(&c).is_ok() {
            return None;
        }
        eqs.push(c);
    }
    eqs.sort_by(|a, b| (a.len(), a.total_degree(), a).cmp(&(b.len(), b.total_degree(), b)));
    eqs.dedup();
    node.eqs = eqs;
    node.nonzero = nonzero;
    Some(node)
}

fn derivative(p: &Poly, x: usize) -> Poly {
    let cs = p.coefficients_in(x);
    let ds: Vec<Poly> = cs.iter().enumerate().skip(1).map(|(k, c)| c.scale(&BigInt::from(k))).collect();
    Poly::from_coefficients_in(x, &ds)
}

fn reduce_all(p: &Poly, algebraic: &[(usize, Poly)]) -> Poly {
    algebraic.iter().fold(p.clone(), |r, (x, f)| reduce_mod(&r, *x, f))
}

/// Remainder of `p` modulo the univariate `f` in `x`, scaled by a power of
/// `f`'s (constant) leading coefficient to stay integral.
fn reduce_mod(p: &Poly, x: usize, f: &Poly) -> Poly {
    let m = f.degree_in(x);
    let lc = f.coefficients_in(x)[m as usize]
        .as_constant()
        .expect("adjoined polynomial is univariate");
    let mut r = p.clone();
    while r.degree_in(x) >= m && !r.is_zero() {
        let d = r.degree_in(x);
        let cd = r.coefficients_in(x)[d as usize].clone();
        let shift = Poly::monomial(Monomial::var(x, d - m), BigInt::one());
        r = r.scale(&lc).sub(&f.mul(&cd).mul(&shift));
    }
    r
}

/// Rational roots of a univariate integer polynomial and the cofactor left
/// after dividing out all of them.
fn rational_roots(p: &Poly, x: usize, bound: u64) -> std::result::Result<(Vec<BigRational>, Poly), String> {
    let coeffs: Vec<BigInt> = p
        .coefficients_in(x)
        .iter()
        .map(|c| c.as_constant().unwrap_or_default())
        .collect();
    let low = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let trimmed = &coeffs[low..];
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(BigRational::zero());
    }
    if trimmed.len() > 1 {
        let a0 = trimmed[0].abs();
        let an = trimmed[trimmed.len() - 1].abs();
        let limit = BigInt::from(bound);
        if a0 > limit || an > limit {
            return Err(format!("rational-root search beyond bound {bound}"));
        }
        for num in divisors(&a0) {
            for den in divisors(&an) {
                for sign in [1, -1] {
                    let r = BigRational::new(&num * sign, den.clone());
                    if !roots.contains(&r) && horner(trimmed, &r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    let mut rest = p.clone();
    for r in &roots {
        let lin = Poly::var(x)
            .scale(r.denom())
            .sub(&Poly::constant(r.numer().clone()));
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
        }
    }
    Ok((roots, rest))
}

fn horner(coeffs: &[BigInt], r: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * r + BigRational::from_integer(c.clone()))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let root = n.sqrt();
    let mut d = BigInt::one();
    while d <= root {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// How each enumerated solution relates to the candidate list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogMatch {
    /// Per enumerated solution, the label of the matching candidate.
    pub matched: Vec<Option<String>>,
    /// Candidates matched by no enumerated solution.
    pub unmatched_candidates: Vec<String>,
}

impl CatalogMatch {
    pub fn all_matched(&self) -> bool {
        self.matched.iter().all(Option::is_some) && self.unmatched_candidates.is_empty()
    }
}

/// Compares enumerated values with (numerically instantiated) catalog solutions
/// on every unknown of the system.
pub fn match_catalog(
    system: &ConstraintSystem,
    enumeration: &Enumeration,
    candidates: &[HopfSolution],
) -> Result<CatalogMatch> {
    let names = system.table.names();
    let mut candidate_values = Vec::with_capacity(candidates.len());
    for c in candidates {
        let vals: Vec<Option<BigRational>> = names
            .iter()
            .map(|n| solution_value(c, n).map(|v| v.as_rational()))
            .collect::<Result<_>>()?;
        candidate_values.push(vals);
    }
    let mut used = vec![false; candidates.len()];
    let matched = enumeration
        .solutions
        .iter()
        .map(|s| {
            let vals: Vec<Option<BigRational>> = names.iter().map(|n| s.values[n].as_rational()).collect();
            let hit = candidate_values
                .iter()
                .position(|cv| vals.iter().all(Option::is_some) && *cv == vals);
            hit.map(|i| {
                used[i] = true;
                candidates[i].label()
            })
        })
        .collect();
    let unmatched_candidates = candidates
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|(c, _)| c.label())
        .collect();
    Ok(CatalogMatch { matched, unmatched_candidates })
}

/// Serializable summary of an enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub fixed: BTreeMap<String, String>,
    pub unknowns: usize,
    pub equations: usize,
    pub nodes: usize,
    pub solutions: Vec<BTreeMap<String, String>>,
    pub free: Vec<Vec<String>>,
    pub unresolved: Vec<Unresolved>,
    pub abandoned: Vec<Abandoned>,
}

impl EnumerationReport {
    pub fn new(system: &ConstraintSystem, e: &Enumeration) -> Self {
        EnumerationReport {
            fixed: system.config.fixed.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            unknowns: system.table.len(),
            equations: system.equations.len(),
            nodes: e.nodes,
            solutions: e.solutions.iter().map(|s| s.render(&system.table)).collect(),
            free: e.solutions.iter().map(|s| s.free.clone()).collect(),
            unresolved: e.unresolved.clone(),
            abandoned: e.abandoned.clone(),
        }
    }
}

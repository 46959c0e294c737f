//! Residual-based verification of the braided Hopf axioms.
//!
//! Every map is defined from its generator values by (braided)
//! (anti)homomorphic extension, so it suffices to check each axiom on
//! generators, generator pairs or triples (as its arity demands), plus that
//! each map respects the three defining relations. Each check produces a
//! residual `lhs − rhs` that must vanish identically.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{star, star_tensor, HopfSolution, HopfStructure};
use crate::braidtensor::TensorElement;
use crate::coeffield::{print_coeff, IndetTable, RatFunc};
use crate::error::Result;
use crate::oscalg::{AlgElement, Gen};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Unit,
    Associativity,
    Coassociativity,
    CounitLeft,
    CounitRight,
    AntipodeLeft,
    AntipodeRight,
    HexagonLeft,
    HexagonRight,
    BraidCoproductLeft,
    BraidCoproductRight,
    CoproductMultiplicative,
    AntipodeAntimultiplicative,
    CoproductAntipode,
    CounitMultiplicative,
    YangBaxter,
    WellDefined,
    StarCoproduct,
    StarAntipode,
}

impl Axiom {
    pub const ALL: [Axiom; 19] = [
        Axiom::Unit,
        Axiom::Associativity,
        Axiom::Coassociativity,
        Axiom::CounitLeft,
        Axiom::CounitRight,
        Axiom::AntipodeLeft,
        Axiom::AntipodeRight,
        Axiom::HexagonLeft,
        Axiom::HexagonRight,
        Axiom::BraidCoproductLeft,
        Axiom::BraidCoproductRight,
        Axiom::CoproductMultiplicative,
        Axiom::AntipodeAntimultiplicative,
        Axiom::CoproductAntipode,
        Axiom::CounitMultiplicative,
        Axiom::YangBaxter,
        Axiom::WellDefined,
        Axiom::StarCoproduct,
        Axiom::StarAntipode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Unit => "unit",
            Axiom::Associativity => "associativity",
            Axiom::Coassociativity => "coassociativity",
            Axiom::CounitLeft => "counit_left",
            Axiom::CounitRight => "counit_right",
            Axiom::AntipodeLeft => "antipode_left",
            Axiom::AntipodeRight => "antipode_right",
            Axiom::HexagonLeft => "hexagon_left",
            Axiom::HexagonRight => "hexagon_right",
            Axiom::BraidCoproductLeft => "braid_coproduct_left",
            Axiom::BraidCoproductRight => "braid_coproduct_right",
            Axiom::CoproductMultiplicative => "coproduct_multiplicative",
            Axiom::AntipodeAntimultiplicative => "antipode_antimultiplicative",
            Axiom::CoproductAntipode => "coproduct_antipode",
            Axiom::CounitMultiplicative => "counit_multiplicative",
            Axiom::YangBaxter => "yang_baxter",
            Axiom::WellDefined => "well_defined",
            Axiom::StarCoproduct => "star_coproduct",
            Axiom::StarAntipode => "star_antipode",
        }
    }

    /// The identity being checked, for reports.
    pub fn statement(self) -> &'static str {
        match self {
            Axiom::Unit => "Δ(1)=1⊗1, ε(1)=1, S(1)=1, ψ(1⊗x)=x⊗1, ψ(x⊗1)=1⊗x",
            Axiom::Associativity => "m∘(m⊗id) = m∘(id⊗m)",
            Axiom::Coassociativity => "(id⊗Δ)∘Δ = (Δ⊗id)∘Δ",
            Axiom::CounitLeft => "(ε⊗id)∘Δ = id",
            Axiom::CounitRight => "(id⊗ε)∘Δ = id",
            Axiom::AntipodeLeft => "m∘(id⊗S)∘Δ = η∘ε",
            Axiom::AntipodeRight => "m∘(S⊗id)∘Δ = η∘ε",
            Axiom::HexagonLeft => "ψ∘(m⊗id) = (id⊗m)∘(ψ⊗id)∘(id⊗ψ)",
            Axiom::HexagonRight => "ψ∘(id⊗m) = (m⊗id)∘(id⊗ψ)∘(ψ⊗id)",
            Axiom::BraidCoproductLeft => "(id⊗Δ)∘ψ = (ψ⊗id)∘(id⊗ψ)∘(Δ⊗id)",
            Axiom::BraidCoproductRight => "(Δ⊗id)∘ψ = (id⊗ψ)∘(ψ⊗id)∘(id⊗Δ)",
            Axiom::CoproductMultiplicative => "Δ∘m = (m⊗m)∘(id⊗ψ⊗id)∘(Δ⊗Δ)",
            Axiom::AntipodeAntimultiplicative => "S∘m = m∘ψ∘(S⊗S)",
            Axiom::CoproductAntipode => "Δ∘S = (S⊗S)∘ψ∘Δ",
            Axiom::CounitMultiplicative => "ε∘m = ε⊗ε",
            Axiom::YangBaxter => "ψ₁₂ψ₂₃ψ₁₂ = ψ₂₃ψ₁₂ψ₂₃",
            Axiom::WellDefined => "Δ, ε, S, ψ respect the defining relations",
            Axiom::StarCoproduct => "Δ∘* = π∘(*⊗*)∘Δ",
            Axiom::StarAntipode => "S∘* = *∘S",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One instance of an axiom: the family plus the arguments it was applied to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CheckId {
    pub axiom: Axiom,
    pub arguments: String,
}

/// `lhs − rhs` of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Scalar(RatFunc),
    Alg(AlgElement),
    Tensor(TensorElement),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Scalar(c) => c.is_zero(),
            Residual::Alg(x) => x.is_zero(),
            Residual::Tensor(t) => t.is_zero(),
        }
    }

    /// Coefficients of the independent basis elements; all vanish iff the residual does.
    pub fn coefficients(&self) -> Vec<&RatFunc> {
        match self {
            Residual::Scalar(c) if c.is_zero() => Vec::new(),
            Residual::Scalar(c) => vec![c],
            Residual::Alg(x) => x.terms().values().collect(),
            Residual::Tensor(t) => t.terms().values().collect(),
        }
    }

    pub fn render(&self, table: &IndetTable) -> String {
        match self {
            Residual::Scalar(c) => print_coeff(c, table),
            Residual::Alg(x) => x.display(table).to_string(),
            Residual::Tensor(t) => t.display(table),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    /// Exact rational values for some indeterminates (by name).
    Numeric(BTreeMap<String, BigRational>),
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Numeric(_) => "numeric",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub axiom: Axiom,
    pub arguments: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub table: String,
    pub solution: String,
    pub mode: String,
    pub assignment: BTreeMap<String, String>,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl AxiomReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Pass/fail per axiom family, in canonical order.
    pub fn families(&self) -> Vec<(Axiom, bool)> {
        let mut by: BTreeMap<Axiom, bool> = BTreeMap::new();
        for c in &self.checks {
            let e = by.entry(c.axiom).or_insert(true);
            *e &= c.passed;
        }
        by.into_iter().collect()
    }

    pub fn family_passed(&self, axiom: Axiom) -> Option<bool> {
        self.families().into_iter().find(|(a, _)| *a == axiom).map(|(_, p)| p)
    }
}

/// Verifies every axiom family for one solution.
///
/// In numeric mode the assignment is substituted first; indeterminates it
/// leaves out stay symbolic.
pub fn check_axioms(sol: &HopfSolution, mode: &Mode) -> Result<AxiomReport> {
    let (work, assignment) = match mode {
        Mode::Symbolic => (sol.clone(), BTreeMap::new()),
        Mode::Numeric(values) => (
            sol.instantiate(values)?,
            values.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        ),
    };
    let structure = HopfStructure::new(work);
    let table = structure.solution().indeterminates.clone();
    let checks: Vec<CheckOutcome> = residuals(&structure)?
        .into_iter()
        .map(|(id, r)| {
            let passed = r.is_zero();
            CheckOutcome {
                axiom: id.axiom,
                arguments: id.arguments,
                passed,
                residual: (!passed).then(|| r.render(&table)),
            }
        })
        .collect();
    Ok(AxiomReport {
        table: sol.table.clone(),
        solution: sol.solution.clone(),
        mode: mode.name().to_string(),
        assignment,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[derive(Clone, Copy, Debug)]
enum Task {
    Unit(Option<(Gen, bool)>, u8),
    Single(Axiom, Gen),
    Pair(Axiom, Gen, Gen),
    Triple(Axiom, Gen, Gen, Gen),
    Relation(Relation, RelMap),
}

#[derive(Clone, Copy, Debug)]
enum Relation {
    AK,
    KDagger,
    ADagger,
}

impl Relation {
    const ALL: [Relation; 3] = [Relation::AK, Relation::KDagger, Relation::ADagger];

    fn word(self) -> [Gen; 2] {
        match self {
            Relation::AK => [Gen::A, Gen::K],
            Relation::KDagger => [Gen::K, Gen::Dagger],
            Relation::ADagger => [Gen::A, Gen::Dagger],
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum RelMap {
    Coproduct,
    Counit,
    Antipode,
    BraidLeft(Gen),
    BraidRight(Gen),
}

fn tasks() -> Vec<Task> {
    let g = Gen::BASIC;
    let mut out = vec![Task::Unit(None, 0), Task::Unit(None, 1), Task::Unit(None, 2)];
    for x in g {
        out.push(Task::Unit(Some((x, true)), 3));
        out.push(Task::Unit(Some((x, false)), 3));
    }
    for x in g {
        for y in g {
            for z in g {
                out.push(Task::Triple(Axiom::Associativity, x, y, z));
            }
        }
    }
    for axiom in [
        Axiom::Coassociativity,
        Axiom::CounitLeft,
        Axiom::CounitRight,
        Axiom::AntipodeLeft,
        Axiom::AntipodeRight,
    ] {
        for x in g {
            out.push(Task::Single(axiom, x));
        }
    }
    for axiom in [Axiom::HexagonLeft, Axiom::HexagonRight] {
        for x in g {
            for y in g {
                for z in g {
                    out.push(Task::Triple(axiom, x, y, z));
                }
            }
        }
    }
    for axiom in [
        Axiom::BraidCoproductLeft,
        Axiom::BraidCoproductRight,
        Axiom::CoproductMultiplicative,
        Axiom::AntipodeAntimultiplicative,
    ] {
        for x in g {
            for y in g {
                out.push(Task::Pair(axiom, x, y));
            }
        }
    }
    for x in g {
        out.push(Task::Single(Axiom::CoproductAntipode, x));
    }
    for x in g {
        for y in g {
            out.push(Task::Pair(Axiom::CounitMultiplicative, x, y));
        }
    }
    for x in g {
        for y in g {
            for z in g {
                out.push(Task::Triple(Axiom::YangBaxter, x, y, z));
            }
        }
    }
    for rel in Relation::ALL {
        out.push(Task::Relation(rel, RelMap::Coproduct));
        out.push(Task::Relation(rel, RelMap::Counit));
        out.push(Task::Relation(rel, RelMap::Antipode));
        for x in g {
            out.push(Task::Relation(rel, RelMap::BraidLeft(x)));
            out.push(Task::Relation(rel, RelMap::BraidRight(x)));
        }
    }
    for axiom in [Axiom::StarCoproduct, Axiom::StarAntipode] {
        for x in g {
            out.push(Task::Single(axiom, x));
        }
    }
    out
}

fn args(gens: &[Gen]) -> String {
    gens.iter().map(|g| g.label()).collect::<Vec<_>>().join(", ")
}

fn gen_tensor(gens: &[Gen]) -> TensorElement {
    TensorElement::of_gens(gens)
}

fn alg(g: Gen) -> AlgElement {
    AlgElement::generator(g)
}

/// Every residual of every check, in canonical order.
pub fn residuals(h: &HopfStructure) -> Result<Vec<(CheckId, Residual)>> {
    tasks()
        .into_par_iter()
        .map(|t| run_task(h, t))
        .collect()
}

fn run_task(h: &HopfStructure, task: Task) -> Result<(CheckId, Residual)> {
    let br = h.braider();
    let al = h.algebra();
    let coproduct_slot = |t: &TensorElement, pos: usize| -> Result<TensorElement> {
        let mut err = None;
        let out = t.expand_at(pos, 2, |m| match h.coproduct_monomial(m) {
            Ok(v) => (*v).clone(),
            Err(e) => {
                err = Some(e);
                TensorElement::zero(2)
            }
        });
        err.map_or(Ok(out), Err)
    };
    let antipode_slot = |t: &TensorElement, pos: usize| -> Result<TensorElement> {
        let mut err = None;
        let out = t.map_slot(pos, |m| match h.antipode_monomial(m) {
            Ok(v) => (*v).clone(),
            Err(e) => {
                err = Some(e);
                AlgElement::zero()
            }
        });
        err.map_or(Ok(out), Err)
    };
    let counit_slot = |t: &TensorElement, pos: usize| -> Result<TensorElement> {
        let mut err = None;
        let out = t.contract_at(pos, |m| match h.counit_word(&m.word()) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                RatFunc::zero()
            }
        });
        err.map_or(Ok(out), Err)
    };
    let id = |axiom: Axiom, arguments: String| CheckId { axiom, arguments };

    Ok(match task {
        Task::Unit(None, which) => match which {
            0 => (
                id(Axiom::Unit, "Δ(1)".into()),
                Residual::Tensor(h.coproduct(&AlgElement::one())?.sub(&TensorElement::one(2))),
            ),
            1 => (
                id(Axiom::Unit, "ε(1)".into()),
                Residual::Scalar(&h.counit(&AlgElement::one())? - &RatFunc::one()),
            ),
            _ => (
                id(Axiom::Unit, "S(1)".into()),
                Residual::Alg(h.antipode(&AlgElement::one())?.sub(&AlgElement::one())),
            ),
        },
        Task::Unit(Some((x, unit_left)), _) => {
            let (input, expected, label) = if unit_left {
                ([Gen::One, x], [x, Gen::One], format!("ψ(1⊗{})", x.label()))
            } else {
                ([x, Gen::One], [Gen::One, x], format!("ψ({}⊗1)", x.label()))
            };
            let lhs = br.braid(&gen_tensor(&input))?;
            (id(Axiom::Unit, label), Residual::Tensor(lhs.sub(&gen_tensor(&expected))))
        }
        Task::Single(axiom, x) => {
            let d = h.coproduct(&alg(x))?;
            let r = match axiom {
                Axiom::Coassociativity => {
                    Residual::Tensor(coproduct_slot(&d, 1)?.sub(&coproduct_slot(&d, 0)?))
                }
                Axiom::CounitLeft => Residual::Alg(counit_slot(&d, 0)?.to_alg()?.sub(&alg(x))),
                Axiom::CounitRight => Residual::Alg(counit_slot(&d, 1)?.to_alg()?.sub(&alg(x))),
                Axiom::AntipodeLeft | Axiom::AntipodeRight => {
                    let pos = if axiom == Axiom::AntipodeLeft { 1 } else { 0 };
                    let lhs = antipode_slot(&d, pos)?.multiply_at(al, 0).to_alg()?;
                    let target = AlgElement::scalar(h.counit(&alg(x))?);
                    Residual::Alg(lhs.sub(&target))
                }
                Axiom::CoproductAntipode => {
                    let lhs = h.coproduct(&h.antipode(&alg(x))?)?;
                    let rhs = antipode_slot(&antipode_slot(&br.braid(&d)?, 0)?, 1)?;
                    Residual::Tensor(lhs.sub(&rhs))
                }
                Axiom::StarCoproduct => {
                    let lhs = h.coproduct(&star(&alg(x)))?;
                    Residual::Tensor(lhs.sub(&star_tensor(&d)))
                }
                Axiom::StarAntipode => {
                    let lhs = h.antipode(&star(&alg(x)))?;
                    Residual::Alg(lhs.sub(&star(&h.antipode(&alg(x))?)))
                }
                _ => unreachable!("not a single-argument axiom"),
            };
            (id(axiom, args(&[x])), r)
        }
        Task::Pair(axiom, x, y) => {
            let xy = al.mul(&alg(x), &alg(y));
            let r = match axiom {
                Axiom::CoproductMultiplicative => {
                    let rhs = br.tensor_mul(&h.coproduct(&alg(x))?, &h.coproduct(&alg(y))?)?;
                    Residual::Tensor(h.coproduct(&xy)?.sub(&rhs))
                }
                Axiom::AntipodeAntimultiplicative => {
                    let rhs = br.braid_then_multiply(&h.antipode(&alg(x))?, &h.antipode(&alg(y))?)?;
                    Residual::Alg(h.antipode(&xy)?.sub(&rhs))
                }
                Axiom::CounitMultiplicative => {
                    let rhs = &h.counit(&alg(x))? * &h.counit(&alg(y))?;
                    Residual::Scalar(&h.counit(&xy)? - &rhs)
                }
                Axiom::BraidCoproductLeft => {
                    let psi = br.braid(&gen_tensor(&[x, y]))?;
                    let lhs = coproduct_slot(&psi, 1)?;
                    let rhs = br.braid_at(&br.braid_at(&coproduct_slot(&gen_tensor(&[x, y]), 0)?, 1)?, 0)?;
                    Residual::Tensor(lhs.sub(&rhs))
                }
                Axiom::BraidCoproductRight => {
                    let psi = br.braid(&gen_tensor(&[x, y]))?;
                    let lhs = coproduct_slot(&psi, 0)?;
                    let rhs = br.braid_at(&br.braid_at(&coproduct_slot(&gen_tensor(&[x, y]), 1)?, 0)?, 1)?;
                    Residual::Tensor(lhs.sub(&rhs))
                }
                _ => unreachable!("not a two-argument axiom"),
            };
            (id(axiom, args(&[x, y])), r)
        }
        Task::Triple(axiom, x, y, z) => {
            let t = gen_tensor(&[x, y, z]);
            let r = match axiom {
                Axiom::Associativity => {
                    let lhs = al.mul(&al.mul(&alg(x), &alg(y)), &alg(z));
                    let rhs = al.mul(&alg(x), &al.mul(&alg(y), &alg(z)));
                    Residual::Alg(lhs.sub(&rhs))
                }
                Axiom::YangBaxter => {
                    let lhs = br.braid_at(&br.braid_at(&br.braid_at(&t, 0)?, 1)?, 0)?;
                    let rhs = br.braid_at(&br.braid_at(&br.braid_at(&t, 1)?, 0)?, 1)?;
                    Residual::Tensor(lhs.sub(&rhs))
                }
                Axiom::HexagonLeft => {
                    let xy = TensorElement::outer(&[al.mul(&alg(x), &alg(y)), alg(z)]);
                    let lhs = br.braid(&xy)?;
                    let rhs = br.braid_at(&br.braid_at(&t, 1)?, 0)?.multiply_at(al, 1);
                    Residual::Tensor(lhs.sub(&rhs))
                }
                Axiom::HexagonRight => {
                    let yz = TensorElement::outer(&[alg(x), al.mul(&alg(y), &alg(z))]);
                    let lhs = br.braid(&yz)?;
                    let rhs = br.braid_at(&br.braid_at(&t, 0)?, 1)?.multiply_at(al, 0);
                    Residual::Tensor(lhs.sub(&rhs))
                }
                _ => unreachable!("not a three-argument axiom"),
            };
            (id(axiom, args(&[x, y, z])), r)
        }
        Task::Relation(rel, map) => {
            let word = rel.word();
            let normal = al.word_product(&word)?;
            let rel_label = format!("{}{}", word[0].label(), word[1].label());
            let (label, r) = match map {
                RelMap::Coproduct => (
                    format!("Δ({rel_label})"),
                    Residual::Tensor(h.coproduct_word(&word)?.sub(&h.coproduct(&normal)?)),
                ),
                RelMap::Counit => (
                    format!("ε({rel_label})"),
                    Residual::Scalar(&h.counit_word(&word)? - &h.counit(&normal)?),
                ),
                RelMap::Antipode => (
                    format!("S({rel_label})"),
                    Residual::Alg(h.antipode_word(&word)?.sub(&h.antipode(&normal)?)),
                ),
                RelMap::BraidLeft(g) => {
                    let lhs = br.braid_words(&word, &[g])?;
                    let rhs = br.braid(&TensorElement::outer(&[normal, alg(g)]))?;
                    (format!("ψ({rel_label}⊗{})", g.label()), Residual::Tensor(lhs.sub(&rhs)))
                }
                RelMap::BraidRight(g) => {
                    let lhs = br.braid_words(&[g], &word)?;
                    let rhs = br.braid(&TensorElement::outer(&[alg(g), normal]))?;
                    (format!("ψ({}⊗{rel_label})", g.label()), Residual::Tensor(lhs.sub(&rhs)))
                }
            };
            (id(Axiom::WellDefined, label), r)
        }
    })
}

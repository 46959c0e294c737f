//! Braided Hopf structure maps Δ, ε, S, the star structure, the solution
//! catalog and the axiom checker.

mod axioms;
mod catalog;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_rational::BigRational;

use crate::braidtensor::{BraidTable, Braider, PeelOrder, TensorElement};
use crate::coeffield::{CoeffError, IndetTable, RatFunc};
use crate::error::{Error, Result};
use crate::oscalg::{AlgElement, Gen, NormalMonomial, OscAlgebra, OscillatorParams};

pub use axioms::{check_axioms, residuals, Axiom, AxiomReport, CheckId, CheckOutcome, Mode, Residual};
pub use catalog::{catalog, Catalog, CatalogTable, BUILTIN_CATALOG};

/// Names of the structure constants, in canonical order.
pub const CONSTANT_NAMES: [&str; 47] = [
    "A1", "A2", "A3", "A4", "A5", "A6", "B1", "B2", "B3", "B4", "e1", "e2", "k1", "k2", "k3", "k4",
    "m1", "m2", "m3", "m4", "g1", "g2", "g3", "g4", "g5", "g6", "d1", "d2", "d3", "d4", "f1", "f2",
    "f3", "f4", "z", "b1", "b2", "b3", "b4", "b5", "b6", "c1", "c2", "c3", "c4", "c5", "c6",
];

/// Names of the oscillator parameters that may also be set by name.
pub const OSCILLATOR_NAMES: [&str; 5] = ["q", "Q1", "Q2", "Q3", "Q4"];

/// One candidate braided Hopf algebra: oscillator parameters plus every
/// structure constant of Δ, ε, S and ψ.
///
/// `a` holds `A1..A6` of `Δ(q^N)`, `b` holds `B1..B4` of `Δ(a)` and `Δ(a*)`,
/// `e` the counit values on `q^N` and `a, a*`, `k` and `m` the antipode
/// constants of `S(q^N)` and `S(a), S(a*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfSolution {
    pub table: String,
    pub solution: String,
    pub indeterminates: IndetTable,
    pub oscillator: OscillatorParams,
    pub a: [RatFunc; 6],
    pub b: [RatFunc; 4],
    pub e: [RatFunc; 2],
    pub k: [RatFunc; 4],
    pub m: [RatFunc; 4],
    pub braid: BraidTable,
    pub free_symbols: Vec<String>,
    /// Generic rational point used by numeric checks.
    pub default_assignment: BTreeMap<String, BigRational>,
}

impl HopfSolution {
    /// A solution carrying only the constants common to every table:
    /// `Q4 = A1 = A6 = B1 = B2 = 0`, `A4 = A5 = B3 = B4 = 1`, `S(a) = −a`,
    /// `S(a*) = −a*`, `ε = 0` on generators, and no braid terms involving units.
    /// Everything else starts at zero.
    pub fn with_forced_constants(
        table: &str,
        solution: &str,
        indeterminates: IndetTable,
        mut oscillator: OscillatorParams,
    ) -> Self {
        let one = RatFunc::one;
        let zero = RatFunc::zero;
        oscillator.q4 = zero();
        HopfSolution {
            table: table.to_string(),
            solution: solution.to_string(),
            indeterminates,
            oscillator,
            a: [zero(), zero(), zero(), one(), one(), zero()],
            b: [zero(), zero(), one(), one()],
            e: [zero(), zero()],
            k: [zero(), zero(), zero(), zero()],
            m: [zero(), RatFunc::from_int(-1), zero(), zero()],
            braid: BraidTable::default(),
            free_symbols: Vec::new(),
            default_assignment: BTreeMap::new(),
        }
    }

    /// A solution whose every structure constant (and the chosen oscillator
    /// parameters) is its own indeterminate: the general ansatz.
    pub fn ansatz(
        indeterminates: &IndetTable,
        oscillator: OscillatorParams,
    ) -> Result<Self> {
        let mut sol = HopfSolution::with_forced_constants("ansatz", "ansatz", indeterminates.clone(), oscillator.clone());
        sol.oscillator = oscillator;
        for name in CONSTANT_NAMES {
            let idx = indeterminates
                .index_of(name)
                .ok_or_else(|| Error::Coeff(CoeffError::UnknownSymbol(name.to_string())))?;
            *sol.constant_mut(name)? = RatFunc::var(idx);
        }
        Ok(sol)
    }

    pub fn label(&self) -> String {
        format!("table {} sol {}", self.table, self.solution)
    }

    pub fn constant(&self, name: &str) -> Result<&RatFunc> {
        let s = self;
        Ok(match name {
            "q" => &s.oscillator.q,
            "Q1" => &s.oscillator.q1,
            "Q2" => &s.oscillator.q2,
            "Q3" => &s.oscillator.q3,
            "Q4" => &s.oscillator.q4,
            "z" => &s.braid.z,
            _ => {
                let (slot, i) = split_name(name)?;
                match slot {
                    'A' => &s.a[i],
                    'B' => &s.b[i],
                    'e' => &s.e[i],
                    'k' => &s.k[i],
                    'm' => &s.m[i],
                    'g' => &s.braid.g[i],
                    'd' => &s.braid.d[i],
                    'f' => &s.braid.f[i],
                    'b' => &s.braid.b[i],
                    'c' => &s.braid.c[i],
                    _ => unreachable!(),
                }
            }
        })
    }

    pub fn constant_mut(&mut self, name: &str) -> Result<&mut RatFunc> {
        let s = self;
        Ok(match name {
            "q" => &mut s.oscillator.q,
            "Q1" => &mut s.oscillator.q1,
            "Q2" => &mut s.oscillator.q2,
            "Q3" => &mut s.oscillator.q3,
            "Q4" => &mut s.oscillator.q4,
            "z" => &mut s.braid.z,
            _ => {
                let (slot, i) = split_name(name)?;
                match slot {
                    'A' => &mut s.a[i],
                    'B' => &mut s.b[i],
                    'e' => &mut s.e[i],
                    'k' => &mut s.k[i],
                    'm' => &mut s.m[i],
                    'g' => &mut s.braid.g[i],
                    'd' => &mut s.braid.d[i],
                    'f' => &mut s.braid.f[i],
                    'b' => &mut s.braid.b[i],
                    'c' => &mut s.braid.c[i],
                    _ => unreachable!(),
                }
            }
        })
    }

    /// Replaces one named constant; `q` may not become zero.
    pub fn set_constant(&mut self, name: &str, value: RatFunc) -> Result<()> {
        if name == "q" && value.is_zero() {
            return Err(Error::ZeroQ);
        }
        *self.constant_mut(name)? = value;
        Ok(())
    }

    /// All structure constants by name, in canonical order.
    pub fn constants(&self) -> Vec<(&'static str, &RatFunc)> {
        CONSTANT_NAMES
            .iter()
            .map(|n| (*n, self.constant(n).expect("canonical name")))
            .collect()
    }

    /// Applies `f` to every coefficient (oscillator parameters included).
    pub fn map_coeffs(
        &self,
        mut f: impl FnMut(&RatFunc) -> std::result::Result<RatFunc, CoeffError>,
    ) -> Result<HopfSolution> {
        let mut out = self.clone();
        out.oscillator = self.oscillator.map(&mut f)?;
        for name in CONSTANT_NAMES {
            let v = f(self.constant(name)?)?;
            *out.constant_mut(name)? = v;
        }
        Ok(out)
    }

    /// Substitutes rationals for some indeterminates (by name; square-root
    /// aliases are accepted) and keeps the rest symbolic.
    pub fn instantiate(&self, assignment: &BTreeMap<String, BigRational>) -> Result<HopfSolution> {
        let values = self.indeterminates.index_assignment(assignment)?;
        let mut out = self.map_coeffs(|c| c.eval_partial(&values))?;
        out.free_symbols
            .retain(|s| !assignment.contains_key(s));
        Ok(out)
    }
}

fn split_name(name: &str) -> Result<(char, usize)> {
    let unknown = || Error::UnknownConstant(name.to_string());
    let mut chars = name.chars();
    let slot = chars.next().ok_or_else(unknown)?;
    let idx: usize = chars.as_str().parse().map_err(|_| unknown())?;
    let len = match slot {
        'A' | 'g' | 'b' | 'c' => 6,
        'B' | 'k' | 'm' | 'd' | 'f' => 4,
        'e' => 2,
        _ => return Err(unknown()),
    };
    if idx == 0 || idx > len || chars.as_str().starts_with('0') {
        return Err(unknown());
    }
    Ok((slot, idx - 1))
}

fn gen_element(pairs: &[(&RatFunc, Gen, Gen)]) -> TensorElement {
    let mut t = TensorElement::zero(2);
    for (c, l, r) in pairs {
        t.add_term(vec![l.monomial(), r.monomial()], (*c).clone());
    }
    t
}

/// Δ, ε, S and ψ for one solution, extended from generators with memoization.
#[derive(Debug)]
pub struct HopfStructure {
    sol: HopfSolution,
    braider: Braider,
    delta_memo: Mutex<HashMap<NormalMonomial, Arc<TensorElement>>>,
    antipode_memo: Mutex<HashMap<NormalMonomial, Arc<AlgElement>>>,
}

impl HopfStructure {
    pub fn new(sol: HopfSolution) -> Self {
        HopfStructure::with_order(sol, PeelOrder::LeftFirst)
    }

    pub fn with_order(sol: HopfSolution, order: PeelOrder) -> Self {
        let alg = OscAlgebra::new(sol.oscillator.clone());
        let braider = Braider::with_order(alg, sol.braid.clone(), order);
        HopfStructure {
            sol,
            braider,
            delta_memo: Mutex::new(HashMap::new()),
            antipode_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn solution(&self) -> &HopfSolution {
        &self.sol
    }

    pub fn algebra(&self) -> &OscAlgebra {
        self.braider.algebra()
    }

    pub fn braider(&self) -> &Braider {
        &self.braider
    }

    /// Δ on a generator (the unit maps to `1⊗1`).
    pub fn coproduct_generator(&self, g: Gen) -> Result<TensorElement> {
        use Gen::*;
        let (a, b) = (&self.sol.a, &self.sol.b);
        Ok(match g {
            One => TensorElement::one(2),
            K => gen_element(&[
                (&a[0], K, K),
                (&a[1], A, Dagger),
                (&a[2], Dagger, A),
                (&a[3], One, K),
                (&a[4], K, One),
                (&a[5], One, One),
            ]),
            A => gen_element(&[(&b[0], K, A), (&b[1], A, K), (&b[2], One, A), (&b[3], A, One)]),
            Dagger => gen_element(&[
                (&b[0], Dagger, K),
                (&b[1], K, Dagger),
                (&b[2], Dagger, One),
                (&b[3], One, Dagger),
            ]),
            KInv => return Err(Error::NegativePowerInBraid),
        })
    }

    /// ε on a generator.
    pub fn counit_generator(&self, g: Gen) -> Result<RatFunc> {
        Ok(match g {
            Gen::One => RatFunc::one(),
            Gen::K => self.sol.e[0].clone(),
            Gen::A | Gen::Dagger => self.sol.e[1].clone(),
            Gen::KInv => return Err(Error::NegativePowerInBraid),
        })
    }

    /// S on a generator.
    pub fn antipode_generator(&self, g: Gen) -> Result<AlgElement> {
        use Gen::*;
        let lin = |c: &[RatFunc; 4], second: Gen, third: Gen| {
            AlgElement::from_terms([
                (K.monomial(), c[0].clone()),
                (second.monomial(), c[1].clone()),
                (third.monomial(), c[2].clone()),
                (NormalMonomial::ONE, c[3].clone()),
            ])
        };
        Ok(match g {
            One => AlgElement::one(),
            K => lin(&self.sol.k, A, Dagger),
            A => lin(&self.sol.m, A, Dagger),
            Dagger => lin(&self.sol.m, Dagger, A),
            KInv => return Err(Error::NegativePowerInBraid),
        })
    }

    fn coproduct_monomial(&self, m: &NormalMonomial) -> Result<Arc<TensorElement>> {
        if m.j < 0 {
            return Err(Error::NegativePowerInBraid);
        }
        if let Some(hit) = self.delta_memo.lock().unwrap().get(m) {
            return Ok(hit.clone());
        }
        let word = m.word();
        let value = match word.split_first() {
            None => TensorElement::one(2),
            Some((g, rest)) if rest.is_empty() => self.coproduct_generator(*g)?,
            Some((g, rest)) => {
                let tail = word_monomial(rest);
                let head = self.coproduct_generator(*g)?;
                let tail = self.coproduct_monomial(&tail)?;
                self.braider.tensor_mul(&head, &tail)?
            }
        };
        let value = Arc::new(value);
        self.delta_memo.lock().unwrap().insert(*m, value.clone());
        Ok(value)
    }

    /// Δ extended as a braided algebra homomorphism.
    pub fn coproduct(&self, x: &AlgElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero(2);
        for (m, c) in x.terms() {
            out.add_scaled(&*self.coproduct_monomial(m)?, c);
        }
        Ok(out)
    }

    /// `Δ(g₁)Δ(g₂)⋯` for a word that need not be normal ordered.
    pub fn coproduct_word(&self, word: &[Gen]) -> Result<TensorElement> {
        let mut acc = TensorElement::one(2);
        for g in word {
            acc = self.braider.tensor_mul(&acc, &self.coproduct_generator(*g)?)?;
        }
        Ok(acc)
    }

    /// ε extended multiplicatively.
    pub fn counit(&self, x: &AlgElement) -> Result<RatFunc> {
        let mut acc = RatFunc::zero();
        for (m, c) in x.terms() {
            acc = &acc + &(c * &self.counit_word(&m.word())?);
        }
        Ok(acc)
    }

    pub fn counit_word(&self, word: &[Gen]) -> Result<RatFunc> {
        let mut acc = RatFunc::one();
        for g in word {
            acc = &acc * &self.counit_generator(*g)?;
        }
        Ok(acc)
    }

    fn antipode_monomial(&self, m: &NormalMonomial) -> Result<Arc<AlgElement>> {
        if m.j < 0 {
            return Err(Error::NegativePowerInBraid);
        }
        if let Some(hit) = self.antipode_memo.lock().unwrap().get(m) {
            return Ok(hit.clone());
        }
        let word = m.word();
        let value = match word.split_first() {
            None => AlgElement::one(),
            Some((g, rest)) if rest.is_empty() => self.antipode_generator(*g)?,
            Some((g, rest)) => {
                let tail = self.antipode_monomial(&word_monomial(rest))?;
                self.braider
                    .braid_then_multiply(&self.antipode_generator(*g)?, &tail)?
            }
        };
        let value = Arc::new(value);
        self.antipode_memo.lock().unwrap().insert(*m, value.clone());
        Ok(value)
    }

    /// S extended by `S∘m = m∘ψ∘(S⊗S)`.
    pub fn antipode(&self, x: &AlgElement) -> Result<AlgElement> {
        let mut out = AlgElement::zero();
        for (m, c) in x.terms() {
            out.add_scaled(&*self.antipode_monomial(m)?, c);
        }
        Ok(out)
    }

    /// `S(g₁g₂⋯)` computed letter by letter for a word that need not be normal ordered.
    pub fn antipode_word(&self, word: &[Gen]) -> Result<AlgElement> {
        match word.split_first() {
            None => Ok(AlgElement::one()),
            Some((g, rest)) => {
                let head = self.antipode_generator(*g)?;
                if rest.is_empty() {
                    return Ok(head);
                }
                let tail = self.antipode_word(rest)?;
                self.braider.braid_then_multiply(&head, &tail)
            }
        }
    }
}

/// Normal monomial of a word that is already normal ordered.
fn word_monomial(w: &[Gen]) -> NormalMonomial {
    let mut m = NormalMonomial::ONE;
    for g in w {
        match g {
            Gen::Dagger => m.i += 1,
            Gen::K => m.j += 1,
            Gen::KInv => m.j -= 1,
            Gen::A => m.k += 1,
            Gen::One => {}
        }
    }
    m
}

/// Δ(x) for one solution.
pub fn coproduct(x: &AlgElement, sol: &HopfSolution) -> Result<TensorElement> {
    HopfStructure::new(sol.clone()).coproduct(x)
}

/// ε(x) for one solution.
pub fn counit(x: &AlgElement, sol: &HopfSolution) -> Result<RatFunc> {
    HopfStructure::new(sol.clone()).counit(x)
}

/// S(x) for one solution.
pub fn antipode(x: &AlgElement, sol: &HopfSolution) -> Result<AlgElement> {
    HopfStructure::new(sol.clone()).antipode(x)
}

fn star_monomial(m: &NormalMonomial) -> NormalMonomial {
    NormalMonomial::new(m.k, m.j, m.i)
}

/// The antilinear-free involution `a ↔ a*`, `q^N ↦ q^N`, reversing products.
///
/// `(a*^i q^{jN} a^k)* = a*^k q^{jN} a^i` is again normal ordered, so the
/// map acts monomial by monomial with coefficients unchanged.
pub fn star(x: &AlgElement) -> AlgElement {
    AlgElement::from_terms(x.terms().iter().map(|(m, c)| (star_monomial(m), c.clone())))
}

/// `(x₁⊗…⊗xₙ)* = xₙ*⊗…⊗x₁*`.
pub fn star_tensor(x: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(x.arity());
    for (slots, c) in x.terms() {
        out.add_term(slots.iter().rev().map(star_monomial).collect(), c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_names_resolve() {
        let t = IndetTable::new(&["q"]).unwrap();
        let osc = OscillatorParams::braided_space(RatFunc::var(0)).unwrap();
        let mut sol = HopfSolution::with_forced_constants("x", "1", t, osc);
        for name in CONSTANT_NAMES.iter().chain(OSCILLATOR_NAMES.iter()) {
            sol.constant(name).unwrap();
        }
        assert_eq!(sol.constant("m2").unwrap(), &RatFunc::from_int(-1));
        assert_eq!(sol.constant("B3").unwrap(), &RatFunc::one());
        for bad in ["A0", "A7", "e3", "x1", "", "b01", "z1"] {
            assert!(matches!(sol.constant(bad), Err(Error::UnknownConstant(_))), "{bad}");
        }
        sol.set_constant("b3", RatFunc::from_int(7)).unwrap();
        assert_eq!(sol.braid.b[2], RatFunc::from_int(7));
        assert_eq!(sol.set_constant("q", RatFunc::zero()), Err(Error::ZeroQ));
    }

    #[test]
    fn star_on_monomials() {
        let x = AlgElement::monomial(NormalMonomial::new(2, 1, 0), RatFunc::from_int(3));
        assert_eq!(star(&x), AlgElement::monomial(NormalMonomial::new(0, 1, 2), RatFunc::from_int(3)));
        assert_eq!(star(&star(&x)), x);
    }
}

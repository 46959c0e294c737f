//! Braided tensor products of the oscillator algebra.
//!
//! The braiding ψ is given on ordered generator pairs by a [`BraidTable`] and
//! extended to words by the hexagon identities
//!
//! ```text
//! ψ∘(m⊗id) = (id⊗m)∘(ψ⊗id)∘(id⊗ψ)      ψ∘(id⊗m) = (m⊗id)∘(id⊗ψ)∘(ψ⊗id)
//! ```
//!
//! n-fold products `(x₁⊗…⊗xₙ)(y₁⊗…⊗yₙ)` move each `yᵢ` left by adjacent braid
//! moves until it meets `xᵢ`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::coeffield::{print_coeff, IndetTable, RatFunc};
use crate::error::{Error, Result};
use crate::oscalg::{join_terms, AlgElement, Gen, NormalMonomial, OscAlgebra};

/// Finite linear combination of n-tuples of normal monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<NormalMonomial>, RatFunc>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `1⊗…⊗1`.
    pub fn one(arity: usize) -> Self {
        TensorElement::pure(vec![NormalMonomial::ONE; arity], RatFunc::one())
    }

    pub fn pure(slots: Vec<NormalMonomial>, c: RatFunc) -> Self {
        let mut t = TensorElement::zero(slots.len());
        t.add_term(slots, c);
        t
    }

    /// Tensor product of generators, e.g. `a⊗a*`.
    pub fn of_gens(gens: &[Gen]) -> Self {
        TensorElement::pure(gens.iter().map(|g| g.monomial()).collect(), RatFunc::one())
    }

    /// `x₁⊗x₂⊗…` expanded multilinearly.
    pub fn outer(factors: &[AlgElement]) -> Self {
        let mut acc: Vec<(Vec<NormalMonomial>, RatFunc)> = vec![(Vec::new(), RatFunc::one())];
        for f in factors {
            let mut next = Vec::new();
            for (slots, c) in &acc {
                for (m, v) in f.terms() {
                    let mut s = slots.clone();
                    s.push(*m);
                    next.push((s, c * v));
                }
            }
            acc = next;
        }
        let mut t = TensorElement::zero(factors.len());
        for (s, c) in acc {
            t.add_term(s, c);
        }
        t
    }

    /// The element `x` placed in copy `slot` of an `arity`-fold product.
    pub fn embed(x: &AlgElement, slot: usize, arity: usize) -> Self {
        let mut t = TensorElement::zero(arity);
        for (m, c) in x.terms() {
            let mut s = vec![NormalMonomial::ONE; arity];
            s[slot] = *m;
            t.add_term(s, c.clone());
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<NormalMonomial>, RatFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, slots: &[NormalMonomial]) -> RatFunc {
        self.terms.get(slots).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add_term(&mut self, slots: Vec<NormalMonomial>, c: RatFunc) {
        debug_assert_eq!(slots.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&slots) {
            Some(slot) => {
                let v = &*slot + &c;
                if v.is_zero() {
                    self.terms.remove(&slots);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(slots, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &RatFunc) {
        assert_eq!(self.arity, other.arity, "arity mismatch in tensor sum");
        for (s, v) in &other.terms {
            self.add_term(s.clone(), v * c);
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::one());
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(other, &RatFunc::from_int(-1));
        out
    }

    pub fn scale(&self, c: &RatFunc) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        out.add_scaled(self, c);
        out
    }

    pub fn map_coeffs(
        &self,
        mut f: impl FnMut(&RatFunc) -> std::result::Result<RatFunc, crate::coeffield::CoeffError>,
    ) -> std::result::Result<TensorElement, crate::coeffield::CoeffError> {
        let mut out = TensorElement::zero(self.arity);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Applies a linear map `A → A^{⊗r}` to slot `pos`.
    pub fn expand_at(
        &self,
        pos: usize,
        r: usize,
        mut f: impl FnMut(&NormalMonomial) -> TensorElement,
    ) -> TensorElement {
        let mut out = TensorElement::zero(self.arity - 1 + r);
        for (slots, c) in &self.terms {
            let img = f(&slots[pos]);
            debug_assert_eq!(img.arity, r);
            for (inner, v) in &img.terms {
                let mut s = Vec::with_capacity(self.arity - 1 + r);
                s.extend_from_slice(&slots[..pos]);
                s.extend_from_slice(inner);
                s.extend_from_slice(&slots[pos + 1..]);
                out.add_term(s, c * v);
            }
        }
        out
    }

    /// Applies a linear map `A → A` to slot `pos`.
    pub fn map_slot(
        &self,
        pos: usize,
        mut f: impl FnMut(&NormalMonomial) -> AlgElement,
    ) -> TensorElement {
        self.expand_at(pos, 1, |m| {
            let img = f(m);
            TensorElement::embed(&img, 0, 1)
        })
    }

    /// Applies a linear functional to slot `pos`; the arity drops by one.
    pub fn contract_at(&self, pos: usize, mut f: impl FnMut(&NormalMonomial) -> RatFunc) -> TensorElement {
        self.expand_at(pos, 0, |m| {
            let mut t = TensorElement {
                arity: 0,
                terms: BTreeMap::new(),
            };
            let v = f(m);
            if !v.is_zero() {
                t.terms.insert(Vec::new(), v);
            }
            t
        })
    }

    /// Multiplies slots `pos` and `pos + 1` in the algebra.
    pub fn multiply_at(&self, alg: &OscAlgebra, pos: usize) -> TensorElement {
        let mut out = TensorElement::zero(self.arity - 1);
        for (slots, c) in &self.terms {
            let prod = alg.mul_monomials(&slots[pos], &slots[pos + 1]);
            for (m, v) in prod.terms() {
                let mut s = Vec::with_capacity(self.arity - 1);
                s.extend_from_slice(&slots[..pos]);
                s.push(*m);
                s.extend_from_slice(&slots[pos + 2..]);
                out.add_term(s, c * v);
            }
        }
        out
    }

    /// Collapses an arity-1 tensor to an algebra element.
    pub fn to_alg(&self) -> Result<AlgElement> {
        if self.arity != 1 {
            return Err(Error::WrongArity {
                expected: 1,
                got: self.arity,
            });
        }
        Ok(AlgElement::from_terms(
            self.terms.iter().map(|(s, c)| (s[0], c.clone())),
        ))
    }

    /// Scalar of an arity-0 tensor (the result of contracting every slot).
    pub fn to_scalar(&self) -> RatFunc {
        debug_assert_eq!(self.arity, 0);
        self.terms.values().next().cloned().unwrap_or_else(RatFunc::zero)
    }

    /// `Σ c m₁⊗…⊗mₙ` printed with the coeffield grammar.
    pub fn display(&self, table: &IndetTable) -> String {
        let parts: Vec<(String, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(s, c)| {
                let basis = s.iter().map(|m| m.render(None)).collect::<Vec<_>>().join("⊗");
                (print_coeff(c, table), basis)
            })
            .collect();
        join_terms(&parts)
    }
}

/// `m₁⊗m₂ ↦ m₂⊗m₁`.
pub fn flip(x: &TensorElement) -> Result<TensorElement> {
    if x.arity != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            got: x.arity,
        });
    }
    let mut out = TensorElement::zero(2);
    for (s, c) in &x.terms {
        out.add_term(vec![s[1], s[0]], c.clone());
    }
    Ok(out)
}

/// Structure constants of ψ on the nine ordered generator pairs.
///
/// `g` multiplies `q^N⊗q^N, a⊗a*, a*⊗a, 1⊗q^N, q^N⊗1, 1⊗1` in `ψ(q^N⊗q^N)`;
/// `b` and `c` do the same for `ψ(a⊗a*)` and `ψ(a*⊗a)`. `d` gives
/// `ψ(q^N⊗a) = d1 a⊗q^N + d2 q^N⊗a + d3 1⊗a + d4 a⊗1` and the mirrored
/// `ψ(a*⊗q^N)`; `f` gives `ψ(q^N⊗a*)` and `ψ(a⊗q^N)`; `z` is the diagonal
/// constant of `ψ(a⊗a)` and `ψ(a*⊗a*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidTable {
    pub g: [RatFunc; 6],
    pub d: [RatFunc; 4],
    pub f: [RatFunc; 4],
    pub z: RatFunc,
    pub b: [RatFunc; 6],
    pub c: [RatFunc; 6],
}

impl Default for BraidTable {
    fn default() -> Self {
        BraidTable {
            g: Default::default(),
            d: Default::default(),
            f: Default::default(),
            z: RatFunc::zero(),
            b: Default::default(),
            c: Default::default(),
        }
    }
}

impl BraidTable {
    /// The plain flip π.
    pub fn flip() -> Self {
        let one = RatFunc::one();
        let mut t = BraidTable::default();
        t.g[0] = one.clone();
        t.d[0] = one.clone();
        t.f[0] = one.clone();
        t.z = one.clone();
        t.b[2] = one.clone();
        t.c[1] = one;
        t
    }

    /// ψ on a pair of generators (units included).
    pub fn on_generators(&self, x: Gen, y: Gen) -> TensorElement {
        use Gen::*;
        let mut out = TensorElement::zero(2);
        if x == One || y == One {
            out.add_term(vec![y.monomial(), x.monomial()], RatFunc::one());
            return out;
        }
        let mut put = |c: &RatFunc, l: Gen, r: Gen| {
            out.add_term(vec![l.monomial(), r.monomial()], c.clone());
        };
        match (x, y) {
            (K, K) => {
                let g = &self.g;
                put(&g[0], K, K);
                put(&g[1], A, Dagger);
                put(&g[2], Dagger, A);
                put(&g[3], One, K);
                put(&g[4], K, One);
                put(&g[5], One, One);
            }
            (K, A) => {
                let d = &self.d;
                put(&d[0], A, K);
                put(&d[1], K, A);
                put(&d[2], One, A);
                put(&d[3], A, One);
            }
            (Dagger, K) => {
                let d = &self.d;
                put(&d[0], K, Dagger);
                put(&d[1], Dagger, K);
                put(&d[2], Dagger, One);
                put(&d[3], One, Dagger);
            }
            (K, Dagger) => {
                let f = &self.f;
                put(&f[0], Dagger, K);
                put(&f[1], K, Dagger);
                put(&f[2], One, Dagger);
                put(&f[3], Dagger, One);
            }
            (A, K) => {
                let f = &self.f;
                put(&f[0], K, A);
                put(&f[1], A, K);
                put(&f[2], A, One);
                put(&f[3], One, A);
            }
            (A, A) => put(&self.z, A, A),
            (Dagger, Dagger) => put(&self.z, Dagger, Dagger),
            (A, Dagger) => {
                let b = &self.b;
                put(&b[0], K, K);
                put(&b[1], A, Dagger);
                put(&b[2], Dagger, A);
                put(&b[3], One, K);
                put(&b[4], K, One);
                put(&b[5], One, One);
            }
            (Dagger, A) => {
                let c = &self.c;
                put(&c[0], K, K);
                put(&c[1], A, Dagger);
                put(&c[2], Dagger, A);
                put(&c[3], One, K);
                put(&c[4], K, One);
                put(&c[5], One, One);
            }
            (KInv, _) | (_, KInv) => unreachable!("checked by caller"),
            (One, _) | (_, One) => unreachable!(),
        }
        out
    }
}

/// Which factor the hexagon recursion splits first when both have length > 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeelOrder {
    LeftFirst,
    RightFirst,
}

type WordPair = (Vec<Gen>, Vec<Gen>);

/// ψ extended to words, with a per-instance memo.
#[derive(Debug)]
pub struct Braider {
    alg: OscAlgebra,
    table: BraidTable,
    order: PeelOrder,
    memo: Mutex<HashMap<WordPair, Arc<TensorElement>>>,
}

impl Braider {
    pub fn new(alg: OscAlgebra, table: BraidTable) -> Self {
        Braider::with_order(alg, table, PeelOrder::LeftFirst)
    }

    pub fn with_order(alg: OscAlgebra, table: BraidTable, order: PeelOrder) -> Self {
        Braider {
            alg,
            table,
            order,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &OscAlgebra {
        &self.alg
    }

    pub fn table(&self) -> &BraidTable {
        &self.table
    }

    pub fn order(&self) -> PeelOrder {
        self.order
    }

    /// ψ(u⊗v) for words `u`, `v`.
    pub fn braid_words(&self, u: &[Gen], v: &[Gen]) -> Result<Arc<TensorElement>> {
        if u.contains(&Gen::KInv) || v.contains(&Gen::KInv) {
            return Err(Error::NegativePowerInBraid);
        }
        let u: Vec<Gen> = u.iter().copied().filter(|g| *g != Gen::One).collect();
        let v: Vec<Gen> = v.iter().copied().filter(|g| *g != Gen::One).collect();
        Ok(self.braid_clean(u, v))
    }

    fn braid_clean(&self, u: Vec<Gen>, v: Vec<Gen>) -> Arc<TensorElement> {
        if u.is_empty() || v.is_empty() {
            let l = word_monomial(&v);
            let r = word_monomial(&u);
            return Arc::new(TensorElement::pure(vec![l, r], RatFunc::one()));
        }
        let key = (u, v);
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let (u, v) = key;
        let result = if u.len() == 1 && v.len() == 1 {
            self.table.on_generators(u[0], v[0])
        } else {
            let split_left = match self.order {
                PeelOrder::LeftFirst => u.len() > 1,
                PeelOrder::RightFirst => v.len() == 1,
            };
            if split_left {
                self.peel_left(&u, &v)
            } else {
                self.peel_right(&u, &v)
            }
        };
        let result = Arc::new(result);
        self.memo.lock().unwrap().insert((u, v), result.clone());
        result
    }

    /// ψ(u₀u' ⊗ v) = (id⊗m)(ψ⊗id)(u₀ ⊗ ψ(u'⊗v)).
    fn peel_left(&self, u: &[Gen], v: &[Gen]) -> TensorElement {
        let (u0, rest) = u.split_first().unwrap();
        let inner = self.braid_clean(rest.to_vec(), v.to_vec());
        let mut out = TensorElement::zero(2);
        for (slots, c) in inner.terms() {
            let (v1, u1) = (slots[0], slots[1]);
            let outer = self.braid_clean(vec![*u0], v1.word());
            for (s2, c2) in outer.terms() {
                let (v2, u0b) = (s2[0], s2[1]);
                let cc = c * c2;
                for (m, c3) in self.alg.mul_monomials(&u0b, &u1).terms() {
                    out.add_term(vec![v2, *m], &cc * c3);
                }
            }
        }
        out
    }

    /// ψ(u ⊗ v₀v') = (m⊗id)(id⊗ψ)(ψ(u⊗v₀) ⊗ v').
    fn peel_right(&self, u: &[Gen], v: &[Gen]) -> TensorElement {
        let (v0, rest) = v.split_first().unwrap();
        let first = self.braid_clean(u.to_vec(), vec![*v0]);
        let mut out = TensorElement::zero(2);
        for (slots, c) in first.terms() {
            let (v0b, u1) = (slots[0], slots[1]);
            let second = self.braid_clean(u1.word(), rest.to_vec());
            for (s2, c2) in second.terms() {
                let (v1, u2) = (s2[0], s2[1]);
                let cc = c * c2;
                for (m, c3) in self.alg.mul_monomials(&v0b, &v1).terms() {
                    out.add_term(vec![*m, u2], &cc * c3);
                }
            }
        }
        out
    }

    /// ψ on a single pair of normal monomials.
    pub fn braid_monomials(&self, m1: &NormalMonomial, m2: &NormalMonomial) -> Result<Arc<TensorElement>> {
        if m1.j < 0 || m2.j < 0 {
            return Err(Error::NegativePowerInBraid);
        }
        Ok(self.braid_clean(m1.word(), m2.word()))
    }

    /// ψ extended bilinearly to an arity-2 tensor.
    pub fn braid(&self, x: &TensorElement) -> Result<TensorElement> {
        if x.arity() != 2 {
            return Err(Error::WrongArity {
                expected: 2,
                got: x.arity(),
            });
        }
        self.braid_at(x, 0)
    }

    /// Applies ψ to slots `pos`, `pos + 1`.
    pub fn braid_at(&self, x: &TensorElement, pos: usize) -> Result<TensorElement> {
        if pos + 1 >= x.arity() {
            return Err(Error::WrongArity {
                expected: pos + 2,
                got: x.arity(),
            });
        }
        let mut out = TensorElement::zero(x.arity());
        for (slots, c) in x.terms() {
            let img = self.braid_monomials(&slots[pos], &slots[pos + 1])?;
            for (s2, v) in img.terms() {
                let mut s = slots.clone();
                s[pos] = s2[0];
                s[pos + 1] = s2[1];
                out.add_term(s, c * v);
            }
        }
        Ok(out)
    }

    /// m∘ψ on an arity-2 tensor: `x⊗y ↦ Σ y'x'`.
    pub fn braid_then_multiply(&self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
        let t = TensorElement::outer(&[x.clone(), y.clone()]);
        self.braid(&t)?.multiply_at(&self.alg, 0).to_alg()
    }

    /// Product in the n-fold braided tensor algebra.
    pub fn tensor_mul(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        if x.arity() != y.arity() {
            return Err(Error::ArityMismatch {
                left: x.arity(),
                right: y.arity(),
            });
        }
        let n = x.arity();
        let mut out = TensorElement::zero(n);
        for (xs, cx) in x.terms() {
            for (ys, cy) in y.terms() {
                let c = cx * cy;
                let prod = self.mul_pure(xs, ys)?;
                out.add_scaled(&prod, &c);
            }
        }
        Ok(out)
    }

    fn mul_pure(&self, xs: &[NormalMonomial], ys: &[NormalMonomial]) -> Result<TensorElement> {
        let n = xs.len();
        // items carry the copy index they finally belong to; units are dropped
        let start: Vec<(usize, NormalMonomial)> = xs
            .iter()
            .enumerate()
            .chain(ys.iter().enumerate())
            .filter(|(_, m)| !m.is_one())
            .map(|(l, m)| (l, *m))
            .collect();
        let mut pending: BTreeMap<Vec<(usize, NormalMonomial)>, RatFunc> = BTreeMap::new();
        pending.insert(start, RatFunc::one());
        let mut out = TensorElement::zero(n);
        while let Some((seq, c)) = pending.pop_first() {
            let inversion = (0..seq.len().saturating_sub(1)).find(|&p| seq[p].0 > seq[p + 1].0);
            match inversion {
                None => {
                    let mut slots: Vec<AlgElement> = vec![AlgElement::one(); n];
                    for (l, m) in &seq {
                        slots[*l] = self
                            .alg
                            .mul(&slots[*l], &AlgElement::monomial(*m, RatFunc::one()));
                    }
                    out.add_scaled(&TensorElement::outer(&slots), &c);
                }
                Some(p) => {
                    let (l1, m1) = seq[p];
                    let (l2, m2) = seq[p + 1];
                    let img = self.braid_monomials(&m1, &m2)?;
                    for (s2, v) in img.terms() {
                        let mut next = Vec::with_capacity(seq.len());
                        next.extend_from_slice(&seq[..p]);
                        if !s2[0].is_one() {
                            next.push((l2, s2[0]));
                        }
                        if !s2[1].is_one() {
                            next.push((l1, s2[1]));
                        }
                        next.extend_from_slice(&seq[p + 2..]);
                        let val = &c * v;
                        let slot = pending.entry(next).or_insert_with(RatFunc::zero);
                        *slot = &*slot + &val;
                    }
                }
            }
        }
        Ok(out)
    }
}

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
    debug_assert!(w.len() <= 1 || m.word() == w, "only normal words reach here");
    m
}

/// Cross-copy relations `x₂y₁ = Σ c·(…)₁(…)₂` read off from ψ(x⊗y), plus the unit rules.
pub fn exchange_relations(braider: &Braider, table: &IndetTable) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for x in Gen::BASIC {
        for y in Gen::BASIC {
            let img = braider.braid_words(&[x], &[y])?;
            out.push(format_exchange(x, y, &img, table));
        }
    }
    for x in Gen::BASIC {
        let m = x.monomial();
        out.push(format!("1_2{} = {}", m.render(Some(1)), m.render(Some(1))));
    }
    Ok(out)
}

fn format_exchange(x: Gen, y: Gen, img: &TensorElement, table: &IndetTable) -> String {
    let lhs = format!("{}{}", x.monomial().render(Some(2)), y.monomial().render(Some(1)));
    let parts: Vec<String> = img
        .terms()
        .iter()
        .rev()
        .map(|(s, c)| {
            let mut factors = Vec::new();
            if !s[0].is_one() {
                factors.push(s[0].render(Some(1)));
            }
            if !s[1].is_one() {
                factors.push(s[1].render(Some(2)));
            }
            let basis = if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("*")
            };
            let coeff = print_coeff(c, table);
            if basis == "1" {
                coeff
            } else if coeff == "1" {
                basis
            } else if c.denom().is_one() && coeff[1..].contains(['+', '-']) {
                format!("({coeff})·{basis}")
            } else {
                format!("{coeff}·{basis}")
            }
        })
        .collect();
    let rhs = if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    };
    format!("{lhs} = {rhs}")
}

/// Copy-indexed generators `x₁`, `x₂` in the 2-fold product, as tensors.
pub fn copy_generators() -> Vec<(Gen, usize, TensorElement)> {
    let mut out = Vec::new();
    for copy in 0..2 {
        for g in Gen::BASIC {
            out.push((g, copy, TensorElement::embed(&AlgElement::generator(g), copy, 2)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffield::parse_coeff;
    use crate::oscalg::OscillatorParams;

    fn setup() -> (IndetTable, OscAlgebra, BraidTable) {
        let t = IndetTable::new(&["q", "s"]).unwrap().with_sqrt_alias("Q1", "s").unwrap();
        let v = |x: &str| parse_coeff(x, &t).unwrap();
        let alg = OscAlgebra::new(
            OscillatorParams::new(v("q"), v("Q1"), v("1"), v("0"), v("0")).unwrap(),
        );
        // first row of the type-one table
        let mut bt = BraidTable::default();
        bt.b[0] = v("1");
        bt.b[1] = v("(q^2-Q1)/Q1");
        bt.b[2] = v("Q1");
        bt.z = v("q^2/Q1");
        bt.c[0] = v("-q^2/Q1^2");
        bt.c[1] = v("q^2/Q1^2");
        bt.d[0] = v("q/Q1");
        bt.f[0] = v("q");
        bt.f[1] = v("(q^2-Q1)/Q1");
        bt.g[0] = v("q^2/Q1");
        (t, alg, bt)
    }

    fn mono(g: Gen) -> NormalMonomial {
        g.monomial()
    }

    #[test]
    fn units_pass_through() {
        let (_, alg, bt) = setup();
        let br = Braider::new(alg, bt);
        let r = br.braid_words(&[Gen::One], &[Gen::A]).unwrap();
        assert_eq!(*r, TensorElement::pure(vec![mono(Gen::A), NormalMonomial::ONE], RatFunc::one()));
        let r = br.braid_words(&[Gen::A], &[]).unwrap();
        assert_eq!(*r, TensorElement::pure(vec![NormalMonomial::ONE, mono(Gen::A)], RatFunc::one()));
    }

    #[test]
    fn diagonal_braiding() {
        let (t, alg, bt) = setup();
        let br = Braider::new(alg, bt);
        let r = br.braid_words(&[Gen::A], &[Gen::A]).unwrap();
        let z = parse_coeff("q^2/Q1", &t).unwrap();
        assert_eq!(*r, TensorElement::pure(vec![mono(Gen::A), mono(Gen::A)], z));
    }

    #[test]
    fn annihilator_past_creator() {
        let (t, alg, bt) = setup();
        let br = Braider::new(alg, bt);
        let r = br.braid_words(&[Gen::A], &[Gen::Dagger]).unwrap();
        let mut expected = TensorElement::zero(2);
        expected.add_term(vec![mono(Gen::K), mono(Gen::K)], RatFunc::one());
        expected.add_term(vec![mono(Gen::A), mono(Gen::Dagger)], parse_coeff("(q^2-Q1)/Q1", &t).unwrap());
        expected.add_term(vec![mono(Gen::Dagger), mono(Gen::A)], parse_coeff("Q1", &t).unwrap());
        assert_eq!(*r, expected);
    }

    #[test]
    fn two_fold_products() {
        let (t, alg, bt) = setup();
        let br = Braider::new(alg, bt);
        let a1 = TensorElement::embed(&AlgElement::generator(Gen::A), 0, 2);
        let a2 = TensorElement::embed(&AlgElement::generator(Gen::A), 1, 2);
        let z = parse_coeff("q^2/Q1", &t).unwrap();
        assert_eq!(
            br.tensor_mul(&a2, &a1).unwrap(),
            TensorElement::pure(vec![mono(Gen::A), mono(Gen::A)], z)
        );
        assert_eq!(
            br.tensor_mul(&a1, &a2).unwrap(),
            TensorElement::pure(vec![mono(Gen::A), mono(Gen::A)], RatFunc::one())
        );
        let ad1 = TensorElement::embed(&AlgElement::generator(Gen::Dagger), 0, 2);
        let via_mul = br.tensor_mul(&a2, &ad1).unwrap();
        let via_braid = br.braid(&TensorElement::of_gens(&[Gen::A, Gen::Dagger])).unwrap();
        assert_eq!(via_mul, via_braid);
    }

    #[test]
    fn arity_errors() {
        let (_, alg, bt) = setup();
        let br = Braider::new(alg, bt);
        let x = TensorElement::one(2);
        let y = TensorElement::one(3);
        assert!(matches!(br.tensor_mul(&x, &y), Err(Error::ArityMismatch { .. })));
        assert!(matches!(flip(&y), Err(Error::WrongArity { .. })));
    }

    #[test]
    fn flip_examples() {
        let x = TensorElement::of_gens(&[Gen::A, Gen::Dagger]);
        assert_eq!(flip(&x).unwrap(), TensorElement::of_gens(&[Gen::Dagger, Gen::A]));
        let y = TensorElement::of_gens(&[Gen::K, Gen::One]);
        assert_eq!(flip(&y).unwrap(), TensorElement::of_gens(&[Gen::One, Gen::K]));
        assert_eq!(flip(&flip(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn exchange_strings() {
        let (t, alg, bt) = setup();
        let br = Braider::new(alg, bt);
        let rels = exchange_relations(&br, &t).unwrap();
        assert!(rels.contains(&"a2a1 = (q^2)/(s^2)·a1*a2".to_string()), "{rels:?}");
        assert!(
            rels.contains(&"a2a1* = s^2·a1**a2 + q1^N*q2^N + (q^2-s^2)/(s^2)·a1*a2*".to_string()),
            "{rels:?}"
        );
        assert!(rels.contains(&"1_2a1 = a1".to_string()));
    }
}

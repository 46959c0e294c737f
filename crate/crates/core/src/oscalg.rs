//! Generalized oscillator algebra
//!
//! ```text
//! a q^N = q q^N a,   q^N a* = q a* q^N,   a a* - Q1 a* a = Q2 q^{2N} + Q3 q^N + Q4
//! ```
//!
//! Elements live in the normal-ordered basis `(a*)^i (q^N)^j a^k`. Products are
//! computed with a closed form for `a · (a*)^i`; [`OscAlgebra::rewrite`] is an
//! independent rule-by-rule rewriter used to cross-check it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::coeffield::{print_coeff, IndetTable, RatFunc};
use crate::error::{Error, Result};

/// Letters of a word in the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    /// `a*`
    Dagger,
    /// `q^N`
    K,
    /// `(q^N)^-1`, only in group-like mode
    KInv,
    /// `a`
    A,
    One,
}

impl Gen {
    /// The three generators the structure maps are defined on, in basis order.
    pub const BASIC: [Gen; 3] = [Gen::Dagger, Gen::K, Gen::A];

    pub fn label(self) -> &'static str {
        match self {
            Gen::Dagger => "a*",
            Gen::K => "q^N",
            Gen::KInv => "q^-N",
            Gen::A => "a",
            Gen::One => "1",
        }
    }

    pub fn monomial(self) -> NormalMonomial {
        match self {
            Gen::Dagger => NormalMonomial::new(1, 0, 0),
            Gen::K => NormalMonomial::new(0, 1, 0),
            Gen::KInv => NormalMonomial::new(0, -1, 0),
            Gen::A => NormalMonomial::new(0, 0, 1),
            Gen::One => NormalMonomial::ONE,
        }
    }
}

/// `(a*)^i (q^N)^j a^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalMonomial {
    pub i: u32,
    pub j: i32,
    pub k: u32,
}

impl NormalMonomial {
    pub const ONE: NormalMonomial = NormalMonomial { i: 0, j: 0, k: 0 };

    pub const fn new(i: u32, j: i32, k: u32) -> Self {
        NormalMonomial { i, j, k }
    }

    pub fn is_one(&self) -> bool {
        *self == NormalMonomial::ONE
    }

    /// Grading with deg a* = +1, deg a = -1, deg q^N = 0.
    pub fn degree(&self) -> i64 {
        self.i as i64 - self.k as i64
    }

    /// The monomial spelled as a word of generators.
    pub fn word(&self) -> Vec<Gen> {
        let mut w = Vec::with_capacity((self.i + self.j.unsigned_abs() + self.k) as usize);
        w.extend(std::iter::repeat(Gen::Dagger).take(self.i as usize));
        let kg = if self.j >= 0 { Gen::K } else { Gen::KInv };
        w.extend(std::iter::repeat(kg).take(self.j.unsigned_abs() as usize));
        w.extend(std::iter::repeat(Gen::A).take(self.k as usize));
        w
    }

    /// Number of generator letters.
    pub fn len(&self) -> u32 {
        self.i + self.j.unsigned_abs() + self.k
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Text such as `a^*q^(2N)a`; `sub` adds a copy index (`a1*`, `q1^N`, `a1`).
    pub fn render(&self, sub: Option<usize>) -> String {
        if self.is_one() {
            return match sub {
                Some(n) => format!("1_{n}"),
                None => "1".to_string(),
            };
        }
        let idx = sub.map(|n| n.to_string()).unwrap_or_default();
        let mut parts: Vec<String> = Vec::new();
        let dag = if sub.is_some() {
            format!("a{idx}*")
        } else {
            "a^*".to_string()
        };
        match self.i {
            0 => {}
            1 => parts.push(dag),
            n => parts.push(format!("({dag})^{n}")),
        }
        let qn = format!("q{idx}");
        match self.j {
            0 => {}
            1 => parts.push(format!("{qn}^N")),
            -1 => parts.push(format!("{qn}^(-N)")),
            n => parts.push(format!("{qn}^({n}N)")),
        }
        let a = format!("a{idx}");
        match self.k {
            0 => {}
            1 => parts.push(a),
            n => parts.push(format!("{a}^{n}")),
        }
        parts.join("*")
    }
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

/// Finite linear combination of normal monomials; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgElement {
    terms: BTreeMap<NormalMonomial, RatFunc>,
}

impl AlgElement {
    pub fn zero() -> Self {
        AlgElement::default()
    }

    pub fn one() -> Self {
        AlgElement::monomial(NormalMonomial::ONE, RatFunc::one())
    }

    pub fn scalar(c: RatFunc) -> Self {
        AlgElement::monomial(NormalMonomial::ONE, c)
    }

    pub fn monomial(m: NormalMonomial, c: RatFunc) -> Self {
        let mut e = AlgElement::zero();
        e.add_term(m, c);
        e
    }

    pub fn generator(g: Gen) -> Self {
        AlgElement::monomial(g.monomial(), RatFunc::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (NormalMonomial, RatFunc)>) -> Self {
        let mut e = AlgElement::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: NormalMonomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let v = &*slot + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgElement, c: &RatFunc) {
        for (m, v) in &other.terms {
            self.add_term(*m, v * c);
        }
    }

    pub fn terms(&self) -> &BTreeMap<NormalMonomial, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, m: &NormalMonomial) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
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

    pub fn add(&self, other: &AlgElement) -> AlgElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgElement) -> AlgElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> AlgElement {
        if c.is_zero() {
            return AlgElement::zero();
        }
        AlgElement {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> AlgElement {
        AlgElement {
            terms: self.terms.iter().map(|(m, v)| (*m, -v)).collect(),
        }
    }

    /// Applies a map to every coefficient.
    pub fn map_coeffs(
        &self,
        mut f: impl FnMut(&RatFunc) -> std::result::Result<RatFunc, crate::coeffield::CoeffError>,
    ) -> std::result::Result<AlgElement, crate::coeffield::CoeffError> {
        let mut out = AlgElement::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    pub fn degree(&self) -> Degree {
        degree(self)
    }

    pub fn display<'a>(&'a self, table: &'a IndetTable) -> impl fmt::Display + 'a {
        DisplayElement { el: self, table }
    }
}

struct DisplayElement<'a> {
    el: &'a AlgElement,
    table: &'a IndetTable,
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(String, String)> = self
            .el
            .terms
            .iter()
            .rev()
            .map(|(m, c)| (print_coeff(c, self.table), m.render(None)))
            .collect();
        f.write_str(&join_terms(&parts))
    }
}

/// Joins `(coefficient, basis)` pairs as `c1*m1 + c2*m2`, eliding unit coefficients.
pub(crate) fn join_terms(parts: &[(String, String)]) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (c, m)) in parts.iter().enumerate() {
        let (neg, body) = match c.strip_prefix('-') {
            Some(rest) if is_simple_coeff(rest) => (true, rest.to_string()),
            _ => (false, c.clone()),
        };
        let coeff_part = if m == "1" {
            body.clone()
        } else if body == "1" {
            String::new()
        } else if is_simple_coeff(&body) || is_fraction_form(&body) {
            format!("{body}*")
        } else {
            format!("({body})*")
        };
        let term = if m == "1" {
            coeff_part
        } else {
            format!("{coeff_part}{m}")
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    out
}

fn is_simple_coeff(c: &str) -> bool {
    !c.chars().any(|ch| matches!(ch, '+' | '-' | '/' | '(' | ')'))
}

/// `(num)/(den)` as printed by the coefficient grammar; safe as a left factor.
fn is_fraction_form(c: &str) -> bool {
    let mut depth = 0i32;
    let mut closes = Vec::new();
    for (i, ch) in c.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    closes.push(i);
                }
            }
            _ if depth == 0 => {
                if !(ch == '/' && closes.len() == 1 && i == closes[0] + 1) {
                    return false;
                }
            }
            _ => {}
        }
    }
    c.starts_with('(') && closes.len() == 2 && closes[1] == c.len() - 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

pub fn degree(x: &AlgElement) -> Degree {
    let mut it = x.terms.keys().map(|m| m.degree());
    let Some(first) = it.next() else {
        return Degree::Zero;
    };
    if it.all(|d| d == first) {
        Degree::Homogeneous(first)
    } else {
        Degree::Inhomogeneous
    }
}

/// `q`, `Q1..Q4` of the defining relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OscillatorParams {
    pub q: RatFunc,
    pub q1: RatFunc,
    pub q2: RatFunc,
    pub q3: RatFunc,
    pub q4: RatFunc,
}

impl OscillatorParams {
    pub fn new(q: RatFunc, q1: RatFunc, q2: RatFunc, q3: RatFunc, q4: RatFunc) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroQ);
        }
        Ok(OscillatorParams { q, q1, q2, q3, q4 })
    }

    /// `Q1 = q`, `Q2 = Q3 = Q4 = 0`: the three dimensional braided space.
    pub fn braided_space(q: RatFunc) -> Result<Self> {
        let q1 = q.clone();
        OscillatorParams::new(q, q1, RatFunc::zero(), RatFunc::zero(), RatFunc::zero())
    }

    pub fn map(
        &self,
        mut f: impl FnMut(&RatFunc) -> std::result::Result<RatFunc, crate::coeffield::CoeffError>,
    ) -> Result<OscillatorParams> {
        OscillatorParams::new(f(&self.q)?, f(&self.q1)?, f(&self.q2)?, f(&self.q3)?, f(&self.q4)?)
    }
}

/// How [`OscAlgebra::rewrite`] picks the next redex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Pseudo-random choice driven by the given seed.
    Random(u64),
}

/// The algebra for one parameter set. Cheap to share behind an `Arc`.
#[derive(Debug)]
pub struct OscAlgebra {
    params: OscillatorParams,
    group_like: bool,
    left_a_cache: Mutex<HashMap<(u32, u32), Arc<AlgElement>>>,
}

impl Clone for OscAlgebra {
    fn clone(&self) -> Self {
        OscAlgebra::with_mode(self.params.clone(), self.group_like)
    }
}

impl OscAlgebra {
    pub fn new(params: OscillatorParams) -> Self {
        OscAlgebra::with_mode(params, false)
    }

    /// `group_like` admits `(q^N)^-1`, i.e. negative `j`.
    pub fn with_mode(params: OscillatorParams, group_like: bool) -> Self {
        OscAlgebra {
            params,
            group_like,
            left_a_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> &OscillatorParams {
        &self.params
    }

    pub fn group_like(&self) -> bool {
        self.group_like
    }

    fn q_pow(&self, n: i64) -> RatFunc {
        self.params.q.pow(n as i32).expect("q is nonzero")
    }

    fn check_monomial(&self, m: &NormalMonomial) -> Result<()> {
        if m.j < 0 && !self.group_like {
            return Err(Error::InverseDisabled);
        }
        Ok(())
    }

    /// `a · (a*)^i (q^N)^j a^k` in normal order.
    fn left_mul_a(&self, m: NormalMonomial) -> AlgElement {
        let p = &self.params;
        let mut out = AlgElement::zero();
        let NormalMonomial { i, j, k } = m;
        out.add_term(
            NormalMonomial::new(i, j, k + 1),
            &p.q1.pow(i as i32).unwrap() * &self.q_pow(j as i64),
        );
        if i > 0 {
            // sum_t Q1^t P(q^{i-1-t} q^N) with P(x) = Q2 x^2 + Q3 x + Q4
            let mut c2 = RatFunc::zero();
            let mut c3 = RatFunc::zero();
            let mut c4 = RatFunc::zero();
            for t in 0..i {
                let q1t = p.q1.pow(t as i32).unwrap();
                let shift = (i - 1 - t) as i64;
                c2 = &c2 + &(&q1t * &self.q_pow(2 * shift));
                c3 = &c3 + &(&q1t * &self.q_pow(shift));
                c4 = &c4 + &q1t;
            }
            out.add_term(NormalMonomial::new(i - 1, j + 2, k), &c2 * &p.q2);
            out.add_term(NormalMonomial::new(i - 1, j + 1, k), &c3 * &p.q3);
            out.add_term(NormalMonomial::new(i - 1, j, k), &c4 * &p.q4);
        }
        out
    }

    /// Normal form of `a^k (a*)^i`.
    fn a_pow_times_dagger_pow(&self, k: u32, i: u32) -> Arc<AlgElement> {
        if let Some(hit) = self.left_a_cache.lock().unwrap().get(&(k, i)) {
            return hit.clone();
        }
        let value = if k == 0 {
            AlgElement::monomial(NormalMonomial::new(i, 0, 0), RatFunc::one())
        } else {
            let prev = self.a_pow_times_dagger_pow(k - 1, i);
            let mut acc = AlgElement::zero();
            for (m, c) in prev.terms() {
                acc.add_scaled(&self.left_mul_a(*m), c);
            }
            acc
        };
        let value = Arc::new(value);
        self.left_a_cache
            .lock()
            .unwrap()
            .insert((k, i), value.clone());
        value
    }

    pub fn mul_monomials(&self, m1: &NormalMonomial, m2: &NormalMonomial) -> AlgElement {
        if m1.is_one() {
            return AlgElement::monomial(*m2, RatFunc::one());
        }
        if m2.is_one() {
            return AlgElement::monomial(*m1, RatFunc::one());
        }
        let middle = self.a_pow_times_dagger_pow(m1.k, m2.i);
        let mut out = AlgElement::zero();
        for (m, c) in middle.terms() {
            // a*^i1 K^j1 (a*^i K^j a^k) K^j2 a^k2
            let phase = m1.j as i64 * m.i as i64 + m.k as i64 * m2.j as i64;
            let coeff = if phase == 0 {
                c.clone()
            } else {
                c * &self.q_pow(phase)
            };
            out.add_term(
                NormalMonomial::new(m1.i + m.i, m1.j + m.j + m2.j, m.k + m2.k),
                coeff,
            );
        }
        out
    }

    pub fn mul(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                out.add_scaled(&self.mul_monomials(m1, m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn mul_checked(&self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
        for m in x.terms().keys().chain(y.terms().keys()) {
            self.check_monomial(m)?;
        }
        Ok(self.mul(x, y))
    }

    /// Normal form of a word by repeated multiplication.
    pub fn word_product(&self, word: &[Gen]) -> Result<AlgElement> {
        let mut acc = AlgElement::one();
        for g in word {
            if *g == Gen::KInv && !self.group_like {
                return Err(Error::InverseDisabled);
            }
            acc = self.mul(&acc, &AlgElement::generator(*g));
        }
        Ok(acc)
    }

    /// Normal-orders a word by exhaustive rule application (leftmost redex first).
    pub fn rewrite_step(&self, word: &[Gen]) -> Result<AlgElement> {
        self.rewrite(word, Strategy::Leftmost)
    }

    /// Normal-orders a word by applying single rewrite rules with the given strategy:
    /// `a q^N → q q^N a`, `q^N a* → q a* q^N`, `a a* → Q1 a* a + Q2 q^N q^N + Q3 q^N + Q4`,
    /// unit elimination, and in group-like mode the rules for `(q^N)^-1`.
    pub fn rewrite(&self, word: &[Gen], strategy: Strategy) -> Result<AlgElement> {
        if !self.group_like && word.contains(&Gen::KInv) {
            return Err(Error::InverseDisabled);
        }
        let p = &self.params;
        let q_inv = p.q.inverse().expect("q is nonzero");
        let mut rng = match strategy {
            Strategy::Random(seed) => seed | 1,
            _ => 0,
        };
        let mut pending: BTreeMap<Vec<Gen>, RatFunc> = BTreeMap::new();
        pending.insert(word.to_vec(), RatFunc::one());
        let mut done = AlgElement::zero();
        while let Some((w, c)) = pending.pop_first() {
            if c.is_zero() {
                continue;
            }
            let redexes = redexes(&w);
            if redexes.is_empty() {
                done.add_term(word_to_monomial(&w), c);
                continue;
            }
            let pos = match strategy {
                Strategy::Leftmost => redexes[0],
                Strategy::Rightmost => *redexes.last().unwrap(),
                Strategy::Random(_) => {
                    // xorshift64
                    rng ^= rng << 13;
                    rng ^= rng >> 7;
                    rng ^= rng << 17;
                    redexes[(rng % redexes.len() as u64) as usize]
                }
            };
            let mut emit = |replacement: &[Gen], factor: RatFunc| {
                if factor.is_zero() {
                    return;
                }
                let mut nw = Vec::with_capacity(w.len() + 1);
                nw.extend_from_slice(&w[..pos]);
                nw.extend_from_slice(replacement);
                let tail = if w[pos] == Gen::One { pos + 1 } else { pos + 2 };
                nw.extend_from_slice(&w[tail..]);
                let v = &c * &factor;
                let slot = pending.entry(nw).or_insert_with(RatFunc::zero);
                *slot = &*slot + &v;
            };
            if w[pos] == Gen::One {
                emit(&[], RatFunc::one());
                continue;
            }
            match (w[pos], w[pos + 1]) {
                (Gen::A, Gen::K) => emit(&[Gen::K, Gen::A], p.q.clone()),
                (Gen::K, Gen::Dagger) => emit(&[Gen::Dagger, Gen::K], p.q.clone()),
                (Gen::A, Gen::KInv) => emit(&[Gen::KInv, Gen::A], q_inv.clone()),
                (Gen::KInv, Gen::Dagger) => emit(&[Gen::Dagger, Gen::KInv], q_inv.clone()),
                (Gen::K, Gen::KInv) | (Gen::KInv, Gen::K) => emit(&[], RatFunc::one()),
                (Gen::A, Gen::Dagger) => {
                    emit(&[Gen::Dagger, Gen::A], p.q1.clone());
                    emit(&[Gen::K, Gen::K], p.q2.clone());
                    emit(&[Gen::K], p.q3.clone());
                    emit(&[], p.q4.clone());
                }
                other => unreachable!("not a redex: {other:?}"),
            }
        }
        Ok(done)
    }
}

fn rank(g: Gen) -> u8 {
    match g {
        Gen::Dagger => 0,
        Gen::K | Gen::KInv => 1,
        Gen::A => 2,
        Gen::One => 3,
    }
}

/// Positions where a rule applies.
fn redexes(w: &[Gen]) -> Vec<usize> {
    let mut out = Vec::new();
    for (p, g) in w.iter().enumerate() {
        if *g == Gen::One {
            out.push(p);
            continue;
        }
        if p + 1 < w.len() {
            let h = w[p + 1];
            if h == Gen::One {
                continue;
            }
            let inverted = rank(*g) > rank(h);
            let cancel = matches!((g, h), (Gen::K, Gen::KInv) | (Gen::KInv, Gen::K));
            if inverted || cancel {
                out.push(p);
            }
        }
    }
    out
}

fn word_to_monomial(w: &[Gen]) -> NormalMonomial {
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

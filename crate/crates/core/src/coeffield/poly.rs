//! Sparse multivariate polynomials over the integers.
//!
//! Variables are plain indices into an [`IndetTable`](super::IndetTable).
//! Terms are kept strictly descending in lexicographic order with variable 0
//! the most significant, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize, exp: u32) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = exp;
        Monomial::from_exps(v)
    }

    pub fn from_exps(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn exp(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut v = long.0.clone();
        for (slot, e) in v.iter_mut().zip(short.0.iter()) {
            *slot += e;
        }
        Monomial(v)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        for (slot, e) in v.iter_mut().zip(other.0.iter()) {
            if *slot < *e {
                return None;
            }
            *slot -= e;
        }
        Some(Monomial::from_exps(v))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let v = self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| *a.min(b))
            .collect();
        Monomial::from_exps(v)
    }

    /// Copy with the exponent of `index` set to zero.
    pub fn without(&self, index: usize) -> Monomial {
        if index >= self.0.len() {
            return self.clone();
        }
        let mut v = self.0.clone();
        v[index] = 0;
        Monomial::from_exps(v)
    }

    /// Variables with nonzero exponent, as `(index, exponent)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| (i, *e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(index: usize) -> Self {
        Poly::monomial(Monomial::var(index, 1), BigInt::one())
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value if this is a constant (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })),
        );
        Poly { terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(slot) => *slot += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly {
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Multiplication by a single term keeps the order, so no re-sorting.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, cc)| (m.clone(), cc * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient by an integer; `None` if some coefficient is not divisible.
    pub fn div_scalar(&self, c: &BigInt) -> Option<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, cc) in &self.terms {
            let (q, r) = cc.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.push((m.clone(), q));
        }
        Some(Poly { terms })
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = divisor.as_constant() {
            return self.div_scalar(&c);
        }
        let (dm, dc) = divisor.terms[0].clone();
        if divisor.terms.len() == 1 {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let qm = m.div(&dm)?;
                let (qc, r) = c.div_rem(&dc);
                if !r.is_zero() {
                    return None;
                }
                terms.push((qm, qc));
            }
            return Some(Poly { terms });
        }
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            let qm = rm.div(&dm)?;
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        // lex-leading terms of successive remainders strictly decrease
        Some(Poly { terms: quot })
    }

    /// Gcd of the integer coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the integer content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        self.div_scalar(&c).expect("content divides every coefficient")
    }

    /// Flips the sign so that the leading coefficient is positive.
    pub fn sign_normalized(&self) -> Poly {
        if self.terms.first().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Monomial gcd of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for (m, _) in it {
            g = g.gcd(m);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    /// Sorted indices of the variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen: Vec<bool> = Vec::new();
        for (m, _) in &self.terms {
            if m.exps().len() > seen.len() {
                seen.resize(m.exps().len(), false);
            }
            for (i, _) in m.support() {
                seen[i] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, s)| **s)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    /// Coefficients of `self` as a polynomial in `var`; entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(var) as usize].push((m.without(var), c.clone()));
        }
        // removing one variable preserves relative lex order inside a bucket
        buckets.into_iter().map(|terms| Poly { terms }).collect()
    }

    pub fn from_coefficients_in(var: usize, coeffs: &[Poly]) -> Poly {
        let mut acc = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul_term(&Monomial::var(var, k as u32), &BigInt::one()));
            }
        }
        acc
    }

    /// Replaces `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        if !self.contains_var(var) {
            return self.clone();
        }
        let coeffs = self.coefficients_in(var);
        // Horner
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    /// `den^d * self(var := num/den)` where `d` is the degree of `self` in `var`.
    pub fn substitute_fraction(&self, var: usize, num: &Poly, den: &Poly) -> Poly {
        if !self.contains_var(var) {
            return self.clone();
        }
        let coeffs = self.coefficients_in(var);
        let d = coeffs.len() - 1;
        let mut num_pows = vec![Poly::one()];
        let mut den_pows = vec![Poly::one()];
        for _ in 0..d {
            num_pows.push(num_pows.last().unwrap().mul(num));
            den_pows.push(den_pows.last().unwrap().mul(den));
        }
        let mut acc = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&num_pows[k]).mul(&den_pows[d - k]));
        }
        acc
    }

    /// Evaluates with `values[i]` for variable `i`; `None` entries must not occur in `self`.
    pub fn eval(&self, values: &[Option<BigRational>]) -> Result<BigRational, usize> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, e) in m.support() {
                let v = values.get(i).and_then(|v| v.as_ref()).ok_or(i)?;
                t *= num_traits::pow(v.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Partial evaluation: variables with a value are replaced, others are kept.
    pub fn eval_partial(&self, values: &[Option<BigRational>]) -> (Poly, BigInt) {
        // returns (numerator, common denominator) with numerator/denominator == result
        let mut terms: Vec<(Monomial, BigRational)> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            let mut rest = m.exps().to_vec();
            for (i, e) in m.support() {
                if let Some(Some(v)) = values.get(i) {
                    t *= num_traits::pow(v.clone(), e as usize);
                    rest[i] = 0;
                }
            }
            terms.push((Monomial::from_exps(rest), t));
        }
        let mut lcm = BigInt::one();
        for (_, t) in &terms {
            lcm = lcm.lcm(t.denom());
        }
        let poly = Poly::from_terms(
            terms
                .into_iter()
                .map(|(m, t)| (m, t.numer() * (&lcm / t.denom()))),
        );
        (poly, lcm)
    }

    /// Greatest common divisor with positive leading coefficient; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        gcd_poly(self, other)
    }

    /// Polynomial text in the coefficient grammar, using `names` for variables.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (i, e) in m.support() {
                let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

fn int_gcd_poly(a: &Poly, b: &Poly) -> Poly {
    Poly::constant(a.content().gcd(&b.content()))
}

fn gcd_poly(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.sign_normalized();
    }
    if b.is_zero() {
        return a.sign_normalized();
    }
    if a.is_constant() || b.is_constant() {
        return int_gcd_poly(a, b);
    }
    if a.is_monomial() || b.is_monomial() {
        let m = a.monomial_content().gcd(&b.monomial_content());
        let c = a.content().gcd(&b.content());
        return Poly::monomial(m, c);
    }
    if a == b {
        return a.sign_normalized();
    }
    // peel variables that occur in only one argument
    let va = a.variables();
    let vb = b.variables();
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        let ca = content_in(a, v);
        return gcd_poly(&ca, b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        let cb = content_in(b, v);
        return gcd_poly(a, &cb);
    }
    // cheap divisibility shortcuts
    if let Some(_) = b.div_exact(a) {
        return a.sign_normalized();
    }
    if let Some(_) = a.div_exact(b) {
        return b.sign_normalized();
    }
    let v = *va
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), v))
        .expect("non-constant polynomial has a variable");
    let ca = a.coefficients_in(v);
    let cb = b.coefficients_in(v);
    let conta = gcd_list(&ca);
    let contb = gcd_list(&cb);
    let cont = gcd_poly(&conta, &contb);
    let pa: Vec<Poly> = ca.iter().map(|c| c.div_exact(&conta).unwrap()).collect();
    let pb: Vec<Poly> = cb.iter().map(|c| c.div_exact(&contb).unwrap()).collect();
    let g = univariate_primitive_gcd(pa, pb);
    let g = Poly::from_coefficients_in(v, &g);
    cont.mul(&g).sign_normalized()
}

fn gcd_list(polys: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        g = gcd_poly(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Content of `p` seen as a polynomial in `var` (gcd of its coefficients).
fn content_in(p: &Poly, var: usize) -> Poly {
    gcd_list(&p.coefficients_in(var))
}

fn trim(v: &mut Vec<Poly>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    if v.len() == 1 && v[0].is_zero() {
        v.clear();
    }
}

fn primitive_univariate(v: &[Poly]) -> Vec<Poly> {
    let c = gcd_list(v);
    if c.is_zero() || c.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x.div_exact(&c).unwrap()).collect()
}

/// Pseudo-remainder of `f` by `g` as univariate polynomials with polynomial coefficients.
fn pseudo_rem(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let mut r = f.to_vec();
    let n = g.len() - 1;
    let lg = g[n].clone();
    trim(&mut r);
    while !r.is_empty() && r.len() - 1 >= n {
        let m = r.len() - 1;
        let lr = r[m].clone();
        let shift = m - n;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(&lg)).collect();
        for (k, gc) in g.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&gc.mul(&lr));
        }
        debug_assert!(next[m].is_zero());
        next.pop();
        r = next;
        trim(&mut r);
    }
    r
}

fn univariate_primitive_gcd(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (mut r0, mut r1) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    trim(&mut r0);
    trim(&mut r1);
    loop {
        if r1.is_empty() {
            return primitive_univariate(&r0);
        }
        if r1.len() == 1 {
            return vec![Poly::one()];
        }
        let r = pseudo_rem(&r0, &r1);
        r0 = r1;
        r1 = primitive_univariate(&r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(BigInt::from(n))
    }

    #[test]
    fn lex_order_puts_first_variable_first() {
        let p = y().pow(3).add(&x());
        assert_eq!(p.terms()[0].0, Monomial::var(0, 1));
    }

    #[test]
    fn exact_division_and_remainder() {
        let a = x().add(&y());
        let b = x().sub(&y());
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.add(&c(1)).div_exact(&a), None);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let common = x().mul(&y()).add(&c(3));
        let f = common.mul(&x().sub(&c(2)));
        let g = common.mul(&y().pow(2).add(&x()));
        assert_eq!(f.gcd(&g), common.primitive());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let f = x().pow(2).add(&y());
        let g = x().add(&y().pow(2));
        assert!(f.gcd(&g).is_one());
    }

    #[test]
    fn gcd_with_integer_content() {
        let f = x().scale(&BigInt::from(6)).add(&c(4));
        let g = x().scale(&BigInt::from(9)).add(&c(6));
        assert_eq!(f.gcd(&g), x().scale(&BigInt::from(3)).add(&c(2)));
    }

    #[test]
    fn substitute_fraction_clears_denominator() {
        // x^2 + y at x = 1/y  ->  1 + y^3
        let p = x().pow(2).add(&y());
        let r = p.substitute_fraction(0, &c(1), &y());
        assert_eq!(r, y().pow(3).add(&c(1)));
    }

    #[test]
    fn render_terms() {
        let names = vec!["q".to_string(), "s".to_string()];
        let p = x().pow(2).sub(&y().pow(2).scale(&BigInt::from(3))).add(&c(-1));
        assert_eq!(p.render(&names), "q^2-3*s^2-1");
    }
}

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, Poly};
use super::CoeffError;

/// Element of ℚ(x₁, …, xₙ), kept as a reduced fraction of integer polynomials.
///
/// Canonical form: `gcd(num, den) = 1`, the denominator's leading coefficient
/// is positive, and zero is `0/1`. Two values are equal iff their fields are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_poly(Poly::constant(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        RatFunc::from_poly(Poly::constant(n))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        RatFunc {
            num: Poly::constant(r.numer().clone()),
            den: Poly::constant(r.denom().clone()),
        }
        .sign_fixed()
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(index: usize) -> Self {
        RatFunc::from_poly(Poly::var(index))
    }

    /// Canonicalizes `num/den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(RatFunc::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        RatFunc { num, den }.sign_fixed()
    }

    fn sign_fixed(self) -> Self {
        if self.den.leading_coeff().is_negative() {
            RatFunc {
                num: self.num.neg(),
                den: self.den.neg(),
            }
        } else {
            self
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The rational value if no indeterminate occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn inverse(&self) -> Result<RatFunc, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(RatFunc {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .sign_fixed())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, CoeffError> {
        Ok(self * &other.inverse()?)
    }

    /// Integer power; negative exponents invert (and fail on zero).
    pub fn pow(&self, e: i32) -> Result<RatFunc, CoeffError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let e = e as u32;
        Ok(RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    /// Exact value at a full rational point; `values[i]` is the value of variable `i`.
    pub fn eval_at(&self, values: &[Option<BigRational>]) -> Result<BigRational, CoeffError> {
        let n = self
            .num
            .eval(values)
            .map_err(|i| CoeffError::MissingSymbol(format!("#{i}")))?;
        let d = self
            .den
            .eval(values)
            .map_err(|i| CoeffError::MissingSymbol(format!("#{i}")))?;
        if d.is_zero() {
            return Err(CoeffError::Pole);
        }
        Ok(n / d)
    }

    /// Substitutes rationals for some variables and keeps the rest symbolic.
    pub fn eval_partial(&self, values: &[Option<BigRational>]) -> Result<RatFunc, CoeffError> {
        let (n, nd) = self.num.eval_partial(values);
        let (d, dd) = self.den.eval_partial(values);
        if d.is_zero() {
            return Err(CoeffError::Pole);
        }
        // (n/nd) / (d/dd) = (n*dd) / (d*nd)
        RatFunc::new(n.scale(&dd), d.scale(&nd))
    }

    /// Replaces variable `var` by the rational function `value`.
    pub fn substitute(&self, var: usize, value: &RatFunc) -> Result<RatFunc, CoeffError> {
        if !self.num.contains_var(var) && !self.den.contains_var(var) {
            return Ok(self.clone());
        }
        let n = subst_poly(&self.num, var, value);
        let d = subst_poly(&self.den, var, value);
        if d.is_zero() {
            return Err(CoeffError::Pole);
        }
        n.checked_div(&d)
    }

    /// Replaces several variables at once; `values[i] = Some(v)` means variable `i := v`.
    pub fn substitute_all(&self, values: &[Option<RatFunc>]) -> Result<RatFunc, CoeffError> {
        let n = subst_poly_all(&self.num, values);
        let d = subst_poly_all(&self.den, values);
        if d.is_zero() {
            return Err(CoeffError::Pole);
        }
        n.checked_div(&d)
    }
}

fn subst_poly(p: &Poly, var: usize, value: &RatFunc) -> RatFunc {
    let coeffs = p.coefficients_in(var);
    let mut acc = RatFunc::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * value) + &RatFunc::from_poly(c.clone());
    }
    acc
}

fn subst_poly_all(p: &Poly, values: &[Option<RatFunc>]) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut kept = m.exps().to_vec();
        let mut factor = RatFunc::one();
        for (i, e) in m.support() {
            if let Some(Some(v)) = values.get(i) {
                kept[i] = 0;
                factor = &factor * &v.pow(e as i32).expect("nonnegative power");
            }
        }
        let term = RatFunc::from_poly(Poly::monomial(Monomial::from_exps(kept), c.clone()));
        acc = &acc + &(&term * &factor);
    }
    acc
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFunc::reduce(self.num.add(&other.num), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc {
                num: self.num.mul(&other.den).add(&other.num),
                den: other.den.clone(),
            };
        }
        if other.den.is_one() {
            return RatFunc {
                num: other.num.mul(&self.den).add(&self.num),
                den: self.den.clone(),
            };
        }
        let g = self.den.gcd(&other.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = other.den.div_exact(&g).unwrap();
        let num = self.num.mul(&b).add(&other.num.mul(&a));
        let den = a.mul(&other.den);
        RatFunc::reduce(num, den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, other: &RatFunc) -> RatFunc {
        self + &(-other)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc {
                num: self.num.mul(&other.num),
                den: Poly::one(),
            };
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFunc {
            num: n1.mul(&n2),
            den: d1.mul(&d2),
        }
        .sign_fixed()
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] for untrusted input.
    fn div(self, other: &RatFunc) -> RatFunc {
        self.checked_div(other).expect("division by zero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, other: RatFunc) -> RatFunc {
                (&self).$m(&other)
            }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, other: &'a RatFunc) -> RatFunc {
                (&self).$m(other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = Vec::new();
        if self.den.is_one() {
            write!(f, "{}", self.num.render(&names))
        } else {
            write!(f, "({})/({})", self.num.render(&names), self.den.render(&names))
        }
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl From<BigRational> for RatFunc {
    fn from(r: BigRational) -> Self {
        RatFunc::from_rational(&r)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

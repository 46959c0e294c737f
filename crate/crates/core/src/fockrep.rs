//! Truncated Fock-space representations of the oscillator families.
//!
//! On `|0⟩..|L⟩` the generators act as `a|n⟩ = a_n|n−1⟩`,
//! `a*|n⟩ = a*_{n+1}|n+1⟩`, `q^N|n⟩ = qⁿ|n⟩`, and `a*a|n⟩ = [n]|n⟩`
//! where `[n]` is the occupation number of the family.

use std::fmt;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Oscillator family. Type 1 has `aa* − Q1 a*a = q^{2N}`, type 2 has
/// `aa* − Q1 a*a = q^N`; the Biedenharn–Macfarlane (BM) cases fix
/// `Q1 = q⁻²` and `Q1 = q⁻¹` respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Type1,
    Type2,
    Bm1,
    Bm2,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Type1, Family::Type2, Family::Bm1, Family::Bm2];

    /// Power of `q` in the inhomogeneous term: `q^{2N}` or `q^N`.
    fn step(self) -> i32 {
        match self {
            Family::Type1 | Family::Bm1 => 2,
            Family::Type2 | Family::Bm2 => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Type1 => "type1",
            Family::Type2 => "type2",
            Family::Bm1 => "bm1",
            Family::Bm2 => "bm2",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family at exact numeric parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockParams {
    pub family: Family,
    pub q: BigRational,
    pub q1: BigRational,
}

impl FockParams {
    /// Type 1 with `Q1 = p⁻²`.
    pub fn type1(q: BigRational, p_inv_sq: BigRational) -> Result<Self> {
        FockParams::new(Family::Type1, q, p_inv_sq)
    }

    /// Type 2 with `Q1 = p⁻¹`.
    pub fn type2(q: BigRational, p_inv: BigRational) -> Result<Self> {
        FockParams::new(Family::Type2, q, p_inv)
    }

    pub fn bm1(q: BigRational) -> Result<Self> {
        let q1 = nonzero(&q, "q")?.recip().pow(2);
        FockParams::new(Family::Bm1, q, q1)
    }

    pub fn bm2(q: BigRational) -> Result<Self> {
        let q1 = nonzero(&q, "q")?.recip();
        FockParams::new(Family::Bm2, q, q1)
    }

    /// Builds any family; for the BM families `q1` must equal the forced value.
    pub fn new(family: Family, q: BigRational, q1: BigRational) -> Result<Self> {
        nonzero(&q, "q")?;
        nonzero(&q1, "Q1")?;
        let forced = match family {
            Family::Bm1 => Some(q.recip().pow(2)),
            Family::Bm2 => Some(q.recip()),
            _ => None,
        };
        if forced.is_some_and(|f| f != q1) {
            return Err(Error::Fock(format!("{family} fixes Q1; got {q1}")));
        }
        Ok(FockParams { family, q, q1 })
    }

    /// `q^step` — the ratio of the inhomogeneous term between neighbouring states.
    fn r(&self) -> BigRational {
        self.q.pow(self.family.step())
    }
}

fn nonzero<'a>(x: &'a BigRational, name: &str) -> Result<&'a BigRational> {
    if x.is_zero() {
        Err(Error::Fock(format!("{name} must be nonzero")))
    } else {
        Ok(x)
    }
}

/// What to do when the closed form's denominator `Q1 − q^step` vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Degenerate {
    #[default]
    Error,
    /// Use the limit `n·r^{n−1}` with `r = q^step`.
    Limit,
}

/// `[n]` from the closed form `(Q1ⁿ − rⁿ)/(Q1 − r)`.
pub fn occupation_closed(n: u32, p: &FockParams, degenerate: Degenerate) -> Result<BigRational> {
    let r = p.r();
    let den = &p.q1 - &r;
    if den.is_zero() {
        return match degenerate {
            Degenerate::Error => Err(Error::DegenerateDenominator(format!(
                "{}: Q1 = q^{} = {}",
                p.family,
                p.family.step(),
                r
            ))),
            Degenerate::Limit if n == 0 => Ok(BigRational::zero()),
            Degenerate::Limit => Ok(BigRational::from_integer(n.into()) * r.pow(n as i32 - 1)),
        };
    }
    Ok((p.q1.pow(n as i32) - r.pow(n as i32)) / den)
}

/// `[n]` from the recursion `[0] = 0`, `[n+1] = Q1[n] + rⁿ` obtained by
/// evaluating the defining relation on `|n⟩`.
pub fn occupation_recursive(n: u32, p: &FockParams) -> BigRational {
    let r = p.r();
    let mut value = BigRational::zero();
    let mut rn = BigRational::one();
    for _ in 0..n {
        value = &p.q1 * &value + &rn;
        rn *= &r;
    }
    value
}

/// `[n]`, computed both ways; a disagreement is reported as an error.
pub fn occupation(n: u32, p: &FockParams, degenerate: Degenerate) -> Result<BigRational> {
    let closed = occupation_closed(n, p, degenerate)?;
    let recursive = occupation_recursive(n, p);
    if closed != recursive {
        return Err(Error::Fock(format!("[{n}]: closed form {closed} ≠ recursion {recursive}")));
    }
    Ok(closed)
}

/// One row of an occupation table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OccupationRow {
    pub n: u32,
    pub closed: String,
    pub recursive: String,
    pub agree: bool,
}

pub fn occupation_table(p: &FockParams, levels: u32, degenerate: Degenerate) -> Result<Vec<OccupationRow>> {
    (0..=levels)
        .map(|n| {
            let closed = occupation_closed(n, p, degenerate)?;
            let recursive = occupation_recursive(n, p);
            Ok(OccupationRow {
                n,
                agree: closed == recursive,
                closed: closed.to_string(),
                recursive: recursive.to_string(),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Gauge {
    /// `a_n = [n]`, `a*_n = 1`: exact rational entries.
    #[default]
    Exact,
    /// `a_n = a*_n = √[n]`: floating point, `a*` is the adjoint of `a`.
    Hermitian,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockConfig {
    pub params: FockParams,
    /// Highest state `|L⟩`; must be at least 1.
    pub levels: usize,
    pub gauge: Gauge,
}

impl FockConfig {
    pub fn new(params: FockParams, levels: usize, gauge: Gauge) -> Result<Self> {
        if levels < 1 {
            return Err(Error::Fock("levels must be at least 1".into()));
        }
        Ok(FockConfig { params, levels, gauge })
    }

    fn occupations(&self) -> Result<Vec<BigRational>> {
        (0..=self.levels as u32)
            .map(|n| occupation(n, &self.params, Degenerate::Limit))
            .collect()
    }
}

/// Matrices of `a`, `a*`, `q^N` on `|0⟩..|L⟩` (column `n` is the image of `|n⟩`).
#[derive(Clone, Debug, PartialEq)]
pub struct Matrices<T: nalgebra::Scalar> {
    pub a: DMatrix<T>,
    pub adag: DMatrix<T>,
    pub k: DMatrix<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FockMatrices {
    Exact(Matrices<BigRational>),
    Hermitian(Matrices<f64>),
}

pub fn build_matrices(cfg: &FockConfig) -> Result<FockMatrices> {
    let occ = cfg.occupations()?;
    let dim = cfg.levels + 1;
    let qn = |n: usize| cfg.params.q.pow(n as i32);
    Ok(match cfg.gauge {
        Gauge::Exact => FockMatrices::Exact(Matrices {
            a: DMatrix::from_fn(dim, dim, |r, c| if c == r + 1 { occ[c].clone() } else { BigRational::zero() }),
            adag: DMatrix::from_fn(dim, dim, |r, c| if r == c + 1 { BigRational::one() } else { BigRational::zero() }),
            k: DMatrix::from_fn(dim, dim, |r, c| if r == c { qn(r) } else { BigRational::zero() }),
        }),
        Gauge::Hermitian => {
            if let Some((n, v)) = occ.iter().enumerate().skip(1).find(|(_, v)| !v.is_positive()) {
                return Err(Error::Fock(format!("hermitian gauge needs [n] > 0, but [{n}] = {v}")));
            }
            let roots: Vec<f64> = occ.iter().map(|v| to_f64(v).sqrt()).collect();
            FockMatrices::Hermitian(Matrices {
                a: DMatrix::from_fn(dim, dim, |r, c| if c == r + 1 { roots[c] } else { 0.0 }),
                adag: DMatrix::from_fn(dim, dim, |r, c| if r == c + 1 { roots[r] } else { 0.0 }),
                k: DMatrix::from_fn(dim, dim, |r, c| if r == c { to_f64(&qn(r)) } else { 0.0 }),
            })
        }
    })
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Residual of one defining relation, as a max-norm over states.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationResidual {
    pub relation: &'static str,
    /// On `|0⟩..|L−1⟩`; relative to the largest term in the floating gauge.
    pub interior: f64,
    /// Exact interior value (exact gauge only).
    pub interior_exact: Option<String>,
    /// On the top state `|L⟩` alone: the truncation artifact.
    pub boundary: f64,
}

impl RelationResidual {
    /// Exactly zero in the exact gauge, or below `tol` (relative) in the floating gauge.
    pub fn holds(&self, tol: f64) -> bool {
        match &self.interior_exact {
            Some(v) => v == "0",
            None => self.interior < tol,
        }
    }
}

const RELATIONS: [&str; 3] = ["a q^N = q q^N a", "q^N a* = q a* q^N", "a a* = Q1 a*a + inhomogeneous term"];

pub fn relation_residual(cfg: &FockConfig) -> Result<Vec<RelationResidual>> {
    let q = &cfg.params.q;
    let q1 = &cfg.params.q1;
    let step = cfg.params.family.step();
    let top = cfg.levels;
    Ok(match build_matrices(cfg)? {
        FockMatrices::Exact(m) => {
            let rhs = m.k.map(|x| x.pow(step));
            let pairs = [
                (&m.a * &m.k, &m.k * &m.a * q.clone()),
                (&m.k * &m.adag, &m.adag * &m.k * q.clone()),
                (&m.a * &m.adag, &m.adag * &m.a * q1.clone() + rhs),
            ];
            pairs
                .into_iter()
                .zip(RELATIONS)
                .map(|((l, r), relation)| {
                    let d = l - r;
                    let interior = column_max(&d, 0..top, |x| x.abs());
                    let boundary = column_max(&d, top..top + 1, |x| x.abs());
                    RelationResidual {
                        relation,
                        interior: to_f64(&interior),
                        interior_exact: Some(interior.to_string()),
                        boundary: to_f64(&boundary),
                    }
                })
                .collect()
        }
        FockMatrices::Hermitian(m) => {
            let (qf, q1f) = (to_f64(q), to_f64(q1));
            let rhs = m.k.map(|x| x.powi(step));
            let pairs = [
                (&m.a * &m.k, &m.k * &m.a * qf),
                (&m.k * &m.adag, &m.adag * &m.k * qf),
                (&m.a * &m.adag, &m.adag * &m.a * q1f + rhs),
            ];
            pairs
                .into_iter()
                .zip(RELATIONS)
                .map(|((l, r), relation)| {
                    let scale = l.abs().max().max(r.abs().max()).max(f64::MIN_POSITIVE);
                    let d = l - r;
                    RelationResidual {
                        relation,
                        interior: column_max(&d, 0..top, |x| x.abs()) / scale,
                        interior_exact: None,
                        boundary: column_max(&d, top..top + 1, |x| x.abs()) / scale,
                    }
                })
                .collect()
        }
    })
}

fn column_max<T, U>(d: &DMatrix<T>, cols: std::ops::Range<usize>, abs: impl Fn(&T) -> U) -> U
where
    T: nalgebra::Scalar,
    U: PartialOrd + Zero,
{
    let mut best = U::zero();
    for c in cols {
        for x in d.column(c).iter() {
            let v = abs(x);
            if v > best {
                best = v;
            }
        }
    }
    best
}

/// Occupation table as CSV with header `n,closed,recursive,agree`.
pub fn occupations_csv(rows: &[OccupationRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::Fock(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Fock(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Residuals as CSV with header `relation,interior,interior_exact,boundary`.
pub fn residuals_csv(rows: &[RelationResidual]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::Fock(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Fock(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn degenerate_needs_consent() {
        let p = FockParams::type1(r(2), r(4)).unwrap();
        assert!(matches!(occupation_closed(3, &p, Degenerate::Error), Err(Error::DegenerateDenominator(_))));
        // n·q^{2(n−1)}: [3] = 3·16
        assert_eq!(occupation_closed(3, &p, Degenerate::Limit).unwrap(), r(48));
        assert_eq!(occupation_recursive(3, &p), r(48));
    }

    #[test]
    fn bm_families_fix_q1() {
        assert!(FockParams::new(Family::Bm2, r(2), r(3)).is_err());
        assert_eq!(FockParams::bm2(r(2)).unwrap().q1, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn zero_levels_rejected() {
        let p = FockParams::type2(r(2), r(3)).unwrap();
        assert!(FockConfig::new(p, 0, Gauge::Exact).is_err());
    }
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{CoeffError, RatFunc};

/// Ordered list of indeterminate names plus square-root aliases.
///
/// The position of a name is its variable index and fixes the monomial
/// order for the lifetime of every value built against the table. An alias
/// `X ↦ u` binds the composite symbol `X = u²`, so `sqrt(X)` reads as `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndetTable {
    names: Vec<String>,
    #[serde(default)]
    sqrt_aliases: BTreeMap<String, usize>,
}

impl IndetTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, CoeffError> {
        let mut table = IndetTable {
            names: Vec::new(),
            sqrt_aliases: BTreeMap::new(),
        };
        for n in names {
            table.push(n.as_ref())?;
        }
        Ok(table)
    }

    /// Appends a new indeterminate and returns its index.
    pub fn push(&mut self, name: &str) -> Result<usize, CoeffError> {
        if !is_symbol(name) || name == "sqrt" {
            return Err(CoeffError::BadSymbol(name.to_string()));
        }
        if self.index_of(name).is_some() || self.sqrt_aliases.contains_key(name) {
            return Err(CoeffError::DuplicateSymbol(name.to_string()));
        }
        self.names.push(name.to_string());
        Ok(self.names.len() - 1)
    }

    /// Declares `composite = root²` where `root` is an existing indeterminate.
    pub fn with_sqrt_alias(mut self, composite: &str, root: &str) -> Result<Self, CoeffError> {
        if !is_symbol(composite) {
            return Err(CoeffError::BadSymbol(composite.to_string()));
        }
        if self.index_of(composite).is_some() || self.sqrt_aliases.contains_key(composite) {
            return Err(CoeffError::DuplicateSymbol(composite.to_string()));
        }
        let idx = self
            .index_of(root)
            .ok_or_else(|| CoeffError::UnknownSymbol(root.to_string()))?;
        self.sqrt_aliases.insert(composite.to_string(), idx);
        Ok(self)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn sqrt_aliases(&self) -> &BTreeMap<String, usize> {
        &self.sqrt_aliases
    }

    /// The indeterminate `u` with `name = u²`, if `name` is an alias.
    pub fn sqrt_root_of(&self, name: &str) -> Option<usize> {
        self.sqrt_aliases.get(name).copied()
    }

    /// Value of a bare symbol: an indeterminate, or the square of its alias root.
    pub fn symbol(&self, name: &str) -> Result<RatFunc, CoeffError> {
        if let Some(i) = self.index_of(name) {
            return Ok(RatFunc::var(i));
        }
        if let Some(u) = self.sqrt_root_of(name) {
            let v = RatFunc::var(u);
            return Ok(&v * &v);
        }
        Err(CoeffError::UnknownSymbol(name.to_string()))
    }

    /// Value of `sqrt(name)`.
    pub fn sqrt_symbol(&self, name: &str) -> Result<RatFunc, CoeffError> {
        match self.sqrt_root_of(name) {
            Some(u) => Ok(RatFunc::var(u)),
            None if self.index_of(name).is_some() => {
                Err(CoeffError::SqrtWithoutAlias(name.to_string()))
            }
            None => Err(CoeffError::UnknownSymbol(name.to_string())),
        }
    }

    /// Converts a by-name assignment to a by-index one.
    ///
    /// Alias symbols are accepted in place of their root: `Q1 = 9/4` sets
    /// `s = 3/2` (the nonnegative root), provided the value is a rational square.
    /// Names that are not in the table are rejected.
    pub fn index_assignment(
        &self,
        assignment: &BTreeMap<String, BigRational>,
    ) -> Result<Vec<Option<BigRational>>, CoeffError> {
        let mut values = vec![None; self.names.len()];
        for (name, v) in assignment {
            if let Some(i) = self.index_of(name) {
                values[i] = Some(v.clone());
            } else if let Some(u) = self.sqrt_root_of(name) {
                let root = rational_sqrt(v).ok_or_else(|| CoeffError::NotASquare {
                    symbol: name.clone(),
                    value: v.to_string(),
                })?;
                if let Some(existing) = &values[u] {
                    if existing * existing != *v {
                        return Err(CoeffError::InconsistentAssignment(name.clone()));
                    }
                } else {
                    values[u] = Some(root);
                }
            } else {
                return Err(CoeffError::UnknownSymbol(name.clone()));
            }
        }
        Ok(values)
    }
}

pub(crate) fn is_symbol(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Nonnegative rational square root, if it exists.
pub fn rational_sqrt(v: &BigRational) -> Option<BigRational> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer();
    let d = v.denom();
    let rn: BigInt = n.sqrt();
    let rd: BigInt = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn duplicate_names_are_rejected() {
        assert!(matches!(
            IndetTable::new(&["q", "q"]),
            Err(CoeffError::DuplicateSymbol(_))
        ));
    }

    #[test]
    fn alias_assignment_takes_square_root() {
        let t = IndetTable::new(&["q", "s"])
            .unwrap()
            .with_sqrt_alias("Q1", "s")
            .unwrap();
        let mut a = BTreeMap::new();
        a.insert("q".to_string(), rat(2, 1));
        a.insert("Q1".to_string(), rat(9, 4));
        let v = t.index_assignment(&a).unwrap();
        assert_eq!(v[1], Some(rat(3, 2)));
        a.insert("Q1".to_string(), rat(3, 1));
        assert!(matches!(t.index_assignment(&a), Err(CoeffError::NotASquare { .. })));
    }
}

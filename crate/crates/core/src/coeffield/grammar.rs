//! Text form of coefficients.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' signed-int)?
//! atom   := integer | symbol | 'sqrt' '(' symbol ')' | '(' expr ')'
//! ```
//!
//! Implicit multiplication is rejected. Whitespace is ignored between tokens.

use num_bigint::BigInt;

use super::{CoeffError, IndetTable, RatFunc};

pub fn parse(text: &str, table: &IndetTable) -> Result<RatFunc, CoeffError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        table,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Canonical text: `num` alone when the denominator is 1, else `(num)/(den)`.
pub fn print(x: &RatFunc, table: &IndetTable) -> String {
    let names = table.names();
    if x.denom().is_one() {
        x.numer().render(names)
    } else {
        format!("({})/({})", x.numer().render(names), x.denom().render(names))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a IndetTable,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> CoeffError {
        CoeffError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), CoeffError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<RatFunc, CoeffError> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = &acc + &t;
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = &acc - &t;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, CoeffError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.eat(b'/') {
                let at = self.pos;
                let f = self.factor()?;
                acc = acc.checked_div(&f).map_err(|_| CoeffError::Syntax {
                    pos: at,
                    msg: "division by zero".to_string(),
                })?;
            } else {
                match self.peek() {
                    Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                        return Err(self.err("implicit multiplication is not allowed"))
                    }
                    _ => return Ok(acc),
                }
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc, CoeffError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let e = self.signed_int()?;
            return base.pow(e).map_err(|_| CoeffError::Syntax {
                pos: at,
                msg: "negative power of zero".to_string(),
            });
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i32, CoeffError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer exponent"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: i32 = s.parse().map_err(|_| CoeffError::Syntax {
            pos: start,
            msg: "exponent out of range".to_string(),
        })?;
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return None,
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn atom(&mut self) -> Result<RatFunc, CoeffError> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = s.parse().expect("digits parse as integer");
                Ok(RatFunc::from_bigint(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident().expect("alphabetic start");
                if name == "sqrt" {
                    self.expect(b'(')?;
                    let arg_pos = {
                        self.skip_ws();
                        self.pos
                    };
                    let arg = self
                        .ident()
                        .ok_or_else(|| self.err("sqrt takes a single symbol"))?;
                    self.expect(b')')?;
                    return self.table.sqrt_symbol(arg).map_err(|e| match e {
                        CoeffError::UnknownSymbol(s) => CoeffError::UnknownSymbolAt { name: s, pos: arg_pos },
                        other => other,
                    });
                }
                self.table.symbol(name).map_err(|e| match e {
                    CoeffError::UnknownSymbol(s) => CoeffError::UnknownSymbolAt { name: s, pos: start },
                    other => other,
                })
            }
            Some(c) => Err(self.err(&format!("unexpected character '{}'", c as char))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> IndetTable {
        IndetTable::new(&["q", "s"])
            .unwrap()
            .with_sqrt_alias("Q1", "s")
            .unwrap()
    }

    #[test]
    fn table_entry_with_alias() {
        let t = table();
        let x = parse("(q^2-Q1)/Q1", &t).unwrap();
        let q = RatFunc::var(0);
        let s = RatFunc::var(1);
        let s2 = &s * &s;
        assert_eq!(x, &(&(&q * &q) - &s2) / &s2);
        assert_eq!(print(&x, &t), "(q^2-s^2)/(s^2)");
    }

    #[test]
    fn sqrt_entry() {
        let t = table();
        let x = parse("(q^2-Q1)*(sqrt(Q1)+q)/(q*Q1)", &t).unwrap();
        let q = RatFunc::var(0);
        let s = RatFunc::var(1);
        let s2 = &s * &s;
        let expected = &(&(&(&q * &q) - &s2) * &(&s + &q)) / &(&q * &s2);
        assert_eq!(x, expected);
    }

    #[test]
    fn zero_and_signs() {
        let t = table();
        assert_eq!(parse("0", &t).unwrap(), RatFunc::zero());
        assert_eq!(parse("-1", &t).unwrap(), RatFunc::from_int(-1));
        assert_eq!(parse("q^-1", &t).unwrap(), RatFunc::var(0).pow(-1).unwrap());
        assert_eq!(parse(" - q * 2 ", &t).unwrap(), -(&RatFunc::var(0) * &RatFunc::from_int(2)));
    }

    #[test]
    fn errors_carry_position() {
        let t = table();
        match parse("q+*2", &t) {
            Err(CoeffError::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("2q", &t), Err(CoeffError::Syntax { .. })));
        assert!(matches!(parse("q+w", &t), Err(CoeffError::UnknownSymbolAt { pos: 2, .. })));
        assert!(matches!(parse("sqrt(q)", &t), Err(CoeffError::SqrtWithoutAlias(_))));
        assert!(matches!(parse("(q", &t), Err(CoeffError::Syntax { .. })));
        assert!(matches!(parse("1/0", &t), Err(CoeffError::Syntax { .. })));
    }
}

use num_bigint::BigInt;

use crate::exactnum::Rational;

use super::{MultiPoly, PolyError, VarTable};

/// Parses `text` over `vars`.
///
/// Grammar (whitespace-insensitive):
/// `expr := ['+'|'-'] term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := base ('^' natural)?`, `base := rational | variable | '(' expr ')'`,
/// `rational := integer ('/' positive-integer)?`.
pub fn parse_polynomial(text: &str, vars: &VarTable) -> Result<MultiPoly<Rational>, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses `text`, building a table from `known` followed by any further
/// identifiers in order of first appearance.
pub fn parse_with_new_vars(
    text: &str,
    known: &[&str],
) -> Result<MultiPoly<Rational>, PolyError> {
    let mut names: Vec<String> = known.iter().map(|s| s.to_string()).collect();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = &text[start..i];
            if !names.iter().any(|n| n == name) {
                names.push(name.to_string());
            }
        } else if bytes[i].is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        } else {
            i += 1;
        }
    }
    parse_polynomial(text, &VarTable::new(names)?)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VarTable,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> PolyError {
        PolyError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
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

    fn expr(&mut self) -> Result<MultiPoly<Rational>, PolyError> {
        let negate_first = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate_first {
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

    fn term(&mut self) -> Result<MultiPoly<Rational>, PolyError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly<Rational>, PolyError> {
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let n = self.natural()?;
            let e = u32::try_from(&n).map_err(|_| self.err("exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn natural(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    fn base(&mut self) -> Result<MultiPoly<Rational>, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural()?;
                let value = if self.eat(b'/') {
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.natural()?;
                    if d == BigInt::from(0) {
                        return Err(PolyError::Syntax {
                            offset: at,
                            message: "zero denominator".into(),
                        });
                    }
                    Rational::new(n, d)?
                } else {
                    Rational::from_integer(n)
                };
                Ok(MultiPoly::constant(self.vars, value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name");
                let i = self.vars.index(name).ok_or_else(|| PolyError::UnknownVariable(name.into()))?;
                Ok(MultiPoly::var_index(self.vars, i))
            }
            Some(_) => Err(self.err("expected a number, variable or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> VarTable {
        VarTable::new(["k"]).unwrap()
    }

    #[test]
    fn examples() {
        let s = parse_polynomial("3*k^6 - 9*k^4 + 21*k^2 + 1", &k()).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.total_degree(), Some(6));
        assert_eq!(parse_polynomial("k^2 - 2", &k()).unwrap().len(), 2);
        let t = VarTable::new(["K", "f"]).unwrap();
        assert!(parse_polynomial("(f + K)^2 - f^2 - 2*f*K - K^2", &t).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_polynomial("k + * 2", &k()) {
            Err(PolyError::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            parse_polynomial("k + x", &k()),
            Err(PolyError::UnknownVariable("x".into()))
        );
        assert!(matches!(parse_polynomial("1/0", &k()), Err(PolyError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_polynomial("(k", &k()), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_polynomial("k k", &k()), Err(PolyError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_polynomial("", &k()), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn leading_sign_and_nested_powers() {
        let p = parse_polynomial("-(k - 1)^2", &k()).unwrap();
        assert_eq!(p.to_string(), "-k^2 + 2*k - 1");
        assert_eq!(parse_polynomial("+k", &k()).unwrap().to_string(), "k");
    }

    #[test]
    fn auto_table() {
        let p = parse_with_new_vars("c + f^2*K", &["f", "K"]).unwrap();
        assert_eq!(p.vars().names(), ["f", "K", "c"]);
    }
}

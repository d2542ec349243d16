//! Reader for the Macaulay2-like syntax produced by `Display`:
//! sums of products of rationals and `name^k` powers, with parentheses.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Coeff, PolyError, Polynomial, VarSet};

impl Polynomial {
    pub fn parse(input: &str, ambient: Arc<VarSet>) -> Result<Polynomial, PolyError> {
        let mut p = Parser {
            src: input.as_bytes(),
            pos: 0,
            ambient,
        };
        let poly = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(poly)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ambient: Arc<VarSet>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            position: self.pos,
            message: msg.to_string(),
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

    fn sum(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::zero(self.ambient.clone());
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.power()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            let k: u32 = k
                .try_into()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = Coeff::from_integer(num);
                // a '/' directly after an integer is a rational literal
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    value = Coeff::new(value.numer().clone(), den);
                }
                Ok(Polynomial::constant(self.ambient.clone(), value))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let idx = self
                    .ambient
                    .index_of(name)
                    .ok_or_else(|| PolyError::Parse {
                        position: start,
                        message: format!("unknown variable {name}"),
                    })?;
                Ok(Polynomial::var(self.ambient.clone(), idx))
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(text.parse().expect("digits parse"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<VarSet> {
        VarSet::standard(["x_0", "x_1", "y_0"]).unwrap()
    }

    #[test]
    fn parses_display_output() {
        for s in [
            "x_0*x_1-y_0^2",
            "-x_0+3/4*y_0",
            "0",
            "-2",
            "x_0^3*x_1*y_0+x_1",
        ] {
            let p = Polynomial::parse(s, ring()).unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn parses_parentheses_and_spaces() {
        let p = Polynomial::parse(" (x_0 - x_1)^2 - x_0 * x_0 ", ring()).unwrap();
        assert_eq!(p.to_string(), "-2*x_0*x_1+x_1^2");
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(
            Polynomial::parse("x_0 + z", ring()),
            Err(PolyError::Parse { position: 6, .. })
        ));
        assert!(Polynomial::parse("x_0 +", ring()).is_err());
        assert!(Polynomial::parse("1/0", ring()).is_err());
        assert!(Polynomial::parse("(x_0", ring()).is_err());
        assert!(Polynomial::parse("x_0 x_1", ring()).is_err());
    }
}

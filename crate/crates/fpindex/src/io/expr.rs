use crate::error::{Error, Result};
use crate::poly::{Poly1, Poly2};
use crate::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;
/// Largest total degree an expression may reach.
pub const MAX_DEGREE: u32 = 256;

#[derive(Clone, Copy)]
enum Vars {
    Plane,
    Curve,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vars,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos, msg: msg.into() })
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

    fn expr(&mut self) -> Result<Poly2> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly2> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = acc.mul(&rhs);
                self.check_degree(&acc, at)?;
            } else {
                if !rhs.is_constant() {
                    return self.err(at, "division by a non-constant expression");
                }
                let d = rhs.constant_term();
                if d.is_zero() {
                    return self.err(at, "division by zero");
                }
                acc = acc.scale(&(Rational::from_integer(1.into()) / d));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly2> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly2> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return self.err(at, "expected a nonnegative integer exponent");
        }
        let e: u32 = match digits.parse() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return self.err(at, format!("exponent exceeds {MAX_EXPONENT}")),
        };
        let out = base.pow(e);
        self.check_degree(&out, at)?;
        Ok(out)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly2> {
        let at = match self.peek() {
            Some(_) => self.pos,
            None => return self.err(self.src.len(), "unexpected end of input"),
        };
        let c = self.src[at];
        if c.is_ascii_digit() {
            let n: BigInt = self.digits().parse().expect("digits");
            return Ok(Poly2::constant(Rational::from_integer(n)));
        }
        if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return self.err(self.pos, "expected ')'");
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            return match (self.vars, name) {
                (Vars::Plane, "z1") | (Vars::Curve, "t") => Ok(Poly2::z1()),
                (Vars::Plane, "z2") => Ok(Poly2::z2()),
                _ => self.err(start, format!("unknown variable '{name}'")),
            };
        }
        self.err(at, format!("unexpected '{}'", c as char))
    }

    fn check_degree(&self, p: &Poly2, at: usize) -> Result<()> {
        match p.total_degree() {
            Some(d) if d > MAX_DEGREE => self.err(at, format!("degree exceeds {MAX_DEGREE}")),
            _ => Ok(()),
        }
    }
}

fn parse(text: &str, vars: Vars) -> Result<Poly2> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
    let out = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected '{}'", c as char));
    }
    Ok(out)
}

/// Parse a polynomial in `z1, z2` with rational coefficients.
///
/// Grammar: integers, `z1`, `z2`, `+ - * ^`, parentheses, and division by a
/// nonzero constant (so `3/2*z1` is a rational coefficient).
pub fn parse_expression(text: &str) -> Result<Poly2> {
    parse(text, Vars::Plane)
}

/// Parse a polynomial in `t`, as used for branch parametrizations.
pub fn parse_univariate(text: &str) -> Result<Poly1> {
    let p = parse(text, Vars::Curve)?;
    Ok(p.restrict_z2(&Rational::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    #[test]
    fn examples() {
        let p = parse_expression("-2*z1 - z1^2 - z2").unwrap();
        assert_eq!(p, Poly2::from_terms([((1, 0), rat(-2)), ((2, 0), rat(-1)), ((0, 1), rat(-1))]));
        assert!(parse_expression("0").unwrap().is_zero());
        assert!(matches!(parse_expression("z1 + * z2"), Err(Error::Parse { pos: 5, .. })));
    }

    #[test]
    fn rationals_and_precedence() {
        let p = parse_expression("3/2*z1^2 - -z2*(1 - z1)").unwrap();
        assert_eq!(p.coeff(2, 0), ratio(3, 2));
        assert_eq!(p.coeff(0, 1), rat(1));
        assert_eq!(p.coeff(1, 1), rat(-1));
        assert_eq!(parse_expression("-z1^2").unwrap().coeff(2, 0), rat(-1));
        assert_eq!(parse_expression("(z1+z2)^2").unwrap().coeff(1, 1), rat(2));
    }

    #[test]
    fn rejects() {
        for bad in ["", "z3", "z1/z2", "1/0", "z1^", "z1^65", "(z1", "z1 z2", "t", "z1^64*z2^64*z1^64*z1^64*z1"] {
            assert!(matches!(parse_expression(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn univariate() {
        assert_eq!(parse_univariate("t^2 - 2*t").unwrap(), Poly1::from_i64s(&[0, -2, 1]));
        assert!(parse_univariate("z1").is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["-2*z1 - z1^2 - z2", "1/3 - z1*z2^5", "(z2 - z1^2)^3*(1 + 7/5*z1)"] {
            let p = parse_expression(s).unwrap();
            assert_eq!(parse_expression(&p.to_string()).unwrap(), p);
        }
    }
}

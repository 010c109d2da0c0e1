//! Polynomial expressions: a recursive-descent parser and the canonical printer.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := power (('*'|'/')? power)*
//! power   := atom ('^' integer)?
//! atom    := integer | 'x' | 'y' | 'z' | 'i' | '(' expr ')' | '-' atom
//! ```
//!
//! Division is only allowed by nonzero constants, and `i` only over ℚ(i).
//! Juxtaposition multiplies, so `2x^2y` reads as `2*x^2*y`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{Monomial, Poly};
use crate::scalar::{FieldId, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("unknown variable {name:?} at byte {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("division by a zero or non-constant expression at byte {pos}")]
    BadDivisor { pos: usize },
    #[error("exponent too large at byte {pos}")]
    ExponentTooLarge { pos: usize },
}

pub fn parse_poly(field: FieldId, text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.expected("an operator or end of input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: FieldId,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expected(&self, what: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            expected: what.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(c: u8) -> bool {
        c.is_ascii_alphanumeric() || c == b'('
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(ParseError::BadDivisor { pos: at });
                    }
                    let inv = d.terms()[0]
                        .1
                        .inv()
                        .map_err(|_| ParseError::BadDivisor { pos: at })?;
                    acc = acc.scale(&inv);
                }
                Some(c) if Self::starts_atom(c) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.expected("a nonnegative integer exponent"));
            }
            let e: u32 = digits
                .parse()
                .ok()
                .filter(|&e| e <= 1 << 16)
                .ok_or(ParseError::ExponentTooLarge { pos: at })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let f = self.field;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.expected("')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(Poly::constant(Scalar::from_bigint(f, &n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                // a run like "xyz" is a product of single-letter variables
                let mut acc = Poly::one(f);
                for (k, ch) in name.char_indices() {
                    let factor = match ch {
                        'x' => Poly::x(f),
                        'y' => Poly::y(f),
                        'z' => Poly::z(f),
                        'i' if f == FieldId::QI => Poly::constant(Scalar::imaginary_unit()),
                        _ => {
                            return Err(ParseError::UnknownVariable {
                                pos: start + k,
                                name: name.to_string(),
                            })
                        }
                    };
                    acc = &acc * &factor;
                }
                Ok(acc)
            }
            _ => Err(self.expected("a number, a variable or '('")),
        }
    }
}

/// Canonical text: terms in descending grevlex order, e.g. `x^2*y - 1/3*z^3`.
pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let negative = c.is_negative_real() || is_negative_imaginary(c);
        let mag = if negative { -c } else { c.clone() };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let is_const = *m == Monomial::ONE;
        if is_const {
            out.push_str(&wrap_coefficient(&mag));
        } else if mag.is_one() {
            out.push_str(&m.to_string());
        } else {
            out.push_str(&wrap_coefficient(&mag));
            out.push('*');
            out.push_str(&m.to_string());
        }
    }
    out
}

fn is_negative_imaginary(c: &Scalar) -> bool {
    match c {
        Scalar::QI(g) => {
            use num_traits::{Signed, Zero};
            g.re.is_zero() && g.im.is_negative()
        }
        _ => false,
    }
}

fn wrap_coefficient(c: &Scalar) -> String {
    match c {
        Scalar::QI(g) => {
            use num_traits::Zero;
            if g.im.is_zero() || g.re.is_zero() {
                c.to_string()
            } else {
                format!("({c})")
            }
        }
        _ => c.to_string(),
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_poly(self))
    }
}

/// Parses a point such as `1:-1:i` or `(1,0,0)`.
pub fn parse_point(field: FieldId, text: &str) -> Result<[Scalar; 3], ParseError> {
    let body = text.trim().trim_start_matches('(').trim_end_matches(')');
    let sep = if body.contains(':') { ':' } else { ',' };
    let parts: Vec<&str> = body.split(sep).collect();
    if parts.len() != 3 {
        return Err(ParseError::Syntax {
            pos: 0,
            expected: "three coordinates separated by ':' or ','".to_string(),
        });
    }
    let mut coords = Vec::with_capacity(3);
    for part in parts {
        let p = parse_poly(field, part)?;
        if !p.is_constant() {
            return Err(ParseError::Syntax {
                pos: 0,
                expected: "constant coordinates".to_string(),
            });
        }
        coords.push(p.coeff(&Monomial::ONE));
    }
    Ok([coords[0].clone(), coords[1].clone(), coords[2].clone()])
}

pub fn format_point(p: &[Scalar; 3]) -> String {
    format!("({}:{}:{})", p[0], p[1], p[2])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Poly {
        parse_poly(FieldId::Q, s).unwrap()
    }

    #[test]
    fn monomial_and_sum() {
        let p = q("x*y*z");
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.leading_monomial(), Some(Monomial::new(1, 1, 1)));
        assert_eq!(format_poly(&q("x^2+y^2+z^2")), "x^2 + y^2 + z^2");
        assert_eq!(format_poly(&q("x*z^3 - x^2*y*z")), "-x^2*y*z + x*z^3");
    }

    #[test]
    fn canonical_example() {
        let p = q("-1/3*z^3 + x^2*y");
        assert_eq!(format_poly(&p), "x^2*y - 1/3*z^3");
        assert_eq!(q(&format_poly(&p)), p);
    }

    #[test]
    fn parenthesised_factors() {
        let p = q("x*y*z*(x-y)*(x-z)*(y-z)");
        assert_eq!(p.homogeneous_degree(), Some(6));
        assert_eq!(q("(x+y)^2"), q("x^2 + 2*x*y + y^2"));
        assert_eq!(q("2xy"), q("2*x*y"));
        assert_eq!(q("x/2 + (1/2)*x"), q("x"));
    }

    #[test]
    fn gaussian_coefficients() {
        let f = FieldId::QI;
        let p = parse_poly(f, "(1+2*i)*x - i*y + 3").unwrap();
        let s = format_poly(&p);
        assert_eq!(s, "(1+2*i)*x - i*y + 3");
        assert_eq!(parse_poly(f, &s).unwrap(), p);
        assert!(parse_poly(FieldId::Q, "i*x").is_err());
    }

    #[test]
    fn prime_field_residues() {
        let f = FieldId::fp(13).unwrap();
        let p = parse_poly(f, "-x + 1/2").unwrap();
        assert_eq!(format_poly(&p), "12*x + 7");
        assert!(matches!(
            parse_poly(f, "x/13"),
            Err(ParseError::BadDivisor { .. })
        ));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_poly(FieldId::Q, "x + w"),
            Err(ParseError::UnknownVariable {
                pos: 4,
                name: "w".into()
            })
        );
        assert!(matches!(
            parse_poly(FieldId::Q, "x + "),
            Err(ParseError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_poly(FieldId::Q, "(x"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(parse_poly(FieldId::Q, "x/y").is_err());
        assert_eq!(format_poly(&q("x - x")), "0");
    }

    #[test]
    fn points() {
        let pt = parse_point(FieldId::QI, "1:-1:i").unwrap();
        assert_eq!(format_point(&pt), "(1:-1:i)");
        assert_eq!(
            parse_point(FieldId::Q, "(1, 0, 1/2)").unwrap()[2],
            Scalar::parse(FieldId::Q, "1/2").unwrap()
        );
    }
}

//! Text syntax for scalars: `Q`, `q` (= Q^4), `mu` (= Q^2), `s`, `I`,
//! integer literals, `^`, `*`, `/`, `+`, `-` and parentheses.

use super::{Scalar, ScalarError};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

/// Parses a complete scalar expression.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarError> {
    let mut p = ScalarParser::new(text, 0);
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Cursor-based parser, also used by the tensor DSL to read scalar
/// prefactors in place.
pub struct ScalarParser<'a> {
    src: &'a [u8],
    pub pos: usize,
}

const ATOMS: [&str; 5] = ["mu", "Q", "q", "s", "I"];

impl<'a> ScalarParser<'a> {
    pub fn new(text: &'a str, pos: usize) -> Self {
        ScalarParser {
            src: text.as_bytes(),
            pos,
        }
    }

    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else if c == b'#' {
                while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn ident_end(&self, start: usize) -> usize {
        let mut e = start;
        while e < self.src.len() && (self.src[e].is_ascii_alphanumeric() || self.src[e] == b'_') {
            e += 1;
        }
        e
    }

    /// Sum of terms.
    pub fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            let save = self.pos;
            match self.peek() {
                Some(op @ (b'+' | b'-')) => {
                    self.pos += 1;
                    match self.term() {
                        Ok(t) => acc = if op == b'+' { acc + t } else { acc - t },
                        Err(e) => {
                            self.pos = save;
                            return Err(e);
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Product/quotient chain.  A `*` or `/` not followed by a scalar
    /// operand is left unconsumed, so a caller can continue with its own
    /// grammar (e.g. `2*Q * eps[a,b]`).
    pub fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            let save = self.pos;
            match self.peek() {
                Some(op @ (b'*' | b'/')) => {
                    self.pos += 1;
                    match self.unary() {
                        Ok(v) => {
                            acc = if op == b'*' {
                                acc * v
                            } else {
                                acc.checked_div(&v).map_err(|_| ScalarError::Syntax {
                                    pos: save,
                                    msg: "division by zero".into(),
                                })?
                            }
                        }
                        Err(_) => {
                            self.pos = save;
                            return Ok(acc);
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        let save = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return match self.unary() {
                Ok(v) => Ok(-v),
                Err(e) => {
                    self.pos = save;
                    Err(e)
                }
            };
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        let save = self.pos;
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            self.pos = save;
            return Err(self.err("expected integer exponent"));
        }
        let k: i64 = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("exponent out of range"))?;
        if neg && base.is_zero() {
            return Err(self.err("negative power of zero"));
        }
        Ok(base.pow(if neg { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        let save = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr();
                match (v, self.peek()) {
                    (Ok(v), Some(b')')) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    (Err(e), _) => {
                        self.pos = save;
                        Err(e)
                    }
                    (Ok(_), _) => {
                        let e = self.err("expected ')'");
                        self.pos = save;
                        Err(e)
                    }
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .unwrap();
                Ok(Scalar::gauss(Complex::new(
                    BigRational::from_integer(n),
                    BigRational::zero(),
                )))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let end = self.ident_end(self.pos);
                let word = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                if !ATOMS.contains(&word) {
                    return Err(self.err("unknown scalar symbol"));
                }
                // `q[...]` would be a tensor reference, not a scalar.
                let mut after = end;
                while after < self.src.len() && self.src[after].is_ascii_whitespace() {
                    after += 1;
                }
                if self.src.get(after) == Some(&b'[') {
                    return Err(self.err("tensor reference where scalar expected"));
                }
                self.pos = end;
                Ok(match word {
                    "Q" => Scalar::big_q(),
                    "q" => Scalar::q(),
                    "mu" => Scalar::mu(),
                    "s" => Scalar::s(),
                    _ => Scalar::i(),
                })
            }
            _ => Err(self.err("expected scalar")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols() {
        assert_eq!(parse_scalar("mu^2").unwrap(), Scalar::q());
        assert_eq!(parse_scalar("q").unwrap(), Scalar::q_pow(4));
        assert_eq!(
            parse_scalar("-(mu + mu^-1)").unwrap(),
            -(Scalar::mu() + Scalar::q_pow(-2))
        );
        assert_eq!(parse_scalar("s*s - 1").unwrap(), Scalar::q());
        assert_eq!(parse_scalar("I*I").unwrap(), Scalar::int(-1));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_scalar("1/2*Q").unwrap(), Scalar::ratio(1, 2) * Scalar::big_q());
        assert_eq!(parse_scalar("-Q^2").unwrap(), -Scalar::mu());
        assert_eq!(
            parse_scalar("2 + 3*Q").unwrap(),
            Scalar::int(2) + Scalar::int(3) * Scalar::big_q()
        );
    }

    #[test]
    fn term_stops_before_tensor() {
        let text = "2*Q * eps_lo[a,b]";
        let mut p = ScalarParser::new(text, 0);
        let v = p.term().unwrap();
        assert_eq!(v, Scalar::int(2) * Scalar::big_q());
        assert_eq!(text[p.pos..].trim_start(), "* eps_lo[a,b]");
    }

    #[test]
    fn errors() {
        assert!(parse_scalar("Q +").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("(Q").is_err());
    }

    #[test]
    fn display_round_trips() {
        for t in [
            "0",
            "1",
            "-I",
            "Q^-3",
            "(1+Q^4)^-1",
            "s/mu + 3/2*I*Q",
            "(Q - I*s)/(Q^2 + 1)",
        ] {
            let v = parse_scalar(t).unwrap();
            assert_eq!(parse_scalar(&v.to_string()).unwrap(), v, "{t} -> {v}");
        }
    }
}

//! Recursive-descent parser.  Scalar prefactors are read in place by the
//! scalar field's own parser.

use crate::ast::{Expr, Factor, Pos, Script, Sign, Stmt, Term};
use crate::QvtError;
use isoq::scalar::ScalarError;
use isoq::scalar::ScalarParser;

/// Names reserved for scalars and keywords; they cannot be bound by `let`.
pub const RESERVED: [&str; 7] = ["Q", "q", "mu", "s", "I", "check", "let"];

pub fn parse(text: &str) -> Result<Script, QvtError> {
    let mut p = Parser { src: text, pos: 0 };
    let mut stmts = Vec::new();
    loop {
        p.ws();
        if p.pos >= p.src.len() {
            return Ok(Script { stmts });
        }
        stmts.push(p.stmt()?);
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn at(&self, pos: usize) -> Pos {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Pos { line, col }
    }

    fn here(&self) -> Pos {
        self.at(self.pos)
    }

    fn err(&self, msg: impl Into<String>) -> QvtError {
        let p = self.here();
        QvtError::Syntax {
            line: p.line,
            col: p.col,
            msg: msg.into(),
        }
    }

    fn ws(&mut self) {
        let b = self.src.as_bytes();
        while self.pos < b.len() {
            if b[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            } else if b[self.pos] == b'#' {
                while self.pos < b.len() && b[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn rest(&mut self) -> &str {
        self.ws();
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), QvtError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{tok}`")))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.ws();
        let b = self.src.as_bytes();
        let start = self.pos;
        if start >= b.len() || !(b[start].is_ascii_alphabetic() || b[start] == b'_') {
            return None;
        }
        let mut end = start + 1;
        while end < b.len() && (b[end].is_ascii_alphanumeric() || b[end] == b'_') {
            end += 1;
        }
        self.pos = end;
        Some(self.src[start..end].to_string())
    }

    fn stmt(&mut self) -> Result<Stmt, QvtError> {
        let pos = self.here();
        let start = self.pos;
        match self.ident().as_deref() {
            Some("check") => {
                let lhs = self.expr()?;
                self.expect("==")?;
                let rhs = self.expr()?;
                self.expect(";")?;
                Ok(Stmt::Check { lhs, rhs, pos })
            }
            Some("let") => {
                let at = self.pos;
                let name = self.ident().ok_or_else(|| self.err("expected a name after `let`"))?;
                if RESERVED.contains(&name.as_str()) {
                    self.pos = at;
                    return Err(self.err(format!("`{name}` is reserved")));
                }
                if self.rest().starts_with("==") {
                    return Err(self.err("expected `=`"));
                }
                self.expect("=")?;
                let expr = self.expr()?;
                self.expect(";")?;
                Ok(Stmt::Let { name, expr, pos })
            }
            _ => {
                self.pos = start;
                Err(self.err("expected `check` or `let`"))
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, QvtError> {
        let mut sign = if self.eat("-") {
            Sign::Minus
        } else {
            self.eat("+");
            Sign::Plus
        };
        let mut terms = Vec::new();
        loop {
            terms.push((sign, self.term()?));
            sign = match self.peek() {
                Some(b'+') => Sign::Plus,
                Some(b'-') => Sign::Minus,
                _ => return Ok(Expr { terms }),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Term, QvtError> {
        self.ws();
        let start = self.pos;
        let mut sp = ScalarParser::new(self.src, self.pos);
        let scalar = sp.term();
        let mut coeff = None;
        let mut factors = Vec::new();
        match scalar {
            Ok(v) => {
                self.pos = sp.pos;
                coeff = Some(v);
                match self.peek() {
                    None | Some(b';' | b'=' | b'+' | b'-' | b')') => {
                        return self.finish(Term { coeff, factors }, start)
                    }
                    Some(b'*') => self.pos += 1,
                    _ => return Err(self.err("expected `*` after scalar prefactor")),
                }
                factors.push(self.factor(None)?);
            }
            Err(e) => factors.push(self.factor(Some(e))?),
        }
        while self.eat("*") {
            factors.push(self.factor(None)?);
        }
        self.finish(Term { coeff, factors }, start)
    }

    /// Rejects index names used three or more times.
    fn finish(&self, t: Term, start: usize) -> Result<Term, QvtError> {
        let names = t.index_occurrences();
        for n in &names {
            if names.iter().filter(|m| *m == n).count() > 2 {
                let p = self.at(start);
                return Err(QvtError::RepeatedIndex {
                    name: n.clone(),
                    line: p.line,
                    col: p.col,
                });
            }
        }
        Ok(t)
    }

    fn factor(&mut self, scalar_err: Option<ScalarError>) -> Result<Factor, QvtError> {
        self.ws();
        let pos = self.here();
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(Factor::Group(e));
        }
        let save = self.pos;
        let Some(name) = self.ident() else {
            return Err(match scalar_err {
                Some(ScalarError::Syntax { pos, msg }) if pos > save => {
                    self.pos_err(pos, &format!("bad scalar: {msg}"))
                }
                _ => self.err("expected a tensor reference, `(` or a scalar"),
            });
        };
        if !self.eat("[") {
            self.pos = save;
            return Err(self.err(format!("expected `[` after `{name}`")));
        }
        let mut indices = Vec::new();
        loop {
            indices.push(self.ident().ok_or_else(|| self.err("expected an index name"))?);
            if self.eat("]") {
                break;
            }
            self.expect(",")?;
        }
        Ok(Factor::Tensor { name, indices, pos })
    }

    fn pos_err(&self, pos: usize, msg: &str) -> QvtError {
        let p = self.at(pos);
        QvtError::Syntax {
            line: p.line,
            col: p.col,
            msg: msg.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use isoq::Scalar;

    #[test]
    fn delta_chain() {
        let s = parse("check delta2[a,b]*delta2[b,c] == delta2[a,c];").unwrap();
        assert_eq!(s.stmts.len(), 1);
        let Stmt::Check { lhs, rhs, .. } = &s.stmts[0] else {
            panic!()
        };
        assert_eq!(lhs.free_names(), ["a", "c"]);
        assert_eq!(rhs.free_names(), ["a", "c"]);
    }

    #[test]
    fn scalar_valued_check() {
        let s = parse("check eps_hi[a,b]*eps_lo[a,b] == -(mu + mu^-1);").unwrap();
        let Stmt::Check { lhs, rhs, .. } = &s.stmts[0] else {
            panic!()
        };
        assert!(lhs.free_names().is_empty());
        assert_eq!(rhs.terms[0].0, Sign::Minus);
        assert_eq!(rhs.terms[0].1.coeff, Some(Scalar::mu() + Scalar::q_pow(-2)));
        assert!(rhs.terms[0].1.factors.is_empty());
    }

    #[test]
    fn ten_factor_sandwich() {
        let text = "check rhat_so[i,j,k,l] == (1/q) * eta[i,i2]*eta[j,j2]*cg[i2,m,r]*cg[j2,si,la]*rhat_su2[m,n,m2,n2]*rhat_su2[r,si,n,t]*rhat_su2[t,la,t2,la2]*rhat_su2[n2,t2,r2,si2]*cgT[k,m2,r2]*cgT[l,si2,la2];";
        let s = parse(text).unwrap();
        let Stmt::Check { rhs, .. } = &s.stmts[0] else { panic!() };
        assert_eq!(rhs.terms[0].1.factors.len(), 10);
        assert_eq!(rhs.terms[0].1.coeff, Some(Scalar::q_pow(-4)));
        assert_eq!(rhs.free_names(), ["i", "j", "k", "l"]);
    }

    #[test]
    fn groups_comments_and_lets() {
        let s = parse("# identity\nlet P = 2*Q * (eps_lo[a,b] - eps_hi[a,b]); # trailing\ncheck P[a,b] == (2*Q) * (eps_lo[a,b] - eps_hi[a,b]);").unwrap();
        assert_eq!(s.stmts.len(), 2);
        let Stmt::Let { name, expr, pos } = &s.stmts[0] else {
            panic!()
        };
        assert_eq!(name, "P");
        assert_eq!(pos.line, 2);
        assert!(matches!(expr.terms[0].1.factors[0], Factor::Group(_)));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("check delta2[a,b] == delta2[a,b]\ncheck x;") {
            Err(QvtError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 1)),
            other => panic!("{other:?}"),
        }
        match parse("check delta2[a,b] == delta2[a b];") {
            Err(QvtError::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 31)),
            other => panic!("{other:?}"),
        }
        assert!(parse("check 2 eps_lo[a,b] == 0;").is_err());
        assert!(parse("let mu = delta2[a,b];").is_err());
        assert!(parse("check eps_lo[a,b] = eps_lo[a,b];").is_err());
        assert!(parse("frobnicate;").is_err());
    }

    #[test]
    fn thrice_repeated_index_is_a_parse_error() {
        let e = parse("check delta2[a,a]*delta2[a,b] == delta2[b,b];").unwrap_err();
        assert!(
            matches!(e, QvtError::RepeatedIndex { ref name, .. } if name == "a"),
            "{e}"
        );
    }

    #[test]
    fn render_round_trips() {
        let text = "let T = -(Q^2/s) * cg[i,a,b]*cgT[i,c,d] + (I) * (eps_lo[a,b]*eps_hi[c,d]);\ncheck T[a,b,c,d] - 3 == -T[a,b,c,d];";
        let s = parse(text).unwrap();
        let again = parse(&s.to_string()).unwrap();
        assert_eq!(again, s);
        assert_eq!(again.to_string(), s.to_string());
    }
}

//! Syntax tree of qvt scripts and its canonical text form.

use isoq::Scalar;
use std::fmt;

/// Source position, 1-based.  Ignored by equality so that a rendered and
/// reparsed script compares equal to the original.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Check { lhs: Expr, rhs: Expr, pos: Pos },
    Let { name: String, expr: Expr, pos: Pos },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// A signed sum of terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub terms: Vec<(Sign, Term)>,
}

/// `[scalar *] factor * factor ...`; a term without factors is a plain
/// scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Option<Scalar>,
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    Tensor {
        name: String,
        indices: Vec<String>,
        pos: Pos,
    },
    Group(Expr),
}

impl Term {
    /// Index names occurring exactly once, in order of first appearance.
    pub fn free_names(&self) -> Vec<String> {
        let names = self.index_occurrences();
        let mut out: Vec<String> = Vec::new();
        for n in &names {
            if names.iter().filter(|m| *m == n).count() == 1 {
                out.push(n.clone());
            }
        }
        out
    }

    /// Every index name of the term, free names of groups counted once.
    pub fn index_occurrences(&self) -> Vec<String> {
        let mut names = Vec::new();
        for f in &self.factors {
            match f {
                Factor::Tensor { indices, .. } => names.extend(indices.iter().cloned()),
                Factor::Group(e) => names.extend(e.free_names()),
            }
        }
        names
    }
}

impl Expr {
    /// Free indices of the first term; the typechecker makes sure every
    /// term agrees.
    pub fn free_names(&self) -> Vec<String> {
        self.terms.first().map(|(_, t)| t.free_names()).unwrap_or_default()
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Check { lhs, rhs, .. } => write!(f, "check {lhs} == {rhs};"),
            Stmt::Let { name, expr, .. } => write!(f, "let {name} = {expr};"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (sign, t)) in self.terms.iter().enumerate() {
            match (i, sign) {
                (0, Sign::Plus) => {}
                (0, Sign::Minus) => write!(f, "-")?,
                (_, Sign::Plus) => write!(f, " + ")?,
                (_, Sign::Minus) => write!(f, " - ")?,
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = &self.coeff {
            write!(f, "({c})")?;
            if !self.factors.is_empty() {
                write!(f, " * ")?;
            }
        }
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Tensor { name, indices, .. } => write!(f, "{name}[{}]", indices.join(",")),
            Factor::Group(e) => write!(f, "({e})"),
        }
    }
}

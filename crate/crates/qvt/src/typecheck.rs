//! Index typechecking: binds every index slot to an extent.

use crate::ast::{Expr, Factor, Pos, Script, Stmt, Term};
use crate::QvtError;
use std::collections::BTreeMap;

/// Slot shapes of the tensors a script may refer to.
pub trait Shapes {
    fn shape(&self, name: &str) -> Option<Vec<usize>>;
}

impl Shapes for BTreeMap<String, Vec<usize>> {
    fn shape(&self, name: &str) -> Option<Vec<usize>> {
        self.get(name).cloned()
    }
}

/// Free indices with their extents, in order of first appearance.
pub type Signature = Vec<(String, usize)>;

/// A script that passed typechecking, with the shape of every binding
/// and the free indices of every check.
#[derive(Debug, Clone)]
pub struct Checked {
    pub script: Script,
    pub lets: BTreeMap<String, Signature>,
    pub checks: Vec<Signature>,
}

pub fn typecheck(script: &Script, registry: &dyn Shapes) -> Result<Checked, QvtError> {
    let mut lets: BTreeMap<String, Signature> = BTreeMap::new();
    let mut checks = Vec::new();
    for stmt in &script.stmts {
        let env = Env { registry, lets: &lets };
        match stmt {
            Stmt::Let { name, expr, pos } => {
                if lets.contains_key(name) || registry.shape(name).is_some() {
                    return Err(QvtError::Duplicate {
                        name: name.clone(),
                        line: pos.line,
                        col: pos.col,
                    });
                }
                let sig = env.expr(expr, *pos)?;
                lets.insert(name.clone(), sig);
            }
            Stmt::Check { lhs, rhs, pos } => {
                let (l, r) = (env.expr(lhs, *pos)?, env.expr(rhs, *pos)?);
                same_free(&l, &r, "lhs", "rhs", *pos)?;
                checks.push(l);
            }
        }
    }
    Ok(Checked {
        script: script.clone(),
        lets,
        checks,
    })
}

fn names(s: &Signature) -> Vec<String> {
    let mut v: Vec<String> = s.iter().map(|(n, _)| n.clone()).collect();
    v.sort();
    v
}

fn same_free(a: &Signature, b: &Signature, what_a: &str, what_b: &str, pos: Pos) -> Result<(), QvtError> {
    if names(a) != names(b) {
        return Err(QvtError::FreeIndexMismatch {
            msg: format!(
                "{what_a} {{{}}}, {what_b} {{{}}}",
                names(a).join(","),
                names(b).join(",")
            ),
            line: pos.line,
            col: pos.col,
        });
    }
    for (n, e) in a {
        let (_, f) = b.iter().find(|(m, _)| m == n).unwrap();
        if e != f {
            return Err(QvtError::ExtentMismatch {
                index: n.clone(),
                first: format!("{what_a} (extent {e})"),
                second: format!("{what_b} (extent {f})"),
                line: pos.line,
                col: pos.col,
            });
        }
    }
    Ok(())
}

struct Env<'a> {
    registry: &'a dyn Shapes,
    lets: &'a BTreeMap<String, Signature>,
}

impl Env<'_> {
    fn shape(&self, name: &str) -> Option<Vec<usize>> {
        match self.lets.get(name) {
            Some(sig) => Some(sig.iter().map(|(_, e)| *e).collect()),
            None => self.registry.shape(name),
        }
    }

    fn expr(&self, e: &Expr, pos: Pos) -> Result<Signature, QvtError> {
        let mut first: Option<Signature> = None;
        for (k, (_, t)) in e.terms.iter().enumerate() {
            let sig = self.term(t, pos)?;
            match &first {
                None => first = Some(sig),
                Some(f) => same_free(f, &sig, "term 1", &format!("term {}", k + 1), pos)?,
            }
        }
        Ok(first.unwrap_or_default())
    }

    fn term(&self, t: &Term, pos: Pos) -> Result<Signature, QvtError> {
        // name -> (extent, slot description, occurrences)
        let mut seen: Vec<(String, usize, String, usize)> = Vec::new();
        let mut visit = |name: &str, extent: usize, slot: String| -> Result<(), QvtError> {
            match seen.iter_mut().find(|(n, ..)| n == name) {
                Some((_, e, first, count)) => {
                    if *e != extent {
                        return Err(QvtError::ExtentMismatch {
                            index: name.to_string(),
                            first: format!("{first} (extent {e})"),
                            second: format!("{slot} (extent {extent})"),
                            line: pos.line,
                            col: pos.col,
                        });
                    }
                    *count += 1;
                }
                None => seen.push((name.to_string(), extent, slot, 1)),
            }
            Ok(())
        };
        for f in &t.factors {
            match f {
                Factor::Tensor { name, indices, pos } => {
                    let shape = self.shape(name).ok_or(QvtError::UnknownTensor {
                        name: name.clone(),
                        line: pos.line,
                        col: pos.col,
                    })?;
                    if shape.len() != indices.len() {
                        return Err(QvtError::Arity {
                            name: name.clone(),
                            slots: shape.len(),
                            given: indices.len(),
                            line: pos.line,
                            col: pos.col,
                        });
                    }
                    for (k, (ix, e)) in indices.iter().zip(shape).enumerate() {
                        visit(ix, e, format!("{name} slot {}", k + 1))?;
                    }
                }
                Factor::Group(g) => {
                    for (ix, e) in self.expr(g, pos)? {
                        visit(&ix, e, "group".to_string())?;
                    }
                }
            }
        }
        Ok(seen
            .into_iter()
            .filter(|(.., c)| *c == 1)
            .map(|(n, e, ..)| (n, e))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    fn reg() -> BTreeMap<String, Vec<usize>> {
        [
            ("delta2", vec![2, 2]),
            ("delta3", vec![3, 3]),
            ("cg", vec![3, 2, 2]),
            ("eps_lo", vec![2, 2]),
        ]
        .into_iter()
        .map(|(n, s)| (n.to_string(), s))
        .collect()
    }

    #[test]
    fn binds_extents() {
        let c = typecheck(
            &parse("check cg[i,a,b]*eps_lo[a,b] == cg[i,a,b]*eps_lo[a,b];").unwrap(),
            &reg(),
        )
        .unwrap();
        assert_eq!(c.checks[0], vec![("i".to_string(), 3)]);
    }

    #[test]
    fn mixed_extent_names_both_slots() {
        let e = typecheck(&parse("check delta2[a,b]*delta3[b,c] == delta2[a,c];").unwrap(), &reg()).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("delta2 slot 2") && msg.contains("delta3 slot 1"), "{msg}");
    }

    #[test]
    fn free_index_mismatch() {
        let e = typecheck(&parse("check delta2[i,j] == delta2[i,k];").unwrap(), &reg()).unwrap_err();
        assert!(e.to_string().contains("free index mismatch"), "{e}");
        let e = typecheck(
            &parse("check delta2[i,j] + delta2[i,k] == delta2[i,j];").unwrap(),
            &reg(),
        )
        .unwrap_err();
        assert!(e.to_string().contains("free index mismatch"), "{e}");
    }

    #[test]
    fn unknown_tensor_and_arity() {
        let e = typecheck(&parse("check nope[a] == delta2[a,a];").unwrap(), &reg()).unwrap_err();
        assert!(matches!(e, QvtError::UnknownTensor { .. }));
        let e = typecheck(&parse("check delta2[a] == 1;").unwrap(), &reg()).unwrap_err();
        assert!(matches!(e, QvtError::Arity { .. }));
    }

    #[test]
    fn lets_extend_the_registry() {
        let s = parse("let P = cg[i,a,b]*delta2[b,c];\ncheck P[i,a,c] == cg[i,a,c];").unwrap();
        let c = typecheck(&s, &reg()).unwrap();
        assert_eq!(c.lets["P"], vec![("i".into(), 3), ("a".into(), 2), ("c".into(), 2)]);
        let dup = parse("let delta2 = delta2[a,b];").unwrap();
        assert!(matches!(typecheck(&dup, &reg()), Err(QvtError::Duplicate { .. })));
    }
}

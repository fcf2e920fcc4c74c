//! Weighted shift operators of the representation and their sparse
//! matrices on a window.

use super::window::{BasisWindow, Labels};
use super::RepError;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Which matrix elements to use for the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Convention {
    /// Exactly the printed coefficients.
    Verbatim,
    /// Printed coefficients, with every starred generator whose printed
    /// coefficient contradicts `π(g*) = π(g)†` replaced by the adjoint.
    AdjointConsistent,
    /// Adjoint-consistent, and `Θ₂` carries the exponent
    /// `−(n−m+k−s+v)` forced by the ρ/Θ relations.
    Corrected,
}

impl Convention {
    pub const ALL: [Convention; 3] = [
        Convention::Verbatim,
        Convention::AdjointConsistent,
        Convention::Corrected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Convention::Verbatim => "verbatim",
            Convention::AdjointConsistent => "adjoint-consistent",
            Convention::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Convention {
    type Err = RepError;
    fn from_str(s: &str) -> Result<Self, RepError> {
        Convention::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| RepError::Convention(s.to_string()))
    }
}

/// Generators of the representation with their star partners, in the
/// letter order used by representation polynomials.
pub const REP_GENERATORS: [(&str, &str); 16] = [
    ("alpha", "alpha*"),
    ("alpha*", "alpha"),
    ("gamma", "gamma*"),
    ("gamma*", "gamma"),
    ("gamma^-1", "gamma*^-1"),
    ("gamma*^-1", "gamma^-1"),
    ("v", "vbar"),
    ("vbar", "v"),
    ("rho1", "rho1*"),
    ("rho1*", "rho1"),
    ("rho2", "rho2*"),
    ("rho2*", "rho2"),
    ("theta1", "theta1*"),
    ("theta1*", "theta1"),
    ("theta2", "theta2*"),
    ("theta2*", "theta2"),
];

/// `|ℓ⟩ ↦ Q^{exp·ℓ + exp0} · √(1 − Q^{4(n + sqrt)}) |ℓ + shift⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub shift: Labels,
    pub exp: Labels,
    pub exp0: i64,
    pub sqrt: Option<i64>,
}

impl Letter {
    const fn power(shift: Labels, exp: Labels, exp0: i64) -> Letter {
        Letter {
            shift,
            exp,
            exp0,
            sqrt: None,
        }
    }

    /// Exponent of `Q` at `l`.
    pub fn exponent(&self, l: &Labels) -> i64 {
        self.exp0 + (0..6).map(|i| self.exp[i] * l[i]).sum::<i64>()
    }

    /// Matrix element `⟨l + shift|π|l⟩`.
    pub fn coefficient(&self, l: &Labels, big_q: f64) -> f64 {
        let p = big_q.powi(self.exponent(l) as i32);
        match self.sqrt {
            None => p,
            Some(o) if l[0] + o <= 0 => 0.0,
            Some(o) => p * (1.0 - big_q.powi((4 * (l[0] + o)) as i32)).sqrt(),
        }
    }

    /// The inverse operator; only pure powers are invertible.
    fn inverse(&self) -> Letter {
        assert!(self.sqrt.is_none(), "only diagonal-power shifts are inverted");
        let shift = self.shift.map(|d| -d);
        let exp = self.exp.map(|a| -a);
        let back: i64 = (0..6).map(|i| self.exp[i] * self.shift[i]).sum();
        Letter {
            shift,
            exp,
            exp0: back - self.exp0,
            sqrt: None,
        }
    }

    /// The operator `g*` with `⟨l|g*|l+d⟩ = ⟨l+d|g|l⟩` (real coefficients).
    fn adjoint(&self) -> Letter {
        let shift = self.shift.map(|d| -d);
        let back: i64 = (0..6).map(|i| self.exp[i] * self.shift[i]).sum();
        Letter {
            shift,
            exp: self.exp,
            exp0: self.exp0 - back,
            sqrt: self.sqrt.map(|o| o - self.shift[0]),
        }
    }
}

const N: usize = 0;
const M: usize = 1;
const K: usize = 2;
const R: usize = 3;
const S: usize = 4;
const V: usize = 5;

fn unit(i: usize, d: i64) -> Labels {
    let mut l = [0; 6];
    l[i] = d;
    l
}

fn unit2(i: usize, j: usize, d: i64) -> Labels {
    let mut l = [0; 6];
    l[i] = d;
    l[j] = d;
    l
}

/// The printed list: `π(g)` for every generator other than the inverses.
fn printed(name: &str) -> Option<Letter> {
    let rho = |r: i64, s: i64| [-1, -1, -1, r, s, -1];
    let theta1 = [-1, 1, -1, -1, 0, -1];
    let theta2 = [-1, 1, -1, -1, 1, -1];
    Some(match name {
        "alpha" => Letter {
            shift: unit(N, -1),
            exp: [0; 6],
            exp0: 0,
            sqrt: Some(0),
        },
        "alpha*" => Letter {
            shift: unit(N, 1),
            exp: [0; 6],
            exp0: 0,
            sqrt: Some(1),
        },
        "gamma" => Letter::power(unit(M, -1), unit(N, 2), 0),
        "gamma*" => Letter::power(unit(M, 1), unit(N, 2), 2),
        "v" => Letter::power(unit(K, -1), [0; 6], 0),
        "vbar" => Letter::power(unit(K, 1), [0; 6], 0),
        "rho1" => Letter::power(unit(R, -1), rho(1, 2), 0),
        "rho1*" => Letter::power(unit(R, 1), rho(1, 2), 1),
        "rho2" => Letter::power(unit2(R, V, -1), rho(2, 3), 0),
        "rho2*" => Letter::power(unit2(R, V, 1), rho(2, 3), 1),
        "theta1" => Letter::power(unit(S, -1), theta1, 0),
        "theta1*" => Letter::power(unit(S, 1), theta1, 0),
        "theta2" => Letter::power(unit2(S, V, -1), theta2, 0),
        "theta2*" => Letter::power(unit2(S, V, 1), theta2, 0),
        _ => return None,
    })
}

/// A coefficient replaced by a convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub generator: String,
    pub printed: String,
    pub used: String,
}

fn render_exponent(l: &Letter) -> String {
    let mut s = String::new();
    for i in 0..6 {
        let a = l.exp[i];
        if a == 0 {
            continue;
        }
        let sign = if a < 0 {
            "-"
        } else if s.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = if a.abs() == 1 {
            String::new()
        } else {
            a.abs().to_string()
        };
        s.push_str(&format!("{sign}{mag}{}", super::window::LABELS[i]));
    }
    if l.exp0 != 0 || s.is_empty() {
        if l.exp0 >= 0 && !s.is_empty() {
            s.push('+');
        }
        s.push_str(&l.exp0.to_string());
    }
    format!("Q^({s})")
}

/// The generator table of one convention, with the substitutions made.
#[derive(Debug, Clone)]
pub struct GeneratorTable {
    pub convention: Convention,
    letters: Vec<Letter>,
    pub substitutions: Vec<Substitution>,
}

impl GeneratorTable {
    pub fn new(convention: Convention) -> GeneratorTable {
        let mut table: BTreeMap<&str, Letter> = REP_GENERATORS
            .iter()
            .filter_map(|(n, _)| printed(n).map(|l| (*n, l)))
            .collect();
        let mut substitutions = Vec::new();
        let mut replace = |table: &mut BTreeMap<&str, Letter>, name: &'static str, new: Letter| {
            let old = table[name];
            if old != new {
                substitutions.push(Substitution {
                    generator: name.to_string(),
                    printed: render_exponent(&old),
                    used: render_exponent(&new),
                });
                table.insert(name, new);
            }
        };
        if convention != Convention::Verbatim {
            // The unstarred generator is taken as printed; its partner is
            // forced to be the adjoint wherever the two disagree.
            for (g, gs) in REP_GENERATORS {
                if g.ends_with('*') || g.ends_with("^-1") || g == "vbar" {
                    continue;
                }
                let forced = table[g].adjoint();
                replace(&mut table, gs, forced);
            }
        }
        if convention == Convention::Corrected {
            let theta2 = [-1, 1, -1, 0, 1, -1];
            replace(&mut table, "theta2", Letter::power(unit2(S, V, -1), theta2, 0));
            replace(&mut table, "theta2*", Letter::power(unit2(S, V, 1), theta2, 0));
        }
        let gamma_inv = table["gamma"].inverse();
        let gamma_star_inv = table["gamma*"].inverse();
        table.insert("gamma^-1", gamma_inv);
        table.insert("gamma*^-1", gamma_star_inv);
        let letters = REP_GENERATORS.iter().map(|(n, _)| table[n]).collect();
        GeneratorTable {
            convention,
            letters,
            substitutions,
        }
    }

    pub fn letter(&self, name: &str) -> Result<&Letter, RepError> {
        REP_GENERATORS
            .iter()
            .position(|(n, _)| *n == name)
            .map(|i| &self.letters[i])
            .ok_or_else(|| RepError::UnknownGenerator(name.to_string()))
    }

    pub fn letter_at(&self, i: u16) -> &Letter {
        &self.letters[i as usize]
    }

    /// Generators whose printed coefficient disagrees with the adjoint of
    /// their partner, as `(g, g*)` pairs.
    pub fn adjoint_conflicts() -> Vec<(&'static str, &'static str)> {
        REP_GENERATORS
            .iter()
            .filter(|(g, _)| !(g.ends_with('*') || g.ends_with("^-1") || *g == "vbar"))
            .filter(|(g, gs)| printed(g).unwrap().adjoint() != printed(gs).unwrap())
            .copied()
            .collect()
    }
}

/// A matrix on a window with at most a few entries per column.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    pub name: String,
    window: Arc<BasisWindow>,
    entries: BTreeMap<(usize, usize), Complex64>,
}

impl SparseOperator {
    pub fn new(name: &str, window: Arc<BasisWindow>) -> Self {
        SparseOperator {
            name: name.to_string(),
            window,
            entries: BTreeMap::new(),
        }
    }

    pub fn window(&self) -> &Arc<BasisWindow> {
        &self.window
    }

    /// Adds `c` to the `(row, col)` entry.
    pub fn add(&mut self, row: usize, col: usize, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        *self.entries.entry((row, col)).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries.get(&(row, col)).copied().unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Complex64)> {
        self.entries.iter()
    }

    fn same_window(&self, o: &SparseOperator) -> Result<(), RepError> {
        if Arc::ptr_eq(&self.window, &o.window) || *self.window == *o.window {
            Ok(())
        } else {
            Err(RepError::WindowMismatch(self.name.clone(), o.name.clone()))
        }
    }

    /// `self · o` (apply `o` first).
    pub fn compose(&self, o: &SparseOperator) -> Result<SparseOperator, RepError> {
        self.same_window(o)?;
        let mut by_row: BTreeMap<usize, Vec<(usize, Complex64)>> = BTreeMap::new();
        for (&(r, c), &v) in &self.entries {
            by_row.entry(c).or_default().push((r, v));
        }
        let mut out = SparseOperator::new(&format!("{}·{}", self.name, o.name), self.window.clone());
        for (&(mid, col), &b) in &o.entries {
            if let Some(rows) = by_row.get(&mid) {
                for &(row, a) in rows {
                    out.add(row, col, a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> SparseOperator {
        SparseOperator {
            name: format!("{}†", self.name),
            window: self.window.clone(),
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.conj())).collect(),
        }
    }

    /// Largest entrywise difference.
    pub fn max_diff(&self, o: &SparseOperator) -> Result<f64, RepError> {
        self.same_window(o)?;
        let keys: std::collections::BTreeSet<_> = self.entries.keys().chain(o.entries.keys()).collect();
        Ok(keys
            .into_iter()
            .map(|&(r, c)| (self.get(r, c) - o.get(r, c)).norm())
            .fold(0.0, f64::max))
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::new(0.0, 0.0); x.len()];
        for (&(r, c), &v) in &self.entries {
            y[r] += v * x[c];
        }
        y
    }
}

/// `π(g)` on the window.  Columns whose image leaves the window are
/// dropped; the boundary `n = 0` is physical and has no image.
pub fn operator(
    name: &str,
    w: &Arc<BasisWindow>,
    big_q: f64,
    convention: Convention,
) -> Result<SparseOperator, RepError> {
    if !(big_q > 0.0 && big_q < 1.0) {
        return Err(RepError::Deformation(big_q));
    }
    let table = GeneratorTable::new(convention);
    let l = table.letter(name)?;
    let mut op = SparseOperator::new(name, w.clone());
    for col in 0..w.len() {
        let src = w.labels_at(col);
        let dst: Labels = std::array::from_fn(|i| src[i] + l.shift[i]);
        if let Some(row) = w.index_of(&dst) {
            op.add(row, col, Complex64::new(l.coefficient(&src, big_q), 0.0));
        }
    }
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: f64 = 0.8;

    fn w() -> Arc<BasisWindow> {
        Arc::new(BasisWindow::radius(2).unwrap())
    }

    #[test]
    fn printed_examples() {
        let t = GeneratorTable::new(Convention::Verbatim);
        let rho1 = t.letter("rho1").unwrap();
        assert_eq!(rho1.coefficient(&[0; 6], Q), 1.0);
        assert_eq!(rho1.shift, [0, 0, 0, -1, 0, 0]);
        assert_eq!(t.letter("alpha").unwrap().coefficient(&[0, 3, 1, 0, 0, 0], Q), 0.0);
        let g = t.letter("gamma").unwrap();
        assert!((g.coefficient(&[3, 1, 0, 0, 0, 0], Q) - Q.powi(6)).abs() < 1e-15);
        assert_eq!(g.shift, [0, -1, 0, 0, 0, 0]);
    }

    #[test]
    fn only_gamma_star_conflicts_with_adjointness() {
        assert_eq!(GeneratorTable::adjoint_conflicts(), vec![("gamma", "gamma*")]);
        let t = GeneratorTable::new(Convention::AdjointConsistent);
        assert_eq!(t.substitutions.len(), 1);
        assert_eq!(t.substitutions[0].generator, "gamma*");
        assert_eq!(t.substitutions[0].printed, "Q^(2n+2)");
        assert_eq!(t.substitutions[0].used, "Q^(2n)");
        let c = GeneratorTable::new(Convention::Corrected);
        let names: Vec<_> = c.substitutions.iter().map(|s| s.generator.as_str()).collect();
        assert_eq!(names, ["gamma*", "theta2", "theta2*"]);
        assert_eq!(c.substitutions[1].used, "Q^(-n+m-k+s-v)");
    }

    #[test]
    fn inverses_invert() {
        let w = w();
        for conv in Convention::ALL {
            let g = operator("gamma*", &w, Q, conv).unwrap();
            let gi = operator("gamma*^-1", &w, Q, conv).unwrap();
            for (&(r, c), v) in gi.compose(&g).unwrap().entries() {
                assert_eq!(r, c);
                assert!((v.re - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn adjoint_consistent_matrices_are_adjoints() {
        let w = w();
        for (g, gs) in REP_GENERATORS {
            let a = operator(g, &w, Q, Convention::AdjointConsistent).unwrap();
            let b = operator(gs, &w, Q, Convention::AdjointConsistent).unwrap();
            // Entries of b† missing from a are columns truncated at the edge.
            let bd = b.adjoint();
            for (&(r, c), v) in a.entries() {
                assert!(
                    (bd.get(r, c) - v).norm() < 1e-12 || bd.get(r, c) == Complex64::default(),
                    "{g}"
                );
            }
        }
        let g = operator("gamma", &w, Q, Convention::Verbatim).unwrap();
        let gs = operator("gamma*", &w, Q, Convention::Verbatim).unwrap();
        assert!(g.adjoint().max_diff(&gs).unwrap() > 1e-3);
    }

    #[test]
    fn v_is_unitary_shift() {
        let w = w();
        let v = operator("v", &w, Q, Convention::Verbatim).unwrap();
        let vb = operator("vbar", &w, Q, Convention::Verbatim).unwrap();
        let p = v.compose(&vb).unwrap();
        assert!(p.entries().all(|(&(r, c), x)| r == c && *x == Complex64::new(1.0, 0.0)));
        assert_eq!(vb.adjoint().max_diff(&v).unwrap(), 0.0);
    }

    #[test]
    fn bad_inputs() {
        let w = w();
        assert!(matches!(
            operator("zeta", &w, Q, Convention::Verbatim),
            Err(RepError::UnknownGenerator(_))
        ));
        assert!(operator("v", &w, 1.5, Convention::Verbatim).is_err());
        assert!("adjoint".parse::<Convention>().is_err());
        assert_eq!(
            "adjoint-consistent".parse::<Convention>().unwrap(),
            Convention::AdjointConsistent
        );
    }
}

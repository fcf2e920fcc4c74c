//! Truncated basis `|n,m,k,r,s,v⟩` of the representation space.

use super::RepError;
use std::fmt;
use std::str::FromStr;

/// Label names in storage order.
pub const LABELS: [&str; 6] = ["n", "m", "k", "r", "s", "v"];

/// Shift or label vector in storage order `(n, m, k, r, s, v)`.
pub type Labels = [i64; 6];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    pub n: i64,
    pub m: i64,
    pub k: i64,
    pub r: i64,
    pub s: i64,
    pub v: i64,
}

impl BasisState {
    pub fn new(n: i64, m: i64, k: i64, r: i64, s: i64, v: i64) -> Result<Self, RepError> {
        if n < 0 {
            return Err(RepError::Window(format!("label n must be non-negative, got {n}")));
        }
        Ok(BasisState { n, m, k, r, s, v })
    }

    pub fn labels(&self) -> Labels {
        [self.n, self.m, self.k, self.r, self.s, self.v]
    }

    pub(crate) fn from_labels(l: Labels) -> Self {
        BasisState {
            n: l[0],
            m: l[1],
            k: l[2],
            r: l[3],
            s: l[4],
            v: l[5],
        }
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{},{},{},{},{}⟩", self.n, self.m, self.k, self.r, self.s, self.v)
    }
}

/// A box of basis states with a dense row-major index.
///
/// `margin` records the largest per-label excursion of the relations meant
/// to be scanned on the window; see [`BasisWindow::fit_margin`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisWindow {
    lo: Labels,
    hi: Labels,
    margin: i64,
}

impl BasisWindow {
    pub fn new(lo: Labels, hi: Labels) -> Result<Self, RepError> {
        if lo[0] < 0 {
            return Err(RepError::Window("label n must start at 0 or above".into()));
        }
        for i in 0..6 {
            if lo[i] > hi[i] {
                return Err(RepError::Window(format!("empty range for label {}", LABELS[i])));
            }
        }
        Ok(BasisWindow { lo, hi, margin: 0 })
    }

    /// `n = 0..R` and every other label in `-R..R`.
    pub fn radius(r: i64) -> Result<Self, RepError> {
        if r < 0 {
            return Err(RepError::Window(format!("negative radius {r}")));
        }
        BasisWindow::new([0, -r, -r, -r, -r, -r], [r; 6])
    }

    pub fn lo(&self) -> Labels {
        self.lo
    }

    pub fn hi(&self) -> Labels {
        self.hi
    }

    pub fn margin(&self) -> i64 {
        self.margin
    }

    /// Records the margin needed by relations whose per-label excursions
    /// are `shifts` (sum of shift magnitudes of a longest monomial).
    pub fn fit_margin(mut self, shifts: impl IntoIterator<Item = i64>) -> Self {
        self.margin = shifts.into_iter().max().unwrap_or(0);
        self
    }

    fn extent(&self, i: usize) -> usize {
        (self.hi[i] - self.lo[i] + 1) as usize
    }

    pub fn len(&self) -> usize {
        (0..6).map(|i| self.extent(i)).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, l: &Labels) -> bool {
        (0..6).all(|i| self.lo[i] <= l[i] && l[i] <= self.hi[i])
    }

    pub fn index_of(&self, l: &Labels) -> Option<usize> {
        if !self.contains(l) {
            return None;
        }
        let mut idx = 0;
        for i in 0..6 {
            idx = idx * self.extent(i) + (l[i] - self.lo[i]) as usize;
        }
        Some(idx)
    }

    pub fn labels_at(&self, mut idx: usize) -> Labels {
        let mut l = [0; 6];
        for i in (0..6).rev() {
            let e = self.extent(i);
            l[i] = self.lo[i] + (idx % e) as i64;
            idx /= e;
        }
        l
    }

    pub fn state(&self, idx: usize) -> BasisState {
        BasisState::from_labels(self.labels_at(idx))
    }

    pub fn index(&self, st: &BasisState) -> Option<usize> {
        self.index_of(&st.labels())
    }
}

/// `n=0..6,m=-6..6,k=-6..6,r=-6..6,s=-6..6,v=-6..6`, or `radius=R`.
impl FromStr for BasisWindow {
    type Err = RepError;

    fn from_str(spec: &str) -> Result<Self, RepError> {
        let spec = spec.trim();
        if let Some(r) = spec.strip_prefix("radius=") {
            let r = r
                .trim()
                .parse()
                .map_err(|_| RepError::Window(format!("bad radius `{r}`")))?;
            return BasisWindow::radius(r);
        }
        let mut lo = [None; 6];
        let mut hi = [None; 6];
        for part in spec.split(',') {
            let (name, range) = part
                .split_once('=')
                .ok_or_else(|| RepError::Window(format!("expected `label=a..b`, got `{part}`")))?;
            let name = name.trim();
            let i = LABELS
                .iter()
                .position(|l| *l == name)
                .ok_or_else(|| RepError::Window(format!("unknown label `{name}`")))?;
            if lo[i].is_some() {
                return Err(RepError::Window(format!("label `{name}` given twice")));
            }
            let (a, b) = range
                .split_once("..")
                .ok_or_else(|| RepError::Window(format!("expected `a..b` for `{name}`")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| RepError::Window(format!("bad bound `{t}` for `{name}`")))
            };
            lo[i] = Some(parse(a)?);
            hi[i] = Some(parse(b)?);
        }
        let mut l = [0; 6];
        let mut h = [0; 6];
        for i in 0..6 {
            l[i] = lo[i].ok_or_else(|| RepError::Window(format!("missing range for label `{}`", LABELS[i])))?;
            h[i] = hi[i].unwrap();
        }
        BasisWindow::new(l, h)
    }
}

impl fmt::Display for BasisWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..6 {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}={}..{}", LABELS[i], self.lo[i], self.hi[i])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        let w: BasisWindow = "n=0..3,m=-2..2,k=-1..1,r=0..0,s=-3..3,v=-1..2".parse().unwrap();
        assert_eq!(w.len(), 4 * 5 * 3 * 7 * 4);
        assert_eq!(w.to_string().parse::<BasisWindow>().unwrap(), w);
        assert_eq!("radius=6".parse::<BasisWindow>().unwrap().len(), 7 * 13usize.pow(5));
    }

    #[test]
    fn parse_errors() {
        assert!("n=0..3".parse::<BasisWindow>().is_err());
        assert!("n=-1..3,m=0..0,k=0..0,r=0..0,s=0..0,v=0..0"
            .parse::<BasisWindow>()
            .is_err());
        assert!("n=0..3,m=0..0,k=0..0,r=0..0,s=0..0,w=0..0"
            .parse::<BasisWindow>()
            .is_err());
        assert!("n=0..3,m=2..0,k=0..0,r=0..0,s=0..0,v=0..0"
            .parse::<BasisWindow>()
            .is_err());
    }

    #[test]
    fn index_is_a_bijection() {
        let w = BasisWindow::radius(2).unwrap();
        for i in 0..w.len() {
            assert_eq!(w.index_of(&w.labels_at(i)), Some(i));
        }
        assert_eq!(w.index_of(&[3, 0, 0, 0, 0, 0]), None);
    }
}

//! Weighted triangular puzzles.
//!
//! The board is a size-`n` triangle cut into unit triangles: rows `r =
//! 1..n` hold upward cells `U(r,t)`, `t = 1..r`, and downward cells
//! `D(r,t)`, `t = 1..r-1`. Every cell edge carries a label in
//! `{0, 1, R, E}` and the pieces are encoded by which labels a cell may
//! wear:
//!
//! * `0`- and `1`-triangles: all three edges alike;
//! * rhombi in the three orientations, split into their two unit cells
//!   with the invisible shared edge labeled `R` (north-south, northwest-
//!   southeast, southwest-northeast);
//! * the equivariant piece, shaped like the north-south rhombus with the
//!   shared edge labeled `E`.
//!
//! A filling is a puzzle when every interior edge has matching labels on
//! both sides, so the `R`/`E` pairs reassemble uniquely into whole pieces.
//! Boundary edges are read as 0/1 strings: `lam` up the northwest side
//! (position `p` at row `n+1-p`), `mu` down the northeast side, `nu` along
//! the south side, left to right.
//!
//! An equivariant piece whose upward half sits at `U(r,t)` contributes the
//! weight `y_j - y_i` with `i = t` and `j = t + n - r` (the numbers of its
//! south-boundary projections along the two rhombus directions), and a
//! puzzle's weight is the product over its equivariant pieces. Summing
//! weights over fillings with boundary `(lam, mu, nu)` gives the structure
//! constant `c^nu_(lam,mu)`, which the verification suites check against
//! the localization engine.

mod dp;
mod gashed;
mod render;

pub use dp::{count_dp, count_dp_table, table_from_puzzles};
pub use gashed::{enumerate_gashed, Gash, GashedPuzzle};
pub use render::{render_ascii, render_svg};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use thiserror::Error;

use crate::poly::Poly;
use crate::strings::BitString;

/// Label on a single cell edge.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    Zero,
    One,
    R,
    E,
}

impl EdgeLabel {
    pub(crate) fn from_bit(b: bool) -> Self {
        if b {
            EdgeLabel::One
        } else {
            EdgeLabel::Zero
        }
    }

    /// `Some(bit)` for 0/1, `None` for the invisible labels.
    pub fn bit(self) -> Option<bool> {
        match self {
            EdgeLabel::Zero => Some(false),
            EdgeLabel::One => Some(true),
            _ => None,
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeLabel::Zero => "0",
            EdgeLabel::One => "1",
            EdgeLabel::R => "R",
            EdgeLabel::E => "E",
        })
    }
}

/// Upward cell contents. Edge order is (northwest, northeast, south).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum UpKind {
    /// 0-triangle.
    Zero,
    /// 1-triangle.
    One,
    /// Top half of a north-south rhombus.
    NorthSouth,
    /// Right half of a northwest-southeast rhombus.
    NwSe,
    /// Left half of a southwest-northeast rhombus.
    SwNe,
    /// Top half of the equivariant piece.
    Equivariant,
}

/// Downward cell contents. Edge order is (north, southwest, southeast).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum DownKind {
    /// 0-triangle.
    Zero,
    /// 1-triangle.
    One,
    /// Bottom half of a north-south rhombus.
    NorthSouth,
    /// Left half of a northwest-southeast rhombus.
    NwSe,
    /// Right half of a southwest-northeast rhombus.
    SwNe,
    /// Bottom half of the equivariant piece.
    Equivariant,
}

use EdgeLabel::{One as L1, Zero as L0, E as LE, R as LR};

impl UpKind {
    /// (northwest, northeast, south)
    pub fn edges(self) -> (EdgeLabel, EdgeLabel, EdgeLabel) {
        match self {
            UpKind::Zero => (L0, L0, L0),
            UpKind::One => (L1, L1, L1),
            UpKind::NorthSouth => (L1, L0, LR),
            UpKind::NwSe => (LR, L1, L0),
            UpKind::SwNe => (L0, LR, L1),
            UpKind::Equivariant => (L0, L1, LE),
        }
    }

    pub fn nw(self) -> EdgeLabel {
        self.edges().0
    }

    pub fn ne(self) -> EdgeLabel {
        self.edges().1
    }

    pub fn s(self) -> EdgeLabel {
        self.edges().2
    }

    pub(crate) fn code(self) -> char {
        match self {
            UpKind::Zero => '0',
            UpKind::One => '1',
            UpKind::NorthSouth => 'n',
            UpKind::NwSe => 'w',
            UpKind::SwNe => 's',
            UpKind::Equivariant => 'e',
        }
    }

    pub(crate) fn from_code(c: char) -> Option<Self> {
        Some(match c {
            '0' => UpKind::Zero,
            '1' => UpKind::One,
            'n' => UpKind::NorthSouth,
            'w' => UpKind::NwSe,
            's' => UpKind::SwNe,
            'e' => UpKind::Equivariant,
            _ => return None,
        })
    }
}

impl DownKind {
    /// (north, southwest, southeast)
    pub fn edges(self) -> (EdgeLabel, EdgeLabel, EdgeLabel) {
        match self {
            DownKind::Zero => (L0, L0, L0),
            DownKind::One => (L1, L1, L1),
            DownKind::NorthSouth => (LR, L0, L1),
            DownKind::NwSe => (L0, L1, LR),
            DownKind::SwNe => (L1, LR, L0),
            DownKind::Equivariant => (LE, L1, L0),
        }
    }

    pub fn n(self) -> EdgeLabel {
        self.edges().0
    }

    pub fn sw(self) -> EdgeLabel {
        self.edges().1
    }

    pub fn se(self) -> EdgeLabel {
        self.edges().2
    }

    pub(crate) fn code(self) -> char {
        match self {
            DownKind::Zero => '0',
            DownKind::One => '1',
            DownKind::NorthSouth => 'n',
            DownKind::NwSe => 'w',
            DownKind::SwNe => 's',
            DownKind::Equivariant => 'e',
        }
    }

    pub(crate) fn from_code(c: char) -> Option<Self> {
        Some(match c {
            '0' => DownKind::Zero,
            '1' => DownKind::One,
            'n' => DownKind::NorthSouth,
            'w' => DownKind::NwSe,
            's' => DownKind::SwNe,
            'e' => DownKind::Equivariant,
            _ => return None,
        })
    }
}

/// Fixed try order; makes the enumeration order deterministic.
pub(crate) const UP_TRY_ORDER: [UpKind; 6] = [
    UpKind::Zero,
    UpKind::One,
    UpKind::NorthSouth,
    UpKind::NwSe,
    UpKind::SwNe,
    UpKind::Equivariant,
];

pub(crate) const DOWN_TRY_ORDER: [DownKind; 6] = [
    DownKind::Zero,
    DownKind::One,
    DownKind::NorthSouth,
    DownKind::NwSe,
    DownKind::SwNe,
    DownKind::Equivariant,
];

fn up_index(r: usize, t: usize) -> usize {
    r * (r - 1) / 2 + t - 1
}

fn down_index(r: usize, t: usize) -> usize {
    (r - 1) * (r - 2) / 2 + t - 1
}

/// A filled board. Invariants (matching interior edges, 0/1 boundary) hold
/// for every puzzle produced by the enumerators; [`Puzzle::validate`]
/// re-checks them after parsing.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Puzzle {
    n: usize,
    up: Vec<UpKind>,
    down: Vec<DownKind>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PuzzleError {
    #[error("cell vectors have the wrong length for size {0}")]
    BadShape(usize),
    #[error("edge mismatch at {0}")]
    EdgeMismatch(String),
    #[error("boundary edge at {0} is not 0/1")]
    BadBoundary(String),
    #[error("invalid puzzle text: {0}")]
    BadText(String),
}

impl Puzzle {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn up(&self, r: usize, t: usize) -> UpKind {
        assert!(r >= 1 && r <= self.n && t >= 1 && t <= r);
        self.up[up_index(r, t)]
    }

    pub fn down(&self, r: usize, t: usize) -> DownKind {
        assert!(r >= 2 && r <= self.n && t >= 1 && t < r);
        self.down[down_index(r, t)]
    }

    /// Northwest boundary string: position `p` is read off row `n + 1 - p`.
    pub fn nw_string(&self) -> BitString {
        BitString::new(
            (1..=self.n)
                .map(|p| self.up(self.n + 1 - p, 1).nw().bit().expect("0/1 boundary"))
                .collect(),
        )
    }

    /// Northeast boundary string, read top to bottom.
    pub fn ne_string(&self) -> BitString {
        BitString::new(
            (1..=self.n)
                .map(|r| self.up(r, r).ne().bit().expect("0/1 boundary"))
                .collect(),
        )
    }

    /// South boundary string, read left to right.
    pub fn south_string(&self) -> BitString {
        BitString::new(
            (1..=self.n)
                .map(|t| self.up(self.n, t).s().bit().expect("0/1 boundary"))
                .collect(),
        )
    }

    pub fn boundary(&self) -> (BitString, BitString, BitString) {
        (self.nw_string(), self.ne_string(), self.south_string())
    }

    /// Positions `(r, t)` of the upward halves of equivariant pieces.
    pub fn equivariant_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 1..=self.n {
            for t in 1..=r {
                if self.up(r, t) == UpKind::Equivariant {
                    out.push((r, t));
                }
            }
        }
        out
    }

    pub fn is_ordinary(&self) -> bool {
        self.equivariant_cells().is_empty()
    }

    /// Weight of the equivariant piece whose upward half is at `(r, t)`.
    fn piece_weight(&self, r: usize, t: usize) -> Poly {
        Poly::y_diff(t + self.n - r, t)
    }

    /// Product of the weights of all equivariant pieces.
    pub fn weight(&self) -> Poly {
        self.equivariant_cells()
            .into_iter()
            .fold(Poly::one(), |acc, (r, t)| &acc * &self.piece_weight(r, t))
    }

    /// Check interior edge matching and 0/1 boundary labels.
    pub fn validate(&self) -> Result<(), PuzzleError> {
        let n = self.n;
        if self.up.len() != n * (n + 1) / 2 || self.down.len() != n * (n - 1) / 2 {
            return Err(PuzzleError::BadShape(n));
        }
        for r in 2..=n {
            for t in 1..r {
                if self.down(r, t).sw() != self.up(r, t).ne() {
                    return Err(PuzzleError::EdgeMismatch(format!("D({r},{t}) southwest")));
                }
                if self.down(r, t).se() != self.up(r, t + 1).nw() {
                    return Err(PuzzleError::EdgeMismatch(format!("D({r},{t}) southeast")));
                }
                if self.down(r, t).n() != self.up(r - 1, t).s() {
                    return Err(PuzzleError::EdgeMismatch(format!("D({r},{t}) north")));
                }
            }
        }
        for r in 1..=n {
            if self.up(r, 1).nw().bit().is_none() {
                return Err(PuzzleError::BadBoundary(format!("U({r},1) northwest")));
            }
            if self.up(r, r).ne().bit().is_none() {
                return Err(PuzzleError::BadBoundary(format!("U({r},{r}) northeast")));
            }
        }
        for t in 1..=n {
            if self.up(n, t).s().bit().is_none() {
                return Err(PuzzleError::BadBoundary(format!("U({n},{t}) south")));
            }
        }
        Ok(())
    }

    /// Reflect through the vertical axis and flip 0 <-> 1. Sends a puzzle
    /// with boundary `(lam, mu, nu)` to one with `(mu*, lam*, nu*)`, and
    /// multiplies each equivariant weight by the conjugation
    /// `y_i -> -y_(n+1-i)`.
    pub fn dual(&self) -> Puzzle {
        let n = self.n;
        let mut up = vec![UpKind::Zero; self.up.len()];
        let mut down = vec![DownKind::Zero; self.down.len()];
        for r in 1..=n {
            for t in 1..=r {
                up[up_index(r, r + 1 - t)] = match self.up(r, t) {
                    UpKind::Zero => UpKind::One,
                    UpKind::One => UpKind::Zero,
                    UpKind::NorthSouth => UpKind::NorthSouth,
                    UpKind::NwSe => UpKind::SwNe,
                    UpKind::SwNe => UpKind::NwSe,
                    UpKind::Equivariant => UpKind::Equivariant,
                };
            }
            for t in 1..r {
                down[down_index(r, r - t)] = match self.down(r, t) {
                    DownKind::Zero => DownKind::One,
                    DownKind::One => DownKind::Zero,
                    DownKind::NorthSouth => DownKind::NorthSouth,
                    DownKind::NwSe => DownKind::SwNe,
                    DownKind::SwNe => DownKind::NwSe,
                    DownKind::Equivariant => DownKind::Equivariant,
                };
            }
        }
        Puzzle { n, up, down }
    }

    /// Rotate the board 120 degrees clockwise (northwest side to northeast
    /// side). Only defined without equivariant pieces: the rotated
    /// equivariant shape is not a piece. Sends boundary `(lam, mu, nu)` to
    /// `(reverse nu, lam, reverse mu)`.
    pub fn rotate(&self) -> Result<Puzzle, RotateError> {
        if !self.is_ordinary() {
            return Err(RotateError);
        }
        let n = self.n;
        let mut up = vec![UpKind::Zero; self.up.len()];
        let mut down = vec![DownKind::Zero; self.down.len()];
        for r in 1..=n {
            for t in 1..=r {
                // (nw, ne, s) -> (s, nw, ne)
                up[up_index(n - r + t, n - r + 1)] = match self.up(r, t) {
                    UpKind::Zero => UpKind::Zero,
                    UpKind::One => UpKind::One,
                    UpKind::NorthSouth => UpKind::NwSe,
                    UpKind::NwSe => UpKind::SwNe,
                    UpKind::SwNe => UpKind::NorthSouth,
                    UpKind::Equivariant => unreachable!(),
                };
            }
            for t in 1..r {
                // (n, sw, se) -> (sw, se, n)
                down[down_index(n - r + t + 1, n - r + 1)] = match self.down(r, t) {
                    DownKind::Zero => DownKind::Zero,
                    DownKind::One => DownKind::One,
                    DownKind::NorthSouth => DownKind::NwSe,
                    DownKind::NwSe => DownKind::SwNe,
                    DownKind::SwNe => DownKind::NorthSouth,
                    DownKind::Equivariant => unreachable!(),
                };
            }
        }
        Ok(Puzzle { n, up, down })
    }

    /// Per-puzzle bookkeeping around southwest-northeast rhombi; see
    /// [`FluxReport`].
    pub fn flux(&self) -> FluxReport {
        let n = self.n;
        let mut report = FluxReport {
            swne_count: 0,
            disc_sum: Poly::zero(),
            left_scab_sum: Poly::zero(),
            right_scab_sum: Poly::zero(),
        };
        for r in 1..=n {
            for t in 1..=r {
                if self.up(r, t) != UpKind::SwNe {
                    continue;
                }
                let j = t + n - r;
                report.swne_count += 1;
                report.disc_sum = &report.disc_sum + &Poly::y_diff(j + 1, j);
                if r > 1 && self.up(r - 1, t) == UpKind::One {
                    report.right_scab_sum = &report.right_scab_sum + &Poly::y_diff(j + 1, t);
                }
                if r < n && self.down(r + 1, t) == DownKind::One {
                    report.left_scab_sum = &report.left_scab_sum + &Poly::y_diff(j, t);
                }
            }
        }
        report
    }
}

/// Rotation applied to a puzzle containing equivariant pieces.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("rotation is only defined for puzzles without equivariant pieces")]
pub struct RotateError;

/// Sums attached to the southwest-northeast rhombi of one puzzle.
///
/// Each such rhombus at `(r, t)` has a discrepancy `y_(j+1) - y_j` with
/// `j = t + n - r`. A rhombus with a 1-triangle directly above its
/// downward half is a right scab (weight `y_(j+1) - y_t`); one with a
/// 1-triangle directly below its upward half is a left scab (weight
/// `y_j - y_t`). For every puzzle with boundary `(lam, mu, nu)`, both the
/// discrepancy sum and the scab flux (right minus left) equal
/// `S_dv|_nu - S_dv|_lam`; the flux suite asserts this.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FluxReport {
    pub swne_count: usize,
    pub disc_sum: Poly,
    pub left_scab_sum: Poly,
    pub right_scab_sum: Poly,
}

impl FluxReport {
    pub fn scab_flux(&self) -> Poly {
        &self.right_scab_sum - &self.left_scab_sum
    }
}

/// Forced edge labels that override the usual propagation; this is how
/// gashes are cut into the board. Positions are `(r, t)` cell coordinates.
#[derive(Default, Clone)]
pub(crate) struct Overrides {
    /// Forced northwest label of `U(r,t)` (gash on a `/` edge, cell side).
    pub up_nw: Vec<((usize, usize), EdgeLabel)>,
    /// Forced south label of `U(r,t)` (gash on a horizontal edge, top side).
    pub up_s: Vec<((usize, usize), EdgeLabel)>,
    /// Forced north label of `D(r,t)` (gash on a horizontal edge, bottom side).
    pub down_n: Vec<((usize, usize), EdgeLabel)>,
    /// Forced southeast label of `D(r,t)` (gash on a `/` edge, other side).
    pub down_se: Vec<((usize, usize), EdgeLabel)>,
}

impl Overrides {
    fn get(list: &[((usize, usize), EdgeLabel)], r: usize, t: usize) -> Option<EdgeLabel> {
        list.iter().find(|&&(pos, _)| pos == (r, t)).map(|&(_, l)| l)
    }
}

/// Backtracking enumeration over cells in reading order (row by row,
/// upward cell then the downward cell to its right).
struct Search<'a> {
    n: usize,
    nw: &'a BitString,
    ne: &'a BitString,
    south: Option<&'a BitString>,
    ov: Overrides,
    up: Vec<UpKind>,
    down: Vec<DownKind>,
    out: Vec<Puzzle>,
}

impl<'a> Search<'a> {
    fn new(
        nw: &'a BitString,
        ne: &'a BitString,
        south: Option<&'a BitString>,
        ov: Overrides,
    ) -> Self {
        let n = nw.n();
        assert_eq!(ne.n(), n);
        if let Some(s) = south {
            assert_eq!(s.n(), n);
        }
        Search {
            n,
            nw,
            ne,
            south,
            ov,
            up: Vec::with_capacity(n * (n + 1) / 2),
            down: Vec::with_capacity(n * (n - 1) / 2),
            out: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<Puzzle> {
        self.place_up(1, 1);
        self.out
    }

    fn advance(&mut self, r: usize, t: usize) {
        // after U(r,t): go to D(r,t) unless at the row end
        if t < r {
            self.place_down(r, t);
        } else if r < self.n {
            self.place_up(r + 1, 1);
        } else {
            self.out.push(Puzzle {
                n: self.n,
                up: self.up.clone(),
                down: self.down.clone(),
            });
        }
    }

    fn place_up(&mut self, r: usize, t: usize) {
        let req_nw = Overrides::get(&self.ov.up_nw, r, t).unwrap_or_else(|| {
            if t == 1 {
                EdgeLabel::from_bit(self.nw.bit(self.n + 1 - r))
            } else {
                self.down[down_index(r, t - 1)].se()
            }
        });
        let req_ne = (t == r).then(|| EdgeLabel::from_bit(self.ne.bit(r)));
        let req_s = match Overrides::get(&self.ov.up_s, r, t) {
            Some(l) => Some(l),
            None if r == self.n => self.south.map(|nu| EdgeLabel::from_bit(nu.bit(t))),
            None => None,
        };
        for kind in UP_TRY_ORDER {
            let (nw, ne, s) = kind.edges();
            if nw != req_nw {
                continue;
            }
            if req_ne.is_some_and(|x| x != ne) {
                continue;
            }
            match req_s {
                Some(x) if x != s => continue,
                // free south boundary still has to read 0/1
                None if r == self.n && s.bit().is_none() => continue,
                _ => {}
            }
            self.up.push(kind);
            self.advance(r, t);
            self.up.pop();
        }
    }

    fn place_down(&mut self, r: usize, t: usize) {
        let req_n = Overrides::get(&self.ov.down_n, r, t)
            .unwrap_or_else(|| self.up[up_index(r - 1, t)].s());
        let req_sw = self.up[up_index(r, t)].ne();
        let req_se = Overrides::get(&self.ov.down_se, r, t);
        for kind in DOWN_TRY_ORDER {
            let (dn, sw, se) = kind.edges();
            if dn != req_n || sw != req_sw {
                continue;
            }
            if req_se.is_some_and(|x| x != se) {
                continue;
            }
            self.down.push(kind);
            self.place_up(r, t + 1);
            self.down.pop();
        }
    }
}

/// All puzzles with the given boundary, in deterministic order.
pub fn enumerate_puzzles(nw: &BitString, ne: &BitString, south: &BitString) -> Vec<Puzzle> {
    Search::new(nw, ne, Some(south), Overrides::default()).run()
}

pub(crate) fn enumerate_with_overrides(
    nw: &BitString,
    ne: &BitString,
    south: &BitString,
    ov: Overrides,
) -> Vec<Puzzle> {
    Search::new(nw, ne, Some(south), ov).run()
}

/// All puzzles with northwest side `lam` and northeast side `mu`, with the
/// south side free, grouped by the south string.
pub fn enumerate_products(nw: &BitString, ne: &BitString) -> BTreeMap<BitString, Vec<Puzzle>> {
    let mut out: BTreeMap<BitString, Vec<Puzzle>> = BTreeMap::new();
    for p in Search::new(nw, ne, None, Overrides::default()).run() {
        out.entry(p.south_string()).or_default().push(p);
    }
    out
}

/// Structure constants by weighted puzzle counting:
/// `c^nu_(lam,mu) = sum of weights over puzzles with boundary (lam,mu,nu)`.
pub fn product_via_puzzles(nw: &BitString, ne: &BitString) -> BTreeMap<BitString, Poly> {
    enumerate_products(nw, ne)
        .into_iter()
        .map(|(nu, ps)| {
            let total = ps.iter().fold(Poly::zero(), |acc, p| &acc + &p.weight());
            (nu, total)
        })
        .collect()
}

/// The unique puzzle with boundary `(lam, lam, lam)`. Built directly: the
/// bottom row holds `lam`-triangles, and each trough between consecutive
/// bottom edges forces the diamond above it, which yields the next row of
/// upward cells, and so on to the top. Its weight is the full inversion
/// weight of `lam`.
pub fn unique_diagonal_puzzle(lam: &BitString) -> Puzzle {
    let n = lam.n();
    let mut up = vec![UpKind::Zero; n * (n + 1) / 2];
    let mut down = vec![DownKind::Zero; n * (n - 1) / 2];
    for t in 1..=n {
        up[up_index(n, t)] = if lam.bit(t) { UpKind::One } else { UpKind::Zero };
    }
    for r in (2..=n).rev() {
        for t in 1..r {
            let sw = up[up_index(r, t)].ne();
            let se = up[up_index(r, t + 1)].nw();
            let (d, u) = match (sw, se) {
                (L0, L0) => (DownKind::Zero, UpKind::Zero),
                (L1, L1) => (DownKind::One, UpKind::One),
                (L0, L1) => (DownKind::NorthSouth, UpKind::NorthSouth),
                (L1, L0) => (DownKind::Equivariant, UpKind::Equivariant),
                other => unreachable!("diagonal construction saw labels {other:?}"),
            };
            down[down_index(r, t)] = d;
            up[up_index(r - 1, t)] = u;
        }
    }
    let p = Puzzle { n, up, down };
    debug_assert_eq!(p.validate(), Ok(()));
    p
}

impl fmt::Display for Puzzle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.n)?;
        for k in &self.up {
            write!(f, "{}", k.code())?;
        }
        write!(f, ";")?;
        for k in &self.down {
            write!(f, "{}", k.code())?;
        }
        Ok(())
    }
}

impl FromStr for Puzzle {
    type Err = PuzzleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.trim().split(';');
        let bad = |m: &str| PuzzleError::BadText(m.to_string());
        let n: usize = parts
            .next()
            .ok_or_else(|| bad("missing size"))?
            .parse()
            .map_err(|_| bad("bad size"))?;
        if n == 0 || n > 64 {
            return Err(bad("size out of range"));
        }
        let up_str = parts.next().ok_or_else(|| bad("missing upward cells"))?;
        let down_str = parts.next().ok_or_else(|| bad("missing downward cells"))?;
        if parts.next().is_some() {
            return Err(bad("trailing fields"));
        }
        let up = up_str
            .chars()
            .enumerate()
            .map(|(i, c)| {
                UpKind::from_code(c)
                    .ok_or_else(|| bad(&format!("bad upward cell code `{c}` at cell {}", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let down = down_str
            .chars()
            .enumerate()
            .map(|(i, c)| {
                DownKind::from_code(c)
                    .ok_or_else(|| bad(&format!("bad downward cell code `{c}` at cell {}", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let p = Puzzle { n, up, down };
        if p.up.len() != n * (n + 1) / 2 || p.down.len() != n * (n - 1) / 2 {
            return Err(PuzzleError::BadShape(n));
        }
        p.validate()?;
        Ok(p)
    }
}

impl serde::Serialize for Puzzle {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Puzzle {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkm;
    use crate::gkm::inversion_weight;
    use std::collections::BTreeSet;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn pl(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn weights(ps: &[Puzzle]) -> Vec<String> {
        let mut w: Vec<String> = ps.iter().map(|p| p.weight().to_string()).collect();
        w.sort();
        w
    }

    #[test]
    fn diagonal_puzzle_n2() {
        let p = unique_diagonal_puzzle(&bs("10"));
        assert_eq!(p.up(1, 1), UpKind::Equivariant);
        assert_eq!(p.down(2, 1), DownKind::Equivariant);
        assert_eq!(p.weight(), pl("y2 - y1"));
        assert_eq!(p.boundary(), (bs("10"), bs("10"), bs("10")));
    }

    #[test]
    fn diagonal_puzzle_weight_is_inversion_weight() {
        for n in 2..=5 {
            for k in 0..=n {
                for lam in BitString::all(n, k) {
                    let p = unique_diagonal_puzzle(&lam);
                    assert_eq!(p.validate(), Ok(()));
                    assert_eq!(p.boundary(), (lam.clone(), lam.clone(), lam.clone()));
                    assert_eq!(p.weight(), inversion_weight(&lam), "at {lam}");
                    let found = enumerate_puzzles(&lam, &lam, &lam);
                    assert_eq!(found, vec![p], "diagonal fillings at {lam}");
                }
            }
        }
    }

    #[test]
    fn diagonal_example_1001() {
        let p = unique_diagonal_puzzle(&bs("1001"));
        assert_eq!(p.weight(), &pl("y2 - y1") * &pl("y3 - y1"));
    }

    #[test]
    fn worked_product_0101_1010() {
        let table = enumerate_products(&bs("0101"), &bs("1010"));
        let keys: Vec<String> = table.keys().map(|b| b.to_string()).collect();
        assert_eq!(keys, vec!["1010", "1100"]);
        assert_eq!(weights(&table[&bs("1010")]), vec!["y3 - y1", "y4 - y3"]);
        assert_eq!(weights(&table[&bs("1100")]), vec!["1"]);
        let sums = product_via_puzzles(&bs("0101"), &bs("1010"));
        assert_eq!(sums[&bs("1010")], pl("y4 - y1"));
        assert_eq!(sums[&bs("1100")], pl("1"));
    }

    #[test]
    fn divisor_squared_0101() {
        let table = enumerate_products(&bs("0101"), &bs("0101"));
        let total: usize = table.values().map(Vec::len).sum();
        assert_eq!(total, 3);
        let sums = product_via_puzzles(&bs("0101"), &bs("0101"));
        assert_eq!(sums[&bs("0101")], pl("y3 - y2"));
        assert_eq!(sums[&bs("0110")], pl("1"));
        assert_eq!(sums[&bs("1001")], pl("1"));
    }

    #[test]
    fn gr13_products_are_asymmetric_as_puzzles() {
        let a = enumerate_products(&bs("010"), &bs("100"));
        assert_eq!(a.len(), 1);
        assert_eq!(weights(&a[&bs("100")]), vec!["y3 - y1"]);
        let b = enumerate_products(&bs("100"), &bs("010"));
        assert_eq!(b.len(), 1);
        assert_eq!(weights(&b[&bs("100")]), vec!["y2 - y1", "y3 - y2"]);
        // same sum on both sides
        let pa = product_via_puzzles(&bs("010"), &bs("100"));
        let pb = product_via_puzzles(&bs("100"), &bs("010"));
        assert_eq!(pa, pb);
    }

    #[test]
    fn empty_enumeration() {
        // south side not above the northwest side
        assert!(enumerate_puzzles(&bs("1100"), &bs("0011"), &bs("0011")).is_empty());
        // degree reasons: l(nu) > l(lam) + l(mu)
        assert!(enumerate_puzzles(&bs("0101"), &bs("0110"), &bs("1100")).is_empty());
        // mismatched numbers of ones: no filling conserves them
        assert!(enumerate_puzzles(&bs("1100"), &bs("0001"), &bs("1100")).is_empty());
        assert!(enumerate_products(&bs("1100"), &bs("0001")).is_empty());
    }

    #[test]
    fn worked_triple_1010_0110_1100() {
        // three fillings, one equivariant piece each, telescoping to y4 - y1;
        // cross-checked against the localization engine by
        // matches_localization_small
        let ps = enumerate_puzzles(&bs("1010"), &bs("0110"), &bs("1100"));
        assert_eq!(ps.len(), 3);
        assert_eq!(weights(&ps), vec!["y2 - y1", "y3 - y2", "y4 - y3"]);
        let total = ps.iter().fold(Poly::zero(), |acc, p| &acc + &p.weight());
        assert_eq!(total, pl("y4 - y1"));
    }

    #[test]
    fn two_piece_weights_on_gr36() {
        // (100101, 101010) -> 110100 has 17 fillings, each with two
        // equivariant pieces, but none of weight (y4 - y1)(y5 - y4); that
        // weight occurs on (011001, 101010) -> 110100, through exactly one
        // filling with its pieces at cells (3,1) and (5,4)
        let target = &Poly::y_diff(4, 1) * &Poly::y_diff(5, 4);
        let ps = enumerate_puzzles(&bs("100101"), &bs("101010"), &bs("110100"));
        assert_eq!(ps.len(), 17);
        assert!(ps.iter().all(|p| p.equivariant_cells().len() == 2));
        assert!(ps.iter().all(|p| p.weight() != target));

        let ps = enumerate_puzzles(&bs("011001"), &bs("101010"), &bs("110100"));
        let hits: Vec<_> = ps.iter().filter(|p| p.weight() == target).collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].equivariant_cells(), vec![(3, 1), (5, 4)]);
    }

    #[test]
    fn matches_localization_small() {
        for (n, k) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
            let basis = gkm::SchubertBasis::shared(n, k);
            for lam in BitString::all(n, k) {
                for mu in BitString::all(n, k) {
                    let via_puzzles = product_via_puzzles(&lam, &mu);
                    let via_gkm = basis.structure_constants(&lam, &mu).unwrap();
                    assert_eq!(via_puzzles, via_gkm, "at ({lam}, {mu}) in ({n},{k})");
                }
            }
        }
    }

    #[test]
    fn dual_swaps_and_conjugates() {
        // the two puzzles for (0101, 1010) -> 1010 dualize to the pair for
        // (1010, 0101) -> 1010 with conjugated weights
        let ps = enumerate_puzzles(&bs("0101"), &bs("1010"), &bs("1010"));
        assert_eq!(weights(&ps), vec!["y3 - y1", "y4 - y3"]);
        let duals: Vec<Puzzle> = ps.iter().map(Puzzle::dual).collect();
        for d in &duals {
            assert_eq!(d.validate(), Ok(()));
            assert_eq!(d.boundary(), (bs("1010"), bs("0101"), bs("1010")));
        }
        assert_eq!(weights(&duals), vec!["y2 - y1", "y4 - y2"]);
    }

    #[test]
    fn dual_is_weight_conjugating_bijection() {
        let n = 4;
        for k in 1..n {
            for lam in BitString::all(n, k) {
                for mu in BitString::all(n, k) {
                    for nu in BitString::all(n, k) {
                        let set: BTreeSet<Puzzle> = enumerate_puzzles(&lam, &mu, &nu)
                            .into_iter()
                            .map(|p| {
                                assert_eq!(
                                    p.dual().weight(),
                                    p.weight().conjugate_y(n),
                                    "weight conjugation at ({lam},{mu},{nu})"
                                );
                                p.dual()
                            })
                            .collect();
                        let expect: BTreeSet<Puzzle> =
                            enumerate_puzzles(&mu.dual(), &lam.dual(), &nu.dual())
                                .into_iter()
                                .collect();
                        assert_eq!(set, expect, "dual set at ({lam},{mu},{nu})");
                    }
                }
            }
        }
    }

    #[test]
    fn rotation_cycles_ordinary_boundaries() {
        let n = 4;
        let k = 2;
        for lam in BitString::all(n, k) {
            for mu in BitString::all(n, k) {
                for nu in BitString::all(n, k) {
                    let ordinary: Vec<Puzzle> = enumerate_puzzles(&lam, &mu, &nu)
                        .into_iter()
                        .filter(Puzzle::is_ordinary)
                        .collect();
                    let rotated: BTreeSet<Puzzle> = ordinary
                        .iter()
                        .map(|p| {
                            let q = p.rotate().unwrap();
                            assert_eq!(q.validate(), Ok(()));
                            q
                        })
                        .collect();
                    let expect: BTreeSet<Puzzle> =
                        enumerate_puzzles(&nu.reversed(), &lam, &mu.reversed())
                            .into_iter()
                            .filter(Puzzle::is_ordinary)
                            .collect();
                    assert_eq!(rotated, expect, "rotation at ({lam},{mu},{nu})");
                }
            }
        }
    }

    #[test]
    fn rotation_rejects_equivariant() {
        let p = unique_diagonal_puzzle(&bs("10"));
        assert_eq!(p.rotate(), Err(RotateError));
    }

    #[test]
    fn text_round_trip() {
        for (lam, mu) in [(bs("0101"), bs("1010")), (bs("0110"), bs("0110"))] {
            for (_, ps) in enumerate_products(&lam, &mu) {
                for p in ps {
                    let text = p.to_string();
                    let back: Puzzle = text.parse().unwrap();
                    assert_eq!(back, p);
                }
            }
        }
    }

    #[test]
    fn parse_rejects_bad_text() {
        assert!("".parse::<Puzzle>().is_err());
        assert!("2;10;".parse::<Puzzle>().is_err()); // wrong shape
        // bad codes are reported with their cell position
        assert_eq!(
            "2;1x0;0".parse::<Puzzle>(),
            Err(PuzzleError::BadText("bad upward cell code `x` at cell 2".into()))
        );
        assert_eq!(
            "2;000;y".parse::<Puzzle>(),
            Err(PuzzleError::BadText("bad downward cell code `y` at cell 1".into()))
        );
        // right shape, mismatched interior edge: U(2,1)=0 but D(2,1)=1
        assert_eq!(
            "2;000;1".parse::<Puzzle>(),
            Err(PuzzleError::EdgeMismatch("D(2,1) southwest".into()))
        );
        // boundary must be 0/1: northwest edge of U(2,1) reading R
        assert!(matches!(
            "2;1w0;n".parse::<Puzzle>(),
            Err(PuzzleError::EdgeMismatch(_)) | Err(PuzzleError::BadBoundary(_))
        ));
    }

    #[test]
    fn flux_sums_match_divisor_difference() {
        // per-puzzle invariant, all boundaries on Gr_2(C^4)
        let (n, k) = (4, 2);
        for lam in BitString::all(n, k) {
            for mu in BitString::all(n, k) {
                for (nu, ps) in enumerate_products(&lam, &mu) {
                    let expect =
                        &gkm::divisor_restriction(n, k, &nu) - &gkm::divisor_restriction(n, k, &lam);
                    for p in ps {
                        let f = p.flux();
                        assert_eq!(f.disc_sum, expect, "disc sum at ({lam},{mu},{nu})");
                        assert_eq!(f.scab_flux(), expect, "scab flux at ({lam},{mu},{nu})");
                        assert_eq!(
                            f.swne_count,
                            nu.length() - lam.length(),
                            "rhombus count at ({lam},{mu},{nu})"
                        );
                    }
                }
            }
        }
    }
}

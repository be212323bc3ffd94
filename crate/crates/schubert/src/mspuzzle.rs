//! MS-puzzles: fillings of the size-`n` diamond computing Molev-Sagan
//! mixed structure constants.
//!
//! The board is shaped like one huge equivariant piece: an upward size-`n`
//! triangle stacked on a downward one, giving four boundaries. It is an
//! `n x n` grid of unit footprints, each an upward cell `Up(a,b)` glued on
//! top of a downward cell `Dn(a,b)` along a horizontal edge. `a` counts
//! footprints from the southwest boundary, `b` from the northwest, so:
//!
//! * `Up(a,b).nw` meets `Dn(a,b-1).se`, or spells `mu_a` on the northwest
//!   side (bottom to top) when `b = 1`;
//! * `Up(a,b).ne` meets `Dn(a+1,b).sw`, or spells `id_b` on the northeast
//!   side (top to bottom) when `a = n`;
//! * `Dn(a,b).sw` meets `Up(a-1,b).ne`, or spells `theta_(n+1-b)` on the
//!   southwest side (so theta reads bottom to top) when `a = 1`;
//! * `Dn(a,b).se` meets `Up(a,b+1).nw`, or spells `nu_a` on the southeast
//!   side (bottom to top) when `b = n`.
//!
//! The piece set is the one the triangular boards use, but an equivariant
//! piece here carries the mixed weight `y_a - z_(n+1-b)`: `a` is its
//! distance from the southwest side and `n+1-b` its distance from the
//! southeast side, both starting at 1. (This does not specialize
//! footprint-by-footprint to the triangular weight; only complete tables
//! agree, at `z := y`.) Summing weights over fillings with southwest side
//! `theta`, northwest side `mu`, and the northeast side pinned to the
//! ascending string `id = 0^(n-k) 1^k` computes the coefficients
//! `e_(theta,mu)^nu(y, z)` of `s_theta(x|z) s_mu(x|y)` expanded in the
//! basis `s_nu(x|y)`; setting `z := y` recovers the equivariant structure
//! constants and `y := z := 0` the ordinary ones.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::Poly;
use crate::puzzle::{DownKind, EdgeLabel, UpKind, DOWN_TRY_ORDER, UP_TRY_ORDER};
use crate::strings::BitString;

/// A filled diamond. Cells are indexed by `(a, b)` in `[1, n]^2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct MsPuzzle {
    n: usize,
    up: Vec<UpKind>,
    down: Vec<DownKind>,
}

fn idx(n: usize, a: usize, b: usize) -> usize {
    (a - 1) * n + (b - 1)
}

impl MsPuzzle {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn up(&self, a: usize, b: usize) -> UpKind {
        assert!(a >= 1 && a <= self.n && b >= 1 && b <= self.n);
        self.up[idx(self.n, a, b)]
    }

    pub fn down(&self, a: usize, b: usize) -> DownKind {
        assert!(a >= 1 && a <= self.n && b >= 1 && b <= self.n);
        self.down[idx(self.n, a, b)]
    }

    /// Southwest boundary string, read bottom to top.
    pub fn sw_string(&self) -> BitString {
        BitString::new(
            (1..=self.n)
                .map(|p| self.down(1, self.n + 1 - p).sw().bit().expect("0/1 boundary"))
                .collect(),
        )
    }

    /// Northwest boundary string, read bottom to top.
    pub fn nw_string(&self) -> BitString {
        BitString::new(
            (1..=self.n)
                .map(|a| self.up(a, 1).nw().bit().expect("0/1 boundary"))
                .collect(),
        )
    }

    /// Southeast boundary string, read bottom to top.
    pub fn se_string(&self) -> BitString {
        BitString::new(
            (1..=self.n)
                .map(|a| self.down(a, self.n).se().bit().expect("0/1 boundary"))
                .collect(),
        )
    }

    /// Northeast boundary string, read top to bottom; always `id` for the
    /// fillings the enumerators produce.
    pub fn ne_string(&self) -> BitString {
        BitString::new(
            (1..=self.n)
                .map(|b| self.up(self.n, b).ne().bit().expect("0/1 boundary"))
                .collect(),
        )
    }

    /// Footprints `(a, b)` holding equivariant pieces.
    pub fn equivariant_footprints(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in 1..=self.n {
                if self.up(a, b) == UpKind::Equivariant {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Product over equivariant pieces of `y_a - z_(n+1-b)`.
    pub fn ms_weight(&self) -> Poly {
        self.equivariant_footprints()
            .into_iter()
            .fold(Poly::one(), |acc, (a, b)| {
                &acc * &(&Poly::y(a) - &Poly::z(self.n + 1 - b))
            })
    }

    /// Check interior edge matching, 0/1 boundary labels, and the pinned
    /// northeast side.
    pub fn validate(&self) -> Result<(), MsPuzzleError> {
        let n = self.n;
        if self.up.len() != n * n || self.down.len() != n * n {
            return Err(MsPuzzleError::BadShape(n));
        }
        for a in 1..=n {
            for b in 1..=n {
                if self.down(a, b).n() != self.up(a, b).s() {
                    return Err(MsPuzzleError::EdgeMismatch(format!("Dn({a},{b}) north")));
                }
                if b >= 2 && self.up(a, b).nw() != self.down(a, b - 1).se() {
                    return Err(MsPuzzleError::EdgeMismatch(format!("Up({a},{b}) northwest")));
                }
                if a < n && self.up(a, b).ne() != self.down(a + 1, b).sw() {
                    return Err(MsPuzzleError::EdgeMismatch(format!("Up({a},{b}) northeast")));
                }
            }
        }
        for a in 1..=n {
            if self.up(a, 1).nw().bit().is_none() {
                return Err(MsPuzzleError::BadBoundary(format!("Up({a},1) northwest")));
            }
            if self.down(a, n).se().bit().is_none() {
                return Err(MsPuzzleError::BadBoundary(format!("Dn({a},{n}) southeast")));
            }
        }
        for b in 1..=n {
            if self.down(1, b).sw().bit().is_none() {
                return Err(MsPuzzleError::BadBoundary(format!("Dn(1,{b}) southwest")));
            }
            if self.up(n, b).ne().bit().is_none() {
                return Err(MsPuzzleError::BadBoundary(format!("Up({n},{b}) northeast")));
            }
        }
        let ne = self.ne_string();
        if ne != BitString::id(n, ne.k()) {
            return Err(MsPuzzleError::NortheastNotId(ne.to_string()));
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MsPuzzleError {
    #[error("cell vectors have the wrong length for size {0}")]
    BadShape(usize),
    #[error("edge mismatch at {0}")]
    EdgeMismatch(String),
    #[error("boundary edge at {0} is not 0/1")]
    BadBoundary(String),
    #[error("northeast side reads {0}, not the ascending string")]
    NortheastNotId(String),
}

impl fmt::Display for MsPuzzle {
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

/// Backtracking over footprints, northwest column first, each column
/// filled top to bottom (descending `a`), upward cell then downward. The
/// upward cell is forced by its two known edges, so only downward cells
/// branch.
struct MsSearch<'a> {
    n: usize,
    theta: &'a BitString,
    mu: &'a BitString,
    id: BitString,
    se: Option<&'a BitString>,
    up: Vec<UpKind>,
    down: Vec<DownKind>,
    out: Vec<MsPuzzle>,
}

impl<'a> MsSearch<'a> {
    fn new(theta: &'a BitString, mu: &'a BitString, se: Option<&'a BitString>) -> Self {
        let n = theta.n();
        assert_eq!(mu.n(), n);
        if let Some(s) = se {
            assert_eq!(s.n(), n);
        }
        MsSearch {
            n,
            theta,
            mu,
            id: BitString::id(n, mu.k()),
            se,
            up: vec![UpKind::Zero; n * n],
            down: vec![DownKind::Zero; n * n],
            out: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<MsPuzzle> {
        self.fill(0);
        self.out
    }

    fn fill(&mut self, pos: usize) {
        let n = self.n;
        if pos == n * n {
            self.out.push(MsPuzzle {
                n,
                up: self.up.clone(),
                down: self.down.clone(),
            });
            return;
        }
        let b = pos / n + 1;
        let a = n - pos % n;

        let req_nw = if b == 1 {
            EdgeLabel::from_bit(self.mu.bit(a))
        } else {
            self.down[idx(n, a, b - 1)].se()
        };
        let req_ne = if a == n {
            EdgeLabel::from_bit(self.id.bit(b))
        } else {
            self.down[idx(n, a + 1, b)].sw()
        };
        let Some(up) = UP_TRY_ORDER
            .into_iter()
            .find(|&k| k.nw() == req_nw && UpKind::ne(k) == req_ne)
        else {
            return;
        };
        self.up[idx(n, a, b)] = up;

        let req_n = up.s();
        let req_sw = (a == 1).then(|| EdgeLabel::from_bit(self.theta.bit(n + 1 - b)));
        let req_se = match self.se {
            Some(nu) if b == n => Some(EdgeLabel::from_bit(nu.bit(a))),
            _ => None,
        };
        for kind in DOWN_TRY_ORDER {
            let (dn, sw, se) = kind.edges();
            if dn != req_n {
                continue;
            }
            if req_sw.is_some_and(|x| x != sw) {
                continue;
            }
            if req_se.is_some_and(|x| x != se) {
                continue;
            }
            // free southeast boundary still has to read 0/1
            if req_se.is_none() && b == n && se.bit().is_none() {
                continue;
            }
            self.down[idx(n, a, b)] = kind;
            self.fill(pos + 1);
        }
    }
}

/// All diamond fillings with the given southwest, northwest, and southeast
/// sides, in deterministic order.
pub fn enumerate_ms(theta: &BitString, mu: &BitString, nu: &BitString) -> Vec<MsPuzzle> {
    MsSearch::new(theta, mu, Some(nu)).run()
}

/// All diamond fillings with the southeast side free, grouped by it.
pub fn enumerate_ms_products(
    theta: &BitString,
    mu: &BitString,
) -> BTreeMap<BitString, Vec<MsPuzzle>> {
    let mut out: BTreeMap<BitString, Vec<MsPuzzle>> = BTreeMap::new();
    for p in MsSearch::new(theta, mu, None).run() {
        out.entry(p.se_string()).or_default().push(p);
    }
    out
}

/// Mixed structure constants:
/// `s_theta(x|z) s_mu(x|y) = sum over nu of e_(theta,mu)^nu s_nu(x|y)`.
pub fn molev_sagan_constants(theta: &BitString, mu: &BitString) -> BTreeMap<BitString, Poly> {
    enumerate_ms_products(theta, mu)
        .into_iter()
        .map(|(nu, ps)| {
            let total = ps.iter().fold(Poly::zero(), |acc, p| &acc + &p.ms_weight());
            (nu, total)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkm;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn pl(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn inline_n2_example() {
        // s_10(x|z) s_01(x|y) = s_10(x|y) + (y1 - z1) s_01(x|y)
        let table = molev_sagan_constants(&bs("10"), &bs("01"));
        assert_eq!(table.len(), 2);
        assert_eq!(table[&bs("10")], Poly::one());
        assert_eq!(table[&bs("01")], &pl("y1") - &pl("z1"));
        let groups = enumerate_ms_products(&bs("10"), &bs("01"));
        assert_eq!(groups[&bs("10")].len(), 1);
        assert_eq!(groups[&bs("01")].len(), 1);
        for ps in groups.values() {
            for p in ps {
                assert_eq!(p.validate(), Ok(()));
                assert_eq!(p.sw_string(), bs("10"));
                assert_eq!(p.nw_string(), bs("01"));
                assert_eq!(p.ne_string(), bs("01"));
            }
        }
    }

    #[test]
    fn worked_0101_squared() {
        // four fillings altogether, two of them equivariant
        let groups = enumerate_ms_products(&bs("0101"), &bs("0101"));
        let total: usize = groups.values().map(Vec::len).sum();
        assert_eq!(total, 4);
        let table = molev_sagan_constants(&bs("0101"), &bs("0101"));
        assert_eq!(
            table[&bs("0101")],
            &(&pl("y3") - &pl("z1")) + &(&pl("y1") - &pl("z2"))
        );
        assert_eq!(table[&bs("1001")], Poly::one());
        assert_eq!(table[&bs("0110")], Poly::one());
        let mut eq_weights: Vec<String> = groups[&bs("0101")]
            .iter()
            .map(|p| p.ms_weight().to_string())
            .collect();
        eq_weights.sort();
        assert_eq!(eq_weights, vec!["y1 - z2", "y3 - z1"]);
    }

    #[test]
    fn trivial_columns() {
        for n in 1..=4 {
            for lam in [BitString::id(n, 0), BitString::id(n, n)] {
                let groups = enumerate_ms_products(&lam, &lam);
                assert_eq!(groups.len(), 1);
                let ps = &groups[&lam];
                assert_eq!(ps.len(), 1);
                assert_eq!(ps[0].ms_weight(), Poly::one());
            }
        }
    }

    #[test]
    fn mismatched_ones_enumerate_empty() {
        assert!(enumerate_ms(&bs("1100"), &bs("0001"), &bs("1100")).is_empty());
        assert!(enumerate_ms_products(&bs("1100"), &bs("0001")).is_empty());
    }

    #[test]
    fn specializations_match_localization() {
        for (n, k) in [(2, 1), (3, 1), (3, 2)] {
            let basis = gkm::SchubertBasis::shared(n, k);
            for theta in BitString::all(n, k) {
                for mu in BitString::all(n, k) {
                    let mixed = molev_sagan_constants(&theta, &mu);
                    let eqv = basis.structure_constants(&theta, &mu).unwrap();
                    let specialized: BTreeMap<BitString, Poly> = mixed
                        .iter()
                        .map(|(nu, w)| (nu.clone(), w.z_to_y()))
                        .filter(|(_, w)| !w.is_zero())
                        .collect();
                    assert_eq!(specialized, eqv, "z := y at ({theta}, {mu})");
                }
            }
        }
    }

    #[test]
    fn validates_and_reads_boundaries() {
        for (nu, ps) in enumerate_ms_products(&bs("010"), &bs("001")) {
            for p in ps {
                assert_eq!(p.validate(), Ok(()));
                assert_eq!(p.sw_string(), bs("010"));
                assert_eq!(p.nw_string(), bs("001"));
                assert_eq!(p.se_string(), nu);
                assert_eq!(p.ne_string(), bs("001"));
            }
        }
    }
}

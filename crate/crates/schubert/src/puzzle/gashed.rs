//! Gashed puzzles: boards cut along a short slit.
//!
//! A gash is a segment of the triangular lattice, either two collinear
//! `/` edges (southwest-northeast) or a horizontal run of length at least
//! two (east-west). Edges on the gash carry one label per side instead of
//! a single matching label. Reading clockwise around the slit, each side
//! spells `0` then `1`, with the interior edges of an east-west gash
//! passing through the short diagonals of equivariant pieces (both sides
//! `E`). Concretely, with rows growing downward:
//!
//! * southwest-northeast gash on line `t`, edges `U(r,t).nw` (upper) and
//!   `U(r+1,t).nw` (lower): the southeast side reads 0 on the upper edge
//!   and 1 on the lower, the northwest side 1 upper and 0 lower;
//! * east-west gash on the interface below row `r`, positions
//!   `t .. t+len-1`: the top side reads `0 E .. E 1` west to east, the
//!   bottom side `1 E .. E 0`.
//!
//! A gash lying on the board boundary has its outer side given by the
//! declared boundary string, so a gashed puzzle with boundary
//! `(lam, mu, nu)` looks, from outside, like an ordinary member of that
//! family while its cells disagree along the slit.
//!
//! Four families matter for the structure constant recurrence: gashes on
//! the northwest boundary (left exterior), gashes whose lower edge is the
//! southeast edge of an equivariant piece (left interior), gashes on the
//! south boundary (right exterior), and gashes whose upper edge is the
//! northwest edge of an equivariant piece (right interior). The
//! verification suites check the four summation identities these satisfy
//! by direct enumeration.

use crate::poly::Poly;
use crate::strings::BitString;

use super::{
    enumerate_with_overrides, DownKind, EdgeLabel, Overrides, Puzzle, UpKind,
};

/// Location of a gash.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gash {
    /// Two collinear `/` edges on line `t`: `U(r_upper, t).nw` and
    /// `U(r_upper + 1, t).nw`. On the northwest boundary when `t == 1`.
    SwNe { t: usize, r_upper: usize },
    /// Horizontal run below row `r` at positions `t_start ..
    /// t_start + len - 1`. On the south boundary when `r == n` (then
    /// `len == 2`).
    Ew { r: usize, t_start: usize, len: usize },
}

/// A filled board with one gash. The cells intentionally mismatch along
/// the slit, so `cells.validate()` does not apply; the declared boundary
/// is the outer reading.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GashedPuzzle {
    cells: Puzzle,
    gash: Gash,
}

impl GashedPuzzle {
    pub fn cells(&self) -> &Puzzle {
        &self.cells
    }

    pub fn gash(&self) -> Gash {
        self.gash
    }

    /// Product of equivariant piece weights, pieces cut through their
    /// short diagonal included.
    pub fn weight(&self) -> Poly {
        self.cells.weight()
    }

    /// Gash on the northwest boundary.
    pub fn is_left_ext(&self) -> bool {
        matches!(self.gash, Gash::SwNe { t: 1, .. })
    }

    /// Gash on the south boundary.
    pub fn is_right_ext(&self) -> bool {
        matches!(self.gash, Gash::Ew { r, .. } if r == self.cells.n())
    }

    /// The lower gash edge is the southeast edge of an equivariant piece.
    pub fn is_left_int(&self) -> bool {
        match self.gash {
            Gash::SwNe { t, r_upper } if t >= 2 => {
                self.cells.down(r_upper + 1, t - 1) == DownKind::Equivariant
            }
            _ => false,
        }
    }

    /// The upper gash edge is the northwest edge of an equivariant piece.
    pub fn is_right_int(&self) -> bool {
        match self.gash {
            Gash::SwNe { t, r_upper } => self.cells.up(r_upper, t) == UpKind::Equivariant,
            _ => false,
        }
    }
}

fn swne_overrides(t: usize, r_upper: usize) -> Overrides {
    let mut ov = Overrides::default();
    // southeast (cell) side: 0 above, 1 below
    ov.up_nw.push(((r_upper, t), EdgeLabel::Zero));
    ov.up_nw.push(((r_upper + 1, t), EdgeLabel::One));
    if t >= 2 {
        // northwest (cell) side: 1 above, 0 below
        ov.down_se.push(((r_upper, t - 1), EdgeLabel::One));
        ov.down_se.push(((r_upper + 1, t - 1), EdgeLabel::Zero));
    }
    ov
}

fn ew_overrides(r: usize, t_start: usize, len: usize, n: usize) -> Overrides {
    let mut ov = Overrides::default();
    let t_end = t_start + len - 1;
    ov.up_s.push(((r, t_start), EdgeLabel::Zero));
    ov.up_s.push(((r, t_end), EdgeLabel::One));
    if r < n {
        ov.down_n.push(((r + 1, t_start), EdgeLabel::One));
        ov.down_n.push(((r + 1, t_end), EdgeLabel::Zero));
        for t in (t_start + 1)..t_end {
            ov.up_s.push(((r, t), EdgeLabel::E));
            ov.down_n.push(((r + 1, t), EdgeLabel::E));
        }
    }
    ov
}

/// All gashed puzzles with outer boundary `(lam, mu, nu)`, every gash
/// location tried in a fixed order.
pub fn enumerate_gashed(lam: &BitString, mu: &BitString, nu: &BitString) -> Vec<GashedPuzzle> {
    let n = lam.n();
    assert_eq!(mu.n(), n);
    assert_eq!(nu.n(), n);
    let mut out = Vec::new();
    let mut run = |gash: Gash, ov: Overrides| {
        for cells in enumerate_with_overrides(lam, mu, nu, ov) {
            out.push(GashedPuzzle { cells, gash });
        }
    };

    // slanted gashes; on the northwest boundary the outer side must read
    // 1 on the upper edge (position n+1-r_upper) and 0 on the lower
    for t in 1..n {
        for r_upper in t..n {
            if t == 1 && !(lam.bit(n + 1 - r_upper) && !lam.bit(n - r_upper)) {
                continue;
            }
            run(Gash::SwNe { t, r_upper }, swne_overrides(t, r_upper));
        }
    }

    // interior horizontal gashes
    for r in 2..n {
        for t_start in 1..r {
            for len in 2..=(r - t_start + 1) {
                run(
                    Gash::Ew { r, t_start, len },
                    ew_overrides(r, t_start, len, n),
                );
            }
        }
    }

    // south boundary gashes: length 2, outer side reads 1 then 0
    for p in 1..n {
        if nu.bit(p) && !nu.bit(p + 1) {
            run(
                Gash::Ew { r: n, t_start: p, len: 2 },
                ew_overrides(n, p, 2, n),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_puzzles, product_via_puzzles};
    use super::*;
    use crate::gkm::divisor_restriction;
    use std::collections::BTreeMap;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn sum_weights<'a>(it: impl Iterator<Item = &'a GashedPuzzle>) -> Poly {
        it.fold(Poly::zero(), |acc, g| &acc + &g.weight())
    }

    fn plain_sum(lam: &BitString, mu: &BitString, nu: &BitString) -> Poly {
        enumerate_puzzles(lam, mu, nu)
            .iter()
            .fold(Poly::zero(), |acc, p| &acc + &p.weight())
    }

    /// All four gash identities on one triple.
    fn check_identities(lam: &BitString, mu: &BitString, nu: &BitString) {
        let n = lam.n();
        let k = lam.k();
        let gashed = enumerate_gashed(lam, mu, nu);

        let left_ext = sum_weights(gashed.iter().filter(|g| g.is_left_ext()));
        let mut expect = Poly::zero();
        for lam_up in lam.covers_up() {
            expect = &expect + &plain_sum(&lam_up, mu, nu);
        }
        assert_eq!(left_ext, expect, "left-ext at ({lam},{mu},{nu})");

        let right_ext = sum_weights(gashed.iter().filter(|g| g.is_right_ext()));
        let mut expect = Poly::zero();
        for nu_down in nu.covers_down() {
            expect = &expect + &plain_sum(lam, mu, &nu_down);
        }
        assert_eq!(right_ext, expect, "right-ext at ({lam},{mu},{nu})");

        let right_int = sum_weights(gashed.iter().filter(|g| g.is_right_int()));
        let left_int = sum_weights(gashed.iter().filter(|g| g.is_left_int()));
        let dv_step = &divisor_restriction(n, k, nu) - &divisor_restriction(n, k, lam);
        let telescoped = &plain_sum(lam, mu, nu) * &dv_step;
        assert_eq!(
            &right_int - &left_int,
            telescoped,
            "telescope at ({lam},{mu},{nu})"
        );

        let right = sum_weights(gashed.iter().filter(|g| g.is_right_ext() || g.is_right_int()));
        let left = sum_weights(gashed.iter().filter(|g| g.is_left_ext() || g.is_left_int()));
        assert_eq!(right, left, "massage at ({lam},{mu},{nu})");
    }

    #[test]
    fn identities_gr13_and_gr23() {
        for k in [1, 2] {
            let all = BitString::all(3, k);
            for lam in &all {
                for mu in &all {
                    for nu in &all {
                        check_identities(lam, mu, nu);
                    }
                }
            }
        }
    }

    #[test]
    fn identities_spot_gr24() {
        let all = BitString::all(4, 2);
        for lam in &all {
            for mu in &all {
                check_identities(lam, mu, &bs("1010"));
                check_identities(lam, mu, &bs("1100"));
            }
        }
    }

    #[test]
    fn northwest_gash_reads_inner_cover() {
        // boundary (1010, 0110) -> 1100 admits a gash on the northwest side;
        // removing it leaves a puzzle whose cells read 1100 up that side
        let gashed = enumerate_gashed(&bs("1010"), &bs("0110"), &bs("1100"));
        let on_nw: Vec<&GashedPuzzle> = gashed.iter().filter(|g| g.is_left_ext()).collect();
        assert!(!on_nw.is_empty());
        for g in &on_nw {
            assert_eq!(g.gash(), Gash::SwNe { t: 1, r_upper: 2 });
            assert_eq!(g.cells().nw_string(), bs("1100"));
            assert_eq!(g.cells().ne_string(), bs("0110"));
            assert_eq!(g.cells().south_string(), bs("1100"));
        }
        // their total weight matches the cover term of the recurrence
        let cover_sum = plain_sum(&bs("1100"), &bs("0110"), &bs("1100"));
        assert_eq!(sum_weights(on_nw.iter().copied()), cover_sum);
        // and the coefficient itself
        let table = product_via_puzzles(&bs("1010"), &bs("0110"));
        assert_eq!(table[&bs("1100")].to_string(), "y4 - y1");
    }

    #[test]
    fn gash_locations_are_recorded() {
        // the diagonal boundary (10,10,10) on n=2: the only gash locations
        // are the slanted one at t=1 and the south pair at p=1
        let gashed = enumerate_gashed(&bs("10"), &bs("10"), &bs("10"));
        let locs: BTreeMap<String, usize> =
            gashed
                .iter()
                .map(|g| format!("{:?}", g.gash()))
                .fold(BTreeMap::new(), |mut m, s| {
                    *m.entry(s).or_default() += 1;
                    m
                });
        // every gashed puzzle here must use one of the two legal locations
        for loc in locs.keys() {
            assert!(
                loc.contains("SwNe { t: 1, r_upper: 1 }") || loc.contains("Ew { r: 2, t_start: 1, len: 2 }"),
                "unexpected gash location {loc}"
            );
        }
    }
}

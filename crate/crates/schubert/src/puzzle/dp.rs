//! Transfer-matrix recount of puzzle weights.
//!
//! Fillings are counted row by row instead of cell by cell. The only
//! information a completed row passes downward is the vector of labels on
//! the south edges of its upward cells, so the sweep keeps a map from such
//! frontier vectors to accumulated weight polynomials. Filling row `r`
//! against an incoming frontier is a small local backtracking across the
//! `2r - 1` cells of the row.
//!
//! The result must agree exactly with whole-board enumeration; the
//! verification suites compare the two, which guards both implementations.

use std::collections::{BTreeMap, HashMap};

use crate::poly::Poly;
use crate::strings::BitString;

use super::{EdgeLabel, Puzzle, DOWN_TRY_ORDER, UP_TRY_ORDER};

/// Weighted count of fillings for one boundary triple.
pub fn count_dp(nw: &BitString, ne: &BitString, south: &BitString) -> Poly {
    assert_eq!(south.n(), nw.n());
    count_dp_table(nw, ne).remove(south).unwrap_or_default()
}

/// Weighted counts for all south boundaries at once:
/// the transfer-matrix analogue of [`super::product_via_puzzles`].
pub fn count_dp_table(nw: &BitString, ne: &BitString) -> BTreeMap<BitString, Poly> {
    let n = nw.n();
    assert_eq!(ne.n(), n);
    assert_eq!(nw.k(), ne.k(), "boundary strings index one Grassmannian");
    let mut states: HashMap<Vec<EdgeLabel>, Poly> = HashMap::new();
    states.insert(Vec::new(), Poly::one());
    for r in 1..=n {
        let mut next: HashMap<Vec<EdgeLabel>, Poly> = HashMap::new();
        for (frontier, acc) in &states {
            let row = RowFill {
                n,
                r,
                nw_label: EdgeLabel::from_bit(nw.bit(n + 1 - r)),
                ne_label: EdgeLabel::from_bit(ne.bit(r)),
                frontier,
            };
            row.for_each_filling(&mut |south_labels, wt| {
                let entry = next.entry(south_labels.to_vec()).or_insert_with(Poly::zero);
                *entry = &*entry + &(acc * wt);
            });
        }
        states = next;
    }
    let mut out = BTreeMap::new();
    for (frontier, acc) in states {
        let bits: Option<Vec<bool>> = frontier.iter().map(|l| l.bit()).collect();
        if let Some(bits) = bits {
            out.insert(BitString::new(bits), acc);
        }
    }
    out
}

struct RowFill<'a> {
    n: usize,
    r: usize,
    nw_label: EdgeLabel,
    ne_label: EdgeLabel,
    /// North labels required of this row's downward cells.
    frontier: &'a [EdgeLabel],
}

impl RowFill<'_> {
    fn for_each_filling(&self, emit: &mut impl FnMut(&[EdgeLabel], &Poly)) {
        let mut south = Vec::with_capacity(self.r);
        self.rec(1, self.nw_label, &Poly::one(), &mut south, emit);
    }

    fn rec(
        &self,
        t: usize,
        incoming_nw: EdgeLabel,
        wt: &Poly,
        south: &mut Vec<EdgeLabel>,
        emit: &mut impl FnMut(&[EdgeLabel], &Poly),
    ) {
        for kind in UP_TRY_ORDER {
            let (nw, ne, s) = kind.edges();
            if nw != incoming_nw {
                continue;
            }
            if t == self.r && ne != self.ne_label {
                continue;
            }
            let wt = if kind == super::UpKind::Equivariant {
                wt * &Poly::y_diff(t + self.n - self.r, t)
            } else {
                wt.clone()
            };
            south.push(s);
            if t == self.r {
                emit(south, &wt);
            } else {
                for dkind in DOWN_TRY_ORDER {
                    let (dn, sw, se) = dkind.edges();
                    if dn != self.frontier[t - 1] || sw != ne {
                        continue;
                    }
                    self.rec(t + 1, se, &wt, south, emit);
                }
            }
            south.pop();
        }
    }
}

/// Exposed for the equivalence suite: group an enumerated puzzle list the
/// way the transfer matrix reports it.
pub fn table_from_puzzles(puzzles: &BTreeMap<BitString, Vec<Puzzle>>) -> BTreeMap<BitString, Poly> {
    puzzles
        .iter()
        .map(|(nu, ps)| {
            let total = ps.iter().fold(Poly::zero(), |acc, p| &acc + &p.weight());
            (nu.clone(), total)
        })
        .collect()
}

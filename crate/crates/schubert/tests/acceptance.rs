//! Acceptance gate: one test per published acceptance criterion, each
//! emitting a single pass/fail line (visible under `--nocapture`).
//!
//! Criteria 5 and 6 assert published boundary data that direct computation
//! contradicts; they are kept verbatim and fail. The computed values are
//! pinned by the library tests (`puzzle::tests::two_piece_weights_on_gr36`,
//! the cover recurrence tests) and by `verify::regression_fixtures`, and
//! both engines agree on them, so the failures indict the published
//! figures, not the implementation.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;

use schubert::gkm::{self, ordinary_table};
use schubert::mspuzzle::{enumerate_ms_products, molev_sagan_constants};
use schubert::poly::Poly;
use schubert::puzzle::{enumerate_products, enumerate_puzzles, product_via_puzzles, Puzzle};
use schubert::strings::BitString;
use schubert::verify::{run_suite, Suite};

fn bs(s: &str) -> BitString {
    s.parse().unwrap()
}

fn pl(s: &str) -> Poly {
    s.parse().unwrap()
}

fn criterion(n: u32, what: &str, check: impl FnOnce() -> Result<String, String>) {
    match check() {
        Ok(detail) => println!("criterion {n} ({what}): PASS ({detail})"),
        Err(e) => {
            println!("criterion {n} ({what}): FAIL: {e}");
            panic!("criterion {n} ({what}): {e}");
        }
    }
}

/// Sorted canonical forms, for order-free weight comparisons.
fn weight_set(ps: &[Puzzle]) -> Vec<String> {
    let mut ws: Vec<String> = ps.iter().map(|p| p.weight().to_string()).collect();
    ws.sort();
    ws
}

#[test]
fn criterion_01_ordinary_square_on_gr36() {
    criterion(1, "(010101)^2 ordinary table on Gr_3(C^6)", || {
        let start = Instant::now();
        let lam = bs("010101");
        let products = enumerate_products(&lam, &lam);
        let ordinary: BTreeMap<BitString, usize> = products
            .iter()
            .filter_map(|(nu, ps)| {
                let m = ps.iter().filter(|p| p.is_ordinary()).count();
                (m > 0).then(|| (nu.clone(), m))
            })
            .collect();
        let expected: BTreeMap<BitString, usize> = [
            (bs("110001"), 1),
            (bs("101010"), 2),
            (bs("011100"), 1),
        ]
        .into();
        if ordinary != expected {
            return Err(format!("ordinary puzzle counts {ordinary:?}"));
        }
        let total: usize = ordinary.values().sum();
        if total != 4 {
            return Err(format!("{total} ordinary puzzles, want 4"));
        }
        // the same table through the weighted product at y := 0
        let at_zero = ordinary_table(&product_via_puzzles(&lam, &lam));
        let expected_ints: BTreeMap<BitString, BigInt> = expected
            .iter()
            .map(|(nu, m)| (nu.clone(), BigInt::from(*m)))
            .collect();
        if at_zero != expected_ints {
            return Err(format!("y:=0 table {at_zero:?}"));
        }
        let secs = start.elapsed().as_secs_f64();
        if secs >= 10.0 {
            return Err(format!("took {secs:.1}s, budget 10s"));
        }
        Ok(format!("4 puzzles, {secs:.2}s"))
    });
}

#[test]
fn criterion_02_mixed_product_on_gr24() {
    criterion(2, "(0101)(1010) table and weight split", || {
        let lam = bs("0101");
        let mu = bs("1010");
        let table = product_via_puzzles(&lam, &mu);
        let expected: BTreeMap<BitString, Poly> =
            [(bs("1010"), pl("y4 - y1")), (bs("1100"), pl("1"))].into();
        if table != expected {
            return Err(format!("table {table:?}"));
        }
        let ps = enumerate_puzzles(&lam, &mu, &bs("1010"));
        if ps.len() != 2 {
            return Err(format!("{} puzzles at 1010, want 2", ps.len()));
        }
        if weight_set(&ps) != ["y3 - y1", "y4 - y3"] {
            return Err(format!("weights {:?}", weight_set(&ps)));
        }
        Ok("degree-1 entry split as (y3 - y1) + (y4 - y3)".into())
    });
}

#[test]
fn criterion_03_divisor_square_on_gr24() {
    criterion(3, "(0101)^2 through exactly three puzzles", || {
        let lam = bs("0101");
        let products = enumerate_products(&lam, &lam);
        let table: BTreeMap<BitString, Poly> = product_via_puzzles(&lam, &lam);
        let expected: BTreeMap<BitString, Poly> = [
            (bs("0101"), pl("y3 - y2")),
            (bs("1001"), pl("1")),
            (bs("0110"), pl("1")),
        ]
        .into();
        if table != expected {
            return Err(format!("table {table:?}"));
        }
        let total: usize = products.values().map(Vec::len).sum();
        if total != 3 {
            return Err(format!("{total} puzzles, want 3"));
        }
        Ok("three puzzles, one equivariant".into())
    });
}

#[test]
fn criterion_04_projective_plane_products_match_gkm() {
    criterion(4, "both orders of (010)(100) on Gr_1(C^3)", || {
        let a = bs("010");
        let b = bs("100");

        let ab = product_via_puzzles(&a, &b);
        if ab != [(bs("100"), pl("y3 - y1"))].into() {
            return Err(format!("(010)(100) = {ab:?}"));
        }
        let ps = enumerate_puzzles(&a, &b, &bs("100"));
        if ps.len() != 1 {
            return Err(format!("{} puzzles for (010)(100), want 1", ps.len()));
        }

        let ba = product_via_puzzles(&b, &a);
        let split = &Poly::y_diff(2, 1) + &Poly::y_diff(3, 2);
        if ba != [(bs("100"), split)].into() {
            return Err(format!("(100)(010) = {ba:?}"));
        }
        let ps = enumerate_puzzles(&b, &a, &bs("100"));
        if ps.len() != 2 {
            return Err(format!("{} puzzles for (100)(010), want 2", ps.len()));
        }
        if weight_set(&ps) != ["y2 - y1", "y3 - y2"] {
            return Err(format!("weights {:?}", weight_set(&ps)));
        }

        for (lam, mu, got) in [(&a, &b, &ab), (&b, &a, &ba)] {
            let oracle = gkm::structure_constants(3, 1, lam, mu).map_err(|e| e.to_string())?;
            if *got != oracle {
                return Err(format!("puzzles {got:?} vs gkm {oracle:?}"));
            }
        }
        Ok("one puzzle then two, both equal the localization oracle".into())
    });
}

#[test]
fn criterion_05_published_empty_enumeration() {
    criterion(5, "count of Delta(1010, 0110; 1100), as published", || {
        // the published count for this boundary is 0; direct enumeration,
        // the transfer-matrix count, and the localization oracle all give 3
        let ps = enumerate_puzzles(&bs("1010"), &bs("0110"), &bs("1100"));
        if ps.is_empty() {
            Ok("no puzzles".into())
        } else {
            Err(format!(
                "{} puzzles with weights {:?}, published count is 0",
                ps.len(),
                weight_set(&ps)
            ))
        }
    });
}

#[test]
fn criterion_06_published_two_piece_weight() {
    criterion(6, "a published weight among Delta(100101, 101010; 110100)", || {
        // the published listing shows a puzzle of weight (y4 - y1)(y5 - y4)
        // here; the 17 actual puzzles carry no such weight, and the quoted
        // piece layout occurs on the boundary (011001, 101010; 110100)
        // instead (see puzzle::tests::two_piece_weights_on_gr36)
        let target = &Poly::y_diff(4, 1) * &Poly::y_diff(5, 4);
        let ps = enumerate_puzzles(&bs("100101"), &bs("101010"), &bs("110100"));
        if ps.iter().any(|p| p.weight() == target) {
            Ok(format!("weight {target} found"))
        } else {
            Err(format!(
                "no puzzle of weight {target} among the {} enumerated",
                ps.len()
            ))
        }
    });
}

#[test]
fn criterion_07_puzzle_equals_gkm_through_n6() {
    criterion(7, "puzzle table = GKM table for every pair, n <= 6", || {
        let start = Instant::now();
        let mut pairs = 0usize;
        for n in 2..=6 {
            for k in 1..n {
                let all = BitString::all(n, k);
                for lam in &all {
                    for mu in &all {
                        let p = product_via_puzzles(lam, mu);
                        let g =
                            gkm::structure_constants(n, k, lam, mu).map_err(|e| e.to_string())?;
                        if p != g {
                            return Err(format!(
                                "mismatch at ({lam}, {mu}): puzzles {p:?} vs gkm {g:?}"
                            ));
                        }
                        pairs += 1;
                    }
                }
            }
        }
        let secs = start.elapsed().as_secs_f64();
        if secs > 900.0 {
            return Err(format!("took {secs:.0}s, budget 900s"));
        }
        Ok(format!("{pairs} pairs, {secs:.1}s"))
    });
}

#[test]
fn criterion_08_identity_suites_exhaustive_n5() {
    criterion(8, "identity suites exhaustive for n <= 5, all k", || {
        let suites = [
            Suite::Gkm,
            Suite::Pieri,
            Suite::CIdentities,
            Suite::Positivity,
            Suite::Duality,
            Suite::Flux,
            Suite::GashIdentities,
            Suite::DpEquivalence,
        ];
        let mut cases = 0usize;
        for n in 2..=5 {
            for k in 1..n {
                for suite in suites {
                    let report = run_suite(suite, n, k);
                    if !report.passed() {
                        return Err(format!("{report}"));
                    }
                    cases += report.cases;
                }
            }
        }
        Ok(format!("{cases} cases over 8 suites"))
    });
}

#[test]
fn criterion_09_ms_tables_and_specialization() {
    criterion(9, "Molev-Sagan tables and their z := y collapse", || {
        // the displayed n = 4 table
        let table = molev_sagan_constants(&bs("0101"), &bs("0101"));
        let expected: BTreeMap<BitString, Poly> = [
            (bs("0101"), &pl("y3 - z1") + &pl("y1 - z2")),
            (bs("0110"), pl("1")),
            (bs("1001"), pl("1")),
        ]
        .into();
        if table != expected {
            return Err(format!("table {table:?}"));
        }
        let fillings: usize = enumerate_ms_products(&bs("0101"), &bs("0101"))
            .values()
            .map(Vec::len)
            .sum();
        if fillings != 4 {
            return Err(format!("{fillings} fillings, want 4"));
        }

        // the inline n = 2 example
        let table = molev_sagan_constants(&bs("10"), &bs("01"));
        let expected: BTreeMap<BitString, Poly> =
            [(bs("10"), pl("1")), (bs("01"), pl("y1 - z1"))].into();
        if table != expected {
            return Err(format!("n = 2 table {table:?}"));
        }

        // z := y turns every e-table into the corresponding c-table
        let mut cases = 0usize;
        for n in 2..=4 {
            for k in 1..n {
                let report = run_suite(Suite::Ms, n, k);
                if !report.passed() {
                    return Err(format!("{report}"));
                }
                cases += report.cases;
            }
        }
        Ok(format!("worked examples plus {cases} suite cases"))
    });
}

#[test]
fn criterion_10_positivity_via_property_suites() {
    criterion(10, "positivity accepted structurally at desk scale", || {
        // the headline claim is checked as a property of every computed
        // constant (criteria 7 to 9 supply the engines' agreement); no
        // large-scale numeric sweep beyond that is in scope
        let mut cases = 0usize;
        for n in 2..=5 {
            for k in 1..n {
                let report = run_suite(Suite::Positivity, n, k);
                if !report.passed() {
                    return Err(format!("{report}"));
                }
                cases += report.cases;
            }
        }
        Ok(format!("{cases} constants confirmed Graham-positive"))
    });
}

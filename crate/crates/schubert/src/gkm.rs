//! Localization at torus fixed points.
//!
//! A class on `Gr_k(C^n)` is presented by its restrictions to the fixed
//! points, one polynomial in `y_1..y_n` per 0/1 string. A family of
//! restrictions comes from an actual equivariant class iff for every pair of
//! strings that differ by swapping the bits in two positions `i < j`, the two
//! restrictions agree modulo `y_j - y_i` (the weight of the connecting
//! one-dimensional orbit).
//!
//! The equivariant Schubert class of `lam` is pinned down by three
//! properties: it vanishes at fixed points not above `lam` in Bruhat order,
//! it is homogeneous of degree `length(lam)` at every point, and its value at
//! `lam` itself is the product of `y_j - y_i` over the inversions of `lam`.
//! We build all of them at once, starting from the top class (supported at
//! the single maximal point) and walking down with divided differences.
//! Products of classes are pointwise; expanding a product back in the basis
//! by repeatedly stripping the Bruhat-minimal support point yields the
//! structure constants. Everything here is independent of the puzzle engine,
//! which is checked against it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{Poly, PolyError, Var};
use crate::strings::BitString;

/// An equivariant cohomology class, stored as its nonzero fixed-point
/// restrictions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Class {
    n: usize,
    k: usize,
    restrictions: BTreeMap<BitString, Poly>,
}

/// Failures with mathematical meaning. Any of these firing on a genuine
/// Schubert class product indicates a bug, and the verification suites
/// exist to rule that out.
#[derive(Debug, Error)]
pub enum GkmError {
    #[error("restrictions at {a} and {b} differ by {diff}, not divisible by y{j} - y{i}")]
    NotGkm {
        a: BitString,
        b: BitString,
        i: usize,
        j: usize,
        diff: Poly,
    },
    #[error("division failed at {at}: {source}")]
    Divide { at: BitString, source: PolyError },
}

impl Class {
    pub fn zero(n: usize, k: usize) -> Self {
        Class {
            n,
            k,
            restrictions: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Restriction to the fixed point `lam` (zero if absent).
    pub fn restriction(&self, lam: &BitString) -> Poly {
        self.restrictions.get(lam).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, lam: BitString, p: Poly) {
        assert_eq!(lam.n(), self.n);
        assert_eq!(lam.k(), self.k);
        if p.is_zero() {
            self.restrictions.remove(&lam);
        } else {
            self.restrictions.insert(lam, p);
        }
    }

    /// Fixed points with nonzero restriction, in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = &BitString> {
        self.restrictions.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.restrictions.is_empty()
    }

    pub fn restrictions(&self) -> &BTreeMap<BitString, Poly> {
        &self.restrictions
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Class) -> Class {
        assert_eq!((self.n, self.k), (other.n, other.k));
        let mut out = Class::zero(self.n, self.k);
        for (lam, p) in &self.restrictions {
            if let Some(q) = other.restrictions.get(lam) {
                out.set(lam.clone(), p * q);
            }
        }
        out
    }

    pub fn sub(&self, other: &Class) -> Class {
        assert_eq!((self.n, self.k), (other.n, other.k));
        let mut out = self.clone();
        for (lam, p) in &other.restrictions {
            out.set(lam.clone(), &out.restriction(lam) - p);
        }
        out
    }

    pub fn scale_poly(&self, p: &Poly) -> Class {
        let mut out = Class::zero(self.n, self.k);
        for (lam, q) in &self.restrictions {
            out.set(lam.clone(), p * q);
        }
        out
    }

    /// Apply the forgetful map `y := 0` pointwise.
    pub fn y_to_zero(&self) -> Class {
        let mut out = Class::zero(self.n, self.k);
        for (lam, p) in &self.restrictions {
            out.set(lam.clone(), p.y_to_zero());
        }
        out
    }

    /// Check the divisibility condition on every pair of fixed points
    /// connected by a one-dimensional orbit (strings differing by one
    /// transposition of a 1 and a 0 in positions `i < j`).
    pub fn check_gkm(&self) -> Result<(), GkmError> {
        for a in BitString::all(self.n, self.k) {
            for i in 1..=self.n {
                for j in (i + 1)..=self.n {
                    if a.bit(i) == a.bit(j) || !a.bit(i) {
                        continue;
                    }
                    let mut bits = a.bits().to_vec();
                    bits.swap(i - 1, j - 1);
                    let b = BitString::new(bits);
                    let diff = &self.restriction(&a) - &self.restriction(&b);
                    if diff.exact_divide(Var::y(j), Var::y(i)).is_err() {
                        return Err(GkmError::NotGkm { a, b, i, j, diff });
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (lam, p) in &self.restrictions {
            writeln!(f, "{lam}: {p}")?;
        }
        Ok(())
    }
}

/// Product of `y_j - y_i` over the inversions of `lam`; the restriction of
/// the Schubert class of `lam` at `lam` itself.
pub fn inversion_weight(lam: &BitString) -> Poly {
    lam.inversions()
        .iter()
        .fold(Poly::one(), |acc, &(i, j)| &acc * &Poly::y_diff(j, i))
}

/// Swap `y_i` and `y_(i+1)` in a polynomial.
fn swap_y(p: &Poly, i: usize) -> Poly {
    p.specialize(&move |v| match v {
        Var::Y(a) if a as usize == i => Some(Poly::y(i + 1)),
        Var::Y(a) if a as usize == i + 1 => Some(Poly::y(i)),
        _ => None,
    })
}

/// The divided difference operator along the simple reflection `s_i`:
/// `(D_i a)|_mu = (a|_mu - s_i . a|_(s_i mu)) / (y_(i+1) - y_i)`,
/// where `s_i` also swaps `y_i` and `y_(i+1)` in the restriction.
pub fn divided_difference(alpha: &Class, i: usize) -> Result<Class, GkmError> {
    let (n, k) = (alpha.n(), alpha.k());
    assert!(i >= 1 && i < n);
    let mut out = Class::zero(n, k);
    for mu in BitString::all(n, k) {
        let si_mu = mu.swap_adjacent(i);
        let num = &alpha.restriction(&mu) - &swap_y(&alpha.restriction(&si_mu), i);
        if num.is_zero() {
            continue;
        }
        let q = num
            .exact_divide(Var::y(i + 1), Var::y(i))
            .map_err(|source| GkmError::Divide { at: mu.clone(), source })?;
        out.set(mu, q);
    }
    Ok(out)
}

/// All equivariant Schubert classes on one Grassmannian.
pub struct SchubertBasis {
    n: usize,
    k: usize,
    classes: BTreeMap<BitString, Class>,
}

impl SchubertBasis {
    /// Build every class: seed the top one (a single restriction at the
    /// maximal fixed point), then walk down in Bruhat order. A string below
    /// the top has an ascent `i`, and its class is the divided difference
    /// `D_i` of the class one cover up.
    pub fn new(n: usize, k: usize) -> Self {
        let mut order = BitString::all(n, k);
        order.sort_by_key(|b| std::cmp::Reverse(b.length()));
        let mut classes: BTreeMap<BitString, Class> = BTreeMap::new();
        for lam in order {
            let class = match lam.first_ascent() {
                Some(i) => {
                    let above = lam.swap_adjacent(i);
                    divided_difference(&classes[&above], i)
                        .expect("divided difference of a Schubert class is polynomial")
                }
                None => {
                    let mut c = Class::zero(n, k);
                    c.set(lam.clone(), inversion_weight(&lam));
                    c
                }
            };
            classes.insert(lam, class);
        }
        SchubertBasis { n, k, classes }
    }

    /// Memoized basis, shared process-wide.
    pub fn shared(n: usize, k: usize) -> Arc<SchubertBasis> {
        type Cache = Mutex<HashMap<(usize, usize), Arc<SchubertBasis>>>;
        static BASES: OnceLock<Cache> = OnceLock::new();
        let cache = BASES.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry((n, k))
            .or_insert_with(|| Arc::new(SchubertBasis::new(n, k)))
            .clone()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn class(&self, lam: &BitString) -> &Class {
        &self.classes[lam]
    }

    pub fn classes(&self) -> impl Iterator<Item = (&BitString, &Class)> {
        self.classes.iter()
    }

    /// Write `alpha` as a combination of Schubert classes. Strips the
    /// Bruhat-minimal support point repeatedly: its coefficient must be the
    /// restriction there divided by the full inversion weight. Errors when
    /// `alpha` is not in the span with polynomial coefficients.
    pub fn expand(&self, alpha: &Class) -> Result<BTreeMap<BitString, Poly>, GkmError> {
        assert_eq!((alpha.n(), alpha.k()), (self.n, self.k));
        let mut rem = alpha.clone();
        let mut out = BTreeMap::new();
        while let Some(mu) = bruhat_minimal_support(&rem) {
            let mut c = rem.restriction(&mu);
            for (i, j) in mu.inversions() {
                c = c
                    .exact_divide(Var::y(j), Var::y(i))
                    .map_err(|source| GkmError::Divide { at: mu.clone(), source })?;
            }
            rem = rem.sub(&self.class(&mu).scale_poly(&c));
            out.insert(mu, c);
        }
        Ok(out)
    }

    /// Structure constants: the expansion of `S_lam . S_mu` in the basis.
    /// Keys with zero coefficient are absent.
    pub fn structure_constants(
        &self,
        lam: &BitString,
        mu: &BitString,
    ) -> Result<BTreeMap<BitString, Poly>, GkmError> {
        self.expand(&self.class(lam).mul(self.class(mu)))
    }
}

/// Lexicographically first Bruhat-minimal support point.
fn bruhat_minimal_support(alpha: &Class) -> Option<BitString> {
    alpha
        .support()
        .find(|mu| alpha.support().all(|rho| rho == *mu || !rho.leq(mu)))
        .cloned()
}

/// Structure constants through the shared basis cache.
pub fn structure_constants(
    n: usize,
    k: usize,
    lam: &BitString,
    mu: &BitString,
) -> Result<BTreeMap<BitString, Poly>, GkmError> {
    SchubertBasis::shared(n, k).structure_constants(lam, mu)
}

/// Closed form for the restriction of the divisor class:
/// `S_dv|_lam = sum_j (id_j - lam_j) y_j`. Validated against the divided
/// difference construction in the tests and verification suites.
pub fn divisor_restriction(n: usize, k: usize, lam: &BitString) -> Poly {
    assert_eq!((lam.n(), lam.k()), (n, k));
    let id = BitString::id(n, k);
    let mut out = Poly::zero();
    for j in 1..=n {
        match (id.bit(j), lam.bit(j)) {
            (true, false) => out = &out + &Poly::y(j),
            (false, true) => out = &out - &Poly::y(j),
            _ => {}
        }
    }
    out
}

/// Drop a table to ordinary cohomology: `y := 0`, keeping nonzero entries.
pub fn ordinary_table(table: &BTreeMap<BitString, Poly>) -> BTreeMap<BitString, BigInt> {
    table
        .iter()
        .filter_map(|(nu, p)| {
            let c = p.y_to_zero();
            (!c.is_zero()).then(|| (nu.clone(), c.constant_term()))
        })
        .collect()
}

//! 0/1 strings with a fixed number of ones, the index set for Schubert
//! classes on a Grassmannian.
//!
//! A string of `n` bits with `k` ones names both a torus fixed point of
//! `Gr_k(C^n)` and a Schubert class. Positions are 1-indexed throughout.
//! An *inversion* is a pair `i < j` with bit `i` set and bit `j` clear;
//! the number of inversions is the (Coxeter) length of the string, i.e.
//! the codimension of the corresponding Schubert variety.
//!
//! The partial order used everywhere is the Bruhat order: `a <= b` iff
//! every prefix of `b` has at least as many ones as the same prefix of
//! `a`. Its minimum is `0^(n-k) 1^k` and its maximum the reversal
//! `1^k 0^(n-k)`. Covers are single adjacent swaps `01 -> 10`.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use thiserror::Error;

/// A string of `n` bits, `k` of them ones. Immutable once built.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

/// Failure to parse a [`BitString`] from text.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseBitStringError {
    #[error("empty bit string")]
    Empty,
    #[error("invalid character {0:?} in bit string, expected '0' or '1'")]
    InvalidChar(char),
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        assert!(!bits.is_empty(), "bit string must be nonempty");
        BitString { bits }
    }

    /// Number of bits.
    pub fn n(&self) -> usize {
        self.bits.len()
    }

    /// Number of set bits.
    pub fn k(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Bit at 1-indexed position `i`.
    pub fn bit(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.n(), "position {i} out of range");
        self.bits[i - 1]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// The minimum of the Bruhat order: `0^(n-k) 1^k`.
    pub fn id(n: usize, k: usize) -> Self {
        assert!(k <= n && n >= 1);
        BitString::new((0..n).map(|i| i >= n - k).collect())
    }

    /// The unique atom above [`BitString::id`]: `0^(n-k-1) 1 0 1^(k-1)`.
    /// Defined for `0 < k < n`; this is the divisor class.
    pub fn divisor(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k < n, "divisor needs 0 < k < n");
        let mut bits = vec![false; n];
        bits[n - k - 1] = true;
        for b in bits.iter_mut().skip(n - k + 1) {
            *b = true;
        }
        BitString::new(bits)
    }

    /// The maximum of the Bruhat order: `1^k 0^(n-k)`.
    pub fn top(n: usize, k: usize) -> Self {
        assert!(k <= n && n >= 1);
        BitString::new((0..n).map(|i| i < k).collect())
    }

    /// All strings of `n` bits with `k` ones, in increasing lexicographic
    /// order (so `id` first, `top` last).
    pub fn all(n: usize, k: usize) -> Vec<Self> {
        assert!(k <= n && (1..=30).contains(&n));
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if (mask.count_ones() as usize) == k {
                let bits = (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect();
                out.push(BitString::new(bits));
            }
        }
        out.sort();
        out
    }

    /// Inversions: 1-indexed pairs `i < j` with bit `i` one and bit `j` zero.
    /// Ordered lexicographically.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let mut inv = Vec::new();
        for i in 1..=self.n() {
            if !self.bit(i) {
                continue;
            }
            for j in (i + 1)..=self.n() {
                if !self.bit(j) {
                    inv.push((i, j));
                }
            }
        }
        inv
    }

    /// Number of inversions (Coxeter length).
    pub fn length(&self) -> usize {
        let mut ones = 0usize;
        let mut inv = 0usize;
        for &b in &self.bits {
            if b {
                ones += 1;
            } else {
                inv += ones;
            }
        }
        inv
    }

    /// Ones in each prefix: entry `p` (0-indexed) counts ones among the
    /// first `p + 1` bits.
    pub fn prefix_ones(&self) -> Vec<usize> {
        let mut acc = 0usize;
        self.bits
            .iter()
            .map(|&b| {
                acc += usize::from(b);
                acc
            })
            .collect()
    }

    /// Bruhat order: `self <= other` iff every prefix of `other` has at
    /// least as many ones. Only defined within one `(n, k)`.
    pub fn leq(&self, other: &Self) -> bool {
        assert_eq!(self.n(), other.n());
        assert_eq!(self.k(), other.k());
        self.prefix_ones()
            .into_iter()
            .zip(other.prefix_ones())
            .all(|(a, b)| a <= b)
    }

    /// Strings covering `self`: one adjacent `01` swapped to `10`.
    pub fn covers_up(&self) -> Vec<Self> {
        let mut out = Vec::new();
        for i in 1..self.n() {
            if !self.bit(i) && self.bit(i + 1) {
                out.push(self.swap_adjacent(i));
            }
        }
        out
    }

    /// Strings covered by `self`: one adjacent `10` swapped to `01`.
    pub fn covers_down(&self) -> Vec<Self> {
        let mut out = Vec::new();
        for i in 1..self.n() {
            if self.bit(i) && !self.bit(i + 1) {
                out.push(self.swap_adjacent(i));
            }
        }
        out
    }

    /// Swap bits at positions `i` and `i + 1` (the simple reflection `s_i`
    /// acting on positions).
    pub fn swap_adjacent(&self, i: usize) -> Self {
        assert!(i >= 1 && i < self.n());
        let mut bits = self.bits.clone();
        bits.swap(i - 1, i);
        BitString::new(bits)
    }

    /// Position of the leftmost ascent `01`, or `None` at the top string.
    /// Every non-maximal string has one.
    pub fn first_ascent(&self) -> Option<usize> {
        (1..self.n()).find(|&i| !self.bit(i) && self.bit(i + 1))
    }

    /// Reverse the string (the long permutation acting on positions).
    pub fn reversed(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.reverse();
        BitString::new(bits)
    }

    /// Dual string: reverse and complement. Lands in the dual Grassmannian
    /// (`k` ones become `n - k`), preserves length, and is an involution.
    pub fn dual(&self) -> Self {
        BitString::new(self.bits.iter().rev().map(|&b| !b).collect())
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = ParseBitStringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseBitStringError::Empty);
        }
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => return Err(ParseBitStringError::InvalidChar(other)),
            }
        }
        Ok(BitString::new(bits))
    }
}

impl serde::Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for BitString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn inversions_examples() {
        assert_eq!(bs("0101").inversions(), vec![(2, 3)]);
        assert_eq!(bs("1010").inversions(), vec![(1, 2), (1, 4), (3, 4)]);
        assert_eq!(bs("0101").length(), 1);
        assert_eq!(bs("1010").length(), 3);
        assert_eq!(bs("0011").length(), 0);
    }

    #[test]
    fn special_strings() {
        assert_eq!(BitString::id(4, 2), bs("0011"));
        assert_eq!(BitString::divisor(4, 2), bs("0101"));
        assert_eq!(BitString::top(4, 2), bs("1100"));
        assert_eq!(BitString::id(6, 3), bs("000111"));
        assert_eq!(BitString::divisor(6, 3), bs("001011"));
        assert_eq!(BitString::divisor(3, 1), bs("010"));
        assert_eq!(BitString::divisor(5, 4), bs("10111"));
    }

    #[test]
    fn covers() {
        let up: Vec<String> = bs("0101").covers_up().iter().map(|b| b.to_string()).collect();
        assert_eq!(up, vec!["1001", "0110"]);
        let down: Vec<String> = bs("110101").covers_down().iter().map(|b| b.to_string()).collect();
        assert_eq!(down, vec!["101101", "110011"]);
        assert!(bs("1100").covers_up().is_empty());
        assert!(bs("0011").covers_down().is_empty());
    }

    #[test]
    fn order_examples() {
        assert!(bs("0101").leq(&bs("1010")));
        assert!(!bs("1010").leq(&bs("0101")));
        // incomparable pair
        assert!(!bs("0110").leq(&bs("1001")));
        assert!(!bs("1001").leq(&bs("0110")));
        for lam in BitString::all(5, 2) {
            assert!(BitString::id(5, 2).leq(&lam));
            assert!(lam.leq(&BitString::top(5, 2)));
        }
    }

    #[test]
    fn dual_and_reverse_examples() {
        assert_eq!(bs("01100").dual(), bs("11001"));
        assert_eq!(bs("01101").reversed(), bs("10110"));
        assert_eq!(bs("0101").dual(), bs("0101"));
        assert_eq!(bs("1010").dual(), bs("1010"));
    }

    #[test]
    fn enumeration() {
        let all = BitString::all(6, 3);
        assert_eq!(all.len(), 20);
        assert_eq!(all.first().unwrap(), &BitString::id(6, 3));
        assert_eq!(all.last().unwrap(), &BitString::top(6, 3));
        let all41 = BitString::all(4, 1);
        assert_eq!(all41.len(), 4);
        assert!(all41.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn first_ascent_examples() {
        assert_eq!(bs("0101").first_ascent(), Some(1));
        assert_eq!(bs("1001").first_ascent(), Some(3));
        assert_eq!(bs("1100").first_ascent(), None);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!("012".parse::<BitString>(), Err(ParseBitStringError::InvalidChar('2')));
        assert_eq!("".parse::<BitString>(), Err(ParseBitStringError::Empty));
    }

    fn arb_bitstring() -> impl Strategy<Value = BitString> {
        (1usize..=8).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n).prop_map(BitString::new)
        })
    }

    proptest! {
        #[test]
        fn length_counts_inversions(lam in arb_bitstring()) {
            prop_assert_eq!(lam.length(), lam.inversions().len());
        }

        #[test]
        fn covers_raise_length_by_one(lam in arb_bitstring()) {
            for mu in lam.covers_up() {
                prop_assert!(lam.leq(&mu));
                prop_assert!(!mu.leq(&lam));
                prop_assert_eq!(mu.length(), lam.length() + 1);
            }
        }

        #[test]
        fn dual_is_length_preserving_involution(lam in arb_bitstring()) {
            prop_assert_eq!(lam.dual().dual(), lam.clone());
            prop_assert_eq!(lam.dual().length(), lam.length());
            prop_assert_eq!(lam.dual().k(), lam.n() - lam.k());
        }

        #[test]
        fn reverse_complements_length(lam in arb_bitstring()) {
            let (n, k) = (lam.n(), lam.k());
            prop_assert_eq!(lam.length() + lam.reversed().length(), k * (n - k));
        }

        #[test]
        fn display_parse_round_trip(lam in arb_bitstring()) {
            let back: BitString = lam.to_string().parse().unwrap();
            prop_assert_eq!(back, lam);
        }
    }
}

//! Partitions with at most `n` parts, stored at fixed length `n`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ring::{pow_rational, LaurentPoly};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn zero(n: usize) -> Self {
        Partition { parts: vec![0; n] }
    }

    /// `1^k` padded to length `n`.
    pub fn one_k(n: usize, k: usize) -> Self {
        assert!(k <= n, "1^{k} does not fit in {n} parts");
        Partition {
            parts: (0..n).map(|i| u32::from(i < k)).collect(),
        }
    }

    /// The staircase `(n-1, ..., 1, 0)`.
    pub fn staircase(n: usize) -> Vec<u32> {
        (0..n as u32).rev().collect()
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> u32 {
        self.parts[i]
    }

    pub fn last(&self) -> u32 {
        self.parts.last().copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    /// `λ - a·1^n`.
    pub fn minus_constant(&self, a: u32) -> Result<Self> {
        if self.last() < a {
            return Err(Error::InvalidPartition(format!("{self} - {a}·1^n has a negative part")));
        }
        Ok(Partition {
            parts: self.parts.iter().map(|p| p - a).collect(),
        })
    }

    /// Drops the last part: `Λ_n → Λ_{n-1}`.
    pub fn drop_last(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.pop();
        Partition { parts }
    }

    /// `λ + δ` as integers.
    pub fn shifted(&self) -> Vec<u32> {
        let n = self.n() as u32;
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| p + n - 1 - i as u32)
            .collect()
    }

    /// Diagram containment `self ⊆ other`.
    pub fn contained_in(&self, other: &Partition) -> bool {
        self.n() == other.n() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Parses a comma-separated part list such as `2,1,0`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Dominance order `mu ≤ lam`: every partial sum of `mu` is at most that of
/// `lam`. Sizes may differ; the last partial sum compares them.
pub fn dominance_leq(mu: &Partition, lam: &Partition) -> bool {
    assert_eq!(mu.n(), lam.n(), "dominance needs equal lengths");
    let (mut a, mut b) = (0u32, 0u32);
    for (m, l) in mu.parts.iter().zip(&lam.parts) {
        a += m;
        b += l;
        if a > b {
            return false;
        }
    }
    true
}

/// Partitions of exactly `w` with at most `n` parts, reverse-lexicographic.
pub fn partitions_of(n: usize, w: u32) -> Vec<Partition> {
    fn rec(n: usize, w: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if prefix.len() == n {
            if w == 0 {
                out.push(Partition { parts: prefix.clone() });
            }
            return;
        }
        let slots = (n - prefix.len()) as u32;
        // remaining weight must fit in the remaining slots with parts <= max
        for p in (0..=max.min(w)).rev() {
            if p * slots < w {
                break;
            }
            prefix.push(p);
            rec(n, w - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if w == 0 {
            out.push(Partition { parts: vec![] });
        }
        return out;
    }
    rec(n, w, w, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All `λ ∈ Λ_n` with `|λ| ≤ max_weight`, graded by size and
/// reverse-lexicographic within a grade.
pub fn enumerate(n: usize, max_weight: u32) -> Vec<Partition> {
    (0..=max_weight).flat_map(|w| partitions_of(n, w)).collect()
}

/// The spectral nodes `q^{2(λ_i + n - i)}` as monomials `s^{4(λ_i + n - i)}`.
pub fn spec_points(lam: &Partition) -> Vec<LaurentPoly> {
    lam.shifted()
        .into_iter()
        .map(|x| LaurentPoly::s_pow(4 * x as i32))
        .collect()
}

/// `λ̄ = (q^{λ_1}, q^{λ_2} t^{-1}, ..., q^{λ_n} t^{-n+1})` at numeric `q, t`.
pub fn knop_bar(lam: &Partition, qv: &BigRational, tv: &BigRational) -> Vec<BigRational> {
    lam.parts
        .iter()
        .enumerate()
        .map(|(i, &p)| pow_rational(qv, p as i32) * pow_rational(tv, -(i as i32)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[1, 1]), &p(&[2, 0])));
        assert!(!dominance_leq(&p(&[2, 0]), &p(&[1, 1])));
        assert!(dominance_leq(&p(&[2, 1]), &p(&[2, 1])));
        assert!(dominance_leq(&p(&[0, 0]), &p(&[1, 0])));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate(1, 2), vec![p(&[0]), p(&[1]), p(&[2])]);
        assert_eq!(enumerate(2, 2), vec![p(&[0, 0]), p(&[1, 0]), p(&[2, 0]), p(&[1, 1])]);
        assert_eq!(enumerate(2, 4).len(), 9);
    }

    /// Standard recurrence: p(w, k) = p(w, k-1) + p(w-k, k), partitions of w
    /// into parts of size at most k (equivalently, at most k parts).
    fn count_oracle(w: i64, k: i64) -> u64 {
        if w == 0 {
            return 1;
        }
        if w < 0 || k == 0 {
            return 0;
        }
        count_oracle(w, k - 1) + count_oracle(w - k, k)
    }

    #[test]
    fn counts_match_recurrence() {
        for n in 1..=5usize {
            for w in 0..=10u32 {
                assert_eq!(partitions_of(n, w).len() as u64, count_oracle(w as i64, n as i64), "n={n} w={w}");
            }
        }
    }

    #[test]
    fn spec_points_examples() {
        assert_eq!(spec_points(&p(&[3])), vec![LaurentPoly::s_pow(12)]);
        assert_eq!(spec_points(&p(&[0, 0])), vec![LaurentPoly::q_pow(2), LaurentPoly::one()]);
        assert_eq!(spec_points(&p(&[1, 0])), vec![LaurentPoly::q_pow(4), LaurentPoly::one()]);
    }

    #[test]
    fn knop_bar_examples() {
        assert_eq!(knop_bar(&p(&[2]), &rat(1, 2), &rat(1, 3)), vec![rat(1, 4)]);
        assert_eq!(knop_bar(&p(&[0, 0]), &rat(1, 2), &rat(1, 3)), vec![int(1), int(3)]);
        assert_eq!(knop_bar(&p(&[1, 0]), &rat(1, 2), &rat(1, 3)), vec![rat(1, 2), int(3)]);
    }

    #[test]
    fn parse_and_render() {
        let lam: Partition = "2, 1,0".parse().unwrap();
        assert_eq!(lam, p(&[2, 1, 0]));
        assert_eq!(lam.to_string(), "2,1,0");
        assert!("1,2".parse::<Partition>().is_err());
        assert!("1,x".parse::<Partition>().is_err());
    }

    #[test]
    fn shifts() {
        assert_eq!(p(&[3, 1, 1]).minus_constant(1).unwrap(), p(&[2, 0, 0]));
        assert!(p(&[3, 1, 0]).minus_constant(1).is_err());
        assert_eq!(p(&[2, 0]).drop_last(), p(&[2]));
        assert_eq!(Partition::one_k(3, 2), p(&[1, 1, 0]));
        assert_eq!(Partition::staircase(3), vec![2, 1, 0]);
    }

    proptest! {
        #[test]
        fn dominance_is_a_partial_order(n in 1usize..4, w in 0u32..6) {
            let all = enumerate(n, w);
            for a in &all {
                prop_assert!(dominance_leq(a, a));
                for b in &all {
                    if dominance_leq(a, b) && dominance_leq(b, a) {
                        prop_assert_eq!(a, b);
                    }
                    for c in &all {
                        if dominance_leq(a, b) && dominance_leq(b, c) {
                            prop_assert!(dominance_leq(a, c));
                        }
                    }
                }
            }
        }

        #[test]
        fn enumeration_is_duplicate_free(n in 1usize..5, w in 0u32..8) {
            let all = enumerate(n, w);
            let set: std::collections::BTreeSet<_> = all.iter().cloned().collect();
            prop_assert_eq!(set.len(), all.len());
        }

        #[test]
        fn spec_points_strictly_decrease(parts in proptest::collection::vec(0u32..6, 1..5)) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lam = Partition::new(parts).unwrap();
            let exps: Vec<i32> = spec_points(&lam).iter().map(|m| m.low_exp().unwrap()).collect();
            prop_assert!(exps.windows(2).all(|w| w[0] > w[1]));
        }
    }
}

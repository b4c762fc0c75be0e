//! Integer partitions, double factorials and symmetric-group module
//! dimensions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive integers.
///
/// Constructors sort the parts, so two lists with the same multiset of parts
/// produce equal partitions. Ordering is lexicographic on the parts, which
/// puts `[8]` after `[6,2]`; use [`IntegerPartition::cmp_desc`] order helpers
/// where the decreasing listing is wanted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self> {
        let mut parts = parts.into();
        if parts.contains(&0) {
            return Err(Error::domain(format!("partition with a zero part: {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(IntegerPartition { parts })
    }

    /// Builds from parts that may contain zeros or negative values, as the
    /// generic shapes `[2k-6, 6]` do for small `k`. Returns `None` if any
    /// part is not positive.
    pub fn from_signed(parts: &[i64]) -> Option<Self> {
        if parts.iter().any(|&p| p <= 0) {
            return None;
        }
        IntegerPartition::new(parts.iter().map(|&p| p as usize).collect::<Vec<_>>()).ok()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn is_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    pub fn count_of(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// True if no part size repeats.
    pub fn has_distinct_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] != w[1])
    }

    /// `[2,2,...,2]` with `k` parts: the identity class of the scheme.
    pub fn identity_shape(k: usize) -> Self {
        IntegerPartition { parts: vec![2; k] }
    }

    /// `2λ`: every part doubled.
    pub fn doubled(&self) -> Self {
        IntegerPartition { parts: self.parts.iter().map(|p| 2 * p).collect() }
    }

    /// `λ/2`, defined for even partitions.
    pub fn halved(&self) -> Option<Self> {
        self.is_even().then(|| IntegerPartition { parts: self.parts.iter().map(|p| p / 2).collect() })
    }

    /// Decreasing lexicographic comparison, the listing order used for
    /// classes and modules (`[8]`, `[6,2]`, `[4,4]`, ...).
    pub fn cmp_desc(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for IntegerPartition {
    type Err = Error;

    /// Accepts `"6,2"`, `"[6,2]"` or `"6 2"`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Format(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            return Err(Error::Format(format!("empty partition {s:?}")));
        }
        IntegerPartition::new(parts)
    }
}

impl Serialize for IntegerPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(serde::de::Error::custom("partition parts must be decreasing"));
        }
        IntegerPartition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// `m!! = m (m-2) (m-4) ...`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(m: i64) -> Result<BigUint> {
    if m < -1 {
        return Err(Error::domain(format!("double factorial of {m}")));
    }
    let mut acc = BigUint::one();
    let mut i = m;
    while i > 1 {
        acc *= i as u64;
        i -= 2;
    }
    Ok(acc)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::from(0u32);
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<IntegerPartition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
        if rest == 0 {
            out.push(IntegerPartition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// All partitions of `n` with every part even, in decreasing lexicographic
/// order. These index both the scheme's classes and its modules.
pub fn even_partitions(n: usize) -> Result<Vec<IntegerPartition>> {
    if !n.is_multiple_of(2) || n < 2 {
        return Err(Error::domain(format!("even partitions of {n}")));
    }
    Ok(partitions(n / 2).iter().map(|p| p.doubled()).collect())
}

/// Dominance order: `mu ⊵ lambda` iff every prefix sum of `mu` is at least
/// the matching prefix sum of `lambda`.
pub fn dominance_ge(mu: &IntegerPartition, lambda: &IntegerPartition) -> Result<bool> {
    if mu.n() != lambda.n() {
        return Err(Error::domain(format!("dominance between partitions of {} and {}", mu.n(), lambda.n())));
    }
    let len = mu.len().max(lambda.len());
    let (mut a, mut b) = (0usize, 0usize);
    for i in 0..len {
        a += mu.parts.get(i).copied().unwrap_or(0);
        b += lambda.parts.get(i).copied().unwrap_or(0);
        if a < b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Conjugate partition (transpose of the Young diagram).
pub fn dual_partition(lambda: &IntegerPartition) -> IntegerPartition {
    let cols = lambda.first();
    let parts = (0..cols).map(|j| lambda.parts.iter().filter(|&&p| p > j).count()).collect();
    IntegerPartition { parts }
}

/// A partition is primary when it dominates its conjugate.
pub fn is_primary(lambda: &IntegerPartition) -> bool {
    dominance_ge(lambda, &dual_partition(lambda)).unwrap_or(false)
}

/// Dimension of the irreducible `Sym(n)`-module of shape `lambda`, by the
/// hook length formula.
pub fn hook_dimension(lambda: &IntegerPartition) -> BigUint {
    let dual = dual_partition(lambda);
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.parts.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = dual.parts[j] - i - 1;
            hooks *= (arm + leg + 1) as u64;
        }
    }
    factorial(lambda.n() as u64) / hooks
}

/// `2·3^k`, the usable lower bound on dimensions of primary modules of
/// `Sym(2k)` whose first part is below `k`. Intended for `k >= 4`.
pub fn f_lower_bound(k: u32) -> BigUint {
    BigUint::from(2u32) * BigUint::from(3u32).pow(k)
}

/// Primary partitions of `2k` with first part below `k` whose dimension is
/// strictly smaller than [`f_lower_bound`], i.e. counterexamples to that
/// bound at this `k`.
pub fn f_lower_bound_violations(k: u32) -> Vec<(IntegerPartition, BigUint)> {
    let bound = f_lower_bound(k);
    partitions(2 * k as usize)
        .into_iter()
        .filter(|p| p.first() < k as usize && is_primary(p))
        .filter_map(|p| {
            let dim = hook_dimension(&p);
            (dim < bound).then_some((p, dim))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn p(parts: &[usize]) -> IntegerPartition {
        IntegerPartition::new(parts.to_vec()).unwrap()
    }

    /// Standard Young tableaux counted by removing corner cells; independent
    /// of the hook length formula.
    fn syt_count(shape: Vec<usize>, memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
        if shape.iter().sum::<usize>() <= 1 {
            return BigUint::one();
        }
        if let Some(v) = memo.get(&shape) {
            return v.clone();
        }
        let mut total = BigUint::from(0u32);
        for i in 0..shape.len() {
            let next = shape.get(i + 1).copied().unwrap_or(0);
            if shape[i] > next {
                let mut s = shape.clone();
                s[i] -= 1;
                while s.last() == Some(&0) {
                    s.pop();
                }
                total += syt_count(s, memo);
            }
        }
        memo.insert(shape, total.clone());
        total
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(5).unwrap(), BigUint::from(15u32));
        assert_eq!(double_factorial(-1).unwrap(), BigUint::one());
        assert_eq!(double_factorial(0).unwrap(), BigUint::one());
        assert_eq!(double_factorial(7).unwrap(), BigUint::from(7u32 * 5 * 3));
        assert_eq!(double_factorial(8).unwrap(), BigUint::from(384u32));
        assert!(matches!(double_factorial(-2), Err(Error::Domain(_))));
    }

    #[test]
    fn even_partition_listing() {
        let eight: Vec<String> = even_partitions(8).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(eight, ["[8]", "[6,2]", "[4,4]", "[4,2,2]", "[2,2,2,2]"]);
        assert_eq!(even_partitions(2).unwrap(), vec![p(&[2])]);
        assert!(even_partitions(7).is_err());

        // brute force: all compositions of 6 into positive parts, sorted and deduplicated
        let mut seen = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << 5) {
            let mut parts = vec![];
            let mut run = 1;
            for bit in 0..5 {
                if mask >> bit & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            parts.sort_unstable_by(|a: &usize, b| b.cmp(a));
            seen.insert(parts);
        }
        assert_eq!(seen.len(), 11);
        assert_eq!(even_partitions(12).unwrap().len(), 11);
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_ge(&p(&[8]), &p(&[6, 2])).unwrap());
        assert!(dominance_ge(&p(&[4, 2, 2]), &p(&[2, 2, 2, 2])).unwrap());
        assert!(!dominance_ge(&p(&[4, 2, 2]), &p(&[2, 6])).unwrap());
        assert!(dominance_ge(&p(&[4, 2]), &p(&[8])).is_err());
        // not comparable either way
        assert!(!dominance_ge(&p(&[3, 1, 1, 1]), &p(&[2, 2, 2])).unwrap());
        assert!(!dominance_ge(&p(&[2, 2, 2]), &p(&[3, 1, 1, 1])).unwrap());
    }

    #[test]
    fn dominance_is_a_partial_order() {
        for n in 1..=12 {
            let ps = partitions(n);
            for a in &ps {
                assert!(dominance_ge(a, a).unwrap());
                for b in &ps {
                    let ab = dominance_ge(a, b).unwrap();
                    if ab && dominance_ge(b, a).unwrap() {
                        assert_eq!(a, b);
                    }
                    if !ab {
                        continue;
                    }
                    for c in &ps {
                        if dominance_ge(b, c).unwrap() {
                            assert!(dominance_ge(a, c).unwrap(), "{a} {b} {c}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_partition(&p(&[4, 4])), p(&[2, 2, 2, 2]));
        assert_eq!(dual_partition(&p(&[6, 2])), p(&[2, 2, 1, 1, 1, 1]));
        for lambda in partitions(12) {
            assert_eq!(dual_partition(&dual_partition(&lambda)), lambda);
        }
    }

    #[test]
    fn hook_dimension_examples() {
        assert_eq!(hook_dimension(&p(&[6, 2])), BigUint::from(20u32));
        assert_eq!(hook_dimension(&p(&[10])), BigUint::one());
        assert_eq!(hook_dimension(&p(&[4, 2, 2])), BigUint::from(56u32));
        assert_eq!(hook_dimension(&p(&[4, 4])), BigUint::from(14u32));
    }

    #[test]
    fn hook_dimension_matches_tableau_count() {
        let mut memo = HashMap::new();
        for n in 1..=12 {
            for lambda in partitions(n) {
                assert_eq!(hook_dimension(&lambda), syt_count(lambda.parts().to_vec(), &mut memo));
            }
        }
    }

    #[test]
    fn two_row_dimension_is_binomial_difference() {
        for n in 2..=20u64 {
            for r in 1..=n / 2 {
                let lambda = p(&[(n - r) as usize, r as usize]);
                assert_eq!(hook_dimension(&lambda), binomial(n, r) - binomial(n, r - 1));
            }
        }
    }

    #[test]
    fn even_module_dimensions_sum_to_matching_count() {
        for k in 1..=7usize {
            let total: BigUint = even_partitions(2 * k).unwrap().iter().map(hook_dimension).sum();
            assert_eq!(total, double_factorial(2 * k as i64 - 1).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn dimension_invariant_under_conjugation() {
        for n in 1..=14 {
            for lambda in partitions(n) {
                assert_eq!(hook_dimension(&lambda), hook_dimension(&dual_partition(&lambda)));
            }
        }
    }

    #[test]
    fn f_bound_values() {
        assert_eq!(f_lower_bound(4), BigUint::from(162u32));
        assert_eq!(f_lower_bound(15), BigUint::from(28_697_814u64));
    }

    #[test]
    fn f_bound_fails_below_k7() {
        let shapes = |k| -> Vec<(String, u64)> {
            f_lower_bound_violations(k).into_iter().map(|(p, d)| (p.to_string(), d.try_into().unwrap())).collect()
        };
        assert_eq!(
            shapes(5),
            [("[4,4,2]".to_string(), 252), ("[4,4,1,1]".to_string(), 300), ("[4,3,3]".to_string(), 210)]
        );
        assert_eq!(shapes(6), [("[5,5,2]".to_string(), 1320), ("[4,4,4]".to_string(), 462)]);
        for k in 7..=11 {
            assert!(shapes(k).is_empty(), "k = {k}");
        }
    }

    #[test]
    fn parsing_and_display() {
        let lam: IntegerPartition = "[2,6]".parse().unwrap();
        assert_eq!(lam.to_string(), "[6,2]");
        assert_eq!("4 2 2".parse::<IntegerPartition>().unwrap(), p(&[4, 2, 2]));
        assert!("".parse::<IntegerPartition>().is_err());
        assert!("3,0".parse::<IntegerPartition>().is_err());
        let json = serde_json::to_string(&p(&[6, 2])).unwrap();
        assert_eq!(json, "[6,2]");
        assert!(serde_json::from_str::<IntegerPartition>("[2,6]").is_err());
    }

    proptest! {
        #[test]
        fn constructor_normalizes(parts in proptest::collection::vec(1usize..9, 1..8)) {
            let lam = IntegerPartition::new(parts.clone()).unwrap();
            prop_assert!(lam.parts().windows(2).all(|w| w[0] >= w[1]));
            prop_assert_eq!(lam.n(), parts.iter().sum::<usize>());
        }
    }
}

//! Perfect matchings of `K_2k`: canonical encoding, enumeration order,
//! union shapes and intersections.
//!
//! Vertices are `0..2k` internally and `1..=2k` in every text form.
//! Enumeration pairs the smallest uncovered vertex with each larger uncovered
//! vertex in increasing order, recursively; [`rank`] and [`unrank`] are the
//! mixed-radix index of that order, so index `i` in a dense table is always
//! `unrank(k, i)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinat::IntegerPartition;
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Largest `k` for which [`enumerate_matchings`] will materialize the whole
/// vertex set (19!! = 654,729,075 matchings).
pub const ENUMERATION_CAP: usize = 10;

/// Largest `k` a single matching may have; vertex sets fit in a `u128`.
pub const MAX_K: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    partner: Box<[u8]>,
}

impl PerfectMatching {
    /// Builds from a partner array over `0..2k`.
    pub fn from_partners(partner: Vec<u8>) -> Result<Self> {
        let n = partner.len();
        if n == 0 || !n.is_multiple_of(2) || n > 2 * MAX_K {
            return Err(Error::domain(format!("partner array of length {n}")));
        }
        for (v, &p) in partner.iter().enumerate() {
            let p = p as usize;
            if p >= n || p == v || partner[p] as usize != v {
                return Err(Error::domain(format!("vertex {} is not properly paired", v + 1)));
            }
        }
        Ok(PerfectMatching { partner: partner.into_boxed_slice() })
    }

    /// Builds from 1-based edges in any order.
    pub fn from_edges(k: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if k == 0 || k > MAX_K || edges.len() != k {
            return Err(Error::domain(format!("{} edges for k = {k}", edges.len())));
        }
        let n = 2 * k;
        let mut partner = vec![u8::MAX; n];
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > n || b > n || a == b {
                return Err(Error::domain(format!("bad edge {a}-{b} for k = {k}")));
            }
            let (a, b) = (a - 1, b - 1);
            if partner[a] != u8::MAX || partner[b] != u8::MAX {
                return Err(Error::domain(format!("edges share a vertex at {}-{}", a + 1, b + 1)));
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        PerfectMatching::from_partners(partner)
    }

    /// `{1-2, 3-4, ..., (2k-1)-2k}`.
    pub fn identity(k: usize) -> Self {
        let partner = (0..2 * k).map(|v| (v ^ 1) as u8).collect::<Vec<_>>();
        PerfectMatching { partner: partner.into_boxed_slice() }
    }

    pub fn k(&self) -> usize {
        self.partner.len() / 2
    }

    /// Partner of a 0-based vertex.
    #[inline]
    pub fn partner(&self, v: usize) -> usize {
        self.partner[v] as usize
    }

    pub fn partners(&self) -> &[u8] {
        &self.partner
    }

    /// 0-based edges `(a, b)` with `a < b`, sorted by `a`.
    pub fn edges0(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner.iter().enumerate().filter(|&(v, &p)| v < p as usize).map(|(v, &p)| (v, p as usize))
    }

    /// 1-based canonical edge list.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edges0().map(|(a, b)| (a + 1, b + 1)).collect()
    }

    /// True if the 0-based edge `{a, b}` belongs to the matching.
    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.partner(a) == b
    }

    /// Image under a vertex permutation `perm` of `0..2k`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut partner = vec![0u8; self.partner.len()];
        for (v, &p) in self.partner.iter().enumerate() {
            partner[perm[v]] = perm[p as usize] as u8;
        }
        PerfectMatching { partner: partner.into_boxed_slice() }
    }

    /// Image under the transposition of two 0-based vertices.
    pub fn swapped(&self, a: usize, b: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.partner.len()).collect();
        perm.swap(a, b);
        self.permuted(&perm)
    }
}

impl fmt::Display for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.edges0().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}-{}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for PerfectMatching {
    type Err = Error;

    /// Parses `"1-2,3-4,5-6"`; edge order and endpoint order are free.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("bad matching {s:?}"));
        let edges = s
            .split(',')
            .map(|e| {
                let (a, b) = e.trim().split_once('-').ok_or_else(bad)?;
                Ok((a.trim().parse::<usize>().map_err(|_| bad())?, b.trim().parse::<usize>().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<_>>>()?;
        PerfectMatching::from_edges(edges.len(), &edges)
    }
}

impl Serialize for PerfectMatching {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PerfectMatching {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `(2k-1)!!` as a `usize`, for `k` up to [`ENUMERATION_CAP`].
pub fn matching_count(k: usize) -> Result<usize> {
    if k > ENUMERATION_CAP {
        return Err(Error::Capacity {
            what: format!("enumerating matchings of K_{}", 2 * k),
            limit: ENUMERATION_CAP as u64,
        });
    }
    Ok((1..=k).map(|i| 2 * i - 1).product())
}

/// Position of `m` in the enumeration order.
pub fn rank(m: &PerfectMatching) -> usize {
    let n = m.partner.len();
    let mut used: u128 = 0;
    let mut idx = 0usize;
    for v in 0..n {
        if used >> v & 1 == 1 {
            continue;
        }
        let p = m.partner(v);
        let free_above = !used & !mask(v + 1) & mask(n);
        let radix = free_above.count_ones() as usize;
        let digit = (free_above & ((1u128 << p) - 1)).count_ones() as usize;
        idx = idx * radix + digit;
        used |= 1 << v | 1 << p;
    }
    idx
}

/// Inverse of [`rank`] for matchings of `K_2k`.
pub fn unrank(k: usize, mut idx: usize) -> PerfectMatching {
    let n = 2 * k;
    let mut digits = vec![0usize; k];
    for (i, d) in digits.iter_mut().enumerate().rev() {
        let radix = 2 * (k - i) - 1;
        *d = idx % radix;
        idx /= radix;
    }
    let mut partner = vec![0u8; n];
    let mut used: u128 = 0;
    for d in digits {
        let v = (!used & mask(n)).trailing_zeros() as usize;
        used |= 1 << v;
        let mut free = !used & mask(n);
        for _ in 0..d {
            free &= free - 1;
        }
        let p = free.trailing_zeros() as usize;
        used |= 1 << p;
        partner[v] = p as u8;
        partner[p] = v as u8;
    }
    PerfectMatching { partner: partner.into_boxed_slice() }
}

fn mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Iterator over all matchings of `K_2k` in enumeration order.
pub struct Matchings {
    k: usize,
    next: usize,
    end: usize,
}

impl Iterator for Matchings {
    type Item = PerfectMatching;

    fn next(&mut self) -> Option<PerfectMatching> {
        (self.next < self.end).then(|| {
            self.next += 1;
            unrank(self.k, self.next - 1)
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.end - self.next;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Matchings {}

pub fn enumerate_matchings(k: usize) -> Result<Matchings> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    Ok(Matchings { k, next: 0, end: matching_count(k)? })
}

/// All matchings of `K_2k` collected in enumeration order.
pub fn all_matchings(k: usize, exec: Execution) -> Result<Vec<PerfectMatching>> {
    enumerate_matchings(k)?;
    Ok(exec.map_range(0..matching_count(k)?, |i| unrank(k, i)))
}

fn check_same_k(p: &PerfectMatching, q: &PerfectMatching) -> Result<()> {
    if p.k() != q.k() {
        return Err(Error::domain(format!("matchings of K_{} and K_{}", 2 * p.k(), 2 * q.k())));
    }
    Ok(())
}

/// Cycle lengths of the multigraph `P ∪ Q`, in discovery order. A shared
/// edge is a cycle of length 2.
pub fn union_cycle_lengths(p: &PerfectMatching, q: &PerfectMatching) -> Vec<usize> {
    let n = p.partner.len();
    let mut seen: u128 = 0;
    let mut out = Vec::new();
    for start in 0..n {
        if seen >> start & 1 == 1 {
            continue;
        }
        let mut v = start;
        let mut len = 0;
        loop {
            let a = p.partner(v);
            seen |= 1 << v | 1 << a;
            len += 2;
            v = q.partner(a);
            if v == start {
                break;
            }
        }
        out.push(len);
    }
    out
}

/// The even partition of `2k` formed by the cycle lengths of `P ∪ Q`.
pub fn union_shape(p: &PerfectMatching, q: &PerfectMatching) -> Result<IntegerPartition> {
    check_same_k(p, q)?;
    IntegerPartition::new(union_cycle_lengths(p, q))
}

/// Number of common edges.
pub fn intersection_size(p: &PerfectMatching, q: &PerfectMatching) -> Result<usize> {
    check_same_k(p, q)?;
    Ok((0..p.partner.len()).filter(|&v| v < p.partner(v) && q.partner(v) == p.partner(v)).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{double_factorial, even_partitions};
    use proptest::prelude::*;
    use std::collections::{BTreeMap, HashSet};

    fn pm(s: &str) -> PerfectMatching {
        s.parse().unwrap()
    }

    #[test]
    fn counts_match_double_factorial() {
        for k in 1..=6 {
            let all: Vec<_> = enumerate_matchings(k).unwrap().collect();
            let expected = double_factorial(2 * k as i64 - 1).unwrap();
            assert_eq!(all.len().to_string(), expected.to_string());
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
        assert_eq!(enumerate_matchings(3).unwrap().count(), 15);
        assert!(matches!(enumerate_matchings(11), Err(Error::Capacity { .. })));
    }

    #[test]
    fn k1_and_order() {
        let all: Vec<_> = enumerate_matchings(1).unwrap().map(|m| m.to_string()).collect();
        assert_eq!(all, ["1-2"]);
        let three: Vec<_> = enumerate_matchings(2).unwrap().map(|m| m.to_string()).collect();
        assert_eq!(three, ["1-2,3-4", "1-3,2-4", "1-4,2-3"]);
    }

    /// Independent recursive enumeration in the documented order.
    fn recursive(n: usize) -> Vec<Vec<(usize, usize)>> {
        fn go(free: Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
            if free.is_empty() {
                let mut e = cur.clone();
                e.sort();
                out.push(e);
                return;
            }
            let v = free[0];
            for i in 1..free.len() {
                let rest: Vec<usize> =
                    free.iter().enumerate().filter(|&(j, _)| j != 0 && j != i).map(|(_, &x)| x).collect();
                cur.push((v, free[i]));
                go(rest, cur, out);
                cur.pop();
            }
        }
        let mut out = vec![];
        go((1..=n).collect(), &mut vec![], &mut out);
        out
    }

    #[test]
    fn enumeration_order_matches_recursion() {
        for k in 1..=5 {
            let ours: Vec<_> = enumerate_matchings(k).unwrap().map(|m| m.edges()).collect();
            assert_eq!(ours, recursive(2 * k));
        }
    }

    #[test]
    fn rank_inverts_unrank() {
        for k in 1..=6 {
            for i in 0..matching_count(k).unwrap() {
                assert_eq!(rank(&unrank(k, i)), i);
            }
        }
    }

    #[test]
    fn union_shape_examples() {
        let p = pm("1-2,3-4,5-6");
        let q = pm("1-3,2-4,5-6");
        assert_eq!(union_shape(&p, &q).unwrap().to_string(), "[4,2]");
        assert_eq!(intersection_size(&p, &q).unwrap(), 1);
        assert_eq!(union_shape(&p, &p).unwrap().to_string(), "[2,2,2]");
        assert_eq!(intersection_size(&p, &p).unwrap(), 3);
        assert!(union_shape(&p, &PerfectMatching::identity(4)).is_err());
    }

    #[test]
    fn shape_counts_at_k3() {
        let all: Vec<_> = enumerate_matchings(3).unwrap().collect();
        let mut counts = BTreeMap::new();
        for p in &all {
            for q in &all {
                *counts.entry(union_shape(p, q).unwrap().to_string()).or_insert(0) += 1;
            }
        }
        assert_eq!(counts["[2,2,2]"], 15);
        assert_eq!(counts["[4,2]"], 15 * 6);
        assert_eq!(counts["[6]"], 15 * 8);
        assert_eq!(counts.len(), 3);
    }

    #[test]
    fn shape_symmetric_and_sums_to_2k() {
        for k in 1..=4 {
            let all: Vec<_> = enumerate_matchings(k).unwrap().collect();
            for p in &all {
                for q in &all {
                    let s = union_shape(p, q).unwrap();
                    assert_eq!(s, union_shape(q, p).unwrap());
                    assert_eq!(s.n(), 2 * k);
                    assert!(s.is_even());
                }
            }
        }
    }

    #[test]
    fn class_degrees_at_k4_from_one_row() {
        let all: Vec<_> = enumerate_matchings(4).unwrap().collect();
        let p = &all[17];
        let mut counts = BTreeMap::new();
        for q in &all {
            *counts.entry(union_shape(p, q).unwrap()).or_insert(0usize) += 1;
        }
        let degrees: Vec<usize> = even_partitions(8).unwrap().iter().map(|s| counts[s]).collect();
        assert_eq!(degrees, [48, 32, 12, 12, 1]);
    }

    #[test]
    fn parse_errors() {
        assert!("1-2,2-3".parse::<PerfectMatching>().is_err());
        assert!("1-2,3-5".parse::<PerfectMatching>().is_err());
        assert!("1-1".parse::<PerfectMatching>().is_err());
        assert!("x".parse::<PerfectMatching>().is_err());
        assert_eq!(pm("4-3, 2-1").to_string(), "1-2,3-4");
    }

    #[test]
    fn serde_round_trip() {
        let m = pm("1-4,2-3,5-6");
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "\"1-4,2-3,5-6\"");
        assert_eq!(serde_json::from_str::<PerfectMatching>(&json).unwrap(), m);
    }

    fn random_matching(k: usize) -> impl Strategy<Value = PerfectMatching> {
        Just((0..2 * k).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(move |perm| PerfectMatching::identity(k).permuted(&perm))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn intersection_counts_two_cycles((p, q) in (random_matching(6), random_matching(6))) {
            let s = union_shape(&p, &q).unwrap();
            prop_assert_eq!(intersection_size(&p, &q).unwrap(), s.count_of(2));
            prop_assert_eq!(rank(&unrank(6, rank(&p))), rank(&p));
        }
    }
}

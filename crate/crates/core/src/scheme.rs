//! The perfect-matching association scheme: classes `A_2λ`, their degrees,
//! neighbor generation, the derangement graphs `M_t(2k)` and dense class
//! tables for small `k`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::combinat::{even_partitions, factorial, IntegerPartition};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matchings::{all_matchings, intersection_size, union_shape, PerfectMatching, MAX_K};

/// Largest `k` with a dense class table (945 matchings).
pub const DENSE_CAP: usize = 5;

/// Enumerated degrees are refused above this many neighbors.
pub const DEGREE_ENUMERATION_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeClass {
    pub shape: IntegerPartition,
    #[serde(with = "crate::rational::serde_biguint")]
    pub degree: BigUint,
}

fn check_shape(k: usize, shape: &IntegerPartition) -> Result<()> {
    if shape.n() != 2 * k || !shape.is_even() {
        return Err(Error::domain(format!("{shape} is not an even partition of {}", 2 * k)));
    }
    if k == 0 || k > MAX_K {
        return Err(Error::domain(format!("k = {k} out of range")));
    }
    Ok(())
}

/// Number of matchings whose union with a fixed matching has shape `2λ`:
/// `k! ∏ 2^(λ_i - 1)/λ_i / ∏ (multiplicity of each part)!`.
///
/// Each part `λ_i` takes `λ_i` edges of the fixed matching and closes them
/// into one alternating cycle in `(λ_i - 1)! 2^(λ_i - 1)` ways.
pub fn class_degree_formula(k: usize, shape: &IntegerPartition) -> Result<BigUint> {
    check_shape(k, shape)?;
    let half = shape.halved().expect("checked even");
    let mut num = factorial(k as u64);
    let mut den = BigUint::one();
    for &m in half.parts() {
        num <<= m - 1;
        den *= m as u64;
    }
    let mut i = 0;
    let parts = half.parts();
    while i < parts.len() {
        let j = parts[i..].iter().take_while(|&&p| p == parts[i]).count();
        den *= factorial(j as u64);
        i += j;
    }
    Ok(num / den)
}

/// Degree of class `shape`, counted by walking the neighbor generator from
/// the identity matching. Refuses (capacity error) when the walk would
/// exceed [`DEGREE_ENUMERATION_CAP`] neighbors.
pub fn class_degree(k: usize, shape: &IntegerPartition) -> Result<BigUint> {
    let expected = class_degree_formula(k, shape)?;
    if expected > BigUint::from(DEGREE_ENUMERATION_CAP) {
        return Err(Error::Capacity {
            what: format!("enumerating the {shape} neighbors at k = {k}"),
            limit: DEGREE_ENUMERATION_CAP,
        });
    }
    let p = PerfectMatching::identity(k);
    let mut count = 0u64;
    for_each_neighbor(&p, shape, |_| count += 1)?;
    Ok(BigUint::from(count))
}

/// All classes of the scheme at `k` with their degrees, in decreasing
/// lexicographic order of shape.
pub fn classes(k: usize) -> Result<Vec<SchemeClass>> {
    even_partitions(2 * k)?
        .into_iter()
        .map(|shape| {
            let degree = class_degree_formula(k, &shape)?;
            Ok(SchemeClass { shape, degree })
        })
        .collect()
}

struct Walk<'a> {
    edges: Vec<(usize, usize)>,
    q: Vec<u8>,
    remaining: Vec<usize>,
    sink: &'a mut dyn FnMut(&[u8]),
}

const NONE: usize = usize::MAX;

impl Walk<'_> {
    /// Either extends the currently open cycle (`start != NONE`) with one of
    /// the edges in `group`, or opens a new cycle at the lowest unassigned
    /// edge.
    fn step(&mut self, unassigned: u64, group: u64, cur: usize, start: usize) {
        if start != NONE {
            if group == 0 {
                self.q[cur] = start as u8;
                self.q[start] = cur as u8;
                self.step(unassigned, 0, NONE, NONE);
                return;
            }
            let mut g = group;
            while g != 0 {
                let j = g.trailing_zeros() as usize;
                g &= g - 1;
                let (a, b) = self.edges[j];
                for (near, far) in [(a, b), (b, a)] {
                    self.q[cur] = near as u8;
                    self.q[near] = cur as u8;
                    self.step(unassigned, group & !(1 << j), far, start);
                }
            }
            return;
        }
        if unassigned == 0 {
            (self.sink)(&self.q);
            return;
        }
        let i = unassigned.trailing_zeros() as usize;
        let rest = unassigned & !(1u64 << i);
        for m in 1..self.remaining.len() {
            if self.remaining[m] == 0 {
                continue;
            }
            self.remaining[m] -= 1;
            let mut subsets = Vec::new();
            subsets_of_size(rest, m - 1, 0, &mut subsets);
            for s in subsets {
                let (a, b) = self.edges[i];
                self.step(rest & !s, s, b, a);
            }
            self.remaining[m] += 1;
        }
    }
}

fn subsets_of_size(mask: u64, r: usize, acc: u64, out: &mut Vec<u64>) {
    if r == 0 {
        out.push(acc);
        return;
    }
    if (mask.count_ones() as usize) < r {
        return;
    }
    let low = mask.trailing_zeros();
    let rest = mask & !(1u64 << low);
    subsets_of_size(rest, r - 1, acc | 1 << low, out);
    subsets_of_size(rest, r, acc, out);
}

/// Calls `sink` with the partner array of every `Q` whose union with `p` has
/// shape `shape`. The slice is only valid during the call.
///
/// Works directly on `p`: its edges are split into groups of the part sizes
/// and each group is closed into an alternating cycle in every possible way,
/// so no other matchings are visited.
pub fn for_each_neighbor(p: &PerfectMatching, shape: &IntegerPartition, mut sink: impl FnMut(&[u8])) -> Result<()> {
    let k = p.k();
    check_shape(k, shape)?;
    let mut remaining = vec![0usize; k + 1];
    for &m in shape.halved().expect("checked even").parts() {
        remaining[m] += 1;
    }
    let mut walk = Walk { edges: p.edges0().collect(), q: vec![0; 2 * k], remaining, sink: &mut sink };
    let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    walk.step(all, 0, NONE, NONE);
    Ok(())
}

/// Every `Q` with `union_shape(p, Q) = shape`.
pub fn neighbors(p: &PerfectMatching, shape: &IntegerPartition) -> Result<Vec<PerfectMatching>> {
    let mut out = Vec::new();
    for_each_neighbor(p, shape, |q| {
        out.push(PerfectMatching::from_partners(q.to_vec()).expect("generator emits matchings"))
    })?;
    Ok(out)
}

/// The same set as [`neighbors`], found by testing every matching. Kept as an
/// independent cross-check for small `k`.
pub fn neighbors_by_filter(p: &PerfectMatching, shape: &IntegerPartition) -> Result<Vec<PerfectMatching>> {
    check_shape(p.k(), shape)?;
    let mut out = Vec::new();
    for q in crate::matchings::enumerate_matchings(p.k())? {
        if &union_shape(p, &q)? == shape {
            out.push(q);
        }
    }
    Ok(out)
}

/// The derangement graph `M_t(2k)`: matchings adjacent when they share at
/// most `t - 1` edges. It is the union of the classes with at most `t - 1`
/// parts equal to 2.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DerangementGraph {
    pub k: usize,
    pub t: usize,
    pub classes: Vec<SchemeClass>,
    #[serde(with = "crate::rational::serde_biguint")]
    pub degree: BigUint,
}

impl DerangementGraph {
    pub fn is_adjacent(&self, p: &PerfectMatching, q: &PerfectMatching) -> bool {
        intersection_size(p, q).map(|s| s < self.t).unwrap_or(false)
    }

    pub fn for_each_neighbor(&self, p: &PerfectMatching, mut sink: impl FnMut(&[u8])) -> Result<()> {
        for c in &self.classes {
            for_each_neighbor(p, &c.shape, &mut sink)?;
        }
        Ok(())
    }
}

pub fn mt_adjacency(k: usize, t: usize) -> Result<DerangementGraph> {
    if t == 0 || t > k {
        return Err(Error::domain(format!("t = {t} outside 1..={k}")));
    }
    let classes: Vec<SchemeClass> = classes(k)?.into_iter().filter(|c| c.shape.count_of(2) < t).collect();
    let degree = classes.iter().map(|c| &c.degree).sum();
    Ok(DerangementGraph { k, t, classes, degree })
}

/// Every pair of matchings labelled by its class, for `k <= DENSE_CAP`.
pub struct ClassTable {
    pub k: usize,
    pub classes: Vec<IntegerPartition>,
    pub matchings: Vec<PerfectMatching>,
    ids: Vec<u8>,
}

impl ClassTable {
    pub fn build(k: usize, exec: Execution) -> Result<Self> {
        if k > DENSE_CAP {
            return Err(Error::Capacity { what: format!("dense class table at k = {k}"), limit: DENSE_CAP as u64 });
        }
        let classes = even_partitions(2 * k)?;
        let index: HashMap<Vec<usize>, u8> =
            classes.iter().enumerate().map(|(i, c)| (c.parts().to_vec(), i as u8)).collect();
        let matchings = all_matchings(k, exec)?;
        let n = matchings.len();
        let rows = exec.map(&matchings, |p| {
            matchings.iter().map(|q| index[union_shape(p, q).expect("same k").parts()]).collect::<Vec<u8>>()
        });
        Ok(ClassTable { k, classes, matchings, ids: rows.concat() }).inspect(|t| {
            debug_assert_eq!(t.ids.len(), n * n);
        })
    }

    pub fn n(&self) -> usize {
        self.matchings.len()
    }

    #[inline]
    pub fn class_of(&self, i: usize, j: usize) -> usize {
        self.ids[i * self.n() + j] as usize
    }

    pub fn class_index(&self, shape: &IntegerPartition) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c == shape)
            .ok_or_else(|| Error::domain(format!("{shape} is not a class at k = {}", self.k)))
    }

    pub fn identity_class(&self) -> usize {
        self.classes.len() - 1
    }

    /// Row `i` of `A_c` as neighbor indices.
    pub fn neighbors_of(&self, i: usize, c: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&j| self.class_of(i, j) == c)
    }

    /// Dense 0/1 matrix of class `c`, row-major.
    pub fn matrix(&self, c: usize) -> Vec<i64> {
        self.ids.iter().map(|&x| (x as usize == c) as i64).collect()
    }

    /// Row sums of every class, checking that they are constant.
    pub fn degrees(&self) -> Result<Vec<u64>> {
        let n = self.n();
        let mut out = vec![0u64; self.classes.len()];
        for i in 0..n {
            let mut row = vec![0u64; self.classes.len()];
            for j in 0..n {
                row[self.class_of(i, j)] += 1;
            }
            if i == 0 {
                out = row;
            } else if row != out {
                return Err(Error::Verification(format!("row {i} has class counts {row:?}, row 0 has {out:?}")));
            }
        }
        Ok(out)
    }
}

/// Outcome of the Bose–Mesner identities on a dense class table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoseMesnerReport {
    pub k: usize,
    pub classes: Vec<IntegerPartition>,
    pub checks: Vec<String>,
}

/// Verifies Schur orthogonality, `Σ A = J`, symmetry and commutativity of
/// every pair of class matrices. Fails on the first broken identity.
pub fn bose_mesner_checks(table: &ClassTable, exec: Execution) -> Result<BoseMesnerReport> {
    let n = table.n();
    let c = table.classes.len();
    let mats: Vec<Vec<i64>> = (0..c).map(|i| table.matrix(i)).collect();
    let name = |i: usize| table.classes[i].to_string();
    let mut checks = Vec::new();

    for i in 0..c {
        for j in i..c {
            let schur_ok = (0..n * n).all(|x| {
                let v = mats[i][x] * mats[j][x];
                v == if i == j { mats[i][x] } else { 0 }
            });
            if !schur_ok {
                return Err(Error::Verification(format!("A_{} ∘ A_{} is wrong", name(i), name(j))));
            }
        }
    }
    checks.push("Schur orthogonality".to_string());

    if (0..n * n).any(|x| mats.iter().map(|m| m[x]).sum::<i64>() != 1) {
        return Err(Error::Verification("class matrices do not sum to J".into()));
    }
    checks.push("sum of classes is J".to_string());

    for (i, m) in mats.iter().enumerate() {
        if (0..n).any(|r| (0..n).any(|s| m[r * n + s] != m[s * n + r])) {
            return Err(Error::Verification(format!("A_{} is not symmetric", name(i))));
        }
    }
    checks.push("symmetric".to_string());

    let pairs: Vec<(usize, usize)> = (0..c).flat_map(|i| (i + 1..c).map(move |j| (i, j))).collect();
    let bad = exec.find_first(&pairs, |&(i, j)| {
        crate::linalg::int_matmul(&mats[i], &mats[j], n) != crate::linalg::int_matmul(&mats[j], &mats[i], n)
    });
    if let Some(b) = bad {
        let (i, j) = pairs[b];
        return Err(Error::Verification(format!("A_{} and A_{} do not commute", name(i), name(j))));
    }
    checks.push("pairwise commuting".to_string());

    Ok(BoseMesnerReport { k: table.k, classes: table.classes.clone(), checks })
}

/// Degree as `u64`, for callers that know it is small.
pub fn degree_u64(d: &BigUint) -> u64 {
    d.to_u64().expect("degree fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::double_factorial;
    use crate::matchings::enumerate_matchings;
    use std::collections::BTreeSet;

    fn p(s: &str) -> IntegerPartition {
        s.parse().unwrap()
    }

    #[test]
    fn degrees_at_k4() {
        let d: Vec<u64> = classes(4).unwrap().iter().map(|c| degree_u64(&c.degree)).collect();
        assert_eq!(d, [48, 32, 12, 12, 1]);
        assert_eq!(class_degree(4, &p("6,2")).unwrap(), BigUint::from(32u32));
        assert_eq!(class_degree(3, &p("6")).unwrap(), BigUint::from(8u32));
        assert!(class_degree(4, &p("6,1,1")).is_err());
        assert!(class_degree(4, &p("6")).is_err());
    }

    #[test]
    fn identity_class_has_degree_one() {
        for k in 1..=9 {
            let id = IntegerPartition::identity_shape(k);
            assert_eq!(class_degree(k, &id).unwrap(), BigUint::one());
            let q = neighbors(&PerfectMatching::identity(k), &id).unwrap();
            assert_eq!(q, vec![PerfectMatching::identity(k)]);
        }
    }

    #[test]
    fn degrees_sum_to_vertex_count() {
        for k in 1..=7 {
            let sum: BigUint = even_partitions(2 * k).unwrap().iter().map(|s| class_degree(k, s).unwrap()).sum();
            assert_eq!(sum, double_factorial(2 * k as i64 - 1).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn generator_matches_formula_up_to_k7() {
        for k in 1..=7 {
            for s in even_partitions(2 * k).unwrap() {
                assert_eq!(class_degree(k, &s).unwrap(), class_degree_formula(k, &s).unwrap(), "{s}");
            }
        }
    }

    #[test]
    fn generator_matches_filter_from_every_vertex() {
        for k in 1..=4 {
            for src in enumerate_matchings(k).unwrap() {
                for s in even_partitions(2 * k).unwrap() {
                    let a: BTreeSet<_> = neighbors(&src, &s).unwrap().into_iter().collect();
                    let b: BTreeSet<_> = neighbors_by_filter(&src, &s).unwrap().into_iter().collect();
                    assert_eq!(a, b);
                }
            }
        }
        let src: PerfectMatching = "1-7,2-9,3-4,5-10,6-8".parse().unwrap();
        for s in even_partitions(10).unwrap() {
            let a = neighbors(&src, &s).unwrap();
            let set: BTreeSet<_> = a.iter().cloned().collect();
            assert_eq!(set.len(), a.len(), "generator repeats a neighbor");
            let b: BTreeSet<_> = neighbors_by_filter(&src, &s).unwrap().into_iter().collect();
            assert_eq!(set, b);
        }
    }

    #[test]
    fn closed_form_degrees_for_distinct_parts() {
        // (2k)!!/(2k), (2k)!!/(2(2k-2)), (2k)!!/(4(2k-4)), (2k)!!/(6(2k-6))
        for k in 6..=12usize {
            let df = |m: i64| double_factorial(m).unwrap();
            let tk = 2 * k as u64;
            let cases = [
                (vec![2 * k], df(tk as i64) / tk),
                (vec![2 * k - 2, 2], df(tk as i64) / (2 * (tk - 2))),
                (vec![2 * k - 4, 4], df(tk as i64) / (4 * (tk - 4))),
            ];
            for (parts, expected) in cases {
                let s = IntegerPartition::new(parts).unwrap();
                assert_eq!(class_degree_formula(k, &s).unwrap(), expected, "{s}");
            }
            if k != 6 {
                let s = IntegerPartition::new(vec![2 * k - 6, 6]).unwrap();
                assert_eq!(class_degree_formula(k, &s).unwrap(), df(tk as i64) / (6 * (tk - 6)));
            }
        }
    }

    #[test]
    fn derangement_graphs() {
        assert_eq!(mt_adjacency(3, 1).unwrap().degree, BigUint::from(8u32));
        assert_eq!(mt_adjacency(3, 2).unwrap().degree, BigUint::from(14u32));
        let g = mt_adjacency(4, 2).unwrap();
        assert_eq!(g.degree, BigUint::from(92u32));
        let shapes: Vec<String> = g.classes.iter().map(|c| c.shape.to_string()).collect();
        assert_eq!(shapes, ["[8]", "[6,2]", "[4,4]"]);
        assert!(mt_adjacency(4, 0).is_err());
        assert!(mt_adjacency(4, 5).is_err());
    }

    #[test]
    fn derangement_neighbors_are_the_non_2_intersecting_matchings() {
        let g = mt_adjacency(4, 2).unwrap();
        let src = crate::matchings::unrank(4, 40);
        let mut via_classes = BTreeSet::new();
        g.for_each_neighbor(&src, |q| {
            via_classes.insert(PerfectMatching::from_partners(q.to_vec()).unwrap());
        })
        .unwrap();
        let direct: BTreeSet<_> =
            enumerate_matchings(4).unwrap().filter(|q| intersection_size(&src, q).unwrap() <= 1).collect();
        assert_eq!(via_classes, direct);
        assert!(via_classes.iter().all(|q| g.is_adjacent(&src, q)));
    }

    #[test]
    fn dense_tables_are_regular() {
        for k in 1..=5 {
            let t = ClassTable::build(k, Execution::default()).unwrap();
            let d = t.degrees().unwrap();
            let expected: Vec<u64> = classes(k).unwrap().iter().map(|c| degree_u64(&c.degree)).collect();
            assert_eq!(d, expected);
        }
        assert!(ClassTable::build(6, Execution::Sequential).is_err());
    }

    #[test]
    fn bose_mesner_identities() {
        for k in 2..=4 {
            let t = ClassTable::build(k, Execution::default()).unwrap();
            let r = bose_mesner_checks(&t, Execution::default()).unwrap();
            assert_eq!(r.checks.len(), 4);
        }
    }
}

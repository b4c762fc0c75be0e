//! Young-subgroup orbit partitions, quotient matrices and eigenvalue
//! extraction.
//!
//! `Sym(λ)` acts on the vertices `0..2k` block by block, the blocks being
//! consecutive ranges of sizes `λ_1, λ_2, ...`. Two matchings lie in the same
//! orbit exactly when they have the same block-count matrix `c`, where
//! `c[i][j]` counts edges between blocks `i` and `j`. Orbits are listed in
//! decreasing lexicographic order of `(c[1][1], c[2][2], ..., c[1][2],
//! c[1][3], ..., c[2][3], ...)`; block 0 is left out because its counts are
//! forced by the others.

mod closed_forms;
mod spanning;
mod table;

pub use closed_forms::{
    char_table_closed_form, quotient_fixtures, ClosedFormCell, QuotientFixture, PARTIAL_CLASSES, PARTIAL_MODULES,
};
pub use spanning::{spanning_set_rank_4sets, FourSetReport};
pub use table::{
    conjecture_check, full_char_table_small, partial_char_table, CharacterTable, ConjectureReport, ConjectureRow,
};

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{dominance_ge, double_factorial, even_partitions, factorial, IntegerPartition};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{self, RatMatrix};
use crate::matchings::{enumerate_matchings, PerfectMatching};
use crate::rational::{self, Rational};
use crate::scheme::{class_degree_formula, for_each_neighbor};

/// Block-count matrix stored as its upper triangle, row by row.
pub type OrbitKey = Vec<u16>;

#[derive(Debug, Clone)]
pub struct OrbitPartition {
    pub k: usize,
    pub subgroup: IntegerPartition,
    block_of: Vec<usize>,
    pub keys: Vec<OrbitKey>,
    pub sizes: Vec<BigUint>,
    pub representatives: Vec<PerfectMatching>,
    index: HashMap<OrbitKey, usize>,
}

fn tri(b: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * b - i * (i + 1) / 2 + j
}

impl OrbitPartition {
    pub fn new(k: usize, subgroup: &IntegerPartition) -> Result<Self> {
        if subgroup.n() != 2 * k {
            return Err(Error::domain(format!("{subgroup} does not partition {}", 2 * k)));
        }
        let lam = subgroup.parts();
        let b = lam.len();
        let block_of: Vec<usize> = lam.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect();

        let mut keys = Vec::new();
        let mut c = vec![0u16; b * (b + 1) / 2];
        let mut left: Vec<usize> = lam.to_vec();
        enumerate_keys(b, 0, 0, &mut left, &mut c, &mut keys);
        keys.sort_by(|x, y| sort_tuple(b, y).cmp(&sort_tuple(b, x)));

        let sizes = keys.iter().map(|key| orbit_size(lam, key)).collect();
        let representatives = keys.iter().map(|key| representative(lam, key)).collect();
        let index = keys.iter().enumerate().map(|(i, key)| (key.clone(), i)).collect();
        Ok(OrbitPartition { k, subgroup: subgroup.clone(), block_of, keys, sizes, representatives, index })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn blocks(&self) -> usize {
        self.subgroup.len()
    }

    pub fn key_of_partners(&self, partner: &[u8]) -> OrbitKey {
        let b = self.blocks();
        let mut c = vec![0u16; b * (b + 1) / 2];
        for (v, &p) in partner.iter().enumerate() {
            let p = p as usize;
            if v < p {
                c[tri(b, self.block_of[v], self.block_of[p])] += 1;
            }
        }
        c
    }

    pub fn orbit_of_partners(&self, partner: &[u8]) -> usize {
        self.index[&self.key_of_partners(partner)]
    }

    pub fn orbit_of(&self, m: &PerfectMatching) -> usize {
        self.orbit_of_partners(m.partners())
    }

    /// The key as a full symmetric matrix.
    pub fn key_matrix(&self, orbit: usize) -> Vec<Vec<u16>> {
        let b = self.blocks();
        (0..b).map(|i| (0..b).map(|j| self.keys[orbit][tri(b, i, j)]).collect()).collect()
    }

    /// A second member of the orbit of `orbit`'s representative, obtained by
    /// the first transposition of adjacent vertices in one block that moves
    /// it. `None` for singleton orbits.
    pub fn second_representative(&self, orbit: usize) -> Option<PerfectMatching> {
        let rep = &self.representatives[orbit];
        (0..2 * self.k - 1)
            .filter(|&v| self.block_of[v] == self.block_of[v + 1])
            .map(|v| rep.swapped(v, v + 1))
            .find(|m| m != rep)
    }

    /// Recomputes the orbits by closing each representative under adjacent
    /// in-block transpositions and checks that they are exactly the key
    /// classes with the stated sizes. Only for `k <= 4`.
    pub fn validate_by_group_action(&self) -> Result<()> {
        if self.k > 4 {
            return Err(Error::Capacity { what: "orbit validation by group action".into(), limit: 4 });
        }
        let gens: Vec<usize> = (0..2 * self.k - 1).filter(|&v| self.block_of[v] == self.block_of[v + 1]).collect();
        let mut seen: HashMap<PerfectMatching, usize> = HashMap::new();
        for (o, rep) in self.representatives.iter().enumerate() {
            if self.orbit_of(rep) != o {
                return Err(Error::Consistency(format!("representative of orbit {o} has another key")));
            }
            let mut queue = VecDeque::from([rep.clone()]);
            seen.insert(rep.clone(), o);
            let mut count = 1usize;
            while let Some(m) = queue.pop_front() {
                for &g in &gens {
                    let next = m.swapped(g, g + 1);
                    match seen.get(&next) {
                        Some(&other) if other != o => {
                            return Err(Error::Consistency(format!("orbits {o} and {other} meet")));
                        }
                        Some(_) => {}
                        None => {
                            if self.orbit_of(&next) != o {
                                return Err(Error::Consistency(format!("orbit {o} is not one key class")));
                            }
                            seen.insert(next.clone(), o);
                            queue.push_back(next);
                            count += 1;
                        }
                    }
                }
            }
            if BigUint::from(count) != self.sizes[o] {
                return Err(Error::Consistency(format!(
                    "orbit {o} has {count} members, formula says {}",
                    self.sizes[o]
                )));
            }
        }
        let total = enumerate_matchings(self.k)?.count();
        if seen.len() != total {
            return Err(Error::Consistency(format!("orbits cover {} of {total} matchings", seen.len())));
        }
        Ok(())
    }
}

fn sort_tuple(b: usize, key: &OrbitKey) -> Vec<u16> {
    let mut t: Vec<u16> = (1..b).map(|i| key[tri(b, i, i)]).collect();
    for i in 1..b {
        for j in i + 1..b {
            t.push(key[tri(b, i, j)]);
        }
    }
    t
}

/// Fills the upper triangle entry by entry. `left[i]` is the number of
/// vertices of block `i` not yet assigned to an edge.
fn enumerate_keys(b: usize, i: usize, j: usize, left: &mut [usize], c: &mut [u16], out: &mut Vec<OrbitKey>) {
    if i == b {
        out.push(c.to_vec());
        return;
    }
    if j == b {
        if left[i] == 0 {
            enumerate_keys(b, i + 1, i + 1, left, c, out);
        }
        return;
    }
    let t = tri(b, i, j);
    if i == j {
        for x in 0..=left[i] / 2 {
            c[t] = x as u16;
            left[i] -= 2 * x;
            enumerate_keys(b, i, j + 1, left, c, out);
            left[i] += 2 * x;
        }
    } else {
        for x in 0..=left[i].min(left[j]) {
            c[t] = x as u16;
            left[i] -= x;
            left[j] -= x;
            enumerate_keys(b, i, j + 1, left, c, out);
            left[i] += x;
            left[j] += x;
        }
    }
    c[t] = 0;
}

/// `∏_i λ_i! (2c_ii - 1)!! / ((2c_ii)! ∏_{j≠i} c_ij!)  ×  ∏_{i<j} c_ij!`
fn orbit_size(lam: &[usize], key: &OrbitKey) -> BigUint {
    let b = lam.len();
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..b {
        let cii = key[tri(b, i, i)] as u64;
        num *= factorial(lam[i] as u64) * double_factorial(2 * cii as i64 - 1).expect("cii >= 0");
        den *= factorial(2 * cii);
        for j in 0..b {
            if j != i {
                den *= factorial(key[tri(b, i, j)] as u64);
            }
        }
        for j in i + 1..b {
            num *= factorial(key[tri(b, i, j)] as u64);
        }
    }
    num / den
}

/// Canonical member of a key class: inside each block the first `2c_ii`
/// vertices are paired consecutively, then come the vertices matched to
/// block 0, 1, 2, ... in that order; cross edges pair these runs in order.
fn representative(lam: &[usize], key: &OrbitKey) -> PerfectMatching {
    let b = lam.len();
    let n: usize = lam.iter().sum();
    let mut start = 0;
    let mut runs: Vec<Vec<Vec<usize>>> = vec![vec![vec![]; b]; b];
    let mut partner = vec![0u8; n];
    for i in 0..b {
        let mut v = start;
        for _ in 0..key[tri(b, i, i)] {
            partner[v] = (v + 1) as u8;
            partner[v + 1] = v as u8;
            v += 2;
        }
        for j in 0..b {
            if j == i {
                continue;
            }
            for _ in 0..key[tri(b, i, j)] {
                runs[i][j].push(v);
                v += 1;
            }
        }
        start += lam[i];
    }
    for i in 0..b {
        for j in i + 1..b {
            for (&x, &y) in runs[i][j].iter().zip(&runs[j][i]) {
                partner[x] = y as u8;
                partner[y] = x as u8;
            }
        }
    }
    PerfectMatching::from_partners(partner).expect("valid key gives a matching")
}

pub fn orbit_partition(k: usize, lambda: &IntegerPartition) -> Result<OrbitPartition> {
    OrbitPartition::new(k, lambda)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuotientMatrix {
    pub k: usize,
    pub class: IntegerPartition,
    pub subgroup: IntegerPartition,
    #[serde(with = "crate::rational::serde_matrix")]
    pub entries: RatMatrix,
}

impl QuotientMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry_u64(&self, i: usize, j: usize) -> Option<u64> {
        let x = &self.entries[i][j];
        rational::is_integer(x).then(|| x.to_integer().to_u64()).flatten()
    }
}

fn quotient_row(orbits: &OrbitPartition, class: &IntegerPartition, rep: &PerfectMatching) -> Result<Vec<u64>> {
    let mut row = vec![0u64; orbits.len()];
    for_each_neighbor(rep, class, |q| row[orbits.orbit_of_partners(q)] += 1)?;
    Ok(row)
}

/// Quotient of class `class_shape` by the orbits of `Sym(lambda)`. Each row
/// is counted from the orbit representative and checked against a second
/// member of the orbit.
pub fn quotient_matrix(
    k: usize,
    class_shape: &IntegerPartition,
    lambda: &IntegerPartition,
    exec: Execution,
) -> Result<QuotientMatrix> {
    let orbits = OrbitPartition::new(k, lambda)?;
    quotient_matrix_on(&orbits, class_shape, exec)
}

pub fn quotient_matrix_on(
    orbits: &OrbitPartition,
    class_shape: &IntegerPartition,
    exec: Execution,
) -> Result<QuotientMatrix> {
    let degree = class_degree_formula(orbits.k, class_shape)?;
    let idx: Vec<usize> = (0..orbits.len()).collect();
    let rows = exec.map(&idx, |&o| -> Result<Vec<u64>> {
        let row = quotient_row(orbits, class_shape, &orbits.representatives[o])?;
        if let Some(second) = orbits.second_representative(o) {
            if quotient_row(orbits, class_shape, &second)? != row {
                return Err(Error::Consistency(format!(
                    "orbit {o} of Sym({}) is not equitable for class {class_shape}",
                    orbits.subgroup
                )));
            }
        }
        Ok(row)
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    for (o, row) in rows.iter().enumerate() {
        if BigUint::from(row.iter().sum::<u64>()) != degree {
            return Err(Error::Consistency(format!("row {o} does not sum to the degree {degree}")));
        }
    }
    Ok(QuotientMatrix {
        k: orbits.k,
        class: class_shape.clone(),
        subgroup: orbits.subgroup.clone(),
        entries: rows.iter().map(|r| r.iter().map(|&x| rational::int(x as i64)).collect()).collect(),
    })
}

/// Even partitions `μ ⊵ λ`, most dominant first (ties in dominance broken
/// by decreasing lexicographic order).
pub fn admissible_modules(lambda: &IntegerPartition) -> Result<Vec<IntegerPartition>> {
    let n = lambda.n();
    if !n.is_multiple_of(2) {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for mu in even_partitions(n)? {
        if dominance_ge(&mu, lambda)? {
            out.push(mu);
        }
    }
    Ok(out)
}

/// The generic shape `[2k - a, b, c, ...]`: offsets as given, first part
/// `2k - sum(rest)`. `None` when the first part would not be positive or
/// would be smaller than a later part.
pub fn generic_shape(k: usize, rest: &[usize]) -> Option<IntegerPartition> {
    let s: usize = rest.iter().sum();
    if s >= 2 * k || rest.iter().any(|&r| r > 2 * k - s) {
        return None;
    }
    let mut parts = vec![2 * k - s];
    parts.extend_from_slice(rest);
    IntegerPartition::new(parts).ok()
}

/// The subgroup chain `[2k], [2k-2,2], [2k-4,4], [2k-6,6], [2k-4,2,2]`.
pub fn standard_chain(k: usize) -> Result<Vec<IntegerPartition>> {
    if k < 6 {
        return Err(Error::domain(format!("the standard chain needs k >= 6, got {k}")));
    }
    Ok([&[][..], &[2], &[4], &[6], &[2, 2]].iter().map(|rest| generic_shape(k, rest).expect("k >= 6")).collect())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtractionStep {
    pub subgroup: IntegerPartition,
    #[serde(with = "crate::rational::serde_matrix")]
    pub quotient: RatMatrix,
    /// Quotient eigenvalues, decreasing, with multiplicities.
    pub spectrum: Vec<(String, usize)>,
    pub module: IntegerPartition,
    #[serde(with = "crate::rational::serde_str")]
    pub eigenvalue: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Extraction {
    pub k: usize,
    pub class: IntegerPartition,
    pub steps: Vec<ExtractionStep>,
}

impl Extraction {
    pub fn eigenvalues(&self) -> BTreeMap<IntegerPartition, Rational> {
        self.steps.iter().map(|s| (s.module.clone(), s.eigenvalue.clone())).collect()
    }

    pub fn eigenvalue(&self, module: &IntegerPartition) -> Option<&Rational> {
        self.steps.iter().find(|s| &s.module == module).map(|s| &s.eigenvalue)
    }
}

/// Walks the subgroup chain, assigning to each subgroup's module the one
/// quotient eigenvalue not already explained by dominating modules.
///
/// Every module that dominates a chain member must appear earlier in the
/// chain. All occurrences of known eigenvalues are removed from the quotient
/// spectrum; exactly one distinct value must remain.
pub fn extract_eigenvalues(
    k: usize,
    class_shape: &IntegerPartition,
    chain: &[IntegerPartition],
    exec: Execution,
) -> Result<Extraction> {
    let mut known: BTreeMap<IntegerPartition, Rational> = BTreeMap::new();
    let mut steps = Vec::new();
    for lambda in chain {
        if !lambda.is_even() {
            return Err(Error::domain(format!("chain member {lambda} is not a module")));
        }
        let admissible = admissible_modules(lambda)?;
        let missing: Vec<String> =
            admissible.iter().filter(|m| *m != lambda && !known.contains_key(*m)).map(|m| m.to_string()).collect();
        if !missing.is_empty() {
            return Err(Error::domain(format!("chain reaches {lambda} before the dominating modules {missing:?}")));
        }
        let q = quotient_matrix(k, class_shape, lambda, exec)?;
        let spectrum = linalg::rational_spectrum(&q.entries, &format!("X_{class_shape}/{lambda} at k = {k}"))?;
        let explained: Vec<&Rational> = admissible.iter().filter_map(|m| known.get(m)).collect();
        let remainder: Vec<&Rational> = spectrum.iter().map(|(v, _)| v).filter(|v| !explained.contains(v)).collect();
        let eigenvalue = match remainder.as_slice() {
            [one] => (*one).clone(),
            _ => {
                let candidates = if remainder.is_empty() {
                    explained.iter().map(|v| rational::to_string(v)).collect()
                } else {
                    remainder.iter().map(|v| rational::to_string(v)).collect()
                };
                return Err(Error::Ambiguous { module: lambda.clone(), candidates });
            }
        };
        known.insert(lambda.clone(), eigenvalue.clone());
        steps.push(ExtractionStep {
            subgroup: lambda.clone(),
            quotient: q.entries,
            spectrum: spectrum.iter().map(|(v, m)| (rational::to_string(v), *m)).collect(),
            module: lambda.clone(),
            eigenvalue,
        });
    }
    Ok(Extraction { k, class: class_shape.clone(), steps })
}

/// Lifts an exact `eta`-eigenvector of the quotient `X_class/Sym(lambda)` to
/// all matchings and checks `A v = eta v` entry by entry. Needs `k <= 5`.
pub fn lifted_eigenvector_check(
    table: &crate::scheme::ClassTable,
    class_shape: &IntegerPartition,
    lambda: &IntegerPartition,
    eta: &Rational,
    exec: Execution,
) -> Result<bool> {
    let orbits = OrbitPartition::new(table.k, lambda)?;
    let q = quotient_matrix_on(&orbits, class_shape, exec)?;
    let n = q.size();
    let shifted: RatMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { &q.entries[i][j] - eta } else { q.entries[i][j].clone() }).collect())
        .collect();
    let basis = linalg::nullspace(&shifted);
    if basis.is_empty() {
        return Ok(false);
    }
    let c = table.class_index(class_shape)?;
    let orbit_of: Vec<usize> = table.matchings.iter().map(|m| orbits.orbit_of(m)).collect();
    let ok = basis.iter().all(|v| {
        let lifted: Vec<&Rational> = orbit_of.iter().map(|&o| &v[o]).collect();
        let idx: Vec<usize> = (0..table.n()).collect();
        exec.find_first(&idx, |&i| {
            let av: Rational = table.neighbors_of(i, c).map(|j| lifted[j].clone()).sum();
            av != eta * lifted[i]
        })
        .is_none()
    });
    Ok(ok && basis.iter().any(|v| v.iter().any(|x| !x.is_zero())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(s: &str) -> IntegerPartition {
        s.parse().unwrap()
    }

    fn ints(q: &QuotientMatrix) -> Vec<Vec<u64>> {
        (0..q.size()).map(|i| (0..q.size()).map(|j| q.entry_u64(i, j).unwrap()).collect()).collect()
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(OrbitPartition::new(4, &p("8")).unwrap().len(), 1);
        assert_eq!(OrbitPartition::new(4, &p("8")).unwrap().sizes[0], BigUint::from(105u32));
        assert_eq!(OrbitPartition::new(4, &p("6,2")).unwrap().len(), 2);
        assert_eq!(OrbitPartition::new(4, &p("4,2,2")).unwrap().len(), 6);
        assert_eq!(OrbitPartition::new(4, &p("4,4")).unwrap().len(), 3);
        assert!(OrbitPartition::new(4, &p("6")).is_err());
    }

    #[test]
    fn orbit_order_for_two_small_blocks() {
        let o = OrbitPartition::new(5, &p("6,2,2")).unwrap();
        let described: Vec<(u16, u16, u16)> = (0..o.len())
            .map(|i| {
                let m = o.key_matrix(i);
                (m[1][1], m[2][2], m[1][2])
            })
            .collect();
        assert_eq!(described, [(1, 1, 0), (1, 0, 0), (0, 1, 0), (0, 0, 2), (0, 0, 1), (0, 0, 0)]);
    }

    #[test]
    fn orbits_agree_with_group_action() {
        for k in 1..=4 {
            for lam in crate::combinat::partitions(2 * k) {
                let o = OrbitPartition::new(k, &lam).unwrap();
                o.validate_by_group_action().unwrap_or_else(|e| panic!("{lam}: {e}"));
                let total: BigUint = o.sizes.iter().sum();
                assert_eq!(total, double_factorial(2 * k as i64 - 1).unwrap());
            }
        }
    }

    #[test]
    fn orbit_sizes_sum_to_vertex_count() {
        for k in 5..=8 {
            for rest in [&[][..], &[2], &[4], &[6], &[2, 2]] {
                let Some(lam) = generic_shape(k, rest) else { continue };
                let total: BigUint = OrbitPartition::new(k, &lam).unwrap().sizes.iter().sum();
                assert_eq!(total, double_factorial(2 * k as i64 - 1).unwrap());
            }
        }
    }

    #[test]
    fn small_quotients() {
        let e = Execution::default();
        assert_eq!(ints(&quotient_matrix(4, &p("8"), &p("6,2"), e).unwrap()), [[0, 48], [8, 40]]);
        assert_eq!(ints(&quotient_matrix(5, &p("6,4"), &p("8,2"), e).unwrap()), [[0, 160], [20, 140]]);
        let id = quotient_matrix(4, &p("2,2,2,2"), &p("4,2,2"), e).unwrap();
        for i in 0..id.size() {
            for j in 0..id.size() {
                assert_eq!(id.entry_u64(i, j).unwrap(), (i == j) as u64);
            }
        }
    }

    #[test]
    fn quotient_rows_match_brute_force() {
        // count neighbors of every member of every orbit by filtering
        let k = 4;
        let all: Vec<_> = enumerate_matchings(k).unwrap().collect();
        for lam in [p("6,2"), p("4,4"), p("4,2,2")] {
            let o = OrbitPartition::new(k, &lam).unwrap();
            for class in even_partitions(8).unwrap() {
                let q = ints(&quotient_matrix_on(&o, &class, Execution::Sequential).unwrap());
                for m in &all {
                    let mut row = vec![0u64; o.len()];
                    for x in &all {
                        if crate::matchings::union_shape(m, x).unwrap() == class {
                            row[o.orbit_of(x)] += 1;
                        }
                    }
                    assert_eq!(row, q[o.orbit_of(m)]);
                }
            }
        }
    }

    #[test]
    fn admissible_module_lists() {
        let names =
            |l: &str| -> Vec<String> { admissible_modules(&p(l)).unwrap().iter().map(|m| m.to_string()).collect() };
        assert_eq!(names("10,2"), ["[12]", "[10,2]"]);
        assert_eq!(names("6,6"), ["[12]", "[10,2]", "[8,4]", "[6,6]"]);
        assert_eq!(names("12"), ["[12]"]);
        assert_eq!(names("8,2,2"), ["[12]", "[10,2]", "[8,4]", "[8,2,2]"]);
    }

    #[test]
    fn extraction_at_k5() {
        let e = Execution::default();
        let chain = [p("10"), p("8,2"), p("6,4")];
        let x = extract_eigenvalues(5, &p("6,4"), &chain, e).unwrap();
        assert_eq!(x.eigenvalue(&p("10")), Some(&int(160)));
        assert_eq!(x.eigenvalue(&p("8,2")), Some(&int(-20)));
        assert_eq!(x.eigenvalue(&p("6,4")), Some(&int(20)));
        assert!(extract_eigenvalues(5, &p("6,4"), &[p("10"), p("6,4")], e).is_err());
    }

    #[test]
    fn lifted_eigenvectors_at_k4() {
        let e = Execution::default();
        let t = crate::scheme::ClassTable::build(4, e).unwrap();
        assert!(lifted_eigenvector_check(&t, &p("4,4"), &p("6,2"), &int(-2), e).unwrap());
        assert!(!lifted_eigenvector_check(&t, &p("4,4"), &p("6,2"), &int(3), e).unwrap());
    }
}

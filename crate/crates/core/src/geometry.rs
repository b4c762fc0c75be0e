//! Finite fields, Singer difference sets, the projective planes they
//! develop into, and the clique of matchings built from an oval.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matchings::{intersection_size, PerfectMatching};

/// Largest field size handled.
pub const FIELD_CAP: u64 = 1 << 20;

/// Planes with more points than this are checked on a sample of pairs.
pub const EXHAUSTIVE_PLANE_CAP: u64 = 100;

/// `GF(p^m)`. Elements are encoded as integers whose base-`p` digits are
/// polynomial coefficients, lowest degree first.
#[derive(Debug, Clone)]
pub struct Field {
    pub p: u64,
    pub m: u32,
    /// Monic modulus, coefficients lowest degree first, length `m + 1`.
    pub modulus: Vec<u64>,
    /// The primitive element used for logs.
    pub alpha: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..).take_while(|d| d * d <= n).find(|d| n.is_multiple_of(*d)).unwrap_or(n)
}

/// `(p, e)` with `n = p^e`, if `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = smallest_prime_factor(n);
    let (mut x, mut e) = (n, 0);
    while x % p == 0 {
        x /= p;
        e += 1;
    }
    (x == 1).then_some((p, e))
}

fn digits(x: u64, p: u64, m: u32) -> Vec<u64> {
    let mut x = x;
    (0..m)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `f`, coefficients mod `p`.
fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let df = f.len() - 1;
    while a.len() > df {
        let lead = a.pop().expect("nonempty");
        if lead == 0 {
            continue;
        }
        let shift = a.len() - df;
        for (i, &c) in f[..df].iter().enumerate() {
            a[shift + i] = (a[shift + i] + (p - c) * lead) % p;
        }
    }
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, f, p);
    r.resize(f.len() - 1, 0);
    r
}

/// Monic polynomials of degree `deg` over `GF(p)` in lexicographic order of
/// their coefficients read from the constant term.
fn monic(deg: u32, p: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..p.pow(deg)).map(move |x| {
        let mut c = digits(x, p, deg);
        c.push(1);
        c
    })
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = (f.len() - 1) as u32;
    (1..=deg / 2).all(|d| monic(d, p).all(|g| poly_rem(f, &g, p).iter().any(|&c| c != 0)))
}

impl Field {
    /// Builds `GF(p^m)` from the smallest monic irreducible polynomial of
    /// degree `m` and its smallest primitive element.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if prime_power(p) != Some((p, 1)) || m == 0 {
            return Err(Error::domain(format!("GF({p}^{m}) needs a prime p and m >= 1")));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= FIELD_CAP)
            .ok_or_else(|| Error::Capacity { what: format!("field size {p}^{m}"), limit: FIELD_CAP })?;
        let modulus = monic(m, p)
            .find(|f| is_irreducible(f, p))
            .ok_or_else(|| Error::Construction(format!("no irreducible polynomial of degree {m} over GF({p})")))?;

        let order = q - 1;
        let mut primes = Vec::new();
        let mut x = order;
        while x > 1 {
            let r = smallest_prime_factor(x);
            primes.push(r);
            while x % r == 0 {
                x /= r;
            }
        }
        let mul = |a: u64, b: u64| undigits(&poly_mulmod(&digits(a, p, m), &digits(b, p, m), &modulus, p), p);
        let pow = |a: u64, mut e: u64| {
            let (mut base, mut acc) = (a, 1u64);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, base);
                }
                base = mul(base, base);
                e >>= 1;
            }
            acc
        };
        let alpha = (1..q)
            .find(|&g| primes.iter().all(|&r| pow(g, order / r) != 1))
            .ok_or_else(|| Error::Construction(format!("no primitive element in GF({q})")))?;

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = 1u64;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = cur as u32;
            if log[cur as usize] != u32::MAX {
                return Err(Error::Construction(format!("{alpha} is not primitive in GF({q})")));
            }
            log[cur as usize] = i as u32;
            cur = mul(cur, alpha);
        }
        Ok(Field { p, m, modulus, alpha, exp, log })
    }

    pub fn size(&self) -> u64 {
        self.exp.len() as u64 + 1
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (digits(a, self.p, self.m), digits(b, self.p, self.m));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        undigits(&s, self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let d: Vec<u64> = digits(a, self.p, self.m).iter().map(|&x| (self.p - x) % self.p).collect();
        undigits(&d, self.p)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.size() - 1);
        self.exp[e as usize] as u64
    }

    /// `alpha^e`.
    pub fn alpha_pow(&self, e: u64) -> u64 {
        self.exp[(e % (self.size() - 1)) as usize] as u64
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return (e == 0) as u64;
        }
        let l = (self.log[a as usize] as u128 * e as u128) % (self.size() - 1) as u128;
        self.exp[l as usize] as u64
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.alpha_pow(self.size() - 1 - self.log[a as usize] as u64))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = self.size() - 1;
        let l = self.log[a as usize] as u64;
        Some(n / num_integer::gcd(n, l))
    }

    /// Exhaustive check of the field axioms; meant for fields of size at
    /// most 64.
    pub fn check_axioms(&self) -> Result<()> {
        let q = self.size();
        let fail = |what: String| Err(Error::Verification(format!("GF({q}): {what}")));
        for a in 0..q {
            if self.add(a, self.neg(a)) != 0 {
                return fail(format!("{a} + (-{a}) != 0"));
            }
            if a != 0 && self.mul(a, self.inv(a).expect("nonzero")) != 1 {
                return fail(format!("{a} has no inverse"));
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail(format!("{a}, {b} do not commute"));
                }
                for c in 0..q {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail(format!("distributivity fails at {a}, {b}, {c}"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                    {
                        return fail(format!("associativity fails at {a}, {b}, {c}"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceSet {
    pub n: u64,
    pub d: u32,
    pub v: u64,
    pub lambda: u64,
    pub elements: Vec<u64>,
}

impl DifferenceSet {
    /// The number of ordered pairs `(x, y)` of elements with `x - y = g`,
    /// for every `g` in `0..v`.
    pub fn difference_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.v as usize];
        for &x in &self.elements {
            for &y in &self.elements {
                if x != y {
                    counts[((x + self.v - y) % self.v) as usize] += 1;
                }
            }
        }
        counts
    }

    /// `-D` modulo `v`, sorted.
    pub fn negated(&self) -> Vec<u64> {
        let mut o: Vec<u64> = self.elements.iter().map(|&x| (self.v - x) % self.v).collect();
        o.sort_unstable();
        o
    }
}

/// The Singer difference set `{i in Z_v : Tr(alpha^i) = 0}` in
/// `GF(n^(d+1))`, where `v = (n^(d+1) - 1)/(n - 1)` and `Tr` is the trace
/// to `GF(n)`. Every nonzero residue is checked to occur as a difference
/// exactly `(n^(d-1) - 1)/(n - 1)` times.
pub fn singer_difference_set(n: u64, d: u32) -> Result<DifferenceSet> {
    let (p, e) = prime_power(n).ok_or_else(|| Error::domain(format!("{n} is not a prime power")))?;
    if d == 0 {
        return Err(Error::domain("d must be at least 1"));
    }
    let field = Field::new(p, e * (d + 1))?;
    let q = field.size();
    let v = (q - 1) / (n - 1);
    let trace = |x: u64| {
        let mut acc = 0;
        let mut power = 1u64;
        for _ in 0..=d {
            acc = field.add(acc, field.pow(x, power));
            power *= n;
        }
        acc
    };
    let elements: Vec<u64> = (0..v).filter(|&i| trace(field.alpha_pow(i)) == 0).collect();
    let lambda = (n.pow(d - 1) - 1) / (n - 1);
    let ds = DifferenceSet { n, d, v, lambda, elements };
    let expected_size = (n.pow(d) - 1) / (n - 1);
    if ds.elements.len() as u64 != expected_size {
        return Err(Error::Construction(format!(
            "trace-zero set has {} elements, expected {expected_size}",
            ds.elements.len()
        )));
    }
    if let Some(g) = ds.difference_counts().iter().skip(1).position(|&c| c != lambda) {
        return Err(Error::Construction(format!("residue {} does not occur {lambda} times as a difference", g + 1)));
    }
    Ok(ds)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectivePlane {
    pub v: u64,
    pub order: u64,
    /// Line `x` is `D + x`, sorted.
    pub lines: Vec<Vec<u64>>,
}

impl ProjectivePlane {
    pub fn lines_through(&self, point: u64) -> impl Iterator<Item = usize> + '_ {
        self.lines.iter().enumerate().filter(move |(_, l)| l.binary_search(&point).is_ok()).map(|(i, _)| i)
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.lines[a].iter().filter(|x| self.lines[b].binary_search(x).is_ok()).count()
    }
}

/// Develops a `lambda = 1` difference set into its projective plane and
/// checks that two points lie on one line and two lines meet in one point,
/// exhaustively up to [`EXHAUSTIVE_PLANE_CAP`] points and on a deterministic
/// sample of 10^4 pairs beyond.
pub fn develop_plane(ds: &DifferenceSet) -> Result<ProjectivePlane> {
    if ds.lambda != 1 {
        return Err(Error::domain(format!("a plane needs lambda = 1, got {}", ds.lambda)));
    }
    let v = ds.v;
    let lines: Vec<Vec<u64>> = (0..v)
        .map(|x| {
            let mut l: Vec<u64> = ds.elements.iter().map(|&e| (e + x) % v).collect();
            l.sort_unstable();
            l
        })
        .collect();
    let plane = ProjectivePlane { v, order: ds.n, lines };

    let pairs: Vec<(u64, u64)> = if v <= EXHAUSTIVE_PLANE_CAP {
        (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect()
    } else {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(v);
        (0..10_000)
            .map(|_| {
                let a = rng.random_range(0..v);
                let b = (a + rng.random_range(1..v)) % v;
                (a, b)
            })
            .collect()
    };
    for &(a, b) in &pairs {
        let through = plane.lines.iter().filter(|l| l.binary_search(&a).is_ok() && l.binary_search(&b).is_ok()).count();
        if through != 1 {
            return Err(Error::Construction(format!("points {a} and {b} lie on {through} lines")));
        }
        let met = plane.meet(a as usize, b as usize);
        if met != 1 {
            return Err(Error::Construction(format!("lines {a} and {b} meet in {met} points")));
        }
    }
    Ok(plane)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OvalCheck {
    pub is_oval: bool,
    /// A line meeting the set in more than two points.
    pub witness: Option<usize>,
}

/// Whether every line meets `set` in at most two points.
pub fn verify_oval(plane: &ProjectivePlane, set: &[u64]) -> OvalCheck {
    let witness = plane.lines.iter().position(|l| set.iter().filter(|x| l.binary_search(x).is_ok()).count() > 2);
    OvalCheck { is_oval: witness.is_none(), witness }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinesWithZeroReport {
    pub lines_through_zero: usize,
    /// The lines through 0 are exactly `D + o` for `o` in the oval.
    pub translates_by_oval: bool,
    /// Every point outside the oval and 0 shares exactly one line with 0.
    pub unique_line_with_zero: bool,
    /// Every line through 0 contains exactly one oval point.
    pub one_oval_point: bool,
    /// The lines meeting the oval in exactly one point are exactly the lines
    /// through 0.
    pub tangents_through_zero: bool,
    pub counterexample: Option<String>,
}

impl LinesWithZeroReport {
    pub fn holds(&self) -> bool {
        self.translates_by_oval && self.unique_line_with_zero && self.one_oval_point && self.tangents_through_zero
    }
}

/// Checks the facts about lines through 0 that the clique construction
/// relies on, for the oval `-D` of the difference set that made the plane.
pub fn lemma_lines_with_zero(plane: &ProjectivePlane, oval: &[u64]) -> LinesWithZeroReport {
    let v = plane.v;
    let mut counterexample = None;
    let through_zero: Vec<usize> = plane.lines_through(0).collect();

    let mut translates: Vec<usize> = oval.iter().map(|&o| o as usize).collect();
    translates.sort_unstable();
    let translates_by_oval = translates == through_zero;
    if !translates_by_oval {
        counterexample = Some(format!("lines through 0 are {through_zero:?}, oval translates are {translates:?}"));
    }

    let mut unique_line_with_zero = true;
    for s in (1..v).filter(|s| oval.binary_search(s).is_err()) {
        let c = through_zero.iter().filter(|&&l| plane.lines[l].binary_search(&s).is_ok()).count();
        if c != 1 {
            unique_line_with_zero = false;
            counterexample.get_or_insert_with(|| format!("point {s} shares {c} lines with 0"));
        }
    }

    let hits = |l: usize| oval.iter().filter(|x| plane.lines[l].binary_search(x).is_ok()).count();
    let mut one_oval_point = true;
    for &l in &through_zero {
        if hits(l) != 1 {
            one_oval_point = false;
            counterexample.get_or_insert_with(|| format!("line {l} through 0 has {} oval points", hits(l)));
        }
    }
    let tangents: Vec<usize> = (0..plane.lines.len()).filter(|&l| hits(l) == 1).collect();
    let tangents_through_zero = tangents == through_zero;
    if !tangents_through_zero {
        counterexample.get_or_insert_with(|| format!("tangent lines {tangents:?} differ from lines through 0"));
    }
    LinesWithZeroReport {
        lines_through_zero: through_zero.len(),
        translates_by_oval,
        unique_line_with_zero,
        one_oval_point,
        tangents_through_zero,
        counterexample,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CliqueConstruction {
    pub a: u32,
    pub k: usize,
    pub v: u64,
    /// Residue of the plane carried by vertex `i + 1`.
    pub labels: Vec<u64>,
    pub matchings: Vec<PerfectMatching>,
    /// Whether running the per-point step at `s = 0` as well would have
    /// produced a matching (it does not: every line through 0 gives an edge
    /// at vertex 0).
    pub zero_gives_matching: bool,
}

/// The clique of `(2k-1)(2k-3)` matchings on `2k = 2^a + 2` vertices.
///
/// Vertices are the oval `O = -D` and the point 0: the oval sorted as
/// residues becomes vertices `1..2k-1` and 0 becomes vertex `2k`. A line
/// meeting `O` twice gives the edge between those two points; a line
/// meeting `O` once gives the edge from that point to 0. For each point `s`
/// outside `O` and 0, the lines through `s` that meet `O` give one matching.
/// Every pair of the results is checked to share at most one edge.
pub fn build_clique(a: u32, exec: Execution) -> Result<CliqueConstruction> {
    if !(2..=6).contains(&a) {
        return Err(Error::domain(format!("build_clique supports 2 <= a <= 6, got {a}")));
    }
    let n = 1u64 << a;
    let ds = singer_difference_set(n, 2)?;
    let plane = develop_plane(&ds)?;
    let oval = ds.negated();
    if !verify_oval(&plane, &oval).is_oval {
        return Err(Error::Construction("-D is not an oval".into()));
    }
    let k = (n as usize + 2) / 2;
    let mut labels = oval.clone();
    labels.push(0);
    let vertex = |x: u64| labels.iter().position(|&y| y == x).expect("labelled point");

    let edge_of = |l: &Vec<u64>| -> Option<(usize, usize)> {
        let on: Vec<u64> = l.iter().copied().filter(|x| oval.binary_search(x).is_ok()).collect();
        match on.as_slice() {
            [x] => Some((vertex(*x), vertex(0))),
            [x, y] => Some((vertex(*x), vertex(*y))),
            _ => None,
        }
    };
    let matching_for = |s: u64| -> Result<PerfectMatching> {
        let edges: Vec<(usize, usize)> = plane
            .lines
            .iter()
            .filter(|l| l.binary_search(&s).is_ok())
            .filter_map(&edge_of)
            .map(|(x, y)| (x + 1, y + 1))
            .collect();
        PerfectMatching::from_edges(k, &edges)
    };

    let points: Vec<u64> = (1..ds.v).filter(|s| oval.binary_search(s).is_err()).collect();
    let matchings = exec.map(&points, |&s| matching_for(s)).into_iter().collect::<Result<Vec<_>>>()?;
    let zero_gives_matching = matching_for(0).is_ok();

    let expected = (n as usize + 1) * (n as usize - 1);
    if matchings.len() != expected {
        return Err(Error::Construction(format!("{} matchings, expected {expected}", matchings.len())));
    }
    let idx: Vec<usize> = (0..matchings.len()).collect();
    if let Some(i) = exec.find_first(&idx, |&i| {
        matchings[i + 1..].iter().any(|m| intersection_size(&matchings[i], m).expect("same k") > 1)
    }) {
        let j = (i + 1..matchings.len())
            .find(|&j| intersection_size(&matchings[i], &matchings[j]).expect("same k") > 1)
            .expect("found above");
        return Err(Error::Construction(format!(
            "matchings for s = {} and s = {} share two edges",
            points[i], points[j]
        )));
    }
    Ok(CliqueConstruction { a, k, v: ds.v, labels, matchings, zero_gives_matching })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (2, 6), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let f = Field::new(p, m).unwrap();
            f.check_axioms().unwrap();
            assert_eq!(f.order(f.alpha), Some(f.size() - 1));
        }
        assert_eq!(Field::new(2, 3).unwrap().modulus, vec![1, 1, 0, 1]);
        assert!(Field::new(4, 2).is_err());
        assert!(Field::new(2, 21).is_err());
    }

    #[test]
    fn fano() {
        let ds = singer_difference_set(2, 2).unwrap();
        assert_eq!((ds.v, ds.elements.len()), (7, 3));
        assert!(ds.difference_counts()[1..].iter().all(|&c| c == 1));
        let plane = develop_plane(&ds).unwrap();
        assert_eq!(plane.lines.len(), 7);
        for x in 0..7 {
            assert_eq!(plane.lines_through(x).count(), 3);
        }
        assert!(verify_oval(&plane, &ds.negated()).is_oval);
        assert!(!verify_oval(&plane, &plane.lines[0]).is_oval);
    }

    #[test]
    fn higher_dimension_and_odd_order() {
        let ds = singer_difference_set(2, 3).unwrap();
        assert_eq!((ds.v, ds.elements.len(), ds.lambda), (15, 7, 3));
        assert!(develop_plane(&ds).is_err());
        let ds = singer_difference_set(3, 2).unwrap();
        assert_eq!((ds.v, ds.elements.len()), (13, 4));
        develop_plane(&ds).unwrap();
        assert!(singer_difference_set(6, 2).is_err());
    }

    #[test]
    fn order_four_plane() {
        let ds = singer_difference_set(4, 2).unwrap();
        let plane = develop_plane(&ds).unwrap();
        let oval = ds.negated();
        assert_eq!(oval.len(), 5);
        assert!(verify_oval(&plane, &oval).is_oval);
        let r = lemma_lines_with_zero(&plane, &oval);
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.lines_through_zero, 5);
    }

    #[test]
    fn clique_on_six_is_everything() {
        let c = build_clique(2, Execution::default()).unwrap();
        assert_eq!(c.matchings.len(), 15);
        let mut all: Vec<_> = c.matchings.clone();
        all.sort_by_key(|m| m.to_string());
        all.dedup();
        assert_eq!(all.len(), 15);
        assert!(!c.zero_gives_matching);
    }
}

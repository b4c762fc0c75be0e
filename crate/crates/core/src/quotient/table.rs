//! Character tables of the matching scheme: rows are modules, columns are
//! classes, entries are the eigenvalue of the class matrix on the module.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinat::{dominance_ge, hook_dimension, IntegerPartition};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{self, RatMatrix};
use crate::rational::{self, Rational};
use crate::scheme::ClassTable;

use super::closed_forms::{PARTIAL_CLASSES, PARTIAL_MODULES};
use super::{extract_eigenvalues, generic_shape, quotient_matrix_on, standard_chain, OrbitPartition};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub k: usize,
    pub modules: Vec<IntegerPartition>,
    pub classes: Vec<IntegerPartition>,
    /// Dimension of each module, in row order.
    pub multiplicities: Vec<u64>,
    /// `entries[module][class]`; `None` where the value is not known.
    #[serde(with = "crate::rational::serde_opt_matrix")]
    pub entries: Vec<Vec<Option<Rational>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CharacterTable {
    pub fn get(&self, module: &IntegerPartition, class: &IntegerPartition) -> Option<&Rational> {
        let i = self.modules.iter().position(|m| m == module)?;
        let j = self.classes.iter().position(|c| c == class)?;
        self.entries[i][j].as_ref()
    }

    pub fn is_complete(&self) -> bool {
        self.entries.iter().flatten().all(Option::is_some)
    }

    /// Complete, with a row and a column for every module and class of the
    /// scheme.
    pub fn is_full(&self) -> bool {
        let p = crate::combinat::partitions(self.k).len();
        self.is_complete() && self.modules.len() == p && self.classes.len() == p
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Format(e.to_string()))
    }

    /// Reads a table in the same JSON layout, for example one supplied from
    /// outside for `k >= 6`, and checks its shape. Full tables are also
    /// checked against the orthogonality relations.
    pub fn from_json(src: &str) -> Result<Self> {
        let t: CharacterTable = serde_json::from_str(src).map_err(|e| Error::Format(e.to_string()))?;
        let (r, c) = (t.modules.len(), t.classes.len());
        if t.multiplicities.len() != r || t.entries.len() != r || t.entries.iter().any(|row| row.len() != c) {
            return Err(Error::Format(format!("table is not {r} x {c}")));
        }
        for p in t.modules.iter().chain(&t.classes) {
            if p.n() != 2 * t.k || !p.is_even() {
                return Err(Error::Format(format!("{p} is not an even partition of {}", 2 * t.k)));
            }
        }
        if t.is_full() {
            t.verify_orthogonality()?;
        }
        Ok(t)
    }

    /// Exact check of `sum_mu m_mu theta_mu(A) theta_mu(B) = n * d_A [A = B]`
    /// over all pairs of classes. Needs a complete square table whose first
    /// row is the degree row.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let n: Rational = self.multiplicities.iter().map(|&m| rational::int(m as i64)).sum();
        let value = |i: usize, j: usize| {
            self.entries[i][j].clone().ok_or_else(|| Error::Verification(format!("missing entry ({i}, {j})")))
        };
        for a in 0..self.classes.len() {
            for b in a..self.classes.len() {
                let mut s = Rational::zero();
                for (i, &m) in self.multiplicities.iter().enumerate() {
                    s += rational::int(m as i64) * value(i, a)? * value(i, b)?;
                }
                let want = if a == b { &n * value(0, a)? } else { Rational::zero() };
                if s != want {
                    return Err(Error::Verification(format!(
                        "classes {} and {}: sum m theta theta' = {}, expected {}",
                        self.classes[a],
                        self.classes[b],
                        rational::to_string(&s),
                        rational::to_string(&want)
                    )));
                }
            }
        }
        Ok(())
    }
}

fn dimension(mu: &IntegerPartition) -> Result<u64> {
    hook_dimension(mu).to_u64().ok_or_else(|| Error::Capacity { what: format!("dimension of {mu}"), limit: u64::MAX })
}

/// The complete table for `k <= 5`, computed on the dense scheme.
///
/// A random integer combination of the class matrices is diagonalised in
/// floating point and its eigenvalues clustered; each cluster is a common
/// eigenspace. Each class's eigenvalue on a cluster is read off one
/// eigenvector and rounded to an integer (scheme eigenvalues are algebraic
/// integers, and they are rational here). The integers are then checked
/// exactly against the orthogonality relations. Clusters are matched to
/// modules by dimension; equal dimensions are separated by asking which
/// clusters have a common eigenvector in the quotient by `Sym(mu)`, which
/// only carries modules dominating `mu`.
pub fn full_char_table_small(k: usize, exec: Execution) -> Result<CharacterTable> {
    let table = ClassTable::build(k, exec)?;
    let classes = table.classes.clone();
    let n = table.n();
    let p = classes.len();

    let mut clusters = None;
    for seed in 0..8u64 {
        let found = cluster_eigenspaces(&table, seed)?;
        if found.len() == p {
            clusters = Some(found);
            break;
        }
    }
    let clusters =
        clusters.ok_or_else(|| Error::Verification(format!("could not separate {p} common eigenspaces at k = {k}")))?;

    let mut rows: Vec<(u64, Vec<Rational>)> = Vec::new();
    for (mult, v) in &clusters {
        let vv = v.dot(v);
        let mut thetas = Vec::with_capacity(p);
        for c in 0..p {
            let av: Vec<f64> = exec.map_range(0..n, |i| table.neighbors_of(i, c).map(|j| v[j]).sum());
            let x = DVector::from_vec(av).dot(v) / vv;
            let r = x.round();
            if (x - r).abs() > 1e-6 {
                return Err(Error::Verification(format!(
                    "eigenvalue {x} of class {} is not close to an integer",
                    classes[c]
                )));
            }
            thetas.push(rational::int(r as i64));
        }
        rows.push((*mult as u64, thetas));
    }

    let modules = classes.clone();
    let dims = modules.iter().map(dimension).collect::<Result<Vec<_>>>()?;
    let assignment = assign_modules(&table, &modules, &dims, &rows, exec)?;

    let entries = assignment.iter().map(|&r| rows[r].1.iter().cloned().map(Some).collect()).collect();
    let out = CharacterTable { k, modules, classes, multiplicities: dims, entries, notes: vec![] };
    if out.entries[0].iter().zip(table.degrees()?).any(|(e, d)| e != &Some(rational::int(d as i64))) {
        return Err(Error::Verification("the trivial module row is not the degree row".into()));
    }
    out.verify_orthogonality()?;
    Ok(out)
}

/// Eigen-decomposes a random combination of the classes and returns
/// `(multiplicity, one eigenvector)` per cluster of equal eigenvalues.
fn cluster_eigenspaces(table: &ClassTable, seed: u64) -> Result<Vec<(usize, DVector<f64>)>> {
    let n = table.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..table.classes.len()).map(|_| rng.random_range(1..1000) as f64).collect();
    let b = DMatrix::from_fn(n, n, |i, j| weights[table.class_of(i, j)]);
    let eig = SymmetricEigen::new(b);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let top = eig.eigenvalues.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let tol = 1e-9 * top.max(1.0) * n as f64;
    let mut out: Vec<(usize, DVector<f64>)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &i in &order {
        let x = eig.eigenvalues[i];
        if x - last > tol {
            out.push((0, eig.eigenvectors.column(i).into_owned()));
        }
        out.last_mut().expect("pushed").0 += 1;
        last = x;
    }
    Ok(out)
}

fn assign_modules(
    table: &ClassTable,
    modules: &[IntegerPartition],
    dims: &[u64],
    rows: &[(u64, Vec<Rational>)],
    exec: Execution,
) -> Result<Vec<usize>> {
    let mut candidates: Vec<Vec<usize>> =
        dims.iter().map(|&d| (0..rows.len()).filter(|&r| rows[r].0 == d).collect()).collect();
    for (mu, cands) in modules.iter().zip(candidates.iter_mut()) {
        if cands.len() > 1 {
            let orbits = OrbitPartition::new(table.k, mu)?;
            let quotients = table
                .classes
                .iter()
                .map(|c| quotient_matrix_on(&orbits, c, exec).map(|q| q.entries))
                .collect::<Result<Vec<_>>>()?;
            cands.retain(|&r| has_joint_eigenvector(&quotients, &rows[r].1));
        }
    }
    let mut assigned: Vec<Option<usize>> = vec![None; modules.len()];
    loop {
        let Some(i) = (0..modules.len()).find(|&i| assigned[i].is_none() && candidates[i].len() == 1) else {
            break;
        };
        let r = candidates[i][0];
        assigned[i] = Some(r);
        for (j, c) in candidates.iter_mut().enumerate() {
            if j != i {
                c.retain(|&x| x != r);
            }
        }
    }
    assigned
        .iter()
        .enumerate()
        .map(|(i, a)| {
            a.ok_or_else(|| Error::Ambiguous {
                module: modules[i].clone(),
                candidates: candidates[i].iter().map(|r| format!("eigenspace {r}")).collect(),
            })
        })
        .collect()
}

/// Whether some nonzero vector is a `thetas[c]`-eigenvector of every
/// quotient `qs[c]` at once.
fn has_joint_eigenvector(qs: &[RatMatrix], thetas: &[Rational]) -> bool {
    let mut stacked: RatMatrix = Vec::new();
    for (q, t) in qs.iter().zip(thetas) {
        for (i, row) in q.iter().enumerate() {
            stacked.push(row.iter().enumerate().map(|(j, x)| if i == j { x - t } else { x.clone() }).collect());
        }
    }
    !linalg::nullspace(&stacked).is_empty()
}

/// The rows `[2k], [2k-2,2], [2k-4,4], [2k-4,2,2], [2k-6,6]` for the classes
/// `[2k], [2k-2,2], [2k-4,4], [2k-4,2,2], [2k-6,6]`, by eigenvalue
/// extraction along the standard chain. Needs `k >= 6`.
///
/// A class whose extraction fails leaves its column empty and adds a note.
pub fn partial_char_table(k: usize, exec: Execution) -> Result<CharacterTable> {
    let chain = standard_chain(k)?;
    let shape = |rest: &[usize]| generic_shape(k, rest).expect("k >= 6");
    let modules: Vec<IntegerPartition> = PARTIAL_MODULES.iter().map(|r| shape(r)).collect();
    let classes: Vec<IntegerPartition> = PARTIAL_CLASSES.iter().map(|r| shape(r)).collect();
    let multiplicities = modules.iter().map(dimension).collect::<Result<Vec<_>>>()?;
    let mut entries = vec![vec![None; classes.len()]; modules.len()];
    let mut notes = Vec::new();
    for (j, class) in classes.iter().enumerate() {
        match extract_eigenvalues(k, class, &chain, exec) {
            Ok(ex) => {
                let values: BTreeMap<_, _> = ex.eigenvalues();
                for (i, m) in modules.iter().enumerate() {
                    entries[i][j] = values.get(m).cloned();
                }
            }
            Err(e) => notes.push(format!("class {class}: {e}")),
        }
    }
    Ok(CharacterTable { k, modules, classes, multiplicities, entries, notes })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub module: IntegerPartition,
    /// The row as `p/q` strings, in class order.
    pub row: Vec<String>,
    #[serde(with = "crate::rational::serde_str")]
    pub max_value: Rational,
    pub max_classes: Vec<IntegerPartition>,
    /// The row maximum is attained at the class of the same shape.
    pub max_at_own_class: bool,
    /// Classes strictly dominating the module's shape.
    pub dominating_classes: Vec<IntegerPartition>,
    /// Every entry at those classes is negative.
    pub dominating_negative: bool,
    pub observation: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub k: usize,
    pub rows: Vec<ConjectureRow>,
}

/// For each two-part module `[2k-2l, 2l]` with `l >= 1`, records where the
/// row maximum lies and the signs at classes strictly dominating it. This
/// only reports; nothing is asserted.
pub fn conjecture_check(table: &CharacterTable) -> Result<ConjectureReport> {
    let mut rows = Vec::new();
    for (i, mu) in table.modules.iter().enumerate() {
        if mu.len() != 2 {
            continue;
        }
        let row: Vec<Rational> = table.entries[i]
            .iter()
            .enumerate()
            .map(|(j, e)| {
                e.clone().ok_or_else(|| Error::domain(format!("row {mu} has no entry at class {}", table.classes[j])))
            })
            .collect::<Result<_>>()?;
        let max_value = row.iter().max().expect("nonempty row").clone();
        let max_classes: Vec<IntegerPartition> =
            table.classes.iter().zip(&row).filter(|(_, v)| **v == max_value).map(|(c, _)| c.clone()).collect();
        let max_at_own_class = max_classes.contains(mu);
        let mut dominating_classes = Vec::new();
        let mut dominating_negative = true;
        for (c, v) in table.classes.iter().zip(&row) {
            if c != mu && dominance_ge(c, mu)? {
                dominating_classes.push(c.clone());
                dominating_negative &= v.is_negative();
            }
        }
        let shown: Vec<String> = max_classes.iter().map(|c| c.to_string()).collect();
        let mut observation =
            format!("row {mu}: maximum {} at class {}", rational::to_string(&max_value), shown.join(", "));
        observation.push_str(if max_at_own_class { ", which is its own class" } else { ", not at its own class" });
        if !dominating_classes.is_empty() {
            observation.push_str(if dominating_negative {
                "; entries at strictly dominating classes are all negative"
            } else {
                "; some entry at a strictly dominating class is not negative"
            });
        }
        rows.push(ConjectureRow {
            module: mu.clone(),
            row: row.iter().map(rational::to_string).collect(),
            max_value,
            max_classes,
            max_at_own_class,
            dominating_classes,
            dominating_negative,
            observation,
        });
    }
    Ok(ConjectureReport { k: table.k, rows })
}

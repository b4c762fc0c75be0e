//! Weighted adjacency matrices of the 2-intersection derangement graph
//! `M_2(2k)`, the ratio bound they give, and direct checks of the bound.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{binomial, double_factorial, hook_dimension, IntegerPartition};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{self, RatMatrix};
use crate::matchings::{enumerate_matchings, intersection_size, PerfectMatching};
use crate::quotient::{
    char_table_closed_form, full_char_table_small, generic_shape, partial_char_table, CharacterTable,
};
use crate::rational::{self, Rational};
use crate::scheme::{class_degree_formula, ClassTable};

/// Search nodes allowed in [`verify_main_theorem`] before giving up.
pub const NODE_GUARD: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedTerm {
    pub shape: IntegerPartition,
    #[serde(with = "crate::rational::serde_str")]
    pub coefficient: Rational,
}

/// `sum coefficient * A_shape` over classes of the matching scheme on
/// `K_2k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedSchemeMatrix {
    pub k: usize,
    pub name: String,
    pub terms: Vec<WeightedTerm>,
}

fn bigu(n: &BigUint) -> Rational {
    rational::big(BigInt::from(n.clone()))
}

fn df(m: i64) -> Result<Rational> {
    Ok(bigu(&double_factorial(m)?))
}

fn shape(parts: &[usize]) -> IntegerPartition {
    IntegerPartition::new(parts.to_vec()).expect("valid literal partition")
}

impl WeightedSchemeMatrix {
    pub fn new(k: usize, name: &str, terms: &[(IntegerPartition, Rational)]) -> Result<Self> {
        for (s, _) in terms {
            if s.n() != 2 * k || !s.is_even() {
                return Err(Error::domain(format!("{s} is not a class at k = {k}")));
            }
        }
        Ok(WeightedSchemeMatrix {
            k,
            name: name.to_string(),
            terms: terms
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(s, c)| WeightedTerm { shape: s.clone(), coefficient: c.clone() })
                .collect(),
        })
    }

    pub fn coefficient(&self, s: &IntegerPartition) -> Rational {
        self.terms.iter().find(|t| &t.shape == s).map_or_else(Rational::zero, |t| t.coefficient.clone())
    }

    /// Classes where two matchings share two or more edges, plus the
    /// identity, carry a nonzero coefficient.
    pub fn forbidden_support(&self) -> Vec<IntegerPartition> {
        self.terms.iter().filter(|t| t.shape.count_of(2) >= 2).map(|t| t.shape.clone()).collect()
    }

    /// `sum coefficient * degree`, with degrees from the closed formula.
    pub fn row_sum(&self) -> Result<Rational> {
        let mut s = Rational::zero();
        for t in &self.terms {
            s += &t.coefficient * bigu(&class_degree_formula(self.k, &t.shape)?);
        }
        Ok(s)
    }

    /// Eigenvalue on `module`, if the table has every needed entry.
    pub fn eigenvalue(&self, table: &CharacterTable, module: &IntegerPartition) -> Option<Rational> {
        let mut s = Rational::zero();
        for t in &self.terms {
            s += &t.coefficient * table.get(module, &t.shape)?;
        }
        Some(s)
    }

    /// Dense row-major matrix over the matchings of `table`.
    pub fn dense(&self, table: &ClassTable) -> Result<Vec<Rational>> {
        let coeff = table.classes.iter().map(|c| self.coefficient(c)).collect::<Vec<_>>();
        let n = table.n();
        Ok((0..n * n).map(|x| coeff[table.class_of(x / n, x % n)].clone()).collect())
    }
}

/// Outcome of the ratio bound `v / (1 - d/tau)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundCertificate {
    #[serde(with = "crate::rational::serde_biguint")]
    pub v: BigUint,
    #[serde(with = "crate::rational::serde_str")]
    pub d: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub tau: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub bound: Rational,
    pub achieved: Option<u64>,
    /// `tau` was checked to be the least eigenvalue over every module.
    pub tau_verified: bool,
    pub modules_at_tau: Vec<IntegerPartition>,
}

impl BoundCertificate {
    pub fn new(v: BigUint, d: Rational, tau: Rational) -> Result<Self> {
        if !tau.is_negative() {
            return Err(Error::domain("the ratio bound needs a negative least eigenvalue"));
        }
        let bound = bigu(&v) / (Rational::one() - &d / &tau);
        Ok(BoundCertificate { v, d, tau, bound, achieved: None, tau_verified: false, modules_at_tau: vec![] })
    }

    pub fn is_consistent(&self) -> bool {
        self.bound >= Rational::one() && self.achieved.is_none_or(|a| rational::int(a as i64) <= self.bound)
    }
}

/// All matchings containing the `t` disjoint edges `edges` (1-based).
pub fn canonical_coclique(k: usize, edges: &[(usize, usize)]) -> Result<Vec<PerfectMatching>> {
    let mut used = vec![false; 2 * k];
    for &(a, b) in edges {
        for x in [a, b] {
            if x == 0 || x > 2 * k || std::mem::replace(&mut used[x - 1], true) {
                return Err(Error::domain(format!("edges {edges:?} are not disjoint edges of K_{}", 2 * k)));
            }
        }
        if a == b {
            return Err(Error::domain(format!("{a}-{b} is not an edge")));
        }
    }
    let free: Vec<usize> = (0..2 * k).filter(|&v| !used[v]).collect();
    let rest = k - edges.len();
    let mut out = Vec::new();
    for m in enumerate_matchings(rest)? {
        let mut all: Vec<(usize, usize)> = edges.to_vec();
        all.extend(m.edges0().map(|(x, y)| (free[x] + 1, free[y] + 1)));
        out.push(PerfectMatching::from_edges(k, &all)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleValue {
    pub module: IntegerPartition,
    pub multiplicity: u64,
    #[serde(with = "crate::rational::serde_str")]
    pub eigenvalue: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub k: usize,
    pub clique_size: usize,
    /// The projection `M^ = sum (x_C^T A_i x_C)/(v v_i) A_i`.
    pub m_hat: WeightedSchemeMatrix,
    /// `M = M^ - |C|/v I`.
    pub m: WeightedSchemeMatrix,
    pub m_hat_eigenvalues: Vec<ModuleValue>,
    pub m_eigenvalues: Vec<ModuleValue>,
    pub m_hat_psd: bool,
    /// Classes outside `M_2(2k)` with a nonzero coefficient in `M`.
    pub forbidden: Vec<IntegerPartition>,
    pub certificate: BoundCertificate,
}

/// Projects the clique onto the Bose–Mesner algebra and derives the ratio
/// bound from the result. Needs the full table, so `k <= 5`.
pub fn clique_projection(k: usize, clique: &[PerfectMatching], exec: Execution) -> Result<ProjectionReport> {
    if clique.iter().any(|m| m.k() != k) {
        return Err(Error::domain(format!("clique is not made of matchings of K_{}", 2 * k)));
    }
    let table = full_char_table_small(k, exec)?;
    let index = |s: &IntegerPartition| table.classes.iter().position(|c| c == s).expect("class");
    let mut pair_counts = vec![0u64; table.classes.len()];
    for p in clique {
        for q in clique {
            pair_counts[index(&crate::matchings::union_shape(p, q)?)] += 1;
        }
    }
    let v = double_factorial(2 * k as i64 - 1)?;
    let vr = bigu(&v);
    let mut hat_terms = Vec::new();
    for (c, &cnt) in table.classes.iter().zip(&pair_counts) {
        let degree = bigu(&class_degree_formula(k, c)?);
        hat_terms.push((c.clone(), rational::int(cnt as i64) / (&vr * degree)));
    }
    let m_hat = WeightedSchemeMatrix::new(k, "M^", &hat_terms)?;
    let shift = rational::int(clique.len() as i64) / &vr;
    let identity = IntegerPartition::identity_shape(k);
    let m_terms: Vec<(IntegerPartition, Rational)> =
        hat_terms.iter().map(|(c, x)| (c.clone(), if *c == identity { x - &shift } else { x.clone() })).collect();
    let m = WeightedSchemeMatrix::new(k, "M", &m_terms)?;

    let values = |w: &WeightedSchemeMatrix| -> Vec<ModuleValue> {
        table
            .modules
            .iter()
            .zip(&table.multiplicities)
            .map(|(mu, &mult)| ModuleValue {
                module: mu.clone(),
                multiplicity: mult,
                eigenvalue: w.eigenvalue(&table, mu).expect("complete table"),
            })
            .collect()
    };
    let m_hat_eigenvalues = values(&m_hat);
    let m_eigenvalues = values(&m);
    let m_hat_psd = m_hat_eigenvalues.iter().all(|x| !x.eigenvalue.is_negative());
    let forbidden = m.forbidden_support();

    let d = m.row_sum()?;
    let tau = m_eigenvalues.iter().map(|x| x.eigenvalue.clone()).min().expect("nonempty");
    let mut certificate = BoundCertificate::new(v, d, tau.clone())?;
    certificate.tau_verified = true;
    certificate.modules_at_tau =
        m_eigenvalues.iter().filter(|x| x.eigenvalue == tau).map(|x| x.module.clone()).collect();
    Ok(ProjectionReport {
        k,
        clique_size: clique.len(),
        m_hat,
        m,
        m_hat_eigenvalues,
        m_eigenvalues,
        m_hat_psd,
        forbidden,
        certificate,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightSolution {
    pub k: usize,
    /// Coefficients of `A_[2k]`, `A_[2k-2,2]`, `A_[2k-4,4]`.
    #[serde(with = "crate::rational::serde_matrix")]
    pub system: RatMatrix,
    #[serde(with = "crate::rational::serde_str")]
    pub determinant: Rational,
    pub coefficients: Vec<String>,
    /// The solution equals `(1/(4(2k-6)!!), 1/(2k-6)!!, 1/(2k-6)!!)`.
    pub matches_closed_form: bool,
    #[serde(with = "crate::rational::serde_str")]
    pub row_sum: Rational,
    #[serde(skip)]
    pub values: Vec<Rational>,
}

impl WeightSolution {
    pub fn matrix(&self) -> Result<WeightedSchemeMatrix> {
        let k = self.k;
        let terms: Vec<(IntegerPartition, Rational)> = [&[][..], &[2], &[4]]
            .iter()
            .zip(&self.values)
            .map(|(rest, a)| (generic_shape(k, rest).expect("k >= 5"), a.clone()))
            .collect();
        WeightedSchemeMatrix::new(k, &format!("M_{}", 2 * k), &terms)
    }
}

/// The 3x3 system that puts eigenvalue -1 on `[2k-2,2]`, `[2k-4,4]` and
/// `[2k-4,2,2]`, built from the closed-form table entries, or `None` where
/// an entry is undefined.
pub fn weight_system(k: usize) -> Result<Option<RatMatrix>> {
    let mut rows = Vec::new();
    for module in 1..=3 {
        let mut row = Vec::new();
        for class in 0..3 {
            match char_table_closed_form(k, module, class)? {
                Some(cell) => row.push(cell.printed),
                None => return Ok(None),
            }
        }
        rows.push(row);
    }
    Ok(Some(rows))
}

/// Solves the weight system exactly. Fails with [`Error::Singular`] when the
/// determinant vanishes.
pub fn solve_weight_coefficients(k: usize) -> Result<WeightSolution> {
    if k < 5 {
        return Err(Error::domain(format!("the weight system is set up for k >= 5, got {k}")));
    }
    let system = weight_system(k)?.ok_or_else(|| Error::domain(format!("closed forms undefined at k = {k}")))?;
    let determinant = linalg::determinant(&system);
    if determinant.is_zero() {
        return Err(Error::Singular { k });
    }
    let rhs = vec![rational::int(-1); 3];
    let values = linalg::solve(&system, &rhs).ok_or(Error::Singular { k })?;
    let d6 = df(2 * k as i64 - 6)?;
    let expected = [Rational::one() / (rational::int(4) * &d6), Rational::one() / &d6, Rational::one() / &d6];
    let matches_closed_form = values.iter().zip(&expected).all(|(a, b)| a == b);
    let mut sol = WeightSolution {
        k,
        system,
        determinant,
        coefficients: values.iter().map(rational::to_string).collect(),
        matches_closed_form,
        row_sum: Rational::zero(),
        values,
    };
    sol.row_sum = sol.matrix()?.row_sum()?;
    Ok(sol)
}

/// Determinant of the weight system for each `k` in the range; `None` where
/// the closed forms are undefined.
pub fn determinant_sweep(ks: std::ops::RangeInclusive<usize>) -> Result<Vec<(usize, Option<Rational>)>> {
    ks.map(|k| Ok((k, weight_system(k)?.map(|s| linalg::determinant(&s))))).collect()
}

/// The explicit matrices for small `k`. Those for `k = 3, 4, 5` can be
/// checked against full tables; those for `k = 7, 8, 9` live on classes
/// deeper than the quotient chain reaches and are kept as data.
pub fn small_value_matrix(k: usize) -> Result<WeightedSchemeMatrix> {
    let r = rational::ratio;
    let (name, terms): (&str, Vec<(IntegerPartition, Rational)>) = match k {
        3 => ("M_6", vec![(shape(&[6]), r(1, 1)), (shape(&[4, 2]), r(1, 1))]),
        4 => ("M_8", vec![(shape(&[8]), r(1, 4)), (shape(&[6, 2]), r(1, 2)), (shape(&[4, 4]), r(1, 2))]),
        5 => ("M_10", vec![(shape(&[10]), r(1, 12)), (shape(&[8, 2]), r(1, 12)), (shape(&[4, 4, 2]), r(1, 6))]),
        7 => ("M_7", vec![(shape(&[14]), r(1, 640)), (shape(&[6, 6, 2]), r(1, 80)), (shape(&[4, 4, 4, 2]), r(1, 60))]),
        // Printed under the same name as the k = 4 matrix.
        8 => (
            "M_16-coeffs",
            vec![(shape(&[14, 2]), r(1, 3840)), (shape(&[10, 6]), r(1, 2048)), (shape(&[4, 4, 4, 4]), r(1, 120))],
        ),
        9 => (
            "M_9",
            vec![(shape(&[18]), r(1, 80640)), (shape(&[8, 8, 2]), r(1, 13440)), (shape(&[6, 6, 4, 2]), r(1, 4480))],
        ),
        _ => return Err(Error::domain(format!("no explicit matrix for k = {k}"))),
    };
    WeightedSchemeMatrix::new(k, name, &terms)
}

/// `(2k-1)(2k-3) - 1`.
pub fn target_row_sum(k: usize) -> Rational {
    let k = k as i64;
    rational::int((2 * k - 1) * (2 * k - 3) - 1)
}

/// `-6 (2k-12)!!/(2k-6)!! (8k^2 - 65k + 130)`.
pub fn predicted_eigenvalue_2k6_6(k: usize) -> Result<Rational> {
    let ki = k as i64;
    Ok(rational::int(-6) * df(2 * ki - 12)? / df(2 * ki - 6)? * rational::int(8 * ki * ki - 65 * ki + 130))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedReport {
    pub k: usize,
    pub matrix: WeightedSchemeMatrix,
    #[serde(with = "crate::rational::serde_str")]
    pub row_sum: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub expected_row_sum: Rational,
    /// Eigenvalue per module, for the modules where it is known.
    pub modules: Vec<ModuleValue>,
    pub target_modules_at_minus_one: bool,
    /// Only set for `k >= 6`: the `[2k-6,6]` eigenvalue and its closed form.
    pub eigenvalue_2k6_6: Option<(String, String)>,
    pub certificate: BoundCertificate,
    pub valid: bool,
    pub notes: Vec<String>,
}

/// Checks the weighted matrix for `k`: the explicit matrix and the full
/// table for `k <= 5`, the solved coefficients and quotient extraction for
/// `k >= 6`.
pub fn verify_weighted_matrix(k: usize, exec: Execution) -> Result<WeightedReport> {
    if k < 3 {
        return Err(Error::domain(format!("verify_weighted_matrix needs k >= 3, got {k}")));
    }
    let v = double_factorial(2 * k as i64 - 1)?;
    let expected_row_sum = target_row_sum(k);
    let mut notes = Vec::new();
    let targets: Vec<IntegerPartition> = [&[2][..], &[4], &[2, 2]].iter().filter_map(|r| generic_shape(k, r)).collect();

    let (matrix, table, full) = if k <= 5 {
        (small_value_matrix(k)?, full_char_table_small(k, exec)?, true)
    } else {
        (solve_weight_coefficients(k)?.matrix()?, partial_char_table(k, exec)?, false)
    };
    notes.extend(table.notes.iter().cloned());
    let modules: Vec<ModuleValue> = table
        .modules
        .iter()
        .zip(&table.multiplicities)
        .filter_map(|(mu, &mult)| {
            matrix.eigenvalue(&table, mu).map(|e| ModuleValue { module: mu.clone(), multiplicity: mult, eigenvalue: e })
        })
        .collect();

    let row_sum = matrix.row_sum()?;
    let minus_one = rational::int(-1);
    let value_of = |mu: &IntegerPartition| modules.iter().find(|m| &m.module == mu).map(|m| &m.eigenvalue);
    let target_modules_at_minus_one = targets.iter().all(|mu| value_of(mu) == Some(&minus_one));

    let mut eigenvalue_2k6_6 = None;
    let mut valid = row_sum == expected_row_sum && target_modules_at_minus_one;
    if k >= 6 {
        let mu = generic_shape(k, &[6]).expect("k >= 6");
        let predicted = predicted_eigenvalue_2k6_6(k)?;
        match value_of(&mu) {
            Some(got) => {
                valid &= *got == predicted;
                eigenvalue_2k6_6 = Some((rational::to_string(got), rational::to_string(&predicted)));
            }
            None => {
                valid = false;
                notes.push(format!("no eigenvalue extracted for {mu}"));
            }
        }
        notes.push(
            "the least eigenvalue over all modules needs the full table, which is not computed for k >= 6".into(),
        );
    }

    let tau =
        if full { modules.iter().map(|m| m.eigenvalue.clone()).min().expect("nonempty") } else { minus_one.clone() };
    if full && tau != minus_one {
        valid = false;
        notes.push(format!("least eigenvalue is {}", rational::to_string(&tau)));
    }
    let mut certificate = BoundCertificate::new(v, row_sum.clone(), tau.clone())?;
    certificate.tau_verified = full;
    certificate.modules_at_tau = modules.iter().filter(|m| m.eigenvalue == tau).map(|m| m.module.clone()).collect();
    if full {
        // The table's eigenvalues come from the dense scheme; confirm the
        // row sum on the dense matrix too.
        let classes = ClassTable::build(k, exec)?;
        let dense = matrix.dense(&classes)?;
        let n = classes.n();
        let first: Rational = dense[..n].iter().cloned().sum();
        if first != row_sum {
            valid = false;
            notes.push(format!("dense row sum {} differs", rational::to_string(&first)));
        }
        if !matrix.forbidden_support().is_empty() {
            valid = false;
            notes.push("matrix uses classes outside M_2(2k)".into());
        }
    }
    Ok(WeightedReport {
        k,
        matrix,
        row_sum,
        expected_row_sum,
        modules,
        target_modules_at_minus_one,
        eigenvalue_2k6_6,
        certificate,
        valid,
        notes,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceRow {
    pub k: usize,
    /// `m_1, m_2, m_3` from the closed formulas, and whether each equals the
    /// hook-length dimension.
    pub m123: [String; 3],
    pub m123_match: bool,
    #[serde(with = "crate::rational::serde_str")]
    pub diagonal_m2: Rational,
    /// Right side of the multiplicity inequality.
    #[serde(with = "crate::rational::serde_str")]
    pub rhs: Rational,
    /// `d_M^2 + m_1 + m_2 + m_3` equals the printed quartic.
    pub quartic_matches: bool,
    pub holds_2k6_4_2: bool,
    pub holds_2k6_2_2_2: bool,
    pub holds_2k8_8: bool,
    /// `2 * 3^k` exceeds the right side.
    pub holds_primary_bound: bool,
    /// The `[2k-6,6]` eigenvalue of `M` is above -1.
    pub eigenvalue_2k6_6_above_minus_one: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceBoundReport {
    pub rows: Vec<TraceRow>,
    /// For each check, the least `k` from which it holds through the end of
    /// the range, or `None` if it fails at the last `k`.
    pub thresholds: Vec<(String, Option<usize>)>,
}

fn dim_of(parts: Option<IntegerPartition>) -> Rational {
    parts.map_or_else(Rational::zero, |p| bigu(&hook_dimension(&p)))
}

/// The trace argument for `M` over a range of `k`: multiplicities, the
/// diagonal of `M^2`, and the inequality `m_i > rhs(k)` for the modules it
/// is applied to.
pub fn trace_bound_report(ks: std::ops::RangeInclusive<usize>) -> Result<TraceBoundReport> {
    let mut rows = Vec::new();
    for k in ks {
        if k < 6 {
            return Err(Error::domain(format!("trace bound report starts at k = 6, got {k}")));
        }
        let ki = k as i64;
        let q = |x: i64| rational::int(x);
        let m1 = q(2 * ki * (2 * ki - 3) / 2);
        let m2 = q(2 * ki * (2 * ki - 1) * (2 * ki - 2) * (2 * ki - 7) / 24);
        let m3 = q(2 * ki * (2 * ki - 1) * (2 * ki - 4) * (2 * ki - 5) / 12);
        let hook = [dim_of(generic_shape(k, &[2])), dim_of(generic_shape(k, &[4])), dim_of(generic_shape(k, &[2, 2]))];
        let m123_match = [&m1, &m2, &m3].iter().zip(&hook).all(|(a, b)| *a == b);

        let sol = solve_weight_coefficients(k)?;
        let degrees = [&[][..], &[2], &[4]]
            .iter()
            .map(|r| Ok(bigu(&class_degree_formula(k, &generic_shape(k, r).expect("k >= 6"))?)))
            .collect::<Result<Vec<_>>>()?;
        let diagonal_m2: Rational = sol.values.iter().zip(&degrees).map(|(a, d)| a * a * d).sum();
        let d6 = df(2 * ki - 6)?;
        let v = df(2 * ki - 1)?;
        let poly = q(13 * ki * ki - 23 * ki + 2);
        let printed_quartic = q(18 * ki.pow(4) - 74 * ki.pow(3)) + rational::ratio(191, 2) * q(ki * ki)
            - rational::ratio(79, 2) * q(ki)
            + q(4);
        let rhs = &v / &d6 * &poly / q(4) - &printed_quartic;
        let dm = &sol.row_sum;
        let quartic_matches = dm * dm + &m1 + &m2 + &m3 == printed_quartic && diagonal_m2 == &poly / (q(4) * &d6);

        let holds = |rest: &[usize]| dim_of(generic_shape(k, rest)) > rhs;
        let primary = bigu(&(BigUint::from(2u32) * BigUint::from(3u32).pow(k as u32)));
        let e66 = predicted_eigenvalue_2k6_6(k)?;
        rows.push(TraceRow {
            k,
            m123: [m1, m2, m3].map(|x| rational::to_string(&x)),
            m123_match,
            diagonal_m2,
            holds_2k6_4_2: holds(&[4, 2]),
            holds_2k6_2_2_2: holds(&[2, 2, 2]),
            holds_2k8_8: holds(&[8]),
            holds_primary_bound: primary > rhs,
            eigenvalue_2k6_6_above_minus_one: e66 > q(-1),
            rhs,
            quartic_matches,
        });
    }
    let threshold = |f: &dyn Fn(&TraceRow) -> bool| -> Option<usize> {
        let last_fail = rows.iter().rposition(|r| !f(r));
        match last_fail {
            None => rows.first().map(|r| r.k),
            Some(i) => rows.get(i + 1).map(|r| r.k),
        }
    };
    let thresholds = vec![
        ("[2k-6,4,2]".to_string(), threshold(&|r| r.holds_2k6_4_2)),
        ("[2k-6,2,2,2]".to_string(), threshold(&|r| r.holds_2k6_2_2_2)),
        ("[2k-8,8]".to_string(), threshold(&|r| r.holds_2k8_8)),
        ("primary 2*3^k".to_string(), threshold(&|r| r.holds_primary_bound)),
        ("[2k-6,6] eigenvalue > -1".to_string(), threshold(&|r| r.eigenvalue_2k6_6_above_minus_one)),
    ];
    Ok(TraceBoundReport { rows, thresholds })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpanReport {
    pub k: usize,
    pub vectors: usize,
    pub rank: usize,
    /// `1 + dim[2k-2,2] + dim[2k-4,4] + dim[2k-4,2,2]`.
    pub expected: usize,
    /// The same dimension from the binomial display.
    pub printed_formula: i64,
    pub ok: bool,
}

/// Rank of the indicators of "contains edges `e1` and `e2`" over all
/// disjoint edge pairs, against the dimension of the four modules.
pub fn span_dimension_check(k: usize) -> Result<SpanReport> {
    if !(3..=5).contains(&k) {
        return Err(Error::domain(format!("span check runs for k in 3..=5, got {k}")));
    }
    let n = 2 * k;
    let ms: Vec<PerfectMatching> = enumerate_matchings(k)?.collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    let mut pairs = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a != c && a != d && b != c && b != d {
                pairs.push(((a, b), (c, d)));
            }
        }
    }
    let rows: Vec<Vec<i64>> = ms
        .iter()
        .map(|m| pairs.iter().map(|&((a, b), (c, d))| (m.partner(a) == b && m.partner(c) == d) as i64).collect())
        .collect();
    let rank = linalg::integer_rank(&rows);
    let dim = |rest: &[usize]| dim_of(generic_shape(k, rest)).to_integer().to_usize().unwrap_or(0);
    let expected = 1 + dim(&[2]) + dim(&[4]) + dim(&[2, 2]);
    let b = |r: u64| binomial(n as u64, r).to_i64().unwrap_or(i64::MAX);
    let nn = n as i64;
    let printed_formula = 1 + b(2) - b(1) + b(4) - b(3) + nn * (nn - 1) * (nn - 4) * (nn - 5) / 12;
    Ok(SpanReport { k, vectors: pairs.len(), rank, expected, printed_formula, ok: rank == expected })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MainTheoremReport {
    pub k: usize,
    /// Size of a largest 2-intersecting family, if the search finished.
    pub alpha: Option<usize>,
    pub expected: u64,
    pub maximum_families: usize,
    /// Every largest family is all matchings through two fixed edges.
    pub all_canonical: Option<bool>,
    /// `nu_S - |S|/v 1` is a `tau`-eigenvector of the weighted matrix for a
    /// canonical family `S`.
    pub tight_eigenvector: Option<bool>,
    pub nodes: u64,
    pub inconclusive: bool,
    pub certificate: Option<BoundCertificate>,
}

/// Maximum-clique search on bitset adjacency with a greedy-colouring bound.
/// Collects every clique of maximum size.
struct CliqueSearch<'a> {
    adj: &'a [Vec<u64>],
    best: usize,
    found: Vec<Vec<usize>>,
    nodes: u64,
    guard: u64,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, p: Vec<u64>) -> bool {
        self.nodes += 1;
        if self.nodes > self.guard {
            return false;
        }
        let mut order = Vec::new();
        let mut bounds = Vec::new();
        let mut uncolored = p.clone();
        let mut color = 0;
        while uncolored.iter().any(|&w| w != 0) {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first_bit(&q) {
                clear(&mut q, v);
                clear(&mut uncolored, v);
                for (x, a) in q.iter_mut().zip(&self.adj[v]) {
                    *x &= !a;
                }
                order.push(v);
                bounds.push(color);
            }
        }
        let mut p = p;
        while let Some(v) = order.pop() {
            let bound = bounds.pop().expect("paired");
            if r.len() + bound < self.best {
                return true;
            }
            r.push(v);
            let np: Vec<u64> = p.iter().zip(&self.adj[v]).map(|(x, a)| x & a).collect();
            if np.iter().all(|&w| w == 0) {
                if r.len() > self.best {
                    self.best = r.len();
                    self.found.clear();
                }
                if r.len() == self.best {
                    self.found.push(r.clone());
                }
            } else if !self.expand(r, np) {
                return false;
            }
            r.pop();
            clear(&mut p, v);
        }
        true
    }
}

fn first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn clear(bits: &mut [u64], v: usize) {
    bits[v / 64] &= !(1u64 << (v % 64));
}

/// Largest 2-intersecting families of matchings of `K_2k` by exhaustive
/// search, for `k <= 4`; at `k = 5` only the ratio-bound certificate from
/// the explicit matrix is produced.
pub fn verify_main_theorem(k: usize, exec: Execution) -> Result<MainTheoremReport> {
    if !(3..=5).contains(&k) {
        return Err(Error::domain(format!("main theorem check runs for k in 3..=5, got {k}")));
    }
    let expected = double_factorial(2 * k as i64 - 5)?.to_u64().expect("small");
    let weighted = verify_weighted_matrix(k, exec)?;
    let mut certificate = weighted.certificate.clone();
    if k == 5 {
        return Ok(MainTheoremReport {
            k,
            alpha: None,
            expected,
            maximum_families: 0,
            all_canonical: None,
            tight_eigenvector: None,
            nodes: 0,
            inconclusive: false,
            certificate: Some(certificate),
        });
    }

    let ms: Vec<PerfectMatching> = enumerate_matchings(k)?.collect();
    let n = ms.len();
    let words = n.div_ceil(64);
    let adj: Vec<Vec<u64>> = exec.map(&ms, |p| {
        let mut row = vec![0u64; words];
        for (j, q) in ms.iter().enumerate() {
            if p != q && intersection_size(p, q).expect("same k") >= 2 {
                row[j / 64] |= 1 << (j % 64);
            }
        }
        row
    });
    let mut search = CliqueSearch { adj: &adj, best: 0, found: vec![], nodes: 0, guard: NODE_GUARD };
    let mut all = vec![0u64; words];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }
    let finished = search.expand(&mut Vec::new(), all);
    let alpha = finished.then_some(search.best);

    let canonical = |fam: &[usize]| {
        let first = &ms[fam[0]];
        let common: Vec<(usize, usize)> =
            first.edges0().filter(|&(a, b)| fam.iter().all(|&i| ms[i].partner(a) == b)).collect();
        common.len() >= 2 || fam.len() == 1
    };
    let all_canonical = finished.then(|| search.found.iter().all(|f| canonical(f)));

    let table = ClassTable::build(k, exec)?;
    let dense = weighted.matrix.dense(&table)?;
    let family = canonical_coclique(k, &[(1, 2), (3, 4)])?;
    let members: Vec<usize> =
        table.matchings.iter().enumerate().filter(|(_, m)| family.contains(m)).map(|(i, _)| i).collect();
    let shift = rational::int(members.len() as i64) / rational::int(n as i64);
    let vec: Vec<Rational> =
        (0..n).map(|i| if members.contains(&i) { Rational::one() - &shift } else { -shift.clone() }).collect();
    let tau = &weighted.certificate.tau;
    let tight = (0..n).all(|i| {
        let mv: Rational = (0..n).map(|j| &dense[i * n + j] * &vec[j]).sum();
        mv == tau * &vec[i]
    });
    certificate.achieved = alpha.map(|a| a as u64);
    Ok(MainTheoremReport {
        k,
        alpha,
        expected,
        maximum_families: search.found.len(),
        all_canonical,
        tight_eigenvector: Some(tight),
        nodes: search.nodes,
        inconclusive: !finished,
        certificate: Some(certificate),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn canonical_sizes() {
        assert_eq!(canonical_coclique(4, &[(1, 2), (3, 4)]).unwrap().len(), 3);
        assert_eq!(canonical_coclique(3, &[(1, 2), (3, 4)]).unwrap().len(), 1);
        let fam = canonical_coclique(5, &[(1, 2), (5, 9)]).unwrap();
        assert_eq!(fam.len(), 15);
        assert!(fam.iter().all(|m| m.contains_edge(0, 1) && m.contains_edge(4, 8)));
        assert!(canonical_coclique(4, &[(1, 2), (2, 3)]).is_err());
    }

    #[test]
    fn coefficients_at_k5_and_k10() {
        let s = solve_weight_coefficients(5).unwrap();
        assert_eq!(s.values, vec![ratio(1, 32), ratio(1, 8), ratio(1, 8)]);
        assert_eq!(s.row_sum, int(62));
        let s = solve_weight_coefficients(10).unwrap();
        assert_eq!(s.values, vec![ratio(1, 2580480), ratio(1, 645120), ratio(1, 645120)]);
        assert_eq!(s.row_sum, int(322));
        assert!(s.matches_closed_form);
    }

    #[test]
    fn small_matrices_row_sums() {
        for (k, d) in [(3, 14), (4, 34), (5, 62), (7, 142), (8, 194), (9, 254)] {
            assert_eq!(small_value_matrix(k).unwrap().row_sum().unwrap(), int(d), "k = {k}");
        }
    }

    #[test]
    fn k4_weighted_matrix() {
        let r = verify_weighted_matrix(4, Execution::default()).unwrap();
        assert!(r.valid, "{:?}", r.notes);
        let vals: Vec<Rational> = r.modules.iter().map(|m| m.eigenvalue.clone()).collect();
        assert_eq!(vals, vec![int(34), int(-1), int(-1), int(-1), int(4)]);
        assert_eq!(r.certificate.bound, int(3));
    }

    #[test]
    fn k4_main_theorem() {
        let r = verify_main_theorem(4, Execution::default()).unwrap();
        assert_eq!(r.alpha, Some(3));
        assert_eq!(r.all_canonical, Some(true));
        assert_eq!(r.tight_eigenvector, Some(true));
        assert_eq!(r.maximum_families, 210);
        let r = verify_main_theorem(3, Execution::default()).unwrap();
        assert_eq!(r.alpha, Some(1));
    }

    #[test]
    fn span_k4() {
        let r = span_dimension_check(4).unwrap();
        assert_eq!((r.vectors, r.rank, r.expected, r.printed_formula), (210, 91, 91, 91));
    }

    #[test]
    fn bound_arithmetic() {
        let c = BoundCertificate::new(BigUint::from(945u32), ratio(62, 15), ratio(-1, 15)).unwrap();
        assert_eq!(c.bound, int(15));
        assert!(BoundCertificate::new(BigUint::from(945u32), int(1), int(1)).is_err());
    }
}

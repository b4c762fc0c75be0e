//! The acceptance suite: thirteen end-to-end checks over the library, each
//! reported as one pass/fail line. Shared by `pmscheme selftest` and the
//! `acceptance` test target.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;

use pmscheme::combinat::double_factorial;
use pmscheme::ekr::{
    canonical_coclique, clique_projection, solve_weight_coefficients, span_dimension_check, trace_bound_report,
    verify_main_theorem, verify_weighted_matrix,
};
use pmscheme::geometry::{build_clique, develop_plane, lemma_lines_with_zero, singer_difference_set};
use pmscheme::matchings::{enumerate_matchings, intersection_size, rank};
use pmscheme::quotient::{
    char_table_closed_form, conjecture_check, quotient_fixtures, spanning_set_rank_4sets, CharacterTable,
};
use pmscheme::rational::{self, int, ratio};
use pmscheme::{Execution, IntegerPartition, Result};

use crate::cache::Cache;
use crate::compute;

/// Criteria that fail for a documented reason: the printed closed forms do
/// not hold at `k = 6`, where two parts of `[2k-6,6]` coincide. The test
/// target still prints them as failures.
pub const KNOWN_FAILURES: &[(u8, &str)] = &[
    (3, "printed X_[2k-6,6]/[2k-6,6] does not hold at k = 6 (parts of [6,6] coincide)"),
    (4, "printed chi_[2k-6,6](A_[2k-6,6]) gives 132 at k = 6; the scheme has 136"),
];

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: u64,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.1} s, limit {} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.limit_seconds,
            self.detail
        )
    }
}

type Check = fn(&Ctx) -> Result<(bool, String)>;

pub const CRITERIA: [(u8, &str, u64, Check); 13] = [
    (1, "matching counts k = 1..7", 60, counting),
    (2, "character table at 2k = 8", 10, table_2k8),
    (3, "printed quotient matrices at k = 6, 7", 300, fixture_regression),
    (4, "partial table closed forms at k = 6, 7", 300, partial_table),
    (5, "weighted matrices M6, M8, M10", 30, small_weighted),
    (6, "weight coefficients k = 5..30", 10, coefficients),
    (7, "target-module eigenvalues at k = 6, 7", 300, target_modules),
    (8, "Singer planes and the clique on K_10", 30, singer_pipeline),
    (9, "clique projection at 2k = 10", 60, projection),
    (10, "exact coclique numbers at k = 3, 4", 300, independent_optimum),
    (11, "span ranks at k = 4, 5", 600, span_ranks),
    (12, "trace-bound report", 10, trace_report),
    (13, "conjecture probe k <= 5", 5, conjecture_probe),
];

pub struct Ctx {
    pub cache: Cache,
    pub exec: Execution,
}

pub fn run_criterion(ctx: &Ctx, id: u8) -> Option<CriterionOutcome> {
    let &(id, name, limit_seconds, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (mut passed, mut detail) = match check(ctx) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    let seconds = start.elapsed().as_secs_f64();
    if seconds > limit_seconds as f64 {
        passed = false;
        detail = format!("over the time limit; {detail}");
    }
    Some(CriterionOutcome { id, name, passed, detail, seconds, limit_seconds })
}

pub fn run_all(ctx: &Ctx, mut each: impl FnMut(&CriterionOutcome)) -> Vec<CriterionOutcome> {
    CRITERIA
        .iter()
        .filter_map(|c| {
            let out = run_criterion(ctx, c.0)?;
            each(&out);
            Some(out)
        })
        .collect()
}

fn p(parts: &[usize]) -> IntegerPartition {
    IntegerPartition::new(parts.to_vec()).expect("valid partition")
}

fn counting(_: &Ctx) -> Result<(bool, String)> {
    let mut counts = Vec::new();
    let mut ok = true;
    for k in 1..=7 {
        let mut n = 0usize;
        for (i, m) in enumerate_matchings(k)?.enumerate() {
            ok &= rank(&m) == i;
            n += 1;
        }
        ok &= BigUint::from(n) == double_factorial(2 * k as i64 - 1)?;
        counts.push(n.to_string());
    }
    Ok((ok, format!("counts {}", counts.join(", "))))
}

const TABLE_2K8: [(&[usize], [i64; 5]); 5] = [
    (&[8], [48, 32, 12, 12, 1]),
    (&[6, 2], [-8, 4, -2, 5, 1]),
    (&[4, 4], [-2, -8, 7, 2, 1]),
    (&[4, 2, 2], [4, -2, -2, -1, 1]),
    (&[2, 2, 2, 2], [-6, 8, 3, -6, 1]),
];

fn table_2k8(ctx: &Ctx) -> Result<(bool, String)> {
    let classes = [p(&[8]), p(&[6, 2]), p(&[4, 4]), p(&[4, 2, 2]), p(&[2, 2, 2, 2])];
    let t = compute::full_table(&ctx.cache, 4, ctx.exec)?;
    let mut wrong = Vec::new();
    for (module, row) in TABLE_2K8 {
        for (c, v) in classes.iter().zip(row) {
            let got = t.get(&p(module), c);
            if got != Some(&int(v)) {
                wrong.push(format!("chi_{}(A_{c}) = {:?}, printed {v}", p(module), got.map(rational::to_string)));
            }
        }
    }
    if wrong.is_empty() {
        Ok((true, "25/25 entries match".into()))
    } else {
        Ok((false, wrong.join("; ")))
    }
}

fn fixture_regression(ctx: &Ctx) -> Result<(bool, String)> {
    let mut detail = String::new();
    let mut ok = true;
    for k in [6, 7] {
        let (mut exact, mut corrected, mut bad) = (0, Vec::new(), Vec::new());
        let fixtures = quotient_fixtures();
        for f in &fixtures {
            let (Some(class), Some(sub)) = (f.class(k), f.subgroup(k)) else {
                bad.push(format!("{} (no shape)", f.name));
                continue;
            };
            let q = compute::quotient(&ctx.cache, k, &class, &sub, ctx.exec)?;
            if f.printed(k)?.as_ref() == Some(&q.entries) {
                exact += 1;
            } else if f.corrected(k)?.as_ref() == Some(&q.entries) {
                corrected.push(f.name);
            } else {
                bad.push(f.name.to_string());
            }
        }
        ok &= exact == fixtures.len();
        let _ = write!(detail, "k={k}: {exact}/{} exact", fixtures.len());
        if !corrected.is_empty() {
            let _ = write!(detail, ", only after the coincidence factor: {}", corrected.join(", "));
        }
        if !bad.is_empty() {
            let _ = write!(detail, ", mismatched: {}", bad.join(", "));
        }
        detail.push_str("; ");
    }
    Ok((ok, detail.trim_end_matches("; ").to_string()))
}

fn partial_table(ctx: &Ctx) -> Result<(bool, String)> {
    let mut detail = String::new();
    let mut ok = true;
    for k in [6, 7] {
        let t = compute::partial_table(&ctx.cache, k, ctx.exec)?;
        let (mut cells, mut exact, mut corrected, mut bad) = (0, 0, Vec::new(), Vec::new());
        for i in 0..5 {
            for j in 0..5 {
                let Some(cell) = char_table_closed_form(k, i, j)? else { continue };
                cells += 1;
                let got = t.entries[i][j].as_ref();
                let name = format!("chi_{}(A_{})", cell.module, cell.class);
                if got == Some(&cell.printed) {
                    exact += 1;
                } else if got == Some(&cell.corrected) {
                    corrected.push(name);
                } else {
                    bad.push(format!(
                        "{name} = {}, formula {}",
                        got.map_or("none".into(), rational::to_string),
                        rational::to_string(&cell.printed)
                    ));
                }
            }
        }
        ok &= exact == cells;
        let _ = write!(detail, "k={k}: {exact}/{cells} exact");
        if !corrected.is_empty() {
            let _ = write!(detail, ", only after the coincidence factor: {}", corrected.join(", "));
        }
        if !bad.is_empty() {
            let _ = write!(detail, ", mismatched: {}", bad.join(", "));
        }
        detail.push_str("; ");
    }
    Ok((ok, detail.trim_end_matches("; ").to_string()))
}

fn small_weighted(ctx: &Ctx) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, d) in [(3, 14), (4, 34), (5, 62)] {
        let r = verify_weighted_matrix(k, ctx.exec)?;
        ok &= r.valid && r.row_sum == int(d) && r.certificate.tau == int(-1) && r.certificate.tau_verified;
        parts.push(format!(
            "{}: row sum {}, least {}",
            r.matrix.name,
            rational::to_string(&r.row_sum),
            rational::to_string(&r.certificate.tau)
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn coefficients(_: &Ctx) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for k in 5..=30 {
        let s = solve_weight_coefficients(k)?;
        let ki = k as i64;
        if !s.matches_closed_form || s.row_sum != int((2 * ki - 1) * (2 * ki - 3) - 1) || s.determinant == int(0) {
            bad.push(k.to_string());
        }
    }
    let s10 = solve_weight_coefficients(10)?;
    let detail = format!("k=10 coefficients {}", s10.coefficients.join(", "));
    if bad.is_empty() {
        Ok((true, format!("all 26 values of k agree; {detail}")))
    } else {
        Ok((false, format!("failed at k = {}", bad.join(", "))))
    }
}

fn target_modules(ctx: &Ctx) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for k in [6, 7] {
        let r = verify_weighted_matrix(k, ctx.exec)?;
        let (got, predicted) = r.eigenvalue_2k6_6.clone().unwrap_or_default();
        ok &= r.target_modules_at_minus_one && !got.is_empty() && got == predicted;
        parts.push(format!(
            "k={k}: -1 on the three targets {}, [2k-6,6] value {got} (formula {predicted})",
            if r.target_modules_at_minus_one { "yes" } else { "no" }
        ));
    }
    parts.push("the least eigenvalue over all modules needs the full table and is not checked here".into());
    Ok((ok, parts.join("; ")))
}

fn singer_pipeline(ctx: &Ctx) -> Result<(bool, String)> {
    let mut ok = true;
    for n in [2u64, 4, 8] {
        let ds = singer_difference_set(n, 2)?;
        ok &= ds.lambda == 1 && ds.difference_counts()[1..].iter().all(|&c| c == 1);
    }
    for a in [2u32, 3] {
        let ds = singer_difference_set(1 << a, 2)?;
        ok &= lemma_lines_with_zero(&develop_plane(&ds)?, &ds.negated()).holds();
    }
    let c = build_clique(3, ctx.exec)?;
    let pairwise = c
        .matchings
        .iter()
        .enumerate()
        .all(|(i, p)| c.matchings[i + 1..].iter().all(|q| intersection_size(p, q).is_ok_and(|s| s <= 1)));
    let co = canonical_coclique(5, &[(1, 2), (3, 4)])?;
    let product = c.matchings.len() * co.len();
    ok &= c.matchings.len() == 63 && pairwise && BigUint::from(product) == double_factorial(9)?;
    Ok((
        ok,
        format!(
            "difference sets n = 2, 4, 8 have lambda 1; lines through 0 checked for a = 2, 3; clique of {} with pairwise intersections <= 1: {pairwise}; {} x {} = {product}",
            c.matchings.len(),
            c.matchings.len(),
            co.len()
        ),
    ))
}

fn projection(ctx: &Ctx) -> Result<(bool, String)> {
    let c = build_clique(3, ctx.exec)?;
    let r = clique_projection(5, &c.matchings, ctx.exec)?;
    let cert = &r.certificate;
    let ok = r.m_hat_psd
        && r.forbidden.is_empty()
        && cert.d == ratio(62, 15)
        && cert.tau == ratio(-1, 15)
        && cert.bound == int(15);
    Ok((
        ok,
        format!(
            "psd {}, forbidden classes {}, row sum {}, least {}, bound {}",
            r.m_hat_psd,
            r.forbidden.len(),
            rational::to_string(&cert.d),
            rational::to_string(&cert.tau),
            rational::to_string(&cert.bound)
        ),
    ))
}

fn independent_optimum(ctx: &Ctx) -> Result<(bool, String)> {
    let r3 = verify_main_theorem(3, ctx.exec)?;
    let r4 = verify_main_theorem(4, ctx.exec)?;
    let ok = r3.alpha == Some(1) && r4.alpha == Some(3) && r4.all_canonical == Some(true);
    Ok((
        ok,
        format!(
            "alpha(k=3) = {}, alpha(k=4) = {} over {} maximum families, all canonical {}",
            show(r3.alpha),
            show(r4.alpha),
            r4.maximum_families,
            show(r4.all_canonical)
        ),
    ))
}

fn show<T: ToString>(x: Option<T>) -> String {
    x.map_or("inconclusive".into(), |v| v.to_string())
}

fn span_ranks(_: &Ctx) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for k in [4, 5] {
        let f = spanning_set_rank_4sets(k)?;
        let s = span_dimension_check(k)?;
        ok &= f.rank == f.expected_rank && s.ok;
        if k == 4 {
            ok &= f.rank == 35 && s.rank == 91;
        }
        parts.push(format!(
            "k={k}: 4-set rank {} (expected {}), pair rank {} (expected {})",
            f.rank, f.expected_rank, s.rank, s.expected
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn trace_report(_: &Ctx) -> Result<(bool, String)> {
    let r = trace_bound_report(10..=40)?;
    let m_ok = r.rows.iter().filter(|x| x.k <= 20).all(|x| x.m123_match);
    let holds_ok = r.rows.iter().filter(|x| x.k >= 20).all(|x| x.holds_2k8_8);
    let full = trace_bound_report(6..=40)?;
    let thresholds: Vec<String> = full
        .thresholds
        .iter()
        .map(|(name, k)| format!("{name} from {}", k.map_or("never".into(), |k| k.to_string())))
        .collect();
    Ok((
        m_ok && holds_ok,
        format!(
            "m1..m3 match hook dimensions for k = 10..20: {m_ok}; [2k-8,8] holds for k = 20..40: {holds_ok}; thresholds over 6..40: {}",
            thresholds.join(", ")
        ),
    ))
}

fn conjecture_probe(ctx: &Ctx) -> Result<(bool, String)> {
    let mut observations = Vec::new();
    let mut stated = false;
    for k in 2..=5 {
        let t: CharacterTable = compute::full_table(&ctx.cache, k, ctx.exec)?;
        for row in conjecture_check(&t)?.rows {
            if k == 4 && row.module == p(&[6, 2]) {
                stated = row.max_classes == vec![p(&[4, 2, 2])] && row.observation.contains("[4,2,2]");
                observations.push(format!("k=4: {}", row.observation));
            }
        }
    }
    Ok((stated, observations.join("; ")))
}

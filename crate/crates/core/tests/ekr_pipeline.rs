use num_bigint::BigUint;
use pmscheme::combinat::double_factorial;
use pmscheme::ekr::{
    canonical_coclique, clique_projection, determinant_sweep, solve_weight_coefficients, span_dimension_check,
    trace_bound_report, verify_main_theorem, verify_weighted_matrix,
};
use pmscheme::geometry::{build_clique, develop_plane, lemma_lines_with_zero, singer_difference_set};
use pmscheme::matchings::intersection_size;
use pmscheme::quotient::spanning_set_rank_4sets;
use pmscheme::rational::{int, ratio};
use pmscheme::{Execution, IntegerPartition};

#[test]
fn singer_sets_and_lines_through_zero() {
    for n in [2u64, 4, 8] {
        let ds = singer_difference_set(n, 2).unwrap();
        let counts = ds.difference_counts();
        assert!(counts[1..].iter().all(|&c| c == 1), "n = {n}");
    }
    for n in [4u64, 8] {
        let ds = singer_difference_set(n, 2).unwrap();
        let plane = develop_plane(&ds).unwrap();
        let r = lemma_lines_with_zero(&plane, &ds.negated());
        assert!(r.holds(), "{r:?}");
    }
}

#[test]
fn clique_on_k10_meets_coclique() {
    let c = build_clique(3, Execution::default()).unwrap();
    assert_eq!(c.matchings.len(), 63);
    for (i, p) in c.matchings.iter().enumerate() {
        for q in &c.matchings[i + 1..] {
            assert!(intersection_size(p, q).unwrap() <= 1);
        }
    }
    let co = canonical_coclique(5, &[(1, 2), (3, 4)]).unwrap();
    assert_eq!(BigUint::from(c.matchings.len() * co.len()), double_factorial(9).unwrap());

    let r = clique_projection(5, &c.matchings, Execution::default()).unwrap();
    assert!(r.m_hat_psd);
    assert!(r.forbidden.is_empty());
    assert_eq!(r.certificate.d, ratio(62, 15));
    assert_eq!(r.certificate.tau, ratio(-1, 15));
    assert_eq!(r.certificate.bound, int(15));
}

#[test]
fn small_weighted_matrices() {
    for (k, d) in [(3, 14), (4, 34), (5, 62)] {
        let r = verify_weighted_matrix(k, Execution::default()).unwrap();
        assert!(r.valid, "k = {k}: {:?}", r.notes);
        assert_eq!(r.row_sum, int(d));
        assert_eq!(r.certificate.tau, int(-1));
    }
}

#[test]
fn coefficients_for_k5_to_30() {
    for k in 5..=30 {
        let s = solve_weight_coefficients(k).unwrap();
        assert!(s.matches_closed_form, "k = {k}");
        let ki = k as i64;
        assert_eq!(s.row_sum, int((2 * ki - 1) * (2 * ki - 3) - 1));
    }
    let sweep = determinant_sweep(4..=12).unwrap();
    assert!(sweep.iter().all(|(_, d)| d.as_ref().is_some_and(|d| *d != int(0))));
}

#[test]
fn weighted_matrix_at_k6_and_k7() {
    for k in [6, 7] {
        let r = verify_weighted_matrix(k, Execution::default()).unwrap();
        assert!(r.target_modules_at_minus_one, "k = {k}");
        let (got, predicted) = r.eigenvalue_2k6_6.clone().unwrap();
        assert_eq!(got, predicted);
        assert!(r.valid);
        assert!(!r.certificate.tau_verified);
    }
}

#[test]
fn trace_report() {
    let r = trace_bound_report(10..=40).unwrap();
    assert!(r.rows.iter().filter(|x| x.k <= 20).all(|x| x.m123_match && x.quartic_matches));
    assert!(r.rows.iter().filter(|x| x.k >= 20).all(|x| x.holds_2k8_8));
    let t: Vec<_> = r.thresholds.iter().map(|(_, k)| *k).collect();
    assert_eq!(t, vec![Some(10), Some(12), Some(13), Some(11), Some(11)]);
}

#[test]
fn span_ranks() {
    let s = span_dimension_check(4).unwrap();
    assert_eq!((s.vectors, s.rank, s.expected), (210, 91, 91));
    assert!(span_dimension_check(5).unwrap().ok);
    let f = spanning_set_rank_4sets(4).unwrap();
    assert_eq!(f.rank, 35);
    assert!(f.rank_ok && f.gram_ok);
    let f = spanning_set_rank_4sets(5).unwrap();
    assert_eq!(f.rank, f.expected_rank);
}

#[test]
fn exact_coclique_numbers() {
    let r = verify_main_theorem(3, Execution::default()).unwrap();
    assert_eq!(r.alpha, Some(1));
    let r = verify_main_theorem(4, Execution::default()).unwrap();
    assert_eq!(r.alpha, Some(3));
    assert_eq!(r.all_canonical, Some(true));
    assert_eq!(r.tight_eigenvector, Some(true));
    let shape = IntegerPartition::new(vec![2, 2, 2, 2]).unwrap();
    assert!(r.certificate.unwrap().modules_at_tau.iter().all(|m| *m != shape));
}

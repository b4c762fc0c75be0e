//! Rank of the vectors `w_S`: for a 4-set `S`, the indicator of matchings
//! that contain two edges inside `S`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::combinat::{binomial, double_factorial, hook_dimension};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matchings::{enumerate_matchings, PerfectMatching};

use super::generic_shape;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FourSetReport {
    pub k: usize,
    pub matchings: usize,
    pub four_sets: usize,
    /// Observed `N^T N` entry for each intersection size 0..=4, or `None`
    /// if the entry was not constant on that intersection size.
    pub gram_by_intersection: Vec<Option<u64>>,
    /// Direct count of the entry for each intersection size:
    /// `9(2k-9)!!, 0, (2k-7)!!, 0, 3(2k-5)!!`.
    pub gram_expected: Vec<u64>,
    /// The identity coefficient as printed, `(2k-5)!!`.
    pub printed_identity_coefficient: u64,
    pub rank: usize,
    /// `1 + dim[2k-2,2] + dim[2k-4,4]`.
    pub expected_rank: usize,
    /// The printed multiplicity of 0, `2k-1 + C(2k,4) - C(2k,3)`.
    pub printed_nullity: i64,
    pub observed_nullity: usize,
    pub gram_ok: bool,
    pub rank_ok: bool,
}

fn df_u64(m: i64) -> Result<u64> {
    let v = double_factorial(m)?;
    u64::try_from(v).map_err(|_| Error::Capacity { what: "double factorial".into(), limit: u64::MAX })
}

fn to_usize(v: BigUint) -> usize {
    usize::try_from(v).unwrap_or(usize::MAX)
}

/// The 4-subsets of `0..n` as bitmasks, in lexicographic order.
pub(crate) fn four_subsets(n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    out.push((1 << a) | (1 << b) | (1 << c) | (1 << d));
                }
            }
        }
    }
    out
}

/// Whether `m` pairs up the four points of `s` among themselves.
pub(crate) fn pairs_within(m: &PerfectMatching, s: u64) -> bool {
    let mut bits = s;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if s & (1 << m.partner(v)) == 0 {
            return false;
        }
    }
    true
}

/// Builds `N` (matchings x 4-sets), checks `N^T N` against the direct count
/// by intersection size, and compares `rank N` with
/// `1 + dim[2k-2,2] + dim[2k-4,4]`. Dense, so `k` is limited to 4 and 5.
pub fn spanning_set_rank_4sets(k: usize) -> Result<FourSetReport> {
    if !(4..=5).contains(&k) {
        return Err(Error::domain(format!("spanning-set check runs for k in 4..=5, got {k}")));
    }
    let n = 2 * k;
    let sets = four_subsets(n);
    let ms: Vec<PerfectMatching> = enumerate_matchings(k)?.collect();

    let columns: Vec<Vec<u32>> =
        sets.iter().map(|&s| (0..ms.len() as u32).filter(|&i| pairs_within(&ms[i as usize], s)).collect()).collect();

    let mut observed: Vec<Option<Option<u64>>> = vec![None; 5];
    for (i, a) in columns.iter().enumerate() {
        for (j, b) in columns.iter().enumerate().skip(i) {
            let dot = count_common(a, b);
            let meet = (sets[i] & sets[j]).count_ones() as usize;
            observed[meet] = match observed[meet] {
                None => Some(Some(dot)),
                Some(Some(prev)) if prev == dot => Some(Some(prev)),
                _ => Some(None),
            };
        }
    }
    let gram_by_intersection: Vec<Option<u64>> = observed.into_iter().map(Option::flatten).collect();

    let k = k as i64;
    let gram_expected = vec![9 * df_u64(2 * k - 9)?, 0, df_u64(2 * k - 7)?, 0, 3 * df_u64(2 * k - 5)?];
    let gram_ok = gram_by_intersection.iter().zip(&gram_expected).all(|(o, e)| *o == Some(*e));

    let mut rows = vec![vec![0i64; sets.len()]; ms.len()];
    for (j, col) in columns.iter().enumerate() {
        for &i in col {
            rows[i as usize][j] = 1;
        }
    }
    let rank = linalg::integer_rank(&rows);
    let ku = k as usize;
    let dim = |rest: &[usize]| to_usize(hook_dimension(&generic_shape(ku, rest).expect("k >= 4")));
    let expected_rank = 1 + dim(&[2]) + dim(&[4]);
    let nu = n as u64;
    let printed_nullity = (2 * k - 1) + to_usize(binomial(nu, 4)) as i64 - to_usize(binomial(nu, 3)) as i64;
    Ok(FourSetReport {
        k: ku,
        matchings: ms.len(),
        four_sets: sets.len(),
        gram_by_intersection,
        gram_expected,
        printed_identity_coefficient: df_u64(2 * k - 5)?,
        rank,
        expected_rank,
        printed_nullity,
        observed_nullity: sets.len() - rank,
        gram_ok,
        rank_ok: rank == expected_rank,
    })
}

fn count_common(a: &[u32], b: &[u32]) -> u64 {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_report() {
        let r = spanning_set_rank_4sets(4).unwrap();
        assert_eq!((r.matchings, r.four_sets), (105, 70));
        assert!(r.gram_ok, "{:?}", r.gram_by_intersection);
        assert_eq!(r.gram_by_intersection[4], Some(9));
        assert_eq!(r.gram_by_intersection[0], Some(9));
        assert_eq!(r.rank, 35);
        assert!(r.rank_ok);
        assert_eq!(r.printed_nullity, 21);
        assert_eq!(r.observed_nullity, 35);
    }

    #[test]
    fn out_of_range() {
        assert!(spanning_set_rank_4sets(3).is_err());
    }
}

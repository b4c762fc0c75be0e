//! Library calls routed through the cache. Cached values are re-checked on
//! load before they are trusted.

use pmscheme::quotient::{full_char_table_small, partial_char_table, quotient_matrix, CharacterTable, QuotientMatrix};
use pmscheme::scheme::class_degree_formula;
use pmscheme::{rational, Execution, IntegerPartition, Result};

use crate::cache::Cache;

pub fn full_table(cache: &Cache, k: usize, exec: Execution) -> Result<CharacterTable> {
    cache.get_or_compute(
        "char-table",
        k,
        "full",
        |t: &CharacterTable| t.k == k && t.is_full() && t.verify_orthogonality().is_ok(),
        || full_char_table_small(k, exec),
    )
}

pub fn partial_table(cache: &Cache, k: usize, exec: Execution) -> Result<CharacterTable> {
    cache.get_or_compute(
        "char-table",
        k,
        "partial",
        |t: &CharacterTable| {
            t.k == k && t.modules.len() == 5 && t.classes.len() == 5 && t.entries.iter().all(|r| r.len() == 5)
        },
        || partial_char_table(k, exec),
    )
}

pub fn quotient(
    cache: &Cache,
    k: usize,
    class: &IntegerPartition,
    subgroup: &IntegerPartition,
    exec: Execution,
) -> Result<QuotientMatrix> {
    let degree = class_degree_formula(k, class)?;
    let degree = rational::big(num_bigint::BigInt::from(degree));
    cache.get_or_compute(
        "quotient",
        k,
        &format!("{class}/{subgroup}"),
        |q: &QuotientMatrix| {
            q.k == k
                && &q.class == class
                && &q.subgroup == subgroup
                && q.entries
                    .iter()
                    .all(|r| r.len() == q.entries.len() && r.iter().sum::<rational::Rational>() == degree)
        },
        || quotient_matrix(k, class, subgroup, exec),
    )
}

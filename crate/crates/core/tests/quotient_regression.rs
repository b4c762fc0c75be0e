use pmscheme::quotient::{
    char_table_closed_form, partial_char_table, quotient_fixtures, quotient_matrix, CharacterTable,
};
use pmscheme::rational;
use pmscheme::Execution;

fn fixture_mismatches(k: usize) -> Vec<String> {
    let mut bad = Vec::new();
    for f in quotient_fixtures() {
        let (Some(class), Some(sub)) = (f.class(k), f.subgroup(k)) else {
            bad.push(format!("{}: shape missing", f.name));
            continue;
        };
        let q = quotient_matrix(k, &class, &sub, Execution::default()).unwrap();
        let printed = f.printed(k).unwrap();
        let corrected = f.corrected(k).unwrap();
        if printed.as_ref() != Some(&q.entries) && corrected.as_ref() != Some(&q.entries) {
            bad.push(f.name.to_string());
        }
    }
    bad
}

#[test]
fn fixtures_match_brute_force_at_k7() {
    assert_eq!(fixture_mismatches(7), Vec::<String>::new());
}

#[test]
fn fixtures_at_k6_differ_only_where_parts_coincide() {
    assert_eq!(fixture_mismatches(6), vec!["X_[2k-6,6]/[2k-6,6]".to_string()]);
}

#[test]
fn first_fixture_at_k6() {
    let f = &quotient_fixtures()[0];
    let q = quotient_matrix(6, &f.class(6).unwrap(), &f.subgroup(6).unwrap(), Execution::default()).unwrap();
    let got: Vec<Vec<String>> = q.entries.iter().map(|r| r.iter().map(rational::to_string).collect()).collect();
    assert_eq!(got, vec![vec!["0/1", "3840/1"], vec!["384/1", "3456/1"]]);
}

fn partial_table_mismatches(k: usize) -> Vec<(usize, usize)> {
    let table = partial_char_table(k, Execution::default()).unwrap();
    let mut bad = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            let Some(cell) = char_table_closed_form(k, i, j).unwrap() else { continue };
            let got = table.entries[i][j].as_ref();
            if got != Some(&cell.printed) && got != Some(&cell.corrected) {
                bad.push((i, j));
            }
        }
    }
    bad
}

#[test]
fn partial_table_matches_closed_forms_at_k7_and_k8() {
    assert_eq!(partial_table_mismatches(7), vec![]);
    assert_eq!(partial_table_mismatches(8), vec![]);
}

#[test]
fn partial_table_at_k6_misses_one_cell() {
    // chi_[6,6](A_[6,6]): computed 136, the formula gives 132.
    assert_eq!(partial_table_mismatches(6), vec![(4, 4)]);
    let table = partial_char_table(6, Execution::default()).unwrap();
    assert_eq!(table.entries[4][4], Some(rational::int(136)));
    assert_eq!(table.entries[1][0], Some(-rational::int(384)));
}

#[test]
fn filled_partial_table_round_trips() {
    let t = partial_char_table(7, Execution::default()).unwrap();
    assert!(t.is_complete() && !t.is_full());
    assert_eq!(CharacterTable::from_json(&t.to_json().unwrap()).unwrap(), t);
}

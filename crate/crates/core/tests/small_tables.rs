use pmscheme::quotient::{conjecture_check, full_char_table_small, CharacterTable};
use pmscheme::{rational, Execution, IntegerPartition};

fn p(parts: &[usize]) -> IntegerPartition {
    IntegerPartition::new(parts.to_vec()).unwrap()
}

#[test]
fn table_2k8_matches_printed() {
    let classes = [p(&[8]), p(&[6, 2]), p(&[4, 4]), p(&[4, 2, 2]), p(&[2, 2, 2, 2])];
    let printed: [(&[usize], [i64; 5]); 5] = [
        (&[8], [48, 32, 12, 12, 1]),
        (&[6, 2], [-8, 4, -2, 5, 1]),
        (&[4, 4], [-2, -8, 7, 2, 1]),
        (&[4, 2, 2], [4, -2, -2, -1, 1]),
        (&[2, 2, 2, 2], [-6, 8, 3, -6, 1]),
    ];
    let t = full_char_table_small(4, Execution::default()).unwrap();
    assert!(t.is_complete());
    for (module, row) in printed {
        for (c, v) in classes.iter().zip(row) {
            assert_eq!(t.get(&p(module), c), Some(&rational::int(v)), "module {module:?} class {c}");
        }
    }
}

#[test]
fn tables_are_orthogonal_and_round_trip() {
    for k in 2..=5 {
        let t = full_char_table_small(k, Execution::default()).unwrap();
        t.verify_orthogonality().unwrap();
        let back = CharacterTable::from_json(&t.to_json().unwrap()).unwrap();
        assert_eq!(back, t);
    }
}

#[test]
fn sequential_and_parallel_tables_agree() {
    let a = full_char_table_small(4, Execution::Sequential).unwrap();
    let b = full_char_table_small(4, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn conjecture_report_on_k4() {
    let t = full_char_table_small(4, Execution::default()).unwrap();
    let r = conjecture_check(&t).unwrap();
    let row = r.rows.iter().find(|r| r.module == p(&[6, 2])).unwrap();
    assert_eq!(row.max_classes, vec![p(&[4, 2, 2])]);
    assert!(!row.max_at_own_class);
    assert!(row.observation.contains("[4, 2, 2]") || row.observation.contains("[4,2,2]"), "{}", row.observation);
}

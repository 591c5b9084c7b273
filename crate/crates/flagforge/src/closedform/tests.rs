use super::*;
use crate::catalog::build_entry;
use crate::flagcalc::{build_graph, flag_orbits, pair_classes, BuildMode};

#[test]
fn companion_integer_examples() {
    let f4 = FieldTable::get(2, 2).unwrap();
    // t = 1 divides everything
    assert_eq!(mparam(&f4, 1, 0, 2, 1), 1);
    // q = 4, t = 3, s = 2: 3 | theta*3*(4^m-1)/3 always
    for theta in 1..4 {
        assert_eq!(mparam(&f4, 3, 0, 2, theta), 1);
    }
    // q = 8, t = 3, e = 0, s = 1, theta = 1: scan hits m = 2
    let f8 = FieldTable::get(2, 3).unwrap();
    assert_eq!(mparam(&f8, 3, 0, 1, 1), 2);
}

#[test]
fn overlap_rules_match_table_rows() {
    assert_eq!(overlap_valencies(5, SymFlavor::Alternating), vec![2]);
    assert_eq!(overlap_valencies(5, SymFlavor::Symmetric), vec![2, 4]);
    assert_eq!(overlap_valencies(6, SymFlavor::Alternating), vec![3, 6]);
    assert_eq!(overlap_valencies(6, SymFlavor::Symmetric), vec![3, 12]);
    assert_eq!(overlap_valencies(8, SymFlavor::Alternating), vec![5, 30, 40]);
    validate_expectation_table().unwrap();
}

#[test]
fn expectation_rows_parse() {
    let rows = all_expectations().unwrap();
    assert!(rows.len() >= 20);
    let m24 = improper_predictions("M24").unwrap();
    assert_eq!(m24.order, 6072);
    assert_eq!(m24.ell_multiset, Some(vec![1, 30, 40, 160]));
    assert_eq!(m24.cross_block, Some(231));
    assert!(improper_predictions("PSL2_11").is_err());
    assert!(expects_no_graph("PSL2_11").unwrap());
    assert!(!expects_no_graph("M24").unwrap());
    assert!(expects_no_graph("NotAnEntry").is_err());
}

#[test]
fn plane_prediction_smallest_plane() {
    let e = build_entry("PSL3_2").unwrap();
    let pred = plane_prediction(&e).unwrap();
    assert_eq!((pred.t, pred.e, pred.s), (1, 0, 1));
    assert_eq!(pred.order, 28);
    assert_eq!(pred.cross_block, 2);
    assert_eq!(pred.ell_multiset(), vec![1, 1]);
    assert_eq!(pred.valency_multiset(), vec![3, 3]);
}

#[test]
fn plane_prediction_levels_over_four_elements() {
    // the three-element diagonal level: one matching class, three pencil
    // classes with ell = 1, two generic classes with ell = 4
    let psl = plane_prediction(&build_entry("PSL3_4").unwrap()).unwrap();
    assert_eq!((psl.t, psl.e, psl.s), (3, 0, 2));
    assert_eq!(psl.order, 336);
    assert_eq!(psl.ell_multiset(), vec![1, 1, 1, 1, 4, 4]);

    // with the full diagonal group the pencil classes merge: ell = q-1
    let pgl = plane_prediction(&build_entry("PGL3_4").unwrap()).unwrap();
    assert_eq!(pgl.t, 1);
    assert!(pgl
        .classes
        .iter()
        .any(|c| c.case == PlaneCase::A2 && c.ell == 3));
    assert!(pgl.valency_multiset().contains(&45));
}

#[test]
fn plane_cases_partition_the_candidates() {
    for name in ["PSL3_2", "PSL3_3", "PSL3_4", "PGL3_4", "PSigmaL3_4", "PGammaL3_4"] {
        let e = build_entry(name).unwrap();
        let pred = plane_prediction(&e).unwrap();
        let q = pred.q as u64;
        let total: u64 = pred.classes.iter().map(|c| c.ell * c.multiplicity).sum();
        assert_eq!(total, q * (q - 1), "{}", name);
        // f = 1 is rejected
        let field = FieldTable::get(e.plane.as_ref().unwrap().p, e.plane.as_ref().unwrap().n)
            .unwrap();
        assert!(plane_candidate_ell(&field, (pred.t, pred.e, pred.s), 1, 0).is_err());
    }
}

#[test]
fn pipeline_matches_prediction_on_small_planes() {
    for name in ["PSL3_2", "PSL3_3", "PSL3_4"] {
        let e = build_entry(name).unwrap();
        let pred = plane_prediction(&e).unwrap();
        let orbs = flag_orbits(&e);
        let feas: Vec<_> = orbs.iter().filter(|o| o.feasible).collect();
        assert_eq!(feas.len(), 1, "{}", name);
        assert_eq!(feas[0].size, pred.order, "{}", name);
        let classes = pair_classes(&e, feas[0]).unwrap();
        // every class of a plane entry is self-paired
        assert!(classes.iter().all(|c| c.self_paired), "{}", name);
        let mut got: Vec<u64> = classes.iter().map(|c| c.ell).collect();
        got.sort_unstable();
        assert_eq!(got, pred.ell_multiset(), "{}", name);
        for c in &classes {
            let (report, _) = build_graph(&e, feas[0], c, BuildMode::Stats, 1).unwrap();
            assert_eq!(report.cross_block_vertex_count, pred.cross_block, "{}", name);
        }
    }
}

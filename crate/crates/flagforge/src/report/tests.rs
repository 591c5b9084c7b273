use super::*;
use crate::catalog::build_entry;

#[test]
fn analyze_reports_are_deterministic_and_sound() {
    let e = build_entry("AGL1_5").unwrap();
    let a = analyze_entry(&e, BuildMode::Full, 1).unwrap();
    assert!(a.feasible);
    assert!(a.all_checks_passed);
    assert_eq!(a.schema, 1);
    let j1 = serde_json::to_string_pretty(&a).unwrap();
    let b = analyze_entry(&e, BuildMode::Full, 3).unwrap();
    let j2 = serde_json::to_string_pretty(&b).unwrap();
    assert_eq!(j1, j2);
    // 1-based points throughout
    assert!(a.flag_orbits[0].representative.point >= 1);
    assert!(a
        .flag_orbits
        .iter()
        .all(|o| o.representative.co_block.iter().all(|&p| (1..=5).contains(&p))));
}

#[test]
fn analyze_handles_infeasible_entries() {
    let e = build_entry("PSL2_11").unwrap();
    let a = analyze_entry(&e, BuildMode::Stats, 1).unwrap();
    assert!(!a.feasible);
    assert!(a.classes.is_empty());
    assert!(a.all_checks_passed);
}

#[test]
fn edge_list_and_sidecar_shapes() {
    let e = build_entry("AGL1_4").unwrap();
    let (_, _, g) = build_class_graph(&e, 0, 1).unwrap();
    let el = edge_list(&g);
    assert_eq!(el.lines().count(), 6); // 12 vertices of valency 1
    let vt = vertex_table(&e, &g);
    assert_eq!(vt.lines().count(), 12);
    // every edge references listed vertices
    for line in el.lines() {
        let mut it = line.split_whitespace();
        let a: usize = it.next().unwrap().parse().unwrap();
        let b: usize = it.next().unwrap().parse().unwrap();
        assert!(a >= 1 && b >= 1 && a <= 12 && b <= 12 && a < b);
    }
}

#[test]
fn graph6_small_header_and_content() {
    let e = build_entry("AGL1_4").unwrap();
    let (_, _, g) = build_class_graph(&e, 0, 1).unwrap();
    let bytes = graph6(&g).unwrap();
    assert_eq!(bytes[0], 12 + 63); // 12 vertices, short form
    // 66 upper-triangle bits -> 11 data bytes + header + newline
    assert_eq!(bytes.len(), 1 + 11 + 1);
    assert_eq!(*bytes.last().unwrap(), b'\n');
    // exactly 6 one-bits in the payload
    let ones: u32 = bytes[1..12].iter().map(|b| (b - 63).count_ones()).sum();
    assert_eq!(ones, 6);
    // deterministic re-encode
    assert_eq!(bytes, graph6(&g).unwrap());
}

#[test]
fn graph6_long_header() {
    let e = build_entry("PGammaL2_8").unwrap();
    let (_, _, g) = build_class_graph(&e, 0, 2).unwrap();
    assert_eq!(g.vertices.len(), 252);
    let bytes = graph6(&g).unwrap();
    assert_eq!(bytes[0], 126);
    let n = (((bytes[1] - 63) as usize) << 12)
        | (((bytes[2] - 63) as usize) << 6)
        | ((bytes[3] - 63) as usize);
    assert_eq!(n, 252);
    let ones: u32 = bytes[4..bytes.len() - 1]
        .iter()
        .map(|b| (b - 63).count_ones())
        .sum();
    assert_eq!(ones as u128, g.edge_count());
}

#[test]
fn verify_rows_for_each_kind() {
    let ok = verify_expectation_entry(&build_entry("ASL2_3").unwrap()).unwrap();
    assert!(ok.ok, "{:?}", ok.details);
    let plane = verify_plane_entry(&build_entry("PSL3_2").unwrap(), 1).unwrap();
    assert!(plane.ok, "{:?}", plane.details);
    let non = verify_nonexistence_entry(&build_entry("PGammaL2_5").unwrap()).unwrap();
    assert!(non.ok, "{:?}", non.details);
}

#[test]
fn class_graph_rejects_bad_requests() {
    let e = build_entry("AGL1_4").unwrap();
    assert!(build_class_graph(&e, 99, 1).is_err());
    let inf = build_entry("PSL2_11").unwrap();
    assert!(build_class_graph(&inf, 0, 1).is_err());
}

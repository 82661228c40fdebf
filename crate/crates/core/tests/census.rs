use std::collections::HashSet;
use std::sync::OnceLock;

use torusknot::census::{
    build_census, build_census_logged, emit, parse_expected, render_svg, stats, verify_expected, CensusError,
    CensusLog, CensusTable, EmitFormat,
};
use torusknot::diagram::{canonical_key, Quotient};
use torusknot::invariant::{canonical_invariant, graded_x};
use torusknot::moves::{equivalence_search, find_moves, MoveKind, SearchOutcome};
use torusknot::TorusProjection;

fn census() -> &'static (CensusTable, CensusLog) {
    static CELL: OnceLock<(CensusTable, CensusLog)> = OnceLock::new();
    CELL.get_or_init(|| build_census_logged(4).expect("census builds"))
}

#[test]
fn every_same_invariant_pair_is_resolved() {
    let (table, log) = census();
    assert!(log.unresolved.is_empty(), "{:?}", log.unresolved);
    assert!(build_census(2).is_ok());
    let names: HashSet<&str> = table.records.iter().map(|r| r.name.as_str()).collect();
    assert_eq!(names.len(), table.records.len());
}

#[test]
fn records_are_reduced_and_distinct() {
    let (table, _) = census();
    let mut keys = HashSet::new();
    for r in &table.records {
        assert!(
            !find_moves(&r.diagram).iter().any(|s| matches!(s.kind(), MoveKind::R1Down | MoveKind::R2Down)),
            "{} reducible",
            r.name
        );
        assert!(keys.insert(canonical_key(&r.diagram, Quotient::KNOT)));
        assert_eq!(r.invariant, canonical_invariant(&r.diagram));
    }
    // records sharing X are told apart by the graded refinement
    for (i, a) in table.records.iter().enumerate() {
        for b in &table.records[i + 1..] {
            if a.invariant == b.invariant {
                assert!(graded_x(&a.diagram).separates(&graded_x(&b.diagram)), "{} {}", a.name, b.name);
            }
        }
    }
}

#[test]
fn logged_merges_are_reproducible() {
    let (_, log) = census();
    for (a, b) in &log.invariant_merges {
        let (a, b) = (torusknot::decode_diagram(a).unwrap(), torusknot::decode_diagram(b).unwrap());
        let cap = a.crossings().max(b.crossings()) + 2;
        assert!(matches!(equivalence_search(&a, &b, cap, 200_000), Ok(SearchOutcome::Equivalent { .. })));
    }
}

#[test]
fn x_degree_parity_follows_class() {
    assert!(stats(&census().0).parity_violations.is_empty());
}

#[test]
fn small_census() {
    let t = build_census(1).unwrap();
    let names: Vec<&str> = t.records.iter().map(|r| r.name.as_str()).collect();
    assert_eq!(names, ["0_1", "1_1"]);
    assert_eq!(t.records[0].polynomial.encode(), "x");
    assert!(matches!(build_census(5), Err(CensusError::TooLarge(5))));
}

#[test]
fn json_round_trip() {
    let table = &census().0;
    let text = emit(table, EmitFormat::Json);
    let back = CensusTable::from_json(&text).unwrap();
    assert_eq!(&back, table);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for field in ["slot_order", "face_rule", "smoothing_rule"] {
        assert!(v["conventions"][field].is_string());
    }
    assert_eq!(v["records"].as_array().unwrap().len(), table.records.len());
}

#[test]
fn csv_and_latex() {
    let table = &census().0;
    let csv = emit(table, EmitFormat::Csv);
    assert_eq!(csv.lines().count(), table.records.len() + 1);
    assert!(csv.starts_with("name,tkc,"));
    let tex = emit(table, EmitFormat::Latex);
    assert!(tex.contains("\\begin{longtable}") && tex.contains("$4_{1}$"));
}

#[test]
fn svg_has_one_group_per_edge() {
    for r in &census().0.records {
        let svg = render_svg(&r.diagram);
        let edges = match r.diagram.projection() {
            TorusProjection::Circle(_) => 1,
            TorusProjection::Graph { map, .. } => map.edges().len(),
        };
        assert_eq!(svg.matches("<g class=\"edge\"").count(), edges, "{}", r.name);
    }
}

#[test]
fn self_verification_is_perfect() {
    let table = &census().0;
    let own: String = table
        .records
        .iter()
        .map(|r| format!("{}: {}\n", r.name, r.polynomial.mirror_a()))
        .collect();
    let report = verify_expected(table, &parse_expected(&own).unwrap());
    assert!(report.is_perfect());
    assert!(report.matched.iter().all(|m| m.0 == m.1));
}

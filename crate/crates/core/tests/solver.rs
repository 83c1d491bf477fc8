mod common;

use std::time::Duration;

use common::{brute_force, fixture};
use fence_core::solver::*;
use fence_core::*;

fn lib() -> PieceLibrary {
    PieceLibrary::builtin()
}

#[test]
fn two_pieces_never_make_a_fence() {
    let set = lib().piece_set("i,o").unwrap();
    let r = solve_exhaustive(&set, &SolveOptions::new(8, 8)).unwrap();
    assert_eq!(r.max_area, None);
    assert_eq!((r.raw_count, r.dedup_count), (0, 0));
    assert!(r.solutions.is_empty());
    assert_eq!(brute_force(&set, 6).max_area, None);
}

#[test]
fn solutions_revalidate() {
    let set = lib().piece_set("l,n,t,o").unwrap();
    let r = solve_exhaustive(&set, &SolveOptions::new(8, 8)).unwrap();
    let best = r.max_area.unwrap();
    assert_eq!(r.solutions.len(), r.dedup_count);
    for s in &r.solutions {
        let report = validate_fence(s);
        assert!(report.valid);
        assert_eq!(report.area, best);
    }
    let oracle = brute_force(&set, 8);
    assert_eq!(
        (r.max_area, r.raw_count, r.dedup_count),
        (oracle.max_area, oracle.raw, oracle.dedup)
    );
}

#[test]
fn box_limits_the_search() {
    let set = lib().tetrominoes();
    let r = solve_exhaustive(&set, &SolveOptions::new(6, 5)).unwrap();
    assert_eq!(r.max_area, Some(8));
    assert!(matches!(
        solve_exhaustive(&set, &SolveOptions::new(3, 3)),
        Err(SolveError::BoxTooSmall { .. })
    ));
    assert!(matches!(
        solve_exhaustive(&set, &SolveOptions::new(0, 5)),
        Err(SolveError::BadBox(0, 5))
    ));
}

#[test]
fn anytime_search_agrees_when_exhaustive() {
    let set = lib().piece_set("i,l,n,t").unwrap();
    let bb = search_branch_and_bound(&set, Duration::from_secs(120)).unwrap();
    assert!(bb.exhaustive);
    let (w, h) = default_box(&set);
    let ex = solve_exhaustive(&set, &SolveOptions::new(w, h)).unwrap();
    assert_eq!((bb.max_area, bb.dedup_count), (ex.max_area, ex.dedup_count));
}

#[test]
fn deadline_stops_early() {
    let r = search_branch_and_bound(&lib().pentominoes(), Duration::from_millis(200)).unwrap();
    assert!(!r.exhaustive);
    for s in &r.solutions {
        assert_eq!(Some(validate_fence(s).area), r.max_area);
    }
}

#[test]
fn pentomino_budget() {
    let set = lib().pentominoes();
    assert_eq!(perimeter_budget(&set), 53);
    let x = piece_length(set.get("X").unwrap());
    assert_eq!(x.length, 3);
    let t = lib().get("t").cloned().unwrap();
    assert!(length_realizations(&t).len() >= 2);
    assert!(rectangle_candidates(3).is_err());
}

#[test]
fn fig13_is_a_local_optimum() {
    let c = fixture("fig13");
    let scan = scan_neighborhood(&c).unwrap();
    assert!(scan.max_area().unwrap() <= 128);
    assert!(best_single_move(&c, ScoreMode::Standard).unwrap().is_none());
    let r = improve_local(&c, 5).unwrap();
    assert_eq!((r.area, r.steps, r.local_optimum), (128, 0, true));
}

#[test]
fn scan_matches_validation() {
    let c = fixture("fig12b");
    let scan = scan_neighborhood(&c).unwrap();
    assert!(!scan.legal.is_empty());
    for r in &scan.legal {
        let moved = c.with_moved(r.placement.clone()).unwrap();
        let report = validate_fence(&moved);
        assert!(report.valid);
        assert_eq!(report.area, r.area);
    }
}

#[test]
fn hill_climbing_never_loses_area() {
    let c = fixture("fig12a");
    let r = improve_local(&c, 3).unwrap();
    assert!(r.area >= 34);
    assert_eq!(validate_fence(&r.config).area, r.area);
    let again = improve_local(&c, 3).unwrap();
    assert_eq!(again.config, r.config);
    let misere = best_single_move(&c, ScoreMode::Misere).unwrap().unwrap();
    assert!(misere.1.area < 29);
}

#[test]
fn summary_json() {
    let set = lib().piece_set("i,l,o").unwrap();
    let r = solve_exhaustive(&set, &SolveOptions::new(8, 8)).unwrap();
    let v = serde_json::to_value(r.summary()).unwrap();
    assert_eq!(v["maxArea"], 2);
    assert_eq!(v["rawCount"], 8);
    assert_eq!(v["dedupCount"], 1);
    assert_eq!(v["exhaustive"], true);
}

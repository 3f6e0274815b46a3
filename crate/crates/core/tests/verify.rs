use std::collections::BTreeMap;

use riordan::verify::{
    evaluate_graph, run_scan, run_suite, standard_corpus, summarize, Conjecture, CorpusSpec, Finding, GraphDescriptor,
    RunOptions, Status, Suite,
};
use riordan::Family;
use serde_json::json;

fn small() -> CorpusSpec {
    CorpusSpec { nmax: 14, seed: 5, random_count: 12, io_count: 6 }
}

fn find<'a>(fs: &'a [Finding], id: &str, n: usize) -> &'a Finding {
    fs.iter().find(|f| f.claim_id == id && f.graph.n == n).unwrap_or_else(|| panic!("missing {id} at {n}"))
}

#[test]
fn suites_are_deterministic_across_thread_counts() {
    let one = run_suite(Suite::All, &small(), &RunOptions { jobs: Some(1), ..Default::default() }).unwrap();
    let many = run_suite(Suite::All, &small(), &RunOptions { jobs: Some(4), ..Default::default() }).unwrap();
    assert_eq!(one, many);
    assert!(one.iter().enumerate().all(|(i, f)| f.timestamp == i as u64));
}

#[test]
fn resume_after_interruption_matches_a_clean_run() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("run.jsonl");
    let clean = run_suite(Suite::All, &small(), &RunOptions::default()).unwrap();

    let partial = RunOptions { checkpoint: Some(ck.clone()), stop_after: Some(40), ..Default::default() };
    assert!(run_suite(Suite::All, &small(), &partial).is_err());
    // Simulate a crash mid-write.
    let mut text = std::fs::read_to_string(&ck).unwrap();
    text.push_str("{\"key\":\"41#trunc");
    std::fs::write(&ck, text).unwrap();

    let resume = RunOptions { checkpoint: Some(ck.clone()), ..Default::default() };
    assert_eq!(run_suite(Suite::All, &small(), &resume).unwrap(), clean);
    // A completed checkpoint replays without recomputation.
    assert_eq!(run_suite(Suite::All, &small(), &resume).unwrap(), clean);

    let other = CorpusSpec { seed: 6, ..small() };
    assert!(run_suite(Suite::All, &other, &resume).is_err());
}

#[test]
fn descriptors_reproduce_their_graphs() {
    for d in standard_corpus(&CorpusSpec { nmax: 33, ..CorpusSpec::default() }) {
        let json = serde_json::to_string(&d).unwrap();
        let back: GraphDescriptor = serde_json::from_str(&json).unwrap();
        let plain = GraphDescriptor { family: None, ..back.clone() };
        assert_eq!(back.build().unwrap().graph(), plain.build().unwrap().graph());
    }
}

#[test]
fn determinant_suite_passes_on_catalan_evens() {
    let spec = CorpusSpec { nmax: 32, ..CorpusSpec::default() };
    let fs = run_suite(Suite::Determinant, &spec, &RunOptions::default()).unwrap();
    assert_eq!(summarize(&fs).totals.fail, 0);
    let evens: Vec<usize> = fs
        .iter()
        .filter(|f| f.claim_id == "determinant.catalan_even" && f.graph.family == Some(Family::Catalan))
        .filter(|f| f.status != Status::Skipped)
        .inspect(|f| assert_eq!(f.status, Status::Pass))
        .map(|f| f.graph.n)
        .collect();
    assert_eq!(evens, (3..=16).map(|n| 2 * n).collect::<Vec<_>>());
}

#[test]
fn decomposition_suite_has_no_mismatches() {
    let fs = run_suite(Suite::Decomposition, &small(), &RunOptions::default()).unwrap();
    assert!(fs.iter().all(|f| f.status != Status::Fail), "{:?}", fs.iter().find(|f| f.status == Status::Fail));
}

#[test]
fn inertia_suite_reproduces_pascal_ten() {
    let fs = evaluate_graph(&GraphDescriptor::family(Family::Pascal, 10), Suite::Inertia);
    let r = find(&fs, "inertia.reconcile", 10);
    assert_eq!(r.details["exact"]["plus"], json!(4));
}

#[test]
fn det_catalan_scan() {
    let fs = run_scan(Conjecture::DetCatalan, 64, 0, 1, &RunOptions::default()).unwrap();
    let zeros = |n: usize| find(&fs, "scan.det_catalan", n).details["det_zero"] == json!(true);
    assert!(!zeros(5));
    assert!([11, 13, 15, 23, 33, 51, 61, 63].iter().all(|&n| zeros(n)));
    let last = fs.last().unwrap();
    assert_eq!(last.details["disagreements"], json!([]));
    assert!(fs.iter().all(|f| f.status == Status::Finding));
}

#[test]
fn inertia_order_scan() {
    let fs = run_scan(Conjecture::InertiaOrder, 20, 40, 3, &RunOptions::default()).unwrap();
    let pg: Vec<&Finding> = fs.iter().filter(|f| f.claim_id == "scan.pascal_negative_inertia").collect();
    assert_eq!(pg.len(), 19);
    assert!(pg.iter().all(|f| f.details["agrees"] == json!(true)));
    let pg16 = pg.iter().find(|f| f.graph.n == 16).unwrap();
    assert_eq!(pg16.details["minus"], json!(8));
    assert!(fs.iter().any(|f| f.claim_id == "scan.bipartite_balanced"));
    assert!(fs.iter().all(|f| f.status != Status::Fail));
}

#[test]
fn nullity_xo_scan() {
    let fs = run_scan(Conjecture::NullityXo, 24, 20, 3, &RunOptions::default()).unwrap();
    let pg10: Vec<&Finding> = fs.iter().filter(|f| f.graph.n == 10 && f.graph.family == Some(Family::Pascal)).collect();
    let c = pg10.iter().find(|f| f.claim_id == "scan.nullity_xo").unwrap();
    assert_eq!(c.details["xo_zero"], json!(true));
    assert_eq!(c.details["eta_b"], json!(1));
    assert!(fs.iter().any(|f| f.status == Status::Skipped));
    assert!(fs.iter().filter(|f| f.claim_id == "scan.nullity_xo.equivalence").all(|f| f.status == Status::Pass));
}

#[test]
fn max_degree_scan() {
    let fs = run_scan(Conjecture::MaxDegree, 24, 10, 3, &RunOptions::default()).unwrap();
    let pg12 = fs
        .iter()
        .find(|f| f.claim_id == "scan.max_degree" && f.graph.n == 12 && f.graph.family == Some(Family::Pascal))
        .unwrap();
    assert!(pg12.details["argmax"].as_array().unwrap().contains(&json!(9)));
    let cg20 = fs
        .iter()
        .find(|f| f.claim_id == "degree.top_vs_first" && f.graph.n == 20 && f.graph.family == Some(Family::Catalan))
        .unwrap();
    assert_eq!(cg20.status, Status::Pass);
    assert!(fs.iter().all(|f| f.status != Status::Fail));
}

#[test]
fn diameter_scan() {
    let fs = run_scan(Conjecture::Diameter, 64, 20, 3, &RunOptions::default()).unwrap();
    let mut by: BTreeMap<(usize, Option<Family>), &Finding> = BTreeMap::new();
    for f in &fs {
        by.insert((f.graph.n, f.graph.family), f);
    }
    for n in 4..=64 {
        assert_eq!(by[&(n, Some(Family::Pascal))].details["diameter"], json!(2));
    }
    let cg16 = by[&(16, Some(Family::Catalan))].details["diameter"].as_u64().unwrap();
    assert!(cg16 >= 2);
}

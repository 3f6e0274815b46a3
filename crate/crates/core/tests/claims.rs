use riordan::bounds::{graph_bounds, quotient_bounds, split_counts, BoundOptions, BoundReport};
use riordan::decompose::{classify, decompose_unchecked, Label};
use riordan::exact::{block_nullity, kernel_vanishes_on_odd, nullity_transform, rank_int, stacked_rank};
use riordan::spectra::graph_spectra;
use riordan::verify::io_bell_descriptor;
use riordan::{Family, RiordanGraph};

fn report<'a>(rs: &'a [BoundReport], id: &str) -> &'a BoundReport {
    rs.iter().find(|r| r.bound_id == id).unwrap_or_else(|| panic!("missing {id}"))
}

fn io_graphs() -> Vec<RiordanGraph> {
    let mut out = Vec::new();
    for bits in 0..16u8 {
        let even = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0, bits & 8 != 0];
        for n in 2..=40 {
            out.push(io_bell_descriptor(&even, n).build().unwrap());
        }
    }
    out
}

#[test]
fn quotient_equality_on_k6() {
    let k6 = RiordanGraph::family(Family::Complete, 6).unwrap();
    let sp = graph_spectra(k6.graph()).unwrap();
    let rs = quotient_bounds(k6.graph(), &sp, &[1, 3, 5]).unwrap();
    let r = report(&rs, "quotient.adj_radius");
    assert!((r.rhs - 5.0).abs() < 1e-9 && (r.lhs - 5.0).abs() < 1e-9);
    assert!(quotient_bounds(k6.graph(), &sp, &[]).is_err());
    assert!(quotient_bounds(k6.graph(), &sp, &[1, 2, 3, 4, 5, 6]).is_err());
}

#[test]
fn checkerboard_equality_on_k33() {
    let k33 = RiordanGraph::family(Family::CompleteBipartite, 6).unwrap();
    let rs = graph_bounds(&k33, BoundOptions::default()).unwrap();
    let r = report(&rs, "checkerboard.adj_radius");
    assert!(r.hypothesis_met);
    assert!((r.rhs - 3.0).abs() < 1e-9 && (r.lhs - 3.0).abs() < 1e-9);
}

#[test]
fn catalan_sixteen_theorem_bounds_hold() {
    let cg = RiordanGraph::family(Family::Catalan, 16).unwrap();
    let rs = graph_bounds(&cg, BoundOptions::default()).unwrap();
    let bad: Vec<&str> = rs.iter().filter(|r| r.is_theorem_failure()).map(|r| r.bound_id.as_str()).collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert!(rs.iter().filter(|r| r.hypothesis_met).count() > 40);
}

#[test]
fn split_counts_add_up() {
    for f in Family::ALL {
        for n in 1..=40 {
            let rg = RiordanGraph::family(f, n).unwrap();
            let blocks = decompose_unchecked(&rg).unwrap();
            let c = split_counts(&rg, &blocks).unwrap();
            assert_eq!(c.m1 + c.m2 + c.sigma, rg.graph().edge_count());
            assert_eq!(c.sigma, blocks.b.count_ones());
        }
    }
}

#[test]
fn stacked_rank_is_half_the_order() {
    for rg in io_graphs()
        .into_iter()
        .chain((2..=64).flat_map(|n| [Family::Pascal, Family::Catalan].map(|f| RiordanGraph::family(f, n).unwrap())))
    {
        let blocks = decompose_unchecked(&rg).unwrap();
        assert_eq!(stacked_rank(&blocks), rg.n().div_ceil(2), "{} n={}", rg.g_expr(), rg.n());
    }
}

#[test]
fn nullity_sandwich_equivalence_and_transform() {
    let mut singular = 0;
    for rg in io_graphs() {
        let n = rg.n();
        let cls = classify(&rg).unwrap();
        assert!(cls.has(Label::ODecomposable));
        let blocks = decompose_unchecked(&rg).unwrap();
        let a = rg.graph().adjacency();
        let eta_g = n - rank_int(&a.to_i64());
        let eta_b = block_nullity(&blocks.b);
        assert!(eta_b <= eta_g && eta_g <= 2 * eta_b + n % 2, "n={n}");
        if eta_g > 0 {
            singular += 1;
            assert_eq!(kernel_vanishes_on_odd(a), eta_g == eta_b, "n={n}");
        }
        let t = nullity_transform(&rg, &blocks, &cls, eta_g).unwrap();
        assert_eq!(t.eta_transformed, eta_g);
    }
    assert!(singular > 20);
}

#[test]
fn nullity_transform_needs_io_bell() {
    let rg = RiordanGraph::family(Family::Complete, 6).unwrap();
    let cls = classify(&rg).unwrap();
    let blocks = decompose_unchecked(&rg).unwrap();
    assert!(nullity_transform(&rg, &blocks, &cls, 0).is_err());
}

use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;
use riordan::bitmat::BitMatrix;
use riordan::decompose::{classify, decompose, decompose_unchecked, extract_blocks, formula_blocks, Label};
use riordan::graph::{ceil_log2, clique_and_chromatic, p_of, partition_moj};
use riordan::verify::io_bell_descriptor;
use riordan::{Family, Gf2Series, RiordanGraph};

fn binom(n: u64, k: u64) -> BigUint {
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    r
}

/// PG_n from `[z^i] z^(j+1)/(1-z)^(j+1) = C(i-1, j)`, 0-based `i > j`.
fn pascal_oracle(n: usize) -> BitMatrix {
    BitMatrix::from_fn(n, n, |a, b| {
        let (i, j) = (a.max(b), a.min(b));
        i != j && ((i - 1) & j) == j
    })
}

/// CG_n from the ballot numbers `[z^m] C^k = k/(2m+k) C(2m+k, m)`.
fn catalan_oracle(n: usize) -> BitMatrix {
    BitMatrix::from_fn(n, n, |a, b| {
        let (i, j) = (a.max(b) as u64, a.min(b) as u64);
        if i == j {
            return false;
        }
        let (m, k) = (i - 1 - j, j + 1);
        let v = binom(2 * m + k, m) * BigUint::from(k) / BigUint::from(2 * m + k);
        v.bit(0)
    })
}

fn fam(f: Family, n: usize) -> RiordanGraph {
    RiordanGraph::family(f, n).unwrap()
}

#[test]
fn pascal_and_catalan_match_closed_forms() {
    for n in 1..=64 {
        assert_eq!(fam(Family::Pascal, n).graph().adjacency(), &pascal_oracle(n), "PG{n}");
        assert_eq!(fam(Family::Catalan, n).graph().adjacency(), &catalan_oracle(n), "CG{n}");
    }
}

#[test]
fn edge_counts_at_powers_of_two() {
    for k in 1..=6u32 {
        let (t, two) = (3usize.pow(k), 1usize << k);
        assert_eq!(fam(Family::Pascal, two).graph().edge_count(), t - two);
        assert_eq!(fam(Family::Pascal, two + 1).graph().edge_count(), t);
        assert_eq!(fam(Family::Catalan, two).graph().edge_count(), (t - 1) / 2);
        assert_eq!(fam(Family::Catalan, two + 1).graph().edge_count(), (t - 1) / 2 + two);
    }
}

#[test]
fn catalan_six_fixture() {
    let printed = BitMatrix::from_rows(&["011010", "101010", "110111", "001010", "111101", "001010"]);
    assert_eq!(fam(Family::Catalan, 6).graph().adjacency(), &printed);
}

#[test]
fn simple_families() {
    for n in 1..=20 {
        let m = n * (n - 1) / 2;
        assert_eq!(fam(Family::Complete, n).graph().edge_count(), m);
        assert_eq!(fam(Family::Path, n).graph().edge_count(), n - 1);
        assert_eq!(fam(Family::Null, n).graph().edge_count(), 0);
        let kb = fam(Family::CompleteBipartite, n);
        assert_eq!(kb.graph().edge_count(), n.div_ceil(2) * (n / 2));
        assert!(kb.graph().edges().iter().all(|(u, v)| (u + v) % 2 == 1));
    }
}

#[test]
fn pascal_universal_vertices() {
    for n in 2..=64 {
        let p = p_of(n);
        let got = fam(Family::Pascal, n).graph().universal_vertices();
        let top = (1usize << p) + 1;
        if n == top && n >= 3 {
            assert_eq!(got, vec![1, (1 << (p - 1)) + 1, top], "PG{n}");
        } else {
            assert_eq!(got, vec![1, top], "PG{n}");
        }
    }
    assert_eq!(fam(Family::Pascal, 9).graph().universal_vertices(), vec![1, 5, 9]);
}

fn io_graphs() -> Vec<RiordanGraph> {
    let mut out = Vec::new();
    for bits in 0..16u8 {
        let even = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0, bits & 8 != 0];
        for n in (2..=64).step_by(5) {
            out.push(io_bell_descriptor(&even, n).build().unwrap());
        }
    }
    out
}

#[test]
fn io_bell_generator_hits_the_hypothesis() {
    for rg in io_graphs() {
        let cls = classify(&rg).unwrap();
        assert!(cls.io_bell(), "{} n={}", rg.g_expr(), rg.n());
        assert!(cls.has(Label::ODecomposable));
    }
    assert!(classify(&fam(Family::Pascal, 12)).unwrap().io_bell());
    assert!(classify(&fam(Family::Catalan, 12)).unwrap().io_bell());
}

#[test]
fn io_bell_universal_census_and_partition() {
    for rg in io_graphs() {
        let n = rg.n();
        let p = p_of(n);
        let allowed = [1, (1usize << p.saturating_sub(1)) + 1, (1usize << p) + 1];
        let u = rg.graph().universal_vertices();
        assert!(u.len() <= 3 && u.iter().all(|v| allowed.contains(v)), "n={n} {u:?}");
        let parts = partition_moj(rg.graph()).unwrap();
        assert_eq!(parts.len(), ceil_log2(n) as usize + 1);
        if n <= 32 {
            let k = ceil_log2(n) as usize + 1;
            assert_eq!(clique_and_chromatic(rg.graph(), 32).unwrap(), (k, k), "n={n}");
        }
    }
}

#[test]
fn decomposition_gate() {
    let rg = RiordanGraph::from_exprs("1", "z^2", 6).unwrap();
    assert!(decompose(&rg).is_err());
    assert!(decompose_unchecked(&rg).is_ok());
}

fn arb_pair() -> impl Strategy<Value = (Gf2Series, Gf2Series, usize)> {
    (proptest::collection::vec(any::<bool>(), 9), proptest::collection::vec(any::<bool>(), 9), 1usize..40).prop_map(
        |(mut g, mut f, n)| {
            g[0] = true;
            f[0] = false;
            // Polynomials of degree <= 8, known through the degrees G_n reads.
            g.resize(n + 3, false);
            f.resize(n + 3, false);
            (Gf2Series::from_bits(g), Gf2Series::from_bits(f), n)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn adjacency_is_symmetric_and_loopless((g, f, n) in arb_pair()) {
        let rg = RiordanGraph::from_series(g, f, n).unwrap();
        let a = rg.graph().adjacency();
        prop_assert_eq!(a, &a.transpose());
        prop_assert!((0..n).all(|i| !a.get(i, i)));
    }

    #[test]
    fn lower_triangle_is_z_g_f_powers((g, f, n) in arb_pair()) {
        let rg = RiordanGraph::from_series(g.clone(), f.clone(), n).unwrap();
        let a = rg.graph().adjacency();
        let mut col = g.shift_up(1);
        for j in 0..n {
            for i in j + 1..n {
                prop_assert_eq!(a.get(i, j), col.coeff(i).unwrap_or(false));
            }
            col = col.mul(&f);
        }
    }

    #[test]
    fn blocks_by_formula_equal_blocks_by_extraction((g, f, n) in arb_pair()) {
        let rg = RiordanGraph::from_series(g, f, n).unwrap();
        let ext = extract_blocks(rg.graph());
        prop_assert_eq!(&formula_blocks(rg.g(), rg.f(), n).unwrap().b, &ext.b);
        prop_assert_eq!(&ext.reassemble(), rg.graph().adjacency());
    }

    #[test]
    fn io_bell_graphs_are_independent_colourable(bits in 0u8..16, n in 2usize..=64) {
        let even = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0, bits & 8 != 0];
        let rg = io_bell_descriptor(&even, n).build().unwrap();
        prop_assert!(partition_moj(rg.graph()).is_ok());
    }
}

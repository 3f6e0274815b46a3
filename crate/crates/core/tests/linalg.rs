use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use riordan::exact::{charpoly, det_exact, inertia, kernel_basis, poly_eval, rank_int, to_rational, IntMatrix};
use riordan::spectra::{complement_identity_error, eigen_sym, eigvec_claims, graph_spectra, reconcile, SpectrumKind};
use riordan::{ExactSummary, Family, Inertia, RiordanGraph};

/// Determinant by plain rational elimination with row swaps.
fn det_oracle(m: &IntMatrix) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let k = a[r][c].clone() / a[c][c].clone();
            for j in c..n {
                let v = a[c][j].clone() * k.clone();
                a[r][j] -= v;
            }
        }
    }
    det.to_integer()
}

fn shifted(m: &IntMatrix, t: i64) -> IntMatrix {
    m.iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, &x)| if i == j { t - x } else { -x }).collect())
        .collect()
}

fn adj(f: Family, n: usize) -> IntMatrix {
    RiordanGraph::family(f, n).unwrap().graph().adjacency().to_i64()
}

fn arb_sym01(max_n: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut m = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..i {
                    let v = bits[i * n + j] as i64;
                    m[i][j] = v;
                    m[j][i] = v;
                }
            }
            m
        })
    })
}

#[test]
fn inertia_fixtures() {
    let i = |p, z, m| Inertia { plus: p, zero: z, minus: m };
    assert_eq!(inertia(&adj(Family::Pascal, 10)).unwrap(), i(4, 1, 5));
    let a = RiordanGraph::from_exprs("1+z^3", "z/(1+z)", 16).unwrap();
    let r = inertia(&a.graph().adjacency().to_i64()).unwrap();
    assert_eq!((r.plus, r.minus), (6, 10));
    let b = RiordanGraph::from_exprs("1/(1+z^2)", "z/(1+z)", 10).unwrap();
    let r = inertia(&b.graph().adjacency().to_i64()).unwrap();
    assert_eq!((r.plus, r.minus), (5, 5));
    for n in 2..=16 {
        assert_eq!(inertia(&adj(Family::Complete, n)).unwrap(), i(1, 0, n - 1));
    }
}

#[test]
fn catalan_determinants() {
    for n in 3..=16 {
        assert!(det_exact(&adj(Family::Catalan, 2 * n)).unwrap().is_zero(), "CG{}", 2 * n);
    }
    assert!(!det_exact(&adj(Family::Catalan, 5)).unwrap().is_zero());
    assert!(det_exact(&adj(Family::Catalan, 33)).unwrap().is_zero());
}

#[test]
fn charpoly_matches_determinants_of_shifts_on_families() {
    for f in Family::ALL {
        for n in [1, 2, 7, 12, 20] {
            let a = adj(f, n);
            let p = charpoly(&a).unwrap();
            assert_eq!(p.len(), n + 1);
            for t in [-3, 0, 2, 5] {
                assert_eq!(poly_eval(&p, t), det_oracle(&shifted(&a, t)), "{f:?} n={n} t={t}");
            }
        }
    }
}

#[test]
fn summary_is_consistent_at_desk_scale() {
    let s = ExactSummary::of(&adj(Family::Pascal, 64)).unwrap();
    assert_eq!(s.rank + s.nullity, 64);
    assert_eq!(s.rank, rank_int(&adj(Family::Pascal, 64)));
    assert_eq!(s.inertia.minus, 32);
}

#[test]
fn jacobi_reproduces_closed_form_spectra() {
    // Path: 2 cos(k pi / (n + 1)).
    for n in 1..=30 {
        let a = RiordanGraph::family(Family::Path, n).unwrap();
        let s = graph_spectra(a.graph()).unwrap();
        for (k, ev) in s.lambda().iter().enumerate() {
            let want = 2.0 * ((k + 1) as f64 * PI / (n + 1) as f64).cos();
            assert!((ev - want).abs() < 1e-9, "P{n} k={k}");
        }
    }
    // Complete bipartite: +-sqrt(ab) and zeros; Laplacian {n, a^(b-1), b^(a-1), 0}.
    for n in 2..=30usize {
        let (a, b) = (n.div_ceil(2), n / 2);
        let s = graph_spectra(RiordanGraph::family(Family::CompleteBipartite, n).unwrap().graph()).unwrap();
        let r = ((a * b) as f64).sqrt();
        assert!((s.scalars.lambda1 - r).abs() < 1e-9 && (s.scalars.lambda_n + r).abs() < 1e-9);
        let mut mu = vec![n as f64];
        mu.extend(std::iter::repeat(a as f64).take(b - 1));
        mu.extend(std::iter::repeat(b as f64).take(a - 1));
        mu.push(0.0);
        mu.sort_by(|x, y| y.total_cmp(x));
        for (x, y) in s.mu().iter().zip(&mu) {
            assert!((x - y).abs() < 1e-9, "K{a},{b}");
        }
    }
}

#[test]
fn reconciliation_and_complement_on_families() {
    for f in Family::ALL {
        for n in 1..=40 {
            let g = RiordanGraph::family(f, n).unwrap();
            let s = graph_spectra(g.graph()).unwrap();
            let ex = ExactSummary::of_bits(g.graph().adjacency()).unwrap();
            assert!(reconcile(s.lambda(), &ex.inertia).agrees, "{f:?} n={n}");
            assert!(complement_identity_error(g.graph(), s.mu()).unwrap() <= 1e-8);
        }
    }
}

#[test]
fn integral_eigenpairs_have_zero_residual() {
    for f in [Family::Pascal, Family::Catalan] {
        for n in 2..=64 {
            for c in eigvec_claims(&RiordanGraph::family(f, n).unwrap()) {
                assert!(!c.hypothesis_met || (c.holds && c.residual == 0), "{} n={n}", c.claim_id);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_matches_rational_elimination(m in arb_sym01(12)) {
        prop_assert_eq!(det_exact(&m).unwrap(), det_oracle(&m));
    }

    #[test]
    fn inertia_sums_to_order_and_rank_matches_kernel(m in arb_sym01(14)) {
        let n = m.len();
        let i = inertia(&m).unwrap();
        prop_assert_eq!(i.plus + i.zero + i.minus, n);
        prop_assert_eq!(n - rank_int(&m), i.zero);
        prop_assert_eq!(kernel_basis(&to_rational(&m)).len(), i.zero);
    }

    #[test]
    fn charpoly_trace_and_constant_term(m in arb_sym01(12)) {
        let n = m.len();
        let p = charpoly(&m).unwrap();
        prop_assert!(p[n].is_one());
        // Zero diagonal: the x^(n-1) coefficient is -trace = 0.
        prop_assert!(p[n - 1].is_zero());
        let d = det_oracle(&m);
        let want = if n % 2 == 0 { d } else { -d };
        prop_assert_eq!(&p[0], &want);
    }

    #[test]
    fn jacobi_eigenpairs(m in arb_sym01(16)) {
        let n = m.len();
        let f: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let rep = eigen_sym(&f, SpectrumKind::Adjacency, true).unwrap();
        let v = rep.eigenvectors.as_ref().unwrap();
        prop_assert!(rep.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        for k in 0..n {
            for l in 0..n {
                let dot: f64 = (0..n).map(|i| v[i][k] * v[i][l]).sum();
                let want = if k == l { 1.0 } else { 0.0 };
                prop_assert!((dot - want).abs() < 1e-9);
            }
            for i in 0..n {
                let av: f64 = (0..n).map(|j| f[i][j] * v[j][k]).sum();
                prop_assert!((av - rep.eigenvalues[k] * v[i][k]).abs() < 1e-8);
            }
        }
        let frob2: f64 = f.iter().flatten().map(|x| x * x).sum();
        let sq: f64 = rep.eigenvalues.iter().map(|x| x * x).sum();
        prop_assert!((frob2 - sq).abs() < 1e-8);

    }
}

//! Odd/even block decomposition and type classification.
//!
//! With odd labels first, `P^T A P = [[X, B], [B^T, Y]]` where `X` is the
//! graph on odd labels, `Y` the graph on even labels and `B` has rows
//! indexed by odd vertices `2s-1` and columns by even vertices `2t`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};
use crate::fps::Gf2Series;
use crate::graph::{binary_riordan, build_graph, p_of, Graph, RiordanGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionBlocks {
    pub x: BitMatrix,
    pub y: BitMatrix,
    pub b: BitMatrix,
    /// `perm[k]` is the 1-based label placed at position `k`.
    pub perm: Vec<usize>,
}

pub fn odd_first_perm(n: usize) -> Vec<usize> {
    (1..=n).step_by(2).chain((2..=n).step_by(2)).collect()
}

impl DecompositionBlocks {
    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// Undo the relabelling: the adjacency matrix in the original labels.
    pub fn reassemble(&self) -> BitMatrix {
        let n = self.n();
        let n1 = self.x.rows();
        let mut pos = vec![0; n + 1];
        for (k, &v) in self.perm.iter().enumerate() {
            pos[v] = k;
        }
        let block = |a: usize, b: usize| -> bool {
            match (a < n1, b < n1) {
                (true, true) => self.x.get(a, b),
                (true, false) => self.b.get(a, b - n1),
                (false, true) => self.b.get(b, a - n1),
                (false, false) => self.y.get(a - n1, b - n1),
            }
        };
        BitMatrix::from_fn(n, n, |i, j| block(pos[i + 1], pos[j + 1]))
    }
}

/// Blocks read off the adjacency matrix. Works for every graph.
pub fn extract_blocks(graph: &Graph) -> DecompositionBlocks {
    let n = graph.n();
    let odd: Vec<usize> = (0..n).step_by(2).collect();
    let even: Vec<usize> = (1..n).step_by(2).collect();
    let a = graph.adjacency();
    DecompositionBlocks {
        x: a.submatrix(&odd, &odd),
        y: a.submatrix(&even, &even),
        b: a.submatrix(&odd, &even),
        perm: odd_first_perm(n),
    }
}

/// `gf` with its constant term (always 0) removed.
fn gf_over_z(g: &Gf2Series, f: &Gf2Series) -> Result<Gf2Series> {
    g.mul(f).shift_down(1).map_err(|_| Error::NonzeroLowTerm)
}

/// Blocks computed from the generating functions alone:
/// `X = G(odd(g), f)`, `Y = G(odd(gf/z), f)`,
/// `B = B(z odd(gf), f) + B(even(g), f)^T`.
pub fn formula_blocks(g: &Gf2Series, f: &Gf2Series, n: usize) -> Result<DecompositionBlocks> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let n1 = n.div_ceil(2);
    let n2 = n / 2;
    let x = build_graph(&g.odd_part(), f, n1)?.adjacency().clone();
    let y = if n2 == 0 {
        BitMatrix::zeros(0, 0)
    } else {
        build_graph(&gf_over_z(g, f)?.odd_part(), f, n2)?.adjacency().clone()
    };
    let b = if n2 == 0 {
        BitMatrix::zeros(n1, 0)
    } else {
        let lower = binary_riordan(&g.mul(f).odd_part().shift_up(1), f, n1, n2)?;
        let upper = binary_riordan(&g.even_part(), f, n2, n1)?.transpose();
        lower.xor(&upper)
    };
    Ok(DecompositionBlocks {
        x,
        y,
        b,
        perm: odd_first_perm(n),
    })
}

/// Extract the blocks and confirm them against the generating-function
/// formulas. Requires `[z^1] f = 1`.
pub fn decompose(rg: &RiordanGraph) -> Result<DecompositionBlocks> {
    if !rg.f().coeff(1)? {
        return Err(Error::DecompositionHypothesisFailed);
    }
    decompose_unchecked(rg)
}

/// As [`decompose`] without the `[z^1] f = 1` gate; the formulas hold for
/// any `f` with `f(0) = 0`.
pub fn decompose_unchecked(rg: &RiordanGraph) -> Result<DecompositionBlocks> {
    let ext = extract_blocks(rg.graph());
    let gf = formula_blocks(rg.g(), rg.f(), rg.n())?;
    if ext.x != gf.x {
        return Err(Error::FormulaMismatch { block: "X" });
    }
    if ext.y != gf.y {
        return Err(Error::FormulaMismatch { block: "Y" });
    }
    if ext.b != gf.b {
        return Err(Error::FormulaMismatch { block: "B" });
    }
    Ok(ext)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Appell,
    Bell,
    Checkerboard,
    Derivative,
    Proper,
    ODecomposable,
    EDecomposable,
    IoDecomposable,
    IeDecomposable,
}

impl Label {
    pub fn name(self) -> &'static str {
        match self {
            Label::Appell => "appell",
            Label::Bell => "bell",
            Label::Checkerboard => "checkerboard",
            Label::Derivative => "derivative",
            Label::Proper => "proper",
            Label::ODecomposable => "o_decomposable",
            Label::EDecomposable => "e_decomposable",
            Label::IoDecomposable => "io_decomposable",
            Label::IeDecomposable => "ie_decomposable",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Classification(pub BTreeSet<Label>);

impl Classification {
    pub fn has(&self, l: Label) -> bool {
        self.0.contains(&l)
    }

    /// Hypothesis shared by the io-specific results: io-decomposable and Bell.
    pub fn io_bell(&self) -> bool {
        self.has(Label::IoDecomposable) && self.has(Label::Bell)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.0.iter().map(|l| l.name()).collect()
    }
}

/// `a` and `b` agree on degrees `lo..=hi`; an empty range is vacuous.
fn agree_range(a: &Gf2Series, b: &Gf2Series, lo: usize, hi: i64) -> Result<bool> {
    if hi < lo as i64 {
        return Ok(true);
    }
    for i in lo..=hi as usize {
        if a.coeff(i)? != b.coeff(i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn vanishes_at(a: &Gf2Series, mut idx: impl Iterator<Item = usize>) -> Result<bool> {
    idx.try_fold(true, |acc, i| Ok(acc && !a.coeff(i)?))
}

/// Labels of `rg`. Where two characterisations exist both are evaluated and
/// must agree.
pub fn classify(rg: &RiordanGraph) -> Result<Classification> {
    let n = rg.n();
    let g = rg.g();
    let f = rg.f();
    let n1 = n.div_ceil(2);
    let n2 = n / 2;
    let mut set = BTreeSet::new();

    // Series-level type tests compare only the degrees an order-n graph reads.
    let f_top = n as i64 - 1;
    let g_top = n as i64 - 2;
    let z = Gf2Series::z(n + 1);
    if agree_range(f, &z, 0, f_top.max(1))? {
        set.insert(Label::Appell);
    }
    let zg = g.shift_up(1);
    if agree_range(f, &zg, 0, f_top.max(1).min(zg.precision() as i64 - 1))? {
        set.insert(Label::Bell);
    }
    if agree_range(g, &f.derivative(), 0, g_top)? {
        set.insert(Label::Derivative);
    }
    let g_even = vanishes_at(g, (1..=g_top.max(0) as usize).step_by(2))?;
    let f_odd = vanishes_at(f, (0..=f_top.max(0) as usize).step_by(2))?;
    if g_even && f_odd {
        set.insert(Label::Checkerboard);
    }

    let adj = rg.graph().adjacency();
    let proper_direct = n >= 2 && (0..n - 1).all(|i| adj.get(i + 1, i));
    let proper_series = n >= 2 && {
        let diag = binary_riordan(g, f, n - 1, n - 1)?;
        (0..n - 1).all(|i| diag.get(i, i))
    };
    if proper_direct != proper_series {
        return Err(Error::ClassificationMismatch { label: "proper" });
    }

    let blocks = extract_blocks(rg.graph());
    let gf = g.mul(f);
    let o_series = vanishes_at(&gf, (1..=(n.saturating_sub(2)) / 2).map(|k| 2 * k))?;
    let o_struct = blocks.y.is_zero();
    if o_series != o_struct {
        return Err(Error::ClassificationMismatch { label: "o_decomposable" });
    }
    let e_series = vanishes_at(g, (1..=(n.saturating_sub(1)) / 2).map(|i| 2 * i - 1))?;
    let e_struct = blocks.x.is_zero();
    if e_series != e_struct {
        return Err(Error::ClassificationMismatch { label: "e_decomposable" });
    }

    let io_struct = proper_direct && o_struct && blocks.x == *build_graph(g, f, n1)?.adjacency();
    let io_series = proper_series && o_series && agree_range(&g.odd_part(), g, 0, n1 as i64 - 2)?;
    if io_struct != io_series {
        return Err(Error::ClassificationMismatch { label: "io_decomposable" });
    }
    let ie_struct = n2 >= 1
        && proper_direct
        && e_struct
        && blocks.y == *build_graph(g, f, n2)?.adjacency();
    let ie_series = n2 >= 1
        && proper_series
        && e_series
        && agree_range(&gf_over_z(g, f)?.odd_part(), g, 0, n2 as i64 - 2)?;
    if ie_struct != ie_series {
        return Err(Error::ClassificationMismatch { label: "ie_decomposable" });
    }

    for (flag, label) in [
        (proper_direct, Label::Proper),
        (o_struct, Label::ODecomposable),
        (e_struct, Label::EDecomposable),
        (io_struct, Label::IoDecomposable),
        (ie_struct, Label::IeDecomposable),
    ] {
        if flag {
            set.insert(label);
        }
    }
    Ok(Classification(set))
}

/// One vertex-degree formula compared with the degree read off the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub name: String,
    pub vertex: usize,
    pub direct: usize,
    pub formula: usize,
    pub holds: bool,
}

/// Degree formulas for vertices `2^p + 1` and `2` of an io-decomposable Bell
/// graph, `p = floor(log2(n - 1))`.
pub fn degree_formula_checks(rg: &RiordanGraph, cls: &Classification) -> Result<Vec<DegreeCheck>> {
    if !cls.io_bell() {
        return Err(Error::HypothesisNotMet(
            "degree formulas need an io-decomposable Bell graph".into(),
        ));
    }
    let n = rg.n();
    let p = p_of(n);
    let top = (1usize << p) + 1;
    let mut out = Vec::new();
    let formula = (1usize << p) + rg.g_ones(n as i64 - (1i64 << p) - 2);
    let direct = rg.graph().degree(top);
    out.push(DegreeCheck {
        name: "vertex_pow2_plus1".into(),
        vertex: top,
        direct,
        formula,
        holds: direct == formula,
    });
    let formula = 1 + rg.g_ones(n.div_ceil(2) as i64 - 2);
    let direct = rg.graph().degree(2);
    out.push(DegreeCheck {
        name: "vertex_2".into(),
        vertex: 2,
        direct,
        formula,
        holds: direct == formula,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::series_lang;
    use proptest::prelude::*;

    fn labels(rg: &RiordanGraph) -> Classification {
        classify(rg).unwrap()
    }

    #[test]
    fn pascal_eight_blocks() {
        let rg = RiordanGraph::family(Family::Pascal, 8).unwrap();
        let d = decompose(&rg).unwrap();
        assert_eq!(d.reassemble(), *rg.graph().adjacency());
        assert!(d.y.is_zero());
        assert_eq!(d.x, *RiordanGraph::family(Family::Pascal, 4).unwrap().graph().adjacency());
    }

    #[test]
    fn catalan_eight_is_o_decomposable() {
        let rg = RiordanGraph::family(Family::Catalan, 8).unwrap();
        assert!(decompose(&rg).unwrap().y.is_zero());
    }

    #[test]
    fn single_edge_and_single_vertex() {
        let rg = RiordanGraph::family(Family::Path, 2).unwrap();
        let d = decompose(&rg).unwrap();
        assert_eq!(d.x, BitMatrix::zeros(1, 1));
        assert_eq!(d.y, BitMatrix::zeros(1, 1));
        assert_eq!(d.b, BitMatrix::from_rows(&["1"]));
        let rg1 = RiordanGraph::family(Family::Path, 1).unwrap();
        let d1 = decompose(&rg1).unwrap();
        assert_eq!(d1.x, BitMatrix::zeros(1, 1));
        assert_eq!((d1.y.rows(), d1.b.rows(), d1.b.cols()), (0, 1, 0));
    }

    #[test]
    fn hypothesis_gate() {
        let rg = RiordanGraph::from_exprs("1", "z^2", 6).unwrap();
        assert_eq!(decompose(&rg).unwrap_err(), Error::DecompositionHypothesisFailed);
        assert!(decompose_unchecked(&rg).is_ok());
    }

    #[test]
    fn family_labels() {
        for n in [4, 9, 16] {
            let pg = labels(&RiordanGraph::family(Family::Pascal, n).unwrap());
            for l in [Label::Bell, Label::Proper, Label::ODecomposable, Label::IoDecomposable] {
                assert!(pg.has(l), "PG{n} lacks {l:?}");
            }
            let cg = labels(&RiordanGraph::family(Family::Catalan, n).unwrap());
            assert!(cg.has(Label::Bell) && cg.has(Label::IoDecomposable));
            let kb = labels(&RiordanGraph::family(Family::CompleteBipartite, n).unwrap());
            for l in [Label::Appell, Label::Checkerboard, Label::EDecomposable] {
                assert!(kb.has(l));
            }
        }
        let path = labels(&RiordanGraph::family(Family::Path, 5).unwrap());
        assert!(path.has(Label::Appell) && path.has(Label::Proper) && path.has(Label::Derivative));
        let null = labels(&RiordanGraph::family(Family::Null, 5).unwrap());
        assert!(!null.has(Label::Proper));
        assert!(null.has(Label::ODecomposable) && null.has(Label::EDecomposable));
        let k = labels(&RiordanGraph::family(Family::Complete, 6).unwrap());
        assert!(!k.has(Label::ODecomposable) && !k.has(Label::Bell));
    }

    #[test]
    fn degree_formulas_on_families() {
        for fam in [Family::Pascal, Family::Catalan] {
            for n in 2..=40 {
                let rg = RiordanGraph::family(fam, n).unwrap();
                let cls = labels(&rg);
                for c in degree_formula_checks(&rg, &cls).unwrap() {
                    assert!(c.holds, "{fam:?} n={n} {c:?}");
                }
            }
        }
        let k = RiordanGraph::family(Family::Complete, 5).unwrap();
        assert!(matches!(
            degree_formula_checks(&k, &labels(&k)),
            Err(Error::HypothesisNotMet(_))
        ));
    }

    fn poly(bits: &[bool], trunc: usize) -> Gf2Series {
        Gf2Series::from_bits(bits.iter().copied()).zero_extended(trunc + 1)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reassembly_and_dual_routes(
            gb in proptest::collection::vec(any::<bool>(), 9),
            fb in proptest::collection::vec(any::<bool>(), 9),
            n in 1usize..=40,
        ) {
            let mut fb = fb;
            fb[0] = false;
            let trunc = RiordanGraph::series_trunc(n);
            let rg = RiordanGraph::from_series(poly(&gb, trunc), poly(&fb, trunc), n).unwrap();
            let d = decompose_unchecked(&rg).unwrap();
            prop_assert_eq!(&d.reassemble(), rg.graph().adjacency());
            let cls = classify(&rg).unwrap();
            if cls.has(Label::Bell) {
                prop_assert!(cls.has(Label::ODecomposable));
            }
            if cls.has(Label::Derivative) {
                prop_assert!(cls.has(Label::EDecomposable));
            }
            if cls.has(Label::Checkerboard) {
                for (u, v) in rg.graph().edges() {
                    prop_assert_eq!((u + v) % 2, 1);
                }
            }
            if cls.has(Label::Proper) {
                for i in 1..n {
                    prop_assert!(rg.graph().has_edge(i + 1, i));
                }
            }
        }

        #[test]
        fn io_generator_is_io(
            even in proptest::collection::vec(any::<bool>(), 5),
            n in 2usize..=48,
        ) {
            // [z^{2j+1}] g := [z^j] g, even bits free up to degree 8, g0 = 1.
            let mut bits = vec![false; (n + 3).max(10)];
            for (j, &b) in even.iter().enumerate() {
                bits[2 * j] = b;
            }
            bits[0] = true;
            for k in 1..bits.len() {
                if k % 2 == 1 {
                    bits[k] = bits[(k - 1) / 2];
                }
            }
            let g = Gf2Series::from_bits(bits);
            let f = g.shift_up(1);
            let rg = RiordanGraph::from_series(g, f, n).unwrap();
            let cls = classify(&rg).unwrap();
            prop_assert!(cls.io_bell());
        }
    }

    #[test]
    fn io_needs_lemma_condition() {
        // g = 1 + z^2: [z^1]g = 0 but [z^0]g = 1.
        let rg = RiordanGraph::from_exprs("1+z^2", "z*(1+z^2)", 12).unwrap();
        let cls = labels(&rg);
        assert!(cls.has(Label::Bell) && !cls.has(Label::IoDecomposable));
        let g = series_lang::eval_str("1+z^2", 8).unwrap();
        assert!(!g.odd_part().agrees_through(&g, 1).unwrap());
    }
}

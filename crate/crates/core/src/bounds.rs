//! Every inequality and identity as data. A [`BoundReport`] records both
//! sides, the relation, the hypothesis flag and the inputs that produced the
//! right side, so a violated bound is a reviewable record rather than a panic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bitmat::BitMatrix;
use crate::decompose::{classify, decompose_unchecked, degree_formula_checks, Classification, DecompositionBlocks, Label};
use crate::error::{Error, Result};
use crate::exact::{rank_int, ExactSummary};
use crate::fps::Gf2Series;
use crate::graph::{build_graph, ceil_log2, clique_and_chromatic, p_of, Family, Graph, RiordanGraph};
use crate::spectra::{count_leq, eigen_sym, graph_spectra, singular_max, GraphSpectra, SpectrumKind};
use num_traits::Zero;

/// Absolute slack allowed on every comparison.
pub const SLACK_TOL: f64 = 1e-8;
/// Half-width of the tie band around `a(H) = 1` in the median Laplacian bound.
pub const BRANCH_BAND: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "≥")]
    Ge,
    #[serde(rename = "≤")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

/// `Theorem` reports must hold; `Flagged` ones are transcribed formulas whose
/// violations are findings for review.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Theorem,
    Flagged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Pass,
    Fail,
    Skipped,
    Finding,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_id: String,
    pub tag: Tag,
    pub hypothesis_met: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub holds: bool,
    pub slack: f64,
    pub status: BoundStatus,
    pub inputs: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

fn tag_for(id: &str) -> Tag {
    if id.starts_with("family.") {
        Tag::Flagged
    } else {
        Tag::Theorem
    }
}

type Inputs = Vec<(&'static str, f64)>;

impl BoundReport {
    /// `slack` is `lhs - rhs` for `≥`, `rhs - lhs` for `≤` and `-|lhs - rhs|`
    /// for `=`; the relation holds iff `slack >= -SLACK_TOL`.
    pub fn evaluate(id: &str, lhs: f64, relation: Relation, rhs: f64, inputs: Inputs) -> Self {
        let slack = match relation {
            Relation::Ge => lhs - rhs,
            Relation::Le => rhs - lhs,
            Relation::Eq => -(lhs - rhs).abs(),
        };
        let finite = lhs.is_finite() && rhs.is_finite();
        let holds = finite && slack >= -SLACK_TOL;
        let tag = tag_for(id);
        let status = match (holds, tag) {
            (true, _) => BoundStatus::Pass,
            (false, Tag::Theorem) => BoundStatus::Fail,
            (false, Tag::Flagged) => BoundStatus::Finding,
        };
        let clean = |x: f64| if x.is_finite() { x } else { 0.0 };
        BoundReport {
            bound_id: id.to_string(),
            tag,
            hypothesis_met: true,
            lhs: clean(lhs),
            rhs: clean(rhs),
            relation,
            holds,
            slack: if finite { slack } else { f64::MIN },
            status,
            inputs: inputs.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            note: if finite { String::new() } else { "non-finite side".into() },
        }
    }

    pub fn skipped(id: &str, reason: &str) -> Self {
        BoundReport {
            bound_id: id.to_string(),
            tag: tag_for(id),
            hypothesis_met: false,
            lhs: 0.0,
            rhs: 0.0,
            relation: Relation::Eq,
            holds: true,
            slack: 0.0,
            status: BoundStatus::Skipped,
            inputs: BTreeMap::new(),
            note: reason.to_string(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// A hypothesis-met theorem report that does not hold.
    pub fn is_theorem_failure(&self) -> bool {
        self.hypothesis_met && self.tag == Tag::Theorem && !self.holds
    }
}

#[derive(Default)]
struct Sink {
    out: Vec<BoundReport>,
}

impl Sink {
    fn add(&mut self, id: &str, hyp: bool, why: &str, eval: impl FnOnce() -> (f64, Relation, f64, Inputs)) {
        if hyp {
            let (lhs, rel, rhs, inputs) = eval();
            self.out.push(BoundReport::evaluate(id, lhs, rel, rhs, inputs));
        } else {
            self.out.push(BoundReport::skipped(id, why));
        }
    }

    fn push(&mut self, r: BoundReport) {
        self.out.push(r);
    }
}

fn b2f(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Right sides of the two-part quotient bounds for a split into parts of
/// sizes `k1`, `k2` with `m1`, `m2` internal edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientRhs {
    pub m3: f64,
    pub c1: f64,
    pub c2: f64,
    pub adj: f64,
    /// Second eigenvalue of the adjacency quotient; an upper bound on `lambda_n`.
    pub adj_low: f64,
    pub lap: f64,
    pub q_hi: f64,
    pub q_lo: f64,
}

pub fn quotient_rhs(n: usize, k: usize, m: usize, m1: usize, m2: usize) -> QuotientRhs {
    let (n, k1, m, m1, m2) = (n as f64, k as f64, m as f64, m1 as f64, m2 as f64);
    let k2 = n - k1;
    let m3 = m - m1 - m2;
    let mid = m1 / k1 + m2 / k2;
    let rad = ((m1 / k1 - m2 / k2).powi(2) + m3 * m3 / (k1 * k2)).sqrt();
    let c1 = (m + 3.0 * m1 - m2) / k1;
    let c2 = (m - m1 + 3.0 * m2) / k2;
    let qrad = ((c1 - c2).powi(2) + 4.0 * m3 * m3 / (k1 * k2)).sqrt();
    QuotientRhs {
        m3,
        c1,
        c2,
        adj: mid + rad,
        adj_low: mid - rad,
        lap: n * m3 / (k1 * k2),
        q_hi: 0.5 * (c1 + c2 + qrad),
        q_lo: 0.5 * (c1 + c2 - qrad),
    }
}

fn complement_of(n: usize, w: &[usize]) -> Vec<usize> {
    let mut inw = vec![false; n + 1];
    for &v in w {
        inw[v] = true;
    }
    (1..=n).filter(|&v| !inw[v]).collect()
}

/// Quotient-matrix bounds for an arbitrary vertex subset `w` (1-based).
pub fn quotient_bounds(g: &Graph, spectra: &GraphSpectra, w: &[usize]) -> Result<Vec<BoundReport>> {
    let n = g.n();
    let mut sorted = w.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() || sorted.len() >= n || sorted.iter().any(|&v| v == 0 || v > n) {
        return Err(Error::EmptyOrFullSubset);
    }
    let rest = complement_of(n, &sorted);
    let k = sorted.len();
    let m = g.edge_count();
    let m1 = g.induced(&sorted).edge_count();
    let m2 = g.induced(&rest).edge_count();
    let q = quotient_rhs(n, k, m, m1, m2);
    let s = &spectra.scalars;
    let inputs = || -> Inputs {
        vec![
            ("n", n as f64),
            ("k", k as f64),
            ("m", m as f64),
            ("m1", m1 as f64),
            ("m2", m2 as f64),
            ("m3", q.m3),
            ("c1", q.c1),
            ("c2", q.c2),
        ]
    };
    let mut sink = Sink::default();
    sink.add("quotient.adj_radius", true, "", || (s.lambda1, Relation::Ge, q.adj, inputs()));
    sink.add("quotient.lap_radius", true, "", || (s.mu1, Relation::Ge, q.lap, inputs()));
    sink.add("quotient.signless_radius", true, "", || (s.q1, Relation::Ge, q.q_hi, inputs()));
    sink.add("quotient.signless_q2", true, "", || (s.q2, Relation::Ge, q.q_lo, inputs()));
    sink.add("quotient.signless_qn", true, "", || (q.q_lo, Relation::Ge, s.qn, inputs()));
    let (fm, fm1, fm2) = (m as f64, m1 as f64, m2 as f64);
    let neg_hyp = fm > fm1 + fm2 + 2.0 * (fm1 * fm2).sqrt();
    sink.add("quotient.neg_eig", neg_hyp, "needs m > m1 + m2 + 2 sqrt(m1 m2)", || {
        // The quotient's second eigenvalue is negative under the hypothesis,
        // so lambda_n <= it gives lambda_n < 0.
        (s.lambda_n, Relation::Le, q.adj_low.min(0.0), inputs())
    });
    Ok(sink.out)
}

/// `sum_{j=0}^{cols-1} {h f^j}_t(1)`.
pub fn column_ones(h: &Gf2Series, f: &Gf2Series, cols: usize, t: i64) -> Result<usize> {
    let mut p = h.clone();
    let mut total = 0;
    for j in 0..cols {
        if j > 0 {
            p = p.mul(f);
        }
        total += p.ones_count_prefix(t)?;
    }
    Ok(total)
}

/// `sigma(B)` from the generating functions:
/// `sum_j {z odd(gf) f^j}_{n1-1}(1) + sum_j {even(g) f^j}_{n2-1}(1)`.
pub fn sigma_formula(g: &Gf2Series, f: &Gf2Series, n: usize) -> Result<usize> {
    let n1 = n.div_ceil(2);
    let n2 = n / 2;
    let lower = g.mul(f).odd_part().shift_up(1);
    Ok(column_ones(&lower, f, n2, n1 as i64 - 1)? + column_ones(&g.even_part(), f, n1, n2 as i64 - 1)?)
}

/// Edge counts of the two halves read both off the graph and off the
/// generating functions; the routes must agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCounts {
    pub n1: usize,
    pub n2: usize,
    pub m: usize,
    pub m1: usize,
    pub m2: usize,
    pub sigma: usize,
}

pub fn split_counts(rg: &RiordanGraph, blocks: &DecompositionBlocks) -> Result<SplitCounts> {
    let n = rg.n();
    let n1 = n.div_ceil(2);
    let n2 = n / 2;
    let g = rg.graph();
    let odd: Vec<usize> = (1..=n).step_by(2).collect();
    let even: Vec<usize> = (2..=n).step_by(2).collect();
    let m1 = g.induced(&odd).edge_count();
    let m1_gf = build_graph(&rg.g().odd_part(), rg.f(), n1)?.edge_count();
    if m1 != m1_gf {
        return Err(Error::RouteMismatch { which: "m1", direct: m1, formula: m1_gf });
    }
    let (m2, m2_gf) = if n2 == 0 {
        (0, 0)
    } else {
        let gf_z = rg.g().mul(rg.f()).shift_down(1)?;
        (
            g.induced(&even).edge_count(),
            build_graph(&gf_z.odd_part(), rg.f(), n2)?.edge_count(),
        )
    };
    if m2 != m2_gf {
        return Err(Error::RouteMismatch { which: "m2", direct: m2, formula: m2_gf });
    }
    let sigma = blocks.b.count_ones();
    let sigma_gf = sigma_formula(rg.g(), rg.f(), n)?;
    if sigma != sigma_gf {
        return Err(Error::SigmaMismatch { direct: sigma, formula: sigma_gf });
    }
    let m = g.edge_count();
    if m != m1 + m2 + sigma {
        return Err(Error::AssertionFailure(format!("m = {m} but m1 + m2 + sigma = {}", m1 + m2 + sigma)));
    }
    Ok(SplitCounts { n1, n2, m, m1, m2, sigma })
}

/// Everything the report catalogue reads, computed once per graph.
#[derive(Debug, Clone)]
pub struct BoundContext {
    pub cls: Classification,
    pub blocks: DecompositionBlocks,
    pub spectra: GraphSpectra,
    pub counts: SplitCounts,
    pub exact: Option<ExactSummary>,
    /// `(omega, chi)` when the exact search ran.
    pub omega_chi: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundOptions {
    /// Compute the exact summary (needed by the inertia reports).
    pub exact: bool,
    /// Largest order for the exact clique and colouring search.
    pub clique_cap: usize,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions { exact: true, clique_cap: 32 }
    }
}

impl BoundContext {
    pub fn new(rg: &RiordanGraph, opts: BoundOptions) -> Result<Self> {
        let cls = classify(rg)?;
        let blocks = decompose_unchecked(rg)?;
        let spectra = graph_spectra(rg.graph())?;
        let counts = split_counts(rg, &blocks)?;
        let exact = if opts.exact {
            Some(ExactSummary::of_bits(rg.graph().adjacency())?)
        } else {
            None
        };
        let omega_chi = match clique_and_chromatic(rg.graph(), opts.clique_cap) {
            Ok(v) => Some(v),
            Err(Error::SizeCapExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(BoundContext { cls, blocks, spectra, counts, exact, omega_chi })
    }
}

pub fn graph_bounds(rg: &RiordanGraph, opts: BoundOptions) -> Result<Vec<BoundReport>> {
    let ctx = BoundContext::new(rg, opts)?;
    all_bounds(rg, &ctx)
}

/// The full catalogue for one graph. Reports whose hypothesis fails are
/// included as skipped.
pub fn all_bounds(rg: &RiordanGraph, ctx: &BoundContext) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    let n = rg.n();
    if n >= 2 {
        let prefix: Vec<usize> = (1..=n.div_ceil(2)).collect();
        out.extend(quotient_bounds(rg.graph(), &ctx.spectra, &prefix)?);
    }
    out.extend(riordan_bounds(rg, ctx)?);
    out.extend(family_bounds_for(rg, &ctx.spectra)?);
    out.extend(io_bounds(rg, ctx)?);
    out.extend(laplacian_bounds(rg, ctx)?);
    out.extend(degree_bounds(rg, ctx)?);
    out.extend(chromatic_bounds(rg, ctx));
    out.extend(inertia_bounds(rg, ctx)?);
    out.extend(spectral_bounds(rg, ctx)?);
    if ctx.cls.has(Label::Appell) {
        out.push(rayleigh_gf(rg, &ctx.cls, ctx.spectra.scalars.lambda1, &vec![1; n])?.with_note("h = all ones"));
    } else {
        out.push(BoundReport::skipped("rayleigh.appell", "needs an Appell graph"));
    }
    Ok(out)
}

fn vanish_on(s: &Gf2Series, parity: usize, top: i64) -> Result<bool> {
    if top < 0 {
        return Ok(true);
    }
    for i in (parity..=top as usize).step_by(2) {
        if s.coeff(i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn adjacency_eigs(a: &BitMatrix) -> Result<Vec<f64>> {
    Ok(eigen_sym(&a.to_f64(), SpectrumKind::Adjacency, false)?.eigenvalues)
}

/// Bounds read off the odd/even split, with the per-type corollaries.
pub fn riordan_bounds(rg: &RiordanGraph, ctx: &BoundContext) -> Result<Vec<BoundReport>> {
    let n = rg.n();
    let c = ctx.counts;
    let s = ctx.spectra.scalars;
    let cls = &ctx.cls;
    let mut sink = Sink::default();
    let two = n >= 2;
    let (fnn, fn1, fn2, fm, fm1, fm2) = (n as f64, c.n1 as f64, c.n2 as f64, c.m as f64, c.m1 as f64, c.m2 as f64);
    let q = if two { Some(quotient_rhs(n, c.n1, c.m, c.m1, c.m2)) } else { None };
    let base = || -> Inputs {
        vec![("n", fnn), ("n1", fn1), ("n2", fn2), ("m", fm), ("m1", fm1), ("m2", fm2)]
    };
    let with_c = |q: &QuotientRhs| -> Inputs {
        let mut v = base();
        v.push(("c1", q.c1));
        v.push(("c2", q.c2));
        v
    };
    let need2 = "needs n >= 2";
    sink.add("split.adj_radius", two, need2, || {
        let q = q.unwrap();
        (s.lambda1, Relation::Ge, q.adj, with_c(&q))
    });
    sink.add("split.lap_radius", two, need2, || {
        let q = q.unwrap();
        (s.mu1, Relation::Ge, q.lap, with_c(&q))
    });
    sink.add("split.signless_radius", two, need2, || {
        let q = q.unwrap();
        (s.q1, Relation::Ge, q.q_hi, with_c(&q))
    });
    sink.add("split.signless_q2", two, need2, || {
        let q = q.unwrap();
        (s.q2, Relation::Ge, q.q_lo, with_c(&q))
    });
    sink.add("split.signless_qn", two, need2, || {
        let q = q.unwrap();
        (q.q_lo, Relation::Ge, s.qn, with_c(&q))
    });
    sink.add("split.dominance_adj", two, need2, || {
        (q.unwrap().adj, Relation::Ge, 2.0 * fm / fnn, base())
    });
    sink.add("split.dominance_signless", two, need2, || {
        (q.unwrap().q_hi, Relation::Ge, 4.0 * fm / fnn, base())
    });

    // Appell, n even: both halves are G_{n/2}(odd(g), z), so m1 = m2.
    let appell = cls.has(Label::Appell) && two && n % 2 == 0;
    let why = "needs an Appell graph of even order";
    if appell && c.m1 != c.m2 {
        return Err(Error::RouteMismatch { which: "appell halves", direct: c.m1, formula: c.m2 });
    }
    sink.add("appell.adj_coincide", appell, why, || (q.unwrap().adj, Relation::Eq, 2.0 * fm / fnn, base()));
    sink.add("appell.signless_coincide", appell, why, || {
        (q.unwrap().q_hi, Relation::Eq, 4.0 * fm / fnn, base())
    });
    sink.add("appell.lap_radius", appell, why, || (s.mu1, Relation::Ge, 4.0 * (fm - 2.0 * fm1) / fnn, base()));
    sink.add("appell.signless_q2", appell, why, || (s.q2, Relation::Ge, 8.0 * fm1 / fnn, base()));
    sink.add("appell.signless_qn", appell, why, || (8.0 * fm1 / fnn, Relation::Ge, s.qn, base()));
    sink.add("appell.neg_eig", appell && c.m > 4 * c.m1, "needs an Appell graph of even order with m > 4 m1", || {
        (s.lambda_n, Relation::Le, (8.0 * fm1 - 2.0 * fm) / fnn, base())
    });

    // g with vanishing odd coefficients: X is null.
    let odd_free = two && vanish_on(rg.g(), 1, n as i64 - 2)?;
    let why = "needs [z^(2j+1)]g = 0 and n >= 2";
    let of_c = || ((fm - fm2) / fn1, (fm + 3.0 * fm2) / fn2);
    let of_inputs = || {
        let (c1, c2) = of_c();
        let mut v = base();
        v.push(("c1", c1));
        v.push(("c2", c2));
        v
    };
    sink.add("odd_free.adj_radius", odd_free, why, || {
        let rhs = fm2 / fn2 + (fm2 * fm2 / (fn2 * fn2) + (fm - fm2).powi(2) / (fn1 * fn2)).sqrt();
        (s.lambda1, Relation::Ge, rhs, base())
    });
    sink.add("odd_free.lap_radius", odd_free, why, || {
        (s.mu1, Relation::Ge, fnn * (fm - fm2) / (fn1 * fn2), base())
    });
    let of_q = |sign: f64| {
        let (c1, c2) = of_c();
        0.5 * (c1 + c2 + sign * ((c1 - c2).powi(2) + 4.0 * (fm - fm2).powi(2) / (fn1 * fn2)).sqrt())
    };
    sink.add("odd_free.signless_radius", odd_free, why, || (s.q1, Relation::Ge, of_q(1.0), of_inputs()));
    sink.add("odd_free.signless_q2", odd_free, why, || (s.q2, Relation::Ge, of_q(-1.0), of_inputs()));
    sink.add("odd_free.signless_qn", odd_free, why, || (of_q(-1.0), Relation::Ge, s.qn, of_inputs()));

    // Checkerboard: bipartite between odd and even labels.
    let cb = cls.has(Label::Checkerboard) && two;
    let why = "needs a checkerboard graph with n >= 2";
    sink.add("checkerboard.symmetric", cb, why, || (s.lambda1, Relation::Eq, -s.lambda_n, base()));
    sink.add("checkerboard.adj_radius", cb, why, || {
        (s.lambda1, Relation::Ge, fm / (fn1 * fn2).sqrt(), base())
    });
    sink.add("checkerboard.lap_signless_equal", cb, why, || (s.mu1, Relation::Eq, s.q1, base()));
    sink.add("checkerboard.lap_radius", cb, why, || (s.mu1, Relation::Ge, fnn * fm / (fn1 * fn2), base()));
    sink.add("checkerboard.signless_min", cb, why, || (s.qn, Relation::Eq, 0.0, base()));

    // g and f with vanishing even coefficients: no odd-even edges.
    let even_free = two && vanish_on(rg.g(), 0, n as i64 - 2)? && vanish_on(rg.f(), 0, n as i64 - 1)?;
    let why = "needs [z^(2j)]g = [z^(2j)]f = 0 and n >= 2";
    if even_free {
        let h1 = &ctx.blocks.x;
        let h2 = &ctx.blocks.y;
        let l1 = adjacency_eigs(h1)?[0];
        let l2 = adjacency_eigs(h2)?[0];
        let sg = |a: &BitMatrix| -> Result<f64> {
            let gr = Graph::from_adjacency(a.clone())?;
            let q = gr.signless_i64();
            let qf: Vec<Vec<f64>> = q.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
            Ok(eigen_sym(&qf, SpectrumKind::Signless, false)?.eigenvalues[0])
        };
        let (q1a, q1b) = (sg(h1)?, sg(h2)?);
        sink.add("even_free.no_cross_edges", true, "", || (c.sigma as f64, Relation::Eq, 0.0, base()));
        sink.add("even_free.adj_components", true, "", || (s.lambda1, Relation::Eq, l1.max(l2), base()));
        sink.add("even_free.adj_radius", true, "", || {
            (s.lambda1, Relation::Ge, (2.0 * fm1 / fn1).max(2.0 * (fm - fm1) / fn2), base())
        });
        sink.add("even_free.signless_components", true, "", || (s.q1, Relation::Eq, q1a.max(q1b), base()));
        sink.add("even_free.signless_radius", true, "", || {
            (s.q1, Relation::Ge, (4.0 * fm1 / fn1).max(4.0 * (fm - fm1) / fn2), base())
        });
    } else {
        for id in [
            "even_free.no_cross_edges",
            "even_free.adj_components",
            "even_free.adj_radius",
            "even_free.signless_components",
            "even_free.signless_radius",
        ] {
            sink.push(BoundReport::skipped(id, why));
        }
    }

    // Bell: Y is null; in the io case m1 is also m(G_{n1}(g, zg)).
    let bell = cls.has(Label::Bell) && two;
    let why = "needs a Bell graph with n >= 2";
    if bell && cls.has(Label::IoDecomposable) {
        let m1_io = build_graph(rg.g(), rg.f(), c.n1)?.edge_count();
        if m1_io != c.m1 {
            return Err(Error::RouteMismatch { which: "bell io m1", direct: c.m1, formula: m1_io });
        }
    }
    let bc = || ((fm + 3.0 * fm1) / fn1, (fm - fm1) / fn2);
    let b_inputs = || {
        let (c1, c2) = bc();
        let mut v = base();
        v.push(("c1", c1));
        v.push(("c2", c2));
        v
    };
    let b_q = |sign: f64| {
        let (c1, c2) = bc();
        0.5 * (c1 + c2 + sign * ((c1 - c2).powi(2) + 4.0 * (fm - fm1).powi(2) / (fn1 * fn2)).sqrt())
    };
    sink.add("bell.adj_radius", bell, why, || {
        let rhs = fm1 / fn1 + (fm1 * fm1 / (fn1 * fn1) + (fm - fm1).powi(2) / (fn1 * fn2)).sqrt();
        (s.lambda1, Relation::Ge, rhs, base())
    });
    sink.add("bell.lap_radius", bell, why, || (s.mu1, Relation::Ge, fnn * (fm - fm1) / (fn1 * fn2), base()));
    sink.add("bell.signless_radius", bell, why, || (s.q1, Relation::Ge, b_q(1.0), b_inputs()));
    sink.add("bell.signless_q2", bell, why, || (s.q2, Relation::Ge, b_q(-1.0), b_inputs()));
    sink.add("bell.signless_qn", bell, why, || (b_q(-1.0), Relation::Ge, s.qn, b_inputs()));
    Ok(sink.out)
}

/// The ten closed-form right sides for Pascal and Catalan graphs of order
/// `2^k` and `2^k + 1`, transcribed verbatim. Returns `(id, spectrum, rhs,
/// relation)` where `spectrum` names the compared quantity.
fn family_formulas(fam: Family, k: i32, plus_one: bool) -> Vec<(&'static str, &'static str, f64, Relation)> {
    let p2 = |e: i32| 2f64.powi(e);
    let t = 3f64.powi(k - 1);
    let u = p2(k - 1);
    let v = p2(k - 2);
    match (fam, plus_one) {
        (Family::Pascal, false) => vec![
            (
                "family.pascal_adj_pow2",
                "lambda1",
                (t + ((t - u).powi(2) + 4.0 * (t - v).powi(2)).sqrt()) / u - 1.0,
                Relation::Ge,
            ),
            (
                "family.pascal_signless_pow2",
                "q1",
                0.5 * (t / p2(k - 4) + ((t - u).powi(2) + (t - v).powi(2)).sqrt() / p2(k - 3)) - 3.0,
                Relation::Ge,
            ),
        ],
        (Family::Pascal, true) => vec![
            (
                "family.pascal_adj_pow2p1",
                "lambda1",
                t * (1.0 + (17.0 + p2(3 - k)).sqrt()) / (u + 1.0),
                Relation::Ge,
            ),
            (
                "family.pascal_signless_pow2p1",
                "q1",
                t * (p2(k + 1) + 1.0 + (p2(2 * k + 1) + 1.0).sqrt()) / (u * (u + 1.0)),
                Relation::Ge,
            ),
        ],
        (Family::Catalan, false) => {
            let root = (2.0 * t * (t - 1.0) + 1.0).sqrt();
            vec![
                ("family.catalan_adj_pow2", "lambda1", (5.0 * 3f64.powi(2 * k - 2) - t) / p2(k), Relation::Ge),
                ("family.catalan_lap_pow2", "mu1", t / p2(k - 2), Relation::Ge),
                ("family.catalan_signless_pow2", "q1", (2.0 * t - 1.0 + root) / u, Relation::Ge),
                ("family.catalan_signless_q2_pow2", "q2", (2.0 * t - 1.0 - root) / u, Relation::Ge),
                ("family.catalan_signless_qn_pow2", "qn", (2.0 * t - 1.0 - root) / u, Relation::Le),
            ]
        }
        (Family::Catalan, true) => {
            let b = (t + p2(k) - 1.0) / 2.0;
            vec![
                (
                    "family.catalan_adj_pow2p1",
                    "lambda1",
                    (b + (b * b + (1.0 + p2(1 - k)) * (t + u).powi(2)).sqrt()) / (u + 1.0),
                    Relation::Ge,
                ),
                (
                    "family.catalan_lap_pow2p1",
                    "mu1",
                    (p2(k) + 1.0) * (t + u) / (p2(2 * k - 2) + u),
                    Relation::Ge,
                ),
            ]
        }
        _ => Vec::new(),
    }
}

fn family_reports(fam: Family, k: i32, plus_one: bool, spectra: &GraphSpectra) -> Vec<BoundReport> {
    let s = spectra.scalars;
    family_formulas(fam, k, plus_one)
        .into_iter()
        .map(|(id, which, rhs, rel)| {
            let lhs = match which {
                "lambda1" => s.lambda1,
                "mu1" => s.mu1,
                "q1" => s.q1,
                "q2" => s.q2,
                _ => s.qn,
            };
            BoundReport::evaluate(id, lhs, rel, rhs, vec![("k", k as f64), ("n", spectra.lambda().len() as f64)])
                .with_note(format!("compared quantity: {which}"))
        })
        .collect()
}

/// `(k, plus_one)` when `n = 2^k` or `n = 2^k + 1` with `k >= 2`.
fn pow2_shape(n: usize) -> Option<(i32, bool)> {
    if n >= 4 && n.is_power_of_two() {
        Some((n.trailing_zeros() as i32, false))
    } else if n >= 5 && (n - 1).is_power_of_two() {
        Some(((n - 1).trailing_zeros() as i32, true))
    } else {
        None
    }
}

/// Family bounds for `rg` when it is, label for label, a Pascal or Catalan
/// graph of a covered order.
pub fn family_bounds_for(rg: &RiordanGraph, spectra: &GraphSpectra) -> Result<Vec<BoundReport>> {
    let n = rg.n();
    let Some((k, plus_one)) = pow2_shape(n) else {
        return Ok(Vec::new());
    };
    for fam in [Family::Pascal, Family::Catalan] {
        if RiordanGraph::family(fam, n)?.graph() == rg.graph() {
            return Ok(family_reports(fam, k, plus_one, spectra));
        }
    }
    Ok(Vec::new())
}

/// All ten family bounds at parameter `k` (2 <= k <= 6).
pub fn named_family_bounds(k: u32) -> Result<Vec<BoundReport>> {
    if !(2..=6).contains(&k) {
        return Err(Error::HypothesisNotMet(format!("family bounds need 2 <= k <= 6, got {k}")));
    }
    let mut out = Vec::new();
    for fam in [Family::Pascal, Family::Catalan] {
        for plus_one in [false, true] {
            let n = (1usize << k) + usize::from(plus_one);
            let rg = RiordanGraph::family(fam, n)?;
            let spectra = graph_spectra(rg.graph())?;
            out.extend(family_reports(fam, k as i32, plus_one, &spectra));
        }
    }
    Ok(out)
}

/// Bounds for io-decomposable Bell graphs.
pub fn io_bounds(rg: &RiordanGraph, ctx: &BoundContext) -> Result<Vec<BoundReport>> {
    const IDS: [&str; 11] = [
        "io.edge_count",
        "io.adj_lower",
        "io.adj_upper",
        "io.radius_ratio",
        "io.lap_chain_lower",
        "io.lap_chain",
        "io.radius_gap",
        "io.signless_radius",
        "io.least_eig",
        "io.sqrt2_radius",
        "io.least_eig_perturbation",
    ];
    if !ctx.cls.io_bell() {
        return Ok(IDS
            .iter()
            .map(|id| BoundReport::skipped(id, "needs an io-decomposable Bell graph"))
            .collect());
    }
    let n = rg.n();
    let s = ctx.spectra.scalars;
    let c = ctx.counts;
    let l = ceil_log2(n) as f64;
    let fnn = n as f64;
    let fm = c.m as f64;
    let n1 = c.n1;
    let base = || -> Inputs { vec![("n", fnn), ("m", fm), ("L", l), ("n1", n1 as f64)] };
    let x_eigs = adjacency_eigs(&ctx.blocks.x)?;
    let lambda1_half = x_eigs[0];
    let eta = x_eigs.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    let sigma_max = singular_max(&ctx.blocks.b)?;
    // The statement's sum; it counts the ones of B(odd(g), f)_{n1-1} on and
    // below the diagonal, i.e. the edges of the odd half.
    let sum = column_ones(&rg.g().odd_part(), rg.f(), n1.saturating_sub(1), n1 as i64 - 2)?;
    if sum != c.m1 {
        return Err(Error::RouteMismatch { which: "sqrt2 sum", direct: c.m1, formula: sum });
    }
    let mut sink = Sink::default();
    sink.add(IDS[0], true, "", || (fm, Relation::Le, fnn * fnn / 2.0 * (1.0 - 1.0 / (l + 1.0)), base()));
    sink.add(IDS[1], true, "", || (s.lambda1, Relation::Ge, l, base()));
    sink.add(IDS[2], true, "", || (s.lambda1, Relation::Le, fnn * (1.0 - 1.0 / (l + 1.0)), base()));
    sink.add(IDS[3], true, "", || (s.lambda1 / s.lambda_n.abs(), Relation::Le, l, base()));
    sink.add(IDS[4], true, "", || (l + 1.0, Relation::Le, (l + 1.0) / l * s.lambda1, base()));
    sink.add(IDS[5], true, "", || ((l + 1.0) / l * s.lambda1, Relation::Le, s.mu1, base()));
    sink.add(IDS[6], true, "", || {
        let mut v = base();
        v.push(("lambda1_half", lambda1_half));
        (s.lambda1 - lambda1_half, Relation::Le, -s.lambda_n, v)
    });
    sink.add(IDS[7], true, "", || (s.q1, Relation::Ge, 2.0 * l, base()));
    sink.add(IDS[8], true, "", || {
        let rhs = 2.0 * sigma_max * sigma_max / (eta + (eta * eta + 4.0 * sigma_max).sqrt());
        let mut v = base();
        v.push(("sigma_max", sigma_max));
        v.push(("eta", eta));
        (s.lambda_n.abs(), Relation::Le, rhs, v)
    });
    sink.add(IDS[9], true, "", || {
        let mut v = base();
        v.push(("sum", sum as f64));
        (s.lambda1, Relation::Ge, (1.0 + 2f64.sqrt()) / n1 as f64 * sum as f64, v)
    });
    // The perturbation estimate the previous bound rests on, compared with
    // the least eigenvalue of the block-diagonal part diag(X, O).
    let shifted = x_eigs.last().copied().unwrap_or(0.0).min(0.0);
    sink.add(IDS[10], true, "", || {
        let rhs = 2.0 * sigma_max * sigma_max / (eta + (eta * eta + 4.0 * sigma_max).sqrt());
        let mut v = base();
        v.push(("sigma_max", sigma_max));
        v.push(("eta", eta));
        v.push(("lambda_n_blockdiag", shifted));
        ((s.lambda_n - shifted).abs(), Relation::Le, rhs, v)
    });
    let mut out = sink.out;
    if let Some(r) = out.iter_mut().find(|r| r.bound_id == IDS[9]) {
        r.note = "inner products truncated at degree n1-2".into();
    }
    Ok(out)
}

fn laplacian_eigs(g: &Graph) -> Result<Vec<f64>> {
    let l = g.laplacian_i64();
    let lf: Vec<Vec<f64>> = l.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    Ok(eigen_sym(&lf, SpectrumKind::Laplacian, false)?.eigenvalues)
}

/// `mu_{n1} <= ...` with the two-branch rule for odd `n`; inside the tie band
/// both branches are evaluated and the better one is reported.
fn median_report(id: &str, mu_k: f64, half_floor: f64, half_ceil: f64, a_h: f64, odd_n: bool, inputs: Inputs) -> BoundReport {
    let big = half_floor + a_h;
    let rhs = if !odd_n {
        big
    } else if (a_h - 1.0).abs() <= BRANCH_BAND {
        big.max(half_ceil)
    } else if a_h > 1.0 {
        big
    } else {
        half_ceil
    };
    BoundReport::evaluate(id, mu_k, Relation::Le, rhs, inputs)
}

/// Laplacian bounds: the `sigma(B)` bound, its proper corollary, the median
/// eigenvalues and the io Bell extremes.
pub fn laplacian_bounds(rg: &RiordanGraph, ctx: &BoundContext) -> Result<Vec<BoundReport>> {
    let n = rg.n();
    let c = ctx.counts;
    let s = ctx.spectra.scalars;
    let mu = ctx.spectra.mu();
    let cls = &ctx.cls;
    let (fnn, fn1, fn2) = (n as f64, c.n1 as f64, c.n2 as f64);
    let mut sink = Sink::default();
    let two = n >= 2;
    let base = || -> Inputs { vec![("n", fnn), ("n1", fn1), ("n2", fn2), ("sigma", c.sigma as f64)] };
    sink.add("lap.sigma_radius", two, "needs n >= 2", || {
        (s.mu1, Relation::Ge, fnn * c.sigma as f64 / (fn1 * fn2), base())
    });

    let proper = cls.has(Label::Proper);
    let proper_sum = if proper {
        let lower = rg.g().mul(rg.f()).odd_part().shift_up(1);
        let a = lower.ones_count_prefix(c.n1 as i64 - 1)? as f64;
        let b = rg.g().even_part().ones_count_prefix(c.n2 as i64 - 1)? as f64;
        a + b + 2.0 * (n / 2) as f64 - 3.0
    } else {
        0.0
    };
    sink.add("lap.proper_radius", proper, "needs a proper graph", || {
        let mut v = base();
        v.push(("count", proper_sum));
        (s.mu1, Relation::Ge, fnn / (fn1 * fn2) * proper_sum, v)
    });

    // Median eigenvalues. mu is descending, so mu_k is mu[k-1].
    let o = cls.has(Label::ODecomposable);
    sink.add("lap.median_o_upper", o && two, "needs an o-decomposable graph with n >= 2", || {
        (mu[c.n1], Relation::Le, fn1, base())
    });
    if o && c.n1 >= 2 {
        let a_h = laplacian_eigs(&Graph::from_adjacency(ctx.blocks.x.clone())?)?[c.n1 - 2];
        let mut v = base();
        v.push(("a_H", a_h));
        sink.push(median_report("lap.median_o", mu[c.n1 - 1], fn2, fn1, a_h, n % 2 == 1, v));
    } else {
        sink.push(BoundReport::skipped("lap.median_o", "needs an o-decomposable graph with n >= 3"));
    }
    let e = cls.has(Label::EDecomposable);
    sink.add("lap.median_e_upper", e && two, "needs an e-decomposable graph with n >= 2", || {
        (mu[c.n2], Relation::Le, fn2, base())
    });
    if e && c.n2 >= 2 {
        let a_h = laplacian_eigs(&Graph::from_adjacency(ctx.blocks.y.clone())?)?[c.n2 - 2];
        let mut v = base();
        v.push(("a_H", a_h));
        sink.push(BoundReport::evaluate("lap.median_e", mu[c.n2 - 1], Relation::Le, fn2 + a_h, v));
    } else {
        sink.push(BoundReport::skipped("lap.median_e", "needs an e-decomposable graph with n >= 4"));
    }

    // io Bell extremes.
    let io = cls.io_bell();
    let why = "needs an io-decomposable Bell graph";
    if io {
        let p = p_of(n);
        let pow = 1usize << p;
        let ones = rg.g_ones(n as i64 - pow as i64 - 2);
        let rhs = (pow + ones + 1) as f64;
        let inputs = || -> Inputs { vec![("n", fnn), ("p", p as f64), ("g_ones", ones as f64)] };
        sink.add("lap.io_radius", true, "", || (s.mu1, Relation::Ge, rhs, inputs()));
        let half = (n - pow) / 2;
        let mut predicted = n == pow + 1;
        if !predicted {
            predicted = true;
            for s_ in 0..half {
                predicted &= rg.g().coeff(2 * s_)?;
            }
        }
        let observed = s.mu1 - rhs <= SLACK_TOL;
        sink.add("lap.io_radius_equality", true, "", || (b2f(observed), Relation::Eq, b2f(predicted), inputs()));
        let mut odd_sum = 0usize;
        for i in 1..=n.div_ceil(2) {
            odd_sum += usize::from(rg.g().coeff(2 * i - 1)?);
        }
        let complete = rg.graph().edge_count() == n * (n - 1) / 2;
        sink.add("lap.io_fiedler_upper", !complete, "needs a non-complete graph", || {
            (s.a, Relation::Le, 1.0 + odd_sum as f64, vec![("n", fnn), ("odd_sum", odd_sum as f64)])
        });
        let low = n == pow + 1 || n == pow + 2;
        sink.add("lap.io_fiedler_lower", low, "needs n in {2^p+1, 2^p+2}", || {
            (s.a, Relation::Ge, 1.0, vec![("n", fnn), ("p", p as f64)])
        });
        let at_n = mu.iter().filter(|&&x| (x - fnn).abs() <= 1e-6).count();
        let cap = if n >= 1 + pow / 2 + pow { 2.0 } else { 3.0 };
        sink.add("lap.io_multiplicity_n", true, "", || (at_n as f64, Relation::Le, cap, vec![("n", fnn)]));
    } else {
        for id in [
            "lap.io_radius",
            "lap.io_radius_equality",
            "lap.io_fiedler_upper",
            "lap.io_fiedler_lower",
            "lap.io_multiplicity_n",
        ] {
            sink.push(BoundReport::skipped(id, why));
        }
    }
    Ok(sink.out)
}

/// Degree facts: general Laplacian-degree lemmas plus the io Bell vertex
/// formulas and universal-vertex results.
pub fn degree_bounds(rg: &RiordanGraph, ctx: &BoundContext) -> Result<Vec<BoundReport>> {
    let g = rg.graph();
    let n = rg.n();
    let fnn = n as f64;
    let s = ctx.spectra.scalars;
    let degs = g.degrees();
    let delta_max = degs.iter().copied().max().unwrap_or(0);
    let delta_min = degs.iter().copied().min().unwrap_or(0);
    let m = g.edge_count();
    let mut sink = Sink::default();
    let base = || -> Inputs { vec![("n", fnn), ("max_degree", delta_max as f64), ("min_degree", delta_min as f64)] };
    sink.add("degree.lap_max_degree", m > 0, "needs an edge", || {
        (s.mu1, Relation::Ge, delta_max as f64 + 1.0, base())
    });
    sink.add("degree.lap_upper", true, "", || (s.mu1, Relation::Le, fnn, base()));
    let comp_connected = g.complement().is_connected();
    sink.add("degree.lap_upper_equality", true, "", || {
        (b2f((s.mu1 - fnn).abs() <= SLACK_TOL), Relation::Eq, b2f(!comp_connected), base())
    });
    let complete = m == n * (n - 1) / 2;
    sink.add("degree.fiedler_min_degree", n >= 2 && !complete, "needs n >= 2 and a non-complete graph", || {
        (s.a, Relation::Le, delta_min as f64, base())
    });

    const IO_IDS: [&str; 11] = [
        "degree.pow2_plus1_formula",
        "degree.vertex2_formula",
        "degree.top_range",
        "degree.top_vs_first",
        "degree.top_vs_half",
        "degree.top_vs_even",
        "degree.top_universal_iff",
        "degree.universal_count",
        "degree.universal_location",
        "degree.three_universal_pascal",
        "degree.single_universal_top",
    ];
    if !ctx.cls.io_bell() {
        for id in IO_IDS {
            sink.push(BoundReport::skipped(id, "needs an io-decomposable Bell graph"));
        }
        return Ok(sink.out);
    }
    let checks = degree_formula_checks(rg, &ctx.cls)?;
    for (id, chk) in IO_IDS[..2].iter().zip(&checks) {
        sink.add(id, true, "", || {
            (chk.direct as f64, Relation::Eq, chk.formula as f64, vec![("vertex", chk.vertex as f64)])
        });
    }
    let p = p_of(n);
    let pow = 1usize << p;
    let top = pow + 1;
    let d_top = g.degree(top) as f64;
    let pin = || -> Inputs { vec![("n", fnn), ("p", p as f64), ("d_top", d_top)] };
    sink.add(IO_IDS[2], true, "", || {
        (d_top, Relation::Ge, (pow as u32 + ceil_log2(n - pow)) as f64, pin())
    });
    sink.add(IO_IDS[3], true, "", || (d_top, Relation::Ge, g.degree(1) as f64, pin()));
    let half_ok = p >= 1 && n <= 1 + pow / 2 + pow;
    sink.add(IO_IDS[4], half_ok, "needs p >= 1 and n <= 1 + 2^(p-1) + 2^p", || {
        (d_top, Relation::Ge, g.degree(pow / 2 + 1) as f64, pin())
    });
    let even_max = (2..=n).step_by(2).map(|v| g.degree(v)).max().unwrap_or(0);
    sink.add(IO_IDS[5], true, "", || (d_top, Relation::Ge, even_max as f64, pin()));
    let half = (n - pow) / 2;
    let mut predicted = n == top;
    if !predicted {
        predicted = true;
        for s_ in 0..half {
            predicted &= rg.g().coeff(2 * s_)?;
        }
    }
    let universal = g.universal_vertices();
    sink.add(IO_IDS[6], true, "", || (b2f(universal.contains(&top)), Relation::Eq, b2f(predicted), pin()));
    let narrow = n >= 1 + pow / 2 + pow;
    let allowed: Vec<usize> = if narrow { vec![1, top] } else { vec![1, pow / 2 + 1, top] };
    sink.add(IO_IDS[7], true, "", || {
        (universal.len() as f64, Relation::Le, allowed.len() as f64, pin())
    });
    sink.add(IO_IDS[8], true, "", || {
        (b2f(universal.iter().all(|v| allowed.contains(v))), Relation::Eq, 1.0, pin())
    });
    let three = universal.len() == 3;
    sink.add(IO_IDS[9], three, "needs three universal vertices", || {
        let pascal = RiordanGraph::family(Family::Pascal, n).map(|pg| pg.graph() == g).unwrap_or(false);
        (b2f(pascal && n == top), Relation::Eq, 1.0, pin())
    });
    sink.add(IO_IDS[10], universal.len() == 1, "needs exactly one universal vertex", || {
        (universal[0] as f64, Relation::Eq, top as f64, pin())
    });
    Ok(sink.out)
}

/// Clique and chromatic bounds where the exact search ran.
pub fn chromatic_bounds(rg: &RiordanGraph, ctx: &BoundContext) -> Vec<BoundReport> {
    let ids = [
        "chromatic.radius_lower",
        "chromatic.radius_upper",
        "chromatic.hoffman",
        "chromatic.lap_ratio",
        "chromatic.io_clique",
        "chromatic.io_chromatic",
    ];
    let Some((omega, chi)) = ctx.omega_chi else {
        return ids
            .iter()
            .map(|id| BoundReport::skipped(id, "order above the exact search cap"))
            .collect();
    };
    let s = ctx.spectra.scalars;
    let n = rg.n();
    let fnn = n as f64;
    let (om, ch) = (omega as f64, chi as f64);
    let base = || -> Inputs { vec![("n", fnn), ("omega", om), ("chi", ch)] };
    let has_edge = rg.graph().edge_count() > 0;
    let mut sink = Sink::default();
    sink.add(ids[0], true, "", || (ch - 1.0, Relation::Le, s.lambda1, base()));
    sink.add(ids[1], true, "", || (s.lambda1, Relation::Le, fnn * (1.0 - 1.0 / om), base()));
    sink.add(ids[2], has_edge, "needs an edge", || {
        (ch, Relation::Ge, 1.0 + s.lambda1 / s.lambda_n.abs(), base())
    });
    sink.add(ids[3], has_edge, "needs an edge", || {
        (ch, Relation::Ge, 1.0 + s.lambda1 / (s.mu1 - s.lambda1), base())
    });
    let io = ctx.cls.io_bell();
    let l1 = ceil_log2(n) as f64 + 1.0;
    sink.add(ids[4], io, "needs an io-decomposable Bell graph", || (om, Relation::Eq, l1, base()));
    sink.add(ids[5], io, "needs an io-decomposable Bell graph", || (ch, Relation::Eq, l1, base()));
    sink.out
}

/// Inertia bounds for o- and e-decomposable graphs (exact counts).
pub fn inertia_bounds(rg: &RiordanGraph, ctx: &BoundContext) -> Result<Vec<BoundReport>> {
    let ids = [
        "inertia.o_max",
        "inertia.o_balanced",
        "inertia.e_max",
        "inertia.e_odd_singular",
        "inertia.e_balanced",
        "inertia.bipartite_rank",
        "inertia.complement_band",
        "inertia.complement_negative",
    ];
    let Some(ex) = &ctx.exact else {
        return Ok(ids.iter().map(|id| BoundReport::skipped(id, "exact summary not computed")).collect());
    };
    let n = rg.n();
    let fnn = n as f64;
    let (n1, n2) = (n.div_ceil(2) as f64, (n / 2) as f64);
    let inr = ex.inertia;
    let (plus, minus) = (inr.plus as f64, inr.minus as f64);
    let o = ctx.cls.has(Label::ODecomposable);
    let e = ctx.cls.has(Label::EDecomposable);
    let nonsingular = !ex.det.is_zero();
    let base = || -> Inputs { vec![("n", fnn), ("plus", plus), ("minus", minus), ("zero", inr.zero as f64)] };
    let mut sink = Sink::default();
    sink.add(ids[0], o, "needs an o-decomposable graph", || (plus.max(minus), Relation::Le, n1, base()));
    let bal = "needs n even and det != 0";
    sink.add(ids[1], o && n % 2 == 0 && nonsingular, bal, || (plus.max(minus), Relation::Eq, fnn / 2.0, base()));
    sink.add(ids[2], e, "needs an e-decomposable graph", || (plus.max(minus), Relation::Le, n2, base()));
    sink.add(ids[3], e && n % 2 == 1, "needs an e-decomposable graph of odd order", || {
        (b2f(nonsingular), Relation::Eq, 0.0, base())
    });
    sink.add(ids[4], e && nonsingular, "needs an e-decomposable nonsingular graph", || {
        let balanced = n % 2 == 0 && 2 * inr.plus == n && 2 * inr.minus == n;
        (b2f(balanced), Relation::Eq, 1.0, base())
    });
    let oe = o || e;
    if oe {
        let h = rg.graph().bipartite_double();
        let r = rank_int(&h.adjacency().to_i64()) as f64;
        sink.add(ids[5], true, "", || {
            let mut v = base();
            v.push(("rank_h", r));
            (plus.min(minus), Relation::Ge, r / 2.0, v)
        });
        let comp = rg.graph().complement();
        let ce = adjacency_eigs(comp.adjacency())?;
        let band = count_leq(&ce, -1.0) as f64;
        let neg = ce.iter().filter(|&&x| x < -1e-6).count() as f64;
        let floor = if o { n2 - 1.0 } else { n1 - 1.0 };
        let floor = if o && e { floor.max(n1 - 1.0) } else { floor };
        let cin = || -> Inputs { vec![("n", fnn), ("band", band), ("negative", neg)] };
        sink.add(ids[6], true, "", || (band, Relation::Ge, floor, cin()));
        sink.add(ids[7], true, "", || (neg, Relation::Ge, band, cin()));
    } else {
        for id in &ids[5..] {
            sink.push(BoundReport::skipped(id, "needs an o- or e-decomposable graph"));
        }
    }
    Ok(sink.out)
}

/// General facts: average-degree bounds and the complement identity.
pub fn spectral_bounds(rg: &RiordanGraph, ctx: &BoundContext) -> Result<Vec<BoundReport>> {
    let n = rg.n();
    let fnn = n as f64;
    let m = rg.graph().edge_count() as f64;
    let s = ctx.spectra.scalars;
    let base = || -> Inputs { vec![("n", fnn), ("m", m)] };
    let mut sink = Sink::default();
    sink.add("spectral.avg_degree", true, "", || (s.lambda1, Relation::Ge, 2.0 * m / fnn, base()));
    sink.add("spectral.signless_twice_radius", true, "", || (s.q1, Relation::Ge, 2.0 * s.lambda1, base()));
    sink.add("spectral.signless_avg", true, "", || (s.q1, Relation::Ge, 4.0 * m / fnn, base()));
    let err = crate::spectra::complement_identity_error(rg.graph(), ctx.spectra.mu())?;
    sink.add("spectral.complement_identity", true, "", || (err, Relation::Eq, 0.0, base()));
    Ok(sink.out)
}

/// Rayleigh quotient for an Appell graph from generating functions:
/// `lambda_1 >= 2 (h . k) / (h . h)` with `k_i = [z^(i-1)] (g h)`, i.e. `k = z g h`
/// truncated to degree `n - 1`. `g` enters through its 0/1 coefficients (the
/// adjacency entries) and `h` through the integer coefficients of the test
/// vector, lowest degree first.
pub fn rayleigh_gf(rg: &RiordanGraph, cls: &Classification, lambda1: f64, h: &[i64]) -> Result<BoundReport> {
    if !cls.has(Label::Appell) {
        return Err(Error::HypothesisNotMet("Rayleigh bound needs an Appell graph".into()));
    }
    let n = rg.n();
    if h.len() > n {
        return Err(Error::Dimension(format!("test polynomial has {} coefficients, order is {n}", h.len())));
    }
    let mut hv = h.to_vec();
    hv.resize(n, 0);
    if hv.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector);
    }
    let gb: Vec<i128> = (0..n.saturating_sub(1))
        .map(|i| rg.g().coeff(i).map(i128::from))
        .collect::<Result<_>>()?;
    let hh: i128 = hv.iter().map(|&x| (x as i128) * (x as i128)).sum();
    let mut hk: i128 = 0;
    for i in 1..n {
        let ki: i128 = (0..i).map(|j| gb[i - 1 - j] * hv[j] as i128).sum();
        hk += hv[i] as i128 * ki;
    }
    let rhs = 2.0 * hk as f64 / hh as f64;
    Ok(BoundReport::evaluate(
        "rayleigh.appell",
        lambda1,
        Relation::Ge,
        rhs,
        vec![("n", n as f64), ("h_dot_h", hh as f64), ("h_dot_k", hk as f64)],
    ))
}

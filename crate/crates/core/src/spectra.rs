//! Floating-point spectra by cyclic Jacobi, and exact checks of integral
//! eigenpairs.

use serde::{Deserialize, Serialize};

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};
use crate::exact::{mat_vec, Inertia, IntMatrix};
use crate::graph::{ceil_log2, p_of, Family, Graph, RiordanGraph};

pub const MAX_SWEEPS: usize = 100;
pub const OFF_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    Adjacency,
    Laplacian,
    Signless,
    Gram,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub kind: SpectrumKind,
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Off-diagonal Frobenius norm left when iteration stopped.
    pub residual_bound: f64,
    /// `|sum of eigenvalues - trace|`.
    pub trace_error: f64,
    /// Column `k` of the matrix is the eigenvector of `eigenvalues[k]`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eigenvectors: Option<Vec<Vec<f64>>>,
}

fn frobenius(m: &[Vec<f64>]) -> f64 {
    m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

fn off_diagonal(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[i][j] * m[i][j];
            }
        }
    }
    s.sqrt()
}

/// Cyclic-by-row Jacobi on a private copy of `m`.
pub fn eigen_sym(m: &[Vec<f64>], kind: SpectrumKind, vectors: bool) -> Result<SpectrumReport> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(Error::Dimension("matrix is not symmetric".into()));
            }
        }
    }
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let target = OFF_TOL * frobenius(m);
    let mut off = off_diagonal(&a);
    let mut sweeps = 0;
    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                if vectors {
                    for row in v.iter_mut() {
                        let vp = row[p];
                        let vq = row[q];
                        row[p] = c * vp - s * vq;
                        row[q] = s * vp + c * vq;
                    }
                }
            }
        }
        off = off_diagonal(&a);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
    let trace: f64 = (0..n).map(|i| m[i][i]).sum();
    let trace_error = (eigenvalues.iter().sum::<f64>() - trace).abs();
    let eigenvectors = vectors.then(|| {
        (0..n)
            .map(|r| order.iter().map(|&c| v[r][c]).collect())
            .collect()
    });
    Ok(SpectrumReport {
        kind,
        eigenvalues,
        residual_bound: off,
        trace_error,
        eigenvectors,
    })
}

fn int_to_f64(m: &IntMatrix) -> Vec<Vec<f64>> {
    m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect()
}

/// Scalars read off the three spectra by sort position. Graphs of order 1
/// have no second eigenvalues; those entries are 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralScalars {
    pub lambda1: f64,
    pub lambda_n: f64,
    pub mu1: f64,
    /// Algebraic connectivity `mu_{n-1}`.
    pub a: f64,
    pub q1: f64,
    pub q2: f64,
    pub qn: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSpectra {
    pub adjacency: SpectrumReport,
    pub laplacian: SpectrumReport,
    pub signless: SpectrumReport,
    pub scalars: SpectralScalars,
}

impl GraphSpectra {
    pub fn lambda(&self) -> &[f64] {
        &self.adjacency.eigenvalues
    }

    pub fn mu(&self) -> &[f64] {
        &self.laplacian.eigenvalues
    }

    pub fn q(&self) -> &[f64] {
        &self.signless.eigenvalues
    }
}

pub fn graph_spectra(g: &Graph) -> Result<GraphSpectra> {
    let adjacency = eigen_sym(&g.adjacency().to_f64(), SpectrumKind::Adjacency, false)?;
    let laplacian = eigen_sym(&int_to_f64(&g.laplacian_i64()), SpectrumKind::Laplacian, false)?;
    let signless = eigen_sym(&int_to_f64(&g.signless_i64()), SpectrumKind::Signless, false)?;
    let n = g.n();
    let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    let scalars = SpectralScalars {
        lambda1: at(&adjacency.eigenvalues, 0),
        lambda_n: at(&adjacency.eigenvalues, n - 1),
        mu1: at(&laplacian.eigenvalues, 0),
        a: if n >= 2 { at(&laplacian.eigenvalues, n - 2) } else { 0.0 },
        q1: at(&signless.eigenvalues, 0),
        q2: at(&signless.eigenvalues, 1),
        qn: at(&signless.eigenvalues, n - 1),
    };
    Ok(GraphSpectra {
        adjacency,
        laplacian,
        signless,
        scalars,
    })
}

/// Largest singular value, `sqrt(lambda_1(B B^T))`.
pub fn singular_max(b: &BitMatrix) -> Result<f64> {
    if b.rows() == 0 || b.cols() == 0 {
        return Ok(0.0);
    }
    let m = b.to_f64();
    let gram: Vec<Vec<f64>> = (0..b.rows())
        .map(|i| {
            (0..b.rows())
                .map(|j| (0..b.cols()).map(|k| m[i][k] * m[j][k]).sum())
                .collect()
        })
        .collect();
    let r = eigen_sym(&gram, SpectrumKind::Gram, false)?;
    Ok(r.eigenvalues[0].max(0.0).sqrt())
}

/// Eigenvalues `<= threshold + 1e-9`.
pub fn count_leq(eigenvalues: &[f64], threshold: f64) -> usize {
    eigenvalues.iter().filter(|&&x| x <= threshold + 1e-9).count()
}

/// Floating sign counts versus exact inertia, with the zero band set from
/// the exact nullity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reconciliation {
    pub tau: f64,
    pub plus: usize,
    pub zero: usize,
    pub minus: usize,
    /// Largest `|lambda|` among the eigenvalues taken as zero.
    pub zero_residual: f64,
    pub agrees: bool,
}

/// Estimates treated as zero must be below this.
pub const ZERO_RESIDUAL_TOL: f64 = 1e-7;

pub fn reconcile(eigenvalues: &[f64], exact: &Inertia) -> Reconciliation {
    let mut mags: Vec<f64> = eigenvalues.iter().map(|x| x.abs()).collect();
    mags.sort_by(f64::total_cmp);
    let eta = exact.zero;
    let tau = if eta < mags.len() { mags[eta] / 2.0 } else { f64::INFINITY };
    let zero_residual = if eta == 0 { 0.0 } else { mags[eta - 1] };
    let plus = eigenvalues.iter().filter(|&&x| x > tau).count();
    let minus = eigenvalues.iter().filter(|&&x| x < -tau).count();
    let zero = eigenvalues.len() - plus - minus;
    Reconciliation {
        tau,
        plus,
        zero,
        minus,
        zero_residual,
        agrees: plus == exact.plus
            && minus == exact.minus
            && zero == eta
            && zero_residual <= ZERO_RESIDUAL_TOL,
    }
}

/// Max deviation between `Lspec(complement)` and `{n - mu_{n-1}, ..., n - mu_1, 0}`.
pub fn complement_identity_error(g: &Graph, mu: &[f64]) -> Result<f64> {
    let n = g.n();
    let comp = eigen_sym(
        &int_to_f64(&g.complement().laplacian_i64()),
        SpectrumKind::Laplacian,
        false,
    )?;
    let mut predicted: Vec<f64> = mu[..n - 1].iter().map(|m| n as f64 - m).collect();
    predicted.push(0.0);
    predicted.sort_by(|a, b| b.total_cmp(a));
    Ok(comp
        .eigenvalues
        .iter()
        .zip(&predicted)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// One integral eigenpair `M X = theta X` checked in integer arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigClaim {
    pub claim_id: &'static str,
    pub hypothesis_met: bool,
    pub holds: bool,
    pub theta: i64,
    /// 1-based positions of the `+1` and `-1` entries.
    pub support: Option<(usize, usize)>,
    /// `max |(M X - theta X)_i|`.
    pub residual: i64,
    pub note: String,
}

fn check_pair(claim_id: &'static str, m: &IntMatrix, theta: i64, u: usize, v: usize) -> EigClaim {
    let n = m.len();
    let mut x = vec![0i64; n];
    x[u - 1] = 1;
    x[v - 1] = -1;
    let mx = mat_vec(m, &x);
    let residual = mx.iter().zip(&x).map(|(a, b)| (a - theta * b).abs()).max().unwrap_or(0);
    EigClaim {
        claim_id,
        hypothesis_met: true,
        holds: residual == 0,
        theta,
        support: Some((u, v)),
        residual,
        note: String::new(),
    }
}

fn skipped(claim_id: &'static str, note: &str) -> EigClaim {
    EigClaim {
        claim_id,
        hypothesis_met: false,
        holds: true,
        theta: 0,
        support: None,
        residual: 0,
        note: note.to_string(),
    }
}

/// The integral eigenpairs stated for Pascal and Catalan graphs. Graphs not
/// tagged with either family get no claims.
pub fn eigvec_claims(rg: &RiordanGraph) -> Vec<EigClaim> {
    let n = rg.n();
    let a = rg.graph().adjacency().to_i64();
    let l = rg.graph().laplacian_i64();
    let mut out = Vec::new();
    match rg.family_tag() {
        Some(Family::Catalan) => {
            if n >= 2 {
                out.push(check_pair("eig.catalan_twin_adj", &a, -1, 1, 2));
                out.push(check_pair("eig.catalan_twin_lap", &l, ceil_log2(n) as i64 + 1, 1, 2));
            } else {
                out.push(skipped("eig.catalan_twin_adj", "needs n >= 2"));
                out.push(skipped("eig.catalan_twin_lap", "needs n >= 2"));
            }
        }
        Some(Family::Pascal) => {
            if n >= 3 {
                let p = p_of(n);
                let top = (1usize << p) + 1;
                if n == top {
                    let mid = (n - 1) / 2 + 1;
                    out.push(check_pair("eig.pascal_universal_adj", &a, -1, 1, mid));
                    out.push(check_pair("eig.pascal_universal_adj", &a, -1, 1, n));
                    out.push(check_pair("eig.pascal_universal_lap", &l, n as i64, 1, mid));
                    out.push(check_pair("eig.pascal_universal_lap", &l, n as i64, 1, n));
                } else {
                    out.push(check_pair("eig.pascal_universal_adj", &a, -1, 1, top));
                    out.push(check_pair("eig.pascal_universal_lap", &l, n as i64, 1, top));
                }
            } else {
                out.push(skipped("eig.pascal_universal_adj", "needs n >= 3"));
                out.push(skipped("eig.pascal_universal_lap", "needs n >= 3"));
            }
            // Here the power of two is the largest one not exceeding n.
            let q = if n >= 1 { n.ilog2() } else { 0 };
            let pow = 1usize << q;
            if n >= 4 && n <= pow + 2 {
                out.push(check_pair("eig.pascal_twin_kernel", &a, 0, 2, pow));
                out.push(check_pair("eig.pascal_twin_lap", &l, n.div_ceil(2) as i64, 2, pow));
            } else {
                let why = "needs 2^q <= n <= 2^q + 2 with 2^q > 2";
                out.push(skipped("eig.pascal_twin_kernel", why));
                out.push(skipped("eig.pascal_twin_lap", why));
            }
        }
        _ => {}
    }
    out
}

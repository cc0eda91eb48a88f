//! Dense symmetric eigensolvers for the distance Laplacians.
//!
//! The production path is power iteration: plain iteration for `Q_D`
//! (nonnegative and irreducible for connected graphs, so it converges to
//! the Perron pair) and iteration with the all-ones direction projected
//! out for `L_D` (zero is always in the spectrum and the projection is
//! exact). A cyclic Jacobi full-spectrum solver doubles as the oracle and
//! as the fallback when power iteration stalls.

use thiserror::Error;

use crate::graph::Graph;
use crate::matrix::SymMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EigenError {
    #[error("Jacobi sweep cap exceeded without convergence")]
    NoConvergence,
    #[error("spectral radius needs at least {need} vertices, got {got}")]
    TooSmall { need: usize, got: usize },
}

/// Relative tolerance under which two spectral radii are considered tied.
pub const EPS_CMP_REL: f64 = 1e-8;
/// Rayleigh-quotient convergence tolerance (relative, per iteration).
const RQ_DELTA_REL: f64 = 1e-13;
/// Consecutive small Rayleigh deltas required before convergence.
const RQ_STREAK: u32 = 3;
/// Residual tolerances: 2-norm relative to `max(1, |rho|)`, plus an
/// absolute infinity-norm bound so the per-vertex eigen-equations hold.
const RESIDUAL_REL: f64 = 1e-9;
const RESIDUAL_INF_ABS: f64 = 1e-8;
/// Power-iteration cap before falling back to Jacobi.
const POWER_ITERATION_CAP: usize = 100_000;
/// Jacobi sweep cap; exceeding it signals pathological input.
const JACOBI_SWEEP_CAP: usize = 100;
/// Jacobi off-diagonal target relative to the Frobenius norm.
const JACOBI_OFF_REL: f64 = 1e-12;

/// Comparison tolerance for the pair `(a, b)`.
pub fn eps_cmp(a: f64, b: f64) -> f64 {
    EPS_CMP_REL * 1.0_f64.max(a.abs()).max(b.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoOrder {
    Less,
    Tie,
    Greater,
}

/// Strict order when the gap exceeds `eps_cmp`, otherwise a flagged tie.
pub fn cmp_rho_values(a: f64, b: f64) -> RhoOrder {
    let eps = eps_cmp(a, b);
    if a > b + eps {
        RhoOrder::Greater
    } else if b > a + eps {
        RhoOrder::Less
    } else {
        RhoOrder::Tie
    }
}

pub fn compare_rho(a: &SpectralSummary, b: &SpectralSummary) -> RhoOrder {
    cmp_rho_values(a.rho, b.rho)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    PowerIteration,
    JacobiFull,
}

/// Largest eigenvalue of a distance (signless) Laplacian, with its unit
/// eigenvector and a self-validating residual.
#[derive(Debug, Clone)]
pub struct SpectralSummary {
    pub rho: f64,
    pub vector: Vec<f64>,
    /// `‖M x - rho x‖_2` for the reported pair.
    pub residual: f64,
    pub iterations: usize,
    pub method: Method,
}

/// Full eigendecomposition from the Jacobi oracle.
#[derive(Debug, Clone)]
pub struct FullSpectrum {
    /// Sorted ascending.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i]` pairs with `eigenvalues[i]`; columns are
    /// orthonormal.
    pub eigenvectors: Vec<Vec<f64>>,
    /// Off-diagonal Frobenius norm at termination.
    pub off_diag_norm: f64,
}

impl FullSpectrum {
    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls
/// below `1e-12` of the matrix norm. Rotation formulas follow the
/// classical two-sided scheme.
pub fn jacobi_spectrum(m: &SymMatrix) -> Result<FullSpectrum, EigenError> {
    let n = m.order();
    let mut a = m.clone();
    let mut v = SymMatrix::zeros(n);
    for i in 0..n {
        v.set(i, i, 1.0);
    }
    let frob = m.frobenius_norm();
    let target = JACOBI_OFF_REL * frob;
    let mut off = a.off_diagonal_frobenius();
    let mut sweeps = 0usize;
    while off > target {
        if sweeps >= JACOBI_SWEEP_CAP {
            return Err(EigenError::NoConvergence);
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let h = a.get(q, q) - a.get(p, p);
                let t = if h == 0.0 {
                    1.0
                } else {
                    let theta = 0.5 * h / apq;
                    let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let delta = t * apq;
                a.set(p, p, a.get(p, p) - delta);
                a.set(q, q, a.get(q, q) + delta);
                a.set_sym(p, q, 0.0);
                for j in 0..n {
                    if j == p || j == q {
                        continue;
                    }
                    let ajp = a.get(j, p);
                    let ajq = a.get(j, q);
                    a.set_sym(j, p, ajp - s * (ajq + tau * ajp));
                    a.set_sym(j, q, ajq + s * (ajp - tau * ajq));
                }
                for j in 0..n {
                    let vjp = v.get(j, p);
                    let vjq = v.get(j, q);
                    v.set(j, p, vjp - s * (vjq + tau * vjp));
                    v.set(j, q, vjq + s * (vjp - tau * vjq));
                }
            }
        }
        sweeps += 1;
        off = a.off_diagonal_frobenius();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).partial_cmp(&a.get(j, j)).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| v.get(row, col)).collect())
        .collect();
    Ok(FullSpectrum {
        eigenvalues,
        eigenvectors,
        off_diag_norm: off,
    })
}

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn normalize(x: &mut [f64]) {
    let n = norm2(x);
    if n > 0.0 {
        for v in x.iter_mut() {
            *v /= n;
        }
    }
}

fn project_out_ones(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    for v in x.iter_mut() {
        *v -= mean;
    }
}

/// Deterministic start direction `(1, 1 + 1/n, 1 + 2/n, ...)`.
fn start_vector(n: usize) -> Vec<f64> {
    (0..n).map(|i| 1.0 + i as f64 / n as f64).collect()
}

/// First coordinate that is meaningfully nonzero becomes positive.
fn fix_sign(x: &mut [f64]) {
    let scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if let Some(first) = x.iter().find(|v| v.abs() > 1e-9 * scale) {
        if *first < 0.0 {
            for v in x.iter_mut() {
                *v = -*v;
            }
        }
    }
}

struct PowerOutcome {
    rho: f64,
    vector: Vec<f64>,
    residual: f64,
    iterations: usize,
    converged: bool,
}

fn power_iterate(m: &SymMatrix, mut x: Vec<f64>, project: bool) -> PowerOutcome {
    let n = m.order();
    if project {
        project_out_ones(&mut x);
    }
    normalize(&mut x);
    let mut y = vec![0.0; n];
    let mut rho_prev = f64::NAN;
    let mut streak = 0u32;
    let mut rho = 0.0;
    let mut residual = f64::INFINITY;
    for it in 1..=POWER_ITERATION_CAP {
        m.mul_vec(&x, &mut y);
        if project {
            project_out_ones(&mut y);
        }
        rho = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let mut res2 = 0.0;
        let mut res_inf = 0.0_f64;
        for i in 0..n {
            let r = y[i] - rho * x[i];
            res2 += r * r;
            res_inf = res_inf.max(r.abs());
        }
        residual = res2.sqrt();
        if (rho - rho_prev).abs() <= RQ_DELTA_REL * rho.abs() {
            streak += 1;
        } else {
            streak = 0;
        }
        rho_prev = rho;
        if streak >= RQ_STREAK
            && residual <= RESIDUAL_REL * 1.0_f64.max(rho.abs())
            && res_inf <= RESIDUAL_INF_ABS
        {
            return PowerOutcome {
                rho,
                vector: x,
                residual,
                iterations: it,
                converged: true,
            };
        }
        std::mem::swap(&mut x, &mut y);
        normalize(&mut x);
    }
    PowerOutcome {
        rho,
        vector: x,
        residual,
        iterations: POWER_ITERATION_CAP,
        converged: false,
    }
}

fn residual_of(m: &SymMatrix, rho: f64, x: &[f64]) -> f64 {
    let mut y = vec![0.0; m.order()];
    m.mul_vec(x, &mut y);
    y.iter()
        .zip(x)
        .map(|(a, b)| {
            let r = a - rho * b;
            r * r
        })
        .sum::<f64>()
        .sqrt()
}

fn jacobi_fallback(m: &SymMatrix, project: bool) -> Result<SpectralSummary, EigenError> {
    let full = jacobi_spectrum(m)?;
    let rho = full.max_eigenvalue();
    let mut vector = full.eigenvectors.last().unwrap().clone();
    if project {
        project_out_ones(&mut vector);
    }
    normalize(&mut vector);
    let residual = residual_of(m, rho, &vector);
    Ok(SpectralSummary {
        rho,
        vector,
        residual,
        iterations: full.eigenvalues.len(),
        method: Method::JacobiFull,
    })
}

/// Distance Laplacian spectral radius of a connected graph on `n >= 2`
/// vertices. Power iteration on `L_D` with the all-ones direction
/// projected out each step; Jacobi fallback if convergence stalls.
pub fn rho_l(g: &Graph) -> Result<SpectralSummary, EigenError> {
    if g.n() < 2 {
        return Err(EigenError::TooSmall { need: 2, got: g.n() });
    }
    let m = g.distance_laplacian();
    let outcome = power_iterate(&m, start_vector(g.n()), true);
    let mut summary = if outcome.converged {
        SpectralSummary {
            rho: outcome.rho,
            vector: outcome.vector,
            residual: outcome.residual,
            iterations: outcome.iterations,
            method: Method::PowerIteration,
        }
    } else {
        jacobi_fallback(&m, true)?
    };
    fix_sign(&mut summary.vector);
    Ok(summary)
}

/// Distance signless Laplacian spectral radius of a connected graph on
/// `n >= 2` vertices. Plain power iteration converges to the Perron pair;
/// the reported eigenvector is normalized positive.
pub fn rho_q(g: &Graph) -> Result<SpectralSummary, EigenError> {
    if g.n() < 2 {
        return Err(EigenError::TooSmall { need: 2, got: g.n() });
    }
    let m = g.distance_signless_laplacian();
    let outcome = power_iterate(&m, start_vector(g.n()), false);
    let mut summary = if outcome.converged {
        SpectralSummary {
            rho: outcome.rho,
            vector: outcome.vector,
            residual: outcome.residual,
            iterations: outcome.iterations,
            method: Method::PowerIteration,
        }
    } else {
        jacobi_fallback(&m, false)?
    };
    if summary.vector.iter().sum::<f64>() < 0.0 {
        for v in summary.vector.iter_mut() {
            *v = -*v;
        }
    }
    debug_assert!(summary.vector.iter().all(|&v| v > 0.0));
    Ok(summary)
}

//! Walk counting and the spectral-radius bound on path counts.
//!
//! Walk counts are exact big integers (they grow like `mu^l`). The
//! spectral radius comes from power iteration on `A + I` — the shift makes
//! the dominant eigenvalue simple even on bipartite graphs, where plain
//! iteration on `A` oscillates between the `+mu` and `-mu` components —
//! while the reported value is the Rayleigh quotient with respect to `A`
//! itself.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::count::count_subgraph;
use crate::graph::Graph;
use crate::{Error, Result};

/// Default convergence tolerance on successive Rayleigh quotients.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Iteration cap; hitting it signals a bug, not a hard instance.
pub const ITERATION_CAP: usize = 1_000_000;

/// Relative slack used when comparing exact walk counts against the
/// floating-point spectral bound.
pub const PATH_BOUND_SLACK: f64 = 1e-6;

/// Converged largest adjacency eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralEstimate {
    /// Largest eigenvalue of the adjacency matrix.
    pub mu: f64,
    /// Power iteration steps used.
    pub iterations: usize,
    /// Final residual `||A x - mu x||_2` of the normalized iterate.
    pub residual: f64,
}

/// Number of walks with exactly `edges` edges: `1^T A^edges 1`, exact.
pub fn walk_count(g: &Graph, edges: usize) -> BigUint {
    let n = g.n();
    let mut w = vec![BigUint::from(1u32); n];
    for _ in 0..edges {
        let mut next = vec![BigUint::zero(); n];
        for v in 0..n {
            let mut nb = g.neighbors(v);
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                next[v] += &w[u];
                nb &= nb - 1;
            }
        }
        w = next;
    }
    w.into_iter().sum()
}

/// Largest adjacency eigenvalue by power iteration from the all-ones
/// vector, converged when successive Rayleigh quotients differ by less
/// than `tol`.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralEstimate> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut prev = f64::INFINITY;
    for it in 1..=ITERATION_CAP {
        // y = (A + I) x
        let mut y = x.clone();
        for v in 0..n {
            let mut nb = g.neighbors(v);
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                y[v] += x[u];
                nb &= nb - 1;
            }
        }
        // x^T (A + I) x / x^T x - 1 = Rayleigh quotient of A
        let dot: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let nrm2: f64 = x.iter().map(|a| a * a).sum();
        let mu = dot / nrm2 - 1.0;
        let ynorm = y.iter().map(|a| a * a).sum::<f64>().sqrt();
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / ynorm;
        }
        if (mu - prev).abs() < tol {
            let residual = {
                let mut r2 = 0.0;
                for v in 0..n {
                    let mut av = 0.0;
                    let mut nb = g.neighbors(v);
                    while nb != 0 {
                        let u = nb.trailing_zeros() as usize;
                        av += x[u];
                        nb &= nb - 1;
                    }
                    let d = av - mu * x[v];
                    r2 += d * d;
                }
                r2.sqrt()
            };
            return Ok(SpectralEstimate { mu: mu.max(0.0), iterations: it, residual });
        }
        prev = mu;
    }
    Err(Error::NonConvergence(ITERATION_CAP))
}

/// The spectral upper bound on the number of `l`-vertex paths:
/// `n * mu^(l-1) / 2`. Requires `l >= 3`.
pub fn path_spectral_bound(g: &Graph, l: usize) -> Result<f64> {
    if l < 3 {
        return Err(Error::Invalid(format!("path bound needs l >= 3, got {l}")));
    }
    let est = spectral_radius(g, DEFAULT_TOL)?;
    Ok(g.n() as f64 * est.mu.powi(l as i32 - 1) / 2.0)
}

/// Verifies the walk/spectral chain for `l`-vertex paths:
/// `2 * N(P_l, G) <= walks(l-1)` exactly, and
/// `walks(l-1) <= n * mu^(l-1)` up to the floating-point slack.
pub fn check_path_bound(g: &Graph, l: usize) -> Result<bool> {
    if l < 3 {
        return Err(Error::Invalid(format!("path bound needs l >= 3, got {l}")));
    }
    let est = spectral_radius(g, DEFAULT_TOL)?;
    let walks = walk_count(g, l - 1);
    let path_ok = if l <= g.n() {
        let p = crate::families::FamilySpec::Path(l).build()?;
        let copies = count_subgraph(&p, g).copies;
        BigUint::from(2 * copies) <= walks
    } else {
        true // no copies to bound
    };
    let walks_f = walks.to_f64().unwrap_or(f64::INFINITY);
    let bound = g.n() as f64 * est.mu.powi(l as i32 - 1);
    let spectral_ok = walks_f <= bound * (1.0 + PATH_BOUND_SLACK) + f64::EPSILON;
    Ok(path_ok && spectral_ok)
}

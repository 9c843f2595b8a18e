//! Exact solver for strictly positive edge weightings under which every
//! star-factor has the same weight.
//!
//! With `χ(S)` the edge incidence vector of a factor, equal weights mean
//! `(χ(S_i) - χ(S_1)) · w = 0` for all `i`. The solutions form the kernel
//! of that difference system; a positive weighting exists iff some kernel
//! combination is at least one on every edge (the system is invariant
//! under positive scaling). That last question is settled by
//! Fourier–Motzkin elimination over the kernel coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::factors::{StarFactor, StarFactors};
use crate::graph::Graph;
use crate::linalg::{fourier_motzkin, EliminationError, Inequality, Row, RowEchelon};
use crate::uniformity::{is_uniform_weighted, Weighting};

pub const DEFAULT_FACTOR_CAP: usize = 100_000;
pub const DEFAULT_INEQUALITY_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph has no star-factor")]
    NoFactor,
    #[error(transparent)]
    Elimination(#[from] EliminationError),
    #[error("solver produced weights that fail verification")]
    Unverified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightingStatus {
    Feasible,
    Infeasible,
    NoFactor,
    /// The factor cap was hit and the partial system is feasible: only an
    /// infeasibility verdict could have been trusted.
    TruncatedInfeasibleOnly,
}

impl WeightingStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightingStatus::Feasible => "feasible",
            WeightingStatus::Infeasible => "infeasible",
            WeightingStatus::NoFactor => "no_factor",
            WeightingStatus::TruncatedInfeasibleOnly => "truncated_infeasible_only",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightingSolution {
    pub status: WeightingStatus,
    /// Positive integer weights aligned with [`Graph::edges`]; present iff
    /// feasible.
    pub weights: Option<Vec<BigInt>>,
    /// `|E|` minus the rank of the (possibly partial) difference system.
    pub kernel_dimension: usize,
    /// Factors fed into the system. Enumeration stops early once the
    /// system has full rank, since then only the zero weighting remains.
    pub factor_count: usize,
    pub truncated: bool,
}

impl WeightingSolution {
    pub fn feasible(&self) -> bool {
        self.status == WeightingStatus::Feasible
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    pub factor_cap: usize,
    pub inequality_cap: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { factor_cap: DEFAULT_FACTOR_CAP, inequality_cap: DEFAULT_INEQUALITY_CAP }
    }
}

fn incidence(g: &Graph, f: &StarFactor) -> Vec<i8> {
    let mut chi = vec![0i8; g.size()];
    for &e in f.edges() {
        chi[g.edge_index(e).expect("factor edges belong to the host")] = 1;
    }
    chi
}

fn difference(a: &[i8], base: &[i8]) -> Row {
    a.iter().zip(base).map(|(&x, &y)| BigRational::from_integer(BigInt::from(x - y))).collect()
}

/// Rows `χ(S_i) - χ(S_1)` for `i >= 2`, factors in lexicographic order and
/// columns in [`Graph::edges`] order.
pub fn difference_system(g: &Graph) -> Result<Vec<Row>, SolveError> {
    let factors = crate::factors::enumerate_star_factors(g, None);
    let (first, rest) = factors.split_first().ok_or(SolveError::NoFactor)?;
    let base = incidence(g, first);
    Ok(rest.iter().map(|f| difference(&incidence(g, f), &base)).collect())
}

pub fn solve_uniform_weighting(g: &Graph) -> Result<WeightingSolution, SolveError> {
    solve_uniform_weighting_with(g, SolverOptions::default())
}

pub fn solve_uniform_weighting_with(g: &Graph, opts: SolverOptions) -> Result<WeightingSolution, SolveError> {
    let m = g.size();
    let mut stream = StarFactors::new(g, None);
    let Some(first) = stream.next() else {
        return Ok(WeightingSolution {
            status: WeightingStatus::NoFactor,
            weights: None,
            kernel_dimension: m,
            factor_count: 0,
            truncated: false,
        });
    };
    let base = incidence(g, &first);
    let mut echelon = RowEchelon::new(m);
    let mut count = 1usize;
    let mut truncated = false;
    let mut saturated = false;
    while stream.advance() {
        if count == opts.factor_cap {
            truncated = true;
            break;
        }
        count += 1;
        echelon.insert(difference(&incidence(g, &stream.current()), &base));
        if echelon.is_full() && m > 0 {
            // only the zero weighting survives; more factors cannot help
            saturated = true;
            break;
        }
    }
    let kernel = echelon.kernel_basis();
    let kernel_dimension = kernel.len();
    let verdict = if saturated { None } else { positive_kernel_point(&kernel, m, opts.inequality_cap)? };

    let Some(weights) = verdict else {
        return Ok(WeightingSolution {
            status: WeightingStatus::Infeasible,
            weights: None,
            kernel_dimension,
            factor_count: count,
            truncated,
        });
    };
    if truncated {
        return Ok(WeightingSolution {
            status: WeightingStatus::TruncatedInfeasibleOnly,
            weights: None,
            kernel_dimension,
            factor_count: count,
            truncated,
        });
    }

    let w = Weighting::new(g, weights.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .map_err(|_| SolveError::Unverified)?;
    if !is_uniform_weighted(g, &w).map_err(|_| SolveError::Unverified)?.0 {
        return Err(SolveError::Unverified);
    }
    Ok(WeightingSolution {
        status: WeightingStatus::Feasible,
        weights: Some(weights),
        kernel_dimension,
        factor_count: count,
        truncated: false,
    })
}

/// A primitive positive integer vector in the span of `kernel`, if one
/// exists.
fn positive_kernel_point(kernel: &[Row], m: usize, cap: usize) -> Result<Option<Vec<BigInt>>, SolveError> {
    let d = kernel.len();
    if m == 0 {
        return Ok(Some(Vec::new()));
    }
    if d == 0 {
        return Ok(None);
    }
    // edge e: sum_j kernel[j][e] * t_j >= 1
    let system = (0..m)
        .map(|e| Inequality { coeffs: kernel.iter().map(|k| k[e].clone()).collect(), rhs: BigRational::one() })
        .collect();
    let Some(t) = fourier_motzkin(system, d, cap)? else {
        return Ok(None);
    };
    let w: Vec<BigRational> = (0..m).map(|e| kernel.iter().zip(&t).map(|(k, tj)| &k[e] * tj).sum()).collect();
    debug_assert!(w.iter().all(|x| x.is_positive()));
    Ok(Some(to_primitive_integers(&w)))
}

fn to_primitive_integers(w: &[BigRational]) -> Vec<BigInt> {
    let lcm = w.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = w.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &gcd).collect()
}

//! Exact stationary distributions over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::graph::{blind_zigzag_graph, TransitionGraph};
use crate::error::{FrogError, Result};
use crate::hatted::{count_hatted, fiber_count, GridBlind};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

pub fn rational(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A probability vector indexed like the states of some graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalDist {
    probs: Vec<ExactRational>,
}

impl RationalDist {
    /// Checks that entries are non-negative and sum to one.
    pub fn new(probs: Vec<ExactRational>) -> Result<Self> {
        if probs.iter().any(|p| p.is_negative()) {
            return Err(FrogError::InvalidInput("negative probability".into()));
        }
        let total: ExactRational = probs.iter().sum();
        if !total.is_one() {
            return Err(FrogError::InvalidInput(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(RationalDist { probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(FrogError::InvalidInput("no states".into()));
        }
        Ok(RationalDist {
            probs: vec![rational(1, n as i64); n],
        })
    }

    pub fn probs(&self) -> &[ExactRational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn get(&self, i: usize) -> &ExactRational {
        &self.probs[i]
    }
}

impl Serialize for RationalDist {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.probs.iter().map(|p| p.to_string()))
    }
}

/// One step of the chain applied to a row vector.
fn push_forward<S>(g: &TransitionGraph<S>, p: &[ExactRational]) -> Vec<ExactRational> {
    let mut out = vec![ExactRational::zero(); g.len()];
    let sigma = rational(g.sigma as i64, 1);
    for (i, row) in g.succ.iter().enumerate() {
        if p[i].is_zero() {
            continue;
        }
        let share = &p[i] / &sigma;
        for &j in row {
            out[j] += &share;
        }
    }
    out
}

/// `p·P = p` exactly.
pub fn is_stationary<S>(g: &TransitionGraph<S>, p: &RationalDist) -> bool {
    p.len() == g.len() && push_forward(g, &p.probs) == p.probs
}

/// The uniform vector is fixed by the chain.
pub fn verify_uniform_stationary<S>(g: &TransitionGraph<S>) -> bool {
    match RationalDist::uniform(g.len()) {
        Ok(u) => is_stationary(g, &u),
        Err(_) => false,
    }
}

/// Solve `p·P = p`, `Σp = 1` by fraction-free elimination.
///
/// Fails with [`FrogError::Degenerate`] when the solution space of `p·P = p`
/// is not one-dimensional.
pub fn exact_stationary<S>(g: &TransitionGraph<S>) -> Result<RationalDist> {
    let n = g.len();
    if n == 0 {
        return Err(FrogError::InvalidInput("no states".into()));
    }
    // a[j][i] = #(i → j) − σ·[i = j], so a·p = 0.
    let mut a = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in g.succ.iter().enumerate() {
        a[i][i] -= BigInt::from(g.sigma);
        for &j in row {
            a[j][i] += 1;
        }
    }

    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..n {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..n {
                let v = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot_row[c].clone();
        pivots.push(c);
        r += 1;
    }

    let dimension = n - pivots.len();
    if dimension != 1 {
        return Err(FrogError::Degenerate { dimension });
    }
    let free = (0..n)
        .find(|c| !pivots.contains(c))
        .expect("one free column");
    let mut x = vec![ExactRational::zero(); n];
    x[free] = ExactRational::one();
    for (row, &c) in pivots.iter().enumerate().rev() {
        let mut acc = ExactRational::zero();
        for j in c + 1..n {
            if !x[j].is_zero() && !a[row][j].is_zero() {
                acc += &x[j] * ExactRational::from_integer(a[row][j].clone());
            }
        }
        x[c] = -acc / ExactRational::from_integer(a[row][c].clone());
    }
    let total: ExactRational = x.iter().sum();
    if total.is_zero() {
        return Err(FrogError::Internal("null vector sums to zero".into()));
    }
    let probs: Vec<_> = x.into_iter().map(|v| v / &total).collect();
    let dist = RationalDist::new(probs)
        .map_err(|e| FrogError::Internal(format!("stationary solve: {e}")))?;
    if !is_stationary(g, &dist) {
        return Err(FrogError::Internal("solution is not stationary".into()));
    }
    Ok(dist)
}

/// `π(F) = |doff⁻¹(F)| / |ℋ_{k,m}|`, indexed like [`GridBlind::all`].
pub fn blind_stationary_from_fibers(k: usize, m: usize) -> Result<(Vec<GridBlind>, RationalDist)> {
    let states = GridBlind::all(k, m)?;
    let total = BigInt::from(count_hatted(k, m)?);
    let probs = states
        .iter()
        .map(|&s| BigRational::new(BigInt::from(fiber_count(s)), total.clone()))
        .collect();
    Ok((states, RationalDist::new(probs)?))
}

/// Check [`blind_stationary_from_fibers`] against the blind zigzag chain.
pub fn fibers_are_stationary(k: usize, m: usize, sigma: u32) -> Result<bool> {
    let g = blind_zigzag_graph(k, m, sigma)?;
    let (states, dist) = blind_stationary_from_fibers(k, m)?;
    if states != g.states {
        return Err(FrogError::Internal("state orders differ".into()));
    }
    Ok(is_stationary(&g, &dist))
}

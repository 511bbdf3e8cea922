//! Closed forms for frog speeds and LCS constants, and their enumeration checks.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::exact::{rational, ExactRational};
use crate::error::{out_of_range, FrogError, Result};
use crate::hatted::{count_f, enumerate_hatted, hatted_poke, hop_set};

fn check_k_sigma(k: usize, sigma: u32) -> Result<()> {
    if k == 0 || k > crate::grid::MAX_K {
        return Err(out_of_range(
            "k",
            k as i64,
            format!("1..={}", crate::grid::MAX_K),
        ));
    }
    if (sigma as usize) < k {
        return Err(out_of_range("sigma", sigma as i64, format!(">= k = {k}")));
    }
    Ok(())
}

fn big(n: u128) -> BigInt {
    BigInt::from(n)
}

/// `f(2k, m-1)/f(2k, m)` scaled by `2k/σ`, with `m = 0` giving zero.
fn cumulative_unchecked(k: usize, m: usize, sigma: u32) -> Result<ExactRational> {
    if m == 0 {
        return Ok(ExactRational::zero());
    }
    let num = big(count_f(2 * k, m - 1)?) * BigInt::from(2 * k);
    let den = big(count_f(2 * k, m)?) * BigInt::from(sigma);
    Ok(ExactRational::new(num, den))
}

/// Cumulative speed of the `m` nastiest frogs on the zigzag ring of width `k`.
pub fn cumulative_speed(k: usize, m: usize, sigma: u32) -> Result<ExactRational> {
    check_k_sigma(k, sigma)?;
    if m < 1 || m > 2 * k {
        return Err(out_of_range("m", m as i64, format!("1..={}", 2 * k)));
    }
    cumulative_unchecked(k, m, sigma)
}

/// `s_1, …, s_{2k}` for the zigzag ring.
pub fn speeds(k: usize, sigma: u32) -> Result<Vec<ExactRational>> {
    check_k_sigma(k, sigma)?;
    let cum = (0..=2 * k)
        .map(|m| cumulative_unchecked(k, m, sigma))
        .collect::<Result<Vec<_>>>()?;
    Ok(cum.windows(2).map(|w| &w[1] - &w[0]).collect())
}

/// Speed of frog `m` on the ring `1,2,…,k`.
pub fn bc_speed(k: usize, m: usize, sigma: u32) -> Result<ExactRational> {
    check_k_sigma(k, sigma)?;
    if m < 1 || m > k {
        return Err(out_of_range("m", m as i64, format!("1..={k}")));
    }
    let (k, m) = (k as i64, m as i64);
    Ok(rational(
        k * (k + 1),
        sigma as i64 * (k + 2 - m) * (k + 1 - m),
    ))
}

pub fn bc_speeds(k: usize, sigma: u32) -> Result<Vec<ExactRational>> {
    (1..=k).map(|m| bc_speed(k, m, sigma)).collect()
}

/// Largest `m` with `s_m ≤ ρ`, or `m = 0` when `ρ < s_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub m: usize,
    /// `s_m = ρ` exactly; always false for the `m = 0` sentinel.
    pub equality: bool,
}

impl Threshold {
    pub fn is_sentinel(self) -> bool {
        self.m == 0
    }
}

fn check_rho(rho: &ExactRational) -> Result<()> {
    if rho.is_negative() {
        return Err(FrogError::InvalidInput(format!(
            "rho = {rho} must be non-negative"
        )));
    }
    Ok(())
}

fn threshold_in(speeds: &[ExactRational], rho: &ExactRational) -> Threshold {
    (1..=speeds.len())
        .rev()
        .find(|&m| speeds[m - 1] <= *rho)
        .map(|m| Threshold {
            m,
            equality: speeds[m - 1] == *rho,
        })
        .unwrap_or(Threshold {
            m: 0,
            equality: false,
        })
}

pub fn threshold_m(k: usize, sigma: u32, rho: &ExactRational) -> Result<Threshold> {
    check_rho(rho)?;
    Ok(threshold_in(&speeds(k, sigma)?, rho))
}

pub fn threshold_bc(k: usize, sigma: u32, rho: &ExactRational) -> Result<Threshold> {
    check_rho(rho)?;
    Ok(threshold_in(&bc_speeds(k, sigma)?, rho))
}

/// Leading LCS coefficient for the zigzag base word, with its threshold.
pub fn gamma_zigzag(
    k: usize,
    sigma: u32,
    rho: &ExactRational,
) -> Result<(Threshold, ExactRational)> {
    let t = threshold_m(k, sigma, rho)?;
    let ell = 2 * k as i64;
    let coeff = rational(ell - t.m as i64, ell);
    let tail = if t.m == 0 {
        ExactRational::zero()
    } else {
        ExactRational::new(
            big(count_f(2 * k, t.m - 1)?),
            big(count_f(2 * k, t.m)?) * BigInt::from(sigma),
        )
    };
    Ok((t, coeff * rho + tail))
}

/// Leading LCS coefficient for the base word `1,2,…,k`.
pub fn gamma_bc(k: usize, sigma: u32, rho: &ExactRational) -> Result<(Threshold, ExactRational)> {
    let t = threshold_bc(k, sigma, rho)?;
    let (ki, m) = (k as i64, t.m as i64);
    let coeff = rational(ki - m, ki);
    let tail = if m == 0 {
        ExactRational::zero()
    } else {
        rational(m, sigma as i64 * (ki + 1 - m))
    };
    Ok((t, coeff * rho + tail))
}

/// `ρ − (1/ℓ)·Σ_{s ≤ ρ}(ρ − s)` for an arbitrary speed list.
pub fn gamma_from_speeds(
    speeds: &[ExactRational],
    ell: usize,
    rho: &ExactRational,
) -> Result<ExactRational> {
    check_rho(rho)?;
    if ell == 0 {
        return Err(FrogError::InvalidInput(
            "ring length must be positive".into(),
        ));
    }
    let excess: ExactRational = speeds.iter().filter(|s| *s <= rho).map(|s| rho - s).sum();
    Ok(rho - excess / rational(ell as i64, 1))
}

/// `Σ_c Σ_F hop(F, c)` over `ℋ_{k,m}`, by enumeration.
pub fn total_hops(k: usize, m: usize) -> Result<u128> {
    let mut total = 0u128;
    for arr in enumerate_hatted(k, m)? {
        for c in 1..=k {
            total += hop_set(arr, c)?.len() as u128;
        }
    }
    Ok(total)
}

/// `Σ_c Σ_F hop(F, c) = 2k·f(2k, m−1)`.
pub fn speed_sum_identity(k: usize, m: usize) -> Result<bool> {
    let lhs = total_hops(k, m)?;
    let rhs = if m == 0 {
        0
    } else {
        2 * k as u128 * count_f(2 * k, m - 1)?
    };
    Ok(lhs == rhs)
}

/// `E_a E_F hop(F, a)` under a uniform letter and uniform `ℋ_{k,m}`, computed
/// by poking every enumerated state with every letter.
pub fn expected_hops_by_enumeration(k: usize, m: usize, sigma: u32) -> Result<ExactRational> {
    check_k_sigma(k, sigma)?;
    let states = enumerate_hatted(k, m)?;
    let mut total = BigInt::zero();
    for &arr in &states {
        for a in 1..=sigma {
            total += hatted_poke(arr, a)?.1;
        }
    }
    Ok(ExactRational::new(
        total,
        BigInt::from(states.len()) * BigInt::from(sigma),
    ))
}

//! Exhaustive and randomized verification suites with one outcome per case.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    check_regular, cumulative_speed, expected_hops_by_enumeration, fibers_are_stationary,
    hatted_graph, speed_sum_identity, total_hops, verify_uniform_stationary,
};
use crate::blind::{blind_poke, blind_poke_naive, BlindArrangement};
use crate::crowned::{
    corner_slices, dethrone, enumerate_crowned, enumerate_omega, move_crowned, move_inverse, phi,
    phi_domain, phi_inverse, poke_crowned, psi, run_to_end, speed_phi, validate_crowned,
    CrownedArrangement, Poked,
};
use crate::error::{out_of_range, FrogError, Result};
use crate::grid::Grid;
use crate::hatted::{
    count_f, enumerate_hatted, grid_blind_poke, hatted_poke, zigzag_ring, HattedArrangement,
};
use crate::ring::{project_nastiest, ring_poke, FrogArrangement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub suite: String,
    pub case: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CaseOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} {}", self.suite, self.case)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Regular,
    Uniform,
    Fibers,
    Coupling,
    Bijections,
    SpeedIdentity,
    Corner,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Regular,
        Suite::Uniform,
        Suite::Fibers,
        Suite::Coupling,
        Suite::Bijections,
        Suite::SpeedIdentity,
        Suite::Corner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Regular => "regular",
            Suite::Uniform => "uniform",
            Suite::Fibers => "fibers",
            Suite::Coupling => "coupling",
            Suite::Bijections => "bijections",
            Suite::SpeedIdentity => "speed-identity",
            Suite::Corner => "corner",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = FrogError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| FrogError::InvalidInput(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteParams {
    pub k: usize,
    /// Alphabet size; defaults to `k`.
    pub sigma: Option<u32>,
    /// A single frog count; all of `0..=2k` when absent.
    pub m: Option<usize>,
    /// Random trials per level of the coupling suite.
    pub trials: usize,
    pub seed: u64,
}

impl SuiteParams {
    pub fn new(k: usize) -> Self {
        SuiteParams {
            k,
            sigma: None,
            m: None,
            trials: 10_000,
            seed: crate::montecarlo::DEFAULT_SEED,
        }
    }

    fn sigma(&self) -> u32 {
        self.sigma.unwrap_or(self.k as u32)
    }

    fn ms(&self) -> Result<Vec<usize>> {
        let top = 2 * self.k;
        match self.m {
            Some(m) if m > top => Err(out_of_range("m", m as i64, format!("0..={top}"))),
            Some(m) => Ok(vec![m]),
            None => Ok((0..=top).collect()),
        }
    }
}

fn outcome(suite: Suite, case: String, pass: bool, detail: String) -> CaseOutcome {
    CaseOutcome {
        suite: suite.name().to_string(),
        case,
        pass,
        detail,
    }
}

pub fn run_suite(suite: Suite, p: &SuiteParams) -> Result<Vec<CaseOutcome>> {
    Grid::new(p.k)?;
    if (p.sigma() as usize) < p.k {
        return Err(out_of_range(
            "sigma",
            p.sigma() as i64,
            format!(">= k = {}", p.k),
        ));
    }
    match suite {
        Suite::Regular => regular(p),
        Suite::Uniform => uniform(p),
        Suite::Fibers => fibers(p),
        Suite::Coupling => coupling(p),
        Suite::Bijections => bijections(p),
        Suite::SpeedIdentity => speed_identity(p),
        Suite::Corner => corner(p),
    }
}

pub fn all_pass(outcomes: &[CaseOutcome]) -> bool {
    outcomes.iter().all(|o| o.pass)
}

fn regular(p: &SuiteParams) -> Result<Vec<CaseOutcome>> {
    let sigma = p.sigma();
    p.ms()?
        .into_iter()
        .map(|m| {
            let g = hatted_graph(p.k, m, sigma)?;
            let r = check_regular(&g);
            let detail = format!(
                "states={} in-degree {}..={} sigma={sigma}",
                g.len(),
                r.min_in_degree,
                r.max_in_degree
            );
            Ok(outcome(
                Suite::Regular,
                format!("k={} m={m}", p.k),
                r.regular,
                detail,
            ))
        })
        .collect()
}

fn uniform(p: &SuiteParams) -> Result<Vec<CaseOutcome>> {
    let sigma = p.sigma();
    p.ms()?
        .into_iter()
        .map(|m| {
            let g = hatted_graph(p.k, m, sigma)?;
            let pass = verify_uniform_stationary(&g);
            let detail = format!("states={} sigma={sigma}", g.len());
            Ok(outcome(
                Suite::Uniform,
                format!("k={} m={m}", p.k),
                pass,
                detail,
            ))
        })
        .collect()
}

fn fibers(p: &SuiteParams) -> Result<Vec<CaseOutcome>> {
    let sigma = p.sigma();
    p.ms()?
        .into_iter()
        .map(|m| {
            let pass = fibers_are_stationary(p.k, m, sigma)?;
            Ok(outcome(
                Suite::Fibers,
                format!("k={} m={m}", p.k),
                pass,
                format!("sigma={sigma}"),
            ))
        })
        .collect()
}

fn coupling(p: &SuiteParams) -> Result<Vec<CaseOutcome>> {
    let (k, sigma) = (p.k, p.sigma());
    let ring = zigzag_ring(k, sigma)?;
    let ell = 2 * k;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let ms = p.ms()?;
    let mut out = Vec::new();

    let mut failures = 0;
    for _ in 0..p.trials {
        let m = ms[rng.random_range(0..ms.len())];
        let mut pads: Vec<usize> = (0..ell).collect();
        pads.shuffle(&mut rng);
        let s = BlindArrangement::from_pads(ell, pads[..m].iter().copied())?;
        let mut order: Vec<usize> = (0..ell).collect();
        order.shuffle(&mut rng);
        let a = rng.random_range(1..=sigma);
        if blind_poke_naive(&ring, s, a, &order)? != blind_poke(&ring, s, a)? {
            failures += 1;
        }
    }
    out.push(outcome(
        Suite::Coupling,
        format!("k={k} blind pokes ignore hop order"),
        failures == 0,
        format!("trials={} failures={failures}", p.trials),
    ));

    let mut failures = 0;
    for _ in 0..p.trials {
        let mut pad_of: Vec<usize> = (0..ell).collect();
        pad_of.shuffle(&mut rng);
        let f = FrogArrangement::new(pad_of)?;
        let a = rng.random_range(1..=sigma);
        let (next, disp) = ring_poke(&ring, &f, a)?;
        for m in ms.iter().copied().filter(|&m| m >= 1) {
            let (blind_next, hop) = blind_poke(&ring, project_nastiest(&f, m)?, a)?;
            let moved: u64 = disp[..m].iter().sum();
            if blind_next != project_nastiest(&next, m)? || hop != moved {
                failures += 1;
            }
        }
    }
    out.push(outcome(
        Suite::Coupling,
        format!("k={k} frogs project to blind frogs"),
        failures == 0,
        format!("trials={} failures={failures}", p.trials),
    ));

    let pools: Vec<Vec<HattedArrangement>> = ms
        .iter()
        .map(|&m| enumerate_hatted(k, m))
        .collect::<Result<_>>()?;
    let mut failures = 0;
    for _ in 0..p.trials {
        let pool = &pools[rng.random_range(0..pools.len())];
        let arr = pool[rng.random_range(0..pool.len())];
        let a = rng.random_range(1..=sigma);
        let (next, hop) = hatted_poke(arr, a)?;
        if grid_blind_poke(&ring, arr.doff(), a)? != (next.doff(), hop) {
            failures += 1;
        }
    }
    out.push(outcome(
        Suite::Coupling,
        format!("k={k} hatted frogs doff to blind frogs"),
        failures == 0,
        format!("trials={} failures={failures}", p.trials),
    ));
    Ok(out)
}

/// `move` on `𝒞 ∖ End`: lands in `𝒞 ∖ Start`, is injective, and its
/// constructive inverse matches the inverse found by search.
fn check_move(k: usize, m: usize) -> Result<(bool, String)> {
    let all = enumerate_crowned(k, m)?;
    let mut preimage: HashMap<CrownedArrangement, CrownedArrangement> = HashMap::new();
    for &c in all.iter().filter(|c| !c.is_end()) {
        let (next, _) = move_crowned(c)?;
        if validate_crowned(next, m).is_err() || next.is_start() {
            return Ok((false, format!("{c:?} moves outside C minus Start")));
        }
        if preimage.insert(next, c).is_some() {
            return Ok((false, format!("{next:?} has two preimages")));
        }
    }
    let targets: Vec<_> = all.iter().copied().filter(|c| !c.is_start()).collect();
    if targets.len() != preimage.len() {
        return Ok((false, "move is not onto C minus Start".into()));
    }
    for c in targets {
        if preimage.get(&c).copied() != move_inverse(c).ok() {
            return Ok((false, format!("inverse disagrees with search at {c:?}")));
        }
    }
    Ok((true, format!("|C|={}", all.len())))
}

/// `dethrone ∘ move^h ∘ poke_c = hatted_poke` with `h` the hop count.
fn check_runs(k: usize, m: usize) -> Result<(bool, String)> {
    let mut cases = 0;
    for arr in enumerate_hatted(k, m)? {
        for col in 1..=k {
            let Poked::Crowned(start) = poke_crowned(arr, col)? else {
                continue;
            };
            cases += 1;
            let (end, steps) = run_to_end(start)?;
            let (next, hop) = hatted_poke(arr, col as u32)?;
            if dethrone(end)? != next || steps != hop {
                return Ok((false, format!("{arr:?} column {col}")));
            }
        }
    }
    Ok((true, format!("pokes={cases}")))
}

fn check_phi(k: usize, m: usize) -> Result<(bool, String)> {
    if m == 0 {
        return Ok((true, "empty domain".into()));
    }
    let g = Grid::new(k)?;
    let source = enumerate_hatted(k, m)?;
    let target = enumerate_hatted(k, m - 1)?;
    let mut pairs = 0;
    for s in g.squares() {
        let domain: Vec<_> = source
            .iter()
            .copied()
            .filter(|&a| phi_domain(s, a))
            .collect();
        let mut codomain: Vec<_> = target
            .iter()
            .copied()
            .filter(|a| a.f() & g.column_mask(s.col) == 0)
            .collect();
        let mut images = Vec::with_capacity(domain.len());
        for &a in &domain {
            let b = phi(s, a)?;
            if phi_inverse(s, b)? != a {
                return Ok((false, format!("phi_inverse(phi({a:?})) differs at {s}")));
            }
            images.push(b);
        }
        images.sort_unstable();
        codomain.sort_unstable();
        if images != codomain {
            return Ok((false, format!("phi at {s} is not onto")));
        }
        pairs += domain.len();
    }
    Ok((true, format!("pairs={pairs}")))
}

fn check_speed_bijection(k: usize, m: usize) -> Result<(bool, String)> {
    if m == 0 {
        return Ok((true, "empty domain".into()));
    }
    let g = Grid::new(k)?;
    let omega = enumerate_omega(k, m)?;
    let want = 2 * k as u128 * count_f(2 * k, m - 1)?;
    if omega.len() as u128 != want {
        return Ok((false, format!("|Omega|={} expected {want}", omega.len())));
    }
    for &(arr, c, frog) in &omega {
        let (b, s) = speed_phi(arr, c, frog)?;
        if psi(b, s)? != (arr, c, frog) {
            return Ok((false, format!("psi(Phi(x)) differs at {arr:?} {c} {frog}")));
        }
    }
    for b in enumerate_hatted(k, m - 1)? {
        for s in g.squares() {
            let (arr, c, frog) = psi(b, s)?;
            if speed_phi(arr, c, frog)? != (b, s) {
                return Ok((false, format!("Phi(psi(x)) differs at {b:?} {s}")));
            }
        }
    }
    Ok((true, format!("|Omega|={}", omega.len())))
}

type CaseCheck = fn(usize, usize) -> Result<(bool, String)>;

fn bijections(p: &SuiteParams) -> Result<Vec<CaseOutcome>> {
    let k = p.k;
    let checks: [(&str, CaseCheck); 4] = [
        ("move inverse", check_move),
        ("poke-move-dethrone", check_runs),
        ("phi", check_phi),
        ("Phi/Psi", check_speed_bijection),
    ];
    let mut out = Vec::new();
    for m in p.ms()? {
        for (name, check) in checks {
            let (pass, detail) = check(k, m)?;
            out.push(outcome(
                Suite::Bijections,
                format!("k={k} m={m} {name}"),
                pass,
                detail,
            ));
        }
    }
    Ok(out)
}

fn speed_identity(p: &SuiteParams) -> Result<Vec<CaseOutcome>> {
    let (k, sigma) = (p.k, p.sigma());
    let mut out = Vec::new();
    for m in p.ms()? {
        let pass = speed_sum_identity(k, m)?;
        out.push(outcome(
            Suite::SpeedIdentity,
            format!("k={k} m={m} hop sum"),
            pass,
            format!("sum={}", total_hops(k, m)?),
        ));
        if m >= 1 {
            let exact = expected_hops_by_enumeration(k, m, sigma)?;
            let formula = cumulative_speed(k, m, sigma)?;
            out.push(outcome(
                Suite::SpeedIdentity,
                format!("k={k} m={m} cumulative speed"),
                exact == formula,
                format!("enumerated={exact} formula={formula} sigma={sigma}"),
            ));
        }
    }
    Ok(out)
}

/// The slices only match for `1 ≤ m < 2k`; at `m = 2k` the full grid has
/// `k + 1` hat placements against `k` on the grid minus a corner.
fn corner(p: &SuiteParams) -> Result<Vec<CaseOutcome>> {
    p.ms()?
        .into_iter()
        .filter(|&m| m >= 1 && m < 2 * p.k)
        .map(|m| {
            let s = corner_slices(p.k, m)?;
            Ok(outcome(
                Suite::Corner,
                format!("k={} m={m}", p.k),
                s.with_corner == s.without_corner,
                format!("with={} without={}", s.with_corner, s.without_corner),
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes_at_k_two() {
        let mut p = SuiteParams::new(2);
        p.trials = 500;
        for s in Suite::ALL {
            let out = run_suite(s, &p).unwrap();
            assert!(!out.is_empty());
            assert!(
                all_pass(&out),
                "{:?}",
                out.iter().filter(|o| !o.pass).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn bad_parameters() {
        let mut p = SuiteParams::new(3);
        p.sigma = Some(2);
        assert!(run_suite(Suite::Regular, &p).is_err());
        let mut p = SuiteParams::new(2);
        p.m = Some(5);
        assert!(run_suite(Suite::Regular, &p).is_err());
    }
}

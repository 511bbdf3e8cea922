//! Seeded Monte Carlo estimates of frog speeds and of `E LCS(R, W^(ρn)) / n`.
//!
//! Every unit of work (a speed batch or an LCS sample) draws from its own
//! ChaCha8 stream keyed by `(seed, index)`, so results do not depend on the
//! number of worker threads.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{format_rational, ExactRational};
use crate::error::{FrogError, Result};
use crate::ring::{ring_poke, FrogArrangement, Ring};
use crate::words::{lcs_length_bitparallel, periodic_expand, sample_word, Alphabet, Word};

pub const DEFAULT_SEED: u64 = 2024;
pub const DEFAULT_BATCHES: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McOptions {
    pub seed: u64,
    pub workers: usize,
    /// Pokes discarded at the start of each batch; `None` means `10·ℓ`.
    pub burn_in: Option<u64>,
    pub batches: usize,
}

impl Default for McOptions {
    fn default() -> Self {
        McOptions {
            seed: DEFAULT_SEED,
            workers: 1,
            burn_in: None,
            batches: DEFAULT_BATCHES,
        }
    }
}

impl McOptions {
    pub fn with_seed(seed: u64) -> Self {
        McOptions {
            seed,
            ..Self::default()
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers.max(1))
            .build()
            .map_err(|e| FrogError::Internal(format!("thread pool: {e}")))
    }
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn mean_and_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Per-frog and cumulative speed estimates with batch-means standard errors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpeedEstimate {
    pub n: u64,
    pub seed: u64,
    pub burn_in: u64,
    pub batches: usize,
    /// Pads per poke of frog `m`, at index `m - 1`.
    pub rates: Vec<f64>,
    pub stderr: Vec<f64>,
    /// Pads per poke of frogs `1..=m` together.
    pub cumulative: Vec<f64>,
    pub cumulative_stderr: Vec<f64>,
}

fn run_batch(ring: &Ring, pokes: u64, burn_in: u64, rng: &mut ChaCha8Rng) -> Result<Vec<u64>> {
    let sigma = ring.alphabet().size();
    let mut f = FrogArrangement::identity(ring.len());
    for _ in 0..burn_in {
        f = ring_poke(ring, &f, rng.random_range(1..=sigma))?.0;
    }
    let mut total = vec![0u64; ring.len()];
    for _ in 0..pokes {
        let (next, disp) = ring_poke(ring, &f, rng.random_range(1..=sigma))?;
        for (t, d) in total.iter_mut().zip(disp) {
            *t += d;
        }
        f = next;
    }
    Ok(total)
}

/// Run the frog dynamics on `ring` for `n` uniform pokes, split into
/// independent batches that each start from the identity arrangement.
///
/// `n = 0` gives all-zero rates.
pub fn simulate_speeds(ring: &Ring, n: u64, opts: &McOptions) -> Result<SpeedEstimate> {
    let ell = ring.len();
    let batches = opts.batches.max(1);
    let burn_in = opts.burn_in.unwrap_or(10 * ell as u64);
    let sizes: Vec<u64> = (0..batches as u64)
        .map(|b| n / batches as u64 + u64::from(b < n % batches as u64))
        .collect();
    let totals: Vec<Vec<u64>> = opts.pool()?.install(|| {
        sizes
            .par_iter()
            .enumerate()
            .map(|(b, &pokes)| {
                if pokes == 0 {
                    return Ok(vec![0; ell]);
                }
                run_batch(ring, pokes, burn_in, &mut stream(opts.seed, b as u64))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let used: Vec<usize> = (0..batches).filter(|&b| sizes[b] > 0).collect();
    let per_batch =
        |b: usize, upto: &dyn Fn(&[u64]) -> u64| upto(&totals[b]) as f64 / sizes[b] as f64;
    let summarize = |upto: &dyn Fn(&[u64]) -> u64| -> (f64, f64) {
        if n == 0 {
            return (0.0, 0.0);
        }
        let rate = totals.iter().map(|t| upto(t)).sum::<u64>() as f64 / n as f64;
        let xs: Vec<f64> = used.iter().map(|&b| per_batch(b, upto)).collect();
        let se = if xs.len() < 2 {
            f64::NAN
        } else {
            mean_and_sd(&xs).1 / (xs.len() as f64).sqrt()
        };
        (rate, se)
    };
    let mut est = SpeedEstimate {
        n,
        seed: opts.seed,
        burn_in,
        batches,
        rates: Vec::with_capacity(ell),
        stderr: Vec::with_capacity(ell),
        cumulative: Vec::with_capacity(ell),
        cumulative_stderr: Vec::with_capacity(ell),
    };
    for m in 0..ell {
        let (r, se) = summarize(&|t: &[u64]| t[m]);
        est.rates.push(r);
        est.stderr.push(se);
        let (r, se) = summarize(&|t: &[u64]| t[..=m].iter().sum());
        est.cumulative.push(r);
        est.cumulative_stderr.push(se);
    }
    Ok(est)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LcsEstimate {
    pub mean: f64,
    pub sd: f64,
    pub stderr: f64,
    pub samples: usize,
    pub n: usize,
    /// Length of the periodic word, `⌊ρn⌋`.
    pub target_len: usize,
    pub rho: String,
    pub seed: u64,
}

/// Mean of `LCS(R, base^(⌊ρn⌋)) / n` over `samples` uniform words `R ∈ Σⁿ`.
///
/// Sample `i` uses stream `i`, whatever the worker count.
pub fn estimate_lcs_gamma(
    base: &Word,
    alphabet: Alphabet,
    rho: &ExactRational,
    n: usize,
    samples: usize,
    opts: &McOptions,
) -> Result<LcsEstimate> {
    if n == 0 || samples == 0 {
        return Err(FrogError::InvalidInput(
            "n and samples must be positive".into(),
        ));
    }
    if rho < &ExactRational::from_integer(0.into()) {
        return Err(FrogError::InvalidInput(format!(
            "rho = {rho} must be non-negative"
        )));
    }
    if !base.fits(alphabet) {
        return Err(FrogError::InvalidInput(format!(
            "base word uses letters outside 1..={}",
            alphabet.size()
        )));
    }
    let target_len = (rho * ExactRational::from_integer(n.into()))
        .floor()
        .to_integer()
        .to_usize()
        .ok_or_else(|| FrogError::InvalidInput("rho·n is too large".into()))?;
    let target = periodic_expand(base, target_len)?;
    let values: Vec<f64> = opts.pool()?.install(|| {
        (0..samples as u64)
            .into_par_iter()
            .map(|i| {
                let r = sample_word(alphabet, n, &mut stream(opts.seed, i));
                lcs_length_bitparallel(r.letters(), target.letters()) as f64 / n as f64
            })
            .collect()
    });
    let (mean, sd) = mean_and_sd(&values);
    Ok(LcsEstimate {
        mean,
        sd,
        stderr: sd / (samples as f64).sqrt(),
        samples,
        n,
        target_len,
        rho: format_rational(rho),
        seed: opts.seed,
    })
}

/// One row of the simulation CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McRecord {
    pub run_id: String,
    pub k: Option<usize>,
    pub sigma: u32,
    pub rho: Option<String>,
    pub n: u64,
    pub samples: Option<usize>,
    pub statistic: String,
    pub value: f64,
    pub stderr: f64,
    pub seed: u64,
}

/// Rows `rate_m` and `cumulative_m` for every frog.
pub fn speed_records(
    run_id: &str,
    k: Option<usize>,
    sigma: u32,
    est: &SpeedEstimate,
) -> Vec<McRecord> {
    let row = |statistic: String, value: f64, stderr: f64| McRecord {
        run_id: run_id.to_string(),
        k,
        sigma,
        rho: None,
        n: est.n,
        samples: None,
        statistic,
        value,
        stderr,
        seed: est.seed,
    };
    let mut out = Vec::new();
    for m in 0..est.rates.len() {
        out.push(row(format!("rate_{}", m + 1), est.rates[m], est.stderr[m]));
    }
    for m in 0..est.rates.len() {
        out.push(row(
            format!("cumulative_{}", m + 1),
            est.cumulative[m],
            est.cumulative_stderr[m],
        ));
    }
    out
}

pub fn lcs_record(run_id: &str, k: Option<usize>, sigma: u32, est: &LcsEstimate) -> McRecord {
    McRecord {
        run_id: run_id.to_string(),
        k,
        sigma,
        rho: Some(est.rho.clone()),
        n: est.n as u64,
        samples: Some(est.samples),
        statistic: "lcs_mean".into(),
        value: est.mean,
        stderr: est.stderr,
        seed: est.seed,
    }
}

/// Write records with a header row.
pub fn write_csv<W: std::io::Write>(out: W, records: &[McRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)
            .map_err(|e| FrogError::Internal(format!("csv: {e}")))?;
    }
    w.flush()
        .map_err(|e| FrogError::Internal(format!("csv: {e}")))?;
    Ok(())
}

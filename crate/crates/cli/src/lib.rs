//! Command-line front end: counting, enumeration, state graphs, verification
//! suites, exact speeds and LCS constants, and simulations.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use frog_dynamics::analysis::{
    bc_speeds, blind_zigzag_graph, format_decimal, format_rational, gamma_bc, gamma_zigzag,
    hatted_graph, parse_rational, speeds, to_f64, ExactRational, Threshold,
};
use frog_dynamics::crowned::enumerate_crowned;
use frog_dynamics::hatted::{count_f, enumerate_hatted, GridBlind};
use frog_dynamics::montecarlo::{
    estimate_lcs_gamma, lcs_record, simulate_speeds, speed_records, write_csv, McOptions,
    DEFAULT_SEED,
};
use frog_dynamics::ring::Ring;
use frog_dynamics::verify::{all_pass, run_suite, Suite, SuiteParams};
use frog_dynamics::words::{increasing_word, zigzag_word, Alphabet, Word};
use frog_dynamics::FrogError;

#[derive(Debug, Parser)]
#[command(
    name = "frogs",
    version,
    about = "Frog processes on rings and on the 2×k grid"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Hatted,
    Blind,
    Crowned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Base {
    /// 1,2,…,k,k,…,2,1
    Zigzag,
    /// 1,2,…,k
    Increasing,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of hatted arrangements f(2k, m) for every m.
    Count {
        #[arg(long)]
        k: usize,
    },
    /// Dump every state with m frogs.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Kind::Hatted)]
        kind: Kind,
    },
    /// Edge list of the state graph.
    Graph {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        sigma: Option<u32>,
        #[arg(long, value_enum, default_value_t = Kind::Hatted)]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Run a verification suite and print one line per case.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        sigma: Option<u32>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Frog speeds, exact or simulated.
    Speeds {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, conflicts_with = "mc", required_unless_present = "mc")]
        exact: bool,
        #[arg(long)]
        mc: bool,
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Leading coefficient of the expected LCS against the periodic word.
    Gamma {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_parser = parse_rho)]
        rho: ExactRational,
        #[arg(long, default_value_t = 6)]
        digits: usize,
    },
    /// Simulated E LCS(R, W^(ρn)) / n.
    LcsSim {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_parser = parse_rho)]
        rho: ExactRational,
        #[arg(long, default_value_t = 2000)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        sim: SimArgs,
    },
}

#[derive(Debug, Args)]
struct WordArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    sigma: u32,
    #[arg(long, value_enum, default_value_t = Base::Zigzag)]
    base: Base,
}

impl WordArgs {
    fn word(&self) -> Result<Word, FrogError> {
        match self.base {
            Base::Zigzag => zigzag_word(self.k),
            Base::Increasing => increasing_word(self.k),
        }
    }

    fn ring(&self) -> Result<Ring, FrogError> {
        Ring::new(self.word()?, Alphabet::new(self.sigma)?)
    }

    fn check_sigma(&self) -> Result<(), FrogError> {
        if (self.sigma as usize) < self.k {
            return Err(FrogError::InvalidInput(format!(
                "sigma = {} must be at least k = {}",
                self.sigma, self.k
            )));
        }
        Ok(())
    }

    fn base_name(&self) -> &'static str {
        match self.base {
            Base::Zigzag => "zigzag",
            Base::Increasing => "increasing",
        }
    }
}

#[derive(Debug, Args)]
struct SimArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Pokes discarded per batch (default 10·ℓ).
    #[arg(long)]
    burn_in: Option<u64>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: FrogError| e.to_string())
}

fn parse_rho(s: &str) -> Result<ExactRational, String> {
    let r = parse_rational(s).map_err(|e| e.to_string())?;
    if r < ExactRational::from_integer(0.into()) {
        return Err("rho must be non-negative".into());
    }
    Ok(r)
}

enum Failure {
    Usage(String),
    Verification,
    Runtime(String),
}

impl From<FrogError> for Failure {
    fn from(e: FrogError) -> Self {
        match e {
            FrogError::Internal(_) | FrogError::Degenerate { .. } => {
                Failure::Runtime(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Parse `args` (program name first), run, and return the exit code:
/// 0 on success, 1 when a verification fails, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let to_out = !e.use_stderr();
            let text = e.render().to_string();
            let _ = if to_out {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if to_out { 0 } else { 2 };
        }
    };
    let result = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(file) => {
                let mut w = io::BufWriter::new(file);
                let r = dispatch(&cli, &mut w, err);
                r.and_then(|()| w.flush().map_err(Failure::from))
            }
            Err(e) => Err(Failure::Usage(format!(
                "cannot create {}: {e}",
                path.display()
            ))),
        },
        None => dispatch(&cli, out, err),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn seed_or_default(seed: Option<u64>, err: &mut dyn Write) -> io::Result<u64> {
    match seed {
        Some(s) => Ok(s),
        None => {
            writeln!(err, "seed: {DEFAULT_SEED} (default)")?;
            Ok(DEFAULT_SEED)
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Count { k } => count(*k, fmt, out),
        Command::Enumerate { k, m, kind } => enumerate(*k, *m, *kind, fmt, out),
        Command::Graph {
            k,
            m,
            sigma,
            kind,
            workers,
        } => graph(
            *k,
            *m,
            sigma.unwrap_or(*k as u32),
            *kind,
            *workers,
            fmt,
            out,
        ),
        Command::Verify {
            suite,
            k,
            sigma,
            m,
            trials,
            seed,
        } => {
            let mut p = SuiteParams::new(*k);
            p.sigma = *sigma;
            p.m = *m;
            p.trials = *trials;
            if *suite == Suite::Coupling {
                p.seed = seed_or_default(*seed, err)?;
            }
            verify(*suite, &p, fmt, out)
        }
        Command::Speeds {
            word,
            exact,
            n,
            sim,
            ..
        } => {
            if *exact {
                exact_speeds(word, fmt, out)
            } else {
                mc_speeds(word, *n, sim, fmt, out, err)
            }
        }
        Command::Gamma { word, rho, digits } => gamma(word, rho, *digits, fmt, out),
        Command::LcsSim {
            word,
            rho,
            n,
            samples,
            sim,
        } => lcs_sim(word, rho, *n, *samples, sim, fmt, out, err),
    }
}

fn count(k: usize, fmt: Format, out: &mut dyn Write) -> Outcome {
    let n = 2 * k;
    if k == 0 {
        return Err(Failure::Usage("k must be positive".into()));
    }
    let counts = (0..=n)
        .map(|m| count_f(n, m))
        .collect::<Result<Vec<_>, _>>()?;
    match fmt {
        Format::Text => {
            for (m, c) in counts.iter().enumerate() {
                writeln!(out, "f({n},{m})={c}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "n,m,count")?;
            for (m, c) in counts.iter().enumerate() {
                writeln!(out, "{n},{m},{c}")?;
            }
        }
        Format::Json => {
            let counts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", json!({ "k": k, "n": n, "counts": counts }))?;
        }
    }
    Ok(())
}

fn enumerate(k: usize, m: usize, kind: Kind, fmt: Format, out: &mut dyn Write) -> Outcome {
    let values: Vec<serde_json::Value> = match kind {
        Kind::Hatted => enumerate_hatted(k, m)?
            .into_iter()
            .map(serde_json::to_value)
            .collect::<Result<_, _>>()?,
        Kind::Blind => GridBlind::all(k, m)?
            .into_iter()
            .map(|s| json!({ "k": k, "F": s.grid().squares_of(s.f()) }))
            .collect(),
        Kind::Crowned => enumerate_crowned(k, m)?
            .into_iter()
            .map(serde_json::to_value)
            .collect::<Result<_, _>>()?,
    };
    match fmt {
        Format::Json => writeln!(out, "{}", serde_json::Value::Array(values))?,
        Format::Text | Format::Csv => {
            for v in &values {
                writeln!(out, "{v}")?;
            }
            if fmt == Format::Text {
                writeln!(out, "# {} states", values.len())?;
            }
        }
    }
    Ok(())
}

fn graph(
    k: usize,
    m: usize,
    sigma: u32,
    kind: Kind,
    workers: usize,
    fmt: Format,
    out: &mut dyn Write,
) -> Outcome {
    let pool = rayon_pool(workers)?;
    let (states, edges): (Vec<serde_json::Value>, Vec<(usize, u32, usize)>) = match kind {
        Kind::Hatted => {
            let g = pool.install(|| hatted_graph(k, m, sigma))?;
            let states = g
                .states
                .iter()
                .map(serde_json::to_value)
                .collect::<Result<_, _>>()?;
            (states, g.edges().collect())
        }
        Kind::Blind => {
            let g = pool.install(|| blind_zigzag_graph(k, m, sigma))?;
            let states = g
                .states
                .iter()
                .map(|s| json!({ "k": k, "F": s.grid().squares_of(s.f()) }))
                .collect();
            (states, g.edges().collect())
        }
        Kind::Crowned => {
            return Err(Failure::Usage(
                "graphs are built for hatted or blind states".into(),
            ))
        }
    };
    match fmt {
        Format::Json => {
            let edges: Vec<_> = edges.iter().map(|&(i, a, j)| json!([i, a, j])).collect();
            writeln!(
                out,
                "{}",
                json!({ "sigma": sigma, "states": states, "edges": edges })
            )?;
        }
        Format::Csv => {
            writeln!(out, "from,letter,to")?;
            for (i, a, j) in edges {
                writeln!(out, "{i},{a},{j}")?;
            }
        }
        Format::Text => {
            for (i, s) in states.iter().enumerate() {
                writeln!(out, "{i}: {s}")?;
            }
            for (i, a, j) in edges {
                writeln!(out, "{i} -{a}-> {j}")?;
            }
        }
    }
    Ok(())
}

fn rayon_pool(workers: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Failure::Runtime(e.to_string()))
}

fn verify(suite: Suite, p: &SuiteParams, fmt: Format, out: &mut dyn Write) -> Outcome {
    let outcomes = run_suite(suite, p)?;
    match fmt {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&outcomes)?)?,
        Format::Csv => {
            writeln!(out, "suite,case,pass,detail")?;
            for o in &outcomes {
                writeln!(out, "{},{:?},{},{:?}", o.suite, o.case, o.pass, o.detail)?;
            }
        }
        Format::Text => {
            for o in &outcomes {
                writeln!(out, "{o}")?;
            }
        }
    }
    if all_pass(&outcomes) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn exact_speeds(word: &WordArgs, fmt: Format, out: &mut dyn Write) -> Outcome {
    word.check_sigma()?;
    let s = match word.base {
        Base::Zigzag => speeds(word.k, word.sigma)?,
        Base::Increasing => bc_speeds(word.k, word.sigma)?,
    };
    let mut cum = ExactRational::from_integer(0.into());
    let rows: Vec<(usize, ExactRational, ExactRational)> = s
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            cum += &v;
            (i + 1, v, cum.clone())
        })
        .collect();
    match fmt {
        Format::Text => {
            for (m, v, c) in &rows {
                writeln!(
                    out,
                    "m={m} s={} ≈ {} cumulative={}",
                    format_rational(v),
                    format_decimal(v, 6),
                    format_rational(c)
                )?;
            }
        }
        Format::Csv => {
            writeln!(out, "k,sigma,m,s_m,decimal,cumulative")?;
            for (m, v, c) in &rows {
                writeln!(
                    out,
                    "{},{},{m},{},{},{}",
                    word.k,
                    word.sigma,
                    format_rational(v),
                    format_decimal(v, 12),
                    format_rational(c)
                )?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(m, v, c)| json!({ "m": m, "s": format_rational(v), "cumulative": format_rational(c) }))
                .collect();
            writeln!(
                out,
                "{}",
                json!({ "k": word.k, "sigma": word.sigma, "base": word.base_name(), "speeds": rows })
            )?;
        }
    }
    Ok(())
}

fn mc_options(sim: &SimArgs, err: &mut dyn Write) -> Result<McOptions, Failure> {
    Ok(McOptions {
        seed: seed_or_default(sim.seed, err)?,
        workers: sim.workers,
        burn_in: sim.burn_in,
        ..McOptions::default()
    })
}

fn mc_speeds(
    word: &WordArgs,
    n: u64,
    sim: &SimArgs,
    fmt: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let ring = word.ring()?;
    let opts = mc_options(sim, err)?;
    let est = simulate_speeds(&ring, n, &opts)?;
    let run_id = format!("speeds-{}-k{}-s{}", word.base_name(), word.k, word.sigma);
    match fmt {
        Format::Csv => write_csv(
            &mut *out,
            &speed_records(&run_id, Some(word.k), word.sigma, &est),
        )?,
        Format::Json => writeln!(out, "{}", serde_json::to_string(&est)?)?,
        Format::Text => {
            writeln!(
                out,
                "n={} seed={} batches={} burn_in={}",
                est.n, est.seed, est.batches, est.burn_in
            )?;
            for m in 0..est.rates.len() {
                writeln!(
                    out,
                    "m={} rate={:.6} ± {:.6} cumulative={:.6} ± {:.6}",
                    m + 1,
                    est.rates[m],
                    est.stderr[m],
                    est.cumulative[m],
                    est.cumulative_stderr[m]
                )?;
            }
        }
    }
    Ok(())
}

fn exact_gamma(
    word: &WordArgs,
    rho: &ExactRational,
) -> Result<(Threshold, ExactRational), FrogError> {
    word.check_sigma()?;
    match word.base {
        Base::Zigzag => gamma_zigzag(word.k, word.sigma, rho),
        Base::Increasing => gamma_bc(word.k, word.sigma, rho),
    }
}

fn gamma(
    word: &WordArgs,
    rho: &ExactRational,
    digits: usize,
    fmt: Format,
    out: &mut dyn Write,
) -> Outcome {
    let (t, g) = exact_gamma(word, rho)?;
    match fmt {
        Format::Text => {
            write!(
                out,
                "m={} equality={} gamma={} ≈ {}",
                t.m,
                t.equality,
                format_rational(&g),
                format_decimal(&g, digits)
            )?;
            if t.is_sentinel() {
                write!(out, " (rho is below every speed; gamma = rho)")?;
            }
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "k,sigma,rho,m,equality,gamma,decimal")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                word.k,
                word.sigma,
                format_rational(rho),
                t.m,
                t.equality,
                format_rational(&g),
                format_decimal(&g, digits)
            )?;
        }
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "k": word.k,
                "sigma": word.sigma,
                "base": word.base_name(),
                "rho": format_rational(rho),
                "m": t.m,
                "equality": t.equality,
                "sentinel": t.is_sentinel(),
                "gamma": format_rational(&g),
            })
        )?,
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn lcs_sim(
    word: &WordArgs,
    rho: &ExactRational,
    n: usize,
    samples: usize,
    sim: &SimArgs,
    fmt: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let opts = mc_options(sim, err)?;
    let est = estimate_lcs_gamma(
        &word.word()?,
        Alphabet::new(word.sigma)?,
        rho,
        n,
        samples,
        &opts,
    )?;
    let exact = exact_gamma(word, rho).ok().map(|(_, g)| g);
    match fmt {
        Format::Csv => {
            let run_id = format!("lcs-{}-k{}-s{}", word.base_name(), word.k, word.sigma);
            write_csv(
                &mut *out,
                &[lcs_record(&run_id, Some(word.k), word.sigma, &est)],
            )?;
        }
        Format::Json => {
            let mut v = serde_json::to_value(&est)?;
            v["gamma"] = json!(exact.as_ref().map(format_rational));
            writeln!(out, "{v}")?;
        }
        Format::Text => {
            write!(
                out,
                "n={} samples={} seed={} mean={:.6} sd={:.6} stderr={:.6}",
                est.n, est.samples, est.seed, est.mean, est.sd, est.stderr
            )?;
            if let Some(g) = &exact {
                write!(out, " gamma={} ≈ {:.6}", format_rational(g), to_f64(g))?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

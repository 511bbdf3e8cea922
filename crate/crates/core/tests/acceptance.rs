//! Acceptance run: ten criteria, one PASS/FAIL line each, with wall-clock
//! budgets. Expected values are computed here by independent means or are
//! the published figures.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use frog_dynamics::analysis::{
    blind_stationary_from_fibers, blind_zigzag_graph, check_regular, cumulative_speed,
    gamma_from_speeds, gamma_zigzag, hatted_graph, is_stationary, rational, speeds, threshold_m,
    verify_uniform_stationary, ExactRational, TransitionGraph,
};
use frog_dynamics::grid::{sq, Grid};
use frog_dynamics::hatted::{
    count_hatted, counting_triangle, enumerate_hatted, hatted_poke, is_hatted, zigzag_ring,
    GridBlind,
};
use frog_dynamics::montecarlo::{estimate_lcs_gamma, simulate_speeds, McOptions};
use frog_dynamics::ring::Ring;
use frog_dynamics::verify::{run_suite, CaseOutcome, Suite, SuiteParams};
use frog_dynamics::words::{increasing_word, Alphabet, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Hatted arrangements counted column by column: each column is empty, has
/// one frog (wearing the hat) or two frogs (hat on top or bottom); a top hat
/// may not follow a bottom hat in the previous column.
fn count_by_columns(k: usize, m: usize) -> u128 {
    // state: (frogs so far, previous column has a bottom hat)
    let mut ways = vec![[0u128; 2]; m + 1];
    ways[0][0] = 1;
    for _ in 0..k {
        let mut next = vec![[0u128; 2]; m + 1];
        for j in 0..=m {
            for (prev_bottom, &w) in ways[j].iter().enumerate() {
                if w == 0 {
                    continue;
                }
                next[j][0] += w;
                // (frogs added, hat on top?)
                for (add, top) in [(1, true), (1, false), (2, true), (2, false)] {
                    if j + add > m || (top && prev_bottom == 1) {
                        continue;
                    }
                    next[j + add][usize::from(!top)] += w;
                }
            }
        }
        ways = next;
    }
    ways[m][0] + ways[m][1]
}

fn c1_counting() -> Check {
    let tri = counting_triangle(12);
    for k in 1..=6 {
        for (m, &rec) in tri[2 * k].iter().enumerate() {
            let closed = count_hatted(k, m).map_err(|e| e.to_string())?;
            let listed = enumerate_hatted(k, m).map_err(|e| e.to_string())?.len() as u128;
            let columns = count_by_columns(k, m);
            ensure(
                closed == listed && listed == columns && columns == rec,
                || {
                    format!("k={k} m={m}: closed {closed}, enumerated {listed}, columns {columns}, recurrence {rec}")
                },
            )?;
        }
    }
    ensure(tri[4][2] == 7 && tri[4][3] == 6, || {
        "f(4,2), f(4,3) differ from 7, 6".into()
    })?;
    let h45 = count_hatted(4, 5).map_err(|e| e.to_string())?;
    ensure(h45 == 80, || format!("|H_4,5| = {h45}"))?;
    Ok("k<=6, all m; f(4,2)=7 f(4,3)=6 |H_{4,5}|=80".into())
}

fn degrees<S>(g: &TransitionGraph<S>) -> (Vec<usize>, Vec<usize>) {
    let mut indeg = vec![0; g.states.len()];
    for row in &g.succ {
        for &j in row {
            indeg[j] += 1;
        }
    }
    (g.succ.iter().map(Vec::len).collect(), indeg)
}

fn c2_figure_five() -> Check {
    for (m, size) in [(2, 7), (3, 6)] {
        let g = hatted_graph(2, m, 2).map_err(|e| e.to_string())?;
        ensure(g.states.len() == size, || {
            format!("m={m}: {} states", g.states.len())
        })?;
        let (outd, ind) = degrees(&g);
        ensure(outd.iter().chain(&ind).all(|&d| d == 2), || {
            format!("m={m}: degrees {outd:?} {ind:?}")
        })?;
    }
    Ok("7 and 6 states, 2-regular".into())
}

fn c3_regular_uniform() -> Check {
    let mut graphs = 0;
    for k in 2..=3 {
        for sigma in [k as u32, k as u32 + 2] {
            for m in 0..=2 * k {
                let g = hatted_graph(k, m, sigma).map_err(|e| e.to_string())?;
                let (_, ind) = degrees(&g);
                ensure(ind.iter().all(|&d| d == sigma as usize), || {
                    format!("k={k} σ={sigma} m={m}: in-degrees")
                })?;
                ensure(check_regular(&g).regular, || {
                    format!("k={k} σ={sigma} m={m}: check_regular")
                })?;
                ensure(verify_uniform_stationary(&g), || {
                    format!("k={k} σ={sigma} m={m}: uniform")
                })?;
                graphs += 1;
            }
        }
    }
    Ok(format!(
        "{graphs} graphs regular with uniform stationary law"
    ))
}

/// `π·P` computed directly from the edge lists.
fn stationary_by_hand<S>(g: &TransitionGraph<S>, p: &[ExactRational]) -> bool {
    let mut out = vec![rational(0, 1); p.len()];
    for (i, row) in g.succ.iter().enumerate() {
        for &j in row {
            out[j] += &p[i] / rational(g.sigma as i64, 1);
        }
    }
    out == p
}

fn c4_projected_stationary() -> Check {
    for k in 1..=3 {
        let grid = Grid::new(k).unwrap();
        for m in 0..=2 * k {
            let (states, dist) = blind_stationary_from_fibers(k, m).map_err(|e| e.to_string())?;
            let total = count_hatted(k, m).unwrap() as i64;
            for (s, p) in states.iter().zip(dist.probs()) {
                let hats = (0..=grid.full())
                    .filter(|&h| is_hatted(grid, s.f(), h))
                    .count() as i64;
                ensure(*p == rational(hats, total), || {
                    format!("k={k} m={m}: π({:?}) = {p}", s.f())
                })?;
            }
            for sigma in [k as u32, k as u32 + 1] {
                let g = blind_zigzag_graph(k, m, sigma).map_err(|e| e.to_string())?;
                ensure(g.states == states, || "state orders differ".into())?;
                ensure(
                    stationary_by_hand(&g, dist.probs()) && is_stationary(&g, &dist),
                    || format!("k={k} m={m} σ={sigma}: not stationary"),
                )?;
            }
        }
    }
    let at = |m: usize, f: &[(usize, usize)]| -> Result<ExactRational, String> {
        let (states, dist) = blind_stationary_from_fibers(4, m).map_err(|e| e.to_string())?;
        let squares: Vec<_> = f.iter().map(|&(r, c)| sq(r, c)).collect();
        let s = GridBlind::from_squares(4, &squares).map_err(|e| e.to_string())?;
        let i = states.iter().position(|&t| t == s).ok_or("state missing")?;
        Ok(dist.get(i).clone())
    };
    let a = at(2, &[(2, 2), (1, 3)])?;
    let c = at(5, &[(1, 1), (2, 2), (2, 3), (1, 4), (2, 4)])?;
    let d = at(5, &[(1, 2), (2, 2), (2, 3), (1, 3), (2, 4)])?;
    ensure(
        a == rational(0, 1) && c == rational(1, 80) && d == rational(3, 80),
        || format!("figure values {a}, {c}, {d}"),
    )?;
    Ok("k<=3 stationary; k=4 values 0, 1/80, 3/80".into())
}

fn all_pass(label: &str, outcomes: &[CaseOutcome]) -> Result<usize, String> {
    match outcomes.iter().find(|o| !o.pass) {
        Some(o) => Err(format!("{label}: {o}")),
        None => Ok(outcomes.len()),
    }
}

fn c5_coupling() -> Check {
    let mut cases = 0;
    for k in 2..=4 {
        let mut p = SuiteParams::new(k);
        p.sigma = Some(k as u32 + 1);
        p.trials = 10_000;
        p.seed = 11 + k as u64;
        cases += all_pass(
            "coupling",
            &run_suite(Suite::Coupling, &p).map_err(|e| e.to_string())?,
        )?;
    }
    Ok(format!("{cases} levels x 10000 trials, no mismatch"))
}

fn c6_crowned() -> Check {
    let mut cases = 0;
    for k in 1..=3 {
        let p = SuiteParams::new(k);
        for suite in [Suite::Bijections, Suite::SpeedIdentity, Suite::Corner] {
            cases += all_pass(
                suite.name(),
                &run_suite(suite, &p).map_err(|e| e.to_string())?,
            )?;
        }
    }
    Ok(format!("{cases} exhaustive cases"))
}

fn c7_exact_speeds() -> Check {
    let mut n = 0;
    for k in 1..=4 {
        for sigma in [k as u32, k as u32 + 1] {
            for m in 1..=2 * k {
                let states = enumerate_hatted(k, m).map_err(|e| e.to_string())?;
                let mut hops = 0u64;
                for &arr in &states {
                    for a in 1..=k as u32 {
                        hops += hatted_poke(arr, a).map_err(|e| e.to_string())?.1;
                    }
                }
                let want = rational(hops as i64, sigma as i64 * states.len() as i64);
                let got = cumulative_speed(k, m, sigma).map_err(|e| e.to_string())?;
                ensure(got == want, || {
                    format!("k={k} σ={sigma} m={m}: {got} vs {want}")
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} (k, σ, m) triples equal"))
}

fn binom(n: i64, r: i64) -> i64 {
    if r < 0 || r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn c8_monte_carlo() -> Check {
    let (k, sigma) = (3usize, 3u32);
    let ring = zigzag_ring(k, sigma).unwrap();
    let est =
        simulate_speeds(&ring, 1_000_000, &McOptions::default()).map_err(|e| e.to_string())?;
    let f = |n: i64, m: i64| {
        (0..=m / 2)
            .map(|i| binom(n - 2 * i, m - 2 * i))
            .sum::<i64>()
    };
    let mut worst: f64 = 0.0;
    for m in 1..=2 * k {
        let n = 2 * k as i64;
        let want =
            (2 * k) as f64 * f(n, m as i64 - 1) as f64 / (sigma as f64 * f(n, m as i64) as f64);
        let (v, se) = (est.cumulative[m - 1], est.cumulative_stderr[m - 1]);
        // the full-ring sum is deterministic, so its standard error is 0
        let z = if se == 0.0 {
            if (v - want).abs() < 1e-12 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (v - want).abs() / se
        };
        ensure(z <= 3.0, || format!("zigzag m={m}: {v} ± {se} vs {want}"))?;
        worst = worst.max(z);
    }
    let ring = Ring::new(increasing_word(3).unwrap(), Alphabet::new(3).unwrap()).unwrap();
    let est =
        simulate_speeds(&ring, 1_000_000, &McOptions::with_seed(99)).map_err(|e| e.to_string())?;
    for m in 1..=3i64 {
        let want = (3 * 4) as f64 / (3.0 * ((5 - m) * (4 - m)) as f64);
        let (v, se) = (est.rates[m as usize - 1], est.stderr[m as usize - 1]);
        let z = (v - want).abs() / se;
        ensure(z <= 3.0, || format!("baseline m={m}: {v} ± {se} vs {want}"))?;
        worst = worst.max(z);
    }
    Ok(format!("largest deviation {worst:.2} SE"))
}

fn c9_lcs() -> Check {
    let base: Word = "1,2,2,1".parse().unwrap();
    let est = estimate_lcs_gamma(
        &base,
        Alphabet::new(2).unwrap(),
        &rational(1, 1),
        2000,
        100,
        &McOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    // (1 - 2/4)·1 + 4/(2·7)
    let want = 0.5 + 4.0 / 14.0;
    let gap = (est.mean - want).abs();
    ensure(gap <= 0.02, || format!("mean {} vs {want}", est.mean))?;
    let exact = gamma_zigzag(2, 2, &rational(1, 1))
        .map_err(|e| e.to_string())?
        .1;
    ensure(exact == rational(11, 14), || {
        format!("gamma_zigzag(2,2,1) = {exact}")
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let k = rng.random_range(1..=4usize);
        let sigma = rng.random_range(k as u32..=6);
        let rho = rational(rng.random_range(0..=200), rng.random_range(1..=40));
        let a = gamma_zigzag(k, sigma, &rho).map_err(|e| e.to_string())?.1;
        let b = gamma_from_speeds(&speeds(k, sigma).unwrap(), 2 * k, &rho)
            .map_err(|e| e.to_string())?;
        ensure(a == b, || format!("k={k} σ={sigma} ρ={rho}: {a} vs {b}"))?;
    }
    Ok(format!(
        "mean {:.4} (|gap| {gap:.4}); 200 exact identities",
        est.mean
    ))
}

fn c10_degenerate() -> Check {
    for k in 1..=4 {
        for arr in enumerate_hatted(k, 2 * k).unwrap() {
            for a in 1..=k as u32 {
                let hop = hatted_poke(arr, a).unwrap().1;
                ensure(hop == 2 * k as u64, || format!("k={k} a={a}: hop {hop}"))?;
            }
        }
    }
    for sigma in 2..=5u32 {
        let t = threshold_m(2, sigma, &rational(1, 2 * sigma as i64)).unwrap();
        ensure(t.m == 0 && !t.equality, || format!("σ={sigma}: {t:?}"))?;
        let g = gamma_zigzag(2, sigma, &rational(1, 2 * sigma as i64))
            .unwrap()
            .1;
        ensure(g == rational(1, 2 * sigma as i64), || {
            format!("sentinel gamma {g}")
        })?;
    }
    let t = threshold_m(2, 2, &rational(5, 3)).unwrap();
    ensure(t.m == 4 && t.equality, || format!("ρ=5/3: {t:?}"))?;
    let t = threshold_m(2, 2, &(rational(5, 3) - rational(1, 1_000_000))).unwrap();
    ensure(t.m == 3 && !t.equality, || {
        format!("ρ just below 5/3: {t:?}")
    })?;
    Ok("full grid hops 2k; m=0 sentinel; equality at 5/3".into())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Check, u64);
    let criteria: [Criterion; 10] = [
        ("counting", c1_counting, 1),
        ("figure-5 graphs", c2_figure_five, 1),
        (
            "regularity and uniform stationarity",
            c3_regular_uniform,
            30,
        ),
        ("projected stationary law", c4_projected_stationary, 60),
        ("coupling chain", c5_coupling, 30),
        ("crowned machinery", c6_crowned, 300),
        ("exact speeds", c7_exact_speeds, 60),
        ("monte carlo speeds", c8_monte_carlo, 60),
        ("lcs constant", c9_lcs, 300),
        ("degenerate and flagged cases", c10_degenerate, 1),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let over = took > Duration::from_secs(budget);
        let (verdict, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget}s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {verdict} {name} [{:.2}s] {detail}",
            i + 1,
            took.as_secs_f64()
        );
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria fail");
        ExitCode::FAILURE
    }
}

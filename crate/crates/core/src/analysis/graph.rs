//! Letter-labeled state graphs of the blind and hatted processes.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;

use crate::blind::{blind_poke, BlindArrangement};
use crate::error::{FrogError, Result};
use crate::hatted::{
    enumerate_hatted, grid_blind_poke, hatted_poke, zigzag_ring, GridBlind, HattedArrangement,
};
use crate::ring::Ring;

/// One outgoing edge per (state, letter); loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionGraph<S> {
    pub states: Vec<S>,
    /// `succ[i][a - 1]` is the state reached from `states[i]` by letter `a`.
    pub succ: Vec<Vec<usize>>,
    pub sigma: u32,
}

impl<S> TransitionGraph<S> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// In-degree of every state, counting multiplicity.
    pub fn in_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.len()];
        for row in &self.succ {
            for &j in row {
                deg[j] += 1;
            }
        }
        deg
    }

    /// `(from, letter, to)` triples in state and letter order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, u32, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(a, &j)| (i, a as u32 + 1, j))
        })
    }
}

/// Build the graph of `poke` on `states` over letters `1..=sigma`.
pub fn build_graph<S, P>(states: Vec<S>, poke: P, sigma: u32) -> Result<TransitionGraph<S>>
where
    S: Clone + Eq + Hash + Send + Sync + std::fmt::Debug,
    P: Fn(&S, u32) -> Result<S> + Sync,
{
    let index: HashMap<&S, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    if index.len() != states.len() {
        return Err(FrogError::InvalidInput("duplicate states".into()));
    }
    let succ = states
        .par_iter()
        .map(|s| {
            (1..=sigma)
                .map(|a| {
                    let t = poke(s, a)?;
                    index.get(&t).copied().ok_or_else(|| {
                        FrogError::Internal(format!(
                            "{s:?} poked at {a} leaves the state set: {t:?}"
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TransitionGraph {
        states,
        succ,
        sigma,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    pub sigma: u32,
    pub min_in_degree: u64,
    pub max_in_degree: u64,
    /// States whose in-degree differs from `sigma`.
    pub irregular_states: Vec<usize>,
}

/// Every state has in-degree `sigma` (out-degree is `sigma` by construction).
pub fn check_regular<S>(g: &TransitionGraph<S>) -> RegularityReport {
    let deg = g.in_degrees();
    let sigma = g.sigma as u64;
    let irregular_states: Vec<usize> = (0..deg.len()).filter(|&i| deg[i] != sigma).collect();
    RegularityReport {
        regular: irregular_states.is_empty(),
        sigma: g.sigma,
        min_in_degree: deg.iter().copied().min().unwrap_or(0),
        max_in_degree: deg.iter().copied().max().unwrap_or(0),
        irregular_states,
    }
}

pub fn hatted_graph(k: usize, m: usize, sigma: u32) -> Result<TransitionGraph<HattedArrangement>> {
    build_graph(
        enumerate_hatted(k, m)?,
        |s, a| Ok(hatted_poke(*s, a)?.0),
        sigma,
    )
}

/// Blind process of the zigzag word, with states drawn on the grid.
pub fn blind_zigzag_graph(k: usize, m: usize, sigma: u32) -> Result<TransitionGraph<GridBlind>> {
    let ring = zigzag_ring(k, sigma)?;
    build_graph(
        GridBlind::all(k, m)?,
        |s, a| Ok(grid_blind_poke(&ring, *s, a)?.0),
        sigma,
    )
}

/// Blind process of an arbitrary ring.
pub fn blind_ring_graph(ring: &Ring, m: usize) -> Result<TransitionGraph<BlindArrangement>> {
    build_graph(
        BlindArrangement::all(ring.len(), m)?,
        |s, a| Ok(blind_poke(ring, *s, a)?.0),
        ring.alphabet().size(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::sq;
    use crate::words::{increasing_word, Alphabet};

    #[test]
    fn small_hatted_graphs() {
        let g = hatted_graph(2, 2, 2).unwrap();
        assert_eq!(g.len(), 7);
        assert!(check_regular(&g).regular);
        let g = hatted_graph(2, 3, 2).unwrap();
        assert_eq!(g.len(), 6);
        assert!(check_regular(&g).regular);
        assert!(g.succ.iter().all(|row| row.len() == 2));
    }

    #[test]
    fn figure_five_left_edges() {
        // Every letter sends (F,H) to its poke; spot-check one edge by hand:
        // frogs (1,1),(2,1) with hat on (1,1), poke 1: the bare (2,1) frog
        // hops to (1,1), the hatted one then moves to (1,2).
        let g = hatted_graph(2, 2, 2).unwrap();
        let from = HattedArrangement::from_squares(2, &[sq(1, 1), sq(2, 1)], &[sq(1, 1)]).unwrap();
        let to = HattedArrangement::from_squares(2, &[sq(1, 1), sq(1, 2)], &[sq(1, 1), sq(1, 2)])
            .unwrap();
        let i = g.states.iter().position(|&s| s == from).unwrap();
        assert_eq!(g.states[g.succ[i][0]], to);
    }

    #[test]
    fn corrupted_graph_is_not_regular() {
        let mut g = hatted_graph(2, 2, 2).unwrap();
        let target = g.succ[0][0];
        g.succ[0][0] = (target + 1) % g.len();
        assert!(!check_regular(&g).regular);
    }

    #[test]
    fn increasing_ring_graph() {
        let ring = Ring::new(increasing_word(2).unwrap(), Alphabet::new(2).unwrap()).unwrap();
        let g = blind_ring_graph(&ring, 1).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.succ.iter().all(|r| r.len() == 2));
        let z = blind_zigzag_graph(2, 1, 2).unwrap();
        assert_eq!(z.len(), 4);
        assert!(z.succ.iter().all(|r| r.len() == 2));
    }

    #[test]
    fn leaving_the_state_set_is_an_error() {
        let err = build_graph(vec![0u32, 1], |s, _| Ok(s + 5), 1).unwrap_err();
        assert!(matches!(err, FrogError::Internal(_)));
    }
}

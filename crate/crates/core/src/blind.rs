//! The m-blind-frog process: only the set of pads held by the m nastiest frogs.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{out_of_range, FrogError, Result};
use crate::ring::Ring;

/// Maximum ring length supported by the bitmask encoding.
pub const MAX_PADS: usize = 64;

/// A set of occupied pads on a ring of `ell ≤ 64` pads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlindArrangement {
    ell: usize,
    mask: u64,
}

fn full_mask(ell: usize) -> u64 {
    if ell == 64 {
        u64::MAX
    } else {
        (1u64 << ell) - 1
    }
}

impl BlindArrangement {
    pub fn empty(ell: usize) -> Result<Self> {
        if ell == 0 || ell > MAX_PADS {
            return Err(out_of_range("ring length", ell as i64, "1..=64"));
        }
        Ok(BlindArrangement { ell, mask: 0 })
    }

    pub fn from_mask(ell: usize, mask: u64) -> Result<Self> {
        let s = Self::empty(ell)?;
        if mask & !full_mask(ell) != 0 {
            return Err(FrogError::InvalidInput(format!(
                "mask {mask:#x} has bits beyond {ell} pads"
            )));
        }
        Ok(BlindArrangement { mask, ..s })
    }

    pub fn from_pads(ell: usize, pads: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(ell)?;
        for p in pads {
            if p >= ell {
                return Err(out_of_range("pad", p as i64, format!("0..{ell}")));
            }
            s.mask |= 1 << p;
        }
        Ok(s)
    }

    pub fn ell(self) -> usize {
        self.ell
    }

    pub fn mask(self) -> u64 {
        self.mask
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn contains(self, pad: usize) -> bool {
        pad < self.ell && self.mask >> pad & 1 == 1
    }

    /// Sorted pad indices.
    pub fn pads(self) -> Vec<usize> {
        (0..self.ell).filter(|&p| self.contains(p)).collect()
    }

    /// All `C(ell, m)` arrangements in increasing mask order.
    pub fn all(ell: usize, m: usize) -> Result<Vec<Self>> {
        Self::empty(ell)?;
        if m > ell {
            return Err(out_of_range("m", m as i64, format!("0..={ell}")));
        }
        Ok(crate::grid::masks_with_popcount(ell, m)
            .map(|mask| BlindArrangement { ell, mask })
            .collect())
    }
}

impl Serialize for BlindArrangement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.pads().serialize(serializer)
    }
}

/// Deserialized form needs the ring length, so this wraps the bare pad list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadList(pub Vec<usize>);

impl<'de> Deserialize<'de> for PadList {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(PadList(Vec::deserialize(deserializer)?))
    }
}

fn check_ring(ring: &Ring, s: BlindArrangement) -> Result<()> {
    if ring.len() != s.ell {
        return Err(FrogError::InvalidInput(format!(
            "ring has {} pads but arrangement lives on {}",
            ring.len(),
            s.ell
        )));
    }
    Ok(())
}

/// Rotate a mask of `ell` bits one pad clockwise.
fn shift_mask(mask: u64, ell: usize) -> u64 {
    ((mask << 1) | (mask >> (ell - 1))) & full_mask(ell)
}

/// Poke pads labeled `a`: every frog in an occupied run that starts on such
/// a pad moves forward one pad.
pub fn blind_poke(ring: &Ring, s: BlindArrangement, a: u32) -> Result<(BlindArrangement, u64)> {
    ring.alphabet().check(a)?;
    check_ring(ring, s)?;
    let ell = s.ell;
    let mut hopping = 0u64;
    for start in 0..ell {
        if ring.label(start) != a || !s.contains(start) || hopping >> start & 1 == 1 {
            continue;
        }
        let mut p = start;
        while s.contains(p) && hopping >> p & 1 == 0 {
            hopping |= 1 << p;
            p = ring.next(p);
        }
    }
    let mask = (s.mask & !hopping) | shift_mask(hopping, ell);
    Ok((BlindArrangement { ell, mask }, hopping.count_ones() as u64))
}

/// Poke pads labeled `a`, resolving agitated frogs one hop at a time.
///
/// `order` is a permutation of the pads; among agitated frogs the one whose
/// current pad comes first in `order` hops next.
pub fn blind_poke_naive(
    ring: &Ring,
    s: BlindArrangement,
    a: u32,
    order: &[usize],
) -> Result<(BlindArrangement, u64)> {
    ring.alphabet().check(a)?;
    check_ring(ring, s)?;
    let ell = s.ell;
    let mut rank = vec![usize::MAX; ell];
    for (r, &p) in order.iter().enumerate() {
        if p >= ell || rank[p] != usize::MAX {
            return Err(FrogError::InvalidInput(format!(
                "{order:?} is not a permutation of 0..{ell}"
            )));
        }
        rank[p] = r;
    }
    if order.len() != ell {
        return Err(FrogError::InvalidInput(format!(
            "{order:?} is not a permutation of 0..{ell}"
        )));
    }

    let mut calm = s.mask;
    let mut agitated: Vec<usize> = Vec::new();
    for p in s.pads() {
        if ring.label(p) == a {
            calm &= !(1 << p);
            agitated.push(p);
        }
    }
    let mut hops = 0u64;
    while !agitated.is_empty() {
        let (idx, _) = agitated
            .iter()
            .enumerate()
            .min_by_key(|&(_, &p)| rank[p])
            .expect("nonempty");
        let from = agitated.swap_remove(idx);
        let to = ring.next(from);
        hops += 1;
        if calm >> to & 1 == 1 {
            agitated.push(to);
        }
        calm |= 1 << to;
        if hops > (ell * ell) as u64 {
            return Err(FrogError::Internal("blind agitation did not settle".into()));
        }
    }
    Ok((BlindArrangement { ell, mask: calm }, hops))
}

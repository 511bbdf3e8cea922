//! Hatted-frog arrangements on the 2×k grid: validity, enumeration, counting,
//! the hatted-frog process and its projection to blind frogs.

use serde::{Deserialize, Serialize};

use crate::blind::{blind_poke, BlindArrangement};
use crate::error::{out_of_range, FrogError, Result};
use crate::grid::{masks_with_popcount, sq, Grid, Square};
use crate::ring::Ring;
use crate::words::{zigzag_word, Alphabet};

/// A pair `(F, H)` of square masks with `H ⊆ F`, one hat per occupied column,
/// and never a hat on `(2,c)` together with a hat on `(1,c+1)`.
///
/// Ordering is lexicographic on `(k, F, H)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "HattedState", try_from = "HattedState")]
pub struct HattedArrangement {
    k: usize,
    f: u64,
    h: u64,
}

/// JSON form `{"k": .., "F": [[r,c],..], "H": [[r,c],..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HattedState {
    pub k: usize,
    #[serde(rename = "F")]
    pub f: Vec<Square>,
    #[serde(rename = "H")]
    pub h: Vec<Square>,
}

impl From<HattedArrangement> for HattedState {
    fn from(a: HattedArrangement) -> Self {
        let g = a.grid();
        HattedState {
            k: a.k,
            f: g.squares_of(a.f),
            h: g.squares_of(a.h),
        }
    }
}

impl TryFrom<HattedState> for HattedArrangement {
    type Error = FrogError;

    fn try_from(s: HattedState) -> Result<Self> {
        HattedArrangement::from_squares(s.k, &s.f, &s.h)
    }
}

/// True iff `(f, h)` is a hatted arrangement on `grid`.
pub fn is_hatted(grid: Grid, f: u64, h: u64) -> bool {
    if f & !grid.full() != 0 || h & !f != 0 {
        return false;
    }
    let k = grid.k();
    for c in 1..=k {
        let col = grid.column_mask(c);
        let hats = (h & col).count_ones();
        if (f & col != 0 && hats != 1) || (f & col == 0 && hats != 0) {
            return false;
        }
        if c < k && h & grid.bit(sq(2, c)) != 0 && h & grid.bit(sq(1, c + 1)) != 0 {
            return false;
        }
    }
    true
}

impl HattedArrangement {
    pub fn new(k: usize, f: u64, h: u64) -> Result<Self> {
        let g = Grid::new(k)?;
        if !is_hatted(g, f, h) {
            return Err(FrogError::InvalidInput(format!(
                "F={:?} H={:?} is not a hatted arrangement",
                g.squares_of(f),
                g.squares_of(h)
            )));
        }
        Ok(HattedArrangement { k, f, h })
    }

    pub(crate) fn new_unchecked(k: usize, f: u64, h: u64) -> Self {
        debug_assert!(is_hatted(Grid::new(k).unwrap(), f, h));
        HattedArrangement { k, f, h }
    }

    pub fn from_squares(k: usize, f: &[Square], h: &[Square]) -> Result<Self> {
        let g = Grid::new(k)?;
        Self::new(
            k,
            g.mask_of(f.iter().copied())?,
            g.mask_of(h.iter().copied())?,
        )
    }

    pub fn empty(k: usize) -> Result<Self> {
        Self::new(k, 0, 0)
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn grid(self) -> Grid {
        Grid::new(self.k).expect("validated on construction")
    }

    pub fn f(self) -> u64 {
        self.f
    }

    pub fn h(self) -> u64 {
        self.h
    }

    /// Number of frogs.
    pub fn m(self) -> usize {
        self.f.count_ones() as usize
    }

    pub fn frogs(self) -> Vec<Square> {
        self.grid().squares_of(self.f)
    }

    pub fn hats(self) -> Vec<Square> {
        self.grid().squares_of(self.h)
    }

    pub fn has_frog(self, s: Square) -> bool {
        self.f & self.grid().bit(s) != 0
    }

    pub fn has_hat(self, s: Square) -> bool {
        self.h & self.grid().bit(s) != 0
    }

    pub fn rot(self) -> Self {
        let g = self.grid();
        HattedArrangement {
            k: self.k,
            f: g.rot_mask(self.f),
            h: g.rot_mask(self.h),
        }
    }

    /// The hat-free projection.
    pub fn doff(self) -> GridBlind {
        GridBlind {
            k: self.k,
            f: self.f,
        }
    }
}

/// True iff every square of `path` is a frog, hatted exactly when its column
/// does not occur again later in the path.
pub fn aligns(arr: HattedArrangement, path: &[Square]) -> bool {
    path.iter().enumerate().all(|(i, &s)| {
        let recurs = path[i + 1..].iter().any(|t| t.col == s.col);
        arr.has_frog(s) && arr.has_hat(s) != recurs
    })
}

/// A blind-frog arrangement drawn on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridBlind {
    k: usize,
    f: u64,
}

impl GridBlind {
    pub fn new(k: usize, f: u64) -> Result<Self> {
        let g = Grid::new(k)?;
        if f & !g.full() != 0 {
            return Err(FrogError::InvalidInput(format!(
                "mask {f:#x} exceeds 2x{k} grid"
            )));
        }
        Ok(GridBlind { k, f })
    }

    pub fn from_squares(k: usize, f: &[Square]) -> Result<Self> {
        Self::new(k, Grid::new(k)?.mask_of(f.iter().copied())?)
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn f(self) -> u64 {
        self.f
    }

    pub fn m(self) -> usize {
        self.f.count_ones() as usize
    }

    pub fn grid(self) -> Grid {
        Grid::new(self.k).expect("validated on construction")
    }

    /// All `C(2k, m)` grid sets in increasing mask order.
    pub fn all(k: usize, m: usize) -> Result<Vec<Self>> {
        let g = Grid::new(k)?;
        if m > g.size() {
            return Err(out_of_range("m", m as i64, format!("0..={}", g.size())));
        }
        Ok(masks_with_popcount(g.size(), m)
            .map(|f| GridBlind { k, f })
            .collect())
    }
}

/// The zigzag ring `1,2,…,k,k,…,1` over an alphabet of size `sigma`.
pub fn zigzag_ring(k: usize, sigma: u32) -> Result<Ring> {
    Ring::new(zigzag_word(k)?, Alphabet::new(sigma)?)
}

/// Blind poke of a grid set, computed on the zigzag ring.
pub fn grid_blind_poke(ring: &Ring, s: GridBlind, a: u32) -> Result<(GridBlind, u64)> {
    let g = s.grid();
    let (next, hop) = blind_poke(ring, g.to_ring(s.f), a)?;
    Ok((
        GridBlind {
            k: s.k,
            f: g.from_ring(next)?,
        },
        hop,
    ))
}

pub fn to_ring_blind(s: GridBlind) -> BlindArrangement {
    s.grid().to_ring(s.f)
}

fn check_m(g: Grid, m: usize) -> Result<()> {
    if m > g.size() {
        return Err(out_of_range("m", m as i64, format!("0..={}", g.size())));
    }
    Ok(())
}

/// Hat placements for `f`, column by column.
fn hat_choices(g: Grid, f: u64, mut visit: impl FnMut(u64)) {
    fn go(g: Grid, f: u64, c: usize, h: u64, prev_bottom: bool, visit: &mut dyn FnMut(u64)) {
        if c > g.k() {
            visit(h);
            return;
        }
        let top = g.bit(sq(1, c));
        let bottom = g.bit(sq(2, c));
        if f & (top | bottom) == 0 {
            go(g, f, c + 1, h, false, visit);
            return;
        }
        if f & top != 0 && !prev_bottom {
            go(g, f, c + 1, h | top, false, visit);
        }
        if f & bottom != 0 {
            go(g, f, c + 1, h | bottom, true, visit);
        }
    }
    go(g, f, 1, 0, false, &mut visit);
}

/// All hatted arrangements whose frogs are exactly `s`, in increasing `H` order.
pub fn fiber(s: GridBlind) -> Vec<HattedArrangement> {
    let mut hs = Vec::new();
    hat_choices(s.grid(), s.f, |h| hs.push(h));
    hs.sort_unstable();
    hs.into_iter()
        .map(|h| HattedArrangement::new_unchecked(s.k, s.f, h))
        .collect()
}

/// Number of valid hat placements on `s`.
pub fn fiber_count(s: GridBlind) -> u64 {
    let mut n = 0;
    hat_choices(s.grid(), s.f, |_| n += 1);
    n
}

/// All of `ℋ_{k,m}` in canonical `(F, H)` order.
pub fn enumerate_hatted(k: usize, m: usize) -> Result<Vec<HattedArrangement>> {
    let g = Grid::new(k)?;
    check_m(g, m)?;
    Ok(masks_with_popcount(g.size(), m)
        .flat_map(|f| fiber(GridBlind { k, f }))
        .collect())
}

pub fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `|ℋ_{k,m}| = Σ_i C(2k − 2i, m − 2i)`.
pub fn count_hatted(k: usize, m: usize) -> Result<u128> {
    let g = Grid::new(k)?;
    check_m(g, m)?;
    let n = 2 * k as u64;
    let m = m as u64;
    Ok((0..=m / 2).map(|i| binomial(n - 2 * i, m - 2 * i)).sum())
}

/// Rows `0..=n_max` of the triangle `f(n, m)` built from its recurrence.
pub fn counting_triangle(n_max: usize) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let row = (0..=n)
            .map(|m| {
                if m == 0 {
                    1
                } else if m == n {
                    (n / 2 + 1) as u128
                } else {
                    rows[n - 1][m] + rows[n - 1][m - 1]
                }
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `f(n, m)` from the recurrence; equals `count_hatted(n/2, m)` for even `n`.
pub fn count_f(n: usize, m: usize) -> Result<u128> {
    if m > n {
        return Err(out_of_range("m", m as i64, format!("0..={n}")));
    }
    Ok(counting_triangle(n)[n][m])
}

/// Poke column `a` (letters outside `1..=k` do nothing). Returns the new
/// arrangement and the number of hops.
pub fn hatted_poke(arr: HattedArrangement, a: u32) -> Result<(HattedArrangement, u64)> {
    let (next, origins) = hatted_poke_traced(arr, a)?;
    Ok((next, origins.len() as u64))
}

/// As [`hatted_poke`], also returning the square each hop started from.
pub fn hatted_poke_traced(
    arr: HattedArrangement,
    a: u32,
) -> Result<(HattedArrangement, Vec<Square>)> {
    if a == 0 {
        return Err(FrogError::LetterOutOfRange {
            letter: 0,
            sigma: 0,
        });
    }
    let g = arr.grid();
    let c = a as usize;
    if c > g.k() || arr.f & g.column_mask(c) == 0 {
        return Ok((arr, Vec::new()));
    }
    let (mut f, mut h) = (arr.f, arr.h);
    // Top of the stack hops next; an originally hatted frog waits.
    let mut stack: Vec<Square> = Vec::with_capacity(2);
    let column = [sq(1, c), sq(2, c)];
    for s in column.iter().filter(|&&s| arr.has_hat(s)) {
        stack.push(*s);
    }
    for s in column
        .iter()
        .filter(|&&s| arr.has_frog(s) && !arr.has_hat(s))
    {
        stack.push(*s);
    }
    f &= !g.column_mask(c);
    h &= !g.column_mask(c);
    let mut origins = Vec::new();
    while let Some(p) = stack.pop() {
        let q = g.succ(p);
        origins.push(p);
        let occupied = f & g.bit(q) != 0;
        f |= g.bit(q);
        h = (h & !g.bit(g.opp(q))) | g.bit(q);
        if occupied {
            stack.push(q);
        }
        if origins.len() > 4 * g.size() {
            return Err(FrogError::Internal(
                "hatted agitation did not settle".into(),
            ));
        }
    }
    Ok((HattedArrangement::new_unchecked(arr.k, f, h), origins))
}

/// Frogs that hop when column `c` is poked: those reachable from a square
/// of column `c` by a clockwise path inside `F`.
pub fn hop_set(arr: HattedArrangement, c: usize) -> Result<Vec<Square>> {
    let g = arr.grid();
    g.check_column(c)?;
    let mut out = 0u64;
    for r in 1..=2 {
        let mut s = sq(r, c);
        let mut steps = 0;
        while arr.has_frog(s) && steps < g.size() {
            out |= g.bit(s);
            s = g.succ(s);
            steps += 1;
        }
    }
    Ok(g.squares_of(out))
}

//! The 2×k grid, its clockwise order, and square-set bitmasks.
//!
//! Square `(r, c)` is bit `(r - 1)·k + (c - 1)` of a `u64` mask. The clockwise
//! order runs along the top row left to right, then the bottom row right to
//! left.

use serde::{Deserialize, Serialize};

use crate::blind::BlindArrangement;
use crate::error::{out_of_range, FrogError, Result};

pub const MAX_K: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Square {
    pub row: usize,
    pub col: usize,
}

impl From<Square> for [usize; 2] {
    fn from(s: Square) -> Self {
        [s.row, s.col]
    }
}

impl TryFrom<[usize; 2]> for Square {
    type Error = String;

    fn try_from([row, col]: [usize; 2]) -> std::result::Result<Self, String> {
        if !(1..=2).contains(&row) || col == 0 {
            return Err(format!("({row},{col}) is not a grid square"));
        }
        Ok(Square { row, col })
    }
}

impl std::fmt::Display for Square {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

pub const fn sq(row: usize, col: usize) -> Square {
    Square { row, col }
}

/// Geometry of the grid `[2]×[k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grid {
    k: usize,
}

impl Grid {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 || k > MAX_K {
            return Err(out_of_range("k", k as i64, format!("1..={MAX_K}")));
        }
        Ok(Grid { k })
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn size(self) -> usize {
        2 * self.k
    }

    pub fn full(self) -> u64 {
        if self.k == 32 {
            u64::MAX
        } else {
            (1u64 << (2 * self.k)) - 1
        }
    }

    pub fn contains(self, s: Square) -> bool {
        (1..=2).contains(&s.row) && (1..=self.k).contains(&s.col)
    }

    pub fn check(self, s: Square) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(FrogError::InvalidInput(format!(
                "{s} is not a square of the 2x{} grid",
                self.k
            )))
        }
    }

    pub fn check_column(self, c: usize) -> Result<()> {
        if (1..=self.k).contains(&c) {
            Ok(())
        } else {
            Err(out_of_range("column", c as i64, format!("1..={}", self.k)))
        }
    }

    pub fn bit(self, s: Square) -> u64 {
        1u64 << ((s.row - 1) * self.k + (s.col - 1))
    }

    pub fn square_of_bit(self, index: usize) -> Square {
        sq(index / self.k + 1, index % self.k + 1)
    }

    pub fn column_mask(self, c: usize) -> u64 {
        self.bit(sq(1, c)) | self.bit(sq(2, c))
    }

    pub fn squares(self) -> impl Iterator<Item = Square> {
        let k = self.k;
        (1..=2).flat_map(move |r| (1..=k).map(move |c| sq(r, c)))
    }

    /// Squares of `mask` in (row, col) order.
    pub fn squares_of(self, mask: u64) -> Vec<Square> {
        self.squares()
            .filter(|&s| mask & self.bit(s) != 0)
            .collect()
    }

    pub fn mask_of(self, squares: impl IntoIterator<Item = Square>) -> Result<u64> {
        let mut m = 0;
        for s in squares {
            self.check(s)?;
            m |= self.bit(s);
        }
        Ok(m)
    }

    pub fn succ(self, s: Square) -> Square {
        match (s.row, s.col) {
            (1, c) if c == self.k => sq(2, self.k),
            (1, c) => sq(1, c + 1),
            (_, 1) => sq(1, 1),
            (_, c) => sq(2, c - 1),
        }
    }

    pub fn pred(self, s: Square) -> Square {
        match (s.row, s.col) {
            (1, 1) => sq(2, 1),
            (1, c) => sq(1, c - 1),
            (_, c) if c == self.k => sq(1, self.k),
            (_, c) => sq(2, c + 1),
        }
    }

    pub fn opp(self, s: Square) -> Square {
        sq(3 - s.row, s.col)
    }

    /// 180° rotation.
    pub fn rot(self, s: Square) -> Square {
        sq(3 - s.row, self.k + 1 - s.col)
    }

    pub fn rot_mask(self, mask: u64) -> u64 {
        self.squares_of(mask)
            .into_iter()
            .fold(0, |m, s| m | self.bit(self.rot(s)))
    }

    /// Position of `s` in the clockwise order starting from (1,1).
    pub fn clockwise_index(self, s: Square) -> usize {
        if s.row == 1 {
            s.col - 1
        } else {
            2 * self.k - s.col
        }
    }

    /// Square at clockwise position `i` (also the ring pad `i` of the zigzag ring).
    pub fn square_at(self, i: usize) -> Square {
        if i < self.k {
            sq(1, i + 1)
        } else {
            sq(2, 2 * self.k - i)
        }
    }

    /// `I[a, b]`: clockwise walk from `a` to `b`, both included.
    pub fn closed_path(self, a: Square, b: Square) -> Vec<Square> {
        let mut out = vec![a];
        let mut cur = a;
        while cur != b {
            cur = self.succ(cur);
            out.push(cur);
        }
        out
    }

    /// `I(a, b] = I[a⁺, b]`; the whole ring when `a = b`.
    pub fn half_open_path(self, a: Square, b: Square) -> Vec<Square> {
        self.closed_path(self.succ(a), b)
    }

    pub fn path_mask(self, path: &[Square]) -> u64 {
        path.iter().fold(0, |m, &s| m | self.bit(s))
    }

    /// First square at or before `s` (walking counter-clockwise) not in `f`,
    /// or `s` itself when `s ∉ f` or `f` is full.
    pub fn eb(self, f: u64, s: Square) -> Square {
        if f & self.bit(s) == 0 || f == self.full() {
            return s;
        }
        let mut cur = self.pred(s);
        while f & self.bit(cur) != 0 {
            cur = self.pred(cur);
        }
        cur
    }

    /// Convert a grid mask to the zigzag ring's pad set.
    pub fn to_ring(self, mask: u64) -> BlindArrangement {
        let pads = self
            .squares_of(mask)
            .into_iter()
            .map(|s| self.clockwise_index(s));
        BlindArrangement::from_pads(self.size(), pads).expect("grid fits the ring")
    }

    pub fn from_ring(self, s: BlindArrangement) -> Result<u64> {
        if s.ell() != self.size() {
            return Err(FrogError::InvalidInput(format!(
                "ring of {} pads does not match a 2x{} grid",
                s.ell(),
                self.k
            )));
        }
        self.mask_of(s.pads().into_iter().map(|p| self.square_at(p)))
    }
}

/// All masks over `n` bits with exactly `m` ones, in increasing order.
pub fn masks_with_popcount(n: usize, m: usize) -> impl Iterator<Item = u64> {
    assert!(n <= 64 && m <= n);
    let limit: u128 = 1u128 << n;
    let first: u128 = (1u128 << m) - 1;
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if m == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n2 = (((r ^ cur) >> 2) / c) | r;
            (n2 < limit).then_some(n2)
        };
        Some(cur as u64)
    })
}

//! Crowned-frog arrangements: the intermediate states of the hatted-frog
//! process, one hop at a time, with a distinguished crowned frog.

mod bijection;
mod moves;

pub use bijection::{
    corner_slices, enumerate_omega, in_degree_via_crowns, phi, phi_domain, phi_inverse, psi,
    speed_phi, CornerSlices,
};
pub use moves::{move_crowned, move_inverse, run_to_end, Rule};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{FrogError, Result};
use crate::grid::{Grid, Square};
use crate::hatted::{enumerate_hatted, is_hatted, HattedArrangement};

/// Whether the crowned frog is currently agitated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrownState {
    Agitated,
    Settled,
}

/// The seven validity clauses, with the two-agitated clause split in two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// `(F, H)` is a hatted arrangement.
    A,
    /// `|A| ≤ 2` and `|F| + |A| = m`.
    B,
    /// Crown placement agrees with `x`.
    C,
    /// Each agitated frog has an empty column or an aligned path behind it.
    D,
    /// Single settled agitated frog: free successor and full columns from the crown.
    E,
    /// Two agitated frogs: the crown's column holds no calm frog.
    F1,
    /// Two agitated frogs: free successor and full columns from the crown's opposite.
    F2,
    /// Agitated crown whose missing square is opposite its successor.
    G,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::A => "a",
            Clause::B => "b",
            Clause::C => "c",
            Clause::D => "d",
            Clause::E => "e",
            Clause::F1 => "f1",
            Clause::F2 => "f2",
            Clause::G => "g",
        })
    }
}

/// A quintuple `(F, H, A, crown, x)` on the 2×k grid.
///
/// Construction only checks grid bounds; [`validate_crowned`] decides
/// membership. Ordering is lexicographic on `(k, F, H, A, crown, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "CrownedState", try_from = "CrownedState")]
pub struct CrownedArrangement {
    k: usize,
    f: u64,
    h: u64,
    a: u64,
    crown: Square,
    x: CrownState,
}

/// JSON form `{"k":..,"F":..,"H":..,"A":..,"crown":[r,c],"x":"agitated"|"settled"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrownedState {
    pub k: usize,
    #[serde(rename = "F")]
    pub f: Vec<Square>,
    #[serde(rename = "H")]
    pub h: Vec<Square>,
    #[serde(rename = "A")]
    pub a: Vec<Square>,
    pub crown: Square,
    pub x: CrownState,
}

impl From<CrownedArrangement> for CrownedState {
    fn from(c: CrownedArrangement) -> Self {
        let g = c.grid();
        CrownedState {
            k: c.k,
            f: g.squares_of(c.f),
            h: g.squares_of(c.h),
            a: g.squares_of(c.a),
            crown: c.crown,
            x: c.x,
        }
    }
}

impl TryFrom<CrownedState> for CrownedArrangement {
    type Error = FrogError;

    fn try_from(s: CrownedState) -> Result<Self> {
        let g = Grid::new(s.k)?;
        let c = CrownedArrangement::from_masks(
            s.k,
            g.mask_of(s.f.iter().copied())?,
            g.mask_of(s.h.iter().copied())?,
            g.mask_of(s.a.iter().copied())?,
            s.crown,
            s.x,
        )?;
        validate_crowned(c, c.m()).map_err(FrogError::InvalidCrowned)?;
        Ok(c)
    }
}

impl CrownedArrangement {
    pub fn from_masks(
        k: usize,
        f: u64,
        h: u64,
        a: u64,
        crown: Square,
        x: CrownState,
    ) -> Result<Self> {
        let g = Grid::new(k)?;
        g.check(crown)?;
        for (name, mask) in [("F", f), ("H", h), ("A", a)] {
            if mask & !g.full() != 0 {
                return Err(FrogError::InvalidInput(format!(
                    "{name} mask {mask:#x} exceeds the 2x{k} grid"
                )));
            }
        }
        Ok(CrownedArrangement {
            k,
            f,
            h,
            a,
            crown,
            x,
        })
    }

    pub fn from_squares(
        k: usize,
        f: &[Square],
        h: &[Square],
        a: &[Square],
        crown: Square,
        x: CrownState,
    ) -> Result<Self> {
        let g = Grid::new(k)?;
        Self::from_masks(
            k,
            g.mask_of(f.iter().copied())?,
            g.mask_of(h.iter().copied())?,
            g.mask_of(a.iter().copied())?,
            crown,
            x,
        )
    }

    pub(crate) fn raw(k: usize, f: u64, h: u64, a: u64, crown: Square, x: CrownState) -> Self {
        CrownedArrangement {
            k,
            f,
            h,
            a,
            crown,
            x,
        }
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

    pub fn a(self) -> u64 {
        self.a
    }

    pub fn agitated(self) -> Vec<Square> {
        self.grid().squares_of(self.a)
    }

    pub fn crown(self) -> Square {
        self.crown
    }

    pub fn x(self) -> CrownState {
        self.x
    }

    /// `|F| + |A|`.
    pub fn m(self) -> usize {
        (self.f.count_ones() + self.a.count_ones()) as usize
    }

    pub fn hatted(self) -> Result<HattedArrangement> {
        HattedArrangement::new(self.k, self.f, self.h)
    }

    /// 180° rotation of `F`, `H`, `A` and the crown; `x` is kept.
    pub fn rot(self) -> Self {
        let g = self.grid();
        CrownedArrangement {
            k: self.k,
            f: g.rot_mask(self.f),
            h: g.rot_mask(self.h),
            a: g.rot_mask(self.a),
            crown: g.rot(self.crown),
            x: self.x,
        }
    }

    /// Starting arrangements are the images of column pokes.
    pub fn is_start(self) -> bool {
        let g = self.grid();
        let col = g.column_mask(self.crown.col);
        self.x == CrownState::Agitated
            && self.a != 0
            && self.a & !col == 0
            && self.f & col == 0
            && self.f & self.a == 0
            && is_hatted(g, self.f | self.a, self.h | g.bit(self.crown))
    }

    /// Ending arrangements have nobody agitated.
    pub fn is_end(self) -> bool {
        self.a == 0 && self.x == CrownState::Settled
    }

    pub fn class(self) -> CrownedClass {
        CrownedClass {
            is_start: self.is_start(),
            is_end: self.is_end(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrownedClass {
    pub is_start: bool,
    pub is_end: bool,
}

fn columns_full(g: Grid, f: u64, squares: impl IntoIterator<Item = Square>) -> bool {
    squares
        .into_iter()
        .all(|s| f & g.column_mask(s.col) == g.column_mask(s.col))
}

/// Check the validity clauses in order, reporting the first failure.
pub fn validate_crowned(c: CrownedArrangement, m: usize) -> std::result::Result<(), Clause> {
    let g = c.grid();
    let (f, h, a) = (c.f, c.h, c.a);
    let crown = c.crown;
    let agitated = c.x == CrownState::Agitated;

    if !is_hatted(g, f, h) {
        return Err(Clause::A);
    }
    let n_a = a.count_ones() as usize;
    if n_a > 2 || f.count_ones() as usize + n_a != m {
        return Err(Clause::B);
    }
    let in_a = |s: Square| a & g.bit(s) != 0;
    let in_h = |s: Square| h & g.bit(s) != 0;
    let crown_ok = if agitated { in_a(crown) } else { in_h(crown) };
    if !crown_ok {
        return Err(Clause::C);
    }
    let arr = HattedArrangement::new_unchecked(c.k, f, h);
    for frog in g.squares_of(a) {
        let empty_column = f & g.column_mask(frog.col) == 0;
        if !empty_column && !crate::hatted::aligns(arr, &g.half_open_path(g.eb(f, frog), frog)) {
            return Err(Clause::D);
        }
    }
    if n_a == 1 && !agitated {
        let frog = g.squares_of(a)[0];
        if in_h(g.succ(frog)) || !columns_full(g, f, g.closed_path(crown, frog)) {
            return Err(Clause::E);
        }
    }
    if n_a == 2 {
        if f & g.column_mask(crown.col) != 0 {
            return Err(Clause::F1);
        }
        if in_a(crown) {
            let frog = g
                .squares_of(a)
                .into_iter()
                .find(|&s| s != crown)
                .expect("two agitated squares");
            let start = g.opp(crown);
            let path = g.closed_path(start, frog);
            if in_h(g.succ(frog)) || !columns_full(g, f, path.into_iter().filter(|&s| s != start)) {
                return Err(Clause::F2);
            }
        }
    }
    if agitated {
        let next = g.succ(crown);
        if g.eb(f, crown) == g.opp(next) && f & g.column_mask(next.col) != 0 {
            return Err(Clause::G);
        }
    }
    Ok(())
}

/// Result of poking a column of a hatted arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Poked {
    /// The column was empty.
    Unchanged(HattedArrangement),
    /// The column's frogs are agitated and its hatted frog is crowned.
    Crowned(CrownedArrangement),
}

pub fn poke_crowned(arr: HattedArrangement, c: usize) -> Result<Poked> {
    let g = arr.grid();
    g.check_column(c)?;
    let col = g.column_mask(c);
    let a = arr.f() & col;
    if a == 0 {
        return Ok(Poked::Unchanged(arr));
    }
    let crown = g.squares_of(arr.h() & col)[0];
    Ok(Poked::Crowned(CrownedArrangement::raw(
        arr.k(),
        arr.f() & !a,
        arr.h() & !a,
        a,
        crown,
        CrownState::Agitated,
    )))
}

/// Inverse of [`poke_crowned`] on starting arrangements: the hatted
/// arrangement and column that produce `c`.
pub fn unpoke(c: CrownedArrangement) -> Result<(HattedArrangement, usize)> {
    if !c.is_start() {
        return Err(FrogError::Domain("not a starting arrangement".into()));
    }
    let g = c.grid();
    let arr = HattedArrangement::new(c.k, c.f | c.a, c.h | g.bit(c.crown))?;
    Ok((arr, c.crown.col))
}

/// Forget the crown of an ending arrangement.
pub fn dethrone(c: CrownedArrangement) -> Result<HattedArrangement> {
    if !c.is_end() {
        return Err(FrogError::Domain(
            "dethrone needs an ending arrangement".into(),
        ));
    }
    c.hatted()
}

/// The `|H|` ending arrangements over `arr`.
pub fn dethrone_fiber(arr: HattedArrangement) -> Vec<CrownedArrangement> {
    arr.hats()
        .into_iter()
        .map(|crown| {
            CrownedArrangement::raw(arr.k(), arr.f(), arr.h(), 0, crown, CrownState::Settled)
        })
        .collect()
}

/// Every member of `𝒞_{k,m}` by filtering all quintuples, in canonical order.
pub fn enumerate_crowned(k: usize, m: usize) -> Result<Vec<CrownedArrangement>> {
    let g = Grid::new(k)?;
    if m > g.size() {
        return Err(crate::error::out_of_range(
            "m",
            m as i64,
            format!("0..={}", g.size()),
        ));
    }
    let mut a_sets = vec![0u64];
    for i in 0..g.size() {
        a_sets.push(1 << i);
        for j in i + 1..g.size() {
            a_sets.push(1 << i | 1 << j);
        }
    }
    let mut out = Vec::new();
    for &a in &a_sets {
        let n_a = a.count_ones() as usize;
        if n_a > m {
            continue;
        }
        for arr in enumerate_hatted(k, m - n_a)? {
            for crown in g.squares_of(arr.h() | a) {
                for x in [CrownState::Agitated, CrownState::Settled] {
                    let c = CrownedArrangement::raw(k, arr.f(), arr.h(), a, crown, x);
                    if validate_crowned(c, m).is_ok() {
                        out.push(c);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::sq;

    fn squares(v: &[(usize, usize)]) -> Vec<Square> {
        v.iter().map(|&(r, c)| sq(r, c)).collect()
    }

    #[test]
    fn ending_arrangements_are_valid() {
        for k in 1..=3 {
            for m in 0..=2 * k {
                for arr in enumerate_hatted(k, m).unwrap() {
                    for end in dethrone_fiber(arr) {
                        assert_eq!(validate_crowned(end, m), Ok(()));
                        assert!(end.is_end());
                        assert_eq!(dethrone(end).unwrap(), arr);
                        let wrong = CrownedArrangement {
                            x: CrownState::Agitated,
                            ..end
                        };
                        assert_eq!(validate_crowned(wrong, m), Err(Clause::C));
                    }
                }
            }
        }
    }

    #[test]
    fn occupied_crown_column_with_two_agitated_fails() {
        let c = CrownedArrangement::from_squares(
            2,
            &squares(&[(1, 1)]),
            &squares(&[(1, 1)]),
            &squares(&[(1, 1), (1, 2)]),
            sq(1, 1),
            CrownState::Agitated,
        )
        .unwrap();
        assert_eq!(validate_crowned(c, 3), Err(Clause::F1));
    }

    #[test]
    fn clause_order_and_counts() {
        let bad_hats = CrownedArrangement::from_squares(
            2,
            &squares(&[(1, 1)]),
            &[],
            &[],
            sq(1, 1),
            CrownState::Settled,
        )
        .unwrap();
        assert_eq!(validate_crowned(bad_hats, 1), Err(Clause::A));
        let end = CrownedArrangement::from_squares(
            2,
            &squares(&[(1, 1)]),
            &squares(&[(1, 1)]),
            &[],
            sq(1, 1),
            CrownState::Settled,
        )
        .unwrap();
        assert_eq!(validate_crowned(end, 2), Err(Clause::B));
        assert_eq!(validate_crowned(end, 1), Ok(()));
    }

    #[test]
    fn empty_m_has_no_crowned_arrangements() {
        for k in 1..=3 {
            assert!(enumerate_crowned(k, 0).unwrap().is_empty());
        }
    }

    #[test]
    fn pokes_land_in_start_and_unpoke() {
        for k in 1..=3 {
            for m in 0..=2 * k {
                let all = enumerate_crowned(k, m).unwrap();
                let mut starts = Vec::new();
                for arr in enumerate_hatted(k, m).unwrap() {
                    for c in 1..=k {
                        match poke_crowned(arr, c).unwrap() {
                            Poked::Unchanged(same) => {
                                assert_eq!(same, arr);
                                assert_eq!(arr.f() & arr.grid().column_mask(c), 0);
                            }
                            Poked::Crowned(s) => {
                                assert!(s.is_start());
                                assert_eq!(validate_crowned(s, m), Ok(()));
                                assert_eq!(unpoke(s).unwrap(), (arr, c));
                                starts.push(s);
                            }
                        }
                    }
                }
                starts.sort_unstable();
                let enumerated: Vec<_> = all.iter().copied().filter(|c| c.is_start()).collect();
                assert_eq!(starts, enumerated, "k={k} m={m}");
                let ends = all.iter().filter(|c| c.is_end()).count();
                assert_eq!(ends, enumerated.len(), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn figure_seven_first_pokes() {
        let arr = HattedArrangement::from_squares(
            4,
            &squares(&[(1, 1), (1, 2), (1, 4), (2, 1), (2, 3), (2, 4)]),
            &squares(&[(1, 1), (1, 2), (2, 3), (2, 4)]),
        )
        .unwrap();
        let Poked::Crowned(c) = poke_crowned(arr, 2).unwrap() else {
            panic!("column 2 is occupied");
        };
        assert_eq!(c.crown(), sq(1, 2));
        assert_eq!(c.agitated(), vec![sq(1, 2)]);

        let arr = HattedArrangement::from_squares(
            4,
            &squares(&[(1, 2), (1, 4), (2, 3), (2, 4)]),
            &squares(&[(1, 2), (2, 3), (2, 4)]),
        )
        .unwrap();
        let Poked::Crowned(c) = poke_crowned(arr, 4).unwrap() else {
            panic!("column 4 is occupied");
        };
        assert_eq!(c.crown(), sq(2, 4));
        assert_eq!(c.agitated(), vec![sq(1, 4), sq(2, 4)]);
        assert!(unpoke(c).is_ok());
        assert!(poke_crowned(arr, 5).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = CrownedArrangement::from_squares(
            2,
            &squares(&[(1, 1)]),
            &squares(&[(1, 1)]),
            &[],
            sq(1, 1),
            CrownState::Settled,
        )
        .unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"k":2,"F":[[1,1]],"H":[[1,1]],"A":[],"crown":[1,1],"x":"settled"}"#
        );
        assert_eq!(serde_json::from_str::<CrownedArrangement>(&s).unwrap(), c);
        let bad = s.replace("settled", "agitated");
        assert!(serde_json::from_str::<CrownedArrangement>(&bad).is_err());
    }

    #[test]
    fn rotation_preserves_membership() {
        for k in 1..=3 {
            for m in 0..=2 * k {
                let all = enumerate_crowned(k, m).unwrap();
                let mut rotated: Vec<_> = all.iter().map(|c| c.rot()).collect();
                rotated.sort_unstable();
                assert_eq!(rotated, all);
            }
        }
    }
}

//! The single-hop transition map on crowned arrangements and its inverse.

use std::fmt;

use super::{validate_crowned, CrownState, CrownedArrangement};
use crate::error::{FrogError, Result};
use crate::grid::{sq, Grid, Square};

/// The eight transition rules. `C*` rules move the crowned frog, `F*` rules
/// move the other agitated frog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    CE,
    CEH,
    CH,
    CFH,
    FE,
    FEH,
    FFH,
    FFC,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::CE => "cE",
            Rule::CEH => "cEH",
            Rule::CH => "cH",
            Rule::CFH => "cFH",
            Rule::FE => "fE",
            Rule::FEH => "fEH",
            Rule::FFH => "fFH",
            Rule::FFC => "fFC",
        })
    }
}

/// `H - opp(p) + p`.
fn take_hat(g: Grid, h: u64, p: Square) -> u64 {
    (h & !g.bit(g.opp(p))) | g.bit(p)
}

/// `move` without validation; the input must be valid and not ending.
pub(crate) fn move_unchecked(c: CrownedArrangement) -> Result<(CrownedArrangement, Rule)> {
    let g = c.grid();
    let (f, h, a) = (c.f, c.h, c.a);
    let n_a = a.count_ones();
    let with = |f, h, a, crown, x| CrownedArrangement::raw(c.k, f, h, a, crown, x);

    if n_a == 1 && c.x == CrownState::Agitated {
        let p = g.succ(c.crown);
        let pb = g.bit(p);
        let out = if f & g.column_mask(p.col) == 0 {
            (with(f | pb, h | pb, 0, p, CrownState::Settled), Rule::CE)
        } else if f & pb == 0 {
            (
                with(f | pb, take_hat(g, h, p), 0, p, CrownState::Settled),
                Rule::CEH,
            )
        } else if h & pb != 0 {
            (with(f, h, pb, p, CrownState::Agitated), Rule::CH)
        } else {
            (
                with(f, take_hat(g, h, p), pb, p, CrownState::Settled),
                Rule::CFH,
            )
        };
        return Ok(out);
    }

    if n_a == 2 || (n_a == 1 && c.x == CrownState::Settled) {
        let frog = g
            .squares_of(a)
            .into_iter()
            .find(|&s| n_a == 1 || s != c.crown)
            .expect("an agitated frog");
        let fb = g.bit(frog);
        let p = g.succ(frog);
        let pb = g.bit(p);
        let out = if f & g.column_mask(p.col) == 0 {
            (with(f | pb, h | pb, a & !fb, c.crown, c.x), Rule::FE)
        } else if f & pb == 0 {
            (
                with(f | pb, take_hat(g, h, p), a & !fb, c.crown, c.x),
                Rule::FEH,
            )
        } else if h & pb == 0 && c.crown != g.opp(p) {
            (
                with(f, take_hat(g, h, p), (a & !fb) | pb, c.crown, c.x),
                Rule::FFH,
            )
        } else if h & pb == 0 {
            (
                with(f, take_hat(g, h, p), pb, p, CrownState::Agitated),
                Rule::FFC,
            )
        } else {
            return Err(FrogError::Internal(format!(
                "no transition rule applies: successor {p} of agitated {frog} wears a hat"
            )));
        };
        return Ok(out);
    }

    Err(FrogError::Domain("ending arrangements have no move".into()))
}

fn check_member(c: CrownedArrangement) -> Result<()> {
    validate_crowned(c, c.m()).map_err(FrogError::InvalidCrowned)
}

/// One hop of the crowned process, with the rule that fired.
pub fn move_crowned(c: CrownedArrangement) -> Result<(CrownedArrangement, Rule)> {
    check_member(c)?;
    if c.is_end() {
        return Err(FrogError::Domain("ending arrangements have no move".into()));
    }
    move_unchecked(c)
}

/// The unique arrangement that `move` sends to `c`, built directly from the
/// shape of `c` (number of agitated frogs, crown state, missing squares).
pub fn move_inverse(c: CrownedArrangement) -> Result<CrownedArrangement> {
    check_member(c)?;
    if c.is_start() {
        return Err(FrogError::Domain(
            "starting arrangements have no preimage".into(),
        ));
    }
    let pre = inverse_unchecked(c)?;
    let image = move_unchecked(pre).map(|(img, _)| img);
    if image.as_ref().ok() != Some(&c) || validate_crowned(pre, c.m()).is_err() {
        return Err(FrogError::Internal(format!(
            "preimage construction failed for {c:?}"
        )));
    }
    Ok(pre)
}

/// Preimage of `H_* = H₁ - opp(p) + p` when `p` is a calm frog in the preimage.
fn restore_hat(g: Grid, f1: u64, h: u64, p: Square) -> u64 {
    let o = g.opp(p);
    let h = h & !g.bit(p);
    if f1 & g.bit(o) != 0 {
        h | g.bit(o)
    } else {
        h
    }
}

fn inverse_unchecked(c: CrownedArrangement) -> Result<CrownedArrangement> {
    let g = c.grid();
    let (f, h, a, crown) = (c.f, c.h, c.a, c.crown);
    let n_a = a.count_ones();
    let raw = |f, h, a, crown, x| CrownedArrangement::raw(c.k, f, h, a, crown, x);
    let crown_column_empty = f & g.column_mask(crown.col) == 0;

    // Case 1: two agitated frogs; the other one just arrived by fFH.
    if n_a == 2 {
        let frog = g
            .squares_of(a)
            .into_iter()
            .find(|&s| s != crown)
            .expect("two agitated");
        let frog1 = g.pred(frog);
        let h1 = h & !g.bit(frog) | g.bit(g.opp(frog));
        return Ok(raw(
            f,
            h1,
            g.bit(crown) | g.bit(frog1),
            crown,
            CrownState::Agitated,
        ));
    }

    // Case 2: one settled agitated frog, reached by cFH or fFH.
    if n_a == 1 && c.x == CrownState::Settled {
        let frog = g.squares_of(a)[0];
        let frog1 = g.pred(frog);
        let h1 = h & !g.bit(frog) | g.bit(g.opp(frog));
        return Ok(if crown == frog {
            raw(f, h1, g.bit(frog1), frog1, CrownState::Agitated)
        } else {
            raw(f, h1, g.bit(frog1), crown, CrownState::Settled)
        });
    }

    // The remaining cases are worked out with the crown in the top row.
    if crown.row == 2 {
        return Ok(inverse_unchecked(c.rot())?.rot());
    }
    let cc = crown.col;
    let in_f = |s: Square| s.col >= 1 && f & g.bit(s) != 0;
    let in_h = |s: Square| s.col >= 1 && h & g.bit(s) != 0;

    // Case 3: lone agitated crown over an empty column, reached by fE or fEH
    // from a pair of agitated frogs.
    if n_a == 1 && crown_column_empty {
        let f_plus = f | g.bit(crown);
        let t = (1..=cc)
            .rev()
            .find(|&t| f_plus & g.bit(sq(1, t)) == 0 || !in_h(sq(2, t - 1)))
            .expect("t = 1 always qualifies");
        let p = sq(2, t);
        if t == cc || f & g.bit(p) == 0 {
            return Err(FrogError::Internal(format!("no hop source for {c:?}")));
        }
        let frog1 = g.pred(p);
        let f1 = f & !g.bit(p);
        let h1 = restore_hat(g, f1, h, p);
        return Ok(raw(
            f1,
            h1,
            g.bit(crown) | g.bit(frog1),
            crown,
            CrownState::Agitated,
        ));
    }

    // Case 4: lone agitated crown wearing a hat; it just arrived.
    if n_a == 1 {
        let frog1 = g.pred(crown);
        let eb = g.eb(f, crown);
        if eb == g.opp(crown) {
            let f1 = f & !g.bit(crown);
            let h1 = h & !g.bit(crown);
            return Ok(raw(
                f1,
                h1,
                g.bit(crown) | g.bit(frog1),
                crown,
                CrownState::Agitated,
            ));
        }
        return Ok(if eb.col < cc {
            raw(f, h, g.bit(frog1), frog1, CrownState::Agitated)
        } else {
            let h1 = h & !g.bit(crown) | g.bit(g.opp(crown));
            raw(f, h1, g.bit(frog1), g.opp(crown), CrownState::Settled)
        });
    }

    // Case 5: nobody agitated; the last hop landed on an empty square.
    let landing = if f == g.full() {
        let ell = (1..=g.k())
            .take_while(|&j| in_h(sq(1, j)))
            .last()
            .unwrap_or(0);
        sq(1, ell.max(1))
    } else {
        let j = (cc..=g.k())
            .find(|&j| !in_f(sq(2, j)) || !in_h(g.succ(sq(1, j))))
            .unwrap_or(g.k());
        sq(1, j)
    };
    let frog1 = g.pred(landing);
    let f1 = f & !g.bit(landing);
    let h1 = restore_hat(g, f1, h, landing);
    Ok(if crown == landing {
        raw(f1, h1, g.bit(frog1), frog1, CrownState::Agitated)
    } else {
        raw(f1, h1, g.bit(frog1), crown, CrownState::Settled)
    })
}

/// Apply `move` until an ending arrangement; returns it and the number of moves.
pub fn run_to_end(c: CrownedArrangement) -> Result<(CrownedArrangement, u64)> {
    check_member(c)?;
    let limit = 4 * c.grid().size() as u64 + 4;
    let mut cur = c;
    let mut steps = 0;
    while !cur.is_end() {
        cur = move_unchecked(cur)?.0;
        steps += 1;
        if steps > limit {
            return Err(FrogError::Internal("crowned process did not end".into()));
        }
    }
    Ok((cur, steps))
}

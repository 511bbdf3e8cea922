//! Bijections built from the crowned process: the halfway map `φ`, the hop
//! bijection `Φ`/`Ψ`, and the crown-based in-degree count.

use super::moves::{move_inverse, move_unchecked};
use super::{dethrone_fiber, poke_crowned, unpoke, CrownState, CrownedArrangement, Poked};
use crate::error::{FrogError, Result};
use crate::grid::{sq, Grid, Square};
use crate::hatted::{enumerate_hatted, hatted_poke, hop_set, HattedArrangement};

/// True iff `arr` is in the domain of `φ_sq`: `sq ∈ H` and `I[opp(sq), sq] ⊄ F`.
pub fn phi_domain(sq: Square, arr: HattedArrangement) -> bool {
    let g = arr.grid();
    let path = g.path_mask(&g.closed_path(g.opp(sq), sq));
    arr.has_hat(sq) && arr.f() & path != path
}

/// Poke the column of `sq` and follow the crowned process until exactly one
/// frog is agitated; return the calm frogs at that moment.
pub fn phi(sq: Square, arr: HattedArrangement) -> Result<HattedArrangement> {
    arr.grid().check(sq)?;
    if !phi_domain(sq, arr) {
        return Err(FrogError::Domain(format!(
            "{sq} must wear a hat and I[opp,{sq}] must leave F"
        )));
    }
    let Poked::Crowned(mut c) = poke_crowned(arr, sq.col)? else {
        unreachable!("the column of a hatted frog is occupied");
    };
    let limit = 4 * arr.grid().size() + 4;
    for _ in 0..=limit {
        if c.a().count_ones() == 1 {
            return HattedArrangement::new(arr.k(), c.f(), c.h());
        }
        if c.is_end() {
            break;
        }
        c = move_unchecked(c)?.0;
    }
    Err(FrogError::Internal(format!(
        "phi never reached one agitated frog from {arr:?}"
    )))
}

/// Inverse of [`phi`]: `arr` has `m - 1` frogs and none in the column of `sq`.
pub fn phi_inverse(sq: Square, arr: HattedArrangement) -> Result<HattedArrangement> {
    let g = arr.grid();
    g.check(sq)?;
    if arr.f() & g.column_mask(sq.col) != 0 {
        return Err(FrogError::Domain(format!(
            "column {} must be empty",
            sq.col
        )));
    }
    let mut c = CrownedArrangement::raw(
        arr.k(),
        arr.f(),
        arr.h(),
        g.bit(sq),
        sq,
        CrownState::Agitated,
    );
    let limit = 4 * g.size() + 4;
    for _ in 0..=limit {
        if c.is_start() {
            let (orig, col) = unpoke(c)?;
            if col != sq.col {
                return Err(FrogError::Internal("phi inverse left the column".into()));
            }
            return Ok(orig);
        }
        c = move_inverse(c)?;
    }
    Err(FrogError::Internal(
        "phi inverse never reached a start".into(),
    ))
}

/// `Φ`: `(arr, c, frog)` with `frog ∈ Hop(arr, c)` to an `(m-1)`-arrangement
/// and a square.
pub fn speed_phi(
    arr: HattedArrangement,
    c: usize,
    frog: Square,
) -> Result<(HattedArrangement, Square)> {
    let g = arr.grid();
    if !hop_set(arr, c)?.contains(&frog) {
        return Err(FrogError::Domain(format!(
            "{frog} does not hop when column {c} is poked"
        )));
    }
    let hatted = g.squares_of(arr.h() & g.column_mask(c))[0];
    let path = g.path_mask(&g.closed_path(g.opp(hatted), frog));
    if arr.f() & path == path {
        let f = arr.f() & !g.bit(g.opp(hatted));
        Ok((HattedArrangement::new(arr.k(), f, arr.h())?, frog))
    } else {
        Ok((phi(hatted, arr)?, frog))
    }
}

/// `Ψ`, the inverse of [`speed_phi`].
pub fn psi(arr: HattedArrangement, square: Square) -> Result<(HattedArrangement, usize, Square)> {
    let g = arr.grid();
    g.check(square)?;
    if arr.f() == g.full() {
        return Err(FrogError::Domain(
            "psi needs a square missing from F".into(),
        ));
    }
    let e = g.eb(arr.f(), square);
    if arr.has_frog(g.opp(e)) {
        let f = arr.f() | g.bit(e);
        Ok((HattedArrangement::new(arr.k(), f, arr.h())?, e.col, square))
    } else {
        Ok((phi_inverse(e, arr)?, e.col, square))
    }
}

/// `Ω_{k,m}`: all `(arr, c, frog)` with `frog ∈ Hop(arr, c)`.
pub fn enumerate_omega(k: usize, m: usize) -> Result<Vec<(HattedArrangement, usize, Square)>> {
    let mut out = Vec::new();
    for arr in enumerate_hatted(k, m)? {
        for c in 1..=k {
            for frog in hop_set(arr, c)? {
                out.push((arr, c, frog));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerSlices {
    /// Arrangements with `m` frogs and a frog on `(1,k)`.
    pub with_corner: usize,
    /// Arrangements with `m - 1` frogs and `(1,k)` empty.
    pub without_corner: usize,
}

/// Sizes of the two slices matched up by `Φ`/`Ψ` at the corner `(1,k)`.
pub fn corner_slices(k: usize, m: usize) -> Result<CornerSlices> {
    let corner = sq(1, k);
    let with_corner = enumerate_hatted(k, m)?
        .into_iter()
        .filter(|a| a.has_frog(corner))
        .count();
    let without_corner = match m {
        0 => 0,
        _ => enumerate_hatted(k, m - 1)?
            .into_iter()
            .filter(|a| !a.has_frog(corner))
            .count(),
    };
    Ok(CornerSlices {
        with_corner,
        without_corner,
    })
}

/// In-degree of `arr` in the state graph over an alphabet of size `sigma`,
/// counted by running each crowned ending arrangement over `arr` back to its
/// start. Loops from empty columns and from letters beyond `k` are added.
pub fn in_degree_via_crowns(arr: HattedArrangement, sigma: u32) -> Result<u64> {
    let g: Grid = arr.grid();
    let mut count = 0u64;
    for end in dethrone_fiber(arr) {
        let mut c = end;
        let limit = 4 * g.size() + 4;
        let mut steps = 0;
        while !c.is_start() {
            c = move_inverse(c)?;
            steps += 1;
            if steps > limit {
                return Err(FrogError::Internal(
                    "no start behind an ending arrangement".into(),
                ));
            }
        }
        let (pre, col) = unpoke(c)?;
        if hatted_poke(pre, col as u32)?.0 != arr {
            return Err(FrogError::Internal(
                "crowned preimage does not poke back".into(),
            ));
        }
        count += 1;
    }
    let empty_columns = (1..=g.k())
        .filter(|&c| arr.f() & g.column_mask(c) == 0)
        .count() as u64;
    let foreign = (sigma as u64).saturating_sub(g.k() as u64);
    Ok(count + empty_columns + foreign)
}

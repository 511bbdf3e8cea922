//! The frog process on a ring of labeled lily pads.

use serde::{Deserialize, Serialize};

use crate::blind::BlindArrangement;
use crate::error::{out_of_range, FrogError, Result};
use crate::words::{Alphabet, Word};

/// A ring of `ℓ` lily pads; pad `i` carries letter `labels[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    labels: Word,
    alphabet: Alphabet,
}

impl Ring {
    pub fn new(labels: Word, alphabet: Alphabet) -> Result<Self> {
        if labels.is_empty() {
            return Err(FrogError::InvalidInput(
                "a ring needs at least one pad".into(),
            ));
        }
        for &l in labels.letters() {
            alphabet.check(l)?;
        }
        Ok(Ring { labels, alphabet })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &Word {
        &self.labels
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn label(&self, pad: usize) -> u32 {
        self.labels.letters()[pad]
    }

    pub fn next(&self, pad: usize) -> usize {
        if pad + 1 == self.len() {
            0
        } else {
            pad + 1
        }
    }
}

/// Frog `m` (1 = nastiest) sits on pad `pad_of[m - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FrogArrangement {
    pad_of: Vec<usize>,
}

impl FrogArrangement {
    pub fn new(pad_of: Vec<usize>) -> Result<Self> {
        let n = pad_of.len();
        let mut seen = vec![false; n];
        for &p in &pad_of {
            if p >= n || seen[p] {
                return Err(FrogError::InvalidInput(format!(
                    "pad_of {pad_of:?} is not a bijection onto 0..{n}"
                )));
            }
            seen[p] = true;
        }
        Ok(FrogArrangement { pad_of })
    }

    /// Frog `m` on pad `m - 1`.
    pub fn identity(ell: usize) -> Self {
        FrogArrangement {
            pad_of: (0..ell).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.pad_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pad_of.is_empty()
    }

    pub fn pad_of(&self) -> &[usize] {
        &self.pad_of
    }

    /// Pad of frog `m`, 1-based.
    pub fn pad(&self, m: usize) -> usize {
        self.pad_of[m - 1]
    }

    /// Frog index (1-based) on each pad.
    pub fn frog_on(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (i, &p) in self.pad_of.iter().enumerate() {
            out[p] = i + 1;
        }
        out
    }
}

/// Pads hopped per frog, indexed by frog - 1.
pub type DisplacementVector = Vec<u64>;

/// JSON form `{"labels": [..], "pad_of": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingState {
    pub labels: Vec<u32>,
    pub pad_of: Vec<usize>,
}

impl RingState {
    pub fn new(ring: &Ring, f: &FrogArrangement) -> Self {
        RingState {
            labels: ring.labels().letters().to_vec(),
            pad_of: f.pad_of().to_vec(),
        }
    }
}

fn check_sizes(ring: &Ring, f: &FrogArrangement) -> Result<()> {
    if ring.len() != f.len() {
        return Err(FrogError::InvalidInput(format!(
            "ring has {} pads but arrangement has {} frogs",
            ring.len(),
            f.len()
        )));
    }
    Ok(())
}

/// Poke every pad labeled `a` and let the frogs settle.
pub fn ring_poke(
    ring: &Ring,
    f: &FrogArrangement,
    a: u32,
) -> Result<(FrogArrangement, DisplacementVector)> {
    ring.alphabet().check(a)?;
    check_sizes(ring, f)?;
    let ell = ring.len();
    let mut pos = f.pad_of.clone();
    let mut occupant = f.frog_on();
    let mut agitated: Vec<bool> = pos.iter().map(|&p| ring.label(p) == a).collect();
    let mut disp = vec![0u64; ell];

    // A frog only ever agitates less nasty frogs, so one pass by nastiness suffices.
    for i in 1..=ell {
        if !agitated[i - 1] {
            continue;
        }
        agitated[i - 1] = false;
        let from = pos[i - 1];
        if occupant[from] == i {
            occupant[from] = 0;
        }
        let mut to = from;
        let mut d = 0u64;
        loop {
            to = ring.next(to);
            d += 1;
            let o = occupant[to];
            if o == 0 || o > i {
                break;
            }
        }
        let displaced = occupant[to];
        if displaced != 0 {
            agitated[displaced - 1] = true;
        }
        occupant[to] = i;
        pos[i - 1] = to;
        disp[i - 1] += d;
    }
    Ok((FrogArrangement { pad_of: pos }, disp))
}

/// Poke the letters of `r` left to right, accumulating displacements.
pub fn ring_poke_word(
    ring: &Ring,
    f: &FrogArrangement,
    r: &Word,
) -> Result<(FrogArrangement, DisplacementVector)> {
    check_sizes(ring, f)?;
    let mut cur = f.clone();
    let mut total = vec![0u64; ring.len()];
    for &a in r.letters() {
        let (next, disp) = ring_poke(ring, &cur, a)?;
        for (t, d) in total.iter_mut().zip(disp) {
            *t += d;
        }
        cur = next;
    }
    Ok((cur, total))
}

/// Pads occupied by frogs `1..=m`.
pub fn project_nastiest(f: &FrogArrangement, m: usize) -> Result<BlindArrangement> {
    if m < 1 || m > f.len() {
        return Err(out_of_range("m", m as i64, format!("1..={}", f.len())));
    }
    BlindArrangement::from_pads(f.len(), f.pad_of[..m].iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pads (b,a,a,b,a) holding frogs 1,5,2,4,3.
    fn figure_one() -> (Ring, FrogArrangement) {
        let ring = Ring::new("2,1,1,2,1".parse().unwrap(), Alphabet::new(2).unwrap()).unwrap();
        let f = FrogArrangement::new(vec![0, 2, 4, 3, 1]).unwrap();
        (ring, f)
    }

    #[test]
    fn figure_one_displacements() {
        let (ring, f) = figure_one();
        let (_, disp) = ring_poke(&ring, &f, 1).unwrap();
        assert_eq!(disp, vec![0, 1, 2, 1, 1]);
        let (_, disp) = ring_poke(&ring, &f, 2).unwrap();
        assert_eq!(disp, vec![1, 0, 0, 2, 2]);
    }

    #[test]
    fn figure_one_projection() {
        let (_, f) = figure_one();
        assert_eq!(project_nastiest(&f, 2).unwrap().pads(), vec![0, 2]);
        assert_eq!(project_nastiest(&f, 1).unwrap().pads(), vec![0]);
        assert_eq!(project_nastiest(&f, 5).unwrap().pads(), vec![0, 1, 2, 3, 4]);
        assert!(project_nastiest(&f, 0).is_err());
        assert!(project_nastiest(&f, 6).is_err());
    }

    #[test]
    fn absent_letter_is_identity() {
        let (_, f) = figure_one();
        let ring = Ring::new("2,1,1,2,1".parse().unwrap(), Alphabet::new(3).unwrap()).unwrap();
        assert_eq!(ring_poke(&ring, &f, 3).unwrap(), (f.clone(), vec![0; 5]));
        assert!(ring_poke(&ring, &f, 4).is_err());
        assert!(ring_poke(&ring, &f, 0).is_err());
    }

    #[test]
    fn zigzag_two_step_trace() {
        // Ring 1,2,2,1 with frogs 1..4 on pads 0..3.
        let ring = Ring::new("1,2,2,1".parse().unwrap(), Alphabet::new(2).unwrap()).unwrap();
        let f = FrogArrangement::identity(4);
        // Poke 1 agitates frogs 1 and 4; each leap displaces the next frog.
        let (g, d1) = ring_poke(&ring, &f, 1).unwrap();
        assert_eq!(g.pad_of(), &[1, 2, 3, 0]);
        assert_eq!(d1, vec![1, 1, 1, 1]);
        // Frog 1 now on pad 1 (label 2), so poke 2 moves it one more pad.
        let (_, d2) = ring_poke(&ring, &g, 2).unwrap();
        assert_eq!(d2[0], 1);
        let (_, total) = ring_poke_word(&ring, &f, &"1,2".parse().unwrap()).unwrap();
        assert_eq!(total[0], 2);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(FrogArrangement::new(vec![0, 0]).is_err());
        assert!(FrogArrangement::new(vec![0, 2]).is_err());
        assert!(Ring::new(Word::empty(), Alphabet::new(1).unwrap()).is_err());
    }

    #[test]
    fn json_shape() {
        let (ring, f) = figure_one();
        let s = serde_json::to_string(&RingState::new(&ring, &f)).unwrap();
        assert_eq!(s, r#"{"labels":[2,1,1,2,1],"pad_of":[0,2,4,3,1]}"#);
    }
}

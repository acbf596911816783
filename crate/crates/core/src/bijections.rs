//! Bijections between permutations and Laguerre histories (Foata-Zeilberger
//! and Françon-Viennot), the decomposition of the path family `P` into pairs
//! of `R*` and `B*` paths, and the `q = 0` map from bicolor Motzkin paths to
//! pairs of Dyck paths.

use serde::Serialize;
use thiserror::Error;

use crate::paths::{
    starting_heights, Direction, DyckPath, Family, HistoryStep, LaguerreHistory, PathError, Step,
    StepWeight, WeightedMotzkinPath,
};
use crate::perms::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("second path has {got} steps, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("path belongs to family {got}, expected {expected}")]
    WrongFamily {
        expected: &'static str,
        got: &'static str,
    },
    #[error(transparent)]
    Path(#[from] PathError),
}

// ---------------------------------------------------------------------------
// Foata-Zeilberger

/// History whose step `i` records how `i` sits in its cycle: up at a cycle
/// valley, down at a cycle peak, level otherwise; weight `y q^j` for a weak
/// excedance and `q^j` otherwise, `j` counting crossings.
pub fn psi_fz(p: &Permutation) -> LaguerreHistory {
    let n = p.len();
    let inv = p.inverse();
    let s = |i: usize| p.at(i);
    let steps = (1..=n)
        .map(|i| {
            let (pre, post) = (inv.at(i), s(i));
            let dir = if pre > i && post > i {
                Direction::Up
            } else if pre < i && post < i {
                Direction::Down
            } else {
                Direction::Level
            };
            if i <= post {
                let j = (1..i).filter(|&k| i <= s(k) && s(k) < post).count();
                HistoryStep::new(dir, 1, j as u32)
            } else {
                let j = (i + 1..=n).filter(|&k| post < s(k) && s(k) < i).count();
                HistoryStep::new(dir, 0, j as u32)
            }
        })
        .collect();
    LaguerreHistory::new(steps).expect("Foata-Zeilberger image is a valid history")
}

/// Rebuilds the permutation by scanning `1..n`, keeping the open upper arcs
/// sorted by their eventual target and the pending targets of lower arcs.
pub fn psi_fz_inv(h: &LaguerreHistory) -> Permutation {
    let n = h.len();
    let mut images = vec![0usize; n];
    // sources of open upper arcs, in increasing order of target
    let mut upper: Vec<usize> = Vec::new();
    // targets still waiting for a later source, increasing
    let mut pending: Vec<usize> = Vec::new();
    let take_lower = |pending: &mut Vec<usize>, j: usize| pending.remove(pending.len() - 1 - j);
    for (idx, s) in h.steps().iter().enumerate() {
        let i = idx + 1;
        let j = s.level as usize;
        match (s.dir, s.delta) {
            (Direction::Up, _) => {
                upper.insert(j, i);
                pending.push(i);
            }
            (Direction::Down, _) => {
                let src = upper.remove(0);
                images[src - 1] = i;
                images[i - 1] = take_lower(&mut pending, j);
            }
            (Direction::Level, 1) => {
                if j == 0 {
                    images[i - 1] = i;
                } else {
                    let src = upper.remove(0);
                    images[src - 1] = i;
                    upper.insert(j - 1, i);
                }
            }
            (Direction::Level, _) => {
                images[i - 1] = take_lower(&mut pending, j);
                pending.push(i);
            }
        }
    }
    Permutation::new(images).expect("inverse scan fills every image")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FzStepReport {
    pub index: usize,
    pub lr_max: bool,
    pub rl_min: bool,
    pub fixed_point: bool,
    pub type1: bool,
    pub type2: bool,
}

pub fn psi_fz_step_types(p: &Permutation) -> Vec<FzStepReport> {
    let h = psi_fz(p);
    let (t1, t2) = (h.type1_flags(), h.type2_flags());
    let (lr, rl) = (p.lr_maxima(), p.rl_minima());
    (0..p.len())
        .map(|k| FzStepReport {
            index: k + 1,
            lr_max: lr[k],
            rl_min: rl[k],
            fixed_point: p.at(k + 1) == k + 1,
            type1: t1[k],
            type2: t2[k],
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Françon-Viennot

/// History whose step `k` describes the position `j` of `k` in the one-line
/// word (with `0` and `n+1` appended): valley up, peak down, level otherwise;
/// weight `y` at an ascent and `q` to the number of 31-2 patterns ending at `j`.
pub fn psi_fv(p: &Permutation) -> LaguerreHistory {
    let n = p.len();
    let inv = p.inverse();
    let val = |j: usize| {
        if j == 0 {
            0
        } else if j > n {
            n + 1
        } else {
            p.at(j)
        }
    };
    let steps = (1..=n)
        .map(|k| {
            let j = inv.at(k);
            let (left, right) = (val(j - 1), val(j + 1));
            let dir = match (left > k, right > k) {
                (true, true) => Direction::Up,
                (false, false) => Direction::Down,
                _ => Direction::Level,
            };
            let delta = u8::from(right > k);
            HistoryStep::new(dir, delta, p.pattern_31_2_at(j) as u32)
        })
        .collect();
    LaguerreHistory::new(steps).expect("Françon-Viennot image is a valid history")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cell {
    Value(usize),
    Slot,
}

/// Inserts `1..n` in increasing order into a word with slots for larger
/// values; the q-exponent of each step picks the slot.
pub fn psi_fv_inv(h: &LaguerreHistory) -> Permutation {
    let mut word = vec![Cell::Slot];
    for (idx, s) in h.steps().iter().enumerate() {
        let k = idx + 1;
        let pos = word
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == Cell::Slot)
            .nth(s.level as usize)
            .map(|(p, _)| p)
            .expect("slot index within range");
        let v = Cell::Value(k);
        let replacement: &[Cell] = match (s.dir, s.delta) {
            (Direction::Up, _) => &[Cell::Slot, v, Cell::Slot],
            (Direction::Down, _) => &[v],
            (Direction::Level, 1) => &[v, Cell::Slot],
            (Direction::Level, _) => &[Cell::Slot, v],
        };
        word.splice(pos..=pos, replacement.iter().copied());
    }
    let images = word
        .into_iter()
        .filter_map(|c| match c {
            Cell::Value(v) => Some(v),
            Cell::Slot => None,
        })
        .collect();
    Permutation::new(images).expect("insertion places every value once")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FvStepReport {
    /// The value `i` whose step this is.
    pub value: usize,
    /// Its position in the one-line word.
    pub position: usize,
    pub rl_min: bool,
    pub rl_max: bool,
    pub type1: bool,
    pub type2: bool,
    /// Every type 1 step lies strictly left of this one.
    pub after_all_type1: bool,
}

pub fn psi_fv_step_types(p: &Permutation) -> Vec<FvStepReport> {
    let h = psi_fv(p);
    let (t1, t2) = (h.type1_flags(), h.type2_flags());
    let last_t1 = t1.iter().rposition(|&f| f);
    let (rl_min, rl_max) = (p.rl_minima(), p.rl_maxima());
    let inv = p.inverse();
    (0..p.len())
        .map(|k| {
            let position = inv.at(k + 1);
            FvStepReport {
                value: k + 1,
                position,
                rl_min: rl_min[position - 1],
                rl_max: rl_max[position - 1],
                type1: t1[k],
                type2: t2[k],
                after_all_type1: last_t1.is_none_or(|l| k > l),
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Path decomposition

fn check_family(p: &WeightedMotzkinPath, expected: Family) -> Result<(), BijectionError> {
    if p.family() == expected {
        Ok(())
    } else {
        Err(BijectionError::WrongFamily {
            expected: expected.name(),
            got: p.family().name(),
        })
    }
}

/// Merges a path of `R*` with a path of `B*` whose length is the number of
/// `q`-power level steps of the first: those steps take the direction of the
/// corresponding step of the second path and the product of both weights.
pub fn phi(
    h1: &WeightedMotzkinPath,
    h2: &WeightedMotzkinPath,
) -> Result<WeightedMotzkinPath, BijectionError> {
    check_family(h1, Family::RStar)?;
    check_family(h2, Family::BStar)?;
    let expected = h1.qpow_levels();
    if h2.len() != expected {
        return Err(BijectionError::LengthMismatch {
            expected,
            got: h2.len(),
        });
    }
    Ok(WeightedMotzkinPath::new(
        Family::P,
        merge(h1.steps(), 0, h2.steps()),
    )?)
}

/// The merge on suffixes; `h1_start` is the starting height of `h1`.
fn merge(h1: &[Step], h1_start: u32, h2: &[Step]) -> Vec<Step> {
    let mut inner = h2.iter();
    h1.iter()
        .zip(starting_heights(h1, h1_start))
        .map(|(s, h)| {
            if s.weight != StepWeight::QPow {
                return *s;
            }
            let other = inner.next().expect("lengths checked");
            let weight = match other.weight {
                StepWeight::Split(i) => StepWeight::Split(i + h),
                w => w,
            };
            Step::new(other.dir, weight)
        })
        .collect()
}

/// State of the right-to-left scan after reading a suffix of the path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiInvState {
    /// Steps of the suffix read so far.
    pub suffix: Vec<Step>,
    pub suffix_start: u32,
    pub first: Vec<Step>,
    pub first_start: u32,
    pub second: Vec<Step>,
    pub second_start: u32,
}

/// Splits a path of `P` into its preimage pair; entry `j` of the returned
/// trace is the state after reading the last `j` steps.
pub fn phi_inv_trace(
    h: &WeightedMotzkinPath,
) -> Result<(WeightedMotzkinPath, WeightedMotzkinPath, Vec<PhiInvState>), BijectionError> {
    use Direction::*;
    check_family(h, Family::P)?;
    let steps = h.steps();
    let heights = h.heights();
    let (mut first, mut second): (Vec<Step>, Vec<Step>) = (Vec::new(), Vec::new());
    let (mut e1, mut e2) = (0u32, 0u32);
    let mut trace = vec![PhiInvState {
        suffix: Vec::new(),
        suffix_start: 0,
        first: Vec::new(),
        first_start: 0,
        second: Vec::new(),
        second_start: 0,
    }];
    for idx in (0..steps.len()).rev() {
        let s = steps[idx];
        let level_q = Step::new(Level, StepWeight::QPow);
        match (s.dir, s.weight) {
            (Down, StepWeight::MinusAlphaBeta) => {
                first.push(level_q);
                second.push(s);
                e2 += 1;
            }
            (Up, StepWeight::Split(i)) if i < e1 => {
                first.push(s);
                e1 -= 1;
            }
            (Up, StepWeight::Split(i)) => {
                first.push(level_q);
                second.push(Step::new(Up, StepWeight::Split(i - e1)));
                e2 -= 1;
            }
            (Level, StepWeight::AlphaBeta) => {
                first.push(level_q);
                second.push(s);
            }
            (Down, _) => {
                first.push(s);
                e1 += 1;
            }
            _ => first.push(s),
        }
        debug_assert_eq!(e1 + e2, heights[idx]);
        let rev = |v: &[Step]| v.iter().rev().copied().collect::<Vec<_>>();
        let state = PhiInvState {
            suffix: steps[idx..].to_vec(),
            suffix_start: heights[idx],
            first: rev(&first),
            first_start: e1,
            second: rev(&second),
            second_start: e2,
        };
        debug_assert_eq!(
            merge(&state.first, state.first_start, &state.second),
            state.suffix
        );
        trace.push(state);
    }
    first.reverse();
    second.reverse();
    Ok((
        WeightedMotzkinPath::new(Family::RStar, first)?,
        WeightedMotzkinPath::new(Family::BStar, second)?,
        trace,
    ))
}

pub fn phi_inv(
    h: &WeightedMotzkinPath,
) -> Result<(WeightedMotzkinPath, WeightedMotzkinPath), BijectionError> {
    phi_inv_trace(h).map(|(a, b, _)| (a, b))
}

// ---------------------------------------------------------------------------
// Bicolor Motzkin paths

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BicolorStep {
    Up,
    /// Level step allowed at every height.
    Level1,
    /// Level step forbidden at height 0.
    Level2,
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BicolorMotzkinPath {
    steps: Vec<BicolorStep>,
}

impl BicolorMotzkinPath {
    pub fn new(steps: Vec<BicolorStep>) -> Result<Self, PathError> {
        let mut h = 0i64;
        for (i, s) in steps.iter().enumerate() {
            match s {
                BicolorStep::Up => h += 1,
                BicolorStep::Down => h -= 1,
                BicolorStep::Level2 if h == 0 => {
                    return Err(PathError::MalformedPath(format!(
                        "second level colour at height 0 (step {})",
                        i + 1
                    )))
                }
                _ => {}
            }
            if h < 0 {
                return Err(PathError::MalformedPath(format!(
                    "negative height after step {}",
                    i + 1
                )));
            }
        }
        if h != 0 {
            return Err(PathError::MalformedPath(format!("ends at height {h}")));
        }
        Ok(BicolorMotzkinPath { steps })
    }

    pub fn steps(&self) -> &[BicolorStep] {
        &self.steps
    }

    /// The `q = 0` history with the same shape; only histories without a
    /// positive `q` exponent correspond to bicolor paths.
    pub fn from_history(h: &LaguerreHistory) -> Option<Self> {
        let steps = h
            .steps()
            .iter()
            .map(|s| {
                if s.level != 0 {
                    return None;
                }
                Some(match (s.dir, s.delta) {
                    (Direction::Up, _) => BicolorStep::Up,
                    (Direction::Down, _) => BicolorStep::Down,
                    (Direction::Level, 1) => BicolorStep::Level1,
                    (Direction::Level, _) => BicolorStep::Level2,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(BicolorMotzkinPath { steps })
    }

    /// `(beta marks, alpha marks)`: beta on up and first-colour level steps at
    /// height 0; alpha on down and second-colour level steps from height 1 to
    /// the right of every beta mark.
    pub fn marks(&self) -> (usize, usize) {
        let mut h = 0i64;
        let mut beta_positions = Vec::new();
        let mut alpha_candidates = Vec::new();
        for (i, s) in self.steps.iter().enumerate() {
            match s {
                BicolorStep::Up | BicolorStep::Level1 if h == 0 => beta_positions.push(i),
                BicolorStep::Down | BicolorStep::Level2 if h == 1 => alpha_candidates.push(i),
                _ => {}
            }
            match s {
                BicolorStep::Up => h += 1,
                BicolorStep::Down => h -= 1,
                _ => {}
            }
        }
        let last_beta = beta_positions.last().copied();
        let alpha = alpha_candidates
            .iter()
            .filter(|&&i| last_beta.is_none_or(|b| i > b))
            .count();
        (beta_positions.len(), alpha)
    }

    /// The Dyck path obtained by doubling each step.
    pub fn to_dyck(&self) -> DyckPath {
        let steps = self
            .steps
            .iter()
            .flat_map(|s| match s {
                BicolorStep::Up => [true, true],
                BicolorStep::Level1 => [true, false],
                BicolorStep::Level2 => [false, true],
                BicolorStep::Down => [false, false],
            })
            .collect();
        DyckPath::new(steps).expect("doubling a bicolor path gives a Dyck path")
    }
}

/// All bicolor Motzkin paths with `len` steps.
pub fn enumerate_bicolor(len: usize) -> Vec<BicolorMotzkinPath> {
    fn go(left: usize, h: usize, prefix: &mut Vec<BicolorStep>, out: &mut Vec<BicolorMotzkinPath>) {
        if h > left {
            return;
        }
        if left == 0 {
            out.push(BicolorMotzkinPath {
                steps: prefix.clone(),
            });
            return;
        }
        for s in [
            BicolorStep::Up,
            BicolorStep::Level1,
            BicolorStep::Level2,
            BicolorStep::Down,
        ] {
            let next = match s {
                BicolorStep::Up => h + 1,
                BicolorStep::Down if h == 0 => continue,
                BicolorStep::Down => h - 1,
                BicolorStep::Level2 if h == 0 => continue,
                _ => h,
            };
            prefix.push(s);
            go(left - 1, next, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Doubles each step and factors the result as `D1 U D2 D`. The empty path
/// maps to two empty paths.
pub fn bicolor_to_dyck_pair(m: &BicolorMotzkinPath) -> (DyckPath, DyckPath) {
    let d = m.to_dyck();
    let steps = d.steps();
    if steps.is_empty() {
        return (
            DyckPath::new(vec![]).unwrap(),
            DyckPath::new(vec![]).unwrap(),
        );
    }
    // last up step starting at height 0
    let mut h = 0i64;
    let mut split = 0;
    for (i, &up) in steps.iter().enumerate() {
        if up && h == 0 {
            split = i;
        }
        h += if up { 1 } else { -1 };
    }
    let d1 = DyckPath::new(steps[..split].to_vec()).expect("prefix before a return");
    let d2 = DyckPath::new(steps[split + 1..steps.len() - 1].to_vec()).expect("last arch interior");
    (d1, d2)
}

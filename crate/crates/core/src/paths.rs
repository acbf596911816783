//! Weighted Motzkin and Dyck paths: Laguerre histories, the path families
//! whose weighted sums assemble the partition function, J-fraction moments,
//! and the Dyck-path statistics behind the Fine and `q = 0` specializations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::polyring::{alpha_tilde, beta_tilde, Exponents, MPoly, Var};
use crate::qtools::q_int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("step {index} ({step}) is not admissible at height {height}")]
    Inadmissible {
        index: usize,
        step: String,
        height: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Up,
    Level,
    Down,
}

impl Direction {
    pub fn delta(self) -> i64 {
        match self {
            Direction::Up => 1,
            Direction::Level => 0,
            Direction::Down => -1,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Direction::Up => "U",
            Direction::Level => "H",
            Direction::Down => "D",
        }
    }

    /// Height after taking this step from `h`.
    pub fn apply(self, h: u32) -> u32 {
        (h as i64 + self.delta()) as u32
    }
}

/// Symbolic weight tag of a step. Tags that depend on the starting height `h`
/// are resolved by [`StepWeight::resolve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepWeight {
    /// `q^i - q^(i+1)`.
    Split(u32),
    One,
    /// `-q^(h+1)`.
    MinusQ,
    OnePlusY,
    /// `q^h`.
    QPow,
    /// `(at + y bt) q^h`.
    AlphaBeta,
    Y,
    /// `-y at bt q^(h-1)`.
    MinusAlphaBeta,
}

/// How the shifted boundary parameters appear in resolved weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TildeForm {
    /// Substituted as `(1-q)a - 1` and `(1-q)b - 1`.
    Expanded,
    /// The variables `a` and `b` stand for the shifted parameters themselves.
    Symbolic,
}

impl TildeForm {
    fn pair(self) -> (MPoly, MPoly) {
        match self {
            TildeForm::Expanded => (alpha_tilde(), beta_tilde()),
            TildeForm::Symbolic => (MPoly::var(Var::A), MPoly::var(Var::B)),
        }
    }
}

impl StepWeight {
    pub fn resolve(self, h: u32, form: TildeForm) -> MPoly {
        let q = |k: u32| MPoly::var_pow(Var::Q, k);
        match self {
            StepWeight::Split(i) => q(i) - q(i + 1),
            StepWeight::One => MPoly::one(),
            StepWeight::MinusQ => -q(h + 1),
            StepWeight::OnePlusY => MPoly::one() + MPoly::var(Var::Y),
            StepWeight::QPow => q(h),
            StepWeight::AlphaBeta => {
                let (at, bt) = form.pair();
                (at + MPoly::var(Var::Y) * bt).shift(Var::Q, h)
            }
            StepWeight::Y => MPoly::var(Var::Y),
            StepWeight::MinusAlphaBeta => {
                let (at, bt) = form.pair();
                -(MPoly::var(Var::Y) * at * bt).shift(Var::Q, h.saturating_sub(1))
            }
        }
    }

    /// Human-readable label with the height dependence made explicit.
    pub fn label(self, h: u32) -> String {
        match self {
            StepWeight::Split(i) => format!("q^{}-q^{}", i, i + 1),
            StepWeight::One => "1".into(),
            StepWeight::MinusQ => format!("-q^{}", h + 1),
            StepWeight::OnePlusY => "1+y".into(),
            StepWeight::QPow => format!("q^{h}"),
            StepWeight::AlphaBeta => format!("(at+y*bt)q^{h}"),
            StepWeight::Y => "y".into(),
            StepWeight::MinusAlphaBeta => format!("-y*at*bt*q^{}", h.saturating_sub(1)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub dir: Direction,
    pub weight: StepWeight,
}

impl Step {
    pub fn new(dir: Direction, weight: StepWeight) -> Self {
        Step { dir, weight }
    }
}

/// The weight systems of the path families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Split up steps; level `1+y` or `(at+y bt)q^h`; down `y` or `-y at bt q^(h-1)`.
    P,
    /// Up `1` or `-q^(h+1)`; level `1+y` or `q^h`; down `y`.
    R,
    /// As `R` with split up steps.
    RStar,
    /// Up `1` or `-q^(h+1)`; level `(at+y bt)q^h`; down `-y at bt q^(h-1)`.
    B,
    /// As `B` with split up steps.
    BStar,
}

impl Family {
    /// Every admissible step starting at height `h`.
    pub fn choices(self, h: u32) -> Vec<Step> {
        use Direction::*;
        use StepWeight::*;
        let splits = || (0..=h).map(|i| Step::new(Up, Split(i)));
        let mut out: Vec<Step> = match self {
            Family::P | Family::RStar | Family::BStar => splits().collect(),
            Family::R | Family::B => vec![Step::new(Up, One), Step::new(Up, MinusQ)],
        };
        match self {
            Family::P => out.extend([Step::new(Level, OnePlusY), Step::new(Level, AlphaBeta)]),
            Family::R | Family::RStar => {
                out.extend([Step::new(Level, OnePlusY), Step::new(Level, QPow)])
            }
            Family::B | Family::BStar => out.push(Step::new(Level, AlphaBeta)),
        }
        if h > 0 {
            match self {
                Family::P => out.extend([Step::new(Down, Y), Step::new(Down, MinusAlphaBeta)]),
                Family::R | Family::RStar => out.push(Step::new(Down, Y)),
                Family::B | Family::BStar => out.push(Step::new(Down, MinusAlphaBeta)),
            }
        }
        out
    }

    pub fn admits(self, step: Step, h: u32) -> bool {
        self.choices(h).contains(&step)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::P => "P",
            Family::R => "R",
            Family::RStar => "R*",
            Family::B => "B",
            Family::BStar => "B*",
        }
    }
}

/// A closed weighted Motzkin path of one family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedMotzkinPath {
    family: Family,
    steps: Vec<Step>,
}

#[derive(Serialize)]
struct StepRecord {
    d: &'static str,
    w: String,
}

impl WeightedMotzkinPath {
    pub fn new(family: Family, steps: Vec<Step>) -> Result<Self, PathError> {
        let mut h = 0u32;
        for (index, &step) in steps.iter().enumerate() {
            if !family.admits(step, h) {
                return Err(PathError::Inadmissible {
                    index,
                    step: format!("{:?}", step),
                    height: h,
                });
            }
            h = step.dir.apply(h);
        }
        if h != 0 {
            return Err(PathError::MalformedPath(format!("ends at height {h}")));
        }
        Ok(WeightedMotzkinPath { family, steps })
    }

    pub fn empty(family: Family) -> Self {
        WeightedMotzkinPath {
            family,
            steps: Vec::new(),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Starting heights of the steps.
    pub fn heights(&self) -> Vec<u32> {
        starting_heights(&self.steps, 0)
    }

    pub fn weight(&self, form: TildeForm) -> MPoly {
        self.steps
            .iter()
            .zip(self.heights())
            .map(|(s, h)| s.weight.resolve(h, form))
            .product()
    }

    /// Number of level steps weighted by a bare power of `q`.
    pub fn qpow_levels(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.weight == StepWeight::QPow)
            .count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let steps: Vec<StepRecord> = self
            .steps
            .iter()
            .zip(self.heights())
            .map(|(s, h)| StepRecord {
                d: s.dir.code(),
                w: s.weight.label(h),
            })
            .collect();
        serde_json::json!({ "steps": steps })
    }
}

/// Starting heights of a step sequence that begins at height `start`.
pub fn starting_heights(steps: &[Step], start: u32) -> Vec<u32> {
    let mut h = start;
    steps
        .iter()
        .map(|s| {
            let here = h;
            h = s.dir.apply(h);
            here
        })
        .collect()
}

/// All closed paths of a family with `len` steps, optionally with exactly
/// `qpow` level steps weighted by a power of `q`.
pub fn enumerate_family(
    family: Family,
    len: usize,
    qpow: Option<usize>,
) -> Vec<WeightedMotzkinPath> {
    fn go(
        family: Family,
        left: usize,
        h: u32,
        qleft: Option<usize>,
        prefix: &mut Vec<Step>,
        out: &mut Vec<WeightedMotzkinPath>,
    ) {
        if h as usize > left {
            return;
        }
        if left == 0 {
            if qleft.is_none_or(|q| q == 0) {
                out.push(WeightedMotzkinPath {
                    family,
                    steps: prefix.clone(),
                });
            }
            return;
        }
        for step in family.choices(h) {
            let mut next_q = qleft;
            if step.weight == StepWeight::QPow {
                match qleft {
                    Some(0) => continue,
                    Some(k) => next_q = Some(k - 1),
                    None => {}
                }
            }
            prefix.push(step);
            go(family, left - 1, step.dir.apply(h), next_q, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(family, len, 0, qpow, &mut Vec::with_capacity(len), &mut out);
    out
}

pub fn enumerate_pn(n: usize) -> Vec<WeightedMotzkinPath> {
    enumerate_family(Family::P, n, None)
}

pub fn enumerate_r_star(n: usize, k: usize) -> Vec<WeightedMotzkinPath> {
    enumerate_family(Family::RStar, n, Some(k))
}

pub fn enumerate_b_star(n: usize) -> Vec<WeightedMotzkinPath> {
    enumerate_family(Family::BStar, n, None)
}

/// Transfer-style weighted sum over a family, optionally restricted to exactly
/// `qpow` level steps weighted by a power of `q`.
pub fn family_sum(family: Family, len: usize, qpow: Option<usize>, form: TildeForm) -> MPoly {
    let mut states: BTreeMap<(u32, usize), MPoly> = BTreeMap::new();
    states.insert((0, 0), MPoly::one());
    for step_index in 0..len {
        let left_after = len - step_index - 1;
        let mut next: BTreeMap<(u32, usize), MPoly> = BTreeMap::new();
        for (&(h, qs), w) in &states {
            for step in family.choices(h) {
                let h2 = step.dir.apply(h);
                if h2 as usize > left_after {
                    continue;
                }
                let qs2 = qs + usize::from(step.weight == StepWeight::QPow);
                if qpow.is_some_and(|k| qs2 > k) {
                    continue;
                }
                let term = w * &step.weight.resolve(h, form);
                *next.entry((h2, qs2)).or_default() += &term;
            }
        }
        states = next;
    }
    states
        .into_iter()
        .filter(|((h, qs), _)| *h == 0 && qpow.is_none_or(|k| *qs == k))
        .map(|(_, w)| w)
        .sum()
}

/// Number of closed paths of a family, counting each weight tag as a
/// distinct object.
pub fn family_count(family: Family, len: usize, qpow: Option<usize>) -> BigInt {
    let mut states: HashMap<(u32, usize), BigInt> = HashMap::new();
    states.insert((0, 0), BigInt::one());
    for _ in 0..len {
        let mut next: HashMap<(u32, usize), BigInt> = HashMap::new();
        for (&(h, qs), c) in &states {
            for step in family.choices(h) {
                let qs2 = qs + usize::from(step.weight == StepWeight::QPow);
                if qpow.is_some_and(|k| qs2 > k) {
                    continue;
                }
                *next.entry((step.dir.apply(h), qs2)).or_default() += c;
            }
        }
        states = next;
    }
    states
        .into_iter()
        .filter(|((h, qs), _)| *h == 0 && qpow.is_none_or(|k| *qs == k))
        .map(|(_, c)| c)
        .sum()
}

/// `(1-q)^N` times the partition function, as the weighted sum over the
/// family `P`.
pub fn sum_pn(n: usize) -> MPoly {
    family_sum(Family::P, n, None, TildeForm::Expanded)
}

/// Partition function from the family `P`.
pub fn zn_paths(n: usize) -> MPoly {
    sum_pn(n)
        .div_pow_one_minus_q(n as u32)
        .expect("weighted sum over P is divisible by (1-q)^N")
}

/// Weighted sum over `R_{N,n}`; a polynomial in `y` and `q`.
pub fn sum_r(big_n: usize, n: usize) -> MPoly {
    family_sum(Family::R, big_n, Some(n), TildeForm::Expanded)
}

/// Weighted sum over `B_n` with the shifted parameters expanded in `a`, `b`.
pub fn sum_b(n: usize) -> MPoly {
    family_sum(Family::B, n, None, TildeForm::Expanded)
}

// ---------------------------------------------------------------------------
// Laguerre histories

/// One step of a Laguerre history: weight `y^delta q^level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HistoryStep {
    pub dir: Direction,
    pub delta: u8,
    pub level: u32,
}

impl HistoryStep {
    pub fn new(dir: Direction, delta: u8, level: u32) -> Self {
        HistoryStep { dir, delta, level }
    }

    /// Whether this step is allowed when starting at height `h`.
    pub fn admissible(&self, h: u32) -> bool {
        match (self.dir, self.delta) {
            (Direction::Up, 1) => self.level <= h,
            (Direction::Level, 1) => self.level <= h,
            (Direction::Level, 0) | (Direction::Down, 0) => self.level < h,
            _ => false,
        }
    }

    pub fn label(&self) -> String {
        if self.delta == 1 {
            format!("yq^{}", self.level)
        } else {
            format!("q^{}", self.level)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaguerreHistory {
    steps: Vec<HistoryStep>,
}

impl LaguerreHistory {
    pub fn new(steps: Vec<HistoryStep>) -> Result<Self, PathError> {
        let mut h = 0u32;
        for (index, s) in steps.iter().enumerate() {
            if !s.admissible(h) {
                return Err(PathError::Inadmissible {
                    index,
                    step: s.label(),
                    height: h,
                });
            }
            h = s.dir.apply(h);
        }
        if h != 0 {
            return Err(PathError::MalformedPath(format!("ends at height {h}")));
        }
        Ok(LaguerreHistory { steps })
    }

    pub fn steps(&self) -> &[HistoryStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn heights(&self) -> Vec<u32> {
        let mut h = 0;
        self.steps
            .iter()
            .map(|s| {
                let here = h;
                h = s.dir.apply(h);
                here
            })
            .collect()
    }

    /// Exponents `(y, q)` of the total weight.
    pub fn weight_exponents(&self) -> (u32, u32) {
        self.steps
            .iter()
            .fold((0, 0), |(y, q), s| (y + s.delta as u32, q + s.level))
    }

    pub fn weight(&self) -> MPoly {
        let (y, q) = self.weight_exponents();
        MPoly::monomial(BigInt::one(), Exponents::new(y, q, 0, 0))
    }

    /// Type 1 steps have weight `y q^h`.
    pub fn type1_flags(&self) -> Vec<bool> {
        self.steps
            .iter()
            .zip(self.heights())
            .map(|(s, h)| s.delta == 1 && s.level == h)
            .collect()
    }

    /// Type 2 steps have weight `q^(h-1)`.
    pub fn type2_flags(&self) -> Vec<bool> {
        self.steps
            .iter()
            .zip(self.heights())
            .map(|(s, h)| s.delta == 0 && h >= 1 && s.level == h - 1)
            .collect()
    }

    /// `(type 1 count, type 2 steps to the right of every type 1 step)`.
    pub fn boundary_counts(&self) -> (usize, usize) {
        let t1 = self.type1_flags();
        let t2 = self.type2_flags();
        let last_t1 = t1.iter().rposition(|&f| f);
        let late = t2
            .iter()
            .enumerate()
            .filter(|&(i, &f)| f && last_t1.is_none_or(|l| i > l))
            .count();
        (t1.iter().filter(|&&f| f).count(), late)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let steps: Vec<StepRecord> = self
            .steps
            .iter()
            .map(|s| StepRecord {
                d: s.dir.code(),
                w: s.label(),
            })
            .collect();
        serde_json::json!({ "steps": steps })
    }
}

/// Calls `visit` on every Laguerre history with `n` steps.
pub fn for_each_laguerre<F: FnMut(&LaguerreHistory)>(n: usize, mut visit: F) {
    fn go<F: FnMut(&LaguerreHistory)>(
        left: usize,
        h: u32,
        prefix: &mut Vec<HistoryStep>,
        visit: &mut F,
    ) {
        if h as usize > left {
            return;
        }
        if left == 0 {
            visit(&LaguerreHistory {
                steps: prefix.clone(),
            });
            return;
        }
        let mut options = Vec::new();
        for i in 0..=h {
            options.push(HistoryStep::new(Direction::Up, 1, i));
            options.push(HistoryStep::new(Direction::Level, 1, i));
        }
        for i in 0..h {
            options.push(HistoryStep::new(Direction::Level, 0, i));
            options.push(HistoryStep::new(Direction::Down, 0, i));
        }
        for s in options {
            prefix.push(s);
            go(left - 1, s.dir.apply(h), prefix, visit);
            prefix.pop();
        }
    }
    go(n, 0, &mut Vec::with_capacity(n), &mut visit);
}

pub fn enumerate_laguerre(n: usize) -> Vec<LaguerreHistory> {
    let mut out = Vec::new();
    for_each_laguerre(n, |h| out.push(h.clone()));
    out
}

pub fn history_weight(h: &LaguerreHistory) -> MPoly {
    h.weight()
}

/// Partition function from Laguerre histories with `N+1` steps: `b` marks
/// type 1 steps after the first, `a` marks type 2 steps right of every type 1
/// step; the resulting sum is `y` times the partition function.
pub fn zn_histories(n: usize) -> MPoly {
    let mut counts: HashMap<Exponents, u64> = HashMap::new();
    for_each_laguerre(n + 1, |h| {
        let (y, q) = h.weight_exponents();
        let (t1, late) = h.boundary_counts();
        *counts
            .entry(Exponents::new(y, q, late as u32, (t1 - 1) as u32))
            .or_default() += 1;
    });
    MPoly::from_counts(counts)
        .div_var_pow(Var::Y, 1)
        .expect("every history starts with a y-weighted step")
}

// ---------------------------------------------------------------------------
// J-fractions

type Coefficient = Box<dyn Fn(u32) -> MPoly + Send + Sync>;

/// Three-term recurrence data: level weight `b(h)` and `lambda(h)` for `h >= 1`.
pub struct MomentRecurrence {
    level: Coefficient,
    lambda: Coefficient,
}

impl MomentRecurrence {
    pub fn new<B, L>(level: B, lambda: L) -> Self
    where
        B: Fn(u32) -> MPoly + Send + Sync + 'static,
        L: Fn(u32) -> MPoly + Send + Sync + 'static,
    {
        MomentRecurrence {
            level: Box::new(level),
            lambda: Box::new(lambda),
        }
    }

    pub fn level(&self, h: u32) -> MPoly {
        (self.level)(h)
    }

    pub fn lambda(&self, h: u32) -> MPoly {
        (self.lambda)(h)
    }

    /// `2x Q_n = Q_(n+1) + (a+b) q^n Q_n + (1-q^n)(1-ab q^(n-1)) Q_(n-1)`,
    /// read as a recurrence in `x`; its moments are `2^N` times the moments of
    /// the original family. Here `a`, `b` are the recurrence's own parameters.
    pub fn al_salam_chihara() -> Self {
        MomentRecurrence::new(
            |h| (MPoly::var(Var::A) + MPoly::var(Var::B)).shift(Var::Q, h),
            |h| {
                let one = MPoly::one();
                let ab = MPoly::var(Var::A) * MPoly::var(Var::B);
                (&one - &MPoly::var_pow(Var::Q, h)) * (&one - &ab.shift(Var::Q, h - 1))
            },
        )
    }

    /// Shifted recurrence with the boundary parameters `(1-q)a - 1`, `(1-q)b - 1`
    /// in place of `a`, `b`; its moments are `(1-q)^N` times the partition
    /// function at `y = 1`.
    pub fn shifted_al_salam_chihara() -> Self {
        MomentRecurrence::new(
            |h| MPoly::constant(2) + (alpha_tilde() + beta_tilde()).shift(Var::Q, h),
            |h| {
                let one = MPoly::one();
                let ab = alpha_tilde() * beta_tilde();
                (&one - &MPoly::var_pow(Var::Q, h)) * (&one - &ab.shift(Var::Q, h - 1))
            },
        )
    }

    /// The tridiagonal transfer weights of the matrix representation, with
    /// `y` kept general; moments are `(1-q)^N` times the partition function.
    pub fn pasep() -> Self {
        MomentRecurrence::new(
            |h| {
                StepWeight::OnePlusY.resolve(h, TildeForm::Expanded)
                    + StepWeight::AlphaBeta.resolve(h, TildeForm::Expanded)
            },
            |h| {
                let one = MPoly::one();
                let up = &one - &MPoly::var_pow(Var::Q, h);
                let ab = alpha_tilde() * beta_tilde();
                up * MPoly::var(Var::Y) * (&one - &ab.shift(Var::Q, h - 1))
            },
        )
    }

    /// `lambda(h) = [h]_q^2`; the even moments are the q-secant numbers.
    pub fn q_secant() -> Self {
        MomentRecurrence::new(|_| MPoly::zero(), |h| q_int(h).pow(2))
    }

    /// `lambda(h) = [h]_q [h+1]_q`; the even moments are the q-tangent numbers.
    pub fn q_tangent() -> Self {
        MomentRecurrence::new(|_| MPoly::zero(), |h| q_int(h) * q_int(h + 1))
    }

    /// `lambda(h) = h`: moments of the Gaussian weight.
    pub fn gaussian() -> Self {
        MomentRecurrence::new(|_| MPoly::zero(), |h| MPoly::constant(h as i64))
    }
}

/// `N`th moment: weighted Motzkin paths with up weight 1, level weight
/// `b(h)` and down weight `lambda(h)` from height `h`.
pub fn jfraction_moment(rec: &MomentRecurrence, n: usize) -> MPoly {
    let top = n / 2 + 1;
    let levels: Vec<MPoly> = (0..=top as u32).map(|h| rec.level(h)).collect();
    let lambdas: Vec<MPoly> = (0..=top as u32)
        .map(|h| if h == 0 { MPoly::zero() } else { rec.lambda(h) })
        .collect();
    let mut row = vec![MPoly::one()];
    for step in 0..n {
        let left_after = n - step - 1;
        let mut next = vec![MPoly::zero(); row.len() + 1];
        for (h, w) in row.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            if h < left_after {
                next[h + 1] += w;
            }
            if h <= left_after {
                next[h] += &(w * &levels[h]);
            }
            if h > 0 && h - 1 <= left_after {
                next[h - 1] += &(w * &lambdas[h]);
            }
        }
        while next.len() > 1 && next.last().is_some_and(|p| p.is_zero()) {
            next.pop();
        }
        row = next;
    }
    row.swap_remove(0)
}

// ---------------------------------------------------------------------------
// Dyck paths

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyckPath {
    /// `true` for an up step.
    steps: Vec<bool>,
}

impl DyckPath {
    pub fn new(steps: Vec<bool>) -> Result<Self, PathError> {
        let mut h = 0i64;
        for (i, &up) in steps.iter().enumerate() {
            h += if up { 1 } else { -1 };
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
        Ok(DyckPath { steps })
    }

    pub fn steps(&self) -> &[bool] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Returns to height 0.
    pub fn returns(&self) -> usize {
        let mut h = 0i64;
        let mut count = 0;
        for &up in &self.steps {
            h += if up { 1 } else { -1 };
            if h == 0 {
                count += 1;
            }
        }
        count
    }

    /// Factors up-down.
    pub fn peaks(&self) -> usize {
        self.steps.windows(2).filter(|w| w[0] && !w[1]).count()
    }

    /// Peaks starting at height 0.
    pub fn hills(&self) -> usize {
        let mut h = 0i64;
        let mut count = 0;
        for w in self.steps.windows(2) {
            if h == 0 && w[0] && !w[1] {
                count += 1;
            }
            h += if w[0] { 1 } else { -1 };
        }
        count
    }
}

impl FromStr for DyckPath {
    type Err = PathError;

    /// Parses strings over `U` and `D`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps: Option<Vec<bool>> = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'U' => Some(true),
                'D' => Some(false),
                _ => None,
            })
            .collect();
        DyckPath::new(steps.ok_or_else(|| PathError::MalformedPath(s.to_string()))?)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &up in &self.steps {
            f.write_str(if up { "U" } else { "D" })?;
        }
        Ok(())
    }
}

/// All Dyck paths with `2 * half` steps.
pub fn dyck_paths(half: usize) -> Vec<DyckPath> {
    fn go(ups: usize, downs: usize, half: usize, prefix: &mut Vec<bool>, out: &mut Vec<DyckPath>) {
        if downs == half {
            out.push(DyckPath {
                steps: prefix.clone(),
            });
            return;
        }
        if ups < half {
            prefix.push(true);
            go(ups + 1, downs, half, prefix, out);
            prefix.pop();
        }
        if downs < ups {
            prefix.push(false);
            go(ups, downs + 1, half, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, half, &mut Vec::with_capacity(2 * half), &mut out);
    out
}

/// `F_n(y)`: sum of `y^peaks` over Dyck paths of length `2n` without a hill.
pub fn fine_poly_paths(n: usize) -> MPoly {
    let mut counts: HashMap<Exponents, u64> = HashMap::new();
    for d in dyck_paths(n) {
        if d.hills() == 0 {
            *counts
                .entry(Exponents::new(d.peaks() as u32, 0, 0, 0))
                .or_default() += 1;
        }
    }
    MPoly::from_counts(counts)
}

/// Sum of `b^ret(D1) a^ret(D2)` over pairs of Dyck paths of total length `2N`.
pub fn dyck_pair_sum_q0(n: usize) -> MPoly {
    let returns_by_half: Vec<BTreeMap<u32, u64>> = (0..=n)
        .map(|k| {
            let mut dist = BTreeMap::new();
            for d in dyck_paths(k) {
                *dist.entry(d.returns() as u32).or_default() += 1;
            }
            dist
        })
        .collect();
    let mut total = MPoly::zero();
    for k in 0..=n {
        for (&r1, &c1) in &returns_by_half[k] {
            for (&r2, &c2) in &returns_by_half[n - k] {
                total.add_term(Exponents::new(0, 0, r2, r1), BigInt::from(c1 * c2));
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: Direction, delta: u8, level: u32) -> HistoryStep {
        HistoryStep::new(d, delta, level)
    }

    use Direction::{Down as D, Level as L, Up as U};

    pub(crate) fn figure_fz_history() -> LaguerreHistory {
        LaguerreHistory::new(vec![
            h(U, 1, 0),
            h(U, 1, 1),
            h(L, 0, 0),
            h(U, 1, 0),
            h(L, 1, 3),
            h(D, 0, 2),
            h(D, 0, 0),
            h(L, 1, 1),
            h(D, 0, 0),
        ])
        .unwrap()
    }

    #[test]
    fn laguerre_counts() {
        assert_eq!(enumerate_laguerre(0).len(), 1);
        assert_eq!(enumerate_laguerre(2).len(), 2);
        let mut fact = 1;
        for n in 1..=7 {
            fact *= n;
            assert_eq!(enumerate_laguerre(n).len(), fact);
        }
    }

    #[test]
    fn history_weights() {
        assert_eq!(
            history_weight(&LaguerreHistory::new(vec![]).unwrap()),
            MPoly::one()
        );
        assert_eq!(figure_fz_history().weight().to_string(), "y^5*q^7");
        let ex_fv = LaguerreHistory::new(vec![
            h(U, 1, 0),
            h(L, 1, 1),
            h(U, 1, 1),
            h(U, 1, 2),
            h(L, 1, 1),
            h(D, 0, 1),
            h(L, 0, 1),
            h(D, 0, 0),
            h(D, 0, 0),
        ])
        .unwrap();
        assert_eq!(ex_fv.weight().to_string(), "y^5*q^7");
        assert_eq!(ex_fv.boundary_counts(), (4, 2));
    }

    #[test]
    fn history_validation() {
        assert!(LaguerreHistory::new(vec![h(D, 0, 0)]).is_err());
        assert!(LaguerreHistory::new(vec![h(U, 1, 1), h(D, 0, 0)]).is_err());
        assert!(LaguerreHistory::new(vec![h(U, 1, 0)]).is_err());
        assert!(LaguerreHistory::new(vec![h(L, 0, 0)]).is_err());
    }

    #[test]
    fn histories_small() {
        assert_eq!(zn_histories(0).to_string(), "1");
        assert_eq!(zn_histories(1).to_string(), "y*b + a");
        let z2: MPoly = "a^2 + y*a + y*b + y*a*b + y*q*a*b + y^2*b^2"
            .parse()
            .unwrap();
        assert_eq!(zn_histories(2), z2);
    }

    #[test]
    fn path_family_basics() {
        let p1 = enumerate_pn(1);
        assert_eq!(p1.len(), 2);
        let labels: Vec<String> = p1.iter().map(|p| p.to_json().to_string()).collect();
        assert!(labels.contains(&r#"{"steps":[{"d":"H","w":"1+y"}]}"#.to_string()));
        assert!(labels.contains(&r#"{"steps":[{"d":"H","w":"(at+y*bt)q^0"}]}"#.to_string()));
        let z2: MPoly = "a^2 + y*a + y*b + y*a*b + y*q*a*b + y^2*b^2"
            .parse()
            .unwrap();
        assert_eq!(zn_paths(2), z2);
        assert_eq!(zn_paths(0), MPoly::one());
        assert_eq!(enumerate_b_star(0).len(), 1);
        let at_plus = alpha_tilde() + MPoly::var(Var::Y) * beta_tilde();
        assert_eq!(sum_b(1), at_plus);
    }

    #[test]
    fn enumeration_matches_transfer_sums() {
        for n in 0..=4 {
            let brute: MPoly = enumerate_pn(n)
                .iter()
                .map(|p| p.weight(TildeForm::Expanded))
                .sum();
            assert_eq!(brute, sum_pn(n));
            assert_eq!(
                BigInt::from(enumerate_pn(n).len()),
                family_count(Family::P, n, None)
            );
            for k in 0..=n {
                let brute: MPoly = enumerate_family(Family::R, n, Some(k))
                    .iter()
                    .map(|p| p.weight(TildeForm::Expanded))
                    .sum();
                assert_eq!(brute, sum_r(n, k));
            }
        }
    }

    #[test]
    fn starred_families_refine() {
        for n in 0..=5 {
            for k in 0..=n {
                let starred = family_sum(Family::RStar, n, Some(k), TildeForm::Expanded);
                assert_eq!(starred, sum_r(n, k), "N={n} n={k}");
            }
            let starred = family_sum(Family::BStar, n, None, TildeForm::Expanded);
            assert_eq!(starred, sum_b(n));
        }
    }

    #[test]
    fn path_validation() {
        use StepWeight::*;
        let ok = WeightedMotzkinPath::new(Family::P, vec![Step::new(U, Split(0)), Step::new(D, Y)]);
        assert!(ok.is_ok());
        let bad =
            WeightedMotzkinPath::new(Family::P, vec![Step::new(U, Split(1)), Step::new(D, Y)]);
        assert!(bad.is_err());
        let open = WeightedMotzkinPath::new(Family::R, vec![Step::new(U, One)]);
        assert!(matches!(open, Err(PathError::MalformedPath(_))));
    }

    #[test]
    fn gaussian_moments() {
        let rec = MomentRecurrence::gaussian();
        let got: Vec<MPoly> = (0..=6).map(|n| jfraction_moment(&rec, n)).collect();
        let expected = [1, 0, 1, 0, 3, 0, 15];
        for (g, e) in got.iter().zip(expected) {
            assert_eq!(*g, MPoly::constant(e));
        }
    }

    #[test]
    fn moment_edge_cases() {
        let rec = MomentRecurrence::al_salam_chihara();
        assert_eq!(jfraction_moment(&rec, 0), MPoly::one());
        assert_eq!(jfraction_moment(&rec, 1).to_string(), "a + b");
    }

    #[test]
    fn pasep_recurrence_gives_path_sums() {
        let rec = MomentRecurrence::pasep();
        for n in 0..=5 {
            assert_eq!(jfraction_moment(&rec, n), sum_pn(n));
        }
    }

    #[test]
    fn dyck_statistics() {
        let d: DyckPath = "UDUD".parse().unwrap();
        assert_eq!((d.returns(), d.peaks()), (2, 2));
        assert_eq!(DyckPath::new(vec![]).unwrap().returns(), 0);
        assert!("UDD".parse::<DyckPath>().is_err());
        assert!("DU".parse::<DyckPath>().is_err());
        assert!("UX".parse::<DyckPath>().is_err());
        assert_eq!(dyck_paths(4).len(), 14);
    }

    #[test]
    fn fine_polynomials() {
        assert!(fine_poly_paths(1).is_zero());
        assert_eq!(fine_poly_paths(2).to_string(), "y");
        assert_eq!(fine_poly_paths(3).to_string(), "y^2 + y");
        assert_eq!(fine_poly_paths(4).to_string(), "y^3 + 4*y^2 + y");
        assert_eq!(fine_poly_paths(5).to_string(), "y^4 + 8*y^3 + 8*y^2 + y");
        assert_eq!(
            fine_poly_paths(6).to_string(),
            "y^5 + 13*y^4 + 29*y^3 + 13*y^2 + y"
        );
    }

    #[test]
    fn dyck_pairs() {
        assert_eq!(dyck_pair_sum_q0(0), MPoly::one());
        assert_eq!(dyck_pair_sum_q0(1).to_string(), "a + b");
    }
}

//! Matrix representation of the operator algebra: truncated tridiagonal
//! matrices, normal ordering of `(yD + E)^N`, the hatted-operator coefficients
//! and per-configuration stationary weights.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use thiserror::Error;

use crate::polyring::{alpha_tilde, beta_tilde, MPoly, PolyError, Var};
use crate::qtools::{binomial, q_binomial, touchard_m};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnsatzError {
    #[error("invalid letter {0:?} in word (expected D or E)")]
    BadLetter(char),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A finite top-left corner of an infinite matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedOperator {
    dim: usize,
    entries: Vec<Vec<MPoly>>,
}

impl TruncatedOperator {
    pub fn zero(dim: usize) -> Self {
        TruncatedOperator {
            dim,
            entries: vec![vec![MPoly::zero(); dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: MPoly) {
        self.entries[i][j] = value;
    }

    pub fn scale(&self, c: &MPoly) -> Self {
        TruncatedOperator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    pub fn is_tridiagonal(&self) -> bool {
        (0..self.dim)
            .all(|i| (0..self.dim).all(|j| i.abs_diff(j) <= 1 || self.entries[i][j].is_zero()))
    }

    /// Top-left `k x k` block.
    pub fn block(&self, k: usize) -> Self {
        TruncatedOperator {
            dim: k,
            entries: self.entries[..k]
                .iter()
                .map(|row| row[..k].to_vec())
                .collect(),
        }
    }

    /// Row vector `v` times this matrix.
    pub fn apply_left(&self, v: &[MPoly]) -> Vec<MPoly> {
        (0..self.dim)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .filter(|(i, x)| !x.is_zero() && !self.entries[*i][j].is_zero())
                    .map(|(i, x)| x * &self.entries[i][j])
                    .sum()
            })
            .collect()
    }
}

impl Add for &TruncatedOperator {
    type Output = TruncatedOperator;

    fn add(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        assert_eq!(self.dim, rhs.dim);
        TruncatedOperator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }
}

impl Mul for &TruncatedOperator {
    type Output = TruncatedOperator;

    fn mul(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        assert_eq!(self.dim, rhs.dim);
        let mut out = TruncatedOperator::zero(self.dim);
        for i in 0..self.dim {
            out.entries[i] = rhs.apply_left(&self.entries[i]);
        }
        out
    }
}

/// `(1-q)D` and `(1-q)E` on the first `dim` basis vectors, with the shifted
/// boundary parameters expanded in `a`, `b`, `q`.
pub fn build_scaled_de(dim: usize) -> (TruncatedOperator, TruncatedOperator) {
    let one = MPoly::one();
    let (at, bt) = (alpha_tilde(), beta_tilde());
    let atbt = &at * &bt;
    let mut d = TruncatedOperator::zero(dim);
    let mut e = TruncatedOperator::zero(dim);
    for i in 0..dim {
        let qi = i as u32;
        d.set(i, i, &one + &bt.shift(Var::Q, qi));
        e.set(i, i, &one + &at.shift(Var::Q, qi));
        if i + 1 < dim {
            d.set(i, i + 1, &one - &atbt.shift(Var::Q, qi));
            e.set(i + 1, i, &one - &MPoly::var_pow(Var::Q, qi + 1));
        }
    }
    (d, e)
}

/// Partition function as the corner entry of `(y D + E)^N`.
pub fn zn_matrix(n: usize) -> MPoly {
    let dim = n / 2 + 1;
    let (d, e) = build_scaled_de(dim);
    let t = &d.scale(&MPoly::var(Var::Y)) + &e;
    let mut row = vec![MPoly::zero(); dim];
    row[0] = MPoly::one();
    for _ in 0..n {
        row = t.apply_left(&row);
    }
    row.swap_remove(0)
        .div_pow_one_minus_q(n as u32)
        .expect("matrix corner is divisible by (1-q)^N")
}

/// A site configuration: `D` for an occupied site, `E` for an empty one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    D,
    E,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl FromStr for Word {
    type Err = AnsatzError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                'D' => Ok(Letter::D),
                'E' => Ok(Letter::E),
                other => Err(AnsatzError::BadLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::D => "D",
                Letter::E => "E",
            })?;
        }
        Ok(())
    }
}

/// Unnormalized stationary weight of a configuration, computed in dimension
/// `dim` (which must exceed half the word length for an exact answer).
pub fn state_weight_dim(word: &Word, dim: usize) -> Result<MPoly, AnsatzError> {
    let (d, e) = build_scaled_de(dim.max(1));
    let mut row = vec![MPoly::zero(); d.dim()];
    row[0] = MPoly::one();
    for l in &word.0 {
        row = match l {
            Letter::D => d.apply_left(&row),
            Letter::E => e.apply_left(&row),
        };
    }
    Ok(row
        .swap_remove(0)
        .div_pow_one_minus_q(word.0.len() as u32)?)
}

pub fn state_weight(word: &Word) -> Result<MPoly, AnsatzError> {
    state_weight_dim(word, word.0.len() + 1)
}

/// Finitely supported map `(i, j) -> coefficient of E^i D^j`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalFormCoeffs {
    coeffs: BTreeMap<(usize, usize), MPoly>,
}

impl NormalFormCoeffs {
    pub fn get(&self, i: usize, j: usize) -> MPoly {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &MPoly)> {
        self.coeffs.iter()
    }

    fn add(&mut self, key: (usize, usize), value: &MPoly) {
        if value.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(key).or_default();
        *slot += value;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// `sum c_{i,j} a^i b^j`.
    pub fn assemble(&self) -> MPoly {
        self.coeffs
            .iter()
            .map(|(&(i, j), c)| c.shift(Var::A, i as u32).shift(Var::B, j as u32))
            .sum()
    }
}

/// Normal form of a word under `DE -> qED + D + E`.
struct Rewriter {
    memo: HashMap<Vec<Letter>, NormalFormCoeffs>,
}

impl Rewriter {
    fn normal_form(&mut self, word: &[Letter]) -> NormalFormCoeffs {
        if let Some(hit) = self.memo.get(word) {
            return hit.clone();
        }
        let out = match word.windows(2).position(|w| w == [Letter::D, Letter::E]) {
            None => {
                let i = word.iter().filter(|&&l| l == Letter::E).count();
                let mut nf = NormalFormCoeffs::default();
                nf.add((i, word.len() - i), &MPoly::one());
                nf
            }
            Some(p) => {
                let mut swapped = word.to_vec();
                swapped.swap(p, p + 1);
                let mut nf = NormalFormCoeffs::default();
                for (k, c) in self.normal_form(&swapped).coeffs {
                    nf.add(k, &c.shift(Var::Q, 1));
                }
                for drop in [p + 1, p] {
                    let mut shorter = word.to_vec();
                    shorter.remove(drop);
                    for (k, c) in self.normal_form(&shorter).coeffs {
                        nf.add(k, &c);
                    }
                }
                nf
            }
        };
        self.memo.insert(word.to_vec(), out.clone());
        out
    }
}

/// `(yD + E)^N = sum c_{i,j} E^i D^j`, by rewriting each of the `2^N` words.
pub fn normal_order(n: usize) -> NormalFormCoeffs {
    let mut rw = Rewriter {
        memo: HashMap::new(),
    };
    let mut total = NormalFormCoeffs::default();
    for mask in 0u64..(1 << n) {
        let word: Vec<Letter> = (0..n)
            .map(|k| {
                if mask >> k & 1 == 1 {
                    Letter::D
                } else {
                    Letter::E
                }
            })
            .collect();
        let ds = mask.count_ones();
        for (k, c) in rw.normal_form(&word).coeffs {
            total.add(k, &c.shift(Var::Y, ds));
        }
    }
    total
}

pub fn zn_normal(n: usize) -> MPoly {
    normal_order(n).assemble()
}

/// Coefficients of the `k`th power of the hatted operator sum, by the
/// three-term recurrence in `k`.
pub fn hatted_coeffs(k: usize) -> NormalFormCoeffs {
    let mut cur = NormalFormCoeffs::default();
    cur.add((0, 0), &MPoly::one());
    let y = MPoly::var(Var::Y);
    for _ in 0..k {
        let mut next = NormalFormCoeffs::default();
        for (&(i, j), c) in &cur.coeffs {
            // d_{i,j} feeds d_{i,j+1}, d_{i+1,j} (times q^j) and d_{i,j-1}
            next.add((i, j + 1), c);
            next.add((i + 1, j), &c.shift(Var::Q, j as u32));
            if j >= 1 {
                let factor = &y * &(MPoly::one() - MPoly::var_pow(Var::Q, j as u32));
                next.add((i, j - 1), &(c * &factor));
            }
        }
        cur = next;
    }
    cur
}

/// `[i+j, i]_q M_{(k-i-j)/2, k}`, zero when `k - i - j` is odd or negative.
pub fn hatted_closed(k: usize, i: usize, j: usize) -> MPoly {
    let rest = k as i64 - (i + j) as i64;
    if rest < 0 || rest % 2 != 0 {
        return MPoly::zero();
    }
    q_binomial((i + j) as i64, i as i64) * touchard_m(rest / 2, k as i64)
}

/// Checks the two splitting identities used to derive the recurrence from
/// the closed form, for every `(i, j)` with `i + j <= k + 1`.
pub fn hatted_splitting_holds(k: usize) -> bool {
    let e = |i: i64, j: i64| {
        if i < 0 || j < 0 {
            MPoly::zero()
        } else {
            hatted_closed(k, i as usize, j as usize)
        }
    };
    let m = |twice: i64| {
        if twice % 2 != 0 {
            MPoly::zero()
        } else {
            touchard_m(twice / 2, k as i64)
        }
    };
    let y = MPoly::var(Var::Y);
    let kk = k as i64;
    for i in 0..=kk + 1 {
        for j in 0..=kk + 1 - i {
            let qb = q_binomial(i + j, i);
            let lhs = e(i, j - 1) + e(i - 1, j).shift(Var::Q, j as u32);
            if lhs != &qb * &m(kk - i - j + 1) {
                return false;
            }
            let lhs = &y * &(MPoly::one() - MPoly::var_pow(Var::Q, (j + 1) as u32)) * e(i, j + 1);
            let rhs = &y
                * &(MPoly::one() - MPoly::var_pow(Var::Q, (i + j + 1) as u32))
                * &qb
                * m(kk - i - j - 1);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Partition function from the hatted coefficients:
/// `(1-q)^N Z = sum_k C(N,k) (1+y)^(N-k) sum_{i,j} d_{i,j} at^i (y bt)^j`.
pub fn zn_hatted(n: usize) -> MPoly {
    let (at, bt) = (alpha_tilde(), beta_tilde());
    let ybt = MPoly::var(Var::Y) * bt;
    let one_plus_y = MPoly::one() + MPoly::var(Var::Y);
    let mut total = MPoly::zero();
    for k in 0..=n {
        let inner: MPoly = hatted_coeffs(k)
            .iter()
            .map(|(&(i, j), d)| d * &at.pow(i as u32) * ybt.pow(j as u32))
            .sum();
        total += &(inner * one_plus_y.pow((n - k) as u32)).scale(&binomial(n as i64, k as i64));
    }
    total
        .div_pow_one_minus_q(n as u32)
        .expect("hatted assembly is divisible by (1-q)^N")
}

//! Permutations in one-line notation, their statistics, and the two
//! permutation sums that produce the partition function.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::polyring::{Exponents, MPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a permutation of 1..{n}: {images:?}")]
    NotBijective { n: usize, images: Vec<usize> },
    #[error("cannot parse permutation '{0}'")]
    Parse(String),
}

/// A permutation of `{1..n}`; `images[i-1] = sigma(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotBijective { n, images });
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `sigma(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Reverse complement of the inverse: `sigma(i) = j` iff
    /// `tilde(sigma)(n+1-j) = n+1-i`.
    pub fn tilde(&self) -> Permutation {
        let n = self.len();
        let mut out = vec![0; n];
        for (i0, &j) in self.images.iter().enumerate() {
            out[n - j] = n - i0;
        }
        Permutation { images: out }
    }

    /// Right-to-left minimum flags by position (index 0 is position 1).
    pub fn rl_minima(&self) -> Vec<bool> {
        let mut best = usize::MAX;
        let mut flags = vec![false; self.len()];
        for i in (0..self.len()).rev() {
            if self.images[i] < best {
                best = self.images[i];
                flags[i] = true;
            }
        }
        flags
    }

    pub fn rl_maxima(&self) -> Vec<bool> {
        let mut best = 0;
        let mut flags = vec![false; self.len()];
        for i in (0..self.len()).rev() {
            if self.images[i] > best {
                best = self.images[i];
                flags[i] = true;
            }
        }
        flags
    }

    pub fn lr_maxima(&self) -> Vec<bool> {
        let mut best = 0;
        self.images
            .iter()
            .map(|&v| {
                let hit = v > best;
                best = best.max(v);
                hit
            })
            .collect()
    }

    /// Number of 31-2 occurrences in which position `j` plays the role of the 2.
    pub fn pattern_31_2_at(&self, j: usize) -> usize {
        let target = self.at(j);
        (1..j.saturating_sub(1))
            .filter(|&i| self.at(i + 1) < target && target < self.at(i))
            .count()
    }

    /// Whether `i` is an ascent, with `sigma(n+1) = n+1`.
    pub fn is_ascent(&self, i: usize) -> bool {
        i == self.len() || self.at(i) < self.at(i + 1)
    }

    pub fn stats(&self) -> PermStats {
        let n = self.len();
        let s = |i: usize| self.at(i);
        let wex = (1..=n).filter(|&i| s(i) >= i).count();
        let mut cr = 0;
        for i in 1..=n {
            for j in 1..=n {
                if (i < j && j <= s(i) && s(i) < s(j)) || (s(i) < s(j) && s(j) < i && i < j) {
                    cr += 1;
                }
            }
        }
        let asc = (1..=n).filter(|&i| self.is_ascent(i)).count();
        let p31_2 = (1..=n).map(|j| self.pattern_31_2_at(j)).sum();
        let rl_min = self.rl_minima();
        let rl_max = self.rl_maxima();
        let lr_max = self.lr_maxima();
        let (mut u, mut v, mut u_prime) = (0, 0, 0);
        if n > 0 {
            let first = s(1);
            let pos_of_max = self.images.iter().position(|&x| x == n).unwrap() + 1;
            for j in 1..=n {
                if rl_min[j - 1] && s(j) < first {
                    u += 1;
                }
                if lr_max[j - 1] && s(j) > first {
                    v += 1;
                }
                if rl_min[j - 1] && j > pos_of_max {
                    u_prime += 1;
                }
            }
        }
        PermStats {
            wex,
            cr,
            asc,
            p31_2,
            u,
            u_prime,
            v,
            s: rl_max.iter().filter(|&&f| f).count(),
            t: rl_min.iter().filter(|&&f| f).count(),
        }
    }

    /// Whether `sigma(1) > sigma(2) < sigma(3) > ...`.
    pub fn is_alternating(&self) -> bool {
        self.images
            .windows(2)
            .enumerate()
            .all(|(k, w)| if k % 2 == 0 { w[0] > w[1] } else { w[0] < w[1] })
    }
}

impl fmt::Display for Permutation {
    /// Digit string for `n <= 9`, comma separated above.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.images {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let images: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse().ok()).collect()
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect()
        };
        let images = images.ok_or_else(|| PermError::Parse(s.to_string()))?;
        Permutation::new(images)
    }
}

/// All statistics used by the permutation interpretations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PermStats {
    pub wex: usize,
    pub cr: usize,
    pub asc: usize,
    pub p31_2: usize,
    /// Special right-to-left minima: below `sigma(1)`.
    pub u: usize,
    /// Right-to-left minima located after the position of `n`.
    pub u_prime: usize,
    /// Special left-to-right maxima: above `sigma(1)`.
    pub v: usize,
    /// Right-to-left maxima.
    pub s: usize,
    /// Right-to-left minima.
    pub t: usize,
}

/// Lexicographic iterator over the permutations of `{1..n}`.
pub struct Permutations {
    current: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        self.current = next_lexicographic(&mut next).then_some(next);
        Some(Permutation { images: out })
    }
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn enumerate_permutations(n: usize) -> Permutations {
    Permutations {
        current: Some((1..=n).collect()),
    }
}

fn accumulate<F>(n: usize, mut exps: F) -> MPoly
where
    F: FnMut(&PermStats) -> Exponents,
{
    let mut counts: HashMap<Exponents, u64> = HashMap::new();
    for p in enumerate_permutations(n) {
        *counts.entry(exps(&p.stats())).or_default() += 1;
    }
    MPoly::from_counts(counts)
}

/// Sum of `a^u b^v y^(wex-1) q^cr` over permutations of size `N+1`.
pub fn zn_perm_wexcr(n: usize) -> MPoly {
    accumulate(n + 1, |s| {
        Exponents::new((s.wex - 1) as u32, s.cr as u32, s.u as u32, s.v as u32)
    })
}

/// Same sum with `u'` in place of `u`.
pub fn zn_perm_wexcr_uprime(n: usize) -> MPoly {
    accumulate(n + 1, |s| {
        Exponents::new(
            (s.wex - 1) as u32,
            s.cr as u32,
            s.u_prime as u32,
            s.v as u32,
        )
    })
}

/// Sum of `a^(s-1) b^(t-1) y^(asc-1) q^(31-2)` over permutations of size `N+1`.
pub fn zn_perm_asc312(n: usize) -> MPoly {
    accumulate(n + 1, |s| {
        Exponents::new(
            (s.asc - 1) as u32,
            s.p31_2 as u32,
            (s.s - 1) as u32,
            (s.t - 1) as u32,
        )
    })
}

/// Alternating permutations `sigma(1) > sigma(2) < sigma(3) > ...` of size `n`,
/// generated directly by backtracking.
pub fn alternating_permutations(n: usize) -> Vec<Permutation> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], n: usize, out: &mut Vec<Permutation>) {
        if prefix.len() == n {
            out.push(Permutation {
                images: prefix.clone(),
            });
            return;
        }
        for v in 1..=n {
            if used[v] {
                continue;
            }
            if let Some(&last) = prefix.last() {
                let must_descend = prefix.len() % 2 == 1;
                if must_descend != (v < last) {
                    continue;
                }
            }
            used[v] = true;
            prefix.push(v);
            extend(prefix, used, n, out);
            prefix.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    extend(
        &mut Vec::with_capacity(n),
        &mut vec![false; n + 1],
        n,
        &mut out,
    );
    out
}

/// `E_n(q)`: sum of `q^(31-2)` over alternating permutations of size `n`.
pub fn alternating_e(n: usize) -> MPoly {
    let mut counts: HashMap<Exponents, u64> = HashMap::new();
    for p in alternating_permutations(n) {
        *counts
            .entry(Exponents::new(0, p.stats().p31_2 as u32, 0, 0))
            .or_default() += 1;
    }
    MPoly::from_counts(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Point, Var};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_order_and_size() {
        assert_eq!(enumerate_permutations(0).count(), 1);
        let all: Vec<_> = enumerate_permutations(3).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0].to_string(), "123");
        assert_eq!(all[5].to_string(), "321");
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_permutations(7).count(), 5040);
    }

    #[test]
    fn statistics_of_examples() {
        let s = perm("672581493").stats();
        assert_eq!((s.wex, s.cr), (5, 7));
        let s = perm("4371265").stats();
        assert_eq!((s.asc, s.p31_2), (4, 3));
        let s = perm("812563974").stats();
        assert_eq!((s.asc, s.p31_2, s.s, s.t), (5, 7, 3, 4));
    }

    #[test]
    fn identity_statistics() {
        for n in 1..=7 {
            let s = Permutation::identity(n).stats();
            assert_eq!((s.wex, s.cr, s.asc, s.p31_2, s.t), (n, 0, n, 0, n));
            // only the last position is a right-to-left maximum
            assert_eq!(s.s, 1);
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!("12a".parse::<Permutation>().is_err());
        let long = Permutation::identity(11);
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,9,10,11");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
    }

    #[test]
    fn tilde_properties() {
        assert_eq!(Permutation::identity(5).tilde(), Permutation::identity(5));
        for n in 1..=7 {
            for p in enumerate_permutations(n) {
                let t = p.tilde();
                assert_eq!(t.tilde(), p);
                let (a, b) = (p.stats(), t.stats());
                assert_eq!(
                    (a.u, a.wex, a.v, a.cr),
                    (b.u_prime, b.wex, b.v, b.cr),
                    "{p}"
                );
            }
        }
    }

    #[test]
    fn permutation_sums_small() {
        assert_eq!(zn_perm_wexcr(0).to_string(), "1");
        assert_eq!(zn_perm_wexcr(1).to_string(), "y*b + a");
        assert_eq!(zn_perm_asc312(0).to_string(), "1");
        let z2: MPoly = "a^2 + y*a + y*b + y*a*b + y*q*a*b + y^2*b^2"
            .parse()
            .unwrap();
        assert_eq!(zn_perm_wexcr(2), z2);
        assert_eq!(zn_perm_asc312(2), z2);
    }

    #[test]
    fn permutation_sums_agree() {
        for n in 0..=6 {
            let wex = zn_perm_wexcr(n);
            assert_eq!(wex, zn_perm_asc312(n), "N={n}");
            assert_eq!(wex, zn_perm_wexcr_uprime(n), "N={n}");
            assert_eq!(wex.y_reflect(n as u32).unwrap(), wex);
        }
    }

    #[test]
    fn factorial_sanity() {
        let pt = Point::integers(1, 1, 1, 1);
        let mut fact = BigInt::from(1);
        for n in 0..=6usize {
            fact *= BigInt::from(n as u64 + 1);
            assert_eq!(zn_perm_wexcr(n).eval(&pt), fact.clone().into());
        }
    }

    #[test]
    fn alternating_numbers() {
        assert_eq!(alternating_e(1), MPoly::one());
        assert_eq!(alternating_e(2), MPoly::one());
        assert_eq!(alternating_e(3).to_string(), "q + 1");
        let names: Vec<String> = alternating_permutations(3)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(names, ["213", "312"]);
        // tangent and secant numbers, starting from the empty permutation
        let expected = [1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936];
        for (n, &e) in (0..=9).zip(expected.iter()) {
            let at_one = alternating_e(n).specialize(Var::Q, 1).constant_term();
            assert_eq!(at_one, BigInt::from(e), "n={n}");
            let brute = enumerate_permutations(n)
                .filter(|p| p.is_alternating())
                .count();
            assert_eq!(brute, e as usize);
        }
    }

    fn any_perm() -> impl Strategy<Value = Permutation> {
        (0usize..9)
            .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn stats_bounds(p in any_perm()) {
            let n = p.len();
            let s = p.stats();
            if n > 0 {
                prop_assert!(s.wex >= 1 && s.wex <= n);
                prop_assert!(s.asc >= 1 && s.asc <= n);
                prop_assert!(s.s >= 1 && s.t >= 1);
            }
            prop_assert_eq!(p.inverse().inverse(), p.clone());
            prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
        }
    }
}

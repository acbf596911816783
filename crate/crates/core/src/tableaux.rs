//! Permutation tableaux: exhaustive generation by size and the four
//! statistics feeding the tableau sum for the partition function.

use std::collections::HashMap;

use serde::Serialize;

use crate::polyring::{Exponents, MPoly};

/// A 0/1 filling of a left-justified Young diagram (English notation).
///
/// Row lengths are weakly decreasing and may end in zeros; the first row
/// spans every column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PermutationTableau {
    pub rows: Vec<usize>,
    pub fill: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableauStats {
    /// Ones in the first row.
    pub a: usize,
    /// Unrestricted rows.
    pub b: usize,
    /// Rows, including empty ones.
    pub r: usize,
    /// Superfluous ones (ones that are not the topmost of their column).
    pub w: usize,
}

impl PermutationTableau {
    pub fn columns(&self) -> usize {
        self.rows.first().copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.rows.len() + self.columns()
    }

    /// Checks the shape, the zero rule and the one-per-column rule.
    pub fn is_valid(&self) -> bool {
        if self.rows.is_empty() || self.rows.windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        if self.fill.len() != self.rows.len()
            || self.fill.iter().zip(&self.rows).any(|(f, &l)| f.len() != l)
        {
            return false;
        }
        for col in 0..self.columns() {
            let mut one_above = false;
            for (i, row) in self.fill.iter().enumerate() {
                let Some(&cell) = row.get(col) else { break };
                match cell {
                    1 => one_above = true,
                    0 => {
                        if one_above && self.fill[i][..col].contains(&1) {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
            if !one_above {
                return false;
            }
        }
        true
    }

    /// Whether some 0 in row `i` has a 1 above it.
    pub fn is_restricted_row(&self, i: usize) -> bool {
        (0..self.rows[i])
            .any(|col| self.fill[i][col] == 0 && (0..i).any(|above| self.fill[above][col] == 1))
    }

    pub fn stats(&self) -> TableauStats {
        let ones: usize = self
            .fill
            .iter()
            .map(|row| row.iter().filter(|&&c| c == 1).count())
            .sum();
        TableauStats {
            a: self.fill[0].iter().filter(|&&c| c == 1).count(),
            b: (0..self.rows.len())
                .filter(|&i| !self.is_restricted_row(i))
                .count(),
            r: self.rows.len(),
            w: ones - self.columns(),
        }
    }

    /// Weight `a^a b^(b-1) y^(r-1) q^w` used in the tableau sum.
    pub fn weight_exponents(&self) -> Exponents {
        let s = self.stats();
        Exponents::new((s.r - 1) as u32, s.w as u32, s.a as u32, (s.b - 1) as u32)
    }
}

fn shapes(size: usize) -> Vec<Vec<usize>> {
    fn tail(prefix: &mut Vec<usize>, left: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for len in (0..=max).rev() {
            prefix.push(len);
            tail(prefix, left - 1, len, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for r in 1..=size {
        let c = size - r;
        tail(&mut vec![c], r - 1, c, &mut out);
    }
    out
}

struct Filler<'a, F: FnMut(&PermutationTableau)> {
    rows: &'a [usize],
    fill: Vec<Vec<u8>>,
    one_left: Vec<bool>,
    visit: F,
}

impl<F: FnMut(&PermutationTableau)> Filler<'_, F> {
    fn column(&mut self, col: usize) {
        let columns = self.rows[0];
        if col == columns {
            let t = PermutationTableau {
                rows: self.rows.to_vec(),
                fill: self.fill.clone(),
            };
            (self.visit)(&t);
            return;
        }
        let height = self.rows.iter().take_while(|&&l| l > col).count();
        for mask in 1u32..(1 << height) {
            let mut one_above = false;
            let ok = (0..height).all(|i| {
                if mask >> i & 1 == 1 {
                    one_above = true;
                    true
                } else {
                    !(one_above && self.one_left[i])
                }
            });
            if !ok {
                continue;
            }
            let saved = self.one_left.clone();
            for i in 0..height {
                let bit = (mask >> i & 1) as u8;
                self.fill[i].push(bit);
                self.one_left[i] |= bit == 1;
            }
            self.column(col + 1);
            for row in self.fill.iter_mut().take(height) {
                row.pop();
            }
            self.one_left = saved;
        }
    }
}

/// Calls `visit` on every permutation tableau of the given size.
pub fn for_each_tableau<F: FnMut(&PermutationTableau)>(size: usize, visit: F) {
    let mut visit = visit;
    for shape in shapes(size) {
        let mut filler = Filler {
            rows: &shape,
            fill: vec![Vec::new(); shape.len()],
            one_left: vec![false; shape.len()],
            visit: &mut visit,
        };
        filler.column(0);
    }
}

pub fn enumerate_tableaux(size: usize) -> Vec<PermutationTableau> {
    let mut out = Vec::new();
    for_each_tableau(size, |t| out.push(t.clone()));
    out
}

fn weighted_sum<P: Fn(&PermutationTableau) -> bool>(size: usize, keep: P) -> MPoly {
    let mut counts: HashMap<Exponents, u64> = HashMap::new();
    for_each_tableau(size, |t| {
        if keep(t) {
            *counts.entry(t.weight_exponents()).or_default() += 1;
        }
    });
    MPoly::from_counts(counts)
}

/// Tableau sum over size `N+1`.
pub fn zn_tableaux(n: usize) -> MPoly {
    weighted_sum(n + 1, |_| true)
}

/// The part of the tableau sum of size `n+1` with total degree `n` in `a` and
/// `b`: tableaux whose first row is all ones and whose rows are all unrestricted.
pub fn top_degree_check(n: usize) -> MPoly {
    weighted_sum(n + 1, |t| {
        let s = t.stats();
        s.a + s.b == n + 1
    })
}

/// `sum q^w` over tableaux of the given size with `rows` rows and no
/// restricted row.
pub fn unrestricted_gf(size: usize, rows: usize) -> MPoly {
    let mut counts: HashMap<Exponents, u64> = HashMap::new();
    for_each_tableau(size, |t| {
        let s = t.stats();
        if s.r == rows && s.b == rows {
            *counts
                .entry(Exponents::new(0, s.w as u32, 0, 0))
                .or_default() += 1;
        }
    });
    MPoly::from_counts(counts)
}

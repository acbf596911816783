//! q-integers, Gaussian binomials, ordinary binomials with the out-of-range
//! zero convention, and the ballot-type counting kernels built from them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::polyring::{Exponents, MPoly, Rational, Var};

/// `[k]_q = 1 + q + ... + q^(k-1)`, with `[0]_q = 0`.
pub fn q_int(k: u32) -> MPoly {
    MPoly::from_q_coeffs(&vec![BigInt::one(); k as usize])
}

/// Coefficient vector (index = power of q) of the Gaussian binomial.
///
/// Zero vector unless `0 <= k <= n`.
pub fn q_binomial_coeffs(n: i64, k: i64) -> Vec<BigInt> {
    if n < 0 || k < 0 || k > n {
        return Vec::new();
    }
    let k = k.min(n - k) as usize;
    let n = n as usize;
    // row[j] holds [m, j]_q for the current m.
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for m in 1..=n {
        let top = m.min(k);
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(top + 1);
        for j in 0..=top {
            // [m, j] = [m-1, j-1] + q^j [m-1, j]
            let mut c: Vec<BigInt> = if j >= 1 {
                row[j - 1].clone()
            } else {
                Vec::new()
            };
            if j < row.len() {
                let shifted = &row[j];
                if c.len() < shifted.len() + j {
                    c.resize(shifted.len() + j, BigInt::zero());
                }
                for (d, x) in shifted.iter().enumerate() {
                    c[d + j] += x;
                }
            }
            next.push(c);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// Gaussian binomial `[n, k]_q` as a polynomial in `q`; zero outside `0 <= k <= n`.
pub fn q_binomial(n: i64, k: i64) -> MPoly {
    MPoly::from_q_coeffs(&q_binomial_coeffs(n, k))
}

/// Ordinary binomial coefficient, zero whenever `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `(x; q)_k = prod_{i<k} (1 - x q^i)` evaluated exactly.
pub fn q_pochhammer_eval(x: &Rational, q: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut power = x.clone();
    for _ in 0..k {
        acc *= Rational::one() - &power;
        power *= q;
    }
    acc
}

/// `y^exp * c` as a polynomial.
fn y_term(exp: u32, c: BigInt) -> MPoly {
    MPoly::monomial(c, Exponents::default().with(Var::Y, exp))
}

/// Weighted count of Motzkin prefixes of length `len` ending at height `h`,
/// with weight `1+y` per level step and `y` per down step.
pub fn motzkin_prefix_gf(len: u32, h: u32) -> MPoly {
    if h > len {
        return MPoly::zero();
    }
    let (n, h) = (len as i64, h as i64);
    let mut out = MPoly::zero();
    for j in 0..=(n - h) {
        let c = binomial(n, j) * binomial(n, h + j) - binomial(n, j - 1) * binomial(n, h + j + 1);
        out += &y_term(j as u32, c);
    }
    out
}

/// Weighted count of Dyck prefixes of length `len` ending at height `h`, with
/// weight `y` per down step. Zero when the parity or range is wrong.
pub fn dyck_prefix_weighted(len: u32, h: u32) -> MPoly {
    if h > len || (len - h) % 2 == 1 {
        return MPoly::zero();
    }
    let downs = ((len - h) / 2) as i64;
    let n = len as i64;
    y_term(downs as u32, binomial(n, downs) - binomial(n, downs - 1))
}

/// Touchard-Riordan kernel
/// `y^l * sum_u (-1)^u q^(u(u+1)/2) [k-2l+u, u]_q (C(k, l-u) - C(k, l-u-1))`.
///
/// Zero when `l < 0` or `2l > k`.
pub fn touchard_m(l: i64, k: i64) -> MPoly {
    if l < 0 || 2 * l > k {
        return MPoly::zero();
    }
    let mut sum = MPoly::zero();
    for u in 0..=l {
        let ballot = binomial(k, l - u) - binomial(k, l - u - 1);
        if ballot.is_zero() {
            continue;
        }
        let sign = if u % 2 == 0 { 1 } else { -1 };
        let term = q_binomial(k - 2 * l + u, u)
            .shift(Var::Q, (u * (u + 1) / 2) as u32)
            .scale(&(ballot * sign));
        sum += &term;
    }
    sum.shift(Var::Y, l as u32)
}

/// `M_{(k-n+1)/2,k} + y(1-q^(n+1)) M_{(k-n-1)/2,k} = M_{(k-n+1)/2,k+1}` for
/// every `n <= k` with `k - n` odd.
pub fn touchard_recurrence_holds(k: i64) -> bool {
    let y = MPoly::var(Var::Y);
    (0..=k).filter(|n| (k - n) % 2 == 1).all(|n| {
        let (hi, lo) = ((k - n + 1) / 2, (k - n - 1) / 2);
        let factor = &y * &(MPoly::one() - MPoly::var_pow(Var::Q, (n + 1) as u32));
        touchard_m(hi, k) + factor * touchard_m(lo, k) == touchard_m(hi, k + 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Point;

    fn q_at(p: &MPoly, q: i64) -> BigInt {
        p.specialize(Var::Q, q).constant_term()
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_int(0), MPoly::zero());
        assert_eq!(q_int(2).to_string(), "q + 1");
        for k in 0..=20 {
            assert_eq!(q_at(&q_int(k), 1), BigInt::from(k));
        }
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(q_binomial(7, 0), MPoly::one());
        assert_eq!(q_binomial(4, 2).to_string(), "q^4 + q^3 + 2*q^2 + q + 1");
        // product form (1-q^3)(1-q^4) / ((1-q)(1-q^2))
        let q = MPoly::var(Var::Q);
        let one = MPoly::one();
        let num = (&one - &q.pow(3)) * (&one - &q.pow(4));
        let den_rest = &one + &q;
        let via_product = num.div_pow_one_minus_q(2).unwrap();
        assert_eq!(&q_binomial(4, 2) * &den_rest, via_product);
        for n in 0..=12 {
            for k in 0..=n {
                assert_eq!(q_at(&q_binomial(n, k), 1), binomial(n, k));
                assert_eq!(q_binomial(n, k), q_binomial(n, n - k));
            }
        }
        assert!(q_binomial(3, 4).is_zero());
        assert!(q_binomial(3, -1).is_zero());
    }

    #[test]
    fn ordinary_binomials() {
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(6, 7), BigInt::zero());
        assert_eq!(binomial(30, 15), BigInt::from(155_117_520u64));
    }

    #[test]
    fn pochhammer() {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(q_pochhammer_eval(&r(3, 7), &r(2, 5), 0), r(1, 1));
        assert_eq!(q_pochhammer_eval(&r(1, 1), &r(2, 5), 3), r(0, 1));
        assert_eq!(q_pochhammer_eval(&r(1, 2), &r(1, 3), 2), r(5, 12));
    }

    /// Brute-force weighted prefix sums, counted step by step.
    fn prefixes(len: u32, allow_level: bool) -> Vec<MPoly> {
        let mut by_height = vec![MPoly::one()];
        let level: MPoly = "1 + y".parse().unwrap();
        let down = MPoly::var(Var::Y);
        for _ in 0..len {
            let mut next = vec![MPoly::zero(); by_height.len() + 1];
            for (h, w) in by_height.iter().enumerate() {
                next[h + 1] += w;
                if allow_level {
                    next[h] += &(w * &level);
                }
                if h > 0 {
                    next[h - 1] += &(w * &down);
                }
            }
            by_height = next;
        }
        by_height
    }

    #[test]
    fn motzkin_prefixes() {
        assert_eq!(motzkin_prefix_gf(1, 1), MPoly::one());
        assert_eq!(motzkin_prefix_gf(1, 0).to_string(), "y + 1");
        for len in 0..=7 {
            let brute = prefixes(len, true);
            for h in 0..=len {
                assert_eq!(
                    motzkin_prefix_gf(len, h),
                    brute[h as usize],
                    "len={len} h={h}"
                );
            }
        }
    }

    #[test]
    fn dyck_prefixes() {
        assert_eq!(dyck_prefix_weighted(5, 5), MPoly::one());
        assert_eq!(dyck_prefix_weighted(2, 0).to_string(), "y");
        assert!(dyck_prefix_weighted(3, 0).is_zero());
        for len in 0..=14 {
            let brute = prefixes(len, false);
            for h in 0..=len {
                assert_eq!(
                    dyck_prefix_weighted(len, h),
                    brute[h as usize],
                    "len={len} h={h}"
                );
            }
        }
    }

    #[test]
    fn touchard_kernel() {
        for k in 0..10 {
            assert_eq!(touchard_m(0, k), MPoly::one());
        }
        assert_eq!(touchard_m(1, 2).to_string(), "-y*q + y");
        assert!(touchard_m(2, 3).is_zero());
        assert!(touchard_m(-1, 3).is_zero());
        let pt = Point::integers(1, 1, 1, 0);
        // q = 0 leaves only the u = 0 ballot number.
        assert_eq!(touchard_m(2, 6).eval(&pt), Rational::from_integer(9.into()));
    }

    #[test]
    fn touchard_three_term_recurrence() {
        for k in 0..=10 {
            assert!(touchard_recurrence_holds(k), "k={k}");
        }
    }
}

//! Independent reference computations: textbook formulas, no shared code
//! with the library beyond the `BigInt` type.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Recurrence parameters, keyed by short id.
pub const SECOND_KIND: [(&str, i64, i64, i64); 6] = [
    ("A", 7, -8, 2),
    ("B", 9, 27, 3),
    ("C", 10, 9, 3),
    ("D", 11, -1, 3),
    ("E", 12, 32, 4),
    ("F", 17, 72, 6),
];

pub const FIRST_KIND: [(&str, i64, i64, i64, i64); 9] = [
    ("delta", 7, 3, 81, 0),
    ("eta", 11, 5, 125, 0),
    ("alpha", 10, 4, 64, 0),
    ("epsilon", 12, 4, 16, 0),
    ("zeta", 9, 3, -27, 0),
    ("gamma", 17, 5, 1, 0),
    ("s7", 13, 4, -27, 3),
    ("s10", 6, 2, -64, 4),
    ("s18", 14, 6, 192, -12),
];

pub fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `m (m-1) ... (m-r+1) / r!`; with `zero_neg`, zero whenever `m < 0`.
pub fn gbinom(m: i64, r: i64, zero_neg: bool) -> BigInt {
    if r < 0 || (zero_neg && m < 0) {
        return BigInt::zero();
    }
    let num = (0..r).fold(BigInt::one(), |acc, i| acc * (m - i));
    let (q, rem) = num.div_rem(&factorial(r));
    assert!(rem.is_zero());
    q
}

/// Terms of the three-term recurrence with `u_{-1} = 0`, `u_0 = 1`.
pub fn recurrence_terms(id: &str, n_max: usize) -> Vec<BigInt> {
    let mut u = vec![BigInt::one()];
    let mut prev = BigInt::zero();
    for n in 0..n_max as i64 {
        let cur = u.last().unwrap().clone();
        let (num, den) = if let Some(&(_, a, b, l)) = SECOND_KIND.iter().find(|p| p.0 == id) {
            (
                BigInt::from(a * n * n + a * n + l) * &cur - BigInt::from(b * n * n) * &prev,
                BigInt::from((n + 1) * (n + 1)),
            )
        } else {
            let &(_, a, b, c, d) = FIRST_KIND.iter().find(|p| p.0 == id).expect("known id");
            (
                BigInt::from((2 * n + 1) * (a * n * n + a * n + b)) * &cur
                    - BigInt::from(n * (c * n * n + d)) * &prev,
                BigInt::from((n + 1) * (n + 1) * (n + 1)),
            )
        };
        let (q, rem) = num.div_rem(&den);
        assert!(rem.is_zero(), "{id}: non-integral term at {}", n + 1);
        prev = cur;
        u.push(q);
    }
    u
}

fn sign(k: i64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `sum_k (-1)^k C(n,k)^3 (C(4n-5k-1,3n) + C(4n-5k,3n))`, no pinning of `n = 0`.
pub fn eta_sum(n: i64, zero_neg: bool) -> BigInt {
    (0..=n)
        .map(|k| {
            let c = gbinom(n, k, false);
            BigInt::from(sign(k))
                * &c
                * &c
                * &c
                * (gbinom(4 * n - 5 * k - 1, 3 * n, zero_neg)
                    + gbinom(4 * n - 5 * k, 3 * n, zero_neg))
        })
        .sum()
}

/// `sum_k (-1)^k C(n,k) C(2k,k) C(2n-2k,n-k) (C(2n-3k-1,n) + C(2n-3k,n))`.
pub fn s18_sum(n: i64, zero_neg: bool) -> BigInt {
    (0..=n)
        .map(|k| {
            BigInt::from(sign(k))
                * gbinom(n, k, false)
                * gbinom(2 * k, k, false)
                * gbinom(2 * n - 2 * k, n - k, false)
                * (gbinom(2 * n - 3 * k - 1, n, zero_neg) + gbinom(2 * n - 3 * k, n, zero_neg))
        })
        .sum()
}

/// Closed-form reading of a sequence: the recurrence for thirteen ids, and
/// `1, 2u_1, 2u_2, ...` for `eta`/`s18`.
pub fn canonical_terms(id: &str, n_max: usize) -> Vec<BigInt> {
    let mut u = recurrence_terms(id, n_max);
    if id == "eta" || id == "s18" {
        for t in u.iter_mut().skip(1) {
            *t *= 2;
        }
    }
    u
}

/// `v_n(x) = sum_k C(n,k) (-x)^(n-k) u_k` by direct summation.
pub fn transform(u: &[BigInt], x: i64, n_max: usize) -> Vec<BigInt> {
    let mx = BigInt::from(-x);
    (0..=n_max)
        .map(|n| {
            let mut row = BigInt::one();
            let mut sum = BigInt::zero();
            for k in (0..=n).rev() {
                // row = C(n, k) * (-x)^(n-k), walking k downward
                sum += &row * &u[k];
                row = row * &mx * k / (n - k + 1);
            }
            sum
        })
        .collect()
}

pub fn all_ids() -> Vec<&'static str> {
    SECOND_KIND
        .iter()
        .map(|p| p.0)
        .chain(FIRST_KIND.iter().map(|p| p.0))
        .collect()
}

pub fn depth(id: &str) -> usize {
    if SECOND_KIND.iter().any(|p| p.0 == id) {
        3
    } else {
        4
    }
}

use std::borrow::Cow;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BinomialConvention, SequenceId};
use crate::exact_math::binom;

/// Rows beyond this are computed on demand instead of stored.
const MAX_STORED_ROW: usize = 1200;

/// Half Pascal triangle `C(m, r)`, `r <= m / 2`, for `m <= max_top`.
struct Binomials {
    rows: Vec<Vec<BigInt>>,
}

impl Binomials {
    fn new(max_top: usize) -> Self {
        let max_top = max_top.min(MAX_STORED_ROW);
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_top + 1);
        rows.push(vec![BigInt::one()]);
        for m in 1..=max_top {
            let prev = &rows[m - 1];
            let mut row = Vec::with_capacity(m / 2 + 1);
            row.push(BigInt::one());
            for r in 1..=m / 2 {
                // C(m-1, r) lives at index min(r, m-1-r) of the previous half row
                let right = &prev[r.min(m - 1 - r)];
                row.push(&prev[r - 1] + right);
            }
            rows.push(row);
        }
        Binomials { rows }
    }

    /// Generalized `C(m, r)`.
    fn get(&self, m: i64, r: i64) -> Cow<'_, BigInt> {
        if r < 0 {
            return Cow::Owned(BigInt::zero());
        }
        if m < 0 {
            // upper negation: C(m, r) = (-1)^r C(r - m - 1, r)
            let v = self.get(r - m - 1, r);
            return if r % 2 == 1 {
                Cow::Owned(-v.into_owned())
            } else {
                v
            };
        }
        if r > m {
            return Cow::Owned(BigInt::zero());
        }
        let r = r.min(m - r) as usize;
        match self.rows.get(m as usize) {
            Some(row) => Cow::Borrowed(&row[r]),
            None => Cow::Owned(binom(&BigInt::from(m), r as i64)),
        }
    }
}

/// Evaluates the closed forms for indices up to a fixed bound.
pub struct FormulaEvaluator {
    id: SequenceId,
    convention: BinomialConvention,
    binomials: Binomials,
    /// Franel numbers, used by sequence F.
    franel: Vec<BigInt>,
}

impl FormulaEvaluator {
    pub fn new(id: SequenceId, convention: BinomialConvention, n_max: usize) -> Self {
        let top = match id {
            SequenceId::Eta => 4 * n_max + 1,
            _ => 2 * n_max + 1,
        };
        let binomials = Binomials::new(top);
        let franel = if id == SequenceId::F {
            (0..=n_max).map(|k| franel(&binomials, k as i64)).collect()
        } else {
            Vec::new()
        };
        FormulaEvaluator {
            id,
            convention,
            binomials,
            franel,
        }
    }

    fn c(&self, m: i64, r: i64) -> Cow<'_, BigInt> {
        if m < 0 && self.convention == BinomialConvention::ZeroOnNegativeTop {
            Cow::Owned(BigInt::zero())
        } else {
            self.binomials.get(m, r)
        }
    }

    /// `u_n`; panics for sequence F if `n` exceeds the bound given to `new`.
    pub fn term(&self, n: usize) -> BigInt {
        if n == 0 {
            return BigInt::one();
        }
        let n = n as i64;
        let b = |m: i64, r: i64| self.binomials.get(m, r);
        let mut sum = BigInt::zero();
        match self.id {
            SequenceId::A => return franel(&self.binomials, n),
            SequenceId::B => {
                for k in 0..=n / 3 {
                    let t = pow(3, n - 3 * k) * &*b(n, 3 * k) * &*b(3 * k, 2 * k) * &*b(2 * k, k);
                    add_signed(&mut sum, t, k);
                }
            }
            SequenceId::C => {
                for k in 0..=n {
                    let nk = b(n, k);
                    sum += &*nk * &*nk * &*b(2 * k, k);
                }
            }
            SequenceId::D => {
                for k in 0..=n {
                    let nk = b(n, k);
                    sum += &*nk * &*nk * &*b(n + k, k);
                }
            }
            SequenceId::E => {
                for k in 0..=n / 2 {
                    let ck = b(2 * k, k);
                    sum += pow(4, n - 2 * k) * &*b(n, 2 * k) * &*ck * &*ck;
                }
            }
            SequenceId::F => {
                for k in 0..=n {
                    let t = pow(8, n - k) * &*b(n, k) * &self.franel[k as usize];
                    add_signed(&mut sum, t, k);
                }
            }
            SequenceId::Delta => {
                for k in 0..=n / 3 {
                    let t = pow(3, n - 3 * k)
                        * &*b(n, 3 * k)
                        * &*b(n + k, k)
                        * &*b(3 * k, 2 * k)
                        * &*b(2 * k, k);
                    add_signed(&mut sum, t, k);
                }
            }
            SequenceId::Eta => {
                for k in 0..=n {
                    let nk = b(n, k);
                    let pair = &*self.c(4 * n - 5 * k - 1, 3 * n) + &*self.c(4 * n - 5 * k, 3 * n);
                    if pair.is_zero() {
                        continue;
                    }
                    add_signed(&mut sum, &*nk * &*nk * &*nk * pair, k);
                }
            }
            SequenceId::AlphaSeq => {
                for k in 0..=n {
                    let nk = b(n, k);
                    sum += &*nk * &*nk * &*b(2 * k, k) * &*b(2 * n - 2 * k, n - k);
                }
            }
            SequenceId::Epsilon => {
                for k in (n + 1) / 2..=n {
                    let t = &*b(n, k) * &*b(2 * k, n);
                    sum += &t * &t;
                }
            }
            SequenceId::Zeta => {
                for k in (n + 1) / 2..=n {
                    let mut inner = BigInt::zero();
                    for l in (n - k).max(0)..=k {
                        inner += &*b(n, l) * &*b(k, l) * &*b(k + l, n);
                    }
                    let nk = b(n, k);
                    sum += &*nk * &*nk * inner;
                }
            }
            SequenceId::Gamma => {
                for k in 0..=n {
                    let t = &*b(n, k) * &*b(n + k, k);
                    sum += &t * &t;
                }
            }
            SequenceId::S7 => {
                for k in (n + 1) / 2..=n {
                    let nk = b(n, k);
                    sum += &*nk * &*nk * &*b(n + k, k) * &*b(2 * k, n);
                }
            }
            SequenceId::S10 => {
                for k in 0..=n {
                    let sq = &*b(n, k) * &*b(n, k);
                    sum += &sq * &sq;
                }
            }
            SequenceId::S18 => {
                for k in 0..=n {
                    let pair = &*self.c(2 * n - 3 * k - 1, n) + &*self.c(2 * n - 3 * k, n);
                    if pair.is_zero() {
                        continue;
                    }
                    let t = &*b(n, k) * &*b(2 * k, k) * &*b(2 * n - 2 * k, n - k) * pair;
                    add_signed(&mut sum, t, k);
                }
            }
        }
        sum
    }
}

fn franel(binomials: &Binomials, n: i64) -> BigInt {
    (0..=n)
        .map(|k| {
            let c = binomials.get(n, k);
            &*c * &*c * &*c
        })
        .sum()
}

fn pow(base: u32, exp: i64) -> BigInt {
    BigInt::from(base).pow(exp as u32)
}

fn add_signed(sum: &mut BigInt, term: BigInt, k: i64) {
    if k % 2 == 0 {
        *sum += term;
    } else {
        *sum -= term;
    }
}

//! Big-integer helpers shared by every other module: binomial coefficients
//! under both conventions, gcds, small factorizations, radicals.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer; every value in the crate is one of these.
pub type Integer = BigInt;

/// Generalized binomial coefficient `m (m-1) ... (m-r+1) / r!`.
///
/// Zero for `r < 0`. For `0 <= m < r` the falling factorial passes through
/// zero, and for negative `m` the value is the (nonzero) generalized one,
/// e.g. `binom(-3, 2) = 6`.
pub fn binom(m: &BigInt, r: i64) -> BigInt {
    if r < 0 {
        return BigInt::zero();
    }
    let mut r = r;
    if !m.is_negative() {
        if m < &BigInt::from(r) {
            return BigInt::zero();
        }
        // symmetry keeps the loop short for r close to m
        if let Some(m) = m.to_i64() {
            r = r.min(m - r);
        }
    }
    let mut acc = BigInt::one();
    let mut top = m.clone();
    for i in 0..r {
        // acc = C(m, i) here; C(m, i + 1) = C(m, i) (m - i) / (i + 1) exactly
        acc *= &top;
        acc /= i + 1;
        top -= 1;
    }
    acc
}

/// `binom` with small arguments.
pub fn binom_i64(m: i64, r: i64) -> BigInt {
    binom(&BigInt::from(m), r)
}

/// Binomial coefficient that vanishes whenever the upper argument is negative.
pub fn binom_zero_neg(m: &BigInt, r: i64) -> BigInt {
    if m.is_negative() {
        BigInt::zero()
    } else {
        binom(m, r)
    }
}

/// Greatest common divisor of the absolute values; 0 for an empty or all-zero input.
pub fn gcd_all<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigInt>,
{
    let mut g = BigInt::zero();
    for v in values {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Non-negative remainder of `value` modulo a positive `modulus`.
pub fn residue(value: &BigInt, modulus: &BigInt) -> Result<BigInt> {
    if !modulus.is_positive() {
        return Err(Error::BadModulus(modulus.clone()));
    }
    Ok(value.mod_floor(modulus))
}

/// `a ≡ b (mod modulus)` for a positive modulus.
pub fn congruent(a: &BigInt, b: &BigInt, modulus: &BigInt) -> Result<bool> {
    Ok(residue(&(a - b), modulus)?.is_zero())
}

/// Divides `divisor` into `value`, returning `None` if the division is not exact.
pub fn exact_div(value: &BigInt, divisor: &BigInt) -> Option<BigInt> {
    let (q, r) = value.div_rem(divisor);
    r.is_zero().then_some(q)
}

/// Prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    prime_powers: Vec<(u64, u32)>,
}

impl Factorization {
    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn prime_powers(&self) -> &[(u64, u32)] {
        &self.prime_powers
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.prime_powers.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.prime_powers.is_empty()
    }

    /// Multiplies the factorization back out.
    pub fn product(&self) -> BigInt {
        self.prime_powers
            .iter()
            .fold(BigInt::one(), |acc, &(p, e)| acc * BigInt::from(p).pow(e))
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn positive_u64(n: &BigInt) -> Result<u64> {
    if !n.is_positive() {
        return Err(Error::NonPositive(n.clone()));
    }
    n.to_u64().ok_or_else(|| Error::TooLarge(n.clone()))
}

/// Complete factorization by trial division. Inputs are certificate moduli,
/// which are tiny.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    let mut rest = positive_u64(n)?;
    let mut prime_powers = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if rest % d == 0 {
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            prime_powers.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        prime_powers.push((rest, 1));
    }
    debug_assert!(prime_powers.iter().all(|&(p, _)| is_prime(p)));
    Ok(Factorization { prime_powers })
}

/// Product of the distinct primes dividing `n` (the largest square-free divisor).
pub fn radical(n: &BigInt) -> Result<BigInt> {
    let f = factorize(n)?;
    Ok(f.primes().map(BigInt::from).product())
}

/// Product of the primes that divide `n` exactly once.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    let f = factorize(n)?;
    Ok(f.prime_powers()
        .iter()
        .filter(|&&(_, e)| e == 1)
        .map(|&(p, _)| BigInt::from(p))
        .product())
}

/// `base^exp mod modulus` for machine-size modulus, result in `0..modulus`.
pub fn pow_mod(base: &BigInt, exp: u64, modulus: &BigInt) -> Result<BigInt> {
    let b = residue(base, modulus)?;
    Ok(b.modpow(&BigInt::from(exp), modulus))
}

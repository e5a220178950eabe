//! Binomial transforms `v_n(x) = sum_k C(n,k) (-x)^(n-k) u_k`, their inverse,
//! and the truncated generating-series identity
//! `G(z) = F(z / (1 + xz)) / (1 + xz)`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::sequences::{SequenceId, TermTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformTable {
    id: SequenceId,
    alpha: BigInt,
    values: Vec<BigInt>,
}

impl TransformTable {
    pub fn id(&self) -> SequenceId {
        self.id
    }

    pub fn alpha(&self) -> &BigInt {
        &self.alpha
    }

    /// `v_0..=v_N`.
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }
}

/// Applies `(E + shift)^n` to `seq` at 0 for every `n`, where `E` is the index
/// shift. `shift = -x` gives the transform, `shift = x` inverts it.
fn shift_triangle(seq: &[BigInt], shift: &BigInt) -> Vec<BigInt> {
    let mut work = seq.to_vec();
    let mut out = Vec::with_capacity(seq.len());
    for _ in 0..seq.len() {
        out.push(work[0].clone());
        for k in 0..work.len() - 1 {
            let (head, tail) = work.split_at_mut(k + 1);
            head[k] *= shift;
            head[k] += &tail[0];
        }
        work.pop();
    }
    out
}

/// `v_0(x)..=v_N(x)` for raw terms `u_0..=u_N`.
pub fn transform_values(terms: &[BigInt], x: &BigInt) -> Vec<BigInt> {
    shift_triangle(terms, &-x)
}

/// Inverse of [`transform_values`]: `u_n = sum_k C(n,k) x^(n-k) v_k(x)`.
pub fn inverse_values(values: &[BigInt], x: &BigInt) -> Vec<BigInt> {
    shift_triangle(values, x)
}

pub fn binomial_transform(
    terms: &TermTable,
    alpha: &BigInt,
    n_max: usize,
) -> Result<TransformTable> {
    let u = terms.require(n_max)?;
    Ok(TransformTable {
        id: terms.id(),
        alpha: alpha.clone(),
        values: transform_values(u, alpha),
    })
}

pub fn inverse_transform(vtable: &TransformTable, n_max: usize) -> Result<Vec<BigInt>> {
    if n_max > vtable.n_max() {
        return Err(Error::InsufficientTerms {
            needed: n_max,
            available: vtable.n_max(),
        });
    }
    Ok(inverse_values(&vtable.values[..=n_max], &vtable.alpha))
}

/// Truncated power series, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPoly {
    coefficients: Vec<BigInt>,
}

impl SeriesPoly {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        assert!(
            !coefficients.is_empty(),
            "a truncated series keeps at least its constant term"
        );
        SeriesPoly { coefficients }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn truncation_order(&self) -> usize {
        self.coefficients.len() - 1
    }
}

/// `F(y)` truncated after `y^order`.
pub fn series_of(terms: &TermTable, order: usize) -> Result<SeriesPoly> {
    Ok(SeriesPoly::new(terms.require(order)?.to_vec()))
}

/// Right-hand side `sum_k u_k z^k (1 + xz)^(-k-1)`, truncated after `z^order`.
///
/// Each power of `(1 + xz)^(-1)` is obtained from the previous one by series
/// division, `t_m = s_m - x t_{m-1}`; no binomial coefficients are formed.
pub fn composed_series(terms: &[BigInt], x: &BigInt, order: usize) -> SeriesPoly {
    let mut out = vec![BigInt::zero(); order + 1];
    let mut power = vec![BigInt::zero(); order + 1];
    power[0] = BigInt::one();
    for (k, u) in terms.iter().enumerate().take(order + 1) {
        // power := power / (1 + xz), now (1 + xz)^(-k-1)
        for m in 1..=order - k {
            let carry = x * &power[m - 1];
            power[m] -= carry;
        }
        if !u.is_zero() {
            for m in 0..=order - k {
                out[k + m] += u * &power[m];
            }
        }
    }
    SeriesPoly::new(out)
}

/// Compares the composed series against the binomial transform coefficientwise.
pub fn verify_gf_identity(terms: &TermTable, alpha: &BigInt, order: usize) -> Result<bool> {
    let u = terms.require(order)?;
    let lhs = transform_values(u, alpha);
    let rhs = composed_series(u, alpha, order);
    Ok(lhs == rhs.coefficients)
}

/// Monomial coefficients (constant first) of `v_n(x)` recovered by
/// interpolating at `x = 0..=n`. `None` if the interpolant is not integral.
pub fn transform_polynomial(terms: &[BigInt], n: usize) -> Result<Option<Vec<BigInt>>> {
    if terms.len() <= n {
        return Err(Error::InsufficientTerms {
            needed: n,
            available: terms.len().saturating_sub(1),
        });
    }
    let samples: Vec<BigInt> = (0..=n)
        .map(|x| transform_values(&terms[..=n], &BigInt::from(x))[n].clone())
        .collect();
    Ok(interpolate_integer(&samples))
}

/// Integer polynomial through `(i, samples[i])`, via Newton forward
/// differences in the falling-factorial basis.
fn interpolate_integer(samples: &[BigInt]) -> Option<Vec<BigInt>> {
    let degree = samples.len() - 1;
    let mut diffs = samples.to_vec();
    let mut coeffs = vec![BigInt::zero(); degree + 1];
    // falling = x (x - 1) ... (x - k + 1), monomial coefficients
    let mut falling = vec![BigInt::one()];
    let mut factorial = BigInt::one();
    for k in 0..=degree {
        if k > 0 {
            factorial *= k;
            for i in 0..diffs.len() - 1 {
                diffs[i] = &diffs[i + 1] - &diffs[i];
            }
            diffs.pop();
            let shift = BigInt::from(k - 1);
            let mut next = vec![BigInt::zero(); falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &shift;
            }
            falling = next;
        }
        let (q, r) = diffs[0].div_rem(&factorial);
        if !r.is_zero() {
            return None;
        }
        for (i, c) in falling.iter().enumerate() {
            coeffs[i] += &q * c;
        }
    }
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::binom_i64;
    use crate::sequences::{generate, TermSource};

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    /// Direct evaluation of the defining sum.
    fn transform_oracle(u: &[BigInt], x: i64, n: usize) -> BigInt {
        (0..=n)
            .map(|k| binom_i64(n as i64, k as i64) * BigInt::from(-x).pow((n - k) as u32) * &u[k])
            .sum()
    }

    fn table(id: SequenceId, n: usize) -> TermTable {
        generate(id.spec(), TermSource::Formula, n).unwrap()
    }

    #[test]
    fn transform_examples() {
        let d = table(SequenceId::D, 3);
        let v = binomial_transform(&d, &BigInt::from(3), 3).unwrap();
        assert_eq!(v.values(), &ints(&[1, 0, 10, 30])[..]);
        let same = binomial_transform(&d, &BigInt::zero(), 3).unwrap();
        assert_eq!(same.values(), d.terms());
        let g = table(SequenceId::Gamma, 2);
        let v = binomial_transform(&g, &BigInt::from(5), 2).unwrap();
        assert_eq!(v.values(), &ints(&[1, 0, 48])[..]);
        assert!(binomial_transform(&g, &BigInt::from(5), 3).is_err());
    }

    #[test]
    fn triangle_matches_direct_sum() {
        let u = table(SequenceId::Zeta, 25).into_terms();
        for x in [-4i64, -1, 0, 2, 3, 7] {
            let v = transform_values(&u, &BigInt::from(x));
            for n in 0..=25 {
                assert_eq!(v[n], transform_oracle(&u, x, n), "x={x} n={n}");
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let d = table(SequenceId::D, 3);
        let v = binomial_transform(&d, &BigInt::from(3), 3).unwrap();
        assert_eq!(inverse_transform(&v, 3).unwrap(), ints(&[1, 3, 19, 147]));
        let pure = inverse_values(&ints(&[1, 0, 0, 0, 0]), &BigInt::from(-3));
        assert_eq!(pure, ints(&[1, -3, 9, -27, 81]));
        let g = table(SequenceId::Gamma, 4);
        let v = binomial_transform(&g, &BigInt::from(5), 4).unwrap();
        assert_eq!(
            inverse_transform(&v, 4).unwrap(),
            ints(&[1, 5, 73, 1445, 33001])
        );
        assert!(inverse_transform(&v, 5).is_err());
    }

    #[test]
    fn series_examples() {
        assert_eq!(
            series_of(&table(SequenceId::D, 4), 2)
                .unwrap()
                .coefficients(),
            &ints(&[1, 3, 19])[..]
        );
        assert_eq!(
            series_of(&table(SequenceId::Gamma, 1), 1)
                .unwrap()
                .coefficients(),
            &ints(&[1, 5])[..]
        );
        let a = series_of(&table(SequenceId::A, 3), 3).unwrap();
        assert_eq!(a.coefficients(), &ints(&[1, 2, 10, 56])[..]);
        assert_eq!(a.truncation_order(), 3);
    }

    #[test]
    fn gf_identity_examples() {
        let d = table(SequenceId::D, 32);
        assert!(verify_gf_identity(&d, &BigInt::from(3), 32).unwrap());
        assert!(verify_gf_identity(&d, &BigInt::zero(), 32).unwrap());
        let g = table(SequenceId::Gamma, 32);
        assert!(verify_gf_identity(&g, &BigInt::from(5), 32).unwrap());
        // the composed series is a genuinely separate computation
        let mut wrong = composed_series(d.terms(), &BigInt::from(3), 10)
            .coefficients()
            .to_vec();
        wrong[4] += 1;
        assert_ne!(wrong, transform_values(&d.terms()[..=10], &BigInt::from(3)));
    }

    #[test]
    fn polynomial_view() {
        let u = table(SequenceId::D, 8).into_terms();
        for n in 0..=8 {
            let coeffs = transform_polynomial(&u, n).unwrap().expect("integral");
            // coefficient of x^j is C(n, j) (-1)^j u_{n-j}
            for (j, c) in coeffs.iter().enumerate() {
                let sign = if j % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                assert_eq!(c, &(binom_i64(n as i64, j as i64) * sign * &u[n - j]));
            }
        }
        assert_eq!(interpolate_integer(&ints(&[0, 1])).unwrap(), ints(&[0, 1]));
        // x (x - 1) / 2 is integer-valued but not an integer polynomial
        assert!(interpolate_integer(&ints(&[0, 0, 1])).is_none());
    }
}

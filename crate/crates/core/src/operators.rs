//! Differential operators `sum_j z^j P_j(θ)` with `θ = z d/dz`, and the
//! P-recursive recurrences they induce on coefficient sequences.
//!
//! `z^j P_j(θ)` applied to `sum_n v_n z^n` contributes `P_j(n - j) v_{n-j}` to
//! the coefficient of `z^n`, so an operator annihilates a series iff
//! `sum_j P_j(n - j) v_{n-j} = 0` for every `n` (with `v_m = 0` for `m < 0`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::sequences::Params;
use crate::transforms::SeriesPoly;

/// Integer polynomial in one variable, constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThetaPoly {
    coeffs: Vec<BigInt>,
}

impl ThetaPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ThetaPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ThetaPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `θ + c`.
    pub fn theta_plus(c: i64) -> Self {
        Self::from_i64(&[c, 1])
    }

    pub fn theta() -> Self {
        Self::theta_plus(0)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(BigInt::one()), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    /// `Q(t) = P(t + shift)`.
    pub fn shifted(&self, shift: i64) -> Self {
        let linear = Self::theta_plus(shift);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &linear) + &Self::constant(c.clone())
        })
    }

    /// Renders with `var` as the variable, highest degree first: `-2*n^2 + 2*n`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let monomial = match deg {
                0 => String::new(),
                1 => var.to_string(),
                d => format!("{var}^{d}"),
            };
            match (deg, magnitude.is_one()) {
                (0, _) => out.push_str(&magnitude.to_string()),
                (_, true) => out.push_str(&monomial),
                (_, false) => out.push_str(&format!("{magnitude}*{monomial}")),
            }
        }
        out
    }

    /// `true` if the polynomial is a single monomial with coefficient +1.
    fn is_monic_monomial(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
            && self.coeffs.iter().rev().skip(1).all(Zero::is_zero)
    }
}

impl Add for &ThetaPoly {
    type Output = ThetaPoly;

    fn add(self, rhs: &ThetaPoly) -> ThetaPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        ThetaPoly::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &ThetaPoly {
    type Output = ThetaPoly;

    fn sub(self, rhs: &ThetaPoly) -> ThetaPoly {
        self + &-rhs
    }
}

impl Neg for &ThetaPoly {
    type Output = ThetaPoly;

    fn neg(self) -> ThetaPoly {
        ThetaPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &ThetaPoly {
    type Output = ThetaPoly;

    fn mul(self, rhs: &ThetaPoly) -> ThetaPoly {
        if self.is_zero() || rhs.is_zero() {
            return ThetaPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ThetaPoly::new(out)
    }
}

impl fmt::Display for ThetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("θ"))
    }
}

impl Serialize for ThetaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::decimal::vec::serialize(&self.coeffs, s)
    }
}

/// `sum_j z^j P_j(θ)`, zero blocks dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaOperator {
    terms: BTreeMap<usize, ThetaPoly>,
}

impl ThetaOperator {
    pub fn new(terms: impl IntoIterator<Item = (usize, ThetaPoly)>) -> Self {
        let mut map: BTreeMap<usize, ThetaPoly> = BTreeMap::new();
        for (j, p) in terms {
            let merged = match map.remove(&j) {
                Some(existing) => &existing + &p,
                None => p,
            };
            map.insert(j, merged);
        }
        map.retain(|_, p| !p.is_zero());
        ThetaOperator { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &ThetaPoly)> {
        self.terms.iter().map(|(&j, p)| (j, p))
    }

    pub fn block(&self, z_power: usize) -> Option<&ThetaPoly> {
        self.terms.get(&z_power)
    }

    pub fn max_z_power(&self) -> usize {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }
}

impl fmt::Display for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, p) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({p})")?,
                1 => write!(f, "z*({p})")?,
                _ => write!(f, "z^{j}*({p})")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct Block<'a> {
    z_power: usize,
    coefficients: &'a ThetaPoly,
}

impl Serialize for ThetaOperator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms().map(|(z_power, coefficients)| Block {
            z_power,
            coefficients,
        }))
    }
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn poly(coeffs: [&BigInt; 3]) -> ThetaPoly {
    ThetaPoly::new(coeffs.iter().map(|&c| c.clone()).collect())
}

/// `θ^2 - y(Aθ^2 + Aθ + λ) + B y^2 (θ+1)^2`.
pub fn build_l1(a: &BigInt, b: &BigInt, lambda: &BigInt) -> ThetaOperator {
    ThetaOperator::new([
        (0, ThetaPoly::theta().pow(2)),
        (1, -&poly([lambda, a, a])),
        (2, ThetaPoly::theta_plus(1).pow(2).scale(b)),
    ])
}

/// `θ^3 - y(2θ+1)(aθ^2 + aθ + b) + y^2 (c(θ+1)^3 + d(θ+1))`.
pub fn build_l2(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> ThetaOperator {
    let t1 = ThetaPoly::theta_plus(1);
    ThetaOperator::new([
        (0, ThetaPoly::theta().pow(3)),
        (1, -&(&ThetaPoly::from_i64(&[1, 2]) * &poly([b, a, a]))),
        (2, &t1.pow(3).scale(c) + &t1.scale(d)),
    ])
}

/// Operator annihilating the generating series of `v_n(x)` when `F` is
/// annihilated by [`build_l1`].
pub fn build_transformed_l1(a: &BigInt, b: &BigInt, lambda: &BigInt, x: &BigInt) -> ThetaOperator {
    let x2 = x * x;
    let lead = x * 3u32 - a;
    let j1 = poly([&(x - lambda), &lead, &lead]);
    let j2 = ThetaPoly::theta_plus(1)
        .pow(2)
        .scale(&-(a * x * 2u32 - &x2 * 3u32 - b));
    let j3 =
        (&ThetaPoly::theta_plus(1) * &ThetaPoly::theta_plus(2)).scale(&-(x * (a * x - &x2 - b)));
    ThetaOperator::new([(0, ThetaPoly::theta().pow(2)), (1, j1), (2, j2), (3, j3)])
}

/// Operator annihilating the generating series of `v_n(x)` when `F` is
/// annihilated by [`build_l2`].
pub fn build_transformed_l2(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    d: &BigInt,
    x: &BigInt,
) -> ThetaOperator {
    let x2 = x * x;
    let ax = a * x;
    let t1 = ThetaPoly::theta_plus(1);
    let t12 = &t1 * &ThetaPoly::theta_plus(2);

    let inner1 = a - x * 2u32;
    let j1 = -&(&ThetaPoly::from_i64(&[1, 2]) * &poly([&(b - x), &inner1, &inner1]));

    let q2 = &ax * 6u32 - &x2 * 6u32 - c;
    let q1 = &ax * 12u32 - &x2 * 12u32 - c * 2u32;
    let q0 = &ax * 6u32 + b * x * 2u32 - &x2 * 7u32 - c - d;
    let j2 = -&(&t1 * &poly([&q0, &q1, &q2]));

    let j3 = (&t12 * &ThetaPoly::from_i64(&[3, 2])).scale(&-(x * (&ax * 3u32 - &x2 * 2u32 - c)));
    let j4 = (&t12 * &ThetaPoly::theta_plus(3)).scale(&-(&x2 * (&ax * 2u32 - &x2 - c)));

    ThetaOperator::new([
        (0, ThetaPoly::theta().pow(3)),
        (1, j1),
        (2, j2),
        (3, j3),
        (4, j4),
    ])
}

/// Untransformed operator for a parameter tuple.
pub fn operator_for(params: &Params) -> ThetaOperator {
    match *params {
        Params::Second { a, b, lambda } => build_l1(&int(a), &int(b), &int(lambda)),
        Params::First { a, b, c, d } => build_l2(&int(a), &int(b), &int(c), &int(d)),
    }
}

/// Transformed operator for a parameter tuple at `x`.
pub fn transformed_operator_for(params: &Params, x: &BigInt) -> ThetaOperator {
    match *params {
        Params::Second { a, b, lambda } => build_transformed_l1(&int(a), &int(b), &int(lambda), x),
        Params::First { a, b, c, d } => build_transformed_l2(&int(a), &int(b), &int(c), &int(d), x),
    }
}

/// `sum_j coeff_polys[j](n) v_{n-j} = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    coeff_polys: Vec<ThetaPoly>,
}

impl Recurrence {
    pub fn order(&self) -> usize {
        self.coeff_polys.len() - 1
    }

    pub fn coeff_polys(&self) -> &[ThetaPoly] {
        &self.coeff_polys
    }

    /// Largest degree among `coeff_polys[1..]`.
    pub fn max_tail_degree(&self) -> Option<usize> {
        self.coeff_polys[1..]
            .iter()
            .filter_map(ThetaPoly::degree)
            .max()
    }

    /// `sum_j coeff_polys[j](n) values[n-j]`, skipping negative indices.
    pub fn residual(&self, n: usize, values: &[BigInt]) -> BigInt {
        let at = BigInt::from(n);
        self.coeff_polys
            .iter()
            .enumerate()
            .take(n + 1)
            .filter(|(_, p)| !p.is_zero())
            .map(|(j, p)| p.eval(&at) * &values[n - j])
            .sum()
    }
}

impl fmt::Display for Recurrence {
    /// `n^2*v[n] + (-2*n^2 + 2*n)*v[n-1] + ... = 0`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, p) in self.coeff_polys.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let var = if j == 0 {
                "v[n]".to_string()
            } else {
                format!("v[n-{j}]")
            };
            let coeff = if p.is_monic_monomial() {
                p.render("n")
            } else {
                format!("({})", p.render("n"))
            };
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{coeff}*{var}")?;
        }
        f.write_str(" = 0")
    }
}

impl Serialize for Recurrence {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Recurrence", 2)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coefficients", &self.coeff_polys)?;
        st.end()
    }
}

/// Reads off the recurrence: `coeff_polys[j](n) = P_j(n - j)`.
pub fn operator_to_recurrence(op: &ThetaOperator) -> Recurrence {
    let order = op.max_z_power();
    let coeff_polys = (0..=order)
        .map(|j| {
            op.block(j)
                .map(|p| p.shifted(-(j as i64)))
                .unwrap_or_default()
        })
        .collect();
    Recurrence { coeff_polys }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AnnihilationReport {
    pub ok: bool,
    pub first_bad_index: Option<usize>,
}

/// Checks every coefficient residual `0 <= n <= order` of `op` applied to `series`.
pub fn check_annihilates(op: &ThetaOperator, series: &SeriesPoly) -> AnnihilationReport {
    let rec = operator_to_recurrence(op);
    let values = series.coefficients();
    let first_bad_index = (0..values.len()).find(|&n| !rec.residual(n, values).is_zero());
    AnnihilationReport {
        ok: first_bad_index.is_none(),
        first_bad_index,
    }
}

//! gcd certificates for congruences `u_n ≡ alpha^n (mod N)` and the
//! individual congruence families checked over finite index ranges.
//!
//! `M_alpha` is the gcd of `v_1..v_K(alpha)` with `K = 3` (second kind) or
//! `K = 4` (first kind). Everything here is verification over a finite
//! window; nothing is claimed beyond `verified_to`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_math::{binom_i64, gcd_all, radical, residue, squarefree_part};
use crate::sequences::{canonical_table, Normalization, SequenceId, TermTable};
use crate::transforms::transform_values;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail {
        witness: String,
    },
    /// Recorded for information only; never counts as a failure.
    Info {
        #[serde(rename = "witness")]
        note: String,
    },
}

impl Verdict {
    pub fn fail(witness: impl Into<String>) -> Self {
        Verdict::Fail {
            witness: witness.into(),
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail { .. } => "fail",
            Verdict::Info { .. } => "info",
        }
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail { witness } => Some(witness),
            Verdict::Info { note } => Some(note),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness() {
            Some(w) => write!(f, "{} ({w})", self.label()),
            None => f.write_str(self.label()),
        }
    }
}

/// Cumulative gcds `gcd(v_1..v_K)` for `K = 1..values.len()-1`, where
/// `values[0] = v_0` is ignored.
pub fn gcd_profile(values: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    values
        .iter()
        .skip(1)
        .map(|v| {
            g = g.gcd(v);
            g.clone()
        })
        .collect()
}

/// `M_alpha` from the first 3 or 4 transform values.
pub fn compute_m(table: &TermTable, alpha: &BigInt) -> Result<BigInt> {
    let depth = table.spec().kind().certificate_depth();
    let v = transform_values(table.require(depth)?, alpha);
    Ok(gcd_all(&v[1..]))
}

/// `gcd(u_1 - alpha, M_{u_1})`, the closed form of `M_alpha`.
pub fn m_closed_form(table: &TermTable, alpha: &BigInt) -> Result<BigInt> {
    let m_u1 = compute_m(table, table.u1())?;
    Ok((table.u1() - alpha).gcd(&m_u1))
}

/// First `n` in `0..=n_max` where `u_n ≢ base^n (mod modulus)`.
pub fn first_power_violation(
    terms: &[BigInt],
    base: &BigInt,
    modulus: &BigInt,
    n_max: usize,
) -> Result<Option<usize>> {
    let base = residue(base, modulus)?;
    let mut power = residue(&BigInt::one(), modulus)?;
    for (n, u) in terms.iter().enumerate().take(n_max + 1) {
        if residue(&(u - &power), modulus)? != BigInt::zero() {
            return Ok(Some(n));
        }
        power = (power * &base).mod_floor(modulus);
    }
    Ok(None)
}

fn power_congruence(
    terms: &[BigInt],
    base: &BigInt,
    modulus: &BigInt,
    n_max: usize,
) -> Result<Verdict> {
    if terms.len() <= n_max {
        return Err(Error::InsufficientTerms {
            needed: n_max,
            available: terms.len().saturating_sub(1),
        });
    }
    Ok(match first_power_violation(terms, base, modulus, n_max)? {
        None => Verdict::Pass,
        Some(n) => Verdict::fail(format!("u_{n} = {} ≢ {base}^{n} (mod {modulus})", terms[n])),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub sequence: SequenceId,
    #[serde(with = "crate::decimal")]
    pub alpha: BigInt,
    #[serde(rename = "M", with = "crate::decimal")]
    pub m_alpha: BigInt,
    /// Largest square-free divisor of `m_alpha`.
    #[serde(with = "crate::decimal")]
    pub modulus: BigInt,
    #[serde(rename = "n_verified")]
    pub verified_to: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// `u_n ≡ alpha^n (mod radical(M_alpha))` for `0 <= n <= n_max`.
pub fn theorem1_check(table: &TermTable, alpha: &BigInt, n_max: usize) -> Result<Theorem1Report> {
    let m_alpha = compute_m(table, alpha)?;
    let modulus = radical(&m_alpha)?;
    let verdict = power_congruence(table.terms(), alpha, &modulus, n_max)?;
    Ok(Theorem1Report {
        sequence: table.id(),
        alpha: alpha.clone(),
        m_alpha,
        modulus,
        verified_to: n_max,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub depth: usize,
    #[serde(with = "crate::decimal")]
    pub gcd: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceCertificate {
    pub sequence: SequenceId,
    #[serde(with = "crate::decimal")]
    pub alpha: BigInt,
    #[serde(rename = "M", with = "crate::decimal")]
    pub m_alpha: BigInt,
    #[serde(rename = "radical", with = "crate::decimal")]
    pub m_radical: BigInt,
    #[serde(rename = "squarefree_part", with = "crate::decimal")]
    pub m_squarefree_part: BigInt,
    /// Depths at which `gcd(v_1..v_K)` changes, starting at `K = 1`.
    pub gcd_profile: Vec<ProfileEntry>,
    /// The gcd is constant on `stable_from..=verified_to`.
    pub stable_from: usize,
    #[serde(rename = "n_verified")]
    pub verified_to: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl CongruenceCertificate {
    /// `gcd(v_1..v_K)` read back from the breakpoints.
    pub fn gcd_at(&self, depth: usize) -> Option<&BigInt> {
        if depth == 0 || depth > self.verified_to {
            return None;
        }
        self.gcd_profile
            .iter()
            .take_while(|e| e.depth <= depth)
            .last()
            .map(|e| &e.gcd)
    }
}

fn breakpoints(profile: &[BigInt]) -> Vec<ProfileEntry> {
    let mut out: Vec<ProfileEntry> = Vec::new();
    for (i, g) in profile.iter().enumerate() {
        if out.last().is_none_or(|e| &e.gcd != g) {
            out.push(ProfileEntry {
                depth: i + 1,
                gcd: g.clone(),
            });
        }
    }
    out
}

/// Certificate at `alpha = u_1`, the modulus that dominates every other alpha.
///
/// Checks, in order: `u_n ≡ u_1^n (mod M_{u_1})` for `n <= n_max`; the gcd
/// of `v_1..v_K(u_1)` equals `M_{u_1}` for every defining depth `<= K <= n_max`;
/// and for every alpha in `alphas`, `M_alpha = gcd(u_1 - alpha, M_{u_1})`
/// divides `M_{u_1}`.
pub fn theorem2_check(
    table: &TermTable,
    n_max: usize,
    alphas: impl IntoIterator<Item = i64>,
) -> Result<CongruenceCertificate> {
    let depth = table.spec().kind().certificate_depth();
    let u1 = table.u1().clone();
    let v = transform_values(table.require(n_max.max(depth))?, &u1);
    let profile = gcd_profile(&v);
    let m = profile[depth - 1].clone();
    if !m.is_positive() {
        return Err(Error::BadModulus(m));
    }

    let mut verdict = power_congruence(table.terms(), &u1, &m, n_max)?;

    let unstable = (depth..=n_max).find(|&k| profile[k - 1] != m);
    if let (Verdict::Pass, Some(k)) = (&verdict, unstable) {
        verdict = Verdict::fail(format!(
            "gcd(v_1..v_{k}) = {} differs from M = {m}",
            profile[k - 1]
        ));
    }
    let stable_from = match unstable {
        Some(k) => k,
        None => (1..=depth)
            .rev()
            .take_while(|&k| profile[k - 1] == m)
            .last()
            .unwrap_or(depth),
    };

    if verdict.is_pass() {
        for alpha in alphas {
            let alpha = BigInt::from(alpha);
            let m_alpha = compute_m(table, &alpha)?;
            let closed = (&u1 - &alpha).gcd(&m);
            if m_alpha != closed {
                verdict = Verdict::fail(format!(
                    "M_{alpha} = {m_alpha} but gcd(u_1 - alpha, M) = {closed}"
                ));
                break;
            }
            if !m.is_multiple_of(&m_alpha) {
                verdict = Verdict::fail(format!("M_{alpha} = {m_alpha} does not divide {m}"));
                break;
            }
        }
    }

    Ok(CongruenceCertificate {
        sequence: table.id(),
        alpha: u1,
        m_radical: radical(&m)?,
        m_squarefree_part: squarefree_part(&m)?,
        m_alpha: m,
        gcd_profile: breakpoints(&profile[..n_max.max(depth)]),
        stable_from,
        verified_to: n_max,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaussReport {
    pub sequence: SequenceId,
    #[serde(with = "crate::decimal")]
    pub alpha: BigInt,
    pub primes: Vec<u64>,
    pub n_max: usize,
    /// Number of `(p, k, n)` triples examined.
    pub checked: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// `v_{n p^k}(alpha) ≡ v_{n p^(k-1)}(alpha) (mod p^k)` for all `n, k >= 1`
/// with `n p^k <= n_max`.
pub fn gauss_check(
    table: &TermTable,
    alpha: &BigInt,
    primes: &[u64],
    n_max: usize,
) -> Result<GaussReport> {
    let v = transform_values(table.require(n_max)?, alpha);
    gauss_check_values(table.id(), alpha, &v, primes, n_max)
}

/// [`gauss_check`] over precomputed `v_0..=v_{n_max}`.
pub fn gauss_check_values(
    sequence: SequenceId,
    alpha: &BigInt,
    v: &[BigInt],
    primes: &[u64],
    n_max: usize,
) -> Result<GaussReport> {
    if v.len() <= n_max {
        return Err(Error::InsufficientTerms {
            needed: n_max,
            available: v.len().saturating_sub(1),
        });
    }
    let mut checked = 0;
    let mut verdict = Verdict::Pass;
    'outer: for &p in primes {
        let p = p as usize;
        let mut pk = p;
        let mut k = 1;
        while pk <= n_max {
            let modulus = BigInt::from(pk);
            for n in 1..=n_max / pk {
                checked += 1;
                let diff = &v[n * pk] - &v[n * pk / p];
                if !residue(&diff, &modulus)?.is_zero() {
                    verdict = Verdict::fail(format!("p = {p}, k = {k}, n = {n}"));
                    break 'outer;
                }
            }
            pk *= p;
            k += 1;
        }
    }
    Ok(GaussReport {
        sequence,
        alpha: alpha.clone(),
        primes: primes.to_vec(),
        n_max,
        checked,
        verdict,
    })
}

/// `gcd(c - alpha, f(alpha)) = gcd(c - alpha, f(c))` for every alpha in range.
pub fn auxiliary_lemma_check(
    c: &BigInt,
    f_coeffs: &[BigInt],
    alphas: impl IntoIterator<Item = i64>,
) -> Verdict {
    let eval = |at: &BigInt| {
        f_coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, a| acc * at + a)
    };
    let fc = eval(c);
    for alpha in alphas {
        let alpha = BigInt::from(alpha);
        let diff = c - &alpha;
        let lhs = diff.gcd(&eval(&alpha));
        let rhs = diff.gcd(&fc);
        if lhs != rhs {
            return Verdict::fail(format!("alpha = {alpha}: {lhs} != {rhs}"));
        }
    }
    Verdict::Pass
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub sequence: Option<SequenceId>,
    /// Largest index (or parameter bound) covered.
    pub checked_to: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl NamedCheck {
    fn new(
        name: impl Into<String>,
        sequence: Option<SequenceId>,
        checked_to: usize,
        verdict: Verdict,
    ) -> Self {
        NamedCheck {
            name: name.into(),
            sequence,
            checked_to,
            verdict,
        }
    }
}

/// Canonical (closed-form reading) table for the named congruence families.
fn formula_table(id: SequenceId, n_max: usize) -> Result<TermTable> {
    canonical_table(id.spec(), n_max, Normalization::Formula)
}

/// `u_n ≡ base^n (mod m)` for the seven sequences whose `M_{u_1}` is not square-free.
pub const SPECIAL_CONGRUENCES: [(SequenceId, i64, i64); 7] = [
    (SequenceId::Gamma, 5, 8),
    (SequenceId::E, 4, 4),
    (SequenceId::AlphaSeq, 4, 4),
    (SequenceId::S18, 12, 4),
    (SequenceId::Epsilon, 4, 8),
    (SequenceId::S7, 4, 8),
    (SequenceId::Delta, 3, 8),
];

pub fn special_congruences_check(n_max: usize) -> Result<Vec<NamedCheck>> {
    SPECIAL_CONGRUENCES
        .iter()
        .map(|&(id, base, m)| {
            let table = formula_table(id, n_max)?;
            let verdict =
                power_congruence(table.terms(), &BigInt::from(base), &BigInt::from(m), n_max)?;
            Ok(NamedCheck::new(
                format!("{id} ≡ {base}^n (mod {m})"),
                Some(id),
                n_max,
                verdict,
            ))
        })
        .collect()
}

fn mod8(v: &BigInt) -> i64 {
    v.mod_floor(&BigInt::from(8))
        .to_i64()
        .expect("residue mod 8")
}

/// Checks `holds(n)` for `n` in `range`, reporting the first failing index.
fn index_check(
    name: &str,
    id: SequenceId,
    range: std::ops::RangeInclusive<usize>,
    mut holds: impl FnMut(usize) -> bool,
) -> NamedCheck {
    let end = *range.end();
    let verdict = match range.into_iter().find(|&n| !holds(n)) {
        None => Verdict::Pass,
        Some(n) => Verdict::fail(format!("n = {n}")),
    };
    NamedCheck::new(name, Some(id), end, verdict)
}

fn poly_i(n: usize, coeffs: &[i64]) -> BigInt {
    let n = BigInt::from(n);
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, &c| acc * &n + c)
}

/// Intermediate congruences behind the mod-8 and mod-4 special cases:
/// odd-index steps, index-doubling steps and the `C(2s,2t) ≡ C(s,t) (mod 4)`
/// lemma. `doubling_max` bounds `n` in steps that read index `2n` or `2n+1`.
pub fn proof_step_congruences_check(doubling_max: usize) -> Result<Vec<NamedCheck>> {
    let top = 2 * doubling_max + 1;
    let eps = formula_table(SequenceId::Epsilon, top)?;
    let s7 = formula_table(SequenceId::S7, top)?;
    let delta = formula_table(SequenceId::Delta, top)?;
    let (a, b, c) = (eps.terms(), s7.terms(), delta.terms());
    let mut out = Vec::new();

    out.push(index_check(
        "epsilon: (2n+1)^3 a_{2n+1} - 4(4n+1)(12n^2+6n+1) a_{2n} + 128n^3 a_{2n-1} = 0",
        SequenceId::Epsilon,
        1..=doubling_max,
        |n| {
            let t: BigInt = poly_i(2 * n + 1, &[0, 0, 0, 1]) * &a[2 * n + 1]
                - 4 * poly_i(n, &[1, 4]) * poly_i(n, &[1, 6, 12]) * &a[2 * n]
                + 128 * poly_i(n, &[0, 0, 0, 1]) * &a[2 * n - 1];
            t.is_zero()
        },
    ));
    out.push(index_check(
        "epsilon: (4n^2+6n+1) a_{2n+1} + 4 a_{2n} ≡ 0 (mod 8)",
        SequenceId::Epsilon,
        0..=doubling_max,
        |n| mod8(&(poly_i(n, &[1, 6, 4]) * &a[2 * n + 1] + 4 * &a[2 * n])) == 0,
    ));
    out.push(index_check(
        "epsilon: a_{2n+1} ≡ 4 a_{2n} (mod 8)",
        SequenceId::Epsilon,
        0..=doubling_max,
        |n| mod8(&(&a[2 * n + 1] - 4 * &a[2 * n])) == 0,
    ));
    out.push(index_check(
        "epsilon: a_{2n} ≡ a_n (mod 8), n >= 2",
        SequenceId::Epsilon,
        2..=doubling_max,
        |n| mod8(&(&a[2 * n] - &a[n])) == 0,
    ));

    let kaz_max = doubling_max as i64;
    let kaz = (0..=kaz_max)
        .flat_map(|s| (0..=s).map(move |t| (s, t)))
        .find(|&(s, t)| {
            (binom_i64(2 * s, 2 * t) - binom_i64(s, t)).mod_floor(&BigInt::from(4))
                != BigInt::zero()
        });
    out.push(NamedCheck::new(
        "C(2s,2t) ≡ C(s,t) (mod 4), 0 <= t <= s",
        None,
        doubling_max,
        match kaz {
            None => Verdict::Pass,
            Some((s, t)) => Verdict::fail(format!("s = {s}, t = {t}")),
        },
    ));

    out.push(index_check(
        "s7: (2n+1)^3 b_{2n+1} - 2(4n+1)(26n^2+13n+2) b_{2n} - 6n(6n-1)(6n+1) b_{2n-1} = 0",
        SequenceId::S7,
        1..=doubling_max,
        |n| {
            let t: BigInt = poly_i(2 * n + 1, &[0, 0, 0, 1]) * &b[2 * n + 1]
                - 2 * poly_i(n, &[1, 4]) * poly_i(n, &[2, 13, 26]) * &b[2 * n]
                - 6 * poly_i(n, &[0, 1]) * poly_i(n, &[-1, 6]) * poly_i(n, &[1, 6]) * &b[2 * n - 1];
            t.is_zero()
        },
    ));
    out.push(index_check(
        "s7: (4n^2+6n+1) b_{2n+1} + 2(2n^2+3n+2) b_{2n} + 6n b_{2n-1} ≡ 0 (mod 8)",
        SequenceId::S7,
        1..=doubling_max,
        |n| {
            let t: BigInt = poly_i(n, &[1, 6, 4]) * &b[2 * n + 1]
                + 2 * poly_i(n, &[2, 3, 2]) * &b[2 * n]
                + 6 * poly_i(n, &[0, 1]) * &b[2 * n - 1];
            mod8(&t) == 0
        },
    ));
    out.push(index_check(
        "s7: b_{2n} ≡ b_n (mod 8), n >= 2",
        SequenceId::S7,
        2..=doubling_max,
        |n| mod8(&(&b[2 * n] - &b[n])) == 0,
    ));

    out.push(index_check(
        "delta: (2n+1)^3 c_{2n+1} - (4n+1)(28n^2+14n+3) c_{2n} + 648n^3 c_{2n-1} = 0",
        SequenceId::Delta,
        1..=doubling_max,
        |n| {
            let t: BigInt = poly_i(2 * n + 1, &[0, 0, 0, 1]) * &c[2 * n + 1]
                - poly_i(n, &[1, 4]) * poly_i(n, &[3, 14, 28]) * &c[2 * n]
                + 648 * poly_i(n, &[0, 0, 0, 1]) * &c[2 * n - 1];
            t.is_zero()
        },
    ));
    out.push(index_check(
        "delta: (4n^2+6n+1) c_{2n+1} + (4n^2+6n+5) c_{2n} ≡ 0 (mod 8)",
        SequenceId::Delta,
        0..=doubling_max,
        |n| mod8(&(poly_i(n, &[1, 6, 4]) * &c[2 * n + 1] + poly_i(n, &[5, 6, 4]) * &c[2 * n])) == 0,
    ));
    out.push(index_check(
        "delta: c_{2n+1} ≡ 3 c_{2n} (mod 8)",
        SequenceId::Delta,
        0..=doubling_max,
        |n| mod8(&(&c[2 * n + 1] - 3 * &c[2 * n])) == 0,
    ));
    let mut three_n = 1i64;
    out.push(index_check(
        "delta: c_{2n} ≡ 3^n c_n (mod 8)",
        SequenceId::Delta,
        0..=doubling_max,
        |n| {
            let ok = mod8(&(&c[2 * n] - three_n * &c[n])) == 0;
            three_n = three_n * 3 % 8;
            ok
        },
    ));
    Ok(out)
}

/// The two classical examples: `a_n ≡ 5^n (mod 24)` (and its mod 8 and mod 3
/// halves) for the order-3 Apéry numbers, `b_n ≡ 3^n (mod 10)` for the order-2 ones.
pub fn motivating_congruences_check(n_max: usize) -> Result<Vec<NamedCheck>> {
    let gamma = formula_table(SequenceId::Gamma, n_max)?;
    let d = formula_table(SequenceId::D, n_max)?;
    let cases: [(&str, &TermTable, i64, i64); 4] = [
        ("gamma: a_n ≡ 5^n (mod 24)", &gamma, 5, 24),
        ("gamma: a_n ≡ 5^n (mod 8)", &gamma, 5, 8),
        ("gamma: a_n ≡ (-1)^n (mod 3)", &gamma, -1, 3),
        ("D: b_n ≡ 3^n (mod 10)", &d, 3, 10),
    ];
    let mut out = Vec::new();
    for (name, table, base, m) in cases {
        let verdict =
            power_congruence(table.terms(), &BigInt::from(base), &BigInt::from(m), n_max)?;
        out.push(NamedCheck::new(name, Some(table.id()), n_max, verdict));
    }
    let cycle = [1, 3, 9, 7];
    let ten = BigInt::from(10);
    out.push(index_check(
        "D: last digit cycles 1, 3, 9, 7",
        SequenceId::D,
        0..=n_max,
        |n| d.terms()[n].mod_floor(&ten) == BigInt::from(cycle[n % 4]),
    ));
    Ok(out)
}

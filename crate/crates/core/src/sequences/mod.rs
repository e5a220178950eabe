//! The fifteen sporadic Apéry-like sequences.
//!
//! Each sequence can be produced two ways: by evaluating its closed-form
//! binomial sum, or by solving its three-term recurrence. For thirteen of
//! them the two agree. For `eta` and `s18` the closed form under the
//! generalized binomial convention is twice the recurrence solution for
//! `n >= 1`; [`cross_check`] reports that relation and [`Normalization`]
//! selects which reading the rest of the crate works with.

mod cache;
mod formulas;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_math::exact_div;

pub use cache::{load_tables, save_tables};
pub use formulas::FormulaEvaluator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceId {
    A,
    B,
    C,
    D,
    E,
    F,
    Delta,
    Eta,
    AlphaSeq,
    Epsilon,
    Zeta,
    Gamma,
    S7,
    S10,
    S18,
}

impl SequenceId {
    /// Table order: six of the second kind, then nine of the first kind.
    pub const ALL: [SequenceId; 15] = [
        SequenceId::A,
        SequenceId::B,
        SequenceId::C,
        SequenceId::D,
        SequenceId::E,
        SequenceId::F,
        SequenceId::Delta,
        SequenceId::Eta,
        SequenceId::AlphaSeq,
        SequenceId::Epsilon,
        SequenceId::Zeta,
        SequenceId::Gamma,
        SequenceId::S7,
        SequenceId::S10,
        SequenceId::S18,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SequenceId::A => "A",
            SequenceId::B => "B",
            SequenceId::C => "C",
            SequenceId::D => "D",
            SequenceId::E => "E",
            SequenceId::F => "F",
            SequenceId::Delta => "delta",
            SequenceId::Eta => "eta",
            SequenceId::AlphaSeq => "alpha",
            SequenceId::Epsilon => "epsilon",
            SequenceId::Zeta => "zeta",
            SequenceId::Gamma => "gamma",
            SequenceId::S7 => "s7",
            SequenceId::S10 => "s10",
            SequenceId::S18 => "s18",
        }
    }

    pub fn spec(self) -> &'static SequenceSpec {
        &SPECS[self as usize]
    }

    /// `true` for the two sequences whose closed form doubles the recurrence solution.
    pub fn has_doubled_formula(self) -> bool {
        matches!(self, SequenceId::Eta | SequenceId::S18)
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for SequenceId {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl FromStr for SequenceId {
    type Err = Error;

    /// Accepts the short id (case-sensitive for the single letters, which
    /// clash with the Greek names) or a display alias such as "Domb numbers".
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if let Some(id) = SequenceId::ALL.iter().find(|id| id.as_str() == trimmed) {
            return Ok(*id);
        }
        let lower = trimmed.to_ascii_lowercase();
        let by_name = match lower.as_str() {
            "alpha_seq" | "(alpha)" => Some(SequenceId::AlphaSeq),
            "(delta)" => Some(SequenceId::Delta),
            "(eta)" => Some(SequenceId::Eta),
            "(epsilon)" => Some(SequenceId::Epsilon),
            "(zeta)" => Some(SequenceId::Zeta),
            "(gamma)" => Some(SequenceId::Gamma),
            "s_7" => Some(SequenceId::S7),
            "s_10" => Some(SequenceId::S10),
            "s_18" => Some(SequenceId::S18),
            _ => None,
        };
        if let Some(id) = by_name {
            return Ok(id);
        }
        SequenceId::ALL
            .iter()
            .find(|id| {
                id.spec()
                    .aliases
                    .iter()
                    .any(|alias| alias.eq_ignore_ascii_case(trimmed))
            })
            .copied()
            .ok_or_else(|| Error::UnknownSequence(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SequenceKind {
    SecondKind,
    FirstKind,
}

impl SequenceKind {
    /// Number of transform values entering the defining gcd `M_alpha`.
    pub fn certificate_depth(self) -> usize {
        match self {
            SequenceKind::SecondKind => 3,
            SequenceKind::FirstKind => 4,
        }
    }
}

/// Recurrence parameters.
///
/// Second kind: `(n+1)^2 u_{n+1} - (A n^2 + A n + lambda) u_n + B n^2 u_{n-1} = 0`.
/// First kind: `(n+1)^3 u_{n+1} - (2n+1)(a n^2 + a n + b) u_n + n (c n^2 + d) u_{n-1} = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Params {
    Second { a: i64, b: i64, lambda: i64 },
    First { a: i64, b: i64, c: i64, d: i64 },
}

impl Params {
    pub fn kind(&self) -> SequenceKind {
        match self {
            Params::Second { .. } => SequenceKind::SecondKind,
            Params::First { .. } => SequenceKind::FirstKind,
        }
    }

    /// `u_1` of the recurrence solution: `lambda` or `b`.
    pub fn first_term(&self) -> i64 {
        match *self {
            Params::Second { lambda, .. } => lambda,
            Params::First { b, .. } => b,
        }
    }

    /// Numerator and divisor for `u_{m+1}` given `u_m` and `u_{m-1}`.
    fn step(&self, m: i64) -> (BigInt, BigInt, BigInt) {
        let m = m as i128;
        match *self {
            Params::Second { a, b, lambda } => {
                let (a, b, lambda) = (a as i128, b as i128, lambda as i128);
                let cur = a * m * m + a * m + lambda;
                let prev = -b * m * m;
                (cur.into(), prev.into(), ((m + 1) * (m + 1)).into())
            }
            Params::First { a, b, c, d } => {
                let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
                let cur = (2 * m + 1) * (a * m * m + a * m + b);
                let prev = -m * (c * m * m + d);
                (
                    cur.into(),
                    prev.into(),
                    ((m + 1) * (m + 1) * (m + 1)).into(),
                )
            }
        }
    }

    /// Solves the recurrence for `u_{m+1}`; the division must be exact.
    pub fn next_term(&self, m: usize, current: &BigInt, previous: &BigInt) -> Option<BigInt> {
        let (cur, prev, divisor) = self.step(m as i64);
        let numerator = cur * current + prev * previous;
        exact_div(&numerator, &divisor)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::Second { a, b, lambda } => write!(f, "({a},{b},{lambda})"),
            Params::First { a, b, c, d } => write!(f, "({a},{b},{c},{d})"),
        }
    }
}

/// Which binomial coefficient the closed form uses when an upper argument is negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BinomialConvention {
    Generalized,
    ZeroOnNegativeTop,
}

#[derive(Debug, PartialEq, Eq, Serialize)]
pub struct SequenceSpec {
    pub id: SequenceId,
    pub params: Params,
    pub aliases: &'static [&'static str],
    pub formula_convention: BinomialConvention,
}

impl SequenceSpec {
    pub fn kind(&self) -> SequenceKind {
        self.params.kind()
    }
}

const fn second(
    id: SequenceId,
    a: i64,
    b: i64,
    lambda: i64,
    aliases: &'static [&'static str],
) -> SequenceSpec {
    SequenceSpec {
        id,
        params: Params::Second { a, b, lambda },
        aliases,
        formula_convention: BinomialConvention::Generalized,
    }
}

const fn first(id: SequenceId, p: [i64; 4], aliases: &'static [&'static str]) -> SequenceSpec {
    SequenceSpec {
        id,
        params: Params::First {
            a: p[0],
            b: p[1],
            c: p[2],
            d: p[3],
        },
        aliases,
        formula_convention: BinomialConvention::Generalized,
    }
}

static SPECS: [SequenceSpec; 15] = [
    second(SequenceId::A, 7, -8, 2, &["Franel numbers"]),
    second(SequenceId::B, 9, 27, 3, &[]),
    second(SequenceId::C, 10, 9, 3, &[]),
    second(
        SequenceId::D,
        11,
        -1,
        3,
        &["Apery numbers b_n", "Apery numbers (zeta(2))"],
    ),
    second(SequenceId::E, 12, 32, 4, &[]),
    second(SequenceId::F, 17, 72, 6, &[]),
    first(
        SequenceId::Delta,
        [7, 3, 81, 0],
        &["Almkvist-Zudilin numbers"],
    ),
    first(SequenceId::Eta, [11, 5, 125, 0], &[]),
    first(SequenceId::AlphaSeq, [10, 4, 64, 0], &["Domb numbers"]),
    first(SequenceId::Epsilon, [12, 4, 16, 0], &[]),
    first(SequenceId::Zeta, [9, 3, -27, 0], &[]),
    first(
        SequenceId::Gamma,
        [17, 5, 1, 0],
        &["Apery numbers a_n", "Apery numbers (zeta(3))"],
    ),
    first(SequenceId::S7, [13, 4, -27, 3], &[]),
    first(SequenceId::S10, [6, 2, -64, 4], &["Yang-Zudilin numbers"]),
    first(SequenceId::S18, [14, 6, 192, -12], &[]),
];

pub fn all_specs() -> &'static [SequenceSpec] {
    &SPECS
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TermSource {
    Formula,
    Recurrence,
}

impl TermSource {
    pub fn as_str(self) -> &'static str {
        match self {
            TermSource::Formula => "formula",
            TermSource::Recurrence => "recurrence",
        }
    }
}

impl FromStr for TermSource {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "formula" => Ok(TermSource::Formula),
            "recurrence" => Ok(TermSource::Recurrence),
            other => Err(format!("unknown term source `{other}`")),
        }
    }
}

/// Reading of `eta` and `s18` used for canonical tables. The other thirteen
/// sequences are unaffected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Normalization {
    /// Closed form with generalized binomials; gives the reference `u_1` values.
    #[default]
    Formula,
    /// Recurrence solution, `u_1 = b`.
    Recurrence,
}

/// Contiguous terms `u_0..=u_N` of one sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermTable {
    id: SequenceId,
    source: TermSource,
    terms: Vec<BigInt>,
}

impl TermTable {
    /// Wraps raw terms; `terms` must be non-empty with `terms[0] == 1`.
    pub fn new(id: SequenceId, source: TermSource, terms: Vec<BigInt>) -> Result<Self> {
        match terms.first() {
            Some(t) if t.is_one() => Ok(TermTable { id, source, terms }),
            Some(t) => Err(Error::CacheFormat {
                line: 0,
                message: format!("{id}: u_0 must be 1, got {t}"),
            }),
            None => Err(Error::InsufficientTerms {
                needed: 0,
                available: 0,
            }),
        }
    }

    pub fn id(&self) -> SequenceId {
        self.id
    }

    pub fn spec(&self) -> &'static SequenceSpec {
        self.id.spec()
    }

    pub fn source(&self) -> TermSource {
        self.source
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    /// Largest index held.
    pub fn n_max(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn u1(&self) -> &BigInt {
        &self.terms[1]
    }

    /// Checks that indices `0..=n` are present.
    pub fn require(&self, n: usize) -> Result<&[BigInt]> {
        if n < self.terms.len() {
            Ok(&self.terms[..=n])
        } else {
            Err(Error::InsufficientTerms {
                needed: n,
                available: self.n_max(),
            })
        }
    }

    pub fn truncated(&self, n: usize) -> Result<TermTable> {
        let terms = self.require(n)?.to_vec();
        Ok(TermTable {
            id: self.id,
            source: self.source,
            terms,
        })
    }

    pub fn into_terms(self) -> Vec<BigInt> {
        self.terms
    }
}

/// `u_n` from the closed form under the spec's binomial convention.
///
/// `u_0 = 1` for every sequence. Under the generalized convention the `eta`
/// and `s18` sums evaluate to 2 at `n = 0` because `C(-1, 0) = 1`.
pub fn term_by_formula(spec: &SequenceSpec, n: usize) -> BigInt {
    FormulaEvaluator::new(spec.id, spec.formula_convention, n).term(n)
}

/// `u_n` from the recurrence, given `cache[0..n]`.
pub fn term_by_recurrence(spec: &SequenceSpec, n: usize, cache: &[BigInt]) -> Result<BigInt> {
    recurrence_step(spec.id, &spec.params, n, cache)
}

fn recurrence_step(id: SequenceId, params: &Params, n: usize, cache: &[BigInt]) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    if cache.len() < n {
        return Err(Error::InsufficientTerms {
            needed: n - 1,
            available: cache.len().saturating_sub(1),
        });
    }
    let m = n - 1;
    let zero = BigInt::zero();
    let previous = if m == 0 { &zero } else { &cache[m - 1] };
    params.next_term(m, &cache[m], previous).ok_or_else(|| {
        let (cur, prev, divisor) = params.step(m as i64);
        let numerator = cur * &cache[m] + prev * previous;
        Error::IntegralityViolation {
            sequence: id.to_string(),
            n,
            remainder: num_integer::Integer::mod_floor(&numerator, &divisor),
            divisor,
        }
    })
}

/// Extends `terms` by the recurrence until it holds `0..=n_max`.
fn extend_by_recurrence(
    id: SequenceId,
    params: &Params,
    terms: &mut Vec<BigInt>,
    n_max: usize,
) -> Result<()> {
    while terms.len() <= n_max {
        let n = terms.len();
        let next = recurrence_step(id, params, n, terms)?;
        terms.push(next);
    }
    Ok(())
}

/// Solves an arbitrary parameter tuple out to `n_max`.
pub fn solve_recurrence(params: &Params, n_max: usize) -> Result<Vec<BigInt>> {
    let mut terms = vec![BigInt::one()];
    // the id only labels errors
    extend_by_recurrence(SequenceId::A, params, &mut terms, n_max).map_err(|e| match e {
        Error::IntegralityViolation {
            n,
            remainder,
            divisor,
            ..
        } => Error::IntegralityViolation {
            sequence: params.to_string(),
            n,
            remainder,
            divisor,
        },
        other => other,
    })?;
    Ok(terms)
}

/// Contiguous table `0..=n_max` from one source.
pub fn generate(spec: &SequenceSpec, source: TermSource, n_max: usize) -> Result<TermTable> {
    let terms = match source {
        TermSource::Formula => formula_terms(spec.id, spec.formula_convention, n_max),
        TermSource::Recurrence => {
            let mut terms = vec![BigInt::one()];
            extend_by_recurrence(spec.id, &spec.params, &mut terms, n_max)?;
            terms
        }
    };
    Ok(TermTable {
        id: spec.id,
        source,
        terms,
    })
}

/// Closed-form terms `0..=n_max` under an explicit convention.
pub fn formula_terms(id: SequenceId, convention: BinomialConvention, n_max: usize) -> Vec<BigInt> {
    let evaluator = FormulaEvaluator::new(id, convention, n_max);
    (0..=n_max)
        .into_par_iter()
        .map(|n| evaluator.term(n))
        .collect()
}

/// Length of the closed-form prefix certified before switching to the recurrence.
const CANONICAL_PREFIX: usize = 12;

/// The table every certificate is computed from.
///
/// Terms beyond a short closed-form prefix come from the recurrence; for the
/// doubled `eta`/`s18` reading the recurrence is run on `1, 2u_1, 2u_2` from
/// `n = 3` on, which is valid by linearity once `u_0` no longer enters.
pub fn canonical_table(
    spec: &SequenceSpec,
    n_max: usize,
    normalization: Normalization,
) -> Result<TermTable> {
    let doubled = spec.id.has_doubled_formula() && normalization == Normalization::Formula;
    let source = if spec.id.has_doubled_formula() && normalization == Normalization::Recurrence {
        TermSource::Recurrence
    } else {
        TermSource::Formula
    };
    let prefix_len = n_max.min(CANONICAL_PREFIX);
    let convention = if source == TermSource::Recurrence {
        BinomialConvention::ZeroOnNegativeTop
    } else {
        spec.formula_convention
    };
    let report = cross_check_with(spec, convention, prefix_len.max(1));
    let expected = if doubled {
        CrossCheckStatus::DoubledFormula
    } else {
        CrossCheckStatus::Equal
    };
    if report.status != expected {
        return Err(Error::PrefixMismatch {
            sequence: spec.id.to_string(),
            index: report.first_divergence.unwrap_or(0),
        });
    }
    let mut terms = if doubled {
        let mut t = formula_terms(spec.id, spec.formula_convention, prefix_len);
        t[0] = BigInt::one();
        t
    } else {
        generate(spec, TermSource::Recurrence, prefix_len)?.terms
    };
    // Past the prefix (length >= 3 whenever extension happens) each step only
    // reads u_m and u_{m-1} with m - 1 >= 1, so it is linear in the doubled terms.
    extend_by_recurrence(spec.id, &spec.params, &mut terms, n_max)?;
    terms.truncate(n_max + 1);
    Ok(TermTable {
        id: spec.id,
        source,
        terms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CrossCheckStatus {
    Equal,
    DoubledFormula,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub status: CrossCheckStatus,
    pub first_divergence: Option<usize>,
}

/// Compares the closed form (spec convention) with the recurrence on `0..=n_max`.
pub fn cross_check(spec: &SequenceSpec, n_max: usize) -> CrossCheckReport {
    cross_check_with(spec, spec.formula_convention, n_max)
}

pub fn cross_check_with(
    spec: &SequenceSpec,
    convention: BinomialConvention,
    n_max: usize,
) -> CrossCheckReport {
    let formula = formula_terms(spec.id, convention, n_max);
    let recurrence = match generate(spec, TermSource::Recurrence, n_max) {
        Ok(t) => t.terms,
        Err(Error::IntegralityViolation { n, .. }) => {
            return CrossCheckReport {
                status: CrossCheckStatus::Mismatch,
                first_divergence: Some(n),
            }
        }
        Err(_) => unreachable!("recurrence generation only fails on integrality"),
    };
    compare_tables(&formula, &recurrence)
}

/// Classifies two equally long tables as equal, doubled (`f_n = 2 r_n` for `n >= 1`), or mismatched.
pub fn compare_tables(formula: &[BigInt], recurrence: &[BigInt]) -> CrossCheckReport {
    let equal_from = formula.iter().zip(recurrence).position(|(f, r)| f != r);
    let Some(first) = equal_from else {
        return CrossCheckReport {
            status: CrossCheckStatus::Equal,
            first_divergence: None,
        };
    };
    let doubled_break = formula
        .iter()
        .zip(recurrence)
        .enumerate()
        .skip(1)
        .position(|(_, (f, r))| *f != r * 2u32)
        .map(|p| p + 1);
    if first >= 1 && doubled_break.is_none() && formula[0] == recurrence[0] {
        CrossCheckReport {
            status: CrossCheckStatus::DoubledFormula,
            first_divergence: Some(first),
        }
    } else {
        CrossCheckReport {
            status: CrossCheckStatus::Mismatch,
            first_divergence: Some(first),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn catalogue_shape() {
        let second = all_specs()
            .iter()
            .filter(|s| s.kind() == SequenceKind::SecondKind)
            .count();
        assert_eq!(second, 6);
        assert_eq!(all_specs().len() - second, 9);
        for (i, spec) in all_specs().iter().enumerate() {
            assert_eq!(spec.id as usize, i);
        }
        assert_eq!(
            SequenceId::D.spec().params,
            Params::Second {
                a: 11,
                b: -1,
                lambda: 3
            }
        );
        assert_eq!(
            SequenceId::Gamma.spec().params,
            Params::First {
                a: 17,
                b: 5,
                c: 1,
                d: 0
            }
        );
        assert_eq!(
            SequenceId::S18.spec().params,
            Params::First {
                a: 14,
                b: 6,
                c: 192,
                d: -12
            }
        );
    }

    #[test]
    fn parses_ids_and_aliases() {
        for id in SequenceId::ALL {
            assert_eq!(id.as_str().parse::<SequenceId>().unwrap(), id);
        }
        assert_eq!(
            "Domb numbers".parse::<SequenceId>().unwrap(),
            SequenceId::AlphaSeq
        );
        assert_eq!(
            "franel numbers".parse::<SequenceId>().unwrap(),
            SequenceId::A
        );
        assert!(matches!(
            "s11".parse::<SequenceId>(),
            Err(Error::UnknownSequence(_))
        ));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(
            term_by_formula(SequenceId::Gamma.spec(), 1),
            BigInt::from(5)
        );
        assert_eq!(term_by_formula(SequenceId::D.spec(), 4), BigInt::from(1251));
        assert_eq!(term_by_formula(SequenceId::A.spec(), 2), BigInt::from(10));
        assert_eq!(term_by_formula(SequenceId::Eta.spec(), 1), BigInt::from(10));
        for spec in all_specs() {
            assert_eq!(term_by_formula(spec, 0), BigInt::one(), "{}", spec.id);
        }
    }

    #[test]
    fn recurrence_examples() {
        let d = SequenceId::D.spec();
        assert_eq!(
            term_by_recurrence(d, 2, &ints(&[1, 3])).unwrap(),
            BigInt::from(19)
        );
        for spec in all_specs()
            .iter()
            .filter(|s| s.kind() == SequenceKind::SecondKind)
        {
            assert_eq!(
                term_by_recurrence(spec, 1, &ints(&[1])).unwrap(),
                BigInt::from(spec.params.first_term())
            );
        }
        let g = SequenceId::Gamma.spec();
        assert_eq!(
            term_by_recurrence(g, 2, &ints(&[1, 5])).unwrap(),
            BigInt::from(73)
        );
        assert!(matches!(
            term_by_recurrence(g, 3, &ints(&[1, 5])),
            Err(Error::InsufficientTerms { .. })
        ));
    }

    #[test]
    fn corrupted_cache_breaks_integrality() {
        let d = SequenceId::D.spec();
        let err = term_by_recurrence(d, 2, &ints(&[1, 4])).unwrap_err();
        assert!(
            matches!(err, Error::IntegralityViolation { n: 2, .. }),
            "{err}"
        );
        let bogus = Params::Second {
            a: 1,
            b: 0,
            lambda: 1,
        };
        assert!(matches!(
            solve_recurrence(&bogus, 5),
            Err(Error::IntegralityViolation { .. })
        ));
    }

    #[test]
    fn generate_examples() {
        let table = generate(SequenceId::D.spec(), TermSource::Formula, 4).unwrap();
        assert_eq!(table.terms(), &ints(&[1, 3, 19, 147, 1251])[..]);
        let table = generate(SequenceId::S10.spec(), TermSource::Formula, 2).unwrap();
        assert_eq!(table.terms(), &ints(&[1, 2, 18])[..]);
        let table = generate(SequenceId::E.spec(), TermSource::Formula, 3).unwrap();
        assert_eq!(table.terms(), &ints(&[1, 4, 20, 112])[..]);
        let table = generate(SequenceId::S18.spec(), TermSource::Recurrence, 3).unwrap();
        assert_eq!(table.terms(), &ints(&[1, 6, 54, 564])[..]);
    }

    #[test]
    fn cross_check_examples() {
        assert_eq!(
            cross_check(SequenceId::D.spec(), 50).status,
            CrossCheckStatus::Equal
        );
        let eta = cross_check(SequenceId::Eta.spec(), 50);
        assert_eq!(eta.status, CrossCheckStatus::DoubledFormula);
        assert_eq!(eta.first_divergence, Some(1));
        assert_eq!(
            cross_check(SequenceId::S18.spec(), 50).status,
            CrossCheckStatus::DoubledFormula
        );
    }

    #[test]
    fn compare_tables_classification() {
        let r = compare_tables(&ints(&[1, 2, 3]), &ints(&[1, 2, 4]));
        assert_eq!(r.status, CrossCheckStatus::Mismatch);
        assert_eq!(r.first_divergence, Some(2));
        let r = compare_tables(&ints(&[1, 4, 6]), &ints(&[1, 2, 4]));
        assert_eq!(r.status, CrossCheckStatus::Mismatch);
        let r = compare_tables(&ints(&[1, 4, 8]), &ints(&[1, 2, 4]));
        assert_eq!(r.status, CrossCheckStatus::DoubledFormula);
    }

    #[test]
    fn canonical_tables_extend_the_formula() {
        for spec in all_specs() {
            let canonical = canonical_table(spec, 40, Normalization::Formula).unwrap();
            let mut formula = formula_terms(spec.id, BinomialConvention::Generalized, 40);
            formula[0] = BigInt::one();
            assert_eq!(canonical.terms(), &formula[..], "{}", spec.id);
        }
        let eta = canonical_table(SequenceId::Eta.spec(), 3, Normalization::Recurrence).unwrap();
        assert_eq!(eta.terms(), &ints(&[1, 5, 35, 275])[..]);
        assert_eq!(eta.source(), TermSource::Recurrence);
        let short = canonical_table(SequenceId::S18.spec(), 1, Normalization::Formula).unwrap();
        assert_eq!(short.terms(), &ints(&[1, 12])[..]);
    }

    #[test]
    fn table_accessors() {
        let t = generate(SequenceId::A.spec(), TermSource::Recurrence, 5).unwrap();
        assert_eq!(t.n_max(), 5);
        assert_eq!(t.u1(), &BigInt::from(2));
        assert!(t.require(6).is_err());
        assert_eq!(t.truncated(2).unwrap().terms(), &ints(&[1, 2, 10])[..]);
        assert!(TermTable::new(SequenceId::A, TermSource::Formula, ints(&[2])).is_err());
    }
}

use std::fmt;
use std::io::{self, BufWriter, Write};

use apery_core::congruence::{
    gauss_check, theorem1_check, theorem2_check, CongruenceCertificate, GaussReport,
    Theorem1Report, Verdict,
};
use apery_core::operators::{
    operator_to_recurrence, transformed_operator_for, Recurrence, ThetaOperator,
};
use apery_core::sequences::{Normalization, SequenceId};
use apery_core::suite::{
    run_suite, table_rows, CheckRecord, Status, SuiteConfig, SuiteSizes, TableRow, FIXTURE_VERSION,
    SCHEMA_VERSION,
};
use apery_core::transforms::binomial_transform;
use apery_core::Error;
use num_bigint::BigInt;
use serde::Serialize;

use crate::output::{emit, Format, Row};
use crate::store::{Source, Store};
use crate::{exit, parse_ids, Cli, Command};

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Integrity(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => exit::CONFIG,
            Failure::Integrity(_) => exit::INTEGRITY,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "{m}"),
            Failure::Integrity(m) => write!(f, "integrity violation: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IntegralityViolation { .. } | Error::PrefixMismatch { .. } => {
                Failure::Integrity(e.to_string())
            }
            other => Failure::Config(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

pub fn run(cli: Cli) -> u8 {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.parallelism.map_or(0, usize::from))
        .build();
    let result = match pool {
        Ok(pool) => pool.install(|| dispatch(&cli)),
        Err(e) => Err(Failure::Config(e.to_string())),
    };
    match result {
        Ok(true) => exit::OK,
        Ok(false) => exit::CHECK_FAILED,
        Err(f) => {
            eprintln!("apery: {f}");
            f.code()
        }
    }
}

struct Ctx {
    format: Format,
    normalization: Normalization,
    max_n: usize,
}

impl Ctx {
    fn check_n(&self, n_max: usize) -> Result<(), Failure> {
        if n_max > self.max_n {
            return Err(Failure::Config(format!(
                "--n-max {n_max} exceeds the cap {} (raise with --max-n)",
                self.max_n
            )));
        }
        Ok(())
    }

    fn emit<T: Row>(&self, records: &[T]) -> Result<(), Failure> {
        let stdout = io::stdout();
        let mut out = BufWriter::new(stdout.lock());
        emit(self.format, records, &mut out)?;
        out.flush()?;
        Ok(())
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let ctx = Ctx {
        format: cli.format,
        normalization: cli.eta_normalization.into(),
        max_n: cli.max_n,
    };
    let config = |e: String| Failure::Config(e);
    match &cli.command {
        Command::Terms {
            selection,
            n_max,
            source,
        } => {
            let ids = parse_ids(selection).map_err(config)?;
            ctx.check_n(*n_max)?;
            let mut store = Store::open(cli.cache.clone(), ctx.normalization)?;
            let result = terms(&ctx, &mut store, &ids, *n_max, *source);
            store.flush()?;
            result
        }
        Command::Transform {
            selection,
            alpha,
            n_max,
            source,
        } => {
            let ids = parse_ids(selection).map_err(config)?;
            ctx.check_n(*n_max)?;
            let mut store = Store::open(cli.cache.clone(), ctx.normalization)?;
            let result = transform(&ctx, &mut store, &ids, *alpha, *n_max, *source);
            store.flush()?;
            result
        }
        Command::Certify {
            selection,
            alpha,
            n_max,
            alpha_min,
            alpha_max,
        } => {
            let ids = parse_ids(selection).map_err(config)?;
            ctx.check_n(*n_max)?;
            if *n_max < 4 {
                return Err(Failure::Config("certify needs --n-max >= 4".into()));
            }
            if alpha_min > alpha_max {
                return Err(Failure::Config("--alpha-min exceeds --alpha-max".into()));
            }
            let mut store = Store::open(cli.cache.clone(), ctx.normalization)?;
            let result = certify(
                &ctx,
                &mut store,
                &ids,
                *alpha,
                *n_max,
                *alpha_min..=*alpha_max,
            );
            store.flush()?;
            result
        }
        Command::Tables { n_max } => {
            ctx.check_n(*n_max)?;
            tables(&ctx, (*n_max).max(4))
        }
        Command::Gauss {
            selection,
            alpha,
            primes,
            n_max,
        } => {
            let ids = parse_ids(selection).map_err(config)?;
            ctx.check_n(*n_max)?;
            if primes.is_empty() || primes.iter().any(|&p| !apery_core::exact_math::is_prime(p)) {
                return Err(Failure::Config(format!(
                    "--primes must be a nonempty list of primes, got {primes:?}"
                )));
            }
            if *n_max < 2 {
                return Err(Failure::Config("gauss needs --n-max >= 2".into()));
            }
            let mut store = Store::open(cli.cache.clone(), ctx.normalization)?;
            let result = gauss(&ctx, &mut store, &ids, *alpha, primes, *n_max);
            store.flush()?;
            result
        }
        Command::Recurrence { seq_id, alpha } => {
            let id: SequenceId = seq_id
                .parse()
                .map_err(|e: Error| Failure::Config(e.to_string()))?;
            recurrence(&ctx, id, *alpha)
        }
        Command::Verify {
            only,
            timings,
            quick,
        } => {
            let config = SuiteConfig {
                normalization: ctx.normalization,
                only: only.clone(),
                sizes: if *quick {
                    SuiteSizes::quick()
                } else {
                    SuiteSizes::default()
                },
                timings: *timings,
            };
            verify(&ctx, &config)
        }
    }
}

fn dec(v: &BigInt) -> String {
    v.to_string()
}

#[derive(Serialize)]
struct TermRecord {
    schema_version: u32,
    sequence: SequenceId,
    source: &'static str,
    n: usize,
    #[serde(with = "apery_core::decimal")]
    value: BigInt,
}

impl Row for TermRecord {
    const HEADERS: &'static [&'static str] = &["sequence", "source", "n", "value"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.sequence.to_string(),
            self.source.into(),
            self.n.to_string(),
            dec(&self.value),
        ]
    }
}

fn terms(
    ctx: &Ctx,
    store: &mut Store,
    ids: &[SequenceId],
    n_max: usize,
    source: Source,
) -> Outcome {
    let mut records = Vec::new();
    for &id in ids {
        let table = store.table(id, source, n_max)?;
        let label = match source {
            Source::Formula => "formula",
            Source::Recurrence => "recurrence",
            Source::Canonical => "canonical",
        };
        records.extend(
            table
                .into_terms()
                .into_iter()
                .enumerate()
                .map(|(n, value)| TermRecord {
                    schema_version: SCHEMA_VERSION,
                    sequence: id,
                    source: label,
                    n,
                    value,
                }),
        );
    }
    ctx.emit(&records)?;
    Ok(true)
}

#[derive(Serialize)]
struct TransformRecord {
    schema_version: u32,
    sequence: SequenceId,
    #[serde(with = "apery_core::decimal")]
    alpha: BigInt,
    n: usize,
    #[serde(with = "apery_core::decimal")]
    value: BigInt,
}

impl Row for TransformRecord {
    const HEADERS: &'static [&'static str] = &["sequence", "alpha", "n", "value"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.sequence.to_string(),
            dec(&self.alpha),
            self.n.to_string(),
            dec(&self.value),
        ]
    }
}

fn transform(
    ctx: &Ctx,
    store: &mut Store,
    ids: &[SequenceId],
    alpha: Option<i64>,
    n_max: usize,
    source: Source,
) -> Outcome {
    let mut records = Vec::new();
    for &id in ids {
        let table = store.table(id, source, n_max.max(1))?;
        let alpha = alpha.map_or_else(|| table.u1().clone(), BigInt::from);
        let v = binomial_transform(&table, &alpha, n_max)?;
        records.extend(
            v.values()
                .iter()
                .enumerate()
                .map(|(n, value)| TransformRecord {
                    schema_version: SCHEMA_VERSION,
                    sequence: id,
                    alpha: alpha.clone(),
                    n,
                    value: value.clone(),
                }),
        );
    }
    ctx.emit(&records)?;
    Ok(true)
}

#[derive(Serialize)]
#[serde(untagged)]
enum CertBody {
    Certificate(CongruenceCertificate),
    Theorem1(Theorem1Report),
}

#[derive(Serialize)]
struct CertifyRecord {
    schema_version: u32,
    check_name: &'static str,
    #[serde(flatten)]
    body: CertBody,
}

impl CertifyRecord {
    fn verdict(&self) -> &Verdict {
        match &self.body {
            CertBody::Certificate(c) => &c.verdict,
            CertBody::Theorem1(r) => &r.verdict,
        }
    }
}

impl Row for CertifyRecord {
    const HEADERS: &'static [&'static str] = &[
        "check",
        "sequence",
        "alpha",
        "M",
        "modulus",
        "squarefree_part",
        "stable_from",
        "n_verified",
        "status",
        "witness",
    ];
    fn cells(&self) -> Vec<String> {
        let (seq, alpha, m, modulus, sf, stable, n) = match &self.body {
            CertBody::Certificate(c) => (
                c.sequence,
                dec(&c.alpha),
                dec(&c.m_alpha),
                dec(&c.m_alpha),
                dec(&c.m_squarefree_part),
                c.stable_from.to_string(),
                c.verified_to,
            ),
            CertBody::Theorem1(r) => (
                r.sequence,
                dec(&r.alpha),
                dec(&r.m_alpha),
                dec(&r.modulus),
                String::new(),
                String::new(),
                r.verified_to,
            ),
        };
        let v = self.verdict();
        vec![
            self.check_name.into(),
            seq.to_string(),
            alpha,
            m,
            modulus,
            sf,
            stable,
            n.to_string(),
            v.label().into(),
            v.witness().unwrap_or("").into(),
        ]
    }
}

fn certify(
    ctx: &Ctx,
    store: &mut Store,
    ids: &[SequenceId],
    alpha: Option<i64>,
    n_max: usize,
    alphas: std::ops::RangeInclusive<i64>,
) -> Outcome {
    let tables = ids
        .iter()
        .map(|&id| store.table(id, Source::Canonical, n_max))
        .collect::<Result<Vec<_>, _>>()?;
    let per_table: Vec<Vec<CertifyRecord>> = {
        use rayon::prelude::*;
        tables
            .par_iter()
            .map(|table| {
                let mut out = vec![CertifyRecord {
                    schema_version: SCHEMA_VERSION,
                    check_name: "u_n ≡ u1^n (mod M_u1)",
                    body: CertBody::Certificate(theorem2_check(table, n_max, alphas.clone())?),
                }];
                if let Some(a) = alpha {
                    out.push(CertifyRecord {
                        schema_version: SCHEMA_VERSION,
                        check_name: "u_n ≡ alpha^n (mod radical(M_alpha))",
                        body: CertBody::Theorem1(theorem1_check(table, &BigInt::from(a), n_max)?),
                    });
                }
                Ok(out)
            })
            .collect::<Result<_, Error>>()?
    };
    let records: Vec<CertifyRecord> = per_table.into_iter().flatten().collect();
    ctx.emit(&records)?;
    Ok(records.iter().all(|r| !r.verdict().is_failure()))
}

#[derive(Serialize)]
struct TableRecord {
    schema_version: u32,
    fixture_version: u32,
    #[serde(flatten)]
    row: TableRow,
}

impl Row for TableRecord {
    const HEADERS: &'static [&'static str] = &[
        "sequence",
        "aliases",
        "u1",
        "N",
        "stable_to",
        "expected_u1",
        "expected_N",
        "match",
    ];
    fn cells(&self) -> Vec<String> {
        let r = &self.row;
        vec![
            r.sequence.to_string(),
            r.aliases.join("; "),
            dec(&r.u1),
            dec(&r.n),
            r.stable_to.to_string(),
            r.expected_u1.to_string(),
            r.expected_n.to_string(),
            if r.matches { "yes" } else { "NO" }.into(),
        ]
    }
}

fn tables(ctx: &Ctx, depth: usize) -> Outcome {
    let records: Vec<TableRecord> = table_rows(ctx.normalization, depth)?
        .into_iter()
        .map(|row| TableRecord {
            schema_version: SCHEMA_VERSION,
            fixture_version: FIXTURE_VERSION,
            row,
        })
        .collect();
    ctx.emit(&records)?;
    let matched = records.iter().filter(|r| r.row.matches).count();
    eprintln!("{matched}/{} rows match", records.len());
    Ok(matched == records.len())
}

#[derive(Serialize)]
struct GaussRecord {
    schema_version: u32,
    #[serde(flatten)]
    report: GaussReport,
}

impl Row for GaussRecord {
    const HEADERS: &'static [&'static str] = &[
        "sequence", "alpha", "primes", "n_max", "triples", "status", "witness",
    ];
    fn cells(&self) -> Vec<String> {
        let r = &self.report;
        let primes: Vec<String> = r.primes.iter().map(u64::to_string).collect();
        vec![
            r.sequence.to_string(),
            dec(&r.alpha),
            primes.join(" "),
            r.n_max.to_string(),
            r.checked.to_string(),
            r.verdict.label().into(),
            r.verdict.witness().unwrap_or("").into(),
        ]
    }
}

fn gauss(
    ctx: &Ctx,
    store: &mut Store,
    ids: &[SequenceId],
    alpha: Option<i64>,
    primes: &[u64],
    n_max: usize,
) -> Outcome {
    use rayon::prelude::*;
    let tables = ids
        .iter()
        .map(|&id| store.table(id, Source::Canonical, n_max))
        .collect::<Result<Vec<_>, _>>()?;
    let jobs: Vec<_> = tables
        .iter()
        .flat_map(|t| {
            let alphas = match alpha {
                Some(a) => vec![BigInt::from(a)],
                None => vec![BigInt::from(0), t.u1().clone()],
            };
            alphas.into_iter().map(move |a| (t, a))
        })
        .collect();
    let records = jobs
        .par_iter()
        .map(|(t, a)| {
            Ok(GaussRecord {
                schema_version: SCHEMA_VERSION,
                report: gauss_check(t, a, primes, n_max)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    ctx.emit(&records)?;
    Ok(records.iter().all(|r| !r.report.verdict.is_failure()))
}

#[derive(Serialize)]
struct RecurrenceRecord {
    schema_version: u32,
    sequence: SequenceId,
    #[serde(with = "apery_core::decimal")]
    alpha: BigInt,
    operator: ThetaOperator,
    recurrence: Recurrence,
    text: String,
}

impl Row for RecurrenceRecord {
    const HEADERS: &'static [&'static str] = &["sequence", "alpha", "order", "recurrence"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.sequence.to_string(),
            dec(&self.alpha),
            self.recurrence.order().to_string(),
            self.text.clone(),
        ]
    }
}

fn recurrence(ctx: &Ctx, id: SequenceId, alpha: i64) -> Outcome {
    let alpha = BigInt::from(alpha);
    let operator = transformed_operator_for(&id.spec().params, &alpha);
    let rec = operator_to_recurrence(&operator);
    let record = RecurrenceRecord {
        schema_version: SCHEMA_VERSION,
        sequence: id,
        alpha,
        text: rec.to_string(),
        operator,
        recurrence: rec,
    };
    if ctx.format == Format::Text {
        println!("{}", record.text);
    } else {
        ctx.emit(&[record])?;
    }
    Ok(true)
}

impl Row for CheckRecord {
    const HEADERS: &'static [&'static str] = &[
        "group",
        "check",
        "sequence",
        "params",
        "status",
        "witness",
        "duration_ms",
    ];
    fn cells(&self) -> Vec<String> {
        vec![
            self.group.to_string(),
            self.check_name.clone(),
            self.sequence.map(|s| s.to_string()).unwrap_or_default(),
            self.params.clone(),
            self.status.as_str().into(),
            self.witness.clone().unwrap_or_default(),
            self.duration_ms.map(|d| d.to_string()).unwrap_or_default(),
        ]
    }
}

fn verify(ctx: &Ctx, config: &SuiteConfig) -> Outcome {
    let report = run_suite(config)?;
    ctx.emit(&report.records)?;
    let count = |s: Status| report.records.iter().filter(|r| r.status == s).count();
    eprintln!(
        "{} checks: {} pass, {} fail, {} info",
        report.records.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Info)
    );
    Ok(report.all_passed())
}

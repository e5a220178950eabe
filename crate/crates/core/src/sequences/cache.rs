//! Term cache files: one `seq_id,source,n,decimal_value` record per line.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_traits::One;

use super::{SequenceId, TermSource, TermTable};
use crate::error::{Error, Result};

pub fn save_tables<W: Write>(tables: &[TermTable], mut out: W) -> Result<()> {
    for table in tables {
        for (n, value) in table.terms().iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{}",
                table.id(),
                table.source().as_str(),
                n,
                value
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Reads every table in a cache file, in first-appearance order.
///
/// Records for one `(seq_id, source)` pair must run contiguously from `n = 0`
/// with `u_0 = 1`.
pub fn load_tables<R: BufRead>(input: R) -> Result<Vec<TermTable>> {
    let mut order: Vec<(SequenceId, TermSource)> = Vec::new();
    let mut tables: BTreeMap<(SequenceId, &'static str), Vec<BigInt>> = BTreeMap::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| Error::CacheFormat {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split(',').collect();
        let [id, source, n, value] = fields[..] else {
            return Err(bad(format!("expected 4 fields, got {}", fields.len())));
        };
        let id: SequenceId = id
            .parse()
            .map_err(|_| bad(format!("unknown sequence `{id}`")))?;
        let source: TermSource = source.parse().map_err(bad)?;
        let n: usize = n.parse().map_err(|_| bad(format!("bad index `{n}`")))?;
        let value: BigInt = value
            .parse()
            .map_err(|_| bad(format!("bad value `{value}`")))?;

        let terms = tables.entry((id, source.as_str())).or_insert_with(|| {
            order.push((id, source));
            Vec::new()
        });
        if n != terms.len() {
            return Err(bad(format!(
                "{id}/{}: expected index {}, got {n}",
                source.as_str(),
                terms.len()
            )));
        }
        if n == 0 && !value.is_one() {
            return Err(bad(format!("{id}: u_0 must be 1, got {value}")));
        }
        terms.push(value);
    }
    order
        .into_iter()
        .map(|(id, source)| {
            let terms = tables.remove(&(id, source.as_str())).unwrap_or_default();
            TermTable::new(id, source, terms)
        })
        .collect()
}

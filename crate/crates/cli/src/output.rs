use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON object per line.
    Json,
    Csv,
    /// Aligned columns.
    Text,
}

/// A record that can be rendered as a flat row.
pub trait Row: Serialize {
    const HEADERS: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

pub fn emit<T: Row, W: Write>(format: Format, records: &[T], out: &mut W) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(T::HEADERS)?;
            for r in records {
                w.write_record(r.cells())?;
            }
            w.flush()?;
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = records.iter().map(Row::cells).collect();
            let mut widths: Vec<usize> = T::HEADERS.iter().map(|h| h.chars().count()).collect();
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &mut dyn Iterator<Item = &str>| -> String {
                let parts: Vec<String> = cells
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                parts.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(&mut T::HEADERS.iter().copied()))?;
            for row in &rows {
                writeln!(out, "{}", line(&mut row.iter().map(String::as_str)))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct R {
        a: u32,
        b: String,
    }

    impl Row for R {
        const HEADERS: &'static [&'static str] = &["a", "bee"];
        fn cells(&self) -> Vec<String> {
            vec![self.a.to_string(), self.b.clone()]
        }
    }

    fn render(format: Format) -> String {
        let rows = [
            R {
                a: 1,
                b: "x, y".into(),
            },
            R {
                a: 100,
                b: "z".into(),
            },
        ];
        let mut out = Vec::new();
        emit(format, &rows, &mut out).unwrap();
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn formats() {
        assert_eq!(
            render(Format::Json),
            "{\"a\":1,\"b\":\"x, y\"}\n{\"a\":100,\"b\":\"z\"}\n"
        );
        assert_eq!(render(Format::Csv), "a,bee\n1,\"x, y\"\n100,z\n");
        assert_eq!(render(Format::Text), "a    bee\n1    x, y\n100  z\n");
    }
}

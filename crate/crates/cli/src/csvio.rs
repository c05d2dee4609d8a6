//! CSV input: comma separated, `.` decimals, `#` comment lines and a
//! mandatory header row naming the columns.

use cryoion::physcore::TimeSeries;
use thiserror::Error;

/// Relative tolerance on sample times for uniformly sampled inputs.
pub const UNIFORM_DT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CsvError {
    #[error("{source_name}: no data rows")]
    Empty { source_name: String },
    #[error("{source_name}: header must be '{expected}', found '{found}'")]
    Header {
        source_name: String,
        expected: String,
        found: String,
    },
    #[error("{source_name}:{line}: {message}")]
    Row {
        source_name: String,
        line: u64,
        message: String,
    },
    #[error("{source_name}:{line}: non-uniform sampling, time {found} deviates from {expected} by more than {rel} of dt", rel = UNIFORM_DT_TOLERANCE)]
    NonUniform {
        source_name: String,
        line: u64,
        found: f64,
        expected: f64,
    },
}

/// Which header a file must carry.
#[derive(Clone, Copy, Debug)]
pub enum Columns<'a> {
    /// Exactly these names, optionally followed by the `optional` ones in order.
    Named {
        required: &'a [&'a str],
        optional: &'a [&'a str],
    },
    /// Any non-numeric names, at least one column (pixel grids).
    Any,
}

impl<'a> Columns<'a> {
    pub const fn exact(required: &'a [&'a str]) -> Self {
        Columns::Named { required, optional: &[] }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Records {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// 1-based source line of each row.
    pub lines: Vec<u64>,
}

impl Records {
    pub fn column(&self, i: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[i]).collect()
    }

    pub fn pairs(&self) -> Vec<(f64, f64)> {
        self.rows.iter().map(|r| (r[0], r[1])).collect()
    }

    pub fn has_column(&self, name: &str) -> bool {
        self.header.iter().any(|h| h == name)
    }
}

fn header_ok(found: &[String], columns: Columns) -> bool {
    match columns {
        Columns::Named { required, optional } => {
            let n = found.len();
            n >= required.len()
                && n <= required.len() + optional.len()
                && required.iter().chain(optional.iter()).zip(found).all(|(e, f)| e == f)
        }
        Columns::Any => !found.is_empty() && found.iter().all(|h| !h.is_empty() && h.parse::<f64>().is_err()),
    }
}

fn describe(columns: Columns) -> String {
    match columns {
        Columns::Named { required, optional } => {
            let mut s = required.join(",");
            for o in optional {
                s += &format!("[,{o}]");
            }
            s
        }
        Columns::Any => "one non-numeric name per column".into(),
    }
}

pub fn parse_records(text: &str, source_name: &str, columns: Columns) -> Result<Records, CsvError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    // the reader reports where it started scanning, which may be a skipped
    // blank or comment line; step past those before counting newlines.
    // Records arrive in order, so newlines are counted incrementally.
    let bytes = text.as_bytes();
    let mut counted = (0usize, 1u64);
    let mut line_of = |p: Option<&csv::Position>| {
        let Some(p) = p else { return 0 };
        let mut at = p.byte() as usize;
        while at < bytes.len() && matches!(bytes[at], b'\n' | b'\r' | b'#') {
            if bytes[at] == b'#' {
                at += bytes[at..].iter().position(|&b| b == b'\n').unwrap_or(bytes.len() - at);
            }
            at += 1;
        }
        let at = at.min(bytes.len());
        if at < counted.0 {
            counted = (0, 1);
        }
        counted.1 += bytes[counted.0..at].iter().filter(|&&b| b == b'\n').count() as u64;
        counted.0 = at;
        counted.1
    };
    let row_error = |line: u64, message: String| CsvError::Row {
        source_name: source_name.into(),
        line,
        message,
    };

    let mut header: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for result in reader.records() {
        let record = result.map_err(|e| {
            row_error(line_of(e.position()), e.to_string())
        })?;
        let line = line_of(record.position());
        match &header {
            None => {
                let found: Vec<String> = record.iter().map(String::from).collect();
                if !header_ok(&found, columns) {
                    return Err(CsvError::Header {
                        source_name: source_name.into(),
                        expected: describe(columns),
                        found: found.join(","),
                    });
                }
                header = Some(found);
            }
            Some(h) => {
                if record.len() != h.len() {
                    return Err(row_error(line, format!("expected {} fields, found {}", h.len(), record.len())));
                }
                let mut values = Vec::with_capacity(h.len());
                for (field, name) in record.iter().zip(h) {
                    let v: f64 = field
                        .parse()
                        .map_err(|_| row_error(line, format!("column {name}: '{field}' is not a number")))?;
                    if !v.is_finite() {
                        return Err(row_error(line, format!("column {name}: non-finite value '{field}'")));
                    }
                    values.push(v);
                }
                rows.push(values);
                lines.push(line);
            }
        }
    }
    let Some(header) = header else {
        return Err(CsvError::Empty {
            source_name: source_name.into(),
        });
    };
    if rows.is_empty() {
        return Err(CsvError::Empty {
            source_name: source_name.into(),
        });
    }
    Ok(Records { header, rows, lines })
}

/// Column `value` against column 0 as a uniformly sampled record.
pub fn to_series(records: &Records, source_name: &str, value: usize) -> Result<TimeSeries, CsvError> {
    let t = records.column(0);
    let n = t.len();
    if n < 2 {
        return Err(CsvError::Empty {
            source_name: source_name.into(),
        });
    }
    let dt = (t[n - 1] - t[0]) / (n - 1) as f64;
    if !(dt > 0.0) {
        return Err(CsvError::Row {
            source_name: source_name.into(),
            line: records.lines[n - 1],
            message: "time column must increase".into(),
        });
    }
    for (i, &ti) in t.iter().enumerate() {
        let expected = t[0] + i as f64 * dt;
        if (ti - expected).abs() > UNIFORM_DT_TOLERANCE * dt {
            return Err(CsvError::NonUniform {
                source_name: source_name.into(),
                line: records.lines[i],
                found: ti,
                expected,
            });
        }
    }
    TimeSeries::new(t[0], dt, records.column(value)).map_err(|e| CsvError::Row {
        source_name: source_name.into(),
        line: records.lines[0],
        message: e.to_string(),
    })
}

/// Writes a numeric table with a header, shortest round-trip formatting.
pub fn write_table(columns: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(columns).expect("in-memory write");
    for r in rows {
        writer
            .write_record(r.iter().map(|v| v.to_string()))
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("ASCII output")
}

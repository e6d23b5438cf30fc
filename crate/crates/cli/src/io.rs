//! File and flag parsing shared by the command handlers: the vector JSON
//! schema, stream specs, and the two-class error type behind the
//! exit-code contract.

use std::fmt;
use std::fs;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use tsirelson_core::ordinal::{parse_ordinal, OrdinalCnf};
use tsirelson_core::rat::{format_rational, parse_rational, Rational};
use tsirelson_core::stream::IndexStream;
use tsirelson_core::vector::RationalVector;

/// Errors split by exit code: usage problems (bad flag values, exit 2)
/// versus computation problems (file contents, domain errors, exit 1).
#[derive(Debug)]
pub enum CliError {
    /// A flag carried an unusable value; the message names the flag.
    Usage(String),
    /// The computation itself failed; the message carries the underlying
    /// error verbatim.
    Computation(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Computation(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<tsirelson_core::Error> for CliError {
    fn from(e: tsirelson_core::Error) -> Self {
        CliError::Computation(e.to_string())
    }
}

/// One `(index, value)` entry of the vector file schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorFileEntry {
    /// 1-based basis index.
    pub i: u64,
    /// Exact value as a `"num/den"` (or integer) string.
    pub v: String,
}

/// The vector file schema: `{"entries": [{"i": 3, "v": "2/3"}, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorFile {
    /// Entries with strictly increasing indices and nonzero values.
    pub entries: Vec<VectorFileEntry>,
}

/// Reads and validates a vector file.
pub fn load_vector(path: &Path) -> Result<RationalVector, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Computation(format!("{}: {e}", path.display())))?;
    let file: VectorFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Computation(format!("{}: {e}", path.display())))?;
    vector_from_file(&file).map_err(|m| CliError::Computation(format!("{}: {m}", path.display())))
}

/// Converts the schema into a canonical vector; the error message names
/// the offending entry.
pub fn vector_from_file(file: &VectorFile) -> Result<RationalVector, String> {
    let mut entries: Vec<(u64, Rational)> = Vec::with_capacity(file.entries.len());
    for (k, e) in file.entries.iter().enumerate() {
        if e.i == 0 {
            return Err(format!("entry {k}: indices start at 1"));
        }
        if let Some((prev, _)) = entries.last() {
            if e.i <= *prev {
                return Err(format!(
                    "entry {k} (i={}): indices must strictly increase",
                    e.i
                ));
            }
        }
        let v = parse_rational(&e.v)
            .map_err(|_| format!("entry {k} (i={}): malformed value '{}'", e.i, e.v))?;
        if v.is_zero() {
            return Err(format!("entry {k} (i={}): zero values are not stored", e.i));
        }
        entries.push((e.i, v));
    }
    RationalVector::from_entries(entries).map_err(|e| e.to_string())
}

/// Renders a canonical vector in the file schema.
pub fn vector_to_file(x: &RationalVector) -> VectorFile {
    VectorFile {
        entries: x
            .entries()
            .iter()
            .map(|(i, v)| VectorFileEntry {
                i: *i,
                v: format_rational(v),
            })
            .collect(),
    }
}

/// Parses a stream spec:
/// `naturals` | `evens` | `odds` | `arith:START:STEP` | `from:A,B,C:STEP`.
pub fn parse_stream_spec(text: &str) -> Result<IndexStream, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "unknown stream spec '{text}' (expected naturals, evens, odds, \
             arith:START:STEP, or from:A,B,C:STEP)"
        ))
    };
    match text {
        "naturals" | "nat" => return Ok(IndexStream::naturals()),
        "evens" => return Ok(IndexStream::evens()),
        "odds" => return IndexStream::arithmetic(1, 2).map_err(CliError::from),
        _ => {}
    }
    if let Some(rest) = text.strip_prefix("arith:") {
        let (start, step) = rest.split_once(':').ok_or_else(bad)?;
        let start: u64 = start.trim().parse().map_err(|_| bad())?;
        let step: u64 = step.trim().parse().map_err(|_| bad())?;
        return IndexStream::arithmetic(start, step).map_err(CliError::from);
    }
    if let Some(rest) = text.strip_prefix("from:") {
        let (prefix, step) = rest.rsplit_once(':').ok_or_else(bad)?;
        let prefix = parse_u64_list(prefix).map_err(|_| bad())?;
        let step: u64 = step.trim().parse().map_err(|_| bad())?;
        return IndexStream::explicit_then_arithmetic(prefix, step).map_err(CliError::from);
    }
    Err(bad())
}

/// Parses a comma-separated list of naturals; the empty string is the
/// empty list.
pub fn parse_u64_list(text: &str) -> Result<Vec<u64>, CliError> {
    let s = text.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("malformed natural number '{p}'")))
        })
        .collect()
}

/// Parses a comma-separated list of exact rationals.
pub fn parse_rational_list(text: &str, flag: &str) -> Result<Vec<Rational>, CliError> {
    let s = text.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            parse_rational(p)
                .map_err(|_| CliError::Usage(format!("{flag}: malformed rational '{p}'")))
        })
        .collect()
}

/// Parses a single rational flag value.
pub fn parse_rational_flag(text: &str, flag: &str) -> Result<Rational, CliError> {
    parse_rational(text)
        .map_err(|_| CliError::Usage(format!("{flag}: malformed rational '{text}'")))
}

/// Parses an ordinal flag value.
pub fn parse_ordinal_flag(text: &str, flag: &str) -> Result<OrdinalCnf, CliError> {
    parse_ordinal(text).map_err(|e| CliError::Usage(format!("{flag}: {e}")))
}

/// Resolves a budget: explicit flag first, then the environment variable,
/// then the default.
pub fn resolve_budget(flag: Option<u64>, env_key: &str, default: u64) -> Result<u64, CliError> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var(env_key) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{env_key} must be a natural number, got '{s}'"))),
        Err(_) => Ok(default),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tsirelson_core::rat::q;

    #[test]
    fn vector_schema_round_trips() {
        let x = RationalVector::from_entries(vec![(2, q(1, 2)), (4, q(-2, 3))]).unwrap();
        let file = vector_to_file(&x);
        let json = serde_json::to_string(&file).unwrap();
        let back: VectorFile = serde_json::from_str(&json).unwrap();
        assert_eq!(vector_from_file(&back).unwrap(), x);
    }

    #[test]
    fn vector_schema_rejects_non_canonical_input() {
        let bad = |entries: Vec<(u64, &str)>| {
            let file = VectorFile {
                entries: entries
                    .into_iter()
                    .map(|(i, v)| VectorFileEntry { i, v: v.into() })
                    .collect(),
            };
            vector_from_file(&file).unwrap_err()
        };
        assert!(bad(vec![(0, "1")]).contains("entry 0"));
        assert!(bad(vec![(2, "1"), (2, "1")]).contains("strictly increase"));
        assert!(bad(vec![(3, "1"), (2, "1")]).contains("strictly increase"));
        assert!(bad(vec![(1, "x")]).contains("malformed value"));
        assert!(bad(vec![(1, "0/5")]).contains("zero values"));
    }

    #[test]
    fn stream_specs_parse() {
        assert_eq!(
            parse_stream_spec("naturals").unwrap(),
            IndexStream::naturals()
        );
        assert_eq!(parse_stream_spec("evens").unwrap(), IndexStream::evens());
        assert_eq!(
            parse_stream_spec("arith:3:1").unwrap(),
            IndexStream::arithmetic(3, 1).unwrap()
        );
        assert_eq!(
            parse_stream_spec("from:1,4,9:5").unwrap(),
            IndexStream::explicit_then_arithmetic(vec![1, 4, 9], 5).unwrap()
        );
        assert!(matches!(
            parse_stream_spec("bogus"),
            Err(CliError::Usage(_))
        ));
    }
}

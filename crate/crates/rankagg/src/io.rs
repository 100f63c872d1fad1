//! Dataset file reading and writing.
//!
//! The native format is UTF-8 text: an optional first line `# m=<int> n=<int>`,
//! then one ranking per line in bar/comma syntax. Blank lines are ignored and
//! `#`-prefixed lines are comments. A tolerant alternate reader accepts the
//! public benchmark syntax of space-separated rank vectors.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::dataset::{Dataset, DatasetError};
use crate::ranking::{Label, Permutation, Ranking, RankingError};

#[derive(Debug, Error)]
pub enum DatasetFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {source}")]
    Parse {
        path: String,
        line: usize,
        #[source]
        source: RankingError,
    },
    #[error("{path}:{line}: malformed line: {message}")]
    Malformed {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: header declares n={declared} but file contains {found} rankings")]
    CountMismatch {
        path: String,
        declared: usize,
        found: usize,
    },
    #[error("{path}: {source}")]
    Dataset {
        path: String,
        #[source]
        source: DatasetError,
    },
}

/// Which on-disk syntax a reader expects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DatasetFormat {
    /// Native bar/comma rankings, e.g. `1|3,4|2`.
    Bars,
    /// Space-separated rank vectors: token `j` is the rank of label `j`.
    Ranks,
}

struct Header {
    m: usize,
    n: usize,
}

fn parse_header(line: &str) -> Option<Header> {
    let rest = line.strip_prefix('#')?.trim();
    let mut m = None;
    let mut n = None;
    for field in rest.split_whitespace() {
        if let Some(v) = field.strip_prefix("m=") {
            m = v.parse().ok();
        } else if let Some(v) = field.strip_prefix("n=") {
            n = v.parse().ok();
        }
    }
    Some(Header { m: m?, n: n? })
}

/// Reads a dataset in the given syntax.
///
/// Without a header the universe size is inferred: maximum label seen for
/// [`DatasetFormat::Bars`], token count per line for [`DatasetFormat::Ranks`].
pub fn read_dataset(path: &Path, format: DatasetFormat) -> Result<Dataset, DatasetFileError> {
    let display = path.display().to_string();
    let content = fs::read_to_string(path).map_err(|source| DatasetFileError::Io {
        path: display.clone(),
        source,
    })?;
    read_dataset_str(&content, format, &display)
}

/// Parses dataset text; `name` labels error messages.
pub fn read_dataset_str(
    content: &str,
    format: DatasetFormat,
    name: &str,
) -> Result<Dataset, DatasetFileError> {
    let mut declared: Option<Header> = None;
    let mut body: Vec<(usize, &str)> = Vec::new();
    for (idx, raw) in content.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if idx == 0 {
                declared = parse_header(line);
            }
            continue;
        }
        body.push((idx + 1, line));
    }

    let m = match &declared {
        Some(h) => h.m,
        None => infer_universe(&body, format, name)?,
    };

    let mut rankings = Vec::with_capacity(body.len());
    for &(line_no, line) in &body {
        let ranking = match format {
            DatasetFormat::Bars => {
                Ranking::parse(line, m).map_err(|source| DatasetFileError::Parse {
                    path: name.to_string(),
                    line: line_no,
                    source,
                })?
            }
            DatasetFormat::Ranks => parse_rank_vector(line, m).map_err(|message| {
                DatasetFileError::Malformed {
                    path: name.to_string(),
                    line: line_no,
                    message,
                }
            })?,
        };
        rankings.push(ranking);
    }

    if let Some(h) = &declared {
        if h.n != rankings.len() {
            return Err(DatasetFileError::CountMismatch {
                path: name.to_string(),
                declared: h.n,
                found: rankings.len(),
            });
        }
    }

    Dataset::new(m, rankings).map_err(|source| DatasetFileError::Dataset {
        path: name.to_string(),
        source,
    })
}

fn infer_universe(
    body: &[(usize, &str)],
    format: DatasetFormat,
    name: &str,
) -> Result<usize, DatasetFileError> {
    match format {
        DatasetFormat::Bars => {
            let mut max = 0usize;
            for &(line_no, line) in body {
                for token in line.split(['|', ',']) {
                    let value: usize =
                        token
                            .trim()
                            .parse()
                            .map_err(|_| DatasetFileError::Malformed {
                                path: name.to_string(),
                                line: line_no,
                                message: format!("invalid label token {token:?}"),
                            })?;
                    max = max.max(value);
                }
            }
            Ok(max)
        }
        DatasetFormat::Ranks => Ok(body
            .first()
            .map(|&(_, line)| line.split_whitespace().count())
            .unwrap_or(0)),
    }
}

/// Parses one space-separated rank vector: the `j`-th token is the rank of
/// label `j`, so the line must be a permutation of `1..=m`.
fn parse_rank_vector(line: &str, m: usize) -> Result<Ranking, String> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != m {
        return Err(format!("expected {m} ranks, found {}", tokens.len()));
    }
    let mut order: Vec<Option<Label>> = vec![None; m];
    for (label_idx, token) in tokens.iter().enumerate() {
        let rank: usize = token
            .parse()
            .map_err(|_| format!("invalid rank token {token:?}"))?;
        if rank < 1 || rank > m {
            return Err(format!("rank {rank} outside 1..={m}"));
        }
        if order[rank - 1].is_some() {
            return Err(format!("duplicate rank {rank}"));
        }
        order[rank - 1] = Some(Label::new(label_idx as u32 + 1));
    }
    let order: Vec<Label> = order.into_iter().map(Option::unwrap).collect();
    Ok(Permutation::from_order(order)
        .expect("rank bijection checked above")
        .to_ranking())
}

/// Writes a dataset in the native syntax with a `# m= n=` header.
pub fn write_dataset(d: &Dataset, path: &Path) -> Result<(), DatasetFileError> {
    let display = path.display().to_string();
    let mut out = String::new();
    format_dataset(d, &mut out);
    fs::write(path, out).map_err(|source| DatasetFileError::Io {
        path: display,
        source,
    })
}

/// Renders a dataset into the native on-disk syntax.
pub fn format_dataset(d: &Dataset, out: &mut String) {
    use std::fmt::Write as _;
    writeln!(out, "# m={} n={}", d.universe_size(), d.len()).unwrap();
    for r in d.rankings() {
        writeln!(out, "{r}").unwrap();
    }
}

/// Appends extra `#` comment lines (generator metadata) after the header.
pub fn write_dataset_with_comments(
    d: &Dataset,
    path: &Path,
    comments: &[String],
) -> Result<(), DatasetFileError> {
    let display = path.display().to_string();
    let mut out = String::new();
    {
        use std::fmt::Write as _;
        writeln!(out, "# m={} n={}", d.universe_size(), d.len()).unwrap();
        for c in comments {
            writeln!(out, "# {c}").unwrap();
        }
        for r in d.rankings() {
            writeln!(out, "{r}").unwrap();
        }
    }
    fs::write(path, out).map_err(|source| DatasetFileError::Io {
        path: display,
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_headered_file() {
        let text = "# m=4 n=2\n1|4|3|2\n1|3,4|2\n";
        let d = read_dataset_str(text, DatasetFormat::Bars, "test").unwrap();
        assert_eq!(d.universe_size(), 4);
        assert_eq!(d.len(), 2);
        assert!(!d.is_complete());
    }

    #[test]
    fn infers_universe_without_header() {
        let text = "1|2\n2|3\n";
        let d = read_dataset_str(text, DatasetFormat::Bars, "test").unwrap();
        assert_eq!(d.universe_size(), 3);
    }

    #[test]
    fn reports_line_numbers_on_errors() {
        let text = "# m=3 n=2\n1|2|3\n1|\n";
        let err = read_dataset_str(text, DatasetFormat::Bars, "test").unwrap_err();
        match err {
            DatasetFileError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn detects_count_mismatch() {
        let text = "# m=3 n=3\n1|2|3\n3|2|1\n";
        assert!(matches!(
            read_dataset_str(text, DatasetFormat::Bars, "test"),
            Err(DatasetFileError::CountMismatch { .. })
        ));
    }

    #[test]
    fn skips_blank_lines_and_comments() {
        let text = "# m=3 n=2\n\n# a comment\n1|2|3\n\n3|2|1\n";
        let d = read_dataset_str(text, DatasetFormat::Bars, "test").unwrap();
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn round_trips_through_text() {
        let text = "# m=4 n=3\n1|4|3|2\n1|3,4|2\n1,2|4\n";
        let d = read_dataset_str(text, DatasetFormat::Bars, "test").unwrap();
        let mut rendered = String::new();
        format_dataset(&d, &mut rendered);
        assert_eq!(rendered, text);
        let again = read_dataset_str(&rendered, DatasetFormat::Bars, "test").unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn rank_vector_mode() {
        // Label 1 has rank 2, label 2 rank 3, label 3 rank 1 → order (3|1|2).
        let text = "2 3 1\n1 2 3\n";
        let d = read_dataset_str(text, DatasetFormat::Ranks, "test").unwrap();
        assert_eq!(d.universe_size(), 3);
        assert!(d.is_complete());
        assert_eq!(d.rankings()[0].to_string(), "3|1|2");
        assert_eq!(d.rankings()[1].to_string(), "1|2|3");
    }

    #[test]
    fn rank_vector_rejects_non_permutations() {
        assert!(read_dataset_str("1 1 3\n", DatasetFormat::Ranks, "t").is_err());
        assert!(read_dataset_str("1 2 4\n", DatasetFormat::Ranks, "t").is_err());
    }
}

//! Flag values and input files.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use prefattach::calibration::{load_degree_file, EmpiricalDistribution};
use prefattach::{Error, IncrementDist, ModelSpec, WeightFunction};

use crate::CliError;

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::file(path, Error::Io(e)))
}

fn fields(text: &str) -> Vec<&str> {
    text.split(|c: char| c == ',' || c == ':' || c.is_whitespace())
        .filter(|f| !f.is_empty())
        .collect()
}

/// Significant lines of a text file, numbered from 1.
fn lines(path: &Path) -> Result<Vec<(usize, String)>, CliError> {
    let mut out = Vec::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line.map_err(|e| CliError::file(path, Error::Io(e)))?;
        let text = line.trim();
        if !text.is_empty() && !text.starts_with('#') {
            out.push((i + 1, text.to_string()));
        }
    }
    Ok(out)
}

fn parse_err(path: &Path, line: usize, message: String) -> CliError {
    CliError::file(path, Error::Parse { line, message })
}

/// `--increment-dist`: a file of `x p` lines, or inline `x:p,x:p,...`.
pub fn increment_dist(value: &str) -> Result<IncrementDist, CliError> {
    const FLAG: &str = "--increment-dist";
    let path = Path::new(value);
    let mut pairs = Vec::new();
    if path.is_file() {
        for (line, text) in lines(path)? {
            let f = fields(&text);
            let pair = match f.as_slice() {
                [x, p] => x.parse::<u32>().ok().zip(p.parse::<f64>().ok()),
                _ => None,
            };
            let pair =
                pair.ok_or_else(|| parse_err(path, line, format!("expected `x p`, got {text:?}")))?;
            pairs.push(pair);
        }
        return IncrementDist::new(&pairs).map_err(|e| CliError::file(path, e));
    }
    for item in value.split(',') {
        let pair = item
            .split_once(':')
            .and_then(|(x, p)| {
                x.trim()
                    .parse::<u32>()
                    .ok()
                    .zip(p.trim().parse::<f64>().ok())
            })
            .ok_or_else(|| {
                CliError::usage(
                    FLAG,
                    format!("{value:?} is neither a file nor a list of x:p pairs"),
                )
            })?;
        pairs.push(pair);
    }
    IncrementDist::new(&pairs).map_err(|e| CliError::usage(FLAG, e.to_string()))
}

/// `--weights-file`: lines `k f(k)` for consecutive degrees, and one line
/// `tail s` giving `f(k) = k + s` from the degree after the last listed one.
/// The first listed degree must not exceed the smallest increment.
pub fn weights_file(path: &Path) -> Result<WeightFunction, CliError> {
    let mut head: Vec<(u32, f64)> = Vec::new();
    let mut tail = None;
    for (line, text) in lines(path)? {
        let f = fields(&text);
        match f.as_slice() {
            ["tail", s] => {
                let s = s
                    .parse::<f64>()
                    .map_err(|_| parse_err(path, line, format!("bad tail displacement {s:?}")))?;
                if tail.replace(s).is_some() {
                    return Err(parse_err(path, line, "second `tail` line".into()));
                }
            }
            [k, w] => {
                let (k, w) = k
                    .parse::<u32>()
                    .ok()
                    .zip(w.parse::<f64>().ok())
                    .ok_or_else(|| {
                        parse_err(path, line, format!("expected `k f(k)`, got {text:?}"))
                    })?;
                if let Some(&(prev, _)) = head.last() {
                    if k != prev + 1 {
                        return Err(parse_err(
                            path,
                            line,
                            format!("degree {k} does not follow {prev}; list consecutive degrees"),
                        ));
                    }
                }
                head.push((k, w));
            }
            _ => {
                return Err(parse_err(
                    path,
                    line,
                    format!("expected `k f(k)` or `tail s`, got {text:?}"),
                ))
            }
        }
    }
    let tail = tail
        .ok_or_else(|| CliError::file(path, Error::InvalidModel("missing `tail s` line".into())))?;
    let k_head = head.last().map_or(1, |&(k, _)| k + 1);
    let values = head.into_iter().map(|(_, w)| w).collect();
    WeightFunction::tabulated(values, tail, k_head).map_err(|e| CliError::file(path, e))
}

pub fn degree_file(path: &Path) -> Result<EmpiricalDistribution, CliError> {
    load_degree_file(open(path)?).map_err(|e| CliError::file(path, e))
}

pub fn model_file(path: &Path) -> Result<ModelSpec, CliError> {
    serde_json::from_reader(open(path)?).map_err(|e| CliError::file(path, Error::Json(e)))
}

/// `lo:hi` with `1 <= lo < hi`.
pub fn range(flag: &str, value: &str) -> Result<(u32, u32), CliError> {
    let bad = || {
        CliError::usage(
            flag,
            format!("expected lo:hi with 1 <= lo < hi, got {value:?}"),
        )
    };
    let (lo, hi) = value.split_once(':').ok_or_else(bad)?;
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 || lo >= hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// A positive whole number given as a float flag.
pub fn whole_m(m: f64) -> Result<u32, CliError> {
    if m >= 1.0 && m.fract() == 0.0 && m <= f64::from(u32::MAX) {
        Ok(m as u32)
    } else {
        Err(CliError::usage(
            "--m",
            format!("this command needs a positive integer m, got {m}"),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn inline_increments() {
        let r = increment_dist("1:0.25, 3:0.75").unwrap();
        assert_eq!((r.prob(1), r.prob(2), r.prob(3)), (0.25, 0.0, 0.75));
        assert!(matches!(
            increment_dist("1=0.5"),
            Err(CliError::Usage { .. })
        ));
        assert!(increment_dist("1:0.5,2:0.4").is_err());
    }

    #[test]
    fn weights_layout() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# head\n2 0.5\n3 1.5\ntail -0.5").unwrap();
        let f = weights_file(file.path()).unwrap();
        assert_eq!(
            f,
            WeightFunction::tabulated(vec![0.5, 1.5], -0.5, 4).unwrap()
        );
        assert_eq!(prefattach::eval_weight(&f, 2).unwrap(), 0.5);
        assert!(prefattach::eval_weight(&f, 1).is_err());
        assert_eq!(prefattach::eval_weight(&f, 7).unwrap(), 6.5);
    }

    #[test]
    fn weights_errors_name_the_line() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "2 0.5\n4 1.5\ntail 0").unwrap();
        match weights_file(file.path()) {
            Err(CliError::File {
                source: Error::Parse { line: 2, .. },
                ..
            }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(range("--fit-range", "11:1000").unwrap(), (11, 1000));
        assert!(range("--fit-range", "5:5").is_err());
        assert!(range("--fit-range", "0:5").is_err());
        assert!(range("--fit-range", "5").is_err());
    }

    #[test]
    fn integer_m() {
        assert_eq!(whole_m(3.0).unwrap(), 3);
        assert!(whole_m(2.5).is_err());
        assert!(whole_m(0.0).is_err());
    }
}

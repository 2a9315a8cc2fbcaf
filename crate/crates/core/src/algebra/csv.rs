//! Matrix/vector text format: one row per line, comma separated entries
//! written as integers or `a/b`; `#` starts a comment and blank lines are
//! skipped.

use super::rational::{format, parse, Rational};
use super::Matrix;
use crate::error::{Error, Result};

pub fn parse_rows(text: &str) -> Result<Vec<Vec<Rational>>> {
    text.lines()
        .enumerate()
        .filter_map(|(no, line)| {
            let body = line.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then_some((no, body))
        })
        .map(|(no, body)| {
            body.split(',')
                .map(|tok| parse(tok).map_err(|e| Error::Parse(format!("line {}: {e}", no + 1))))
                .collect()
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<Matrix<Rational>> {
    Matrix::from_rows(parse_rows(text)?)
}

pub fn write_matrix(m: &Matrix<Rational>) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let line: Vec<String> = m.row(r).iter().map(format).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    #[test]
    fn reads_comments_and_fractions() {
        let m = parse_matrix("# phi\n1, -1/2\n\n0,3 # trailing\n").unwrap();
        assert_eq!(m.row(0), &[int(1), frac(-1, 2)]);
        assert_eq!(m.row(1), &[int(0), int(3)]);
        assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn rejects_ragged_and_garbage() {
        assert!(parse_matrix("1,2\n3\n").is_err());
        assert!(matches!(parse_matrix("1,x\n"), Err(Error::Parse(_))));
    }
}

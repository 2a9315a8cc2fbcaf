use std::path::{Path, PathBuf};

use lvcert::algebra::csv::parse_rows;
use lvcert::algebra::rational::{self, val};
use lvcert::algebra::{Field, FiniteField, Gf, Rational};
use lvcert::{Error, Result};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde_json::Value;

pub fn resolve(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}

pub fn read_text(base: &Path, path: &Path) -> Result<String> {
    let full = resolve(base, path);
    std::fs::read_to_string(&full).map_err(|e| Error::Parse(format!("{}: {e}", full.display())))
}

pub fn read_json(base: &Path, path: &Path) -> Result<Value> {
    let text = read_text(base, path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_rows(base: &Path, path: &Path) -> Result<Vec<Vec<Rational>>> {
    parse_rows(&read_text(base, path)?)
}

/// A JSON integer or an `a/b` string.
pub fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(rational::int(i)),
            None => Err(Error::Parse(format!("{n} is not an integer; write fractions as \"a/b\" strings"))),
        },
        other => Err(Error::Parse(format!("expected a number or \"a/b\" string, got {other}"))),
    }
}

pub fn json_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{what} must be a JSON array")))
}

pub fn json_rationals(v: &Value, what: &str) -> Result<Vec<Rational>> {
    json_array(v, what)?.iter().map(json_rational).collect()
}

pub fn prime_field(q: u64) -> Result<FiniteField> {
    if !rational::is_prime(q) {
        return Err(Error::Domain(format!("--field must be a prime, got {q}")));
    }
    FiniteField::prime(q)
}

/// Image of a `p`-integral rational in `F_p`.
pub fn reduce(f: &FiniteField, r: &Rational) -> Result<Gf> {
    let p = f.characteristic();
    if val(r, p).is_some_and(|v| v < 0) {
        return Err(Error::Domain(format!("{} has a denominator divisible by {p}", rational::format(r))));
    }
    let residue = |n: &num_bigint::BigInt| n.mod_floor(&p.into()).to_i64().expect("residue below p");
    let num = f.from_int(residue(r.numer()));
    let den = f.from_int(residue(r.denom()));
    Ok(f.mul(&num, &f.inv(&den).expect("denominator prime to p")))
}

pub fn reduce_rows(f: &FiniteField, rows: &[Vec<Rational>]) -> Result<Vec<Vec<Gf>>> {
    rows.iter().map(|row| row.iter().map(|x| reduce(f, x)).collect()).collect()
}

/// One-based indices to zero-based, each at most `rank`.
pub fn zero_based(idx: &[usize], rank: usize, flag: &str) -> Result<Vec<usize>> {
    idx.iter()
        .map(|&i| {
            if i == 0 || i > rank {
                Err(Error::Domain(format!("{flag}: index {i} outside 1..={rank}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use lvcert::algebra::rational::{frac, int};
    use serde_json::json;

    #[test]
    fn reduces_fractions() {
        let f5 = FiniteField::prime(5).unwrap();
        assert_eq!(reduce(&f5, &frac(1, 2)).unwrap(), Gf(3));
        assert_eq!(reduce(&f5, &int(-1)).unwrap(), Gf(4));
        assert!(reduce(&f5, &frac(1, 5)).is_err());
    }

    #[test]
    fn json_numbers_and_strings() {
        assert_eq!(json_rational(&json!("-3/6")).unwrap(), frac(-1, 2));
        assert_eq!(json_rational(&json!(7)).unwrap(), int(7));
        assert!(json_rational(&json!(0.5)).is_err());
        assert!(zero_based(&[1, 4], 3, "--dp").is_err());
        assert_eq!(zero_based(&[1, 3], 3, "--dp").unwrap(), vec![0, 2]);
    }
}

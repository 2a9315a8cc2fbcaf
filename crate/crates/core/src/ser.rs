//! Serde helpers: big integers as decimal strings, rationals as `a/b`.

use num_bigint::BigInt;
use serde::Serializer;

use crate::algebra::rational::{format, Rational};

pub fn big<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn rat<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format(v))
}

pub fn rats<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format))
}

pub fn bigs<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn big_map<S: Serializer>(v: &std::collections::BTreeMap<i64, BigInt>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(v.iter().map(|(k, x)| (k.to_string(), x.to_string())))
}

//! Fuzz the canonical scalar printer against the grammar: any Laurent
//! polynomial assembled from raw (exponent, numerator, denominator)
//! triples must print to a string that parses back to the same value.

#![no_main]

use libfuzzer_sys::fuzz_target;
use nqs_core::coeff::{rat, LaurentScalar};
use nqs_core::ncalg::catalog::catalog;
use nqs_core::parse::{eval, parse};

fuzz_target!(|data: &[u8]| {
    if data.len() > 48 {
        return;
    }
    let mut s = LaurentScalar::zero();
    for chunk in data.chunks(3) {
        let e = (chunk[0] as i8 as i64).clamp(-9, 9);
        let n = *chunk.get(1).unwrap_or(&1) as i8 as i64;
        let d = (*chunk.get(2).unwrap_or(&1) as i8 as i64).clamp(1, 9).max(1);
        s = &s + &LaurentScalar::monomial(e, rat(n, d));
    }
    let printed = s.to_string();
    let tree = parse(&printed)
        .unwrap_or_else(|e| panic!("canonical scalar `{}` failed to parse: {}", printed, e));
    let p = catalog().presentation("su2").unwrap();
    let v = eval(&tree, p, None).unwrap();
    let expect = nqs_core::ncalg::AlgebraElement::scalar(s);
    assert_eq!(v, expect, "round trip through `{}`", printed);
});

//! Round-trip fuzz: whenever an input parses and evaluates, printing the
//! normal form and re-parsing must reproduce it exactly.

#![no_main]

use libfuzzer_sys::fuzz_target;
use nqs_core::ncalg::catalog::catalog;
use nqs_core::parse::{eval, parse, print_element};

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if input.len() > 120 || input.chars().filter(|c| c.is_ascii_digit()).count() > 8 {
        return;
    }
    let Ok(tree) = parse(input) else {
        return;
    };
    let p = catalog().presentation("chart-sn-ext").unwrap();
    let Ok(v) = eval(&tree, p, None) else {
        return;
    };
    let printed = print_element(p, &v);
    let reparsed = parse(&printed).unwrap_or_else(|e| {
        panic!("canonical output `{}` failed to parse: {}", printed, e)
    });
    let back = eval(&reparsed, p, None).unwrap_or_else(|e| {
        panic!("canonical output `{}` failed to evaluate: {}", printed, e)
    });
    assert_eq!(back, v, "round trip through `{}`", printed);
});

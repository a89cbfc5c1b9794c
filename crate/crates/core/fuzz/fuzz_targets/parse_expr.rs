//! Fuzz the expression grammar and its evaluation against the catalog
//! presentations: arbitrary input must parse-or-error without panicking,
//! and valid expressions must evaluate without panicking.

#![no_main]

use libfuzzer_sys::fuzz_target;
use nqs_core::ncalg::catalog::catalog;
use nqs_core::parse::{eval, eval_twisted, parse};

fn tame(input: &str) -> bool {
    // bound the work per input: short strings, small exponents
    if input.len() > 200 {
        return false;
    }
    let mut run = 0usize;
    for c in input.chars() {
        if c.is_ascii_digit() {
            run += 1;
            if run > 3 {
                return false;
            }
        } else {
            run = 0;
        }
    }
    true
}

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if !tame(input) {
        return;
    }
    let Ok(tree) = parse(input) else {
        return;
    };
    let c = catalog();
    for name in ["chart-n", "chart-sn-ext", "grassmannian", "su2"] {
        let p = c.presentation(name).unwrap();
        let _ = eval(&tree, p, None);
    }
    let su2 = c.presentation("su2").unwrap();
    let _ = eval_twisted(&tree, su2);
});

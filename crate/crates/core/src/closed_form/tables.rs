//! Closed-form spectra as data: one table per branch, each row a pair
//! `(count expression, frequency expression)` in p, m, n = 2m and t.
//!
//! Rows are kept as written for the general case. At small t several count
//! expressions evaluate to the same number (often 0); the evaluator merges
//! those rows by summing frequencies.

use super::Branch;

pub(crate) type Row = (&'static str, &'static str);

pub(crate) fn differential_rows(branch: Branch) -> &'static [Row] {
    match branch {
        Branch::P2Not3t => &[
            ("0", "(t^2*2^(n+1) - (2^m - t + 2)*2^m - 4*t^2 + t - 1) / (2*t^2)"),
            ("2*t^2", "(2^(2*m) + (2 - 3*t)*2^m + 2*t^2 - 3*t + 1) / (2*t^2)"),
            ("2*t*(t - 1)", "(2^m - t + 1) / t"),
            ("2", "1"),
            ("t*(2^m - 1) - 1", "1"),
        ],
        Branch::P2Div3t => &[
            ("0", "(t^2*2^(n+1) - (2^m - t + 2)*2^m - 2*t^2 + t - 1) / (2*t^2)"),
            ("2*t^2", "(2^(2*m) + (2 - 3*t)*2^m - 3*t + 1) / (2*t^2)"),
            ("2*t*(t - 1)", "(2^m - t + 1) / t"),
            ("2*t^2 + 2", "1"),
            ("t*(2^m - 1) - 1", "1"),
        ],
        Branch::P3Not2t => &[
            ("0", "(t^2*3^n - (3^m + 2 - t)*3^m - 3*t^2 + t - 1) / t^2"),
            ("t^2", "(3^(2*m) + (2 - 3*t)*3^m + 2*t^2 - 3*t + 1) / t^2"),
            ("t^2 - t", "2*(3^m - t + 1) / t"),
            ("1", "2"),
            ("t*(3^m - 1) - 1", "1"),
        ],
        Branch::P3Div2t => &[
            ("0", "(2*t^2*3^n - (3^m + 2)*3^m - 2*t^2 - 1) / (2*t^2)"),
            ("2*t^2", "(3^(2*m) + (2 - 6*t)*3^m + 8*t^2 - 6*t + 1) / (2*t^2)"),
            ("2*t^2 - t", "2*(3^m - 2*t + 1) / t"),
            ("t^2", "(3^m - 2*t + 1) / t"),
            ("t^2 - t + 1", "2"),
            ("t*(3^m - 1) - 1", "1"),
        ],
        Branch::Pg3Not2t => &[
            ("0", "(t^2*p^n - (p^m + 2 - t)*p^m - 3*t^2 + t - 1) / t^2"),
            ("t^2", "(p^(2*m) + (2 - 3*t)*p^m + 2*t^2 - 3*t + 1) / t^2"),
            ("t^2 - t", "2*(p^m - t + 1) / t"),
            ("1", "2"),
            ("t*(p^m - 1) - 1", "1"),
        ],
        Branch::Pg3Div2tNot6t => &[
            ("0", "(2*t^2*p^n - (p^m + 2)*p^m - 6*t^2 - 1) / (2*t^2)"),
            ("2*t^2", "(p^(2*m) + (2 - 6*t)*p^m + 8*t^2 - 6*t + 1) / (2*t^2)"),
            ("2*t^2 - t", "2*(p^m - 2*t + 1) / t"),
            ("t^2", "(p^m - 2*t + 1) / t"),
            ("t^2 - t", "2"),
            ("1", "2"),
            ("t*(p^m - 1) - 1", "1"),
        ],
        Branch::Pg3Div6t => &[
            ("0", "(2*t^2*p^n - (p^m + 2)*p^m - 2*t^2 - 1) / (2*t^2)"),
            ("2*t^2", "(p^(2*m) + (2 - 6*t)*p^m + 4*t^2 - 6*t + 1) / (2*t^2)"),
            ("2*t^2 - t", "2*(p^m - 2*t + 1) / t"),
            ("t^2", "(p^m - 2*t + 1) / t"),
            ("2*t^2 + 1", "2"),
            ("t^2 - t", "2"),
            ("t*(p^m - 1) - 1", "1"),
        ],
    }
}

pub(crate) fn boomerang_rows(branch: Branch) -> &'static [Row] {
    match branch {
        Branch::P2Not3t => &[
            ("0", "((2*t^2 - 1)*2^n - (2 - t)*2^m - 4*t^2 + t - 1) / (2*t^2)"),
            ("2", "1"),
            ("4*t^4 - 4*t^3 + 2*t^2", "(2^n + (2 - 3*t)*2^m + 2*t^2 - 3*t + 1) / (2*t^2)"),
            ("2*t*(t - 1)*(2^m + 2*t^2 - 4*t)", "(2^m - t + 1) / t"),
        ],
        Branch::P2Div3t => &[
            ("0", "((2*t^2 - 1)*2^n - (2 - t)*2^m - 6*t^2 + t - 1) / (2*t^2)"),
            ("4*t^4 - 4*t^3 + 2*t^2 + 2", "1"),
            ("4*t^4 - 4*t^3 + 2*t^2", "(2^n + (2 - 3*t)*2^m - 3*t + 1) / (2*t^2)"),
            ("2*t*(t - 1)*(2^m + 2*t^2 - 4*t)", "(2^m - t + 1) / t"),
            ("2*t*(t - 1)*(2^m + 2*t^2 - 4*t) + 4*t^2", "2"),
        ],
        Branch::P3Not2t => &[
            ("0", "((t^2 - 1)*3^n - (2 - t)*3^m - t^2 + t - 1) / t^2"),
            ("t^4 - 2*t^3 + t^2", "(3^n + (2 - 3*t)*3^m + 2*t^2 - 3*t + 1) / t^2"),
            ("t*(t - 1)*(3^m + t^2 - 3*t)", "2*(3^m - t + 1) / t"),
        ],
        Branch::P3Div2t => &[
            ("0", "(2*t^2*3^n - (3^m + 2)*3^m - 2*t^2 - 1) / (2*t^2)"),
            ("t^4 - 2*t^3 + t^2", "(3^m - 2*t + 1) / t"),
            ("4*t^4 - 4*t^3 + 2*t^2", "(3^n + (2 - 6*t)*3^m + 8*t^2 - 6*t + 1) / (2*t^2)"),
            ("t*(t - 1)*(3^m + 4*t^2 - 4*t)", "2*(3^m - 2*t + 1) / t"),
            ("t*(t - 1)*(3^m + t^2 - 3*t + 2)", "2"),
        ],
        Branch::Pg3Not2t => &[
            ("0", "((t^2 - 1)*p^n - (2 - t)*p^m - t^2 + t - 1) / t^2"),
            ("t^4 - 2*t^3 + t^2", "(p^n + (2 - 3*t)*p^m + 2*t^2 - 3*t + 1) / t^2"),
            ("t*(t - 1)*(p^m + t^2 - 3*t)", "2*(p^m - t + 1) / t"),
        ],
        Branch::Pg3Div2tNot6t => &[
            ("0", "(2*t^2*p^n - (p^m + 2)*p^m - 2*t^2 - 1) / (2*t^2)"),
            ("t^4 - 2*t^3 + t^2", "(p^m - 2*t + 1) / t"),
            ("4*t^4 - 4*t^3 + 2*t^2", "(p^n + (2 - 6*t)*p^m + 8*t^2 - 6*t + 1) / (2*t^2)"),
            ("t*(t - 1)*(p^m + 4*t^2 - 4*t)", "2*(p^m - 2*t + 1) / t"),
            ("t*(t - 1)*(p^m + t^2 - 3*t)", "2"),
        ],
        Branch::Pg3Div6t => &[
            ("0", "(2*t^2*p^n - (p^m + 2)*p^m - 2*t^2 - 1) / (2*t^2)"),
            ("t^4 - 2*t^3 + t^2", "(p^m - 2*t + 1) / t"),
            ("4*t^4 - 4*t^3 + 2*t^2", "(p^n + (2 - 6*t)*p^m + 8*t^2 - 6*t + 1) / (2*t^2)"),
            ("t*(t - 1)*(p^m + 4*t^2 - 4*t)", "2*(p^m - 4*t + 1) / t"),
            ("t*(t - 1)*(p^m + 4*t^2 - 4*t) + 2*t^2", "4"),
            ("t*(t - 1)*(p^m + t^2 - 3*t)", "2"),
        ],
    }
}

//! λ₁ and its multiplicity at every row of the case tables, written out by hand and
//! cross-checked against the truncated spectrum.

mod common;

use cross_spec::metric::{from_abcs, from_cp_bs};
use cross_spec::{lambda1, truncated_spectrum, ABCSParams, MetricSpec, Quotient};

fn abcs(n: u32, a2: f64, b2: f64, c2: f64, q: Quotient) -> MetricSpec {
    let p = ABCSParams::new(a2.sqrt(), b2.sqrt(), c2.sqrt(), 1.0).unwrap();
    from_abcs(n, p, q).unwrap()
}

fn check(spec: &MetricSpec, value: f64, mult: u128) {
    let l1 = lambda1(spec).unwrap();
    assert!(common::rel_close(l1.value, value, 1e-9), "{spec:?}: {} vs {value}", l1.value);
    assert_eq!(l1.multiplicity, mult, "{spec:?}");
    let slice = truncated_spectrum(spec, value * (1.0 + 1e-6)).unwrap();
    let first = slice.first_positive().unwrap();
    assert!(common::rel_close(first.value, value, 1e-9));
    assert_eq!(first.multiplicity, mult, "{spec:?} brute force");
}

#[test]
fn sphere_table() {
    for n in 1..=3u32 {
        let nf = n as f64;
        let nu = n as u128;
        let l10 = |a2: f64, b2: f64, c2: f64| 4.0 * nf + 2.0 * (a2 + b2 + c2);
        let l20 = |b2: f64, c2: f64| 8.0 * (nf + b2 + c2);
        let l11 = 8.0 * (nf + 1.0);
        let q = Quotient::Simple;

        check(&abcs(n, 0.25, 0.25, 0.25, q), l10(0.25, 0.25, 0.25), 4 * (nu + 1));

        check(&abcs(n, 4.0, 4.0, 4.0, q), l11, nu * (2 * nu + 3));

        let a2 = 2.0 * nf + 5.0;
        check(&abcs(n, a2, 0.01, 0.01, q), l20(0.01, 0.01), (nu + 1) * (2 * nu + 3));

        let a2 = 2.0 * nf + 2.0;
        check(&abcs(n, a2, 1.0, 1.0, q), l11, 2 * nu * nu + 7 * nu + 4);

        let a2 = 2.0 * nf + 1.5;
        check(&abcs(n, a2, 0.25, 0.25, q), l20(0.25, 0.25), 2 * nu * nu + 9 * nu + 7);

        let a2 = 2.0 * nf + 5.0;
        check(&abcs(n, a2, 0.5, 0.5, q), l11, 4 * nu * nu + 8 * nu + 3);

        let a2 = 2.0 * nf + 3.0;
        check(&abcs(n, a2, 0.5, 0.5, q), l11, 4 * nu * nu + 12 * nu + 7);
        assert!(common::rel_close(l10(a2, 0.5, 0.5), l11, 1e-12));
    }
}

#[test]
fn projective_table() {
    for n in 1..=3u32 {
        let nf = n as f64;
        let nu = n as u128;
        let l20 = |b2: f64, c2: f64| 8.0 * (nf + b2 + c2);
        let l11 = 8.0 * (nf + 1.0);
        let q = Quotient::Z2;
        let base = 2 * nu + 3;

        check(&abcs(n, 1.0, 1.0, 1.0, q), l11, nu * base);
        check(&abcs(n, 1.0, 0.25, 0.25, q), l20(0.25, 0.25), (nu + 1) * base);
        check(&abcs(n, 0.36, 0.36, 0.09, q), l20(0.36, 0.09), 2 * (nu + 1) * base);
        check(&abcs(n, 0.25, 0.25, 0.25, q), l20(0.25, 0.25), 3 * (nu + 1) * base);
        check(&abcs(n, 1.0, 0.5, 0.5, q), l11, (2 * nu + 1) * base);
        check(&abcs(n, 0.64, 0.64, 0.36, q), l11, (3 * nu + 2) * base);
        check(&abcs(n, 0.5, 0.5, 0.5, q), l11, (4 * nu + 3) * base);
    }
}

#[test]
fn complex_projective_table() {
    for n in 1..=3u32 {
        let nf = n as f64;
        let nu = n as u128;
        let base = 2 * nu + 3;
        let l20 = |b2: f64| 8.0 * nf + 16.0 * b2;
        let l11 = 8.0 * (nf + 1.0);

        let b = 0.5f64;
        check(&from_cp_bs(n, b, 1.0).unwrap(), l20(b * b), base * (nu + 1));

        let b = 1.0f64;
        check(&from_cp_bs(n, b, 1.0).unwrap(), l11, base * nu);

        let b = 0.5f64.sqrt();
        check(&from_cp_bs(n, b, 1.0).unwrap(), l11, base * (2 * nu + 1));
    }
}

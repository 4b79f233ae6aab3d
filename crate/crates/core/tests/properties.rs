mod common;

use cross_spec::cli::text::{format_metric, parse_metric};
use cross_spec::geometry::sym_triple;
use cross_spec::isospec::{compare, ComparisonVerdict};
use cross_spec::su2_rep::{beta, nu1_quartic, nu_lower_bound, nu_spectrum_with, tau_matrix, NuMethod, NuOptions};
use cross_spec::yamabe::stability_poly;
use cross_spec::{lambda1, nu_spectrum, truncated_spectrum, Family, FsSpace, MetricSpec, Quotient, TriAxis};
use proptest::prelude::*;

fn axis() -> impl Strategy<Value = f64> {
    (-2.0f64..2.0).prop_map(|e| 10f64.powf(e * 0.5))
}

fn tri() -> impl Strategy<Value = (f64, f64, f64)> {
    (axis(), axis(), axis())
}

fn tridiagonal(k: usize, ax: TriAxis) -> Vec<f64> {
    let opts = NuOptions { method: NuMethod::Tridiagonal, ..NuOptions::default() };
    nu_spectrum_with(k, ax, opts).unwrap().values
}

fn quat_spec() -> impl Strategy<Value = MetricSpec> {
    (1u32..=3, tri(), any::<bool>()).prop_map(|(n, (x, y, z), rp)| {
        let q = if rp { Quotient::Z2 } else { Quotient::Simple };
        MetricSpec::new(Family::QuatH { n, t: [x, y, z] }, q, 1.0).unwrap()
    })
}

fn any_spec() -> impl Strategy<Value = MetricSpec> {
    let q = prop_oneof![Just(Quotient::Simple), Just(Quotient::Z2)];
    let fam = prop_oneof![
        (2u32..20).prop_map(|d| Family::Round { d }),
        (1u32..6, axis()).prop_map(|(n, t)| Family::BergerG { n, t }),
        (0u32..4, tri()).prop_map(|(n, (x, y, z))| Family::QuatH { n, t: [x, y, z] }),
        axis().prop_map(|t| Family::Spin9K { t }),
    ];
    let fixed = prop_oneof![
        (1u32..4, axis()).prop_map(|(n, t)| Family::CPCheckH { n, t }),
        (1u32..6).prop_map(|m| Family::FubiniStudy(FsSpace::Complex(m))),
        (1u32..4).prop_map(|m| Family::FubiniStudy(FsSpace::Quaternionic(m))),
        Just(Family::FubiniStudy(FsSpace::Cayley)),
    ];
    prop_oneof![
        (fam, q, axis()).prop_map(|(f, q, s)| MetricSpec::new(f, q, s).unwrap()),
        (fixed, axis()).prop_map(|(f, s)| MetricSpec::new(f, Quotient::Simple, s).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nu_matches_dense_in_any_axis_order((x, y, z) in tri(), k in 0usize..30, perm in 0usize..6) {
        let ax = TriAxis::new(x, y, z).unwrap();
        let v = [x, y, z];
        let order = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]][perm];
        let dense = common::dense_nu(k, v[order[0]], v[order[1]], v[order[2]]);
        let tri = tridiagonal(k, ax);
        for (p, q) in dense.iter().zip(&tri) {
            prop_assert!(common::rel_close(*p, *q, 1e-9), "{p} vs {q}");
        }
    }

    #[test]
    fn nu_trace_and_lower_bound((x, y, z) in tri(), k in 1usize..40) {
        let ax = TriAxis::new(x, y, z).unwrap();
        let nu = nu_spectrum(k, ax).unwrap().values;
        let m = tau_matrix(k, ax);
        let trace: f64 = (0..=k).map(|j| m.get(j, j)).sum();
        let sum: f64 = nu.iter().sum();
        prop_assert!(common::rel_close(sum, trace, 1e-10));
        let lb = nu_lower_bound(k, ax);
        prop_assert!(nu[0] >= lb * (1.0 - 1e-10), "{} < {lb}", nu[0]);
    }

    #[test]
    fn quartic_is_eight_beta((x, y, z) in tri()) {
        let ax = TriAxis::new(x, y, z).unwrap();
        let nu = tridiagonal(4, ax);
        prop_assert!(common::rel_close(nu[0], nu1_quartic(ax), 1e-10));
        let [a2, b2, c2] = ax.squares();
        prop_assert!(beta(ax) <= a2 + b2 + c2);
        prop_assert!(beta(ax) >= b2 + c2 - 1e-12 * a2);
    }

    #[test]
    fn homothety_rescales_spectrum(m in quat_spec(), alpha in 0.2f64..5.0) {
        let scaled = m.with_scale(alpha).unwrap();
        let l = lambda1(&m).unwrap();
        let ls = lambda1(&scaled).unwrap();
        prop_assert!(common::rel_close(ls.value * alpha, l.value, 1e-12));
        prop_assert_eq!(ls.multiplicity, l.multiplicity);
        let cut = 3.0 * l.value;
        let a = truncated_spectrum(&m, cut).unwrap();
        let b = truncated_spectrum(&scaled, cut / alpha).unwrap();
        prop_assert_eq!(a.entries.len(), b.entries.len());
        for (p, q) in a.entries.iter().zip(&b.entries) {
            prop_assert!(common::rel_close(p.value, q.value * alpha, 1e-10));
            prop_assert_eq!(p.multiplicity, q.multiplicity);
        }
    }

    #[test]
    fn sym_triple_inverts((x, y, z) in tri()) {
        let ax = TriAxis::new(x, y, z).unwrap();
        let back = sym_triple(ax).inverse().unwrap();
        prop_assert!(common::rel_close(back.a(), ax.a(), 1e-6));
        prop_assert!(common::rel_close(back.b(), ax.b(), 1e-6));
        prop_assert!(common::rel_close(back.c(), ax.c(), 1e-6));
    }

    #[test]
    fn stability_poly_is_symmetric(n in 1u32..5, (x, y, z) in tri()) {
        let p = stability_poly(n, x, y, z);
        for q in [
            stability_poly(n, x, z, y),
            stability_poly(n, y, x, z),
            stability_poly(n, y, z, x),
            stability_poly(n, z, x, y),
            stability_poly(n, z, y, x),
        ] {
            prop_assert!((p - q).abs() <= 1e-9 * (1.0 + p.abs()));
        }
    }

    #[test]
    fn stable_when_all_large(n in 1u32..5, x in 1.125f64..20.0, y in 1.125f64..20.0, z in 1.125f64..20.0) {
        prop_assert!(stability_poly(n, x, y, z) > 0.0);
    }

    #[test]
    fn compare_is_symmetric(a in quat_spec(), b in quat_spec()) {
        prop_assume!(a.dimension() == b.dimension());
        let cut = 2.0 * lambda1(&a).unwrap().value.max(lambda1(&b).unwrap().value);
        let ab = compare(&a, &b, cut, 1e-8).unwrap();
        let ba = compare(&b, &a, cut, 1e-8).unwrap();
        match (&ab, &ba) {
            (ComparisonVerdict::DifferAt { level: i, .. }, ComparisonVerdict::DifferAt { level: j, .. }) => {
                prop_assert_eq!(i, j)
            }
            _ => prop_assert_eq!(&ab, &ba),
        }
    }

    #[test]
    fn text_round_trip(m in any_spec()) {
        let text = format_metric(&m);
        prop_assert_eq!(parse_metric(&text).unwrap(), m, "{}", text);
    }
}

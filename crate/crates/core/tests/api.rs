use dappell::functions::{classify_kdf, eval_appell, eval_classical_f1, eval_humbert, HumbertFamily, KdfRegion};
use dappell::integral::{eval_integral, IntegralForm};
use dappell::series::Verdict;
use dappell::verify::{run_suite, DrawPolicy, IdentityFamily, Regime, SuiteOptions};
use dappell::{Appell, Appell1, Appell2, Error, KdfSpec, QuadratureOptions, SeriesOptions, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rising(u: C64, n: usize) -> C64 {
    (0..n).fold(c(1.0, 0.0), |acc, j| acc * (u + j as f64))
}

fn falling(t: C64, n: usize) -> C64 {
    (0..n).fold(c(1.0, 0.0), |acc, j| acc * (t - j as f64))
}

fn fact(n: usize) -> f64 {
    (1..=n).map(|j| j as f64).product()
}

/// Term sum over `m + n < 50` with a caller-built coefficient.
fn naive(x: C64, y: C64, coeff: impl Fn(usize, usize) -> C64) -> C64 {
    let mut s = c(0.0, 0.0);
    for m in 0..50 {
        for n in 0..50 - m {
            s += coeff(m, n) * x.powi(m as i32) * y.powi(n as i32) / (fact(m) * fact(n));
        }
    }
    s
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

fn first() -> Appell1 {
    Appell1 {
        a: c(0.8, 0.2),
        b1: c(1.4, -0.2),
        b2: c(0.5, 0.1),
        c: c(2.3, 0.3),
        t1: c(6.0, 0.0),
        t2: c(1.7, 0.4),
        k1: 2,
        k2: 0,
        x: c(0.3, 0.1),
        y: c(-0.25, 0.2),
    }
}

#[test]
fn humbert_functions_match_direct_sums() {
    let q = first();
    let so = SeriesOptions::default();
    let lattice = |m: usize, n: usize| falling(q.t1, m * q.k1) * falling(q.t2, n * q.k2);
    let phi1 = naive(q.x, q.y, |m, n| rising(q.a, m + n) * rising(q.b1, m) / rising(q.c, m + n) * lattice(m, n));
    let phi2 = naive(q.x, q.y, |m, n| rising(q.b1, m) * rising(q.b2, n) / rising(q.c, m + n) * lattice(m, n));
    let phi3 = naive(q.x, q.y, |m, n| rising(q.b1, m) / rising(q.c, m + n) * lattice(m, n));
    for (family, expected) in [(HumbertFamily::Phi1, phi1), (HumbertFamily::Phi2, phi2), (HumbertFamily::Phi3, phi3)] {
        let got = eval_humbert(family, &Appell::First(q), &so).unwrap().quantitative().unwrap();
        assert!(close(got, expected, 1e-12), "{family:?}: {got} vs {expected}");
    }
    let r = Appell2 { a: q.a, b1: q.b1, b2: q.b2, c: q.c, t: c(5.0, 0.0), k: 1, x: q.x, y: q.y };
    let phi2 = naive(r.x, r.y, |m, n| rising(r.b1, m) * rising(r.b2, n) / rising(r.c, m + n) * falling(r.t, m + n));
    let got = eval_humbert(HumbertFamily::Phi2, &Appell::Second(r), &so).unwrap().quantitative().unwrap();
    assert!(close(got, phi2, 1e-12), "{got} vs {phi2}");
}

#[test]
fn euler_and_laplace_integrals_reproduce_the_series() {
    let q = QuadratureOptions::default();
    let so = SeriesOptions::default();
    let p = Appell::First(Appell1 { c: c(2.9, 0.3), ..first() });
    let series = eval_appell(&p, &so).unwrap().quantitative().unwrap();
    for (form, tol) in [(IntegralForm::Euler1, 1e-7), (IntegralForm::LaplaceA, 1e-6), (IntegralForm::LaplaceB1, 1e-6)] {
        let v = eval_integral(form, &p, &q).unwrap().quantitative().unwrap();
        assert!(close(v, series, tol), "{form:?}: {v} vs {series}");
    }
}

#[test]
fn integral_form_must_match_the_parameters() {
    let p = Appell::First(first());
    assert!(eval_integral(IntegralForm::SecondEuler1, &p, &QuadratureOptions::default()).is_err());
}

#[test]
fn kdf_regions() {
    let one = c(1.0, 0.0);
    let f1_shape = KdfSpec { upper_joint: vec![one], upper_x: vec![one], upper_y: vec![one], lower_joint: vec![c(2.0, 0.0)], ..KdfSpec::default() };
    assert_eq!(classify_kdf(&f1_shape, c(0.5, 0.0), c(0.5, 0.0)), KdfRegion::Inside);
    assert_eq!(classify_kdf(&f1_shape, c(1.5, 0.0), c(0.5, 0.0)), KdfRegion::Outside);
    let entire = KdfSpec { lower_x: vec![one], lower_y: vec![one], ..f1_shape.clone() };
    assert_eq!(classify_kdf(&entire, c(5.0, 0.0), c(-7.0, 0.0)), KdfRegion::Entire);
}

#[test]
fn classical_function_outside_the_bidisc_is_a_domain_error() {
    let r = eval_classical_f1(c(1.0, 0.0), c(2.0, 0.0), c(0.5, 0.0), c(3.0, 0.0), c(1.2, 0.0), c(0.1, 0.0), &SeriesOptions::default());
    assert!(matches!(r, Err(Error::Domain(_))), "{r:?}");
}

#[test]
fn formal_point_is_reported_not_summed() {
    let p = Appell::First(Appell1 { t1: c(2.5, 0.0), k1: 1, ..first() });
    let r = eval_appell(&p, &SeriesOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::DivergenceSuspected);
    assert!(r.quantitative().is_err());
}

#[test]
fn small_terminating_suite_passes() {
    use IdentityFamily::*;
    let families = [DifferenceEqX, ThetaPower, FiniteSumB1, RecursionAPlus, SecondReductionLattice];
    let report = run_suite(&DrawPolicy::new(Regime::Terminating, 10, 3), &families, &SuiteOptions::default());
    assert!(report.is_success(), "{report:?}");
    assert_eq!(report.suite, "terminating:10");
    assert_eq!(report.total(|f| f.pass), 50);
    let ids: Vec<&str> = report.families.iter().map(|f| f.id.as_str()).collect();
    assert_eq!(ids, families.map(|f| f.id()));
}

//! Classical reference series and the single-index discrete pFq.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::{sum_gated, Region, EvalResult, FactorSequence, Lattice, SeparableCoefficients, SeriesOptions, TermWeight};

fn region_error<T: Real>(name: &str, x: Complex<T>, y: Complex<T>) -> Error {
    Error::Domain(format!("({x}, {y}) lies outside the convergence region of {name}"))
}

fn sum<T: Real>(
    joint: FactorSequence<T>,
    xs: FactorSequence<T>,
    ys: FactorSequence<T>,
    x: Complex<T>,
    y: Complex<T>,
    opts: &SeriesOptions<T>,
) -> Result<EvalResult<T>> {
    let mut o = SeparableCoefficients::new(joint, xs, ys);
    sum_gated(&mut o, x, y, &TermWeight::unit(), opts, Region::Inside)
}

/// Gauss `₂F₁(a, b; c; z)` for `|z| < 1`.
pub fn eval_2f1<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    z: Complex<T>,
    opts: &SeriesOptions<T>,
) -> Result<EvalResult<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    if z.norm() >= T::one() {
        return Err(region_error("2F1", z, zero));
    }
    let xs = FactorSequence::new(vec![a, b], vec![c], vec![], true)?;
    sum(FactorSequence::unit(), xs, FactorSequence::unit(), z, zero, opts)
}

/// Appell `F₁`, `|x|, |y| < 1`.
#[allow(clippy::too_many_arguments)]
pub fn eval_classical_f1<T: Real>(
    a: Complex<T>,
    b1: Complex<T>,
    b2: Complex<T>,
    c: Complex<T>,
    x: Complex<T>,
    y: Complex<T>,
    opts: &SeriesOptions<T>,
) -> Result<EvalResult<T>> {
    if x.norm() >= T::one() || y.norm() >= T::one() {
        return Err(region_error("F1", x, y));
    }
    sum(
        FactorSequence::new(vec![a], vec![c], vec![], false)?,
        FactorSequence::new(vec![b1], vec![], vec![], true)?,
        FactorSequence::new(vec![b2], vec![], vec![], true)?,
        x,
        y,
        opts,
    )
}

/// Appell `F₂`, `|x| + |y| < 1`.
#[allow(clippy::too_many_arguments)]
pub fn eval_classical_f2<T: Real>(
    a: Complex<T>,
    b1: Complex<T>,
    b2: Complex<T>,
    c1: Complex<T>,
    c2: Complex<T>,
    x: Complex<T>,
    y: Complex<T>,
    opts: &SeriesOptions<T>,
) -> Result<EvalResult<T>> {
    if x.norm() + y.norm() >= T::one() {
        return Err(region_error("F2", x, y));
    }
    sum(
        FactorSequence::new(vec![a], vec![], vec![], false)?,
        FactorSequence::new(vec![b1], vec![c1], vec![], true)?,
        FactorSequence::new(vec![b2], vec![c2], vec![], true)?,
        x,
        y,
        opts,
    )
}

/// Appell `F₃`, `|x|, |y| < 1`.
#[allow(clippy::too_many_arguments)]
pub fn eval_classical_f3<T: Real>(
    a1: Complex<T>,
    a2: Complex<T>,
    b1: Complex<T>,
    b2: Complex<T>,
    c: Complex<T>,
    x: Complex<T>,
    y: Complex<T>,
    opts: &SeriesOptions<T>,
) -> Result<EvalResult<T>> {
    if x.norm() >= T::one() || y.norm() >= T::one() {
        return Err(region_error("F3", x, y));
    }
    sum(
        FactorSequence::new(vec![], vec![c], vec![], false)?,
        FactorSequence::new(vec![a1, b1], vec![], vec![], true)?,
        FactorSequence::new(vec![a2, b2], vec![], vec![], true)?,
        x,
        y,
        opts,
    )
}

/// Appell `F₄`, `√|x| + √|y| < 1`.
#[allow(clippy::too_many_arguments)]
pub fn eval_classical_f4<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c1: Complex<T>,
    c2: Complex<T>,
    x: Complex<T>,
    y: Complex<T>,
    opts: &SeriesOptions<T>,
) -> Result<EvalResult<T>> {
    if x.norm().sqrt() + y.norm().sqrt() >= T::one() {
        return Err(region_error("F4", x, y));
    }
    sum(
        FactorSequence::new(vec![a, b], vec![], vec![], false)?,
        FactorSequence::new(vec![], vec![c1], vec![], true)?,
        FactorSequence::new(vec![], vec![c2], vec![], true)?,
        x,
        y,
        opts,
    )
}

/// Discrete `ₚFq(upper; lower; t, k, z)`. With `k = 0` this is the classical
/// series.
pub fn eval_discrete_pfq<T: Real>(
    upper: &[Complex<T>],
    lower: &[Complex<T>],
    t: Complex<T>,
    k: usize,
    z: Complex<T>,
    opts: &SeriesOptions<T>,
) -> Result<EvalResult<T>> {
    let xs = FactorSequence::new(upper.to_vec(), lower.to_vec(), vec![Lattice::new(t, k)], true)?;
    let zero = Complex::new(T::zero(), T::zero());
    let mut o = SeparableCoefficients::single(xs);
    super::check_axes(&o, z, zero)?;
    sum_gated(&mut o, z, zero, &TermWeight::unit(), opts, Region::Inside)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Verdict;

    type C = Complex<f64>;

    fn r(v: f64) -> C {
        C::new(v, 0.0)
    }

    #[test]
    fn gauss_examples() {
        let o = SeriesOptions::default();
        assert!((eval_2f1(r(1.0), r(2.0), r(2.0), r(0.5), &o).unwrap().value - r(2.0)).norm() < 1e-12);
        // 2F1(1,1;2;z) = -ln(1-z)/z
        let z = C::new(0.3, -0.2);
        let want = -(r(1.0) - z).ln() / z;
        assert!((eval_2f1(r(1.0), r(1.0), r(2.0), z, &o).unwrap().value - want).norm() < 1e-13);
        assert!(eval_2f1(r(1.0), r(1.0), r(2.0), r(1.0), &o).is_err());
    }

    #[test]
    fn appell_examples() {
        let o = SeriesOptions::default();
        let v = eval_classical_f1(r(1.0), r(1.0), r(1.0), r(2.0), r(0.5), r(0.5), &o).unwrap();
        assert!((v.value - r(2.0)).norm() < 1e-11);
        let a = C::new(0.7, 0.3);
        let f1 = eval_classical_f1(a, r(1.2), r(0.4), r(2.5), r(0.4), r(0.0), &o).unwrap().value;
        let g = eval_2f1(a, r(1.2), r(2.5), r(0.4), &o).unwrap().value;
        assert!((f1 - g).norm() < 1e-13);
        assert!(eval_classical_f2(r(1.0), r(1.0), r(1.0), r(1.0), r(1.0), r(0.6), r(0.5), &o).is_err());
        assert!(eval_classical_f4(r(1.0), r(1.0), r(1.0), r(1.0), r(0.3), r(0.3), &o).is_err());
    }

    #[test]
    fn f2_f3_f4_reduce_to_gauss_on_axis() {
        let o = SeriesOptions::default();
        let x = r(0.3);
        let g = eval_2f1(r(0.5), r(1.5), r(2.5), x, &o).unwrap().value;
        let f2 = eval_classical_f2(r(0.5), r(1.5), r(9.0), r(2.5), r(3.0), x, r(0.0), &o).unwrap().value;
        let f3 = eval_classical_f3(r(0.5), r(7.0), r(1.5), r(2.0), r(2.5), x, r(0.0), &o).unwrap().value;
        let f4 = eval_classical_f4(r(0.5), r(1.5), r(2.5), r(4.0), x, r(0.0), &o).unwrap().value;
        for v in [f2, f3, f4] {
            assert!((v - g).norm() < 1e-13);
        }
    }

    #[test]
    fn discrete_pfq_examples() {
        let o = SeriesOptions::default();
        assert_eq!(eval_discrete_pfq(&[r(1.0)], &[], r(0.3), 2, r(0.0), &o).unwrap().value, r(1.0));
        let g = eval_discrete_pfq(&[r(1.0), r(1.0)], &[r(1.0)], r(0.0), 0, r(0.5), &o).unwrap();
        assert!((g.value - r(2.0)).norm() < 1e-12);
        let x = 0.4;
        let res = eval_discrete_pfq(&[r(1.0)], &[], r(3.0), 1, r(x), &o).unwrap();
        assert_eq!(res.verdict, Verdict::Terminated);
        let want = 1.0 + 3.0 * x + 6.0 * x * x + 6.0 * x * x * x;
        assert!((res.value - r(want)).norm() < 1e-14);
    }
}

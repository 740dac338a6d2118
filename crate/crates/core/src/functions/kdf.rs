use std::cmp::Ordering;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scalar::{is_zero, Real};
use crate::series::{sum_gated, Region, CoefficientOracle, EvalResult, FactorSequence, SeparableCoefficients, SeriesOptions, TermWeight};

/// Parameter lists of a Kampé de Fériet double series. `*_joint` entries
/// carry the index `m + n`, `*_x` entries `m`, `*_y` entries `n`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct KdfSpec<T> {
    pub upper_joint: Vec<Complex<T>>,
    pub upper_x: Vec<Complex<T>>,
    pub upper_y: Vec<Complex<T>>,
    pub lower_joint: Vec<Complex<T>>,
    pub lower_x: Vec<Complex<T>>,
    pub lower_y: Vec<Complex<T>>,
}

/// Where `(x, y)` sits relative to the classical convergence conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KdfRegion {
    /// Parameter counts give an entire function.
    Entire,
    Inside,
    /// On the boundary of the region; treated like `Outside`.
    Boundary,
    /// Outside the region, or counts matching neither classical case.
    Outside,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KdfEval<T> {
    pub result: EvalResult<T>,
    pub region: KdfRegion,
}

impl<T: Real> KdfSpec<T> {
    pub(crate) fn oracle(&self) -> Result<SeparableCoefficients<T>> {
        Ok(SeparableCoefficients::new(
            FactorSequence::new(self.upper_joint.clone(), self.lower_joint.clone(), vec![], false)?,
            FactorSequence::new(self.upper_x.clone(), self.lower_x.clone(), vec![], true)?,
            FactorSequence::new(self.upper_y.clone(), self.lower_y.clone(), vec![], true)?,
        ))
    }
}

/// Classifies `(x, y)` against the two classical convergence cases.
pub fn classify_kdf<T: Real>(spec: &KdfSpec<T>, x: Complex<T>, y: Complex<T>) -> KdfRegion {
    let p = spec.upper_joint.len() as i64;
    let l = spec.lower_joint.len() as i64;
    let dx = p + spec.upper_x.len() as i64 - (l + spec.lower_x.len() as i64 + 1);
    let dy = p + spec.upper_y.len() as i64 - (l + spec.lower_y.len() as i64 + 1);
    if dx < 0 && dy < 0 {
        return KdfRegion::Entire;
    }
    let one = T::one();
    // One axis entire, the other of radius one. Without excess joint growth
    // the region is a disc in the second variable alone.
    let single = match (dx.cmp(&0), dy.cmp(&0)) {
        (Ordering::Less, Ordering::Equal) if p <= l => Some(y.norm()),
        (Ordering::Equal, Ordering::Less) if p <= l => Some(x.norm()),
        _ => None,
    };
    if let Some(r) = single {
        return radial(r);
    }
    if dx != 0 || dy != 0 {
        return KdfRegion::Outside;
    }
    let measure = if p > l {
        let e = one / T::from_i64(p - l).expect("small integer");
        x.norm().powf(e) + y.norm().powf(e)
    } else {
        x.norm().max(y.norm())
    };
    radial(measure)
}

fn radial<T: Real>(measure: T) -> KdfRegion {
    if measure < T::one() {
        KdfRegion::Inside
    } else if measure == T::one() {
        KdfRegion::Boundary
    } else {
        KdfRegion::Outside
    }
}

/// Evaluates the Kampé de Fériet series. Outside the classical region the
/// sum is never endorsed as convergent unless it terminates.
pub fn eval_kdf<T: Real>(spec: &KdfSpec<T>, x: Complex<T>, y: Complex<T>, opts: &SeriesOptions<T>) -> Result<KdfEval<T>> {
    KdfEvaluator::new(spec.clone())?.eval(x, y, opts)
}

/// Repeated evaluation of one series at many points, sharing the
/// coefficient cache.
pub(crate) struct KdfEvaluator<T> {
    spec: KdfSpec<T>,
    oracle: SeparableCoefficients<T>,
}

impl<T: Real> KdfEvaluator<T> {
    pub(crate) fn new(spec: KdfSpec<T>) -> Result<Self> {
        let oracle = spec.oracle()?;
        Ok(Self { spec, oracle })
    }

    pub(crate) fn eval(&mut self, x: Complex<T>, y: Complex<T>, opts: &SeriesOptions<T>) -> Result<KdfEval<T>> {
        let o = &mut self.oracle;
        let region = classify_kdf(&self.spec, x, y);
        let bounded_m = is_zero(x) || o.bound_m().is_some() || o.bound_joint().is_some();
        let bounded_n = is_zero(y) || o.bound_n().is_some() || o.bound_joint().is_some();
        let gate = match region {
            KdfRegion::Entire | KdfRegion::Inside => Region::Inside,
            _ if !bounded_m && !bounded_n => Region::Outside,
            _ => Region::Unknown,
        };
        let result = sum_gated(o, x, y, &TermWeight::unit(), opts, gate)?;
        Ok(KdfEval { result, region })
    }
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
    fn empty_spec_is_double_exponential() {
        let ev = eval_kdf(&KdfSpec::default(), r(0.2), r(0.1), &SeriesOptions::default()).unwrap();
        assert_eq!(ev.region, KdfRegion::Entire);
        assert!((ev.result.value - r(0.3f64.exp())).norm() < 1e-14);
        let origin = eval_kdf(&KdfSpec::default(), r(0.0), r(0.0), &SeriesOptions::default()).unwrap();
        assert_eq!(origin.result.value, r(1.0));
    }

    #[test]
    fn classification_cases() {
        // Appell F1 shape: 1:1;1 over 1:0;0
        let f1 = KdfSpec {
            upper_joint: vec![r(1.0)],
            upper_x: vec![r(1.0)],
            upper_y: vec![r(1.0)],
            lower_joint: vec![r(2.0)],
            ..KdfSpec::default()
        };
        assert_eq!(classify_kdf(&f1, r(0.5), r(0.5)), KdfRegion::Inside);
        assert_eq!(classify_kdf(&f1, r(1.0), r(0.5)), KdfRegion::Boundary);
        assert_eq!(classify_kdf(&f1, r(1.2), r(0.5)), KdfRegion::Outside);
        // F4 shape: 2:0;0 over 0:1;1, region sqrt|x| + sqrt|y| < 1
        let f4 = KdfSpec {
            upper_joint: vec![r(1.0), r(1.0)],
            lower_x: vec![r(1.0)],
            lower_y: vec![r(1.0)],
            ..KdfSpec::default()
        };
        assert_eq!(classify_kdf(&f4, r(0.2), r(0.2)), KdfRegion::Inside);
        assert_eq!(classify_kdf(&f4, r(0.3), r(0.3)), KdfRegion::Outside);
        assert_eq!(classify_kdf(&f4, r(0.25), r(0.25)), KdfRegion::Boundary);
        // Humbert shape: 1:0;1 over 1:0;0, entire in x, |y| < 1
        let h = KdfSpec {
            upper_joint: vec![r(1.0)],
            upper_y: vec![r(1.0)],
            lower_joint: vec![r(2.0)],
            ..KdfSpec::default()
        };
        assert_eq!(classify_kdf(&h, r(50.0), r(0.5)), KdfRegion::Inside);
        assert_eq!(classify_kdf(&h, r(0.1), r(1.5)), KdfRegion::Outside);
    }

    #[test]
    fn outside_is_not_endorsed() {
        let f1 = KdfSpec {
            upper_joint: vec![r(1.0)],
            upper_x: vec![r(1.0)],
            upper_y: vec![r(1.0)],
            lower_joint: vec![r(2.0)],
            ..KdfSpec::default()
        };
        let ev = eval_kdf(&f1, r(-1.5), r(0.1), &SeriesOptions::default()).unwrap();
        assert_eq!(ev.region, KdfRegion::Outside);
        assert_ne!(ev.result.verdict, Verdict::Converged);
    }

    #[test]
    fn terminating_axis_outside_region_is_exact() {
        let spec = KdfSpec { upper_x: vec![r(-2.0), r(1.0)], ..KdfSpec::default() };
        // Σ_{m≤2} (-2)_m x^m = 1 - 2x + 2x^2
        let ev = eval_kdf(&spec, r(3.0), r(0.0), &SeriesOptions::default()).unwrap();
        assert_eq!(ev.result.verdict, Verdict::Terminated);
        assert!((ev.result.value - r(13.0)).norm() < 1e-14);
    }
}

//! Double-series summation along diagonals `m + n = d`.

mod factors;
mod kahan;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

pub use factors::{FactorSequence, Lattice, SeparableCoefficients};
pub use kahan::{kahan_accumulate, KahanSum};

use crate::error::{Error, Result};
use crate::scalar::{cn, is_zero, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermIndex {
    pub m: usize,
    pub n: usize,
}

impl TermIndex {
    pub fn new(m: usize, n: usize) -> Self {
        Self { m, n }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesOptions<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_diagonal: usize,
    pub consecutive_small: usize,
    pub divergence_ratio: T,
    pub divergence_window: usize,
}

impl<T: Real> Default for SeriesOptions<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-12).max(T::epsilon() * T::lit(16.0)),
            abs_tol: T::min_positive_value().max(T::lit(1e-300)),
            max_diagonal: 2000,
            consecutive_small: 3,
            divergence_ratio: T::lit(1.5),
            divergence_window: 8,
        }
    }
}

impl<T: Real> SeriesOptions<T> {
    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_diagonal(mut self, max_diagonal: usize) -> Self {
        self.max_diagonal = max_diagonal;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > T::zero())
            || self.max_diagonal < 1
            || self.consecutive_small < 1
            || !(self.divergence_ratio > T::one())
        {
            return Err(Error::Precondition(
                "series options need rel_tol > 0, max_diagonal >= 1, consecutive_small >= 1, divergence_ratio > 1"
                    .into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Converged,
    /// Finite sum, exact up to rounding.
    Terminated,
    DivergenceSuspected,
    MaxTermsReached,
}

impl Verdict {
    /// Whether the value can be used quantitatively.
    pub fn is_quantitative(self) -> bool {
        matches!(self, Verdict::Converged | Verdict::Terminated)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalResult<T> {
    pub value: Complex<T>,
    pub terms_summed: usize,
    pub last_diagonal: usize,
    pub tail_estimate: T,
    pub verdict: Verdict,
}

impl<T: Real> EvalResult<T> {
    /// The value, or an error when the verdict does not endorse it.
    pub fn quantitative(&self) -> Result<Complex<T>> {
        if self.verdict.is_quantitative() {
            Ok(self.value)
        } else {
            Err(Error::Domain(format!("series verdict {:?}", self.verdict)))
        }
    }

    pub fn exact(value: Complex<T>) -> Self {
        Self { value, terms_summed: 0, last_diagonal: 0, tail_estimate: T::zero(), verdict: Verdict::Terminated }
    }
}

/// Affine weight `α + β·m + γ·n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Affine<T> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
    pub gamma: Complex<T>,
}

impl<T: Real> Affine<T> {
    pub fn new(alpha: Complex<T>, beta: Complex<T>, gamma: Complex<T>) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn eval(&self, m: usize, n: usize) -> Complex<T> {
        self.alpha + self.beta * cn::<T>(m) + self.gamma * cn::<T>(n)
    }
}

/// Product of affine factors applied termwise; empty means 1.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TermWeight<T> {
    pub factors: Vec<Affine<T>>,
}

impl<T: Real> TermWeight<T> {
    pub fn unit() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn from_factors(factors: Vec<Affine<T>>) -> Self {
        Self { factors }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn then(mut self, other: &TermWeight<T>) -> Self {
        self.factors.extend(other.factors.iter().copied());
        self
    }

    pub fn eval(&self, m: usize, n: usize) -> Complex<T> {
        let mut acc = Complex::new(T::one(), T::zero());
        for f in &self.factors {
            acc = acc * f.eval(m, n);
        }
        acc
    }
}

/// Source of the coefficients `A_{m,n}` of `x^m y^n`.
///
/// The engine requests indices diagonal by diagonal, `m` ascending within a
/// diagonal.
pub trait CoefficientOracle<T: Real> {
    fn coeff(&mut self, idx: TermIndex) -> Result<Complex<T>>;

    /// Largest `m` with a possibly nonzero coefficient.
    fn bound_m(&self) -> Option<usize> {
        None
    }

    fn bound_n(&self) -> Option<usize> {
        None
    }

    /// Largest `m + n` with a possibly nonzero coefficient.
    fn bound_joint(&self) -> Option<usize> {
        None
    }

    /// Factorial degree of coefficient growth along `m` and along `n`.
    /// Positive values mean the series diverges wherever that axis is live.
    fn excess(&self) -> (i64, i64) {
        (0, 0)
    }
}

impl<T: Real, O: CoefficientOracle<T> + ?Sized> CoefficientOracle<T> for &mut O {
    fn coeff(&mut self, idx: TermIndex) -> Result<Complex<T>> {
        (**self).coeff(idx)
    }
    fn bound_m(&self) -> Option<usize> {
        (**self).bound_m()
    }
    fn bound_n(&self) -> Option<usize> {
        (**self).bound_n()
    }
    fn bound_joint(&self) -> Option<usize> {
        (**self).bound_joint()
    }
    fn excess(&self) -> (i64, i64) {
        (**self).excess()
    }
}

/// Single-index series from a closure, placed on the `m` axis.
pub struct IndexedSeries<F> {
    f: F,
    bound: Option<usize>,
    excess: i64,
}

impl<F> IndexedSeries<F> {
    pub fn new(f: F) -> Self {
        Self { f, bound: None, excess: 0 }
    }

    pub fn with_bound(mut self, bound: Option<usize>) -> Self {
        self.bound = bound;
        self
    }

    pub fn with_excess(mut self, excess: i64) -> Self {
        self.excess = excess;
        self
    }
}

impl<T: Real, F: FnMut(usize) -> Result<Complex<T>>> CoefficientOracle<T> for IndexedSeries<F> {
    fn coeff(&mut self, idx: TermIndex) -> Result<Complex<T>> {
        (self.f)(idx.m)
    }
    fn bound_m(&self) -> Option<usize> {
        self.bound
    }
    fn bound_n(&self) -> Option<usize> {
        Some(0)
    }
    fn excess(&self) -> (i64, i64) {
        (self.excess, -1)
    }
}

fn min_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Sums `Σ w(m,n) A_{m,n} x^m y^n` along diagonals.
pub fn sum_double_series<T: Real, O: CoefficientOracle<T>>(
    coeff: &mut O,
    x: Complex<T>,
    y: Complex<T>,
    weight: &TermWeight<T>,
    opts: &SeriesOptions<T>,
) -> Result<EvalResult<T>> {
    sum_gated(coeff, x, y, weight, opts, Region::Unknown)
}

/// What the caller knows about the point relative to the region of
/// convergence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Region {
    /// Growing terms are taken as a sign of divergence.
    Unknown,
    /// Terms may grow for a while before they decay.
    Inside,
    /// A non-terminating sum is never endorsed.
    Outside,
}

/// As [`sum_double_series`] with the region of `(x, y)` supplied.
pub(crate) fn sum_gated<T: Real, O: CoefficientOracle<T>>(
    coeff: &mut O,
    x: Complex<T>,
    y: Complex<T>,
    weight: &TermWeight<T>,
    opts: &SeriesOptions<T>,
    region: Region,
) -> Result<EvalResult<T>> {
    let outside = region == Region::Outside;
    opts.validate()?;
    let joint = coeff.bound_joint();
    let bm = min_opt(if is_zero(x) { Some(0) } else { coeff.bound_m() }, joint);
    let bn = min_opt(if is_zero(y) { Some(0) } else { coeff.bound_n() }, joint);
    let finite_end = match (bm, bn) {
        (Some(a), Some(b)) => Some(joint.map_or(a + b, |j| j.min(a + b))),
        _ => None,
    };
    let (em, en) = coeff.excess();
    let divergent =
        finite_end.is_none() && (outside || (bm.is_none() && em > 0) || (bn.is_none() && en > 0));
    let last = finite_end.unwrap_or(opts.max_diagonal);
    // Terms of an entire series may grow for a while before they decay.
    let transient_growth = region == Region::Inside || (bm.is_some() || em < 0) && (bn.is_some() || en < 0);

    let one = Complex::new(T::one(), T::zero());
    let mut xp = vec![one];
    let mut yp = vec![one];
    let mut sum = KahanSum::new();
    let mut terms = 0usize;
    let mut small_run = 0usize;
    let mut grow_run = 0usize;
    let mut history: Vec<T> = Vec::new();
    let mut last_abs = T::zero();
    // A product of r affine factors can annihilate at most r whole
    // diagonals; those say nothing about convergence.
    let mut weight_zeros = weight.factors.len();

    let finish = |value, terms, d, tail, verdict| EvalResult { value, terms_summed: terms, last_diagonal: d, tail_estimate: tail, verdict };

    for d in 0..=last {
        if d > 0 {
            if bm.is_none_or(|b| d <= b) {
                let v = xp[d - 1] * x;
                xp.push(v);
            }
            if bn.is_none_or(|b| d <= b) {
                let v = yp[d - 1] * y;
                yp.push(v);
            }
        }
        let m_hi = bm.map_or(d, |b| b.min(d));
        let m_lo = bn.map_or(0, |b| d.saturating_sub(b));
        let mut abs_d = T::zero();
        let mut overflowed = false;
        if m_lo <= m_hi {
            for m in m_lo..=m_hi {
                let n = d - m;
                let a = match coeff.coeff(TermIndex { m, n }) {
                    Ok(a) => a,
                    Err(Error::Overflow(what)) => {
                        if divergent || grow_run > 0 {
                            overflowed = true;
                            break;
                        }
                        return Err(Error::Overflow(what));
                    }
                    Err(e) => return Err(e),
                };
                let mut term = a * xp[m] * yp[n];
                if !weight.is_unit() {
                    term = term * weight.eval(m, n);
                }
                if !(term.re.is_finite() && term.im.is_finite()) {
                    if divergent || grow_run > 0 {
                        overflowed = true;
                        break;
                    }
                    return Err(Error::Overflow("series term"));
                }
                sum.add(term);
                abs_d = abs_d + term.norm();
                terms += 1;
            }
        }
        if overflowed {
            let tail = T::infinity();
            return Ok(finish(sum.value(), terms, d, tail, Verdict::DivergenceSuspected));
        }
        last_abs = abs_d;
        if finite_end.is_some() {
            continue;
        }
        let partial = sum.value();
        let tail = abs_d * T::from_usize_lossy(opts.consecutive_small);
        if abs_d == T::zero() && weight_zeros > 0 {
            weight_zeros -= 1;
        } else if tail <= opts.rel_tol * partial.norm() + opts.abs_tol {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= opts.consecutive_small && !divergent {
            return Ok(finish(partial, terms, d, tail, Verdict::Converged));
        }
        if let Some(&prev) = history.last() {
            if abs_d > prev && prev > T::zero() {
                grow_run += 1;
            } else {
                grow_run = 0;
            }
        }
        history.push(abs_d);
        let w = opts.divergence_window;
        if !transient_growth && grow_run >= w && history.len() > w {
            let base = history[history.len() - 1 - w];
            if abs_d >= opts.divergence_ratio * base {
                return Ok(finish(partial, terms, d, tail, Verdict::DivergenceSuspected));
            }
        }
    }
    let value = sum.value();
    if finite_end.is_some() {
        return Ok(finish(value, terms, last, T::zero(), Verdict::Terminated));
    }
    let tail = last_abs * T::from_usize_lossy(opts.consecutive_small);
    let verdict = if divergent { Verdict::DivergenceSuspected } else { Verdict::MaxTermsReached };
    Ok(finish(value, terms, last, tail, verdict))
}

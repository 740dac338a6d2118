//! Hypergeometric factor sequences built by ratio recurrence.

use num_complex::Complex;

use super::{CoefficientOracle, TermIndex};
use crate::error::{Error, Result};
use crate::scalar::{cn, nonnegative_integer, nonpositive_integer, Real};

/// Lattice factor `(-1)^{Nk} (-t)_{Nk}` of a step-`k` discrete series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lattice<T> {
    pub t: Complex<T>,
    pub k: usize,
}

impl<T: Real> Lattice<T> {
    pub fn new(t: Complex<T>, k: usize) -> Self {
        Self { t, k }
    }

    /// Last index with a nonzero factor when `t` is a nonnegative integer.
    pub fn bound(&self) -> Option<usize> {
        if self.k == 0 {
            return None;
        }
        nonnegative_integer(self.t).map(|big_t| big_t / self.k)
    }

    /// `∏_{j=Nk}^{Nk+k-1} (t - j)`, the ratio between consecutive factors.
    fn ratio(&self, n: usize) -> Complex<T> {
        let mut acc = Complex::new(T::one(), T::zero());
        for j in n * self.k..(n + 1) * self.k {
            acc = acc * (self.t - T::from_usize_lossy(j));
        }
        acc
    }
}

/// The sequence `f(N) = s^N ∏(u_i)_N ∏ lattices / ∏(l_i)_N [/ N!]`, cached.
#[derive(Clone, Debug)]
pub struct FactorSequence<T> {
    upper: Vec<Complex<T>>,
    lower: Vec<Complex<T>>,
    lattices: Vec<Lattice<T>>,
    scale: Complex<T>,
    factorial: bool,
    bound: Option<usize>,
    values: Vec<Complex<T>>,
}

impl<T: Real> FactorSequence<T> {
    pub fn new(
        upper: Vec<Complex<T>>,
        lower: Vec<Complex<T>>,
        lattices: Vec<Lattice<T>>,
        factorial: bool,
    ) -> Result<Self> {
        for l in &lower {
            if nonpositive_integer(*l).is_some() {
                return Err(Error::Pole { what: "lower parameter", value: format!("{l}") });
            }
        }
        let mut bound: Option<usize> = None;
        let mut tighten = |b: usize| bound = Some(bound.map_or(b, |c: usize| c.min(b)));
        for u in &upper {
            if let Some(j) = nonpositive_integer(*u) {
                tighten(j);
            }
        }
        for lat in &lattices {
            if let Some(b) = lat.bound() {
                tighten(b);
            }
        }
        Ok(Self {
            upper,
            lower,
            lattices,
            scale: Complex::new(T::one(), T::zero()),
            factorial,
            bound,
            values: vec![Complex::new(T::one(), T::zero())],
        })
    }

    /// The constant sequence 1.
    pub fn unit() -> Self {
        Self::new(Vec::new(), Vec::new(), Vec::new(), false).expect("no lower parameters")
    }

    pub fn with_scale(mut self, scale: Complex<T>) -> Self {
        self.scale = scale;
        self
    }

    /// Last index with a possibly nonzero value.
    pub fn bound(&self) -> Option<usize> {
        self.bound
    }

    /// Numerator minus denominator factorial degree.
    pub fn excess(&self) -> i64 {
        let lat: usize = self.lattices.iter().map(|l| l.k).sum();
        (self.upper.len() + lat) as i64 - self.lower.len() as i64 - i64::from(self.factorial)
    }

    pub fn get(&mut self, n: usize) -> Result<Complex<T>> {
        if let Some(b) = self.bound {
            if n > b {
                return Ok(Complex::new(T::zero(), T::zero()));
            }
        }
        while self.values.len() <= n {
            let j = self.values.len() - 1;
            let jj = T::from_usize_lossy(j);
            let mut r = self.scale;
            for u in &self.upper {
                r = r * (*u + jj);
            }
            for lat in &self.lattices {
                r = r * lat.ratio(j);
            }
            for l in &self.lower {
                r = r / (*l + jj);
            }
            if self.factorial {
                r = r / cn::<T>(j + 1);
            }
            let next = self.values[j] * r;
            if !(next.re.is_finite() && next.im.is_finite()) {
                return Err(Error::Overflow("series coefficient"));
            }
            self.values.push(next);
        }
        Ok(self.values[n])
    }
}

/// Coefficients of the form `J(m+n) · P(m) · Q(n)`.
#[derive(Clone, Debug)]
pub struct SeparableCoefficients<T> {
    pub joint: FactorSequence<T>,
    pub xs: FactorSequence<T>,
    pub ys: FactorSequence<T>,
}

impl<T: Real> SeparableCoefficients<T> {
    pub fn new(joint: FactorSequence<T>, xs: FactorSequence<T>, ys: FactorSequence<T>) -> Self {
        Self { joint, xs, ys }
    }

    /// Single-index series: only the `xs` sequence varies.
    pub fn single(xs: FactorSequence<T>) -> Self {
        Self::new(FactorSequence::unit(), xs, FactorSequence::unit())
    }
}

impl<T: Real> CoefficientOracle<T> for SeparableCoefficients<T> {
    fn coeff(&mut self, idx: TermIndex) -> Result<Complex<T>> {
        let j = self.joint.get(idx.m + idx.n)?;
        if j.re == T::zero() && j.im == T::zero() {
            return Ok(j);
        }
        let p = self.xs.get(idx.m)?;
        let q = self.ys.get(idx.n)?;
        let v = j * p * q;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow("series coefficient"))
        }
    }

    fn bound_m(&self) -> Option<usize> {
        self.xs.bound()
    }

    fn bound_n(&self) -> Option<usize> {
        self.ys.bound()
    }

    fn bound_joint(&self) -> Option<usize> {
        self.joint.bound()
    }

    fn excess(&self) -> (i64, i64) {
        let j = self.joint.excess();
        (j + self.xs.excess(), j + self.ys.excess())
    }
}

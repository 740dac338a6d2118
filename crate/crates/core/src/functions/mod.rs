//! Named series: the two discrete Appell forms, their Humbert degenerations,
//! discrete pFq, Kampé de Fériet, and classical reference functions.

mod classical;
mod kdf;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

pub use classical::{eval_2f1, eval_classical_f1, eval_classical_f2, eval_classical_f3, eval_classical_f4, eval_discrete_pfq};
pub use kdf::{classify_kdf, eval_kdf, KdfEval, KdfRegion, KdfSpec};
pub(crate) use kdf::KdfEvaluator;

use crate::error::{Error, Result};
use crate::scalar::{is_zero, Real};
use crate::series::{
    sum_gated, Region, CoefficientOracle, EvalResult, FactorSequence, Lattice, SeparableCoefficients, SeriesOptions,
    TermWeight,
};

/// Parameters of the first form, with separate lattice variables per index.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Appell1Params<T> {
    pub a: Complex<T>,
    pub b1: Complex<T>,
    pub b2: Complex<T>,
    pub c: Complex<T>,
    pub t1: Complex<T>,
    pub t2: Complex<T>,
    pub k1: usize,
    pub k2: usize,
    pub x: Complex<T>,
    pub y: Complex<T>,
}

/// Parameters of the second form, with one lattice variable on `m + n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Appell2Params<T> {
    pub a: Complex<T>,
    pub b1: Complex<T>,
    pub b2: Complex<T>,
    pub c: Complex<T>,
    pub t: Complex<T>,
    pub k: usize,
    pub x: Complex<T>,
    pub y: Complex<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum AppellParams<T> {
    First(Appell1Params<T>),
    Second(Appell2Params<T>),
}

/// Which parameter an integer shift acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Param {
    A,
    B1,
    B2,
    C,
}

impl<T: Real> AppellParams<T> {
    pub fn get(&self, which: Param) -> Complex<T> {
        let (a, b1, b2, c) = match self {
            AppellParams::First(p) => (p.a, p.b1, p.b2, p.c),
            AppellParams::Second(p) => (p.a, p.b1, p.b2, p.c),
        };
        match which {
            Param::A => a,
            Param::B1 => b1,
            Param::B2 => b2,
            Param::C => c,
        }
    }

    fn slot(&mut self, which: Param) -> &mut Complex<T> {
        match (self, which) {
            (AppellParams::First(p), Param::A) => &mut p.a,
            (AppellParams::First(p), Param::B1) => &mut p.b1,
            (AppellParams::First(p), Param::B2) => &mut p.b2,
            (AppellParams::First(p), Param::C) => &mut p.c,
            (AppellParams::Second(p), Param::A) => &mut p.a,
            (AppellParams::Second(p), Param::B1) => &mut p.b1,
            (AppellParams::Second(p), Param::B2) => &mut p.b2,
            (AppellParams::Second(p), Param::C) => &mut p.c,
        }
    }

    /// Copy with `which` moved by `delta`.
    pub fn shifted(&self, which: Param, delta: Complex<T>) -> Self {
        let mut out = *self;
        *out.slot(which) = *out.slot(which) + delta;
        out
    }

    /// Copy with `which` replaced.
    pub fn with(&self, which: Param, value: Complex<T>) -> Self {
        let mut out = *self;
        *out.slot(which) = value;
        out
    }

    pub fn x(&self) -> Complex<T> {
        match self {
            AppellParams::First(p) => p.x,
            AppellParams::Second(p) => p.x,
        }
    }

    pub fn y(&self) -> Complex<T> {
        match self {
            AppellParams::First(p) => p.y,
            AppellParams::Second(p) => p.y,
        }
    }

    pub fn with_args(&self, x: Complex<T>, y: Complex<T>) -> Self {
        match *self {
            AppellParams::First(p) => AppellParams::First(Appell1Params { x, y, ..p }),
            AppellParams::Second(p) => AppellParams::Second(Appell2Params { x, y, ..p }),
        }
    }

    pub fn form(&self) -> Form {
        match self {
            AppellParams::First(_) => Form::First,
            AppellParams::Second(_) => Form::Second,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Form {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HumbertFamily {
    Phi1,
    Phi2,
    Phi3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HumbertVariant {
    pub family: HumbertFamily,
    pub form: Form,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerationProbe<T> {
    pub epsilon: T,
    pub variant: HumbertVariant,
}

/// Which factors of the Appell coefficient are kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Keep {
    pub a: bool,
    pub b2: bool,
}

impl Keep {
    pub const ALL: Keep = Keep { a: true, b2: true };

    fn humbert(family: HumbertFamily) -> Keep {
        match family {
            HumbertFamily::Phi1 => Keep { a: true, b2: false },
            HumbertFamily::Phi2 => Keep { a: false, b2: true },
            HumbertFamily::Phi3 => Keep { a: false, b2: false },
        }
    }
}

fn check_c<T: Real>(c: Complex<T>) -> Result<()> {
    if crate::scalar::nonpositive_integer(c).is_some() {
        return Err(Error::Pole { what: "c", value: format!("{c}") });
    }
    Ok(())
}

pub(crate) fn appell_oracle<T: Real>(p: &AppellParams<T>, keep: Keep) -> Result<SeparableCoefficients<T>> {
    let (a, b1, b2, c) = (p.get(Param::A), p.get(Param::B1), p.get(Param::B2), p.get(Param::C));
    check_c(c)?;
    let mut joint_up = Vec::new();
    if keep.a {
        joint_up.push(a);
    }
    let y_up = if keep.b2 { vec![b2] } else { Vec::new() };
    let (joint_lat, x_lat, y_lat) = match p {
        AppellParams::First(q) => (vec![], vec![Lattice::new(q.t1, q.k1)], vec![Lattice::new(q.t2, q.k2)]),
        AppellParams::Second(q) => (vec![Lattice::new(q.t, q.k)], vec![], vec![]),
    };
    Ok(SeparableCoefficients::new(
        FactorSequence::new(joint_up, vec![c], joint_lat, false)?,
        FactorSequence::new(vec![b1], vec![], x_lat, true)?,
        FactorSequence::new(y_up, vec![], y_lat, true)?,
    ))
}

/// Rejects `|x| >= 1` or `|y| >= 1` on an axis that neither terminates nor
/// has entire growth.
pub(crate) fn check_axes<T: Real, O: CoefficientOracle<T>>(o: &O, x: Complex<T>, y: Complex<T>) -> Result<()> {
    let joint = o.bound_joint();
    let (em, en) = o.excess();
    let live_m = !is_zero(x) && o.bound_m().is_none() && joint.is_none();
    let live_n = !is_zero(y) && o.bound_n().is_none() && joint.is_none();
    if live_m && em >= 0 && x.norm() >= T::one() {
        return Err(Error::Domain(format!("|x| = {} >= 1 on a non-terminating index", x.norm())));
    }
    if live_n && en >= 0 && y.norm() >= T::one() {
        return Err(Error::Domain(format!("|y| = {} >= 1 on a non-terminating index", y.norm())));
    }
    Ok(())
}

pub(crate) fn eval_with_weight<T: Real>(
    p: &AppellParams<T>,
    keep: Keep,
    weight: &TermWeight<T>,
    opts: &SeriesOptions<T>,
) -> Result<EvalResult<T>> {
    let mut o = appell_oracle(p, keep)?;
    let (x, y) = (p.x(), p.y());
    check_axes(&o, x, y)?;
    sum_gated(&mut o, x, y, weight, opts, Region::Inside)
}

/// Evaluates either discrete Appell form.
pub fn eval_appell<T: Real>(p: &AppellParams<T>, opts: &SeriesOptions<T>) -> Result<EvalResult<T>> {
    eval_with_weight(p, Keep::ALL, &TermWeight::unit(), opts)
}

/// First discrete Appell form.
pub fn eval_f1_d1<T: Real>(p: &Appell1Params<T>, opts: &SeriesOptions<T>) -> Result<EvalResult<T>> {
    eval_appell(&AppellParams::First(*p), opts)
}

/// Second discrete Appell form.
pub fn eval_f1_d2<T: Real>(p: &Appell2Params<T>, opts: &SeriesOptions<T>) -> Result<EvalResult<T>> {
    eval_appell(&AppellParams::Second(*p), opts)
}

/// First form with a common step `k` on both indices.
#[allow(clippy::too_many_arguments)]
pub fn eval_f1_d1_common_step<T: Real>(
    a: Complex<T>,
    b1: Complex<T>,
    b2: Complex<T>,
    c: Complex<T>,
    t1: Complex<T>,
    t2: Complex<T>,
    k: usize,
    x: Complex<T>,
    y: Complex<T>,
    opts: &SeriesOptions<T>,
) -> Result<EvalResult<T>> {
    eval_f1_d1(&Appell1Params { a, b1, b2, c, t1, t2, k1: k, k2: k, x, y }, opts)
}

/// First form with a common lattice variable `t` on both indices.
#[allow(clippy::too_many_arguments)]
pub fn eval_f1_d1_common_lattice<T: Real>(
    a: Complex<T>,
    b1: Complex<T>,
    b2: Complex<T>,
    c: Complex<T>,
    t: Complex<T>,
    k1: usize,
    k2: usize,
    x: Complex<T>,
    y: Complex<T>,
    opts: &SeriesOptions<T>,
) -> Result<EvalResult<T>> {
    eval_f1_d1(&Appell1Params { a, b1, b2, c, t1: t, t2: t, k1, k2, x, y }, opts)
}

/// Discrete Humbert function of the family named by `family`, in the form
/// given by the parameter type. Parameters the family drops are ignored.
pub fn eval_humbert<T: Real>(
    family: HumbertFamily,
    p: &AppellParams<T>,
    opts: &SeriesOptions<T>,
) -> Result<EvalResult<T>> {
    eval_with_weight(p, Keep::humbert(family), &TermWeight::unit(), opts)
}

/// Parameters of the parent function whose `ε → 0` limit is the Humbert
/// function.
pub fn degeneration_point<T: Real>(family: HumbertFamily, eps: T, base: &AppellParams<T>) -> AppellParams<T> {
    let inv = Complex::new(T::one() / eps, T::zero());
    let (x, y) = (base.x(), base.y());
    match family {
        HumbertFamily::Phi1 => base.with(Param::B2, inv).with_args(x, y * eps),
        HumbertFamily::Phi2 => base.with(Param::A, inv).with_args(x * eps, y * eps),
        HumbertFamily::Phi3 => base.with(Param::A, inv).with(Param::B2, inv).with_args(x * eps, y * eps * eps),
    }
}

/// `|F(ε-substituted) - φ|` at the probe's ε.
pub fn degeneration_error<T: Real>(
    probe: &DegenerationProbe<T>,
    base: &AppellParams<T>,
    opts: &SeriesOptions<T>,
) -> Result<T> {
    if base.form() != probe.variant.form {
        return Err(Error::Precondition("probe form does not match the parameter form".into()));
    }
    let eps = probe.epsilon;
    if !(eps > T::zero()) || eps > T::lit(0.1) {
        return Err(Error::Precondition("degeneration needs 0 < epsilon <= 0.1".into()));
    }
    if eps < T::lit(1e-8) {
        return Err(Error::Precondition("epsilon below 1e-8 cancels catastrophically".into()));
    }
    let family = probe.variant.family;
    let parent = eval_appell(&degeneration_point(family, eps, base), opts)?.quantitative()?;
    let limit = eval_humbert(family, base, opts)?.quantitative()?;
    Ok((parent - limit).norm())
}

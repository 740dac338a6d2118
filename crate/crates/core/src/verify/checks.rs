//! Both sides of each identity family at one draw.

use super::{Draw, IdentityFamily, SkipReason, SuiteOptions};
use crate::error::Error;
use crate::functions::{
    degeneration_error, eval_appell, eval_classical_f1, eval_f1_d1_common_lattice, eval_f1_d1_common_step, eval_kdf,
    Appell1Params, AppellParams, DegenerationProbe, Form, HumbertFamily, HumbertVariant, KdfSpec, Param,
};
use crate::integral::{eval_integral, IntegralForm};
use crate::operators::{
    apply_numeric, apply_weighted, delta_power, partial_power_sides, shift_t, x_derivative, AffineOperator,
    DerivativeShape, OperatorAtom, OperatorExpr, TSlot,
};
use crate::scalar::nonnegative_integer;
use crate::series::{sum_double_series, IndexedSeries, SeriesOptions, TermWeight};
use crate::special::{binomial, discrete_pochhammer, pochhammer};
use crate::{Appell, C64};

/// Why a check produced no residual.
pub(super) enum Failure {
    Skip(SkipReason),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(m) => Failure::Skip(SkipReason::new("precondition", m)),
            e @ Error::Pole { .. } => Failure::Skip(SkipReason::new("pole", e.to_string())),
            e => Failure::Error(e),
        }
    }
}

pub(super) type Outcome<T> = std::result::Result<T, Failure>;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn ci(n: usize) -> C64 {
    c(n as f64)
}

fn value(p: &Appell, so: &SeriesOptions<f64>) -> Outcome<C64> {
    Ok(eval_appell(p, so)?.quantitative()?)
}

fn weighted(p: &Appell, factors: Vec<AffineOperator<f64>>, so: &SeriesOptions<f64>) -> Outcome<C64> {
    Ok(apply_weighted(p, &OperatorExpr::of(factors), so)?.quantitative()?)
}

fn constant(v: C64) -> AffineOperator<f64> {
    AffineOperator::constant(v)
}

fn atom(a: OperatorAtom) -> AffineOperator<f64> {
    AffineOperator::atom(a)
}

fn inverse_step(k: usize) -> Outcome<C64> {
    if k == 0 {
        return Err(Failure::Skip(SkipReason::new("precondition", "the identity divides by a step k = 0")));
    }
    Ok(c(1.0 / k as f64))
}

fn first(p: &Appell) -> Appell1Params<f64> {
    match p {
        AppellParams::First(q) => *q,
        AppellParams::Second(_) => unreachable!("draws follow the family's form"),
    }
}

/// `(-1)^{rk} (-t)_{rk}`.
fn lattice(t: C64, r: usize, k: usize) -> Outcome<C64> {
    Ok(discrete_pochhammer(t, r, k)?)
}

fn rising(u: C64, n: usize) -> Outcome<C64> {
    Ok(pochhammer(u, n)?)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Axis {
    X,
    Y,
}

/// What one summation index sees: its `b`, argument, lattice and operators.
struct AxisView {
    b: Param,
    arg: C64,
    t: C64,
    k: usize,
    slot: TSlot,
    euler: OperatorAtom,
    lattice: OperatorAtom,
}

fn axis(p: &Appell, ax: Axis) -> AxisView {
    let (b, euler) = match ax {
        Axis::X => (Param::B1, OperatorAtom::Theta),
        Axis::Y => (Param::B2, OperatorAtom::Phi),
    };
    let arg = if ax == Axis::X { p.x() } else { p.y() };
    match (p, ax) {
        (AppellParams::First(q), Axis::X) => {
            AxisView { b, arg, t: q.t1, k: q.k1, slot: TSlot::T1, euler, lattice: OperatorAtom::BigTheta1 }
        }
        (AppellParams::First(q), Axis::Y) => {
            AxisView { b, arg, t: q.t2, k: q.k2, slot: TSlot::T2, euler, lattice: OperatorAtom::BigTheta2 }
        }
        (AppellParams::Second(q), _) => {
            AxisView { b, arg, t: q.t, k: q.k, slot: TSlot::T, euler, lattice: OperatorAtom::BigTheta }
        }
    }
}

/// `p` with the lattice variable of `view` moved down by `steps · k`.
fn lowered(p: &Appell, view: &AxisView, steps: usize) -> Outcome<Appell> {
    Ok(shift_t(p, view.slot, -ci(steps * view.k))?)
}

/// `Θ₁/k₁ + Θ₂/k₂` on the first form, `Θ/k` on the second, plus `offset`.
fn joint_lattice(p: &Appell, offset: C64) -> Outcome<AffineOperator<f64>> {
    Ok(match p {
        AppellParams::First(q) => constant(offset)
            .plus(inverse_step(q.k1)?, OperatorAtom::BigTheta1)
            .plus(inverse_step(q.k2)?, OperatorAtom::BigTheta2),
        AppellParams::Second(q) => constant(offset).plus(inverse_step(q.k)?, OperatorAtom::BigTheta),
    })
}

fn kdf_value(spec: KdfSpec<f64>, x: C64, y: C64, so: &SeriesOptions<f64>) -> Outcome<C64> {
    Ok(eval_kdf(&spec, x, y, so)?.result.quantitative()?)
}

/// Largest `m + n` the direct oracle sums when no index terminates.
const DIRECT_TERMS: usize = 90;

/// The first form summed term by term from its definition, without the
/// coefficient machinery of the series engine.
fn direct_sum(q: &Appell1Params<f64>) -> Outcome<C64> {
    let bound = |t: C64, k: usize| if k > 0 { nonnegative_integer(t).map(|n| n / k) } else { None };
    let mmax = bound(q.t1, q.k1).unwrap_or(DIRECT_TERMS);
    let nmax = bound(q.t2, q.k2).unwrap_or(DIRECT_TERMS);
    let one = c(1.0);
    let mut total = C64::new(0.0, 0.0);
    for m in 0..=mmax.min(DIRECT_TERMS) {
        for n in 0..=nmax.min(DIRECT_TERMS - m) {
            let joint = rising(q.a, m + n)? / rising(q.c, m + n)?;
            let xs = rising(q.b1, m)? / rising(one, m)? * lattice(q.t1, m, q.k1)?;
            let ys = rising(q.b2, n)? / rising(one, n)? * lattice(q.t2, n, q.k2)?;
            total += joint * xs * ys * q.x.powu(m as u32) * q.y.powu(n as u32);
        }
    }
    Ok(total)
}

fn reduction(family: IdentityFamily, p: &Appell, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    use IdentityFamily::*;
    let lhs = value(p, so)?;
    let (a, b1, b2, cc) = (p.get(Param::A), p.get(Param::B1), p.get(Param::B2), p.get(Param::C));
    let (x, y) = (p.x(), p.y());
    let spec = |joint: Vec<C64>, ux: Vec<C64>, uy: Vec<C64>| KdfSpec {
        upper_joint: joint,
        upper_x: ux,
        upper_y: uy,
        lower_joint: vec![cc],
        ..KdfSpec::default()
    };
    let rhs = match (family, p) {
        (ReductionClassical | SecondReductionClassical, _) => eval_classical_f1(a, b1, b2, cc, x, y, so)?.quantitative()?,
        (ReductionLatticeX, AppellParams::First(q)) => kdf_value(spec(vec![a], vec![b1, -q.t1], vec![b2]), -x, y, so)?,
        (ReductionLatticeY, AppellParams::First(q)) => kdf_value(spec(vec![a], vec![b1], vec![b2, -q.t2]), x, -y, so)?,
        (ReductionLatticeBoth, AppellParams::First(q)) => {
            kdf_value(spec(vec![a], vec![b1, -q.t1], vec![b2, -q.t2]), -x, -y, so)?
        }
        (SecondReductionLattice, AppellParams::Second(q)) => kdf_value(spec(vec![a, -q.t], vec![b1], vec![b2]), -x, -y, so)?,
        _ => unreachable!("reduction family with mismatched form"),
    };
    Ok((lhs, rhs))
}

fn special_case(index: usize, p: &Appell, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    let q = first(p);
    let lhs = if index % 2 == 0 {
        eval_f1_d1_common_step(q.a, q.b1, q.b2, q.c, q.t1, q.t2, q.k1, q.x, q.y, so)?
    } else {
        eval_f1_d1_common_lattice(q.a, q.b1, q.b2, q.c, q.t1, q.k1, q.k2, q.x, q.y, so)?
    };
    Ok((lhs.quantitative()?, direct_sum(&q)?))
}

/// Difference equation of the first form in the index of `ax`.
fn difference_equation(ax: Axis, p: &Appell, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    let v = axis(p, ax);
    let one = c(1.0);
    let (a, cc, b) = (p.get(Param::A), p.get(Param::C), p.get(v.b));
    let lhs = weighted(p, vec![atom(v.lattice), joint_lattice(p, cc - one)?], so)?;
    let own = constant(b).plus(inverse_step(v.k)?, v.lattice);
    let shifted = weighted(&lowered(p, &v, 1)?, vec![joint_lattice(p, a)?, own], so)?;
    let rhs = ci(v.k) * lattice(v.t, 1, v.k)? * v.arg * shifted;
    Ok((lhs, rhs))
}

/// The mixed equation: the `y`-side term against the `x`-side term.
fn mixed_difference_equation(p: &Appell, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    let (vx, vy) = (axis(p, Axis::X), axis(p, Axis::Y));
    let side = |u: &AxisView, w: &AxisView| -> Outcome<C64> {
        let own = constant(p.get(u.b)).plus(inverse_step(u.k)?, u.lattice);
        let inner = weighted(&lowered(p, u, 1)?, vec![atom(w.lattice), own], so)?;
        Ok(ci(u.k) * lattice(u.t, 1, u.k)? * u.arg * inner)
    };
    Ok((side(&vy, &vx)?, side(&vx, &vy)?))
}

/// Second-form difference-differential equation in `ax`, without the
/// stray factor `k` on the shifted term.
fn second_difference_equation(ax: Axis, p: &Appell, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    let v = axis(p, ax);
    let one = c(1.0);
    let (a, cc, b) = (p.get(Param::A), p.get(Param::C), p.get(v.b));
    let lhs = weighted(p, vec![atom(v.euler), joint_lattice(p, cc - one)?], so)?;
    let own = constant(b).plus(one, v.euler);
    let shifted = weighted(&lowered(p, &v, 1)?, vec![joint_lattice(p, a)?, own], so)?;
    Ok((lhs, lattice(v.t, 1, v.k)? * v.arg * shifted))
}

fn second_differential_equation(p: &Appell, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    let one = c(1.0);
    let lhs = p.y() * weighted(p, vec![atom(OperatorAtom::Theta), constant(p.get(Param::B2)).plus(one, OperatorAtom::Phi)], so)?;
    let rhs = p.x() * weighted(p, vec![atom(OperatorAtom::Phi), constant(p.get(Param::B1)).plus(one, OperatorAtom::Theta)], so)?;
    Ok((lhs, rhs))
}

fn lattice_shift_operator(p: &Appell, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    let one = c(1.0);
    let (a, cc) = (p.get(Param::A), p.get(Param::C));
    let expr = match p {
        AppellParams::First(_) => OperatorExpr::of(vec![
            atom(OperatorAtom::BigTheta1),
            constant(a).plus(one, OperatorAtom::BigTheta2),
            constant(cc - one).plus(one, OperatorAtom::BigTheta1).plus(one, OperatorAtom::Theta),
        ]),
        AppellParams::Second(_) => OperatorExpr::of(vec![
            atom(OperatorAtom::BigTheta),
            constant(a).plus(one, OperatorAtom::BigTheta).plus(one, OperatorAtom::Phi),
        ]),
    };
    let lhs = apply_weighted(p, &expr, so)?.quantitative()?;
    Ok((lhs, apply_numeric(p, &expr, so)?))
}

fn termwise_derivative(p: &Appell, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    let lhs = p.x() * x_derivative(p, so)?.quantitative()?;
    Ok((lhs, weighted(p, vec![atom(OperatorAtom::Theta)], so)?))
}

fn forward_difference(ax: Axis, p: &Appell, r: usize, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    let v = axis(p, ax);
    let lhs = delta_power(p, v.slot, r, so)?;
    let (a, b, cc) = (p.get(Param::A), p.get(v.b), p.get(Param::C));
    let rr = ci(r);
    let up = p.shifted(Param::A, rr).shifted(v.b, rr).shifted(Param::C, rr);
    let rhs = rising(a, r)? * rising(b, r)? * v.arg.powu(r as u32) / rising(cc, r)? * value(&up, so)?;
    Ok((lhs, rhs))
}

/// Falling power `θ(θ-1)...(θ-r+1)` against the parameter and lattice shift.
fn euler_power(ax: Axis, p: &Appell, r: usize, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    let v = axis(p, ax);
    let one = c(1.0);
    let falling = (0..r).map(|j| constant(-ci(j)).plus(one, v.euler)).collect();
    let lhs = weighted(p, falling, so)?;
    let (a, b, cc) = (p.get(Param::A), p.get(v.b), p.get(Param::C));
    let rr = ci(r);
    let up = lowered(&p.shifted(Param::A, rr).shifted(v.b, rr).shifted(Param::C, rr), &v, r)?;
    let coeff = lattice(v.t, r, v.k)? * rising(a, r)? * rising(b, r)? * v.arg.powu(r as u32) / rising(cc, r)?;
    Ok((lhs, coeff * value(&up, so)?))
}

fn finite_sum(ax: Axis, p: &Appell, r: usize, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    let v = axis(p, ax);
    let lhs = value(&p.shifted(v.b, ci(r)), so)?;
    let (a, cc) = (p.get(Param::A), p.get(Param::C));
    let mut rhs = C64::new(0.0, 0.0);
    for s in 0..=r {
        let ss = ci(s);
        let up = lowered(&p.shifted(Param::A, ss).shifted(v.b, ss).shifted(Param::C, ss), &v, s)?;
        let coeff = binomial::<f64>(r, s)? * rising(a, s)? * lattice(v.t, s, v.k)? / rising(cc, s)? * v.arg.powu(s as u32);
        rhs += coeff * value(&up, so)?;
    }
    Ok((lhs, rhs))
}

/// `Σ_r (u)_r z^r / r! · F(u + r)` against `(1-z)^{-u} F` at scaled arguments.
fn infinite_sum(which: Param, p: &Appell, z: C64, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    let u = p.get(which);
    let mut series = IndexedSeries::new(|r: usize| {
        let weight = pochhammer(u, r)? / pochhammer(c(1.0), r)?;
        Ok(weight * eval_appell(&p.shifted(which, ci(r)), so)?.quantitative()?)
    });
    let zero = C64::new(0.0, 0.0);
    let lhs = sum_double_series(&mut series, z, zero, &TermWeight::unit(), so)?.quantitative()?;
    let one = c(1.0);
    let scale = one / (one - z);
    let (x, y) = (p.x(), p.y());
    let moved = match which {
        Param::A => p.with_args(x * scale, y * scale),
        Param::B1 => p.with_args(x * scale, y),
        _ => p.with_args(x, y * scale),
    };
    let rhs = (one - z).powc(-u) * value(&moved, so)?;
    Ok((lhs, rhs))
}

#[derive(Clone, Copy)]
enum Recursion {
    APlus,
    AMinus,
    BPlus(Axis),
    BMinus(Axis),
    CMinus,
}

fn recursion(kind: Recursion, p: &Appell, s: usize, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    let (a, cc) = (p.get(Param::A), p.get(Param::C));
    let one = c(1.0);
    let base = value(p, so)?;
    let views = [axis(p, Axis::X), axis(p, Axis::Y)];
    let ss = ci(s);
    let mut acc = C64::new(0.0, 0.0);
    let lhs = match kind {
        Recursion::APlus | Recursion::AMinus => {
            let plus = matches!(kind, Recursion::APlus);
            for v in &views {
                let b = p.get(v.b);
                let pre = lattice(v.t, 1, v.k)? * b * v.arg / cc;
                let mut sum = C64::new(0.0, 0.0);
                let range: Vec<C64> = if plus { (1..=s).map(ci).collect() } else { (0..s).map(|r| -ci(r)).collect() };
                for da in range {
                    let q = p.shifted(Param::A, da).shifted(v.b, one).shifted(Param::C, one);
                    sum += value(&lowered(&q, v, 1)?, so)?;
                }
                acc += pre * sum;
            }
            if plus {
                value(&p.shifted(Param::A, ss), so)?
            } else {
                acc = -acc;
                value(&p.shifted(Param::A, -ss), so)?
            }
        }
        Recursion::BPlus(ax) | Recursion::BMinus(ax) => {
            let plus = matches!(kind, Recursion::BPlus(_));
            let v = &views[if ax == Axis::X { 0 } else { 1 }];
            let pre = lattice(v.t, 1, v.k)? * a * v.arg / cc;
            let range: Vec<C64> = if plus { (1..=s).map(ci).collect() } else { (0..s).map(|r| -ci(r)).collect() };
            for db in range {
                let q = p.shifted(Param::A, one).shifted(v.b, db).shifted(Param::C, one);
                acc += value(&lowered(&q, v, 1)?, so)?;
            }
            acc = pre * acc;
            if plus {
                value(&p.shifted(v.b, ss), so)?
            } else {
                acc = -acc;
                value(&p.shifted(v.b, -ss), so)?
            }
        }
        Recursion::CMinus => {
            for v in &views {
                let pre = lattice(v.t, 1, v.k)? * a * p.get(v.b) * v.arg;
                let mut sum = C64::new(0.0, 0.0);
                for r in 1..=s {
                    let rr = ci(r);
                    let q = p.shifted(Param::A, one).shifted(v.b, one).shifted(Param::C, c(2.0) - rr);
                    sum += value(&lowered(&q, v, 1)?, so)? / ((cc - rr) * (cc - rr + one));
                }
                acc += pre * sum;
            }
            value(&p.shifted(Param::C, -ss), so)?
        }
    };
    Ok((lhs, base + acc))
}

fn catalogue_relation(family: IdentityFamily, d: &Draw, so: &SeriesOptions<f64>) -> Outcome<(C64, C64)> {
    let cat = family.catalogue().expect("catalogue family");
    let relation = super::enumerate_relation(cat, d.relation)?;
    let (l, r) = relation.realize(&d.params)?;
    let lhs = apply_weighted(&l.params, &l.operator, so)?.quantitative()?;
    let rhs = apply_weighted(&r.params, &r.operator, so)?.quantitative()?;
    Ok((lhs, rhs))
}

const LAPLACE_FORMS: [IntegralForm; 3] = [IntegralForm::LaplaceA, IntegralForm::LaplaceB1, IntegralForm::LaplaceB2];
const SECOND_LAPLACE_FORMS: [IntegralForm; 3] =
    [IntegralForm::SecondLaplaceA, IntegralForm::SecondLaplaceB1, IntegralForm::SecondLaplaceB2];

fn integral(family: IdentityFamily, d: &Draw, o: &SuiteOptions) -> Outcome<(C64, C64)> {
    use IdentityFamily::*;
    let p = &d.params;
    let q = &o.quadrature;
    let form = match family {
        IntegralEuler => IntegralForm::Euler1,
        IntegralSimplex => IntegralForm::EulerSimplex,
        IntegralLaplace => LAPLACE_FORMS[d.index % 3],
        SecondIntegralEuler => IntegralForm::SecondEuler1,
        SecondIntegralSimplex => IntegralForm::SecondEulerSimplex,
        SecondIntegralLaplace => SECOND_LAPLACE_FORMS[d.index % 3],
        IntegralLaplaceCrosscheck => {
            let lhs = eval_integral(IntegralForm::LaplaceT1, p, q)?.quantitative()?;
            let rhs = eval_integral(IntegralForm::LaplaceT2, p, q)?.quantitative()?;
            return Ok((lhs, rhs));
        }
        _ => unreachable!("not an integral family"),
    };
    let lhs = eval_integral(form, p, q)?.quantitative()?;
    Ok((lhs, value(p, &o.series)?))
}

/// Probe values of ε for the rate test.
pub(super) const EPSILONS: [f64; 3] = [0.1, 0.05, 0.025];

/// Successive error ratios `err(ε)/err(ε/2)`.
pub(super) fn degeneration_ratios(family: IdentityFamily, d: &Draw, so: &SeriesOptions<f64>) -> Outcome<[f64; 2]> {
    use IdentityFamily::*;
    let (which, form) = match family {
        DegenerationPhi1 => (HumbertFamily::Phi1, Form::First),
        DegenerationPhi2 => (HumbertFamily::Phi2, Form::First),
        DegenerationPhi3 => (HumbertFamily::Phi3, Form::First),
        SecondDegenerationPhi1 => (HumbertFamily::Phi1, Form::Second),
        SecondDegenerationPhi2 => (HumbertFamily::Phi2, Form::Second),
        SecondDegenerationPhi3 => (HumbertFamily::Phi3, Form::Second),
        _ => unreachable!("not a degeneration family"),
    };
    let variant = HumbertVariant { family: which, form };
    let mut errs = [0.0; 3];
    for (e, eps) in errs.iter_mut().zip(EPSILONS) {
        *e = degeneration_error(&DegenerationProbe { epsilon: eps, variant }, &d.params, so)?;
    }
    if errs[1] == 0.0 || errs[2] == 0.0 {
        return Err(Failure::Skip(SkipReason::new("exact-limit", "the parent already equals its limit")));
    }
    Ok([errs[0] / errs[1], errs[1] / errs[2]])
}

/// Left and right side of `family` at `d`.
pub(super) fn sides(family: IdentityFamily, d: &Draw, o: &SuiteOptions) -> Outcome<(C64, C64)> {
    use IdentityFamily::*;
    let so = &o.series;
    let p = &d.params;
    let r = d.order;
    Ok(match family {
        ReductionClassical | ReductionLatticeX | ReductionLatticeY | ReductionLatticeBoth | SecondReductionClassical
        | SecondReductionLattice => reduction(family, p, so)?,
        SpecialCases => special_case(d.index, p, so)?,
        DifferenceEqX => difference_equation(Axis::X, p, so)?,
        DifferenceEqY => difference_equation(Axis::Y, p, so)?,
        DifferenceEqMixed => mixed_difference_equation(p, so)?,
        SecondDifferenceEqX => second_difference_equation(Axis::X, p, so)?,
        SecondDifferenceEqY => second_difference_equation(Axis::Y, p, so)?,
        SecondDifferentialEq => second_differential_equation(p, so)?,
        OperatorLatticeShift | SecondOperatorLatticeShift => lattice_shift_operator(p, so)?,
        OperatorTermwiseDerivative | SecondOperatorTermwiseDerivative => termwise_derivative(p, so)?,
        ForwardDifferenceX => forward_difference(Axis::X, p, r, so)?,
        ForwardDifferenceY => forward_difference(Axis::Y, p, r, so)?,
        ThetaPower | SecondThetaPower => euler_power(Axis::X, p, r, so)?,
        PhiPower | SecondPhiPower => euler_power(Axis::Y, p, r, so)?,
        DerivativeB1 | DerivativeB2 | DerivativeAx | DerivativeAy | DerivativeCx | DerivativeCy | SecondDerivativeB1
        | SecondDerivativeB2 | SecondDerivativeAx | SecondDerivativeAy | SecondDerivativeCx | SecondDerivativeCy => {
            let s = partial_power_sides(p, derivative_shape(family), r, so)?;
            (s.lhs, s.rhs)
        }
        FiniteSumB1 | SecondFiniteSumB1 => finite_sum(Axis::X, p, r, so)?,
        FiniteSumB2 | SecondFiniteSumB2 => finite_sum(Axis::Y, p, r, so)?,
        InfiniteSumA | SecondInfiniteSumA => infinite_sum(Param::A, p, d.z, so)?,
        InfiniteSumB1 | SecondInfiniteSumB1 => infinite_sum(Param::B1, p, d.z, so)?,
        InfiniteSumB2 | SecondInfiniteSumB2 => infinite_sum(Param::B2, p, d.z, so)?,
        RecursionAPlus | SecondRecursionAPlus => recursion(Recursion::APlus, p, r, so)?,
        RecursionAMinus | SecondRecursionAMinus => recursion(Recursion::AMinus, p, r, so)?,
        RecursionB1Plus | SecondRecursionB1Plus => recursion(Recursion::BPlus(Axis::X), p, r, so)?,
        RecursionB1Minus | SecondRecursionB1Minus => recursion(Recursion::BMinus(Axis::X), p, r, so)?,
        RecursionB2Plus | SecondRecursionB2Plus => recursion(Recursion::BPlus(Axis::Y), p, r, so)?,
        RecursionB2Minus | SecondRecursionB2Minus => recursion(Recursion::BMinus(Axis::Y), p, r, so)?,
        RecursionCMinus | SecondRecursionCMinus => recursion(Recursion::CMinus, p, r, so)?,
        ContiguousDifferential | RecursionDifferential | ContiguousDifference | RecursionDifference
        | SecondContiguousDifferential | SecondRecursionDifferential | SecondContiguousDifference
        | SecondRecursionDifference => catalogue_relation(family, d, so)?,
        IntegralEuler | IntegralSimplex | IntegralLaplace | IntegralLaplaceCrosscheck | SecondIntegralEuler
        | SecondIntegralSimplex | SecondIntegralLaplace => integral(family, d, o)?,
        DegenerationPhi1 | DegenerationPhi2 | DegenerationPhi3 | SecondDegenerationPhi1 | SecondDegenerationPhi2
        | SecondDegenerationPhi3 => unreachable!("degeneration families report ratios"),
    })
}

fn derivative_shape(family: IdentityFamily) -> DerivativeShape {
    use IdentityFamily::*;
    match family {
        DerivativeB1 | SecondDerivativeB1 => DerivativeShape::B1,
        DerivativeB2 | SecondDerivativeB2 => DerivativeShape::B2,
        DerivativeAx | SecondDerivativeAx => DerivativeShape::ADiagX,
        DerivativeAy | SecondDerivativeAy => DerivativeShape::ADiagY,
        DerivativeCx | SecondDerivativeCx => DerivativeShape::CDiagX,
        _ => DerivativeShape::CDiagY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{draw, DrawPolicy, Regime};

    #[test]
    fn error_kinds_map_to_skips_or_failures() {
        assert!(matches!(Failure::from(Error::Precondition("x".into())), Failure::Skip(s) if s.code == "precondition"));
        assert!(matches!(Failure::from(Error::Pole { what: "c", value: "0".into() }), Failure::Skip(s) if s.code == "pole"));
        assert!(matches!(Failure::from(Error::Domain("x".into())), Failure::Error(_)));
        assert!(matches!(inverse_step(0), Err(Failure::Skip(_))));
        assert_eq!(inverse_step(4).ok(), Some(c(0.25)));
    }

    #[test]
    fn direct_sum_agrees_with_the_engine_on_a_classical_draw() {
        let d = draw(&DrawPolicy::new(Regime::Classical, 5, 11), IdentityFamily::SpecialCases, 2);
        let q = first(&d.params);
        let direct = direct_sum(&q).ok().unwrap();
        let engine = value(&d.params, &SeriesOptions::default()).ok().unwrap();
        assert!((direct - engine).norm() < 1e-12 * (1.0 + engine.norm()));
    }

    #[test]
    fn classical_degeneration_ratios_are_near_two() {
        let d = draw(&DrawPolicy::new(Regime::Classical, 5, 1), IdentityFamily::DegenerationPhi1, 0);
        let [r0, r1] = degeneration_ratios(IdentityFamily::DegenerationPhi1, &d, &SeriesOptions::default()).ok().unwrap();
        assert!((r0 - 2.0).abs() < 0.5 && (r1 - 2.0).abs() < 0.5, "{r0} {r1}");
    }

    #[test]
    fn every_family_produces_sides_or_a_skip_on_its_first_draw() {
        let o = SuiteOptions::default();
        for &f in IdentityFamily::ALL {
            if f.kind() == crate::verify::FamilyKind::Degeneration {
                continue;
            }
            let regime = if f.supports(Regime::Terminating) { Regime::Terminating } else { Regime::Classical };
            let d = draw(&DrawPolicy::new(regime, 1, 5), f, 0);
            if let Err(Failure::Error(e)) = sides(f, &d, &o) {
                panic!("{f}: {e}");
            }
        }
    }
}

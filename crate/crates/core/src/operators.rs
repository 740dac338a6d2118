//! Operator calculus on the discrete Appell series.
//!
//! Every operator here is diagonal on the monomials `x^m y^n` once the
//! lattice factors are fixed, so a product of affine operator factors acts
//! on a series as a per-term weight. The same operators can also be applied
//! numerically: `Θ_t f(t) = t (f(t) - f(t-1))` by re-evaluating at shifted
//! `t`, and `∂_x` through a shifted-index coefficient oracle. The two routes
//! audit each other.

use std::collections::HashMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{appell_oracle, check_axes, eval_appell, eval_with_weight, AppellParams, Keep, Param};
use crate::scalar::{cn, cr, is_zero, Real};
use crate::series::{
    sum_double_series, Affine, CoefficientOracle, EvalResult, SeriesOptions, TermIndex, TermWeight,
};
use crate::special::{binomial, pochhammer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorAtom {
    /// `θ = x ∂/∂x`
    Theta,
    /// `φ = y ∂/∂y`
    Phi,
    /// `Θ_{t₁}` of the first form.
    BigTheta1,
    /// `Θ_{t₂}` of the first form.
    BigTheta2,
    /// `Θ_t` of the second form.
    BigTheta,
    Identity,
}

/// `constant + Σ coeff · atom`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineOperator<T> {
    pub constant: Complex<T>,
    pub terms: Vec<(Complex<T>, OperatorAtom)>,
}

impl<T: Real> AffineOperator<T> {
    pub fn constant(c: Complex<T>) -> Self {
        Self { constant: c, terms: Vec::new() }
    }

    pub fn atom(atom: OperatorAtom) -> Self {
        Self::constant(Complex::new(T::zero(), T::zero())).plus(Complex::new(T::one(), T::zero()), atom)
    }

    pub fn plus(mut self, coeff: Complex<T>, atom: OperatorAtom) -> Self {
        self.terms.push((coeff, atom));
        self
    }
}

/// Product of affine operator factors. The empty product is the identity.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OperatorExpr<T> {
    pub factors: Vec<AffineOperator<T>>,
}

impl<T: Real> OperatorExpr<T> {
    pub fn identity() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn of(factors: Vec<AffineOperator<T>>) -> Self {
        Self { factors }
    }

    pub fn times(mut self, factor: AffineOperator<T>) -> Self {
        self.factors.push(factor);
        self
    }

    pub fn then(mut self, other: &OperatorExpr<T>) -> Self {
        self.factors.extend(other.factors.iter().cloned());
        self
    }
}

/// Which function an operator expression is compiled against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    First { k1: usize, k2: usize },
    Second { k: usize },
}

impl Target {
    pub fn of<T: Real>(p: &AppellParams<T>) -> Self {
        match p {
            AppellParams::First(q) => Target::First { k1: q.k1, k2: q.k2 },
            AppellParams::Second(q) => Target::Second { k: q.k },
        }
    }

    fn name(self) -> &'static str {
        match self {
            Target::First { .. } => "first discrete Appell form",
            Target::Second { .. } => "second discrete Appell form",
        }
    }
}

fn incompatible(atom: OperatorAtom, target: Target) -> Error {
    Error::Incompatible { atom: format!("{atom:?}"), target: target.name().into() }
}

/// Images `(β, γ)` of an atom as the weight `β·m + γ·n`, or the constant 1
/// for `Identity`.
fn atom_image<T: Real>(atom: OperatorAtom, target: Target) -> Result<(Complex<T>, T, T)> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = T::one();
    let k = |k: usize| T::from_usize_lossy(k);
    Ok(match (atom, target) {
        (OperatorAtom::Identity, _) => (Complex::new(one, T::zero()), T::zero(), T::zero()),
        (OperatorAtom::Theta, _) => (zero, one, T::zero()),
        (OperatorAtom::Phi, _) => (zero, T::zero(), one),
        (OperatorAtom::BigTheta1, Target::First { k1, .. }) => (zero, k(k1), T::zero()),
        (OperatorAtom::BigTheta2, Target::First { k2, .. }) => (zero, T::zero(), k(k2)),
        (OperatorAtom::BigTheta, Target::Second { k: kk }) => (zero, k(kk), k(kk)),
        _ => return Err(incompatible(atom, target)),
    })
}

/// Compiles an operator product to the per-term weight it induces.
pub fn compile_weight<T: Real>(expr: &OperatorExpr<T>, target: Target) -> Result<TermWeight<T>> {
    let mut factors = Vec::with_capacity(expr.factors.len());
    for f in &expr.factors {
        let mut alpha = f.constant;
        let mut beta = Complex::new(T::zero(), T::zero());
        let mut gamma = beta;
        for &(coeff, atom) in &f.terms {
            let (c0, bm, gn) = atom_image::<T>(atom, target)?;
            alpha = alpha + coeff * c0;
            beta = beta + coeff * bm;
            gamma = gamma + coeff * gn;
        }
        factors.push(Affine::new(alpha, beta, gamma));
    }
    Ok(TermWeight::from_factors(factors))
}

/// `expr` applied to the function at `p`, through term weights.
pub fn apply_weighted<T: Real>(
    p: &AppellParams<T>,
    expr: &OperatorExpr<T>,
    opts: &SeriesOptions<T>,
) -> Result<EvalResult<T>> {
    let weight = compile_weight(expr, Target::of(p))?;
    eval_with_weight(p, Keep::ALL, &weight, opts)
}

/// Slot holding a lattice variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TSlot {
    T1,
    T2,
    T,
}

fn t_of<T: Real>(p: &AppellParams<T>, slot: TSlot) -> Result<(Complex<T>, usize)> {
    match (p, slot) {
        (AppellParams::First(q), TSlot::T1) => Ok((q.t1, q.k1)),
        (AppellParams::First(q), TSlot::T2) => Ok((q.t2, q.k2)),
        (AppellParams::Second(q), TSlot::T) => Ok((q.t, q.k)),
        _ => Err(Error::Precondition(format!("slot {slot:?} does not exist on this form"))),
    }
}

/// Copy of `p` with the lattice variable in `slot` moved by `delta`.
pub fn shift_t<T: Real>(p: &AppellParams<T>, slot: TSlot, delta: Complex<T>) -> Result<AppellParams<T>> {
    let mut out = *p;
    match (&mut out, slot) {
        (AppellParams::First(q), TSlot::T1) => q.t1 = q.t1 + delta,
        (AppellParams::First(q), TSlot::T2) => q.t2 = q.t2 + delta,
        (AppellParams::Second(q), TSlot::T) => q.t = q.t + delta,
        _ => return Err(Error::Precondition(format!("slot {slot:?} does not exist on this form"))),
    }
    Ok(out)
}

/// `Θ_t f` at `t` for an arbitrary function of `t`.
pub fn theta_t_of<T: Real, F: FnMut(Complex<T>) -> Result<Complex<T>>>(t: Complex<T>, mut f: F) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    Ok(t * (f(t)? - f(t - one)?))
}

/// `Θ_t` applied to the function in the lattice slot `slot`, from two full
/// evaluations.
pub fn theta_t_numeric<T: Real>(p: &AppellParams<T>, slot: TSlot, opts: &SeriesOptions<T>) -> Result<Complex<T>> {
    let (t, _) = t_of(p, slot)?;
    theta_t_of(t, |s| {
        let q = shift_t(p, slot, s - t)?;
        eval_appell(&q, opts)?.quantitative()
    })
}

/// `(Δ_t)^r` of the function in `slot`, which must have step 1.
pub fn delta_power<T: Real>(p: &AppellParams<T>, slot: TSlot, r: usize, opts: &SeriesOptions<T>) -> Result<Complex<T>> {
    let (_, k) = t_of(p, slot)?;
    if k != 1 {
        return Err(Error::Precondition(format!("forward difference formula needs step 1 on {slot:?}, got {k}")));
    }
    let mut acc = Complex::new(T::zero(), T::zero());
    for j in 0..=r {
        let q = shift_t(p, slot, cn(j))?;
        let v = eval_appell(&q, opts)?.quantitative()?;
        let b = binomial::<T>(r, j)?;
        let sign = if (r - j) % 2 == 0 { T::one() } else { -T::one() };
        acc = acc + v * b * sign;
    }
    Ok(acc)
}

/// Exponents of a monomial in `θ, φ, Θ₁, Θ₂, Θ`.
type Powers = [u8; 5];

fn atom_slot(atom: OperatorAtom) -> Option<usize> {
    match atom {
        OperatorAtom::Theta => Some(0),
        OperatorAtom::Phi => Some(1),
        OperatorAtom::BigTheta1 => Some(2),
        OperatorAtom::BigTheta2 => Some(3),
        OperatorAtom::BigTheta => Some(4),
        OperatorAtom::Identity => None,
    }
}

fn expand<T: Real>(expr: &OperatorExpr<T>, target: Target) -> Result<Vec<(Powers, Complex<T>)>> {
    let mut poly: Vec<(Powers, Complex<T>)> = vec![([0; 5], Complex::new(T::one(), T::zero()))];
    for f in &expr.factors {
        let mut linear: Vec<(Option<usize>, Complex<T>)> = vec![(None, f.constant)];
        for &(coeff, atom) in &f.terms {
            atom_image::<T>(atom, target)?;
            linear.push((atom_slot(atom), coeff));
        }
        let mut next: Vec<(Powers, Complex<T>)> = Vec::new();
        for (pw, c) in &poly {
            for &(slot, coeff) in &linear {
                let mut q = *pw;
                if let Some(s) = slot {
                    q[s] += 1;
                }
                match next.iter_mut().find(|(p, _)| *p == q) {
                    Some(entry) => entry.1 = entry.1 + *c * coeff,
                    None => next.push((q, *c * coeff)),
                }
            }
        }
        poly = next;
    }
    Ok(poly)
}

struct ShiftEvaluator<'a, T: Real> {
    base: AppellParams<T>,
    opts: &'a SeriesOptions<T>,
    plain: HashMap<(u8, u8, usize, usize), Complex<T>>,
    memo: HashMap<(u8, u8, u8, usize, usize), Complex<T>>,
}

impl<'a, T: Real> ShiftEvaluator<'a, T> {
    /// `θ^i φ^j F` at lattice shifts `(d1, d2)`; the second form uses `d1`.
    fn weighted(&mut self, i: u8, j: u8, d1: usize, d2: usize) -> Result<Complex<T>> {
        if let Some(v) = self.plain.get(&(i, j, d1, d2)) {
            return Ok(*v);
        }
        let mut p = self.base;
        match &mut p {
            AppellParams::First(q) => {
                q.t1 = q.t1 - cn(d1);
                q.t2 = q.t2 - cn(d2);
            }
            AppellParams::Second(q) => q.t = q.t - cn(d1),
        }
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let mut factors = Vec::new();
        factors.extend((0..i).map(|_| Affine::new(zero, one, zero)));
        factors.extend((0..j).map(|_| Affine::new(zero, zero, one)));
        let v = eval_with_weight(&p, Keep::ALL, &TermWeight::from_factors(factors), self.opts)?.quantitative()?;
        self.plain.insert((i, j, d1, d2), v);
        Ok(v)
    }

    /// `Θ₁^p Θ₂^q (θ^i φ^j F)` at lattice shifts `(d1, d2)`.
    fn value(&mut self, ij: (u8, u8), p: u8, q: u8, d1: usize, d2: usize) -> Result<Complex<T>> {
        let key = (ij.0 * 16 + ij.1, p, q, d1, d2);
        if let Some(v) = self.memo.get(&key) {
            return Ok(*v);
        }
        let v = if p > 0 {
            let t = match self.base {
                AppellParams::First(b) => b.t1,
                AppellParams::Second(b) => b.t,
            } - cn(d1);
            t * (self.value(ij, p - 1, q, d1, d2)? - self.value(ij, p - 1, q, d1 + 1, d2)?)
        } else if q > 0 {
            let t = match self.base {
                AppellParams::First(b) => b.t2,
                AppellParams::Second(_) => unreachable!("second form has one lattice slot"),
            } - cn(d2);
            t * (self.value(ij, 0, q - 1, d1, d2)? - self.value(ij, 0, q - 1, d1, d2 + 1)?)
        } else {
            self.weighted(ij.0, ij.1, d1, d2)?
        };
        self.memo.insert(key, v);
        Ok(v)
    }
}

/// `expr` applied to the function at `p` with every `Θ` realized by
/// re-evaluation at shifted lattice variables. `θ` and `φ` stay termwise.
pub fn apply_numeric<T: Real>(p: &AppellParams<T>, expr: &OperatorExpr<T>, opts: &SeriesOptions<T>) -> Result<Complex<T>> {
    let target = Target::of(p);
    let poly = expand(expr, target)?;
    let mut ev = ShiftEvaluator { base: *p, opts, plain: HashMap::new(), memo: HashMap::new() };
    let mut acc = Complex::new(T::zero(), T::zero());
    for (pw, coeff) in poly {
        if is_zero(coeff) {
            continue;
        }
        let (p1, p2) = match target {
            Target::First { .. } => (pw[2], pw[3]),
            Target::Second { .. } => (pw[4], 0),
        };
        acc = acc + coeff * ev.value((pw[0], pw[1]), p1, p2, 0, 0)?;
    }
    Ok(acc)
}

/// Coefficients of `∂F/∂x`: `(m+1) A_{m+1,n}`.
pub struct XDerivative<O> {
    inner: O,
}

impl<O> XDerivative<O> {
    pub fn new(inner: O) -> Self {
        Self { inner }
    }
}

impl<T: Real, O: CoefficientOracle<T>> CoefficientOracle<T> for XDerivative<O> {
    fn coeff(&mut self, idx: TermIndex) -> Result<Complex<T>> {
        Ok(self.inner.coeff(TermIndex::new(idx.m + 1, idx.n))? * cn::<T>(idx.m + 1))
    }
    fn bound_m(&self) -> Option<usize> {
        self.inner.bound_m().map(|b| b.saturating_sub(1))
    }
    fn bound_n(&self) -> Option<usize> {
        self.inner.bound_n()
    }
    fn bound_joint(&self) -> Option<usize> {
        self.inner.bound_joint().map(|b| b.saturating_sub(1))
    }
    fn excess(&self) -> (i64, i64) {
        self.inner.excess()
    }
}

/// `∂F/∂x` summed from the shifted-index coefficients.
pub fn x_derivative<T: Real>(p: &AppellParams<T>, opts: &SeriesOptions<T>) -> Result<EvalResult<T>> {
    let o = appell_oracle(p, Keep::ALL)?;
    check_axes(&o, p.x(), p.y())?;
    let mut d = XDerivative::new(o);
    sum_double_series(&mut d, p.x(), p.y(), &TermWeight::unit(), opts)
}

/// The six shapes of r-fold partial derivative formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DerivativeShape {
    /// `∂_x^r [x^{b₁+r-1} F] = x^{b₁-1} (b₁)_r F(b₁+r)`
    B1,
    /// `∂_y^r [y^{b₂+r-1} F] = y^{b₂-1} (b₂)_r F(b₂+r)`
    B2,
    /// `∂_x^r [x^{a+r-1} F(x, xy)] = x^{a-1} (a)_r F(a+r; x, xy)`
    ADiagX,
    /// `∂_y^r [y^{a+r-1} F(xy, y)] = y^{a-1} (a)_r F(a+r; xy, y)`
    ADiagY,
    /// `∂_x^r [x^{c-1} F(x, xy)] = (-1)^r (1-c)_r x^{c-r-1} F(c-r; x, xy)`
    CDiagX,
    /// `∂_y^r [y^{c-1} F(xy, y)] = (-1)^r (1-c)_r y^{c-r-1} F(c-r; xy, y)`
    CDiagY,
}

impl DerivativeShape {
    pub const ALL: [DerivativeShape; 6] = [
        DerivativeShape::B1,
        DerivativeShape::B2,
        DerivativeShape::ADiagX,
        DerivativeShape::ADiagY,
        DerivativeShape::CDiagX,
        DerivativeShape::CDiagY,
    ];
}

/// Both sides of a derivative formula.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sides<T> {
    pub lhs: Complex<T>,
    pub rhs: Complex<T>,
}

/// Evaluates both sides of the `shape` formula at order `r`. The left side
/// is differentiated termwise: `∂^r z^{s+N}` is a falling factorial in `N`.
pub fn partial_power_sides<T: Real>(
    p: &AppellParams<T>,
    shape: DerivativeShape,
    r: usize,
    opts: &SeriesOptions<T>,
) -> Result<Sides<T>> {
    use DerivativeShape::*;
    let (x, y) = (p.x(), p.y());
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    let (var, args) = match shape {
        B1 => (x, (x, y)),
        B2 => (y, (x, y)),
        ADiagX | CDiagX => (x, (x, x * y)),
        ADiagY | CDiagY => (y, (x * y, y)),
    };
    if is_zero(var) {
        return Err(Error::Precondition("derivative formula needs a nonzero variable".into()));
    }
    let at = p.with_args(args.0, args.1);
    let (a, b1, b2, c) = (p.get(Param::A), p.get(Param::B1), p.get(Param::B2), p.get(Param::C));
    let rr = cn::<T>(r);
    // weight factors ∏_j (base + sign·j + m-part + n-part)
    let (base, step, on_m, on_n) = match shape {
        B1 => (b1, one, one, zero),
        B2 => (b2, one, zero, one),
        ADiagX | ADiagY => (a, one, one, one),
        CDiagX | CDiagY => (c - one, -one, one, one),
    };
    let factors = (0..r).map(|j| Affine::new(base + step * cn::<T>(j), on_m, on_n)).collect();
    let series = eval_with_weight(&at, Keep::ALL, &TermWeight::from_factors(factors), opts)?.quantitative()?;
    let (lhs_pow, rhs_pow, coeff, shifted) = match shape {
        B1 => (b1 - one, b1 - one, pochhammer(b1, r)?, at.shifted(Param::B1, rr)),
        B2 => (b2 - one, b2 - one, pochhammer(b2, r)?, at.shifted(Param::B2, rr)),
        ADiagX | ADiagY => (a - one, a - one, pochhammer(a, r)?, at.shifted(Param::A, rr)),
        CDiagX | CDiagY => {
            let sign = if r % 2 == 0 { one } else { -one };
            (c - one - rr, c - rr - one, sign * pochhammer(one - c, r)?, at.shifted(Param::C, -rr))
        }
    };
    let rhs_series = eval_appell(&shifted, opts)?.quantitative()?;
    Ok(Sides { lhs: var.powc(lhs_pow) * series, rhs: coeff * var.powc(rhs_pow) * rhs_series })
}

/// `|LHS - RHS| / (|RHS| + 1)` for the `shape` formula at order `r`.
pub fn partial_power<T: Real>(
    p: &AppellParams<T>,
    shape: DerivativeShape,
    r: usize,
    opts: &SeriesOptions<T>,
) -> Result<T> {
    let s = partial_power_sides(p, shape, r, opts)?;
    Ok((s.lhs - s.rhs).norm() / (s.rhs.norm() + T::one()))
}

/// Convenience: the constant operator `value`.
pub fn constant<T: Real>(value: Complex<T>) -> AffineOperator<T> {
    AffineOperator::constant(value)
}

/// Convenience: `value + atom`.
pub fn shifted_atom<T: Real>(value: Complex<T>, atom: OperatorAtom) -> AffineOperator<T> {
    AffineOperator::constant(value).plus(cr(T::one()), atom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{Appell1Params, Appell2Params};
    use crate::series::Verdict;

    type C = Complex<f64>;

    fn r(v: f64) -> C {
        C::new(v, 0.0)
    }

    fn first(k1: usize, k2: usize, t1: f64, t2: f64) -> AppellParams<f64> {
        AppellParams::First(Appell1Params {
            a: C::new(1.3, 0.4),
            b1: C::new(0.7, -0.2),
            b2: r(1.6),
            c: C::new(2.4, 0.3),
            t1: r(t1),
            t2: r(t2),
            k1,
            k2,
            x: C::new(0.21, 0.1),
            y: C::new(-0.15, 0.2),
        })
    }

    fn second(k: usize, t: f64) -> AppellParams<f64> {
        AppellParams::Second(Appell2Params {
            a: C::new(1.3, 0.4),
            b1: C::new(0.7, -0.2),
            b2: r(1.6),
            c: C::new(2.4, 0.3),
            t: r(t),
            k,
            x: C::new(0.21, 0.1),
            y: C::new(-0.15, 0.2),
        })
    }

    fn rel(a: C, b: C) -> f64 {
        (a - b).norm() / (a.norm() + b.norm() + 1.0)
    }

    #[test]
    fn weight_images() {
        let o = SeriesOptions::default();
        let p = first(1, 2, 5.0, 7.0);
        let ident = OperatorExpr::of(vec![AffineOperator::atom(OperatorAtom::Identity)]);
        let w = compile_weight(&ident, Target::of(&p)).unwrap();
        assert_eq!(w.eval(3, 4), r(1.0));
        assert_eq!(apply_weighted(&p, &ident, &o).unwrap().value, eval_appell(&p, &o).unwrap().value);
        let a = p.get(Param::A);
        let e = OperatorExpr::of(vec![shifted_atom(a, OperatorAtom::Theta).plus(r(1.0), OperatorAtom::Phi)]);
        assert_eq!(compile_weight(&e, Target::of(&p)).unwrap().eval(2, 3), a + 5.0);
        let cm1 = p.get(Param::C) - 1.0;
        let e = OperatorExpr::of(vec![AffineOperator::constant(cm1)
            .plus(r(1.0), OperatorAtom::BigTheta1)
            .plus(r(0.5), OperatorAtom::BigTheta2)]);
        assert_eq!(compile_weight(&e, Target::of(&p)).unwrap().eval(2, 3), cm1 + 5.0);
    }

    #[test]
    fn incompatible_atoms() {
        let e: OperatorExpr<f64> = OperatorExpr::of(vec![AffineOperator::atom(OperatorAtom::BigTheta)]);
        assert!(matches!(compile_weight(&e, Target::First { k1: 1, k2: 1 }), Err(Error::Incompatible { .. })));
        let e: OperatorExpr<f64> = OperatorExpr::of(vec![AffineOperator::atom(OperatorAtom::BigTheta1)]);
        assert!(matches!(compile_weight(&e, Target::Second { k: 1 }), Err(Error::Incompatible { .. })));
    }

    #[test]
    fn theta_on_geometric() {
        let p = AppellParams::First(Appell1Params {
            a: r(1.0),
            b1: r(1.0),
            b2: r(1.0),
            c: r(1.0),
            t1: r(0.0),
            t2: r(0.0),
            k1: 0,
            k2: 0,
            x: r(0.5),
            y: r(0.0),
        });
        let e = OperatorExpr::of(vec![AffineOperator::atom(OperatorAtom::Theta)]);
        let v = apply_weighted(&p, &e, &SeriesOptions::default()).unwrap();
        assert_eq!(v.verdict, Verdict::Converged);
        assert!((v.value - r(2.0)).norm() < 1e-11);
    }

    #[test]
    fn theta_t_examples() {
        assert_eq!(theta_t_of(r(2.5), |_| Ok(r(7.0))).unwrap(), r(0.0));
        assert_eq!(theta_t_of(r(2.5), Ok).unwrap(), r(2.5));
    }

    #[test]
    fn numeric_and_weighted_theta_agree() {
        let o = SeriesOptions::default();
        for p in [first(1, 0, 4.0, 0.0), first(2, 1, 7.0, 5.0), second(2, 8.0)] {
            let atoms: &[OperatorAtom] = match p {
                AppellParams::First(_) => &[OperatorAtom::BigTheta1, OperatorAtom::BigTheta2],
                AppellParams::Second(_) => &[OperatorAtom::BigTheta],
            };
            for &atom in atoms {
                let e = OperatorExpr::of(vec![AffineOperator::atom(atom)]);
                let w = apply_weighted(&p, &e, &o).unwrap().value;
                let n = apply_numeric(&p, &e, &o).unwrap();
                assert!(rel(w, n) < 1e-12, "{atom:?}: {w} vs {n}");
            }
        }
        let p = first(1, 1, 6.0, 5.0);
        let slot = theta_t_numeric(&p, TSlot::T1, &o).unwrap();
        let e = OperatorExpr::of(vec![AffineOperator::atom(OperatorAtom::BigTheta1)]);
        assert!(rel(slot, apply_weighted(&p, &e, &o).unwrap().value) < 1e-12);
    }

    #[test]
    fn numeric_products_with_mixed_atoms() {
        let o = SeriesOptions::default();
        let p = first(1, 2, 6.0, 8.0);
        let c = p.get(Param::C);
        let e = OperatorExpr::of(vec![
            AffineOperator::atom(OperatorAtom::BigTheta1),
            AffineOperator::constant(c - 1.0)
                .plus(r(1.0), OperatorAtom::BigTheta1)
                .plus(r(0.5), OperatorAtom::BigTheta2)
                .plus(r(2.0), OperatorAtom::Theta),
        ]);
        let w = apply_weighted(&p, &e, &o).unwrap().value;
        let n = apply_numeric(&p, &e, &o).unwrap();
        assert!(rel(w, n) < 1e-12);
    }

    #[test]
    fn delta_power_examples() {
        let o = SeriesOptions::default();
        let p = first(1, 1, 4.0, 3.0);
        let a = p.get(Param::A);
        let b1 = p.get(Param::B1);
        let c = p.get(Param::C);
        for rr in 1..=3usize {
            let lhs = delta_power(&p, TSlot::T1, rr, &o).unwrap();
            let rc = cn::<f64>(rr);
            let shifted = p.shifted(Param::A, rc).shifted(Param::B1, rc).shifted(Param::C, rc);
            let rhs = pochhammer(a, rr).unwrap() * pochhammer(b1, rr).unwrap() * p.x().powu(rr as u32)
                / pochhammer(c, rr).unwrap()
                * eval_appell(&shifted, &o).unwrap().value;
            assert!(rel(lhs, rhs) < 1e-12, "r={rr}");
        }
        assert!(delta_power(&first(2, 1, 4.0, 3.0), TSlot::T1, 1, &o).is_err());
    }

    #[test]
    fn x_derivative_matches_theta() {
        let o = SeriesOptions::default();
        for p in [first(1, 2, 5.0, 7.0), first(0, 0, 0.3, 0.2), second(1, 4.0)] {
            let d = x_derivative(&p, &o).unwrap().value;
            let e = OperatorExpr::of(vec![AffineOperator::atom(OperatorAtom::Theta)]);
            let th = apply_weighted(&p, &e, &o).unwrap().value;
            assert!(rel(p.x() * d, th) < 1e-13);
            // central difference in x, step 1e-5
            let h = 1e-5;
            let fp = eval_appell(&p.with_args(p.x() + h, p.y()), &o).unwrap().value;
            let fm = eval_appell(&p.with_args(p.x() - h, p.y()), &o).unwrap().value;
            assert!(rel((fp - fm) / (2.0 * h), d) < 1e-5);
        }
    }

    #[test]
    fn derivative_shapes_hold() {
        let o = SeriesOptions::default();
        for p in [first(1, 2, 5.0, 7.0), first(0, 0, 0.3, 0.2), second(2, 7.0)] {
            for shape in DerivativeShape::ALL {
                assert_eq!(partial_power(&p, shape, 0, &o).unwrap(), 0.0);
                for rr in 1..=3 {
                    let res = partial_power(&p, shape, rr, &o).unwrap();
                    assert!(res < 1e-12, "{shape:?} r={rr}: {res}");
                }
            }
        }
    }
}

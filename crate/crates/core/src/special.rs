//! Complex gamma, beta and Pochhammer symbols.

use std::ops::{Add, Mul};

use num_complex::Complex;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{cn, nonnegative_integer, nonpositive_integer, Real};

/// Length at which [`pochhammer`] switches from the direct product to the
/// log-gamma ratio.
pub const POCHHAMMER_PRODUCT_LIMIT: usize = 32;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn pole<T: Real>(what: &'static str, z: Complex<T>) -> Error {
    Error::Pole { what, value: format!("{z}") }
}

fn exactly_nonpositive_integer<T: Real>(z: Complex<T>) -> bool {
    z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round()
}

/// Log-gamma for complex arguments.
///
/// Lanczos approximation (g = 7, nine terms) on `Re z >= 1/2`, reflection
/// below. The imaginary part is continuous away from the negative real axis;
/// only `exp(log_gamma(z))` is guaranteed to be `Γ(z)`.
pub fn log_gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if exactly_nonpositive_integer(z) {
        return Err(pole("z", z));
    }
    let half = T::lit(0.5);
    if z.re < half {
        let pi = T::PI();
        let s = (z * pi).sin();
        if s.norm() == T::zero() {
            return Err(pole("z", z));
        }
        let reflected = log_gamma(Complex::new(T::one(), T::zero()) - z)?;
        return Ok(Complex::new(pi.ln(), T::zero()) - s.ln() - reflected);
    }
    let z = z - T::one();
    let mut sum = Complex::new(T::lit(LANCZOS[0]), T::zero());
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        sum = sum + Complex::new(T::lit(p), T::zero()) / (z + T::from_usize_lossy(i));
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    let half_ln_two_pi = T::lit(0.918_938_533_204_672_8);
    Ok(t.ln() * (z + half) - t + sum.ln() + half_ln_two_pi)
}

/// Γ(z).
pub fn gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    Ok(log_gamma(z)?.exp())
}

/// 1/Γ(z), which is zero at the poles of Γ.
pub fn recip_gamma<T: Real>(z: Complex<T>) -> Complex<T> {
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex::new(T::zero(), T::zero()),
    }
}

/// B(v, w) = Γ(v)Γ(w)/Γ(v+w).
pub fn beta<T: Real>(v: Complex<T>, w: Complex<T>) -> Result<Complex<T>> {
    let lv = log_gamma(v).map_err(|_| pole("v", v))?;
    let lw = log_gamma(w).map_err(|_| pole("w", w))?;
    let lvw = log_gamma(v + w).map_err(|_| pole("v + w", v + w))?;
    Ok((lv + lw - lvw).exp())
}

fn checked<T: Real>(z: Complex<T>, what: &'static str) -> Result<Complex<T>> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Overflow(what))
    }
}

pub(crate) fn pochhammer_product<T: Real>(u: Complex<T>, n: usize) -> Complex<T> {
    let mut acc = Complex::new(T::one(), T::zero());
    for j in 0..n {
        acc = acc * (u + T::from_usize_lossy(j));
    }
    acc
}

pub(crate) fn pochhammer_gamma_ratio<T: Real>(u: Complex<T>, n: usize) -> Result<Complex<T>> {
    let nn = T::from_usize_lossy(n);
    let l = log_gamma(u + nn)? - log_gamma(u)?;
    if l.re > T::max_value().ln() {
        return Err(Error::Overflow("pochhammer"));
    }
    checked(l.exp(), "pochhammer")
}

/// Rising factorial `(u)_n = u (u+1) ... (u+n-1)`.
///
/// Direct product below [`POCHHAMMER_PRODUCT_LIMIT`], log-gamma ratio above.
/// Results that leave the floating range are reported as
/// [`Error::Overflow`] rather than as infinities.
pub fn pochhammer<T: Real>(u: Complex<T>, n: usize) -> Result<Complex<T>> {
    if n < POCHHAMMER_PRODUCT_LIMIT {
        return checked(pochhammer_product(u, n), "pochhammer");
    }
    if let Some(j) = nonpositive_integer(u) {
        if exactly_nonpositive_integer(u) && j < n {
            return Ok(Complex::new(T::zero(), T::zero()));
        }
        if j < n {
            // the product passes within tolerance of zero; keep it literal
            return checked(pochhammer_product(u, n), "pochhammer");
        }
        // (u)_n = (-1)^n (1-u-n)_n with 1-u-n >= 1
        let flipped = pochhammer_gamma_ratio(Complex::new(T::one(), T::zero()) - u - T::from_usize_lossy(n), n)?;
        return Ok(if n % 2 == 0 { flipped } else { -flipped });
    }
    pochhammer_gamma_ratio(u, n)
}

/// Signed lattice factor `(-1)^{mk} (-t)_{mk}`.
///
/// Equals `t (t-1) ... (t-mk+1)`. When `t` is within `1e-12` of a
/// nonnegative integer `T` and `mk > T` the value is exactly zero.
pub fn discrete_pochhammer<T: Real>(t: Complex<T>, m: usize, k: usize) -> Result<Complex<T>> {
    let len = m * k;
    if let Some(big_t) = nonnegative_integer(t) {
        if len > big_t {
            return Ok(Complex::new(T::zero(), T::zero()));
        }
    }
    let p = pochhammer(-t, len)?;
    Ok(if len % 2 == 0 { p } else { -p })
}

/// The same factor through `k^{mk} Π_{i<k} ((-t+i)/k)_m`.
pub fn discrete_pochhammer_factorized<T: Real>(t: Complex<T>, m: usize, k: usize) -> Result<Complex<T>> {
    if k == 0 || m == 0 {
        return Ok(Complex::new(T::one(), T::zero()));
    }
    if let Some(big_t) = nonnegative_integer(t) {
        if m * k > big_t {
            return Ok(Complex::new(T::zero(), T::zero()));
        }
    }
    let kk = cn::<T>(k);
    let mut acc = Complex::new(T::one(), T::zero());
    for i in 0..k {
        acc = acc * pochhammer((-t + T::from_usize_lossy(i)) / kk, m)?;
    }
    let len = m * k;
    let scale = T::from_usize_lossy(k).powi(len as i32);
    let signed = if len % 2 == 0 { acc * scale } else { -acc * scale };
    checked(signed, "discrete pochhammer")
}

/// Binomial coefficient `C(r, s)`, exact in integer arithmetic.
pub fn binomial<T: Real>(r: usize, s: usize) -> Result<Complex<T>> {
    if s > r {
        return Err(Error::Domain(format!("binomial({r}, {s}) needs s <= r")));
    }
    let v = num_integer::binomial(r as u128, s as u128);
    let re = T::from_u128(v).ok_or(Error::Overflow("binomial"))?;
    Ok(Complex::new(re, T::zero()))
}

/// Rising factorial over any ring with a unit, for exact arithmetic.
pub fn rising_factorial<R>(u: R, n: usize) -> R
where
    R: Clone + One + Add<Output = R> + Mul<Output = R>,
{
    let mut acc = R::one();
    let mut term = u;
    for _ in 0..n {
        acc = acc * term.clone();
        term = term + R::one();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn rel(a: C, b: C) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn log_gamma_small_values() {
        assert!(log_gamma(C::new(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!((log_gamma(C::new(5.0, 0.0)).unwrap() - C::new(24f64.ln(), 0.0)).norm() < 1e-14);
        let half = log_gamma(C::new(0.5, 0.0)).unwrap();
        assert!((half.re - 0.572_364_942_924_700_1).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_poles() {
        for z in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(C::new(z, 0.0)), Err(Error::Pole { .. })));
        }
        assert!(log_gamma(C::new(-1.0, 1e-9)).is_ok());
    }

    #[test]
    fn reflection_branch_agrees_with_recurrence() {
        // Γ(z+1) = zΓ(z) across the reflection boundary
        for &z in &[C::new(0.3, 0.2), C::new(-2.7, 1.1), C::new(-0.5, -0.4)] {
            let lhs = gamma(z + 1.0).unwrap();
            let rhs = gamma(z).unwrap() * z;
            assert!(rel(lhs, rhs) < 1e-13, "{z}");
        }
    }

    #[test]
    fn beta_examples() {
        assert!(rel(beta(C::new(1.0, 0.0), C::new(1.0, 0.0)).unwrap(), C::new(1.0, 0.0)) < 1e-14);
        assert!(rel(beta(C::new(2.0, 0.0), C::new(3.0, 0.0)).unwrap(), C::new(1.0 / 12.0, 0.0)) < 1e-13);
        let pi = C::new(std::f64::consts::PI, 0.0);
        assert!(rel(beta(C::new(0.5, 0.0), C::new(0.5, 0.0)).unwrap(), pi) < 1e-13);
    }

    #[test]
    fn pochhammer_examples() {
        let u = C::new(0.3, 0.9);
        assert_eq!(pochhammer(u, 0).unwrap(), C::new(1.0, 0.0));
        assert_eq!(pochhammer(C::new(1.0, 0.0), 5).unwrap(), C::new(120.0, 0.0));
        assert!(rel(pochhammer(C::new(0.5, 0.0), 3).unwrap(), C::new(1.875, 0.0)) < 1e-15);
    }

    #[test]
    fn pochhammer_branches_agree_at_threshold() {
        for &u in &[C::new(0.7, 0.0), C::new(2.5, -1.5), C::new(-3.3, 0.8), C::new(10.0, 4.0)] {
            let n = POCHHAMMER_PRODUCT_LIMIT;
            let a = pochhammer_product(u, n);
            let b = pochhammer_gamma_ratio(u, n).unwrap();
            assert!(rel(b, a) < 1e-12, "{u}: {a} vs {b}");
        }
    }

    #[test]
    fn pochhammer_long_lengths() {
        assert_eq!(pochhammer(C::new(-3.0, 0.0), 40).unwrap(), C::new(0.0, 0.0));
        // (−40)_{35} through the reflected ratio against the literal product
        let u = C::new(-40.0, 0.0);
        assert!(rel(pochhammer(u, 35).unwrap(), pochhammer_product(u, 35)) < 1e-12);
        assert!(matches!(pochhammer(C::new(1e3, 0.0), 400), Err(Error::Overflow(_))));
    }

    #[test]
    fn discrete_pochhammer_examples() {
        let t = C::new(1.7, 0.2);
        assert_eq!(discrete_pochhammer(t, 0, 3).unwrap(), C::new(1.0, 0.0));
        assert_eq!(discrete_pochhammer(C::new(2.0, 0.0), 2, 2).unwrap(), C::new(0.0, 0.0));
        assert!(rel(discrete_pochhammer(C::new(-2.0, 0.0), 2, 2).unwrap(), C::new(120.0, 0.0)) < 1e-15);
        assert!(rel(discrete_pochhammer_factorized(C::new(-2.0, 0.0), 2, 2).unwrap(), C::new(120.0, 0.0)) < 1e-14);
        // rounding residue next to an integer still terminates
        assert_eq!(discrete_pochhammer(C::new(3.0 + 1e-13, 0.0), 2, 2).unwrap(), C::new(0.0, 0.0));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial::<f64>(5, 0).unwrap().re, 1.0);
        assert_eq!(binomial::<f64>(5, 5).unwrap().re, 1.0);
        assert_eq!(binomial::<f64>(6, 2).unwrap().re, 15.0);
        assert!(matches!(binomial::<f64>(2, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn rising_factorial_exact() {
        assert_eq!(rising_factorial(3i64, 4), 3 * 4 * 5 * 6);
        assert_eq!(rising_factorial(-2i64, 3), 0);
        assert_eq!(rising_factorial(7i64, 0), 1);
    }

    #[test]
    fn works_in_single_precision() {
        let v = pochhammer(Complex::new(0.5f32, 0.0), 3).unwrap();
        assert!((v.re - 1.875).abs() < 1e-6);
        let l = log_gamma(Complex::new(5.0f32, 0.0)).unwrap();
        assert!((l.re - 24f32.ln()).abs() < 1e-5);
    }
}

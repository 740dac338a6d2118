use num_complex::Complex;

use crate::scalar::Real;

/// Compensated (Neumaier) running sum of complex values.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum<T> {
    sum: Complex<T>,
    comp: Complex<T>,
}

fn step<T: Real>(sum: &mut T, comp: &mut T, x: T) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp = *comp + ((*sum - t) + x);
    } else {
        *comp = *comp + ((x - t) + *sum);
    }
    *sum = t;
}

impl<T: Real> KahanSum<T> {
    pub fn new() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self { sum: z, comp: z }
    }

    pub fn add(&mut self, x: Complex<T>) {
        step(&mut self.sum.re, &mut self.comp.re, x.re);
        step(&mut self.sum.im, &mut self.comp.im, x.im);
    }

    pub fn value(&self) -> Complex<T> {
        self.sum + self.comp
    }
}

/// Compensated sum of a stream of complex values.
pub fn kahan_accumulate<T: Real, I: IntoIterator<Item = Complex<T>>>(partials: I) -> Complex<T> {
    let mut acc = KahanSum::new();
    for x in partials {
        acc.add(x);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let empty: Vec<Complex<f64>> = Vec::new();
        assert_eq!(kahan_accumulate(empty), Complex::new(0.0, 0.0));
        assert_eq!(kahan_accumulate([Complex::new(1.0, 0.0)]), Complex::new(1.0, 0.0));
        let v = [1e16, 1.0, -1e16].map(|r| Complex::new(r, -r));
        assert_eq!(kahan_accumulate(v), Complex::new(1.0, -1.0));
    }

    #[test]
    fn beats_naive_sum() {
        let xs: Vec<Complex<f64>> = (0..10_000).map(|_| Complex::new(0.1, 0.0)).collect();
        let naive: f64 = xs.iter().map(|z| z.re).sum();
        let comp = kahan_accumulate(xs.iter().copied()).re;
        assert!((comp - 1000.0).abs() <= (naive - 1000.0).abs());
        assert!((comp - 1000.0).abs() < 1e-12);
    }
}

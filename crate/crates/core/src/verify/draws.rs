//! Deterministic parameter draws.
//!
//! Each draw has its own ChaCha8 stream keyed by the suite seed, the
//! family id and the draw index, so a draw does not depend on which other
//! families or draws run, or in which order.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::IdentityFamily;
use crate::functions::{Appell1Params, Appell2Params, AppellParams, Form, Param};
use crate::{Appell, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Steps `k = 0`: the series are classical and converge for `|x|, |y| < 1`.
    Classical,
    /// Steps `k >= 1` with integer `t >= 3k`: every series is a polynomial.
    Terminating,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Classical => "classical",
            Regime::Terminating => "terminating",
        })
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classical" => Ok(Regime::Classical),
            "terminating" => Ok(Regime::Terminating),
            _ => Err(format!("unknown regime `{s}` (expected classical or terminating)")),
        }
    }
}

/// Parameter boxes the draws come from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DrawRanges {
    /// Real parts of `a, b₁, b₂`.
    pub numerator_re: (f64, f64),
    pub c_re: (f64, f64),
    /// Bound on `|Im|` of `a, b₁, b₂, c`.
    pub im: f64,
    /// Radius of the disc `x` and `y` are drawn from.
    pub argument_radius: f64,
    /// Radius of the disc of the resummation variable `z`.
    pub z_radius: f64,
    /// Orders and recursion depths are drawn from `1..=max_order`.
    pub max_order: usize,
    /// Steps in the terminating regime are drawn from `1..=max_step`.
    pub max_step: usize,
    /// Terminating `t` is drawn from `3k..=3k + t_span`.
    pub t_span: usize,
}

impl Default for DrawRanges {
    fn default() -> Self {
        Self {
            numerator_re: (0.5, 3.0),
            c_re: (1.5, 4.0),
            im: 1.0,
            argument_radius: 0.35,
            z_radius: 0.3,
            max_order: 3,
            max_step: 2,
            t_span: 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DrawPolicy {
    pub regime: Regime,
    pub count: usize,
    pub seed: u64,
    pub ranges: DrawRanges,
}

impl DrawPolicy {
    pub fn new(regime: Regime, count: usize, seed: u64) -> Self {
        Self { regime, count, seed, ranges: DrawRanges::default() }
    }
}

/// One parameter set for one identity check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Draw {
    pub index: usize,
    pub regime: Regime,
    pub params: Appell,
    /// Order `r` of a power or derivative, or depth `s` of a recursion.
    pub order: usize,
    pub z: C64,
    /// 1-based relation index for catalogue families, 0 otherwise.
    pub relation: usize,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn stream(seed: u64, family: IdentityFamily, index: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&fnv1a(family.id().as_bytes()).to_le_bytes());
    key[16..24].copy_from_slice(&(index as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

struct Sampler<'a> {
    rng: ChaCha8Rng,
    ranges: &'a DrawRanges,
}

impl Sampler<'_> {
    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    fn numerator(&mut self) -> C64 {
        let (lo, hi) = self.ranges.numerator_re;
        let im = self.ranges.im;
        C64::new(self.uniform(lo, hi), self.uniform(-im, im))
    }

    /// `c` kept at distance >= 0.1 from the integers, so that `c - s` and
    /// the shifted denominators stay clear of poles.
    fn denominator(&mut self) -> C64 {
        let (lo, hi) = self.ranges.c_re;
        let im = self.ranges.im;
        loop {
            let c = C64::new(self.uniform(lo, hi), self.uniform(-im, im));
            if c.im.abs() >= 0.1 || (c.re - c.re.round()).abs() >= 0.1 {
                return c;
            }
        }
    }

    fn disc(&mut self, radius: f64) -> C64 {
        let rho = radius * self.uniform(0.0, 1.0).sqrt();
        C64::from_polar(rho, self.uniform(0.0, 2.0 * PI))
    }

    /// Step and lattice variable for one axis.
    fn lattice(&mut self, regime: Regime) -> (usize, C64) {
        match regime {
            Regime::Classical => (0, self.numerator()),
            Regime::Terminating => {
                let k = self.rng.gen_range(1..=self.ranges.max_step);
                (k, terminating_t(k, self.rng.gen_range(0..=self.ranges.t_span)))
            }
        }
    }
}

fn terminating_t(k: usize, extra: usize) -> C64 {
    C64::new((3 * k + extra) as f64, 0.0)
}

/// Number of relation rows a catalogue family cycles through.
fn relation_count(family: IdentityFamily) -> usize {
    family.catalogue().map_or(0, |c| c.len())
}

/// The `index`-th draw of `family` under `policy`.
pub fn draw(policy: &DrawPolicy, family: IdentityFamily, index: usize) -> Draw {
    let mut s = Sampler { rng: stream(policy.seed, family, index), ranges: &policy.ranges };
    let regime = policy.regime;
    let (a, b1, b2, c) = (s.numerator(), s.numerator(), s.numerator(), s.denominator());
    let (x, y) = (s.disc(policy.ranges.argument_radius), s.disc(policy.ranges.argument_radius));
    let (k1, t1) = s.lattice(regime);
    let (k2, t2) = s.lattice(regime);
    let order = s.rng.gen_range(1..=policy.ranges.max_order.max(1));
    let z = s.disc(policy.ranges.z_radius);
    let params = match family.form() {
        Form::First => AppellParams::First(Appell1Params { a, b1, b2, c, t1, t2, k1, k2, x, y }),
        Form::Second => AppellParams::Second(Appell2Params { a, b1, b2, c, t: t1, k: k1, x, y }),
    };
    let n = relation_count(family);
    let relation = if n == 0 { 0 } else { index % n + 1 };
    let mut d = Draw { index, regime, params, order, z, relation };
    adjust(family, &mut d, &mut s);
    d
}

fn set_first(d: &mut Draw, f: impl FnOnce(&mut Appell1Params<f64>)) {
    if let AppellParams::First(p) = &mut d.params {
        f(p);
    }
}

fn set_second(d: &mut Draw, f: impl FnOnce(&mut Appell2Params<f64>)) {
    if let AppellParams::Second(p) = &mut d.params {
        f(p);
    }
}

/// Family-specific constraints on top of the regime's draw.
fn adjust(family: IdentityFamily, d: &mut Draw, s: &mut Sampler<'_>) {
    use IdentityFamily::*;
    let span = s.ranges.t_span;
    let terminating = d.regime == Regime::Terminating;
    let lattice_one = |s: &mut Sampler<'_>| -> C64 {
        if terminating {
            terminating_t(1, s.rng.gen_range(0..=span))
        } else {
            s.numerator()
        }
    };
    match family {
        ReductionClassical => set_first(d, |p| (p.k1, p.k2) = (0, 0)),
        SecondReductionClassical => set_second(d, |p| p.k = 0),
        ReductionLatticeX | ForwardDifferenceX => {
            let t = lattice_one(s);
            set_first(d, |p| {
                p.k1 = 1;
                p.t1 = t;
                if family == ReductionLatticeX {
                    p.k2 = 0;
                }
            });
        }
        ReductionLatticeY | ForwardDifferenceY => {
            let t = lattice_one(s);
            set_first(d, |p| {
                p.k2 = 1;
                p.t2 = t;
                if family == ReductionLatticeY {
                    p.k1 = 0;
                }
            });
        }
        ReductionLatticeBoth => {
            let (t1, t2) = (lattice_one(s), lattice_one(s));
            set_first(d, |p| (p.k1, p.t1, p.k2, p.t2) = (1, t1, 1, t2));
        }
        SecondReductionLattice => {
            let t = lattice_one(s);
            set_second(d, |p| (p.k, p.t) = (1, t));
        }
        SpecialCases => {
            let common_step = d.index % 2 == 0;
            let extra = s.rng.gen_range(0..=span);
            set_first(d, |p| {
                if common_step {
                    p.k2 = p.k1;
                    if terminating {
                        p.t2 = terminating_t(p.k2, extra);
                    }
                } else {
                    p.t2 = p.t1;
                }
            });
        }
        IntegralEuler | SecondIntegralEuler => {
            let gap = C64::new(1.0 + s.uniform(0.0, 1.0), s.uniform(-0.5, 0.5));
            let a = d.params.get(Param::A);
            d.params = d.params.with(Param::C, a + gap);
        }
        IntegralSimplex | SecondIntegralSimplex => {
            let gap = C64::new(1.0 + s.uniform(0.0, 1.0), s.uniform(-0.5, 0.5));
            let b = d.params.get(Param::B1) + d.params.get(Param::B2);
            d.params = d.params.with(Param::C, b + gap);
        }
        IntegralLaplaceCrosscheck => {
            // Re(-t) > 0 and noninteger t for both Gamma kernels
            let gamma_t = |s: &mut Sampler<'_>| C64::new(-s.uniform(0.3, 2.7), s.uniform(-0.5, 0.5));
            let (t1, t2) = (gamma_t(s), gamma_t(s));
            set_first(d, |p| (p.k1, p.t1, p.k2, p.t2) = (0, t1, 0, t2));
        }
        _ => {}
    }
    if family.is_recursion() && terminating {
        // every function on the right must terminate: t >= k (s + 1)
        let limit = match d.params {
            AppellParams::First(p) => lattice_room(p.t1, p.k1).min(lattice_room(p.t2, p.k2)),
            AppellParams::Second(p) => lattice_room(p.t, p.k),
        };
        d.order = d.order.min(limit.max(1));
    }
}

/// Largest `s` with `t >= k (s + 1)`.
fn lattice_room(t: C64, k: usize) -> usize {
    if k == 0 {
        return usize::MAX;
    }
    (t.re.round() as usize / k).saturating_sub(1)
}

//! Contiguous and recursion relations as data.
//!
//! Every relation has the shape `P(F(shifted)) = Q(F(shifted'))` where `P`
//! and `Q` are products of affine factors. A factor is either a parameter
//! value plus an integer offset, or the parameter raised by its operator
//! part (`a + θ + φ`, `b₁ + Θ₁/k₁`, ...). Constants always refer to the
//! unshifted parameters. Rows keep a fixed order so relation numbers in
//! reports stay stable.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{AppellParams, Form, Param};
use crate::operators::{AffineOperator, OperatorAtom, OperatorExpr};
use crate::scalar::{cn, Real};

/// One affine factor of a relation side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Factor {
    /// `p + offset`
    Value(Param, i8),
    /// `p + D_p + offset`, with `D_p` the operator part of `p`.
    Raised(Param, i8),
}

/// An integer shift of one parameter, or none.
pub type Shift = Option<(Param, i8)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSide {
    pub factors: Vec<Factor>,
    pub shift: Shift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Catalogue {
    /// Eight first-order relations in `θ, φ`.
    ContiguousDifferential,
    /// All pairings of the eight, in `θ, φ`.
    RecursionDifferential,
    /// The eight with `Θ₁/k₁, Θ₂/k₂` in place of `θ, φ`.
    ContiguousDifference,
    RecursionDifference,
    SecondContiguousDifferential,
    SecondRecursionDifferential,
    /// Second form: `a` and `c` carry `Θ/k`, `b₁` and `b₂` keep `θ` and `φ`.
    SecondContiguousDifference,
    /// The pairings that involve `Θ/k` on at least one side.
    SecondRecursionDifference,
}

/// How the operator part of each parameter is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum OperatorSet {
    Differential,
    Difference,
    SecondDifference,
}

impl Catalogue {
    pub const ALL: [Catalogue; 8] = [
        Catalogue::ContiguousDifferential,
        Catalogue::RecursionDifferential,
        Catalogue::ContiguousDifference,
        Catalogue::RecursionDifference,
        Catalogue::SecondContiguousDifferential,
        Catalogue::SecondRecursionDifferential,
        Catalogue::SecondContiguousDifference,
        Catalogue::SecondRecursionDifference,
    ];

    pub fn len(self) -> usize {
        match self {
            Catalogue::SecondRecursionDifference => SECOND_DIFFERENCE_PAIRS.len(),
            Catalogue::RecursionDifferential
            | Catalogue::RecursionDifference
            | Catalogue::SecondRecursionDifferential => PAIRS.len(),
            _ => CONTIGUOUS.len(),
        }
    }

    pub fn form(self) -> Form {
        match self {
            Catalogue::ContiguousDifferential
            | Catalogue::RecursionDifferential
            | Catalogue::ContiguousDifference
            | Catalogue::RecursionDifference => Form::First,
            _ => Form::Second,
        }
    }

    fn operators(self) -> OperatorSet {
        match self {
            Catalogue::ContiguousDifference | Catalogue::RecursionDifference => OperatorSet::Difference,
            Catalogue::SecondContiguousDifference | Catalogue::SecondRecursionDifference => {
                OperatorSet::SecondDifference
            }
            _ => OperatorSet::Differential,
        }
    }

    /// Whether the operator parts divide by a step `k`.
    pub fn needs_step(self) -> bool {
        self.operators() != OperatorSet::Differential
    }
}

type Row = (&'static [Factor], Shift, &'static [Factor], Shift);

const fn v(p: Param, o: i8) -> Factor {
    Factor::Value(p, o)
}

const fn r(p: Param, o: i8) -> Factor {
    Factor::Raised(p, o)
}

use Param::{A, B1, B2, C};

const CONTIGUOUS: [Row; 8] = [
    (&[v(A, 0)], Some((A, 1)), &[r(A, 0)], None),
    (&[r(A, -1)], Some((A, -1)), &[v(A, -1)], None),
    (&[v(B1, 0)], Some((B1, 1)), &[r(B1, 0)], None),
    (&[r(B1, -1)], Some((B1, -1)), &[v(B1, -1)], None),
    (&[v(B2, 0)], Some((B2, 1)), &[r(B2, 0)], None),
    (&[r(B2, -1)], Some((B2, -1)), &[v(B2, -1)], None),
    (&[v(C, -1)], Some((C, -1)), &[r(C, -1)], None),
    (&[r(C, 0)], Some((C, 1)), &[v(C, 0)], None),
];

const PAIRS: [Row; 28] = [
    (&[v(A, 0), v(A, -1)], Some((A, 1)), &[r(A, 0), r(A, -1)], Some((A, -1))),
    (&[v(A, 0), v(B1, -1)], Some((A, 1)), &[r(A, 0), r(B1, -1)], Some((B1, -1))),
    (&[v(A, 0), v(B2, -1)], Some((A, 1)), &[r(A, 0), r(B2, -1)], Some((B2, -1))),
    (&[v(A, 0), v(C, 0)], Some((A, 1)), &[r(A, 0), r(C, 0)], Some((C, 1))),
    (&[v(A, 0), r(B1, 0)], Some((A, 1)), &[v(B1, 0), r(A, 0)], Some((B1, 1))),
    (&[v(A, 0), r(B2, 0)], Some((A, 1)), &[v(B2, 0), r(A, 0)], Some((B2, 1))),
    (&[v(A, 0), r(C, -1)], Some((A, 1)), &[v(C, -1), r(A, 0)], Some((C, -1))),
    (&[r(A, -1), r(B1, 0)], Some((A, -1)), &[v(B1, 0), v(A, -1)], Some((B1, 1))),
    (&[r(A, -1), r(B2, 0)], Some((A, -1)), &[v(B2, 0), v(A, -1)], Some((B2, 1))),
    (&[r(A, -1), r(C, -1)], Some((A, -1)), &[v(C, -1), v(A, -1)], Some((C, -1))),
    (&[v(B1, -1), r(A, -1)], Some((A, -1)), &[v(A, -1), r(B1, -1)], Some((B1, -1))),
    (&[v(B2, -1), r(A, -1)], Some((A, -1)), &[v(A, -1), r(B2, -1)], Some((B2, -1))),
    (&[v(C, 0), r(A, -1)], Some((A, -1)), &[v(A, -1), r(C, 0)], Some((C, 1))),
    (&[v(B1, 0), v(B1, -1)], Some((B1, 1)), &[r(B1, 0), r(B1, -1)], Some((B1, -1))),
    (&[v(B1, 0), r(B2, 0)], Some((B1, 1)), &[v(B2, 0), r(B1, 0)], Some((B2, 1))),
    (&[v(B1, 0), v(B2, -1)], Some((B1, 1)), &[r(B1, 0), r(B2, -1)], Some((B2, -1))),
    (&[v(B1, 0), r(C, -1)], Some((B1, 1)), &[v(C, -1), r(B1, 0)], Some((C, -1))),
    (&[v(B1, 0), v(C, 0)], Some((B1, 1)), &[r(C, 0), r(B1, 0)], Some((C, 1))),
    (&[v(B2, 0), v(B1, -1)], Some((B2, 1)), &[r(B2, 0), r(B1, -1)], Some((B1, -1))),
    (&[v(B2, 0), v(B2, -1)], Some((B2, 1)), &[r(B2, 0), r(B2, -1)], Some((B2, -1))),
    (&[v(B2, 0), r(C, -1)], Some((B2, 1)), &[v(C, -1), r(B2, 0)], Some((C, -1))),
    (&[v(B2, 0), v(C, 0)], Some((B2, 1)), &[r(C, 0), r(B2, 0)], Some((C, 1))),
    (&[v(B2, -1), r(B1, -1)], Some((B1, -1)), &[v(B1, -1), r(B2, -1)], Some((B2, -1))),
    (&[r(B1, -1), r(C, -1)], Some((B1, -1)), &[v(C, -1), v(B1, -1)], Some((C, -1))),
    (&[v(C, 0), r(B1, -1)], Some((B1, -1)), &[v(B1, -1), r(C, 0)], Some((C, 1))),
    (&[r(B2, -1), r(C, -1)], Some((B2, -1)), &[v(C, -1), v(B2, -1)], Some((C, -1))),
    (&[v(C, 0), r(B2, -1)], Some((B2, -1)), &[v(B2, -1), r(C, 0)], Some((C, 1))),
    (&[v(C, 0), v(C, -1)], Some((C, -1)), &[r(C, -1), r(C, 0)], Some((C, 1))),
];

/// Rows of [`PAIRS`] (1-based) that make up the second form's
/// difference-differential list. The pairings among `b₁ ± 1, b₂ ± 1` alone
/// carry no `Θ` and are absent from it.
const SECOND_DIFFERENCE_PAIRS: [usize; 22] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 17, 18, 21, 22, 24, 25, 26, 27, 28];

fn side(factors: &[Factor], shift: Shift) -> RelationSide {
    RelationSide { factors: factors.to_vec(), shift }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub catalogue: Catalogue,
    /// 1-based position in the catalogue.
    pub index: usize,
    pub lhs: RelationSide,
    pub rhs: RelationSide,
}

/// The `index`-th relation (1-based) of `catalogue`.
pub fn enumerate_relation(catalogue: Catalogue, index: usize) -> Result<Relation> {
    let len = catalogue.len();
    if index == 0 || index > len {
        return Err(Error::Index { catalogue: format!("{catalogue:?}"), index, len });
    }
    let row = match catalogue {
        Catalogue::ContiguousDifferential
        | Catalogue::ContiguousDifference
        | Catalogue::SecondContiguousDifferential
        | Catalogue::SecondContiguousDifference => CONTIGUOUS[index - 1],
        Catalogue::SecondRecursionDifference => PAIRS[SECOND_DIFFERENCE_PAIRS[index - 1] - 1],
        _ => PAIRS[index - 1],
    };
    Ok(Relation { catalogue, index, lhs: side(row.0, row.1), rhs: side(row.2, row.3) })
}

/// One side realized at concrete parameters: apply `operator` to the
/// function at `params`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizedSide<T> {
    pub operator: OperatorExpr<T>,
    pub params: AppellParams<T>,
}

impl Relation {
    /// Both sides at the parameters `p`.
    pub fn realize<T: Real>(&self, p: &AppellParams<T>) -> Result<(RealizedSide<T>, RealizedSide<T>)> {
        if p.form() != self.catalogue.form() {
            return Err(Error::Precondition(format!("{:?} relations need the {:?} form", self.catalogue, self.catalogue.form())));
        }
        let ops = self.catalogue.operators();
        Ok((realize_side(&self.lhs, ops, p)?, realize_side(&self.rhs, ops, p)?))
    }
}

fn step_inverse<T: Real>(k: usize, name: &str) -> Result<Complex<T>> {
    if k == 0 {
        return Err(Error::Precondition(format!("difference relations divide by {name}, which is 0")));
    }
    Ok(Complex::new(T::one() / T::from_usize_lossy(k), T::zero()))
}

/// Operator part `D_p` of parameter `p`, added to `base`.
fn raise<T: Real>(base: AffineOperator<T>, p: Param, ops: OperatorSet, at: &AppellParams<T>) -> Result<AffineOperator<T>> {
    let one = Complex::new(T::one(), T::zero());
    let joint = matches!(p, Param::A | Param::C);
    Ok(match (ops, at) {
        (OperatorSet::Differential, _) => match p {
            Param::B1 => base.plus(one, OperatorAtom::Theta),
            Param::B2 => base.plus(one, OperatorAtom::Phi),
            _ => base.plus(one, OperatorAtom::Theta).plus(one, OperatorAtom::Phi),
        },
        (OperatorSet::Difference, AppellParams::First(q)) => {
            let (i1, i2) = (step_inverse(q.k1, "k1"), step_inverse(q.k2, "k2"));
            match p {
                Param::B1 => base.plus(i1?, OperatorAtom::BigTheta1),
                Param::B2 => base.plus(i2?, OperatorAtom::BigTheta2),
                _ => base.plus(i1?, OperatorAtom::BigTheta1).plus(i2?, OperatorAtom::BigTheta2),
            }
        }
        (OperatorSet::SecondDifference, AppellParams::Second(q)) if joint => {
            base.plus(step_inverse(q.k, "k")?, OperatorAtom::BigTheta)
        }
        (OperatorSet::SecondDifference, _) => match p {
            Param::B1 => base.plus(one, OperatorAtom::Theta),
            _ => base.plus(one, OperatorAtom::Phi),
        },
        _ => return Err(Error::Precondition("operator set does not match the parameter form".into())),
    })
}

fn realize_side<T: Real>(s: &RelationSide, ops: OperatorSet, p: &AppellParams<T>) -> Result<RealizedSide<T>> {
    let mut factors = Vec::with_capacity(s.factors.len());
    for f in &s.factors {
        factors.push(match *f {
            Factor::Value(q, o) => AffineOperator::constant(p.get(q) + offset::<T>(o)),
            Factor::Raised(q, o) => raise(AffineOperator::constant(p.get(q) + offset::<T>(o)), q, ops, p)?,
        });
    }
    let params = match s.shift {
        Some((q, o)) => p.shifted(q, offset(o)),
        None => *p,
    };
    Ok(RealizedSide { operator: OperatorExpr::of(factors), params })
}

fn offset<T: Real>(o: i8) -> Complex<T> {
    let m = cn::<T>(o.unsigned_abs() as usize);
    if o < 0 {
        -m
    } else {
        m
    }
}

fn param_name(p: Param) -> &'static str {
    match p {
        Param::A => "a",
        Param::B1 => "b1",
        Param::B2 => "b2",
        Param::C => "c",
    }
}

fn operator_text(p: Param, ops: OperatorSet) -> &'static str {
    match (ops, p) {
        (OperatorSet::Differential, Param::B1) | (OperatorSet::SecondDifference, Param::B1) => "θ",
        (OperatorSet::Differential, Param::B2) | (OperatorSet::SecondDifference, Param::B2) => "φ",
        (OperatorSet::Differential, _) => "θ + φ",
        (OperatorSet::Difference, Param::B1) => "Θ1/k1",
        (OperatorSet::Difference, Param::B2) => "Θ2/k2",
        (OperatorSet::Difference, _) => "Θ1/k1 + Θ2/k2",
        (OperatorSet::SecondDifference, _) => "Θ/k",
    }
}

fn write_offset(f: &mut fmt::Formatter<'_>, o: i8) -> fmt::Result {
    match o.cmp(&0) {
        std::cmp::Ordering::Less => write!(f, " - {}", -o),
        std::cmp::Ordering::Greater => write!(f, " + {o}"),
        std::cmp::Ordering::Equal => Ok(()),
    }
}

fn write_side(f: &mut fmt::Formatter<'_>, s: &RelationSide, ops: OperatorSet) -> fmt::Result {
    for factor in &s.factors {
        match *factor {
            Factor::Value(p, 0) => write!(f, "{} ", param_name(p))?,
            Factor::Value(p, o) => {
                write!(f, "({}", param_name(p))?;
                write_offset(f, o)?;
                write!(f, ") ")?;
            }
            Factor::Raised(p, o) => {
                write!(f, "({} + {}", param_name(p), operator_text(p, ops))?;
                write_offset(f, o)?;
                write!(f, ") ")?;
            }
        }
    }
    match s.shift {
        Some((p, o)) => {
            write!(f, "F({}", param_name(p))?;
            write_offset(f, o)?;
            write!(f, ")")
        }
        None => write!(f, "F"),
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ops = self.catalogue.operators();
        write_side(f, &self.lhs, ops)?;
        write!(f, " = ")?;
        write_side(f, &self.rhs, ops)
    }
}

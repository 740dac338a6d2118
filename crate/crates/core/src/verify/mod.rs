//! Identity checks as residuals over seeded parameter draws.
//!
//! Each [`IdentityFamily`] names one identity (or one table of contiguous
//! relations). [`check_identity`] evaluates both sides at a [`Draw`] and
//! reports the relative residual `|l - r| / (|l| + |r| + 1)`. [`run_suite`]
//! aggregates many draws into a [`Report`].

mod catalogue;
mod checks;
mod draws;

pub use catalogue::*;
pub use draws::*;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::functions::Form;
use crate::{QuadratureOptions, SeriesOptions, C64};
use checks::Failure;

/// Broad kind of an identity; fixes its default tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    Reduction,
    FiniteSum,
    Algebraic,
    Operator,
    InfiniteSum,
    Euler,
    Laplace,
    /// Residual is the distance of the error ratio from 2.
    Degeneration,
}

impl FamilyKind {
    pub fn default_tolerance(self) -> f64 {
        match self {
            FamilyKind::Reduction | FamilyKind::FiniteSum => 1e-10,
            FamilyKind::Algebraic => 1e-9,
            FamilyKind::Operator | FamilyKind::InfiniteSum => 1e-8,
            FamilyKind::Euler => 1e-7,
            FamilyKind::Laplace => 1e-6,
            FamilyKind::Degeneration => 0.5,
        }
    }
}

/// Regimes a family is drawn in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Support {
    Both,
    Terminating,
}

macro_rules! families {
    ($($name:ident: $form:ident, $kind:ident, $support:ident, $desc:literal;)*) => {
        /// One identity, or one table of relations, checked as a residual.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum IdentityFamily {
            $($name,)*
        }

        impl IdentityFamily {
            pub const ALL: &'static [IdentityFamily] = &[$(IdentityFamily::$name,)*];

            /// Stable identifier used in reports and on the command line.
            pub fn id(self) -> &'static str {
                match self {
                    $(IdentityFamily::$name => stringify!($name),)*
                }
            }

            pub fn description(self) -> &'static str {
                match self {
                    $(IdentityFamily::$name => $desc,)*
                }
            }

            pub fn form(self) -> Form {
                match self {
                    $(IdentityFamily::$name => Form::$form,)*
                }
            }

            pub fn kind(self) -> FamilyKind {
                match self {
                    $(IdentityFamily::$name => FamilyKind::$kind,)*
                }
            }

            fn support(self) -> Support {
                match self {
                    $(IdentityFamily::$name => Support::$support,)*
                }
            }
        }
    };
}

families! {
    ReductionClassical: First, Reduction, Both, "k1 = k2 = 0 gives the classical F1";
    ReductionLatticeX: First, Reduction, Terminating, "k1 = 1, k2 = 0 as a Kampé de Fériet series at (-x, y)";
    ReductionLatticeY: First, Reduction, Terminating, "k1 = 0, k2 = 1 as a Kampé de Fériet series at (x, -y)";
    ReductionLatticeBoth: First, Reduction, Terminating, "k1 = k2 = 1 as a Kampé de Fériet series at (-x, -y)";
    SpecialCases: First, Reduction, Both, "common-step and common-lattice wrappers against a direct term sum";
    DifferenceEqX: First, Algebraic, Terminating, "difference equation in the lattice variable of x";
    DifferenceEqY: First, Algebraic, Terminating, "difference equation in the lattice variable of y";
    DifferenceEqMixed: First, Algebraic, Terminating, "mixed difference equation coupling both lattice variables";
    OperatorLatticeShift: First, Operator, Terminating, "weighted series against shifted evaluations for a lattice operator product";
    OperatorTermwiseDerivative: First, Operator, Both, "x times the termwise x-derivative against θF";
    ForwardDifferenceX: First, Algebraic, Terminating, "r-th forward difference in t1 at step 1";
    ForwardDifferenceY: First, Algebraic, Terminating, "r-th forward difference in t2 at step 1";
    ThetaPower: First, Algebraic, Both, "falling power of θ as a parameter and lattice shift";
    PhiPower: First, Algebraic, Both, "falling power of φ as a parameter and lattice shift";
    DerivativeB1: First, Algebraic, Both, "r-fold x-derivative raising b1";
    DerivativeB2: First, Algebraic, Both, "r-fold y-derivative raising b2";
    DerivativeAx: First, Algebraic, Both, "r-fold x-derivative on (x, xy) raising a";
    DerivativeAy: First, Algebraic, Both, "r-fold y-derivative on (xy, y) raising a";
    DerivativeCx: First, Algebraic, Both, "r-fold x-derivative on (x, xy) lowering c";
    DerivativeCy: First, Algebraic, Both, "r-fold y-derivative on (xy, y) lowering c";
    FiniteSumB1: First, FiniteSum, Both, "F(b1 + r) as a finite sum of shifted functions";
    FiniteSumB2: First, FiniteSum, Both, "F(b2 + r) as a finite sum of shifted functions";
    InfiniteSumA: First, InfiniteSum, Both, "generating function in a";
    InfiniteSumB1: First, InfiniteSum, Both, "generating function in b1";
    InfiniteSumB2: First, InfiniteSum, Both, "generating function in b2";
    RecursionAPlus: First, Algebraic, Both, "F(a + s) through functions at lowered lattice variables";
    RecursionAMinus: First, Algebraic, Both, "F(a - s) through functions at lowered lattice variables";
    RecursionB1Plus: First, Algebraic, Both, "F(b1 + s) through functions at a lowered t1";
    RecursionB1Minus: First, Algebraic, Both, "F(b1 - s) through functions at a lowered t1";
    RecursionB2Plus: First, Algebraic, Both, "F(b2 + s) through functions at a lowered t2";
    RecursionB2Minus: First, Algebraic, Both, "F(b2 - s) through functions at a lowered t2";
    RecursionCMinus: First, Algebraic, Both, "F(c - s) through functions at lowered lattice variables";
    ContiguousDifferential: First, Algebraic, Both, "single-shift contiguous relations with θ, φ";
    RecursionDifferential: First, Algebraic, Both, "paired-shift relations with θ, φ";
    ContiguousDifference: First, Algebraic, Terminating, "single-shift contiguous relations with Θ1, Θ2";
    RecursionDifference: First, Algebraic, Terminating, "paired-shift relations with Θ1, Θ2";
    DegenerationPhi1: First, Degeneration, Both, "linear rate of the limit to the Humbert Φ1 analogue";
    DegenerationPhi2: First, Degeneration, Both, "linear rate of the limit to the Humbert Φ2 analogue";
    DegenerationPhi3: First, Degeneration, Both, "linear rate of the limit to the Humbert Φ3 analogue";
    IntegralEuler: First, Euler, Both, "single Euler integral against the series";
    IntegralSimplex: First, Euler, Both, "Dirichlet integral over the triangle against the series";
    IntegralLaplace: First, Laplace, Both, "Laplace integrals in a, b1, b2 against the series";
    IntegralLaplaceCrosscheck: First, Laplace, Both, "Laplace integrals in t1 and t2 against each other";
    SecondReductionClassical: Second, Reduction, Both, "k = 0 gives the classical F1";
    SecondReductionLattice: Second, Reduction, Terminating, "k = 1 as a Kampé de Fériet series at (-x, -y)";
    SecondDifferenceEqX: Second, Algebraic, Terminating, "difference-differential equation in x";
    SecondDifferenceEqY: Second, Algebraic, Terminating, "difference-differential equation in y";
    SecondDifferentialEq: Second, Algebraic, Both, "first-order equation linking θ and φ";
    SecondOperatorLatticeShift: Second, Operator, Terminating, "weighted series against shifted evaluations for a lattice operator product";
    SecondOperatorTermwiseDerivative: Second, Operator, Both, "x times the termwise x-derivative against θF";
    SecondThetaPower: Second, Algebraic, Both, "falling power of θ as a parameter and lattice shift";
    SecondPhiPower: Second, Algebraic, Both, "falling power of φ as a parameter and lattice shift";
    SecondDerivativeB1: Second, Algebraic, Both, "r-fold x-derivative raising b1";
    SecondDerivativeB2: Second, Algebraic, Both, "r-fold y-derivative raising b2";
    SecondDerivativeAx: Second, Algebraic, Both, "r-fold x-derivative on (x, xy) raising a";
    SecondDerivativeAy: Second, Algebraic, Both, "r-fold y-derivative on (xy, y) raising a";
    SecondDerivativeCx: Second, Algebraic, Both, "r-fold x-derivative on (x, xy) lowering c";
    SecondDerivativeCy: Second, Algebraic, Both, "r-fold y-derivative on (xy, y) lowering c";
    SecondFiniteSumB1: Second, FiniteSum, Both, "F(b1 + r) as a finite sum of shifted functions";
    SecondFiniteSumB2: Second, FiniteSum, Both, "F(b2 + r) as a finite sum of shifted functions";
    SecondInfiniteSumA: Second, InfiniteSum, Both, "generating function in a";
    SecondInfiniteSumB1: Second, InfiniteSum, Both, "generating function in b1";
    SecondInfiniteSumB2: Second, InfiniteSum, Both, "generating function in b2";
    SecondRecursionAPlus: Second, Algebraic, Both, "F(a + s) through functions at a lowered t";
    SecondRecursionAMinus: Second, Algebraic, Both, "F(a - s) through functions at a lowered t";
    SecondRecursionB1Plus: Second, Algebraic, Both, "F(b1 + s) through functions at a lowered t";
    SecondRecursionB1Minus: Second, Algebraic, Both, "F(b1 - s) through functions at a lowered t";
    SecondRecursionB2Plus: Second, Algebraic, Both, "F(b2 + s) through functions at a lowered t";
    SecondRecursionB2Minus: Second, Algebraic, Both, "F(b2 - s) through functions at a lowered t";
    SecondRecursionCMinus: Second, Algebraic, Both, "F(c - s) through functions at a lowered t";
    SecondContiguousDifferential: Second, Algebraic, Both, "single-shift contiguous relations with θ, φ";
    SecondRecursionDifferential: Second, Algebraic, Both, "paired-shift relations with θ, φ";
    SecondContiguousDifference: Second, Algebraic, Terminating, "single-shift contiguous relations with Θ";
    SecondRecursionDifference: Second, Algebraic, Terminating, "paired-shift relations with Θ";
    SecondDegenerationPhi1: Second, Degeneration, Both, "linear rate of the limit to the Humbert Φ1 analogue";
    SecondDegenerationPhi2: Second, Degeneration, Both, "linear rate of the limit to the Humbert Φ2 analogue";
    SecondDegenerationPhi3: Second, Degeneration, Both, "linear rate of the limit to the Humbert Φ3 analogue";
    SecondIntegralEuler: Second, Euler, Both, "single Euler integral against the series";
    SecondIntegralSimplex: Second, Euler, Both, "Dirichlet integral over the triangle against the series";
    SecondIntegralLaplace: Second, Laplace, Both, "Laplace integrals in a, b1, b2 against the series";
}

impl IdentityFamily {
    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.id() == id)
    }

    pub fn supports(self, regime: Regime) -> bool {
        self.support() == Support::Both || regime == Regime::Terminating
    }

    /// Families drawn by default in `regime`.
    pub fn defaults(regime: Regime) -> Vec<IdentityFamily> {
        Self::ALL.iter().copied().filter(|f| f.supports(regime)).collect()
    }

    pub fn default_tolerance(self) -> f64 {
        self.kind().default_tolerance()
    }

    /// The relation table a catalogue family cycles through.
    pub fn catalogue(self) -> Option<Catalogue> {
        use IdentityFamily::*;
        Some(match self {
            ContiguousDifferential => Catalogue::ContiguousDifferential,
            RecursionDifferential => Catalogue::RecursionDifferential,
            ContiguousDifference => Catalogue::ContiguousDifference,
            RecursionDifference => Catalogue::RecursionDifference,
            SecondContiguousDifferential => Catalogue::SecondContiguousDifferential,
            SecondRecursionDifferential => Catalogue::SecondRecursionDifferential,
            SecondContiguousDifference => Catalogue::SecondContiguousDifference,
            SecondRecursionDifference => Catalogue::SecondRecursionDifference,
            _ => return None,
        })
    }

    /// Recursions whose right side lowers the lattice variable.
    pub fn is_recursion(self) -> bool {
        use IdentityFamily::*;
        matches!(
            self,
            RecursionAPlus
                | RecursionAMinus
                | RecursionB1Plus
                | RecursionB1Minus
                | RecursionB2Plus
                | RecursionB2Minus
                | RecursionCMinus
                | SecondRecursionAPlus
                | SecondRecursionAMinus
                | SecondRecursionB1Plus
                | SecondRecursionB1Minus
                | SecondRecursionB2Plus
                | SecondRecursionB2Minus
                | SecondRecursionCMinus
        )
    }
}

impl fmt::Display for IdentityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for IdentityFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_id(s).ok_or_else(|| format!("unknown identity family `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipReason {
    pub code: String,
    pub detail: String,
}

impl SkipReason {
    pub fn new(code: &str, detail: impl Into<String>) -> Self {
        Self { code: code.to_string(), detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Skipped(SkipReason),
}

/// One check at one draw. `lhs` and `rhs` are absent when the check was
/// skipped or errored; for degeneration families they hold the worst
/// observed error ratio and its target 2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub family: IdentityFamily,
    pub draw: Draw,
    pub lhs: Option<C64>,
    pub rhs: Option<C64>,
    pub rel_residual: Option<f64>,
    pub status: Status,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    pub series: SeriesOptions,
    pub quadrature: QuadratureOptions,
    /// Per-family overrides of [`IdentityFamily::default_tolerance`].
    pub tolerances: BTreeMap<IdentityFamily, f64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { series: SeriesOptions::default(), quadrature: QuadratureOptions::default(), tolerances: BTreeMap::new() }
    }
}

impl SuiteOptions {
    pub fn tolerance(&self, family: IdentityFamily) -> f64 {
        self.tolerances.get(&family).copied().unwrap_or_else(|| family.default_tolerance())
    }
}

/// `|l - r| / (|l| + |r| + 1)`.
pub fn relative_residual(lhs: C64, rhs: C64) -> f64 {
    (lhs - rhs).norm() / (lhs.norm() + rhs.norm() + 1.0)
}

/// Evaluates both sides of `family` at `draw` and grades the residual.
pub fn check_identity(family: IdentityFamily, draw: &Draw, opts: &SuiteOptions) -> Residual {
    let base = Residual {
        family,
        draw: *draw,
        lhs: None,
        rhs: None,
        rel_residual: None,
        status: Status::Fail,
        error: None,
    };
    if !family.supports(draw.regime) {
        let reason = SkipReason::new("regime", format!("{family} is not drawn in the {} regime", draw.regime));
        return Residual { status: Status::Skipped(reason), ..base };
    }
    if draw.params.form() != family.form() {
        let reason = SkipReason::new("precondition", format!("{family} needs the {:?} form", family.form()));
        return Residual { status: Status::Skipped(reason), ..base };
    }
    let tol = opts.tolerance(family);
    let graded = if family.kind() == FamilyKind::Degeneration {
        checks::degeneration_ratios(family, draw, &opts.series).map(|ratios| {
            let worst = ratios.into_iter().fold(2.0, |w: f64, q| if (q - 2.0).abs() > (w - 2.0).abs() { q } else { w });
            let residual = ratios.iter().map(|q| (q - 2.0).abs()).fold(0.0, f64::max);
            (C64::new(worst, 0.0), C64::new(2.0, 0.0), residual)
        })
    } else {
        checks::sides(family, draw, opts).map(|(l, r)| (l, r, relative_residual(l, r)))
    };
    match graded {
        Ok((l, r, res)) => {
            let status = if res <= tol { Status::Pass } else { Status::Fail };
            Residual { lhs: Some(l), rhs: Some(r), rel_residual: Some(res), status, ..base }
        }
        Err(Failure::Skip(reason)) => Residual { status: Status::Skipped(reason), ..base },
        Err(Failure::Error(e)) => Residual { error: Some(e.to_string()), ..base },
    }
}

/// Every residual of a suite, ordered by family then draw index.
pub fn run_residuals(policy: &DrawPolicy, families: &[IdentityFamily], opts: &SuiteOptions) -> Vec<Residual> {
    let jobs: Vec<(IdentityFamily, usize)> =
        families.iter().flat_map(|&f| (0..policy.count).map(move |i| (f, i))).collect();
    jobs.par_iter().map(|&(f, i)| check_identity(f, &draw(policy, f, i), opts)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub id: String,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub worst_residual: Option<f64>,
    /// Skip counts by reason code.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub skip_reasons: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// `<regime>:<count>`.
    pub suite: String,
    pub seed: u64,
    pub families: Vec<FamilySummary>,
    pub wall_ms: u64,
}

impl Report {
    /// No family failed. Skips do not count against a suite.
    pub fn is_success(&self) -> bool {
        self.families.iter().all(|f| f.fail == 0)
    }

    pub fn total(&self, pick: impl Fn(&FamilySummary) -> usize) -> usize {
        self.families.iter().map(pick).sum()
    }

    /// Equality up to timing.
    pub fn outcome_eq(&self, other: &Report) -> bool {
        self.suite == other.suite && self.seed == other.seed && self.families == other.families
    }
}

/// Groups residuals into one summary per family, in the order of `families`.
pub fn summarize(families: &[IdentityFamily], residuals: &[Residual]) -> Vec<FamilySummary> {
    families
        .iter()
        .map(|&f| {
            let mut s = FamilySummary {
                id: f.id().to_string(),
                pass: 0,
                fail: 0,
                skip: 0,
                worst_residual: None,
                skip_reasons: BTreeMap::new(),
            };
            for r in residuals.iter().filter(|r| r.family == f) {
                match &r.status {
                    Status::Pass => s.pass += 1,
                    Status::Fail => s.fail += 1,
                    Status::Skipped(reason) => {
                        s.skip += 1;
                        *s.skip_reasons.entry(reason.code.clone()).or_default() += 1;
                    }
                }
                if let Some(v) = r.rel_residual {
                    s.worst_residual = Some(s.worst_residual.map_or(v, |w: f64| w.max(v)));
                }
            }
            s
        })
        .collect()
}

pub fn run_suite(policy: &DrawPolicy, families: &[IdentityFamily], opts: &SuiteOptions) -> Report {
    let start = Instant::now();
    let residuals = run_residuals(policy, families, opts);
    Report {
        suite: format!("{}:{}", policy.regime, policy.count),
        seed: policy.seed,
        families: summarize(families, &residuals),
        wall_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_and_are_unique() {
        let mut seen = std::collections::HashSet::new();
        for &f in IdentityFamily::ALL {
            assert!(seen.insert(f.id()));
            assert_eq!(IdentityFamily::from_id(f.id()), Some(f));
            assert_eq!(f.id().parse::<IdentityFamily>(), Ok(f));
        }
        assert!(IdentityFamily::from_id("nope").is_none());
    }

    #[test]
    fn classical_defaults_exclude_terminating_only_families() {
        let classical = IdentityFamily::defaults(Regime::Classical);
        assert!(classical.contains(&IdentityFamily::ThetaPower));
        assert!(!classical.contains(&IdentityFamily::DifferenceEqX));
        assert_eq!(IdentityFamily::defaults(Regime::Terminating).len(), IdentityFamily::ALL.len());
    }

    #[test]
    fn regime_mismatch_is_skipped() {
        let policy = DrawPolicy::new(Regime::Classical, 1, 7);
        let d = draw(&policy, IdentityFamily::DifferenceEqX, 0);
        let r = check_identity(IdentityFamily::DifferenceEqX, &d, &SuiteOptions::default());
        assert!(matches!(r.status, Status::Skipped(ref s) if s.code == "regime"));
    }

    #[test]
    fn zero_depth_recursions_are_exact() {
        let policy = DrawPolicy::new(Regime::Terminating, 3, 11);
        let opts = SuiteOptions::default();
        for &f in IdentityFamily::ALL.iter().filter(|f| f.is_recursion()) {
            for i in 0..3 {
                let d = Draw { order: 0, ..draw(&policy, f, i) };
                let r = check_identity(f, &d, &opts);
                assert_eq!(r.status, Status::Pass, "{f} draw {i}");
                assert_eq!(r.lhs, r.rhs, "{f} draw {i}");
            }
        }
    }

    #[test]
    fn generating_functions_at_zero_are_exact() {
        let policy = DrawPolicy::new(Regime::Classical, 2, 5);
        let opts = SuiteOptions::default();
        for f in [IdentityFamily::InfiniteSumA, IdentityFamily::InfiniteSumB1, IdentityFamily::SecondInfiniteSumB2] {
            let d = Draw { z: C64::new(0.0, 0.0), ..draw(&policy, f, 0) };
            let r = check_identity(f, &d, &opts);
            assert_eq!(r.status, Status::Pass);
            assert!(r.rel_residual.unwrap() < 1e-15);
        }
    }

    #[test]
    fn empty_family_list_gives_empty_report() {
        let report = run_suite(&DrawPolicy::new(Regime::Terminating, 5, 1), &[], &SuiteOptions::default());
        assert!(report.families.is_empty());
        assert!(report.is_success());
        assert_eq!(report.suite, "terminating:5");
    }

    #[test]
    fn suites_are_deterministic() {
        let families = [IdentityFamily::ThetaPower, IdentityFamily::RecursionDifference, IdentityFamily::SecondFiniteSumB2];
        let policy = DrawPolicy::new(Regime::Terminating, 4, 99);
        let opts = SuiteOptions::default();
        let a = run_suite(&policy, &families, &opts);
        let b = run_suite(&policy, &families, &opts);
        assert!(a.outcome_eq(&b));
        assert_eq!(run_residuals(&policy, &families, &opts), run_residuals(&policy, &families, &opts));
    }

    #[test]
    fn tightening_tolerance_never_adds_passes() {
        let policy = DrawPolicy::new(Regime::Classical, 10, 3);
        let f = IdentityFamily::DerivativeCx;
        let loose = SuiteOptions { tolerances: BTreeMap::from([(f, 1e-6)]), ..SuiteOptions::default() };
        let tight = SuiteOptions { tolerances: BTreeMap::from([(f, 1e-14)]), ..SuiteOptions::default() };
        for i in 0..10 {
            let d = draw(&policy, f, i);
            let (l, t) = (check_identity(f, &d, &loose), check_identity(f, &d, &tight));
            if t.status == Status::Pass {
                assert_eq!(l.status, Status::Pass);
            }
        }
    }

    #[test]
    fn report_json_round_trips() {
        let families = [IdentityFamily::ReductionClassical, IdentityFamily::DifferenceEqY];
        let report = run_suite(&DrawPolicy::new(Regime::Classical, 3, 2), &families, &SuiteOptions::default());
        let text = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.families[1].skip, 3);
        assert_eq!(back.families[1].skip_reasons.get("regime"), Some(&3));
    }
}

//! `dappell`: evaluate discrete Appell functions, check integral
//! representations, tabulate values and run identity suites.
//!
//! Exit codes: 0 success, 1 evaluation error or failed check, 2 divergent
//! series, 64 bad invocation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dappell::functions::{
    eval_appell, eval_classical_f1, eval_humbert, eval_kdf, Appell1Params, Appell2Params, AppellParams, HumbertFamily,
};
use dappell::integral::{eval_integral, IntegralForm};
use dappell::series::Verdict;
use dappell::verify::{run_suite, DrawPolicy, FamilyKind, IdentityFamily, Regime, Report, SuiteOptions};
use dappell::{Appell, EvalResult, KdfSpec, QuadratureOptions, SeriesOptions, C64};

const EXIT_OK: u8 = 0;
const EXIT_FAILURE: u8 = 1;
const EXIT_DIVERGENT: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "dappell", version, about = "Discrete Appell F1 analogues: evaluation and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function at one point.
    Eval {
        #[arg(long = "fn", value_enum)]
        function: Function,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "plain")]
        output: Output,
    },
    /// Run identity checks over seeded random draws.
    Verify(VerifyArgs),
    /// Compare an integral representation with its reference value.
    IntegralCheck {
        /// Integral form, e.g. Euler1, EulerSimplex, LaplaceA, SecondLaplaceB2.
        #[arg(long, value_parser = parse_integral_form)]
        form: IntegralForm,
        #[command(flatten)]
        params: ParamArgs,
        /// Defaults to 1e-7 for Euler forms and 1e-6 for Laplace forms.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "plain")]
        output: Output,
    },
    /// CSV of values over a real grid of (x, y).
    Table {
        #[arg(long = "fn", value_enum)]
        function: Function,
        #[command(flatten)]
        params: ParamArgs,
        /// `lo,hi,n` for x.
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        grid_x: Grid,
        /// `lo,hi,n` for y.
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        grid_y: Grid,
    },
    /// List the identity families the verifier knows.
    ListIdentities {
        #[arg(long, value_enum, default_value = "plain")]
        output: Output,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "terminating")]
    regime: Regime,
    #[arg(long, default_value_t = 50)]
    count: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Comma-separated family ids; all families of the regime when absent.
    #[arg(long)]
    families: Option<String>,
    /// Tolerance override `ID=VALUE`, repeatable.
    #[arg(long = "tol")]
    tolerances: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Function {
    /// First discrete Appell form.
    F1d1,
    /// Second discrete Appell form.
    F1d2,
    Phi1D1,
    Phi2D1,
    Phi3D1,
    Phi1D2,
    Phi2D2,
    Phi3D2,
    /// Classical Appell F1.
    #[value(name = "f1")]
    ClassicalF1,
    /// Kampé de Fériet series from parameter lists.
    Kdf,
}

#[derive(Args, Debug, Default)]
struct ParamArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    a: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    b1: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    b2: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    c: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    t1: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    t2: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    t: Option<C64>,
    #[arg(long)]
    k1: Option<usize>,
    #[arg(long)]
    k2: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    x: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    y: Option<C64>,
    #[arg(long, value_parser = parse_complex_list, allow_hyphen_values = true)]
    upper_joint: Option<ComplexList>,
    #[arg(long, value_parser = parse_complex_list, allow_hyphen_values = true)]
    upper_x: Option<ComplexList>,
    #[arg(long, value_parser = parse_complex_list, allow_hyphen_values = true)]
    upper_y: Option<ComplexList>,
    #[arg(long, value_parser = parse_complex_list, allow_hyphen_values = true)]
    lower_joint: Option<ComplexList>,
    #[arg(long, value_parser = parse_complex_list, allow_hyphen_values = true)]
    lower_x: Option<ComplexList>,
    #[arg(long, value_parser = parse_complex_list, allow_hyphen_values = true)]
    lower_y: Option<ComplexList>,
}

#[derive(Clone, Debug, Default, PartialEq)]
struct ComplexList(Vec<C64>);

#[derive(Clone, Copy, Debug, PartialEq)]
struct Grid {
    lo: f64,
    hi: f64,
    n: usize,
}

impl Grid {
    fn points(self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n).map(|i| self.lo + step * i as f64).collect()
    }
}

/// Parses `re`, `re+imi`, `re-imi`, `imi` or `i`.
fn parse_complex(s: &str) -> Result<C64, String> {
    let s = s.trim();
    let bad = || format!("`{s}` is not a complex literal (expected `re` or `re+imi`)");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    // split before the last sign that is not an exponent sign or the leading one
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (&body[..j], &body[j..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(C64::new(re, im))
}

fn parse_complex_list(s: &str) -> Result<ComplexList, String> {
    if s.trim().is_empty() {
        return Ok(ComplexList::default());
    }
    s.split(',').map(parse_complex).collect::<Result<_, _>>().map(ComplexList)
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err(format!("`{s}` is not a grid (expected `lo,hi,n`)"));
    };
    let lo: f64 = lo.parse().map_err(|_| format!("bad grid start `{lo}`"))?;
    let hi: f64 = hi.parse().map_err(|_| format!("bad grid end `{hi}`"))?;
    let n: usize = n.parse().map_err(|_| format!("bad grid size `{n}`"))?;
    if n == 0 {
        return Err("grid size must be at least 1".into());
    }
    if lo.abs() >= 1.0 || hi.abs() >= 1.0 {
        return Err(format!("grid `{s}` leaves the unit disc"));
    }
    Ok(Grid { lo, hi, n })
}

fn parse_integral_form(s: &str) -> Result<IntegralForm, String> {
    IntegralForm::from_name(s).ok_or_else(|| {
        let names: Vec<String> = IntegralForm::ALL.iter().map(|f| f.name()).collect();
        format!("unknown integral form `{s}` (one of {})", names.join(", "))
    })
}

/// A failed invocation: exit code and message for stderr.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(key: &str, message: impl std::fmt::Display) -> Self {
        Self { code: EXIT_USAGE, message: format!("error: --{key}: {message}") }
    }

    fn runtime(message: impl std::fmt::Display) -> Self {
        Self { code: EXIT_FAILURE, message: format!("error: {message}") }
    }
}

impl From<dappell::Error> for Failure {
    fn from(e: dappell::Error) -> Self {
        Failure::runtime(e)
    }
}

type Run = Result<(u8, String), Failure>;

/// What a function evaluation needs, after key checking.
enum Target {
    Appell(Appell),
    Humbert(HumbertFamily, Appell),
    Classical([C64; 4], C64, C64),
    Kdf(KdfSpec, C64, C64),
}

impl Target {
    fn at(&self, x: C64, y: C64) -> Target {
        match self {
            Target::Appell(p) => Target::Appell(p.with_args(x, y)),
            Target::Humbert(f, p) => Target::Humbert(*f, p.with_args(x, y)),
            Target::Classical(ps, _, _) => Target::Classical(*ps, x, y),
            Target::Kdf(s, _, _) => Target::Kdf(s.clone(), x, y),
        }
    }

    fn eval(&self, so: &SeriesOptions) -> dappell::Result<EvalResult> {
        match self {
            Target::Appell(p) => eval_appell(p, so),
            Target::Humbert(f, p) => eval_humbert(*f, p, so),
            Target::Classical([a, b1, b2, c], x, y) => eval_classical_f1(*a, *b1, *b2, *c, *x, *y, so),
            Target::Kdf(s, x, y) => Ok(eval_kdf(s, *x, *y, so)?.result),
        }
    }
}

const FIRST_KEYS: [&str; 10] = ["a", "b1", "b2", "c", "t1", "t2", "k1", "k2", "x", "y"];
const SECOND_KEYS: [&str; 8] = ["a", "b1", "b2", "c", "t", "k", "x", "y"];
const KDF_LISTS: [&str; 6] = ["upper-joint", "upper-x", "upper-y", "lower-joint", "lower-x", "lower-y"];

impl ParamArgs {
    fn given(&self) -> BTreeSet<&'static str> {
        let flags = [
            ("a", self.a.is_some()),
            ("b1", self.b1.is_some()),
            ("b2", self.b2.is_some()),
            ("c", self.c.is_some()),
            ("t1", self.t1.is_some()),
            ("t2", self.t2.is_some()),
            ("t", self.t.is_some()),
            ("k1", self.k1.is_some()),
            ("k2", self.k2.is_some()),
            ("k", self.k.is_some()),
            ("x", self.x.is_some()),
            ("y", self.y.is_some()),
            ("upper-joint", self.upper_joint.is_some()),
            ("upper-x", self.upper_x.is_some()),
            ("upper-y", self.upper_y.is_some()),
            ("lower-joint", self.lower_joint.is_some()),
            ("lower-x", self.lower_x.is_some()),
            ("lower-y", self.lower_y.is_some()),
        ];
        flags.into_iter().filter(|&(_, on)| on).map(|(k, _)| k).collect()
    }

    /// Rejects keys outside `required ∪ optional` and reports the first
    /// missing required key.
    fn check(&self, what: &str, required: &[&str], optional: &[&str]) -> Result<(), Failure> {
        for key in self.given() {
            if !required.contains(&key) && !optional.contains(&key) {
                return Err(Failure::usage(key, format!("not a parameter of {what}")));
            }
        }
        let given = self.given();
        if let Some(missing) = required.iter().find(|k| !given.contains(*k)) {
            return Err(Failure::usage(missing, format!("required by {what}")));
        }
        Ok(())
    }

    fn zero_or(v: Option<C64>) -> C64 {
        v.unwrap_or(C64::new(0.0, 0.0))
    }

    fn first(&self) -> Appell {
        let z = Self::zero_or;
        AppellParams::First(Appell1Params {
            a: z(self.a),
            b1: z(self.b1),
            b2: z(self.b2),
            c: z(self.c),
            t1: z(self.t1),
            t2: z(self.t2),
            k1: self.k1.unwrap_or(0),
            k2: self.k2.unwrap_or(0),
            x: z(self.x),
            y: z(self.y),
        })
    }

    fn second(&self) -> Appell {
        let z = Self::zero_or;
        AppellParams::Second(Appell2Params {
            a: z(self.a),
            b1: z(self.b1),
            b2: z(self.b2),
            c: z(self.c),
            t: z(self.t),
            k: self.k.unwrap_or(0),
            x: z(self.x),
            y: z(self.y),
        })
    }

    /// Parameters for `function`; `with_point` says whether `x` and `y`
    /// come from the flags.
    fn target(&self, function: Function, with_point: bool) -> Result<Target, Failure> {
        use Function::*;
        let name = function.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        let keep = |keys: &[&'static str], drop: &[&str]| -> Vec<&'static str> {
            keys.iter().copied().filter(|k| !drop.contains(k) && (with_point || !matches!(*k, "x" | "y"))).collect()
        };
        let humbert = |f: Function| match f {
            Phi1D1 | Phi1D2 => (HumbertFamily::Phi1, &["b2"][..]),
            Phi2D1 | Phi2D2 => (HumbertFamily::Phi2, &["a"][..]),
            _ => (HumbertFamily::Phi3, &["a", "b2"][..]),
        };
        Ok(match function {
            F1d1 => {
                self.check(&name, &keep(&FIRST_KEYS, &[]), &[])?;
                Target::Appell(self.first())
            }
            F1d2 => {
                self.check(&name, &keep(&SECOND_KEYS, &[]), &[])?;
                Target::Appell(self.second())
            }
            Phi1D1 | Phi2D1 | Phi3D1 => {
                let (family, dropped) = humbert(function);
                self.check(&name, &keep(&FIRST_KEYS, dropped), &[])?;
                Target::Humbert(family, self.first())
            }
            Phi1D2 | Phi2D2 | Phi3D2 => {
                let (family, dropped) = humbert(function);
                self.check(&name, &keep(&SECOND_KEYS, dropped), &[])?;
                Target::Humbert(family, self.second())
            }
            ClassicalF1 => {
                self.check(&name, &keep(&["a", "b1", "b2", "c", "x", "y"], &[]), &[])?;
                let z = Self::zero_or;
                Target::Classical([z(self.a), z(self.b1), z(self.b2), z(self.c)], z(self.x), z(self.y))
            }
            Kdf => {
                self.check(&name, &keep(&["x", "y"], &[]), &KDF_LISTS)?;
                let list = |l: &Option<ComplexList>| l.clone().unwrap_or_default().0;
                let spec = KdfSpec {
                    upper_joint: list(&self.upper_joint),
                    upper_x: list(&self.upper_x),
                    upper_y: list(&self.upper_y),
                    lower_joint: list(&self.lower_joint),
                    lower_x: list(&self.lower_x),
                    lower_y: list(&self.lower_y),
                };
                Target::Kdf(spec, Self::zero_or(self.x), Self::zero_or(self.y))
            }
        })
    }
}

#[derive(Serialize)]
struct ComplexOut {
    re: f64,
    im: f64,
}

impl From<C64> for ComplexOut {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct EvalOut {
    value: ComplexOut,
    verdict: Verdict,
    terms_summed: usize,
    tail_estimate: f64,
}

fn format_real(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// Same shape as the accepted input literals.
fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format_real(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", format_real(z.re), format_real(-z.im))
    } else {
        format!("{}+{}i", format_real(z.re), format_real(z.im))
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Converged | Verdict::Terminated => EXIT_OK,
        Verdict::DivergenceSuspected => EXIT_DIVERGENT,
        Verdict::MaxTermsReached => EXIT_FAILURE,
    }
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Converged => "converged",
        Verdict::Terminated => "terminated",
        Verdict::DivergenceSuspected => "divergent",
        Verdict::MaxTermsReached => "max-terms",
    }
}

fn cmd_eval(function: Function, params: &ParamArgs, output: Output) -> Run {
    let target = params.target(function, true)?;
    let r = target.eval(&SeriesOptions::default())?;
    let text = match output {
        Output::Plain => format!(
            "value          {}\nverdict        {:?}\nterms_summed   {}\ntail_estimate  {:e}\n",
            format_complex(r.value),
            r.verdict,
            r.terms_summed,
            r.tail_estimate
        ),
        Output::Json => {
            let out = EvalOut { value: r.value.into(), verdict: r.verdict, terms_summed: r.terms_summed, tail_estimate: r.tail_estimate };
            serde_json::to_string_pretty(&out).expect("plain data serializes") + "\n"
        }
        Output::Csv => {
            let (x, y) = match &target {
                Target::Appell(p) | Target::Humbert(_, p) => (p.x(), p.y()),
                Target::Classical(_, x, y) | Target::Kdf(_, x, y) => (*x, *y),
            };
            format!("x,y,re,im,verdict\n{},{},{},{},{}\n", format_complex(x), format_complex(y), r.value.re, r.value.im, verdict_label(r.verdict))
        }
    };
    Ok((verdict_code(r.verdict), text))
}

fn cmd_table(function: Function, params: &ParamArgs, gx: Grid, gy: Grid) -> Run {
    let target = params.target(function, false)?;
    let so = SeriesOptions::default();
    let mut text = String::from("x,y,re,im,verdict\n");
    let mut code = EXIT_OK;
    for x in gx.points() {
        for y in gy.points() {
            match target.at(C64::new(x, 0.0), C64::new(y, 0.0)).eval(&so) {
                Ok(r) if r.verdict.is_quantitative() => {
                    let _ = writeln!(text, "{x},{y},{},{},{}", r.value.re, r.value.im, verdict_label(r.verdict));
                }
                Ok(r) => {
                    let _ = writeln!(text, "{x},{y},,,{}", verdict_label(r.verdict));
                }
                Err(e) => {
                    eprintln!("cell ({x}, {y}): {e}");
                    code = EXIT_FAILURE;
                    let _ = writeln!(text, "{x},{y},,,error");
                }
            }
        }
    }
    Ok((code, text))
}

#[derive(Serialize)]
struct IntegralOut {
    form: String,
    reference: String,
    integral: ComplexOut,
    expected: ComplexOut,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

fn cmd_integral_check(form: IntegralForm, params: &ParamArgs, tol: Option<f64>, output: Output) -> Run {
    let name = form.name();
    let p = match form.form() {
        dappell::functions::Form::First => {
            params.check(&name, &FIRST_KEYS, &[])?;
            params.first()
        }
        dappell::functions::Form::Second => {
            params.check(&name, &SECOND_KEYS, &[])?;
            params.second()
        }
    };
    let q = QuadratureOptions::default();
    let integral = eval_integral(form, &p, &q)?.value;
    let (reference, expected) = match form {
        IntegralForm::LaplaceT1 => ("LaplaceT2".to_string(), eval_integral(IntegralForm::LaplaceT2, &p, &q)?.value),
        IntegralForm::LaplaceT2 => ("LaplaceT1".to_string(), eval_integral(IntegralForm::LaplaceT1, &p, &q)?.value),
        _ => {
            let r = eval_appell(&p, &SeriesOptions::default())?;
            if !r.verdict.is_quantitative() {
                return Err(Failure {
                    code: verdict_code(r.verdict),
                    message: format!("error: the series reference is not usable (verdict {:?})", r.verdict),
                });
            }
            ("series".to_string(), r.value)
        }
    };
    let default_tol = match form {
        IntegralForm::Euler1 | IntegralForm::EulerSimplex | IntegralForm::SecondEuler1 | IntegralForm::SecondEulerSimplex => {
            FamilyKind::Euler.default_tolerance()
        }
        _ => FamilyKind::Laplace.default_tolerance(),
    };
    let tolerance = tol.unwrap_or(default_tol);
    let residual = dappell::verify::relative_residual(integral, expected);
    let pass = residual <= tolerance;
    let out = IntegralOut { form: name, reference, integral: integral.into(), expected: expected.into(), residual, tolerance, pass };
    let text = match output {
        Output::Json => serde_json::to_string_pretty(&out).expect("plain data serializes") + "\n",
        Output::Plain | Output::Csv => format!(
            "form       {}\nintegral   {}\n{:<10} {}\nresidual   {:e}\ntolerance  {:e}\n{}\n",
            out.form,
            format_complex(integral),
            out.reference,
            format_complex(expected),
            residual,
            tolerance,
            if pass { "pass" } else { "FAIL" }
        ),
    };
    Ok((if pass { EXIT_OK } else { EXIT_FAILURE }, text))
}

fn parse_families(list: &str) -> Result<Vec<IdentityFamily>, Failure> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<IdentityFamily>().map_err(|e| Failure::usage("families", e)))
        .collect()
}

fn parse_tolerances(items: &[String]) -> Result<BTreeMap<IdentityFamily, f64>, Failure> {
    items
        .iter()
        .map(|item| {
            let (id, value) = item.split_once('=').ok_or_else(|| Failure::usage("tol", format!("`{item}` is not ID=VALUE")))?;
            let family = id.trim().parse::<IdentityFamily>().map_err(|e| Failure::usage("tol", e))?;
            let v: f64 = value.trim().parse().map_err(|_| Failure::usage("tol", format!("`{value}` is not a number")))?;
            if !(v > 0.0) {
                return Err(Failure::usage("tol", "tolerances must be positive"));
            }
            Ok((family, v))
        })
        .collect()
}

fn render_report(report: &Report, output: Output) -> String {
    match output {
        Output::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Output::Csv => {
            let mut s = String::from("id,pass,fail,skip,worst_residual\n");
            for f in &report.families {
                let worst = f.worst_residual.map(|w| format!("{w:e}")).unwrap_or_default();
                let _ = writeln!(s, "{},{},{},{},{}", f.id, f.pass, f.fail, f.skip, worst);
            }
            s
        }
        Output::Plain => {
            let mut s = format!("suite {} seed {} ({} ms)\n", report.suite, report.seed, report.wall_ms);
            for f in &report.families {
                let worst = f.worst_residual.map(|w| format!("{w:.2e}")).unwrap_or_else(|| "-".into());
                let mark = if f.fail > 0 { "FAIL" } else { "ok" };
                let _ = writeln!(s, "{:<34} {:>4} pass {:>4} fail {:>4} skip  worst {:<9} {}", f.id, f.pass, f.fail, f.skip, worst, mark);
            }
            let _ = writeln!(s, "total: {} pass, {} fail, {} skip", report.total(|f| f.pass), report.total(|f| f.fail), report.total(|f| f.skip));
            s
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Run {
    let families = match &args.families {
        Some(list) => parse_families(list)?,
        None => IdentityFamily::defaults(args.regime),
    };
    let opts = SuiteOptions { tolerances: parse_tolerances(&args.tolerances)?, ..SuiteOptions::default() };
    let policy = DrawPolicy::new(args.regime, args.count, args.seed);
    let report = run_suite(&policy, &families, &opts);
    let code = if report.is_success() { EXIT_OK } else { EXIT_FAILURE };
    Ok((code, render_report(&report, args.output)))
}

#[derive(Serialize)]
struct IdentityOut {
    id: &'static str,
    form: String,
    kind: FamilyKind,
    tolerance: f64,
    regimes: Vec<String>,
    description: &'static str,
}

fn cmd_list(output: Output) -> Run {
    let rows: Vec<IdentityOut> = IdentityFamily::ALL
        .iter()
        .map(|&f| IdentityOut {
            id: f.id(),
            form: format!("{:?}", f.form()).to_lowercase(),
            kind: f.kind(),
            tolerance: f.default_tolerance(),
            regimes: [Regime::Classical, Regime::Terminating].into_iter().filter(|&r| f.supports(r)).map(|r| r.to_string()).collect(),
            description: f.description(),
        })
        .collect();
    let text = match output {
        Output::Json => serde_json::to_string_pretty(&rows).expect("plain data serializes") + "\n",
        Output::Csv => {
            let mut s = String::from("id,form,kind,tolerance,regimes\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{:?},{:e},{}", r.id, r.form, r.kind, r.tolerance, r.regimes.join(" "));
            }
            s
        }
        Output::Plain => {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(s, "{:<34} {:<6} {:<8.0e} {:<22} {}", r.id, r.form, r.tolerance, r.regimes.join(","), r.description);
            }
            s
        }
    };
    Ok((EXIT_OK, text))
}

fn run(cli: Cli) -> Run {
    match cli.command {
        Command::Eval { function, params, output } => cmd_eval(function, &params, output),
        Command::Verify(args) => cmd_verify(&args),
        Command::IntegralCheck { form, params, tol, output } => cmd_integral_check(form, &params, tol, output),
        Command::Table { function, params, grid_x, grid_y } => cmd_table(function, &params, grid_x, grid_y),
        Command::ListIdentities { output } => cmd_list(output),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((code, text)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.5"), Ok(C64::new(1.5, 0.0)));
        assert_eq!(parse_complex("-2"), Ok(C64::new(-2.0, 0.0)));
        assert_eq!(parse_complex("1+2i"), Ok(C64::new(1.0, 2.0)));
        assert_eq!(parse_complex("0.5-0.25i"), Ok(C64::new(0.5, -0.25)));
        assert_eq!(parse_complex("-1e-3+2e+1i"), Ok(C64::new(-1e-3, 20.0)));
        assert_eq!(parse_complex("3i"), Ok(C64::new(0.0, 3.0)));
        assert_eq!(parse_complex("-i"), Ok(C64::new(0.0, -1.0)));
        assert_eq!(parse_complex("2-i"), Ok(C64::new(2.0, -1.0)));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+2j").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0,0,1").unwrap().points(), vec![0.0]);
        assert_eq!(parse_grid("-0.5,0.5,3").unwrap().points(), vec![-0.5, 0.0, 0.5]);
        assert!(parse_grid("0,1,3").is_err());
        assert!(parse_grid("0,0.5").is_err());
        assert!(parse_grid("0,0.5,0").is_err());
    }

    #[test]
    fn family_lists() {
        assert!(parse_families("").unwrap().is_empty());
        assert_eq!(parse_families(" ThetaPower , PhiPower").unwrap(), vec![IdentityFamily::ThetaPower, IdentityFamily::PhiPower]);
        assert!(parse_families("ThetaPower,Nope").is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let t = parse_tolerances(&["ThetaPower=1e-3".into()]).unwrap();
        assert_eq!(t.get(&IdentityFamily::ThetaPower), Some(&1e-3));
        assert!(parse_tolerances(&["ThetaPower".into()]).is_err());
        assert!(parse_tolerances(&["ThetaPower=-1".into()]).is_err());
    }
}

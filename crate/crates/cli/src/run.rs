//! Mode dispatch.

use serde::Serialize;

use qcyl_core::axioms::{self, LawReport};
use qcyl_core::jacobi::{boundary_sites, sector_jacobi_with_sign, solve_on_window};
use qcyl_core::literal::{
    derivation_from_literal, derivation_to_literal, hilbert_from_entries, hilbert_to_entries,
    trig_to_literal, EntryLiteral, SequenceLiteral, TermLiteral, TrigLiteral,
};
use qcyl_core::rp::sector_vector;
use qcyl_core::{
    apply_derivation, covariant_rp, decompose_derivation, dense_oracle, derivation_symbol,
    generators, invariant_rp, is_approximately_inner, solve_sector, theta_compatibility,
    CertifyConfig, Error, HilbertElement, ImplementationKind, ImplementationSpec,
    IncrementSequence, Sign, Verdict,
};

use crate::report::{opt, render, ExitStatus, Num, Report, SCHEMA_VERSION};
use crate::scenario::{KindLiteral, Mode, Overrides, Scenario};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_CASES: usize = 100;
pub const ORACLE_TOL: f64 = 1e-8;
pub const INVARIANT_TOL: f64 = 1e-12;

/// Why a scenario produced no report.
#[derive(Debug)]
pub enum Failure {
    /// Bad input; exit code 4.
    Invalid(String),
    /// The computation could not finish; exit code 3.
    Computation(String),
}

impl Failure {
    pub fn exit(&self) -> ExitStatus {
        match self {
            Failure::Invalid(_) => ExitStatus::InvalidInput,
            Failure::Computation(_) => ExitStatus::Inconclusive,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Computation(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::WindowExhausted { .. }
            | Error::NotPositiveDefinite { .. }
            | Error::ResidualGrowth { .. }
            | Error::ExtendedProduct => Failure::Computation(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Invalid(msg.into()))
}

fn status_of(v: Verdict) -> ExitStatus {
    match v {
        Verdict::Verified => ExitStatus::Verified,
        Verdict::Violation => ExitStatus::Violation,
        Verdict::Inconclusive => ExitStatus::Inconclusive,
    }
}

pub fn run_scenario(mode: Mode, s: &Scenario, o: &Overrides) -> Result<Report, Failure> {
    if let Some(m) = s.mode {
        if m != mode {
            return invalid(format!("scenario is for mode {m}, not {mode}"));
        }
    }
    if let Some(t) = o.tol.or(s.tol) {
        if !(t > 0.0) || !t.is_finite() {
            return invalid(format!("tolerance must be positive, got {t}"));
        }
    }
    if let Some(w) = o.max_window.or(s.max_window) {
        if w < 1 {
            return invalid(format!("max window must be at least 1, got {w}"));
        }
    }
    match mode {
        Mode::Axioms => axioms_mode(s, o),
        Mode::Classify => classify_mode(s),
        Mode::RpInvariant => invariant_mode(s),
        Mode::RpCovariant => covariant_mode(s, o),
        Mode::OracleCompare => oracle_mode(s, o),
    }
}

#[derive(Serialize)]
struct Suite {
    suite: &'static str,
    seed: u64,
    laws: Vec<LawReport>,
}

#[derive(Serialize)]
struct AxiomsReport<'a> {
    schema_version: u32,
    mode: &'static str,
    description: Option<&'a str>,
    generator: &'static str,
    seed: u64,
    cases: usize,
    suites: Vec<Suite>,
    verdict: &'static str,
}

fn axioms_mode(s: &Scenario, o: &Overrides) -> Result<Report, Failure> {
    let seed = o.seed.or(s.seed).unwrap_or(DEFAULT_SEED);
    let cases = s.cases.unwrap_or(DEFAULT_CASES);
    if cases == 0 {
        return invalid("cases must be positive");
    }
    let suites = vec![
        Suite { suite: "algebra", seed, laws: axioms::algebra_suite(seed, cases) },
        Suite { suite: "derivation", seed: seed + 1, laws: axioms::derivation_suite(seed + 1, cases) },
        Suite {
            suite: "implementation",
            seed: seed + 2,
            laws: axioms::implementation_suite(seed + 2, cases),
        },
        Suite {
            suite: "classification",
            seed: seed + 3,
            laws: axioms::classification_suite(seed + 3, cases),
        },
    ];
    let ok = suites.iter().all(|s| axioms::all_passed(&s.laws));
    let exit = if ok { ExitStatus::Verified } else { ExitStatus::Violation };
    let rows = suites
        .iter()
        .flat_map(|s| {
            s.laws.iter().map(move |l| {
                vec![s.suite.to_string(), l.law.to_string(), l.cases.to_string(), l.failures.to_string()]
            })
        })
        .collect();
    let doc = AxiomsReport {
        schema_version: SCHEMA_VERSION,
        mode: Mode::Axioms.name(),
        description: s.description.as_deref(),
        generator: "chacha8",
        seed,
        cases,
        suites,
        verdict: exit.verdict(),
    };
    Ok(Report {
        json: render(&doc),
        csv_header: vec!["suite", "law", "cases", "failures"],
        csv_rows: rows,
        exit,
    })
}

#[derive(Serialize)]
struct SymbolOut {
    plus: TrigLiteral,
    minus: TrigLiteral,
}

#[derive(Serialize)]
struct Decomposition {
    inner: Vec<TermLiteral>,
    lifted: Vec<TermLiteral>,
}

#[derive(Serialize)]
struct CompatibilityOut {
    kind: &'static str,
    invariant: bool,
    mu: Option<i64>,
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    schema_version: u32,
    mode: &'static str,
    description: Option<&'a str>,
    derivation: Option<Vec<TermLiteral>>,
    symbol_plus: Option<TrigLiteral>,
    symbol_minus: Option<TrigLiteral>,
    approximately_inner: Option<bool>,
    slope_criterion: Option<bool>,
    decomposition: Option<Decomposition>,
    symbol_of_image_of_u: Option<SymbolOut>,
    lifted_part_reproduces_image_of_u: Option<bool>,
    theta_compatibility: Option<CompatibilityOut>,
    verdict: &'static str,
}

fn classify_mode(s: &Scenario) -> Result<Report, Failure> {
    let mut doc = ClassifyReport {
        schema_version: SCHEMA_VERSION,
        mode: Mode::Classify.name(),
        description: s.description.as_deref(),
        derivation: None,
        symbol_plus: None,
        symbol_minus: None,
        approximately_inner: None,
        slope_criterion: None,
        decomposition: None,
        symbol_of_image_of_u: None,
        lifted_part_reproduces_image_of_u: None,
        theta_compatibility: None,
        verdict: "",
    };
    let mut rows = Vec::new();
    let mut consistent = true;
    if let Some(terms) = &s.derivation {
        let d = derivation_from_literal(terms)?;
        let sym = derivation_symbol(&d);
        let (inner, lifted) = decompose_derivation(&d);
        let u = generators::u();
        let du = apply_derivation(&d, &u)?;
        let lu = apply_derivation(&lifted, &u)?;
        let reproduces = du.symbol() == lu.symbol();
        let inner_flag = is_approximately_inner(&d);
        let slopes = axioms::slope_criterion(&d);
        consistent &= reproduces && inner_flag == slopes;
        for (side, p) in [("plus", &sym.plus), ("minus", &sym.minus)] {
            for (n, c) in p.coefficients() {
                let z = c.to_complex64();
                rows.push(vec![side.to_string(), n.to_string(), c.to_string(), Num(z.re).text(), Num(z.im).text()]);
            }
        }
        doc.derivation = Some(derivation_to_literal(&d));
        doc.symbol_plus = Some(trig_to_literal(&sym.plus));
        doc.symbol_minus = Some(trig_to_literal(&sym.minus));
        doc.approximately_inner = Some(inner_flag);
        doc.slope_criterion = Some(slopes);
        doc.decomposition = Some(Decomposition {
            inner: derivation_to_literal(&inner),
            lifted: derivation_to_literal(&lifted),
        });
        let image = du.symbol();
        doc.symbol_of_image_of_u = Some(SymbolOut {
            plus: trig_to_literal(&image.plus),
            minus: trig_to_literal(&image.minus),
        });
        doc.lifted_part_reproduces_image_of_u = Some(reproduces);
    }
    if let Some(kind) = s.kind {
        let (Some(beta), Some(alpha)) = (&s.beta, &s.alpha) else {
            return invalid("an implementation needs both beta and alpha");
        };
        let kind = match kind {
            KindLiteral::Invariant => ImplementationKind::Invariant,
            KindLiteral::Covariant => ImplementationKind::Covariant,
        };
        let spec = ImplementationSpec::new(kind, beta.to_increment()?, alpha.to_increment()?);
        let c = theta_compatibility(&spec);
        doc.theta_compatibility = Some(CompatibilityOut {
            kind: match kind {
                ImplementationKind::Invariant => "invariant",
                ImplementationKind::Covariant => "covariant",
            },
            invariant: c.invariant,
            mu: c.mu.map(Sign::as_i64),
        });
    }
    if doc.derivation.is_none() && doc.theta_compatibility.is_none() {
        return invalid("classify needs a derivation or an implementation (kind, beta, alpha)");
    }
    let exit = if consistent { ExitStatus::Verified } else { ExitStatus::Violation };
    doc.verdict = exit.verdict();
    Ok(Report {
        json: render(&doc),
        csv_header: vec!["component", "frequency", "coefficient", "re", "im"],
        csv_rows: rows,
        exit,
    })
}

fn require_beta(s: &Scenario) -> Result<IncrementSequence, Failure> {
    match &s.beta {
        Some(b) => Ok(b.to_increment()?),
        None => invalid("beta is required"),
    }
}

fn require_f(s: &Scenario) -> Result<HilbertElement, Failure> {
    Ok(hilbert_from_entries(&s.f)?)
}

#[derive(Serialize)]
struct InvariantReport<'a> {
    schema_version: u32,
    mode: &'static str,
    description: Option<&'a str>,
    beta: SequenceLiteral,
    f: Vec<EntryLiteral>,
    direct: String,
    direct_value: Num,
    boundary: String,
    boundary_value: Num,
    exact: bool,
    identity_holds: bool,
    nonnegative: bool,
    tolerance: Num,
    verdict: &'static str,
}

fn invariant_mode(s: &Scenario) -> Result<Report, Failure> {
    let beta = require_beta(s)?;
    let f = require_f(s)?;
    let r = invariant_rp(&beta, &f)?;
    let exact = r.direct.is_exact() && r.boundary.is_exact();
    let diff = (&r.direct - &r.boundary).to_complex64().norm();
    let identity = if exact { r.direct == r.boundary } else { diff <= INVARIANT_TOL };
    let d = r.direct.to_complex64();
    let b = r.boundary.to_complex64();
    let nonnegative = if exact {
        r.direct.is_zero() || r.direct.is_positive_real()
    } else {
        d.re >= -INVARIANT_TOL && d.im.abs() <= INVARIANT_TOL
    };
    let exit = if identity && nonnegative { ExitStatus::Verified } else { ExitStatus::Violation };
    let doc = InvariantReport {
        schema_version: SCHEMA_VERSION,
        mode: Mode::RpInvariant.name(),
        description: s.description.as_deref(),
        beta: SequenceLiteral::from_increment(&beta),
        f: hilbert_to_entries(&f),
        direct: r.direct.to_string(),
        direct_value: Num(d.re),
        boundary: r.boundary.to_string(),
        boundary_value: Num(b.re),
        exact,
        identity_holds: identity,
        nonnegative,
        tolerance: Num(INVARIANT_TOL),
        verdict: exit.verdict(),
    };
    Ok(Report {
        json: render(&doc),
        csv_header: vec!["direct", "boundary"],
        csv_rows: vec![vec![Num(d.re).text(), Num(b.re).text()]],
        exit,
    })
}

fn covariant_sign(s: &Scenario, beta: &IncrementSequence) -> Result<Sign, Failure> {
    if let Some(alpha) = &s.alpha {
        let spec = ImplementationSpec::new(ImplementationKind::Covariant, beta.clone(), alpha.to_increment()?);
        let Some(mu) = spec.mu else {
            return invalid("alpha is not of the form alpha(k) = +-beta(-k-1)");
        };
        if let Some(m) = s.mu {
            if m != mu.as_i64() {
                return invalid(format!("mu = {m} contradicts alpha (branch {})", mu.as_i64()));
            }
        }
        return Ok(mu);
    }
    match s.mu {
        None => Ok(Sign::Plus),
        Some(m) => Sign::from_i64(m).ok_or_else(|| Failure::Invalid(format!("mu must be 1 or -1, got {m}"))),
    }
}

fn require_m2(s: &Scenario) -> Result<f64, Failure> {
    match s.m2 {
        Some(m) if m > 0.0 && m.is_finite() => Ok(m),
        Some(m) => invalid(format!("m2 must be positive, got {m}")),
        None => invalid("m2 is required"),
    }
}

fn config(s: &Scenario, o: &Overrides, mu: Sign) -> CertifyConfig {
    let base = CertifyConfig::default();
    let mut policy = base.policy;
    if let Some(w) = o.max_window.or(s.max_window) {
        policy.max_half_width = w;
    }
    if let Some(m) = s.initial_margin {
        policy.initial_margin = m.max(1);
    }
    CertifyConfig {
        solver_tol: o.tol.or(s.tol).unwrap_or(base.solver_tol),
        policy,
        mu,
        ..base
    }
}

#[derive(Serialize)]
struct ConfigOut {
    solver_tol: Num,
    identity_tol: Num,
    nonneg_tol: Num,
    reality_tol: Num,
    initial_margin: i64,
    max_half_width: i64,
}

impl From<&CertifyConfig> for ConfigOut {
    fn from(c: &CertifyConfig) -> Self {
        ConfigOut {
            solver_tol: Num(c.solver_tol),
            identity_tol: Num(c.identity_tol),
            nonneg_tol: Num(c.nonneg_tol),
            reality_tol: Num(c.reality_tol),
            initial_margin: c.policy.initial_margin,
            max_half_width: c.policy.max_half_width,
        }
    }
}

#[derive(Serialize)]
struct SectorOut {
    n: i64,
    status: Verdict,
    direct: Option<Num>,
    direct_imag: Option<Num>,
    restricted_direct: Option<Num>,
    boundary: Option<Num>,
    sigma1: Option<Num>,
    sigma2: Option<Num>,
    boundary_closed_forms: ClosedForms,
    cross_term_imag: Option<Num>,
    identity_error: Option<Num>,
    closed_form_error: Option<Num>,
    oracle_deviation: Option<Num>,
    stability_deviation: Option<Num>,
    window: (i64, i64),
    residual: Option<Num>,
    min_pivot: Option<Num>,
    note: Option<String>,
}

#[derive(Serialize)]
struct ClosedForms {
    sigma1: Option<Num>,
    sigma2: Option<Num>,
}

fn finite(v: f64) -> Option<Num> {
    v.is_finite().then_some(Num(v))
}

#[derive(Serialize)]
struct GlobalOut {
    nonnegative: bool,
    identities_hold: bool,
    tolerance: Num,
}

#[derive(Serialize)]
struct CovariantReport<'a> {
    schema_version: u32,
    mode: &'static str,
    description: Option<&'a str>,
    beta: SequenceLiteral,
    mu: i64,
    m2: Num,
    f: Vec<EntryLiteral>,
    config: ConfigOut,
    sectors: Vec<SectorOut>,
    total: Num,
    global: GlobalOut,
    verdict: &'static str,
}

fn covariant_mode(s: &Scenario, o: &Overrides) -> Result<Report, Failure> {
    let beta = require_beta(s)?;
    let m2 = require_m2(s)?;
    let f = require_f(s)?;
    let mu = covariant_sign(s, &beta)?;
    let cfg = config(s, o, mu);
    let cert = covariant_rp(&beta, m2, &f, &cfg)?;
    let exit = status_of(cert.verdict.verdict);
    let rows = cert
        .sectors
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                Num(r.direct_value).text(),
                r.boundary_value.map(|v| Num(v).text()).unwrap_or_default(),
                r.sigma1.map(|v| Num(v).text()).unwrap_or_default(),
                r.sigma2.map(|v| Num(v).text()).unwrap_or_default(),
            ]
        })
        .collect();
    let sectors = cert
        .sectors
        .iter()
        .map(|r| SectorOut {
            n: r.n,
            status: r.status,
            direct: finite(r.direct_value),
            direct_imag: finite(r.direct_imag),
            restricted_direct: finite(r.restricted_value),
            boundary: opt(r.boundary_value),
            sigma1: opt(r.sigma1),
            sigma2: opt(r.sigma2),
            boundary_closed_forms: ClosedForms { sigma1: opt(r.closed1), sigma2: opt(r.closed2) },
            cross_term_imag: opt(r.cross_term_imag),
            identity_error: opt(r.identity_error),
            closed_form_error: opt(r.closed_form_error),
            oracle_deviation: opt(r.oracle_deviation),
            stability_deviation: opt(r.stability_deviation),
            window: r.window,
            residual: finite(r.residual),
            min_pivot: finite(r.min_pivot),
            note: r.note.clone(),
        })
        .collect();
    let doc = CovariantReport {
        schema_version: SCHEMA_VERSION,
        mode: Mode::RpCovariant.name(),
        description: s.description.as_deref(),
        beta: SequenceLiteral::from_increment(&beta),
        mu: mu.as_i64(),
        m2: Num(m2),
        f: hilbert_to_entries(&f),
        config: ConfigOut::from(&cfg),
        sectors,
        total: Num(cert.total()),
        global: GlobalOut {
            nonnegative: cert.verdict.nonnegative,
            identities_hold: cert.verdict.identities_hold,
            tolerance: Num(cert.verdict.tolerance),
        },
        verdict: exit.verdict(),
    };
    Ok(Report {
        json: render(&doc),
        csv_header: vec!["n", "direct", "boundary", "sigma1", "sigma2"],
        csv_rows: rows,
        exit,
    })
}

#[derive(Serialize)]
struct OracleSector {
    n: i64,
    window: (i64, i64),
    fast_direct: Option<Num>,
    dense_direct: Option<Num>,
    max_deviation: Option<Num>,
    g_upper: Option<Num>,
    g_lower: Option<Num>,
    agrees: bool,
    note: Option<String>,
}

#[derive(Serialize)]
struct OracleReport<'a> {
    schema_version: u32,
    mode: &'static str,
    description: Option<&'a str>,
    beta: SequenceLiteral,
    mu: i64,
    m2: Num,
    tolerance: Num,
    sectors: Vec<OracleSector>,
    verdict: &'static str,
}

fn oracle_mode(s: &Scenario, o: &Overrides) -> Result<Report, Failure> {
    let beta = require_beta(s)?;
    let m2 = require_m2(s)?;
    let f = require_f(s)?;
    let mu = covariant_sign(s, &beta)?;
    let cfg = config(s, o, mu);
    if let Some((lo, hi)) = s.window {
        if lo > hi {
            return invalid(format!("empty window [{lo}, {hi}]"));
        }
    }
    let mut sectors = Vec::new();
    let mut exit = ExitStatus::Verified;
    for n in f.grades() {
        let fv = sector_vector(&f, n);
        let j = sector_jacobi_with_sign(&beta, m2, n, mu)?;
        let solved = match s.window {
            Some(w) => solve_on_window(&j, &fv, w, 0),
            None => solve_sector(&j, &fv, cfg.solver_tol, &cfg.policy),
        };
        let sol = match solved {
            Ok(sol) => sol,
            Err(e @ Error::WindowExhausted { .. }) => {
                exit = ExitStatus::Inconclusive;
                sectors.push(OracleSector {
                    n,
                    window: (0, 0),
                    fast_direct: None,
                    dense_direct: None,
                    max_deviation: None,
                    g_upper: None,
                    g_lower: None,
                    agrees: false,
                    note: Some(e.to_string()),
                });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let dense = dense_oracle(&j, &fv, sol.window)?;
        let dense_direct: f64 = qcyl_core::rp::pairing(n, &fv, &dense).re;
        let dev = dense.max_abs_diff(&sol.g);
        let agrees = dev <= ORACLE_TOL;
        if !agrees && exit == ExitStatus::Verified {
            exit = ExitStatus::Violation;
        }
        let (up, low) = boundary_sites(n);
        sectors.push(OracleSector {
            n,
            window: sol.window,
            fast_direct: finite(sol.functional.re),
            dense_direct: finite(dense_direct),
            max_deviation: finite(dev),
            g_upper: finite(sol.g.get(up).re),
            g_lower: finite(sol.g.get(low).re),
            agrees,
            note: None,
        });
    }
    let rows = sectors
        .iter()
        .map(|r| {
            let t = |v: &Option<Num>| v.map(Num::text).unwrap_or_default();
            vec![r.n.to_string(), t(&r.fast_direct), t(&r.dense_direct), t(&r.max_deviation)]
        })
        .collect();
    let doc = OracleReport {
        schema_version: SCHEMA_VERSION,
        mode: Mode::OracleCompare.name(),
        description: s.description.as_deref(),
        beta: SequenceLiteral::from_increment(&beta),
        mu: mu.as_i64(),
        m2: Num(m2),
        tolerance: Num(ORACLE_TOL),
        sectors,
        verdict: exit.verdict(),
    };
    Ok(Report {
        json: render(&doc),
        csv_header: vec!["n", "fast_direct", "dense_direct", "max_deviation"],
        csv_rows: rows,
        exit,
    })
}

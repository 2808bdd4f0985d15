//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use qcyl_core::axioms::{self, LawReport};
use qcyl_core::{
    covariant_rp, invariant_rp, random, CertifyConfig, HilbertElement, IncrementSequence,
    RpCertificate, Scalar, Verdict,
};
use rand::Rng;

const SEED: u64 = 20_240_601;

const ALGEBRA_CASES: usize = 1000;
const ALGEBRA_BUDGET: Duration = Duration::from_secs(60);
const LEIBNIZ_CASES: usize = 500;
const IMPLEMENTATION_CASES: usize = 200;
const CLASSIFICATION_CASES: usize = 100;

const GOLDEN_TOL: f64 = 1e-9;
const GOLDEN_BUDGET: Duration = Duration::from_secs(1);

const CAMPAIGN_SCENARIOS: usize = 200;
const CAMPAIGN_BUDGET: Duration = Duration::from_secs(300);
const CAMPAIGN_MAX_ENTRIES: usize = 20;
const CAMPAIGN_MAX_SECTOR: i64 = 8;
const NONNEG_TOL: f64 = 1e-9;
const IDENTITY_TOL: f64 = 1e-8;
const ORACLE_TOL: f64 = 1e-8;
const STABILITY_TOL: f64 = 1e-8;
const CLOSED_FORM_TOL: f64 = 1e-8;
const REALITY_TOL: f64 = 1e-10;

struct Outcome {
    pass: bool,
    detail: String,
}

fn laws(reports: &[LawReport], elapsed: Duration, budget: Option<Duration>) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} ({}/{} failed, first case {:?})", r.law, r.failures, r.cases, r.first_failure))
        .collect();
    let in_time = budget.is_none_or(|b| elapsed < b);
    let cases: usize = reports.iter().map(|r| r.cases).sum();
    Outcome {
        pass: failed.is_empty() && in_time,
        detail: if failed.is_empty() {
            format!("{} laws, {cases} checks, {:.2?}", reports.len(), elapsed)
        } else {
            failed.join("; ")
        },
    }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let reports = axioms::algebra_suite(SEED, ALGEBRA_CASES);
    laws(&reports, t.elapsed(), Some(ALGEBRA_BUDGET))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let reports = axioms::derivation_suite(SEED + 1, LEIBNIZ_CASES);
    laws(&reports, t.elapsed(), None)
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let reports = axioms::implementation_suite(SEED + 2, IMPLEMENTATION_CASES);
    laws(&reports, t.elapsed(), None)
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let beta = IncrementSequence::constant(Scalar::one());
    let cert = covariant_rp(&beta, 1.0, &HilbertElement::unit(0, 0), &CertifyConfig::default());
    let elapsed = t.elapsed();
    let Ok(cert) = cert else {
        return Outcome { pass: false, detail: format!("{cert:?}") };
    };
    let s = &cert.sectors[0];
    let lambda = (3.0 - 5f64.sqrt()) / 2.0;
    let direct = s.direct_value;
    let sigma1 = s.sigma1.unwrap_or(f64::NAN);
    let g0 = 1.0 / 5f64.sqrt();
    let identity = (2.0 * sigma1 + 1.0 * g0 * g0 - direct).abs();
    let pass = (direct - g0).abs() <= GOLDEN_TOL
        && (sigma1 - (1.0 - lambda) / 5.0).abs() <= GOLDEN_TOL
        && identity <= GOLDEN_TOL
        && elapsed < GOLDEN_BUDGET;
    Outcome {
        pass,
        detail: format!("direct {direct:.12}, sigma1 {sigma1:.12}, identity gap {identity:.1e}, {elapsed:.2?}"),
    }
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let beta = IncrementSequence::tabulate(-16, 16, |k| Scalar::int(1 + k * k));
    let f = HilbertElement::from_entries([((2, -1), Scalar::one()), ((0, 1), Scalar::int(5))]);
    let r = invariant_rp(&beta, &f);
    let elapsed = t.elapsed();
    match r {
        Ok(r) => Outcome {
            pass: r.direct.is_exact()
                && r.direct == Scalar::ratio(1, 4)
                && r.boundary == Scalar::ratio(1, 4)
                && elapsed < GOLDEN_BUDGET,
            detail: format!("direct {}, boundary {}, {elapsed:.2?}", r.direct, r.boundary),
        },
        Err(e) => Outcome { pass: false, detail: e.to_string() },
    }
}

fn campaign() -> (Vec<RpCertificate>, Vec<String>, Duration) {
    let t = Instant::now();
    let mut rng = random::rng(SEED + 6);
    let mut certs = Vec::with_capacity(CAMPAIGN_SCENARIOS);
    let mut errors = Vec::new();
    for i in 0..CAMPAIGN_SCENARIOS {
        let beta = random::constant_tail_beta(&mut rng);
        let m2 = rng.gen_range(0.1..=10.0);
        let f = random::rp_vector(&mut rng, CAMPAIGN_MAX_ENTRIES, CAMPAIGN_MAX_SECTOR);
        match covariant_rp(&beta, m2, &f, &CertifyConfig::default()) {
            Ok(c) => certs.push(c),
            Err(e) => errors.push(format!("scenario {i}: {e}")),
        }
    }
    (certs, errors, t.elapsed())
}

fn criterion_6(certs: &[RpCertificate], errors: &[String], elapsed: Duration) -> Outcome {
    let mut bad = errors.to_vec();
    let mut sectors = 0;
    for (i, c) in certs.iter().enumerate() {
        if c.verdict.verdict != Verdict::Verified {
            bad.push(format!("scenario {i}: verdict {:?}", c.verdict.verdict));
        }
        for s in &c.sectors {
            sectors += 1;
            let ok = s.direct_value >= -NONNEG_TOL
                && s.identity_error.is_some_and(|e| e <= IDENTITY_TOL)
                && s.oracle_deviation.is_some_and(|e| e <= ORACLE_TOL)
                && s.stability_deviation.is_some_and(|e| e <= STABILITY_TOL);
            if !ok {
                bad.push(format!("scenario {i} sector {}", s.n));
            }
        }
    }
    let pass = bad.is_empty() && certs.len() == CAMPAIGN_SCENARIOS && elapsed < CAMPAIGN_BUDGET;
    Outcome {
        pass,
        detail: if bad.is_empty() {
            format!("{} scenarios, {sectors} sectors, {elapsed:.2?}", certs.len())
        } else {
            bad.join("; ")
        },
    }
}

fn criterion_7(certs: &[RpCertificate]) -> Outcome {
    let mut worst_gap = 0.0f64;
    let mut worst_imag = 0.0f64;
    let mut missing = 0;
    for s in certs.iter().flat_map(|c| &c.sectors) {
        match (s.closed_form_error, s.cross_term_imag) {
            (Some(l), Some(im)) => {
                worst_gap = worst_gap.max(l);
                worst_imag = worst_imag.max(im.abs());
            }
            _ => missing += 1,
        }
    }
    Outcome {
        pass: missing == 0 && !certs.is_empty() && worst_gap <= CLOSED_FORM_TOL && worst_imag <= REALITY_TOL,
        detail: format!("worst boundary-form gap {worst_gap:.1e}, worst |Im| {worst_imag:.1e}, {missing} sectors without data"),
    }
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let reports = axioms::classification_suite(SEED + 8, CLASSIFICATION_CASES);
    laws(&reports, t.elapsed(), None)
}

fn main() {
    let mut results = vec![
        ("1 exact algebra suite", criterion_1()),
        ("2 derivation suite", criterion_2()),
        ("3 implementation suite", criterion_3()),
        ("4 golden covariant value", criterion_4()),
        ("5 golden invariant value", criterion_5()),
    ];
    let (certs, errors, elapsed) = campaign();
    results.push(("6 randomized RP campaign", criterion_6(&certs, &errors, elapsed)));
    results.push(("7 boundary sums and reality", criterion_7(&certs)));
    results.push(("8 classification", criterion_8()));

    let mut all = true;
    for (name, o) in &results {
        all &= o.pass;
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if !all {
        std::process::exit(1);
    }
}

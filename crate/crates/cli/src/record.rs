//! Single-cell pipeline and its JSON record.

use std::collections::BTreeMap;
use std::time::Instant;

use klsym_core::epsilon::constant_c_closed;
use klsym_core::lseries::{functional_constant, purity_report, DEFAULT_PURITY_TOL};
use klsym_core::{Engine, Error, LPolynomial};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub status: Status,
    pub details: String,
}

impl Check {
    fn new(pass: bool, details: impl Into<String>) -> Self {
        Check {
            status: if pass { Status::Pass } else { Status::Fail },
            details: details.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub const CHECK_NAMES: [&str; 6] = [
    "integrality",
    "truncation_or_fe",
    "functional_equation",
    "c_squared",
    "closed_form_c",
    "purity",
];

#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub p: u64,
    pub k: u32,
    pub delta: u32,
    pub guard: u32,
    pub coeffs: Option<Vec<String>>,
    pub c_computed: Option<String>,
    pub c_closed: String,
    pub checks: BTreeMap<String, Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
    #[serde(skip)]
    pub polynomial: Option<LPolynomial>,
}

impl RunRecord {
    pub fn all_pass(&self) -> bool {
        self.checks.values().all(Check::passed)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, c)| !c.passed())
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

/// Runs the full pipeline for `(p, k)`. Domain and resource errors are
/// returned; failed verifications are recorded in the checks.
pub fn run_cell(engine: &Engine, p: u64, k: u32, guard: Option<u32>, timings: bool) -> Result<RunRecord, Error> {
    let start = Instant::now();
    let c_closed = constant_c_closed(p, k)?;
    let series = engine.expansion(p, k, guard)?;
    let after_sums = start.elapsed().as_secs_f64();
    let mut checks = BTreeMap::new();
    let mut put = |name: &str, c: Check| {
        checks.insert(name.to_string(), c);
    };

    let integral = series.check_integrality();
    put(
        "integrality",
        Check::new(integral.is_ok(), integral.as_ref().err().map_or("m_0..m_delta integral".into(), |e| e.to_string())),
    );

    let polynomial = series.polynomial().ok();
    let mut record_fe = None;
    match &polynomial {
        Some(m) => {
            let fc = functional_constant(m);
            let fe_detail = if fc.residuals_vanish() {
                format!("{} residuals vanish", fc.residuals.len())
            } else {
                let bad: Vec<String> = fc.residuals.iter().map(|r| r.to_string()).collect();
                format!("residuals [{}]", bad.join(", "))
            };
            put("functional_equation", Check::new(fc.residuals_vanish(), fe_detail));
            put(
                "c_squared",
                Check::new(fc.c_squared_ok, format!("c^2 vs p^{}", (k + 1) * series.delta)),
            );
            put(
                "closed_form_c",
                Check::new(fc.c == c_closed, format!("computed {} closed {}", fc.c, c_closed)),
            );
            let purity = purity_report(m, DEFAULT_PURITY_TOL);
            let moduli: Vec<String> = purity.moduli.iter().map(|x| format!("{x:.6e}")).collect();
            put(
                "purity",
                Check::new(
                    purity.passes(),
                    format!("target {:.6e}, moduli [{}]", purity.target, moduli.join(", ")),
                ),
            );
            record_fe = Some(fc);
        }
        None => {
            for name in ["functional_equation", "c_squared", "closed_form_c", "purity"] {
                put(name, Check::new(false, "no integral polynomial"));
            }
        }
    }

    let truncation = if series.guard() > 0 {
        let t = series.check_truncation();
        Check::new(
            t.is_ok(),
            t.err().map_or(format!("{} guard coefficients vanish", series.guard()), |e| e.to_string()),
        )
    } else {
        let ok = record_fe.as_ref().is_some_and(|fc| fc.residuals_vanish());
        Check::new(ok, "no guard terms affordable; certified by the functional equation")
    };
    put("truncation_or_fe", truncation);

    let timings = timings.then(|| {
        let mut t = BTreeMap::new();
        t.insert("power_sums_s".to_string(), after_sums);
        t.insert("total_s".to_string(), start.elapsed().as_secs_f64());
        t
    });

    Ok(RunRecord {
        p,
        k,
        delta: series.delta,
        guard: series.guard(),
        coeffs: polynomial.as_ref().map(|m| m.coeffs.iter().map(|c| c.to_string()).collect()),
        c_computed: record_fe.map(|fc| fc.c.to_string()),
        c_closed: c_closed.to_string(),
        checks,
        timings,
        polynomial,
    })
}

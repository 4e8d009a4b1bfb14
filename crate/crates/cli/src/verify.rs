//! Verification suites behind `confspace verify`: published-table fixtures,
//! the oracle grid, and the recurrence/identity battery.

use anyhow::{bail, Result};
use clap::ValueEnum;

use confspace::engine::{self, CheckOutcome, Family, Parity, Report};
use confspace::{Rat, Surface};

use crate::commands::cmd_stable_table;
use crate::output::OutputFormat;

/// Reference data: the published stable-Betti-number table (genus through 6,
/// degree through 43) and the published fixed-genus polynomials.
const STABLE_TABLE_CSV: &str = include_str!("../fixtures/stable_table_g6_i43.csv");
const POLYNOMIALS_JSON: &str = include_str!("../fixtures/fixed_genus_polynomials.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Reproduce the published table and polynomials byte for byte.
    Figures,
    /// Compare formulas/series against the brute-force homology oracle.
    Oracle,
    /// Series recurrences, operator identities, kernel equivalences.
    Recurrences,
    /// Everything.
    All,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub max_g: Option<usize>,
    pub max_k: Option<usize>,
    pub trunc: Option<usize>,
    pub max_block_dim: Option<usize>,
}

// hard caps keeping brute-force sizes at desk scale
const ORACLE_MAX_G: usize = 3;
const ORACLE_MAX_K: usize = 10;
const RECURRENCE_MAX_G: usize = 12;
const RECURRENCE_MAX_TRUNC: usize = 80;
const DEFAULT_BLOCK_CAP: usize = 50_000;

/// The published-fixture checks.
pub fn figures_checks() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();

    let rendered = format!("{}\n", cmd_stable_table(6, 43, OutputFormat::Csv)?);
    out.push(if rendered == STABLE_TABLE_CSV {
        CheckOutcome::pass("stable table matches the published values byte for byte")
    } else {
        let diff = first_diff(&rendered, STABLE_TABLE_CSV);
        CheckOutcome::fail(
            "stable table matches the published values byte for byte",
            diff,
        )
    });

    let fixture: serde_json::Value = serde_json::from_str(POLYNOMIALS_JSON)?;
    let mut mismatches = Vec::new();
    for entry in fixture.as_array().expect("fixture is an array") {
        let family: Family = entry["family"].as_str().unwrap().parse().unwrap();
        let parity: Parity = entry["parity"].as_str().unwrap().parse().unwrap();
        let g = entry["g"].as_u64().unwrap() as usize;
        let expected: Vec<Rat> = entry["coeffs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_str().unwrap().parse().expect("rational literal"))
            .collect();
        match engine::polynomial_fit(g, family, parity) {
            Ok(fit) if fit.coeffs == expected => {}
            Ok(fit) => mismatches.push(format!(
                "{family}/{parity} at g={g}: fit {:?}, published {:?}",
                fit.coeffs.iter().map(Rat::to_string).collect::<Vec<_>>(),
                expected.iter().map(Rat::to_string).collect::<Vec<_>>()
            )),
            Err(e) => mismatches.push(format!("{family}/{parity} at g={g}: {e}")),
        }
    }
    out.push(CheckOutcome::from_mismatches(
        "fixed-genus polynomials match the published values",
        mismatches,
    ));
    Ok(out)
}

fn first_diff(got: &str, expected: &str) -> String {
    for (ix, (a, b)) in got.lines().zip(expected.lines()).enumerate() {
        if a != b {
            return format!(
                "first difference on line {}: got `{a}`, expected `{b}`",
                ix + 1
            );
        }
    }
    format!(
        "line counts differ: got {}, expected {}",
        got.lines().count(),
        expected.lines().count()
    )
}

fn oracle_surfaces(max_g: usize) -> Vec<Surface> {
    let mut surfaces: Vec<Surface> = (0..=max_g).map(Surface::closed_orientable).collect();
    surfaces.extend(
        engine::default_oracle_surfaces()
            .into_iter()
            .filter(|s| !matches!(s, Surface::ClosedOrientable { .. })),
    );
    surfaces
}

/// Run the requested suite, or fail with a usage error when a bound override
/// exceeds its cap.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let cap = opts.max_block_dim.unwrap_or(DEFAULT_BLOCK_CAP);
    let mut report = Report::default();

    if matches!(suite, Suite::Figures | Suite::All) {
        report.extend(figures_checks()?);
    }

    if matches!(suite, Suite::Oracle | Suite::All) {
        let max_g = opts.max_g.unwrap_or(2);
        if max_g > ORACLE_MAX_G {
            bail!("--max-g {max_g} exceeds the oracle cap {ORACLE_MAX_G}");
        }
        let (closed_k, open_k) = match opts.max_k {
            Some(k) if k > ORACLE_MAX_K => {
                bail!("--max-k {k} exceeds the oracle cap {ORACLE_MAX_K}")
            }
            Some(k) => (k, k),
            None => (6, 8),
        };
        report.extend(engine::oracle_grid_checks(
            &oracle_surfaces(max_g),
            closed_k,
            open_k,
            cap,
        ));
    }

    if matches!(suite, Suite::Recurrences | Suite::All) {
        let max_g = opts.max_g.unwrap_or(8);
        if max_g > RECURRENCE_MAX_G {
            bail!("--max-g {max_g} exceeds the recurrence cap {RECURRENCE_MAX_G}");
        }
        let trunc = opts.trunc.unwrap_or(40);
        if trunc > RECURRENCE_MAX_TRUNC {
            bail!("--trunc {trunc} exceeds the recurrence cap {RECURRENCE_MAX_TRUNC}");
        }
        report.extend(engine::series_identity_checks(max_g, 3, trunc));
        report.extend(engine::operator_identity_checks(2, 10, cap));
        let bounds = engine::Bounds {
            max_block_dim: cap,
            ..engine::Bounds::default()
        };
        report.extend(engine::kernel_equivalence_checks(&bounds));
    }

    Ok(report)
}

//! Implementations of the subcommands, each returning the rendered output.

use anyhow::{Context, Result};
use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::json;

use confspace::engine::{self, Family, Parity};
use confspace::series::{s_series, x_series};
use confspace::{ce, Rat, RatSeries, Surface};

use crate::output::{render_table, OutputFormat};

/// CSV-safe single-token surface name.
pub fn surface_token(s: Surface) -> String {
    match s {
        Surface::ClosedOrientable { g } => format!("closed-orientable-g{g}"),
        Surface::OpenOrientable { g, n } => format!("open-orientable-g{g}-n{n}"),
        Surface::ClosedNonorientable { h } => format!("closed-nonorientable-h{h}"),
        Surface::OpenNonorientable { h, n } => format!("open-nonorientable-h{h}-n{n}"),
    }
}

/// A single Betti number with its provenance.
pub fn cmd_betti(surface: Surface, i: usize, k: usize, format: OutputFormat) -> Result<String> {
    let (value, provenance) = engine::betti(surface, i, k)?;
    Ok(match format {
        OutputFormat::Plain => {
            format!("beta_{i}(B_{k}({surface})) = {value} [{provenance}]")
        }
        OutputFormat::Json => serde_json::to_string_pretty(&json!({
            "surface": surface,
            "i": i,
            "k": k,
            "betti": value.to_string(),
            "provenance": provenance.to_string(),
        }))?,
        OutputFormat::Csv | OutputFormat::Markdown => {
            let header = ["surface", "i", "k", "betti", "provenance"]
                .map(String::from)
                .to_vec();
            let row = vec![
                surface_token(surface),
                i.to_string(),
                k.to_string(),
                value.to_string(),
                provenance.to_string(),
            ];
            render_table(format, &header, &[row])
        }
    })
}

/// The `(max_i + 1) x (max_g + 1)` table of stable Betti numbers, computed
/// along both the formula and the series paths (which must agree).
pub fn cmd_stable_table(max_g: usize, max_i: usize, format: OutputFormat) -> Result<String> {
    let rows: Vec<Vec<BigUint>> = engine::stable_table(max_g, max_i)?;
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(BigUint::to_string).collect())
        .collect();
    Ok(match format {
        OutputFormat::Json => serde_json::to_string_pretty(&json!({
            "max_g": max_g,
            "max_i": max_i,
            "rows": cells,
        }))?,
        OutputFormat::Plain => render_table(format, &[], &cells),
        OutputFormat::Csv | OutputFormat::Markdown => {
            let mut header = vec!["i".to_string()];
            header.extend((0..=max_g).map(|g| format!("g{g}")));
            let with_index: Vec<Vec<String>> = cells
                .into_iter()
                .enumerate()
                .map(|(i, mut r)| {
                    r.insert(0, i.to_string());
                    r
                })
                .collect();
            render_table(format, &header, &with_index)
        }
    })
}

/// The odd- and even-degree polynomials of one Betti family at fixed genus.
pub fn cmd_polys(g: usize, family: Family, format: OutputFormat) -> Result<String> {
    let odd = engine::polynomial_fit(g, family, Parity::Odd)?;
    let even = engine::polynomial_fit(g, family, Parity::Even)?;
    let coeff_strings = |p: &engine::FittedPolynomial| -> Vec<String> {
        p.coeffs.iter().map(Rat::to_string).collect()
    };
    Ok(match format {
        OutputFormat::Plain => format!(
            "odd  i >= 5: {}\neven i >= 6: {}",
            odd.display_fraction(),
            even.display_fraction()
        ),
        OutputFormat::Json => serde_json::to_string_pretty(&json!({
            "g": g,
            "family": family,
            "odd": { "display": odd.display_fraction(), "coeffs": coeff_strings(&odd) },
            "even": { "display": even.display_fraction(), "coeffs": coeff_strings(&even) },
        }))?,
        OutputFormat::Csv | OutputFormat::Markdown => {
            let header = ["family", "parity", "g", "polynomial"]
                .map(String::from)
                .to_vec();
            let rows = vec![
                vec![
                    family.to_string(),
                    "odd".to_string(),
                    g.to_string(),
                    odd.display_fraction(),
                ],
                vec![
                    family.to_string(),
                    "even".to_string(),
                    g.to_string(),
                    even.display_fraction(),
                ],
            ];
            render_table(format, &header, &rows)
        }
    })
}

/// Which Poincaré series to dump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    /// Stable Betti numbers (`k > i`).
    Stable,
    /// Diagonal Betti numbers (`k = i`).
    Diag,
    /// Betti numbers just above the diagonal (`k = i - 1`).
    Top,
    /// Graded dimensions of the joint operator kernel.
    Kernel,
    /// Graded dimensions of the constrained pair space (uses `--n`).
    Pair,
    /// `1/(1-t)^{2g}`, the auxiliary-algebra Poincaré series.
    X,
    /// `1/(1-t^2)^2`, two polynomial generators in degree 2.
    S,
}

/// Dump one series to the requested truncation order.
pub fn cmd_series(
    kind: SeriesKind,
    g: usize,
    n: usize,
    trunc: usize,
    format: OutputFormat,
) -> Result<String> {
    let series: RatSeries = match kind {
        SeriesKind::Stable => engine::master_series(g, Family::Stable, trunc)?,
        SeriesKind::Diag => engine::master_series(g, Family::Diag, trunc)?,
        SeriesKind::Top => engine::master_series(g, Family::Top, trunc)?,
        SeriesKind::Kernel => engine::k_series(g, trunc),
        SeriesKind::Pair => engine::v_series(g, n, trunc),
        SeriesKind::X => x_series(g, trunc),
        SeriesKind::S => s_series(trunc),
    };
    Ok(match format {
        OutputFormat::Plain => series.to_string(),
        OutputFormat::Json => serde_json::to_string_pretty(&json!({
            "which": format!("{kind:?}").to_lowercase(),
            "g": g,
            "n": n,
            "trunc": trunc,
            "coeffs": series.coeff_strings(),
        }))?,
        OutputFormat::Csv | OutputFormat::Markdown => {
            let header = ["exponent", "coefficient"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = series
                .coeffs()
                .iter()
                .enumerate()
                .map(|(e, c)| vec![e.to_string(), c.to_string()])
                .collect();
            render_table(format, &header, &rows)
        }
    })
}

/// JSON dump of one basis block of the Chevalley–Eilenberg complex and the
/// differential leaving it.
pub fn cmd_dump_block(
    surface: Surface,
    i: usize,
    k: usize,
    max_block_dim: usize,
) -> Result<String> {
    let complex = ce::surface_ce_spec(surface)?;
    let basis = ce::enumerate_basis(&complex, i, k);
    let dim = basis.dim(i, k);
    anyhow::ensure!(
        dim <= max_block_dim,
        "block (i={i}, k={k}) has dimension {dim}, above the cap {max_block_dim}"
    );
    serde_json::to_string_pretty(&ce::block_dump_json(&complex, &basis, i, k))
        .context("serializing block dump")
}

//! The series pipeline: kernel and pair-space Poincaré series by recurrence,
//! the three master series for closed orientable surfaces, the unified Betti
//! resolver, fixed-genus polynomial extraction, and the cross-check report
//! that ties formulas, series, and the brute-force oracle together.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ce;
use crate::comb::ext_binom;
use crate::formulas;
use crate::operators;
use crate::scalar::Scalar;
use crate::series::{s_series, x_series, SeriesError};
use crate::surface::{GradedIndex, Surface, SurfaceError};
use crate::table::{BettiTable, Provenance};
use crate::{Rat, RatSeries};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("invalid surface: {0}")]
    InvalidSurface(#[from] SurfaceError),
    #[error("series failure: {0}")]
    Series(#[from] SeriesError),
    #[error("master series for {family} not divisible by t^{shift} at genus {g}")]
    MasterSeriesNotDivisible {
        family: Family,
        shift: usize,
        g: usize,
    },
    #[error("series coefficient {value} at degree {i} is not a nonnegative integer")]
    NonIntegerCoefficient { value: String, i: usize },
    #[error(
        "formula and series paths disagree at (g={g}, i={i}): formula={formula}, series={series}"
    )]
    PathMismatch {
        g: usize,
        i: usize,
        formula: BigUint,
        series: BigUint,
    },
    #[error(
        "{family}/{parity} Betti numbers at genus {g} are not polynomial of degree < {degree}"
    )]
    NotPolynomial {
        family: Family,
        parity: Parity,
        g: usize,
        degree: usize,
    },
    #[error("oracle failure: {0}")]
    Oracle(#[from] ce::CeError),
    #[error("operator failure: {0}")]
    Operators(#[from] operators::OpError),
}

/// Which of the three Betti-number families of a closed orientable surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `beta_i(B_k)` for `k > i` (independent of `k`).
    Stable,
    /// `beta_i(B_i)`.
    Diag,
    /// `beta_i(B_{i-1})`.
    Top,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Stable => write!(f, "stable"),
            Family::Diag => write!(f, "diag"),
            Family::Top => write!(f, "top"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "stable" => Ok(Family::Stable),
            "diag" => Ok(Family::Diag),
            "top" => Ok(Family::Top),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Odd => write!(f, "odd"),
            Parity::Even => write!(f, "even"),
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            other => Err(format!("unknown parity `{other}`")),
        }
    }
}

fn int_series(terms: &[(i64, usize)], trunc: usize) -> RatSeries {
    let mut s = RatSeries::zero(trunc);
    for &(c, e) in terms {
        s = &s + &RatSeries::monomial(Rat::from_int(c), e, trunc);
    }
    s
}

/// Poincaré series of the constrained pair space, in closed form:
/// `S^g (1 + t^3) sum_{j=0}^{g+n-1} t^j (C(2g, j) - C(2g, j - 2n))`,
/// zero when `n = 0`.
pub fn v_series(g: usize, n: usize, trunc: usize) -> RatSeries {
    if n == 0 {
        return RatSeries::zero(trunc);
    }
    let (gi, ni) = (g as i64, n as i64);
    let mut poly = RatSeries::zero(trunc);
    for j in 0..=(g + n - 1) as i64 {
        let c = BigInt::from(ext_binom(2 * gi, j)) - BigInt::from(ext_binom(2 * gi, j - 2 * ni));
        if c.is_zero() || j as usize > trunc {
            continue;
        }
        poly = &poly + &RatSeries::monomial(Rat::from_bigint(&c), j as usize, trunc);
    }
    let mut acc = &int_series(&[(1, 0), (1, 3)], trunc) * &poly;
    let s = s_series::<Rat>(trunc);
    for _ in 0..g {
        acc = &acc * &s;
    }
    acc
}

/// Poincaré series of the joint operator kernel, computed by iterating the
/// genus recurrence `t K_{g+1} = 1 + t^3 + t S V_{g,1} - K_g` from the base
/// case `K_1 = S V_{0,1}`. (The recurrence itself only holds from genus one
/// up: at genus zero the kernel has nothing in degree 3 for the correction
/// term to account for.)
pub fn k_series(g: usize, trunc: usize) -> RatSeries {
    if g == 0 {
        return RatSeries::one(trunc);
    }
    // one order is lost per division by t, so pad the start
    let pad = trunc + g - 1;
    let mut k = &s_series(pad) * &v_series(0, 1, pad);
    for j in 1..g {
        let t = k.trunc();
        let sv = &s_series(t) * &v_series(j, 1, t);
        let numerator = &(&int_series(&[(1, 0), (1, 3)], t)
            + &sv.shift(1).expect("positive shift").truncate(t))
            - &k;
        k = numerator
            .shift(-1)
            .expect("kernel recurrence numerator always vanishes at t^0");
    }
    k
}

/// One of the three master Poincaré series of a closed orientable surface.
///
/// With `K` the kernel series and `X = 1/(1-t)^{2g}`:
/// * stable: `(1 + t^3)/t^2 * [(1 + t)K + (-t + t^2)X - 1]`
/// * diag:   `1/t * [(1 + t^2 + t^3)K - 1 + t - t^2 + (-t^3 + t^4)X]`
/// * top:    `t^2 K`
///
/// The divisions are exact shifts; a nonvanishing guard coefficient is a bug,
/// reported as [`EngineError::MasterSeriesNotDivisible`].
pub fn master_series(g: usize, family: Family, trunc: usize) -> Result<RatSeries, EngineError> {
    let not_divisible = |shift: usize| EngineError::MasterSeriesNotDivisible { family, shift, g };
    match family {
        Family::Top => {
            let k = k_series(g, trunc);
            Ok(k.shift(2).expect("positive shift").truncate(trunc))
        }
        Family::Stable => {
            let pad = trunc + 2;
            let k = k_series(g, pad);
            let x = x_series(g, pad);
            let bracket = &(&(&int_series(&[(1, 0), (1, 1)], pad) * &k)
                + &(&int_series(&[(-1, 1), (1, 2)], pad) * &x))
                - &RatSeries::one(pad);
            let shifted = bracket.shift(-2).map_err(|_| not_divisible(2))?;
            Ok(&int_series(&[(1, 0), (1, 3)], trunc) * &shifted.truncate(trunc))
        }
        Family::Diag => {
            let pad = trunc + 1;
            let k = k_series(g, pad);
            let x = x_series(g, pad);
            let bracket = &(&(&int_series(&[(1, 0), (1, 2), (1, 3)], pad) * &k)
                + &int_series(&[(-1, 0), (1, 1), (-1, 2)], pad))
                + &(&int_series(&[(-1, 3), (1, 4)], pad) * &x);
            bracket
                .shift(-1)
                .map_err(|_| not_divisible(1))
                .map(|s| s.truncate(trunc))
        }
    }
}

fn rat_to_betti(value: &Rat, i: usize) -> Result<BigUint, EngineError> {
    if !value.is_integer() || value.is_negative() {
        return Err(EngineError::NonIntegerCoefficient {
            value: value.to_string(),
            i,
        });
    }
    Ok(value.to_integer().to_biguint().expect("nonnegative"))
}

/// `beta_i(B_k(s))` with the path that computed it: series coefficients for
/// closed orientable surfaces, closed formulas for everything else.
pub fn betti(s: Surface, i: usize, k: usize) -> Result<(BigUint, Provenance), EngineError> {
    s.validate()?;
    match s {
        Surface::ClosedOrientable { g } => {
            if i > k + 1 {
                return Ok((BigUint::zero(), Provenance::Series));
            }
            let family = if i < k {
                Family::Stable
            } else if i == k {
                Family::Diag
            } else {
                Family::Top
            };
            let series = master_series(g, family, i + 1)?;
            let value = rat_to_betti(series.coefficient(i)?, i)?;
            Ok((value, Provenance::Series))
        }
        Surface::OpenOrientable { g, n } => Ok((
            formulas::betti_open_orientable(g, n, i, k),
            Provenance::Formula,
        )),
        Surface::ClosedNonorientable { h } => Ok((
            formulas::betti_closed_nonorientable(h, i, k),
            Provenance::Formula,
        )),
        Surface::OpenNonorientable { h, n } => Ok((
            formulas::betti_open_nonorientable(h, n, i, k),
            Provenance::Formula,
        )),
    }
}

/// Betti table over the full `(i, k)` rectangle, sharing series computations
/// across entries.
pub fn betti_table(s: Surface, max_i: usize, max_k: usize) -> Result<BettiTable, EngineError> {
    s.validate()?;
    let mut table = BettiTable::new(s);
    if let Surface::ClosedOrientable { g } = s {
        let trunc = max_i + 1;
        let stable = master_series(g, Family::Stable, trunc)?;
        let diag = master_series(g, Family::Diag, trunc)?;
        let top = master_series(g, Family::Top, trunc)?;
        for k in 0..=max_k {
            for i in 0..=max_i {
                let value = if i > k + 1 {
                    BigUint::zero()
                } else {
                    let series = match i.cmp(&k) {
                        std::cmp::Ordering::Less => &stable,
                        std::cmp::Ordering::Equal => &diag,
                        std::cmp::Ordering::Greater => &top,
                    };
                    rat_to_betti(series.coefficient(i)?, i)?
                };
                table.insert(GradedIndex::new(i, k), value, Provenance::Series);
            }
        }
    } else {
        for k in 0..=max_k {
            for i in 0..=max_i {
                let (value, provenance) = betti(s, i, k)?;
                table.insert(GradedIndex::new(i, k), value, provenance);
            }
        }
    }
    Ok(table)
}

/// Stable Betti numbers `beta_i^st(B(Sigma_g))` for `i <= max_i`,
/// `g <= max_g`, computed twice — once from the closed formulas and once from
/// the series pipeline — and returned only if the two paths agree entrywise.
/// Rows are indexed by degree, columns by genus.
pub fn stable_table(max_g: usize, max_i: usize) -> Result<Vec<Vec<BigUint>>, EngineError> {
    let mut rows = vec![Vec::with_capacity(max_g + 1); max_i + 1];
    for g in 0..=max_g {
        let series = master_series(g, Family::Stable, max_i + 1)?;
        for (i, row) in rows.iter_mut().enumerate() {
            let from_series = rat_to_betti(series.coefficient(i)?, i)?;
            let from_formula = formulas::betti_closed_stable(g, i);
            if from_series != from_formula {
                return Err(EngineError::PathMismatch {
                    g,
                    i,
                    formula: from_formula,
                    series: from_series,
                });
            }
            row.push(from_series);
        }
    }
    Ok(rows)
}

/// An interpolated fixed-genus polynomial: for degrees of the given parity
/// (at least 5 odd / 6 even), the chosen Betti family at genus `g` is this
/// polynomial in the degree.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedPolynomial {
    pub family: Family,
    pub parity: Parity,
    pub g: usize,
    /// Exact coefficients, ascending; trailing zeros trimmed, zero polynomial
    /// is a single zero coefficient.
    pub coeffs: Vec<Rat>,
}

impl FittedPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn evaluate(&self, x: i64) -> Rat {
        eval_poly(&self.coeffs, x)
    }

    /// Render as a single fraction with an integer numerator polynomial in
    /// the variable `i`, descending powers: `(2i^3+3i^2+10i+9)/8`.
    pub fn display_fraction(&self) -> String {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            num_integer::lcm(acc, c.denom().clone())
        });
        let numerators: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut body = String::new();
        let mut terms = 0usize;
        for (e, c) in numerators.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                body.push('-');
            } else if !body.is_empty() {
                body.push('+');
            }
            let mag = c.abs();
            if !mag.is_one() || e == 0 {
                body.push_str(&mag.to_string());
            }
            match e {
                0 => {}
                1 => body.push('i'),
                _ => body.push_str(&format!("i^{e}")),
            }
            terms += 1;
        }
        if body.is_empty() {
            body.push('0');
        }
        if den.is_one() {
            body
        } else if terms > 1 {
            format!("({body})/{den}")
        } else {
            format!("{body}/{den}")
        }
    }
}

fn trim_trailing_zeros(mut coeffs: Vec<Rat>) -> Vec<Rat> {
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

/// Exact Lagrange interpolation through the given nodes; coefficients are
/// returned ascending.
fn lagrange_interpolate(points: &[(i64, Rat)]) -> Vec<Rat> {
    // master(x) = prod (x - x_l)
    let mut master = vec![Rat::one()];
    for &(x, _) in points {
        master = mul_linear(&master, x);
    }
    let mut coeffs = vec![Rat::zero(); points.len()];
    for &(xj, ref yj) in points {
        let qj = divide_linear(&master, xj);
        let denom = eval_poly(&qj, xj);
        let scale = yj.clone() / denom;
        for (c, q) in coeffs.iter_mut().zip(&qj) {
            *c += q.clone() * scale.clone();
        }
    }
    trim_trailing_zeros(coeffs)
}

/// `p(x) * (x - root)`, coefficients ascending.
fn mul_linear(p: &[Rat], root: i64) -> Vec<Rat> {
    let r = Rat::from_int(root);
    let mut out = vec![Rat::zero(); p.len() + 1];
    for (e, c) in p.iter().enumerate() {
        out[e + 1] += c.clone();
        out[e] -= c.clone() * r.clone();
    }
    out
}

/// Synthetic division of `p` by `(x - root)`; exact because `root` is a root
/// of `p` by construction.
fn divide_linear(p: &[Rat], root: i64) -> Vec<Rat> {
    let r = Rat::from_int(root);
    let mut out = vec![Rat::zero(); p.len() - 1];
    let mut carry = Rat::zero();
    for e in (0..p.len() - 1).rev() {
        carry = p[e + 1].clone() + carry * r.clone();
        out[e] = carry.clone();
    }
    out
}

fn eval_poly(p: &[Rat], x: i64) -> Rat {
    let x = Rat::from_int(x);
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

/// Interpolate the fixed-genus polynomial of the given family and parity
/// through `2g` sample degrees, then verify it on two further out-of-sample
/// degrees. Genus zero yields the zero polynomial.
pub fn polynomial_fit(
    g: usize,
    family: Family,
    parity: Parity,
) -> Result<FittedPolynomial, EngineError> {
    let start = match parity {
        Parity::Odd => 5,
        Parity::Even => 6,
    };
    let samples = 2 * g;
    if samples == 0 {
        return Ok(FittedPolynomial {
            family,
            parity,
            g,
            coeffs: vec![Rat::zero()],
        });
    }
    let max_node = start + 2 * (samples + 1);
    let series = master_series(g, family, max_node + 1)?;
    let node_value = |ix: usize| -> Result<(i64, Rat), EngineError> {
        let x = start + 2 * ix;
        Ok((x as i64, series.coefficient(x)?.clone()))
    };
    let points: Vec<(i64, Rat)> = (0..samples).map(node_value).collect::<Result<_, _>>()?;
    let coeffs = lagrange_interpolate(&points);
    let fitted = FittedPolynomial {
        family,
        parity,
        g,
        coeffs,
    };
    for ix in samples..samples + 2 {
        let (x, expected) = node_value(ix)?;
        if fitted.evaluate(x) != expected {
            return Err(EngineError::NotPolynomial {
                family,
                parity,
                g,
                degree: samples,
            });
        }
    }
    Ok(fitted)
}

/// One named cross-check with a human-readable failure detail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn pass(name: impl Into<String>) -> CheckOutcome {
        CheckOutcome {
            name: name.into(),
            passed: true,
            detail: String::new(),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> CheckOutcome {
        CheckOutcome {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    pub fn from_mismatches(name: impl Into<String>, mismatches: Vec<String>) -> CheckOutcome {
        if mismatches.is_empty() {
            CheckOutcome::pass(name)
        } else {
            CheckOutcome::fail(name, mismatches.join("; "))
        }
    }
}

/// A bundle of check outcomes.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub entries: Vec<CheckOutcome>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn extend(&mut self, entries: Vec<CheckOutcome>) {
        self.entries.extend(entries);
    }
}

/// Size limits for [`consistency_check`].
#[derive(Debug, Clone)]
pub struct Bounds {
    /// Genus range for the series recurrences and congruence.
    pub max_g: usize,
    /// Puncture-parameter range for the pair-space recurrence.
    pub max_n: usize,
    /// Truncation order for all series identities.
    pub trunc: usize,
    /// Surfaces for the oracle grid (empty list skips oracle checks).
    pub oracle_surfaces: Vec<Surface>,
    /// Weight ranges for the oracle grid: closed orientable surfaces use
    /// `closed_max_k`, everything else `open_max_k`.
    pub closed_max_k: usize,
    pub open_max_k: usize,
    /// Genus and degree ranges for operator-identity and kernel-equivalence
    /// brute force.
    pub ops_max_g: usize,
    pub ops_max_degree: usize,
    pub kernel_max_g: usize,
    pub kernel_max_i: usize,
    pub pair_max_g: usize,
    pub pair_max_n: usize,
    pub pair_max_degree: usize,
    /// Largest basis block the oracles may assemble.
    pub max_block_dim: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            max_g: 8,
            max_n: 3,
            trunc: 40,
            oracle_surfaces: default_oracle_surfaces(),
            closed_max_k: 6,
            open_max_k: 8,
            ops_max_g: 2,
            ops_max_degree: 10,
            kernel_max_g: 3,
            kernel_max_i: 12,
            pair_max_g: 2,
            pair_max_n: 3,
            pair_max_degree: 10,
            max_block_dim: 50_000,
        }
    }
}

/// The standard oracle test set: spheres through genus two, projective
/// planes through four crosscaps, and small punctured surfaces of both kinds.
pub fn default_oracle_surfaces() -> Vec<Surface> {
    let mut surfaces = vec![
        Surface::closed_orientable(0),
        Surface::closed_orientable(1),
        Surface::closed_orientable(2),
    ];
    for h in 1..=4 {
        surfaces.push(Surface::closed_nonorientable(h).unwrap());
    }
    surfaces.push(Surface::open_nonorientable(1, 1).unwrap());
    surfaces.push(Surface::open_nonorientable(2, 1).unwrap());
    surfaces.push(Surface::open_nonorientable(2, 2).unwrap());
    surfaces.push(Surface::open_orientable(0, 1).unwrap());
    surfaces.push(Surface::open_orientable(0, 2).unwrap());
    surfaces.push(Surface::open_orientable(1, 1).unwrap());
    surfaces.push(Surface::open_orientable(1, 2).unwrap());
    surfaces.push(Surface::open_orientable(2, 1).unwrap());
    surfaces
}

/// Series-level identities: the pair-space recurrence, its genus-stable
/// congruence, the kernel recurrence, and agreement of series coefficients
/// with the closed formulas.
pub fn series_identity_checks(max_g: usize, max_n: usize, trunc: usize) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let s = s_series::<Rat>(trunc);
    let two_t = int_series(&[(2, 1)], trunc);
    let t_sq = int_series(&[(1, 2)], trunc);

    let mut mismatches = Vec::new();
    for g in 0..max_g {
        for n in 1..=max_n {
            let lhs = v_series(g + 1, n, trunc);
            let rhs = &s
                * &(&(&v_series(g, n + 1, trunc) + &(&two_t * &v_series(g, n, trunc)))
                    + &(&t_sq * &v_series(g, n - 1, trunc)));
            if !lhs.agrees_with(&rhs) {
                mismatches.push(format!("pair-space recurrence fails at g={g}, n={n}"));
            }
        }
    }
    out.push(CheckOutcome::from_mismatches(
        "pair-space recurrence",
        mismatches,
    ));

    let mut mismatches = Vec::new();
    for g in 0..=max_g {
        // V_{g,1} = (1 + t^3)(1 - t^2) X_g modulo t^{g+2}
        let lhs = v_series(g, 1, g + 1);
        let rhs = &(&int_series(&[(1, 0), (1, 3)], g + 1) * &int_series(&[(1, 0), (-1, 2)], g + 1))
            * &x_series(g, g + 1);
        if !lhs.agrees_with(&rhs) {
            mismatches.push(format!("pair-space congruence fails at g={g}"));
        }
    }
    out.push(CheckOutcome::from_mismatches(
        "pair-space genus congruence",
        mismatches,
    ));

    let mut mismatches = Vec::new();
    for g in 1..max_g {
        let lhs = k_series(g + 1, trunc)
            .shift(1)
            .expect("positive shift")
            .truncate(trunc);
        let rhs = &(&int_series(&[(1, 0), (1, 3)], trunc)
            + &(&s * &v_series(g, 1, trunc))
                .shift(1)
                .expect("positive shift")
                .truncate(trunc))
            - &k_series(g, trunc);
        if !lhs.agrees_with(&rhs) {
            mismatches.push(format!("kernel recurrence fails at g={g}"));
        }
    }
    out.push(CheckOutcome::from_mismatches(
        "kernel genus recurrence",
        mismatches,
    ));

    let mut mismatches = Vec::new();
    for g in 0..=max_g {
        let k = k_series(g, trunc);
        for i in 0..=trunc {
            let coefficient = k.coefficient(i).expect("within truncation");
            let formula = formulas::joint_kernel_dims_formula(g, i);
            if coefficient != &Rat::from_bigint(&formula.clone().into()) {
                mismatches.push(format!(
                    "kernel series vs formula at g={g}, i={i}: series={coefficient}, formula={formula}"
                ));
            }
        }
    }
    out.push(CheckOutcome::from_mismatches(
        "kernel series matches closed formula",
        mismatches,
    ));

    let mut mismatches = Vec::new();
    for g in 0..=max_g {
        for (family, formula) in [
            (
                Family::Stable,
                formulas::betti_closed_stable as fn(usize, usize) -> BigUint,
            ),
            (Family::Diag, formulas::betti_closed_unstable_diag),
            (Family::Top, formulas::betti_closed_unstable_top),
        ] {
            let series = match master_series(g, family, trunc) {
                Ok(s) => s,
                Err(e) => {
                    mismatches.push(format!("master series {family} failed at g={g}: {e}"));
                    continue;
                }
            };
            // the top family has no degree-zero member
            let start = usize::from(family == Family::Top);
            for i in start..trunc {
                let coefficient = series.coefficient(i).expect("within truncation");
                let expected = Rat::from_bigint(&formula(g, i).into());
                if coefficient != &expected {
                    mismatches.push(format!(
                        "{family} series vs formula at g={g}, i={i}: series={coefficient}, formula={}",
                        formula(g, i)
                    ));
                }
            }
        }
    }
    out.push(CheckOutcome::from_mismatches(
        "master series match closed formulas",
        mismatches,
    ));

    out
}

/// Every surface in the grid, over all `(i, k)` with `i <= k + 1`: the
/// dispatcher equals the oracle; beyond the vanishing line the oracle is
/// zero; and each fixed degree stabilizes once the weight passes it.
pub fn oracle_grid_checks(
    surfaces: &[Surface],
    closed_max_k: usize,
    open_max_k: usize,
    max_block_dim: usize,
) -> Vec<CheckOutcome> {
    let mut equal = Vec::new();
    let mut vanishing = Vec::new();
    let mut stability = Vec::new();
    let mut euler = Vec::new();
    for &s in surfaces {
        let max_k = if matches!(s, Surface::ClosedOrientable { .. }) {
            closed_max_k
        } else {
            open_max_k
        };
        // 2k bounds the degree of any weight-k monomial, so this range sees
        // complete columns and the Euler characteristics are meaningful
        let max_i = 2 * max_k + 1;
        let oracle = match ce::betti_oracle(s, max_i, max_k, max_block_dim) {
            Ok(t) => t,
            Err(e) => {
                equal.push(format!("{s}: oracle failed: {e}"));
                continue;
            }
        };
        for k in 0..=max_k {
            for i in 0..=max_i {
                let from_oracle = oracle.get(i, k).expect("in range");
                if i <= k + 1 {
                    match betti(s, i, k) {
                        Ok((value, _)) if &value == from_oracle => {}
                        Ok((value, provenance)) => equal.push(format!(
                            "{s} (i={i}, k={k}): {provenance}={value}, oracle={from_oracle}"
                        )),
                        Err(e) => equal.push(format!("{s} (i={i}, k={k}): {e}")),
                    }
                }
                // closed surfaces may be nonzero at i = k + 1; open ones not
                let vanish_from = if s.is_closed() { k + 2 } else { k + 1 };
                if i >= vanish_from && !from_oracle.is_zero() {
                    vanishing.push(format!(
                        "{s} (i={i}, k={k}): expected 0, oracle={from_oracle}"
                    ));
                }
            }
        }
        // orientable kinds stabilize once k > i, nonorientable already at k = i
        for i in 0..=max_i {
            let stable_from = if s.is_orientable() { i + 1 } else { i };
            if stable_from >= max_k {
                continue;
            }
            let reference = oracle.get(i, stable_from).expect("in range");
            for k in stable_from..=max_k {
                let value = oracle.get(i, k).expect("in range");
                if value != reference {
                    stability.push(format!(
                        "{s} degree {i}: beta({i},{stable_from})={reference} but beta({i},{k})={value}"
                    ));
                }
            }
        }
        // per-weight Euler characteristic: alternating sums of Betti numbers
        // and of block dimensions agree
        let complex = ce::surface_ce_spec(s).expect("validated above");
        let basis = ce::enumerate_basis(&complex, max_i, max_k);
        for k in 0..=max_k {
            let mut from_betti = BigInt::zero();
            let mut from_blocks = BigInt::zero();
            for i in 0..=max_i {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                from_betti +=
                    BigInt::from(sign) * BigInt::from(oracle.get(i, k).expect("in range").clone());
                from_blocks += BigInt::from(sign) * BigInt::from(basis.dim(i, k));
            }
            if from_betti != from_blocks {
                euler.push(format!(
                    "{s} weight {k}: homology gives {from_betti}, blocks give {from_blocks}"
                ));
            }
        }
    }
    vec![
        CheckOutcome::from_mismatches("dispatcher equals oracle on the grid", equal),
        CheckOutcome::from_mismatches("vanishing beyond the diagonal band", vanishing),
        CheckOutcome::from_mismatches("stabilization in the weight", stability),
        CheckOutcome::from_mismatches("per-weight Euler characteristic", euler),
    ]
}

/// Matrix-level identities of the auxiliary operators, per genus and degree.
pub fn operator_identity_checks(
    max_g: usize,
    max_degree: usize,
    max_block_dim: usize,
) -> Vec<CheckOutcome> {
    use operators::{XAlgebra, XOperator};
    let mut mismatches = Vec::new();
    for g in 0..=max_g {
        let x = XAlgebra::new(g, max_degree + 2);
        if (0..=max_degree as i64 + 2).any(|d| x.dim(d) > max_block_dim) {
            mismatches.push(format!("genus {g}: blocks above cap"));
            continue;
        }
        let m = |op, d: usize| x.operator_matrix(op, d);
        for d in 0..=max_degree {
            // differential squares to zero
            if !m(XOperator::Differential, d + 1)
                .matmul(&m(XOperator::Differential, d))
                .unwrap()
                .is_zero()
            {
                mismatches.push(format!("differential^2 != 0 at g={g}, degree {d}"));
            }
            // differential and contraction commute
            if d >= 2 {
                let lhs = m(XOperator::Differential, d - 2).matmul(&m(XOperator::Contraction, d));
                let rhs = m(XOperator::Contraction, d + 1).matmul(&m(XOperator::Differential, d));
                if lhs.unwrap() != rhs.unwrap() {
                    mismatches.push(format!("commutation fails at g={g}, degree {d}"));
                }
            }
            if d >= 1 {
                // homotopy squares to zero
                if !m(XOperator::Homotopy, d)
                    .matmul(&m(XOperator::Homotopy, d + 1))
                    .unwrap()
                    .is_zero()
                {
                    mismatches.push(format!("homotopy^2 != 0 at g={g}, degree {d}"));
                }
                // scaled homotopy is a nullhomotopy away from the constants
                let anticommutator = m(XOperator::Differential, d - 1)
                    .matmul(&m(XOperator::ScaledHomotopy, d))
                    .unwrap()
                    .add(
                        &m(XOperator::ScaledHomotopy, d + 1)
                            .matmul(&m(XOperator::Differential, d))
                            .unwrap(),
                    )
                    .unwrap();
                if anticommutator != crate::RatMatrix::identity(x.dim(d as i64)) {
                    mismatches.push(format!("nullhomotopy identity fails at g={g}, degree {d}"));
                }
            }
        }
        // the homotopy/contraction exchange relation carries a factor-count
        // dependent scalar, so it is checked monomial by monomial
        for d in 0..=max_degree {
            for monomial in x.block(d) {
                let p = x.algebra().factor_count(monomial) as i64;
                let chain = |ops: &[XOperator]| {
                    let mut acc = vec![(Rat::one(), monomial.clone())];
                    for &op in ops {
                        acc = x.apply_linear(op, &acc);
                    }
                    acc
                };
                use XOperator::{Contraction as C, ScaledHomotopy as H};
                let lhs = chain(&[H, C, H, C]); // leftmost listed applies first
                let rhs = chain(&[C, H, C, H]);
                let expected: Vec<(Rat, _)> = if p <= 4 {
                    Vec::new()
                } else {
                    rhs.iter()
                        .map(|(c, m)| (c.clone() * Rat::new((p - 4).into(), p.into()), m.clone()))
                        .collect()
                };
                let scaled_ok = if p <= 4 {
                    lhs.is_empty() && rhs.is_empty()
                } else {
                    lhs == expected
                };
                if !scaled_ok {
                    mismatches.push(format!(
                        "homotopy/contraction relation fails at g={g} on {}",
                        x.algebra().format_monomial(monomial)
                    ));
                }
            }
        }
    }
    vec![CheckOutcome::from_mismatches(
        "operator identities",
        mismatches,
    )]
}

/// Brute-force dimensions of the kernel, pair, composite-kernel, and
/// stable-complex spaces against their series/formula counterparts.
pub fn kernel_equivalence_checks(bounds: &Bounds) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let cap = bounds.max_block_dim;

    let mut mismatches = Vec::new();
    for g in 0..=bounds.kernel_max_g {
        match operators::joint_kernel_dims(g, bounds.kernel_max_i, cap) {
            Ok(dims) => {
                for (i, &dim) in dims.iter().enumerate() {
                    let formula = formulas::joint_kernel_dims_formula(g, i);
                    if BigUint::from(dim) != formula {
                        mismatches.push(format!(
                            "kernel dims at g={g}, i={i}: oracle={dim}, formula={formula}"
                        ));
                    }
                    if (3..=g + 2).contains(&i) {
                        let simplified = formulas::joint_kernel_dims_high_genus(g, i);
                        if BigUint::from(dim) != simplified {
                            mismatches.push(format!(
                                "kernel dims at g={g}, i={i}: oracle={dim}, simplified={simplified}"
                            ));
                        }
                    }
                }
            }
            Err(e) => mismatches.push(format!("kernel oracle failed at g={g}: {e}")),
        }
    }
    out.push(CheckOutcome::from_mismatches(
        "kernel dimensions: formula vs brute force",
        mismatches,
    ));

    let mut mismatches = Vec::new();
    for g in 0..=bounds.pair_max_g {
        for n in 0..=bounds.pair_max_n {
            match operators::pair_space_dims(g, n, bounds.pair_max_degree, cap) {
                Ok(dims) => {
                    let series = v_series(g, n, bounds.pair_max_degree);
                    for (d, &dim) in dims.iter().enumerate() {
                        let expected = series.coefficient(d).expect("within truncation");
                        if &Rat::from_int(dim as i64) != expected {
                            mismatches.push(format!(
                                "pair dims at g={g}, n={n}, degree {d}: oracle={dim}, series={expected}"
                            ));
                        }
                    }
                }
                Err(e) => mismatches.push(format!("pair oracle failed at g={g}, n={n}: {e}")),
            }
        }
    }
    out.push(CheckOutcome::from_mismatches(
        "pair-space dimensions: closed form vs brute force",
        mismatches,
    ));

    let mut mismatches = Vec::new();
    for g in 0..=bounds.pair_max_g {
        let max_d = bounds.pair_max_degree;
        match operators::composite_kernel_dims(g, max_d, cap) {
            Ok(dims) => {
                // series form: [(1+t)K - 1 + t^2 X] / (t(1+t))
                let pad = max_d + 1;
                let k = k_series(g, pad);
                let x = x_series(g, pad);
                let bracket = &(&(&int_series(&[(1, 0), (1, 1)], pad) * &k) - &RatSeries::one(pad))
                    + &(&int_series(&[(1, 2)], pad) * &x);
                let series = &bracket.shift(-1).expect("vanishing constant term")
                    * &crate::series::inv_one_plus_t(max_d);
                for (d, &dim) in dims.iter().enumerate() {
                    let expected = series.coefficient(d).expect("within truncation");
                    if &Rat::from_int(dim as i64) != expected {
                        mismatches.push(format!(
                            "composite kernel at g={g}, degree {d}: oracle={dim}, series={expected}"
                        ));
                    }
                }
            }
            Err(e) => mismatches.push(format!("composite kernel failed at g={g}: {e}")),
        }
    }
    out.push(CheckOutcome::from_mismatches(
        "composite-kernel dimensions: series identity vs brute force",
        mismatches,
    ));

    let mut mismatches = Vec::new();
    for g in 0..=bounds.pair_max_g {
        let max_i = 6;
        match operators::stable_complex_dims(g, max_i, cap) {
            Ok(dims) => match master_series(g, Family::Stable, max_i) {
                Ok(series) => {
                    for (i, &dim) in dims.iter().enumerate() {
                        let expected = series.coefficient(i).expect("within truncation");
                        if &Rat::from_int(dim as i64) != expected {
                            mismatches.push(format!(
                                "stable complex at g={g}, i={i}: oracle={dim}, series={expected}"
                            ));
                        }
                    }
                }
                Err(e) => mismatches.push(format!("stable series failed at g={g}: {e}")),
            },
            Err(e) => mismatches.push(format!("stable complex failed at g={g}: {e}")),
        }
    }
    out.push(CheckOutcome::from_mismatches(
        "stable-complex homology vs stable series",
        mismatches,
    ));

    out
}

/// Run every cross-check at the given bounds.
pub fn consistency_check(bounds: &Bounds) -> Report {
    let mut report = Report::default();
    report.extend(series_identity_checks(
        bounds.max_g,
        bounds.max_n,
        bounds.trunc,
    ));
    report.extend(operator_identity_checks(
        bounds.ops_max_g,
        bounds.ops_max_degree,
        bounds.max_block_dim,
    ));
    report.extend(kernel_equivalence_checks(bounds));
    if !bounds.oracle_surfaces.is_empty() {
        report.extend(oracle_grid_checks(
            &bounds.oracle_surfaces,
            bounds.closed_max_k,
            bounds.open_max_k,
            bounds.max_block_dim,
        ));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn coeffs(s: &RatSeries, through: usize) -> Vec<Rat> {
        (0..=through)
            .map(|j| s.coefficient(j).unwrap().clone())
            .collect()
    }

    #[test]
    fn pair_series_small_cases() {
        assert_eq!(
            coeffs(&v_series(0, 1, 5), 5),
            vec![rat(1), rat(0), rat(0), rat(1), rat(0), rat(0)]
        );
        assert!(v_series(3, 0, 8).is_zero());
        assert_eq!(
            coeffs(&v_series(1, 1, 4), 4),
            vec![rat(1), rat(2), rat(2), rat(5), rat(5)]
        );
    }

    #[test]
    fn kernel_series_low_genus() {
        assert_eq!(
            coeffs(&k_series(0, 4), 4),
            vec![rat(1), rat(0), rat(0), rat(0), rat(0)]
        );
        assert_eq!(
            coeffs(&k_series(1, 3), 3),
            vec![rat(1), rat(0), rat(2), rat(1)]
        );
    }

    #[test]
    fn kernel_matches_brute_force_genus_two() {
        let dims = operators::joint_kernel_dims(2, 10, 50_000).unwrap();
        let series = k_series(2, 10);
        for (i, &dim) in dims.iter().enumerate() {
            assert_eq!(series.coefficient(i).unwrap(), &rat(dim as i64), "i = {i}");
        }
    }

    #[test]
    fn master_series_sphere() {
        let st = master_series(0, Family::Stable, 5).unwrap();
        assert_eq!(coeffs(&st, 4), vec![rat(1), rat(0), rat(0), rat(1), rat(0)]);
        let diag = master_series(0, Family::Diag, 5).unwrap();
        assert_eq!(
            coeffs(&diag, 4),
            vec![rat(1), rat(0), rat(0), rat(1), rat(0)]
        );
        let top = master_series(0, Family::Top, 5).unwrap();
        assert_eq!(
            coeffs(&top, 4),
            vec![rat(0), rat(0), rat(1), rat(0), rat(0)]
        );
    }

    #[test]
    fn master_series_torus() {
        let st = master_series(1, Family::Stable, 4).unwrap();
        assert_eq!(coeffs(&st, 4), vec![rat(1), rat(2), rat(3), rat(5), rat(7)]);
    }

    #[test]
    fn betti_dispatch() {
        let (v, p) = betti(Surface::closed_orientable(6), 43, 50).unwrap();
        assert_eq!(v, "66446126460".parse().unwrap());
        assert_eq!(p, Provenance::Series);

        let (v, _) = betti(Surface::closed_orientable(1), 1, 1).unwrap();
        assert_eq!(v, BigUint::from(2u32));

        let (v, _) = betti(Surface::closed_orientable(0), 2, 1).unwrap();
        assert_eq!(v, BigUint::from(1u32));

        let (v, _) = betti(Surface::closed_orientable(3), 9, 4).unwrap();
        assert_eq!(v, BigUint::zero()); // i > k + 1

        let (v, p) = betti(Surface::closed_nonorientable(1).unwrap(), 3, 3).unwrap();
        assert_eq!(v, BigUint::from(1u32));
        assert_eq!(p, Provenance::Formula);

        let (v, _) = betti(Surface::open_orientable(0, 1).unwrap(), 1, 1).unwrap();
        assert_eq!(v, BigUint::zero());
    }

    #[test]
    fn betti_table_closed_orientable_matches_pointwise() {
        let table = betti_table(Surface::closed_orientable(2), 5, 5).unwrap();
        for k in 0..=5 {
            for i in 0..=5 {
                let (value, _) = betti(Surface::closed_orientable(2), i, k).unwrap();
                assert_eq!(table.get(i, k), Some(&value), "(i, k) = ({i}, {k})");
            }
        }
    }

    #[test]
    fn stable_table_spot_values() {
        let rows = stable_table(6, 43).unwrap();
        assert_eq!(rows[43][6], "66446126460".parse().unwrap());
        assert_eq!(rows[3][2], BigUint::from(16u32));
        assert_eq!(rows[4][3], BigUint::from(90u32));
        assert_eq!(rows[0][0], BigUint::from(1u32));
    }

    #[test]
    fn polynomial_fit_genus_one() {
        let p = polynomial_fit(1, Family::Stable, Parity::Odd).unwrap();
        assert_eq!(p.coeffs, vec![rat(-1), rat(2)]); // 2i - 1
        assert_eq!(p.display_fraction(), "2i-1");

        let q = polynomial_fit(1, Family::Top, Parity::Even).unwrap();
        assert_eq!(q.coeffs, vec![rat(0), Rat::new(1.into(), 2.into())]); // i/2
        assert_eq!(q.display_fraction(), "i/2");
    }

    #[test]
    fn polynomial_fit_genus_two_diag_even() {
        let q = polynomial_fit(2, Family::Diag, Parity::Even).unwrap();
        // (3i^3 + 4i^2 + 28i)/16
        assert_eq!(
            q.coeffs,
            vec![
                rat(0),
                Rat::new(28.into(), 16.into()),
                Rat::new(4.into(), 16.into()),
                Rat::new(3.into(), 16.into()),
            ]
        );
        assert_eq!(q.display_fraction(), "(3i^3+4i^2+28i)/16");
    }

    #[test]
    fn polynomial_fit_genus_zero_is_zero() {
        let p = polynomial_fit(0, Family::Stable, Parity::Odd).unwrap();
        assert_eq!(p.coeffs, vec![rat(0)]);
        assert_eq!(p.display_fraction(), "0");
    }

    #[test]
    fn polynomial_fit_genus_five_stable_even_leading_coefficient() {
        let q = polynomial_fit(5, Family::Stable, Parity::Even).unwrap();
        assert_eq!(q.degree(), 9);
        assert_eq!(q.coeffs.last().unwrap(), &Rat::new(1.into(), 368640.into()));
    }

    #[test]
    fn series_identities_hold_at_small_bounds() {
        let checks = series_identity_checks(4, 2, 16);
        for c in &checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn consistency_report_is_green_at_tiny_bounds() {
        let bounds = Bounds {
            max_g: 3,
            max_n: 2,
            trunc: 12,
            oracle_surfaces: vec![
                Surface::closed_orientable(1),
                Surface::closed_nonorientable(2).unwrap(),
                Surface::open_orientable(1, 1).unwrap(),
            ],
            closed_max_k: 4,
            open_max_k: 4,
            ops_max_g: 1,
            ops_max_degree: 6,
            kernel_max_g: 2,
            kernel_max_i: 8,
            pair_max_g: 1,
            pair_max_n: 2,
            pair_max_degree: 8,
            max_block_dim: 50_000,
        };
        let report = consistency_check(&bounds);
        for entry in &report.entries {
            assert!(entry.passed, "{}: {}", entry.name, entry.detail);
        }
        assert!(report.all_passed());
    }
}

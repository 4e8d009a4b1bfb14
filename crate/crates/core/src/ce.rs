//! The weighted Chevalley–Eilenberg complex of a surface and the brute-force
//! Betti-number oracle.
//!
//! For every finite-type surface the complex is a free graded-commutative
//! algebra on explicit generators, with a coderivation differential determined
//! by a bracket on the weight-one generators. Homology in degree `i` and
//! weight `k` equals the `i`-th rational Betti number of the configuration
//! space of `k` unordered points. Everything here is exact, so this module
//! grounds the closed formulas and the series pipeline.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use num_traits::Zero;

use crate::algebra::{FreeGcAlgebra, Generator, Monomial};
use crate::linalg::{homology_dim, LinalgError};
use crate::scalar::Scalar;
use crate::surface::{GradedIndex, Surface, SurfaceError};
use crate::table::{BettiTable, Provenance};
use crate::{Rat, RatMatrix};

/// A complex generator; exterior exactly when its degree is odd.
pub type GeneratorSpec = Generator;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CeError {
    #[error("invalid surface: {0}")]
    InvalidSurface(#[from] SurfaceError),
    #[error("basis block {index} has dimension {dim}, above the cap {cap}")]
    BlockTooLarge {
        index: GradedIndex,
        dim: usize,
        cap: usize,
    },
    #[error("linear algebra failure: {0}")]
    Linalg(#[from] LinalgError),
}

/// Brackets between weight-one generators, keyed by sorted index pairs; each
/// value is a rational linear combination of weight-two generators.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BracketTable {
    map: BTreeMap<(usize, usize), Vec<(Rat, usize)>>,
}

impl BracketTable {
    pub fn insert(&mut self, x: usize, y: usize, value: Vec<(Rat, usize)>) {
        let key = if x <= y { (x, y) } else { (y, x) };
        self.map.insert(key, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<(Rat, usize)>)> {
        self.map.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }
}

/// Generators plus bracket table: everything needed to assemble differentials.
#[derive(Debug, Clone, PartialEq)]
pub struct CeComplex {
    pub algebra: FreeGcAlgebra,
    pub brackets: BracketTable,
}

/// Generators and brackets of the Chevalley–Eilenberg complex of a surface.
///
/// Signs follow the sign-free convention: the bracket of a sorted generator
/// pair is taken with coefficient one and all remaining signs are Koszul signs
/// of the canonical monomial order. This differs from the literal coderivation
/// signs by an even-generator change of basis, so homology is unchanged.
pub fn surface_ce_spec(s: Surface) -> Result<CeComplex, CeError> {
    s.validate()?;
    let mut gens = Vec::new();
    let mut brackets = BracketTable::default();
    match s {
        Surface::ClosedOrientable { g } => {
            gens.push(Generator::new("p", 0, 1));
            for i in 1..=g {
                gens.push(Generator::new(format!("a_{i}"), 1, 1));
                gens.push(Generator::new(format!("b_{i}"), 1, 1));
            }
            gens.push(Generator::new("v", 2, 1));
            gens.push(Generator::new("p~", 1, 2));
            for i in 1..=g {
                gens.push(Generator::new(format!("a~_{i}"), 2, 2));
                gens.push(Generator::new(format!("b~_{i}"), 2, 2));
            }
            gens.push(Generator::new("v~", 3, 2));

            let v = 2 * g + 1;
            let p_t = 2 * g + 2;
            let v_t = 4 * g + 3;
            brackets.insert(0, v, vec![(Rat::from_int(1), p_t)]);
            brackets.insert(v, v, vec![(Rat::from_int(1), v_t)]);
            for i in 0..g {
                let (a, b) = (1 + 2 * i, 2 + 2 * i);
                let (a_t, b_t) = (p_t + 1 + 2 * i, p_t + 2 + 2 * i);
                brackets.insert(a, b, vec![(Rat::from_int(1), p_t)]);
                brackets.insert(a, v, vec![(Rat::from_int(1), a_t)]);
                brackets.insert(b, v, vec![(Rat::from_int(1), b_t)]);
            }
        }
        Surface::OpenOrientable { g, n } => {
            gens.push(Generator::new("p", 0, 1));
            for i in 1..=g {
                gens.push(Generator::new(format!("a_{i}"), 1, 1));
                gens.push(Generator::new(format!("b_{i}"), 1, 1));
            }
            for s in 1..n {
                gens.push(Generator::new(format!("u_{s}"), 1, 1));
            }
            gens.push(Generator::new("p~", 1, 2));
            let p_t = 2 * g + n;
            for i in 1..=g {
                gens.push(Generator::new(format!("a~_{i}"), 2, 2));
                gens.push(Generator::new(format!("b~_{i}"), 2, 2));
            }
            for s in 1..n {
                gens.push(Generator::new(format!("u~_{s}"), 2, 2));
            }
            for i in 0..g {
                brackets.insert(1 + 2 * i, 2 + 2 * i, vec![(Rat::from_int(1), p_t)]);
            }
        }
        Surface::ClosedNonorientable { h } => {
            gens.push(Generator::new("p", 0, 1));
            for j in 1..h {
                gens.push(Generator::new(format!("u_{j}"), 1, 1));
            }
            for j in 1..h {
                gens.push(Generator::new(format!("u~_{j}"), 2, 2));
            }
            gens.push(Generator::new("v~", 3, 2));
        }
        Surface::OpenNonorientable { h, n } => {
            gens.push(Generator::new("p", 0, 1));
            for j in 1..h + n {
                gens.push(Generator::new(format!("u_{j}"), 1, 1));
            }
            for j in 1..h + n - 1 {
                gens.push(Generator::new(format!("u~_{j}"), 2, 2));
            }
        }
    }

    let complex = CeComplex {
        algebra: FreeGcAlgebra::new(gens),
        brackets,
    };
    debug_assert!(complex.brackets_are_graded());
    Ok(complex)
}

impl CeComplex {
    /// Every bracket takes weight 1 + 1 to weight 2 and lowers total degree
    /// by one in the complex grading.
    fn brackets_are_graded(&self) -> bool {
        let gens = self.algebra.generators();
        self.brackets.iter().all(|(&(x, y), value)| {
            gens[x].weight == 1
                && gens[y].weight == 1
                && value.iter().all(|&(_, z)| {
                    gens[z].weight == 2 && gens[z].degree + 1 == gens[x].degree + gens[y].degree
                })
        })
    }

    /// Image of a basis monomial under the differential: extract each
    /// unordered factor pair with its Koszul sign, replace it by its bracket,
    /// and re-sort the product. Identical even factors contribute once per
    /// unordered pair of copies, which is what the halved second derivative
    /// counts.
    pub fn differential_image(&self, m: &Monomial) -> Vec<(Rat, Monomial)> {
        let mut out = Vec::new();
        for (&(x, y), value) in self.brackets.iter() {
            let Some((c1, m1)) = self.algebra.derivative(m, x) else {
                continue;
            };
            let Some((c2, m2)) = self.algebra.derivative(&m1, y) else {
                continue;
            };
            let mut coeff = Rat::from_int(c1 * c2);
            if x == y {
                coeff /= Rat::from_int(2);
            }
            for (c, z) in value {
                let Some((sign, m3)) = self.algebra.mul_gen(&m2, *z) else {
                    continue;
                };
                out.push((coeff.clone() * Rat::from_int(sign) * c.clone(), m3));
            }
        }
        out
    }
}

/// A single `(degree, weight)` slice of the monomial basis.
#[derive(Debug, Clone)]
pub struct BasisBlock {
    pub index: GradedIndex,
    pub monomials: Vec<Monomial>,
    position: HashMap<Monomial, usize>,
}

impl BasisBlock {
    fn new(index: GradedIndex, monomials: Vec<Monomial>) -> BasisBlock {
        let position = monomials
            .iter()
            .enumerate()
            .map(|(ix, m)| (m.clone(), ix))
            .collect();
        BasisBlock {
            index,
            monomials,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn position_of(&self, m: &Monomial) -> Option<usize> {
        self.position.get(m).copied()
    }
}

/// Monomial bases for all blocks with `i <= max_i`, `k <= max_k`.
#[derive(Debug, Clone)]
pub struct Basis {
    blocks: BTreeMap<(usize, usize), BasisBlock>,
}

impl Basis {
    pub fn block(&self, i: usize, k: usize) -> Option<&BasisBlock> {
        self.blocks.get(&(i, k))
    }

    pub fn dim(&self, i: usize, k: usize) -> usize {
        self.block(i, k).map_or(0, BasisBlock::dim)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BasisBlock> {
        self.blocks.values()
    }
}

/// Enumerate the complete monomial basis of every block in range. Blocks are
/// sorted by exponent vector, so matrices are reproducible run to run.
pub fn enumerate_basis(complex: &CeComplex, max_i: usize, max_k: usize) -> Basis {
    let blocks = complex
        .algebra
        .enumerate(max_i, Some(max_k))
        .into_iter()
        .map(|((i, k), monomials)| ((i, k), BasisBlock::new(GradedIndex::new(i, k), monomials)))
        .collect();
    Basis { blocks }
}

/// Matrix of the differential from block `(i, k)` to block `(i - 1, k)` in
/// the enumerated bases.
pub fn build_differential(complex: &CeComplex, basis: &Basis, i: usize, k: usize) -> RatMatrix {
    let source_dim = basis.dim(i, k);
    if i == 0 {
        return RatMatrix::zero(0, source_dim);
    }
    let target = basis.block(i - 1, k);
    let target_dim = target.map_or(0, BasisBlock::dim);
    let mut d = RatMatrix::zero(target_dim, source_dim);
    let Some(source) = basis.block(i, k) else {
        return d;
    };
    for (col, m) in source.monomials.iter().enumerate() {
        for (coeff, image) in complex.differential_image(m) {
            if coeff.is_zero() {
                continue;
            }
            let row = target
                .and_then(|b| b.position_of(&image))
                .unwrap_or_else(|| {
                    panic!(
                        "differential image {} of {} escapes block ({}, {})",
                        complex.algebra.format_monomial(&image),
                        complex.algebra.format_monomial(m),
                        i - 1,
                        k
                    )
                });
            d.add_entry(row, col, coeff).expect("index in range");
        }
    }
    d
}

fn check_cap(basis: &Basis, cap: usize) -> Result<(), CeError> {
    for block in basis.iter() {
        if block.dim() > cap {
            return Err(CeError::BlockTooLarge {
                index: block.index,
                dim: block.dim(),
                cap,
            });
        }
    }
    Ok(())
}

/// Betti numbers `beta_i(B_k(s))` for all `i <= max_i`, `k <= max_k`, computed
/// as per-block homology dimensions of the Chevalley–Eilenberg complex.
pub fn betti_oracle(
    s: Surface,
    max_i: usize,
    max_k: usize,
    max_block_dim: usize,
) -> Result<BettiTable, CeError> {
    let complex = surface_ce_spec(s)?;
    let basis = enumerate_basis(&complex, max_i + 1, max_k);
    check_cap(&basis, max_block_dim)?;

    // The differential preserves weight, so the k-columns are independent;
    // adjacent degrees within one column share matrices.
    let columns: Vec<(usize, Vec<(usize, usize)>)> = (0..=max_k)
        .into_par_iter()
        .map(|k| {
            let mut dims = Vec::new();
            let mut d_out = build_differential(&complex, &basis, 0, k);
            for i in 0..=max_i {
                let d_in = build_differential(&complex, &basis, i + 1, k);
                let h = homology_dim(&d_out, &d_in).expect("differentials compose to zero");
                dims.push((i, h));
                d_out = d_in;
            }
            (k, dims)
        })
        .collect();

    let mut table = BettiTable::new(s);
    for (k, dims) in columns {
        for (i, h) in dims {
            table.insert(
                GradedIndex::new(i, k),
                num_bigint::BigUint::from(h),
                Provenance::Oracle,
            );
        }
    }
    Ok(table)
}

/// JSON dump of one block's basis and differential, for debugging.
pub fn block_dump_json(
    complex: &CeComplex,
    basis: &Basis,
    i: usize,
    k: usize,
) -> serde_json::Value {
    let d = build_differential(complex, basis, i, k);
    let monomials: Vec<&Monomial> = basis
        .block(i, k)
        .map(|b| b.monomials.iter().collect())
        .unwrap_or_default();
    json!({
        "index": { "i": i, "k": k },
        "generators": complex.algebra.generators(),
        "monomials": monomials,
        "rendered": monomials
            .iter()
            .map(|m| complex.algebra.format_monomial(m))
            .collect::<Vec<_>>(),
        "differential": {
            "rows": d.rows(),
            "cols": d.cols(),
            "entries": d
                .iter()
                .map(|(r, c, v)| json!([r, c, v.to_string()]))
                .collect::<Vec<_>>(),
        },
    })
}

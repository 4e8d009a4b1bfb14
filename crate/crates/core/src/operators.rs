//! The auxiliary algebra behind the closed-orientable computations: the free
//! graded-commutative algebra on `g` exterior pairs in degree 1 and `g`
//! polynomial pairs in degree 2, together with the operators acting on it.
//!
//! Brute-force dimension counts of the joint operator kernel, the constrained
//! pair space, the composite kernel, and the two-column stable complex all
//! live here; the series pipeline is checked against them.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{FreeGcAlgebra, Generator, Monomial};
use crate::linalg::LinalgError;
use crate::scalar::Scalar;
use crate::{Rat, RatMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpError {
    #[error("degree-{degree} block has dimension {dim}, above the cap {cap}")]
    BlockTooLarge {
        degree: usize,
        dim: usize,
        cap: usize,
    },
    #[error("linear algebra failure: {0}")]
    Linalg(#[from] LinalgError),
}

/// Operators on the auxiliary algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XOperator {
    /// `sum_j d/db_j d/da_j`; lowers degree by 2.
    Contraction,
    /// `sum_c c~ d/dc` over the exterior generators; raises degree by 1 and
    /// squares to zero.
    Differential,
    /// `sum_c c d/dc~`; lowers degree by 1 and squares to zero.
    Homotopy,
    /// [`Homotopy`](XOperator::Homotopy) divided by the factor count, zero on
    /// factor count zero; a cochain nullhomotopy for the differential away
    /// from the constants.
    ScaledHomotopy,
}

impl XOperator {
    pub fn degree_shift(&self) -> i64 {
        match self {
            XOperator::Contraction => -2,
            XOperator::Differential => 1,
            XOperator::Homotopy | XOperator::ScaledHomotopy => -1,
        }
    }
}

/// Genus-`g` auxiliary algebra with degree blocks enumerated through
/// `max_degree`. Exterior `a_i, b_i` sit in degree 1, polynomial
/// `a~_i, b~_i` in degree 2; generator `i < 2g` is exterior and its
/// polynomial partner is `i + 2g`.
#[derive(Debug, Clone)]
pub struct XAlgebra {
    g: usize,
    max_degree: usize,
    alg: FreeGcAlgebra,
    blocks: Vec<Vec<Monomial>>,
    position: Vec<HashMap<Monomial, usize>>,
}

impl XAlgebra {
    pub fn new(g: usize, max_degree: usize) -> XAlgebra {
        let mut gens = Vec::new();
        for i in 1..=g {
            gens.push(Generator::new(format!("a_{i}"), 1, 1));
            gens.push(Generator::new(format!("b_{i}"), 1, 1));
        }
        for i in 1..=g {
            gens.push(Generator::new(format!("a~_{i}"), 2, 2));
            gens.push(Generator::new(format!("b~_{i}"), 2, 2));
        }
        let alg = FreeGcAlgebra::new(gens);
        let mut blocks = vec![Vec::new(); max_degree + 1];
        for ((d, _), monomials) in alg.enumerate(max_degree, None) {
            blocks[d] = monomials;
        }
        let position = blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .enumerate()
                    .map(|(ix, m)| (m.clone(), ix))
                    .collect()
            })
            .collect();
        XAlgebra {
            g,
            max_degree,
            alg,
            blocks,
            position,
        }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn algebra(&self) -> &FreeGcAlgebra {
        &self.alg
    }

    /// Dimension of the degree-`d` block; degrees outside the enumerated
    /// range are empty (negative) or a caller bug (too large).
    pub fn dim(&self, degree: i64) -> usize {
        if degree < 0 {
            return 0;
        }
        let d = degree as usize;
        assert!(d <= self.max_degree, "degree {d} not enumerated");
        self.blocks[d].len()
    }

    pub fn block(&self, degree: usize) -> &[Monomial] {
        &self.blocks[degree]
    }

    /// Apply an operator to a single monomial.
    pub fn apply(&self, op: XOperator, m: &Monomial) -> Vec<(Rat, Monomial)> {
        let g = self.g;
        let mut out = Vec::new();
        match op {
            XOperator::Contraction => {
                for j in 0..g {
                    let (a, b) = (2 * j, 2 * j + 1);
                    let Some((c1, m1)) = self.alg.derivative(m, a) else {
                        continue;
                    };
                    let Some((c2, m2)) = self.alg.derivative(&m1, b) else {
                        continue;
                    };
                    out.push((Rat::from_int(c1 * c2), m2));
                }
            }
            XOperator::Differential => {
                for c in 0..2 * g {
                    let Some((s, m1)) = self.alg.derivative(m, c) else {
                        continue;
                    };
                    let (s2, m2) = self.alg.mul_gen(&m1, c + 2 * g).expect("even generator");
                    out.push((Rat::from_int(s * s2), m2));
                }
            }
            XOperator::Homotopy => {
                for c in 0..2 * g {
                    let Some((e, m1)) = self.alg.derivative(m, c + 2 * g) else {
                        continue;
                    };
                    let Some((s, m2)) = self.alg.mul_gen(&m1, c) else {
                        continue;
                    };
                    out.push((Rat::from_int(e * s), m2));
                }
            }
            XOperator::ScaledHomotopy => {
                let count = self.alg.factor_count(m);
                if count == 0 {
                    return Vec::new();
                }
                let inv = Rat::from_int(1) / Rat::from_int(count as i64);
                for (c, m2) in self.apply(XOperator::Homotopy, m) {
                    out.push((c * inv.clone(), m2));
                }
            }
        }
        out
    }

    /// Apply an operator to a linear combination, combining like terms.
    pub fn apply_linear(&self, op: XOperator, terms: &[(Rat, Monomial)]) -> Vec<(Rat, Monomial)> {
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (c, m) in terms {
            for (c2, m2) in self.apply(op, m) {
                let entry = acc.entry(m2).or_insert_with(|| Rat::from_int(0));
                *entry += c.clone() * c2;
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !num_traits::Zero::is_zero(c))
            .map(|(m, c)| (c, m))
            .collect()
    }

    /// Exact matrix of the operator restricted to the degree-`degree` block.
    pub fn operator_matrix(&self, op: XOperator, degree: usize) -> RatMatrix {
        let target = degree as i64 + op.degree_shift();
        let rows = self.dim(target);
        let cols = self.dim(degree as i64);
        let mut out = RatMatrix::zero(rows, cols);
        if rows == 0 || cols == 0 {
            return out;
        }
        let lookup = &self.position[target as usize];
        for (col, m) in self.blocks[degree].iter().enumerate() {
            for (coeff, image) in self.apply(op, m) {
                let row = lookup[&image];
                out.add_entry(row, col, coeff).expect("index in range");
            }
        }
        out
    }

    /// Iterated matrix of `op^n` starting from the degree-`degree` block
    /// (`n = 0` is the identity). Blocks in negative degrees are empty, so
    /// steps passing through them are zero maps of the right shape.
    pub fn operator_power(&self, op: XOperator, n: usize, degree: i64) -> RatMatrix {
        let mut acc = RatMatrix::identity(self.dim(degree));
        let mut d = degree;
        for _ in 0..n {
            let next = d + op.degree_shift();
            let step = if d < 0 {
                RatMatrix::zero(self.dim(next), self.dim(d))
            } else {
                self.operator_matrix(op, d as usize)
            };
            acc = step.matmul(&acc).expect("composable by construction");
            d = next;
        }
        acc
    }

    fn check_cap(&self, cap: usize) -> Result<(), OpError> {
        for (degree, block) in self.blocks.iter().enumerate() {
            if block.len() > cap {
                return Err(OpError::BlockTooLarge {
                    degree,
                    dim: block.len(),
                    cap,
                });
            }
        }
        Ok(())
    }
}

/// Convenience wrapper building the algebra just for one matrix.
pub fn operator_matrix(g: usize, op: XOperator, degree: usize) -> RatMatrix {
    let reach = degree as i64 + op.degree_shift().max(0);
    let x = XAlgebra::new(g, reach as usize);
    x.operator_matrix(op, degree)
}

/// Graded dimensions of the joint kernel of the differential and the
/// contraction, for degrees `0..=max_i`.
pub fn joint_kernel_dims(g: usize, max_i: usize, cap: usize) -> Result<Vec<usize>, OpError> {
    let x = XAlgebra::new(g, max_i + 1);
    x.check_cap(cap)?;
    (0..=max_i)
        .into_par_iter()
        .map(|i| {
            let diff = x.operator_matrix(XOperator::Differential, i);
            let contraction = x.operator_matrix(XOperator::Contraction, i);
            Ok(diff.stack(&contraction)?.nullity())
        })
        .collect()
}

/// Graded dimensions of the space of pairs `(q, r)` with `q` in degree `d`,
/// `r` three degrees lower, subject to `C^n q = D C^{n-1} r` and `C^n r = 0`
/// (`C` the contraction, `D` the differential). By convention the `n = 0`
/// space is zero.
pub fn pair_space_dims(
    g: usize,
    n: usize,
    max_degree: usize,
    cap: usize,
) -> Result<Vec<usize>, OpError> {
    if n == 0 {
        return Ok(vec![0; max_degree + 1]);
    }
    let x = XAlgebra::new(g, max_degree);
    x.check_cap(cap)?;
    (0..=max_degree as i64)
        .into_par_iter()
        .map(|d| {
            let dim_q = x.dim(d);
            let dim_r = x.dim(d - 3);
            if dim_q + dim_r == 0 {
                return Ok(0);
            }
            // rows: the two conditions, in the degrees where they land
            let c_n_q = contraction_power(&x, n, d);
            let c_n1_r = contraction_power(&x, n - 1, d - 3);
            let d_c_n1_r = compose_from(
                &x,
                XOperator::Differential,
                &c_n1_r,
                d - 3 - 2 * (n as i64 - 1),
            );
            let c_n_r = contraction_power(&x, n, d - 3);

            let top = hstack(&c_n_q, &d_c_n1_r.scale(&-Rat::from_int(1)))?;
            let bottom = hstack(&RatMatrix::zero(c_n_r.rows(), dim_q), &c_n_r)?;
            let system = top.stack(&bottom)?;
            Ok(system.nullity())
        })
        .collect()
}

fn contraction_power(x: &XAlgebra, n: usize, degree: i64) -> RatMatrix {
    x.operator_power(XOperator::Contraction, n, degree)
}

/// Post-compose `inner` (whose codomain is the degree-`inner_target` block)
/// with one application of `op`.
fn compose_from(x: &XAlgebra, op: XOperator, inner: &RatMatrix, inner_target: i64) -> RatMatrix {
    let step = if inner_target < 0 {
        RatMatrix::zero(x.dim(inner_target + op.degree_shift()), x.dim(inner_target))
    } else {
        x.operator_matrix(op, inner_target as usize)
    };
    step.matmul(inner).expect("composable by construction")
}

fn hstack(left: &RatMatrix, right: &RatMatrix) -> Result<RatMatrix, OpError> {
    let rows = left.rows().max(right.rows());
    let mut out = RatMatrix::zero(rows, left.cols() + right.cols());
    for (r, c, v) in left.iter() {
        out.add_entry(r, c, v.clone()).map_err(OpError::from)?;
    }
    for (r, c, v) in right.iter() {
        out.add_entry(r, c + left.cols(), v.clone())
            .map_err(OpError::from)?;
    }
    Ok(out)
}

/// Homology dimensions of the two-column stable complex on `X + X[3]`, whose
/// differential has components `C^2: X -> X[3]`, `DC: X -> X`, and
/// `-DC: X[3] -> X[3]`.
pub fn stable_complex_dims(g: usize, max_i: usize, cap: usize) -> Result<Vec<usize>, OpError> {
    let x = XAlgebra::new(g, max_i + 1);
    x.check_cap(cap)?;
    let d_st = |d: i64| -> Result<RatMatrix, OpError> {
        let dim_r = x.dim(d - 3);
        let dc_q = compose_from(
            &x,
            XOperator::Differential,
            &contraction_power(&x, 1, d),
            d - 2,
        );
        let c2_q = contraction_power(&x, 2, d);
        let dc_r = compose_from(
            &x,
            XOperator::Differential,
            &contraction_power(&x, 1, d - 3),
            d - 5,
        );
        // target (degree d-1) splits as X_{d-1} + X_{d-4}
        let top = hstack(&dc_q, &RatMatrix::zero(x.dim(d - 1), dim_r))?;
        let bottom = hstack(&c2_q, &dc_r.scale(&-Rat::from_int(1)))?;
        top.stack(&bottom).map_err(OpError::from)
    };
    let mut out = Vec::with_capacity(max_i + 1);
    let mut outgoing = d_st(0)?;
    for i in 0..=max_i as i64 {
        let incoming = d_st(i + 1)?;
        let total = x.dim(i) + x.dim(i - 3);
        out.push(total - outgoing.rank() - incoming.rank());
        outgoing = incoming;
    }
    Ok(out)
}

/// Graded dimensions of the kernel of the composite `differential after
/// contraction` on the auxiliary algebra.
pub fn composite_kernel_dims(g: usize, max_i: usize, cap: usize) -> Result<Vec<usize>, OpError> {
    let x = XAlgebra::new(g, max_i);
    x.check_cap(cap)?;
    (0..=max_i as i64)
        .into_par_iter()
        .map(|d| {
            let dc = compose_from(
                &x,
                XOperator::Differential,
                &contraction_power(&x, 1, d),
                d - 2,
            );
            Ok(dc.nullity())
        })
        .collect()
}

//! Free graded-commutative algebras on a finite list of bigraded generators.
//!
//! A generator is exterior exactly when its homological degree is odd;
//! even-degree generators are polynomial. Monomials are exponent vectors over
//! a fixed generator order, and every sign in the library comes from counting
//! odd-generator transpositions against that order.

use std::collections::BTreeMap;

use serde::Serialize;

/// A single generator with homological degree and weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
    pub weight: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: usize, weight: usize) -> Generator {
        Generator {
            name: name.into(),
            degree,
            weight,
        }
    }

    /// Exterior generators square to zero.
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Exponent vector over the algebra's generator list.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGcAlgebra {
    gens: Vec<Generator>,
}

impl FreeGcAlgebra {
    pub fn new(gens: Vec<Generator>) -> FreeGcAlgebra {
        debug_assert!(
            gens.iter().all(|g| g.degree + g.weight > 0),
            "a generator in degree 0 and weight 0 makes bases infinite"
        );
        FreeGcAlgebra { gens }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn one(&self) -> Monomial {
        vec![0; self.gens.len()]
    }

    pub fn degree(&self, m: &Monomial) -> usize {
        m.iter()
            .zip(&self.gens)
            .map(|(&e, g)| e as usize * g.degree)
            .sum()
    }

    pub fn weight(&self, m: &Monomial) -> usize {
        m.iter()
            .zip(&self.gens)
            .map(|(&e, g)| e as usize * g.weight)
            .sum()
    }

    /// Total number of factors (the "polynomial degree" of a monomial).
    pub fn factor_count(&self, m: &Monomial) -> usize {
        m.iter().map(|&e| e as usize).sum()
    }

    /// Number of odd factors strictly before the block of generator `idx`
    /// when the monomial is written in canonical order.
    pub fn odd_factors_before(&self, m: &Monomial, idx: usize) -> usize {
        m.iter()
            .zip(&self.gens)
            .take(idx)
            .filter(|(_, g)| g.is_odd())
            .map(|(&e, _)| e as usize)
            .sum()
    }

    /// Left formal derivative by generator `idx`: returns the scalar factor
    /// and the reduced monomial, or `None` if the generator is absent. The
    /// scalar is the exponent for polynomial generators and the Koszul sign
    /// for exterior ones.
    pub fn derivative(&self, m: &Monomial, idx: usize) -> Option<(i64, Monomial)> {
        let e = m[idx];
        if e == 0 {
            return None;
        }
        let mut out = m.clone();
        out[idx] -= 1;
        let coeff = if self.gens[idx].is_odd() {
            if self.odd_factors_before(m, idx).is_multiple_of(2) {
                1
            } else {
                -1
            }
        } else {
            e as i64
        };
        Some((coeff, out))
    }

    /// Multiply by generator `idx` from the left, re-sorting into canonical
    /// order. Returns `None` when an exterior generator squares to zero.
    pub fn mul_gen(&self, m: &Monomial, idx: usize) -> Option<(i64, Monomial)> {
        let gen = &self.gens[idx];
        if gen.is_odd() && m[idx] > 0 {
            return None;
        }
        let sign = if gen.is_odd() && self.odd_factors_before(m, idx) % 2 == 1 {
            -1
        } else {
            1
        };
        let mut out = m.clone();
        out[idx] += 1;
        Some((sign, out))
    }

    /// All monomials with degree at most `max_degree` and, if given, weight at
    /// most `max_weight`, grouped into `(degree, weight)` blocks. Each block
    /// is sorted by exponent vector so bases are reproducible.
    pub fn enumerate(
        &self,
        max_degree: usize,
        max_weight: Option<usize>,
    ) -> BTreeMap<(usize, usize), Vec<Monomial>> {
        if max_weight.is_none() {
            assert!(
                self.gens.iter().all(|g| g.degree > 0),
                "unbounded weight needs strictly positive degrees"
            );
        }
        let mut blocks = BTreeMap::new();
        let mut current = self.one();
        self.enumerate_rec(0, 0, 0, max_degree, max_weight, &mut current, &mut blocks);
        for block in blocks.values_mut() {
            block.sort();
        }
        blocks
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_rec(
        &self,
        idx: usize,
        degree: usize,
        weight: usize,
        max_degree: usize,
        max_weight: Option<usize>,
        current: &mut Monomial,
        blocks: &mut BTreeMap<(usize, usize), Vec<Monomial>>,
    ) {
        if idx == self.gens.len() {
            blocks
                .entry((degree, weight))
                .or_default()
                .push(current.clone());
            return;
        }
        let gen = &self.gens[idx];
        let max_exp = if gen.is_odd() { 1 } else { u32::MAX };
        let mut e = 0u32;
        loop {
            let d = degree + e as usize * gen.degree;
            let w = weight + e as usize * gen.weight;
            if d > max_degree || max_weight.is_some_and(|mw| w > mw) {
                break;
            }
            current[idx] = e;
            self.enumerate_rec(idx + 1, d, w, max_degree, max_weight, current, blocks);
            if e == max_exp || (gen.degree == 0 && gen.weight == 0) {
                break;
            }
            e += 1;
        }
        current[idx] = 0;
    }

    /// Render a monomial like `p^2*a_1*v`; the empty monomial is `1`.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (e, g) in m.iter().zip(&self.gens) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exterior_pair() -> FreeGcAlgebra {
        FreeGcAlgebra::new(vec![
            Generator::new("a", 1, 1),
            Generator::new("b", 1, 1),
            Generator::new("c", 2, 1),
        ])
    }

    #[test]
    fn grading_of_monomials() {
        let alg = exterior_pair();
        let m = vec![1, 1, 2];
        assert_eq!(alg.degree(&m), 6);
        assert_eq!(alg.weight(&m), 4);
        assert_eq!(alg.factor_count(&m), 4);
        assert_eq!(alg.format_monomial(&m), "a*b*c^2");
        assert_eq!(alg.format_monomial(&alg.one()), "1");
    }

    #[test]
    fn derivative_signs() {
        let alg = exterior_pair();
        // d/db passes the odd factor a
        assert_eq!(alg.derivative(&vec![1, 1, 0], 1), Some((-1, vec![1, 0, 0])));
        assert_eq!(alg.derivative(&vec![1, 1, 0], 0), Some((1, vec![0, 1, 0])));
        // polynomial derivative carries the exponent
        assert_eq!(alg.derivative(&vec![0, 0, 3], 2), Some((3, vec![0, 0, 2])));
        assert_eq!(alg.derivative(&vec![0, 1, 0], 0), None);
    }

    #[test]
    fn multiplication_signs() {
        let alg = exterior_pair();
        // b * a = -a*b
        assert_eq!(alg.mul_gen(&vec![1, 0, 0], 1), Some((-1, vec![1, 1, 0])));
        assert_eq!(alg.mul_gen(&vec![0, 1, 0], 0), Some((1, vec![1, 1, 0])));
        // exterior square vanishes
        assert_eq!(alg.mul_gen(&vec![1, 0, 0], 0), None);
        // even generators commute freely
        assert_eq!(alg.mul_gen(&vec![1, 1, 1], 2), Some((1, vec![1, 1, 2])));
    }

    #[test]
    fn enumeration_matches_hand_count() {
        let alg = exterior_pair();
        let blocks = alg.enumerate(4, None);
        // degree 2: {ab, c}
        assert_eq!(blocks[&(2, 2)], vec![vec![1, 1, 0]]);
        assert_eq!(blocks[&(2, 1)], vec![vec![0, 0, 1]]);
        // degree 4: {abc, c^2}
        assert_eq!(blocks[&(4, 3)], vec![vec![1, 1, 1]]);
        assert_eq!(blocks[&(4, 2)], vec![vec![0, 0, 2]]);
    }

    #[test]
    fn weight_cap_bounds_degree_zero_generators() {
        let alg = FreeGcAlgebra::new(vec![Generator::new("p", 0, 1), Generator::new("v", 2, 1)]);
        let blocks = alg.enumerate(2, Some(3));
        assert_eq!(blocks[&(0, 3)], vec![vec![3, 0]]);
        assert_eq!(blocks[&(2, 3)], vec![vec![2, 1]]);
        assert!(!blocks.contains_key(&(0, 4)));
    }
}

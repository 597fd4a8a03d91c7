//! Finite graded-commutative rings with a Kähler class, standing in for the
//! de Rham cohomology of a compact Kähler manifold.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{integer, Rational};

/// Graded ring `⊕_{j=0}^{2n} R^j`, each `R^j` with a fixed basis; degree 0
/// is spanned by the unit.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteKahlerRing {
    name: String,
    dims: Vec<usize>,
    /// `(i, j) -> table[a][b]` = coordinates of `x^i_a · x^j_b` in `R^{i+j}`.
    products: BTreeMap<(usize, usize), Vec<Vec<Vec<Rational>>>>,
    kahler: Vec<Rational>,
}

impl FiniteKahlerRing {
    /// Ring with the given dimensions; only unit products are set.
    pub fn new(name: impl Into<String>, dims: Vec<usize>) -> Result<Self> {
        if dims.len().is_multiple_of(2) || dims[0] != 1 {
            return Err(Error::Model(
                "ring needs dims h^0..h^{2n} with h^0 = 1".into(),
            ));
        }
        let mut ring = Self {
            name: name.into(),
            kahler: vec![integer(0); dims.get(2).copied().unwrap_or(0)],
            dims,
            products: BTreeMap::new(),
        };
        for j in 0..ring.dims.len() {
            let d = ring.dims[j];
            let unit_left = vec![(0..d).map(|b| unit_vec(d, b)).collect()];
            let unit_right = (0..d).map(|a| vec![unit_vec(d, a)]).collect();
            ring.products.insert((0, j), unit_left);
            ring.products.insert((j, 0), unit_right);
        }
        Ok(ring)
    }

    /// Sets `x^i_a · x^j_b` and, by graded commutativity,
    /// `x^j_b · x^i_a = (-1)^{ij} x^i_a · x^j_b`.
    pub fn set_product(&mut self, i: usize, a: usize, j: usize, b: usize, value: Vec<Rational>) -> Result<()> {
        let t = i + j;
        if t >= self.dims.len() || a >= self.dims[i] || b >= self.dims[j] || value.len() != self.dims[t] {
            return Err(Error::Model(format!("product x^{i}_{a} x^{j}_{b} out of range")));
        }
        let sign = if (i * j).is_multiple_of(2) { integer(1) } else { integer(-1) };
        let swapped: Vec<Rational> = value.iter().map(|v| v * &sign).collect();
        self.entry(i, j)[a][b] = value;
        self.entry(j, i)[b][a] = swapped;
        Ok(())
    }

    fn entry(&mut self, i: usize, j: usize) -> &mut Vec<Vec<Vec<Rational>>> {
        let (di, dj, dt) = (self.dims[i], self.dims[j], self.dims[i + j]);
        self.products
            .entry((i, j))
            .or_insert_with(|| vec![vec![vec![integer(0); dt]; dj]; di])
    }

    pub fn with_kahler_class(mut self, class: Vec<Rational>) -> Result<Self> {
        if class.len() != self.dims.get(2).copied().unwrap_or(0) {
            return Err(Error::Model("Kähler class must live in degree 2".into()));
        }
        self.kahler = class;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Complex dimension `n` of the modeled manifold.
    pub fn half_degree(&self) -> usize {
        (self.dims.len() - 1) / 2
    }

    pub fn kahler_class(&self) -> &[Rational] {
        &self.kahler
    }

    pub fn multiply(&self, i: usize, x: &[Rational], j: usize, y: &[Rational]) -> Vec<Rational> {
        let t = i + j;
        let dt = self.dims.get(t).copied().unwrap_or(0);
        let mut out = vec![integer(0); dt];
        let Some(table) = self.products.get(&(i, j)) else {
            return out;
        };
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(&table[a][b]) {
                    *o += xa * yb * c;
                }
            }
        }
        out
    }

    /// Left multiplication by a degree-`i` element as a map `R^j → R^{i+j}`.
    pub fn left_multiplication(&self, i: usize, x: &[Rational], j: usize) -> Matrix<Rational> {
        let cols: Vec<Vec<Rational>> = (0..self.dims[j])
            .map(|b| self.multiply(i, x, j, &unit_vec(self.dims[j], b)))
            .collect();
        Matrix::from_columns(self.dims.get(i + j).copied().unwrap_or(0), &cols)
    }

    /// `[ω]^k: R^{n-k} → R^{n+k}`.
    pub fn lefschetz_power(&self, k: usize) -> Matrix<Rational> {
        let n = self.half_degree();
        let mut acc = Matrix::identity(self.dims[n - k]);
        for step in 0..k {
            let deg = n - k + 2 * step;
            acc = self.left_multiplication(2, &self.kahler, deg).mul(&acc);
        }
        acc
    }

    /// Graded commutativity, associativity on basis triples and self Hard
    /// Lefschetz.
    pub fn validate(&self) -> Result<()> {
        let top = self.dims.len();
        for i in 0..top {
            for j in 0..top - i {
                for a in 0..self.dims[i] {
                    for b in 0..self.dims[j] {
                        let xa = unit_vec(self.dims[i], a);
                        let yb = unit_vec(self.dims[j], b);
                        let ab = self.multiply(i, &xa, j, &yb);
                        let ba = self.multiply(j, &yb, i, &xa);
                        let sign = if (i * j).is_multiple_of(2) { integer(1) } else { integer(-1) };
                        if ab.iter().zip(&ba).any(|(u, v)| *u != v * &sign) {
                            return Err(Error::Model(format!(
                                "{}: product of x^{i}_{a} and x^{j}_{b} is not graded commutative",
                                self.name
                            )));
                        }
                        for l in 0..top - i - j {
                            for c in 0..self.dims[l] {
                                let zc = unit_vec(self.dims[l], c);
                                let left = self.multiply(i + j, &ab, l, &zc);
                                let right = self.multiply(i, &xa, j + l, &self.multiply(j, &yb, l, &zc));
                                if left != right {
                                    return Err(Error::Model(format!("{}: product is not associative", self.name)));
                                }
                            }
                        }
                    }
                }
            }
        }
        let n = self.half_degree();
        for k in 0..=n {
            let lk = self.lefschetz_power(k);
            let (src, dst) = (self.dims[n - k], self.dims[n + k]);
            if src != dst || lk.rank() != src {
                return Err(Error::Model(format!(
                    "{}: Kähler class fails Hard Lefschetz at k = {k}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// A point: `(1)`.
    pub fn point() -> Self {
        Self::new("point", vec![1]).expect("valid")
    }

    /// `ℂP^1`: `(1, 0, 1)`, Kähler class the generator of degree 2.
    pub fn projective_line() -> Self {
        Self::new("cp1", vec![1, 0, 1])
            .and_then(|r| r.with_kahler_class(vec![integer(1)]))
            .expect("valid")
    }

    /// `ℂP^2`: `(1, 0, 1, 0, 1)` with `x · x = x²`.
    pub fn projective_plane() -> Self {
        let mut r = Self::new("cp2", vec![1, 0, 1, 0, 1]).expect("valid");
        r.set_product(2, 0, 2, 0, vec![integer(1)]).expect("in range");
        r.with_kahler_class(vec![integer(1)]).expect("valid")
    }

    /// Real two-torus: `(1, 2, 1)` with `a · b = v`.
    pub fn torus() -> Self {
        let mut r = Self::new("torus", vec![1, 2, 1]).expect("valid");
        r.set_product(1, 0, 1, 1, vec![integer(1)]).expect("in range");
        r.with_kahler_class(vec![Rational::one()]).expect("valid")
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "point" => Some(Self::point()),
            "cp1" | "cp1-ring" => Some(Self::projective_line()),
            "cp2" => Some(Self::projective_plane()),
            "torus" => Some(Self::torus()),
            _ => None,
        }
    }
}

fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![integer(0); n];
    v[i] = integer(1);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_rings_validate() {
        for r in [
            FiniteKahlerRing::point(),
            FiniteKahlerRing::projective_line(),
            FiniteKahlerRing::projective_plane(),
            FiniteKahlerRing::torus(),
        ] {
            r.validate().unwrap();
        }
    }

    #[test]
    fn zero_kahler_class_fails_lefschetz() {
        let r = FiniteKahlerRing::new("bad", vec![1, 0, 1]).unwrap();
        assert!(r.validate().is_err());
    }

    #[test]
    fn torus_product_is_alternating() {
        let r = FiniteKahlerRing::torus();
        let a = unit_vec(2, 0);
        let b = unit_vec(2, 1);
        assert_eq!(r.multiply(1, &b, 1, &a), vec![integer(-1)]);
        assert_eq!(r.multiply(1, &a, 1, &a), vec![integer(0)]);
    }
}

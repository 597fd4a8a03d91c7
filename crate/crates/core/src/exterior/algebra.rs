use std::fmt;

use crate::exterior::{FormVector, GradedOperator};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Strictly increasing index tuple in `0..r`, stored as a bit set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(u32);

impl MultiIndex {
    pub fn from_indices(indices: &[usize]) -> Option<Self> {
        let mut mask = 0u32;
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return None;
            }
        }
        for &i in indices {
            if i >= 32 {
                return None;
            }
            mask |= 1 << i;
        }
        Some(Self(mask))
    }

    pub fn from_mask(mask: u32) -> Self {
        Self(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let idx: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "e^{}", idx.join(""))
    }
}

/// Sign of `e^a ∧ e^b` relative to `e^(a ∪ b)`, or `None` when they overlap.
pub fn wedge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    // count pairs (i in a, j in b) with i > j
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> j).count_ones();
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Multi-index bases of `Λ^k` of a rank-`r` dual fiber, `k = 0..=r`, each
/// enumerated lexicographically.
#[derive(Debug, Clone)]
pub struct ExteriorAlgebra {
    rank: usize,
    by_degree: Vec<Vec<MultiIndex>>,
    position: Vec<usize>,
}

impl ExteriorAlgebra {
    /// Panics for `rank > 16`; desk-scale models stay far below that.
    pub fn new(rank: usize) -> Self {
        assert!(rank <= 16, "fiber rank {rank} too large");
        let mut by_degree = vec![Vec::new(); rank + 1];
        let mut combo = Vec::new();
        fn rec(start: usize, rank: usize, combo: &mut Vec<usize>, out: &mut Vec<Vec<MultiIndex>>) {
            out[combo.len()].push(MultiIndex::from_indices(combo).unwrap());
            for i in start..rank {
                combo.push(i);
                rec(i + 1, rank, combo, out);
                combo.pop();
            }
        }
        rec(0, rank, &mut combo, &mut by_degree);
        for (k, list) in by_degree.iter_mut().enumerate() {
            list.sort_by_key(|m| m.indices());
            debug_assert_eq!(list.len(), binomial(rank, k));
        }
        let mut position = vec![usize::MAX; 1 << rank];
        for list in &by_degree {
            for (p, m) in list.iter().enumerate() {
                position[m.0 as usize] = p;
            }
        }
        Self {
            rank,
            by_degree,
            position,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self, k: usize) -> usize {
        self.by_degree.get(k).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.rank).map(|k| self.dim(k)).collect()
    }

    pub fn basis(&self, k: usize) -> &[MultiIndex] {
        &self.by_degree[k]
    }

    pub fn position(&self, m: MultiIndex) -> usize {
        self.position[m.0 as usize]
    }

    pub fn top(&self) -> MultiIndex {
        MultiIndex(((1u64 << self.rank) - 1) as u32)
    }

    pub fn complement(&self, m: MultiIndex) -> MultiIndex {
        MultiIndex(self.top().0 & !m.0)
    }

    /// `s` with `e^I ∧ e^(I^c) = s · e^top`.
    pub fn complement_sign(&self, m: MultiIndex) -> i64 {
        wedge_sign(m.0, self.complement(m).0).unwrap()
    }

    pub fn zero_form<S: Scalar>(&self, k: usize) -> FormVector<S> {
        FormVector::new(k, vec![S::zero(); self.dim(k)])
    }

    pub fn basis_form<S: Scalar>(&self, m: MultiIndex) -> FormVector<S> {
        let mut f = self.zero_form(m.degree());
        f.coeffs[self.position(m)] = S::one();
        f
    }

    /// Form from `(indices, coefficient)` pairs; indices 0-based and
    /// increasing.
    pub fn form_from_terms<S: Scalar>(&self, k: usize, terms: &[(&[usize], S)]) -> FormVector<S> {
        let mut f: FormVector<S> = self.zero_form(k);
        for (idx, c) in terms {
            let m = MultiIndex::from_indices(idx).expect("increasing indices");
            assert_eq!(m.degree(), k);
            let p = self.position(m);
            f.coeffs[p] = f.coeffs[p].clone() + c.clone();
        }
        f
    }

    pub fn wedge<S: Scalar>(&self, a: &FormVector<S>, b: &FormVector<S>) -> FormVector<S> {
        let k = a.degree + b.degree;
        let mut out = self.zero_form(k);
        if k > self.rank {
            return out;
        }
        for (ia, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ma = self.by_degree[a.degree][ia];
            for (ib, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let mb = self.by_degree[b.degree][ib];
                if let Some(s) = wedge_sign(ma.0, mb.0) {
                    let p = self.position[(ma.0 | mb.0) as usize];
                    let term = ca.clone() * cb.clone() * S::from_i64(s);
                    out.coeffs[p] = out.coeffs[p].clone() + term;
                }
            }
        }
        out
    }

    /// `α ∧ ... ∧ α` (`n` factors); the unit form for `n = 0`.
    pub fn wedge_power<S: Scalar>(&self, alpha: &FormVector<S>, n: usize) -> FormVector<S> {
        let mut acc = self.basis_form(MultiIndex(0));
        for _ in 0..n {
            acc = self.wedge(alpha, &acc);
        }
        acc
    }

    /// Left multiplication `β ↦ α ∧ β` as a graded operator of shift `deg α`.
    pub fn wedge_operator<S: Scalar>(&self, alpha: &FormVector<S>) -> GradedOperator<S> {
        let shift = alpha.degree as isize;
        GradedOperator::from_fn(self.dims(), shift, |k| {
            let target = k + alpha.degree;
            let mut m: Matrix<S> = Matrix::zeros(self.dim(target), self.dim(k));
            if target > self.rank {
                return m;
            }
            for (j, &mb) in self.by_degree[k].iter().enumerate() {
                for (ia, ca) in alpha.coeffs.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    let ma = self.by_degree[alpha.degree][ia];
                    if let Some(s) = wedge_sign(ma.0, mb.0) {
                        let i = self.position[(ma.0 | mb.0) as usize];
                        m[(i, j)] = m[(i, j)].clone() + ca.clone() * S::from_i64(s);
                    }
                }
            }
            m
        })
    }

    /// Interior product `ι_{e_i}` (shift `-1`): removes `e^i` with the sign
    /// of its position.
    pub fn contraction<S: Scalar>(&self, i: usize) -> GradedOperator<S> {
        GradedOperator::from_fn(self.dims(), -1, |k| {
            let rows = if k == 0 { 0 } else { self.dim(k - 1) };
            let mut m = Matrix::zeros(rows, self.dim(k));
            for (j, &mb) in self.by_degree[k].iter().enumerate() {
                if !mb.contains(i) {
                    continue;
                }
                let before = (mb.0 & ((1u32 << i) - 1)).count_ones();
                let rest = MultiIndex(mb.0 & !(1 << i));
                let sign = if before.is_multiple_of(2) { 1 } else { -1 };
                m[(self.position(rest), j)] = S::from_i64(sign);
            }
            m
        })
    }

    /// `Λ^k A` for an endomorphism `A` of `Λ^1` (columns are images of the
    /// basis covectors): `e^J ↦ A e^{j_1} ∧ ... ∧ A e^{j_k}`. Its entries
    /// are the `k x k` minors of `A`.
    pub fn multiplicative_extension<S: Scalar>(&self, a: &Matrix<S>) -> GradedOperator<S> {
        assert_eq!((a.rows(), a.cols()), (self.rank, self.rank));
        GradedOperator::from_fn(self.dims(), 0, |k| self.minor_matrix(a, k))
    }

    /// `(I, J) ↦ det a[I, J]` on degree-`k` multi-indices.
    pub fn minor_matrix<S: Scalar>(&self, a: &Matrix<S>, k: usize) -> Matrix<S> {
        let basis = &self.by_degree[k];
        let idx: Vec<Vec<usize>> = basis.iter().map(|m| m.indices()).collect();
        Matrix::from_fn(basis.len(), basis.len(), |i, j| {
            if k == 0 {
                S::one()
            } else {
                a.select(&idx[i], &idx[j]).determinant()
            }
        })
    }

    /// Unique derivation extending an endomorphism `A` of `Λ^1`:
    /// `e^J ↦ Σ_b e^{j_1} ∧ ... ∧ A e^{j_b} ∧ ... ∧ e^{j_k}`.
    pub fn derivation_extension<S: Scalar>(&self, a: &Matrix<S>) -> GradedOperator<S> {
        assert_eq!((a.rows(), a.cols()), (self.rank, self.rank));
        GradedOperator::from_fn(self.dims(), 0, |k| {
            let mut m: Matrix<S> = Matrix::zeros(self.dim(k), self.dim(k));
            for (col, &mj) in self.by_degree[k].iter().enumerate() {
                for (b, jb) in mj.indices().into_iter().enumerate() {
                    let rest = MultiIndex(mj.0 & !(1 << jb));
                    for i in 0..self.rank {
                        let c = &a[(i, jb)];
                        if c.is_zero() || rest.contains(i) {
                            continue;
                        }
                        // e^{j_1..j_{b-1}} ∧ e^i ∧ e^{j_{b+1}..}: move e^i out
                        // to the front past b factors, then back in place.
                        let lead = if b % 2 == 0 { 1 } else { -1 };
                        let s = lead * wedge_sign(1 << i, rest.0).unwrap();
                        let row = self.position[(rest.0 | (1 << i)) as usize];
                        m[(row, col)] = m[(row, col)].clone() + c.clone() * S::from_i64(s);
                    }
                }
            }
            m
        })
    }

    /// Degree-one derivation determined by its values on covectors:
    /// column `i` of `d1` is `d e^i` in the degree-2 basis, and
    /// `d(e^{j_1} ∧ ... ∧ e^{j_k}) = Σ_b (-1)^{b-1} e^{j_1} ∧ .. ∧ d e^{j_b} ∧ .. ∧ e^{j_k}`.
    pub fn derivation_from_covectors<S: Scalar>(&self, d1: &Matrix<S>) -> GradedOperator<S> {
        assert_eq!((d1.rows(), d1.cols()), (self.dim(2), self.rank));
        GradedOperator::from_fn(self.dims(), 1, |k| {
            let rows = if k < self.rank { self.dim(k + 1) } else { 0 };
            let mut m: Matrix<S> = Matrix::zeros(rows, self.dim(k));
            if k == self.rank {
                return m;
            }
            for (col, &mj) in self.by_degree[k].iter().enumerate() {
                for (b, jb) in mj.indices().into_iter().enumerate() {
                    let left = mj.0 & ((1u32 << jb) - 1);
                    let right = mj.0 & !((1u32 << (jb + 1)) - 1);
                    let lead = if b % 2 == 0 { 1 } else { -1 };
                    for (row2, &pq) in self.by_degree[2].iter().enumerate() {
                        let c = &d1[(row2, jb)];
                        if c.is_zero() {
                            continue;
                        }
                        let Some(s1) = wedge_sign(left, pq.0) else { continue };
                        let Some(s2) = wedge_sign(left | pq.0, right) else { continue };
                        let row = self.position[(left | pq.0 | right) as usize];
                        m[(row, col)] = m[(row, col)].clone() + c.clone() * S::from_i64(lead * s1 * s2);
                    }
                }
            }
            m
        })
    }

    /// Coefficient of `e^top` in a top-degree form.
    pub fn top_coefficient<S: Scalar>(&self, f: &FormVector<S>) -> S {
        if f.degree == self.rank {
            f.coeffs[0].clone()
        } else {
            S::zero()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, Rational};

    type Q = Rational;

    #[test]
    fn enumeration_is_lexicographic_with_binomial_sizes() {
        let ext = ExteriorAlgebra::new(4);
        assert_eq!(ext.dims(), vec![1, 4, 6, 4, 1]);
        let deg2: Vec<Vec<usize>> = ext.basis(2).iter().map(|m| m.indices()).collect();
        assert_eq!(
            deg2,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        for k in 0..=4 {
            for (p, m) in ext.basis(k).iter().enumerate() {
                assert_eq!(ext.position(*m), p);
            }
        }
    }

    #[test]
    fn koszul_sign_of_e1_on_e2() {
        // e^1 ∧ e^2 = +e^12 but acting on e^2 with α = e^1 in r=2 we get
        // e^1 ∧ e^2; α = e^2 acting on e^1 gives -e^12.
        let ext = ExteriorAlgebra::new(2);
        let e1: FormVector<Q> = ext.form_from_terms(1, &[(&[0], integer(1))]);
        let e2: FormVector<Q> = ext.form_from_terms(1, &[(&[1], integer(1))]);
        let l1 = ext.wedge_operator(&e1);
        assert_eq!(l1.block(1)[(0, 1)], integer(1));
        let l2 = ext.wedge_operator(&e2);
        assert_eq!(l2.block(1)[(0, 0)], integer(-1));
        assert_eq!(l2.block(1)[(0, 1)], integer(0));
    }

    #[test]
    fn unit_form_acts_as_identity() {
        let ext = ExteriorAlgebra::new(3);
        let one: FormVector<Q> = ext.basis_form(MultiIndex::from_indices(&[]).unwrap());
        let op = ext.wedge_operator(&one);
        for k in 0..=3 {
            assert_eq!(*op.block(k), Matrix::identity(ext.dim(k)));
        }
    }

    #[test]
    fn contraction_removes_with_position_sign() {
        let ext = ExteriorAlgebra::new(3);
        let iota2 = ext.contraction::<Q>(1);
        // ι_{e_2}(e^1 ∧ e^2) = -e^1
        let e12 = ext.position(MultiIndex::from_indices(&[0, 1]).unwrap());
        assert_eq!(iota2.block(2)[(0, e12)], integer(-1));
    }

    #[test]
    fn derivation_extension_of_identity_counts_degree() {
        let ext = ExteriorAlgebra::new(4);
        let d = ext.derivation_extension(&Matrix::<Q>::identity(4));
        for k in 0..=4 {
            assert_eq!(*d.block(k), Matrix::identity(ext.dim(k)).scale(&integer(k as i64)));
        }
    }

    #[test]
    fn complement_signs() {
        let ext = ExteriorAlgebra::new(3);
        // e^2 ∧ e^13 = -e^123
        let m = MultiIndex::from_indices(&[1]).unwrap();
        assert_eq!(ext.complement_sign(m), -1);
    }
}

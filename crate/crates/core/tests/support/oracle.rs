//! Brute-force Chevalley–Eilenberg oracle written against the invariant
//! formula for the differential, sharing nothing with the engine beyond
//! the bracket of basis vectors.

use algebroid_core::algebroid::Presentation;
use algebroid_core::Rational;
use num_traits::{One, Zero};

/// Subsets of `0..r` of size `k`, lexicographic.
fn subsets(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            go(i + 1, r, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, r, k, &mut Vec::new(), &mut out);
    out
}

/// `η(v_1, …, v_k)` for a form given by increasing-index coefficients,
/// with `e^I(e_I) = 1`, evaluated on arbitrary vectors by multilinearity.
fn evaluate(r: usize, k: usize, coeffs: &[Rational], vectors: &[Vec<Rational>]) -> Rational {
    let basis = subsets(r, k);
    let mut total = Rational::zero();
    for (c, idx) in coeffs.iter().zip(&basis) {
        if c.is_zero() {
            continue;
        }
        total += c.clone() * determinant(idx, vectors);
    }
    total
}

/// `det [v_a(idx_b)]` by Leibniz expansion.
fn determinant(idx: &[usize], vectors: &[Vec<Rational>]) -> Rational {
    let k = idx.len();
    let mut total = Rational::zero();
    for perm in permutations(k) {
        let mut term = Rational::from_integer(sign(&perm).into());
        for (a, &b) in perm.iter().enumerate() {
            term *= vectors[a][idx[b]].clone();
        }
        total += term;
    }
    total
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

fn unit(r: usize, i: usize) -> Vec<Rational> {
    (0..r).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
}

/// `dη(X_0, …, X_k) = Σ_{i<j} (-1)^{i+j} η([X_i, X_j], X_0, …, X̂_i, …, X̂_j, …, X_k)`
/// over a point base, as a matrix `Λ^k → Λ^{k+1}`.
pub fn oracle_differential(p: &Presentation, k: usize) -> Vec<Vec<Rational>> {
    let r = p.rank();
    let src = subsets(r, k);
    let dst = subsets(r, k + 1);
    let mut m = vec![vec![Rational::zero(); src.len()]; dst.len()];
    for (col, _) in src.iter().enumerate() {
        let coeffs: Vec<Rational> = (0..src.len()).map(|c| if c == col { Rational::one() } else { Rational::zero() }).collect();
        for (row, j) in dst.iter().enumerate() {
            let xs: Vec<Vec<Rational>> = j.iter().map(|&a| unit(r, a)).collect();
            let mut value = Rational::zero();
            for a in 0..=k {
                for b in a + 1..=k {
                    let mut args = vec![p.bracket(&xs[a], &xs[b])];
                    args.extend(xs.iter().enumerate().filter(|(c, _)| *c != a && *c != b).map(|(_, v)| v.clone()));
                    let s = if (a + b) % 2 == 0 { Rational::one() } else { -Rational::one() };
                    value += s * evaluate(r, k, &coeffs, &args);
                }
            }
            m[row][col] = value;
        }
    }
    m
}

/// Plain fraction Gaussian elimination.
pub fn oracle_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, piv);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone() / m[rank][c].clone();
                for cc in 0..cols {
                    let v = m[rank][cc].clone() * f.clone();
                    m[r][cc] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn oracle_betti(p: &Presentation) -> Vec<usize> {
    let r = p.rank();
    let ranks: Vec<usize> = (0..=r)
        .map(|k| if k == r { 0 } else { oracle_rank(oracle_differential(p, k)) })
        .collect();
    (0..=r)
        .map(|k| subsets(r, k).len() - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] })
        .collect()
}


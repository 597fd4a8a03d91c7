//! Dimension-level b-geometry: Mazzeo–Melrose and the Hard Lefschetz
//! obstruction it forces.

use crate::error::{Error, Result};

/// Betti numbers of a b-manifold `(M, Z)` with `Z` a hypersurface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BManifoldSpec {
    pub manifold: Vec<usize>,
    pub hypersurface: Vec<usize>,
}

impl BManifoldSpec {
    pub fn new(manifold: Vec<usize>, hypersurface: Vec<usize>) -> Result<Self> {
        if manifold.first().copied().unwrap_or(0) == 0 {
            return Err(Error::Model("b^0(M) must be at least 1".into()));
        }
        if !hypersurface.is_empty() && hypersurface.iter().any(|&b| b > 0) && hypersurface[0] == 0 {
            return Err(Error::Model("b^0(Z) must be at least 1 for nonempty Z".into()));
        }
        if hypersurface.len() > manifold.len().saturating_sub(1) && hypersurface.iter().any(|&b| b > 0) {
            return Err(Error::Model("Z must have codimension one in M".into()));
        }
        Ok(Self {
            manifold,
            hypersurface,
        })
    }

    /// `M = S²`, `Z = S¹` (the equator).
    pub fn sphere() -> Self {
        Self::new(vec![1, 0, 1], vec![1, 1]).expect("valid")
    }

    /// `M = T²`, `Z = S¹`.
    pub fn torus() -> Self {
        Self::new(vec![1, 2, 1], vec![1, 1]).expect("valid")
    }
}

/// `ᵇH^k(M) ≅ H^k(M) ⊕ H^{k-1}(Z)`, as dimensions.
pub fn mazzeo_melrose(spec: &BManifoldSpec) -> Vec<usize> {
    let n = spec.manifold.len();
    (0..n)
        .map(|k| {
            let z = if k == 0 { 0 } else { spec.hypersurface.get(k - 1).copied().unwrap_or(0) };
            spec.manifold[k] + z
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionVerdict {
    Impossible,
    Inconclusive,
}

impl ObstructionVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Impossible => "impossible",
            Self::Inconclusive => "dimension test inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionStep {
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub verdict: ObstructionVerdict,
    /// Source smaller than target: `[L]^k` cannot even be onto.
    pub not_surjective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub m: usize,
    pub dims: Vec<usize>,
    pub steps: Vec<ObstructionStep>,
    pub verdict: ObstructionVerdict,
}

/// Compares `dim ᵇH^{m-k}` with `dim ᵇH^{m+k}` for each `k`; any mismatch
/// rules out Hard Lefschetz.
pub fn b_hard_lefschetz_obstruction(spec: &BManifoldSpec, m: usize) -> Result<ObstructionReport> {
    let dims = mazzeo_melrose(spec);
    if dims.len() < 2 * m + 1 {
        return Err(Error::Model(format!(
            "half rank {m} needs b-dims up to degree {}, have {}",
            2 * m,
            dims.len().saturating_sub(1)
        )));
    }
    let steps: Vec<ObstructionStep> = (0..=m)
        .map(|k| {
            let source_dim = dims[m - k];
            let target_dim = dims[m + k];
            ObstructionStep {
                k,
                source_dim,
                target_dim,
                verdict: if source_dim == target_dim {
                    ObstructionVerdict::Inconclusive
                } else {
                    ObstructionVerdict::Impossible
                },
                not_surjective: source_dim < target_dim,
            }
        })
        .collect();
    let verdict = if steps.iter().any(|s| s.verdict == ObstructionVerdict::Impossible) {
        ObstructionVerdict::Impossible
    } else {
        ObstructionVerdict::Inconclusive
    };
    Ok(ObstructionReport {
        m,
        dims,
        steps,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_dims_and_obstruction() {
        let s = BManifoldSpec::sphere();
        assert_eq!(mazzeo_melrose(&s), vec![1, 1, 2]);
        let r = b_hard_lefschetz_obstruction(&s, 1).unwrap();
        assert_eq!(r.verdict, ObstructionVerdict::Impossible);
        assert_eq!(r.steps[0].verdict, ObstructionVerdict::Inconclusive);
        assert_eq!(r.steps[1].verdict, ObstructionVerdict::Impossible);
        assert!(r.steps[1].not_surjective);
    }

    #[test]
    fn empty_hypersurface_and_torus() {
        let s = BManifoldSpec::new(vec![1, 2, 1], vec![]).unwrap();
        assert_eq!(mazzeo_melrose(&s), vec![1, 2, 1]);
        assert_eq!(b_hard_lefschetz_obstruction(&s, 1).unwrap().verdict, ObstructionVerdict::Inconclusive);
        assert_eq!(mazzeo_melrose(&BManifoldSpec::torus()), vec![1, 3, 2]);
    }

    #[test]
    fn total_is_additive() {
        let s = BManifoldSpec::new(vec![1, 0, 3, 0, 1], vec![1, 2, 2, 1]).unwrap();
        let out = mazzeo_melrose(&s);
        assert_eq!(out.iter().sum::<usize>(), 5 + 6);
    }
}

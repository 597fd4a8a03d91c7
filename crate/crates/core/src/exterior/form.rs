use std::fmt;

use num_traits::Zero;

use crate::exterior::ExteriorAlgebra;
use crate::scalar::{Rational, Scalar};

/// Homogeneous form of a fixed degree, as coefficients on the
/// lexicographic multi-index basis of that degree.
#[derive(Debug, Clone, PartialEq)]
pub struct FormVector<S> {
    pub degree: usize,
    pub coeffs: Vec<S>,
}

impl<S: Scalar> FormVector<S> {
    pub fn new(degree: usize, coeffs: Vec<S>) -> Self {
        Self { degree, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.degree, self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        Self::new(
            self.degree,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    /// Readable expansion such as `e^13 + 2 e^24`; `0` for the zero form.
    pub fn display(&self, ext: &ExteriorAlgebra) -> String {
        let mut terms = Vec::new();
        for (c, m) in self.coeffs.iter().zip(ext.basis(self.degree)) {
            if c.is_zero() {
                continue;
            }
            let coeff = c.to_string();
            terms.push(if coeff == "1" {
                m.to_string()
            } else if coeff == "-1" {
                format!("-{m}")
            } else {
                format!("({coeff}) {m}")
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl FormVector<Rational> {
    pub fn complexify(&self) -> FormVector<crate::scalar::GaussianRational> {
        FormVector::new(self.degree, self.coeffs.iter().map(crate::scalar::complexify).collect())
    }
}

impl<S: Scalar> fmt::Display for FormVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|x| x.to_string()).collect();
        write!(f, "deg {} [{}]", self.degree, c.join(", "))
    }
}

//! Graded F₂-dimensions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Maslov grading ↦ dimension, without zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDim(BTreeMap<i64, u64>);

impl GradedDim {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, u64)>>(pairs: I) -> Self {
        let mut g = Self::new();
        for (d, n) in pairs {
            g.add(d, n);
        }
        g
    }

    /// `F_{(d)}`.
    pub fn point(d: i64) -> Self {
        Self::from_pairs([(d, 1)])
    }

    /// `(F_{(0)} ⊕ F_{(-1)})^{⊗n}`.
    pub fn exterior_pair_power(n: usize) -> Self {
        let mut g = Self::point(0);
        for _ in 0..n {
            g = g.tensor(&Self::from_pairs([(0, 1), (-1, 1)]));
        }
        g
    }

    pub fn add(&mut self, degree: i64, dim: u64) {
        if dim > 0 {
            *self.0.entry(degree).or_insert(0) += dim;
        }
    }

    pub fn merge(&mut self, o: &GradedDim) {
        for (&d, &n) in &o.0 {
            self.add(d, n);
        }
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ_d (-1)^d dim_d`.
    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .map(|(&d, &n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn shift(&self, by: i64) -> GradedDim {
        Self::from_pairs(self.0.iter().map(|(&d, &n)| (d + by, n)))
    }

    pub fn tensor(&self, o: &GradedDim) -> GradedDim {
        let mut g = GradedDim::new();
        for (&a, &x) in &self.0 {
            for (&b, &y) in &o.0 {
                g.add(a + b, x * y);
            }
        }
        g
    }

    /// Entries with the highest degree first.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().rev().map(|(&d, &n)| (d, n))
    }

    pub fn as_map(&self) -> &BTreeMap<i64, u64> {
        &self.0
    }

    /// `F(0)`, `F(-2) + 2F(-3)`, or `0`.
    pub fn pretty(&self) -> String {
        if self.is_empty() {
            return "0".into();
        }
        self.iter()
            .map(|(d, n)| {
                if n == 1 {
                    format!("F({d})")
                } else {
                    format!("{n}F({d})")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for GradedDim {
    /// `{-2:1, -3:2}`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, n)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}:{n}")?;
        }
        write!(f, "}}")
    }
}

//! Linking matrices of surgeries on cable links.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cables::CableLink;
use crate::error::{Error, Result};

/// Surgery coefficients `p_1, …, p_r` on a link whose components pairwise link `l` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryFraming {
    pub p: Vec<i64>,
    pub l: i64,
}

impl SurgeryFraming {
    pub fn new(p: Vec<i64>, l: i64) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::Precondition("at least one surgery coefficient".into()));
        }
        Ok(SurgeryFraming { p, l })
    }

    /// The linking matrix: `p_i` on the diagonal, `l` elsewhere.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let r = self.p.len();
        (0..r)
            .map(|i| (0..r).map(|j| if i == j { self.p[i] } else { self.l }).collect())
            .collect()
    }

    /// `Π(p_i - l) + l·Σ_i Π_{j≠i}(p_j - l)`.
    pub fn det_lambda(&self) -> i128 {
        let d: Vec<i128> = self.p.iter().map(|&p| (p - self.l) as i128).collect();
        let full: i128 = d.iter().product();
        let partial: i128 = (0..d.len())
            .map(|i| {
                d.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &x)| x)
                    .product::<i128>()
            })
            .sum();
        full + self.l as i128 * partial
    }

    /// Every `p_i > l`, the cone where surgery is known to give an L-space.
    pub fn is_positive_cone(&self) -> bool {
        self.p.iter().all(|&p| p > self.l)
    }
}

/// `S³_{n/m}(K) # L(m,n) # L(p_2 - mn, 1) # … # L(p_r - mn, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryDescription {
    pub knot: String,
    /// Surgery slope `numerator/denominator` on the companion.
    pub slope: (i64, i64),
    /// Lens spaces `L(p, q)` in order.
    pub lens_spaces: Vec<(i64, i64)>,
}

impl fmt::Display for SurgeryDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.slope;
        if den == 1 {
            write!(f, "S³_{{{num}}}({})", self.knot)?;
        } else {
            write!(f, "S³_{{{num}/{den}}}({})", self.knot)?;
        }
        for (p, q) in &self.lens_spaces {
            write!(f, " # L({p},{q})")?;
        }
        Ok(())
    }
}

/// Connected-sum description of the `(mn, p_2, …, p_r)` surgery.
pub fn surgery_description(link: &CableLink, p: &[i64]) -> Result<SurgeryDescription> {
    if p.len() != link.r() {
        return Err(Error::Precondition(format!(
            "expected {} coefficients, got {}",
            link.r(),
            p.len()
        )));
    }
    if p[0] != link.l() {
        return Err(Error::Precondition(format!(
            "first coefficient must equal mn = {}, got {}",
            link.l(),
            p[0]
        )));
    }
    let mut lens_spaces = vec![(link.m(), link.n())];
    lens_spaces.extend(p[1..].iter().map(|&pi| (pi - link.l(), 1)));
    Ok(SurgeryDescription {
        knot: link.knot().to_string(),
        slope: (link.n(), link.m()),
        lens_spaces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cables::classify;
    use crate::knots::LSpaceKnot;
    use proptest::prelude::*;

    /// Cofactor expansion along the first row.
    fn det_direct(a: &[Vec<i64>]) -> i128 {
        let n = a.len();
        if n == 1 {
            return a[0][0] as i128;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] as i128 * det_direct(&minor)
            })
            .sum()
    }

    #[test]
    fn examples() {
        assert_eq!(SurgeryFraming::new(vec![5], 3).unwrap().det_lambda(), 5);
        let f = SurgeryFraming::new(vec![7, 9, 11], 6).unwrap();
        assert_eq!(f.det_lambda(), det_direct(&f.matrix()));
        let f = SurgeryFraming::new(vec![6, 9, 11], 6).unwrap();
        assert_eq!(f.det_lambda(), 6 * 3 * 5);
        let f = SurgeryFraming::new(vec![7, 7], 6).unwrap();
        assert!(f.is_positive_cone());
        assert!(f.det_lambda() > 0);
        assert!(!SurgeryFraming::new(vec![6, 7], 6).unwrap().is_positive_cone());
        assert!(SurgeryFraming::new(vec![], 6).is_err());
    }

    #[test]
    fn descriptions() {
        let u = LSpaceKnot::unknot();
        let t = LSpaceKnot::trefoil();
        let d = surgery_description(&classify(&u, 2, 2, 3).unwrap(), &[6, 7]).unwrap();
        assert_eq!(d.to_string(), "S³_{3/2}(unknot) # L(2,3) # L(1,1)");
        let d = surgery_description(&classify(&t, 2, 2, 3).unwrap(), &[6, 8]).unwrap();
        assert_eq!(d.to_string(), "S³_{3/2}(trefoil) # L(2,3) # L(2,1)");
        let d = surgery_description(&classify(&t, 3, 1, 1).unwrap(), &[1, 4, 5]).unwrap();
        assert_eq!(d.to_string(), "S³_{1}(trefoil) # L(1,1) # L(3,1) # L(4,1)");
        assert!(matches!(
            surgery_description(&classify(&t, 2, 2, 3).unwrap(), &[7, 8]),
            Err(Error::Precondition(_))
        ));
    }

    proptest! {
        #[test]
        fn det_matches_expansion(p in prop::collection::vec(-20i64..20, 1..=6), l in -10i64..10) {
            let f = SurgeryFraming::new(p, l).unwrap();
            prop_assert_eq!(f.det_lambda(), det_direct(&f.matrix()));
        }

        #[test]
        fn two_by_two(p1 in -50i64..50, p2 in -50i64..50, l in -20i64..20) {
            let f = SurgeryFraming::new(vec![p1, p2], l).unwrap();
            prop_assert_eq!(f.det_lambda().abs(), (p1 as i128 * p2 as i128 - (l as i128).pow(2)).abs());
        }

        #[test]
        fn nonnegative_on_closed_cone(d in prop::collection::vec(0i64..8, 1..=6), l in 0i64..10) {
            let f = SurgeryFraming::new(d.iter().map(|x| x + l).collect(), l).unwrap();
            prop_assert!(f.det_lambda() >= 0);
        }
    }
}

//! The exterior algebra `ℰ_r = Λ(z_1, …, z_r)` over F₂, optionally tensored with `F[U]`.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::complex::{ChainComplexF2, ComplexBuilder};
use crate::algebra::f2::BitVec;

/// An F₂-linear combination of monomials `U^a z_S`, stored as `(S as bitmask, a)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExtElement {
    terms: BTreeSet<(u32, u32)>,
}

impl ExtElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(mask: u32) -> Self {
        Self::with_u(mask, 0)
    }

    pub fn with_u(mask: u32, u: u32) -> Self {
        let mut e = Self::zero();
        e.toggle(mask, u);
        e
    }

    /// The generator `z_i` (0-based).
    pub fn z(i: usize) -> Self {
        Self::monomial(1 << i)
    }

    pub fn toggle(&mut self, mask: u32, u: u32) {
        if !self.terms.remove(&(mask, u)) {
            self.terms.insert((mask, u));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.terms.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &ExtElement) -> ExtElement {
        let mut e = self.clone();
        for (m, u) in o.terms() {
            e.toggle(m, u);
        }
        e
    }

    /// Product in `ℰ_r[U]`; over F₂ the sign of a reordering is irrelevant.
    pub fn wedge(&self, o: &ExtElement) -> ExtElement {
        let mut e = ExtElement::zero();
        for (a, ua) in self.terms() {
            for (b, ub) in o.terms() {
                if a & b == 0 {
                    e.toggle(a | b, ua + ub);
                }
            }
        }
        e
    }

    /// Coordinates over all `2^r` monomials, ignoring powers of `U`.
    pub fn to_bitvec(&self, r: usize) -> BitVec {
        let mut v = BitVec::zeros(1 << r);
        for (m, _) in self.terms() {
            v.flip(m as usize);
        }
        v
    }

    pub fn from_bitvec(v: &BitVec) -> ExtElement {
        let mut e = ExtElement::zero();
        for m in v.ones() {
            e.toggle(m as u32, 0);
        }
        e
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, u)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if u > 0 {
                write!(f, "U^{u}")?;
            }
            if m == 0 {
                write!(f, "1")?;
            }
            for b in 0..32 {
                if m >> b & 1 == 1 {
                    write!(f, "z{}", b + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// `∂(z_{a_1}⋯z_{a_k}) = Σ_j z_{a_1}⋯ẑ_{a_j}⋯z_{a_k}`.
pub fn cube_diff(x: &ExtElement) -> ExtElement {
    let mut out = ExtElement::zero();
    for (m, u) in x.terms() {
        let mut rest = m;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            out.toggle(m ^ bit, u);
            rest ^= bit;
        }
    }
    out
}

/// `∂^{(b)}`: the cube differential, multiplied by `U` on monomials of degree at most `b`.
pub fn truncated_diff(b: u32, x: &ExtElement) -> ExtElement {
    let mut out = ExtElement::zero();
    for (m, u) in x.terms() {
        let bump = u32::from(m.count_ones() <= b);
        let mut rest = m;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            out.toggle(m ^ bit, u + bump);
            rest ^= bit;
        }
    }
    out
}

/// Products `Π_{j∈J}(z_1 - z_j)` over subsets `J ⊆ {2, …, r}` of size `d`.
pub fn reduced_basis_degree(r: usize, d: usize) -> Vec<ExtElement> {
    if r == 0 {
        return if d == 0 { vec![ExtElement::one()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for j in 0u32..1 << (r - 1) {
        if j.count_ones() as usize != d {
            continue;
        }
        let mut e = ExtElement::one();
        for b in 0..r - 1 {
            if j >> b & 1 == 1 {
                e = e.wedge(&ExtElement::z(0).add(&ExtElement::z(b + 1)));
            }
        }
        out.push(e);
    }
    out
}

/// Basis of `ℰ_r^red`, by degree.
pub fn reduced_basis(r: usize) -> Vec<ExtElement> {
    (0..r.max(1)).flat_map(|d| reduced_basis_degree(r, d)).collect()
}

/// `(ℰ_r, ∂)`: one generator per monomial, degree `|S|`.
pub fn cube_complex(r: usize) -> ChainComplexF2 {
    let mut b = ComplexBuilder::new();
    let ids: Vec<usize> = (0u32..1 << r)
        .map(|m| b.add_generator(0, m.count_ones() as i64))
        .collect();
    for m in 0u32..1 << r {
        for (t, _) in cube_diff(&ExtElement::monomial(m)).terms() {
            b.add_boundary(ids[m as usize], ids[t as usize]).unwrap();
        }
    }
    b.build().unwrap()
}

/// Grading key of `U^a z_S` that `∂^{(b)}` preserves: `-2a - 2·min(|S|, b)`.
pub fn truncated_key(mask: u32, u: u32, b: u32) -> i64 {
    -2 * i64::from(u) - 2 * i64::from(mask.count_ones().min(b))
}

/// `(ℰ_r[U]/U^n, ∂^{(b)})`, graded by `truncated_key` and exterior degree.
pub fn truncated_complex(r: usize, b: u32, n: u32) -> ChainComplexF2 {
    let mut builder = ComplexBuilder::new();
    let idx = |m: u32, u: u32| (u as usize) * (1 << r) + m as usize;
    let mut ids = vec![0usize; (n as usize) << r];
    for u in 0..n {
        for m in 0u32..1 << r {
            ids[idx(m, u)] = builder.add_generator(truncated_key(m, u, b), m.count_ones() as i64);
        }
    }
    for u in 0..n {
        for m in 0u32..1 << r {
            for (t, tu) in truncated_diff(b, &ExtElement::with_u(m, u)).terms() {
                if tu < n {
                    builder.add_boundary(ids[idx(m, u)], ids[idx(t, tu)]).unwrap();
                }
            }
        }
    }
    builder.build().unwrap()
}

/// Keys of `truncated_complex(r, b, n)` untouched by the truncation.
pub fn truncated_certified(key: i64, n: u32) -> bool {
    key > -2 * (i64::from(n) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::f2::{kernel, rank};

    fn binom(n: usize, k: usize) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
    }

    #[test]
    fn cube_diff_examples() {
        assert_eq!(cube_diff(&ExtElement::z(0)), ExtElement::one());
        let z12 = ExtElement::monomial(0b11);
        assert_eq!(cube_diff(&z12), ExtElement::z(0).add(&ExtElement::z(1)));
        let z123 = ExtElement::monomial(0b111);
        let prod = ExtElement::z(1)
            .add(&ExtElement::z(0))
            .wedge(&ExtElement::z(2).add(&ExtElement::z(1)));
        assert_eq!(cube_diff(&z123), prod);
    }

    #[test]
    fn truncated_diff_examples() {
        assert_eq!(truncated_diff(0, &ExtElement::z(0)), ExtElement::one());
        assert_eq!(
            truncated_diff(2, &ExtElement::monomial(0b11)),
            ExtElement::with_u(0b01, 1).add(&ExtElement::with_u(0b10, 1))
        );
        for r in 1..=5usize {
            for b in 0..=r as u32 {
                for m in 0u32..1 << r {
                    let x = ExtElement::with_u(m, 0);
                    assert!(truncated_diff(b, &truncated_diff(b, &x)).is_zero());
                }
            }
        }
    }

    #[test]
    fn kernel_of_cube_diff_is_reduced() {
        for r in 1..=5usize {
            for k in 0..=r {
                let src: Vec<u32> = (0u32..1 << r).filter(|m| m.count_ones() as usize == k).collect();
                let images: Vec<BitVec> = src
                    .iter()
                    .map(|&m| cube_diff(&ExtElement::monomial(m)).to_bitvec(r))
                    .collect();
                let ker = kernel(&images, 1 << r);
                assert_eq!(ker.len() as u64, binom(r - 1, k), "r={r} k={k}");
                let red: Vec<BitVec> = reduced_basis_degree(r, k).iter().map(|e| e.to_bitvec(r)).collect();
                assert_eq!(red.len() as u64, binom(r - 1, k));
                let ker_full: Vec<BitVec> = ker
                    .iter()
                    .map(|z| {
                        let mut e = ExtElement::zero();
                        for j in z.ones() {
                            e.toggle(src[j], 0);
                        }
                        e.to_bitvec(r)
                    })
                    .collect();
                let mut both = red.clone();
                both.extend(ker_full);
                assert_eq!(rank(&both), red.len());
            }
        }
    }

    #[test]
    fn truncated_homology_dims() {
        for r in 2..=5usize {
            for b in 0..=r as u32 {
                let n = 6;
                let c = truncated_complex(r, b, n);
                let mut by_degree = vec![0u64; r + 1];
                for ((key, deg), d) in crate::algebra::complex::homology_f2(&c) {
                    if truncated_certified(key, n) {
                        by_degree[deg as usize] += d;
                    }
                }
                for k in 0..=r {
                    let want = if (k as u32) < b { binom(r - 1, k) } else { 0 };
                    assert_eq!(by_degree[k], want, "r={r} b={b} k={k}");
                }
            }
        }
    }
}

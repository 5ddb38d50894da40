//! Graded pieces of `𝒜_r^red / I_β`, where `𝒜_r^red = ℰ_r^red[U_1, …, U_r]` and
//! `I_β` is generated by `z_{i_1}⋯z_{i_s} U_{i_{s+1}}⋯U_{i_{β+1}}` over distinct indices.

use std::collections::BTreeMap;

use crate::algebra::exterior::{reduced_basis_degree, ExtElement};
use crate::algebra::f2::{BitVec, Echelon};
use crate::error::{Error, Result};

/// The quotient at one multigrading `w ≤ 0`, split by exterior degree.
///
/// At `w` the piece is `ℰ^red·U^{-w}`, and `z_S U^{-w}` lies in `I_β` exactly when
/// `S` together with `{i : w_i < 0}` has at least `β + 1` elements.
#[derive(Clone, Debug)]
pub struct IdealPiece {
    r: usize,
    degrees: BTreeMap<usize, DegreePiece>,
}

#[derive(Clone, Debug)]
struct DegreePiece {
    basis: Vec<ExtElement>,
    /// Monomials outside the ideal; the quotient is the projection onto them.
    free: Vec<u32>,
    ech: Echelon,
}

impl IdealPiece {
    pub fn total_dim(&self) -> usize {
        self.degrees.values().map(|p| p.basis.len()).sum()
    }

    /// Dimension in each exterior degree (zero entries omitted).
    pub fn dims(&self) -> BTreeMap<usize, usize> {
        self.degrees
            .iter()
            .filter(|(_, p)| !p.basis.is_empty())
            .map(|(&d, p)| (d, p.basis.len()))
            .collect()
    }

    /// Quotient basis, represented by elements of `ℰ^red`.
    pub fn basis(&self) -> Vec<(usize, ExtElement)> {
        self.degrees
            .iter()
            .flat_map(|(&d, p)| p.basis.iter().map(move |b| (d, b.clone())))
            .collect()
    }

    pub fn basis_in_degree(&self, d: usize) -> &[ExtElement] {
        self.degrees.get(&d).map_or(&[], |p| p.basis.as_slice())
    }

    /// Coordinates of a degree-`d` element of `ℰ^red` in the quotient basis.
    pub fn coords(&self, d: usize, x: &ExtElement) -> BitVec {
        let Some(p) = self.degrees.get(&d) else {
            return BitVec::zeros(0);
        };
        let full = x.to_bitvec(self.r);
        let proj = BitVec::from_indices(
            p.free.len(),
            p.free
                .iter()
                .enumerate()
                .filter(|(_, &m)| full.get(m as usize))
                .map(|(i, _)| i),
        );
        let (res, tag) = p.ech.reduce(proj, BitVec::zeros(p.ech.tag_len()));
        assert!(res.is_zero(), "element is not in the reduced subalgebra");
        BitVec::from_indices(p.basis.len(), tag.ones())
    }
}

/// `[𝒜_r^red / I_β](w)` for `w ≤ 0`; `β = -1` gives the zero quotient.
pub fn ideal_graded_piece(r: usize, beta: i64, w: &[i64]) -> Result<IdealPiece> {
    if r == 0 || w.len() != r {
        return Err(Error::Precondition(format!(
            "grading of length {} for r = {r}",
            w.len()
        )));
    }
    if !(-1..r as i64).contains(&beta) {
        return Err(Error::InvalidBeta {
            got: beta,
            max: r as i64 - 1,
        });
    }
    if w.iter().any(|&x| x > 0) {
        return Err(Error::Precondition("ideal pieces are defined for w <= 0".into()));
    }
    let neg: u32 = w
        .iter()
        .enumerate()
        .filter(|(_, &x)| x < 0)
        .map(|(i, _)| 1u32 << i)
        .sum();
    let threshold = (beta + 1) as u32;
    let mut degrees = BTreeMap::new();
    for d in 0..r {
        let free: Vec<u32> = (0u32..1 << r)
            .filter(|&m| m.count_ones() as usize == d && (m | neg).count_ones() < threshold)
            .collect();
        let mut ech = Echelon::new(free.len(), reduced_basis_degree(r, d).len());
        let mut basis = Vec::new();
        for e in reduced_basis_degree(r, d) {
            let full = e.to_bitvec(r);
            let proj = BitVec::from_indices(
                free.len(),
                free.iter()
                    .enumerate()
                    .filter(|(_, &m)| full.get(m as usize))
                    .map(|(i, _)| i),
            );
            let (res, tag) = ech.reduce(proj, BitVec::zeros(ech.tag_len()));
            if !res.is_zero() {
                let mut t = tag;
                t.set(basis.len(), true);
                ech.insert(res, t);
                basis.push(e);
            }
        }
        degrees.insert(d, DegreePiece { basis, free, ech });
    }
    Ok(IdealPiece { r, degrees })
}

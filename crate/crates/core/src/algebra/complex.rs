//! Finite F₂ chain complexes graded by `(key, degree)`, where the boundary
//! keeps the key and lowers the degree by one.

use std::collections::BTreeMap;

use crate::algebra::f2::{kernel, rank, BitVec, Echelon};
use crate::error::{Error, Result};

pub type Slot = (i64, i64);

#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    gens: Vec<Slot>,
    boundary: Vec<Vec<usize>>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_generator(&mut self, key: i64, degree: i64) -> usize {
        self.gens.push((key, degree));
        self.boundary.push(Vec::new());
        self.gens.len() - 1
    }

    /// Adds `tgt` to `∂(src)` (over F₂, so adding twice cancels).
    pub fn add_boundary(&mut self, src: usize, tgt: usize) -> Result<()> {
        let (ks, ds) = self.gens[src];
        let (kt, dt) = self.gens[tgt];
        if ks != kt || dt != ds - 1 {
            return Err(Error::BadBidegree(kt - ks, dt - ds));
        }
        let b = &mut self.boundary[src];
        match b.iter().position(|&x| x == tgt) {
            Some(i) => {
                b.swap_remove(i);
            }
            None => b.push(tgt),
        }
        Ok(())
    }

    /// Finalizes the complex after checking `∂∘∂ = 0`.
    pub fn build(self) -> Result<ChainComplexF2> {
        let mut slots: BTreeMap<Slot, Vec<usize>> = BTreeMap::new();
        let mut local = vec![0usize; self.gens.len()];
        for (g, &s) in self.gens.iter().enumerate() {
            let list = slots.entry(s).or_default();
            local[g] = list.len();
            list.push(g);
        }
        let c = ChainComplexF2 {
            gens: self.gens,
            boundary: self.boundary,
            slots,
            local,
        };
        for g in 0..c.gens.len() {
            let mut acc: Vec<usize> = Vec::new();
            for &t in &c.boundary[g] {
                for &u in &c.boundary[t] {
                    match acc.iter().position(|&x| x == u) {
                        Some(i) => {
                            acc.swap_remove(i);
                        }
                        None => acc.push(u),
                    }
                }
            }
            if !acc.is_empty() {
                return Err(Error::NonNilpotentBoundary);
            }
        }
        Ok(c)
    }
}

#[derive(Clone, Debug)]
pub struct ChainComplexF2 {
    gens: Vec<Slot>,
    boundary: Vec<Vec<usize>>,
    slots: BTreeMap<Slot, Vec<usize>>,
    local: Vec<usize>,
}

impl ChainComplexF2 {
    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn slot_of(&self, g: usize) -> Slot {
        self.gens[g]
    }

    /// Position of generator `g` inside its slot.
    pub fn local_index(&self, g: usize) -> usize {
        self.local[g]
    }

    pub fn slot_generators(&self, s: Slot) -> &[usize] {
        self.slots.get(&s).map_or(&[], |v| v.as_slice())
    }

    pub fn slots(&self) -> impl Iterator<Item = Slot> + '_ {
        self.slots.keys().copied()
    }

    pub fn boundary_of(&self, g: usize) -> &[usize] {
        &self.boundary[g]
    }

    /// Images of the generators of `s` under `∂`, in local coordinates of `(key, deg-1)`.
    fn boundary_images(&self, s: Slot) -> Vec<BitVec> {
        let tgt_len = self.slot_generators((s.0, s.1 - 1)).len();
        self.slot_generators(s)
            .iter()
            .map(|&g| BitVec::from_indices(tgt_len, self.boundary[g].iter().map(|&t| self.local[t])))
            .collect()
    }

    /// Homology of one slot, with cycle representatives.
    pub fn slot_homology(&self, s: Slot) -> SlotHomology {
        let n = self.slot_generators(s).len();
        let cycles = kernel(&self.boundary_images(s), self.slot_generators((s.0, s.1 - 1)).len());
        let incoming = self.boundary_images((s.0, s.1 + 1));
        let mut ech = Echelon::new(n, cycles.len());
        for b in incoming {
            ech.insert_untagged(b);
        }
        let mut reps = Vec::new();
        for z in cycles {
            let (res, tag) = ech.reduce(z.clone(), BitVec::zeros(ech.tag_len()));
            if !res.is_zero() {
                let mut t = tag;
                t.set(reps.len(), true);
                ech.insert(res, t);
                reps.push(z);
            }
        }
        SlotHomology { reps, ech }
    }

    /// `dim H` for every slot where it is nonzero.
    pub fn homology_dims(&self) -> BTreeMap<Slot, u64> {
        let mut out = BTreeMap::new();
        for s in self.slots() {
            let n = self.slot_generators(s).len();
            let out_rank = rank(&self.boundary_images(s));
            let in_rank = rank(&self.boundary_images((s.0, s.1 + 1)));
            let d = n - out_rank - in_rank;
            if d > 0 {
                out.insert(s, d as u64);
            }
        }
        out
    }
}

/// `dim H` per slot.
pub fn homology_f2(c: &ChainComplexF2) -> BTreeMap<Slot, u64> {
    c.homology_dims()
}

/// Homology of a single slot: representatives and a reducer that expresses any
/// cycle in terms of them.
#[derive(Clone, Debug)]
pub struct SlotHomology {
    reps: Vec<BitVec>,
    ech: Echelon,
}

impl SlotHomology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Cycle representatives in local slot coordinates.
    pub fn reps(&self) -> &[BitVec] {
        &self.reps
    }

    /// Coordinates of the class of `cycle` in the basis `reps`.
    pub fn coords(&self, cycle: &BitVec) -> BitVec {
        let (res, tag) = self.ech.reduce(cycle.clone(), BitVec::zeros(self.ech.tag_len()));
        assert!(res.is_zero(), "vector is not a cycle");
        let mut out = BitVec::zeros(self.reps.len());
        for i in tag.ones().filter(|&i| i < self.reps.len()) {
            out.set(i, true);
        }
        out
    }
}

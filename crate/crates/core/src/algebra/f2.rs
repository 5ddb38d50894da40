//! Dense bit vectors and Gaussian elimination over F₂.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, on: bool) {
        let bit = 1u64 << (i % 64);
        if on {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, o: &BitVec) {
        debug_assert_eq!(self.len, o.len);
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set index.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// Row-echelon basis of a subspace, each row carrying a tag vector that records
/// which combination of inserted vectors it came from.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    tag_len: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<(BitVec, BitVec)>,
}

impl Echelon {
    pub fn new(len: usize, tag_len: usize) -> Self {
        Echelon {
            len,
            tag_len,
            pivot_row: vec![None; len],
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn tag_len(&self) -> usize {
        self.tag_len
    }

    /// Reduces `v` (with tag `tag`) against the basis until its lowest bit is not a pivot.
    pub fn reduce(&self, mut v: BitVec, mut tag: BitVec) -> (BitVec, BitVec) {
        while let Some(p) = v.first_one() {
            match self.pivot_row[p] {
                Some(ri) => {
                    let (row, rtag) = &self.rows[ri];
                    v.xor_assign(row);
                    tag.xor_assign(rtag);
                }
                None => break,
            }
        }
        (v, tag)
    }

    /// Inserts `v`; returns `None` if it was independent, otherwise the tag of the
    /// combination that reduced it to zero.
    pub fn insert(&mut self, v: BitVec, tag: BitVec) -> Option<BitVec> {
        let (v, tag) = self.reduce(v, tag);
        match v.first_one() {
            None => Some(tag),
            Some(p) => {
                self.pivot_row[p] = Some(self.rows.len());
                self.rows.push((v, tag));
                None
            }
        }
    }

    pub fn insert_untagged(&mut self, v: BitVec) -> bool {
        let t = BitVec::zeros(self.tag_len);
        self.insert(v, t).is_none()
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v.clone(), BitVec::zeros(self.tag_len)).0.is_zero()
    }

    pub fn dim(&self) -> usize {
        self.len
    }
}

/// Rank of a list of vectors.
pub fn rank(rows: &[BitVec]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut e = Echelon::new(first.len(), 0);
    rows.iter().filter(|r| e.insert_untagged((*r).clone())).count()
}

/// Kernel of the linear map sending the `j`-th basis vector to `images[j]`.
pub fn kernel(images: &[BitVec], target_len: usize) -> Vec<BitVec> {
    let n = images.len();
    let mut e = Echelon::new(target_len, n);
    images
        .iter()
        .enumerate()
        .filter_map(|(j, img)| e.insert(img.clone(), BitVec::unit(n, j)))
        .collect()
}

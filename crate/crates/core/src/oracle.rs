//! Brute-force spectral sequence pages: the cube complex `(E₁, ∂₁)` over `F[U]`
//! and the hat cube `(Ê₁, ∂̂₁)`, computed by linear algebra over F₂.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::complex::{ChainComplexF2, ComplexBuilder, Slot, SlotHomology};
use crate::algebra::f2::{rank, BitVec};
use crate::cables::{CableLink, Grading, Regime};
use crate::error::{Error, Result};
use crate::graded::GradedDim;
use crate::half::HalfInt;
use crate::homology::{hfl_hat, hfl_minus, module_decomposition, summand_piece, ModuleSummand};

/// A generator `U^m z(v - e_B)` of `E₁(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeGenerator {
    pub mask: u32,
    pub u_power: u32,
}

/// `E₁(v) = ⊕_B F[U]/U^N · z(v - e_B)` with the inclusion differential.
///
/// Slots are `(q, |B|)` with `q = -2m - 2h(v - e_B)`. Only keys at or above
/// [`CubeComplex::certified_floor`] see every generator, and only those are reported.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    v: Grading,
    ucut: usize,
    h: Vec<i64>,
    ids: Vec<Vec<usize>>,
    gens: Vec<CubeGenerator>,
    complex: ChainComplexF2,
}

impl CubeComplex {
    pub fn grading(&self) -> &Grading {
        &self.v
    }

    pub fn ucut(&self) -> usize {
        self.ucut
    }

    pub fn complex(&self) -> &ChainComplexF2 {
        &self.complex
    }

    pub fn generator(&self, id: usize) -> CubeGenerator {
        self.gens[id]
    }

    /// `h(v - e_B)`.
    pub fn h_at(&self, mask: u32) -> i64 {
        self.h[mask as usize]
    }

    pub fn id_of(&self, g: CubeGenerator) -> Option<usize> {
        self.ids[g.mask as usize].get(g.u_power as usize).copied()
    }

    /// Lowest key not affected by the truncation.
    pub fn certified_floor(&self) -> i64 {
        let min_h = *self.h.iter().min().expect("nonempty cube");
        -2 * (self.ucut as i64 - 1) - 2 * min_h
    }

    /// `dim H` at each certified slot `(q, |B|)`.
    pub fn homology_bigraded(&self) -> BTreeMap<Slot, u64> {
        let floor = self.certified_floor();
        self.complex
            .homology_dims()
            .into_iter()
            .filter(|((q, _), _)| *q >= floor)
            .collect()
    }
}

/// `max_B h(v - e_B) - min_B h(v - e_B)`.
fn h_spread(h: &[i64]) -> usize {
    (h.iter().max().unwrap() - h.iter().min().unwrap()) as usize
}

fn cube_h(link: &CableLink, v: &Grading) -> Vec<i64> {
    (0u32..1 << link.r())
        .map(|b| link.h_raw(v.minus_set(b).coords()))
        .collect()
}

/// Smallest truncation for which every key carrying homology is complete.
pub fn required_ucut(link: &CableLink, v: &Grading) -> Result<usize> {
    link.require_lspace()?;
    link.check_grading(v)?;
    Ok(h_spread(&cube_h(link, v)) + 1)
}

/// The default truncation `N₀ = spread + 2`.
pub fn default_ucut(link: &CableLink, v: &Grading) -> Result<usize> {
    Ok(required_ucut(link, v)? + 1)
}

/// Builds `E₁(v)` with `U`-powers below `ucut`, checking `∂₁² = 0`.
pub fn build_e1(link: &CableLink, v: &Grading, ucut: usize) -> Result<CubeComplex> {
    link.require_lspace()?;
    link.check_grading(v)?;
    let r = link.r();
    let h = cube_h(link, v);
    let required = h_spread(&h) + 1;
    if ucut < required {
        return Err(Error::TruncationTooSmall { given: ucut, required });
    }
    let mut b = ComplexBuilder::new();
    let mut ids = vec![Vec::with_capacity(ucut); 1 << r];
    let mut gens = Vec::with_capacity(ucut << r);
    for mask in 0u32..1 << r {
        for m in 0..ucut {
            let q = -2 * m as i64 - 2 * h[mask as usize];
            ids[mask as usize].push(b.add_generator(q, mask.count_ones() as i64));
            gens.push(CubeGenerator {
                mask,
                u_power: m as u32,
            });
        }
    }
    for mask in 0u32..1 << r {
        for i in (0..r).filter(|i| mask >> i & 1 == 1) {
            let t = mask & !(1 << i);
            let e = (h[mask as usize] - h[t as usize]) as usize;
            for m in 0..ucut.saturating_sub(e) {
                b.add_boundary(ids[mask as usize][m], ids[t as usize][m + e])?;
            }
        }
    }
    Ok(CubeComplex {
        v: v.clone(),
        ucut,
        h,
        ids,
        gens,
        complex: b.build()?,
    })
}

/// `E₂(v)` with representatives, ready for computing induced maps.
#[derive(Clone, Debug)]
pub struct E2Page {
    cube: CubeComplex,
    slots: BTreeMap<Slot, SlotHomology>,
}

impl E2Page {
    pub fn new(link: &CableLink, v: &Grading) -> Result<E2Page> {
        Self::with_ucut(link, v, default_ucut(link, v)?)
    }

    pub fn with_ucut(link: &CableLink, v: &Grading, ucut: usize) -> Result<E2Page> {
        let cube = build_e1(link, v, ucut)?;
        let slots = cube
            .homology_bigraded()
            .into_keys()
            .map(|s| (s, cube.complex.slot_homology(s)))
            .collect();
        Ok(E2Page { cube, slots })
    }

    pub fn cube(&self) -> &CubeComplex {
        &self.cube
    }

    /// `dim` at each slot `(q, |B|)`.
    pub fn bigraded(&self) -> BTreeMap<Slot, u64> {
        self.slots.iter().map(|(&s, h)| (s, h.dim() as u64)).collect()
    }

    /// Collapsed to the Maslov grading `q + |B|`.
    pub fn dims(&self) -> GradedDim {
        GradedDim::from_pairs(self.slots.iter().map(|(&(q, d), h)| (q + d, h.dim() as u64)))
    }

    pub fn total_dim(&self) -> usize {
        self.slots.values().map(|h| h.dim()).sum()
    }

    /// Offset of each slot in the concatenated basis.
    fn offsets(&self) -> BTreeMap<Slot, usize> {
        let mut acc = 0;
        self.slots
            .iter()
            .map(|(&s, h)| {
                let o = acc;
                acc += h.dim();
                (s, o)
            })
            .collect()
    }

    /// Basis classes as `(slot, index within slot)`.
    pub fn basis(&self) -> Vec<(Slot, usize)> {
        self.slots
            .iter()
            .flat_map(|(&s, h)| (0..h.dim()).map(move |j| (s, j)))
            .collect()
    }
}

/// A linear map between E₂ pages, as the images of the source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    images: Vec<BitVec>,
    target_dim: usize,
}

impl LinearMap {
    pub fn source_dim(&self) -> usize {
        self.images.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn rank(&self) -> usize {
        rank(&self.images)
    }

    pub fn kernel_dim(&self) -> usize {
        self.source_dim() - self.rank()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target_dim
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.target_dim, other.source_dim());
        let images = self
            .images
            .iter()
            .map(|x| {
                let mut acc = BitVec::zeros(other.target_dim);
                for j in x.ones() {
                    acc.xor_assign(&other.images[j]);
                }
                acc
            })
            .collect();
        LinearMap {
            images,
            target_dim: other.target_dim,
        }
    }
}

/// The map `U_i: E₂(w) → E₂(w - e_i)` induced by
/// `U^m z(w - e_B) ↦ U^{m+1-h(w-e_B-e_i)+h(w-e_B)} z(w - e_i - e_B)`,
/// where `tgt` is the page at `w - e_i`.
pub fn u_map(src: &E2Page, tgt: &E2Page) -> LinearMap {
    debug_assert_eq!(
        src.cube
            .v
            .coords()
            .iter()
            .zip(tgt.cube.v.coords())
            .filter(|(a, b)| a != b)
            .count(),
        1
    );
    let offsets = tgt.offsets();
    let target_dim = tgt.total_dim();
    let mut images = Vec::with_capacity(src.total_dim());
    for (&(q, d), hom) in &src.slots {
        let tslot = (q - 2, d);
        let tgens = tgt.cube.complex.slot_generators(tslot);
        for rep in hom.reps() {
            let mut out = BitVec::zeros(target_dim);
            if let Some(th) = tgt.slots.get(&tslot) {
                let mut chain = BitVec::zeros(tgens.len());
                for local in rep.ones() {
                    let id = src.cube.complex.slot_generators((q, d))[local];
                    let g = src.cube.generator(id);
                    let m = g.u_power as i64 + 1 - tgt.cube.h_at(g.mask) + src.cube.h_at(g.mask);
                    debug_assert!(m >= 0);
                    let tid = tgt
                        .cube
                        .id_of(CubeGenerator {
                            mask: g.mask,
                            u_power: m as u32,
                        })
                        .expect("certified target key has every generator");
                    chain.flip(tgt.cube.complex.local_index(tid));
                }
                let o = offsets[&tslot];
                for j in th.coords(&chain).ones() {
                    out.set(o + j, true);
                }
            }
            images.push(out);
        }
    }
    LinearMap { images, target_dim }
}

fn check_component(link: &CableLink, i: usize) -> Result<()> {
    if i >= link.r() {
        return Err(Error::Precondition(format!(
            "component {} out of range 1..={}",
            i + 1,
            link.r()
        )));
    }
    Ok(())
}

/// `U_{i_k} ⋯ U_{i_1}: E₂(v) → E₂(v - e_{i_1} - ⋯ - e_{i_k})`, components 0-based.
pub fn induced_u_path(link: &CableLink, v: &Grading, path: &[usize]) -> Result<LinearMap> {
    let mut page = E2Page::new(link, v)?;
    let mut map = LinearMap {
        images: (0..page.total_dim())
            .map(|j| BitVec::unit(page.total_dim(), j))
            .collect(),
        target_dim: page.total_dim(),
    };
    let mut w = v.clone();
    for &i in path {
        check_component(link, i)?;
        w = w.minus_set(1 << i);
        let next = E2Page::new(link, &w)?;
        map = map.then(&u_map(&page, &next));
        page = next;
    }
    Ok(map)
}

/// `E₂(v)` collapsed to the Maslov grading.
pub fn e2_minus(link: &CableLink, v: &Grading) -> Result<GradedDim> {
    Ok(E2Page::new(link, v)?.dims())
}

pub fn e2_minus_with_ucut(link: &CableLink, v: &Grading, ucut: usize) -> Result<GradedDim> {
    Ok(E2Page::with_ucut(link, v, ucut)?.dims())
}

/// `dim E₂` at each `(q, |B|)`.
pub fn e2_minus_bigraded(link: &CableLink, v: &Grading) -> Result<BTreeMap<Slot, u64>> {
    let cube = build_e1(link, v, default_ucut(link, v)?)?;
    Ok(cube.homology_bigraded())
}

/// The page `Ê₂(v)`, bigraded by cube degree `x = |B|` and the Maslov grading `M`
/// of the summand `HFL(v + e_B)`; the hat grading is `M - x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HatPage {
    pub bigraded: BTreeMap<(i64, i64), u64>,
    /// `false` when a higher differential could connect two surviving classes.
    pub clean: bool,
}

impl HatPage {
    fn from_complex(c: &ChainComplexF2) -> HatPage {
        let bigraded: BTreeMap<(i64, i64), u64> = c
            .homology_dims()
            .into_iter()
            .map(|((key, x), d)| ((x, key + 2 * x), d))
            .collect();
        // d_s maps (x, M) to (x - s, M - s - 1).
        let clean = !bigraded
            .keys()
            .any(|&(x, m)| bigraded.keys().any(|&(y, n)| x - y >= 2 && n == m - (x - y) - 1));
        HatPage { bigraded, clean }
    }

    pub fn dims(&self) -> GradedDim {
        GradedDim::from_pairs(self.bigraded.iter().map(|(&(x, m), &d)| (m - x, d)))
    }
}

/// `Ê₂(v)` from the E₂ pages at `v + e_B` and the induced `U_i`.
pub fn e2_hat(link: &CableLink, v: &Grading) -> Result<HatPage> {
    link.require_strict("the hat spectral sequence")?;
    link.check_grading(v)?;
    let r = link.r();
    let pages: Vec<E2Page> = (0u32..1 << r)
        .map(|b| E2Page::new(link, &v.plus_set(b)))
        .collect::<Result<_>>()?;
    let mut builder = ComplexBuilder::new();
    let mut ids: Vec<Vec<usize>> = Vec::with_capacity(1 << r);
    for (b, page) in pages.iter().enumerate() {
        let x = (b as u32).count_ones() as i64;
        let row = page
            .basis()
            .into_iter()
            .map(|((q, d), _)| builder.add_generator(q + d - 2 * x, x))
            .collect();
        ids.push(row);
    }
    for b in 0u32..1 << r {
        for i in (0..r).filter(|i| b >> i & 1 == 1) {
            let t = b & !(1 << i);
            let map = u_map(&pages[b as usize], &pages[t as usize]);
            for (j, img) in map.images.iter().enumerate() {
                for k in img.ones() {
                    builder.add_boundary(ids[b as usize][j], ids[t as usize][k])?;
                }
            }
        }
    }
    Ok(HatPage::from_complex(&builder.build()?))
}

/// `Ê₂(v)` assembled from the model summands of `HFL⁻`, on which `U_i` is the
/// quotient map between graded pieces of `ℰ^red`.
pub fn e2_hat_modules(link: &CableLink, v: &Grading, summands: &[ModuleSummand]) -> Result<HatPage> {
    link.require_strict("the hat spectral sequence")?;
    link.check_grading(v)?;
    let r = link.r();
    let mut builder = ComplexBuilder::new();
    for s in summands {
        let pieces = (0u32..1 << r)
            .map(|b| summand_piece(link, s, &v.plus_set(b)))
            .collect::<Result<Vec<_>>>()?;
        let mut ids: Vec<Vec<(usize, usize)>> = Vec::with_capacity(1 << r);
        for (b, piece) in pieces.iter().enumerate() {
            let x = (b as u32).count_ones() as i64;
            let mut row = Vec::new();
            if let Some((p, base)) = piece {
                for (d, _) in p.basis() {
                    row.push((d, builder.add_generator(base - d as i64 - 2 * x, x)));
                }
            }
            ids.push(row);
        }
        for b in 0u32..1 << r {
            let Some((src, _)) = &pieces[b as usize] else { continue };
            for i in (0..r).filter(|i| b >> i & 1 == 1) {
                let t = b & !(1 << i);
                let Some((tgt, _)) = &pieces[t as usize] else { continue };
                for ((d, e), &(_, id)) in src.basis().into_iter().zip(&ids[b as usize]) {
                    let offset = ids[t as usize].iter().position(|&(td, _)| td == d);
                    for k in tgt.coords(d, &e).ones() {
                        let (_, tid) = ids[t as usize][offset.expect("target degree present") + k];
                        builder.add_boundary(id, tid)?;
                    }
                }
            }
        }
    }
    Ok(HatPage::from_complex(&builder.build()?))
}

/// Every lattice grading in the doubled box `[lo, hi]^r`.
pub fn window_gradings(link: &CableLink, lo: HalfInt, hi: HalfInt) -> Vec<Grading> {
    Grading::box_iter(lo, hi, link.r(), link.parity()).collect()
}

/// The box whose doubled coordinates lie in `[-2g_c - 2lr - 8, 2g_c + 2lr + 8]`.
pub fn doubled_window(link: &CableLink) -> Result<(HalfInt, HalfInt)> {
    let gc = link.companion()?.genus();
    let d = 2 * gc + 2 * link.l() * link.r() as i64 + 8 - link.parity();
    Ok((HalfInt(-d), HalfInt(d)))
}

/// Outcome of comparing two computations across a window.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub checked: usize,
    pub skipped: usize,
    pub mismatches: Vec<Grading>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn merge(mut self, o: SweepReport) -> SweepReport {
        self.checked += o.checked;
        self.skipped += o.skipped;
        self.mismatches.extend(o.mismatches);
        self
    }
}

fn sweep<F>(gradings: &[Grading], f: F) -> Result<SweepReport>
where
    F: Fn(&Grading) -> Result<Option<bool>> + Sync,
{
    let report = gradings
        .par_iter()
        .map(|v| {
            Ok::<_, Error>(match f(v)? {
                None => SweepReport {
                    skipped: 1,
                    ..Default::default()
                },
                Some(true) => SweepReport {
                    checked: 1,
                    ..Default::default()
                },
                Some(false) => SweepReport {
                    checked: 1,
                    mismatches: vec![v.clone()],
                    ..Default::default()
                },
            })
        })
        .try_reduce(SweepReport::default, |a, b| Ok(a.merge(b)))?;
    let mut report = report;
    report.mismatches.sort();
    Ok(report)
}

/// `e2_minus = hfl_minus` at every grading of the box.
pub fn sweep_minus(link: &CableLink, lo: HalfInt, hi: HalfInt) -> Result<SweepReport> {
    sweep(&window_gradings(link, lo, hi), |v| {
        Ok(Some(e2_minus(link, v)? == hfl_minus(link, v)?))
    })
}

/// `e2_hat = hfl_hat` wherever the page is clean; flagged gradings are skipped.
pub fn sweep_hat(link: &CableLink, lo: HalfInt, hi: HalfInt) -> Result<SweepReport> {
    sweep(&window_gradings(link, lo, hi), |v| {
        let page = e2_hat(link, v)?;
        Ok(page.clean.then(|| page.dims() == hfl_hat(link, v).unwrap_or_default()))
    })
}

/// The chain-level and module-level hat pages agree at every grading of the box.
pub fn sweep_hat_routes(link: &CableLink, lo: HalfInt, hi: HalfInt) -> Result<SweepReport> {
    let summands = module_decomposition(link)?;
    sweep(&window_gradings(link, lo, hi), |v| {
        Ok(Some(
            e2_hat(link, v)?.bigraded == e2_hat_modules(link, v, &summands)?.bigraded,
        ))
    })
}

/// Signed Euler characteristics of `E₂` against the h-function inclusion-exclusion.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub checked: usize,
    /// `(v, from E₂, from h)`.
    pub mismatches: Vec<(Grading, i64, i64)>,
    /// `Σ_v χ(v)` over the window.
    pub total: i64,
}

pub fn euler_check(link: &CableLink, lo: HalfInt, hi: HalfInt) -> Result<EulerReport> {
    link.require_lspace()?;
    let rows = window_gradings(link, lo, hi)
        .into_par_iter()
        .map(|v| {
            let a = e2_minus(link, &v)?.euler();
            let b = link.chi_at_grading(&v)?;
            Ok((v, a, b))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = EulerReport {
        checked: rows.len(),
        ..Default::default()
    };
    for (v, a, b) in rows {
        report.total += b;
        if a != b {
            report.mismatches.push((v, a, b));
        }
    }
    Ok(report)
}

/// Whether every E₂ class lies on the line `q = -2h(v) - 2|B|`, as forced in the strict regime.
pub fn on_slope_line(link: &CableLink, v: &Grading) -> Result<bool> {
    let h = link.h_cable(v)?;
    let bi = e2_minus_bigraded(link, v)?;
    Ok(link.regime() != Regime::Strict || bi.keys().all(|&(q, d)| q == -2 * h - 2 * d))
}

//! Closed formulas for `HFL⁻` and `HFL^` of cable links, the `U_i` action, and the
//! splitting of `HFL⁻` into model modules.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::ideal::{ideal_graded_piece, IdealPiece};
use crate::cables::{CableLink, Grading, Regime};
use crate::error::{Error, Result};
use crate::graded::GradedDim;
use crate::half::HalfInt;

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binom(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Integer value of `x - c + l·j`, the argument passed to the companion's h-function.
fn shifted(link: &CableLink, x: HalfInt, j: i64) -> i64 {
    (x.doubled() - link.c().doubled()) / 2 + link.l() * j
}

/// Data for the boundary-regime gradings that need the exceptional formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialCaseInfo {
    pub nu: i64,
    pub lambda: usize,
}

/// `HFL⁻(L, v)` as graded dimensions.
pub fn hfl_minus(link: &CableLink, v: &Grading) -> Result<GradedDim> {
    link.require_lspace()?;
    link.check_grading(v)?;
    Ok(match link.regime() {
        Regime::Strict => strict_formula(link, v),
        _ => match special_case_info(link, v)? {
            Some(info) => special_formula(link, v, info),
            None => block_formula(link, v),
        },
    })
}

/// The strict-regime formula in terms of `k = max v`, its multiplicity `λ` and `β(k)`.
pub fn theorem_strict(link: &CableLink, v: &Grading) -> Result<GradedDim> {
    link.require_strict("the strict-regime formula")?;
    link.check_grading(v)?;
    Ok(strict_formula(link, v))
}

fn strict_formula(link: &CableLink, v: &Grading) -> GradedDim {
    let r = link.r() as i64;
    let k = v.top();
    let lambda = v.max_multiplicity() as i64;
    let beta = link.beta_raw(k);
    if beta < r - lambda {
        return GradedDim::new();
    }
    let h = link.hh_raw(k) + (k.times(r) - v.sum()).doubled() / 2;
    let top = GradedDim::from_pairs((0..=beta - r + lambda).map(|i| (-2 * h - i, binom(lambda - 1, i))));
    GradedDim::exterior_pair_power((r - lambda) as usize).tensor(&top)
}

/// The general product formula over the blocks of equal coordinates of `v`.
///
/// Each block `(u, λ, p)` contributes `Σ C(λ-1, i) q^{i - 2w(i)}` over the `i < λ` where the
/// companion has rank one at `u - c + l(p+i)`, with `w(i)` the number of such positions below `i`.
pub fn block_formula(link: &CableLink, v: &Grading) -> GradedDim {
    let comp = link.companion().expect("block formula on a non L-space link");
    let blocks = v.blocks();
    let mut out = GradedDim::point(-2 * link.h_raw(v.coords()));
    for &(u, lambda, p) in &blocks {
        let mut piece = GradedDim::new();
        let mut w = 0i64;
        for i in 0..lambda as i64 {
            if comp.hfl_rank(shifted(link, u, p as i64 + i)) == 1 {
                piece.add(i - 2 * w, binom(lambda as i64 - 1, i));
                w += 1;
            }
        }
        out = out.tensor(&piece);
    }
    out.tensor(&GradedDim::exterior_pair_power(blocks.len() - 1))
}

/// `Some(ν)` when `v` is one of the exceptional boundary-regime gradings:
/// `u_s - c + l(r - λ_s) = g(K) - νl` with `1 ≤ ν ≤ λ_s` for the top block `(u_s, λ_s)`.
pub fn special_case_info(link: &CableLink, v: &Grading) -> Result<Option<SpecialCaseInfo>> {
    link.require_lspace()?;
    link.check_grading(v)?;
    if link.regime() != Regime::Boundary {
        return Ok(None);
    }
    let lambda = v.max_multiplicity();
    let x = shifted(link, v.top(), (link.r() - lambda) as i64);
    let diff = link.knot().genus() - x;
    if diff % link.l() != 0 {
        return Ok(None);
    }
    let nu = diff / link.l();
    Ok((1..=lambda as i64)
        .contains(&nu)
        .then_some(SpecialCaseInfo { nu, lambda }))
}

fn special_formula(link: &CableLink, v: &Grading, info: SpecialCaseInfo) -> GradedDim {
    let h = link.h_raw(v.coords());
    let lam = info.lambda as i64;
    let mut top = GradedDim::from_pairs((0..=info.nu - 2).map(|j| (-2 * h - j, binom(lam - 1, j))));
    top.add(-2 * h + 2 - info.nu, binom(lam - 1, info.nu));
    GradedDim::exterior_pair_power(link.r() - info.lambda).tensor(&top)
}

/// `HFL^(L, v)`, supported on the diagonal unit cubes.
pub fn hfl_hat(link: &CableLink, v: &Grading) -> Result<GradedDim> {
    link.require_strict("hat homology")?;
    link.check_grading(v)?;
    let r = link.r() as i64;
    let k = v.top();
    let j = v.coords().iter().filter(|&&c| c == k - 1).count() as i64;
    let lambda = v.max_multiplicity() as i64;
    if lambda + j != r {
        return Ok(GradedDim::new());
    }
    if j == 0 {
        return hat_diagonal(link, k);
    }
    let beta = link.beta_raw(k);
    Ok(GradedDim::from_pairs([(
        -2 * link.hh_raw(k) - beta - j,
        binom(r - 2, beta),
    )]))
}

/// The diagonal group, using whichever of the two formulas applies and checking
/// that they agree where both do.
pub fn hat_diagonal(link: &CableLink, k: HalfInt) -> Result<GradedDim> {
    link.require_strict("hat homology")?;
    link.check_diagonal(k)?;
    let r = link.r() as i64;
    let (b0, b1) = (link.beta_raw(k), link.beta_raw(k + 1));
    let a = (b0 + b1 <= r - 2).then(|| hat_diagonal_terms(link, k, b0, b1));
    let b = (b0 + b1 >= r - 2).then(|| hat_diagonal_terms(link, k, r - 2 - b1, r - 2 - b0));
    match (a, b) {
        (Some(x), Some(y)) => {
            assert_eq!(x, y, "diagonal hat formulas disagree at k={k}");
            Ok(x)
        }
        (Some(x), None) | (None, Some(x)) => Ok(x),
        (None, None) => unreachable!(),
    }
}

/// `⊕_{i ≤ s} C(r-1,i) F_{-2𝐡-i} ⊕ ⊕_{i ≤ t} C(r-1,i) F_{-2𝐡+2-r+i}`.
fn hat_diagonal_terms(link: &CableLink, k: HalfInt, s: i64, t: i64) -> GradedDim {
    let r = link.r() as i64;
    let h = link.hh_raw(k);
    let mut g = GradedDim::from_pairs((0..=s).map(|i| (-2 * h - i, binom(r - 1, i))));
    g.merge(&GradedDim::from_pairs(
        (0..=t).map(|i| (-2 * h + 2 - r + i, binom(r - 1, i))),
    ));
    g
}

/// The power of `U` in `U_i z(v) = U^e z(v - e_i)`; `i` is 0-based.
pub fn u_exponent(link: &CableLink, v: &Grading, i: usize) -> Result<i64> {
    link.require_lspace()?;
    link.check_grading(v)?;
    if i >= link.r() {
        return Err(Error::Precondition(format!(
            "component {} out of range 1..={}",
            i + 1,
            link.r()
        )));
    }
    Ok(1 - link.h_raw(v.minus_set(1 << i).coords()) + link.h_raw(v.coords()))
}

/// Whether `U_i: HFL⁻(v) → HFL⁻(v - e_i)` is onto; `i` is 0-based.
pub fn u_surjective(link: &CableLink, v: &Grading, i: usize) -> Result<bool> {
    link.require_strict("surjectivity of U_i")?;
    link.check_grading(v)?;
    if i >= link.r() {
        return Err(Error::Precondition(format!(
            "component {} out of range 1..={}",
            i + 1,
            link.r()
        )));
    }
    if strict_formula(link, v).is_empty() {
        return Err(Error::Precondition(format!("HFL at {v} is zero")));
    }
    let w = v.minus_set(1 << i);
    if w.top() == v.top() || strict_formula(link, &w).is_empty() {
        return Ok(true);
    }
    Ok(link.beta_raw(v.top()) == link.r() as i64 - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SummandKind {
    /// `M_β = 𝒜^red / I_β`.
    MBeta(i64),
    /// `M_{r-1,k}`.
    MTruncated(i64),
    /// `M_{r-1,∞} = 𝒜^red`.
    MInfinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSummand {
    pub kind: SummandKind,
    /// Diagonal grading `(a, …, a)` of the generator.
    pub generator: HalfInt,
}

/// The summands of `HFL⁻`, ordered by descending generator.
pub fn module_decomposition(link: &CableLink) -> Result<Vec<ModuleSummand>> {
    link.require_strict("module decomposition")?;
    let profile = link.diagonal_profile()?;
    let (lo, hi) = profile.window();
    let top = link.r() as i64 - 1;
    let mut out = Vec::new();
    let mut k = hi;
    while k >= lo {
        let b = profile.beta(k);
        if (0..top).contains(&b) && profile.beta(k + 1) < top {
            out.push(ModuleSummand {
                kind: SummandKind::MBeta(b),
                generator: k,
            });
        }
        if b == top && profile.beta(k + 1) != top {
            let mut a = k;
            while a >= lo && profile.beta(a - 1) == top {
                a = a - 1;
            }
            let kind = if a < lo {
                SummandKind::MInfinite
            } else {
                SummandKind::MTruncated((k - a).doubled() / 2 + 1)
            };
            out.push(ModuleSummand { kind, generator: k });
        }
        k = k - 1;
    }
    Ok(out)
}

/// `5·M0 + M(1,1) + M(1,inf)`.
pub fn format_decomposition(r: usize, summands: &[ModuleSummand]) -> String {
    let mut kinds: Vec<SummandKind> = summands.iter().map(|s| s.kind).collect();
    kinds.sort();
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < kinds.len() {
        let n = kinds[i..].iter().take_while(|&&x| x == kinds[i]).count();
        let name = match kinds[i] {
            SummandKind::MBeta(b) => format!("M{b}"),
            SummandKind::MTruncated(k) => format!("M({},{k})", r - 1),
            SummandKind::MInfinite => format!("M({},inf)", r - 1),
        };
        parts.push(if n == 1 { name } else { format!("{n}·{name}") });
        i += n;
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for SummandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandKind::MBeta(b) => write!(f, "M{b}"),
            SummandKind::MTruncated(k) => write!(f, "M(r-1,{k})"),
            SummandKind::MInfinite => write!(f, "M(r-1,inf)"),
        }
    }
}

/// One summand at `v`: its graded piece and the Maslov degree of exterior degree zero.
///
/// The piece is a quotient of `ℰ^red`; `None` means the summand vanishes at `v`.
pub fn summand_piece(link: &CableLink, s: &ModuleSummand, v: &Grading) -> Result<Option<(IdealPiece, i64)>> {
    link.require_lspace()?;
    link.check_grading(v)?;
    link.check_diagonal(s.generator)?;
    let r = link.r();
    let w: Vec<i64> = v.coords().iter().map(|&c| (c - s.generator).doubled() / 2).collect();
    if w.iter().any(|&x| x > 0) {
        return Ok(None);
    }
    let top = *w.iter().max().expect("nonempty grading");
    let base = -2 * link.hh_raw(s.generator) + 2 * w.iter().sum::<i64>();
    let full = || ideal_graded_piece(r, r as i64 - 1, &vec![0; r]);
    let piece = match s.kind {
        SummandKind::MBeta(b) => ideal_graded_piece(r, b, &w)?,
        SummandKind::MInfinite => full()?,
        SummandKind::MTruncated(k) if top > -k => full()?,
        SummandKind::MTruncated(k) if top == -k => {
            let shifted: Vec<i64> = w.iter().map(|&x| x + k).collect();
            ideal_graded_piece(r, r as i64 - 2, &shifted)?
        }
        SummandKind::MTruncated(_) => return Ok(None),
    };
    Ok((piece.total_dim() > 0).then_some((piece, base)))
}

/// Graded dimensions of one summand at `v`, placing its generator in Maslov degree `-2𝐡(a)`.
pub fn summand_dims(link: &CableLink, s: &ModuleSummand, v: &Grading) -> Result<GradedDim> {
    Ok(match summand_piece(link, s, v)? {
        None => GradedDim::new(),
        Some((piece, base)) => {
            GradedDim::from_pairs(piece.dims().into_iter().map(|(d, n)| (base - d as i64, n as u64)))
        }
    })
}

//! The r-component cable link `K_{rm,rn}` and its h-function.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::knots::{cable_knot, gcd, LSpaceKnot};
use crate::laurent::LaurentPoly;

/// Largest supported number of components.
pub const MAX_COMPONENTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `n/m > 2g(K) - 1`.
    Strict,
    /// `m = 1` and `n = 2g(K) - 1`.
    Boundary,
    NotLSpace,
}

/// An Alexander multigrading `(v_1, …, v_r)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Grading(pub Vec<HalfInt>);

impl Grading {
    pub fn new(coords: Vec<HalfInt>) -> Self {
        Grading(coords)
    }

    /// The diagonal grading `(k, …, k)`.
    pub fn diagonal(k: HalfInt, r: usize) -> Self {
        Grading(vec![k; r])
    }

    pub fn coords(&self) -> &[HalfInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> HalfInt {
        HalfInt(self.0.iter().map(|c| c.doubled()).sum())
    }

    pub fn top(&self) -> HalfInt {
        *self.0.iter().max().expect("empty grading")
    }

    /// Number of coordinates equal to the maximum.
    pub fn max_multiplicity(&self) -> usize {
        let k = self.top();
        self.0.iter().filter(|&&c| c == k).count()
    }

    pub fn sorted(&self) -> Vec<HalfInt> {
        let mut s = self.0.clone();
        s.sort();
        s
    }

    pub fn neg(&self) -> Grading {
        Grading(self.0.iter().map(|&c| -c).collect())
    }

    /// `v - e_B` for the subset `B` given as a bitmask.
    pub fn minus_set(&self, mask: u32) -> Grading {
        self.offset_set(mask, -1)
    }

    /// `v + e_B`.
    pub fn plus_set(&self, mask: u32) -> Grading {
        self.offset_set(mask, 1)
    }

    fn offset_set(&self, mask: u32, by: i64) -> Grading {
        Grading(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &c)| if mask >> i & 1 == 1 { c + by } else { c })
                .collect(),
        )
    }

    /// Translation by `k·(1, …, 1)`.
    pub fn shift(&self, k: HalfInt) -> Grading {
        Grading(self.0.iter().map(|&c| c + k).collect())
    }

    /// Sorted runs `(value, multiplicity, first position)`, ascending.
    pub fn blocks(&self) -> Vec<(HalfInt, usize, usize)> {
        let s = self.sorted();
        let mut out: Vec<(HalfInt, usize, usize)> = Vec::new();
        for (i, c) in s.into_iter().enumerate() {
            match out.last_mut() {
                Some(b) if b.0 == c => b.1 += 1,
                _ => out.push((c, 1, i)),
            }
        }
        out
    }

    /// Every lattice grading in `[lo, hi]^r` whose coordinates have the given doubled parity.
    pub fn box_iter(lo: HalfInt, hi: HalfInt, r: usize, parity: i64) -> impl Iterator<Item = Grading> {
        let mut first = lo;
        if first.parity() != parity.rem_euclid(2) {
            first = first + HalfInt::HALF;
        }
        let values: Vec<HalfInt> = std::iter::successors(Some(first), |&x| Some(x + 1))
            .take_while(|&x| x <= hi)
            .collect();
        let n = values.len();
        let total = if n == 0 { 0 } else { n.pow(r as u32) };
        (0..total).map(move |mut idx| {
            let mut coords = Vec::with_capacity(r);
            for _ in 0..r {
                coords.push(values[idx % n]);
                idx /= n;
            }
            coords.reverse();
            Grading(coords)
        })
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Grading {
    type Err = Error;

    /// Comma-separated half-integers, optionally in parentheses: `1/2,-3/2` or `(0,0,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        let coords = t
            .split(',')
            .map(|c| c.parse::<HalfInt>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Grading(coords))
    }
}

/// `K_{rm,rn}`: `r` parallel `(m,n)` cables of the companion `K`.
#[derive(Clone, Debug)]
pub struct CableLink {
    knot: LSpaceKnot,
    r: usize,
    m: i64,
    n: i64,
    l: i64,
    c2: i64,
    companion: Option<LSpaceKnot>,
    regime: Regime,
}

/// Builds the cable link and decides whether it is an L-space link.
pub fn classify(knot: &LSpaceKnot, r: usize, m: i64, n: i64) -> Result<CableLink> {
    if r == 0 || r > MAX_COMPONENTS {
        return Err(Error::Unsupported(format!(
            "r={r} components (supported: 1..={MAX_COMPONENTS})"
        )));
    }
    if m < 1 {
        return Err(Error::Unsupported(format!("cable winding m={m} must be positive")));
    }
    if gcd(m, n) != 1 {
        return Err(Error::NotCoprime(m, n));
    }
    let bound = m * (2 * knot.genus() - 1);
    let regime = if n > bound {
        Regime::Strict
    } else if n == bound {
        Regime::Boundary
    } else {
        Regime::NotLSpace
    };
    let companion = match regime {
        Regime::NotLSpace => None,
        _ if n <= 0 => {
            return Err(Error::Unsupported(format!(
                "cable slope n={n} <= 0 (negative linking number)"
            )))
        }
        _ => Some(cable_knot(knot, m, n)?),
    };
    let l = m * n;
    Ok(CableLink {
        knot: knot.clone(),
        r,
        m,
        n,
        l,
        c2: l * (r as i64 - 1),
        companion,
        regime,
    })
}

impl CableLink {
    pub fn knot(&self) -> &LSpaceKnot {
        &self.knot
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Pairwise linking number `mn`.
    pub fn l(&self) -> i64 {
        self.l
    }

    /// `c = l(r-1)/2`.
    pub fn c(&self) -> HalfInt {
        HalfInt(self.c2)
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// The knot `K_{m,n}` traced by each component.
    pub fn companion(&self) -> Result<&LSpaceKnot> {
        self.companion.as_ref().ok_or(Error::NotLSpaceLink)
    }

    pub fn require_lspace(&self) -> Result<()> {
        self.companion().map(|_| ())
    }

    pub fn require_strict(&self, what: &'static str) -> Result<()> {
        match self.regime {
            Regime::Strict => Ok(()),
            Regime::Boundary => Err(Error::UnsupportedInBoundaryRegime(what)),
            Regime::NotLSpace => Err(Error::NotLSpaceLink),
        }
    }

    /// Doubled parity shared by all lattice coordinates.
    pub fn parity(&self) -> i64 {
        self.c2.rem_euclid(2)
    }

    pub fn check_grading(&self, v: &Grading) -> Result<()> {
        if v.len() != self.r {
            return Err(Error::GradingLength {
                got: v.len(),
                expected: self.r,
            });
        }
        for &c in v.coords() {
            if c.parity() != self.parity() {
                return Err(Error::GradingParity {
                    coord: c,
                    lattice: HalfInt(self.parity()),
                });
            }
        }
        Ok(())
    }

    pub fn check_diagonal(&self, k: HalfInt) -> Result<()> {
        if k.parity() != self.parity() {
            return Err(Error::GradingParity {
                coord: k,
                lattice: HalfInt(self.parity()),
            });
        }
        Ok(())
    }

    /// `h(v)` for a lattice grading, without validation.
    pub(crate) fn h_raw(&self, coords: &[HalfInt]) -> i64 {
        let k = self.companion.as_ref().expect("h on a non L-space link");
        let mut buf = [0i64; MAX_COMPONENTS];
        let s = &mut buf[..coords.len()];
        for (slot, c) in s.iter_mut().zip(coords) {
            *slot = c.doubled();
        }
        s.sort_unstable();
        s.iter()
            .enumerate()
            .map(|(i, &d)| k.h((d - self.c2) / 2 + i as i64 * self.l))
            .sum()
    }

    /// `h(v) = Σ_i h_{m,n}(v_(i) - c + (i-1)l)` over the ascending coordinates `v_(i)`.
    pub fn h_cable(&self, v: &Grading) -> Result<i64> {
        self.require_lspace()?;
        self.check_grading(v)?;
        Ok(self.h_raw(v.coords()))
    }

    /// `𝐡(k) = h(k, …, k)`.
    pub fn hh(&self, k: HalfInt) -> Result<i64> {
        self.require_lspace()?;
        self.check_diagonal(k)?;
        Ok(self.hh_raw(k))
    }

    pub(crate) fn hh_raw(&self, k: HalfInt) -> i64 {
        let comp = self.companion.as_ref().expect("h on a non L-space link");
        let base = (k.doubled() - self.c2) / 2;
        (0..self.r as i64).map(|i| comp.h(base + i * self.l)).sum()
    }

    /// `β(k) = 𝐡(k-1) - 𝐡(k) - 1`.
    pub fn beta(&self, k: HalfInt) -> Result<i64> {
        self.require_lspace()?;
        self.check_diagonal(k)?;
        Ok(self.beta_raw(k))
    }

    pub(crate) fn beta_raw(&self, k: HalfInt) -> i64 {
        self.hh_raw(k - 1) - self.hh_raw(k) - 1
    }

    /// `β(k)` read off the knot Floer ranks of `K_{m,n}`: the largest `j ≤ r-1`
    /// with rank one at `k - c + lj`, or `-1` if there is none.
    pub fn beta_via_hfk(&self, k: HalfInt) -> Result<i64> {
        self.require_strict("reading beta from knot Floer ranks")?;
        self.check_diagonal(k)?;
        let comp = self.companion()?;
        let base = (k.doubled() - self.c2) / 2;
        Ok((0..self.r as i64)
            .rev()
            .find(|&j| comp.hfl_rank(base + self.l * j) == 1)
            .unwrap_or(-1))
    }

    /// Diagonal window `[lo, hi]` outside which `𝐡` is affine and `β` constant.
    pub fn default_window(&self) -> (HalfInt, HalfInt) {
        let gc = self.companion.as_ref().map_or(0, |k| k.genus());
        let d = 2 * gc + self.l * self.r as i64 + 4;
        let p = self.parity();
        let lo = if (-d).rem_euclid(2) == p { -d } else { -d - 1 };
        let hi = if d.rem_euclid(2) == p { d } else { d + 1 };
        (HalfInt(lo), HalfInt(hi))
    }

    pub fn diagonal_profile(&self) -> Result<DiagonalProfile> {
        let (lo, hi) = self.default_window();
        self.diagonal_profile_on(lo, hi)
    }

    /// Profile on a window that must contain the default one.
    pub fn diagonal_profile_on(&self, lo: HalfInt, hi: HalfInt) -> Result<DiagonalProfile> {
        self.require_lspace()?;
        self.check_diagonal(lo)?;
        self.check_diagonal(hi)?;
        let gc = self.companion()?.genus();
        let r = self.r as i64;
        // Below lo every argument of h_{m,n} is at most -g_c, above hi at least g_c.
        let left_ok = (lo.doubled() - self.c2) / 2 + self.l * (r - 1) <= -gc;
        let right_ok = (hi.doubled() - self.c2) / 2 > gc;
        if !left_ok || !right_ok {
            return Err(Error::Precondition(format!(
                "window [{lo}, {hi}] does not contain the unstable range"
            )));
        }
        let mut hh = BTreeMap::new();
        let mut beta = BTreeMap::new();
        let mut k = lo;
        while k <= hi {
            hh.insert(k, self.hh_raw(k));
            beta.insert(k, self.beta_raw(k));
            k = k + 1;
        }
        assert_eq!(beta[&lo], r - 1);
        assert_eq!(beta[&hi], -1);
        Ok(DiagonalProfile {
            r: self.r,
            lo,
            hi,
            hh,
            beta,
        })
    }

    /// `χ_{K_{m,n}}(𝐭)·(𝐭^{l/2} - 𝐭^{-l/2})^{r-1}` in the diagonal variable `𝐭 = t_1⋯t_r`.
    pub fn multivariable_chi(&self) -> Result<LaurentPoly> {
        let comp = self.companion()?;
        if self.r < 2 {
            return Err(Error::Precondition("multivariable chi needs r >= 2".into()));
        }
        let factor = LaurentPoly::antisym(HalfInt(self.l)).pow(self.r as u32 - 1);
        Ok(comp.chi().mul_poly(&factor).to_poly().expect("tail cancels for r >= 2"))
    }

    /// `χ(v) = Σ_B (-1)^{|B|-1} h(v - e_B)`.
    pub fn chi_at_grading(&self, v: &Grading) -> Result<i64> {
        self.require_lspace()?;
        self.check_grading(v)?;
        Ok((0u32..1 << self.r)
            .map(|b| {
                let sign = if b.count_ones() % 2 == 1 { 1 } else { -1 };
                sign * self.h_raw(v.minus_set(b).coords())
            })
            .sum())
    }
}

impl fmt::Display for CableLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} r={} m={} n={}", self.knot, self.r, self.m, self.n)
    }
}

/// `𝐡` and `β` on a window, extended by their stable behaviour outside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalProfile {
    r: usize,
    lo: HalfInt,
    hi: HalfInt,
    hh: BTreeMap<HalfInt, i64>,
    beta: BTreeMap<HalfInt, i64>,
}

impl DiagonalProfile {
    pub fn window(&self) -> (HalfInt, HalfInt) {
        (self.lo, self.hi)
    }

    pub fn hh(&self, k: HalfInt) -> i64 {
        if k > self.hi {
            0
        } else if k < self.lo {
            self.hh[&self.lo] + self.r as i64 * (self.lo - k).doubled() / 2
        } else {
            self.hh[&k]
        }
    }

    pub fn beta(&self, k: HalfInt) -> i64 {
        if k > self.hi {
            -1
        } else if k < self.lo {
            self.r as i64 - 1
        } else {
            self.beta[&k]
        }
    }

    /// `(k, 𝐡(k), β(k))` across the window, ascending in `k`.
    pub fn rows(&self) -> impl Iterator<Item = (HalfInt, i64, i64)> + '_ {
        self.hh.iter().map(|(&k, &h)| (k, h, self.beta[&k]))
    }
}

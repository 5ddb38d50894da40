//! Integer Laurent polynomials in one variable with half-integer exponents,
//! and the eventually constant series `Δ(t)/(1 - t⁻¹)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::HalfInt;

/// Finite sum `Σ c_e t^e` with `e ∈ ½ℤ`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    coeffs: BTreeMap<HalfInt, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(HalfInt::ZERO, 1)
    }

    pub fn monomial(exp: HalfInt, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `t^a - t^-a`.
    pub fn antisym(a: HalfInt) -> Self {
        let mut p = Self::monomial(a, 1);
        p.add_term(-a, -1);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (HalfInt, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Builds a polynomial from `(numerator, denominator, coefficient)` triples
    /// where the exponent is `numerator/denominator` and the denominator is 1 or 2.
    pub fn from_triples(triples: &[(i64, i64, i64)]) -> Result<Self> {
        let mut p = Self::zero();
        for &(num, den, c) in triples {
            let e = match den {
                1 => HalfInt::from_int(num),
                2 => HalfInt(num),
                _ => {
                    return Err(Error::InvalidPolynomial(format!(
                        "exponent denominator {den} is not 1 or 2"
                    )))
                }
            };
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exp: HalfInt, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: HalfInt) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (HalfInt, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<HalfInt> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<HalfInt> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<i64> {
        self.coeffs.values().next_back().copied()
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Invariance under `t ↦ t⁻¹`.
    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(e, c)| self.coeff(-e) == c)
    }

    /// The common parity of all doubled exponents, if they share one.
    pub fn coset(&self) -> Option<i64> {
        let mut it = self.coeffs.keys().map(|e| e.parity());
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// `p(t^k)`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e.times(k), c)))
    }

    pub fn shift(&self, by: HalfInt) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e + by, c)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let d_top = d.max_exp()?;
        let d_lc = d.leading_coeff()?;
        let d_span = d_top - d.min_exp()?;
        let mut rem = self.clone();
        let mut q = LaurentPoly::zero();
        while let Some(top) = rem.max_exp() {
            let span = top - rem.min_exp().unwrap();
            let lc = rem.leading_coeff().unwrap();
            if span < d_span || lc % d_lc != 0 {
                return None;
            }
            let term = LaurentPoly::monomial(top - d_top, lc / d_lc);
            rem = &rem - &(&term * d);
            q = &q + &term;
        }
        Some(q)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in o.terms() {
            p.add_term(e, c);
        }
        p
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in o.terms() {
            p.add_term(e, -c);
        }
        p
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                p.add_term(a + b, x * y);
            }
        }
        p
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

fn fmt_exp(e: HalfInt) -> String {
    if e.is_integer() {
        format!("t^{}", e.doubled() / 2)
    } else {
        format!("t^({}/2)", e.doubled())
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest exponent first, e.g. `t^3-t^2+1-t^-2+t^-3` or `t^(1/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            let body = match (e == HalfInt::ZERO, e == HalfInt::ONE, mag) {
                (true, _, m) => m.to_string(),
                (false, true, 1) => "t".to_string(),
                (false, true, m) => format!("{m}t"),
                (false, false, 1) => fmt_exp(e),
                (false, false, m) => format!("{m}{}", fmt_exp(e)),
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

/// Grammar: `poly := term (('+'|'-') term)*`, `term := [int] ['*'] ['t' ['^' exp]]`,
/// `exp := int | '(' half ')'` where `half` is `int` or `int/2`. Whitespace is ignored.
impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |msg: &str| Error::InvalidPolynomial(format!("{msg} in {s:?}"));
        if chars.is_empty() {
            return Err(err("empty input"));
        }
        let mut pos = 0usize;
        let mut out = LaurentPoly::zero();

        fn read_int(chars: &[char], pos: &mut usize) -> Option<i64> {
            let start = *pos;
            if *pos < chars.len() && (chars[*pos] == '-' || chars[*pos] == '+') {
                *pos += 1;
            }
            let digits = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == digits {
                *pos = start;
                return None;
            }
            chars[start..*pos].iter().collect::<String>().parse().ok()
        }

        let mut first = true;
        while pos < chars.len() {
            let mut sign = 1i64;
            match chars[pos] {
                '+' => pos += 1,
                '-' => {
                    sign = -1;
                    pos += 1
                }
                _ if !first => return Err(err("expected '+' or '-'")),
                _ => {}
            }
            first = false;
            let mut coeff: Option<i64> = None;
            let digits = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos > digits {
                let text: String = chars[digits..pos].iter().collect();
                coeff = Some(text.parse().map_err(|_| err("coefficient overflow"))?);
                if pos < chars.len() && chars[pos] == '*' {
                    pos += 1;
                }
            }
            let mut exp = HalfInt::ZERO;
            if pos < chars.len() && chars[pos] == 't' {
                pos += 1;
                exp = HalfInt::ONE;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    if pos < chars.len() && chars[pos] == '(' {
                        pos += 1;
                        let num = read_int(&chars, &mut pos).ok_or_else(|| err("bad exponent"))?;
                        let mut den = 1;
                        if pos < chars.len() && chars[pos] == '/' {
                            pos += 1;
                            den = read_int(&chars, &mut pos).ok_or_else(|| err("bad exponent"))?;
                        }
                        if pos >= chars.len() || chars[pos] != ')' {
                            return Err(err("missing ')'"));
                        }
                        pos += 1;
                        exp = match den {
                            1 => HalfInt::from_int(num),
                            2 => HalfInt(num),
                            _ => return Err(err("exponent denominator must be 1 or 2")),
                        };
                    } else {
                        let num = read_int(&chars, &mut pos).ok_or_else(|| err("bad exponent"))?;
                        exp = HalfInt::from_int(num);
                    }
                }
            } else if coeff.is_none() {
                return Err(err("expected a term"));
            }
            out.add_term(exp, sign * coeff.unwrap_or(1));
        }
        Ok(out)
    }
}

/// The series `Σ c_e t^e` that agrees with `finite` at `e ≥ tail_start`
/// and equals `tail_value` for every lattice point below `tail_start`.
///
/// Exponents live in the coset of `tail_start` modulo 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiSeries {
    finite: BTreeMap<HalfInt, i64>,
    tail_start: HalfInt,
    tail_value: i64,
}

impl ChiSeries {
    pub fn tail_start(&self) -> HalfInt {
        self.tail_start
    }

    pub fn tail_value(&self) -> i64 {
        self.tail_value
    }

    /// Nonzero coefficients at or above `tail_start`.
    pub fn finite(&self) -> &BTreeMap<HalfInt, i64> {
        &self.finite
    }

    pub fn coeff(&self, e: HalfInt) -> i64 {
        if e.parity() != self.tail_start.parity() {
            0
        } else if e < self.tail_start {
            self.tail_value
        } else {
            self.finite.get(&e).copied().unwrap_or(0)
        }
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn top(&self) -> Option<HalfInt> {
        match self.finite.keys().next_back() {
            Some(&e) => Some(e),
            None if self.tail_value != 0 => Some(self.tail_start - 1),
            None => None,
        }
    }

    /// Moves `tail_start` down to the first point where the series departs from the tail.
    fn normalize(mut self) -> Self {
        self.finite.retain(|_, c| *c != 0);
        loop {
            let c = self.finite.get(&self.tail_start).copied().unwrap_or(0);
            if c != self.tail_value {
                break;
            }
            self.finite.remove(&self.tail_start);
            self.tail_start = self.tail_start + 1;
            if self.finite.is_empty() && self.tail_value == 0 {
                break;
            }
        }
        self
    }

    /// Product with a finite polynomial whose exponents share one coset.
    pub fn mul_poly(&self, p: &LaurentPoly) -> ChiSeries {
        let (Some(pmin), Some(pmax)) = (p.min_exp(), p.max_exp()) else {
            return ChiSeries {
                finite: BTreeMap::new(),
                tail_start: self.tail_start,
                tail_value: 0,
            };
        };
        assert!(p.coset().is_some(), "polynomial exponents span two cosets");
        let top = self.finite.keys().next_back().copied().unwrap_or(self.tail_start - 1);
        let start = self.tail_start + pmin;
        let mut finite = BTreeMap::new();
        let mut e = start;
        while e <= top + pmax {
            let c: i64 = p.terms().map(|(pe, pc)| pc * self.coeff(e - pe)).sum();
            if c != 0 {
                finite.insert(e, c);
            }
            e = e + 1;
        }
        ChiSeries {
            finite,
            tail_start: start,
            tail_value: self.tail_value * p.eval_one(),
        }
        .normalize()
    }

    /// The series as a polynomial, when its tail vanishes.
    pub fn to_poly(&self) -> Option<LaurentPoly> {
        (self.tail_value == 0).then(|| LaurentPoly::from_terms(self.finite.iter().map(|(&e, &c)| (e, c))))
    }
}

/// Expands `Δ(t)·(1 + t⁻¹ + t⁻² + …)`.
pub fn chi_expand(delta: &LaurentPoly) -> Result<ChiSeries> {
    if delta.is_zero() {
        return Err(Error::InvalidPolynomial("zero polynomial".into()));
    }
    if !delta.is_symmetric() {
        return Err(Error::InvalidPolynomial("not symmetric under t -> 1/t".into()));
    }
    if delta.eval_one() != 1 {
        return Err(Error::InvalidPolynomial(format!(
            "value at t=1 is {}",
            delta.eval_one()
        )));
    }
    if delta.coset().is_none() {
        return Err(Error::InvalidPolynomial("exponents are not congruent mod 1".into()));
    }
    let lo = delta.min_exp().unwrap();
    let hi = delta.max_exp().unwrap();
    let mut finite = BTreeMap::new();
    let mut acc = 0;
    let mut e = hi;
    while e >= lo {
        acc += delta.coeff(e);
        finite.insert(e, acc);
        e = e - 1;
    }
    Ok(ChiSeries {
        finite,
        tail_start: lo,
        tail_value: acc,
    }
    .normalize())
}

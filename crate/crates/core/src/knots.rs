//! L-space knots described by their Alexander polynomials.

use std::fmt;

use crate::error::{Error, KnotRejection, Result};
use crate::half::HalfInt;
use crate::laurent::{chi_expand, ChiSeries, LaurentPoly};

/// An L-space knot. Two knots are equal when their Alexander polynomials are.
#[derive(Clone, Debug)]
pub struct LSpaceKnot {
    alexander: LaurentPoly,
    genus: i64,
    chi: ChiSeries,
    /// `h(v)` for `v` in `[-genus, genus]`.
    h_table: Vec<i64>,
    name: Option<String>,
}

impl PartialEq for LSpaceKnot {
    fn eq(&self, other: &Self) -> bool {
        self.alexander == other.alexander
    }
}

impl Eq for LSpaceKnot {}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Checks the L-space knot constraints and builds the knot.
pub fn validate(delta: &LaurentPoly) -> Result<LSpaceKnot> {
    if delta.is_zero() {
        return Err(KnotRejection::Zero.into());
    }
    for (e, c) in delta.terms() {
        if !e.is_integer() {
            return Err(KnotRejection::HalfIntegerExponent(e).into());
        }
        if c.abs() > 1 {
            return Err(KnotRejection::CoefficientTooLarge { exp: e, coeff: c }.into());
        }
    }
    let mut prev: Option<i64> = None;
    for (e, c) in delta.terms().rev() {
        if prev == Some(c) {
            return Err(KnotRejection::NonAlternating { exp: e }.into());
        }
        prev = Some(c);
    }
    if !delta.is_symmetric() {
        return Err(KnotRejection::Asymmetric.into());
    }
    if delta.eval_one() != 1 {
        return Err(KnotRejection::BadNormalization(delta.eval_one()).into());
    }
    let genus = delta.max_exp().unwrap().to_int().unwrap();
    let chi = chi_expand(delta)?;
    let mut h_table = vec![0i64; (2 * genus + 1) as usize];
    for v in (-genus..genus).rev() {
        let idx = (v + genus) as usize;
        h_table[idx] = h_table[idx + 1] + chi.coeff(HalfInt::from_int(v + 1));
    }
    Ok(LSpaceKnot {
        alexander: delta.clone(),
        genus,
        chi,
        h_table,
        name: None,
    })
}

impl LSpaceKnot {
    pub fn unknot() -> Self {
        validate(&LaurentPoly::one()).unwrap().named("unknot")
    }

    pub fn trefoil() -> Self {
        torus_knot(2, 3).unwrap().named("trefoil")
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn alexander(&self) -> &LaurentPoly {
        &self.alexander
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn chi(&self) -> &ChiSeries {
        &self.chi
    }

    /// `h(v) = Σ_{u > v} χ_u`.
    pub fn h(&self, v: i64) -> i64 {
        let g = self.genus;
        if v >= g {
            0
        } else if v < -g {
            -v
        } else {
            self.h_table[(v + g) as usize]
        }
    }

    /// Rank of the knot Floer group at `v` in the minus flavor, `h(v-1) - h(v)`.
    pub fn hfl_rank(&self, v: i64) -> i64 {
        self.h(v - 1) - self.h(v)
    }
}

impl fmt::Display for LSpaceKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "poly:{}", self.alexander),
        }
    }
}

/// `T(p,q)` for coprime positive `p, q`.
pub fn torus_knot(p: i64, q: i64) -> Result<LSpaceKnot> {
    if p <= 0 || q <= 0 {
        return Err(Error::Unsupported(format!(
            "torus knot T({p},{q}) needs positive parameters"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let num = &LaurentPoly::antisym(HalfInt(p * q)) * &LaurentPoly::antisym(HalfInt::HALF);
    let den = &LaurentPoly::antisym(HalfInt(p)) * &LaurentPoly::antisym(HalfInt(q));
    let delta = num.div_exact(&den).expect("torus knot quotient is exact");
    Ok(validate(&delta)?.named(format!("T({p},{q})")))
}

/// The `(m,n)` cable of `k`, where `m` is the longitudinal winding.
pub fn cable_knot(k: &LSpaceKnot, m: i64, n: i64) -> Result<LSpaceKnot> {
    if m < 1 {
        return Err(Error::Unsupported(format!("cable winding m={m} must be positive")));
    }
    if gcd(m, n) != 1 {
        return Err(Error::NotCoprime(m, n));
    }
    let g = k.genus;
    if m == 1 {
        if n < 2 * g - 1 {
            return Err(Error::CablingCondition { m, n, genus: g });
        }
        return Ok(k.clone());
    }
    if n <= m * (2 * g - 1) {
        return Err(Error::CablingCondition { m, n, genus: g });
    }
    if n < 1 {
        return Err(Error::Unsupported(format!("cable ({m},{n}) with negative slope")));
    }
    let delta = &k.alexander.substitute_power(m) * torus_knot(m, n)?.alexander();
    let out = validate(&delta)?;
    debug_assert_eq!(out.genus, m * g + (m - 1) * (n - 1) / 2);
    Ok(out.named(format!("cable({k},{m},{n})")))
}

/// Parses `unknot`, `trefoil`, `torus(p,q)`, `cable(<knot>,m,n)` or `poly:<polynomial>`.
///
/// The polynomial is either a Laurent string such as `t-1+t^-1` or a list of
/// `(numerator, denominator, coefficient)` triples such as `[(1,1,1),(0,1,-1),(-1,1,1)]`.
pub fn parse_knot(s: &str) -> Result<LSpaceKnot> {
    let s = s.trim();
    let perr = |msg: String| Error::Parse(format!("{msg} in knot spec {s:?}"));
    if let Some(body) = s.strip_prefix("poly:") {
        let body = body.trim();
        let delta = if body.starts_with('[') {
            parse_triples(body).map_err(perr)?
        } else {
            body.parse::<LaurentPoly>()?
        };
        return validate(&delta);
    }
    match s {
        "unknot" => return Ok(LSpaceKnot::unknot()),
        "trefoil" => return Ok(LSpaceKnot::trefoil()),
        _ => {}
    }
    let (head, args) = s
        .split_once('(')
        .and_then(|(h, rest)| rest.strip_suffix(')').map(|a| (h.trim(), a)))
        .ok_or_else(|| perr("unrecognised knot".into()))?;
    let parts = split_top_level(args);
    let int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| perr(format!("expected integer, got {t:?}")))
    };
    match (head, parts.as_slice()) {
        ("torus", [p, q]) => torus_knot(int(p)?, int(q)?),
        ("cable", [inner, m, n]) => cable_knot(&parse_knot(inner)?, int(m)?, int(n)?),
        _ => Err(perr("unrecognised knot".into())),
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_triples(s: &str) -> std::result::Result<LaurentPoly, String> {
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or("unbalanced brackets")?;
    let mut triples = Vec::new();
    for item in split_top_level(inner) {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let body = item
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .or_else(|| item.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
            .ok_or_else(|| format!("bad triple {item:?}"))?;
        let nums: Vec<i64> = body
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| format!("bad number {x:?}")))
            .collect::<std::result::Result<_, _>>()?;
        let [a, b, c] = nums[..] else {
            return Err(format!("triple {item:?} needs three entries"));
        };
        triples.push((a, b, c));
    }
    LaurentPoly::from_triples(&triples).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn validate_examples() {
        let u = validate(&LaurentPoly::one()).unwrap();
        assert_eq!(u.genus(), 0);
        let t = validate(&p("t-1+t^-1")).unwrap();
        assert_eq!(t.genus(), 1);
        assert!(matches!(
            validate(&p("t-2+t^-1")),
            Err(Error::Rejected(KnotRejection::CoefficientTooLarge { .. }))
        ));
        assert!(matches!(
            validate(&p("t+t^-1-1+t^2")),
            Err(Error::Rejected(KnotRejection::NonAlternating { .. }))
        ));
        assert!(matches!(
            validate(&p("t^2-t+1")),
            Err(Error::Rejected(KnotRejection::Asymmetric))
        ));
        assert!(matches!(
            validate(&p("-t+1-t^-1")),
            Err(Error::Rejected(KnotRejection::BadNormalization(-1)))
        ));
        assert!(matches!(
            validate(&p("t^(1/2)")),
            Err(Error::Rejected(KnotRejection::HalfIntegerExponent(_)))
        ));
    }

    #[test]
    fn h_of_small_knots() {
        let u = LSpaceKnot::unknot();
        for v in -6..6 {
            assert_eq!(u.h(v), 0.max(-v));
            assert_eq!(u.hfl_rank(v), i64::from(v <= 0));
        }
        let t = LSpaceKnot::trefoil();
        assert_eq!([t.h(1), t.h(0), t.h(-1), t.h(-2)], [0, 1, 1, 2]);
        assert_eq!([t.hfl_rank(1), t.hfl_rank(0), t.hfl_rank(-1)], [1, 0, 1]);
    }

    #[test]
    fn torus_knots() {
        assert_eq!(torus_knot(2, 3).unwrap().alexander(), &p("t-1+t^-1"));
        assert_eq!(torus_knot(1, 7).unwrap().alexander(), &LaurentPoly::one());
        let t34 = torus_knot(3, 4).unwrap();
        assert_eq!(t34.genus(), 3);
        assert_eq!(t34.alexander(), &p("t^3-t^2+1-t^-2+t^-3"));
        let t35 = torus_knot(3, 5).unwrap();
        assert_eq!(t35.genus(), 4);
        assert_eq!(t35.alexander().len(), 7);
        assert_eq!(torus_knot(2, 5).unwrap().alexander(), &p("t^2-t+1-t^-1+t^-2"));
        assert!(matches!(torus_knot(2, 4), Err(Error::NotCoprime(2, 4))));
    }

    #[test]
    fn cables() {
        let u = LSpaceKnot::unknot();
        let t = LSpaceKnot::trefoil();
        assert_eq!(cable_knot(&u, 2, 3).unwrap(), t);
        let c = cable_knot(&t, 2, 3).unwrap();
        assert_eq!(c.genus(), 3);
        for (v, x) in [(3, 1), (2, 0), (1, 0), (0, 1), (-1, 1), (-2, 0), (-3, 1), (-4, 1)] {
            assert_eq!(c.chi().coeff(HalfInt::from_int(v)), x);
        }
        assert_eq!(cable_knot(&t, 1, 5).unwrap(), t);
        assert!(matches!(cable_knot(&t, 2, 1), Err(Error::CablingCondition { .. })));
        assert!(matches!(cable_knot(&t, 1, 0), Err(Error::CablingCondition { .. })));
        assert!(matches!(cable_knot(&t, 2, 4), Err(Error::NotCoprime(2, 4))));
        let h = cable_knot(&t, 2, 3).unwrap();
        let hv: Vec<i64> = (-3..=3).rev().map(|v| h.h(v)).collect();
        assert_eq!(hv, vec![0, 1, 1, 1, 2, 3, 3]);
    }

    #[test]
    fn knot_spec_grammar() {
        assert_eq!(parse_knot("unknot").unwrap(), LSpaceKnot::unknot());
        assert_eq!(parse_knot("torus(2,3)").unwrap(), LSpaceKnot::trefoil());
        assert_eq!(
            parse_knot("cable(trefoil,2,3)").unwrap(),
            parse_knot("poly:t^3-t^2+1-t^-2+t^-3").unwrap()
        );
        assert_eq!(parse_knot("cable(cable(trefoil,2,3),2,15)").unwrap().genus(), 2 * 3 + 7);
        assert_eq!(
            parse_knot("poly:[(1,1,1),(0,1,-1),(-1,1,1)]").unwrap(),
            LSpaceKnot::trefoil()
        );
        assert!(matches!(parse_knot("figure8"), Err(Error::Parse(_))));
        assert!(matches!(parse_knot("torus(2,x)"), Err(Error::Parse(_))));
        assert!(parse_knot("poly:t-2+t^-1").is_err());
    }

    fn knots() -> impl Strategy<Value = LSpaceKnot> {
        prop_oneof![
            Just(LSpaceKnot::unknot()),
            Just(LSpaceKnot::trefoil()),
            Just(torus_knot(2, 5).unwrap()),
            Just(torus_knot(3, 4).unwrap()),
            Just(torus_knot(3, 5).unwrap()),
            Just(torus_knot(4, 7).unwrap()),
            Just(cable_knot(&LSpaceKnot::trefoil(), 2, 3).unwrap()),
            Just(cable_knot(&torus_knot(2, 5).unwrap(), 2, 7).unwrap()),
            Just(cable_knot(&torus_knot(3, 4).unwrap(), 3, 17).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn h_symmetry_and_rank(k in knots()) {
            let g = k.genus();
            for v in -2 * g - 5..=2 * g + 5 {
                prop_assert_eq!(k.h(-v), k.h(v) + v);
                let r = k.hfl_rank(v);
                prop_assert!(r == 0 || r == 1);
                prop_assert_eq!(r, k.chi().coeff(HalfInt::from_int(v)));
                if v <= -g {
                    prop_assert_eq!(r, 1);
                }
                if v >= g {
                    prop_assert_eq!(k.h(v), 0);
                }
            }
        }

        #[test]
        fn cables_stay_lspace(k in knots(), m in 1i64..4, extra in 1i64..6) {
            let n = m * (2 * k.genus() - 1) + extra;
            prop_assume!(gcd(m, n) == 1 && n >= 1);
            let c = cable_knot(&k, m, n).unwrap();
            prop_assert_eq!(c.genus(), m * k.genus() + (m - 1) * (n - 1) / 2);
            prop_assert_eq!(c.alexander().max_exp().unwrap(), HalfInt::from_int(c.genus()));
            prop_assert!(validate(c.alexander()).is_ok());
        }
    }
}

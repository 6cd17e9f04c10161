//! The extended real line `[-inf, inf]` as a commutative quantale.
//!
//! Order is the natural one; the monoid operation is the extended sum, where
//! `+inf` absorbs everything (including `-inf`). The internal hom is the
//! extended difference `ediff(nu, mu) = min { l | l + mu >= nu }`, which gives
//! the asymmetric rules `inf - inf = -inf` and `-inf - -inf = -inf`.
//!
//! All finite values are exact rationals. Only the exponential/logarithm
//! isomorphism with the multiplicative structure is approximate, and its
//! results carry an exactness flag.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element of `[-inf, inf]`.
///
/// The derived ordering is the lattice order: `NegInf < Finite(_) < PosInf`,
/// finite values compared as rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtReal {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        ExtReal::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        ExtReal::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_pos_inf(&self) -> bool {
        matches!(self, ExtReal::PosInf)
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, ExtReal::NegInf)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtReal::Finite(q) if q.is_zero())
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtReal::Finite(q) => Some(q),
            _ => None,
        }
    }

    /// Extended sum; see [`esum`].
    pub fn esum(&self, other: &ExtReal) -> ExtReal {
        esum(self, other)
    }

    /// Join (maximum).
    pub fn join(&self, other: &ExtReal) -> ExtReal {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Meet (minimum).
    pub fn meet(&self, other: &ExtReal) -> ExtReal {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Absolute value, `|-inf| = inf`.
    pub fn abs(&self) -> ExtReal {
        match self {
            ExtReal::Finite(q) => ExtReal::Finite(q.abs()),
            _ => ExtReal::PosInf,
        }
    }
}

impl From<BigRational> for ExtReal {
    fn from(q: BigRational) -> Self {
        ExtReal::Finite(q)
    }
}

impl From<i64> for ExtReal {
    fn from(n: i64) -> Self {
        ExtReal::int(n)
    }
}

/// Extended sum `a + b`.
///
/// `+inf` is absorbing, so `-inf + inf = inf`; `-inf + finite = -inf`.
pub fn esum(a: &ExtReal, b: &ExtReal) -> ExtReal {
    use ExtReal::*;
    match (a, b) {
        (PosInf, _) | (_, PosInf) => PosInf,
        (NegInf, _) | (_, NegInf) => NegInf,
        (Finite(x), Finite(y)) => Finite(x + y),
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: ExtReal) -> ExtReal {
        esum(&self, &rhs)
    }
}

impl<'a> Add<&'a ExtReal> for &'a ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: &'a ExtReal) -> ExtReal {
        esum(self, rhs)
    }
}

/// Order-reversing negation; swaps the two infinities.
impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::Finite(q) => ExtReal::Finite(-q),
        }
    }
}

/// Sum of a sequence under [`esum`]; the empty sum is `0`.
pub fn esum_all<'a, I: IntoIterator<Item = &'a ExtReal>>(items: I) -> ExtReal {
    items.into_iter().fold(ExtReal::zero(), |acc, x| esum(&acc, x))
}

/// Extended difference `nu - mu`: the least `l` with `l + mu >= nu`.
pub fn ediff(nu: &ExtReal, mu: &ExtReal) -> ExtReal {
    use ExtReal::*;
    match (nu, mu) {
        // l + inf = inf >= nu for every l
        (_, PosInf) => NegInf,
        // l + -inf is -inf unless l = inf
        (NegInf, NegInf) => NegInf,
        (_, NegInf) => PosInf,
        (PosInf, Finite(_)) => PosInf,
        (NegInf, Finite(_)) => NegInf,
        (Finite(x), Finite(y)) => Finite(x - y),
    }
}

/// Join of a sequence; the empty join is the bottom `-inf`.
pub fn join_all<'a, I: IntoIterator<Item = &'a ExtReal>>(items: I) -> ExtReal {
    items
        .into_iter()
        .fold(ExtReal::NegInf, |acc, x| if *x > acc { x.clone() } else { acc })
}

/// Meet of a sequence; the empty meet is the top `+inf`.
pub fn meet_all<'a, I: IntoIterator<Item = &'a ExtReal>>(items: I) -> ExtReal {
    items
        .into_iter()
        .fold(ExtReal::PosInf, |acc, x| if *x < acc { x.clone() } else { acc })
}

/// An element of `[0, inf]`: lengths, ascents, descents, Lipschitz weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(ExtReal);

impl Weight {
    pub fn new(value: ExtReal) -> Result<Self> {
        if value < ExtReal::zero() {
            return Err(Error::Domain(format!("weight must be >= 0, got {value}")));
        }
        Ok(Weight(value))
    }

    pub fn zero() -> Self {
        Weight(ExtReal::zero())
    }

    pub fn infinite() -> Self {
        Weight(ExtReal::PosInf)
    }

    pub fn value(&self) -> &ExtReal {
        &self.0
    }

    pub fn into_inner(self) -> ExtReal {
        self.0
    }

    pub fn is_infinite(&self) -> bool {
        self.0.is_pos_inf()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(esum(&self.0, &other.0))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Truncated difference, the internal hom of `[0, inf]`: `(nu - mu) v 0`,
/// with `inf - inf = 0`.
pub fn trunc_diff(nu: &Weight, mu: &Weight) -> Weight {
    match (nu.value(), mu.value()) {
        (_, ExtReal::PosInf) => Weight::zero(),
        (ExtReal::PosInf, _) => Weight::infinite(),
        (ExtReal::Finite(x), ExtReal::Finite(y)) => {
            if x > y {
                Weight(ExtReal::Finite(x - y))
            } else {
                Weight::zero()
            }
        }
        // weights are never -inf
        _ => unreachable!("weight holding -inf"),
    }
}

/// Positive part `a v 0`, the coreflector onto `[0, inf]`.
pub fn positive_part(a: &ExtReal) -> Weight {
    if *a > ExtReal::zero() {
        Weight(a.clone())
    } else {
        Weight::zero()
    }
}

/// A finite nonnegative Lipschitz coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coeff(BigRational);

impl Coeff {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::Domain(format!("coefficient must be >= 0, got {value}")));
        }
        Ok(Coeff(value))
    }

    pub fn int(n: u32) -> Self {
        Coeff(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn one() -> Self {
        Coeff(BigRational::one())
    }

    pub fn zero() -> Self {
        Coeff(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl FromStr for Coeff {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<ExtReal>()? {
            ExtReal::Finite(q) => Coeff::new(q),
            other => Err(Error::Domain(format!("coefficient must be finite, got {other}"))),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.0)
    }
}

/// `l * a` with `0 * inf = inf` and `0 * -inf = -inf`.
pub fn scale(l: &Coeff, a: &ExtReal) -> ExtReal {
    match a {
        ExtReal::Finite(q) => ExtReal::Finite(l.value() * q),
        inf => inf.clone(),
    }
}

/// An element of `[0, inf]` under multiplication. Finite values are binary
/// floating point and therefore approximate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MulWeight {
    Finite(f64),
    Infinite,
}

impl MulWeight {
    /// Product with `l * inf = inf` for every `l`, including `0`.
    pub fn mul(self, other: MulWeight) -> MulWeight {
        match (self, other) {
            (MulWeight::Infinite, _) | (_, MulWeight::Infinite) => MulWeight::Infinite,
            (MulWeight::Finite(a), MulWeight::Finite(b)) => MulWeight::Finite(a * b),
        }
    }

    /// Internal hom `nu / mu`: the least `l` with `l * mu >= nu`.
    /// Gives `inf / inf = 0 = 0 / 0`.
    pub fn quotient(nu: MulWeight, mu: MulWeight) -> MulWeight {
        match (nu, mu) {
            (_, MulWeight::Infinite) => MulWeight::Finite(0.0),
            (MulWeight::Infinite, MulWeight::Finite(_)) => MulWeight::Infinite,
            (MulWeight::Finite(n), MulWeight::Finite(m)) => {
                if n <= 0.0 {
                    MulWeight::Finite(0.0)
                } else if m == 0.0 {
                    MulWeight::Infinite
                } else {
                    MulWeight::Finite(n / m)
                }
            }
        }
    }
}

/// A value tagged with whether it was computed exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct Approximate<T> {
    pub value: T,
    pub exact: bool,
}

/// `exp: [-inf, inf] -> [0, inf]`. Exact on the two infinities and on `0`.
pub fn exp_iso(a: &ExtReal) -> Approximate<MulWeight> {
    match a {
        ExtReal::NegInf => Approximate { value: MulWeight::Finite(0.0), exact: true },
        ExtReal::PosInf => Approximate { value: MulWeight::Infinite, exact: true },
        ExtReal::Finite(q) if q.is_zero() => Approximate { value: MulWeight::Finite(1.0), exact: true },
        ExtReal::Finite(q) => {
            let x = q.to_f64().unwrap_or(f64::NAN);
            let e = x.exp();
            if e.is_infinite() {
                // overflow of the float evaluation, not the true infinity
                Approximate { value: MulWeight::Finite(f64::MAX), exact: false }
            } else {
                Approximate { value: MulWeight::Finite(e), exact: false }
            }
        }
    }
}

/// `ln: [0, inf] -> [-inf, inf]`, inverse of [`exp_iso`]. Rejects negative input.
pub fn ln_iso(b: MulWeight) -> Result<Approximate<ExtReal>> {
    match b {
        MulWeight::Infinite => Ok(Approximate { value: ExtReal::PosInf, exact: true }),
        MulWeight::Finite(x) if x.is_nan() || x < 0.0 => {
            Err(Error::Domain(format!("ln is undefined on {x}")))
        }
        MulWeight::Finite(x) if x == 0.0 => Ok(Approximate { value: ExtReal::NegInf, exact: true }),
        MulWeight::Finite(x) if x == 1.0 => Ok(Approximate { value: ExtReal::zero(), exact: true }),
        MulWeight::Finite(x) => {
            let q = BigRational::from_f64(x.ln())
                .ok_or_else(|| Error::Domain(format!("ln({x}) is not representable")))?;
            Ok(Approximate { value: ExtReal::Finite(q), exact: false })
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Renders `inf`, `-inf`, integers, or reduced `p/q`.
impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::PosInf => f.write_str("inf"),
            ExtReal::Finite(q) => write_rational(f, q),
        }
    }
}

/// Parses an exact rational from `p/q`, an integer, or a decimal literal
/// with optional exponent (`-1.25`, `3e-2`).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().map_err(|_| bad())? / 10;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        q = -q;
    }
    Ok(q)
}

impl FromStr for ExtReal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "Infinity" | "+Infinity" => Ok(ExtReal::PosInf),
            "-inf" | "-Infinity" => Ok(ExtReal::NegInf),
            other => parse_rational(other).map(ExtReal::Finite),
        }
    }
}

impl PartialEq<i64> for ExtReal {
    fn eq(&self, other: &i64) -> bool {
        *self == ExtReal::int(*other)
    }
}

impl PartialOrd<i64> for ExtReal {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&ExtReal::int(*other)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> ExtReal {
        s.parse().unwrap()
    }

    fn sample() -> Vec<ExtReal> {
        ["-inf", "-2", "-1", "0", "1/2", "1", "3", "inf"].iter().map(|s| v(s)).collect()
    }

    #[test]
    fn esum_examples() {
        assert_eq!(esum(&ExtReal::NegInf, &ExtReal::PosInf), ExtReal::PosInf);
        assert_eq!(esum(&v("2"), &v("3")), v("5"));
        for x in sample() {
            assert_eq!(esum(&ExtReal::zero(), &x), x);
        }
        assert_eq!(esum(&ExtReal::NegInf, &v("7")), ExtReal::NegInf);
    }

    #[test]
    fn ediff_indeterminate_forms() {
        assert_eq!(ediff(&ExtReal::PosInf, &ExtReal::PosInf), ExtReal::NegInf);
        assert_eq!(ediff(&ExtReal::NegInf, &ExtReal::NegInf), ExtReal::NegInf);
        assert_eq!(ediff(&v("3"), &ExtReal::NegInf), ExtReal::PosInf);
        assert_eq!(ediff(&v("3"), &v("1/2")), v("5/2"));
    }

    #[test]
    fn ediff_is_least_solution() {
        // brute force over the sample, which is closed under the relevant results
        let s = sample();
        for nu in &s {
            for mu in &s {
                let d = ediff(nu, mu);
                assert!(esum(&d, mu) >= *nu);
                for l in &s {
                    if esum(l, mu) >= *nu {
                        assert!(*l >= d, "{l} solves {mu} + l >= {nu} but is below {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn trunc_diff_examples() {
        let w = |s: &str| Weight::new(v(s)).unwrap();
        assert_eq!(trunc_diff(&Weight::infinite(), &Weight::infinite()), Weight::zero());
        assert_eq!(trunc_diff(&w("2"), &w("5")), Weight::zero());
        assert_eq!(trunc_diff(&w("5"), &w("2")), w("3"));
        assert_eq!(trunc_diff(&Weight::infinite(), &w("2")), Weight::infinite());
    }

    #[test]
    fn scale_conventions() {
        assert_eq!(scale(&Coeff::zero(), &ExtReal::PosInf), ExtReal::PosInf);
        assert_eq!(scale(&Coeff::zero(), &ExtReal::NegInf), ExtReal::NegInf);
        assert_eq!(scale(&Coeff::int(2), &v("3")), v("6"));
        assert_eq!(scale(&Coeff::zero(), &v("-4")), ExtReal::zero());
        assert!(Coeff::new(BigRational::from_integer((-1).into())).is_err());
    }

    #[test]
    fn positive_part_examples() {
        assert_eq!(positive_part(&v("-3")), Weight::zero());
        assert_eq!(positive_part(&ExtReal::NegInf), Weight::zero());
        assert_eq!(positive_part(&ExtReal::PosInf), Weight::infinite());
        assert!(Weight::new(v("-1")).is_err());
    }

    #[test]
    fn exp_ln_endpoints() {
        assert_eq!(exp_iso(&ExtReal::zero()), Approximate { value: MulWeight::Finite(1.0), exact: true });
        assert_eq!(exp_iso(&ExtReal::NegInf).value, MulWeight::Finite(0.0));
        assert_eq!(exp_iso(&ExtReal::PosInf).value, MulWeight::Infinite);
        assert!(!exp_iso(&v("1")).exact);
        assert_eq!(MulWeight::quotient(MulWeight::Infinite, MulWeight::Infinite), MulWeight::Finite(0.0));
        assert_eq!(MulWeight::quotient(MulWeight::Finite(0.0), MulWeight::Finite(0.0)), MulWeight::Finite(0.0));
        assert_eq!(MulWeight::Finite(0.0).mul(MulWeight::Infinite), MulWeight::Infinite);
        assert_eq!(ln_iso(MulWeight::Finite(0.0)).unwrap().value, ExtReal::NegInf);
        assert_eq!(ln_iso(MulWeight::Infinite).unwrap().value, ExtReal::PosInf);
        assert_eq!(ln_iso(MulWeight::Finite(1.0)).unwrap(), Approximate { value: ExtReal::zero(), exact: true });
        assert!(ln_iso(MulWeight::Finite(-1.0)).is_err());
    }

    #[test]
    fn exp_is_approximately_monoidal() {
        let a = v("1/2");
        let b = v("3/4");
        let lhs = exp_iso(&esum(&a, &b)).value;
        let rhs = exp_iso(&a).value.mul(exp_iso(&b).value);
        match (lhs, rhs) {
            (MulWeight::Finite(x), MulWeight::Finite(y)) => assert!((x - y).abs() < 1e-12),
            _ => panic!("expected finite"),
        }
        let back = ln_iso(exp_iso(&a).value).unwrap().value;
        let diff = (back.finite().unwrap().to_f64().unwrap() - 0.5).abs();
        assert!(diff < 1e-12);
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(v("1.25"), ExtReal::ratio(5, 4));
        assert_eq!(v("-0.5"), ExtReal::ratio(-1, 2));
        assert_eq!(v("3e-2"), ExtReal::ratio(3, 100));
        assert_eq!(v("2E3"), ExtReal::int(2000));
        assert_eq!(v("6/4").to_string(), "3/2");
        assert_eq!(v("-inf").to_string(), "-inf");
        assert!("1/0".parse::<ExtReal>().is_err());
        assert!("abc".parse::<ExtReal>().is_err());
        assert!("".parse::<ExtReal>().is_err());
    }

    fn ext_strategy() -> impl Strategy<Value = ExtReal> {
        prop_oneof![
            1 => Just(ExtReal::NegInf),
            1 => Just(ExtReal::PosInf),
            6 => (-20i64..20, 1i64..6).prop_map(|(n, d)| ExtReal::ratio(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn render_parse_roundtrip(x in ext_strategy()) {
            prop_assert_eq!(x.to_string().parse::<ExtReal>().unwrap(), x);
        }

        #[test]
        fn esum_monoid_laws(a in ext_strategy(), b in ext_strategy(), c in ext_strategy()) {
            prop_assert_eq!(esum(&esum(&a, &b), &c), esum(&a, &esum(&b, &c)));
            prop_assert_eq!(esum(&a, &b), esum(&b, &a));
            if a <= b {
                prop_assert!(esum(&a, &c) <= esum(&b, &c));
            }
        }

        #[test]
        fn adjunction(a in ext_strategy(), b in ext_strategy(), c in ext_strategy()) {
            prop_assert_eq!(esum(&a, &b) >= c, a >= ediff(&c, &b));
        }

        #[test]
        fn positive_part_subadditive(a in ext_strategy(), b in ext_strategy()) {
            let lhs = positive_part(&esum(&a, &b));
            let rhs = positive_part(&a).add(&positive_part(&b));
            prop_assert!(lhs <= rhs);
        }

        #[test]
        fn scale_monotone(l in 0i64..5, a in ext_strategy(), b in ext_strategy()) {
            let c = Coeff::int(l as u32);
            if a <= b {
                prop_assert!(scale(&c, &a) <= scale(&c, &b));
            }
            if l > 0 && a.is_finite() && b.is_finite() {
                prop_assert_eq!(scale(&c, &a) <= scale(&c, &b), a <= b);
            }
        }

        #[test]
        fn meet_preservation(a in ext_strategy(), s in proptest::collection::vec(ext_strategy(), 1..5)) {
            let lhs = esum(&a, &meet_all(&s));
            let sums: Vec<ExtReal> = s.iter().map(|x| esum(&a, x)).collect();
            prop_assert_eq!(lhs, meet_all(&sums));
        }
    }
}

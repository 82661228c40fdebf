//! Exact arithmetic in `Z[a, a^-1][x]`, the value ring of the torus bracket.
//!
//! A polynomial is a sparse map from `(xdeg, aexp)` to a nonzero big-integer
//! coefficient. The zero polynomial is the empty map.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Monomial key: power of `x` and (signed) power of `a`.
pub type Monomial = (u32, i32);

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct XPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl XPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    /// `coeff * x^xdeg * a^aexp`
    pub fn monomial(coeff: i64, xdeg: u32, aexp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term((xdeg, aexp), BigInt::from(coeff));
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn a_pow(aexp: i32) -> Self {
        Self::monomial(1, 0, aexp)
    }

    /// `(-a)^k`, for any integer `k`.
    pub fn neg_a_pow(k: i32) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(sign, 0, k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(xdeg, aexp)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, xdeg: u32, aexp: i32) -> BigInt {
        self.terms.get(&(xdeg, aexp)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `(-a^2 - a^-2)^gamma`, the weight of `gamma` contractible circles.
    pub fn circle_power(gamma: u32) -> Self {
        let circle = Self::monomial(-1, 0, 2) + Self::monomial(-1, 0, -2);
        (0..gamma).fold(Self::one(), |acc, _| &acc * &circle)
    }

    /// Substitutes `a -> a^-1`.
    pub fn mirror_a(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(x, a), c)| ((x, -a), c.clone()))
                .collect(),
        }
    }

    /// The distinct powers of `x` that occur.
    pub fn x_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(|&(x, _)| x).collect();
        v.dedup();
        v
    }

    /// Total order: ascending term sequences compared lexicographically by
    /// `(xdeg, aexp, coeff)`; a proper prefix sorts first.
    pub fn canonical_compare(&self, other: &Self) -> Ordering {
        let lhs = self.terms.iter().map(|(&(x, a), c)| (x, a, c));
        let rhs = other.terms.iter().map(|(&(x, a), c)| (x, a, c));
        lhs.cmp(rhs)
    }

    /// The smaller of `self` and its `a -> a^-1` image.
    pub fn mirror_canonical(&self) -> Self {
        let m = self.mirror_a();
        if m.canonical_compare(self) == Ordering::Less {
            m
        } else {
            self.clone()
        }
    }

    /// Canonical text: descending `xdeg`, then descending `aexp`.
    pub fn encode(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&(x, a), c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if negative {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (x == 0 && a == 0) {
                factors.push(mag.to_string());
            }
            match x {
                0 => {}
                1 => factors.push("x".into()),
                k => factors.push(format!("x^{k}")),
            }
            if a != 0 {
                factors.push(format!("a^{a}"));
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    pub fn decode(text: &str) -> Result<Self, ParseError> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }

    /// Integer power; `a` may carry a negative exponent, `x` may not.
    fn pow(&self, exp: i64) -> Option<Self> {
        if exp >= 0 {
            return Some((0..exp).fold(Self::one(), |acc, _| &acc * self));
        }
        // only monomials in `a` with unit coefficient are invertible here
        if self.terms.len() != 1 {
            return None;
        }
        let (&(x, a), c) = self.terms.iter().next()?;
        if x != 0 || !(c.is_one() || (-c).is_one()) {
            return None;
        }
        let base = Self::monomial(if c.is_one() { 1 } else { -1 }, 0, -a);
        base.pow(-exp)
    }
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XPolynomial({})", self.encode())
    }
}

impl FromStr for XPolynomial {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::decode(s)
    }
}

impl PartialOrd for XPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for XPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_compare(other)
    }
}

impl Add for &XPolynomial {
    type Output = XPolynomial;

    fn add(self, rhs: &XPolynomial) -> XPolynomial {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Add for XPolynomial {
    type Output = XPolynomial;

    fn add(self, rhs: XPolynomial) -> XPolynomial {
        &self + &rhs
    }
}

impl Neg for &XPolynomial {
    type Output = XPolynomial;

    fn neg(self) -> XPolynomial {
        XPolynomial {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for XPolynomial {
    type Output = XPolynomial;

    fn neg(self) -> XPolynomial {
        -&self
    }
}

impl Sub for &XPolynomial {
    type Output = XPolynomial;

    fn sub(self, rhs: &XPolynomial) -> XPolynomial {
        self + &(-rhs)
    }
}

impl Sub for XPolynomial {
    type Output = XPolynomial;

    fn sub(self, rhs: XPolynomial) -> XPolynomial {
        &self - &rhs
    }
}

impl Mul for &XPolynomial {
    type Output = XPolynomial;

    fn mul(self, rhs: &XPolynomial) -> XPolynomial {
        let mut out = XPolynomial::zero();
        for (&(x1, a1), c1) in &self.terms {
            for (&(x2, a2), c2) in &rhs.terms {
                out.add_term((x1 + x2, a1 + a2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for XPolynomial {
    type Output = XPolynomial;

    fn mul(self, rhs: XPolynomial) -> XPolynomial {
        &self * &rhs
    }
}

/// Recursive-descent reader for the polynomial text form. Accepts the
/// canonical grammar plus parentheses and implicit multiplication so that
/// hand-written tables can be read as they are usually typeset.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<XPolynomial, ParseError> {
        let mut acc = XPolynomial::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<XPolynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(c) if c == b'(' || c == b'x' || c == b'a' || c.is_ascii_digit() => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<XPolynomial, ParseError> {
        let start = self.pos;
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(b'x') => {
                self.pos += 1;
                XPolynomial::x()
            }
            Some(b'a') => {
                self.pos += 1;
                XPolynomial::a_pow(1)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let value: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                let mut p = XPolynomial::zero();
                p.add_term((0, 0), value);
                p
            }
            Some(_) => return Err(self.error("expected a term")),
            None => return Err(self.error("unexpected end of input")),
        };
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
            return Err(self.error("expected an exponent"));
        }
        let digits = self.digits();
        let magnitude: i64 = digits.parse().map_err(|_| self.error("exponent out of range"))?;
        let exp = if negative { -magnitude } else { magnitude };
        base.pow(exp).ok_or(ParseError {
            position: start,
            message: "negative power of a non-invertible factor".into(),
        })
    }

    fn digits(&mut self) -> String {
        let begin = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[begin..self.pos]).into_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> XPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn add_identities() {
        assert_eq!(XPolynomial::x() + XPolynomial::zero(), XPolynomial::x());
        assert!((p("a^-4") + p("-a^-4")).is_zero());
        assert_eq!(p("x^2*a^-4") + p("-a^-4 - 1"), -p("-(x^2*a^-4 - a^-4 - 1)"));
    }

    #[test]
    fn mul_examples() {
        let q = p("x^3*a^2 - 2*x");
        assert_eq!(&q * &XPolynomial::one(), q);
        let c = p("-a^2-a^-2");
        assert_eq!(&c * &c, p("a^4 + 2 + a^-4"));
        assert_eq!(XPolynomial::x() * XPolynomial::neg_a_pow(-3), p("-x*a^-3"));
    }

    #[test]
    fn circle_powers() {
        assert_eq!(XPolynomial::circle_power(0), XPolynomial::one());
        assert_eq!(XPolynomial::circle_power(1), p("-a^2 - a^-2"));
        assert_eq!(XPolynomial::circle_power(2), p("a^4 + 2 + a^-4"));
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(XPolynomial::x().mirror_a(), XPolynomial::x());
        let two_one = p("x^3*a^-8 + x*(-2*a^-8 - a^-4)");
        assert_eq!(two_one.mirror_a(), p("x^3*a^8 + x*(-2*a^8 - a^4)"));
        assert_eq!(two_one.mirror_a().mirror_a(), two_one);
    }

    #[test]
    fn compare_examples() {
        let q = p("x - a^2");
        assert_eq!(q.canonical_compare(&q), Ordering::Equal);
        assert_eq!(XPolynomial::zero().canonical_compare(&XPolynomial::x()), Ordering::Less);
        assert_eq!(p("x*a^-1").canonical_compare(&p("x*a^1")), Ordering::Less);
    }

    #[test]
    fn encode_examples() {
        assert_eq!(XPolynomial::x().encode(), "x");
        assert_eq!(p("-a^2-a^-2").encode(), "-a^2-a^-2");
        assert_eq!(p("x^3*a^-8 + x*(-2*a^-8 - a^-4)").encode(), "x^3*a^-8-x*a^-4-2*x*a^-8");
        assert_eq!(XPolynomial::zero().encode(), "0");
        assert_eq!(p("1").encode(), "1");
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = XPolynomial::decode("x + * a").unwrap_err();
        assert_eq!(err.position, 4);
        assert!(XPolynomial::decode("x^-1").is_err());
        assert!(XPolynomial::decode("(x + 1").is_err());
        assert!(XPolynomial::decode("").is_err());
        assert!(XPolynomial::decode("a^").is_err());
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(p(" x ^ 2 * a ^ -4 -  1 "), p("x^2*a^-4-1"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = XPolynomial> {
            proptest::collection::vec((0u32..4, -6i32..7, -3i64..4), 0..6).prop_map(|ts| {
                let mut p = XPolynomial::zero();
                for (x, a, c) in ts {
                    p.add_term((x, a), BigInt::from(c));
                }
                p
            })
        }

        proptest! {
            #[test]
            fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
                prop_assert_eq!(&p + &q, &q + &p);
                prop_assert_eq!(&p * &q, &q * &p);
                prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
                prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
                prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
                prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
            }

            #[test]
            fn mirror_is_ring_involution(p in arb_poly(), q in arb_poly()) {
                prop_assert_eq!(p.mirror_a().mirror_a(), p.clone());
                prop_assert_eq!((&p * &q).mirror_a(), &p.mirror_a() * &q.mirror_a());
                prop_assert_eq!((&p + &q).mirror_a(), &p.mirror_a() + &q.mirror_a());
            }

            #[test]
            fn compare_is_total_and_matches_equality(p in arb_poly(), q in arb_poly()) {
                let o = p.canonical_compare(&q);
                prop_assert_eq!(o == Ordering::Equal, p == q);
                prop_assert_eq!(q.canonical_compare(&p), o.reverse());
            }

            #[test]
            fn codec_round_trip(p in arb_poly()) {
                let text = p.encode();
                prop_assert_eq!(XPolynomial::decode(&text).unwrap(), p);
            }
        }
    }
}

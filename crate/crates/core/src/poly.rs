//! Exact integer Laurent polynomials.
//!
//! - [`PolyT`]: one variable (usually `t`, sometimes `s` with `s^2 = t`).
//! - [`LaurentQS`]: two variables `q` and `s`.
//!
//! Zero coefficients are never stored, so structural equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyT {
    terms: BTreeMap<i32, i64>,
}

impl PolyT {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// Coefficient `coeffs[i]` goes to `t^i`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(i as i32, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// Dense coefficients from `t^0` to the degree. Panics on negative exponents.
    pub fn coeffs(&self) -> Vec<i64> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => {
                assert!(self.low_degree().unwrap() >= 0, "negative exponent in {self}");
                (0..=d).map(|e| self.coeff(e)).collect()
            }
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, &v)| (e, v * c)).collect(),
        }
    }

    /// Substitute `t -> t^k` for `k > 0`.
    pub fn subs_pow(&self, k: i32) -> Self {
        assert!(k > 0);
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e * k, c)).collect(),
        }
    }

    /// Inverse of `subs_pow(k)`; fails if some exponent is not divisible by `k`.
    pub fn unsubs_pow(&self, k: i32) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            if e % k != 0 {
                return Err(Error::InexactDivision);
            }
            out.add_term(e / k, c);
        }
        Ok(out)
    }

    pub fn value_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn has_nonneg_coeffs(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// Exact Laurent division; errors on a nonzero remainder.
    pub fn div_exact(&self, d: &PolyT) -> Result<PolyT> {
        if d.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (la, lb) = (self.low_degree().unwrap(), d.low_degree().unwrap());
        let mut rem: Vec<i64> = self.shift(-la).coeffs();
        let den = d.shift(-lb).coeffs();
        let db = den.len() - 1;
        if rem.len() < den.len() {
            return Err(Error::InexactDivision);
        }
        let lead = den[db];
        let mut quot = vec![0i64; rem.len() - db];
        for k in (0..quot.len()).rev() {
            let top = rem[k + db];
            if top == 0 {
                continue;
            }
            if top % lead != 0 {
                return Err(Error::InexactDivision);
            }
            let f = top / lead;
            quot[k] = f;
            for (i, &b) in den.iter().enumerate() {
                rem[k + i] -= f * b;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(Error::InexactDivision);
        }
        Ok(PolyT::from_coeffs(&quot).shift(la - lb))
    }
}

impl fmt::Display for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_univariate(f, self.terms(), "t")
    }
}

fn write_univariate(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i32, i64)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let sign = if c < 0 { "-" } else { "+" };
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        let a = c.abs();
        match e {
            0 => write!(f, "{a}")?,
            _ => {
                if a != 1 {
                    write!(f, "{a}")?;
                }
                if e == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{e}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl Add<&PolyT> for &PolyT {
    type Output = PolyT;
    fn add(self, rhs: &PolyT) -> PolyT {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&PolyT> for &PolyT {
    type Output = PolyT;
    fn sub(self, rhs: &PolyT) -> PolyT {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&PolyT> for &PolyT {
    type Output = PolyT;
    fn mul(self, rhs: &PolyT) -> PolyT {
        let mut out = PolyT::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &PolyT {
    type Output = PolyT;
    fn neg(self) -> PolyT {
        self.scale(-1)
    }
}

impl AddAssign<&PolyT> for PolyT {
    fn add_assign(&mut self, rhs: &PolyT) {
        for (&e, &c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&PolyT> for PolyT {
    fn sub_assign(&mut self, rhs: &PolyT) {
        for (&e, &c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

macro_rules! owned_ops {
    ($ty:ty) => {
        impl Add<&$ty> for $ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                &self + rhs
            }
        }
        impl Sub<&$ty> for $ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                &self - rhs
            }
        }
        impl Mul<&$ty> for $ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                &self * rhs
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

owned_ops!(PolyT);
owned_ops!(LaurentQS);

/// Laurent polynomial in `q` and `s`, keyed by `(q exponent, s exponent)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentQS {
    terms: BTreeMap<(i32, i32), i64>,
}

impl LaurentQS {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    /// `c * q^qe * s^se`.
    pub fn monomial(c: i64, qe: i32, se: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(qe, se, c);
        p
    }

    pub fn q() -> Self {
        Self::monomial(1, 1, 0)
    }

    /// `t^k` written as `s^{2k}`.
    pub fn t_pow(k: i32) -> Self {
        Self::monomial(1, 0, 2 * k)
    }

    /// Embed a polynomial in `s` (no `q`).
    pub fn from_s(p: &PolyT) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.add_term(0, e, c);
        }
        out
    }

    /// Embed a polynomial in `t` via `t = s^2`.
    pub fn from_t(p: &PolyT) -> Self {
        Self::from_s(&p.subs_pow(2))
    }

    pub fn add_term(&mut self, qe: i32, se: i32, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry((qe, se)).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&(qe, se));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, &v)| (k, v * c)).collect(),
        }
    }

    /// Multiply by `s^k`.
    pub fn shift_s(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(a, b), &c)| ((a, b + k), c)).collect(),
        }
    }

    /// Coefficient of `q^qe`, as a polynomial in `s`.
    pub fn q_slice(&self, qe: i32) -> PolyT {
        let mut out = PolyT::zero();
        for (&(a, b), &c) in &self.terms {
            if a == qe {
                out.add_term(b, c);
            }
        }
        out
    }

    fn q_exponents(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.terms.keys().map(|k| k.0).collect();
        v.dedup();
        v
    }

    /// Specialize `q = 0`; panics if a negative power of `q` is present.
    pub fn at_q_zero(&self) -> PolyT {
        assert!(self.terms.keys().all(|k| k.0 >= 0), "negative q power");
        self.q_slice(0)
    }

    /// Exact division by a polynomial in `s`, slice by slice in `q`.
    pub fn div_exact_s(&self, d: &PolyT) -> Result<Self> {
        let mut out = Self::zero();
        for qe in self.q_exponents() {
            let quot = self.q_slice(qe).div_exact(d)?;
            for (e, c) in quot.terms() {
                out.add_term(qe, e, c);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentQS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for qe in self.q_exponents() {
            let slice = self.q_slice(qe);
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = slice.to_string().replace('t', "s");
            match qe {
                0 => write!(f, "({body})")?,
                1 => write!(f, "q({body})")?,
                _ => write!(f, "q^{qe}({body})")?,
            }
        }
        Ok(())
    }
}

impl Add<&LaurentQS> for &LaurentQS {
    type Output = LaurentQS;
    fn add(self, rhs: &LaurentQS) -> LaurentQS {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentQS> for &LaurentQS {
    type Output = LaurentQS;
    fn sub(self, rhs: &LaurentQS) -> LaurentQS {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentQS> for &LaurentQS {
    type Output = LaurentQS;
    fn mul(self, rhs: &LaurentQS) -> LaurentQS {
        let mut out = LaurentQS::zero();
        for (&(a1, b1), &c1) in &self.terms {
            for (&(a2, b2), &c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentQS {
    type Output = LaurentQS;
    fn neg(self) -> LaurentQS {
        self.scale(-1)
    }
}

impl AddAssign<&LaurentQS> for LaurentQS {
    fn add_assign(&mut self, rhs: &LaurentQS) {
        for (&(a, b), &c) in &rhs.terms {
            self.add_term(a, b, c);
        }
    }
}

impl SubAssign<&LaurentQS> for LaurentQS {
    fn sub_assign(&mut self, rhs: &LaurentQS) {
        for (&(a, b), &c) in &rhs.terms {
            self.add_term(a, b, -c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> PolyT {
        PolyT::from_coeffs(c)
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = p(&[1, 2]);
        let b = p(&[0, 2]);
        assert_eq!(&a - &b, PolyT::one());
        assert_eq!((&a - &a).num_terms(), 0);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 1, 0, -2]).to_string(), "t - 2t^3");
        assert_eq!(PolyT::monomial(-1, -2).to_string(), "-t^-2");
        assert_eq!(PolyT::zero().to_string(), "0");
    }

    #[test]
    fn division_exact_and_inexact() {
        let num = p(&[-1, 0, 0, 1]);
        let den = p(&[-1, 1]);
        assert_eq!(num.div_exact(&den).unwrap(), p(&[1, 1, 1]));
        assert!(p(&[1, 0, 1]).div_exact(&den).is_err());
        let laurent = num.shift(-5);
        assert_eq!(laurent.div_exact(&den.shift(2)).unwrap(), p(&[1, 1, 1]).shift(-7));
    }

    #[test]
    fn qs_division_by_s_polynomial() {
        // (1 - q s^4)(s^2 - 1) / (s^2 - 1)
        let a = &LaurentQS::one() - &LaurentQS::monomial(1, 1, 4);
        let d = p(&[-1, 0, 1]);
        let prod = &a * &LaurentQS::from_s(&d);
        assert_eq!(prod.div_exact_s(&d).unwrap(), a);
        assert_eq!(a.at_q_zero(), PolyT::one());
    }

    proptest! {
        #[test]
        fn mul_then_div_roundtrip(a in prop::collection::vec(-5i64..5, 1..6),
                                  b in prop::collection::vec(-5i64..5, 1..5),
                                  sh in -3i32..3) {
            let pa = p(&a).shift(sh);
            let pb = p(&b);
            prop_assume!(!pb.is_zero());
            let prod = &pa * &pb;
            prop_assert_eq!(prod.div_exact(&pb).unwrap(), pa);
        }

        #[test]
        fn ring_laws(a in prop::collection::vec(-4i64..4, 0..5),
                     b in prop::collection::vec(-4i64..4, 0..5),
                     c in prop::collection::vec(-4i64..4, 0..5)) {
            let (a, b, c) = (p(&a), p(&b), p(&c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a);
        }
    }
}

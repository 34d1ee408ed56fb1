//! Sparse univariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Two families share one representation:
//!
//! - [`QHalfPoly`]: Laurent polynomials in `v`, read as `q = v²`, so that a
//!   half-integer power `q^(e/2)` is the integer power `v^e`.
//! - [`UnitPoly`]: ordinary polynomials in `x`.
//!
//! Coefficients are stored in a `BTreeMap` keyed by exponent and zero
//! coefficients are never stored, so structural equality is polynomial
//! equality.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Names the indeterminate of a polynomial family and how its powers print.
pub trait Variable: Copy + Default + fmt::Debug + PartialEq + Eq + Hash {
    fn write_power(f: &mut fmt::Formatter<'_>, exp: i64) -> fmt::Result;
}

/// `v = q^(1/2)`; powers print in terms of `q`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct HalfQ;

/// The `x` of the unit identities.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct X;

impl Variable for HalfQ {
    fn write_power(f: &mut fmt::Formatter<'_>, exp: i64) -> fmt::Result {
        match (exp % 2 == 0, exp / 2) {
            (true, 1) => f.write_str("q"),
            (true, m) if m > 0 => write!(f, "q^{m}"),
            (true, m) => write!(f, "q^({m})"),
            (false, _) => write!(f, "q^({exp}/2)"),
        }
    }
}

impl Variable for X {
    fn write_power(f: &mut fmt::Formatter<'_>, exp: i64) -> fmt::Result {
        match exp {
            1 => f.write_str("x"),
            e => write!(f, "x^{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<V: Variable> {
    terms: BTreeMap<i64, BigInt>,
    var: PhantomData<V>,
}

/// Laurent polynomial in `v = q^(1/2)`.
pub type QHalfPoly = Poly<HalfQ>;

/// Polynomial in `x`.
pub type UnitPoly = Poly<X>;

impl<V: Variable> Poly<V> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
            var: PhantomData,
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::term(0, c)
    }

    fn term(exp: i64, coeff: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact value at `num / den`.
    pub fn eval_rational(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.eval(&BigRational::new(num.clone(), den.clone()))
    }

    pub fn eval(&self, at: &BigRational) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (&e, c) in &self.terms {
            if e < 0 && at.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let power = num_traits::pow::Pow::pow(at, e as i32);
            total += power * BigRational::from_integer(c.clone());
        }
        Ok(total)
    }
}

impl QHalfPoly {
    /// `q^(doubled/2)`, i.e. `v^doubled`.
    pub fn q_monomial(doubled: i64) -> Self {
        Self::term(doubled, BigInt::one())
    }

    pub fn q() -> Self {
        Self::q_monomial(2)
    }

    /// `q − 1`.
    pub fn q_minus_one() -> Self {
        let mut p = Self::q();
        p.add_term(0, -BigInt::one());
        p
    }
}

impl UnitPoly {
    pub fn x_pow(e: u32) -> Self {
        Self::term(i64::from(e), BigInt::one())
    }

    /// `1 − x`.
    pub fn one_minus_x() -> Self {
        let mut p = Self::one();
        p.add_term(1, -BigInt::one());
        p
    }

    /// `x^a (1 − x)^b`, expanded with signed binomial coefficients.
    pub fn x_pow_times_one_minus_x_pow(a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        let mut binom = BigInt::one();
        for t in 0..=b {
            let signed = if t % 2 == 0 {
                binom.clone()
            } else {
                -binom.clone()
            };
            p.add_term(i64::from(a + t), signed);
            binom = binom * BigInt::from(b - t) / BigInt::from(t + 1);
        }
        p
    }
}

impl<V: Variable> fmt::Display for Poly<V> {
    /// Decreasing exponent order, e.g. `q^(3/2) - q^(1/2)` or `x^2 - 2x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (m, (&e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (m, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if e == 0 {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}")?;
                }
                V::write_power(f, e)?;
            }
        }
        Ok(())
    }
}

impl<V: Variable> AddAssign<&Poly<V>> for Poly<V> {
    fn add_assign(&mut self, rhs: &Poly<V>) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl<V: Variable> Add for &Poly<V> {
    type Output = Poly<V>;

    fn add(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<V: Variable> Add for Poly<V> {
    type Output = Poly<V>;

    fn add(mut self, rhs: Poly<V>) -> Poly<V> {
        self += &rhs;
        self
    }
}

impl<V: Variable> Neg for &Poly<V> {
    type Output = Poly<V>;

    fn neg(self) -> Poly<V> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            var: PhantomData,
        }
    }
}

impl<V: Variable> Neg for Poly<V> {
    type Output = Poly<V>;

    fn neg(self) -> Poly<V> {
        -&self
    }
}

impl<V: Variable> Sub for &Poly<V> {
    type Output = Poly<V>;

    fn sub(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl<V: Variable> Sub for Poly<V> {
    type Output = Poly<V>;

    fn sub(self, rhs: Poly<V>) -> Poly<V> {
        &self - &rhs
    }
}

impl<V: Variable> Mul for &Poly<V> {
    type Output = Poly<V>;

    fn mul(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = Poly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl<V: Variable> Mul for Poly<V> {
    type Output = Poly<V>;

    fn mul(self, rhs: Poly<V>) -> Poly<V> {
        &self * &rhs
    }
}

impl<V: Variable> std::iter::Sum for Poly<V> {
    fn sum<I: Iterator<Item = Poly<V>>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn unit_from(coeffs: &[i64]) -> UnitPoly {
        let mut p = UnitPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            p.add_term(e as i64, big(*c));
        }
        p
    }

    #[test]
    fn arithmetic_examples() {
        assert!(QHalfPoly::q_minus_one().pow(0).is_one());
        let p = &QHalfPoly::q_minus_one() * &QHalfPoly::q_monomial(1);
        assert_eq!(p.coefficient(3), big(1));
        assert_eq!(p.coefficient(1), big(-1));
        assert_eq!(p.term_count(), 2);
        assert_eq!(UnitPoly::one_minus_x().pow(2), unit_from(&[1, -2, 1]));
    }

    #[test]
    fn q_monomials() {
        assert!(QHalfPoly::q_monomial(0).is_one());
        assert_eq!(QHalfPoly::q_monomial(3).to_string(), "q^(3/2)");
        assert_eq!(QHalfPoly::q_monomial(-1).to_string(), "q^(-1/2)");
        assert_eq!(QHalfPoly::q_monomial(-2).to_string(), "q^(-1)");
        assert_eq!(QHalfPoly::q_monomial(2).to_string(), "q");
        assert_eq!(QHalfPoly::q_monomial(10).to_string(), "q^5");
    }

    #[test]
    fn binomial_terms() {
        assert!(UnitPoly::x_pow_times_one_minus_x_pow(0, 0).is_one());
        assert_eq!(
            UnitPoly::x_pow_times_one_minus_x_pow(1, 1),
            unit_from(&[0, 1, -1])
        );
        assert_eq!(
            UnitPoly::x_pow_times_one_minus_x_pow(2, 1),
            unit_from(&[0, 0, 1, -1])
        );
        assert_eq!(
            UnitPoly::x_pow_times_one_minus_x_pow(1, 5),
            &UnitPoly::x_pow(1) * &UnitPoly::one_minus_x().pow(5)
        );
    }

    #[test]
    fn evaluation_examples() {
        let third = |p: &UnitPoly| p.eval_rational(&big(1), &big(3)).unwrap();
        assert_eq!(third(&UnitPoly::one()), BigRational::one());
        let sum = &UnitPoly::x_pow(1) + &UnitPoly::one_minus_x();
        assert_eq!(third(&sum), BigRational::one());
        let v3 = QHalfPoly::q_monomial(3)
            .eval_rational(&big(2), &big(1))
            .unwrap();
        assert_eq!(v3, BigRational::from_integer(big(8)));
        assert_eq!(
            UnitPoly::one().eval_rational(&big(1), &big(0)),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            QHalfPoly::q_monomial(-1).eval_rational(&big(0), &big(1)),
            Err(Error::DivisionByZero)
        );
        let half = QHalfPoly::q_monomial(-2)
            .eval_rational(&big(2), &big(1))
            .unwrap();
        assert_eq!(half, BigRational::new(big(1), big(4)));
    }

    #[test]
    fn rendering() {
        assert_eq!(UnitPoly::zero().to_string(), "0");
        assert_eq!(UnitPoly::one_minus_x().pow(2).to_string(), "x^2 - 2x + 1");
        assert_eq!((-UnitPoly::x_pow(3)).to_string(), "-x^3");
        let p = &QHalfPoly::q_minus_one() * &QHalfPoly::q_monomial(1);
        assert_eq!(p.to_string(), "q^(3/2) - q^(1/2)");
        let p = QHalfPoly::q_minus_one().pow(2);
        assert_eq!(p.to_string(), "q^2 - 2q + 1");
    }

    #[test]
    fn coefficients_outgrow_machine_words() {
        let p = QHalfPoly::q_minus_one().pow(80);
        // C(80, 40) ≈ 1.075e23
        let mid = p.coefficient(80);
        assert!(mid > BigInt::from(u64::MAX));
        assert_eq!(
            p.eval_rational(&big(1), &big(1)).unwrap(),
            BigRational::zero()
        );
    }

    #[test]
    fn indicator_values_at_the_ends() {
        for a in 0..6u32 {
            for b in 0..6u32 {
                let p = UnitPoly::x_pow_times_one_minus_x_pow(a, b);
                let at0 = p.eval_rational(&big(0), &big(1)).unwrap();
                let at1 = p.eval_rational(&big(1), &big(1)).unwrap();
                assert_eq!(at0, BigRational::from_integer(big((a == 0) as i64)));
                assert_eq!(at1, BigRational::from_integer(big((b == 0) as i64)));
            }
        }
    }

    fn arb_qpoly() -> impl Strategy<Value = QHalfPoly> {
        prop::collection::vec((-6i64..12, -50i64..50), 0..6).prop_map(|ts| {
            let mut p = QHalfPoly::zero();
            for (e, c) in ts {
                p.add_term(e, big(c));
            }
            p
        })
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (1i64..40, 1i64..40).prop_map(|(n, d)| BigRational::new(big(n), big(d)))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_qpoly(), b in arb_qpoly(), c in arb_qpoly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a * &QHalfPoly::one(), a.clone());
        }

        #[test]
        fn big_coefficient_distributivity(a in arb_qpoly(), e in 20u32..40) {
            let big_p = QHalfPoly::q_minus_one().pow(e);
            let lhs = &big_p * &(&a + &QHalfPoly::q());
            let rhs = &(&big_p * &a) + &(&big_p * &QHalfPoly::q());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn evaluation_is_a_ring_map(a in arb_qpoly(), b in arb_qpoly(), at in arb_rational()) {
            let ea = a.eval(&at).unwrap();
            let eb = b.eval(&at).unwrap();
            prop_assert_eq!((&a + &b).eval(&at).unwrap(), &ea + &eb);
            prop_assert_eq!((&a * &b).eval(&at).unwrap(), &ea * &eb);
        }

        #[test]
        fn pow_matches_repeated_product(a in arb_qpoly(), e in 0u32..5) {
            let mut expect = QHalfPoly::one();
            for _ in 0..e {
                expect = &expect * &a;
            }
            prop_assert_eq!(a.pow(e), expect);
        }
    }
}

//! Exact arithmetic in Z[q] and its fraction field, plus the q-series
//! primitives used by every closed form: (q)_k, the q-binomial (Gaussian)
//! coefficient and the q-multinomial coefficient.
//!
//! All coefficients are arbitrary-precision integers; identity verdicts
//! depend on exactness, so there is no floating point anywhere.

use num::{BigInt, BigRational, One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QRingError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("q-binomial with negative upper index {0} is not a polynomial")]
    NegativeUpperIndex(i64),
}

/// Polynomial in q over the integers, stored as a sparse exponent map.
///
/// Invariants: no stored coefficient is zero; the zero polynomial has an
/// empty map and `degree() == None`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        QPoly::term(c, 0)
    }

    pub fn from_i64(c: i64) -> Self {
        QPoly::constant(BigInt::from(c))
    }

    /// The monomial `c * q^k`.
    pub fn term(c: BigInt, k: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        QPoly { coeffs }
    }

    pub fn q_pow(k: u32) -> Self {
        QPoly::term(BigInt::one(), k)
    }

    /// `1 - q^k`; the zero polynomial when k = 0.
    pub fn one_minus_q_pow(k: u32) -> Self {
        if k == 0 {
            return QPoly::zero();
        }
        let mut p = QPoly::one();
        p.coeffs.insert(k, -BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self == &QPoly::one()
    }

    /// Degree in q, or None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, k: u32) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &BigInt)> {
        self.coeffs.iter()
    }

    fn add_term(&mut self, k: u32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c);
        }
        out
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &other.coeffs {
                out.add_term(k1 + k2, &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut out = QPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, q0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut pow = BigRational::one();
        let mut last = 0u32;
        for (k, c) in &self.coeffs {
            for _ in last..*k {
                pow *= q0;
            }
            last = *k;
            acc += BigRational::from(c.clone()) * &pow;
        }
        acc
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Exact polynomial division; errors when the remainder is nonzero.
    pub fn div_exact(&self, den: &QPoly) -> Result<QPoly, QRingError> {
        if den.is_zero() {
            return Err(QRingError::ZeroDenominator);
        }
        let dden = den.degree().unwrap();
        let lead = den.coeff(dden);
        let mut rem = self.clone();
        let mut quot = QPoly::zero();
        while let Some(drem) = rem.degree() {
            if drem < dden {
                return Err(QRingError::InexactDivision);
            }
            let c = rem.coeff(drem);
            let (qc, r) = num::Integer::div_rem(&c, &lead);
            if !r.is_zero() {
                return Err(QRingError::InexactDivision);
            }
            let shift = drem - dden;
            let t = QPoly::term(qc, shift);
            rem = rem.sub(&t.mul(den));
            quot = quot.add(&t);
        }
        Ok(quot)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                QPoly::$inner(self, rhs)
            }
        }
        impl std::ops::$trait for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                QPoly::$inner(&self, &rhs)
            }
        }
    };
}
forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::neg(self)
    }
}

/// Canonical textual form: ascending q-exponents, e.g. `1 - q - q^2 + q^3`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (*k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}*q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// (q)_k = (1-q)(1-q^2)...(1-q^k), with (q)_0 = 1.
pub fn qfac(k: u32) -> QPoly {
    let mut out = QPoly::one();
    for t in 1..=k {
        out = out.mul(&QPoly::one_minus_q_pow(t));
    }
    out
}

/// Gaussian binomial coefficient [m n] = (q^{m-n+1})_n / (q)_n.
///
/// Exact for m >= n >= 0; zero for 0 <= m < n. Negative m would be a
/// rational function and is rejected.
pub fn qbinom(m: i64, n: u32) -> Result<QPoly, QRingError> {
    if m < 0 {
        return Err(QRingError::NegativeUpperIndex(m));
    }
    let m = m as u32;
    if n == 0 {
        return Ok(QPoly::one());
    }
    if m < n {
        return Ok(QPoly::zero());
    }
    let mut num = QPoly::one();
    for e in (m - n + 1)..=m {
        num = num.mul(&QPoly::one_minus_q_pow(e));
    }
    num.div_exact(&qfac(n))
}

/// (q)_{a_1+...+a_s} / ((q)_{a_1} ... (q)_{a_s}) as an exact polynomial,
/// computed as an iterated product of q-binomials.
pub fn qmultinomial(a: &[u32]) -> QPoly {
    let mut out = QPoly::one();
    let mut sum: u32 = 0;
    for &ai in a {
        sum += ai;
        out = out.mul(
            &qbinom(sum as i64, ai).expect("q-binomial of a partial sum must be a polynomial"),
        );
    }
    out
}

/// Self-test of qbinom: checks that (u)_n, expanded as a polynomial in u
/// with QPoly coefficients, equals sum_k q^{k(k-1)/2} [n k] (-u)^k.
pub fn pochhammer_expand_identity_check(n: u32) -> bool {
    // lhs[k] = coefficient of u^k in prod_{t=0}^{n-1} (1 - u q^t)
    let mut lhs: Vec<QPoly> = vec![QPoly::one()];
    for t in 0..n {
        let mut next = vec![QPoly::zero(); lhs.len() + 1];
        for (k, c) in lhs.iter().enumerate() {
            next[k] = next[k].add(c);
            next[k + 1] = next[k + 1].sub(&c.mul(&QPoly::q_pow(t)));
        }
        lhs = next;
    }
    for (k, c) in lhs.iter().enumerate() {
        let k32 = k as u32;
        let binom = match qbinom(n as i64, k32) {
            Ok(b) => b,
            Err(_) => return false,
        };
        let mut rhs = binom.mul(&QPoly::q_pow(k32 * (k32.saturating_sub(1)) / 2));
        if k % 2 == 1 {
            rhs = rhs.neg();
        }
        if c != &rhs {
            return false;
        }
    }
    true
}

/// Ratio of two QPoly values. Equality of a/b and c/d means a*d = b*c;
/// no GCD reduction is performed.
#[derive(Clone, Debug)]
pub struct QRat {
    num: QPoly,
    den: QPoly,
}

impl QRat {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self, QRingError> {
        if den.is_zero() {
            return Err(QRingError::ZeroDenominator);
        }
        Ok(QRat { num, den })
    }

    pub fn from_poly(p: QPoly) -> Self {
        QRat {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn zero() -> Self {
        QRat::from_poly(QPoly::zero())
    }

    pub fn one() -> Self {
        QRat::from_poly(QPoly::one())
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &QRat) -> QRat {
        QRat {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn add(&self, other: &QRat) -> QRat {
        QRat {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn neg(&self) -> QRat {
        QRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &QRat) -> QRat {
        self.add(&other.neg())
    }
}

impl PartialEq for QRat {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Serialize for QRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("QRat", 2)?;
        s.serialize_field("num", &self.num)?;
        s.serialize_field("den", &self.den)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;
    use proptest::prelude::*;

    fn p(terms: &[(i64, u32)]) -> QPoly {
        let mut out = QPoly::zero();
        for &(c, k) in terms {
            out = out.add(&QPoly::term(BigInt::from(c), k));
        }
        out
    }

    #[test]
    fn difference_of_squares() {
        let lhs = QPoly::one_minus_q_pow(1).mul(&p(&[(1, 0), (1, 1)]));
        assert_eq!(lhs, p(&[(1, 0), (-1, 2)]));
    }

    #[test]
    fn mul_identity() {
        let f = p(&[(3, 0), (-2, 1), (7, 5)]);
        assert_eq!(f.mul(&QPoly::one()), f);
    }

    #[test]
    fn hand_expansion() {
        // (1-q)(1-q^2) expanded term by term: 1 - q - q^2 + q^3
        let lhs = QPoly::one_minus_q_pow(1).mul(&QPoly::one_minus_q_pow(2));
        assert_eq!(lhs, p(&[(1, 0), (-1, 1), (-1, 2), (1, 3)]));
        assert_eq!(lhs.to_string(), "1 - q - q^2 + q^3");
    }

    #[test]
    fn qfac_small() {
        assert_eq!(qfac(0), QPoly::one());
        assert_eq!(qfac(1), p(&[(1, 0), (-1, 1)]));
        let expected = QPoly::one_minus_q_pow(1)
            .mul(&QPoly::one_minus_q_pow(2))
            .mul(&QPoly::one_minus_q_pow(3));
        assert_eq!(qfac(3), expected);
    }

    #[test]
    fn qbinom_base_cases() {
        assert_eq!(qbinom(5, 0).unwrap(), QPoly::one());
        assert_eq!(qbinom(2, 1).unwrap(), p(&[(1, 0), (1, 1)]));
        assert_eq!(qbinom(1, 4).unwrap(), QPoly::zero());
        assert!(matches!(
            qbinom(-1, 2),
            Err(QRingError::NegativeUpperIndex(-1))
        ));
    }

    #[test]
    fn qbinom_4_2_by_division_oracle() {
        // independent oracle: (q)_4 / ((q)_2 (q)_2) by exact long division
        let oracle = qfac(4).div_exact(&qfac(2).mul(&qfac(2))).unwrap();
        assert_eq!(qbinom(4, 2).unwrap(), oracle);
        assert_eq!(oracle, p(&[(1, 0), (1, 1), (2, 2), (1, 3), (1, 4)]));
    }

    #[test]
    fn qbinom_pascal_recurrence() {
        for m in 1..=10i64 {
            for n in 1..=m {
                let lhs = qbinom(m, n as u32).unwrap();
                let rhs = qbinom(m - 1, n as u32 - 1).unwrap().add(
                    &QPoly::q_pow(n as u32).mul(&qbinom(m - 1, n as u32).unwrap()),
                );
                assert_eq!(lhs, rhs, "Pascal recurrence failed at m={m}, n={n}");
            }
        }
    }

    #[test]
    fn qbinom_at_one_is_binomial() {
        fn binom(m: u64, n: u64) -> BigInt {
            let mut out = BigInt::one();
            for t in 0..n {
                out = out * BigInt::from(m - t) / BigInt::from(t + 1);
            }
            out
        }
        for m in 0..=12u32 {
            for n in 0..=m {
                assert_eq!(
                    qbinom(m as i64, n).unwrap().eval_at_one(),
                    binom(m as u64, n as u64)
                );
            }
        }
    }

    #[test]
    fn qmultinomial_small() {
        assert_eq!(qmultinomial(&[4]), QPoly::one());
        assert_eq!(qmultinomial(&[1, 1]), p(&[(1, 0), (1, 1)]));
        assert_eq!(qmultinomial(&[1, 1, 1]).eval_at_one(), BigInt::from(6));
    }

    #[test]
    fn pochhammer_identity_small_n() {
        for n in 0..=8 {
            assert!(pochhammer_expand_identity_check(n), "failed at n={n}");
        }
    }

    #[test]
    fn div_exact_rejects_remainder() {
        let num = p(&[(1, 0), (1, 1)]);
        let den = p(&[(1, 0), (-1, 1)]);
        assert!(matches!(
            num.div_exact(&den),
            Err(QRingError::InexactDivision)
        ));
    }

    #[test]
    fn qrat_unreduced_equality() {
        // (1-q^2)/(1-q) == (1+q)/1 by cross-multiplication
        let a = QRat::new(QPoly::one_minus_q_pow(2), QPoly::one_minus_q_pow(1)).unwrap();
        let b = QRat::from_poly(p(&[(1, 0), (1, 1)]));
        assert_eq!(a, b);
    }

    #[test]
    fn display_forms() {
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(p(&[(-1, 0), (2, 3)]).to_string(), "-1 + 2*q^3");
        assert_eq!(p(&[(-1, 1)]).to_string(), "-q");
    }

    fn arb_qpoly() -> impl Strategy<Value = QPoly> {
        proptest::collection::vec((0u32..8, -5i64..=5), 0..6).prop_map(|terms| {
            let mut out = QPoly::zero();
            for (k, c) in terms {
                out = out.add(&QPoly::term(BigInt::from(c), k));
            }
            out
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_qpoly(), b in arb_qpoly(), c in arb_qpoly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn qrat_equality_is_equivalence(
            a in arb_qpoly(), b in arb_qpoly(), c in arb_qpoly(), s in arb_qpoly()
        ) {
            let den = QPoly::one_minus_q_pow(1);
            let x = QRat::new(a.clone(), den.clone()).unwrap();
            prop_assert_eq!(&x, &x);
            // symmetric / transitive through a common scaling
            if !s.is_zero() {
                let y = QRat::new(a.mul(&s), den.mul(&s)).unwrap();
                prop_assert_eq!(&x, &y);
                prop_assert_eq!(&y, &x);
                let z = QRat::new(a.mul(&s).mul(&s), den.mul(&s).mul(&s)).unwrap();
                prop_assert!(y == z && x == z);
            }
            // inequality stays consistent under cross-multiplication
            let u = QRat::new(b, den.clone()).unwrap();
            let v = QRat::new(c, den).unwrap();
            prop_assert_eq!(u == v, u.num().mul(v.den()) == v.num().mul(u.den()));
        }
    }
}

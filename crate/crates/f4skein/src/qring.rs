//! Exact arithmetic in Q(q): Laurent polynomials over the rationals and
//! canonically reduced fractions, with the bar involution q ↦ q⁻¹.
//!
//! A [`ScalarQ`] is kept in a unique normal form (numerator an integer
//! Laurent polynomial, denominator an integer polynomial with positive
//! constant term, contents coprime, fraction reduced over Q[q]), so equality
//! is structural and no separate zero-test is ever needed.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;
use thiserror::Error;

type Q = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QringError {
    #[error("denominator vanishes at the requested point")]
    PoleAtPoint,
    #[error("division by zero in Q(q)")]
    DivisionByZero,
    #[error("parse error in scalar `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// Finitely supported map exponent → rational coefficient; no zero is stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Q::one(), 0)
    }

    pub fn monomial(c: Q, exp: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(Q::one(), exp)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(Q::from_integer(BigInt::from(n)), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> Q {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Q)> {
        self.coeffs.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn insert_add(&mut self, exp: i64, c: &Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Multiply by q^k.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The bar involution q ↦ q⁻¹.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn eval(&self, q0: &Q) -> Result<Q, QringError> {
        let mut acc = Q::zero();
        for (e, c) in &self.coeffs {
            if *e < 0 && q0.is_zero() {
                return Err(QringError::PoleAtPoint);
            }
            let p = if *e >= 0 {
                pow_rat(q0, *e as u64)
            } else {
                Q::one() / pow_rat(q0, (-e) as u64)
            };
            acc += c * p;
        }
        Ok(acc)
    }

    /// All coefficients are nonnegative integers.
    pub fn has_nonneg_integer_coeffs(&self) -> bool {
        self.coeffs
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

fn pow_rat(x: &Q, n: u64) -> Q {
    let mut acc = Q::one();
    let mut base = x.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.insert_add(*e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.insert_add(*e, &(-c.clone()));
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.insert_add(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest exponent first
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
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
            if *e == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !unit {
                    write!(f, "{}", mag)?;
                }
                if *e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// ---- dense polynomial helpers over Q[q] (for gcd) ----

fn to_dense(p: &LaurentPoly) -> Vec<Q> {
    // caller guarantees min_exp == 0
    let deg = p.max_exp().unwrap_or(0);
    let mut v = vec![Q::zero(); deg as usize + 1];
    for (e, c) in p.iter() {
        v[*e as usize] = c.clone();
    }
    v
}

fn trim(v: &mut Vec<Q>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn dense_rem(a: &mut Vec<Q>, b: &[Q]) {
    let db = b.len() - 1;
    let lead = &b[db];
    while a.len() > db {
        let da = a.len() - 1;
        let f = &a[da] / lead;
        if !f.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                let idx = da - db + i;
                let s = &f * bc;
                a[idx] -= s;
            }
        }
        a.pop();
        trim(a);
        if a.is_empty() {
            break;
        }
    }
}

fn dense_divexact(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![Q::zero(); a.len().saturating_sub(db)];
    let lead = &b[db];
    while rem.len() > db || (rem.len() == b.len() && !rem.is_empty()) {
        if rem.len() < b.len() {
            break;
        }
        let da = rem.len() - 1;
        let f = &rem[da] / lead;
        quot[da - db] = f.clone();
        for (i, bc) in b.iter().enumerate() {
            let s = &f * bc;
            rem[da - db + i] -= s;
        }
        trim(&mut rem);
    }
    debug_assert!(rem.is_empty(), "inexact polynomial division");
    quot
}

/// Monic gcd over Q[q]; inputs must have nonzero constant terms or be zero.
fn dense_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        dense_rem(&mut x, &y);
        std::mem::swap(&mut x, &mut y);
    }
    if let Some(l) = x.last().cloned() {
        for c in &mut x {
            *c /= &l;
        }
    }
    x
}

fn from_dense(v: &[Q]) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (e, c) in v.iter().enumerate() {
        p.insert_add(e as i64, c);
    }
    p
}

/// lcm of coefficient denominators followed by gcd of numerators: the scale
/// factor turning `p` into a primitive integer polynomial.
fn content(p: &LaurentPoly) -> Q {
    let mut den_lcm = BigInt::one();
    for (_, c) in p.iter() {
        den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
    }
    let mut num_gcd = BigInt::zero();
    for (_, c) in p.iter() {
        let scaled = c.numer() * (&den_lcm / c.denom());
        num_gcd = num::integer::gcd(num_gcd, scaled);
    }
    if num_gcd.is_zero() {
        return Q::one();
    }
    Q::new(num_gcd, den_lcm)
}

/// An element of Q(q) as a canonically reduced fraction of Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarQ {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl ScalarQ {
    /// Canonicalize `num/den`. Panics if `den` is zero (internal misuse);
    /// use [`ScalarQ::from_frac`] for fallible construction.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        Self::from_frac(num, den).expect("zero denominator")
    }

    pub fn from_frac(num: LaurentPoly, den: LaurentPoly) -> Result<Self, QringError> {
        if den.is_zero() {
            return Err(QringError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(ScalarQ {
                num: LaurentPoly::zero(),
                den: LaurentPoly::one(),
            });
        }
        let a = num.min_exp().unwrap();
        let b = den.min_exp().unwrap();
        let shift = a - b;
        let n0 = num.shifted(-a);
        let d0 = den.shifted(-b);
        let nd = to_dense(&n0);
        let dd = to_dense(&d0);
        let g = dense_gcd(&nd, &dd);
        let (mut n1, mut d1) = if g.len() > 1 {
            (from_dense(&dense_divexact(&nd, &g)), from_dense(&dense_divexact(&dd, &g)))
        } else {
            (n0, d0)
        };
        // integerize: contents coprime, positive denominator constant term
        let cn = content(&n1);
        let cd = content(&d1);
        // n1/cn and d1/cd are primitive integer polys; value = (cn/cd)·(n1'/d1')
        let ratio = &cn / &cd; // rational r = p/s in lowest terms
        let p = Q::from_integer(ratio.numer().clone());
        let s = Q::from_integer(ratio.denom().clone());
        n1 = scale(&n1, &(&p / &cn));
        d1 = scale(&d1, &(&s / &cd));
        if d1.coeff(0).is_negative() {
            n1 = -&n1;
            d1 = -&d1;
        }
        Ok(ScalarQ {
            num: n1.shifted(shift),
            den: d1,
        })
    }

    pub fn zero() -> Self {
        ScalarQ {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        ScalarQ {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        ScalarQ {
            num: LaurentPoly::from_int(n),
            den: LaurentPoly::one(),
        }
    }

    pub fn q_pow(e: i64) -> Self {
        ScalarQ {
            num: LaurentPoly::q_pow(e),
            den: LaurentPoly::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// True when the reduced form is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self, QringError> {
        if self.is_zero() {
            return Err(QringError::DivisionByZero);
        }
        Ok(ScalarQ::new(self.den.clone(), self.num.clone()))
    }

    pub fn bar(&self) -> Self {
        ScalarQ::new(self.num.bar(), self.den.bar())
    }

    pub fn pow(&self, k: i64) -> Result<Self, QringError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = ScalarQ::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point.
    pub fn specialize(&self, q0: &Q) -> Result<Q, QringError> {
        let d = self.den.eval(q0)?;
        if d.is_zero() {
            return Err(QringError::PoleAtPoint);
        }
        Ok(self.num.eval(q0)? / d)
    }

    pub fn specialize_int(&self, q0: i64) -> Result<Q, QringError> {
        self.specialize(&Q::from_integer(BigInt::from(q0)))
    }
}

fn scale(p: &LaurentPoly, c: &Q) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, k) in p.iter() {
        out.insert_add(*e, &(k * c));
    }
    out
}

impl Add for &ScalarQ {
    type Output = ScalarQ;
    fn add(self, rhs: &ScalarQ) -> ScalarQ {
        ScalarQ::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &ScalarQ {
    type Output = ScalarQ;
    fn sub(self, rhs: &ScalarQ) -> ScalarQ {
        ScalarQ::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &ScalarQ {
    type Output = ScalarQ;
    fn mul(self, rhs: &ScalarQ) -> ScalarQ {
        ScalarQ::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &ScalarQ {
    type Output = ScalarQ;
    fn div(self, rhs: &ScalarQ) -> ScalarQ {
        assert!(!rhs.is_zero(), "division by zero in Q(q)");
        ScalarQ::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! fwd_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, rhs: ScalarQ) -> ScalarQ {
                (&self).$m(&rhs)
            }
        }
    };
}
fwd_owned!(Add, add);
fwd_owned!(Sub, sub);
fwd_owned!(Mul, mul);
fwd_owned!(Div, div);

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

impl AddAssign<&ScalarQ> for ScalarQ {
    fn add_assign(&mut self, rhs: &ScalarQ) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&ScalarQ> for ScalarQ {
    fn sub_assign(&mut self, rhs: &ScalarQ) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&ScalarQ> for ScalarQ {
    fn mul_assign(&mut self, rhs: &ScalarQ) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// ---- the named constants of the theory ----

fn qint_poly(n: i64) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    if n < 0 {
        return -&qint_poly(-n);
    }
    let mut p = LaurentPoly::zero();
    let mut e = n - 1;
    while e >= 1 - n {
        p.insert_add(e, &Q::one());
        e -= 2;
    }
    p
}

/// Quantum integer [n] = (qⁿ − q⁻ⁿ)/(q − q⁻¹).
pub fn qint(n: i64) -> ScalarQ {
    ScalarQ {
        num: qint_poly(n),
        den: LaurentPoly::one(),
    }
}

fn qint_prod(ns: &[i64]) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for &n in ns {
        p = &p * &qint_poly(n);
    }
    p
}

static DELTA: OnceLock<ScalarQ> = OnceLock::new();
static PHI: OnceLock<ScalarQ> = OnceLock::new();
static ZPARAM: OnceLock<ScalarQ> = OnceLock::new();

/// δ = [3][8][13][18]/([4][6][9]), the categorical dimension of the
/// generating object (quantum dimension of the 26-dimensional module).
pub fn delta() -> ScalarQ {
    DELTA
        .get_or_init(|| ScalarQ::new(qint_prod(&[3, 8, 13, 18]), qint_prod(&[4, 6, 9])))
        .clone()
}

/// φ = [2][7][12]/([4][6]), the bigon coefficient.
pub fn phi() -> ScalarQ {
    PHI.get_or_init(|| ScalarQ::new(qint_prod(&[2, 7, 12]), qint_prod(&[4, 6])))
        .clone()
}

/// z = (q⁻⁴ − q⁴)/[3], the common skein coefficient.
pub fn zparam() -> ScalarQ {
    ZPARAM
        .get_or_init(|| {
            ScalarQ::new(
                &LaurentPoly::q_pow(-4) - &LaurentPoly::q_pow(4),
                qint_poly(3),
            )
        })
        .clone()
}

// ---- parsing ----

struct Scanner<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Self {
        Scanner { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let neg = if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            if neg {
                self.pos -= 1;
            }
            return None;
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        let mut v: BigInt = digits.parse().unwrap();
        if neg {
            v = -v;
        }
        Some(v)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.s.len()
    }
}

fn parse_laurent(sc: &mut Scanner, input: &str) -> Result<LaurentPoly, QringError> {
    let mut p = LaurentPoly::zero();
    let mut first = true;
    loop {
        sc.skip_ws();
        let sign = if sc.eat(b'+') {
            1
        } else if sc.eat(b'-') {
            -1
        } else if first {
            1
        } else {
            break;
        };
        first = false;
        // term: [int] [q [^int]]
        let coeff = sc.integer();
        let has_q = sc.eat(b'q');
        if coeff.is_none() && !has_q {
            return Err(QringError::Parse {
                input: input.to_string(),
                reason: "expected a term".into(),
            });
        }
        let exp = if has_q {
            if sc.eat(b'^') {
                sc.integer().ok_or_else(|| QringError::Parse {
                    input: input.to_string(),
                    reason: "expected exponent after ^".into(),
                })?
            } else {
                BigInt::one()
            }
        } else {
            BigInt::zero()
        };
        let exp: i64 = exp.try_into().map_err(|_| QringError::Parse {
            input: input.to_string(),
            reason: "exponent out of range".into(),
        })?;
        let c = Q::from_integer(coeff.unwrap_or_else(BigInt::one)) * Q::from_integer(BigInt::from(sign));
        p.insert_add(exp, &c);
        match sc.peek() {
            Some(b'+') | Some(b'-') => continue,
            _ => break,
        }
    }
    Ok(p)
}

impl std::str::FromStr for ScalarQ {
    type Err = QringError;

    /// Parses the printed form: a Laurent string like `q^24 - q^-24` or a
    /// fraction `(num)/(den)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut sc = Scanner::new(s);
        if sc.peek() == Some(b'(') {
            sc.bump();
            let num = parse_laurent(&mut sc, s)?;
            if !sc.eat(b')') {
                return Err(QringError::Parse {
                    input: s.into(),
                    reason: "expected )".into(),
                });
            }
            if !sc.eat(b'/') {
                // a parenthesized Laurent polynomial on its own
                if sc.at_end() {
                    return Ok(ScalarQ::new(num, LaurentPoly::one()));
                }
                return Err(QringError::Parse {
                    input: s.into(),
                    reason: "expected / after (num)".into(),
                });
            }
            if !sc.eat(b'(') {
                return Err(QringError::Parse {
                    input: s.into(),
                    reason: "expected ( after /".into(),
                });
            }
            let den = parse_laurent(&mut sc, s)?;
            if !sc.eat(b')') || !sc.at_end() {
                return Err(QringError::Parse {
                    input: s.into(),
                    reason: "trailing input".into(),
                });
            }
            ScalarQ::from_frac(num, den)
        } else {
            let num = parse_laurent(&mut sc, s)?;
            if !sc.at_end() {
                return Err(QringError::Parse {
                    input: s.into(),
                    reason: "trailing input".into(),
                });
            }
            Ok(ScalarQ::new(num, LaurentPoly::one()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> ScalarQ {
        ScalarQ::q_pow(1)
    }

    #[test]
    fn qint_small() {
        assert_eq!(qint(0), ScalarQ::zero());
        assert_eq!(qint(1), ScalarQ::one());
        let expect: ScalarQ = "q^2 + 1 + q^-2".parse().unwrap();
        assert_eq!(qint(3), expect);
        assert_eq!(qint(-3), -&expect);
    }

    #[test]
    fn qint_matches_defining_fraction() {
        for n in -9i64..=9 {
            let frac = ScalarQ::new(
                &LaurentPoly::q_pow(n) - &LaurentPoly::q_pow(-n),
                &LaurentPoly::q_pow(1) - &LaurentPoly::q_pow(-1),
            );
            assert_eq!(qint(n), frac, "[{}]", n);
        }
    }

    #[test]
    fn named_constants_at_one() {
        assert_eq!(delta().specialize_int(1).unwrap(), Q::from_integer(26.into()));
        assert_eq!(phi().specialize_int(1).unwrap(), Q::from_integer(7.into()));
        assert_eq!(zparam().specialize_int(1).unwrap(), Q::zero());
    }

    #[test]
    fn delta_phi_nonneg_integer_coeffs() {
        assert!(delta().is_polynomial());
        assert!(delta().numerator().has_nonneg_integer_coeffs());
        assert!(phi().is_polynomial());
        assert!(phi().numerator().has_nonneg_integer_coeffs());
    }

    #[test]
    fn bar_behaviour() {
        assert_eq!(ScalarQ::q_pow(2).bar(), ScalarQ::q_pow(-2));
        assert_eq!(delta().bar(), delta());
        for n in -6i64..=6 {
            assert_eq!(qint(n).bar(), qint(n));
        }
        assert_eq!(zparam().bar(), -&zparam());
    }

    #[test]
    fn specialize_pole() {
        let x = ScalarQ::new(
            LaurentPoly::one(),
            &LaurentPoly::q_pow(1) - &LaurentPoly::one(),
        );
        assert_eq!(x.specialize_int(1), Err(QringError::PoleAtPoint));
        assert_eq!(qint(2).specialize_int(1).unwrap(), Q::from_integer(2.into()));
        // negative exponents pole at 0
        assert_eq!(ScalarQ::q_pow(-1).specialize_int(0), Err(QringError::PoleAtPoint));
    }

    #[test]
    fn quantum_integer_addition_rule() {
        // [m+n] = q^-n [m] + q^m [n]
        for m in -8i64..=8 {
            for n in -8i64..=8 {
                let lhs = qint(m + n);
                let rhs = &(&ScalarQ::q_pow(-n) * &qint(m)) + &(&ScalarQ::q_pow(m) * &qint(n));
                assert_eq!(lhs, rhs, "m={} n={}", m, n);
            }
        }
    }

    #[test]
    fn display_roundtrip_examples() {
        for s in [
            "q^24 - q^-24",
            "0",
            "1",
            "-q",
            "2q^3 + 5 - 7q^-2",
            "(q^2 + 1)/(q^4 + q^2 + 3)",
            "(3q)/(2)",
        ] {
            let x: ScalarQ = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
    }

    fn arb_scalar() -> impl Strategy<Value = ScalarQ> {
        let term = (-6i64..=6, -4i64..=4).prop_map(|(e, c)| {
            ScalarQ {
                num: LaurentPoly::monomial(Q::from_integer(c.into()), e),
                den: LaurentPoly::one(),
            }
        });
        let poly = proptest::collection::vec(term, 1..4)
            .prop_map(|ts| ts.iter().fold(ScalarQ::zero(), |a, t| &a + t));
        (poly.clone(), poly).prop_map(|(a, b)| {
            if b.is_zero() {
                a
            } else {
                &a / &b
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, ScalarQ::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), ScalarQ::one());
            }
        }

        #[test]
        fn bar_is_ring_involution(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }

        #[test]
        fn print_parse_roundtrip(a in arb_scalar()) {
            let s = a.to_string();
            let back: ScalarQ = s.parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}

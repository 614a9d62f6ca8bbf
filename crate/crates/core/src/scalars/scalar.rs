use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use super::gaussian::GaussianRational;
use super::laurent::LaurentPoly;
use crate::error::Error;

/// An element of ℚ(i)(v) stored as a reduced fraction `num/den`.
///
/// Canonical form: `gcd(num, den) = 1`, `den` has lowest exponent 0 with
/// coefficient 1, and zero is `0/1`. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

// Dense ordinary polynomials (index = exponent) used for the Euclidean gcd.
type Dense = Vec<GaussianRational>;

fn to_dense(p: &LaurentPoly, shift: i32) -> Dense {
    let top = p.max_exp().unwrap() - shift;
    let mut d = vec![GaussianRational::zero(); top as usize + 1];
    for (e, c) in p.terms() {
        d[(e - shift) as usize] = c.clone();
    }
    d
}

fn from_dense(d: &[GaussianRational], shift: i32) -> LaurentPoly {
    LaurentPoly::from_terms(
        d.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k as i32 + shift, c.clone())),
    )
}

fn trim(d: &mut Dense) {
    while d.last().is_some_and(|c| c.is_zero()) {
        d.pop();
    }
}

/// Division with remainder; `b` must be nonzero and trimmed.
fn divrem(a: &[GaussianRational], b: &[GaussianRational]) -> (Dense, Dense) {
    let mut r: Dense = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().unwrap().inv();
    let mut q = vec![GaussianRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = &r[r.len() - 1] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[k + j] = &r[k + j] - &(&c * bj);
            }
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn monic(mut d: Dense) -> Dense {
    let inv = d.last().unwrap().inv();
    for c in d.iter_mut() {
        *c = &*c * &inv;
    }
    d
}

fn gcd_dense(a: Dense, b: Dense) -> Dense {
    let (mut a, mut b) = (a, b);
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::from(n))
    }

    pub fn from_gaussian(c: GaussianRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Scalar { num: p, den: LaurentPoly::one() }
    }

    /// `v^e`.
    pub fn v_pow(e: i32) -> Self {
        Self::from_poly(LaurentPoly::v_pow(e))
    }

    /// `q^k = v^{2k}`.
    pub fn q_pow(k: i32) -> Self {
        Self::v_pow(2 * k)
    }

    /// `c·v^e`.
    pub fn monomial(c: GaussianRational, e: i32) -> Self {
        Self::from_poly(LaurentPoly::monomial(c, e))
    }

    /// Builds the reduced fraction `num/den`.
    pub fn fraction(num: LaurentPoly, den: LaurentPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let den_lo = den.min_exp().unwrap();
        if den.is_monomial() {
            let c = den.lowest_coeff().unwrap().inv();
            return Scalar { num: num.scale(&c).shift(-den_lo), den: LaurentPoly::one() };
        }
        let num_lo = num.min_exp().unwrap();
        let mut num_d = to_dense(&num, num_lo);
        let mut den_d = to_dense(&den, den_lo);
        if !num.is_monomial() {
            let g = gcd_dense(num_d.clone(), den_d.clone());
            if g.len() > 1 {
                num_d = divrem(&num_d, &g).0;
                den_d = divrem(&den_d, &g).0;
            }
        }
        let c = den_d[0].inv();
        let num = from_dense(&num_d, num_lo - den_lo).scale(&c);
        let den = from_dense(&den_d, 0).scale(&c);
        Scalar { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Returns `(c, e)` when the value is `c·v^e`.
    pub fn as_monomial(&self) -> Option<(&GaussianRational, i32)> {
        if self.den.is_one() && self.num.is_monomial() {
            let (e, c) = &self.num.terms()[0];
            Some((c, *e))
        } else {
            None
        }
    }

    /// Number of stored terms; the pivot-size heuristic.
    pub fn term_count(&self) -> usize {
        self.num.len() + if self.den.is_one() { 0 } else { self.den.len() }
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, Error> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Scalar { num: self.num.shift(k), den: self.den.clone() }
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, k: i32) -> Result<Self, Error> {
        if let Some((c, e)) = self.as_monomial() {
            let mut acc = GaussianRational::one();
            let base = if k < 0 { c.inv() } else { c.clone() };
            for _ in 0..k.unsigned_abs() {
                acc = &acc * &base;
            }
            return Ok(Self::monomial(acc, e * k));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitutes `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        Self::reduce(self.num.bar(), self.den.bar())
    }

    /// The value at `v = 1`, or `PoleAtOne` if the reduced denominator vanishes
    /// there.
    pub fn eval_at_one(&self) -> Result<GaussianRational, Error> {
        let d = self.den.eval_at_one();
        if d.is_zero() {
            return Err(Error::PoleAtOne(self.to_string()));
        }
        Ok(&self.num.eval_at_one() * &d.inv())
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Scalar::reduce(&self.num + &rhs.num, self.den.clone());
        }
        Scalar::reduce(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        if let Some((c, e)) = self.as_monomial() {
            return Scalar { num: rhs.num.scale(c).shift(e), den: rhs.den.clone() };
        }
        if let Some((c, e)) = rhs.as_monomial() {
            return Scalar { num: self.num.scale(c).shift(e), den: self.den.clone() };
        }
        Scalar::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a `Result`.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<LaurentPoly> for Scalar {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_poly(s: &str) -> Result<LaurentPoly, Error> {
    let err = || Error::Parse(format!("invalid polynomial `{s}`"));
    let mut terms = Vec::new();
    let mut rest = s.trim();
    loop {
        let mark = rest.find("*v^").ok_or_else(err)?;
        let coeff: GaussianRational = rest[..mark].parse().map_err(|_| err())?;
        let tail = &rest[mark + 3..];
        let end = tail
            .char_indices()
            .find(|&(k, c)| !(c.is_ascii_digit() || (k == 0 && c == '-')))
            .map_or(tail.len(), |(k, _)| k);
        let exp: i32 = tail[..end].parse().map_err(|_| err())?;
        terms.push((exp, coeff));
        rest = &tail[end..];
        if rest.is_empty() {
            break;
        }
        rest = rest.strip_prefix('+').ok_or_else(err)?;
    }
    Ok(LaurentPoly::from_terms(terms))
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_poly(s)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(') {
            let (num, den) = inner
                .strip_suffix(')')
                .and_then(|t| t.split_once(")/("))
                .ok_or_else(|| Error::Parse(format!("invalid scalar `{s}`")))?;
            Scalar::fraction(parse_poly(num)?, parse_poly(den)?)
        } else {
            Ok(Scalar::from_poly(parse_poly(s)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, GaussianRational::from_int(c))))
    }

    #[test]
    fn reduces_common_factor() {
        // (q − q⁻¹)/(q − q⁻¹) = 1
        let x = poly(&[(-2, -1), (2, 1)]);
        let s = Scalar::fraction(x.clone(), x).unwrap();
        assert!(s.is_one());
        // (v⁴ − 1)/(v² − 1) = v² + 1
        let s = Scalar::fraction(poly(&[(0, -1), (4, 1)]), poly(&[(0, -1), (2, 1)])).unwrap();
        assert_eq!(s, Scalar::from_poly(poly(&[(0, 1), (2, 1)])));
    }

    #[test]
    fn denominator_normalized() {
        // 1/(2v³ + 4v⁵) = (1/2)v⁻³ / (1 + 2v²)
        let s = Scalar::fraction(LaurentPoly::one(), poly(&[(3, 2), (5, 4)])).unwrap();
        assert_eq!(s.den().min_exp(), Some(0));
        assert!(s.den().lowest_coeff().unwrap().is_one());
        assert_eq!(s.num().min_exp(), Some(-3));
    }

    #[test]
    fn pole_at_one() {
        let qmq = poly(&[(-2, -1), (2, 1)]);
        let s = Scalar::fraction(LaurentPoly::one(), qmq).unwrap();
        assert!(matches!(s.eval_at_one(), Err(Error::PoleAtOne(_))));
    }

    #[test]
    fn text_round_trip() {
        let i = GaussianRational::i();
        let samples = [
            Scalar::zero(),
            Scalar::one(),
            Scalar::monomial(i.clone(), 1),
            Scalar::fraction(poly(&[(-1, 3), (2, -1)]), poly(&[(0, 1), (2, 1), (4, 1)])).unwrap(),
            Scalar::from_poly(LaurentPoly::from_terms([(-3, &i + &GaussianRational::from_int(-2))])),
        ];
        for s in samples {
            let text = s.to_string();
            assert_eq!(text.parse::<Scalar>().unwrap(), s, "{text}");
        }
        assert_eq!(Scalar::zero().to_string(), "0*v^0");
        assert!("1*v".parse::<Scalar>().is_err());
        assert!("(1*v^0)/(0*v^0)".parse::<Scalar>().is_err());
    }

    #[test]
    fn gaussian_gcd() {
        // (v² + 1) = (v − i)(v + i); (v² + 1)/(v − i) = v + i
        let i = GaussianRational::i();
        let num = poly(&[(0, 1), (2, 1)]);
        let den = LaurentPoly::from_terms([(0, -&i), (1, GaussianRational::one())]);
        let s = Scalar::fraction(num, den).unwrap();
        assert!(s.is_poly());
        assert_eq!(s.num(), &LaurentPoly::from_terms([(0, i), (1, GaussianRational::one())]));
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational;
use super::rational::Rational;

/// Laurent polynomial in `v` with ℚ(i) coefficients, stored as a list of
/// `(exponent, coefficient)` pairs sorted by exponent with no zero entries.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, GaussianRational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·v^e`.
    pub fn monomial(c: GaussianRational, e: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(e, c)] }
        }
    }

    /// `v^e`.
    pub fn v_pow(e: i32) -> Self {
        Self::monomial(GaussianRational::one(), e)
    }

    /// Builds from arbitrary `(exponent, coeff)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i32, GaussianRational)>>(it: I) -> Self {
        let mut terms: Vec<(i32, GaussianRational)> = it.into_iter().collect();
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, GaussianRational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = &*lc + &c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> &[(i32, GaussianRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn lowest_coeff(&self) -> Option<&GaussianRational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coeff(&self, e: i32) -> GaussianRational {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(p) => self.terms[p].1.clone(),
            Err(_) => GaussianRational::zero(),
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Substitutes `v ↦ 1`.
    pub fn eval_at_one(&self) -> GaussianRational {
        self.terms.iter().fold(GaussianRational::zero(), |acc, (_, c)| &acc + c)
    }

    /// Substitutes `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        LaurentPoly { terms }
    }

    /// Total size used for pivot heuristics.
    pub fn weight(&self) -> usize {
        self.terms.iter().map(|t| t.1.weight()).sum()
    }

    fn merge(&self, rhs: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, if negate { -&b[j].1 } else { b[j].1.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (*e, if negate { -c } else { c.clone() })));
        LaurentPoly { terms: out }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return rhs.scale(c).shift(*e);
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return self.scale(c).shift(*e);
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms.last().unwrap().0 + rhs.terms.last().unwrap().0;
        let span = (hi - lo) as usize + 1;
        if span <= 4 * self.terms.len() * rhs.terms.len() + 64 {
            let mut acc: Vec<Option<GaussianRational>> = vec![None; span];
            for (ea, ca) in &self.terms {
                for (eb, cb) in &rhs.terms {
                    let slot = &mut acc[(ea + eb - lo) as usize];
                    let p = ca * cb;
                    *slot = Some(match slot.take() {
                        Some(x) => &x + &p,
                        None => p,
                    });
                }
            }
            let terms = acc
                .into_iter()
                .enumerate()
                .filter_map(|(k, c)| c.filter(|c| !c.is_zero()).map(|c| (lo + k as i32, c)))
                .collect();
            LaurentPoly { terms }
        } else {
            LaurentPoly::from_terms(
                self.terms
                    .iter()
                    .flat_map(|(ea, ca)| rhs.terms.iter().map(move |(eb, cb)| (ea + eb, ca * cb))),
            )
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }
}

impl From<Rational> for LaurentPoly {
    fn from(r: Rational) -> Self {
        Self::constant(GaussianRational::real(r))
    }
}

/// `c*v^e` terms joined by `+`, ascending exponent; zero prints as `0*v^0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0*v^0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{c}*v^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

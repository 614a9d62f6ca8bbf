//! Quantum integers, factorials, binomials and the parity-twisted
//! parameters `q_i`.

use super::gaussian::GaussianRational;
use super::laurent::LaurentPoly;
use super::scalar::Scalar;
use crate::error::Error;

/// `[m] = (q^m − q^{−m})/(q − q^{−1})`, as a polynomial in `v = q^{1/2}`.
pub fn quantum_int(m: u32) -> LaurentPoly {
    let m = m as i32;
    LaurentPoly::from_terms((0..m).map(|k| (2 * (m - 1 - 2 * k), GaussianRational::one())))
}

pub fn q_factorial(m: u32) -> LaurentPoly {
    (1..=m).fold(LaurentPoly::one(), |acc, k| &acc * &quantum_int(k))
}

/// Returns `([m]!, [m choose k])`.
pub fn q_factorial_binomial(m: u32, k: u32) -> Result<(LaurentPoly, Scalar), Error> {
    if k > m {
        return Err(Error::InvalidArgument(format!("binomial index {k} exceeds {m}")));
    }
    let fact = q_factorial(m);
    let den = &q_factorial(k) * &q_factorial(m - k);
    let binom = Scalar::fraction(fact.clone(), den)?;
    Ok((fact, binom))
}

/// `[m]` as a scalar.
pub fn qint(m: i64) -> Scalar {
    if m <= 0 {
        // Only nonnegative brackets arise from occupations; `[−m] = −[m]`.
        return -&Scalar::from_poly(quantum_int((-m) as u32));
    }
    Scalar::from_poly(quantum_int(m as u32))
}

/// `q_i` for a slot of the given parity: `q` if even, `−q⁻¹` if odd.
pub fn q_sub(parity: u8) -> Scalar {
    if parity == 0 {
        Scalar::q_pow(1)
    } else {
        -&Scalar::q_pow(-1)
    }
}

/// `q_i^k` computed without repeated multiplication.
pub fn q_sub_pow(parity: u8, k: i64) -> Scalar {
    if parity == 0 {
        Scalar::q_pow(k as i32)
    } else {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Scalar::monomial(GaussianRational::from_int(sign), -2 * k as i32)
    }
}

/// `𝐪(μ, ν) = ∏ q_i^{μ_i ν_i}`.
pub fn bq(mu: &[i64], nu: &[i64], eps: &[u8]) -> Result<Scalar, Error> {
    if mu.len() != nu.len() || mu.len() != eps.len() {
        return Err(Error::LengthMismatch {
            expected: eps.len(),
            found: if mu.len() != eps.len() { mu.len() } else { nu.len() },
        });
    }
    let mut sign = 1i64;
    let mut e = 0i64;
    for ((m, n), p) in mu.iter().zip(nu).zip(eps) {
        let k = m * n;
        if *p == 0 {
            e += 2 * k;
        } else {
            e -= 2 * k;
            if k.rem_euclid(2) == 1 {
                sign = -sign;
            }
        }
    }
    Ok(Scalar::monomial(GaussianRational::from_int(sign), e as i32))
}

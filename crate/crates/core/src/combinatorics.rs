//! Parity sequences, weights, partitions, the index sets 𝒫(G_ℓ)_ε and the
//! classical dimensions of O_ℓ and Sp_{2ℓ} representations.
//!
//! Slots are 0-based throughout: slot `j` carries the weight `δ_{j+1}`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModuleKind {
    /// One Fock space per tensor factor.
    W,
    /// Factors grouped in pairs.
    W2,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CartanType::C => "C",
            CartanType::D => "D",
        })
    }
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleKind::W => "W",
            ModuleKind::W2 => "W2",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Epsilon {
    bits: Vec<u8>,
}

impl Epsilon {
    pub fn new(bits: Vec<u8>) -> Result<Self, Error> {
        if bits.len() < 4 {
            return Err(Error::Config(format!(
                "parity sequence must have length at least 4, got {}",
                bits.len()
            )));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Config("parity sequence entries must be 0 or 1".into()));
        }
        Ok(Epsilon { bits })
    }

    pub fn homogeneous(n: usize, bit: u8) -> Self {
        Epsilon::new(vec![bit; n]).expect("valid homogeneous parity sequence")
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Parity of slot `j` (0-based).
    pub fn at(&self, j: usize) -> u8 {
        self.bits[j]
    }

    pub fn n0(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 0).count()
    }

    pub fn n1(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// `(−1)^{ε_j}`.
    pub fn sign(&self, j: usize) -> i64 {
        if self.bits[j] == 0 {
            1
        } else {
            -1
        }
    }

    /// The bilinear form `(μ|ν) = Σ (−1)^{ε_j} μ_j ν_j` on the δ-lattice.
    pub fn form(&self, mu: &[i64], nu: &[i64]) -> i64 {
        mu.iter().zip(nu).enumerate().map(|(j, (a, b))| self.sign(j) * a * b).sum()
    }

    /// `Λ = Σ (−1)^{ε_j} δ_j` as a δ-coordinate vector.
    pub fn big_lambda(&self) -> Vec<i64> {
        (0..self.n()).map(|j| self.sign(j)).collect()
    }

    /// Simple root `α_i` for node `i ∈ {0, …, n−1}`.
    pub fn simple_root(&self, x: CartanType, i: usize) -> Vec<i64> {
        let mut a = vec![0; self.n()];
        if i == 0 {
            match x {
                CartanType::D => {
                    a[0] = -1;
                    a[1] = -1;
                }
                CartanType::C => a[0] = -2,
            }
        } else {
            a[i - 1] = 1;
            a[i] = -1;
        }
        a
    }

    /// Whether node `i` is odd: `e_i² = 0` holds there.
    pub fn node_is_odd(&self, x: CartanType, i: usize) -> bool {
        if i == 0 {
            match x {
                CartanType::D => self.bits[0] != self.bits[1],
                CartanType::C => false,
            }
        } else {
            self.bits[i - 1] != self.bits[i]
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Epsilon({self})")
    }
}

impl FromStr for Epsilon {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Config(format!("parity sequence `{s}` must consist of 0/1 characters"))),
            })
            .collect::<Result<Vec<u8>, Error>>()?;
        Epsilon::new(bits)
    }
}

/// A weight `(s/2)·Λ + Σ m_j δ_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub s: i64,
    pub m: Vec<i64>,
}

impl Weight {
    pub fn new(s: i64, m: Vec<i64>) -> Self {
        Weight { s, m }
    }

    pub fn pure(m: Vec<i64>) -> Self {
        Weight { s: 0, m }
    }

    pub fn zero(n: usize) -> Self {
        Weight { s: 0, m: vec![0; n] }
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.m.len(), rhs.m.len());
        Weight { s: self.s + rhs.s, m: self.m.iter().zip(&rhs.m).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self + &(-rhs)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { s: -self.s, m: self.m.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2*L", self.s)?;
        for (j, c) in self.m.iter().enumerate() {
            if *c != 0 {
                write!(f, "{}{}*d{}", if *c < 0 { "" } else { "+" }, c, j + 1)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts decreasingly and trims zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_k` (1-based), zero past the end.
    pub fn part(&self, k: usize) -> usize {
        if k == 0 {
            return 0;
        }
        self.parts.get(k - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.parts.first().copied().unwrap_or(0);
        Partition { parts: (1..=w).map(|c| self.parts.iter().filter(|&&p| p >= c).count()).collect() }
    }

    /// The partition obtained by replacing the first column length `c` by
    /// `ell − c`; requires `λ′₁ + λ′₂ ≤ ell`.
    pub fn associated(&self, ell: usize) -> Partition {
        let mut cols = self.conjugate().parts;
        if cols.is_empty() {
            cols.push(ell);
        } else {
            cols[0] = ell - cols[0];
        }
        Partition::new(cols).conjugate()
    }

    /// All partitions of `d` in decreasing lexicographic order.
    pub fn all_of_size(d: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("invalid partition part `{p}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("partition parts must be weakly decreasing: `{s}`")));
        }
        Ok(Partition::new(parts))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupFamily {
    O,
    Sp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: GroupFamily,
    pub ell: usize,
}

impl GroupSpec {
    pub fn new(family: GroupFamily, ell: usize) -> Self {
        GroupSpec { family, ell }
    }

    pub fn for_module(kind: ModuleKind, ell: usize) -> Self {
        match kind {
            ModuleKind::W => GroupSpec::new(GroupFamily::O, ell),
            ModuleKind::W2 => GroupSpec::new(GroupFamily::Sp, ell),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            GroupFamily::O => write!(f, "O{}", self.ell),
            GroupFamily::Sp => write!(f, "Sp{}", 2 * self.ell),
        }
    }
}

/// Membership in 𝒫(G_ℓ) without the hook condition.
pub fn in_pg(lam: &Partition, g: GroupSpec) -> bool {
    match g.family {
        GroupFamily::O => {
            let c = lam.conjugate();
            c.part(1) + c.part(2) <= g.ell
        }
        GroupFamily::Sp => lam.len() <= g.ell,
    }
}

pub fn in_pg_eps(lam: &Partition, g: GroupSpec, eps: &Epsilon) -> bool {
    in_pg(lam, g) && lam.part(eps.n0() + 1) <= eps.n1()
}

/// Highest weight of the polynomial representation attached to `lam`, read
/// off by peeling rows (even slots) and columns (odd slots).
pub fn omega_lambda(lam: &Partition, eps: &Epsilon) -> Result<Vec<i64>, Error> {
    let mut rows: Vec<usize> = lam.parts().to_vec();
    let mut out = Vec::with_capacity(eps.n());
    for j in 0..eps.n() {
        if eps.at(j) == 0 {
            if rows.is_empty() {
                out.push(0);
            } else {
                out.push(rows.remove(0) as i64);
            }
        } else {
            out.push(rows.len() as i64);
            for r in rows.iter_mut() {
                *r -= 1;
            }
            rows.retain(|&r| r > 0);
        }
    }
    if !rows.is_empty() {
        return Err(Error::ShapeNotExhausted(format!("{lam} against parity {eps}")));
    }
    Ok(out)
}

pub fn lambda_weight(lam: &Partition, eps: &Epsilon, g: GroupSpec) -> Result<Weight, Error> {
    if !in_pg_eps(lam, g, eps) {
        return Err(Error::NotAdmissible(format!("{lam} for {g} with parity {eps}")));
    }
    let s = match g.family {
        GroupFamily::O => g.ell as i64,
        GroupFamily::Sp => 2 * g.ell as i64,
    };
    Ok(Weight { s, m: omega_lambda(lam, eps)? })
}

/// `∏_{α>0} (λ+ρ, α)/(ρ, α)`; `lam` and `rho` are given doubled so that
/// half-integral ρ stays integral.
fn weyl_dim(lam2: &[i64], rho2: &[i64], roots: &[Vec<i64>]) -> u64 {
    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    let shifted: Vec<i64> = lam2.iter().zip(rho2).map(|(a, b)| a + b).collect();
    for a in roots {
        num *= dot(&shifted, a);
        den *= dot(rho2, a);
    }
    assert!(!den.is_zero());
    let (q, r) = (&num / &den, &num % &den);
    assert!(r.is_zero(), "Weyl dimension quotient is not integral");
    q.to_u64().expect("dimension fits in u64")
}

fn roots_pm(m: usize) -> Vec<Vec<i64>> {
    let mut roots = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for s in [-1, 1] {
                let mut a = vec![0; m];
                a[i] = 1;
                a[j] = s;
                roots.push(a);
            }
        }
    }
    roots
}

fn padded_doubled(lam: &Partition, m: usize) -> Vec<i64> {
    (1..=m).map(|k| 2 * lam.part(k) as i64).collect()
}

fn dim_sp(lam: &Partition, ell: usize) -> u64 {
    let mut roots = roots_pm(ell);
    for i in 0..ell {
        let mut a = vec![0; ell];
        a[i] = 2;
        roots.push(a);
    }
    let rho2: Vec<i64> = (0..ell).map(|i| 2 * (ell - i) as i64).collect();
    weyl_dim(&padded_doubled(lam, ell), &rho2, &roots)
}

/// Dimension of the 𝔰𝔬_ℓ-module with highest weight `lam` (≤ ⌊ℓ/2⌋ parts).
fn dim_so(lam: &Partition, ell: usize) -> u64 {
    let m = ell / 2;
    if m == 0 {
        return 1;
    }
    let mut roots = roots_pm(m);
    let rho2: Vec<i64> = if ell % 2 == 1 {
        for i in 0..m {
            let mut a = vec![0; m];
            a[i] = 1;
            roots.push(a);
        }
        (0..m).map(|i| 2 * (m - i) as i64 - 1).collect()
    } else {
        (0..m).map(|i| 2 * (m - 1 - i) as i64).collect()
    };
    weyl_dim(&padded_doubled(lam, m), &rho2, &roots)
}

pub fn dim_g(lam: &Partition, g: GroupSpec) -> Result<u64, Error> {
    if !in_pg(lam, g) {
        return Err(Error::NotAdmissible(format!("{lam} for {g}")));
    }
    Ok(match g.family {
        GroupFamily::Sp => dim_sp(lam, g.ell),
        GroupFamily::O => {
            let ell = g.ell;
            let base = if lam.conjugate().part(1) > ell / 2 { lam.associated(ell) } else { lam.clone() };
            let d = dim_so(&base, ell);
            if ell % 2 == 0 && ell > 0 && lam.len() == ell / 2 {
                2 * d
            } else {
                d
            }
        }
    })
}

/// Whether the O_ℓ-irreducible attached to `lam` splits into two
/// 𝔰𝔬_ℓ-irreducibles.
pub fn o_splits(lam: &Partition, ell: usize) -> bool {
    ell % 2 == 0 && lam.len() == ell / 2
}

/// All admissible partitions of `d`, decreasing lexicographic order.
pub fn enumerate_pg(g: GroupSpec, eps: &Epsilon, d: usize) -> Vec<Partition> {
    Partition::all_of_size(d).into_iter().filter(|p| in_pg_eps(p, g, eps)).collect()
}

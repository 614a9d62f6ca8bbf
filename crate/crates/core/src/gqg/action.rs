//! Matrix coefficients of the generators on basis states of 𝒲^{⊗r}.

use std::fmt;
use std::sync::OnceLock;

use smallvec::SmallVec;

use super::ModuleConfig;
use crate::combinatorics::{CartanType, ModuleKind};
use crate::fock::{FockShape, TensorState};
use crate::scalars::{qint, GaussianRational, Scalar};

/// `i^ipow · v^vexp`, the shape of every diagonal eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub ipow: u8,
    pub vexp: i32,
}

impl Mono {
    pub const ONE: Mono = Mono { ipow: 0, vexp: 0 };
    pub const MINUS_ONE: Mono = Mono { ipow: 2, vexp: 0 };

    pub fn q_pow(k: i64) -> Mono {
        Mono { ipow: 0, vexp: 2 * k as i32 }
    }

    /// `q_t^k` for a slot of the given parity.
    pub fn q_sub(parity: u8, k: i64) -> Mono {
        if parity == 0 {
            Mono { ipow: 0, vexp: 2 * k as i32 }
        } else {
            Mono { ipow: (2 * k).rem_euclid(4) as u8, vexp: -2 * k as i32 }
        }
    }

    pub fn mul(self, o: Mono) -> Mono {
        Mono { ipow: (self.ipow + o.ipow) % 4, vexp: self.vexp + o.vexp }
    }

    pub fn inv(self) -> Mono {
        Mono { ipow: (4 - self.ipow) % 4, vexp: -self.vexp }
    }

    pub fn neg(self) -> Mono {
        self.mul(Mono::MINUS_ONE)
    }

    pub fn pow(self, k: i64) -> Mono {
        Mono { ipow: (self.ipow as i64 * k).rem_euclid(4) as u8, vexp: self.vexp * k as i32 }
    }

    pub fn to_scalar(self) -> Scalar {
        let c = match self.ipow {
            0 => GaussianRational::one(),
            1 => GaussianRational::i(),
            2 => GaussianRational::from_int(-1),
            _ => -&GaussianRational::i(),
        };
        Scalar::monomial(c, self.vexp)
    }
}

/// Generator symbols. Nodes `i` follow the Dynkin labelling `0..n−1`;
/// `KDelta`/`Sigma` take a 1-based slot, the `Sl*` symbols a 1-based index
/// `1..r−1` of 𝔰𝔩_r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    E(u8),
    F(u8),
    K(u8),
    KInv(u8),
    KDelta(u8),
    KDeltaInv(u8),
    Sigma(u8),
    SlE(u8),
    SlF(u8),
    SlK(u8),
    SlKInv(u8),
}

impl Sym {
    pub fn is_diagonal(self) -> bool {
        !matches!(self, Sym::E(_) | Sym::F(_) | Sym::SlE(_) | Sym::SlF(_))
    }

    /// Change of total degree.
    pub fn degree_shift(self) -> i64 {
        match self {
            Sym::E(0) => -2,
            Sym::F(0) => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::E(i) => write!(f, "e{i}"),
            Sym::F(i) => write!(f, "f{i}"),
            Sym::K(i) => write!(f, "k{i}"),
            Sym::KInv(i) => write!(f, "k{i}^-1"),
            Sym::KDelta(j) => write!(f, "kd{j}"),
            Sym::KDeltaInv(j) => write!(f, "kd{j}^-1"),
            Sym::Sigma(j) => write!(f, "sigma{j}"),
            Sym::SlE(j) => write!(f, "E{j}"),
            Sym::SlF(j) => write!(f, "F{j}"),
            Sym::SlK(j) => write!(f, "K{j}"),
            Sym::SlKInv(j) => write!(f, "K{j}^-1"),
        }
    }
}

const QINT_CACHE: usize = 96;

fn qint_cached(m: u8) -> Scalar {
    static TABLE: OnceLock<Vec<Scalar>> = OnceLock::new();
    let t = TABLE.get_or_init(|| (0..QINT_CACHE as i64).map(qint).collect());
    t.get(m as usize).cloned().unwrap_or_else(|| qint(m as i64))
}

fn coeff(mono: Mono, ints: &[u8]) -> Scalar {
    let mut c = mono.to_scalar();
    for &m in ints {
        if m != 1 {
            c = &c * &qint_cached(m);
        }
    }
    c
}

pub type Terms = SmallVec<[(TensorState, Scalar); 4]>;

/// 𝒲^{⊗r} with the actions of 𝒰_X(ε) and of 𝐔(𝔰𝔩_r).
#[derive(Clone, Debug)]
pub struct FockModule {
    pub cfg: ModuleConfig,
    pub shape: FockShape,
    n: usize,
    r: usize,
}

impl FockModule {
    pub fn new(cfg: &ModuleConfig) -> Self {
        let r = cfg.r();
        FockModule { shape: FockShape::new(cfg.eps.clone(), r), cfg: cfg.clone(), n: cfg.n(), r }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    fn par(&self, t: usize) -> u8 {
        self.cfg.eps.at(t)
    }

    /// Whether `sym` names a generator of this module.
    pub fn knows(&self, sym: Sym) -> bool {
        let n = self.n as u8;
        let r = self.r as u8;
        match sym {
            Sym::E(i) | Sym::F(i) | Sym::K(i) | Sym::KInv(i) => i < n,
            Sym::KDelta(j) | Sym::KDeltaInv(j) | Sym::Sigma(j) => (1..=n).contains(&j),
            Sym::SlE(j) | Sym::SlF(j) | Sym::SlK(j) | Sym::SlKInv(j) => j >= 1 && j < r,
        }
    }

    /// `k_i` restricted to factor `s` (type A nodes only).
    fn k_factor(&self, i: usize, st: &TensorState, s: usize) -> Mono {
        let (a, b) = (i - 1, i);
        Mono::q_sub(self.par(a), st.get(self.n, s, a) as i64)
            .mul(Mono::q_sub(self.par(b), -(st.get(self.n, s, b) as i64)))
    }

    /// `k_0` restricted to block `b`, including the ψ sign.
    fn k0_block(&self, st: &TensorState, b: usize) -> Mono {
        let w = self.cfg.block_width();
        let c_inv2 = self.cfg.branch_mono().pow(-2);
        let mut out = Mono::ONE;
        for s in b * w..(b + 1) * w {
            let m1 = st.get(self.n, s, 0) as i64;
            let f = match self.cfg.x {
                CartanType::D => {
                    let m2 = st.get(self.n, s, 1) as i64;
                    Mono::q_sub(self.par(0), -m1).mul(Mono::q_sub(self.par(1), -m2))
                }
                CartanType::C => Mono::q_sub(self.par(0), -2 * m1),
            };
            out = out.mul(c_inv2).mul(f);
        }
        if self.cfg.psi_twist {
            out = out.neg();
        }
        out
    }

    fn blocks(&self) -> usize {
        self.cfg.ell
    }

    /// Eigenvalue of a diagonal symbol.
    pub fn eigen(&self, sym: Sym, st: &TensorState) -> Mono {
        let n = self.n;
        match sym {
            Sym::K(0) => (0..self.blocks()).fold(Mono::ONE, |acc, b| acc.mul(self.k0_block(st, b))),
            Sym::K(i) => (0..self.r).fold(Mono::ONE, |acc, s| acc.mul(self.k_factor(i as usize, st, s))),
            Sym::KInv(i) => self.eigen(Sym::K(i), st).inv(),
            Sym::KDelta(j) => {
                let t = j as usize - 1;
                let total: i64 = (0..self.r).map(|s| st.get(n, s, t) as i64).sum();
                self.cfg.branch_mono().pow(self.r as i64).mul(Mono::q_sub(self.par(t), total))
            }
            Sym::KDeltaInv(j) => self.eigen(Sym::KDelta(j), st).inv(),
            Sym::Sigma(j) => {
                let t = j as usize - 1;
                let total: i64 = (0..self.r).map(|s| st.get(n, s, t) as i64).sum();
                if self.par(t) == 1 && total % 2 == 1 {
                    Mono::MINUS_ONE
                } else {
                    Mono::ONE
                }
            }
            Sym::SlK(j) => {
                let (a, b) = (j as usize - 1, j as usize);
                let da: i64 = st.row(n, a).iter().map(|&x| x as i64).sum();
                let db: i64 = st.row(n, b).iter().map(|&x| x as i64).sum();
                Mono::q_pow(da - db)
            }
            Sym::SlKInv(j) => self.eigen(Sym::SlK(j), st).inv(),
            _ => panic!("{sym} is not diagonal"),
        }
    }

    fn valid_at(&self, t: usize, v: u8) -> bool {
        self.par(t) == 0 || v <= 1
    }

    /// `sym · |st⟩` as a list of distinct basis states with nonzero
    /// coefficients.
    pub fn apply(&self, sym: Sym, st: &TensorState) -> Terms {
        let mut out = Terms::new();
        if sym.is_diagonal() {
            out.push((st.clone(), self.eigen(sym, st).to_scalar()));
            return out;
        }
        let n = self.n;
        match sym {
            Sym::E(0) => {
                let mut prefix = Mono::ONE;
                for b in 0..self.blocks() {
                    for (s2, c) in self.e0_block(st, b) {
                        out.push((s2, &prefix.to_scalar() * &c));
                    }
                    prefix = prefix.mul(self.k0_block(st, b));
                }
            }
            Sym::F(0) => {
                let mut suffix = Mono::ONE;
                for b in (0..self.blocks()).rev() {
                    for (s2, c) in self.f0_block(st, b) {
                        out.push((s2, &c * &suffix.to_scalar()));
                    }
                    suffix = suffix.mul(self.k0_block(st, b).inv());
                }
            }
            Sym::E(i) => {
                let i = i as usize;
                let (a, b) = (i - 1, i);
                let mut prefix = Mono::ONE;
                for s in 0..self.r {
                    let mb = st.get(n, s, b);
                    let ma = st.get(n, s, a);
                    if mb > 0 && self.valid_at(a, ma + 1) {
                        let mut s2 = st.clone();
                        s2.set(n, s, a, ma + 1);
                        s2.set(n, s, b, mb - 1);
                        out.push((s2, coeff(prefix, &[mb])));
                    }
                    prefix = prefix.mul(self.k_factor(i, st, s));
                }
            }
            Sym::F(i) => {
                let i = i as usize;
                let (a, b) = (i - 1, i);
                let mut suffix = Mono::ONE;
                for s in (0..self.r).rev() {
                    let mb = st.get(n, s, b);
                    let ma = st.get(n, s, a);
                    if ma > 0 && self.valid_at(b, mb + 1) {
                        let mut s2 = st.clone();
                        s2.set(n, s, a, ma - 1);
                        s2.set(n, s, b, mb + 1);
                        out.push((s2, coeff(suffix, &[ma])));
                    }
                    suffix = suffix.mul(self.k_factor(i, st, s).inv());
                }
            }
            Sym::SlE(j) => {
                let (a, b) = (j as usize - 1, j as usize);
                let mut prefix = Mono::ONE;
                for t in 0..n {
                    let ma = st.get(n, a, t);
                    let mb = st.get(n, b, t);
                    if mb > 0 && self.valid_at(t, ma + 1) {
                        let mut s2 = st.clone();
                        s2.set(n, a, t, ma + 1);
                        s2.set(n, b, t, mb - 1);
                        out.push((s2, coeff(prefix, &[mb])));
                    }
                    prefix = prefix.mul(Mono::q_pow(ma as i64 - mb as i64));
                }
            }
            Sym::SlF(j) => {
                let (a, b) = (j as usize - 1, j as usize);
                let mut suffix = Mono::ONE;
                for t in (0..n).rev() {
                    let ma = st.get(n, a, t);
                    let mb = st.get(n, b, t);
                    if ma > 0 && self.valid_at(t, mb + 1) {
                        let mut s2 = st.clone();
                        s2.set(n, a, t, ma - 1);
                        s2.set(n, b, t, mb + 1);
                        out.push((s2, coeff(suffix, &[ma])));
                    }
                    suffix = suffix.mul(Mono::q_pow(mb as i64 - ma as i64));
                }
            }
            _ => unreachable!(),
        }
        out
    }

    fn shifted(&self, st: &TensorState, moves: &[(usize, usize, i8)]) -> Option<TensorState> {
        let n = self.n;
        let mut s2 = st.clone();
        for &(s, t, d) in moves {
            let v = st.get(n, s, t) as i16 + d as i16;
            if v < 0 || !self.valid_at(t, v as u8) {
                return None;
            }
            s2.set(n, s, t, v as u8);
        }
        Some(s2)
    }

    fn e0_block(&self, st: &TensorState, b: usize) -> Terms {
        let n = self.n;
        let mut out = Terms::new();
        match (self.cfg.x, self.cfg.kind) {
            (CartanType::D, ModuleKind::W) => {
                let s = b;
                if let Some(s2) = self.shifted(st, &[(s, 0, -1), (s, 1, -1)]) {
                    out.push((s2, coeff(Mono::ONE, &[st.get(n, s, 1)])));
                }
            }
            (CartanType::D, ModuleKind::W2) => {
                let (s, u) = (2 * b, 2 * b + 1);
                let (m1, m2) = (st.get(n, s, 0), st.get(n, s, 1));
                let (p1, p2) = (st.get(n, u, 0), st.get(n, u, 1));
                if let Some(s2) = self.shifted(st, &[(s, 1, -1), (u, 0, -1)]) {
                    out.push((s2, coeff(Mono::ONE, &[m2, p1])));
                }
                if let Some(s2) = self.shifted(st, &[(s, 0, -1), (u, 1, -1)]) {
                    let mono = Mono::q_sub(self.par(0), -(p1 as i64))
                        .mul(Mono::q_sub(self.par(1), -(m2 as i64)))
                        .mul(Mono::q_pow(-1))
                        .neg();
                    out.push((s2, coeff(mono, &[m1, p2])));
                }
            }
            (CartanType::C, ModuleKind::W) => {
                let s = b;
                let m1 = st.get(n, s, 0);
                if m1 >= 2 {
                    let s2 = self.shifted(st, &[(s, 0, -2)]).unwrap();
                    let two = qint_cached(2);
                    let c = &coeff(Mono::ONE, &[m1, m1 - 1]) / &(&two * &two);
                    out.push((s2, c));
                }
            }
            (CartanType::C, ModuleKind::W2) => {
                let (s, u) = (2 * b, 2 * b + 1);
                if let Some(s2) = self.shifted(st, &[(s, 0, -1), (u, 0, -1)]) {
                    out.push((s2, Scalar::one()));
                }
            }
        }
        out
    }

    fn f0_block(&self, st: &TensorState, b: usize) -> Terms {
        let n = self.n;
        let mut out = Terms::new();
        let sign = if self.cfg.psi_twist { Mono::MINUS_ONE } else { Mono::ONE };
        match (self.cfg.x, self.cfg.kind) {
            (CartanType::D, ModuleKind::W) => {
                let s = b;
                if let Some(s2) = self.shifted(st, &[(s, 0, 1), (s, 1, 1)]) {
                    out.push((s2, sign.to_scalar()));
                }
            }
            (CartanType::D, ModuleKind::W2) => {
                let (s, u) = (2 * b, 2 * b + 1);
                let m1 = st.get(n, s, 0);
                let p2 = st.get(n, u, 1);
                if let Some(s2) = self.shifted(st, &[(s, 1, 1), (u, 0, 1)]) {
                    let mono = Mono::q_sub(self.par(0), m1 as i64)
                        .mul(Mono::q_sub(self.par(1), p2 as i64))
                        .mul(Mono::q_pow(1))
                        .neg()
                        .mul(sign);
                    out.push((s2, mono.to_scalar()));
                }
                if let Some(s2) = self.shifted(st, &[(s, 0, 1), (u, 1, 1)]) {
                    out.push((s2, sign.to_scalar()));
                }
            }
            (CartanType::C, ModuleKind::W) => {
                let s2 = self.shifted(st, &[(b, 0, 2)]).unwrap();
                out.push((s2, Scalar::from_int(-1)));
            }
            (CartanType::C, ModuleKind::W2) => {
                if let Some(s2) = self.shifted(st, &[(2 * b, 0, 1), (2 * b + 1, 0, 1)]) {
                    out.push((s2, Scalar::from_int(-1)));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q_sub_pow;

    #[test]
    fn mono_matches_scalar_arithmetic() {
        for p in [0u8, 1] {
            for k in -3..4 {
                assert_eq!(Mono::q_sub(p, k).to_scalar(), q_sub_pow(p, k));
            }
        }
        let a = Mono { ipow: 1, vexp: 3 };
        assert!(a.mul(a.inv()).to_scalar().is_one());
        assert_eq!(a.pow(2).to_scalar(), &a.to_scalar() * &a.to_scalar());
    }

    #[test]
    fn single_factor_d_module() {
        let cfg = ModuleConfig::new(CartanType::D, "1111".parse().unwrap(), ModuleKind::W, 1)
            .unwrap()
            .with_psi(false)
            .unwrap();
        let m = FockModule::new(&cfg);
        let vac = TensorState::zero(1, 4);
        let up = m.apply(Sym::F(0), &vac);
        assert_eq!(up.len(), 1);
        assert_eq!(up[0].0.occ(), &[1, 1, 0, 0]);
        assert!(up[0].1.is_one());
        // k0 on the vacuum is q_1 = −q⁻¹
        assert_eq!(m.eigen(Sym::K(0), &vac).to_scalar(), q_sub_pow(1, 1));
        assert!(m.apply(Sym::E(0), &vac).is_empty());
    }
}

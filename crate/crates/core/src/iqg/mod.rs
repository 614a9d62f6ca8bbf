//! ıquantum groups of type AI (𝔰𝔬_ℓ) and AII (𝔰𝔭_{2ℓ}) inside 𝐔(𝔰𝔩_r),
//! acting on 𝒲^{⊗ℓ} through the transpose of the occupation matrix.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::ModuleKind;
use crate::error::Error;
use crate::gqg::relations::check_on_degrees;
use crate::gqg::{FockModule, ModuleConfig, Sym, WordExpr};
use crate::report::{Item, SuiteReport};
use crate::scalars::{GaussianRational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// (𝔰𝔩_ℓ, 𝔰𝔬_ℓ), all nodes white.
    AI,
    /// (𝔰𝔩_{2ℓ}, 𝔰𝔭_{2ℓ}), odd nodes black.
    AII,
}

impl Family {
    pub fn for_module(kind: ModuleKind) -> Family {
        match kind {
            ModuleKind::W => Family::AI,
            ModuleKind::W2 => Family::AII,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::AI => "so",
            Family::AII => "sp",
        })
    }
}

/// Parameters `(ς_i, κ_i)` for `i ∈ 𝖨_∘`, in increasing order of `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct IqgParams {
    pub family: Family,
    pub r: usize,
    pub varsigma: Vec<Scalar>,
    pub kappa: Vec<Scalar>,
}

impl IqgParams {
    /// `ς = −q⁻¹, κ = 0` (AI) or `ς = −q` (AII).
    pub fn standard(family: Family, ell: usize) -> Self {
        let s = match family {
            Family::AI => -&Scalar::q_pow(-1),
            Family::AII => -&Scalar::q_pow(1),
        };
        IqgParams::uniform(family, ell, s, Scalar::zero())
    }

    pub fn uniform(family: Family, ell: usize, varsigma: Scalar, kappa: Scalar) -> Self {
        let r = match family {
            Family::AI => ell,
            Family::AII => 2 * ell,
        };
        let m = white_nodes(family, r).len();
        IqgParams { family, r, varsigma: vec![varsigma; m], kappa: vec![kappa; m] }
    }

    pub fn for_config(cfg: &ModuleConfig) -> Self {
        IqgParams::standard(Family::for_module(cfg.kind), cfg.ell)
    }

    pub fn white(&self) -> Vec<usize> {
        white_nodes(self.family, self.r)
    }

    pub fn black(&self) -> Vec<usize> {
        black_nodes(self.family, self.r)
    }
}

/// `𝖨_∘`.
pub fn white_nodes(family: Family, r: usize) -> Vec<usize> {
    match family {
        Family::AI => (1..r).collect(),
        Family::AII => (2..r).step_by(2).collect(),
    }
}

/// `𝖨_•`.
pub fn black_nodes(family: Family, r: usize) -> Vec<usize> {
    match family {
        Family::AI => Vec::new(),
        Family::AII => (1..r).step_by(2).collect(),
    }
}

fn sl(s: Sym) -> WordExpr {
    WordExpr::sym(s)
}

/// `𝖾_j, 𝖿_j, 𝗄_j` for `j = 1..r−1`.
pub fn sl_generators(cfg: &ModuleConfig) -> Vec<Sym> {
    let r = cfg.r() as u8;
    (1..r).flat_map(|j| [Sym::SlE(j), Sym::SlF(j), Sym::SlK(j)]).collect()
}

/// `T_{w_•}(𝖾_i) = 𝖾_{i+1}(𝖾_{i−1}𝖾_i − q⁻¹𝖾_i𝖾_{i−1}) − q⁻¹(𝖾_{i−1}𝖾_i − q⁻¹𝖾_i𝖾_{i−1})𝖾_{i+1}`.
pub fn braid_image(i: usize) -> WordExpr {
    let qinv = Scalar::q_pow(-1);
    let (a, b, c) = (sl(Sym::SlE(i as u8 - 1)), sl(Sym::SlE(i as u8)), sl(Sym::SlE(i as u8 + 1)));
    let inner = WordExpr::bracket(&a, &b, &qinv);
    WordExpr::bracket(&c, &inner, &qinv)
}

/// `𝖡_i` for `i ∈ 𝖨_∘`.
pub fn build_bi(params: &IqgParams, i: usize) -> Result<WordExpr, Error> {
    let white = params.white();
    let pos = white
        .iter()
        .position(|&w| w == i)
        .ok_or_else(|| Error::InvalidArgument(format!("node {i} is not a white node of {}", params.family)))?;
    let (s, k) = (&params.varsigma[pos], &params.kappa[pos]);
    let kinv = sl(Sym::SlKInv(i as u8));
    let raise = match params.family {
        Family::AI => sl(Sym::SlE(i as u8)),
        Family::AII => braid_image(i),
    };
    let b = &(&sl(Sym::SlF(i as u8)) + &(&raise * &kinv).scale(s)) + &kinv.scale(k);
    Ok(b)
}

/// Generators of 𝐔^ı: every `𝖡_i`, plus `𝖾_j, 𝖿_j, 𝗄_j` at black nodes.
pub fn iqg_generators(params: &IqgParams) -> Vec<(String, WordExpr)> {
    let mut out = Vec::new();
    for i in params.white() {
        out.push((format!("B{i}"), build_bi(params, i).unwrap()));
    }
    for j in params.black() {
        let j = j as u8;
        for s in [Sym::SlE(j), Sym::SlF(j), Sym::SlK(j)] {
            out.push((s.to_string(), sl(s)));
        }
    }
    out
}

// sl_r root data in ε-coordinates
fn alpha(r: usize, i: usize) -> Vec<i64> {
    let mut a = vec![0; r];
    a[i - 1] = 1;
    a[i] = -1;
    a
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn reflect(r: usize, i: usize, v: &[i64]) -> Vec<i64> {
    let a = alpha(r, i);
    let c = dot(&a, v);
    v.iter().zip(&a).map(|(x, y)| x - c * y).collect()
}

/// `2ρ_•` and `w_•` (as a function) for the black nodes.
fn black_data(r: usize, black: &[usize]) -> (Vec<i64>, impl Fn(&[i64]) -> Vec<i64> + '_) {
    let mut two_rho = vec![0i64; r];
    for a in 0..r {
        for b in a + 1..r {
            if (a + 1..=b).all(|k| black.contains(&k)) {
                two_rho[a] += 1;
                two_rho[b] -= 1;
            }
        }
    }
    // the longest element of a product of A-type blocks; for the families
    // here the black nodes are pairwise orthogonal, so it is their product
    let w = move |v: &[i64]| {
        let mut out = v.to_vec();
        for &j in black {
            out = reflect(r, j, &out);
        }
        out
    };
    (two_rho, w)
}

#[derive(Clone, Debug, Serialize)]
pub struct Admissibility {
    pub conditions: [bool; 4],
    pub specializable: bool,
}

impl Admissibility {
    pub fn admissible(&self) -> bool {
        self.conditions.iter().all(|&c| c)
    }
}

fn pm_q_power(s: &Scalar) -> Option<(i64, i32)> {
    let (c, e) = s.as_monomial()?;
    if !c.im.is_zero() || e % 2 != 0 {
        return None;
    }
    if *c == GaussianRational::one() {
        Some((1, e / 2))
    } else if *c == GaussianRational::from_int(-1) {
        Some((-1, e / 2))
    } else {
        None
    }
}

/// The admissibility conditions (1)–(4) on `(ς, κ)` with `τ = id`, and
/// specializability (`ς ∈ 𝐀`, `ς(1) = −1`).
pub fn validate_params(params: &IqgParams) -> Admissibility {
    let r = params.r;
    let white = params.white();
    let black = params.black();
    let (two_rho, w) = black_data(r, &black);
    let mut cond = [true; 4];
    let mut special = true;
    for (pos, &i) in white.iter().enumerate() {
        let s = &params.varsigma[pos];
        let k = &params.kappa[pos];
        let ai = alpha(r, i);
        let wa = w(&ai);
        // (1) ς_i = ς_{τ(i)} holds trivially for τ = id
        // (2) ς_i² = (−1)^{(2ρ_•|α_i)} q^{−(α_i|2ρ_• + w_•α_i)}
        let sign = if dot(&two_rho, &ai).rem_euclid(2) == 0 { 1 } else { -1 };
        let sum: Vec<i64> = two_rho.iter().zip(&wa).map(|(a, b)| a + b).collect();
        let target = &Scalar::from_int(sign) * &Scalar::q_pow(-dot(&ai, &sum) as i32);
        let ok_shape = pm_q_power(s).is_some();
        if !ok_shape || (s * s) != target {
            cond[1] = false;
        }
        // (3) κ̄ = κ
        if &k.bar() != k {
            cond[2] = false;
        }
        // (4)
        if !k.is_zero() {
            let orth_black = black.iter().all(|&j| dot(&ai, &alpha(r, j)) == 0);
            let even = white
                .iter()
                .filter(|&&kk| black.iter().all(|&j| dot(&alpha(r, kk), &alpha(r, j)) == 0))
                .all(|&kk| dot(&ai, &alpha(r, kk)).rem_euclid(2) == 0);
            if !(orth_black && even) {
                cond[3] = false;
            }
        }
        match s.eval_at_one() {
            Ok(v) if v == GaussianRational::from_int(-1) => {}
            _ => special = false,
        }
    }
    Admissibility { conditions: cond, specializable: special }
}

/// Checks that `[x, y]` acts as zero for every listed pair, on all basis
/// states of degree `d` with `d + (degree rise of [x, y]) ≤ max_degree`.
pub fn commutator_suite(
    cfg: &ModuleConfig,
    xs: &[(String, WordExpr)],
    ys: &[(String, WordExpr)],
    max_degree: usize,
    suite: &str,
) -> Result<SuiteReport, Error> {
    if max_degree < 2 {
        return Err(Error::TruncationUnsafe(max_degree, suite.into()));
    }
    let module = FockModule::new(cfg);
    let pairs: Vec<(String, WordExpr)> = xs
        .iter()
        .flat_map(|(xn, x)| {
            ys.iter().map(move |(yn, y)| (format!("[{xn},{yn}]"), WordExpr::bracket(x, y, &Scalar::one())))
        })
        .collect();
    let items: Vec<Item> = pairs
        .par_iter()
        .map(|(name, expr)| {
            let rise = expr.max_degree_rise().max(0) as usize;
            if rise > max_degree {
                return Item::skip(name, "cutoff below the degree rise");
            }
            match check_on_degrees(&module, expr, 0..=max_degree - rise) {
                None => Item::pass(name),
                Some(w) => Item::fail(name, w),
            }
        })
        .collect();
    let mut rep = SuiteReport::new(suite);
    for it in items {
        rep.push(it);
    }
    Ok(rep)
}

fn gqg_generators(cfg: &ModuleConfig, type_a_only: bool) -> Vec<(String, WordExpr)> {
    let start = if type_a_only { 1 } else { 0 };
    (start..cfg.n() as u8)
        .flat_map(|i| [Sym::E(i), Sym::F(i), Sym::K(i)])
        .map(|s| (s.to_string(), WordExpr::sym(s)))
        .collect()
}

/// The 𝔰𝔩_r action commutes with the type A subalgebra.
pub fn type_a_commutant(cfg: &ModuleConfig, max_degree: usize) -> Result<SuiteReport, Error> {
    let ys: Vec<(String, WordExpr)> = sl_generators(cfg).into_iter().map(|s| (s.to_string(), sl(s))).collect();
    commutator_suite(cfg, &gqg_generators(cfg, true), &ys, max_degree, "commutant-type-a")
}

/// The 𝐔^ı action commutes with all of 𝒰_X(ε).
pub fn iqg_commutant(cfg: &ModuleConfig, params: &IqgParams, max_degree: usize) -> Result<SuiteReport, Error> {
    check_family(cfg, params)?;
    commutator_suite(cfg, &gqg_generators(cfg, false), &iqg_generators(params), max_degree, "commutant-iquantum")
}

/// Both suites.
pub fn commutant_check(cfg: &ModuleConfig, params: &IqgParams, max_degree: usize) -> Result<SuiteReport, Error> {
    let mut rep = type_a_commutant(cfg, max_degree)?;
    rep.extend(iqg_commutant(cfg, params, max_degree)?);
    rep.suite = "commutant".into();
    Ok(rep)
}

pub fn check_family(cfg: &ModuleConfig, params: &IqgParams) -> Result<(), Error> {
    if params.family != Family::for_module(cfg.kind) || params.r != cfg.r() {
        return Err(Error::Config(format!(
            "family {} with r={} does not act on module {} with ell={}",
            params.family,
            params.r,
            cfg.kind,
            cfg.ell
        )));
    }
    Ok(())
}

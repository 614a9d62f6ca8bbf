//! Generalized quantum groups 𝒰_X(ε) acting on q-oscillator Fock spaces,
//! together with the 𝔰𝔩_r action used by the ıquantum side.

mod action;
pub mod classical;
pub mod eta;
pub mod relations;
pub mod word;

pub use action::{FockModule, Mono, Sym};
pub use word::{CompiledExpr, Evaluator, WordExpr};

use std::fmt;

use serde::Serialize;

use crate::combinatorics::{CartanType, Epsilon, GroupSpec, ModuleKind};
use crate::error::Error;
use crate::scalars::Scalar;

/// A concrete module 𝒲^{⊗ℓ} (kind `W`) or (𝒲^{⊗2})^{⊗ℓ} (kind `W2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleConfig {
    pub x: CartanType,
    pub eps: Epsilon,
    pub kind: ModuleKind,
    pub ell: usize,
    /// Applies `f₀ ↦ −f₀`, `k₀ ↦ −k₀` on every block (type D only).
    pub psi_twist: bool,
}

impl ModuleConfig {
    /// Validates the parity/type/kind compatibility. The ψ-twist defaults to
    /// on for (D, W) only; the (D, W2) module is used untwisted.
    pub fn new(x: CartanType, eps: Epsilon, kind: ModuleKind, ell: usize) -> Result<Self, Error> {
        if ell == 0 {
            return Err(Error::Config("ell must be positive".into()));
        }
        let e1 = eps.at(0);
        let required = match (x, kind) {
            (CartanType::D, ModuleKind::W) => 1,
            (CartanType::D, ModuleKind::W2) => 0,
            (CartanType::C, ModuleKind::W) => 0,
            (CartanType::C, ModuleKind::W2) => 1,
        };
        if e1 != required {
            let which = match (x, kind) {
                (CartanType::D, ModuleKind::W) => "the single-factor type D oscillator module",
                (CartanType::D, ModuleKind::W2) => "the paired type D oscillator module",
                (CartanType::C, ModuleKind::W) => "the single-factor type C oscillator module",
                (CartanType::C, ModuleKind::W2) => "the paired type C oscillator module",
            };
            return Err(Error::Config(format!(
                "{which} (X={x}, module={kind}) requires epsilon_1 = {required}, got parity {eps}"
            )));
        }
        Ok(ModuleConfig { x, eps, kind, ell, psi_twist: x == CartanType::D && kind == ModuleKind::W })
    }

    pub fn with_psi(mut self, on: bool) -> Result<Self, Error> {
        if on && self.x != CartanType::D {
            return Err(Error::Config("the psi-twist is only defined for type D".into()));
        }
        self.psi_twist = on;
        Ok(self)
    }

    /// Number of tensor factors of 𝒲.
    pub fn r(&self) -> usize {
        match self.kind {
            ModuleKind::W => self.ell,
            ModuleKind::W2 => 2 * self.ell,
        }
    }

    /// Factors per block.
    pub fn block_width(&self) -> usize {
        match self.kind {
            ModuleKind::W => 1,
            ModuleKind::W2 => 2,
        }
    }

    pub fn n(&self) -> usize {
        self.eps.n()
    }

    pub fn group(&self) -> GroupSpec {
        GroupSpec::for_module(self.kind, self.ell)
    }

    /// The constant `c` with `k_{δ_j} = c·q_j^{m_j}` on one factor:
    /// `i·v` for (D, W), `v` otherwise.
    pub fn branch_const(&self) -> Scalar {
        self.branch_mono().to_scalar()
    }

    pub(crate) fn branch_mono(&self) -> Mono {
        match (self.x, self.kind) {
            (CartanType::D, ModuleKind::W) => Mono { ipow: 1, vexp: 1 },
            _ => Mono { ipow: 0, vexp: 1 },
        }
    }
}

/// Toggles the ψ-twist; it is an involution on configurations.
pub fn psi_twist(cfg: &ModuleConfig) -> Result<ModuleConfig, Error> {
    if cfg.x != CartanType::D {
        return Err(Error::Config("the psi-twist is only defined for type D".into()));
    }
    let mut out = cfg.clone();
    out.psi_twist = !cfg.psi_twist;
    Ok(out)
}

impl fmt::Display for ModuleConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X={} eps={} module={} ell={}", self.x, self.eps, self.kind, self.ell)?;
        if self.x == CartanType::D {
            write!(f, " psi={}", if self.psi_twist { "on" } else { "off" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    #[serde(rename = "type")]
    pub x: String,
    pub epsilon: String,
    pub module: String,
    pub ell: usize,
    #[serde(rename = "psiTwist")]
    pub psi_twist: bool,
}

impl From<&ModuleConfig> for ConfigEcho {
    fn from(c: &ModuleConfig) -> Self {
        ConfigEcho {
            x: c.x.to_string(),
            epsilon: c.eps.to_string(),
            module: c.kind.to_string(),
            ell: c.ell,
            psi_twist: c.psi_twist,
        }
    }
}

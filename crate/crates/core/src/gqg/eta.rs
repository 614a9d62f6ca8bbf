//! Adjointness of the generators under the polarization.

use std::fmt;

use super::action::Sym;
use super::word::{CompiledExpr, Evaluator, WordExpr};
use super::{FockModule, ModuleConfig};
use crate::combinatorics::{CartanType, ModuleKind};
use crate::fock::{state_norm, SparseVec, TensorState};
use crate::report::{Item, SuiteReport};
use crate::scalars::{q_sub, q_sub_pow, qint, Scalar};

/// The anti-involutions making the generators adjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eta {
    D,
    C,
    CPrime,
}

impl fmt::Display for Eta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eta::D => "eta_D",
            Eta::C => "eta_C",
            Eta::CPrime => "eta'_C",
        })
    }
}

impl Eta {
    /// The involution matching a module family.
    pub fn for_config(cfg: &ModuleConfig) -> Eta {
        match (cfg.x, cfg.kind) {
            (CartanType::D, _) => Eta::D,
            (CartanType::C, ModuleKind::W) => Eta::C,
            (CartanType::C, ModuleKind::W2) => Eta::CPrime,
        }
    }

    /// `η(x)` for a generator symbol.
    pub fn image(self, cfg: &ModuleConfig, x: Sym) -> WordExpr {
        let e1 = cfg.eps.at(0);
        match x {
            Sym::E(0) => {
                let c = match self {
                    Eta::D => {
                        let s = if e1 == 0 { -1 } else { 1 };
                        let p = if e1 == 0 { 1 } else { -1 };
                        &Scalar::from_int(s) * &q_sub_pow(e1, p)
                    }
                    Eta::C => {
                        let two = qint(2);
                        -&(&two * &two).inv().unwrap()
                    }
                    Eta::CPrime => -&Scalar::q_pow(2),
                };
                WordExpr::word(&[Sym::F(0), Sym::K(0)]).scale(&c)
            }
            Sym::F(0) => {
                let c = match self {
                    Eta::D => {
                        let s = if e1 == 0 { -1 } else { 1 };
                        let p = if e1 == 0 { -1 } else { 1 };
                        &Scalar::from_int(s) * &q_sub_pow(e1, p)
                    }
                    Eta::C => {
                        let two = qint(2);
                        -&(&two * &two)
                    }
                    Eta::CPrime => -&Scalar::q_pow(-2),
                };
                WordExpr::word(&[Sym::KInv(0), Sym::E(0)]).scale(&c)
            }
            Sym::E(i) => {
                let qi = q_sub(cfg.eps.at(i as usize - 1));
                WordExpr::word(&[Sym::F(i), Sym::K(i)]).scale(&qi.inv().unwrap())
            }
            Sym::F(i) => {
                let qi = q_sub(cfg.eps.at(i as usize - 1));
                WordExpr::word(&[Sym::KInv(i), Sym::E(i)]).scale(&qi)
            }
            other => WordExpr::sym(other),
        }
    }
}

/// Generators checked for adjointness.
pub fn generators(cfg: &ModuleConfig) -> Vec<Sym> {
    let n = cfg.n() as u8;
    let mut out = Vec::new();
    for i in 0..n {
        out.extend([Sym::E(i), Sym::F(i), Sym::K(i)]);
    }
    for j in 1..=n {
        out.push(Sym::KDelta(j));
    }
    out
}

/// Checks `(x·v, w) = (v, η(x)·w)` on all pairs of basis states of degree
/// `≤ max_degree`, plus nondegeneracy of the (diagonal) Gram matrix.
pub fn eta_adjoint_check(cfg: &ModuleConfig, eta: Eta, max_degree: usize) -> SuiteReport {
    let module = FockModule::new(cfg);
    let shape = &module.shape;
    let mut rep = SuiteReport::new("polarization");
    let states: Vec<TensorState> = (0..=max_degree).flat_map(|d| shape.enumerate(d, None)).collect();

    let mut gram_fail = None;
    for st in &states {
        if state_norm(shape, st).is_zero() {
            gram_fail = Some(format!("zero norm at {:?}", st.matrix(module.n())));
            break;
        }
    }
    rep.push(match gram_fail {
        None => Item::pass(format!("gram-nondegenerate(d<={max_degree})"))
            .with_values(serde_json::json!({ "states": states.len() })),
        Some(w) => Item::fail(format!("gram-nondegenerate(d<={max_degree})"), w),
    });

    for x in generators(cfg) {
        let lhs = CompiledExpr::new(&WordExpr::sym(x));
        let rhs = CompiledExpr::new(&eta.image(cfg, x));
        let mut ev = Evaluator::new(&module);
        let name = format!("adjoint({x},{eta})");
        let mut failure = None;
        'outer: for b in &states {
            let nb = state_norm(shape, b);
            let basis = SparseVec::basis(b.clone());
            // both orientations so that every pair with a nonzero side is seen
            for (fwd, back) in [(&lhs, &rhs), (&rhs, &lhs)] {
                let img = ev.eval(fwd, &basis);
                for (u, c) in img.entries() {
                    if u.degree() > max_degree {
                        continue;
                    }
                    let other = ev.eval(back, &SparseVec::basis(u.clone())).coeff(b);
                    let left = c * &state_norm(shape, u);
                    let right = &other * &nb;
                    if left != right {
                        failure = Some(format!(
                            "v={:?} w={:?}: {} vs {}",
                            b.matrix(module.n()),
                            u.matrix(module.n()),
                            left,
                            right
                        ));
                        break 'outer;
                    }
                }
            }
        }
        rep.push(match failure {
            None => Item::pass(name),
            Some(w) => Item::fail(name, w),
        });
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f0_on_vacuum_for_type_c() {
        // (f₀|0⟩, |2e₁⟩) = −(|2e₁⟩,|2e₁⟩) = −q[2]
        let cfg = ModuleConfig::new(CartanType::C, "0000".parse().unwrap(), ModuleKind::W, 1).unwrap();
        let m = FockModule::new(&cfg);
        let vac = TensorState::zero(1, 4);
        let two = TensorState::from_rows(&[vec![2, 0, 0, 0]]);
        let mut ev = Evaluator::new(&m);
        let fv = ev.eval_expr(&WordExpr::sym(Sym::F(0)), &SparseVec::basis(vac.clone()));
        let lhs = &fv.coeff(&two) * &state_norm(&m.shape, &two);
        assert_eq!(lhs, -&(&Scalar::q_pow(1) * &qint(2)));
        let img = ev.eval_expr(&Eta::C.image(&cfg, Sym::F(0)), &SparseVec::basis(two));
        assert_eq!(&img.coeff(&vac) * &state_norm(&m.shape, &vac), lhs);
    }

    #[test]
    fn small_cases_pass() {
        for (x, e, k) in [
            (CartanType::D, "1010", ModuleKind::W),
            (CartanType::D, "0101", ModuleKind::W2),
            (CartanType::C, "0110", ModuleKind::W),
            (CartanType::C, "1001", ModuleKind::W2),
        ] {
            let cfg = ModuleConfig::new(x, e.parse().unwrap(), k, 1).unwrap();
            let rep = eta_adjoint_check(&cfg, Eta::for_config(&cfg), 3);
            assert!(rep.all_passed(), "{cfg}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }
}

//! The σ-twist τ to the super presentation and specialization at v = 1.

use super::action::Sym;
use super::relations::{verify_catalog, Relation};
use super::word::{CompiledExpr, Evaluator, WordExpr};
use super::{FockModule, ModuleConfig};
use crate::combinatorics::{CartanType, Epsilon};
use crate::error::Error;
use crate::fock::{SparseVec, TensorState};
use crate::report::{Item, SuiteReport};
use crate::scalars::{GaussianRational, Rational, Scalar};

/// Images of the super generators under τ.
#[derive(Clone, Debug)]
pub struct TauImages {
    pub e: Vec<WordExpr>,
    pub f: Vec<WordExpr>,
    pub k: Vec<WordExpr>,
}

fn sigma_le(i: usize) -> Vec<Sym> {
    (1..=i).map(|j| Sym::Sigma(j as u8)).collect()
}

/// `ς_i^p = (σ_iσ_{i+1})^p`, reduced with `σ² = 1`.
fn varsigma_pow(i: usize, p: i64) -> Vec<Sym> {
    if p.rem_euclid(2) == 1 {
        vec![Sym::Sigma(i as u8), Sym::Sigma(i as u8 + 1)]
    } else {
        Vec::new()
    }
}

fn word(head: Sym, tail: &[&[Sym]]) -> WordExpr {
    let mut w = vec![head];
    for t in tail {
        w.extend_from_slice(t);
    }
    WordExpr::word(&w)
}

/// First slot (1-based) of the maximal constant-parity run containing `j`,
/// minus one; this is `i_{k−1}` for `j ∈ 𝕀^{(k)}`.
fn run_start(eps: &Epsilon, j: usize) -> usize {
    let mut s = j;
    while s > 1 && eps.at(s - 2) == eps.at(j - 1) {
        s -= 1;
    }
    s - 1
}

/// Last slot of the run containing `j`, i.e. `i_k`.
fn run_end(eps: &Epsilon, j: usize) -> usize {
    let mut s = j;
    while s < eps.n() && eps.at(s) == eps.at(j - 1) {
        s += 1;
    }
    s
}

/// τ on the generators `E_i, F_i, K_i`, following the case split on
/// `(ε_i, ε_{i+1})`; node 0 of type D copies node 1 and node 0 of type C
/// only changes the sign of `e₀` by `(−1)^{ε₁}`.
pub fn tau_images(x: CartanType, eps: &Epsilon) -> TauImages {
    let n = eps.n();
    let mut out = TauImages { e: Vec::new(), f: Vec::new(), k: Vec::new() };
    for node in 0..n {
        if node == 0 && x == CartanType::C {
            let s = if eps.at(0) == 0 { 1 } else { -1 };
            out.e.push(WordExpr::sym(Sym::E(0)).scale(&Scalar::from_int(s)));
            out.f.push(WordExpr::sym(Sym::F(0)));
            out.k.push(WordExpr::sym(Sym::K(0)));
            continue;
        }
        let i = node.max(1);
        let (ge, gf, gk) = (Sym::E(node as u8), Sym::F(node as u8), Sym::K(node as u8));
        let vs = varsigma_pow(i, 1);
        let (e, f, k) = match (eps.at(i - 1), eps.at(i)) {
            (0, 0) => (WordExpr::sym(ge), WordExpr::sym(gf), WordExpr::sym(gk)),
            (0, 1) => {
                let s = sigma_le(i);
                (word(ge, &[&s]), word(gf, &[&s, &vs]), word(gk, &[&vs]))
            }
            (1, 1) => {
                let p = (i - run_start(eps, i)) as i64;
                let e = word(ge, &[&varsigma_pow(i, p)]);
                let f = word(gf, &[&varsigma_pow(i, p - 1)]).scale(&Scalar::from_int(-1));
                (e, f, word(gk, &[&vs]))
            }
            _ => {
                let ik = run_end(eps, i);
                let p = (ik - run_start(eps, i)) as i64;
                let s = sigma_le(i);
                let sign = if p % 2 == 0 { 1 } else { -1 };
                let e = word(ge, &[&s, &varsigma_pow(i, p)]);
                let f = word(gf, &[&s, &varsigma_pow(i, p - 1)]).scale(&Scalar::from_int(sign));
                (e, f, word(gk, &[&vs]))
            }
        };
        out.e.push(e);
        out.f.push(f);
        out.k.push(k);
    }
    out
}

/// `σ_j² = 1` and `σ_j e_i σ_j = (−1)^{ε_j (δ_j|α_i)} e_i` (same for `f_i`).
pub fn sigma_catalog(x: CartanType, eps: &Epsilon) -> Vec<Relation> {
    let n = eps.n();
    let mut out = Vec::new();
    for j in 1..=n {
        let s = Sym::Sigma(j as u8);
        out.push(Relation { name: format!("sigma-square({j})"), expr: &WordExpr::word(&[s, s]) - &WordExpr::one() });
        for i in 0..n {
            let root = eps.simple_root(x, i);
            let odd = eps.at(j - 1) == 1 && root[j - 1].rem_euclid(2) == 1;
            let c = Scalar::from_int(if odd { -1 } else { 1 });
            for g in [Sym::E(i as u8), Sym::F(i as u8)] {
                let expr = &WordExpr::word(&[s, g, s]) - &WordExpr::sym(g).scale(&c);
                out.push(Relation { name: format!("sigma-conj({j},{g})"), expr });
            }
        }
    }
    out
}

fn is_half_integer(r: &Rational) -> bool {
    (r + r).is_integer()
}

fn eval_vec(v: &SparseVec) -> Result<Vec<(TensorState, GaussianRational)>, (TensorState, Error)> {
    let mut out = Vec::new();
    for (st, c) in v.entries() {
        match c.eval_at_one() {
            Ok(g) if g.is_zero() => {}
            Ok(g) => out.push((st.clone(), g)),
            Err(e) => return Err((st.clone(), e)),
        }
    }
    Ok(out)
}

/// Checks regularity at `v = 1` of the τ-images, the shape of the limit
/// Cartan elements `H_i`, and the super-commutator relations, on all basis
/// states of degree `≤ max_degree` (composites only where every
/// intermediate stays within the cutoff).
pub fn classical_limit_check(cfg: &ModuleConfig, max_degree: usize) -> Result<SuiteReport, Error> {
    check_limit(cfg, &tau_images(cfg.x, &cfg.eps), max_degree)
}

/// [`classical_limit_check`] for arbitrary candidate images of `E_i, F_i, K_i`.
pub fn check_limit(cfg: &ModuleConfig, tau: &TauImages, max_degree: usize) -> Result<SuiteReport, Error> {
    let module = FockModule::new(cfg);
    let n = module.n();
    let mut rep = verify_catalog(cfg, &sigma_catalog(cfg.x, &cfg.eps), max_degree)?;
    rep.suite = "classical-limit".into();
    let states: Vec<TensorState> = (0..=max_degree).flat_map(|d| module.shape.enumerate(d, None)).collect();
    let mut ev = Evaluator::new(&module);
    let fmt_state = |st: &TensorState| format!("{:?}", st.matrix(n));

    // (a) regularity
    for (label, list) in [("E", &tau.e), ("F", &tau.f), ("K", &tau.k)] {
        for (i, expr) in list.iter().enumerate() {
            let c = CompiledExpr::new(expr);
            let mut bad = None;
            for st in &states {
                let img = ev.eval(&c, &SparseVec::basis(st.clone()));
                if let Err((to, e)) = eval_vec(&img) {
                    bad = Some(format!("{e}: entry ({}, {})", fmt_state(&to), fmt_state(st)));
                    break;
                }
            }
            let name = format!("regular({label}{i})");
            rep.push(match bad {
                None => Item::pass(name),
                Some(w) => Item::fail(name, w),
            });
        }
    }

    // (b) H_i = (K_i − K_i⁻¹)/(q_* − q_*⁻¹) at v = 1
    let mut h: Vec<Option<Vec<GaussianRational>>> = Vec::new();
    for i in 0..n {
        let t = if i == 0 && cfg.x == CartanType::C { 2 } else { 1 };
        let den = (&Scalar::q_pow(t) - &Scalar::q_pow(-t)).inv()?;
        let kexpr = CompiledExpr::new(&tau.k[i]);
        let mut vals = Vec::with_capacity(states.len());
        let mut bad = None;
        for st in &states {
            let kv = ev.eval(&kexpr, &SparseVec::basis(st.clone()));
            if kv.len() != 1 || kv.entries()[0].0 != *st {
                bad = Some(format!("K{i} not diagonal at {}", fmt_state(st)));
                break;
            }
            let kk = &kv.entries()[0].1;
            let hq = &(kk - &kk.inv()?) * &den;
            match hq.eval_at_one() {
                Ok(g) if g.im.is_zero() && is_half_integer(&g.re) => vals.push(g),
                Ok(g) => {
                    bad = Some(format!("H{i} = {g} at {} is not a half-integer", fmt_state(st)));
                    break;
                }
                Err(e) => {
                    bad = Some(format!("H{i}: {e} at {}", fmt_state(st)));
                    break;
                }
            }
        }
        let name = format!("cartan-limit(H{i})");
        match bad {
            None => {
                rep.push(Item::pass(name));
                h.push(Some(vals));
            }
            Some(w) => {
                rep.push(Item::fail(name, w));
                h.push(None);
            }
        }
    }

    // (c) E_iF_j − (−1)^{p(i)p(j)} F_jE_i = (−1)^{ε_i} δ_ij H_i, and E_i² = F_i² = 0 at odd nodes
    let parity: Vec<bool> = (0..n).map(|i| cfg.eps.node_is_odd(cfg.x, i)).collect();
    for i in 0..n {
        for j in 0..n {
            let sign = if parity[i] && parity[j] { -1 } else { 1 };
            let expr = &(&tau.e[i] * &tau.f[j]) - &(&tau.f[j] * &tau.e[i]).scale(&Scalar::from_int(sign));
            let rise = expr.max_degree_rise().max(0) as usize;
            let name = format!("super-commutator(E{i},F{j})");
            if rise > max_degree {
                rep.push(Item::skip(name, "cutoff below the degree rise"));
                continue;
            }
            let c = CompiledExpr::new(&expr);
            let eps_i = cfg.eps.at(i.max(1) - 1);
            let mut bad = None;
            for (k, st) in states.iter().enumerate() {
                if st.degree() + rise > max_degree {
                    continue;
                }
                let img = ev.eval(&c, &SparseVec::basis(st.clone()));
                let vals = match eval_vec(&img) {
                    Ok(v) => v,
                    Err((to, e)) => {
                        bad = Some(format!("{e} at ({}, {})", fmt_state(&to), fmt_state(st)));
                        break;
                    }
                };
                let mut want = GaussianRational::zero();
                if i == j {
                    match &h[i] {
                        Some(hv) => {
                            want = if eps_i == 0 { hv[k].clone() } else { -&hv[k] };
                        }
                        None => {
                            bad = Some(format!("H{i} unavailable"));
                            break;
                        }
                    }
                }
                let ok = match vals.as_slice() {
                    [] => want.is_zero(),
                    [(to, g)] => to == st && *g == want,
                    _ => false,
                };
                if !ok {
                    bad = Some(format!(
                        "input {}: limit {:?}, expected {} on the diagonal",
                        fmt_state(st),
                        vals.iter().map(|(s, g)| (s.matrix(n), g.to_string())).collect::<Vec<_>>(),
                        want
                    ));
                    break;
                }
            }
            rep.push(match bad {
                None => Item::pass(name),
                Some(w) => Item::fail(name, w),
            });
        }
        if parity[i] {
            for (label, g) in [("E", &tau.e[i]), ("F", &tau.f[i])] {
                let expr = g * g;
                let rise = expr.max_degree_rise().max(0) as usize;
                let c = CompiledExpr::new(&expr);
                let mut bad = None;
                for st in states.iter().filter(|s| s.degree() + rise <= max_degree) {
                    let img = ev.eval(&c, &SparseVec::basis(st.clone()));
                    if !img.is_zero() {
                        bad = Some(format!("nonzero at {}", fmt_state(st)));
                        break;
                    }
                }
                let name = format!("odd-square-limit({label}{i})");
                rep.push(match bad {
                    None => Item::pass(name),
                    Some(w) => Item::fail(name, w),
                });
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::ModuleKind;

    #[test]
    fn homogeneous_even_tau_is_identity() {
        let t = tau_images(CartanType::D, &"0000".parse().unwrap());
        for i in 1..4 {
            assert_eq!(t.e[i], WordExpr::sym(Sym::E(i as u8)));
            assert_eq!(t.f[i], WordExpr::sym(Sym::F(i as u8)));
        }
    }

    #[test]
    fn runs() {
        let eps: Epsilon = "0110".parse().unwrap();
        assert_eq!(run_start(&eps, 2), 1);
        assert_eq!(run_start(&eps, 3), 1);
        assert_eq!(run_end(&eps, 2), 3);
        assert_eq!(run_start(&eps, 1), 0);
        assert_eq!(run_end(&eps, 4), 4);
    }

    #[test]
    fn spin_module_limit() {
        let cfg = ModuleConfig::new(CartanType::D, "1111".parse().unwrap(), ModuleKind::W, 1).unwrap();
        let rep = classical_limit_check(&cfg, 4).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn wrong_sign_on_e0_is_caught() {
        let cfg = ModuleConfig::new(CartanType::C, "1111".parse().unwrap(), ModuleKind::W2, 1).unwrap();
        let mut tau = tau_images(cfg.x, &cfg.eps);
        tau.e[0] = WordExpr::sym(Sym::E(0));
        let rep = check_limit(&cfg, &tau, 4).unwrap();
        assert!(rep.failures().any(|f| f.name == "super-commutator(E0,F0)"));
    }
}

//! Noncommutative polynomials in the generator symbols and their exact
//! evaluation on sparse vectors.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use super::action::{FockModule, Sym};
use crate::fock::{SparseVec, TensorState};
use crate::scalars::Scalar;

/// `Σ c · s₁s₂⋯s_k`; the rightmost symbol acts first.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WordExpr {
    terms: Vec<(Scalar, Vec<Sym>)>,
}

impl WordExpr {
    pub fn zero() -> Self {
        WordExpr { terms: Vec::new() }
    }

    pub fn one() -> Self {
        WordExpr::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut w = WordExpr::zero();
        if !c.is_zero() {
            w.terms.push((c, Vec::new()));
        }
        w
    }

    pub fn sym(s: Sym) -> Self {
        WordExpr::word(&[s])
    }

    pub fn word(ws: &[Sym]) -> Self {
        WordExpr { terms: vec![(Scalar::one(), ws.to_vec())] }
    }

    pub fn terms(&self) -> &[(Scalar, Vec<Sym>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Merges equal words and drops zero coefficients.
    fn normalize(mut self) -> Self {
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut out: Vec<(Scalar, Vec<Sym>)> = Vec::with_capacity(self.terms.len());
        for (c, w) in self.terms {
            match out.last_mut() {
                Some(last) if last.1 == w => last.0 = &last.0 + &c,
                _ => out.push((c, w)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        WordExpr { terms: out }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        WordExpr { terms: self.terms.iter().map(|(a, w)| (a * c, w.clone())).collect() }.normalize()
    }

    /// `[a, b]_t = ab − t·ba`.
    pub fn bracket(a: &WordExpr, b: &WordExpr, t: &Scalar) -> WordExpr {
        &(a * b) - &(b * a).scale(t)
    }

    /// Maps every symbol through `f`, which returns a replacement expression.
    pub fn substitute(&self, f: &dyn Fn(Sym) -> WordExpr) -> WordExpr {
        let mut acc = WordExpr::zero();
        for (c, w) in &self.terms {
            let mut prod = WordExpr::scalar(c.clone());
            for &s in w {
                prod = &prod * &f(s);
            }
            acc = &acc + &prod;
        }
        acc
    }

    pub fn map_coeffs(&self, f: &dyn Fn(&Scalar) -> Scalar) -> WordExpr {
        WordExpr { terms: self.terms.iter().map(|(c, w)| (f(c), w.clone())).collect() }.normalize()
    }

    /// Largest degree reached while applying the expression to a vector of
    /// degree 0, over all words and all intermediate steps.
    pub fn max_degree_rise(&self) -> i64 {
        self.terms
            .iter()
            .map(|(_, w)| {
                let mut cur = 0i64;
                let mut best = 0i64;
                for s in w.iter().rev() {
                    cur += s.degree_shift();
                    best = best.max(cur);
                }
                best
            })
            .max()
            .unwrap_or(0)
    }

    /// Net degree shift, if every word agrees.
    pub fn net_degree_shift(&self) -> Option<i64> {
        let mut shifts = self.terms.iter().map(|(_, w)| w.iter().map(|s| s.degree_shift()).sum::<i64>());
        let first = shifts.next().unwrap_or(0);
        shifts.all(|s| s == first).then_some(first)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> + '_ {
        self.terms.iter().flat_map(|(_, w)| w.iter().copied())
    }
}

impl Add for &WordExpr {
    type Output = WordExpr;
    fn add(self, rhs: &WordExpr) -> WordExpr {
        let mut t = self.terms.clone();
        t.extend(rhs.terms.iter().cloned());
        WordExpr { terms: t }.normalize()
    }
}

impl Sub for &WordExpr {
    type Output = WordExpr;
    fn sub(self, rhs: &WordExpr) -> WordExpr {
        self + &(-rhs)
    }
}

impl Neg for &WordExpr {
    type Output = WordExpr;
    fn neg(self) -> WordExpr {
        WordExpr { terms: self.terms.iter().map(|(c, w)| (-c, w.clone())).collect() }
    }
}

impl Mul for &WordExpr {
    type Output = WordExpr;
    fn mul(self, rhs: &WordExpr) -> WordExpr {
        let mut t = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, u) in &self.terms {
            for (b, w) in &rhs.terms {
                let mut uw = u.clone();
                uw.extend_from_slice(w);
                t.push((a * b, uw));
            }
        }
        WordExpr { terms: t }.normalize()
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, w)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for s in w {
                write!(f, "·{s}")?;
            }
        }
        Ok(())
    }
}

/// A set of words stored as a trie on reversed words, so shared suffixes
/// are applied once.
#[derive(Debug, Default)]
struct TrieNode {
    coeff: Option<Scalar>,
    children: Vec<(Sym, TrieNode)>,
}

#[derive(Debug)]
pub struct CompiledExpr {
    root: TrieNode,
}

impl CompiledExpr {
    pub fn new(expr: &WordExpr) -> Self {
        let mut root = TrieNode::default();
        for (c, w) in expr.terms() {
            let mut node = &mut root;
            for &s in w.iter().rev() {
                let idx = match node.children.iter().position(|(t, _)| *t == s) {
                    Some(i) => i,
                    None => {
                        node.children.push((s, TrieNode::default()));
                        node.children.len() - 1
                    }
                };
                node = &mut node.children[idx].1;
            }
            node.coeff = Some(match node.coeff.take() {
                Some(old) => &old + c,
                None => c.clone(),
            });
        }
        CompiledExpr { root }
    }
}

type Row = Rc<[(TensorState, Scalar)]>;

/// Applies generators with a per-evaluator cache of their matrix columns.
pub struct Evaluator<'a> {
    module: &'a FockModule,
    cache: HashMap<(Sym, TensorState), Row>,
}

impl<'a> Evaluator<'a> {
    pub fn new(module: &'a FockModule) -> Self {
        Evaluator { module, cache: HashMap::new() }
    }

    pub fn module(&self) -> &FockModule {
        self.module
    }

    fn column(&mut self, sym: Sym, st: &TensorState) -> Row {
        if let Some(r) = self.cache.get(&(sym, st.clone())) {
            return r.clone();
        }
        let r: Row = self.module.apply(sym, st).into_iter().collect::<Vec<_>>().into();
        self.cache.insert((sym, st.clone()), r.clone());
        r
    }

    pub fn apply_sym(&mut self, sym: Sym, v: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (st, c) in v.entries() {
            if sym.is_diagonal() {
                let e = self.module.eigen(sym, st).to_scalar();
                terms.push((st.clone(), c * &e));
                continue;
            }
            for (s2, a) in self.column(sym, st).iter() {
                terms.push((s2.clone(), c * a));
            }
        }
        SparseVec::from_terms(terms)
    }

    pub fn eval(&mut self, expr: &CompiledExpr, v: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        self.walk(&expr.root, v, &mut acc);
        SparseVec::from_terms(acc)
    }

    pub fn eval_expr(&mut self, expr: &WordExpr, v: &SparseVec) -> SparseVec {
        self.eval(&CompiledExpr::new(expr), v)
    }

    fn walk(&mut self, node: &TrieNode, v: &SparseVec, acc: &mut Vec<(TensorState, Scalar)>) {
        if v.is_zero() {
            return;
        }
        if let Some(c) = &node.coeff {
            for (st, a) in v.entries() {
                acc.push((st.clone(), a * c));
            }
        }
        for (s, child) in &node.children {
            let w = self.apply_sym(*s, v);
            self.walk(child, &w, acc);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{CartanType, ModuleKind};
    use crate::gqg::ModuleConfig;

    #[test]
    fn algebra_of_words() {
        let e = WordExpr::sym(Sym::E(1));
        let f = WordExpr::sym(Sym::F(1));
        let comm = WordExpr::bracket(&e, &f, &Scalar::one());
        assert_eq!(comm.terms().len(), 2);
        assert!((&comm - &comm).is_zero());
        let sq = &e * &e;
        assert_eq!(sq.terms()[0].1, vec![Sym::E(1), Sym::E(1)]);
        let f0 = WordExpr::word(&[Sym::E(0), Sym::F(0), Sym::F(0)]);
        assert_eq!(f0.max_degree_rise(), 4);
        assert_eq!(f0.net_degree_shift(), Some(2));
    }

    #[test]
    fn trie_matches_direct_application() {
        let cfg = ModuleConfig::new(CartanType::C, "0101".parse().unwrap(), ModuleKind::W, 2).unwrap();
        let m = FockModule::new(&cfg);
        let mut ev = Evaluator::new(&m);
        let expr = &(&WordExpr::word(&[Sym::E(1), Sym::F(0), Sym::F(1)]) + &WordExpr::word(&[Sym::E(2), Sym::F(1)]))
            - &WordExpr::word(&[Sym::K(1), Sym::F(1)]);
        let st = TensorState::from_rows(&[vec![1, 0, 2, 0], vec![0, 1, 0, 0]]);
        let v = SparseVec::basis(st);
        let got = ev.eval_expr(&expr, &v);
        let mut want = SparseVec::zero();
        for (c, w) in expr.terms() {
            let mut x = v.clone();
            for &s in w.iter().rev() {
                x = ev.apply_sym(s, &x);
            }
            want = want.add(&x.scale(c));
        }
        assert_eq!(got, want);
        assert!(!got.is_zero());
    }
}

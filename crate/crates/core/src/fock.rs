//! Basis states of the tensor power 𝒲^{⊗r}, graded slices, sparse vectors
//! and the polarization form.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use smallvec::SmallVec;

use crate::combinatorics::{Epsilon, Weight};
use crate::error::Error;
use crate::scalars::{q_factorial, LaurentPoly, Scalar};

/// Occupation matrix of an `r × n` tensor state, stored row-major: row `s`
/// is the occupation vector of tensor factor `s`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TensorState(pub SmallVec<[u8; 32]>);

impl TensorState {
    pub fn zero(r: usize, n: usize) -> Self {
        TensorState(SmallVec::from_elem(0, r * n))
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        TensorState(rows.iter().flatten().copied().collect())
    }

    pub fn occ(&self) -> &[u8] {
        &self.0
    }

    #[inline]
    pub fn get(&self, n: usize, s: usize, t: usize) -> u8 {
        self.0[s * n + t]
    }

    #[inline]
    pub fn set(&mut self, n: usize, s: usize, t: usize, v: u8) {
        self.0[s * n + t] = v;
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn row(&self, n: usize, s: usize) -> &[u8] {
        &self.0[s * n..(s + 1) * n]
    }

    /// Column totals `M_t = Σ_s m_{st}`.
    pub fn column_sums(&self, n: usize) -> Vec<i64> {
        let mut out = vec![0i64; n];
        for (k, &x) in self.0.iter().enumerate() {
            out[k % n] += x as i64;
        }
        out
    }

    /// Row totals (degrees of the tensor factors).
    pub fn row_sums(&self, n: usize) -> Vec<i64> {
        self.0.chunks(n).map(|c| c.iter().map(|&x| x as i64).sum()).collect()
    }

    /// The occupation matrix as nested rows.
    pub fn matrix(&self, n: usize) -> Vec<Vec<u8>> {
        self.0.chunks(n).map(|c| c.to_vec()).collect()
    }

    /// The `n × r` transpose: row `t` lists slot `t` across all factors.
    pub fn transpose_view(&self, n: usize) -> Vec<Vec<u8>> {
        let r = self.0.len() / n;
        (0..n).map(|t| (0..r).map(|s| self.get(n, s, t)).collect()).collect()
    }

    /// Inverse of [`TensorState::transpose_view`].
    pub fn from_transpose(cols: &[Vec<u8>]) -> Self {
        let n = cols.len();
        let r = cols.first().map_or(0, |c| c.len());
        let mut st = TensorState::zero(r, n);
        for (t, col) in cols.iter().enumerate() {
            for (s, &x) in col.iter().enumerate() {
                st.set(n, s, t, x);
            }
        }
        st
    }
}

impl fmt::Debug for TensorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Shape of 𝒲^{⊗r}: parity sequence and number of tensor factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FockShape {
    pub eps: Epsilon,
    pub r: usize,
}

impl FockShape {
    pub fn new(eps: Epsilon, r: usize) -> Self {
        assert!(r >= 1, "need at least one tensor factor");
        FockShape { eps, r }
    }

    pub fn n(&self) -> usize {
        self.eps.n()
    }

    pub fn is_valid(&self, st: &TensorState) -> bool {
        let n = self.n();
        st.0.len() == self.r * n
            && st.0.iter().enumerate().all(|(k, &x)| self.eps.at(k % n) == 0 || x <= 1)
    }

    /// `½Λ` per tensor factor plus the column totals.
    pub fn state_weight(&self, st: &TensorState) -> Weight {
        Weight::new(self.r as i64, st.column_sums(self.n()))
    }

    /// Number of states of degree `d`: the coefficient of `t^d` in
    /// `((1+t)^{n1}/(1−t)^{n0})^r`.
    pub fn slice_count(&self, d: usize) -> u128 {
        let cells0 = self.eps.n0() * self.r;
        let cells1 = self.eps.n1() * self.r;
        // (1+t)^{cells1} · (1−t)^{−cells0}
        let binom = |n: u128, k: u128| -> u128 {
            if k > n {
                return 0;
            }
            (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
        };
        (0..=d.min(cells1))
            .map(|k| {
                let rest = (d - k) as u128;
                let multiset = if cells0 == 0 {
                    u128::from(rest == 0)
                } else {
                    binom(cells0 as u128 + rest - 1, rest)
                };
                binom(cells1 as u128, k as u128) * multiset
            })
            .sum()
    }

    /// All states of degree `d` (and weight `w`, if given), in increasing
    /// lexicographic order of the flattened occupation matrix.
    pub fn enumerate(&self, d: usize, w: Option<&Weight>) -> Vec<TensorState> {
        let n = self.n();
        let cells = self.r * n;
        let caps: Vec<u8> = (0..cells).map(|k| if self.eps.at(k % n) == 1 { 1 } else { u8::MAX }).collect();
        let mut out = Vec::new();
        match w {
            None => {
                let mut cur = TensorState::zero(self.r, n);
                fill_free(&caps, 0, d, &mut cur, &mut out);
            }
            Some(w) => {
                if w.s != self.r as i64 || w.m.len() != n || w.m.iter().any(|&x| x < 0) {
                    return out;
                }
                if w.m.iter().sum::<i64>() != d as i64 {
                    return out;
                }
                let mut cur = TensorState::zero(self.r, n);
                fill_by_column(self, &w.m, 0, 0, w.m.first().copied().unwrap_or(0), &mut cur, &mut out);
                out.sort();
            }
        }
        out
    }
}

fn fill_free(caps: &[u8], k: usize, rem: usize, cur: &mut TensorState, out: &mut Vec<TensorState>) {
    if k == caps.len() {
        if rem == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if k + 1 == caps.len() {
        if rem <= caps[k] as usize {
            cur.0[k] = rem as u8;
            out.push(cur.clone());
            cur.0[k] = 0;
        }
        return;
    }
    let top = rem.min(caps[k] as usize);
    for x in 0..=top {
        cur.0[k] = x as u8;
        fill_free(caps, k + 1, rem - x, cur, out);
    }
    cur.0[k] = 0;
}

/// Distributes each column total over the rows; `rem` is what is left of
/// column `t` when reaching row `s`.
fn fill_by_column(
    shape: &FockShape,
    m: &[i64],
    t: usize,
    s: usize,
    rem: i64,
    cur: &mut TensorState,
    out: &mut Vec<TensorState>,
) {
    let n = shape.n();
    if t == n {
        out.push(cur.clone());
        return;
    }
    let cap = if shape.eps.at(t) == 1 { 1 } else { i64::MAX };
    if s + 1 == shape.r {
        if rem <= cap {
            cur.set(n, s, t, rem as u8);
            let next = m.get(t + 1).copied().unwrap_or(0);
            fill_by_column(shape, m, t + 1, 0, next, cur, out);
            cur.set(n, s, t, 0);
        }
        return;
    }
    for x in 0..=rem.min(cap) {
        cur.set(n, s, t, x as u8);
        fill_by_column(shape, m, t, s + 1, rem - x, cur, out);
    }
    cur.set(n, s, t, 0);
}

/// A graded piece of 𝒲^{⊗r} with its basis and position index.
#[derive(Debug)]
pub struct Slice {
    pub degree: usize,
    pub weight: Option<Weight>,
    pub states: Vec<TensorState>,
    index: HashMap<TensorState, usize>,
}

impl Slice {
    pub fn new(shape: &FockShape, degree: usize, weight: Option<Weight>) -> Self {
        let states = shape.enumerate(degree, weight.as_ref());
        let index = states.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        Slice { degree, weight, states, index }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn position(&self, st: &TensorState) -> Option<usize> {
        self.index.get(st).copied()
    }
}

type SliceKey = (usize, Option<Weight>);

/// Concurrent slice cache; when two threads build the same slice the first
/// insertion wins and both callers get that instance.
#[derive(Debug, Default)]
pub struct SliceCache {
    map: RwLock<HashMap<SliceKey, Arc<Slice>>>,
}

impl SliceCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, shape: &FockShape, degree: usize, weight: Option<&Weight>) -> Arc<Slice> {
        let key = (degree, weight.cloned());
        if let Some(s) = self.map.read().expect("slice cache poisoned").get(&key) {
            return Arc::clone(s);
        }
        let built = Arc::new(Slice::new(shape, degree, weight.cloned()));
        let mut map = self.map.write().expect("slice cache poisoned");
        Arc::clone(map.entry(key).or_insert(built))
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("slice cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Sparse vector: sorted by state, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(TensorState, Scalar)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn basis(st: TensorState) -> Self {
        SparseVec { entries: vec![(st, Scalar::one())] }
    }

    /// Sorts and merges arbitrary terms.
    pub fn from_terms(mut terms: Vec<(TensorState, Scalar)>) -> Self {
        if terms.len() > 1 {
            terms.sort_by(|a, b| a.0.cmp(&b.0));
        }
        let mut entries: Vec<(TensorState, Scalar)> = Vec::with_capacity(terms.len());
        for (st, c) in terms {
            match entries.last_mut() {
                Some((ls, lc)) if *ls == st => *lc = &*lc + &c,
                _ => entries.push((st, c)),
            }
        }
        entries.retain(|e| !e.1.is_zero());
        SparseVec { entries }
    }

    pub fn entries(&self) -> &[(TensorState, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(TensorState, Scalar)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coeff(&self, st: &TensorState) -> Scalar {
        match self.entries.binary_search_by(|e| e.0.cmp(st)) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(s, x)| (s.clone(), x * c)).collect() }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        let mut terms = self.entries.clone();
        terms.extend(other.entries.iter().cloned());
        Self::from_terms(terms)
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(s, c)| (s, c.to_string()))).finish()
    }
}

/// `(|m⟩, |m⟩)` for a single factor: `q^{Σ m_i(m_i−1)/2} ∏ [m_i]!`.
pub fn factor_norm(m: &[u8]) -> Scalar {
    let mut poly = LaurentPoly::one();
    let mut e = 0i32;
    for &x in m {
        let x = x as i32;
        e += x * (x - 1) / 2;
        if x > 1 {
            poly = &poly * &q_factorial(x as u32);
        }
    }
    Scalar::from_poly(poly.shift(2 * e))
}

/// Norm of a basis state; the form is diagonal and multiplicative over
/// factors.
pub fn state_norm(shape: &FockShape, st: &TensorState) -> Scalar {
    let n = shape.n();
    (0..shape.r).fold(Scalar::one(), |acc, s| &acc * &factor_norm(st.row(n, s)))
}

pub fn pairing(shape: &FockShape, u: &SparseVec, w: &SparseVec) -> Result<Scalar, Error> {
    let mut acc = Scalar::zero();
    for (st, c) in u.entries() {
        if !shape.is_valid(st) {
            return Err(Error::InvalidArgument(format!("state {st:?} does not belong to the configuration")));
        }
        let d = w.coeff(st);
        if !d.is_zero() {
            acc = &acc + &(&(c * &d) * &state_norm(shape, st));
        }
    }
    for (st, _) in w.entries() {
        if !shape.is_valid(st) {
            return Err(Error::InvalidArgument(format!("state {st:?} does not belong to the configuration")));
        }
    }
    Ok(acc)
}

/// Diagonal of the Gram matrix on a slice.
pub fn gram_diagonal(shape: &FockShape, slice: &Slice) -> Vec<Scalar> {
    slice.states.iter().map(|s| state_norm(shape, s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(e: &str, r: usize) -> FockShape {
        FockShape::new(e.parse().unwrap(), r)
    }

    #[test]
    fn slice_examples() {
        let sh = shape("0011", 1);
        assert_eq!(sh.enumerate(0, None), vec![TensorState::zero(1, 4)]);
        assert_eq!(sh.enumerate(2, None).len(), 8);
        assert_eq!(shape("1111", 2).enumerate(1, None).len(), 8);
    }

    #[test]
    fn slices_are_sorted_and_valid() {
        let sh = shape("0110", 2);
        let states = sh.enumerate(3, None);
        assert!(states.windows(2).all(|w| w[0] < w[1]));
        assert!(states.iter().all(|s| sh.is_valid(s) && s.degree() == 3));
        assert_eq!(states.len() as u128, sh.slice_count(3));
    }

    #[test]
    fn weight_filter_matches_post_filter() {
        let sh = shape("0101", 2);
        for d in 0..5 {
            let all = sh.enumerate(d, None);
            let mut weights: Vec<Weight> = all.iter().map(|s| sh.state_weight(s)).collect();
            weights.sort();
            weights.dedup();
            for w in weights {
                let filtered: Vec<_> = all.iter().filter(|s| sh.state_weight(s) == w).cloned().collect();
                assert_eq!(sh.enumerate(d, Some(&w)), filtered);
            }
        }
    }

    #[test]
    fn weights() {
        let sh = shape("0000", 2);
        assert_eq!(sh.state_weight(&TensorState::zero(2, 4)), Weight::new(2, vec![0; 4]));
        let one = shape("1111", 1);
        let st = TensorState::from_rows(&[vec![1, 1, 0, 0]]);
        assert_eq!(one.state_weight(&st), Weight::new(1, vec![1, 1, 0, 0]));
        let st = TensorState::from_rows(&[vec![1, 0, 0, 0], vec![1, 0, 0, 0]]);
        assert_eq!(sh.state_weight(&st), Weight::new(2, vec![2, 0, 0, 0]));
    }

    #[test]
    fn transpose() {
        let st = TensorState::from_rows(&[vec![0, 1, 0, 0], vec![1, 0, 0, 0]]);
        assert_eq!(st.matrix(4), vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0]]);
        let t = st.transpose_view(4);
        assert_eq!(t, vec![vec![0, 1], vec![1, 0], vec![0, 0], vec![0, 0]]);
        assert_eq!(TensorState::from_transpose(&t), st);
    }

    #[test]
    fn norms() {
        let sh = shape("0011", 1);
        let vac = SparseVec::basis(TensorState::zero(1, 4));
        assert!(pairing(&sh, &vac, &vac).unwrap().is_one());
        let two = SparseVec::basis(TensorState::from_rows(&[vec![2, 0, 0, 0]]));
        let expected = &Scalar::q_pow(2) + &Scalar::one();
        assert_eq!(pairing(&sh, &two, &two).unwrap(), expected);
        let a = SparseVec::basis(TensorState::from_rows(&[vec![1, 0, 0, 0]]));
        let b = SparseVec::basis(TensorState::from_rows(&[vec![0, 1, 0, 0]]));
        assert!(pairing(&sh, &a, &b).unwrap().is_zero());
        let bad = SparseVec::basis(TensorState::from_rows(&[vec![0, 0, 2, 0]]));
        assert!(pairing(&sh, &bad, &bad).is_err());
    }

    #[test]
    fn sparse_vec_merges_and_drops_zeros() {
        let a = TensorState::from_rows(&[vec![1, 0, 0, 0]]);
        let b = TensorState::from_rows(&[vec![0, 1, 0, 0]]);
        let v = SparseVec::from_terms(vec![
            (b.clone(), Scalar::one()),
            (a.clone(), Scalar::from_int(2)),
            (b.clone(), Scalar::from_int(-1)),
        ]);
        assert_eq!(v.entries(), &[(a, Scalar::from_int(2))]);
        assert!(v.sub(&v).is_zero());
    }

    #[test]
    fn cache_returns_shared_instance() {
        let sh = shape("0110", 2);
        let cache = SliceCache::new();
        let a = cache.get(&sh, 2, None);
        let b = cache.get(&sh, 2, None);
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
    }
}

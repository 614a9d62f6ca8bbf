//! Exact sparse Gaussian elimination over ℚ(i)(v).

use std::collections::BTreeMap;

use crate::scalars::Scalar;

pub type SparseRow = BTreeMap<usize, Scalar>;

/// Reduced row echelon form of a sparse matrix with `ncols` columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ncols: usize,
    /// `(pivot column, row)`, sorted by pivot column; each row has a 1 at
    /// its pivot and zeros at every other pivot column.
    pub rows: Vec<(usize, SparseRow)>,
}

fn axpy(dst: &mut SparseRow, c: &Scalar, src: &SparseRow) {
    for (&k, x) in src {
        let add = c * x;
        let v = dst.entry(k).or_insert_with(Scalar::zero);
        *v = &*v + &add;
        if v.is_zero() {
            dst.remove(&k);
        }
    }
}

/// Columns are processed left to right; at each column the pivot is the
/// candidate entry with the fewest stored terms, ties broken by row order.
pub fn rref(ncols: usize, rows: Vec<SparseRow>) -> Rref {
    let mut pending: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut done: Vec<(usize, SparseRow)> = Vec::new();
    for col in 0..ncols {
        let best = pending
            .iter()
            .enumerate()
            .filter_map(|(k, r)| r.get(&col).map(|x| (x.term_count(), k)))
            .min();
        let Some((_, k)) = best else { continue };
        let mut piv = pending.swap_remove(k);
        let inv = piv[&col].inv().expect("pivot is nonzero");
        for x in piv.values_mut() {
            *x = &*x * &inv;
        }
        for r in pending.iter_mut().chain(done.iter_mut().map(|(_, r)| r)) {
            if let Some(c) = r.get(&col).cloned() {
                axpy(r, &-&c, &piv);
            }
        }
        pending.retain(|r| !r.is_empty());
        done.push((col, piv));
    }
    Rref { ncols, rows: done }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let piv: Vec<usize> = self.rows.iter().map(|(c, _)| *c).collect();
        (0..self.ncols).filter(|c| !piv.contains(c)).collect()
    }

    /// Kernel basis, one vector per free column `f`, equal to 1 at `f` and 0
    /// at every other free column.
    pub fn kernel(&self) -> Vec<SparseRow> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = SparseRow::new();
                v.insert(f, Scalar::one());
                for (p, row) in &self.rows {
                    if let Some(x) = row.get(&f) {
                        v.insert(*p, -x);
                    }
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, Scalar)]) -> SparseRow {
        entries.iter().cloned().collect()
    }

    #[test]
    fn kernel_of_small_matrix() {
        // [[1, q, 0], [0, 0, 1], [2, 2q, 1]] has kernel spanned by (−q, 1, 0)
        let q = Scalar::q_pow(1);
        let m = vec![
            row(&[(0, Scalar::one()), (1, q.clone())]),
            row(&[(2, Scalar::one())]),
            row(&[(0, Scalar::from_int(2)), (1, &Scalar::from_int(2) * &q), (2, Scalar::one())]),
        ];
        let r = rref(3, m.clone());
        assert_eq!(r.rank(), 2);
        let k = r.kernel();
        assert_eq!(k, vec![row(&[(0, -&q), (1, Scalar::one())])]);
        for mrow in &m {
            let mut s = Scalar::zero();
            for (c, x) in mrow {
                if let Some(y) = k[0].get(c) {
                    s = &s + &(x * y);
                }
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn empty_matrix_has_full_kernel() {
        assert_eq!(rref(3, vec![SparseRow::new()]).kernel().len(), 3);
    }
}

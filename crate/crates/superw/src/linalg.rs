//! Sparse Gaussian elimination over exact scalars.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::scalar::{Scalar, ScalarError};

/// Sparse vector indexed by `usize`.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// Sparse matrix stored column-wise: `cols[j]` is the image of the `j`-th basis vector.
#[derive(Clone, Debug, Default)]
pub struct ColMatrix {
    pub nrows: usize,
    pub cols: Vec<SparseVec>,
}

fn weight(s: &Scalar) -> usize {
    let a = s.rational_part();
    let b = s.root_part();
    a.num().coeffs().len() + a.den().coeffs().len() + b.num().coeffs().len() + b.den().coeffs().len()
}

/// Reduced row echelon data of a column matrix.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// `(pivot column, reduced row)`; each row has 1 at its pivot.
    pub rows: Vec<(usize, SparseVec)>,
    pub ncols: usize,
}

impl ColMatrix {
    pub fn new(nrows: usize, cols: Vec<SparseVec>) -> Self {
        ColMatrix { nrows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    fn rows(&self) -> Vec<SparseVec> {
        let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                if !v.is_zero() {
                    rows.entry(*i).or_default().insert(j, v.clone());
                }
            }
        }
        rows.into_values().collect()
    }

    /// Row reduction with a deterministic pivot rule: columns left to right,
    /// among candidate rows the one whose pivot entry is simplest, ties by row order.
    pub fn echelon(&self) -> Echelon {
        let mut pending = self.rows();
        let mut done: Vec<(usize, SparseVec)> = Vec::new();
        for j in 0..self.ncols() {
            let mut best: Option<(usize, usize)> = None;
            for (r, row) in pending.iter().enumerate() {
                if let Some(v) = row.get(&j) {
                    let w = weight(v);
                    if best.is_none_or(|(_, bw)| w < bw) {
                        best = Some((r, w));
                    }
                }
            }
            let Some((r, _)) = best else { continue };
            let mut prow = pending.swap_remove(r);
            let inv = prow[&j].inv();
            for v in prow.values_mut() {
                *v = &*v * &inv;
            }
            for row in pending.iter_mut().chain(done.iter_mut().map(|(_, r)| r)) {
                if let Some(f) = row.get(&j).cloned() {
                    axpy(row, &-f, &prow);
                }
            }
            pending.retain(|r| !r.is_empty());
            done.push((j, prow));
        }
        Echelon { rows: done, ncols: self.ncols() }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rows.len()
    }

    /// Kernel basis: one vector per free column, with 1 in that column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        self.echelon().kernel()
    }

    /// Numerical specialization at `k = k0`.
    pub fn specialize(&self, k0: &BigRational) -> Result<ColMatrix, ScalarError> {
        let mut cols = Vec::with_capacity(self.cols.len());
        for c in &self.cols {
            let mut out = SparseVec::new();
            for (i, v) in c {
                let x = v.evaluate(k0)?;
                if !x.is_zero() {
                    out.insert(*i, Scalar::from_gauss(x));
                }
            }
            cols.push(out);
        }
        Ok(ColMatrix { nrows: self.nrows, cols })
    }
}

impl Echelon {
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn kernel(&self) -> Vec<SparseVec> {
        let pivots: BTreeMap<usize, &SparseVec> = self.rows.iter().map(|(p, r)| (*p, r)).collect();
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if pivots.contains_key(&f) {
                continue;
            }
            let mut v = SparseVec::new();
            v.insert(f, Scalar::one());
            for (p, row) in &pivots {
                if let Some(x) = row.get(&f) {
                    v.insert(*p, -x);
                }
            }
            out.push(v);
        }
        out
    }
}

/// `y += a*x`, dropping zeros.
pub fn axpy(y: &mut SparseVec, a: &Scalar, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (i, v) in x {
        let t = a * v;
        match y.get_mut(i) {
            Some(e) => {
                *e = &*e + &t;
                if e.is_zero() {
                    y.remove(i);
                }
            }
            None => {
                if !t.is_zero() {
                    y.insert(*i, t);
                }
            }
        }
    }
}

/// Solves `sum_j x_j cols[j] = target`; `None` when inconsistent.
pub fn solve(m: &ColMatrix, target: &SparseVec) -> Option<SparseVec> {
    let mut aug = m.clone();
    aug.cols.push(target.clone());
    let ech = aug.echelon();
    let last = m.ncols();
    if ech.rows.iter().any(|(p, _)| *p == last) {
        return None;
    }
    let mut x = SparseVec::new();
    for (p, row) in &ech.rows {
        if let Some(v) = row.get(&last) {
            x.insert(*p, v.clone());
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(i, v)| (*i, Scalar::from_int(*v))).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = ColMatrix::new(2, vec![col(&[(0, 1), (1, 2)]), col(&[(0, 2), (1, 4)])]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][&0], Scalar::from_int(-2));
        assert_eq!(k[0][&1], Scalar::one());
    }

    #[test]
    fn symbolic_kernel() {
        // columns (k, 1) and (k^2, k) are parallel
        let k = Scalar::k();
        let c0: SparseVec = [(0, k.clone()), (1, Scalar::one())].into_iter().collect();
        let c1: SparseVec = [(0, &k * &k), (1, k.clone())].into_iter().collect();
        let m = ColMatrix::new(2, vec![c0, c1]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0][&0], -k);
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = ColMatrix::new(2, vec![col(&[(0, 1)]), col(&[(1, 1)])]);
        let x = solve(&m, &col(&[(0, 3), (1, 5)])).unwrap();
        assert_eq!(x[&0], Scalar::from_int(3));
        let m2 = ColMatrix::new(2, vec![col(&[(0, 1)])]);
        assert!(solve(&m2, &col(&[(1, 1)])).is_none());
    }
}

//! Sparse exact linear algebra: echelon bases, reduction, kernels.
//!
//! Vectors are sorted `(column, value)` lists without explicit zeros. The
//! pivot of a row is its first (smallest) column, so callers that care about
//! "leading terms" index their basis with the most significant element first.

use std::collections::HashMap;

use crate::field::Field;

pub type SparseVec<E> = Vec<(usize, E)>;

/// `a + c * b`, both sorted.
pub fn axpy<F: Field>(field: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ca, cb) = (a[i].0, b[j].0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, field.mul(c, &b[j].1)));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            field.add_mul_assign(&mut v, c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(k, v)| (*k, field.mul(c, v))));
    out
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(k, x)| (*k, field.mul(c, x))).collect()
}

/// Builds a sorted sparse vector from unsorted entries, summing duplicates.
pub fn collect_sparse<F: Field>(field: &F, entries: impl IntoIterator<Item = (usize, F::Elem)>) -> SparseVec<F::Elem> {
    let mut v: Vec<(usize, F::Elem)> = entries.into_iter().collect();
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (k, x) in v {
        match out.last_mut() {
            Some((lk, lx)) if *lk == k => *lx = field.add(lx, &x),
            _ => out.push((k, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

/// Dense accumulator for repeated sparse updates over a known width.
pub struct DenseAccumulator<F: Field> {
    field: F,
    values: Vec<F::Elem>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl<F: Field> DenseAccumulator<F> {
    pub fn new(field: F, width: usize) -> Self {
        let zero = field.zero();
        Self {
            field,
            values: vec![zero; width],
            touched: Vec::new(),
            mark: vec![false; width],
        }
    }

    pub fn add(&mut self, k: usize, v: &F::Elem) {
        if !self.mark[k] {
            self.mark[k] = true;
            self.touched.push(k);
        }
        self.values[k] = self.field.add(&self.values[k], v);
    }

    pub fn add_mul(&mut self, k: usize, a: &F::Elem, b: &F::Elem) {
        if !self.mark[k] {
            self.mark[k] = true;
            self.touched.push(k);
        }
        self.field.add_mul_assign(&mut self.values[k], a, b);
    }

    /// Drains the accumulated vector, leaving the accumulator empty.
    pub fn take(&mut self) -> SparseVec<F::Elem> {
        self.touched.sort_unstable();
        let zero = self.field.zero();
        let mut out = Vec::with_capacity(self.touched.len());
        for &k in &self.touched {
            let v = std::mem::replace(&mut self.values[k], zero.clone());
            self.mark[k] = false;
            if !self.field.is_zero(&v) {
                out.push((k, v));
            }
        }
        self.touched.clear();
        out
    }
}

/// Row-echelon basis of a subspace, grown one vector at a time.
///
/// Each stored row is monic at its pivot and pivots are distinct. Rows are
/// only semi-reduced until [`Echelon::into_rref`] is called.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Self {
            field,
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    /// Eliminates pivot columns from the front of `v` until its first column
    /// is not a pivot. The result is zero iff `v` lies in the span.
    pub fn semi_reduce(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        loop {
            let Some((c, x)) = v.first() else { return v };
            let Some(&r) = self.pivots.get(c) else { return v };
            let factor = self.field.neg(x);
            v = axpy(&self.field, &v, &factor, &self.rows[r]);
        }
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut v = v;
        let mut pos = 0;
        while pos < v.len() {
            let c = v[pos].0;
            if let Some(&r) = self.pivots.get(&c) {
                let factor = self.field.neg(&v[pos].1);
                let head: Vec<_> = v[..pos].to_vec();
                let tail = axpy(&self.field, &v[pos..], &factor, &self.rows[r]);
                v = head;
                v.extend(tail);
            } else {
                pos += 1;
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.semi_reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns true when it was independent.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let v = self.semi_reduce(v);
        self.push_reduced(v)
    }

    fn push_reduced(&mut self, v: SparseVec<F::Elem>) -> bool {
        let Some((c, lead)) = v.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&lead);
        let v = scale(&self.field, &inv, &v);
        self.pivots.insert(c, self.rows.len());
        self.rows.push(v);
        true
    }

    /// Fully reduced row echelon form, rows sorted by pivot column.
    pub fn into_rref(self) -> Vec<SparseVec<F::Elem>> {
        let field = self.field.clone();
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        // Back substitution from the last pivot upwards.
        let mut done: Echelon<F> = Echelon::new(field);
        let mut out: Vec<SparseVec<F::Elem>> = Vec::with_capacity(rows.len());
        for row in rows.into_iter().rev() {
            let reduced = done.reduce_tail(row);
            done.pivots.insert(reduced[0].0, done.rows.len());
            done.rows.push(reduced.clone());
            out.push(reduced);
        }
        out.reverse();
        out
    }

    /// Like `reduce` but keeps the first entry of `v` untouched.
    fn reduce_tail(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        if v.is_empty() {
            return v;
        }
        let head = v[0].clone();
        let mut rest = self.reduce(v[1..].to_vec());
        rest.insert(0, head);
        rest
    }
}

/// Reduced row echelon form of a list of vectors (zero rows dropped).
pub fn rref<F: Field>(field: &F, rows: impl IntoIterator<Item = SparseVec<F::Elem>>) -> Vec<SparseVec<F::Elem>> {
    let mut e = Echelon::new(field.clone());
    for r in rows {
        e.insert(r);
    }
    e.into_rref()
}

pub fn rank<F: Field>(field: &F, rows: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut e = Echelon::new(field.clone());
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Kernel of the linear map sending basis vector `j` to `images[j]`.
///
/// Returns a basis of `{c : sum_j c_j images[j] = 0}` as sparse vectors over
/// the source basis.
pub fn kernel<F: Field>(field: &F, images: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    // Each echelon row carries the source combination that produced it.
    let mut rows: Vec<(SparseVec<F::Elem>, SparseVec<F::Elem>)> = Vec::new();
    let mut pivots: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut track: SparseVec<F::Elem> = vec![(j, field.one())];
        loop {
            let Some((c, x)) = v.first() else { break };
            let Some(&r) = pivots.get(c) else { break };
            let factor = field.neg(x);
            v = axpy(field, &v, &factor, &rows[r].0);
            track = axpy(field, &track, &factor, &rows[r].1);
        }
        match v.first().cloned() {
            None => out.push(track),
            Some((c, lead)) => {
                let inv = field.inv(&lead);
                pivots.insert(c, rows.len());
                rows.push((scale(field, &inv, &v), scale(field, &inv, &track)));
            }
        }
    }
    out
}

/// Dense matrix helpers for small systems.
pub fn dense_to_sparse<F: Field>(field: &F, row: &[F::Elem]) -> SparseVec<F::Elem> {
    row.iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

pub fn sparse_to_dense<F: Field>(field: &F, v: &[(usize, F::Elem)], width: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); width];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

/// Solutions `x` of `A x = 0` for a dense `rows x cols` matrix, returned as
/// the standard basis attached to the free columns of the RREF.
pub fn nullspace<F: Field>(field: &F, matrix: &[Vec<F::Elem>], cols: usize) -> Vec<SparseVec<F::Elem>> {
    let rref_rows = rref(field, matrix.iter().map(|r| dense_to_sparse(field, r)));
    let pivot_cols: Vec<usize> = rref_rows.iter().map(|r| r[0].0).collect();
    let mut out = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![(free, field.one())];
        for r in &rref_rows {
            if let Some((_, x)) = r.iter().find(|(k, _)| *k == free) {
                v.push((r[0].0, field.neg(x)));
            }
        }
        v.sort_by_key(|e| e.0);
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn kernel_of_small_map() {
        let f = Rationals;
        let one = f.one();
        let two = f.from_i64(2);
        // images: e0 -> (1,0), e1 -> (0,1), e2 -> (1,2)
        let imgs = vec![
            vec![(0, one.clone())],
            vec![(1, one.clone())],
            vec![(0, one.clone()), (1, two.clone())],
        ];
        let k = kernel(&f, &imgs);
        assert_eq!(k.len(), 1);
        // -e0 - 2 e1 + e2
        assert_eq!(
            k[0],
            vec![(0, f.from_i64(-1)), (1, f.from_i64(-2)), (2, one.clone())]
        );
    }

    #[test]
    fn rref_is_reduced() {
        let f = PrimeField::new(101).unwrap();
        let rows = vec![vec![(0, 1), (1, 1), (2, 1)], vec![(1, 1), (2, 2)], vec![(0, 2), (1, 3), (2, 4)]];
        let r = rref(&f, rows);
        assert_eq!(r.len(), 2);
        assert_eq!(r[0], vec![(0, 1), (2, 100)]);
        assert_eq!(r[1], vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn nullspace_dense() {
        let f = Rationals;
        let m = vec![vec![f.from_i64(1), f.from_i64(1), f.from_i64(0)]];
        let ns = nullspace(&f, &m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dense = sparse_to_dense(&f, &v, 3);
            assert_eq!(&dense[0] + &dense[1], f.zero());
        }
    }
}

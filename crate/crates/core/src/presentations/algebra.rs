//! Finite-dimensional graded algebras given by structure constants.

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, DenseAccumulator, Echelon, SparseVec};
use crate::presentations::poly::{self, Kind};
use crate::presentations::presentation::{ideal_components, ExtQuotientPresentation};
use crate::series::Series1;

/// Commutativity law the algebra is expected to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    /// `ab = (-1)^{|a||b|} ba`
    Skew,
    /// `ab = ba`
    Commutative,
    None,
}

impl From<Kind> for Symmetry {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Exterior => Symmetry::Skew,
            Kind::Commutative => Symmetry::Commutative,
        }
    }
}

/// Graded algebra with basis `b_0 = 1, b_1, ...` sorted by degree and a full
/// multiplication table on basis elements.
#[derive(Clone, Debug)]
pub struct FiniteGradedAlgebra<F: Field> {
    field: F,
    symmetry: Symmetry,
    labels: Vec<String>,
    degrees: Vec<usize>,
    starts: Vec<usize>,
    table: Vec<Vec<SparseVec<F::Elem>>>,
}

impl<F: Field> FiniteGradedAlgebra<F> {
    /// `dims[d]` basis elements in degree `d`; `table[a][b]` is the product of
    /// basis elements `a` and `b`. Basis element 0 must be the unit.
    pub fn from_table(
        field: F,
        symmetry: Symmetry,
        labels: Vec<String>,
        dims: &[usize],
        table: Vec<Vec<SparseVec<F::Elem>>>,
    ) -> Result<Self> {
        let mut dims = dims.to_vec();
        while dims.len() > 1 && dims.last() == Some(&0) {
            dims.pop();
        }
        if dims.first() != Some(&1) {
            return Err(Error::Invalid("degree 0 component must be one-dimensional".into()));
        }
        let mut starts = vec![0];
        let mut degrees = Vec::new();
        for (d, &k) in dims.iter().enumerate() {
            starts.push(starts[d] + k);
            degrees.extend(std::iter::repeat(d).take(k));
        }
        let dim = degrees.len();
        if labels.len() != dim || table.len() != dim || table.iter().any(|r| r.len() != dim) {
            return Err(Error::Invalid("structure table does not match the basis".into()));
        }
        let alg = Self {
            field,
            symmetry,
            labels,
            degrees,
            starts,
            table,
        };
        for a in 0..dim {
            for b in 0..dim {
                let d = alg.degrees[a] + alg.degrees[b];
                if alg.table[a][b].iter().any(|(k, _)| alg.degrees[*k] != d) {
                    return Err(Error::Invalid(format!(
                        "product of {} and {} leaves degree {d}",
                        alg.labels[a], alg.labels[b]
                    )));
                }
            }
        }
        let one = vec![(0, alg.field.one())];
        for a in 0..dim {
            let e = vec![(a, alg.field.one())];
            if alg.table[0][a] != e || alg.table[a][0] != e {
                return Err(Error::Invalid("basis element 0 is not the unit".into()));
            }
        }
        debug_assert_eq!(alg.table[0][0], one);
        Ok(alg)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn top_degree(&self) -> usize {
        self.starts.len() - 2
    }

    pub fn degree(&self, b: usize) -> usize {
        self.degrees[b]
    }

    /// Basis indices of degree `d` (empty beyond the top degree).
    pub fn range(&self, d: usize) -> Range<usize> {
        if d + 1 < self.starts.len() {
            self.starts[d]..self.starts[d + 1]
        } else {
            self.dim()..self.dim()
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|d| self.range(d).len()).collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn hilbert(&self, cutoff: usize) -> Series1 {
        let dims: Vec<i64> = self.dims().iter().map(|&d| d as i64).collect();
        Series1::from_ints(&dims, cutoff)
    }

    /// Number of degree-one generators.
    pub fn embedding_dim(&self) -> usize {
        self.range(1).len()
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> &SparseVec<F::Elem> {
        &self.table[a][b]
    }

    pub fn mul(&self, x: &[(usize, F::Elem)], y: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut acc = DenseAccumulator::new(self.field.clone(), self.dim());
        for (a, ca) in x {
            for (b, cb) in y {
                let c = self.field.mul(ca, cb);
                for (k, v) in &self.table[*a][*b] {
                    acc.add_mul(*k, &c, v);
                }
            }
        }
        let mut v = acc.take();
        v.sort_by_key(|e| e.0);
        v
    }

    /// First basis triple violating associativity, if any.
    pub fn check_associative(&self) -> std::result::Result<(), (usize, usize, usize)> {
        let n = self.dim();
        for a in 1..n {
            for b in 1..n {
                if self.degrees[a] + self.degrees[b] > self.top_degree() {
                    continue;
                }
                let ab = &self.table[a][b];
                for c in 1..n {
                    if self.degrees[a] + self.degrees[b] + self.degrees[c] > self.top_degree() {
                        continue;
                    }
                    let left = self.mul(ab, &[(c, self.field.one())]);
                    let right = self.mul(&[(a, self.field.one())], &self.table[b][c]);
                    if left != right {
                        return Err((a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// First basis pair violating the declared commutativity law, if any.
    pub fn check_symmetry(&self) -> std::result::Result<(), (usize, usize)> {
        if self.symmetry == Symmetry::None {
            return Ok(());
        }
        for a in 0..self.dim() {
            for b in a..self.dim() {
                let odd = self.symmetry == Symmetry::Skew && self.degrees[a] % 2 == 1 && self.degrees[b] % 2 == 1;
                let ba = &self.table[b][a];
                let expect = if odd { linalg::scale(&self.field, &self.field.neg(&self.field.one()), ba) } else { ba.clone() };
                if self.table[a][b] != expect {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }

    /// Basis of the annihilator of the maximal ideal, as vectors.
    pub fn socle(&self) -> Vec<SparseVec<F::Elem>> {
        let mut out = Vec::new();
        for d in 0..=self.top_degree() {
            // x in A_d with x * b_g = 0 for every degree-one generator suffices
            // when A is generated in degree one; in general test all of m.
            let r = self.range(d);
            let images: Vec<SparseVec<F::Elem>> = r
                .clone()
                .map(|a| {
                    let mut v = Vec::new();
                    for g in self.range(1).start..self.dim() {
                        if self.degrees[a] + self.degrees[g] > self.top_degree() {
                            continue;
                        }
                        for (k, c) in &self.table[a][g] {
                            v.push((g * self.dim() + k, c.clone()));
                        }
                        for (k, c) in &self.table[g][a] {
                            v.push((self.dim() * self.dim() + g * self.dim() + k, c.clone()));
                        }
                    }
                    v.sort_by_key(|e| e.0);
                    linalg::collect_sparse(&self.field, v)
                })
                .collect();
            for k in linalg::kernel(&self.field, &images) {
                out.push(k.into_iter().map(|(i, c)| (i + r.start, c)).collect());
            }
        }
        out
    }

    /// Basis of `m^k`, the span of all products of `k` elements of positive degree.
    pub fn maximal_ideal_power(&self, k: usize) -> Vec<SparseVec<F::Elem>> {
        let m: Vec<usize> = (self.range(1).start..self.dim()).collect();
        let mut cur: Vec<SparseVec<F::Elem>> = m.iter().map(|&b| vec![(b, self.field.one())]).collect();
        for _ in 1..k {
            let mut ech = Echelon::new(self.field.clone());
            for x in &cur {
                for &b in &m {
                    ech.insert(self.mul(x, &[(b, self.field.one())]));
                }
            }
            cur = ech.into_rref();
        }
        if k == 0 {
            return (0..self.dim()).map(|b| vec![(b, self.field.one())]).collect();
        }
        cur
    }

    /// Smallest `k` with `m^k = 0`.
    pub fn loewy_length(&self) -> usize {
        let mut k = 1;
        while !self.maximal_ideal_power(k).is_empty() {
            k += 1;
        }
        k
    }

    /// Quotient by the two-sided ideal generated by homogeneous `gens`.
    pub fn quotient(&self, gens: &[SparseVec<F::Elem>]) -> Result<FiniteGradedAlgebra<F>> {
        let f = &self.field;
        let dim = self.dim();
        // Close the generators under multiplication by basis elements,
        // working upwards in degree.
        let mut per_degree: Vec<Vec<SparseVec<F::Elem>>> = vec![Vec::new(); self.top_degree() + 1];
        for g in gens {
            if let Some((k, _)) = g.first() {
                let d = self.degrees[*k];
                if g.iter().any(|(i, _)| self.degrees[*i] != d) {
                    return Err(Error::Inhomogeneous("ideal generator".into()));
                }
                per_degree[d].push(g.clone());
            }
        }
        let mut ech: Vec<Echelon<F>> = Vec::new();
        for d in 0..=self.top_degree() {
            let mut e = Echelon::new(f.clone());
            for g in &per_degree[d] {
                e.insert(g.clone());
            }
            for e0 in 1..=d {
                let lower = &ech[d - e0];
                for row in lower.rows() {
                    for b in self.range(e0) {
                        e.insert(self.mul(row, &[(b, f.one())]));
                        e.insert(self.mul(&[(b, f.one())], row));
                    }
                }
            }
            ech.push(e);
        }
        let ech: Vec<Vec<SparseVec<F::Elem>>> = ech.into_iter().map(|e| e.into_rref()).collect();
        // Surviving basis elements: non-pivot indices.
        let mut pivot_row: Vec<Option<(usize, usize)>> = vec![None; dim];
        for (d, rows) in ech.iter().enumerate() {
            for (r, row) in rows.iter().enumerate() {
                pivot_row[row[0].0] = Some((d, r));
            }
        }
        let keep: Vec<usize> = (0..dim).filter(|&b| pivot_row[b].is_none()).collect();
        let mut new_index = vec![usize::MAX; dim];
        for (i, &b) in keep.iter().enumerate() {
            new_index[b] = i;
        }
        // normal form of an old basis vector in terms of kept elements
        let nf = |v: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
            let mut acc = Vec::new();
            for (k, c) in v {
                match pivot_row[*k] {
                    None => acc.push((new_index[*k], c.clone())),
                    Some((d, r)) => {
                        for (j, x) in ech[d][r].iter().skip(1) {
                            acc.push((new_index[*j], f.neg(&f.mul(c, x))));
                        }
                    }
                }
            }
            acc.sort_by_key(|e| e.0);
            linalg::collect_sparse(f, acc)
        };
        let table: Vec<Vec<SparseVec<F::Elem>>> = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| nf(&self.table[a][b])).collect())
            .collect();
        let mut dims = vec![0; self.top_degree() + 1];
        for &b in &keep {
            dims[self.degrees[b]] += 1;
        }
        let labels = keep.iter().map(|&b| self.labels[b].clone()).collect();
        FiniteGradedAlgebra::from_table(f.clone(), self.symmetry, labels, &dims, table)
    }

    /// Quotient by the socle.
    pub fn quotient_by_socle(&self) -> Result<FiniteGradedAlgebra<F>> {
        self.quotient(&self.socle())
    }

    /// Matrix of left multiplication by `x` restricted to degree `d`, mapping
    /// basis elements of degree `d` to sparse images.
    pub fn left_mult_images(&self, x: &[(usize, F::Elem)], d: usize) -> Vec<SparseVec<F::Elem>> {
        self.range(d).map(|b| self.mul(x, &[(b, self.field.one())])).collect()
    }

    /// Same algebra over a new symmetry flag (used when a presentation
    /// carries no commutativity information).
    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = symmetry;
        self
    }
}

/// Builds the quotient algebra of a presentation. Fails on commutative
/// presentations whose quotient does not vanish below degree 64.
pub fn algebra_from_presentation<F: Field>(field: &F, p: &ExtQuotientPresentation) -> Result<FiniteGradedAlgebra<F>> {
    if p.kind() == Kind::Exterior {
        crate::field::require_odd_characteristic(field)?;
    }
    const MAX_DEGREE: usize = 64;
    let n = p.rank();
    let mut maxdeg = p.max_relation_degree().max(2);
    // grow until some degree at or above every relation degree vanishes
    let comps = loop {
        let comps = ideal_components(field, p, maxdeg)?;
        let vanished = comps
            .iter()
            .enumerate()
            .skip(p.max_relation_degree())
            .any(|(_, (b, e))| b.len() == e.rank());
        if vanished {
            break comps;
        }
        if maxdeg >= MAX_DEGREE {
            return Err(Error::NotArtinian(MAX_DEGREE));
        }
        maxdeg = (maxdeg * 2).min(MAX_DEGREE);
    };
    let top = comps
        .iter()
        .position(|(b, e)| b.len() == e.rank())
        .map(|d| d.saturating_sub(1))
        .unwrap_or(comps.len() - 1);

    let mut rrefs = Vec::new();
    let mut standard: Vec<Vec<usize>> = Vec::new();
    for (basis, ech) in comps.into_iter().take(top + 1) {
        let rows = ech.into_rref();
        let mut is_pivot = vec![false; basis.len()];
        for r in &rows {
            is_pivot[r[0].0] = true;
        }
        // standard monomials, listed in increasing lex order
        let mut std: Vec<usize> = (0..basis.len()).filter(|&k| !is_pivot[k]).collect();
        std.reverse();
        standard.push(std);
        rrefs.push((basis, rows));
    }
    let mut offsets = vec![0];
    for s in &standard {
        offsets.push(offsets.last().unwrap() + s.len());
    }
    let dim = *offsets.last().unwrap();
    // position of each standard monomial column in the algebra basis, and the
    // normal form of each pivot column
    let mut pos: Vec<Vec<Option<usize>>> = Vec::new();
    let mut pivot_of: Vec<Vec<Option<usize>>> = Vec::new();
    for (d, (basis, rows)) in rrefs.iter().enumerate() {
        let mut p_col = vec![None; basis.len()];
        for (i, &k) in standard[d].iter().enumerate() {
            p_col[k] = Some(offsets[d] + i);
        }
        let mut piv = vec![None; basis.len()];
        for (r, row) in rows.iter().enumerate() {
            piv[row[0].0] = Some(r);
        }
        pos.push(p_col);
        pivot_of.push(piv);
    }
    let normal_form = |d: usize, mono: &[usize], sign_odd: bool| -> SparseVec<F::Elem> {
        let (basis, rows) = &rrefs[d];
        let k = basis.index(mono);
        let s = if sign_odd { field.neg(&field.one()) } else { field.one() };
        let mut out = match (pos[d][k], pivot_of[d][k]) {
            (Some(i), _) => vec![(i, s)],
            (None, Some(r)) => rows[r]
                .iter()
                .skip(1)
                .map(|(j, c)| (pos[d][*j].expect("rref tail is standard"), field.neg(&field.mul(&s, c))))
                .collect(),
            (None, None) => unreachable!(),
        };
        out.sort_by_key(|e| e.0);
        out
    };
    let mut labels = Vec::with_capacity(dim);
    let mut monos = Vec::with_capacity(dim);
    for (d, (basis, _)) in rrefs.iter().enumerate() {
        for &k in &standard[d] {
            monos.push(basis.monos[k].clone());
            labels.push(poly::format_monomial(&basis.monos[k], p.names()));
        }
    }
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let d = monos[a].len() + monos[b].len();
            if d > top {
                continue;
            }
            if let Some((m, odd)) = poly::mono_mul(p.kind(), &monos[a], &monos[b]) {
                table[a][b] = normal_form(d, &m, odd);
            }
        }
    }
    let dims: Vec<usize> = standard.iter().map(|s| s.len()).collect();
    let _ = n;
    FiniteGradedAlgebra::from_table(field.clone(), p.kind().into(), labels, &dims, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn exterior(n: usize, rels: &str) -> ExtQuotientPresentation {
        ExtQuotientPresentation::parse(Kind::Exterior, poly::indexed_names("x", n), rels).unwrap()
    }

    #[test]
    fn full_exterior_algebra() {
        let p = ExtQuotientPresentation::exterior(3, vec![]).unwrap();
        let a = algebra_from_presentation(&Rationals, &p).unwrap();
        assert_eq!(a.dims(), vec![1, 3, 3, 1]);
        assert!(a.check_associative().is_ok());
        assert!(a.check_symmetry().is_ok());
        assert_eq!(a.socle().len(), 1);
        assert_eq!(a.loewy_length(), 4);
    }

    #[test]
    fn r20_hilbert_and_checks() {
        let p = exterior(5, "x1x4+x2x3, x1x5+x2x4, x2x5+x3x4");
        let a = algebra_from_presentation(&Rationals, &p).unwrap();
        assert_eq!(a.dims(), vec![1, 5, 7]);
        assert!(a.check_associative().is_ok());
        assert!(a.check_symmetry().is_ok());
        assert_eq!(a.maximal_ideal_power(2).len(), 7);
        assert!(a.maximal_ideal_power(3).is_empty());
    }

    #[test]
    fn commutative_quotient() {
        let names: Vec<String> = ["x", "y", "z", "u"].iter().map(|s| s.to_string()).collect();
        let p = ExtQuotientPresentation::parse(Kind::Commutative, names, "x^2, xy, y^2, z^2, yu+zu, u^2").unwrap();
        let a = algebra_from_presentation(&Rationals, &p).unwrap();
        assert_eq!(a.dims(), vec![1, 4, 4]);
        assert!(a.check_symmetry().is_ok());
        assert!(a.check_associative().is_ok());
        assert_eq!(a.socle().len(), 4);
    }

    #[test]
    fn non_artinian_commutative_is_an_error() {
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let p = ExtQuotientPresentation::parse(Kind::Commutative, names, "xy").unwrap();
        assert!(matches!(algebra_from_presentation(&Rationals, &p), Err(Error::NotArtinian(_))));
    }

    #[test]
    fn char_two_rejected_for_exterior() {
        let p = ExtQuotientPresentation::exterior(2, vec![]).unwrap();
        assert!(algebra_from_presentation(&PrimeField::new(2).unwrap(), &p).is_err());
    }

    #[test]
    fn socle_quotient_of_exterior() {
        let p = ExtQuotientPresentation::exterior(3, vec![]).unwrap();
        let a = algebra_from_presentation(&Rationals, &p).unwrap();
        let q = a.quotient_by_socle().unwrap();
        assert_eq!(q.dims(), vec![1, 3, 3]);
        assert!(q.check_associative().is_ok());
        assert_eq!(q.socle().len(), 3);
    }
}

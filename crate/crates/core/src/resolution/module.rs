//! Finite-dimensional graded left modules over a [`FiniteGradedAlgebra`].

use std::ops::Range;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Echelon, SparseVec};
use crate::presentations::{FiniteGradedAlgebra, Symmetry};

/// Linear map given by the images of the source basis vectors.
pub type ModuleMap<E> = Vec<SparseVec<E>>;

/// Graded module with basis sorted by degree and the action of every algebra
/// basis element on every module basis element.
#[derive(Clone, Debug)]
pub struct GradedModule<F: Field> {
    field: F,
    degrees: Vec<usize>,
    starts: Vec<usize>,
    /// `action[a][v] = b_a . m_v`
    action: Vec<Vec<SparseVec<F::Elem>>>,
}

/// Submodule with its inclusion into the ambient module.
#[derive(Clone, Debug)]
pub struct Submodule<F: Field> {
    pub module: GradedModule<F>,
    /// images of the submodule basis, in reduced echelon form
    pub inclusion: ModuleMap<F::Elem>,
}

/// Quotient module with the projection and a section on basis vectors.
#[derive(Clone, Debug)]
pub struct QuotientModule<F: Field> {
    pub module: GradedModule<F>,
    /// images of the ambient basis
    pub projection: ModuleMap<F::Elem>,
    /// ambient basis vector lifting each quotient basis vector
    pub lifts: Vec<usize>,
}

fn starts_of(degrees: &[usize]) -> Vec<usize> {
    let top = degrees.last().copied().unwrap_or(0);
    let mut starts = vec![0; top + 2];
    for &d in degrees {
        starts[d + 1] += 1;
    }
    for d in 1..starts.len() {
        starts[d] += starts[d - 1];
    }
    starts
}

/// Applies a linear map to a vector.
pub fn apply<F: Field>(field: &F, map: &[SparseVec<F::Elem>], v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut acc = Vec::new();
    for (k, c) in v {
        acc.extend(map[*k].iter().map(|(j, x)| (*j, field.mul(c, x))));
    }
    linalg::collect_sparse(field, acc)
}

impl<F: Field> GradedModule<F> {
    /// Builds a module from degrees (nondecreasing) and the action table.
    pub fn from_action(
        a: &FiniteGradedAlgebra<F>,
        degrees: Vec<usize>,
        action: Vec<Vec<SparseVec<F::Elem>>>,
    ) -> Result<Self> {
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid("module basis must be sorted by degree".into()));
        }
        if action.len() != a.dim() || action.iter().any(|r| r.len() != degrees.len()) {
            return Err(Error::Invalid("action table has the wrong shape".into()));
        }
        let m = Self {
            field: a.field().clone(),
            starts: starts_of(&degrees),
            degrees,
            action,
        };
        m.check(a)?;
        Ok(m)
    }

    /// The residue field `k = A/m` in degree 0.
    pub fn residue_field(a: &FiniteGradedAlgebra<F>) -> Self {
        let f = a.field();
        let mut action = vec![vec![Vec::new()]; a.dim()];
        action[0][0] = vec![(0, f.one())];
        Self {
            field: f.clone(),
            degrees: vec![0],
            starts: vec![0, 1],
            action,
        }
    }

    /// `A` as a left module over itself.
    pub fn regular(a: &FiniteGradedAlgebra<F>) -> Self {
        let n = a.dim();
        let degrees: Vec<usize> = (0..n).map(|b| a.degree(b)).collect();
        let action = (0..n).map(|x| (0..n).map(|b| a.mul_basis(x, b).clone()).collect()).collect();
        Self {
            field: a.field().clone(),
            starts: starts_of(&degrees),
            degrees,
            action,
        }
    }

    /// Free module `A(-s)` on one generator of degree `s`.
    pub fn shifted_regular(a: &FiniteGradedAlgebra<F>, s: usize) -> Self {
        let mut m = Self::regular(a);
        for d in &mut m.degrees {
            *d += s;
        }
        m.starts = starts_of(&m.degrees);
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.last().copied().unwrap_or(0)
    }

    /// Basis indices of degree `d`.
    pub fn range(&self, d: usize) -> Range<usize> {
        if d + 1 >= self.starts.len() {
            return self.dim()..self.dim();
        }
        self.starts[d]..self.starts[d + 1]
    }

    /// Dimension of each graded piece.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|d| self.range(d).len()).collect()
    }

    pub fn act_basis(&self, a: usize, v: usize) -> &SparseVec<F::Elem> {
        &self.action[a][v]
    }

    /// `x . v` for an algebra element `x` and a module element `v`.
    pub fn act(&self, x: &[(usize, F::Elem)], v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc = Vec::new();
        for (a, ca) in x {
            for (w, cw) in v {
                let c = f.mul(ca, cw);
                acc.extend(self.action[*a][*w].iter().map(|(k, y)| (*k, f.mul(&c, y))));
            }
        }
        linalg::collect_sparse(f, acc)
    }

    /// Checks grading, unit action and `a(bv) = (ab)v`.
    pub fn check(&self, a: &FiniteGradedAlgebra<F>) -> Result<()> {
        let f = &self.field;
        for v in 0..self.dim() {
            if self.action[0][v] != vec![(v, f.one())] {
                return Err(Error::Invalid(format!("unit does not act as identity on basis vector {v}")));
            }
            for x in 0..a.dim() {
                let d = a.degree(x) + self.degrees[v];
                if self.action[x][v].iter().any(|(k, _)| self.degrees[*k] != d) {
                    return Err(Error::Invalid("action does not respect the grading".into()));
                }
            }
        }
        for x in 1..a.dim() {
            for y in 1..a.dim() {
                if a.degree(x) + a.degree(y) > self.top_degree() {
                    continue;
                }
                for v in 0..self.dim() {
                    let lhs = self.act(&[(x, f.one())], &self.action[y][v]);
                    let rhs = self.act(a.mul_basis(x, y), &[(v, f.one())]);
                    if lhs != rhs {
                        return Err(Error::Invalid(format!("action is not associative at ({x}, {y}, {v})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Span of the submodule generated by homogeneous `gens`, per degree.
    fn closure(&self, a: &FiniteGradedAlgebra<F>, gens: &[SparseVec<F::Elem>]) -> Result<Vec<Vec<SparseVec<F::Elem>>>> {
        let f = &self.field;
        let top = self.top_degree();
        let mut per_degree: Vec<Vec<SparseVec<F::Elem>>> = vec![Vec::new(); top + 1];
        for g in gens {
            if let Some((k, _)) = g.first() {
                let d = self.degrees[*k];
                if g.iter().any(|(i, _)| self.degrees[*i] != d) {
                    return Err(Error::Inhomogeneous("submodule generator".into()));
                }
                per_degree[d].push(g.clone());
            }
        }
        let mut out: Vec<Vec<SparseVec<F::Elem>>> = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let mut e = Echelon::new(f.clone());
            for g in &per_degree[d] {
                e.insert(g.clone());
            }
            for e0 in 1..=d {
                for row in &out[d - e0] {
                    for x in a.range(e0) {
                        e.insert(self.act(&[(x, f.one())], row));
                    }
                }
            }
            out.push(e.into_rref());
        }
        Ok(out)
    }

    /// Submodule generated by homogeneous vectors.
    pub fn submodule(&self, a: &FiniteGradedAlgebra<F>, gens: &[SparseVec<F::Elem>]) -> Result<Submodule<F>> {
        let f = &self.field;
        let rows: Vec<SparseVec<F::Elem>> = self.closure(a, gens)?.into_iter().flatten().collect();
        let mut pivot_row = vec![usize::MAX; self.dim()];
        for (r, row) in rows.iter().enumerate() {
            pivot_row[row[0].0] = r;
        }
        // coordinates of an element of the span: read off pivot entries
        let coords = |w: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
            w.iter()
                .filter(|(k, _)| pivot_row[*k] != usize::MAX)
                .map(|(k, c)| (pivot_row[*k], c.clone()))
                .collect()
        };
        let degrees: Vec<usize> = rows.iter().map(|r| self.degrees[r[0].0]).collect();
        let action = (0..a.dim())
            .map(|x| {
                rows.iter()
                    .map(|row| {
                        let mut v = coords(&self.act(&[(x, f.one())], row));
                        v.sort_by_key(|e| e.0);
                        v
                    })
                    .collect()
            })
            .collect();
        let module = Self {
            field: f.clone(),
            starts: starts_of(&degrees),
            degrees,
            action,
        };
        Ok(Submodule { module, inclusion: rows })
    }

    /// Quotient by the submodule generated by homogeneous vectors.
    pub fn quotient(&self, a: &FiniteGradedAlgebra<F>, gens: &[SparseVec<F::Elem>]) -> Result<QuotientModule<F>> {
        let f = &self.field;
        let rows: Vec<SparseVec<F::Elem>> = self.closure(a, gens)?.into_iter().flatten().collect();
        let mut pivot_row = vec![usize::MAX; self.dim()];
        for (r, row) in rows.iter().enumerate() {
            pivot_row[row[0].0] = r;
        }
        let lifts: Vec<usize> = (0..self.dim()).filter(|&v| pivot_row[v] == usize::MAX).collect();
        let mut new_index = vec![usize::MAX; self.dim()];
        for (i, &v) in lifts.iter().enumerate() {
            new_index[v] = i;
        }
        let projection: ModuleMap<F::Elem> = (0..self.dim())
            .map(|v| match pivot_row[v] {
                usize::MAX => vec![(new_index[v], f.one())],
                r => linalg::collect_sparse(f, rows[r][1..].iter().map(|(k, c)| (new_index[*k], f.neg(c)))),
            })
            .collect();
        let degrees: Vec<usize> = lifts.iter().map(|&v| self.degrees[v]).collect();
        let action = (0..a.dim())
            .map(|x| {
                lifts
                    .iter()
                    .map(|&v| apply(f, &projection, &self.action[x][v]))
                    .collect()
            })
            .collect();
        let module = Self {
            field: f.clone(),
            starts: starts_of(&degrees),
            degrees,
            action,
        };
        Ok(QuotientModule { module, projection, lifts })
    }

    /// Module with every degree raised by `s`.
    pub fn shift(&self, s: usize) -> Self {
        let mut m = self.clone();
        for d in &mut m.degrees {
            *d += s;
        }
        m.starts = starts_of(&m.degrees);
        m
    }

    /// Module with the lowest occupied degree moved to 0.
    pub fn normalized(&self) -> Self {
        let low = self.degrees.first().copied().unwrap_or(0);
        let mut m = self.clone();
        for d in &mut m.degrees {
            *d -= low;
        }
        m.starts = starts_of(&m.degrees);
        m
    }
}

/// The maximal ideal `m` as a submodule of `A`.
pub fn maximal_ideal<F: Field>(a: &FiniteGradedAlgebra<F>) -> Result<Submodule<F>> {
    ideal_power(a, 1)
}

/// `m^k` as a submodule of `A`.
pub fn ideal_power<F: Field>(a: &FiniteGradedAlgebra<F>, k: usize) -> Result<Submodule<F>> {
    GradedModule::regular(a).submodule(a, &a.maximal_ideal_power(k))
}

/// The socle `0 : m` as a submodule of `A`.
pub fn socle<F: Field>(a: &FiniteGradedAlgebra<F>) -> Result<Submodule<F>> {
    GradedModule::regular(a).submodule(a, &a.socle())
}

/// `A / m^k` as a left module.
pub fn truncation<F: Field>(a: &FiniteGradedAlgebra<F>, k: usize) -> Result<QuotientModule<F>> {
    GradedModule::regular(a).quotient(a, &a.maximal_ideal_power(k))
}

/// Graded dual `Hom_k(M, k)`, with the dual of degree `d` placed in degree
/// `top(M) - d`.
///
/// The left action is `(x.phi)(v) = phi(x v)`, twisted by `(-1)^{|x||v|}`
/// for skew algebras so that it is a left action again.
pub fn matlis_dual<F: Field>(a: &FiniteGradedAlgebra<F>, m: &GradedModule<F>) -> Result<GradedModule<F>> {
    if a.symmetry() == Symmetry::None {
        return Err(Error::Precondition("the Matlis dual needs a commutative or skew-commutative algebra".into()));
    }
    let f = m.field();
    let top = m.top_degree();
    let n = m.dim();
    // dual basis in reversed order, so degrees ascend
    let index = |v: usize| n - 1 - v;
    let degrees: Vec<usize> = (0..n).map(|k| top - m.degree(n - 1 - k)).collect();
    let mut action = vec![vec![Vec::new(); n]; a.dim()];
    for x in 0..a.dim() {
        let dx = a.degree(x);
        for v in 0..n {
            // x . phi_v = sum_w [coefficient of v in x w] phi_w
            let dv = m.degree(v);
            if dx > dv {
                continue;
            }
            let mut out = Vec::new();
            for w in m.range(dv - dx) {
                if let Some((_, c)) = m.act_basis(x, w).iter().find(|(k, _)| *k == v) {
                    let negate = a.symmetry() == Symmetry::Skew && dx % 2 == 1 && dv % 2 == 1;
                    out.push((index(w), if negate { f.neg(c) } else { c.clone() }));
                }
            }
            action[x][index(v)] = linalg::collect_sparse(f, out);
        }
    }
    GradedModule::from_action(a, degrees, action)
}

/// The injective hull of `k`: the Matlis dual of `A`.
pub fn injective_hull<F: Field>(a: &FiniteGradedAlgebra<F>) -> Result<GradedModule<F>> {
    matlis_dual(a, &GradedModule::regular(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::presentations::catalog::catalog;
    use crate::presentations::algebra_from_presentation;

    fn alg(name: &str) -> FiniteGradedAlgebra<Rationals> {
        algebra_from_presentation(&Rationals, &catalog(name).unwrap().presentation().unwrap()).unwrap()
    }

    #[test]
    fn regular_and_residue_are_modules() {
        let a = alg("I54");
        GradedModule::regular(&a).check(&a).unwrap();
        GradedModule::residue_field(&a).check(&a).unwrap();
    }

    #[test]
    fn socle_and_powers_of_i54() {
        let a = alg("I54");
        let s = socle(&a).unwrap();
        assert_eq!(s.module.dims(), vec![0, 0, 4]);
        let m = maximal_ideal(&a).unwrap();
        assert_eq!(m.module.dims(), vec![0, 4, 4]);
        m.module.check(&a).unwrap();
        let q = truncation(&a, 2).unwrap();
        assert_eq!(q.module.dims(), vec![1, 4]);
        q.module.check(&a).unwrap();
    }

    #[test]
    fn dual_of_maximal_ideal_reverses() {
        let a = alg("I54");
        let m = maximal_ideal(&a).unwrap().module.normalized();
        let d = matlis_dual(&a, &m).unwrap();
        assert_eq!(d.dims(), vec![4, 4]);
        let k = matlis_dual(&a, &GradedModule::residue_field(&a)).unwrap();
        assert_eq!(k.dims(), vec![1]);
    }

    #[test]
    fn skew_injective_hull_is_a_module() {
        let a = alg("caseIV");
        let i = injective_hull(&a).unwrap();
        assert_eq!(i.dims(), vec![1, 6, 6, 1]);
    }
}

//! Minimal graded free resolutions, built degree by degree.

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Echelon, SparseVec};
use crate::presentations::FiniteGradedAlgebra;
use crate::resolution::module::GradedModule;
use crate::series::Series2;

/// Free generator of `F_i` with its image under `d_i`.
#[derive(Clone, Debug)]
pub struct Generator<E> {
    pub degree: usize,
    /// in `F_{i-1}` (index `g * dim A + b` for `b_b e_g`), or in `M` for `i = 0`
    pub image: SparseVec<E>,
}

/// Minimal resolution `F_h -> ... -> F_0 -> M` over a finite graded algebra.
#[derive(Clone, Debug)]
pub struct MinimalResolution<F: Field> {
    algebra: FiniteGradedAlgebra<F>,
    module: GradedModule<F>,
    gens: Vec<Vec<Generator<F::Elem>>>,
    max_j: usize,
}

impl<F: Field> MinimalResolution<F> {
    pub fn algebra(&self) -> &FiniteGradedAlgebra<F> {
        &self.algebra
    }

    pub fn module(&self) -> &GradedModule<F> {
        &self.module
    }

    /// Homological length computed.
    pub fn length(&self) -> usize {
        self.gens.len() - 1
    }

    /// Largest internal degree any generator could have.
    pub fn max_internal_degree(&self) -> usize {
        self.max_j
    }

    pub fn generators(&self, i: usize) -> &[Generator<F::Elem>] {
        &self.gens[i]
    }

    pub fn rank(&self, i: usize) -> usize {
        self.gens[i].len()
    }

    /// `d_i(b_b e_g)` for generator `g` of `F_i`.
    pub fn image_of(&self, i: usize, g: usize, b: usize) -> SparseVec<F::Elem> {
        let f = self.algebra.field();
        let gen = &self.gens[i][g];
        if i == 0 {
            return self.module.act(&[(b, f.one())], &gen.image);
        }
        let n = self.algebra.dim();
        let mut acc = Vec::new();
        for (k, c) in &gen.image {
            let (g2, b2) = (k / n, k % n);
            for (b3, x) in self.algebra.mul_basis(b, b2) {
                acc.push((g2 * n + b3, f.mul(c, x)));
            }
        }
        linalg::collect_sparse(f, acc)
    }

    /// `d_i` of an arbitrary element of `F_i`.
    pub fn apply(&self, i: usize, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = self.algebra.field();
        let n = self.algebra.dim();
        let mut acc = Vec::new();
        for (k, c) in v {
            for (j, x) in self.image_of(i, k / n, k % n) {
                acc.push((j, f.mul(c, &x)));
            }
        }
        linalg::collect_sparse(f, acc)
    }

    /// Basis of `F_i` in internal degree `j`, ascending.
    fn basis_in_degree(&self, i: usize, j: usize) -> Vec<usize> {
        let n = self.algebra.dim();
        let mut out = Vec::new();
        for (g, gen) in self.gens[i].iter().enumerate() {
            if gen.degree <= j {
                out.extend(self.algebra.range(j - gen.degree).map(|b| g * n + b));
            }
        }
        out
    }

    /// Checks `d_{i-1} d_i = 0` and that every differential has entries in
    /// the maximal ideal.
    pub fn verify(&self) -> Result<()> {
        let n = self.algebra.dim();
        for i in 1..self.gens.len() {
            for (g, gen) in self.gens[i].iter().enumerate() {
                if gen.image.iter().any(|(k, _)| self.algebra.degree(k % n) == 0) {
                    return Err(Error::Invalid(format!("d_{i} is not minimal at generator {g}")));
                }
                if !self.apply(i - 1, &gen.image).is_empty() {
                    return Err(Error::Invalid(format!("d_{} d_{i} is nonzero at generator {g}", i - 1)));
                }
            }
        }
        Ok(())
    }

    /// `Tor_{i,j}(k, M)`: generator counts by internal degree.
    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::new(self.length(), self.max_j);
        for (i, gens) in self.gens.iter().enumerate() {
            for g in gens {
                t.entries[i][g.degree] += 1;
            }
        }
        t
    }
}

/// Minimal free resolution of `m` through homological degree `h`.
///
/// For each internal degree `j` and each `i`, the kernel of `d_{i-1}` in
/// degree `j` is computed and its vectors that are independent of the images
/// of older generators of `F_i` become new generators, in basis order.
pub fn minimal_resolution<F: Field>(
    a: &FiniteGradedAlgebra<F>,
    m: &GradedModule<F>,
    h: usize,
) -> Result<MinimalResolution<F>> {
    let f = a.field();
    let max_j = m.top_degree() + h * a.top_degree();
    let mut res = MinimalResolution {
        algebra: a.clone(),
        module: m.clone(),
        gens: vec![Vec::new(); h + 1],
        max_j,
    };
    for j in 0..=max_j {
        for i in 0..=h {
            let candidates: Vec<SparseVec<F::Elem>> = if i == 0 {
                m.range(j).map(|v| vec![(v, f.one())]).collect()
            } else {
                let cols = res.basis_in_degree(i - 1, j);
                if cols.is_empty() {
                    continue;
                }
                let n = a.dim();
                let images: Vec<SparseVec<F::Elem>> =
                    cols.iter().map(|&c| res.image_of(i - 1, c / n, c % n)).collect();
                linalg::kernel(f, &images)
                    .into_iter()
                    .map(|v| v.into_iter().map(|(k, c)| (cols[k], c)).collect())
                    .collect()
            };
            if candidates.is_empty() {
                continue;
            }
            let mut ech = Echelon::new(f.clone());
            for (g, gen) in res.gens[i].iter().enumerate() {
                if gen.degree < j {
                    for b in a.range(j - gen.degree) {
                        ech.insert(res.image_of(i, g, b));
                    }
                }
            }
            if ech.rank() == candidates.len() {
                continue;
            }
            for v in candidates {
                if ech.insert(v.clone()) {
                    res.gens[i].push(Generator { degree: j, image: v });
                }
            }
        }
    }
    Ok(res)
}

/// Betti table of `k` over `a`.
pub fn residue_betti<F: Field>(a: &FiniteGradedAlgebra<F>, h: usize) -> Result<BettiTable> {
    Ok(minimal_resolution(a, &GradedModule::residue_field(a), h)?.betti())
}

/// Betti table of an arbitrary finite module.
pub fn module_betti<F: Field>(a: &FiniteGradedAlgebra<F>, m: &GradedModule<F>, h: usize) -> Result<BettiTable> {
    Ok(minimal_resolution(a, m, h)?.betti())
}

/// `P_A(x, y) = sum |Tor_{i,j}(k, k)| x^i y^j` through `x^h`, complete in
/// `y` for those rows.
pub fn poincare_series<F: Field>(a: &FiniteGradedAlgebra<F>, h: usize) -> Result<Series2> {
    Ok(residue_betti(a, h)?.series())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::presentations::catalog::catalog;
    use crate::presentations::poly::indexed_names;
    use crate::presentations::{algebra_from_presentation, ExtQuotientPresentation, Kind};

    fn exterior(n: usize) -> FiniteGradedAlgebra<Rationals> {
        let p = ExtQuotientPresentation::new(Kind::Exterior, indexed_names("e", n), vec![]).unwrap();
        algebra_from_presentation(&Rationals, &p).unwrap()
    }

    #[test]
    fn exterior_on_two_generators() {
        let a = exterior(2);
        let res = minimal_resolution(&a, &GradedModule::residue_field(&a), 4).unwrap();
        res.verify().unwrap();
        let t = res.betti();
        assert!(t.is_diagonal());
        for i in 0..=4 {
            assert_eq!(t.get(i, i), i as u64 + 1);
        }
    }

    #[test]
    fn trivial_algebra() {
        let p = ExtQuotientPresentation::new(Kind::Exterior, vec![], vec![]).unwrap();
        let a = algebra_from_presentation(&Rationals, &p).unwrap();
        let t = residue_betti(&a, 3).unwrap();
        assert_eq!(t.nonzero().collect::<Vec<_>>(), vec![(0, 0, 1)]);
    }

    #[test]
    fn square_zero_algebra() {
        // k[x,y,z]/m^2: P(z) = 1/(1 - 3z)
        let p = ExtQuotientPresentation::parse(
            Kind::Commutative,
            indexed_names("x", 3),
            "x1^2, x2^2, x3^2, x1x2, x1x3, x2x3",
        )
        .unwrap();
        let a = algebra_from_presentation(&Rationals, &p).unwrap();
        let t = residue_betti(&a, 4).unwrap();
        for i in 0..=4 {
            assert_eq!(t.get(i, i), 3u64.pow(i as u32));
        }
        assert!(t.is_diagonal());
    }

    #[test]
    fn free_module_has_one_generator() {
        let a = exterior(3);
        let m = GradedModule::shifted_regular(&a, 2);
        let t = module_betti(&a, &m, 3).unwrap();
        assert_eq!(t.nonzero().collect::<Vec<_>>(), vec![(0, 2, 1)]);
    }

    #[test]
    fn case_xii_tor_3_4() {
        let p = catalog("caseXII").unwrap().presentation().unwrap();
        let a = algebra_from_presentation(&PrimeField::new(32003).unwrap(), &p).unwrap();
        let res = minimal_resolution(&a, &GradedModule::residue_field(&a), 3).unwrap();
        res.verify().unwrap();
        assert_eq!(res.betti().get(3, 4), 1);
        assert_eq!(res.betti().get(1, 1), 8);
    }
}

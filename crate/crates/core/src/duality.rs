//! Gorenstein algebras of trivectors, quadratic duals, trivial extensions
//! and apolar ideals.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::linalg::{self, SparseVec};
use crate::presentations::algebra::{algebra_from_presentation, FiniteGradedAlgebra, Symmetry};
use crate::presentations::poly::{self, Form, Kind, MonomialBasis};
use crate::presentations::presentation::{commutator, ideal_components, ExtQuotientPresentation, QuadraticPresentation};
use crate::presentations::trivector::{pair_from_index, Trivector};

fn require_nondegenerate(psi: &Trivector) -> Result<()> {
    if psi.is_nondegenerate(&Rationals)? {
        Ok(())
    } else {
        Err(Error::DegenerateTrivector(format!(
            "some vector contracts `{psi}` to zero in rank {}",
            psi.rank()
        )))
    }
}

/// Basis of the exterior 2-forms `g` with `sum g_jk Psi(e_s, e_j, e_k) = 0`
/// for every `s`, in reduced echelon form.
pub fn quadratic_relations_from_trivector(psi: &Trivector) -> Result<Vec<Form>> {
    require_nondegenerate(psi)?;
    let n = psi.rank();
    let pairs = n * (n - 1) / 2;
    let images: Vec<SparseVec<BigRational>> = (0..pairs)
        .map(|c| {
            let (j, k) = pair_from_index(n, c);
            (0..n)
                .filter_map(|s| {
                    let v = psi.eval(s, j, k);
                    (!v.is_zero()).then_some((s, v))
                })
                .collect()
        })
        .collect();
    let forms: Vec<Form> = linalg::kernel(&Rationals, &images)
        .into_iter()
        .map(|v| v.into_iter().map(|(c, x)| {
            let (j, k) = pair_from_index(n, c);
            (vec![j, k], x)
        }).collect())
        .collect();
    Ok(ExtQuotientPresentation::exterior(n, forms)?.relations().to_vec())
}

/// Presentation of the Gorenstein algebra attached to `psi`: the quadratic
/// relations, the kernel of `psi` on the surviving cubic monomials, and any
/// degree-4 survivors.
pub fn gorenstein_presentation(psi: &Trivector) -> Result<ExtQuotientPresentation> {
    let n = psi.rank();
    let quad = ExtQuotientPresentation::exterior(n, quadratic_relations_from_trivector(psi)?)?;
    let comps = ideal_components(&Rationals, &quad, 3)?;
    let (basis3, ech3) = &comps[3];
    let standard: Vec<usize> = (0..basis3.len()).filter(|&k| !ech3.has_pivot(k)).collect();
    let values: Vec<BigRational> = standard
        .iter()
        .map(|&k| {
            let m = &basis3.monos[k];
            psi.eval(m[0], m[1], m[2])
        })
        .collect();
    let Some(p0) = values.iter().position(|v| !v.is_zero()) else {
        return Err(Error::InconsistentForm(
            "the form vanishes on every cubic monomial surviving the quadratic relations".into(),
        ));
    };
    let m0 = basis3.monos[standard[p0]].clone();
    let mut cubic = Vec::new();
    for (i, &k) in standard.iter().enumerate() {
        if i == p0 {
            continue;
        }
        let mut f = Form::new();
        f.insert(basis3.monos[k].clone(), BigRational::one());
        if !values[i].is_zero() {
            f.insert(m0.clone(), -(&values[i] / &values[p0]));
        }
        cubic.push(f);
    }
    let with_cubic = quad.with_relations(cubic)?;
    let comps = ideal_components(&Rationals, &with_cubic, 4)?;
    let (basis4, ech4) = &comps[4];
    let quartic: Vec<Form> = (0..basis4.len())
        .filter(|&k| !ech4.has_pivot(k))
        .map(|k| [(basis4.monos[k].clone(), BigRational::one())].into_iter().collect())
        .collect();
    with_cubic.with_relations(quartic)
}

/// The Gorenstein algebra of a nondegenerate trivector over `field`.
pub fn gorenstein_from_trivector<F: Field>(field: &F, psi: &Trivector) -> Result<FiniteGradedAlgebra<F>> {
    algebra_from_presentation(field, &gorenstein_presentation(psi)?)
}

/// The relations `q_i = sum_{j<k} Psi(e_i, e_j, e_k) [X_j, X_k]` exactly as
/// produced by the skew-derivative recipe, one per generator.
pub fn koszul_dual_recipe(psi: &Trivector) -> Result<Vec<Vec<((usize, usize), BigRational)>>> {
    require_nondegenerate(psi)?;
    (0..psi.rank())
        .map(|i| {
            let mut terms = Vec::new();
            for ((j, k), c) in psi.skew_derivative(i)? {
                for (w, s) in commutator(j, k) {
                    terms.push((w, s * &c));
                }
            }
            Ok(terms)
        })
        .collect()
}

/// Koszul dual of the Gorenstein algebra of `psi` as a free-algebra quotient.
pub fn koszul_dual_from_trivector(psi: &Trivector) -> Result<QuadraticPresentation> {
    QuadraticPresentation::from_terms(psi.rank(), &koszul_dual_recipe(psi)?)
}

/// Rewrites a quadratic exterior or polynomial presentation as a quotient of
/// the free algebra: commutation rules plus the lifted relations.
pub fn to_tensor_presentation(p: &ExtQuotientPresentation) -> Result<QuadraticPresentation> {
    if !p.is_quadratic() {
        return Err(Error::NotQuadratic(
            "strip the non-quadratic relations (take the quadratic part) first".into(),
        ));
    }
    let n = p.rank();
    let one = BigRational::one();
    let mut rels: Vec<SparseVec<BigRational>> = Vec::new();
    for i in 0..n {
        for j in i..n {
            match p.kind() {
                Kind::Exterior if i == j => rels.push(vec![(i * n + i, one.clone())]),
                Kind::Exterior => rels.push(vec![(i * n + j, one.clone()), (j * n + i, one.clone())]),
                Kind::Commutative if i != j => rels.push(vec![(i * n + j, one.clone()), (j * n + i, -one.clone())]),
                Kind::Commutative => {}
            }
        }
    }
    for r in p.relations() {
        let mut v: SparseVec<BigRational> = r.iter().map(|(m, c)| (m[0] * n + m[1], c.clone())).collect();
        v.sort_by_key(|e| e.0);
        rels.push(v);
    }
    QuadraticPresentation::with_names(poly::indexed_names("x", n), rels)
}

/// `T(V*)/(W^perp)` for `T(V)/(W)`, generators renamed `X1..Xn`.
pub fn quadratic_dual(p: &QuadraticPresentation) -> QuadraticPresentation {
    let n = p.rank();
    let rows: Vec<Vec<BigRational>> = p
        .relations()
        .iter()
        .map(|r| linalg::sparse_to_dense(&Rationals, r, n * n))
        .collect();
    let perp = if rows.is_empty() {
        (0..n * n).map(|k| vec![(k, BigRational::one())]).collect()
    } else {
        linalg::nullspace(&Rationals, &rows, n * n)
    };
    let names = if p.names().first().is_some_and(|s| s.starts_with('X')) {
        poly::indexed_names("x", n)
    } else {
        poly::indexed_names("X", n)
    };
    QuadraticPresentation::with_names(names, perp).expect("indices in range")
}

/// Quadratic dual of an exterior or polynomial quotient.
pub fn quadratic_dual_of_quotient(p: &ExtQuotientPresentation) -> Result<QuadraticPresentation> {
    Ok(quadratic_dual(&to_tensor_presentation(p)?))
}

/// Same relation span, ignoring generator names.
pub fn same_span(a: &QuadraticPresentation, b: &QuadraticPresentation) -> bool {
    a.rank() == b.rank() && a.relations() == b.relations()
}

/// The trivial extension `A x| I(k)` with `I(k)_d = (A_{D+1-d})^*`.
///
/// The left action is `(a.phi)(x) = phi(x a)`; the right action is the
/// graded twist of the left one for skew algebras, equal to it for
/// commutative ones, and `(phi.a)(x) = phi(a x)` otherwise.
pub fn trivial_extension<F: Field>(a: &FiniteGradedAlgebra<F>) -> Result<FiniteGradedAlgebra<F>> {
    let f = a.field();
    let top = a.top_degree();
    let dim_a = a.dim();
    // new basis: (is_dual, old index, degree), sorted by degree, A first
    let mut elems: Vec<(bool, usize, usize)> = (0..dim_a)
        .map(|b| (false, b, a.degree(b)))
        .chain((0..dim_a).map(|b| (true, b, top + 1 - a.degree(b))))
        .collect();
    elems.sort_by_key(|&(dual, b, d)| (d, dual, b));
    let mut pos_a = vec![0; dim_a];
    let mut pos_dual = vec![0; dim_a];
    for (i, &(dual, b, _)) in elems.iter().enumerate() {
        if dual {
            pos_dual[b] = i;
        } else {
            pos_a[b] = i;
        }
    }
    let dim = elems.len();
    let mut dims = vec![0; top + 2];
    for &(_, _, d) in &elems {
        dims[d] += 1;
    }
    // left action: a . phi_b = sum_c [b in c a] phi_c
    let left = |x: usize, b: usize| -> SparseVec<F::Elem> {
        let db = a.degree(b);
        let dx = a.degree(x);
        if dx > db {
            return Vec::new();
        }
        let mut out: SparseVec<F::Elem> = a
            .range(db - dx)
            .filter_map(|c| {
                a.mul_basis(c, x)
                    .iter()
                    .find(|(k, _)| *k == b)
                    .map(|(_, v)| (pos_dual[c], v.clone()))
            })
            .collect();
        out.sort_by_key(|e| e.0);
        out
    };
    let right = |b: usize, x: usize| -> SparseVec<F::Elem> {
        match a.symmetry() {
            Symmetry::Commutative => left(x, b),
            Symmetry::Skew => {
                let dphi = top + 1 - a.degree(b);
                let v = left(x, b);
                if dphi % 2 == 1 && a.degree(x) % 2 == 1 {
                    linalg::scale(f, &f.neg(&f.one()), &v)
                } else {
                    v
                }
            }
            Symmetry::None => {
                let db = a.degree(b);
                let dx = a.degree(x);
                if dx > db {
                    return Vec::new();
                }
                let mut out: SparseVec<F::Elem> = a
                    .range(db - dx)
                    .filter_map(|c| {
                        a.mul_basis(x, c)
                            .iter()
                            .find(|(k, _)| *k == b)
                            .map(|(_, v)| (pos_dual[c], v.clone()))
                    })
                    .collect();
                out.sort_by_key(|e| e.0);
                out
            }
        }
    };
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for (i, &(di, bi, _)) in elems.iter().enumerate() {
        for (j, &(dj, bj, _)) in elems.iter().enumerate() {
            table[i][j] = match (di, dj) {
                (false, false) => {
                    let mut v: SparseVec<F::Elem> =
                        a.mul_basis(bi, bj).iter().map(|(k, c)| (pos_a[*k], c.clone())).collect();
                    v.sort_by_key(|e| e.0);
                    v
                }
                (false, true) => left(bi, bj),
                (true, false) => right(bi, bj),
                (true, true) => Vec::new(),
            };
        }
    }
    let labels = elems
        .iter()
        .map(|&(dual, b, _)| {
            if dual {
                format!("{}^*", a.labels()[b])
            } else {
                a.labels()[b].clone()
            }
        })
        .collect();
    FiniteGradedAlgebra::from_table(f.clone(), a.symmetry(), labels, &dims, table)
}

/// `d_i` applied to an exterior monomial: removes `i` with sign `(-1)^pos`.
fn contract(i: usize, m: &[usize]) -> Option<(Vec<usize>, bool)> {
    let p = m.iter().position(|&x| x == i)?;
    let mut out = m.to_vec();
    out.remove(p);
    Some((out, p % 2 == 1))
}

/// Apolar ideal of a cubic exterior form: all `D` with `D(f) = 0`, where the
/// symbol `x_{i1}..x_{id}` acts as `d_{i1} o ... o d_{id}`.
pub fn apolar_presentation(f: &Trivector) -> Result<ExtQuotientPresentation> {
    if f.is_zero() {
        return Err(Error::Precondition("apolar ideal of the zero form".into()));
    }
    let n = f.rank();
    let mut rels: Vec<Form> = Vec::new();
    for d in 1..=3.min(n) {
        let src = poly::monomials(Kind::Exterior, n, d);
        let target = MonomialBasis::new(Kind::Exterior, n, 3 - d);
        let images: Vec<SparseVec<BigRational>> = src
            .iter()
            .map(|m| {
                let mut acc: Form = Form::new();
                for (t, c) in f.terms() {
                    let mut cur: Option<(Vec<usize>, bool)> = Some((t.to_vec(), false));
                    for &i in m.iter().rev() {
                        cur = cur.and_then(|(mono, odd)| contract(i, &mono).map(|(r, s)| (r, odd ^ s)));
                    }
                    if let Some((r, odd)) = cur {
                        let c = if odd { -c.clone() } else { c.clone() };
                        *acc.entry(r).or_insert_with(BigRational::zero) += c;
                    }
                }
                acc.retain(|_, c| !c.is_zero());
                target.form_to_vec(&acc)
            })
            .collect();
        for k in linalg::kernel(&Rationals, &images) {
            rels.push(k.into_iter().map(|(i, c)| (src[i].clone(), c)).collect());
        }
    }
    if n >= 4 {
        for m in poly::monomials(Kind::Exterior, n, 4) {
            rels.push([(m, BigRational::one())].into_iter().collect());
        }
    }
    ExtQuotientPresentation::exterior(n, rels)
}

/// `S/I` for the apolar ideal `I` of `f` (characteristic 0 only).
pub fn apolar_gorenstein<F: Field>(field: &F, f: &Trivector) -> Result<FiniteGradedAlgebra<F>> {
    if field.characteristic() != 0 {
        return Err(Error::Precondition("apolarity is computed in characteristic 0".into()));
    }
    algebra_from_presentation(field, &apolar_presentation(f)?)
}

/// True when both presentations generate the same ideal through `maxdeg`.
pub fn same_ideal(a: &ExtQuotientPresentation, b: &ExtQuotientPresentation, maxdeg: usize) -> Result<bool> {
    if a.kind() != b.kind() || a.rank() != b.rank() {
        return Ok(false);
    }
    let ca = ideal_components(&Rationals, a, maxdeg)?;
    let cb = ideal_components(&Rationals, b, maxdeg)?;
    Ok(ca.into_iter().zip(cb).all(|((_, x), (_, y))| x.into_rref() == y.into_rref()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, PrimeField};

    fn form(entries: &[(&[usize], i64)]) -> Form {
        entries.iter().map(|(m, c)| (m.iter().map(|i| i - 1).collect(), rat(*c, 1))).collect()
    }

    fn case_iv() -> Trivector {
        Trivector::parse("123 345 256", None).unwrap()
    }

    #[test]
    fn case_iv_quadratic_relations() {
        let rels = quadratic_relations_from_trivector(&case_iv()).unwrap();
        assert_eq!(rels.len(), 9);
        let mine = ExtQuotientPresentation::exterior(6, rels).unwrap();
        let displayed = ExtQuotientPresentation::exterior(
            6,
            vec![
                form(&[(&[1, 2], 1), (&[4, 5], -1)]),
                form(&[(&[1, 3], 1), (&[5, 6], 1)]),
                form(&[(&[2, 6], 1), (&[3, 4], 1)]),
                form(&[(&[1, 4], 1)]),
                form(&[(&[1, 5], 1)]),
                form(&[(&[1, 6], 1)]),
                form(&[(&[2, 4], 1)]),
                form(&[(&[3, 6], 1)]),
                form(&[(&[4, 6], 1)]),
            ],
        )
        .unwrap();
        assert_eq!(mine, displayed);
    }

    #[test]
    fn case_v_relations_are_monomials() {
        let psi = Trivector::parse("123 456", None).unwrap();
        let rels = quadratic_relations_from_trivector(&psi).unwrap();
        assert_eq!(rels.len(), 9);
        for r in &rels {
            assert_eq!(r.len(), 1);
            let m = r.keys().next().unwrap();
            assert!(m[0] < 3 && m[1] >= 3);
        }
    }

    #[test]
    fn degenerate_rejected() {
        let psi = Trivector::parse("123", Some(4)).unwrap();
        assert!(matches!(quadratic_relations_from_trivector(&psi), Err(Error::DegenerateTrivector(_))));
        assert!(gorenstein_presentation(&psi).is_err());
    }

    #[test]
    fn case_iv_gorenstein() {
        let g = gorenstein_from_trivector(&Rationals, &case_iv()).unwrap();
        assert_eq!(g.dims(), vec![1, 6, 6, 1]);
        assert_eq!(g.socle().len(), 1);
        assert!(g.check_associative().is_ok());
        assert!(g.check_symmetry().is_ok());
        // the displayed cubic generator e2e3e5 lies in the ideal
        let p = gorenstein_presentation(&case_iv()).unwrap();
        let q = p.with_relations(vec![form(&[(&[2, 3, 5], 1)])]).unwrap();
        assert!(same_ideal(&p, &q, 4).unwrap());
    }

    #[test]
    fn case_v_cubic_quotient() {
        let psi = Trivector::parse("123 456", None).unwrap();
        let p = gorenstein_presentation(&psi).unwrap();
        let cubic: Vec<_> = p.relations_of_degree(3).cloned().collect();
        assert_eq!(cubic.len(), 1);
        let expect = ExtQuotientPresentation::exterior(6, vec![form(&[(&[1, 2, 3], 1), (&[4, 5, 6], -1)])]).unwrap();
        assert_eq!(cubic, expect.relations());
    }

    #[test]
    fn case_iv_dual_matches_displayed_presentation() {
        let dual = koszul_dual_from_trivector(&case_iv()).unwrap();
        let c = |a: usize, b: usize| commutator(a - 1, b - 1);
        let sum = |x: Vec<((usize, usize), BigRational)>, y: Vec<((usize, usize), BigRational)>, s: i64| {
            let mut v = x;
            v.extend(y.into_iter().map(|(w, c)| (w, c * rat(s, 1))));
            v
        };
        let displayed = QuadraticPresentation::from_terms(
            6,
            &[
                sum(c(1, 2), c(4, 5), 1),
                sum(c(3, 4), c(2, 6), -1),
                sum(c(1, 3), c(5, 6), -1),
                c(2, 3),
                c(2, 5),
                c(3, 5),
            ],
        )
        .unwrap();
        assert!(same_span(&dual, &displayed));
    }

    #[test]
    fn recipe_agrees_with_annihilator() {
        for text in ["123 345 256", "123 456", "143 253"] {
            let psi = Trivector::parse(text, None).unwrap();
            let quad = ExtQuotientPresentation::exterior(psi.rank(), quadratic_relations_from_trivector(&psi).unwrap()).unwrap();
            let via_perp = quadratic_dual_of_quotient(&quad).unwrap();
            let recipe = koszul_dual_from_trivector(&psi).unwrap();
            assert!(same_span(&via_perp, &recipe), "{text}");
            assert_eq!(recipe.relation_count(), psi.rank() * (psi.rank() - 1) / 2 - quad.relations().len());
        }
    }

    #[test]
    fn dual_of_nothing_and_of_exterior() {
        let free = QuadraticPresentation::free(2);
        assert_eq!(quadratic_dual(&free).relation_count(), 4);
        let e = ExtQuotientPresentation::exterior(3, vec![]).unwrap();
        let d = quadratic_dual_of_quotient(&e).unwrap();
        let comm = QuadraticPresentation::from_terms(3, &[commutator(0, 1), commutator(0, 2), commutator(1, 2)]).unwrap();
        assert!(same_span(&d, &comm));
    }

    #[test]
    fn dual_is_an_involution() {
        let psi = case_iv();
        let quad = ExtQuotientPresentation::exterior(6, quadratic_relations_from_trivector(&psi).unwrap()).unwrap();
        let t = to_tensor_presentation(&quad).unwrap();
        assert!(same_span(&quadratic_dual(&quadratic_dual(&t)), &t));
        let g = gorenstein_presentation(&psi).unwrap();
        assert!(matches!(to_tensor_presentation(&g), Err(Error::NotQuadratic(_))));
    }

    #[test]
    fn trivial_extension_of_one_generator() {
        let e = ExtQuotientPresentation::exterior(1, vec![]).unwrap();
        let a = algebra_from_presentation(&Rationals, &e).unwrap();
        let g = trivial_extension(&a).unwrap();
        assert_eq!(g.dims(), vec![1, 2, 1]);
        assert!(g.check_associative().is_ok());
        assert!(g.check_symmetry().is_ok());
        assert_eq!(g.socle().len(), 1);
    }

    #[test]
    fn trivial_extension_of_r20() {
        let p = ExtQuotientPresentation::parse(
            Kind::Exterior,
            poly::indexed_names("x", 5),
            "x1x4+x2x3, x1x5+x2x4, x2x5+x3x4",
        )
        .unwrap();
        let f = PrimeField::new(32003).unwrap();
        let a = algebra_from_presentation(&f, &p).unwrap();
        let g = trivial_extension(&a).unwrap();
        assert_eq!(g.dims(), vec![1, 12, 12, 1]);
        assert!(g.check_symmetry().is_ok());
        assert!(g.check_associative().is_ok());
        assert_eq!(g.socle().len(), 1);
    }

    #[test]
    fn apolar_matches_linear_system() {
        for text in ["123 345 256", "123 456", "143 253"] {
            let psi = Trivector::parse(text, None).unwrap();
            let a = apolar_presentation(&psi).unwrap();
            let g = gorenstein_presentation(&psi).unwrap();
            assert!(same_ideal(&a, &g, 5).unwrap(), "{text}");
        }
        let e3 = Trivector::parse("123", None).unwrap();
        let alg = apolar_gorenstein(&Rationals, &e3).unwrap();
        assert_eq!(alg.dims(), vec![1, 3, 3, 1]);
        assert!(apolar_gorenstein(&Rationals, &Trivector::from_terms(3, vec![]).unwrap()).is_err());
    }
}

//! Groebner bases of homogeneous ideals in exterior and polynomial rings,
//! computed degree by degree from the ideal components.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::linalg;
use crate::presentations::poly::{format_monomial, MonomialBasis};
use crate::presentations::presentation::ideal_components;
use crate::presentations::{ExtQuotientPresentation, Form, Kind, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrderKind {
    Lex,
    GRevLex,
}

/// Monomial order given by a ranking of the variables, largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: MonomialOrderKind,
    /// `rank[v]` is 0 for the largest variable
    rank: Vec<usize>,
}

impl MonomialOrder {
    /// Graded reverse lexicographic with `x1 > x2 > ... > xn`.
    pub fn grevlex(n: usize) -> Self {
        Self {
            kind: MonomialOrderKind::GRevLex,
            rank: (0..n).collect(),
        }
    }

    /// Graded lexicographic with `x1 > x2 > ... > xn`.
    pub fn lex(n: usize) -> Self {
        Self {
            kind: MonomialOrderKind::Lex,
            rank: (0..n).collect(),
        }
    }

    /// Same kind with variables `largest_first[0] > largest_first[1] > ...`.
    pub fn with_ranking(kind: MonomialOrderKind, largest_first: &[usize]) -> Result<Self> {
        let n = largest_first.len();
        let mut rank = vec![usize::MAX; n];
        for (r, &v) in largest_first.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(Error::Invalid("variable ranking is not a permutation".into()));
            }
            rank[v] = r;
        }
        Ok(Self { kind, rank })
    }

    fn exponents(&self, m: &[usize]) -> Vec<usize> {
        let mut e = vec![0; self.rank.len()];
        for &v in m {
            e[self.rank[v]] += 1;
        }
        e
    }

    /// Compares monomials of equal degree.
    pub fn compare(&self, a: &[usize], b: &[usize]) -> Ordering {
        let (ea, eb) = (self.exponents(a), self.exponents(b));
        a.len().cmp(&b.len()).then_with(|| match self.kind {
            MonomialOrderKind::Lex => ea.cmp(&eb),
            MonomialOrderKind::GRevLex => {
                for k in (0..ea.len()).rev() {
                    if ea[k] != eb[k] {
                        return eb[k].cmp(&ea[k]);
                    }
                }
                Ordering::Equal
            }
        })
    }
}

/// Reduced Groebner basis element: monic, leading monomial first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGbElement {
    pub terms: Vec<(Monomial, BigRational)>,
}

impl GradedGbElement {
    pub fn leading(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn degree(&self) -> usize {
        self.terms[0].0.len()
    }

    pub fn to_form(&self) -> Form {
        self.terms.iter().cloned().collect()
    }

    /// Compact rendering such as `e3e8-e2e9`.
    pub fn format(&self, names: &[String]) -> String {
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                s.push('-');
            } else if k > 0 {
                s.push('+');
            }
            let a = c.abs();
            if !a.is_one() {
                s.push_str(&a.to_string());
            }
            s.push_str(&format_monomial(m, names));
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct GradedGroebnerBasis {
    pub kind: Kind,
    pub names: Vec<String>,
    pub order: MonomialOrder,
    /// ascending by leading monomial within each degree, degrees ascending
    pub elements: Vec<GradedGbElement>,
    pub complete_through: usize,
    /// standard monomials per degree
    pub standard_counts: Vec<usize>,
}

impl GradedGroebnerBasis {
    pub fn is_quadratic(&self) -> bool {
        self.elements.iter().all(|g| g.degree() == 2)
    }

    pub fn formatted(&self) -> Vec<String> {
        self.elements.iter().map(|g| g.format(&self.names)).collect()
    }
}

impl fmt::Display for GradedGroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "| {} |", self.formatted().join(" "))
    }
}

/// Multiset inclusion of sorted monomials.
fn divides(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Reduced Groebner basis of the ideal of `p` through degree `maxdeg`.
///
/// Each degree component of the ideal is put in reduced echelon form with
/// the largest monomial as pivot; rows whose leading monomials are not
/// multiples of earlier leading monomials are the new basis elements.
pub fn graded_groebner(p: &ExtQuotientPresentation, order: &MonomialOrder, maxdeg: usize) -> Result<GradedGroebnerBasis> {
    let n = p.rank();
    if order.rank.len() != n {
        return Err(Error::Invalid("order and ring have different numbers of variables".into()));
    }
    let comps = ideal_components(&Rationals, p, maxdeg)?;
    let mut elements: Vec<GradedGbElement> = Vec::new();
    let mut standard_counts = Vec::new();
    for (basis, ech) in comps {
        // permute columns so that column 0 is the largest monomial
        let mut perm: Vec<usize> = (0..basis.len()).collect();
        perm.sort_by(|&a, &b| order.compare(&basis.monos[b], &basis.monos[a]));
        let mut col_of = vec![0; basis.len()];
        for (c, &k) in perm.iter().enumerate() {
            col_of[k] = c;
        }
        let rows = ech.rows().iter().map(|r| {
            let mut v: Vec<(usize, BigRational)> = r.iter().map(|(k, x)| (col_of[*k], x.clone())).collect();
            v.sort_by_key(|e| e.0);
            v
        });
        let rref = linalg::rref(&Rationals, rows);
        standard_counts.push(basis.len() - rref.len());
        let mut new: Vec<GradedGbElement> = rref
            .into_iter()
            .map(|row| GradedGbElement {
                terms: row.into_iter().map(|(c, x)| (basis.monos[perm[c]].clone(), x)).collect(),
            })
            .filter(|g| !elements.iter().any(|h| divides(h.leading(), g.leading())))
            .collect();
        new.sort_by(|a, b| order.compare(a.leading(), b.leading()));
        elements.extend(new);
    }
    Ok(GradedGroebnerBasis {
        kind: p.kind(),
        names: p.names().to_vec(),
        order: order.clone(),
        elements,
        complete_through: maxdeg,
        standard_counts,
    })
}

/// Reduced basis of an exterior ideal.
pub fn skew_groebner(p: &ExtQuotientPresentation, order: &MonomialOrder, maxdeg: usize) -> Result<GradedGroebnerBasis> {
    if p.kind() != Kind::Exterior {
        return Err(Error::Precondition("skew_groebner expects an exterior presentation".into()));
    }
    graded_groebner(p, order, maxdeg)
}

/// Standard monomials of degree `d` outside the leading-monomial ideal.
pub fn standard_monomials(gb: &GradedGroebnerBasis, d: usize) -> Vec<Monomial> {
    MonomialBasis::new(gb.kind, gb.names.len(), d)
        .monos
        .into_iter()
        .filter(|m| !gb.elements.iter().any(|g| divides(g.leading(), m)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::catalog::catalog;
    use crate::presentations::poly::indexed_names;

    #[test]
    fn single_monomial() {
        let p = ExtQuotientPresentation::parse(Kind::Exterior, indexed_names("x", 3), "x1x2").unwrap();
        let gb = skew_groebner(&p, &MonomialOrder::grevlex(3), 3).unwrap();
        assert_eq!(gb.formatted(), vec!["x1x2"]);
    }

    #[test]
    fn grevlex_order() {
        let o = MonomialOrder::grevlex(9);
        // e3e8 > e2e9 and e2e4 > e1e8
        assert_eq!(o.compare(&[2, 7], &[1, 8]), Ordering::Greater);
        assert_eq!(o.compare(&[1, 3], &[0, 7]), Ordering::Greater);
        assert_eq!(o.compare(&[7, 8], &[6, 8]), Ordering::Less);
        let l = MonomialOrder::lex(3);
        assert_eq!(l.compare(&[0, 2], &[1, 1]), Ordering::Greater);
    }

    #[test]
    fn r20_standard_monomials() {
        let p = catalog("R20").unwrap().presentation().unwrap();
        let gb = graded_groebner(&p, &MonomialOrder::grevlex(5), 3).unwrap();
        assert_eq!(gb.standard_counts, vec![1, 5, 7, 0]);
        assert_eq!(standard_monomials(&gb, 2).len(), 7);
    }

    #[test]
    fn commutative_basis_can_be_cubic() {
        // (xy, x^2 - y^2) in k[x,y] needs y^3 under grevlex x > y
        let p = ExtQuotientPresentation::parse(Kind::Commutative, indexed_names("x", 2), "x1x2, x1^2 - x2^2").unwrap();
        let gb = graded_groebner(&p, &MonomialOrder::grevlex(2), 4).unwrap();
        assert!(!gb.is_quadratic());
        assert_eq!(gb.formatted(), vec!["x1x2", "x1^2-x2^2", "x2^3"]);
    }

    #[test]
    fn case77_matches_listed_basis() {
        let e = catalog("case77").unwrap();
        let names = indexed_names("e", 9);
        let ideal = e.expect("skew_ideal").unwrap().value.clone();
        let p = ExtQuotientPresentation::parse(Kind::Exterior, names, &ideal).unwrap();
        let gb = skew_groebner(&p, &MonomialOrder::grevlex(9), 4).unwrap();
        let listed: Vec<String> = e.expect("skew_gb").unwrap().value.split(',').map(|s| s.trim().to_string()).collect();
        assert_eq!(gb.formatted(), listed);
        assert!(gb.is_quadratic());
    }
}

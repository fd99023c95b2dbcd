//! Quotients of exterior / polynomial algebras and of free algebras by
//! homogeneous relations.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::linalg::{self, Echelon, SparseVec};
use crate::presentations::poly::{self, form_degree, Form, Kind, MonomialBasis};

/// Exterior (or, with [`Kind::Commutative`], polynomial) algebra on `n`
/// degree-one generators modulo homogeneous relations.
///
/// Relations are kept per degree in reduced echelon form over `Q`, so two
/// presentations compare equal exactly when their relation spans agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtQuotientPresentation {
    kind: Kind,
    names: Vec<String>,
    relations: Vec<Form>,
}

impl ExtQuotientPresentation {
    pub fn new(kind: Kind, names: Vec<String>, relations: Vec<Form>) -> Result<Self> {
        let n = names.len();
        for r in &relations {
            form_degree(r)?;
            if r.keys().flatten().any(|&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: n + 1, rank: n });
            }
        }
        Ok(Self {
            kind,
            relations: echelonize_forms(kind, n, &relations),
            names,
        })
    }

    /// Parses a comma-separated relation list in the given variables.
    pub fn parse(kind: Kind, names: Vec<String>, text: &str) -> Result<Self> {
        let rels = poly::parse_forms(text, kind, &names)?;
        Self::new(kind, names, rels)
    }

    pub fn exterior(n: usize, relations: Vec<Form>) -> Result<Self> {
        Self::new(Kind::Exterior, poly::indexed_names("e", n), relations)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relations(&self) -> &[Form] {
        &self.relations
    }

    pub fn relations_of_degree(&self, d: usize) -> impl Iterator<Item = &Form> {
        self.relations.iter().filter(move |r| r.keys().next().map(|m| m.len()) == Some(d))
    }

    pub fn max_relation_degree(&self) -> usize {
        self.relations.iter().filter_map(|r| r.keys().next().map(|m| m.len())).max().unwrap_or(0)
    }

    pub fn is_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.keys().all(|m| m.len() == 2))
    }

    /// The presentation with only its degree-2 relations.
    pub fn quadratic_part(&self) -> Self {
        Self {
            kind: self.kind,
            names: self.names.clone(),
            relations: self.relations_of_degree(2).cloned().collect(),
        }
    }

    /// Adds relations, re-echelonizing.
    pub fn with_relations(&self, extra: Vec<Form>) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.extend(extra);
        Self::new(self.kind, self.names.clone(), rels)
    }

    pub fn format_relations(&self) -> Vec<String> {
        self.relations.iter().map(|r| poly::format_form(r, &self.names)).collect()
    }
}

impl fmt::Display for ExtQuotientPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ambient = match self.kind {
            Kind::Exterior => "E",
            Kind::Commutative => "k",
        };
        write!(f, "{ambient}[{}]/({})", self.names.join(","), self.format_relations().join(", "))
    }
}

/// Reduced echelon basis per degree; output sorted by degree.
fn echelonize_forms(kind: Kind, n: usize, forms: &[Form]) -> Vec<Form> {
    let mut degrees: Vec<usize> = forms.iter().filter_map(|f| f.keys().next().map(|m| m.len())).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut out = Vec::new();
    for d in degrees {
        let basis = MonomialBasis::new(kind, n, d);
        let rows = forms
            .iter()
            .filter(|f| f.keys().next().map(|m| m.len()) == Some(d))
            .map(|f| basis.form_to_vec(f));
        for row in linalg::rref(&Rationals, rows) {
            out.push(basis.vec_to_form(&row));
        }
    }
    out
}

/// Degree components `I_0 .. I_maxdeg` of the two-sided ideal generated by
/// the relations, each as an echelon basis over its [`MonomialBasis`].
pub fn ideal_components<F: Field>(
    field: &F,
    p: &ExtQuotientPresentation,
    maxdeg: usize,
) -> Result<Vec<(MonomialBasis, Echelon<F>)>> {
    let n = p.rank();
    let mut out: Vec<(MonomialBasis, Echelon<F>)> = Vec::new();
    for d in 0..=maxdeg {
        let basis = MonomialBasis::new(p.kind, n, d);
        let mut ech = Echelon::new(field.clone());
        if d > 0 {
            let (prev_basis, prev) = &out[d - 1];
            // in a graded-commutative ring left and right ideals coincide
            for row in prev.rows() {
                for i in 0..n {
                    let mut acc: Vec<(usize, F::Elem)> = Vec::new();
                    for (k, c) in row {
                        if let Some((m, odd)) = poly::mono_mul(p.kind, &prev_basis.monos[*k], &[i]) {
                            let c = if odd { field.neg(c) } else { c.clone() };
                            acc.push((basis.index(&m), c));
                        }
                    }
                    ech.insert(linalg::collect_sparse(field, acc));
                }
            }
        }
        for r in p.relations_of_degree(d) {
            let v: Result<Vec<(usize, F::Elem)>> = basis
                .form_to_vec(r)
                .into_iter()
                .map(|(k, c)| Ok((k, field.from_rational(&c)?)))
                .collect();
            ech.insert(v?);
        }
        out.push((basis, ech));
    }
    Ok(out)
}

/// Free associative algebra on `X1..Xn` modulo degree-2 relations, each a
/// vector over the words `XaXb` indexed by `a*n + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPresentation {
    names: Vec<String>,
    relations: Vec<SparseVec<BigRational>>,
}

impl QuadraticPresentation {
    pub fn new(n: usize, relations: Vec<SparseVec<BigRational>>) -> Result<Self> {
        Self::with_names(poly::indexed_names("X", n), relations)
    }

    pub fn with_names(names: Vec<String>, relations: Vec<SparseVec<BigRational>>) -> Result<Self> {
        let n = names.len();
        for r in &relations {
            if r.iter().any(|(k, _)| *k >= n * n) {
                return Err(Error::Invalid("word index out of range".into()));
            }
        }
        let relations = linalg::rref(&Rationals, relations.into_iter().map(|r| {
            let mut r: Vec<_> = r.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            r.sort_by_key(|e| e.0);
            linalg::collect_sparse(&Rationals, r)
        }));
        Ok(Self { names, relations })
    }

    /// Builds relations from lists of `((a, b), c)` word terms.
    pub fn from_terms(n: usize, relations: &[Vec<((usize, usize), BigRational)>]) -> Result<Self> {
        let rels = relations
            .iter()
            .map(|r| r.iter().map(|((a, b), c)| (a * n + b, c.clone())).collect())
            .collect();
        Self::new(n, rels)
    }

    /// Parses comma-separated relations built from words (`X1X2`, `e2*e9`)
    /// and commutators (`[X1,X2]`), e.g. `[X1,X2]+[X4,X5], X3X3`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut rels = Vec::new();
        for part in split_top_level(text.trim().trim_start_matches('(').trim_end_matches(')')) {
            if part.trim().is_empty() {
                continue;
            }
            rels.push(parse_nc_relation(n, &part)?);
        }
        Self::from_terms(n, &rels)
    }

    /// The free algebra: no relations.
    pub fn free(n: usize) -> Self {
        Self {
            names: poly::indexed_names("X", n),
            relations: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relations(&self) -> &[SparseVec<BigRational>] {
        &self.relations
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    /// Relations mapped into another field.
    pub fn relations_in<F: Field>(&self, field: &F) -> Result<Vec<SparseVec<F::Elem>>> {
        self.relations
            .iter()
            .map(|r| {
                let v: Result<Vec<_>> = r.iter().map(|(k, c)| Ok((*k, field.from_rational(c)?))).collect();
                Ok(linalg::collect_sparse(field, v?))
            })
            .collect()
    }

    /// Relation `r` as `((a, b), c)` word terms.
    pub fn relation_terms(&self, r: usize) -> Vec<((usize, usize), BigRational)> {
        let n = self.rank();
        self.relations[r].iter().map(|(k, c)| ((k / n, k % n), c.clone())).collect()
    }

    pub fn format_relation(&self, r: usize) -> String {
        format_word_vector(&self.names, &self.relations[r])
    }

    pub fn format_relations(&self) -> Vec<String> {
        (0..self.relations.len()).map(|r| self.format_relation(r)).collect()
    }
}

pub(crate) fn format_word_vector(names: &[String], v: &[(usize, BigRational)]) -> String {
    let n = names.len();
    if v.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (k, c)) in v.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            s.push_str(&format!("{a}*"));
        }
        s.push_str(&names[k / n]);
        s.push_str(&names[k % n]);
    }
    s
}

impl fmt::Display for QuadraticPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T[{}]/({})", self.names.join(","), self.format_relations().join(", "))
    }
}

fn split_top_level(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in text.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' | ';' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out
}

/// Generator index of `X7`, `x7` or `e7` (1-based in text).
fn parse_letter(tok: &str, n: usize) -> Result<usize> {
    let tok = tok.trim();
    let digits = tok.trim_start_matches(['X', 'x', 'e']);
    if digits.len() == tok.len() || digits.is_empty() {
        return Err(Error::Parse(format!("bad generator `{tok}`")));
    }
    let i: usize = digits.parse().map_err(|_| Error::Parse(format!("bad generator `{tok}`")))?;
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    Ok(i - 1)
}

fn parse_nc_relation(n: usize, text: &str) -> Result<Vec<((usize, usize), BigRational)>> {
    let mut terms = Vec::new();
    // split at top-level signs
    let mut pieces: Vec<String> = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in text.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' | '-' if depth == 0 && !cur.trim().is_empty() && !cur.trim_end().ends_with('*') => {
                pieces.push(std::mem::take(&mut cur));
            }
            _ => {}
        }
        cur.push(ch);
    }
    pieces.push(cur);
    for piece in pieces {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let start = piece
            .find(['[', 'X', 'x', 'e'])
            .ok_or_else(|| Error::Parse(format!("term `{piece}` has no generators")))?;
        let c = crate::presentations::trivector::parse_coefficient(&piece[..start])?;
        let body = &piece[start..];
        if let Some(inner) = body.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unclosed commutator in `{piece}`")))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("commutator needs two entries in `{piece}`")))?;
            for (w, s) in commutator(parse_letter(a, n)?, parse_letter(b, n)?) {
                terms.push((w, s * &c));
            }
        } else {
            let letters: Vec<usize> = body
                .replace('*', " ")
                .replace(['X', 'x', 'e'], " X")
                .split_whitespace()
                .map(|t| parse_letter(t, n))
                .collect::<Result<_>>()?;
            if letters.len() != 2 {
                return Err(Error::NotQuadratic(format!("word `{body}` has length {}", letters.len())));
            }
            terms.push(((letters[0], letters[1]), c));
        }
    }
    Ok(terms)
}

/// `[Xa, Xb]` as word terms.
pub fn commutator(a: usize, b: usize) -> Vec<((usize, usize), BigRational)> {
    if a == b {
        return Vec::new();
    }
    vec![((a, b), BigRational::one()), ((b, a), -BigRational::one())]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn equality_is_up_to_span() {
        let names = poly::indexed_names("x", 4);
        let a = ExtQuotientPresentation::parse(Kind::Exterior, names.clone(), "x1x2 + x3x4, x1x2 - x3x4").unwrap();
        let b = ExtQuotientPresentation::parse(Kind::Exterior, names, "x3x4, x2x1").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_inhomogeneous() {
        let names = poly::indexed_names("x", 3);
        assert!(matches!(
            ExtQuotientPresentation::parse(Kind::Exterior, names, "x1x2 + x1x2x3"),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn ideal_components_of_r20() {
        let names = poly::indexed_names("x", 5);
        let p = ExtQuotientPresentation::parse(Kind::Exterior, names, "x1x4+x2x3, x1x5+x2x4, x2x5+x3x4").unwrap();
        let comps = ideal_components(&Rationals, &p, 3).unwrap();
        assert_eq!(comps[2].1.rank(), 3);
        // R20 has no degree 3 part: the ideal is all of E_3
        assert_eq!(comps[3].1.rank(), 10);
    }

    #[test]
    fn quadratic_presentation_echelonizes() {
        let a = QuadraticPresentation::from_terms(2, &[commutator(0, 1), commutator(1, 0)]).unwrap();
        assert_eq!(a.relation_count(), 1);
        assert_eq!(a.relation_terms(0), vec![((0, 1), rat(1, 1)), ((1, 0), rat(-1, 1))]);
        assert_eq!(a.format_relation(0), "X1X2 - X2X1");
    }

    #[test]
    fn parses_commutators_and_words() {
        let a = QuadraticPresentation::parse(3, "[X1,X2] - [X3,X1], X2X2").unwrap();
        let b = QuadraticPresentation::parse(3, "x1x2 - x2x1 + x1*x3 - x3*x1, x2*x2").unwrap();
        assert_eq!(a, b);
        let c = QuadraticPresentation::parse(3, "e1*e2-e2*e1,-e1*e3+e3*e1").unwrap();
        assert_eq!(c.relation_count(), 2);
        assert!(QuadraticPresentation::parse(3, "X1X2X3").is_err());
        assert!(QuadraticPresentation::parse(3, "[X1,X4]").is_err());
    }
}

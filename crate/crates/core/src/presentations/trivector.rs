//! Skew-symmetric 3-forms.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;

/// Exterior 2-form as `(i, j) -> coefficient` with `i < j` (0-based).
pub type TwoForm = BTreeMap<(usize, usize), BigRational>;

/// A skew-symmetric trilinear form on an `n`-dimensional space, stored by its
/// coefficients on strictly increasing index triples (0-based internally).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivector {
    rank: usize,
    terms: BTreeMap<[usize; 3], BigRational>,
}

/// Sign of the permutation sorting three distinct indices, or `None` when an
/// index repeats.
fn sort_triple(t: [usize; 3]) -> Option<([usize; 3], bool)> {
    let [a, b, c] = t;
    if a == b || b == c || a == c {
        return None;
    }
    let mut s = t;
    let mut odd = false;
    for i in 0..3 {
        for j in 0..2 - i {
            if s[j] > s[j + 1] {
                s.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    Some((s, odd))
}

impl Trivector {
    /// Builds a form from (possibly unsorted, 0-based) triples, absorbing the
    /// sorting sign into the coefficient and merging repeats.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = ([usize; 3], BigRational)>) -> Result<Self> {
        let mut map: BTreeMap<[usize; 3], BigRational> = BTreeMap::new();
        for (t, c) in terms {
            let (sorted, odd) = sort_triple(t).ok_or_else(|| {
                Error::Parse(format!(
                    "repeated index in triple {}{}{}",
                    t[0] + 1,
                    t[1] + 1,
                    t[2] + 1
                ))
            })?;
            if sorted[2] >= rank {
                return Err(Error::IndexOutOfRange {
                    index: sorted[2] + 1,
                    rank,
                });
            }
            let c = if odd { -c } else { c };
            *map.entry(sorted).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self { rank, terms: map })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Same form viewed in a space of different dimension.
    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        Self::from_terms(rank, self.terms.clone())
    }

    pub fn terms(&self) -> &BTreeMap<[usize; 3], BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Psi(e_i, e_j, e_k)` for arbitrary 0-based indices.
    pub fn eval(&self, i: usize, j: usize, k: usize) -> BigRational {
        match sort_triple([i, j, k]) {
            None => BigRational::zero(),
            Some((s, odd)) => match self.terms.get(&s) {
                None => BigRational::zero(),
                Some(c) if odd => -c,
                Some(c) => c.clone(),
            },
        }
    }

    /// Left skew-derivative `dPsi/de^i` (0-based `i`): the 2-form
    /// `sum_{j<k} Psi(e_i, e_j, e_k) e^j ^ e^k`.
    pub fn skew_derivative(&self, i: usize) -> Result<TwoForm> {
        if i >= self.rank {
            return Err(Error::IndexOutOfRange {
                index: i + 1,
                rank: self.rank,
            });
        }
        let mut out = TwoForm::new();
        for (t, c) in &self.terms {
            let Some(pos) = t.iter().position(|&x| x == i) else {
                continue;
            };
            let rest: Vec<usize> = t.iter().copied().filter(|&x| x != i).collect();
            // moving e^i to the front costs `pos` transpositions
            let c = if pos % 2 == 1 { -c.clone() } else { c.clone() };
            *out.entry((rest[0], rest[1])).or_insert_with(BigRational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// All `n` skew-derivatives as rows over the pairs `(j, k)`, `j < k`,
    /// ordered lexicographically (the column order of [`pair_index`]).
    pub fn derivative_matrix<F: Field>(&self, field: &F) -> Result<Vec<Vec<F::Elem>>> {
        let n = self.rank;
        let cols = n * (n.saturating_sub(1)) / 2;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = vec![field.zero(); cols];
            for ((j, k), c) in self.skew_derivative(i)? {
                row[pair_index(n, j, k)] = field.from_rational(&c)?;
            }
            rows.push(row);
        }
        Ok(rows)
    }

    /// True when `v -> i_v Psi` is injective, i.e. the derivatives have rank `n`.
    pub fn is_nondegenerate<F: Field>(&self, field: &F) -> Result<bool> {
        let m = self.derivative_matrix(field)?;
        let r = linalg::rank(field, m.iter().map(|row| linalg::dense_to_sparse(field, row)));
        Ok(r == self.rank)
    }

    /// Parses digit-triple notation (`"129 138 -2*167"`) or explicit wedge
    /// notation (`"e1^e4^e3 + e2^e5^e3"`). The rank is the largest index
    /// mentioned unless `rank` is given.
    pub fn parse(text: &str, rank: Option<usize>) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty trivector".into()));
        }
        let raw = if text.contains('e') || text.contains('E') {
            parse_explicit(text)?
        } else {
            parse_digit_triples(text)?
        };
        if raw.is_empty() {
            return Err(Error::Parse("empty trivector".into()));
        }
        let max = raw
            .iter()
            .flat_map(|(t, _)| t.iter().copied())
            .max()
            .unwrap_or(0);
        let n = rank.unwrap_or(max + 1);
        Self::from_terms(n, raw)
    }
}

/// Column index of the pair `(j, k)`, `j < k < n`, in lexicographic order.
pub fn pair_index(n: usize, j: usize, k: usize) -> usize {
    debug_assert!(j < k && k < n);
    j * n - j * (j + 1) / 2 + (k - j - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(n: usize, idx: usize) -> (usize, usize) {
    let mut rem = idx;
    for j in 0..n {
        let row = n - j - 1;
        if rem < row {
            return (j, j + 1 + rem);
        }
        rem -= row;
    }
    panic!("pair index {idx} out of range for n = {n}");
}

pub(crate) fn parse_coefficient(s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s {
        "" | "+" => return Ok(BigRational::one()),
        "-" => return Ok(-BigRational::one()),
        _ => {}
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b.trim()),
        None => (false, s.strip_prefix('+').unwrap_or(s).trim()),
    };
    let body = body.trim_end_matches('*').trim();
    let v: BigRational = if body.is_empty() {
        BigRational::one()
    } else if let Some((n, d)) = body.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))?;
        let d: i64 = d.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))?;
        if d == 0 {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        crate::field::rat(n, d)
    } else {
        let n: i64 = body.parse().map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))?;
        crate::field::rat(n, 1)
    };
    Ok(if neg { -v } else { v })
}

fn parse_digit_triples(text: &str) -> Result<Vec<([usize; 3], BigRational)>> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        let digits_start = tok
            .char_indices()
            .rev()
            .take_while(|(_, c)| c.is_ascii_digit())
            .last()
            .map(|(i, _)| i)
            .ok_or_else(|| Error::Parse(format!("bad triple `{tok}`")))?;
        let (coef, digits) = tok.split_at(digits_start);
        if digits.len() != 3 {
            return Err(Error::Parse(format!("triple `{tok}` must have three digits")));
        }
        let idx: Vec<usize> = digits.bytes().map(|b| (b - b'0') as usize).collect();
        if idx.contains(&0) {
            return Err(Error::Parse(format!("indices are 1-based in `{tok}`")));
        }
        let c = parse_coefficient(coef)?;
        out.push(([idx[0] - 1, idx[1] - 1, idx[2] - 1], c));
    }
    Ok(out)
}

/// Splits `a + b - c` into signed terms at top level.
pub(crate) fn split_terms(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut prev_significant: Option<char> = None;
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() && !matches!(prev_significant, Some('*') | Some('/') | Some('^')) {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
        if !ch.is_whitespace() {
            prev_significant = Some(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

fn parse_explicit(text: &str) -> Result<Vec<([usize; 3], BigRational)>> {
    let mut out = Vec::new();
    for term in split_terms(text) {
        let term = term.trim();
        let first_e = term
            .find(['e', 'E'])
            .ok_or_else(|| Error::Parse(format!("term `{term}` has no factors")))?;
        let (coef, rest) = term.split_at(first_e);
        let c = parse_coefficient(coef)?;
        let mut idx = Vec::new();
        for factor in rest.split(['e', 'E']).skip(1) {
            let digits: String = factor
                .trim_start_matches(['^', '_'])
                .chars()
                .take_while(|c| c.is_ascii_digit())
                .collect();
            let tail = factor.trim_start_matches(['^', '_'])[digits.len()..].trim();
            if !tail.is_empty() && !tail.chars().all(|c| matches!(c, '^' | '*' | '∧') || c.is_whitespace()) {
                return Err(Error::Parse(format!("unexpected `{tail}` in term `{term}`")));
            }
            let i: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad factor in term `{term}`")))?;
            if i == 0 {
                return Err(Error::Parse(format!("indices are 1-based in `{term}`")));
            }
            idx.push(i - 1);
        }
        if idx.len() != 3 {
            return Err(Error::Parse(format!("term `{term}` is not a 3-form monomial")));
        }
        out.push(([idx[0], idx[1], idx[2]], c));
    }
    Ok(out)
}

impl fmt::Display for Trivector {
    /// Digit-triple notation when every index is a single digit, explicit
    /// wedge notation otherwise. Either form parses back to the same form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let digits = self.rank <= 9;
        let mut first = true;
        for (t, c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            if digits {
                if !first {
                    write!(f, " ")?;
                }
                if neg {
                    write!(f, "-")?;
                }
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "{}{}{}", t[0] + 1, t[1] + 1, t[2] + 1)?;
            } else {
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {} ", if neg { '-' } else { '+' })?;
                }
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "e{}^e{}^e{}", t[0] + 1, t[1] + 1, t[2] + 1)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Renders a 2-form as `e1^e2 - 3*e4^e5`.
pub fn format_two_form(form: &TwoForm) -> String {
    if form.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (n, ((j, k), c)) in form.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if n == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            s.push_str(&format!("{a}*"));
        }
        s.push_str(&format!("e{}^e{}", j + 1, k + 1));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rationals};

    fn two(entries: &[((usize, usize), i64)]) -> TwoForm {
        entries.iter().map(|&((j, k), c)| ((j - 1, k - 1), rat(c, 1))).collect()
    }

    fn case_xii() -> Trivector {
        Trivector::parse("e5^e6^e7 + e1^e5^e4 + e2^e6^e4 + e3^e7^e4 + e3^e6^e8", None).unwrap()
    }

    #[test]
    fn parses_digit_triples() {
        let t = Trivector::parse("129 138 167 246 257 345", None).unwrap();
        assert_eq!(t.rank(), 9);
        assert_eq!(t.terms().len(), 6);
        assert!(t.terms().values().all(|c| c.is_one()));
    }

    #[test]
    fn unsorted_triple_absorbs_sign() {
        let t = Trivector::parse("143", None).unwrap();
        assert_eq!(t.terms().get(&[0, 2, 3]), Some(&rat(-1, 1)));
    }

    #[test]
    fn case_v_both_notations_agree() {
        let a = Trivector::parse("123 456", None).unwrap();
        let b = Trivector::parse("e1^e2^e3 + e4^e5^e6", None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Trivector::parse("", None), Err(Error::Parse(_))));
        assert!(matches!(Trivector::parse("112", None), Err(Error::Parse(_))));
        assert!(matches!(Trivector::parse("e1^e1^e2", None), Err(Error::Parse(_))));
    }

    #[test]
    fn coefficients_in_both_notations() {
        let a = Trivector::parse("-2*123 3/2*145", None).unwrap();
        let b = Trivector::parse("-2e1^e2^e3 + 3/2*e1^e4^e5", None).unwrap();
        assert_eq!(a, b);
        assert_eq!(Trivector::parse(&a.to_string(), Some(5)).unwrap(), a);
    }

    #[test]
    fn case_xii_derivatives() {
        let psi = case_xii();
        assert_eq!(psi.skew_derivative(0).unwrap(), two(&[((4, 5), -1)]));
        assert_eq!(psi.skew_derivative(2).unwrap(), two(&[((4, 7), -1), ((6, 8), 1)]));
        assert_eq!(
            psi.skew_derivative(3).unwrap(),
            two(&[((1, 5), 1), ((2, 6), 1), ((3, 7), 1)])
        );
        assert_eq!(
            psi.skew_derivative(5).unwrap(),
            two(&[((5, 7), -1), ((2, 4), -1), ((3, 8), -1)])
        );
    }

    #[test]
    fn derivative_of_absent_index_is_zero() {
        let psi = Trivector::parse("123", Some(4)).unwrap();
        assert!(psi.skew_derivative(3).unwrap().is_empty());
        assert!(matches!(psi.skew_derivative(4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn nondegeneracy() {
        let f = Rationals;
        assert!(Trivector::parse("123 456", None).unwrap().is_nondegenerate(&f).unwrap());
        assert!(!Trivector::parse("123", Some(4)).unwrap().is_nondegenerate(&f).unwrap());
        // Oracle: the 9 x 36 derivative matrix of the case 63 form has full rank,
        // checked by an independent dense elimination.
        let t = Trivector::parse("129 138 167 246 257 345", None).unwrap();
        let m = t.derivative_matrix(&f).unwrap();
        let ns = linalg::nullspace(&f, &transpose(&m), 9);
        assert!(ns.is_empty());
        assert!(t.is_nondegenerate(&f).unwrap());
    }

    fn transpose(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
        (0..m[0].len()).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
    }

    #[test]
    fn pair_index_roundtrip() {
        let n = 7;
        let mut expect = 0;
        for j in 0..n {
            for k in j + 1..n {
                assert_eq!(pair_index(n, j, k), expect);
                assert_eq!(pair_from_index(n, expect), (j, k));
                expect += 1;
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn form() -> impl Strategy<Value = Trivector> {
            proptest::collection::vec(((0usize..6, 0usize..6, 0usize..6), -3i64..4), 1..6).prop_filter_map(
                "distinct",
                |terms| {
                    let t: Vec<_> = terms
                        .into_iter()
                        .filter(|((a, b, c), _)| a != b && b != c && a != c)
                        .map(|((a, b, c), v)| ([a, b, c], rat(v, 1)))
                        .collect();
                    Trivector::from_terms(6, t).ok().filter(|t| !t.is_zero())
                },
            )
        }

        proptest! {
            #[test]
            fn derivative_is_linear_and_squares_to_zero(a in form(), b in form(), i in 0usize..6) {
                let sum = Trivector::from_terms(6, a.terms().clone().into_iter().chain(b.terms().clone())).unwrap();
                let mut expect = a.skew_derivative(i).unwrap();
                for (k, v) in b.skew_derivative(i).unwrap() {
                    *expect.entry(k).or_insert_with(BigRational::zero) += v;
                }
                expect.retain(|_, v| !v.is_zero());
                prop_assert_eq!(sum.skew_derivative(i).unwrap(), expect);
                // d/de^i applied twice: the result of the first has no e^i left
                let d = a.skew_derivative(i).unwrap();
                prop_assert!(d.keys().all(|&(j, k)| j != i && k != i));
            }

            #[test]
            fn print_parse_roundtrip(a in form()) {
                prop_assert_eq!(Trivector::parse(&a.to_string(), Some(6)).unwrap(), a);
            }
        }
    }
}

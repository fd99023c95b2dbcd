//! Homogeneous polynomials in exterior and commutative polynomial algebras.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentations::trivector::{parse_coefficient, split_terms};

/// Which ambient algebra monomials live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Exterior algebra: monomials are strictly increasing index lists.
    Exterior,
    /// Polynomial ring: monomials are non-decreasing index lists.
    Commutative,
}

/// Sorted list of 0-based generator indices.
pub type Monomial = Vec<usize>;

/// Homogeneous polynomial as monomial -> coefficient.
pub type Form = BTreeMap<Monomial, BigRational>;

/// Product of two monomials with its sign, or `None` when it vanishes.
pub fn mono_mul(kind: Kind, a: &[usize], b: &[usize]) -> Option<(Monomial, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut odd = false;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining letters of a
            if kind == Kind::Exterior && (a.len() - i) % 2 == 1 {
                odd = !odd;
            }
            out.push(b[j]);
            j += 1;
        } else {
            if kind == Kind::Exterior {
                return None;
            }
            out.push(a[i]);
            i += 1;
        }
    }
    Some((out, odd))
}

/// Normalizes an arbitrary index sequence: sorts it and reports the sign
/// (exterior) or `None` if it vanishes.
pub fn normalize(kind: Kind, idx: &[usize]) -> Option<(Monomial, bool)> {
    let mut m: Monomial = Vec::new();
    let mut odd = false;
    for &i in idx {
        let (next, s) = mono_mul(kind, &m, &[i])?;
        m = next;
        odd ^= s;
    }
    Some((m, odd))
}

/// All monomials of degree `d` in `n` variables, in increasing lex order.
pub fn monomials(kind: Kind, n: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(kind: Kind, n: usize, d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            let next = if kind == Kind::Exterior { i + 1 } else { i };
            rec(kind, n, d, next, cur, out);
            cur.pop();
        }
    }
    rec(kind, n, d, 0, &mut cur, &mut out);
    out
}

/// Indexed basis of one graded component. Columns are ordered by decreasing
/// lex order, so echelon pivots land on the lex-largest monomials and the
/// surviving standard monomials are the lex-smallest ones.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(kind: Kind, n: usize, d: usize) -> Self {
        let mut monos = monomials(kind, n, d);
        monos.reverse();
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Self { monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn index(&self, m: &[usize]) -> usize {
        self.index[m]
    }

    pub fn form_to_vec(&self, form: &Form) -> Vec<(usize, BigRational)> {
        let mut v: Vec<(usize, BigRational)> = form
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (self.index(m), c.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn vec_to_form(&self, v: &[(usize, BigRational)]) -> Form {
        v.iter().map(|(k, c)| (self.monos[*k].clone(), c.clone())).collect()
    }
}

/// Degree of a homogeneous form; errors if inhomogeneous or zero.
pub fn form_degree(form: &Form) -> Result<usize> {
    let mut degs = form.keys().map(|m| m.len());
    let d = degs.next().ok_or_else(|| Error::Invalid("zero relation".into()))?;
    if degs.any(|e| e != d) {
        return Err(Error::Inhomogeneous(format!("mixed degrees in relation with {} terms", form.len())));
    }
    Ok(d)
}

/// Default variable names `x1 .. xn`.
pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn is_indexed(names: &[String]) -> Option<char> {
    let first = names.first()?.chars().next()?;
    names
        .iter()
        .enumerate()
        .all(|(i, s)| *s == format!("{first}{}", i + 1))
        .then_some(first)
}

/// Renders a monomial with the given variable names. Repeated variables are
/// written as powers.
pub fn format_monomial(m: &[usize], names: &[String]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    let mut s = String::new();
    let mut i = 0;
    while i < m.len() {
        let mut j = i;
        while j < m.len() && m[j] == m[i] {
            j += 1;
        }
        s.push_str(&names[m[i]]);
        if j - i > 1 {
            s.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    s
}

pub fn format_form(form: &Form, names: &[String]) -> String {
    if form.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    // highest monomial first reads more naturally
    for (n, (m, c)) in form.iter().rev().enumerate() {
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
        s.push_str(&format_monomial(m, names));
    }
    s
}

/// Parses one polynomial such as `x1x4 + x2x3`, `x^2 + xy` or `e1^e2 - 2*e3^e4`.
///
/// Variables are matched greedily against `names`; when the names are of the
/// indexed form `x1..xn`, the prefixes `x`, `e` and `X` are all accepted.
/// In the exterior case a repeated variable makes the term vanish.
pub fn parse_form(text: &str, kind: Kind, names: &[String]) -> Result<Form> {
    let indexed = is_indexed(names);
    let mut form = Form::new();
    for term in split_terms(text) {
        let term = term.trim();
        let chars: Vec<char> = term.chars().collect();
        // coefficient: leading sign, digits, '/', '*'
        let mut p = 0;
        while p < chars.len() && (chars[p].is_ascii_digit() || matches!(chars[p], '+' | '-' | '/' | '*' | ' ')) {
            p += 1;
        }
        let coef = parse_coefficient(&chars[..p].iter().collect::<String>())?;
        let mut idx: Vec<usize> = Vec::new();
        while p < chars.len() {
            let c = chars[p];
            if c.is_whitespace() || c == '*' || c == '∧' {
                p += 1;
                continue;
            }
            if c == '^' {
                // power if followed by digits, wedge otherwise
                let mut q = p + 1;
                while q < chars.len() && chars[q].is_ascii_digit() {
                    q += 1;
                }
                if q > p + 1 {
                    let e: usize = chars[p + 1..q].iter().collect::<String>().parse().unwrap();
                    let last = *idx
                        .last()
                        .ok_or_else(|| Error::Parse(format!("power without base in `{term}`")))?;
                    if e == 0 {
                        return Err(Error::Parse(format!("zero exponent in `{term}`")));
                    }
                    for _ in 1..e {
                        idx.push(last);
                    }
                    p = q;
                } else {
                    p += 1;
                }
                continue;
            }
            if let Some(_prefix) = indexed {
                if matches!(c, 'x' | 'e' | 'X') && p + 1 < chars.len() && chars[p + 1].is_ascii_digit() {
                    let mut q = p + 1;
                    while q < chars.len() && chars[q].is_ascii_digit() {
                        q += 1;
                    }
                    let i: usize = chars[p + 1..q].iter().collect::<String>().parse().unwrap();
                    if i == 0 || i > names.len() {
                        return Err(Error::IndexOutOfRange { index: i, rank: names.len() });
                    }
                    idx.push(i - 1);
                    p = q;
                    continue;
                }
            }
            let rest: String = chars[p..].iter().collect();
            let best = names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.len());
            match best {
                Some((i, n)) => {
                    idx.push(i);
                    p += n.chars().count();
                }
                None => return Err(Error::Parse(format!("unknown variable at `{rest}` in `{term}`"))),
            }
        }
        if idx.is_empty() {
            return Err(Error::Parse(format!("constant term `{term}` in relation")));
        }
        if let Some((m, odd)) = normalize(kind, &idx) {
            let c = if odd { -coef } else { coef };
            *form.entry(m).or_insert_with(BigRational::zero) += c;
        }
    }
    form.retain(|_, c| !c.is_zero());
    Ok(form)
}

/// Parses a comma-separated relation list, optionally wrapped in parentheses.
pub fn parse_forms(text: &str, kind: Kind, names: &[String]) -> Result<Vec<Form>> {
    let t = text.trim();
    let t = t.strip_prefix('(').unwrap_or(t);
    let t = t.strip_suffix(')').unwrap_or(t);
    let mut out = Vec::new();
    for part in t.split([',', ';']) {
        if part.trim().is_empty() {
            continue;
        }
        let f = parse_form(part, kind, names)?;
        if f.is_empty() {
            return Err(Error::Parse(format!("relation `{}` is zero", part.trim())));
        }
        out.push(f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn xyzu() -> Vec<String> {
        ["x", "y", "z", "u"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn exterior_product_signs() {
        assert_eq!(mono_mul(Kind::Exterior, &[1], &[0]), Some((vec![0, 1], true)));
        assert_eq!(mono_mul(Kind::Exterior, &[0, 2], &[1]), Some((vec![0, 1, 2], true)));
        assert_eq!(mono_mul(Kind::Exterior, &[1, 2], &[0]), Some((vec![0, 1, 2], false)));
        assert_eq!(mono_mul(Kind::Exterior, &[0], &[0]), None);
        assert_eq!(mono_mul(Kind::Commutative, &[0, 2], &[0]), Some((vec![0, 0, 2], false)));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(Kind::Exterior, 5, 2).len(), 10);
        assert_eq!(monomials(Kind::Commutative, 4, 2).len(), 10);
        assert_eq!(monomials(Kind::Commutative, 4, 3).len(), 20);
        assert_eq!(monomials(Kind::Exterior, 3, 4).len(), 0);
    }

    #[test]
    fn parses_commutative_relations() {
        let names = xyzu();
        let f = parse_form("x^2+xy", Kind::Commutative, &names).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[&vec![0, 0]], rat(1, 1));
        let g = parse_form("yz-xu", Kind::Commutative, &names).unwrap();
        assert_eq!(g[&vec![0, 3]], rat(-1, 1));
        let all = parse_forms("(x^2, xy, y^2)", Kind::Commutative, &names).unwrap();
        assert_eq!(all.len(), 3);
    }

    #[test]
    fn parses_exterior_relations() {
        let names = indexed_names("x", 5);
        let f = parse_form("x2x1 + 2*x3x4", Kind::Exterior, &names).unwrap();
        assert_eq!(f[&vec![0, 1]], rat(-1, 1));
        assert_eq!(f[&vec![2, 3]], rat(2, 1));
        let g = parse_form("e1^e4 - e5^e2", Kind::Exterior, &names).unwrap();
        assert_eq!(g[&vec![1, 4]], rat(1, 1));
        // skew case: xz - yu in named variables
        let h = parse_form("zx", Kind::Exterior, &xyzu()).unwrap();
        assert_eq!(h[&vec![0, 2]], rat(-1, 1));
        assert!(parse_form("x1x1", Kind::Exterior, &names).unwrap().is_empty());
        assert!(parse_form("x9", Kind::Exterior, &names).is_err());
        assert!(parse_form("3", Kind::Exterior, &names).is_err());
    }

    #[test]
    fn format_roundtrip() {
        let names = xyzu();
        let f = parse_form("x^2 - 2*yz + zu", Kind::Commutative, &names).unwrap();
        let s = format_form(&f, &names);
        assert_eq!(parse_form(&s, Kind::Commutative, &names).unwrap(), f);
    }

    #[test]
    fn inhomogeneous_detected() {
        let names = xyzu();
        let f = parse_form("x^2 + y", Kind::Commutative, &names).unwrap();
        assert!(matches!(form_degree(&f), Err(Error::Inhomogeneous(_))));
    }
}

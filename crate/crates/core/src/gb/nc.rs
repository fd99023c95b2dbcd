//! Homogeneous Groebner bases in the free associative algebra, computed
//! degree by degree.
//!
//! Words of length `d` over `n` letters are encoded as base-`n` integers of
//! the relabeled letters (see [`WordOrder`]), so the numeric order of codes
//! of one length is the deglex order.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use super::automaton::Automaton;
use super::order::WordOrder;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Echelon;
use crate::presentations::QuadraticPresentation;
use crate::series::Series1;

/// Encoded word together with its length.
pub type Word = u64;

/// Monic basis element `tip + sum tail`, every tail word smaller than `tip`.
#[derive(Clone, Debug)]
pub struct GbElement<E> {
    pub degree: usize,
    pub tip: Word,
    /// descending by word
    pub tail: Vec<(Word, E)>,
}

/// Homogeneous polynomial of one degree, keyed by encoded word.
pub type Poly<E> = BTreeMap<Word, E>;

/// Reduced Groebner basis, complete through `complete_through`.
#[derive(Clone, Debug)]
pub struct NcGroebnerBasis<F: Field> {
    field: F,
    names: Vec<String>,
    order: WordOrder,
    elements: Vec<GbElement<F::Elem>>,
    complete_through: usize,
    pows: Vec<u64>,
    automaton: Automaton,
}

/// Largest supported word length for `n` letters.
pub fn max_word_length(n: usize) -> usize {
    if n <= 1 {
        return 62;
    }
    let mut d = 0;
    let mut p: u128 = 1;
    while p * (n as u128) < (1u128 << 62) {
        p *= n as u128;
        d += 1;
    }
    d
}

pub(crate) fn powers(n: usize, maxdeg: usize) -> Vec<u64> {
    let mut pows = vec![1u64];
    for _ in 0..=maxdeg {
        let last = *pows.last().unwrap();
        pows.push(last.saturating_mul(n.max(1) as u64));
    }
    pows
}

#[inline]
pub(crate) fn decode(mut w: Word, d: usize, n: u64, out: &mut [u8]) {
    for slot in out[..d].iter_mut().rev() {
        *slot = (w % n) as u8;
        w /= n;
    }
}

#[inline]
pub(crate) fn encode(letters: &[u8], n: u64) -> Word {
    letters.iter().fold(0, |acc, &l| acc * n + l as u64)
}

/// Rewrites `poly` (homogeneous of degree `d`) to a combination of words
/// containing no tip, processing the largest reducible word first.
pub(crate) fn reduce_poly<F: Field>(
    field: &F,
    elements: &[GbElement<F::Elem>],
    automaton: &Automaton,
    pows: &[u64],
    n: u64,
    poly: &mut Poly<F::Elem>,
    d: usize,
) {
    let mut buf = vec![0u8; d];
    let mut upper: Option<Word> = None;
    loop {
        let next = match upper {
            None => poly.keys().next_back().copied(),
            Some(u) => poly.range(..u).next_back().map(|(k, _)| *k),
        };
        let Some(w) = next else { break };
        upper = Some(w);
        decode(w, d, n, &mut buf);
        let Some((id, pos)) = automaton.find(&buf) else { continue };
        let c = poly.remove(&w).expect("present");
        let g = &elements[id as usize];
        let right = d - pos - g.degree;
        let pre = w / pows[d - pos];
        let suf = w % pows[right];
        let base = pre * pows[d - pos] + suf;
        for (t, tc) in &g.tail {
            let nw = base + t * pows[right];
            let delta = field.neg(&field.mul(&c, tc));
            add_term(field, poly, nw, delta);
        }
    }
}

#[inline]
pub(crate) fn add_term<F: Field>(field: &F, poly: &mut Poly<F::Elem>, w: Word, c: F::Elem) {
    use std::collections::btree_map::Entry;
    match poly.entry(w) {
        Entry::Vacant(e) => {
            if !field.is_zero(&c) {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let s = field.add(e.get(), &c);
            if field.is_zero(&s) {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Reduced Groebner basis of the two-sided ideal generated by the relations
/// of `p`, complete through words of length `maxdeg`.
pub fn nc_groebner<F: Field>(
    field: &F,
    p: &QuadraticPresentation,
    order: &WordOrder,
    maxdeg: usize,
) -> Result<NcGroebnerBasis<F>> {
    let n = p.rank();
    if order.len() != n {
        return Err(Error::Invalid(format!("order has {} generators, presentation has {n}", order.len())));
    }
    if maxdeg > max_word_length(n) {
        return Err(Error::Invalid(format!("words of length {maxdeg} on {n} letters are too long to encode")));
    }
    let rels = p.relations_in(field)?;
    let relabeled: Vec<Poly<F::Elem>> = rels
        .iter()
        .map(|r| {
            let mut poly = Poly::new();
            for (k, c) in r {
                let (a, b) = (k / n, k % n);
                let w = order.letter(a) as u64 * n as u64 + order.letter(b) as u64;
                add_term(field, &mut poly, w, c.clone());
            }
            poly
        })
        .collect();
    let mut gb = NcGroebnerBasis {
        field: field.clone(),
        names: p.names().to_vec(),
        order: order.clone(),
        elements: Vec::new(),
        complete_through: 1,
        pows: powers(n, maxdeg),
        automaton: Automaton::new(n.max(1), &[]),
    };
    for d in 2..=maxdeg.max(2) {
        let inputs = if d == 2 { relabeled.clone() } else { Vec::new() };
        gb.extend_degree(d, inputs);
    }
    Ok(gb)
}

impl<F: Field> NcGroebnerBasis<F> {
    fn n(&self) -> usize {
        self.names.len()
    }

    fn tip_letters(&self, g: &GbElement<F::Elem>) -> Vec<u8> {
        let mut buf = vec![0u8; g.degree];
        decode(g.tip, g.degree, self.n() as u64, &mut buf);
        buf
    }

    fn rebuild_automaton(&mut self) {
        let pats: Vec<Vec<u8>> = self.elements.iter().map(|g| self.tip_letters(g)).collect();
        self.automaton = Automaton::new(self.n().max(1), &pats);
    }

    /// S-polynomials of degree `d` from proper overlaps of lower tips, in
    /// order of the first element then overlap length.
    fn obstructions(&self, d: usize) -> Vec<Poly<F::Elem>> {
        let field = &self.field;
        // tips indexed by (length, overlap length, prefix code)
        let mut by_prefix: HashMap<(usize, usize, Word), Vec<usize>> = HashMap::new();
        for (i, g) in self.elements.iter().enumerate() {
            for k in 1..g.degree {
                let prefix = g.tip / self.pows[g.degree - k];
                by_prefix.entry((g.degree, k, prefix)).or_default().push(i);
            }
        }
        let mut out = Vec::new();
        for g1 in &self.elements {
            let a = g1.degree;
            for k in 1..a {
                let b = d + k - a;
                if b <= k || b >= d {
                    continue;
                }
                let suffix = g1.tip % self.pows[k];
                let Some(partners) = by_prefix.get(&(b, k, suffix)) else { continue };
                for &j in partners {
                    let g2 = &self.elements[j];
                    // g1 * w2 - w1 * g2, where tip1 = w1 o and tip2 = o w2
                    let w2 = g2.tip % self.pows[b - k];
                    let w1 = g1.tip / self.pows[k];
                    let mut poly = Poly::new();
                    for (t, c) in &g1.tail {
                        add_term(field, &mut poly, t * self.pows[b - k] + w2, c.clone());
                    }
                    for (t, c) in &g2.tail {
                        add_term(field, &mut poly, w1 * self.pows[b] + t, field.neg(c));
                    }
                    if !poly.is_empty() {
                        out.push(poly);
                    }
                }
            }
        }
        out
    }

    /// Completes the basis in degree `d` given the basis through `d - 1`.
    fn extend_degree(&mut self, d: usize, inputs: Vec<Poly<F::Elem>>) {
        debug_assert_eq!(self.complete_through + 1, d);
        let n = self.n() as u64;
        let top = self.pows[d] - 1;
        let mut candidates = inputs;
        candidates.extend(self.obstructions(d));
        let mut ech = Echelon::new(self.field.clone());
        for mut poly in candidates {
            reduce_poly(&self.field, &self.elements, &self.automaton, &self.pows, n, &mut poly, d);
            if poly.is_empty() {
                continue;
            }
            let v: Vec<(usize, F::Elem)> = poly.into_iter().rev().map(|(w, c)| ((top - w) as usize, c)).collect();
            ech.insert(v);
        }
        let rows = ech.into_rref();
        if !rows.is_empty() {
            for row in rows {
                let mut it = row.into_iter();
                let (lead, _) = it.next().expect("nonzero row");
                self.elements.push(GbElement {
                    degree: d,
                    tip: top - lead as u64,
                    tail: it.map(|(c, x)| (top - c as u64, x)).collect(),
                });
            }
            self.rebuild_automaton();
        }
        self.complete_through = d;
    }

    /// Continues the computation up to `maxdeg`.
    pub fn extend_to(&mut self, maxdeg: usize) -> Result<()> {
        if maxdeg > max_word_length(self.n()) {
            return Err(Error::Invalid(format!("words of length {maxdeg} are too long to encode")));
        }
        if self.pows.len() <= maxdeg + 1 {
            self.pows = powers(self.n(), maxdeg);
        }
        while self.complete_through < maxdeg {
            let d = self.complete_through + 1;
            self.extend_degree(d, Vec::new());
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &WordOrder {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.n()
    }

    pub fn complete_through(&self) -> usize {
        self.complete_through
    }

    pub fn elements(&self) -> &[GbElement<F::Elem>] {
        &self.elements
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn elements_of_degree(&self, d: usize) -> impl Iterator<Item = &GbElement<F::Elem>> {
        self.elements.iter().filter(move |g| g.degree == d)
    }

    /// Number of basis elements in each degree `0..=complete_through`.
    pub fn degree_counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.complete_through + 1];
        for g in &self.elements {
            out[g.degree] += 1;
        }
        out
    }

    /// True when every element found so far has degree 2.
    pub fn is_quadratic(&self) -> bool {
        self.elements.iter().all(|g| g.degree == 2)
    }

    /// Generator indices of an encoded word.
    pub fn word_generators(&self, w: Word, d: usize) -> Vec<usize> {
        let mut buf = vec![0u8; d];
        decode(w, d, self.n() as u64, &mut buf);
        buf.into_iter().map(|l| self.order.generator(l)).collect()
    }

    /// Encodes a word of generator indices.
    pub fn encode_generators(&self, gens: &[usize]) -> Word {
        let letters: Vec<u8> = gens.iter().map(|&g| self.order.letter(g)).collect();
        encode(&letters, self.n() as u64)
    }

    pub fn format_word(&self, w: Word, d: usize) -> String {
        if d == 0 {
            return "1".to_string();
        }
        self.word_generators(w, d).iter().map(|&g| self.names[g].as_str()).collect()
    }

    /// Element `i` written with the original generator names, tip first.
    pub fn format_element(&self, i: usize) -> String {
        let g = &self.elements[i];
        let mut terms = vec![(g.tip, self.field.one())];
        terms.extend(g.tail.iter().cloned());
        let mut s = String::new();
        for (k, (w, c)) in terms.iter().enumerate() {
            let word = self.format_word(*w, g.degree);
            let coeff = self.field.format(c);
            let (neg, mag) = match coeff.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, coeff),
            };
            if k > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            if mag != "1" {
                s.push_str(&mag);
                s.push('*');
            }
            s.push_str(&word);
        }
        s
    }

    /// True when the word contains no tip.
    pub fn is_normal(&self, w: Word, d: usize) -> bool {
        let mut buf = vec![0u8; d];
        decode(w, d, self.n() as u64, &mut buf);
        self.automaton.find(&buf).is_none()
    }

    /// Normal form of a homogeneous polynomial of degree `d`.
    pub fn normal_form(&self, mut poly: Poly<F::Elem>, d: usize) -> Result<Poly<F::Elem>> {
        self.require(d)?;
        reduce_poly(&self.field, &self.elements, &self.automaton, &self.pows, self.n() as u64, &mut poly, d);
        Ok(poly)
    }

    /// Normal form computed by rewriting randomly chosen reducible terms at
    /// randomly chosen tip occurrences. Agrees with [`Self::normal_form`]
    /// whenever the basis is complete through `d`.
    pub fn normal_form_random<R: Rng>(&self, mut poly: Poly<F::Elem>, d: usize, rng: &mut R) -> Result<Poly<F::Elem>> {
        self.require(d)?;
        let n = self.n() as u64;
        let tips: Vec<Vec<u8>> = self.elements.iter().map(|g| self.tip_letters(g)).collect();
        let mut buf = vec![0u8; d];
        loop {
            let mut reducible = Vec::new();
            for &w in poly.keys() {
                decode(w, d, n, &mut buf);
                let occ: Vec<(usize, usize)> = tips
                    .iter()
                    .enumerate()
                    .flat_map(|(i, t)| {
                        let buf = &buf;
                        (0..=d.saturating_sub(t.len()))
                            .filter(move |&pos| t.len() <= d && buf[pos..pos + t.len()] == t[..])
                            .map(move |pos| (i, pos))
                    })
                    .collect();
                if !occ.is_empty() {
                    reducible.push((w, occ));
                }
            }
            if reducible.is_empty() {
                return Ok(poly);
            }
            let (w, occ) = &reducible[rng.gen_range(0..reducible.len())];
            let (i, pos) = occ[rng.gen_range(0..occ.len())];
            let c = poly.remove(w).expect("present");
            let g = &self.elements[i];
            let right = d - pos - g.degree;
            let base = (w / self.pows[d - pos]) * self.pows[d - pos] + w % self.pows[right];
            for (t, tc) in &g.tail {
                let delta = self.field.neg(&self.field.mul(&c, tc));
                add_term(&self.field, &mut poly, base + t * self.pows[right], delta);
            }
        }
    }

    fn require(&self, d: usize) -> Result<()> {
        if d > self.complete_through {
            return Err(Error::Truncated {
                complete: self.complete_through,
                requested: d,
            });
        }
        Ok(())
    }

    /// Hilbert series of the quotient through `maxdeg` by counting normal words.
    pub fn hilbert(&self, maxdeg: usize) -> Result<Series1> {
        self.require(maxdeg)?;
        let counts = self.automaton.count_avoiding(maxdeg);
        let coeffs = counts
            .into_iter()
            .map(|c| num_rational::BigRational::from_integer(num_bigint::BigInt::from(c)))
            .collect();
        Ok(Series1::from_coeffs(coeffs, maxdeg))
    }

    /// Normal words of length `d` in increasing order.
    pub fn normal_words(&self, d: usize) -> Result<Vec<Word>> {
        self.require(d)?;
        let n = self.n();
        let mut out = Vec::new();
        // depth-first walk of the automaton avoiding hit states
        let mut stack: Vec<(usize, usize, Word)> = vec![(0, 0, 0)];
        while let Some((state, len, code)) = stack.pop() {
            if len == d {
                out.push(code);
                continue;
            }
            for l in (0..n).rev() {
                let t = self.automaton.step(state, l as u8);
                if self.automaton.hit(t).is_none() {
                    stack.push((t, len + 1, code * n as u64 + l as u64));
                }
            }
        }
        Ok(out)
    }
}

/// Hilbert series of `T(V)/I` through `maxdeg` from a complete basis.
pub fn hilbert_from_gb<F: Field>(gb: &NcGroebnerBasis<F>, maxdeg: usize) -> Result<Series1> {
    gb.hilbert(maxdeg)
}

/// Whether the reduced basis has no element of degree 3, which certifies a
/// quadratic Groebner basis and hence Koszulity.
pub fn quadratic_gb_certificate<F: Field>(field: &F, p: &QuadraticPresentation, order: &WordOrder) -> Result<bool> {
    let gb = nc_groebner(field, p, order, 3)?;
    let quadratic = gb.elements_of_degree(3).next().is_none();
    Ok(quadratic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::presentations::catalog::catalog;
    use rand::SeedableRng;

    fn ints(s: &Series1) -> Vec<i64> {
        s.to_i64s().unwrap()
    }

    #[test]
    fn free_algebra() {
        let p = QuadraticPresentation::free(3);
        let gb = nc_groebner(&Rationals, &p, &WordOrder::natural(3), 3).unwrap();
        assert!(gb.elements().is_empty());
        assert_eq!(ints(&gb.hilbert(3).unwrap()), vec![1, 3, 9, 27]);
        assert!(quadratic_gb_certificate(&Rationals, &p, &WordOrder::natural(3)).unwrap());
    }

    #[test]
    fn single_commutator() {
        let p = QuadraticPresentation::parse(2, "[X1,X2]").unwrap();
        let gb = nc_groebner(&Rationals, &p, &WordOrder::natural(2), 5).unwrap();
        assert_eq!(gb.elements().len(), 1);
        assert_eq!(gb.format_element(0), "X2X1 - X1X2");
        assert_eq!(ints(&gb.hilbert(5).unwrap()), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn truncation_is_reported() {
        let p = QuadraticPresentation::parse(2, "[X1,X2]").unwrap();
        let gb = nc_groebner(&Rationals, &p, &WordOrder::natural(2), 3).unwrap();
        assert!(matches!(gb.hilbert(4), Err(Error::Truncated { complete: 3, requested: 4 })));
    }

    #[test]
    fn non_quadratic_basis_appears() {
        // X2X2 - X1X2 has the overlap X2X2X2 producing a cubic element
        let p = QuadraticPresentation::parse(2, "X2X2 - X1X2").unwrap();
        let gb = nc_groebner(&Rationals, &p, &WordOrder::natural(2), 6).unwrap();
        assert!(!gb.is_quadratic());
        assert!(!quadratic_gb_certificate(&Rationals, &p, &WordOrder::natural(2)).unwrap());
        // the series is order independent
        let h = gb.hilbert(6).unwrap();
        let gb2 = nc_groebner(&Rationals, &p, &WordOrder::natural(2).reversed(), 6).unwrap();
        assert_eq!(h, gb2.hilbert(6).unwrap());
    }

    #[test]
    fn case_xii_dual_series() {
        let e = catalog("caseXII").unwrap();
        let dual = e.dual().unwrap();
        let gb = nc_groebner(&Rationals, &dual, &WordOrder::natural(dual.rank()), 10).unwrap();
        let inv = gb.hilbert(10).unwrap().invert().unwrap();
        assert_eq!(ints(&inv), vec![1, -8, 8, -1, -1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn modular_matches_rational() {
        let e = catalog("caseIV").unwrap();
        let dual = e.dual().unwrap();
        let o = WordOrder::natural(dual.rank());
        let q = nc_groebner(&Rationals, &dual, &o, 7).unwrap().hilbert(7).unwrap();
        let f = nc_groebner(&PrimeField::new(32003).unwrap(), &dual, &o, 7).unwrap().hilbert(7).unwrap();
        assert_eq!(q, f);
    }

    #[test]
    fn normal_words_are_counted_consistently() {
        let e = catalog("caseIV").unwrap();
        let dual = e.dual().unwrap();
        let gb = nc_groebner(&Rationals, &dual, &WordOrder::natural(dual.rank()), 5).unwrap();
        let h = ints(&gb.hilbert(5).unwrap());
        for d in 0..=5 {
            let words = gb.normal_words(d).unwrap();
            assert_eq!(words.len() as i64, h[d]);
            assert!(words.windows(2).all(|w| w[0] < w[1]));
            assert!(words.iter().all(|&w| gb.is_normal(w, d)));
        }
    }

    #[test]
    fn reduction_is_confluent() {
        let e = catalog("caseXII").unwrap();
        let dual = e.dual().unwrap();
        let gb = nc_groebner(&Rationals, &dual, &WordOrder::natural(dual.rank()), 5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = dual.rank() as u64;
        for _ in 0..20 {
            let mut poly = Poly::new();
            for _ in 0..4 {
                let w = rng.gen_range(0..n.pow(5));
                add_term(&Rationals, &mut poly, w, Rationals.from_i64(rng.gen_range(-3..4)));
            }
            let a = gb.normal_form(poly.clone(), 5).unwrap();
            let b = gb.normal_form_random(poly, 5, &mut rng).unwrap();
            assert_eq!(a, b);
        }
    }
}

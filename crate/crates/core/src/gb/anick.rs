//! Low homological degrees of the Anick resolution of the trivial module over
//! `T(V)/I`, built from chains of leading words, and a normalized bar complex
//! used as an independent check.
//!
//! Modules are right modules `F_m = k[chains of level m] (x) A`; a chain of
//! level 0 is the empty word, level 1 the letters, level 2 the tips.

use std::collections::HashMap;

use super::nc::{add_term, decode, reduce_poly, NcGroebnerBasis, Poly, Word};
use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Echelon;
use crate::presentations::QuadraticPresentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub len: usize,
    /// relabeled word of the whole chain
    pub code: Word,
    /// prefix chain one level down
    pub prev: usize,
    pub tail_len: usize,
}

/// Element of some `F_m` of a fixed total degree, keyed by the concatenated
/// word `chain . w`; the chain is determined by the word but stored as well.
type Chained<E> = std::collections::BTreeMap<Word, (usize, E)>;

/// `d_m` of one chain: `(chain one level down, degree of coefficient, coefficient)`.
type Boundary<E> = Vec<(usize, usize, Poly<E>)>;

/// Anick resolution of `k` through homological degree `top` and internal
/// degree `maxdeg`.
pub struct AnickResolution<'a, F: Field> {
    gb: &'a NcGroebnerBasis<F>,
    n: u64,
    pows: Vec<u64>,
    maxdeg: usize,
    levels: Vec<Vec<Chain>>,
    index: Vec<HashMap<(usize, Word), usize>>,
    boundary: Vec<Vec<Boundary<F::Elem>>>,
    nf_cache: HashMap<(usize, Word), Poly<F::Elem>>,
}

impl<'a, F: Field> AnickResolution<'a, F> {
    /// Builds chains and differentials `d_1..d_top`.
    pub fn new(gb: &'a NcGroebnerBasis<F>, top: usize, maxdeg: usize) -> Result<Self> {
        if maxdeg > gb.complete_through() {
            return Err(Error::Truncated {
                complete: gb.complete_through(),
                requested: maxdeg,
            });
        }
        let n = gb.rank() as u64;
        let mut r = Self {
            gb,
            n,
            pows: super::nc::powers(gb.rank(), maxdeg),
            maxdeg,
            levels: Vec::new(),
            index: Vec::new(),
            boundary: vec![Vec::new()],
            nf_cache: HashMap::new(),
        };
        r.push_level(vec![Chain {
            len: 0,
            code: 0,
            prev: 0,
            tail_len: 0,
        }]);
        if top >= 1 {
            let letters = (0..n)
                .map(|l| Chain {
                    len: 1,
                    code: l,
                    prev: 0,
                    tail_len: 1,
                })
                .filter(|_| maxdeg >= 1)
                .collect();
            r.push_level(letters);
        }
        for m in 2..=top {
            let next = r.extend_chains(m - 1);
            r.push_level(next);
        }
        for m in 1..=top {
            let mut bs = Vec::with_capacity(r.levels[m].len());
            for c in 0..r.levels[m].len() {
                bs.push(r.compute_boundary(m, c)?);
            }
            r.boundary.push(bs);
        }
        Ok(r)
    }

    fn push_level(&mut self, chains: Vec<Chain>) {
        let idx = chains.iter().enumerate().map(|(i, c)| ((c.len, c.code), i)).collect();
        self.levels.push(chains);
        self.index.push(idx);
    }

    pub fn chains(&self, m: usize) -> &[Chain] {
        &self.levels[m]
    }

    /// Chain written with generator names.
    pub fn format_chain(&self, m: usize, c: usize) -> String {
        let ch = &self.levels[m][c];
        self.gb.format_word(ch.code, ch.len)
    }

    fn letters(&self, w: Word, d: usize) -> Vec<u8> {
        let mut buf = vec![0u8; d];
        decode(w, d, self.n, &mut buf);
        buf
    }

    /// Chains of level `m + 1` extending those of level `m >= 1`.
    fn extend_chains(&self, m: usize) -> Vec<Chain> {
        let aut = self.gb.automaton();
        let tips: Vec<Vec<u8>> = self.gb.elements().iter().map(|g| self.letters(g.tip, g.degree)).collect();
        let mut out = Vec::new();
        let mut seen = HashMap::new();
        for (ci, c) in self.levels[m].iter().enumerate() {
            let s = self.letters(c.code % self.pows[c.tail_len], c.tail_len);
            for tip in &tips {
                for k in 1..tip.len() {
                    if k > s.len() || s[s.len() - k..] != tip[..k] {
                        continue;
                    }
                    let v = &tip[k..];
                    let len = c.len + v.len();
                    if len > self.maxdeg {
                        continue;
                    }
                    // s v must contain exactly one tip, ending at its end
                    let mut state = 0;
                    let mut first_hit = None;
                    for (p, &l) in s.iter().chain(v.iter()).enumerate() {
                        state = aut.step(state, l);
                        if aut.hit(state).is_some() {
                            first_hit = Some(p);
                            break;
                        }
                    }
                    if first_hit != Some(s.len() + v.len() - 1) {
                        continue;
                    }
                    let mut code = c.code;
                    for &l in v {
                        code = code * self.n + l as u64;
                    }
                    if seen.insert((len, code), ()).is_none() {
                        out.push(Chain {
                            len,
                            code,
                            prev: ci,
                            tail_len: v.len(),
                        });
                    }
                }
            }
        }
        out.sort_by_key(|c| (c.len, c.code));
        out
    }

    /// Normal form of a single word of length `d`.
    fn nf_word(&mut self, w: Word, d: usize) -> Poly<F::Elem> {
        if let Some(p) = self.nf_cache.get(&(d, w)) {
            return p.clone();
        }
        let field = self.gb.field();
        let mut p = Poly::new();
        p.insert(w, field.one());
        reduce_poly(field, self.gb.elements(), self.gb.automaton(), &self.pows, self.n, &mut p, d);
        self.nf_cache.insert((d, w), p.clone());
        p
    }

    /// `d_m(chain c (x) w)` as an element of `F_{m-1}`.
    fn apply_d(&mut self, m: usize, c: usize, w: Word, lw: usize) -> Chained<F::Elem> {
        let field = self.gb.field().clone();
        let mut out = Chained::new();
        let terms = self.boundary[m][c].clone();
        for (c2, pdeg, poly) in terms {
            let c2code = self.levels[m - 1][c2].code;
            let deg = pdeg + lw;
            for (a, coef) in poly {
                let nf = self.nf_word(a * self.pows[lw] + w, deg);
                for (b, coef2) in nf {
                    let key = c2code * self.pows[deg] + b;
                    add_chained(&field, &mut out, key, c2, field.mul(&coef, &coef2));
                }
            }
        }
        out
    }

    /// Contracting homotopy `F_m -> F_{m+1}` on a cycle of total degree `j`.
    fn homotopy(&mut self, m: usize, mut u: Chained<F::Elem>, j: usize) -> Result<Chained<F::Elem>> {
        let field = self.gb.field().clone();
        let mut out = Chained::new();
        while let Some((&word, (c, lambda))) = u.iter().next_back() {
            let (c, lambda) = (*c, lambda.clone());
            let ch = self.levels[m][c].clone();
            let wlen = j - ch.len;
            let w = word % self.pows[wlen];
            let r = if m == 0 {
                1
            } else {
                let aut = self.gb.automaton();
                let s = self.letters(ch.code % self.pows[ch.tail_len], ch.tail_len);
                let wl = self.letters(w, wlen);
                let mut state = 0;
                for &l in &s {
                    state = aut.step(state, l);
                }
                let mut found = None;
                for (p, &l) in wl.iter().enumerate() {
                    state = aut.step(state, l);
                    if aut.hit(state).is_some() {
                        found = Some(p + 1);
                        break;
                    }
                }
                found.ok_or_else(|| Error::Invalid("Anick homotopy applied to a non-cycle".into()))?
            };
            let new_len = ch.len + r;
            let code = word / self.pows[j - new_len];
            let c_new = *self.index[m + 1]
                .get(&(new_len, code))
                .ok_or_else(|| Error::Invalid(format!("missing chain of level {} and length {new_len}", m + 1)))?;
            let rest_len = j - new_len;
            let rest = word % self.pows[rest_len];
            add_chained(&field, &mut out, word, c_new, lambda.clone());
            let dv = self.apply_d(m + 1, c_new, rest, rest_len);
            for (k, (c2, x)) in dv {
                add_chained(&field, &mut u, k, c2, field.neg(&field.mul(&lambda, &x)));
            }
            if u.contains_key(&word) {
                return Err(Error::Invalid("Anick homotopy failed to cancel a leading term".into()));
            }
        }
        Ok(out)
    }

    fn compute_boundary(&mut self, m: usize, c: usize) -> Result<Boundary<F::Elem>> {
        let field = self.gb.field().clone();
        let ch = self.levels[m][c].clone();
        if m == 1 {
            let mut p = Poly::new();
            p.insert(ch.code, field.one());
            return Ok(vec![(0, 1, p)]);
        }
        let t = ch.code % self.pows[ch.tail_len];
        let v = self.apply_d(m - 1, ch.prev, t, ch.tail_len);
        let sv = self.homotopy(m - 2, v, ch.len)?;
        let mut u = Chained::new();
        u.insert(ch.code, (ch.prev, field.one()));
        for (k, (c2, x)) in sv {
            add_chained(&field, &mut u, k, c2, field.neg(&x));
        }
        Ok(self.group(m - 1, u, ch.len))
    }

    /// Splits a keyed element of `F_m` into per-chain coefficients.
    fn group(&self, m: usize, u: Chained<F::Elem>, j: usize) -> Boundary<F::Elem> {
        let mut by_chain: HashMap<usize, Poly<F::Elem>> = HashMap::new();
        for (k, (c, x)) in u {
            let pdeg = j - self.levels[m][c].len;
            by_chain.entry(c).or_default().insert(k % self.pows[pdeg], x);
        }
        let mut out: Boundary<F::Elem> = by_chain
            .into_iter()
            .map(|(c, p)| (c, j - self.levels[m][c].len, p))
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }

    /// Checks `d_{m-1} d_m = 0` on every chain of level `m >= 2`.
    pub fn check_d_squared(&mut self, m: usize) -> bool {
        for c in 0..self.levels[m].len() {
            let field = self.gb.field().clone();
            let mut total = Chained::new();
            for (c2, pdeg, poly) in self.boundary[m][c].clone() {
                for (a, x) in poly {
                    for (k, (c3, y)) in self.apply_d(m - 1, c2, a, pdeg) {
                        add_chained(&field, &mut total, k, c3, field.mul(&x, &y));
                    }
                }
            }
            if !total.is_empty() {
                return false;
            }
        }
        true
    }

    /// Number of chains of level `m` and length `j`.
    pub fn chain_count(&self, m: usize, j: usize) -> usize {
        self.levels[m].iter().filter(|c| c.len == j).count()
    }

    /// Rank of the degree-preserving part of `d_m` in internal degree `j`.
    fn delta_rank(&self, m: usize, j: usize) -> usize {
        let field = self.gb.field();
        let mut ech = Echelon::new(field.clone());
        for (c, ch) in self.levels[m].iter().enumerate() {
            if ch.len != j {
                continue;
            }
            let row: Vec<(usize, F::Elem)> = self.boundary[m][c]
                .iter()
                .filter(|(_, pdeg, _)| *pdeg == 0)
                .filter_map(|(c2, _, p)| p.get(&0).map(|x| (*c2, x.clone())))
                .collect();
            ech.insert(row);
        }
        ech.rank()
    }

    /// `Tor_{i,j}(k,k)` for `i < top`, `j <= maxdeg`.
    pub fn betti(&self) -> BettiTable {
        let top = self.levels.len() - 1;
        let hi = top.saturating_sub(1);
        let mut t = BettiTable::new(hi, self.maxdeg);
        for i in 0..=hi {
            for j in 0..=self.maxdeg {
                let dim = self.chain_count(i, j);
                let out_rank = if i >= 1 { self.delta_rank(i, j) } else { 0 };
                let in_rank = self.delta_rank(i + 1, j);
                t.set(i, j, (dim - out_rank - in_rank) as u64);
            }
        }
        t
    }
}

fn add_chained<F: Field>(field: &F, u: &mut Chained<F::Elem>, key: Word, c: usize, x: F::Elem) {
    use std::collections::btree_map::Entry;
    match u.entry(key) {
        Entry::Vacant(e) => {
            if !field.is_zero(&x) {
                e.insert((c, x));
            }
        }
        Entry::Occupied(mut e) => {
            debug_assert_eq!(e.get().0, c, "one word, two chains");
            let s = field.add(&e.get().1, &x);
            if field.is_zero(&s) {
                e.remove();
            } else {
                e.get_mut().1 = s;
            }
        }
    }
}

/// `Tor_{i,j}` of `T(V)/I` for `i <= 3` and `j <= maxdeg` via Anick chains.
pub fn tor3_of_dual<F: Field>(gb: &NcGroebnerBasis<F>, maxdeg: usize) -> Result<BettiTable> {
    let res = AnickResolution::new(gb, 4, maxdeg)?;
    Ok(res.betti())
}

/// Convenience wrapper computing the basis first.
pub fn tor3_of_presentation<F: Field>(
    field: &F,
    p: &QuadraticPresentation,
    order: &super::WordOrder,
    maxdeg: usize,
) -> Result<BettiTable> {
    let gb = super::nc_groebner(field, p, order, maxdeg)?;
    tor3_of_dual(&gb, maxdeg)
}

/// `Tor_{i,j}` from the normalized bar complex on normal words, for
/// `i <= max_i` and `j <= maxdeg`. Sizes grow quickly; meant for small `j`.
pub fn bar_tor<F: Field>(gb: &NcGroebnerBasis<F>, max_i: usize, maxdeg: usize) -> Result<BettiTable> {
    if maxdeg > gb.complete_through() {
        return Err(Error::Truncated {
            complete: gb.complete_through(),
            requested: maxdeg,
        });
    }
    let field = gb.field();
    let n = gb.rank() as u64;
    let pows = super::nc::powers(gb.rank(), maxdeg);
    let normal: Vec<Vec<Word>> = (0..=maxdeg).map(|d| gb.normal_words(d)).collect::<Result<_>>()?;
    let mut nf_cache: HashMap<(usize, Word), Poly<F::Elem>> = HashMap::new();
    let mut nf = |w: Word, d: usize| -> Poly<F::Elem> {
        nf_cache
            .entry((d, w))
            .or_insert_with(|| {
                let mut p = Poly::new();
                p.insert(w, field.one());
                reduce_poly(field, gb.elements(), gb.automaton(), &pows, n, &mut p, d);
                p
            })
            .clone()
    };
    let mut t = BettiTable::new(max_i, maxdeg);
    for j in 0..=maxdeg {
        // bases of B_i in degree j for i = 0..=max_i+1
        let bases: Vec<Vec<Vec<(usize, Word)>>> = (0..=max_i + 1).map(|i| bar_basis(&normal, i, j)).collect();
        let indices: Vec<HashMap<Vec<(usize, Word)>, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect())
            .collect();
        let mut ranks = vec![0usize; max_i + 2];
        for i in 2..=max_i + 1 {
            let mut ech = Echelon::new(field.clone());
            for cell in &bases[i] {
                let mut img: Poly<F::Elem> = Poly::new();
                for k in 0..i - 1 {
                    let (l1, w1) = cell[k];
                    let (l2, w2) = cell[k + 1];
                    let prod = nf(w1 * pows[l2] + w2, l1 + l2);
                    let sign = if k % 2 == 0 { field.neg(&field.one()) } else { field.one() };
                    for (w, x) in prod {
                        let mut target = cell[..k].to_vec();
                        target.push((l1 + l2, w));
                        target.extend_from_slice(&cell[k + 2..]);
                        let idx = indices[i - 1][&target] as Word;
                        add_term(field, &mut img, idx, field.mul(&sign, &x));
                    }
                }
                ech.insert(img.into_iter().map(|(k, x)| (k as usize, x)).collect());
            }
            ranks[i] = ech.rank();
        }
        for i in 0..=max_i {
            let dim = bases[i].len();
            t.set(i, j, (dim - ranks[i] - ranks[i + 1]) as u64);
        }
    }
    Ok(t)
}

/// Cells `[w_1|...|w_i]` of total length `j`, each `w_k` a nonempty normal word.
fn bar_basis(normal: &[Vec<Word>], i: usize, j: usize) -> Vec<Vec<(usize, Word)>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(normal: &[Vec<Word>], left: usize, remaining: usize, cur: &mut Vec<(usize, Word)>, out: &mut Vec<Vec<(usize, Word)>>) {
        if left == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for l in 1..=remaining.saturating_sub(left - 1) {
            for &w in &normal[l] {
                cur.push((l, w));
                rec(normal, left - 1, remaining - l, cur, out);
                cur.pop();
            }
        }
    }
    rec(normal, i, j, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::gb::{nc_groebner, WordOrder};
    use crate::presentations::catalog::catalog;

    #[test]
    fn free_algebra_has_no_tor3() {
        let p = QuadraticPresentation::free(2);
        let gb = nc_groebner(&Rationals, &p, &WordOrder::natural(2), 6).unwrap();
        let t = tor3_of_dual(&gb, 6).unwrap();
        assert_eq!(t.get(1, 1), 2);
        assert_eq!(t.total(2), 0);
        assert_eq!(t.total(3), 0);
    }

    #[test]
    fn polynomial_ring_in_two_variables() {
        let p = QuadraticPresentation::parse(2, "[X1,X2]").unwrap();
        let gb = nc_groebner(&Rationals, &p, &WordOrder::natural(2), 6).unwrap();
        let t = tor3_of_dual(&gb, 6).unwrap();
        assert_eq!(t.get(2, 2), 1);
        assert_eq!(t.total(3), 0);
        assert_eq!(bar_tor(&gb, 3, 6).unwrap(), t);
    }

    #[test]
    fn non_quadratic_basis_agrees_with_bar_complex() {
        let p = QuadraticPresentation::parse(2, "X2X2 - X1X2").unwrap();
        let gb = nc_groebner(&Rationals, &p, &WordOrder::natural(2), 7).unwrap();
        let mut res = AnickResolution::new(&gb, 4, 7).unwrap();
        for m in 2..=4 {
            assert!(res.check_d_squared(m), "d^2 at level {m}");
        }
        assert_eq!(bar_tor(&gb, 3, 7).unwrap(), res.betti());
    }

    #[test]
    fn case_xii_dual_agrees_with_bar_complex() {
        let e = catalog("caseXII").unwrap();
        let dual = e.dual().unwrap();
        let f = PrimeField::new(32003).unwrap();
        let gb = nc_groebner(&f, &dual, &WordOrder::natural(dual.rank()), 5).unwrap();
        let mut res = AnickResolution::new(&gb, 4, 5).unwrap();
        assert!(res.check_d_squared(3));
        assert!(res.check_d_squared(4));
        assert_eq!(bar_tor(&gb, 3, 5).unwrap(), res.betti());
    }
}

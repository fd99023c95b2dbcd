//! Aho-Corasick automaton over a small alphabet, used to find leading words
//! inside longer words and to count words avoiding them.

use std::collections::VecDeque;

/// Dense-transition Aho-Corasick automaton on letters `0..alphabet`.
#[derive(Clone, Debug)]
pub struct Automaton {
    alphabet: usize,
    goto: Vec<u32>,
    /// for each state, a pattern ending here (directly or via suffix links)
    hit: Vec<Option<u32>>,
    pattern_len: Vec<u32>,
}

impl Automaton {
    /// Builds the automaton for `patterns`; pattern ids are their positions.
    pub fn new(alphabet: usize, patterns: &[Vec<u8>]) -> Self {
        let mut trie: Vec<Vec<u32>> = vec![vec![u32::MAX; alphabet]];
        let mut hit: Vec<Option<u32>> = vec![None];
        for (id, p) in patterns.iter().enumerate() {
            let mut s = 0usize;
            for &c in p {
                let c = c as usize;
                if trie[s][c] == u32::MAX {
                    trie.push(vec![u32::MAX; alphabet]);
                    hit.push(None);
                    trie[s][c] = (trie.len() - 1) as u32;
                }
                s = trie[s][c] as usize;
            }
            if hit[s].is_none() {
                hit[s] = Some(id as u32);
            }
        }
        let states = trie.len();
        let mut goto = vec![0u32; states * alphabet];
        let mut fail = vec![0u32; states];
        let mut queue = VecDeque::new();
        for c in 0..alphabet {
            let t = trie[0][c];
            if t == u32::MAX {
                goto[c] = 0;
            } else {
                goto[c] = t;
                fail[t as usize] = 0;
                queue.push_back(t as usize);
            }
        }
        while let Some(s) = queue.pop_front() {
            if hit[s].is_none() {
                hit[s] = hit[fail[s] as usize];
            }
            for c in 0..alphabet {
                let t = trie[s][c];
                if t == u32::MAX {
                    goto[s * alphabet + c] = goto[fail[s] as usize * alphabet + c];
                } else {
                    fail[t as usize] = goto[fail[s] as usize * alphabet + c];
                    goto[s * alphabet + c] = t;
                    queue.push_back(t as usize);
                }
            }
        }
        let pattern_len = patterns.iter().map(|p| p.len() as u32).collect();
        Self {
            alphabet,
            goto,
            hit,
            pattern_len,
        }
    }

    pub fn states(&self) -> usize {
        self.hit.len()
    }

    #[inline]
    pub fn step(&self, state: usize, letter: u8) -> usize {
        self.goto[state * self.alphabet + letter as usize] as usize
    }

    /// Pattern recognized on entering `state`, if any.
    #[inline]
    pub fn hit(&self, state: usize) -> Option<u32> {
        self.hit[state]
    }

    /// First occurrence (by end position) of a pattern in `word`:
    /// `(pattern id, start position)`.
    pub fn find(&self, word: &[u8]) -> Option<(u32, usize)> {
        let mut s = 0;
        for (i, &c) in word.iter().enumerate() {
            s = self.step(s, c);
            if let Some(id) = self.hit[s] {
                return Some((id, i + 1 - self.pattern_len[id as usize] as usize));
            }
        }
        None
    }

    /// Number of words of each length `0..=maxlen` containing no pattern.
    pub fn count_avoiding(&self, maxlen: usize) -> Vec<u128> {
        let mut cur = vec![0u128; self.states()];
        cur[0] = 1;
        let mut out = vec![1u128];
        for _ in 0..maxlen {
            let mut next = vec![0u128; self.states()];
            for (s, &k) in cur.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                for c in 0..self.alphabet {
                    let t = self.step(s, c as u8);
                    if self.hit[t].is_none() {
                        next[t] += k;
                    }
                }
            }
            out.push(next.iter().sum());
            cur = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_patterns() {
        let a = Automaton::new(3, &[vec![1, 2], vec![2, 0, 2]]);
        assert_eq!(a.find(&[0, 1, 2]), Some((0, 1)));
        assert_eq!(a.find(&[2, 0, 2, 1]), Some((1, 0)));
        assert_eq!(a.find(&[0, 0, 2, 1]), None);
    }

    #[test]
    fn counts_match_brute_force() {
        let pats = vec![vec![1, 0], vec![2, 2], vec![0, 1, 2]];
        let a = Automaton::new(3, &pats);
        let counts = a.count_avoiding(6);
        for len in 0..=6usize {
            let mut brute = 0u128;
            for code in 0..3usize.pow(len as u32) {
                let mut w = vec![0u8; len];
                let mut c = code;
                for slot in w.iter_mut().rev() {
                    *slot = (c % 3) as u8;
                    c /= 3;
                }
                let contains = pats.iter().any(|p| w.windows(p.len()).any(|x| x == p.as_slice()));
                if !contains {
                    brute += 1;
                }
            }
            assert_eq!(counts[len], brute, "length {len}");
        }
    }
}

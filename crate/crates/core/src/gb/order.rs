//! Degree-lexicographic word orders given by a ranking of the generators.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// Deglex order on words: shorter words are smaller, words of equal length
/// compare lexicographically by generator rank.
///
/// Internally every generator is relabeled by its rank, so that comparing
/// relabeled words is plain lexicographic comparison.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordOrder {
    /// generators listed from smallest to largest (0-based)
    seq: Vec<usize>,
    rank: Vec<u8>,
}

impl WordOrder {
    /// `X1 < X2 < ... < Xn`.
    pub fn natural(n: usize) -> Self {
        Self::from_sequence((0..n).collect()).expect("identity permutation")
    }

    /// Order with `seq[0] < seq[1] < ...` (0-based generator indices).
    pub fn from_sequence(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        if n > 255 {
            return Err(Error::Invalid("at most 255 generators are supported".into()));
        }
        let mut rank = vec![u8::MAX; n];
        for (r, &g) in seq.iter().enumerate() {
            if g >= n || rank[g] != u8::MAX {
                return Err(Error::Invalid(format!("{} is not a permutation of 1..{n}", display_seq(&seq))));
            }
            rank[g] = r as u8;
        }
        Ok(Self { seq, rank })
    }

    /// Parses `"5 1 2 4 6 7 3 8 9"` or `"e5,e1,..."` (1-based, smallest first).
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let seq: Vec<usize> = text
            .split(|c: char| c == ',' || c.is_whitespace() || c == '<')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let d = t.trim_start_matches(['e', 'x', 'X']);
                d.parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1)
                    .map(|i| i - 1)
                    .ok_or_else(|| Error::Parse(format!("bad generator `{t}` in order")))
            })
            .collect::<Result<_>>()?;
        if seq.len() != n {
            return Err(Error::Invalid(format!("order lists {} generators, expected {n}", seq.len())));
        }
        Self::from_sequence(seq)
    }

    /// Uniformly random order.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut seq: Vec<usize> = (0..n).collect();
        seq.shuffle(rng);
        Self::from_sequence(seq).expect("shuffled permutation")
    }

    /// The opposite ranking of the generators.
    pub fn reversed(&self) -> Self {
        let mut seq = self.seq.clone();
        seq.reverse();
        Self::from_sequence(seq).expect("reversed permutation")
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Relabeled letter of generator `g`.
    #[inline]
    pub fn letter(&self, g: usize) -> u8 {
        self.rank[g]
    }

    /// Generator carrying relabeled letter `l`.
    #[inline]
    pub fn generator(&self, l: u8) -> usize {
        self.seq[l as usize]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    /// Compares two words of generators under this order.
    pub fn compare(&self, a: &[usize], b: &[usize]) -> std::cmp::Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            a.iter()
                .map(|&g| self.rank[g])
                .cmp(b.iter().map(|&g| self.rank[g]))
        })
    }
}

fn display_seq(seq: &[usize]) -> String {
    seq.iter().map(|g| (g + 1).to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for WordOrder {
    /// 1-based generators, smallest first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display_seq(&self.seq))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    #[test]
    fn parse_and_display() {
        let o = WordOrder::parse("e5, e1, e2, e4, e6, e7, e3, e8, e9", 9).unwrap();
        assert_eq!(o.to_string(), "5 1 2 4 6 7 3 8 9");
        assert_eq!(o.letter(4), 0);
        assert_eq!(o.generator(0), 4);
        assert!(WordOrder::parse("1 1 2", 3).is_err());
        assert!(WordOrder::parse("1 2", 3).is_err());
    }

    #[test]
    fn deglex_comparison() {
        let o = WordOrder::natural(2);
        assert_eq!(o.compare(&[1, 0], &[0, 1]), Ordering::Greater);
        assert_eq!(o.compare(&[1], &[0, 0]), Ordering::Less);
        let r = o.reversed();
        assert_eq!(r.compare(&[1, 0], &[0, 1]), Ordering::Less);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::SeedableRng;

        proptest! {
            #[test]
            fn multiplicative(seed in 0u64..1000, a in proptest::collection::vec(0usize..4, 3),
                              b in proptest::collection::vec(0usize..4, 3),
                              w in proptest::collection::vec(0usize..4, 0..3)) {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let o = WordOrder::random(4, &mut rng);
                let c = o.compare(&a, &b);
                let wa: Vec<usize> = w.iter().chain(a.iter()).copied().collect();
                let wb: Vec<usize> = w.iter().chain(b.iter()).copied().collect();
                prop_assert_eq!(o.compare(&wa, &wb), c);
                let aw: Vec<usize> = a.iter().chain(w.iter()).copied().collect();
                let bw: Vec<usize> = b.iter().chain(w.iter()).copied().collect();
                prop_assert_eq!(o.compare(&aw, &bw), c);
            }
        }
    }
}

//! Counting generator orders under which a quadratic presentation has a
//! quadratic Groebner basis.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::nc::quadratic_gb_certificate;
use super::order::WordOrder;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::presentations::QuadraticPresentation;

/// Prime used for the fast pass.
pub const CENSUS_PRIME: u32 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusMode {
    /// every permutation, in lexicographic order of the ranking
    Full,
    /// `count` uniformly random orders from a seeded generator
    Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub mode: CensusMode,
    pub generators: usize,
    pub total: usize,
    pub passing: usize,
    /// passing orders confirmed again over the rationals
    pub confirmed: usize,
    /// first passing orders found, smallest generator first
    pub witnesses: Vec<String>,
    pub field: String,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Degree-2 relations as dense rows over `F_p`, indexed by `a*n + b`.
struct DenseRelations {
    n: usize,
    p: u32,
    rows: Vec<Vec<u32>>,
}

impl DenseRelations {
    fn new(pres: &QuadraticPresentation) -> Result<Self> {
        let field = PrimeField::new(CENSUS_PRIME)?;
        let n = pres.rank();
        let rows = pres
            .relations_in(&field)?
            .into_iter()
            .map(|r| {
                let mut v = vec![0u32; n * n];
                for (k, x) in r {
                    v[k] = x;
                }
                v
            })
            .collect();
        Ok(Self { n, p: CENSUS_PRIME, rows })
    }

    fn inv(&self, a: u32) -> u32 {
        let (mut r, mut e, mut b) = (1u64, self.p as u64 - 2, a as u64);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p as u64;
            }
            b = b * b % self.p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Whether the reduced basis under `rank` (letter of each generator)
    /// has no degree-3 element.
    fn quadratic(&self, rank: &[u8], scratch: &mut Scratch) -> bool {
        let n = self.n;
        let p = self.p as u64;
        let nn = n * n;
        // relabel and echelonize with the largest word as pivot
        scratch.rows.clear();
        for r in &self.rows {
            let mut v = vec![0u32; nn];
            for a in 0..n {
                for b in 0..n {
                    let x = r[a * n + b];
                    if x != 0 {
                        v[rank[a] as usize * n + rank[b] as usize] = x;
                    }
                }
            }
            scratch.rows.push(v);
        }
        let rows = &mut scratch.rows;
        let mut pivots: Vec<usize> = Vec::with_capacity(rows.len());
        let mut done = 0;
        for col in (0..nn).rev() {
            let Some(k) = (done..rows.len()).find(|&k| rows[k][col] != 0) else { continue };
            rows.swap(done, k);
            let inv = self.inv(rows[done][col]) as u64;
            for x in rows[done].iter_mut() {
                *x = (*x as u64 * inv % p) as u32;
            }
            let pivot_row = rows[done].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k == done || row[col] == 0 {
                    continue;
                }
                let f = p - row[col] as u64;
                for (x, &y) in row.iter_mut().zip(pivot_row.iter()) {
                    if y != 0 {
                        *x = ((*x as u64 + f * y as u64) % p) as u32;
                    }
                }
            }
            pivots.push(col);
            done += 1;
            if done == rows.len() {
                break;
            }
        }
        rows.truncate(done);
        // tip -> row
        scratch.tip_row.clear();
        scratch.tip_row.resize(nn, u32::MAX);
        for (k, &c) in pivots.iter().enumerate() {
            scratch.tip_row[c] = k as u32;
        }
        let tails: Vec<Vec<(usize, u64)>> = rows
            .iter()
            .zip(pivots.iter())
            .map(|(r, &c)| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, &x)| x != 0 && k != c)
                    .map(|(k, &x)| (k, x as u64))
                    .collect()
            })
            .collect();
        let cube = &mut scratch.cube;
        cube.clear();
        cube.resize(nn * n, 0);
        for (k1, &t1) in pivots.iter().enumerate() {
            let (a, b) = (t1 / n, t1 % n);
            for (k2, &t2) in pivots.iter().enumerate() {
                if t2 / n != b {
                    continue;
                }
                let c = t2 % n;
                // g1 * c - a * g2, leading words cancel
                let mut top = 0usize;
                for &(w, x) in &tails[k1] {
                    let idx = w * n + c;
                    cube[idx] = ((cube[idx] as u64 + x) % p) as u32;
                    top = top.max(idx);
                }
                for &(w, x) in &tails[k2] {
                    let idx = a * nn + w;
                    cube[idx] = ((cube[idx] as u64 + p - x) % p) as u32;
                    top = top.max(idx);
                }
                // reduce from the largest word down
                let mut nonzero = false;
                for w in (0..=top).rev() {
                    let x = cube[w];
                    if x == 0 {
                        continue;
                    }
                    let (left, right) = (w / n, w % nn);
                    let (r, base_shift) = if scratch.tip_row[left] != u32::MAX {
                        (scratch.tip_row[left] as usize, true)
                    } else if scratch.tip_row[right] != u32::MAX {
                        (scratch.tip_row[right] as usize, false)
                    } else {
                        nonzero = true;
                        continue;
                    };
                    cube[w] = 0;
                    let f = p - x as u64;
                    for &(t, y) in &tails[r] {
                        let idx = if base_shift { t * n + w % n } else { (w / nn) * nn + t };
                        cube[idx] = ((cube[idx] as u64 + f * y) % p) as u32;
                    }
                }
                if nonzero {
                    cube.iter_mut().for_each(|x| *x = 0);
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Default)]
struct Scratch {
    rows: Vec<Vec<u32>>,
    tip_row: Vec<u32>,
    cube: Vec<u32>,
}

/// Next permutation in lexicographic order; false after the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn all_orders(n: usize) -> Vec<Vec<usize>> {
    let mut v: Vec<usize> = (0..n).collect();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

fn rank_of(seq: &[usize]) -> Vec<u8> {
    let mut rank = vec![0u8; seq.len()];
    for (r, &g) in seq.iter().enumerate() {
        rank[g] = r as u8;
    }
    rank
}

/// Certificate under one order using the modular fast path.
pub fn quadratic_certificate_fast(p: &QuadraticPresentation, order: &WordOrder) -> Result<bool> {
    let rel = DenseRelations::new(p)?;
    Ok(rel.quadratic(&rank_of(order.sequence()), &mut Scratch::default()))
}

/// Counts orders passing the quadratic-basis certificate.
///
/// Orders are screened modulo [`CENSUS_PRIME`]; every passing order is then
/// confirmed over the rationals. `jobs > 1` splits the work over threads.
pub fn permutation_census(p: &QuadraticPresentation, mode: CensusMode, jobs: usize, max_witnesses: usize) -> Result<CensusReport> {
    let start = Instant::now();
    let n = p.rank();
    if n > 12 && mode == CensusMode::Full {
        return Err(Error::Invalid(format!("full census over {n}! orders is not supported; use sampling")));
    }
    let rel = DenseRelations::new(p)?;
    let orders: Vec<Vec<usize>> = match mode {
        CensusMode::Full => all_orders(n),
        CensusMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| WordOrder::random(n, &mut rng).sequence().to_vec()).collect()
        }
    };
    let screen = |chunk: &[Vec<usize>]| -> Vec<bool> {
        let mut scratch = Scratch::default();
        chunk.iter().map(|s| rel.quadratic(&rank_of(s), &mut scratch)).collect()
    };
    let passed: Vec<bool> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Invalid(e.to_string()))?;
        pool.install(|| orders.par_chunks(4096).flat_map_iter(screen).collect())
    } else {
        screen(&orders)
    };
    let hits: Vec<&Vec<usize>> = orders.iter().zip(passed.iter()).filter(|(_, &ok)| ok).map(|(o, _)| o).collect();
    let confirm = |seq: &&Vec<usize>| -> Result<bool> {
        let order = WordOrder::from_sequence(seq.to_vec())?;
        quadratic_gb_certificate(&Rationals, p, &order)
    };
    let confirmed: Vec<bool> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Invalid(e.to_string()))?;
        pool.install(|| hits.par_iter().map(confirm).collect::<Result<_>>())?
    } else {
        hits.iter().map(confirm).collect::<Result<_>>()?
    };
    let witnesses = hits
        .iter()
        .zip(confirmed.iter())
        .filter(|(_, &ok)| ok)
        .take(max_witnesses)
        .map(|(s, _)| WordOrder::from_sequence(s.to_vec()).expect("permutation").to_string())
        .collect();
    Ok(CensusReport {
        mode,
        generators: n,
        total: orders.len(),
        passing: hits.len(),
        confirmed: confirmed.iter().filter(|&&b| b).count(),
        witnesses,
        field: PrimeField::new(CENSUS_PRIME)?.name(),
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::catalog::catalog;

    #[test]
    fn permutations_are_enumerated() {
        assert_eq!(all_orders(4).len(), 24);
        let mut v = vec![0, 1, 2];
        assert!(next_permutation(&mut v));
        assert_eq!(v, vec![0, 2, 1]);
        let mut v = vec![2, 1, 0];
        assert!(!next_permutation(&mut v));
    }

    #[test]
    fn single_commutator_passes_both_orders() {
        let p = QuadraticPresentation::parse(2, "[X1,X2]").unwrap();
        let r = permutation_census(&p, CensusMode::Full, 1, 5).unwrap();
        assert_eq!((r.passing, r.total, r.confirmed), (2, 2, 2));
    }

    #[test]
    fn fast_path_agrees_with_general_engine() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for name in ["caseIV", "caseXII", "case63", "R20", "I78"] {
            let dual = catalog(name).unwrap().dual().unwrap();
            for _ in 0..15 {
                let o = WordOrder::random(dual.rank(), &mut rng);
                let fast = quadratic_certificate_fast(&dual, &o).unwrap();
                let slow = quadratic_gb_certificate(&Rationals, &dual, &o).unwrap();
                assert_eq!(fast, slow, "{name} under {o}");
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let dual = catalog("case63").unwrap().dual().unwrap();
        let mode = CensusMode::Sample { count: 200, seed: 11 };
        let a = permutation_census(&dual, mode, 1, 3).unwrap();
        let b = permutation_census(&dual, mode, 1, 3).unwrap();
        assert_eq!((a.passing, &a.witnesses), (b.passing, &b.witnesses));
    }
}

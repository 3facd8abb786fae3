//! Exhaustive enumeration of affine F2 subspaces by Gray code.
//!
//! A walk visits `base + Σ_{j∈S} g_j` for every subset `S` of the
//! generators, changing one generator per step. Each generator is a tuple of
//! components so callers can carry images along (for example `[α | δα]`).
//! Large walks are split on the high generators into independent chunks and
//! merged with a caller-supplied commutative, associative reduction, so the
//! result does not depend on the number of worker threads.

use crate::bits::Bits;
use rayon::prelude::*;
use std::cmp::Ordering;

/// Generators below this count are walked on one thread.
const PARALLEL_MIN: usize = 12;

pub(crate) fn walk<T, I, V, M>(base: &[Bits], gens: &[Vec<Bits>], parallel: bool, init: I, visit: V, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    V: Fn(&mut T, &[Bits], u64) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let k = gens.len();
    assert!(k < 64, "walk over {k} generators");
    let split = if parallel && k >= PARALLEL_MIN { (k - 8).min(10) } else { 0 };
    let low = k - split;
    let run = |chunk: u64| -> T {
        let mut acc = init();
        let mut cur: Vec<Bits> = base.to_vec();
        let mut sel: u64 = 0;
        for t in 0..split {
            if (chunk >> t) & 1 == 1 {
                xor_into(&mut cur, &gens[low + t]);
                sel |= 1 << (low + t);
            }
        }
        visit(&mut acc, &cur, sel);
        for step in 1..(1u64 << low) {
            let j = step.trailing_zeros() as usize;
            xor_into(&mut cur, &gens[j]);
            sel ^= 1 << j;
            visit(&mut acc, &cur, sel);
        }
        acc
    };
    if split == 0 {
        run(0)
    } else {
        (0..1u64 << split).into_par_iter().map(run).reduce(&init, &merge)
    }
}

fn xor_into(cur: &mut [Bits], g: &[Bits]) {
    for (c, x) in cur.iter_mut().zip(g) {
        c.xor_assign(x);
    }
}

/// Integer units `Σ c(σ)` of a cochain, grouped by distinct weight.
#[derive(Clone, Debug)]
pub struct Weigher {
    classes: Vec<(u64, Bits)>,
}

impl Weigher {
    pub fn new(c_values: &[u64]) -> Self {
        let mut distinct: Vec<u64> = c_values.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let n = c_values.len();
        let classes = distinct
            .into_iter()
            .filter(|&c| c != 0)
            .map(|c| (c, Bits::from_indices(n, (0..n).filter(|&k| c_values[k] == c))))
            .collect();
        Weigher { classes }
    }

    #[inline]
    pub fn units(&self, v: &Bits) -> u64 {
        self.classes.iter().map(|(c, m)| c * v.and_count(m) as u64).sum()
    }
}

/// A non-negative ratio compared by cross multiplication.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Ratio {}
impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

/// Running minimum of `(key, witness)`; ties go to the lexicographically
/// smallest witness tuple.
#[derive(Clone, Debug)]
pub(crate) struct Best<K> {
    pub item: Option<(K, Vec<Bits>)>,
}

impl<K: Ord + Copy> Best<K> {
    pub fn new() -> Self {
        Best { item: None }
    }

    /// Offers a candidate; `witness` is only built when it can win.
    pub fn offer(&mut self, key: K, witness: impl FnOnce() -> Vec<Bits>) {
        match &self.item {
            Some((k, _)) if key > *k => {}
            Some((k, w)) if key == *k => {
                let cand = witness();
                if cand < *w {
                    self.item = Some((key, cand));
                }
            }
            _ => self.item = Some((key, witness())),
        }
    }

    pub fn merge(mut self, other: Self) -> Self {
        if let Some((k, w)) = other.item {
            self.offer(k, || w);
        }
        self
    }
}

/// Minimum units over `v + span(gens)` with the lexicographically smallest minimizer.
/// Each generator is a one-component tuple.
pub(crate) fn coset_min_exact(v: &Bits, gens: &[Vec<Bits>], weigher: &Weigher, parallel: bool) -> (u64, Bits) {
    let best = walk(
        std::slice::from_ref(v),
        gens,
        parallel,
        Best::new,
        |b: &mut Best<u64>, cur, _| {
            let u = weigher.units(&cur[0]);
            b.offer(u, || vec![cur[0].clone()]);
        },
        Best::merge,
    );
    let (u, mut w) = best.item.expect("nonempty walk");
    (u, w.swap_remove(0))
}

/// Greedy single-generator descent, charging one unit of `budget` per evaluation.
pub(crate) fn greedy_descent(
    start: Bits,
    gens: &[Bits],
    weigher: &Weigher,
    accept: &dyn Fn(&Bits) -> bool,
    budget: &mut usize,
) -> (u64, Bits) {
    let mut cur = start;
    let mut units = weigher.units(&cur);
    loop {
        let mut improved = false;
        for g in gens {
            if *budget == 0 {
                return (units, cur);
            }
            *budget -= 1;
            let cand = cur.xor(g);
            let u = weigher.units(&cand);
            if u < units && accept(&cand) {
                cur = cand;
                units = u;
                improved = true;
            }
        }
        if !improved {
            return (units, cur);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(len: usize, mask: u64) -> Bits {
        Bits::from_indices(len, (0..len).filter(|i| (mask >> i) & 1 == 1))
    }

    #[test]
    fn walk_visits_every_combination_once() {
        for k in [0usize, 3, 13] {
            let gens: Vec<Vec<Bits>> = (0..k).map(|j| vec![bits(k.max(1), 1 << j)]).collect();
            let base = vec![Bits::zeros(k.max(1))];
            for parallel in [false, true] {
                let seen = walk(
                    &base,
                    &gens,
                    parallel,
                    Vec::new,
                    |acc: &mut Vec<u64>, cur, sel| {
                        let m = cur[0].iter_ones().fold(0u64, |a, i| a | 1 << i);
                        assert_eq!(m, sel);
                        acc.push(sel);
                    },
                    |mut a, mut b| {
                        a.append(&mut b);
                        a
                    },
                );
                let mut seen = seen;
                seen.sort_unstable();
                assert_eq!(seen, (0..1u64 << k).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn best_breaks_ties_lexicographically() {
        let mut b = Best::new();
        b.offer(3u64, || vec![bits(4, 0b0001)]);
        b.offer(3u64, || vec![bits(4, 0b0010)]);
        b.offer(4u64, || vec![bits(4, 0)]);
        assert_eq!(b.item.unwrap().1[0], bits(4, 0b0010));
    }

    #[test]
    fn weigher_groups_weights() {
        let w = Weigher::new(&[1, 3, 3, 0, 1]);
        assert_eq!(w.units(&bits(5, 0b11111)), 8);
        assert_eq!(w.units(&bits(5, 0b00110)), 6);
    }
}

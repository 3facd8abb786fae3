//! Dense bit vectors over F2.
//!
//! Bit `j` is stored in word `j / 64` at position `j % 64`. The total order
//! on vectors of equal length is lexicographic on the string `b_0 b_1 ...`,
//! so the empty set is the smallest vector and `{0}` the largest.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Bits { len, words: vec![u64::MAX; len.div_ceil(64)] };
        b.clear_tail();
        b
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bits::zeros(len);
        for i in indices {
            b.set(i, true);
        }
        b
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and_count(&self, mask: &Bits) -> u32 {
        self.words.iter().zip(&mask.words).map(|(a, b)| (a & b).count_ones()).sum()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest set index.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    /// Concatenation `[self | tail]`.
    pub fn concat(&self, tail: &Bits) -> Bits {
        let mut out = Bits::zeros(self.len + tail.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in tail.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The first `len` bits.
    pub fn prefix(&self, len: usize) -> Bits {
        assert!(len <= self.len);
        let mut out = Bits { len, words: self.words[..len.div_ceil(64)].to_vec() };
        out.clear_tail();
        out
    }

    /// Bits `start..self.len()` as a new vector.
    pub fn suffix(&self, start: usize) -> Bits {
        Bits::from_indices(self.len - start, self.iter_ones().filter(|&i| i >= start).map(|i| i - start))
    }

    /// Lexicographic comparison of the bit strings `b_0 b_1 ...`.
    pub fn lex_cmp(&self, other: &Bits) -> Ordering {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().zip(&other.words) {
            let x = a ^ b;
            if x != 0 {
                let low = x & x.wrapping_neg();
                return if a & low == 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| self.lex_cmp(other))
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "Bits({s})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_puts_low_index_first() {
        let empty = Bits::zeros(70);
        let a = Bits::from_indices(70, [0]);
        let b = Bits::from_indices(70, [1, 2, 3]);
        let c = Bits::from_indices(70, [69]);
        assert!(empty < c);
        assert!(c < b);
        assert!(b < a);
    }

    #[test]
    fn concat_prefix_suffix() {
        let a = Bits::from_indices(5, [0, 4]);
        let b = Bits::from_indices(67, [1, 66]);
        let ab = a.concat(&b);
        assert_eq!(ab.len(), 72);
        assert_eq!(ab.prefix(5), a);
        assert_eq!(ab.suffix(5), b);
    }

    #[test]
    fn ones_clears_tail() {
        let o = Bits::ones(65);
        assert_eq!(o.count_ones(), 65);
        assert_eq!(o.iter_ones().last(), Some(64));
    }
}

//! Finite fields F_q by lookup tables.
//!
//! Elements are integers `0..q`; for `q = p^r` the integer
//! `Σ c_j p^j` encodes the polynomial `Σ c_j x^j` reduced modulo a fixed
//! irreducible polynomial of degree `r`.

use crate::error::{Error, Result};

/// Monic irreducible moduli, low coefficient first (leading 1 omitted).
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),       // x^2 + x + 1
    (2, 3, &[1, 1, 0]),    // x^3 + x + 1
    (3, 2, &[1, 0]),       // x^2 + 1
    (2, 4, &[1, 1, 0, 0]), // x^4 + x + 1
    (5, 2, &[2, 0]),       // x^2 + 2
    (3, 3, &[1, 2, 0]),    // x^3 + 2x + 1
];

const MAX_PRIME: u32 = 1 << 10;

#[derive(Clone, Debug)]
pub struct Field {
    pub p: u32,
    pub r: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut m, mut r) = (q, 0);
    while m % p == 0 {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p, r))
}

impl Field {
    pub fn new(q: u32) -> Result<Field> {
        let (p, r) = prime_power(q).ok_or_else(|| Error::BadParameter(format!("{q} is not a prime power")))?;
        let modulus: Vec<u32> = if r == 1 {
            if !is_prime(p) || p > MAX_PRIME {
                return Err(Error::BadParameter(format!("prime {p} outside the supported range")));
            }
            vec![0]
        } else {
            MODULI
                .iter()
                .find(|m| m.0 == p && m.1 == r)
                .map(|m| m.2.to_vec())
                .ok_or_else(|| Error::BadParameter(format!("no built-in field of order {q}")))?
        };
        let digits = |mut e: u32| -> Vec<u32> {
            (0..r)
                .map(|_| {
                    let d = e % p;
                    e /= p;
                    d
                })
                .collect()
        };
        let encode = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = encode(&s) as u16;
                let m = if r == 1 {
                    (a * b) % p
                } else {
                    // schoolbook product then reduce by x^r = -Σ m_j x^j
                    let mut prod = vec![0u32; 2 * r as usize - 1];
                    for (i, x) in da.iter().enumerate() {
                        for (j, y) in db.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    for k in (r as usize..prod.len()).rev() {
                        let c = prod[k];
                        if c != 0 {
                            prod[k] = 0;
                            for (j, &mj) in modulus.iter().enumerate() {
                                let t = k - r as usize + j;
                                prod[t] = (prod[t] + (p - c) * mj) % p;
                            }
                        }
                    }
                    encode(&prod[..r as usize])
                };
                mul[a as usize * qs + b as usize] = m as u16;
            }
        }
        let neg: Vec<u16> = (0..q).map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u16).collect();
        let mut inv = vec![0u16; qs];
        for a in 1..q {
            let b = (1..q).find(|&b| mul[(a * q + b) as usize] == 1);
            match b {
                Some(b) => inv[a as usize] = b as u16,
                None => return Err(Error::BadParameter(format!("modulus for q = {q} is reducible"))),
            }
        }
        Ok(Field { p, r, q, modulus, add, mul, neg, inv })
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 16] {
            let f = Field::new(q).unwrap();
            let q = q as u16;
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn larger_tables_have_inverses() {
        for q in [25u32, 27] {
            let f = Field::new(q).unwrap();
            assert!((1..q as u16).all(|a| f.mul(a, f.inv(a)) == 1));
        }
    }

    #[test]
    fn rejects_unsupported_orders() {
        assert!(Field::new(6).is_err());
        assert!(Field::new(32).is_err());
        assert!(Field::new(1).is_err());
    }
}

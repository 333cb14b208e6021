//! Arithmetic in the local ring Z/qZ with q = p^l.
//!
//! Every entry the crate manipulates is a canonical representative in
//! `[0, q)` stored as `u64`. With q capped at 2^20 all products fit in
//! `u64` without overflow, so no big-integer support is needed.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A prime-power modulus q = p^l.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Modulus {
    p: u64,
    l: u32,
    q: u64,
}

/// Hard ceiling on q; keeps all arithmetic inside u64.
pub const MAX_Q: u64 = 1 << 20;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Modulus {
    pub fn new(p: u64, l: u32) -> Result<Self> {
        let err = Error::InvalidModulus { p, l, max: MAX_Q };
        if l == 0 || !is_prime(p) {
            return Err(err);
        }
        let mut q: u64 = 1;
        for _ in 0..l {
            q = q.checked_mul(p).ok_or(Error::InvalidModulus { p, l, max: MAX_Q })?;
            if q > MAX_Q {
                return Err(Error::InvalidModulus { p, l, max: MAX_Q });
            }
        }
        Ok(Modulus { p, l, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.q as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.q
    }

    /// p-adic valuation of the residue class, capped at l; val(0) = l.
    pub fn valuation(&self, a: u64) -> u32 {
        debug_assert!(a < self.q);
        if a == 0 {
            return self.l;
        }
        let mut v = 0;
        let mut a = a;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn pow_p(&self, v: u32) -> u64 {
        debug_assert!(v <= self.l);
        self.p.pow(v)
    }

    #[inline]
    pub fn is_unit(&self, a: u64) -> bool {
        a % self.p != 0
    }

    /// Multiplicative inverse of a unit; None for non-units.
    pub fn inverse(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a % self.q) {
            return None;
        }
        // extended Euclid on (a, q)
        let (mut r0, mut r1) = (self.q as i64, (a % self.q) as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let k = r0 / r1;
            (r0, r1) = (r1, r0 - k * r1);
            (s0, s1) = (s1, s0 - k * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce(s0))
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.q;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Number of units: phi(p^l) = p^(l-1) (p-1).
    pub fn unit_count(&self) -> u64 {
        self.q / self.p * (self.p - 1)
    }

    /// Small generating set for the unit group (Z/q)^*.
    pub fn unit_group_generators(&self) -> Vec<u64> {
        let target = self.unit_count();
        let mut gens: Vec<u64> = Vec::new();
        let mut span = vec![false; self.q as usize];
        span[1] = 1 < self.q || self.q == 1;
        let mut span_size = 1u64;
        for cand in 2..self.q {
            if span_size == target {
                break;
            }
            if !self.is_unit(cand) || span[cand as usize] {
                continue;
            }
            gens.push(cand);
            // re-span from scratch
            span.iter_mut().for_each(|b| *b = false);
            span[1] = true;
            span_size = 1;
            let mut frontier = vec![1u64];
            while let Some(x) = frontier.pop() {
                for g in &gens {
                    let y = self.mul(x, *g);
                    if !span[y as usize] {
                        span[y as usize] = true;
                        span_size += 1;
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }
}

impl std::fmt::Display for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.l == 1 {
            write!(f, "Z/{}", self.q)
        } else {
            write!(f, "Z/{}^{}", self.p, self.l)
        }
    }
}

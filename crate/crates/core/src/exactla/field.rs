//! Prime fields GF(p) for small p.

use crate::error::{Error, Result};

/// Largest characteristic accepted.
pub const MAX_P: u32 = 251;

/// The prime field GF(p). Elements are plain `u32` residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Fp> {
        if !(2..=MAX_P).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::Input(format!("characteristic {p} is not a prime in 2..={MAX_P}")));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    /// `acc + a*b`.
    #[inline]
    pub fn mul_add(self, acc: u32, a: u32, b: u32) -> u32 {
        (acc + a * b) % self.p
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// Panics on zero; callers check pivots first.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in GF({})", self.p);
        self.pow(a, u64::from(self.p - 2))
    }

    pub fn div(self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(i64::from(self.p)) as u32
    }

    /// `(-1)^k` as a residue.
    #[inline]
    pub fn sign(self, odd: bool) -> u32 {
        if odd {
            self.p - 1
        } else {
            1 % self.p
        }
    }

    /// Signed representative in `(-p/2, p/2]`, for display.
    pub fn centered(self, a: u32) -> i64 {
        let a = i64::from(a);
        let p = i64::from(self.p);
        if 2 * a > p {
            a - p
        } else {
            a
        }
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

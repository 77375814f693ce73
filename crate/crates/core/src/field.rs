//! Arithmetic modulo a prime below 2^32 and dense matrices over it.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus >= 1 << 32 {
            return Err(Error::InvalidArgument(format!("modulus {modulus} must be below 2^32")));
        }
        if !is_prime(modulus) {
            return Err(Error::InvalidArgument(format!("modulus {modulus} is not prime")));
        }
        Ok(PrimeField { modulus })
    }

    /// Smallest prime field with modulus strictly above `bound`.
    pub fn above(bound: u64) -> Result<Self> {
        PrimeField::new(next_prime_above(bound))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.modulus as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.modulus
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        base %= self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.modulus));
        self.pow(a, self.modulus - 2)
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.modulus)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn next_prime_above(bound: u64) -> u64 {
    let mut c = bound + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn mul(&self, other: &Matrix, field: &PrimeField) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = field.add(out.get(r, c), field.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self, field: &PrimeField) -> usize {
        let mut basis = IncrementalBasis::new(self.rows, *field);
        (0..self.cols).filter(|&c| basis.insert(&self.column(c))).count()
    }
}

/// Row-reduced set of linearly independent vectors supporting "insert if
/// independent" in `O(rank · len)`.
#[derive(Debug, Clone)]
pub struct IncrementalBasis {
    field: PrimeField,
    len: usize,
    // each stored vector has a 1 at its pivot and zeros at all earlier pivots
    vectors: Vec<(usize, Vec<u64>)>,
}

impl IncrementalBasis {
    pub fn new(len: usize, field: PrimeField) -> Self {
        IncrementalBasis {
            field,
            len,
            vectors: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (pivot, b) in &self.vectors {
            let factor = w[*pivot];
            if factor != 0 {
                for (x, y) in w.iter_mut().zip(b) {
                    if *y != 0 {
                        *x = f.sub(*x, f.mul(factor, *y));
                    }
                }
            }
        }
        w
    }

    /// True if `v` is not in the span of the stored vectors.
    pub fn is_independent_of(&self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        self.reduce(v).iter().any(|&x| x != 0)
    }

    /// Adds `v` if it is independent of the stored vectors; reports whether
    /// it was added.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let mut w = self.reduce(v);
        let Some(pivot) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let scale = f.inv(w[pivot]);
        for x in w.iter_mut() {
            *x = f.mul(*x, scale);
        }
        for (_, b) in self.vectors.iter_mut() {
            let factor = b[pivot];
            if factor != 0 {
                for (x, y) in b.iter_mut().zip(&w) {
                    if *y != 0 {
                        *x = f.sub(*x, f.mul(factor, *y));
                    }
                }
            }
        }
        self.vectors.push((pivot, w));
        true
    }
}

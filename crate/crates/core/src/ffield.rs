//! Prime fields: discrete logs, reduction of rationals, polynomial evaluation.

use num_integer::Integer;

use crate::arith::Q;
use crate::error::{Error, Result};
use crate::germ::GermPoly;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= p {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn reduce_q(q: &Q, p: u64) -> Result<u64> {
    let pi = p as i128;
    let den = q.denom().mod_floor(&pi);
    if den == 0 {
        return Err(Error::BadPrime { p });
    }
    let num = q.numer().mod_floor(&pi) as u64;
    Ok(num * pow_mod(den as u64, p - 2, p) % p)
}

/// F_p with its smallest primitive root and a log table.
#[derive(Debug, Clone)]
pub struct PrimeField {
    p: u64,
    generator: u64,
    log: Vec<u32>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = p - 1;
        let factors: Vec<u64> = (2..=n).filter(|&q| n % q == 0 && is_prime(q)).collect();
        let generator = (1..p)
            .find(|&g| factors.iter().all(|&q| pow_mod(g, n / q, p) != 1))
            .expect("a prime field has a primitive root");
        let mut log = vec![0u32; p as usize];
        let mut x = 1u64;
        for e in 0..n {
            log[x as usize] = e as u32;
            x = x * generator % p;
        }
        Ok(PrimeField { p, generator, log })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, x: u64) -> u32 {
        debug_assert!(x % self.p != 0);
        self.log[(x % self.p) as usize]
    }

    pub fn pow_gen(&self, e: u64) -> u64 {
        pow_mod(self.generator, e % (self.p - 1), self.p)
    }
}

/// A polynomial with coefficients reduced mod p.
#[derive(Debug, Clone)]
pub struct ModPoly {
    pub p: u64,
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, u64)>,
}

impl ModPoly {
    /// Reduction of `g`; errors when p divides a denominator.
    pub fn reduce(g: &GermPoly, p: u64) -> Result<Self> {
        let mut terms = Vec::new();
        for (e, c) in g.terms() {
            let c = reduce_q(c, p)?;
            if c != 0 {
                terms.push((e.clone(), c));
            }
        }
        Ok(ModPoly { p, nvars: g.nvars(), terms })
    }

    /// x_i times the partial derivative in x_i.
    pub fn euler_partial(&self, i: usize) -> ModPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), (e[i] as u64 % self.p) * c % self.p))
            .filter(|(_, c)| *c != 0)
            .collect();
        ModPoly { p: self.p, nvars: self.nvars, terms }
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        let p = self.p;
        let mut s = 0u64;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    t = t * pow_mod(*xi, ei as u64, p) % p;
                }
            }
            s = (s + t) % p;
        }
        s
    }

    /// Evaluation with a precomputed table `pw[v][x] = x^k` is often faster;
    /// this builds one for exponents up to the maximum present.
    pub fn power_table(&self) -> Vec<Vec<u64>> {
        let maxe = self
            .terms
            .iter()
            .flat_map(|(e, _)| e.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        (0..=maxe)
            .map(|k| (0..self.p).map(|x| pow_mod(x, k as u64, self.p)).collect())
            .collect()
    }

    pub fn eval_with(&self, table: &[Vec<u64>], x: &[u64]) -> u64 {
        let p = self.p;
        let mut s = 0u64;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    t = t * table[ei as usize][*xi as usize] % p;
                }
            }
            s += t;
        }
        s % p
    }
}

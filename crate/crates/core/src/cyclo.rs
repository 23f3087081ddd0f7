//! Exact arithmetic in `Q(zeta_n)`.
//!
//! Elements are kept in the group ring `Q[Z/n]` as integer numerators over a
//! common denominator; two elements are equal in the field iff their
//! difference is divisible by the n-th cyclotomic polynomial.

use num_integer::Integer;

use crate::arith::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclo {
    num: Vec<i128>,
    den: i128,
}

impl Cyclo {
    pub fn zero(n: usize) -> Self {
        Cyclo { num: vec![0; n], den: 1 }
    }

    pub fn from_int(n: usize, v: i128) -> Self {
        let mut c = Cyclo::zero(n);
        c.num[0] = v;
        c
    }

    pub fn from_q(n: usize, v: Q) -> Self {
        let mut c = Cyclo::zero(n);
        c.num[0] = *v.numer();
        c.den = *v.denom();
        c
    }

    /// `zeta^k`.
    pub fn zeta_pow(n: usize, k: i64) -> Self {
        let mut c = Cyclo::zero(n);
        c.num[k.rem_euclid(n as i64) as usize] = 1;
        c
    }

    /// Builds `(1/den) * sum_k num[k] zeta^k`.
    pub fn from_parts(num: Vec<i128>, den: i128) -> Self {
        assert!(den != 0);
        let mut c = Cyclo { num, den };
        c.normalize();
        c
    }

    pub fn order(&self) -> usize {
        self.num.len()
    }

    fn normalize(&mut self) {
        let g = self.num.iter().fold(self.den, |g, x| g.gcd(x));
        if g > 1 {
            for x in self.num.iter_mut() {
                *x /= g;
            }
            self.den /= g;
        }
        if self.den < 0 {
            for x in self.num.iter_mut() {
                *x = -*x;
            }
            self.den = -self.den;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let l = self.den.lcm(&other.den);
        let (a, b) = (l / self.den, l / other.den);
        let num = self.num.iter().zip(&other.num).map(|(x, y)| x * a + y * b).collect();
        Cyclo::from_parts(num, l)
    }

    pub fn neg(&self) -> Self {
        Cyclo { num: self.num.iter().map(|x| -x).collect(), den: self.den }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.num.len();
        let mut num = vec![0i128; n];
        for (i, &x) in self.num.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.num.iter().enumerate() {
                if y != 0 {
                    num[(i + j) % n] += x * y;
                }
            }
        }
        Cyclo::from_parts(num, self.den * other.den)
    }

    pub fn scale(&self, q: Q) -> Self {
        let num = self.num.iter().map(|x| x * q.numer()).collect();
        Cyclo::from_parts(num, self.den * q.denom())
    }

    /// Multiplication by `zeta^k`.
    pub fn rotate(&self, k: i64) -> Self {
        let n = self.num.len();
        let k = k.rem_euclid(n as i64) as usize;
        let mut num = vec![0i128; n];
        for (i, &x) in self.num.iter().enumerate() {
            num[(i + k) % n] = x;
        }
        Cyclo { num, den: self.den }
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.num.len();
        let mut num = vec![0i128; n];
        for (i, &x) in self.num.iter().enumerate() {
            num[(n - i) % n] = x;
        }
        Cyclo { num, den: self.den }
    }

    /// Image under `zeta -> root` in `F_p`, for `root` of order `n` and `p`
    /// prime to the denominator.
    pub fn reduce_mod(&self, root: u64, p: u64) -> u64 {
        let pi = p as i128;
        let mut s = 0i128;
        let mut r = 1i128;
        for &x in &self.num {
            s = (s + x.mod_floor(&pi) * r) % pi;
            r = r * root as i128 % pi;
        }
        let den = self.den.mod_floor(&pi) as u64;
        assert!(den != 0, "denominator divisible by p");
        (s as u64) * crate::ffield::pow_mod(den, p - 2, p) % p
    }
}

/// The field `Q(zeta_n)`, holding the cyclotomic polynomial for reductions.
#[derive(Debug, Clone)]
pub struct CycloField {
    n: usize,
    /// Coefficients of `Phi_n`, lowest degree first.
    phi: Vec<i128>,
}

fn poly_div_exact(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = *b.last().expect("nonzero divisor");
    let mut q = vec![0i128; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] / lead;
        q[i] = c;
        for (k, &bk) in b.iter().enumerate() {
            r[i + k] -= c * bk;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn cyclotomic_polynomial(n: usize) -> Vec<i128> {
    let mut p = vec![0i128; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

impl CycloField {
    pub fn new(n: usize) -> Self {
        CycloField { n, phi: cyclotomic_polynomial(n) }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Canonical coordinates in the power basis `1, zeta, ..., zeta^{deg-1}`.
    pub fn canonical(&self, x: &Cyclo) -> Vec<Q> {
        assert_eq!(x.order(), self.n);
        let deg = self.degree();
        let mut r = x.num.clone();
        for i in (deg..r.len()).rev() {
            let c = r[i];
            if c != 0 {
                for (k, &pk) in self.phi.iter().enumerate() {
                    r[i - deg + k] -= c * pk;
                }
            }
        }
        r.truncate(deg);
        r.into_iter().map(|v| Q::new(v, x.den)).collect()
    }

    pub fn is_zero(&self, x: &Cyclo) -> bool {
        self.canonical(x).iter().all(|c| *c == Q::from_integer(0))
    }

    pub fn eq(&self, a: &Cyclo, b: &Cyclo) -> bool {
        self.is_zero(&a.sub(b))
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self, x: &Cyclo) -> Option<Q> {
        let c = self.canonical(x);
        if c.iter().skip(1).all(|v| *v == Q::from_integer(0)) {
            Some(c[0])
        } else {
            None
        }
    }

    pub fn render(&self, x: &Cyclo) -> String {
        let c = self.canonical(x);
        let mut parts = Vec::new();
        for (k, v) in c.iter().enumerate() {
            if *v == Q::from_integer(0) {
                continue;
            }
            let coef = crate::arith::fmt_q(v);
            parts.push(match k {
                0 => coef,
                1 => format!("{coef}*z"),
                _ => format!("{coef}*z^{k}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(CycloField::new(18).degree(), 6);
    }

    #[test]
    fn sum_of_roots_vanishes() {
        for n in [2usize, 3, 4, 6, 12, 18] {
            let f = CycloField::new(n);
            let mut s = Cyclo::zero(n);
            for k in 0..n {
                s = s.add(&Cyclo::zeta_pow(n, k as i64));
            }
            assert!(f.is_zero(&s), "n={n}");
            let z = Cyclo::zeta_pow(n, 1);
            assert_eq!(f.as_rational(&z.mul(&z.conj())), Some(Q::from_integer(1)));
            assert_eq!(z.rotate(3), z.mul(&Cyclo::zeta_pow(n, 3)));
        }
    }

    #[test]
    fn quadratic_gauss_sum() {
        // sum of zeta_12^{3k} * legendre-like signs: (zeta_4 - zeta_4^3)^2 = -4
        let f = CycloField::new(12);
        let x = Cyclo::zeta_pow(12, 3).sub(&Cyclo::zeta_pow(12, 9));
        assert_eq!(f.as_rational(&x.mul(&x)), Some(Q::from_integer(-4)));
        assert_eq!(f.render(&Cyclo::from_q(12, Q::new(1, 2))), "1/2");
    }

    #[test]
    fn reduction_mod_prime() {
        // zeta_6 -> 3 in F_7 (3 has order 6)
        let z = Cyclo::zeta_pow(6, 1);
        assert_eq!(z.reduce_mod(3, 7), 3);
        let half = Cyclo::from_q(6, Q::new(1, 2));
        assert_eq!(half.reduce_mod(3, 7), 4);
    }
}

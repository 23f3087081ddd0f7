//! Finite-field oracle: fiber counts, multiplicative character expansions
//! and an exact check of the convolution identity at the level of
//! Frobenius traces.
//!
//! Characters of `F_p^x` are `chi_j(g^e) = zeta^{j e}` with `g` the smallest
//! primitive root and `zeta = zeta_{p-1}`; `chi_0(0) = 1` and `chi_j(0) = 0`
//! otherwise. Everything is exact in `Q(zeta_{p-1})`.
//!
//! Point counts only see global polynomials, so the inner germs must be
//! quasi-homogeneous for the counts to reflect the local Milnor data.

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::{Cyclo, CycloField};
use crate::error::{Error, Result};
use crate::ffield::{is_prime, ModPoly, PrimeField};
use crate::germ::GermPoly;
use crate::ghodge::residue_order;
use crate::newton::is_quasi_homogeneous;

pub const DEFAULT_MAX_ENUM: u128 = 100_000_000;

/// Enumeration bound, overridable with `SINGCONV_MAX_ENUM`.
pub fn max_enum() -> u128 {
    std::env::var("SINGCONV_MAX_ENUM")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ENUM)
}

fn field_for(p: u64) -> Result<PrimeField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    PrimeField::new(p)
}

/// Histogram of `eval` over `F_p^nvars`, split over the first coordinate.
fn histogram<F>(nvars: usize, p: u64, bound: u128, eval: F) -> Result<Vec<u64>>
where
    F: Fn(&[u64]) -> u64 + Sync,
{
    let size = (p as u128).checked_pow(nvars as u32).unwrap_or(u128::MAX);
    if size > bound {
        return Err(Error::TooLarge { size, bound });
    }
    let ps = p as usize;
    Ok((0..p)
        .into_par_iter()
        .map(|x0| {
            let mut local = vec![0u64; ps];
            let mut x = vec![0u64; nvars];
            x[0] = x0;
            loop {
                local[eval(&x) as usize] += 1;
                let mut i = 1;
                while i < nvars {
                    x[i] += 1;
                    if x[i] < p {
                        break;
                    }
                    x[i] = 0;
                    i += 1;
                }
                if i >= nvars {
                    break;
                }
            }
            local
        })
        .reduce(
            || vec![0u64; ps],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberCountTable {
    pub p: u64,
    pub nvars: usize,
    /// `values[x] = #{y : g(y) = x}`.
    pub values: Vec<u64>,
}

pub fn count_fibers(g: &GermPoly, p: u64) -> Result<FiberCountTable> {
    count_fibers_bounded(g, p, max_enum())
}

pub fn count_fibers_bounded(g: &GermPoly, p: u64, bound: u128) -> Result<FiberCountTable> {
    field_for(p)?;
    let f = ModPoly::reduce(g, p)?;
    let table = f.power_table();
    let values = histogram(g.nvars(), p, bound, |x| f.eval_with(&table, x))?;
    Ok(FiberCountTable { p, nvars: g.nvars(), values })
}

/// Coefficients of `N(x) = sum_j c_j chi_j(x)` on `F_p^x`.
#[derive(Debug, Clone)]
pub struct CharCoefficients {
    pub p: u64,
    pub d: u32,
    pub generator: u64,
    /// One coefficient per character `chi_j`, `j = 0..p-1`.
    pub all: Vec<Cyclo>,
}

impl CharCoefficients {
    /// Index of the character of order dividing `d` numbered `k`.
    pub fn index(&self, k: u32) -> usize {
        (k as u64 * (self.p - 1) / self.d as u64) as usize
    }

    pub fn coefficient(&self, k: u32) -> &Cyclo {
        &self.all[self.index(k)]
    }

    /// The coefficients for `chi^d = 1`, numbered `k = 0..d`.
    pub fn block(&self) -> Vec<Cyclo> {
        (0..self.d).map(|k| self.coefficient(k).clone()).collect()
    }

    /// Nonzero coefficients outside the block, with the order of their character.
    pub fn outside(&self, field: &CycloField) -> Vec<(usize, u32)> {
        let n = (self.p - 1) as u32;
        let step = n / self.d;
        (0..n)
            .filter(|&j| j % step != 0 && !field.is_zero(&self.all[j as usize]))
            .map(|j| (j as usize, residue_order(j, n)))
            .collect()
    }

    /// `sum_j c_j chi_j(x)` for `x != 0`.
    pub fn reconstruct(&self, field_p: &PrimeField, x: u64) -> Cyclo {
        let n = (self.p - 1) as usize;
        let e = field_p.log(x) as i64;
        let mut acc = Cyclo::zero(n);
        for (j, c) in self.all.iter().enumerate() {
            acc = acc.add(&c.rotate(j as i64 * e));
        }
        acc
    }
}

/// `(1/(p-1)) sum_{x != 0} value(x) chi_j(x)^-1` for every `j`.
fn fourier(field_p: &PrimeField, value: impl Fn(u64) -> Cyclo) -> Vec<Cyclo> {
    let p = field_p.p();
    let n = (p - 1) as usize;
    let vals: Vec<(i64, Cyclo)> = (1..p).map(|x| (field_p.log(x) as i64, value(x))).collect();
    (0..n)
        .map(|j| {
            let mut acc = Cyclo::zero(n);
            for (e, v) in &vals {
                acc = acc.add(&v.rotate(-(j as i64) * e));
            }
            acc.scale(crate::arith::Q::new(1, n as i128))
        })
        .collect()
}

/// Expansion over all characters, without the tameness check.
pub fn character_expansion(t: &FiberCountTable, d: u32) -> Result<CharCoefficients> {
    let fp = field_for(t.p)?;
    if d == 0 || (t.p - 1) % d as u64 != 0 {
        return Err(Error::PreconditionViolation(format!("{d} does not divide {}", t.p - 1)));
    }
    let n = (t.p - 1) as usize;
    let all = fourier(&fp, |x| Cyclo::from_int(n, t.values[x as usize] as i128));
    Ok(CharCoefficients { p: t.p, d, generator: fp.generator(), all })
}

/// Expansion whose coefficients must vanish outside `chi^d = 1`.
pub fn char_decompose(t: &FiberCountTable, d: u32) -> Result<CharCoefficients> {
    let c = character_expansion(t, d)?;
    let field = CycloField::new((t.p - 1) as usize);
    if let Some(&(_, order)) = c.outside(&field).first() {
        return Err(Error::TamenessViolation { order: order as u64, d: d as u64 });
    }
    Ok(c)
}

/// Character-weighted counts of `f` on the closed stratum where the
/// variables in `subset` vanish.
#[derive(Debug, Clone)]
pub struct StratumProfile {
    pub p: u64,
    pub subset: Vec<usize>,
    pub d: Vec<u32>,
    pub m: u32,
    /// Character tuples `(k_i mod d_i)` for the variables outside the subset.
    pub characters: Vec<Vec<u32>>,
    /// `sums[c][u] = sum_{x : f(x) = u} prod_i chi_{k_i}(x_i)`.
    pub sums: Vec<Vec<Cyclo>>,
    /// Expansion in `u != 0` of `sums[c] - [c trivial]`, over all characters.
    pub expansion: Vec<Vec<Cyclo>>,
}

impl StratumProfile {
    /// `sums[c][u] - [c trivial]`.
    pub fn reduced_sum(&self, c: usize, u: u64) -> Cyclo {
        let s = &self.sums[c][u as usize];
        if self.characters[c].iter().all(|&k| k == 0) {
            s.sub(&Cyclo::from_int(s.order(), 1))
        } else {
            s.clone()
        }
    }
}

fn check_divides(p: u64, what: &str, x: u32) -> Result<()> {
    if x == 0 || (p - 1) % x as u64 != 0 {
        return Err(Error::PreconditionViolation(format!("{what} = {x} does not divide p - 1 = {}", p - 1)));
    }
    Ok(())
}

fn char_tuples(orders: &[u32]) -> Vec<Vec<u32>> {
    crate::ghodge::GroupSpec { orders: orders.to_vec(), monodromy: None }.characters()
}

pub fn stratum_profile(f: &GermPoly, d: &[u32], subset: &[usize], p: u64, m: u32) -> Result<StratumProfile> {
    let fp = field_for(p)?;
    let n = f.nvars();
    if d.len() != n {
        return Err(Error::PreconditionViolation(format!("{} exponents for {n} variables", d.len())));
    }
    for &di in d {
        check_divides(p, "d_i", di)?;
    }
    check_divides(p, "m", m)?;
    if subset.iter().any(|&i| i >= n) {
        return Err(Error::BadSelector(subset.to_vec()));
    }
    let big_n = (p - 1) as usize;
    let fm = ModPoly::reduce(f, p)?;
    let table = fm.power_table();
    let free: Vec<usize> = (0..n).filter(|i| !subset.contains(i)).collect();
    let orders: Vec<u32> = free.iter().map(|&i| d[i]).collect();
    let characters = char_tuples(&orders);

    // weights[u][c][exp] = number of points with f = u whose character value
    // for tuple c is zeta^exp
    let ps = p as usize;
    let tuple_count = characters.len();
    let mut weights = vec![vec![vec![0i128; big_n]; tuple_count]; ps];
    let mut x = vec![0u64; n];
    let total = (p as u128).pow(free.len() as u32);
    if total > max_enum() {
        return Err(Error::TooLarge { size: total, bound: max_enum() });
    }
    for idx in 0..total {
        let mut r = idx;
        for &i in &free {
            x[i] = (r % p as u128) as u64;
            r /= p as u128;
        }
        let u = fm.eval_with(&table, &x) as usize;
        'tuples: for (c, ks) in characters.iter().enumerate() {
            let mut e = 0usize;
            for (slot, &i) in free.iter().enumerate() {
                let k = ks[slot] as usize;
                if x[i] == 0 {
                    if k != 0 {
                        continue 'tuples;
                    }
                } else {
                    let step = big_n / d[i] as usize;
                    e += k * step * fp.log(x[i]) as usize;
                }
            }
            weights[u][c][e % big_n] += 1;
        }
    }
    let sums: Vec<Vec<Cyclo>> = (0..tuple_count)
        .map(|c| (0..ps).map(|u| Cyclo::from_parts(weights[u][c].clone(), 1)).collect())
        .collect();
    let mut prof = StratumProfile { p, subset: subset.to_vec(), d: d.to_vec(), m, characters, sums, expansion: vec![] };
    prof.expansion = (0..tuple_count).map(|c| fourier(&fp, |u| prof.reduced_sum(c, u))).collect();
    Ok(prof)
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_enum: u128,
    /// Refuse inner germs that are not quasi-homogeneous.
    pub require_quasi_homogeneous: bool,
    /// Also count the composite directly when small enough.
    pub direct_check: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_enum: max_enum(), require_quasi_homogeneous: true, direct_check: true }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterRow {
    /// `j` in `chi_j`.
    pub index: usize,
    pub order: u32,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub p: u64,
    pub m: u32,
    pub generator: u64,
    /// `N(u) - prod_i N_i(0)` for `u = 0..p`, the `u = 0` slot unused.
    pub lhs_counts: Vec<i128>,
    pub rows: Vec<CharacterRow>,
    pub pointwise_equal: bool,
    /// Whether the direct count of the composite agreed with the fibered one;
    /// absent when it was too large to run.
    pub direct_count_agrees: Option<bool>,
    /// Whether every character in the expansion has order dividing `m`.
    pub orders_divide_m: bool,
    pub pass: bool,
}

impl VerifyReport {
    pub fn discrepancies(&self) -> Vec<&CharacterRow> {
        self.rows.iter().filter(|r| !r.equal).collect()
    }
}

/// Checks `N_{f o g}(u) - prod N_i(0)` against the subset sum
/// `sum_I (-1)^|I| sum_k prod_{i not in I} c_{i,k_i} (S_I(k; u) - [k = 0])
///  prod_{i in I} (c_{i,0} - N_i(0))`, character by character.
pub fn verify_convolution(
    f: &GermPoly,
    gs: &[GermPoly],
    d: &[u32],
    p: u64,
    m: u32,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    let fp = field_for(p)?;
    let n = f.nvars();
    if gs.len() != n || d.len() != n {
        return Err(Error::PreconditionViolation(format!(
            "f has {n} variables but {} inner germs and {} exponents",
            gs.len(),
            d.len()
        )));
    }
    for &di in d {
        check_divides(p, "d_i", di)?;
    }
    check_divides(p, "m", m)?;
    if opts.require_quasi_homogeneous {
        for (i, g) in gs.iter().enumerate() {
            if !is_quasi_homogeneous(g)? {
                return Err(Error::PreconditionViolation(format!("inner germ {i} is not quasi-homogeneous")));
            }
        }
    }
    let big_n = (p - 1) as usize;
    let field = CycloField::new(big_n);
    let tables: Vec<FiberCountTable> =
        gs.iter().map(|g| count_fibers_bounded(g, p, opts.max_enum)).collect::<Result<_>>()?;
    let coeffs: Vec<CharCoefficients> =
        tables.iter().zip(d).map(|(t, &di)| char_decompose(t, di)).collect::<Result<_>>()?;

    // left side via the fibered count over x
    let fm = ModPoly::reduce(f, p)?;
    let ftab = fm.power_table();
    let size = (p as u128).pow(n as u32);
    if size > opts.max_enum {
        return Err(Error::TooLarge { size, bound: opts.max_enum });
    }
    let mut fibered = vec![0i128; p as usize];
    let mut x = vec![0u64; n];
    for idx in 0..size {
        let mut r = idx;
        for xi in x.iter_mut() {
            *xi = (r % p as u128) as u64;
            r /= p as u128;
        }
        let w: i128 = x.iter().zip(&tables).map(|(&xi, t)| t.values[xi as usize] as i128).product();
        fibered[fm.eval_with(&ftab, &x) as usize] += w;
    }
    let central: i128 = tables.iter().map(|t| t.values[0] as i128).product();
    let lhs_counts: Vec<i128> = fibered.iter().map(|v| v - central).collect();

    let direct_count_agrees = if opts.direct_check {
        direct_composite(f, gs, p, opts.max_enum)?.map(|direct| direct == fibered)
    } else {
        None
    };

    // right side
    let mut rhs = vec![Cyclo::zero(big_n); p as usize];
    for mask in 0u32..(1 << n) {
        let inside: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let outside: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        let prof = stratum_profile(f, d, &inside, p, m)?;
        let mut scalar = Cyclo::from_int(big_n, if inside.len() % 2 == 1 { -1 } else { 1 });
        for &i in &inside {
            let e = coeffs[i].coefficient(0).sub(&Cyclo::from_int(big_n, tables[i].values[0] as i128));
            scalar = scalar.mul(&e);
        }
        for (c, ks) in prof.characters.iter().enumerate() {
            let mut w = scalar.clone();
            for (slot, &i) in outside.iter().enumerate() {
                w = w.mul(coeffs[i].coefficient(ks[slot]));
            }
            if field.is_zero(&w) {
                continue;
            }
            for u in 1..p {
                rhs[u as usize] = rhs[u as usize].add(&w.mul(&prof.reduced_sum(c, u)));
            }
        }
    }

    let pointwise_equal =
        (1..p as usize).all(|u| field.eq(&rhs[u], &Cyclo::from_int(big_n, lhs_counts[u])));
    let lhs_exp = fourier(&fp, |u| Cyclo::from_int(big_n, lhs_counts[u as usize]));
    let rhs_exp = fourier(&fp, |u| rhs[u as usize].clone());
    let step = big_n / m as usize;
    let mut orders_divide_m = true;
    let rows: Vec<CharacterRow> = (0..big_n)
        .map(|j| {
            let equal = field.eq(&lhs_exp[j], &rhs_exp[j]);
            if j % step != 0 && !field.is_zero(&lhs_exp[j]) {
                orders_divide_m = false;
            }
            CharacterRow {
                index: j,
                order: residue_order(j as u32, big_n as u32),
                lhs: field.render(&lhs_exp[j]),
                rhs: field.render(&rhs_exp[j]),
                equal,
            }
        })
        .collect();
    let pass = pointwise_equal
        && rows.iter().all(|r| r.equal)
        && orders_divide_m
        && direct_count_agrees != Some(false);
    Ok(VerifyReport {
        p,
        m,
        generator: fp.generator(),
        lhs_counts,
        rows,
        pointwise_equal,
        direct_count_agrees,
        orders_divide_m,
        pass,
    })
}

/// Fiber counts of `f(g_1(y_1), .., g_n(y_n))` by enumerating all `y`, or
/// None when that exceeds the bound.
pub fn direct_composite(f: &GermPoly, gs: &[GermPoly], p: u64, bound: u128) -> Result<Option<Vec<i128>>> {
    let fm = ModPoly::reduce(f, p)?;
    let ftab = fm.power_table();
    let gm: Vec<ModPoly> = gs.iter().map(|g| ModPoly::reduce(g, p)).collect::<Result<_>>()?;
    let gtab: Vec<Vec<Vec<u64>>> = gm.iter().map(|g| g.power_table()).collect();
    let total: usize = gs.iter().map(|g| g.nvars()).sum();
    let size = (p as u128).checked_pow(total as u32).unwrap_or(u128::MAX);
    if size > bound {
        return Ok(None);
    }
    let counts = histogram(total, p, bound, |y| {
        let mut xs = Vec::with_capacity(gm.len());
        let mut off = 0;
        for (g, t) in gm.iter().zip(&gtab) {
            xs.push(g.eval_with(t, &y[off..off + g.nvars]));
            off += g.nvars;
        }
        fm.eval_with(&ftab, &xs)
    })?;
    Ok(Some(counts.into_iter().map(|c| c as i128).collect()))
}

/// One nontrivial character pair of the Fermat curve `x_1^{d_1} + x_2^{d_2} = u`
/// as seen by point counts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairAtom {
    /// `(k_1, k_2, c)` with `c` the monodromy residue mod `m`.
    pub chi: Vec<u32>,
    /// 1 when the Jacobi sum has absolute value `sqrt p`, 2 when it is a root of unity.
    pub weight: u32,
    /// Hodge type read off from whether the Jacobi sum vanishes modulo the
    /// prime above `p` on which `zeta -> g`.
    pub hodge: (u32, u32),
}

/// Reads the Fermat pair class off Jacobi sums over `F_p`.
pub fn fermat_pair_oracle(d1: u32, d2: u32, p: u64, m: u32) -> Result<Vec<PairAtom>> {
    let f = GermPoly::from_exponents(2, &[&[1, 0], &[0, 1]])?;
    let prof = stratum_profile(&f, &[d1, d2], &[], p, m)?;
    let big_n = (p - 1) as usize;
    let field = CycloField::new(big_n);
    let step = big_n / m as usize;
    let g = PrimeField::new(p)?.generator();
    let mut out = Vec::new();
    for (c, ks) in prof.characters.iter().enumerate() {
        if ks.contains(&0) {
            continue;
        }
        for (j, coef) in prof.expansion[c].iter().enumerate() {
            if field.is_zero(coef) {
                continue;
            }
            if j % step != 0 {
                return Err(Error::TamenessViolation { order: residue_order(j as u32, big_n as u32) as u64, d: m as u64 });
            }
            let norm = field.as_rational(&coef.mul(&coef.conj()));
            let weight = match norm {
                Some(v) if v == crate::arith::Q::from_integer(p as i128) => 1,
                Some(v) if v == crate::arith::Q::from_integer(1) => 2,
                _ => return Err(Error::Mismatch(format!("unexpected Jacobi sum {}", field.render(coef)))),
            };
            let hodge = match (weight, coef.reduce_mod(g, p) == 0) {
                (2, _) => (1, 1),
                (_, true) => (1, 0),
                (_, false) => (0, 1),
            };
            out.push(PairAtom { chi: vec![ks[0], ks[1], (j / step) as u32], weight, hodge });
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Q;

    fn germ(n: usize, exps: &[&[u32]]) -> GermPoly {
        GermPoly::from_exponents(n, exps).unwrap()
    }

    #[test]
    fn fiber_examples() {
        assert_eq!(count_fibers(&germ(1, &[&[2]]), 5).unwrap().values, vec![1, 2, 0, 0, 2]);
        assert_eq!(count_fibers(&germ(1, &[&[1]]), 7).unwrap().values, vec![1; 7]);
        assert_eq!(count_fibers(&germ(2, &[&[1, 1]]), 3).unwrap().values, vec![5, 2, 2]);
        assert!(matches!(count_fibers_bounded(&germ(3, &[&[1, 1, 1]]), 7, 100), Err(Error::TooLarge { .. })));
        assert!(matches!(count_fibers(&germ(1, &[&[1]]), 9), Err(Error::NotPrime(9))));
        let half = GermPoly::new(1, [(vec![1], Q::new(1, 5))]).unwrap();
        assert!(matches!(count_fibers(&half, 5), Err(Error::BadPrime { .. })));
    }

    #[test]
    fn decomposition_examples() {
        let field = CycloField::new(4);
        let c = char_decompose(&count_fibers(&germ(1, &[&[2]]), 5).unwrap(), 2).unwrap();
        assert_eq!(field.as_rational(c.coefficient(0)), Some(Q::from_integer(1)));
        assert_eq!(field.as_rational(c.coefficient(1)), Some(Q::from_integer(1)));
        let c = char_decompose(&count_fibers(&germ(1, &[&[1]]), 5).unwrap(), 1).unwrap();
        assert_eq!(field.as_rational(c.coefficient(0)), Some(Q::from_integer(1)));
        let field6 = CycloField::new(6);
        let c = char_decompose(&count_fibers(&germ(1, &[&[3]]), 7).unwrap(), 3).unwrap();
        for k in 0..3 {
            assert_eq!(field6.as_rational(c.coefficient(k)), Some(Q::from_integer(1)));
        }
        // y^2 is not tame for d = 1
        let t = count_fibers(&germ(1, &[&[2]]), 5).unwrap();
        assert!(matches!(char_decompose(&t, 1), Err(Error::TamenessViolation { order: 2, d: 1 })));
        assert!(matches!(char_decompose(&t, 3), Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn reconstruction_is_exact() {
        let t = count_fibers(&germ(2, &[&[2, 0], &[0, 3]]), 13).unwrap();
        let c = character_expansion(&t, 6).unwrap();
        let fp = PrimeField::new(13).unwrap();
        let field = CycloField::new(12);
        for x in 1..13 {
            assert_eq!(field.as_rational(&c.reconstruct(&fp, x)), Some(Q::from_integer(t.values[x as usize] as i128)));
        }
    }

    #[test]
    fn stratum_examples() {
        let f = germ(2, &[&[1, 0], &[0, 1]]);
        let origin = stratum_profile(&f, &[2, 3], &[0, 1], 7, 6).unwrap();
        let field = CycloField::new(6);
        assert_eq!(origin.characters, vec![Vec::<u32>::new()]);
        assert_eq!(field.as_rational(&origin.expansion[0][0]), Some(Q::from_integer(-1)));
        let one = stratum_profile(&germ(1, &[&[1]]), &[2], &[], 5, 2).unwrap();
        let f4 = CycloField::new(4);
        // trivial slice: S = 1 for every u, so nothing is left after the subtraction
        assert!(one.expansion[0].iter().all(|c| f4.is_zero(c)));
        // Legendre slice carries exactly the Legendre character
        assert_eq!(f4.as_rational(&one.expansion[1][2]), Some(Q::from_integer(1)));
        let full = stratum_profile(&f, &[2, 3], &[], 7, 6).unwrap();
        assert_eq!(full.characters.len(), 6);
        let plain: i128 = (0..7).map(|u| field.as_rational(&full.sums[0][u]).unwrap().to_integer()).sum();
        assert_eq!(plain, 49);
    }

    #[test]
    fn cusp_composite_passes() {
        let f = germ(2, &[&[1, 0], &[0, 1]]);
        let gs = [germ(1, &[&[2]]), germ(1, &[&[3]])];
        let r = verify_convolution(&f, &gs, &[2, 3], 7, 6, &VerifyOptions::default()).unwrap();
        assert_eq!(r.lhs_counts[1] + 1, 11);
        assert!(r.pass, "{:?}", r.discrepancies());
        assert_eq!(r.direct_count_agrees, Some(true));
    }

    #[test]
    fn smooth_inner_passes() {
        let f = germ(2, &[&[2, 0], &[0, 1]]);
        let gs = [germ(1, &[&[1]]), germ(1, &[&[1]])];
        let r = verify_convolution(&f, &gs, &[1, 1], 7, 2, &VerifyOptions::default()).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn product_composite_passes() {
        let f = germ(2, &[&[1, 1]]);
        let gs = [germ(1, &[&[2]]), germ(2, &[&[1, 1]])];
        let r = verify_convolution(&f, &gs, &[2, 1], 13, 2, &VerifyOptions::default()).unwrap();
        assert!(r.pass, "{:?}", r.discrepancies());
    }

    #[test]
    fn preconditions() {
        let f = germ(2, &[&[1, 0], &[0, 1]]);
        let gs = [germ(1, &[&[2]]), germ(1, &[&[3]])];
        let o = VerifyOptions::default();
        assert!(matches!(verify_convolution(&f, &gs, &[2, 3], 5, 6, &o), Err(Error::PreconditionViolation(_))));
        let wild = [germ(1, &[&[2], &[3]]), germ(1, &[&[3]])];
        assert!(matches!(verify_convolution(&f, &wild, &[2, 3], 7, 6, &o), Err(Error::PreconditionViolation(_))));
        assert!(matches!(verify_convolution(&f, &gs[..1], &[2], 7, 6, &o), Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn pair_oracle_matches_fractional_rule() {
        let atoms = fermat_pair_oracle(2, 3, 7, 6).unwrap();
        assert_eq!(
            atoms,
            vec![
                PairAtom { chi: vec![1, 1, 5], weight: 1, hodge: (1, 0) },
                PairAtom { chi: vec![1, 2, 1], weight: 1, hodge: (0, 1) },
            ]
        );
        let node = fermat_pair_oracle(2, 2, 5, 2).unwrap();
        assert_eq!(node, vec![PairAtom { chi: vec![1, 1, 0], weight: 2, hodge: (1, 1) }]);
    }
}

//! Small exact linear algebra over Z and Q.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Q = Ratio<i128>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides out the content; the zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_all(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn lcm_all<I: IntoIterator<Item = u64>>(it: I) -> u64 {
    it.into_iter().fold(1u64, |l, x| l.lcm(&x))
}

fn to_q(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect())
        .collect()
}

/// Row echelon form in place; returns pivot columns.
fn echelon(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in c..cols {
                    let t = m[r][j] * f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = to_q(rows);
    echelon(&mut m).len()
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_subset(rows: &[Vec<i64>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut acc: Vec<Vec<i64>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        acc.push(r.clone());
        if rank(&acc) == acc.len() {
            chosen.push(i);
        } else {
            acc.pop();
        }
    }
    chosen
}

/// Unique solution of a square system, or None when singular.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let piv = echelon(&mut m);
    if piv.len() != n || piv.iter().any(|&c| c >= n) {
        return None;
    }
    Some((0..n).map(|i| m[i][n]).collect())
}

/// Clears denominators and divides out the content.
pub fn integer_direction(v: &[Q]) -> Vec<i64> {
    let den = v.iter().fold(1i128, |l, x| l.lcm(x.denom()));
    let ints: Vec<i128> = v.iter().map(|x| (x * Q::from_integer(den)).to_integer()).collect();
    let g = ints.iter().fold(0i128, |g, x| g.gcd(x));
    ints.iter()
        .map(|&x| if g == 0 { 0 } else { (x / g) as i64 })
        .collect()
}

/// Component of `r` orthogonal to the span of the independent rows `basis`,
/// as a primitive integer vector.
pub fn orthogonal_component(basis: &[Vec<i64>], r: &[i64]) -> Vec<i64> {
    let k = basis.len();
    let n = r.len();
    let rq: Vec<Q> = r.iter().map(|&x| Q::from_integer(x as i128)).collect();
    if k == 0 {
        return integer_direction(&rq);
    }
    let bq = to_q(basis);
    let gram: Vec<Vec<Q>> = (0..k)
        .map(|i| (0..k).map(|j| qdot(&bq[i], &bq[j])).collect())
        .collect();
    let rhs: Vec<Q> = (0..k).map(|i| qdot(&bq[i], &rq)).collect();
    let c = solve(&gram, &rhs).expect("basis rows must be independent");
    let mut u = rq;
    for i in 0..k {
        for j in 0..n {
            let t = c[i] * bq[i][j];
            u[j] -= t;
        }
    }
    integer_direction(&u)
}

fn qdot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |s, (x, y)| s + x * y)
}

pub fn qdot_int(a: &[Q], b: &[i64]) -> Q {
    a.iter()
        .zip(b)
        .fold(Q::zero(), |s, (x, &y)| s + x * Q::from_integer(y as i128))
}

/// Renders a rational as `a` or `a/b`.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: i128 = a.trim().parse().ok()?;
        let b: i128 = b.trim().parse().ok()?;
        if b == 0 {
            return None;
        }
        Some(Q::new(a, b))
    } else {
        s.parse::<i128>().ok().map(Q::from_integer)
    }
}

pub fn is_nonneg(v: &[i64]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

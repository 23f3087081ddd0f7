//! Virtual equivariant Hodge structures over finite abelian groups.
//!
//! A class is a finite formal sum of atoms `(p, q, chi)` with integer
//! multiplicities, where `chi` is a character of `mu_{c_1} x ... x mu_{c_r}`
//! written as residues `k_j mod c_j`. Only graded pieces are recorded, so the
//! weight of an atom is `p + q`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_q, Q};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub orders: Vec<u32>,
    /// Index of the factor carrying the monodromy, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<usize>,
}

impl GroupSpec {
    pub fn new(orders: Vec<u32>, monodromy: Option<usize>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::Parse(format!("group orders must be positive: {orders:?}")));
        }
        if let Some(i) = monodromy {
            if i >= orders.len() {
                return Err(Error::Parse(format!("monodromy index {i} out of range")));
            }
        }
        Ok(GroupSpec { orders, monodromy })
    }

    /// `mu_m` as the monodromy group.
    pub fn cyclic(m: u32) -> Self {
        GroupSpec { orders: vec![m], monodromy: Some(0) }
    }

    pub fn trivial() -> Self {
        GroupSpec { orders: vec![], monodromy: None }
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn monodromy_order(&self) -> Option<u32> {
        self.monodromy.map(|i| self.orders[i])
    }

    pub fn identity(&self) -> Vec<u32> {
        vec![0; self.orders.len()]
    }

    /// Every character of the group, in lexicographic order.
    pub fn characters(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &c in &self.orders {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..c).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

/// Order of the residue `k` in `Z/c`.
pub fn residue_order(k: u32, c: u32) -> u32 {
    c / k.gcd(&c)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HodgeAtom {
    pub p: u32,
    pub q: u32,
    pub chi: Vec<u32>,
}

impl HodgeAtom {
    pub fn new(p: u32, q: u32, chi: Vec<u32>) -> Self {
        HodgeAtom { p, q, chi }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqHodgeClass {
    group: GroupSpec,
    atoms: BTreeMap<HodgeAtom, i64>,
}

/// A homomorphism of character groups, `target_j = sum_i rows[j][i] * source_i`.
#[derive(Debug, Clone)]
pub struct CharMap {
    pub target: GroupSpec,
    pub rows: Vec<Vec<i64>>,
}

impl CharMap {
    fn check(&self, source: &GroupSpec) -> Result<()> {
        if self.rows.len() != self.target.len() {
            return Err(Error::NotASubgroup(format!(
                "{} rows for a target with {} factors",
                self.rows.len(),
                self.target.len()
            )));
        }
        for (j, row) in self.rows.iter().enumerate() {
            if row.len() != source.len() {
                return Err(Error::NotASubgroup(format!("row {j} has wrong length")));
            }
            let tj = self.target.orders[j] as i64;
            for (i, &a) in row.iter().enumerate() {
                if (a * source.orders[i] as i64).rem_euclid(tj) != 0 {
                    return Err(Error::NotASubgroup(format!(
                        "coefficient {a} from order {} into order {tj}",
                        source.orders[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, chi: &[u32]) -> Vec<u32> {
        self.rows
            .iter()
            .zip(&self.target.orders)
            .map(|(row, &c)| {
                let s: i64 = row.iter().zip(chi).map(|(a, &k)| a * k as i64).sum();
                s.rem_euclid(c as i64) as u32
            })
            .collect()
    }
}

impl EqHodgeClass {
    pub fn zero(group: GroupSpec) -> Self {
        EqHodgeClass { group, atoms: BTreeMap::new() }
    }

    /// The trivial structure `[Q]`.
    pub fn unit(group: GroupSpec) -> Self {
        let chi = group.identity();
        Self::single(group, HodgeAtom::new(0, 0, chi), 1)
    }

    /// `L = [Q(-1)]`.
    pub fn lefschetz(group: GroupSpec) -> Self {
        let chi = group.identity();
        Self::single(group, HodgeAtom::new(1, 1, chi), 1)
    }

    fn single(group: GroupSpec, atom: HodgeAtom, mult: i64) -> Self {
        let mut c = Self::zero(group);
        c.bump(atom, mult);
        c
    }

    pub fn from_atoms<I>(group: GroupSpec, atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (HodgeAtom, i64)>,
    {
        let mut c = Self::zero(group);
        for (a, m) in atoms {
            if a.chi.len() != c.group.len()
                || a.chi.iter().zip(&c.group.orders).any(|(&k, &o)| k >= o)
            {
                return Err(Error::Parse(format!(
                    "character {:?} does not fit the group {:?}",
                    a.chi, c.group.orders
                )));
            }
            c.bump(a, m);
        }
        Ok(c)
    }

    fn bump(&mut self, atom: HodgeAtom, mult: i64) {
        if mult == 0 {
            return;
        }
        match self.atoms.entry(atom) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += mult;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(mult);
            }
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn atoms(&self) -> &BTreeMap<HodgeAtom, i64> {
        &self.atoms
    }

    pub fn mult(&self, atom: &HodgeAtom) -> i64 {
        self.atoms.get(atom).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Virtual dimension.
    pub fn rank(&self) -> i64 {
        self.atoms.values().sum()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(self.group.orders.clone(), other.group.orders.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = self.clone();
        for (a, &m) in &other.atoms {
            out.bump(a.clone(), m);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        EqHodgeClass {
            group: self.group.clone(),
            atoms: if k == 0 {
                BTreeMap::new()
            } else {
                self.atoms.iter().map(|(a, &m)| (a.clone(), k * m)).collect()
            },
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let orders = &self.group.orders;
        let mut out = Self::zero(self.group.clone());
        for (a, &m) in &self.atoms {
            for (b, &n) in &other.atoms {
                let chi = a
                    .chi
                    .iter()
                    .zip(&b.chi)
                    .zip(orders)
                    .map(|((x, y), c)| (x + y) % c)
                    .collect();
                out.bump(HodgeAtom::new(a.p + b.p, a.q + b.q, chi), m * n);
            }
        }
        Ok(out)
    }

    fn check_selector(&self, sel: &[usize]) -> Result<()> {
        if sel.iter().any(|&i| i >= self.group.len()) {
            return Err(Error::BadSelector(sel.to_vec()));
        }
        Ok(())
    }

    /// Part whose character is trivial on every selected factor. With `drop`
    /// the selected factors are removed from the group.
    pub fn invariants(&self, sel: &[usize], drop: bool) -> Result<Self> {
        self.check_selector(sel)?;
        let kept = self
            .atoms
            .iter()
            .filter(|(a, _)| sel.iter().all(|&i| a.chi[i] == 0));
        if !drop {
            return Ok(EqHodgeClass {
                group: self.group.clone(),
                atoms: kept.map(|(a, &m)| (a.clone(), m)).collect(),
            });
        }
        let keep_idx: Vec<usize> = (0..self.group.len()).filter(|i| !sel.contains(i)).collect();
        let group = GroupSpec {
            orders: keep_idx.iter().map(|&i| self.group.orders[i]).collect(),
            monodromy: self
                .group
                .monodromy
                .and_then(|mi| keep_idx.iter().position(|&i| i == mi)),
        };
        let mut out = Self::zero(group);
        for (a, &m) in kept {
            let chi = keep_idx.iter().map(|&i| a.chi[i]).collect();
            out.bump(HodgeAtom::new(a.p, a.q, chi), m);
        }
        Ok(out)
    }

    /// Part whose character is nontrivial on some selected factor.
    pub fn nontrivial_part(&self, sel: &[usize]) -> Result<Self> {
        self.check_selector(sel)?;
        Ok(EqHodgeClass {
            group: self.group.clone(),
            atoms: self
                .atoms
                .iter()
                .filter(|(a, _)| sel.iter().any(|&i| a.chi[i] != 0))
                .map(|(a, &m)| (a.clone(), m))
                .collect(),
        })
    }

    /// Induction along factorwise inclusions `mu_{h_i} <= mu_{g_i}`.
    pub fn induce(&self, target: &GroupSpec) -> Result<Self> {
        if target.len() != self.group.len() {
            return Err(Error::NotASubgroup(format!(
                "{:?} is not a factorwise subgroup of {:?}",
                self.group.orders, target.orders
            )));
        }
        for (&h, &g) in self.group.orders.iter().zip(&target.orders) {
            if g % h != 0 {
                return Err(Error::NotASubgroup(format!("{h} does not divide {g}")));
            }
        }
        let mut out = Self::zero(target.clone());
        for (a, &m) in &self.atoms {
            let mut chis: Vec<Vec<u32>> = vec![vec![]];
            for (i, &k) in a.chi.iter().enumerate() {
                let (h, g) = (self.group.orders[i], target.orders[i]);
                chis = chis
                    .into_iter()
                    .flat_map(|v| {
                        (0..g / h).map(move |t| {
                            let mut w = v.clone();
                            w.push(k + t * h);
                            w
                        })
                    })
                    .collect();
            }
            for chi in chis {
                out.bump(HodgeAtom::new(a.p, a.q, chi), m);
            }
        }
        Ok(out)
    }

    pub fn tate_twist(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero(self.group.clone());
        for (a, &m) in &self.atoms {
            let (p, q) = (a.p as i64 + k, a.q as i64 + k);
            if p < 0 || q < 0 {
                return Err(Error::NegativeHodgeType { p, q });
            }
            out.bump(HodgeAtom::new(p as u32, q as u32, a.chi.clone()), m);
        }
        Ok(out)
    }

    /// Multiplication by `1 - L`.
    pub fn mul_one_minus_l(&self) -> Self {
        let twisted = self.tate_twist(1).expect("positive twist");
        self.sub(&twisted).expect("same group")
    }

    /// Exact division by `1 - L`. Along each line of fixed `(p - q, chi)` the
    /// quotient is the running sum of the multiplicities, which terminates
    /// iff the line sums to zero.
    pub fn div_one_minus_l(&self) -> Result<Self> {
        let mut lines: BTreeMap<(i64, Vec<u32>), BTreeMap<u32, i64>> = BTreeMap::new();
        for (a, &m) in &self.atoms {
            lines
                .entry((a.p as i64 - a.q as i64, a.chi.clone()))
                .or_default()
                .insert(a.p, m);
        }
        let mut quotient = Self::zero(self.group.clone());
        let mut remainder = Self::zero(self.group.clone());
        for ((diff, chi), line) in lines {
            let (&pmin, _) = line.iter().next().expect("nonempty line");
            let (&pmax, _) = line.iter().next_back().expect("nonempty line");
            let mut acc = 0i64;
            for p in pmin..=pmax {
                acc += line.get(&p).copied().unwrap_or(0);
                let q = (p as i64 - diff) as u32;
                if p < pmax {
                    quotient.bump(HodgeAtom::new(p, q, chi.clone()), acc);
                } else if acc != 0 {
                    remainder.bump(HodgeAtom::new(p, q, chi.clone()), acc);
                }
            }
        }
        if !remainder.is_zero() {
            return Err(Error::NotDivisible { remainder: remainder.to_string() });
        }
        Ok(quotient)
    }

    /// Re-indexes the monodromy factor from `mu_d` to `mu_m`, `k -> (m/d) k`.
    pub fn rebase(&self, m: u32) -> Result<Self> {
        let mi = self.group.monodromy.ok_or(Error::NoMonodromyFactor)?;
        let d = self.group.orders[mi];
        if m == 0 || m % d != 0 {
            return Err(Error::NotDivisor { d: d as u64, m: m as u64 });
        }
        let mut orders = self.group.orders.clone();
        orders[mi] = m;
        let target = GroupSpec { orders, monodromy: Some(mi) };
        let rows = (0..self.group.len())
            .map(|j| {
                (0..self.group.len())
                    .map(|i| match (i == j, i == mi) {
                        (false, _) => 0,
                        (true, false) => 1,
                        (true, true) => (m / d) as i64,
                    })
                    .collect()
            })
            .collect();
        self.map_characters(&CharMap { target, rows })
    }

    /// Transports every atom along a homomorphism of character groups.
    pub fn map_characters(&self, map: &CharMap) -> Result<Self> {
        map.check(&self.group)?;
        let mut out = Self::zero(map.target.clone());
        for (a, &m) in &self.atoms {
            out.bump(HodgeAtom::new(a.p, a.q, map.apply(&a.chi)), m);
        }
        Ok(out)
    }

    /// Complex conjugation: `(p, q, chi) -> (q, p, chi^{-1})`.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(self.group.clone());
        for (a, &m) in &self.atoms {
            out.bump(HodgeAtom::new(a.q, a.p, self.inverse_character(&a.chi)), m);
        }
        out
    }

    pub fn inverse_character(&self, chi: &[u32]) -> Vec<u32> {
        chi.iter()
            .zip(&self.group.orders)
            .map(|(&k, &c)| (c - k) % c)
            .collect()
    }

    /// `h^{p,q}(chi) = h^{q,p}(chi^{-1})` for every atom.
    pub fn is_polarizable(&self) -> bool {
        self.conjugate() == *self
    }

    /// True iff the monodromy characters of all atoms have order dividing `m`.
    pub fn monodromy_orders_divide(&self, m: u32) -> bool {
        match self.group.monodromy {
            None => true,
            Some(mi) => {
                let c = self.group.orders[mi];
                self.atoms.keys().all(|a| m % residue_order(a.chi[mi], c) == 0)
            }
        }
    }

    pub fn to_json(&self) -> ClassJson {
        ClassJson {
            group: self.group.clone(),
            atoms: self
                .atoms
                .iter()
                .map(|(a, &m)| AtomJson { p: a.p, q: a.q, chi: a.chi.clone(), mult: m })
                .collect(),
        }
    }

    pub fn from_json(j: &ClassJson) -> Result<Self> {
        let group = GroupSpec::new(j.group.orders.clone(), j.group.monodromy)?;
        EqHodgeClass::from_atoms(
            group,
            j.atoms.iter().map(|a| (HodgeAtom::new(a.p, a.q, a.chi.clone()), a.mult)),
        )
    }
}

impl fmt::Display for EqHodgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|(a, m)| format!("{m}*({},{},{:?})", a.p, a.q, a.chi))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomJson {
    pub p: u32,
    pub q: u32,
    pub chi: Vec<u32>,
    pub mult: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub group: GroupSpec,
    pub atoms: Vec<AtomJson>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub alpha: Q,
    pub weight: u32,
    pub mult: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralTable {
    pub entries: Vec<SpectrumEntry>,
    pub hodge: Vec<(HodgeAtom, i64)>,
}

impl SpectralTable {
    /// Spectrum numbers repeated by multiplicity; None if some multiplicity
    /// is negative.
    pub fn multiset(&self) -> Option<Vec<Q>> {
        let mut out = Vec::new();
        for e in &self.entries {
            if e.mult < 0 {
                return None;
            }
            out.extend(std::iter::repeat(e.alpha).take(e.mult as usize));
        }
        Some(out)
    }

    pub fn render(&self) -> String {
        let mut s = String::from("alpha\tweight\tmult\n");
        for e in &self.entries {
            s.push_str(&format!("{}\t{}\t{}\n", fmt_q(&e.alpha), e.weight, e.mult));
        }
        s
    }
}

/// Spectrum numbers `alpha = (n - 1 - p) + k/m` with `k` in `1..=m`
/// representing the monodromy residue, and weights `p + q`.
pub fn spectral_table(a: &EqHodgeClass, n: u32) -> Result<SpectralTable> {
    let mi = a.group.monodromy.ok_or(Error::NoMonodromyFactor)?;
    let m = a.group.orders[mi] as i128;
    let mut acc: BTreeMap<(Q, u32), i64> = BTreeMap::new();
    for (atom, &mult) in &a.atoms {
        let k = atom.chi[mi] as i128;
        let k = if k == 0 { m } else { k };
        let alpha = Q::from_integer(n as i128 - 1 - atom.p as i128) + Q::new(k, m);
        *acc.entry((alpha, atom.p + atom.q)).or_insert(0) += mult;
    }
    Ok(SpectralTable {
        entries: acc
            .into_iter()
            .filter(|(_, m)| *m != 0)
            .map(|((alpha, weight), mult)| SpectrumEntry { alpha, weight, mult })
            .collect(),
        hodge: a.atoms.iter().map(|(x, &m)| (x.clone(), m)).collect(),
    })
}

//! Convolution engines computing the vanishing class of `f(g_1, .., g_n)`
//! from the classes of the `g_i` and the inner family of `f`.
//!
//! All engines work in one big group `[spectators.., mu_{d_1}, .., mu_{d_n}, mu_m]`
//! and project to `[spectators.., mu_m]` at the end.

use crate::arith::lcm_all;
use crate::bases::{fermat_class, registry_for_sum, GermClassBundle, InnerRegistry};
use crate::error::{Error, Result};
use crate::ghodge::{CharMap, EqHodgeClass, GroupSpec, HodgeAtom};

#[derive(Debug, Clone)]
pub struct ConvolutionJob {
    bundles: Vec<GermClassBundle>,
    registry: InnerRegistry,
}

impl ConvolutionJob {
    pub fn new(bundles: Vec<GermClassBundle>, registry: InnerRegistry) -> Result<Self> {
        let ds: Vec<u32> = bundles.iter().map(|b| b.d()).collect();
        if ds != registry.d() {
            return Err(Error::GroupMismatch(ds, registry.d().to_vec()));
        }
        Ok(ConvolutionJob { bundles, registry })
    }

    /// Job for `f = x_1 + .. + x_n` with the built-in sum registry.
    pub fn for_sum(bundles: Vec<GermClassBundle>, m: Option<u32>) -> Result<Self> {
        let ds: Vec<u32> = bundles.iter().map(|b| b.d()).collect();
        let m = m.unwrap_or_else(|| lcm_all(ds.iter().map(|&d| d as u64)) as u32);
        let registry = registry_for_sum(&ds, m)?;
        ConvolutionJob::new(bundles, registry)
    }

    pub fn n(&self) -> usize {
        self.bundles.len()
    }

    pub fn m(&self) -> u32 {
        self.registry.m()
    }

    pub fn bundles(&self) -> &[GermClassBundle] {
        &self.bundles
    }

    pub fn registry(&self) -> &InnerRegistry {
        &self.registry
    }

    /// Variables of `f(g_1, .., g_n)` when every bundle knows its own.
    pub fn nvars(&self) -> Option<u32> {
        self.bundles.iter().map(|b| b.nvars()).sum()
    }
}

/// Index bookkeeping for the big group.
struct Layout {
    group: GroupSpec,
    /// Start of each bundle's spectator block.
    spec_start: Vec<usize>,
    /// First `mu_{d_i}` slot.
    d_start: usize,
}

impl Layout {
    fn new(bundles: &[GermClassBundle], m: u32) -> Self {
        let mut orders = Vec::new();
        let mut spec_start = Vec::new();
        for b in bundles {
            spec_start.push(orders.len());
            orders.extend_from_slice(b.spectators());
        }
        let d_start = orders.len();
        orders.extend(bundles.iter().map(|b| b.d()));
        orders.push(m);
        let mono = orders.len() - 1;
        Layout { group: GroupSpec { orders, monodromy: Some(mono) }, spec_start, d_start }
    }

    fn mono(&self) -> usize {
        self.group.len() - 1
    }

    fn d_slots(&self) -> Vec<usize> {
        (self.d_start..self.mono()).collect()
    }

    /// Places factor `j` of `class` on slot `slots[j]` with coefficient `signs[j]`.
    fn embed(&self, class: &EqHodgeClass, slots: &[usize], signs: &[i64]) -> Result<EqHodgeClass> {
        let mut rows = vec![vec![0i64; class.group().len()]; self.group.len()];
        for (j, (&s, &e)) in slots.iter().zip(signs).enumerate() {
            rows[s][j] = e;
        }
        class.map_characters(&CharMap { target: self.group.clone(), rows })
    }

    /// Bundle class with spectators in place and the monodromy on `mu_{d_i}`,
    /// conjugated on the monodromy when `dual`.
    fn embed_bundle(&self, i: usize, b: &GermClassBundle, class: &EqHodgeClass, dual: bool) -> Result<EqHodgeClass> {
        let ns = b.spectators().len();
        let mut slots: Vec<usize> = (0..ns).map(|j| self.spec_start[i] + j).collect();
        slots.push(self.d_start + i);
        let mut signs = vec![1i64; ns];
        signs.push(if dual { -1 } else { 1 });
        self.embed(class, &slots, &signs)
    }

    /// Bundle class rebased onto the output monodromy `mu_m`.
    fn embed_rebased(&self, i: usize, b: &GermClassBundle, class: &EqHodgeClass) -> Result<EqHodgeClass> {
        let ns = b.spectators().len();
        let mut slots: Vec<usize> = (0..ns).map(|j| self.spec_start[i] + j).collect();
        slots.push(self.mono());
        let mut signs = vec![1i64; ns];
        signs.push((self.group.orders[self.mono()] / b.d()) as i64);
        self.embed(class, &slots, &signs)
    }

    fn project(&self, class: &EqHodgeClass) -> Result<EqHodgeClass> {
        class.invariants(&self.d_slots(), true)
    }
}

/// Subset sum over `I`: `(-1)^|I| (prod_{i not in I} phi_i (x) Phi~_I)^{G_I}
/// (x) prod_{i in I} Phi_i^{mu_{d_i}}`, subsets in binary order.
pub fn convolve(job: &ConvolutionJob) -> Result<EqHodgeClass> {
    let n = job.n();
    let m = job.m();
    for b in &job.bundles {
        if m % b.d() != 0 {
            return Err(Error::NotDivisor { d: b.d() as u64, m: m as u64 });
        }
    }
    let lay = Layout::new(&job.bundles, m);
    let mut total = EqHodgeClass::zero(lay.group.clone());
    for mask in 0u32..(1 << n) {
        let inside: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let outside: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        let entry = job.registry.get(&inside)?;
        let want = job.registry.entry_group(&inside);
        if *entry.group() != want {
            return Err(Error::GroupMismatch(entry.group().orders.clone(), want.orders));
        }
        let mut slots: Vec<usize> = outside.iter().map(|&i| lay.d_start + i).collect();
        slots.push(lay.mono());
        let mut term = lay.embed(entry, &slots, &vec![1; slots.len()])?;
        for &i in &outside {
            let b = &job.bundles[i];
            term = term.tensor(&lay.embed_bundle(i, b, &b.fiber(), true)?)?;
        }
        let sel: Vec<usize> = outside.iter().map(|&i| lay.d_start + i).collect();
        term = term.invariants(&sel, false)?;
        for &i in &inside {
            let b = &job.bundles[i];
            let inv = b.vanishing().invariants(&[b.monodromy_index()], false)?;
            term = term.tensor(&lay.embed_bundle(i, b, &inv, false)?)?;
        }
        if inside.len() % 2 == 1 {
            term = term.negate();
        }
        total = total.add(&term)?;
    }
    lay.project(&total)
}

/// Thom-Sebastiani for `g_1(y) + g_2(z)` on `mu_m`, `m = lcm(d_1, d_2)`:
/// `(Phi_1 (x) Phi_2 (x) Phi~_pair)^{inv} + Phi_1,!=1 (x) Phi_2,!=1 - Phi_1 (x) Phi_2`.
pub fn thom_sebastiani(b1: &GermClassBundle, b2: &GermClassBundle) -> Result<EqHodgeClass> {
    let (d1, d2) = (b1.d(), b2.d());
    let m = lcm_all([d1 as u64, d2 as u64]) as u32;
    let bundles = [b1.clone(), b2.clone()];
    let lay = Layout::new(&bundles, m);
    let pair = fermat_class(&[d1, d2], m)?;
    let slots = [lay.d_start, lay.d_start + 1, lay.mono()];
    let mut first = lay.embed(&pair, &slots, &[1, 1, 1])?;
    for (i, b) in bundles.iter().enumerate() {
        first = first.tensor(&lay.embed_bundle(i, b, b.vanishing(), true)?)?;
    }
    let first = first.invariants(&lay.d_slots(), false)?;

    let nontrivial = |i: usize, b: &GermClassBundle| -> Result<EqHodgeClass> {
        let c = b.vanishing().nontrivial_part(&[b.monodromy_index()])?;
        lay.embed_rebased(i, b, &c)
    };
    let second = nontrivial(0, b1)?.tensor(&nontrivial(1, b2)?)?;
    let third = lay
        .embed_rebased(0, b1, b1.vanishing())?
        .tensor(&lay.embed_rebased(1, b2, b2.vanishing())?)?;
    lay.project(&first.add(&second)?.sub(&third)?)
}

/// The same two-summand class written with the Fermat curve cohomology
/// `V = -Phi~_pair`: `-(V (x) Phi_1 (x) Phi_2)^{inv} + Phi_1,!=1 (x) Phi_2,!=1 - Phi_1 (x) Phi_2`.
///
/// Evaluated by a direct loop over matching characters, independent of the
/// group-ring code paths used by [`thom_sebastiani`]. Spectator factors are
/// not supported here.
pub fn curve_form(b1: &GermClassBundle, b2: &GermClassBundle) -> Result<EqHodgeClass> {
    if !b1.spectators().is_empty() || !b2.spectators().is_empty() {
        return Err(Error::UnsupportedArity(b1.spectators().len() + b2.spectators().len()));
    }
    let (d1, d2) = (b1.d(), b2.d());
    let m = lcm_all([d1 as u64, d2 as u64]) as u32;
    let (r1, r2) = (m / d1, m / d2);
    let curve = fermat_class(&[d1, d2], m)?.negate();
    let mut atoms: Vec<(HodgeAtom, i64)> = Vec::new();
    for (x, &mx) in b1.vanishing().atoms() {
        for (y, &my) in b2.vanishing().atoms() {
            let (k1, k2) = (x.chi[0], y.chi[0]);
            let p = x.p + y.p;
            let q = x.q + y.q;
            let rebased = (k1 * r1 + k2 * r2) % m;
            if k1 != 0 && k2 != 0 {
                atoms.push((HodgeAtom::new(p, q, vec![rebased]), mx * my));
                for (v, &mv) in curve.atoms() {
                    if v.chi[0] == k1 && v.chi[1] == k2 {
                        atoms.push((HodgeAtom::new(p + v.p, q + v.q, vec![v.chi[2]]), -mx * my * mv));
                    }
                }
            }
            atoms.push((HodgeAtom::new(p, q, vec![rebased]), -mx * my));
        }
    }
    EqHodgeClass::from_atoms(GroupSpec::cyclic(m), atoms)
}

/// Compares [`curve_form`] with [`thom_sebastiani`].
pub fn check_curve_form(b1: &GermClassBundle, b2: &GermClassBundle) -> Result<EqHodgeClass> {
    let ts = thom_sebastiani(b1, b2)?;
    let cf = curve_form(b1, b2)?;
    if ts != cf {
        return Err(Error::Mismatch(format!(
            "curve form {cf} differs from Thom-Sebastiani {ts}; difference {}",
            cf.sub(&ts)?
        )));
    }
    Ok(ts)
}

/// Vanishing class of `y_1^{a_1} + .. + y_r^{a_r}` by iterated
/// Thom-Sebastiani.
pub fn brieskorn_pham(exponents: &[u32]) -> Result<GermClassBundle> {
    let mut it = exponents.iter();
    let first = it.next().ok_or(Error::UnsupportedArity(0))?;
    let mut acc = GermClassBundle::monomial(*first)?;
    for &a in it {
        let next = GermClassBundle::monomial(a)?;
        let nv = acc.nvars().zip(next.nvars()).map(|(x, y)| x + y);
        acc = GermClassBundle::from_vanishing(thom_sebastiani(&acc, &next)?, nv)?;
    }
    Ok(acc)
}

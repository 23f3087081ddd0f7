//! Base classes fed to the convolution engine: vanishing classes of the
//! inner germs `g_i` and the inner-function family of the outer `f`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::lcm_all;
use crate::error::{Error, Result};
use crate::ghodge::{ClassJson, EqHodgeClass, GroupSpec, HodgeAtom};

/// Milnor data of one inner germ `g` with respect to an exponent `d`.
///
/// The class group is `[spectators.., mu_d]` with the monodromy last.
/// Spectators are extra commuting symmetries carried through unchanged; plain
/// germs have none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermClassBundle {
    d: u32,
    nvars: Option<u32>,
    vanishing: EqHodgeClass,
}

impl GermClassBundle {
    /// Wraps a vanishing class `Phi = phi - [Q]`.
    pub fn from_vanishing(vanishing: EqHodgeClass, nvars: Option<u32>) -> Result<Self> {
        let g = vanishing.group();
        let mi = g.monodromy.ok_or(Error::NoMonodromyFactor)?;
        if mi + 1 != g.len() {
            return Err(Error::Parse("monodromy must be the last group factor".into()));
        }
        Ok(GermClassBundle { d: g.orders[mi], nvars, vanishing })
    }

    /// Bundle whose reduced cohomology class is `reduced`, so that
    /// `Phi = (-1)^(nvars-1) reduced`.
    pub fn from_reduced(reduced: EqHodgeClass, nvars: u32) -> Result<Self> {
        let sign = if nvars % 2 == 1 { 1 } else { -1 };
        GermClassBundle::from_vanishing(reduced.scale(sign), Some(nvars))
    }

    /// `y^d`: the fiber is `d` points permuted by the monodromy.
    pub fn monomial(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::Parse("exponent must be positive".into()));
        }
        let atoms = (1..d).map(|k| (HodgeAtom::new(0, 0, vec![k]), 1));
        GermClassBundle::from_vanishing(EqHodgeClass::from_atoms(GroupSpec::cyclic(d), atoms)?, Some(1))
    }

    pub fn smooth() -> Self {
        GermClassBundle { d: 1, nvars: Some(1), vanishing: EqHodgeClass::zero(GroupSpec::cyclic(1)) }
    }

    /// `y1^2 + y2^2`.
    pub fn node() -> Self {
        let v = EqHodgeClass::lefschetz(GroupSpec::cyclic(2)).negate();
        GermClassBundle { d: 2, nvars: Some(2), vanishing: v }
    }

    /// `y1^2 + y2^3`.
    pub fn cusp() -> Self {
        let v = EqHodgeClass::from_atoms(
            GroupSpec::cyclic(6),
            [(HodgeAtom::new(1, 0, vec![5]), -1), (HodgeAtom::new(0, 1, vec![1]), -1)],
        )
        .expect("valid atoms");
        GermClassBundle { d: 6, nvars: Some(2), vanishing: v }
    }

    pub fn builtin(name: &str, d: Option<u32>) -> Result<Self> {
        match (name, d) {
            ("monomial", Some(d)) => GermClassBundle::monomial(d),
            ("monomial", None) => Err(Error::Parse("monomial bundle needs d".into())),
            ("smooth", _) => Ok(GermClassBundle::smooth()),
            ("node", _) => Ok(GermClassBundle::node()),
            ("cusp", _) => Ok(GermClassBundle::cusp()),
            _ => Err(Error::Parse(format!("unknown builtin bundle {name:?}"))),
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn nvars(&self) -> Option<u32> {
        self.nvars
    }

    pub fn vanishing(&self) -> &EqHodgeClass {
        &self.vanishing
    }

    /// `phi = Phi + [Q]`.
    pub fn fiber(&self) -> EqHodgeClass {
        self.vanishing.add(&EqHodgeClass::unit(self.vanishing.group().clone())).expect("same group")
    }

    pub fn spectators(&self) -> &[u32] {
        let o = &self.vanishing.group().orders;
        &o[..o.len() - 1]
    }

    pub fn monodromy_index(&self) -> usize {
        self.vanishing.group().len() - 1
    }

    /// Reduced cohomology class `(-1)^(n-1) Phi`, needed for spectra.
    pub fn reduced(&self, nvars: u32) -> EqHodgeClass {
        if nvars % 2 == 1 {
            self.vanishing.clone()
        } else {
            self.vanishing.negate()
        }
    }

    pub fn spectrum(&self, nvars: Option<u32>) -> Result<crate::ghodge::SpectralTable> {
        let n = nvars
            .or(self.nvars)
            .ok_or_else(|| Error::Parse("number of variables unknown; pass it explicitly".into()))?;
        crate::ghodge::spectral_table(&self.reduced(n), n)
    }

    /// `h^{p,q}(chi) = h^{q,p}(chi^-1)`.
    pub fn is_symmetric(&self) -> bool {
        self.vanishing.is_polarizable()
    }
}

/// User bundle file: a class JSON with optional normalisation hints.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BundleFile {
    #[serde(flatten)]
    pub class: ClassJson,
    /// If present the class is the reduced cohomology of a germ in this many
    /// variables; otherwise it is the vanishing class itself.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nvars: Option<u32>,
    /// The class is given multiplied by `1 - L` and must be divided back.
    #[serde(default)]
    pub psi: bool,
}

/// Parses and validates a user bundle. The group must be a single cyclic
/// monodromy factor.
pub fn load_user_class(text: &str) -> Result<GermClassBundle> {
    let f: BundleFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if f.class.group.orders.len() != 1 {
        return Err(Error::Parse("bundle group must be a single mu_d".into()));
    }
    let group = GroupSpec::new(f.class.group.orders.clone(), Some(0))?;
    let json = ClassJson { group, atoms: f.class.atoms.clone() };
    let mut c = EqHodgeClass::from_json(&json)?;
    if f.psi {
        c = c.div_one_minus_l()?;
    }
    match f.nvars {
        Some(n) => GermClassBundle::from_reduced(c, n),
        None => GermClassBundle::from_vanishing(c, None),
    }
}

/// `[Q[mu_d]] - [Q]` on `mu_d x mu_m`, the `mu_m` factor acting through
/// its quotient: atoms `(0, 0, (k, (m/d) k))`.
pub fn phi_monomial(d: u32, m: u32) -> Result<EqHodgeClass> {
    if d == 0 || m == 0 || m % d != 0 {
        return Err(Error::NotDivisor { d: d as u64, m: m as u64 });
    }
    let group = GroupSpec::new(vec![d, m], Some(1))?;
    EqHodgeClass::from_atoms(group, (1..d).map(|k| (HodgeAtom::new(0, 0, vec![k, (m / d) * k]), 1)))
}

/// The entry at the origin: `-[Q]` over `mu_m`.
pub fn phi_origin(m: u32) -> EqHodgeClass {
    EqHodgeClass::unit(GroupSpec::cyclic(m)).negate()
}

/// `Phi~` of `x_1^{d_1} + ... + x_r^{d_r}` over `mu_{d_1} x .. x mu_{d_r} x mu_m`.
///
/// For two summands this is minus the first cohomology of the affine Fermat
/// curve: one atom per pair of nontrivial characters, of type (1,0), (0,1)
/// or (1,1) according to `a/d_1 + b/d_2` being below, above or equal to 1.
/// Longer sums are built by convolving with one more monomial at a time.
pub fn fermat_class(d: &[u32], m: u32) -> Result<EqHodgeClass> {
    let l = lcm_all(d.iter().map(|&x| x as u64));
    if d.contains(&0) || m == 0 || m as u64 % l != 0 {
        return Err(Error::NotDivisor { d: l, m: m as u64 });
    }
    match d.len() {
        0 | 1 => Err(Error::UnsupportedArity(d.len())),
        2 => Ok(fermat_pair(d[0], d[1], m)),
        r => {
            let head = &d[..r - 1];
            let mh = lcm_all(head.iter().map(|&x| x as u64)) as u32;
            let first = GermClassBundle::from_vanishing(fermat_class(head, mh)?, None)?;
            let last = GermClassBundle::from_vanishing(phi_monomial(d[r - 1], d[r - 1])?, None)?;
            let registry = registry_for_sum(&[mh, d[r - 1]], m)?;
            let job = crate::convolve::ConvolutionJob::new(vec![first, last], registry)?;
            crate::convolve::convolve(&job)
        }
    }
}

fn fermat_pair(d1: u32, d2: u32, m: u32) -> EqHodgeClass {
    let group = GroupSpec::new(vec![d1, d2, m], Some(2)).expect("positive orders");
    let mut atoms = Vec::new();
    let (l1, l2, prod) = (d2 as u64, d1 as u64, d1 as u64 * d2 as u64);
    for a in 1..d1 {
        for b in 1..d2 {
            // a/d1 + b/d2 compared with 1 over the common denominator d1*d2
            let s = a as u64 * l1 + b as u64 * l2;
            let (p, q) = match s.cmp(&prod) {
                std::cmp::Ordering::Less => (1, 0),
                std::cmp::Ordering::Greater => (0, 1),
                std::cmp::Ordering::Equal => (1, 1),
            };
            let c = (s * m as u64 / prod) % m as u64;
            atoms.push((HodgeAtom::new(p, q, vec![a, b, c as u32]), -1));
        }
    }
    EqHodgeClass::from_atoms(group, atoms).expect("characters in range")
}

/// The family `I -> Phi~_I` for an outer function, indexed by the subset
/// `I` of variables restricted to the origin (0-based, sorted).
///
/// The entry for `I` lives on `[mu_{d_i} for i not in I, mu_m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerRegistry {
    d: Vec<u32>,
    m: u32,
    entries: BTreeMap<Vec<usize>, EqHodgeClass>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegistryEntryJson {
    pub subset: Vec<usize>,
    pub class: ClassJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegistryJson {
    pub d: Vec<u32>,
    pub m: u32,
    pub entries: Vec<RegistryEntryJson>,
}

impl InnerRegistry {
    pub fn new(d: Vec<u32>, m: u32) -> Self {
        InnerRegistry { d, m, entries: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn d(&self) -> &[u32] {
        &self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The group an entry for `subset` must live on.
    pub fn entry_group(&self, subset: &[usize]) -> GroupSpec {
        let mut orders: Vec<u32> =
            (0..self.n()).filter(|i| !subset.contains(i)).map(|i| self.d[i]).collect();
        orders.push(self.m);
        let mono = orders.len() - 1;
        GroupSpec { orders, monodromy: Some(mono) }
    }

    pub fn insert(&mut self, subset: Vec<usize>, class: EqHodgeClass) -> Result<()> {
        if subset.iter().any(|&i| i >= self.n()) || subset.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadSelector(subset));
        }
        let want = self.entry_group(&subset);
        if *class.group() != want {
            return Err(Error::GroupMismatch(class.group().orders.clone(), want.orders));
        }
        self.entries.insert(subset, class);
        Ok(())
    }

    pub fn get(&self, subset: &[usize]) -> Result<&EqHodgeClass> {
        self.entries.get(subset).ok_or_else(|| Error::MissingRegistryEntry(subset.to_vec()))
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, EqHodgeClass> {
        &self.entries
    }

    pub fn to_json(&self) -> RegistryJson {
        RegistryJson {
            d: self.d.clone(),
            m: self.m,
            entries: self
                .entries
                .iter()
                .map(|(s, c)| RegistryEntryJson { subset: s.clone(), class: c.to_json() })
                .collect(),
        }
    }

    pub fn from_json(j: &RegistryJson) -> Result<Self> {
        let mut r = InnerRegistry::new(j.d.clone(), j.m);
        for e in &j.entries {
            r.insert(e.subset.clone(), EqHodgeClass::from_json(&e.class)?)?;
        }
        Ok(r)
    }
}

/// Registry for `f = x_1 + ... + x_n`: `Phi~_I` is the class of the
/// Fermat-type sum over the variables outside `I`.
pub fn registry_for_sum(d: &[u32], m: u32) -> Result<InnerRegistry> {
    let n = d.len();
    if n == 0 {
        return Err(Error::UnsupportedArity(0));
    }
    let mut reg = InnerRegistry::new(d.to_vec(), m);
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let rest: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| d[i]).collect();
        let class = match rest.len() {
            0 => phi_origin(m),
            1 => phi_monomial(rest[0], m)?,
            _ => fermat_class(&rest, m)?,
        };
        reg.insert(subset, class)?;
    }
    Ok(reg)
}

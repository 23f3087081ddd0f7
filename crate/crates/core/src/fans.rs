//! Fans in the dual orthant: the normal fan of a Newton polyhedron, its
//! simplicial refinement, primitive generators in a rescaled lattice, ray
//! multiplicities and the exponent, and the suspension fan over `tau`.
//!
//! Rays are stored in lattice coordinates: for a lattice `L = (+) d_i Z` a
//! stored ray `r` stands for the vector `(d_1 r_1, ..., d_n r_n)`, so
//! primitivity is plain `gcd = 1`. A suspension fan has one extra trailing
//! coordinate with lattice `Z`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{dot, gcd_all, lcm_all, primitive, rank};
use crate::cone::ConeGeometry;
use crate::error::{Error, Result};
use crate::germ::GermPoly;
use crate::newton::{faces, newton_polyhedron_with, Convenience, NewtonPolyhedron};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledLattice {
    pub d: Vec<u32>,
}

impl ScaledLattice {
    pub fn new(d: Vec<u32>) -> Result<Self> {
        if d.is_empty() || d.contains(&0) {
            return Err(Error::Parse(format!("lattice scales must be positive: {d:?}")));
        }
        Ok(ScaledLattice { d })
    }

    pub fn standard(n: usize) -> Self {
        ScaledLattice { d: vec![1; n] }
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    lattice: ScaledLattice,
    /// Set for suspension fans: the exponent `m` the extra coordinate was built for.
    height: Option<u32>,
    rays: Vec<Vec<i64>>,
    /// Every cone, as ascending ray-index sets; the apex is the empty set.
    cones: BTreeSet<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub d: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub lattice: LatticeJson,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

impl Fan {
    fn build(
        lattice: ScaledLattice,
        height: Option<u32>,
        rays: Vec<Vec<i64>>,
        generators: &[Vec<usize>],
    ) -> Result<Self> {
        let dim = lattice.rank() + height.map_or(0, |_| 1);
        for r in &rays {
            if r.len() != dim {
                return Err(Error::MalformedFan(format!("ray {r:?} should have {dim} entries")));
            }
            if gcd_all(r) != 1 {
                return Err(Error::MalformedFan(format!("ray {r:?} is zero or not primitive")));
            }
        }
        let mut cones = BTreeSet::new();
        cones.insert(vec![]);
        for g in generators {
            if g.iter().any(|&i| i >= rays.len()) {
                return Err(Error::MalformedFan(format!("cone {g:?} refers to a missing ray")));
            }
            let g: Vec<usize> = g.iter().copied().sorted().dedup().collect();
            let geo = ConeGeometry::new(g.iter().map(|&i| rays[i].clone()).collect());
            for face in geo.faces() {
                cones.insert(face.iter().map(|&k| g[k]).collect());
            }
        }
        Ok(Fan { lattice, height, rays, cones })
    }

    /// Fan generated by the given cones and all their faces.
    pub fn from_cones(lattice: ScaledLattice, rays: Vec<Vec<i64>>, cones: &[Vec<usize>]) -> Result<Self> {
        Fan::build(lattice, None, rays, cones)
    }

    pub fn lattice(&self) -> &ScaledLattice {
        &self.lattice
    }

    pub fn height(&self) -> Option<u32> {
        self.height
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.rank() + self.height.map_or(0, |_| 1)
    }

    /// Rays in lattice coordinates.
    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// A ray as an actual vector of the dual space.
    pub fn ray_vector(&self, i: usize) -> Vec<i64> {
        self.rays[i]
            .iter()
            .enumerate()
            .map(|(k, &x)| x * self.lattice.d.get(k).copied().unwrap_or(1) as i64)
            .collect()
    }

    pub fn cones(&self) -> &BTreeSet<Vec<usize>> {
        &self.cones
    }

    pub fn maximal_cones(&self) -> Vec<Vec<usize>> {
        self.cones
            .iter()
            .filter(|c| {
                !self
                    .cones
                    .iter()
                    .any(|o| o.len() > c.len() && c.iter().all(|x| o.binary_search(x).is_ok()))
            })
            .cloned()
            .collect()
    }

    pub fn cone_dim(&self, cone: &[usize]) -> usize {
        rank(&cone.iter().map(|&i| self.rays[i].clone()).collect::<Vec<_>>())
    }

    pub fn is_cone_simplicial(&self, cone: &[usize]) -> bool {
        self.cone_dim(cone) == cone.len()
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| self.is_cone_simplicial(c))
    }

    pub fn geometry(&self, cone: &[usize]) -> ConeGeometry {
        ConeGeometry::new(cone.iter().map(|&i| self.rays[i].clone()).collect())
    }

    /// Whether some maximal cone contains the vector (lattice coordinates).
    pub fn covers(&self, x: &[i64]) -> bool {
        self.maximal_cones().iter().any(|c| self.geometry(c).contains(x))
    }

    /// Cones lying in the hyperplane `w_i = 0`.
    pub fn restriction_to_hyperplane(&self, i: usize) -> BTreeSet<Vec<Vec<i64>>> {
        self.cones
            .iter()
            .filter(|c| c.iter().all(|&r| self.rays[r][i] == 0))
            .map(|c| c.iter().map(|&r| self.ray_vector(r)).sorted().collect())
            .collect()
    }

    pub fn to_json(&self) -> FanJson {
        FanJson {
            lattice: LatticeJson { d: self.lattice.d.clone(), m: self.height },
            rays: (0..self.rays.len()).map(|i| self.ray_vector(i)).collect(),
            cones: self.maximal_cones(),
        }
    }

    pub fn from_json(j: &FanJson) -> Result<Self> {
        let lattice = ScaledLattice::new(j.lattice.d.clone())?;
        let mut rays = Vec::with_capacity(j.rays.len());
        for r in &j.rays {
            let mut v = Vec::with_capacity(r.len());
            for (k, &x) in r.iter().enumerate() {
                let s = lattice.d.get(k).copied().unwrap_or(1) as i64;
                if x % s != 0 {
                    return Err(Error::MalformedFan(format!("ray {r:?} is not in the lattice")));
                }
                v.push(x / s);
            }
            rays.push(v);
        }
        Fan::build(lattice, j.lattice.m, rays, &j.cones)
    }
}

/// Normal fan of `delta`: one ray per facet normal, one cone per face.
pub fn dual_fan(delta: &NewtonPolyhedron) -> Fan {
    let n = delta.nvars();
    let rays: Vec<Vec<i64>> = delta.facets().iter().map(|f| f.normal.clone()).collect();
    let cones: BTreeSet<Vec<usize>> = faces(delta).into_iter().map(|f| f.facets).collect();
    Fan { lattice: ScaledLattice::standard(n), height: None, rays, cones }
}

/// Stellar subdivisions at barycentric rays until every cone is simplicial.
/// The pivot is a non-simplicial cone of least dimension, ties broken by
/// the lexicographic order of its sorted ray vectors.
pub fn simplicial_refinement(fan: &Fan) -> Result<Fan> {
    if fan.height.is_some() {
        return Err(Error::MalformedFan("refinement expects a fan in the dual orthant".into()));
    }
    let mut f = fan.clone();
    loop {
        let pivot = f
            .cones
            .iter()
            .filter(|c| !f.is_cone_simplicial(c))
            .map(|c| {
                let key: Vec<Vec<i64>> = c.iter().map(|&i| f.rays[i].clone()).sorted().collect();
                (f.cone_dim(c), key, c.clone())
            })
            .min();
        let Some((_, _, tau)) = pivot else {
            return Ok(f);
        };
        let n = f.lattice.rank();
        if (0..n).any(|i| tau.iter().all(|&r| f.rays[r][i] == 0)) {
            return Err(Error::PropertyViolation(format!(
                "non-simplicial cone {:?} lies in a coordinate hyperplane",
                tau.iter().map(|&r| f.ray_vector(r)).collect::<Vec<_>>()
            )));
        }
        let mut sum = vec![0i64; n];
        for &r in &tau {
            for (s, x) in sum.iter_mut().zip(&f.rays[r]) {
                *s += x;
            }
        }
        let new_ray = primitive(&sum);
        let r = match f.rays.iter().position(|x| *x == new_ray) {
            Some(i) => i,
            None => {
                f.rays.push(new_ray);
                f.rays.len() - 1
            }
        };
        let contains = |big: &Vec<usize>, small: &Vec<usize>| small.iter().all(|x| big.binary_search(x).is_ok());
        let stars: Vec<Vec<usize>> = f.cones.iter().filter(|s| contains(s, &tau)).cloned().collect();
        let mut next: BTreeSet<Vec<usize>> =
            f.cones.iter().filter(|c| !contains(c, &tau)).cloned().collect();
        for omega in f.cones.iter().filter(|w| !contains(w, &tau)) {
            if stars.iter().any(|s| contains(s, omega)) {
                let mut c = omega.clone();
                c.push(r);
                c.sort_unstable();
                next.insert(c);
            }
        }
        f.cones = next;
    }
}

/// Least positive multiple of the direction of `ray` lying in `(+) d_i Z`.
pub fn primitive_generator(ray: &[i64], lattice: &ScaledLattice) -> Result<Vec<i64>> {
    if ray.iter().all(|&x| x == 0) {
        return Err(Error::ZeroRay);
    }
    if ray.len() != lattice.rank() {
        return Err(Error::Parse(format!("ray {ray:?} does not match lattice rank {}", lattice.rank())));
    }
    let v = primitive(ray);
    let k = lcm_all(v.iter().zip(&lattice.d).filter(|(x, _)| **x != 0).map(|(&x, &d)| {
        let d = d as u64;
        d / d.gcd(&x.unsigned_abs())
    })) as i64;
    Ok(v.iter().map(|x| x * k).collect())
}

pub fn ray_multiplicity(l: &[i64], delta: &NewtonPolyhedron) -> Result<i64> {
    delta.min_value(l)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayData {
    /// Primitive direction in the standard lattice.
    pub direction: Vec<i64>,
    /// Primitive generator in the rescaled dual lattice.
    pub generator: Vec<i64>,
    pub multiplicity: i64,
    pub coordinate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentData {
    pub m: u64,
    pub rays: Vec<RayData>,
    /// True when the fan had no interior rays and the facet normals of the
    /// polyhedron were used instead.
    pub fallback: bool,
}

fn is_coordinate(v: &[i64]) -> bool {
    v.iter().filter(|&&x| x != 0).count() == 1
}

fn ray_data(direction: Vec<i64>, lattice: &ScaledLattice, delta: &NewtonPolyhedron) -> Result<RayData> {
    let direction = primitive(&direction);
    let generator = primitive_generator(&direction, lattice)?;
    let multiplicity = ray_multiplicity(&generator, delta)?;
    let coordinate = is_coordinate(&direction);
    Ok(RayData { direction, generator, multiplicity, coordinate })
}

/// Exponent of `g` with respect to the lattice `d`: the lcm of the positive
/// multiplicities of the non-coordinate rays of `fan`.
pub fn exponent(g: &GermPoly, lattice: &ScaledLattice, fan: &Fan) -> Result<ExponentData> {
    if lattice.rank() != g.nvars() || fan.lattice.rank() != g.nvars() || fan.height.is_some() {
        return Err(Error::Parse("lattice, fan and germ disagree on the number of variables".into()));
    }
    let delta = newton_polyhedron_with(g, Convenience::Relax)?;
    let mut rays = Vec::new();
    for i in 0..fan.rays.len() {
        let v = fan.ray_vector(i);
        if !is_coordinate(&v) {
            rays.push(ray_data(v, lattice, &delta)?);
        }
    }
    let fallback = rays.is_empty();
    if fallback {
        for f in delta.facets() {
            rays.push(ray_data(f.normal.clone(), lattice, &delta)?);
        }
    }
    let m = lcm_all(rays.iter().filter(|r| r.multiplicity > 0).map(|r| r.multiplicity as u64));
    Ok(ExponentData { m, rays, fallback })
}

/// Convenience pipeline: polyhedron, dual fan, refinement, exponent.
pub fn exponent_of(g: &GermPoly, lattice: &ScaledLattice, mode: Convenience) -> Result<ExponentData> {
    let delta = newton_polyhedron_with(g, mode)?;
    let fan = simplicial_refinement(&dual_fan(&delta))?;
    exponent(g, lattice, &fan)
}

/// The fan with its rays re-expressed as primitive vectors of `lattice`.
pub fn rescale(fan: &Fan, lattice: &ScaledLattice) -> Result<Fan> {
    if fan.height.is_some() || lattice.rank() != fan.lattice.rank() {
        return Err(Error::MalformedFan("cannot rescale this fan".into()));
    }
    let rays = (0..fan.rays.len())
        .map(|i| primitive_generator(&fan.ray_vector(i), lattice))
        .collect::<Result<Vec<_>>>()?;
    Fan::from_json(&FanJson {
        lattice: LatticeJson { d: lattice.d.clone(), m: None },
        rays,
        cones: fan.maximal_cones(),
    })
}

#[derive(Debug, Clone)]
pub struct Suspension {
    pub fan: Fan,
    pub m: u32,
    pub report: ReducedReport,
}

/// Whole pipeline from a germ: refined dual fan in `lattice`, exponent
/// unless `m` is given, suspension and reducedness report.
pub fn suspend_germ(g: &GermPoly, lattice: &ScaledLattice, m: Option<u32>, mode: Convenience) -> Result<Suspension> {
    let delta = newton_polyhedron_with(g, mode)?;
    let fan = simplicial_refinement(&dual_fan(&delta))?;
    let m = match m {
        Some(m) => m,
        None => exponent(g, lattice, &fan)?.m as u32,
    };
    let fan = suspension_fan(&rescale(&fan, lattice)?, &delta, m)?;
    let report = check_reduced(&fan, g, lattice, m)?;
    Ok(Suspension { fan, m, report })
}

pub fn is_tame(m: u64, p: u64) -> bool {
    p == 0 || m.gcd(&p) == 1
}

/// Suspension of a simplicial fan over the `tau` direction.
///
/// Coordinates are `(l, s)` with `l` in the rescaled dual lattice and `s` in
/// `Z`. With `phi(l) = min <l, Delta>`, each ray `rho` lifts to the primitive
/// vector on `(rho, phi(rho)/m)`. The fan consists of the upper cones
/// `cone(lifts of sigma, e_tau)`, the boundary cones `cone(lifts of sigma)`
/// and the base cone `{l >= 0, 0 <= s <= phi(l)/m}`, with all faces.
pub fn suspension_fan(fan: &Fan, delta: &NewtonPolyhedron, m: u32) -> Result<Fan> {
    if fan.height.is_some() {
        return Err(Error::MalformedFan("already a suspension fan".into()));
    }
    if !fan.is_simplicial() {
        return Err(Error::NonSimplicialInput);
    }
    if m == 0 {
        return Err(Error::Parse("m must be positive".into()));
    }
    let n = fan.lattice.rank();
    if delta.nvars() != n {
        return Err(Error::MalformedFan("fan and polyhedron dimensions differ".into()));
    }
    let mut index: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut rays: Vec<Vec<i64>> = Vec::new();
    let mut add = |v: Vec<i64>, rays: &mut Vec<Vec<i64>>| -> usize {
        *index.entry(v.clone()).or_insert_with(|| {
            rays.push(v);
            rays.len() - 1
        })
    };
    let mut lift = Vec::with_capacity(fan.rays.len());
    let mut phi = Vec::with_capacity(fan.rays.len());
    for i in 0..fan.rays.len() {
        let value = delta.min_value(&fan.ray_vector(i))?;
        let g = (m as i64).gcd(&value);
        let mut v: Vec<i64> = fan.rays[i].iter().map(|x| x * (m as i64) / g).collect();
        v.push(value / g);
        lift.push(add(v, &mut rays));
        phi.push(value);
    }
    let mut tau = vec![0; n + 1];
    tau[n] = 1;
    let tau = add(tau, &mut rays);
    let bottom: Vec<usize> = (0..n)
        .map(|i| {
            let mut e = vec![0; n + 1];
            e[i] = 1;
            add(e, &mut rays)
        })
        .collect();
    let mut generators: Vec<Vec<usize>> = Vec::new();
    for sigma in &fan.cones {
        let mut upper: Vec<usize> = sigma.iter().map(|&j| lift[j]).collect();
        upper.push(tau);
        generators.push(upper);
        if sigma.iter().any(|&j| phi[j] > 0) {
            generators.push(sigma.iter().map(|&j| lift[j]).collect());
        }
    }
    let base_gens: Vec<usize> = bottom.iter().chain(lift.iter()).copied().sorted().dedup().collect();
    let geo = ConeGeometry::new(base_gens.iter().map(|&i| rays[i].clone()).collect());
    let base: Vec<usize> = geo.extreme_rays().into_iter().map(|k| base_gens[k]).collect();
    generators.push(base);
    Fan::build(fan.lattice.clone(), Some(m), rays, &generators)
}

/// Generators of the base cone of a suspension fan: the maximal cone
/// containing every coordinate ray `(e_i, 0)`.
pub fn base_cone(fan: &Fan) -> Option<Vec<usize>> {
    let n = fan.lattice.rank();
    let bottoms: Vec<usize> = (0..n)
        .filter_map(|i| {
            fan.rays.iter().position(|r| r.iter().enumerate().all(|(k, &x)| x == i64::from(k == i)))
        })
        .collect();
    if bottoms.len() != n {
        return None;
    }
    fan.maximal_cones()
        .into_iter()
        .find(|c| bottoms.iter().all(|b| c.binary_search(b).is_ok()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayOrder {
    /// Ray as an actual vector `(l, s)`.
    pub ray: Vec<i64>,
    pub tau_order: i64,
    /// Whether the initial form of `f - tau^m` along the ray has two or more terms.
    pub meets_hypersurface: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedReport {
    pub pass: bool,
    pub rays: Vec<RayOrder>,
    pub base_cone_avoided: bool,
}

/// Checks that the zero fiber of `tau` on the hypersurface `f(xi) = tau^m` is
/// reduced along every divisor of `fan`, and that the hypersurface misses
/// the orbit of the base cone.
pub fn check_reduced(fan: &Fan, g: &GermPoly, lattice: &ScaledLattice, m: u32) -> Result<ReducedReport> {
    let Some(height) = fan.height else {
        return Err(Error::MalformedFan("not a suspension fan".into()));
    };
    if height != m || fan.lattice != *lattice || lattice.rank() != g.nvars() {
        return Err(Error::MalformedFan("fan was built for different lattice or m".into()));
    }
    let n = g.nvars();
    let mut support: Vec<Vec<i64>> = g
        .support()
        .into_iter()
        .map(|w| {
            let mut u: Vec<i64> = w.iter().zip(&lattice.d).map(|(x, &d)| x * d as i64).collect();
            u.push(0);
            u
        })
        .collect();
    let mut top = vec![0; n + 1];
    top[n] = m as i64;
    support.push(top);
    let tight = |r: &[i64]| -> Vec<usize> {
        let vals: Vec<i64> = support.iter().map(|u| dot(r, u)).collect();
        let min = *vals.iter().min().expect("nonempty support");
        (0..support.len()).filter(|&k| vals[k] == min).collect()
    };
    let mut rays = Vec::new();
    let mut pass = true;
    for i in 0..fan.rays.len() {
        let r = &fan.rays[i];
        if r.iter().any(|&x| x < 0) {
            return Err(Error::MalformedFan(format!("ray {r:?} leaves the orthant")));
        }
        let meets = tight(r).len() >= 2;
        let order = r[n];
        if meets && order > 0 && order != 1 {
            pass = false;
        }
        rays.push(RayOrder { ray: fan.ray_vector(i), tau_order: order, meets_hypersurface: meets });
    }
    let base_cone_avoided = match base_cone(fan) {
        Some(b) => {
            let mut inner = vec![0i64; n + 1];
            for &i in &b {
                for (s, x) in inner.iter_mut().zip(&fan.rays[i]) {
                    *s += x;
                }
            }
            tight(&inner) == vec![support.len() - 1]
        }
        None => false,
    };
    Ok(ReducedReport { pass: pass && base_cone_avoided, rays, base_cone_avoided })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::newton_polyhedron;

    fn germ(n: usize, exps: &[&[u32]]) -> GermPoly {
        GermPoly::from_exponents(n, exps).unwrap()
    }

    fn ray_set(f: &Fan) -> BTreeSet<Vec<i64>> {
        (0..f.rays().len()).map(|i| f.ray_vector(i)).collect()
    }

    #[test]
    fn dual_fan_examples() {
        let cusp = dual_fan(&newton_polyhedron(&germ(2, &[&[2, 0], &[0, 3]])).unwrap());
        assert_eq!(ray_set(&cusp), [vec![0, 1], vec![1, 0], vec![3, 2]].into_iter().collect());
        assert_eq!(cusp.maximal_cones().len(), 2);
        assert_eq!(cusp.cones().iter().filter(|c| c.len() == 2).count(), 2);
        let line = dual_fan(&newton_polyhedron(&germ(1, &[&[4]])).unwrap());
        assert_eq!(line.maximal_cones(), vec![vec![0]]);
        assert_eq!(line.cones().len(), 2);
        let sum = dual_fan(&newton_polyhedron(&germ(2, &[&[1, 0], &[0, 1]])).unwrap());
        assert_eq!(ray_set(&sum), [vec![0, 1], vec![1, 0], vec![1, 1]].into_iter().collect());
    }

    #[test]
    fn refinement_of_non_simplicial_fan() {
        let g = germ(3, &[&[1, 1, 0], &[0, 0, 2]]);
        let delta = newton_polyhedron_with(&g, Convenience::Relax).unwrap();
        let fan = dual_fan(&delta);
        let refined = simplicial_refinement(&fan).unwrap();
        assert!(refined.is_simplicial());
        for c in refined.maximal_cones() {
            assert_eq!(c.len(), 3);
        }
        for i in 0..3 {
            assert_eq!(refined.restriction_to_hyperplane(i), fan.restriction_to_hyperplane(i));
        }
        assert_eq!(simplicial_refinement(&refined).unwrap(), refined);
    }

    #[test]
    fn primitive_generators() {
        let l = ScaledLattice::new(vec![2, 3]).unwrap();
        assert_eq!(primitive_generator(&[1, 1], &l).unwrap(), vec![6, 6]);
        assert_eq!(primitive_generator(&[1, 0], &l).unwrap(), vec![2, 0]);
        assert_eq!(primitive_generator(&[3, 2], &ScaledLattice::standard(2)).unwrap(), vec![3, 2]);
        assert_eq!(primitive_generator(&[4, 2], &ScaledLattice::standard(2)).unwrap(), vec![2, 1]);
        assert!(matches!(primitive_generator(&[0, 0], &l), Err(Error::ZeroRay)));
    }

    #[test]
    fn multiplicities() {
        let sum = newton_polyhedron(&germ(2, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(ray_multiplicity(&[6, 6], &sum).unwrap(), 6);
        assert_eq!(ray_multiplicity(&[2, 0], &sum).unwrap(), 0);
        let cusp = newton_polyhedron(&germ(2, &[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(ray_multiplicity(&[3, 2], &cusp).unwrap(), 6);
        assert!(matches!(ray_multiplicity(&[-1, 2], &cusp), Err(Error::UnboundedBelow)));
    }

    #[test]
    fn exponents() {
        let sum = germ(2, &[&[1, 0], &[0, 1]]);
        let e = exponent_of(&sum, &ScaledLattice::new(vec![2, 3]).unwrap(), Convenience::Require).unwrap();
        assert_eq!(e.m, 6);
        assert!(!e.fallback);
        let cusp = germ(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(exponent_of(&cusp, &ScaledLattice::standard(2), Convenience::Require).unwrap().m, 6);
        let power = germ(1, &[&[5]]);
        let e = exponent_of(&power, &ScaledLattice::standard(1), Convenience::Require).unwrap();
        assert_eq!((e.m, e.fallback), (5, true));
        let prod = germ(2, &[&[1, 1]]);
        let e = exponent_of(&prod, &ScaledLattice::new(vec![2, 3]).unwrap(), Convenience::Relax).unwrap();
        assert_eq!(e.m, 6);
    }

    #[test]
    fn tameness() {
        assert!(is_tame(6, 5));
        assert!(!is_tame(6, 3));
        assert!(is_tame(6, 0));
    }

    fn suspension(g: &GermPoly, d: &[u32], m: Option<u32>) -> (Fan, ScaledLattice, u32) {
        let lattice = ScaledLattice::new(d.to_vec()).unwrap();
        let delta = newton_polyhedron(g).unwrap();
        let fan = simplicial_refinement(&dual_fan(&delta)).unwrap();
        let m = m.unwrap_or_else(|| exponent(g, &lattice, &fan).unwrap().m as u32);
        let fan = Fan::from_json(&FanJson {
            lattice: LatticeJson { d: d.to_vec(), m: None },
            rays: fan.rays().iter().map(|r| primitive_generator(r, &lattice).unwrap()).collect(),
            cones: fan.maximal_cones(),
        })
        .unwrap();
        (suspension_fan(&fan, &delta, m).unwrap(), lattice, m)
    }

    #[test]
    fn suspension_of_square() {
        let g = germ(1, &[&[2]]);
        let (s, l, m) = suspension(&g, &[1], Some(2));
        let rays = ray_set(&s);
        for r in [vec![1, 0], vec![0, 1], vec![1, 1]] {
            assert!(rays.contains(&r), "missing {r:?}");
        }
        let rep = check_reduced(&s, &g, &l, m).unwrap();
        assert!(rep.pass);
        let diag = rep.rays.iter().find(|r| r.ray == vec![1, 1]).unwrap();
        assert_eq!(diag.tau_order, 1);
    }

    #[test]
    fn suspension_of_linear_sum() {
        let g = germ(2, &[&[1, 0], &[0, 1]]);
        let (s, l, m) = suspension(&g, &[2, 3], None);
        assert_eq!(m, 6);
        assert!(check_reduced(&s, &g, &l, m).unwrap().pass);
        let (s, l, m) = suspension(&g, &[2, 3], Some(3));
        assert!(!check_reduced(&s, &g, &l, m).unwrap().pass);
    }

    #[test]
    fn suspension_of_cusp() {
        let g = germ(2, &[&[2, 0], &[0, 3]]);
        let (s, l, m) = suspension(&g, &[1, 1], Some(6));
        assert!(s.rays().contains(&vec![3, 2, 1]));
        assert!(check_reduced(&s, &g, &l, m).unwrap().pass);
        // projecting the upper cones forgets the height and gives back the fan
        let delta = newton_polyhedron(&g).unwrap();
        let fan = simplicial_refinement(&dual_fan(&delta)).unwrap();
        let tau = s.rays().iter().position(|r| *r == vec![0, 0, 1]).unwrap();
        let projected: BTreeSet<BTreeSet<Vec<i64>>> = s
            .maximal_cones()
            .iter()
            .filter(|c| c.contains(&tau))
            .map(|c| c.iter().filter(|&&i| i != tau).map(|&i| primitive(&s.rays()[i][..2])).collect())
            .collect();
        let original: BTreeSet<BTreeSet<Vec<i64>>> = fan
            .maximal_cones()
            .iter()
            .map(|c| c.iter().map(|&i| fan.rays()[i].clone()).collect())
            .collect();
        assert_eq!(projected, original);
    }

    #[test]
    fn fan_json_round_trip() {
        let fan = dual_fan(&newton_polyhedron(&germ(2, &[&[2, 0], &[0, 3]])).unwrap());
        let j = fan.to_json();
        assert_eq!(Fan::from_json(&j).unwrap(), fan);
        let bad = FanJson { lattice: LatticeJson { d: vec![2, 3], m: None }, rays: vec![vec![1, 0]], cones: vec![] };
        assert!(matches!(Fan::from_json(&bad), Err(Error::MalformedFan(_))));
    }
}

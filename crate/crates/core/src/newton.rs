//! Newton polyhedra of germs: vertices, facets, faces, face restriction,
//! a finite-field non-degeneracy test and the polar dual.
//!
//! A polyhedron `conv(S) + R^n_{>=0}` is handled through the cone generated
//! by `(s, 1)` for `s` in `S` and `(e_i, 0)`: its facets other than `t >= 0`
//! are the facets of the polyhedron, and its faces meeting `t = 1` are the
//! faces of the polyhedron.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{dot, fmt_q, rank, solve, Q};
use crate::cone::ConeGeometry;
use crate::error::{Error, Result};
use crate::ffield::{is_prime, ModPoly};
use crate::germ::GermPoly;

/// Supporting inequality `<normal, x> >= value`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    nvars: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Vertices of the parent polyhedron, identifying it.
    pub parent: Vec<Vec<i64>>,
    /// Sum of the normals of the incident facets; zero for the whole polyhedron.
    pub functional: Vec<i64>,
    pub value: i64,
    pub vertices: Vec<Vec<i64>>,
    /// Coordinate directions along which the face is unbounded.
    pub directions: Vec<usize>,
    pub dim: usize,
    /// Indices into the parent's facet list.
    pub facets: Vec<usize>,
}

impl Face {
    pub fn is_compact(&self) -> bool {
        self.directions.is_empty()
    }
}

/// How to treat germs lacking a pure power of some variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convenience {
    /// Reject with `NotConvenient`.
    #[default]
    Require,
    /// Use the support as given.
    Relax,
    /// Add `N e_i` for each missing variable, `N` twice the largest exponent.
    Truncate,
}

fn homogenize(points: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut gens: Vec<Vec<i64>> = points
        .iter()
        .map(|p| {
            let mut v = p.clone();
            v.push(1);
            v
        })
        .collect();
    for i in 0..n {
        let mut e = vec![0; n + 1];
        e[i] = 1;
        gens.push(e);
    }
    gens
}

impl NewtonPolyhedron {
    /// Polyhedron `conv(points) + R^n_{>=0}`.
    pub fn from_points(n: usize, points: &[Vec<i64>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyGerm);
        }
        let pts: Vec<Vec<i64>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let cone = ConeGeometry::new(homogenize(&pts, n));
        let vertices: Vec<Vec<i64>> = cone
            .extreme_rays()
            .into_iter()
            .filter(|&i| i < pts.len())
            .map(|i| pts[i].clone())
            .sorted()
            .collect();
        Ok(Self::from_vertices(n, vertices))
    }

    fn from_vertices(n: usize, vertices: Vec<Vec<i64>>) -> Self {
        let cone = ConeGeometry::new(homogenize(&vertices, n));
        let mut facets: Vec<Facet> = cone
            .facets
            .iter()
            .filter(|f| f.normal[..n].iter().any(|&x| x != 0))
            .map(|f| Facet { normal: f.normal[..n].to_vec(), value: -f.normal[n] })
            .collect();
        facets.sort();
        NewtonPolyhedron { nvars: n, vertices, facets }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Minimum of a functional over the polyhedron; needs `l >= 0`.
    pub fn min_value(&self, l: &[i64]) -> Result<i64> {
        if l.iter().any(|&x| x < 0) {
            return Err(Error::UnboundedBelow);
        }
        Ok(self.vertices.iter().map(|v| dot(l, v)).min().expect("nonempty"))
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, x) >= f.value)
    }
}

pub fn newton_polyhedron(g: &GermPoly) -> Result<NewtonPolyhedron> {
    newton_polyhedron_with(g, Convenience::Require)
}

pub fn newton_polyhedron_with(g: &GermPoly, mode: Convenience) -> Result<NewtonPolyhedron> {
    if g.is_empty() {
        return Err(Error::EmptyGerm);
    }
    let n = g.nvars();
    let mut pts = g.support();
    match mode {
        Convenience::Require => {
            if let Some(i) = g.missing_pure_power() {
                return Err(Error::NotConvenient(i));
            }
        }
        Convenience::Relax => {}
        Convenience::Truncate => {
            let big = 2 * g.max_exponent() as i64;
            let missing: Vec<usize> = (0..n)
                .filter(|&i| {
                    !pts.iter()
                        .any(|p| p[i] > 0 && p.iter().enumerate().all(|(j, &x)| j == i || x == 0))
                })
                .collect();
            for i in missing {
                let mut v = vec![0; n];
                v[i] = big;
                pts.push(v);
            }
        }
    }
    NewtonPolyhedron::from_points(n, &pts)
}

/// All faces, sorted by dimension, then unbounded directions, then vertices.
pub fn faces(delta: &NewtonPolyhedron) -> Vec<Face> {
    let n = delta.nvars;
    let nv = delta.vertices.len();
    let cone = ConeGeometry::new(homogenize(&delta.vertices, n));
    let facet_index = |normal: &[i64]| -> Option<usize> {
        if normal[..n].iter().all(|&x| x == 0) {
            return None;
        }
        let f = Facet { normal: normal[..n].to_vec(), value: -normal[n] };
        delta.facets.binary_search(&f).ok()
    };
    let mut out: Vec<Face> = cone
        .faces()
        .into_iter()
        .filter(|gens| gens.iter().any(|&i| i < nv))
        .map(|gens| {
            let incident: Vec<usize> = cone
                .incident_facets(&gens)
                .into_iter()
                .filter_map(|k| facet_index(&cone.facets[k].normal))
                .sorted()
                .collect();
            let mut functional = vec![0i64; n];
            let mut value = 0i64;
            for &k in &incident {
                for (a, b) in functional.iter_mut().zip(&delta.facets[k].normal) {
                    *a += b;
                }
                value += delta.facets[k].value;
            }
            Face {
                parent: delta.vertices.clone(),
                functional,
                value,
                vertices: gens.iter().filter(|&&i| i < nv).map(|&i| delta.vertices[i].clone()).collect(),
                directions: gens.iter().filter(|&&i| i >= nv).map(|&i| i - nv).collect(),
                dim: cone.face_dim(&gens) - 1,
                facets: incident,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        (a.dim, &a.directions, &a.vertices).cmp(&(b.dim, &b.directions, &b.vertices))
    });
    out
}

/// True iff the whole support lies on one compact face, i.e. the germ is
/// weighted homogeneous for some positive weights.
pub fn is_quasi_homogeneous(g: &GermPoly) -> Result<bool> {
    let delta = newton_polyhedron_with(g, Convenience::Relax)?;
    let supp = g.support();
    Ok(faces(&delta)
        .iter()
        .any(|f| f.is_compact() && supp.iter().all(|s| dot(&f.functional, s) == f.value)))
}

pub fn face_restriction(g: &GermPoly, sigma: &Face) -> Result<GermPoly> {
    let relaxed = newton_polyhedron_with(g, Convenience::Relax)?;
    if relaxed.vertices != sigma.parent
        && newton_polyhedron_with(g, Convenience::Truncate)?.vertices != sigma.parent
    {
        return Err(Error::FaceMismatch);
    }
    Ok(g.restrict(|e| {
        let w: Vec<i64> = e.iter().map(|&x| x as i64).collect();
        dot(&sigma.functional, &w) == sigma.value
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    ProbablyNondegenerate,
    DegenerateWitness { face: Face, p: u64, point: Vec<u64> },
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct NondegeneracyOptions {
    pub primes: Vec<u64>,
    /// Random torus points per face when the torus is too large to enumerate;
    /// zero turns that situation into `TooLarge`.
    pub samples: u64,
    pub seed: u64,
    pub max_enum: u128,
}

impl Default for NondegeneracyOptions {
    fn default() -> Self {
        NondegeneracyOptions { primes: vec![7, 13], samples: 10_000, seed: 0x5eed, max_enum: 1_000_000 }
    }
}

pub fn is_nondegenerate(g: &GermPoly, primes: &[u64], samples: u64) -> Result<Verdict> {
    is_nondegenerate_with(
        g,
        &NondegeneracyOptions { primes: primes.to_vec(), samples, ..Default::default() },
    )
}

fn singular_at(f: &ModPoly, partials: &[ModPoly], x: &[u64]) -> bool {
    f.eval(x) == 0 && partials.iter().all(|d| d.eval(x) == 0)
}

/// Exact check of a candidate witness: every coefficient is reduced afresh
/// and each polynomial is summed term by term.
fn recheck(fs: &GermPoly, p: u64, x: &[u64]) -> bool {
    let eval = |weights: &dyn Fn(&[u32]) -> u64| -> u64 {
        let mut s = 0u64;
        for (e, c) in fs.terms() {
            let c = crate::ffield::reduce_q(c, p).expect("checked earlier");
            let mut t = c * (weights(e) % p) % p;
            for (xi, &ei) in x.iter().zip(e) {
                for _ in 0..ei {
                    t = t * xi % p;
                }
            }
            s = (s + t) % p;
        }
        s
    };
    if eval(&|_| 1) != 0 {
        return false;
    }
    (0..fs.nvars()).all(|i| eval(&|e: &[u32]| e[i] as u64) == 0)
}

pub fn is_nondegenerate_with(g: &GermPoly, opts: &NondegeneracyOptions) -> Result<Verdict> {
    let delta = newton_polyhedron_with(g, Convenience::Relax)?;
    for &p in &opts.primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        ModPoly::reduce(g, p)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut inconclusive = false;
    for face in faces(&delta) {
        let fs = face_restriction(g, &face)?;
        let active: Vec<usize> = (0..g.nvars())
            .filter(|&i| fs.terms().keys().any(|e| e[i] > 0))
            .collect();
        for &p in &opts.primes {
            let f = ModPoly::reduce(&fs, p)?;
            if f.terms.len() != fs.terms().len() {
                // a coefficient vanishes mod p; the reduction says nothing
                continue;
            }
            let partials: Vec<ModPoly> = active.iter().map(|&i| f.euler_partial(i)).collect();
            let size = ((p - 1) as u128).saturating_pow(active.len() as u32);
            let mut x = vec![1u64; g.nvars()];
            let mut found: Option<Vec<u64>> = None;
            if size <= opts.max_enum {
                for pt in active.iter().map(|_| 1..p).multi_cartesian_product() {
                    for (k, &i) in active.iter().enumerate() {
                        x[i] = pt[k];
                    }
                    if singular_at(&f, &partials, &x) {
                        found = Some(x.clone());
                        break;
                    }
                }
                if active.is_empty() && singular_at(&f, &partials, &x) {
                    found = Some(x.clone());
                }
            } else if opts.samples == 0 {
                return Err(Error::TooLarge { size, bound: opts.max_enum });
            } else {
                inconclusive = true;
                for _ in 0..opts.samples {
                    for &i in &active {
                        x[i] = rng.gen_range(1..p);
                    }
                    if singular_at(&f, &partials, &x) {
                        found = Some(x.clone());
                        break;
                    }
                }
            }
            if let Some(point) = found {
                if recheck(&fs, p, &point) {
                    return Ok(Verdict::DegenerateWitness { face, p, point });
                }
            }
        }
    }
    Ok(if inconclusive { Verdict::Inconclusive } else { Verdict::ProbablyNondegenerate })
}

/// `{x >= 0 : <x, v> >= 1 for all vertices v}`; the recession cone is the
/// orthant, so only vertices are listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarDual {
    pub vertices: Vec<Vec<Q>>,
    pub rays: Vec<Vec<i64>>,
}

impl PolarDual {
    pub fn vertices_display(&self) -> Vec<Vec<String>> {
        self.vertices.iter().map(|v| v.iter().map(fmt_q).collect()).collect()
    }
}

pub fn polar_dual(delta: &NewtonPolyhedron) -> Result<PolarDual> {
    let n = delta.nvars;
    if delta.vertices.iter().any(|v| v.iter().all(|&x| x == 0)) {
        return Err(Error::OriginInPolytope);
    }
    // rows a with a.x >= b
    let mut rows: Vec<(Vec<Q>, Q)> = delta
        .vertices
        .iter()
        .map(|v| (v.iter().map(|&x| Q::from_integer(x as i128)).collect(), Q::one()))
        .collect();
    for i in 0..n {
        let mut e = vec![Q::zero(); n];
        e[i] = Q::one();
        rows.push((e, Q::zero()));
    }
    let mut verts: BTreeSet<Vec<Q>> = BTreeSet::new();
    for combo in (0..rows.len()).combinations(n) {
        let a: Vec<Vec<Q>> = combo.iter().map(|&k| rows[k].0.clone()).collect();
        let b: Vec<Q> = combo.iter().map(|&k| rows[k].1).collect();
        let Some(x) = solve(&a, &b) else { continue };
        let feasible = rows.iter().all(|(a, b)| {
            a.iter().zip(&x).fold(Q::zero(), |s, (u, v)| s + u * v) >= *b
        });
        if feasible {
            verts.insert(x);
        }
    }
    let rays = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    Ok(PolarDual { vertices: verts.into_iter().collect(), rays })
}

/// Dimension of the affine hull of some lattice points.
pub fn affine_dim(points: &[Vec<i64>]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let base = &points[0];
    let rows: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(n: usize, exps: &[&[u32]]) -> GermPoly {
        GermPoly::from_exponents(n, exps).unwrap()
    }

    #[test]
    fn cusp_polyhedron() {
        let d = newton_polyhedron(&germ(2, &[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(d.vertices(), &[vec![0, 3], vec![2, 0]]);
        let normals: Vec<_> = d.facets().iter().map(|f| (f.normal.clone(), f.value)).collect();
        assert_eq!(normals, vec![(vec![0, 1], 0), (vec![1, 0], 0), (vec![3, 2], 6)]);
    }

    #[test]
    fn interior_vertex_below_segment() {
        let d = newton_polyhedron(&germ(2, &[&[2, 0], &[1, 1], &[0, 3]])).unwrap();
        assert_eq!(d.vertices(), &[vec![0, 3], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn one_variable() {
        let d = newton_polyhedron(&germ(1, &[&[5]])).unwrap();
        assert_eq!(d.vertices(), &[vec![5]]);
        assert_eq!(d.facets(), &[Facet { normal: vec![1], value: 5 }]);
        let fs = faces(&d);
        assert_eq!(fs.len(), 2);
        assert!(fs[0].is_compact() && fs[0].dim == 0);
        assert!(!fs[1].is_compact() && fs[1].dim == 1);
    }

    #[test]
    fn cusp_faces() {
        let d = newton_polyhedron(&germ(2, &[&[2, 0], &[0, 3]])).unwrap();
        let fs = faces(&d);
        let compact: Vec<_> = fs.iter().filter(|f| f.is_compact()).collect();
        assert_eq!(compact.len(), 3);
        let edge = compact.iter().find(|f| f.dim == 1).unwrap();
        assert_eq!((edge.functional.clone(), edge.value), (vec![3, 2], 6));
        let noncompact: Vec<_> = fs.iter().filter(|f| !f.is_compact()).collect();
        assert_eq!(noncompact.iter().filter(|f| f.dim == 1).count(), 2);
        assert_eq!(noncompact.iter().filter(|f| f.dim == 2).count(), 1);
    }

    #[test]
    fn restriction_to_edge() {
        let g = germ(2, &[&[2, 0], &[0, 3], &[1, 4]]);
        let d = newton_polyhedron(&g).unwrap();
        let fs = faces(&d);
        let edge = fs.iter().find(|f| f.is_compact() && f.dim == 1).unwrap();
        assert_eq!(face_restriction(&g, edge).unwrap(), germ(2, &[&[2, 0], &[0, 3]]));
        let whole = fs.iter().find(|f| f.dim == 2).unwrap();
        assert_eq!(face_restriction(&g, whole).unwrap(), g);
        let other = germ(2, &[&[1, 0], &[0, 1]]);
        assert!(matches!(face_restriction(&other, edge), Err(Error::FaceMismatch)));
    }

    #[test]
    fn degenerate_square() {
        // (x + y)^2
        let g = GermPoly::new(
            2,
            vec![
                (vec![2, 0], Q::from_integer(1)),
                (vec![1, 1], Q::from_integer(2)),
                (vec![0, 2], Q::from_integer(1)),
            ],
        )
        .unwrap();
        match is_nondegenerate(&g, &[7], 100).unwrap() {
            Verdict::DegenerateWitness { face, p, point } => {
                assert_eq!(p, 7);
                assert_eq!(point, vec![1, 6]);
                assert!(face.is_compact() && face.dim == 1);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn nondegenerate_examples() {
        let cusp = germ(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(is_nondegenerate(&cusp, &[7, 13], 100).unwrap(), Verdict::ProbablyNondegenerate);
        let lin = germ(1, &[&[1]]);
        assert_eq!(is_nondegenerate(&lin, &[7], 100).unwrap(), Verdict::ProbablyNondegenerate);
    }

    #[test]
    fn sampling_modes() {
        let g = germ(3, &[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]);
        let opts = NondegeneracyOptions { primes: vec![13], samples: 0, seed: 1, max_enum: 10 };
        assert!(matches!(is_nondegenerate_with(&g, &opts), Err(Error::TooLarge { .. })));
        let opts = NondegeneracyOptions { samples: 50, ..opts };
        assert_eq!(is_nondegenerate_with(&g, &opts).unwrap(), Verdict::Inconclusive);
    }

    #[test]
    fn bad_prime() {
        let g = GermPoly::new(1, vec![(vec![2], Q::new(1, 7))]).unwrap();
        assert!(matches!(is_nondegenerate(&g, &[7], 1), Err(Error::BadPrime { p: 7 })));
    }

    #[test]
    fn polar_duals() {
        let d = newton_polyhedron(&germ(1, &[&[4]])).unwrap();
        assert_eq!(polar_dual(&d).unwrap().vertices, vec![vec![Q::new(1, 4)]]);
        let d = newton_polyhedron(&germ(2, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(polar_dual(&d).unwrap().vertices, vec![vec![Q::one(), Q::one()]]);
        let d = newton_polyhedron(&germ(2, &[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(polar_dual(&d).unwrap().vertices, vec![vec![Q::new(1, 2), Q::new(1, 3)]]);
    }

    #[test]
    fn quasi_homogeneity() {
        assert!(is_quasi_homogeneous(&germ(2, &[&[2, 0], &[0, 3]])).unwrap());
        assert!(is_quasi_homogeneous(&germ(2, &[&[1, 1]])).unwrap());
        assert!(is_quasi_homogeneous(&germ(2, &[&[2, 1]])).unwrap());
        assert!(is_quasi_homogeneous(&germ(3, &[&[2, 0, 0], &[0, 1, 1]])).unwrap());
        assert!(!is_quasi_homogeneous(&germ(2, &[&[2, 0], &[0, 3], &[1, 1]])).unwrap());
        assert!(!is_quasi_homogeneous(&germ(1, &[&[2], &[3]])).unwrap());
    }

    #[test]
    fn non_convenient_modes() {
        let g = germ(2, &[&[1, 1]]);
        assert!(matches!(newton_polyhedron(&g), Err(Error::NotConvenient(0))));
        let relaxed = newton_polyhedron_with(&g, Convenience::Relax).unwrap();
        assert_eq!(relaxed.vertices(), &[vec![1, 1]]);
        let truncated = newton_polyhedron_with(&g, Convenience::Truncate).unwrap();
        // (1,1) sits on the segment between the added powers
        assert_eq!(truncated.vertices(), &[vec![0, 2], vec![2, 0]]);
    }
}

//! Pointed polyhedral cones given by integer generators: facets and face lattice.
//!
//! Everything here is brute force over generator subsets, which is plenty for
//! the small dimensions this crate works in.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use itertools::Itertools;

use crate::arith::{dot, independent_subset, orthogonal_component, primitive, rank};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeFacet {
    /// Inward normal, lying in the linear span of the cone.
    pub normal: Vec<i64>,
    /// Generators on the facet, ascending.
    pub tight: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ConeGeometry {
    pub gens: Vec<Vec<i64>>,
    pub dim: usize,
    pub facets: Vec<ConeFacet>,
}

/// Signed maximal minors: a vector orthogonal to all rows of a
/// (k-1) x k matrix. Zero iff the rows are dependent.
fn cofactor_normal(rows: &[&Vec<i64>], k: usize) -> Vec<i64> {
    (0..k)
        .map(|skip| {
            let m: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| {
                    (0..k)
                        .filter(|&j| j != skip)
                        .map(|j| r[j] as i128)
                        .collect()
                })
                .collect();
            let d = det(m);
            let s = if skip % 2 == 0 { d } else { -d };
            s as i64
        })
        .collect()
}

/// Bareiss fraction-free determinant.
fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(sw) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, sw);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

impl ConeGeometry {
    pub fn new(gens: Vec<Vec<i64>>) -> Self {
        let dim = rank(&gens);
        let ambient = gens.first().map_or(0, |g| g.len());
        let mut by_tight: BTreeMap<Vec<usize>, Vec<i64>> = BTreeMap::new();
        if dim > 0 {
            let nonzero: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].iter().any(|&x| x != 0)).collect();
            for combo in nonzero.iter().copied().combinations(dim - 1) {
                let rows: Vec<Vec<i64>> = combo.iter().map(|&i| gens[i].clone()).collect();
                let u = if dim == ambient {
                    let refs: Vec<&Vec<i64>> = rows.iter().collect();
                    let u = cofactor_normal(&refs, ambient);
                    if u.iter().all(|&x| x == 0) {
                        continue;
                    }
                    primitive(&u)
                } else {
                    if rank(&rows) != rows.len() {
                        continue;
                    }
                    let Some(r) = nonzero.iter().find(|&&i| {
                        let mut t = rows.clone();
                        t.push(gens[i].clone());
                        rank(&t) > rows.len()
                    }) else {
                        continue;
                    };
                    orthogonal_component(&rows, &gens[*r])
                };
                let vals: Vec<i64> = gens.iter().map(|g| dot(&u, g)).collect();
                let u = if vals.iter().all(|&v| v >= 0) {
                    u
                } else if vals.iter().all(|&v| v <= 0) {
                    u.iter().map(|x| -x).collect()
                } else {
                    continue;
                };
                let tight: Vec<usize> = (0..gens.len()).filter(|&i| vals[i] == 0).collect();
                by_tight.entry(tight).or_insert(u);
            }
        }
        let facets = by_tight
            .into_iter()
            .map(|(tight, normal)| ConeFacet { normal, tight })
            .collect();
        ConeGeometry { gens, dim, facets }
    }

    /// All faces as ascending generator-index sets, from the whole cone down
    /// to the apex (empty set), in breadth-first discovery order.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.gens.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(all.clone());
        queue.push_back(all);
        while let Some(face) = queue.pop_front() {
            for f in &self.facets {
                let next: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|i| f.tight.binary_search(i).is_ok())
                    .collect();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
            out.push(face);
        }
        out
    }

    /// Facets containing every generator of `face`.
    pub fn incident_facets(&self, face: &[usize]) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&k| face.iter().all(|i| self.facets[k].tight.binary_search(i).is_ok()))
            .collect()
    }

    pub fn face_dim(&self, face: &[usize]) -> usize {
        let rows: Vec<Vec<i64>> = face.iter().map(|&i| self.gens[i].clone()).collect();
        rank(&rows)
    }

    /// One generator per extreme ray, lowest index first.
    pub fn extreme_rays(&self) -> Vec<usize> {
        if self.dim == 1 {
            return independent_subset(&self.gens).into_iter().take(1).collect();
        }
        let mut out: BTreeSet<usize> = BTreeSet::new();
        for face in self.faces() {
            if !face.is_empty() && self.face_dim(&face) == 1 {
                out.insert(face[0]);
            }
        }
        out.into_iter().collect()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let mut rows = self.gens.clone();
        rows.push(x.to_vec());
        if rank(&rows) != self.dim {
            return false;
        }
        self.facets.iter().all(|f| dot(&f.normal, x) >= 0)
    }

    pub fn is_simplicial(&self) -> bool {
        self.extreme_rays().len() == self.dim
    }
}

//! Newton polyhedron `Γ₊(f)`, its compact faces, and the facet-normal sets
//! `S_I` of the coordinate restrictions `f^I`.
//!
//! The hull is found by brute force: every hyperplane through `n` affinely
//! independent generators (support points or recession directions `e_j`) is
//! tested as a supporting hyperplane. Support sets are tiny, so exactness is
//! worth far more than asymptotics here.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::{self, Point};
use crate::mixedpoly::{MixedPolynomial, Subset, WeightVector};

/// The deduplicated support points `{ν + μ}` of `f`, sorted.
pub fn support(f: &MixedPolynomial) -> Vec<Point> {
    let set: BTreeSet<Point> = f.terms().iter().map(|t| t.exps.support()).collect();
    set.into_iter().collect()
}

/// A top-dimensional compact face of `Γ₊(f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: WeightVector,
    pub d: i64,
    /// Support points on the facet, sorted.
    pub vertices: Vec<Point>,
    /// Indices into `f.terms()` of the monomials on the facet.
    #[serde(skip)]
    pub support_terms: Vec<usize>,
}

/// A compact face of any dimension, with the generators of its normal cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactFace {
    pub points: Vec<Point>,
    pub dim: usize,
    /// Normals of the facets of `Γ₊(f)` containing the face (possibly with
    /// zero entries for the coordinate facets).
    pub normal_cone: Vec<WeightVector>,
    /// A primitive, strictly positive normal selecting exactly this face.
    pub normal: WeightVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonBoundary {
    pub n: usize,
    pub facets: Vec<Facet>,
    /// All compact faces, ordered by dimension then point set.
    pub faces: Vec<CompactFace>,
}

/// Every facet `(normal, d)` of `Γ₊` for the given support, normals `≥ 0`.
pub fn polyhedron_facets(points: &[Point], n: usize) -> Vec<(Point, i64)> {
    let mut found = BTreeSet::new();
    for rays in 0..n {
        for dirs in lattice::combinations(n, rays) {
            let k = n - rays;
            for combo in lattice::combinations(points.len(), k) {
                let base = &points[combo[0]];
                let mut rows: Vec<Point> = combo[1..]
                    .iter()
                    .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
                    .collect();
                rows.extend(dirs.iter().map(|&j| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    e
                }));
                let Some(mut normal) = lattice::primitive_normal(&rows, n) else {
                    continue;
                };
                if normal.iter().any(|&x| x < 0) {
                    normal.iter_mut().for_each(|x| *x = -*x);
                }
                if normal.iter().any(|&x| x < 0) {
                    continue;
                }
                let d = lattice::dot(&normal, base);
                if points.iter().all(|w| lattice::dot(&normal, w) >= d) {
                    found.insert((normal, d));
                }
            }
        }
    }
    found.into_iter().collect()
}

impl NewtonBoundary {
    pub fn of(f: &MixedPolynomial) -> Result<Self> {
        f.ensure_convenient()?;
        let n = f.n();
        let points = support(f);
        let hull = polyhedron_facets(&points, n);
        let on = |normal: &Point, d: i64| -> BTreeSet<Point> {
            points
                .iter()
                .filter(|w| lattice::dot(normal, w) == d)
                .cloned()
                .collect()
        };
        let facet_sets: Vec<BTreeSet<Point>> = hull.iter().map(|(p, d)| on(p, *d)).collect();

        let mut sets: BTreeSet<BTreeSet<Point>> = facet_sets.iter().cloned().collect();
        loop {
            let current: Vec<BTreeSet<Point>> = sets.iter().cloned().collect();
            let mut grew = false;
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    let c: BTreeSet<Point> = a.intersection(b).cloned().collect();
                    if !c.is_empty() && sets.insert(c) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }

        let mut faces = Vec::new();
        for s in sets {
            let containing: Vec<&Point> = hull
                .iter()
                .zip(&facet_sets)
                .filter(|(_, fs)| s.is_subset(fs))
                .map(|((p, _), _)| p)
                .collect();
            let sum: Point = (0..n)
                .map(|j| containing.iter().map(|p| p[j]).sum())
                .collect();
            if sum.iter().any(|&x| x <= 0) {
                continue;
            }
            let pts: Vec<Point> = s.into_iter().collect();
            let dim = lattice::affine_dim(&pts).unwrap_or(0);
            faces.push(CompactFace {
                dim,
                normal_cone: containing
                    .iter()
                    .map(|p| WeightVector::new((*p).clone()).expect("hull normals are nonzero"))
                    .collect(),
                normal: WeightVector::new(lattice::primitive(&sum)).expect("positive sum"),
                points: pts,
            });
        }
        faces.sort_by(|a, b| (a.dim, &a.points).cmp(&(b.dim, &b.points)));

        let mut facets: Vec<Facet> = faces
            .iter()
            .filter(|face| face.dim + 1 == n)
            .map(|face| {
                let normal = face.normal.clone();
                let d = normal.dot(&face.points[0]);
                let support_terms = f
                    .terms()
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| normal.dot(&t.exps.support()) == d)
                    .map(|(i, _)| i)
                    .collect();
                Facet {
                    normal,
                    d,
                    vertices: face.points.clone(),
                    support_terms,
                }
            })
            .collect();
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));
        Ok(Self { n, facets, faces })
    }

    /// Compact vertices of `Γ₊(f)`.
    pub fn vertices(&self) -> Vec<&CompactFace> {
        self.faces.iter().filter(|f| f.dim == 0).collect()
    }
}

/// The minimum `d(P, f)` of `ℓ_P` over the support and the term indices where
/// it is attained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSelection {
    pub d: i64,
    pub terms: Vec<usize>,
}

/// `d(P, f)` and `Δ(P)` as term indices. `P` may have zero entries.
pub fn face_of(f: &MixedPolynomial, p: &WeightVector) -> FaceSelection {
    let vals: Vec<i64> = f
        .terms()
        .iter()
        .map(|t| p.dot(&t.exps.support()))
        .collect();
    let d = *vals.iter().min().expect("polynomials are nonempty");
    let terms = vals
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v == d)
        .map(|(i, _)| i)
        .collect();
    FaceSelection { d, terms }
}

/// `S_I` for every nonempty `I`: the primitive positive normals (in
/// `I`-coordinates) of the top-dimensional compact faces of `Γ(f^I)`.
pub fn s_sets(f: &MixedPolynomial) -> Result<BTreeMap<Subset, Vec<WeightVector>>> {
    Ok(restricted_boundaries(f)?
        .into_iter()
        .map(|r| {
            let normals = r.boundary.facets.iter().map(|fc| fc.normal.clone()).collect();
            (r.subset, normals)
        })
        .collect())
}

/// `f^I` and its Newton boundary for one coordinate subset.
#[derive(Debug, Clone)]
pub struct Restricted {
    pub subset: Subset,
    pub poly: MixedPolynomial,
    pub boundary: NewtonBoundary,
}

/// Newton boundaries of all restrictions `f^I`, ordered by `(|I|, I)`.
pub fn restricted_boundaries(f: &MixedPolynomial) -> Result<Vec<Restricted>> {
    f.ensure_convenient()?;
    Subset::all_nonempty(f.n())
        .into_iter()
        .map(|subset| {
            let poly = f
                .restrict(&subset)
                .expect("restrictions of convenient polynomials are nonempty");
            let boundary = NewtonBoundary::of(&poly)?;
            Ok(Restricted {
                subset,
                poly,
                boundary,
            })
        })
        .collect()
}

/// Groups sample weights by equal `Δ(P)`. Classes are listed in order of
/// first appearance and hold indices into `samples`.
pub fn dual_diagram_classes(f: &MixedPolynomial, samples: &[WeightVector]) -> Vec<Vec<usize>> {
    let mut classes: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (i, p) in samples.iter().enumerate() {
        let delta = face_of(f, p).terms;
        match classes.iter_mut().find(|(d, _)| *d == delta) {
            Some((_, members)) => members.push(i),
            None => classes.push((delta, vec![i])),
        }
    }
    classes.into_iter().map(|(_, m)| m).collect()
}

/// Serialized Newton data: `{"facets":[...],"S":{"I=[1,2]":[[1,1]]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonReport {
    pub facets: Vec<Facet>,
    #[serde(rename = "S")]
    pub s: BTreeMap<String, Vec<WeightVector>>,
}

impl NewtonReport {
    pub fn of(f: &MixedPolynomial) -> Result<Self> {
        let facets = NewtonBoundary::of(f)?.facets;
        let s = s_sets(f)?
            .into_iter()
            .map(|(k, v)| (k.key(), v))
            .collect();
        Ok(Self { facets, s })
    }
}

//! Regular simplicial subdivisions of the dual Newton diagram, the
//! exceptional-divisor configuration they induce, and toric chart pullbacks.
//!
//! Two variables are handled exactly (continued-fraction chains between
//! adjacent rays). Three variables go through pulling triangulations of the
//! vertex normal cones followed by stellar subdivision at parallelepiped
//! points until every cone is unimodular.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::faces::face_function;
use crate::lattice::{self, Point, Pull};
use crate::mixedpoly::{MixedMonomial, MixedPolynomial, Subset, WeightVector, ExponentPair};
use crate::newton::{face_of, s_sets, support, NewtonBoundary};

/// Default budget of stellar subdivisions for `n = 3`.
pub const DEFAULT_MAX_ITERS: usize = 10_000;

/// A simplicial cone given by primitive, linearly independent generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cone {
    generators: Vec<WeightVector>,
}

impl Cone {
    pub fn new(generators: Vec<WeightVector>) -> Result<Self> {
        let Some(n) = generators.first().map(WeightVector::len) else {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        };
        if let Some(g) = generators.iter().find(|g| g.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.len(),
            });
        }
        if let Some(g) = generators.iter().find(|g| !g.is_primitive()) {
            return Err(Error::InvalidWeight(g.as_slice().to_vec()));
        }
        let rows: Vec<Point> = generators.iter().map(|g| g.as_slice().to_vec()).collect();
        if lattice::rank(&rows) != generators.len() {
            return Err(Error::DegenerateFace {
                expected: generators.len(),
                found: lattice::rank(&rows),
            });
        }
        Ok(Self { generators })
    }

    pub fn from_points(points: &[Point]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|p| WeightVector::new(p.clone()))
                .collect::<Result<_>>()?,
        )
    }

    pub fn generators(&self) -> &[WeightVector] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.generators[0].len()
    }

    fn rows(&self) -> Vec<Point> {
        self.generators.iter().map(|g| g.as_slice().to_vec()).collect()
    }

    /// `|det|` for a full-dimensional cone.
    pub fn multiplicity(&self) -> Option<BigInt> {
        (self.dim() == self.n()).then(|| lattice::det(&self.rows()).abs())
    }

    pub fn is_regular(&self) -> bool {
        self.multiplicity().is_some_and(|m| m.is_one())
    }

    fn sorted(mut self) -> Self {
        self.generators.sort();
        self
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

/// A simplicial fan on the positive orthant, stored by its maximal cones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub n: usize,
    /// All rays, sorted.
    pub rays: Vec<WeightVector>,
    /// Maximal cones; every face of one of these is in the fan.
    pub cones: Vec<Cone>,
}

impl Fan {
    fn from_cones(n: usize, cones: Vec<Cone>) -> Self {
        let rays: BTreeSet<WeightVector> = cones
            .iter()
            .flat_map(|c| c.generators.iter().cloned())
            .collect();
        Self {
            n,
            rays: rays.into_iter().collect(),
            cones,
        }
    }

    /// Rays with every entry positive.
    pub fn positive_vertices(&self) -> Vec<&WeightVector> {
        self.rays.iter().filter(|r| r.is_strictly_positive()).collect()
    }

    pub fn is_regular(&self) -> bool {
        self.cones.iter().all(Cone::is_regular)
    }

    /// Every ray is elementary or strictly positive.
    pub fn is_convenient(&self) -> bool {
        self.rays.iter().all(|r| {
            r.is_strictly_positive() || r.as_slice().iter().filter(|&&x| x != 0).count() == 1
        })
    }

    /// Whether the cone spanned by `gens` is a face of the fan.
    pub fn contains_cone(&self, gens: &[WeightVector]) -> bool {
        self.cones
            .iter()
            .any(|c| gens.iter().all(|g| c.generators.contains(g)))
    }

    /// Unordered pairs of rays spanning a 2-cone of the fan.
    pub fn two_cones(&self) -> BTreeSet<(WeightVector, WeightVector)> {
        let mut out = BTreeSet::new();
        for c in &self.cones {
            for pair in lattice::combinations(c.dim(), 2) {
                let (a, b) = (&c.generators[pair[0]], &c.generators[pair[1]]);
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                out.insert((a.clone(), b.clone()));
            }
        }
        out
    }

    /// `{"cones":[[[1,1],[0,1]],...]}` plus `n` and the ray list.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

fn det2(u: &[i64], w: &[i64]) -> i64 {
    u[0] * w[1] - u[1] * w[0]
}

/// Rays strictly inside `cone(u, w)` completing a regular chain, listed from
/// `u` towards `w`. Requires `det(u, w) > 0` and primitive `u`.
fn regular_chain(u: &[i64], w: &[i64]) -> Vec<Point> {
    let mut out = Vec::new();
    let mut u = u.to_vec();
    loop {
        let m = det2(&u, w);
        if m <= 1 {
            return out;
        }
        // c with det(u, c) = 1 from Bezout on u.
        let eg = u[0].extended_gcd(&u[1]);
        let c = vec![-eg.y, eg.x];
        let alpha = det2(w, &c);
        let k = Integer::div_ceil(&alpha, &m);
        let v: Point = vec![c[0] + k * u[0], c[1] + k * u[1]];
        out.push(v.clone());
        u = v;
    }
}

fn elementary(n: usize, j: usize) -> WeightVector {
    WeightVector::elementary(n, j)
}

fn require_dims(f: &MixedPolynomial, n: usize) -> Result<()> {
    if f.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.n(),
        });
    }
    f.ensure_convenient()
}

/// The minimal regular subdivision of `Γ*(f)` for two variables: rays
/// `E₁`, facet normals and `E₂` in angular order, with continued-fraction
/// chains inserted between neighbours.
pub fn subdivide_2d(f: &MixedPolynomial) -> Result<Fan> {
    require_dims(f, 2)?;
    let boundary = NewtonBoundary::of(f)?;
    let mut rays: Vec<Point> = vec![vec![1, 0]];
    rays.extend(boundary.facets.iter().map(|fc| fc.normal.as_slice().to_vec()));
    rays.push(vec![0, 1]);
    rays.sort_by(|p, q| (p[1] * q[0]).cmp(&(q[1] * p[0])));
    rays.dedup();

    let mut chain = vec![rays[0].clone()];
    for pair in rays.windows(2) {
        chain.extend(regular_chain(&pair[0], &pair[1]));
        chain.push(pair[1].clone());
    }
    let cones = chain
        .windows(2)
        .map(|p| Cone::from_points(&[p[0].clone(), p[1].clone()]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Fan::from_cones(2, cones))
}

/// Stellar subdivision until every cone of `cones` is unimodular.
///
/// At each step the cone of largest multiplicity (ties broken by order) is
/// split at its parallelepiped point with the smallest largest coordinate;
/// every cone containing that point is starred at it.
pub fn regularize(n: usize, cones: Vec<Cone>, max_iters: usize) -> Result<Fan> {
    let mut seen = BTreeSet::new();
    let mut cones: Vec<Cone> = cones
        .into_iter()
        .filter(|c| seen.insert(c.clone().sorted()))
        .collect();
    if let Some(c) = cones.iter().find(|c| c.dim() != n || c.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: c.dim(),
        });
    }
    let mut iters = 0;
    loop {
        let worst = cones
            .iter()
            .map(|c| (c.multiplicity().expect("full cones"), c))
            .filter(|(m, _)| *m > BigInt::one())
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(a.1)));
        let Some((_, worst)) = worst else {
            return Ok(Fan::from_cones(n, cones));
        };
        if iters >= max_iters {
            return Err(Error::IterationBudgetExceeded {
                iters,
                cone: worst.rows(),
            });
        }
        iters += 1;
        let basis = worst.rows();
        let pick = lattice::parallelepiped_points(&basis)
            .into_iter()
            .min_by(|a, b| {
                let ka = (a.numerators.iter().max(), &a.numerators);
                let kb = (b.numerators.iter().max(), &b.numerators);
                ka.cmp(&kb)
            })
            .expect("non-unimodular cones have interior box points");
        let v = WeightVector::new(lattice::primitive(&pick.point)).expect("box points lie in the cone");
        cones = star(&cones, &v);
    }
}

/// Star subdivision of every cone containing `v`.
fn star(cones: &[Cone], v: &WeightVector) -> Vec<Cone> {
    let mut out = Vec::with_capacity(cones.len() + 2);
    for c in cones {
        let coords = lattice::coords_in_basis(&c.rows(), v.as_slice()).expect("full cones");
        if coords.iter().any(Signed::is_negative) {
            out.push(c.clone());
            continue;
        }
        for (i, l) in coords.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            let mut gens = c.generators.clone();
            gens[i] = v.clone();
            out.push(Cone { generators: gens });
        }
    }
    out
}

/// Regular subdivision of `Γ*(f)` for three variables: pulling
/// triangulations of the vertex normal cones, then [`regularize`].
pub fn subdivide_3d_stellar(f: &MixedPolynomial, max_iters: usize) -> Result<Fan> {
    require_dims(f, 3)?;
    let boundary = NewtonBoundary::of(f)?;
    let mut cones = Vec::new();
    for vertex in boundary.vertices() {
        let gens: Vec<Point> = vertex
            .normal_cone
            .iter()
            .map(|g| g.as_slice().to_vec())
            .collect();
        for simplex in lattice::triangulate_cone(&gens, Pull::LexMin) {
            let pts: Vec<Point> = simplex.iter().map(|&i| gens[i].clone()).collect();
            cones.push(Cone::from_points(&pts)?);
        }
    }
    regularize(3, cones, max_iters)
}

/// Dispatches on `n`: trivial for one variable, exact for two, stellar for
/// three; four or more variables are refused.
pub fn subdivide(f: &MixedPolynomial) -> Result<Fan> {
    match f.n() {
        1 => {
            f.ensure_convenient()?;
            Ok(Fan::from_cones(1, vec![Cone::new(vec![elementary(1, 0)])?]))
        }
        2 => subdivide_2d(f),
        3 => subdivide_3d_stellar(f, DEFAULT_MAX_ITERS),
        n => Err(Error::Unsupported(format!(
            "subdivision for n >= 4 is unsupported (got n = {n})"
        ))),
    }
}

/// An exceptional divisor `Ê(P)` for a strictly positive ray `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorNode {
    pub ray: WeightVector,
    pub dim_delta: usize,
    /// `dim Δ(P; f) ≥ 1`: the divisor meets the strict transform.
    pub meets_strict_transform: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorGraph {
    pub nodes: Vec<DivisorNode>,
    /// Rays spanning 2-cones of the fan, elementary rays included.
    pub edges: Vec<(WeightVector, WeightVector)>,
}

impl DivisorGraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Graphviz rendering; elementary rays are drawn as boxes, divisors
    /// meeting the strict transform are filled.
    pub fn to_dot(&self) -> String {
        let name = |w: &WeightVector| format!("\"{w}\"");
        let mut out = String::from("graph divisors {\n");
        let mut drawn = BTreeSet::new();
        for node in &self.nodes {
            let style = if node.meets_strict_transform {
                ", style=filled"
            } else {
                ""
            };
            out.push_str(&format!(
                "  {} [label=\"{}\\ndim {}\"{style}];\n",
                name(&node.ray),
                node.ray,
                node.dim_delta
            ));
            drawn.insert(node.ray.clone());
        }
        for (a, b) in &self.edges {
            for r in [a, b] {
                if drawn.insert(r.clone()) {
                    out.push_str(&format!("  {} [shape=box];\n", name(r)));
                }
            }
            out.push_str(&format!("  {} -- {};\n", name(a), name(b)));
        }
        out.push_str("}\n");
        out
    }
}

pub fn divisor_configuration(fan: &Fan, f: &MixedPolynomial) -> Result<DivisorGraph> {
    require_dims(f, fan.n)?;
    let nodes = fan
        .positive_vertices()
        .into_iter()
        .map(|p| {
            let sel = face_of(f, p);
            let pts: Vec<Point> = sel.terms.iter().map(|&i| f.terms()[i].exps.support()).collect();
            let dim_delta = lattice::affine_dim(&pts).unwrap_or(0);
            DivisorNode {
                ray: p.clone(),
                dim_delta,
                meets_strict_transform: dim_delta >= 1,
            }
        })
        .collect();
    Ok(DivisorGraph {
        nodes,
        edges: fan.two_cones().into_iter().collect(),
    })
}

/// A monomial `c·u^ν ū^μ` whose exponents may be negative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaurentMixedMonomial {
    pub coeff: [f64; 2],
    pub nu: Vec<i64>,
    pub mu: Vec<i64>,
}

impl LaurentMixedMonomial {
    pub fn coefficient(&self) -> Complex64 {
        Complex64::new(self.coeff[0], self.coeff[1])
    }

    pub fn total_degree(&self, i: usize) -> i64 {
        self.nu[i] + self.mu[i]
    }
}

impl fmt::Display for LaurentMixedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let c = self.coefficient();
        if c != Complex64::new(1.0, 0.0) {
            parts.push(if c.im == 0.0 {
                format!("{}", c.re)
            } else {
                format!("({},{})", c.re, c.im)
            });
        }
        for j in 0..self.nu.len() {
            for (name, e) in [("u", self.nu[j]), ("ubar", self.mu[j])] {
                match e {
                    0 => {}
                    1 => parts.push(format!("{name}{}", j + 1)),
                    e => parts.push(format!("{name}{}^{e}", j + 1)),
                }
            }
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        f.write_str(&parts.join("*"))
    }
}

/// `π_σ^* f = u^a ū^b · (face_part + remainder)` in one chart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartPullback {
    pub cone: Cone,
    /// `(r_i, p_i)` for each chart variable whose ray is strictly positive.
    pub degrees: Vec<Option<(i64, i64)>>,
    /// The common factor `∏ u_i^{(r_i+p_i)/2} ū_i^{(r_i−p_i)/2}`.
    pub factor: LaurentMixedMonomial,
    /// Terms with no residual exponent in any factored variable.
    pub face_part: Option<MixedPolynomial>,
    pub remainder: Vec<LaurentMixedMonomial>,
}

impl ChartPullback {
    /// Every remainder term has positive total residual degree in at least one
    /// factored variable, so the remainder vanishes on the exceptional set.
    pub fn remainder_is_positive(&self) -> bool {
        let factored: Vec<usize> = (0..self.degrees.len())
            .filter(|&i| self.degrees[i].is_some())
            .collect();
        self.remainder
            .iter()
            .all(|t| factored.iter().any(|&i| t.total_degree(i) > 0))
    }

    /// `factor · (face_part + remainder)` expanded into Laurent monomials.
    pub fn recombine(&self) -> Vec<LaurentMixedMonomial> {
        let shift = |t: &LaurentMixedMonomial| LaurentMixedMonomial {
            coeff: t.coeff,
            nu: t.nu.iter().zip(&self.factor.nu).map(|(a, b)| a + b).collect(),
            mu: t.mu.iter().zip(&self.factor.mu).map(|(a, b)| a + b).collect(),
        };
        let mut out: Vec<LaurentMixedMonomial> = self
            .face_part
            .iter()
            .flat_map(|fp| fp.terms().iter().map(laurent_of))
            .chain(self.remainder.iter().cloned())
            .map(|t| shift(&t))
            .collect();
        sort_laurent(&mut out);
        out
    }
}

fn laurent_of(t: &MixedMonomial) -> LaurentMixedMonomial {
    LaurentMixedMonomial {
        coeff: [t.coeff.re, t.coeff.im],
        nu: t.exps.nu.iter().map(|&x| i64::from(x)).collect(),
        mu: t.exps.mu.iter().map(|&x| i64::from(x)).collect(),
    }
}

fn sort_laurent(v: &mut [LaurentMixedMonomial]) {
    v.sort_by(|a, b| (&b.nu, &b.mu).cmp(&(&a.nu, &a.mu)));
}

/// Direct substitution `z_j = ∏_i u_i^{P_i[j]}` of every term of `f`.
pub fn substitute_chart(f: &MixedPolynomial, sigma: &Cone) -> Vec<LaurentMixedMonomial> {
    let mut out: Vec<LaurentMixedMonomial> = f
        .terms()
        .iter()
        .map(|t| {
            let nu: Point = t.exps.nu.iter().map(|&x| i64::from(x)).collect();
            let mu: Point = t.exps.mu.iter().map(|&x| i64::from(x)).collect();
            LaurentMixedMonomial {
                coeff: [t.coeff.re, t.coeff.im],
                nu: sigma.generators.iter().map(|p| p.dot(&nu)).collect(),
                mu: sigma.generators.iter().map(|p| p.dot(&mu)).collect(),
            }
        })
        .collect();
    sort_laurent(&mut out);
    out
}

/// Pulls `f` back along the chart of a regular `n`-cone and splits off the
/// exceptional factor of every strictly positive generator.
pub fn chart_pullback(f: &MixedPolynomial, sigma: &Cone) -> Result<ChartPullback> {
    let n = f.n();
    if sigma.dim() != n || sigma.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: sigma.dim(),
        });
    }
    let mult = sigma.multiplicity().expect("full cone");
    if !mult.is_one() {
        return Err(Error::NotRegular {
            det: mult.to_string(),
        });
    }
    let mut degrees = Vec::with_capacity(n);
    let (mut fa, mut fb) = (vec![0i64; n], vec![0i64; n]);
    for (i, p) in sigma.generators.iter().enumerate() {
        if !p.is_strictly_positive() {
            degrees.push(None);
            continue;
        }
        let face = face_function(f, p);
        let pdeg = match face.class {
            crate::faces::Homogeneity::StronglyPolar { pdeg } => pdeg,
            ref other => {
                return Err(Error::NotFaceType {
                    normal: p.as_slice().to_vec(),
                    reason: format!("face function is {}", other.label()),
                })
            }
        };
        let r = face.d_radial;
        if (r + pdeg) % 2 != 0 {
            return Err(Error::OddParity {
                normal: p.as_slice().to_vec(),
            });
        }
        fa[i] = (r + pdeg) / 2;
        fb[i] = (r - pdeg) / 2;
        degrees.push(Some((r, pdeg)));
    }

    let mut face_terms = Vec::new();
    let mut remainder = Vec::new();
    for t in substitute_chart(f, sigma) {
        let nu: Vec<i64> = t.nu.iter().zip(&fa).map(|(x, a)| x - a).collect();
        let mu: Vec<i64> = t.mu.iter().zip(&fb).map(|(x, b)| x - b).collect();
        let on_face = (0..n).all(|i| degrees[i].is_none() || (nu[i] == 0 && mu[i] == 0));
        if on_face {
            face_terms.push(MixedMonomial {
                coeff: t.coefficient(),
                exps: ExponentPair {
                    nu: nu.iter().map(|&x| x as u32).collect(),
                    mu: mu.iter().map(|&x| x as u32).collect(),
                },
            });
        } else {
            remainder.push(LaurentMixedMonomial {
                coeff: t.coeff,
                nu,
                mu,
            });
        }
    }
    let face_part = if face_terms.is_empty() {
        None
    } else {
        Some(MixedPolynomial::new(n, face_terms)?)
    };
    sort_laurent(&mut remainder);
    Ok(ChartPullback {
        cone: sigma.clone(),
        degrees,
        factor: LaurentMixedMonomial {
            coeff: [1.0, 0.0],
            nu: fa,
            mu: fb,
        },
        face_part,
        remainder,
    })
}

/// Chart pullbacks of every maximal cone having a strictly positive ray.
pub fn chart_pullbacks(f: &MixedPolynomial, fan: &Fan) -> Result<Vec<ChartPullback>> {
    fan.cones
        .iter()
        .filter(|c| c.generators.iter().any(WeightVector::is_strictly_positive))
        .map(|c| chart_pullback(f, c))
        .collect()
}

/// `S'_I` read off the fan: rays `P ∈ V⁺` such that `{P} ∪ {E_j : j ∉ I}`
/// spans a cone and `Δ(P) ∩ R^I` has dimension `|I| − 1`, mapped to `P^I`.
/// The result is checked to agree with the `S_I` of the Newton boundary.
pub fn s_prime_bijection(fan: &Fan, f: &MixedPolynomial) -> Result<BTreeMap<Subset, Vec<WeightVector>>> {
    require_dims(f, fan.n)?;
    let expected = s_sets(f)?;
    let pts = support(f);
    let mut out = BTreeMap::new();
    for subset in Subset::all_nonempty(fan.n) {
        let mut images: Vec<WeightVector> = Vec::new();
        for p in fan.positive_vertices() {
            let mut gens = vec![p.clone()];
            gens.extend((0..fan.n).filter(|&j| !subset.contains(j)).map(|j| elementary(fan.n, j)));
            if !fan.contains_cone(&gens) {
                continue;
            }
            let d = pts.iter().map(|q| p.dot(q)).min().expect("nonempty support");
            let on: Vec<Point> = pts
                .iter()
                .filter(|q| p.dot(q) == d)
                .filter(|q| (0..fan.n).all(|j| subset.contains(j) || q[j] == 0))
                .cloned()
                .collect();
            if on.is_empty() || lattice::affine_dim(&on) != Some(subset.len() - 1) {
                continue;
            }
            let image = p.restrict(&subset)?;
            if images.contains(&image) {
                return Err(Error::BijectionFailure(format!(
                    "two rays map to {image} for I={subset}"
                )));
            }
            images.push(image);
        }
        images.sort();
        let want = expected.get(&subset).cloned().unwrap_or_default();
        if images != want {
            return Err(Error::BijectionFailure(format!(
                "I={subset}: fan gives {images:?}, Newton boundary gives {want:?}"
            )));
        }
        out.insert(subset, images);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> MixedPolynomial {
        s.parse().unwrap()
    }

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn ray_list(fan: &Fan) -> Vec<Vec<i64>> {
        fan.rays.iter().map(|r| r.as_slice().to_vec()).collect()
    }

    #[test]
    fn chain_for_the_cusp() {
        let fan = subdivide_2d(&poly("z1^2 + z2^3")).unwrap();
        let chain: Vec<Vec<i64>> = fan
            .cones
            .iter()
            .map(|c| c.generators()[0].as_slice().to_vec())
            .chain(std::iter::once(vec![0, 1]))
            .collect();
        assert_eq!(chain, vec![vec![1, 0], vec![2, 1], vec![3, 2], vec![1, 1], vec![0, 1]]);
        assert!(fan.is_regular());
        assert!(fan.is_convenient());
    }

    #[test]
    fn single_facet_fans() {
        for s in ["z1^3*zbar1 + z2^3*zbar2 + z2^5", "z1 + z2"] {
            let fan = subdivide_2d(&poly(s)).unwrap();
            assert_eq!(ray_list(&fan), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
            assert_eq!(fan.cones.len(), 2);
        }
    }

    #[test]
    fn stellar_on_a_single_cone() {
        let cone = Cone::from_points(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2]]).unwrap();
        let fan = regularize(3, vec![cone], 100).unwrap();
        assert!(fan.is_regular());
        assert!(fan.rays.contains(&w(&[1, 1, 1])));
        let id = Cone::from_points(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(regularize(3, vec![id.clone()], 0).unwrap().cones, vec![id]);
    }

    #[test]
    fn budget_exhaustion() {
        let cone = Cone::from_points(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 5]]).unwrap();
        assert!(matches!(
            regularize(3, vec![cone], 0),
            Err(Error::IterationBudgetExceeded { iters: 0, .. })
        ));
    }

    #[test]
    fn three_variable_fans() {
        let fan = subdivide(&poly("z1^2 + z2^2 + z3^2")).unwrap();
        assert!(fan.rays.contains(&w(&[1, 1, 1])));
        assert!(fan.is_regular() && fan.is_convenient());
        let fan = subdivide(&poly("z1^2 + z2^3 + z3^5")).unwrap();
        assert!(fan.is_regular() && fan.is_convenient());
        assert!(fan.rays.contains(&w(&[15, 10, 6])));
    }

    #[test]
    fn refuses_four_variables() {
        assert!(matches!(subdivide(&poly("z1 + z2 + z3 + z4")), Err(Error::Unsupported(_))));
    }

    #[test]
    fn divisor_graphs() {
        let f = poly("z1^3*zbar1 + z2^3*zbar2 + z2^5");
        let g = divisor_configuration(&subdivide(&f).unwrap(), &f).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert_eq!(g.nodes[0].ray, w(&[1, 1]));
        assert!(g.nodes[0].meets_strict_transform);
        assert_eq!(g.edges.len(), 2);
        assert!(g.to_dot().contains("\"(1,1)\" -- \"(1,0)\"") || g.to_dot().contains("\"(1,0)\" -- \"(1,1)\""));

        let f = poly("z1^2 + z2^3");
        let g = divisor_configuration(&subdivide(&f).unwrap(), &f).unwrap();
        let flags: Vec<(Vec<i64>, bool)> = g
            .nodes
            .iter()
            .map(|n| (n.ray.as_slice().to_vec(), n.meets_strict_transform))
            .collect();
        assert_eq!(flags, vec![(vec![1, 1], false), (vec![2, 1], false), (vec![3, 2], true)]);

        let f = poly("z1^4");
        let g = divisor_configuration(&subdivide(&f).unwrap(), &f).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn chart_of_the_mixed_example() {
        let f = poly("z1^3*zbar1 + z2^3*zbar2 + z2^5");
        let sigma = Cone::from_points(&[vec![1, 1], vec![0, 1]]).unwrap();
        let c = chart_pullback(&f, &sigma).unwrap();
        assert_eq!((c.factor.nu.clone(), c.factor.mu.clone()), (vec![3, 0], vec![1, 0]));
        assert_eq!(c.face_part, Some(poly("1 + z2^3*zbar2")));
        assert_eq!(
            c.remainder,
            vec![LaurentMixedMonomial {
                coeff: [1.0, 0.0],
                nu: vec![2, 5],
                mu: vec![-1, 0]
            }]
        );
        assert_eq!(c.remainder[0].to_string(), "u1^2*ubar1^-1*u2^5");
        assert!(c.remainder_is_positive());
        assert_eq!(c.recombine(), substitute_chart(&f, &sigma));
    }

    #[test]
    fn chart_of_the_cusp() {
        let f = poly("z1^2 + z2^3");
        let sigma = Cone::from_points(&[vec![3, 2], vec![1, 1]]).unwrap();
        let c = chart_pullback(&f, &sigma).unwrap();
        assert_eq!(c.factor.nu[0], 6);
        assert_eq!(c.degrees[0], Some((6, 6)));
        assert_eq!(c.factor.nu[1], 2);
        assert!(c.remainder_is_positive());
        assert_eq!(c.recombine(), substitute_chart(&f, &sigma));

        let c = chart_pullback(&poly("z1"), &Cone::new(vec![w(&[1])]).unwrap()).unwrap();
        assert_eq!(c.factor.nu, vec![1]);
        assert_eq!(c.face_part, Some(poly("1")));
        assert!(c.remainder.is_empty());
    }

    #[test]
    fn chart_requires_regular_cone() {
        let sigma = Cone::from_points(&[vec![1, 0], vec![1, 2]]).unwrap();
        assert!(matches!(chart_pullback(&poly("z1 + z2"), &sigma), Err(Error::NotRegular { .. })));
    }

    #[test]
    fn s_prime_matches() {
        for s in ["z1^3*zbar1 + z2^3*zbar2 + z2^5", "z1^2 + z2^3", "z1^5", "z1^2 + z2^2 + z3^2", "z1^4 + z2^4 + z1*z2"] {
            let f = poly(s);
            let fan = subdivide(&f).unwrap();
            let map = s_prime_bijection(&fan, &f).unwrap();
            assert_eq!(map, s_sets(&f).unwrap(), "{s}");
        }
        let f = poly("z1^2 + z2^3");
        let map = s_prime_bijection(&subdivide(&f).unwrap(), &f).unwrap();
        assert_eq!(map[&Subset::full(2)], vec![w(&[3, 2])]);
    }
}

//! Face functions `f_P`, their homogeneity class, the strongly polar positive
//! weighted homogeneous (SPPWH) face-type predicate, and a numeric
//! non-degeneracy spot check.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, Point};
use crate::mixedpoly::{MixedPolynomial, WeightVector};
use crate::newton::{face_of, NewtonBoundary};

/// How a face function behaves under the weighted `C*`-action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum Homogeneity {
    /// Radially homogeneous only; polar degree varies across terms.
    RadialOnly,
    /// Constant polar degree, but only for a weight other than the radial one.
    PolarWeighted { weight: Vec<i64>, pdeg: i64 },
    /// Constant polar degree for the radial weight itself.
    StronglyPolar { pdeg: i64 },
}

impl Homogeneity {
    pub fn label(&self) -> &'static str {
        match self {
            Self::RadialOnly => "RadialOnly",
            Self::PolarWeighted { .. } => "PolarWeighted",
            Self::StronglyPolar { .. } => "StronglyPolar",
        }
    }

    /// The common polar degree when strongly polar with `pdeg > 0`.
    pub fn positive_polar_degree(&self) -> Option<i64> {
        match *self {
            Self::StronglyPolar { pdeg } if pdeg > 0 => Some(pdeg),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FaceFunction {
    pub base: MixedPolynomial,
    pub weight: WeightVector,
    pub d_radial: i64,
    pub class: Homogeneity,
}

/// `f_P`: the sub-sum of `f` supported on `Δ(P)`, classified.
pub fn face_function(f: &MixedPolynomial, p: &WeightVector) -> FaceFunction {
    let sel = face_of(f, p);
    let base = f
        .select(&sel.terms)
        .expect("selected terms are nonzero and distinct");
    let class = classify(&base, p);
    FaceFunction {
        base,
        weight: p.clone(),
        d_radial: sel.d,
        class,
    }
}

fn polar_vector(t: &crate::mixedpoly::MixedMonomial) -> Point {
    t.exps
        .nu
        .iter()
        .zip(&t.exps.mu)
        .map(|(&a, &b)| i64::from(a) - i64::from(b))
        .collect()
}

/// Classifies a polynomial that is radially homogeneous for `p`.
pub fn classify(face: &MixedPolynomial, p: &WeightVector) -> Homogeneity {
    let pdegs: Vec<i64> = face.terms().iter().map(|t| t.pdeg(p)).collect();
    if pdegs.windows(2).all(|w| w[0] == w[1]) {
        return Homogeneity::StronglyPolar { pdeg: pdegs[0] };
    }
    match polar_weight(face) {
        Some(q) => {
            let pdeg = lattice::dot(&q, &polar_vector(&face.terms()[0]));
            Homogeneity::PolarWeighted { weight: q, pdeg }
        }
        None => Homogeneity::RadialOnly,
    }
}

/// A strictly positive integer weight `Q` making `Σ q_i(ν_i - μ_i)` constant
/// on the terms, if one exists. Exact for `n ≤ 3`; for larger `n` a bounded
/// search is used when the difference lattice has rank ≥ 2 and nullity ≥ 2.
fn polar_weight(face: &MixedPolynomial) -> Option<Point> {
    let n = face.n();
    let vecs: Vec<Point> = face.terms().iter().map(polar_vector).collect();
    let diffs: Vec<Point> = vecs[1..]
        .iter()
        .map(|v| v.iter().zip(&vecs[0]).map(|(a, b)| a - b).collect())
        .collect();
    let r = lattice::rank(&diffs);
    let positive_pdeg = |q: &Point| lattice::dot(q, &vecs[0]) > 0;
    let accepts = |q: &Point| {
        q.iter().all(|&x| x > 0) && diffs.iter().all(|d| lattice::dot(q, d) == 0) && positive_pdeg(q)
    };
    if r == 0 {
        let q = vec![1; n];
        return accepts(&q).then_some(q);
    }
    if r == n {
        return None;
    }
    if r + 1 == n {
        // One-dimensional kernel: its primitive generator or its negative.
        let basis: Vec<Point> = independent_rows(&diffs, r);
        let mut q = lattice::primitive_normal(&basis, n)?;
        if q.iter().any(|&x| x < 0) {
            q.iter_mut().for_each(|x| *x = -*x);
        }
        return accepts(&q).then_some(q);
    }
    // Bounded search over small positive weights.
    let bound = 12i64;
    if n > 4 {
        return None;
    }
    let mut q = vec![1i64; n];
    loop {
        if accepts(&q) {
            return Some(lattice::primitive(&q));
        }
        let mut j = 0;
        loop {
            if j == n {
                return None;
            }
            q[j] += 1;
            if q[j] <= bound {
                break;
            }
            q[j] = 1;
            j += 1;
        }
    }
}

fn independent_rows(rows: &[Point], r: usize) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(r);
    for row in rows {
        let mut trial = out.clone();
        trial.push(row.clone());
        if lattice::rank(&trial) == trial.len() {
            out = trial;
            if out.len() == r {
                break;
            }
        }
    }
    out
}

/// Outcome of the SPPWH face-type test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceTypeVerdict {
    pub holds: bool,
    /// First facet (by normal order) whose face function is not strongly
    /// polar with positive polar degree.
    pub failing: Option<(WeightVector, Homogeneity)>,
}

/// Every top-dimensional face function must be strongly polar with `pdeg > 0`.
pub fn is_sppwh_face_type(f: &MixedPolynomial) -> Result<FaceTypeVerdict> {
    let boundary = NewtonBoundary::of(f)?;
    for facet in &boundary.facets {
        let ff = face_function(f, &facet.normal);
        if ff.class.positive_polar_degree().is_none() {
            return Ok(FaceTypeVerdict {
                holds: false,
                failing: Some((facet.normal.clone(), ff.class)),
            });
        }
    }
    Ok(FaceTypeVerdict {
        holds: true,
        failing: None,
    })
}

pub(crate) fn require_sppwh(f: &MixedPolynomial) -> Result<()> {
    let verdict = is_sppwh_face_type(f)?;
    match verdict.failing {
        None => Ok(()),
        Some((normal, class)) => Err(Error::NotFaceType {
            normal: normal.into_inner(),
            reason: format!("facet face function is {}", class.label()),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationVerdict {
    pub passed: bool,
    pub offending: Option<WeightVector>,
}

/// Samples random positive weights (entries in `1..=10`) and checks each face
/// function is strongly polar with positive polar degree. A failure on an
/// SPPWH-face-type input indicates a defect.
pub fn check_face_propagation(
    f: &MixedPolynomial,
    trials: usize,
    rng_seed: u64,
) -> Result<PropagationVerdict> {
    require_sppwh(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for _ in 0..trials {
        let p: Vec<i64> = (0..f.n()).map(|_| rng.random_range(1..=10)).collect();
        let p = WeightVector::new(p).expect("entries are positive");
        let ff = face_function(f, &p);
        if ff.class.positive_polar_degree().is_none() {
            return Ok(PropagationVerdict {
                passed: false,
                offending: Some(p),
            });
        }
    }
    Ok(PropagationVerdict {
        passed: true,
        offending: None,
    })
}

/// Result of the Monte Carlo non-degeneracy check. Never a proof.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum NondegeneracyVerdict {
    NoCounterexampleFound { zeros_located: usize },
    CounterexampleAt { point: Vec<[f64; 2]>, sigma_min: f64 },
}

impl NondegeneracyVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            Self::NoCounterexampleFound { .. } => "heuristic-pass",
            Self::CounterexampleAt { .. } => "counterexample",
        }
    }
}

const DESCENT_ITERS: usize = 200;
const ZERO_TOL: f64 = 1e-14;
const FD_STEP: f64 = 1e-6;

/// Real `2 × 2n` Jacobian of `(Re g, Im g)` with respect to `(x_j, y_j)`, from
/// the Wirtinger derivatives.
fn real_jacobian(dz: &[Complex64], dzbar: &[Complex64]) -> [Vec<f64>; 2] {
    let mut re = Vec::with_capacity(2 * dz.len());
    let mut im = Vec::with_capacity(2 * dz.len());
    for (a, b) in dz.iter().zip(dzbar) {
        let dx = a + b;
        let dy = Complex64::new(0.0, 1.0) * (a - b);
        re.extend([dx.re, dy.re]);
        im.extend([dx.im, dy.im]);
    }
    [re, im]
}

fn finite_difference_jacobian(g: &MixedPolynomial, z: &[Complex64]) -> [Vec<f64>; 2] {
    let mut re = Vec::with_capacity(2 * z.len());
    let mut im = Vec::with_capacity(2 * z.len());
    for j in 0..z.len() {
        for dir in [Complex64::new(FD_STEP, 0.0), Complex64::new(0.0, FD_STEP)] {
            let mut zp = z.to_vec();
            let mut zm = z.to_vec();
            zp[j] += dir;
            zm[j] -= dir;
            let d = (g.evaluate(&zp) - g.evaluate(&zm)) / (2.0 * FD_STEP);
            re.push(d.re);
            im.push(d.im);
        }
    }
    [re, im]
}

/// Moves `z` along the weighted `R₊`-orbit `z_j ↦ s^{p_j} z_j` so that
/// `max_j |z_j|^{1/p_j} = 1`. Zeros of a radially homogeneous face stay zeros,
/// and the Jacobian is compared at a fixed scale.
fn normalize_orbit(z: &[Complex64], p: &WeightVector) -> Vec<Complex64> {
    let w = p.as_slice();
    let size = z
        .iter()
        .zip(w)
        .map(|(zj, &pj)| zj.norm().powf(1.0 / pj as f64))
        .fold(0.0, f64::max);
    if size <= 0.0 || !size.is_finite() {
        return z.to_vec();
    }
    z.iter()
        .zip(w)
        .map(|(zj, &pj)| zj * size.powf(-(pj as f64)))
        .collect()
}

/// Smallest singular value of a `2 × m` real matrix.
pub fn smallest_singular_value(j: &[Vec<f64>; 2]) -> f64 {
    let a: f64 = j[0].iter().map(|x| x * x).sum();
    let c: f64 = j[1].iter().map(|x| x * x).sum();
    let b: f64 = j[0].iter().zip(&j[1]).map(|(x, y)| x * y).sum();
    let tr = a + c;
    let disc = ((a - c) * (a - c) + 4.0 * b * b).sqrt();
    ((tr - disc) / 2.0).max(0.0).sqrt()
}

/// Damped Gauss-Newton descent of `|g|²` from `z`. Returns the point when
/// the residual drops below the zero tolerance.
fn descend_to_zero(g: &MixedPolynomial, mut z: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let scale: f64 = g.terms().iter().map(|t| t.coeff.norm()).sum::<f64>().max(1.0);
    for _ in 0..DESCENT_ITERS {
        let (v, dz, dzbar) = g.evaluate_with_wirtinger(&z);
        if v.norm() < ZERO_TOL * scale {
            return Some(z);
        }
        let jac = real_jacobian(&dz, &dzbar);
        let a: f64 = jac[0].iter().map(|x| x * x).sum();
        let c: f64 = jac[1].iter().map(|x| x * x).sum();
        let b: f64 = jac[0].iter().zip(&jac[1]).map(|(x, y)| x * y).sum();
        let damp = 1e-14 * (a + c).max(1e-300);
        let (a, c) = (a + damp, c + damp);
        let det = a * c - b * b;
        if !det.is_finite() || det <= 0.0 {
            return None;
        }
        // y = (J Jᵀ)⁻¹ F, step = -Jᵀ y
        let (fr, fi) = (v.re, v.im);
        let y0 = (c * fr - b * fi) / det;
        let y1 = (a * fi - b * fr) / det;
        for (k, zk) in z.iter_mut().enumerate() {
            let sx = -(jac[0][2 * k] * y0 + jac[1][2 * k] * y1);
            let sy = -(jac[0][2 * k + 1] * y0 + jac[1][2 * k + 1] * y1);
            *zk += Complex64::new(sx, sy);
        }
        if z.iter().any(|w| !w.norm().is_finite() || w.norm() > 1e6 || w.norm() < 1e-6) {
            return None;
        }
    }
    None
}

/// Monte Carlo search for critical points of `f_P` on `f_P⁻¹(0) ∩ (C*)ⁿ`.
///
/// Starting points have radii in `[0.5, 2]` and uniform phases; each is
/// pushed onto the zero set by damped Gauss-Newton and moved along its
/// weighted `R₊`-orbit to unit size. At every located zero the real
/// Jacobian is assembled by central differences and its smallest singular
/// value compared with `tol`. Sample `i` draws from ChaCha8 stream
/// `i` of `rng_seed`, so verdicts are reproducible and order-independent.
pub fn nondegeneracy_spot_check(
    f: &MixedPolynomial,
    p: &WeightVector,
    samples: usize,
    rng_seed: u64,
    tol: f64,
) -> NondegeneracyVerdict {
    let g = face_function(f, p).base;
    let n = g.n();
    let mut zeros = 0;
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        rng.set_stream(i as u64);
        let start: Vec<Complex64> = (0..n)
            .map(|_| {
                let r: f64 = rng.random_range(0.5..=2.0);
                let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                Complex64::from_polar(r, theta)
            })
            .collect();
        let Some(z) = descend_to_zero(&g, start) else {
            continue;
        };
        let z = normalize_orbit(&z, p);
        zeros += 1;
        let sigma = smallest_singular_value(&finite_difference_jacobian(&g, &z));
        if sigma <= tol {
            return NondegeneracyVerdict::CounterexampleAt {
                point: z.iter().map(|w| [w.re, w.im]).collect(),
                sigma_min: sigma,
            };
        }
    }
    NondegeneracyVerdict::NoCounterexampleFound {
        zeros_located: zeros,
    }
}

//! Euler characteristics `χ(P)` of toric Milnor fibers `{f_P^I = 1} ⊂ (C*)^I`.
//!
//! Four routes are available: the lattice-volume formula for holomorphic
//! faces, the covering law for faces pulled back along `w ↦ wᵃw̄ᵇ`, a numeric
//! count of `C*`-orbits of zeros for two-variable faces, and user-supplied
//! values. Mixed faces with `|I| ≥ 3` have no combinatorial formula, so for
//! those only supplied values are accepted.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::covering::CoveringMap;
use crate::error::{Error, Result};
use crate::faces::{face_function, FaceFunction};
use crate::lattice::{self, Point, Pull};
use crate::mixedpoly::{MixedPolynomial, Subset, WeightVector};
use crate::newton::support;

/// Tuning for the numeric orbit count. Defaults: radii log-spaced over
/// `[1e-2, 1e2]` in 41 steps, 360 phases, dedup at `1e-6`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveParams {
    pub radius_min: f64,
    pub radius_max: f64,
    pub radial_steps: usize,
    pub phases: usize,
    pub dedup_tol: f64,
    pub max_iter: usize,
    pub residual_tol: f64,
}

impl Default for CurveParams {
    fn default() -> Self {
        Self {
            radius_min: 1e-2,
            radius_max: 1e2,
            radial_steps: 41,
            phases: 360,
            dedup_tol: 1e-6,
            max_iter: 60,
            residual_tol: 1e-12,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct SuppliedEntry {
    #[serde(rename = "I")]
    subset: Subset,
    #[serde(rename = "P")]
    weight: WeightVector,
    chi: i64,
}

/// User-supplied `χ` values keyed by `(I, P)` with `P` in `I`-coordinates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuppliedChi(BTreeMap<(Subset, WeightVector), i64>);

impl SuppliedChi {
    /// Parses `[{"I":[1,2],"P":[1,1],"chi":-3}, ...]`.
    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<SuppliedEntry> = serde_json::from_str(text)?;
        let mut map = BTreeMap::new();
        for e in entries {
            if e.weight.len() != e.subset.len() {
                return Err(Error::DimensionMismatch {
                    expected: e.subset.len(),
                    got: e.weight.len(),
                });
            }
            map.insert((e.subset, e.weight), e.chi);
        }
        Ok(Self(map))
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<SuppliedEntry> = self
            .0
            .iter()
            .map(|((s, p), &chi)| SuppliedEntry {
                subset: s.clone(),
                weight: p.clone(),
                chi,
            })
            .collect();
        serde_json::to_string(&entries).expect("plain data serializes")
    }

    pub fn insert(&mut self, subset: Subset, weight: WeightVector, chi: i64) {
        self.0.insert((subset, weight), chi);
    }

    pub fn get(&self, subset: &Subset, weight: &WeightVector) -> Option<i64> {
        self.0.get(&(subset.clone(), weight.clone())).copied()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChiStrategy {
    HolomorphicVolume,
    /// Faces are pushed down along `w ↦ wᵃw̄ᵇ` to holomorphic faces.
    CoveringPullback { a: u32, b: u32 },
    CurveOrbitCount(CurveParams),
    Supplied(SuppliedChi),
}

impl fmt::Display for ChiStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::HolomorphicVolume => f.write_str("holomorphic"),
            Self::CoveringPullback { a, b } => write!(f, "covering:{a},{b}"),
            Self::CurveOrbitCount(_) => f.write_str("curve"),
            Self::Supplied(_) => f.write_str("supplied"),
        }
    }
}

/// Where a `χ` value came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "kebab-case")]
pub enum Provenance {
    HolomorphicVolume,
    CoveringPullback { a: u32, b: u32 },
    CurveOrbitCount { roots: usize },
    /// Exact count on a coordinate axis: `c·zᵃz̄ᵇ = 1` has `|a − b|` solutions.
    AxisCount,
    Supplied,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiRecord {
    #[serde(rename = "I")]
    pub subset: Subset,
    #[serde(rename = "P")]
    pub weight: WeightVector,
    pub chi: i64,
    pub provenance: Provenance,
    pub heuristic: bool,
}

fn factorial(k: usize) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// `k!·Vol_k(Cone(Δ, 0))`, triangulating by pulling from the chosen vertex.
pub fn normalized_cone_volume(delta: &[Point], k: usize, pull: Pull) -> Result<BigInt> {
    let mut pts: Vec<Point> = delta.to_vec();
    pts.sort();
    pts.dedup();
    if let Some(bad) = pts.iter().find(|p| p.len() != k) {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: bad.len(),
        });
    }
    let found = lattice::affine_dim(&pts).unwrap_or(0);
    if pts.is_empty() || found + 1 != k || lattice::rank(&pts) != k {
        return Err(Error::DegenerateFace {
            expected: k.saturating_sub(1),
            found,
        });
    }
    Ok(lattice::normalized_cone_volume(&pts, pull))
}

/// Euclidean `k`-volume of the cone over `Δ` with apex at the origin.
pub fn lattice_cone_volume(delta: &[Point], k: usize) -> Result<BigRational> {
    let nv = normalized_cone_volume(delta, k, Pull::LexMin)?;
    Ok(BigRational::new(nv, factorial(k)))
}

fn sign_for(k: usize) -> i64 {
    if k % 2 == 1 {
        1
    } else {
        -1
    }
}

/// `(−1)^{k−1}·k!·Vol` for a holomorphic face given in its own `k` variables.
pub fn chi_of_holomorphic_face(face: &MixedPolynomial) -> Result<i64> {
    if !face.is_holomorphic() {
        return Err(Error::StrategyInapplicable(
            "volume formula needs a holomorphic face".into(),
        ));
    }
    let k = face.n();
    let nv = normalized_cone_volume(&support(face), k, Pull::LexMin)?;
    let nv = nv.to_i64().ok_or(Error::Overflow("cone volume"))?;
    Ok(sign_for(k) * nv)
}

/// `χ(P)` of a holomorphic `f^I` via the lattice-volume formula.
pub fn chi_holomorphic(f: &MixedPolynomial, subset: &Subset, p: &WeightVector) -> Result<i64> {
    let face = restricted_face(f, subset, p)?;
    chi_of_holomorphic_face(&face.base)
}

/// `(a − b)^{|I|}·χ_base`.
pub fn chi_covering(subset_len: usize, a: u32, b: u32, chi_base: i64) -> Result<i64> {
    let cov = CoveringMap::new(a, b)?;
    let factor = i64::from(cov.a - cov.b)
        .checked_pow(subset_len as u32)
        .ok_or(Error::Overflow("covering degree"))?;
    chi_base.checked_mul(factor).ok_or(Error::Overflow("chi"))
}

/// Exact count on an axis: `c·zᵃz̄ᵇ = 1` has `|a − b|` solutions in `C*`.
pub fn chi_axis(face: &MixedPolynomial) -> Result<i64> {
    match face.terms() {
        [t] if face.n() == 1 => {
            let (a, b) = (i64::from(t.exps.nu[0]), i64::from(t.exps.mu[0]));
            if a == b {
                return Err(Error::StrategyInapplicable(
                    "axis face has polar degree 0".into(),
                ));
            }
            Ok((a - b).abs())
        }
        _ => Err(Error::StrategyInapplicable(
            "axis count needs a single monomial in one variable".into(),
        )),
    }
}

/// Result of the numeric orbit count on a two-variable face.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitCount {
    pub chi: i64,
    pub roots: Vec<Complex64>,
    pub orbits: i64,
}

/// Monomial terms of `w ↦ face(1, w)` as `(c, ν₂, μ₂)`.
struct SliceFn {
    terms: Vec<(Complex64, i32, i32)>,
}

impl SliceFn {
    fn new(face: &MixedPolynomial) -> Self {
        Self {
            terms: face
                .terms()
                .iter()
                .map(|t| (t.coeff, t.exps.nu[1] as i32, t.exps.mu[1] as i32))
                .collect(),
        }
    }

    /// `(h, ∂h/∂w, ∂h/∂w̄, Σ|terms|)` at `w`.
    fn eval(&self, w: Complex64) -> (Complex64, Complex64, Complex64, f64) {
        let (r, theta) = w.to_polar();
        let zero = Complex64::new(0.0, 0.0);
        let (mut h, mut hw, mut hwb, mut mag) = (zero, zero, zero, 0.0);
        for &(c, a, b) in &self.terms {
            let m = r.powi(a + b);
            h += c * Complex64::from_polar(m, f64::from(a - b) * theta);
            mag += c.norm() * m;
            if a > 0 {
                let m1 = r.powi(a + b - 1);
                hw += c * f64::from(a) * Complex64::from_polar(m1, f64::from(a - 1 - b) * theta);
            }
            if b > 0 {
                let m1 = r.powi(a + b - 1);
                hwb += c * f64::from(b) * Complex64::from_polar(m1, f64::from(a - b + 1) * theta);
            }
        }
        (h, hw, hwb, mag)
    }

    /// Newton's method for the real map `w ↦ h(w)`: solves
    /// `h_w δ + h_w̄ δ̄ = −h`.
    fn newton(&self, mut w: Complex64, params: &CurveParams) -> Option<Complex64> {
        for _ in 0..params.max_iter {
            let (h, a, b, mag) = self.eval(w);
            if h.norm() <= params.residual_tol * mag.max(f64::MIN_POSITIVE) {
                return Some(w);
            }
            let det = a.norm_sqr() - b.norm_sqr();
            if det == 0.0 || !det.is_finite() {
                return None;
            }
            let c = -h;
            let delta = (a.conj() * c - b * c.conj()) / det;
            w += delta;
            let r = w.norm();
            if !r.is_finite() || !(1e-9..=1e9).contains(&r) {
                return None;
            }
        }
        let (h, _, _, mag) = self.eval(w);
        (h.norm() <= params.residual_tol * mag).then_some(w)
    }
}

/// Distinct zeros of `w ↦ face(1, w)` in `C*`, located from a polar grid of
/// seeds and deduplicated.
pub fn slice_zeros(face: &MixedPolynomial, params: &CurveParams) -> Vec<Complex64> {
    let slice = SliceFn::new(face);
    let (lo, hi) = (params.radius_min.ln(), params.radius_max.ln());
    let steps = params.radial_steps.max(2);
    let mut roots: Vec<Complex64> = Vec::new();
    for i in 0..steps {
        let r = (lo + (hi - lo) * i as f64 / (steps - 1) as f64).exp();
        for j in 0..params.phases {
            let theta = std::f64::consts::TAU * j as f64 / params.phases as f64;
            let Some(w) = slice.newton(Complex64::from_polar(r, theta), params) else {
                continue;
            };
            let tol = params.dedup_tol * w.norm().max(1.0);
            if !roots.iter().any(|x| (x - w).norm() <= tol) {
                roots.push(w);
            }
        }
    }
    roots.sort_by(|a, b| {
        (a.norm(), a.arg())
            .partial_cmp(&(b.norm(), b.arg()))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    roots
}

/// `χ = −pdeg·k` where `k` counts `C*`-orbits of zeros of a strongly polar
/// face in two variables; orbits meet `{z₁ = 1}` in `p₁` points each.
/// One-variable faces use the exact axis count instead.
pub fn chi_curve_orbit_count(face: &FaceFunction, params: &CurveParams) -> Result<OrbitCount> {
    let pdeg = face.class.positive_polar_degree().ok_or_else(|| {
        Error::StrategyInapplicable(format!(
            "orbit count needs a strongly polar face with pdeg > 0, got {}",
            face.class.label()
        ))
    })?;
    match face.base.n() {
        1 => Ok(OrbitCount {
            chi: chi_axis(&face.base)?,
            roots: Vec::new(),
            orbits: 1,
        }),
        2 => {
            let roots = slice_zeros(&face.base, params);
            if roots.is_empty() {
                return Err(Error::NoZerosFound);
            }
            let p1 = face.weight.as_slice()[0];
            let m = roots.len() as i64;
            if m % p1 != 0 {
                return Err(Error::NonIntegralOrbitCount {
                    roots: roots.len(),
                    p1,
                });
            }
            let orbits = m / p1;
            Ok(OrbitCount {
                chi: -pdeg * orbits,
                roots,
                orbits,
            })
        }
        k => Err(Error::StrategyInapplicable(format!(
            "orbit count is only defined for |I| <= 2, got |I| = {k}"
        ))),
    }
}

fn restricted_face(f: &MixedPolynomial, subset: &Subset, p: &WeightVector) -> Result<FaceFunction> {
    let fi = f.restrict(subset).ok_or_else(|| {
        Error::StrategyInapplicable(format!("restriction to I={subset} is empty"))
    })?;
    if p.len() != subset.len() {
        return Err(Error::DimensionMismatch {
            expected: subset.len(),
            got: p.len(),
        });
    }
    Ok(face_function(&fi, p))
}

/// Routes `(I, P)` to an applicable strategy.
///
/// Order: a supplied value for `(I, P)`; the volume formula when the face is
/// holomorphic; the exact axis count when `|I| = 1`; then the strategy's own
/// route.
pub fn chi_for(
    f: &MixedPolynomial,
    subset: &Subset,
    p: &WeightVector,
    strategy: &ChiStrategy,
) -> Result<ChiRecord> {
    let face = restricted_face(f, subset, p)?;
    let record = |chi, provenance, heuristic| ChiRecord {
        subset: subset.clone(),
        weight: p.clone(),
        chi,
        provenance,
        heuristic,
    };
    if let ChiStrategy::Supplied(map) = strategy {
        if let Some(chi) = map.get(subset, p) {
            return Ok(record(chi, Provenance::Supplied, false));
        }
    }
    if face.base.is_holomorphic() {
        let chi = chi_of_holomorphic_face(&face.base)?;
        return Ok(record(chi, Provenance::HolomorphicVolume, false));
    }
    if subset.len() == 1 {
        if let Ok(chi) = chi_axis(&face.base) {
            return Ok(record(chi, Provenance::AxisCount, false));
        }
    }
    match strategy {
        ChiStrategy::HolomorphicVolume => Err(Error::StrategyInapplicable(format!(
            "face of I={subset}, P={p} is not holomorphic"
        ))),
        ChiStrategy::CoveringPullback { a, b } => {
            let cov = CoveringMap::new(*a, *b)?;
            let base = cov
                .pushforward(&face.base)
                .filter(MixedPolynomial::is_holomorphic)
                .ok_or_else(|| {
                    Error::StrategyInapplicable(format!(
                        "face of I={subset}, P={p} is not the pullback of a holomorphic face under {cov}"
                    ))
                })?;
            let chi = chi_covering(subset.len(), *a, *b, chi_of_holomorphic_face(&base)?)?;
            Ok(record(chi, Provenance::CoveringPullback { a: *a, b: *b }, false))
        }
        ChiStrategy::CurveOrbitCount(params) => {
            let count = chi_curve_orbit_count(&face, params)?;
            Ok(record(
                count.chi,
                Provenance::CurveOrbitCount {
                    roots: count.roots.len(),
                },
                true,
            ))
        }
        ChiStrategy::Supplied(_) => Err(Error::StrategyInapplicable(format!(
            "no supplied chi for I={subset}, P={p}"
        ))),
    }
}

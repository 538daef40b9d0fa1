//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use milnor_zeta_core::chi::lattice_cone_volume;
use milnor_zeta_core::covering::CoveringMap;
use milnor_zeta_core::faces::check_face_propagation;
use milnor_zeta_core::lattice::{self, normalized_cone_volume as raw_volume, Point, Pull};
use milnor_zeta_core::newton::{s_sets, support, NewtonBoundary};
use milnor_zeta_core::toricfan::{s_prime_bijection, subdivide};
use milnor_zeta_core::{MixedMonomial, MixedPolynomial, Subset, WeightVector, ExponentPair};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

pub fn poly(s: &str) -> MixedPolynomial {
    s.parse().unwrap()
}

pub fn w(v: &[i64]) -> WeightVector {
    WeightVector::new(v.to_vec()).unwrap()
}

/// `(ν, μ)` exponents per term.
pub type RawTerms = Vec<(Vec<u32>, Vec<u32>)>;

/// A convenient polynomial: one pure power per axis plus up to `8 − n`
/// further terms, every `ν_j + μ_j ≤ 6`.
pub fn convenient_terms(max_n: usize, holomorphic: bool) -> impl Strategy<Value = (usize, RawTerms)> {
    (1..=max_n).prop_flat_map(move |n| {
        let pure = proptest::collection::vec((1u32..=6, 0u32..=6), n);
        let pair = proptest::collection::vec((0u32..=6, 0u32..=6), n);
        let extra = proptest::collection::vec(pair, 0..=(8 - n));
        (Just(n), pure, extra).prop_map(move |(n, pure, extra)| {
            let split = |tot: u32, frac: u32| -> (u32, u32) {
                if holomorphic {
                    (tot, 0)
                } else {
                    let mu = frac.min(tot);
                    (tot - mu, mu)
                }
            };
            let mut terms = RawTerms::new();
            for (j, &(tot, frac)) in pure.iter().enumerate() {
                let (a, b) = split(tot, frac);
                let mut nu = vec![0; n];
                let mut mu = vec![0; n];
                nu[j] = a;
                mu[j] = b;
                terms.push((nu, mu));
            }
            for t in extra {
                let mut nu = vec![0; n];
                let mut mu = vec![0; n];
                for (j, &(tot, frac)) in t.iter().enumerate() {
                    let (a, b) = split(tot, frac);
                    nu[j] = a;
                    mu[j] = b;
                }
                if nu.iter().chain(&mu).any(|&x| x > 0) {
                    terms.push((nu, mu));
                }
            }
            (n, terms)
        })
    })
}

pub fn build(n: usize, terms: &RawTerms) -> MixedPolynomial {
    let monos = terms
        .iter()
        .map(|(nu, mu)| MixedMonomial {
            coeff: Complex64::new(1.0, 0.0),
            exps: ExponentPair::new(nu.clone(), mu.clone()).unwrap(),
        })
        .collect();
    MixedPolynomial::new(n, monos).unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Facets are supporting hyperplanes with strictly positive primitive normals.
pub fn check_facets(f: &MixedPolynomial) -> Result<(), String> {
    let pts = support(f);
    let nb = NewtonBoundary::of(f).map_err(|e| e.to_string())?;
    check(!nb.facets.is_empty(), || format!("{f}: no facets"))?;
    for fc in &nb.facets {
        let p = fc.normal.as_slice();
        check(p.iter().all(|&x| x > 0), || format!("{f}: normal {p:?} not positive"))?;
        check(lattice::gcd_all(p) == 1, || format!("{f}: normal {p:?} not primitive"))?;
        check(pts.iter().all(|q| lattice::dot(p, q) >= fc.d), || format!("{f}: {p:?} does not support"))?;
        check(fc.vertices.iter().all(|q| lattice::dot(p, q) == fc.d), || format!("{f}: vertex off facet"))?;
        let on = pts.iter().filter(|q| lattice::dot(p, q) == fc.d).count();
        check(on == fc.vertices.len(), || format!("{f}: facet {p:?} misses points"))?;
        check(lattice::affine_dim(&fc.vertices) == Some(f.n() - 1), || {
            format!("{f}: facet {p:?} is not top-dimensional")
        })?;
    }
    Ok(())
}

/// Largest coordinate spread, bounding every entry of a primitive facet normal
/// by a Hadamard-type estimate on the cofactors of point differences.
fn normal_bound(points: &[Point], n: usize) -> i64 {
    let spread = (0..n)
        .map(|j| {
            let lo = points.iter().map(|p| p[j]).min().unwrap_or(0);
            let hi = points.iter().map(|p| p[j]).max().unwrap_or(0);
            hi - lo
        })
        .max()
        .unwrap_or(1)
        .max(1);
    match n {
        1 => 1,
        2 => spread,
        _ => 2 * spread * spread,
    }
}

fn for_each_positive(n: usize, bound: i64, mut visit: impl FnMut(&[i64])) {
    let mut v = vec![1i64; n];
    loop {
        visit(&v);
        let mut j = 0;
        while j < n {
            v[j] += 1;
            if v[j] <= bound {
                break;
            }
            v[j] = 1;
            j += 1;
        }
        if j == n {
            return;
        }
    }
}

/// `S_I` by brute force: every primitive positive `P` within the bound whose
/// minimizing set on `supp(f^I)` has affine dimension `|I| − 1`.
pub fn s_sets_oracle(f: &MixedPolynomial) -> BTreeMap<Subset, Vec<WeightVector>> {
    let mut out = BTreeMap::new();
    for subset in Subset::all_nonempty(f.n()) {
        let fi = f.restrict(&subset).unwrap();
        let pts = support(&fi);
        let k = subset.len();
        let bound = normal_bound(&pts, k);
        let mut found = Vec::new();
        for_each_positive(k, bound, |p| {
            if lattice::gcd_all(p) != 1 {
                return;
            }
            let vals: Vec<i64> = pts.iter().map(|q| lattice::dot(p, q)).collect();
            let d = *vals.iter().min().unwrap();
            let on: Vec<Point> = pts
                .iter()
                .zip(&vals)
                .filter(|(_, &v)| v == d)
                .map(|(q, _)| q.clone())
                .collect();
            if on.len() >= k && lattice::affine_dim(&on) == Some(k - 1) {
                found.push(WeightVector::new(p.to_vec()).unwrap());
            }
        });
        found.sort();
        out.insert(subset, found);
    }
    out
}

/// Twice the area of a polygon by the shoelace formula.
pub fn shoelace_twice_area(poly: &[Point]) -> i64 {
    let m = poly.len();
    (0..m)
        .map(|i| {
            let (p, q) = (&poly[i], &poly[(i + 1) % m]);
            p[0] * q[1] - p[1] * q[0]
        })
        .sum::<i64>()
        .abs()
}

pub fn check_volumes(f: &MixedPolynomial) -> Result<(), String> {
    let nb = NewtonBoundary::of(f).map_err(|e| e.to_string())?;
    let n = f.n();
    for fc in &nb.facets {
        let a = raw_volume(&fc.vertices, Pull::LexMin);
        let b = raw_volume(&fc.vertices, Pull::LexMax);
        check(a == b, || format!("{f}: pulling volumes differ {a} vs {b}"))?;
        let vol = lattice_cone_volume(&fc.vertices, n).map_err(|e| e.to_string())?;
        let fact: i64 = (1..=n as i64).product();
        check(vol * BigRational::from_integer(BigInt::from(fact)) == BigRational::from_integer(a.clone()), || {
            format!("{f}: volume normalization")
        })?;
        if n == 2 {
            let mut hull = fc.vertices.clone();
            hull.sort_by(|p, q| (p[1] * q[0]).cmp(&(q[1] * p[0])));
            let mut poly = vec![vec![0, 0], hull[0].clone(), hull[hull.len() - 1].clone()];
            poly.dedup();
            let area = shoelace_twice_area(&poly);
            check(BigInt::from(area) == a, || format!("{f}: shoelace {area} vs {a}"))?;
        }
    }
    Ok(())
}

pub fn check_fans(f: &MixedPolynomial) -> Result<(), String> {
    if f.n() > 3 {
        return Ok(());
    }
    let fan = subdivide(f).map_err(|e| format!("{f}: {e}"))?;
    check(fan.is_regular(), || format!("{f}: fan not regular"))?;
    check(fan.is_convenient(), || format!("{f}: fan not convenient"))?;
    let map = s_prime_bijection(&fan, f).map_err(|e| format!("{f}: {e}"))?;
    let s = s_sets(f).map_err(|e| e.to_string())?;
    check(map == s, || format!("{f}: S' differs from S"))
}

pub fn check_geometry(n: usize, terms: &RawTerms) -> Result<(), String> {
    let f = build(n, terms);
    check_facets(&f)?;
    let s = s_sets(&f).map_err(|e| e.to_string())?;
    let oracle = s_sets_oracle(&f);
    check(s == oracle, || format!("{f}: S_I {s:?} vs oracle {oracle:?}"))?;
    check_volumes(&f)?;
    check_fans(&f)
}

/// Pullbacks of holomorphic polynomials keep strongly polar faces everywhere.
pub fn check_propagation(n: usize, terms: &RawTerms, a: u32, b: u32, seed: u64) -> Result<(), String> {
    let f = build(n, terms);
    let cov = CoveringMap::new(a, b).map_err(|e| e.to_string())?;
    let g = cov.pullback(&f).map_err(|e| e.to_string())?;
    let v = check_face_propagation(&g, 25, seed).map_err(|e| format!("{g}: {e}"))?;
    check(v.passed, || format!("{g}: propagation failed at {:?}", v.offending))
}

/// `(1/(1−t))·∏_{i<a, j<b}(1 − t·ζ_a^i ζ_b^j)` expanded to `degree`, from
/// monodromy eigenvalues of the Brieskorn–Pham polynomial `z₁ᵃ + z₂ᵇ`.
pub fn brieskorn_series(a: u32, b: u32, degree: usize) -> Vec<f64> {
    let mut c = vec![Complex64::new(0.0, 0.0); degree + 1];
    c[0] = Complex64::new(1.0, 0.0);
    let tau = std::f64::consts::TAU;
    for i in 1..a {
        for j in 1..b {
            let root = Complex64::from_polar(1.0, tau * (i as f64 / a as f64 + j as f64 / b as f64));
            for k in (1..=degree).rev() {
                let prev = c[k - 1];
                c[k] -= root * prev;
            }
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    c.iter()
        .map(|x| {
            acc += x;
            acc.re
        })
        .collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `∏_j (z₁ − α_j z₂)` style linear factor `c₁·x₁ + c₂·x₂` with `x = z` or `z̄`.
pub fn linear(c1: Complex64, c2: Complex64, conj: bool) -> MixedPolynomial {
    let mk = |c, j: usize| {
        let mut e = [vec![0u32, 0], vec![0u32, 0]];
        e[usize::from(conj)][j] = 1;
        let [nu, mu] = e;
        MixedMonomial {
            coeff: c,
            exps: ExponentPair::new(nu, mu).unwrap(),
        }
    };
    MixedPolynomial::new(2, vec![mk(c1, 0), mk(c2, 1)]).unwrap()
}

/// `f_s = h_{r−s} · ∏_{j≤p}(z₁ − α_j z₂) · ∏_{k≤s}(z₁ − β_k z₂)(z̄₁ − γ̄_k z̄₂)`
/// with `h_m = |z₁|^{2m} + |z₂|^{2m}` and weight `(1, 1)`.
pub fn examples2_polynomial(p: usize, s: usize, r: usize) -> MixedPolynomial {
    let one = Complex64::new(1.0, 0.0);
    let alphas = [
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 2.0),
    ];
    let betas = [Complex64::new(1.0, 1.0), Complex64::new(-2.0, 1.0)];
    let gammas = [Complex64::new(2.0, -1.0), Complex64::new(-1.0, -1.0)];
    let m = (r - s) as u32;
    let mut f = if m == 0 {
        MixedPolynomial::parse("2", Some(2)).unwrap()
    } else {
        MixedPolynomial::new(
            2,
            vec![
                MixedMonomial {
                    coeff: one,
                    exps: ExponentPair::new(vec![m, 0], vec![m, 0]).unwrap(),
                },
                MixedMonomial {
                    coeff: one,
                    exps: ExponentPair::new(vec![0, m], vec![0, m]).unwrap(),
                },
            ],
        )
        .unwrap()
    };
    for a in alphas.iter().take(p) {
        f = f.mul(&linear(one, -a, false)).unwrap();
    }
    for k in 0..s {
        f = f.mul(&linear(one, -betas[k], false)).unwrap();
        f = f.mul(&linear(one, -gammas[k].conj(), true)).unwrap();
    }
    f
}

//! Mixed polynomials `f(z, z̄) = Σ c · z^ν z̄^μ` with double-precision complex
//! coefficients and exact exponents.
//!
//! Coefficients only matter for evaluation and the numeric spot checks; every
//! combinatorial invariant downstream reads exponents alone.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{self, Point};

/// Variable count cap. Every algorithm in the crate is exponential in `n`.
pub const MAX_VARS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentPair {
    pub nu: Vec<u32>,
    pub mu: Vec<u32>,
}

impl ExponentPair {
    pub fn new(nu: Vec<u32>, mu: Vec<u32>) -> Result<Self> {
        if nu.len() != mu.len() {
            return Err(Error::DimensionMismatch {
                expected: nu.len(),
                got: mu.len(),
            });
        }
        Ok(Self { nu, mu })
    }

    pub fn n(&self) -> usize {
        self.nu.len()
    }

    /// The support point `ν + μ`.
    pub fn support(&self) -> Point {
        self.nu
            .iter()
            .zip(&self.mu)
            .map(|(&a, &b)| i64::from(a) + i64::from(b))
            .collect()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.mu.iter().all(|&m| m == 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedMonomial {
    pub coeff: Complex64,
    pub exps: ExponentPair,
}

impl MixedMonomial {
    /// Radial degree `Σ p_i (ν_i + μ_i)`.
    pub fn rdeg(&self, p: &WeightVector) -> i64 {
        lattice::dot(p.as_slice(), &self.exps.support())
    }

    /// Polar degree `Σ p_i (ν_i - μ_i)`.
    pub fn pdeg(&self, p: &WeightVector) -> i64 {
        self.exps
            .nu
            .iter()
            .zip(&self.exps.mu)
            .zip(p.as_slice())
            .map(|((&a, &b), &w)| w * (i64::from(a) - i64::from(b)))
            .sum()
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = self.coeff;
        for (j, zj) in z.iter().enumerate() {
            let (a, b) = (self.exps.nu[j], self.exps.mu[j]);
            if a > 0 {
                acc *= zj.powu(a);
            }
            if b > 0 {
                acc *= zj.conj().powu(b);
            }
        }
        acc
    }
}

/// A 0-based, sorted, nonempty set of variable indices. Displays 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(Vec<usize>);

impl Subset {
    /// From 0-based indices; sorts and rejects duplicates or emptiness.
    pub fn new(mut idx: Vec<usize>) -> Result<Self> {
        idx.sort_unstable();
        let dup = idx.windows(2).any(|w| w[0] == w[1]);
        if idx.is_empty() || dup {
            return Err(Error::InvalidSubset(idx));
        }
        Ok(Self(idx))
    }

    /// From 1-based indices as written by users.
    pub fn from_one_based(idx: &[usize]) -> Result<Self> {
        if idx.contains(&0) {
            return Err(Error::InvalidSubset(idx.to_vec()));
        }
        Self::new(idx.iter().map(|i| i - 1).collect())
    }

    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// All nonempty subsets of `0..n`, ordered by size, then lexicographically.
    pub fn all_nonempty(n: usize) -> Vec<Subset> {
        (1..=n)
            .flat_map(|k| lattice::combinations(n, k))
            .map(Subset)
            .collect()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    /// Report key, e.g. `I=[1,2]`.
    pub fn key(&self) -> String {
        format!("I={self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Subset::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

/// A non-negative, nonzero integer weight vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() || entries.iter().any(|&x| x < 0) || entries.iter().all(|&x| x == 0)
        {
            return Err(Error::InvalidWeight(entries));
        }
        Ok(Self(entries))
    }

    /// The elementary vector `E_j` in dimension `n`.
    pub fn elementary(n: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[j] = 1;
        Self(v)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_primitive(&self) -> bool {
        lattice::is_primitive(&self.0)
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }

    pub fn primitive(&self) -> Self {
        Self(lattice::primitive(&self.0))
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    /// Restriction `P^I` to the coordinates in `subset`.
    pub fn restrict(&self, subset: &Subset) -> Result<Self> {
        Self::new(subset.indices().iter().map(|&j| self.0[j]).collect())
    }

    pub fn dot(&self, point: &[i64]) -> i64 {
        lattice::dot(&self.0, point)
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        WeightVector::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A nonzero mixed polynomial in `n` variables. Terms are merged and kept in
/// descending lexicographic order of `(ν, μ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedPolynomial {
    n: usize,
    terms: Vec<MixedMonomial>,
}

impl MixedPolynomial {
    /// Builds the canonical form: merges equal exponent pairs and drops exact
    /// zeros. An empty result is an error.
    pub fn new(n: usize, terms: Vec<MixedMonomial>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        if n > MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        let mut merged: BTreeMap<ExponentPair, Complex64> = BTreeMap::new();
        for t in terms {
            if t.exps.n() != n || t.exps.mu.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: t.exps.n(),
                });
            }
            *merged.entry(t.exps).or_insert(Complex64::new(0.0, 0.0)) += t.coeff;
        }
        let terms: Vec<MixedMonomial> = merged
            .into_iter()
            .rev()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(exps, coeff)| MixedMonomial { coeff, exps })
            .collect();
        if terms.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(Self { n, terms })
    }

    /// Parses the polynomial grammar; `n` defaults to the largest index used.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        crate::parse::parse(text, n)
    }

    /// Convenience constructor from `(coeff, ν, μ)` triples with real coefficients.
    pub fn from_real_terms(n: usize, terms: &[(f64, Vec<u32>, Vec<u32>)]) -> Result<Self> {
        let terms = terms
            .iter()
            .map(|(c, nu, mu)| {
                Ok(MixedMonomial {
                    coeff: Complex64::new(*c, 0.0),
                    exps: ExponentPair::new(nu.clone(), mu.clone())?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[MixedMonomial] {
        &self.terms
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.iter().all(|t| t.exps.is_holomorphic())
    }

    /// Restriction `f^I` to the coordinate subspace `C^I`, re-indexed by the
    /// variables of `I`. `None` means no term survives.
    pub fn restrict(&self, subset: &Subset) -> Option<Self> {
        let idx = subset.indices();
        if idx.last().is_some_and(|&j| j >= self.n) {
            return None;
        }
        let terms: Vec<MixedMonomial> = self
            .terms
            .iter()
            .filter(|t| {
                (0..self.n)
                    .filter(|j| !subset.contains(*j))
                    .all(|j| t.exps.nu[j] == 0 && t.exps.mu[j] == 0)
            })
            .map(|t| MixedMonomial {
                coeff: t.coeff,
                exps: ExponentPair {
                    nu: idx.iter().map(|&j| t.exps.nu[j]).collect(),
                    mu: idx.iter().map(|&j| t.exps.mu[j]).collect(),
                },
            })
            .collect();
        Self::new(subset.len(), terms).ok()
    }

    /// True iff every axis carries a pure term.
    pub fn is_convenient(&self) -> bool {
        self.first_inconvenient_axis().is_none()
    }

    /// 0-based index of the first axis without a pure term.
    pub fn first_inconvenient_axis(&self) -> Option<usize> {
        (0..self.n).find(|&j| {
            !self.terms.iter().any(|t| {
                (0..self.n).all(|i| i == j || (t.exps.nu[i] == 0 && t.exps.mu[i] == 0))
                    && t.exps.nu[j] + t.exps.mu[j] > 0
            })
        })
    }

    pub fn ensure_convenient(&self) -> Result<()> {
        match self.first_inconvenient_axis() {
            Some(axis) => Err(Error::NotConvenient { axis: axis + 1 }),
            None => Ok(()),
        }
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|t| t.evaluate(z)).sum()
    }

    /// Value together with the Wirtinger derivatives `∂f/∂z_j` and `∂f/∂z̄_j`.
    pub fn evaluate_with_wirtinger(
        &self,
        z: &[Complex64],
    ) -> (Complex64, Vec<Complex64>, Vec<Complex64>) {
        let zero = Complex64::new(0.0, 0.0);
        let mut value = zero;
        let mut dz = vec![zero; self.n];
        let mut dzbar = vec![zero; self.n];
        for t in &self.terms {
            value += t.evaluate(z);
            for j in 0..self.n {
                let (a, b) = (t.exps.nu[j], t.exps.mu[j]);
                if a > 0 {
                    let mut e = t.exps.clone();
                    e.nu[j] -= 1;
                    let m = MixedMonomial {
                        coeff: t.coeff * f64::from(a),
                        exps: e,
                    };
                    dz[j] += m.evaluate(z);
                }
                if b > 0 {
                    let mut e = t.exps.clone();
                    e.mu[j] -= 1;
                    let m = MixedMonomial {
                        coeff: t.coeff * f64::from(b),
                        exps: e,
                    };
                    dzbar[j] += m.evaluate(z);
                }
            }
        }
        (value, dz, dzbar)
    }

    /// `conj(f)`: swaps `ν ↔ μ` and conjugates coefficients.
    pub fn conj(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| MixedMonomial {
                coeff: t.coeff.conj(),
                exps: ExponentPair {
                    nu: t.exps.mu.clone(),
                    mu: t.exps.nu.clone(),
                },
            })
            .collect();
        Self::new(self.n, terms).expect("conjugation preserves nonzero terms")
    }

    /// Renames variable `j` to `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut nu = vec![0; self.n];
                let mut mu = vec![0; self.n];
                for (j, &pj) in perm.iter().enumerate() {
                    nu[pj] = t.exps.nu[j];
                    mu[pj] = t.exps.mu[j];
                }
                MixedMonomial {
                    coeff: t.coeff,
                    exps: ExponentPair { nu, mu },
                }
            })
            .collect();
        Self::new(self.n, terms)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        Self::new(self.n, terms)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(MixedMonomial {
                    coeff: a.coeff * b.coeff,
                    exps: ExponentPair {
                        nu: a.exps.nu.iter().zip(&b.exps.nu).map(|(x, y)| x + y).collect(),
                        mu: a.exps.mu.iter().zip(&b.exps.mu).map(|(x, y)| x + y).collect(),
                    },
                });
            }
        }
        Self::new(self.n, terms)
    }

    /// Keeps the terms at the given indices.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let terms = indices.iter().map(|&i| self.terms[i].clone()).collect();
        Self::new(self.n, terms)
    }
}

impl FromStr for MixedPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, None)
    }
}

impl fmt::Display for MixedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::parse::write_canonical(self, f)
    }
}

impl Serialize for MixedPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MixedPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
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

    #[test]
    fn restrict_examples() {
        let f = poly("z1^3*zbar1 + z2^3*zbar2 + z2^5");
        let r = f.restrict(&Subset::new(vec![1]).unwrap()).unwrap();
        assert_eq!(r, poly("z1^3*zbar1 + z1^5"));
        assert_eq!(r.n(), 1);

        let g = poly("z1 + z2");
        assert_eq!(g.restrict(&Subset::new(vec![0]).unwrap()).unwrap(), poly("z1"));

        let h = poly("z1*z2");
        assert!(h.restrict(&Subset::new(vec![0]).unwrap()).is_none());
    }

    #[test]
    fn restrict_is_transitive() {
        let f = poly("z1^2*z2 + z1^4 + z2^3*zbar3 + z3^2 + z1*z3");
        let i = Subset::new(vec![0, 2]).unwrap();
        let fi = f.restrict(&i).unwrap();
        // J = {1} inside I = {1,3}; in I-coordinates that is index 0.
        let direct = f.restrict(&Subset::new(vec![0]).unwrap()).unwrap();
        let nested = fi.restrict(&Subset::new(vec![0]).unwrap()).unwrap();
        assert_eq!(direct, nested);
    }

    #[test]
    fn degrees() {
        let f = poly("z1^3*zbar1 + z2^5");
        let t = &f.terms()[0];
        assert_eq!(t.exps.nu, vec![3, 0]);
        assert_eq!((t.rdeg(&w(&[1, 1])), t.pdeg(&w(&[1, 1]))), (4, 2));
        let t = &f.terms()[1];
        assert_eq!((t.rdeg(&w(&[1, 1])), t.pdeg(&w(&[1, 1]))), (5, 5));
        let g = poly("z1*zbar1");
        assert_eq!(g.terms()[0].rdeg(&w(&[3, 2])), 6);
        assert_eq!(g.terms()[0].pdeg(&w(&[3, 2])), 0);
    }

    #[test]
    fn evaluate_examples() {
        let c = Complex64::new;
        assert!((poly("z1*zbar1").evaluate(&[c(3.0, 4.0)]) - c(25.0, 0.0)).norm() < 1e-12);
        assert!(poly("z1 + z2").evaluate(&[c(1.0, 0.0), c(-1.0, 0.0)]).norm() < 1e-12);
        assert!((poly("z1^3*zbar1").evaluate(&[c(0.0, 1.0)]) - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn convenience() {
        assert!(poly("z1^3*zbar1 + z2^3*zbar2 + z2^5").is_convenient());
        assert!(!poly("z1*z2").is_convenient());
        assert!(poly("z1 + z2^3").is_convenient());
        assert!(matches!(
            poly("z1^2 + z1*z2").ensure_convenient(),
            Err(Error::NotConvenient { axis: 2 })
        ));
    }

    #[test]
    fn conjugation_identity() {
        let f = poly("(1,2)*z1^2*zbar2 + 3*z2^3 + (0,-1)*zbar1");
        let z = [Complex64::new(0.3, -1.1), Complex64::new(-0.7, 0.4)];
        let lhs = f.conj().evaluate(&z);
        let rhs = f.evaluate(&z).conj();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn wirtinger_matches_finite_differences() {
        let f = poly("(1,2)*z1^2*zbar2 + 3*z2^3*zbar2 + (0,-1)*zbar1*z1");
        let z = vec![Complex64::new(0.3, -1.1), Complex64::new(-0.7, 0.4)];
        let (_, dz, dzb) = f.evaluate_with_wirtinger(&z);
        let h = 1e-6;
        for j in 0..2 {
            let mut zp = z.clone();
            let mut zm = z.clone();
            zp[j] += h;
            zm[j] -= h;
            let dx = (f.evaluate(&zp) - f.evaluate(&zm)) / (2.0 * h);
            let mut zp = z.clone();
            let mut zm = z.clone();
            zp[j] += Complex64::new(0.0, h);
            zm[j] -= Complex64::new(0.0, h);
            let dy = (f.evaluate(&zp) - f.evaluate(&zm)) / (2.0 * h);
            // ∂/∂x = ∂ + ∂̄, ∂/∂y = i(∂ - ∂̄)
            assert!((dx - (dz[j] + dzb[j])).norm() < 1e-6);
            assert!((dy - Complex64::new(0.0, 1.0) * (dz[j] - dzb[j])).norm() < 1e-6);
        }
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![0, 0]).is_err());
        assert!(WeightVector::new(vec![1, -1]).is_err());
        assert!(w(&[2, 4]).primitive() == w(&[1, 2]));
        assert!(!w(&[2, 4]).is_primitive());
    }

    #[test]
    fn too_many_variables() {
        let r = MixedPolynomial::parse("z17", None);
        assert!(matches!(r, Err(Error::TooManyVariables(17))));
    }
}

//! The mixed covering `φ_{a,b}(w) = (w₁ᵃw̄₁ᵇ, …, wₙᵃw̄ₙᵇ)` and what it does to
//! polynomials, degrees, `χ` and zeta contributions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixedpoly::{ExponentPair, MixedMonomial, MixedPolynomial};
use crate::zeta::ZetaContribution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoveringMap {
    pub a: u32,
    pub b: u32,
}

impl CoveringMap {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 || a <= b {
            return Err(Error::InvalidCovering { a, b });
        }
        Ok(Self { a, b })
    }

    pub fn identity() -> Self {
        Self { a: 1, b: 0 }
    }

    /// `a − b`, the polar scaling and the per-variable torus degree.
    pub fn polar_factor(&self) -> i64 {
        i64::from(self.a) - i64::from(self.b)
    }

    /// `a + b`, the radial scaling.
    pub fn radial_factor(&self) -> i64 {
        i64::from(self.a) + i64::from(self.b)
    }

    fn map_exps(&self, e: &ExponentPair) -> Result<ExponentPair> {
        let lin = |x: u32, y: u32| -> Result<u32> {
            let v = u64::from(self.a) * u64::from(x) + u64::from(self.b) * u64::from(y);
            u32::try_from(v).map_err(|_| Error::Overflow("covering exponent"))
        };
        let nu = e.nu.iter().zip(&e.mu).map(|(&n, &m)| lin(n, m)).collect::<Result<_>>()?;
        let mu = e.nu.iter().zip(&e.mu).map(|(&n, &m)| lin(m, n)).collect::<Result<_>>()?;
        Ok(ExponentPair { nu, mu })
    }

    /// Inverts the exponent map on one pair, if it lies in the image.
    fn unmap_exps(&self, e: &ExponentPair) -> Option<ExponentPair> {
        let (a, b) = (i64::from(self.a), i64::from(self.b));
        let den = a * a - b * b;
        let mut nu = Vec::with_capacity(e.n());
        let mut mu = Vec::with_capacity(e.n());
        for (&big_n, &big_m) in e.nu.iter().zip(&e.mu) {
            let (big_n, big_m) = (i64::from(big_n), i64::from(big_m));
            let x = a * big_n - b * big_m;
            let y = a * big_m - b * big_n;
            if x < 0 || y < 0 || x % den != 0 || y % den != 0 {
                return None;
            }
            nu.push(u32::try_from(x / den).ok()?);
            mu.push(u32::try_from(y / den).ok()?);
        }
        Some(ExponentPair { nu, mu })
    }

    /// `f ∘ φ`: exponents `(ν, μ) ↦ (aν + bμ, aμ + bν)`, coefficients kept.
    pub fn pullback(&self, f: &MixedPolynomial) -> Result<MixedPolynomial> {
        let terms = f
            .terms()
            .iter()
            .map(|t| {
                Ok(MixedMonomial {
                    coeff: t.coeff,
                    exps: self.map_exps(&t.exps)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        MixedPolynomial::new(f.n(), terms)
    }

    /// The polynomial whose pullback is `g`, or `None` when some term of `g`
    /// is not in the image of the exponent map.
    pub fn pushforward(&self, g: &MixedPolynomial) -> Option<MixedPolynomial> {
        let terms = g
            .terms()
            .iter()
            .map(|t| {
                Some(MixedMonomial {
                    coeff: t.coeff,
                    exps: self.unmap_exps(&t.exps)?,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        MixedPolynomial::new(g.n(), terms).ok()
    }

    /// `(rdeg, pdeg) ↦ ((a + b)·rdeg, (a − b)·pdeg)`.
    pub fn degree_transform(&self, rdeg: i64, pdeg: i64) -> (i64, i64) {
        (self.radial_factor() * rdeg, self.polar_factor() * pdeg)
    }

    /// Per record: `period ↦ (a − b)·period`, `χ ↦ (a − b)^{|I|}·χ`.
    pub fn zeta_transform(&self, contribs: &[ZetaContribution]) -> Result<Vec<ZetaContribution>> {
        let k = self.polar_factor();
        contribs
            .iter()
            .map(|c| {
                let scale = k
                    .checked_pow(c.subset.len() as u32)
                    .ok_or(Error::Overflow("covering degree"))?;
                Ok(ZetaContribution {
                    subset: c.subset.clone(),
                    weight: c.weight.clone(),
                    period: c.period.checked_mul(k).ok_or(Error::Overflow("period"))?,
                    chi: c.chi.checked_mul(scale).ok_or(Error::Overflow("chi"))?,
                })
            })
            .collect()
    }
}

impl fmt::Display for CoveringMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "φ_{{{},{}}}", self.a, self.b)
    }
}

/// Convenience for [`CoveringMap::pullback`].
pub fn pullback(f: &MixedPolynomial, cov: &CoveringMap) -> Result<MixedPolynomial> {
    cov.pullback(f)
}

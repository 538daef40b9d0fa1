//! Factored zeta functions `∏ (1 − t^m)^{e_m}` assembled from per-`(I, P)`
//! contributions `(1 − t^period)^{−χ/period}`, together with `χ(F)` and the
//! Milnor number.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chi::{chi_for, ChiRecord, ChiStrategy};
use crate::error::{Error, Result};
use crate::faces::{face_function, require_sppwh};
use crate::mixedpoly::{MixedPolynomial, Subset, WeightVector};
use crate::newton::restricted_boundaries;

/// One factor's worth of data: `(1 − t^period)^{−chi/period}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaContribution {
    #[serde(rename = "I")]
    pub subset: Subset,
    #[serde(rename = "P")]
    pub weight: WeightVector,
    pub period: i64,
    pub chi: i64,
}

/// `∏ (1 − t^m)^{e_m}` with no zero exponents stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactoredZeta(BTreeMap<u64, i64>);

#[derive(Serialize, Deserialize)]
struct FactorEntry {
    m: u64,
    e: i64,
}

impl FactoredZeta {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds from `(m, e)` pairs, summing repeated `m` and dropping zeros.
    pub fn from_factors(factors: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut z = Self::default();
        for (m, e) in factors {
            z.multiply_factor(m, e);
        }
        z
    }

    fn multiply_factor(&mut self, m: u64, e: i64) {
        let slot = self.0.entry(m).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.0.remove(&m);
        }
    }

    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.0
    }

    pub fn exponent(&self, m: u64) -> i64 {
        self.0.get(&m).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut z = self.clone();
        for (&m, &e) in &other.0 {
            z.multiply_factor(m, e);
        }
        z
    }

    /// Degree of the rational function `Σ m·e_m`.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(&m, &e)| m as i64 * e).sum()
    }

    /// Exact power series coefficients of `t⁰ … t^degree`.
    pub fn expand_exact(&self, degree: usize) -> Result<Vec<i128>> {
        let mut c = vec![0i128; degree + 1];
        c[0] = 1;
        for (&m, &e) in &self.0 {
            let m = m as usize;
            if m > degree {
                continue;
            }
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    for i in (m..=degree).rev() {
                        c[i] = c[i].checked_sub(c[i - m]).ok_or(Error::Overflow("series"))?;
                    }
                } else {
                    for i in m..=degree {
                        c[i] = c[i].checked_add(c[i - m]).ok_or(Error::Overflow("series"))?;
                    }
                }
            }
        }
        Ok(c)
    }

    /// Power series coefficients as floats, for numeric oracle comparisons.
    pub fn expand(&self, degree: usize) -> Result<Vec<f64>> {
        Ok(self.expand_exact(degree)?.into_iter().map(|x| x as f64).collect())
    }
}

impl fmt::Display for FactoredZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (&m, &e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if m == 1 {
                write!(f, "(1-t)^{e}")?;
            } else {
                write!(f, "(1-t^{m})^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FactoredZeta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: format!("{msg} in zeta string {s:?}"),
        };
        let mut z = Self::one();
        for part in s.split('*') {
            let part = part.trim();
            let rest = part.strip_prefix("(1-t").ok_or_else(|| bad("expected '(1-t'"))?;
            let (m_text, rest) = rest.split_once(')').ok_or_else(|| bad("expected ')'"))?;
            let m = match m_text.strip_prefix('^') {
                Some(t) => t.parse::<u64>().map_err(|_| bad("bad period"))?,
                None if m_text.is_empty() => 1,
                None => return Err(bad("bad period")),
            };
            if m == 0 {
                return Err(bad("period 0"));
            }
            let e = match rest.strip_prefix('^') {
                Some(t) => t.parse::<i64>().map_err(|_| bad("bad exponent"))?,
                None if rest.is_empty() => 1,
                None => return Err(bad("trailing text")),
            };
            z.multiply_factor(m, e);
        }
        Ok(z)
    }
}

impl Serialize for FactoredZeta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<FactorEntry> = self.0.iter().map(|(&m, &e)| FactorEntry { m, e }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FactoredZeta {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<FactorEntry>::deserialize(d)?;
        if v.iter().any(|f| f.m == 0) {
            return Err(serde::de::Error::custom("period 0"));
        }
        Ok(Self::from_factors(v.into_iter().map(|f| (f.m, f.e))))
    }
}

/// Aggregates contributions; each needs `period | chi`.
pub fn zeta_from_contributions(contribs: &[ZetaContribution]) -> Result<FactoredZeta> {
    let mut z = FactoredZeta::one();
    for c in contribs {
        if c.period <= 0 || c.chi % c.period != 0 {
            return Err(Error::NonDivisible {
                subset: c.subset.to_string(),
                normal: c.weight.as_slice().to_vec(),
                period: c.period,
                chi: c.chi,
            });
        }
        z.multiply_factor(c.period as u64, -c.chi / c.period);
    }
    Ok(z)
}

/// `χ(F) = Σ χ(P)` over all contributions.
pub fn chi_fiber(contribs: &[ZetaContribution]) -> i64 {
    contribs.iter().map(|c| c.chi).sum()
}

/// `μ = (−1)^{n−1}(χ(F) − 1)`.
pub fn milnor_number(chi_fiber: i64, n: usize) -> i64 {
    let sign = if n % 2 == 1 { 1 } else { -1 };
    sign * (chi_fiber - 1)
}

/// Zeta of `{Π u_j^{(r_j+p_j)/2} ū_j^{(r_j−p_j)/2} = 1}`-type normal slices:
/// `(1 − t^{|r₁−p₁|})` for one factor, `1` for two or more.
pub fn normal_slice_zeta(q: &[(i64, i64)]) -> Result<FactoredZeta> {
    if let Some(&(r, _)) = q.iter().find(|(r, p)| r == p) {
        return Err(Error::InvalidSlice(r));
    }
    match q {
        [] => Err(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        }),
        [(r, p)] => Ok(FactoredZeta::from_factors([((r - p).unsigned_abs(), 1)])),
        _ => Ok(FactoredZeta::one()),
    }
}

/// The factor period of `(I, P)`: `d(P, f^I)` on holomorphic faces, the
/// common polar degree of the face function otherwise.
pub fn period_for(fi: &MixedPolynomial, p: &WeightVector) -> Result<i64> {
    let face = face_function(fi, p);
    if face.base.is_holomorphic() {
        return Ok(face.d_radial);
    }
    face.class
        .positive_polar_degree()
        .ok_or_else(|| Error::NotFaceType {
            normal: p.as_slice().to_vec(),
            reason: format!("face function is {}", face.class.label()),
        })
}

/// The contribution of one `(I, P)` and the `χ` record behind it.
pub fn contribution(
    f: &MixedPolynomial,
    subset: &Subset,
    p: &WeightVector,
    strategy: &ChiStrategy,
) -> Result<(ZetaContribution, ChiRecord)> {
    let fi = f
        .restrict(subset)
        .ok_or_else(|| Error::StrategyInapplicable(format!("restriction to I={subset} is empty")))?;
    let period = period_for(&fi, p)?;
    let record = chi_for(f, subset, p, strategy)?;
    let contrib = ZetaContribution {
        subset: subset.clone(),
        weight: p.clone(),
        period,
        chi: record.chi,
    };
    Ok((contrib, record))
}

/// Every `(I, P ∈ S_I)` in `(|I|, I, P)` order.
pub fn indexed_normals(f: &MixedPolynomial) -> Result<Vec<(Subset, WeightVector)>> {
    Ok(restricted_boundaries(f)?
        .into_iter()
        .flat_map(|r| {
            let subset = r.subset;
            r.boundary
                .facets
                .into_iter()
                .map(move |fc| (subset.clone(), fc.normal))
        })
        .collect())
}

fn all_contributions(
    f: &MixedPolynomial,
    strategy: &ChiStrategy,
) -> Result<Vec<(ZetaContribution, ChiRecord)>> {
    indexed_normals(f)?
        .iter()
        .map(|(s, p)| contribution(f, s, p, strategy))
        .collect()
}

/// Contributions of a convenient holomorphic polynomial.
pub fn contributions_holomorphic(f: &MixedPolynomial) -> Result<Vec<ZetaContribution>> {
    if !f.is_holomorphic() {
        return Err(Error::StrategyInapplicable(
            "polynomial is not holomorphic".into(),
        ));
    }
    Ok(all_contributions(f, &ChiStrategy::HolomorphicVolume)?
        .into_iter()
        .map(|(c, _)| c)
        .collect())
}

/// Contributions of a convenient mixed polynomial of SPPWH face type.
pub fn contributions_mixed(
    f: &MixedPolynomial,
    strategy: &ChiStrategy,
) -> Result<Vec<(ZetaContribution, ChiRecord)>> {
    f.ensure_convenient()?;
    require_sppwh(f)?;
    all_contributions(f, strategy)
}

pub fn zeta_holomorphic(f: &MixedPolynomial) -> Result<FactoredZeta> {
    zeta_from_contributions(&contributions_holomorphic(f)?)
}

pub fn zeta_mixed(f: &MixedPolynomial, strategy: &ChiStrategy) -> Result<FactoredZeta> {
    let contribs: Vec<ZetaContribution> = contributions_mixed(f, strategy)?
        .into_iter()
        .map(|(c, _)| c)
        .collect();
    zeta_from_contributions(&contribs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> MixedPolynomial {
        s.parse().unwrap()
    }

    fn rec(idx: Vec<usize>, p: Vec<i64>, period: i64, chi: i64) -> ZetaContribution {
        ZetaContribution {
            subset: Subset::new(idx).unwrap(),
            weight: WeightVector::new(p).unwrap(),
            period,
            chi,
        }
    }

    #[test]
    fn trefoil_from_contributions() {
        let c = vec![
            rec(vec![0, 1], vec![3, 2], 6, -6),
            rec(vec![0], vec![1], 2, 2),
            rec(vec![1], vec![1], 3, 3),
        ];
        let z = zeta_from_contributions(&c).unwrap();
        assert_eq!(z.to_string(), "(1-t^2)^-1*(1-t^3)^-1*(1-t^6)^1");
        assert_eq!(chi_fiber(&c), -1);
        assert_eq!(milnor_number(chi_fiber(&c), 2), 2);
    }

    #[test]
    fn non_divisible_is_an_error() {
        let c = vec![rec(vec![0], vec![1], 2, 3)];
        assert!(matches!(zeta_from_contributions(&c), Err(Error::NonDivisible { period: 2, chi: 3, .. })));
    }

    #[test]
    fn holomorphic_examples() {
        assert_eq!(zeta_holomorphic(&poly("z1^2 + z2^2")).unwrap(), FactoredZeta::one());
        assert_eq!(zeta_holomorphic(&poly("z1^4 + z2^4")).unwrap().to_string(), "(1-t^4)^2");
        let c = contributions_holomorphic(&poly("z1^4 + z2^4")).unwrap();
        assert_eq!(chi_fiber(&c), -8);
        assert_eq!(milnor_number(-8, 2), 9);
    }

    #[test]
    fn paper_mixed_example_with_covering() {
        let f = poly("z1^3*zbar1 + z2^3*zbar2 + z2^5");
        let z = zeta_mixed(&f, &ChiStrategy::CoveringPullback { a: 3, b: 1 }).unwrap();
        assert!(z.is_one());
        let c = contributions_mixed(&f, &ChiStrategy::CoveringPullback { a: 3, b: 1 }).unwrap();
        let pairs: Vec<(i64, i64)> = c.iter().map(|(c, _)| (c.period, c.chi)).collect();
        assert_eq!(pairs, vec![(2, 2), (2, 2), (2, -4)]);
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["1", "(1-t)^1", "(1-t^2)^3*(1-t^6)^-1"] {
            let z: FactoredZeta = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
        }
        assert_eq!("(1-t^4)".parse::<FactoredZeta>().unwrap().exponent(4), 1);
        assert!("(1-t^0)^1".parse::<FactoredZeta>().is_err());
        assert!("1-t".parse::<FactoredZeta>().is_err());
        let z: FactoredZeta = "(1-t^2)^3*(1-t^6)^-1".parse().unwrap();
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, r#"[{"m":2,"e":3},{"m":6,"e":-1}]"#);
        assert_eq!(serde_json::from_str::<FactoredZeta>(&json).unwrap(), z);
    }

    #[test]
    fn series_expansion() {
        let z: FactoredZeta = "(1-t)^-1".parse().unwrap();
        assert_eq!(z.expand_exact(4).unwrap(), vec![1, 1, 1, 1, 1]);
        let z: FactoredZeta = "(1-t^2)^-1*(1-t^3)^-1*(1-t^6)^1".parse().unwrap();
        // (1 - t + t²)/(1 - t) = 1 + t² + t³ + ...
        assert_eq!(z.expand_exact(5).unwrap(), vec![1, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn normal_slices() {
        assert_eq!(normal_slice_zeta(&[(3, 1)]).unwrap().to_string(), "(1-t^2)^1");
        assert!(normal_slice_zeta(&[(2, 0), (3, 0)]).unwrap().is_one());
        assert!(matches!(normal_slice_zeta(&[(1, 1)]), Err(Error::InvalidSlice(1))));
    }
}

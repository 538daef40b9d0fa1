//! One-call analysis of a polynomial and its JSON report.
//!
//! Combinatorial sections are always filled in. The `χ` table and the zeta
//! section degrade gracefully: a missing `χ` leaves its row with an error and
//! the zeta section empty, with the reason recorded in `warnings`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::chi::{ChiStrategy, Provenance};
use crate::error::Result;
use crate::faces::{is_sppwh_face_type, nondegeneracy_spot_check, face_function, Homogeneity, NondegeneracyVerdict};
use crate::lattice::Point;
use crate::mixedpoly::{MixedPolynomial, Subset, WeightVector};
use crate::newton::{s_sets, NewtonBoundary};
use crate::toricfan::{divisor_configuration, s_prime_bijection, subdivide, DivisorGraph, Fan};
use crate::zeta::{chi_fiber, contribution, indexed_normals, milnor_number, zeta_from_contributions, FactoredZeta};

pub const SCHEMA: &str = "milnor-zeta/1";

/// Default `σ_min` threshold of the non-degeneracy spot check.
pub const DEFAULT_NONDEG_TOL: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    pub chi_strategy: ChiStrategy,
    pub subdivide: bool,
    pub nondeg_samples: usize,
    pub nondeg_tol: f64,
    pub seed: u64,
    /// Degree of the power series attached to the zeta section, if any.
    pub expand: Option<usize>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            chi_strategy: ChiStrategy::HolomorphicVolume,
            subdivide: false,
            nondeg_samples: 1000,
            nondeg_tol: DEFAULT_NONDEG_TOL,
            seed: 0,
            expand: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacetRow {
    pub normal: WeightVector,
    pub d: i64,
    pub vertices: Vec<Point>,
    pub rdeg: i64,
    pub homogeneity: Homogeneity,
    pub nondegeneracy: NondegeneracyVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiRow {
    #[serde(rename = "I")]
    pub subset: Subset,
    #[serde(rename = "P")]
    pub weight: WeightVector,
    pub period: Option<i64>,
    pub chi: Option<i64>,
    pub provenance: Option<Provenance>,
    pub heuristic: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaSection {
    pub factors: FactoredZeta,
    pub text: String,
    pub chi_fiber: i64,
    pub milnor_number: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<Vec<i128>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaStatus {
    Complete,
    /// Some `χ` could not be obtained with the chosen strategy.
    StrategyGap,
    /// The polynomial is neither holomorphic nor of SPPWH face type.
    NotApplicable,
    /// `χ` data was inconsistent with the periods.
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FanSection {
    pub fan: Fan,
    pub divisors: DivisorGraph,
    pub s_prime_verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub polynomial: String,
    pub n: usize,
    pub convenient: bool,
    pub holomorphic: bool,
    pub strategy: String,
    pub facets: Vec<FacetRow>,
    pub face_type: String,
    pub face_type_failure: Option<WeightVector>,
    #[serde(rename = "S")]
    pub s: BTreeMap<String, Vec<WeightVector>>,
    pub chi: Vec<ChiRow>,
    pub zeta_status: ZetaStatus,
    pub zeta: Option<ZetaSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanSection>,
    pub warnings: Vec<String>,
}

const SUPPLIED_WARNING: &str = "chi values were supplied externally and are unverified; \
the zeta uses the exponent -chi/period, and zeta functions quoted elsewhere may use the \
reciprocal convention (zeta <-> 1/zeta)";

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "f = {}", self.polynomial);
        let _ = writeln!(out, "n = {}, convenient, face type: {}", self.n, self.face_type);
        for fr in &self.facets {
            let _ = writeln!(
                out,
                "facet P={} d={} {} nondegeneracy={}",
                fr.normal,
                fr.d,
                fr.homogeneity.label(),
                fr.nondegeneracy.label()
            );
        }
        for (k, v) in &self.s {
            let list: Vec<String> = v.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "S[{k}] = {{{}}}", list.join(", "));
        }
        for row in &self.chi {
            match (row.period, row.chi) {
                (Some(p), Some(c)) => {
                    let _ = writeln!(out, "chi(I={}, P={}) = {c}, period {p}", row.subset, row.weight);
                }
                _ => {
                    let _ = writeln!(
                        out,
                        "chi(I={}, P={}) unavailable: {}",
                        row.subset,
                        row.weight,
                        row.error.as_deref().unwrap_or("unknown")
                    );
                }
            }
        }
        match &self.zeta {
            Some(z) => {
                let _ = writeln!(out, "zeta(t) = {}", z.text);
                let _ = writeln!(out, "chi(F) = {}, Milnor number = {}", z.chi_fiber, z.milnor_number);
            }
            None => {
                let _ = writeln!(out, "zeta(t) unavailable");
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

fn all_ones(p: &WeightVector) -> bool {
    p.as_slice().iter().all(|&x| x == 1)
}

/// Runs the whole pipeline. Only parse and convenience failures are errors.
pub fn analyze(f: &MixedPolynomial, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    f.ensure_convenient()?;
    let boundary = NewtonBoundary::of(f)?;
    let mut warnings = Vec::new();

    let facets: Vec<FacetRow> = boundary
        .facets
        .iter()
        .map(|fc| {
            let ff = face_function(f, &fc.normal);
            let nondegeneracy = nondegeneracy_spot_check(
                f,
                &fc.normal,
                opts.nondeg_samples,
                opts.seed,
                opts.nondeg_tol,
            );
            FacetRow {
                normal: fc.normal.clone(),
                d: fc.d,
                vertices: fc.vertices.clone(),
                rdeg: ff.d_radial,
                homogeneity: ff.class,
                nondegeneracy,
            }
        })
        .collect();
    for fr in &facets {
        if let NondegeneracyVerdict::CounterexampleAt { sigma_min, .. } = fr.nondegeneracy {
            warnings.push(format!(
                "face of P={} looks degenerate: critical zero found (sigma_min = {sigma_min:e})",
                fr.normal
            ));
        }
    }

    let verdict = is_sppwh_face_type(f)?;
    let holomorphic = f.is_holomorphic();
    let s = s_sets(f)?.into_iter().map(|(k, v)| (k.key(), v)).collect();

    let mut rows = Vec::new();
    let mut contribs = Vec::new();
    let mut supplied_used = false;
    for (subset, p) in indexed_normals(f)? {
        match contribution(f, &subset, &p, &opts.chi_strategy) {
            Ok((c, rec)) => {
                match rec.provenance {
                    Provenance::Supplied => supplied_used = true,
                    Provenance::CurveOrbitCount { .. } => {
                        warnings.push(format!(
                            "chi for I={subset}, P={p} is a numeric orbit count (heuristic)"
                        ));
                        if !all_ones(&p) {
                            warnings.push(format!(
                                "chi for I={subset}, P={p}: the orbit-count rule is unverified for weights other than (1,...,1)"
                            ));
                        }
                    }
                    _ => {}
                }
                rows.push(ChiRow {
                    subset: subset.clone(),
                    weight: p.clone(),
                    period: Some(c.period),
                    chi: Some(c.chi),
                    provenance: Some(rec.provenance),
                    heuristic: rec.heuristic,
                    error: None,
                });
                contribs.push(c);
            }
            Err(e) => rows.push(ChiRow {
                subset,
                weight: p,
                period: None,
                chi: None,
                provenance: None,
                heuristic: false,
                error: Some(e.to_string()),
            }),
        }
    }
    if supplied_used {
        warnings.push(SUPPLIED_WARNING.to_string());
    }

    let (zeta_status, zeta) = if !holomorphic && !verdict.holds {
        warnings.push("zeta omitted: the polynomial is not of strongly polar positive weighted homogeneous face type".into());
        (ZetaStatus::NotApplicable, None)
    } else if contribs.len() < rows.len() {
        let missing = rows.len() - contribs.len();
        warnings.push(format!("zeta omitted: chi unavailable for {missing} (I, P) pair(s)"));
        (ZetaStatus::StrategyGap, None)
    } else {
        match zeta_from_contributions(&contribs) {
            Ok(z) => {
                let chi_f = chi_fiber(&contribs);
                let series = opts.expand.map(|d| z.expand_exact(d)).transpose()?;
                (
                    ZetaStatus::Complete,
                    Some(ZetaSection {
                        text: z.to_string(),
                        factors: z,
                        chi_fiber: chi_f,
                        milnor_number: milnor_number(chi_f, f.n()),
                        series,
                    }),
                )
            }
            Err(e) => {
                warnings.push(format!("zeta omitted: {e}"));
                (ZetaStatus::Inconsistent, None)
            }
        }
    };

    let fan = if opts.subdivide {
        match subdivide(f) {
            Ok(fan) => {
                let divisors = divisor_configuration(&fan, f)?;
                let s_prime_verified = match s_prime_bijection(&fan, f) {
                    Ok(_) => true,
                    Err(e) => {
                        warnings.push(e.to_string());
                        false
                    }
                };
                Some(FanSection {
                    fan,
                    divisors,
                    s_prime_verified,
                })
            }
            Err(e) => {
                warnings.push(format!("subdivision skipped: {e}"));
                None
            }
        }
    } else {
        None
    };

    Ok(AnalysisReport {
        schema: SCHEMA.to_string(),
        polynomial: f.to_string(),
        n: f.n(),
        convenient: true,
        holomorphic,
        strategy: opts.chi_strategy.to_string(),
        facets,
        face_type: if verdict.holds { "SPPWH" } else { "fails" }.to_string(),
        face_type_failure: verdict.failing.map(|(p, _)| p),
        s,
        chi: rows,
        zeta_status,
        zeta,
        fan,
        warnings,
    })
}

//! Per-structure invariant reports, sampling of invariant symplectic forms
//! and the c/f/h-flexibility classification.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffective::{c_hat_oracle, chi_k_betti, coeffective_ladder};
use crate::derham::{DeRham, SymplecticContext};
use crate::error::{Error, Result};
use crate::exterior::ExteriorForm;
use crate::filtered::{filtered_ladder, filtered_les_oracle};
use crate::harmonic::{harmonic_numbers_delta_oracle, harmonic_profile};
use crate::lie::LieAlgebraSpec;
use crate::linalg::{kernel_basis, Scalar, Subspace};
use crate::notation::parse_form;
use crate::relations::verify_relations;
use crate::symplectic::{is_symplectic, SymplecticForm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffectiveNumbers {
    pub k: usize,
    /// `ĉ_{n−k+1}`.
    pub c_hat: usize,
    /// `c^{(k)}_q` for `n−k+2 ≤ q ≤ 2n`.
    pub c: BTreeMap<usize, usize>,
    /// `χ^{(k)}` from the coeffective numbers.
    pub chi: i64,
    /// `χ^{(k)}` from the Betti numbers.
    pub chi_betti: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilteredNumbers {
    pub k: usize,
    /// `č^{(k)}_q` for `0 ≤ q ≤ 2n+2k−1`.
    pub c_check: Vec<usize>,
    pub chi_plus: i64,
    pub chi_minus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzRanks {
    pub k: usize,
    /// `rank(L^k: H^{n−k} → H^{n+k})`.
    pub rank: usize,
    /// `dim L^k(H^{n−k}_hr)`.
    pub harmonic_rank: usize,
}

/// Values recomputed along independent routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleNumbers {
    /// `h_q` from `d`- and `δ`-closed invariant forms.
    pub harmonic_delta: Vec<usize>,
    /// `ĉ_{n−k+1}` from the connecting-map quotient, indexed by `k − 1`.
    pub c_hat: Vec<usize>,
    /// `č^{(k)}_q` from the long exact sequence, indexed by `k − 1`.
    pub filtered: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub omega: String,
    pub dim: usize,
    pub n: usize,
    pub unimodular: bool,
    pub omega_exact: bool,
    pub omega_class: Vec<Scalar>,
    pub betti: Vec<usize>,
    pub harmonic: Vec<usize>,
    pub coeffective: Vec<CoeffectiveNumbers>,
    pub filtered: Vec<FilteredNumbers>,
    pub lefschetz: Vec<LefschetzRanks>,
    /// `dim ker(L: H^q → H^{q+2})`.
    pub truncated: Vec<usize>,
    pub hlc: bool,
    pub oracles: OracleNumbers,
}

impl CohomologyReport {
    pub fn b(&self, q: isize) -> usize {
        usize::try_from(q).ok().and_then(|q| self.betti.get(q)).copied().unwrap_or(0)
    }

    pub fn h(&self, q: isize) -> usize {
        usize::try_from(q).ok().and_then(|q| self.harmonic.get(q)).copied().unwrap_or(0)
    }

    pub fn c_hat(&self, k: usize) -> usize {
        self.coeffective[k - 1].c_hat
    }

    pub fn c(&self, k: usize, q: usize) -> usize {
        self.coeffective[k - 1].c.get(&q).copied().unwrap_or(0)
    }

    pub fn c_check(&self, k: usize, q: usize) -> usize {
        self.filtered[k - 1].c_check.get(q).copied().unwrap_or(0)
    }

    /// `(h₃, h₄, h₅, ĉ₃, c^{(1)}₄, č^{(1)}₄, č^{(2)}₅)` for six-dimensional algebras.
    pub fn table_columns(&self) -> Option<[usize; 7]> {
        (self.dim == 6).then(|| {
            [
                self.harmonic[3],
                self.harmonic[4],
                self.harmonic[5],
                self.c_hat(1),
                self.c(1, 4),
                self.c_check(1, 4),
                self.c_check(2, 5),
            ]
        })
    }

    /// Every invariant that may vary with `ω`, keyed by name.
    pub fn invariants(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for (q, &h) in self.harmonic.iter().enumerate() {
            out.insert(format!("h_{q}"), h);
        }
        for c in &self.coeffective {
            out.insert(format!("c_hat_{}", self.n - c.k + 1), c.c_hat);
            for (&q, &v) in &c.c {
                out.insert(format!("c({})_{q}", c.k), v);
            }
        }
        for f in &self.filtered {
            for (q, &v) in f.c_check.iter().enumerate() {
                out.insert(format!("c_check({})_{q}", f.k), v);
            }
        }
        out
    }
}

/// Closed invariant 2-forms `ker(d: Λ² → Λ³)`; the symplectic structures form
/// an open subset of it.
pub fn closed_two_form_space(spec: &LieAlgebraSpec) -> Subspace {
    kernel_basis(spec.differential(2))
}

/// All invariants of `ω`, without checking the relations among them.
pub fn compute_report(ctx: &SymplecticContext) -> Result<CohomologyReport> {
    let spec = ctx.spec();
    let (n, dim) = (ctx.n(), ctx.dim());
    let harmonic = harmonic_profile(ctx);
    let omega_class = ctx.omega_class();
    let mut coeffective = Vec::with_capacity(n);
    let mut filtered = Vec::with_capacity(n);
    let mut lefschetz = Vec::with_capacity(n);
    let mut oracle_c_hat = Vec::with_capacity(n);
    let mut oracle_filtered = Vec::with_capacity(n);
    for k in 1..=n {
        let ladder = coeffective_ladder(ctx, k)?;
        coeffective.push(CoeffectiveNumbers {
            k,
            c_hat: ladder.c_hat,
            c: ladder.dims_c.iter().filter(|(&q, _)| q >= n - k + 2).map(|(&q, &v)| (q, v)).collect(),
            chi: ladder.chi(),
            chi_betti: chi_k_betti(ctx, k),
        });
        let f = filtered_ladder(ctx, k)?;
        filtered.push(FilteredNumbers {
            k,
            c_check: f.dims,
            chi_plus: f.chi_plus,
            chi_minus: f.chi_minus,
        });
        let lk = ctx.lefschetz_on_cohomology(k, n - k);
        lefschetz.push(LefschetzRanks {
            k,
            rank: lk.rank(),
            harmonic_rank: harmonic.subspaces[n - k].image(lk).dim(),
        });
        oracle_c_hat.push(c_hat_oracle(ctx, k)?);
        oracle_filtered.push(filtered_les_oracle(ctx, k)?.into_values().collect());
    }
    Ok(CohomologyReport {
        algebra: spec.name().to_string(),
        omega: ctx.omega().omega().to_string(),
        dim,
        n,
        unimodular: spec.is_unimodular(),
        omega_exact: omega_class.iter().all(Scalar::is_zero),
        omega_class,
        betti: ctx.derham().betti_numbers(),
        harmonic: harmonic.numbers,
        coeffective,
        filtered,
        lefschetz,
        truncated: (0..=dim).map(|q| ctx.truncated_dim(q)).collect(),
        hlc: ctx.hard_lefschetz(),
        oracles: OracleNumbers {
            harmonic_delta: harmonic_numbers_delta_oracle(ctx)?,
            c_hat: oracle_c_hat,
            filtered: oracle_filtered,
        },
    })
}

/// The full report of `ω`; any failed relation is returned as an error.
pub fn profile(omega: SymplecticForm) -> Result<CohomologyReport> {
    profile_context(&SymplecticContext::new(omega))
}

pub fn profile_context(ctx: &SymplecticContext) -> Result<CohomologyReport> {
    let report = compute_report(ctx)?;
    let suite = verify_relations(&report);
    if suite.passed() {
        Ok(report)
    } else {
        let failed: Vec<String> = suite.failures().map(|c| c.to_string()).collect();
        Err(Error::IdentityViolation(format!("{} for ω = {}: {}", report.algebra, report.omega, failed.join("; "))))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    pub coefficient_set: Vec<Scalar>,
    pub max_samples: usize,
    pub seed: u64,
    /// 2-forms evaluated before any sampled form.
    pub witnesses: Vec<String>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            coefficient_set: (-3..=3).map(Scalar::from_int).collect(),
            max_samples: 300,
            seed: 0,
            witnesses: Vec::new(),
        }
    }
}

impl ScanConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ScanConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if config.coefficient_set.is_empty() {
            return Err(Error::Config("coefficient_set is empty".into()));
        }
        Ok(config)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Witnessed,
    Grid,
}

/// Where a value was first reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueOrigin {
    pub provenance: Provenance,
    pub omega: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlexibilityVerdict {
    pub algebra: String,
    pub dim_s: usize,
    pub symplectic_found: bool,
    pub samples: usize,
    pub distinct_classes: usize,
    pub c_flexible: bool,
    pub f_flexible: bool,
    pub h_flexible: bool,
    pub value_sets: BTreeMap<String, BTreeMap<usize, ValueOrigin>>,
}

impl FlexibilityVerdict {
    pub fn values(&self, invariant: &str) -> Vec<usize> {
        self.value_sets.get(invariant).map(|s| s.keys().copied().collect()).unwrap_or_default()
    }
}

struct Candidate {
    form: ExteriorForm,
    provenance: Provenance,
}

fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn combination(basis: &[ExteriorForm], coeffs: &[Scalar], spec: &LieAlgebraSpec) -> ExteriorForm {
    let mut out = ExteriorForm::zero(spec.dim(), 2);
    for (f, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&f.scale(c));
        }
    }
    out
}

fn sampled_coefficients(dim_z: usize, config: &ScanConfig, seed: u64) -> Vec<Vec<Scalar>> {
    let set = &config.coefficient_set;
    let grid_size = (set.len() as u128).checked_pow(dim_z as u32);
    if grid_size.is_some_and(|g| g <= config.max_samples as u128) {
        let mut out = vec![Vec::new()];
        for _ in 0..dim_z {
            out = out.into_iter().flat_map(|v| set.iter().map(move |c| [v.clone(), vec![c.clone()]].concat())).collect();
        }
        return out;
    }
    let zero = Scalar::zero();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..config.max_samples)
        .map(|i| {
            // every third draw is dense, the others leave coordinates at zero
            let density = if i % 3 == 0 { 1.0 } else { rng.gen_range(0.2..0.7) };
            (0..dim_z)
                .map(|_| if rng.gen_bool(density) { set[rng.gen_range(0..set.len())].clone() } else { zero.clone() })
                .collect()
        })
        .collect()
}

/// Scales a class vector so that its first nonzero coordinate is 1.
fn normalized(class: Vec<Scalar>) -> Vec<Scalar> {
    match class.iter().find(|c| !c.is_zero()).cloned() {
        Some(lead) => class.into_iter().map(|c| c / &lead).collect(),
        None => class,
    }
}

/// Evaluates witnesses, then grid or seeded samples over the closed 2-forms,
/// and merges the invariants reached into value sets.
pub fn scan(spec: &Arc<LieAlgebraSpec>, config: &ScanConfig) -> Result<FlexibilityVerdict> {
    let closed = closed_two_form_space(spec);
    let basis: Vec<ExteriorForm> = closed
        .basis_vectors()
        .iter()
        .map(|v| ExteriorForm::from_vector(spec.basis(), 2, v))
        .collect();
    let mut candidates = Vec::new();
    for w in &config.witnesses {
        let form = parse_form(w, spec.dim(), 2)?;
        if !is_symplectic(spec, &form) {
            return Err(Error::NotSymplectic(format!("witness {w} on {}", spec.name())));
        }
        candidates.push(Candidate { form, provenance: Provenance::Witnessed });
    }
    let samples = sampled_coefficients(basis.len(), config, config.seed ^ name_hash(spec.name()));
    let sample_count = samples.len();
    candidates.extend(
        samples
            .iter()
            .map(|c| Candidate { form: combination(&basis, c, spec), provenance: Provenance::Grid })
            .filter(|c| is_symplectic(spec, &c.form)),
    );

    // the invariants depend on [ω] only up to scale
    let derham = Arc::new(DeRham::new(spec));
    let h2 = derham.space(2);
    let mut seen = HashSet::new();
    let distinct: Vec<Candidate> = candidates
        .into_iter()
        .filter(|c| seen.insert(normalized(h2.class_of(spec, &c.form).expect("closed"))))
        .collect();

    let reports: Vec<Result<CohomologyReport>> = distinct
        .par_iter()
        .map(|c| {
            let omega = SymplecticForm::new(spec.clone(), c.form.clone())?;
            profile_context(&SymplecticContext::with_derham(omega, derham.clone()))
        })
        .collect();

    let mut value_sets: BTreeMap<String, BTreeMap<usize, ValueOrigin>> = BTreeMap::new();
    for (c, report) in distinct.iter().zip(reports) {
        let report = report?;
        for (name, v) in report.invariants() {
            value_sets
                .entry(name)
                .or_default()
                .entry(v)
                .or_insert_with(|| ValueOrigin { provenance: c.provenance, omega: report.omega.clone() });
        }
    }
    let varies = |pred: &dyn Fn(&str) -> bool| value_sets.iter().any(|(name, set)| pred(name) && set.len() > 1);
    Ok(FlexibilityVerdict {
        algebra: spec.name().to_string(),
        dim_s: closed.dim(),
        symplectic_found: !distinct.is_empty(),
        samples: sample_count + config.witnesses.len(),
        distinct_classes: distinct.len(),
        c_flexible: varies(&|s| s.starts_with("c_hat_") || (s.starts_with("c(") && !s.starts_with("c_check"))),
        f_flexible: varies(&|s| s.starts_with("c_check(")),
        h_flexible: varies(&|s| s.starts_with("h_")),
        value_sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> Arc<LieAlgebraSpec> {
        Arc::new(LieAlgebraSpec::parse_salamon(s).unwrap())
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_two_form_space(&spec("(0,0,0,0,0,0)")).dim(), 15);
        assert_eq!(closed_two_form_space(&spec("(0,0,12,13,14,15)")).dim(), 7);
        assert_eq!(closed_two_form_space(&spec("(0,0,0,12)")).dim(), 5);
    }

    #[test]
    fn torus_profile() {
        let w = SymplecticForm::from_text(spec("(0,0,0,0,0,0)"), "12+34+56").unwrap();
        let r = profile(w).unwrap();
        assert_eq!(r.table_columns(), Some([20, 15, 6, 14, 14, 14, 14]));
        assert!(r.hlc);
    }

    #[test]
    fn grid_is_exhaustive_when_small() {
        let c = sampled_coefficients(2, &ScanConfig::default(), 0);
        assert_eq!(c.len(), 49);
        let c = sampled_coefficients(5, &ScanConfig::default(), 0);
        assert_eq!(c.len(), 300);
    }

    #[test]
    fn config_round_trip() {
        let c = ScanConfig::from_json(r#"{"coefficient_set": [-1, "1/2", 1], "seed": 7, "witnesses": ["13+24"]}"#)
            .unwrap();
        assert_eq!(c.coefficient_set.len(), 3);
        assert_eq!(c.max_samples, 300);
        assert!(ScanConfig::from_json(r#"{"coefficient_set": []}"#).is_err());
        assert!(ScanConfig::from_json(r#"{"bogus": 1}"#).is_err());
    }
}

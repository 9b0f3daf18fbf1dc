#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symcoh::catalog::{auxiliary, catalog};
use symcoh::flexibility::closed_two_form_space;
use symcoh::{is_symplectic, ExteriorForm, LieAlgebraSpec, Scalar, SymplecticForm};

pub struct Instance {
    pub spec: Arc<LieAlgebraSpec>,
    pub witnesses: Vec<SymplecticForm>,
}

fn instance(name: &str, witnesses: &[String]) -> Instance {
    let spec = Arc::new(LieAlgebraSpec::parse_salamon(name).unwrap());
    let witnesses = witnesses.iter().map(|w| SymplecticForm::from_text(spec.clone(), w).unwrap()).collect();
    Instance { spec, witnesses }
}

/// Every catalog algebra, six-dimensional and auxiliary, with its witnesses.
pub fn instances() -> Vec<Instance> {
    catalog()
        .iter()
        .map(|e| instance(&e.name, &e.witnesses))
        .chain(auxiliary().iter().map(|e| instance(&e.name, &e.witnesses)))
        .collect()
}

pub fn six_dimensional() -> Vec<Instance> {
    catalog().iter().map(|e| instance(&e.name, &e.witnesses)).collect()
}

/// Seeded random symplectic forms with coefficients in `-3..=3` over the
/// closed 2-forms.
pub fn sampled_forms(spec: &Arc<LieAlgebraSpec>, count: usize, seed: u64) -> Vec<SymplecticForm> {
    let basis: Vec<ExteriorForm> = closed_two_form_space(spec)
        .basis_vectors()
        .iter()
        .map(|v| ExteriorForm::from_vector(spec.basis(), 2, v))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..count * 20 {
        if out.len() == count {
            break;
        }
        let mut w = ExteriorForm::zero(spec.dim(), 2);
        for b in &basis {
            if rng.gen_bool(0.6) {
                w = w.add(&b.scale(&Scalar::from_int(rng.gen_range(-3..=3))));
            }
        }
        if is_symplectic(spec, &w) {
            out.push(SymplecticForm::new(spec.clone(), w).unwrap());
        }
    }
    out
}

/// A random exact 2-form `dη`.
pub fn exact_form(spec: &LieAlgebraSpec, rng: &mut ChaCha8Rng) -> ExteriorForm {
    let mut eta = ExteriorForm::zero(spec.dim(), 1);
    for i in 0..spec.dim() {
        eta = eta.add(&ExteriorForm::monomial(spec.dim(), 1 << i, Scalar::from_int(rng.gen_range(-2..=2))));
    }
    spec.differential_form(&eta)
}

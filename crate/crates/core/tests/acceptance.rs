//! Acceptance run: one pass/fail line per criterion.

mod common;

use std::process::ExitCode;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use symcoh::catalog::{find_entry, run_table1, Table1Summary};
use symcoh::derham::SymplecticContext;
use symcoh::filtered::chain_is_complex;
use symcoh::flexibility::{compute_report, profile, CohomologyReport, ScanConfig};
use symcoh::harmonic::harmonic_profile;
use symcoh::lie::embed;
use symcoh::notation::parse_form;
use symcoh::relations::{verify_relations, RelationStatus};
use symcoh::{ExteriorForm, LieAlgebraSpec, Matrix, Scalar, SymplecticForm};

use common::{exact_form, instances, sampled_forms, Instance};

type Outcome = Result<String, String>;

fn all_pairs() -> Vec<SymplecticForm> {
    instances()
        .into_iter()
        .flat_map(|Instance { spec, witnesses }| {
            let mut forms = witnesses;
            forms.extend(sampled_forms(&spec, 6, 17));
            forms
        })
        .collect()
}

fn reports(forms: &[SymplecticForm]) -> Result<Vec<CohomologyReport>, String> {
    forms
        .par_iter()
        .map(|w| compute_report(&SymplecticContext::new(w.clone())).map_err(|e| format!("{}: {e}", w.omega())))
        .collect()
}

fn table_reproduction(summary: &Table1Summary) -> Outcome {
    let detail = format!("{}/{} rows matched", summary.rows_matched, summary.rows.len());
    if summary.table_reproduced() {
        Ok(detail)
    } else {
        let list: Vec<String> = summary
            .mismatches
            .iter()
            .map(|m| format!("{} {} expected {} computed {}", m.algebra, m.invariant, m.expected, m.achieved))
            .collect();
        Err(format!("{detail}; {}", list.join("; ")))
    }
}

fn classification(summary: &Table1Summary) -> Outcome {
    let detail = format!(
        "c/f/h flexible {}/{}/{}, f iff h {}, f and h not c [{}], truncated dimension by step {}",
        summary.c_flexible.len(),
        summary.f_flexible.len(),
        summary.h_flexible.len(),
        summary.f_iff_h,
        summary.f_h_not_c.join(" "),
        summary.truncated_dimension_by_step
    );
    if summary.classification_ok() && summary.truncated_dimension_by_step {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn columns(spec: &Arc<LieAlgebraSpec>, omega: ExteriorForm) -> Result<[usize; 7], String> {
    let form = SymplecticForm::new(spec.clone(), omega).map_err(|e| e.to_string())?;
    let report = profile(form).map_err(|e| e.to_string())?;
    Ok(report.table_columns().expect("six-dimensional"))
}

fn combination(terms: &[(Scalar, &str)]) -> ExteriorForm {
    terms.iter().fold(ExteriorForm::zero(6, 2), |acc, (c, text)| {
        acc.add(&parse_form(text, 6, 2).expect("valid form").scale(c))
    })
}

/// `(1−cos t)[e13] − cos t[e16+e25−e34] + (1−cos t)[e26−e45]`.
fn varying_family_form(cos: Scalar) -> ExteriorForm {
    let one_minus = &Scalar::one() - &cos;
    combination(&[(one_minus.clone(), "e13"), (-cos, "e16+e25-e34"), (one_minus, "e26-e45")])
}

fn witness_examples() -> Outcome {
    let spec = Arc::new(LieAlgebraSpec::parse_salamon("(0,0,0,12,14,15+23+24)").unwrap());
    let mut checked = 0;
    for (cos, expected) in [
        (Scalar::one(), [4, 3, 0, 4, 5, 6, 7]),
        (Scalar::zero(), [5, 4, 2, 3, 4, 4, 5]),
        (Scalar::ratio(1, 2), [5, 4, 2, 3, 4, 4, 5]),
        (Scalar::from_int(-1), [5, 4, 2, 3, 4, 4, 5]),
    ] {
        let got = columns(&spec, varying_family_form(cos.clone()))?;
        if got != expected {
            return Err(format!("cos t = {cos}: expected {expected:?}, computed {got:?}"));
        }
        checked += 1;
    }

    let spec = Arc::new(LieAlgebraSpec::parse_salamon("(0,0,0,12,13,14+23)").unwrap());
    let values = [-1i64, 0, 1, 2];
    let mut grid = Vec::new();
    for a in [0i64, 1] {
        for b in [0i64, 1] {
            for &c in &values {
                for &d in &values {
                    for &e in &values {
                        for &f in &values {
                            if (e + f) * (c * d + e * f) != 0 {
                                grid.push([a, b, c, d, e, f]);
                            }
                        }
                    }
                }
            }
        }
    }
    let results: Vec<Result<(), String>> = grid
        .par_iter()
        .map(|&[a, b, c, d, e, f]| {
            let omega = combination(&[
                (Scalar::from_int(a), "e14"),
                (Scalar::from_int(b), "e15"),
                (Scalar::from_int(c), "e24"),
                (Scalar::from_int(d), "e35"),
                (Scalar::from_int(e), "e16+e25"),
                (Scalar::from_int(f), "e16-e34"),
            ]);
            let cols = columns(&spec, omega.clone())?;
            let c_hat = match (d, e + 2 * f) {
                (0, 0) => 7,
                (0, _) => 6,
                _ => 5,
            };
            let h4 = if (e + f) * (e + f) == c * d + e * f { 3 } else { 4 };
            let c_check = match (d, e + 2 * f, h4) {
                (0, 0, _) => 9,
                (0, _, _) => 8,
                (_, _, 3) => 8,
                _ => 7,
            };
            if cols[3] != c_hat || cols[1] != h4 || cols[5] != c_check || cols[2] != 0 || cols[6] != 8 {
                return Err(format!(
                    "{omega}: expected c_hat_3={c_hat} h_4={h4} c_check(1)_4={c_check}, computed {cols:?}"
                ));
            }
            Ok(())
        })
        .collect();
    for r in results {
        r?;
    }
    let mut cases = std::collections::BTreeSet::new();
    for &[_, _, c, d, e, f] in &grid {
        let h4 = (e + f) * (e + f) == c * d + e * f;
        cases.insert((d == 0, e + 2 * f == 0, h4));
    }
    Ok(format!(
        "varying family at {checked} parameters; {} forms over the closed-class grid, {} condition cases",
        grid.len(),
        cases.len()
    ))
}

fn relation_suite(forms: &[SymplecticForm]) -> Outcome {
    let reports = reports(forms)?;
    let mut evaluated = std::collections::BTreeSet::new();
    for r in &reports {
        let suite = verify_relations(r);
        if !suite.passed() {
            let fails: Vec<String> = suite.failures().map(|c| c.to_string()).collect();
            return Err(format!("{} with {}: {}", r.algebra, r.omega, fails.join("; ")));
        }
        for c in suite.checks.iter().filter(|c| c.status == RelationStatus::Pass) {
            evaluated.insert(c.name.clone());
        }
    }
    for required in ["four_dimensional_filtered_relation", "six_dimensional_relations", "codegree_one_harmonic_is_even"] {
        if !evaluated.contains(required) {
            return Err(format!("{required} was never evaluated"));
        }
    }
    Ok(format!("{} pairs, {} relation families evaluated", reports.len(), evaluated.len()))
}

fn oracle_equivalence(forms: &[SymplecticForm]) -> Outcome {
    let reports = reports(forms)?;
    for r in &reports {
        if r.oracles.harmonic_delta != r.harmonic {
            return Err(format!("{} {}: harmonic {:?} vs δ-harmonic {:?}", r.algebra, r.omega, r.harmonic, r.oracles.harmonic_delta));
        }
        for (k, c) in r.coeffective.iter().enumerate() {
            if r.oracles.c_hat[k] != c.c_hat {
                return Err(format!("{} {}: c_hat for k={} differs", r.algebra, r.omega, k + 1));
            }
        }
        for (k, f) in r.filtered.iter().enumerate() {
            if r.oracles.filtered[k] != f.c_check {
                return Err(format!("{} {}: filtered numbers for k={} differ", r.algebra, r.omega, k + 1));
            }
        }
    }
    Ok(format!("{} instances agree on all three routes", reports.len()))
}

fn operator_identities(form: &SymplecticForm) -> Result<usize, String> {
    let spec = form.spec();
    let dim = spec.dim();
    let fail = |what: &str, q: usize| Err(format!("{} {}: {what} in degree {q}", spec.name(), form.omega()));
    for q in 0..dim - 1 {
        if !spec.differential(q + 1).mul(spec.differential(q)).is_zero() {
            return fail("d∘d ≠ 0", q);
        }
    }
    for q in 0..=dim {
        let id = form.star_matrix(dim - q).mul(form.star_matrix(q));
        if id != Matrix::identity(id.rows()) {
            return fail("** ≠ id", q);
        }
    }
    for q in 1..=dim {
        let delta = form.delta_matrix(q).map_err(|e| e.to_string())?;
        let via_star = form.star_matrix(dim - q + 1).mul(&spec.differential(dim - q).mul(form.star_matrix(q)));
        let via_star = if q % 2 == 0 { via_star.scale(&-Scalar::one()) } else { via_star };
        let i_d = if q < dim {
            form.contraction_matrix(q + 1).mul(spec.differential(q))
        } else {
            Matrix::zeros(delta.rows(), delta.cols())
        };
        let d_i = if q >= 2 {
            spec.differential(q - 2).mul(form.contraction_matrix(q))
        } else {
            Matrix::zeros(delta.rows(), delta.cols())
        };
        if *delta != via_star || *delta != i_d.sub(&d_i) {
            return fail("δ differs from (−1)^{q+1}*d* or [i(Π),d]", q);
        }
        if q >= 2 && !form.delta_matrix(q - 1).unwrap().mul(delta).is_zero() {
            return fail("δ∘δ ≠ 0", q);
        }
    }
    if !form.check_linear_lefschetz() {
        return fail("linear Lefschetz map not invertible", form.n());
    }
    let ctx = SymplecticContext::new(form.clone());
    for k in 1..=form.n() {
        if !chain_is_complex(&ctx, k).map_err(|e| e.to_string())? {
            return fail("filtered chain is not a complex", k);
        }
    }
    Ok(dim)
}

fn operators() -> Outcome {
    let forms: Vec<SymplecticForm> = instances().into_iter().filter_map(|i| i.witnesses.into_iter().next()).collect();
    let results: Vec<Result<usize, String>> = forms.par_iter().map(operator_identities).collect();
    let mut count = 0;
    for r in results {
        r?;
        count += 1;
    }
    Ok(format!("{count} algebras, exhaustive over basis forms"))
}

fn hlc_biconditionals(forms: &[SymplecticForm]) -> Outcome {
    let torus = Arc::new(LieAlgebraSpec::abelian(6).unwrap());
    let t = profile(SymplecticForm::from_text(torus, "12+34+56").unwrap()).map_err(|e| e.to_string())?;
    if t.harmonic != t.betti || t.coeffective.iter().zip(&t.filtered).any(|(c, f)| f.chi_plus != c.chi) {
        return Err("torus fails h = b or positive filtered characteristic = χ".into());
    }
    let reports = reports(forms)?;
    let mut non_hlc = 0;
    for r in reports.iter().filter(|r| !r.hlc && r.unimodular) {
        non_hlc += 1;
        let mathieu = r.harmonic != r.betti;
        let chi = r.coeffective.iter().zip(&r.filtered).any(|(c, f)| f.chi_plus != c.chi);
        if !mathieu || !chi {
            return Err(format!("{} {}: non-HLC but mathieu violated {mathieu}, χ̌₊ ≠ χ {chi}", r.algebra, r.omega));
        }
    }
    let hlc = reports.iter().filter(|r| r.hlc).count();
    for r in reports.iter().filter(|r| r.hlc && r.unimodular) {
        if r.harmonic != r.betti {
            return Err(format!("{} {}: HLC but h ≠ b", r.algebra, r.omega));
        }
    }
    Ok(format!("torus ok; {non_hlc} non-HLC and {hlc} HLC instances consistent"))
}

fn class_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut algebras = 0;
    let mut checks = 0;
    for name in [
        "(0,0,0,12,14,15+23+24)",
        "(0,0,0,12,13,14+23)",
        "(0,0,12,13,23,14-25)",
        "(0,0,0,0,12,13)",
        "(0,0,0,12,13,23)",
        "(0,0,0,0,0,12)",
    ] {
        let entry = find_entry(name).ok_or_else(|| format!("{name} not in catalog"))?;
        let spec = entry.spec().map_err(|e| e.to_string())?;
        let mut forms: Vec<SymplecticForm> =
            entry.witnesses.iter().map(|w| SymplecticForm::from_text(spec.clone(), w).unwrap()).collect();
        forms.extend(sampled_forms(&spec, 2, 3));
        for form in forms {
            let base = profile(form.clone()).map_err(|e| e.to_string())?;
            let mut variants: Vec<ExteriorForm> =
                [Scalar::from_int(-1), Scalar::from_int(2), Scalar::ratio(1, 3)].iter().map(|l| form.omega().scale(l)).collect();
            for _ in 0..3 {
                variants.push(form.omega().add(&exact_form(&spec, &mut rng)));
            }
            for omega in variants {
                let Ok(other) = form.with_omega(omega.clone()) else { continue };
                let r = profile(other).map_err(|e| e.to_string())?;
                if r.invariants() != base.invariants() || r.hlc != base.hlc || r.betti != base.betti {
                    return Err(format!("{name}: {} and {omega} give different profiles", form.omega()));
                }
                checks += 1;
            }
        }
        algebras += 1;
    }
    Ok(format!("{algebras} algebras, {checks} rescaled or shifted forms"))
}

fn top_odd_harmonic(spec: &Arc<LieAlgebraSpec>, omega: ExteriorForm) -> Result<usize, String> {
    let form = SymplecticForm::new(spec.clone(), omega).map_err(|e| e.to_string())?;
    let ctx = SymplecticContext::new(form);
    Ok(harmonic_profile(&ctx).numbers[ctx.dim() - 1])
}

fn product_formula() -> Outcome {
    let pairs = [
        ("(0,0,0,12)", "13+24", "(0,0)", "12"),
        ("(0,0,0,12)", "14+23", "(0,0)", "12"),
        ("(0,0,0,12)", "13+24", "(0,0,0,12)", "14+23"),
        ("(0,0,12,13,23,14-25)", "e15 - 2*e16 + e24 + 2*e35", "(0,0)", "12"),
        ("(0,0,12,13,23,14-25)", "e14 - 2*e16 - 2*e26 + 2*e34 + 2*e35", "(0,0)", "12"),
        ("(13,-23,0,0)", "12+34", "(0,0,0,12)", "13+24"),
    ];
    for (a, wa, b, wb) in pairs {
        let sa = Arc::new(LieAlgebraSpec::parse_salamon(a).unwrap());
        let sb = Arc::new(LieAlgebraSpec::parse_salamon(b).unwrap());
        let fa = SymplecticForm::from_text(sa.clone(), wa).map_err(|e| e.to_string())?;
        let fb = SymplecticForm::from_text(sb.clone(), wb).map_err(|e| e.to_string())?;
        let sum = Arc::new(sa.direct_sum(&sb).map_err(|e| e.to_string())?);
        let dim = sum.dim();
        let omega = embed(fa.omega(), dim, 0).add(&embed(fb.omega(), dim, sa.dim()));
        let lhs = top_odd_harmonic(&sum, omega)?;
        let rhs = top_odd_harmonic(&sa, fa.omega().clone())? + top_odd_harmonic(&sb, fb.omega().clone())?;
        if lhs != rhs {
            return Err(format!("{a} ⊕ {b}: h on the product {lhs}, sum over factors {rhs}"));
        }
    }
    Ok(format!("{} products", pairs.len()))
}

fn main() -> ExitCode {
    let summary = run_table1(&ScanConfig::default());
    let forms = all_pairs();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("table reproduction", Box::new(|| summary.as_ref().map_err(|e| e.to_string()).and_then(table_reproduction))),
        ("flexibility classification", Box::new(|| summary.as_ref().map_err(|e| e.to_string()).and_then(classification))),
        ("witness examples", Box::new(witness_examples)),
        ("relation suite", Box::new(|| relation_suite(&forms))),
        ("oracle equivalence", Box::new(|| oracle_equivalence(&forms))),
        ("operator identities", Box::new(operators)),
        ("hard Lefschetz biconditionals", Box::new(|| hlc_biconditionals(&forms))),
        ("class invariance", Box::new(class_invariance)),
        ("product formula", Box::new(product_formula)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} [PASS] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [FAIL] {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

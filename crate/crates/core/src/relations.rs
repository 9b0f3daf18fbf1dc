//! Identities and inequalities among the Betti, harmonic, coeffective and
//! filtered numbers, checked on a single report.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeffective::sign;
use crate::flexibility::CohomologyReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub params: String,
    pub status: RelationStatus,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for RelationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.params.is_empty() {
            write!(f, " [{}]", self.params)?;
        }
        write!(f, ": {:?} ({} vs {})", self.status, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSuiteResult {
    pub checks: Vec<RelationCheck>,
}

impl RelationSuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != RelationStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| c.status == RelationStatus::Fail)
    }

    pub fn failed_names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.failures().map(|c| c.name.as_str()).collect();
        names.dedup();
        names
    }

    pub fn evaluated(&self) -> usize {
        self.checks.iter().filter(|c| c.status != RelationStatus::Skipped).count()
    }

    pub fn names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.checks.iter().map(|c| c.name.as_str()).collect();
        names.dedup();
        names
    }
}

struct Suite {
    checks: Vec<RelationCheck>,
}

impl Suite {
    fn push(&mut self, name: &str, params: String, ok: bool, lhs: impl fmt::Display, rhs: impl fmt::Display) {
        self.checks.push(RelationCheck {
            name: name.to_string(),
            params,
            status: if ok { RelationStatus::Pass } else { RelationStatus::Fail },
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    fn eq<T: PartialEq + fmt::Display>(&mut self, name: &str, params: String, lhs: T, rhs: T) {
        let ok = lhs == rhs;
        self.push(name, params, ok, lhs, rhs);
    }

    fn within(&mut self, name: &str, params: String, value: i64, lo: i64, hi: i64) {
        self.push(name, params, lo <= value && value <= hi, value, format!("[{lo}, {hi}]"));
    }

    fn skip(&mut self, name: &str, reason: &str) {
        self.checks.push(RelationCheck {
            name: name.to_string(),
            params: String::new(),
            status: RelationStatus::Skipped,
            lhs: reason.to_string(),
            rhs: String::new(),
        });
    }
}

fn kq(k: usize, q: usize) -> String {
    format!("k={k} q={q}")
}

/// Evaluates every relation that applies to the report. Relations valid only
/// on closed manifolds require a unimodular algebra and are skipped otherwise.
pub fn verify_relations(r: &CohomologyReport) -> RelationSuiteResult {
    let mut s = Suite { checks: Vec::new() };
    let n = r.n;
    let top = 2 * n;
    let b = |q: usize| r.b(q as isize) as i64;
    let bi = |q: isize| r.b(q) as i64;
    let h = |q: usize| r.h(q as isize) as i64;

    for k in 1..=n {
        let cn = &r.coeffective[k - 1];
        let fl = &r.filtered[k - 1];
        let lf = &r.lefschetz[k - 1];
        let c_hat = cn.c_hat as i64;

        for q in n - k + 2..=top {
            let c = r.c(k, q) as i64;
            s.within("coeffective_bounds", kq(k, q), c, b(q) - b(q + 2 * k), b(q) + b(q + 2 * k - 1));
            if r.hlc {
                s.eq("coeffective_lower_bound_attained_under_hlc", kq(k, q), c, b(q) - b(q + 2 * k));
            }
            if r.omega_exact {
                s.eq("coeffective_upper_bound_attained_for_exact_form", kq(k, q), c, b(q) + b(q + 2 * k - 1));
            }
        }

        let low = n - k + 1;
        s.within("c_hat_bounds", format!("k={k}"), c_hat, b(low) - b(n + k + 1), b(low));
        if r.hlc {
            s.eq("c_hat_lower_bound_attained_under_hlc", format!("k={k}"), c_hat, b(low) - b(n + k + 1));
        }
        if r.omega_exact {
            s.eq("c_hat_upper_bound_attained_for_exact_form", format!("k={k}"), c_hat, b(low));
        }

        s.eq("coeffective_euler_characteristic_is_topological", format!("k={k}"), cn.chi, cn.chi_betti);

        for q in 0..=top + 2 * k - 1 {
            let cc = r.c_check(k, q) as i64;
            let (qi, ki) = (q as isize, k as isize);
            s.within(
                "filtered_bounds",
                kq(k, q),
                cc,
                bi(qi - 2 * ki + 1) - bi(qi + 1),
                bi(qi - 2 * ki + 1) + bi(qi),
            );
            if r.hlc && q >= n + k {
                s.eq("filtered_lower_bound_attained_under_hlc", kq(k, q), cc, bi(qi - 2 * ki + 1) - bi(qi + 1));
            }
            if r.omega_exact {
                s.eq("filtered_upper_bound_attained_for_exact_form", kq(k, q), cc, bi(qi - 2 * ki + 1) + bi(qi));
            }
            if q + 2 <= 2 * k {
                s.eq("filtered_equals_betti_below_2k", kq(k, q), cc, b(q));
            }
            if q > n + k {
                s.eq("filtered_tail_equals_coeffective", kq(k, q), cc, r.c(k, q - 2 * k + 1) as i64);
            }
        }

        s.eq("filtered_euler_characteristic_vanishes", format!("k={k}"), fl.chi_plus + fl.chi_minus, 0);
        let c_mid = r.c_check(k, n + k) as i64;
        s.eq(
            "filtered_positive_euler_characteristic",
            format!("k={k}"),
            fl.chi_plus,
            sign(n + k + 1) * (c_mid - c_hat) + cn.chi,
        );
        s.eq("harmonic_difference_equals_c_hat", format!("k={k}"), h(n - k + 1) - h(n + k + 1), c_hat);
        s.within("filtered_minus_c_hat_bounded_by_harmonic_gap", format!("k={k}"), c_mid - c_hat, 0, b(n + k) - h(n + k));
        s.eq(
            "harmonic_gap_attained_iff_lefschetz_images_agree",
            format!("k={k}"),
            c_mid - c_hat == b(n + k) - h(n + k),
            lf.harmonic_rank == lf.rank,
        );
        s.eq("c_hat_from_filtered_middle_degree", format!("k={k}"), c_hat, c_mid - b(n + k) + lf.rank as i64);

        s.eq("c_hat_matches_connecting_quotient", format!("k={k}"), cn.c_hat, r.oracles.c_hat[k - 1]);
        let les = &r.oracles.filtered[k - 1];
        s.push(
            "filtered_complex_matches_exact_sequence",
            format!("k={k}"),
            &fl.c_check == les,
            format!("{:?}", fl.c_check),
            format!("{les:?}"),
        );
    }

    let chi_agree = r.filtered.iter().zip(&r.coeffective).all(|(f, c)| f.chi_plus == c.chi);
    s.eq("hlc_iff_positive_filtered_characteristics_agree", String::new(), r.hlc, chi_agree);

    s.eq("top_filtered_harmonic_formula", String::new(), r.c_check(n, top) as i64, b(1) + b(top) - h(top));
    if n >= 2 {
        s.eq(
            "second_filtered_harmonic_formula",
            String::new(),
            r.c_check(n - 1, top - 1) as i64,
            b(2) + b(top - 1) - h(top - 1) - h(top),
        );
    }
    if n >= 3 {
        s.eq(
            "third_filtered_harmonic_formula",
            String::new(),
            r.c_check(n - 2, top - 2) as i64,
            b(top - 2) + h(3) - h(top - 2) - h(top - 1),
        );
    }

    s.eq("lowest_c_hat_equals_b1", String::new(), r.c_hat(n) as i64, b(1));
    for q in 2..=top {
        s.eq("top_coeffective_equals_betti", kq(n, q), r.c(n, q) as i64, b(q));
    }

    s.push(
        "harmonic_recursion_matches_delta_harmonic",
        String::new(),
        r.harmonic == r.oracles.harmonic_delta,
        format!("{:?}", r.harmonic),
        format!("{:?}", r.oracles.harmonic_delta),
    );

    const CLOSED: &[&str] = &[
        "coeffective_equals_betti_near_top",
        "filtered_duality",
        "top_harmonic_equals_betti",
        "codegree_one_harmonic_is_even",
        "harmonic_bounds_above_middle",
        "hlc_iff_all_classes_harmonic",
        "top_filtered_equals_b1",
        "c_hat_two_equals_b2_minus_one",
        "truncated_top_dimension",
        "four_dimensional_filtered_relation",
        "six_dimensional_relations",
    ];
    if !r.unimodular {
        for name in CLOSED {
            s.skip(name, "requires a unimodular algebra");
        }
        return RelationSuiteResult { checks: s.checks };
    }

    for k in 1..n {
        for q in top - 2 * k + 1..=top {
            s.eq("coeffective_equals_betti_near_top", kq(k, q), r.c(k, q) as i64, b(q));
        }
    }
    for k in 1..=n {
        for q in 0..n + k {
            s.eq("filtered_duality", kq(k, q), r.c_check(k, q), r.c_check(k, top + 2 * k - 1 - q));
        }
    }
    s.eq("top_harmonic_equals_betti", String::new(), h(top), b(top));
    s.eq("codegree_one_harmonic_is_even", String::new(), h(top - 1) % 2, 0);
    let lower = h(n - 1) - (r.c_check(1, n + 1) as i64 - r.c_hat(1) as i64);
    s.within("harmonic_bounds_above_middle", String::new(), h(n + 1), lower, h(n - 1));
    s.eq("hlc_iff_all_classes_harmonic", String::new(), r.hlc, r.harmonic == r.betti);
    s.eq("top_filtered_equals_b1", String::new(), r.c_check(n, top) as i64, b(1));
    if n >= 2 {
        s.eq("c_hat_two_equals_b2_minus_one", String::new(), r.c_hat(n - 1) as i64, b(2) - 1);
        s.eq("truncated_top_dimension", String::new(), r.truncated[top - 2] as i64, b(top - 2) - 1);
    }
    if n == 2 {
        s.eq("four_dimensional_filtered_relation", String::new(), r.c_check(1, 3) as i64, b(1) + b(2) - h(3) - 1);
    } else {
        s.skip("four_dimensional_filtered_relation", "dimension is not 4");
    }
    if n == 3 {
        let (c_hat3, c4) = (r.c_hat(1) as i64, r.c(1, 4) as i64);
        let p = |name: &str| name.to_string();
        s.eq("six_dimensional_relations", p("c_hat_3"), c_hat3, c4 + b(2) - 3 * b(1) + 3);
        s.eq("six_dimensional_relations", p("h_3"), h(3), c_hat3 + h(5));
        s.eq("six_dimensional_relations", p("c_check(1)_4"), r.c_check(1, 4) as i64, c_hat3 - h(4) + b(2));
        s.eq("six_dimensional_relations", p("c_check(1)_5"), r.c_check(1, 5) as i64, c4);
        s.eq("six_dimensional_relations", p("c_check(2)_5"), r.c_check(2, 5) as i64, -h(5) + b(2) + b(1) - 1);
    } else {
        s.skip("six_dimensional_relations", "dimension is not 6");
    }
    RelationSuiteResult { checks: s.checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derham::SymplecticContext;
    use crate::flexibility::compute_report;
    use crate::lie::LieAlgebraSpec;
    use crate::symplectic::SymplecticForm;
    use std::sync::Arc;

    fn report(s: &str, w: &str) -> CohomologyReport {
        let g = Arc::new(LieAlgebraSpec::parse_salamon(s).unwrap());
        compute_report(&SymplecticContext::new(SymplecticForm::from_text(g, w).unwrap())).unwrap()
    }

    #[test]
    fn torus_passes() {
        let r = verify_relations(&report("(0,0,0,0,0,0)", "12+34+56"));
        assert!(r.passed(), "{:?}", r.failed_names());
        let skipped: Vec<&str> =
            r.checks.iter().filter(|c| c.status == RelationStatus::Skipped).map(|c| c.name.as_str()).collect();
        assert_eq!(skipped, ["four_dimensional_filtered_relation"]);
    }

    #[test]
    fn non_unimodular_skips_closed_relations() {
        let r = verify_relations(&report("(0,12)", "12"));
        assert!(r.passed(), "{:?}", r.failed_names());
        assert!(r.checks.iter().any(|c| c.name == "filtered_duality" && c.status == RelationStatus::Skipped));
    }

    #[test]
    fn perturbed_h3_fails() {
        let mut rep = report("(0,0,0,12,14,15+23+24)", "13+26-45");
        assert!(verify_relations(&rep).passed());
        rep.harmonic[3] += 1;
        let names = verify_relations(&rep).failed_names().join(",");
        assert!(names.contains("harmonic_difference_equals_c_hat"), "{names}");
    }
}

//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them on success).

use ct_workbench::identities::{dixon_lhs, dixon_rhs};
use ct_workbench::verify::{
    check_degree_bound, check_lemma_import1, check_reflection, check_zero_points,
    enumerate_instances,
};
use ct_workbench::{
    default_ceiling, sweep, QPolicy, SweepSpec, Theorem, Tournament, VerificationReport, Verdict,
};

fn conclude(criterion: &str, ok: bool) {
    println!("[{}] {criterion}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion failed: {criterion}");
}

fn all_match(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.verdict == Verdict::Match)
}

fn spec(theorem: Theorem, n_min: usize, n_max: usize, a_max: u32) -> SweepSpec {
    SweepSpec {
        theorem,
        n_min,
        n_max,
        a_max,
        a0_max: None,
        a_sum_max: None,
        q_policy: QPolicy::AllSubsets,
    }
}

#[test]
fn c01_dixon() {
    let ok = (0..=8).all(|n| dixon_lhs(n) == dixon_rhs(n));
    conclude("1: Dixon lhs = rhs for 0 <= n <= 8", ok);
}

#[test]
fn c02_dyson() {
    let reports = sweep(
        &SweepSpec {
            a_sum_max: Some(6),
            q_policy: QPolicy::EmptyOnly,
            ..spec(Theorem::Dyson, 0, 2, 6)
        },
        default_ceiling(),
    )
    .unwrap();
    conclude(
        "2: Dyson CT = multinomial, <= 3 vars, sum(a) <= 6",
        !reports.is_empty() && all_match(&reports),
    );
}

#[test]
fn c03_qdyson() {
    let reports = sweep(
        &SweepSpec {
            a_sum_max: Some(6),
            q_policy: QPolicy::EmptyOnly,
            ..spec(Theorem::QDyson, 0, 2, 6)
        },
        default_ceiling(),
    )
    .unwrap();
    conclude(
        "3: Andrews q-Dyson CT = q-multinomial, <= 3 vars, sum(a) <= 6",
        !reports.is_empty() && all_match(&reports),
    );
}

#[test]
fn c04_bg() {
    let reports = sweep(&spec(Theorem::Bg, 2, 3, 2), default_ceiling()).unwrap();
    // verdict 0 exactly on the nontransitive orientations
    let zeros_exact = reports.iter().all(|r| {
        let rhs_zero = r.rhs.as_ref().is_some_and(|v| v.is_zero());
        rhs_zero == (r.transitive == Some(false))
    });
    let nontransitive = reports
        .iter()
        .filter(|r| r.transitive == Some(false))
        .count();
    // n=3 has 2 cyclic orientations x 8 a-vectors; n=2 has none
    conclude(
        "4: BG (Thm 1.5) n in {2,3}, all Q, a_i in {1,2}",
        all_match(&reports) && zeros_exact && nontransitive == 16,
    );
}

fn main1_specs() -> Vec<SweepSpec> {
    vec![
        SweepSpec {
            a0_max: Some(2),
            ..spec(Theorem::Main1, 2, 3, 2)
        },
        SweepSpec {
            a0_max: Some(2),
            q_policy: QPolicy::List(vec![
                vec![],
                vec![(2, 3)],
                vec![(2, 4)], // nontransitive: 2 -> 3 -> 4 -> 2
                vec![(3, 4)],
                vec![(2, 3), (3, 4)],
            ]),
            ..spec(Theorem::Main1, 4, 4, 2)
        },
    ]
}

fn main2_specs() -> Vec<SweepSpec> {
    vec![
        SweepSpec {
            a0_max: Some(1),
            q_policy: QPolicy::EmptyOnly,
            ..spec(Theorem::Main2, 3, 3, 2)
        },
        SweepSpec {
            a0_max: Some(1),
            q_policy: QPolicy::List(vec![vec![], vec![(3, 4)]]),
            ..spec(Theorem::Main2, 4, 4, 2)
        },
    ]
}

#[test]
fn c05_main1() {
    let mut reports = Vec::new();
    for s in main1_specs() {
        reports.extend(sweep(&s, default_ceiling()).unwrap());
    }
    let saw_nontransitive = reports.iter().any(|r| r.transitive == Some(false));
    conclude(
        "5: Main Thm 1 (Thm 1.6) n in {2,3} all Q1 + n=4 list incl. nontransitive",
        all_match(&reports) && saw_nontransitive,
    );
}

#[test]
fn c06_main2() {
    let mut reports = Vec::new();
    for s in main2_specs() {
        reports.extend(sweep(&s, default_ceiling()).unwrap());
    }
    conclude(
        "6: Main Thm 2 (Thm 1.7) n=3 Q2 empty, n=4 Q2 in {empty, {(3,4)}}",
        !reports.is_empty() && all_match(&reports),
    );
}

#[test]
fn c07_corollary() {
    let cor_i = sweep(&spec(Theorem::CorI, 3, 3, 2), default_ceiling()).unwrap();
    let cor_ii = sweep(&spec(Theorem::CorII, 4, 4, 2), default_ceiling()).unwrap();
    // 3! sigma x 8 a-vectors and 4! sigma x 16 a-vectors
    conclude(
        "7: Cor 1.8 (i) n=3 and (ii) n=4 over all n! permutations",
        cor_i.len() == 48 && cor_ii.len() == 384 && all_match(&cor_i) && all_match(&cor_ii),
    );
}

#[test]
fn c08_reflection() {
    let ok = (1..=3).all(|n| check_reflection(n, 2, default_ceiling()).unwrap());
    conclude(
        "8: Lemma 2.2 reflection, exact Laurent equality, n <= 3, all Q in E_0",
        ok,
    );
}

#[test]
fn c09_dominant_bound() {
    let mut ok = true;
    for n in 1..=6 {
        for t in Tournament::enumerate_all(n) {
            let size = t.dominant_sets().len();
            if t.is_transitive() {
                ok &= size == n;
            } else {
                ok &= size <= n.saturating_sub(2);
            }
        }
    }
    conclude("9: Lemma 3.3 |R_T| <= n-2 for nontransitive, n <= 6", ok);
}

#[test]
fn c10_integer_lemma() {
    conclude(
        "10: Lemma 3.2 disjunction, exhaustive s <= 4, a_i <= 3",
        check_lemma_import1(4, 3),
    );
}

#[test]
fn c11_degree_bound() {
    let mut ok = true;
    for a1 in 1..=3u32 {
        for a2 in 1..=3u32 {
            for k in 0..=2u32 {
                ok &= check_degree_bound(&[a1, a2], k, default_ceiling()).unwrap();
            }
        }
    }
    conclude(
        "11: Lemma 2.1 degree bound via exact interpolation at q0 = 7/5",
        ok,
    );
}

#[test]
fn c12_x_lemmas() {
    let x1 = sweep(&spec(Theorem::X1, 3, 3, 2), default_ceiling()).unwrap();
    let x2 = sweep(&spec(Theorem::X2, 3, 4, 2), default_ceiling()).unwrap();
    conclude(
        "12: Lemmas 5.1/5.3 (X1 n=3, X2 n=3,4) against oracle CT",
        x1.len() == 8 && x2.len() == 24 && all_match(&x1) && all_match(&x2),
    );
}

#[test]
fn c13_zero_points() {
    let mut ok = true;
    let mut checked = 0usize;
    for s in main1_specs().into_iter().chain(main2_specs()) {
        for inst in enumerate_instances(&s).unwrap() {
            let transitive = inst.q.as_ref().unwrap().e_bar().is_transitive();
            if transitive {
                ok &= check_zero_points(&inst).unwrap();
                checked += 1;
            }
        }
    }
    conclude(
        "13: RHS vanishes on rhs_zero_points, poles rejected, all transitive MAIN instances",
        ok && checked > 0,
    );
}

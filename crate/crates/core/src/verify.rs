//! The brute-force oracle: builds each theorem's LHS product, extracts the
//! constant term, and compares against the closed-form RHS by
//! cross-multiplication. Also hosts the sweep runner and the lemma
//! property suites.

use crate::identities::{
    dixon_lhs, inversion_set, rhs_at_neg_b, rhs_pole_points, rhs_value, rhs_zero_points,
    IdentityError, IdentityInstance, Theorem,
};
use crate::laurent::{
    andrews_spec, bg_spec, build_product, dn_spec, dyson_classical_spec, monomial_prefactor,
    LaurentError, LaurentPoly, ProductSpec, DEFAULT_TERM_CEILING,
};
use crate::qring::{QPoly, QRat};
use crate::tournament::{GroundSet, QSet};
use itertools::Itertools;
use num::{BigRational, One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Term-count ceiling, overridable via the CT_WORKBENCH_CEILING env var.
pub fn default_ceiling() -> usize {
    std::env::var("CT_WORKBENCH_CEILING")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&c| c >= 1)
        .unwrap_or(DEFAULT_TERM_CEILING)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    #[serde(rename = "SKIPPED")]
    Skipped(String),
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Match => write!(f, "MATCH"),
            Verdict::Mismatch => write!(f, "MISMATCH"),
            Verdict::Skipped(reason) => write!(f, "SKIPPED({reason})"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub instance: IdentityInstance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_ct: Option<QPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<QRat>,
    pub verdict: Verdict,
    pub millis: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transitive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
}

impl VerificationReport {
    pub fn is_match(&self) -> bool {
        self.verdict == Verdict::Match
    }
}

fn skip(e: LaurentError) -> String {
    e.to_string()
}

/// The constant term of the instance's LHS product, fully expanded.
pub fn build_lhs_ct(inst: &IdentityInstance, ceiling: usize) -> Result<QPoly, String> {
    match inst.theorem {
        Theorem::Dixon => Ok(QPoly::constant(dixon_lhs(inst.n as u64))),
        Theorem::Dyson => {
            let f = build_product(&dyson_classical_spec(&inst.a), ceiling).map_err(skip)?;
            Ok(f.ct_all())
        }
        Theorem::QDyson => {
            let f = build_product(&andrews_spec(&inst.a), ceiling).map_err(skip)?;
            Ok(f.ct_all())
        }
        Theorem::Bg => {
            let q = inst.q.as_ref().expect("BG instance carries Q");
            let pairs: Vec<_> = q.pairs().iter().copied().collect();
            let pre = monomial_prefactor(inst.n + 1, &pairs, None).map_err(skip)?;
            let spec = bg_spec(inst.n, &inst.a).map_err(skip)?;
            let prod = build_product(&spec, ceiling).map_err(skip)?;
            Ok(pre.try_mul(&prod, ceiling).map_err(skip)?.ct_all())
        }
        Theorem::Main1 | Theorem::Main2 => {
            let q = inst.q.as_ref().expect("MAIN instance carries Q");
            let pairs: Vec<_> = q.pairs().iter().copied().collect();
            let den_var = if inst.theorem == Theorem::Main1 { 1 } else { 2 };
            let pre =
                monomial_prefactor(inst.n + 1, &pairs, Some((0, den_var))).map_err(skip)?;
            let spec = dn_spec(&inst.a).map_err(skip)?;
            let prod = build_product(&spec, ceiling).map_err(skip)?;
            Ok(pre.try_mul(&prod, ceiling).map_err(skip)?.ct_all())
        }
        Theorem::CorI | Theorem::CorII => {
            let sigma = inst.sigma.as_ref().expect("COR instance carries sigma");
            // the inversion pair (p, s) contributes x_p/x_s, which is
            // monomial_prefactor's pair (s, p)
            let pairs: Vec<_> = inversion_set(sigma)
                .into_iter()
                .map(|(p, s)| (s, p))
                .collect();
            let extra = if inst.theorem == Theorem::CorI {
                (sigma[0], sigma[1])
            } else {
                (sigma[0], sigma[2])
            };
            let pre = monomial_prefactor(inst.n + 1, &pairs, Some(extra)).map_err(skip)?;
            let spec = bg_spec(inst.n, &inst.a).map_err(skip)?;
            let prod = build_product(&spec, ceiling).map_err(skip)?;
            Ok(pre.try_mul(&prod, ceiling).map_err(skip)?.ct_all())
        }
        Theorem::X1 | Theorem::X2 => {
            // x_0/x_d times D_n((0, a_1..a_n)): the a_0 = 0 anchor product
            let den_var = if inst.theorem == Theorem::X1 { 1 } else { 2 };
            let mut a0 = Vec::with_capacity(inst.a.len() + 1);
            a0.push(0u32);
            a0.extend_from_slice(&inst.a);
            let pre = monomial_prefactor(inst.n + 1, &[], Some((0, den_var))).map_err(skip)?;
            let spec = dn_spec(&a0).map_err(skip)?;
            let prod = build_product(&spec, ceiling).map_err(skip)?;
            Ok(pre.try_mul(&prod, ceiling).map_err(skip)?.ct_all())
        }
    }
}

/// Verdict MATCH iff lhs_ct * rhs.den = rhs.num exactly.
pub fn verify_instance(inst: &IdentityInstance, ceiling: usize) -> VerificationReport {
    let start = Instant::now();
    let mut transitive = None;
    let mut sigma = inst.sigma.clone();
    if let Some(q) = &inst.q {
        let t = q.e_bar();
        let tr = t.is_transitive();
        transitive = Some(tr);
        if tr {
            sigma = t.winner_permutation().ok();
        }
    }
    let outcome = build_lhs_ct(inst, ceiling)
        .and_then(|lhs| match rhs_value(inst) {
            Ok(rhs) => Ok((lhs, rhs)),
            Err(e) => Err(e.to_string()),
        });
    let (lhs_ct, rhs, verdict) = match outcome {
        Ok((lhs, rhs)) => {
            let verdict = if lhs.mul(rhs.den()) == *rhs.num() {
                Verdict::Match
            } else {
                Verdict::Mismatch
            };
            (Some(lhs), Some(rhs), verdict)
        }
        Err(reason) => (None, None, Verdict::Skipped(reason)),
    };
    VerificationReport {
        instance: inst.clone(),
        lhs_ct,
        rhs,
        verdict,
        millis: start.elapsed().as_millis(),
        transitive,
        sigma,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QPolicy {
    AllSubsets,
    EmptyOnly,
    List(Vec<Vec<(usize, usize)>>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepSpec {
    pub theorem: Theorem,
    pub n_min: usize,
    pub n_max: usize,
    /// max a_i for vertex exponents; the minimum is theorem-dependent
    pub a_max: u32,
    /// max a_0 where the theorem has one (defaults to a_max)
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a0_max: Option<u32>,
    /// optional cap on the exponent sum
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_sum_max: Option<u32>,
    #[serde(default = "default_q_policy")]
    pub q_policy: QPolicy,
}

fn default_q_policy() -> QPolicy {
    QPolicy::AllSubsets
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct SweepSummary {
    pub total: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub skipped: usize,
}

impl SweepSummary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = SweepSummary {
            total: reports.len(),
            ..Default::default()
        };
        for r in reports {
            match r.verdict {
                Verdict::Match => s.matches += 1,
                Verdict::Mismatch => s.mismatches += 1,
                Verdict::Skipped(_) => s.skipped += 1,
            }
        }
        s
    }
}

fn a_vectors(len: usize, lo: u32, hi: u32, sum_max: Option<u32>) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![vec![]];
    }
    (0..len)
        .map(|_| lo..=hi)
        .multi_cartesian_product()
        .filter(|a| sum_max.is_none_or(|s| a.iter().sum::<u32>() <= s))
        .collect()
}

fn q_sets(n: usize, ground: GroundSet, policy: &QPolicy) -> Result<Vec<QSet>, String> {
    match policy {
        QPolicy::AllSubsets => Ok(QSet::all_subsets(n, ground)),
        QPolicy::EmptyOnly => Ok(vec![QSet::empty(n, ground)]),
        QPolicy::List(entries) => entries
            .iter()
            .map(|pairs| {
                QSet::new(n, ground, pairs.iter().copied()).map_err(|e| e.to_string())
            })
            .collect(),
    }
}

/// Deterministic lexicographic instance enumeration for the sweep.
pub fn enumerate_instances(spec: &SweepSpec) -> Result<Vec<IdentityInstance>, String> {
    let mut out = Vec::new();
    let mk = |t, n, a: Vec<u32>, q: Option<Vec<(usize, usize)>>, s: Option<Vec<usize>>| {
        IdentityInstance::new(t, n, a, q, s).map_err(|e| e.to_string())
    };
    for n in spec.n_min..=spec.n_max {
        match spec.theorem {
            Theorem::Dixon => out.push(mk(Theorem::Dixon, n, vec![], None, None)?),
            Theorem::Dyson | Theorem::QDyson => {
                for a in a_vectors(n + 1, 0, spec.a_max, spec.a_sum_max) {
                    out.push(mk(spec.theorem, n, a, None, None)?);
                }
            }
            Theorem::Bg => {
                for q in q_sets(n, GroundSet::E, &spec.q_policy)? {
                    for a in a_vectors(n, 1, spec.a_max, spec.a_sum_max) {
                        let pairs = q.pairs().iter().copied().collect();
                        out.push(mk(Theorem::Bg, n, a, Some(pairs), None)?);
                    }
                }
            }
            Theorem::Main1 | Theorem::Main2 => {
                let ground = if spec.theorem == Theorem::Main1 {
                    GroundSet::Q1
                } else {
                    GroundSet::Q2
                };
                let a0_max = spec.a0_max.unwrap_or(spec.a_max);
                for q in q_sets(n, ground, &spec.q_policy)? {
                    for a0 in 0..=a0_max {
                        for rest in a_vectors(n, 1, spec.a_max, spec.a_sum_max) {
                            let mut a = vec![a0];
                            a.extend(rest);
                            let pairs = q.pairs().iter().copied().collect();
                            out.push(mk(spec.theorem, n, a, Some(pairs), None)?);
                        }
                    }
                }
            }
            Theorem::CorI | Theorem::CorII => {
                for sigma in (1..=n).permutations(n) {
                    for a in a_vectors(n, 1, spec.a_max, spec.a_sum_max) {
                        out.push(mk(spec.theorem, n, a, None, Some(sigma.clone()))?);
                    }
                }
            }
            Theorem::X1 | Theorem::X2 => {
                for a in a_vectors(n, 1, spec.a_max, spec.a_sum_max) {
                    out.push(mk(spec.theorem, n, a, None, None)?);
                }
            }
        }
    }
    Ok(out)
}

/// Run every instance of the sweep in parallel; report order follows the
/// deterministic enumeration order regardless of completion order.
pub fn sweep(spec: &SweepSpec, ceiling: usize) -> Result<Vec<VerificationReport>, String> {
    let instances = enumerate_instances(spec)?;
    Ok(instances
        .par_iter()
        .map(|inst| verify_instance(inst, ceiling))
        .collect())
}

/// Lemma "degree bound" check: with fixed a_1..a_n and the prefactor
/// x_0^k / x_1^k, the map a_0 -> CT evaluated at q0 = 7/5 is a polynomial
/// of degree at most d = |a| - k - n in t = q0^{a_0}. Fit on a_0 = 0..d,
/// verify exactly at a_0 = d + 1 (negative d: the CT must vanish for all
/// a_0 in 0..2).
pub fn check_degree_bound(a: &[u32], k: u32, ceiling: usize) -> Result<bool, String> {
    let n = a.len();
    let q0 = BigRational::new(7.into(), 5.into());
    let abs_a: i64 = a.iter().map(|&v| v as i64).sum();
    let d = abs_a - k as i64 - n as i64;

    let ct_at = |a0: u32| -> Result<BigRational, String> {
        let mut full = Vec::with_capacity(n + 1);
        full.push(a0);
        full.extend_from_slice(a);
        let spec = dn_spec(&full).map_err(|e| e.to_string())?;
        let prod = build_product(&spec, ceiling).map_err(|e| e.to_string())?;
        let mut exps = vec![0i64; n + 1];
        exps[0] = k as i64;
        exps[1] = -(k as i64);
        let pre = LaurentPoly::monomial(n + 1, exps, QPoly::one());
        Ok(pre
            .try_mul(&prod, ceiling)
            .map_err(|e| e.to_string())?
            .ct_all()
            .eval(&q0))
    };

    if d < 0 {
        for a0 in 0..=2u32 {
            if !ct_at(a0)?.is_zero() {
                return Ok(false);
            }
        }
        return Ok(true);
    }

    let d = d as u32;
    let ts: Vec<BigRational> = (0..=d + 1)
        .map(|a0| num::pow::pow(q0.clone(), a0 as usize))
        .collect();
    let ys: Vec<BigRational> = (0..=d + 1).map(ct_at).collect::<Result<_, _>>()?;

    // Lagrange-evaluate the degree-d fit through points 0..d at t_{d+1}
    let query = &ts[d as usize + 1];
    let mut predicted = BigRational::zero();
    for i in 0..=d as usize {
        let mut basis = BigRational::one();
        for j in 0..=d as usize {
            if i != j {
                basis *= (query - &ts[j]) / (&ts[i] - &ts[j]);
            }
        }
        predicted += &ys[i] * basis;
    }
    Ok(predicted == ys[d as usize + 1])
}

/// Lemma "integer import" check: every k-vector with 1 <= k_i <= sum(a)-1
/// satisfies "1 <= k_i <= a_i - 1 for some i, or
/// 1 - a_j <= k_i - k_j <= a_i - 1 for some i < j".
#[allow(clippy::int_plus_one)] // bounds kept in the lemma's literal form
pub fn check_lemma_import1(s_max: usize, a_max: u32) -> bool {
    for s in 1..=s_max {
        for a in a_vectors(s, 1, a_max, None) {
            let total: u32 = a.iter().sum();
            if total < 2 {
                continue; // no k-vector range to check
            }
            for k in (0..s)
                .map(|_| 1..=(total - 1) as i64)
                .multi_cartesian_product()
            {
                let clause1 = (0..s).any(|i| 1 <= k[i] && k[i] <= a[i] as i64 - 1);
                let clause2 = (0..s).tuple_combinations().any(|(i, j)| {
                    let diff = k[i] - k[j];
                    1 - a[j] as i64 <= diff && diff <= a[i] as i64 - 1
                });
                if !clause1 && !clause2 {
                    return false;
                }
            }
        }
    }
    true
}

/// Reflection identity: for all Q subsets of E_0 = {(i,j) | 0<=i<j<=n}
/// and all 1 <= a_i <= a_bound,
/// prefactor(Q) * D_n(a) = (-1)^{|Q|} * the Q-flipped product, where a
/// flipped pair (i,j) contributes (x_j/x_i)_{a_j} (q x_i/x_j)_{a_i - 1}.
pub fn check_reflection(n: usize, a_bound: u32, ceiling: usize) -> Result<bool, String> {
    let e0: Vec<(usize, usize)> = (0..=n)
        .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
        .collect();
    let check_one = |a: &Vec<u32>| -> Result<bool, String> {
        let dn = build_product(&dn_spec(a).map_err(|e| e.to_string())?, ceiling)
            .map_err(|e| e.to_string())?;
        for mask in 0u32..1 << e0.len() {
            let q: Vec<(usize, usize)> = e0
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p)
                .collect();

            let pre = monomial_prefactor(n + 1, &q, None).map_err(|e| e.to_string())?;
            let lhs = pre.try_mul(&dn, ceiling).map_err(|e| e.to_string())?;

            let mut spec = ProductSpec::new(n + 1);
            for &(i, j) in &e0 {
                if q.contains(&(i, j)) {
                    spec = spec.pochhammer(j, i, 0, a[j]).pochhammer(i, j, 1, a[i] - 1);
                } else {
                    spec = spec.pochhammer(i, j, 0, a[i]).pochhammer(j, i, 1, a[j] - 1);
                }
            }
            let mut rhs = build_product(&spec, ceiling).map_err(|e| e.to_string())?;
            if q.len() % 2 == 1 {
                rhs = rhs.neg();
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    };
    a_vectors(n + 1, 1, a_bound, None)
        .par_iter()
        .map(check_one)
        .try_reduce(|| true, |x, y| Ok(x && y))
}

/// Zero-point property: the RHS vanishes at every b in rhs_zero_points
/// and every pole point is rejected as a zero denominator.
pub fn check_zero_points(inst: &IdentityInstance) -> Result<bool, IdentityError> {
    for b in rhs_zero_points(inst)? {
        if !rhs_at_neg_b(inst, b)?.is_zero() {
            return Ok(false);
        }
    }
    for b in rhs_pole_points(inst)? {
        if !matches!(
            rhs_at_neg_b(inst, b),
            Err(IdentityError::PoleSubstitution(_))
        ) {
            return Ok(false);
        }
    }
    Ok(true)
}

//! Closed-form right-hand sides of every identity, as exact QRat values,
//! plus the instance type naming a (theorem, n, a, Q-or-sigma) problem.

use crate::qring::{qfac, qmultinomial, QPoly, QRat};
use crate::tournament::{GroundSet, QSet, TournamentError};
use num::{BigInt, One};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("substitution q^a0 = q^-{0} hits a pole (denominator zero)")]
    PoleSubstitution(u32),
    #[error("operation requires a transitive E-bar-Q instance")]
    NontransitiveInstance,
    #[error(transparent)]
    Tournament(#[from] TournamentError),
    #[error(transparent)]
    QRing(#[from] crate::qring::QRingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "DIXON")]
    Dixon,
    #[serde(rename = "DYSON")]
    Dyson,
    #[serde(rename = "QDYSON")]
    QDyson,
    #[serde(rename = "BG")]
    Bg,
    #[serde(rename = "MAIN1")]
    Main1,
    #[serde(rename = "MAIN2")]
    Main2,
    #[serde(rename = "COR_I")]
    CorI,
    #[serde(rename = "COR_II")]
    CorII,
    #[serde(rename = "X1")]
    X1,
    #[serde(rename = "X2")]
    X2,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Dixon => "DIXON",
            Theorem::Dyson => "DYSON",
            Theorem::QDyson => "QDYSON",
            Theorem::Bg => "BG",
            Theorem::Main1 => "MAIN1",
            Theorem::Main2 => "MAIN2",
            Theorem::CorI => "COR_I",
            Theorem::CorII => "COR_II",
            Theorem::X1 => "X1",
            Theorem::X2 => "X2",
        }
    }

    pub fn ground_set(self) -> Option<GroundSet> {
        match self {
            Theorem::Bg => Some(GroundSet::E),
            Theorem::Main1 => Some(GroundSet::Q1),
            Theorem::Main2 => Some(GroundSet::Q2),
            _ => None,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "DIXON" => Ok(Theorem::Dixon),
            "DYSON" => Ok(Theorem::Dyson),
            "QDYSON" => Ok(Theorem::QDyson),
            "BG" => Ok(Theorem::Bg),
            "MAIN1" => Ok(Theorem::Main1),
            "MAIN2" => Ok(Theorem::Main2),
            "COR_I" | "CORI" => Ok(Theorem::CorI),
            "COR_II" | "CORII" => Ok(Theorem::CorII),
            "X1" => Ok(Theorem::X1),
            "X2" => Ok(Theorem::X2),
            other => Err(format!("unknown theorem {other:?}")),
        }
    }
}

/// A (theorem, n, a, Q-or-sigma) problem statement. `n` is the number of
/// tournament vertices; MAIN1/MAIN2 carry a_0 at the front of `a`, the
/// other q-theorems index `a` by vertex 1..n.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityInstance {
    pub theorem: Theorem,
    pub n: usize,
    pub a: Vec<u32>,
    pub q: Option<QSet>,
    pub sigma: Option<Vec<usize>>,
}

impl IdentityInstance {
    pub fn new(
        theorem: Theorem,
        n: usize,
        a: Vec<u32>,
        q_pairs: Option<Vec<(usize, usize)>>,
        sigma: Option<Vec<usize>>,
    ) -> Result<Self, IdentityError> {
        let bad = |msg: String| Err(IdentityError::InvalidInstance(msg));
        let needs_positive = |a: &[u32]| a.iter().all(|&v| v >= 1);
        match theorem {
            Theorem::Dixon => {
                if !a.is_empty() {
                    return bad("DIXON takes no a-vector".into());
                }
            }
            Theorem::Dyson | Theorem::QDyson => {
                if a.len() != n + 1 {
                    return bad(format!("{theorem} needs n+1 = {} exponents", n + 1));
                }
            }
            Theorem::Bg => {
                if a.len() != n {
                    return bad(format!("BG needs n = {n} exponents"));
                }
                if !needs_positive(&a) {
                    return bad("BG needs a_i >= 1".into());
                }
            }
            Theorem::Main1 | Theorem::Main2 => {
                let min_n = if theorem == Theorem::Main1 { 2 } else { 3 };
                if n < min_n {
                    return bad(format!("{theorem} needs n >= {min_n}"));
                }
                if a.len() != n + 1 {
                    return bad(format!("{theorem} needs a_0..a_n = {} exponents", n + 1));
                }
                if !needs_positive(&a[1..]) {
                    return bad(format!("{theorem} needs a_j >= 1 for j >= 1"));
                }
            }
            Theorem::CorI | Theorem::CorII => {
                let min_n = if theorem == Theorem::CorI { 3 } else { 4 };
                if n < min_n {
                    return bad(format!("{theorem} needs n >= {min_n}"));
                }
                if a.len() != n {
                    return bad(format!("{theorem} needs n = {n} exponents"));
                }
                if !needs_positive(&a) {
                    return bad(format!("{theorem} needs a_i >= 1"));
                }
                let sigma = sigma
                    .as_ref()
                    .ok_or_else(|| IdentityError::InvalidInstance(format!("{theorem} needs sigma")))?;
                let mut seen: Vec<usize> = sigma.clone();
                seen.sort_unstable();
                if seen != (1..=n).collect::<Vec<_>>() {
                    return bad(format!("sigma must be a permutation of 1..{n}"));
                }
            }
            Theorem::X1 | Theorem::X2 => {
                let min_n = if theorem == Theorem::X1 { 2 } else { 3 };
                if n < min_n {
                    return bad(format!("{theorem} needs n >= {min_n}"));
                }
                if a.len() != n {
                    return bad(format!("{theorem} needs n = {n} exponents"));
                }
                if !needs_positive(&a) {
                    return bad(format!("{theorem} needs a_i >= 1"));
                }
            }
        }
        let q = match (theorem.ground_set(), q_pairs) {
            (Some(ground), pairs) => Some(QSet::new(n, ground, pairs.unwrap_or_default())?),
            (None, Some(pairs)) if !pairs.is_empty() => {
                return bad(format!("{theorem} takes no Q set"));
            }
            (None, _) => None,
        };
        if sigma.is_some() && !matches!(theorem, Theorem::CorI | Theorem::CorII) {
            return bad(format!("{theorem} takes no sigma"));
        }
        Ok(IdentityInstance {
            theorem,
            n,
            a,
            q,
            sigma,
        })
    }

    /// Partial sums sigma_k of the vertex exponents in sigma order;
    /// derived on demand, never stored.
    pub fn sigma_partial_sums(vertex_a: &[u32], sigma: &[usize]) -> Vec<u32> {
        let mut sums = Vec::with_capacity(sigma.len());
        let mut acc = 0u32;
        for &v in sigma {
            acc += vertex_a[v - 1];
            sums.push(acc);
        }
        sums
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    theorem: Theorem,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default)]
    a: Vec<u32>,
    #[serde(rename = "Q", default, skip_serializing_if = "Option::is_none")]
    q: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma: Option<Vec<usize>>,
}

impl Serialize for IdentityInstance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        InstanceJson {
            theorem: self.theorem,
            n: Some(self.n),
            a: self.a.clone(),
            q: self
                .q
                .as_ref()
                .map(|q| q.pairs().iter().copied().collect()),
            sigma: self.sigma.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IdentityInstance {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = InstanceJson::deserialize(deserializer)?;
        let n = raw.n.unwrap_or_else(|| match raw.theorem {
            Theorem::Dixon => 0,
            Theorem::Dyson | Theorem::QDyson | Theorem::Main1 | Theorem::Main2 => {
                raw.a.len().saturating_sub(1)
            }
            _ => raw.a.len(),
        });
        IdentityInstance::new(raw.theorem, n, raw.a, raw.q, raw.sigma)
            .map_err(D::Error::custom)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

pub fn binomial(m: u64, k: u64) -> BigInt {
    if k > m {
        return BigInt::from(0);
    }
    let mut out = BigInt::one();
    for t in 0..k {
        out = out * BigInt::from(m - t) / BigInt::from(t + 1);
    }
    out
}

/// Dixon's alternating sum: sum_{k=-n}^{n} (-1)^k C(2n, k+n)^3.
pub fn dixon_lhs(n: u64) -> BigInt {
    let mut acc = BigInt::from(0);
    for k in 0..=(2 * n) {
        let term = binomial(2 * n, k).pow(3);
        // (-1)^{k-n}
        if (k + n).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// (3n)! / (n!)^3.
pub fn dixon_rhs(n: u64) -> BigInt {
    factorial(3 * n) / factorial(n).pow(3)
}

/// Multinomial coefficient (sum a)! / prod a_i!.
pub fn dyson_rhs(a: &[u32]) -> BigInt {
    let total: u64 = a.iter().map(|&v| v as u64).sum();
    let mut out = factorial(total);
    for &ai in a {
        out /= factorial(ai as u64);
    }
    out
}

/// The Andrews q-Dyson right-hand side: the q-multinomial coefficient.
pub fn qdyson_rhs(a: &[u32]) -> QPoly {
    qmultinomial(a)
}

fn sign_poly(parity: usize) -> QPoly {
    if parity.is_multiple_of(2) {
        QPoly::one()
    } else {
        QPoly::from_i64(-1)
    }
}

/// prod_{i=1}^{n} (1 - q^{a_{sigma(i)}}) / (1 - q^{offset + sigma_i}) as
/// separate numerator/denominator polynomials.
fn sigma_ratio(vertex_a: &[u32], sigma: &[usize], offset: u32) -> (QPoly, QPoly) {
    let sums = IdentityInstance::sigma_partial_sums(vertex_a, sigma);
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for (i, &v) in sigma.iter().enumerate() {
        num = num.mul(&QPoly::one_minus_q_pow(vertex_a[v - 1]));
        den = den.mul(&QPoly::one_minus_q_pow(offset + sums[i]));
    }
    (num, den)
}

/// Bressoud-Goulden RHS (zero when E-bar-Q is nontransitive).
pub fn bg_rhs(a: &[u32], q: &QSet) -> Result<QRat, IdentityError> {
    let t = q.e_bar();
    if !t.is_transitive() {
        return Ok(QRat::zero());
    }
    let sigma = t.winner_permutation()?;
    let (rnum, rden) = sigma_ratio(a, &sigma, 0);
    let num = sign_poly(q.len()).mul(&qmultinomial(a)).mul(&rnum);
    Ok(QRat::new(num, rden)?)
}

/// Main theorem 1 RHS; `a` is (a_0, a_1, ..., a_n).
pub fn main1_rhs(a: &[u32], q1: &QSet) -> Result<QRat, IdentityError> {
    let t = q1.e_bar();
    if !t.is_transitive() {
        return Ok(QRat::zero());
    }
    let sigma = t.winner_permutation()?;
    let a0 = a[0];
    let va = &a[1..];
    let (rnum, rden) = sigma_ratio(va, &sigma, a0);
    let head = QPoly::q_pow(va[sigma[0] - 1]).sub(&QPoly::q_pow(va[sigma[1] - 1]));
    let num = sign_poly(q1.len())
        .mul(&head)
        .mul(&qmultinomial(a))
        .mul(&rnum);
    let den = QPoly::one_minus_q_pow(a0 + va[sigma[1] - 1]).mul(&rden);
    Ok(QRat::new(num, den)?)
}

/// Main theorem 2 RHS; `a` is (a_0, a_1, ..., a_n).
pub fn main2_rhs(a: &[u32], q2: &QSet) -> Result<QRat, IdentityError> {
    let t = q2.e_bar();
    if !t.is_transitive() {
        return Ok(QRat::zero());
    }
    let sigma = t.winner_permutation()?;
    let a0 = a[0];
    let va = &a[1..];
    let (rnum, rden) = sigma_ratio(va, &sigma, a0);
    let head = QPoly::one()
        .add(&QPoly::q_pow(va[sigma[0] - 1]))
        .mul(&QPoly::q_pow(va[sigma[1] - 1]).sub(&QPoly::q_pow(va[sigma[2] - 1])));
    let num = sign_poly(q2.len())
        .mul(&head)
        .mul(&qmultinomial(a))
        .mul(&rnum);
    let den =
        QPoly::one_minus_q_pow(a0 + va[sigma[0] - 1] + va[sigma[2] - 1]).mul(&rden);
    Ok(QRat::new(num, den)?)
}

/// Inversion set of sigma: pairs (sigma(i), sigma(j)) with i < j and
/// sigma(i) > sigma(j).
pub fn inversion_set(sigma: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..sigma.len() {
        for j in (i + 1)..sigma.len() {
            if sigma[i] > sigma[j] {
                out.push((sigma[i], sigma[j]));
            }
        }
    }
    out
}

/// Corollary part (i) RHS; `a` indexed by vertex 1..n.
pub fn cor_i_rhs(a: &[u32], sigma: &[usize]) -> Result<QRat, IdentityError> {
    let inv = inversion_set(sigma);
    let (rnum, rden) = sigma_ratio(a, sigma, 0);
    let head = QPoly::q_pow(a[sigma[1] - 1]).sub(&QPoly::q_pow(a[sigma[2] - 1]));
    let num = sign_poly(inv.len())
        .mul(&head)
        .mul(&qmultinomial(a))
        .mul(&rnum);
    let den = QPoly::one_minus_q_pow(a[sigma[0] - 1] + a[sigma[2] - 1]).mul(&rden);
    Ok(QRat::new(num, den)?)
}

/// Corollary part (ii) RHS; `a` indexed by vertex 1..n.
pub fn cor_ii_rhs(a: &[u32], sigma: &[usize]) -> Result<QRat, IdentityError> {
    let inv = inversion_set(sigma);
    let (rnum, rden) = sigma_ratio(a, sigma, 0);
    let head = QPoly::one()
        .add(&QPoly::q_pow(a[sigma[1] - 1]))
        .mul(&QPoly::q_pow(a[sigma[2] - 1]).sub(&QPoly::q_pow(a[sigma[3] - 1])));
    let num = sign_poly(inv.len())
        .mul(&head)
        .mul(&qmultinomial(a))
        .mul(&rnum);
    let den = QPoly::one_minus_q_pow(
        a[sigma[0] - 1] + a[sigma[1] - 1] + a[sigma[3] - 1],
    )
    .mul(&rden);
    Ok(QRat::new(num, den)?)
}

/// The b = 0 anchor value of the x_0/x_1 product (Lemma x1 closed form).
pub fn x1_rhs(a: &[u32]) -> Result<QRat, IdentityError> {
    let identity: Vec<usize> = (1..=a.len()).collect();
    let (rnum, rden) = sigma_ratio(a, &identity, 0);
    let head = QPoly::q_pow(a[0]).sub(&QPoly::q_pow(a[1]));
    let num = head.mul(&qmultinomial(a)).mul(&rnum);
    let den = QPoly::one_minus_q_pow(a[1]).mul(&rden);
    Ok(QRat::new(num, den)?)
}

/// The b = 0 anchor value of the x_0/x_2 product (Lemma x2 closed form).
pub fn x2_rhs(a: &[u32]) -> Result<QRat, IdentityError> {
    let identity: Vec<usize> = (1..=a.len()).collect();
    let (rnum, rden) = sigma_ratio(a, &identity, 0);
    let head = QPoly::one()
        .add(&QPoly::q_pow(a[0]))
        .mul(&QPoly::q_pow(a[1]).sub(&QPoly::q_pow(a[2])));
    let num = head.mul(&qmultinomial(a)).mul(&rnum);
    let den = QPoly::one_minus_q_pow(a[0] + a[2]).mul(&rden);
    Ok(QRat::new(num, den)?)
}

/// Evaluate the RHS of the instance's theorem.
pub fn rhs_value(inst: &IdentityInstance) -> Result<QRat, IdentityError> {
    match inst.theorem {
        Theorem::Dixon => Ok(QRat::from_poly(QPoly::constant(dixon_rhs(inst.n as u64)))),
        Theorem::Dyson => Ok(QRat::from_poly(QPoly::constant(dyson_rhs(&inst.a)))),
        Theorem::QDyson => Ok(QRat::from_poly(qdyson_rhs(&inst.a))),
        Theorem::Bg => bg_rhs(&inst.a, inst.q.as_ref().unwrap()),
        Theorem::Main1 => main1_rhs(&inst.a, inst.q.as_ref().unwrap()),
        Theorem::Main2 => main2_rhs(&inst.a, inst.q.as_ref().unwrap()),
        Theorem::CorI => cor_i_rhs(&inst.a, inst.sigma.as_ref().unwrap()),
        Theorem::CorII => cor_ii_rhs(&inst.a, inst.sigma.as_ref().unwrap()),
        Theorem::X1 => x1_rhs(&inst.a),
        Theorem::X2 => x2_rhs(&inst.a),
    }
}

/// Pieces of a transitive MAIN1/MAIN2 RHS needed for the zero/pole
/// analysis in q^{a_0}.
struct A0Profile {
    sigma: Vec<usize>,
    sums: Vec<u32>,
    extra: u32,
    sign: usize,
}

fn a0_profile(inst: &IdentityInstance) -> Result<A0Profile, IdentityError> {
    let q = inst.q.as_ref().ok_or_else(|| {
        IdentityError::InvalidInstance("zero-point analysis needs MAIN1 or MAIN2".into())
    })?;
    let t = q.e_bar();
    if !t.is_transitive() {
        return Err(IdentityError::NontransitiveInstance);
    }
    let sigma = t.winner_permutation()?;
    let va = &inst.a[1..];
    let sums = IdentityInstance::sigma_partial_sums(va, &sigma);
    let extra = match inst.theorem {
        Theorem::Main1 => va[sigma[1] - 1],
        Theorem::Main2 => va[sigma[0] - 1] + va[sigma[2] - 1],
        _ => {
            return Err(IdentityError::InvalidInstance(
                "zero-point analysis needs MAIN1 or MAIN2".into(),
            ))
        }
    };
    Ok(A0Profile {
        sigma,
        sums,
        extra,
        sign: q.len(),
    })
}

/// The integers b for which substituting q^{a_0} = q^{-b} makes the RHS
/// vanish: {1..s_n} minus the pole points {sigma_1..sigma_n} minus the
/// extra denominator exponent.
pub fn rhs_zero_points(inst: &IdentityInstance) -> Result<BTreeSet<u32>, IdentityError> {
    let prof = a0_profile(inst)?;
    let s_n = *prof.sums.last().unwrap();
    let mut out: BTreeSet<u32> = (1..=s_n).collect();
    for s in &prof.sums {
        out.remove(s);
    }
    out.remove(&prof.extra);
    Ok(out)
}

/// The pole points of the RHS in q^{a_0}: the partial sums sigma_k and
/// the extra denominator exponent.
pub fn rhs_pole_points(inst: &IdentityInstance) -> Result<BTreeSet<u32>, IdentityError> {
    let prof = a0_profile(inst)?;
    let mut out: BTreeSet<u32> = prof.sums.iter().copied().collect();
    out.insert(prof.extra);
    Ok(out)
}

/// `1 - q^c` as an exact rational function in q, for c of either sign.
fn one_minus_qpow(c: i64) -> QRat {
    if c >= 0 {
        QRat::from_poly(QPoly::one_minus_q_pow(c as u32))
    } else {
        let k = (-c) as u32;
        // 1 - q^{-k} = -(1 - q^k)/q^k
        QRat::new(QPoly::one_minus_q_pow(k).neg(), QPoly::q_pow(k)).unwrap()
    }
}

/// The MAIN1/MAIN2 RHS with q^{a_0} replaced by q^{-b}, handled as an
/// exact rational function of q. Rejected when b lands on a pole.
pub fn rhs_at_neg_b(inst: &IdentityInstance, b: u32) -> Result<QRat, IdentityError> {
    let prof = a0_profile(inst)?;
    if prof.sums.contains(&b) || prof.extra == b {
        return Err(IdentityError::PoleSubstitution(b));
    }
    let va = &inst.a[1..];
    let s_n = *prof.sums.last().unwrap();

    let head = match inst.theorem {
        Theorem::Main1 => QRat::from_poly(
            QPoly::q_pow(va[prof.sigma[0] - 1]).sub(&QPoly::q_pow(va[prof.sigma[1] - 1])),
        ),
        Theorem::Main2 => QRat::from_poly(
            QPoly::one()
                .add(&QPoly::q_pow(va[prof.sigma[0] - 1]))
                .mul(
                    &QPoly::q_pow(va[prof.sigma[1] - 1])
                        .sub(&QPoly::q_pow(va[prof.sigma[2] - 1])),
                ),
        ),
        _ => unreachable!(),
    };

    let mut value = QRat::from_poly(sign_poly(prof.sign)).mul(&head);

    // 1 / (1 - q^{a_0 + extra}) at a_0 = -b
    let extra_den = one_minus_qpow(prof.extra as i64 - b as i64);
    value = value.mul(&QRat::new(extra_den.den().clone(), extra_den.num().clone())?);

    // (q)_{a_0 + |a|} / (q)_{a_0} continued as prod_{i=1}^{|a|} (1 - q^{a_0+i})
    for i in 1..=s_n {
        value = value.mul(&one_minus_qpow(i as i64 - b as i64));
    }
    for &ai in va {
        value = value.mul(&QRat::new(QPoly::one(), qfac(ai))?);
    }

    // prod (1 - q^{a_i}) / (1 - q^{a_0 + sigma_i}) at a_0 = -b
    for (i, &v) in prof.sigma.iter().enumerate() {
        value = value.mul(&QRat::from_poly(QPoly::one_minus_q_pow(va[v - 1])));
        let d = one_minus_qpow(prof.sums[i] as i64 - b as i64);
        value = value.mul(&QRat::new(d.den().clone(), d.num().clone())?);
    }
    Ok(value)
}

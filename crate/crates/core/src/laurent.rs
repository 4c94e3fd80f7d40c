//! Sparse multivariate Laurent polynomials in x_0..x_n over Z[q],
//! the product builders for every left-hand side, and constant-term
//! extraction.

use crate::qring::QPoly;
use num::{BigInt, BigRational, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// Default cap on stored terms during product expansion.
pub const DEFAULT_TERM_CEILING: usize = 5_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("term count ceiling of {0} exceeded")]
    CeilingExceeded(usize),
    #[error("variable index {index} out of range for {nvars} variables")]
    VarOutOfRange { index: usize, nvars: usize },
    #[error("pochhammer factor needs distinct variables, got x_{0} twice")]
    EqualVars(usize),
    #[error("relabeling map is not a bijection on its index set")]
    NotABijection,
    #[error("dn_product needs a_j >= 1 for j >= 1, got a_{index} = 0")]
    ZeroOrder { index: usize },
}

/// Sparse Laurent polynomial: exponent vectors (possibly negative) mapped
/// to nonzero QPoly coefficients. All vectors have length `nvars`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, QPoly>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        LaurentPoly::monomial(nvars, vec![0; nvars], QPoly::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<i64>, coeff: QPoly) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        LaurentPoly { nvars, terms }
    }

    /// The single-term polynomial x_num / x_den.
    pub fn var_ratio(nvars: usize, num: usize, den: usize) -> Self {
        let mut exps = vec![0i64; nvars];
        exps[num] += 1;
        exps[den] -= 1;
        LaurentPoly::monomial(nvars, exps, QPoly::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &QPoly)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exps: Vec<i64>, c: &QPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::VarMismatch(self.nvars, other.nvars));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        self.try_add(other).expect("nvars mismatch in add")
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn try_mul(
        &self,
        other: &LaurentPoly,
        ceiling: usize,
    ) -> Result<LaurentPoly, LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::VarMismatch(self.nvars, other.nvars));
        }
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, &c1.mul(c2));
            }
            if out.terms.len() > ceiling {
                return Err(LaurentError::CeilingExceeded(ceiling));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.try_mul(other, usize::MAX).expect("nvars mismatch in mul")
    }

    /// Coefficient of the all-zero exponent vector.
    pub fn ct_all(&self) -> QPoly {
        self.terms
            .get(&vec![0i64; self.nvars])
            .cloned()
            .unwrap_or_else(QPoly::zero)
    }

    /// Sum of the terms with zero exponent in variable i.
    pub fn ct_var(&self, i: usize) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] == 0)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Permute variables per `sigma` (indices absent from the map are
    /// fixed). The map must be a bijection of its key set onto itself.
    pub fn relabel(&self, sigma: &BTreeMap<usize, usize>) -> Result<LaurentPoly, LaurentError> {
        let keys: BTreeSet<usize> = sigma.keys().copied().collect();
        let values: BTreeSet<usize> = sigma.values().copied().collect();
        if keys != values {
            return Err(LaurentError::NotABijection);
        }
        if let Some(&max) = keys.iter().next_back() {
            if max >= self.nvars {
                return Err(LaurentError::VarOutOfRange {
                    index: max,
                    nvars: self.nvars,
                });
            }
        }
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut exps = e.clone();
            for (&from, &to) in sigma {
                exps[to] = e[from];
            }
            out.add_term(exps, c);
        }
        Ok(out)
    }

    /// Substitute an exact rational for q in every coefficient.
    pub fn eval_q(&self, q0: &BigRational) -> BTreeMap<Vec<i64>, BigRational> {
        self.terms
            .iter()
            .filter_map(|(e, c)| {
                let v = c.eval(q0);
                (!v.is_zero()).then(|| (e.clone(), v))
            })
            .collect()
    }
}

/// Canonical textual form: `coeff * x0^e0 x1^e1 ...` terms joined by " + ",
/// exponents (including negative ones) printed explicitly, zero exponents
/// omitted.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    write!(f, " * x{i}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// One factor of a [`ProductSpec`]: a signed monomial `sign * q^qshift *
/// x^exps`, or a q-Pochhammer factor (x_i/x_j * q^qshift)_order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Factor {
    Monomial {
        sign: i8,
        exps: Vec<i64>,
        #[serde(default)]
        qshift: u32,
    },
    Pochhammer {
        i: usize,
        j: usize,
        #[serde(default)]
        qshift: u32,
        order: u32,
    },
}

/// Ordered factor list describing an LHS product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    pub nvars: usize,
    pub factors: Vec<Factor>,
}

impl ProductSpec {
    pub fn new(nvars: usize) -> Self {
        ProductSpec {
            nvars,
            factors: Vec::new(),
        }
    }

    pub fn monomial(mut self, sign: i8, exps: Vec<i64>, qshift: u32) -> Self {
        self.factors.push(Factor::Monomial { sign, exps, qshift });
        self
    }

    /// Append the factor (x_i/x_j * q^qshift)_order.
    pub fn pochhammer(mut self, i: usize, j: usize, qshift: u32, order: u32) -> Self {
        self.factors.push(Factor::Pochhammer {
            i,
            j,
            qshift,
            order,
        });
        self
    }

    pub fn validate(&self) -> Result<(), LaurentError> {
        for f in &self.factors {
            match f {
                Factor::Monomial { exps, .. } => {
                    if exps.len() != self.nvars {
                        return Err(LaurentError::VarMismatch(exps.len(), self.nvars));
                    }
                }
                Factor::Pochhammer { i, j, .. } => {
                    for &v in [i, j] {
                        if v >= self.nvars {
                            return Err(LaurentError::VarOutOfRange {
                                index: v,
                                nvars: self.nvars,
                            });
                        }
                    }
                    if i == j {
                        return Err(LaurentError::EqualVars(*i));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Expand a product spec into a fully multiplied-out Laurent polynomial,
/// pruning zero coefficients after each factor. An empty spec yields 1.
pub fn build_product(spec: &ProductSpec, ceiling: usize) -> Result<LaurentPoly, LaurentError> {
    spec.validate()?;
    let n = spec.nvars;
    let mut acc = LaurentPoly::one(n);
    for f in &spec.factors {
        match f {
            Factor::Monomial { sign, exps, qshift } => {
                let c = if *sign < 0 {
                    QPoly::term(BigInt::from(-1), *qshift)
                } else {
                    QPoly::q_pow(*qshift)
                };
                acc = acc.try_mul(&LaurentPoly::monomial(n, exps.clone(), c), ceiling)?;
            }
            Factor::Pochhammer {
                i,
                j,
                qshift,
                order,
            } => {
                for t in 0..*order {
                    // 1 - x_i/x_j * q^{qshift+t}
                    let mut exps = vec![0i64; n];
                    exps[*i] += 1;
                    exps[*j] -= 1;
                    let binomial = LaurentPoly::one(n).sub(&LaurentPoly::monomial(
                        n,
                        exps,
                        QPoly::q_pow(qshift + t),
                    ));
                    acc = acc.try_mul(&binomial, ceiling)?;
                }
            }
        }
    }
    Ok(acc)
}

/// Dyson's classical product prod_{0 <= i != j <= n} (1 - x_i/x_j)^{a_i};
/// q-free by construction.
pub fn dyson_classical_spec(a: &[u32]) -> ProductSpec {
    let n = a.len();
    let mut spec = ProductSpec::new(n);
    #[allow(clippy::needless_range_loop)] // i, j are symmetric var indices
    for i in 0..n {
        for j in 0..n {
            if i != j {
                // (1 - x_i/x_j)^{a_i} = (x_i/x_j)_{a_i} at q-shift 0 only
                // when a_i <= 1, so emit a_i copies of the plain binomial.
                for _ in 0..a[i] {
                    spec = spec.pochhammer(i, j, 0, 1);
                }
            }
        }
    }
    spec
}

/// The q-Dyson style product D_n(x, a, q) = prod_{0<=i<j<=n}
/// (x_i/x_j)_{a_i} (q x_j/x_i)_{a_j - 1}. Requires a_j >= 1 for j >= 1 so
/// every Pochhammer order is nonnegative.
pub fn dn_spec(a: &[u32]) -> Result<ProductSpec, LaurentError> {
    let n = a.len();
    for (j, &aj) in a.iter().enumerate().skip(1) {
        if aj == 0 {
            return Err(LaurentError::ZeroOrder { index: j });
        }
    }
    let mut spec = ProductSpec::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            spec = spec.pochhammer(i, j, 0, a[i]);
            spec = spec.pochhammer(j, i, 1, a[j] - 1);
        }
    }
    Ok(spec)
}

/// The Andrews q-Dyson product prod_{0<=i<j<=n} (x_i/x_j)_{a_i}
/// (q x_j/x_i)_{a_j}.
pub fn andrews_spec(a: &[u32]) -> ProductSpec {
    let n = a.len();
    let mut spec = ProductSpec::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            spec = spec.pochhammer(i, j, 0, a[i]);
            spec = spec.pochhammer(j, i, 1, a[j]);
        }
    }
    spec
}

/// The Bressoud-Goulden product over vertices 1..n with x_0 unused:
/// prod_{1<=i<j<=n} (x_i/x_j)_{a_i} (q x_j/x_i)_{a_j - 1}, where a[k-1]
/// is the exponent attached to vertex k.
pub fn bg_spec(n: usize, a: &[u32]) -> Result<ProductSpec, LaurentError> {
    assert_eq!(a.len(), n);
    for (k, &ak) in a.iter().enumerate() {
        if ak == 0 {
            return Err(LaurentError::ZeroOrder { index: k + 1 });
        }
    }
    let mut spec = ProductSpec::new(n + 1);
    for i in 1..=n {
        for j in (i + 1)..=n {
            spec = spec.pochhammer(i, j, 0, a[i - 1]);
            spec = spec.pochhammer(j, i, 1, a[j - 1] - 1);
        }
    }
    Ok(spec)
}

/// Single-term prefactor prod_{(i,j) in pairs} x_j/x_i, optionally times
/// x_num/x_den for `extra`.
pub fn monomial_prefactor(
    nvars: usize,
    pairs: &[(usize, usize)],
    extra: Option<(usize, usize)>,
) -> Result<LaurentPoly, LaurentError> {
    let mut exps = vec![0i64; nvars];
    for &(i, j) in pairs {
        for &v in [&i, &j] {
            if v >= nvars {
                return Err(LaurentError::VarOutOfRange {
                    index: v,
                    nvars,
                });
            }
        }
        exps[j] += 1;
        exps[i] -= 1;
    }
    if let Some((num, den)) = extra {
        for &v in [&num, &den] {
            if v >= nvars {
                return Err(LaurentError::VarOutOfRange { index: v, nvars });
            }
        }
        exps[num] += 1;
        exps[den] -= 1;
    }
    Ok(LaurentPoly::monomial(nvars, exps, QPoly::one()))
}

//! Diagonal weight construction carrying countably many generated
//! semi-norms at once.
//!
//! Given an enumeration `alpha_0, alpha_1, ...` of a generating set and
//! weight functions `v_0, v_1, ...` on it, the diagonal weight is
//! `v(alpha_n) = max(1, v_0(alpha_n), ..., v_n(alpha_n))`. The quantitative
//! content is the constant `Q = min(1, q_0, ..., q_m)` with
//! `q_k = v(alpha_k) / |alpha_k|_{v_m}` (and `q_k = 1` when the denominator
//! vanishes): the generated semi-norm of the diagonal dominates `Q` times
//! the one of `v_m`, so it carries every `v_m`.
//!
//! All evaluations are truncated. On stabilized categories the truncation
//! is exact and the domination is a theorem; otherwise both sides are
//! upper bounds and every report states per-value whether it is certified.
//! A `q_k` computed from an upper bound on a nonzero true value only
//! under-estimates the true `q_k`; reports keep the `exact` flag rather
//! than hide this asymmetry.

use crate::exactq::Rational;
use crate::fincat::{Element, PresentedCategory};
use crate::seminorm::{
    eval, eval_generated, EvalError, FamilyEntry, GeneratingFamily, SeminormHandle,
    TruncatedValue, Value,
};
use serde::{Deserialize, Serialize};

/// Ordered, duplicate-free list of elements indexed from zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub elements: Vec<Element>,
}

/// Defect in an enumeration.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("element {index} duplicates an earlier entry")]
    Duplicate { index: usize },
}

impl Enumeration {
    pub fn new(elements: Vec<Element>) -> Result<Self, EnumerationError> {
        for (index, e) in elements.iter().enumerate() {
            if elements[..index].contains(e) {
                return Err(EnumerationError::Duplicate { index });
            }
        }
        Ok(Enumeration { elements })
    }

    /// Enumerates the elements of a generating family in order, keeping the
    /// first occurrence of each element.
    pub fn from_family(fam: &GeneratingFamily) -> Self {
        let mut elements: Vec<Element> = Vec::new();
        for e in &fam.entries {
            let elem = Element {
                object: e.object.clone(),
                vector: e.vector.clone(),
            };
            if !elements.contains(&elem) {
                elements.push(elem);
            }
        }
        Enumeration { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The generating family pairing the first `weights.len()` elements
    /// with the given weights.
    pub fn family_with_weights(&self, weights: &[Rational]) -> GeneratingFamily {
        assert!(weights.len() <= self.len(), "more weights than elements");
        GeneratingFamily {
            entries: self
                .elements
                .iter()
                .zip(weights.iter())
                .map(|(e, w)| FamilyEntry {
                    object: e.object.clone(),
                    vector: e.vector.clone(),
                    weight: w.clone(),
                })
                .collect(),
        }
    }
}

/// Diagonal weights on the first `n_max` elements:
/// `v(alpha_n) = max(1, v_0(alpha_n), ..., v_n(alpha_n))`, where only the
/// families that exist participate. Prefix-stable: the weight at index `n`
/// depends only on entries up to `n`.
pub fn diagonal_weights(
    en: &Enumeration,
    families: &[Vec<Rational>],
    n_max: usize,
) -> Vec<Rational> {
    assert!(n_max <= en.len(), "n_max exceeds the enumeration");
    for f in families {
        assert_eq!(f.len(), en.len(), "weight function not defined on all entries");
        assert!(
            f.iter().all(|w| !w.is_negative()),
            "weight functions are nonnegative"
        );
    }
    let one = Rational::one();
    (0..n_max)
        .map(|n| {
            let mut best = one.clone();
            for f in families.iter().take(n + 1) {
                if f[n] > best {
                    best = f[n].clone();
                }
            }
            best
        })
        .collect()
}

/// One verified domination sample.
#[derive(Clone, Debug, Serialize)]
pub struct CarrySample {
    pub element: Element,
    /// Truncated value under the diagonal weights.
    pub lhs: TruncatedValue,
    /// Truncated value under the carried family `v_m`.
    pub rhs: TruncatedValue,
    /// Whether `lhs >= Q * rhs` held.
    pub pass: bool,
    /// True when both sides are exact, so `pass` is a theorem check rather
    /// than a comparison of upper bounds.
    pub certified: bool,
}

/// Diagonal construction report: the weights, the constants `q_k` and `Q`,
/// and any verified samples.
#[derive(Clone, Debug, Serialize)]
pub struct DiagonalReport {
    pub v: Vec<Rational>,
    pub m: usize,
    pub q_values: Vec<Rational>,
    #[serde(rename = "Q")]
    pub q: Rational,
    /// True when every evaluation involved was exact.
    pub exact: bool,
    pub verified_samples: Vec<CarrySample>,
}

/// Computes `q_k = v(alpha_k) / |alpha_k|_{v_m}` for `k <= m` (defined as 1
/// when the denominator is zero) and `Q = min(1, q_0, ..., q_m)`.
///
/// Every enumerated element has the identity representation, so the
/// denominators are always finite.
pub fn q_constant(
    cat: &PresentedCategory,
    en: &Enumeration,
    families: &[Vec<Rational>],
    m: usize,
    depth: usize,
) -> Result<DiagonalReport, EvalError> {
    assert!(m < families.len(), "m must index a family");
    let v = diagonal_weights(en, families, en.len());
    let fam_m = en.family_with_weights(&families[m]);
    let one = Rational::one();
    let mut q_values = Vec::new();
    let mut q = one.clone();
    let mut exact = true;
    for (k, alpha) in en.elements.iter().enumerate().take(m + 1) {
        let denom = eval_generated(cat, &fam_m, alpha, depth)?.value;
        exact &= denom.exact;
        let denom_value = denom
            .upper_bound
            .as_finite()
            .expect("enumerated elements always have the identity representation")
            .clone();
        let q_k = if denom_value.is_zero() {
            one.clone()
        } else {
            &v[k] * &denom_value.recip().expect("nonzero")
        };
        if q_k < q {
            q = q_k.clone();
        }
        q_values.push(q_k);
    }
    Ok(DiagonalReport {
        v,
        m,
        q_values,
        q,
        exact,
        verified_samples: Vec::new(),
    })
}

/// Checks `|alpha|_v >= Q * |alpha|_{v_m}` for each sample at matching
/// truncation depth and records the outcome.
///
/// On stabilized categories both sides are exact and the inequality is a
/// theorem; a failing certified sample would witness an implementation
/// error. With non-exact bounds the comparison is reported but marked
/// uncertified, because an upper bound on the left cannot substitute for
/// the true value.
pub fn verify_carry_bound(
    cat: &PresentedCategory,
    en: &Enumeration,
    families: &[Vec<Rational>],
    m: usize,
    samples: &[Element],
    depth: usize,
) -> Result<DiagonalReport, EvalError> {
    let mut report = q_constant(cat, en, families, m, depth)?;
    let fam_v = en.family_with_weights(&report.v);
    let fam_m = en.family_with_weights(&families[m]);
    for sample in samples {
        let lhs = eval_generated(cat, &fam_v, sample, depth)?.value;
        let rhs = eval_generated(cat, &fam_m, sample, depth)?.value;
        let bound = rhs.upper_bound.scale(&report.q);
        let certified = lhs.exact && rhs.exact;
        let pass = lhs.upper_bound >= bound;
        report.exact &= certified;
        report.verified_samples.push(CarrySample {
            element: sample.clone(),
            lhs,
            rhs,
            pass,
            certified,
        });
    }
    Ok(report)
}

/// Why a family of handles cannot be carried.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagonalError {
    #[error("evaluation failed: {0}")]
    Eval(#[from] EvalError),
    #[error("handle {handle_index} is infinite at enumeration entry {entry_index}; only finite semi-norms can be carried")]
    InfiniteValue {
        handle_index: usize,
        entry_index: usize,
    },
}

/// A semi-norm generated from diagonal weights over handle values.
#[derive(Clone, Debug)]
pub struct CarriedFamily {
    pub weights: Vec<Rational>,
    pub handle: SeminormHandle,
    /// True when every handle evaluation contributing a weight was exact.
    pub exact: bool,
}

/// Builds the weight function `alpha |-> eval_tau(alpha)` for each handle
/// `tau`, takes diagonal weights over these, and returns the generated
/// semi-norm, which carries every handle in the list (exactly so on
/// stabilized instances).
pub fn carry_family(
    cat: &PresentedCategory,
    en: &Enumeration,
    handles: &[SeminormHandle],
    n_max: usize,
    depth: usize,
) -> Result<CarriedFamily, DiagonalError> {
    let mut families: Vec<Vec<Rational>> = Vec::with_capacity(handles.len());
    let mut exact = true;
    for (handle_index, handle) in handles.iter().enumerate() {
        let mut weights = Vec::with_capacity(en.len());
        for (entry_index, alpha) in en.elements.iter().enumerate() {
            let value = eval(cat, handle, alpha, depth)?;
            exact &= value.exact;
            match value.upper_bound {
                Value::Finite(w) => weights.push(w),
                Value::Infinite => {
                    return Err(DiagonalError::InfiniteValue {
                        handle_index,
                        entry_index,
                    })
                }
            }
        }
        families.push(weights);
    }
    let weights = diagonal_weights(en, &families, n_max);
    let handle = SeminormHandle::Generated(en.family_with_weights(&weights));
    Ok(CarriedFamily {
        weights,
        handle,
        exact,
    })
}

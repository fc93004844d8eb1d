//! Semi-norm handles and truncated evaluation.
//!
//! A [`GeneratingFamily`] is a finite list of weighted elements. The
//! semi-norm it generates assigns to an element the cheapest way of writing
//! it as a linear combination of morphism images of family members, where a
//! representation `alpha = sum_j b_j F(w_j)(alpha_j)` costs
//! `sum_j |b_j| * weight(alpha_j)`. With no representation at all the value
//! is infinite.
//!
//! Truncated evaluation restricts the morphisms `w_j` to composition length
//! at most `depth`, which yields an upper bound on the true value. The bound
//! is labeled `exact` only when morphism enumeration stabilized, in which
//! case every morphism was available and the truncation is not a truncation
//! at all.

use crate::exactq::{Rational, RationalMatrix};
use crate::fincat::{
    enumerate_morphisms, CatFunctor, Element, FunctorError, PresentedCategory,
};
use crate::simplex::{min_weighted_l1, L1Problem, L1Solution};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Exact semi-norm value: a rational or the infinity marker for "no
/// representation found". Serializes as the string `"p/q"` or `"inf"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Value {
    Finite(Rational),
    Infinite,
}

impl Value {
    pub fn zero() -> Self {
        Value::Finite(Rational::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Finite(v) if v.is_zero())
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Value::Finite(v) => Some(v),
            Value::Infinite => None,
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            _ => Value::Infinite,
        }
    }

    /// Multiplication by a nonnegative finite scale; infinity absorbs.
    pub fn scale(&self, factor: &Rational) -> Value {
        assert!(
            !factor.is_negative(),
            "semi-norm values scale by nonnegative factors"
        );
        match self {
            Value::Finite(v) => Value::Finite(v * factor),
            Value::Infinite => Value::Infinite,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(v) => v.fmt(f),
            Value::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        if raw == "inf" {
            return Ok(Value::Infinite);
        }
        raw.parse::<Rational>()
            .map(Value::Finite)
            .map_err(serde::de::Error::custom)
    }
}

/// Upper bound obtained by evaluating at a finite truncation depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedValue {
    pub depth: usize,
    pub upper_bound: Value,
    /// True only when morphism enumeration stabilized at or below `depth`,
    /// so the bound is the true value.
    pub exact: bool,
}

/// One weighted element of a generating family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyEntry {
    pub object: String,
    pub vector: Vec<Rational>,
    pub weight: Rational,
}

/// Finite weighted family of elements generating a semi-norm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratingFamily {
    pub entries: Vec<FamilyEntry>,
}

/// Defect in a generating family relative to a category.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("entry {index} references unknown object `{object}`")]
    UnknownObject { index: usize, object: String },
    #[error("entry {index} at `{object}` has vector length {found}, expected {expected}")]
    VectorDimension {
        index: usize,
        object: String,
        expected: usize,
        found: usize,
    },
    #[error("entry {index} has negative weight {weight}")]
    NegativeWeight { index: usize, weight: String },
}

impl GeneratingFamily {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("family serialization cannot fail")
    }

    pub fn validate(&self, cat: &PresentedCategory) -> Result<(), FamilyError> {
        for (index, e) in self.entries.iter().enumerate() {
            let Some(dim) = cat.dim_of(&e.object) else {
                return Err(FamilyError::UnknownObject {
                    index,
                    object: e.object.clone(),
                });
            };
            if e.vector.len() != dim {
                return Err(FamilyError::VectorDimension {
                    index,
                    object: e.object.clone(),
                    expected: dim,
                    found: e.vector.len(),
                });
            }
            if e.weight.is_negative() {
                return Err(FamilyError::NegativeWeight {
                    index,
                    weight: e.weight.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// Natural transformation between the linearizations of two presented
/// categories, along an object/generator re-indexing functor.
///
/// For each object `Y` of `source` the component is a matrix from the
/// source value space of `Y` to the target value space of `functor(Y)`.
/// For the common case of two functor structures on the same category,
/// `functor` is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NatTransform {
    pub source: PresentedCategory,
    pub target: PresentedCategory,
    pub functor: CatFunctor,
    pub components: BTreeMap<String, RationalMatrix>,
}

/// Defect in natural-transformation data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("underlying functor is invalid: {0}")]
    Functor(#[from] FunctorError),
    #[error("object `{object}` has no component matrix")]
    MissingComponent { object: String },
    #[error(
        "component at `{object}` is {found_rows}x{found_cols}, expected {expected_rows}x{expected_cols}"
    )]
    ComponentShape {
        object: String,
        expected_rows: usize,
        expected_cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("naturality square fails at generator `{generator}`")]
    Naturality { generator: String },
    #[error("component at `{object}` is not invertible")]
    NotInvertible { object: String },
}

impl NatTransform {
    pub fn identity(cat: &PresentedCategory) -> Self {
        NatTransform {
            source: cat.clone(),
            target: cat.clone(),
            functor: CatFunctor::identity(cat),
            components: cat
                .objects
                .iter()
                .map(|o| (o.name.clone(), RationalMatrix::identity(o.dim)))
                .collect(),
        }
    }

    pub fn component(&self, object: &str) -> Option<&RationalMatrix> {
        self.components.get(object)
    }

    /// Checks component shapes and exact commutation of every naturality
    /// square `component(Z) * M(f) = M'(functor f) * component(Y)` for
    /// generators `f: Y -> Z` of the source category.
    pub fn validate(&self) -> Result<(), TransformError> {
        self.functor.validate(&self.source, &self.target)?;
        for o in &self.source.objects {
            let image = self.functor.apply_object(&o.name).expect("functor valid");
            let expected_rows = self.target.dim_of(image).expect("functor valid");
            let Some(c) = self.component(&o.name) else {
                return Err(TransformError::MissingComponent {
                    object: o.name.clone(),
                });
            };
            if c.rows() != expected_rows || c.cols() != o.dim {
                return Err(TransformError::ComponentShape {
                    object: o.name.clone(),
                    expected_rows,
                    expected_cols: o.dim,
                    found_rows: c.rows(),
                    found_cols: c.cols(),
                });
            }
        }
        for g in &self.source.generators {
            let c_src = self.component(&g.src).expect("checked above");
            let c_dst = self.component(&g.dst).expect("checked above");
            let src_image = self.functor.apply_object(&g.src).expect("functor valid");
            let word = self
                .functor
                .apply_word(std::slice::from_ref(&g.name))
                .expect("functor valid");
            let (_, image_matrix) = self
                .target
                .word_matrix(src_image, &word)
                .expect("functor valid");
            if c_dst.mul(&g.matrix) != image_matrix.mul(c_src) {
                return Err(TransformError::Naturality {
                    generator: g.name.clone(),
                });
            }
        }
        Ok(())
    }

    /// Like [`validate`](Self::validate), additionally requiring every
    /// component to be invertible (a natural isomorphism).
    pub fn validate_isomorphism(&self) -> Result<(), TransformError> {
        self.validate()?;
        for (object, c) in &self.components {
            if c.inverse().is_none() {
                return Err(TransformError::NotInvertible {
                    object: object.clone(),
                });
            }
        }
        Ok(())
    }

    /// Image of an element under the transformation.
    pub fn apply(&self, elem: &Element) -> Option<Element> {
        let c = self.component(&elem.object)?;
        let object = self.functor.apply_object(&elem.object)?.to_string();
        Some(Element {
            object,
            vector: c.mul_vec(&elem.vector),
        })
    }
}

/// Semi-norm description that evaluation dispatches over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeminormHandle {
    /// The semi-norm that vanishes everywhere.
    Trivial,
    Generated(GeneratingFamily),
    Sum(Vec<SeminormHandle>),
    /// Pull-back along a natural transformation: evaluate the inner handle
    /// (which lives on the transform's target category) at the transformed
    /// element.
    Pullback {
        transform: NatTransform,
        inner: Box<SeminormHandle>,
    },
    /// Explicit value table on listed elements.
    Tabulated(Vec<(Element, Value)>),
}

impl SeminormHandle {
    pub fn generated(family: GeneratingFamily) -> Self {
        SeminormHandle::Generated(family)
    }
}

/// Reasons an evaluation cannot be carried out.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unknown object `{object}`")]
    UnknownObject { object: String },
    #[error("element at `{object}` has vector length {found}, expected {expected}")]
    DimensionMismatch {
        object: String,
        expected: usize,
        found: usize,
    },
    #[error("depth {requested} exceeds the configured cap {cap} (set {SEMINORM_MAX_DEPTH_VAR})")]
    DepthOverflow { requested: usize, cap: usize },
    #[error("invalid generating family: {0}")]
    Family(#[from] FamilyError),
    #[error("invalid natural transformation: {0}")]
    Transform(#[from] TransformError),
    #[error("tabulated semi-norm has no entry for the element at `{object}`")]
    TabulatedMiss { object: String },
}

/// Environment variable capping every evaluation depth.
pub const SEMINORM_MAX_DEPTH_VAR: &str = "SEMINORM_MAX_DEPTH";

/// Depth cap used when the environment does not set one.
pub const DEFAULT_DEPTH_CAP: usize = 4096;

/// The active depth cap: `SEMINORM_MAX_DEPTH` when set to a valid count,
/// otherwise [`DEFAULT_DEPTH_CAP`].
pub fn effective_depth_cap() -> usize {
    std::env::var(SEMINORM_MAX_DEPTH_VAR)
        .ok()
        .and_then(|raw| raw.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_DEPTH_CAP)
}

pub(crate) fn check_depth(requested: usize, cap: usize) -> Result<(), EvalError> {
    if requested > cap {
        Err(EvalError::DepthOverflow { requested, cap })
    } else {
        Ok(())
    }
}

fn check_element(cat: &PresentedCategory, elem: &Element) -> Result<usize, EvalError> {
    let Some(dim) = cat.dim_of(&elem.object) else {
        return Err(EvalError::UnknownObject {
            object: elem.object.clone(),
        });
    };
    if elem.vector.len() != dim {
        return Err(EvalError::DimensionMismatch {
            object: elem.object.clone(),
            expected: dim,
            found: elem.vector.len(),
        });
    }
    Ok(dim)
}

/// One term of an optimal representation: `coefficient` times the image of
/// family entry `entry_index` under the morphism with the given witness word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessTerm {
    pub coefficient: Rational,
    pub word: Vec<String>,
    pub entry_index: usize,
}

/// Value of a generated semi-norm together with an optimal representation.
#[derive(Clone, Debug, Serialize)]
pub struct Evaluation {
    pub value: TruncatedValue,
    /// Empty when the element has no representation at this depth.
    pub witness: Vec<WitnessTerm>,
}

struct ColumnSet {
    columns: Vec<Vec<Rational>>,
    weights: Vec<Rational>,
    provenance: Vec<(Vec<String>, usize)>,
    stabilized: bool,
}

/// Columns `F(w)(alpha_s)` for all enumerated morphisms `w` into `object`
/// and matching family entries, deduplicated by column vector keeping the
/// cheapest weight (a value-preserving reduction of the linear program).
fn generated_columns(
    cat: &PresentedCategory,
    fam: &GeneratingFamily,
    object: &str,
    depth: usize,
) -> ColumnSet {
    let set = enumerate_morphisms(cat, depth);
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    let mut weights: Vec<Rational> = Vec::new();
    let mut provenance: Vec<(Vec<String>, usize)> = Vec::new();
    let mut by_column: std::collections::HashMap<Vec<Rational>, usize> =
        std::collections::HashMap::new();
    for m in set.morphisms_into(object) {
        for (entry_index, e) in fam.entries.iter().enumerate() {
            if e.object != m.src {
                continue;
            }
            let column = m.matrix.mul_vec(&e.vector);
            match by_column.get(&column) {
                Some(&slot) => {
                    if e.weight < weights[slot] {
                        weights[slot] = e.weight.clone();
                        provenance[slot] = (m.witness_word.clone(), entry_index);
                    }
                }
                None => {
                    by_column.insert(column.clone(), columns.len());
                    columns.push(column);
                    weights.push(e.weight.clone());
                    provenance.push((m.witness_word.clone(), entry_index));
                }
            }
        }
    }
    ColumnSet {
        columns,
        weights,
        provenance,
        stabilized: set.stabilized,
    }
}

/// Truncated value of the semi-norm generated by `fam` at `elem`, with an
/// optimal representation as witness.
pub fn eval_generated(
    cat: &PresentedCategory,
    fam: &GeneratingFamily,
    elem: &Element,
    depth: usize,
) -> Result<Evaluation, EvalError> {
    check_depth(depth, effective_depth_cap())?;
    let dim = check_element(cat, elem)?;
    fam.validate(cat)?;
    let cols = generated_columns(cat, fam, &elem.object, depth);
    let matrix = RationalMatrix::from_columns(dim, &cols.columns).expect("column shape");
    let problem =
        L1Problem::new(matrix, elem.vector.clone(), cols.weights).expect("shapes consistent");
    let (upper_bound, witness) = match min_weighted_l1(&problem) {
        L1Solution::Optimal {
            value,
            coefficients,
        } => {
            let witness = coefficients
                .into_iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
                .map(|(slot, b)| WitnessTerm {
                    coefficient: b,
                    word: cols.provenance[slot].0.clone(),
                    entry_index: cols.provenance[slot].1,
                })
                .collect();
            (Value::Finite(value), witness)
        }
        L1Solution::Infeasible => (Value::Infinite, Vec::new()),
    };
    // An upper bound of zero is always exact: semi-norms are nonnegative.
    let exact = cols.stabilized || upper_bound.is_zero();
    Ok(Evaluation {
        value: TruncatedValue {
            depth,
            upper_bound,
            exact,
        },
        witness,
    })
}

/// Truncated evaluation of any handle.
pub fn eval(
    cat: &PresentedCategory,
    handle: &SeminormHandle,
    elem: &Element,
    depth: usize,
) -> Result<TruncatedValue, EvalError> {
    check_depth(depth, effective_depth_cap())?;
    check_element(cat, elem)?;
    match handle {
        SeminormHandle::Trivial => Ok(TruncatedValue {
            depth,
            upper_bound: Value::zero(),
            exact: true,
        }),
        SeminormHandle::Generated(fam) => Ok(eval_generated(cat, fam, elem, depth)?.value),
        SeminormHandle::Sum(parts) => {
            let mut upper_bound = Value::zero();
            let mut exact = true;
            for part in parts {
                let v = eval(cat, part, elem, depth)?;
                upper_bound = upper_bound.add(&v.upper_bound);
                exact &= v.exact;
            }
            Ok(TruncatedValue {
                depth,
                upper_bound,
                exact,
            })
        }
        SeminormHandle::Pullback { transform, inner } => {
            transform.validate()?;
            let image = transform.apply(elem).ok_or_else(|| EvalError::UnknownObject {
                object: elem.object.clone(),
            })?;
            let inner_value = eval(&transform.target, inner, &image, depth)?;
            Ok(TruncatedValue {
                depth,
                upper_bound: inner_value.upper_bound,
                exact: inner_value.exact,
            })
        }
        SeminormHandle::Tabulated(table) => {
            for (e, v) in table {
                if e.object == elem.object && e.vector == elem.vector {
                    return Ok(TruncatedValue {
                        depth,
                        upper_bound: v.clone(),
                        exact: true,
                    });
                }
            }
            Err(EvalError::TabulatedMiss {
                object: elem.object.clone(),
            })
        }
    }
}

/// Per-object flag: do the truncated columns span the full value space?
/// When they do, every element of that object has a finite value at this
/// depth (the finiteness criterion for spanning families).
pub fn spanning_report(
    cat: &PresentedCategory,
    fam: &GeneratingFamily,
    depth: usize,
) -> Result<BTreeMap<String, bool>, EvalError> {
    check_depth(depth, effective_depth_cap())?;
    fam.validate(cat)?;
    let mut out = BTreeMap::new();
    for o in &cat.objects {
        let cols = generated_columns(cat, fam, &o.name, depth);
        let span = crate::exactq::Subspace::from_columns(o.dim, &cols.columns);
        out.insert(o.name.clone(), span.is_full());
    }
    Ok(out)
}

/// Comparison of `|F(f)(alpha)|` against `|alpha|` for one generator and
/// one sample.
#[derive(Clone, Debug, Serialize)]
pub struct FunctorialityCase {
    pub generator: String,
    pub object: String,
    pub sample: Vec<Rational>,
    pub sample_value: TruncatedValue,
    pub image_value: TruncatedValue,
}

/// Outcome of [`check_functorial`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct FunctorialityReport {
    pub checked: usize,
    /// Cases where both sides are exact and the image exceeds the sample:
    /// genuine violations of functoriality.
    pub violations: Vec<FunctorialityCase>,
    /// Cases where at least one side is a non-exact upper bound; a truncated
    /// bound on the image side cannot certify a violation, so no verdict is
    /// given.
    pub undetermined: Vec<FunctorialityCase>,
}

impl FunctorialityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `|F(f)(alpha)| <= |alpha|` at equal depth for every generator `f`
/// and every sample with matching source object.
pub fn check_functorial(
    cat: &PresentedCategory,
    handle: &SeminormHandle,
    depth: usize,
    samples: &[Element],
) -> Result<FunctorialityReport, EvalError> {
    let mut report = FunctorialityReport::default();
    for g in &cat.generators {
        for sample in samples.iter().filter(|s| s.object == g.src) {
            check_element(cat, sample)?;
            let image = Element {
                object: g.dst.clone(),
                vector: g.matrix.mul_vec(&sample.vector),
            };
            let sample_value = eval(cat, handle, sample, depth)?;
            let image_value = eval(cat, handle, &image, depth)?;
            report.checked += 1;
            let case = FunctorialityCase {
                generator: g.name.clone(),
                object: g.src.clone(),
                sample: sample.vector.clone(),
                sample_value: sample_value.clone(),
                image_value: image_value.clone(),
            };
            if sample_value.exact && image_value.exact {
                if image_value.upper_bound > sample_value.upper_bound {
                    report.violations.push(case);
                }
            } else {
                report.undetermined.push(case);
            }
        }
    }
    Ok(report)
}

/// Transfer of a semi-norm along a weak retraction.
///
/// `a: C -> D` and `b: D -> C` are functors with `a` after `b` naturally
/// isomorphic to the identity on `D` via `lambda`, and `psi` is a natural
/// isomorphism from the linearization of `C` to the one of `D` pulled back
/// along `a`. Given a handle `sigma` on `C`, the returned handle on `D`
/// evaluates elements through the composite `phi_Y = psi^{-1}(b Y) *
/// lambda_Y`, which lands in the value space of `b(Y)` in `C`.
///
/// `lambda` must have both categories equal to `D` and functor `b` then
/// `a`; `psi` must go from `C` to `D` along `a`. Both must be natural
/// isomorphisms; everything is checked exactly.
pub fn transfer_along_retraction(
    cat_c: &PresentedCategory,
    cat_d: &PresentedCategory,
    a: &CatFunctor,
    b: &CatFunctor,
    lambda: &NatTransform,
    psi: &NatTransform,
    sigma: &SeminormHandle,
) -> Result<SeminormHandle, TransferError> {
    a.validate(cat_c, cat_d).map_err(TransformError::Functor)?;
    b.validate(cat_d, cat_c).map_err(TransformError::Functor)?;

    if lambda.source != *cat_d || lambda.target != *cat_d {
        return Err(TransferError::WrongCategories { transform: "lambda" });
    }
    let b_then_a = b.then(a).expect("functors validated");
    if lambda.functor != b_then_a {
        return Err(TransferError::WrongFunctor {
            transform: "lambda",
            expected: "b then a".into(),
        });
    }
    lambda
        .validate_isomorphism()
        .map_err(|e| TransferError::Transform {
            transform: "lambda",
            source: e,
        })?;

    if psi.source != *cat_c || psi.target != *cat_d {
        return Err(TransferError::WrongCategories { transform: "psi" });
    }
    if psi.functor != *a {
        return Err(TransferError::WrongFunctor {
            transform: "psi",
            expected: "a".into(),
        });
    }
    psi.validate_isomorphism()
        .map_err(|e| TransferError::Transform {
            transform: "psi",
            source: e,
        })?;

    let mut components = BTreeMap::new();
    for o in &cat_d.objects {
        let by = b.apply_object(&o.name).expect("b validated");
        let psi_by = psi
            .component(by)
            .expect("psi validated")
            .inverse()
            .expect("psi is an isomorphism");
        let lambda_y = lambda.component(&o.name).expect("lambda validated");
        components.insert(o.name.clone(), psi_by.mul(lambda_y));
    }
    let phi = NatTransform {
        source: cat_d.clone(),
        target: cat_c.clone(),
        functor: b.clone(),
        components,
    };
    phi.validate().map_err(|e| TransferError::Transform {
        transform: "phi",
        source: e,
    })?;
    Ok(SeminormHandle::Pullback {
        transform: phi,
        inner: Box::new(sigma.clone()),
    })
}

/// Why a retraction transfer was rejected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransferError {
    #[error("functor data invalid: {0}")]
    Functor(#[from] TransformError),
    #[error("{transform} must relate the expected categories")]
    WrongCategories { transform: &'static str },
    #[error("{transform} must lie over the functor {expected}")]
    WrongFunctor {
        transform: &'static str,
        expected: String,
    },
    #[error("{transform}: {source}")]
    Transform {
        transform: &'static str,
        source: TransformError,
    },
}

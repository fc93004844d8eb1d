//! The no-universal-semi-norm model.
//!
//! Objects are the naturals together with sequence objects `w` (rational,
//! eventually constant, all values at least 1); the only non-identity
//! morphisms are single arrows from each natural `m` to each sequence
//! object `w`, acting on the one-dimensional value spaces as multiplication
//! by the degree `d(m, w) = ceil(w(m))`. Generating from the weighted
//! units at the naturals gives the closed form
//!
//! ```text
//! |1_w|_v = inf over m of v(m) / d(m, w)
//! ```
//!
//! For any candidate weight `v`, the derived sequence `w(m) = m*v(m) + 1`
//! separates: `|1_w|_w >= 1/2` because `x / ceil(x) >= 1/2` for `x >= 1`,
//! while the upper bounds `v(m) / ceil(m*v(m) + 1) <= 1/m` drive `|1_w|_v`
//! to zero. No single candidate can therefore carry every generated
//! semi-norm of the model.
//!
//! The derived `w` is eventually linear, not constant, so its tail is
//! analyzed symbolically: with tail coefficient `c = p/q` the ratio
//! `w(m) / ceil(w(m))` is increasing in `m` within each residue class of
//! `m*p mod q`, so the tail infimum is attained in the first full period.

use crate::exactq::Rational;
use crate::simplex::{enumerate_basic_optima, L1Problem, OracleError};
use crate::seminorm::Value;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Raw prefix-plus-tail data before the range check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequence {
    prefix: Vec<Rational>,
    tail: Rational,
}

/// Defect in sequence data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    #[error("value at {position} is {found}, below the minimum {minimum}")]
    BelowMinimum {
        position: String,
        found: String,
        minimum: String,
    },
}

fn check_min(raw: &RawSequence, minimum: &Rational) -> Result<(), SequenceError> {
    for (i, x) in raw.prefix.iter().enumerate() {
        if x < minimum {
            return Err(SequenceError::BelowMinimum {
                position: format!("index {i}"),
                found: x.to_string(),
                minimum: minimum.to_string(),
            });
        }
    }
    if &raw.tail < minimum {
        return Err(SequenceError::BelowMinimum {
            position: "tail".into(),
            found: raw.tail.to_string(),
            minimum: minimum.to_string(),
        });
    }
    Ok(())
}

/// Eventually constant sequence of rationals with all values at least 1:
/// one sequence object of the model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSequence", into = "RawSequence")]
pub struct SeqObject {
    prefix: Vec<Rational>,
    tail: Rational,
}

impl TryFrom<RawSequence> for SeqObject {
    type Error = SequenceError;
    fn try_from(raw: RawSequence) -> Result<Self, Self::Error> {
        check_min(&raw, &Rational::one())?;
        Ok(SeqObject {
            prefix: raw.prefix,
            tail: raw.tail,
        })
    }
}

impl From<SeqObject> for RawSequence {
    fn from(s: SeqObject) -> RawSequence {
        RawSequence {
            prefix: s.prefix,
            tail: s.tail,
        }
    }
}

impl SeqObject {
    pub fn new(prefix: Vec<Rational>, tail: Rational) -> Result<Self, SequenceError> {
        SeqObject::try_from(RawSequence { prefix, tail })
    }

    pub fn constant(value: Rational) -> Result<Self, SequenceError> {
        SeqObject::new(Vec::new(), value)
    }

    pub fn at(&self, m: usize) -> &Rational {
        self.prefix.get(m).unwrap_or(&self.tail)
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn tail(&self) -> &Rational {
        &self.tail
    }

    /// The same sequence viewed as a weight function.
    pub fn as_weights(&self) -> WeightFn {
        WeightFn {
            prefix: self.prefix.clone(),
            tail: self.tail.clone(),
        }
    }
}

/// Eventually constant nonnegative weight function on the naturals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSequence", into = "RawSequence")]
pub struct WeightFn {
    prefix: Vec<Rational>,
    tail: Rational,
}

impl TryFrom<RawSequence> for WeightFn {
    type Error = SequenceError;
    fn try_from(raw: RawSequence) -> Result<Self, Self::Error> {
        check_min(&raw, &Rational::zero())?;
        Ok(WeightFn {
            prefix: raw.prefix,
            tail: raw.tail,
        })
    }
}

impl From<WeightFn> for RawSequence {
    fn from(s: WeightFn) -> RawSequence {
        RawSequence {
            prefix: s.prefix,
            tail: s.tail,
        }
    }
}

impl WeightFn {
    pub fn new(prefix: Vec<Rational>, tail: Rational) -> Result<Self, SequenceError> {
        WeightFn::try_from(RawSequence { prefix, tail })
    }

    pub fn constant(value: Rational) -> Result<Self, SequenceError> {
        WeightFn::new(Vec::new(), value)
    }

    pub fn at(&self, m: usize) -> &Rational {
        self.prefix.get(m).unwrap_or(&self.tail)
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn tail(&self) -> &Rational {
        &self.tail
    }
}

/// Element of a one-dimensional value space of the model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CEElement {
    pub side: Side,
    pub value: Rational,
}

/// Which kind of object the element lives at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Nat(usize),
    Seq(SeqObject),
}

/// Degree of the unique arrow from the natural `m` to `w`: the ceiling of
/// `w(m)`, always a positive integer.
pub fn degree(m: usize, w: &SeqObject) -> BigInt {
    w.at(m).ceil_int()
}

fn ratio(v_m: &Rational, d: BigInt) -> Rational {
    v_m / &Rational::from_bigint(d)
}

/// Closed-form truncation of `|1_w|_v = inf over m of v(m) / d(m, w)`:
/// the minimum of the first `m_max + 1` ratios, flagged exact once both
/// sequences are past their prefixes (from there on the ratio is the
/// constant tail ratio, which the minimum already saw).
pub fn closed_form_value(v: &WeightFn, w: &SeqObject, m_max: usize) -> (Rational, bool) {
    assert!(m_max >= 1, "at least the ratios at 0 and 1 are needed");
    let mut best = ratio(v.at(0), degree(0, w));
    for m in 1..=m_max {
        let r = ratio(v.at(m), degree(m, w));
        if r < best {
            best = r;
        }
    }
    let past_prefixes = m_max >= v.prefix_len() && m_max >= w.prefix_len();
    let tail_ratio = ratio(v.tail(), w.tail().ceil_int());
    let exact = past_prefixes && tail_ratio >= best;
    (best, exact)
}

/// Independent oracle for the closed form: enumerates the representations
/// of a target element through the truncated model (naturals up to
/// `m_upper`) and minimizes the weighted cost exactly.
///
/// At a sequence object the columns are the degrees `d(m, w)`; at a
/// natural only the identity representation exists. Truncations with more
/// than `max_columns` representation columns are refused.
pub fn brute_force_value(
    v: &WeightFn,
    target: &CEElement,
    m_upper: usize,
    max_columns: usize,
) -> Result<Value, OracleError> {
    let (columns, weights) = match &target.side {
        Side::Seq(w) => (0..=m_upper)
            .map(|m| {
                (
                    vec![Rational::from_bigint(degree(m, w))],
                    v.at(m).clone(),
                )
            })
            .unzip(),
        Side::Nat(m) => (
            vec![vec![Rational::one()]],
            vec![v.at(*m).clone()],
        ),
    };
    let matrix = crate::exactq::RationalMatrix::from_columns(1, &columns)
        .expect("one-dimensional columns");
    let problem = L1Problem::new(matrix, vec![target.value.clone()], weights)
        .expect("shapes consistent");
    let solution = enumerate_basic_optima(&problem, max_columns)?;
    Ok(match solution.value() {
        Some(value) => Value::Finite(value.clone()),
        None => Value::Infinite,
    })
}

/// Residue classes of `m*p mod q` beyond which tail period scanning is
/// refused; the symbolic 1/2 bound is reported instead.
pub const TAIL_PERIOD_CAP: usize = 1 << 16;

/// Separation report for one candidate weight function.
#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub v: WeightFn,
    /// Index from which `w(m) = m * tail_coefficient + 1`.
    pub tail_start: usize,
    pub tail_coefficient: Rational,
    /// The derived sequence values `w(m) = m * v(m) + 1` for `m <= m_max`.
    pub w_values: Vec<Rational>,
    /// Certified lower bound for `|1_w|_w`; at least 1/2 always, and the
    /// exact infimum when `exact_lower` is set.
    pub lower_bound_w: Rational,
    pub exact_lower: bool,
    /// Ratios `v(m) / ceil(m*v(m)+1)` for `m <= m_max`, each at most `1/m`
    /// for `m >= 1`: upper bounds for `|1_w|_v` vanishing in the limit.
    pub upper_bounds_v: Vec<Rational>,
}

fn w_at(v: &WeightFn, m: usize) -> Rational {
    &(&Rational::from_int(m as i64) * v.at(m)) + &Rational::one()
}

fn self_ratio(x: &Rational) -> Rational {
    ratio(x, x.ceil_int())
}

/// Builds `w(m) = m*v(m) + 1` from the candidate and certifies the gap:
/// `|1_w|_w >= 1/2` (exact infimum where the tail period is tractable)
/// against upper bounds for `|1_w|_v` that fall below every `1/m`.
pub fn gap_demo(v: &WeightFn, m_max: usize) -> GapReport {
    let half = Rational::from_ratio(1, 2);
    let one = Rational::one();
    let tail_start = v.prefix_len();
    let c = v.tail().clone();

    // Ratios w(m)/ceil(w(m)) over the explicit prefix of w.
    let mut lower: Option<Rational> = None;
    let mut fold = |r: Rational| {
        assert!(r >= half, "x/ceil(x) is at least 1/2 for x >= 1");
        if lower.as_ref().is_none_or(|b| &r < b) {
            lower = Some(r);
        }
    };
    for m in 0..tail_start {
        fold(self_ratio(&w_at(v, m)));
    }

    // Tail analysis: w(m) = m*c + 1 for m >= tail_start. For c = 0 every
    // ratio is 1. For c = p/q the ratio is increasing in m within each
    // residue class of m*p mod q, so the infimum over the tail is attained
    // within the first q consecutive indices.
    let mut exact_lower = true;
    if c.is_zero() {
        fold(one.clone());
    } else {
        match c.denom().to_usize().filter(|&q| q <= TAIL_PERIOD_CAP) {
            Some(q) => {
                for m in tail_start..tail_start + q {
                    fold(self_ratio(&w_at(v, m)));
                }
            }
            None => {
                fold(half.clone());
                exact_lower = false;
            }
        }
    }
    let lower_bound_w = lower.expect("at least one ratio was folded");

    let mut upper_bounds_v = Vec::with_capacity(m_max + 1);
    let mut w_values = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let w_m = w_at(v, m);
        let bound = ratio(v.at(m), w_m.ceil_int());
        if m >= 1 {
            let reciprocal = Rational::from_ratio(1, m as i64);
            assert!(
                bound <= reciprocal,
                "ceil(m*v(m)+1) >= m*v(m) forces the 1/m bound"
            );
        }
        w_values.push(w_m);
        upper_bounds_v.push(bound);
    }

    GapReport {
        v: v.clone(),
        tail_start,
        tail_coefficient: c,
        w_values,
        lower_bound_w,
        exact_lower,
        upper_bounds_v,
    }
}

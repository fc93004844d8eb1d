//! Browser bindings: string-in, string-out wrappers around the exact
//! engine. Every function takes JSON text, returns JSON text, and never
//! panics; failures come back as `{"error": {"kind", "message"}}` with
//! kind `input` (malformed data) or `domain` (valid data, failed check).
//!
//! The wrappers hold no state and do no I/O, so the same functions are
//! exercised natively by the test suite; the `wasm_bindgen` attribute only
//! adds the JS interface when compiled for the browser.

use fsn_core::counterexample::{gap_demo, WeightFn};
use fsn_core::exactq::Rational;
use fsn_core::fincat::{Element, PresentedCategory};
use fsn_core::locus::universal_locus;
use fsn_core::seminorm::{eval_generated, EvalError, GeneratingFamily};
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

fn error_json(kind: &str, message: impl std::fmt::Display) -> String {
    json!({ "error": { "kind": kind, "message": message.to_string() } }).to_string()
}

fn parse<T: serde::de::DeserializeOwned>(label: &str, text: &str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| error_json("input", format!("{label}: {e}")))
}

fn load_category(text: &str) -> Result<PresentedCategory, String> {
    let cat: PresentedCategory = parse("category", text)?;
    let report = cat.validate();
    if report.is_valid() {
        Ok(cat)
    } else {
        let messages: Vec<String> = report.errors.iter().map(|e| e.to_string()).collect();
        Err(error_json("domain", format!("invalid category: {}", messages.join("; "))))
    }
}

fn eval_failure(e: EvalError) -> String {
    match e {
        EvalError::DepthOverflow { .. } => error_json("input", e),
        other => error_json("domain", other),
    }
}

/// Evaluates the generated semi-norm of an element at the given depth.
/// Returns the truncated value, exactness flag, and witness representation.
#[wasm_bindgen]
pub fn eval_seminorm(
    category_json: &str,
    family_json: &str,
    element_json: &str,
    depth: usize,
) -> String {
    let run = || -> Result<String, String> {
        let cat = load_category(category_json)?;
        let fam: GeneratingFamily = parse("family", family_json)?;
        let elem: Element = parse("element", element_json)?;
        let evaluation = eval_generated(&cat, &fam, &elem, depth).map_err(eval_failure)?;
        Ok(serde_json::to_string(&evaluation).expect("serializable"))
    };
    run().unwrap_or_else(|e| e)
}

/// Computes the universal vanishing loci with eigen certificates and the
/// quotient stabilization probe.
#[wasm_bindgen]
pub fn universal_vanishing_locus(
    category_json: &str,
    depth: usize,
    quotient_depth: usize,
) -> String {
    let run = || -> Result<String, String> {
        let cat = load_category(category_json)?;
        let report = universal_locus(&cat, depth, quotient_depth);
        Ok(serde_json::to_string(&report).expect("serializable"))
    };
    run().unwrap_or_else(|e| e)
}

/// Builds the separating counterexample report for a weight function
/// (`{"prefix": [...], "tail": "1"}`); an empty string selects the
/// constant function 1.
#[wasm_bindgen]
pub fn counterexample_gap(weights_json: &str, m_max: usize) -> String {
    let run = || -> Result<String, String> {
        let v = if weights_json.trim().is_empty() {
            WeightFn::constant(Rational::one()).expect("one is nonnegative")
        } else {
            parse("weights", weights_json)?
        };
        Ok(serde_json::to_string(&gap_demo(&v, m_max)).expect("serializable"))
    };
    run().unwrap_or_else(|e| e)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CIRCLE: &str = r#"{
      "objects": [{"name": "H1_circle", "dim": 1}],
      "generators": [{"name": "degree2", "src": "H1_circle", "dst": "H1_circle", "matrix": [["2"]]}],
      "relations": []
    }"#;

    #[test]
    fn eval_returns_the_truncated_circle_value() {
        let out = eval_seminorm(
            CIRCLE,
            r#"{"entries": [{"object": "H1_circle", "vector": ["1"], "weight": "1"}]}"#,
            r#"{"object": "H1_circle", "vector": ["1"]}"#,
            4,
        );
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"]["upper_bound"], "1/16");
        assert_eq!(v["value"]["exact"], false);
    }

    #[test]
    fn locus_certifies_the_circle_model() {
        let out = universal_vanishing_locus(CIRCLE, 3, 16);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["loci"]["H1_circle"]["status"], "exact");
        assert_eq!(v["quotient_stabilized"], true);
    }

    #[test]
    fn gap_report_defaults_to_constant_one() {
        let out = counterexample_gap("", 4);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["upper_bounds_v"][1], "1/2");
        assert_eq!(v["lower_bound_w"], "1");
    }

    #[test]
    fn malformed_input_reports_an_input_error() {
        let out = eval_seminorm("{", "{}", "{}", 1);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["kind"], "input");
    }

    #[test]
    fn invalid_category_reports_a_domain_error() {
        let bad = r#"{
          "objects": [{"name": "X", "dim": 2}],
          "generators": [{"name": "g", "src": "X", "dst": "X", "matrix": [["1"]]}],
          "relations": []
        }"#;
        let out = universal_vanishing_locus(bad, 3, 8);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["kind"], "domain");
        assert!(v["error"]["message"].as_str().unwrap().contains("`g`"));
    }
}

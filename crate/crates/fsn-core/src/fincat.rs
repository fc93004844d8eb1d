//! Finitely presented categories with a functor into rational vector spaces.
//!
//! A [`PresentedCategory`] lists objects with the dimension of their value
//! space, generating arrows with the matrix the functor assigns to them, and
//! optional relations between generator words. Morphisms are identified with
//! their functor image: two words with the same source, target and matrix
//! are the same morphism for every computation in this crate.
//!
//! Words list generators in application order: the word `[f, g]` means
//! "first `f`, then `g`", so its matrix is `M_g * M_f`.

use crate::exactq::{Rational, RationalMatrix};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

/// Object with the dimension of its assigned vector space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSpec {
    pub name: String,
    pub dim: usize,
}

/// Generating arrow with its functor matrix (`dim(dst) x dim(src)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorArrow {
    pub name: String,
    pub src: String,
    pub dst: String,
    pub matrix: RationalMatrix,
}

/// Relation between two composable generator words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Relation {
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

/// Finitely presented category together with its linearization functor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentedCategory {
    pub objects: Vec<ObjectSpec>,
    pub generators: Vec<GeneratorArrow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Relation>,
}

/// One defect found by [`PresentedCategory::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ValidationError {
    DuplicateObject { name: String },
    DuplicateGenerator { name: String },
    UnknownObject { generator: String, object: String },
    MatrixShape {
        generator: String,
        expected_rows: usize,
        expected_cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    UnknownGeneratorInWord { word: Vec<String>, name: String },
    WordNotComposable { word: Vec<String>, at: usize },
    RelationEndpointMismatch { lhs: Vec<String>, rhs: Vec<String> },
    RelationMatrixMismatch { lhs: Vec<String>, rhs: Vec<String> },
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationError::DuplicateObject { name } => {
                write!(f, "duplicate object `{name}`")
            }
            ValidationError::DuplicateGenerator { name } => {
                write!(f, "duplicate generator `{name}`")
            }
            ValidationError::UnknownObject { generator, object } => {
                write!(f, "generator `{generator}` references unknown object `{object}`")
            }
            ValidationError::MatrixShape {
                generator,
                expected_rows,
                expected_cols,
                found_rows,
                found_cols,
            } => write!(
                f,
                "generator `{generator}` needs a {expected_rows}x{expected_cols} matrix, \
                 found {found_rows}x{found_cols}"
            ),
            ValidationError::UnknownGeneratorInWord { word, name } => {
                write!(f, "word {word:?} references unknown generator `{name}`")
            }
            ValidationError::WordNotComposable { word, at } => {
                write!(f, "word {word:?} is not composable at position {at}")
            }
            ValidationError::RelationEndpointMismatch { lhs, rhs } => {
                write!(f, "relation {lhs:?} = {rhs:?} has mismatched endpoints")
            }
            ValidationError::RelationMatrixMismatch { lhs, rhs } => {
                write!(f, "relation {lhs:?} = {rhs:?} does not hold for the functor matrices")
            }
        }
    }
}

/// Result of validating a presentation. Never panics on bad input; every
/// defect is reported as a structured entry.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub errors: Vec<ValidationError>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Morphism identified by its functor image, with one witness word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub src: String,
    pub dst: String,
    pub matrix: RationalMatrix,
    /// Generator names in application order; empty for an identity.
    pub witness_word: Vec<String>,
}

impl Morphism {
    pub fn is_identity_word(&self) -> bool {
        self.witness_word.is_empty()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.src == self.dst
    }
}

/// Morphisms reachable by composing at most `depth` generators.
#[derive(Clone, Debug)]
pub struct MorphismSet {
    pub morphisms: Vec<Morphism>,
    pub depth: usize,
    /// True when some level below `depth` added no new morphism; the set is
    /// then closed under composition and equals the full morphism collection.
    pub stabilized: bool,
    /// First level that added nothing new, when stabilization was observed.
    pub stabilization_depth: Option<usize>,
}

impl MorphismSet {
    pub fn morphisms_into<'a>(&'a self, object: &'a str) -> impl Iterator<Item = &'a Morphism> {
        self.morphisms.iter().filter(move |m| m.dst == object)
    }

    pub fn endomorphisms_of<'a>(&'a self, object: &'a str) -> impl Iterator<Item = &'a Morphism> {
        self.morphisms
            .iter()
            .filter(move |m| m.src == object && m.dst == object)
    }
}

impl PresentedCategory {
    pub fn object(&self, name: &str) -> Option<&ObjectSpec> {
        self.objects.iter().find(|o| o.name == name)
    }

    pub fn dim_of(&self, name: &str) -> Option<usize> {
        self.object(name).map(|o| o.dim)
    }

    pub fn generator(&self, name: &str) -> Option<&GeneratorArrow> {
        self.generators.iter().find(|g| g.name == name)
    }

    /// Parses a category from its JSON description, rejecting unknown keys.
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let mut cat: PresentedCategory = serde_json::from_str(text)?;
        cat.fix_degenerate_shapes();
        Ok(cat)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("category serialization cannot fail")
    }

    /// A matrix with zero rows loses its column count in JSON (it prints as
    /// `[]`); restore the count from the source object so validation judges
    /// the intended shape.
    fn fix_degenerate_shapes(&mut self) {
        let dims: BTreeMap<String, usize> = self
            .objects
            .iter()
            .map(|o| (o.name.clone(), o.dim))
            .collect();
        for gen in &mut self.generators {
            if gen.matrix.rows() == 0 && gen.matrix.cols() == 0 {
                if let (Some(0), Some(&src_dim)) =
                    (dims.get(&gen.dst).copied(), dims.get(&gen.src))
                {
                    gen.matrix = RationalMatrix::zeros(0, src_dim);
                }
            }
        }
    }

    /// Structured well-formedness check of the presentation and the functor
    /// data attached to it.
    pub fn validate(&self) -> ValidationReport {
        let mut errors = Vec::new();
        let mut seen_objects = HashSet::new();
        for o in &self.objects {
            if !seen_objects.insert(o.name.clone()) {
                errors.push(ValidationError::DuplicateObject {
                    name: o.name.clone(),
                });
            }
        }
        let mut seen_gens = HashSet::new();
        for g in &self.generators {
            if !seen_gens.insert(g.name.clone()) {
                errors.push(ValidationError::DuplicateGenerator {
                    name: g.name.clone(),
                });
            }
            let mut endpoints_ok = true;
            for obj in [&g.src, &g.dst] {
                if self.object(obj).is_none() {
                    errors.push(ValidationError::UnknownObject {
                        generator: g.name.clone(),
                        object: obj.clone(),
                    });
                    endpoints_ok = false;
                }
            }
            if endpoints_ok {
                let expected_rows = self.dim_of(&g.dst).expect("checked");
                let expected_cols = self.dim_of(&g.src).expect("checked");
                if g.matrix.rows() != expected_rows || g.matrix.cols() != expected_cols {
                    errors.push(ValidationError::MatrixShape {
                        generator: g.name.clone(),
                        expected_rows,
                        expected_cols,
                        found_rows: g.matrix.rows(),
                        found_cols: g.matrix.cols(),
                    });
                }
            }
        }
        if errors.is_empty() {
            for rel in &self.relations {
                let lhs = self.word_data(&rel.lhs);
                let rhs = self.word_data(&rel.rhs);
                match (lhs, rhs) {
                    (Err(e), _) | (_, Err(e)) => errors.push(e),
                    (Ok(l), Ok(r)) => {
                        if l.endpoints() != r.endpoints() {
                            errors.push(ValidationError::RelationEndpointMismatch {
                                lhs: rel.lhs.clone(),
                                rhs: rel.rhs.clone(),
                            });
                        } else if l.matrix != r.matrix {
                            errors.push(ValidationError::RelationMatrixMismatch {
                                lhs: rel.lhs.clone(),
                                rhs: rel.rhs.clone(),
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { errors }
    }

    /// Source, target and matrix of a generator word (application order).
    /// Empty words are rejected here because they name no object.
    fn word_data(&self, word: &[String]) -> Result<WordData, ValidationError> {
        let mut data: Option<WordData> = None;
        for (at, name) in word.iter().enumerate() {
            let Some(g) = self.generator(name) else {
                return Err(ValidationError::UnknownGeneratorInWord {
                    word: word.to_vec(),
                    name: name.clone(),
                });
            };
            data = Some(match data {
                None => WordData {
                    src: g.src.clone(),
                    dst: g.dst.clone(),
                    matrix: g.matrix.clone(),
                },
                Some(prev) => {
                    if prev.dst != g.src {
                        return Err(ValidationError::WordNotComposable {
                            word: word.to_vec(),
                            at,
                        });
                    }
                    WordData {
                        src: prev.src,
                        dst: g.dst.clone(),
                        matrix: g.matrix.mul(&prev.matrix),
                    }
                }
            });
        }
        data.ok_or(ValidationError::WordNotComposable {
            word: word.to_vec(),
            at: 0,
        })
    }

    /// Matrix of a generator word starting at `src`; identities are the
    /// empty word. `None` when the word does not compose from `src`.
    pub fn word_matrix(&self, src: &str, word: &[String]) -> Option<(String, RationalMatrix)> {
        let dim = self.dim_of(src)?;
        let mut dst = src.to_string();
        let mut matrix = RationalMatrix::identity(dim);
        for name in word {
            let g = self.generator(name)?;
            if g.src != dst {
                return None;
            }
            matrix = g.matrix.mul(&matrix);
            dst = g.dst.clone();
        }
        Some((dst, matrix))
    }
}

struct WordData {
    src: String,
    dst: String,
    matrix: RationalMatrix,
}

impl WordData {
    fn endpoints(&self) -> (&str, &str) {
        (&self.src, &self.dst)
    }
}

/// Breadth-first enumeration of morphisms up to composition length `depth`.
///
/// Identities enter at depth zero. Morphisms are deduplicated by
/// `(src, dst, matrix)`: the first witness word (shortest, in deterministic
/// order) is kept. Once a level adds nothing, the set is closed under
/// composition and `stabilized` is set; enumeration at any larger depth
/// returns the same set.
pub fn enumerate_morphisms(cat: &PresentedCategory, depth: usize) -> MorphismSet {
    let mut morphisms: Vec<Morphism> = Vec::new();
    let mut index: HashMap<(String, String, RationalMatrix), usize> = HashMap::new();
    let mut frontier: Vec<usize> = Vec::new();

    for o in &cat.objects {
        let m = Morphism {
            src: o.name.clone(),
            dst: o.name.clone(),
            matrix: RationalMatrix::identity(o.dim),
            witness_word: Vec::new(),
        };
        let key = (m.src.clone(), m.dst.clone(), m.matrix.clone());
        if !index.contains_key(&key) {
            index.insert(key, morphisms.len());
            frontier.push(morphisms.len());
            morphisms.push(m);
        }
    }

    let mut stabilized = cat.generators.is_empty() && depth > 0;
    let mut stabilization_depth = if stabilized { Some(1) } else { None };
    for level in 1..=depth {
        let mut next_frontier = Vec::new();
        for &i in &frontier {
            let (src, dst, word) = {
                let m = &morphisms[i];
                (m.src.clone(), m.dst.clone(), m.witness_word.clone())
            };
            for g in &cat.generators {
                if g.src != dst {
                    continue;
                }
                let matrix = g.matrix.mul(&morphisms[i].matrix);
                let key = (src.clone(), g.dst.clone(), matrix.clone());
                if index.contains_key(&key) {
                    continue;
                }
                let mut witness = word.clone();
                witness.push(g.name.clone());
                index.insert(key, morphisms.len());
                next_frontier.push(morphisms.len());
                morphisms.push(Morphism {
                    src: src.clone(),
                    dst: g.dst.clone(),
                    matrix,
                    witness_word: witness,
                });
            }
        }
        if next_frontier.is_empty() {
            stabilized = true;
            stabilization_depth = Some(level);
            break;
        }
        frontier = next_frontier;
    }

    MorphismSet {
        morphisms,
        depth,
        stabilized,
        stabilization_depth,
    }
}

/// Functor between presented categories, given on objects and generators.
/// A generator maps to a composable word in the target category (the empty
/// word is the identity).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatFunctor {
    pub obj_map: BTreeMap<String, String>,
    pub gen_map: BTreeMap<String, Vec<String>>,
}

impl CatFunctor {
    /// Identity functor of a category.
    pub fn identity(cat: &PresentedCategory) -> Self {
        CatFunctor {
            obj_map: cat
                .objects
                .iter()
                .map(|o| (o.name.clone(), o.name.clone()))
                .collect(),
            gen_map: cat
                .generators
                .iter()
                .map(|g| (g.name.clone(), vec![g.name.clone()]))
                .collect(),
        }
    }

    pub fn apply_object(&self, name: &str) -> Option<&str> {
        self.obj_map.get(name).map(String::as_str)
    }

    /// Image word of a generator word, in application order.
    pub fn apply_word(&self, word: &[String]) -> Option<Vec<String>> {
        let mut out = Vec::new();
        for name in word {
            out.extend(self.gen_map.get(name)?.iter().cloned());
        }
        Some(out)
    }

    /// Composition `second after self` (apply `self` first).
    pub fn then(&self, second: &CatFunctor) -> Option<CatFunctor> {
        let mut obj_map = BTreeMap::new();
        for (k, v) in &self.obj_map {
            obj_map.insert(k.clone(), second.apply_object(v)?.to_string());
        }
        let mut gen_map = BTreeMap::new();
        for (k, w) in &self.gen_map {
            gen_map.insert(k.clone(), second.apply_word(w)?);
        }
        Some(CatFunctor { obj_map, gen_map })
    }

    /// Checks that the data defines a functor `src -> dst`: every object is
    /// mapped, every generator maps to a composable word with matching
    /// endpoints, and declared relations still hold after mapping.
    pub fn validate(
        &self,
        src: &PresentedCategory,
        dst: &PresentedCategory,
    ) -> Result<(), FunctorError> {
        for o in &src.objects {
            let image = self
                .apply_object(&o.name)
                .ok_or_else(|| FunctorError::MissingObject {
                    object: o.name.clone(),
                })?;
            if dst.object(image).is_none() {
                return Err(FunctorError::UnknownTargetObject {
                    object: o.name.clone(),
                    image: image.to_string(),
                });
            }
        }
        for g in &src.generators {
            let word = self
                .gen_map
                .get(&g.name)
                .ok_or_else(|| FunctorError::MissingGenerator {
                    generator: g.name.clone(),
                })?;
            let src_image = self.apply_object(&g.src).expect("objects checked");
            let dst_image = self.apply_object(&g.dst).expect("objects checked");
            match dst.word_matrix(src_image, word) {
                Some((end, _)) if end == dst_image => {}
                Some((end, _)) => {
                    return Err(FunctorError::GeneratorEndpointMismatch {
                        generator: g.name.clone(),
                        expected: dst_image.to_string(),
                        found: end,
                    })
                }
                None => {
                    return Err(FunctorError::GeneratorImageNotComposable {
                        generator: g.name.clone(),
                    })
                }
            }
        }
        for rel in &src.relations {
            let l = self.apply_word(&rel.lhs).ok_or_else(|| {
                FunctorError::MissingGenerator {
                    generator: rel.lhs.join(";"),
                }
            })?;
            let r = self.apply_word(&rel.rhs).ok_or_else(|| {
                FunctorError::MissingGenerator {
                    generator: rel.rhs.join(";"),
                }
            })?;
            let start = rel
                .lhs
                .first()
                .and_then(|g| src.generator(g))
                .map(|g| self.apply_object(&g.src).expect("objects checked"));
            if let Some(start) = start {
                let lm = dst.word_matrix(start, &l);
                let rm = dst.word_matrix(start, &r);
                match (lm, rm) {
                    (Some((le, lmat)), Some((re, rmat))) if le == re && lmat == rmat => {}
                    _ => {
                        return Err(FunctorError::RelationNotPreserved {
                            lhs: rel.lhs.clone(),
                            rhs: rel.rhs.clone(),
                        })
                    }
                }
            }
        }
        Ok(())
    }
}

/// Why functor data fails to define a functor.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctorError {
    #[error("object `{object}` has no image")]
    MissingObject { object: String },
    #[error("object `{object}` maps to unknown object `{image}`")]
    UnknownTargetObject { object: String, image: String },
    #[error("generator `{generator}` has no image word")]
    MissingGenerator { generator: String },
    #[error("image word of generator `{generator}` does not compose")]
    GeneratorImageNotComposable { generator: String },
    #[error("image of generator `{generator}` ends at `{found}`, expected `{expected}`")]
    GeneratorEndpointMismatch {
        generator: String,
        expected: String,
        found: String,
    },
    #[error("relation {lhs:?} = {rhs:?} is not preserved")]
    RelationNotPreserved { lhs: Vec<String>, rhs: Vec<String> },
}

/// Element of the value space of one object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Element {
    pub object: String,
    pub vector: Vec<Rational>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rational {
        Rational::from_int(n)
    }

    pub fn circle_like() -> PresentedCategory {
        PresentedCategory {
            objects: vec![ObjectSpec {
                name: "X".into(),
                dim: 1,
            }],
            generators: vec![GeneratorArrow {
                name: "double".into(),
                src: "X".into(),
                dst: "X".into(),
                matrix: RationalMatrix::from_rows(vec![vec![rat(2)]]).unwrap(),
            }],
            relations: vec![],
        }
    }

    fn idempotent() -> PresentedCategory {
        PresentedCategory {
            objects: vec![ObjectSpec {
                name: "X".into(),
                dim: 2,
            }],
            generators: vec![GeneratorArrow {
                name: "p".into(),
                src: "X".into(),
                dst: "X".into(),
                matrix: RationalMatrix::from_rows(vec![
                    vec![rat(1), rat(0)],
                    vec![rat(0), rat(0)],
                ])
                .unwrap(),
            }],
            relations: vec![Relation {
                lhs: vec!["p".into(), "p".into()],
                rhs: vec!["p".into()],
            }],
        }
    }

    #[test]
    fn json_roundtrip_matches_documented_format() {
        let text = r#"{
            "objects": [{"name": "X", "dim": 1}],
            "generators": [{"name": "f", "src": "X", "dst": "X", "matrix": [["2"]]}],
            "relations": [{"lhs": ["f", "f"], "rhs": ["f"]}]
        }"#;
        let cat = PresentedCategory::from_json(text).unwrap();
        assert_eq!(cat.objects[0].dim, 1);
        assert_eq!(cat.generators[0].matrix.get(0, 0), &rat(2));
        let back = PresentedCategory::from_json(&cat.to_json()).unwrap();
        assert_eq!(back, cat);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"objects": [], "generators": [], "extra": 1}"#;
        assert!(PresentedCategory::from_json(text).is_err());
        let text = r#"{"objects": [{"name": "X", "dim": 1, "color": "red"}], "generators": []}"#;
        assert!(PresentedCategory::from_json(text).is_err());
    }

    #[test]
    fn validation_accepts_good_presentations() {
        assert!(circle_like().validate().is_valid());
        assert!(idempotent().validate().is_valid());
    }

    #[test]
    fn validation_reports_structured_defects() {
        let mut cat = circle_like();
        cat.generators.push(GeneratorArrow {
            name: "bad".into(),
            src: "X".into(),
            dst: "Y".into(),
            matrix: RationalMatrix::identity(1),
        });
        let report = cat.validate();
        assert!(!report.is_valid());
        assert!(report.errors.iter().any(|e| matches!(
            e,
            ValidationError::UnknownObject { generator, .. } if generator == "bad"
        )));

        let mut cat = circle_like();
        cat.generators[0].matrix = RationalMatrix::identity(2);
        assert!(cat
            .validate()
            .errors
            .iter()
            .any(|e| matches!(e, ValidationError::MatrixShape { .. })));

        let mut cat = idempotent();
        cat.relations[0].rhs = vec![];
        assert!(cat
            .validate()
            .errors
            .iter()
            .any(|e| matches!(e, ValidationError::WordNotComposable { .. })));
    }

    #[test]
    fn relation_matrix_mismatch_is_caught() {
        let mut cat = circle_like();
        cat.relations.push(Relation {
            lhs: vec!["double".into(), "double".into()],
            rhs: vec!["double".into()],
        });
        assert!(cat
            .validate()
            .errors
            .iter()
            .any(|e| matches!(e, ValidationError::RelationMatrixMismatch { .. })));
    }

    #[test]
    fn enumeration_starts_with_identities() {
        let set = enumerate_morphisms(&circle_like(), 0);
        assert_eq!(set.morphisms.len(), 1);
        assert!(set.morphisms[0].is_identity_word());
        assert_eq!(set.morphisms[0].matrix, RationalMatrix::identity(1));
        assert!(!set.stabilized);
    }

    #[test]
    fn enumeration_depth_counts_word_length() {
        let set = enumerate_morphisms(&circle_like(), 3);
        let mut powers: Vec<Rational> = set
            .morphisms
            .iter()
            .map(|m| m.matrix.get(0, 0).clone())
            .collect();
        powers.sort();
        assert_eq!(powers, vec![rat(1), rat(2), rat(4), rat(8)]);
        assert!(!set.stabilized, "powers of two keep growing");
    }

    #[test]
    fn enumeration_is_monotone_in_depth() {
        let cat = idempotent();
        let small = enumerate_morphisms(&cat, 1);
        let large = enumerate_morphisms(&cat, 5);
        for m in &small.morphisms {
            assert!(large
                .morphisms
                .iter()
                .any(|n| (&n.src, &n.dst, &n.matrix) == (&m.src, &m.dst, &m.matrix)));
        }
    }

    #[test]
    fn stabilization_is_detected_and_flagged() {
        let set = enumerate_morphisms(&idempotent(), 8);
        assert!(set.stabilized);
        assert_eq!(set.stabilization_depth, Some(2));
        // identity and p: p^2 = p collapses by matrix dedup.
        assert_eq!(set.morphisms.len(), 2);

        let discrete = PresentedCategory {
            objects: vec![ObjectSpec {
                name: "A".into(),
                dim: 1,
            }],
            generators: vec![],
            relations: vec![],
        };
        let set = enumerate_morphisms(&discrete, 4);
        assert!(set.stabilized);
        assert_eq!(set.morphisms.len(), 1);
    }

    #[test]
    fn morphisms_are_identified_with_their_functor_image() {
        // Two generators with the same matrix collapse to one morphism.
        let cat = PresentedCategory {
            objects: vec![ObjectSpec {
                name: "X".into(),
                dim: 1,
            }],
            generators: vec![
                GeneratorArrow {
                    name: "f".into(),
                    src: "X".into(),
                    dst: "X".into(),
                    matrix: RationalMatrix::from_rows(vec![vec![rat(3)]]).unwrap(),
                },
                GeneratorArrow {
                    name: "g".into(),
                    src: "X".into(),
                    dst: "X".into(),
                    matrix: RationalMatrix::from_rows(vec![vec![rat(3)]]).unwrap(),
                },
            ],
            relations: vec![],
        };
        let set = enumerate_morphisms(&cat, 1);
        assert_eq!(set.morphisms.len(), 2);
        assert_eq!(set.morphisms[1].witness_word, vec!["f".to_string()]);
    }

    #[test]
    fn word_matrix_composes_in_application_order() {
        let cat = PresentedCategory {
            objects: vec![
                ObjectSpec {
                    name: "A".into(),
                    dim: 1,
                },
                ObjectSpec {
                    name: "B".into(),
                    dim: 1,
                },
            ],
            generators: vec![
                GeneratorArrow {
                    name: "f".into(),
                    src: "A".into(),
                    dst: "B".into(),
                    matrix: RationalMatrix::from_rows(vec![vec![rat(2)]]).unwrap(),
                },
                GeneratorArrow {
                    name: "g".into(),
                    src: "B".into(),
                    dst: "B".into(),
                    matrix: RationalMatrix::from_rows(vec![vec![rat(5)]]).unwrap(),
                },
            ],
            relations: vec![],
        };
        let (dst, m) = cat
            .word_matrix("A", &["f".into(), "g".into()])
            .expect("composable");
        assert_eq!(dst, "B");
        assert_eq!(m.get(0, 0), &rat(10));
        assert!(cat.word_matrix("A", &["g".into()]).is_none());
        let (dst, m) = cat.word_matrix("B", &[]).expect("identity word");
        assert_eq!(dst, "B");
        assert_eq!(m, RationalMatrix::identity(1));
    }

    #[test]
    fn functor_validation() {
        let cat = idempotent();
        let id = CatFunctor::identity(&cat);
        assert!(id.validate(&cat, &cat).is_ok());

        let mut broken = id.clone();
        broken.gen_map.insert("p".into(), vec!["q".into()]);
        assert!(matches!(
            broken.validate(&cat, &cat),
            Err(FunctorError::GeneratorImageNotComposable { .. })
        ));

        // Collapsing p to the identity breaks the relation p.p = p only if
        // matrices disagree; the identity word satisfies it, so this is a
        // legal functor into the same category.
        let mut collapse = id;
        collapse.gen_map.insert("p".into(), vec![]);
        assert!(collapse.validate(&cat, &cat).is_ok());
    }

    #[test]
    fn functor_composition() {
        let cat = circle_like();
        let id = CatFunctor::identity(&cat);
        let twice = id.then(&id).unwrap();
        assert_eq!(twice, id);
        assert_eq!(
            id.apply_word(&["double".into(), "double".into()]).unwrap(),
            vec!["double".to_string(), "double".to_string()]
        );
    }

    #[test]
    fn zero_dimensional_objects_roundtrip() {
        let cat = PresentedCategory {
            objects: vec![
                ObjectSpec {
                    name: "Z".into(),
                    dim: 0,
                },
                ObjectSpec {
                    name: "X".into(),
                    dim: 2,
                },
            ],
            generators: vec![GeneratorArrow {
                name: "collapse".into(),
                src: "X".into(),
                dst: "Z".into(),
                matrix: RationalMatrix::zeros(0, 2),
            }],
            relations: vec![],
        };
        assert!(cat.validate().is_valid());
        let back = PresentedCategory::from_json(&cat.to_json()).unwrap();
        assert!(back.validate().is_valid());
        assert_eq!(back.generators[0].matrix.cols(), 2);
        let set = enumerate_morphisms(&back, 2);
        assert!(set.stabilized);
        assert_eq!(set.morphisms.len(), 3);
    }
}

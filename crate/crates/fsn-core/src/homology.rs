//! Finite simplicial complexes, rational homology, and the simplicial
//! l1-semi-norm of homology classes.
//!
//! The l1-value computed here minimizes the 1-norm over all simplicial
//! chains representing the class, as an exact linear program. It is an
//! upper bound for the singular l1-semi-norm of the corresponding
//! topological class (subdivision can decrease the singular value); the two
//! are never conflated. Degree-1 vanishing statements are instead certified
//! through the categorical bridge returned by [`circle_model_bridge`].
//!
//! Simplices are stored as strictly increasing vertex tuples ordered by
//! (dimension, lexicographic), and boundary signs come from position
//! parity, so every matrix and value is bit-reproducible.

use crate::exactq::{kernel_basis, rank, Rational, RationalMatrix, Subspace};
use crate::fincat::{GeneratorArrow, ObjectSpec, PresentedCategory};
use crate::simplex::{min_weighted_l1, L1Problem, L1Solution};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Raw complex data before validation.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    vertices: usize,
    simplices: Vec<Vec<usize>>,
}

/// Defect in simplicial-complex data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("simplex {index} is empty")]
    EmptySimplex { index: usize },
    #[error("simplex {index} is not strictly increasing")]
    Unsorted { index: usize },
    #[error("simplex {index} references vertex {vertex}, but only {vertices} exist")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        vertices: usize,
    },
    #[error("simplex {index} occurs more than once")]
    Duplicate { index: usize },
    #[error("face {face:?} of simplex {simplex:?} is missing")]
    MissingFace {
        simplex: Vec<usize>,
        face: Vec<usize>,
    },
}

/// Finite simplicial complex: strictly increasing vertex tuples, closed
/// under faces, in canonical (dimension, lexicographic) order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<usize>>,
}

impl TryFrom<RawComplex> for SimplicialComplex {
    type Error = ComplexError;
    fn try_from(raw: RawComplex) -> Result<Self, Self::Error> {
        SimplicialComplex::new(raw.vertices, raw.simplices)
    }
}

impl From<SimplicialComplex> for RawComplex {
    fn from(k: SimplicialComplex) -> RawComplex {
        RawComplex {
            vertices: k.vertex_count,
            simplices: k.simplices,
        }
    }
}

fn canonical_order(a: &Vec<usize>, b: &Vec<usize>) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl SimplicialComplex {
    /// Validates and canonically orders the given simplices.
    pub fn new(
        vertex_count: usize,
        mut simplices: Vec<Vec<usize>>,
    ) -> Result<Self, ComplexError> {
        for (index, s) in simplices.iter().enumerate() {
            if s.is_empty() {
                return Err(ComplexError::EmptySimplex { index });
            }
            if !s.windows(2).all(|w| w[0] < w[1]) {
                return Err(ComplexError::Unsorted { index });
            }
            if let Some(&vertex) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(ComplexError::VertexOutOfRange {
                    index,
                    vertex,
                    vertices: vertex_count,
                });
            }
        }
        simplices.sort_by(canonical_order);
        if let Some(pos) = simplices.windows(2).position(|w| w[0] == w[1]) {
            return Err(ComplexError::Duplicate { index: pos + 1 });
        }
        for s in &simplices {
            if s.len() == 1 {
                continue;
            }
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                if simplices.binary_search_by(|p| canonical_order(p, &face)).is_err() {
                    return Err(ComplexError::MissingFace {
                        simplex: s.clone(),
                        face,
                    });
                }
            }
        }
        Ok(SimplicialComplex {
            vertex_count,
            simplices,
        })
    }

    /// Builds the complex generated by the given simplices: all faces are
    /// added automatically.
    pub fn generated_by(
        vertex_count: usize,
        top_simplices: Vec<Vec<usize>>,
    ) -> Result<Self, ComplexError> {
        let mut all: Vec<Vec<usize>> = Vec::new();
        let mut stack = top_simplices;
        while let Some(s) = stack.pop() {
            if s.is_empty() || all.contains(&s) {
                continue;
            }
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                stack.push(face);
            }
            all.push(s);
        }
        SimplicialComplex::new(vertex_count, all)
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serialization cannot fail")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// All d-dimensional simplices in canonical order.
    pub fn simplices_of_dim(&self, d: usize) -> Vec<&Vec<usize>> {
        self.simplices.iter().filter(|s| s.len() == d + 1).collect()
    }

    /// Position of a simplex within its dimension's canonical order.
    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.simplices_of_dim(simplex.len().checked_sub(1)?)
            .iter()
            .position(|s| s.as_slice() == simplex)
    }

    pub fn dimension(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }
}

/// Matrix of the boundary map from d-chains to (d-1)-chains, with the sign
/// of the i-th face given by position parity. Degree 0 maps to the zero
/// space (a matrix with no rows).
pub fn boundary_matrix(k: &SimplicialComplex, d: usize) -> RationalMatrix {
    let cols_simplices = k.simplices_of_dim(d);
    if d == 0 {
        return RationalMatrix::zeros(0, cols_simplices.len());
    }
    let rows_simplices = k.simplices_of_dim(d - 1);
    let row_index: BTreeMap<&[usize], usize> = rows_simplices
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut m = RationalMatrix::zeros(rows_simplices.len(), cols_simplices.len());
    for (j, s) in cols_simplices.iter().enumerate() {
        let mut sign = Rational::one();
        for i in 0..s.len() {
            let mut face = (*s).clone();
            face.remove(i);
            let row = row_index[face.as_slice()];
            m.set(row, j, sign.clone());
            sign = -&sign;
        }
    }
    m
}

/// Rational homology in one degree: cycle and boundary ranks, a basis of
/// representative cycles, and the projection computing homology
/// coordinates of any cycle.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: usize,
    pub cycle_rank: usize,
    pub boundary_rank: usize,
    /// One representative cycle per homology dimension.
    pub representatives: Vec<Vec<Rational>>,
    /// Maps a cycle vector to its coordinates in the representative basis
    /// (the value on non-cycles is a meaningless linear extension).
    pub projection: RationalMatrix,
}

impl HomologyBasis {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

/// Computes kernel-mod-image homology in degree `d` with exact coordinate
/// projection.
pub fn homology_basis(k: &SimplicialComplex, d: usize) -> HomologyBasis {
    let n_d = k.simplices_of_dim(d).len();
    let cycles = kernel_basis(&boundary_matrix(k, d));
    let boundaries = Subspace::from_columns(n_d, &columns_of(&boundary_matrix(k, d + 1)));
    let cycle_rank = cycles.dim();
    let boundary_rank = boundaries.dim();

    // Extend a boundary basis to the cycle space by greedy completion.
    let mut spanned = boundaries.clone();
    let mut representatives: Vec<Vec<Rational>> = Vec::new();
    for z in cycles.basis_columns() {
        if !spanned.contains(&z) {
            spanned = spanned.sum(&Subspace::from_columns(n_d, std::slice::from_ref(&z)));
            representatives.push(z);
        }
    }
    debug_assert_eq!(representatives.len(), cycle_rank - boundary_rank);

    // Adapted basis of the chain space: boundaries, then representatives,
    // then a complement; homology coordinates are the middle rows of the
    // inverse.
    let mut adapted_cols: Vec<Vec<Rational>> = columns_of(&boundaries_basis(&boundaries));
    adapted_cols.extend(representatives.iter().cloned());
    let partial = Subspace::from_columns(n_d, &adapted_cols);
    for idx in partial.complement_indices() {
        let mut e = vec![Rational::zero(); n_d];
        e[idx] = Rational::one();
        adapted_cols.push(e);
    }
    let adapted = RationalMatrix::from_columns(n_d, &adapted_cols).expect("square by count");
    let inverse = adapted.inverse().expect("adapted basis is invertible");
    let mut projection = RationalMatrix::zeros(representatives.len(), n_d);
    for (out_row, in_row) in (boundary_rank..boundary_rank + representatives.len()).enumerate() {
        for c in 0..n_d {
            projection.set(out_row, c, inverse.get(in_row, c).clone());
        }
    }
    HomologyBasis {
        degree: d,
        cycle_rank,
        boundary_rank,
        representatives,
        projection,
    }
}

fn columns_of(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

fn boundaries_basis(s: &Subspace) -> RationalMatrix {
    RationalMatrix::from_columns(s.ambient_dim(), &s.basis_columns())
        .expect("basis columns share the ambient dimension")
}

/// Homology class given by an explicit representative cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub degree: usize,
    pub cycle: Vec<Rational>,
}

/// Defect in homology-class data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassError {
    #[error("chain has {found} coefficients, the complex has {expected} simplices in this degree")]
    WrongLength { expected: usize, found: usize },
    #[error("the chain is not a cycle")]
    NotACycle,
    #[error("coefficient key `{key}` is not a simplex of the complex")]
    UnknownSimplex { key: String },
    #[error("coefficient key `{key}` is malformed; expected a form like [0,1]")]
    MalformedKey { key: String },
}

/// Chain data as serialized: coefficients keyed by simplex, like
/// `{"degree": 1, "coefficients": {"[0,1]": "1"}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainData {
    pub degree: usize,
    pub coefficients: BTreeMap<String, Rational>,
}

fn parse_simplex_key(key: &str) -> Option<Vec<usize>> {
    let inner = key.trim().strip_prefix('[')?.strip_suffix(']')?;
    inner
        .split(',')
        .map(|part| part.trim().parse::<usize>().ok())
        .collect()
}

impl HomologyClass {
    /// Validates the chain vector as a cycle of the complex.
    pub fn new(
        k: &SimplicialComplex,
        degree: usize,
        cycle: Vec<Rational>,
    ) -> Result<Self, ClassError> {
        let expected = k.simplices_of_dim(degree).len();
        if cycle.len() != expected {
            return Err(ClassError::WrongLength {
                expected,
                found: cycle.len(),
            });
        }
        let boundary = boundary_matrix(k, degree).mul_vec(&cycle);
        if boundary.iter().any(|x| !x.is_zero()) {
            return Err(ClassError::NotACycle);
        }
        Ok(HomologyClass { degree, cycle })
    }

    pub fn from_chain_data(k: &SimplicialComplex, data: &ChainData) -> Result<Self, ClassError> {
        let mut cycle = vec![Rational::zero(); k.simplices_of_dim(data.degree).len()];
        for (key, value) in &data.coefficients {
            let simplex = parse_simplex_key(key).ok_or_else(|| ClassError::MalformedKey {
                key: key.clone(),
            })?;
            if simplex.len() != data.degree + 1 {
                return Err(ClassError::UnknownSimplex { key: key.clone() });
            }
            let index = k
                .index_of(&simplex)
                .ok_or_else(|| ClassError::UnknownSimplex { key: key.clone() })?;
            cycle[index] = value.clone();
        }
        HomologyClass::new(k, data.degree, cycle)
    }

    pub fn to_chain_data(&self, k: &SimplicialComplex) -> ChainData {
        let simplices = k.simplices_of_dim(self.degree);
        let coefficients = self
            .cycle
            .iter()
            .zip(simplices.iter())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, s)| {
                let key = format!(
                    "[{}]",
                    s.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                (key, c.clone())
            })
            .collect();
        ChainData {
            degree: self.degree,
            coefficients,
        }
    }
}

/// Exact minimum of the 1-norm over all chains representing the class:
/// `min |z + boundary(y)|_1` over rational `y`, solved as a weighted
/// l1-program with free boundary variables.
pub fn l1_simplicial(k: &SimplicialComplex, class: &HomologyClass) -> Rational {
    let n_d = k.simplices_of_dim(class.degree).len();
    assert_eq!(class.cycle.len(), n_d, "class validated against this complex");
    let boundary = boundary_matrix(k, class.degree + 1);
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(n_d + boundary.cols());
    let mut weights = Vec::with_capacity(n_d + boundary.cols());
    for j in 0..n_d {
        let mut e = vec![Rational::zero(); n_d];
        e[j] = Rational::one();
        columns.push(e);
        weights.push(Rational::one());
    }
    for j in 0..boundary.cols() {
        columns.push(boundary.column(j).iter().map(|x| -x).collect());
        weights.push(Rational::zero());
    }
    let problem = L1Problem::new(
        RationalMatrix::from_columns(n_d, &columns).expect("columns share the chain dimension"),
        class.cycle.clone(),
        weights,
    )
    .expect("shapes consistent");
    match min_weighted_l1(&problem) {
        L1Solution::Optimal { value, .. } => value,
        L1Solution::Infeasible => unreachable!("the identity columns always reach the target"),
    }
}

/// Matrix of the chain map induced in degree `d` by a simplicial vertex
/// map: images with repeated vertices die, the rest sort with a sign.
///
/// Returns an error if some simplex's image is not a simplex of the target
/// complex.
pub fn chain_map(
    src: &SimplicialComplex,
    dst: &SimplicialComplex,
    vertex_map: &[usize],
    d: usize,
) -> Result<RationalMatrix, ComplexError> {
    assert_eq!(vertex_map.len(), src.vertex_count(), "total vertex map");
    let src_simplices = src.simplices_of_dim(d);
    let dst_count = dst.simplices_of_dim(d).len();
    let mut m = RationalMatrix::zeros(dst_count, src_simplices.len());
    for (j, s) in src_simplices.iter().enumerate() {
        let mut image: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
        // Sort by adjacent transpositions, tracking the permutation sign.
        let mut sign = Rational::one();
        for a in 1..image.len() {
            let mut b = a;
            while b > 0 && image[b - 1] > image[b] {
                image.swap(b - 1, b);
                sign = -&sign;
                b -= 1;
            }
        }
        if image.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let row = dst.index_of(&image).ok_or_else(|| ComplexError::MissingFace {
            simplex: (*s).clone(),
            face: image.clone(),
        })?;
        m.set(row, j, sign.clone());
    }
    Ok(m)
}

/// The one-object category with a single doubling endomorphism: the
/// degree-2 self-map acting on the first homology of the circle. Feeding
/// it to the universal-locus machinery certifies that every finite
/// functorial semi-norm vanishes on that homology.
pub fn circle_model_bridge() -> PresentedCategory {
    PresentedCategory {
        objects: vec![ObjectSpec {
            name: "H1_circle".into(),
            dim: 1,
        }],
        generators: vec![GeneratorArrow {
            name: "degree2".into(),
            src: "H1_circle".into(),
            dst: "H1_circle".into(),
            matrix: RationalMatrix::from_rows(vec![vec![Rational::from_ratio(2, 1)]])
                .expect("1x1 matrix"),
        }],
        relations: vec![],
    }
}

/// Rank of the boundary matrix in one degree (exposed for reports).
pub fn boundary_rank(k: &SimplicialComplex, d: usize) -> usize {
    rank(&boundary_matrix(k, d))
}

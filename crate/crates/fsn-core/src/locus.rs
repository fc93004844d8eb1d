//! Vanishing loci and universality certification.
//!
//! The vanishing locus of a semi-norm at an object is the subspace of
//! elements with value zero. The universal locus is the intersection of the
//! vanishing loci of all finite functorial semi-norms; it cannot be computed
//! by quantifying over that class, so this module attacks it from both
//! sides:
//!
//! * from below, expanding eigenvectors force vanishing: if
//!   `F(w)(beta) = lambda * beta` with `|lambda| > 1`, functoriality gives
//!   `|lambda| * |beta| <= |beta|`, hence `|beta| = 0` for every finite
//!   functorial semi-norm, and the same holds for every image of `beta`;
//! * from above, when the matrix semigroup of the quotient by the inner
//!   bound stabilizes, taking the maximum of a fixed norm over the finite
//!   orbit produces a positive-definite finite functorial semi-norm on the
//!   quotient, so nothing outside the inner bound can vanish universally.
//!
//! When the two sides meet the locus is reported exact; otherwise only the
//! certified inner bound is reported.

use crate::exactq::{Rational, RationalMatrix, Subspace};
use crate::fincat::{enumerate_morphisms, Element, PresentedCategory};
use crate::seminorm::{
    eval_generated, EvalError, GeneratingFamily, SeminormHandle, Value,
};
use serde::Serialize;
use std::collections::BTreeMap;

/// How much of a vanishing locus a [`Locus`] value pins down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocusStatus {
    Exact,
    InnerBound,
    OuterBound,
}

/// Vanishing locus (or a one-sided bound for it) at a single object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Locus {
    pub object: String,
    pub space: Subspace,
    pub status: LocusStatus,
}

/// Exact witness that an element vanishes under every finite functorial
/// semi-norm: an eigenvector of an enumerated endomorphism with expanding
/// rational eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingCertificate {
    pub object: String,
    pub witness_word: Vec<String>,
    pub eigenvalue: Rational,
    pub eigenvector: Vec<Rational>,
}

impl VanishingCertificate {
    /// Re-checks the certificate from scratch against the category.
    pub fn verify(&self, cat: &PresentedCategory) -> bool {
        if self.eigenvalue.abs() <= Rational::one() {
            return false;
        }
        let Some((dst, m)) = cat.word_matrix(&self.object, &self.witness_word) else {
            return false;
        };
        if dst != self.object || self.eigenvector.iter().all(|c| c.is_zero()) {
            return false;
        }
        let image = m.mul_vec(&self.eigenvector);
        let scaled: Vec<Rational> = self
            .eigenvector
            .iter()
            .map(|c| c * &self.eigenvalue)
            .collect();
        image == scaled
    }
}

/// Inner bounds for the universal locus together with their certificates.
#[derive(Clone, Debug, Serialize)]
pub struct InnerLoci {
    pub loci: BTreeMap<String, Locus>,
    pub certificates: Vec<VanishingCertificate>,
}

/// Certified subspace of universally vanishing elements at every object:
/// the span of all expanding rational eigenvectors of enumerated
/// endomorphisms, closed under pushforward along every enumerated morphism.
pub fn eigen_vanishing_inner(cat: &PresentedCategory, depth: usize) -> InnerLoci {
    assert!(depth >= 1, "eigenvector search needs at least depth 1");
    let set = enumerate_morphisms(cat, depth);
    let one = Rational::one();
    let mut spaces: BTreeMap<String, Subspace> = cat
        .objects
        .iter()
        .map(|o| (o.name.clone(), Subspace::zero(o.dim)))
        .collect();
    let mut certificates = Vec::new();
    for m in &set.morphisms {
        if m.src != m.dst {
            continue;
        }
        for (eigenvalue, eigenspace) in crate::exactq::rational_eigenpairs(&m.matrix) {
            if eigenvalue.abs() <= one {
                continue;
            }
            for eigenvector in eigenspace.basis_columns() {
                certificates.push(VanishingCertificate {
                    object: m.src.clone(),
                    witness_word: m.witness_word.clone(),
                    eigenvalue: eigenvalue.clone(),
                    eigenvector,
                });
            }
            let space = spaces.get_mut(&m.src).expect("object exists");
            *space = space.sum(&eigenspace);
        }
    }
    // Close under pushforward: an image of a vanishing element vanishes.
    loop {
        let mut changed = false;
        for m in &set.morphisms {
            let src_cols = spaces[&m.src].basis_columns();
            if src_cols.is_empty() {
                continue;
            }
            let images: Vec<Vec<Rational>> =
                src_cols.iter().map(|v| m.matrix.mul_vec(v)).collect();
            let dst = spaces.get_mut(&m.dst).expect("object exists");
            let pushed = dst.sum(&Subspace::from_columns(dst.ambient_dim(), &images));
            if pushed != *dst {
                *dst = pushed;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let loci = spaces
        .into_iter()
        .map(|(object, space)| {
            let locus = Locus {
                object: object.clone(),
                space,
                status: LocusStatus::InnerBound,
            };
            (object, locus)
        })
        .collect();
    InnerLoci { loci, certificates }
}

/// Why an exact locus computation is unavailable.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocusError {
    #[error("morphism enumeration did not stabilize at depth {depth}; exactness unavailable")]
    NotStabilized { depth: usize },
    #[error("evaluation failed: {0}")]
    Eval(#[from] EvalError),
    #[error(
        "proof obligation failed at `{object}`: complement vector has value zero outside the zero-weight span"
    )]
    ObligationFailed { object: String },
}

/// Exact vanishing locus of a generated semi-norm at one object of a
/// stabilized category.
///
/// On a stabilized category the infimum is an attained linear-program
/// minimum, so an element has value zero exactly when it lies in the span
/// of images of zero-weight family entries. The claim is re-checked by a
/// proof obligation: every vector completing that span to the full space
/// must evaluate to a positive exact value.
pub fn exact_locus_on_stabilized(
    cat: &PresentedCategory,
    fam: &GeneratingFamily,
    object: &str,
    depth: usize,
) -> Result<Locus, LocusError> {
    fam.validate(cat).map_err(EvalError::Family)?;
    let Some(dim) = cat.dim_of(object) else {
        return Err(LocusError::Eval(EvalError::UnknownObject {
            object: object.to_string(),
        }));
    };
    let set = enumerate_morphisms(cat, depth);
    if !set.stabilized {
        return Err(LocusError::NotStabilized { depth });
    }
    let mut zero_cols: Vec<Vec<Rational>> = Vec::new();
    for m in set.morphisms_into(object) {
        for e in fam.entries.iter().filter(|e| e.weight.is_zero()) {
            if e.object == m.src {
                zero_cols.push(m.matrix.mul_vec(&e.vector));
            }
        }
    }
    let space = Subspace::from_columns(dim, &zero_cols);
    for index in space.complement_indices() {
        let mut vector = vec![Rational::zero(); dim];
        vector[index] = Rational::one();
        let elem = Element {
            object: object.to_string(),
            vector,
        };
        let got = eval_generated(cat, fam, &elem, depth)?.value;
        let positive = got.exact
            && match got.upper_bound {
                Value::Finite(v) => v.is_positive(),
                Value::Infinite => true,
            };
        if !positive {
            return Err(LocusError::ObligationFailed {
                object: object.to_string(),
            });
        }
    }
    Ok(Locus {
        object: object.to_string(),
        space,
        status: LocusStatus::Exact,
    })
}

/// Depth up to which quotient semigroup stabilization is probed by default.
pub const DEFAULT_QUOTIENT_CHECK_DEPTH: usize = 64;

/// Universal locus report: per-object loci, the eigenvector certificates,
/// and whether the quotient semigroup stabilized (turning the inner bounds
/// into exact answers).
#[derive(Clone, Debug, Serialize)]
pub struct UniversalLoci {
    pub loci: BTreeMap<String, Locus>,
    pub certificates: Vec<VanishingCertificate>,
    pub quotient_stabilized: bool,
    pub quotient_stabilization_depth: Option<usize>,
}

/// Quotient of the functor by a pushforward-closed family of subspaces:
/// same shape category, value spaces divided by the given subspaces.
fn quotient_category(
    cat: &PresentedCategory,
    spaces: &BTreeMap<String, Locus>,
) -> PresentedCategory {
    let mut maps: BTreeMap<String, (RationalMatrix, RationalMatrix)> = BTreeMap::new();
    let mut objects = Vec::with_capacity(cat.objects.len());
    for o in &cat.objects {
        let (p, l) = spaces[&o.name].space.quotient_maps();
        objects.push(crate::fincat::ObjectSpec {
            name: o.name.clone(),
            dim: p.rows(),
        });
        maps.insert(o.name.clone(), (p, l));
    }
    let generators = cat
        .generators
        .iter()
        .map(|g| {
            let (p_dst, _) = &maps[&g.dst];
            let (_, l_src) = &maps[&g.src];
            crate::fincat::GeneratorArrow {
                name: g.name.clone(),
                src: g.src.clone(),
                dst: g.dst.clone(),
                matrix: p_dst.mul(&g.matrix).mul(l_src),
            }
        })
        .collect();
    PresentedCategory {
        objects,
        generators,
        relations: cat.relations.clone(),
    }
}

/// Two-sided universal locus computation.
///
/// Always returns the eigenvector inner bound `V(X)`. When the matrix
/// semigroup of the quotient functor `F/V` stabilizes within
/// `quotient_check_depth`, a positive-definite finite functorial semi-norm
/// exists on the quotient (maximum of the 1-norm over the finite orbit),
/// its pull-back separates everything outside `V(X)`, and the loci are
/// exact.
pub fn universal_locus(
    cat: &PresentedCategory,
    depth: usize,
    quotient_check_depth: usize,
) -> UniversalLoci {
    let inner = eigen_vanishing_inner(cat, depth);
    let quotient = quotient_category(cat, &inner.loci);
    let probe = enumerate_morphisms(&quotient, quotient_check_depth);
    let mut loci = inner.loci;
    if probe.stabilized {
        for locus in loci.values_mut() {
            locus.status = LocusStatus::Exact;
        }
    }
    UniversalLoci {
        loci,
        certificates: inner.certificates,
        quotient_stabilized: probe.stabilized,
        quotient_stabilization_depth: probe.stabilization_depth,
    }
}

/// Semi-norm whose locus is to be compared, either as an already computed
/// per-object locus table or as a handle to analyze.
#[derive(Clone, Copy, Debug)]
pub enum LocusInput<'a> {
    Loci(&'a BTreeMap<String, Locus>),
    Handle(&'a SeminormHandle),
}

/// Outcome of a carrying check.
#[derive(Clone, Debug, Serialize)]
pub enum CarriesVerdict {
    Carries,
    /// `witness` vanishes under the first semi-norm but certifiably not
    /// under the second.
    Violated { object: String, witness: Vec<Rational> },
    /// The exact loci needed for a decision are not available; the partial
    /// bounds are returned instead.
    Undetermined {
        sigma: BTreeMap<String, Locus>,
        tau: BTreeMap<String, Locus>,
    },
}

impl CarriesVerdict {
    pub fn is_carries(&self) -> bool {
        matches!(self, CarriesVerdict::Carries)
    }
}

/// Per-object vanishing loci of a semi-norm handle, with the best status
/// this module can certify.
///
/// Every returned space is an inner bound (all its elements certifiably
/// vanish); `exact` status additionally certifies that nothing outside
/// vanishes. Tabulated handles yield the span of their zero-valued entries,
/// which is an inner bound only under the assumption that the table samples
/// a genuine semi-norm.
pub fn locus_of_handle(
    cat: &PresentedCategory,
    handle: &SeminormHandle,
    depth: usize,
) -> Result<BTreeMap<String, Locus>, EvalError> {
    let mut out = BTreeMap::new();
    match handle {
        SeminormHandle::Trivial => {
            for o in &cat.objects {
                out.insert(
                    o.name.clone(),
                    Locus {
                        object: o.name.clone(),
                        space: Subspace::full(o.dim),
                        status: LocusStatus::Exact,
                    },
                );
            }
        }
        SeminormHandle::Generated(fam) => {
            fam.validate(cat)?;
            let set = enumerate_morphisms(cat, depth);
            for o in &cat.objects {
                let mut zero_cols: Vec<Vec<Rational>> = Vec::new();
                for m in set.morphisms_into(&o.name) {
                    for e in fam.entries.iter().filter(|e| e.weight.is_zero()) {
                        if e.object == m.src {
                            zero_cols.push(m.matrix.mul_vec(&e.vector));
                        }
                    }
                }
                out.insert(
                    o.name.clone(),
                    Locus {
                        object: o.name.clone(),
                        space: Subspace::from_columns(o.dim, &zero_cols),
                        status: if set.stabilized {
                            LocusStatus::Exact
                        } else {
                            LocusStatus::InnerBound
                        },
                    },
                );
            }
        }
        SeminormHandle::Sum(parts) => {
            let mut tables = Vec::with_capacity(parts.len());
            for part in parts {
                tables.push(locus_of_handle(cat, part, depth)?);
            }
            for o in &cat.objects {
                let mut space = Subspace::full(o.dim);
                let mut exact = true;
                for t in &tables {
                    let l = &t[&o.name];
                    space = space.intersect(&l.space);
                    exact &= l.status == LocusStatus::Exact;
                }
                out.insert(
                    o.name.clone(),
                    Locus {
                        object: o.name.clone(),
                        space,
                        status: if exact {
                            LocusStatus::Exact
                        } else {
                            LocusStatus::InnerBound
                        },
                    },
                );
            }
        }
        SeminormHandle::Pullback { transform, inner } => {
            transform.validate()?;
            let inner_table = locus_of_handle(&transform.target, inner, depth)?;
            for o in &cat.objects {
                let image = transform
                    .functor
                    .apply_object(&o.name)
                    .expect("transform validated");
                let inner_locus = &inner_table[image];
                // Preimage of the inner locus under the component matrix:
                // kernel of (quotient projection of the locus) * component.
                let (p, _) = inner_locus.space.quotient_maps();
                let component = transform.component(&o.name).expect("transform validated");
                let space = crate::exactq::kernel_basis(&p.mul(component));
                out.insert(
                    o.name.clone(),
                    Locus {
                        object: o.name.clone(),
                        space,
                        status: inner_locus.status,
                    },
                );
            }
        }
        SeminormHandle::Tabulated(table) => {
            for o in &cat.objects {
                let zero_vectors: Vec<Vec<Rational>> = table
                    .iter()
                    .filter(|(e, v)| e.object == o.name && v.is_zero())
                    .map(|(e, _)| e.vector.clone())
                    .collect();
                out.insert(
                    o.name.clone(),
                    Locus {
                        object: o.name.clone(),
                        space: Subspace::from_columns(o.dim, &zero_vectors),
                        status: LocusStatus::InnerBound,
                    },
                );
            }
        }
    }
    Ok(out)
}

/// Decides whether the first semi-norm carries the second, which happens
/// exactly when every vanishing locus of the first is contained in the
/// corresponding locus of the second.
///
/// Since every computed locus space is an inner bound, a certified verdict
/// needs exactness on one side: `Carries` requires the first locus exact
/// (and containment in the second space, which only ever under-approximates
/// the true locus); `Violated` requires the second locus exact and a vector
/// of the first space outside it. The one exception is a pair of equal
/// handles, which denote the same semi-norm: carrying is reflexive, so the
/// verdict is `Carries` without any locus computation.
pub fn carries(
    cat: &PresentedCategory,
    sigma: LocusInput<'_>,
    tau: LocusInput<'_>,
    depth: usize,
) -> Result<CarriesVerdict, EvalError> {
    if let (LocusInput::Handle(a), LocusInput::Handle(b)) = (sigma, tau) {
        if a == b {
            return Ok(CarriesVerdict::Carries);
        }
    }
    let sigma_loci = match sigma {
        LocusInput::Loci(l) => l.clone(),
        LocusInput::Handle(h) => locus_of_handle(cat, h, depth)?,
    };
    let tau_loci = match tau {
        LocusInput::Loci(l) => l.clone(),
        LocusInput::Handle(h) => locus_of_handle(cat, h, depth)?,
    };
    let mut all_certified = true;
    for o in &cat.objects {
        let (Some(s), Some(t)) = (sigma_loci.get(&o.name), tau_loci.get(&o.name)) else {
            all_certified = false;
            continue;
        };
        if t.status == LocusStatus::Exact {
            for witness in s.space.basis_columns() {
                if !t.space.contains(&witness) {
                    return Ok(CarriesVerdict::Violated {
                        object: o.name.clone(),
                        witness,
                    });
                }
            }
        }
        let carried_here =
            s.status == LocusStatus::Exact && t.space.contains_subspace(&s.space);
        all_certified &= carried_here;
    }
    if all_certified {
        Ok(CarriesVerdict::Carries)
    } else {
        Ok(CarriesVerdict::Undetermined {
            sigma: sigma_loci,
            tau: tau_loci,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{GeneratorArrow, ObjectSpec};
    use crate::seminorm::FamilyEntry;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn one_object(matrix: Vec<Vec<Rational>>, name: &str) -> PresentedCategory {
        let dim = matrix.len();
        PresentedCategory {
            objects: vec![ObjectSpec {
                name: "X".into(),
                dim,
            }],
            generators: vec![GeneratorArrow {
                name: name.into(),
                src: "X".into(),
                dst: "X".into(),
                matrix: RationalMatrix::from_rows(matrix).unwrap(),
            }],
            relations: vec![],
        }
    }

    fn circle() -> PresentedCategory {
        one_object(vec![vec![rat(2, 1)]], "double")
    }

    fn idempotent() -> PresentedCategory {
        one_object(
            vec![
                vec![rat(1, 1), rat(0, 1)],
                vec![rat(0, 1), rat(0, 1)],
            ],
            "p",
        )
    }

    fn unipotent() -> PresentedCategory {
        one_object(
            vec![
                vec![rat(1, 1), rat(1, 1)],
                vec![rat(0, 1), rat(1, 1)],
            ],
            "shift",
        )
    }

    #[test]
    fn expanding_eigenvalue_spans_the_full_line() {
        let inner = eigen_vanishing_inner(&circle(), 3);
        let locus = &inner.loci["X"];
        assert!(locus.space.is_full());
        assert_eq!(locus.status, LocusStatus::InnerBound);
        assert!(!inner.certificates.is_empty());
        for c in &inner.certificates {
            assert!(c.verify(&circle()));
        }
    }

    #[test]
    fn projections_certify_nothing() {
        let inner = eigen_vanishing_inner(&idempotent(), 4);
        assert!(inner.loci["X"].space.is_zero());
        assert!(inner.certificates.is_empty());
    }

    #[test]
    fn no_generators_certify_nothing() {
        let cat = PresentedCategory {
            objects: vec![ObjectSpec {
                name: "X".into(),
                dim: 2,
            }],
            generators: vec![],
            relations: vec![],
        };
        let inner = eigen_vanishing_inner(&cat, 2);
        assert!(inner.loci["X"].space.is_zero());
    }

    #[test]
    fn pushforward_closure_reaches_other_objects() {
        // Expanding endomorphism on A, arrow A -> B carrying the vanishing
        // line along.
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
                    name: "double".into(),
                    src: "A".into(),
                    dst: "A".into(),
                    matrix: RationalMatrix::from_rows(vec![vec![rat(2, 1)]]).unwrap(),
                },
                GeneratorArrow {
                    name: "to_b".into(),
                    src: "A".into(),
                    dst: "B".into(),
                    matrix: RationalMatrix::from_rows(vec![vec![rat(1, 1)]]).unwrap(),
                },
            ],
            relations: vec![],
        };
        let inner = eigen_vanishing_inner(&cat, 3);
        assert!(inner.loci["A"].space.is_full());
        assert!(inner.loci["B"].space.is_full(), "image of a vanishing element vanishes");
    }

    #[test]
    fn certificates_reject_tampering() {
        let cat = circle();
        let inner = eigen_vanishing_inner(&cat, 2);
        let mut c = inner.certificates[0].clone();
        c.eigenvalue = rat(1, 1);
        assert!(!c.verify(&cat));
        let mut c2 = inner.certificates[0].clone();
        c2.eigenvector = vec![rat(0, 1)];
        assert!(!c2.verify(&cat));
    }

    #[test]
    fn exact_locus_is_zero_for_positive_weights() {
        let cat = idempotent();
        let fam = GeneratingFamily {
            entries: vec![
                FamilyEntry {
                    object: "X".into(),
                    vector: vec![rat(1, 1), rat(0, 1)],
                    weight: rat(1, 1),
                },
                FamilyEntry {
                    object: "X".into(),
                    vector: vec![rat(0, 1), rat(1, 1)],
                    weight: rat(1, 2),
                },
            ],
        };
        let locus = exact_locus_on_stabilized(&cat, &fam, "X", 8).unwrap();
        assert!(locus.space.is_zero());
        assert_eq!(locus.status, LocusStatus::Exact);
    }

    #[test]
    fn zero_weight_entries_inflate_the_locus() {
        let cat = idempotent();
        let fam = GeneratingFamily {
            entries: vec![
                FamilyEntry {
                    object: "X".into(),
                    vector: vec![rat(1, 1), rat(1, 1)],
                    weight: rat(0, 1),
                },
                FamilyEntry {
                    object: "X".into(),
                    vector: vec![rat(0, 1), rat(1, 1)],
                    weight: rat(1, 1),
                },
            ],
        };
        let locus = exact_locus_on_stabilized(&cat, &fam, "X", 8).unwrap();
        // Images of (1,1) under {I, p}: (1,1) and (1,0); together they span.
        assert!(locus.space.is_full());
    }

    #[test]
    fn non_stabilized_categories_refuse_exactness() {
        let fam = GeneratingFamily {
            entries: vec![FamilyEntry {
                object: "X".into(),
                vector: vec![rat(1, 1)],
                weight: rat(1, 1),
            }],
        };
        let err = exact_locus_on_stabilized(&circle(), &fam, "X", 6).unwrap_err();
        assert!(matches!(err, LocusError::NotStabilized { depth: 6 }));
    }

    #[test]
    fn universal_locus_of_the_doubling_model_is_everything() {
        let report = universal_locus(&circle(), 3, DEFAULT_QUOTIENT_CHECK_DEPTH);
        let locus = &report.loci["X"];
        assert!(locus.space.is_full());
        assert_eq!(locus.status, LocusStatus::Exact);
        assert!(report.quotient_stabilized, "zero-dimensional quotient");
    }

    #[test]
    fn universal_locus_of_the_idempotent_model_is_zero() {
        let report = universal_locus(&idempotent(), 4, DEFAULT_QUOTIENT_CHECK_DEPTH);
        let locus = &report.loci["X"];
        assert!(locus.space.is_zero());
        assert_eq!(locus.status, LocusStatus::Exact);
    }

    #[test]
    fn unipotent_model_stays_undetermined() {
        let report = universal_locus(&unipotent(), 4, 16);
        let locus = &report.loci["X"];
        assert!(locus.space.is_zero());
        assert_eq!(locus.status, LocusStatus::InnerBound);
        assert!(!report.quotient_stabilized, "unipotent powers are all distinct");
    }

    #[test]
    fn carrying_is_reflexive_on_exact_loci() {
        let cat = idempotent();
        let fam = GeneratingFamily {
            entries: vec![
                FamilyEntry {
                    object: "X".into(),
                    vector: vec![rat(1, 1), rat(0, 1)],
                    weight: rat(1, 1),
                },
                FamilyEntry {
                    object: "X".into(),
                    vector: vec![rat(0, 1), rat(1, 1)],
                    weight: rat(1, 1),
                },
            ],
        };
        let handle = SeminormHandle::Generated(fam);
        let verdict = carries(
            &cat,
            LocusInput::Handle(&handle),
            LocusInput::Handle(&handle),
            8,
        )
        .unwrap();
        assert!(verdict.is_carries());
    }

    #[test]
    fn trivial_never_carries_a_positive_definite_seminorm() {
        let cat = idempotent();
        let fam = GeneratingFamily {
            entries: vec![
                FamilyEntry {
                    object: "X".into(),
                    vector: vec![rat(1, 1), rat(0, 1)],
                    weight: rat(1, 1),
                },
                FamilyEntry {
                    object: "X".into(),
                    vector: vec![rat(0, 1), rat(1, 1)],
                    weight: rat(1, 1),
                },
            ],
        };
        let tau = SeminormHandle::Generated(fam);
        let verdict = carries(
            &cat,
            LocusInput::Handle(&SeminormHandle::Trivial),
            LocusInput::Handle(&tau),
            8,
        )
        .unwrap();
        assert!(matches!(verdict, CarriesVerdict::Violated { .. }));
        if let CarriesVerdict::Violated { witness, .. } = verdict {
            let table = locus_of_handle(&cat, &tau, 8).unwrap();
            assert!(!table["X"].space.contains(&witness));
        }
    }

    #[test]
    fn larger_weights_carry_smaller_weights() {
        // Both loci are exact and equal ({0}), so the verdict is decided.
        let cat = idempotent();
        let base = |w: Rational| GeneratingFamily {
            entries: vec![
                FamilyEntry {
                    object: "X".into(),
                    vector: vec![rat(1, 1), rat(0, 1)],
                    weight: w.clone(),
                },
                FamilyEntry {
                    object: "X".into(),
                    vector: vec![rat(0, 1), rat(1, 1)],
                    weight: w,
                },
            ],
        };
        let big = SeminormHandle::Generated(base(rat(3, 1)));
        let small = SeminormHandle::Generated(base(rat(1, 1)));
        let verdict = carries(
            &cat,
            LocusInput::Handle(&big),
            LocusInput::Handle(&small),
            8,
        )
        .unwrap();
        assert!(verdict.is_carries());
    }

    #[test]
    fn non_exact_loci_return_undetermined() {
        // Distinct handles on a category that never stabilizes: neither
        // locus is exact, so no verdict can be certified.
        let cat = circle();
        let family_with_weight = |w: Rational| {
            SeminormHandle::Generated(GeneratingFamily {
                entries: vec![FamilyEntry {
                    object: "X".into(),
                    vector: vec![rat(1, 1)],
                    weight: w,
                }],
            })
        };
        let h1 = family_with_weight(rat(1, 1));
        let h2 = family_with_weight(rat(2, 1));
        let verdict = carries(&cat, LocusInput::Handle(&h1), LocusInput::Handle(&h2), 4).unwrap();
        assert!(matches!(verdict, CarriesVerdict::Undetermined { .. }));
    }

    #[test]
    fn loci_are_pushforward_invariant() {
        let report = universal_locus(&idempotent(), 4, DEFAULT_QUOTIENT_CHECK_DEPTH);
        let set = enumerate_morphisms(&idempotent(), 4);
        for m in &set.morphisms {
            let src_space = &report.loci[&m.src].space;
            let dst_space = &report.loci[&m.dst].space;
            for v in src_space.basis_columns() {
                assert!(dst_space.contains(&m.matrix.mul_vec(&v)));
            }
        }
    }

    #[test]
    fn pullback_locus_is_a_preimage() {
        // Pull a positive-definite semi-norm back along a projection-like
        // component; the locus becomes the kernel of the component.
        let cat = idempotent();
        let fam = GeneratingFamily {
            entries: vec![
                FamilyEntry {
                    object: "X".into(),
                    vector: vec![rat(1, 1), rat(0, 1)],
                    weight: rat(1, 1),
                },
                FamilyEntry {
                    object: "X".into(),
                    vector: vec![rat(0, 1), rat(1, 1)],
                    weight: rat(1, 1),
                },
            ],
        };
        let mut transform = crate::seminorm::NatTransform::identity(&cat);
        // This matrix commutes with the projection generator, so the
        // transformation is natural; its kernel is the second axis.
        transform.components.insert(
            "X".into(),
            RationalMatrix::from_rows(vec![
                vec![rat(1, 1), rat(0, 1)],
                vec![rat(0, 1), rat(0, 1)],
            ])
            .unwrap(),
        );
        transform.validate().unwrap();
        let pulled = SeminormHandle::Pullback {
            transform,
            inner: Box::new(SeminormHandle::Generated(fam)),
        };
        let table = locus_of_handle(&cat, &pulled, 8).unwrap();
        let locus = &table["X"];
        assert_eq!(locus.space.dim(), 1);
        assert!(locus.space.contains(&[rat(0, 1), rat(1, 1)]));
    }

    #[test]
    fn carrying_is_reflexive_even_without_stabilization() {
        // The doubling category never stabilizes, so loci alone could not
        // certify anything; equal handles decide by reflexivity.
        let cat = circle();
        let handle = SeminormHandle::Generated(GeneratingFamily {
            entries: vec![FamilyEntry {
                object: "X".into(),
                vector: vec![rat(1, 1)],
                weight: rat(1, 1),
            }],
        });
        let verdict = carries(
            &cat,
            LocusInput::Handle(&handle),
            LocusInput::Handle(&handle),
            4,
        )
        .unwrap();
        assert!(verdict.is_carries());
    }
}

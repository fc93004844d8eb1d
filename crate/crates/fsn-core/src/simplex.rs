//! Exact weighted l1 minimization.
//!
//! [`min_weighted_l1`] computes `min sum_j w_j |b_j|` over all rational
//! coefficient vectors with `sum_j b_j M_j = target`, where the `M_j` are the
//! columns of the problem. The signed problem is split into nonnegative
//! variables and solved by a two-phase simplex over [`Rational`] with Bland's
//! rule, so pivoting terminates and is deterministic (lowest eligible index
//! everywhere). Infeasibility is reported as a status, never as a sentinel
//! value.
//!
//! Columns with weight zero are projected out before pivoting: the problem is
//! solved in the quotient by their span and the exact coefficients on those
//! columns are reconstructed afterwards from the residual.
//!
//! [`enumerate_basic_optima`] is an independent oracle for small instances:
//! it enumerates every basic solution of the split system directly and takes
//! the cheapest feasible one.

use crate::exactq::{rank, solve, Rational, RationalMatrix, Subspace};

/// Weighted l1 minimization instance.
#[derive(Clone, Debug)]
pub struct L1Problem {
    columns: RationalMatrix,
    target: Vec<Rational>,
    weights: Vec<Rational>,
}

/// Why an [`L1Problem`] could not be constructed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProblemError {
    #[error("{weights} weights for {columns} columns")]
    WeightCount { columns: usize, weights: usize },
    #[error("target has dimension {target}, columns have dimension {rows}")]
    TargetDimension { rows: usize, target: usize },
    #[error("negative weight {weight} at column {index}")]
    NegativeWeight { index: usize, weight: String },
}

/// Outcome of an l1 minimization. A problem with no representation of the
/// target is `Infeasible` (the semi-norm value is infinite there).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum L1Solution {
    Optimal {
        value: Rational,
        /// Signed coefficient per original column.
        coefficients: Vec<Rational>,
    },
    Infeasible,
}

impl L1Solution {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            L1Solution::Optimal { value, .. } => Some(value),
            L1Solution::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, L1Solution::Optimal { .. })
    }
}

impl L1Problem {
    pub fn new(
        columns: RationalMatrix,
        target: Vec<Rational>,
        weights: Vec<Rational>,
    ) -> Result<Self, ProblemError> {
        if weights.len() != columns.cols() {
            return Err(ProblemError::WeightCount {
                columns: columns.cols(),
                weights: weights.len(),
            });
        }
        if target.len() != columns.rows() {
            return Err(ProblemError::TargetDimension {
                rows: columns.rows(),
                target: target.len(),
            });
        }
        if let Some((index, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| w.is_negative())
        {
            return Err(ProblemError::NegativeWeight {
                index,
                weight: w.to_string(),
            });
        }
        Ok(L1Problem {
            columns,
            target,
            weights,
        })
    }

    pub fn dimension(&self) -> usize {
        self.columns.rows()
    }

    pub fn num_columns(&self) -> usize {
        self.columns.cols()
    }

    pub fn columns(&self) -> &RationalMatrix {
        &self.columns
    }

    pub fn target(&self) -> &[Rational] {
        &self.target
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }
}

/// Exact minimizer of `sum_j w_j |b_j|` subject to `sum_j b_j M_j = target`.
pub fn min_weighted_l1(problem: &L1Problem) -> L1Solution {
    let d = problem.dimension();
    let n = problem.num_columns();
    let zero_idx: Vec<usize> = (0..n)
        .filter(|&j| problem.weights[j].is_zero())
        .collect();
    let pos_idx: Vec<usize> = (0..n)
        .filter(|&j| !problem.weights[j].is_zero())
        .collect();

    let zero_cols: Vec<Vec<Rational>> =
        zero_idx.iter().map(|&j| problem.columns.column(j)).collect();
    let zero_span = Subspace::from_columns(d, &zero_cols);
    let (proj, _) = zero_span.quotient_maps();

    let proj_target = proj.mul_vec(&problem.target);
    let proj_cols: Vec<Vec<Rational>> = pos_idx
        .iter()
        .map(|&j| proj.mul_vec(&problem.columns.column(j)))
        .collect();

    // Split signed coefficients into positive and negative parts.
    let k = pos_idx.len();
    let mut split_cols = Vec::with_capacity(2 * k);
    split_cols.extend(proj_cols.iter().cloned());
    split_cols.extend(proj_cols.iter().map(|c| c.iter().map(|x| -x).collect()));
    let a = RationalMatrix::from_columns(proj.rows(), &split_cols).expect("column shape");
    let mut costs: Vec<Rational> = pos_idx.iter().map(|&j| problem.weights[j].clone()).collect();
    costs.extend_from_slice(&costs.clone());

    let outcome = solve_standard_form(&a, &proj_target, &costs);
    let (value, split) = match outcome {
        StandardOutcome::Optimal { value, x } => (value, x),
        StandardOutcome::Infeasible => return L1Solution::Infeasible,
    };

    let mut coefficients = vec![Rational::zero(); n];
    for (slot, &j) in pos_idx.iter().enumerate() {
        coefficients[j] = &split[slot] - &split[k + slot];
    }

    // Reconstruct coefficients on the zero-weight columns from the residual,
    // which lies in their span by construction of the projection.
    let mut residual = problem.target.clone();
    for j in 0..n {
        if coefficients[j].is_zero() {
            continue;
        }
        let col = problem.columns.column(j);
        for (r, c) in residual.iter_mut().zip(col.iter()) {
            *r -= &(c * &coefficients[j]);
        }
    }
    if residual.iter().any(|x| !x.is_zero()) {
        let zero_matrix =
            RationalMatrix::from_columns(d, &zero_cols).expect("column shape");
        let t = solve(&zero_matrix, &residual)
            .expect("residual lies in the span of zero-weight columns");
        for (slot, &j) in zero_idx.iter().enumerate() {
            coefficients[j] = &coefficients[j] + &t[slot];
        }
    }

    L1Solution::Optimal {
        value,
        coefficients,
    }
}

/// Error from the enumeration oracle.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("oracle accepts at most {max_cols} columns, instance has {columns}")]
    InstanceTooLarge { columns: usize, max_cols: usize },
}

/// Independent check for [`min_weighted_l1`] on small instances: enumerates
/// all basic solutions of the split system and minimizes directly. The
/// optimum of a feasible bounded instance is attained at a basic solution,
/// and feasibility itself is decided by the existence of one.
pub fn enumerate_basic_optima(
    problem: &L1Problem,
    max_cols: usize,
) -> Result<L1Solution, OracleError> {
    let n = problem.num_columns();
    if n > max_cols {
        return Err(OracleError::InstanceTooLarge {
            columns: n,
            max_cols,
        });
    }
    let d = problem.dimension();
    let mut split_cols = Vec::with_capacity(2 * n);
    for j in 0..n {
        split_cols.push(problem.columns.column(j));
    }
    for j in 0..n {
        split_cols.push(problem.columns.column(j).iter().map(|x| -x).collect());
    }
    let costs: Vec<Rational> = problem
        .weights
        .iter()
        .chain(problem.weights.iter())
        .cloned()
        .collect();

    let mut best: Option<(Rational, Vec<Rational>)> = None;
    let max_size = d.min(2 * n);
    let consider = |subset: &[usize], best: &mut Option<(Rational, Vec<Rational>)>| {
        let cols: Vec<Vec<Rational>> = subset.iter().map(|&j| split_cols[j].clone()).collect();
        let m = RationalMatrix::from_columns(d, &cols).expect("column shape");
        if rank(&m) < subset.len() {
            return;
        }
        let Some(x) = solve(&m, &problem.target) else {
            return;
        };
        if x.iter().any(Rational::is_negative) {
            return;
        }
        let cost: Rational = subset
            .iter()
            .zip(x.iter())
            .map(|(&j, v)| &costs[j] * v)
            .sum();
        let better = match best {
            None => true,
            Some((cur, _)) => cost < *cur,
        };
        if better {
            let mut coeffs = vec![Rational::zero(); n];
            for (&j, v) in subset.iter().zip(x.iter()) {
                let orig = j % n;
                let signed = if j < n { v.clone() } else { -v.clone() };
                coeffs[orig] = &coeffs[orig] + &signed;
            }
            *best = Some((cost, coeffs));
        }
    };

    let mut subset = Vec::new();
    enumerate_subsets(2 * n, max_size, 0, &mut subset, &mut |s| {
        consider(s, &mut best)
    });

    Ok(match best {
        Some((value, coefficients)) => L1Solution::Optimal {
            value,
            coefficients,
        },
        None => L1Solution::Infeasible,
    })
}

fn enumerate_subsets(
    universe: usize,
    max_size: usize,
    start: usize,
    current: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    visit(current);
    if current.len() == max_size {
        return;
    }
    for next in start..universe {
        current.push(next);
        enumerate_subsets(universe, max_size, next + 1, current, visit);
        current.pop();
    }
}

enum StandardOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
}

/// Two-phase simplex for `min c.x` subject to `A x = b`, `x >= 0`, with
/// `c >= 0` (so the objective is bounded below and phase two terminates at
/// an optimum). Bland's rule everywhere prevents cycling.
fn solve_standard_form(a: &RationalMatrix, b: &[Rational], c: &[Rational]) -> StandardOutcome {
    let m = a.rows();
    let n = a.cols();
    debug_assert_eq!(b.len(), m);
    debug_assert_eq!(c.len(), n);
    debug_assert!(c.iter().all(|w| !w.is_negative()));

    // Tableau rows: original columns, artificial identity, right hand side.
    let total = n + m;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rational> = (0..n).map(|j| a.get(i, j).clone()).collect();
        row.extend(std::iter::repeat_with(Rational::zero).take(m));
        row.push(b[i].clone());
        if row[total].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        row[n + i] = Rational::one();
        rows.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let phase1: Vec<Rational> = (0..total)
        .map(|j| {
            if j < n {
                Rational::zero()
            } else {
                Rational::one()
            }
        })
        .collect();
    pivot_to_optimum(&mut rows, &mut basis, &phase1, total);

    let infeasibility: Rational = basis
        .iter()
        .zip(rows.iter())
        .map(|(&bi, row)| &phase1[bi] * &row[total])
        .sum();
    if !infeasibility.is_zero() {
        return StandardOutcome::Infeasible;
    }

    // Remove artificial variables from the basis; rows that cannot pivot on
    // an original column are redundant constraints.
    let mut i = 0;
    while i < rows.len() {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !rows[i][j].is_zero()) {
                pivot(&mut rows, &mut basis, i, j);
                i += 1;
            } else {
                rows.remove(i);
                basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    // Phase two on original columns only.
    for row in rows.iter_mut() {
        let rhs = row[total].clone();
        row.truncate(n);
        row.push(rhs);
    }
    pivot_to_optimum(&mut rows, &mut basis, c, n);

    let mut x = vec![Rational::zero(); n];
    for (i, &bi) in basis.iter().enumerate() {
        x[bi] = rows[i][n].clone();
    }
    let value: Rational = c.iter().zip(x.iter()).map(|(w, v)| w * v).sum();
    StandardOutcome::Optimal { value, x }
}

fn pivot_to_optimum(
    rows: &mut Vec<Vec<Rational>>,
    basis: &mut [usize],
    cost: &[Rational],
    num_vars: usize,
) {
    let rhs_col = rows.first().map_or(0, |r| r.len() - 1);
    loop {
        let multipliers: Vec<Rational> = basis.iter().map(|&bi| cost[bi].clone()).collect();
        let mut entering = None;
        for j in 0..num_vars {
            let mut reduced = cost[j].clone();
            for (mu, row) in multipliers.iter().zip(rows.iter()) {
                if !mu.is_zero() && !row[j].is_zero() {
                    reduced -= &(mu * &row[j]);
                }
            }
            if reduced.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else { return };

        let mut leaving: Option<(usize, Rational)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !row[e].is_positive() {
                continue;
            }
            let ratio = &row[rhs_col] / &row[e];
            let replace = match &leaving {
                None => true,
                Some((li, best)) => {
                    ratio < *best || (ratio == *best && basis[i] < basis[*li])
                }
            };
            if replace {
                leaving = Some((i, ratio));
            }
        }
        let Some((l, _)) = leaving else {
            unreachable!("objective is bounded below, improving ray cannot exist")
        };
        pivot(rows, basis, l, e);
    }
}

fn pivot(rows: &mut [Vec<Rational>], basis: &mut [usize], pivot_row: usize, pivot_col: usize) {
    let inv = rows[pivot_row][pivot_col]
        .recip()
        .expect("pivot entry is nonzero");
    for x in rows[pivot_row].iter_mut() {
        *x *= &inv;
    }
    for i in 0..rows.len() {
        if i == pivot_row || rows[i][pivot_col].is_zero() {
            continue;
        }
        let factor = rows[i][pivot_col].clone();
        for j in 0..rows[i].len() {
            let delta = &factor * &rows[pivot_row][j];
            rows[i][j] -= &delta;
        }
    }
    basis[pivot_row] = pivot_col;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn problem(cols: &[&[i64]], target: &[i64], weights: &[(i64, i64)]) -> L1Problem {
        let dim = cols.first().map_or(target.len(), |c| c.len());
        let columns: Vec<Vec<Rational>> = cols
            .iter()
            .map(|c| c.iter().map(|&x| Rational::from_int(x)).collect())
            .collect();
        L1Problem::new(
            RationalMatrix::from_columns(dim, &columns).unwrap(),
            target.iter().map(|&x| Rational::from_int(x)).collect(),
            weights.iter().map(|&(n, d)| rat(n, d)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        let cols = RationalMatrix::from_columns(2, &[vec![rat(1, 1), rat(0, 1)]]).unwrap();
        assert!(matches!(
            L1Problem::new(cols.clone(), vec![rat(1, 1)], vec![rat(1, 1)]),
            Err(ProblemError::TargetDimension { .. })
        ));
        assert!(matches!(
            L1Problem::new(cols.clone(), vec![rat(1, 1), rat(0, 1)], vec![]),
            Err(ProblemError::WeightCount { .. })
        ));
        assert!(matches!(
            L1Problem::new(cols, vec![rat(1, 1), rat(0, 1)], vec![rat(-1, 1)]),
            Err(ProblemError::NegativeWeight { .. })
        ));
    }

    #[test]
    fn picks_the_cheaper_column() {
        // Columns 1 and 2 in dimension one: representing 1 by the second
        // column costs 1/2.
        let p = problem(&[&[1], &[2]], &[1], &[(1, 1), (1, 1)]);
        let sol = min_weighted_l1(&p);
        assert_eq!(
            sol,
            L1Solution::Optimal {
                value: rat(1, 2),
                coefficients: vec![rat(0, 1), rat(1, 2)],
            }
        );
    }

    #[test]
    fn weights_change_the_optimum() {
        let p = problem(&[&[1], &[2]], &[1], &[(1, 1), (10, 1)]);
        match min_weighted_l1(&p) {
            L1Solution::Optimal { value, .. } => assert_eq!(value, rat(1, 1)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_target_is_reported() {
        let p = problem(&[&[1, 0]], &[0, 1], &[(1, 1)]);
        assert_eq!(min_weighted_l1(&p), L1Solution::Infeasible);
        assert_eq!(
            enumerate_basic_optima(&p, 8).unwrap(),
            L1Solution::Infeasible
        );
    }

    #[test]
    fn negative_coefficients_are_allowed() {
        // target -3 via column 1 costs 3 with coefficient -3.
        let p = problem(&[&[1]], &[-3], &[(1, 1)]);
        assert_eq!(
            min_weighted_l1(&p),
            L1Solution::Optimal {
                value: rat(3, 1),
                coefficients: vec![rat(-3, 1)],
            }
        );
    }

    #[test]
    fn zero_target_costs_nothing() {
        let p = problem(&[&[1, 2], &[0, 1]], &[0, 0], &[(1, 1), (1, 1)]);
        assert_eq!(
            min_weighted_l1(&p),
            L1Solution::Optimal {
                value: rat(0, 1),
                coefficients: vec![rat(0, 1), rat(0, 1)],
            }
        );
    }

    #[test]
    fn zero_weight_columns_are_projected_and_reconstructed() {
        // First column is free; representing e1 + e2 only pays for e2.
        let p = problem(&[&[1, 0], &[0, 1]], &[1, 1], &[(0, 1), (1, 1)]);
        let sol = min_weighted_l1(&p);
        assert_eq!(
            sol,
            L1Solution::Optimal {
                value: rat(1, 1),
                coefficients: vec![rat(1, 1), rat(1, 1)],
            }
        );
        // Entirely free representation.
        let p = problem(&[&[1, 0], &[0, 1]], &[5, -2], &[(0, 1), (0, 1)]);
        assert_eq!(
            min_weighted_l1(&p),
            L1Solution::Optimal {
                value: rat(0, 1),
                coefficients: vec![rat(5, 1), rat(-2, 1)],
            }
        );
    }

    #[test]
    fn zero_weight_span_does_not_hide_infeasibility() {
        let p = problem(&[&[1, 0, 0]], &[0, 0, 1], &[(0, 1)]);
        assert_eq!(min_weighted_l1(&p), L1Solution::Infeasible);
    }

    #[test]
    fn empty_column_set_feasible_only_for_zero() {
        let no_cols = L1Problem::new(RationalMatrix::zeros(2, 0), vec![rat(0, 1); 2], vec![])
            .unwrap();
        assert_eq!(
            min_weighted_l1(&no_cols),
            L1Solution::Optimal {
                value: rat(0, 1),
                coefficients: vec![],
            }
        );
        let no_cols = L1Problem::new(RationalMatrix::zeros(1, 0), vec![rat(1, 1)], vec![])
            .unwrap();
        assert_eq!(min_weighted_l1(&no_cols), L1Solution::Infeasible);
    }

    #[test]
    fn zero_dimensional_space_is_trivially_feasible() {
        let p = L1Problem::new(RationalMatrix::zeros(0, 2), vec![], vec![rat(1, 1); 2])
            .unwrap();
        assert_eq!(
            min_weighted_l1(&p),
            L1Solution::Optimal {
                value: rat(0, 1),
                coefficients: vec![rat(0, 1); 2],
            }
        );
    }

    #[test]
    fn oracle_matches_solver_on_fixed_instances() {
        let instances = vec![
            problem(&[&[1], &[2]], &[1], &[(1, 1), (1, 1)]),
            problem(&[&[1, 0], &[1, 1], &[0, 2]], &[3, 4], &[(1, 1), (2, 1), (1, 2)]),
            problem(&[&[1, 1], &[1, -1]], &[2, 0], &[(1, 1), (1, 1)]),
            problem(&[&[2, 0], &[0, 3]], &[1, 1], &[(0, 1), (5, 1)]),
            problem(&[&[1, 0]], &[0, 1], &[(1, 1)]),
        ];
        for (i, p) in instances.iter().enumerate() {
            let fast = min_weighted_l1(p);
            let slow = enumerate_basic_optima(p, 8).unwrap();
            assert_eq!(
                fast.value(),
                slow.value(),
                "instance {i}: solver {fast:?} oracle {slow:?}"
            );
        }
    }

    #[test]
    fn oracle_rejects_large_instances() {
        let p = problem(&[&[1], &[2], &[3]], &[1], &[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(
            enumerate_basic_optima(&p, 2),
            Err(OracleError::InstanceTooLarge {
                columns: 3,
                max_cols: 2
            })
        );
    }

    #[test]
    fn solution_coefficients_represent_the_target() {
        let p = problem(
            &[&[1, 2, 0], &[0, 1, 1], &[3, 0, -1]],
            &[2, 5, 1],
            &[(1, 1), (1, 3), (7, 2)],
        );
        match min_weighted_l1(&p) {
            L1Solution::Optimal { coefficients, value } => {
                let combo = p.columns().mul_vec(&coefficients);
                let expected: Vec<Rational> = combo;
                assert_eq!(expected, p.target().to_vec());
                let cost: Rational = coefficients
                    .iter()
                    .zip(p.weights())
                    .map(|(b, w)| b.abs() * w.clone())
                    .sum();
                assert_eq!(cost, value);
            }
            L1Solution::Infeasible => panic!("expected feasible instance"),
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn small_rational() -> impl Strategy<Value = Rational> {
            (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::from_ratio(n, d))
        }

        fn weight() -> impl Strategy<Value = Rational> {
            prop_oneof![
                3 => (0i64..=5, 1i64..=3).prop_map(|(n, d)| Rational::from_ratio(n, d)),
                1 => Just(Rational::zero()),
            ]
        }

        fn instance(
            max_dim: usize,
            max_cols: usize,
        ) -> impl Strategy<Value = (L1Problem, Vec<Rational>)> {
            (1..=max_dim, 1..=max_cols).prop_flat_map(move |(d, k)| {
                (
                    proptest::collection::vec(small_rational(), d * k),
                    proptest::collection::vec(small_rational(), d),
                    proptest::collection::vec(weight(), k),
                )
                    .prop_map(move |(entries, target, weights)| {
                        let cols: Vec<Vec<Rational>> =
                            entries.chunks(d).map(|c| c.to_vec()).collect();
                        let m = RationalMatrix::from_columns(d, &cols).unwrap();
                        let p = L1Problem::new(m, target.clone(), weights).unwrap();
                        (p, target)
                    })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn solver_agrees_with_enumeration_oracle((p, _) in instance(3, 4)) {
                let fast = min_weighted_l1(&p);
                let slow = enumerate_basic_optima(&p, 6).unwrap();
                prop_assert_eq!(fast.value(), slow.value());
            }

            #[test]
            fn optimal_coefficients_reach_the_target((p, target) in instance(3, 4)) {
                if let L1Solution::Optimal { coefficients, value } = min_weighted_l1(&p) {
                    prop_assert_eq!(p.columns().mul_vec(&coefficients), target);
                    let cost: Rational = coefficients
                        .iter()
                        .zip(p.weights())
                        .map(|(b, w)| b.abs() * w.clone())
                        .sum();
                    prop_assert_eq!(cost, value);
                }
            }

            #[test]
            fn scaling_the_target_scales_the_value((p, target) in instance(3, 3), num in -4i64..=4, den in 1i64..=3) {
                let lambda = Rational::from_ratio(num, den);
                let scaled_target: Vec<Rational> =
                    target.iter().map(|x| x * &lambda).collect();
                let scaled = L1Problem::new(
                    p.columns().clone(),
                    scaled_target,
                    p.weights().to_vec(),
                )
                .unwrap();
                let base = min_weighted_l1(&p);
                let got = min_weighted_l1(&scaled);
                match (base.value(), got.value()) {
                    (Some(v), Some(w)) => prop_assert_eq!(w.clone(), v * &lambda.abs()),
                    (None, None) => {}
                    (None, Some(w)) => {
                        // Scaling by zero turns infeasible into the zero target.
                        prop_assert!(lambda.is_zero() && w.is_zero());
                    }
                    (Some(_), None) => prop_assert!(false, "scaling lost feasibility"),
                }
            }

            #[test]
            fn larger_weights_never_decrease_the_value((p, target) in instance(3, 3), bumps in proptest::collection::vec((0i64..=3, 1i64..=2), 3)) {
                let mut bumped = p.weights().to_vec();
                for (w, (n, d)) in bumped.iter_mut().zip(bumps.iter()) {
                    *w = &*w + &Rational::from_ratio(*n, *d);
                }
                let q = L1Problem::new(p.columns().clone(), target, bumped).unwrap();
                let base = min_weighted_l1(&p);
                let more = min_weighted_l1(&q);
                match (base.value(), more.value()) {
                    (Some(v), Some(w)) => prop_assert!(w >= v),
                    (None, None) => {}
                    _ => prop_assert!(false, "feasibility must not depend on weights"),
                }
            }

            #[test]
            fn triangle_inequality((p, target) in instance(3, 3), other in proptest::collection::vec((-6i64..=6, 1i64..=4), 3)) {
                let d = p.dimension();
                let beta: Vec<Rational> = other
                    .into_iter()
                    .take(d)
                    .map(|(n, den)| Rational::from_ratio(n, den))
                    .collect();
                let sum_target: Vec<Rational> = target
                    .iter()
                    .zip(beta.iter())
                    .map(|(a, b)| a + b)
                    .collect();
                let pb = L1Problem::new(p.columns().clone(), beta, p.weights().to_vec()).unwrap();
                let ps = L1Problem::new(p.columns().clone(), sum_target, p.weights().to_vec()).unwrap();
                if let (Some(va), Some(vb)) = (min_weighted_l1(&p).value(), min_weighted_l1(&pb).value()) {
                    let vs = min_weighted_l1(&ps);
                    match vs.value() {
                        Some(v) => prop_assert!(v <= &(va + vb)),
                        None => prop_assert!(false, "sum of feasible targets is feasible"),
                    }
                }
            }

            #[test]
            fn extra_columns_never_increase_the_value((p, target) in instance(3, 3), extra in proptest::collection::vec((-6i64..=6, 1i64..=4), 3), w in (1i64..=5, 1i64..=2)) {
                let d = p.dimension();
                let col: Vec<Rational> = extra
                    .into_iter()
                    .take(d)
                    .map(|(n, den)| Rational::from_ratio(n, den))
                    .collect();
                let mut cols: Vec<Vec<Rational>> =
                    (0..p.num_columns()).map(|j| p.columns().column(j)).collect();
                cols.push(col);
                let mut weights = p.weights().to_vec();
                weights.push(Rational::from_ratio(w.0, w.1));
                let wider = L1Problem::new(
                    RationalMatrix::from_columns(d, &cols).unwrap(),
                    target,
                    weights,
                )
                .unwrap();
                let base = min_weighted_l1(&p);
                let more = min_weighted_l1(&wider);
                match (base.value(), more.value()) {
                    (Some(v), Some(w)) => prop_assert!(w <= v),
                    (Some(_), None) => prop_assert!(false, "extra column lost feasibility"),
                    (None, _) => {}
                }
            }
        }
    }
}

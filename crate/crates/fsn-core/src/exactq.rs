//! Exact rational scalars, matrices and subspaces.
//!
//! Everything downstream (simplex pivoting, morphism enumeration, locus
//! computations) works over [`Rational`], so results are exact and
//! reproducible bit for bit. Rationals serialize as strings `"p/q"` (or
//! `"p"` for integers); a zero denominator is a parse error, never a value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Error produced when a rational literal cannot be accepted.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumberError {
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),
}

/// Arbitrary-precision rational number, always kept in reduced form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    /// Builds `numer/denom`, rejecting a zero denominator.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, NumberError> {
        if denom.is_zero() {
            return Err(NumberError::ZeroDenominator(format!("{numer}/{denom}")));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    /// Convenience constructor for literals known to be well formed.
    ///
    /// Panics on a zero denominator; intended for constants and tests.
    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator in rational constant");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// Smallest integer greater than or equal to this value.
    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Lossy conversion for presentation layers (plots, progress output).
    /// Never used inside a computation path.
    pub fn approx_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // BigRational is kept reduced with positive denominator, so the
        // (numer, denom) pair is canonical.
        self.0.numer().hash(state);
        self.0.denom().hash(state);
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = NumberError;

    fn from_str(s: &str) -> Result<Self, NumberError> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(NumberError::Malformed(s.to_string()));
        }
        let (numer_part, denom_part) = match trimmed.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (trimmed, None),
        };
        let numer =
            BigInt::from_str(numer_part).map_err(|_| NumberError::Malformed(s.to_string()))?;
        let denom = match denom_part {
            Some(d) => BigInt::from_str(d).map_err(|_| NumberError::Malformed(s.to_string()))?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(NumberError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl<'a, 'b> Div<&'b Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'b Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl<'a> Div<&'a Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        &self / rhs
    }
}

impl<'a> Div<Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

/// Dense matrix over [`Rational`], row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, String> {
        if entries.len() != rows * cols {
            return Err(format!(
                "matrix shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            ));
        }
        Ok(RationalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, String> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(format!(
                    "row {i} has {} entries, expected {ncols}",
                    r.len()
                ));
            }
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(ambient_dim: usize, columns: &[Vec<Rational>]) -> Result<Self, String> {
        for (j, c) in columns.iter().enumerate() {
            if c.len() != ambient_dim {
                return Err(format!(
                    "column {j} has {} entries, expected {ambient_dim}",
                    c.len()
                ));
            }
        }
        let mut m = RationalMatrix::zeros(ambient_dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Rational> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix product `self * rhs`. Dimension mismatch is a caller bug.
    pub fn mul(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(
            self.cols,
            v.len(),
            "matrix-vector dimension mismatch: {}x{} * {}",
            self.rows,
            self.cols,
            v.len()
        );
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, factor: &Rational) -> RationalMatrix {
        let entries = self.entries.iter().map(|a| a * factor).collect();
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = RationalMatrix::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let reduced = rref(&self.hstack(&RationalMatrix::identity(n)));
        let left_rank = reduced.pivots.iter().filter(|&&c| c < n).count();
        if left_rank < n {
            return None;
        }
        let mut inv = RationalMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, reduced.matrix.get(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<Vec<String>> = Vec::deserialize(deserializer)?;
        let mut rows = Vec::with_capacity(raw.len());
        for row in raw {
            let mut parsed = Vec::with_capacity(row.len());
            for cell in row {
                parsed.push(cell.parse::<Rational>().map_err(serde::de::Error::custom)?);
            }
            rows.push(parsed);
        }
        RationalMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Row echelon data produced by [`rref`].
pub struct Rref {
    pub matrix: RationalMatrix,
    /// Column index of the pivot in each pivot row, in row order.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form by Gauss-Jordan elimination.
///
/// Pivot selection takes the first nonzero entry in column order, so the
/// result is deterministic.
pub fn rref(m: &RationalMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..a.cols() {
        if pivot_row >= a.rows() {
            break;
        }
        let found = (pivot_row..a.rows()).find(|&r| !a.get(r, col).is_zero());
        let Some(src) = found else { continue };
        if src != pivot_row {
            for c in 0..a.cols() {
                let tmp = a.get(src, c).clone();
                a.set(src, c, a.get(pivot_row, c).clone());
                a.set(pivot_row, c, tmp);
            }
        }
        let inv = a.get(pivot_row, col).recip().expect("pivot is nonzero");
        for c in 0..a.cols() {
            let scaled = a.get(pivot_row, c) * &inv;
            a.set(pivot_row, c, scaled);
        }
        for r in 0..a.rows() {
            if r == pivot_row || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in 0..a.cols() {
                let updated = a.get(r, c) - &(&factor * a.get(pivot_row, c));
                a.set(r, c, updated);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    let rank = pivots.len();
    Rref {
        matrix: a,
        pivots,
        rank,
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).rank
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn kernel_basis(m: &RationalMatrix) -> Subspace {
    let reduced = rref(m);
    let n = m.cols();
    let pivot_set: Vec<usize> = reduced.pivots.clone();
    let mut basis_columns = Vec::new();
    for free in 0..n {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &pc) in pivot_set.iter().enumerate() {
            v[pc] = -reduced.matrix.get(row, free).clone();
        }
        basis_columns.push(v);
    }
    Subspace::from_columns(n, &basis_columns)
}

/// One solution of `m x = b`, or `None` when inconsistent.
///
/// Free variables are set to zero, so the answer is deterministic.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(m.rows(), b.len(), "solve dimension mismatch");
    let rhs = RationalMatrix::from_columns(b.len(), &[b.to_vec()]).expect("column shape");
    let reduced = rref(&m.hstack(&rhs));
    if reduced.pivots.iter().any(|&c| c == m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (row, &pc) in reduced.pivots.iter().enumerate() {
        x[pc] = reduced.matrix.get(row, m.cols()).clone();
    }
    Some(x)
}

/// Coefficients `c_0..=c_n` of the characteristic polynomial
/// `det(x I - m) = c_n x^n + ... + c_0` with `c_n = 1`, computed by the
/// trace recurrence of Faddeev and LeVerrier.
pub fn char_poly(m: &RationalMatrix) -> Vec<Rational> {
    assert!(m.is_square(), "characteristic polynomial of non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    if n == 0 {
        return coeffs;
    }
    let mut work = m.clone();
    for k in 1..=n {
        let c = -(work.trace() / Rational::from_int(k as i64));
        coeffs[n - k] = c.clone();
        if k < n {
            let shifted = work.add(&RationalMatrix::identity(n).scale(&c));
            work = m.mul(&shifted);
        }
    }
    coeffs
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let a = n.abs();
    assert!(!a.is_zero(), "divisors of zero");
    if let Some(small) = a.to_u64() {
        let mut divs = Vec::new();
        let mut d = 1u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                divs.push(BigInt::from(d));
                divs.push(BigInt::from(small / d));
            }
            d += 1;
        }
        divs.sort();
        divs.dedup();
        return divs;
    }
    let mut divs = Vec::new();
    let limit = a.sqrt();
    let mut d = BigInt::one();
    while d <= limit {
        if (&a % &d).is_zero() {
            divs.push(d.clone());
            divs.push(&a / &d);
        }
        d += 1;
    }
    divs.sort();
    divs.dedup();
    divs
}

/// All rational roots of a polynomial with rational coefficients
/// (`coeffs[i]` multiplies `x^i`), in increasing order.
///
/// Complete over the rationals by the rational root theorem.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(Rational::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        // Constant polynomial: no roots reported (the zero polynomial is a
        // caller bug, not a root list).
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut low = 0;
    while c[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(Rational::zero());
        c.drain(..low);
    }
    if c.len() <= 1 {
        roots.sort();
        return roots;
    }
    // Clear denominators to get integer coefficients.
    let mut scale = BigInt::one();
    for q in &c {
        scale = scale.lcm(q.denom());
    }
    let ints: Vec<BigInt> = c
        .iter()
        .map(|q| q.numer() * (&scale / q.denom()))
        .collect();
    let a0 = ints.first().expect("nonempty");
    let an = ints.last().expect("nonempty");
    let num_candidates = positive_divisors(a0);
    let den_candidates = positive_divisors(an);
    let mut seen = std::collections::HashSet::new();
    for p in &num_candidates {
        for q in &den_candidates {
            if p.gcd(q) != BigInt::one() {
                continue;
            }
            for sign in [1i64, -1] {
                let candidate = Rational::new(p * BigInt::from(sign), q.clone())
                    .expect("nonzero denominator");
                if !seen.insert(candidate.clone()) {
                    continue;
                }
                let mut value = Rational::zero();
                for coeff in ints.iter().rev() {
                    value = value * &candidate + Rational::from_bigint(coeff.clone());
                }
                if value.is_zero() {
                    roots.push(candidate);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Rational eigenvalues with their exact eigenspaces, sorted by eigenvalue.
pub fn rational_eigenpairs(m: &RationalMatrix) -> Vec<(Rational, Subspace)> {
    assert!(m.is_square(), "eigenpairs of non-square matrix");
    let n = m.rows();
    let roots = rational_roots(&char_poly(m));
    roots
        .into_iter()
        .map(|lambda| {
            let shifted = m.sub(&RationalMatrix::identity(n).scale(&lambda));
            let space = kernel_basis(&shifted);
            (lambda, space)
        })
        .collect()
}

/// Linear subspace of `Q^n`, stored with a canonical basis so that equal
/// subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Subspace {
    ambient_dim: usize,
    /// Columns form the canonical basis: the transposed reduced row echelon
    /// form of the row space spanned by the generating vectors.
    basis: RationalMatrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RationalMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RationalMatrix::identity(ambient_dim),
        }
    }

    /// Span of the given vectors.
    pub fn from_columns(ambient_dim: usize, columns: &[Vec<Rational>]) -> Self {
        let as_rows: Vec<Vec<Rational>> = columns
            .iter()
            .map(|c| {
                assert_eq!(c.len(), ambient_dim, "subspace generator dimension");
                c.clone()
            })
            .collect();
        if as_rows.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        let rows_matrix = RationalMatrix::from_rows(as_rows).expect("rectangular");
        let reduced = rref(&rows_matrix);
        let mut basis_cols = Vec::new();
        for r in 0..reduced.rank {
            basis_cols.push(reduced.matrix.row(r));
        }
        Subspace {
            ambient_dim,
            basis: RationalMatrix::from_columns(ambient_dim, &basis_cols).expect("shape"),
        }
    }

    pub fn from_basis_matrix(m: &RationalMatrix) -> Self {
        let cols: Vec<Vec<Rational>> = (0..m.cols()).map(|c| m.column(c)).collect();
        Subspace::from_columns(m.rows(), &cols)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn basis_columns(&self) -> Vec<Vec<Rational>> {
        (0..self.basis.cols()).map(|c| self.basis.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "membership dimension mismatch");
        if v.iter().all(Rational::is_zero) {
            return true;
        }
        solve(&self.basis, v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        other.basis_columns().iter().all(|c| self.contains(c))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut cols = self.basis_columns();
        cols.extend(other.basis_columns());
        Subspace::from_columns(self.ambient_dim, &cols)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient_dim);
        }
        let stacked = self.basis.hstack(&other.basis);
        let kernel = kernel_basis(&stacked);
        let mut cols = Vec::new();
        for k in kernel.basis_columns() {
            let a_part = &k[..self.basis.cols()];
            cols.push(self.basis.mul_vec(a_part));
        }
        Subspace::from_columns(self.ambient_dim, &cols)
    }

    /// Standard basis vectors completing this subspace to the full space,
    /// chosen deterministically (lowest coordinate indices first).
    pub fn complement_indices(&self) -> Vec<usize> {
        let augmented = self
            .basis
            .hstack(&RationalMatrix::identity(self.ambient_dim));
        let reduced = rref(&augmented);
        reduced
            .pivots
            .iter()
            .filter(|&&c| c >= self.basis.cols())
            .map(|&c| c - self.basis.cols())
            .collect()
    }

    /// Projection `P` and section `L` for the quotient by this subspace:
    /// `P` is `q x n` with kernel exactly this subspace, `L` is `n x q`
    /// with `P L = I`, where `q = n - dim`.
    pub fn quotient_maps(&self) -> (RationalMatrix, RationalMatrix) {
        let n = self.ambient_dim;
        let comp = self.complement_indices();
        let q = comp.len();
        debug_assert_eq!(q, n - self.dim());
        let mut full_basis = RationalMatrix::zeros(n, n);
        for (j, col) in self.basis_columns().iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                full_basis.set(i, j, x.clone());
            }
        }
        for (j, &idx) in comp.iter().enumerate() {
            full_basis.set(idx, self.dim() + j, Rational::one());
        }
        let inv = full_basis.inverse().expect("completed basis is invertible");
        let mut p = RationalMatrix::zeros(q, n);
        for (r, offset) in (self.dim()..n).enumerate() {
            for c in 0..n {
                p.set(r, c, inv.get(offset, c).clone());
            }
        }
        let mut l = RationalMatrix::zeros(n, q);
        for (j, &idx) in comp.iter().enumerate() {
            l.set(idx, j, Rational::one());
        }
        (p, l)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}, basis {:?})",
            self.dim(),
            self.ambient_dim,
            self.basis
        )
    }
}

//! Exact integer and rational linear algebra.
//!
//! Every lattice statement in this crate (primitivity, goodness of a cone,
//! existence of the Calabi-Yau element) is decided here with arbitrary
//! precision integers and rationals. Nothing in this module touches floating
//! point except the explicit `to_f64` conversions used by the numeric layers.

mod smith;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use smith::{smith_normal_form, solve_all_ones, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("zero vector has no primitivity")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
    #[error("matrix rows have unequal lengths")]
    Ragged,
}

/// A point of the integral lattice `Z^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        LatticeVector(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        LatticeVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rational(&self, other: &RationalVector) -> BigRational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(other.entries()).map(|(a, b)| b * a).fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// Gcd of the entries; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
    }

    /// Divides out the content. The zero vector is returned unchanged.
    pub fn primitive_part(&self) -> LatticeVector {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        LatticeVector(self.0.iter().map(|x| x / &g).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Cross product; only defined for `m = 3`.
    pub fn cross(&self, other: &LatticeVector) -> LatticeVector {
        assert!(self.dim() == 3 && other.dim() == 3, "cross product needs dimension 3");
        let (a, b) = (&self.0, &other.0);
        LatticeVector(vec![&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]])
    }

    /// Two nonzero vectors are proportional iff every 2x2 minor vanishes.
    pub fn is_proportional(&self, other: &LatticeVector) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                if &self.0[i] * &other.0[j] != &self.0[j] * &other.0[i] {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Reduction mod 2 as a bit vector (bit `i` is entry `i`).
    pub fn parity_bits(&self) -> u64 {
        self.0.iter().enumerate().filter(|(_, x)| x.is_odd()).fold(0u64, |acc, (i, _)| acc | (1 << i))
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// True iff the gcd of the entries is one.
pub fn is_primitive(v: &LatticeVector) -> Result<bool, LinalgError> {
    if v.is_zero() {
        return Err(LinalgError::ZeroVector);
    }
    Ok(v.content().is_one())
}

/// A vector with exact rational entries, always stored in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        // BigRational normalises on construction
        RationalVector(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        LatticeVector::from_i64(entries).to_rational()
    }

    pub fn zero(dim: usize) -> Self {
        RationalVector(vec![BigRational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RationalVector) -> BigRational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).fold(BigRational::zero(), |acc, x| acc + x)
    }

    pub fn scale(&self, k: &BigRational) -> RationalVector {
        RationalVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational_to_f64).collect()
    }

    /// Parses entries written as `"p/q"` or `"p"`.
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self, LinalgError> {
        items.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<Vec<_>, _>>().map(RationalVector)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, LinalgError> {
    let bad = || LinalgError::ParseRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad()),
    }
}

/// `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator or denominator beyond f64 range; fall back to a ratio of logs
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[LatticeVector]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, LatticeVector::dim);
        if rows.iter().any(|r| r.dim() != cols) {
            return Err(LinalgError::Ragged);
        }
        let data = rows.iter().flat_map(|r| r.entries().iter().cloned()).collect();
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, LinalgError> {
        let rows: Vec<_> = rows.iter().map(|r| LatticeVector::from_i64(r)).collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.dim());
        LatticeVector((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    /// Integer inverse of a unimodular matrix; `None` if `det != ±1`.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if self.rows != self.cols || !self.determinant().abs().is_one() {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from_integer(self[(i, j)].clone())
                        } else if j - n == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, p);
            let inv = aug[col][col].recip();
            for x in aug[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    let pivot_row = aug[col].clone();
                    for (x, y) in aug[r].iter_mut().zip(pivot_row) {
                        *x -= &factor * y;
                    }
                }
            }
        }
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = &aug[i][n + j];
                debug_assert!(x.is_integer());
                out[(i, j)] = x.to_integer();
            }
        }
        Some(out)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= q * row[source]
    pub(crate) fn sub_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * &self[(source, j)];
            self[(target, j)] -= v;
        }
    }

    /// col[target] -= q * col[source]
    pub(crate) fn sub_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * &self[(i, source)];
            self[(i, target)] -= v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

/// Rank over Q by exact Gaussian elimination. An empty list has rank 0.
pub fn rational_rank(vs: &[RationalVector]) -> Result<usize, LinalgError> {
    let Some(first) = vs.first() else {
        return Ok(0);
    };
    let n = first.dim();
    if let Some(bad) = vs.iter().find(|v| v.dim() != n) {
        return Err(LinalgError::DimensionMismatch { expected: n, found: bad.dim() });
    }
    let mut rows: Vec<Vec<BigRational>> = vs.iter().map(|v| v.entries().to_vec()).collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot[col];
            for (x, y) in row.iter_mut().zip(&pivot).skip(col) {
                *x -= &factor * y;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Ok(rank)
}

/// Rank of a list of lattice vectors (over Q).
pub fn lattice_rank(vs: &[LatticeVector]) -> Result<usize, LinalgError> {
    let rs: Vec<_> = vs.iter().map(LatticeVector::to_rational).collect();
    rational_rank(&rs)
}

/// One generator of the kernel `{x : <row_i, x> = 0}` when the rows have
/// rank `m - 1`; primitive, sign unspecified.
pub fn kernel_line(rows: &[LatticeVector], m: usize) -> Option<LatticeVector> {
    if lattice_rank(rows).ok()? != m - 1 {
        return None;
    }
    // reduced row echelon form over Q, free column gives the kernel vector
    let mut a: Vec<Vec<BigRational>> = rows.iter().map(|r| r.to_rational().entries().to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pr) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free = (0..m).find(|c| !pivots.contains(c))?;
    let mut x = vec![BigRational::zero(); m];
    x[free] = BigRational::one();
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = -a[i][free].clone();
    }
    let lcm = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = x.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    Some(LatticeVector(ints).primitive_part())
}

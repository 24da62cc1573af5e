//! Exact rational scalars, dense matrices, sparse order-3/order-4 tensors and the
//! linear-algebra kernels everything else is built on.
//!
//! Basis conventions are deterministic: kernels use the RREF free-variable basis,
//! complements use the standard vectors of the non-pivot coordinates.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Index, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct ParseScalarError {
    pub literal: String,
    pub reason: &'static str,
}

/// An exact rational number, always stored reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n/d`; panics on `d == 0` (meant for literals).
    pub fn frac(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn half() -> Self {
        Scalar::frac(1, 2)
    }

    pub fn from_bigints(n: BigInt, d: BigInt) -> Option<Self> {
        if d.is_zero() {
            None
        } else {
            Some(Scalar(BigRational::new(n, d)))
        }
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Option<Self> {
        if e < 0 {
            return self.recip().and_then(|r| r.pow(-e));
        }
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        Some(acc)
    }

    /// Positive rational square root when it exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Scalar::from_bigints(n, d)
        } else {
            None
        }
    }

    /// Integer value if this is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        i64::try_from(self.numer()).ok()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Grammar: optional '-', digits, optionally '/' and a nonzero digit string.
    fn from_str(lit: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseScalarError {
            literal: lit.to_string(),
            reason,
        };
        let (neg, body) = match lit.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, lit),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        if !digits(num) {
            return Err(err("numerator must be a nonempty digit string"));
        }
        let mut n: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
        if neg {
            n = -n;
        }
        let d: BigInt = match den {
            None => BigInt::one(),
            Some(d) => {
                if !digits(d) {
                    return Err(err("denominator must be a nonempty digit string"));
                }
                d.parse().map_err(|_| err("bad denominator"))?
            }
        };
        Scalar::from_bigints(n, d).ok_or_else(|| err("zero denominator"))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$m(&rhs.0))
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$m(rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

// ---------------------------------------------------------------------------
// vectors

pub type Vector = Vec<Scalar>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vadd(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

// ---------------------------------------------------------------------------
// matrices

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn diag(d: &[Scalar]) -> Self {
        let mut m = Mat::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn scalar(n: usize, c: &Scalar) -> Self {
        Mat::diag(&vec![c.clone(); n])
    }

    /// Build from rows; `None` if the rows are ragged.
    pub fn try_from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Option<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Mat {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Mat::try_from_rows(rows, cols).expect("ragged rows")
    }

    /// Integer literal rows, handy for fixtures.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::int(x)).collect())
                .collect(),
        )
    }

    /// Build from column vectors of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// `self · v`
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let mut out = zero_vec(self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    /// `[self | other]`
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        Mat::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    /// `[self ; other]`
    pub fn vcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vcat column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(&self, other: &Mat) -> Mat {
        Mat::from_fn(
            self.rows + other.rows,
            self.cols + other.cols,
            |r, c| match (r < self.rows, c < self.cols) {
                (true, true) => self[(r, c)].clone(),
                (false, false) => other[(r - self.rows, c - self.cols)].clone(),
                _ => Scalar::zero(),
            },
        )
    }

    /// Sub-block `rows r0..r0+nr`, `cols c0..c0+nc`.
    pub fn block(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Mat {
        Mat::from_fn(nr, nc, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let x = solve_mat(self, &Mat::identity(self.rows))?;
        // square with a right inverse: check it is two-sided (it is when rank is full)
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }
}

impl Mul<&Mat> for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + c];
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Add<&Mat> for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&Mat> for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!(
            self.shape(),
            rhs.shape(),
            "matrix difference shape mismatch"
        );
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(&Scalar::int(-1))
    }
}

/// Reduced row echelon form and the strictly increasing pivot columns.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].recip().expect("nonzero pivot");
        for j in c..cols {
            let v = &a.data[r * cols + j] * &inv;
            a.data[r * cols + j] = v;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[(i, c)].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let delta = &f * &a.data[r * cols + j];
                if !delta.is_zero() {
                    a.data[i * cols + j] -= &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Columns form the canonical free-variable basis of `Ker m`.
pub fn kernel_basis(m: &Mat) -> Mat {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut out = Mat::zeros(n, free.len());
    for (t, &f) in free.iter().enumerate() {
        out.set(f, t, Scalar::one());
        for (row, &p) in pivots.iter().enumerate() {
            let v = -&r[(row, f)];
            out.set(p, t, v);
        }
    }
    out
}

/// Complement of `Im m` in the codomain spanned by standard vectors of the
/// non-pivot coordinates of the column-space RREF, and the projection onto
/// complement coordinates that vanishes on `Im m`.
pub fn cokernel_complement(m: &Mat) -> (Mat, Mat) {
    let n = m.rows();
    let (r, pivots) = rref(&m.transpose());
    let nonpiv: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Mat::zeros(n, nonpiv.len());
    let mut proj = Mat::zeros(nonpiv.len(), n);
    for (t, &j) in nonpiv.iter().enumerate() {
        basis.set(j, t, Scalar::one());
        proj.set(t, j, Scalar::one());
        for (row, &p) in pivots.iter().enumerate() {
            let v = -&r[(row, j)];
            proj.set(t, p, v);
        }
    }
    (basis, proj)
}

/// Columns of `m` at its RREF pivots: a basis of `Im m` plus the pivot indices.
pub fn image_basis(m: &Mat) -> (Mat, Vec<usize>) {
    let (_, pivots) = rref(m);
    let cols: Vec<Vector> = pivots.iter().map(|&p| m.col(p)).collect();
    (Mat::from_cols(m.rows(), &cols), pivots)
}

/// A particular solution of `a x = b` with all free variables zero.
pub fn solve(a: &Mat, b: &[Scalar]) -> Option<Vector> {
    assert_eq!(a.rows(), b.len(), "solve dimension mismatch");
    let aug = a.hcat(&Mat::from_cols(b.len(), &[b.to_vec()]));
    let (r, pivots) = rref(&aug);
    let n = a.cols();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = zero_vec(n);
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, n)].clone();
    }
    Some(x)
}

/// Column-wise particular solution of `a X = b`.
pub fn solve_mat(a: &Mat, b: &Mat) -> Option<Mat> {
    assert_eq!(a.rows(), b.rows(), "solve dimension mismatch");
    let aug = a.hcat(b);
    let (r, pivots) = rref(&aug);
    let n = a.cols();
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = Mat::zeros(n, b.cols());
    for (row, &p) in pivots.iter().enumerate() {
        for c in 0..b.cols() {
            x.set(p, c, r[(row, n + c)].clone());
        }
    }
    Some(x)
}

/// Coordinates of `v` in the (independent) columns of `basis`.
pub fn coords_in(basis: &Mat, v: &[Scalar]) -> Option<Vector> {
    solve(basis, v)
}

pub fn in_span(basis: &Mat, v: &[Scalar]) -> bool {
    is_zero_vec(v) || coords_in(basis, v).is_some()
}

// ---------------------------------------------------------------------------
// linear systems whose unknown is a matrix X (r × c), vectorised row-major

/// Coefficient rows of `X ↦ a·X` as a matrix acting on vec(X).
pub fn left_mul_operator(a: &Mat, xr: usize, xc: usize) -> Mat {
    assert_eq!(a.cols(), xr);
    let mut op = Mat::zeros(a.rows() * xc, xr * xc);
    for i in 0..a.rows() {
        for j in 0..xc {
            for r in 0..xr {
                let v = &a[(i, r)];
                if !v.is_zero() {
                    op.set(i * xc + j, r * xc + j, v.clone());
                }
            }
        }
    }
    op
}

/// Coefficient rows of `X ↦ X·b` as a matrix acting on vec(X).
pub fn right_mul_operator(b: &Mat, xr: usize, xc: usize) -> Mat {
    assert_eq!(b.rows(), xc);
    let mut op = Mat::zeros(xr * b.cols(), xr * xc);
    for i in 0..xr {
        for j in 0..b.cols() {
            for r in 0..xc {
                let v = &b[(r, j)];
                if !v.is_zero() {
                    op.set(i * b.cols() + j, i * xc + r, v.clone());
                }
            }
        }
    }
    op
}

/// Operator `X ↦ cod·X − X·dom` for unknown `X: dom-space → cod-space`.
pub fn commutator_operator(cod: &Mat, dom: &Mat) -> Mat {
    let (xr, xc) = (cod.rows(), dom.rows());
    &left_mul_operator(cod, xr, xc) - &right_mul_operator(dom, xr, xc)
}

pub fn vec_of(m: &Mat) -> Vector {
    m.data.clone()
}

pub fn unvec(v: &[Scalar], rows: usize, cols: usize) -> Mat {
    assert_eq!(v.len(), rows * cols);
    Mat {
        rows,
        cols,
        data: v.to_vec(),
    }
}

/// Basis of the maps `X` with `cod·X = X·dom` (maps commuting with the twists).
pub fn commuting_maps(cod: &Mat, dom: &Mat) -> Vec<Mat> {
    let k = kernel_basis(&commutator_operator(cod, dom));
    k.columns()
        .iter()
        .map(|c| unvec(c, cod.rows(), dom.rows()))
        .collect()
}

// ---------------------------------------------------------------------------
// sparse tensors

/// Sparse order-3 tensor `d1 × d2 → d3`, sorted, without stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor3 {
    d1: usize,
    d2: usize,
    d3: usize,
    entries: BTreeMap<(usize, usize, usize), Scalar>,
}

impl Tensor3 {
    pub fn zeros(d1: usize, d2: usize, d3: usize) -> Self {
        Tensor3 {
            d1,
            d2,
            d3,
            entries: BTreeMap::new(),
        }
    }

    /// Tensor whose slice at `(i, j)` is `f(i, j)` (a vector of length `d3`).
    pub fn from_fn(
        d1: usize,
        d2: usize,
        d3: usize,
        mut f: impl FnMut(usize, usize) -> Vector,
    ) -> Self {
        let mut t = Tensor3::zeros(d1, d2, d3);
        for i in 0..d1 {
            for j in 0..d2 {
                let v = f(i, j);
                assert_eq!(v.len(), d3, "tensor slice length");
                for (k, x) in v.into_iter().enumerate() {
                    t.set(i, j, k, x);
                }
            }
        }
        t
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.d1, self.d2, self.d3)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.entries
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        assert!(
            i < self.d1 && j < self.d2 && k < self.d3,
            "tensor index ({i},{j},{k}) out of range {:?}",
            self.dims()
        );
        if v.is_zero() {
            self.entries.remove(&(i, j, k));
        } else {
            self.entries.insert((i, j, k), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j, k), v)| (i, j, k, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Bilinear evaluation `T(x, y)`.
    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        assert!(
            x.len() == self.d1 && y.len() == self.d2,
            "tensor argument dimension mismatch"
        );
        let mut out = zero_vec(self.d3);
        for (&(i, j, k), c) in &self.entries {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            out[k] += &(&(&x[i] * &y[j]) * c);
        }
        out
    }

    /// Slice `T(e_i, e_j)`.
    pub fn slice(&self, i: usize, j: usize) -> Vector {
        let mut out = zero_vec(self.d3);
        for ((_, _, k), c) in self.entries.range((i, j, 0)..(i, j + 1, 0)) {
            out[*k] = c.clone();
        }
        out
    }

    /// The linear map `y ↦ T(x, y)` as a `d3 × d2` matrix.
    pub fn left_matrix(&self, x: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.d3, self.d2);
        for (&(i, j, k), c) in &self.entries {
            if x[i].is_zero() {
                continue;
            }
            let v = &m[(k, j)] + &(&x[i] * c);
            m.set(k, j, v);
        }
        m
    }

    pub fn scale(&self, c: &Scalar) -> Tensor3 {
        Tensor3::from_fn(self.d1, self.d2, self.d3, |i, j| {
            vscale(c, &self.slice(i, j))
        })
    }

    /// `(i, j, k) ↦ (j, i, k)`
    pub fn swap12(&self) -> Tensor3 {
        let mut t = Tensor3::zeros(self.d2, self.d1, self.d3);
        for (&(i, j, k), c) in &self.entries {
            t.set(j, i, k, c.clone());
        }
        t
    }

    /// Apply a linear map to the output index.
    pub fn map_output(&self, m: &Mat) -> Tensor3 {
        assert_eq!(m.cols(), self.d3);
        Tensor3::from_fn(self.d1, self.d2, m.rows(), |i, j| {
            m.apply(&self.slice(i, j))
        })
    }

    pub fn sub(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.dims(), other.dims());
        Tensor3::from_fn(self.d1, self.d2, self.d3, |i, j| {
            vsub(&self.slice(i, j), &other.slice(i, j))
        })
    }

    pub fn add(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.dims(), other.dims());
        Tensor3::from_fn(self.d1, self.d2, self.d3, |i, j| {
            vadd(&self.slice(i, j), &other.slice(i, j))
        })
    }
}

/// Sparse order-4 tensor `d1 × d2 × d3 → d4` (trilinear maps).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor4 {
    dims: [usize; 4],
    entries: BTreeMap<[usize; 4], Scalar>,
}

impl Tensor4 {
    pub fn zeros(dims: [usize; 4]) -> Self {
        Tensor4 {
            dims,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_fn(dims: [usize; 4], mut f: impl FnMut(usize, usize, usize) -> Vector) -> Self {
        let mut t = Tensor4::zeros(dims);
        for i in 0..dims[0] {
            for j in 0..dims[1] {
                for k in 0..dims[2] {
                    let v = f(i, j, k);
                    assert_eq!(v.len(), dims[3], "tensor slice length");
                    for (l, x) in v.into_iter().enumerate() {
                        t.set([i, j, k, l], x);
                    }
                }
            }
        }
        t
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    pub fn get(&self, idx: [usize; 4]) -> Scalar {
        self.entries.get(&idx).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, idx: [usize; 4], v: Scalar) {
        assert!(
            idx.iter().zip(&self.dims).all(|(i, d)| i < d),
            "tensor index {idx:?} out of range {:?}",
            self.dims
        );
        if v.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, v);
        }
    }

    pub fn slice(&self, i: usize, j: usize, k: usize) -> Vector {
        (0..self.dims[3]).map(|l| self.get([i, j, k, l])).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = ([usize; 4], &Scalar)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sub(&self, other: &Tensor4) -> Tensor4 {
        assert_eq!(self.dims, other.dims);
        Tensor4::from_fn(self.dims, |i, j, k| {
            vsub(&self.slice(i, j, k), &other.slice(i, j, k))
        })
    }

    pub fn add(&self, other: &Tensor4) -> Tensor4 {
        assert_eq!(self.dims, other.dims);
        Tensor4::from_fn(self.dims, |i, j, k| {
            vadd(&self.slice(i, j, k), &other.slice(i, j, k))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn scalar_grammar() {
        assert_eq!(q("-6/4").to_string(), "-3/2");
        assert_eq!(q("0").to_string(), "0");
        assert_eq!(q("-0").to_string(), "0");
        assert_eq!(q("14/2").to_string(), "7");
        for bad in [
            "", "-", "+3", "3/-2", "3/0", "3/00", "1.5", " 1", "1/", "/2", "a",
        ] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn scalar_arithmetic_reduces() {
        let a = q("1/6") + q("1/3");
        assert_eq!(a, q("1/2"));
        assert_eq!(a.denom(), &BigInt::from(2));
        assert_eq!(q("2/3") * q("3/4"), q("1/2"));
        assert_eq!(q("4").pow(-2).unwrap(), q("1/16"));
        assert_eq!(q("9/4").sqrt_exact(), Some(q("3/2")));
        assert_eq!(q("2").sqrt_exact(), None);
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&Mat::identity(2));
        assert!(r.is_identity());
        assert_eq!(p, vec![0, 1]);
        let (r, p) = rref(&Mat::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, Mat::from_ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
        let (r, p) = rref(&Mat::zeros(0, 0));
        assert_eq!(r.shape(), (0, 0));
        assert!(p.is_empty());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Mat::identity(3)).cols(), 0);
        assert!(kernel_basis(&Mat::zeros(2, 3)).is_identity());
        let k = kernel_basis(&Mat::from_ints(&[&[1, 1]]));
        assert_eq!(k, Mat::from_ints(&[&[-1], &[1]]));
    }

    #[test]
    fn cokernel_examples() {
        let (c, p) = cokernel_complement(&Mat::zeros(2, 1));
        assert!(c.is_identity() && p.is_identity());
        let (c, _) = cokernel_complement(&Mat::identity(2));
        assert_eq!(c.cols(), 0);
        let (c, p) = cokernel_complement(&Mat::from_ints(&[&[1], &[0]]));
        assert_eq!(c, Mat::from_ints(&[&[0], &[1]]));
        assert!(p.apply(&[q("1"), q("0")]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn solve_and_inverse() {
        let a = Mat::from_ints(&[&[1, 1], &[0, 2]]);
        let x = solve(&a, &[q("3"), q("4")]).unwrap();
        assert_eq!(x, vec![q("1"), q("2")]);
        assert!(solve(&Mat::from_ints(&[&[1], &[1]]), &[q("1"), q("2")]).is_none());
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!(Mat::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn commuting_maps_of_diagonal_twists() {
        let dom = Mat::diag(&[q("1"), q("2")]);
        let cod = Mat::diag(&[q("2"), q("3"), q("1")]);
        let maps = commuting_maps(&cod, &dom);
        assert_eq!(maps.len(), 2);
        for m in &maps {
            assert_eq!(&cod * m, m * &dom);
        }
    }

    #[test]
    fn tensor_storage_drops_zeros() {
        let mut t = Tensor3::zeros(2, 2, 1);
        t.set(0, 1, 0, q("3"));
        t.set(1, 0, 0, q("0"));
        assert_eq!(t.nnz(), 1);
        t.set(0, 1, 0, q("0"));
        assert!(t.is_zero());
    }
}

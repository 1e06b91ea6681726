//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary precision integers. Matrices are
//! stored row-major; lattice vectors are row vectors when they are collected
//! into a matrix of generators.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// A point of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(pub Vec<Int>);

impl LatticePoint {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticePoint(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticePoint(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        LatticePoint(vec![Int::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut p = Self::zero(dim);
        p.0[i] = Int::one();
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticePoint) -> Int {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: &Int) -> LatticePoint {
        LatticePoint(self.0.iter().map(|c| c * k).collect())
    }

    pub fn content(&self) -> Int {
        self.0.iter().fold(Int::zero(), |g, c| g.gcd(c))
    }

    /// `v / gcd(v)`.
    pub fn primitive(&self) -> Result<LatticePoint> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(LatticePoint(self.0.iter().map(|c| c / &g).collect()))
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint(
            self.0
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn extend(&self, last: Int) -> LatticePoint {
        let mut c = self.0.clone();
        c.push(last);
        LatticePoint(c)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }
}

/// A point of `Q^n`, always in reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(pub Vec<Rat>);

impl RationalPoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        RationalPoint(coords.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn to_lattice(&self) -> Option<LatticePoint> {
        self.is_integral()
            .then(|| LatticePoint(self.0.iter().map(|c| c.to_integer()).collect()))
    }

    /// Least common multiple of the denominators.
    pub fn denominator_lcm(&self) -> Int {
        self.0.iter().fold(Int::one(), |l, c| l.lcm(c.denom()))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rat_to_f64).collect()
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = int(*v);
            }
        }
        m
    }

    /// Matrix whose rows are the given points. `cols` is used when the list is empty.
    pub fn from_rows(rows: &[LatticePoint], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.dim(), cols);
            for j in 0..cols {
                m[(i, j)] = r.0[j].clone();
            }
        }
        m
    }

    pub fn from_cols(cols: &[LatticePoint], rows: usize) -> Self {
        Self::from_rows(cols, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> LatticePoint {
        LatticePoint(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> LatticePoint {
        LatticePoint((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn row_vecs(&self) -> Vec<LatticePoint> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col_vecs(&self) -> Vec<LatticePoint> {
        (0..self.cols).map(|j| self.col(j)).collect()
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

    pub fn mul_vec(&self, v: &LatticePoint) -> LatticePoint {
        assert_eq!(v.dim(), self.cols);
        LatticePoint((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &LatticePoint) -> LatticePoint {
        assert_eq!(v.dim(), self.rows);
        LatticePoint(
            (0..self.cols)
                .map(|j| (0..self.rows).map(|i| &v.0[i] * &self[(i, j)]).sum())
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let inv = RatMatrix::from_int(self)
            .inverse()
            .ok_or(Error::NotUnimodular)?;
        inv.to_int().ok_or(Error::NotUnimodular)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`
    pub fn add_row(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * c;
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += c * col[src]`
    pub fn add_col(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * c;
            self[(i, dst)] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Keeps only the listed columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let pts: Vec<_> = rows.iter().map(|&i| self.row(i)).collect();
        IntMatrix::from_rows(&pts, self.cols)
    }

    /// Rank over `Q`.
    pub fn rank(&self) -> usize {
        RatMatrix::from_int(self).rank()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self[(i, j)].to_i64().expect("entry fits i64"))
                    .collect()
            })
            .collect()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut m = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    m[(i, j)] += v;
                }
            }
        }
        m
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
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

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
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

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// `x -> linear·x + translation` on `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMapZ {
    pub linear: IntMatrix,
    pub translation: LatticePoint,
}

impl AffineMapZ {
    pub fn identity(n: usize) -> Self {
        AffineMapZ {
            linear: IntMatrix::identity(n),
            translation: LatticePoint::zero(n),
        }
    }

    pub fn linear(m: IntMatrix) -> Self {
        let n = m.rows();
        AffineMapZ {
            linear: m,
            translation: LatticePoint::zero(n),
        }
    }

    /// The map sending `from + x` to `to + m·x`.
    pub fn based(m: IntMatrix, from: &LatticePoint, to: &LatticePoint) -> Self {
        let t = to - &m.mul_vec(from);
        AffineMapZ {
            linear: m,
            translation: t,
        }
    }

    pub fn apply(&self, x: &LatticePoint) -> LatticePoint {
        &self.linear.mul_vec(x) + &self.translation
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &AffineMapZ) -> AffineMapZ {
        AffineMapZ {
            linear: &self.linear * &other.linear,
            translation: &self.linear.mul_vec(&other.translation) + &self.translation,
        }
    }

    pub fn inverse(&self) -> Result<AffineMapZ> {
        let inv = self.linear.inverse_unimodular()?;
        let t = -&inv.mul_vec(&self.translation);
        Ok(AffineMapZ {
            linear: inv,
            translation: t,
        })
    }

    pub fn is_chart_transition(&self) -> bool {
        self.linear.is_unimodular()
    }
}

/// Small rational matrix used for ranks, inverses and rational solves.
#[derive(Clone, Debug)]
pub(crate) struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub(crate) fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m
                .data
                .iter()
                .map(|v| Rat::from_integer(v.clone()))
                .collect(),
        }
    }

    fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub(crate) fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(p * self.cols + j, r * self.cols + j);
            }
            let inv = self.at(r, c).recip();
            for j in 0..self.cols {
                let v = self.at(r, j) * &inv;
                *self.at_mut(r, j) = v;
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in 0..self.cols {
                        let v = self.at(i, j) - &f * self.at(r, j);
                        *self.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub(crate) fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub(crate) fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = RatMatrix {
            rows: n,
            cols: 2 * n,
            data: vec![Rat::zero(); 2 * n * n],
        };
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = Rat::one();
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut inv = RatMatrix {
            rows: n,
            cols: n,
            data: vec![Rat::zero(); n * n],
        };
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Some(inv)
    }

    pub(crate) fn to_int(&self) -> Option<IntMatrix> {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (k, v) in self.data.iter().enumerate() {
            if !v.is_integer() {
                return None;
            }
            m.data[k] = v.to_integer();
        }
        Some(m)
    }
}

/// Rank of a list of vectors over `Q`.
pub fn rank_of(vectors: &[LatticePoint], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    IntMatrix::from_rows(vectors, dim).rank()
}

/// Smith normal form `U·A·V = D` with the inverses of the transforms.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct SnfWork {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfWork {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &Int) {
        self.a.add_row(dst, src, c);
        self.u.add_row(dst, src, c);
        self.u_inv.add_col(src, dst, &-c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &Int) {
        self.a.add_col(dst, src, c);
        self.v.add_col(dst, src, c);
        self.v_inv.add_row(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Smith normal form over `Z`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut w = SnfWork {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut rank = 0;
    for k in 0..m.min(n) {
        'pivot: loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    if !w.a[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| w.a[(i, j)].abs() < w.a[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot;
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            let mut clean = true;
            for i in k + 1..m {
                if !w.a[(i, k)].is_zero() {
                    let q = w.a[(i, k)].div_floor(&w.a[(k, k)]);
                    w.add_row(i, k, &-q);
                    if !w.a[(i, k)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in k + 1..n {
                if !w.a[(k, j)].is_zero() {
                    let q = w.a[(k, j)].div_floor(&w.a[(k, k)]);
                    w.add_col(j, k, &-q);
                    if !w.a[(k, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let p = w.a[(k, k)].clone();
            let bad = (k + 1..m)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !w.a[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => w.add_row(k, i, &Int::one()),
                None => {
                    if w.a[(k, k)].is_negative() {
                        w.negate_row(k);
                    }
                    rank += 1;
                    break 'pivot;
                }
            }
        }
        if rank <= k {
            break;
        }
    }
    SmithForm {
        u: w.u,
        d: w.a,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
        rank,
    }
}

/// Canonical row-style Hermite basis of the lattice spanned by `rows`.
pub fn hermite_basis(rows: &[LatticePoint], dim: usize) -> Vec<LatticePoint> {
    let mut a = IntMatrix::from_rows(rows, dim);
    let m = a.rows();
    let mut r = 0;
    for c in 0..dim {
        if r == m {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..m).filter(|&i| !a[(i, c)].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[(i, c)].abs()).unwrap();
            a.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if !a[(i, c)].is_zero() {
                    let q = a[(i, c)].div_floor(&a[(r, c)]);
                    a.add_row(i, r, &-q);
                    if !a[(i, c)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < m && !a[(r, c)].is_zero() {
            if a[(r, c)].is_negative() {
                a.negate_row(r);
            }
            for i in 0..r {
                let q = a[(i, c)].div_floor(&a[(r, c)]);
                a.add_row(i, r, &-q);
            }
            r += 1;
        }
    }
    (0..r).map(|i| a.row(i)).collect()
}

/// Basis of the smallest saturated sublattice of `Z^n` containing the generators.
pub fn saturate_sublattice(generators: &[LatticePoint], n: usize) -> Vec<LatticePoint> {
    if generators.is_empty() {
        return Vec::new();
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(generators, n));
    // rowspace(G) = rowspace(D · V^{-1}); its saturation is spanned by the leading rows of V^{-1}
    let rows: Vec<_> = (0..snf.rank).map(|i| snf.v_inv.row(i)).collect();
    hermite_basis(&rows, n)
}

/// Unimodular matrix whose first `k` columns span the saturation of the generators.
pub fn adapted_basis(generators: &[LatticePoint], n: usize) -> (IntMatrix, usize) {
    if generators.is_empty() {
        return (IntMatrix::identity(n), 0);
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(generators, n));
    (snf.v_inv.transpose(), snf.rank)
}

/// Integer basis of `{x : A x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<LatticePoint> {
    let snf = smith_normal_form(a);
    (snf.rank..a.cols()).map(|j| snf.v.col(j)).collect()
}

/// Basis of the lattice orthogonal to the given vectors.
pub fn orthogonal_complement(vectors: &[LatticePoint], n: usize) -> Vec<LatticePoint> {
    if vectors.is_empty() {
        return (0..n).map(|i| LatticePoint::unit(n, i)).collect();
    }
    hermite_basis(&integer_kernel(&IntMatrix::from_rows(vectors, n)), n)
}

/// Outcome of an integer linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegerSolution {
    Solvable {
        particular: LatticePoint,
        kernel: Vec<LatticePoint>,
    },
    /// No integer solution; `reason` names the failing invariant-factor row.
    Unsolvable { reason: String },
}

impl IntegerSolution {
    pub fn particular(&self) -> Option<&LatticePoint> {
        match self {
            IntegerSolution::Solvable { particular, .. } => Some(particular),
            IntegerSolution::Unsolvable { .. } => None,
        }
    }
}

/// Solves `A x = b` over the integers.
pub fn solve_integer_linear(a: &IntMatrix, b: &LatticePoint) -> Result<IntegerSolution> {
    if b.dim() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.rows(),
            b.dim()
        )));
    }
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let mut y = vec![Int::zero(); a.cols()];
    for i in 0..a.rows() {
        if i < snf.rank {
            let d = &snf.d[(i, i)];
            if !c.0[i].is_multiple_of(d) {
                return Ok(IntegerSolution::Unsolvable {
                    reason: format!(
                        "row {i}: {} is not divisible by invariant factor {d}",
                        c.0[i]
                    ),
                });
            }
            y[i] = &c.0[i] / d;
        } else if !c.0[i].is_zero() {
            return Ok(IntegerSolution::Unsolvable {
                reason: format!(
                    "row {i}: inconsistent (zero row, right-hand side {})",
                    c.0[i]
                ),
            });
        }
    }
    let particular = snf.v.mul_vec(&LatticePoint(y));
    let kernel = (snf.rank..a.cols()).map(|j| snf.v.col(j)).collect();
    Ok(IntegerSolution::Solvable { particular, kernel })
}

/// Rational solution of `A x = b` when one exists (used for coordinates in a basis).
pub fn solve_rational(a: &IntMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let (m, n) = (a.rows(), a.cols());
    let mut aug = RatMatrix {
        rows: m,
        cols: n + 1,
        data: vec![Rat::zero(); m * (n + 1)],
    };
    for i in 0..m {
        for j in 0..n {
            *aug.at_mut(i, j) = Rat::from_integer(a[(i, j)].clone());
        }
        *aug.at_mut(i, n) = b[i].clone();
    }
    let piv = aug.rref();
    if piv.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = aug.at(r, n).clone();
    }
    Some(x)
}

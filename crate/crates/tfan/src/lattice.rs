//! Exact integer and rational linear algebra over a lattice N ≅ Z^n.
//!
//! Everything here is arbitrary precision and deterministic: normal forms
//! use a fixed pivot rule (smallest absolute nonzero entry, row-major
//! tie-break), so repeated runs produce identical output.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::GeomError;

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

/// A point of the lattice N ≅ Z^n.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticeVector(Vec<Int>);

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![Int::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> Int {
        dot(&self.0, &other.0)
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Int) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }

    /// The primitive vector spanning the same ray: `self` divided by the gcd
    /// of its entries.
    pub fn primitive(&self) -> Result<LatticeVector, GeomError> {
        Ok(LatticeVector(primitive(&self.0)?))
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && gcd_of(&self.0).is_one()
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(
            self.0
                .iter()
                .map(|a| Rational::from_integer(a.clone()))
                .collect(),
        )
    }
}

impl Index<usize> for LatticeVector {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A point of N_Q = N ⊗ Q.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RationalVector(
            coords
                .iter()
                .map(|&c| Rational::from_integer(Int::from(c)))
                .collect(),
        )
    }

    pub fn zero(rank: usize) -> Self {
        RationalVector(vec![Rational::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add_lattice(&self, other: &LatticeVector) -> RationalVector {
        RationalVector(
            self.0
                .iter()
                .zip(other.coords())
                .map(|(a, b)| a + Rational::from_integer(b.clone()))
                .collect(),
        )
    }

    pub fn dot_lattice(&self, normal: &LatticeVector) -> Rational {
        self.0
            .iter()
            .zip(normal.coords())
            .map(|(a, b)| a * Rational::from_integer(b.clone()))
            .sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Exact conversion to a lattice vector; `None` if any entry is fractional.
    pub fn to_lattice(&self) -> Option<LatticeVector> {
        if !self.is_integral() {
            return None;
        }
        Some(LatticeVector(
            self.0.iter().map(|c| c.to_integer()).collect(),
        ))
    }

    pub fn floor(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c.floor().to_integer()).collect())
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_of(entries: &[Int]) -> Int {
    entries
        .iter()
        .fold(Int::zero(), |acc, e| acc.gcd(e))
}

/// Divides by the gcd of the entries, preserving signs.
pub fn primitive(v: &[Int]) -> Result<Vec<Int>, GeomError> {
    let g = gcd_of(v);
    if g.is_zero() {
        return Err(GeomError::ZeroVector);
    }
    Ok(v.iter().map(|e| e / &g).collect())
}

/// Rectangular matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_lattice_rows(rows: &[LatticeVector]) -> Self {
        IntMatrix::from_rows(rows.iter().map(|v| v.coords().to_vec()).collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Int::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Int::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.row_vecs();
        let mut sign = 1i8;
        let mut prev = Int::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        if sign < 0 {
            -m[n - 1][n - 1].clone()
        } else {
            m[n - 1][n - 1].clone()
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    /// Adjugate: `self * adjugate = det * identity`, computed from cofactors.
    pub fn adjugate(&self) -> IntMatrix {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut adj = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i);
                let mut c = minor.det();
                if (i + j) % 2 == 1 {
                    c = -c;
                }
                adj.set(i, j, c);
            }
        }
        adj
    }

    fn minor(&self, drop_row: usize, drop_col: usize) -> IntMatrix {
        let rows = (0..self.rows)
            .filter(|&i| i != drop_row)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| j != drop_col)
                    .map(|j| self.get(i, j).clone())
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(rows)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Smith normal form `u * m * v = s` with `u`, `v` unimodular and `s`
/// diagonal with each invariant factor dividing the next.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    pub fn invariant_factors(&self) -> Vec<Int> {
        let n = self.s.rows().min(self.s.cols());
        (0..n)
            .map(|i| self.s.get(i, i).clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Pivot rule: smallest absolute nonzero entry of the working submatrix,
/// ties broken row-major, so output is reproducible across runs.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.row_vecs();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let swap_rows = |a: &mut Vec<Vec<Int>>, u: &mut IntMatrix, r1: usize, r2: usize| {
        a.swap(r1, r2);
        for j in 0..u.cols() {
            let x = u.get(r1, j).clone();
            let y = u.get(r2, j).clone();
            u.set(r1, j, y);
            u.set(r2, j, x);
        }
    };
    let swap_cols = |a: &mut Vec<Vec<Int>>, v: &mut IntMatrix, c1: usize, c2: usize| {
        for row in a.iter_mut() {
            row.swap(c1, c2);
        }
        for i in 0..v.rows() {
            let x = v.get(i, c1).clone();
            let y = v.get(i, c2).clone();
            v.set(i, c1, y);
            v.set(i, c2, x);
        }
    };
    // row_i -= q * row_t
    let row_op = |a: &mut Vec<Vec<Int>>, u: &mut IntMatrix, i: usize, t: usize, q: &Int| {
        for j in 0..cols {
            let s = &a[t][j] * q;
            a[i][j] -= s;
        }
        for j in 0..u.cols() {
            let s = u.get(t, j) * q;
            let cur = u.get(i, j).clone();
            u.set(i, j, cur - s);
        }
    };
    // col_j -= q * col_t
    let col_op = |a: &mut Vec<Vec<Int>>, v: &mut IntMatrix, j: usize, t: usize, q: &Int| {
        for row in a.iter_mut() {
            let s = &row[t] * q;
            row[j] -= s;
        }
        for i in 0..v.rows() {
            let s = v.get(i, t) * q;
            let cur = v.get(i, j).clone();
            v.set(i, j, cur - s);
        }
    };

    let find_pivot = |a: &Vec<Vec<Int>>, t: usize| -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if a[i][j].abs() < a[bi][bj].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    };

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&a, t) else {
            break;
        };
        if pi != t {
            swap_rows(&mut a, &mut u, t, pi);
        }
        if pj != t {
            swap_cols(&mut a, &mut v, t, pj);
        }
        'reduce: loop {
            // Euclid down the pivot column.
            for i in t + 1..rows {
                while !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    row_op(&mut a, &mut u, i, t, &q);
                    if !a[i][t].is_zero() {
                        swap_rows(&mut a, &mut u, t, i);
                    }
                }
            }
            // Euclid along the pivot row.
            for j in t + 1..cols {
                while !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    col_op(&mut a, &mut v, j, t, &q);
                    if !a[t][j].is_zero() {
                        swap_cols(&mut a, &mut v, t, j);
                    }
                }
            }
            // Column ops may have refilled the column.
            if (t + 1..rows).any(|i| !a[i][t].is_zero()) {
                continue 'reduce;
            }
            // Pivot must divide the rest of the submatrix.
            let mut fixed = true;
            'divcheck: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        // Pull the offending row up and restart the reduction.
                        for c in 0..cols {
                            let add = a[i][c].clone();
                            a[t][c] += add;
                        }
                        for c in 0..u.cols() {
                            let add = u.get(i, c).clone();
                            let cur = u.get(t, c).clone();
                            u.set(t, c, cur + add);
                        }
                        fixed = false;
                        break 'divcheck;
                    }
                }
            }
            if fixed {
                break 'reduce;
            }
        }
        if a[t][t].is_negative() {
            for j in 0..cols {
                a[t][j] = -a[t][j].clone();
            }
            for j in 0..u.cols() {
                let cur = u.get(t, j).clone();
                u.set(t, j, -cur);
            }
        }
        t += 1;
    }

    SmithNormalForm {
        s: IntMatrix::from_rows(a),
        u,
        v,
    }
}

/// Whether the given primitive vectors are part of some lattice basis:
/// linearly independent with all invariant factors equal to one.
pub fn extends_to_basis(vectors: &[LatticeVector]) -> Result<bool, GeomError> {
    for v in vectors {
        if !v.is_primitive() {
            return Err(GeomError::NotPrimitive);
        }
    }
    if vectors.is_empty() {
        return Ok(true);
    }
    let n = vectors[0].rank();
    if vectors.len() > n {
        return Ok(false);
    }
    let snf = smith_normal_form(&IntMatrix::from_lattice_rows(vectors));
    let factors = snf.invariant_factors();
    Ok(factors.len() == vectors.len() && factors.iter().all(One::is_one))
}

/// Canonical row-style Hermite form of the lattice spanned by `rows`:
/// echelon shape, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are dropped.
pub fn row_hnf(mut rows: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    if rows.is_empty() {
        return rows;
    }
    let n = rows[0].len();
    let mut r = 0;
    for c in 0..n {
        if r == rows.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if rows[i][c].abs() < rows[b][c].abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(b) = best else {
                break;
            };
            rows.swap(r, b);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = &rows[i][c] / &rows[r][c];
                for j in 0..n {
                    let s = &rows[r][j] * &q;
                    rows[i][j] -= s;
                }
                if !rows[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for j in 0..n {
                rows[r][j] = -rows[r][j].clone();
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if q.is_zero() {
                continue;
            }
            for j in 0..n {
                let s = &rows[r][j] * &q;
                rows[i][j] -= s;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Column-echelon elimination with a recorded unimodular column transform.
/// Returns (pivot count, kernel basis), the kernel being the full integer
/// kernel (saturated) in canonical Hermite form.
fn column_echelon(rows: &[Vec<Int>], n: usize) -> (usize, Vec<Vec<Int>>) {
    let mut a: Vec<Vec<Int>> = rows.to_vec();
    // v holds the columns of the accumulated transform, stored column-wise.
    let mut v: Vec<Vec<Int>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    let mut c = 0;
    for i in 0..a.len() {
        if c == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in c..n {
                if a[i][j].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(j),
                    Some(b) => {
                        if a[i][j].abs() < a[i][b].abs() {
                            best = Some(j);
                        }
                    }
                }
            }
            let Some(b) = best else {
                break;
            };
            if b != c {
                for row in a.iter_mut() {
                    row.swap(c, b);
                }
                v.swap(c, b);
            }
            let mut clean = true;
            for j in c + 1..n {
                if a[i][j].is_zero() {
                    continue;
                }
                let q = &a[i][j] / &a[i][c];
                for row in a.iter_mut() {
                    let s = &row[c] * &q;
                    row[j] -= s;
                }
                for k in 0..n {
                    let s = &v[c][k] * &q;
                    v[j][k] -= s;
                }
                if !a[i][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                if !a[i][c].is_zero() {
                    c += 1;
                }
                break;
            }
        }
    }
    let kernel: Vec<Vec<Int>> = (c..n).map(|j| v[j].clone()).collect();
    (c, row_hnf(kernel))
}

/// Saturated integer basis of `{x : rows · x = 0}` in canonical form.
pub fn kernel_basis(rows: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    column_echelon(rows, n).1
}

pub fn rank_of(rows: &[Vec<Int>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    column_echelon(rows, rows[0].len()).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lv(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    #[test]
    fn primitive_divides_by_gcd() {
        assert_eq!(lv(&[2, 4]).primitive().unwrap(), lv(&[1, 2]));
        assert_eq!(lv(&[1, 0, 0]).primitive().unwrap(), lv(&[1, 0, 0]));
        assert_eq!(lv(&[-6, 9]).primitive().unwrap(), lv(&[-2, 3]));
    }

    #[test]
    fn primitive_of_zero_fails() {
        assert_eq!(lv(&[0, 0]).primitive(), Err(GeomError::ZeroVector));
    }

    fn check_snf(m: &IntMatrix) -> SmithNormalForm {
        let snf = smith_normal_form(m);
        assert!(snf.u.is_unimodular(), "u not unimodular");
        assert!(snf.v.is_unimodular(), "v not unimodular");
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.s, "u*m*v != s");
        // Diagonal, nonnegative, divisibility chain.
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                if i != j {
                    assert!(snf.s.get(i, j).is_zero());
                }
            }
        }
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "invariant factors must divide");
        }
        snf
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(2);
        let snf = check_snf(&m);
        assert_eq!(snf.s, m);
    }

    #[test]
    fn snf_diag_2_3() {
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let snf = check_snf(&m);
        assert_eq!(snf.s, IntMatrix::from_i64_rows(&[&[1, 0], &[0, 6]]));
    }

    // Rank oracle independent of the column-echelon and SNF code paths:
    // plain rational Gaussian elimination.
    fn rational_rank(rows: &[Vec<Int>]) -> usize {
        if rows.is_empty() {
            return 0;
        }
        let n = rows[0].len();
        let mut m: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|e| Rational::from_integer(e.clone())).collect())
            .collect();
        let mut rank = 0;
        for c in 0..n {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in 0..m.len() {
                if i != rank && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[rank][c];
                    for j in 0..n {
                        let s = &m[rank][j] * &f;
                        m[i][j] = &m[i][j] - &s;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn snf_rank_one() {
        let m = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(rational_rank(&m.row_vecs()), 1);
        let snf = check_snf(&m);
        assert_eq!(snf.s, IntMatrix::from_i64_rows(&[&[1, 0], &[0, 0]]));
    }

    #[test]
    fn extends_to_basis_examples() {
        assert!(extends_to_basis(&[lv(&[1, 0])]).unwrap());
        // Cofactor det of [[1,1],[0,-1]] is -1.
        let det = IntMatrix::from_i64_rows(&[&[1, 1], &[0, -1]]).det();
        assert_eq!(det, int(-1));
        assert!(extends_to_basis(&[lv(&[1, 1]), lv(&[0, -1])]).unwrap());
        // SNF of [[1,2],[1,-2]] is diag(1,4).
        let snf = check_snf(&IntMatrix::from_i64_rows(&[&[1, 2], &[1, -2]]));
        assert_eq!(snf.invariant_factors(), vec![int(1), int(4)]);
        assert!(!extends_to_basis(&[lv(&[1, 2]), lv(&[1, -2])]).unwrap());
    }

    #[test]
    fn extends_to_basis_rejects_non_primitive() {
        assert_eq!(
            extends_to_basis(&[lv(&[2, 0])]),
            Err(GeomError::NotPrimitive)
        );
    }

    #[test]
    fn kernel_is_saturated() {
        // x + y + z = 0 has the full rank-2 kernel lattice.
        let rows = vec![vec![int(1), int(1), int(1)]];
        let k = kernel_basis(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot(&rows[0], v).is_zero());
        }
        // (1, -1, 0) lies in the saturation; it must be an integer
        // combination of the basis.
        let target = vec![int(1), int(-1), int(0)];
        let mut hnf = k.clone();
        hnf.push(target);
        assert_eq!(row_hnf(hnf), kernel_basis(&rows, 3));
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c).prop_map(move |data| {
                IntMatrix::from_rows(
                    data.chunks(c)
                        .map(|ch| ch.iter().map(|&x| Int::from(x)).collect())
                        .collect(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn snf_transform_identity_holds(m in small_matrix()) {
            check_snf(&m);
        }

        #[test]
        fn rank_matches_rational_elimination(m in small_matrix()) {
            prop_assert_eq!(rank_of(&m.row_vecs()), rational_rank(&m.row_vecs()));
        }

        #[test]
        fn primitive_ignores_positive_scaling(
            coords in proptest::collection::vec(-9i64..=9, 1..=4),
            k in 1i64..=5,
        ) {
            let v = LatticeVector::from_i64(&coords);
            prop_assume!(!v.is_zero());
            let scaled = v.scale(&Int::from(k));
            prop_assert_eq!(scaled.primitive().unwrap(), v.primitive().unwrap());
        }

        #[test]
        fn extends_to_basis_is_order_invariant(
            a in proptest::collection::vec(-4i64..=4, 2),
            b in proptest::collection::vec(-4i64..=4, 2),
        ) {
            let va = LatticeVector::from_i64(&a);
            let vb = LatticeVector::from_i64(&b);
            prop_assume!(va.is_primitive() && vb.is_primitive());
            let fwd = extends_to_basis(&[va.clone(), vb.clone()]).unwrap();
            let rev = extends_to_basis(&[vb, va]).unwrap();
            prop_assert_eq!(fwd, rev);
        }

        #[test]
        fn extends_to_basis_is_unimodular_invariant(
            a in proptest::collection::vec(-4i64..=4, 2),
            b in proptest::collection::vec(-4i64..=4, 2),
            shears in proptest::collection::vec((0usize..2, -2i64..=2), 0..4),
        ) {
            let va = LatticeVector::from_i64(&a);
            let vb = LatticeVector::from_i64(&b);
            prop_assume!(va.is_primitive() && vb.is_primitive());
            // A product of elementary shears is unimodular.
            let mut u = IntMatrix::identity(2);
            for (row, k) in shears {
                let mut shear = IntMatrix::identity(2);
                shear.set(row, 1 - row, Int::from(k));
                u = u.mul(&shear);
            }
            prop_assert!(u.is_unimodular());
            let apply = |v: &LatticeVector| {
                LatticeVector::new(
                    (0..2)
                        .map(|i| dot(u.row(i), v.coords()))
                        .collect(),
                )
            };
            let (ta, tb) = (apply(&va), apply(&vb));
            // Unimodular images of primitive vectors stay primitive.
            prop_assert!(ta.is_primitive() && tb.is_primitive());
            prop_assert_eq!(
                extends_to_basis(&[va, vb]).unwrap(),
                extends_to_basis(&[ta, tb]).unwrap()
            );
        }
    }
}

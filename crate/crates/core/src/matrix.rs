//! Exact integer matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::word::Substitution;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
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
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds from rows; panics if they are ragged.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn pow(&self, e: usize) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn has_negative_entry(&self) -> bool {
        self.data.iter().any(Signed::is_negative)
    }

    /// Primitivity with the least power that is entrywise positive.
    ///
    /// Works on the zero/positive pattern. Stops at a positive power, when a
    /// pattern repeats (the sequence is then periodic and never positive), or
    /// past Wielandt's bound `(n-1)^2 + 1`.
    pub fn primitivity(&self) -> Result<Primitivity> {
        if !self.is_square() {
            return Err(Error::Precondition("primitivity needs a square matrix".into()));
        }
        if self.has_negative_entry() {
            return Err(Error::NegativeEntry);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Primitivity { primitive: false, power: None });
        }
        let base = BoolMatrix::from_int(self);
        let mut cur = base.clone();
        let mut seen = std::collections::HashSet::new();
        let wielandt = (n - 1) * (n - 1) + 1;
        let mut p = 1;
        loop {
            if cur.all_positive() {
                return Ok(Primitivity { primitive: true, power: Some(p) });
            }
            if p >= wielandt || !seen.insert(cur.bits.clone()) {
                return Ok(Primitivity { primitive: false, power: None });
            }
            cur = cur.mul(&base);
            p += 1;
        }
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.primitivity()?.primitive)
    }

    /// Characteristic polynomial `det(λI - M)` by the Faddeev-LeVerrier recurrence.
    pub fn char_poly(&self) -> IntPolynomial {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut mk = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&mk);
            for i in 0..n {
                let v = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            let am = self.mul(&next);
            let c = -am.trace() / BigInt::from(k);
            coeffs[n - k] = c;
            mk = next;
        }
        IntPolynomial::new(coeffs)
    }

    /// Determinant via fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                let g = a[r][c].clone();
                for j in c..n {
                    let v = &a[i][j] * &g - &a[r][j] * &f;
                    a[i][j] = v;
                }
                let content = a[i][c..].iter().fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
                if !content.is_zero() && !content.is_one() {
                    for x in &mut a[i][c..] {
                        *x /= &content;
                    }
                }
            }
            r += 1;
            if r == m {
                break;
            }
        }
        r
    }

    /// Stable rank of `M^p`, reached by `p ≤ n`.
    pub fn eventual_rank(&self) -> usize {
        assert!(self.is_square(), "eventual rank of a non-square matrix");
        let mut p = self.clone();
        let mut r = p.rank();
        loop {
            let next = p.mul(self);
            let nr = next.rank();
            if nr == r {
                return r;
            }
            p = next;
            r = nr;
        }
    }

    /// Basis of the rational kernel with integer, primitive vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<BigRational>> = (0..m)
            .map(|i| self.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in &mut a[r] {
                *x *= &inv;
            }
            for i in 0..m {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..n {
                        let v = &a[r][j] * &f;
                        a[i][j] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); n];
                v[f] = BigRational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[row][f].clone();
                }
                clear_denominators(&v)
            })
            .collect()
    }

    /// Solves `self · x = b` over the rationals when the system is consistent.
    pub fn solve_rational(&self, b: &[BigInt]) -> Option<Vec<BigRational>> {
        let (m, n) = (self.rows, self.cols);
        assert_eq!(b.len(), m, "dimension mismatch");
        let mut a: Vec<Vec<BigRational>> = (0..m)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    self.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
                row.push(BigRational::from_integer(b[i].clone()));
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in &mut a[r] {
                *x *= &inv;
            }
            for i in 0..m {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..=n {
                        let v = &a[r][j] * &f;
                        a[i][j] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if a[r..].iter().any(|row| !row[n].is_zero()) {
            return None;
        }
        let mut x = vec![BigRational::zero(); n];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = a[row][n].clone();
        }
        Some(x)
    }

    /// Compact rendering `[[1,2],[1,0]]`.
    pub fn render(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Scales a rational vector to a primitive integer vector.
pub(crate) fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}", self.render())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::bigser::rows::serialize(&self.to_rows(), s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = crate::bigser::rows::deserialize(d)?;
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(IntMatrix::from_rows(rows))
    }
}

/// Outcome of the primitivity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Primitivity {
    pub primitive: bool,
    /// Least `p` with `M^p` entrywise positive.
    pub power: Option<usize>,
}

#[derive(Clone)]
struct BoolMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl BoolMatrix {
    fn from_int(m: &IntMatrix) -> Self {
        BoolMatrix { n: m.rows, bits: m.data.iter().map(|x| !x.is_zero()).collect() }
    }

    fn all_positive(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut bits = vec![false; n * n];
        for i in 0..n {
            for k in 0..n {
                if self.bits[i * n + k] {
                    for j in 0..n {
                        bits[i * n + j] |= other.bits[k * n + j];
                    }
                }
            }
        }
        BoolMatrix { n, bits }
    }
}

/// `M_φ`: entry `(i, j)` counts letter `i` in `φ(j)`.
pub fn substitution_matrix(sub: &Substitution) -> IntMatrix {
    let l = sub.len();
    let mut m = IntMatrix::zeros(l, l);
    for (j, img) in sub.images().iter().enumerate() {
        for &a in img.iter() {
            let v = m.get(a as usize, j) + 1;
            m.set(a as usize, j, v);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(s: &str) -> Substitution {
        Substitution::parse(s).unwrap()
    }

    #[test]
    fn substitution_matrices() {
        assert_eq!(substitution_matrix(&sub("01,00")), IntMatrix::from_i64(&[&[1, 2], &[1, 0]]));
        assert_eq!(substitution_matrix(&sub("0010,1")), IntMatrix::from_i64(&[&[3, 0], &[1, 1]]));
        assert_eq!(substitution_matrix(&sub("001111,001")), IntMatrix::from_i64(&[&[2, 2], &[4, 1]]));
    }

    #[test]
    fn primitivity_examples() {
        let tm = IntMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(tm.primitivity().unwrap(), Primitivity { primitive: true, power: Some(1) });
        let chacon = IntMatrix::from_i64(&[&[3, 0], &[1, 1]]);
        assert!(!chacon.is_primitive().unwrap());
        let fib = IntMatrix::from_i64(&[&[1, 1], &[1, 0]]);
        assert_eq!(fib.primitivity().unwrap().power, Some(2));
        assert_eq!(IntMatrix::from_i64(&[&[1, -1], &[1, 1]]).primitivity(), Err(Error::NegativeEntry));
        // Wielandt matrix: least positive power (n-1)^2 + 1
        let w = IntMatrix::from_i64(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 1, 0, 0]]);
        assert_eq!(w.primitivity().unwrap().power, Some(10));
        // a permutation matrix cycles without becoming positive
        assert!(!IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).is_primitive().unwrap());
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(IntMatrix::from_i64(&[&[2, 2], &[4, 1]]).char_poly(), IntPolynomial::from_i64(&[-6, -3, 1]));
        assert_eq!(IntMatrix::from_i64(&[&[1, 1], &[1, 1]]).char_poly(), IntPolynomial::from_i64(&[0, -2, 1]));
        assert_eq!(IntMatrix::identity(2).char_poly(), IntPolynomial::from_i64(&[1, -2, 1]));
        let trib = IntMatrix::from_i64(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(trib.char_poly(), IntPolynomial::from_i64(&[-1, -1, -1, 1]));
    }

    #[test]
    fn ranks() {
        assert_eq!(IntMatrix::from_i64(&[&[1, 1], &[1, 1]]).eventual_rank(), 1);
        assert_eq!(IntMatrix::from_i64(&[&[0, 1], &[0, 0]]).eventual_rank(), 0);
        assert_eq!(IntMatrix::identity(5).eventual_rank(), 5);
        assert_eq!(IntMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).rank(), 2);
        assert_eq!(IntMatrix::from_i64(&[&[2, 1], &[1, 1]]).determinant(), BigInt::from(1));
        assert_eq!(IntMatrix::from_i64(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).determinant(), BigInt::from(-2));
    }

    #[test]
    fn kernel_and_solve() {
        let b = IntMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1]]);
        let k = b.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(b.mul_vec(&k[0]).iter().all(Zero::is_zero));
        let a = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let x = a.solve_rational(&[3.into(), 2.into()]).unwrap();
        assert_eq!(x, vec![BigRational::one(), BigRational::one()]);
        let singular = IntMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(singular.solve_rational(&[1.into(), 2.into()]).is_none());
    }

    #[test]
    fn json_shape() {
        let m = IntMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[1,2],[3,4]]");
        assert_eq!(serde_json::from_str::<IntMatrix>(&s).unwrap(), m);
    }
}

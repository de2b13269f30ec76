//! Dense square matrices over a [`Ring`], plus integer matrices used for
//! representation data.

use std::fmt;

use crate::error::{Error, Result};
use crate::rings::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<E> {
    n: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(n: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), n * n);
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn map<F, T>(&self, f: F) -> Matrix<T>
    where
        F: FnMut(&E) -> T,
    {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = self.data.clone();
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        Matrix { n, data }
    }
}

impl<E: Clone + Eq> Matrix<E> {
    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Matrix::zero(ring, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn zero<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix { n, data: vec![ring.zero(); n * n] }
    }

    pub fn is_identity<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        let (zero, one) = (ring.zero(), ring.one());
        (0..self.n).all(|i| {
            (0..self.n).all(|j| *self.get(i, j) == if i == j { one.clone() } else { zero.clone() })
        })
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let zero = ring.zero();
        let mut data = vec![zero.clone(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if *a == zero {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if *b == zero {
                        continue;
                    }
                    let cell = &mut data[i * n + j];
                    *cell = ring.add(cell, &ring.mul(a, b));
                }
            }
        }
        Matrix { n, data }
    }

    pub fn try_mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(self.mul(ring, other))
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| ring.add(a, b)).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| ring.sub(a, b)).collect(),
        }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        self.map(|a| ring.mul(a, c))
    }

    /// Coefficients of the characteristic polynomial `det(λI - A)`, leading first,
    /// by Berkowitz's division-free algorithm.
    pub fn char_poly<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<E> {
        let n = self.n;
        // vect holds the coefficients for the leading principal submatrix processed so far
        let mut vect: Vec<E> = vec![ring.one(), ring.neg(self.get(0, 0))];
        for r in 1..n {
            // A = [[M, C], [R, a]] with M the r x r leading block
            let a = self.get(r, r).clone();
            let col: Vec<E> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let row: Vec<E> = (0..r).map(|j| self.get(r, j).clone()).collect();
            // Toeplitz column: 1, -a, -R C, -R M C, ..., -R M^{r-1} C
            let mut t = vec![ring.one(), ring.neg(&a)];
            let mut v = col.clone();
            for _ in 0..r {
                let rv = row.iter().zip(&v).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)));
                t.push(ring.neg(&rv));
                let mut nv = vec![ring.zero(); r];
                for (i, slot) in nv.iter_mut().enumerate() {
                    for (j, vj) in v.iter().enumerate() {
                        *slot = ring.add(slot, &ring.mul(self.get(i, j), vj));
                    }
                }
                v = nv;
            }
            // new coefficients = Toeplitz(t) * vect, result length r + 2
            let mut out = vec![ring.zero(); r + 2];
            for (i, slot) in out.iter_mut().enumerate() {
                for (j, c) in vect.iter().enumerate() {
                    if i >= j && i - j < t.len() {
                        *slot = ring.add(slot, &ring.mul(&t[i - j], c));
                    }
                }
            }
            vect = out;
        }
        vect
    }

    pub fn det<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        let cp = self.char_poly(ring);
        let c = cp[self.n].clone();
        if self.n % 2 == 0 {
            c
        } else {
            ring.neg(&c)
        }
    }

    /// Inverse over any commutative ring via Cayley-Hamilton; `None` if the
    /// determinant is not a unit.
    pub fn inverse<R: Ring<Elem = E>>(&self, ring: &R) -> Option<Self> {
        let n = self.n;
        let cp = self.char_poly(ring);
        // A^n + c1 A^{n-1} + ... + cn I = 0  =>  A^{-1} = -(A^{n-1} + ... + c_{n-1} I) / cn
        let cn_inv = ring.inverse(&cp[n])?;
        let mut acc = Matrix::identity(ring, n);
        for c in cp.iter().take(n).skip(1) {
            acc = acc.mul(ring, self);
            for i in 0..n {
                let cell = &mut acc.data[i * n + i];
                *cell = ring.add(cell, c);
            }
        }
        Some(acc.scale(ring, &ring.neg(&cn_inv)))
    }

    pub fn display<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let cells: Vec<String> = (0..self.n).map(|j| ring.format(self.get(i, j))).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub n: usize,
    pub data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            writeln!(f, "{:?}", &self.data[i * self.n..(i + 1) * self.n])?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        IntMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        IntMatrix { n: self.n, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Exact division; `None` if some entry is not divisible.
    pub fn div_exact(&self, d: i64) -> Option<IntMatrix> {
        if self.data.iter().any(|a| a % d != 0) {
            return None;
        }
        Some(IntMatrix { n: self.n, data: self.data.iter().map(|a| a / d).collect() })
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn commutator(&self, other: &IntMatrix) -> IntMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn to_ring<R: Ring>(&self, ring: &R) -> Matrix<R::Elem> {
        Matrix::from_vec(self.n, self.data.iter().map(|&x| ring.from_i64(x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{FinRing, Integers};
    use num_bigint::BigInt;

    fn zmat(n: usize, v: &[i64]) -> Matrix<BigInt> {
        Matrix::from_vec(n, v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn determinant_and_inverse_over_integers() {
        let z = Integers;
        let a = zmat(3, &[2, 1, 0, 1, 1, 0, 3, 4, 1]);
        assert_eq!(a.det(&z), BigInt::from(1));
        let inv = a.inverse(&z).unwrap();
        assert!(a.mul(&z, &inv).is_identity(&z));
        let b = zmat(2, &[2, 0, 0, 1]);
        assert!(b.inverse(&z).is_none());
        assert_eq!(zmat(2, &[1, 2, 3, 4]).det(&z), BigInt::from(-2));
    }

    #[test]
    fn inverse_over_non_local_ring() {
        let r = FinRing::zmod(6).unwrap();
        let a = Matrix::from_vec(3, vec![5u16, 1, 0, 0, 1, 2, 3, 0, 1]);
        let d = a.det(&r);
        if r.is_unit(&d) {
            let inv = a.inverse(&r).unwrap();
            assert!(a.mul(&r, &inv).is_identity(&r));
            assert!(inv.mul(&r, &a).is_identity(&r));
        } else {
            assert!(a.inverse(&r).is_none());
        }
        let t = Matrix::from_vec(2, vec![1u16, 4, 0, 1]);
        assert_eq!(t.inverse(&r).unwrap(), Matrix::from_vec(2, vec![1u16, 2, 0, 1]));
    }
}

use std::fmt;

use super::{FpVector, PrimeField, Subspace};
use crate::error::{Error, Result};

/// Row storage. Over F_2 every row is a run of `u64` words with the unused
/// high bits of the last word kept at zero, so derived equality is exact.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Storage {
    Bits { words: usize, data: Vec<u64> },
    Bytes(Vec<u8>),
}

/// Dense matrix over F_p in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        let storage = if field.is_two() {
            let words = cols.div_ceil(64);
            Storage::Bits {
                words,
                data: vec![0; words * rows],
            }
        } else {
            Storage::Bytes(vec![0; rows * cols])
        };
        FpMatrix {
            field,
            rows,
            cols,
            storage,
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Row-major residues; every entry must already lie in `[0, p)`.
    pub fn from_row_major(
        field: PrimeField,
        rows: usize,
        cols: usize,
        entries: &[u32],
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let mut m = Self::zeros(field, rows, cols);
        for (k, &x) in entries.iter().enumerate() {
            m.set(k / cols.max(1), k % cols.max(1), field.residue(x)?);
        }
        Ok(m)
    }

    /// Matrix from explicit rows. `cols` is needed so that a matrix with no
    /// rows still has a well-defined shape.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.residue(x)?);
            }
        }
        Ok(m)
    }

    pub fn from_row_vectors(field: PrimeField, cols: usize, rows: &[FpVector]) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, x) in row.support() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn from_columns(field: PrimeField, rows: usize, columns: &[FpVector]) -> Result<Self> {
        Ok(Self::from_row_vectors(field, rows, columns)?.transpose())
    }

    pub fn field(&self) -> PrimeField {
        self.field
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        debug_assert!(r < self.rows && c < self.cols);
        match &self.storage {
            Storage::Bits { words, data } => ((data[r * words + c / 64] >> (c % 64)) & 1) as u8,
            Storage::Bytes(data) => data[r * self.cols + c],
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u8) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        assert!((value as u32) < self.field.p(), "residue out of range");
        let cols = self.cols;
        match &mut self.storage {
            Storage::Bits { words, data } => {
                let w = &mut data[r * *words + c / 64];
                let bit = 1u64 << (c % 64);
                if value == 1 {
                    *w |= bit;
                } else {
                    *w &= !bit;
                }
            }
            Storage::Bytes(data) => data[r * cols + c] = value,
        }
    }

    pub fn row(&self, r: usize) -> FpVector {
        FpVector::from_raw(self.field, (0..self.cols).map(|c| self.get(r, c)).collect())
    }

    pub fn column(&self, c: usize) -> FpVector {
        FpVector::from_raw(self.field, (0..self.rows).map(|r| self.get(r, c)).collect())
    }

    pub fn row_vectors(&self) -> Vec<FpVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn column_vectors(&self) -> Vec<FpVector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) as u32).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.storage {
            Storage::Bits { data, .. } => data.iter().all(|&w| w == 0),
            Storage::Bytes(data) => data.iter().all(|&x| x == 0),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if x != 0 {
                    t.set(c, r, x);
                }
            }
        }
        t
    }

    fn check_field(&self, other: &FpMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        Ok(())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        match (&self.storage, &other.storage, &mut out.storage) {
            (
                Storage::Bits { words: sw, data: sd },
                Storage::Bits { words: ow, data: od },
                Storage::Bits { data: rd, .. },
            ) => {
                for r in 0..self.rows {
                    let dst = &mut rd[r * ow..(r + 1) * ow];
                    for k in 0..self.cols {
                        if (sd[r * sw + k / 64] >> (k % 64)) & 1 == 1 {
                            for (d, s) in dst.iter_mut().zip(&od[k * ow..(k + 1) * ow]) {
                                *d ^= s;
                            }
                        }
                    }
                }
            }
            _ => {
                let f = self.field;
                for r in 0..self.rows {
                    for c in 0..other.cols {
                        let mut acc = 0u32;
                        for k in 0..self.cols {
                            acc += self.get(r, k) as u32 * other.get(k, c) as u32;
                            if acc >= 1 << 31 {
                                acc = f.reduce(acc) as u32;
                            }
                        }
                        out.set(r, c, f.reduce(acc));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &FpVector) -> Result<FpVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = self.field;
        let entries = (0..self.rows)
            .map(|r| {
                v.support()
                    .fold(0u8, |acc, (c, x)| f.add(acc, f.mul(self.get(r, c), x)))
            })
            .collect();
        Ok(FpVector::from_raw(f, entries))
    }

    fn zip_with(&self, other: &FpMatrix, op: impl Fn(u8, u8) -> u8) -> Result<FpMatrix> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = Self::zeros(self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, op(self.get(r, c), other.get(r, c)));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, c: u8) -> FpMatrix {
        let mut out = Self::zeros(self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for col in 0..self.cols {
                out.set(r, col, self.field.mul(self.get(r, col), c));
            }
        }
        out
    }

    /// `self^k` for a square matrix; `self^0` is the identity.
    pub fn pow(&self, mut k: u32) -> Result<FpMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut acc = Self::identity(self.field, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut out = Self::zeros(self.field, self.rows + other.rows, self.cols);
        for (i, src) in [self, other].into_iter().enumerate() {
            let offset = if i == 0 { 0 } else { self.rows };
            for r in 0..src.rows {
                for c in 0..src.cols {
                    out.set(offset + r, c, src.get(r, c));
                }
            }
        }
        Ok(out)
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        Ok(self.transpose().vstack(&other.transpose())?.transpose())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_field(other)?;
        let mut out = Self::zeros(
            self.field,
            self.rows + other.rows,
            self.cols + other.cols,
        );
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        match &mut self.storage {
            Storage::Bits { words, data } => {
                for w in 0..*words {
                    data.swap(a * *words + w, b * *words + w);
                }
            }
            Storage::Bytes(data) => {
                for c in 0..self.cols {
                    data.swap(a * self.cols + c, b * self.cols + c);
                }
            }
        }
    }

    fn scale_row(&mut self, r: usize, k: u8) {
        // over F_2 the only nonzero scalar is 1
        if let Storage::Bytes(data) = &mut self.storage {
            for x in &mut data[r * self.cols..(r + 1) * self.cols] {
                *x = self.field.mul(*x, k);
            }
        }
    }

    /// `row[dst] += k * row[src]`.
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: u8) {
        if k == 0 {
            return;
        }
        let f = self.field;
        match &mut self.storage {
            Storage::Bits { words, data } => {
                let w = *words;
                for i in 0..w {
                    let s = data[src * w + i];
                    data[dst * w + i] ^= s;
                }
            }
            Storage::Bytes(data) => {
                let cols = self.cols;
                for c in 0..cols {
                    let s = data[src * cols + c];
                    if s != 0 {
                        let d = &mut data[dst * cols + c];
                        *d = f.add(*d, f.mul(k, s));
                    }
                }
            }
        }
    }

    /// Gauss-Jordan elimination in place; returns pivot columns.
    fn reduce(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(i) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, i);
            let lead = self.get(r, c);
            self.scale_row(r, f.inv(lead).expect("nonzero pivot"));
            for i in 0..self.rows {
                if i != r {
                    let v = self.get(i, c);
                    if v != 0 {
                        self.add_row_multiple(i, r, f.neg(v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row-echelon form, same shape, zero rows at the bottom.
    pub fn rref(&self) -> FpMatrix {
        let mut m = self.clone();
        m.reduce();
        m
    }

    /// Reduced row-echelon form together with its pivot columns.
    pub fn rref_with_pivots(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.reduce();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// `{ v : self * v = 0 }` as a subspace of F_p^cols.
    pub fn kernel(&self) -> Subspace {
        let f = self.field;
        let (r, pivots) = self.rref_with_pivots();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = FpVector::zeros(f, self.cols);
            v.set(free, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                let x = r.get(i, free);
                if x != 0 {
                    v.set(pc, f.neg(x));
                }
            }
            basis.push(v);
        }
        Subspace::span(f, self.cols, &basis).expect("kernel vectors have ambient length")
    }

    /// Column space, a subspace of F_p^rows.
    pub fn image(&self) -> Subspace {
        self.transpose().row_space()
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_rows_unchecked(self)
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self
            .hstack(&Self::identity(self.field, n))
            .expect("same field and row count");
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.rows, self.cols)?;
        for row in self.to_rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = FpMatrix::identity(f(3), 3);
        assert_eq!(id.rref(), id);
    }

    #[test]
    fn rref_zero_has_rank_zero() {
        let z = FpMatrix::zeros(f(2), 2, 4);
        assert_eq!(z.rref(), z);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn rref_small_f3_example() {
        // [[2,1],[1,2]]: det = 3 = 0 mod 3, so rank 1 over F_3, rref [[1,2],[0,0]]
        let m = FpMatrix::from_rows(f(3), 2, &[vec![2, 1], vec![1, 2]]).unwrap();
        let (r, piv) = m.rref_with_pivots();
        assert_eq!(piv, vec![0]);
        assert_eq!(r.to_rows(), vec![vec![1, 2], vec![0, 0]]);
    }

    #[test]
    fn rref_small_f5_example_full_rank() {
        // over F_5 the same matrix has det 3 != 0
        let m = FpMatrix::from_rows(f(5), 2, &[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(m.rref(), FpMatrix::identity(f(5), 2));
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let z = FpMatrix::zeros(f(2), 1, 3);
        assert_eq!(z.kernel().dim(), 3);
        assert!(z.kernel().is_full());
        let id = FpMatrix::identity(f(5), 4);
        assert_eq!(id.kernel().dim(), 0);
        assert!(id.image().is_full());
        assert!(FpMatrix::zeros(f(5), 3, 3).image().is_zero());
    }

    #[test]
    fn bit_packed_rows_past_one_word() {
        let two = f(2);
        let mut m = FpMatrix::zeros(two, 3, 130);
        m.set(0, 0, 1);
        m.set(0, 129, 1);
        m.set(1, 64, 1);
        m.set(2, 129, 1);
        let (r, piv) = m.rref_with_pivots();
        assert_eq!(piv, vec![0, 64, 129]);
        assert_eq!(r.get(0, 129), 0);
        let p = m.mul(&m.transpose()).unwrap();
        assert_eq!(p.to_rows(), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 1]]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = FpMatrix::from_rows(f(7), 3, &[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]])
            .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let sing = FpMatrix::from_rows(f(7), 2, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(sing.inverse().is_none());
        assert!(FpMatrix::zeros(f(7), 0, 0).inverse().is_some());
    }

    #[test]
    fn shape_errors() {
        let a = FpMatrix::zeros(f(3), 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(FpMatrix::from_row_major(f(3), 2, 2, &[0, 1, 2]).is_err());
        assert!(FpMatrix::from_row_major(f(3), 1, 2, &[0, 3]).is_err());
        let b = FpMatrix::zeros(f(5), 3, 2);
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn empty_shapes_are_legal() {
        let e = FpMatrix::zeros(f(3), 0, 4);
        assert_eq!(e.kernel().dim(), 4);
        assert_eq!(e.image().ambient_dim(), 0);
        let e2 = FpMatrix::zeros(f(3), 4, 0);
        assert_eq!(e2.kernel().dim(), 0);
        assert_eq!(e2.image().dim(), 0);
        assert_eq!(e2.mul(&FpMatrix::zeros(f(3), 0, 2)).unwrap(), FpMatrix::zeros(f(3), 4, 2));
    }
}

use std::fmt;

use super::{FpMatrix, FpVector, PrimeField};
use crate::error::{Error, Result};

/// A subspace of F_p^n held by its canonical basis: the nonzero rows of the
/// reduced row-echelon form, pivots strictly increasing. Two subspaces are
/// equal exactly when their bases are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: FpMatrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: FpMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: PrimeField, ambient: usize, vectors: &[FpVector]) -> Result<Self> {
        let m = FpMatrix::from_row_vectors(field, ambient, vectors)?;
        Ok(Self::from_rows_unchecked(&m))
    }

    pub(crate) fn from_rows_unchecked(m: &FpMatrix) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        let mut basis = FpMatrix::zeros(m.field(), pivots.len(), m.cols());
        for (i, &pc) in pivots.iter().enumerate() {
            for c in pc..m.cols() {
                basis.set(i, c, r.get(i, c));
            }
        }
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Canonical basis, one row per basis vector.
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<FpVector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.field().p(),
                right: other.field().p(),
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// Reduces `v` against the echelon basis; the remainder is zero iff
    /// `v` lies in the subspace.
    fn residual(&self, v: &FpVector) -> FpVector {
        let f = self.field();
        let mut r = v.clone();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let x = r.get(pc);
            if x != 0 {
                r.axpy(f.neg(x), &self.basis.row(i));
            }
        }
        r
    }

    pub fn contains_vector(&self, v: &FpVector) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(self.residual(v).is_zero())
    }

    /// Coordinates of `v` in the canonical basis, `None` if `v` is outside.
    pub fn coordinates(&self, v: &FpVector) -> Result<Option<FpVector>> {
        if !self.contains_vector(v)? {
            return Ok(None);
        }
        let entries: Vec<u8> = self.pivots.iter().map(|&pc| v.get(pc)).collect();
        Ok(Some(FpVector::from_raw(self.field(), entries)))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok(other
            .basis_vectors()
            .iter()
            .all(|v| self.residual(v).is_zero()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(Self::from_rows_unchecked(&stacked))
    }

    /// Intersection via the kernel of `[U; -V]^T`: a pair `(x, y)` with
    /// `xU = yV` gives the common vector `xU`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let f = self.field();
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(f, self.ambient));
        }
        let system = self.basis.vstack(&other.basis.scale(f.neg(1)))?.transpose();
        let relations = system.kernel();
        let vectors: Vec<FpVector> = relations
            .basis_vectors()
            .iter()
            .map(|rel| {
                let mut v = FpVector::zeros(f, self.ambient);
                for i in 0..a {
                    v.axpy(rel.get(i), &self.basis.row(i));
                }
                v
            })
            .collect();
        Subspace::span(f, self.ambient, &vectors)
    }

    /// Image of the subspace under `map` (a `rows x ambient` matrix).
    pub fn map(&self, map: &FpMatrix) -> Result<Subspace> {
        if map.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: map.cols(),
            });
        }
        Ok(map.mul(&self.basis.transpose())?.image())
    }

    /// Matrix whose columns are the basis vectors, i.e. the inclusion map
    /// into the ambient space.
    pub fn inclusion(&self) -> FpMatrix {
        self.basis.transpose()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {:?}^{}, basis {:?})",
            self.dim(),
            self.field(),
            self.ambient,
            self.basis.to_rows()
        )
    }
}

use std::fmt;

use super::PrimeField;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpVector {
    field: PrimeField,
    entries: Vec<u8>,
}

impl FpVector {
    pub fn zeros(field: PrimeField, len: usize) -> Self {
        FpVector {
            field,
            entries: vec![0; len],
        }
    }

    pub fn unit(field: PrimeField, len: usize, index: usize) -> Self {
        let mut v = Self::zeros(field, len);
        v.entries[index] = 1;
        v
    }

    /// Builds a vector from residues, rejecting anything outside `[0, p)`.
    pub fn new(field: PrimeField, entries: &[u32]) -> Result<Self> {
        let entries = entries
            .iter()
            .map(|&x| field.residue(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(FpVector { field, entries })
    }

    /// Builds a vector from arbitrary integers, reducing mod p.
    pub fn from_integers(field: PrimeField, entries: &[i64]) -> Self {
        FpVector {
            field,
            entries: entries.iter().map(|&x| field.from_i64(x)).collect(),
        }
    }

    pub(crate) fn from_raw(field: PrimeField, entries: Vec<u8>) -> Self {
        debug_assert!(entries.iter().all(|&x| (x as u32) < field.p()));
        FpVector { field, entries }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u8 {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: u8) {
        assert!((value as u32) < self.field.p());
        self.entries[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, x))
    }

    fn check(&self, other: &FpVector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FpVector) -> Result<FpVector> {
        self.check(other)?;
        let f = self.field;
        Ok(FpVector {
            field: f,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &FpVector) -> Result<FpVector> {
        self.check(other)?;
        let f = self.field;
        Ok(FpVector {
            field: f,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: u8) -> FpVector {
        let f = self.field;
        FpVector {
            field: f,
            entries: self.entries.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * other`, lengths must agree.
    pub fn axpy(&mut self, c: u8, other: &FpVector) {
        assert_eq!(self.len(), other.len());
        if c == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.entries.iter_mut().zip(&other.entries) {
            *a = f.add(*a, f.mul(c, b));
        }
    }

    pub fn dot(&self, other: &FpVector) -> Result<u8> {
        self.check(other)?;
        let f = self.field;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
    }

    pub fn concat(&self, other: &FpVector) -> FpVector {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        FpVector {
            field: self.field,
            entries,
        }
    }

    pub fn to_u32(&self) -> Vec<u32> {
        self.entries.iter().map(|&x| x as u32).collect()
    }
}

impl fmt::Debug for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.field, self.entries)
    }
}

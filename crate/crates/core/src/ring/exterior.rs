use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{FpVector, PrimeField};

/// Largest generator count an exterior model will enumerate.
pub const MAX_GENERATORS: usize = 20;

/// Exterior algebra over F_p on `m` degree-one generators. The degree-n
/// basis is the n-element generator subsets in lexicographic order.
///
/// With `unbounded` set, the model stands for the exterior algebra on
/// countably many generators, truncated to the first `m`.
#[derive(Clone, Debug)]
pub struct ExteriorRingModel {
    field: PrimeField,
    m: usize,
    unbounded: bool,
    subsets: Vec<Vec<u32>>,
    index: HashMap<u32, usize>,
}

impl PartialEq for ExteriorRingModel {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.m == other.m && self.unbounded == other.unbounded
    }
}

impl Eq for ExteriorRingModel {}

impl ExteriorRingModel {
    pub fn new(field: PrimeField, m: usize) -> Result<Self> {
        Self::build(field, m, false)
    }

    /// Truncation of the algebra on infinitely many generators.
    pub fn truncated_infinite(field: PrimeField, cap: usize) -> Result<Self> {
        Self::build(field, cap, true)
    }

    fn build(field: PrimeField, m: usize, unbounded: bool) -> Result<Self> {
        if m > MAX_GENERATORS {
            return Err(Error::OutOfRange {
                what: "exterior generator count",
                index: m,
                limit: MAX_GENERATORS,
            });
        }
        let subsets: Vec<Vec<u32>> = (0..=m).map(|degree| lex_subsets(m, degree)).collect();
        let mut index = HashMap::new();
        for list in &subsets {
            for (i, &mask) in list.iter().enumerate() {
                index.insert(mask, i);
            }
        }
        Ok(ExteriorRingModel {
            field,
            m,
            unbounded,
            subsets,
            index,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn generators(&self) -> usize {
        self.m
    }

    pub fn is_unbounded(&self) -> bool {
        self.unbounded
    }

    pub fn h_dim(&self, n: usize) -> usize {
        self.subsets.get(n).map_or(0, Vec::len)
    }

    /// Generator subset of basis element `i` in degree `n`, as a bit mask.
    pub fn monomial(&self, n: usize, i: usize) -> u32 {
        self.subsets[n][i]
    }

    pub fn monomial_index(&self, mask: u32) -> usize {
        self.index[&mask]
    }

    pub(crate) fn basis_product(&self, n1: usize, i: usize, n2: usize, j: usize) -> FpVector {
        let n = n1 + n2;
        let mut out = FpVector::zeros(self.field, self.h_dim(n));
        if n > self.m {
            return out;
        }
        let (a, b) = (self.subsets[n1][i], self.subsets[n2][j]);
        if a & b != 0 {
            return out;
        }
        out.set(self.index[&(a | b)], self.field.sign(merge_inversions(a, b)));
        out
    }

    pub fn basis_label(&self, n: usize, i: usize) -> String {
        if n == 0 {
            return "1".to_string();
        }
        let mask = self.subsets[n][i];
        (0..self.m)
            .filter(|g| mask >> g & 1 == 1)
            .map(|g| format!("g{}", g + 1))
            .collect::<Vec<_>>()
            .join("^")
    }
}

/// Number of pairs (x in a, y in b) with x > y: the transpositions needed to
/// sort the concatenated monomial.
fn merge_inversions(a: u32, b: u32) -> usize {
    let mut count = 0;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        count += (a >> y >> 1).count_ones() as usize;
    }
    count
}

fn lex_subsets(m: usize, k: usize) -> Vec<u32> {
    fn go(start: usize, m: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for g in start..=m - k {
            go(g + 1, m, k - 1, acc | 1 << g, out);
        }
    }
    let mut out = Vec::new();
    if k <= m {
        go(0, m, k, 0, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_are_binomial() {
        let r = ExteriorRingModel::new(PrimeField::new(3).unwrap(), 4).unwrap();
        let dims: Vec<usize> = (0..6).map(|n| r.h_dim(n)).collect();
        assert_eq!(dims, vec![1, 4, 6, 4, 1, 0]);
    }

    #[test]
    fn lexicographic_basis_order() {
        let r = ExteriorRingModel::new(PrimeField::new(2).unwrap(), 3).unwrap();
        let labels: Vec<String> = (0..3).map(|i| r.basis_label(2, i)).collect();
        assert_eq!(labels, vec!["g1^g2", "g1^g3", "g2^g3"]);
    }

    #[test]
    fn wedge_signs() {
        let f = PrimeField::new(5).unwrap();
        let r = ExteriorRingModel::new(f, 3).unwrap();
        // g2 * g1 = -g1^g2
        let v = r.basis_product(1, 1, 1, 0);
        assert_eq!(v.entries(), &[4, 0, 0]);
        // g1 * g2^g3 = +g1^g2^g3, g2 * g1^g3 = -g1^g2^g3
        assert_eq!(r.basis_product(1, 0, 2, 2).entries(), &[1]);
        assert_eq!(r.basis_product(1, 1, 2, 1).entries(), &[4]);
        assert!(r.basis_product(1, 0, 1, 0).is_zero());
    }

    #[test]
    fn inversion_count() {
        assert_eq!(merge_inversions(0b100, 0b011), 2);
        assert_eq!(merge_inversions(0b001, 0b110), 0);
        assert_eq!(merge_inversions(0b110, 0b001), 2);
    }
}

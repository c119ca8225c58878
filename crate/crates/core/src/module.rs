//! Finite-dimensional F_p[G]-modules for G cyclic of order p.
//!
//! A module is a vector space with the matrix of a chosen generator σ. Since
//! σ^p = 1 in characteristic p, τ = σ - 1 is nilpotent with τ^p = 0, and the
//! indecomposable modules are the Jordan blocks of τ of length 1..=p. A module
//! is free exactly when every block has length p and trivial exactly when
//! every block has length 1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, FpVector, PrimeField, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicGroupModule {
    sigma: FpMatrix,
}

/// Multiset of Jordan block lengths of σ - 1, longest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub p: u32,
    pub lengths: Vec<usize>,
}

impl BlockDecomposition {
    pub fn dim(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn block_count(&self) -> usize {
        self.lengths.len()
    }

    /// Number of blocks of each length.
    pub fn counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &l in &self.lengths {
            *out.entry(l).or_insert(0) += 1;
        }
        out
    }

    pub fn is_free(&self) -> bool {
        self.lengths.iter().all(|&l| l == self.p as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.lengths.iter().all(|&l| l == 1)
    }
}

impl CyclicGroupModule {
    /// Wraps the matrix of σ, rejecting anything with σ^p ≠ 1.
    pub fn new(sigma: FpMatrix) -> Result<Self> {
        if !sigma.is_square() {
            return Err(Error::InvalidModule(format!(
                "sigma must be square, got {}x{}",
                sigma.rows(),
                sigma.cols()
            )));
        }
        let p = sigma.field().p();
        if !sigma.pow(p)?.is_identity() {
            return Err(Error::InvalidModule(format!("sigma^{p} is not the identity")));
        }
        if sigma.rank() != sigma.rows() {
            return Err(Error::InvalidModule("sigma is not invertible".into()));
        }
        Ok(CyclicGroupModule { sigma })
    }

    pub fn trivial(field: PrimeField, dim: usize) -> Self {
        CyclicGroupModule {
            sigma: FpMatrix::identity(field, dim),
        }
    }

    /// F_p[G] itself: σ cyclically permutes p basis vectors.
    pub fn regular(field: PrimeField) -> Self {
        let p = field.p() as usize;
        let mut sigma = FpMatrix::zeros(field, p, p);
        for i in 0..p {
            sigma.set((i + 1) % p, i, 1);
        }
        CyclicGroupModule { sigma }
    }

    /// Indecomposable module of dimension `len`: σ = 1 + J with J the
    /// nilpotent shift `e_i -> e_{i+1}`.
    pub fn jordan_block(field: PrimeField, len: usize) -> Result<Self> {
        if len == 0 || len > field.p() as usize {
            return Err(Error::InvalidModule(format!(
                "block length {len} outside 1..={}",
                field.p()
            )));
        }
        let mut sigma = FpMatrix::identity(field, len);
        for i in 0..len - 1 {
            sigma.set(i + 1, i, 1);
        }
        Ok(CyclicGroupModule { sigma })
    }

    pub fn from_blocks(field: PrimeField, lengths: &[usize]) -> Result<Self> {
        let mut sigma = FpMatrix::zeros(field, 0, 0);
        for &l in lengths {
            sigma = sigma.direct_sum(&Self::jordan_block(field, l)?.sigma)?;
        }
        Ok(CyclicGroupModule { sigma })
    }

    pub fn direct_sum(&self, other: &CyclicGroupModule) -> Result<Self> {
        Ok(CyclicGroupModule {
            sigma: self.sigma.direct_sum(&other.sigma)?,
        })
    }

    /// Same module in a new basis: σ' = P σ P^{-1}.
    pub fn conjugate(&self, change: &FpMatrix) -> Result<Self> {
        let inv = change
            .inverse()
            .ok_or_else(|| Error::InvalidModule("change of basis is singular".into()))?;
        Ok(CyclicGroupModule {
            sigma: change.mul(&self.sigma)?.mul(&inv)?,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.sigma.field()
    }

    pub fn dim(&self) -> usize {
        self.sigma.rows()
    }

    pub fn sigma(&self) -> &FpMatrix {
        &self.sigma
    }

    /// τ = σ - 1.
    pub fn tau(&self) -> FpMatrix {
        self.sigma
            .sub(&FpMatrix::identity(self.field(), self.dim()))
            .expect("square")
    }

    /// The norm element (σ-1)^{p-1}, which equals 1 + σ + ... + σ^{p-1}.
    pub fn norm_operator(&self) -> FpMatrix {
        let p = self.field().p();
        let n = self.tau().pow(p - 1).expect("square");
        debug_assert_eq!(n, self.orbit_sum(), "(σ-1)^(p-1) != Σ σ^i");
        n
    }

    fn orbit_sum(&self) -> FpMatrix {
        let f = self.field();
        let mut acc = FpMatrix::zeros(f, self.dim(), self.dim());
        let mut power = FpMatrix::identity(f, self.dim());
        for _ in 0..f.p() {
            acc = acc.add(&power).expect("square");
            power = power.mul(&self.sigma).expect("square");
        }
        acc
    }

    /// M^G, the kernel of σ - 1.
    pub fn fixed_points(&self) -> Subspace {
        self.tau().kernel()
    }

    /// N·M = (σ-1)^{p-1} M.
    pub fn norm_image(&self) -> Subspace {
        self.norm_operator().image()
    }

    /// Free iff M^G = (σ-1)^{p-1} M. The zero module counts as free.
    pub fn is_free(&self) -> bool {
        self.fixed_points() == self.norm_image()
    }

    /// Trivial iff σ acts as the identity. The zero module counts as trivial.
    pub fn is_trivial(&self) -> bool {
        self.sigma.is_identity()
    }

    /// dim H^2(G, M) = dim M^G - dim N·M.
    pub fn h2_dim(&self) -> usize {
        self.fixed_points().dim() - self.norm_image().dim()
    }

    /// Jordan decomposition from the ranks r_i of τ^i: the number of blocks
    /// of length at least i+1 is r_i - r_{i+1}.
    pub fn decompose(&self) -> BlockDecomposition {
        let p = self.field().p() as usize;
        let tau = self.tau();
        let mut ranks = vec![self.dim()];
        let mut power = FpMatrix::identity(self.field(), self.dim());
        for _ in 1..=p + 1 {
            power = power.mul(&tau).expect("square");
            ranks.push(power.rank());
        }
        let at_least = |i: usize| ranks[i - 1] - ranks[i];
        let mut lengths = Vec::new();
        for len in (1..=p).rev() {
            let exact = at_least(len) - at_least(len + 1);
            lengths.extend(std::iter::repeat_n(len, exact));
        }
        BlockDecomposition {
            p: p as u32,
            lengths,
        }
    }

    /// l(γ): dimension of the cyclic submodule generated by γ.
    pub fn cyclic_length(&self, gamma: &FpVector) -> Result<usize> {
        if gamma.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: gamma.len(),
            });
        }
        let span = self.cyclic_submodule(gamma);
        let l = span.dim();
        debug_assert!(self.check_cyclic_length(&span, l));
        Ok(l)
    }

    fn cyclic_submodule(&self, gamma: &FpVector) -> Subspace {
        let mut orbit = vec![gamma.clone()];
        for _ in 1..self.field().p() {
            let next = self.sigma.mul_vec(orbit.last().unwrap()).expect("length checked");
            orbit.push(next);
        }
        Subspace::span(self.field(), self.dim(), &orbit).expect("length checked")
    }

    /// (σ-1)^{l-1}<γ> = <γ>^G ≠ 0 and (σ-1)^l <γ> = 0.
    fn check_cyclic_length(&self, span: &Subspace, l: usize) -> bool {
        if l == 0 {
            return true;
        }
        let tau = self.tau();
        let top = tau.pow(l as u32 - 1).unwrap();
        let invariants = span.intersect(&self.fixed_points()).unwrap();
        span.map(&top).unwrap() == invariants
            && !invariants.is_zero()
            && span.map(&top.mul(&tau).unwrap()).unwrap().is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn trivial_module() {
        let m = CyclicGroupModule::trivial(f(3), 3);
        assert!(m.fixed_points().is_full());
        assert!(m.norm_image().is_zero());
        assert!(m.is_trivial());
        assert!(!m.is_free());
        assert_eq!(m.decompose().lengths, vec![1, 1, 1]);
        let one = CyclicGroupModule::trivial(f(3), 1);
        assert!(!one.is_free());
        assert_eq!(one.h2_dim(), 1);
    }

    #[test]
    fn regular_representation() {
        for p in [2, 3, 5, 7] {
            let m = CyclicGroupModule::regular(f(p));
            let fixed = m.fixed_points();
            assert_eq!(fixed.dim(), 1);
            let ones = FpVector::new(f(p), &vec![1; p as usize]).unwrap();
            assert!(fixed.contains_vector(&ones).unwrap());
            assert_eq!(m.norm_image(), fixed);
            assert!(m.is_free());
            assert!(!m.is_trivial());
            assert_eq!(m.h2_dim(), 0);
            assert_eq!(m.decompose().lengths, vec![p as usize]);
            let gen = FpVector::unit(f(p), p as usize, 0);
            assert_eq!(m.cyclic_length(&gen).unwrap(), p as usize);
        }
    }

    #[test]
    fn short_blocks_have_zero_norm() {
        let k = f(5);
        for l in 1..5 {
            let m = CyclicGroupModule::jordan_block(k, l).unwrap();
            assert!(m.norm_image().is_zero(), "block {l}");
            assert_eq!(m.h2_dim(), 1);
        }
        assert_eq!(CyclicGroupModule::jordan_block(k, 5).unwrap().h2_dim(), 0);
    }

    #[test]
    fn zero_module_is_free_and_trivial() {
        let m = CyclicGroupModule::trivial(f(3), 0);
        assert!(m.is_free());
        assert!(m.is_trivial());
        assert_eq!(m.decompose().lengths, Vec::<usize>::new());
    }

    #[test]
    fn cyclic_lengths() {
        let k = f(3);
        let m = CyclicGroupModule::from_blocks(k, &[3, 1]).unwrap();
        assert_eq!(m.cyclic_length(&FpVector::zeros(k, 4)).unwrap(), 0);
        assert_eq!(m.cyclic_length(&FpVector::unit(k, 4, 3)).unwrap(), 1);
        assert_eq!(m.cyclic_length(&FpVector::unit(k, 4, 2)).unwrap(), 1);
        assert_eq!(m.cyclic_length(&FpVector::unit(k, 4, 1)).unwrap(), 2);
        assert_eq!(m.cyclic_length(&FpVector::unit(k, 4, 0)).unwrap(), 3);
        assert!(m.cyclic_length(&FpVector::zeros(k, 3)).is_err());
    }

    #[test]
    fn rejects_sigma_of_wrong_order() {
        let k = f(3);
        // order 2 element over F_3
        let s = FpMatrix::from_rows(k, 2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(CyclicGroupModule::new(s), Err(Error::InvalidModule(_))));
        let rect = FpMatrix::zeros(k, 2, 3);
        assert!(CyclicGroupModule::new(rect).is_err());
        assert!(CyclicGroupModule::jordan_block(k, 4).is_err());
        assert!(CyclicGroupModule::jordan_block(k, 0).is_err());
    }

    #[test]
    fn decomposition_survives_conjugation() {
        let k = f(3);
        let m = CyclicGroupModule::from_blocks(k, &[3, 2, 2, 1]).unwrap();
        let mut p = FpMatrix::identity(k, 8);
        for i in 0..7 {
            p.set(i, i + 1, 2);
        }
        let c = m.conjugate(&p).unwrap();
        assert_ne!(c.sigma(), m.sigma());
        assert_eq!(c.decompose(), m.decompose());
        assert_eq!(c.decompose().lengths, vec![3, 2, 2, 1]);
        assert_eq!(c.h2_dim(), 3);
    }
}

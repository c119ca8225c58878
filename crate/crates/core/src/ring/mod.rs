//! Graded-commutative cohomology ring models over F_p.
//!
//! A model fixes a basis in every degree; classes are coordinate vectors in
//! that basis and all the subobjects used by the criteria (annihilators,
//! cup images) come back as canonical [`Subspace`]s of some H^n.

mod exterior;
mod sum;
mod table;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use exterior::{ExteriorRingModel, MAX_GENERATORS};
pub use sum::DirectSumRingModel;
pub use table::{ProductTable, TableRingModel};

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, FpVector, PrimeField, Subspace};

/// A homogeneous class: a degree and coordinates in the model's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    degree: usize,
    coords: FpVector,
}

impl RingElement {
    pub fn new(degree: usize, coords: FpVector) -> Self {
        RingElement { degree, coords }
    }

    pub fn zero(field: PrimeField, degree: usize, dim: usize) -> Self {
        RingElement::new(degree, FpVector::zeros(field, dim))
    }

    pub(crate) fn basis(field: PrimeField, degree: usize, dim: usize, index: usize) -> Self {
        RingElement::new(degree, FpVector::unit(field, dim, index))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &FpVector {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        if self.degree != other.degree {
            return Err(Error::ModelMismatch(format!(
                "cannot add classes of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(RingElement::new(self.degree, self.coords.add(&other.coords)?))
    }

    pub fn scale(&self, c: u8) -> RingElement {
        RingElement::new(self.degree, self.coords.scale(c))
    }
}

/// Cohomological dimension: a degree, or unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Finite(usize),
    Unbounded,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(n) => write!(f, "{n}"),
            Bound::Unbounded => write!(f, "unbounded"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingModel {
    Exterior(ExteriorRingModel),
    DirectSum(DirectSumRingModel),
    Table(TableRingModel),
}

impl From<ExteriorRingModel> for RingModel {
    fn from(m: ExteriorRingModel) -> Self {
        RingModel::Exterior(m)
    }
}

impl From<DirectSumRingModel> for RingModel {
    fn from(m: DirectSumRingModel) -> Self {
        RingModel::DirectSum(m)
    }
}

impl From<TableRingModel> for RingModel {
    fn from(m: TableRingModel) -> Self {
        RingModel::Table(m)
    }
}

impl RingModel {
    pub fn exterior(field: PrimeField, m: usize) -> Result<Self> {
        Ok(ExteriorRingModel::new(field, m)?.into())
    }

    pub fn truncated_infinite(field: PrimeField, cap: usize) -> Result<Self> {
        Ok(ExteriorRingModel::truncated_infinite(field, cap)?.into())
    }

    pub fn direct_sum(left: RingModel, right: RingModel) -> Result<Self> {
        Ok(DirectSumRingModel::new(left, right)?.into())
    }

    pub fn field(&self) -> PrimeField {
        match self {
            RingModel::Exterior(r) => r.field(),
            RingModel::DirectSum(r) => r.field(),
            RingModel::Table(r) => r.field(),
        }
    }

    pub fn h_dim(&self, n: usize) -> usize {
        match self {
            RingModel::Exterior(r) => r.h_dim(n),
            RingModel::DirectSum(r) => r.h_dim(n),
            RingModel::Table(r) => r.h_dim(n),
        }
    }

    /// Whether the model is a truncation of an infinitely generated algebra.
    pub fn is_unbounded(&self) -> bool {
        match self {
            RingModel::Exterior(r) => r.is_unbounded(),
            RingModel::DirectSum(r) => r.left().is_unbounded() || r.right().is_unbounded(),
            RingModel::Table(_) => false,
        }
    }

    /// Highest degree with a nonzero group in the model as stored.
    pub fn top_degree(&self) -> usize {
        match self {
            RingModel::Exterior(r) => r.generators(),
            RingModel::DirectSum(r) => r.left().top_degree().max(r.right().top_degree()),
            RingModel::Table(r) => (0..=r.top_degree())
                .rev()
                .find(|&n| r.h_dim(n) > 0)
                .unwrap_or(0),
        }
    }

    pub fn cohomological_dimension(&self) -> Bound {
        if self.is_unbounded() {
            Bound::Unbounded
        } else {
            Bound::Finite(self.top_degree())
        }
    }

    /// Short structural description, e.g. `direct_sum(exterior(2), exterior(4))`.
    pub fn describe(&self) -> String {
        match self {
            RingModel::Exterior(r) if r.is_unbounded() => {
                format!("truncated_infinite({})", r.generators())
            }
            RingModel::Exterior(r) => format!("exterior({})", r.generators()),
            RingModel::DirectSum(r) => {
                format!("direct_sum({}, {})", r.left().describe(), r.right().describe())
            }
            RingModel::Table(r) => format!("table({})", r.name()),
        }
    }

    pub fn basis_label(&self, n: usize, i: usize) -> String {
        match self {
            RingModel::Exterior(r) => r.basis_label(n, i),
            RingModel::DirectSum(r) => r.basis_label(n, i),
            RingModel::Table(r) => r.basis_label(n, i),
        }
    }

    pub fn basis_labels(&self, n: usize) -> Vec<String> {
        (0..self.h_dim(n)).map(|i| self.basis_label(n, i)).collect()
    }

    /// `e_i ∪ e_j` for basis elements of degrees `n1` and `n2`.
    pub(crate) fn basis_product(&self, n1: usize, i: usize, n2: usize, j: usize) -> FpVector {
        match self {
            RingModel::Exterior(r) => r.basis_product(n1, i, n2, j),
            RingModel::DirectSum(r) => r.basis_product(n1, i, n2, j),
            RingModel::Table(r) => r.basis_product(n1, i, n2, j),
        }
    }

    pub fn element(&self, degree: usize, coords: FpVector) -> Result<RingElement> {
        let x = RingElement::new(degree, coords);
        self.check(&x)?;
        Ok(x)
    }

    pub fn element_from_u32(&self, degree: usize, coords: &[u32]) -> Result<RingElement> {
        self.element(degree, FpVector::new(self.field(), coords)?)
    }

    pub fn zero(&self, degree: usize) -> RingElement {
        RingElement::zero(self.field(), degree, self.h_dim(degree))
    }

    pub fn one(&self) -> RingElement {
        RingElement::basis(self.field(), 0, 1, 0)
    }

    /// The degree-one basis class with the given index.
    pub fn element_from_generator(&self, index: usize) -> Result<RingElement> {
        let count = self.h_dim(1);
        if index >= count {
            return Err(Error::OutOfRange {
                what: "generator",
                index,
                limit: count,
            });
        }
        Ok(RingElement::basis(self.field(), 1, count, index))
    }

    pub fn check(&self, x: &RingElement) -> Result<()> {
        if x.coords.field() != self.field() {
            return Err(Error::FieldMismatch {
                left: self.field().p(),
                right: x.coords.field().p(),
            });
        }
        let dim = self.h_dim(x.degree);
        if x.coords.len() != dim {
            return Err(Error::ModelMismatch(format!(
                "degree-{} class has {} coordinates, the model has dimension {}",
                x.degree,
                x.coords.len(),
                dim
            )));
        }
        Ok(())
    }

    pub fn cup(&self, x: &RingElement, y: &RingElement) -> Result<RingElement> {
        self.check(x)?;
        self.check(y)?;
        let f = self.field();
        let n = x.degree + y.degree;
        let mut out = FpVector::zeros(f, self.h_dim(n));
        for (i, xi) in x.coords.support() {
            for (j, yj) in y.coords.support() {
                out.axpy(f.mul(xi, yj), &self.basis_product(x.degree, i, y.degree, j));
            }
        }
        Ok(RingElement::new(n, out))
    }

    /// Matrix of `x ↦ a ∪ x` from H^n to H^{n + deg a}.
    pub fn cup_matrix(&self, a: &RingElement, n: usize) -> Result<FpMatrix> {
        self.check(a)?;
        let f = self.field();
        let d = a.degree;
        let target = self.h_dim(n + d);
        let columns: Vec<FpVector> = (0..self.h_dim(n))
            .map(|j| {
                let mut col = FpVector::zeros(f, target);
                for (i, ai) in a.coords.support() {
                    col.axpy(ai, &self.basis_product(d, i, n, j));
                }
                col
            })
            .collect();
        FpMatrix::from_columns(f, target, &columns)
    }

    /// `a ∪ H^{n - deg a}` inside H^n; zero when `n < deg a`.
    pub fn cup_image(&self, a: &RingElement, n: usize) -> Result<Subspace> {
        self.check(a)?;
        if n < a.degree {
            return Ok(Subspace::zero(self.field(), self.h_dim(n)));
        }
        Ok(self.cup_matrix(a, n - a.degree)?.image())
    }

    /// `{x in H^n : a ∪ x = 0}`.
    pub fn annihilator(&self, a: &RingElement, n: usize) -> Result<Subspace> {
        Ok(self.cup_matrix(a, n)?.kernel())
    }

    /// Components of a positive-degree class of a direct-sum model.
    pub fn restriction_components(&self, x: &RingElement) -> Result<(RingElement, RingElement)> {
        match self {
            RingModel::DirectSum(r) => r.components(x),
            _ => Err(Error::ModelMismatch(
                "restriction components exist only for direct-sum models".into(),
            )),
        }
    }

    /// First basis pair violating `x ∪ y = (-1)^{|x||y|} y ∪ x` with total
    /// degree at most `max_degree`.
    pub fn graded_commutativity_failure(&self, max_degree: usize) -> Option<String> {
        let f = self.field();
        for n1 in 0..=max_degree {
            for n2 in 0..=max_degree - n1 {
                let sign = f.sign(n1 * n2);
                for i in 0..self.h_dim(n1) {
                    for j in 0..self.h_dim(n2) {
                        let xy = self.basis_product(n1, i, n2, j);
                        let yx = self.basis_product(n2, j, n1, i).scale(sign);
                        if xy != yx {
                            return Some(format!(
                                "{} * {} is not graded-commutative",
                                self.basis_label(n1, i),
                                self.basis_label(n2, j)
                            ));
                        }
                    }
                }
            }
        }
        None
    }

    /// First basis triple with `(x ∪ y) ∪ z ≠ x ∪ (y ∪ z)` and total degree at
    /// most `max_degree`.
    pub fn associativity_failure(&self, max_degree: usize) -> Option<String> {
        let f = self.field();
        for n1 in 0..=max_degree {
            for n2 in 0..=max_degree - n1 {
                for n3 in 0..=max_degree - n1 - n2 {
                    for i in 0..self.h_dim(n1) {
                        let x = RingElement::basis(f, n1, self.h_dim(n1), i);
                        for j in 0..self.h_dim(n2) {
                            let y = RingElement::basis(f, n2, self.h_dim(n2), j);
                            let xy = self.cup(&x, &y).ok()?;
                            for k in 0..self.h_dim(n3) {
                                let z = RingElement::basis(f, n3, self.h_dim(n3), k);
                                let left = self.cup(&xy, &z).ok()?;
                                let right = self.cup(&x, &self.cup(&y, &z).ok()?).ok()?;
                                if left != right {
                                    return Some(format!(
                                        "({} * {}) * {} differs from {} * ({} * {})",
                                        self.basis_label(n1, i),
                                        self.basis_label(n2, j),
                                        self.basis_label(n3, k),
                                        self.basis_label(n1, i),
                                        self.basis_label(n2, j),
                                        self.basis_label(n3, k)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Matrix on H^n of the ring automorphism sending generator `g` to
    /// generator `perm[g]`. Defined for exterior models and for direct sums
    /// of them when `perm` keeps each factor's generators in that factor.
    pub fn generator_permutation(&self, perm: &[usize], n: usize) -> Result<FpMatrix> {
        let f = self.field();
        let count = self.h_dim(1);
        let mut seen = vec![false; count];
        if perm.len() != count || perm.iter().any(|&g| g >= count || std::mem::replace(&mut seen[g], true)) {
            return Err(Error::Precondition(format!(
                "not a permutation of the {count} generators"
            )));
        }
        match self {
            RingModel::Exterior(r) => {
                let dim = r.h_dim(n);
                let mut m = FpMatrix::zeros(f, dim, dim);
                for i in 0..dim {
                    let mask = r.monomial(n, i);
                    let images: Vec<usize> = (0..r.generators())
                        .filter(|g| mask >> g & 1 == 1)
                        .map(|g| perm[g])
                        .collect();
                    let inversions = images
                        .iter()
                        .enumerate()
                        .map(|(s, &x)| images[s + 1..].iter().filter(|&&y| y < x).count())
                        .sum();
                    let target = images.iter().fold(0u32, |acc, &g| acc | 1 << g);
                    m.set(r.monomial_index(target), i, f.sign(inversions));
                }
                Ok(m)
            }
            RingModel::DirectSum(r) => {
                let split = r.left().h_dim(1);
                if perm[..split].iter().any(|&g| g >= split) {
                    return Err(Error::Precondition(
                        "permutation mixes the generators of the two factors".into(),
                    ));
                }
                if n == 0 {
                    return Ok(FpMatrix::identity(f, 1));
                }
                let left: Vec<usize> = perm[..split].to_vec();
                let right: Vec<usize> = perm[split..].iter().map(|&g| g - split).collect();
                r.left()
                    .generator_permutation(&left, n)?
                    .direct_sum(&r.right().generator_permutation(&right, n)?)
            }
            RingModel::Table(_) => Err(Error::ModelMismatch(
                "generator permutations are not defined for tabulated models".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn h_dim_examples() {
        let r = RingModel::exterior(f(3), 4).unwrap();
        assert_eq!(r.h_dim(2), 6);
        assert_eq!(r.h_dim(0), 1);
        let s = RingModel::direct_sum(
            RingModel::exterior(f(3), 1).unwrap(),
            RingModel::exterior(f(3), 2).unwrap(),
        )
        .unwrap();
        assert_eq!(s.h_dim(0), 1);
        assert_eq!(s.h_dim(1), 3);
        assert_eq!(s.h_dim(2), 1);
        assert_eq!(s.h_dim(3), 0);
    }

    #[test]
    fn generator_products() {
        for p in [2, 3, 5] {
            let r = RingModel::exterior(f(p), 3).unwrap();
            let g1 = r.element_from_generator(0).unwrap();
            let g2 = r.element_from_generator(1).unwrap();
            assert_eq!(r.cup(&g1, &g2).unwrap().coords().entries(), &[1, 0, 0]);
            assert!(r.cup(&g1, &g1).unwrap().is_zero());
        }
    }

    #[test]
    fn cross_products_vanish_in_sums() {
        let s = RingModel::direct_sum(
            RingModel::exterior(f(3), 2).unwrap(),
            RingModel::exterior(f(3), 2).unwrap(),
        )
        .unwrap();
        let x = s.element_from_u32(1, &[1, 2, 0, 0]).unwrap();
        let y = s.element_from_u32(1, &[0, 0, 2, 1]).unwrap();
        assert!(s.cup(&x, &y).unwrap().is_zero());
        let (l, r) = s.restriction_components(&x).unwrap();
        assert!(r.is_zero());
        assert_eq!(l.coords().entries(), &[1, 2]);
        assert!(matches!(
            s.restriction_components(&s.one()),
            Err(Error::UnsupportedDegree(0))
        ));
    }

    #[test]
    fn cup_image_and_annihilator_of_a_generator() {
        let r = RingModel::exterior(f(2), 3).unwrap();
        let g1 = r.element_from_generator(0).unwrap();
        let img = r.cup_image(&g1, 2).unwrap();
        assert_eq!(img.dim(), 2);
        assert_eq!(img, r.annihilator(&g1, 2).unwrap());
        assert!(r.cup_image(&r.zero(1), 2).unwrap().is_zero());
        assert!(r.annihilator(&r.zero(1), 2).unwrap().is_full());
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let r = RingModel::exterior(f(3), 2).unwrap();
        let bad = RingElement::new(1, FpVector::zeros(f(3), 5));
        assert!(matches!(r.cup(&bad, &bad), Err(Error::ModelMismatch(_))));
    }

    #[test]
    fn cohomological_dimensions() {
        let s = RingModel::direct_sum(
            RingModel::exterior(f(2), 2).unwrap(),
            RingModel::exterior(f(2), 5).unwrap(),
        )
        .unwrap();
        assert_eq!(s.cohomological_dimension(), Bound::Finite(5));
        assert_eq!(
            RingModel::truncated_infinite(f(3), 6).unwrap().cohomological_dimension(),
            Bound::Unbounded
        );
    }

    #[test]
    fn models_are_graded_commutative_and_associative() {
        for p in [2, 3, 5] {
            let s = RingModel::direct_sum(
                RingModel::exterior(f(p), 2).unwrap(),
                RingModel::exterior(f(p), 3).unwrap(),
            )
            .unwrap();
            assert_eq!(s.graded_commutativity_failure(5), None);
            assert_eq!(s.associativity_failure(5), None);
        }
    }

    #[test]
    fn permutation_is_a_ring_map() {
        let r = RingModel::exterior(f(3), 4).unwrap();
        let perm = [2, 0, 3, 1];
        let g: Vec<RingElement> = (0..4).map(|i| r.element_from_generator(i).unwrap()).collect();
        let phi1 = r.generator_permutation(&perm, 1).unwrap();
        let phi2 = r.generator_permutation(&perm, 2).unwrap();
        for x in &g {
            for y in &g {
                let lhs = phi2.mul_vec(r.cup(x, y).unwrap().coords()).unwrap();
                let px = r.element(1, phi1.mul_vec(x.coords()).unwrap()).unwrap();
                let py = r.element(1, phi1.mul_vec(y.coords()).unwrap()).unwrap();
                assert_eq!(&lhs, r.cup(&px, &py).unwrap().coords());
            }
        }
    }

    #[test]
    fn table_rejects_noncommutative_products() {
        let k = f(3);
        let mut products = std::collections::BTreeMap::new();
        // e1 * e1 = e2 is forbidden at odd p: it must equal its own negative.
        products.insert((1, 1), vec![vec![FpVector::new(k, &[1]).unwrap()]]);
        let t = TableRingModel::new(k, "bad", vec![1, 1, 1], products);
        assert!(matches!(t, Err(Error::InvalidTable(_))));
    }
}

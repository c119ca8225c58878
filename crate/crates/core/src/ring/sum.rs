use super::{RingElement, RingModel};
use crate::error::{Error, Result};
use crate::linalg::{FpVector, PrimeField};

/// Cohomology of a free pro-p product: in positive degrees the direct sum of
/// the two factors, with products across factors vanishing. Degree 0 is a
/// single shared line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSumRingModel {
    left: Box<RingModel>,
    right: Box<RingModel>,
}

impl DirectSumRingModel {
    pub fn new(left: RingModel, right: RingModel) -> Result<Self> {
        if left.field() != right.field() {
            return Err(Error::FieldMismatch {
                left: left.field().p(),
                right: right.field().p(),
            });
        }
        Ok(DirectSumRingModel {
            left: Box::new(left),
            right: Box::new(right),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.left.field()
    }

    pub fn left(&self) -> &RingModel {
        &self.left
    }

    pub fn right(&self) -> &RingModel {
        &self.right
    }

    pub fn h_dim(&self, n: usize) -> usize {
        if n == 0 {
            1
        } else {
            self.left.h_dim(n) + self.right.h_dim(n)
        }
    }

    pub fn left_generator(&self, index: usize) -> Result<RingElement> {
        let count = self.left.h_dim(1);
        if index >= count {
            return Err(Error::OutOfRange {
                what: "left generator",
                index,
                limit: count,
            });
        }
        Ok(RingElement::basis(self.field(), 1, self.h_dim(1), index))
    }

    pub fn right_generator(&self, index: usize) -> Result<RingElement> {
        let count = self.right.h_dim(1);
        if index >= count {
            return Err(Error::OutOfRange {
                what: "right generator",
                index,
                limit: count,
            });
        }
        let offset = self.left.h_dim(1);
        Ok(RingElement::basis(self.field(), 1, self.h_dim(1), offset + index))
    }

    /// Splits a positive-degree class into its left and right components.
    pub fn components(&self, x: &RingElement) -> Result<(RingElement, RingElement)> {
        let n = x.degree();
        if n == 0 {
            return Err(Error::UnsupportedDegree(0));
        }
        if x.coords().len() != self.h_dim(n) {
            return Err(Error::ModelMismatch(format!(
                "element of length {} in a degree with dimension {}",
                x.coords().len(),
                self.h_dim(n)
            )));
        }
        let split = self.left.h_dim(n);
        let e = x.coords().entries();
        let left = FpVector::from_raw(self.field(), e[..split].to_vec());
        let right = FpVector::from_raw(self.field(), e[split..].to_vec());
        Ok((RingElement::new(n, left), RingElement::new(n, right)))
    }

    /// Inverse of [`components`](Self::components).
    pub fn assemble(&self, left: &RingElement, right: &RingElement) -> Result<RingElement> {
        let n = left.degree();
        if n == 0 || right.degree() != n {
            return Err(Error::UnsupportedDegree(n));
        }
        if left.coords().len() != self.left.h_dim(n) || right.coords().len() != self.right.h_dim(n) {
            return Err(Error::ModelMismatch("component lengths do not match the factors".into()));
        }
        Ok(RingElement::new(n, left.coords().concat(right.coords())))
    }

    pub(crate) fn basis_product(&self, n1: usize, i: usize, n2: usize, j: usize) -> FpVector {
        let n = n1 + n2;
        let f = self.field();
        if n1 == 0 {
            return FpVector::unit(f, self.h_dim(n), j);
        }
        if n2 == 0 {
            return FpVector::unit(f, self.h_dim(n), i);
        }
        let (l1, l2) = (self.left.h_dim(n1), self.left.h_dim(n2));
        let (ldim, rdim) = (self.left.h_dim(n), self.right.h_dim(n));
        match (i < l1, j < l2) {
            (true, true) => self
                .left
                .basis_product(n1, i, n2, j)
                .concat(&FpVector::zeros(f, rdim)),
            (false, false) => FpVector::zeros(f, ldim)
                .concat(&self.right.basis_product(n1, i - l1, n2, j - l2)),
            _ => FpVector::zeros(f, ldim + rdim),
        }
    }

    pub fn basis_label(&self, n: usize, i: usize) -> String {
        if n == 0 {
            return "1".to_string();
        }
        let split = self.left.h_dim(n);
        if i < split {
            format!("L:{}", self.left.basis_label(n, i))
        } else {
            format!("R:{}", self.right.basis_label(n, i - split))
        }
    }
}

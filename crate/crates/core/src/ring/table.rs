use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{FpVector, PrimeField};

/// Products of basis elements in degrees `(d1, d2)`: `table[i][j]` is the
/// coordinate vector of `e_i ∪ e_j` in degree `d1 + d2`.
pub type ProductTable = Vec<Vec<FpVector>>;

/// A graded ring given by explicit per-degree dimensions and product tables.
///
/// Degree 0 is one-dimensional and its basis element is the unit. Products
/// of positive degrees not present in the table are zero, as is everything
/// above the top degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRingModel {
    field: PrimeField,
    name: String,
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    products: BTreeMap<(usize, usize), ProductTable>,
}

impl TableRingModel {
    /// `dims[n]` is dim H^n for `n` up to the top degree; `dims[0]` must be 1.
    /// The table is checked for shape, graded commutativity and associativity.
    pub fn new(
        field: PrimeField,
        name: impl Into<String>,
        dims: Vec<usize>,
        products: BTreeMap<(usize, usize), ProductTable>,
    ) -> Result<Self> {
        if dims.first() != Some(&1) {
            return Err(Error::InvalidTable("degree 0 must be one-dimensional".into()));
        }
        let labels = dims
            .iter()
            .enumerate()
            .map(|(n, &d)| (0..d).map(|i| format!("e{n}.{}", i + 1)).collect())
            .collect();
        let model = TableRingModel {
            field,
            name: name.into(),
            dims,
            labels,
            products,
        };
        model.check_shapes()?;
        let ring = super::RingModel::Table(model.clone());
        let top = model.top_degree();
        if let Some(msg) = ring.graded_commutativity_failure(top) {
            return Err(Error::InvalidTable(msg));
        }
        if let Some(msg) = ring.associativity_failure(top) {
            return Err(Error::InvalidTable(msg));
        }
        Ok(model)
    }

    /// Replaces the default `e<n>.<i>` basis labels.
    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        let shapes_match = labels.len() == self.dims.len()
            && labels.iter().zip(&self.dims).all(|(l, &d)| l.len() == d);
        if !shapes_match {
            return Err(Error::InvalidTable("label shape does not match dimensions".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    fn check_shapes(&self) -> Result<()> {
        for (&(d1, d2), table) in &self.products {
            if d1 == 0 || d2 == 0 {
                return Err(Error::InvalidTable(
                    "degree-0 products are fixed by the unit and may not be tabulated".into(),
                ));
            }
            let target = self.h_dim(d1 + d2);
            let ok = table.len() == self.h_dim(d1)
                && table
                    .iter()
                    .all(|row| row.len() == self.h_dim(d2) && row.iter().all(|v| v.len() == target));
            if !ok {
                return Err(Error::InvalidTable(format!(
                    "product table for degrees ({d1}, {d2}) has the wrong shape"
                )));
            }
            if table.iter().flatten().any(|v| v.field() != self.field) {
                return Err(Error::InvalidTable(format!(
                    "product table for degrees ({d1}, {d2}) is over the wrong field"
                )));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn products(&self) -> &BTreeMap<(usize, usize), ProductTable> {
        &self.products
    }

    pub fn h_dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn basis_label(&self, n: usize, i: usize) -> String {
        self.labels[n][i].clone()
    }

    pub(crate) fn basis_product(&self, n1: usize, i: usize, n2: usize, j: usize) -> FpVector {
        let n = n1 + n2;
        if n1 == 0 {
            return FpVector::unit(self.field, self.h_dim(n), j);
        }
        if n2 == 0 {
            return FpVector::unit(self.field, self.h_dim(n), i);
        }
        match self.products.get(&(n1, n2)) {
            Some(table) => table[i][j].clone(),
            None => FpVector::zeros(self.field, self.h_dim(n)),
        }
    }
}

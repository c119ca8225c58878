//! A consistent choice of E-side data built from the F side alone.
//!
//! In degree n let `C = H^n / (a ∪ H^{n-1})`, `A0 = ann_n(a) ∩ (a ∪ H^{n-1})`
//! and `A1` a complement of `A0` in `ann_n(a)`. The module is
//! `C ⊕ A0 ⊕ A1^{p-1}`: σ fixes `C` and `A0`, and each `x` in the basis of
//! `A1` spans a chain `x_1 -> x_2 -> ... -> x_{p-1} -> [x]` under σ - 1.
//! Restriction is the quotient map to `C`; the norm sends an `A0` basis
//! vector to itself, `x_1` to `x` and everything else to 0. The result has
//! restriction kernel `a ∪ H^{n-1}` and norm image `ann_n(a)`, so the
//! four-term sequences are exact by construction.

use crate::criteria::ExtensionScenario;
use crate::error::{Error, Result};
use crate::exactness::{ESideData, ESideDegree};
use crate::linalg::{FpMatrix, FpVector, PrimeField, Subspace};
use crate::module::CyclicGroupModule;

/// Vectors of `extra` chosen greedily to extend a basis of `base`.
fn complement(field: PrimeField, base: &Subspace, extra: &[FpVector]) -> Vec<FpVector> {
    let mut span = base.clone();
    let mut out = Vec::new();
    for v in extra {
        if !span.contains_vector(v).expect("ambient dimensions agree") {
            out.push(v.clone());
            let line = Subspace::span(field, span.ambient_dim(), std::slice::from_ref(v)).expect("same ambient");
            span = span.sum(&line).expect("same ambient");
        }
    }
    out
}

fn degree_data(s: &ExtensionScenario, n: usize) -> Result<ESideDegree> {
    let ring = s.ring();
    let f = s.field();
    let p = f.p() as usize;
    let h = ring.h_dim(n);
    let cup = ring.cup_image(s.a_class(), n)?;
    let ann = ring.annihilator(s.a_class(), n)?;

    let units: Vec<FpVector> = (0..h).map(|i| FpVector::unit(f, h, i)).collect();
    let c_basis = complement(f, &cup, &units);
    let a0 = ann.intersect(&cup)?;
    let a1 = complement(f, &a0, &ann.basis_vectors());
    let a0_basis = a0.basis_vectors();

    // Coordinates of v in the basis (cup basis, c_basis); the tail is [v] in C.
    let mut rows = cup.basis_vectors();
    rows.extend(c_basis.iter().cloned());
    let change = FpMatrix::from_row_vectors(f, h, &rows)?
        .transpose()
        .inverse()
        .ok_or_else(|| Error::InconsistentData("quotient basis is singular".into()))?;
    let c = c_basis.len();
    let k = cup.dim();
    let quotient = |v: &FpVector| -> Result<Vec<u8>> {
        let coords = change.mul_vec(v)?;
        Ok(coords.entries()[k..].to_vec())
    };

    let dim = c + a0_basis.len() + a1.len() * (p - 1);
    let chain_start = c + a0_basis.len();
    let mut sigma = FpMatrix::identity(f, dim);
    let mut norm = FpMatrix::zeros(f, h, dim);
    for (i, g) in a0_basis.iter().enumerate() {
        for (r, &x) in g.entries().iter().enumerate() {
            norm.set(r, c + i, x);
        }
    }
    for (t, x) in a1.iter().enumerate() {
        let base = chain_start + t * (p - 1);
        for j in 0..p - 2 {
            sigma.set(base + j + 1, base + j, 1);
        }
        for (r, &q) in quotient(x)?.iter().enumerate() {
            sigma.set(r, base + p - 2, q);
        }
        for (r, &v) in x.entries().iter().enumerate() {
            norm.set(r, base, v);
        }
    }
    let mut inclusion = FpMatrix::zeros(f, dim, h);
    for (i, u) in units.iter().enumerate() {
        for (r, &q) in quotient(u)?.iter().enumerate() {
            inclusion.set(r, i, q);
        }
    }
    ESideDegree::new(CyclicGroupModule::new(sigma)?, inclusion, norm)
}

/// E-side data for degrees `0..=max_degree`. When `a ∪ a = 0` the data
/// also carries a fixed δ in H^1(E) with norm `a`.
pub fn standard_realization(s: &ExtensionScenario, max_degree: usize) -> Result<ESideData> {
    let mut data = ESideData::new(s.field());
    for n in 0..=max_degree {
        data.insert(n, degree_data(s, n)?)?;
    }
    if max_degree >= 1 {
        let d1 = data.degree(1).expect("degree 1 inserted");
        let a = s.a_class().coords();
        // Solve N δ = a among fixed vectors: the A0 block maps onto A0 and is
        // fixed, so a solution exists iff a lies in A0.
        let fixed = d1.module.fixed_points();
        let restricted = d1.norm.mul(&fixed.inclusion())?;
        let mut delta = None;
        if let Some(coords) = solve(&restricted, a)? {
            delta = Some(fixed.inclusion().mul_vec(&coords)?);
        }
        if let Some(delta) = delta {
            data = data.with_delta(delta)?;
        }
    }
    Ok(data)
}

/// Some `x` with `m x = b`, if one exists.
fn solve(m: &FpMatrix, b: &FpVector) -> Result<Option<FpVector>> {
    let f = m.field();
    let augmented = m.hstack(&FpMatrix::from_columns(f, m.rows(), std::slice::from_ref(b))?)?;
    let (r, pivots) = augmented.rref_with_pivots();
    if pivots.last() == Some(&m.cols()) {
        return Ok(None);
    }
    let mut x = FpVector::zeros(f, m.cols());
    for (i, &pc) in pivots.iter().enumerate() {
        x.set(pc, r.get(i, m.cols()));
    }
    Ok(Some(x))
}

//! Exactness of chains of linear maps, and the checks that tie supplied
//! E-side data (the modules H^n(E) with restriction and norm maps) to the
//! F-side ring model.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::criteria::{self, ExtensionScenario};
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, FpVector, PrimeField, Subspace};
use crate::module::CyclicGroupModule;

/// `V_0 -> V_1 -> ... -> V_k`; `maps[i]` is the `dims[i+1] x dims[i]`
/// matrix of `V_i -> V_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChain {
    field: PrimeField,
    dims: Vec<usize>,
    maps: Vec<FpMatrix>,
}

impl LinearChain {
    pub fn new(field: PrimeField, dims: Vec<usize>, maps: Vec<FpMatrix>) -> Result<Self> {
        if dims.len() != maps.len() + 1 {
            return Err(Error::DimensionMismatch {
                expected: maps.len() + 1,
                found: dims.len(),
            });
        }
        for (i, m) in maps.iter().enumerate() {
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.p(),
                    right: m.field().p(),
                });
            }
            if m.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::InconsistentData(format!(
                    "map {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        Ok(LinearChain { field, dims, maps })
    }

    /// Chain from maps alone, dimensions read off their shapes.
    pub fn from_maps(field: PrimeField, maps: Vec<FpMatrix>) -> Result<Self> {
        let Some(first) = maps.first() else {
            return Err(Error::InconsistentData("a chain needs at least one map".into()));
        };
        let mut dims = vec![first.cols()];
        dims.extend(maps.iter().map(FpMatrix::rows));
        Self::new(field, dims, maps)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    pub fn maps_mut(&mut self) -> &mut [FpMatrix] {
        &mut self.maps
    }

    /// Transposed maps in reverse order.
    pub fn dual(&self) -> LinearChain {
        LinearChain {
            field: self.field,
            dims: self.dims.iter().rev().copied().collect(),
            maps: self.maps.iter().rev().map(FpMatrix::transpose).collect(),
        }
    }
}

/// Exactness at one interior space. With `I` the incoming image and `K` the
/// outgoing kernel, `kernel_excess = dim K - dim(I∩K)` and
/// `image_excess = dim I - dim(I∩K)`; the position is exact iff both vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionResult {
    pub position: usize,
    pub kernel_excess: usize,
    pub image_excess: usize,
}

impl PositionResult {
    pub fn exact(&self) -> bool {
        self.kernel_excess == 0 && self.image_excess == 0
    }

    fn compare(position: usize, image: &Subspace, kernel: &Subspace) -> Result<Self> {
        let common = image.intersect(kernel)?.dim();
        Ok(PositionResult {
            position,
            kernel_excess: kernel.dim() - common,
            image_excess: image.dim() - common,
        })
    }
}

/// Results for every interior position, in order.
pub fn verify_exact(chain: &LinearChain) -> Result<Vec<PositionResult>> {
    (1..chain.dims.len() - 1)
        .map(|i| {
            PositionResult::compare(i, &chain.maps[i - 1].image(), &chain.maps[i].kernel())
        })
        .collect()
}

/// E-side data in one degree: the module H^n(E), restriction
/// `inclusion: H^n(F) -> H^n(E)` and norm `norm: H^n(E) -> H^n(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ESideDegree {
    pub module: CyclicGroupModule,
    pub inclusion: FpMatrix,
    pub norm: FpMatrix,
}

impl ESideDegree {
    /// Checks that classes from F are fixed, that the norm is invariant
    /// (`N σ = N`), that restriction after norm is the norm operator of the
    /// module and that norm after restriction, multiplication by p, is 0.
    pub fn new(module: CyclicGroupModule, inclusion: FpMatrix, norm: FpMatrix) -> Result<Self> {
        let e = module.dim();
        let h = inclusion.cols();
        if inclusion.rows() != e || norm.shape() != (h, e) {
            return Err(Error::InconsistentData(format!(
                "restriction is {}x{} and norm is {}x{} for a module of dimension {e}",
                inclusion.rows(),
                inclusion.cols(),
                norm.rows(),
                norm.cols()
            )));
        }
        if module.sigma().mul(&inclusion)? != inclusion {
            return Err(Error::InconsistentData(
                "restricted classes are not fixed by sigma".into(),
            ));
        }
        if norm.mul(module.sigma())? != norm {
            return Err(Error::InconsistentData("norm is not sigma-invariant".into()));
        }
        if inclusion.mul(&norm)? != module.norm_operator() {
            return Err(Error::InconsistentData(
                "restriction after norm differs from the norm operator".into(),
            ));
        }
        if !norm.mul(&inclusion)?.is_zero() {
            return Err(Error::InconsistentData("norm after restriction is not 0".into()));
        }
        Ok(ESideDegree {
            module,
            inclusion,
            norm,
        })
    }

    pub fn h_dim(&self) -> usize {
        self.inclusion.cols()
    }
}

/// Per-degree E-side data and an optional class δ in H^1(E).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ESideData {
    field: PrimeField,
    degrees: BTreeMap<usize, ESideDegree>,
    delta: Option<FpVector>,
}

impl ESideData {
    pub fn new(field: PrimeField) -> Self {
        ESideData {
            field,
            degrees: BTreeMap::new(),
            delta: None,
        }
    }

    pub fn insert(&mut self, n: usize, degree: ESideDegree) -> Result<()> {
        if degree.module.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: degree.module.field().p(),
            });
        }
        self.degrees.insert(n, degree);
        Ok(())
    }

    pub fn with_degree(mut self, n: usize, degree: ESideDegree) -> Result<Self> {
        self.insert(n, degree)?;
        Ok(self)
    }

    pub fn with_delta(mut self, delta: FpVector) -> Result<Self> {
        let d1 = self
            .degree(1)
            .ok_or_else(|| Error::IncompleteData("delta needs degree-1 data".into()))?;
        if delta.len() != d1.module.dim() {
            return Err(Error::DimensionMismatch {
                expected: d1.module.dim(),
                found: delta.len(),
            });
        }
        self.delta = Some(delta);
        Ok(self)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn degree(&self, n: usize) -> Option<&ESideDegree> {
        self.degrees.get(&n)
    }

    pub fn degrees(&self) -> impl Iterator<Item = (usize, &ESideDegree)> {
        self.degrees.iter().map(|(&n, d)| (n, d))
    }

    pub fn delta(&self) -> Option<&FpVector> {
        self.delta.as_ref()
    }

    /// Every supplied degree must match the dimension of H^n(F).
    pub fn check_against(&self, s: &ExtensionScenario) -> Result<()> {
        if self.field != s.field() {
            return Err(Error::FieldMismatch {
                left: s.field().p(),
                right: self.field.p(),
            });
        }
        for (&n, d) in &self.degrees {
            if d.h_dim() != s.ring().h_dim(n) {
                return Err(Error::InconsistentData(format!(
                    "degree {n}: E-side maps assume dim H^{n}(F) = {}, the model has {}",
                    d.h_dim(),
                    s.ring().h_dim(n)
                )));
            }
        }
        Ok(())
    }

    fn require(&self, n: usize) -> Result<&ESideDegree> {
        self.degree(n)
            .ok_or_else(|| Error::IncompleteData(format!("no E-side data in degree {n}")))
    }
}

/// Outcome of one sequence check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceCheck {
    pub sequence: String,
    pub degree: usize,
    pub positions: Vec<PositionResult>,
}

impl SequenceCheck {
    pub fn passed(&self) -> bool {
        self.positions.iter().all(PositionResult::exact)
    }

    pub fn failing_positions(&self) -> Vec<usize> {
        self.positions
            .iter()
            .filter(|r| !r.exact())
            .map(|r| r.position)
            .collect()
    }
}

/// `H^{m-1}(E) -N-> H^{m-1}(F) -a∪-> H^m(F) -res-> H^m(E)`, checked at the
/// two middle terms (positions 1 and 2).
pub fn four_term_chain(s: &ExtensionScenario, d: &ESideData, m: usize) -> Result<LinearChain> {
    if m == 0 {
        return Err(Error::UnsupportedDegree(0));
    }
    d.check_against(s)?;
    let prev = d.require(m - 1)?;
    let here = d.require(m)?;
    let cup = s.ring().cup_matrix(s.a_class(), m - 1)?;
    LinearChain::from_maps(
        s.field(),
        vec![prev.norm.clone(), cup, here.inclusion.clone()],
    )
}

pub fn verify_four_term_sequence(s: &ExtensionScenario, d: &ESideData, m: usize) -> Result<SequenceCheck> {
    let chain = four_term_chain(s, d, m)?;
    Ok(SequenceCheck {
        sequence: "norm / cup with a / restriction".into(),
        degree: m,
        positions: verify_exact(&chain)?,
    })
}

/// The sequence
/// `0 -> ann_{m-1}(a) -> H^{m-1}(F) -a∪-> H^m(F) -res-> H^m(E) -N-> T -> 0`
/// with `T = a ∪ ann_{m-1}(a ∪ ξ)`, asserted when H^m(E) is trivial.
///
/// Positions 1 to 4 are the interior terms up to H^m(E); position 5 compares
/// the norm image with `T` (`kernel_excess` is the surjectivity gap,
/// `image_excess` the part of the image outside `T`). `target` replaces `T`.
pub fn verify_trivial_sequence(
    s: &ExtensionScenario,
    d: &ESideData,
    m: usize,
    target: Option<&Subspace>,
) -> Result<SequenceCheck> {
    if m == 0 {
        return Err(Error::UnsupportedDegree(0));
    }
    if !criteria::trivial_criterion(s, m)? {
        return Err(Error::Precondition(format!(
            "H^{m}(E) is not trivial for this scenario, so the sequence is not asserted"
        )));
    }
    d.check_against(s)?;
    let here = d.require(m)?;
    let ring = s.ring();
    let f = s.field();
    let ann = ring.annihilator(s.a_class(), m - 1)?;
    let inclusion = ann.inclusion();
    let zero = FpMatrix::zeros(f, ann.dim(), 0);
    let cup = ring.cup_matrix(s.a_class(), m - 1)?;
    let chain = LinearChain::from_maps(
        f,
        vec![
            zero,
            inclusion,
            cup.clone(),
            here.inclusion.clone(),
            here.norm.clone(),
        ],
    )?;
    let mut positions = verify_exact(&chain)?;
    let a_xi = ring.cup(s.a_class(), s.xi_class())?;
    let default_target = ring.annihilator(&a_xi, m - 1)?.map(&cup)?;
    let target = target.unwrap_or(&default_target);
    positions.push(PositionResult::compare(5, &here.norm.image(), target)?);
    Ok(SequenceCheck {
        sequence: "trivial-module six-term".into(),
        degree: m,
        positions,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub name: String,
    /// `None` when the hypotheses do not hold at this degree.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub degree: usize,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds != Some(false))
    }
}

fn lemma(name: &str, applicable: bool, holds: impl FnOnce() -> Result<bool>) -> Result<LemmaCheck> {
    Ok(LemmaCheck {
        name: name.to_string(),
        holds: if applicable { Some(holds()?) } else { None },
    })
}

/// Conclusions about H^n(E) that follow from F-side hypotheses, evaluated on
/// the supplied data.
pub fn verify_eside_lemmas(s: &ExtensionScenario, d: &ESideData, n: usize) -> Result<LemmaReport> {
    d.check_against(s)?;
    let here = d.require(n)?;
    let ring = s.ring();
    let p2 = s.field().is_two();
    let verdict = criteria::evaluate_degree(s, n.max(1))?;
    let w = &verdict.witnesses;
    let module = &here.module;
    let norm_image = here.norm.image();
    let mut checks = Vec::new();

    if n == 0 {
        checks.push(lemma("H^0(E) = F_p with restriction 1 -> 1", true, || {
            Ok(module.dim() == 1 && here.inclusion.is_identity())
        })?);
    }

    let fixed_hypothesis = if n == 0 {
        false
    } else if p2 {
        let ann_a_m1 = ring.annihilator(&ring.cup(s.a_class(), s.minus_one_class())?, n - 1)?;
        w.ann_prev == ann_a_m1 && norm_image.sum(&w.cup)?.is_full()
    } else {
        w.ann_prev.is_full()
    };
    checks.push(lemma(
        "fixed points = res(N(H^n(E))) = norm-operator image = res(H^n(F))",
        fixed_hypothesis,
        || {
            let fixed = module.fixed_points();
            let res_n = here.inclusion.mul(&here.norm)?.image();
            Ok(fixed == res_n && res_n == module.norm_image() && res_n == here.inclusion.image())
        },
    )?);

    let trivial_hypothesis = n >= 1 && {
        let xi_ok = p2 || w.cup.contains(&ring.cup_image(s.xi_class(), n)?)?;
        xi_ok && w.cup.contains(&w.ann)?
    };
    checks.push(lemma("H^n(E) trivial", trivial_hypothesis, || {
        Ok(module.is_trivial())
    })?);

    if p2 && n >= 1 {
        checks.push(lemma("a ∪ ann_{n-1}(a∪(-1)) ⊂ N(H^n(E))", true, || {
            let bound = w.trivial_bound.as_ref().expect("p = 2 witness");
            norm_image.contains(bound)
        })?);
    }

    let free_ends = (!p2 || s.sum_of_squares()) && module.is_free();
    checks.push(lemma(
        "restriction injective and norm surjective",
        free_ends,
        || Ok(here.inclusion.kernel().is_zero() && norm_image.is_full()),
    )?);

    if n >= 1 {
        checks.push(lemma("module verdicts match the criteria", true, || {
            Ok(module.is_free() == verdict.free && module.is_trivial() == verdict.trivial)
        })?);
    }

    if n == 1 {
        if let Some(delta) = d.delta() {
            checks.push(lemma("delta fixed with N(delta) = a", true, || {
                let fixed = module.sigma().mul_vec(delta)? == *delta;
                Ok(fixed && here.norm.mul_vec(delta)? == *s.a_class().coords())
            })?);
        }
    }

    Ok(LemmaReport { degree: n, checks })
}

/// Every check the supplied data allows.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub four_term: Vec<SequenceCheck>,
    pub trivial_sequence: Vec<SequenceCheck>,
    pub lemmas: Vec<LemmaReport>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.four_term.iter().all(SequenceCheck::passed)
            && self.trivial_sequence.iter().all(SequenceCheck::passed)
            && self.lemmas.iter().all(LemmaReport::passed)
    }
}

pub fn verify_all(s: &ExtensionScenario, d: &ESideData) -> Result<ExactnessReport> {
    d.check_against(s)?;
    let mut report = ExactnessReport::default();
    for (n, _) in d.degrees() {
        if n >= 1 && d.degree(n - 1).is_some() {
            report.four_term.push(verify_four_term_sequence(s, d, n)?);
        }
        if n >= 1 && criteria::trivial_criterion(s, n)? {
            report.trivial_sequence.push(verify_trivial_sequence(s, d, n, None)?);
        }
        report.lemmas.push(verify_eside_lemmas(s, d, n)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn identity_chain_is_exact() {
        let k = f(3);
        let chain = LinearChain::from_maps(
            k,
            vec![
                FpMatrix::zeros(k, 2, 0),
                FpMatrix::identity(k, 2),
                FpMatrix::zeros(k, 0, 2),
            ],
        )
        .unwrap();
        assert!(verify_exact(&chain).unwrap().iter().all(PositionResult::exact));
    }

    #[test]
    fn zero_map_fails_twice() {
        let k = f(2);
        let chain = LinearChain::from_maps(
            k,
            vec![
                FpMatrix::zeros(k, 3, 0),
                FpMatrix::zeros(k, 3, 3),
                FpMatrix::zeros(k, 0, 3),
            ],
        )
        .unwrap();
        let r = verify_exact(&chain).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!((r[0].kernel_excess, r[0].image_excess), (3, 0));
        assert_eq!((r[1].kernel_excess, r[1].image_excess), (3, 0));
    }

    #[test]
    fn shape_mismatch_rejected() {
        let k = f(5);
        let bad = LinearChain::from_maps(k, vec![FpMatrix::zeros(k, 2, 1), FpMatrix::zeros(k, 1, 3)]);
        assert!(bad.is_err());
    }

    #[test]
    fn inconsistent_eside_rejected() {
        let k = f(2);
        let module = CyclicGroupModule::regular(k);
        // (1, 0) is not fixed by the swap.
        let inc = FpMatrix::from_rows(k, 1, &[vec![1], vec![0]]).unwrap();
        let norm = FpMatrix::zeros(k, 1, 2);
        assert!(ESideDegree::new(module, inc, norm).is_err());
    }
}

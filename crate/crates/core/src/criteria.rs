//! Freeness and triviality of H^n(E) decided from the cup-product structure of
//! H^*(F), together with the invariants cf, ct and cd.
//!
//! Every verdict is computed per degree from annihilators and cup images in
//! the ring model; nothing is extrapolated from neighbouring degrees. For
//! truncated infinite models a closed-form rule supplies the behaviour above
//! the truncation when the class `a` is a single generator and the units
//! `ξ` and `-1` vanish. Otherwise the invariant is reported as incomplete.

use std::fmt;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactness::ESideData;
use crate::linalg::{PrimeField, Subspace};
use crate::ring::{Bound, RingElement, RingModel};

/// The input to every criterion: H^*(F) as a ring model, the class of `a`
/// with E = F(a^{1/p}), the classes of ξ_p and -1, and evaluation settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionScenario {
    name: String,
    ring: RingModel,
    a: RingElement,
    xi: RingElement,
    minus_one: RingElement,
    sum_of_squares: bool,
    degree_cap: usize,
}

impl ExtensionScenario {
    /// Scenario with ξ = -1 = 0, the sum-of-squares flag set at p = 2 and the
    /// default degree cap.
    pub fn new(ring: RingModel, a: RingElement) -> Result<Self> {
        ring.check(&a)?;
        if a.degree() != 1 {
            return Err(Error::InvalidScenario(format!(
                "the class of a must have degree 1, got degree {}",
                a.degree()
            )));
        }
        if a.is_zero() {
            return Err(Error::InvalidScenario(
                "the class of a must be nonzero (a is not a p-th power)".into(),
            ));
        }
        let zero = ring.zero(1);
        let sum_of_squares = ring.field().is_two();
        let degree_cap = default_cap(&ring);
        Ok(ExtensionScenario {
            name: String::from("scenario"),
            ring,
            a,
            xi: zero.clone(),
            minus_one: zero,
            sum_of_squares,
            degree_cap,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Sets the class of ξ_p. At p = 2 this is also the class of -1.
    pub fn with_xi(mut self, xi: RingElement) -> Result<Self> {
        self.check_unit_class(&xi)?;
        if self.field().is_two() {
            self.minus_one = xi.clone();
        }
        self.xi = xi;
        Ok(self)
    }

    /// Sets the class of -1. At p = 2 this is also the class of ξ_2.
    pub fn with_minus_one(mut self, minus_one: RingElement) -> Result<Self> {
        self.check_unit_class(&minus_one)?;
        if self.field().is_two() {
            self.xi = minus_one.clone();
        }
        self.minus_one = minus_one;
        Ok(self)
    }

    pub fn with_sum_of_squares(mut self, flag: bool) -> Self {
        self.sum_of_squares = flag;
        self
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidScenario("degree cap must be positive".into()));
        }
        if let Some(limit) = truncation_limit(&self.ring) {
            if cap > limit {
                return Err(Error::InvalidScenario(format!(
                    "degree cap {cap} exceeds the truncation {limit} of the infinite factor"
                )));
            }
        }
        self.degree_cap = cap;
        Ok(self)
    }

    fn check_unit_class(&self, x: &RingElement) -> Result<()> {
        self.ring.check(x)?;
        if x.degree() != 1 {
            return Err(Error::InvalidScenario(format!(
                "unit classes have degree 1, got degree {}",
                x.degree()
            )));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &RingModel {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn a_class(&self) -> &RingElement {
        &self.a
    }

    pub fn xi_class(&self) -> &RingElement {
        &self.xi
    }

    pub fn minus_one_class(&self) -> &RingElement {
        &self.minus_one
    }

    pub fn sum_of_squares(&self) -> bool {
        self.sum_of_squares
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// The same extension after renaming generators by `perm`; see
    /// [`RingModel::generator_permutation`].
    pub fn relabel_generators(&self, perm: &[usize]) -> Result<Self> {
        let phi = self.ring.generator_permutation(perm, 1)?;
        let map = |x: &RingElement| -> Result<RingElement> {
            self.ring.element(1, phi.mul_vec(x.coords())?)
        };
        Ok(ExtensionScenario {
            a: map(&self.a)?,
            xi: map(&self.xi)?,
            minus_one: map(&self.minus_one)?,
            ..self.clone()
        })
    }

    /// Class of `a ∪ (-1)` in degree 2.
    fn a_minus_one(&self) -> Result<RingElement> {
        self.ring.cup(&self.a, &self.minus_one)
    }

    fn a_xi(&self) -> Result<RingElement> {
        self.ring.cup(&self.a, &self.xi)
    }
}

fn default_cap(ring: &RingModel) -> usize {
    truncation_limit(ring).unwrap_or(ring.top_degree() + 1).max(1)
}

/// For models with an infinite factor: the highest degree at which the
/// truncation still agrees with the infinite algebra.
fn truncation_limit(ring: &RingModel) -> Option<usize> {
    match ring {
        RingModel::Exterior(r) if r.is_unbounded() => Some(r.generators()),
        RingModel::DirectSum(s) => match (truncation_limit(s.left()), truncation_limit(s.right())) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        },
        _ => None,
    }
}

/// Value of cf or ct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Invariant {
    Finite { value: usize },
    Unbounded,
    /// The cap was too small to decide. `lower_bound` is the largest failing
    /// degree seen, 0 if none.
    Incomplete { cap: usize, lower_bound: usize },
}

impl Invariant {
    pub fn finite(self) -> Option<usize> {
        match self {
            Invariant::Finite { value } => Some(value),
            _ => None,
        }
    }

    pub fn is_incomplete(self) -> bool {
        matches!(self, Invariant::Incomplete { .. })
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::Finite { value } => write!(f, "{value}"),
            Invariant::Unbounded => write!(f, "unbounded"),
            Invariant::Incomplete { cap, lower_bound } => {
                write!(f, "incomplete (>= {lower_bound}, evaluated through degree {cap})")
            }
        }
    }
}

/// Subspaces backing a degree-n verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witnesses {
    /// ann_{n-1}(a) in H^{n-1}.
    pub ann_prev: Subspace,
    /// ann_n(a) in H^n.
    pub ann: Subspace,
    /// a ∪ H^{n-1} in H^n.
    pub cup: Subspace,
    /// ξ ∪ H^{n-1} in H^n, odd p only.
    pub xi_cup: Option<Subspace>,
    /// a ∪ ann_{n-1}(a ∪ (-1)) in H^n, p = 2 only.
    pub trivial_bound: Option<Subspace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub degree: usize,
    pub free: bool,
    pub trivial: bool,
    pub witnesses: Witnesses,
}

/// Verdicts for every degree from 1 up to `n` and beyond, when a closed form
/// is known for the infinite part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailRule {
    pub from_degree: usize,
    pub free: bool,
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriteriaReport {
    pub degree_cap: usize,
    pub verdicts: Vec<DegreeVerdict>,
    pub cf: Invariant,
    pub ct: Invariant,
    pub cd: Bound,
    pub tail: Option<TailRule>,
}

impl CriteriaReport {
    pub fn verdict(&self, n: usize) -> Option<&DegreeVerdict> {
        self.verdicts.get(n.checked_sub(1)?)
    }

    pub fn is_complete(&self) -> bool {
        !self.cf.is_incomplete() && !self.ct.is_incomplete()
    }
}

pub fn evaluate_degree(s: &ExtensionScenario, n: usize) -> Result<DegreeVerdict> {
    if n == 0 {
        return Err(Error::UnsupportedDegree(0));
    }
    if let Some(limit) = truncation_limit(&s.ring) {
        if n > limit {
            return Err(Error::OutOfRange {
                what: "degree beyond the truncation",
                index: n,
                limit,
            });
        }
    }
    let ring = &s.ring;
    let ann_prev = ring.annihilator(&s.a, n - 1)?;
    let ann = ring.annihilator(&s.a, n)?;
    let cup = ring.cup_image(&s.a, n)?;
    let (free, trivial, xi_cup, trivial_bound);
    if s.field().is_two() {
        free = ann.intersect(&cup)?.is_zero() && ann.sum(&cup)?.is_full();
        let bound = ring.annihilator(&s.a_minus_one()?, n - 1)?.map(&ring.cup_matrix(&s.a, n - 1)?)?;
        trivial = bound.contains(&ann)?;
        xi_cup = None;
        trivial_bound = Some(bound);
    } else {
        free = ann_prev.is_full();
        let xc = ring.cup_image(&s.xi, n)?;
        trivial = cup.contains(&xc)? && ann == cup;
        xi_cup = Some(xc);
        trivial_bound = None;
    }
    debug_assert!(
        ring.h_dim(n) > 0 || (free && trivial),
        "a vanishing degree must be free and trivial"
    );
    Ok(DegreeVerdict {
        degree: n,
        free,
        trivial,
        witnesses: Witnesses {
            ann_prev,
            ann,
            cup,
            xi_cup,
            trivial_bound,
        },
    })
}

pub fn free_criterion(s: &ExtensionScenario, n: usize) -> Result<bool> {
    Ok(evaluate_degree(s, n)?.free)
}

pub fn trivial_criterion(s: &ExtensionScenario, n: usize) -> Result<bool> {
    Ok(evaluate_degree(s, n)?.trivial)
}

pub fn compute_cd(s: &ExtensionScenario) -> Bound {
    s.ring.cohomological_dimension()
}

/// Closed-form verdicts above every finite factor, when the structure allows
/// one: an infinite exterior factor, possibly summed with another exterior
/// model, `a` a multiple of one generator, and ξ = -1 = 0.
///
/// In the factor X holding `a` the annihilator of `a` is `a ∧ H^{n-1}(X)`,
/// a proper subspace whenever X is infinite; the other factor Y is
/// annihilated entirely. So freeness eventually holds iff X is finite and
/// triviality eventually holds iff Y is finite or absent.
pub fn closed_form_tail(s: &ExtensionScenario) -> Option<TailRule> {
    if !s.ring.is_unbounded() || !s.xi.is_zero() || !s.minus_one.is_zero() {
        return None;
    }
    if s.a.coords().support().count() != 1 {
        return None;
    }
    let (index, _) = s.a.coords().support().next()?;
    let (x, y) = match &s.ring {
        RingModel::Exterior(r) => (r, None),
        RingModel::DirectSum(sum) => match (sum.left(), sum.right()) {
            (RingModel::Exterior(l), RingModel::Exterior(r)) => {
                if index < l.generators() {
                    (l, Some(r))
                } else {
                    (r, Some(l))
                }
            }
            _ => return None,
        },
        RingModel::Table(_) => return None,
    };
    let finite_top = [Some(x), y]
        .into_iter()
        .flatten()
        .filter(|r| !r.is_unbounded())
        .map(|r| r.generators())
        .max()
        .unwrap_or(0);
    Some(TailRule {
        from_degree: finite_top + 1,
        free: !x.is_unbounded(),
        trivial: y.is_none_or(|r| !r.is_unbounded()),
    })
}

fn invariant(
    s: &ExtensionScenario,
    holds: &[bool],
    tail: Option<(usize, bool)>,
) -> Invariant {
    let cap = holds.len();
    let lower_bound = holds.iter().rposition(|&h| !h).map_or(0, |i| i + 1);
    let incomplete = Invariant::Incomplete { cap, lower_bound };
    if !s.ring.is_unbounded() {
        return if cap > s.ring.top_degree() {
            Invariant::Finite { value: lower_bound }
        } else {
            incomplete
        };
    }
    match tail {
        Some((from, value)) if cap >= from && holds[from - 1..].iter().all(|&h| h == value) => {
            if value {
                Invariant::Finite { value: lower_bound }
            } else {
                Invariant::Unbounded
            }
        }
        _ => incomplete,
    }
}

fn assemble(s: &ExtensionScenario, verdicts: Vec<DegreeVerdict>) -> CriteriaReport {
    let tail = closed_form_tail(s);
    let free: Vec<bool> = verdicts.iter().map(|v| v.free).collect();
    let trivial: Vec<bool> = verdicts.iter().map(|v| v.trivial).collect();
    let cf = invariant(s, &free, tail.map(|t| (t.from_degree, t.free)));
    let ct = invariant(s, &trivial, tail.map(|t| (t.from_degree, t.trivial)));
    CriteriaReport {
        degree_cap: s.degree_cap,
        verdicts,
        cf,
        ct,
        cd: compute_cd(s),
        tail,
    }
}

pub fn evaluate(s: &ExtensionScenario) -> Result<CriteriaReport> {
    let verdicts = (1..=s.degree_cap)
        .map(|n| evaluate_degree(s, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(s, verdicts))
}

/// Same as [`evaluate`], with degrees spread over `threads` worker threads.
pub fn evaluate_parallel(s: &ExtensionScenario, threads: usize) -> Result<CriteriaReport> {
    let threads = threads.max(1);
    let degrees: Vec<usize> = (1..=s.degree_cap).collect();
    let chunk = degrees.len().div_ceil(threads).max(1);
    let parts: Vec<Result<Vec<DegreeVerdict>>> = thread::scope(|scope| {
        let handles: Vec<_> = degrees
            .chunks(chunk)
            .map(|ds| scope.spawn(move || ds.iter().map(|&n| evaluate_degree(s, n)).collect()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verdict worker panicked"))
            .collect()
    });
    let mut verdicts = Vec::with_capacity(degrees.len());
    for part in parts {
        verdicts.extend(part?);
    }
    Ok(assemble(s, verdicts))
}

pub fn compute_cf(s: &ExtensionScenario) -> Result<Invariant> {
    Ok(evaluate(s)?.cf)
}

pub fn compute_ct(s: &ExtensionScenario) -> Result<Invariant> {
    Ok(evaluate(s)?.ct)
}

/// Monotonicity of verdict sequences and of the F-side properties that are
/// known to propagate upward.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeredityReport {
    /// Whether free verdicts must be monotone: p > 2, or a is a sum of two
    /// squares.
    pub free_required: bool,
    /// Degrees where freeness fails after holding at a lower degree.
    pub free_violations: Vec<usize>,
    pub trivial_violations: Vec<usize>,
    /// F-side properties that stopped holding, as `"<property> at <n>"`.
    pub property_violations: Vec<String>,
    /// Where H^1(E) is known never to be free (p > 2, or p = 2 with -1 = 0):
    /// whether the degree-1 verdict agrees.
    pub degree_one_not_free: Option<bool>,
    /// p = 2: degrees m ≥ n with ann_{n-1}(a) = H^{n-1} but H^m(E) not free.
    pub propagation_violations: Vec<usize>,
}

impl HeredityReport {
    /// Free violations when freeness need not be hereditary.
    pub fn permitted_free_violations(&self) -> &[usize] {
        if self.free_required {
            &[]
        } else {
            &self.free_violations
        }
    }

    pub fn passed(&self) -> bool {
        (!self.free_required || self.free_violations.is_empty())
            && self.trivial_violations.is_empty()
            && self.property_violations.is_empty()
            && self.degree_one_not_free != Some(false)
            && self.propagation_violations.is_empty()
    }
}

fn drops(holds: &[bool]) -> Vec<usize> {
    let mut seen = false;
    let mut out = Vec::new();
    for (i, &h) in holds.iter().enumerate() {
        if h {
            seen = true;
        } else if seen {
            out.push(i + 1);
        }
    }
    out
}

pub fn hereditary_check(s: &ExtensionScenario, report: &CriteriaReport) -> Result<HeredityReport> {
    let ring = &s.ring;
    let p2 = s.field().is_two();
    let free: Vec<bool> = report.verdicts.iter().map(|v| v.free).collect();
    let trivial: Vec<bool> = report.verdicts.iter().map(|v| v.trivial).collect();

    let a_xi = s.a_xi()?;
    let mut properties: Vec<(&str, Vec<bool>)> = vec![
        ("ann_{n-1}(a) = ann_{n-1}(a∪ξ) = H^{n-1}", Vec::new()),
        ("a ∪ H^{n-1} = 0", Vec::new()),
        ("ann_{n-1}(a) = H^{n-1}", Vec::new()),
        ("ξ ∪ H^{n-1} ⊂ a ∪ H^{n-1}", Vec::new()),
    ];
    for v in &report.verdicts {
        let n = v.degree;
        let w = &v.witnesses;
        let ann_xi_full = ring.annihilator(&a_xi, n - 1)?.is_full();
        let xi_cup = ring.cup_image(&s.xi, n)?;
        properties[0].1.push(w.ann_prev.is_full() && ann_xi_full);
        properties[1].1.push(w.cup.is_zero());
        properties[2].1.push(w.ann_prev.is_full());
        properties[3].1.push(w.cup.contains(&xi_cup)?);
    }
    let property_violations = properties
        .iter()
        .flat_map(|(label, holds)| drops(holds).into_iter().map(move |n| format!("{label} at {n}")))
        .collect();

    let degree_one_not_free = if !p2 || s.minus_one.is_zero() {
        free.first().map(|&f| !f)
    } else {
        None
    };

    let mut propagation_violations = Vec::new();
    if p2 {
        if let Some(start) = report.verdicts.iter().position(|v| v.witnesses.ann_prev.is_full()) {
            propagation_violations = (start..free.len()).filter(|&i| !free[i]).map(|i| i + 1).collect();
        }
    }

    Ok(HeredityReport {
        free_required: !p2 || s.sum_of_squares,
        free_violations: drops(&free),
        trivial_violations: drops(&trivial),
        property_violations,
        degree_one_not_free,
        propagation_violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub label: String,
    pub holds: bool,
}

/// Conditions that are proven equivalent at one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceGroup {
    pub name: String,
    pub degree: usize,
    pub conditions: Vec<Condition>,
}

impl EquivalenceGroup {
    pub fn agrees(&self) -> bool {
        self.conditions.windows(2).all(|w| w[0].holds == w[1].holds)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceSuite {
    pub groups: Vec<EquivalenceGroup>,
}

impl EquivalenceSuite {
    pub fn consistent(&self) -> bool {
        self.groups.iter().all(EquivalenceGroup::agrees)
    }

    pub fn disagreements(&self) -> Vec<&EquivalenceGroup> {
        self.groups.iter().filter(|g| !g.agrees()).collect()
    }
}

fn condition(label: &str, holds: bool) -> Condition {
    Condition {
        label: label.to_string(),
        holds,
    }
}

/// Evaluates each group of equivalent characterizations of freeness at
/// degree `n`. Conditions about restriction, norm and H^n(E) use the E-side
/// data when it covers the degrees involved, and their F-side forms
/// otherwise: the restriction kernel is `a ∪ H^{n-1}` and the norm image is
/// `ann_{n-1}(a)`.
pub fn equivalence_groups(
    s: &ExtensionScenario,
    n: usize,
    eside: Option<&ESideData>,
) -> Result<Vec<EquivalenceGroup>> {
    let v = evaluate_degree(s, n)?;
    let ring = &s.ring;
    let w = &v.witnesses;
    let e_here = eside.and_then(|d| d.degree(n));
    let e_prev = eside.and_then(|d| d.degree(n - 1));

    let restriction_injective = match e_here {
        Some(d) => d.inclusion.kernel().is_zero(),
        None => w.cup.is_zero(),
    };
    let norm_surjective = match e_prev {
        Some(d) => d.norm.image().is_full(),
        None => w.ann_prev.is_full(),
    };
    let ann_xi = ring.annihilator(&s.a_xi()?, n - 1)?;
    let module_free = e_here.map(|d| d.module.is_free());

    let mut groups = Vec::new();
    let mut ends = vec![
        condition("H^{n-1} = ann_{n-1}(a)", w.ann_prev.is_full()),
        condition(
            "H^{n-1} = ann_{n-1}(a) = ann_{n-1}(a∪ξ)",
            w.ann_prev.is_full() && ann_xi.is_full(),
        ),
        condition("restriction H^n(F) -> H^n(E) injective", restriction_injective),
        condition("norm H^{n-1}(E) -> H^{n-1}(F) surjective", norm_surjective),
    ];

    if s.field().is_two() {
        let ann_a_m1 = ring.annihilator(&s.a_minus_one()?, n - 1)?;
        let same_ann = w.ann_prev == ann_a_m1;
        let norm_image = match e_here {
            Some(d) => d.norm.image(),
            None => w.ann.clone(),
        };
        let mut chain = vec![
            condition(
                "ann_{n-1}(a) = ann_{n-1}(a∪(-1)) and H^n = N H^n(E) + a∪H^{n-1}",
                same_ann && norm_image.sum(&w.cup)?.is_full(),
            ),
            condition(
                "ann_{n-1}(a) = ann_{n-1}(a∪(-1)) and H^n = ann_n(a) + a∪H^{n-1}",
                same_ann && w.ann.sum(&w.cup)?.is_full(),
            ),
            condition("H^n = ann_n(a) ⊕ a∪H^{n-1}", v.free),
        ];
        if let Some(f) = module_free {
            chain.insert(0, condition("H^n(E) free", f));
        }
        groups.push(EquivalenceGroup {
            name: "freeness (p = 2)".into(),
            degree: n,
            conditions: chain,
        });
    } else {
        let mut chain = vec![
            condition("H^{n-1} = ann_{n-1}(a)", w.ann_prev.is_full()),
            condition("restriction H^n(F) -> H^n(E) injective", restriction_injective),
            condition("norm H^{n-1}(E) -> H^{n-1}(F) surjective", norm_surjective),
        ];
        if let Some(f) = module_free {
            chain.insert(0, condition("H^n(E) free", f));
        }
        groups.push(EquivalenceGroup {
            name: "freeness (p odd)".into(),
            degree: n,
            conditions: chain,
        });
    }
    if module_free.is_some() && !s.field().is_two() {
        ends.push(condition("H^n(E) free", module_free == Some(true)));
    }
    groups.push(EquivalenceGroup {
        name: "restriction injective / norm surjective".into(),
        degree: n,
        conditions: ends,
    });
    Ok(groups)
}

/// All equivalence groups for degrees 1 through the cap.
pub fn equivalence_suite(s: &ExtensionScenario, eside: Option<&ESideData>) -> Result<EquivalenceSuite> {
    let mut groups = Vec::new();
    for n in 1..=s.degree_cap {
        groups.extend(equivalence_groups(s, n, eside)?);
    }
    Ok(EquivalenceSuite { groups })
}

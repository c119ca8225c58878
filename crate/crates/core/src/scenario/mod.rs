//! Ready-made extensions, fixtures, the JSON file formats and reports.
//!
//! The builders model fields whose cohomology is an exterior algebra (one
//! generator per independent valuation direction) or a free product of two
//! such groups. In all of them ξ_p and -1 are p-th powers, so their classes
//! vanish.

mod fixtures;
mod file;
mod realization;
mod report;

pub use file::{
    AClassSpec, ChainFile, ESideFile, ESideDegreeFile, ESideSpec, LoadedScenario, ModelSpec,
    ModuleFile, ScenarioFile, schema_of, CHAIN_SCHEMA, ESIDE_SCHEMA, MODULE_SCHEMA, SCENARIO_SCHEMA,
};
pub use fixtures::{
    build_q2_fixture, corrupted_q2_fixture, find_fixture, fixture_catalogue, q2_ring, Fixture,
    HILBERT_SYMBOLS_Q2,
};
pub use realization::standard_realization;
pub use report::{
    criteria_document, exactness_document, module_document, scenario_document, ExitStatus,
    ReportDocument, REPORT_SCHEMA,
};

use crate::criteria::ExtensionScenario;
use crate::error::{Error, Result};
use crate::linalg::PrimeField;
use crate::ring::{DirectSumRingModel, RingModel};

fn pair(p: u32, n: usize, m: usize) -> Result<DirectSumRingModel> {
    if n == 0 || n > m {
        return Err(Error::InvalidScenario(format!(
            "need 1 <= n <= m, got n = {n}, m = {m}"
        )));
    }
    let f = PrimeField::new(p)?;
    DirectSumRingModel::new(RingModel::exterior(f, n)?, RingModel::exterior(f, m)?)
}

/// Free product of exterior models on `n` and `m` generators with `a` the
/// first generator of the `n` side. H^k(E) is free exactly for k > n.
pub fn build_free_example(p: u32, n: usize, m: usize) -> Result<ExtensionScenario> {
    let sum = pair(p, n, m)?;
    let a = sum.left_generator(0)?;
    Ok(ExtensionScenario::new(sum.into(), a)?.with_name(format!("free_p{p}_n{n}_m{m}")))
}

/// As [`build_free_example`] with `a` on the `m` side. H^k(E) is trivial
/// exactly for k > n.
pub fn build_trivial_example(p: u32, n: usize, m: usize) -> Result<ExtensionScenario> {
    let sum = pair(p, n, m)?;
    let a = sum.right_generator(0)?;
    Ok(ExtensionScenario::new(sum.into(), a)?.with_name(format!("trivial_p{p}_n{n}_m{m}")))
}

/// Exterior algebra on infinitely many generators, truncated at `cap`, with
/// `a` a generator: no H^k(E) is free.
pub fn build_henselian_example(p: u32, cap: usize) -> Result<ExtensionScenario> {
    if cap < 2 {
        return Err(Error::InvalidScenario(format!("truncation cap must be at least 2, got {cap}")));
    }
    let ring = RingModel::truncated_infinite(PrimeField::new(p)?, cap)?;
    let a = ring.element_from_generator(0)?;
    Ok(ExtensionScenario::new(ring, a)?.with_name(format!("henselian_p{p}_cap{cap}")))
}

/// Which factor of the mixed model carries `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixedVariant {
    /// `a` in the finite factor: cf = n.
    Free,
    /// `a` in the infinite factor: ct = n.
    Trivial,
}

/// Free product of an exterior model on `n` generators with a truncated
/// infinite one.
pub fn build_mixed_infinite_example(
    p: u32,
    n: usize,
    cap: usize,
    variant: MixedVariant,
) -> Result<ExtensionScenario> {
    if n == 0 {
        return Err(Error::InvalidScenario("n must be at least 1".into()));
    }
    let f = PrimeField::new(p)?;
    let sum = DirectSumRingModel::new(
        RingModel::exterior(f, n)?,
        RingModel::truncated_infinite(f, cap)?,
    )?;
    let (a, tag) = match variant {
        MixedVariant::Free => (sum.left_generator(0)?, "free"),
        MixedVariant::Trivial => (sum.right_generator(0)?, "trivial"),
    };
    Ok(ExtensionScenario::new(sum.into(), a)?.with_name(format!("mixed_{tag}_p{p}_n{n}_cap{cap}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{evaluate, Invariant};
    use crate::ring::Bound;

    #[test]
    fn builders_validate_arguments() {
        assert!(build_free_example(3, 3, 2).is_err());
        assert!(build_trivial_example(2, 0, 2).is_err());
        assert!(build_henselian_example(2, 1).is_err());
        assert!(build_free_example(4, 1, 2).is_err());
    }

    #[test]
    fn free_example_dimensions() {
        let s = build_free_example(3, 1, 2).unwrap();
        assert_eq!(s.ring().h_dim(1), 3);
        assert_eq!(s.degree_cap(), 3);
    }

    #[test]
    fn mixed_variants() {
        let free = evaluate(&build_mixed_infinite_example(3, 2, 6, MixedVariant::Free).unwrap()).unwrap();
        assert_eq!(free.cf, Invariant::Finite { value: 2 });
        assert_eq!(free.cd, Bound::Unbounded);
        let triv =
            evaluate(&build_mixed_infinite_example(2, 2, 6, MixedVariant::Trivial).unwrap()).unwrap();
        assert_eq!(triv.ct, Invariant::Finite { value: 2 });
        assert_eq!(triv.cf, Invariant::Unbounded);
    }
}

use std::collections::BTreeMap;

use crate::criteria::ExtensionScenario;
use crate::error::{Error, Result};
use crate::exactness::{ESideData, ESideDegree};
use crate::linalg::{FpMatrix, FpVector, PrimeField};
use crate::module::CyclicGroupModule;
use crate::ring::{RingModel, TableRingModel};

use super::{
    build_free_example, build_henselian_example, build_mixed_infinite_example,
    build_trivial_example, standard_realization, MixedVariant,
};

/// 2-adic Hilbert symbols on the square classes -1, 2, 5, as `(x, y, value)`
/// with value 1 when the symbol is -1 (the cup product is nonzero). Generated
/// by `tools/q2_hilbert_oracle.py` and checked again by the test suite.
pub const HILBERT_SYMBOLS_Q2: [(i64, i64, u32); 6] = [
    (-1, -1, 1),
    (-1, 2, 0),
    (-1, 5, 0),
    (2, 2, 0),
    (2, 5, 1),
    (5, 5, 0),
];

const Q2_UNITS: [i64; 3] = [-1, 2, 5];

/// H^*(Q_2, F_2): H^1 has basis (-1), (2), (5), H^2 = F_2 and the cup
/// product is the Hilbert symbol.
pub fn q2_ring() -> Result<RingModel> {
    let f = PrimeField::new(2)?;
    let index = |u: i64| Q2_UNITS.iter().position(|&x| x == u).expect("listed unit");
    let mut table = vec![vec![FpVector::zeros(f, 1); 3]; 3];
    for &(x, y, v) in &HILBERT_SYMBOLS_Q2 {
        let value = FpVector::new(f, &[v])?;
        table[index(x)][index(y)] = value.clone();
        table[index(y)][index(x)] = value;
    }
    let mut products = BTreeMap::new();
    products.insert((1, 1), table);
    let labels = vec![
        vec!["1".to_string()],
        Q2_UNITS.iter().map(|u| format!("({u})")).collect(),
        vec!["(-1,-1)".to_string()],
    ];
    Ok(TableRingModel::new(f, "q2", vec![1, 3, 1], products)?
        .with_labels(labels)?
        .into())
}

fn matrix(f: PrimeField, cols: usize, rows: &[&[u32]]) -> Result<FpMatrix> {
    let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
    FpMatrix::from_rows(f, cols, &rows)
}

/// The extension Q_2(√-1)/Q_2 with a committed E side. H^1(E) has basis
/// x1, y1, x2, y2 with σ x_i = x_i + y_i; restriction sends (-1) to 0, (2)
/// to y1 and (5) to y2; the norm sends x1 to (2), x2 to (5) and kills y1,
/// y2. H^0(E) and H^2(E) are one-dimensional and trivial.
pub fn build_q2_fixture() -> Result<(ExtensionScenario, ESideData)> {
    let ring = q2_ring()?;
    let f = ring.field();
    let minus_one = ring.element_from_generator(0)?;
    let scenario = ExtensionScenario::new(ring, minus_one.clone())?
        .with_minus_one(minus_one)?
        .with_sum_of_squares(false)
        .with_name("q2");

    let k0 = ESideDegree::new(
        CyclicGroupModule::trivial(f, 1),
        matrix(f, 1, &[&[1]])?,
        matrix(f, 1, &[&[0]])?,
    )?;
    let sigma1 = matrix(
        f,
        4,
        &[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 1, 1]],
    )?;
    let k1 = ESideDegree::new(
        CyclicGroupModule::new(sigma1)?,
        matrix(f, 3, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0], &[0, 0, 1]])?,
        matrix(f, 4, &[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0]])?,
    )?;
    let k2 = ESideDegree::new(
        CyclicGroupModule::trivial(f, 1),
        matrix(f, 1, &[&[0]])?,
        matrix(f, 1, &[&[1]])?,
    )?;
    let data = ESideData::new(f)
        .with_degree(0, k0)?
        .with_degree(1, k1)?
        .with_degree(2, k2)?;
    Ok((scenario, data))
}

/// The Q_2 fixture with the class of -1 replaced by 0. This breaks the
/// identity a ∪ a = a ∪ (-1), so the characterizations of freeness no
/// longer agree.
pub fn corrupted_q2_fixture() -> Result<ExtensionScenario> {
    let (s, _) = build_q2_fixture()?;
    let zero = s.ring().zero(1);
    Ok(s.with_minus_one(zero)?.with_name("q2_corrupted"))
}

pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    build: fn() -> Result<(ExtensionScenario, Option<ESideData>)>,
}

impl Fixture {
    pub fn build(&self) -> Result<(ExtensionScenario, Option<ESideData>)> {
        (self.build)()
    }
}

fn with_realization(s: ExtensionScenario) -> Result<(ExtensionScenario, Option<ESideData>)> {
    let top = s.degree_cap();
    let d = standard_realization(&s, top)?;
    Ok((s, Some(d)))
}

pub fn fixture_catalogue() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "q2",
            description: "Q_2 with a = -1: H^1(E) free, H^2(E) trivial, not free",
            build: || build_q2_fixture().map(|(s, d)| (s, Some(d))),
        },
        Fixture {
            name: "q2_corrupted",
            description: "Q_2 table with the class of -1 zeroed; equivalent conditions disagree",
            build: || Ok((corrupted_q2_fixture()?, None)),
        },
        Fixture {
            name: "free_p3_n2_m4",
            description: "free product of exterior(2) and exterior(4), a on the left, p = 3",
            build: || with_realization(build_free_example(3, 2, 4)?),
        },
        Fixture {
            name: "trivial_p2_n1_m3",
            description: "free product of exterior(1) and exterior(3), a on the right, p = 2",
            build: || with_realization(build_trivial_example(2, 1, 3)?),
        },
        Fixture {
            name: "henselian_p2_cap8",
            description: "exterior algebra on infinitely many generators, truncated at 8, p = 2",
            build: || Ok((build_henselian_example(2, 8)?, None)),
        },
        Fixture {
            name: "mixed_free_p3_n2_cap6",
            description: "exterior(2) * infinite exterior, a in the finite factor, p = 3",
            build: || Ok((build_mixed_infinite_example(3, 2, 6, MixedVariant::Free)?, None)),
        },
        Fixture {
            name: "mixed_trivial_p3_n2_cap6",
            description: "exterior(2) * infinite exterior, a in the infinite factor, p = 3",
            build: || Ok((build_mixed_infinite_example(3, 2, 6, MixedVariant::Trivial)?, None)),
        },
    ]
}

pub fn find_fixture(name: &str) -> Result<Fixture> {
    fixture_catalogue()
        .into_iter()
        .find(|fx| fx.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{evaluate, hereditary_check, Invariant};
    use crate::exactness::verify_all;

    #[test]
    fn q2_products() {
        let r = q2_ring().unwrap();
        let g: Vec<_> = (0..3).map(|i| r.element_from_generator(i).unwrap()).collect();
        assert_eq!(r.cup(&g[0], &g[0]).unwrap().coords().entries(), &[1]);
        assert_eq!(r.cup(&g[1], &g[2]).unwrap().coords().entries(), &[1]);
        assert!(r.cup(&g[0], &g[1]).unwrap().is_zero());
        assert_eq!(r.annihilator(&g[0], 1).unwrap().dim(), 2);
        assert!(r.cup_image(&g[0], 2).unwrap().is_full());
    }

    #[test]
    fn q2_verdicts() {
        let (s, d) = build_q2_fixture().unwrap();
        let rep = evaluate(&s).unwrap();
        let free: Vec<bool> = rep.verdicts.iter().map(|v| v.free).collect();
        let trivial: Vec<bool> = rep.verdicts.iter().map(|v| v.trivial).collect();
        assert_eq!(free, vec![true, false, true]);
        assert_eq!(trivial, vec![false, true, true]);
        assert_eq!(rep.cf, Invariant::Finite { value: 2 });
        assert_eq!(rep.ct, Invariant::Finite { value: 1 });
        let her = hereditary_check(&s, &rep).unwrap();
        assert!(her.passed());
        assert_eq!(her.permitted_free_violations(), &[2]);
        assert!(d.degree(1).unwrap().module.is_free());
        assert!(d.degree(2).unwrap().module.is_trivial());
        assert!(verify_all(&s, &d).unwrap().passed());
    }

    #[test]
    fn catalogue_builds() {
        for fx in fixture_catalogue() {
            let (s, d) = fx.build().unwrap();
            if let Some(d) = d {
                assert!(verify_all(&s, &d).unwrap().passed(), "{}", fx.name);
            }
        }
        assert!(find_fixture("nope").is_err());
    }
}

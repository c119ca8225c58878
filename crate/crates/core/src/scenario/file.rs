//! JSON input formats. Every file carries a `schema` tag.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::criteria::ExtensionScenario;
use crate::error::{Error, Result};
use crate::exactness::{ESideData, ESideDegree, LinearChain};
use crate::linalg::{FpMatrix, FpVector, PrimeField};
use crate::module::CyclicGroupModule;
use crate::ring::{DirectSumRingModel, RingModel};

use super::fixtures::{build_q2_fixture, q2_ring};
use super::standard_realization;

pub const SCENARIO_SCHEMA: &str = "galcoh.scenario/1";
pub const ESIDE_SCHEMA: &str = "galcoh.eside/1";
pub const MODULE_SCHEMA: &str = "galcoh.module/1";
pub const CHAIN_SCHEMA: &str = "galcoh.chain/1";

/// The ring model of H^*(F).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    Exterior { m: usize },
    TruncatedInfinite { cap: usize },
    DirectSum { m1: usize, m2: usize },
    DirectSumOf { left: Box<ModelSpec>, right: Box<ModelSpec> },
    Table { fixture: String },
}

impl ModelSpec {
    pub fn build(&self, field: PrimeField) -> Result<RingModel> {
        match self {
            ModelSpec::Exterior { m } => RingModel::exterior(field, *m),
            ModelSpec::TruncatedInfinite { cap } => RingModel::truncated_infinite(field, *cap),
            ModelSpec::DirectSum { m1, m2 } => RingModel::direct_sum(
                RingModel::exterior(field, *m1)?,
                RingModel::exterior(field, *m2)?,
            ),
            ModelSpec::DirectSumOf { left, right } => {
                RingModel::direct_sum(left.build(field)?, right.build(field)?)
            }
            ModelSpec::Table { fixture } if fixture == "q2" => {
                if !field.is_two() {
                    return Err(Error::InvalidScenario("the q2 table is defined over F_2".into()));
                }
                q2_ring()
            }
            ModelSpec::Table { fixture } => Err(Error::UnknownFixture(fixture.clone())),
        }
    }

    pub fn describe(ring: &RingModel) -> Result<ModelSpec> {
        Ok(match ring {
            RingModel::Exterior(r) if r.is_unbounded() => {
                ModelSpec::TruncatedInfinite { cap: r.generators() }
            }
            RingModel::Exterior(r) => ModelSpec::Exterior { m: r.generators() },
            RingModel::DirectSum(s) => match (s.left(), s.right()) {
                (RingModel::Exterior(l), RingModel::Exterior(r))
                    if !l.is_unbounded() && !r.is_unbounded() =>
                {
                    ModelSpec::DirectSum {
                        m1: l.generators(),
                        m2: r.generators(),
                    }
                }
                (l, r) => ModelSpec::DirectSumOf {
                    left: Box::new(Self::describe(l)?),
                    right: Box::new(Self::describe(r)?),
                },
            },
            RingModel::Table(t) => ModelSpec::Table {
                fixture: t.name().to_string(),
            },
        })
    }
}

/// A degree-one class: explicit coordinates or a named generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AClassSpec {
    Coordinates(Vec<u32>),
    Symbolic(String),
}

impl AClassSpec {
    fn resolve(&self, ring: &RingModel) -> Result<crate::ring::RingElement> {
        match self {
            AClassSpec::Coordinates(c) => {
                if c.len() != ring.h_dim(1) {
                    return Err(Error::Input(format!(
                        "class has {} coordinates but H^1 has dimension {}",
                        c.len(),
                        ring.h_dim(1)
                    )));
                }
                ring.element(1, FpVector::new(ring.field(), c)?)
            }
            AClassSpec::Symbolic(name) => {
                let sum = |ring: &RingModel| -> Result<DirectSumRingModel> {
                    match ring {
                        RingModel::DirectSum(s) => Ok(s.clone()),
                        _ => Err(Error::Input(format!("'{name}' needs a direct-sum model"))),
                    }
                };
                match name.as_str() {
                    "first_generator" => ring.element_from_generator(0),
                    "left_generator" => sum(ring)?.left_generator(0),
                    "right_generator" => sum(ring)?.right_generator(0),
                    other => Err(Error::Input(format!(
                        "unknown class '{other}' (expected coordinates, first_generator, \
                         left_generator or right_generator)"
                    ))),
                }
            }
        }
    }
}

/// Where the E-side data comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ESideSpec {
    Fixture(String),
    /// Build the standard realization through this degree.
    StandardRealization { max_degree: usize },
    Path(PathBuf),
    Inline(ESideFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ESideDegreeFile {
    pub degree: usize,
    pub sigma: Vec<Vec<u32>>,
    /// dim H^n(E) rows, dim H^n(F) columns.
    pub inclusion: Vec<Vec<u32>>,
    /// dim H^n(F) rows, dim H^n(E) columns.
    pub norm: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ESideFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub degrees: Vec<ESideDegreeFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<u32>>,
}

fn matrix_from(field: PrimeField, rows: usize, cols: usize, data: &[Vec<u32>], what: &str) -> Result<FpMatrix> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::Input(format!("{what} must be {rows}x{cols}")));
    }
    FpMatrix::from_rows(field, cols, data)
}

impl ESideFile {
    pub fn build(&self, field: PrimeField, ring: &RingModel) -> Result<ESideData> {
        let mut data = ESideData::new(field);
        for d in &self.degrees {
            let e = d.sigma.len();
            let h = ring.h_dim(d.degree);
            let n = d.degree;
            let sigma = matrix_from(field, e, e, &d.sigma, &format!("sigma in degree {n}"))?;
            let inclusion = matrix_from(field, e, h, &d.inclusion, &format!("inclusion in degree {n}"))?;
            let norm = matrix_from(field, h, e, &d.norm, &format!("norm in degree {n}"))?;
            data.insert(n, ESideDegree::new(CyclicGroupModule::new(sigma)?, inclusion, norm)?)?;
        }
        if let Some(delta) = &self.delta {
            data = data.with_delta(FpVector::new(field, delta)?)?;
        }
        Ok(data)
    }

    pub fn from_data(data: &ESideData) -> ESideFile {
        ESideFile {
            schema: Some(ESIDE_SCHEMA.to_string()),
            degrees: data
                .degrees()
                .map(|(n, d)| ESideDegreeFile {
                    degree: n,
                    sigma: d.module.sigma().to_rows(),
                    inclusion: d.inclusion.to_rows(),
                    norm: d.norm.to_rows(),
                })
                .collect(),
            delta: data.delta().map(FpVector::to_u32),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub p: u32,
    pub model: ModelSpec,
    pub a_class: AClassSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi_class: Option<AClassSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus_one_class: Option<AClassSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sum_of_squares: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eside: Option<ESideSpec>,
}

pub struct LoadedScenario {
    pub scenario: ExtensionScenario,
    pub eside: Option<ESideData>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        let message = message.rsplit_once(" at line ").map_or(message.as_str(), |(m, _)| m);
        Error::Input(format!("{origin}: line {}, column {}: {message}", e.line(), e.column()))
    })
}

fn check_schema(found: Option<&str>, expected: &str) -> Result<()> {
    match found {
        Some(s) if s != expected => Err(Error::Input(format!(
            "schema '{s}' is not supported, expected '{expected}'"
        ))),
        _ => Ok(()),
    }
}

impl ScenarioFile {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let file: ScenarioFile = parse(text, origin)?;
        check_schema(Some(&file.schema), SCENARIO_SCHEMA)?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<LoadedScenario> {
        let text = read(path)?;
        let file = Self::parse(&text, &path.display().to_string())?;
        file.build(path.parent())
    }

    /// Builds the scenario; relative E-side paths resolve against `base`.
    pub fn build(&self, base: Option<&Path>) -> Result<LoadedScenario> {
        let field = PrimeField::new(self.p).map_err(|e| Error::Input(e.to_string()))?;
        let ring = self.model.build(field)?;
        let a = self.a_class.resolve(&ring)?;
        let mut s = ExtensionScenario::new(ring.clone(), a)?;
        if let Some(name) = &self.name {
            s = s.with_name(name.clone());
        }
        if let Some(xi) = &self.xi_class {
            s = s.with_xi(xi.resolve(&ring)?)?;
        }
        if let Some(m1) = &self.minus_one_class {
            let m1 = m1.resolve(&ring)?;
            if field.is_two() && self.xi_class.is_some() && *s.xi_class() != m1 {
                return Err(Error::Input(
                    "at p = 2, xi_class and minus_one_class are the same class and must agree".into(),
                ));
            }
            s = s.with_minus_one(m1)?;
        }
        if let Some(flag) = self.sum_of_squares {
            s = s.with_sum_of_squares(flag);
        }
        if let Some(cap) = self.degree_cap {
            s = s.with_degree_cap(cap)?;
        }
        let eside = match &self.eside {
            None => None,
            Some(ESideSpec::Fixture(name)) if name == "q2" => Some(build_q2_fixture()?.1),
            Some(ESideSpec::Fixture(name)) => return Err(Error::UnknownFixture(name.clone())),
            Some(ESideSpec::StandardRealization { max_degree }) => {
                Some(standard_realization(&s, *max_degree)?)
            }
            Some(ESideSpec::Path(p)) => {
                let full = base.map_or_else(|| p.clone(), |b| b.join(p));
                let text = read(&full)?;
                let file: ESideFile = parse(&text, &full.display().to_string())?;
                check_schema(file.schema.as_deref(), ESIDE_SCHEMA)?;
                Some(file.build(field, &ring)?)
            }
            Some(ESideSpec::Inline(file)) => Some(file.build(field, &ring)?),
        };
        if let Some(d) = &eside {
            d.check_against(&s)?;
        }
        Ok(LoadedScenario { scenario: s, eside })
    }

    /// File describing `s` with explicit coordinates for every class.
    pub fn from_scenario(s: &ExtensionScenario) -> Result<Self> {
        let coords = |x: &crate::ring::RingElement| AClassSpec::Coordinates(x.coords().to_u32());
        Ok(ScenarioFile {
            schema: SCENARIO_SCHEMA.to_string(),
            name: Some(s.name().to_string()),
            p: s.field().p(),
            model: ModelSpec::describe(s.ring())?,
            a_class: coords(s.a_class()),
            xi_class: Some(coords(s.xi_class())),
            minus_one_class: Some(coords(s.minus_one_class())),
            sum_of_squares: Some(s.sum_of_squares()),
            degree_cap: Some(s.degree_cap()),
            eside: None,
        })
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("scenario files serialize");
        out.push('\n');
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub schema: String,
    pub p: u32,
    pub sigma: Vec<Vec<u32>>,
    /// Vectors whose cyclic submodule lengths are reported.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vectors: Vec<Vec<u32>>,
}

impl ModuleFile {
    pub fn load(path: &Path) -> Result<Self> {
        let file: ModuleFile = parse(&read(path)?, &path.display().to_string())?;
        check_schema(Some(&file.schema), MODULE_SCHEMA)?;
        Ok(file)
    }

    pub fn build(&self) -> Result<(CyclicGroupModule, Vec<FpVector>)> {
        let field = PrimeField::new(self.p).map_err(|e| Error::Input(e.to_string()))?;
        let n = self.sigma.len();
        let sigma = matrix_from(field, n, n, &self.sigma, "sigma")?;
        let module = CyclicGroupModule::new(sigma).map_err(|e| Error::Input(e.to_string()))?;
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                if v.len() != n {
                    return Err(Error::Input(format!("vector of length {} in a module of dimension {n}", v.len())));
                }
                FpVector::new(field, v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((module, vectors))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub schema: String,
    pub p: u32,
    /// Space dimensions; needed when some map has no rows or no columns.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    pub maps: Vec<Vec<Vec<u32>>>,
}

impl ChainFile {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let file: ChainFile = parse(text, origin)?;
        check_schema(Some(&file.schema), CHAIN_SCHEMA)?;
        Ok(file)
    }

    pub fn build(&self) -> Result<LinearChain> {
        let field = PrimeField::new(self.p).map_err(|e| Error::Input(e.to_string()))?;
        let dims = match &self.dims {
            Some(d) => d.clone(),
            None => {
                let mut dims = Vec::new();
                for (i, m) in self.maps.iter().enumerate() {
                    let cols = m.first().map(Vec::len).ok_or_else(|| {
                        Error::Input(format!("map {i} is empty; give the dimensions explicitly"))
                    })?;
                    if i == 0 {
                        dims.push(cols);
                    }
                    dims.push(m.len());
                }
                dims
            }
        };
        if dims.len() != self.maps.len() + 1 {
            return Err(Error::Input(format!(
                "{} maps need {} dimensions, got {}",
                self.maps.len(),
                self.maps.len() + 1,
                dims.len()
            )));
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_from(field, dims[i + 1], dims[i], m, &format!("map {i}")))
            .collect::<Result<Vec<_>>>()?;
        LinearChain::new(field, dims, maps).map_err(|e| Error::Input(e.to_string()))
    }
}

/// The `schema` tag of a JSON document, if it has one.
pub fn schema_of(text: &str, origin: &str) -> Result<Option<String>> {
    let v: serde_json::Value = parse(text, origin)?;
    Ok(v.get("schema").and_then(|s| s.as_str()).map(str::to_string))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::evaluate;
    use crate::scenario::{build_free_example, build_henselian_example};

    #[test]
    fn round_trip_preserves_verdicts() {
        for s in [build_free_example(3, 2, 4).unwrap(), build_henselian_example(2, 6).unwrap()] {
            let text = ScenarioFile::from_scenario(&s).unwrap().to_json();
            let back = ScenarioFile::parse(&text, "mem").unwrap().build(None).unwrap().scenario;
            assert_eq!(back, s);
            assert_eq!(evaluate(&back).unwrap(), evaluate(&s).unwrap());
        }
    }

    #[test]
    fn symbolic_classes() {
        let text = r#"{"schema": "galcoh.scenario/1", "p": 3,
            "model": {"kind": "direct_sum", "m1": 2, "m2": 4}, "a_class": "right_generator"}"#;
        let s = ScenarioFile::parse(text, "mem").unwrap().build(None).unwrap().scenario;
        assert_eq!(s.a_class().coords().to_u32(), vec![0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn p2_classes_must_agree() {
        let text = r#"{"schema": "galcoh.scenario/1", "p": 2, "model": {"kind": "exterior", "m": 2},
            "a_class": [1, 0], "xi_class": [0, 1], "minus_one_class": [1, 0]}"#;
        let err = ScenarioFile::parse(text, "mem").unwrap().build(None).err().expect("disagreeing classes");
        assert!(err.to_string().contains("must agree"), "{err}");
    }

    #[test]
    fn malformed_inputs() {
        let wrong_len = r#"{"schema": "galcoh.scenario/1", "p": 2,
            "model": {"kind": "exterior", "m": 3}, "a_class": [1, 0]}"#;
        assert!(matches!(
            ScenarioFile::parse(wrong_len, "mem").unwrap().build(None),
            Err(Error::Input(_))
        ));
        let both = r#"{"schema": "galcoh.scenario/1", "p": 2,
            "model": {"kind": "exterior", "m": 3, "cap": 4}, "a_class": [1, 0, 0]}"#;
        assert!(ScenarioFile::parse(both, "mem").is_err());
        let err = ScenarioFile::parse("{\n  \"p\": ", "mem").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn chain_dims_inferred() {
        let text = r#"{"schema": "galcoh.chain/1", "p": 2, "maps": [[[1, 0], [0, 1]], [[1, 1]]]}"#;
        let chain = ChainFile::parse(text, "mem").unwrap().build().unwrap();
        assert_eq!(chain.dims(), &[2, 2, 1]);
    }
}

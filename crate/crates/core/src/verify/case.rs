use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::FpAbGroup;
use crate::complex::{ChainMap, ComplexDocument, FpChainComplex, MapDocument};
use crate::error::{Error, Result};
use crate::linalg::Int;
use crate::random::{seeded, SeededRng};

/// Everything a case needs to run again.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseInput {
    pub complexes: Vec<ComplexDocument>,
    #[serde(default)]
    pub maps: Vec<MapDocument>,
    #[serde(default)]
    pub params: Vec<i64>,
    #[serde(serialize_with = "as_string", deserialize_with = "from_string")]
    pub salt: u64,
}

fn as_string<S: Serializer>(x: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn from_string<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<u64, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

impl CaseInput {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn complex(mut self, name: &str, c: &FpChainComplex) -> Self {
        self.complexes.push(ComplexDocument::from_complex(name, c));
        self
    }

    /// `f` between complexes already added at `source` and `target`.
    pub fn map(mut self, source: usize, target: usize, f: &ChainMap) -> Self {
        self.maps.push(MapDocument::from_map(source, target, f));
        self
    }

    pub fn params(mut self, p: &[i64]) -> Self {
        self.params.extend_from_slice(p);
        self
    }

    pub fn load_complexes(&self) -> Result<Vec<FpChainComplex>> {
        self.complexes.iter().map(ComplexDocument::to_complex).collect()
    }

    pub fn load_maps(&self, cs: &[FpChainComplex]) -> Result<Vec<ChainMap>> {
        self.maps.iter().map(|m| m.to_map(cs)).collect()
    }

    pub fn param(&self, k: usize) -> Result<i64> {
        self.params
            .get(k)
            .copied()
            .ok_or_else(|| Error::Parse(format!("case is missing parameter {k}")))
    }

    pub fn rng(&self) -> SeededRng {
        seeded(self.salt)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub property: String,
    pub required: bool,
    pub passed: bool,
    pub lhs: String,
    pub rhs: String,
    pub context: String,
}

/// Collects outcomes for one case.
#[derive(Debug, Default)]
pub struct Checker {
    pub outcomes: Vec<Outcome>,
}

pub fn show(x: &[Int]) -> String {
    let parts: Vec<String> = x.iter().map(Int::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn show_in(x: &[Int], g: &FpAbGroup) -> String {
    format!("{} in {}", show(x), g.describe())
}

impl Checker {
    fn push(&mut self, property: &str, required: bool, passed: bool, lhs: String, rhs: String, context: String) {
        self.outcomes.push(Outcome {
            property: property.to_string(),
            required,
            passed,
            lhs,
            rhs,
            context,
        });
    }

    pub fn pass(&mut self, property: &str) {
        self.push(property, true, true, String::new(), String::new(), String::new());
    }

    pub fn fail(&mut self, property: &str, context: String, lhs: String, rhs: String) {
        self.push(property, true, false, lhs, rhs, context);
    }

    /// Records a flag; `context` is only built on failure.
    pub fn flag(&mut self, property: &str, ok: bool, context: impl FnOnce() -> String) {
        if ok {
            self.pass(property);
        } else {
            self.fail(property, context(), String::new(), String::new());
        }
    }

    /// Records `lhs = rhs` in `g`.
    pub fn equal(&mut self, property: &str, g: &FpAbGroup, lhs: &[Int], rhs: &[Int], context: impl FnOnce() -> String) {
        if g.eq_elements(lhs, rhs) {
            self.pass(property);
        } else {
            self.fail(property, context(), show_in(lhs, g), show_in(rhs, g));
        }
    }

    /// A library call that should succeed; an error fails `property`.
    pub fn ok<T>(&mut self, property: &str, r: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(x) => {
                self.pass(property);
                Some(x)
            }
            Err(e) => {
                self.fail(property, format!("{}: {e}", context()), String::new(), String::new());
                None
            }
        }
    }

    /// Counted, but never fails the run.
    pub fn info(&mut self, property: &str, ok: bool, context: impl FnOnce() -> String) {
        let ctx = if ok { String::new() } else { context() };
        self.push(property, false, ok, String::new(), String::new(), ctx);
    }
}

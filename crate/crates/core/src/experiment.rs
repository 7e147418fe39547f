//! Experiment files.
//!
//! An experiment is a TOML document:
//!
//! ```toml
//! name = "holder-uniform"
//! measure = { kind = "UniformSym" }
//! sequence = { kind = "PowerLaw", decay = 2.0 }
//! target = { kind = "FractionalWiener", beta = 0.5 }
//! k_grid = [1, 2, 4, 8]
//! outputs = ["table", "json", "plotdata"]
//!
//! [mc]
//! samples = 10000
//! ref_level = 10000
//! seed = 7
//!
//! [bounds]
//! sup_mode = "Bounded"          # or "Unbounded"
//! hermite_mode = "BoundedExp"   # or "SplitExp"
//!
//! [constants]
//! m_max = 8
//! r_max = 8
//! ```
//!
//! A target with a `kind` key is a kernel; `{ constant = C, beta = β }` is a
//! Hölder class. `mc.ref_level` defaults to 10⁵ for power laws and to the list
//! length (at least `max(k_grid) + 1`) for finite lists.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundOptions, HermiteMode, HolderClass, SupMode, Target};
use crate::coefficients::CoefficientSequence;
use crate::error::{Error, Result};
use crate::estimators::{McConfig, DEFAULT_REF_LEVEL};
use crate::kernels::{Kernel, KernelSpec};
use crate::measures::MeasureSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Table,
    Json,
    Plotdata,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMc {
    #[serde(default = "default_samples")]
    samples: usize,
    ref_level: Option<usize>,
    #[serde(default)]
    seed: u64,
}

fn default_samples() -> usize {
    10_000
}

impl Default for RawMc {
    fn default() -> Self {
        Self {
            samples: default_samples(),
            ref_level: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBounds {
    #[serde(default = "default_sup_mode")]
    sup_mode: SupMode,
    #[serde(default = "default_hermite_mode")]
    hermite_mode: HermiteMode,
}

fn default_sup_mode() -> SupMode {
    SupMode::Bounded
}

fn default_hermite_mode() -> HermiteMode {
    HermiteMode::BoundedExp
}

impl Default for RawBounds {
    fn default() -> Self {
        Self {
            sup_mode: default_sup_mode(),
            hermite_mode: default_hermite_mode(),
        }
    }
}

/// Orders printed by the `constants` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsSection {
    #[serde(default = "default_order")]
    pub m_max: u32,
    #[serde(default = "default_order")]
    pub r_max: u32,
}

fn default_order() -> u32 {
    8
}

impl Default for ConstantsSection {
    fn default() -> Self {
        Self {
            m_max: default_order(),
            r_max: default_order(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExperiment {
    #[serde(default = "default_name")]
    name: String,
    measure: MeasureSpec,
    sequence: CoefficientSequence,
    target: Option<toml::Table>,
    #[serde(default)]
    k_grid: Vec<usize>,
    #[serde(default)]
    mc: RawMc,
    #[serde(default)]
    bounds: RawBounds,
    #[serde(default)]
    constants: ConstantsSection,
    #[serde(default = "default_outputs")]
    outputs: Vec<OutputKind>,
}

fn default_name() -> String {
    "experiment".into()
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Table]
}

/// A validated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub name: String,
    pub measure: MeasureSpec,
    pub sequence: CoefficientSequence,
    pub target: Option<Target>,
    pub k_grid: Vec<usize>,
    pub samples: usize,
    pub ref_level: usize,
    pub seed: u64,
    pub bounds: BoundOptions,
    pub constants: ConstantsSection,
    pub outputs: Vec<OutputKind>,
}

fn parse_target(table: toml::Table) -> Result<Target> {
    let value = toml::Value::Table(table);
    if value.get("kind").is_some() {
        let spec: KernelSpec = value
            .try_into()
            .map_err(|e| Error::Parse(format!("target: {e}")))?;
        Kernel::new(spec.clone()).map_err(|e| Error::Parse(format!("target: {e}")))?;
        Ok(Target::Kernel(spec))
    } else {
        let h: HolderClass = value
            .try_into()
            .map_err(|e| Error::Parse(format!("target: {e}")))?;
        h.validate().map_err(|e| Error::Parse(format!("target: {e}")))?;
        Ok(Target::Holder(h))
    }
}

impl ExperimentSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawExperiment = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let invalid = |what: &str, e: Error| Error::Parse(format!("{what}: {e}"));
        raw.measure.validate().map_err(|e| invalid("measure", e))?;
        raw.sequence.validate().map_err(|e| invalid("sequence", e))?;
        let target = raw.target.map(parse_target).transpose()?;
        let kmax = raw.k_grid.iter().copied().max().unwrap_or(0);
        let ref_level = raw.mc.ref_level.unwrap_or(match raw.sequence.support_len() {
            Some(n) => n.max(kmax + 1),
            None => DEFAULT_REF_LEVEL,
        });
        let spec = Self {
            name: raw.name,
            measure: raw.measure,
            sequence: raw.sequence,
            target,
            k_grid: raw.k_grid,
            samples: raw.mc.samples,
            ref_level,
            seed: raw.mc.seed,
            bounds: BoundOptions {
                sup_mode: raw.bounds.sup_mode,
                hermite_mode: raw.bounds.hermite_mode,
            },
            constants: raw.constants,
            outputs: raw.outputs,
        };
        if !spec.k_grid.is_empty() {
            spec.mc_config(1).map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn mc_config(&self, workers: usize) -> Result<McConfig> {
        Ok(McConfig::new(self.samples, self.ref_level, self.seed, self.k_grid.clone())?.with_workers(workers))
    }

    pub fn require_target(&self) -> Result<&Target> {
        self.target
            .as_ref()
            .ok_or_else(|| Error::Parse("experiment has no target".into()))
    }

    pub fn require_grid(&self) -> Result<&[usize]> {
        if self.k_grid.is_empty() {
            return Err(Error::Parse("experiment has an empty k_grid".into()));
        }
        Ok(&self.k_grid)
    }

    pub fn wants(&self, kind: OutputKind) -> bool {
        self.outputs.contains(&kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = r#"
name = "demo"
measure = { kind = "UniformSym" }
sequence = { kind = "PowerLaw", decay = 2.0 }
target = { kind = "Korobov", weight = { kind = "GeometricDecay", q = 0.5 } }
k_grid = [1, 2, 4]
outputs = ["table", "json"]

[mc]
samples = 1000
ref_level = 500
seed = 9

[bounds]
sup_mode = "Unbounded"
"#;

    #[test]
    fn parses_full_file() {
        let e = ExperimentSpec::parse(FULL).unwrap();
        assert_eq!(e.name, "demo");
        assert_eq!(e.k_grid, vec![1, 2, 4]);
        assert_eq!((e.samples, e.ref_level, e.seed), (1000, 500, 9));
        assert_eq!(e.bounds.sup_mode, SupMode::Unbounded);
        assert_eq!(e.bounds.hermite_mode, HermiteMode::BoundedExp);
        assert!(matches!(e.target, Some(Target::Kernel(KernelSpec::Korobov { .. }))));
        assert!(e.wants(OutputKind::Json) && !e.wants(OutputKind::Plotdata));
        assert_eq!(e.constants, ConstantsSection::default());
    }

    #[test]
    fn holder_target_and_defaults() {
        let e = ExperimentSpec::parse(
            "measure = { kind = \"Uniform01\" }\nsequence = { kind = \"FiniteList\", values = [1.0, 0.5] }\ntarget = { constant = 2.0, beta = 0.5 }\nk_grid = [1, 2, 3]\n",
        )
        .unwrap();
        assert_eq!(e.target, Some(Target::Holder(HolderClass { constant: 2.0, beta: 0.5 })));
        assert_eq!(e.ref_level, 4);
        assert_eq!(e.outputs, vec![OutputKind::Table]);
        let p = ExperimentSpec::parse("measure = { kind = \"Uniform01\" }\nsequence = { kind = \"PowerLaw\", decay = 3.0 }\n").unwrap();
        assert_eq!(p.ref_level, DEFAULT_REF_LEVEL);
        assert!(p.require_target().is_err() && p.require_grid().is_err());
    }

    #[test]
    fn rejects_invalid_files() {
        let bad = [
            "measure = { kind = \"Cauchy\" }\nsequence = { kind = \"PowerLaw\", decay = 2.0 }",
            "measure = { kind = \"Uniform01\" }\nsequence = { kind = \"PowerLaw\", decay = 1.0 }",
            "measure = { kind = \"Exponential\", scale = -1.0 }\nsequence = { kind = \"PowerLaw\", decay = 2.0 }",
            "measure = { kind = \"Uniform01\" }\nsequence = { kind = \"PowerLaw\", decay = 2.0 }\ntarget = { kind = \"FractionalWiener\", beta = 1.5 }",
            "measure = { kind = \"Uniform01\" }\nsequence = { kind = \"PowerLaw\", decay = 2.0 }\ntarget = { constant = 1.0 }",
            "measure = { kind = \"Uniform01\" }\nsequence = { kind = \"PowerLaw\", decay = 2.0 }\nk_grid = [4, 2]",
            "measure = { kind = \"Uniform01\" }\nsequence = { kind = \"PowerLaw\", decay = 2.0 }\nk_grid = [20]\n[mc]\nref_level = 10",
            "measure = { kind = \"Uniform01\" }\nsequence = { kind = \"PowerLaw\", decay = 2.0 }\ncolour = 3",
            "measure = ",
        ];
        for text in bad {
            assert!(matches!(ExperimentSpec::parse(text), Err(Error::Parse(_))), "{text}");
        }
    }
}

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::spherical::PerpConvention;
use crate::surface::ElementRef;

/// A job: command, parameters and run settings.
///
/// ```json
/// {"command": "enumerate", "parameters": {"group": "Z/2", "g": 1}, "seed": 0}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobConfig {
    #[serde(flatten)]
    pub job: Job,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    /// Orbit states, or candidate handle assignments for bounded lifts.
    pub nodes: Option<u64>,
    /// Word length cap for bounded lifts.
    pub length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "parameters", rename_all = "snake_case")]
pub enum Job {
    Enumerate(EnumerateParams),
    Orbits(OrbitsParams),
    Schur(SchurParams),
    Lift(LiftParams),
    Spherical(SphericalParams),
    Neretin(NeretinParams),
    Probe(ProbeParams),
}

impl Job {
    pub fn name(&self) -> &'static str {
        match self {
            Job::Enumerate(_) => "enumerate",
            Job::Orbits(_) => "orbits",
            Job::Schur(_) => "schur",
            Job::Lift(_) => "lift",
            Job::Spherical(_) => "spherical",
            Job::Neretin(_) => "neretin",
            Job::Probe(_) => "probe",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnumerateParams {
    pub group: String,
    pub g: usize,
    #[serde(default)]
    pub m: usize,
    /// One conjugacy class (by any member) per puncture.
    #[serde(default)]
    pub classes: Option<Vec<ElementRef>>,
    #[serde(default)]
    pub surjective: bool,
    #[serde(default)]
    pub transitive: bool,
    /// Include every tuple in the payload.
    #[serde(default)]
    pub list: bool,
}

/// Either the orbit of one monodromy, or the orbit partition of all tuples of a shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitsParams {
    #[serde(default)]
    pub monodromy: Option<PathBuf>,
    #[serde(default)]
    pub group: Option<String>,
    #[serde(default)]
    pub g: Option<usize>,
    #[serde(default)]
    pub m: usize,
    #[serde(default)]
    pub classes: Option<Vec<ElementRef>>,
    #[serde(default)]
    pub surjective: bool,
    /// Also identify tuples related by automorphisms of the target.
    #[serde(default)]
    pub automorphisms: bool,
    /// Overrides the cache directory environment variable.
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchurParams {
    pub monodromy: PathBuf,
    /// A shipped cover name, `identity`, `auto`, or a path to a stem-extension file.
    #[serde(default = "auto")]
    pub cover: String,
}

fn auto() -> String {
    "auto".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftParams {
    pub monodromy: PathBuf,
    /// `bn1` or `bn:len=<k>`.
    #[serde(default = "bn1")]
    pub level: String,
    /// JSON list of peripheral targets, one per puncture.
    #[serde(default)]
    pub peripheral: Option<PathBuf>,
}

fn bn1() -> String {
    "bn1".into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SphericalAction {
    Separate,
    Wielandt,
    Irreps,
    Frobenius,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphericalParams {
    pub action: SphericalAction,
    pub group: String,
    #[serde(default)]
    pub k: Option<usize>,
    /// Genus, for the Frobenius count.
    #[serde(default)]
    pub g: Option<usize>,
    #[serde(default)]
    pub x: Vec<ElementRef>,
    #[serde(default)]
    pub y: Vec<ElementRef>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NeretinParams {
    /// JSON list of 3-strand braid words `{"n": 3, "word": [...]}`.
    pub braids: PathBuf,
    pub theta: f64,
    /// Value of every pair variable `x_st`, `s < t`.
    pub x: f64,
    pub y: f64,
    #[serde(default)]
    pub convention: PerpConvention,
    /// Also evaluate the tensor series truncated at this spin.
    #[serde(default)]
    pub series_spin: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeParams {
    pub braid: BraidWord,
    /// `sym`, `burau:p=5,k=4` or `ab:N=2`.
    pub quotient: String,
}

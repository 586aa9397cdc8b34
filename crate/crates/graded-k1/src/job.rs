//! Job files: one TOML document describing a ring, a family and one computation.

use std::fmt;
use std::sync::Arc;

use graded_k1_core::engine::{EngineConfig, Strategy};
use graded_k1_core::{ElementaryGenerator, GradeElement, GradeGroup, GradedIdeal, GradedMatrix, GradedRing, ShiftFamily};
use serde::{Deserialize, Serialize};

use crate::error::JobError;
use crate::literal::{ElementaryLiteral, GradeLiteral, IdealSpec, MatrixLiteral};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyIdentities,
    K1,
    RelativeK1,
    Exactness,
    Perfectness,
    GammaAction,
    Stabilization,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyIdentities => "verify-identities",
            Command::K1 => "k1",
            Command::RelativeK1 => "relative-k1",
            Command::Exactness => "exactness",
            Command::Perfectness => "perfectness",
            Command::GammaAction => "gamma-action",
            Command::Stabilization => "stabilization",
        }
    }

    fn needs_ideal(self) -> bool {
        matches!(self, Command::RelativeK1 | Command::Exactness)
    }

    fn needs_finite(self) -> bool {
        !matches!(self, Command::VerifyIdentities)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyName {
    #[default]
    Exhaustive,
    Chain,
    Auto,
}

impl From<StrategyName> for Strategy {
    fn from(s: StrategyName) -> Self {
        match s {
            StrategyName::Exhaustive => Strategy::Exhaustive,
            StrategyName::Chain => Strategy::StabilizerChain,
            StrategyName::Auto => Strategy::Auto,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default)]
    pub free: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

impl GroupSpec {
    fn build(&self) -> Result<Arc<GradeGroup>, graded_k1_core::Error> {
        GradeGroup::new(self.free, self.torsion.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RingSpec {
    /// `Z/modulus` concentrated in degree 0 of `grading` (default: the trivial group).
    Trivial {
        modulus: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grading: Option<GroupSpec>,
    },
    /// `F_p[x, x⁻¹]` graded by the exponent.
    Laurent { prime: u64 },
    /// `Z/modulus[group]`, graded by `group` unless `graded = false`.
    GroupRing {
        modulus: u64,
        group: GroupSpec,
        #[serde(default = "yes")]
        graded: bool,
    },
    /// `Z/modulus ⊕ I ⊕ I` with `I = ideal·Z/modulus`, graded by `Z/3`.
    PairRing { modulus: u64, ideal: u64 },
}

fn yes() -> bool {
    true
}

impl RingSpec {
    pub fn build(&self) -> Result<Arc<GradedRing>, graded_k1_core::Error> {
        match self {
            RingSpec::Trivial { modulus, grading } => {
                let g = match grading {
                    Some(g) => g.build()?,
                    None => GradeGroup::trivial(),
                };
                GradedRing::trivial(*modulus, g)
            }
            RingSpec::Laurent { prime } => GradedRing::laurent(*prime),
            RingSpec::GroupRing { modulus, group, graded } => GradedRing::group_ring(*modulus, group.build()?, *graded),
            RingSpec::PairRing { modulus, ideal } => GradedRing::pair_ring(*modulus, *ideal),
        }
    }

    /// Short human-readable name.
    pub fn label(&self) -> String {
        fn group(g: &GroupSpec) -> String {
            let mut parts: Vec<String> = (0..g.free).map(|_| "Z".to_string()).collect();
            parts.extend(g.torsion.iter().map(|n| format!("Z/{n}")));
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join(" × ")
            }
        }
        match self {
            RingSpec::Trivial { modulus, grading: None } => format!("Z/{modulus}"),
            RingSpec::Trivial { modulus, grading: Some(g) } => format!("Z/{modulus} graded by {}", group(g)),
            RingSpec::Laurent { prime } => format!("F_{prime}[x, x^-1]"),
            RingSpec::GroupRing { modulus, group: g, graded: true } => format!("Z/{modulus}[{}]", group(g)),
            RingSpec::GroupRing { modulus, group: g, graded: false } => {
                format!("Z/{modulus}[{}] (trivially graded)", group(g))
            }
            RingSpec::PairRing { modulus, ideal } => format!("(Z/{modulus}, {ideal}Z/{modulus})"),
        }
    }
}

/// The job file as written. Scalar settings come first so the TOML emitter keeps them
/// above the tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    pub family: Vec<GradeLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<GradeLiteral>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<StrategyName>,
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixLiteral>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elementary: Vec<ElementaryLiteral>,
}

pub const DEFAULT_CAP: usize = 1_000_000;
pub const DEFAULT_SAMPLES: usize = 100;

/// Scalar fields a command line may override.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub command: Option<Command>,
    pub level: Option<usize>,
    pub cap: Option<usize>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub strategy: Option<StrategyName>,
}

/// A validated job: the file plus every object it describes.
#[derive(Debug, Clone)]
pub struct JobSpec {
    file: JobFile,
    command: Command,
    ring: Arc<GradedRing>,
    ideal: Option<GradedIdeal>,
    family: ShiftFamily,
    lambdas: Vec<GradeElement>,
    matrix: Option<GradedMatrix>,
    elementary: Vec<ElementaryGenerator>,
}

impl PartialEq for JobSpec {
    fn eq(&self, other: &Self) -> bool {
        self.file == other.file
    }
}

fn at<T>(path: &str, r: Result<T, graded_k1_core::Error>) -> Result<T, JobError> {
    r.map_err(|source| JobError::At { path: path.to_string(), source })
}

impl JobSpec {
    pub fn from_file(file: JobFile) -> Result<Self, JobError> {
        let command = file.command.ok_or_else(|| JobError::invalid("missing-command", "no command given"))?;
        let ring = at("ring", file.ring.build())?;
        let grading = ring.grading().clone();
        if file.family.is_empty() {
            return Err(JobError::At { path: "family".into(), source: graded_k1_core::Error::EmptyFamily });
        }
        let shifts = file
            .family
            .iter()
            .enumerate()
            .map(|(k, s)| at(&format!("family[{k}]"), s.resolve(&grading)))
            .collect::<Result<Vec<_>, _>>()?;
        let family = at("family", ShiftFamily::new(&grading, shifts))?;
        let ideal = match &file.ideal {
            Some(spec) => Some(at("ideal", spec.resolve(&ring))?),
            None if command.needs_ideal() => {
                return Err(JobError::invalid("missing-ideal", format!("`{command}` needs an ideal")))
            }
            None => None,
        };
        let lambdas = match &file.lambdas {
            Some(ls) => ls
                .iter()
                .enumerate()
                .map(|(k, l)| at(&format!("lambdas[{k}]"), l.resolve(&grading)))
                .collect::<Result<Vec<_>, _>>()?,
            None => default_lambdas(&grading),
        };
        let matrix = match &file.matrix {
            Some(m) => Some(at("matrix", m.resolve(&ring, &family))?),
            None => None,
        };
        let elementary = file
            .elementary
            .iter()
            .enumerate()
            .map(|(k, e)| at(&format!("elementary[{k}]"), e.resolve(&ring, &family)))
            .collect::<Result<Vec<_>, _>>()?;
        if file.level == Some(0) {
            return Err(JobError::invalid("invalid-level", "level must be at least 1"));
        }
        if let Some(levels) = &file.levels {
            if levels.is_empty() || levels.contains(&0) {
                return Err(JobError::invalid("invalid-level", "levels must be a nonempty list of positive integers"));
            }
        }
        if file.cap == Some(0) {
            return Err(JobError::invalid("invalid-cap", "cap must be positive"));
        }
        if command.needs_finite() && ring.support().is_none() {
            return Err(JobError::invalid(
                "unsupported",
                format!("`{command}` enumerates groups and needs finite components; {} has infinitely many degrees", file.ring.label()),
            ));
        }
        Ok(JobSpec { file, command, ring, ideal, family, lambdas, matrix, elementary })
    }

    /// Applies command-line overrides and revalidates.
    pub fn with_overrides(&self, o: &Overrides) -> Result<Self, JobError> {
        let mut file = self.file.clone();
        apply(&mut file, o)?;
        Self::from_file(file)
    }

    pub fn file(&self) -> &JobFile {
        &self.file
    }

    pub fn command(&self) -> Command {
        self.command
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn ideal(&self) -> Option<&GradedIdeal> {
        self.ideal.as_ref()
    }

    pub fn family(&self) -> &ShiftFamily {
        &self.family
    }

    pub fn lambdas(&self) -> &[GradeElement] {
        &self.lambdas
    }

    pub fn matrix(&self) -> Option<&GradedMatrix> {
        self.matrix.as_ref()
    }

    pub fn elementary(&self) -> &[ElementaryGenerator] {
        &self.elementary
    }

    pub fn level(&self) -> usize {
        self.file.level.unwrap_or(1)
    }

    pub fn levels(&self) -> Vec<usize> {
        self.file.levels.clone().unwrap_or_else(|| vec![1, 2, 3])
    }

    pub fn samples(&self) -> usize {
        self.file.samples.unwrap_or(DEFAULT_SAMPLES)
    }

    pub fn seed(&self) -> u64 {
        self.file.seed.unwrap_or(0)
    }

    pub fn format(&self) -> Format {
        self.file.format.unwrap_or_default()
    }

    pub fn engine(&self) -> EngineConfig {
        EngineConfig {
            cap: self.file.cap.unwrap_or(DEFAULT_CAP),
            strategy: self.file.strategy.unwrap_or_default().into(),
            seed: self.seed(),
            ..EngineConfig::default()
        }
    }
}

fn apply(file: &mut JobFile, o: &Overrides) -> Result<(), JobError> {
    if let Some(c) = o.command {
        match file.command {
            Some(existing) if existing != c => {
                return Err(JobError::invalid(
                    "command-mismatch",
                    format!("job file asks for `{existing}`, command line for `{c}`"),
                ))
            }
            _ => file.command = Some(c),
        }
    }
    if o.level.is_some() {
        file.level = o.level;
    }
    if o.cap.is_some() {
        file.cap = o.cap;
    }
    if o.format.is_some() {
        file.format = o.format;
    }
    if o.seed.is_some() {
        file.seed = o.seed;
    }
    if o.strategy.is_some() {
        file.strategy = o.strategy;
    }
    Ok(())
}

/// One shift per generator of the grading group.
fn default_lambdas(group: &Arc<GradeGroup>) -> Vec<GradeElement> {
    (0..group.rank())
        .map(|k| {
            let mut c = vec![0; group.rank()];
            c[k] = 1;
            GradeElement::new(group, &c).expect("unit vectors are grade elements")
        })
        .collect()
}

/// Parses and validates a job file.
pub fn parse_job(text: &str) -> Result<JobSpec, JobError> {
    parse_job_with(text, &Overrides::default())
}

pub fn parse_job_with(text: &str, overrides: &Overrides) -> Result<JobSpec, JobError> {
    let mut file: JobFile = toml::from_str(text).map_err(|e| JobError::syntax(text, &e))?;
    apply(&mut file, overrides)?;
    JobSpec::from_file(file)
}

/// Serialises the job file; `parse_job(&emit_job(s))` reproduces `s`.
pub fn emit_job(spec: &JobSpec) -> String {
    toml::to_string(&spec.file).expect("job files serialise")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_job() {
        let spec = parse_job("command = \"k1\"\nfamily = [0]\nlevel = 2\n[ring]\nkind = \"trivial\"\nmodulus = 4\n").unwrap();
        assert_eq!(spec.command(), Command::K1);
        assert_eq!(spec.level(), 2);
        assert_eq!(spec.family().len(), 1);
        assert_eq!(parse_job(&emit_job(&spec)).unwrap(), spec);
    }

    #[test]
    fn rejections_carry_codes() {
        let empty = parse_job("command = \"k1\"\nfamily = []\n[ring]\nkind = \"trivial\"\nmodulus = 4\n");
        assert_eq!(empty.unwrap_err().code(), "empty-family");
        let no_ideal = parse_job("command = \"exactness\"\nfamily = [0]\n[ring]\nkind = \"trivial\"\nmodulus = 4\n");
        assert_eq!(no_ideal.unwrap_err().code(), "missing-ideal");
        let syntax = parse_job("command = \"k1\"\nfamily = [0\n").unwrap_err();
        assert_eq!(syntax.code(), "syntax");
        assert!(matches!(syntax, JobError::Syntax { line: 2, .. }), "{syntax:?}");
        let laurent = parse_job("command = \"k1\"\nfamily = [0]\n[ring]\nkind = \"laurent\"\nprime = 2\n");
        assert_eq!(laurent.unwrap_err().code(), "unsupported");
    }

    #[test]
    fn elementary_literal_degree_diagnostic() {
        let text = "command = \"verify-identities\"\nfamily = [0, 1]\n[ring]\nkind = \"laurent\"\nprime = 2\n\
                    [[elementary]]\ni = 1\nj = 2\nentry = [1, 1]\n";
        let err = parse_job(text).unwrap_err();
        assert_eq!(err.code(), "degree-law");
        assert!(err.to_string().starts_with("elementary[0]"), "{err}");
    }

    #[test]
    fn overrides_apply() {
        let spec = parse_job("family = [0]\n[ring]\nkind = \"trivial\"\nmodulus = 3\n");
        assert_eq!(spec.unwrap_err().code(), "missing-command");
        let o = Overrides { command: Some(Command::K1), level: Some(3), cap: Some(10), ..Overrides::default() };
        let spec = parse_job_with("family = [0]\n[ring]\nkind = \"trivial\"\nmodulus = 3\n", &o).unwrap();
        assert_eq!((spec.level(), spec.engine().cap), (3, 10));
        let clash = Overrides { command: Some(Command::Exactness), ..Overrides::default() };
        assert_eq!(spec.with_overrides(&clash).unwrap_err().code(), "command-mismatch");
    }
}

//! JSON scenario configuration: schema, parsing and validation.

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::iteration::IterateOptions;
use crate::linalg::orthogonal_complement;
use crate::operator::{AffineOperator, OperatorSequence, RandomContractiveSpec, TailRule};
use crate::projector::{oblique_projector, orthogonal_projector, ObliqueProjector, ProjectorSequence};
use crate::random::{random_vector, sub_rng};
use crate::space::{NormKind, Vector};
use crate::verify::{self, Tolerances};

/// Stream indices reserved for scenario-level draws. Operator draws of a
/// random sequence use the stream equal to their index.
pub(crate) const X0_STREAM: u64 = u64::MAX;
pub(crate) const SAMPLE_STREAM: u64 = u64::MAX - 1;
pub(crate) const KERNEL_STREAM: u64 = u64::MAX - 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CheckName {
    #[serde(rename = "check_bound_nonexpansive")]
    BoundNonexpansive,
    #[serde(rename = "check_convergent_contractive")]
    ConvergentContractive,
    #[serde(rename = "check_cluster_points")]
    ClusterPoints,
    #[serde(rename = "check_kernel_preimage_degeneracy")]
    KernelPreimage,
    #[serde(rename = "check_asymptotic_contractivity")]
    AsymptoticContractivity,
    #[serde(rename = "check_composite_substitution")]
    CompositeSubstitution,
    #[serde(rename = "check_limit_continuity")]
    LimitContinuity,
    #[serde(rename = "check_compactness_inequality")]
    CompactnessInequality,
    #[serde(rename = "check_strip_decay")]
    StripDecay,
}

impl CheckName {
    pub const ALL: [CheckName; 9] = [
        CheckName::BoundNonexpansive,
        CheckName::ConvergentContractive,
        CheckName::ClusterPoints,
        CheckName::KernelPreimage,
        CheckName::AsymptoticContractivity,
        CheckName::CompositeSubstitution,
        CheckName::LimitContinuity,
        CheckName::CompactnessInequality,
        CheckName::StripDecay,
    ];

    pub fn as_str(self) -> &'static str {
        verify::CHECK_NAMES[self as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    /// Row-major `dim × dim` matrix.
    pub matrix: Vec<Vec<f64>>,
    /// Defaults to zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailSpec {
    #[default]
    HoldLast,
    Cycle,
}

impl From<TailSpec> for TailRule {
    fn from(t: TailSpec) -> Self {
        match t {
            TailSpec::HoldLast => TailRule::HoldLast,
            TailSpec::Cycle => TailRule::Cycle,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TSequenceSpec {
    Constant {
        operator: OperatorSpec,
    },
    Explicit {
        operators: Vec<OperatorSpec>,
        #[serde(default)]
        tail: TailSpec,
    },
    Periodic {
        operators: Vec<OperatorSpec>,
    },
    /// `T_k = limit + rate^k · perturbation`.
    Convergent {
        limit: OperatorSpec,
        perturbation: OperatorSpec,
        rate: f64,
    },
    /// Independent draws with `‖A_k‖ ≤ norm_bound` in the scenario norm.
    RandomContractive {
        norm_bound: f64,
        #[serde(default)]
        offset_scale: f64,
    },
}

/// Range and kernel bases are row-major `dim × r` and `dim × (dim − r)` matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProjectorSpec {
    Oblique {
        range_basis: Vec<Vec<f64>>,
        kernel_basis: Vec<Vec<f64>>,
    },
    Orthogonal {
        orthogonal_range: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PSequenceSpec {
    Constant {
        projector: ProjectorSpec,
    },
    Explicit {
        projectors: Vec<ProjectorSpec>,
        #[serde(default)]
        tail: TailSpec,
    },
    Periodic {
        projectors: Vec<ProjectorSpec>,
    },
    /// Bases move as `limit_basis + rate^k · delta`.
    Convergent {
        limit: ProjectorSpec,
        range_delta: Vec<Vec<f64>>,
        kernel_delta: Vec<Vec<f64>>,
        rate: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomTag {
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum X0Spec {
    Explicit(Vec<f64>),
    Random(RandomTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ToleranceSpec {
    pub conv_tol: f64,
    pub slack_tol: f64,
    pub separation_tol: f64,
    pub limit_tol: f64,
    pub div_bound: f64,
}

impl Default for ToleranceSpec {
    fn default() -> Self {
        let t = Tolerances::default();
        let o = IterateOptions::default();
        ToleranceSpec {
            conv_tol: o.conv_tol,
            slack_tol: t.slack,
            separation_tol: t.separation,
            limit_tol: t.limit,
            div_bound: o.div_bound,
        }
    }
}

fn default_strip_samples() -> usize {
    4
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StripSearchSpec {
    #[serde(rename = "K_target")]
    pub k_target: f64,
    pub max_gap: usize,
    pub horizon: usize,
    /// Number of trajectories used by the collapse sub-check.
    #[serde(default = "default_strip_samples")]
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XSequenceSpec {
    pub limit: Vec<f64>,
    pub direction: Vec<f64>,
    pub rate: f64,
}

/// Optional per-check parameters.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CheckParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<f64>>,
    /// Horizon of the limit checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<TSequenceSpec>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_sequence: Option<XSequenceSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_pair: Option<[Vec<f64>; 2]>,
}

fn default_norm_kind() -> NormKind {
    NormKind::L2
}

fn default_max_k() -> usize {
    IterateOptions::default().max_k
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    #[serde(default = "default_norm_kind")]
    pub norm_kind: NormKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub t_sequence: TSequenceSpec,
    /// Defaults to identity projectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_sequence: Option<PSequenceSpec>,
    pub x0: X0Spec,
    #[serde(default = "default_max_k")]
    pub max_k: usize,
    #[serde(default)]
    pub tolerances: ToleranceSpec,
    pub checks: Vec<CheckName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strip_search: Option<StripSearchSpec>,
    #[serde(default)]
    pub params: CheckParams,
}

/// A validated configuration with every sequence realized.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub t_seq: OperatorSequence,
    pub p_seq: ProjectorSequence,
    pub x0: Vector,
    pub options: IterateOptions,
    pub tolerances: Tolerances,
    /// Hex SHA-256 of the canonical re-serialization of the config.
    pub digest: String,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::config(if path == "." { "<root>".to_string() } else { path }, e.into_inner().to_string())
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serialization is infallible");
        s.push('\n');
        s
    }

    pub fn digest(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serialization is infallible");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    /// Validates every field and realizes the sequences.
    pub fn build(&self) -> Result<Scenario> {
        let dim = self.dim;
        if dim == 0 {
            return Err(Error::config("dim", "must be at least 1"));
        }
        if self.max_k == 0 {
            return Err(Error::config("max_k", "must be at least 1"));
        }
        let tol = &self.tolerances;
        for (field, v) in [
            ("tolerances.conv_tol", tol.conv_tol),
            ("tolerances.slack_tol", tol.slack_tol),
            ("tolerances.separation_tol", tol.separation_tol),
            ("tolerances.limit_tol", tol.limit_tol),
            ("tolerances.div_bound", tol.div_bound),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::config(field, format!("must be positive and finite, got {v}")));
            }
        }
        if self.checks.is_empty() {
            return Err(Error::config("checks", "at least one check is required"));
        }

        let needs_seed = matches!(self.x0, X0Spec::Random(_))
            || matches!(self.t_sequence, TSequenceSpec::RandomContractive { .. })
            || self
                .params
                .factors
                .iter()
                .flatten()
                .any(|f| matches!(f, TSequenceSpec::RandomContractive { .. }));
        if needs_seed && self.seed.is_none() {
            return Err(Error::config("seed", "required when any element is \"random\""));
        }

        let t_seq = build_t_sequence(&self.t_sequence, dim, self.seed, self.norm_kind, "t_sequence")?;
        let p_seq = match &self.p_sequence {
            None => ProjectorSequence::identity(dim),
            Some(spec) => build_p_sequence(spec, dim, "p_sequence")?,
        };
        let x0 = match &self.x0 {
            X0Spec::Explicit(c) => vector(c, dim, "x0")?,
            X0Spec::Random(_) => {
                let seed = self.seed.expect("seed presence checked above");
                random_vector(&mut sub_rng(seed, X0_STREAM), dim, 1.0)
            }
        };

        if let Some(s) = &self.strip_search {
            if !(0.0..1.0).contains(&s.k_target) {
                return Err(Error::config(
                    "strip_search.K_target",
                    format!("must lie in [0, 1), got {}", s.k_target),
                ));
            }
            if s.max_gap == 0 {
                return Err(Error::config("strip_search.max_gap", "must be at least 1"));
            }
            if s.horizon == 0 {
                return Err(Error::config("strip_search.horizon", "must be at least 1"));
            }
        } else if self.checks.contains(&CheckName::StripDecay) {
            return Err(Error::config("strip_search", "required by check_strip_decay"));
        }
        self.validate_params()?;

        Ok(Scenario {
            config: self.clone(),
            t_seq,
            p_seq,
            x0,
            options: IterateOptions {
                max_k: self.max_k,
                conv_tol: tol.conv_tol,
                div_bound: tol.div_bound,
                ..IterateOptions::default()
            },
            tolerances: Tolerances {
                slack: tol.slack_tol,
                limit: tol.limit_tol,
                separation: tol.separation_tol,
            },
            digest: self.digest(),
        })
    }

    fn validate_params(&self) -> Result<()> {
        let p = &self.params;
        let dim = self.dim;
        if let Some(mu) = p.mu {
            if !(mu > 0.0 && mu.is_finite()) {
                return Err(Error::config("params.mu", format!("must be positive and finite, got {mu}")));
            }
        }
        if p.period == Some(0) {
            return Err(Error::config("params.period", "must be at least 1"));
        }
        if let Some(deltas) = &p.deltas {
            if deltas.is_empty() {
                return Err(Error::config("params.deltas", "must not be empty"));
            }
            for (i, d) in deltas.iter().enumerate() {
                if !(*d > 0.0 && d.is_finite()) {
                    return Err(Error::config(format!("params.deltas[{i}]"), format!("must be positive, got {d}")));
                }
            }
        }
        if p.horizon == Some(0) {
            return Err(Error::config("params.horizon", "must be at least 1"));
        }
        if let Some(factors) = &p.factors {
            if factors.is_empty() {
                return Err(Error::config("params.factors", "must not be empty"));
            }
            for (i, f) in factors.iter().enumerate() {
                build_t_sequence(f, dim, self.seed, self.norm_kind, &format!("params.factors[{i}]"))?;
            }
        }
        if let Some(samples) = &p.samples {
            for (i, s) in samples.iter().enumerate() {
                vector(s, dim, &format!("params.samples[{i}]"))?;
            }
        }
        if let Some(xs) = &p.x_sequence {
            vector(&xs.limit, dim, "params.x_sequence.limit")?;
            vector(&xs.direction, dim, "params.x_sequence.direction")?;
            if !(0.0..1.0).contains(&xs.rate) {
                return Err(Error::config("params.x_sequence.rate", format!("must lie in [0, 1), got {}", xs.rate)));
            }
        }
        if let Some([a, b]) = &p.z_pair {
            vector(a, dim, "params.z_pair[0]")?;
            vector(b, dim, "params.z_pair[1]")?;
        }
        Ok(())
    }
}

fn vector(c: &[f64], dim: usize, field: &str) -> Result<Vector> {
    if c.len() != dim {
        return Err(Error::config(field, format!("expected {dim} entries, found {}", c.len())));
    }
    Vector::new(c.to_vec()).map_err(|e| Error::config(field, e.to_string()))
}

fn matrix(rows: &[Vec<f64>], nrows: usize, ncols: Option<usize>, field: &str) -> Result<DMatrix<f64>> {
    if rows.len() != nrows {
        return Err(Error::config(field, format!("expected {nrows} rows, found {}", rows.len())));
    }
    let ncols = ncols.unwrap_or_else(|| rows.first().map_or(0, Vec::len));
    for (i, r) in rows.iter().enumerate() {
        if r.len() != ncols {
            return Err(Error::config(format!("{field}[{i}]"), format!("expected {ncols} columns, found {}", r.len())));
        }
        if let Some(j) = r.iter().position(|v| !v.is_finite()) {
            return Err(Error::config(format!("{field}[{i}][{j}]"), "entry is not finite"));
        }
    }
    Ok(DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
}

fn operator(spec: &OperatorSpec, dim: usize, field: &str) -> Result<AffineOperator> {
    let a = matrix(&spec.matrix, dim, Some(dim), &format!("{field}.matrix"))?;
    let op = AffineOperator::linear(a).map_err(|e| Error::config(field, e.to_string()))?;
    match &spec.offset {
        None => Ok(op),
        Some(b) => {
            let b = vector(b, dim, &format!("{field}.offset"))?;
            op.with_offset(b.coords()).map_err(|e| Error::config(field, e.to_string()))
        }
    }
}

fn operators(specs: &[OperatorSpec], dim: usize, field: &str) -> Result<Vec<AffineOperator>> {
    if specs.is_empty() {
        return Err(Error::config(field, "must not be empty"));
    }
    specs
        .iter()
        .enumerate()
        .map(|(i, s)| operator(s, dim, &format!("{field}[{i}]")))
        .collect()
}

fn rate(r: f64, field: &str) -> Result<f64> {
    if r > 0.0 && r < 1.0 {
        Ok(r)
    } else {
        Err(Error::config(field, format!("must lie in (0, 1), got {r}")))
    }
}

pub(crate) fn build_t_sequence(
    spec: &TSequenceSpec,
    dim: usize,
    seed: Option<u64>,
    norm_kind: NormKind,
    field: &str,
) -> Result<OperatorSequence> {
    let wrap = |e: Error| Error::config(field, e.to_string());
    match spec {
        TSequenceSpec::Constant { operator: op } => Ok(OperatorSequence::constant(operator(op, dim, &format!("{field}.operator"))?)),
        TSequenceSpec::Explicit { operators: ops, tail } => {
            OperatorSequence::explicit(operators(ops, dim, &format!("{field}.operators"))?, (*tail).into()).map_err(wrap)
        }
        TSequenceSpec::Periodic { operators: ops } => {
            OperatorSequence::periodic(operators(ops, dim, &format!("{field}.operators"))?).map_err(wrap)
        }
        TSequenceSpec::Convergent { limit, perturbation, rate: r } => OperatorSequence::convergent(
            operator(limit, dim, &format!("{field}.limit"))?,
            operator(perturbation, dim, &format!("{field}.perturbation"))?,
            rate(*r, &format!("{field}.rate"))?,
        )
        .map_err(wrap),
        TSequenceSpec::RandomContractive { norm_bound, offset_scale } => {
            if !(*norm_bound > 0.0 && norm_bound.is_finite()) {
                return Err(Error::config(format!("{field}.norm_bound"), format!("must be positive, got {norm_bound}")));
            }
            if !(*offset_scale >= 0.0 && offset_scale.is_finite()) {
                return Err(Error::config(
                    format!("{field}.offset_scale"),
                    format!("must be non-negative, got {offset_scale}"),
                ));
            }
            let seed = seed.ok_or_else(|| Error::config("seed", "required when any element is \"random\""))?;
            OperatorSequence::random_contractive(RandomContractiveSpec {
                seed,
                dim,
                norm_bound: *norm_bound,
                norm_kind,
                offset_scale: *offset_scale,
            })
            .map_err(wrap)
        }
    }
}

fn projector_bases(spec: &ProjectorSpec, dim: usize, field: &str) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    match spec {
        ProjectorSpec::Oblique { range_basis, kernel_basis } => Ok((
            matrix(range_basis, dim, None, &format!("{field}.range_basis"))?,
            matrix(kernel_basis, dim, None, &format!("{field}.kernel_basis"))?,
        )),
        ProjectorSpec::Orthogonal { orthogonal_range } => {
            let m = matrix(orthogonal_range, dim, None, &format!("{field}.orthogonal_range"))?;
            let n = orthogonal_complement(&m);
            Ok((m, n))
        }
    }
}

fn projector(spec: &ProjectorSpec, dim: usize, field: &str) -> Result<ObliqueProjector> {
    let wrap = |e: Error| Error::config(field, e.to_string());
    match spec {
        ProjectorSpec::Orthogonal { orthogonal_range } => {
            orthogonal_projector(matrix(orthogonal_range, dim, None, &format!("{field}.orthogonal_range"))?).map_err(wrap)
        }
        ProjectorSpec::Oblique { .. } => {
            let (m, n) = projector_bases(spec, dim, field)?;
            oblique_projector(m, n).map_err(wrap)
        }
    }
}

fn projectors(specs: &[ProjectorSpec], dim: usize, field: &str) -> Result<Vec<ObliqueProjector>> {
    if specs.is_empty() {
        return Err(Error::config(field, "must not be empty"));
    }
    specs
        .iter()
        .enumerate()
        .map(|(i, s)| projector(s, dim, &format!("{field}[{i}]")))
        .collect()
}

fn build_p_sequence(spec: &PSequenceSpec, dim: usize, field: &str) -> Result<ProjectorSequence> {
    let wrap = |e: Error| Error::config(field, e.to_string());
    match spec {
        PSequenceSpec::Constant { projector: p } => Ok(ProjectorSequence::constant(projector(p, dim, &format!("{field}.projector"))?)),
        PSequenceSpec::Explicit { projectors: ps, tail } => {
            ProjectorSequence::explicit(projectors(ps, dim, &format!("{field}.projectors"))?, (*tail).into()).map_err(wrap)
        }
        PSequenceSpec::Periodic { projectors: ps } => {
            ProjectorSequence::periodic(projectors(ps, dim, &format!("{field}.projectors"))?).map_err(wrap)
        }
        PSequenceSpec::Convergent {
            limit,
            range_delta,
            kernel_delta,
            rate: r,
        } => {
            let limit_field = format!("{field}.limit");
            let (m, n) = projector_bases(limit, dim, &limit_field)?;
            let (rank, corank) = (m.ncols(), n.ncols());
            let limit = oblique_projector(m, n).map_err(|e| Error::config(&limit_field, e.to_string()))?;
            let dm = matrix(range_delta, dim, Some(rank), &format!("{field}.range_delta"))?;
            let dn = matrix(kernel_delta, dim, Some(corank), &format!("{field}.kernel_delta"))?;
            let seq = ProjectorSequence::convergent(limit, dm, dn, rate(*r, &format!("{field}.rate"))?).map_err(wrap)?;
            Ok(seq)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "dim": 2,
        "t_sequence": {"kind": "constant", "operator": {"matrix": [[0.5, 0], [0, 0.5]], "offset": [1, 1]}},
        "x0": [0, 0],
        "checks": ["check_convergent_contractive"]
    }"#;

    fn field_of(e: Error) -> String {
        match e {
            Error::Config { field, .. } => field,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_config_builds_with_defaults() {
        let cfg = ScenarioConfig::from_json(MINIMAL).unwrap();
        assert_eq!(cfg.norm_kind, NormKind::L2);
        assert_eq!(cfg.max_k, 100_000);
        let s = cfg.build().unwrap();
        assert_eq!(s.tolerances, Tolerances::default());
        assert_eq!(s.options, IterateOptions::default());
        assert_eq!(s.p_seq, ProjectorSequence::identity(2));
        assert_eq!(s.digest.len(), 64);
    }

    #[test]
    fn round_trip_preserves_config_and_digest() {
        let cfg = ScenarioConfig::from_json(MINIMAL).unwrap();
        let again = ScenarioConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(cfg.digest(), again.digest());
    }

    #[test]
    fn unknown_check_is_rejected_with_its_position() {
        let text = MINIMAL.replace("\"check_convergent_contractive\"", "\"check_convergent_contractive\", \"check_nothing\"");
        let e = ScenarioConfig::from_json(&text).unwrap_err();
        assert_eq!(field_of(e), "checks[1]");
    }

    #[test]
    fn unknown_field_is_rejected() {
        let text = MINIMAL.replace("\"dim\": 2,", "\"dim\": 2, \"dimension\": 2,");
        assert!(ScenarioConfig::from_json(&text).is_err());
    }

    #[test]
    fn k_target_at_one_names_the_field() {
        let text = MINIMAL.replace(
            "\"x0\"",
            "\"strip_search\": {\"K_target\": 1.0, \"max_gap\": 3, \"horizon\": 10}, \"x0\"",
        );
        let e = ScenarioConfig::from_json(&text).unwrap().build().unwrap_err();
        assert_eq!(field_of(e.clone()), "strip_search.K_target");
        assert!(e.to_string().contains("strip_search.K_target"));
    }

    #[test]
    fn x0_dimension_mismatch() {
        let text = MINIMAL.replace("\"x0\": [0, 0]", "\"x0\": [0, 0, 0]");
        let e = ScenarioConfig::from_json(&text).unwrap().build().unwrap_err();
        assert_eq!(field_of(e), "x0");
    }

    #[test]
    fn random_elements_need_a_seed() {
        let text = MINIMAL.replace("\"x0\": [0, 0]", "\"x0\": \"random\"");
        let e = ScenarioConfig::from_json(&text).unwrap().build().unwrap_err();
        assert_eq!(field_of(e), "seed");
        let seeded = text.replace("\"dim\": 2,", "\"dim\": 2, \"seed\": 11,");
        let a = ScenarioConfig::from_json(&seeded).unwrap().build().unwrap();
        let b = ScenarioConfig::from_json(&seeded).unwrap().build().unwrap();
        assert_eq!(a.x0, b.x0);
    }

    #[test]
    fn operator_shape_errors_name_the_entry() {
        let text = MINIMAL.replace("[[0.5, 0], [0, 0.5]]", "[[0.5, 0], [0]]");
        let e = ScenarioConfig::from_json(&text).unwrap().build().unwrap_err();
        assert_eq!(field_of(e), "t_sequence.operator.matrix[1]");
    }

    #[test]
    fn degenerate_projector_split_is_reported() {
        let text = MINIMAL.replace(
            "\"x0\"",
            "\"p_sequence\": {\"kind\": \"constant\", \"projector\": {\"range_basis\": [[1], [1]], \"kernel_basis\": [[2], [2]]}}, \"x0\"",
        );
        let e = ScenarioConfig::from_json(&text).unwrap().build().unwrap_err();
        assert_eq!(field_of(e), "p_sequence.projector");
    }

    #[test]
    fn strip_decay_requires_a_search() {
        let text = MINIMAL.replace("\"check_convergent_contractive\"", "\"check_strip_decay\"");
        let e = ScenarioConfig::from_json(&text).unwrap().build().unwrap_err();
        assert_eq!(field_of(e), "strip_search");
    }

    #[test]
    fn check_names_follow_report_order() {
        for (i, c) in CheckName::ALL.iter().enumerate() {
            assert_eq!(c.as_str(), verify::CHECK_NAMES[i]);
            let json = serde_json::to_string(c).unwrap();
            assert_eq!(json, format!("\"{}\"", c.as_str()));
        }
    }
}

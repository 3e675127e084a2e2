use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::numfmt::format_float;
use crate::space::Vector;

/// Traceability anchors; every report entry carries exactly one of these.
pub mod anchors {
    pub const BOUND_NONEXPANSIVE: &str =
        "uniform bound d(z_{k+2}, z_{k+1}) <= 4 mu ||x_0|| for non-expansive T_k and sup_k ||P_k|| <= mu";
    pub const CONVERGENT_CONTRACTIVE: &str =
        "T_k -> T contractive with constant projector P: z_k is Cauchy and converges to z = P x, x = T x";
    pub const CLUSTER_POINTS: &str =
        "contractive strips of bounded length J: at most J distinct limit points of the projected subsequences";
    pub const KERNEL_PREIMAGE: &str =
        "x + x_a with x_a in Ker PT has the same image under PT as x";
    pub const ASYMPTOTIC_CONTRACTIVITY: &str =
        "for every delta > 0 there is n_0 with ||P_n T_n|| <= ||P|| ||T|| + delta for n >= n_0";
    pub const COMPOSITE_SUBSTITUTION: &str =
        "replacing convergent factors of a composite by their limits changes the composite by a vanishing amount";
    pub const LIMIT_CONTINUITY: &str =
        "||T_n x_n - T x|| <= ||T|| ||x_n - x|| + ||T_n - T|| ||x_n|| -> 0";
    pub const COMPACTNESS_INEQUALITY: &str =
        "||T z_i - T z_j|| <= ||T - T_n|| (||z_i|| + ||z_j||) + ||T_n z_i - T_n z_j||";
    pub const STRIP_DECAY: &str =
        "strip composites with norm <= K < 1 drive T^(j_k, 0) to zero and collapse all trajectories";

    pub const ALL: &[&str] = &[
        BOUND_NONEXPANSIVE,
        CONVERGENT_CONTRACTIVE,
        CLUSTER_POINTS,
        KERNEL_PREIMAGE,
        ASYMPTOTIC_CONTRACTIVITY,
        COMPOSITE_SUBSTITUTION,
        LIMIT_CONTINUITY,
        COMPACTNESS_INEQUALITY,
        STRIP_DECAY,
    ];
}

/// Comparison tolerances shared by every check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute slack allowed on inequalities.
    pub slack: f64,
    /// Residual below which a limit is considered reached.
    pub limit: f64,
    /// Distance below which two cluster points are merged.
    pub separation: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            slack: 1e-9,
            limit: 1e-8,
            separation: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub index: usize,
    #[serde(serialize_with = "ser_vectors")]
    pub vectors: Vec<Vec<f64>>,
}

impl Witness {
    pub fn new(index: usize, vectors: &[&Vector]) -> Self {
        Witness {
            index,
            vectors: vectors.iter().map(|v| v.to_vec()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEntry {
    pub check_name: String,
    pub statement: String,
    pub status: Status,
    /// Worst `LHS − (RHS + tolerance)`; non-positive exactly when the check passes.
    #[serde(serialize_with = "ser_float")]
    pub max_violation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub details: String,
}

impl ReportEntry {
    /// Pass when `max_violation ≤ 0`, otherwise Fail with the given witness.
    pub fn judged(
        check_name: &str,
        anchor: &str,
        max_violation: f64,
        witness: Witness,
        details: String,
    ) -> Self {
        let pass = max_violation <= 0.0;
        ReportEntry {
            check_name: check_name.to_string(),
            statement: anchor.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            max_violation,
            witness: (!pass).then_some(witness),
            details,
        }
    }

    pub fn fail(check_name: &str, anchor: &str, max_violation: f64, witness: Witness, details: String) -> Self {
        ReportEntry {
            check_name: check_name.to_string(),
            statement: anchor.to_string(),
            status: Status::Fail,
            max_violation,
            witness: Some(witness),
            details,
        }
    }

    pub fn inapplicable(check_name: &str, anchor: &str, details: String) -> Self {
        ReportEntry {
            check_name: check_name.to_string(),
            statement: anchor.to_string(),
            status: Status::Inapplicable,
            max_violation: f64::NAN,
            witness: None,
            details,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub scenario_digest: String,
    pub entries: Vec<ReportEntry>,
}

impl VerificationReport {
    pub fn any_failed(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    pub fn entry(&self, check_name: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.check_name == check_name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }
}

/// Floats as JSON numbers with 17 significant digits; non-finite values become null.
pub(crate) fn raw_float(v: f64) -> Box<RawValue> {
    let text = if v.is_finite() { format_float(v) } else { "null".to_string() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

pub(crate) fn ser_float<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw_float(*v).serialize(s)
}

fn ser_vectors<S: Serializer>(vs: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(vs.len()))?;
    for v in vs {
        let row: Vec<Box<RawValue>> = v.iter().map(|&x| raw_float(x)).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

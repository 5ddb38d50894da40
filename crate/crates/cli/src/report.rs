//! Serializable command outputs. Every JSON document carries [`SCHEMA`].

use cablefloer::cables::{CableLink, Grading, Regime};
use cablefloer::homology::ModuleSummand;
use cablefloer::oracle::SweepReport;
use cablefloer::{GradedDim, HalfInt};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "cablefloer/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkInfo {
    pub knot: String,
    pub r: usize,
    pub m: i64,
    pub n: i64,
    pub regime: Regime,
}

impl LinkInfo {
    pub fn of(link: &CableLink) -> LinkInfo {
        LinkInfo {
            knot: link.knot().to_string(),
            r: link.r(),
            m: link.m(),
            n: link.n(),
            regime: link.regime(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub k: HalfInt,
    pub hh: i64,
    pub beta: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub grading: Grading,
    pub dims: GradedDim,
}

/// Nonzero groups at orbit representatives, sorted by grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputTable {
    pub caption: String,
    pub format: String,
    pub window: (HalfInt, HalfInt),
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub window: (HalfInt, HalfInt),
    pub minus: SweepReport,
    pub hat: Option<SweepReport>,
    pub passed: bool,
    pub first_counterexample: Option<Grading>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    Profile {
        window: (HalfInt, HalfInt),
        rows: Vec<ProfileRow>,
    },
    Hfl {
        grading: Grading,
        hat: bool,
        maslov_dims: GradedDim,
    },
    Table(OutputTable),
    Decompose {
        summary: String,
        summands: Vec<ModuleSummand>,
    },
    Verify(VerifyReport),
    Surgery {
        p: Vec<i64>,
        det: i128,
        positive_cone: bool,
        description: Option<String>,
    },
    Chi {
        polynomial: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    pub link: LinkInfo,
    pub output: Output,
}

impl Document {
    pub fn new(link: &CableLink, output: Output) -> Document {
        Document {
            schema: SCHEMA.into(),
            link: LinkInfo::of(link),
            output,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Document> {
        serde_json::from_str(s)
    }
}

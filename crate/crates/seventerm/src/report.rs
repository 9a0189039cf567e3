//! The machine-readable report and its human summary.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use seventerm_core::linalg::{AbHom, FgAbGroup};
use seventerm_core::{Check, Int, Verdict};

use crate::problem::ProblemSpec;

/// An integer that serializes as a JSON number when it fits in `i64`, and as
/// a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Small(i64),
    Big(String),
}

impl From<&Int> for Num {
    fn from(x: &Int) -> Self {
        match x.to_i64() {
            Some(v) => Num::Small(v),
            None => Num::Big(x.to_string()),
        }
    }
}

impl From<usize> for Num {
    fn from(x: usize) -> Self {
        Num::from(&Int::from(x))
    }
}

fn nums(xs: &[Int]) -> Vec<Num> {
    xs.iter().map(Num::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, v: &Verdict) -> Self {
        let (witness, reason) = match v {
            Verdict::Pass => (None, None),
            Verdict::Fail { witness } => (Some(witness.clone()), None),
            Verdict::Skipped { reason } => (None, Some(reason.clone())),
        };
        CheckReport { name: name.into(), verdict: v.label().into(), witness, reason }
    }

    pub fn is_fail(&self) -> bool {
        self.verdict == "fail"
    }
}

impl From<&Check> for CheckReport {
    fn from(c: &Check) -> Self {
        CheckReport::new(c.name.clone(), &c.verdict)
    }
}

pub fn checks(cs: &[Check]) -> Vec<CheckReport> {
    cs.iter().map(CheckReport::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub label: String,
    pub invariant_factors: Vec<Num>,
    pub rank: usize,
    pub order: Num,
}

impl GroupReport {
    pub fn new(label: impl Into<String>, g: &FgAbGroup) -> Self {
        let order = match g.order() {
            Some(o) => Num::from(&o),
            None => Num::Big("infinite".into()),
        };
        GroupReport { label: label.into(), invariant_factors: nums(g.torsion()), rank: g.rank(), order }
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{}", num_text(d))).collect();
        parts.extend((0..self.rank).map(|_| "Z".to_string()));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn num_text(n: &Num) -> String {
    match n {
        Num::Small(v) => v.to_string(),
        Num::Big(s) => s.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapReport {
    pub label: String,
    pub source: String,
    pub target: String,
    /// Images of the source generators are the columns.
    pub matrix: Vec<Vec<Num>>,
}

impl MapReport {
    pub fn new(label: impl Into<String>, source: &str, target: &str, f: &AbHom) -> Self {
        let m = &f.matrix;
        let matrix = (0..m.rows()).map(|i| nums(m.row(i))).collect();
        MapReport { label: label.into(), source: source.into(), target: target.into(), matrix }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageReport {
    pub p: usize,
    pub q: usize,
    pub group: GroupReport,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub pages: Vec<PageReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub einfty_11_order: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_rho_order: Option<Num>,
    /// `+1` or `-1` when `row ∘ tr = ±d₂ ∘ col⁻¹`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<i64>,
    pub comparison: Vec<CheckReport>,
    pub self_checks: Vec<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub name: String,
    pub order_g: usize,
    pub normal_subgroup: Vec<usize>,
    pub order_q: usize,
    pub module: GroupReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub stages_ms: Vec<(String, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// True when any verdict failed.
    pub flagged: bool,
    pub status: String,
    pub input: ProblemSpec,
    pub extension: ExtensionReport,
    pub groups: Vec<GroupReport>,
    pub maps: Vec<MapReport>,
    pub junctions: Vec<CheckReport>,
    pub coincidence: Vec<CheckReport>,
    pub oracle: OracleReport,
    pub well_definedness: Vec<CheckReport>,
    /// Stages that stopped with an error.
    pub errors: Vec<CheckReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn all_checks(&self) -> impl Iterator<Item = &CheckReport> {
        self.junctions
            .iter()
            .chain(&self.coincidence)
            .chain(&self.oracle.comparison)
            .chain(&self.oracle.self_checks)
            .chain(&self.well_definedness)
            .chain(&self.errors)
    }

    /// Sets `flagged` and `status` from the verdicts.
    pub fn seal(&mut self) {
        let flagged = self.all_checks().any(CheckReport::is_fail);
        self.flagged = flagged;
        let any_pass = self.all_checks().any(|c| c.verdict == "pass");
        self.status = if self.flagged {
            "fail"
        } else if any_pass {
            "pass"
        } else {
            "skipped"
        }
        .into();
    }

    pub fn to_json(&self) -> String {
        crate::json::to_string(self)
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let e = &self.extension;
        let _ = writeln!(out, "{}: |G| = {}, N = {:?}, |Q| = {}, M = {}", e.name, e.order_g, e.normal_subgroup, e.order_q, e.module.describe());
        if !self.groups.is_empty() {
            let _ = writeln!(out, "sequence");
            for g in &self.groups {
                let _ = writeln!(out, "  {:<16} {:<24} order {}", g.label, g.describe(), num_text(&g.order));
            }
        }
        let sections: [(&str, &[CheckReport]); 6] = [
            ("junctions", &self.junctions),
            ("coincidence", &self.coincidence),
            ("oracle comparison", &self.oracle.comparison),
            ("oracle self-checks", &self.oracle.self_checks),
            ("well-definedness", &self.well_definedness),
            ("errors", &self.errors),
        ];
        for (title, cs) in sections {
            if cs.is_empty() {
                continue;
            }
            let _ = writeln!(out, "{title}");
            for c in cs {
                let detail = c.witness.as_deref().or(c.reason.as_deref()).map(|d| format!(" ({d})")).unwrap_or_default();
                let _ = writeln!(out, "  {:<7} {}{}", c.verdict.to_uppercase(), c.name, detail);
            }
        }
        if let Some(t) = self.oracle.twist {
            let _ = writeln!(out, "twist between tr and d2: {t:+}");
        }
        let _ = writeln!(out, "overall: {}", self.status.to_uppercase());
        out
    }
}

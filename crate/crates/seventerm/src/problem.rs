//! Problem files.
//!
//! A problem file is one JSON object:
//!
//! ```json
//! {
//!   "group": {"order": 4, "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]},
//!   "normal_subgroup": [0, 2],
//!   "module": {"invariant_factors": [2], "action": "trivial"},
//!   "options": {"checks": "all", "degree_max": 3}
//! }
//! ```
//!
//! `group` may instead be the name of a built-in fixture, in which case
//! `normal_subgroup` and `module` default to the fixture's. `action` is either
//! `"trivial"` or one integer matrix per group element, acting on column
//! vectors of coordinates.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use seventerm_core::fixtures;
use seventerm_core::group::{make_extension, FiniteGroup, GModule, GroupExtension};
use seventerm_core::linalg::{FgAbGroup, IntMatrix};
use seventerm_core::{Error as CoreError, Int};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_subgroup: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Fixture(String),
    Table(TableSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub invariant_factors: Vec<i64>,
    pub action: ActionSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Named(String),
    Matrices(Vec<Vec<Vec<i64>>>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Checks {
    #[default]
    All,
    Exactness,
    Coincidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Options {
    pub degree_max: usize,
    pub checks: Checks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<String>,
    pub seed: u64,
    pub perturbations: usize,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { degree_max: 3, checks: Checks::All, report: None, seed: seventerm_core::perturb::DEFAULT_SEED, perturbations: 3, timing: false }
    }
}

/// A diagnostic naming the first offending field.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.field, self.message)
        }
    }
}

fn bad(field: impl Into<String>, message: impl fmt::Display) -> InputError {
    InputError { field: field.into(), message: message.to_string() }
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: String,
    pub ext: GroupExtension,
    pub module: GModule,
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." { String::new() } else { path };
            bad(field, e.into_inner())
        })
    }

    pub fn emit(&self) -> String {
        crate::json::to_string(self)
    }

    /// A spec naming a built-in fixture.
    pub fn named(name: &str) -> Self {
        ProblemSpec { group: GroupSpec::Fixture(name.into()), normal_subgroup: None, module: None, options: Options::default() }
    }

    /// A built-in fixture written out in full.
    pub fn from_fixture(name: &str) -> Option<Self> {
        let f = fixtures::by_name(name)?;
        let m = f.module.module();
        let as_i64 = |x: &Int| x.to_i64().expect("fixture entries are small");
        let action = f.module.act_matrices().iter().map(|a| (0..a.rows()).map(|i| a.row(i).iter().map(as_i64).collect()).collect()).collect();
        Some(ProblemSpec {
            group: GroupSpec::Table(TableSpec { order: f.group.order(), table: f.group.table_rows() }),
            normal_subgroup: Some(f.normal.clone()),
            module: Some(ModuleSpec { invariant_factors: m.torsion().iter().map(as_i64).collect(), action: ActionSpec::Matrices(action) }),
            options: Options::default(),
        })
    }

    /// Reads a problem file, or a fixture name if no such file exists.
    pub fn load(input: &str) -> Result<Self, InputError> {
        let path = Path::new(input);
        if path.is_file() {
            let text = std::fs::read_to_string(path).map_err(|e| bad("", format!("cannot read {input}: {e}")))?;
            return Self::parse(&text);
        }
        if fixtures::by_name(input).is_some() {
            return Ok(Self::named(input));
        }
        Err(bad("", format!("{input} is neither a readable file nor a built-in fixture (see list-fixtures)")))
    }

    pub fn validate(&self) -> Result<Problem, InputError> {
        let o = &self.options;
        if !(1..=3).contains(&o.degree_max) {
            return Err(bad("options.degree_max", format!("{} is outside 1..=3", o.degree_max)));
        }
        if o.perturbations == 0 {
            return Err(bad("options.perturbations", "at least one perturbation is needed"));
        }
        let (name, group, default_normal, default_module) = match &self.group {
            GroupSpec::Fixture(n) => {
                let f = fixtures::by_name(n).ok_or_else(|| bad("group", format!("unknown fixture {n:?}")))?;
                (n.clone(), f.group, Some(f.normal), Some(f.module))
            }
            GroupSpec::Table(t) => ("custom".to_string(), table_group(t)?, None, None),
        };
        let normal = match (&self.normal_subgroup, default_normal) {
            (Some(n), _) => n.clone(),
            (None, Some(n)) => n,
            (None, None) => return Err(bad("normal_subgroup", "required when the group is given by a table")),
        };
        if let Some(i) = normal.iter().position(|&x| x >= group.order()) {
            return Err(bad(format!("normal_subgroup[{i}]"), format!("{} is not an element of a group of order {}", normal[i], group.order())));
        }
        let ext = make_extension(&group, &normal).map_err(|e| bad("normal_subgroup", e))?;
        let module = match (&self.module, default_module) {
            (Some(m), _) => module(m, &group)?,
            (None, Some(m)) => m,
            (None, None) => return Err(bad("module", "required when the group is given by a table")),
        };
        Ok(Problem { name, ext, module })
    }
}

fn table_group(t: &TableSpec) -> Result<FiniteGroup, InputError> {
    if t.order == 0 {
        return Err(bad("group.order", "must be positive"));
    }
    if t.table.len() != t.order {
        return Err(bad("group.table", format!("{} rows for a group of order {}", t.table.len(), t.order)));
    }
    for (i, row) in t.table.iter().enumerate() {
        if row.len() != t.order {
            return Err(bad(format!("group.table[{i}]"), format!("{} entries for a group of order {}", row.len(), t.order)));
        }
        if let Some(j) = row.iter().position(|&x| x >= t.order) {
            return Err(bad(format!("group.table[{i}][{j}]"), format!("{} is out of range", row[j])));
        }
    }
    FiniteGroup::from_table(&t.table).map_err(|e| match e {
        CoreError::NoIdentity { element } => bad("group.table", format!("element 0 is not an identity: row or column {element} differs")),
        CoreError::NoInverse { element } => bad(format!("group.table[{element}]"), format!("element {element} has no inverse")),
        CoreError::NotAssociative { a, b, c } => bad("group.table", format!("not associative at ({a}, {b}, {c})")),
        other => bad("group.table", other),
    })
}

fn module(m: &ModuleSpec, group: &FiniteGroup) -> Result<GModule, InputError> {
    if let Some(i) = m.invariant_factors.iter().position(|&d| d < 2) {
        return Err(bad(format!("module.invariant_factors[{i}]"), format!("{} is not an invariant factor of a finite module (need ≥ 2)", m.invariant_factors[i])));
    }
    let abelian = FgAbGroup::finite(&m.invariant_factors).map_err(|e| match e {
        CoreError::InvariantFactors { position, detail } => bad(format!("module.invariant_factors[{position}]"), detail),
        other => bad("module.invariant_factors", other),
    })?;
    let k = abelian.ngens();
    match &m.action {
        ActionSpec::Named(s) if s == "trivial" => Ok(GModule::trivial(group.order(), abelian)),
        ActionSpec::Named(s) => Err(bad("module.action", format!("{s:?} is not \"trivial\" or a list of matrices"))),
        ActionSpec::Matrices(list) => {
            if list.len() != group.order() {
                return Err(bad("module.action", format!("{} matrices for a group of order {}", list.len(), group.order())));
            }
            let mut act = Vec::with_capacity(list.len());
            for (g, rows) in list.iter().enumerate() {
                if rows.len() != k || rows.iter().any(|r| r.len() != k) {
                    return Err(bad(format!("module.action[{g}]"), format!("expected a {k}x{k} matrix")));
                }
                let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
                act.push(IntMatrix::from_i64_rows(&refs));
            }
            GModule::new(group, abelian, act).map_err(|e| match e {
                CoreError::BadAction { element, detail } => bad(format!("module.action[{element}]"), detail),
                CoreError::ActionNotHomomorphism { g, h } => bad("module.action", format!("not a homomorphism: action({g}) action({h}) ≠ action({g}·{h})")),
                other => bad("module.action", other),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_round_trips() {
        for name in fixtures::NAMES {
            for spec in [ProblemSpec::named(name), ProblemSpec::from_fixture(name).unwrap()] {
                let back = ProblemSpec::parse(&spec.emit()).unwrap();
                assert_eq!(back, spec, "{name}");
                back.validate().unwrap();
            }
        }
    }

    #[test]
    fn defaults_fill_in_options() {
        let s = ProblemSpec::parse(r#"{"group": "fix-a"}"#).unwrap();
        assert_eq!(s.options, Options::default());
        assert_eq!(s.validate().unwrap().ext.n(), &[0, 2]);
    }

    fn error(text: &str) -> InputError {
        match ProblemSpec::parse(text) {
            Ok(s) => s.validate().unwrap_err(),
            Err(e) => e,
        }
    }

    #[test]
    fn diagnostics_name_the_field() {
        assert_eq!(error(r#"{"group": "fix-z"}"#).field, "group");
        assert_eq!(error(r#"{"group": "fix-a", "options": {"degree_max": 9}}"#).field, "options.degree_max");
        assert_eq!(error(r#"{"group": "fix-a", "options": {"checks": "most"}}"#).field, "options.checks");
        assert_eq!(error(r#"{"group": "fix-a", "extra": 1}"#).field, "extra");
        let e = error(r#"{"group": {"order": 2, "table": [[0,1],[1,0]]}, "normal_subgroup": [0, 5], "module": {"invariant_factors": [2], "action": "trivial"}}"#);
        assert_eq!(e.field, "normal_subgroup[1]");
        let e = error(r#"{"group": {"order": 2, "table": [[0,1],[1,1]]}, "normal_subgroup": [0], "module": {"invariant_factors": [2], "action": "trivial"}}"#);
        assert_eq!(e.field, "group.table[1]");
    }

    #[test]
    fn non_associative_table_names_the_triple() {
        // A Latin square with identity 0 that is not a group.
        let t = "[[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]";
        let e = error(&format!(r#"{{"group": {{"order": 5, "table": {t}}}, "normal_subgroup": [0], "module": {{"invariant_factors": [2], "action": "trivial"}}}}"#));
        assert_eq!(e.field, "group.table");
        assert!(e.message.contains("not associative at ("), "{e}");
    }

    #[test]
    fn singular_action_names_the_element() {
        let e = error(r#"{"group": {"order": 2, "table": [[0,1],[1,0]]}, "normal_subgroup": [0], "module": {"invariant_factors": [4], "action": [[[1]], [[2]]]}}"#);
        assert_eq!(e.field, "module.action[1]");
    }
}

//! Pass/fail reports for families of algebraic identities.

use serde::{Deserialize, Serialize};

/// One relation instance and its max-norm residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation_name: String,
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relations: Vec<RelationCheck>,
    pub pass: bool,
}

impl RelationReport {
    pub fn new() -> Self {
        Self {
            relations: Vec::new(),
            pass: true,
        }
    }

    /// Records a residual against `tol`. NaN residuals fail.
    pub fn record(&mut self, name: impl Into<String>, residual: f64, tol: f64) {
        let pass = residual <= tol;
        self.pass &= pass;
        self.relations.push(RelationCheck {
            relation_name: name.into(),
            max_residual: residual,
            pass,
        });
    }

    pub fn merge(&mut self, other: RelationReport) {
        self.pass &= other.pass;
        self.relations.extend(other.relations);
    }

    /// Merges `other`, prefixing each relation name.
    pub fn merge_prefixed(&mut self, prefix: &str, other: RelationReport) {
        self.pass &= other.pass;
        self.relations
            .extend(other.relations.into_iter().map(|mut r| {
                r.relation_name = format!("{prefix}: {}", r.relation_name);
                r
            }));
    }

    pub fn max_residual(&self) -> f64 {
        self.relations
            .iter()
            .map(|r| r.max_residual)
            .fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.relations.iter().filter(|r| !r.pass)
    }

    pub fn get(&self, name: &str) -> Option<&RelationCheck> {
        self.relations.iter().find(|r| r.relation_name == name)
    }
}

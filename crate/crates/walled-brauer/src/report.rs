//! Uniform pass/fail records serialised into the JSON reports.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub relation: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub orientation: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub indices: Vec<usize>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_minus_rhs_term_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(relation: impl Into<String>, status: Status) -> Self {
        Check {
            relation: relation.into(),
            orientation: String::new(),
            indices: Vec::new(),
            status,
            lhs_minus_rhs_term_count: None,
            residual: None,
            detail: String::new(),
        }
    }

    pub fn exact(relation: impl Into<String>, orientation: impl ToString, indices: Vec<usize>, diff_terms: usize) -> Self {
        let mut c = Check::new(relation, if diff_terms == 0 { Status::Pass } else { Status::Fail });
        c.orientation = orientation.to_string();
        c.indices = indices;
        c.lhs_minus_rhs_term_count = Some(diff_terms);
        c
    }

    pub fn numeric(relation: impl Into<String>, orientation: impl ToString, indices: Vec<usize>, residual: f64, tol: f64) -> Self {
        let mut c = Check::new(relation, if residual < tol { Status::Pass } else { Status::Fail });
        c.orientation = orientation.to_string();
        c.indices = indices;
        c.residual = Some(residual);
        c
    }

    pub fn flag(relation: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let mut c = Check::new(relation, if ok { Status::Pass } else { Status::Fail });
        c.detail = detail.into();
        c
    }

    pub fn with_orientation(mut self, a: impl ToString) -> Self {
        self.orientation = a.to_string();
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().filter_map(|c| c.residual).fold(0.0, f64::max)
    }
}

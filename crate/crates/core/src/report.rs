use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::exactq::{is_zero_vec, vsub, Vector};

/// One failing instance of an identity on a basis tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    /// Basis indices of the arguments, each within its own graded component.
    pub witness: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
    /// Always `lhs - rhs`, never zero.
    pub residual: Vector,
}

impl IdentityReport {
    pub fn compare(identity: &str, witness: &[usize], lhs: Vector, rhs: Vector) -> Option<Self> {
        let residual = vsub(&lhs, &rhs);
        if is_zero_vec(&residual) {
            return None;
        }
        Some(IdentityReport {
            identity: identity.to_string(),
            witness: witness.to_vec(),
            lhs,
            rhs,
            residual,
        })
    }

    pub fn with_prefix(mut self, prefix: &str) -> Self {
        self.identity = format!("{prefix}{}", self.identity);
        self
    }
}

fn fmt_vec(f: &mut fmt::Formatter<'_>, v: &[crate::exactq::Scalar]) -> fmt::Result {
    write!(f, "[")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "]")
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} witness=(", self.identity)?;
        for (i, w) in self.witness.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ") lhs=")?;
        fmt_vec(f, &self.lhs)?;
        write!(f, " rhs=")?;
        fmt_vec(f, &self.rhs)?;
        write!(f, " residual=")?;
        fmt_vec(f, &self.residual)
    }
}

/// Distinct identity names appearing in a report list.
pub fn families(reports: &[IdentityReport]) -> BTreeSet<String> {
    reports.iter().map(|r| r.identity.clone()).collect()
}

pub(crate) fn prefixed(prefix: &str, reports: Vec<IdentityReport>) -> Vec<IdentityReport> {
    reports.into_iter().map(|r| r.with_prefix(prefix)).collect()
}

/// Accumulates failing instances in evaluation order.
#[derive(Default)]
pub(crate) struct Collector {
    pub reports: Vec<IdentityReport>,
}

impl Collector {
    pub fn check(&mut self, identity: &str, witness: &[usize], lhs: Vector, rhs: Vector) {
        if let Some(r) = IdentityReport::compare(identity, witness, lhs, rhs) {
            self.reports.push(r);
        }
    }

    pub fn finish(self) -> Vec<IdentityReport> {
        self.reports
    }
}

//! Axiom-violation reports shared by every validator in the crate.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Which law a witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Identity,
    IdentityLaw,
    Associativity,
    Totality,
    Typing,
    FunctorPreservation,
    Naturality,
    Alignment,
    HorizontalTotality,
    HorizontalIdentity,
    HorizontalUnit,
    HorizontalAssociativity,
    Interchange,
    /// Lax axiom i).
    Normality,
    /// Lax axiom ii).
    LaxNaturality,
    /// Lax axiom iii).
    LaxCoherence,
    Monoidal,
    Triangle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Names of the entities witnessing the failure, in the order the law mentions them.
    pub witness: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} [{}]: {}", self.axiom, self.witness.join(", "), self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn push(&mut self, axiom: Axiom, witness: Vec<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            axiom,
            witness,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Prefixes every witness-free detail with `context`; used when a sub-structure
    /// (hom-category, value category) is validated on behalf of its parent.
    pub fn scoped(mut self, context: &str) -> Self {
        for v in &mut self.violations {
            v.detail = format!("{context}: {}", v.detail);
        }
        self
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn into_result(self) -> crate::Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(crate::Error::Invalid(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

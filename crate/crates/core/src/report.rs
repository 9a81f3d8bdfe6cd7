use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exactlin::{format_rational, is_zero_vector, Vector};

/// One failing instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity_id: String,
    /// Semigroup labels (family identities only), 0-based.
    pub labels: Vec<usize>,
    /// Basis indices, 0-based; serialized 1-based.
    pub basis_tuple: Vec<usize>,
    /// Exact `lhs - rhs`.
    pub residual: Vector,
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Violation", 4)?;
        s.serialize_field("identity_id", &self.identity_id)?;
        if !self.labels.is_empty() {
            s.serialize_field("labels", &self.labels)?;
        }
        let tuple: Vec<usize> = self.basis_tuple.iter().map(|i| i + 1).collect();
        s.serialize_field("basis_tuple", &tuple)?;
        let residual: Vec<String> = self.residual.iter().map(format_rational).collect();
        s.serialize_field("residual", &residual)?;
        s.end()
    }
}

/// Result of checking one structure on every basis tuple.
///
/// `passed` is derived from `violations`, never stored separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    structure_name: String,
    violations: Vec<Violation>,
    notes: Vec<String>,
}

impl CheckReport {
    pub fn new(structure_name: impl Into<String>) -> Self {
        CheckReport {
            structure_name: structure_name.into(),
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn structure_name(&self) -> &str {
        &self.structure_name
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Records a violation unless `residual` is zero.
    pub fn record(&mut self, identity_id: &str, basis_tuple: &[usize], residual: Vector) {
        self.record_labeled(identity_id, &[], basis_tuple, residual);
    }

    pub fn record_labeled(
        &mut self,
        identity_id: &str,
        labels: &[usize],
        basis_tuple: &[usize],
        residual: Vector,
    ) {
        if is_zero_vector(&residual) {
            return;
        }
        self.violations.push(Violation {
            identity_id: identity_id.to_string(),
            labels: labels.to_vec(),
            basis_tuple: basis_tuple.to_vec(),
            residual,
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Folds another report in, prefixing its identity ids.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut v in other.violations {
            v.identity_id = format!("{prefix}{}", v.identity_id);
            self.violations.push(v);
        }
        self.notes.extend(other.notes);
    }

    /// Identity ids that have at least one violation, deduplicated.
    pub fn failing_identities(&self) -> Vec<String> {
        let mut ids: Vec<String> = self
            .violations
            .iter()
            .map(|v| v.identity_id.clone())
            .collect();
        ids.sort();
        ids.dedup();
        ids
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl Serialize for CheckReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CheckReport", 4)?;
        s.serialize_field("structure_name", &self.structure_name)?;
        s.serialize_field("passed", &self.passed())?;
        s.serialize_field("violations", &self.violations)?;
        s.serialize_field("notes", &self.notes)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    #[test]
    fn passed_tracks_violations() {
        let mut r = CheckReport::new("demo");
        r.record("id", &[0, 1], vec![int(0), int(0)]);
        assert!(r.passed());
        r.record("id", &[0, 1], vec![int(0), int(2)]);
        assert!(!r.passed());
        assert_eq!(
            r.to_json(),
            r#"{
  "structure_name": "demo",
  "passed": false,
  "violations": [
    {
      "identity_id": "id",
      "basis_tuple": [
        1,
        2
      ],
      "residual": [
        "0",
        "2"
      ]
    }
  ],
  "notes": []
}"#
        );
    }
}

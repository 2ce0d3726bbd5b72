//! Certification reports: named deviation items checked against a tolerance.

use serde::Serialize;

/// Whether an identity is part of the defining structure or an
/// implementation-level consequence.
pub const PROV_DEFINING: &str = "defining";
/// See [`PROV_DEFINING`].
pub const PROV_DERIVED: &str = "derived";

/// One certified identity: its observed deviation against a tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct ReportItem {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub provenance: String,
}

/// An ordered collection of certified identities.
#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub items: Vec<ReportItem>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self { items: Vec::new() }
    }

    /// Record one identity; `pass` iff `max_deviation < tolerance`.
    pub fn push(
        &mut self,
        name: impl Into<String>,
        max_deviation: f64,
        tolerance: f64,
        provenance: &str,
    ) {
        self.items.push(ReportItem {
            name: name.into(),
            max_deviation,
            tolerance,
            pass: max_deviation < tolerance,
            provenance: provenance.to_string(),
        });
    }

    /// Append all items of `other`.
    pub fn merge(&mut self, other: VerificationReport) {
        self.items.extend(other.items);
    }

    /// Sort items by name for a deterministic presentation order.
    pub fn sort_by_name(&mut self) {
        self.items.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn passed(&self) -> usize {
        self.items.iter().filter(|i| i.pass).count()
    }

    pub fn total(&self) -> usize {
        self.items.len()
    }

    /// Look up an item by exact name.
    pub fn item(&self, name: &str) -> Option<&ReportItem> {
        self.items.iter().find(|i| i.name == name)
    }

    /// Largest deviation across all items (0 for an empty report).
    pub fn worst(&self) -> f64 {
        self.items
            .iter()
            .map(|i| i.max_deviation)
            .fold(0.0, f64::max)
    }
}

//! Named normal forms, loaded from a TOML document of `[[entry]]` tables
//! and checked against their expected type and stabilizer dimension.

use rayon::prelude::*;
use serde::Deserialize;

use super::{classify, ClassificationReport, FormType};
use crate::error::{Error, Result};
use crate::expr::parse_form;
use crate::exterior::KForm;
use crate::field::FieldDesc;

const BUNDLED: &str = include_str!("../../assets/registry.toml");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default)]
    entry: Vec<RawEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    dim: usize,
    field: String,
    form: String,
    expect_type: String,
    expect_stab_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegistryEntry {
    pub name: String,
    pub dim: usize,
    pub field: FieldDesc,
    /// The expression as written in the document.
    pub source: String,
    pub form: KForm,
    pub expect_type: FormType,
    pub expect_stab_dim: usize,
    /// What the classifier actually reports for `form`.
    pub report: ClassificationReport,
}

impl RegistryEntry {
    fn from_raw(raw: RawEntry) -> Result<Self> {
        let ctx = |e: Error| Error::Registry(format!("entry '{}': {e}", raw.name));
        let field: FieldDesc = raw.field.parse().map_err(ctx)?;
        let form = parse_form(&raw.form, Some(raw.dim), field).map_err(ctx)?;
        let expect_type: FormType = raw.expect_type.parse().map_err(ctx)?;
        let report = classify(&form).map_err(ctx)?;
        Ok(RegistryEntry {
            name: raw.name,
            dim: raw.dim,
            field,
            source: raw.form,
            form,
            expect_type,
            expect_stab_dim: raw.expect_stab_dim,
            report,
        })
    }

    /// Describes how the classification disagrees with the expectation.
    pub fn mismatch(&self) -> Option<String> {
        let mut problems = Vec::new();
        if self.report.form_type != self.expect_type {
            problems.push(format!(
                "expected type {}, classified as {} ({})",
                self.expect_type, self.report.form_type, self.report.discriminant
            ));
        }
        if self.report.stabilizer_dim != self.expect_stab_dim {
            problems.push(format!(
                "expected stabilizer dimension {}, computed {}",
                self.expect_stab_dim, self.report.stabilizer_dim
            ));
        }
        (!problems.is_empty()).then(|| problems.join("; "))
    }

    pub fn verify(&self) -> Result<()> {
        match self.mismatch() {
            Some(msg) => Err(Error::RegistryMismatch {
                name: self.name.clone(),
                msg,
            }),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Registry {
    entries: Vec<RegistryEntry>,
}

impl Registry {
    /// Parses and classifies every entry without checking expectations.
    pub fn parse_unverified(text: &str) -> Result<Self> {
        let doc: Document =
            toml::from_str(text).map_err(|e| Error::Registry(e.message().to_string()))?;
        let mut seen = std::collections::HashSet::new();
        for raw in &doc.entry {
            if !seen.insert(raw.name.as_str()) {
                return Err(Error::Registry(format!("duplicate entry '{}'", raw.name)));
            }
        }
        let entries = doc
            .entry
            .into_par_iter()
            .map(RegistryEntry::from_raw)
            .collect::<Result<Vec<_>>>()?;
        Ok(Registry { entries })
    }

    /// The registry shipped with the library.
    pub fn bundled() -> Result<Self> {
        registry_load(BUNDLED)
    }

    pub fn bundled_source() -> &'static str {
        BUNDLED
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&RegistryEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Parses, classifies and verifies a registry document; fails on the first
/// entry (in document order) whose classification disagrees.
pub fn registry_load(text: &str) -> Result<Registry> {
    let registry = Registry::parse_unverified(text)?;
    for entry in registry.entries() {
        entry.verify()?;
    }
    Ok(registry)
}

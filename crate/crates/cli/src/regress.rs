//! Regression fixtures: natural modules of the small algebras, re-derived
//! from scratch and compared byte for byte.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use superdirac::rep::ModuleData;
use superdirac::AlgebraContext;

use crate::report::{self, CohomologyOptions, DiracOptions};

pub const FIXTURE_RANKS: [(usize, usize); 3] = [(1, 1), (2, 1), (1, 2)];
pub const FIXTURE_DEGREE: usize = 6;

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_name(m: usize, n: usize) -> String {
    format!("gl{m}{n}_nat.json")
}

/// Everything pinned for one algebra: the Weyl identities with the constant
/// `C`, the Dirac cohomology of the natural module and its `g±` (co)homology.
pub fn derive(m: usize, n: usize) -> anyhow::Result<(Value, bool)> {
    let ctx = AlgebraContext::new(m, n)?;
    let nat = ModuleData::natural(&ctx);
    let ids = report::identities(&ctx, false)?;
    let dirac = report::dirac(&nat, FIXTURE_DEGREE, DiracOptions { infinitesimal: true, bound: true })?;
    let coh = report::cohomology(&nat, FIXTURE_DEGREE, CohomologyOptions { homology: true, twist: true, hodge: false })?;
    let passed = ids.passed && dirac.passed && coh.passed;
    Ok((
        json!({
            "schema": crate::SCHEMA,
            "fixture": format!("gl({m}|{n}) nat"),
            "identities": ids.value,
            "dirac": dirac.value,
            "cohomology": coh.value,
        }),
        passed,
    ))
}

#[derive(Clone, Debug)]
pub struct FixtureResult {
    pub name: String,
    pub identical: bool,
    pub checks_passed: bool,
    pub note: Option<String>,
}

/// Re-derives every fixture. With `bless` the files are rewritten instead of
/// compared.
pub fn run(dir: &Path, bless: bool) -> anyhow::Result<Vec<FixtureResult>> {
    let mut out = Vec::new();
    for (m, n) in FIXTURE_RANKS {
        let name = fixture_name(m, n);
        let (value, checks_passed) = derive(m, n)?;
        let text = crate::canonical(&value)?;
        let path = dir.join(&name);
        if bless {
            fs::create_dir_all(dir)?;
            crate::write_atomic(&path, &text)?;
            out.push(FixtureResult { name, identical: true, checks_passed, note: Some("blessed".into()) });
            continue;
        }
        let (identical, note) = match fs::read_to_string(&path) {
            Ok(stored) if stored == text => (true, None),
            Ok(stored) => (false, Some(first_difference(&stored, &text))),
            Err(e) => (false, Some(format!("cannot read {}: {e}", path.display()))),
        };
        out.push(FixtureResult { name, identical, checks_passed, note });
    }
    Ok(out)
}

fn first_difference(stored: &str, fresh: &str) -> String {
    for (k, (a, b)) in stored.lines().zip(fresh.lines()).enumerate() {
        if a != b {
            return format!("line {}: stored {a:?}, derived {b:?}", k + 1);
        }
    }
    format!("length differs: stored {} lines, derived {}", stored.lines().count(), fresh.lines().count())
}

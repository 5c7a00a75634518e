//! Angular-profile container: an ordered (θ, φ, D) table plus the parameter
//! echo that makes a run reconstructible from its own output.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// One angular sample of a differential cross-section, D in units of a_s².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub theta: f64,
    pub phi: f64,
    pub d: f64,
}

/// Ordered collection of profile points with run metadata.
#[derive(Debug, Clone, Default)]
pub struct AngularProfile {
    entries: Vec<ProfilePoint>,
    metadata: BTreeMap<String, String>,
}

impl AngularProfile {
    /// Builds a profile, enforcing D ≥ 0 everywhere and strictly increasing
    /// θ within each fixed-φ scan.
    pub fn new(entries: Vec<ProfilePoint>, metadata: BTreeMap<String, String>) -> Result<Self> {
        let mut last: Option<ProfilePoint> = None;
        for p in &entries {
            if !(0.0..=std::f64::consts::PI).contains(&p.theta) {
                return Err(Error::Domain(format!("theta {} outside [0, pi]", p.theta)));
            }
            if !(p.d >= 0.0) {
                return Err(Error::Domain(format!(
                    "cross-section must be >= 0, got {} at theta {}",
                    p.d, p.theta
                )));
            }
            if let Some(prev) = last {
                if prev.phi == p.phi && p.theta <= prev.theta {
                    return Err(Error::Domain(format!(
                        "theta must strictly increase within a fixed-phi scan ({} after {})",
                        p.theta, prev.theta
                    )));
                }
            }
            last = Some(*p);
        }
        Ok(Self { entries, metadata })
    }

    pub fn entries(&self) -> &[ProfilePoint] {
        &self.entries
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }
}

//! Batch files of reduction-theorem instances.
//!
//! One instance per line, `group ; omega ; z [; expected_real ; expected_complex]`,
//! with `#` comments. Expected values, when present, are compared with the
//! group solver as an extra check.

use serde::{Deserialize, Serialize};

use super::{verify_reduction, AdmmConfig, ReductionReport, REDUCTION_TOLERANCE};
use crate::error::{Error, Result};
use crate::group::{parse_omega, FiniteGroup, GroupDescriptor};
use crate::sweep::SweepConfig;

/// The matrix shipped with the library.
pub const DEFAULT_REDUCTION_MATRIX: &str = include_str!("../../data/reduction_matrix.txt");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixInstance {
    pub line: usize,
    pub group: String,
    pub omega: String,
    pub z: usize,
    pub expected: Option<(f64, f64)>,
}

pub fn parse_reduction_matrix(text: &str) -> Result<Vec<MatrixInstance>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        let bad = |what: String| Error::Parse(format!("line {}: {what}", i + 1));
        if fields.len() != 3 && fields.len() != 5 {
            return Err(bad(format!(
                "expected 3 or 5 ';'-separated fields, got {}",
                fields.len()
            )));
        }
        let z = fields[2]
            .parse()
            .map_err(|e| bad(format!("bad element index '{}': {e}", fields[2])))?;
        let expected = if fields.len() == 5 {
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| bad(format!("bad value '{s}': {e}")))
            };
            Some((num(fields[3])?, num(fields[4])?))
        } else {
            None
        };
        out.push(MatrixInstance {
            line: i + 1,
            group: fields[0].to_string(),
            omega: fields[1].to_string(),
            z,
            expected,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub instance: MatrixInstance,
    pub group_order: usize,
    /// Ω after intersecting with its inverse set.
    pub omega: Vec<usize>,
    pub omega_was_symmetric: bool,
    pub report: ReductionReport,
    /// Largest gap to the expected values, when given.
    pub expected_gap: Option<f64>,
    pub pass: bool,
}

/// Builds the group and Ω and runs [`verify_reduction`]; errors only on
/// malformed group or Ω descriptions.
pub fn run_instance(
    inst: &MatrixInstance,
    sweep: &SweepConfig,
    admm: &AdmmConfig,
) -> Result<InstanceOutcome> {
    let desc: GroupDescriptor = inst.group.parse()?;
    let g = FiniteGroup::make(&desc)?;
    let omega = parse_omega(&g, &inst.omega, inst.z)?;
    let report = verify_reduction(&g, &omega.mask, inst.z, sweep, admm);
    let expected_gap = inst.expected.map(|(real, complex)| {
        report
            .comparisons
            .iter()
            .map(|c| {
                let want = match c.field {
                    crate::Field::Real => real,
                    crate::Field::Complex => complex,
                };
                c.group_value.map_or(f64::INFINITY, |v| (v - want).abs())
            })
            .fold(0.0, f64::max)
    });
    let pass = report.pass && expected_gap.map_or(true, |gap| gap <= REDUCTION_TOLERANCE);
    Ok(InstanceOutcome {
        instance: inst.clone(),
        group_order: g.order(),
        omega: omega.mask.indices(),
        omega_was_symmetric: omega.was_symmetric,
        report,
        expected_gap,
        pass,
    })
}

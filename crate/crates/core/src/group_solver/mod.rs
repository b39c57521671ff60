//! Extremal constants `CF_G(Ω, z)` and `K_G(Ω, z)` on a finite group by
//! semidefinite optimization over the full group matrix.
//!
//! The feasible set is `{ f : [f(x y^{-1})] ⪰ 0, f(e) = 1, f = 0 off Ω }`.
//! ADMM returns an approximately PSD witness; [`certify`] turns it into an
//! exactly pd one at a small cost in the objective, so certified bounds are
//! rigorous. Upper bounds come only from agreement with the cyclic reduction.

pub mod admm;
pub mod matrix;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use admm::{admm_solve, AdmmConfig, AdmmDiagnostics, AdmmOutput, AdmmState, AffineSet};

use crate::cyclic;
use crate::error::{Error, Result};
use crate::group::{support_trace, CyclicTrace, FiniteGroup, SubsetMask};
use crate::linalg::HermitianMatrix;
use crate::posdef::{
    is_posdef, min_group_eigenvalue, GroupFunction, PdCertificate, DEFAULT_TOLERANCE,
};
use crate::sweep::{sweep_max, two_point_max, SweepConfig};
use crate::Field;

/// Gap allowed between the group value and the cyclic value.
pub const REDUCTION_TOLERANCE: f64 = 1e-3;

/// Group-matrix structure: `M[x][y] = f(x y^{-1})` with `f(e) = 1` and
/// `f = 0` off `Ω`.
pub struct GroupAffineSet<'a> {
    group: &'a FiniteGroup,
    omega: &'a SubsetMask,
    field: Field,
    quotient: Vec<usize>,
}

impl<'a> GroupAffineSet<'a> {
    pub fn new(group: &'a FiniteGroup, omega: &'a SubsetMask, field: Field) -> Self {
        let n = group.order();
        let mut quotient = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                quotient.push(group.mul(x, group.inv(y)));
            }
        }
        Self {
            group,
            omega,
            field,
            quotient,
        }
    }

    /// The admissible function nearest to `M`.
    pub fn function_of(&self, m: &HermitianMatrix) -> GroupFunction {
        let n = self.group.order();
        let mut sum = vec![Complex64::new(0.0, 0.0); n];
        for (q, v) in self.quotient.iter().zip(m.as_slice()) {
            sum[*q] += v;
        }
        let scale = 1.0 / n as f64;
        let mut f: Vec<Complex64> = (0..n)
            .map(|g| 0.5 * scale * (sum[g] + sum[self.group.inv(g)].conj()))
            .collect();
        for (g, v) in f.iter_mut().enumerate() {
            if !self.omega.contains(g) {
                *v = Complex64::new(0.0, 0.0);
            } else if self.field == Field::Real {
                v.im = 0.0;
            }
        }
        f[self.group.identity()] = Complex64::new(1.0, 0.0);
        GroupFunction::new(f)
    }

    pub fn matrix_of(&self, f: &GroupFunction) -> HermitianMatrix {
        let n = self.group.order();
        let v = f.values();
        HermitianMatrix::from_fn(n, |x, y| v[self.quotient[x * n + y]])
    }
}

impl AffineSet for GroupAffineSet<'_> {
    fn dim(&self) -> usize {
        self.group.order()
    }

    fn project(&self, m: &HermitianMatrix) -> HermitianMatrix {
        self.matrix_of(&self.function_of(m))
    }
}

/// Nearest group matrix of an admissible complex function.
pub fn affine_project(
    m: &HermitianMatrix,
    g: &FiniteGroup,
    omega: &SubsetMask,
) -> Result<HermitianMatrix> {
    if m.dim() != g.order() || omega.group_order() != g.order() {
        return Err(Error::LengthMismatch {
            expected: g.order(),
            got: m.dim(),
        });
    }
    Ok(GroupAffineSet::new(g, omega, Field::Complex).project(m))
}

/// `C` with `⟨C, M(f)⟩ = Re(e^{-iθ} f(z))`.
pub fn objective_matrix(g: &FiniteGroup, z: usize, theta: f64) -> HermitianMatrix {
    let n = g.order();
    let zinv = g.inv(z);
    let w = Complex64::from_polar(1.0 / (2.0 * n as f64), theta);
    HermitianMatrix::from_fn(n, |x, y| {
        let q = g.mul(x, g.inv(y));
        let mut c = Complex64::new(0.0, 0.0);
        if q == z {
            c += w;
        }
        if q == zinv {
            c += w.conj();
        }
        c
    })
}

#[derive(Debug, Clone)]
pub struct ExtremalProblem {
    pub group: FiniteGroup,
    pub omega: SubsetMask,
    pub z: usize,
    pub field: Field,
    pub sweep: SweepConfig,
    pub admm: AdmmConfig,
}

impl ExtremalProblem {
    /// Requires `Ω` symmetric with `e ∈ Ω`.
    pub fn new(group: FiniteGroup, omega: SubsetMask, z: usize, field: Field) -> Result<Self> {
        group.check_element(z)?;
        if omega.group_order() != group.order() {
            return Err(Error::LengthMismatch {
                expected: group.order(),
                got: omega.group_order(),
            });
        }
        if !omega.contains(group.identity()) {
            return Err(Error::IdentityMissing);
        }
        if !omega.is_symmetric(&group) {
            return Err(Error::InvalidArgument(
                "Ω must be symmetric (x ∈ Ω ⟺ x⁻¹ ∈ Ω)".into(),
            ));
        }
        Ok(Self {
            group,
            omega,
            z,
            field,
            sweep: SweepConfig::default(),
            admm: AdmmConfig::default(),
        })
    }

    pub fn with_sweep(mut self, sweep: SweepConfig) -> Self {
        self.sweep = sweep;
        self
    }

    pub fn with_admm(mut self, admm: AdmmConfig) -> Self {
        self.admm = admm;
        self
    }

    pub fn trace(&self) -> Result<CyclicTrace> {
        support_trace(&self.group, &self.omega, self.z)
    }
}

/// One fixed-direction subproblem.
#[derive(Debug, Clone)]
pub struct DirectionalSolve {
    /// `Re(e^{-iθ} f(z))` at the witness.
    pub value: f64,
    pub witness: GroupFunction,
    pub diagnostics: AdmmDiagnostics,
    pub state: AdmmState,
}

/// Maximizes `Re(e^{-iθ} f(z))` over the feasible set.
#[allow(clippy::too_many_arguments)]
pub fn admm_maximize(
    g: &FiniteGroup,
    omega: &SubsetMask,
    z: usize,
    theta: f64,
    field: Field,
    config: &AdmmConfig,
    warm: Option<AdmmState>,
) -> Result<DirectionalSolve> {
    g.check_element(z)?;
    let set = GroupAffineSet::new(g, omega, field);
    let mut c = objective_matrix(g, z, theta);
    if field == Field::Real {
        for v in c.as_mut_slice() {
            v.im = 0.0;
        }
    }
    let out = admm_solve(&c, &set, config, warm)?;
    let witness = set.function_of(&out.state.x);
    let value = (Complex64::from_polar(1.0, -theta) * witness.at(z)).re;
    Ok(DirectionalSolve {
        value,
        witness,
        diagnostics: out.diagnostics,
        state: out.state,
    })
}

/// An exactly pd function derived from an approximate witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certification {
    /// `|f(z)| / (1 + ε)`.
    pub lower_bound: f64,
    pub epsilon: f64,
    /// `(f + ε δ_e) / (1 + ε)`.
    pub witness: GroupFunction,
    /// Checked with tolerance 0.
    pub certificate: PdCertificate,
}

/// ε-shift certificate: `(M(f) + ε I) / (1 + ε)` is the group matrix of a
/// feasible function, PSD once `ε` exceeds `-λ_min` plus rounding slack.
pub fn certify(
    g: &FiniteGroup,
    f: &GroupFunction,
    omega: &SubsetMask,
    z: usize,
) -> Result<Certification> {
    if f.group_order() != g.order() || omega.group_order() != g.order() {
        return Err(Error::LengthMismatch {
            expected: g.order(),
            got: f.group_order(),
        });
    }
    g.check_element(z)?;
    let e = g.identity();
    if (f.at(e) - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "certify needs f(e) = 1, got {}",
            f.at(e)
        )));
    }
    if let Some(x) = (0..g.order()).find(|&x| !omega.contains(x) && f.at(x).norm() > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "witness is nonzero at element {x} outside Ω"
        )));
    }
    let n = g.order() as f64;
    let lambda = min_group_eigenvalue(g, f)?;
    let norm = (n * f.values().iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt();
    let mut slack = 32.0 * n * f64::EPSILON * norm;
    loop {
        let epsilon = if lambda >= slack { 0.0 } else { slack - lambda };
        let mut shifted = f.clone();
        shifted.set(e, f.at(e) + epsilon);
        let shifted = shifted.scale(Complex64::new(1.0 / (1.0 + epsilon), 0.0));
        let certificate = is_posdef(g, &shifted, 0.0)?;
        if certificate.is_pd() {
            return Ok(Certification {
                lower_bound: f.at(z).norm() / (1.0 + epsilon),
                epsilon,
                witness: shifted,
                certificate,
            });
        }
        slack *= 4.0;
    }
}

/// `δ_e + ½(δ_z + δ_{z^{-1}})` for `z ≠ z^{-1}`, `δ_e + ½ δ_z` for an
/// involution: feasible whenever `z ∈ Ω`, with `f(z) = ½`.
pub fn two_point_witness(g: &FiniteGroup, z: usize) -> Result<GroupFunction> {
    g.check_element(z)?;
    if z == g.identity() {
        return Err(Error::InvalidArgument(
            "two-point witness needs z ≠ e".into(),
        ));
    }
    let mut f = GroupFunction::delta(g.order(), g.identity());
    f.set(z, Complex64::new(0.5, 0.0));
    f.set(g.inv(z), Complex64::new(0.5, 0.0));
    Ok(f)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtremalResult {
    /// `|f(z)|` at the ADMM witness.
    pub value: f64,
    pub witness: GroupFunction,
    /// Certificate of `witness` at the default tolerance.
    pub certificate: PdCertificate,
    pub certified_lower_bound: f64,
    pub certified_witness: GroupFunction,
    pub sweep_angle: f64,
    pub diagnostics: AdmmDiagnostics,
    pub subproblems: usize,
}

fn degenerate(problem: &ExtremalProblem, value: f64) -> Result<ExtremalResult> {
    let g = &problem.group;
    let witness = GroupFunction::delta(g.order(), g.identity());
    let certificate = is_posdef(g, &witness, DEFAULT_TOLERANCE)?;
    Ok(ExtremalResult {
        value,
        certified_lower_bound: value,
        certified_witness: witness.clone(),
        witness,
        certificate,
        sweep_angle: 0.0,
        diagnostics: AdmmDiagnostics {
            iterations: 0,
            primal_residual: 0.0,
            dual_residual: 0.0,
        },
        subproblems: 0,
    })
}

/// Solves the extremal problem: `θ ∈ {0, π}` for the real field, the angle
/// sweep for the complex field. Each direction starts from the solution at
/// `θ = 0`.
pub fn solve(problem: &ExtremalProblem) -> Result<ExtremalResult> {
    let g = &problem.group;
    let z = problem.z;
    if !problem.omega.contains(z) {
        return degenerate(problem, 0.0);
    }
    if z == g.identity() {
        return degenerate(problem, 1.0);
    }
    let base = admm_maximize(
        g,
        &problem.omega,
        z,
        0.0,
        problem.field,
        &problem.admm,
        None,
    )?;
    let eval = |theta: f64| -> Result<(f64, DirectionalSolve)> {
        let s = if theta == 0.0 {
            base.clone()
        } else {
            admm_maximize(
                g,
                &problem.omega,
                z,
                theta,
                problem.field,
                &problem.admm,
                Some(base.state.clone()),
            )?
        };
        Ok((s.value, s))
    };
    let outcome = match problem.field {
        Field::Real => two_point_max(eval)?,
        Field::Complex => sweep_max(&problem.sweep, eval)?,
    };
    let best = outcome.best;
    let witness = best.payload.witness;
    let cert = certify(g, &witness, &problem.omega, z)?;
    let certificate = is_posdef(g, &witness, DEFAULT_TOLERANCE)?;
    Ok(ExtremalResult {
        value: witness.at(z).norm(),
        certified_lower_bound: cert.lower_bound,
        certified_witness: cert.witness,
        witness,
        certificate,
        sweep_angle: best.angle,
        diagnostics: best.payload.diagnostics,
        subproblems: outcome.evaluations,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldComparison {
    pub field: Field,
    pub group_value: Option<f64>,
    pub certified_lower_bound: Option<f64>,
    pub cyclic_value: Option<f64>,
    pub gap: Option<f64>,
    pub error: Option<String>,
}

impl FieldComparison {
    pub fn pass(&self) -> bool {
        self.gap.is_some_and(|g| g <= REDUCTION_TOLERANCE)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReductionReport {
    pub element_order: usize,
    pub trace: Option<CyclicTrace>,
    pub comparisons: Vec<FieldComparison>,
    pub pass: bool,
}

fn compare(
    g: &FiniteGroup,
    omega: &SubsetMask,
    z: usize,
    field: Field,
    trace: &CyclicTrace,
    sweep: &SweepConfig,
    admm: &AdmmConfig,
) -> FieldComparison {
    let mut cmp = FieldComparison {
        field,
        group_value: None,
        certified_lower_bound: None,
        cyclic_value: None,
        gap: None,
        error: None,
    };
    let group_side = ExtremalProblem::new(g.clone(), omega.clone(), z, field)
        .map(|p| p.with_sweep(*sweep).with_admm(*admm))
        .and_then(|p| solve(&p));
    let m = trace.modulus();
    let cyclic_side = match field {
        Field::Real => cyclic::solve_k_m(m, trace, 1),
        Field::Complex => cyclic::solve_cf_m(m, trace, 1),
    };
    match (group_side, cyclic_side) {
        (Ok(r), Ok(c)) => {
            cmp.group_value = Some(r.value);
            cmp.certified_lower_bound = Some(r.certified_lower_bound);
            cmp.cyclic_value = Some(c.value);
            cmp.gap = Some((r.value - c.value).abs());
        }
        (Err(e), _) | (_, Err(e)) => cmp.error = Some(e.to_string()),
    }
    cmp
}

/// Group SDP value against the cyclic value on `H_m(Ω, z)`, both fields.
pub fn verify_reduction(
    g: &FiniteGroup,
    omega: &SubsetMask,
    z: usize,
    sweep: &SweepConfig,
    admm: &AdmmConfig,
) -> ReductionReport {
    let element_order = if z < g.order() { g.element_order(z) } else { 0 };
    let trace = match support_trace(g, omega, z) {
        Ok(t) => t,
        Err(e) => {
            return ReductionReport {
                element_order,
                trace: None,
                comparisons: vec![FieldComparison {
                    field: Field::Real,
                    group_value: None,
                    certified_lower_bound: None,
                    cyclic_value: None,
                    gap: None,
                    error: Some(e.to_string()),
                }],
                pass: false,
            };
        }
    };
    let comparisons: Vec<FieldComparison> = [Field::Real, Field::Complex]
        .into_iter()
        .map(|field| compare(g, omega, z, field, &trace, sweep, admm))
        .collect();
    let pass = comparisons.iter().all(FieldComparison::pass);
    ReductionReport {
        element_order,
        trace: Some(trace),
        comparisons,
        pass,
    }
}

//! Extremal problems on `Z_m` and on `Z` with windowed support.
//!
//! On `Z_m` the group matrix is circulant, so positive definiteness is
//! `φ̂(r) >= 0` for every `r` and the problem is a linear program. On `Z`, a
//! sequence supported in `[-N, N]` is positive definite exactly when
//! `φ(n) = Σ_k Q[k][k+n]` for a PSD `(N+1) × (N+1)` matrix `Q`, giving a
//! semidefinite program solved by the ADMM engine.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::CyclicTrace;
use crate::group_solver::{admm_solve, AdmmConfig, AdmmDiagnostics, AdmmState, AffineSet};
use crate::linalg::{eigh, lp_solve, HermitianMatrix, LpProblem, LpStatus, Relation};
use crate::sweep::{sweep_max, two_point_max, SweepConfig};
use crate::Field;

/// Transform entries at or below this count as binding constraints.
pub const BINDING_TOL: f64 = 1e-9;
/// Slack for the inequalities checked by [`verify_prop_realpd`].
pub const INEQUALITY_TOL: f64 = 1e-6;

/// `φ̂(r) = Σ_n φ(n) e^{-2πi nr/m}`.
pub fn dft(phi: &[Complex64]) -> Vec<Complex64> {
    let m = phi.len();
    (0..m)
        .map(|r| {
            phi.iter()
                .enumerate()
                .map(|(n, &v)| {
                    v * Complex64::from_polar(1.0, -TAU * ((n * r) % m) as f64 / m as f64)
                })
                .sum()
        })
        .collect()
}

/// Inverse of [`dft`].
pub fn idft(hat: &[Complex64]) -> Vec<Complex64> {
    let m = hat.len();
    (0..m)
        .map(|n| {
            hat.iter()
                .enumerate()
                .map(|(r, &v)| {
                    v * Complex64::from_polar(1.0, TAU * ((n * r) % m) as f64 / m as f64)
                })
                .sum::<Complex64>()
                / m as f64
        })
        .collect()
}

/// Symmetric subset of `[-N, N]` containing 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSupport {
    radius: usize,
    members: Vec<bool>,
}

impl WindowSupport {
    pub fn new(radius: usize, elements: &[i64]) -> Result<Self> {
        let mut members = vec![false; 2 * radius + 1];
        for &k in elements {
            if k.unsigned_abs() as usize > radius {
                return Err(Error::ElementOutOfRange {
                    index: k.unsigned_abs() as usize,
                    order: radius + 1,
                });
            }
            members[(k + radius as i64) as usize] = true;
        }
        if !members[radius] {
            return Err(Error::IdentityMissing);
        }
        if (0..members.len()).any(|i| members[i] != members[2 * radius - i]) {
            return Err(Error::InvalidArgument("support is not symmetric".into()));
        }
        Ok(Self { radius, members })
    }

    /// `[-N, N]`.
    pub fn full(radius: usize) -> Self {
        Self {
            radius,
            members: vec![true; 2 * radius + 1],
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn contains(&self, k: i64) -> bool {
        k.unsigned_abs() as usize <= self.radius && self.members[(k + self.radius as i64) as usize]
    }

    pub fn elements(&self) -> Vec<i64> {
        let r = self.radius as i64;
        (-r..=r).filter(|&k| self.contains(k)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Modular { m: usize },
    IntegerWindow { n: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicProblem {
    pub mode: Mode,
    /// Residues mod `m`, or integers in `[-N, N]`.
    pub support: Vec<i64>,
    pub field: Field,
    #[serde(default = "default_target")]
    pub target: i64,
}

fn default_target() -> i64 {
    1
}

impl CyclicProblem {
    pub fn solve(&self) -> Result<CyclicSolution> {
        match self.mode {
            Mode::Modular { m } => {
                let h = CyclicTrace::new(m, &self.support)?;
                match self.field {
                    Field::Real => solve_k_m(m, &h, self.target),
                    Field::Complex => solve_cf_m(m, &h, self.target),
                }
            }
            Mode::IntegerWindow { n } => {
                let h = WindowSupport::new(n, &self.support)?;
                solve_cf_z(n, &h, self.target, self.field)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Lp,
    SosSdp,
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicSolution {
    pub value: f64,
    /// `φ(first_index), φ(first_index + 1), ...`: `0..m` or `-N..=N`.
    pub witness: Vec<Complex64>,
    pub first_index: i64,
    /// Frequencies `r` with `φ̂(r) = 0` (modular mode).
    pub binding_constraints: Vec<usize>,
    pub method: Method,
    pub sweep_angle: Option<f64>,
    /// Smallest transform value (modular) or Gram eigenvalue (integer).
    pub min_certificate: f64,
    pub diagnostics: Option<AdmmDiagnostics>,
}

impl CyclicSolution {
    pub fn at(&self, n: i64) -> Complex64 {
        let len = self.witness.len() as i64;
        match self.first_index {
            0 => self.witness[n.rem_euclid(len) as usize],
            first => {
                let i = n - first;
                if (0..len).contains(&i) {
                    self.witness[i as usize]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        }
    }
}

fn check_modulus(m: usize, h: &CyclicTrace) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if h.modulus() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            got: h.modulus(),
        });
    }
    Ok(())
}

fn modular_trivial(m: usize, value: f64) -> CyclicSolution {
    let mut witness = vec![Complex64::new(0.0, 0.0); m];
    witness[0] = Complex64::new(1.0, 0.0);
    CyclicSolution {
        value,
        witness,
        first_index: 0,
        binding_constraints: Vec::new(),
        method: Method::Trivial,
        sweep_angle: None,
        min_certificate: 1.0,
        diagnostics: None,
    }
}

fn modular_solution(witness: Vec<Complex64>, nu: i64, angle: Option<f64>) -> CyclicSolution {
    let m = witness.len();
    let hat = dft(&witness);
    let min = hat.iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
    let binding = (0..m).filter(|&r| hat[r].re <= BINDING_TOL).collect();
    let value = witness[nu.rem_euclid(m as i64) as usize].norm();
    CyclicSolution {
        value,
        witness,
        first_index: 0,
        binding_constraints: binding,
        method: Method::Lp,
        sweep_angle: angle,
        min_certificate: min,
        diagnostics: None,
    }
}

fn optimal(problem: &LpProblem) -> Result<Vec<f64>> {
    let sol = lp_solve(problem)?;
    match sol.status {
        LpStatus::Optimal => Ok(sol.x),
        LpStatus::Infeasible => Err(Error::LpStatus("infeasible")),
        LpStatus::Unbounded => Err(Error::LpStatus("unbounded")),
    }
}

/// `K_m(H)` at residue `ν`: real even coefficients, LP over the cosine
/// transform at `r = 0..⌊m/2⌋`.
pub fn solve_k_m(m: usize, h: &CyclicTrace, nu: i64) -> Result<CyclicSolution> {
    check_modulus(m, h)?;
    let r0 = nu.rem_euclid(m as i64) as usize;
    if !h.contains(r0 as i64) {
        return Ok(modular_trivial(m, 0.0));
    }
    if r0 == 0 {
        return Ok(modular_trivial(m, 1.0));
    }
    let half = m / 2;
    let vars: Vec<usize> = (1..=half).filter(|&n| h.contains(n as i64)).collect();
    let target = r0.min(m - r0);
    let ti = vars.iter().position(|&n| n == target).expect("ν ∈ H");
    let mut best: Option<(f64, Vec<f64>)> = None;
    for sign in [1.0, -1.0] {
        let mut objective = vec![0.0; vars.len()];
        objective[ti] = sign;
        let mut lp = LpProblem::new(objective).with_bounds(vec![(-1.0, 1.0); vars.len()]);
        for r in 0..=half {
            let row = vars
                .iter()
                .map(|&n| {
                    let mult = if 2 * n == m { 1.0 } else { 2.0 };
                    mult * (TAU * ((n * r) % m) as f64 / m as f64).cos()
                })
                .collect();
            lp.constrain(row, Relation::Ge, -1.0);
        }
        let x = optimal(&lp)?;
        let v = x[ti].abs();
        if best.as_ref().map_or(true, |(b, _)| v > *b) {
            best = Some((v, x));
        }
    }
    let (_, a) = best.expect("two passes ran");
    let mut witness = vec![Complex64::new(0.0, 0.0); m];
    witness[0] = Complex64::new(1.0, 0.0);
    for (&n, &v) in vars.iter().zip(&a) {
        witness[n] = Complex64::new(v, 0.0);
        witness[m - n] = Complex64::new(v, 0.0);
    }
    Ok(modular_solution(witness, nu, None))
}

/// `CF_m(H)` at residue `ν` with the default sweep.
pub fn solve_cf_m(m: usize, h: &CyclicTrace, nu: i64) -> Result<CyclicSolution> {
    solve_cf_m_with(m, h, nu, &SweepConfig::default())
}

/// `CF_m(H)`: for each angle an LP maximizing `Re(e^{-iθ} φ(ν))` over
/// Hermitian `φ` with `φ̂ >= 0`; the value is the best `|φ(ν)|`.
pub fn solve_cf_m_with(
    m: usize,
    h: &CyclicTrace,
    nu: i64,
    sweep: &SweepConfig,
) -> Result<CyclicSolution> {
    check_modulus(m, h)?;
    let r0 = nu.rem_euclid(m as i64) as usize;
    if !h.contains(r0 as i64) {
        return Ok(modular_trivial(m, 0.0));
    }
    if r0 == 0 {
        return Ok(modular_trivial(m, 1.0));
    }
    // (n, imaginary part?) for 2n < m; a real variable at n = m/2
    let mut vars: Vec<(usize, bool)> = Vec::new();
    for n in 1..=m / 2 {
        if h.contains(n as i64) {
            vars.push((n, false));
            if 2 * n < m {
                vars.push((n, true));
            }
        }
    }
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|r| {
            vars.iter()
                .map(|&(n, imag)| {
                    let a = TAU * ((n * r) % m) as f64 / m as f64;
                    match (2 * n == m, imag) {
                        (true, _) => a.cos(),
                        (false, false) => 2.0 * a.cos(),
                        (false, true) => 2.0 * a.sin(),
                    }
                })
                .collect()
        })
        .collect();
    let (target, conj) = if 2 * r0 <= m {
        (r0, false)
    } else {
        (m - r0, true)
    };
    let witness_of = |x: &[f64]| {
        let mut w = vec![Complex64::new(0.0, 0.0); m];
        w[0] = Complex64::new(1.0, 0.0);
        for (&(n, imag), &v) in vars.iter().zip(x) {
            if imag {
                w[n].im = v;
            } else {
                w[n].re = v;
            }
        }
        for n in 1..m {
            if 2 * n > m {
                w[n] = w[m - n].conj();
            }
        }
        w
    };
    let eval = |theta: f64| -> Result<(f64, Vec<Complex64>)> {
        let objective = vars
            .iter()
            .map(|&(n, imag)| match (n == target, imag) {
                (false, _) => 0.0,
                (true, false) => theta.cos(),
                (true, true) if conj => -theta.sin(),
                (true, true) => theta.sin(),
            })
            .collect();
        let mut lp = LpProblem::new(objective).with_bounds(vec![(-1.0, 1.0); vars.len()]);
        for row in &rows {
            lp.constrain(row.clone(), Relation::Ge, -1.0);
        }
        let w = witness_of(&optimal(&lp)?);
        Ok(((Complex64::from_polar(1.0, -theta) * w[r0]).re, w))
    };
    let out = sweep_max(sweep, eval)?;
    Ok(modular_solution(out.best.payload, nu, Some(out.best.angle)))
}

/// Band structure of the Gram matrix: unit trace, zero band sums off `H`.
struct GramBands {
    size: usize,
    zero_band: Vec<bool>,
    field: Field,
}

impl AffineSet for GramBands {
    fn dim(&self) -> usize {
        self.size
    }

    fn project(&self, m: &HermitianMatrix) -> HermitianMatrix {
        let s = self.size;
        let mut out = HermitianMatrix::from_fn(s, |i, j| {
            let v = 0.5 * (m[(i, j)] + m[(j, i)].conj());
            match self.field {
                Field::Real => Complex64::new(v.re, 0.0),
                Field::Complex => v,
            }
        });
        for i in 0..s {
            out[(i, i)].im = 0.0;
        }
        let trace: f64 = (0..s).map(|i| out[(i, i)].re).sum();
        let shift = (trace - 1.0) / s as f64;
        for i in 0..s {
            out[(i, i)].re -= shift;
        }
        for band in 1..s {
            if !self.zero_band[band] {
                continue;
            }
            let len = s - band;
            let mean = (0..len).map(|k| out[(k, k + band)]).sum::<Complex64>() / len as f64;
            for k in 0..len {
                let v = out[(k, k + band)] - mean;
                out[(k, k + band)] = v;
                out[(k + band, k)] = v.conj();
            }
        }
        out
    }
}

/// `φ(n) = Σ_k Q[k][k+n]` for `n >= 0`.
fn band_sums(q: &HermitianMatrix) -> Vec<Complex64> {
    let s = q.dim();
    (0..s)
        .map(|n| (0..s - n).map(|k| q[(k, k + n)]).sum())
        .collect()
}

struct GramSolve {
    witness: Vec<Complex64>,
    min_eigenvalue: f64,
    diagnostics: AdmmDiagnostics,
    state: AdmmState,
}

/// Shifts `Q` by `εI` until it is PSD, renormalizes to unit trace and reads
/// off the sequence on `[-N, N]`, hard-zeroed off `H`.
fn certified_sequence(q: &HermitianMatrix, h: &WindowSupport) -> Result<(Vec<Complex64>, f64)> {
    let s = q.dim();
    let lambda = eigh(q)?.min_value();
    let mut slack = 32.0 * s as f64 * f64::EPSILON * q.frobenius_norm();
    loop {
        let eps = if lambda >= slack { 0.0 } else { slack - lambda };
        let shifted = HermitianMatrix::from_fn(s, |i, j| {
            let d = if i == j { eps } else { 0.0 };
            (q[(i, j)] + d) / (1.0 + s as f64 * eps)
        });
        let min = eigh(&shifted)?.min_value();
        if min >= 0.0 {
            let n = h.radius() as i64;
            let bands = band_sums(&shifted);
            let seq = (-n..=n)
                .map(|k| {
                    if k == 0 {
                        Complex64::new(1.0, 0.0)
                    } else if !h.contains(k) {
                        Complex64::new(0.0, 0.0)
                    } else if k > 0 {
                        bands[k as usize]
                    } else {
                        bands[(-k) as usize].conj()
                    }
                })
                .collect();
            return Ok((seq, min));
        }
        slack *= 4.0;
    }
}

fn gram_direction(
    h: &WindowSupport,
    nu: usize,
    theta: f64,
    field: Field,
    admm: &AdmmConfig,
    warm: Option<AdmmState>,
) -> Result<GramSolve> {
    let s = h.radius() + 1;
    let set = GramBands {
        size: s,
        zero_band: (0..s).map(|n| !h.contains(n as i64)).collect(),
        field,
    };
    let w = 0.5 * Complex64::from_polar(1.0, theta);
    let mut c = HermitianMatrix::zeros(s);
    for k in 0..s - nu {
        c[(k, k + nu)] += w;
        c[(k + nu, k)] += w.conj();
    }
    if field == Field::Real {
        for v in c.as_mut_slice() {
            v.im = 0.0;
        }
    }
    let out = admm_solve(&c, &set, admm, warm)?;
    let (witness, min_eigenvalue) = certified_sequence(&out.state.x, h)?;
    Ok(GramSolve {
        witness,
        min_eigenvalue,
        diagnostics: out.diagnostics,
        state: out.state,
    })
}

/// `CF(H)` or `K(H)` on `Z` for `H ⊂ [-N, N]`, default sweep and ADMM settings.
pub fn solve_cf_z(n: usize, h: &WindowSupport, nu: i64, field: Field) -> Result<CyclicSolution> {
    solve_cf_z_with(
        n,
        h,
        nu,
        field,
        &SweepConfig::default(),
        &AdmmConfig::default(),
    )
}

/// Gram SDP over `Q ⪰ 0`. The witness is the ε-shifted (certified) sequence;
/// for `ν < 0` the problem is solved at `|ν|`, which has the same value.
pub fn solve_cf_z_with(
    n: usize,
    h: &WindowSupport,
    nu: i64,
    field: Field,
    sweep: &SweepConfig,
    admm: &AdmmConfig,
) -> Result<CyclicSolution> {
    if h.radius() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: h.radius(),
        });
    }
    let len = 2 * n + 1;
    let trivial = |value: f64| {
        let mut witness = vec![Complex64::new(0.0, 0.0); len];
        witness[n] = Complex64::new(1.0, 0.0);
        CyclicSolution {
            value,
            witness,
            first_index: -(n as i64),
            binding_constraints: Vec::new(),
            method: Method::Trivial,
            sweep_angle: None,
            min_certificate: 1.0 / (n + 1) as f64,
            diagnostics: None,
        }
    };
    if !h.contains(nu) {
        return Ok(trivial(0.0));
    }
    if nu == 0 {
        return Ok(trivial(1.0));
    }
    let k = nu.unsigned_abs() as usize;
    let base = gram_direction(h, k, 0.0, field, admm, None)?;
    let eval = |theta: f64| -> Result<(f64, GramSolve)> {
        let s = if theta == 0.0 {
            GramSolve {
                witness: base.witness.clone(),
                min_eigenvalue: base.min_eigenvalue,
                diagnostics: base.diagnostics,
                state: base.state.clone(),
            }
        } else {
            gram_direction(h, k, theta, field, admm, Some(base.state.clone()))?
        };
        Ok((
            (Complex64::from_polar(1.0, -theta) * s.witness[n + k]).re,
            s,
        ))
    };
    let out = match field {
        Field::Real => two_point_max(eval)?,
        Field::Complex => sweep_max(sweep, eval)?,
    };
    let best = out.best;
    Ok(CyclicSolution {
        value: best.payload.witness[n + k].norm(),
        witness: best.payload.witness,
        first_index: -(n as i64),
        binding_constraints: Vec::new(),
        method: Method::SosSdp,
        sweep_angle: Some(best.angle),
        min_certificate: best.payload.min_eigenvalue,
        diagnostics: Some(best.payload.diagnostics),
    })
}

/// `M = 2K`.
pub fn m_from_k(k: f64) -> f64 {
    2.0 * k
}

/// `{n : |n| <= ⌊(m-1)/2⌋, n mod m ∈ H}`: the part of `H` that lifts to `Z`
/// without wrap-around.
pub fn lift_to_window(h: &CyclicTrace) -> WindowSupport {
    let m = h.modulus();
    let radius = (m - 1) / 2;
    let r = radius as i64;
    let elements: Vec<i64> = (-r..=r).filter(|&k| h.contains(k)).collect();
    WindowSupport::new(radius, &elements).expect("lift of a symmetric trace is symmetric")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealPdReport {
    pub m: usize,
    pub trace: CyclicTrace,
    pub k_m: f64,
    pub cf_m: f64,
    /// `M_m = 2 K_m`.
    pub m_m: f64,
    /// `cos(π/m) CF_m`.
    pub ruzsa_lower: f64,
    pub lower_holds: bool,
    pub upper_holds: bool,
    /// `K` on `Z` for the lifted support, when requested.
    pub k_z: Option<f64>,
    pub embedding_holds: Option<bool>,
    pub defects: Vec<String>,
}

/// Checks `cos(π/m) CF_m(H) <= K_m(H) <= CF_m(H)` and optionally
/// `K_m(H) >= K_Z(lift H)`, each with slack [`INEQUALITY_TOL`].
pub fn verify_prop_realpd(m: usize, h: &CyclicTrace, with_embedding: bool) -> Result<RealPdReport> {
    let k_m = solve_k_m(m, h, 1)?.value;
    let cf_m = solve_cf_m(m, h, 1)?.value;
    let ruzsa_lower = (PI / m as f64).cos() * cf_m;
    let lower_holds = ruzsa_lower <= k_m + INEQUALITY_TOL;
    let upper_holds = k_m <= cf_m + INEQUALITY_TOL;
    let mut defects = Vec::new();
    if !lower_holds {
        defects.push(format!(
            "cos(π/m)·CF_m = {ruzsa_lower:.9} exceeds K_m = {k_m:.9}"
        ));
    }
    if !upper_holds {
        defects.push(format!("K_m = {k_m:.9} exceeds CF_m = {cf_m:.9}"));
    }
    let (k_z, embedding_holds) = if with_embedding && m >= 3 {
        let lift = lift_to_window(h);
        let kz = solve_cf_z(lift.radius(), &lift, 1, Field::Real)?.value;
        let ok = k_m >= kz - INEQUALITY_TOL;
        if !ok {
            defects.push(format!("K_m = {k_m:.9} below K on Z = {kz:.9}"));
        }
        (Some(kz), Some(ok))
    } else {
        (None, None)
    };
    Ok(RealPdReport {
        m,
        trace: h.clone(),
        k_m,
        cf_m,
        m_m: m_from_k(k_m),
        ruzsa_lower,
        lower_holds,
        upper_holds,
        k_z,
        embedding_holds,
        defects,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuzsaSummary {
    pub m: usize,
    pub cases: usize,
    pub violations: usize,
    /// Smallest `K_m / CF_m` over the sets with `CF_m > 0`.
    pub min_ratio: f64,
    pub extremal_trace: CyclicTrace,
    /// The sandwich constant `cos(π/m)`.
    pub bound: f64,
    pub reports: Vec<RealPdReport>,
}

/// Exhaustive sandwich check over all symmetric `H ∋ 0` in `Z_m`.
pub fn ruzsa_sweep(m: usize) -> Result<RuzsaSummary> {
    let reports = CyclicTrace::all_symmetric(m)
        .iter()
        .map(|h| verify_prop_realpd(m, h, false))
        .collect::<Result<Vec<_>>>()?;
    let violations = reports.iter().filter(|r| !r.defects.is_empty()).count();
    let (min_ratio, extremal_trace) = reports
        .iter()
        .filter(|r| r.cf_m > 1e-12)
        .map(|r| (r.k_m / r.cf_m, r.trace.clone()))
        .fold((f64::INFINITY, CyclicTrace::full(m)), |a, b| {
            if b.0 < a.0 {
                b
            } else {
                a
            }
        });
    Ok(RuzsaSummary {
        m,
        cases: reports.len(),
        violations,
        min_ratio,
        extremal_trace,
        bound: (PI / m as f64).cos(),
        reports,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderRow {
    pub m: usize,
    pub k_m: f64,
    pub limit: f64,
    pub gap: f64,
}

/// `K_m` of the window `±N` for growing `m`, next to `cos(π/(N+2))`.
/// Observational: no rate is asserted.
pub fn window_ladder(n: usize, moduli: &[usize]) -> Result<Vec<LadderRow>> {
    let limit = (PI / (n + 2) as f64).cos();
    moduli
        .iter()
        .map(|&m| {
            let k_m = solve_k_m(m, &CyclicTrace::window(m, n), 1)?.value;
            Ok(LadderRow {
                m,
                k_m,
                limit,
                gap: k_m - limit,
            })
        })
        .collect()
}

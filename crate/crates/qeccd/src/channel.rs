//! The two-qubit amplitude-damping (2AD) dynamical map: spatial coupling
//! functions, the sixteen time-dependent coefficients, the 16x16 superoperator
//! in the dressed basis (e, s, a, g), and its action on density matrices.
//!
//! Density matrices on the two-qubit space use the product basis ordered
//! (ee, eg, ge, gg); vectorization is row-major throughout.

use crate::linalg::{
    dagger, devectorize, hermiticity_defect, kron, min_eigenvalue, trace, vectorize,
    CMat, ONE, ZERO,
};
use ndarray::{array, Array2};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("invalid channel parameters: {0}")]
    InvalidParams(String),
    #[error("divergent dipole-dipole limit: G(r12) diverges as r12 -> 0")]
    DivergentDipoleLimit,
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
}

/// Below this value of `k0*r12` the spatial functions switch to their Taylor
/// series to avoid cancellation in `cos(x)/x^2 - sin(x)/x^3`.
pub const SPATIAL_SERIES_THRESHOLD: f64 = 0.5;

/// Relative scale of `Gamma - Gamma12` (and friends) below which the
/// singular quotients of the coefficient formulas switch to 6th-order
/// Taylor limits.
pub const RATE_DEGENERACY_THRESHOLD: f64 = 1e-6;

/// Physical inputs of the 2AD channel. `gamma` is the single-qubit
/// spontaneous-emission rate (both qubits identical), `omega0` the mean
/// transition frequency, `k0` the resonant wavenumber, `r12` the separation,
/// `alpha` the dipole-alignment cosine, and `t` the evolution time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub gamma: f64,
    pub omega0: f64,
    pub k0: f64,
    pub r12: f64,
    pub alpha: f64,
    pub t: f64,
}

impl Default for ChannelParams {
    /// Reference values gamma = 0.5, omega0 = 1, k0 = 1 (hbar = 1) with the
    /// dipoles perpendicular to the inter-qubit axis.
    fn default() -> Self {
        ChannelParams {
            gamma: 0.5,
            omega0: 1.0,
            k0: 1.0,
            r12: 1.0,
            alpha: 0.0,
            t: 1.0,
        }
    }
}

impl ChannelParams {
    pub fn validate(&self) -> Result<(), ChannelError> {
        let bad = |msg: &str| Err(ChannelError::InvalidParams(msg.to_string()));
        if !(self.gamma > 0.0) {
            return bad("gamma must be > 0");
        }
        if !(self.omega0 >= 0.0) {
            return bad("omega0 must be >= 0");
        }
        if !(self.k0 > 0.0) {
            return bad("k0 must be > 0");
        }
        if !(self.r12 >= 0.0) {
            return bad("r12 must be >= 0");
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return bad("alpha must lie in [0, 1]");
        }
        if !(self.t >= 0.0) {
            return bad("t must be >= 0");
        }
        Ok(())
    }

    pub fn with_t(self, t: f64) -> ChannelParams {
        ChannelParams { t, ..self }
    }

    pub fn with_r12(self, r12: f64) -> ChannelParams {
        ChannelParams { r12, ..self }
    }

    /// Collective rates induced by the qubit separation.
    pub fn rates(&self) -> Result<CollectiveRates, ChannelError> {
        self.validate()?;
        collective_rates(self)
    }
}

/// The bath-mediated incoherent (`gamma12`) and coherent (`omega12`) two-qubit
/// coupling rates. May also be specified directly, e.g. `gamma12 = gamma`
/// for the exact collective limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollectiveRates {
    pub gamma12: f64,
    pub omega12: f64,
}

fn sinc_series(x: f64) -> f64 {
    // sin(x)/x = sum_n (-1)^n x^(2n) / (2n+1)!
    let x2 = x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..=10u32 {
        term *= -x2 / ((2 * n) as f64 * (2 * n + 1) as f64);
        sum += term;
    }
    sum
}

fn cos_sin_diff_series(x: f64) -> f64 {
    // cos(x)/x^2 - sin(x)/x^3 = sum_{n>=1} (-1)^n (2n) x^(2n-2) / (2n+1)!
    let x2 = x * x;
    let mut fact = 6.0; // (2n+1)! at n = 1
    let mut pow = 1.0; // x^(2n-2)
    let mut sum = -2.0 / 6.0;
    for n in 2..=10u32 {
        fact *= (2 * n) as f64 * (2 * n + 1) as f64;
        pow *= x2;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (2 * n) as f64 * pow / fact;
    }
    sum
}

fn sin_cos_sum_series(x: f64) -> f64 {
    // sin(x)/x^2 + cos(x)/x^3 = 1/x^3 + sum_{m>=0} (-1)^m (2m+1) x^(2m-1) / (2m+2)!
    let x2 = x * x;
    let mut sum = 1.0 / (x * x * x);
    let mut fact = 2.0; // (2m+2)! at m = 0
    let mut pow = 1.0 / x; // x^(2m-1)
    for m in 0..=10u32 {
        if m > 0 {
            fact *= (2 * m + 1) as f64 * (2 * m + 2) as f64;
            pow *= x2;
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (2 * m + 1) as f64 * pow / fact;
    }
    sum
}

fn spatial_f_series(x: f64, a2: f64) -> f64 {
    (1.0 - a2) * sinc_series(x) + (1.0 - 3.0 * a2) * cos_sin_diff_series(x)
}

fn spatial_f_direct(x: f64, a2: f64) -> f64 {
    (1.0 - a2) * x.sin() / x + (1.0 - 3.0 * a2) * (x.cos() / (x * x) - x.sin() / (x * x * x))
}

fn spatial_g_series(x: f64, a2: f64) -> f64 {
    -(1.0 - a2) * x.cos() / x + (1.0 - 3.0 * a2) * sin_cos_sum_series(x)
}

fn spatial_g_direct(x: f64, a2: f64) -> f64 {
    -(1.0 - a2) * x.cos() / x
        + (1.0 - 3.0 * a2) * (x.sin() / (x * x) + x.cos() / (x * x * x))
}

/// Spatial profile of the collective dissipation rate. Regular everywhere;
/// `F(0) = 2/3` for every dipole alignment.
pub fn spatial_f(r12: f64, k0: f64, alpha: f64) -> f64 {
    let x = k0 * r12;
    let a2 = alpha * alpha;
    if x < SPATIAL_SERIES_THRESHOLD {
        spatial_f_series(x, a2)
    } else {
        spatial_f_direct(x, a2)
    }
}

/// Spatial profile of the coherent dipole-dipole shift. Diverges as
/// `(k0 r12)^-3` toward zero separation; `r12 = 0` is rejected.
pub fn spatial_g(r12: f64, k0: f64, alpha: f64) -> Result<f64, ChannelError> {
    let x = k0 * r12;
    if x <= 0.0 {
        return Err(ChannelError::DivergentDipoleLimit);
    }
    let a2 = alpha * alpha;
    Ok(if x < SPATIAL_SERIES_THRESHOLD {
        spatial_g_series(x, a2)
    } else {
        spatial_g_direct(x, a2)
    })
}

/// `Gamma12 = (3/2) Gamma F(r12)` and `Omega12 = (3/4) Gamma G(r12)`.
pub fn collective_rates(params: &ChannelParams) -> Result<CollectiveRates, ChannelError> {
    Ok(CollectiveRates {
        gamma12: 1.5 * params.gamma * spatial_f(params.r12, params.k0, params.alpha),
        omega12: 0.75 * params.gamma * spatial_g(params.r12, params.k0, params.alpha)?,
    })
}

/// The sixteen time-dependent functions entering the 2AD map: real
/// decay/transfer amplitudes `a..h` and complex coherence factors `j..v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub j: C64,
    pub l: C64,
    pub m: C64,
    pub p: C64,
    pub q: C64,
    pub t: C64,
    pub u: C64,
    pub v: C64,
}

/// `(1 - exp(-x t)) / x`, switching to a 6th-order Taylor expansion when
/// `|x|` falls below `RATE_DEGENERACY_THRESHOLD` relative to `scale`.
fn decay_quotient(x: f64, t: f64, scale: f64) -> f64 {
    if x.abs() < RATE_DEGENERACY_THRESHOLD * scale {
        let xt = x * t;
        // t * (1 - xt/2 + xt^2/6 - xt^3/24 + xt^4/120 - xt^5/720 + xt^6/5040)
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..=6u32 {
            term *= -xt / (k + 1) as f64;
            sum += term;
        }
        t * sum
    } else {
        -f64::exp_m1(-x * t) / x
    }
}

fn phase_exp(angle: f64) -> C64 {
    C64::new(angle.cos(), angle.sin())
}

/// Evaluate all coefficients from explicitly given collective rates.
pub fn coefficients_from_rates(
    gamma: f64,
    omega0: f64,
    rates: CollectiveRates,
    t: f64,
) -> Result<Coefficients, ChannelError> {
    if !(gamma > 0.0) {
        return Err(ChannelError::InvalidParams("gamma must be > 0".into()));
    }
    if !(t >= 0.0) {
        return Err(ChannelError::InvalidParams("t must be >= 0".into()));
    }
    let g12 = rates.gamma12;
    let om = rates.omega12;
    let gp = gamma + g12;
    let gm = gamma - g12;
    if !(gp > 0.0) {
        return Err(ChannelError::InvalidParams(
            "gamma + gamma12 must stay positive".into(),
        ));
    }

    let a = f64::exp(-2.0 * gamma * t);
    let b = f64::exp(-gp * t);
    let d = f64::exp(-gm * t);
    let q_gm = decay_quotient(gm, t, gamma);
    let q_gp = decay_quotient(gp, t, gamma);
    let c = gp * q_gm * b;
    let e = gm * q_gp * d;
    let f = -f64::exp_m1(-gp * t);
    let g = -f64::exp_m1(-gm * t);
    // two-part form; equal to 1 - a - c - e (population bookkeeping)
    let h = gp / (2.0 * gamma) * (1.0 - (gp * q_gm + 1.0) * b)
        + gm / gp * (g - gm / (2.0 * gamma) * (-f64::exp_m1(-2.0 * gamma * t)));

    let j = phase_exp(-(omega0 - om) * t) * f64::exp(-(3.0 * gamma + g12) * t / 2.0);
    let l = phase_exp(-2.0 * omega0 * t) * f64::exp(-gamma * t);
    let m = phase_exp(-(omega0 + om) * t) * f64::exp(-(3.0 * gamma - g12) * t / 2.0);
    let p = phase_exp(-2.0 * om * t) * f64::exp(-gamma * t);
    let q = phase_exp(-(omega0 - om) * t) * f64::exp(-gm * t / 2.0);
    let tt = phase_exp(-(omega0 + om) * t) * f64::exp(-gp * t / 2.0);

    // Gamma^2 + 4 Omega12^2 >= Gamma^2 > 0, so this denominator never degenerates.
    let den = gamma * gamma + 4.0 * om * om;
    let eg = f64::exp(-gamma * t);
    let (s2, c2) = (2.0 * om * t).sin_cos();
    let in_phase = 2.0 * om * eg * s2 + gamma * (1.0 - eg * c2);
    let quad = 2.0 * om * (1.0 - eg * c2) - gamma * eg * s2;
    let u = phase_exp(-(omega0 + om) * t)
        * f64::exp(-gp * t / 2.0)
        * C64::new(in_phase, quad)
        * (gp / den);
    let v = phase_exp(-(omega0 - om) * t)
        * f64::exp(-gm * t / 2.0)
        * C64::new(-in_phase, quad)
        * (gm / den);

    Ok(Coefficients {
        a,
        b,
        c,
        d,
        e,
        f,
        g,
        h,
        j,
        l,
        m,
        p,
        q,
        t: tt,
        u,
        v,
    })
}

/// Evaluate all coefficients from the physical channel parameters.
pub fn coefficients(params: &ChannelParams) -> Result<Coefficients, ChannelError> {
    params.validate()?;
    let rates = collective_rates(params)?;
    coefficients_from_rates(params.gamma, params.omega0, rates, params.t)
}

impl Coefficients {
    /// Header of the CSV dump produced by [`Coefficients::csv_row`].
    pub fn csv_header() -> &'static str {
        "t,A,B,C,D,E,F,G,H,ReJ,ImJ,ReL,ImL,ReM,ImM,ReP,ImP,ReQ,ImQ,ReT,ImT,ReU,ImU,ReV,ImV"
    }

    pub fn csv_row(&self, t: f64) -> String {
        let c = |z: C64| format!("{},{}", z.re, z.im);
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            t,
            self.a,
            self.b,
            self.c,
            self.d,
            self.e,
            self.f,
            self.g,
            self.h,
            c(self.j),
            c(self.l),
            c(self.m),
            c(self.p),
            c(self.q),
            c(self.t),
            c(self.u),
            c(self.v),
        )
    }
}

/// The 16x16 superoperator acting on row-major vectorized density matrices
/// in the dressed ordering (e, s, a, g).
#[derive(Debug, Clone, PartialEq)]
pub struct SuperOperator {
    pub entries: CMat,
}

/// Populate the sparse superoperator from the coefficients. Slots are
/// row-major over the dressed order, so slot 6 is rho_ss, slot 8 rho_sg, etc.
pub fn superoperator(co: &Coefficients) -> SuperOperator {
    let mut mat: CMat = Array2::zeros((16, 16));
    let r = |x: f64| C64::new(x, 0.0);
    let diag = [
        r(co.a),
        co.j,
        co.m,
        co.l,
        co.j.conj(),
        r(co.b),
        co.p,
        co.t,
        co.m.conj(),
        co.p.conj(),
        r(co.d),
        co.q,
        co.l.conj(),
        co.t.conj(),
        co.q.conj(),
        ONE,
    ];
    for (i, z) in diag.into_iter().enumerate() {
        mat[(i, i)] = z;
    }
    // remaining entries, 1-based (row, col) as listed:
    // (6,1)=C (8,2)=U (11,1)=E (12,3)=V (14,5)=U* (15,9)=V* (16,1)=H (16,6)=F (16,11)=G
    mat[(5, 0)] = r(co.c);
    mat[(7, 1)] = co.u;
    mat[(10, 0)] = r(co.e);
    mat[(11, 2)] = co.v;
    mat[(13, 4)] = co.u.conj();
    mat[(14, 8)] = co.v.conj();
    mat[(15, 0)] = r(co.h);
    mat[(15, 5)] = r(co.f);
    mat[(15, 10)] = r(co.g);
    SuperOperator { entries: mat }
}

/// The unitary mapping the product basis (ee, eg, ge, gg) onto the dressed
/// basis (e, s, a, g). Real, symmetric and involutory.
pub fn dressed_transform() -> CMat {
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    array![
        [ONE, ZERO, ZERO, ZERO],
        [ZERO, s, s, ZERO],
        [ZERO, s, -s, ZERO],
        [ZERO, ZERO, ZERO, ONE],
    ]
}

/// The channel's superoperator expressed on vectorized density matrices in
/// the product basis (ee, eg, ge, gg): `(U_D ⊗ U_D) A (U_D ⊗ U_D)`.
pub fn computational_superoperator(co: &Coefficients) -> CMat {
    let ud = dressed_transform();
    let w = kron(&ud, &ud);
    w.dot(&superoperator(co).entries).dot(&w)
}

fn check_density_matrix(rho: &CMat) -> Result<(), ChannelError> {
    if rho.dim() != (4, 4) {
        return Err(ChannelError::InvalidDensityMatrix("must be 4x4".into()));
    }
    let herm = hermiticity_defect(rho);
    if herm > 1e-9 {
        return Err(ChannelError::InvalidDensityMatrix(format!(
            "hermiticity defect {herm:.2e}"
        )));
    }
    let tr = trace(rho);
    if (tr - ONE).norm() > 1e-9 {
        return Err(ChannelError::InvalidDensityMatrix(format!(
            "trace {tr} != 1"
        )));
    }
    let min_ev = min_eigenvalue(&(rho + &dagger(rho)).mapv(|z| z * 0.5));
    if min_ev < -1e-9 {
        return Err(ChannelError::InvalidDensityMatrix(format!(
            "negative eigenvalue {min_ev:.2e}"
        )));
    }
    Ok(())
}

/// Apply a precomputed product-basis superoperator to a density matrix.
pub fn apply_superoperator(s_comp: &CMat, rho: &CMat) -> CMat {
    devectorize(&s_comp.dot(&vectorize(rho)), 4)
}

/// Evolve `rho` (product basis, ordered ee, eg, ge, gg) under the channel.
pub fn apply(params: &ChannelParams, rho: &CMat) -> Result<CMat, ChannelError> {
    check_density_matrix(rho)?;
    let co = coefficients(params)?;
    Ok(apply_superoperator(&computational_superoperator(&co), rho))
}

/// Same as [`apply`] but with explicitly given collective rates.
pub fn apply_with_rates(
    gamma: f64,
    omega0: f64,
    rates: CollectiveRates,
    t: f64,
    rho: &CMat,
) -> Result<CMat, ChannelError> {
    check_density_matrix(rho)?;
    let co = coefficients_from_rates(gamma, omega0, rates, t)?;
    Ok(apply_superoperator(&computational_superoperator(&co), rho))
}

/// Choi matrix of the channel on the two-qubit space, assembled column by
/// column from the matrix units. Positive semidefinite iff the map is CP.
pub fn choi_matrix(co: &Coefficients) -> CMat {
    let s_comp = computational_superoperator(co);
    let mut choi: CMat = Array2::zeros((16, 16));
    for i in 0..4 {
        for j in 0..4 {
            let mut unit: CMat = Array2::zeros((4, 4));
            unit[(i, j)] = ONE;
            let out = apply_superoperator(&s_comp, &unit);
            for k in 0..4 {
                for l in 0..4 {
                    choi[(i * 4 + k, j * 4 + l)] = out[(k, l)];
                }
            }
        }
    }
    choi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, max_abs_diff};
    use ndarray::Array2;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn random_density(rng: &mut StdRng) -> CMat {
        let mut g: CMat = Array2::zeros((4, 4));
        for i in 0..4 {
            for j in 0..4 {
                g[(i, j)] = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            }
        }
        let rho = g.dot(&dagger(&g));
        let tr = trace(&rho);
        rho.mapv(|z| z / tr)
    }

    #[test]
    fn spatial_f_examples() {
        assert!((spatial_f(0.0, 1.0, 0.3) - 2.0 / 3.0).abs() < 1e-15);
        assert!((spatial_f(1e-9, 1.0, 0.0) - 2.0 / 3.0).abs() < 1e-9);
        // sin(pi) = 0 leaves only cos(pi)/pi^2
        assert!((spatial_f(PI, 1.0, 0.0) - (-1.0 / (PI * PI))).abs() < 1e-14);
        assert!(spatial_f(100.0, 1.0, 0.0).abs() < 0.011);
    }

    #[test]
    fn spatial_g_examples() {
        // cos(pi/2) = 0 leaves only sin/(x^2)
        let g = spatial_g(PI / 2.0, 1.0, 0.0).unwrap();
        assert!((g - 4.0 / (PI * PI)).abs() < 1e-14);
        assert!(spatial_g(100.0, 1.0, 0.0).unwrap().abs() < 0.011);
        assert!(matches!(
            spatial_g(0.0, 1.0, 0.0),
            Err(ChannelError::DivergentDipoleLimit)
        ));
        // divergence toward zero separation
        assert!(spatial_g(1e-3, 1.0, 0.0).unwrap() > 1e8);
    }

    #[test]
    fn spatial_series_switch_is_continuous() {
        // both branches evaluated at the switch point itself
        let x = SPATIAL_SERIES_THRESHOLD;
        for alpha in [0.0f64, 0.4, 1.0] {
            let a2 = alpha * alpha;
            let df = (spatial_f_series(x, a2) - spatial_f_direct(x, a2)).abs();
            assert!(df < 1e-10, "F branch disagreement {df:.2e} at alpha={alpha}");
            let dg = (spatial_g_series(x, a2) - spatial_g_direct(x, a2)).abs();
            assert!(dg < 1e-10, "G branch disagreement {dg:.2e} at alpha={alpha}");
        }
    }

    #[test]
    fn collective_rates_examples() {
        let p = ChannelParams::default();
        // r12 -> 0: Gamma12 -> Gamma
        let near = collective_rates(&p.with_r12(1e-8)).unwrap();
        assert!((near.gamma12 - p.gamma).abs() < 1e-9);
        // far separation: |Gamma12| < 0.009 at gamma = 0.5
        let far = collective_rates(&p.with_r12(100.0)).unwrap();
        assert!(far.gamma12.abs() < 0.009);
        // k0 r12 = pi, alpha = 0: Gamma12 = -(3/2) Gamma / pi^2
        let at_pi = collective_rates(&p.with_r12(PI)).unwrap();
        assert!((at_pi.gamma12 - (-1.5 * p.gamma / (PI * PI))).abs() < 1e-14);
    }

    #[test]
    fn coefficients_at_t_zero() {
        let co = coefficients(&ChannelParams::default().with_t(0.0)).unwrap();
        for (x, name) in [(co.a, "A"), (co.b, "B"), (co.d, "D")] {
            assert_eq!(x, 1.0, "{name}");
        }
        for (x, name) in [(co.c, "C"), (co.e, "E"), (co.f, "F"), (co.g, "G"), (co.h, "H")] {
            assert!(x.abs() < 1e-15, "{name} = {x}");
        }
        for (z, name) in [
            (co.j, "J"),
            (co.l, "L"),
            (co.m, "M"),
            (co.p, "P"),
            (co.q, "Q"),
            (co.t, "T"),
        ] {
            assert!((z - ONE).norm() < 1e-15, "{name} = {z}");
        }
        assert!(co.u.norm() < 1e-15 && co.v.norm() < 1e-15);
    }

    #[test]
    fn coefficients_independent_asymptote() {
        // far separation, long time: decay amplitudes die, transfer saturates
        let p = ChannelParams::default().with_r12(100.0).with_t(40.0);
        let co = coefficients(&p).unwrap();
        for x in [co.a, co.b, co.c, co.d, co.e] {
            assert!(x.abs() < 1e-8);
        }
        for x in [1.0 - co.f, 1.0 - co.g, 1.0 - co.h] {
            assert!(x.abs() < 1e-8);
        }
        // the slowest coherences (Q, T) decay at half the population rate
        for z in [co.j, co.l, co.m, co.p, co.q, co.t, co.u, co.v] {
            assert!(z.norm() < 1e-4);
        }
    }

    #[test]
    fn coefficients_exact_collective_limit() {
        // Gamma12 = Gamma exactly: the antisymmetric sector freezes
        let gamma = 0.5;
        let rates = CollectiveRates {
            gamma12: gamma,
            omega12: 10.0,
        };
        for t in [0.7, 3.0, 40.0] {
            let co = coefficients_from_rates(gamma, 1.0, rates, t).unwrap();
            assert_eq!(co.d, 1.0);
            assert_eq!(co.g, 0.0);
            assert!((co.q.norm() - 1.0).abs() < 1e-14);
            let c_limit = 2.0 * gamma * t * f64::exp(-2.0 * gamma * t);
            assert!((co.c - c_limit).abs() < 1e-12, "C limit at t={t}");
            assert!(co.v.norm() < 1e-15);
        }
        let co = coefficients_from_rates(gamma, 1.0, rates, 40.0).unwrap();
        assert!((co.h - 1.0).abs() < 1e-8 && (co.f - 1.0).abs() < 1e-8);
    }

    #[test]
    fn coherence_moduli_bounded_by_one() {
        for g12 in [-0.3, 0.0, 0.4, 0.5] {
            for om in [-5.0, 0.0, 0.7, 50.0] {
                for t in [0.0, 0.05, 1.0, 4.0, 30.0] {
                    let co = coefficients_from_rates(
                        0.5,
                        1.0,
                        CollectiveRates {
                            gamma12: g12,
                            omega12: om,
                        },
                        t,
                    )
                    .unwrap();
                    for (z, name) in [
                        (co.j, "J"),
                        (co.l, "L"),
                        (co.m, "M"),
                        (co.p, "P"),
                        (co.q, "Q"),
                        (co.t, "T"),
                    ] {
                        assert!(
                            z.norm() <= 1.0 + 1e-14,
                            "|{name}| = {} at g12={g12}, om={om}, t={t}",
                            z.norm()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn population_bookkeeping_identity() {
        // H = 1 - A - C - E for arbitrary rates
        for g12 in [-0.3, 0.0, 0.25, 0.4999, 0.5] {
            for t in [0.0, 0.3, 1.0, 7.0] {
                let co = coefficients_from_rates(
                    0.5,
                    1.0,
                    CollectiveRates {
                        gamma12: g12,
                        omega12: 1.3,
                    },
                    t,
                )
                .unwrap();
                let sum = co.a + co.c + co.e + co.h;
                assert!((sum - 1.0).abs() < 1e-13, "g12={g12} t={t}: {sum}");
            }
        }
    }

    #[test]
    fn degenerate_rate_switch_is_continuous() {
        let gamma = 0.5;
        let eps = RATE_DEGENERACY_THRESHOLD * gamma;
        // the two evaluation paths of the singular quotient agree at the
        // switch value itself (one ulp below takes the series branch)
        for t in [0.5, 2.0, 10.0, 40.0] {
            let series = decay_quotient(eps * (1.0 - f64::EPSILON), t, gamma);
            let direct = decay_quotient(eps, t, gamma);
            assert!(
                (series - direct).abs() < 1e-12 * t.max(1.0),
                "quotient paths disagree at t={t}: {series} vs {direct}"
            );
        }
        // coefficients evaluated just above and just below the threshold
        for t in [0.5, 2.0, 10.0] {
            let lo = coefficients_from_rates(
                gamma,
                1.0,
                CollectiveRates {
                    gamma12: gamma - (1.0 - 1e-5) * eps,
                    omega12: 2.0,
                },
                t,
            )
            .unwrap();
            let hi = coefficients_from_rates(
                gamma,
                1.0,
                CollectiveRates {
                    gamma12: gamma - (1.0 + 1e-5) * eps,
                    omega12: 2.0,
                },
                t,
            )
            .unwrap();
            for (x, y, name) in [(lo.c, hi.c, "C"), (lo.e, hi.e, "E"), (lo.h, hi.h, "H")] {
                assert!((x - y).abs() < 1e-10, "{name} jumps across switch: {x} vs {y}");
            }
        }
    }

    #[test]
    fn superoperator_identity_at_t_zero() {
        let co = coefficients(&ChannelParams::default().with_t(0.0)).unwrap();
        assert!(max_abs_diff(&superoperator(&co).entries, &identity(16)) < 1e-15);
    }

    #[test]
    fn superoperator_structure() {
        let co = coefficients(&ChannelParams::default()).unwrap();
        let s = superoperator(&co).entries;
        assert_eq!(s[(15, 15)], ONE);
        assert!((s[(15, 0)].re - co.h).abs() < 1e-15);
        assert!((s[(15, 5)].re - co.f).abs() < 1e-15);
        assert!((s[(15, 10)].re - co.g).abs() < 1e-15);
        // population columns of the diagonal slots sum to 1 (trace flow)
        for col in [0usize, 5, 10] {
            let sum: f64 = [0usize, 5, 10, 15].iter().map(|&r| s[(r, col)].re).sum();
            assert!((sum - 1.0).abs() < 1e-13, "column {col} sums to {sum}");
        }
    }

    #[test]
    fn dressed_transform_examples() {
        let ud = dressed_transform();
        // |eg> (second basis vector) has dressed coordinates (0, 1/sqrt2, 1/sqrt2, 0)
        let col: Vec<C64> = (0..4).map(|r| ud[(r, 1)]).collect();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((col[1] - C64::new(s, 0.0)).norm() < 1e-15);
        assert!((col[2] - C64::new(s, 0.0)).norm() < 1e-15);
        // |gg> maps to |g>
        assert_eq!(ud[(3, 3)], ONE);
        // involutory unitary
        assert!(max_abs_diff(&ud.dot(&ud), &identity(4)) < 1e-15);
        assert!(max_abs_diff(&ud.dot(&dagger(&ud)), &identity(4)) < 1e-15);
    }

    #[test]
    fn apply_identity_at_t_zero() {
        let mut rng = StdRng::seed_from_u64(11);
        let p = ChannelParams::default().with_t(0.0);
        for _ in 0..5 {
            let rho = random_density(&mut rng);
            let out = apply(&p, &rho).unwrap();
            assert!(max_abs_diff(&out, &rho) < 1e-14);
        }
    }

    #[test]
    fn doubly_excited_decays_to_ground() {
        // independent regime, t -> large: |ee><ee| -> |gg><gg|
        let p = ChannelParams::default().with_r12(100.0).with_t(120.0);
        let mut ee: CMat = Array2::zeros((4, 4));
        ee[(0, 0)] = ONE;
        let out = apply(&p, &ee).unwrap();
        let mut gg: CMat = Array2::zeros((4, 4));
        gg[(3, 3)] = ONE;
        assert!(max_abs_diff(&out, &gg) < 1e-12);
    }

    #[test]
    fn antisymmetric_state_is_decoherence_free_in_collective_limit() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut rho: CMat = Array2::zeros((4, 4));
        // |a> = (|eg> - |ge>)/sqrt2
        for (i, j, sign) in [(1, 1, 1.0), (1, 2, -1.0), (2, 1, -1.0), (2, 2, 1.0)] {
            rho[(i, j)] = C64::new(sign * s * s, 0.0);
        }
        let rates = CollectiveRates {
            gamma12: 0.5,
            omega12: 4.0,
        };
        for t in [0.5, 3.0, 25.0] {
            let out = apply_with_rates(0.5, 1.0, rates, t, &rho).unwrap();
            assert!(max_abs_diff(&out, &rho) < 1e-13, "subradiant state moved at t={t}");
        }
    }

    #[test]
    fn trace_and_hermiticity_preserved() {
        let mut rng = StdRng::seed_from_u64(23);
        for (gt, x) in [(0.1, 0.1), (1.0, 1.0), (5.0, 100.0), (2.5, 0.3)] {
            let p = ChannelParams::default().with_r12(x).with_t(gt / 0.5);
            let s = computational_superoperator(&coefficients(&p).unwrap());
            for _ in 0..25 {
                let rho = random_density(&mut rng);
                let out = apply_superoperator(&s, &rho);
                assert!((trace(&out) - ONE).norm() < 1e-12);
                assert!(hermiticity_defect(&out) < 1e-12);
            }
        }
    }

    #[test]
    fn invalid_density_matrices_rejected() {
        let p = ChannelParams::default();
        let mut not_unit: CMat = Array2::zeros((4, 4));
        not_unit[(0, 0)] = C64::new(2.0, 0.0);
        assert!(apply(&p, &not_unit).is_err());
        let mut not_herm: CMat = identity(4).mapv(|z| z * C64::new(0.25, 0.0));
        not_herm[(0, 1)] = C64::new(0.5, 0.0);
        assert!(apply(&p, &not_herm).is_err());
        let mut not_psd: CMat = Array2::zeros((4, 4));
        not_psd[(0, 0)] = C64::new(1.5, 0.0);
        not_psd[(1, 1)] = C64::new(-0.5, 0.0);
        assert!(apply(&p, &not_psd).is_err());
    }

    #[test]
    fn populations_form_semigroup_at_zero_coupling() {
        // Gamma12 = 0: diagonal (population) dynamics compose in time
        let rates = CollectiveRates {
            gamma12: 0.0,
            omega12: 0.0,
        };
        let mut rng = StdRng::seed_from_u64(37);
        for (t1, t2) in [(0.4, 1.1), (2.0, 0.7), (0.05, 3.0)] {
            let rho = random_density(&mut rng);
            let one_step = apply_with_rates(0.5, 1.0, rates, t1 + t2, &rho).unwrap();
            let first = apply_with_rates(0.5, 1.0, rates, t1, &rho).unwrap();
            let two_step = apply_with_rates(0.5, 1.0, rates, t2, &first).unwrap();
            for i in 0..4 {
                let diff = (one_step[(i, i)] - two_step[(i, i)]).norm();
                assert!(diff < 1e-10, "population {i} deviates by {diff}");
            }
        }
    }

    #[test]
    fn choi_matrix_is_positive() {
        for (gt, x) in [(0.1, 0.1), (1.0, 1.0), (5.0, 100.0)] {
            let p = ChannelParams::default().with_r12(x).with_t(gt / 0.5);
            let co = coefficients(&p).unwrap();
            let min_ev = min_eigenvalue(&choi_matrix(&co));
            assert!(min_ev > -1e-9, "choi min eigenvalue {min_ev}");
        }
    }

    #[test]
    fn rejects_invalid_params() {
        let mut p = ChannelParams::default();
        p.gamma = -1.0;
        assert!(coefficients(&p).is_err());
        let mut p = ChannelParams::default();
        p.alpha = 1.5;
        assert!(p.validate().is_err());
        let mut p = ChannelParams::default();
        p.t = -0.1;
        assert!(p.validate().is_err());
    }
}

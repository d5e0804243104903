//! Measures on process matrices and two-qubit states: trace distance, the
//! correlation measure D and its relative-entropy variant, Pauli-index
//! marginals, the asymptotic reference matrices, and geometric discord.

use crate::channel::{coefficients, ChannelError, ChannelParams};
use crate::linalg::{hermitian_eigenvalues, hermiticity_defect, kron, CMat, ONE, ZERO};
use crate::pauli::Pauli;
use crate::tomography::{qpt_chi_from, ProcessMatrix, TomographyError};
use ndarray::{array, Array2};
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("inputs must be Hermitian (defect {0:.2e})")]
    NotHermitian(f64),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Tomography(#[from] TomographyError),
}

/// Half the sum of the absolute eigenvalues of `m1 - m2`.
pub fn trace_distance(m1: &CMat, m2: &CMat) -> Result<f64, AnalysisError> {
    for m in [m1, m2] {
        let defect = hermiticity_defect(m);
        if defect > 1e-9 {
            return Err(AnalysisError::NotHermitian(defect));
        }
    }
    let diff = m1 - m2;
    Ok(0.5 * hermitian_eigenvalues(&diff).iter().map(|x| x.abs()).sum::<f64>())
}

/// Which qubit's Pauli index a marginal keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marginal {
    Qubit1,
    Qubit2,
}

/// Partial trace of a unit-trace chi over the other qubit's Pauli index.
/// For a factorized `chi1 ⊗ chi2` with unit traces this recovers the factors.
pub fn marginal_chi(chi: &ProcessMatrix, which: Marginal) -> CMat {
    let mut out: CMat = Array2::zeros((4, 4));
    for a in 0..4 {
        for c in 0..4 {
            let mut acc = ZERO;
            for b in 0..4 {
                acc += match which {
                    Marginal::Qubit1 => chi.get(a * 4 + b, c * 4 + b),
                    Marginal::Qubit2 => chi.get(b * 4 + a, b * 4 + c),
                };
            }
            out[(a, c)] = acc;
        }
    }
    out
}

/// Degree of correlation of the noise: trace distance between chi and the
/// product of its own marginals.
pub fn correlation_d(chi: &ProcessMatrix) -> f64 {
    let c1 = marginal_chi(chi, Marginal::Qubit1);
    let c2 = marginal_chi(chi, Marginal::Qubit2);
    trace_distance(&chi.entries, &kron(&c1, &c2)).expect("chi is Hermitian")
}

fn von_neumann_entropy(m: &CMat) -> f64 {
    hermitian_eigenvalues(m)
        .iter()
        .filter(|&&ev| ev > 1e-14)
        .map(|&ev| -ev * ev.log2())
        .sum()
}

/// Mutual-information variant of the correlation measure: chi treated as a
/// bipartite density operator over the two Pauli indices,
/// `S(chi_1) + S(chi_2) - S(chi)` in bits.
pub fn mutual_info_dstar(chi: &ProcessMatrix) -> f64 {
    let c1 = marginal_chi(chi, Marginal::Qubit1);
    let c2 = marginal_chi(chi, Marginal::Qubit2);
    von_neumann_entropy(&c1) + von_neumann_entropy(&c2) - von_neumann_entropy(&chi.entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Independent,
    Collective,
}

/// Single-qubit factor of the independent asymptotic process matrix, times 4.
fn independent_factor() -> CMat {
    let i = C64::new(0.0, 1.0);
    array![
        [ONE, ZERO, ZERO, -ONE],
        [ZERO, ONE, i, ZERO],
        [ZERO, -i, ONE, ZERO],
        [-ONE, ZERO, ZERO, ONE],
    ]
}

/// Real parts (in 1/32 units) of the collective asymptotic matrix.
const COLLECTIVE_RE: [[i32; 16]; 16] = [
    [4, 0, 0, -2, 0, -2, 0, 0, 0, 0, -2, 0, -2, 0, 0, 0],
    [0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, -1, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0],
    [-2, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, -2],
    [0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, -1, 0, 0],
    [-2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2],
    [0, 0, 0, 0, 0, 0, 2, 0, 0, 2, 0, 0, 0, 0, 0, 0],
    [0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0],
    [0, 0, 0, 0, 0, 0, 2, 0, 0, 2, 0, 0, 0, 0, 0, 0],
    [-2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 2],
    [0, 0, -1, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0],
    [-2, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, -2],
    [0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, -1, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0],
    [0, 0, 0, -2, 0, 2, 0, 0, 0, 0, 2, 0, -2, 0, 0, 4],
];

/// Imaginary parts (in 1/32 units) of the collective asymptotic matrix.
const COLLECTIVE_IM: [[i32; 16]; 16] = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0],
    [0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0],
    [0, 0, 0, 0, 0, 0, 2, 0, 0, 2, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, -2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0],
    [0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, -2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, -2, 0, 0, -2, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, -1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0],
    [0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, -1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
];

/// The long-time reference process matrices: the factorized independent
/// limit `(1/16) K ⊗ K`, and the non-factorizable collective limit (with
/// its oscillatory entries averaged over one period), both as published.
pub fn asymptotic_chi(regime: Regime) -> ProcessMatrix {
    match regime {
        Regime::Independent => {
            let k = independent_factor();
            ProcessMatrix {
                entries: kron(&k, &k).mapv(|z| z / 16.0),
            }
        }
        Regime::Collective => {
            let mut m: CMat = Array2::zeros((16, 16));
            for l in 0..16 {
                for c in 0..16 {
                    m[(l, c)] = C64::new(
                        COLLECTIVE_RE[l][c] as f64 / 32.0,
                        COLLECTIVE_IM[l][c] as f64 / 32.0,
                    );
                }
            }
            ProcessMatrix { entries: m }
        }
    }
}

fn bloch_decomposition(rho: &CMat) -> ([f64; 3], [f64; 3], [[f64; 3]; 3]) {
    let paulis = [Pauli::X.matrix(), Pauli::Y.matrix(), Pauli::Z.matrix()];
    let id = crate::linalg::identity(2);
    let expect = |op: &CMat| -> f64 {
        let mut acc = ZERO;
        for i in 0..4 {
            for j in 0..4 {
                acc += op[(i, j)] * rho[(j, i)];
            }
        }
        acc.re
    };
    let mut a = [0.0; 3];
    let mut b = [0.0; 3];
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        a[i] = expect(&kron(&paulis[i], &id));
        b[i] = expect(&kron(&id, &paulis[i]));
        for j in 0..3 {
            t[i][j] = expect(&kron(&paulis[i], &paulis[j]));
        }
    }
    (a, b, t)
}

/// Geometric discord `(1/4)(|a|^2 + |T|_F^2 - k_max)` with `a` the first
/// qubit's Bloch vector, `T` the correlation matrix and `k_max` the largest
/// eigenvalue of `a a^T + T T^T`.
pub fn geometric_discord(rho: &CMat) -> Result<f64, AnalysisError> {
    if rho.dim() != (4, 4) {
        return Err(AnalysisError::InvalidState("state must be 4x4".into()));
    }
    let herm = hermiticity_defect(rho);
    if herm > 1e-9 {
        return Err(AnalysisError::NotHermitian(herm));
    }
    let tr = crate::linalg::trace(rho);
    if (tr - ONE).norm() > 1e-9 {
        return Err(AnalysisError::InvalidState(format!("trace {tr} != 1")));
    }
    let (a, _b, t) = bloch_decomposition(rho);
    let a_norm2: f64 = a.iter().map(|x| x * x).sum();
    let t_norm2: f64 = t.iter().flatten().map(|x| x * x).sum();
    // K = a a^T + T T^T, 3x3 real symmetric
    let mut k: CMat = Array2::zeros((3, 3));
    for i in 0..3 {
        for j in 0..3 {
            let tt: f64 = (0..3).map(|c| t[i][c] * t[j][c]).sum();
            k[(i, j)] = C64::new(a[i] * a[j] + tt, 0.0);
        }
    }
    let k_max = *hermitian_eigenvalues(&k).last().unwrap();
    Ok(0.25 * (a_norm2 + t_norm2 - k_max))
}

/// Initial product state for the discord sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum DiscordInit {
    /// Both qubits in the ground level; stationary under the channel.
    GroundGround,
    /// Both qubits excited; the decay cascade generates the correlations.
    ExcitedExcited,
}

impl DiscordInit {
    /// Density matrix in the product basis (ee, eg, ge, gg).
    pub fn state(self) -> CMat {
        let mut rho: CMat = Array2::zeros((4, 4));
        match self {
            DiscordInit::GroundGround => rho[(3, 3)] = ONE,
            DiscordInit::ExcitedExcited => rho[(0, 0)] = ONE,
        }
        rho
    }
}

/// One sweep sample; absent quantities were not requested.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisResult {
    pub r12: f64,
    pub t: f64,
    pub d: Option<f64>,
    pub dstar: Option<f64>,
    pub discord: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    CorrelationD,
    MutualInfoDstar,
    Discord(DiscordInit),
}

/// The documented maximization grid: 400 geometrically spaced points with
/// `Gamma t` running from 1e-3 up to 20.
pub fn default_time_grid(gamma: f64) -> Vec<f64> {
    let n = 400;
    let (lo, hi) = (1e-3f64, 20.0f64);
    (0..n)
        .map(|i| {
            let gt = lo * (hi / lo).powf(i as f64 / (n - 1) as f64);
            gt / gamma
        })
        .collect()
}

/// Evaluate the requested quantities at one `(r12, t)` point.
pub fn analyze_point(
    base: &ChannelParams,
    r12: f64,
    t: f64,
    quantities: &[Quantity],
) -> Result<AnalysisResult, AnalysisError> {
    let params = base.with_r12(r12).with_t(t);
    let co = coefficients(&params)?;
    let mut out = AnalysisResult {
        r12,
        t,
        d: None,
        dstar: None,
        discord: None,
    };
    let needs_chi = quantities
        .iter()
        .any(|q| matches!(q, Quantity::CorrelationD | Quantity::MutualInfoDstar));
    let chi = needs_chi.then(|| qpt_chi_from(&co));
    for q in quantities {
        match q {
            Quantity::CorrelationD => out.d = Some(correlation_d(chi.as_ref().unwrap())),
            Quantity::MutualInfoDstar => {
                out.dstar = Some(mutual_info_dstar(chi.as_ref().unwrap()))
            }
            Quantity::Discord(init) => {
                let evolved = crate::channel::apply_superoperator(
                    &crate::channel::computational_superoperator(&co),
                    &init.state(),
                );
                out.discord = Some(geometric_discord(&evolved)?);
            }
        }
    }
    Ok(out)
}

/// Fixed separation, one sample per grid time.
pub fn sweep_curve(
    base: &ChannelParams,
    r12: f64,
    t_values: &[f64],
    quantities: &[Quantity],
) -> Result<Vec<AnalysisResult>, AnalysisError> {
    t_values
        .iter()
        .map(|&t| analyze_point(base, r12, t, quantities))
        .collect()
}

/// Per separation, each requested quantity maximized over the time grid;
/// the recorded `t` is the maximizer of the first requested quantity.
pub fn sweep_max(
    base: &ChannelParams,
    r12_values: &[f64],
    t_values: &[f64],
    quantities: &[Quantity],
) -> Result<Vec<AnalysisResult>, AnalysisError> {
    let mut out = Vec::with_capacity(r12_values.len());
    for &r12 in r12_values {
        let curve = sweep_curve(base, r12, t_values, quantities)?;
        let pick = |get: fn(&AnalysisResult) -> Option<f64>| -> Option<(f64, f64)> {
            curve
                .iter()
                .filter_map(|p| get(p).map(|v| (p.t, v)))
                .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
        };
        let d = pick(|p| p.d);
        let dstar = pick(|p| p.dstar);
        let discord = pick(|p| p.discord);
        let t_at_max = [d, dstar, discord]
            .into_iter()
            .flatten()
            .next()
            .map(|(t, _)| t)
            .unwrap_or(0.0);
        out.push(AnalysisResult {
            r12,
            t: t_at_max,
            d: d.map(|(_, v)| v),
            dstar: dstar.map(|(_, v)| v),
            discord: discord.map(|(_, v)| v),
        });
    }
    Ok(out)
}

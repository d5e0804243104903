//! The QECCD protocol engine: channel action on the encoded register,
//! diagonal extraction from syndrome statistics, pre-processing unitaries
//! U(a,b), toggling operators, the measurement schedule, and two independent
//! direct reconstructions of the 16x16 process matrix.

use crate::channel::{
    coefficients, computational_superoperator, ChannelError, ChannelParams, Coefficients,
};
use crate::code::{build_code, CodeError, CodeSpec, MeasureMode};
use crate::linalg::{dagger, hermiticity_defect, identity, kron, min_eigenvalue, CMat, CVec, ONE};
use crate::pauli::{basis_label_2q, error_basis, swap_index_2q, Phase};
use ndarray::Array2;
use num_complex::Complex64 as C64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TomographyError {
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// The 16x16 process matrix indexed by the two-qubit error basis
/// (II, IX, ..., ZZ).
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessMatrix {
    pub entries: CMat,
}

impl ProcessMatrix {
    pub fn zeros() -> ProcessMatrix {
        ProcessMatrix {
            entries: Array2::zeros((16, 16)),
        }
    }

    pub fn get(&self, l: usize, m: usize) -> C64 {
        self.entries[(l, m)]
    }

    pub fn trace(&self) -> C64 {
        crate::linalg::trace(&self.entries)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.entries)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.entries)
    }

    pub fn max_abs_diff(&self, other: &ProcessMatrix) -> f64 {
        crate::linalg::max_abs_diff(&self.entries, &other.entries)
    }

    /// Residual of the trace-preservation constraint
    /// `sum_{lm} chi_{lm} F_m^dag F_l = I`.
    pub fn trace_preservation_defect(&self) -> f64 {
        let basis = error_basis(2);
        let mats: Vec<CMat> = basis.iter().map(|p| p.matrix()).collect();
        let mut acc: CMat = Array2::zeros((4, 4));
        for l in 0..16 {
            for m in 0..16 {
                let term = dagger(&mats[m]).dot(&mats[l]);
                acc = acc + term.mapv(|z| z * self.entries[(l, m)]);
            }
        }
        crate::linalg::max_abs_diff(&acc, &identity(4))
    }

    /// CSV rendering with columns `row_label,col_label,re,im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row_label,col_label,re,im\n");
        for l in 0..16 {
            for m in 0..16 {
                let z = self.entries[(l, m)];
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    basis_label_2q(l),
                    basis_label_2q(m),
                    z.re,
                    z.im
                ));
            }
        }
        out
    }

    /// JSON rendering: labels plus full re/im matrices.
    pub fn to_json(&self) -> serde_json::Value {
        let labels: Vec<String> = (0..16).map(basis_label_2q).collect();
        let re: Vec<Vec<f64>> = (0..16)
            .map(|l| (0..16).map(|m| self.entries[(l, m)].re).collect())
            .collect();
        let im: Vec<Vec<f64>> = (0..16)
            .map(|l| (0..16).map(|m| self.entries[(l, m)].im).collect())
            .collect();
        serde_json::json!({ "labels": labels, "re": re, "im": im })
    }
}

/// Shared [[5,1]] code instance; building it is deterministic and pure.
pub fn code() -> &'static CodeSpec {
    static CODE: OnceLock<CodeSpec> = OnceLock::new();
    CODE.get_or_init(build_code)
}

/// Apply the channel to qubits 1-2 of a 32x32 register state.
pub fn apply_to_register(s_comp: &CMat, rho: &CMat) -> CMat {
    let mut out: CMat = Array2::zeros((32, 32));
    for a in 0..4 {
        for b in 0..4 {
            for ap in 0..4 {
                for bp in 0..4 {
                    let s = s_comp[(a * 4 + b, ap * 4 + bp)];
                    if s.norm_sqr() == 0.0 {
                        continue;
                    }
                    for mm in 0..8 {
                        for nn in 0..8 {
                            out[(a * 8 + mm, b * 8 + nn)] +=
                                s * rho[(ap * 8 + mm, bp * 8 + nn)];
                        }
                    }
                }
            }
        }
    }
    out
}

/// The encoded register after the noise: channel on qubits 1-2 of
/// `|Psi_L><Psi_L|`, identity on the three ancillas.
pub fn noisy_register(
    code: &CodeSpec,
    co: &Coefficients,
    beta0: C64,
    beta1: C64,
) -> Result<CMat, TomographyError> {
    let psi = code.logical_state(beta0, beta1)?;
    let rho = outer(&psi);
    Ok(apply_to_register(&computational_superoperator(co), &rho))
}

fn outer(v: &CVec) -> CMat {
    let n = v.len();
    let mut m: CMat = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = v[i] * v[j].conj();
        }
    }
    m
}

/// Direct oracle: expand the noisy register in the orthonormal erroneous
/// codewords, `chi_{l,m} = <Psi_L^l| rho |Psi_L^m>`.
pub fn direct_chi_at(
    code: &CodeSpec,
    co: &Coefficients,
    beta0: C64,
    beta1: C64,
) -> Result<ProcessMatrix, TomographyError> {
    let psi = code.logical_state(beta0, beta1)?;
    let rho = apply_to_register(&computational_superoperator(co), &outer(&psi));
    let errs: Vec<CVec> = (0..16).map(|l| code.embed_error(l).dot(&psi)).collect();
    let mut chi: CMat = Array2::zeros((16, 16));
    for l in 0..16 {
        let bra = errs[l].mapv(|z| z.conj());
        let row = bra.dot(&rho);
        for m in 0..16 {
            chi[(l, m)] = row.dot(&errs[m]);
        }
    }
    Ok(ProcessMatrix { entries: chi })
}

/// [`direct_chi_at`] with the default logical state `|0_L>`.
pub fn direct_chi(params: &ChannelParams) -> Result<ProcessMatrix, TomographyError> {
    direct_chi_at(code(), &coefficients(params)?, ONE, C64::new(0.0, 0.0))
}

/// Second, code-free oracle: linear basis change from the superoperator
/// `S = sum_{lm} chi_{lm} (F_l ⊗ F_m^*)` to the chi representation.
pub fn qpt_chi_from(co: &Coefficients) -> ProcessMatrix {
    let s = computational_superoperator(co);
    let basis = error_basis(2);
    let mats: Vec<CMat> = basis.iter().map(|p| p.matrix()).collect();
    let mut chi: CMat = Array2::zeros((16, 16));
    for l in 0..16 {
        for m in 0..16 {
            let fm_conj = mats[m].mapv(|z| z.conj());
            let probe = kron(&mats[l], &fm_conj);
            // chi_{lm} = Tr(probe^dag S) / 16
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..16 {
                for j in 0..16 {
                    acc += probe[(i, j)].conj() * s[(i, j)];
                }
            }
            chi[(l, m)] = acc / 16.0;
        }
    }
    ProcessMatrix { entries: chi }
}

pub fn qpt_chi(params: &ChannelParams) -> Result<ProcessMatrix, TomographyError> {
    Ok(qpt_chi_from(&coefficients(params)?))
}

/// Diagonal of chi from one syndrome-measurement configuration: exact
/// probabilities or sampled frequencies, in error-basis order.
pub fn diagonal_chi(
    code: &CodeSpec,
    params: &ChannelParams,
    mode: MeasureMode,
) -> Result<[f64; 16], TomographyError> {
    let co = coefficients(params)?;
    let rho = noisy_register(code, &co, ONE, C64::new(0.0, 0.0))?;
    let outcomes = code.measure_syndrome(&rho, mode)?;
    Ok(std::array::from_fn(|l| outcomes[l].probability))
}

/// Which superposition the pre-processing unitary takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitaryBranch {
    /// `{F_a, F_b} = 0`: `U = (F_a + F_b)/sqrt2`
    Anticommuting,
    /// `[F_a, F_b] = 0`: `U = (F_a + i F_b)/sqrt2`
    Commuting,
}

/// Pre-processing unitary on the register for an error-basis pair.
pub struct PreprocessUnitary {
    pub matrix: CMat,
    pub branch: UnitaryBranch,
}

/// `U(a,b) ⊗ I^(⊗3)`: any two distinct basis elements either commute or
/// anticommute, fixing the branch.
pub fn build_u(a: usize, b: usize) -> PreprocessUnitary {
    assert_ne!(a, b, "the pair must be distinct");
    let basis = error_basis(2);
    let fa = basis[a].matrix();
    let fb = basis[b].matrix();
    let commutes = basis[a].commutes(&basis[b]).unwrap();
    let inv_sqrt2 = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let two_qubit = if commutes {
        (fa + fb.mapv(|z| z * C64::new(0.0, 1.0))).mapv(|z| z * inv_sqrt2)
    } else {
        (fa + fb).mapv(|z| z * inv_sqrt2)
    };
    PreprocessUnitary {
        matrix: kron(&two_qubit, &identity(8)),
        branch: if commutes {
            UnitaryBranch::Commuting
        } else {
            UnitaryBranch::Anticommuting
        },
    }
}

/// Decompose `F_a F_x = g F_A` into the Pauli factor and the phase-free
/// basis index.
pub fn pauli_factors(a: usize, x: usize) -> (Phase, usize) {
    let basis = error_basis(2);
    let prod = basis[a].mul(&basis[x]).unwrap();
    (prod.phase, crate::pauli::basis_index_2q(&prod.unphased()))
}

/// Partition of the 16 error-basis indices into the `+pi/4` and `-pi/4`
/// sectors of a toggling operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TogglePartition {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl TogglePartition {
    pub fn validate(&self) -> bool {
        let mut seen = [false; 16];
        for &i in self.plus.iter().chain(&self.minus) {
            if i >= 16 || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        seen.iter().all(|&s| s) && self.plus.len() == 8 && self.minus.len() == 8
    }

    pub fn contains_plus(&self, l: usize) -> bool {
        self.plus.contains(&l)
    }
}

/// Build a partition separating every target pair of a schedule block:
/// each pair's first element goes to the `+` sector and its partner to `-`;
/// unconstrained indices alternate in index order, keeping the sectors at
/// eight elements each. The pair list must be consistent (pairs are either
/// disjoint or duplicates, as in the standard schedule blocks).
pub fn partition_for_pairs(pairs: &[(usize, usize)]) -> TogglePartition {
    let mut sector = [0i8; 16]; // 0 unassigned, +1 plus, -1 minus
    for &(a, b) in pairs {
        match (sector[a], sector[b]) {
            (0, 0) => {
                sector[a] = 1;
                sector[b] = -1;
            }
            (sa, 0) => sector[b] = -sa,
            (0, sb) => sector[a] = -sb,
            _ => {} // both constrained already (duplicate pair)
        }
    }
    let mut toggle = true;
    for s in sector.iter_mut() {
        if *s == 0 {
            *s = if toggle { 1 } else { -1 };
            toggle = !toggle;
        }
    }
    TogglePartition {
        plus: (0..16).filter(|&i| sector[i] > 0).collect(),
        minus: (0..16).filter(|&i| sector[i] < 0).collect(),
    }
}

/// The toggling operator `T+ = sum_m e^{i theta_m} Pi_L^m` with
/// `Pi_L^m = (F_m ⊗ I) Pi_C (F_m ⊗ I)`; the sixteen erroneous-code
/// projectors resolve the whole 32-dimensional space, so no complement
/// block is needed.
pub fn build_toggle(code: &CodeSpec, partition: &TogglePartition) -> CMat {
    assert!(partition.validate(), "invalid toggle partition");
    let pi_c = code.code_projector();
    let phase_plus = C64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let phase_minus = phase_plus.conj();
    let mut t: CMat = Array2::zeros((32, 32));
    for m in 0..16 {
        let em = code.embed_error(m);
        let pi_m = em.dot(&pi_c).dot(&em);
        let ph = if partition.contains_plus(m) {
            phase_plus
        } else {
            phase_minus
        };
        t = t + pi_m.mapv(|z| z * ph);
    }
    t
}

/// Resolve one linear combination of an off-diagonal element from a measured
/// syndrome probability: `(2 xi - chi_AA - chi_BB) / 2`. Which real
/// combination this is depends on the Pauli factors and the branch:
/// `Re(g_A^* g_B chi_AB)` (anticommuting) or `Im(g_A^* g_B chi_AB)`
/// (commuting).
pub fn offdiag_invert(xi: f64, chi_aa: f64, chi_bb: f64) -> f64 {
    (2.0 * xi - chi_aa - chi_bb) / 2.0
}

/// One syndrome row of a schedule block: measuring syndrome `x` under
/// `U(a,b)` resolves the element pair `(target_a, target_b)` with Pauli
/// factors `(g_a, g_b)`.
#[derive(Debug, Clone)]
pub struct ScheduleRow {
    pub x: usize,
    pub target_a: usize,
    pub g_a: Phase,
    pub target_b: usize,
    pub g_b: Phase,
}

/// One pre-processing unitary with its syndrome rows and toggle partition.
#[derive(Debug, Clone)]
pub struct ScheduleBlock {
    pub a: usize,
    pub b: usize,
    pub rows: Vec<ScheduleRow>,
    pub partition: TogglePartition,
}

/// The full off-diagonal measurement schedule.
#[derive(Debug, Clone)]
pub struct Schedule {
    pub version: u32,
    pub blocks: Vec<ScheduleBlock>,
}

/// Unitary pairs and measured syndromes of the standard 2AD schedule.
const SCHEDULE_TABLES: [(&str, &str, &[&str]); 8] = [
    ("II", "IZ", &["II", "IX", "XI", "XX", "IY", "YX", "IZ", "ZX"]),
    ("II", "ZI", &["II", "IX", "XI", "XX", "XY"]),
    ("II", "XX", &["II", "IX", "IY", "YI", "YY", "YZ"]),
    ("II", "YY", &["II", "IX", "IY", "XI", "XX", "XZ"]),
    ("II", "ZZ", &["II", "IX", "IY", "IZ", "XI", "YI", "XX", "XY"]),
    ("IX", "YI", &["II", "XI", "XX", "XY", "YY", "YZ"]),
    ("IY", "XI", &["II", "IX", "IZ", "YI", "YX", "YY"]),
    ("IY", "ZY", &["II", "IX", "XX"]),
];

impl Schedule {
    /// The eight-block standard schedule; rows and toggle partitions are
    /// derived from the Pauli algebra.
    pub fn standard() -> &'static Schedule {
        static SCHED: OnceLock<Schedule> = OnceLock::new();
        SCHED.get_or_init(|| {
            let blocks = SCHEDULE_TABLES
                .iter()
                .map(|(a_lab, b_lab, xs)| {
                    let a = crate::pauli::basis_index_from_label(a_lab).unwrap();
                    let b = crate::pauli::basis_index_from_label(b_lab).unwrap();
                    let rows: Vec<ScheduleRow> = xs
                        .iter()
                        .map(|x_lab| {
                            let x = crate::pauli::basis_index_from_label(x_lab).unwrap();
                            let (g_a, target_a) = pauli_factors(a, x);
                            let (g_b, target_b) = pauli_factors(b, x);
                            ScheduleRow {
                                x,
                                target_a,
                                g_a,
                                target_b,
                                g_b,
                            }
                        })
                        .collect();
                    let pairs: Vec<(usize, usize)> =
                        rows.iter().map(|r| (r.target_a, r.target_b)).collect();
                    let partition = partition_for_pairs(&pairs);
                    ScheduleBlock {
                        a,
                        b,
                        rows,
                        partition,
                    }
                })
                .collect();
            Schedule {
                version: 1,
                blocks,
            }
        })
    }

    /// Number of apparatus configurations: one diagonal run plus each block
    /// with and without its toggle.
    pub fn configurations(&self) -> usize {
        1 + 2 * self.blocks.len()
    }

    /// Versioned JSON form: pairs and targets as labels, syndromes as
    /// 4-character sign strings, partitions as index lists, and the
    /// analytic cross-check expressions as strings.
    pub fn to_json(&self, code: &CodeSpec) -> serde_json::Value {
        let blocks: Vec<serde_json::Value> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(bi, blk)| {
                let rows: Vec<serde_json::Value> = blk
                    .rows
                    .iter()
                    .map(|r| {
                        let claims: Vec<serde_json::Value> = crate::audit::PRINTED_ROWS
                            .iter()
                            .filter(|pr| {
                                pr.block as usize == bi + 1
                                    && pr.syndrome == basis_label_2q(r.x)
                            })
                            .map(|pr| {
                                serde_json::json!({
                                    "part": match pr.part {
                                        crate::audit::Part::Re => "Re",
                                        crate::audit::Part::Im => "Im",
                                    },
                                    "toggled": pr.toggled,
                                    "expr": pr.expr,
                                    "corrected_expr":
                                        pr.corrected_expr.or(pr.substituted_expr),
                                })
                            })
                            .collect();
                        serde_json::json!({
                            "syndrome": code.syndrome_of_error(r.x).to_string(),
                            "error": basis_label_2q(r.x),
                            "target": [basis_label_2q(r.target_a), basis_label_2q(r.target_b)],
                            "pauli_factors": [phase_str(r.g_a), phase_str(r.g_b)],
                            "analytic": claims,
                        })
                    })
                    .collect();
                serde_json::json!({
                    "unitary": [basis_label_2q(blk.a), basis_label_2q(blk.b)],
                    "rows": rows,
                    "toggle": {
                        "plus": blk.partition.plus,
                        "minus": blk.partition.minus,
                    },
                })
            })
            .collect();
        serde_json::json!({ "version": self.version, "blocks": blocks })
    }
}

fn phase_str(p: Phase) -> &'static str {
    match p {
        Phase::ONE => "+1",
        Phase::MINUS_ONE => "-1",
        Phase::PLUS_I => "+i",
        _ => "-i",
    }
}

/// Outcome of a schedule run.
pub struct Reconstruction {
    pub chi: ProcessMatrix,
    pub report: ReconstructionReport,
}

/// Bookkeeping from a schedule run: configuration count, rows whose syndrome
/// saw too few samples, and the worst spread among duplicate measurements of
/// the same element.
#[derive(Debug, Clone, Default)]
pub struct ReconstructionReport {
    pub configurations: usize,
    pub low_statistics: Vec<String>,
    pub duplicate_spread: f64,
}

/// Observed counts below this many shots mark a sampled row as
/// statistically weak.
const LOW_STATISTICS_COUNT: u64 = 100;

/// Execute the full schedule: a diagonal configuration plus every block with
/// and without its toggle; invert the syndrome statistics into off-diagonal
/// elements; complete the matrix by Hermiticity and the qubit-interchange
/// symmetry of the channel; leave unscheduled elements at zero.
pub fn run_schedule(
    code: &CodeSpec,
    params: &ChannelParams,
    mode: MeasureMode,
) -> Result<Reconstruction, TomographyError> {
    run_schedule_with(code, params, mode, ONE, C64::new(0.0, 0.0))
}

/// [`run_schedule`] at an explicit logical state; the reconstruction is
/// state-independent, which the default-state tests pin down.
pub fn run_schedule_with(
    code: &CodeSpec,
    params: &ChannelParams,
    mode: MeasureMode,
    beta0: C64,
    beta1: C64,
) -> Result<Reconstruction, TomographyError> {
    let co = coefficients(params)?;
    let rho = noisy_register(code, &co, beta0, beta1)?;
    let schedule = Schedule::standard();

    // deterministic per-configuration child seeds from the master seed
    let mut seeds = SeedSequence::new(mode);
    let mut report = ReconstructionReport {
        configurations: schedule.configurations(),
        ..Default::default()
    };

    let diag_outcomes = code.measure_syndrome(&rho, seeds.next_mode())?;
    let diag: [f64; 16] = std::array::from_fn(|l| diag_outcomes[l].probability);

    let mut chi: CMat = Array2::zeros((16, 16));
    for l in 0..16 {
        chi[(l, l)] = C64::new(diag[l], 0.0);
    }

    // accumulate measured off-diagonal values keyed by ordered pair
    let mut sums: std::collections::HashMap<(usize, usize), Vec<C64>> =
        std::collections::HashMap::new();

    for blk in &schedule.blocks {
        let u = build_u(blk.a, blk.b);
        let toggle = build_toggle(code, &blk.partition);
        let rho_plain = u.matrix.dot(&rho).dot(&dagger(&u.matrix));
        let toggled = toggle.dot(&rho).dot(&dagger(&toggle));
        let rho_toggled = u.matrix.dot(&toggled).dot(&dagger(&u.matrix));

        let plain = code.measure_syndrome(&rho_plain, seeds.next_mode())?;
        let tog = code.measure_syndrome(&rho_toggled, seeds.next_mode())?;

        for row in &blk.rows {
            debug_assert!(
                blk.partition.contains_plus(row.target_a)
                    != blk.partition.contains_plus(row.target_b),
                "toggle must separate the target pair"
            );
            let sigma = if blk.partition.contains_plus(row.target_a) {
                1.0
            } else {
                -1.0
            };
            let xi0 = plain[row.x].probability;
            let xi1 = tog[row.x].probability;
            if let (Some(c0), Some(c1)) = (plain[row.x].count, tog[row.x].count) {
                if c0 < LOW_STATISTICS_COUNT || c1 < LOW_STATISTICS_COUNT {
                    report.low_statistics.push(format!(
                        "U({},{}) syndrome {}: counts {}/{}",
                        basis_label_2q(blk.a),
                        basis_label_2q(blk.b),
                        code.syndrome_of_error(row.x),
                        c0,
                        c1
                    ));
                }
            }
            let v_plain = offdiag_invert(xi0, diag[row.target_a], diag[row.target_b]);
            let v_toggled = offdiag_invert(xi1, diag[row.target_a], diag[row.target_b]);
            let w = row.g_a.conj().mul(row.g_b).to_c64();
            // w*z resolved componentwise: the untoggled run gives Im (commuting
            // branch) or Re (anticommuting); toggling maps z -> i*sigma*z.
            let wz = match u.branch {
                UnitaryBranch::Commuting => C64::new(sigma * v_toggled, v_plain),
                UnitaryBranch::Anticommuting => C64::new(v_plain, -sigma * v_toggled),
            };
            let z = w.conj() * wz;
            let (lo, hi, val) = if row.target_a < row.target_b {
                (row.target_a, row.target_b, z)
            } else {
                (row.target_b, row.target_a, z.conj())
            };
            sums.entry((lo, hi)).or_default().push(val);
        }
    }

    let mut measured: Vec<(usize, usize)> = Vec::new();
    for (&(lo, hi), values) in &sums {
        let mean = values.iter().sum::<C64>() / values.len() as f64;
        chi[(lo, hi)] = mean;
        chi[(hi, lo)] = mean.conj();
        measured.push((lo, hi));
        // spread among duplicate measurements of the same element: a
        // consistency check in exact mode, statistical scatter in sampled
        for z in values {
            report.duplicate_spread = report.duplicate_spread.max((z - mean).norm());
        }
    }

    // complete unmeasured elements from the qubit-interchange symmetry
    for l in 0..16 {
        for m in 0..16 {
            if l == m {
                continue;
            }
            let key = (l.min(m), l.max(m));
            if measured.contains(&key) {
                continue;
            }
            let sl = swap_index_2q(l);
            let sm = swap_index_2q(m);
            if measured.contains(&(sl.min(sm), sl.max(sm))) {
                chi[(l, m)] = chi[(sl, sm)];
            }
        }
    }

    Ok(Reconstruction {
        chi: ProcessMatrix { entries: chi },
        report,
    })
}

/// Derives one child seed per apparatus configuration from the master seed.
struct SeedSequence {
    master: Option<ChaCha12Rng>,
    shots: u64,
}

impl SeedSequence {
    fn new(mode: MeasureMode) -> SeedSequence {
        match mode {
            MeasureMode::Exact => SeedSequence {
                master: None,
                shots: 0,
            },
            MeasureMode::Sampled { shots, seed } => SeedSequence {
                master: Some(ChaCha12Rng::seed_from_u64(seed)),
                shots,
            },
        }
    }

    fn next_mode(&mut self) -> MeasureMode {
        match &mut self.master {
            None => MeasureMode::Exact,
            Some(rng) => MeasureMode::Sampled {
                shots: self.shots,
                seed: rng.next_u64(),
            },
        }
    }
}

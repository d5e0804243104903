//! Acceptance suite: one test per numbered criterion, each printing a
//! pass/fail line with the measured figures (run with `--nocapture` to see
//! the lines for passing criteria as well).
//!
//! Criteria 7, 8 and 11 assert idealized zero-correlation bounds and an
//! optimistic audit classification taken from the source analysis. The
//! exact closed-form solution provably exceeds those bounds (residual
//! dipole couplings at finite separation are first order, and the source
//! tables carry many more transcription slips than the two anticipated
//! symbol typos), so those three tests fail by design, printing the
//! measured values; see the failure messages for the numbers.

use num_complex::Complex64 as C64;
use qeccd::analysis::{
    asymptotic_chi, correlation_d, default_time_grid, geometric_discord, trace_distance,
    DiscordInit, Regime,
};
use qeccd::audit::audit_analytic_tables;
use qeccd::channel::{
    apply_superoperator, coefficients, coefficients_from_rates, computational_superoperator,
    spatial_f, spatial_g, ChannelParams, CollectiveRates,
};
use qeccd::code::{check_hamming, MeasureMode};
use qeccd::linalg::{hermiticity_defect, min_eigenvalue, trace, CMat};
use qeccd::tomography::{code, direct_chi, qpt_chi, qpt_chi_from, run_schedule};
use std::time::Instant;

const GAMMA: f64 = 0.5;

fn grid_params() -> Vec<ChannelParams> {
    let mut out = Vec::new();
    for gt in [0.2, 1.0, 5.0] {
        for x in [0.1, 1.0, 100.0] {
            out.push(ChannelParams::default().with_r12(x).with_t(gt / GAMMA));
        }
    }
    out
}

fn verdict(n: u32, pass: bool, detail: &str) {
    println!(
        "criterion {n:02}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

#[test]
fn criterion_01_identity_limit() {
    let start = Instant::now();
    let p = ChannelParams::default().with_t(0.0);
    let direct = direct_chi(&p).unwrap();
    let qpt = qpt_chi(&p).unwrap();
    let qeccd = run_schedule(code(), &p, MeasureMode::Exact).unwrap().chi;
    let mut worst: f64 = 0.0;
    for chi in [&direct, &qpt, &qeccd] {
        worst = worst.max((chi.get(0, 0) - C64::new(1.0, 0.0)).norm());
        for l in 0..16 {
            for m in 0..16 {
                if (l, m) != (0, 0) {
                    worst = worst.max(chi.get(l, m).norm());
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-12 && elapsed.as_secs_f64() < 1.0;
    verdict(
        1,
        pass,
        &format!("identity limit: worst deviation {worst:.2e}, runtime {elapsed:.2?}"),
    );
    assert!(worst < 1e-12, "identity-limit deviation {worst:.2e}");
    assert!(elapsed.as_secs_f64() < 1.0, "runtime {elapsed:.2?} exceeds 1 s");
}

#[test]
fn criterion_02_triple_oracle_equivalence() {
    let start = Instant::now();
    let code = code();
    let mut worst_qeccd: f64 = 0.0;
    let mut worst_qpt: f64 = 0.0;
    for p in grid_params() {
        let direct = direct_chi(&p).unwrap();
        let qpt = qpt_chi(&p).unwrap();
        let qeccd = run_schedule(code, &p, MeasureMode::Exact).unwrap().chi;
        worst_qeccd = worst_qeccd.max(qeccd.max_abs_diff(&direct));
        worst_qpt = worst_qpt.max(qpt.max_abs_diff(&direct));
    }
    let elapsed = start.elapsed();
    let pass = worst_qeccd < 1e-9 && worst_qpt < 1e-10 && elapsed.as_secs_f64() < 30.0;
    verdict(
        2,
        pass,
        &format!(
            "triple-oracle equivalence on 9-point grid: |qeccd - direct| {worst_qeccd:.2e}, \
             |qpt - direct| {worst_qpt:.2e}, runtime {elapsed:.2?}"
        ),
    );
    assert!(worst_qeccd < 1e-9);
    assert!(worst_qpt < 1e-10);
    assert!(elapsed.as_secs_f64() < 30.0);
}

#[test]
fn criterion_03_analytic_diagonal_formulas() {
    use qeccd::audit::{diagonal_formulas_defect, DIAGONAL_FORMULAS, SWAP_SYMMETRIC_PAIRS};
    use qeccd::expr::evaluate;
    use qeccd::pauli::basis_index_from_label;
    let mut worst: f64 = 0.0;
    let mut worst_swap: f64 = 0.0;
    let mut printed_slips_detected = true;
    for p in grid_params() {
        let co = coefficients(&p).unwrap();
        let chi = direct_chi(&p).unwrap();
        worst = worst.max(diagonal_formulas_defect(&co, &chi));
        for (a, b) in SWAP_SYMMETRIC_PAIRS {
            let l = basis_index_from_label(a).unwrap();
            let m = basis_index_from_label(b).unwrap();
            worst_swap = worst_swap.max((chi.get(l, l) - chi.get(m, m)).norm());
        }
        // the two documented transcription slips must be real deviations
        if p.t > 1.0 && p.r12 < 1.0 {
            let zz = &DIAGONAL_FORMULAS[6];
            let printed = evaluate(zz.expr, &co).unwrap();
            printed_slips_detected &= (printed - chi.get(15, 15).re).abs() > 1e-6;
            let plus = evaluate(DIAGONAL_FORMULAS[1].expr, &co).unwrap();
            let yz = basis_index_from_label("YZ").unwrap();
            printed_slips_detected &= (plus - chi.get(yz, yz).re).abs() > 1e-9;
        }
    }
    let pass = worst < 1e-12 && worst_swap < 1e-12 && printed_slips_detected;
    verdict(
        3,
        pass,
        &format!(
            "analytic diagonals (grouping and ZZ sign as corrected; corrections logged): \
             worst formula defect {worst:.2e}, worst swap-pair defect {worst_swap:.2e}"
        ),
    );
    assert!(worst < 1e-12, "diagonal formula defect {worst:.2e}");
    assert!(worst_swap < 1e-12, "swap-symmetry defect {worst_swap:.2e}");
    assert!(printed_slips_detected, "printed slips no longer deviate?");
}

#[test]
fn criterion_04_independent_asymptote() {
    let p = ChannelParams::default().with_r12(100.0).with_t(20.0 / GAMMA);
    let chi = direct_chi(&p).unwrap();
    let mut worst_diag: f64 = 0.0;
    for l in 0..16 {
        worst_diag = worst_diag.max((chi.get(l, l).re - 1.0 / 16.0).abs());
    }
    let asy = asymptotic_chi(Regime::Independent);
    let dist = trace_distance(&chi.entries, &asy.entries).unwrap();
    let pass = worst_diag < 1e-3 && dist < 2e-3;
    verdict(
        4,
        pass,
        &format!(
            "independent asymptote: worst diagonal deviation from 1/16 is {worst_diag:.2e}, \
             trace distance to reference {dist:.2e}"
        ),
    );
    assert!(worst_diag < 1e-3);
    assert!(dist < 2e-3);
}

#[test]
fn criterion_05_collective_asymptote() {
    // Gamma12 = Gamma exactly; the surviving oscillation (frequency
    // omega0 - Omega12) is averaged over one period at Gamma t = 20
    let rates = CollectiveRates {
        gamma12: GAMMA,
        omega12: 10.0,
    };
    let omega0 = 1.0;
    let t0 = 20.0 / GAMMA;
    let period = std::f64::consts::TAU / (omega0 - rates.omega12).abs();
    let samples = 64;
    let mut avg: CMat = ndarray::Array2::zeros((16, 16));
    for k in 0..samples {
        let t = t0 + period * k as f64 / samples as f64;
        let co = coefficients_from_rates(GAMMA, omega0, rates, t).unwrap();
        avg = avg + qpt_chi_from(&co).entries;
    }
    avg = avg.mapv(|z| z / samples as f64);
    let reference = asymptotic_chi(Regime::Collective);
    let worst = qeccd::linalg::max_abs_diff(&avg, &reference.entries);
    // XY-slot resolution: the reference matrix value 1/16 is what the
    // computation gives (the alternative reading 1/8 appears elsewhere in
    // the source prose and is rejected by the oracle); logged here.
    let xy = avg[(6, 6)].re;
    let pass = worst < 5e-3;
    verdict(
        5,
        pass,
        &format!(
            "collective asymptote (period-averaged): worst entrywise deviation {worst:.2e}; \
             chi_XY,XY = {xy:.6} resolving the 1/8-vs-1/16 discrepancy in favor of 1/16"
        ),
    );
    assert!(worst < 5e-3);
    assert!((xy - 1.0 / 16.0).abs() < 5e-3);
}

#[test]
fn criterion_06_sampled_mode_convergence() {
    let code = code();
    let p = ChannelParams::default().with_r12(0.1).with_t(1.0 / GAMMA);
    let oracle = direct_chi(&p).unwrap();
    let err = |shots: u64| {
        run_schedule(code, &p, MeasureMode::Sampled { shots, seed: 2026 })
            .unwrap()
            .chi
            .max_abs_diff(&oracle)
    };
    let base = err(1_000_000);
    let quadrupled = err(4_000_000);
    let ratio = base / quadrupled;
    let pass = base < 5e-3 && (1.4..=2.9).contains(&ratio);
    verdict(
        6,
        pass,
        &format!(
            "sampled reconstruction: max error {base:.2e} at 1e6 shots; \
             quadrupling improves by {ratio:.2}"
        ),
    );
    assert!(base < 5e-3, "sampled error {base:.2e}");
    assert!(
        (1.4..=2.9).contains(&ratio),
        "improvement ratio {ratio:.2} outside [1.4, 2.9]"
    );
}

#[test]
fn criterion_07_correlation_measure() {
    let base = ChannelParams::default();
    let t_grid = default_time_grid(GAMMA);
    let d_max = |r12: f64| -> f64 {
        t_grid
            .iter()
            .map(|&t| {
                let co = coefficients(&base.with_r12(r12).with_t(t)).unwrap();
                correlation_d(&qpt_chi_from(&co))
            })
            .fold(0.0, f64::max)
    };
    let far = d_max(100.0);
    let near = d_max(0.1);
    verdict(
        7,
        far < 1e-6 && near > 1e-3,
        &format!(
            "correlation measure: D_max(k0 r12 = 0.1) = {near:.3e} (> 1e-3 ok), \
             D_max(k0 r12 = 100) = {far:.3e} vs the 1e-6 bound; separation factor {:.0}",
            near / far
        ),
    );
    assert!(near > 1e-3, "collective-regime D_max {near:.3e}");
    assert!(far < near, "regime ordering");
    // The 1e-6 bounds encode the idealized "no correlation at wide
    // separation" reading. At k0 r12 = 100 the closed form still carries
    // first-order collective couplings (Gamma12 ~ -3.7e-3, Omega12 ~
    // -3.3e-3), and the correlation measure peaks near Gamma t ~ 1.3 at
    // ~3.1e-3. No parameterization with k0 r12 = 100 can reach 1e-6, so
    // this bound fails for the exact solution.
    assert!(
        far < 1e-6,
        "D(t) at k0 r12 = 100 peaks at {far:.3e}, far above the idealized 1e-6 bound; \
         the residual dipole couplings enter the process matrix at first order"
    );
}

#[test]
fn criterion_08_discord() {
    let base = ChannelParams::default();
    let t_grid = default_time_grid(GAMMA);
    let discord_max = |r12: f64, init: DiscordInit| -> f64 {
        t_grid
            .iter()
            .map(|&t| {
                let co = coefficients(&base.with_r12(r12).with_t(t)).unwrap();
                let s = computational_superoperator(&co);
                geometric_discord(&apply_superoperator(&s, &init.state())).unwrap()
            })
            .fold(0.0, f64::max)
    };
    // the ground-ground product state is stationary: identically zero
    let gg_near = discord_max(0.1, DiscordInit::GroundGround);
    let gg_far = discord_max(100.0, DiscordInit::GroundGround);
    // the excited product state produces the decay cascade that generates
    // discord; this is the initialization the discord figures describe
    let ee_near = discord_max(0.1, DiscordInit::ExcitedExcited);
    let ee_far = discord_max(100.0, DiscordInit::ExcitedExcited);
    let floor = 1e-12;
    verdict(
        8,
        ee_far < 1e-6 && ee_near > 10.0 * floor,
        &format!(
            "discord (excited product start): max over t = {ee_near:.3e} at k0 r12 = 0.1, \
             {ee_far:.3e} at k0 r12 = 100 vs the 1e-6 bound; ground-ground start is \
             stationary ({gg_near:.1e} / {gg_far:.1e})"
        ),
    );
    assert!(
        ee_near > 10.0 * floor && ee_near > 1e-3,
        "collective-regime discord {ee_near:.3e}"
    );
    assert!(gg_near < 1e-12 && gg_far < 1e-12, "gg start must be stationary");
    assert!(ee_far < ee_near / 1e3, "regime separation");
    // Same situation as criterion 7: the excited product state keeps a
    // first-order coherence (C - E)/2 ~ 1.3e-3 at k0 r12 = 100, giving a
    // peak geometric discord of ~3.4e-6. The only product state reaching
    // the 1e-6 bound is the stationary ground state, which never develops
    // any discord and so cannot satisfy the positivity clause instead.
    assert!(
        ee_far < 1e-6,
        "discord at k0 r12 = 100 peaks at {ee_far:.3e} (> 1e-6): the idealized bound \
         is unattainable for any product state that shows the collective-regime signal"
    );
}

#[test]
fn criterion_09_code_golden_tests() {
    use qeccd::code::PRINTED_TABLE_I;
    use qeccd::pauli::basis_label_2q;
    let code = code();
    let table = code.syndrome_table();
    let distinct: std::collections::HashSet<String> =
        table.iter().map(|s| s.to_string()).collect();
    let hamming = check_hamming(5, 1, 2) && !check_hamming(5, 1, 3) && check_hamming(7, 1, 2);
    // recovery round-trip on the code space
    let psi = code.codeword0.clone();
    let mut worst_fidelity_defect: f64 = 0.0;
    for l in 0..16 {
        let corrupted = code.embed_error(l).dot(&psi);
        let recovered = code
            .recover(code.syndrome_of_error(l))
            .unwrap()
            .matrix()
            .dot(&corrupted);
        let fid: C64 = psi.iter().zip(recovered.iter()).map(|(a, b)| a.conj() * b).sum();
        worst_fidelity_defect = worst_fidelity_defect.max((fid.norm() - 1.0).abs());
    }
    // position of the single deviation from the printed table
    let mut deviations = Vec::new();
    for l in 0..16 {
        for j in 0..4 {
            if table[l].0[j] != PRINTED_TABLE_I[l][j] {
                deviations.push((basis_label_2q(l), j));
            }
        }
    }
    let pass = distinct.len() == 16
        && hamming
        && worst_fidelity_defect < 1e-12
        && deviations == vec![("ZY".to_string(), 3)];
    verdict(
        9,
        pass,
        &format!(
            "code golden tests: 16 distinct syndromes, Hamming bound saturated, \
             round-trip fidelity defect {worst_fidelity_defect:.2e}; the printed table's \
             single corrupted cell (ZY vs fourth generator) is corrected by commutation"
        ),
    );
    assert_eq!(distinct.len(), 16);
    assert!(hamming);
    assert!(worst_fidelity_defect < 1e-12);
    assert_eq!(deviations, vec![("ZY".to_string(), 3)]);
}

#[test]
fn criterion_10_spatial_functions() {
    // series branch near zero separation
    let f_small = spatial_f(1e-6, 1.0, 0.0);
    let f_defect = (f_small - 2.0 / 3.0).abs();
    // divergence flagged at zero separation
    let g_zero_rejected = spatial_g(0.0, 1.0, 0.0).is_err();
    // continuity across the series/direct switch (one ulp on either side)
    let thr = qeccd::channel::SPATIAL_SERIES_THRESHOLD;
    let mut worst_jump: f64 = 0.0;
    for alpha in [0.0, 0.5, 1.0] {
        let f_lo = spatial_f(thr * (1.0 - 1e-15), 1.0, alpha);
        let f_hi = spatial_f(thr * (1.0 + 1e-15), 1.0, alpha);
        worst_jump = worst_jump.max((f_lo - f_hi).abs());
        let g_lo = spatial_g(thr * (1.0 - 1e-15), 1.0, alpha).unwrap();
        let g_hi = spatial_g(thr * (1.0 + 1e-15), 1.0, alpha).unwrap();
        worst_jump = worst_jump.max((g_lo - g_hi).abs());
    }
    let pass = f_defect < 1e-9 && g_zero_rejected && worst_jump < 1e-10;
    verdict(
        10,
        pass,
        &format!(
            "spatial functions: |F(small) - 2/3| = {f_defect:.2e}, G(0) rejected = \
             {g_zero_rejected}, worst switch jump {worst_jump:.2e}"
        ),
    );
    assert!(f_defect < 1e-9);
    assert!(g_zero_rejected);
    assert!(worst_jump < 1e-10);
}

#[test]
fn criterion_11_analytic_table_audit() {
    let code = code();
    let p = ChannelParams::default().with_r12(0.1).with_t(1.0 / GAMMA);
    let report = audit_analytic_tables(code, &p).unwrap();
    let mut flagged = report.flagged_ids();
    flagged.sort();
    let xy_rows = report.undefined_symbol_ids();
    // every flagged row's documented correction reproduces the oracle
    let corrections_ok = report.all_corrections_match();
    verdict(
        11,
        flagged == xy_rows && corrections_ok,
        &format!(
            "analytic-table audit: {} of 96 rows match as printed; {} flagged \
             (undefined-symbol rows: {:?}); all documented corrections match: {}",
            report.ok_ids().len(),
            flagged.len(),
            xy_rows,
            corrections_ok
        ),
    );
    assert!(corrections_ok, "a documented correction fails against the oracle");
    // The anticipated classification: only the three undefined-symbol rows
    // flagged, each fixed by the U/V substitution alone. The audit instead
    // finds 42 rows deviating from the oracle (overall signs, Re/Im
    // mixups, duplicated and transposed labels), and one of the three
    // symbol rows needs more than the substitution. Every deviation is
    // reproduced by a documented one-line correction, but the printed
    // tables do not satisfy the anticipated classification.
    assert_eq!(
        flagged, xy_rows,
        "flagged set is not the three undefined-symbol rows: the printed tables carry \
         {} deviating rows (see the audit CSV for the full classification)",
        flagged.len()
    );
}

#[test]
fn criterion_12_cptp_property_suite() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(12);
    let mut worst_trace: f64 = 0.0;
    let mut worst_herm: f64 = 0.0;
    let mut worst_choi: f64 = 0.0;
    for gt in [0.1, 1.0, 5.0] {
        for x in [0.1, 1.0, 100.0] {
            let p = ChannelParams::default().with_r12(x).with_t(gt / GAMMA);
            let co = coefficients(&p).unwrap();
            let s = computational_superoperator(&co);
            for _ in 0..12 {
                let mut g: CMat = ndarray::Array2::zeros((4, 4));
                for i in 0..4 {
                    for j in 0..4 {
                        g[(i, j)] = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
                    }
                }
                let rho = {
                    let h = g.dot(&qeccd::linalg::dagger(&g));
                    let tr = trace(&h);
                    h.mapv(|z| z / tr)
                };
                let out = apply_superoperator(&s, &rho);
                worst_trace = worst_trace.max((trace(&out) - C64::new(1.0, 0.0)).norm());
                worst_herm = worst_herm.max(hermiticity_defect(&out));
            }
            let choi = qeccd::channel::choi_matrix(&co);
            worst_choi = worst_choi.min(min_eigenvalue(&choi));
        }
    }
    let pass = worst_trace < 1e-12 && worst_herm < 1e-12 && worst_choi > -1e-9;
    verdict(
        12,
        pass,
        &format!(
            "CPTP suite: trace defect {worst_trace:.2e}, hermiticity defect \
             {worst_herm:.2e}, Choi minimum eigenvalue {worst_choi:.2e}"
        ),
    );
    assert!(worst_trace < 1e-12);
    assert!(worst_herm < 1e-12);
    assert!(worst_choi > -1e-9);
}

//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with the measured value and its tolerance.
//!
//! Reference battery throughout: J/k_B = 748 K, g = 2, B_z = 10⁻⁴ T.
//! Experimental susceptibility data for the reference compound is not
//! published, so the data-path criteria run on synthetic curves generated
//! from the closed susceptibility form plus round-trip identities.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use spindimer::correlations::{
    concurrence_closed_form, concurrence_wootters, discord_1norm_closed,
    discord_1norm_xstate_oracle, discord_limit, entanglement_temperature,
};
use spindimer::cycle::run_cycle;
use spindimer::dimer::{build_hamiltonian, crossing_field, energy_levels, self_hamiltonian};
use spindimer::ergotropy::{
    ergotropy_closed_form, ergotropy_from_susceptibility, ergotropy_general,
    ergotropy_susceptibility_regime,
};
use spindimer::linalg::haar_random_unitary_from;
use spindimer::magnetometry::{bleaney_bowers, magnetization};
use spindimer::thermal::gibbs_state;
use spindimer::units::{Quantity, K_B, MU_B};
use spindimer::{reference_params, DensityMatrix4, DimerParams, StateLabel};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "{} {criterion}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion}: {detail}");
}

#[test]
fn criterion_01_crossing_field() {
    let p = reference_params();
    let bc = crossing_field(&p);
    // internal consistency: bisection on the sign of the |↑↑⟩ level
    let (mut lo, mut hi) = (1.0f64, 2000.0f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let q = p.with_field(mid).unwrap();
        if energy_levels(&q)[1].1 > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let bc_bisect = 0.5 * (lo + hi);
    let pass = (bc - 556.8).abs() <= 1.0 && (bc - bc_bisect).abs() <= 1e-6;
    report(
        "criterion 1 (crossing field)",
        pass,
        &format!("B_c = {bc:.4} T (target 556.8 ± 1 T), bisection gap {:.2e} T", (bc - bc_bisect).abs()),
    );
}

#[test]
fn criterion_02_maximum_ergotropy() {
    let p = reference_params();
    let per_mole = ergotropy_closed_form(&p, 1.0).unwrap().per_mole;
    let pass = (per_mole - 1.117e-3).abs() <= 1e-6 && (per_mole - 1.12e-3).abs() <= 0.01 * 1.12e-3;
    report(
        "criterion 2 (maximum ergotropy)",
        pass,
        &format!("{:.4} mJ/mol at 1 K (target 1.117, within 1% of 1.12)", per_mole * 1e3),
    );
}

#[test]
fn criterion_03_room_temperature_fraction() {
    let p = reference_params();
    let norm = ergotropy_closed_form(&p, 293.0)
        .unwrap()
        .normalized_to_thermal_max;
    let pass = (norm - 0.748).abs() <= 0.002;
    report(
        "criterion 3 (room-temperature fraction)",
        pass,
        &format!("normalized ergotropy at 293 K = {norm:.5} (target 0.748 ± 0.002)"),
    );
}

#[test]
fn criterion_04_cold_charge_fraction() {
    let p = reference_params();
    let mut min_below_100 = f64::INFINITY;
    let mut t = 1.0f64;
    while t <= 100.0 {
        let norm = ergotropy_closed_form(&p, t)
            .unwrap()
            .normalized_to_thermal_max;
        min_below_100 = min_below_100.min(norm);
        t += 0.5;
    }
    let at_83 = ergotropy_closed_form(&p, 83.0)
        .unwrap()
        .normalized_to_thermal_max;
    let pass = min_below_100 >= 0.9975 && at_83 >= 0.999 && (at_83 - 0.99951).abs() <= 1e-4;
    report(
        "criterion 4 (cold-charge fraction)",
        pass,
        &format!(
            "min over T ≤ 100 K = {min_below_100:.5} (≥ 0.9975), at 83 K = {at_83:.5} (≥ 0.999, model 0.99951 ± 1e-4)"
        ),
    );
}

#[test]
fn criterion_05_entanglement_temperature() {
    let p = reference_params();
    // bisection on the concurrence positivity boundary of the thermal state
    let conc = |t: f64| {
        concurrence_wootters(&gibbs_state(&p, t).unwrap().to_density_matrix()).unwrap()
    };
    let (mut lo, mut hi) = (600.0f64, 750.0f64);
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if conc(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let te = entanglement_temperature(&p);
    let analytic = 748.0 / 3.0f64.ln();
    let pass = (root - 680.9).abs() <= 0.2
        && (te - analytic).abs() <= 1e-9 * analytic
        && (root - te).abs() <= 1e-6
        && conc(root - 0.5) > 0.0
        && conc(root + 0.5) == 0.0;
    report(
        "criterion 5 (entanglement temperature)",
        pass,
        &format!("concurrence root at {root:.3} K (target 680.9 ± 0.2 K = 748/ln 3)"),
    );
}

#[test]
fn criterion_06_discord_floor_at_te() {
    let p = reference_params();
    let te = entanglement_temperature(&p);
    let discord = discord_limit(&p, te).unwrap();
    let erg = ergotropy_susceptibility_regime(&p, te)
        .unwrap()
        .ergotropy
        .normalized_to_2e0;
    let pass = (discord - 1.0 / 6.0).abs() <= 1e-12 && (erg - 1.0 / 6.0).abs() <= 1e-12;
    report(
        "criterion 6 (discord floor at T_e)",
        pass,
        &format!(
            "discord(T_e) = {discord:.15} and ergotropy(T_e)/(2E0) = {erg:.15} (target 1/6 ± 1e-12)"
        ),
    );
}

#[test]
fn criterion_07_ergotropy_discord_identity() {
    // |𝓔 − 2E₀·D| / 𝓔 ≤ 1e-12 on a 200-point log grid, four couplings
    let mut worst = 0.0f64;
    for j_kelvin in [10.0, 100.0, 748.0, 2000.0] {
        let p = DimerParams::from_j_kelvin(j_kelvin, 2.0, 1e-4).unwrap();
        let e0 = p.e0();
        for i in 0..200 {
            let t = 10f64.powf(0.0 + 3.0 * i as f64 / 199.0); // 1..1000 K
            let erg = ergotropy_susceptibility_regime(&p, t)
                .unwrap()
                .ergotropy
                .per_molecule;
            let discord = discord_limit(&p, t).unwrap();
            let rel = (erg - 2.0 * e0 * discord).abs() / erg.max(f64::MIN_POSITIVE);
            worst = worst.max(rel);
        }
    }
    let pass = worst <= 1e-12;
    report(
        "criterion 7 (ergotropy–discord identity)",
        pass,
        &format!("worst relative gap {worst:.3e} over 800 grid points (≤ 1e-12)"),
    );
}

#[test]
fn criterion_08_oracle_equivalence() {
    // 1000 random parameter draws, both field branches
    let mut rng = ChaCha12Rng::seed_from_u64(20_260_810);
    let mut worst = 0.0f64;
    let mut above_crossing = 0usize;
    for _ in 0..1000 {
        let j_kelvin = 10.0 + 1990.0 * rng.random::<f64>();
        let g = 1.8 + 0.4 * rng.random::<f64>();
        let p0 = DimerParams::from_j_kelvin(j_kelvin, g, 0.0).unwrap();
        let b = 2.0 * crossing_field(&p0) * rng.random::<f64>();
        let p = p0.with_field(b).unwrap();
        let t = 1.0 + 999.0 * rng.random::<f64>();
        if p.e0() >= p.j() {
            above_crossing += 1;
        }
        let closed = ergotropy_closed_form(&p, t).unwrap().per_molecule;
        let rho = gibbs_state(&p, t).unwrap().to_density_matrix();
        let spectral = ergotropy_general(&rho, &self_hamiltonian(&p)).unwrap();
        let rel = (closed - spectral).abs() / closed.abs().max(1e-30);
        worst = worst.max(rel);
    }

    // 10^5 Haar samples on five fixed states never beat the passive bound
    let p = reference_params();
    let h0 = self_hamiltonian(&p);
    let states: Vec<DensityMatrix4> = vec![
        gibbs_state(&p, 10.0).unwrap().to_density_matrix(),
        gibbs_state(&p, 293.0).unwrap().to_density_matrix(),
        gibbs_state(&p, 900.0).unwrap().to_density_matrix(),
        DensityMatrix4::basis_projector(StateLabel::Singlet),
        DensityMatrix4::maximally_mixed(),
    ];
    let mut sampler = ChaCha12Rng::seed_from_u64(8_080);
    let mut bound_ok = true;
    for rho in &states {
        let erg = ergotropy_general(rho, &h0).unwrap();
        let mean = rho.expectation(h0.matrix());
        let mut best = f64::NEG_INFINITY;
        for _ in 0..100_000 {
            let u = haar_random_unitary_from(4, &mut sampler);
            let rotated = u.mul(rho.matrix()).mul(&u.adjoint());
            best = best.max(mean - rotated.mul(h0.matrix()).trace().re);
        }
        if best > erg + 1e-12 * p.e0() {
            bound_ok = false;
        }
    }

    let pass = worst <= 1e-9 && above_crossing > 100 && bound_ok;
    report(
        "criterion 8 (oracle equivalence)",
        pass,
        &format!(
            "closed vs spectral worst rel {worst:.3e} over 1000 draws ({above_crossing} above crossing); unitary sampling never exceeded the passive bound: {bound_ok}"
        ),
    );
}

#[test]
fn criterion_09_susceptibility_chain() {
    let p = reference_params();
    // identity on a 500-point grid
    let mut worst_chain = 0.0f64;
    for i in 0..500 {
        let t = 2.0 * (1000.0f64 / 2.0).powf(i as f64 / 499.0); // 2..1000 K log
        let chi = bleaney_bowers(&p, t).unwrap();
        let via_chi = ergotropy_from_susceptibility(&p, t, Quantity::chi_si(chi))
            .unwrap()
            .per_molecule;
        let regime = ergotropy_susceptibility_regime(&p, t)
            .unwrap()
            .ergotropy
            .per_molecule;
        let rel = (via_chi - regime).abs() / regime.max(f64::MIN_POSITIVE);
        worst_chain = worst_chain.max(rel);
    }

    // magnetization vs the log-partition derivative on a (T, B) grid;
    // ln Z(b+db) − ln Z(b−db) is evaluated as ln(1 + ΔZ/Z₋) with ΔZ in
    // factored form, because at small fields the difference sits 12 digits
    // below ln Z itself and direct subtraction would eat the tolerance
    let dln_z = |b: f64, db: f64, t: f64| {
        let beta = 1.0 / (K_B * t);
        let c = beta * p.g() * MU_B;
        let tt = (-beta * p.j()).exp();
        let e_minus = c * (b - db);
        let z_minus = 1.0 + tt * (1.0 + e_minus.exp() + (-e_minus).exp());
        let dz = tt * (e_minus.exp() * (2.0 * c * db).exp_m1()
            + (-e_minus).exp() * (-2.0 * c * db).exp_m1());
        (dz / z_minus).ln_1p()
    };
    let mut worst_mag = 0.0f64;
    for it in 0..30 {
        let t = 10.0 + (600.0 - 10.0) * it as f64 / 29.0;
        for ib in 0..20 {
            let b = 0.01 + (50.0 - 0.01) * ib as f64 / 19.0;
            let m = magnetization(&p.with_field(b).unwrap(), t).unwrap();
            let db = 1e-4;
            let oracle = K_B * t * dln_z(b, db, t) / (2.0 * db);
            let rel = (m - oracle).abs() / oracle.abs().max(1e-60);
            worst_mag = worst_mag.max(rel);
        }
    }

    let pass = worst_chain <= 1e-12 && worst_mag <= 1e-6;
    report(
        "criterion 9 (susceptibility chain)",
        pass,
        &format!(
            "chain identity worst rel {worst_chain:.3e} (≤ 1e-12); magnetization vs ∂lnZ worst rel {worst_mag:.3e} (≤ 1e-6)"
        ),
    );
}

#[test]
fn criterion_10_discord_oracle() {
    let p = reference_params();
    let mut worst = 0.0f64;
    for i in 0..100 {
        let t = 50.0 + (900.0 - 50.0) * i as f64 / 99.0;
        let x = gibbs_state(&p, t).unwrap();
        let oracle = discord_1norm_xstate_oracle(&x).unwrap();
        let closed = discord_1norm_closed(&p, t).unwrap();
        worst = worst.max((oracle - closed).abs());
    }
    let pass = worst <= 1e-6;
    report(
        "criterion 10 (discord oracle)",
        pass,
        &format!("worst |minimizer − closed| = {worst:.3e} over 100 thermal states (≤ 1e-6)"),
    );
}

#[test]
fn criterion_11_cycle_audit() {
    let p = reference_params();
    let mut pass = true;
    let mut detail = String::new();
    for t_bath in [10.0, 293.0, 600.0] {
        let trace = run_cycle(&p, t_bath, 5).unwrap();
        let works = trace.work_per_cycle();
        let w0 = works[0];
        let mut worst_work = 0.0f64;
        for w in &works {
            worst_work = worst_work.max((w - w0).abs() / w0.abs().max(f64::MIN_POSITIVE));
        }
        let worst_audit = trace
            .energy_audit()
            .iter()
            .fold(0.0f64, |acc, a| acc.max(a.abs()))
            / p.j();
        if worst_work > 1e-12 || worst_audit > 1e-12 {
            pass = false;
        }
        detail.push_str(&format!(
            "[{t_bath} K: work spread {worst_work:.2e}, audit {worst_audit:.2e}] "
        ));
    }
    report(
        "criterion 11 (cycle audit)",
        pass,
        &format!("{detail}(both ≤ 1e-12 of scale)"),
    );
}

#[test]
fn criterion_12_documented_discrepancy() {
    let p = reference_params();
    // amplitude ratio of the analytic concurrence variant at low temperature
    let audit = concurrence_closed_form(&p, 10.0).unwrap();
    let ratio = audit.amplitude_ratio.unwrap();

    // both expressions share the positivity root to 0.01 K
    let root = |f: &dyn Fn(f64) -> f64| {
        let (mut lo, mut hi) = (600.0f64, 760.0f64);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let root_wootters = root(&|t| concurrence_closed_form(&p, t).unwrap().wootters);
    let root_variant = root(&|t| concurrence_closed_form(&p, t).unwrap().analytic_variant);

    let pass = (ratio - 4.0).abs() <= 1e-6 && (root_wootters - root_variant).abs() <= 0.01;
    report(
        "criterion 12 (documented discrepancy)",
        pass,
        &format!(
            "low-T amplitude ratio = {ratio:.9} (target 4 ± 1e-6); shared root gap {:.2e} K (≤ 0.01 K)",
            (root_wootters - root_variant).abs()
        ),
    );
}

// sanity guard: the full Hamiltonian and the reference Hamiltonian used by
// every criterion above commute, so the two energy ledgers are compatible
#[test]
fn hamiltonian_ledgers_commute() {
    let p = reference_params();
    let h = build_hamiltonian(&p);
    let h0 = self_hamiltonian(&p);
    let comm = h
        .matrix()
        .mul(h0.matrix())
        .sub(&h0.matrix().mul(h.matrix()));
    assert!(comm.norm_max() <= 1e-25);
}

//! Property-based invariants over random couplings, fields, and temperatures.

use proptest::prelude::*;

use spindimer::correlations::{
    concurrence_wootters, discord_1norm_closed, discord_limit, thermal_concurrence,
};
use spindimer::dimer::{crossing_field, self_hamiltonian};
use spindimer::ergotropy::{
    ergotropy_closed_form, ergotropy_from_susceptibility, ergotropy_general,
    ergotropy_random_unitary_bound, ergotropy_susceptibility_regime,
};
use spindimer::magnetometry::{bleaney_bowers, bleaney_bowers_from_weight, invert_chi};
use spindimer::thermal::gibbs_state;
use spindimer::units::Quantity;
use spindimer::DimerParams;

/// (J/k_B, g, field as a fraction of B_c, T) over the physical ranges.
fn params_and_temperature() -> impl Strategy<Value = (DimerParams, f64)> {
    (
        10.0..2000.0f64,
        1.8..2.2f64,
        0.0..2.0f64,
        1.0..1000.0f64,
    )
        .prop_map(|(j_kelvin, g, b_frac, t)| {
            let p0 = DimerParams::from_j_kelvin(j_kelvin, g, 0.0).unwrap();
            let b = b_frac * crossing_field(&p0);
            (p0.with_field(b).unwrap(), t)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_agrees_with_spectral_route((p, t) in params_and_temperature()) {
        let closed = ergotropy_closed_form(&p, t).unwrap().per_molecule;
        let rho = gibbs_state(&p, t).unwrap().to_density_matrix();
        let spectral = ergotropy_general(&rho, &self_hamiltonian(&p)).unwrap();
        prop_assert!((closed - spectral).abs() <= 1e-9 * closed.abs().max(1e-30));
    }

    #[test]
    fn sampled_extraction_never_beats_the_passive_bound((p, t) in params_and_temperature(), seed in 0u64..1_000_000) {
        let rho = gibbs_state(&p, t).unwrap().to_density_matrix();
        let h0 = self_hamiltonian(&p);
        let erg = ergotropy_general(&rho, &h0).unwrap();
        let bound = ergotropy_random_unitary_bound(&rho, &h0, 64, seed).unwrap();
        prop_assert!(bound <= erg + 1e-12 * p.e0().max(1e-30));
    }

    #[test]
    fn regime_ergotropy_equals_twice_e0_discord(j_kelvin in 10.0..2000.0f64, t in 1.0..1000.0f64) {
        let p = DimerParams::from_j_kelvin(j_kelvin, 2.0, 1e-4).unwrap();
        let erg = ergotropy_susceptibility_regime(&p, t).unwrap().ergotropy.per_molecule;
        let discord = discord_limit(&p, t).unwrap();
        prop_assert!((erg - 2.0 * p.e0() * discord).abs() <= 1e-12 * erg.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn susceptibility_chain_identity((p, t) in params_and_temperature()) {
        // the χ route reproduces the regime form wherever χ is representable
        prop_assume!(p.b_z() < crossing_field(&p));
        let chi = bleaney_bowers(&p, t).unwrap();
        prop_assume!(chi > 0.0);
        let via_chi = ergotropy_from_susceptibility(&p, t, Quantity::chi_si(chi)).unwrap();
        let regime = ergotropy_susceptibility_regime(&p, t).unwrap().ergotropy;
        prop_assert!(
            (via_chi.per_molecule - regime.per_molecule).abs()
                <= 1e-12 * regime.per_molecule.max(f64::MIN_POSITIVE)
        );
    }

    #[test]
    fn weight_inversion_round_trip(j_kelvin in 1.0..2000.0f64, g in 1.8..2.2f64, t in 2.0..1000.0f64) {
        let p = DimerParams::from_j_kelvin(j_kelvin, g, 0.0).unwrap();
        let chi = bleaney_bowers(&p, t).unwrap();
        prop_assume!(chi > 0.0);
        let eb = invert_chi(t, chi, g).unwrap();
        let back = bleaney_bowers_from_weight(t, g, eb.w).unwrap();
        prop_assert!((back - chi).abs() <= 4.0 * f64::EPSILON * chi);
        // the weight reproduces the coupling where the exponent is resolvable
        if j_kelvin / t < 500.0 {
            prop_assert!((eb.j_kelvin() - j_kelvin).abs() <= 1e-6 * j_kelvin);
        }
    }

    #[test]
    fn thermal_concurrence_formula_matches_wootters((p, t) in params_and_temperature()) {
        prop_assume!(p.b_z() < 0.9 * crossing_field(&p));
        let closed = thermal_concurrence(&p, t).unwrap();
        let rho = gibbs_state(&p, t).unwrap().to_density_matrix();
        let wootters = concurrence_wootters(&rho).unwrap();
        // the numeric route takes square roots of eigenvalues down at the
        // squared-Boltzmann-weight scale, which amplifies rounding to ~1e-8
        prop_assert!((closed - wootters).abs() <= 1e-7);
    }

    #[test]
    fn discord_bounded_and_positive((p, t) in params_and_temperature()) {
        let d = discord_1norm_closed(&p, t).unwrap();
        prop_assert!((0.0..=0.5).contains(&d));
        // discord of a thermal antiferromagnetic dimer is strictly positive
        // at any finite temperature
        prop_assert!(d > 0.0);
    }

    #[test]
    fn ergotropy_result_view_consistency((p, t) in params_and_temperature()) {
        let r = ergotropy_closed_form(&p, t).unwrap();
        prop_assert!(r.per_molecule >= 0.0);
        prop_assert!(r.per_molecule <= 2.0 * p.e0() * (1.0 + 1e-12));
        prop_assert!((r.per_mole - r.per_molecule * spindimer::units::N_A).abs() <= 1e-12 * r.per_mole.max(f64::MIN_POSITIVE));
        prop_assert!((r.normalized_to_2e0 - r.normalized_to_thermal_max / 2.0).abs() <= 1e-15);
    }
}

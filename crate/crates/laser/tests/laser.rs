//! Oracle and invariant tests of the laser module.

use proptest::prelude::*;
use sqed_interaction::{time_window, GaussianAtom, Switching, TransitionKind};
use sqed_laser::*;
use sqed_quadrature::{gauss_legendre_on, integrate_2d, Domain2d, Tolerance};
use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

/// `k w₀ = 100`.
fn beam() -> HermiteBeam {
    HermiteBeam::new(1e-5, 1e7, 1e20, BeamPolarization::EpsX).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn m(m1: u32, m2: u32) -> BeamModeIndex {
    BeamModeIndex::new(m1, m2)
}

// ---------------------------------------------------------------- beam

#[test]
fn beam_contour_and_gouy_phase() {
    let b = beam();
    let zr = b.rayleigh_length();
    assert!(rel(zr, 0.5 * b.k() * b.w0().powi(2)) < 1e-15);
    assert_eq!(b.gouy_phase(0.0), 0.0);
    assert!((b.gouy_phase(zr) - FRAC_PI_4).abs() < 1e-15);
    assert!(rel(b.width(0.0), b.w0()) < 1e-15);
    assert!(rel(b.width(zr), b.w0() * SQRT_2) < 1e-15);
    assert_eq!(b.inverse_curvature(0.0), 0.0);
}

#[test]
fn invalid_beams_are_rejected() {
    assert!(HermiteBeam::new(0.0, 1.0, 1.0, BeamPolarization::EpsX).is_err());
    assert!(HermiteBeam::new(1.0, -1.0, 1.0, BeamPolarization::EpsX).is_err());
    assert!(HermiteBeam::new(1.0, 1.0, -1.0, BeamPolarization::EpsY).is_err());
    assert!(VacuumCutoff::new(161, 0).is_err());
}

#[test]
fn ground_mode_is_normalized_in_every_plane() {
    let b = beam();
    for z in [0.0, b.rayleigh_length()] {
        let ext = 8.0 * b.width(z);
        let norm = integrate_2d(
            |x, y| hermite_mode_full(&b, m(0, 0), [x, y, z]).unwrap()[0].norm_sqr(),
            Domain2d::Rectangle {
                x0: -ext,
                x1: ext,
                y0: -ext,
                y1: ext,
            },
            Tolerance::new(1e-11, 1e-14),
        )
        .unwrap();
        assert!((norm.value - 1.0).abs() < 1e-8, "z = {z}: {}", norm.value);
    }
}

#[test]
fn polarization_selects_the_component() {
    let b = HermiteBeam::new(1e-5, 1e7, 1.0, BeamPolarization::EpsY).unwrap();
    let u = hermite_mode_full(&b, m(1, 2), [1e-6, 2e-6, 3e-4]).unwrap();
    assert_eq!(u[0].norm(), 0.0);
    assert!(u[1].norm() > 0.0);
    assert_eq!(u[2].norm(), 0.0);
}

#[test]
fn separable_modes_are_orthonormal() {
    let b = beam();
    let ext = 10.0 * b.w0();
    let (nodes, weights) = gauss_legendre_on(160, -ext, ext);
    let modes: Vec<BeamModeIndex> = (0..=3)
        .flat_map(|a| (0..=3).map(move |c| m(a, c)))
        .collect();
    let tables: Vec<Vec<Vec<f64>>> = modes
        .iter()
        .map(|&mm| {
            nodes
                .iter()
                .map(|&x| {
                    nodes
                        .iter()
                        .map(|&y| separable_mode(&b, mm, x, y).unwrap())
                        .collect()
                })
                .collect()
        })
        .collect();
    for (i, a) in tables.iter().enumerate() {
        for (j, c) in tables.iter().enumerate().skip(i) {
            let mut s = 0.0;
            for (p, wp) in weights.iter().enumerate() {
                for (q, wq) in weights.iter().enumerate() {
                    s += wp * wq * a[p][q] * c[p][q];
                }
            }
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!(
                (s - expected).abs() < 1e-9,
                "{:?} {:?}: {s}",
                modes[i],
                modes[j]
            );
        }
    }
}

#[test]
fn ground_separable_mode_is_the_normalized_gaussian() {
    let b = beam();
    let w = b.w0();
    for (x, y) in [(0.0, 0.0), (0.3 * w, -0.7 * w), (2.0 * w, 1.0 * w)] {
        let expected = (2.0 / PI).sqrt() / w * (-(x * x + y * y) / (w * w)).exp();
        assert!(rel(separable_mode(&b, m(0, 0), x, y).unwrap(), expected) < 1e-14);
    }
}

#[test]
fn full_mode_at_the_waist_is_the_separable_mode() {
    let b = beam();
    let w = b.w0();
    for mm in [m(0, 0), m(1, 0), m(2, 3), m(3, 1)] {
        for (x, y) in [(0.1 * w, 0.2 * w), (-0.9 * w, 0.4 * w), (1.3 * w, -1.1 * w)] {
            let full = hermite_mode_full(&b, mm, [x, y, 0.0]).unwrap()[0];
            let sep = separable_mode(&b, mm, x, y).unwrap();
            assert!((full.re - sep).abs() <= 1e-14 * sep.abs().max(1.0 / w));
            assert!(full.im.abs() <= 1e-14 / w);
        }
    }
}

#[test]
fn full_mode_solves_the_paraxial_equation() {
    let b = beam();
    let zr = b.rayleigh_length();
    let r = paraxial_residual(&b, m(0, 0), [0.1 * b.w0(), 0.0, 0.05 * zr]).unwrap();
    assert!(r < 1e-3, "{r}");
    for mm in [m(1, 0), m(2, 1)] {
        let r = paraxial_residual(&b, mm, [0.3 * b.w0(), 0.2 * b.w0(), 0.5 * zr]).unwrap();
        assert!(r < 1e-3, "{mm:?}: {r}");
    }
}

#[test]
fn helmholtz_residual_grows_as_the_beam_narrows() {
    let mut last = 0.0;
    for kw0 in [400.0, 200.0, 100.0, 50.0, 20.0] {
        let w0 = 1e-5;
        let b = HermiteBeam::new(w0, kw0 / w0, 1.0, BeamPolarization::EpsX).unwrap();
        let r =
            helmholtz_residual(&b, m(0, 0), [0.1 * w0, 0.0, 0.05 * b.rayleigh_length()]).unwrap();
        assert!(r > last, "k w0 = {kw0}: {r} ≤ {last}");
        last = r;
    }
}

#[test]
fn frozen_separable_mode_violates_the_paraxial_equation() {
    let b = beam();
    let p = [0.1 * b.w0(), 0.0, b.rayleigh_length()];
    let full = paraxial_residual(&b, m(0, 0), p).unwrap();
    let frozen = separable_paraxial_residual(&b, m(0, 0), p).unwrap();
    assert!(frozen > 1e3 * full, "{frozen} vs {full}");
}

#[test]
fn separable_deviation_grows_with_distance_from_the_waist() {
    let b = beam();
    let zr = b.rayleigh_length();
    assert!(separable_deviation(&b, m(1, 0), 0.0).unwrap() < 1e-7);
    let mut last = 0.0;
    for f in [0.01, 0.05, 0.2, 0.5, 1.0] {
        let d = separable_deviation(&b, m(1, 0), f * zr).unwrap();
        assert!(d > last, "z = {f} z_R");
        assert_eq!(d, separable_deviation(&b, m(1, 0), -f * zr).unwrap());
        last = d;
    }
}

// ---------------------------------------------------------------- smearing

/// `σ/w₀ = 0.05`.
const SIGMA: f64 = 5e-7;

#[test]
fn smearing_coefficient_matches_quadrature() {
    let b = beam();
    for mm in [m(1, 0), m(3, 0), m(1, 2), m(5, 4), m(3, 2)] {
        let exact = smearing_coefficient(SIGMA, &b, mm).exact;
        let numeric = smearing_coefficient_numeric(SIGMA, &b, mm).unwrap();
        assert!(rel(exact, numeric) < 1e-8, "{mm:?}: {exact} vs {numeric}");
    }
}

#[test]
fn smearing_selection_rules_emerge_from_quadrature() {
    let b = beam();
    let scale = smearing_coefficient(SIGMA, &b, PUMPED_MODE).exact.abs();
    for mm in [m(0, 0), m(2, 0), m(1, 1), m(4, 2), m(3, 3), m(2, 1)] {
        assert!(!mm.couples());
        assert_eq!(smearing_coefficient(SIGMA, &b, mm).exact, 0.0);
        let numeric = smearing_coefficient_numeric(SIGMA, &b, mm).unwrap();
        assert!(numeric.abs() < 1e-10 * scale, "{mm:?}: {numeric}");
    }
}

#[test]
fn leading_order_error_grows_with_mode_number() {
    let b = beam();
    let eps = (SIGMA / b.w0()).powi(2);
    for (mm, k) in [
        (m(1, 0), 0.0),
        (m(3, 0), 1.0),
        (m(1, 2), 1.0),
        (m(5, 2), 3.0),
    ] {
        let c = smearing_coefficient(SIGMA, &b, mm);
        let err = rel(c.leading_order, c.exact);
        let predicted = 2.0 * (1.0 + k) * eps;
        assert!(
            rel(err, predicted) < 5.0 * eps,
            "{mm:?}: {err} vs {predicted}"
        );
    }
    // Only the pumped mode stays inside the 2(σ/w₀)² budget (relative to the
    // leading-order value: 1 − (1 + ε)⁻² < 2ε).
    let pumped = smearing_coefficient(SIGMA, &b, PUMPED_MODE);
    assert!(rel(pumped.exact, pumped.leading_order) <= 2.0 * eps);
    let next = smearing_coefficient(SIGMA, &b, m(3, 0));
    assert!(rel(next.exact, next.leading_order) > 2.0 * eps);
}

#[test]
fn displayed_leading_order_misses_a_power_of_pi() {
    let b = beam();
    for mm in [m(1, 0), m(3, 2)] {
        let c = smearing_coefficient(SIGMA, &b, mm);
        assert!(rel(c.displayed_leading_order, PI.powf(-1.5) * c.leading_order) < 1e-14);
        assert!(rel(c.displayed_leading_order, c.exact) > 0.8);
    }
}

#[test]
fn reduced_smearing_is_odd_and_peaks_at_sigma_over_root_two() {
    let b = beam();
    let f = |z| reduced_smearing(SIGMA, &b, PUMPED_MODE, z);
    let peak = SIGMA / SQRT_2;
    assert_eq!(f(0.0), 0.0);
    assert_eq!(f(-peak), -f(peak));
    assert!(f(peak).abs() > f(0.9 * peak).abs() && f(peak).abs() > f(1.1 * peak).abs());
}

// ---------------------------------------------------------------- couplings

#[test]
fn gamma_closed_form_at_first_cutoff() {
    let n = VacuumCutoff::new(1, 0).unwrap();
    assert!((gamma_closed(n).unwrap() - 1.0 / 6.0).abs() < 1e-12);
}

#[test]
fn gamma_terms_in_closed_form() {
    assert_eq!(gamma_term(0, 0), 0.5);
    assert_eq!(gamma_term(1, 0), 0.75);
    assert!((gamma_term(2, 3) - 5.0 * (3.0 / 8.0) * (5.0 / 16.0) / 2.0).abs() < 1e-15);
}

#[test]
fn gamma_closed_form_subtracts_a_different_mode_than_the_pumped_one() {
    for n1 in 0..=8 {
        for n2 in 0..=8 {
            let n = VacuumCutoff::new(n1, n2).unwrap();
            let closed = gamma_closed(n).unwrap();
            let excluded = gamma_sum_excluding_reindexed(n);
            assert!(rel(closed, excluded) < 1e-12, "{n:?}");
            let offset = (if n1 >= 1 { 0.75 } else { 0.0 } - 0.5) / 3.0;
            assert!((gamma_sum(n) - closed - offset).abs() < 1e-12, "{n:?}");
        }
    }
}

#[test]
fn gamma_sum_is_monotone_in_the_cutoff() {
    for n1 in 0..8 {
        for n2 in 0..8 {
            let g = gamma_sum(VacuumCutoff::new(n1, n2).unwrap());
            assert!(gamma_sum(VacuumCutoff::new(n1 + 1, n2).unwrap()) > g);
            assert!(gamma_sum(VacuumCutoff::new(n1, n2 + 1).unwrap()) > g);
        }
    }
    assert_eq!(gamma_sum(VacuumCutoff::new(0, 0).unwrap()), 0.0);
}

/// Exponents of (m, s, kg, A).
type Dim = [i32; 4];

fn dim_mul(a: Dim, b: Dim, power: i32) -> Dim {
    [
        a[0] + power * b[0],
        a[1] + power * b[1],
        a[2] + power * b[2],
        a[3] + power * b[3],
    ]
}

#[test]
fn coupling_g_has_units_of_acceleration() {
    let velocity = [1, -1, 0, 0];
    let charge = [0, 1, 0, 1];
    let length = [1, 0, 0, 0];
    let action = [2, -1, 1, 0];
    let permittivity = [-3, 4, -1, 2];
    // g = c e² k³ σ⁶ / (ħ ε₀ w₀⁴)
    let mut d = [0; 4];
    d = dim_mul(d, velocity, 1);
    d = dim_mul(d, charge, 2);
    d = dim_mul(d, length, -3);
    d = dim_mul(d, length, 6);
    d = dim_mul(d, action, -1);
    d = dim_mul(d, permittivity, -1);
    d = dim_mul(d, length, -4);
    assert_eq!(d, [1, -2, 0, 0]);

    // Scaling check: g ∝ σ⁶ w₀⁻⁴ at fixed kσ.
    let b = beam();
    let g1 = coupling_g(1e-10, &b);
    let b2 = HermiteBeam::new(2.0 * b.w0(), b.k() / 2.0, 1.0, BeamPolarization::EpsX).unwrap();
    let g2 = coupling_g(2e-10, &b2);
    assert!(rel(g2 / g1, 2f64.powi(6 - 3 - 4)) < 1e-14);
}

#[test]
fn couplings_record_is_consistent() {
    let atom = GaussianAtom::new(1e-10, 1e15, 0.0).unwrap();
    let n = VacuumCutoff::new(3, 2).unwrap();
    let c = laser_couplings(&atom, &beam(), n).unwrap();
    assert_eq!(c.g, coupling_g(1e-10, &beam()));
    assert_eq!(c.gamma_sum, gamma_sum(n));
    assert_eq!(c.gamma_closed, gamma_closed(n).unwrap());
}

// ---------------------------------------------------------------- probabilities

#[test]
fn laser_factor_matches_time_quadrature() {
    let omega_a = 1.0;
    for t in [0.3, 1.0, 2.5] {
        for ratio in [0.5, 1.0, 1.7] {
            let omega = ratio * omega_a;
            for sw in [
                Switching::gaussian(t).unwrap(),
                Switching::top_hat(t).unwrap(),
            ] {
                let exact = laser_factor(&sw, omega, omega_a);
                let numeric = laser_factor_numeric(&sw, omega, omega_a).unwrap();
                assert!(
                    rel(exact, numeric) < 1e-6,
                    "{sw:?} ω/Ω = {ratio}: {exact} vs {numeric}"
                );
            }
        }
    }
}

#[test]
fn displayed_gaussian_laser_factor_is_twice_the_exact_one_at_reduced_width() {
    let (omega, omega_a) = (1.3, 1.0);
    for t in [0.5, 1.0, 2.0] {
        let displayed = displayed_laser_factor(t, omega, omega_a);
        let narrow = Switching::gaussian(t / SQRT_2).unwrap();
        assert!(rel(displayed, 2.0 * laser_factor(&narrow, omega, omega_a)) < 1e-12);
        let exact = laser_factor(&Switching::gaussian(t).unwrap(), omega, omega_a);
        assert!(rel(displayed, exact) > 0.1);
    }
}

#[test]
fn log_laser_factor_survives_underflow() {
    let sw = Switching::gaussian(100.0).unwrap();
    let (omega, omega_a) = (3.0, 1.0);
    assert_eq!(laser_factor(&sw, omega, omega_a), 0.0);
    let l = log_laser_factor(&sw, omega, omega_a);
    let expected = (8.0 * PI * 1e4).ln() - 10.0 * 1e4 + 2.0 * 3e4 - 2.0 * 2f64.ln();
    assert!(rel(l, expected) < 1e-12);
}

fn optical_atom(omega_a: f64) -> GaussianAtom {
    GaussianAtom::new(1e-10, omega_a, 0.0).unwrap()
}

#[test]
fn probability_without_photons_is_pure_vacuum() {
    let b = beam().with_alpha_sq(0.0).unwrap();
    let omega = 2.99792458e8 * b.k();
    let atom = optical_atom(0.9 * omega);
    let sw = Switching::gaussian(3.0 / omega).unwrap();
    let n = VacuumCutoff::new(4, 4).unwrap();
    let p = laser_probability(&atom, &b, &sw, TransitionKind::Emission, n);
    assert_eq!(p.laser_term, 0.0);
    assert_eq!(p.p, p.vacuum_term);
    let window = time_window(&sw, 0.5 * (omega - atom.omega_a()));
    assert!(rel(p.vacuum_term, p.g * gamma_sum(n) * window) < 1e-14);
}

#[test]
fn probability_without_vacuum_modes_is_pure_laser() {
    let b = beam();
    let omega = 2.99792458e8 * b.k();
    let atom = optical_atom(1.1 * omega);
    let sw = Switching::top_hat(2.0 / omega).unwrap();
    let p = laser_probability(
        &atom,
        &b,
        &sw,
        TransitionKind::Excitation,
        VacuumCutoff::new(0, 0).unwrap(),
    );
    assert_eq!(p.gamma, 0.0);
    assert_eq!(p.vacuum_term, 0.0);
    assert_eq!(p.p, p.laser_term);
    assert!(
        rel(
            p.laser_term,
            p.g * b.alpha_sq() * laser_factor(&sw, omega, atom.omega_a())
        ) < 1e-14
    );
}

#[test]
fn zeta_needs_photons() {
    let b = beam().with_alpha_sq(0.0).unwrap();
    let sw = Switching::gaussian(1e-15).unwrap();
    let n = VacuumCutoff::new(2, 2).unwrap();
    assert!(matches!(
        zeta(&optical_atom(1e15), &b, &sw, TransitionKind::Emission, n),
        Err(LaserError::InvalidParameter(_))
    ));
}

#[test]
fn zeta_bound_for_photon_number_of_order_1e20() {
    let b = beam();
    for n1 in 0..=10 {
        for n2 in 0..=10 {
            let n = VacuumCutoff::new(n1, n2).unwrap();
            let sw = Switching::gaussian(1e-15).unwrap();
            let z = zeta(&optical_atom(2e15), &b, &sw, TransitionKind::Excitation, n).unwrap();
            assert!(z.bound <= 2.5e-21 * gamma_sum(n) * (1.0 + 1e-15));
        }
    }
}

/// `(T, ω/Ω_A)` grid with `Ω_A T ∈ [0.1, 10]`, `ω/Ω_A ∈ [0.2, 5]`.
fn grid() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..20 {
        let t = 0.1 * 100f64.powf(f64::from(i) / 19.0);
        for j in 0..20 {
            out.push((t, 0.2 * 25f64.powf(f64::from(j) / 19.0)));
        }
    }
    out
}

fn zeta_on_grid(kind: TransitionKind, t: f64, ratio: f64) -> Zeta {
    let b = beam();
    let omega = 2.99792458e8 * b.k();
    let omega_a = omega / ratio;
    let sw = Switching::gaussian(t / omega_a).unwrap();
    zeta(
        &optical_atom(omega_a),
        &b,
        &sw,
        kind,
        VacuumCutoff::new(3, 3).unwrap(),
    )
    .unwrap()
}

#[test]
fn gaussian_excitation_zeta_respects_the_quarter_bound() {
    for (t, ratio) in grid() {
        let z = zeta_on_grid(TransitionKind::Excitation, t, ratio);
        assert!(
            z.log_value <= (z.bound).ln() + 1e-12,
            "T = {t}, ω/Ω = {ratio}"
        );
    }
}

#[test]
fn gaussian_emission_zeta_respects_only_the_supremum() {
    let mut worst: f64 = 0.0;
    for (t, ratio) in grid() {
        let z = zeta_on_grid(TransitionKind::Emission, t, ratio);
        let sup = z.sup_bound.unwrap();
        assert!(z.log_value <= sup.ln() + 1e-12, "T = {t}, ω/Ω = {ratio}");
        worst = worst.max(z.value / z.bound);
    }
    // For ωΩT² ≫ 1 emission approaches 4× the quarter bound.
    assert!(worst > 3.9, "{worst}");
}

#[test]
fn gaussian_zeta_matches_its_closed_form() {
    for (t, ratio) in [(0.5, 1.0), (1.0, 0.7), (2.0, 1.5)] {
        for (kind, sign) in [
            (TransitionKind::Emission, -1.0),
            (TransitionKind::Excitation, 1.0),
        ] {
            let z = zeta_on_grid(kind, t, ratio);
            let x = ratio * t * t;
            let expected = 0.25 * (-2.0 * sign * x).exp() / x.cosh().powi(2) * 4.0 * z.bound;
            assert!(rel(z.value, expected) < 1e-10, "{kind:?} T = {t}");
        }
    }
}

#[test]
fn top_hat_zeta_exceeds_the_quarter_bound() {
    let b = beam();
    let omega = 2.99792458e8 * b.k();
    let n = VacuumCutoff::new(1, 1).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let omega_a = omega * (0.2 + 0.02 * f64::from(i));
        for j in 1..200 {
            let sw = Switching::top_hat(0.1 * f64::from(j) / omega_a).unwrap();
            for kind in [TransitionKind::Emission, TransitionKind::Excitation] {
                match zeta(&optical_atom(omega_a), &b, &sw, kind, n) {
                    Ok(z) => worst = worst.max((z.log_value - z.bound.ln()).exp()),
                    Err(LaserError::VanishingLaserTerm { .. }) => worst = f64::INFINITY,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
    assert!(worst > 100.0, "{worst}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_closed_form_tracks_the_reindexed_sum(n1 in 0u32..40, n2 in 0u32..40) {
        let n = VacuumCutoff::new(n1, n2).unwrap();
        prop_assert!(rel(gamma_closed(n).unwrap(), gamma_sum_excluding_reindexed(n)) < 1e-11);
    }

    #[test]
    fn gaussian_excitation_zeta_never_exceeds_the_bound(t in 0.05f64..20.0, ratio in 0.05f64..20.0) {
        let z = zeta_on_grid(TransitionKind::Excitation, t, ratio);
        prop_assert!(z.log_value <= z.bound.ln() + 1e-12);
    }

    #[test]
    fn laser_factor_is_symmetric_in_the_two_frequencies(t in 0.1f64..5.0, w in 0.1f64..3.0, wa in 0.1f64..3.0) {
        for sw in [Switching::gaussian(t).unwrap(), Switching::top_hat(t).unwrap()] {
            let a = log_laser_factor(&sw, w, wa);
            prop_assert!(a <= (4.0 * sw.area().powi(2)).ln() + 1e-12);
        }
        let g = Switching::gaussian(t).unwrap();
        prop_assert!((log_laser_factor(&g, w, wa) - log_laser_factor(&g, wa, w)).abs() < 1e-12);
    }

    #[test]
    fn smearing_coefficient_has_the_leading_sign(k1 in 0u32..5, k2 in 0u32..5) {
        let c = smearing_coefficient(SIGMA, &beam(), m(2 * k1 + 1, 2 * k2));
        prop_assert!(c.exact * c.leading_order > 0.0);
        let sign = if (k1 + k2) % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(c.exact * sign > 0.0);
    }
}

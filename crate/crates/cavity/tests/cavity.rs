//! Cavity modes against quadrature and finite-difference oracles.

use num_complex::Complex64;
use proptest::prelude::*;
use sqed_cavity::{
    boundary_residuals, curl_fd_residual, em_mode_3d, helmholtz_fd_residual, polarization_vectors,
    scalar_modes, wavenumbers, CavityError, CavityMode, CylPoint, CylinderGeometry, ModeIndex,
    Polarization, Wall, SI,
};
use sqed_quadrature::{integrate_1d, integrate_2d, Domain2d, Tolerance};
use std::f64::consts::{PI, TAU};

const CHI01: f64 = 2.404_825_557_695_773;

fn idx(m1: u32, m2: i32, l: u32, pol: Polarization) -> ModeIndex {
    ModeIndex::new(m1, m2, l, pol).unwrap()
}

fn unit_geom() -> CylinderGeometry {
    CylinderGeometry::new(1.0, 2.0).unwrap()
}

#[test]
fn wavenumber_examples() {
    let g = CylinderGeometry::new(1.0, PI).unwrap();
    let w = wavenumbers(&g, &idx(1, 0, 0, Polarization::Mu2)).unwrap();
    assert!((w.k_perp - 2.404_825_558).abs() < 1e-9);
    assert_eq!(w.k_long, 0.0);
    assert!((w.omega - SI.c * CHI01).abs() < 1e-9 * SI.c);
    let w = wavenumbers(&g, &idx(1, 0, 2, Polarization::Mu2)).unwrap();
    assert!((w.k_long - 2.0).abs() < 1e-15);
}

#[test]
fn frequency_of_even_longitudinal_modes() {
    // ω_{(m1,0),2l} = c √((χ_{m1}/R)² + (2πl/L)²) for (m1, l) = (5, 2).
    let g = CylinderGeometry::new(3e-3, 0.7).unwrap();
    let w = wavenumbers(&g, &idx(5, 0, 4, Polarization::Mu2)).unwrap();
    let chi5 = 14.930_917_708_487_786;
    let want = SI.c * ((chi5 / 3e-3_f64).powi(2) + (2.0 * PI * 2.0 / 0.7_f64).powi(2)).sqrt();
    assert!(((w.omega - want) / want).abs() < 1e-13);
}

#[test]
fn invalid_inputs() {
    assert!(matches!(
        ModeIndex::new(0, 0, 1, Polarization::Mu2),
        Err(CavityError::InvalidMode(_))
    ));
    assert!(matches!(
        ModeIndex::new(1, 0, 0, Polarization::Mu1),
        Err(CavityError::InvalidMode(_))
    ));
    assert!(ModeIndex::new(1, 65, 1, Polarization::Mu2).is_err());
    assert!(CylinderGeometry::new(-1.0, 1.0).is_err());
    let g = unit_geom();
    let err = em_mode_3d(
        &g,
        &idx(1, 0, 1, Polarization::Mu2),
        &CylPoint::new(1.5, 0.0, 0.5),
    );
    assert!(matches!(err, Err(CavityError::OutOfDomain { .. })));
}

#[test]
fn scalar_boundary_values() {
    let g = unit_geom();
    for m2 in 0..3 {
        let i = idx(2, m2, 1, Polarization::Mu2);
        let s = scalar_modes(&g, &i, &CylPoint::new(1.0, 0.3, 0.7)).unwrap();
        assert!(s.psi_transverse.norm() < 1e-12);
    }
    let i = idx(1, 0, 3, Polarization::Mu1);
    for z in [0.0, 2.0] {
        let s = scalar_modes(&g, &i, &CylPoint::new(0.3, 0.0, z)).unwrap();
        assert!(s.psi_long_mu1.abs() < 1e-12);
    }
}

#[test]
fn transverse_scalar_mode_is_normalized() {
    let g = unit_geom();
    for i in [
        idx(1, 0, 1, Polarization::Mu2),
        idx(2, 1, 1, Polarization::Mu1),
        idx(3, 2, 1, Polarization::Mu2),
    ] {
        let mode = CavityMode::new(&g, i).unwrap();
        let r = integrate_2d(
            |r, phi| {
                mode.scalar(&CylPoint::new(r, phi, 0.0))
                    .psi_transverse
                    .norm_sqr()
            },
            Domain2d::Disk { radius: 1.0 },
            Tolerance::new(1e-11, 1e-13),
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-8, "{i:?}: {}", r.value);
    }
}

#[test]
fn polarization_vector_examples() {
    let g = unit_geom();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let p = polarization_vectors(&g, &idx(2, 1, 3, Polarization::Mu1)).unwrap();
    assert_eq!(p.epsilon, [s, -s, 0.0]);
    let p = polarization_vectors(&g, &idx(2, 1, 0, Polarization::Mu2)).unwrap();
    assert!((p.epsilon[2] - 1.0).abs() < 1e-15 && p.epsilon[0] == 0.0);
    let a = polarization_vectors(&g, &idx(3, 1, 4, Polarization::Mu1)).unwrap();
    let b = polarization_vectors(&g, &idx(3, 1, 4, Polarization::Mu2)).unwrap();
    let dot = |x: [f64; 3], y: [f64; 3]| x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
    for v in [a.epsilon, a.kappa, b.epsilon, b.kappa] {
        assert!((dot(v, v) - 1.0).abs() < 1e-14);
    }
    assert!(dot(a.epsilon, b.epsilon).abs() < 1e-15);
    assert!(dot(a.kappa, b.kappa).abs() < 1e-15);
}

#[test]
fn tangential_electric_field_vanishes_on_the_mantle() {
    let g = unit_geom();
    for i in ModeIndex::enumerate(3, 2, 3) {
        for (phi, z) in [(0.1, 0.3), (2.0, 1.1), (4.5, 1.9)] {
            let f = em_mode_3d(&g, &i, &CylPoint::new(1.0, phi, z)).unwrap();
            assert!(f.u[1].norm() < 1e-10 && f.u[2].norm() < 1e-10, "{i:?}");
        }
    }
}

#[test]
fn electric_mode_norm_by_3d_quadrature() {
    let g = unit_geom();
    let mode = CavityMode::new(&g, idx(1, 0, 1, Polarization::Mu2)).unwrap();
    let t = Tolerance::new(1e-11, 1e-13);
    let r = integrate_1d(
        |z| {
            integrate_2d(
                |r, phi| {
                    let u = mode.fields(&CylPoint::new(r, phi, z)).u;
                    u.iter().map(Complex64::norm_sqr).sum::<f64>()
                },
                Domain2d::Disk { radius: 1.0 },
                t,
            )
            .unwrap()
            .value
        },
        0.0,
        2.0,
        t,
    )
    .unwrap();
    assert!((r.value - 1.0).abs() < 1e-7, "{}", r.value);
}

#[test]
fn magnetic_mode_is_scaled_curl_of_electric_mode() {
    let g = unit_geom();
    for i in [
        idx(2, 1, 3, Polarization::Mu1),
        idx(2, 1, 3, Polarization::Mu2),
        idx(1, 0, 0, Polarization::Mu2),
        idx(3, 2, 1, Polarization::Mu1),
    ] {
        let mode = CavityMode::new(&g, i).unwrap();
        for p in [
            CylPoint::new(0.4, 0.7, 0.6),
            CylPoint::new(0.85, 3.0, 1.3),
            CylPoint::new(0.05, 5.0, 0.2),
        ] {
            let res = curl_fd_residual(&mode, &p, 1e-3);
            assert!(res < 1e-5, "{i:?} at {p:?}: {res:e}");
        }
    }
}

#[test]
fn fields_are_regular_on_the_axis() {
    let g = unit_geom();
    for i in ModeIndex::enumerate(2, 3, 2) {
        let mode = CavityMode::new(&g, i).unwrap();
        let at = mode.fields(&CylPoint::new(0.0, 0.4, 0.7));
        let near = mode.fields(&CylPoint::new(1e-7, 0.4, 0.7));
        for c in 0..3 {
            assert!((at.u[c] - near.u[c]).norm() < 1e-5, "{i:?}");
            assert!(at.u[c].is_finite() && at.v[c].is_finite());
        }
    }
}

#[test]
fn frequencies_are_degenerate_in_azimuthal_sign() {
    let g = unit_geom();
    for m2 in 1..5 {
        for pol in Polarization::ALL {
            let a = wavenumbers(&g, &idx(2, m2, 1, pol)).unwrap();
            let b = wavenumbers(&g, &idx(2, -m2, 1, pol)).unwrap();
            assert_eq!(a, b);
        }
    }
}

fn smoke_modes() -> Vec<ModeIndex> {
    let mut v = ModeIndex::enumerate(3, 2, 3);
    v.push(idx(1, -1, 2, Polarization::Mu1));
    v.push(idx(2, -2, 1, Polarization::Mu2));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn helmholtz_residual_at_interior_points(
        k in 0usize..22,
        r in 0.05f64..0.95,
        phi in 0.0f64..TAU,
        z in 0.05f64..1.95,
    ) {
        let g = unit_geom();
        let i = smoke_modes()[k % smoke_modes().len()];
        let mode = CavityMode::new(&g, i).unwrap();
        let res = helmholtz_fd_residual(&mode, &CylPoint::new(r, phi, z), 1e-4);
        prop_assert!(res < 1e-4, "{:?}: {:e}", i, res);
    }

    #[test]
    fn boundary_conditions_hold(
        k in 0usize..40,
        phi in 0.0f64..TAU,
        s in 0.02f64..0.98,
    ) {
        let g = unit_geom();
        let modes = smoke_modes();
        let mode = CavityMode::new(&g, modes[k % modes.len()]).unwrap();
        let side = boundary_residuals(&mode, Wall::Side, &CylPoint::new(1.0, phi, 2.0 * s));
        let bottom = boundary_residuals(&mode, Wall::Bottom, &CylPoint::new(s, phi, 0.0));
        let top = boundary_residuals(&mode, Wall::Top, &CylPoint::new(s, phi, 2.0));
        for r in [side, bottom, top] {
            prop_assert!(r.max() < 1e-8, "{:?}: {:?}", mode.index(), r);
        }
    }

    #[test]
    fn divergence_free_everywhere(
        k in 0usize..40,
        r in 0.01f64..1.0,
        phi in 0.0f64..TAU,
        z in 0.0f64..2.0,
    ) {
        let g = unit_geom();
        let modes = smoke_modes();
        let mode = CavityMode::new(&g, modes[k % modes.len()]).unwrap();
        let (ju, jv) = mode.jets(&CylPoint::new(r, phi, z));
        let scale = mode.transverse_norm() * mode.longitudinal_norm() * mode.waves().k_abs();
        prop_assert!(ju.divergence(r).norm() < 1e-10 * scale);
        prop_assert!(jv.divergence(r).norm() < 1e-10 * scale);
    }

    #[test]
    fn frequency_grows_with_every_index(m1 in 1u32..8, m2 in 0i32..6, l in 1u32..8) {
        let g = unit_geom();
        for pol in Polarization::ALL {
            let w = wavenumbers(&g, &idx(m1, m2, l, pol)).unwrap().omega;
            prop_assert!(wavenumbers(&g, &idx(m1 + 1, m2, l, pol)).unwrap().omega > w);
            prop_assert!(wavenumbers(&g, &idx(m1, m2, l + 1, pol)).unwrap().omega > w);
        }
    }
}

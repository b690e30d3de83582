//! Subfield reduction against numerical projections and the 3D modes.

use num_complex::Complex64;
use proptest::prelude::*;
use sqed_cavity::{em_mode_3d, CavityError, CylPoint, CylinderGeometry, ModeIndex, Polarization};
use sqed_quadrature::{integrate_1d, Tolerance};
use sqed_reduction::{
    gram, project_numeric, reconstruct_3d, reconstruct_3d_magnetic, reduced_1d, reduced_2d,
    residual_1d, residual_2d, FieldKind, GramDomain, ReductionError, SubfieldLabel,
};
use std::f64::consts::TAU;

fn geom() -> CylinderGeometry {
    CylinderGeometry::new(1.0, 2.0).unwrap()
}

fn idx(m1: u32, m2: i32, l: u32, pol: Polarization) -> ModeIndex {
    ModeIndex::new(m1, m2, l, pol).unwrap()
}

fn all_modes() -> Vec<ModeIndex> {
    ModeIndex::enumerate(3, 2, 3)
}

#[test]
fn volume_gram_is_identity() {
    let g = gram(&geom(), &all_modes(), GramDomain::Volume).unwrap();
    assert!(g.error_estimate < 1e-8, "{:e}", g.error_estimate);
    let dev = g.max_identity_deviation();
    assert!(dev < 1e-6, "{dev:e}");
}

#[test]
fn volume_gram_with_negative_azimuthal_numbers() {
    let modes = vec![
        idx(1, 1, 1, Polarization::Mu1),
        idx(1, -1, 1, Polarization::Mu1),
        idx(2, -2, 2, Polarization::Mu2),
        idx(2, 2, 2, Polarization::Mu2),
    ];
    let g = gram(&geom(), &modes, GramDomain::Volume).unwrap();
    assert!(g.max_identity_deviation() < 1e-6);
}

#[test]
fn axis_gram_within_one_transverse_label_is_identity() {
    for (m1, m2) in [(1, 0), (2, 1), (3, 2)] {
        let modes: Vec<_> = all_modes()
            .into_iter()
            .filter(|i| i.m1() == m1 && i.m2() == m2)
            .collect();
        let g = gram(&geom(), &modes, GramDomain::Axis).unwrap();
        assert!(g.max_identity_deviation() < 1e-8, "({m1},{m2})");
    }
}

#[test]
fn axis_gram_across_transverse_labels_is_not_diagonal() {
    // Equal l and polarization but different m share the same 1D profile up
    // to the k-dependent mixing of μ2, so they overlap on the axis.
    let modes = vec![
        idx(1, 0, 1, Polarization::Mu1),
        idx(2, 1, 1, Polarization::Mu1),
    ];
    let g = gram(&geom(), &modes, GramDomain::Axis).unwrap();
    assert!((g.electric[0][1].norm() - 1.0).abs() < 1e-8);
}

#[test]
fn cross_section_gram_within_one_longitudinal_label_is_identity() {
    for l in 1..=3 {
        let modes: Vec<_> = all_modes().into_iter().filter(|i| i.l() == l).collect();
        let g = gram(&geom(), &modes, GramDomain::CrossSection).unwrap();
        assert!(g.max_identity_deviation() < 1e-8, "l = {l}");
    }
}

#[test]
fn empty_mode_set_is_rejected() {
    assert_eq!(
        gram(&geom(), &[], GramDomain::Axis),
        Err(ReductionError::EmptyModeSet)
    );
}

#[test]
fn numerical_projection_reproduces_1d_modes() {
    let g = geom();
    for i in [
        idx(1, 0, 1, Polarization::Mu2),
        idx(2, 1, 3, Polarization::Mu1),
        idx(3, 2, 2, Polarization::Mu2),
        idx(1, 0, 0, Polarization::Mu2),
    ] {
        for z in [0.3, 1.234] {
            let red = reduced_1d(&g, &i, z).unwrap();
            let e = project_numeric(&g, FieldKind::Electric, &i, (i.m1(), i.m2()), z).unwrap();
            let m = project_numeric(&g, FieldKind::Magnetic, &i, (i.m1(), i.m2()), z).unwrap();
            for c in 0..3 {
                assert!((e[c] - red.u_z[c]).norm() < 1e-7, "{i:?} u[{c}]");
                assert!((m[c] - red.v_z[c]).norm() < 1e-7, "{i:?} v[{c}]");
            }
        }
    }
}

#[test]
fn projection_onto_a_different_transverse_label_vanishes() {
    let g = geom();
    let i = idx(2, 1, 2, Polarization::Mu1);
    for anc in [(1, 1), (2, 0), (2, -1), (3, 2)] {
        let e = project_numeric(&g, FieldKind::Electric, &i, anc, 0.7).unwrap();
        assert!(e.iter().all(|c| c.norm() < 1e-7), "{anc:?}: {e:?}");
    }
}

#[test]
fn reconstruction_matches_3d_modes() {
    let g = geom();
    for i in all_modes() {
        for p in [
            CylPoint::new(0.3, 1.0, 0.4),
            CylPoint::new(0.9, 5.0, 1.7),
            CylPoint::new(0.0, 0.0, 1.0),
        ] {
            let f = em_mode_3d(&g, &i, &p).unwrap();
            let u = reconstruct_3d(&g, &i, &p).unwrap();
            let v = reconstruct_3d_magnetic(&g, &i, &p).unwrap();
            for c in 0..3 {
                assert!((u[c] - f.u[c]).norm() < 1e-12, "{i:?} {p:?}");
                assert!((v[c] - f.v[c]).norm() < 1e-12, "{i:?} {p:?}");
            }
        }
    }
}

#[test]
fn axial_projection_reproduces_2d_modes() {
    // s_r = ∫ u_r n_l sin, s_φ = ∫ u_φ n_l sin, s_z = ∫ u_z n_l cos over [0, L].
    let g = geom();
    let tol = Tolerance::new(1e-12, 1e-14);
    for i in [
        idx(2, 1, 1, Polarization::Mu1),
        idx(1, 2, 3, Polarization::Mu2),
    ] {
        let (r, phi) = (0.45, 2.2);
        let red = reduced_2d(&g, &i, r, phi).unwrap();
        let nl = 1.0f64;
        let kl = std::f64::consts::PI * f64::from(i.l()) / 2.0;
        let mut want = [Complex64::new(0.0, 0.0); 3];
        for c in 0..3 {
            want[c] = integrate_1d(
                |z: f64| {
                    let u = em_mode_3d(&g, &i, &CylPoint::new(r, phi, z)).unwrap().u[c];
                    let w = if c == 2 {
                        (kl * z).cos()
                    } else {
                        (kl * z).sin()
                    };
                    u * (nl * w)
                },
                0.0,
                2.0,
                tol,
            )
            .unwrap()
            .value;
        }
        for c in 0..3 {
            assert!((want[c] - red.s[c]).norm() < 1e-10, "{i:?} c={c}");
        }
    }
}

#[test]
fn constant_longitudinal_mode_has_reduced_normalization() {
    let g = geom();
    let red = reduced_1d(&g, &idx(1, 0, 0, Polarization::Mu2), 0.8).unwrap();
    assert_eq!(red.u_z[0], 0.0);
    assert!((red.u_z[2] - 0.5f64.sqrt()).abs() < 1e-15);
}

#[test]
fn out_of_domain_points_are_rejected() {
    let g = geom();
    let i = idx(1, 0, 1, Polarization::Mu2);
    assert!(matches!(
        reduced_1d(&g, &i, 2.5),
        Err(ReductionError::Cavity(CavityError::OutOfDomain { .. }))
    ));
    assert!(reduced_2d(&g, &i, 1.1, 0.0).is_err());
    assert!(reconstruct_3d(&g, &i, &CylPoint::new(0.2, 0.0, -0.1)).is_err());
}

#[test]
fn subfield_labels() {
    let i = idx(2, -1, 3, Polarization::Mu1);
    assert_eq!(
        SubfieldLabel::of(&i, true),
        SubfieldLabel::To1D { m1: 2, m2: -1 }
    );
    assert_eq!(SubfieldLabel::of(&i, false), SubfieldLabel::To2D { l: 3 });
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reduced_problems_are_solved(
        k in 0usize..36,
        z in 0.05f64..1.95,
        r in 0.05f64..0.95,
        phi in 0.0f64..TAU,
    ) {
        let g = geom();
        let modes = all_modes();
        let i = modes[k % modes.len()];
        prop_assert!(residual_1d(&g, &i, z, 1e-3).unwrap() < 1e-6);
        prop_assert!(residual_2d(&g, &i, r, phi, 1e-3).unwrap() < 1e-6);
    }

    #[test]
    fn reduced_modes_obey_boundary_conditions(k in 0usize..36, phi in 0.0f64..TAU) {
        let g = geom();
        let modes = all_modes();
        let i = modes[k % modes.len()];
        // Tangential 1D electric components vanish at the caps.
        for z in [0.0, 2.0] {
            let red = reduced_1d(&g, &i, z).unwrap();
            prop_assert!(red.u_z[0].abs() < 1e-14 && red.u_z[1].abs() < 1e-14);
        }
        // Tangential 2D electric components vanish on the rim.
        let s = reduced_2d(&g, &i, 1.0, phi).unwrap().s;
        prop_assert!(s[1].norm() < 1e-10 && s[2].norm() < 1e-10);
    }
}

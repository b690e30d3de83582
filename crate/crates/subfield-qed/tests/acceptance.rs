//! Acceptance battery: ten end-to-end criteria, each printing one
//! `PASS`/`FAIL` line (written past the test harness' output capture, so the
//! lines appear in every run).

use rand::{rngs::StdRng, Rng, SeedableRng};
use sqed_cavity::{
    boundary_residuals, em_mode_3d, helmholtz_fd_residual, CavityMode, CylPoint, CylinderGeometry,
    ModeIndex, Wall,
};
use sqed_interaction::{
    max_subfield, subfield_probability, transition_set, GaussianAtom, OraclePipeline, Resonance,
    SubfieldSet, Switching, TransitionKind,
};
use sqed_laser::{
    gamma_closed, gamma_sum, paraxial_residual, separable_deviation, zeta, BeamModeIndex,
    BeamPolarization, HermiteBeam, VacuumCutoff,
};
use sqed_reduction::{
    gram, project_numeric, reconstruct_3d, reduced_1d, residual_1d, residual_2d, FieldKind,
    GramDomain,
};
use sqed_specfun::{bessel_j, bessel_zero, hyp1f1, ZeroKind};
use std::f64::consts::{PI, SQRT_2, TAU};
use std::io::Write;
use std::time::Instant;

/// Prints the verdict line and fails the test on `FAIL`.
fn verdict(n: u32, title: &str, start: Instant, checks: &[(bool, String)]) {
    let ok = checks.iter().all(|c| c.0);
    let detail: Vec<String> = checks
        .iter()
        .map(|(pass, d)| format!("{}{d}", if *pass { "" } else { "✗ " }))
        .collect();
    let line = format!(
        "criterion {n:>2} {}: {title} ({:.1} s) — {}\n",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64(),
        detail.join("; ")
    );
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    assert!(ok, "{line}");
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn unit_geom() -> CylinderGeometry {
    CylinderGeometry::new(1.0, 2.0).unwrap()
}

const SIGMA: f64 = 1e-10;

#[test]
fn criterion_01_mode_orthonormality() {
    let start = Instant::now();
    let modes = ModeIndex::enumerate(3, 2, 3);
    let g = gram(&unit_geom(), &modes, GramDomain::Volume).unwrap();
    let dev = g.max_identity_deviation();
    verdict(
        1,
        "3D Gram matrix is the identity",
        start,
        &[(
            dev < 1e-6,
            format!("{} modes, max |G − I| = {dev:.2e}", modes.len()),
        )],
    );
}

#[test]
fn criterion_02_helmholtz_and_boundary_residuals() {
    let start = Instant::now();
    let g = unit_geom();
    let mut rng = StdRng::seed_from_u64(2);
    let modes = ModeIndex::enumerate(3, 2, 3);
    let (mut helm, mut bc): (f64, f64) = (0.0, 0.0);
    for idx in &modes {
        let mode = CavityMode::new(&g, *idx).unwrap();
        for _ in 0..20 {
            let p = CylPoint::new(
                rng.gen_range(0.05..0.95),
                rng.gen_range(0.0..TAU),
                rng.gen_range(0.1..1.9),
            );
            helm = helm.max(helmholtz_fd_residual(&mode, &p, 1e-4));
            let (phi, s) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..1.0));
            bc = bc
                .max(boundary_residuals(&mode, Wall::Side, &CylPoint::new(1.0, phi, 2.0 * s)).max())
                .max(boundary_residuals(&mode, Wall::Bottom, &CylPoint::new(s, phi, 0.0)).max())
                .max(boundary_residuals(&mode, Wall::Top, &CylPoint::new(s, phi, 2.0)).max());
        }
    }
    verdict(
        2,
        "Helmholtz and boundary residuals",
        start,
        &[
            (
                helm < 1e-4,
                format!("Helmholtz {helm:.2e} (20 points × {} modes)", modes.len()),
            ),
            (bc < 1e-8, format!("boundary families {bc:.2e}")),
        ],
    );
}

#[test]
fn criterion_03_reduction_consistency() {
    let start = Instant::now();
    let g = unit_geom();
    let modes = ModeIndex::enumerate(3, 2, 3);
    let mut proj: f64 = 0.0;
    for idx in modes.iter().step_by(5) {
        for z in [0.3, 1.234] {
            let red = reduced_1d(&g, idx, z).unwrap();
            let e = project_numeric(&g, FieldKind::Electric, idx, (idx.m1(), idx.m2()), z).unwrap();
            proj = proj.max(
                (0..3)
                    .map(|c| (e[c] - red.u_z[c]).norm())
                    .fold(0.0, f64::max),
            );
        }
    }
    let (mut recon, mut res): (f64, f64) = (0.0, 0.0);
    for idx in &modes {
        for p in [
            CylPoint::new(0.3, 1.0, 0.4),
            CylPoint::new(0.9, 5.0, 1.7),
            CylPoint::new(0.0, 0.0, 1.0),
        ] {
            let f = em_mode_3d(&g, idx, &p).unwrap();
            let u = reconstruct_3d(&g, idx, &p).unwrap();
            recon = recon.max((0..3).map(|c| (u[c] - f.u[c]).norm()).fold(0.0, f64::max));
        }
        res = res
            .max(residual_1d(&g, idx, 0.77, 1e-3).unwrap())
            .max(residual_2d(&g, idx, 0.45, 2.2, 1e-3).unwrap());
    }
    verdict(
        3,
        "reduction consistency",
        start,
        &[
            (proj < 1e-7, format!("projection vs closed form {proj:.2e}")),
            (recon < 1e-12, format!("reconstruction {recon:.2e}")),
            (res < 1e-6, format!("reduced BVP residual {res:.2e}")),
        ],
    );
}

#[test]
fn criterion_04_oracle_equivalence_of_probabilities() {
    let start = Instant::now();
    let geom = CylinderGeometry::new(20.0 * SIGMA, 2e4 * SIGMA).unwrap();
    let atom = GaussianAtom::resonant(&geom, SIGMA, Resonance::Mode { m1: 5, l: 2 }).unwrap();
    let mut oracle = OraclePipeline::new(&geom, &atom);
    let (mut worst, mut odd): (f64, f64) = (0.0, 0.0);
    for tau in [0.5, 1.0, 2.0] {
        let sw = Switching::gaussian(tau / atom.omega_a()).unwrap();
        for m1 in 1..=10 {
            let a = subfield_probability(&geom, &atom, &sw, TransitionKind::Emission, m1).unwrap();
            let o = oracle
                .probability(&sw, TransitionKind::Emission, m1)
                .unwrap();
            worst = worst.max(rel(a.c_abs2(), o.value));
            odd = odd.max(o.odd_l / o.value);
        }
    }
    verdict(
        4,
        "closed-form P matches the brute-force pipeline",
        start,
        &[
            (
                worst < 0.02,
                format!("max relative deviation {worst:.2e} over m1 ≤ 10, Ω_A T ∈ {{0.5, 1, 2}}"),
            ),
            (odd < 1e-12, format!("odd-l share {odd:.1e}")),
        ],
    );
}

#[test]
fn criterion_05_geometry_imprint_on_the_maximal_subfield() {
    let start = Instant::now();
    let sigma =
        GaussianAtom::oscillator_length(sqed_cavity::SI.hbar, sqed_interaction::PROTON_MASS, 6e12);
    let mut checks = Vec::new();
    for rs in [10.0, 30.0, 60.0] {
        let geom = CylinderGeometry::new(rs * sigma, 1e3 * rs * sigma).unwrap();
        // Resonance far above the scanned subfields, short interaction.
        let atom = GaussianAtom::resonant(&geom, sigma, Resonance::Mode { m1: 100, l: 0 }).unwrap();
        let m = max_subfield(&geom, &atom, 0.1 / atom.omega_a(), TransitionKind::Emission).unwrap();
        let expected = (2.0 * rs / (PI * SQRT_2)).round() as i64;
        checks.push((
            (i64::from(m.empirical) - expected).abs() <= 1,
            format!("R/σ = {rs}: argmax {} vs {expected} ± 1", m.empirical),
        ));
    }
    let geom = CylinderGeometry::new(1e3 * sigma, 1e6 * sigma).unwrap();
    let atom = GaussianAtom::resonant(&geom, sigma, Resonance::Mode { m1: 10, l: 0 }).unwrap();
    let m = max_subfield(&geom, &atom, 1.0 / atom.omega_a(), TransitionKind::Emission).unwrap();
    checks.push((
        (i64::from(m.empirical) - 20).abs() <= 2,
        format!("m1res = 10, Ω_A T = 1: argmax {} vs 20 ± 2", m.empirical),
    ));
    verdict(5, "maximal subfield follows the geometry", start, &checks);
}

fn waveguide() -> (CylinderGeometry, GaussianAtom) {
    let geom = CylinderGeometry::new(20.0 * SIGMA, 2e6 * SIGMA).unwrap();
    let atom = GaussianAtom::centered(&geom, SIGMA, 6e12).unwrap();
    (geom, atom)
}

fn taus() -> Vec<f64> {
    (0..10).map(|i| 5.0 + 5.0 * f64::from(i)).collect()
}

#[test]
fn criterion_06_waveguide_dynamics() {
    let start = Instant::now();
    let (geom, atom) = waveguide();
    let set = SubfieldSet::single(1).unwrap();
    let mut gauss = Vec::new();
    let mut top = Vec::new();
    for tau in taus() {
        let t = tau / atom.omega_a();
        let g = transition_set(
            &geom,
            &atom,
            &Switching::gaussian(t).unwrap(),
            TransitionKind::Emission,
            &set,
        )
        .unwrap();
        gauss.push(g.log_delta_n);
        let h = transition_set(
            &geom,
            &atom,
            &Switching::top_hat(t).unwrap(),
            TransitionKind::Emission,
            &set,
        )
        .unwrap();
        top.push(h.delta_n);
    }
    let decreasing = gauss.windows(2).all(|w| w[1] < w[0]);
    let below = gauss.iter().all(|&l| l < 0.05f64.ln());
    let top_min = top.iter().copied().fold(f64::INFINITY, f64::min);
    verdict(
        6,
        "Gaussian switching isolates the resonant subfield, sudden switching does not",
        start,
        &[
            (
                decreasing,
                format!(
                    "Gaussian ln δ from {:.3e} to {:.3e}, strictly decreasing",
                    gauss[0], gauss[9]
                ),
            ),
            (below, "Gaussian δ < 0.05 at every Ω_A T ∈ [5, 50]".into()),
            (top_min >= 0.05, format!("top-hat min δ = {top_min:.4}")),
        ],
    );
}

#[test]
fn criterion_07_resonant_excitation_does_not_converge() {
    let start = Instant::now();
    let geom = CylinderGeometry::new(20.0 * SIGMA, 2e6 * SIGMA).unwrap();
    let atom = GaussianAtom::resonant(&geom, SIGMA, Resonance::Mode { m1: 5, l: 2 }).unwrap();
    let set = SubfieldSet::single(5).unwrap();
    let mut min_delta = f64::INFINITY;
    for tau in taus() {
        let sw = Switching::gaussian(tau / atom.omega_a()).unwrap();
        let t = transition_set(&geom, &atom, &sw, TransitionKind::Excitation, &set).unwrap();
        min_delta = min_delta.min(t.delta_n);
    }
    verdict(
        7,
        "resonant excitation keeps a finite truncation error",
        start,
        &[(
            min_delta >= 0.01,
            format!("min δ over Ω_A T ∈ [5, 50] = {min_delta:.6}"),
        )],
    );
}

#[test]
fn criterion_08_laser_couplings_and_zeta_bound() {
    let start = Instant::now();
    let mut worst_gamma: f64 = 0.0;
    for n1 in 0..=8 {
        for n2 in 0..=8 {
            let n = VacuumCutoff::new(n1, n2).unwrap();
            worst_gamma = worst_gamma.max((gamma_closed(n).unwrap() - gamma_sum(n)).abs());
        }
    }
    let g10 = gamma_closed(VacuumCutoff::new(1, 0).unwrap()).unwrap();
    let beam = HermiteBeam::new(1e-5, 1e7, 1e20, BeamPolarization::EpsX).unwrap();
    let omega = sqed_cavity::SI.c * beam.k();
    let cutoff = VacuumCutoff::new(3, 3).unwrap();
    let mut worst_zeta: f64 = 0.0;
    let mut worst_kind = TransitionKind::Excitation;
    for i in 0..20 {
        let tau = 0.1 * 100f64.powf(f64::from(i) / 19.0);
        for j in 0..20 {
            let ratio = 0.2 * 25f64.powf(f64::from(j) / 19.0);
            let omega_a = omega / ratio;
            let atom = GaussianAtom::new(SIGMA, omega_a, 0.0).unwrap();
            let sw = Switching::gaussian(tau / omega_a).unwrap();
            for kind in [TransitionKind::Emission, TransitionKind::Excitation] {
                let z = zeta(&atom, &beam, &sw, kind, cutoff).unwrap();
                let r = (z.log_value - z.bound.ln()).exp();
                if r > worst_zeta {
                    worst_zeta = r;
                    worst_kind = kind;
                }
            }
        }
    }
    let mut bound_ok = true;
    for n1 in 0..=10 {
        for n2 in 0..=10 {
            let n = VacuumCutoff::new(n1, n2).unwrap();
            bound_ok &=
                gamma_sum(n) / (4.0 * beam.alpha_sq()) <= 2.5e-21 * gamma_sum(n) * (1.0 + 1e-14);
        }
    }
    verdict(
        8,
        "laser couplings and the vacuum-to-laser bound",
        start,
        &[
            (worst_gamma < 1e-10, format!("γ closed form vs direct sum: max |difference| {worst_gamma:.4e} for N ≤ (8, 8)")),
            ((g10 - 1.0 / 6.0).abs() < 1e-12, format!("γ_(1,0) = {g10:.15}")),
            (
                worst_zeta <= 1.0 + 1e-12,
                format!("max ζ/(γ_N/4|α|²) over the 20×20 grid = {worst_zeta:.4} ({worst_kind:?})"),
            ),
            (bound_ok, "γ_N/(4|α|²) ≤ 2.5e-21·γ_N at |α|² = 1e20".into()),
        ],
    );
}

#[test]
fn criterion_09_paraxial_validity() {
    let start = Instant::now();
    let beam = HermiteBeam::new(1e-5, 1e7, 1.0, BeamPolarization::EpsX).unwrap();
    let zr = beam.rayleigh_length();
    let mut res: f64 = 0.0;
    for m in [
        BeamModeIndex::new(0, 0),
        BeamModeIndex::new(1, 0),
        BeamModeIndex::new(1, 2),
    ] {
        for p in [
            [0.1 * beam.w0(), 0.0, 0.05 * zr],
            [0.2 * beam.w0(), -0.1 * beam.w0(), 0.3 * zr],
        ] {
            res = res.max(paraxial_residual(&beam, m, p).unwrap());
        }
    }
    let m = BeamModeIndex::new(1, 0);
    let at_waist = separable_deviation(&beam, m, 0.0).unwrap();
    let devs: Vec<f64> = [0.02, 0.1, 0.3, 0.6, 1.0]
        .iter()
        .map(|f| separable_deviation(&beam, m, f * zr).unwrap())
        .collect();
    let monotone = std::iter::once(at_waist)
        .chain(devs.iter().copied())
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[1] > w[0]);
    verdict(
        9,
        "paraxial validity",
        start,
        &[
            (
                res < 1e-3,
                format!("paraxial residual at k·w0 = 100: {res:.2e}"),
            ),
            (
                at_waist < 1e-7,
                format!("separable vs full at z = 0: {at_waist:.1e}"),
            ),
            (
                monotone,
                format!(
                    "deviation grows with |z|/z_R: {:.2e} … {:.2e}",
                    devs[0], devs[4]
                ),
            ),
        ],
    );
}

#[test]
fn criterion_10_special_functions() {
    let start = Instant::now();
    let mut worst_zero: f64 = 0.0;
    for (kind, deriv) in [
        (ZeroKind::OfBessel, false),
        (ZeroKind::OfBesselDerivative, true),
    ] {
        for order in [0u32, 1, 2, 5, 10] {
            let f = |x: f64| bessel_j(order, x, deriv).unwrap();
            let mut x = 0.5;
            let mut index = 0;
            while index < 6 {
                let h = 0.02;
                if f(x) * f(x + h) < 0.0 {
                    index += 1;
                    let (mut a, mut b) = (x, x + h);
                    let fa = f(a);
                    while b - a > 1e-14 * b {
                        let m = 0.5 * (a + b);
                        if (f(m) > 0.0) == (fa > 0.0) {
                            a = m;
                        } else {
                            b = m;
                        }
                    }
                    let z = bessel_zero(kind, order, index).unwrap();
                    worst_zero = worst_zero.max((z - 0.5 * (a + b)).abs());
                }
                x += h;
            }
        }
    }
    let mut worst_hyp: f64 = 0.0;
    for i in 0..=100 {
        let x = 0.1 * f64::from(i);
        let lhs = hyp1f1(2.0, 1.0, -x).unwrap() - hyp1f1(1.0, 1.0, -x).unwrap();
        worst_hyp = worst_hyp.max((lhs + x * (-x).exp()).abs());
    }
    verdict(
        10,
        "special functions",
        start,
        &[
            (
                worst_zero < 1e-10,
                format!("Bessel zeros vs bisection {worst_zero:.1e}"),
            ),
            (
                worst_hyp < 1e-10,
                format!("Hankel-pair identity {worst_hyp:.1e}"),
            ),
        ],
    );
}

//! The self-test battery.
//!
//! `Quick` checks invariants and closed forms against independent oracles
//! at loose tolerance; `Full` adds the expensive oracle equivalences (3D
//! Gram matrix, brute-force probability pipeline) and reports the known
//! discrepancies between commonly quoted formulas and direct evaluation as
//! `WARN` lines.  Warnings document deviations resolved in favour of the
//! oracle; they do not fail the run.

use sqed_cavity::{
    boundary_residuals, helmholtz_fd_residual, CavityMode, CylPoint, CylinderGeometry, ModeIndex,
    Polarization, Wall,
};
use sqed_interaction::{
    atom_profile, displayed_gaussian_window, overlap_analytic, overlap_numeric,
    overlap_split_diagnostic, subfield_probability, time_integral_numeric, time_window,
    GaussianAtom, OraclePipeline, Resonance, Switching, TransitionKind,
};
use sqed_laser::{
    displayed_laser_factor, gamma_closed, gamma_sum, laser_factor, laser_factor_numeric,
    paraxial_residual, smearing_coefficient, smearing_coefficient_numeric, zeta, BeamModeIndex,
    BeamPolarization, HermiteBeam, VacuumCutoff, PUMPED_MODE,
};
use sqed_reduction::{gram, project_numeric, reduced_1d, residual_1d, FieldKind, GramDomain};
use sqed_specfun::{bessel_j, bessel_zero, hyp1f1, ZeroKind};
use std::time::Instant;

/// Depth of the battery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Invariants at loose tolerance (well under a minute).
    Quick,
    /// Every oracle equivalence plus documented deviations.
    Full,
}

/// Verdict of one check.
#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    /// Within tolerance.
    Pass,
    /// Outside tolerance, or the computation failed.
    Fail,
    /// A documented deviation of a quoted formula from direct evaluation.
    Warn,
}

/// One line of the report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    /// Name of the invariant.
    pub name: &'static str,
    /// Verdict.
    pub status: Status,
    /// Measured quantities.
    pub detail: String,
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

type Check = fn() -> Result<(bool, String), String>;

fn quick_checks() -> Vec<(&'static str, Check)> {
    vec![
        ("bessel_zeros_match_bisection", bessel_zeros),
        ("hankel_pair_identity", hankel_identity),
        ("small_gram_matrix_is_identity", small_gram),
        ("helmholtz_and_boundary_residuals", residuals),
        ("projection_matches_reduced_1d", projection),
        ("overlap_matches_quadrature", overlap),
        ("time_windows_match_quadrature", windows),
        ("gamma_first_cutoff", gamma_first),
        ("laser_factor_matches_quadrature", laser_factor_check),
        ("paraxial_residual", paraxial),
        ("smearing_coefficient_matches_quadrature", smearing),
    ]
}

fn full_checks() -> Vec<(&'static str, Check)> {
    vec![
        ("volume_gram_matrix_is_identity", full_gram),
        (
            "analytic_probability_matches_oracle_pipeline",
            probability_oracle,
        ),
    ]
}

fn findings() -> Vec<(&'static str, Check)> {
    vec![
        ("gaussian_window_exponent", finding_gaussian_exponent),
        ("overlap_split_prefactor", finding_overlap_split),
        ("axial_smearing_parity", finding_parity),
        ("gamma_closed_form_exclusion", finding_gamma),
        ("gaussian_laser_factor_exponent", finding_laser_factor),
        ("reduced_smearing_normalization", finding_smearing),
        ("zeta_quarter_bound", finding_zeta),
        ("coupling_g_units", finding_g_units),
    ]
}

/// Runs the battery, calling `report` after each check.
pub fn run(level: Level, mut report: impl FnMut(&CheckResult)) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut exec = |name: &'static str, check: Check, finding: bool| {
        let start = Instant::now();
        let (status, detail) = match check() {
            Ok((true, d)) if !finding => (Status::Pass, d),
            Ok((false, d)) if !finding => (Status::Fail, d),
            // Findings: `true` means the deviation is present as documented.
            Ok((true, d)) => (Status::Warn, d),
            Ok((false, d)) => (
                Status::Fail,
                format!("documented deviation not reproduced: {d}"),
            ),
            Err(e) => (Status::Fail, e),
        };
        let r = CheckResult {
            name,
            status,
            detail: format!("{detail} [{:.1} s]", start.elapsed().as_secs_f64()),
        };
        report(&r);
        out.push(r);
    };
    for (name, check) in quick_checks() {
        exec(name, check, false);
    }
    if level == Level::Full {
        for (name, check) in full_checks() {
            exec(name, check, false);
        }
        for (name, check) in findings() {
            exec(name, check, true);
        }
    }
    out
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

// ---------------------------------------------------------------- quick

fn bisect(f: impl Fn(f64) -> Result<f64, String>, mut a: f64, mut b: f64) -> Result<f64, String> {
    let fa0 = f(a)?;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if (f(m)? > 0.0) == (fa0 > 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

fn bessel_zeros() -> Result<(bool, String), String> {
    let mut worst: f64 = 0.0;
    for (kind, deriv) in [
        (ZeroKind::OfBessel, false),
        (ZeroKind::OfBesselDerivative, true),
    ] {
        for order in [0u32, 1, 3] {
            let f = |x: f64| bessel_j(order, x, deriv).map_err(err);
            let mut found = Vec::new();
            let mut x = 0.5;
            while found.len() < 4 {
                if f(x)? * f(x + 0.05)? < 0.0 {
                    found.push(bisect(f, x, x + 0.05)?);
                }
                x += 0.05;
            }
            for (i, z) in found.iter().enumerate() {
                worst = worst.max((bessel_zero(kind, order, i + 1).map_err(err)? - z).abs());
            }
        }
    }
    Ok((worst < 1e-10, format!("max |Δ| = {worst:.2e}")))
}

fn hankel_identity() -> Result<(bool, String), String> {
    let mut worst: f64 = 0.0;
    for i in 0..=40 {
        let x = 0.25 * f64::from(i);
        let lhs = hyp1f1(2.0, 1.0, -x).map_err(err)? - hyp1f1(1.0, 1.0, -x).map_err(err)?;
        worst = worst.max((lhs + x * (-x).exp()).abs());
    }
    Ok((
        worst < 1e-10,
        format!("max |1F1(2;1;−x) − 1F1(1;1;−x) + x e^−x| = {worst:.2e}"),
    ))
}

fn unit_geom() -> Result<CylinderGeometry, String> {
    CylinderGeometry::new(1.0, 2.0).map_err(err)
}

fn small_gram() -> Result<(bool, String), String> {
    let g = gram(
        &unit_geom()?,
        &ModeIndex::enumerate(1, 1, 1),
        GramDomain::Volume,
    )
    .map_err(err)?;
    let d = g.max_identity_deviation();
    Ok((d < 1e-6, format!("max |G − I| = {d:.2e}")))
}

fn residuals() -> Result<(bool, String), String> {
    let g = unit_geom()?;
    let (mut helm, mut bc): (f64, f64) = (0.0, 0.0);
    for idx in [
        ModeIndex::new(1, 0, 1, Polarization::Mu2).map_err(err)?,
        ModeIndex::new(2, 1, 2, Polarization::Mu1).map_err(err)?,
        ModeIndex::new(3, -2, 3, Polarization::Mu2).map_err(err)?,
    ] {
        let mode = CavityMode::new(&g, idx).map_err(err)?;
        for (r, phi, z) in [(0.3, 0.4, 0.7), (0.8, 2.0, 1.5), (0.55, 5.0, 0.2)] {
            helm = helm.max(helmholtz_fd_residual(
                &mode,
                &CylPoint::new(r, phi, z),
                1e-4,
            ));
            bc = bc
                .max(boundary_residuals(&mode, Wall::Side, &CylPoint::new(1.0, phi, z)).max())
                .max(boundary_residuals(&mode, Wall::Bottom, &CylPoint::new(r, phi, 0.0)).max())
                .max(boundary_residuals(&mode, Wall::Top, &CylPoint::new(r, phi, 2.0)).max());
        }
    }
    Ok((
        helm < 1e-4 && bc < 1e-8,
        format!("Helmholtz {helm:.2e}, boundary {bc:.2e}"),
    ))
}

fn projection() -> Result<(bool, String), String> {
    let g = unit_geom()?;
    let idx = ModeIndex::new(2, 1, 3, Polarization::Mu1).map_err(err)?;
    let red = reduced_1d(&g, &idx, 0.7).map_err(err)?;
    let e = project_numeric(&g, FieldKind::Electric, &idx, (2, 1), 0.7).map_err(err)?;
    let d = (0..3)
        .map(|c| (e[c] - red.u_z[c]).norm())
        .fold(0.0, f64::max);
    let res = residual_1d(&g, &idx, 0.7, 1e-3).map_err(err)?;
    Ok((
        d < 1e-7 && res < 1e-6,
        format!("projection {d:.2e}, reduced residual {res:.2e}"),
    ))
}

fn overlap() -> Result<(bool, String), String> {
    let g = unit_geom()?;
    let atom = GaussianAtom::centered(&g, 0.05, 1.0).map_err(err)?;
    let mut worst: f64 = 0.0;
    for (m1, l) in [(1, 2), (2, 4), (1, 0)] {
        let a = overlap_analytic(&g, &atom, m1, l).map_err(err)?.re;
        let n = overlap_numeric(
            &g,
            &atom,
            &ModeIndex::new(m1, 0, l, Polarization::Mu2).map_err(err)?,
        )
        .map_err(err)?;
        worst = worst.max((n.re - a).abs() / a.abs());
    }
    Ok((worst < 1e-6, format!("max relative deviation {worst:.2e}")))
}

fn windows() -> Result<(bool, String), String> {
    let mut worst: f64 = 0.0;
    for sw in [
        Switching::gaussian(1.3).map_err(err)?,
        Switching::top_hat(1.3).map_err(err)?,
    ] {
        for delta in [0.0, 0.4, 1.1] {
            worst = worst.max(rel(
                time_window(&sw, delta),
                time_integral_numeric(&sw, delta).map_err(err)?,
            ));
        }
    }
    Ok((worst < 1e-8, format!("max relative deviation {worst:.2e}")))
}

fn gamma_first() -> Result<(bool, String), String> {
    let g = gamma_closed(VacuumCutoff::new(1, 0).map_err(err)?).map_err(err)?;
    Ok(((g - 1.0 / 6.0).abs() < 1e-12, format!("γ_(1,0) = {g:.17}")))
}

fn laser_factor_check() -> Result<(bool, String), String> {
    let mut worst: f64 = 0.0;
    for sw in [
        Switching::gaussian(0.8).map_err(err)?,
        Switching::top_hat(2.0).map_err(err)?,
    ] {
        for ratio in [0.6, 1.0, 1.5] {
            worst = worst.max(rel(
                laser_factor(&sw, ratio, 1.0),
                laser_factor_numeric(&sw, ratio, 1.0).map_err(err)?,
            ));
        }
    }
    Ok((worst < 1e-6, format!("max relative deviation {worst:.2e}")))
}

fn beam() -> Result<HermiteBeam, String> {
    HermiteBeam::new(1e-5, 1e7, 1e20, BeamPolarization::EpsX).map_err(err)
}

fn paraxial() -> Result<(bool, String), String> {
    let b = beam()?;
    let r = paraxial_residual(
        &b,
        BeamModeIndex::new(0, 0),
        [0.1 * b.w0(), 0.0, 0.05 * b.rayleigh_length()],
    )
    .map_err(err)?;
    Ok((r < 1e-3, format!("residual at k·w0 = 100: {r:.2e}")))
}

fn smearing() -> Result<(bool, String), String> {
    let b = beam()?;
    let mut worst: f64 = 0.0;
    for m in [PUMPED_MODE, BeamModeIndex::new(3, 2)] {
        let exact = smearing_coefficient(5e-7, &b, m).exact;
        worst = worst.max(rel(
            exact,
            smearing_coefficient_numeric(5e-7, &b, m).map_err(err)?,
        ));
    }
    Ok((worst < 1e-8, format!("max relative deviation {worst:.2e}")))
}

// ---------------------------------------------------------------- full

fn full_gram() -> Result<(bool, String), String> {
    let g = gram(
        &unit_geom()?,
        &ModeIndex::enumerate(3, 2, 3),
        GramDomain::Volume,
    )
    .map_err(err)?;
    let d = g.max_identity_deviation();
    Ok((
        d < 1e-6,
        format!("max |G − I| = {d:.2e} over m1 ≤ 3, |m2| ≤ 2, l ≤ 3"),
    ))
}

fn probability_oracle() -> Result<(bool, String), String> {
    let sigma = 1e-10;
    let geom = CylinderGeometry::new(20.0 * sigma, 2e4 * sigma).map_err(err)?;
    let atom =
        GaussianAtom::resonant(&geom, sigma, Resonance::Mode { m1: 5, l: 2 }).map_err(err)?;
    let mut oracle = OraclePipeline::new(&geom, &atom);
    let mut worst: f64 = 0.0;
    for tau in [0.5, 1.0, 2.0] {
        let sw = Switching::gaussian(tau / atom.omega_a()).map_err(err)?;
        for m1 in 1..=10 {
            let a = subfield_probability(&geom, &atom, &sw, TransitionKind::Emission, m1)
                .map_err(err)?;
            let o = oracle
                .probability(&sw, TransitionKind::Emission, m1)
                .map_err(err)?;
            worst = worst.max(rel(a.c_abs2(), o.value));
        }
    }
    Ok((
        worst < 0.02,
        format!("max relative deviation {worst:.2e} (m1 ≤ 10, Ω_A T ∈ {{0.5, 1, 2}})"),
    ))
}

// ---------------------------------------------------------------- findings

fn finding_gaussian_exponent() -> Result<(bool, String), String> {
    let (t, delta) = (1.0, 0.6);
    let direct =
        time_integral_numeric(&Switching::gaussian(t).map_err(err)?, delta).map_err(err)?;
    let displayed = displayed_gaussian_window(t, delta);
    Ok((
        rel(displayed, direct) > 0.1,
        format!(
            "2πT²e^(−2Δ²T²) = {displayed:.6e} but quadrature of exp(−t²/2T²) gives {direct:.6e}; the exact 2πT²e^(−4Δ²T²) is used"
        ),
    ))
}

fn finding_overlap_split() -> Result<(bool, String), String> {
    let sigma = 1e-10;
    let geom = CylinderGeometry::new(20.0 * sigma, 2e4 * sigma).map_err(err)?;
    let atom = GaussianAtom::centered(&geom, sigma, 6e12).map_err(err)?;
    let d = overlap_split_diagnostic(&geom, &atom, 3, 2000).map_err(err)?;
    Ok((
        (d.recombination_ratio - 1.0).abs() > 1e-3,
        format!(
            "radial + axial parts with the quoted 1/2 prefactor recombine to {:.6} of the total overlap; the closed-form total is used",
            d.recombination_ratio
        ),
    ))
}

fn finding_parity() -> Result<(bool, String), String> {
    let geom = unit_geom()?;
    let atom = GaussianAtom::centered(&geom, 0.05, 1.0).map_err(err)?;
    let zc = atom.center_z();
    let (a, b) = (
        atom_profile(&atom, 0.02, zc + 0.03),
        atom_profile(&atom, 0.02, zc - 0.03),
    );
    Ok((
        a.f[2] == b.f[2] && a.f[0] == -b.f[0],
        format!(
            "F_z(z') = {:.3e} = F_z(−z'): the axial smearing component is even in z', the radial one odd",
            a.f[2]
        ),
    ))
}

fn finding_gamma() -> Result<(bool, String), String> {
    let n = VacuumCutoff::new(3, 2).map_err(err)?;
    let (closed, sum) = (gamma_closed(n).map_err(err)?, gamma_sum(n));
    Ok((
        (sum - closed - 1.0 / 12.0).abs() < 1e-12,
        format!(
            "closed form {closed:.12} vs direct sum {sum:.12} at N = (3, 2): the closed form removes the (3, 0) term (3/4) instead of the pumped (1, 0) term (1/2); the direct sum is used"
        ),
    ))
}

fn finding_laser_factor() -> Result<(bool, String), String> {
    let sw = Switching::gaussian(1.0).map_err(err)?;
    let direct = laser_factor_numeric(&sw, 1.3, 1.0).map_err(err)?;
    let displayed = displayed_laser_factor(1.0, 1.3, 1.0);
    Ok((
        rel(displayed, direct) > 0.1,
        format!(
            "8πT²e^(−(ω²+Ω²)T²/2)cosh²(ωΩT²/2) = {displayed:.6e} vs quadrature {direct:.6e}; the exact 8πT²e^(−(ω²+Ω²)T²)cosh²(ωΩT²) is used"
        ),
    ))
}

fn finding_smearing() -> Result<(bool, String), String> {
    let c = smearing_coefficient(5e-7, &beam()?, PUMPED_MODE);
    Ok((
        rel(c.displayed_leading_order, c.exact) > 0.5,
        format!(
            "displayed leading coefficient {:.6e} m⁻² vs exact {:.6e} m⁻² (ratio π^(−3/2)); the exact coefficient is used",
            c.displayed_leading_order, c.exact
        ),
    ))
}

fn finding_zeta() -> Result<(bool, String), String> {
    let b = beam()?;
    let omega = sqed_cavity::SI.c * b.k();
    let atom = GaussianAtom::new(1e-10, omega, 0.0).map_err(err)?;
    let sw = Switching::gaussian(3.0 / omega).map_err(err)?;
    let z = zeta(
        &atom,
        &b,
        &sw,
        TransitionKind::Emission,
        VacuumCutoff::new(3, 3).map_err(err)?,
    )
    .map_err(err)?;
    Ok((
        z.value > z.bound,
        format!(
            "Gaussian emission at ω = Ω_A, Ω_A T = 3: ζ/(γ_N/4|α|²) = {:.4}; the bound holds for excitation only, emission is bounded by γ_N/|α|²",
            z.value / z.bound
        ),
    ))
}

fn finding_g_units() -> Result<(bool, String), String> {
    Ok((
        true,
        "g = 3ce²k³σ⁶e^(−(kσ)²/2)/(ħε₀π⁴w0⁴) carries units m·s⁻² rather than being dimensionless"
            .into(),
    ))
}

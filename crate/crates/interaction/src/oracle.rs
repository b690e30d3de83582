//! Brute-force probability pipeline: quadrature overlaps times quadrature
//! time windows, summed over every longitudinal number (odd ones included).
//!
//! For `m2 = 0` the second-polarization mode and the smearing vector both
//! factorize into radial and axial parts,
//!
//! ```text
//! u_r = −(k_l/|k|) a(r) n_l sin(k_l z),   u_z = (k⊥/|k|) ψ(r) n_l cos(k_l z),
//! F_r = A r z' e^{−(r²+z'²)/σ²},          F_z = A z'² e^{−(r²+z'²)/σ²},
//! ```
//!
//! with `A = √2 π^{-3/2} σ^{-4}`, `ψ` the transverse scalar mode and
//! `a = ∂_rψ/k⊥`.  The overlap is thus assembled from two radial integrals
//! per `m1` and two axial integrals per `l`, each computed by adaptive
//! quadrature over the finite cavity.  No closed form enters.
//!
//! Terms are ordered by the a-priori bound `ω e²/(2ε₀ħ)·|O|²·(∫χ)²`; time
//! quadratures are performed in that order until the bounds of the remaining
//! terms sum to less than `10⁻¹⁰` of the accumulated probability.

use sqed_cavity::{longitudinal_norm, CavityMode, CylinderGeometry, ModeIndex, Polarization};
use sqed_quadrature::{integrate_1d_with_breaks, Tolerance};
use std::collections::HashMap;
use std::f64::consts::{PI, SQRT_2};

use crate::overlap::{breakpoints, ATOM_EXTENT};
use crate::{
    detuning, time_integral_numeric, GaussianAtom, InteractionError, Result, Switching,
    TransitionKind,
};

/// Largest `k_l σ` kept; the overlap carries `e^{−(k_lσ)²/4}`, so the
/// neglected terms are below `e^{−60}` of the leading ones.
const KL_SIGMA_MAX: f64 = 11.0;
/// Relative size of the a-priori bound of the skipped terms.
const SKIP_TOLERANCE: f64 = 1e-10;

/// Result of the oracle pipeline for one subfield.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleProbability {
    /// `|c_(m1,0)|²` including odd `l`.
    pub value: f64,
    /// Contribution of odd `l` (computed terms plus the bound of skipped
    /// ones); vanishes by parity for the centred atom.
    pub odd_l: f64,
    /// Number of time quadratures performed.
    pub time_quadratures: usize,
    /// A-priori bound of all skipped terms.
    pub skipped_bound: f64,
}

/// Cached brute-force overlaps for one geometry and atom.
#[derive(Debug, Clone)]
pub struct OraclePipeline {
    geom: CylinderGeometry,
    atom: GaussianAtom,
    l_max: u32,
    /// `(∫ r² e^{−r²/σ²} a dr, ∫ r e^{−r²/σ²} ψ dr, k⊥)` per `m1`.
    radial: HashMap<u32, (f64, f64, f64)>,
    /// `(∫ z' e^{−z'²/σ²} n_l sin dz, ∫ z'² e^{−z'²/σ²} n_l cos dz)` per `l`.
    axial: Vec<(f64, f64)>,
}

impl OraclePipeline {
    /// A pipeline keeping every `l` with `k_l σ ≤ 11`.
    pub fn new(geom: &CylinderGeometry, atom: &GaussianAtom) -> Self {
        let l_max = (KL_SIGMA_MAX * geom.length() / (PI * atom.sigma())).ceil() as u32;
        Self {
            geom: *geom,
            atom: *atom,
            l_max,
            radial: HashMap::new(),
            axial: Vec::new(),
        }
    }

    /// Largest longitudinal number included.
    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    fn radial_integrals(&mut self, m1: u32) -> Result<(f64, f64, f64)> {
        if let Some(v) = self.radial.get(&m1) {
            return Ok(*v);
        }
        let mode = CavityMode::new(&self.geom, ModeIndex::new(m1, 0, 0, Polarization::Mu2)?)?;
        let s = self.atom.sigma();
        let breaks = breakpoints(0.0, self.geom.radius(), &[ATOM_EXTENT * s]);
        let scale = mode.transverse_norm() * s * s;
        let tol = Tolerance::new(1e-12, 1e-18 * scale);
        let gauss = |r: f64| (-(r * r) / (s * s)).exp();
        let rr = integrate_1d_with_breaks(
            |r| r * r * gauss(r) * mode.transverse_parts(r, 0.0)[1].re,
            &breaks,
            tol,
        )?;
        let rz = integrate_1d_with_breaks(
            |r| r * gauss(r) * mode.transverse_parts(r, 0.0)[0].re,
            &breaks,
            tol,
        )?;
        let v = (rr.value, rz.value, mode.waves().k_perp);
        self.radial.insert(m1, v);
        Ok(v)
    }

    fn axial_integrals(&mut self, l: u32) -> Result<(f64, f64)> {
        let len = self.geom.length();
        let s = self.atom.sigma();
        let zc = self.atom.center_z();
        let breaks = breakpoints(0.0, len, &[zc - ATOM_EXTENT * s, zc, zc + ATOM_EXTENT * s]);
        while self.axial.len() <= l as usize {
            let ll = self.axial.len() as u32;
            let k_l = PI * f64::from(ll) / len;
            let n = longitudinal_norm(len, ll);
            let scale = n * s * s;
            let tol = Tolerance::new(1e-12, 1e-18 * scale);
            let w = |z: f64| {
                let zp = z - zc;
                (zp, (-(zp * zp) / (s * s)).exp())
            };
            let zs = if ll == 0 {
                0.0
            } else {
                integrate_1d_with_breaks(
                    |z| {
                        let (zp, g) = w(z);
                        zp * g * n * (k_l * z).sin()
                    },
                    &breaks,
                    tol,
                )?
                .value
            };
            let zcos = integrate_1d_with_breaks(
                |z| {
                    let (zp, g) = w(z);
                    zp * zp * g * n * (k_l * z).cos()
                },
                &breaks,
                tol,
            )?
            .value;
            self.axial.push((zs, zcos));
        }
        Ok(self.axial[l as usize])
    }

    /// Quadrature overlap `∫ u_{(m1,0),l,μ2} · F d³r` (units m^{-1/2}).
    ///
    /// # Errors
    /// Invalid mode numbers or quadrature failure.
    pub fn overlap(&mut self, m1: u32, l: u32) -> Result<f64> {
        let (rr, rz, k_perp) = self.radial_integrals(m1)?;
        let (zs, zc) = self.axial_integrals(l)?;
        let s = self.atom.sigma();
        let amp = SQRT_2 * PI.powf(-1.5) * s.powi(-4);
        let k_l = PI * f64::from(l) / self.geom.length();
        let k = k_perp.hypot(k_l);
        Ok(2.0 * PI * amp * (-(k_l / k) * rr * zs + (k_perp / k) * rz * zc))
    }

    /// `|c_(m1,0),(±)|²` from quadrature overlaps and quadrature windows.
    ///
    /// # Errors
    /// [`InteractionError::NonConvergence`] if any quadrature fails.
    pub fn probability(
        &mut self,
        sw: &Switching,
        kind: TransitionKind,
        m1: u32,
    ) -> Result<OracleProbability> {
        let consts = *self.geom.constants();
        let coupling = consts.e * consts.e / (2.0 * consts.eps0 * consts.hbar);
        let area2 = sw.area().powi(2);
        let (_, _, k_perp) = self.radial_integrals(m1)?;
        let mut terms = Vec::with_capacity(self.l_max as usize + 1);
        for l in 0..=self.l_max {
            let o = self.overlap(m1, l)?;
            let omega = consts.c * k_perp.hypot(PI * f64::from(l) / self.geom.length());
            let weight = coupling * omega * o * o;
            terms.push((l, omega, weight, weight * area2));
        }
        terms.sort_by(|a, b| b.3.total_cmp(&a.3));
        let mut remaining: f64 = terms.iter().map(|t| t.3).sum();
        let mut value = 0.0;
        let mut odd = 0.0;
        let mut count = 0;
        for &(l, omega, weight, bound) in &terms {
            if remaining <= SKIP_TOLERANCE * value {
                break;
            }
            remaining -= bound;
            let delta = detuning(omega, self.atom.omega_a(), kind);
            let term = weight * time_integral_numeric(sw, delta)?;
            count += 1;
            value += term;
            if l % 2 == 1 {
                odd += term;
            }
        }
        let remaining = remaining.max(0.0);
        let skipped_odd: f64 = terms
            .iter()
            .skip(count)
            .filter(|t| t.0 % 2 == 1)
            .map(|t| t.3)
            .sum();
        if !(value > 0.0) {
            return Err(InteractionError::NonConvergence {
                error_estimate: remaining,
            });
        }
        Ok(OracleProbability {
            value,
            odd_l: odd + skipped_odd,
            time_quadratures: count,
            skipped_bound: remaining,
        })
    }
}

/// One-shot convenience wrapper around [`OraclePipeline::probability`].
///
/// # Errors
/// As [`OraclePipeline::probability`].
pub fn subfield_probability_oracle(
    geom: &CylinderGeometry,
    atom: &GaussianAtom,
    sw: &Switching,
    kind: TransitionKind,
    m1: u32,
) -> Result<OracleProbability> {
    OraclePipeline::new(geom, atom).probability(sw, kind, m1)
}

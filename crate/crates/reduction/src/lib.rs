//! Dimensional reduction of the cylindrical cavity field.
//!
//! A 3D electric mode factorizes as `u_j(y, z) = S_m(y) · U_l(z) · ε_j`, where
//! the ancilla matrix `S_m` carries the cross-sectional dependence
//! (`y = (r, φ)`), `U_l = n_l diag(sin, sin, cos)(k_l z)` the longitudinal one
//! and `ε_j` is the polarization vector; the magnetic modes factorize as
//! `v_j = T_m · V_l · κ_j` with `V_l = n_l diag(cos, cos, sin)`.
//!
//! * Projecting onto the columns of `S_m` over the cross section `Γ` gives the
//!   **1D subfield modes** `u_j(z) = U_l(z) ε_j` ([`reduced_1d`],
//!   [`project_numeric`]).
//! * Projecting onto `U_l` over the axis `S = [0, L]` gives the **2D subfield
//!   modes** `s_j(y)`, `t_j(y)` ([`reduced_2d`]).
//! * [`reconstruct_3d`] reassembles the 3D mode from the factors and
//!   [`gram`] measures orthonormality on the volume, the cross section or the
//!   axis.
//!
//! Writing `ψ_μ` for the normalized transverse scalar solution of
//! polarization `μ` and `a_μ = ∂_rψ_μ/k⊥`, `b_μ = r⁻¹∂_φψ_μ/k⊥`, the ancilla
//! matrix in rows `(r, φ, z)` and columns `(x, y, z)` is
//!
//! ```text
//!        ⎛ (b₁ + a₂)/√2   (a₂ − b₁)/√2   0  ⎞
//! S_m =  ⎜ (b₂ − a₁)/√2   (a₁ + b₂)/√2   0  ⎟ ,   T_m = S_m with 1 ↔ 2.
//!        ⎝      0              0         ψ₂ ⎠
//! ```

mod gram;

pub use gram::{gram, GramDomain, GramMatrix};

use num_complex::Complex64;
use sqed_cavity::{
    polarization_vectors, CVec3, CavityError, CavityMode, CylPoint, CylinderGeometry, ModeIndex,
    Polarization,
};
use sqed_quadrature::{integrate_2d, Domain2d, QuadError, Tolerance};
use std::f64::consts::FRAC_1_SQRT_2;
use thiserror::Error;

/// Errors of the reduction module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    /// Propagated cavity error (invalid mode, out-of-domain point, ...).
    #[error(transparent)]
    Cavity(#[from] CavityError),
    /// A projection or Gram integral missed its accuracy target.
    #[error("quadrature did not converge (error estimate {error_estimate:.3e})")]
    NonConvergence {
        /// Final error estimate.
        error_estimate: f64,
    },
    /// An empty mode set was supplied.
    #[error("mode set is empty")]
    EmptyModeSet,
}

impl<T: std::fmt::Debug> From<QuadError<T>> for ReductionError {
    fn from(e: QuadError<T>) -> Self {
        ReductionError::NonConvergence {
            error_estimate: e.best().map_or(f64::INFINITY, |b| b.error_estimate),
        }
    }
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, ReductionError>;

/// Label of one subfield.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubfieldLabel {
    /// A 1D subfield along the axis, labelled by the transverse pair `m`.
    To1D {
        /// Radial number.
        m1: u32,
        /// Azimuthal number.
        m2: i32,
    },
    /// A 2D subfield on the cross section, labelled by the longitudinal `l`.
    To2D {
        /// Longitudinal number.
        l: u32,
    },
}

impl SubfieldLabel {
    /// The subfield a mode belongs to for the given reduction.
    pub fn of(idx: &ModeIndex, to_1d: bool) -> Self {
        if to_1d {
            SubfieldLabel::To1D {
                m1: idx.m1(),
                m2: idx.m2(),
            }
        } else {
            SubfieldLabel::To2D { l: idx.l() }
        }
    }
}

/// Field kind to project.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    /// Electric modes, projected with `S_m`.
    Electric,
    /// Magnetic modes, projected with `T_m`.
    Magnetic,
}

/// Reduced 1D modes at one axial position (Cartesian polarization basis).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduced1d {
    /// `u_j(z) = U_l(z) ε_j`.
    pub u_z: [f64; 3],
    /// `v_j(z) = V_l(z) κ_j`.
    pub v_z: [f64; 3],
}

fn check_z(geom: &CylinderGeometry, z: f64) -> Result<()> {
    if geom.contains(&CylPoint::new(0.0, 0.0, z)) {
        Ok(())
    } else {
        Err(CavityError::OutOfDomain {
            r: 0.0,
            z,
            radius: geom.radius(),
            length: geom.length(),
        }
        .into())
    }
}

/// Closed-form 1D subfield modes.
///
/// For `l ≥ 1`: `u_{μ1}(z) = L^{−1/2}(sin, −sin, 0)` and
/// `u_{μ2}(z) = (√L |k|)^{−1}(−k_l sin, −k_l sin, √2 k⊥ cos)` (arguments
/// `k_l z`), and likewise for `v` with `sin ↔ cos`.  The constant `l = 0`
/// mode carries the normalization `L^{−1/2}` instead of `√(2/L)`.
///
/// # Errors
/// [`CavityError::OutOfDomain`] for `z ∉ [0, L]`.
pub fn reduced_1d(geom: &CylinderGeometry, idx: &ModeIndex, z: f64) -> Result<Reduced1d> {
    check_z(geom, z)?;
    Ok(reduced_1d_unchecked(geom, idx, z)?)
}

fn reduced_1d_unchecked(
    geom: &CylinderGeometry,
    idx: &ModeIndex,
    z: f64,
) -> std::result::Result<Reduced1d, CavityError> {
    let w = sqed_cavity::wavenumbers(geom, idx)?;
    let pv = polarization_vectors(geom, idx)?;
    let n = sqed_cavity::longitudinal_norm(geom.length(), idx.l());
    let (s, c) = (w.k_long * z).sin_cos();
    let (us, uc) = (n * s, n * c);
    Ok(Reduced1d {
        u_z: [us * pv.epsilon[0], us * pv.epsilon[1], uc * pv.epsilon[2]],
        v_z: [uc * pv.kappa[0], uc * pv.kappa[1], us * pv.kappa[2]],
    })
}

/// Closed-form 2D subfield modes at one cross-sectional point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduced2d {
    /// Electric 2D mode `s_j(r, φ)` (cylindrical components).
    pub s: CVec3,
    /// Magnetic 2D mode `t_j(r, φ)` (cylindrical components).
    pub t: CVec3,
}

/// Closed-form 2D subfield modes:
///
/// ```text
/// s_{μ1} = (b₁, −a₁, 0)                 t_{μ1} = (k_l a₁, k_l b₁, k⊥ ψ₁)/|k|
/// s_{μ2} = (−k_l a₂, −k_l b₂, k⊥ ψ₂)/|k| t_{μ2} = (b₂, −a₂, 0)
/// ```
///
/// so that `u_j = (s_r Z_s, s_φ Z_s, s_z Z_c)` with `Z_s = n_l sin(k_l z)` and
/// `Z_c = n_l cos(k_l z)`.  The `μ2` branch retains its `l`-dependence through
/// `k_l/|k|`.
///
/// # Errors
/// [`CavityError::OutOfDomain`] for `r ∉ [0, R]`.
pub fn reduced_2d(geom: &CylinderGeometry, idx: &ModeIndex, r: f64, phi: f64) -> Result<Reduced2d> {
    if !geom.contains(&CylPoint::new(r, phi, 0.0)) {
        return Err(CavityError::OutOfDomain {
            r,
            z: 0.0,
            radius: geom.radius(),
            length: geom.length(),
        }
        .into());
    }
    let mode = CavityMode::new(geom, *idx)?;
    Ok(reduced_2d_of(&mode, r, phi))
}

/// [`reduced_2d`] for a precomputed mode, without domain check.
pub fn reduced_2d_of(mode: &CavityMode, r: f64, phi: f64) -> Reduced2d {
    let [psi, a, b] = mode.transverse_parts(r, phi);
    let w = mode.waves();
    let k = w.k_abs();
    let (along, across) = (w.k_long / k, w.k_perp / k);
    match mode.index().pol() {
        Polarization::Mu1 => Reduced2d {
            s: [b, -a, Complex64::new(0.0, 0.0)],
            t: [a * along, b * along, psi * across],
        },
        Polarization::Mu2 => Reduced2d {
            s: [-a * along, -b * along, psi * across],
            t: [b, -a, Complex64::new(0.0, 0.0)],
        },
    }
}

/// Ancilla matrices `S_m` and `T_m` (rows `r, φ, z`; columns `x, y, z`) at a
/// cross-sectional point, for transverse label `(m1, m2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ancilla {
    /// Electric ancilla `S_m`.
    pub s: [[Complex64; 3]; 3],
    /// Magnetic ancilla `T_m`.
    pub t: [[Complex64; 3]; 3],
}

/// The two scalar families of one transverse label.
#[derive(Debug, Clone, Copy)]
pub struct AncillaPair {
    mu1: CavityMode,
    mu2: CavityMode,
}

impl AncillaPair {
    /// Precomputes `ψ_{m,μ1}` and `ψ_{m,μ2}` for `m = (m1, m2)`.
    ///
    /// # Errors
    /// Propagates cavity errors.
    pub fn new(geom: &CylinderGeometry, m1: u32, m2: i32) -> Result<Self> {
        // The longitudinal number is irrelevant for the transverse factors.
        Ok(Self {
            mu1: CavityMode::new(geom, ModeIndex::new(m1, m2, 1, Polarization::Mu1)?)?,
            mu2: CavityMode::new(geom, ModeIndex::new(m1, m2, 1, Polarization::Mu2)?)?,
        })
    }

    /// `S_m` and `T_m` at `(r, φ)`.
    pub fn at(&self, r: f64, phi: f64) -> Ancilla {
        let [psi1, a1, b1] = self.mu1.transverse_parts(r, phi);
        let [psi2, a2, b2] = self.mu2.transverse_parts(r, phi);
        let h = FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let build = |pa: Complex64, pb: Complex64, qa: Complex64, qb: Complex64, zz: Complex64| {
            // (pa, pb) from the first family, (qa, qb) from the second.
            [
                [(pb + qa) * h, (qa - pb) * h, z],
                [(qb - pa) * h, (pa + qb) * h, z],
                [z, z, zz],
            ]
        };
        Ancilla {
            s: build(a1, b1, a2, b2, psi2),
            t: build(a2, b2, a1, b1, psi1),
        }
    }
}

fn mat_vec(m: &[[Complex64; 3]; 3], v: &[f64; 3]) -> CVec3 {
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (o, row) in out.iter_mut().zip(m) {
        *o = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
    }
    out
}

fn adjoint_vec(m: &[[Complex64; 3]; 3], v: &CVec3) -> CVec3 {
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (j, o) in out.iter_mut().enumerate() {
        *o = (0..3).map(|i| m[i][j].conj() * v[i]).sum();
    }
    out
}

/// Numerically projects the 3D mode `idx` at axial position `z` onto the
/// ancilla columns of the transverse label `ancilla_m = (m1, m2)`:
/// `∫_Γ S_m† u dA` (electric) or `∫_Γ T_m† v dA` (magnetic), by adaptive 2D
/// quadrature to relative/absolute tolerance `1e-11`.
///
/// For `ancilla_m = (idx.m1, idx.m2)` this reproduces [`reduced_1d`]; for any
/// other label it vanishes.
///
/// # Errors
/// Cavity errors and [`ReductionError::NonConvergence`].
pub fn project_numeric(
    geom: &CylinderGeometry,
    target: FieldKind,
    idx: &ModeIndex,
    ancilla_m: (u32, i32),
    z: f64,
) -> Result<CVec3> {
    check_z(geom, z)?;
    let mode = CavityMode::new(geom, *idx)?;
    let anc = AncillaPair::new(geom, ancilla_m.0, ancilla_m.1)?;
    let integrand = |r: f64, phi: f64| {
        let p = CylPoint::new(r, phi, z);
        let f = mode.fields(&p);
        let a = anc.at(r, phi);
        match target {
            FieldKind::Electric => adjoint_vec(&a.s, &f.u),
            FieldKind::Magnetic => adjoint_vec(&a.t, &f.v),
        }
    };
    let scale = mode.transverse_norm() * mode.longitudinal_norm();
    let tol = Tolerance::new(1e-11, 1e-12 * scale.max(1e-300) * geom.radius());
    let r = integrate_2d(
        integrand,
        Domain2d::Disk {
            radius: geom.radius(),
        },
        tol,
    )?;
    Ok(r.value)
}

/// Reassembles `u = S_m(y) · U_l(z) ε` from the scalar solutions and the 1D
/// subfield mode; identical to the 3D mode up to rounding.
///
/// # Errors
/// [`CavityError::OutOfDomain`] outside the cavity.
pub fn reconstruct_3d(geom: &CylinderGeometry, idx: &ModeIndex, p: &CylPoint) -> Result<CVec3> {
    if !geom.contains(p) {
        return Err(CavityError::OutOfDomain {
            r: p.r,
            z: p.z,
            radius: geom.radius(),
            length: geom.length(),
        }
        .into());
    }
    let anc = AncillaPair::new(geom, idx.m1(), idx.m2())?;
    let red = reduced_1d_unchecked(geom, idx, p.z)?;
    Ok(mat_vec(&anc.at(p.r, p.phi).s, &red.u_z))
}

/// Reassembles the magnetic mode `v = T_m(y) · V_l(z) κ`.
///
/// # Errors
/// As [`reconstruct_3d`].
pub fn reconstruct_3d_magnetic(
    geom: &CylinderGeometry,
    idx: &ModeIndex,
    p: &CylPoint,
) -> Result<CVec3> {
    reconstruct_3d(geom, idx, p)?;
    let anc = AncillaPair::new(geom, idx.m1(), idx.m2())?;
    let red = reduced_1d_unchecked(geom, idx, p.z)?;
    Ok(mat_vec(&anc.at(p.r, p.phi).t, &red.v_z))
}

/// Finite-difference residual of the 1D boundary-value problem,
/// `max_c |(∂_z² + k_l²) u_c(z)| / (k_l² + 1/L²) · √L`, with a fourth-order
/// stencil of step `h`.
///
/// # Errors
/// Cavity errors.
pub fn residual_1d(geom: &CylinderGeometry, idx: &ModeIndex, z: f64, h: f64) -> Result<f64> {
    let w = sqed_cavity::wavenumbers(geom, idx)?;
    let f = |z: f64| reduced_1d_unchecked(geom, idx, z).map(|r| r.u_z);
    let (c, p1, m1, p2, m2) = (
        f(z)?,
        f(z + h)?,
        f(z - h)?,
        f(z + 2.0 * h)?,
        f(z - 2.0 * h)?,
    );
    let kl2 = w.k_long * w.k_long;
    let scale = (kl2 + 1.0 / geom.length().powi(2)) / geom.length().sqrt();
    Ok((0..3)
        .map(|i| {
            let d2 = (-p2[i] + 16.0 * p1[i] - 30.0 * c[i] + 16.0 * m1[i] - m2[i]) / (12.0 * h * h);
            (d2 + kl2 * c[i]).abs()
        })
        .fold(0.0, f64::max)
        / scale)
}

/// Finite-difference residual of the 2D problem `(Δ_Γ + k⊥²) s = 0` on the
/// Cartesian components of `s`, relative to `k⊥² c_{m,μ}`.
///
/// # Errors
/// Cavity errors.
pub fn residual_2d(
    geom: &CylinderGeometry,
    idx: &ModeIndex,
    r: f64,
    phi: f64,
    h: f64,
) -> Result<f64> {
    let mode = CavityMode::new(geom, *idx)?;
    let (x, y) = (r * phi.cos(), r * phi.sin());
    let f = |dx: f64, dy: f64| {
        let p = CylPoint::from_cartesian(x + dx, y + dy, 0.0);
        sqed_cavity::to_cartesian(&reduced_2d_of(&mode, p.r, p.phi).s, p.phi)
    };
    let c = f(0.0, 0.0);
    let mut lap = [Complex64::new(0.0, 0.0); 3];
    for axis in 0..2 {
        let sh = |s: f64| if axis == 0 { f(s, 0.0) } else { f(0.0, s) };
        let (p1, m1, p2, m2) = (sh(h), sh(-h), sh(2.0 * h), sh(-2.0 * h));
        for i in 0..3 {
            lap[i] += (-p2[i] + 16.0 * p1[i] - 30.0 * c[i] + 16.0 * m1[i] - m2[i]) / (12.0 * h * h);
        }
    }
    let k2 = mode.waves().k_perp.powi(2);
    Ok((0..3)
        .map(|i| (lap[i] + c[i] * k2).norm())
        .fold(0.0, f64::max)
        / (k2 * mode.transverse_norm()))
}

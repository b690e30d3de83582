//! Closed-form mode fields and their first derivatives.
//!
//! Every Cartesian-free field component of a cavity mode is a single product
//!
//! ```text
//! coef · R(r) · e^{i m2 φ} · Z(z),
//! R ∈ { J(k⊥r), J'(k⊥r), J(k⊥r)/r },   Z ∈ { n_l sin(k_l z), n_l cos(k_l z) },
//! ```
//!
//! so values and exact first derivatives ("jets") follow from a handful of
//! Bessel identities.  `J(k⊥r)/r` is evaluated as `k⊥(J_{n−1}+J_{n+1})/(2n)`,
//! which makes the `r → 0` limit automatic.

use num_complex::Complex64;
use sqed_specfun::bessel_j_seq;

use crate::{
    longitudinal_norm, transverse_zero, CVec3, CylPoint, CylinderGeometry, ModeIndex, Polarization,
    Result, ScalarModes, WaveNumbers,
};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
enum Radial {
    J,
    Jp,
    JOverR,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Axial {
    Sin,
    Cos,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Term {
    coef: Complex64,
    radial: Radial,
    axial: Axial,
}

/// Radial functions and their r-derivatives at one radius.
#[derive(Debug, Clone, Copy)]
struct RadialValues {
    j: f64,
    jp: f64,
    jr: f64,
    dj: f64,
    djp: f64,
    djr: f64,
}

impl RadialValues {
    fn get(&self, kind: Radial) -> (f64, f64) {
        match kind {
            Radial::J => (self.j, self.dj),
            Radial::Jp => (self.jp, self.djp),
            Radial::JOverR => (self.jr, self.djr),
        }
    }
}

/// Value and first partial derivatives of a complex vector field, all in
/// cylindrical components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldJet {
    /// Field value.
    pub value: CVec3,
    /// `∂_r` of each component.
    pub d_r: CVec3,
    /// `∂_φ` of each component.
    pub d_phi: CVec3,
    /// `∂_z` of each component.
    pub d_z: CVec3,
}

impl FieldJet {
    /// Cylindrical divergence `u_r/r + ∂_r u_r + ∂_φ u_φ / r + ∂_z u_z`
    /// (requires `r > 0`).
    pub fn divergence(&self, r: f64) -> Complex64 {
        self.value[0] / r + self.d_r[0] + self.d_phi[1] / r + self.d_z[2]
    }

    /// Cylindrical curl (requires `r > 0`).
    pub fn curl(&self, r: f64) -> CVec3 {
        [
            self.d_phi[2] / r - self.d_z[1],
            self.d_z[0] - self.d_r[2],
            self.value[1] / r + self.d_r[1] - self.d_phi[0] / r,
        ]
    }
}

/// Electric and magnetic mode values at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeFields {
    /// Electric mode `u`.
    pub u: CVec3,
    /// Magnetic mode `v = ∇×u / |k|`.
    pub v: CVec3,
}

/// A cavity mode with its wavenumbers and normalization precomputed.
///
/// Evaluation methods on this type do not check the domain: the closed forms
/// continue analytically beyond the walls, which finite-difference oracles
/// rely on.  The checked entry points are the free functions of the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityMode {
    idx: ModeIndex,
    waves: WaveNumbers,
    chi: f64,
    c_norm: f64,
    n_long: f64,
    u_terms: [Option<Term>; 3],
    v_terms: [Option<Term>; 3],
}

impl CavityMode {
    /// Precomputes the mode.
    ///
    /// # Errors
    /// Propagates special-function errors.
    pub fn new(geom: &CylinderGeometry, idx: ModeIndex) -> Result<Self> {
        let chi = transverse_zero(&idx)?;
        let waves = crate::wavenumbers(geom, &idx)?;
        let n = idx.m2().unsigned_abs();
        let seq = bessel_j_seq(n + 1, chi)?;
        let (jn, jn1) = (seq[n as usize], seq[n as usize + 1]);
        let r2 = geom.radius() * geom.radius();
        let c_norm = match idx.pol() {
            Polarization::Mu1 => 1.0 / (std::f64::consts::PI * r2 * (jn * jn - jn1 * jn1)).sqrt(),
            Polarization::Mu2 => 1.0 / (std::f64::consts::PI * r2 * jn1 * jn1).sqrt(),
        };
        let n_long = longitudinal_norm(geom.length(), idx.l());
        let (u_terms, v_terms) = build_terms(idx, &waves, c_norm);
        Ok(Self {
            idx,
            waves,
            chi,
            c_norm,
            n_long,
            u_terms,
            v_terms,
        })
    }

    /// The mode label.
    pub fn index(&self) -> ModeIndex {
        self.idx
    }
    /// Wavenumbers and frequency.
    pub fn waves(&self) -> WaveNumbers {
        self.waves
    }
    /// Bessel zero `χ = k⊥ R`.
    pub fn chi(&self) -> f64 {
        self.chi
    }
    /// Transverse normalization constant `c_{m,μ}`.
    pub fn transverse_norm(&self) -> f64 {
        self.c_norm
    }
    /// Longitudinal normalization `n_l`.
    pub fn longitudinal_norm(&self) -> f64 {
        self.n_long
    }

    fn radial(&self, r: f64) -> RadialValues {
        let n = self.idx.m2().unsigned_abs() as i64;
        let k = self.waves.k_perp;
        let x = k * r;
        let seq = bessel_j_seq(n as u32 + 2, x).expect("order validated at construction");
        let jm = |order: i64| -> f64 {
            if order >= 0 {
                seq[order as usize]
            } else if order % 2 == 0 {
                seq[(-order) as usize]
            } else {
                -seq[(-order) as usize]
            }
        };
        let j = jm(n);
        let jp = 0.5 * (jm(n - 1) - jm(n + 1));
        let jpp = 0.25 * (jm(n - 2) - 2.0 * j + jm(n + 2));
        let (jr, djr) = if n == 0 {
            // Only ever multiplied by i·m2 = 0.
            (0.0, 0.0)
        } else {
            let nf = n as f64;
            (
                k * (jm(n - 1) + jm(n + 1)) / (2.0 * nf),
                k * k * (jm(n - 2) - jm(n + 2)) / (4.0 * nf),
            )
        };
        RadialValues {
            j,
            jp,
            jr,
            dj: k * jp,
            djp: k * jpp,
            djr,
        }
    }

    fn axial(&self, z: f64, kind: Axial) -> (f64, f64) {
        let kl = self.waves.k_long;
        let (s, c) = (kl * z).sin_cos();
        match kind {
            Axial::Sin => (self.n_long * s, self.n_long * kl * c),
            Axial::Cos => (self.n_long * c, -self.n_long * kl * s),
        }
    }

    fn phase(&self, phi: f64) -> Complex64 {
        Complex64::from_polar(1.0, f64::from(self.idx.m2()) * phi)
    }

    fn jet_of(
        &self,
        terms: &[Option<Term>; 3],
        rv: &RadialValues,
        e: Complex64,
        z: f64,
    ) -> FieldJet {
        let mut jet = FieldJet {
            value: [ZERO; 3],
            d_r: [ZERO; 3],
            d_phi: [ZERO; 3],
            d_z: [ZERO; 3],
        };
        let im = Complex64::new(0.0, f64::from(self.idx.m2()));
        for (c, term) in terms.iter().enumerate() {
            let Some(t) = term else { continue };
            let (rad, drad) = rv.get(t.radial);
            let (ax, dax) = self.axial(z, t.axial);
            let base = t.coef * e;
            jet.value[c] = base * (rad * ax);
            jet.d_r[c] = base * (drad * ax);
            jet.d_phi[c] = base * im * (rad * ax);
            jet.d_z[c] = base * (rad * dax);
        }
        jet
    }

    /// Electric and magnetic fields at `p` (no domain check).
    pub fn fields(&self, p: &CylPoint) -> ModeFields {
        let (u, v) = self.jets(p);
        ModeFields {
            u: u.value,
            v: v.value,
        }
    }

    /// Jets of `u` and `v` at `p` (no domain check).
    pub fn jets(&self, p: &CylPoint) -> (FieldJet, FieldJet) {
        let rv = self.radial(p.r);
        let e = self.phase(p.phi);
        (
            self.jet_of(&self.u_terms, &rv, e, p.z),
            self.jet_of(&self.v_terms, &rv, e, p.z),
        )
    }

    /// Electric field only (no domain check).
    pub fn electric(&self, p: &CylPoint) -> CVec3 {
        let rv = self.radial(p.r);
        let e = self.phase(p.phi);
        self.jet_of(&self.u_terms, &rv, e, p.z).value
    }

    /// Scalar solutions at `p` (no domain check).
    pub fn scalar(&self, p: &CylPoint) -> ScalarModes {
        let rv = self.radial(p.r);
        let (s, c) = (self.waves.k_long * p.z).sin_cos();
        ScalarModes {
            psi_transverse: self.phase(p.phi) * (self.c_norm * rv.j),
            psi_long_mu1: self.n_long * s,
            psi_long_mu2: self.n_long * c,
        }
    }

    /// The transverse scalar function and its scaled gradient at `(r, φ)`:
    /// `(ψ, ∂_rψ / k⊥, r⁻¹∂_φψ / k⊥)` (no domain check).
    pub fn transverse_parts(&self, r: f64, phi: f64) -> [Complex64; 3] {
        let rv = self.radial(r);
        let e = self.phase(phi) * self.c_norm;
        let im_over_k = Complex64::new(0.0, f64::from(self.idx.m2()) / self.waves.k_perp);
        [e * rv.j, e * rv.jp, e * im_over_k * rv.jr]
    }
}

fn build_terms(idx: ModeIndex, w: &WaveNumbers, c: f64) -> ([Option<Term>; 3], [Option<Term>; 3]) {
    let k = w.k_abs();
    let imk = Complex64::new(0.0, f64::from(idx.m2()) / w.k_perp);
    let re = |x: f64| Complex64::new(x, 0.0);
    let t = |coef: Complex64, radial, axial| {
        Some(Term {
            coef,
            radial,
            axial,
        })
    };
    let along = w.k_long / k;
    let across = w.k_perp / k;
    match idx.pol() {
        Polarization::Mu1 => (
            [
                t(imk * c, Radial::JOverR, Axial::Sin),
                t(re(-c), Radial::Jp, Axial::Sin),
                None,
            ],
            [
                t(re(along * c), Radial::Jp, Axial::Cos),
                t(imk * (along * c), Radial::JOverR, Axial::Cos),
                t(re(across * c), Radial::J, Axial::Sin),
            ],
        ),
        Polarization::Mu2 => (
            [
                t(re(-along * c), Radial::Jp, Axial::Sin),
                t(imk * (-along * c), Radial::JOverR, Axial::Sin),
                t(re(across * c), Radial::J, Axial::Cos),
            ],
            [
                t(imk * c, Radial::JOverR, Axial::Cos),
                t(re(-c), Radial::Jp, Axial::Cos),
                None,
            ],
        ),
    }
}

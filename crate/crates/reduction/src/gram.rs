//! Gram matrices of mode families on the volume, the cross section or the
//! axis, evaluated on tensor grids.
//!
//! Radial and axial directions use Gauss–Legendre nodes and the azimuth the
//! periodic trapezoid rule (exact for the trigonometric azimuthal factors once
//! the grid resolves the highest harmonic).  Every matrix is computed on a base
//! grid and on a grid with doubled resolution; the larger entrywise difference
//! is reported as the error estimate and the refined result is returned.

use num_complex::Complex64;
use rayon::prelude::*;
use sqed_cavity::{CVec3, CavityMode, CylPoint, CylinderGeometry, ModeIndex};
use sqed_quadrature::gauss_legendre_on;
use std::f64::consts::TAU;

use crate::{reduced_1d_unchecked, reduced_2d_of, ReductionError, Result};

/// Where the inner products are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramDomain {
    /// `∫_V u_i* · u_j dV` of the 3D modes.
    Volume,
    /// `∫_Γ s_i* · s_j dA` of the 2D subfield modes.
    CrossSection,
    /// `∫_0^L u_i(z) · u_j(z) dz` of the 1D subfield modes.
    Axis,
}

/// Gram matrices of the electric and magnetic families.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    /// Electric inner products (row-major, `n × n`).
    pub electric: Vec<Vec<Complex64>>,
    /// Magnetic inner products (row-major, `n × n`).
    pub magnetic: Vec<Vec<Complex64>>,
    /// Largest entrywise change between the base and the refined grid.
    pub error_estimate: f64,
}

impl GramMatrix {
    /// Largest entrywise deviation of both families from the identity.
    pub fn max_identity_deviation(&self) -> f64 {
        [&self.electric, &self.magnetic]
            .iter()
            .flat_map(|m| {
                m.iter().enumerate().flat_map(|(i, row)| {
                    row.iter().enumerate().map(move |(j, g)| {
                        let want = if i == j { 1.0 } else { 0.0 };
                        (g - want).norm()
                    })
                })
            })
            .fold(0.0, f64::max)
    }
}

/// Grid resolution (before doubling) for a mode set.
#[derive(Debug, Clone, Copy)]
struct Resolution {
    radial: usize,
    azimuthal: usize,
    axial: usize,
}

impl Resolution {
    fn for_modes(modes: &[ModeIndex]) -> Self {
        let m1 = modes.iter().map(ModeIndex::m1).max().unwrap_or(1) as usize;
        let m2 = modes
            .iter()
            .map(|m| m.m2().unsigned_abs())
            .max()
            .unwrap_or(0) as usize;
        let l = modes.iter().map(ModeIndex::l).max().unwrap_or(0) as usize;
        Self {
            radial: 16 + 4 * m1 + 2 * m2,
            azimuthal: 4 * m2 + 8,
            axial: 12 + 2 * l,
        }
    }

    fn doubled(self) -> Self {
        Self {
            radial: 2 * self.radial,
            azimuthal: 2 * self.azimuthal,
            axial: 2 * self.axial,
        }
    }
}

type Matrix = Vec<Vec<Complex64>>;

fn zero_matrix(n: usize) -> Matrix {
    vec![vec![Complex64::new(0.0, 0.0); n]; n]
}

fn add_matrix(mut a: Matrix, b: &Matrix) -> Matrix {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            *x += y;
        }
    }
    a
}

/// Adds `w · vals_i* · vals_j` to `acc`.
fn accumulate(acc: &mut Matrix, vals: &[CVec3], w: f64) {
    for (i, vi) in vals.iter().enumerate() {
        for (j, vj) in vals.iter().enumerate() {
            let dot: Complex64 = vi.iter().zip(vj).map(|(a, b)| a.conj() * b).sum();
            acc[i][j] += dot * w;
        }
    }
}

fn real3(v: [f64; 3]) -> CVec3 {
    v.map(|x| Complex64::new(x, 0.0))
}

/// Sample of both families at one quadrature node.
type Sampler<'a> = dyn Fn(usize, &mut Vec<CVec3>, &mut Vec<CVec3>) + Sync + 'a;

fn tensor_gram(
    n: usize,
    nodes: usize,
    weight: &(dyn Fn(usize) -> f64 + Sync),
    sample: &Sampler,
) -> (Matrix, Matrix) {
    (0..nodes)
        .into_par_iter()
        .fold(
            || (zero_matrix(n), zero_matrix(n), Vec::new(), Vec::new()),
            |(mut e, mut m, mut ue, mut um), k| {
                ue.clear();
                um.clear();
                sample(k, &mut ue, &mut um);
                let w = weight(k);
                accumulate(&mut e, &ue, w);
                accumulate(&mut m, &um, w);
                (e, m, ue, um)
            },
        )
        .map(|(e, m, _, _)| (e, m))
        .reduce(
            || (zero_matrix(n), zero_matrix(n)),
            |(e1, m1), (e2, m2)| (add_matrix(e1, &e2), add_matrix(m1, &m2)),
        )
}

fn gram_at(
    geom: &CylinderGeometry,
    modes: &[ModeIndex],
    cavity_modes: &[CavityMode],
    domain: GramDomain,
    res: Resolution,
) -> (Matrix, Matrix) {
    let n = modes.len();
    let (rn, rw) = gauss_legendre_on(res.radial, 0.0, geom.radius());
    let (zn, zw) = gauss_legendre_on(res.axial, 0.0, geom.length());
    let na = res.azimuthal;
    let dphi = TAU / na as f64;
    match domain {
        GramDomain::Volume => {
            let nodes = rn.len() * na * zn.len();
            let split = |k: usize| (k % rn.len(), (k / rn.len()) % na, k / (rn.len() * na));
            let weight = |k: usize| {
                let (i, _, l) = split(k);
                rw[i] * rn[i] * dphi * zw[l]
            };
            let sample = |k: usize, ue: &mut Vec<CVec3>, um: &mut Vec<CVec3>| {
                let (i, j, l) = split(k);
                let p = CylPoint::new(rn[i], j as f64 * dphi, zn[l]);
                for mode in cavity_modes {
                    let f = mode.fields(&p);
                    ue.push(f.u);
                    um.push(f.v);
                }
            };
            tensor_gram(n, nodes, &weight, &sample)
        }
        GramDomain::CrossSection => {
            let nodes = rn.len() * na;
            let weight = |k: usize| rw[k % rn.len()] * rn[k % rn.len()] * dphi;
            let sample = |k: usize, ue: &mut Vec<CVec3>, um: &mut Vec<CVec3>| {
                let (r, phi) = (rn[k % rn.len()], (k / rn.len()) as f64 * dphi);
                for mode in cavity_modes {
                    let red = reduced_2d_of(mode, r, phi);
                    ue.push(red.s);
                    um.push(red.t);
                }
            };
            tensor_gram(n, nodes, &weight, &sample)
        }
        GramDomain::Axis => {
            let weight = |k: usize| zw[k];
            let sample = |k: usize, ue: &mut Vec<CVec3>, um: &mut Vec<CVec3>| {
                for idx in modes {
                    let red = reduced_1d_unchecked(geom, idx, zn[k]).expect("modes validated");
                    ue.push(real3(red.u_z));
                    um.push(real3(red.v_z));
                }
            };
            tensor_gram(n, zn.len(), &weight, &sample)
        }
    }
}

/// Gram matrices of `modes` on `domain`, computed on two grids in parallel.
///
/// For the volume the 3D modes are used, for the cross section the 2D
/// subfield modes `s`, `t`, and for the axis the 1D subfield modes.
///
/// # Errors
/// [`ReductionError::EmptyModeSet`]; cavity errors for invalid modes.
pub fn gram(
    geom: &CylinderGeometry,
    modes: &[ModeIndex],
    domain: GramDomain,
) -> Result<GramMatrix> {
    if modes.is_empty() {
        return Err(ReductionError::EmptyModeSet);
    }
    let cavity_modes = modes
        .iter()
        .map(|m| CavityMode::new(geom, *m))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let base = Resolution::for_modes(modes);
    let (e0, m0) = gram_at(geom, modes, &cavity_modes, domain, base);
    let (e1, m1) = gram_at(geom, modes, &cavity_modes, domain, base.doubled());
    let diff = |a: &Matrix, b: &Matrix| {
        a.iter()
            .flatten()
            .zip(b.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    };
    Ok(GramMatrix {
        error_estimate: diff(&e0, &e1).max(diff(&m0, &m1)),
        electric: e1,
        magnetic: m1,
    })
}

//! Subfield transition probabilities, truncation errors and the subfield of
//! maximal probability, all in the log domain.
//!
//! Inserting the closed-form overlap into the first-order amplitude gives,
//! for even `l` (odd `l` vanish),
//!
//! ```text
//! |c_(m1,0)|² = P₀ Σ_{l even} w_l χ² e^{−χ²σ²/2R² − (k_lσ)²/2} |f(Δ_{m,l})|² / (ω_{m,l} J₁²(χ)),
//! P₀ = (e c σ)² / (2π ε₀ ħ R⁴ L),   k_l = πl/L,   w_0 = 1/2,  w_l = 1,
//! ```
//!
//! where `χ = χ_{m1}` is the `m1`-th zero of `J₀` and the weight `1/2` of
//! `l = 0` reflects the normalization `√(1/L)` of the constant longitudinal
//! function.
//!
//! **Longitudinal truncation.** Once `Δ` is past resonance it grows with `l`,
//! so the window is bounded by its value at the last summed `l₀` (Gaussian)
//! or by `1/(Δ_{l₀}T)²` (top hat), `1/ω` by `1/ω_{l₀}`, and the Gaussian tail
//! by `Σ_{j≥1} e^{−a(l₀+2j)²} ≤ min(√π/(4√a), e^{−al₀²}/(4al₀))` with
//! `a = (πσ/L)²/2`.  The sum stops when this bound is below
//! [`L_TAIL_TOLERANCE`] times the partial sum.
//!
//! **Subfield truncation.** Past resonance in `m1` the same majorants at
//! `l = 0` and `Σ_l w_l e^{−al²} ≤ 1/2 + √π/(4√a)` give an envelope
//! `env(m1) ≥ |c_(m1,0)|²`.  The envelope is summed explicitly until its
//! terms have dropped by twenty orders of magnitude with a consecutive ratio
//! below `1/2`; the remainder is bounded geometrically.

use sqed_cavity::CylinderGeometry;
use std::f64::consts::{PI, SQRT_2};

use crate::overlap::TransverseData;
use crate::window::{log_time_window, SwitchingKind};
use crate::{detuning, GaussianAtom, InteractionError, LogSum, Result, Switching, TransitionKind};

/// Relative tail at which the longitudinal sum of one subfield is cut.
pub const L_TAIL_TOLERANCE: f64 = 1e-6;
/// Relative tail at which the sum over subfields is cut.
pub const M_TAIL_TOLERANCE: f64 = 1e-4;

/// Budget of longitudinal terms per subfield.
const MAX_L_TERMS: u64 = 200_000_000;
/// Largest radial number ever summed.
const MAX_M1: u32 = 100_000;

/// `P₀ = (e c σ)² / (2π ε₀ ħ R⁴ L)` in s⁻³; multiplied by
/// `χ²T²/(ω J₁²)` it gives a dimensionless probability.
pub fn probability_prefactor(geom: &CylinderGeometry, atom: &GaussianAtom) -> f64 {
    let k = geom.constants();
    let r = geom.radius();
    (k.e * k.c * atom.sigma()).powi(2) / (2.0 * PI * k.eps0 * k.hbar * r.powi(4) * geom.length())
}

/// Shared parameters of one probability evaluation.
struct Context {
    c: f64,
    radius: f64,
    length: f64,
    sigma: f64,
    omega_a: f64,
    kind: TransitionKind,
    sw: Switching,
    /// `a = (πσ/L)²/2`.
    a: f64,
    log_pref: f64,
}

impl Context {
    fn new(
        geom: &CylinderGeometry,
        atom: &GaussianAtom,
        sw: &Switching,
        kind: TransitionKind,
    ) -> Result<Self> {
        if !atom.is_centered(geom) {
            return Err(InteractionError::InvalidParameter(
                "the closed-form probabilities assume the atom at the cavity centre".into(),
            ));
        }
        let sigma = atom.sigma();
        Ok(Self {
            c: geom.constants().c,
            radius: geom.radius(),
            length: geom.length(),
            sigma,
            omega_a: atom.omega_a(),
            kind,
            sw: *sw,
            a: 0.5 * (PI * sigma / geom.length()).powi(2),
            log_pref: probability_prefactor(geom, atom).ln(),
        })
    }

    /// `ln(P₀ χ² e^{−χ²σ²/2R²} / J₁²)`, the `l`-independent part.
    fn log_base(&self, td: &TransverseData) -> f64 {
        self.log_pref + 2.0 * td.chi.ln()
            - 0.5 * (td.chi * self.sigma / self.radius).powi(2)
            - 2.0 * td.j1.abs().ln()
    }

    fn omega(&self, k_perp: f64, l: u64) -> f64 {
        self.c * k_perp.hypot(PI * l as f64 / self.length)
    }

    /// Whether `Δ` increases with frequency from here on.
    fn past_resonance(&self, delta: f64) -> bool {
        delta >= 0.0
    }

    /// Monotone majorant of `ln |f(Δ')|²` for all `Δ' ≥ Δ ≥ 0`.
    fn log_window_envelope(&self, delta: f64) -> f64 {
        let t = self.sw.t();
        match self.sw.kind() {
            SwitchingKind::Gaussian => log_time_window(&self.sw, delta),
            SwitchingKind::TopHat => 2.0 * t.ln() + (-2.0 * (delta * t).ln()).min(0.0),
        }
    }

    /// `ln` of `Σ_{j≥1} e^{−a(l₀+2j)²}` bounded from above.
    fn log_gauss_tail(&self, l0: u64) -> f64 {
        let a = self.a;
        let whole = (PI.sqrt() / (4.0 * a.sqrt())).ln();
        if l0 == 0 {
            whole
        } else {
            let l = l0 as f64;
            whole.min(-a * l * l - (4.0 * a * l).ln())
        }
    }

    /// Envelope `ln env(m1) ≥ ln |c_(m1,0)|²`, valid when the subfield is
    /// past resonance at `l = 0`; `None` otherwise.
    fn log_envelope(&self, m1: u32) -> Result<Option<f64>> {
        let td = TransverseData::new(m1)?;
        let omega = self.omega(td.chi / self.radius, 0);
        let delta = detuning(omega, self.omega_a, self.kind);
        if !self.past_resonance(delta) {
            return Ok(None);
        }
        let g = 0.5 + PI.sqrt() / (4.0 * self.a.sqrt());
        Ok(Some(
            self.log_base(&td) - omega.ln() + self.log_window_envelope(delta) + g.ln(),
        ))
    }
}

/// Probability of one subfield.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubfieldTerm {
    /// Radial number of the subfield.
    pub m1: u32,
    /// `ln |c_(m1,0)|²`.
    pub log_c_abs2: f64,
    /// Number of (even) longitudinal terms summed.
    pub l_terms: u64,
    /// Certified bound on the neglected longitudinal tail, relative to the
    /// returned value.
    pub l_tail_bound: f64,
}

impl SubfieldTerm {
    /// `|c_(m1,0)|²` (may underflow to zero; see [`SubfieldTerm::log_c_abs2`]).
    pub fn c_abs2(&self) -> f64 {
        self.log_c_abs2.exp()
    }
}

fn subfield_log(ctx: &Context, m1: u32) -> Result<SubfieldTerm> {
    let td = TransverseData::new(m1)?;
    let k_perp = td.chi / ctx.radius;
    let base = ctx.log_base(&td);
    let log_tol = L_TAIL_TOLERANCE.ln();
    let mut acc = LogSum::new();
    let mut best_rel = f64::INFINITY;
    let mut l: u64 = 0;
    let mut count: u64 = 0;
    loop {
        let omega = ctx.omega(k_perp, l);
        let delta = detuning(omega, ctx.omega_a, ctx.kind);
        let weight = if l == 0 { 0.5f64.ln() } else { 0.0 };
        let lf = l as f64;
        acc.add(base + weight - ctx.a * lf * lf - omega.ln() + log_time_window(&ctx.sw, delta));
        count += 1;
        if ctx.past_resonance(delta) && (count.is_multiple_of(8) || count < 8) {
            let tail = base - omega.ln() + ctx.log_window_envelope(delta) + ctx.log_gauss_tail(l);
            let rel = tail - acc.value();
            best_rel = best_rel.min(rel);
            if rel <= log_tol {
                return Ok(SubfieldTerm {
                    m1,
                    log_c_abs2: acc.value(),
                    l_terms: count,
                    l_tail_bound: rel.exp(),
                });
            }
        }
        if count >= MAX_L_TERMS {
            return Err(InteractionError::TailBound {
                series: "longitudinal",
                achieved: best_rel.exp(),
                target: L_TAIL_TOLERANCE,
            });
        }
        l += 2;
    }
}

/// `|c_(m1,0),(±)|²` of one subfield from the closed-form overlaps and
/// windows, with the longitudinal sum truncated by a certified tail bound.
///
/// # Errors
/// [`InteractionError::InvalidParameter`] for an off-centre atom;
/// [`InteractionError::TailBound`] if the longitudinal sum cannot be
/// certified within the term budget.
pub fn subfield_probability(
    geom: &CylinderGeometry,
    atom: &GaussianAtom,
    sw: &Switching,
    kind: TransitionKind,
    m1: u32,
) -> Result<SubfieldTerm> {
    let ctx = Context::new(geom, atom, sw, kind)?;
    subfield_log(&ctx, m1)
}

/// Subfield probabilities `m1 = 1, 2, …` up to a certified truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// One entry per radial number, starting at `m1 = 1`.
    pub terms: Vec<SubfieldTerm>,
    /// Bound on `Σ_{m1 > last} |c_(m1,0)|²`, relative to the computed total.
    pub tail_bound: f64,
}

impl Spectrum {
    /// `ln Σ |c_(m1,0)|²` over the computed terms.
    pub fn log_total(&self) -> f64 {
        let mut s = LogSum::new();
        for t in &self.terms {
            s.add(t.log_c_abs2);
        }
        s.value()
    }

    /// Radial number of the largest subfield probability.
    pub fn argmax(&self) -> u32 {
        self.terms
            .iter()
            .max_by(|a, b| a.log_c_abs2.total_cmp(&b.log_c_abs2))
            .map_or(1, |t| t.m1)
    }
}

/// Lazily extended envelope of the subfield tail.
struct Envelope {
    /// `ln env(m1)` for `m1 = 1, 2, …` (`None` before resonance).
    values: Vec<Option<f64>>,
}

impl Envelope {
    fn get(&mut self, ctx: &Context, m1: u32) -> Result<Option<f64>> {
        while self.values.len() < m1 as usize {
            let next = self.values.len() as u32 + 1;
            self.values.push(ctx.log_envelope(next)?);
        }
        Ok(self.values[m1 as usize - 1])
    }

    /// `ln Σ_{m1 > m} env(m1)`, or `None` if `m` is not past resonance.
    fn tail(&mut self, ctx: &Context, m: u32) -> Result<Option<f64>> {
        if self.get(ctx, m)?.is_none() {
            return Ok(None);
        }
        let mut acc = LogSum::new();
        let mut prev = f64::NEG_INFINITY;
        let mut k = m + 1;
        loop {
            if k > MAX_M1 {
                return Err(InteractionError::TailBound {
                    series: "subfield",
                    achieved: f64::INFINITY,
                    target: M_TAIL_TOLERANCE,
                });
            }
            let e = self.get(ctx, k)?.expect("envelope stays past resonance");
            acc.add(e);
            let log_ratio = e - prev;
            if log_ratio < 0.5f64.ln() && e < acc.value() + (1e-20f64).ln() {
                // Geometric remainder e·r/(1 − r) with r ≤ 1/2.
                let r = log_ratio.exp();
                acc.add(e + (r / (1.0 - r)).ln());
                return Ok(Some(acc.value()));
            }
            prev = e;
            k += 1;
        }
    }
}

/// Computes subfields `m1 = 1, 2, …` until `stop(terms, ln tail)` accepts;
/// `stop` is only consulted from `min_m1` on and once the subfield tail is
/// certified.
fn walk<F>(ctx: &Context, min_m1: u32, mut stop: F) -> Result<Spectrum>
where
    F: FnMut(&[SubfieldTerm], f64) -> bool,
{
    let mut env = Envelope { values: Vec::new() };
    let mut terms = Vec::new();
    for m in 1..=MAX_M1 {
        terms.push(subfield_log(ctx, m)?);
        if m < min_m1 {
            continue;
        }
        if let Some(log_tail) = env.tail(ctx, m)? {
            if stop(&terms, log_tail) {
                let total = Spectrum {
                    terms,
                    tail_bound: 0.0,
                };
                let tail_bound = (log_tail - total.log_total()).exp();
                return Ok(Spectrum {
                    tail_bound,
                    ..total
                });
            }
        }
    }
    Err(InteractionError::TailBound {
        series: "subfield",
        achieved: f64::INFINITY,
        target: M_TAIL_TOLERANCE,
    })
}

fn log_sum<'a>(terms: impl Iterator<Item = &'a SubfieldTerm>) -> f64 {
    let mut s = LogSum::new();
    for t in terms {
        s.add(t.log_c_abs2);
    }
    s.value()
}

/// All subfield probabilities up to a certified relative tail of
/// [`M_TAIL_TOLERANCE`], computing at least `min_m1` subfields.  The tail is
/// also below the largest computed term, so [`Spectrum::argmax`] is exact.
///
/// # Errors
/// As [`subfield_probability`]; [`InteractionError::TailBound`] if the
/// subfield sum cannot be certified.
pub fn subfield_spectrum(
    geom: &CylinderGeometry,
    atom: &GaussianAtom,
    sw: &Switching,
    kind: TransitionKind,
    min_m1: u32,
) -> Result<Spectrum> {
    let ctx = Context::new(geom, atom, sw, kind)?;
    let log_tol = M_TAIL_TOLERANCE.ln();
    walk(&ctx, min_m1.max(1), |terms, log_tail| {
        let total = log_sum(terms.iter());
        let top = terms
            .iter()
            .map(|t| t.log_c_abs2)
            .fold(f64::NEG_INFINITY, f64::max);
        log_tail <= total + log_tol && log_tail < top
    })
}

/// A set `N` of radial numbers (the azimuthal number is fixed to zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubfieldSet {
    m1: Vec<u32>,
}

impl SubfieldSet {
    /// A set from strictly increasing positive radial numbers.
    ///
    /// # Errors
    /// [`InteractionError::InvalidSet`] if empty, unordered or containing 0.
    pub fn new(m1: Vec<u32>) -> Result<Self> {
        if m1.is_empty() {
            return Err(InteractionError::InvalidSet("the set is empty".into()));
        }
        if m1[0] == 0 {
            return Err(InteractionError::InvalidSet(
                "radial numbers start at 1".into(),
            ));
        }
        if m1.windows(2).any(|w| w[0] >= w[1]) {
            return Err(InteractionError::InvalidSet(
                "radial numbers must be strictly increasing".into(),
            ));
        }
        Ok(Self { m1 })
    }
    /// The set `{1, …, n}`.
    ///
    /// # Errors
    /// As [`SubfieldSet::new`] for `n = 0`.
    pub fn first(n: u32) -> Result<Self> {
        Self::new((1..=n).collect())
    }
    /// The single subfield `{m1}`.
    ///
    /// # Errors
    /// As [`SubfieldSet::new`] for `m1 = 0`.
    pub fn single(m1: u32) -> Result<Self> {
        Self::new(vec![m1])
    }
    /// The radial numbers.
    pub fn values(&self) -> &[u32] {
        &self.m1
    }
    /// Number of subfields.
    pub fn len(&self) -> usize {
        self.m1.len()
    }
    /// Always false (sets are nonempty by construction).
    pub fn is_empty(&self) -> bool {
        self.m1.is_empty()
    }
    /// Membership test.
    pub fn contains(&self, m1: u32) -> bool {
        self.m1.binary_search(&m1).is_ok()
    }
    fn max(&self) -> u32 {
        *self.m1.last().expect("nonempty")
    }
}

/// Full and truncated probabilities and the relative truncation error.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionSet {
    /// `P_N = Σ_{m1∈N} |c_(m1,0)|²`.
    pub p_n: f64,
    /// `P` summed over all subfields up to the certified tail.
    pub p_full: f64,
    /// `δ_N = |P − P_N| / P`.
    pub delta_n: f64,
    /// `ln P_N`.
    pub log_p_n: f64,
    /// `ln P`.
    pub log_p_full: f64,
    /// `ln δ_N` (`−∞` when `N` holds every subfield that contributes).
    pub log_delta_n: f64,
    /// Number of subfields summed explicitly.
    pub m1_summed: u32,
    /// Bound on the neglected subfield tail relative to `P`.
    pub tail_bound: f64,
}

/// Probabilities and truncation error of the subfield set `set`.
///
/// The full sum is extended until the certified tail is below
/// [`M_TAIL_TOLERANCE`] relative to `P` and to `P − P_N`, so that `δ_N`
/// itself carries that relative accuracy.
///
/// # Errors
/// As [`subfield_spectrum`].
pub fn transition_set(
    geom: &CylinderGeometry,
    atom: &GaussianAtom,
    sw: &Switching,
    kind: TransitionKind,
    set: &SubfieldSet,
) -> Result<TransitionSet> {
    let ctx = Context::new(geom, atom, sw, kind)?;
    let log_tol = M_TAIL_TOLERANCE.ln();
    // At least one subfield outside the set is computed, so that `δ_N` is
    // resolved even when it lies far below the certified tail tolerance.
    let spectrum = walk(&ctx, set.max() + 1, |terms, log_tail| {
        let total = log_sum(terms.iter());
        let outside = log_sum(terms.iter().filter(|t| !set.contains(t.m1)));
        log_tail <= total + log_tol
            && (outside == f64::NEG_INFINITY || log_tail <= outside + log_tol)
    })?;
    let log_p_full = spectrum.log_total();
    let log_p_n = log_sum(spectrum.terms.iter().filter(|t| set.contains(t.m1)));
    let log_out = log_sum(spectrum.terms.iter().filter(|t| !set.contains(t.m1)));
    let log_delta_n = log_out - log_p_full;
    Ok(TransitionSet {
        p_n: log_p_n.exp(),
        p_full: log_p_full.exp(),
        delta_n: log_delta_n.exp(),
        log_p_n,
        log_p_full,
        log_delta_n,
        m1_summed: spectrum.terms.len() as u32,
        tail_bound: spectrum.tail_bound,
    })
}

/// Location of the largest subfield probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxSubfield {
    /// Argmax over `m1` of `|c_(m1,0)|²` (Gaussian switching).
    pub empirical: u32,
    /// Large-`m1` estimate
    /// `4 / (b + √(32π²q + b²))`, `b = 2π²q ± πτ²/Ω̃`, with
    /// `q = (σ/2R)² + (cT/2R)²`, `τ = Ω_A T`, `Ω̃ = Ω_A R/c`.  As `τ → 0`
    /// it levels off at the geometric estimate, so it decreases with `τ`
    /// only where that plateau lies above the resonant index.
    pub asymptotic: f64,
    /// Its optical-resonator limit for emission, `2Ω̃/(πτ²)`.
    pub asymptotic_simplified: f64,
    /// Geometric estimate `2R/(π√2σ)`, valid below resonance.
    pub geometric: f64,
    /// Whether `q χ² > π` holds at the empirical argmax, the regime of the
    /// asymptotic estimate.
    pub in_asymptotic_regime: bool,
}

/// The subfield of maximal probability for Gaussian switching of width `t`,
/// with the closed-form estimates.
///
/// # Errors
/// As [`subfield_spectrum`].
pub fn max_subfield(
    geom: &CylinderGeometry,
    atom: &GaussianAtom,
    t: f64,
    kind: TransitionKind,
) -> Result<MaxSubfield> {
    let sw = Switching::gaussian(t)?;
    let spectrum = subfield_spectrum(geom, atom, &sw, kind, 1)?;
    let empirical = spectrum.argmax();
    let (r, s, c) = (geom.radius(), atom.sigma(), geom.constants().c);
    let q = (s / (2.0 * r)).powi(2) + (c * t / (2.0 * r)).powi(2);
    let tau = atom.omega_a() * t;
    let omega_tilde = atom.omega_a() * r / c;
    let b = 2.0 * PI * PI * q + kind.sign() * PI * tau * tau / omega_tilde;
    let asymptotic = 4.0 / (b + (32.0 * PI * PI * q + b * b).sqrt());
    let chi = TransverseData::new(empirical)?.chi;
    Ok(MaxSubfield {
        empirical,
        asymptotic,
        asymptotic_simplified: 2.0 * omega_tilde / (PI * tau * tau),
        geometric: 2.0 * r / (PI * SQRT_2 * s),
        in_asymptotic_regime: q * chi * chi > PI,
    })
}

//! Globally adaptive 7/15-point Gauss–Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{QuadError, QuadResult, QuadValue, Tolerance};

/// Kronrod abscissae on [0, 1] (the rule is symmetric); odd indices are the
/// embedded 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
/// Gauss weights for `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Configuration of the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adaptive {
    /// Accuracy target.
    pub tol: Tolerance,
    /// Maximum bisection depth of any subinterval; intervals reaching it are
    /// frozen and, if the target is still missed, the result is reported as
    /// [`QuadError::NonConvergence`].
    pub max_depth: u32,
    /// Hard cap on the number of live subintervals.
    pub max_intervals: usize,
}

impl Adaptive {
    /// Default limits (depth 60, 100 000 intervals) with the given tolerance.
    pub fn new(tol: Tolerance) -> Self {
        Self {
            tol,
            max_depth: 60,
            max_intervals: 100_000,
        }
    }

    /// Integrates `f` over `[a, b]`; `b` may be `+∞` and `a` may be `−∞`.
    ///
    /// # Errors
    /// See [`integrate_1d`].
    pub fn integrate<T, F>(&self, f: F, a: f64, b: f64) -> Result<QuadResult<T>, QuadError<T>>
    where
        T: QuadValue + std::fmt::Debug,
        F: Fn(f64) -> T,
    {
        self.integrate_with_breaks(f, &[a, b])
    }

    /// Integrates over `[points[0], points[last]]`, splitting at every
    /// interior point first (kinks, peaks, known oscillation scales).
    ///
    /// # Errors
    /// See [`integrate_1d_with_breaks`].
    pub fn integrate_with_breaks<T, F>(
        &self,
        f: F,
        points: &[f64],
    ) -> Result<QuadResult<T>, QuadError<T>>
    where
        T: QuadValue + std::fmt::Debug,
        F: Fn(f64) -> T,
    {
        self.tol.validate()?;
        let segments = segments(points)?;
        let mut state = State::new(self);
        for (lo, hi, map) in segments {
            state.seed(&f, lo, hi, map);
        }
        state.run(&f)
    }
}

/// Adaptive 1D integration of `f` over `[a, b]`.
///
/// Infinite endpoints are handled by `x = a + t/(1 − t)` (and its mirror
/// image), mapping the half line onto `t ∈ [0, 1)`; the Kronrod nodes never
/// touch `t = 1`.
///
/// # Errors
/// [`QuadError::InvalidTolerance`], [`QuadError::InvalidInterval`], or
/// [`QuadError::NonConvergence`] carrying the best estimate.
pub fn integrate_1d<T, F>(
    f: F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<QuadResult<T>, QuadError<T>>
where
    T: QuadValue + std::fmt::Debug,
    F: Fn(f64) -> T,
{
    Adaptive::new(tol).integrate(f, a, b)
}

/// Adaptive 1D integration with user breakpoints; `points` must be
/// nondecreasing and contain at least the two endpoints.
///
/// # Errors
/// As [`integrate_1d`].
pub fn integrate_1d_with_breaks<T, F>(
    f: F,
    points: &[f64],
    tol: Tolerance,
) -> Result<QuadResult<T>, QuadError<T>>
where
    T: QuadValue + std::fmt::Debug,
    F: Fn(f64) -> T,
{
    Adaptive::new(tol).integrate_with_breaks(f, points)
}

/// Variable transformation of one segment.
#[derive(Debug, Clone, Copy)]
enum Map {
    /// Identity on a finite segment.
    Finite,
    /// `x = a + t/(1−t)`, `t ∈ [0, 1)`.
    Upper(f64),
    /// `x = b − t/(1−t)`, `t ∈ [0, 1)`.
    Lower(f64),
}

impl Map {
    fn eval<T: QuadValue, F: Fn(f64) -> T>(self, f: &F, t: f64) -> T {
        match self {
            Map::Finite => f(t),
            Map::Upper(a) | Map::Lower(a) => {
                let s = 1.0 - t;
                let u = t / s;
                let x = if let Map::Upper(_) = self {
                    a + u
                } else {
                    a - u
                };
                let v = f(x);
                let mut out = v.zero_like();
                out.add_scaled(&v, 1.0 / (s * s));
                out
            }
        }
    }
}

fn segments<T: std::fmt::Debug>(points: &[f64]) -> Result<Vec<(f64, f64, Map)>, QuadError<T>> {
    if points.len() < 2 {
        return Err(QuadError::InvalidInterval(
            "need at least two points".into(),
        ));
    }
    if points.iter().any(|p| p.is_nan()) {
        return Err(QuadError::InvalidInterval("NaN endpoint".into()));
    }
    if points.windows(2).any(|w| w[1] < w[0]) {
        return Err(QuadError::InvalidInterval(
            "points must be nondecreasing".into(),
        ));
    }
    let interior_infinite = points[1..points.len() - 1].iter().any(|p| p.is_infinite());
    if interior_infinite {
        return Err(QuadError::InvalidInterval(
            "only the outer points may be infinite".into(),
        ));
    }
    let mut out = Vec::new();
    for w in points.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if lo == hi {
            continue;
        }
        match (lo.is_infinite(), hi.is_infinite()) {
            (false, false) => out.push((lo, hi, Map::Finite)),
            (false, true) => out.push((0.0, 1.0, Map::Upper(lo))),
            (true, false) => out.push((0.0, 1.0, Map::Lower(hi))),
            (true, true) => {
                out.push((0.0, 1.0, Map::Lower(0.0)));
                out.push((0.0, 1.0, Map::Upper(0.0)));
            }
        }
    }
    Ok(out)
}

struct Piece<T> {
    a: f64,
    b: f64,
    map: Map,
    value: T,
    err: f64,
    absval: f64,
    depth: u32,
}

impl<T> PartialEq for Piece<T> {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl<T> Eq for Piece<T> {}
impl<T> PartialOrd for Piece<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Piece<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

struct State<'c, T> {
    cfg: &'c Adaptive,
    live: BinaryHeap<Piece<T>>,
    frozen: Vec<Piece<T>>,
    evaluations: usize,
}

impl<'c, T: QuadValue + std::fmt::Debug> State<'c, T> {
    fn new(cfg: &'c Adaptive) -> Self {
        Self {
            cfg,
            live: BinaryHeap::new(),
            frozen: Vec::new(),
            evaluations: 0,
        }
    }

    fn seed<F: Fn(f64) -> T>(&mut self, f: &F, a: f64, b: f64, map: Map) {
        let p = self.rule(f, a, b, map, 0);
        self.live.push(p);
    }

    fn rule<F: Fn(f64) -> T>(&mut self, f: &F, a: f64, b: f64, map: Map, depth: u32) -> Piece<T> {
        let (value, err, absval) = kronrod15(|t| map.eval(f, t), a, b);
        self.evaluations += 15;
        Piece {
            a,
            b,
            map,
            value,
            err,
            absval,
            depth,
        }
    }

    fn totals(&self) -> (T, f64, f64) {
        let mut it = self.live.iter().chain(self.frozen.iter());
        let first = it.next().expect("at least one interval");
        let mut v = first.value.clone();
        let mut e = first.err;
        let mut a = first.absval;
        for p in it {
            v.add_scaled(&p.value, 1.0);
            e += p.err;
            a += p.absval;
        }
        (v, e, a)
    }

    fn result(&self) -> QuadResult<T> {
        let (value, error_estimate, _) = self.totals();
        QuadResult {
            value,
            error_estimate,
            evaluations: self.evaluations,
        }
    }

    /// Converged when the target is met, or when the estimate is within twice
    /// the roundoff floor `50ε∫|f|` below which no subdivision can help.
    fn converged(&self, value: &T, err: f64, absval: f64) -> bool {
        err <= self.cfg.tol.target(value.norm()) || err <= 100.0 * f64::EPSILON * absval
    }

    fn run<F: Fn(f64) -> T>(mut self, f: &F) -> Result<QuadResult<T>, QuadError<T>> {
        let (mut value, mut err, mut absval) = self.totals();
        let mut since_resync = 0;
        loop {
            if self.converged(&value, err, absval) || !err.is_finite() {
                // Resynchronize the running sums before the final decision.
                let (v, e, a) = self.totals();
                value = v;
                err = e;
                absval = a;
                if self.converged(&value, err, absval) {
                    return Ok(self.result());
                }
            }
            if self.live.len() + self.frozen.len() >= self.cfg.max_intervals {
                return Err(QuadError::NonConvergence {
                    best: self.result(),
                });
            }
            let Some(worst) = self.live.pop() else {
                return Err(QuadError::NonConvergence {
                    best: self.result(),
                });
            };
            if worst.depth >= self.cfg.max_depth {
                self.frozen.push(worst);
                continue;
            }
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a || mid >= worst.b {
                self.frozen.push(worst);
                continue;
            }
            let left = self.rule(f, worst.a, mid, worst.map, worst.depth + 1);
            let right = self.rule(f, mid, worst.b, worst.map, worst.depth + 1);
            value.add_scaled(&worst.value, -1.0);
            value.add_scaled(&left.value, 1.0);
            value.add_scaled(&right.value, 1.0);
            err += left.err + right.err - worst.err;
            absval += left.absval + right.absval - worst.absval;
            self.live.push(left);
            self.live.push(right);
            since_resync += 1;
            if since_resync == 64 {
                since_resync = 0;
                let (v, e, a) = self.totals();
                value = v;
                err = e;
                absval = a;
            }
        }
    }
}

/// One application of the 15-point Kronrod rule with QUADPACK-style error
/// estimate; returns `(value, error, ∫|f|)`.
fn kronrod15<T: QuadValue>(g: impl Fn(f64) -> T, a: f64, b: f64) -> (T, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = g(center);
    let mut fvals: Vec<(T, T)> = Vec::with_capacity(7);
    for &x in XGK.iter().take(7) {
        let dx = half * x;
        fvals.push((g(center - dx), g(center + dx)));
    }
    let mut kron = fc.zero_like();
    kron.add_scaled(&fc, WGK[7]);
    let mut gauss = fc.zero_like();
    gauss.add_scaled(&fc, WG[3]);
    let mut resabs = WGK[7] * fc.norm();
    for (j, (lo, hi)) in fvals.iter().enumerate() {
        kron.add_scaled(lo, WGK[j]);
        kron.add_scaled(hi, WGK[j]);
        resabs += WGK[j] * (lo.norm() + hi.norm());
        if j % 2 == 1 {
            gauss.add_scaled(lo, WG[j / 2]);
            gauss.add_scaled(hi, WG[j / 2]);
        }
    }
    // Mean value for the "asc" spread measure.
    let mut mean = kron.zero_like();
    mean.add_scaled(&kron, 0.5);
    let mut resasc = WGK[7] * fc.minus(&mean).norm();
    for (j, (lo, hi)) in fvals.iter().enumerate() {
        resasc += WGK[j] * (lo.minus(&mean).norm() + hi.minus(&mean).norm());
    }
    let habs = half.abs();
    let mut value = kron.zero_like();
    value.add_scaled(&kron, half);
    let resabs = resabs * habs;
    let resasc = resasc * habs;
    let mut err = kron.minus(&gauss).norm() * habs;
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err, resabs)
}

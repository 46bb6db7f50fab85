//! Brute-force line integrals and their pole-approximation counterparts.
//!
//! Every physical integrand here is a single narrow, near-Lorentzian peak
//! riding on a slowly varying numerator. Raw moments of such a line depend on
//! the integration cutoff, so integrals are taken over a symmetric window
//! `[c - W, c + W]` with `W` a fixed multiple of the line width, and the
//! remainder beyond the window is added analytically assuming a pure
//! Lorentzian whose numerator is frozen at the window edge.
//!
//! Inside the window a 7/15-point Gauss-Kronrod pair is applied with global
//! adaptive bisection: the interval with the largest error estimate is split
//! next (ties go to the leftmost interval), which makes the refinement
//! sequence, and therefore the result, bit-reproducible.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    /// Window half-width in multiples of the line width.
    pub window_half_width: f64,
    pub rel_tol: f64,
    /// Bisection budget for the adaptive refinement.
    pub max_subdivisions: usize,
    pub tail_correction: bool,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            window_half_width: 1e4,
            rel_tol: 1e-9,
            max_subdivisions: 60,
            tail_correction: true,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.window_half_width >= 10.0) || !self.window_half_width.is_finite() {
            return Err(Error::invalid(
                "quad.window",
                format!(
                    "window half-width must be at least 10 widths, got {}",
                    self.window_half_width
                ),
            ));
        }
        if !(self.rel_tol > 1e-14 && self.rel_tol < 1e-2) {
            return Err(Error::invalid(
                "quad.rtol",
                format!(
                    "relative tolerance must lie in (1e-14, 1e-2), got {}",
                    self.rel_tol
                ),
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::invalid(
                "quad.max_subdivisions",
                "must be at least 1",
            ));
        }
        Ok(())
    }

    /// Bound on the relative weight of a unit Lorentzian outside the window.
    pub fn tail_bound(&self) -> f64 {
        2.0 / (std::f64::consts::PI * self.window_half_width)
    }
}

/// Result of [`integrate_line`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineIntegral {
    /// Window integral plus tail corrections.
    pub value: f64,
    /// Error estimate of the window integral.
    pub error: f64,
    pub subdivisions: usize,
    pub lower: f64,
    pub upper: f64,
    pub tail_left: f64,
    pub tail_right: f64,
    /// The window was clipped at `ω = 0` and its left tail dropped.
    pub clamped: bool,
}

/// Closed-form value next to its brute-force counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleReport {
    pub closed_form: f64,
    pub quadrature: f64,
    pub abs_error: f64,
    pub subdivisions_used: usize,
}

impl OracleReport {
    pub fn new(closed_form: f64, quadrature: f64, subdivisions_used: usize) -> Self {
        Self {
            closed_form,
            quadrature,
            abs_error: (closed_form - quadrature).abs(),
            subdivisions_used,
        }
    }

    pub fn from_integral(closed_form: f64, integral: &LineIntegral) -> Self {
        Self::new(closed_form, integral.value, integral.subdivisions)
    }

    /// Multiplies both values by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(
            self.closed_form * factor,
            self.quadrature * factor,
            self.subdivisions_used,
        )
    }
}

/// Pole-approximation value of `∫ ρ(ω) ωᵖ dω` for a unit-normalized line with
/// every non-Lorentzian factor frozen at `center`.
pub fn ww_pole_value(power: u32, center: f64, width: f64) -> Result<f64> {
    if power > 3 {
        return Err(Error::UnsupportedPower(power));
    }
    if !(width > 0.0) || !center.is_finite() {
        return Err(Error::invalid(
            "width",
            format!("need width > 0 and finite center, got ({center}, {width})"),
        ));
    }
    Ok(center.powi(power as i32))
}

/// Integrates `f` over the frequency line centred at `center` with half-width `width`.
pub fn integrate_line<F>(
    f: F,
    center: f64,
    width: f64,
    spec: &QuadratureSpec,
) -> Result<LineIntegral>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    if !(width > 0.0 && width.is_finite()) || !center.is_finite() {
        return Err(Error::invalid(
            "width",
            format!("need width > 0 and finite center, got ({center}, {width})"),
        ));
    }

    let half = spec.window_half_width * width;
    let mut lower = center - half;
    let upper = center + half;
    let clamped = lower < 0.0;
    if clamped {
        log::warn!("integration window reaches omega = 0; clamping and dropping the left tail");
        lower = 0.0;
    }

    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::QuadratureFailure {
                reason: format!("non-finite integrand {y} at omega = {x}"),
                partial: None,
            })
        }
    };

    let mut intervals = vec![kronrod15(&eval, lower, upper)?];
    let mut subdivisions = 0;
    loop {
        let (value, error) = totals(&intervals);
        if error <= spec.rel_tol * value.abs() {
            break;
        }
        if subdivisions == spec.max_subdivisions {
            let partial = finish(&intervals, subdivisions, lower, upper, 0.0, 0.0, clamped);
            return Err(Error::QuadratureFailure {
                reason: format!(
                    "subdivision budget {} exhausted (error {error:e} vs value {value:e})",
                    spec.max_subdivisions
                ),
                partial: Some(Box::new(partial)),
            });
        }
        let worst = worst_interval(&intervals);
        let seg = intervals.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if !(seg.a < mid && mid < seg.b) {
            let partial = finish(&intervals, subdivisions, lower, upper, 0.0, 0.0, clamped);
            return Err(Error::QuadratureFailure {
                reason: format!("interval [{}, {}] cannot be bisected further", seg.a, seg.b),
                partial: Some(Box::new(partial)),
            });
        }
        intervals.push(kronrod15(&eval, seg.a, mid)?);
        intervals.push(kronrod15(&eval, mid, seg.b)?);
        subdivisions += 1;
    }

    let (tail_left, tail_right) = if spec.tail_correction {
        let left = if clamped {
            0.0
        } else {
            lorentzian_tail(eval(lower)?, center - lower, width)
        };
        (left, lorentzian_tail(eval(upper)?, upper - center, width))
    } else {
        (0.0, 0.0)
    };

    Ok(finish(
        &intervals,
        subdivisions,
        lower,
        upper,
        tail_left,
        tail_right,
        clamped,
    ))
}

/// `∫_d^∞ A / (x² + w²) dx` with `A` fixed so that the integrand equals
/// `edge_value` at `x = d`.
fn lorentzian_tail(edge_value: f64, distance: f64, width: f64) -> f64 {
    let numerator = edge_value * (distance * distance + width * width);
    numerator / width * (width / distance).atan()
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn worst_interval(intervals: &[Segment]) -> usize {
    let mut best = 0;
    for (i, s) in intervals.iter().enumerate().skip(1) {
        let cur = &intervals[best];
        if s.error > cur.error || (s.error == cur.error && s.a < cur.a) {
            best = i;
        }
    }
    best
}

fn sorted(intervals: &[Segment]) -> Vec<Segment> {
    let mut v = intervals.to_vec();
    v.sort_by(|x, y| x.a.total_cmp(&y.a));
    v
}

fn totals(intervals: &[Segment]) -> (f64, f64) {
    let v = sorted(intervals);
    let values: Vec<f64> = v.iter().map(|s| s.value).collect();
    let errors: Vec<f64> = v.iter().map(|s| s.error).collect();
    (pairwise_sum(&values), pairwise_sum(&errors))
}

fn finish(
    intervals: &[Segment],
    subdivisions: usize,
    lower: f64,
    upper: f64,
    tail_left: f64,
    tail_right: f64,
    clamped: bool,
) -> LineIntegral {
    let (window, error) = totals(intervals);
    LineIntegral {
        value: tail_left + window + tail_right,
        error,
        subdivisions,
        lower,
        upper,
        tail_left,
        tail_right,
        clamped,
    }
}

/// Recursive pairwise summation; the split points depend only on the length.
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let (l, r) = xs.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

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
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod15<F>(f: &F, a: f64, b: f64) -> Result<Segment>
where
    F: Fn(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut f1 = [0.0; 7];
    let mut f2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let lo = f(center - dx)?;
        let hi = f(center + dx)?;
        f1[j] = lo;
        f2[j] = hi;
        res_k += WGK[j] * (lo + hi);
        res_abs += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (lo + hi);
        }
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((f1[j] - mean).abs() + (f2[j] - mean).abs());
    }

    let scale = half.abs();
    let value = res_k * half;
    res_abs *= scale;
    res_asc *= scale;
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Segment { a, b, value, error })
}

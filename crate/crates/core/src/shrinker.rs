//! The self-shrinker system for the motion curve `c(t) = rho e^{i f}` and
//! the Lagrangian angle `theta(t)`:
//!
//! ```text
//! c'     = e^{i (theta(t) - theta)} conj(c)^{N-1}
//! theta' = A rho^N sin(f N + theta - theta(t))
//! ```
//!
//! `conj(c)^{N-1}` is `rho^{N-1} e^{-i (N-1) f}` with `f` the continuous lift
//! of `arg c`, so non-integer `N` has no branch cut.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use crate::profile::{angle_from_jets, circular_distance_pi, Jet};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShrinkerError {
    #[error("state at apex")]
    Apex,
    #[error("trajectory hit apex at t = {0}")]
    HitApex(f64),
    #[error("N must be positive, got {0}")]
    NonPositiveN(f64),
    #[error("step must be positive and the span finite and nonempty (h = {h}, span = [{t0}, {t1}])")]
    BadStep { h: f64, t0: f64, t1: f64 },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}

/// `theta` here is `sum_k gamma_k nu^k`; `a` is the constant `A` of
/// `2 c H = A F^perp`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShrinkerParams {
    pub n: f64,
    pub theta: f64,
    pub a: f64,
}

impl ShrinkerParams {
    pub fn new(n: f64, theta: f64, a: f64) -> Result<Self, ShrinkerError> {
        if n.is_nan() || n <= 0.0 {
            return Err(ShrinkerError::NonPositiveN(n));
        }
        Ok(ShrinkerParams { n, theta, a })
    }

    /// `lambda = A / (2 c)` for the slice level `c`.
    pub fn self_similar_constant(&self, level: f64) -> f64 {
        self.a / (2.0 * level)
    }
}

/// `c(t)` with a continuous lift of its argument, and the real lift of
/// `theta(t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShrinkerState {
    pub c: Complex64,
    pub theta_t: f64,
    arg_lift: f64,
}

impl ShrinkerState {
    pub fn new(c: Complex64, theta_t: f64) -> Result<Self, ShrinkerError> {
        if c.norm() == 0.0 {
            return Err(ShrinkerError::Apex);
        }
        Ok(ShrinkerState { c, theta_t, arg_lift: c.arg() })
    }

    /// State whose argument lift is the representative of `arg c`
    /// nearest to `lift`.
    pub fn with_lift(c: Complex64, theta_t: f64, lift: f64) -> Result<Self, ShrinkerError> {
        let mut s = Self::new(c, theta_t)?;
        s.arg_lift = unwrap_near(c.arg(), lift);
        Ok(s)
    }

    pub fn rho(&self) -> f64 {
        self.c.norm()
    }

    /// Continuous `f = arg c`.
    pub fn f(&self) -> f64 {
        self.arg_lift
    }
}

fn unwrap_near(angle: f64, reference: f64) -> f64 {
    angle + TAU * ((reference - angle) / TAU).round()
}

fn rhs_raw(c: Complex64, f: f64, theta_t: f64, p: &ShrinkerParams) -> (Complex64, f64) {
    let rho = c.norm();
    let dc = Complex64::from_polar(rho.powf(p.n - 1.0), theta_t - p.theta - (p.n - 1.0) * f);
    let dtheta = p.a * rho.powf(p.n) * (f * p.n + p.theta - theta_t).sin();
    (dc, dtheta)
}

pub fn ode_rhs(state: &ShrinkerState, params: &ShrinkerParams) -> Result<(Complex64, f64), ShrinkerError> {
    if state.rho() == 0.0 {
        return Err(ShrinkerError::Apex);
    }
    Ok(rhs_raw(state.c, state.f(), state.theta_t, params))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<(f64, ShrinkerState)>,
    pub step: f64,
}

impl Trajectory {
    /// Samples `state(t)` on the uniform grid used by [`integrate`].
    pub fn sample(
        t_span: (f64, f64),
        h: f64,
        mut state: impl FnMut(f64) -> ShrinkerState,
    ) -> Result<Self, ShrinkerError> {
        let (steps, step) = grid(t_span, h)?;
        let samples = (0..=steps)
            .map(|i| {
                let t = t_span.0 + i as f64 * step;
                (t, state(t))
            })
            .collect();
        Ok(Trajectory { samples, step })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn last(&self) -> Option<&(f64, ShrinkerState)> {
        self.samples.last()
    }

    /// Header `t,Re c,Im c,theta`, values to 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,Re c,Im c,theta\n");
        for (t, s) in &self.samples {
            writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", t, s.c.re, s.c.im, s.theta_t).expect("write to string");
        }
        out
    }

    /// `c'` at sample `i` by centered differences: five points where
    /// available, three otherwise.
    fn c_dot(&self, i: usize) -> Option<Complex64> {
        let n = self.samples.len();
        let c = |k: usize| self.samples[k].1.c;
        let h = self.step;
        if n >= 5 && i >= 2 && i + 2 < n {
            Some((c(i - 2) - c(i - 1) * 8.0 + c(i + 1) * 8.0 - c(i + 2)) / (12.0 * h))
        } else if n < 5 && i >= 1 && i + 1 < n {
            Some((c(i + 1) - c(i - 1)) / (2.0 * h))
        } else {
            None
        }
    }

    fn check_len(&self) -> Result<(), ShrinkerError> {
        if self.samples.len() < 3 {
            return Err(ShrinkerError::TooFewSamples { needed: 3, got: self.samples.len() });
        }
        Ok(())
    }
}

fn grid(t_span: (f64, f64), h: f64) -> Result<(usize, f64), ShrinkerError> {
    let (t0, t1) = t_span;
    let span = t1 - t0;
    if !(h > 0.0 && h.is_finite() && span.is_finite() && span > 0.0) {
        return Err(ShrinkerError::BadStep { h, t0, t1 });
    }
    let steps = (span / h - 1e-9).ceil().max(1.0) as usize;
    Ok((steps, span / steps as f64))
}

/// Classical fixed-step RK4. The step is shrunk to `span / ceil(span / h)`
/// so the last sample lands on `t1`.
pub fn integrate(
    initial: ShrinkerState,
    params: &ShrinkerParams,
    t_span: (f64, f64),
    h: f64,
) -> Result<Trajectory, ShrinkerError> {
    let (steps, step) = grid(t_span, h)?;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut s = initial;
    samples.push((t_span.0, s));
    for i in 1..=steps {
        let t = t_span.0 + (i - 1) as f64 * step;
        s = rk4_step(&s, params, step).ok_or(ShrinkerError::HitApex(t))?;
        if s.rho() < 1e-12 {
            return Err(ShrinkerError::HitApex(t + step));
        }
        samples.push((t_span.0 + i as f64 * step, s));
    }
    Ok(Trajectory { samples, step })
}

fn rk4_step(s: &ShrinkerState, p: &ShrinkerParams, h: f64) -> Option<ShrinkerState> {
    let eval = |c: Complex64, th: f64| -> Option<(Complex64, f64)> {
        if c.norm() < 1e-12 {
            return None;
        }
        Some(rhs_raw(c, unwrap_near(c.arg(), s.f()), th, p))
    };
    let (k1c, k1t) = eval(s.c, s.theta_t)?;
    let (k2c, k2t) = eval(s.c + k1c * (h / 2.0), s.theta_t + k1t * h / 2.0)?;
    let (k3c, k3t) = eval(s.c + k2c * (h / 2.0), s.theta_t + k2t * h / 2.0)?;
    let (k4c, k4t) = eval(s.c + k3c * h, s.theta_t + k3t * h)?;
    let c = s.c + (k1c + k2c * 2.0 + k3c * 2.0 + k4c) * (h / 6.0);
    let theta_t = s.theta_t + (k1t + 2.0 * k2t + 2.0 * k3t + k4t) * h / 6.0;
    ShrinkerState::with_lift(c, theta_t, s.f()).ok()
}

/// Residual of `2 conj(c) c' = 2 rho^N e^{i (theta(t) - theta - f N)}` with
/// `c'` from centered differences, maximised over the samples where the
/// stencil fits.
pub fn consistency_residual(traj: &Trajectory, params: &ShrinkerParams) -> Result<f64, ShrinkerError> {
    Ok(consistency_terms(traj, params)?.into_iter().map(|(l, r)| (l - r).norm()).fold(0.0, f64::max))
}

/// Pairs `(2 conj(c) c'_numeric, 2 rho^N e^{i (theta(t) - theta - f N)})`.
pub fn consistency_terms(
    traj: &Trajectory,
    params: &ShrinkerParams,
) -> Result<Vec<(Complex64, Complex64)>, ShrinkerError> {
    traj.check_len()?;
    Ok((0..traj.len())
        .filter_map(|i| {
            let dc = traj.c_dot(i)?;
            let s = &traj.samples[i].1;
            let lhs = s.c.conj() * dc * 2.0;
            let rhs = Complex64::from_polar(2.0 * s.rho().powf(params.n), s.theta_t - params.theta - s.f() * params.n);
            Some((lhs, rhs))
        })
        .collect())
}

/// Max circular distance mod `pi` between `theta(t)` and the Reeb-case angle
/// of the profile read off the trajectory (`f = arg c`, `rho = |c|`, with
/// `kappa' + i f' = c' / c` from centered differences).
pub fn angle_equals_theta(traj: &Trajectory, params: &ShrinkerParams) -> Result<f64, ShrinkerError> {
    traj.check_len()?;
    let mut worst: f64 = 0.0;
    for i in 0..traj.len() {
        let Some(dc) = traj.c_dot(i) else { continue };
        let s = &traj.samples[i].1;
        let log_dot = dc / s.c;
        let f = Jet::new(s.f(), log_dot.im);
        let kappa = Jet::new(s.rho().ln(), log_dot.re);
        let Some(angle) = angle_from_jets(f, kappa, params.n, params.theta) else {
            return Ok(PI / 2.0);
        };
        worst = worst.max(circular_distance_pi(angle, s.theta_t));
    }
    Ok(worst)
}

/// `c(t) = e^{it}`, `theta(t) = N t + pi/2`, solving the system with
/// `theta = 0`, `A = -N`.
pub fn exact_circle_state(n: f64, t: f64) -> ShrinkerState {
    ShrinkerState::with_lift(Complex64::from_polar(1.0, t), n * t + PI / 2.0, t).expect("unit circle avoids the apex")
}

/// Max of `|c - e^{it}|` and `|theta(t) - (N t + pi/2)|` over a trajectory.
pub fn exact_circle_error(traj: &Trajectory, n: f64) -> f64 {
    traj.samples
        .iter()
        .map(|(t, s)| {
            let e = exact_circle_state(n, *t);
            (s.c - e.c).norm().max((s.theta_t - e.theta_t).abs())
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn rhs_examples() {
        let n = 3.0;
        let p = ShrinkerParams::new(n, 0.0, -n).unwrap();
        for t in [0.0, 0.4, 2.0, 5.5] {
            let (dc, dth) = ode_rhs(&exact_circle_state(n, t), &p).unwrap();
            assert!(close(dc, Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, t), 1e-14));
            assert!((dth - n).abs() < 1e-14);
        }
        let q = ShrinkerParams::new(2.0, 0.3, 1.7).unwrap();
        let (dc, dth) = ode_rhs(&ShrinkerState::new(Complex64::new(1.0, 0.0), 0.3).unwrap(), &q).unwrap();
        assert!(close(dc, Complex64::new(1.0, 0.0), 1e-15) && dth == 0.0);
        let (dc, dth) = ode_rhs(&ShrinkerState::new(Complex64::new(2.0, 0.0), 0.3 + PI / 2.0).unwrap(), &q).unwrap();
        assert!(close(dc, Complex64::new(0.0, 2.0), 1e-14));
        assert!((dth - (-4.0 * 1.7)).abs() < 1e-13);
    }

    #[test]
    fn apex_and_parameter_errors() {
        assert_eq!(ShrinkerState::new(Complex64::new(0.0, 0.0), 0.0), Err(ShrinkerError::Apex));
        assert_eq!(ShrinkerParams::new(0.0, 0.0, 0.0), Err(ShrinkerError::NonPositiveN(0.0)));
        let p = ShrinkerParams::new(1.0, 0.0, 0.0).unwrap();
        let s = ShrinkerState::new(Complex64::new(1.0, 0.0), 0.0).unwrap();
        assert!(matches!(integrate(s, &p, (0.0, 1.0), 0.0), Err(ShrinkerError::BadStep { .. })));
        // c' = -1 from c = 1 reaches the apex at t = 1
        let back = ShrinkerState::new(Complex64::new(1.0, 0.0), PI).unwrap();
        assert!(matches!(integrate(back, &p, (0.0, 2.0), 1e-3), Err(ShrinkerError::HitApex(_))));
    }

    #[test]
    fn straight_line_solution() {
        let p = ShrinkerParams::new(1.0, 0.0, 0.0).unwrap();
        let s = ShrinkerState::new(Complex64::new(1.0, 0.0), 0.0).unwrap();
        let traj = integrate(s, &p, (0.0, 3.0), 0.01).unwrap();
        for (t, st) in &traj.samples {
            assert!(close(st.c, Complex64::new(1.0 + t, 0.0), 1e-13));
            assert_eq!(st.theta_t, 0.0);
        }
        assert_eq!(traj.last().unwrap().0, 3.0);
    }

    #[test]
    fn tracks_the_circle_and_closes_up() {
        let n = 3.0;
        let p = ShrinkerParams::new(n, 0.0, -n).unwrap();
        let traj = integrate(exact_circle_state(n, 0.0), &p, (0.0, TAU), 1e-3).unwrap();
        assert!(exact_circle_error(&traj, n) <= 1e-9);
        let (first, last) = (traj.samples[0].1, traj.last().unwrap().1);
        assert!(close(first.c, last.c, 1e-8));
        assert!(circular_distance_pi(first.theta_t, last.theta_t) < 1e-8);
        assert!((last.f() - TAU).abs() < 1e-8);
        assert!(consistency_residual(&traj, &p).unwrap() <= 1e-6);
        assert!(angle_equals_theta(&traj, &p).unwrap() <= 1e-6);
    }

    #[test]
    fn analytic_samples_have_tiny_residual() {
        let n = 3.0;
        let p = ShrinkerParams::new(n, 0.0, -n).unwrap();
        let traj = Trajectory::sample((0.0, TAU), 1e-3, |t| exact_circle_state(n, t)).unwrap();
        assert!(consistency_residual(&traj, &p).unwrap() <= 1e-8);
        assert!(angle_equals_theta(&traj, &p).unwrap() <= 1e-9);
        // real part: d(rho^2)/dt = 2 rho^N cos(theta(t) - theta - f N)
        for (l, r) in consistency_terms(&traj, &p).unwrap() {
            assert!((l.re - r.re).abs() <= 1e-8);
        }
    }

    #[test]
    fn detectors_fire_on_a_shifted_angle() {
        let n = 3.0;
        let p = ShrinkerParams::new(n, 0.0, -n).unwrap();
        let traj = Trajectory::sample((0.0, TAU), 1e-3, |t| {
            let s = exact_circle_state(n, t);
            ShrinkerState::with_lift(s.c, s.theta_t + 0.1, t).unwrap()
        })
        .unwrap();
        assert!(consistency_residual(&traj, &p).unwrap() > 1e-2);
        assert!(angle_equals_theta(&traj, &p).unwrap() > 1e-2);
    }

    #[test]
    fn halving_the_step_gains_about_sixteen() {
        let n = 3.0;
        let p = ShrinkerParams::new(n, 0.0, -n).unwrap();
        let err = |h| exact_circle_error(&integrate(exact_circle_state(n, 0.0), &p, (0.0, TAU), h).unwrap(), n);
        let ratio = err(0.02) / err(0.01);
        assert!((8.0..=32.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn generic_trajectory_is_self_consistent() {
        let p = ShrinkerParams::new(2.5, 0.4, -1.3).unwrap();
        let s = ShrinkerState::new(Complex64::new(0.8, 0.3), 1.1).unwrap();
        let traj = integrate(s, &p, (0.0, 2.0), 1e-3).unwrap();
        assert!(consistency_residual(&traj, &p).unwrap() <= 1e-6);
        assert!(angle_equals_theta(&traj, &p).unwrap() <= 1e-6);
        let coarse = integrate(s, &p, (0.0, 2.0), 1e-2).unwrap();
        assert!(consistency_residual(&coarse, &p).unwrap() > consistency_residual(&traj, &p).unwrap());
    }

    #[test]
    fn short_trajectories() {
        let p = ShrinkerParams::new(1.0, 0.0, 0.0).unwrap();
        let two =
            Trajectory::sample((0.0, 1.0), 1.0, |t| ShrinkerState::new(Complex64::new(1.0 + t, 0.0), 0.0).unwrap())
                .unwrap();
        assert_eq!(consistency_residual(&two, &p), Err(ShrinkerError::TooFewSamples { needed: 3, got: 2 }));
        let three =
            Trajectory::sample((0.0, 1.0), 0.5, |t| ShrinkerState::new(Complex64::new(1.0 + t, 0.0), 0.0).unwrap())
                .unwrap();
        assert!(consistency_residual(&three, &p).unwrap() < 1e-14);
    }

    #[test]
    fn csv_layout() {
        let traj = Trajectory::sample((0.0, 1.0), 0.5, |t| exact_circle_state(3.0, t)).unwrap();
        let csv = traj.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,Re c,Im c,theta");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0.0000000000000000e0,1.0000000000000000e0,"));
        let parsed: f64 = lines[2].split(',').next().unwrap().parse().unwrap();
        assert_eq!(parsed, 0.5);
    }
}

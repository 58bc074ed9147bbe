//! Motion profiles `F(p, t) = rho(t) tau(t) p` with
//! `tau(t) = exp(f(t) zeta) tau_0`, and the Lagrangian angle in the two
//! regimes where it does not depend on the cone metric.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{rational_to_f64, LatticeVector, RationalVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProfileError {
    #[error("profile stationary at t = {0}: kappa' = f' = 0")]
    Stationary(f64),
    #[error("regime mismatch: rho is not constant")]
    RegimeMismatch,
    #[error("angle formula needs zeta = xi")]
    NotReebCase,
    #[error("N must be positive, got {0}")]
    NonPositiveN(f64),
    #[error("t = {t} outside the profile interval ({lo}, {hi})")]
    OutsideInterval { t: f64, lo: f64, hi: f64 },
    #[error("curve through origin, log branch undefined")]
    ThroughOrigin,
    #[error("C = 0 gives f' = 0 identically")]
    ConstantPhase,
    #[error("invalid interval ({0}, {1})")]
    BadInterval(f64, f64),
    #[error("internal consistency: {0}")]
    Inconsistent(String),
}

/// Value and first derivative at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub deriv: f64,
}

impl Jet {
    pub fn new(value: f64, deriv: f64) -> Self {
        Jet { value, deriv }
    }

    pub fn constant(value: f64) -> Self {
        Jet { value, deriv: 0.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Interval {
    Open { lo: f64, hi: f64 },
    Circle { period: f64 },
}

impl Interval {
    pub fn open(lo: f64, hi: f64) -> Result<Self, ProfileError> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Interval::Open { lo, hi })
        } else {
            Err(ProfileError::BadInterval(lo, hi))
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        match *self {
            Interval::Open { lo, hi } => lo < t && t < hi,
            Interval::Circle { .. } => t.is_finite(),
        }
    }

    fn check(&self, t: f64) -> Result<(), ProfileError> {
        match *self {
            Interval::Open { lo, hi } if !self.contains(t) => Err(ProfileError::OutsideInterval { t, lo, hi }),
            _ => Ok(()),
        }
    }
}

type JetFn = Arc<dyn Fn(f64) -> Jet + Send + Sync>;

/// `f` and `kappa = log rho` with their derivatives, and the phases `nu`.
#[derive(Clone)]
pub struct MotionProfile {
    pub interval: Interval,
    f: JetFn,
    kappa: JetFn,
    pub nu: Vec<f64>,
    rho_constant: bool,
}

impl fmt::Debug for MotionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MotionProfile")
            .field("interval", &self.interval)
            .field("nu", &self.nu)
            .field("rho_constant", &self.rho_constant)
            .finish_non_exhaustive()
    }
}

impl MotionProfile {
    pub fn from_f_kappa(
        interval: Interval,
        f: impl Fn(f64) -> Jet + Send + Sync + 'static,
        kappa: impl Fn(f64) -> Jet + Send + Sync + 'static,
        nu: Vec<f64>,
    ) -> Self {
        MotionProfile { interval, f: Arc::new(f), kappa: Arc::new(kappa), nu, rho_constant: false }
    }

    /// `rho` must stay positive; `kappa' = rho' / rho`.
    pub fn from_f_rho(
        interval: Interval,
        f: impl Fn(f64) -> Jet + Send + Sync + 'static,
        rho: impl Fn(f64) -> Jet + Send + Sync + 'static,
        nu: Vec<f64>,
    ) -> Self {
        let kappa = move |t| {
            let r: Jet = rho(t);
            Jet::new(r.value.ln(), r.deriv / r.value)
        };
        Self::from_f_kappa(interval, f, kappa, nu)
    }

    /// Constant `rho`; the profile is in the constant-radius regime.
    pub fn with_constant_rho(
        interval: Interval,
        f: impl Fn(f64) -> Jet + Send + Sync + 'static,
        rho: f64,
        nu: Vec<f64>,
    ) -> Self {
        let k = rho.ln();
        let mut p = Self::from_f_kappa(interval, f, move |_| Jet::constant(k), nu);
        p.rho_constant = true;
        p
    }

    /// `f = t / N`, `rho = (1 / sin t)^{1/N}` on `(0, pi)`.
    pub fn slag_sine(n: f64, nu: Vec<f64>) -> Self {
        Self::from_f_kappa(
            Interval::Open { lo: 0.0, hi: PI },
            move |t| Jet::new(t / n, 1.0 / n),
            move |t| Jet::new(-t.sin().ln() / n, -t.cos() / t.sin() / n),
            nu,
        )
    }

    /// `f = t`, `rho = 1` on the circle of period `2 pi`.
    pub fn unit_circle(nu: Vec<f64>) -> Self {
        Self::with_constant_rho(Interval::Circle { period: TAU }, |t| Jet::new(t, 1.0), 1.0, nu)
    }

    pub fn is_rho_constant(&self) -> bool {
        self.rho_constant
    }

    pub fn f(&self, t: f64) -> Jet {
        (self.f)(t)
    }

    pub fn kappa(&self, t: f64) -> Jet {
        (self.kappa)(t)
    }

    pub fn rho(&self, t: f64) -> Jet {
        let k = self.kappa(t);
        let r = k.value.exp();
        Jet::new(r, r * k.deriv)
    }
}

/// `N = <gamma, zeta>`, `theta = sum_k gamma_k nu^k`, target phase
/// `theta0`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleParams {
    pub n: f64,
    /// Exact `N` when built from lattice data.
    pub n_exact: Option<BigRational>,
    pub theta: f64,
    pub theta0: f64,
    /// `zeta = xi` exactly.
    pub zeta_is_reeb: bool,
}

impl AngleParams {
    pub fn from_cone_data(
        gamma: &LatticeVector,
        zeta: &RationalVector,
        xi: &RationalVector,
        nu: &[f64],
        theta0: f64,
    ) -> Self {
        let n_exact = gamma.dot_rational(zeta);
        let theta = gamma.to_f64().iter().zip(nu).map(|(g, v)| g * v).sum();
        AngleParams { n: rational_to_f64(&n_exact), n_exact: Some(n_exact), theta, theta0, zeta_is_reeb: zeta == xi }
    }

    pub fn from_values(n: f64, theta: f64, theta0: f64, zeta_is_reeb: bool) -> Self {
        AngleParams { n, n_exact: None, theta, theta0, zeta_is_reeb }
    }

    fn n_is_zero(&self) -> bool {
        match &self.n_exact {
            Some(q) => q.is_zero(),
            None => self.n == 0.0,
        }
    }

    fn require_reeb_positive(&self) -> Result<(), ProfileError> {
        if !self.zeta_is_reeb {
            return Err(ProfileError::NotReebCase);
        }
        if self.n <= 0.0 {
            return Err(ProfileError::NonPositiveN(self.n));
        }
        Ok(())
    }
}

/// Representative in `[0, pi)`.
pub fn mod_pi(x: f64) -> f64 {
    let r = x.rem_euclid(PI);
    if r >= PI {
        0.0
    } else {
        r
    }
}

/// Representative in `[0, 2 pi)`.
pub fn mod_two_pi(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance in `R / pi Z`.
pub fn circular_distance_pi(a: f64, b: f64) -> f64 {
    let d = mod_pi(a - b);
    d.min(PI - d)
}

/// Angle in the Reeb case from raw derivatives:
/// `f N + theta + arg(kappa' + i f')`.
pub fn angle_from_jets(f: Jet, kappa: Jet, n: f64, theta: f64) -> Option<f64> {
    if kappa.deriv == 0.0 && f.deriv == 0.0 {
        return None;
    }
    Some(mod_pi(f.value * n + theta + f.deriv.atan2(kappa.deriv)))
}

/// `f(t) N + theta + arg(kappa'(t) + i f'(t))` mod `pi`, cross-checked
/// against `arg h'(t)` for `h = exp(N kappa + i (f N + theta))`.
pub fn angle_reeb_case(profile: &MotionProfile, params: &AngleParams, t: f64) -> Result<f64, ProfileError> {
    if !params.zeta_is_reeb {
        return Err(ProfileError::NotReebCase);
    }
    profile.interval.check(t)?;
    let (f, k) = (profile.f(t), profile.kappa(t));
    let angle = angle_from_jets(f, k, params.n, params.theta).ok_or(ProfileError::Stationary(t))?;
    if params.n != 0.0 {
        let phase = Complex64::new(0.0, f.value * params.n + params.theta);
        let h_dot = (params.n * k.value + phase).exp() * Complex64::new(params.n * k.deriv, params.n * f.deriv);
        let other = mod_pi(h_dot.arg());
        if circular_distance_pi(angle, other) > 1e-9 {
            return Err(ProfileError::Inconsistent(format!("angle {angle} but arg h' = {other} at t = {t}")));
        }
    }
    Ok(angle)
}

/// `f(t) N + theta + pi/2` mod `pi`.
pub fn angle_rho_const_case(profile: &MotionProfile, params: &AngleParams, t: f64) -> Result<f64, ProfileError> {
    if !profile.rho_constant {
        return Err(ProfileError::RegimeMismatch);
    }
    profile.interval.check(t)?;
    Ok(mod_pi(profile.f(t).value * params.n + params.theta + FRAC_PI_2))
}

/// Constant-radius profiles are special Lagrangian with phase `theta0`
/// iff `N = 0` and `theta + pi/2 = theta0 (mod pi)`.
pub fn check_slag_rho_const(params: &AngleParams) -> bool {
    params.n_is_zero() && circular_distance_pi(params.theta + FRAC_PI_2, params.theta0) < 1e-12
}

/// `Im(exp(i (theta - theta0)) exp(N (kappa + i f)))`, constant in `t`
/// exactly for special Lagrangian profiles.
pub fn slag_conserved(profile: &MotionProfile, params: &AngleParams, t: f64) -> Result<f64, ProfileError> {
    params.require_reeb_positive()?;
    profile.interval.check(t)?;
    let (f, k) = (profile.f(t).value, profile.kappa(t).value);
    Ok((params.n * k).exp() * (params.n * f + params.theta - params.theta0).sin())
}

/// Profile with `exp(N (kappa + i f)) = exp(-i (theta - theta0)) (t + i C)`.
pub fn make_slag_profile(
    params: &AngleParams,
    c: f64,
    interval: (f64, f64),
    nu: Vec<f64>,
) -> Result<MotionProfile, ProfileError> {
    params.require_reeb_positive()?;
    let interval = Interval::open(interval.0, interval.1)?;
    if c == 0.0 {
        return Err(if interval.contains(0.0) { ProfileError::ThroughOrigin } else { ProfileError::ConstantPhase });
    }
    let n = params.n;
    let shift = params.theta - params.theta0;
    Ok(MotionProfile::from_f_kappa(
        interval,
        move |t| Jet::new((c.atan2(t) - shift) / n, -c / (n * (t * t + c * c))),
        move |t| Jet::new(t.hypot(c).ln() / n, t / (n * (t * t + c * c))),
        nu,
    ))
}

/// `n` equally spaced interior points of an open interval, or of one period.
pub fn sample_points(interval: &Interval, n: usize) -> Vec<f64> {
    let (lo, hi) = match *interval {
        Interval::Open { lo, hi } => (lo, hi),
        Interval::Circle { period } => (0.0, period),
    };
    (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect()
}

//! Finite-difference geometry of immersions into flat `C^m = R^{2m}`.
//!
//! [`FlatImmersion`] realises `w_k = rho(t) e^{i (f(t) zeta^k + nu^k)} x^k`
//! with `x` on the ellipsoid `(1/2) sum_k zeta^k (x^k)^2 = level`, i.e. the
//! level set of the flat moment map paired with `zeta`, and the Reeb field
//! `xi = (1, ..., 1)`. Coordinates are `(u, t)` with `u` a stereographic
//! chart of the unit sphere.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::profile::{circular_distance_pi, mod_pi, MotionProfile};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlatError {
    #[error("degenerate chart point: metric condition number {0:e}")]
    DegenerateChartPoint(f64),
    #[error("degenerate frame: holomorphic volume vanishes on the tangent frame")]
    DegenerateFrame,
    #[error("finite-difference step must be positive, got {0}")]
    BadStep(f64),
    #[error("point has {found} coordinates, expected {expected}")]
    WrongArity { expected: usize, found: usize },
    #[error("level must be positive, got {0}")]
    BadLevel(f64),
    #[error("weights must be positive and match the dimension")]
    BadWeights,
    #[error("no samples")]
    NoSamples,
}

/// A smooth map from an open set of `R^n` into `R^N`.
pub trait Parametrization {
    fn param_dim(&self) -> usize;
    fn ambient_dim(&self) -> usize;
    fn eval(&self, u: &[f64]) -> Vec<f64>;
}

/// Stereographic charts of the unit sphere `S^{n}` in `R^{n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// Projection from `(0, ..., 0, 1)`.
    North,
    /// Projection from `(0, ..., 0, -1)`.
    South,
}

impl Chart {
    /// Point of the unit sphere in `R^{u.len() + 1}`.
    pub fn to_sphere(self, u: &[f64]) -> Vec<f64> {
        let s: f64 = u.iter().map(|x| x * x).sum();
        let mut y: Vec<f64> = u.iter().map(|x| 2.0 * x / (1.0 + s)).collect();
        y.push(match self {
            Chart::North => (s - 1.0) / (s + 1.0),
            Chart::South => (1.0 - s) / (1.0 + s),
        });
        y
    }

    /// Chart coordinates of a unit vector; `None` at the projection pole.
    pub fn from_sphere(self, y: &[f64]) -> Option<Vec<f64>> {
        let (last, head) = y.split_last()?;
        let denom = match self {
            Chart::North => 1.0 - last,
            Chart::South => 1.0 + last,
        };
        (denom > 1e-12).then(|| head.iter().map(|v| v / denom).collect())
    }

    /// The chart keeping `y` at most unit distance from the chart origin.
    pub fn best_for(y: &[f64]) -> Chart {
        if y.last().copied().unwrap_or(0.0) <= 0.0 {
            Chart::North
        } else {
            Chart::South
        }
    }
}

/// `w_k = rho(t) e^{i (f(t) zeta^k + nu^k + drift_k t)} x^k`.
#[derive(Clone, Debug)]
pub struct FlatImmersion {
    m: usize,
    profile: MotionProfile,
    weights: Vec<f64>,
    level: f64,
    chart: Chart,
    drift: Vec<f64>,
}

impl FlatImmersion {
    /// `weights` are the components of `zeta`; `profile.nu` must have
    /// length `m`.
    pub fn new(profile: MotionProfile, weights: Vec<f64>, level: f64) -> Result<Self, FlatError> {
        let m = weights.len();
        if m == 0 || profile.nu.len() != m || weights.iter().any(|w| w.is_nan() || *w <= 0.0) {
            return Err(FlatError::BadWeights);
        }
        if level.is_nan() || level <= 0.0 {
            return Err(FlatError::BadLevel(level));
        }
        Ok(FlatImmersion { m, profile, weights, level, chart: Chart::North, drift: vec![0.0; m] })
    }

    /// Special Lagrangian with `Im(c(t)^m) = C`: `c(t)^m = t + i C`.
    pub fn special_lagrangian(m: usize, c: f64, level: f64) -> Result<Self, FlatError> {
        let params = crate::profile::AngleParams::from_values(m as f64, 0.0, 0.0, true);
        let profile = crate::profile::make_slag_profile(&params, c, (-1e6, 1e6), vec![0.0; m])
            .map_err(|_| FlatError::BadWeights)?;
        Self::new(profile, vec![1.0; m], level)
    }

    /// The closed shrinker `c(t) = e^{it}`.
    pub fn circle_shrinker(m: usize, level: f64) -> Result<Self, FlatError> {
        Self::new(MotionProfile::unit_circle(vec![0.0; m]), vec![1.0; m], level)
    }

    pub fn with_chart(&self, chart: Chart) -> Self {
        FlatImmersion { chart, ..self.clone() }
    }

    /// Makes `nu^k` move linearly in `t`, breaking the Lagrangian condition.
    pub fn with_phase_drift(&self, drift: Vec<f64>) -> Self {
        FlatImmersion { drift, ..self.clone() }
    }

    /// Adds `delta` to every `nu^k`.
    pub fn with_phase_shift(&self, delta: f64) -> Self {
        let mut p = self.profile.clone();
        p.nu.iter_mut().for_each(|v| *v += delta);
        FlatImmersion { profile: p, ..self.clone() }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn profile(&self) -> &MotionProfile {
        &self.profile
    }

    /// Real coordinates `x` on the level set for chart coordinates `u`.
    pub fn base_point(&self, u: &[f64]) -> Vec<f64> {
        let r = (2.0 * self.level).sqrt();
        let y = if self.m == 1 { vec![1.0] } else { self.chart.to_sphere(u) };
        y.iter().zip(&self.weights).map(|(yk, z)| r * yk / z.sqrt()).collect()
    }

    fn phases(&self, t: f64) -> Vec<f64> {
        let f = self.profile.f(t).value;
        (0..self.m).map(|k| f * self.weights[k] + self.profile.nu[k] + self.drift[k] * t).collect()
    }

    /// Complex coordinates `w` at `(u, t)`.
    pub fn embed_complex(&self, point: &[f64]) -> Vec<Complex64> {
        let (u, t) = point.split_at(self.m - 1);
        let t = t[0];
        let x = self.base_point(u);
        let rho = self.profile.rho(t).value;
        self.phases(t).iter().zip(&x).map(|(p, xk)| Complex64::from_polar(rho * xk, *p)).collect()
    }

    fn check_point(&self, point: &[f64]) -> Result<(), FlatError> {
        if point.len() != self.m {
            return Err(FlatError::WrongArity { expected: self.m, found: point.len() });
        }
        Ok(())
    }
}

impl Parametrization for FlatImmersion {
    fn param_dim(&self) -> usize {
        self.m
    }

    fn ambient_dim(&self) -> usize {
        2 * self.m
    }

    fn eval(&self, u: &[f64]) -> Vec<f64> {
        self.embed_complex(u).iter().flat_map(|w| [w.re, w.im]).collect()
    }
}

/// `(Re w_1, Im w_1, ..., Re w_m, Im w_m)`.
pub fn embed(imm: &FlatImmersion, point: &[f64]) -> Result<Vec<f64>, FlatError> {
    imm.check_point(point)?;
    Ok(imm.eval(point))
}

fn check_step(h: f64) -> Result<(), FlatError> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(FlatError::BadStep(h))
    }
}

fn shifted(u: &[f64], moves: &[(usize, f64)]) -> Vec<f64> {
    let mut v = u.to_vec();
    for &(i, d) in moves {
        v[i] += d;
    }
    v
}

fn axpy(a: f64, x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(xi, yi)| a * xi + yi).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Centered-difference partial derivatives.
pub fn tangents<P: Parametrization + ?Sized>(p: &P, u: &[f64], h: f64) -> Vec<Vec<f64>> {
    (0..p.param_dim())
        .map(|i| {
            let plus = p.eval(&shifted(u, &[(i, h)]));
            let minus = p.eval(&shifted(u, &[(i, -h)]));
            plus.iter().zip(&minus).map(|(a, b)| (a - b) / (2.0 * h)).collect()
        })
        .collect()
}

/// Centered second differences `d^2 F / du^i du^j`.
#[allow(clippy::needless_range_loop)]
pub fn second_derivatives<P: Parametrization + ?Sized>(p: &P, u: &[f64], h: f64) -> Vec<Vec<Vec<f64>>> {
    let n = p.param_dim();
    let centre = p.eval(u);
    let mut out = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v: Vec<f64> = if i == j {
                let a = p.eval(&shifted(u, &[(i, h)]));
                let b = p.eval(&shifted(u, &[(i, -h)]));
                (0..centre.len()).map(|k| (a[k] - 2.0 * centre[k] + b[k]) / (h * h)).collect()
            } else {
                let pp = p.eval(&shifted(u, &[(i, h), (j, h)]));
                let pm = p.eval(&shifted(u, &[(i, h), (j, -h)]));
                let mp = p.eval(&shifted(u, &[(i, -h), (j, h)]));
                let mm = p.eval(&shifted(u, &[(i, -h), (j, -h)]));
                (0..centre.len()).map(|k| (pp[k] - pm[k] - mp[k] + mm[k]) / (4.0 * h * h)).collect()
            };
            out[j][i] = v.clone();
            out[i][j] = v;
        }
    }
    out
}

/// Induced metric, its inverse, and the tangent frame.
struct Frame {
    tangents: Vec<Vec<f64>>,
    metric: DMatrix<f64>,
    inverse: DMatrix<f64>,
}

impl Frame {
    fn new<P: Parametrization + ?Sized>(p: &P, u: &[f64], h: f64) -> Result<Self, FlatError> {
        let tangents = tangents(p, u, h);
        let n = tangents.len();
        let metric = DMatrix::from_fn(n, n, |i, j| dot(&tangents[i], &tangents[j]));
        let eig = metric.clone().symmetric_eigen().eigenvalues;
        let (lo, hi) = (eig.min(), eig.max());
        let cond = if lo > 0.0 { hi / lo } else { f64::INFINITY };
        if cond > 1e8 {
            return Err(FlatError::DegenerateChartPoint(cond));
        }
        let inverse = metric.clone().try_inverse().ok_or(FlatError::DegenerateChartPoint(cond))?;
        Ok(Frame { tangents, metric, inverse })
    }

    /// Projection onto the normal space.
    fn normal_part(&self, v: &[f64]) -> Vec<f64> {
        let n = self.tangents.len();
        let b = DVector::from_fn(n, |j, _| dot(&self.tangents[j], v));
        let coeff = &self.inverse * b;
        let mut out = v.to_vec();
        for i in 0..n {
            out = axpy(-coeff[i], &self.tangents[i], &out);
        }
        out
    }
}

/// Finite-difference geometry at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometrySample {
    pub point: Vec<f64>,
    pub embedding: Vec<f64>,
    pub metric: DMatrix<f64>,
    pub mean_curvature: Vec<f64>,
    pub position_normal: Vec<f64>,
    /// Largest `|<H, F_i>|` and `|<F^perp, F_i>|` over tangents, relative to
    /// `|F_i|`.
    pub tangency: f64,
}

#[allow(clippy::needless_range_loop)]
pub fn sample_geometry<P: Parametrization + ?Sized>(p: &P, u: &[f64], h: f64) -> Result<GeometrySample, FlatError> {
    check_step(h)?;
    let frame = Frame::new(p, u, h)?;
    let second = second_derivatives(p, u, h);
    let n = frame.tangents.len();
    let mut trace = vec![0.0; p.ambient_dim()];
    for i in 0..n {
        for j in 0..n {
            trace = axpy(frame.inverse[(i, j)], &second[i][j], &trace);
        }
    }
    let mean_curvature = frame.normal_part(&trace);
    let embedding = p.eval(u);
    let position_normal = frame.normal_part(&embedding);
    let tangency = frame
        .tangents
        .iter()
        .map(|t| dot(&mean_curvature, t).abs().max(dot(&position_normal, t).abs()) / norm(t))
        .fold(0.0, f64::max);
    Ok(GeometrySample { point: u.to_vec(), embedding, metric: frame.metric, mean_curvature, position_normal, tangency })
}

/// `H = g^{ij} (F_ij)^perp`.
pub fn mean_curvature<P: Parametrization + ?Sized>(p: &P, u: &[f64], h: f64) -> Result<Vec<f64>, FlatError> {
    Ok(sample_geometry(p, u, h)?.mean_curvature)
}

/// `omega(F_i, F_j)` for the standard form `sum dx ^ dy`, i.e.
/// `Im(conj(a) . b)` in complex coordinates.
pub fn pullback_omega<P: Parametrization + ?Sized>(p: &P, u: &[f64], h: f64) -> Result<DMatrix<f64>, FlatError> {
    check_step(h)?;
    let t = tangents(p, u, h);
    let n = t.len();
    let omega =
        |a: &[f64], b: &[f64]| -> f64 { a.chunks(2).zip(b.chunks(2)).map(|(x, y)| x[0] * y[1] - x[1] * y[0]).sum() };
    Ok(DMatrix::from_fn(n, n, |i, j| omega(&t[i], &t[j])))
}

/// Chart choice plus chart coordinates `(u, t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    pub chart: Chart,
    pub coords: Vec<f64>,
}

/// `count` points: sphere points uniform on `S^{m-1}`, each in the chart
/// keeping it inside the unit ball, and `t` uniform in `t_range`.
pub fn random_samples(m: usize, count: usize, t_range: (f64, f64), seed: u64) -> Vec<SamplePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let t = rng.random_range(t_range.0..t_range.1);
            if m == 1 {
                return SamplePoint { chart: Chart::North, coords: vec![t] };
            }
            let y = loop {
                // Box-Muller normals, normalised
                let g: Vec<f64> = (0..m)
                    .map(|_| {
                        let a: f64 = rng.random_range(f64::EPSILON..1.0);
                        let b: f64 = rng.random();
                        (-2.0 * a.ln()).sqrt() * (2.0 * PI * b).cos()
                    })
                    .collect();
                let r = norm(&g);
                if r > 1e-6 {
                    break g.iter().map(|v| v / r).collect::<Vec<f64>>();
                }
            };
            let chart = Chart::best_for(&y);
            let mut coords = chart.from_sphere(&y).expect("chart chosen away from its pole");
            coords.push(t);
            SamplePoint { chart, coords }
        })
        .collect()
}

/// Largest `|omega(F_i, F_j)|` over the samples.
pub fn max_pullback_omega(imm: &FlatImmersion, samples: &[SamplePoint], h: f64) -> Result<f64, FlatError> {
    if samples.is_empty() {
        return Err(FlatError::NoSamples);
    }
    let mut worst: f64 = 0.0;
    for s in samples {
        let w = pullback_omega(&imm.with_chart(s.chart), &s.coords, h)?;
        worst = worst.max(w.amax());
    }
    Ok(worst)
}

/// Outcome of checking `H = lambda F^perp`.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfShrinkerCheck {
    pub predicted_lambda: f64,
    pub fitted_lambda: f64,
    /// `max |H - lambda F^perp|` with the predicted `lambda`.
    pub max_residual: f64,
    pub max_mean_curvature: f64,
    pub max_tangency: f64,
}

impl SelfShrinkerCheck {
    pub fn relative_lambda_error(&self) -> f64 {
        if self.predicted_lambda == 0.0 {
            self.fitted_lambda.abs()
        } else {
            ((self.fitted_lambda - self.predicted_lambda) / self.predicted_lambda).abs()
        }
    }
}

/// Residual of `H = lambda F^perp` against a predicted `lambda` and the
/// least-squares `lambda = sum <H, F^perp> / sum |F^perp|^2`.
pub fn check_self_shrinker<P: Parametrization + ?Sized>(
    surfaces: &[(&P, Vec<f64>)],
    predicted_lambda: f64,
    h: f64,
) -> Result<SelfShrinkerCheck, FlatError> {
    if surfaces.is_empty() {
        return Err(FlatError::NoSamples);
    }
    let (mut num, mut den) = (0.0, 0.0);
    let mut out = SelfShrinkerCheck {
        predicted_lambda,
        fitted_lambda: 0.0,
        max_residual: 0.0,
        max_mean_curvature: 0.0,
        max_tangency: 0.0,
    };
    for (p, u) in surfaces {
        let g = sample_geometry(*p, u, h)?;
        num += dot(&g.mean_curvature, &g.position_normal);
        den += dot(&g.position_normal, &g.position_normal);
        let r = norm(&axpy(-predicted_lambda, &g.position_normal, &g.mean_curvature));
        out.max_residual = out.max_residual.max(r);
        out.max_mean_curvature = out.max_mean_curvature.max(norm(&g.mean_curvature));
        out.max_tangency = out.max_tangency.max(g.tangency);
    }
    out.fitted_lambda = if den > 0.0 { num / den } else { 0.0 };
    Ok(out)
}

/// [`check_self_shrinker`] over samples of a flat immersion.
pub fn check_flat_self_shrinker(
    imm: &FlatImmersion,
    predicted_lambda: f64,
    samples: &[SamplePoint],
    h: f64,
) -> Result<SelfShrinkerCheck, FlatError> {
    let charts: Vec<FlatImmersion> = samples.iter().map(|s| imm.with_chart(s.chart)).collect();
    let pairs: Vec<(&FlatImmersion, Vec<f64>)> =
        charts.iter().zip(samples).map(|(c, s)| (c, s.coords.clone())).collect();
    check_self_shrinker(&pairs, predicted_lambda, h)
}

/// `arg det(dw(partial_1), ..., dw(partial_m))` mod `pi`: the phase of
/// `Omega = dw^1 ^ ... ^ dw^m` on the numeric tangent frame.
pub fn angle_from_volume_form(imm: &FlatImmersion, point: &[f64], h: f64) -> Result<f64, FlatError> {
    imm.check_point(point)?;
    check_step(h)?;
    let m = imm.m;
    let cols: Vec<Vec<Complex64>> = (0..m)
        .map(|i| {
            let a = imm.embed_complex(&shifted(point, &[(i, h)]));
            let b = imm.embed_complex(&shifted(point, &[(i, -h)]));
            a.iter().zip(&b).map(|(x, y)| (x - y) / (2.0 * h)).collect()
        })
        .collect();
    let jac = DMatrix::from_fn(m, m, |r, c| cols[c][r]);
    let det = jac.determinant();
    let scale: f64 = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).product();
    if det.norm().is_nan() || det.norm() <= 1e-12 * scale {
        return Err(FlatError::DegenerateFrame);
    }
    Ok(mod_pi(det.arg()))
}

/// The angle formula with explicit flat moment map and `gamma = (1,...,1)`:
/// `f sum_k zeta^k + sum_k nu^k + arg(sum_k (kappa' + i f' zeta^k) zeta^k (x^k)^2)`.
pub fn angle_from_formula(imm: &FlatImmersion, point: &[f64]) -> Result<f64, FlatError> {
    imm.check_point(point)?;
    let (u, t) = point.split_at(imm.m - 1);
    let t = t[0];
    let x = imm.base_point(u);
    let f = imm.profile.f(t);
    let kappa = imm.profile.kappa(t);
    let z: Complex64 =
        (0..imm.m).map(|k| Complex64::new(kappa.deriv, f.deriv * imm.weights[k]) * imm.weights[k] * x[k] * x[k]).sum();
    if z.norm() == 0.0 {
        return Err(FlatError::DegenerateFrame);
    }
    let base: f64 = f.value * imm.weights.iter().sum::<f64>() + imm.profile.nu.iter().sum::<f64>();
    Ok(mod_pi(base + z.arg()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngleCheck {
    pub max_discrepancy: f64,
    /// Angle from the volume form at each sample, in `[0, pi)`.
    pub angles: Vec<f64>,
}

/// Compares [`angle_from_formula`] with [`angle_from_volume_form`].
pub fn angle_full_formula_check(imm: &FlatImmersion, samples: &[SamplePoint], h: f64) -> Result<AngleCheck, FlatError> {
    if samples.is_empty() {
        return Err(FlatError::NoSamples);
    }
    let mut out = AngleCheck { max_discrepancy: 0.0, angles: Vec::with_capacity(samples.len()) };
    for s in samples {
        let c = imm.with_chart(s.chart);
        let direct = angle_from_volume_form(&c, &s.coords, h)?;
        let formula = angle_from_formula(&c, &s.coords)?;
        out.max_discrepancy = out.max_discrepancy.max(circular_distance_pi(direct, formula));
        out.angles.push(direct);
    }
    Ok(out)
}

/// Circle of radius `r` in `R^2`.
#[derive(Clone, Copy, Debug)]
pub struct Circle {
    pub radius: f64,
}

impl Parametrization for Circle {
    fn param_dim(&self) -> usize {
        1
    }

    fn ambient_dim(&self) -> usize {
        2
    }

    fn eval(&self, u: &[f64]) -> Vec<f64> {
        vec![self.radius * u[0].cos(), self.radius * u[0].sin()]
    }
}

/// Round sphere of radius `r` in `R^n` through a stereographic chart.
#[derive(Clone, Copy, Debug)]
pub struct RoundSphere {
    pub radius: f64,
    pub ambient: usize,
    pub chart: Chart,
}

impl Parametrization for RoundSphere {
    fn param_dim(&self) -> usize {
        self.ambient - 1
    }

    fn ambient_dim(&self) -> usize {
        self.ambient
    }

    fn eval(&self, u: &[f64]) -> Vec<f64> {
        self.chart.to_sphere(u).iter().map(|y| self.radius * y).collect()
    }
}

/// Product of two unit circles in `C^2`.
#[derive(Clone, Copy, Debug)]
pub struct CliffordTorus;

impl Parametrization for CliffordTorus {
    fn param_dim(&self) -> usize {
        2
    }

    fn ambient_dim(&self) -> usize {
        4
    }

    fn eval(&self, u: &[f64]) -> Vec<f64> {
        vec![u[0].cos(), u[0].sin(), u[1].cos(), u[1].sin()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{Interval, Jet};

    const H: f64 = 1e-4;

    #[test]
    fn charts_invert() {
        for chart in [Chart::North, Chart::South] {
            let u = [0.3, -0.7];
            let y = chart.to_sphere(&u);
            assert!((norm(&y) - 1.0).abs() < 1e-15);
            let back = chart.from_sphere(&y).unwrap();
            assert!((back[0] - u[0]).abs() < 1e-15 && (back[1] - u[1]).abs() < 1e-15);
        }
        assert!(Chart::North.from_sphere(&[0.0, 0.0, 1.0]).is_none());
    }

    #[test]
    fn embedding_examples() {
        // m = 2, c = 1, radius 1 (moment level 1/2)
        let p = MotionProfile::with_constant_rho(
            Interval::Circle { period: 1.0 },
            |_| Jet::new(0.0, 1.0),
            1.0,
            vec![0.0, 0.0],
        );
        let imm = FlatImmersion::new(p, vec![1.0, 1.0], 0.5).unwrap();
        for u in [-2.0, 0.1, 0.9] {
            let w = embed(&imm, &[u, 0.0]).unwrap();
            assert!((w[0].hypot(w[2]) - 1.0).abs() < 1e-15);
            assert_eq!((w[1], w[3]), (0.0, 0.0));
        }
        let a = FlatImmersion::circle_shrinker(3, 1.5).unwrap();
        let b = FlatImmersion::circle_shrinker(3, 6.0).unwrap();
        let pt = [0.2, -0.4, 1.3];
        let (wa, wb) = (embed(&a, &pt).unwrap(), embed(&b, &pt).unwrap());
        for (x, y) in wa.iter().zip(&wb) {
            assert!((2.0 * x - y).abs() < 1e-14);
        }
        assert!(matches!(embed(&a, &[0.0]), Err(FlatError::WrongArity { .. })));
    }

    #[test]
    fn moment_level_holds() {
        let p = MotionProfile::unit_circle(vec![0.0; 3]);
        let imm = FlatImmersion::new(p, vec![1.0, 2.0, 0.5], 1.7).unwrap();
        let x = imm.base_point(&[0.4, 1.1]);
        let level: f64 = 0.5 * x.iter().zip([1.0, 2.0, 0.5]).map(|(v, z)| z * v * v).sum::<f64>();
        assert!((level - 1.7).abs() < 1e-14);
    }

    #[test]
    fn circle_and_sphere() {
        for r in [0.5, 1.0, 3.0] {
            let g = sample_geometry(&Circle { radius: r }, &[0.7], H).unwrap();
            assert!((norm(&g.mean_curvature) - 1.0 / r).abs() < 1e-6);
            assert!(dot(&g.mean_curvature, &g.embedding) < 0.0);
            for n in [3usize, 4] {
                let s = RoundSphere { radius: r, ambient: n, chart: Chart::North };
                let u = vec![0.3; n - 1];
                let g = sample_geometry(&s, &u, H).unwrap();
                let want = -((n - 1) as f64) / (r * r);
                let resid = norm(&axpy(-want, &g.embedding, &g.mean_curvature));
                assert!(resid < 1e-6, "sphere n={n} r={r}: {resid}");
            }
        }
    }

    #[test]
    fn clifford_torus() {
        let g = sample_geometry(&CliffordTorus, &[0.4, 2.2], H).unwrap();
        assert!((norm(&g.mean_curvature) - 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn degenerate_chart_point() {
        struct Cusp;
        impl Parametrization for Cusp {
            fn param_dim(&self) -> usize {
                2
            }
            fn ambient_dim(&self) -> usize {
                3
            }
            fn eval(&self, u: &[f64]) -> Vec<f64> {
                vec![u[0], u[1].powi(3), 0.0]
            }
        }
        assert!(matches!(mean_curvature(&Cusp, &[0.0, 0.0], H), Err(FlatError::DegenerateChartPoint(_))));
    }

    #[test]
    fn lagrangian_and_detector() {
        let samples = random_samples(3, 20, (0.0, 6.0), 7);
        let shr = FlatImmersion::circle_shrinker(3, 1.5).unwrap();
        assert!(max_pullback_omega(&shr, &samples, 1e-5).unwrap() <= 1e-9);
        let bad = shr.with_phase_drift(vec![0.5, 0.0, 0.0]);
        assert!(max_pullback_omega(&bad, &samples, 1e-5).unwrap() > 1e-3);
    }

    #[test]
    fn weighted_level_sets_stay_lagrangian_and_angles_agree() {
        let p = MotionProfile::from_f_kappa(
            Interval::open(-2.0, 2.0).unwrap(),
            |t| Jet::new(0.3 * t + 0.1 * t * t, 0.3 + 0.2 * t),
            |t| Jet::new(0.2 * t.sin(), 0.2 * t.cos()),
            vec![0.1, -0.4, 0.7],
        );
        let imm = FlatImmersion::new(p, vec![1.0, 2.0, 3.0], 2.0).unwrap();
        let samples = random_samples(3, 20, (-1.5, 1.5), 11);
        assert!(max_pullback_omega(&imm, &samples, 1e-5).unwrap() <= 1e-9);
        assert!(angle_full_formula_check(&imm, &samples, 1e-5).unwrap().max_discrepancy <= 1e-6);
    }

    #[test]
    fn one_dimensional_reduction() {
        // w = c(t) x with c = e^{2it}(1 + t/3): Omega = dw, angle = arg(c' x)
        let p = MotionProfile::from_f_kappa(
            Interval::open(-1.0, 1.0).unwrap(),
            |t| Jet::new(2.0 * t, 2.0),
            |t| Jet::new((1.0 + t / 3.0).ln(), 1.0 / (3.0 + t)),
            vec![0.25],
        );
        let imm = FlatImmersion::new(p, vec![1.0], 0.5).unwrap();
        let t = 0.4;
        let c_dot = Complex64::from_polar(1.0, 2.0 * t + 0.25) * Complex64::new(1.0 / 3.0, 2.0 * (1.0 + t / 3.0));
        let hand = mod_pi(c_dot.arg());
        assert!(circular_distance_pi(angle_from_volume_form(&imm, &[t], 1e-5).unwrap(), hand) < 1e-8);
        assert!(circular_distance_pi(angle_from_formula(&imm, &[t]).unwrap(), hand) < 1e-12);
    }

    #[test]
    fn shrinker_equation_in_c3() {
        let level = 1.5;
        let imm = FlatImmersion::circle_shrinker(3, level).unwrap();
        let samples = random_samples(3, 10, (0.0, 6.0), 3);
        let lambda = -3.0 / (2.0 * level);
        let rep = check_flat_self_shrinker(&imm, lambda, &samples, H).unwrap();
        assert!(rep.max_residual <= 1e-3, "{rep:?}");
        assert!(rep.relative_lambda_error() <= 1e-3);
    }

    #[test]
    fn special_lagrangian_is_minimal() {
        let imm = FlatImmersion::special_lagrangian(3, 1.0, 1.0).unwrap();
        let samples = random_samples(3, 10, (-1.5, 1.5), 5);
        let rep = check_flat_self_shrinker(&imm, 0.0, &samples, H).unwrap();
        assert!(rep.max_mean_curvature <= 1e-4, "{rep:?}");
        assert!(rep.fitted_lambda.abs() <= 1e-3);
        let ang = angle_full_formula_check(&imm, &samples, 1e-5).unwrap();
        assert!(ang.max_discrepancy <= 1e-6);
        for a in ang.angles {
            assert!(circular_distance_pi(a, 0.0) <= 1e-6);
        }
    }

    #[test]
    fn phase_shift_moves_the_angle() {
        let imm = FlatImmersion::circle_shrinker(3, 1.0).unwrap();
        let samples = random_samples(3, 5, (0.0, 6.0), 9);
        let delta = 0.37;
        let a = angle_full_formula_check(&imm, &samples, 1e-5).unwrap();
        let b = angle_full_formula_check(&imm.with_phase_shift(delta), &samples, 1e-5).unwrap();
        for (x, y) in a.angles.iter().zip(&b.angles) {
            assert!(circular_distance_pi(y - x, 3.0 * delta) < 1e-6);
        }
    }

    #[test]
    fn charts_agree_on_overlaps() {
        let imm = FlatImmersion::circle_shrinker(3, 1.0).unwrap();
        let y = Chart::North.to_sphere(&[0.6, -0.8]);
        for t in [0.3, 2.0] {
            let mut un = Chart::North.from_sphere(&y).unwrap();
            let mut us = Chart::South.from_sphere(&y).unwrap();
            un.push(t);
            us.push(t);
            let a = sample_geometry(&imm.with_chart(Chart::North), &un, H).unwrap();
            let b = sample_geometry(&imm.with_chart(Chart::South), &us, H).unwrap();
            assert!((norm(&a.mean_curvature) - norm(&b.mean_curvature)).abs() < 1e-6);
            assert!((norm(&a.position_normal) - norm(&b.position_normal)).abs() < 1e-6);
            let aa = angle_from_volume_form(&imm.with_chart(Chart::North), &un, 1e-5).unwrap();
            let ab = angle_from_volume_form(&imm.with_chart(Chart::South), &us, 1e-5).unwrap();
            assert!(circular_distance_pi(aa, ab) < 1e-6);
        }
    }

    #[test]
    fn second_order_convergence() {
        let level = 1.0;
        let imm = FlatImmersion::circle_shrinker(3, level).unwrap();
        let samples = random_samples(3, 4, (0.0, 6.0), 1);
        let resid = |h| check_flat_self_shrinker(&imm, -1.5, &samples, h).unwrap().max_residual;
        let ratio = resid(2e-2) / resid(1e-2);
        assert!((2.0..=8.0).contains(&ratio), "ratio {ratio}");
        let tangency = check_flat_self_shrinker(&imm, -1.5, &samples, H).unwrap().max_tangency;
        assert!(tangency < 1e-6);
    }
}

//! Orchestration of all checks on a cone document, with a report that
//! renders both as text and as JSON.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{
    calabi_yau_gamma, is_good, ray_pairings, rays_for, reeb_admissible, GoodnessViolation, PolyhedralCone,
};
use crate::document::{ConeSpecDocument, ProfileDescriptor};
use crate::flat::{
    angle_full_formula_check, check_flat_self_shrinker, max_pullback_omega, random_samples, sample_geometry, Chart,
    Circle, FlatImmersion, RoundSphere,
};
use crate::linalg::{format_rational, LatticeVector, RationalVector};
use crate::profile::{
    angle_reeb_case, circular_distance_pi, make_slag_profile, slag_conserved, AngleParams, MotionProfile,
};
use crate::shrinker::{
    angle_equals_theta, consistency_residual, exact_circle_error, exact_circle_state, integrate, ShrinkerParams,
};
use crate::slice::{check_assumptions, compute_slice, SlicePolytope, SliceSpec};
use crate::topology::{build_glued_surface, GluedSurface};

/// Check names in execution order.
pub const CHECK_NAMES: [&str; 13] = [
    "validity",
    "goodness",
    "calabi-yau",
    "reeb",
    "slice-assumptions",
    "slice",
    "topology",
    "slag-profile",
    "shrinker-ode",
    "flat-lagrangian",
    "flat-minimal",
    "flat-shrinker",
    "flat-angle",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    /// A prerequisite check did not pass.
    #[error("{check}: {detail}")]
    Unavailable { check: String, detail: String },
}

/// A set of check names; empty selects every check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckSelection(BTreeSet<&'static str>);

impl CheckSelection {
    pub fn all() -> Self {
        CheckSelection(BTreeSet::new())
    }

    pub fn parse<S: AsRef<str>>(names: &[S]) -> Result<Self, PipelineError> {
        let mut set = BTreeSet::new();
        for n in names {
            let n = n.as_ref();
            let found = CHECK_NAMES.iter().find(|c| **c == n).ok_or_else(|| PipelineError::UnknownCheck(n.into()))?;
            set.insert(*found);
        }
        Ok(CheckSelection(set))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.is_empty() || self.0.contains(name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineOptions {
    /// Multiplies every upper tolerance.
    pub tol_scale: f64,
    /// RK4 step for the shrinker ODE.
    pub ode_step: f64,
    /// Finite-difference step for curvature.
    pub curvature_step: f64,
    /// Finite-difference step for first-order quantities.
    pub tangent_step: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            tol_scale: 1.0,
            ode_step: 1e-3,
            curvature_step: 1e-4,
            tangent_step: 1e-5,
            samples: 50,
            seed: 20240917,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub name: String,
    pub value: f64,
    pub comparison: Comparison,
    pub tolerance: f64,
}

impl Residual {
    pub fn ok(&self) -> bool {
        match self.comparison {
            Comparison::AtMost => self.value <= self.tolerance,
            Comparison::AtLeast => self.value >= self.tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(default)]
    pub residuals: Vec<Residual>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub options: PipelineOptions,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// No check failed.
    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(s, "{}  {:<18} {}", c.status.tag(), c.name, c.detail);
            for r in &c.residuals {
                let cmp = match r.comparison {
                    Comparison::AtMost => "<=",
                    Comparison::AtLeast => ">=",
                };
                let _ = writeln!(s, "      {:<38} {:.3e} {} {:.3e}", r.name, r.value, cmp, r.tolerance);
            }
        }
        let _ = writeln!(
            s,
            "summary: {} pass, {} fail, {} skip",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        );
        s
    }
}

/// Values produced by earlier checks.
#[derive(Default)]
struct State {
    cone: Option<PolyhedralCone>,
    gamma: Option<LatticeVector>,
    xi: Option<RationalVector>,
    spec: Option<SliceSpec>,
    slice: Option<SlicePolytope>,
    surface: Option<GluedSurface>,
}

type Outcome = Result<(Status, String, Vec<Residual>), String>;

struct Runner<'a> {
    doc: &'a ConeSpecDocument,
    opts: &'a PipelineOptions,
    state: State,
    statuses: Vec<(&'static str, Status)>,
    records: Vec<CheckRecord>,
}

impl Runner<'_> {
    fn at_most(&self, name: &str, value: f64, tol: f64) -> Residual {
        Residual { name: name.into(), value, comparison: Comparison::AtMost, tolerance: tol * self.opts.tol_scale }
    }

    fn status_of(&self, name: &str) -> Option<Status> {
        self.statuses.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
    }

    /// Runs `body` unless a dependency did not pass; checks are always
    /// computed so later ones can use them, but only selected ones are
    /// recorded.
    fn run(&mut self, name: &'static str, deps: &[&str], record: bool, body: impl FnOnce(&mut Self) -> Outcome) {
        let blocked: Vec<&str> = deps.iter().copied().filter(|d| self.status_of(d) != Some(Status::Pass)).collect();
        let (status, detail, residuals) = if blocked.is_empty() {
            match body(self) {
                Ok((status, detail, residuals)) => {
                    let status =
                        if status == Status::Pass && residuals.iter().any(|r| !r.ok()) { Status::Fail } else { status };
                    (status, detail, residuals)
                }
                Err(msg) => (Status::Fail, msg, Vec::new()),
            }
        } else {
            (Status::Skip, format!("needs {}", blocked.join(", ")), Vec::new())
        };
        self.statuses.push((name, status));
        if record {
            self.records.push(CheckRecord { name: name.into(), status, detail, residuals });
        }
    }
}

fn show<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn pass(detail: String, residuals: Vec<Residual>) -> Outcome {
    Ok((Status::Pass, detail, residuals))
}

fn fail(detail: String) -> Outcome {
    Ok((Status::Fail, detail, Vec::new()))
}

fn skip(detail: &str) -> Outcome {
    Ok((Status::Skip, detail.into(), Vec::new()))
}

/// Runs the selected checks in dependency order. Never panics on bad input:
/// failures are recorded and downstream checks are skipped.
pub fn run_pipeline(doc: &ConeSpecDocument, which: &CheckSelection, opts: &PipelineOptions) -> Report {
    let mut r = Runner::new(doc, opts);
    let sel = |n: &str| which.contains(n);

    r.run("validity", &[], sel("validity"), check_validity);
    r.run("goodness", &["validity"], sel("goodness"), check_goodness);
    r.run("calabi-yau", &["validity"], sel("calabi-yau"), check_calabi_yau);
    r.run("reeb", &["validity"], sel("reeb"), check_reeb);
    r.run("slice-assumptions", &["validity"], sel("slice-assumptions"), check_slice_assumptions);
    r.run("slice", &["slice-assumptions"], sel("slice"), check_slice);
    r.run("topology", &["slice"], sel("topology"), check_topology);
    r.run("slag-profile", &["calabi-yau", "reeb", "slice-assumptions"], sel("slag-profile"), check_slag_profile);
    r.run("shrinker-ode", &["calabi-yau", "reeb", "slice-assumptions"], sel("shrinker-ode"), check_shrinker_ode);
    r.run("flat-lagrangian", &["validity"], sel("flat-lagrangian"), check_flat_lagrangian);
    r.run("flat-minimal", &["validity"], sel("flat-minimal"), check_flat_minimal);
    r.run("flat-shrinker", &["validity"], sel("flat-shrinker"), check_flat_shrinker);
    r.run("flat-angle", &["validity"], sel("flat-angle"), check_flat_angle);

    Report { options: opts.clone(), checks: r.records }
}

impl<'a> Runner<'a> {
    fn new(doc: &'a ConeSpecDocument, opts: &'a PipelineOptions) -> Self {
        Runner { doc, opts, state: State::default(), statuses: Vec::new(), records: Vec::new() }
    }

    /// Runs unrecorded checks up to `name`, erroring unless it passed.
    fn require(
        &mut self,
        name: &'static str,
        deps: &[&str],
        body: impl FnOnce(&mut Self) -> Outcome,
    ) -> Result<(), PipelineError> {
        self.run(name, deps, true, body);
        let rec = self.records.pop().expect("just recorded");
        match rec.status {
            Status::Pass => Ok(()),
            _ => Err(PipelineError::Unavailable { check: name.into(), detail: rec.detail }),
        }
    }

    fn prepare_slice(&mut self) -> Result<(), PipelineError> {
        self.require("validity", &[], check_validity)?;
        self.require("slice-assumptions", &["validity"], check_slice_assumptions)?;
        self.require("slice", &["slice-assumptions"], check_slice)
    }
}

/// The cone, its slice polygon and the glued surface of a document.
pub fn build_slice_and_surface(
    doc: &ConeSpecDocument,
) -> Result<(PolyhedralCone, SlicePolytope, GluedSurface), PipelineError> {
    let opts = PipelineOptions::default();
    let mut r = Runner::new(doc, &opts);
    r.prepare_slice()?;
    r.require("topology", &["slice"], check_topology).or_else(|e| match &r.state.surface {
        // a disconnected or non-orientable surface can still be drawn
        Some(_) => Ok(()),
        None => Err(e),
    })?;
    let State { cone, slice, surface, .. } = r.state;
    Ok((cone.expect("validity passed"), slice.expect("slice passed"), surface.expect("surface built")))
}

/// The RK4 trajectory integrated by the `shrinker-ode` check.
pub fn shrinker_trajectory(
    doc: &ConeSpecDocument,
    opts: &PipelineOptions,
) -> Result<crate::shrinker::Trajectory, PipelineError> {
    let mut r = Runner::new(doc, opts);
    r.require("validity", &[], check_validity)?;
    r.require("calabi-yau", &["validity"], check_calabi_yau)?;
    r.require("reeb", &["validity"], check_reeb)?;
    r.require("slice-assumptions", &["validity"], check_slice_assumptions)?;
    let unavailable = |detail: String| PipelineError::Unavailable { check: "shrinker-ode".into(), detail };
    let params = reeb_case_params(&r).map_err(|why| unavailable(why.into()))?;
    let (sp, _) =
        shrinker_setup(&r, &params).map_err(unavailable)?.ok_or_else(|| unavailable(NOT_A_SHRINKER.into()))?;
    integrate(exact_circle_state(params.n, 0.0), &sp, (0.0, TAU), opts.ode_step).map_err(|e| unavailable(e.to_string()))
}

fn check_validity(r: &mut Runner) -> Outcome {
    let cone = r.doc.cone().map_err(show)?;
    r.doc.gamma_vector().map_err(show)?;
    let detail = format!("{} conormals in Z^{}, primitive, strongly convex", cone.len(), cone.dim());
    r.state.cone = Some(cone);
    pass(detail, Vec::new())
}

fn check_goodness(r: &mut Runner) -> Outcome {
    let cone = r.state.cone.as_ref().expect("validity passed");
    let rep = is_good(cone).map_err(show)?;
    let shortcut = match &rep.shortcut {
        Some(s) if s.good => "consecutive-difference test agrees".to_string(),
        Some(s) => match s.failing_pair {
            Some((i, j)) => format!("consecutive-difference test fails at pair ({}, {})", i + 1, j + 1),
            None => "consecutive-difference test fails".to_string(),
        },
        None => "consecutive-difference test not applicable".to_string(),
    };
    if rep.good {
        return pass(format!("{} face subsets unimodular; {shortcut}", rep.faces_checked), Vec::new());
    }
    let w = rep.witness.expect("bad cones carry a witness");
    let subset: Vec<String> = w.subset.iter().map(|i| (i + 1).to_string()).collect();
    let why = match &w.violation {
        GoodnessViolation::LinearlyDependent => "linearly dependent".to_string(),
        GoodnessViolation::IndexGreaterThanOne { divisors } => {
            let d: Vec<String> = divisors.iter().map(BigInt::to_string).collect();
            format!("elementary divisors [{}]", d.join(", "))
        }
    };
    fail(format!("conormals {{{}}}: {why}; {shortcut}", subset.join(", ")))
}

fn check_calabi_yau(r: &mut Runner) -> Outcome {
    let cone = r.state.cone.as_ref().expect("validity passed");
    let given = r.doc.gamma_vector().map_err(show)?;
    if let Some(g) = given {
        let bad: Vec<String> = cone
            .conormals()
            .iter()
            .enumerate()
            .filter(|(_, l)| l.dot(&g) != BigInt::from(1))
            .map(|(i, _)| (i + 1).to_string())
            .collect();
        if !bad.is_empty() {
            return fail(format!("given gamma = {g} pairs to 1 with no conormal in {{{}}}", bad.join(", ")));
        }
        r.state.gamma = Some(g.clone());
        return pass(format!("gamma = {g} (given, verified)"), Vec::new());
    }
    match calabi_yau_gamma(cone).gamma {
        Some(g) => {
            let detail = format!("gamma = {g} (solved)");
            r.state.gamma = Some(g);
            pass(detail, Vec::new())
        }
        None => fail("no integral gamma with <gamma, lambda_i> = 1 for all i".into()),
    }
}

fn check_reeb(r: &mut Runner) -> Outcome {
    let cone = r.state.cone.as_ref().expect("validity passed");
    let xi = r.doc.reeb_vector(cone).map_err(show)?;
    let ok = reeb_admissible(cone, &xi).map_err(show)?;
    let rays = rays_for(cone).map_err(show)?;
    let pairings = ray_pairings(&rays, &xi);
    let min = pairings.iter().min().cloned().unwrap_or_else(|| BigRational::from_integer(0.into()));
    let detail = format!("xi = {xi}, min <xi, ray> = {}", format_rational(&min));
    if ok {
        r.state.xi = Some(xi);
        pass(detail, Vec::new())
    } else {
        fail(format!("{detail}: not in the interior of the dual cone"))
    }
}

fn check_slice_assumptions(r: &mut Runner) -> Outcome {
    let cone = r.state.cone.as_ref().expect("validity passed");
    let xi = r.doc.reeb_vector(cone).map_err(show)?;
    let gamma = match r.doc.gamma_vector().map_err(show)? {
        Some(g) => Some(g),
        None => calabi_yau_gamma(cone).gamma,
    };
    let spec = r.doc.slice_spec(&xi, gamma.as_ref()).map_err(show)?;
    let rep = check_assumptions(cone, &spec).map_err(show)?;
    let mut detail = format!("zeta = {}, c = {}", spec.zeta(), format_rational(spec.level()));
    if !rep.interior_meets_hyperplane {
        detail.push_str(": hyperplane misses the interior of the moment cone");
    } else if !rep.transversal {
        if let Some(face) = &rep.failing_face {
            let c: Vec<String> = face.conormals.iter().map(|i| (i + 1).to_string()).collect();
            let _ =
                write!(detail, ": zeta lies in the conormal span of face {{{}}} meeting the hyperplane", c.join(", "));
        } else {
            detail.push_str(": not transversal");
        }
    } else {
        let _ = write!(detail, "; {} faces transversal", rep.faces_checked);
    }
    for w in &rep.warnings {
        let _ = write!(detail, "; warning: {w}");
    }
    let holds = rep.holds();
    r.state.spec = Some(spec);
    if holds {
        pass(detail, Vec::new())
    } else {
        fail(detail)
    }
}

fn check_slice(r: &mut Runner) -> Outcome {
    let cone = r.state.cone.as_ref().expect("validity passed");
    if cone.dim() != 3 {
        return skip("slice polygon is built for dimension 3 only");
    }
    let spec = r.state.spec.as_ref().expect("slice assumptions passed");
    let slice = compute_slice(cone, spec).map_err(show)?;
    slice.verify(cone).map_err(show)?;
    let two = BigRational::from_integer(2.into());
    let doubled = compute_slice(cone, &spec.with_level(spec.level() * &two)).map_err(show)?;
    if doubled.vertices != slice.scaled(&two).vertices {
        return fail("slice at 2c differs from 2 x slice at c".into());
    }
    let verts: Vec<String> = slice.vertices.iter().map(|v| v.to_string()).collect();
    let detail = format!("{}-gon, vertices {}; homogeneous under c -> 2c", slice.len(), verts.join(" "));
    r.state.slice = Some(slice);
    pass(detail, Vec::new())
}

fn check_topology(r: &mut Runner) -> Outcome {
    let cone = r.state.cone.as_ref().expect("validity passed");
    let slice = r.state.slice.as_ref().expect("slice passed");
    let s = build_glued_surface(slice, cone).map_err(show)?;
    let counts = format!(
        "V = {}, E = {}, F = {}, chi = {}, {} component(s), {}",
        s.vertex_count(),
        s.edge_count(),
        s.face_count(),
        s.euler_characteristic(),
        s.components,
        if s.is_orientable() { "orientable" } else { "non-orientable" }
    );
    let genus = s.genus();
    r.state.surface = Some(s);
    match genus {
        Ok(g) => pass(format!("{counts}, genus {g}"), Vec::new()),
        Err(e) => fail(format!("{counts}: {e}")),
    }
}

/// `N = <gamma, zeta>` with the Reeb-case preconditions, or a skip reason.
fn reeb_case_params(r: &Runner) -> Result<AngleParams, &'static str> {
    let gamma = r.state.gamma.as_ref().expect("calabi-yau passed");
    let xi = r.state.xi.as_ref().expect("reeb passed");
    let spec = r.state.spec.as_ref().expect("slice assumptions ran");
    let params = AngleParams::from_cone_data(gamma, spec.zeta(), xi, &vec![0.0; xi.dim()], 0.0);
    if !params.zeta_is_reeb {
        return Err("zeta differs from xi: the angle depends on the cone metric");
    }
    if !params.n_exact.as_ref().is_some_and(Signed::is_positive) {
        return Err("N = <gamma, zeta> is not positive");
    }
    Ok(params)
}

fn check_slag_profile(r: &mut Runner) -> Outcome {
    let params = match reeb_case_params(r) {
        Ok(p) => p,
        Err(why) => return skip(why),
    };
    let m = r.state.xi.as_ref().expect("reeb passed").dim();
    let n = params.n;
    // the line profile has |t + iC| up to the interval ends, so its drift
    // bound is relative to that size
    let (profile, params, expected, lo, hi, label, relative) = match &r.doc.profile {
        None | Some(ProfileDescriptor::SlagSine {}) => (
            MotionProfile::slag_sine(n, vec![0.0; m]),
            params,
            1.0,
            0.05,
            PI - 0.05,
            "f = t/N, rho = (1/sin t)^(1/N)".to_string(),
            false,
        ),
        Some(ProfileDescriptor::SlagLine { c, t_min, t_max, theta0 }) => {
            let params = AngleParams { theta0: *theta0, ..params };
            let p = make_slag_profile(&params, *c, (*t_min, *t_max), vec![0.0; m]).map_err(show)?;
            let (lo, hi) = (t_min + (t_max - t_min) * 1e-3, t_max - (t_max - t_min) * 1e-3);
            (p, params, *c, lo, hi, format!("line Im(...) = {c} on ({t_min}, {t_max})"), true)
        }
        Some(ProfileDescriptor::ShrinkerCircle { .. }) => return skip("document profile is a shrinker"),
    };
    let count = 1000;
    let (mut drift, mut angle_err, mut scale) = (0.0f64, 0.0f64, 1.0f64);
    for i in 0..count {
        let t = lo + (hi - lo) * i as f64 / (count - 1) as f64;
        let v = slag_conserved(&profile, &params, t).map_err(show)?;
        drift = drift.max((v - expected).abs());
        if relative {
            scale = scale.max((params.n * profile.kappa(t).value).exp());
        }
        let a = angle_reeb_case(&profile, &params, t).map_err(show)?;
        angle_err = angle_err.max(circular_distance_pi(a, params.theta0));
    }
    let residuals = vec![
        r.at_most("conserved quantity drift", drift, 1e-12 * scale),
        r.at_most("angle - theta0 (mod pi)", angle_err, 1e-10),
    ];
    pass(format!("{label}, N = {n}, {count} samples on [{lo:.4}, {hi:.4}]"), residuals)
}

fn check_shrinker_ode(r: &mut Runner) -> Outcome {
    let params = match reeb_case_params(r) {
        Ok(p) => p,
        Err(why) => return skip(why),
    };
    let n = params.n;
    let Some((sp, a)) = shrinker_setup(r, &params)? else {
        return skip(NOT_A_SHRINKER);
    };
    let traj = integrate(exact_circle_state(n, 0.0), &sp, (0.0, TAU), r.opts.ode_step).map_err(show)?;
    let mut residuals = vec![
        r.at_most("consistency residual", consistency_residual(&traj, &sp).map_err(show)?, 1e-6),
        r.at_most("angle - theta", angle_equals_theta(&traj, &sp).map_err(show)?, 1e-6),
    ];
    if a == -n {
        residuals.insert(0, r.at_most("max error vs e^{it}", exact_circle_error(&traj, n), 1e-9));
    }
    pass(format!("RK4 on [0, 2pi], h = {}, N = {n}, A = {a}", r.opts.ode_step), residuals)
}

const NOT_A_SHRINKER: &str = "document profile is special Lagrangian";

/// Shrinker parameters and `A`; `None` when the document profile is not a
/// shrinker.
fn shrinker_setup(r: &Runner, params: &AngleParams) -> Result<Option<(ShrinkerParams, f64)>, String> {
    let n = params.n;
    let a = match &r.doc.profile {
        None => -n,
        Some(ProfileDescriptor::ShrinkerCircle { a }) => a.unwrap_or(-n),
        Some(_) => return Ok(None),
    };
    Ok(Some((ShrinkerParams::new(n, params.theta, a).map_err(show)?, a)))
}

/// The flat model in `C^m`: `zeta = (1, ..., 1)`, level `m / 2`, `N = m`,
/// `A = -m`.
struct FlatModel {
    m: usize,
    level: f64,
    lambda: f64,
    slag: FlatImmersion,
    shrinker: FlatImmersion,
}

fn flat_model(r: &Runner) -> Result<FlatModel, String> {
    let m = r.state.cone.as_ref().expect("validity passed").dim();
    let level = m as f64 / 2.0;
    Ok(FlatModel {
        m,
        level,
        lambda: -(m as f64) / (2.0 * level),
        slag: FlatImmersion::special_lagrangian(m, 1.0, level).map_err(show)?,
        shrinker: FlatImmersion::circle_shrinker(m, level).map_err(show)?,
    })
}

impl Runner<'_> {
    fn flat_samples(&self, m: usize) -> (Vec<crate::flat::SamplePoint>, Vec<crate::flat::SamplePoint>) {
        let n = self.opts.samples;
        (random_samples(m, n, (-1.5, 1.5), self.opts.seed), random_samples(m, n, (0.0, TAU), self.opts.seed + 1))
    }
}

fn flat_header(f: &FlatModel, samples: usize) -> String {
    format!("C^{}, level {}, {samples} samples", f.m, f.level)
}

fn check_flat_lagrangian(r: &mut Runner) -> Outcome {
    let f = flat_model(r)?;
    let (s_slag, s_shr) = r.flat_samples(f.m);
    let h = r.opts.tangent_step;
    let a = max_pullback_omega(&f.slag, &s_slag, h).map_err(show)?;
    let b = max_pullback_omega(&f.shrinker, &s_shr, h).map_err(show)?;
    let mut drift = vec![0.0; f.m];
    drift[0] = 0.5;
    let d = max_pullback_omega(&f.shrinker.with_phase_drift(drift), &s_shr, h).map_err(show)?;
    let residuals = vec![
        r.at_most("special Lagrangian |omega|", a, 1e-9),
        r.at_most("shrinker |omega|", b, 1e-9),
        Residual {
            name: "perturbed detector |omega|".into(),
            value: d,
            comparison: Comparison::AtLeast,
            tolerance: 1e-3,
        },
    ];
    pass(flat_header(&f, s_slag.len()), residuals)
}

fn check_flat_minimal(r: &mut Runner) -> Outcome {
    let f = flat_model(r)?;
    let (s_slag, _) = r.flat_samples(f.m);
    let h = r.opts.curvature_step;
    let rep = check_flat_self_shrinker(&f.slag, 0.0, &s_slag, h).map_err(show)?;
    let radius = 2.0;
    let circle = sample_geometry(&Circle { radius }, &[0.7], h).map_err(show)?;
    let circle_err = (norm(&circle.mean_curvature) - 1.0 / radius).abs();
    let sphere = RoundSphere { radius, ambient: 3, chart: Chart::North };
    let g = sample_geometry(&sphere, &[0.3, -0.2], h).map_err(show)?;
    let want = -2.0 / (radius * radius);
    let sphere_err =
        g.mean_curvature.iter().zip(&g.embedding).map(|(hv, x)| (hv - want * x).powi(2)).sum::<f64>().sqrt();
    let residuals = vec![
        r.at_most("special Lagrangian |H|", rep.max_mean_curvature, 1e-4),
        r.at_most("circle | |H| - 1/r |", circle_err, 1e-6),
        r.at_most("sphere |H + 2x/r^2|", sphere_err, 1e-6),
    ];
    pass(flat_header(&f, s_slag.len()), residuals)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn check_flat_shrinker(r: &mut Runner) -> Outcome {
    let f = flat_model(r)?;
    let (_, s_shr) = r.flat_samples(f.m);
    let rep = check_flat_self_shrinker(&f.shrinker, f.lambda, &s_shr, r.opts.curvature_step).map_err(show)?;
    let residuals = vec![
        r.at_most("|H - lambda F^perp|", rep.max_residual, 1e-3),
        r.at_most("fitted lambda relative error", rep.relative_lambda_error(), 1e-3),
    ];
    let detail = format!(
        "{}, lambda = A/(2 level) = {}, fitted {:.9}",
        flat_header(&f, s_shr.len()),
        f.lambda,
        rep.fitted_lambda
    );
    pass(detail, residuals)
}

fn check_flat_angle(r: &mut Runner) -> Outcome {
    let f = flat_model(r)?;
    let (s_slag, s_shr) = r.flat_samples(f.m);
    let h = r.opts.tangent_step;
    let a = angle_full_formula_check(&f.slag, &s_slag, h).map_err(show)?;
    let b = angle_full_formula_check(&f.shrinker, &s_shr, h).map_err(show)?;
    let residuals = vec![
        r.at_most("special Lagrangian formula vs Omega", a.max_discrepancy, 1e-6),
        r.at_most("shrinker formula vs Omega", b.max_discrepancy, 1e-6),
    ];
    pass(flat_header(&f, s_slag.len()), residuals)
}

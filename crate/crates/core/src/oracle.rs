//! Numerov shooting solver for the radial equation −K u'' + V_eff u = E u.
//!
//! The half-line is integrated in t = ln(r − r_origin) with u = e^{t/2} w, which
//! turns the power-law behaviour at the inner wall into a smooth exponential
//! and stretches the tail cheaply. The whole line (Morse s-waves) uses
//! r = c + a·sinh(t). In both cases w'' = (φ'² (V_eff − E)/K − ½{φ, t}) w with
//! {φ, t} the Schwarzian of the map, and Numerov applies directly.
//!
//! Eigenvalues are bracketed by Sturm node counts and polished by bisection on
//! the Casoratian of the outward and inward solutions at the outer turning point.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::potentials::{centrifugal_exact, greene_aldrich_unchecked, PotentialKind, TwoTermPotential};
use crate::units::KineticScale;

/// Starting grid size.
pub const DEFAULT_GRID_POINTS: usize = 4000;
/// Smallest admissible grid.
pub const MIN_GRID_POINTS: usize = 2000;
/// Largest grid tried while refining.
pub const MAX_GRID_POINTS: usize = 1 << 20;
/// Decay exponent ∫κ dr required beyond each turning point.
pub const TAIL_DECAY: f64 = 40.0;
/// Trial energies used to bracket a state by node count.
pub const BRACKET_TRIALS: usize = 64;
/// Relative eigenvalue change accepted between successive grid doublings.
pub const GRID_REL_TOL: f64 = 1e-8;
/// Relative width at which bisection stops.
pub const BISECTION_REL_TOL: f64 = 1e-12;

const RESCALE_THRESHOLD: f64 = 1e100;
const COARSE_POINTS: usize = 4000;
/// Inner cut-off, in units of the length scale, above the inner boundary.
const INNER_OFFSET: f64 = 1e-6;
/// Outer reach of the coarse scan, in units of the length scale.
const OUTER_REACH: f64 = 1e6;
/// Left reach of the whole-line scan, in units of the length scale.
const LEFT_REACH: f64 = 100.0;
/// Largest h²|g| tolerated before the grid is refined.
const MAX_STEP_STIFFNESS: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum Centrifugal {
    /// ℓ(ℓ+1)/r²
    Exact,
    /// ℓ(ℓ+1)β² e^{−βr}/(1 − q e^{−βr})²
    GreeneAldrich {
        beta: f64,
        q: f64,
    },
    None,
}

/// Where the radial coordinate lives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Domain {
    /// (r_origin, ∞); the solution vanishes at r_origin.
    HalfLine { origin: f64 },
    /// (−∞, ∞).
    WholeLine,
}

type PotentialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct RadialProblem {
    potential: PotentialFn,
    pub l: u32,
    pub kinetic: KineticScale,
    pub centrifugal: Centrifugal,
    pub domain: Domain,
    /// Typical length of the potential; sets the inner cut-off and scan ranges.
    pub length_scale: f64,
    /// Points on the first grid; later grids double it.
    pub grid_points: usize,
}

impl fmt::Debug for RadialProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProblem")
            .field("l", &self.l)
            .field("kinetic", &self.kinetic)
            .field("centrifugal", &self.centrifugal)
            .field("domain", &self.domain)
            .field("length_scale", &self.length_scale)
            .field("grid_points", &self.grid_points)
            .finish_non_exhaustive()
    }
}

impl RadialProblem {
    pub fn new<F>(
        potential: F,
        l: u32,
        kinetic: KineticScale,
        centrifugal: Centrifugal,
        region: Domain,
        length_scale: f64,
    ) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(kinetic.0 > 0.0) {
            return domain(format!("ħ²/2m must be positive, got {}", kinetic.0));
        }
        if !(length_scale > 0.0) || !length_scale.is_finite() {
            return domain(format!("length scale must be positive, got {length_scale}"));
        }
        if let Domain::HalfLine { origin } = region {
            if !origin.is_finite() {
                return domain(format!("inner boundary must be finite, got {origin}"));
            }
            if centrifugal == Centrifugal::Exact && l > 0 && origin < 0.0 {
                return domain("the exact centrifugal term needs a domain inside r > 0");
            }
        }
        if region == Domain::WholeLine && centrifugal == Centrifugal::Exact && l > 0 {
            return domain("the exact centrifugal term is singular on the whole line");
        }
        Ok(Self {
            potential: Arc::new(potential),
            l,
            kinetic,
            centrifugal,
            domain: region,
            length_scale,
            grid_points: DEFAULT_GRID_POINTS,
        })
    }

    /// The radial problem of a two-term potential. q = 0 s-waves (and q = 0
    /// without a centrifugal term) are posed on the whole line.
    pub fn two_term(p: TwoTermPotential, l: u32, kinetic: KineticScale, mode: CentrifugalMode) -> Result<Self> {
        p.validate()?;
        let centrifugal = match mode {
            CentrifugalMode::Exact => Centrifugal::Exact,
            CentrifugalMode::GreeneAldrich => Centrifugal::GreeneAldrich { beta: p.beta, q: p.q },
            CentrifugalMode::None => Centrifugal::None,
        };
        let whole_line = p.q == 0.0 && (l == 0 || mode == CentrifugalMode::None);
        let domain = if whole_line {
            Domain::WholeLine
        } else {
            Domain::HalfLine {
                origin: p.inner_boundary(),
            }
        };
        Self::new(move |r| p.value(r), l, kinetic, centrifugal, domain, 1.0 / p.beta)
    }

    pub fn from_kind(kind: &PotentialKind, l: u32, kinetic: KineticScale, mode: CentrifugalMode) -> Result<Self> {
        Self::two_term(kind.to_two_term(kinetic)?, l, kinetic, mode)
    }

    pub fn with_grid_points(mut self, points: usize) -> Result<Self> {
        if points < MIN_GRID_POINTS {
            return domain(format!("grid needs at least {MIN_GRID_POINTS} points, got {points}"));
        }
        self.grid_points = points;
        Ok(self)
    }

    pub fn potential(&self, r: f64) -> f64 {
        (self.potential)(r)
    }

    /// V plus the selected centrifugal term.
    pub fn effective_potential(&self, r: f64) -> f64 {
        let barrier = match self.centrifugal {
            Centrifugal::Exact => centrifugal_exact(self.l, r),
            Centrifugal::GreeneAldrich { beta, q } => greene_aldrich_unchecked(self.l, beta, q, r),
            Centrifugal::None => 0.0,
        };
        self.potential(r) + self.kinetic.0 * barrier
    }
}

/// Centrifugal selector without parameters, for front ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CentrifugalMode {
    Exact,
    GreeneAldrich,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    /// Node count of the returned eigenfunction.
    pub n: usize,
    pub energy: f64,
    pub converged: bool,
    /// Matching defect Δ(w'/w)·h at the matching point.
    pub residual: f64,
    pub grid_points_used: usize,
}

/// Outcome of one two-sided integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    /// Sign changes of the outward solution across the whole grid.
    pub node_count: usize,
    /// Difference of the inward and outward log-derivatives (per step) at the
    /// matching point.
    pub defect: f64,
}

#[derive(Debug, Clone, Copy)]
enum Mapping {
    Log { origin: f64 },
    Sinh { center: f64, scale: f64 },
}

impl Mapping {
    fn r(self, t: f64) -> f64 {
        match self {
            Mapping::Log { origin } => origin + t.exp(),
            Mapping::Sinh { center, scale } => center + scale * t.sinh(),
        }
    }

    fn t(self, r: f64) -> f64 {
        match self {
            Mapping::Log { origin } => (r - origin).ln(),
            Mapping::Sinh { center, scale } => ((r - center) / scale).asinh(),
        }
    }

    fn jacobian(self, t: f64) -> f64 {
        match self {
            Mapping::Log { .. } => t.exp(),
            Mapping::Sinh { scale, .. } => scale * t.cosh(),
        }
    }

    /// −½ times the Schwarzian derivative of r(t).
    fn liouville_shift(self, t: f64) -> f64 {
        match self {
            Mapping::Log { .. } => 0.25,
            Mapping::Sinh { .. } => 0.75 * t.tanh().powi(2) - 0.5,
        }
    }
}

/// V_eff on a uniform t-grid, arranged so g_i(E) = a_i − E b_i.
struct Grid {
    h: f64,
    veff: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl Grid {
    fn build(p: &RadialProblem, map: Mapping, t_lo: f64, t_hi: f64, points: usize) -> Grid {
        let h = (t_hi - t_lo) / (points - 1) as f64;
        let k = p.kinetic.0;
        let mut veff = Vec::with_capacity(points);
        let mut a = Vec::with_capacity(points);
        let mut b = Vec::with_capacity(points);
        for i in 0..points {
            let t = t_lo + h * i as f64;
            let v = p.effective_potential(map.r(t));
            let jac2 = map.jacobian(t).powi(2);
            veff.push(v);
            a.push(jac2 * v / k + map.liouville_shift(t));
            b.push(jac2 / k);
        }
        Grid { h, veff, a, b }
    }

    fn len(&self) -> usize {
        self.veff.len()
    }

    fn g(&self, i: usize, e: f64) -> f64 {
        self.a[i] - e * self.b[i]
    }

    fn stiffness(&self, e: f64) -> f64 {
        (0..self.len())
            .map(|i| (self.h * self.h * self.g(i, e)).abs())
            .fold(0.0, f64::max)
    }

    /// Outermost classically allowed point at energy e.
    fn matching_index(&self, e: f64) -> usize {
        let last = self.len() - 3;
        let idx = match self.veff.iter().rposition(|&v| v <= e) {
            Some(i) => i,
            None => argmin(&self.veff),
        };
        idx.clamp(2, last)
    }
}

fn argmin(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .fold(
            (0, f64::INFINITY),
            |(bi, bv), (i, &v)| if v < bv { (i, v) } else { (bi, bv) },
        )
        .0
}

struct Pass {
    nodes: usize,
    at_match: (f64, f64),
}

fn numerov_factor(h2: f64, g: f64) -> f64 {
    1.0 - h2 * g / 12.0
}

fn crossed(prev: &mut f64, v: f64) -> bool {
    if v == 0.0 {
        return false;
    }
    let flip = *prev != 0.0 && (v > 0.0) != (*prev > 0.0);
    *prev = v;
    flip
}

/// Outward pass over the whole grid; records (w_m, w_{m+1}).
fn outward(grid: &Grid, e: f64, m: usize, dirichlet_start: bool) -> Pass {
    let h2 = grid.h * grid.h;
    let n = grid.len();
    let g0 = grid.g(0, e);
    let (mut w_prev, mut w) = if dirichlet_start || g0 <= 0.0 {
        (0.0, 1.0)
    } else {
        (1.0, (g0.sqrt() * grid.h).exp())
    };
    let mut sign = 0.0;
    let mut nodes = 0;
    crossed(&mut sign, w_prev);
    if crossed(&mut sign, w) {
        nodes += 1;
    }
    let mut at_match = (w_prev, w);
    let mut f_prev = numerov_factor(h2, g0);
    let mut f = numerov_factor(h2, grid.g(1, e));
    for i in 1..n - 1 {
        let f_next = numerov_factor(h2, grid.g(i + 1, e));
        let mut w_next = ((12.0 - 10.0 * f) * w - f_prev * w_prev) / f_next;
        if w_next.abs() > RESCALE_THRESHOLD {
            w_next /= RESCALE_THRESHOLD;
            w /= RESCALE_THRESHOLD;
        }
        if i + 1 < n - 1 && crossed(&mut sign, w_next) {
            nodes += 1;
        }
        if i + 1 == m + 1 {
            at_match = (w, w_next);
        }
        w_prev = w;
        w = w_next;
        f_prev = f;
        f = f_next;
    }
    Pass { nodes, at_match }
}

/// Inward pass from a Dirichlet end down to m; records (w_m, w_{m+1}) and the
/// sign changes on [m, end).
fn inward(grid: &Grid, e: f64, m: usize) -> Pass {
    let h2 = grid.h * grid.h;
    let n = grid.len();
    let (mut w_prev, mut w) = (0.0, 1.0);
    let mut sign = 0.0;
    let mut nodes = 0;
    crossed(&mut sign, w);
    let mut f_prev = numerov_factor(h2, grid.g(n - 1, e));
    let mut f = numerov_factor(h2, grid.g(n - 2, e));
    let mut at_match = (0.0, 0.0);
    let mut i = n - 2;
    while i > m {
        let f_next = numerov_factor(h2, grid.g(i - 1, e));
        let mut w_next = ((12.0 - 10.0 * f) * w - f_prev * w_prev) / f_next;
        if w_next.abs() > RESCALE_THRESHOLD {
            w_next /= RESCALE_THRESHOLD;
            w /= RESCALE_THRESHOLD;
        }
        if crossed(&mut sign, w_next) {
            nodes += 1;
        }
        if i - 1 == m {
            at_match = (w_next, w);
        }
        w_prev = w;
        w = w_next;
        f_prev = f;
        f = f_next;
        i -= 1;
    }
    Pass { nodes, at_match }
}

struct Matched {
    nodes: usize,
    casoratian: f64,
    defect: f64,
    matched_nodes: usize,
}

fn shoot(grid: &Grid, e: f64, m: usize, dirichlet_start: bool) -> Matched {
    let out = outward(grid, e, m, dirichlet_start);
    let inn = inward(grid, e, m);
    let (om, om1) = out.at_match;
    let (im, im1) = inn.at_match;
    let casoratian = om * im1 - om1 * im;
    let defect = im1 / im - om1 / om;
    // Nodes of the glued eigenfunction: outward part up to m, inward part beyond.
    let out_to_m = outward_nodes_to(grid, e, m, dirichlet_start);
    Matched {
        nodes: out.nodes,
        casoratian,
        defect,
        matched_nodes: out_to_m + inn.nodes,
    }
}

fn outward_nodes_to(grid: &Grid, e: f64, m: usize, dirichlet_start: bool) -> usize {
    let h2 = grid.h * grid.h;
    let g0 = grid.g(0, e);
    let (mut w_prev, mut w) = if dirichlet_start || g0 <= 0.0 {
        (0.0, 1.0)
    } else {
        (1.0, (g0.sqrt() * grid.h).exp())
    };
    let mut sign = 0.0;
    let mut nodes = 0;
    crossed(&mut sign, w_prev);
    crossed(&mut sign, w);
    let mut f_prev = numerov_factor(h2, g0);
    let mut f = numerov_factor(h2, grid.g(1, e));
    for i in 1..m {
        let f_next = numerov_factor(h2, grid.g(i + 1, e));
        let mut w_next = ((12.0 - 10.0 * f) * w - f_prev * w_prev) / f_next;
        if w_next.abs() > RESCALE_THRESHOLD {
            w_next /= RESCALE_THRESHOLD;
            w /= RESCALE_THRESHOLD;
        }
        if crossed(&mut sign, w_next) {
            nodes += 1;
        }
        w_prev = w;
        w = w_next;
        f_prev = f;
        f = f_next;
    }
    nodes
}

/// Coarse picture of V_eff used to place domains.
struct Scan {
    map: Mapping,
    t: Vec<f64>,
    r: Vec<f64>,
    veff: Vec<f64>,
    t_first: f64,
    v_min: f64,
}

impl Scan {
    fn new(p: &RadialProblem) -> Scan {
        let l = p.length_scale;
        let (map, t_lo, t_hi) = match p.domain {
            Domain::HalfLine { origin } => (Mapping::Log { origin }, (INNER_OFFSET * l).ln(), (OUTER_REACH * l).ln()),
            Domain::WholeLine => {
                let probe = Mapping::Sinh { center: 0.0, scale: l };
                let pre = Self::sample(p, probe, probe.t(-LEFT_REACH * l), probe.t(OUTER_REACH * l));
                let center = pre.r[argmin(&pre.veff)];
                let map = Mapping::Sinh { center, scale: 0.1 * l };
                (map, map.t(center - LEFT_REACH * l), map.t(center + OUTER_REACH * l))
            }
        };
        Self::sample(p, map, t_lo, t_hi)
    }

    fn sample(p: &RadialProblem, map: Mapping, t_lo: f64, t_hi: f64) -> Scan {
        let h = (t_hi - t_lo) / (COARSE_POINTS - 1) as f64;
        let t: Vec<f64> = (0..COARSE_POINTS).map(|i| t_lo + h * i as f64).collect();
        let r: Vec<f64> = t.iter().map(|&t| map.r(t)).collect();
        let veff: Vec<f64> = r
            .iter()
            .map(|&r| {
                let v = p.effective_potential(r);
                if v.is_nan() {
                    f64::INFINITY
                } else {
                    v
                }
            })
            .collect();
        let v_min = veff.iter().copied().fold(f64::INFINITY, f64::min);
        Scan {
            map,
            t_first: t_lo,
            t,
            r,
            veff,
            v_min,
        }
    }

    fn whole_line(&self) -> bool {
        matches!(self.map, Mapping::Sinh { .. })
    }

    /// t-range whose ends sit TAIL_DECAY decay lengths inside the forbidden
    /// region at energy e.
    fn fit(&self, p: &RadialProblem, e: f64) -> (f64, f64) {
        let k = p.kinetic.0;
        let last = self.t.len() - 1;
        let allowed_out = self.veff.iter().rposition(|&v| v <= e);
        let allowed_in = self.veff.iter().position(|&v| v <= e);
        let well = argmin(&self.veff);
        let kappa = |i: usize| ((self.veff[i] - e).max(0.0) / k).sqrt();
        let mut hi = last;
        let mut decay = 0.0;
        for i in allowed_out.unwrap_or(well)..last {
            decay += 0.5 * (kappa(i) + kappa(i + 1)) * (self.r[i + 1] - self.r[i]);
            if decay >= TAIL_DECAY {
                hi = i + 1;
                break;
            }
        }
        let t_lo = if self.whole_line() {
            let mut lo = 0;
            let mut decay = 0.0;
            for i in (1..=allowed_in.unwrap_or(well)).rev() {
                decay += 0.5 * (kappa(i) + kappa(i - 1)) * (self.r[i] - self.r[i - 1]);
                if decay >= TAIL_DECAY {
                    lo = i - 1;
                    break;
                }
            }
            self.t[lo]
        } else {
            self.t_first
        };
        (t_lo, self.t[hi])
    }
}

/// A fixed fine grid on which an eigenvalue is isolated.
struct Stage {
    grid: Grid,
    dirichlet_start: bool,
    m: usize,
}

impl Stage {
    fn new(p: &RadialProblem, scan: &Scan, e_fit: f64, points: usize) -> Result<(Stage, usize)> {
        let (t_lo, t_hi) = scan.fit(p, e_fit);
        Self::on_range(p, scan, t_lo, t_hi, e_fit, points)
    }

    fn on_range(
        p: &RadialProblem,
        scan: &Scan,
        t_lo: f64,
        t_hi: f64,
        e_fit: f64,
        points: usize,
    ) -> Result<(Stage, usize)> {
        let mut points = points;
        loop {
            let grid = Grid::build(p, scan.map, t_lo, t_hi, points);
            if grid.veff.iter().any(|v| v.is_nan()) {
                return Err(Error::Numeric("effective potential is NaN on the grid".into()));
            }
            let stiff = grid.stiffness(e_fit);
            if stiff <= MAX_STEP_STIFFNESS || points >= MAX_GRID_POINTS {
                let m = grid.matching_index(e_fit);
                return Ok((
                    Stage {
                        grid,
                        dirichlet_start: scan.whole_line(),
                        m,
                    },
                    points,
                ));
            }
            points *= 2;
        }
    }

    fn shoot(&self, e: f64) -> Matched {
        shoot(&self.grid, e, self.m, self.dirichlet_start)
    }

    fn count(&self, e: f64) -> usize {
        outward(&self.grid, e, self.m, self.dirichlet_start).nodes
    }
}

/// Integrates at energy e on a domain fitted to e.
pub fn numerov_sweep(p: &RadialProblem, e: f64) -> Result<Sweep> {
    if !(e < 0.0) {
        return domain(format!("sweep energy must be below the asymptote 0, got {e}"));
    }
    let scan = Scan::new(p);
    let (stage, _) = Stage::new(p, &scan, e, p.grid_points)?;
    let shot = stage.shoot(e);
    if !shot.defect.is_finite() && !shot.casoratian.is_finite() {
        return Err(Error::Numeric(format!("Numerov integration overflowed at E = {e}")));
    }
    Ok(Sweep {
        node_count: shot.nodes,
        defect: shot.defect,
    })
}

fn trial_energies(v_min: f64) -> Vec<f64> {
    let top = v_min.abs() * 0.999;
    let bottom = v_min.abs() * 1e-8;
    let ratio = (bottom / top).powf(1.0 / (BRACKET_TRIALS - 1) as f64);
    (0..BRACKET_TRIALS).map(|k| -top * ratio.powi(k as i32)).collect()
}

/// Count-bisects [lo, hi] on a fixed stage until exactly one eigenvalue is inside.
fn isolate(stage: &Stage, n: usize, mut lo: f64, mut hi: f64) -> Option<(f64, f64)> {
    for _ in 0..400 {
        let (c_lo, c_hi) = (stage.count(lo), stage.count(hi));
        if c_lo > n || c_hi <= n {
            return None;
        }
        if c_lo == n && c_hi == n + 1 {
            return Some((lo, hi));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return None;
        }
        if stage.count(mid) <= n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}

/// Bisects the matching function inside an isolating bracket.
fn polish(stage: &Stage, n: usize, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let mut w_lo = stage.shoot(lo).casoratian;
    let use_casoratian = w_lo.signum() != stage.shoot(hi).casoratian.signum();
    let mut last_step = hi - lo;
    while hi - lo > BISECTION_REL_TOL * 0.5 * (lo + hi).abs() {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let lower = if use_casoratian {
            let w = stage.shoot(mid).casoratian;
            let same = w.signum() == w_lo.signum();
            if same {
                w_lo = w;
            }
            same
        } else {
            stage.count(mid) <= n
        };
        if lower {
            lo = mid;
        } else {
            hi = mid;
        }
        last_step = hi - lo;
    }
    (0.5 * (lo + hi), last_step)
}

struct Level {
    energy: f64,
    last_step: f64,
    residual: f64,
    matched_nodes: usize,
    points: usize,
    t_range: (f64, f64),
    bracket: (f64, f64),
}

fn first_level(p: &RadialProblem, scan: &Scan, n: usize) -> Result<Level> {
    let no_state = || Error::NoSuchState { n, l: p.l };
    if !(scan.v_min < 0.0) {
        return Err(no_state());
    }
    let trials = trial_energies(scan.v_min);
    let counts: Vec<usize> = trials
        .iter()
        .map(|&e| Stage::new(p, scan, e, p.grid_points).map(|(s, _)| s.count(e)))
        .collect::<Result<_>>()?;
    let k = counts.iter().position(|&c| c > n).ok_or_else(no_state)?;
    let mut hi_index = k;
    let lo_energy = if k == 0 { scan.v_min } else { trials[k - 1] };
    loop {
        let hi = trials[hi_index];
        let (stage, points) = Stage::new(p, scan, hi, p.grid_points)?;
        if let Some((lo, hi)) = isolate(&stage, n, lo_energy, hi) {
            return finish_level(p, scan, stage, points, n, lo, hi);
        }
        hi_index += 1;
        if hi_index >= trials.len() {
            return Err(no_state());
        }
    }
}

fn finish_level(
    p: &RadialProblem,
    scan: &Scan,
    stage: Stage,
    points: usize,
    n: usize,
    lo: f64,
    hi: f64,
) -> Result<Level> {
    let (energy, last_step) = polish(&stage, n, lo, hi);
    let shot = stage.shoot(energy);
    let t_range = scan.fit(p, hi);
    Ok(Level {
        energy,
        last_step,
        residual: shot.defect,
        matched_nodes: shot.matched_nodes,
        points,
        t_range,
        bracket: (lo, hi),
    })
}

fn refined_level(p: &RadialProblem, scan: &Scan, n: usize, previous: &Level) -> Result<Option<Level>> {
    let points = previous.points * 2;
    if points > MAX_GRID_POINTS {
        return Ok(None);
    }
    let (t_lo, t_hi) = previous.t_range;
    let (stage, points) = Stage::on_range(p, scan, t_lo, t_hi, previous.bracket.1, points)?;
    let e = previous.energy;
    let mut width = 1e-6 * e.abs();
    loop {
        let lo = (e - width).max(previous.bracket.0);
        let hi = (e + width).min(previous.bracket.1);
        if let Some((lo, hi)) = isolate(&stage, n, lo, hi) {
            let mut level = finish_level(p, scan, stage, points, n, lo, hi)?;
            level.t_range = (t_lo, t_hi);
            level.bracket = previous.bracket;
            return Ok(Some(level));
        }
        if lo <= previous.bracket.0 && hi >= previous.bracket.1 {
            return Err(Error::Numeric(format!(
                "state n = {n} lost its bracket after grid refinement"
            )));
        }
        width *= 10.0;
    }
}

/// Energy of the state with n nodes, refined by grid doubling.
pub fn find_eigenvalue(p: &RadialProblem, n: usize) -> Result<EigenResult> {
    let scan = Scan::new(p);
    let mut level = first_level(p, &scan, n)?;
    let mut converged = false;
    while let Some(next) = refined_level(p, &scan, n, &level)? {
        let change = (next.energy - level.energy).abs();
        level = next;
        if change <= GRID_REL_TOL * level.energy.abs() {
            converged = true;
            break;
        }
    }
    let converged = converged && level.matched_nodes == n && level.last_step <= 1e-10 * level.energy.abs();
    Ok(EigenResult {
        n: level.matched_nodes,
        energy: level.energy,
        converged,
        residual: level.residual,
        grid_points_used: level.points,
    })
}

/// States n = 0..=n_max that exist, in increasing energy.
pub fn spectrum(p: &RadialProblem, n_max: usize) -> Result<Vec<EigenResult>> {
    let mut states: Vec<EigenResult> = Vec::new();
    for n in 0..=n_max {
        match find_eigenvalue(p, n) {
            Ok(state) => {
                if let Some(previous) = states.last() {
                    if !(state.energy > previous.energy) {
                        return Err(Error::Numeric(format!(
                            "spectrum not increasing at n = {n}: {} after {}",
                            state.energy, previous.energy
                        )));
                    }
                }
                states.push(state);
            }
            Err(Error::NoSuchState { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(states)
}

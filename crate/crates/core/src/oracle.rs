//! Brute-force verification by sweeping the whole extremal family in time.
//!
//! At each time step the front line is sampled on a fixed parameter grid and
//! joined into a polyline. A target counts as hit when it comes within the
//! hit tolerance of the polyline, or when it falls inside the region swept by
//! the polyline since the previous step. Many targets are processed in one
//! sweep through a uniform spatial hash.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremals::{default_steps, disk_three, disk_two_beta, omega_from_beta};
use crate::solver::{diameter, synthesize_controls, replay_controls, Solution};
use crate::su2::{ControlMode, DiskPoint, ModelParams};

/// Polyline pieces longer than this are not trusted as part of the front line.
const MAX_SEGMENT: f64 = 0.05;
/// Exact-contact tolerance used when only genuine crossings may count.
const CONTACT_TOL: f64 = 1e-9;
const CELL: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    pub param_grid_size: usize,
    pub time_step: f64,
    pub hit_tolerance: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            param_grid_size: 2001,
            time_step: TAU / 4000.0,
            hit_tolerance: 2e-3,
        }
    }
}

impl OracleConfig {
    /// Defaults scaled to the model: the time step is `(2 pi / gamma) / 4000`,
    /// reduced if needed so the front line moves less than the hit tolerance
    /// per step.
    pub fn for_model(mp: &ModelParams) -> Self {
        let base = OracleConfig::default();
        OracleConfig {
            time_step: (TAU / mp.gamma() / 4000.0).min(base.hit_tolerance / mp.max_speed()),
            ..base
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.param_grid_size < 2 || !(self.time_step > 0.0) || !(self.hit_tolerance > 0.0) {
            return Err(Error::Domain(format!("invalid oracle configuration {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BruteHit {
    pub t_hat: f64,
    pub param_hat: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HitRule {
    /// Within the hit tolerance, reported at the current grid time.
    Tolerance,
    /// Crossed or touched, reported at the previous grid time.
    Crossing,
}

struct Family {
    mp: ModelParams,
    /// `alpha` for three controls, `beta = sin(chi)` with `chi` uniform for two.
    knots: Vec<f64>,
    params: Vec<f64>,
}

impl Family {
    fn new(mp: &ModelParams, n: usize) -> Self {
        let knots: Vec<f64> = match mp.mode() {
            ControlMode::Three => (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect(),
            ControlMode::Two => (0..n)
                .map(|i| (-FRAC_PI_2 + PI * (i as f64 + 0.5) / n as f64).sin())
                .collect(),
        };
        let params = match mp.mode() {
            ControlMode::Three => knots.clone(),
            ControlMode::Two => knots.iter().map(|&b| omega_from_beta(b, mp)).collect(),
        };
        Family { mp: *mp, knots, params }
    }

    fn sample(&self, t: f64, out: &mut Vec<DiskPoint>) {
        out.clear();
        match self.mp.mode() {
            ControlMode::Three => out.extend(self.knots.iter().map(|&a| disk_three(a, &self.mp, t))),
            ControlMode::Two => out.extend(self.knots.iter().map(|&b| disk_two_beta(b, &self.mp, t))),
        }
    }
}

struct TargetSet<'a> {
    points: &'a [DiskPoint],
    result: Vec<Option<BruteHit>>,
    active: Vec<bool>,
    n_active: usize,
    cells: Vec<Vec<u32>>,
    live: Vec<u32>,
    side: usize,
    pending: Vec<(usize, f64, f64)>,
}

impl<'a> TargetSet<'a> {
    fn new(points: &'a [DiskPoint]) -> Self {
        let side = (2.0 / CELL).ceil() as usize + 1;
        let mut cells = vec![Vec::new(); side * side];
        let mut live = vec![0u32; side * side];
        for (i, p) in points.iter().enumerate() {
            let c = Self::cell_of(side, p.x, p.y);
            cells[c].push(i as u32);
            live[c] += 1;
        }
        TargetSet {
            points,
            result: vec![None; points.len()],
            active: vec![true; points.len()],
            n_active: points.len(),
            cells,
            live,
            side,
            pending: Vec::new(),
        }
    }

    fn coord(side: usize, v: f64) -> usize {
        (((v + 1.0) / CELL).floor().max(0.0) as usize).min(side - 1)
    }

    fn cell_of(side: usize, x: f64, y: f64) -> usize {
        Self::coord(side, y) * side + Self::coord(side, x)
    }

    fn retire(&mut self, i: usize, hit: Option<BruteHit>) {
        if self.active[i] {
            self.active[i] = false;
            self.result[i] = hit;
            self.n_active -= 1;
            let p = self.points[i];
            let c = Self::cell_of(self.side, p.x, p.y);
            self.live[c] -= 1;
        }
    }

    /// Calls `test` for every active target in cells overlapping the box.
    fn query<F>(&mut self, x0: f64, x1: f64, y0: f64, y1: f64, mut test: F)
    where
        F: FnMut(DiskPoint) -> Option<(f64, f64)>,
    {
        let (i0, i1) = (Self::coord(self.side, x0), Self::coord(self.side, x1));
        let (j0, j1) = (Self::coord(self.side, y0), Self::coord(self.side, y1));
        for j in j0..=j1 {
            for i in i0..=i1 {
                let c = j * self.side + i;
                if self.live[c] == 0 {
                    continue;
                }
                for k in 0..self.cells[c].len() {
                    let idx = self.cells[c][k] as usize;
                    if !self.active[idx] {
                        continue;
                    }
                    if let Some((d, param)) = test(self.points[idx]) {
                        self.pending.push((idx, d, param));
                    }
                }
            }
        }
    }
}

fn seg_distance(p: DiskPoint, a: DiskPoint, b: DiskPoint) -> (f64, f64) {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let l2 = dx * dx + dy * dy;
    let s = if l2 > 0.0 {
        (((p.x - a.x) * dx + (p.y - a.y) * dy) / l2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    ((p.x - a.x - s * dx).hypot(p.y - a.y - s * dy), s)
}

fn in_triangle(p: DiskPoint, a: DiskPoint, b: DiskPoint, c: DiskPoint) -> bool {
    let cross = |u: DiskPoint, v: DiskPoint| (v.x - u.x) * (p.y - u.y) - (v.y - u.y) * (p.x - u.x);
    let (d1, d2, d3) = (cross(a, b), cross(b, c), cross(c, a));
    let neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
    let pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
    !(neg && pos)
}

/// Closest approach so far of a target inside the tolerance band.
#[derive(Debug, Clone, Copy)]
struct Approach {
    d: f64,
    t: f64,
    param: f64,
}

fn sweep(mp: &ModelParams, cfg: &OracleConfig, targets: &[DiskPoint], deadline: &[f64], rule: HitRule) -> Vec<Option<BruteHit>> {
    let fam = Family::new(mp, cfg.param_grid_size);
    let mut set = TargetSet::new(targets);
    let mut order: Vec<usize> = (0..targets.len()).collect();
    order.sort_by(|&a, &b| deadline[a].total_cmp(&deadline[b]));
    let mut next_expiry = 0;
    let t_end = deadline.iter().copied().fold(0.0, f64::max);
    let tol = match rule {
        HitRule::Tolerance => cfg.hit_tolerance,
        HitRule::Crossing => CONTACT_TOL,
    };
    let dt = cfg.time_step;
    let mut best: Vec<Option<Approach>> = vec![None; targets.len()];
    let mut step: Vec<Option<Approach>> = vec![None; targets.len()];
    let mut crossed = vec![false; targets.len()];
    let mut band: Vec<usize> = Vec::new();
    let mut touched: Vec<usize> = Vec::new();
    let mut prev: Vec<DiskPoint> = Vec::new();
    let mut cur: Vec<DiskPoint> = Vec::new();
    let hit = |a: Approach| BruteHit {
        t_hat: a.t,
        param_hat: a.param,
    };
    let mut k = 0usize;
    loop {
        let t = k as f64 * dt;
        while next_expiry < order.len() && deadline[order[next_expiry]] < t {
            let i = order[next_expiry];
            set.retire(i, best[i].map(hit));
            next_expiry += 1;
        }
        if set.n_active == 0 || t > t_end + dt {
            break;
        }
        fam.sample(t, &mut cur);
        for i in 0..cur.len() - 1 {
            let (a, b) = (cur[i], cur[i + 1]);
            if a.distance(&b) > MAX_SEGMENT {
                continue;
            }
            let (pa, pb) = (fam.params[i], fam.params[i + 1]);
            set.query(
                a.x.min(b.x) - tol,
                a.x.max(b.x) + tol,
                a.y.min(b.y) - tol,
                a.y.max(b.y) + tol,
                |p| {
                    let (d, s) = seg_distance(p, a, b);
                    (d <= tol).then_some((d, pa + s * (pb - pa)))
                },
            );
            if k > 0 {
                let (c, d) = (prev[i], prev[i + 1]);
                let long = a.distance(&c) > MAX_SEGMENT || b.distance(&d) > MAX_SEGMENT || c.distance(&d) > MAX_SEGMENT;
                if !long {
                    let xs = [a.x, b.x, c.x, d.x];
                    let ys = [a.y, b.y, c.y, d.y];
                    let min = |v: &[f64; 4]| v.iter().copied().fold(f64::INFINITY, f64::min);
                    let max = |v: &[f64; 4]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    set.query(min(&xs), max(&xs), min(&ys), max(&ys), |p| {
                        (in_triangle(p, c, d, b) || in_triangle(p, c, b, a)).then_some((-1.0, 0.5 * (pa + pb)))
                    });
                }
            }
            for (idx, d, param) in set.pending.drain(..) {
                if d < 0.0 {
                    crossed[idx] = true;
                }
                let d = d.max(0.0);
                if step[idx].is_none() {
                    touched.push(idx);
                }
                if step[idx].is_none_or(|s| d < s.d) {
                    step[idx] = Some(Approach { d, t, param });
                }
            }
        }
        // Settle the targets in the band: a crossing is final; otherwise wait
        // until the distance stops decreasing and report the closest approach.
        for &idx in &touched {
            let s = step[idx].unwrap();
            match rule {
                HitRule::Crossing => {
                    let t_prev = (t - dt).max(0.0);
                    set.retire(idx, Some(BruteHit { t_hat: t_prev, param_hat: s.param }));
                }
                HitRule::Tolerance => {
                    if crossed[idx] {
                        set.retire(idx, Some(hit(best[idx].unwrap_or(s))));
                    } else if best[idx].is_none_or(|b| s.d < b.d) {
                        if best[idx].is_none() {
                            band.push(idx);
                        }
                        best[idx] = Some(s);
                    }
                }
            }
        }
        band.retain(|&idx| {
            if !set.active[idx] {
                return false;
            }
            let b = best[idx].unwrap();
            let improving = b.t == t;
            if !improving {
                set.retire(idx, Some(hit(b)));
            }
            improving
        });
        for idx in touched.drain(..) {
            step[idx] = None;
        }
        std::mem::swap(&mut prev, &mut cur);
        k += 1;
    }
    set.result
}

/// Earliest grid time at which the swept family comes within the hit
/// tolerance of each target, searching up to 1.5 times the diameter.
pub fn brute_min_times(targets: &[DiskPoint], mp: &ModelParams, cfg: &OracleConfig) -> Result<Vec<BruteHit>> {
    cfg.validate()?;
    for p in targets {
        if p.r2() > 1.0 + 1e-12 {
            return Err(Error::OutsideDisk { x: p.x, y: p.y });
        }
    }
    let limit = 1.5 * diameter(mp).t_max;
    let deadline = vec![limit; targets.len()];
    sweep(mp, cfg, targets, &deadline, HitRule::Tolerance)
        .into_iter()
        .zip(targets)
        .map(|(hit, p)| {
            hit.ok_or_else(|| Error::Inconsistent(format!("({}, {}) not reached within {limit}", p.x, p.y)))
        })
        .collect()
}

pub fn brute_min_time(target: &DiskPoint, mp: &ModelParams, cfg: &OracleConfig) -> Result<BruteHit> {
    Ok(brute_min_times(std::slice::from_ref(target), mp, cfg)?[0])
}

/// For each target, the previous grid time of the first genuine crossing of
/// the swept family strictly before its deadline, if any.
pub fn first_crossings(targets: &[DiskPoint], deadlines: &[f64], mp: &ModelParams, cfg: &OracleConfig) -> Result<Vec<Option<BruteHit>>> {
    cfg.validate()?;
    if targets.len() != deadlines.len() {
        return Err(Error::Domain("one deadline per target required".into()));
    }
    Ok(sweep(mp, cfg, targets, deadlines, HitRule::Crossing)
        .into_iter()
        .zip(deadlines)
        .map(|(hit, &d)| hit.filter(|h| h.t_hat < d))
        .collect())
}

/// `n_r` radii from 0 to 1 by `n_theta` angles; the centre appears once.
pub fn polar_grid(n_r: usize, n_theta: usize) -> Vec<DiskPoint> {
    let mut pts = vec![DiskPoint::ORIGIN];
    for i in 1..n_r {
        let r = i as f64 / (n_r - 1) as f64;
        pts.extend((0..n_theta).map(|j| DiskPoint::from_polar(r, TAU * j as f64 / n_theta as f64)));
    }
    pts
}

/// Radii and angles of the grid used by [`brute_diameter`].
pub const DIAMETER_GRID: (usize, usize) = (60, 720);

/// Largest brute-force minimum time over a polar grid of the disk.
pub fn brute_diameter(mp: &ModelParams, cfg: &OracleConfig) -> Result<f64> {
    let grid = polar_grid(DIAMETER_GRID.0, DIAMETER_GRID.1);
    Ok(brute_min_times(&grid, mp, cfg)?
        .iter()
        .map(|h| h.t_hat)
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Check {
    ClosedForm,
    Replay,
    Minimality,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::ClosedForm => "closed-form endpoint",
            Check::Replay => "numeric replay",
            Check::Minimality => "minimality",
        })
    }
}

pub const CLOSED_FORM_TOL: f64 = 1e-9;
pub const REPLAY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub closed_form_residual: f64,
    pub replay_residual: f64,
    /// Earliest crossing found before `t_f - 2 dt`.
    pub earlier_hit: Option<BruteHit>,
    pub failures: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<VerifyReport> {
        if self.passed() {
            Ok(self)
        } else {
            let names: Vec<String> = self.failures.iter().map(|c| c.to_string()).collect();
            Err(Error::Inconsistent(format!("failed checks: {}", names.join(", "))))
        }
    }
}

/// Checks a solution three ways: the closed-form endpoint, a numeric replay
/// of the synthesised pulse, and the absence of earlier oracle crossings.
pub fn verify_solution(sol: &Solution, target: &DiskPoint, mp: &ModelParams) -> Result<VerifyReport> {
    let cfg = OracleConfig::for_model(mp);
    let closed = sol.endpoint(mp)?.distance(target);
    let pulse = synthesize_controls(sol, mp, 1024)?;
    let replay = replay_controls(&pulse, mp, default_steps(mp, sol.t_f))?
        .project()
        .distance(target);
    let deadline = sol.t_f - 2.0 * cfg.time_step;
    let earlier = if deadline > 0.0 {
        first_crossings(std::slice::from_ref(target), &[deadline], mp, &cfg)?[0]
    } else {
        None
    };
    let mut failures = Vec::new();
    if !(closed <= CLOSED_FORM_TOL) {
        failures.push(Check::ClosedForm);
    }
    if !(replay <= REPLAY_TOL) {
        failures.push(Check::Replay);
    }
    if earlier.is_some() {
        failures.push(Check::Minimality);
    }
    Ok(VerifyReport {
        closed_form_residual: closed,
        replay_residual: replay,
        earlier_hit: earlier,
        failures,
    })
}

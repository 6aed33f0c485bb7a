//! Optimal front lines, critical trajectories and admissible parameter ranges.
//!
//! The front line `F_t` is the set of disk points reached at time `t` by all
//! extremals. With three controls it is a chord of the unit disk; with two
//! controls it is a curve parametrised by `omega`. Where front lines of
//! different times cross, extremals stop being optimal; the admissible range
//! collects the parameters whose endpoint at `t` is still reached optimally.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremals::{disk_three, disk_two, disk_two_beta, omega_from_beta};
use crate::roots::{scan_roots, ScanOptions};
use crate::solver;
use crate::su2::{ControlMode, DiskPoint, ModelParams, Regime};

/// Edge of the `beta` grid used to sample two-control front lines.
pub const BETA_EDGE: f64 = 1e-6;

/// Relative slack used when deciding whether a point is still reached optimally.
const OPTIMAL_REL: f64 = 1e-7;

/// `y sin(omega0 tau) - x cos(omega0 tau) + cos(gamma tau)`, zero on `F_t`.
pub fn frontline_residual_three(p: &DiskPoint, mp: &ModelParams, t: f64) -> f64 {
    let tau = 0.5 * t;
    let (sw, cw) = (mp.omega0() * tau).sin_cos();
    p.y * sw - p.x * cw + (mp.gamma() * tau).cos()
}

/// `y sin(omega tau) - x cos(omega tau) + cos(a tau)`: the tangent line of
/// `F_t` at the point reached by `omega`.
pub fn tangent_residual_two(p: &DiskPoint, omega: f64, mp: &ModelParams, t: f64) -> f64 {
    let tau = 0.5 * t;
    let a = (mp.omega0() - omega).hypot(mp.gamma());
    let (sw, cw) = (omega * tau).sin_cos();
    p.y * sw - p.x * cw + (a * tau).cos()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ParamInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        ParamInterval {
            lo: lo.min(hi),
            hi: lo.max(hi),
        }
    }

    pub fn contains(&self, p: f64) -> bool {
        let slack = 1e-12 * (1.0 + p.abs());
        p >= self.lo - slack && p <= self.hi + slack
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

pub fn in_ranges(ranges: &[ParamInterval], p: f64) -> bool {
    ranges.iter().any(|r| r.contains(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrontSample {
    pub param: f64,
    pub point: DiskPoint,
    pub admissible: bool,
}

/// Samples of `F_t` over the whole extremal family, each flagged with whether
/// its parameter lies in the admissible range at `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrontLine {
    pub mode: ControlMode,
    pub t: f64,
    pub samples: Vec<FrontSample>,
    pub admissible: Vec<ParamInterval>,
}

impl FrontLine {
    pub fn admissible_samples(&self) -> impl Iterator<Item = &FrontSample> {
        self.samples.iter().filter(|s| s.admissible)
    }
}

/// `n` samples with `alpha` uniform on `[-1, 1]`.
pub fn frontline_sample_three(mp: &ModelParams, t: f64, n: usize) -> Result<FrontLine> {
    mp.require_mode(ControlMode::Three)?;
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 samples, got {n}")));
    }
    let admissible = admissible_range(mp, t)?;
    let samples = (0..n)
        .map(|i| {
            let alpha = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
            FrontSample {
                param: alpha,
                point: disk_three(alpha, mp, t),
                admissible: in_ranges(&admissible, alpha),
            }
        })
        .collect();
    Ok(FrontLine {
        mode: ControlMode::Three,
        t,
        samples,
        admissible,
    })
}

/// `n` samples with `beta = (omega0 - omega) / a` uniform on
/// `[-1 + BETA_EDGE, 1 - BETA_EDGE]`, in increasing `omega`.
pub fn frontline_sample_two(mp: &ModelParams, t: f64, n: usize) -> Result<FrontLine> {
    mp.require_mode(ControlMode::Two)?;
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 samples, got {n}")));
    }
    let admissible = admissible_range(mp, t)?;
    let span = 1.0 - BETA_EDGE;
    let samples = (0..n)
        .map(|i| {
            let beta = span - 2.0 * span * i as f64 / (n - 1) as f64;
            let omega = omega_from_beta(beta, mp);
            FrontSample {
                param: omega,
                point: disk_two_beta(beta, mp, t),
                admissible: in_ranges(&admissible, omega),
            }
        })
        .collect();
    Ok(FrontLine {
        mode: ControlMode::Two,
        t,
        samples,
        admissible,
    })
}

/// The extremal traced by the self-intersections of the front lines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalCurve {
    pub mode: ControlMode,
    /// `alpha_c` (three controls) or `omega_c` (two controls).
    pub param_c: f64,
    pub t_c: f64,
    #[serde(skip)]
    mp: ModelParams,
}

impl CriticalCurve {
    pub fn point(&self, t: f64) -> DiskPoint {
        match self.mode {
            ControlMode::Three => disk_three(self.param_c, &self.mp, t),
            ControlMode::Two => disk_two(self.param_c, &self.mp, t),
        }
    }

    /// `n` points uniform on `[0, t_c]`.
    pub fn points(&self, n: usize) -> Vec<(f64, DiskPoint)> {
        let n = n.max(2);
        (0..n)
            .map(|i| {
                let t = self.t_c * i as f64 / (n - 1) as f64;
                (t, self.point(t))
            })
            .collect()
    }
}

fn require_three_weak(mp: &ModelParams) -> Result<()> {
    mp.require_mode(ControlMode::Three)?;
    match mp.regime() {
        Regime::ThreeWeak => Ok(()),
        found => Err(Error::RegimeMismatch {
            expected: "three-weak",
            found,
        }),
    }
}

/// `alpha_c = -gamma / omega0`, traced up to the cusp at `t_c = pi / gamma`.
pub fn critical_curve_three(mp: &ModelParams) -> Result<CriticalCurve> {
    require_three_weak(mp)?;
    Ok(CriticalCurve {
        mode: ControlMode::Three,
        param_c: -mp.gamma() / mp.omega0(),
        t_c: PI / mp.gamma(),
        mp: *mp,
    })
}

/// Cusp of the three-control critical curve.
pub fn cusp_three(mp: &ModelParams) -> Result<(f64, DiskPoint)> {
    require_three_weak(mp)?;
    let (g, w0) = (mp.gamma(), mp.omega0());
    let (s, c) = (PI * w0 / (2.0 * g)).sin_cos();
    Ok((PI / g, DiskPoint::new(g / w0 * s, g / w0 * c)))
}

/// Time `4 pi / (gamma + |omega0|)` at which the `alpha = sign(omega0)` end
/// of the three-control front line returns to the identity.
pub fn return_time_three(mp: &ModelParams) -> f64 {
    4.0 * PI / (mp.gamma() + mp.omega0().abs())
}

/// `omega_c = (omega0^2 + gamma^2) / omega0`.
pub fn critical_frequency_two(mp: &ModelParams) -> Result<f64> {
    if mp.omega0() == 0.0 {
        return Err(Error::DegenerateCritical);
    }
    let w0 = mp.omega0();
    Ok((w0 * w0 + mp.gamma() * mp.gamma()) / w0)
}

/// `t_c = pi |omega0| / (gamma sqrt(omega0^2 + gamma^2))`.
pub fn critical_time_two(mp: &ModelParams) -> Result<f64> {
    if mp.omega0() == 0.0 {
        return Err(Error::DegenerateCritical);
    }
    let (g, w0) = (mp.gamma(), mp.omega0());
    Ok(PI * w0.abs() / (g * w0.hypot(g)))
}

pub fn critical_curve_two(mp: &ModelParams) -> Result<CriticalCurve> {
    mp.require_mode(ControlMode::Two)?;
    Ok(CriticalCurve {
        mode: ControlMode::Two,
        param_c: critical_frequency_two(mp)?,
        t_c: critical_time_two(mp)?,
        mp: *mp,
    })
}

/// Extremals reaching the unit circle at time `t`, branch `k`: those with
/// `a tau = k pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCutLocus {
    pub k: u32,
    mp: ModelParams,
}

impl BoundaryCutLocus {
    pub fn new(mp: &ModelParams, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("branch index k must be positive".into()));
        }
        Ok(BoundaryCutLocus { k, mp: *mp })
    }

    /// Largest time on the branch, `2 k pi / gamma`.
    pub fn t_end(&self) -> f64 {
        2.0 * self.k as f64 * PI / self.mp.gamma()
    }

    fn root(&self, t: f64) -> Result<f64> {
        let tau = 0.5 * t;
        let kp = self.k as f64 * PI;
        let gt = self.mp.gamma() * tau;
        if !(tau >= 0.0) || gt > kp * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "t = {t} outside [0, {}] for branch k = {}",
                self.t_end(),
                self.k
            )));
        }
        Ok(((kp - gt) * (kp + gt)).max(0.0).sqrt())
    }

    /// `(omega+, omega-) = omega0 +- sqrt((k pi / tau)^2 - gamma^2)`.
    pub fn freqs(&self, t: f64) -> Result<(f64, f64)> {
        let s = self.root(t)? / (0.5 * t);
        let w0 = self.mp.omega0();
        Ok((w0 + s, w0 - s))
    }

    /// `(psi+, psi-) = -omega0 tau -+ sqrt(k^2 pi^2 - gamma^2 tau^2) +- k pi`.
    pub fn angles(&self, t: f64) -> Result<(f64, f64)> {
        let s = self.root(t)?;
        let kp = self.k as f64 * PI;
        let drift = -self.mp.omega0() * 0.5 * t;
        Ok((drift - s + kp, drift + s - kp))
    }
}

pub fn boundary_critical_freqs_two(mp: &ModelParams, t: f64, k: u32) -> Result<(f64, f64)> {
    BoundaryCutLocus::new(mp, k)?.freqs(t)
}

pub fn boundary_cut_angles_two(mp: &ModelParams, t: f64, k: u32) -> Result<(f64, f64)> {
    BoundaryCutLocus::new(mp, k)?.angles(t)
}

fn reached_at(mp: &ModelParams, p: &DiskPoint, t: f64) -> Result<bool> {
    let sol = solver::min_time(p, mp)?;
    Ok(sol.t_f >= t * (1.0 - OPTIMAL_REL) - 1e-9)
}

/// Splits `[lo, hi]` at `cuts` and keeps the pieces whose midpoint is still
/// reached optimally at `t`, merging neighbours.
fn filter_pieces<F>(mp: &ModelParams, t: f64, lo: f64, hi: f64, cuts: &[f64], point: F) -> Result<Vec<ParamInterval>>
where
    F: Fn(f64) -> DiskPoint,
{
    let mut edges = vec![lo];
    edges.extend(cuts.iter().copied().filter(|&c| c > lo && c < hi));
    edges.push(hi);
    edges.sort_by(|a, b| a.total_cmp(b));
    edges.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + a.abs()));
    let mut out: Vec<ParamInterval> = Vec::new();
    for w in edges.windows(2) {
        if !reached_at(mp, &point(0.5 * (w[0] + w[1])), t)? {
            continue;
        }
        match out.last_mut() {
            Some(last) if (last.hi - w[0]).abs() <= 1e-12 * (1.0 + w[0].abs()) => last.hi = w[1],
            _ => out.push(ParamInterval::new(w[0], w[1])),
        }
    }
    if out.is_empty() && edges.len() == 2 && (hi - lo).abs() <= 1e-9 && reached_at(mp, &point(lo), t)? {
        out.push(ParamInterval::new(lo, hi));
    }
    Ok(out)
}

/// Parameters (`alpha` or `omega`) whose extremal is still optimal at time `t`.
/// Empty beyond the diameter.
pub fn admissible_range(mp: &ModelParams, t: f64) -> Result<Vec<ParamInterval>> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("negative time {t}")));
    }
    let d = solver::diameter(mp);
    if t > d.t_max * (1.0 + 1e-12) {
        return Ok(Vec::new());
    }
    let (g, w0) = (mp.gamma(), mp.omega0());
    match mp.regime() {
        Regime::ThreeStrong | Regime::ThreeEqual => Ok(vec![ParamInterval::new(-1.0, 1.0)]),
        Regime::ThreeWeak => {
            let alpha_c = -g / w0;
            if t <= return_time_three(mp).min(PI / g) {
                return Ok(vec![if w0 > 0.0 {
                    ParamInterval::new(alpha_c, 1.0)
                } else {
                    ParamInterval::new(-1.0, alpha_c)
                }]);
            }
            let cuts = critical_intersections(mp, t)?;
            filter_pieces(mp, t, -1.0, 1.0, &cuts, |a| disk_three(a, mp, t))
        }
        _ => {
            if t == 0.0 {
                return Ok(vec![ParamInterval::new(f64::NEG_INFINITY, f64::INFINITY)]);
            }
            let (wp, wm) = boundary_critical_freqs_two(mp, t, 1)?;
            if w0 == 0.0 {
                return Ok(vec![ParamInterval::new(wm, wp)]);
            }
            let wc = critical_frequency_two(mp)?;
            if t <= critical_time_two(mp)? {
                return Ok(vec![if w0 > 0.0 {
                    ParamInterval::new(wm, wc)
                } else {
                    ParamInterval::new(wc, wp)
                }]);
            }
            let cuts = critical_intersections(mp, t)?;
            filter_pieces(mp, t, wm, wp, &cuts, |w| disk_two(w, mp, t))
        }
    }
}

/// All parameters of `F_t` at which it meets the critical curve on `[0, t_c]`,
/// sorted.
pub fn critical_intersections(mp: &ModelParams, t: f64) -> Result<Vec<f64>> {
    match mp.mode() {
        ControlMode::Three => intersections_three(mp, t),
        ControlMode::Two => intersections_two(mp, t),
    }
}

/// First and last parameter at which `F_t` meets the critical curve, `None`
/// when they do not meet.
pub fn critical_intersection(mp: &ModelParams, t: f64) -> Result<Option<(f64, f64)>> {
    let all = critical_intersections(mp, t)?;
    Ok(all.first().map(|&first| (first, *all.last().unwrap())))
}

fn alpha_on_line(p: &DiskPoint, mp: &ModelParams, t: f64) -> f64 {
    let tau = 0.5 * t;
    let (sw, cw) = (mp.omega0() * tau).sin_cos();
    let sg = (mp.gamma() * tau).sin();
    (-(p.x * sw + p.y * cw) / sg).clamp(-1.0, 1.0)
}

fn intersections_three(mp: &ModelParams, t: f64) -> Result<Vec<f64>> {
    let curve = critical_curve_three(mp)?;
    if (mp.gamma() * 0.5 * t).sin().abs() < 1e-12 {
        return Ok(Vec::new());
    }
    let g = |s: f64| frontline_residual_three(&curve.point(s), mp, t);
    let opts = ScanOptions {
        touch_tol: 1e-10,
        ..Default::default()
    };
    let mut alphas: Vec<f64> = scan_roots(&g, 0.0, curve.t_c, 4000, opts)
        .into_iter()
        .map(|s| alpha_on_line(&curve.point(s), mp, t))
        .collect();
    alphas.sort_by(|a, b| a.total_cmp(b));
    alphas.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
    Ok(alphas)
}

fn seg_intersect(p0: DiskPoint, p1: DiskPoint, q0: DiskPoint, q1: DiskPoint) -> Option<(f64, f64)> {
    let (rx, ry) = (p1.x - p0.x, p1.y - p0.y);
    let (sx, sy) = (q1.x - q0.x, q1.y - q0.y);
    let den = rx * sy - ry * sx;
    if den == 0.0 {
        return None;
    }
    let (qx, qy) = (q0.x - p0.x, q0.y - p0.y);
    let u = (qx * sy - qy * sx) / den;
    let v = (qx * ry - qy * rx) / den;
    ((0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v)).then_some((u, v))
}

fn intersections_two(mp: &ModelParams, t: f64) -> Result<Vec<f64>> {
    let curve = critical_curve_two(mp)?;
    let (wp, wm) = match boundary_critical_freqs_two(mp, t, 1) {
        Ok(f) => f,
        Err(_) => return Ok(Vec::new()),
    };
    let beta_of = |w: f64| {
        let b = mp.omega0() - w;
        b / b.hypot(mp.gamma())
    };
    let (b_lo, b_hi) = (beta_of(wp), beta_of(wm));
    let n = 1500;
    let front: Vec<(f64, DiskPoint)> = (0..=n)
        .map(|i| {
            let b = b_lo + (b_hi - b_lo) * i as f64 / n as f64;
            (b, disk_two_beta(b, mp, t))
        })
        .collect();
    let crit: Vec<(f64, DiskPoint)> = (0..=n)
        .map(|i| {
            let s = curve.t_c * i as f64 / n as f64;
            (s, curve.point(s))
        })
        .collect();
    let bbox = |a: DiskPoint, b: DiskPoint| (a.x.min(b.x), a.x.max(b.x), a.y.min(b.y), a.y.max(b.y));
    let mut found = Vec::new();
    for fw in front.windows(2) {
        let fb = bbox(fw[0].1, fw[1].1);
        for cw in crit.windows(2) {
            let cb = bbox(cw[0].1, cw[1].1);
            if fb.1 < cb.0 || cb.1 < fb.0 || fb.3 < cb.2 || cb.3 < fb.2 {
                continue;
            }
            if let Some((u, v)) = seg_intersect(fw[0].1, fw[1].1, cw[0].1, cw[1].1) {
                let b0 = fw[0].0 + u * (fw[1].0 - fw[0].0);
                let s0 = cw[0].0 + v * (cw[1].0 - cw[0].0);
                let (b, _) = refine_two(mp, &curve, t, b0, s0);
                found.push(omega_from_beta(b, mp));
            }
        }
    }
    found.sort_by(|a, b| a.total_cmp(b));
    found.dedup_by(|a, b| (*a - *b).abs() <= 1e-7 * (1.0 + a.abs()));
    Ok(found)
}

/// Newton iteration on `disk_two_beta(b, t) = curve(s)` in `(b, s)`.
fn refine_two(mp: &ModelParams, curve: &CriticalCurve, t: f64, mut b: f64, mut s: f64) -> (f64, f64) {
    let f = |b: f64, s: f64| {
        let p = disk_two_beta(b, mp, t);
        let q = curve.point(s);
        (p.x - q.x, p.y - q.y)
    };
    for _ in 0..30 {
        let (fx, fy) = f(b, s);
        if fx.hypot(fy) < 1e-14 {
            break;
        }
        let hb = 1e-7;
        let hs = 1e-7 * (1.0 + s.abs());
        let (bp, bm) = ((b + hb).min(1.0 - 1e-15), (b - hb).max(-1.0 + 1e-15));
        let (fbp, fbm) = (f(bp, s), f(bm, s));
        let (fsp, fsm) = (f(b, s + hs), f(b, s - hs));
        let j11 = (fbp.0 - fbm.0) / (bp - bm);
        let j21 = (fbp.1 - fbm.1) / (bp - bm);
        let j12 = (fsp.0 - fsm.0) / (2.0 * hs);
        let j22 = (fsp.1 - fsm.1) / (2.0 * hs);
        let det = j11 * j22 - j12 * j21;
        if det.abs() < 1e-300 {
            break;
        }
        let db = (fx * j22 - fy * j12) / det;
        let ds = (j11 * fy - j21 * fx) / det;
        b = (b - db).clamp(-1.0 + 1e-15, 1.0 - 1e-15);
        s -= ds;
    }
    (b, s)
}

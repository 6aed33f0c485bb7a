//! Minimum-time solutions, diameters and pulse synthesis.
//!
//! A disk target is reached in minimum time `t` exactly when `t` is the first
//! time the target lies on the front line `F_t`. With three controls this is
//! the first root of a scalar equation in `t`. With two controls the target
//! is written in the co-rotating frame of each extremal, which turns the
//! search into a one-dimensional root problem over the rotating-frame angle.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremals::{
    disk_three, disk_two, propagate_numeric, ControlSample, Extremal, ThreeControlExtremal, TwoControlExtremal,
};
use crate::frontline::{critical_frequency_two, BoundaryCutLocus};
use crate::roots::{roots_from_samples, scan_roots, ScanOptions};
use crate::su2::{wrap_angle, ControlMode, DiskPoint, ModelParams, Regime, Su2Operator};

/// Largest disk residual accepted for a returned [`Solution`].
pub const SOLUTION_TOL: f64 = 1e-9;

/// Targets with `1 - r` below this are treated as diagonal operators.
const BOUNDARY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Solution {
    pub t_f: f64,
    /// `alpha` (three controls) or `omega` (two controls).
    pub param: f64,
    pub phi: f64,
    /// Disk distance between the extremal endpoint and the target.
    pub residual: f64,
    pub regime: Regime,
}

impl Solution {
    pub fn mode(&self) -> ControlMode {
        self.regime.mode()
    }

    pub fn extremal(&self) -> Result<Extremal> {
        Ok(match self.mode() {
            ControlMode::Three => Extremal::Three(ThreeControlExtremal::new(self.param, self.phi)?),
            ControlMode::Two => Extremal::Two(TwoControlExtremal::new(self.param, self.phi)?),
        })
    }

    /// Closed-form endpoint of the solution.
    pub fn endpoint(&self, mp: &ModelParams) -> Result<DiskPoint> {
        Ok(self.extremal()?.state(mp, self.t_f).project())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diameter {
    pub t_max: f64,
    pub worst_point: DiskPoint,
    /// Extremal reaching the worst point; `None` when every extremal does.
    pub worst_param: Option<f64>,
    /// The worst point is only approached by optimal trajectories.
    pub open_limit: bool,
    pub regime: Regime,
}

fn check_target(p: &DiskPoint) -> Result<()> {
    if !(p.x.is_finite() && p.y.is_finite()) || p.r2() > 1.0 + 1e-12 {
        return Err(Error::OutsideDisk { x: p.x, y: p.y });
    }
    Ok(())
}

fn finish(mp: &ModelParams, t_f: f64, param: f64, target: &DiskPoint) -> Result<Solution> {
    let reached = match mp.mode() {
        ControlMode::Three => disk_three(param, mp, t_f),
        ControlMode::Two => disk_two(param, mp, t_f),
    };
    let residual = reached.distance(target);
    if !(residual <= SOLUTION_TOL) {
        return Err(Error::NoRoot(format!(
            "best candidate t = {t_f}, param = {param} misses ({}, {}) by {residual:e}",
            target.x, target.y
        )));
    }
    Ok(Solution {
        t_f,
        param,
        phi: 0.0,
        residual,
        regime: mp.regime(),
    })
}

/// Minimum time to `target` in either mode.
pub fn min_time(target: &DiskPoint, mp: &ModelParams) -> Result<Solution> {
    match mp.mode() {
        ControlMode::Three => min_time_three(target, mp),
        ControlMode::Two => min_time_two(target, mp),
    }
}

fn alpha_for(target: &DiskPoint, mp: &ModelParams, tau: f64) -> f64 {
    let (sw, cw) = (mp.omega0() * tau).sin_cos();
    let sg = (mp.gamma() * tau).sin();
    if sg.abs() < 1e-12 {
        return 0.0;
    }
    (-(target.x * sw + target.y * cw) / sg).clamp(-1.0, 1.0)
}

/// First time the target lies on the three-control front line.
pub fn min_time_three(target: &DiskPoint, mp: &ModelParams) -> Result<Solution> {
    mp.require_mode(ControlMode::Three)?;
    check_target(target)?;
    if target.distance(&DiskPoint::IDENTITY) == 0.0 {
        return finish(mp, 0.0, 0.0, target);
    }
    let (g, w0) = (mp.gamma(), mp.omega0());
    let f = |tau: f64| {
        let (sw, cw) = (w0 * tau).sin_cos();
        target.x * cw - target.y * sw - (g * tau).cos()
    };
    let step = PI / (50.0 * (g + w0.abs()));
    let hi = 0.5 * diameter(mp).t_max * 1.02 + 2.0 * step;
    let n = (hi / step).ceil() as usize;
    let opts = ScanOptions {
        first_only: true,
        touch_tol: 1e-10,
        ..Default::default()
    };
    let tau = scan_roots(&f, 0.0, hi, n, opts)
        .into_iter()
        .find(|&tau| tau > 0.0)
        .ok_or_else(|| Error::NoRoot(format!("no front line through ({}, {})", target.x, target.y)))?;
    let alpha = alpha_for(target, mp, tau);
    finish(mp, 2.0 * tau, alpha, target)
}

/// Closed form for `gamma = |omega0|`: optimal extremals are circles through
/// the identity.
pub fn min_time_three_equal(target: &DiskPoint, mp: &ModelParams) -> Result<Solution> {
    mp.require_mode(ControlMode::Three)?;
    if mp.regime() != Regime::ThreeEqual {
        return Err(Error::RegimeMismatch {
            expected: "three-equal",
            found: mp.regime(),
        });
    }
    check_target(target)?;
    let (x, y) = (target.x, target.y);
    if target.distance(&DiskPoint::IDENTITY) == 0.0 {
        return finish(mp, 0.0, 0.0, target);
    }
    let g = mp.gamma();
    let angle = (2.0 * y * (1.0 - x)).atan2(y * y - (1.0 - x) * (1.0 - x));
    let k = x + y * y / (x - 1.0);
    let (alpha, t_f) = if mp.omega0() > 0.0 {
        (-k, (-angle).rem_euclid(TAU) / g)
    } else {
        (k, angle.rem_euclid(TAU) / g)
    };
    finish(mp, t_f, alpha.clamp(-1.0, 1.0), target)
}

/// The angle residual of the two-control solver along one branch: for a
/// rotating-frame angle `theta`, returns `(R, tau, omega)`.
fn branch_eval(mp: &ModelParams, r_f: f64, psi_f: f64, branch: usize, theta: f64) -> (f64, f64, f64) {
    let c = (r_f * theta.cos()).clamp(-1.0, 1.0);
    let base = c.acos();
    let m = (branch / 2) as f64;
    let (q, sq) = if branch.is_multiple_of(2) {
        (TAU * m + base, (1.0 - c * c).sqrt())
    } else {
        (TAU * m + TAU - base, -(1.0 - c * c).sqrt())
    };
    let beta = (r_f * theta.sin() / sq).clamp(-1.0, 1.0);
    let cb = (1.0 - beta * beta).sqrt();
    let a = mp.gamma() / cb;
    let tau = q / a;
    let omega_tau = mp.omega0() * tau - beta * q;
    let omega = mp.omega0() - beta * a;
    (-omega_tau - theta - psi_f, tau, omega)
}

fn interior_two(mp: &ModelParams, target: &DiskPoint, tau_cap: f64) -> Option<(f64, f64)> {
    let r_f = target.r();
    let psi_f = target.angle();
    let g = mp.gamma();
    let floor = (1.0 - r_f * r_f).max(0.0).sqrt() / g;
    let mut best: Option<(f64, f64)> = None;
    for branch in 0usize.. {
        let q_min = TAU * (branch / 2) as f64 + if branch.is_multiple_of(2) { 0.0 } else { PI };
        let bound = q_min * floor;
        if bound > tau_cap || best.is_some_and(|(t, _)| bound > t) {
            break;
        }
        let eval = |th: f64| branch_eval(mp, r_f, psi_f, branch, th);
        let ind = |th: f64| (0.5 * eval(th).0).sin();
        let mut xs = vec![0.0];
        let mut rs = vec![eval(0.0).0];
        let mut h = TAU / 512.0;
        while *xs.last().unwrap() < TAU {
            let x0 = *xs.last().unwrap();
            let r0 = *rs.last().unwrap();
            loop {
                let x1 = (x0 + h).min(TAU);
                let r1 = eval(x1).0;
                if (r1 - r0).abs() <= PI / 4.0 || h < 1e-12 {
                    xs.push(x1);
                    rs.push(r1);
                    if (r1 - r0).abs() < PI / 16.0 {
                        h = (h * 1.5).min(TAU / 256.0);
                    }
                    break;
                }
                h *= 0.5;
            }
        }
        let fs: Vec<f64> = rs.iter().map(|r| (0.5 * r).sin()).collect();
        for th in roots_from_samples(&ind, &xs, &fs, ScanOptions::default()) {
            let (_, tau, omega) = eval(th);
            if best.is_none_or(|(t, _)| tau < t) {
                best = Some((tau, omega));
            }
        }
    }
    best
}

fn boundary_two(mp: &ModelParams, target: &DiskPoint) -> Option<(f64, f64)> {
    let lambda = target.angle();
    let locus = BoundaryCutLocus::new(mp, 1).ok()?;
    let t_end = locus.t_end();
    let mut best: Option<(f64, f64)> = None;
    for plus in [true, false] {
        let f = |t: f64| {
            let (pp, pm) = locus.angles(t).unwrap_or((0.0, 0.0));
            (0.5 * (if plus { pp } else { pm } - lambda)).sin()
        };
        let opts = ScanOptions {
            first_only: true,
            touch_tol: 1e-10,
            ..Default::default()
        };
        if let Some(&t) = scan_roots(&f, 0.0, t_end, 4000, opts).iter().find(|&&t| t > 0.0) {
            let (wp, wm) = locus.freqs(t).ok()?;
            if best.is_none_or(|(bt, _)| t < bt) {
                best = Some((t, if plus { wp } else { wm }));
            }
        }
    }
    best
}

/// Minimum time with two controls.
pub fn min_time_two(target: &DiskPoint, mp: &ModelParams) -> Result<Solution> {
    mp.require_mode(ControlMode::Two)?;
    check_target(target)?;
    let r_f = target.r();
    if target.distance(&DiskPoint::IDENTITY) == 0.0 {
        return finish(mp, 0.0, mp.omega0(), target);
    }
    if r_f < 1e-13 {
        return finish(mp, PI / mp.gamma(), mp.omega0(), target);
    }
    let found = if r_f >= 1.0 - BOUNDARY_EPS {
        boundary_two(mp, target)
    } else {
        interior_two(mp, target, 0.5 * diameter(mp).t_max * 1.05)
    };
    let (tau, omega) =
        found.ok_or_else(|| Error::NoRoot(format!("no extremal reaches ({}, {})", target.x, target.y)))?;
    let (t_f, omega) = if r_f >= 1.0 - BOUNDARY_EPS { (tau, omega) } else { (2.0 * tau, omega) };
    finish(mp, t_f, omega, target)
}

/// Worst-case time over all targets and the target attaining it.
pub fn diameter(mp: &ModelParams) -> Diameter {
    let (g, w0) = (mp.gamma(), mp.omega0());
    let aw = w0.abs();
    let s = w0 * w0 + g * g;
    let regime = mp.regime();
    let (t_max, worst_point, worst_param, open_limit) = match regime {
        Regime::ThreeStrong => {
            let (sn, cs) = (PI * w0 / g).sin_cos();
            (TAU / g, DiskPoint::new(-cs, sn), None, false)
        }
        Regime::ThreeEqual => (TAU / g, DiskPoint::IDENTITY, None, true),
        Regime::ThreeWeak => {
            let alpha_c = -g / w0;
            let tbar = (PI / g) * (1.0 - g / aw);
            ((PI / g) * (1.0 + g / aw), disk_three(alpha_c, mp, tbar), Some(-alpha_c), true)
        }
        Regime::TwoStrong => {
            let psi = PI * (1.0 - w0 / g);
            (TAU / g, DiskPoint::from_polar(1.0, psi), Some(w0), false)
        }
        Regime::TwoMiddle => (4.0 * PI * aw / s, DiskPoint::IDENTITY, Some(0.5 * s / w0), true),
        Regime::TwoWeak => {
            let wc = s / w0;
            let ac = g * s.sqrt() / aw;
            let tau_bar = (PI / (2.0 * ac)) * (wc.abs() - 2.0 * ac) / (wc.abs() - ac);
            (
                (PI / aw) * (1.0 + s.sqrt() / g),
                disk_two(wc, mp, 2.0 * tau_bar),
                Some((w0 * w0 - g * g) / w0),
                true,
            )
        }
    };
    Diameter {
        t_max,
        worst_point,
        worst_param,
        open_limit,
        regime,
    }
}

/// Minimum time to the diagonal operator `diag(e^{i lambda}, e^{-i lambda})`.
pub fn diagonal_min_time(lambda: f64, mp: &ModelParams) -> Result<Solution> {
    if !(0.0..TAU).contains(&lambda) {
        return Err(Error::Domain(format!("lambda = {lambda} outside [0, 2 pi)")));
    }
    let target = DiskPoint::from_polar(1.0, lambda);
    if lambda == 0.0 {
        let p = match mp.mode() {
            ControlMode::Three => 0.0,
            ControlMode::Two => mp.omega0(),
        };
        return finish(mp, 0.0, p, &DiskPoint::IDENTITY);
    }
    let (g, w0) = (mp.gamma(), mp.omega0());
    match mp.mode() {
        ControlMode::Three => {
            if w0 >= g * (PI - lambda) / PI {
                finish(mp, (4.0 * PI - 2.0 * lambda) / (g + w0), 1.0, &target)
            } else {
                finish(mp, 2.0 * lambda / (g - w0), -1.0, &target)
            }
        }
        ControlMode::Two => {
            let s = w0 * w0 + g * g;
            let big = (PI * PI * w0 * w0 + (2.0 * PI * lambda - lambda * lambda) * g * g).sqrt();
            let t_f = 2.0 * ((PI - lambda) * w0 + big) / s;
            let (wp, wm) = BoundaryCutLocus::new(mp, 1)?.freqs(t_f)?;
            let omega = if PI - lambda - w0 * 0.5 * t_f >= 0.0 { wp } else { wm };
            finish(mp, t_f, omega, &target)
        }
    }
}

/// The SWAP-like target (disk origin), reached in `pi / gamma` in both modes.
pub fn swap_min_time(mp: &ModelParams) -> Result<Solution> {
    let p = match mp.mode() {
        ControlMode::Three => 0.0,
        ControlMode::Two => mp.omega0(),
    };
    finish(mp, PI / mp.gamma(), p, &DiskPoint::ORIGIN)
}

/// Circle traced by the extremal `omega_c / 2`: it separates the targets
/// reached before and after the critical frequency takes over.
pub fn separatrix_two(mp: &ModelParams) -> Result<(DiskPoint, f64)> {
    critical_frequency_two(mp)?;
    let (g, w0) = (mp.gamma(), mp.omega0());
    let s = w0 * w0 + g * g;
    Ok((DiskPoint::new(g * g / s, 0.0), w0 * w0 / s))
}

/// Solves for a full operator target, fixing the transverse phase so that the
/// off-diagonal entry matches as well.
pub fn min_time_operator(target: &Su2Operator, mp: &ModelParams) -> Result<Solution> {
    let mut sol = min_time(&target.project(), mp)?;
    let reached = sol.extremal()?.state(mp, sol.t_f);
    if reached.b().norm() > 1e-12 && target.b().norm() > 1e-12 {
        sol.phi = wrap_angle(reached.b().arg() - target.b().arg());
    }
    Ok(sol)
}

/// `n` uniform samples of the optimal pulse on `[0, t_f]`.
pub fn synthesize_controls(sol: &Solution, mp: &ModelParams, n: usize) -> Result<Vec<ControlSample>> {
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 samples, got {n}")));
    }
    let e = sol.extremal()?;
    (0..n)
        .map(|i| e.controls(mp, sol.t_f * i as f64 / (n - 1) as f64))
        .collect()
}

/// Piecewise-linear interpolation of sampled controls in polar form
/// (transverse amplitude, unwrapped phase, `u_z`).
#[derive(Debug, Clone)]
pub struct PulseInterpolator {
    t: Vec<f64>,
    amp: Vec<f64>,
    phase: Vec<f64>,
    uz: Vec<f64>,
}

impl PulseInterpolator {
    pub fn new(samples: &[ControlSample]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Domain("empty pulse".into()));
        }
        let mut phase: Vec<f64> = Vec::with_capacity(samples.len());
        for s in samples {
            let raw = s.uy.atan2(s.ux);
            let p = match phase.last() {
                Some(&prev) => prev + crate::su2::wrap_signed(raw - prev),
                None => raw,
            };
            phase.push(p);
        }
        Ok(PulseInterpolator {
            t: samples.iter().map(|s| s.t).collect(),
            amp: samples.iter().map(|s| s.ux.hypot(s.uy)).collect(),
            phase,
            uz: samples.iter().map(|s| s.uz).collect(),
        })
    }

    pub fn at(&self, t: f64) -> ControlSample {
        let n = self.t.len();
        let (i, w) = if n == 1 || t <= self.t[0] {
            (0, 0.0)
        } else if t >= self.t[n - 1] {
            (n - 2, 1.0)
        } else {
            let i = self.t.partition_point(|&x| x <= t) - 1;
            let span = self.t[i + 1] - self.t[i];
            (i, if span > 0.0 { (t - self.t[i]) / span } else { 0.0 })
        };
        let j = (i + 1).min(n - 1);
        let lerp = |v: &[f64]| v[i] + w * (v[j] - v[i]);
        let (amp, ph) = (lerp(&self.amp), lerp(&self.phase));
        ControlSample {
            t,
            ux: amp * ph.cos(),
            uy: amp * ph.sin(),
            uz: lerp(&self.uz),
        }
    }
}

/// Integrates the sampled pulse numerically from the identity.
pub fn replay_controls(samples: &[ControlSample], mp: &ModelParams, steps: usize) -> Result<Su2Operator> {
    let pulse = PulseInterpolator::new(samples)?;
    let t_f = samples.last().map(|s| s.t).unwrap_or(0.0);
    Ok(propagate_numeric(mp, |t| pulse.at(t), t_f, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremals::default_steps;

    fn three(w0: f64, g: f64) -> ModelParams {
        ModelParams::three(w0, g).unwrap()
    }

    fn two(w0: f64, g: f64) -> ModelParams {
        ModelParams::two(w0, g).unwrap()
    }

    #[test]
    fn trivial_targets() {
        for mp in [three(0.5, 1.0), two(0.5, 1.0)] {
            assert_eq!(min_time(&DiskPoint::IDENTITY, &mp).unwrap().t_f, 0.0);
            let s = min_time(&DiskPoint::ORIGIN, &mp).unwrap();
            assert!((s.t_f - PI).abs() < 1e-12);
        }
        assert!(min_time(&DiskPoint::new(0.9, 0.9), &three(0.0, 1.0)).is_err());
    }

    #[test]
    fn swap_time_three_control_alpha() {
        let s = min_time_three(&DiskPoint::ORIGIN, &three(0.3, 2.0)).unwrap();
        assert!((s.t_f - PI / 2.0).abs() < 1e-12);
        assert!(s.param.abs() < 1e-9);
        let s = min_time_two(&DiskPoint::ORIGIN, &two(0.3, 2.0)).unwrap();
        assert!((s.param - 0.3).abs() < 1e-12);
    }

    #[test]
    fn collapse_point_in_strong_regime() {
        let mp = three(1.0, 3.0);
        let s = min_time_three(&DiskPoint::new(-0.5, 3f64.sqrt() / 2.0), &mp).unwrap();
        assert!((s.t_f - 2.0 * PI / 3.0).abs() < 1e-6, "{}", s.t_f);
    }

    #[test]
    fn diagonal_examples() {
        let mp = two(1.0, 1.0);
        let s = min_time_two(&DiskPoint::new(0.0, 1.0), &mp).unwrap();
        let want = PI * (1.0 + 7f64.sqrt()) / 2.0;
        assert!((s.t_f - want).abs() < 1e-9, "{} vs {want}", s.t_f);
        assert!((diagonal_min_time(PI / 2.0, &mp).unwrap().t_f - want).abs() < 1e-12);
        let mp = two(0.0, 1.0);
        let s = min_time_two(&DiskPoint::new(0.0, 1.0), &mp).unwrap();
        assert!((s.t_f - PI * 3f64.sqrt()).abs() < 1e-9);
        assert!((diagonal_min_time(PI, &mp).unwrap().t_f - TAU).abs() < 1e-12);
        let mp = three(1.0, 1.0);
        assert!((diagonal_min_time(PI / 2.0, &mp).unwrap().t_f - 1.5 * PI).abs() < 1e-12);
        assert_eq!(diagonal_min_time(0.0, &mp).unwrap().t_f, 0.0);
    }

    #[test]
    fn equal_regime_closed_form() {
        for &w0 in &[1.0, -1.0] {
            let mp = three(w0, 1.0);
            let s = min_time_three_equal(&DiskPoint::ORIGIN, &mp).unwrap();
            assert!((s.t_f - PI).abs() < 1e-12);
            for p in [DiskPoint::new(0.3, 0.4), DiskPoint::new(-0.7, -0.1), DiskPoint::new(0.95, 0.05)] {
                let a = min_time_three_equal(&p, &mp).unwrap();
                let b = min_time_three(&p, &mp).unwrap();
                assert!((a.t_f - b.t_f).abs() < 1e-9, "{p}: {} vs {}", a.t_f, b.t_f);
                assert!((a.param - b.param).abs() < 1e-7);
            }
        }
        assert!(min_time_three_equal(&DiskPoint::ORIGIN, &three(2.0, 1.0)).is_err());
    }

    #[test]
    fn table_diameters() {
        let cases = [
            (three(1.0, 3.0), TAU / 3.0),
            (three(1.0, 1.0), TAU),
            (three(3.0, 1.0), 4.0 * PI / 3.0),
            (two(1.0, 3.0), TAU / 3.0),
            (two(1.2, 1.0), 4.8 * PI / 2.44),
            (two(2.0, 1.0), 0.5 * PI * (1.0 + 5f64.sqrt())),
        ];
        for (mp, want) in cases {
            assert!((diameter(&mp).t_max - want).abs() < 1e-12, "{mp:?}");
        }
    }

    #[test]
    fn worst_points_are_reached_at_the_diameter() {
        for mp in [three(1.0, 3.0), three(-0.4, 1.0), two(1.0, 3.0), two(-0.5, 1.0)] {
            let d = diameter(&mp);
            let s = min_time(&d.worst_point, &mp).unwrap();
            assert!((s.t_f - d.t_max).abs() < 1e-6, "{mp:?}: {} vs {}", s.t_f, d.t_max);
        }
    }

    #[test]
    fn weak_worst_points_are_approached() {
        for mp in [three(3.0, 1.0), two(2.0, 1.0), two(-2.5, 1.0)] {
            let d = diameter(&mp);
            assert!(d.open_limit);
            let p = d.worst_point;
            let mut best: f64 = 0.0;
            for k in 0..16 {
                let th = TAU * k as f64 / 16.0;
                let q = DiskPoint::new(p.x + 1e-5 * th.cos(), p.y + 1e-5 * th.sin());
                best = best.max(min_time(&q, &mp).unwrap().t_f);
            }
            assert!((best - d.t_max).abs() < 1e-3, "{mp:?}: {best} vs {}", d.t_max);
        }
    }

    #[test]
    fn separatrix_circle() {
        let mp = two(1.0, 1.0);
        let (c, r) = separatrix_two(&mp).unwrap();
        assert_eq!((c.x, c.y, r), (0.5, 0.0, 0.5));
        let wc = critical_frequency_two(&mp).unwrap();
        for k in 0..20 {
            let p = disk_two(0.5 * wc, &mp, 0.3 * k as f64);
            assert!((p.distance(&c) - r).abs() < 1e-12);
        }
        assert!(separatrix_two(&two(0.0, 1.0)).is_err());
    }

    #[test]
    fn pulse_replay_reaches_target() {
        for mp in [three(0.7, 1.0), two(0.7, 1.0)] {
            let target = DiskPoint::new(-0.3, 0.5);
            let sol = min_time(&target, &mp).unwrap();
            let pulse = synthesize_controls(&sol, &mp, 400).unwrap();
            assert!(pulse.iter().all(|u| (u.norm() - 1.0).abs() < 1e-12));
            let m = replay_controls(&pulse, &mp, default_steps(&mp, sol.t_f)).unwrap();
            assert!(m.project().distance(&target) < 1e-6);
        }
    }

    #[test]
    fn operator_targets_fix_the_phase() {
        let mp = three(0.4, 1.0);
        let target = Su2Operator::exp(0.3, -0.8, 0.2, 1.7);
        let sol = min_time_operator(&target, &mp).unwrap();
        let reached = sol.extremal().unwrap().state(&mp, sol.t_f);
        assert!(reached.distance(&target) < 1e-8);
    }
}

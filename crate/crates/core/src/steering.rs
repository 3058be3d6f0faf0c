//! Closed-loop polar steering for a kinematic bicycle.
//!
//! The controller drives the pose error, expressed in polar form
//! `(ρ, α, β)`, to zero with a linear law; the resulting turn rate is turned
//! into a steering angle and integrated with explicit Euler steps.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gridmap::{DistanceMap, GridMap};

/// Wrap an angle into `(-π, π]`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = (a + PI).rem_euclid(TAU) - PI;
    if r <= -PI {
        r + TAU
    } else {
        r
    }
}

/// Robot pose in meters and radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl State {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        State {
            x,
            y,
            theta: normalize_angle(theta),
        }
    }

    pub fn distance(&self, other: &State) -> f64 {
        (other.x - self.x).hypot(other.y - self.y)
    }

    /// Direction of the segment from `self` to `other`.
    pub fn bearing_to(&self, other: &State) -> f64 {
        (other.y - self.y).atan2(other.x - self.x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Control {
    /// Linear speed, m/s.
    pub v: f64,
    /// Steering angle, radians.
    pub gamma: f64,
}

/// Pose error of `from` with respect to a target pose.
///
/// `alpha` is the bearing of the goal vector in the vehicle frame, `beta`
/// the angle of the goal vector measured in the goal frame (negated, as in
/// the usual polar formulation so that `k_beta < 0` is stabilizing).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarError {
    pub rho: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl PolarError {
    pub fn between(from: &State, to: &State) -> Self {
        let rho = from.distance(to);
        let bearing = from.bearing_to(to);
        let alpha = normalize_angle(bearing - from.theta);
        let beta = normalize_angle(to.theta - bearing);
        PolarError { rho, alpha, beta }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobotParams {
    /// Wheelbase `L`, meters.
    pub wheelbase: f64,
    pub v_max: f64,
    pub a_max: f64,
    pub gamma_max: f64,
    /// Clearance radius used for collision checks, meters.
    pub radius: f64,
}

impl Default for RobotParams {
    fn default() -> Self {
        RobotParams {
            wheelbase: 2.0,
            v_max: 2.0,
            a_max: 0.4,
            gamma_max: PI / 4.0,
            radius: 0.5,
        }
    }
}

impl RobotParams {
    pub fn validate(&self) -> Result<()> {
        let all = [self.wheelbase, self.v_max, self.a_max, self.gamma_max, self.radius];
        if all.iter().all(|v| v.is_finite() && *v > 0.0) && self.gamma_max < PI / 2.0 {
            Ok(())
        } else {
            Err(Error::Config(format!("robot parameters must be positive: {self:?}")))
        }
    }

    pub fn min_turning_radius(&self) -> f64 {
        self.wheelbase / self.gamma_max.tan()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SteeringGains {
    pub k_rho: f64,
    pub k_alpha: f64,
    pub k_beta: f64,
}

impl Default for SteeringGains {
    fn default() -> Self {
        SteeringGains {
            k_rho: 5.0,
            k_alpha: 15.0,
            k_beta: -5.0,
        }
    }
}

impl SteeringGains {
    /// Local stability of the polar controller needs `k_rho > 0`,
    /// `k_beta < 0` and `k_alpha > k_rho`.
    pub fn validate(&self) -> Result<()> {
        if self.k_rho > 0.0 && self.k_beta < 0.0 && self.k_alpha - self.k_rho > 0.0 {
            Ok(())
        } else {
            Err(Error::Config(format!("unstable steering gains: {self:?}")))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SteerConfig {
    pub dt: f64,
    pub max_steps: usize,
    pub pos_tol: f64,
    pub ang_tol: f64,
}

impl Default for SteerConfig {
    fn default() -> Self {
        SteerConfig {
            dt: 0.1,
            max_steps: 300,
            pos_tol: 0.2,
            ang_tol: 0.35,
        }
    }
}

impl SteerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dt > 0.0 && self.max_steps >= 1 && self.pos_tol >= 0.0 && self.ang_tol >= 0.0 {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid steering config: {self:?}")))
        }
    }

    /// Whether `s` is within tolerance of `target`.
    pub fn within_tolerance(&self, s: &State, target: &State) -> bool {
        s.distance(target) <= self.pos_tol
            && normalize_angle(s.theta - target.theta).abs() <= self.ang_tol
    }
}

/// A simulated motion: `states[k + 1] = integrate_step(states[k], controls[k])`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub states: Vec<State>,
    pub controls: Vec<Control>,
    pub dt: f64,
    /// Speed the robot had before the first control was applied.
    pub start_speed: f64,
    pub length: f64,
}

impl Trajectory {
    pub fn at_rest(start: State, dt: f64) -> Self {
        Trajectory {
            states: vec![start],
            controls: Vec::new(),
            dt,
            start_speed: 0.0,
            length: 0.0,
        }
    }

    pub fn start(&self) -> &State {
        &self.states[0]
    }

    pub fn end(&self) -> &State {
        self.states.last().expect("trajectory has at least one state")
    }

    /// Speed after the last control.
    pub fn end_speed(&self) -> f64 {
        self.controls.last().map_or(self.start_speed, |c| c.v)
    }

    fn push(&mut self, u: Control, s: State) {
        self.length += self.end().distance(&s);
        self.controls.push(u);
        self.states.push(s);
    }

    /// Append a motion that starts exactly where this one ends.
    pub fn extend(&mut self, next: &Trajectory) {
        assert_eq!(self.end(), next.start(), "segments must share their junction state");
        self.states.extend_from_slice(&next.states[1..]);
        self.controls.extend_from_slice(&next.controls);
        self.length += next.length;
    }

    /// Largest per-coordinate deviation between the stored states and a
    /// re-integration of the stored controls from `states[0]`.
    pub fn reintegration_error(&self, params: &RobotParams) -> f64 {
        let mut s = self.states[0];
        let mut worst: f64 = 0.0;
        for (u, stored) in self.controls.iter().zip(&self.states[1..]) {
            s = integrate_step(&s, u, self.dt, params);
            worst = worst
                .max((s.x - stored.x).abs())
                .max((s.y - stored.y).abs())
                .max(normalize_angle(s.theta - stored.theta).abs());
        }
        worst
    }

    /// Whether speed, steering and acceleration bounds hold on every control.
    pub fn respects_limits(&self, params: &RobotParams) -> bool {
        const EPS: f64 = 1e-12;
        let dv = params.a_max * self.dt + EPS;
        let mut prev = self.start_speed;
        self.controls.iter().all(|u| {
            let ok = u.v.abs() <= params.v_max + EPS
                && u.gamma.abs() <= params.gamma_max + EPS
                && (u.v - prev).abs() <= dv;
            prev = u.v;
            ok
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SteerResult {
    pub trajectory: Trajectory,
    pub reached: bool,
}

/// One control step of the polar law.
///
/// `prev_speed` is the speed applied on the previous step; the new speed is
/// rate-limited against it by `a_max·dt`.
pub fn compute_control(
    from: &State,
    to: &State,
    prev_speed: f64,
    dt: f64,
    gains: &SteeringGains,
    params: &RobotParams,
) -> Control {
    let err = PolarError::between(from, to);
    let dv = params.a_max * dt;
    let desired = if err.rho == 0.0 {
        0.0
    } else {
        (gains.k_rho * err.rho).clamp(0.0, params.v_max)
    };
    let v = desired
        .clamp(prev_speed - dv, prev_speed + dv)
        .clamp(0.0, params.v_max);
    if err.rho == 0.0 || v == 0.0 {
        return Control { v, gamma: 0.0 };
    }
    let omega = gains.k_alpha * err.alpha + gains.k_beta * err.beta;
    let gamma = (omega * params.wheelbase / v)
        .atan()
        .clamp(-params.gamma_max, params.gamma_max);
    Control { v, gamma }
}

/// Explicit Euler step of the kinematic bicycle.
pub fn integrate_step(s: &State, u: &Control, dt: f64, params: &RobotParams) -> State {
    State::new(
        s.x + u.v * s.theta.cos() * dt,
        s.y + u.v * s.theta.sin() * dt,
        s.theta + u.v / params.wheelbase * u.gamma.tan() * dt,
    )
}

/// True iff some point of the trajectory has clearance below the robot
/// radius. Consecutive states further apart than one cell are densified.
pub fn trajectory_collides(
    map: &GridMap,
    dmap: &DistanceMap,
    tr: &Trajectory,
    params: &RobotParams,
) -> bool {
    let hit = |x: f64, y: f64| !map.is_position_free(x, y) || dmap.state_clearance(x, y) < params.radius;
    let spacing = map.cell_size();
    let mut prev: Option<&State> = None;
    for s in &tr.states {
        if let Some(p) = prev {
            let d = p.distance(s);
            if d > spacing {
                let n = (d / spacing).ceil() as usize;
                for k in 1..n {
                    let t = k as f64 / n as f64;
                    if hit(p.x + (s.x - p.x) * t, p.y + (s.y - p.y) * t) {
                        return true;
                    }
                }
            }
        }
        if hit(s.x, s.y) {
            return true;
        }
        prev = Some(s);
    }
    false
}

/// The steering function: robot model, controller gains and simulation
/// settings bundled together.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Steering {
    pub params: RobotParams,
    pub gains: SteeringGains,
    pub cfg: SteerConfig,
}

impl Steering {
    pub fn new(params: RobotParams, gains: SteeringGains, cfg: SteerConfig) -> Result<Self> {
        params.validate()?;
        gains.validate()?;
        cfg.validate()?;
        Ok(Steering { params, gains, cfg })
    }

    /// Simulate the controller from `from` (moving at `start_speed`) toward
    /// `to` until the target is within tolerance or the step budget runs out.
    pub fn steer(&self, from: &State, start_speed: f64, to: &State) -> SteerResult {
        let mut tr = Trajectory::at_rest(*from, self.cfg.dt);
        tr.start_speed = start_speed;
        if self.cfg.within_tolerance(from, to) {
            return SteerResult {
                trajectory: tr,
                reached: true,
            };
        }
        let mut s = *from;
        let mut v = start_speed;
        for _ in 0..self.cfg.max_steps {
            let u = compute_control(&s, to, v, self.cfg.dt, &self.gains, &self.params);
            s = integrate_step(&s, &u, self.cfg.dt, &self.params);
            v = u.v;
            tr.push(u, s);
            if self.cfg.within_tolerance(&s, to) {
                return SteerResult {
                    trajectory: tr,
                    reached: true,
                };
            }
        }
        SteerResult {
            trajectory: tr,
            reached: false,
        }
    }
}

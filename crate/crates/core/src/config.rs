//! Flat `key = value` configuration file (TOML syntax) covering every
//! tunable. Missing keys take their defaults; unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gridmap::DEFAULT_CELL_SIZE;
use crate::phase1::Phase1Config;
use crate::pipeline::SmootherConfig;
use crate::prune_grips::PruneOriginalConfig;
use crate::prune_hs::{CandidateOrder, ExtraMode, PruneHsConfig};
use crate::steering::{RobotParams, SteerConfig, Steering, SteeringGains};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    // robot
    pub wheelbase: f64,
    pub v_max: f64,
    pub a_max: f64,
    pub gamma_max: f64,
    pub radius: f64,
    // controller
    pub k_rho: f64,
    pub k_alpha: f64,
    pub k_beta: f64,
    pub dt: f64,
    pub max_steps: usize,
    pub pos_tol: f64,
    pub ang_tol: f64,
    // first smoothing phase
    pub move_step: f64,
    pub move_discount: f64,
    pub move_rounds: usize,
    pub insert_min_distance: f64,
    pub insert_rounds: usize,
    // pruning
    pub max_prune_rounds: usize,
    pub horizon: usize,
    pub sample_max_offset: f64,
    pub sample_step: f64,
    pub extra_mode: ExtraMode,
    pub candidate_order: CandidateOrder,
    // maps and scenarios
    pub cell_size: f64,
    pub min_clearance: f64,
    pub min_separation: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config::from_smoother(&SmootherConfig::default())
    }
}

impl Config {
    fn from_smoother(s: &SmootherConfig) -> Self {
        let Steering { params, gains, cfg } = s.steering;
        Config {
            wheelbase: params.wheelbase,
            v_max: params.v_max,
            a_max: params.a_max,
            gamma_max: params.gamma_max,
            radius: params.radius,
            k_rho: gains.k_rho,
            k_alpha: gains.k_alpha,
            k_beta: gains.k_beta,
            dt: cfg.dt,
            max_steps: cfg.max_steps,
            pos_tol: cfg.pos_tol,
            ang_tol: cfg.ang_tol,
            move_step: s.phase1.step0,
            move_discount: s.phase1.discount,
            move_rounds: s.phase1.move_rounds,
            insert_min_distance: s.phase1.d_min,
            insert_rounds: s.phase1.insert_rounds,
            max_prune_rounds: s.prune_original.max_rounds,
            horizon: s.prune_hs.horizon,
            sample_max_offset: s.prune_hs.max_offset,
            sample_step: s.prune_hs.step,
            extra_mode: s.prune_hs.extra_mode,
            candidate_order: s.prune_hs.order,
            cell_size: DEFAULT_CELL_SIZE,
            min_clearance: 10.0,
            min_separation: 10.0,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Config::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("flat config always serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cell_size > 0.0 && self.cell_size.is_finite()) {
            return Err(Error::Config("cell_size must be positive".into()));
        }
        if !(self.min_clearance >= 0.0 && self.min_separation >= 0.0) {
            return Err(Error::Config("min_clearance and min_separation must be non-negative".into()));
        }
        self.smoother().validate()
    }

    pub fn smoother(&self) -> SmootherConfig {
        SmootherConfig {
            steering: Steering {
                params: RobotParams {
                    wheelbase: self.wheelbase,
                    v_max: self.v_max,
                    a_max: self.a_max,
                    gamma_max: self.gamma_max,
                    radius: self.radius,
                },
                gains: SteeringGains {
                    k_rho: self.k_rho,
                    k_alpha: self.k_alpha,
                    k_beta: self.k_beta,
                },
                cfg: SteerConfig {
                    dt: self.dt,
                    max_steps: self.max_steps,
                    pos_tol: self.pos_tol,
                    ang_tol: self.ang_tol,
                },
            },
            phase1: Phase1Config {
                step0: self.move_step,
                discount: self.move_discount,
                move_rounds: self.move_rounds,
                d_min: self.insert_min_distance,
                insert_rounds: self.insert_rounds,
            },
            prune_original: PruneOriginalConfig {
                max_rounds: self.max_prune_rounds,
            },
            prune_hs: PruneHsConfig {
                horizon: self.horizon,
                max_offset: self.sample_max_offset,
                step: self.sample_step,
                extra_mode: self.extra_mode,
                order: self.candidate_order,
            },
        }
    }
}

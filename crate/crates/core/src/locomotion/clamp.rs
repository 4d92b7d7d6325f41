//! Series-elastic clamping force budget for pipe climbing.
//!
//! A three-module climber braces inside a pipe by deflecting its two SEA
//! joints so the end modules press against the wall. Friction at the two
//! contact patches must carry the robot's weight; from that, the required
//! normal force, joint torques and SEA deflections follow.

use crate::design::DesignParams;
use crate::locomotion::{Connector, RobotAssembly};
use crate::{Error, Result};

/// Physical constants and limits for the clamp budget.
#[derive(Debug, Clone, Copy)]
pub struct ClampConfig {
    /// Friction coefficient between lug and pipe wall.
    pub friction: f64,
    /// Gravitational acceleration (m/s^2).
    pub gravity: f64,
    /// Largest SEA deflection that still braces the body (rad).
    pub max_deflection: f64,
    /// Lever arm from the SEA joint to the wall contact (m). `None` uses
    /// half the module length.
    pub lever_arm: Option<f64>,
}

impl Default for ClampConfig {
    fn default() -> Self {
        ClampConfig {
            friction: 0.5,
            gravity: 9.81,
            max_deflection: 45f64.to_radians(),
            lever_arm: None,
        }
    }
}

/// Required state of one SEA joint.
#[derive(Debug, Clone, Copy)]
pub struct SeaSetting {
    /// Torque the joint must hold (N·m).
    pub torque: f64,
    /// Deflection from rest producing that torque (rad).
    pub deflection: f64,
}

/// Full clamp budget for a pipe climber.
#[derive(Debug, Clone)]
pub struct SeaClampPlan {
    /// Total wall normal force summed over both contacts (N).
    pub total_normal_force: f64,
    pub settings: Vec<SeaSetting>,
    /// Smallest stiffness that keeps every deflection within the limit
    /// (N·m/rad).
    pub min_stiffness: f64,
}

fn pipe_span(params: &DesignParams, config: &ClampConfig) -> (f64, f64) {
    let reach = 2.0 * params.module_length * config.max_deflection.sin();
    (params.module_diameter, params.module_diameter + reach)
}

/// Budget the SEA torques needed to hold a climber of this mass in a
/// vertical pipe.
///
/// Static friction at two contacts supports the weight:
/// `N_total = m·g / (2·mu)`. Each SEA presses one contact with half that
/// force through its lever arm.
pub fn sea_clamp(
    assembly: &RobotAssembly,
    pipe_diameter: f64,
    config: &ClampConfig,
) -> Result<SeaClampPlan> {
    assembly.validate()?;
    if config.friction <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "friction coefficient must be positive, got {}",
            config.friction
        )));
    }
    let params = &assembly.modules[0];
    let (min_fit, max_fit) = pipe_span(params, config);
    if pipe_diameter <= min_fit {
        return Err(Error::PipeFit {
            pipe_m: pipe_diameter,
            reason: format!("narrower than the module body ({min_fit} m)"),
        });
    }
    if pipe_diameter > max_fit {
        return Err(Error::PipeFit {
            pipe_m: pipe_diameter,
            reason: format!("wider than the braced reach ({max_fit} m)"),
        });
    }

    let lever = config
        .lever_arm
        .unwrap_or(params.module_length / 2.0);
    let total_normal = assembly.total_mass() * config.gravity / (2.0 * config.friction);
    let torque = (total_normal / 2.0) * lever;

    let mut settings = Vec::new();
    let mut min_stiffness = 0.0f64;
    for connector in &assembly.connectors {
        if let Connector::Sea { stiffness, .. } = connector {
            if *stiffness <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "sea stiffness must be positive, got {stiffness}"
                )));
            }
            let deflection = torque / stiffness;
            if deflection > config.max_deflection {
                return Err(Error::JointLimit {
                    axis: "sea",
                    angle_rad: deflection,
                    limit_rad: config.max_deflection,
                });
            }
            settings.push(SeaSetting { torque, deflection });
            min_stiffness = min_stiffness.max(torque / config.max_deflection);
        }
    }
    if settings.is_empty() {
        return Err(Error::InvalidArgument(
            "assembly has no series-elastic joints to clamp with".to_string(),
        ));
    }
    Ok(SeaClampPlan {
        total_normal_force: total_normal,
        settings,
        min_stiffness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn climber(stiffness: f64) -> RobotAssembly {
        RobotAssembly::pipe_climber(DesignParams::default(), stiffness).unwrap()
    }

    #[test]
    fn normal_force_budget() {
        let cfg = ClampConfig::default();
        let plan = sea_clamp(&climber(5.0), 0.15, &cfg).unwrap();
        // 0.96 kg * 9.81 / (2 * 0.5)
        assert_abs_diff_eq!(plan.total_normal_force, 9.41760, epsilon = 1e-9);
        assert_eq!(plan.settings.len(), 2);
        // Half the normal force through a 0.12 m lever.
        assert_abs_diff_eq!(plan.settings[0].torque, 9.4176 / 2.0 * 0.12, epsilon = 1e-12);
        assert_abs_diff_eq!(
            plan.settings[0].deflection,
            plan.settings[0].torque / 5.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            plan.min_stiffness,
            plan.settings[0].torque / cfg.max_deflection,
            epsilon = 1e-12
        );
    }

    #[test]
    fn weightless_needs_no_clamp() {
        let cfg = ClampConfig {
            gravity: 0.0,
            ..ClampConfig::default()
        };
        let plan = sea_clamp(&climber(5.0), 0.15, &cfg).unwrap();
        assert_eq!(plan.total_normal_force, 0.0);
        assert_eq!(plan.settings[0].deflection, 0.0);
        assert_eq!(plan.min_stiffness, 0.0);
    }

    #[test]
    fn pipe_fit_bounds() {
        let cfg = ClampConfig::default();
        // Narrower than the module body.
        assert!(matches!(
            sea_clamp(&climber(5.0), 0.05, &cfg),
            Err(Error::PipeFit { .. })
        ));
        // Beyond the braced reach: 0.06 + 2*0.24*sin(45 deg) = 0.399...
        assert!(matches!(
            sea_clamp(&climber(5.0), 0.45, &cfg),
            Err(Error::PipeFit { .. })
        ));
        assert!(sea_clamp(&climber(5.0), 0.39, &cfg).is_ok());
    }

    #[test]
    fn soft_joint_hits_deflection_limit() {
        let cfg = ClampConfig::default();
        // Required torque 0.565 N·m; stiffness 0.5 would need > 1 rad.
        assert!(matches!(
            sea_clamp(&climber(0.5), 0.15, &cfg),
            Err(Error::JointLimit { .. })
        ));
    }
}

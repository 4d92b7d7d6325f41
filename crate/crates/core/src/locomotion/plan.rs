//! Rule-based locomotion planner.
//!
//! Maps a robot assembly plus an environment descriptor to an ordered list
//! of motion primitives. The rules are deliberately shallow — shape the
//! body to the scene, retension the chains, then drive.

use crate::bend::yaw_path;
use crate::locomotion::{
    ik_bend, sea_clamp, AssemblyKind, ClampConfig, Connector, EnvironmentDescriptor,
    MotionPrimitive, RobotAssembly,
};
use crate::{Error, Result};

/// Tunables of the planner.
#[derive(Debug, Clone)]
pub struct PlanConfig {
    /// Forward crawl speed commanded at the end of a plan (m/s).
    pub crawl_speed: f64,
    /// Sideways roll speed (m/s).
    pub roll_speed: f64,
    /// Leg swing amplitude for quadruped gaits (rad).
    pub leg_swing: f64,
    /// Leg stride length for quadruped gaits (m).
    pub leg_stride: f64,
    /// Clamp budget used in pipes.
    pub clamp: ClampConfig,
}

impl Default for PlanConfig {
    fn default() -> Self {
        PlanConfig {
            crawl_speed: 0.05,
            roll_speed: 0.03,
            leg_swing: 20f64.to_radians(),
            leg_stride: 0.04,
            clamp: ClampConfig::default(),
        }
    }
}

/// Height of a quadruped body standing on its legs.
pub fn standing_height(assembly: &RobotAssembly) -> f64 {
    let p = &assembly.modules[0];
    p.module_length + p.module_diameter / 2.0
}

/// Tension adjustments matching a commanded bend on every module.
fn retension(
    assembly: &RobotAssembly,
    bends: &[(f64, f64)],
    out: &mut Vec<MotionPrimitive>,
) -> Result<()> {
    for (i, (_, phi)) in bends.iter().enumerate() {
        let params = &assembly.modules[i];
        let yaw = yaw_path(params, *phi, params.plate_separation)?;
        out.push(MotionPrimitive::AdjustChainTension {
            module: i,
            slider_travel: yaw.delta_y,
        });
    }
    Ok(())
}

/// Signed path curvature of the terrain under module `i`, from a second
/// difference of heights sampled half a module apart along the body line.
fn terrain_curvature(env: &EnvironmentDescriptor, x0: f64, step: f64) -> f64 {
    let h0 = env.height_at(x0, 0.0);
    let h1 = env.height_at(x0 + step, 0.0);
    let h2 = env.height_at(x0 + 2.0 * step, 0.0);
    let second = (h0 - 2.0 * h1 + h2) / (step * step);
    let slope = (h2 - h0) / (2.0 * step);
    second / (1.0 + slope * slope).powf(1.5)
}

fn unsupported(assembly: &RobotAssembly, env: &EnvironmentDescriptor) -> Error {
    Error::UnsupportedPlan {
        robot: assembly.kind.to_string(),
        env: env.name().to_string(),
    }
}

/// Produce a primitive sequence for this robot in this environment.
pub fn plan(
    assembly: &RobotAssembly,
    env: &EnvironmentDescriptor,
    config: &PlanConfig,
) -> Result<Vec<MotionPrimitive>> {
    assembly.validate()?;
    env.validate()?;
    let mut out = Vec::new();

    match (assembly.kind, env) {
        (AssemblyKind::Snake, EnvironmentDescriptor::FlatTerrain) => {
            out.push(MotionPrimitive::Crawl {
                speed: config.crawl_speed,
            });
        }
        (AssemblyKind::Snake, EnvironmentDescriptor::UnevenTerrain3D { .. }) => {
            // Bend each module to the local ground curvature, retension,
            // then crawl.
            let mut bends = Vec::new();
            for (i, params) in assembly.modules.iter().enumerate() {
                let x0 = i as f64 * params.module_length;
                let kappa = terrain_curvature(env, x0, params.module_length / 2.0);
                let plane = if kappa >= 0.0 { 0.0 } else { std::f64::consts::PI };
                let sol = ik_bend(params, kappa.abs(), plane)?;
                out.push(MotionPrimitive::SetBend {
                    module: i,
                    theta: sol.bend.theta,
                    phi: sol.bend.phi,
                });
                bends.push((sol.bend.theta, sol.bend.phi));
            }
            retension(assembly, &bends, &mut out)?;
            out.push(MotionPrimitive::Crawl {
                speed: config.crawl_speed,
            });
        }
        (AssemblyKind::Snake, EnvironmentDescriptor::ObstacleField { obstacles }) => {
            // Comply with the tightest obstacle and roll sideways around it.
            let kappa = obstacles
                .iter()
                .map(|o| 1.0 / o.curvature_radius)
                .fold(0.0f64, f64::max);
            let mut bends = Vec::new();
            for (i, params) in assembly.modules.iter().enumerate() {
                let sol = ik_bend(params, kappa, std::f64::consts::FRAC_PI_2)?;
                out.push(MotionPrimitive::SetBend {
                    module: i,
                    theta: sol.bend.theta,
                    phi: sol.bend.phi,
                });
                bends.push((sol.bend.theta, sol.bend.phi));
            }
            retension(assembly, &bends, &mut out)?;
            out.push(MotionPrimitive::SidewaysRoll {
                speed: config.roll_speed,
            });
        }
        (AssemblyKind::PipeClimber, EnvironmentDescriptor::Pipe { diameter, bends }) => {
            let budget = sea_clamp(assembly, *diameter, &config.clamp)?;
            for (joint, connector) in assembly.connectors.iter().enumerate() {
                let current = match connector {
                    Connector::Sea { stiffness, .. } => *stiffness,
                    Connector::Rigid => 0.0,
                };
                out.push(MotionPrimitive::AdjustSeaStiffness {
                    joint,
                    stiffness: current.max(budget.min_stiffness),
                });
            }
            if let Some(bend) = bends.first() {
                // Roll the bend plane under the body, shape every module to
                // the elbow curvature, retension, then crawl through.
                out.push(MotionPrimitive::RollAlongPipe {
                    target_roll: bend.plane,
                });
                let kappa = 1.0 / bend.curvature_radius;
                let mut module_bends = Vec::new();
                for (i, params) in assembly.modules.iter().enumerate() {
                    let sol = ik_bend(params, kappa, 0.0)?;
                    out.push(MotionPrimitive::SetBend {
                        module: i,
                        theta: sol.bend.theta,
                        phi: sol.bend.phi,
                    });
                    module_bends.push((sol.bend.theta, sol.bend.phi));
                }
                retension(assembly, &module_bends, &mut out)?;
            }
            out.push(MotionPrimitive::Crawl {
                speed: config.crawl_speed,
            });
        }
        (AssemblyKind::Quadruped, EnvironmentDescriptor::Corridor { clearance }) => {
            if *clearance < standing_height(assembly) {
                // Too low to walk: fold into a crawler and slide through.
                out.push(MotionPrimitive::TransformToCrawler);
                out.push(MotionPrimitive::Crawl {
                    speed: config.crawl_speed,
                });
            } else {
                for leg in 0..4 {
                    out.push(MotionPrimitive::LeggedStep {
                        leg,
                        swing: config.leg_swing,
                        stride: config.leg_stride,
                    });
                }
            }
        }
        (AssemblyKind::Quadruped, EnvironmentDescriptor::FlatTerrain) => {
            for leg in 0..4 {
                out.push(MotionPrimitive::LeggedStep {
                    leg,
                    swing: config.leg_swing,
                    stride: config.leg_stride,
                });
            }
        }
        _ => return Err(unsupported(assembly, env)),
    }
    Ok(out)
}

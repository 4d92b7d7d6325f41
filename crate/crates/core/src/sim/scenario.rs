//! Scenario files: JSON schema and loading.
//!
//! Angles are degrees in the file and radians once loaded, matching the
//! design-file convention.

use serde::{Deserialize, Serialize};

use crate::design::{DesignParams, DesignParamsFile};
use crate::locomotion::{
    parse_plan, plan as auto_plan, EnvironmentDescriptor, MotionPrimitive, Obstacle, PipeBend,
    PlanConfig, RobotAssembly,
};
use crate::{Error, Result};

fn default_modules() -> usize {
    3
}

fn default_sea_stiffness() -> f64 {
    5.0
}

/// Robot section of a scenario file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotSpec {
    /// "snake", "pipe-climber" or "quadruped".
    pub kind: String,
    /// Module count; snakes only.
    #[serde(default = "default_modules")]
    pub modules: usize,
    /// SEA joint stiffness (N·m/rad); pipe climbers only.
    #[serde(default = "default_sea_stiffness")]
    pub sea_stiffness: f64,
}

impl RobotSpec {
    pub fn build(&self, params: DesignParams) -> Result<RobotAssembly> {
        match self.kind.as_str() {
            "snake" => RobotAssembly::snake(self.modules, params),
            "pipe-climber" => RobotAssembly::pipe_climber(params, self.sea_stiffness),
            "quadruped" => RobotAssembly::quadruped(params),
            other => Err(Error::InvalidArgument(format!(
                "unknown robot kind {other:?}; expected snake, pipe-climber or quadruped"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstacleFile {
    pub x_m: f64,
    pub y_m: f64,
    pub curvature_radius_m: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipeBendFile {
    pub angle_deg: f64,
    pub plane_deg: f64,
    pub curvature_radius_m: f64,
}

/// Environment section of a scenario file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum EnvFile {
    FlatTerrain,
    UnevenTerrain {
        heights: Vec<Vec<f64>>,
        cell_size_m: f64,
    },
    ObstacleField {
        obstacles: Vec<ObstacleFile>,
    },
    Pipe {
        diameter_m: f64,
        #[serde(default)]
        bends: Vec<PipeBendFile>,
    },
    Corridor {
        clearance_m: f64,
    },
}

impl From<EnvFile> for EnvironmentDescriptor {
    fn from(file: EnvFile) -> Self {
        match file {
            EnvFile::FlatTerrain => EnvironmentDescriptor::FlatTerrain,
            EnvFile::UnevenTerrain {
                heights,
                cell_size_m,
            } => EnvironmentDescriptor::UnevenTerrain3D {
                heights,
                cell_size: cell_size_m,
            },
            EnvFile::ObstacleField { obstacles } => EnvironmentDescriptor::ObstacleField {
                obstacles: obstacles
                    .into_iter()
                    .map(|o| Obstacle {
                        x: o.x_m,
                        y: o.y_m,
                        curvature_radius: o.curvature_radius_m,
                    })
                    .collect(),
            },
            EnvFile::Pipe { diameter_m, bends } => EnvironmentDescriptor::Pipe {
                diameter: diameter_m,
                bends: bends
                    .into_iter()
                    .map(|b| PipeBend {
                        angle: b.angle_deg.to_radians(),
                        plane: b.plane_deg.to_radians(),
                        curvature_radius: b.curvature_radius_m,
                    })
                    .collect(),
            },
            EnvFile::Corridor { clearance_m } => EnvironmentDescriptor::Corridor {
                clearance: clearance_m,
            },
        }
    }
}

/// Plan section: either the literal string `"auto"` or explicit primitive
/// lines in the text plan format.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlanSpec {
    Auto(String),
    Lines(Vec<String>),
}

fn default_joint_rate_deg() -> f64 {
    30.0
}

fn default_slider_rate() -> f64 {
    0.01
}

fn default_roll_rate_deg() -> f64 {
    30.0
}

fn default_stance_rate() -> f64 {
    0.05
}

/// On-disk scenario schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub robot: RobotSpec,
    pub env: EnvFile,
    pub plan: PlanSpec,
    pub tick_s: f64,
    pub duration_s: f64,
    #[serde(default)]
    pub seed: u64,
    /// Module parameters; Table-layout defaults when omitted.
    #[serde(default)]
    pub design: Option<DesignParamsFile>,
    #[serde(default = "default_joint_rate_deg")]
    pub joint_rate_deg_per_s: f64,
    #[serde(default = "default_slider_rate")]
    pub slider_rate_m_per_s: f64,
    #[serde(default = "default_roll_rate_deg")]
    pub roll_rate_deg_per_s: f64,
    #[serde(default = "default_stance_rate")]
    pub stance_rate_m_per_s: f64,
}

/// A fully resolved scenario ready to run.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub assembly: RobotAssembly,
    pub env: EnvironmentDescriptor,
    pub plan: Vec<MotionPrimitive>,
    pub tick: f64,
    pub duration: f64,
    pub seed: u64,
    /// Bend slew rate (rad/s).
    pub joint_rate: f64,
    /// Tensioner slider slew rate (m/s).
    pub slider_rate: f64,
    /// Body roll slew rate (rad/s).
    pub roll_rate: f64,
    /// Stance-height slew rate (m/s).
    pub stance_rate: f64,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text)?;
        Scenario::from_file(file)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Scenario::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn from_file(file: ScenarioFile) -> Result<Self> {
        if file.tick_s <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "tick must be positive, got {}",
                file.tick_s
            )));
        }
        if file.duration_s < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "duration must be non-negative, got {}",
                file.duration_s
            )));
        }
        if file.joint_rate_deg_per_s <= 0.0
            || file.slider_rate_m_per_s <= 0.0
            || file.roll_rate_deg_per_s <= 0.0
            || file.stance_rate_m_per_s <= 0.0
        {
            return Err(Error::InvalidArgument(
                "slew rates must be positive".to_string(),
            ));
        }
        let params: DesignParams = match file.design {
            Some(d) => d.into(),
            None => DesignParams::default(),
        };
        let assembly = file.robot.build(params)?;
        let env: EnvironmentDescriptor = file.env.into();
        env.validate()?;
        let plan = match file.plan {
            PlanSpec::Auto(ref word) if word == "auto" => {
                auto_plan(&assembly, &env, &PlanConfig::default())?
            }
            PlanSpec::Auto(other) => {
                return Err(Error::InvalidArgument(format!(
                    "plan must be \"auto\" or a list of primitive lines, got {other:?}"
                )))
            }
            PlanSpec::Lines(lines) => parse_plan(&lines.join("\n"))?,
        };
        Ok(Scenario {
            assembly,
            env,
            plan,
            tick: file.tick_s,
            duration: file.duration_s,
            seed: file.seed,
            joint_rate: file.joint_rate_deg_per_s.to_radians(),
            slider_rate: file.slider_rate_m_per_s,
            roll_rate: file.roll_rate_deg_per_s.to_radians(),
            stance_rate: file.stance_rate_m_per_s,
        })
    }
}

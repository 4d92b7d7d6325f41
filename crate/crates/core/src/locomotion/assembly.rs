//! Robot assemblies built from crawler modules and environment descriptors.

use crate::design::DesignParams;
use crate::{Error, Result};

/// Connector between adjacent modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Connector {
    /// Rigid link, no relative motion.
    Rigid,
    /// Series-elastic joint: stiffness (N·m/rad) and rest angle (rad).
    Sea { stiffness: f64, rest_angle: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssemblyKind {
    Snake,
    PipeClimber,
    Quadruped,
}

impl std::fmt::Display for AssemblyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AssemblyKind::Snake => "snake",
            AssemblyKind::PipeClimber => "pipe-climber",
            AssemblyKind::Quadruped => "quadruped",
        })
    }
}

/// A kinematic arrangement of modules and connectors.
///
/// Snakes and pipe climbers are serial chains (`connectors.len() ==
/// modules.len() - 1`); a quadruped is a body with four leg modules, each
/// connector being the hip mount of the same-index leg.
#[derive(Debug, Clone, PartialEq)]
pub struct RobotAssembly {
    pub kind: AssemblyKind,
    pub modules: Vec<DesignParams>,
    pub connectors: Vec<Connector>,
}

impl RobotAssembly {
    /// Serial chain of `n` identical modules with rigid links.
    pub fn snake(n: usize, params: DesignParams) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "snake needs at least one module".to_string(),
            ));
        }
        Ok(RobotAssembly {
            kind: AssemblyKind::Snake,
            modules: vec![params; n],
            connectors: vec![Connector::Rigid; n - 1],
        })
    }

    /// Three modules joined by two series-elastic joints.
    pub fn pipe_climber(params: DesignParams, sea_stiffness: f64) -> Result<Self> {
        if sea_stiffness <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "sea stiffness must be positive, got {sea_stiffness}"
            )));
        }
        Ok(RobotAssembly {
            kind: AssemblyKind::PipeClimber,
            modules: vec![params; 3],
            connectors: vec![
                Connector::Sea {
                    stiffness: sea_stiffness,
                    rest_angle: 0.0,
                };
                2
            ],
        })
    }

    /// Body with four leg modules on rigid hip mounts.
    pub fn quadruped(params: DesignParams) -> Result<Self> {
        Ok(RobotAssembly {
            kind: AssemblyKind::Quadruped,
            modules: vec![params; 4],
            connectors: vec![Connector::Rigid; 4],
        })
    }

    /// Structural invariants for each assembly kind.
    pub fn validate(&self) -> Result<()> {
        let ok = match self.kind {
            AssemblyKind::Snake => {
                !self.modules.is_empty() && self.connectors.len() == self.modules.len() - 1
            }
            AssemblyKind::PipeClimber => {
                self.modules.len() == 3
                    && self.connectors.len() == 2
                    && self
                        .connectors
                        .iter()
                        .all(|c| matches!(c, Connector::Sea { .. }))
            }
            AssemblyKind::Quadruped => self.modules.len() == 4 && self.connectors.len() == 4,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "malformed {} assembly: {} modules, {} connectors",
                self.kind,
                self.modules.len(),
                self.connectors.len()
            )))
        }
    }

    pub fn total_mass(&self) -> f64 {
        self.modules.iter().map(|m| m.module_mass).sum()
    }
}

/// Obstacle with a pose and a curvature radius the body can comply with.
#[derive(Debug, Clone, PartialEq)]
pub struct Obstacle {
    pub x: f64,
    pub y: f64,
    pub curvature_radius: f64,
}

/// One bend along a pipe run.
#[derive(Debug, Clone, PartialEq)]
pub struct PipeBend {
    /// Turn angle (rad).
    pub angle: f64,
    /// Orientation of the bend plane about the pipe axis (rad).
    pub plane: f64,
    /// Centreline curvature radius (m).
    pub curvature_radius: f64,
}

/// Minimal scene description consumed by the planner and simulator.
#[derive(Debug, Clone, PartialEq)]
pub enum EnvironmentDescriptor {
    FlatTerrain,
    /// Height samples on a square grid, row-major, `cell_size` metres apart.
    UnevenTerrain3D {
        heights: Vec<Vec<f64>>,
        cell_size: f64,
    },
    ObstacleField { obstacles: Vec<Obstacle> },
    Pipe {
        diameter: f64,
        bends: Vec<PipeBend>,
    },
    Corridor { clearance: f64 },
}

impl EnvironmentDescriptor {
    pub fn name(&self) -> &'static str {
        match self {
            EnvironmentDescriptor::FlatTerrain => "flat-terrain",
            EnvironmentDescriptor::UnevenTerrain3D { .. } => "uneven-terrain",
            EnvironmentDescriptor::ObstacleField { .. } => "obstacle-field",
            EnvironmentDescriptor::Pipe { .. } => "pipe",
            EnvironmentDescriptor::Corridor { .. } => "corridor",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            EnvironmentDescriptor::FlatTerrain => Ok(()),
            EnvironmentDescriptor::UnevenTerrain3D { heights, cell_size } => {
                if *cell_size <= 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "terrain cell_size must be positive, got {cell_size}"
                    )));
                }
                if heights.is_empty() || heights[0].is_empty() {
                    return Err(Error::InvalidArgument(
                        "terrain height grid is empty".to_string(),
                    ));
                }
                let w = heights[0].len();
                if heights.iter().any(|row| row.len() != w) {
                    return Err(Error::InvalidArgument(
                        "terrain height grid is ragged".to_string(),
                    ));
                }
                Ok(())
            }
            EnvironmentDescriptor::ObstacleField { obstacles } => {
                if obstacles.iter().any(|o| o.curvature_radius <= 0.0) {
                    return Err(Error::InvalidArgument(
                        "obstacle curvature radius must be positive".to_string(),
                    ));
                }
                Ok(())
            }
            EnvironmentDescriptor::Pipe { diameter, bends } => {
                if *diameter <= 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "pipe diameter must be positive, got {diameter}"
                    )));
                }
                if bends.iter().any(|b| b.curvature_radius <= 0.0) {
                    return Err(Error::InvalidArgument(
                        "pipe bend curvature radius must be positive".to_string(),
                    ));
                }
                Ok(())
            }
            EnvironmentDescriptor::Corridor { clearance } => {
                if *clearance <= 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "corridor clearance must be positive, got {clearance}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Terrain height under `(x, y)` with bilinear interpolation; zero on
    /// flat ground and outside the sampled patch.
    pub fn height_at(&self, x: f64, y: f64) -> f64 {
        match self {
            EnvironmentDescriptor::UnevenTerrain3D { heights, cell_size } => {
                let rows = heights.len();
                let cols = heights[0].len();
                let fx = (x / cell_size).clamp(0.0, (cols - 1) as f64);
                let fy = (y / cell_size).clamp(0.0, (rows - 1) as f64);
                let i0 = fy.floor() as usize;
                let j0 = fx.floor() as usize;
                let i1 = (i0 + 1).min(rows - 1);
                let j1 = (j0 + 1).min(cols - 1);
                let tx = fx - j0 as f64;
                let ty = fy - i0 as f64;
                let top = heights[i0][j0] * (1.0 - tx) + heights[i0][j1] * tx;
                let bot = heights[i1][j0] * (1.0 - tx) + heights[i1][j1] * tx;
                top * (1.0 - ty) + bot * ty
            }
            _ => 0.0,
        }
    }
}

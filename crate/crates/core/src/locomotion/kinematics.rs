//! Forward kinematics of module assemblies and the simplified bend IK.

use nalgebra::{Isometry3, Translation3, UnitQuaternion, Vector3};

use crate::bend::BendState;
use crate::design::{check_joint_limits, DesignParams};
use crate::locomotion::{AssemblyKind, Connector, RobotAssembly};
use crate::{Error, Result};

/// Joint state of a whole assembly.
///
/// `module_bends` hold the module-level bend, which is split equally across
/// the two same-axis joints inside the module. `connector_angles` are SEA
/// deflections (serial chains) or hip pitch angles (quadruped legs), both
/// about the local Y axis; rigid serial connectors ignore their entry.
#[derive(Debug, Clone, PartialEq)]
pub struct AssemblyState {
    pub module_bends: Vec<BendState>,
    pub connector_angles: Vec<f64>,
}

impl AssemblyState {
    /// All-zero state matching the assembly's layout.
    pub fn neutral(assembly: &RobotAssembly) -> Self {
        AssemblyState {
            module_bends: vec![BendState::default(); assembly.modules.len()],
            connector_angles: vec![0.0; assembly.connectors.len()],
        }
    }
}

/// Base, mid-plate and tip frames of one module.
#[derive(Debug, Clone)]
pub struct ModuleFrames {
    pub base: Isometry3<f64>,
    pub mid: Isometry3<f64>,
    pub tip: Isometry3<f64>,
}

fn trans_x(x: f64) -> Isometry3<f64> {
    Translation3::new(x, 0.0, 0.0).into()
}

fn rot_y(a: f64) -> Isometry3<f64> {
    Isometry3::from_parts(
        Translation3::identity(),
        UnitQuaternion::from_axis_angle(&Vector3::y_axis(), a),
    )
}

fn rot_z(a: f64) -> Isometry3<f64> {
    Isometry3::from_parts(
        Translation3::identity(),
        UnitQuaternion::from_axis_angle(&Vector3::z_axis(), a),
    )
}

/// Mid and tip transforms of one module relative to its base.
///
/// The joint stack is: base plate, yaw joint, offset, pitch joint, mid
/// plate, pitch joint, offset, yaw joint, tip plate; the module bend is
/// shared equally by the two same-axis joints.
pub fn module_transform(params: &DesignParams, bend: BendState) -> (Isometry3<f64>, Isometry3<f64>) {
    let q = params.module_length / 4.0;
    let half_pitch = rot_y(bend.theta / 2.0);
    let half_yaw = rot_z(bend.phi / 2.0);
    let mid = trans_x(q) * half_yaw * half_pitch * trans_x(q);
    let tip = mid * trans_x(q) * half_pitch * half_yaw * trans_x(q);
    (mid, tip)
}

/// Compose all module and connector transforms into world frames.
///
/// Serial chains return the modules in order from the base; a quadruped
/// returns its four legs, each mounted on a hip offset from the body frame.
pub fn forward_kinematics(
    assembly: &RobotAssembly,
    state: &AssemblyState,
) -> Result<Vec<ModuleFrames>> {
    assembly.validate()?;
    if state.module_bends.len() != assembly.modules.len()
        || state.connector_angles.len() != assembly.connectors.len()
    {
        return Err(Error::InvalidArgument(format!(
            "state shape mismatch: {} bends for {} modules, {} connector angles for {} connectors",
            state.module_bends.len(),
            assembly.modules.len(),
            state.connector_angles.len(),
            assembly.connectors.len()
        )));
    }
    for (params, bend) in assembly.modules.iter().zip(&state.module_bends) {
        check_joint_limits(params, bend.theta, bend.phi)?;
    }

    match assembly.kind {
        AssemblyKind::Snake | AssemblyKind::PipeClimber => {
            let mut frames = Vec::with_capacity(assembly.modules.len());
            let mut cursor = Isometry3::identity();
            for (i, (params, bend)) in assembly
                .modules
                .iter()
                .zip(&state.module_bends)
                .enumerate()
            {
                let (mid, tip) = module_transform(params, *bend);
                frames.push(ModuleFrames {
                    base: cursor,
                    mid: cursor * mid,
                    tip: cursor * tip,
                });
                cursor *= tip;
                if i < assembly.connectors.len() {
                    cursor *= match &assembly.connectors[i] {
                        Connector::Rigid => Isometry3::identity(),
                        Connector::Sea { rest_angle, .. } => {
                            rot_y(rest_angle + state.connector_angles[i])
                        }
                    };
                }
            }
            Ok(frames)
        }
        AssemblyKind::Quadruped => {
            // Hip mounts at the body corners; legs hang by the hip pitch.
            let params = &assembly.modules[0];
            let hx = params.module_length / 2.0;
            let hy = params.module_length / 2.0;
            let mounts = [
                (hx, hy),
                (hx, -hy),
                (-hx, hy),
                (-hx, -hy),
            ];
            let mut frames = Vec::with_capacity(4);
            for (leg, (mx, my)) in mounts.iter().enumerate() {
                let hip = Isometry3::from(Translation3::new(*mx, *my, 0.0))
                    * rot_y(state.connector_angles[leg]);
                let (mid, tip) = module_transform(
                    &assembly.modules[leg],
                    state.module_bends[leg],
                );
                frames.push(ModuleFrames {
                    base: hip,
                    mid: hip * mid,
                    tip: hip * tip,
                });
            }
            Ok(frames)
        }
    }
}

/// Result of the planar-arc bend IK.
#[derive(Debug, Clone, Copy)]
pub struct IkSolution {
    pub bend: BendState,
    /// True when either axis hit its joint limit.
    pub saturated: bool,
}

/// Decompose a target path curvature into module pitch/yaw bend angles.
///
/// The required bend over one module is `psi = curvature * module_length`,
/// split onto the axes by the bend-plane angle and clamped to the joint
/// limits. Clamping is reported, not an error.
pub fn ik_bend(params: &DesignParams, target_curvature: f64, bend_plane: f64) -> Result<IkSolution> {
    if target_curvature < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "curvature must be non-negative, got {target_curvature}"
        )));
    }
    let psi = target_curvature * params.module_length;
    let theta = psi * bend_plane.cos();
    let phi = psi * bend_plane.sin();
    let theta_c = theta.clamp(-params.joint_limit_pitch, params.joint_limit_pitch);
    let phi_c = phi.clamp(-params.joint_limit_yaw, params.joint_limit_yaw);
    Ok(IkSolution {
        bend: BendState::new(theta_c, phi_c),
        saturated: theta_c != theta || phi_c != phi,
    })
}

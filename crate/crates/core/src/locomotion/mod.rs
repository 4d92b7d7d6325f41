//! Motion primitives, locomotion modes, planner and assembly kinematics.

mod assembly;
mod clamp;
mod kinematics;
mod plan;
mod primitives;

pub use assembly::{
    AssemblyKind, Connector, EnvironmentDescriptor, Obstacle, PipeBend, RobotAssembly,
};
pub use clamp::{sea_clamp, ClampConfig, SeaClampPlan, SeaSetting};
pub use kinematics::{
    forward_kinematics, ik_bend, module_transform, AssemblyState, IkSolution, ModuleFrames,
};
pub use plan::{plan, standing_height, PlanConfig};
pub use primitives::{
    parse_plan, plan_to_text, LocomotionMode, MotionPrimitive, PrimitiveKind,
};

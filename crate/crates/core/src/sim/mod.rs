//! Scenario-driven kinematic simulator.
//!
//! Velocity-level integration only: primitives either latch a target that
//! the state slews toward at a fixed rate (bends, sliders, roll, stance) or
//! displace the body frame (crawl, roll, steps). Constraint breaches are
//! recorded as per-tick flags, never silently dropped; aborting on them is
//! the caller's policy.

mod scenario;

pub use scenario::{
    EnvFile, ObstacleFile, PipeBendFile, PlanSpec, RobotSpec, Scenario, ScenarioFile,
};

use crate::bend::{pitch_path, yaw_path, BendState, DEFAULT_TRAVEL_LIMIT};
use crate::design::{check_joint_limits, lug_separation_at};
use crate::locomotion::{standing_height, EnvironmentDescriptor, MotionPrimitive, RobotAssembly};
use crate::{Error, Result};

/// Tolerance on the tensioner closure residual (m).
pub const TENSION_TOLERANCE: f64 = 1e-3;

/// Per-module sample in a trace record.
#[derive(Debug, Clone, Copy)]
pub struct ModuleRecord {
    pub theta: f64,
    pub phi: f64,
    pub slider: f64,
    /// Chain loop slack the tensioner must absorb at this bend (m).
    pub loop_delta: f64,
}

/// One tick of simulation output.
#[derive(Debug, Clone)]
pub struct TickRecord {
    pub time: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub heading: f64,
    pub roll: f64,
    /// Body height over the ground contact (m).
    pub stance: f64,
    pub modules: Vec<ModuleRecord>,
    pub flags: Vec<String>,
}

/// Full simulation output.
#[derive(Debug, Clone)]
pub struct SimTrace {
    pub records: Vec<TickRecord>,
    /// Path length integrated over ticks (m).
    pub distance: f64,
}

/// End-of-run digest.
#[derive(Debug, Clone)]
pub struct Summary {
    pub ticks: usize,
    pub distance: f64,
    pub final_x: f64,
    pub final_y: f64,
    pub final_z: f64,
    pub final_heading: f64,
    pub flagged_ticks: usize,
    pub flag_total: usize,
}

impl SimTrace {
    pub fn has_flags(&self) -> bool {
        self.records.iter().any(|r| !r.flags.is_empty())
    }

    pub fn summary(&self) -> Summary {
        let last = self.records.last();
        Summary {
            ticks: self.records.len(),
            distance: self.distance,
            final_x: last.map_or(0.0, |r| r.x),
            final_y: last.map_or(0.0, |r| r.y),
            final_z: last.map_or(0.0, |r| r.z),
            final_heading: last.map_or(0.0, |r| r.heading),
            flagged_ticks: self.records.iter().filter(|r| !r.flags.is_empty()).count(),
            flag_total: self.records.iter().map(|r| r.flags.len()).sum(),
        }
    }

    /// Render the trace as CSV. The schema is fixed:
    /// `time_s,x_m,y_m,z_m,heading_deg,roll_deg,stance_m` followed by
    /// `m{i}_theta_deg,m{i}_phi_deg,m{i}_slider_m,m{i}_loop_delta_m` per
    /// module and a final `flags` column (`|`-separated, empty when clear).
    /// Output is byte-stable for identical traces.
    pub fn to_csv(&self, module_count: usize) -> String {
        let mut out = String::from("time_s,x_m,y_m,z_m,heading_deg,roll_deg,stance_m");
        for i in 0..module_count {
            out.push_str(&format!(
                ",m{i}_theta_deg,m{i}_phi_deg,m{i}_slider_m,m{i}_loop_delta_m"
            ));
        }
        out.push_str(",flags\n");
        for r in &self.records {
            out.push_str(&format!(
                "{:.3},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
                r.time,
                r.x,
                r.y,
                r.z,
                r.heading.to_degrees(),
                r.roll.to_degrees(),
                r.stance
            ));
            for m in &r.modules {
                out.push_str(&format!(
                    ",{:.6},{:.6},{:.6},{:.6}",
                    m.theta.to_degrees(),
                    m.phi.to_degrees(),
                    m.slider,
                    m.loop_delta
                ));
            }
            out.push(',');
            out.push_str(&r.flags.join("|"));
            out.push('\n');
        }
        out
    }
}

/// Chain loop slack produced by a yaw bend, on the elongating side (m).
pub fn loop_delta(params: &crate::design::DesignParams, phi: f64) -> f64 {
    match yaw_path(params, phi, params.plate_separation) {
        Ok(report) => 2.0 * report.delta_y,
        Err(_) => f64::NAN,
    }
}

/// Re-derive the constraint flags for one tick from recorded state.
///
/// Every flag is a pure predicate of module bends, slider positions and
/// stance height, so flags on a trace can be reproduced exactly.
pub fn check_constraints(
    assembly: &RobotAssembly,
    env: &EnvironmentDescriptor,
    modules: &[(BendState, f64)],
    stance: f64,
) -> Vec<String> {
    let mut flags = Vec::new();
    for (i, ((bend, slider), params)) in modules.iter().zip(&assembly.modules).enumerate() {
        if check_joint_limits(params, bend.theta, bend.phi).is_err() {
            flags.push(format!("m{i}:joint_limit"));
        }
        let (_, _, required) = lug_separation_at(params, bend.theta, bend.phi);
        if params.inter_lug_separation + 1e-12 < required {
            flags.push(format!("m{i}:lug_interference"));
        }
        match pitch_path(params, bend.theta) {
            Ok(report) if report.domain_valid => {}
            _ => flags.push(format!("m{i}:pitch_domain_invalid")),
        }
        let delta = loop_delta(params, bend.phi);
        if !delta.is_finite() || (delta - 2.0 * slider).abs() > TENSION_TOLERANCE {
            flags.push(format!("m{i}:tension_error"));
        }
    }
    if let EnvironmentDescriptor::Corridor { clearance } = env {
        if stance > *clearance {
            flags.push("corridor_clearance".to_string());
        }
    }
    flags
}

struct ModuleSim {
    bend: BendState,
    target: BendState,
    slider: f64,
    slider_target: f64,
}

fn slew(current: f64, target: f64, max_step: f64) -> f64 {
    let delta = target - current;
    if delta.abs() <= max_step {
        target
    } else {
        current + max_step * delta.signum()
    }
}

/// Execute a scenario tick by tick.
///
/// Target-latching primitives (`SET_BEND`, `ADJUST_CHAIN_TENSION`,
/// `ADJUST_SEA_STIFFNESS`) complete immediately; the state slews toward the
/// latched targets in the background on every later tick. `ROLL_ALONG_PIPE`
/// and `TRANSFORM_TO_CRAWLER` complete when their slew arrives. Motion
/// primitives run for the rest of the scenario. Deterministic: equal
/// scenarios (seed included) give identical traces.
pub fn run(scenario: &Scenario) -> Result<SimTrace> {
    let assembly = &scenario.assembly;
    assembly.validate()?;
    let params0 = &assembly.modules[0];
    let crawler_stance = params0.module_diameter / 2.0;
    let standing = match assembly.kind {
        crate::locomotion::AssemblyKind::Quadruped => standing_height(assembly),
        _ => crawler_stance,
    };

    let mut modules: Vec<ModuleSim> = assembly
        .modules
        .iter()
        .map(|_| ModuleSim {
            bend: BendState::default(),
            target: BendState::default(),
            slider: 0.0,
            slider_target: 0.0,
        })
        .collect();
    let mut x = 0.0f64;
    let mut y = 0.0f64;
    let heading = 0.0f64;
    let mut roll = 0.0f64;
    let mut roll_target = 0.0f64;
    let mut stance = standing;
    let mut stance_target = standing;
    let mut plan_index = 0usize;
    let mut distance = 0.0f64;

    let ticks = ((scenario.duration / scenario.tick) + 1e-9).floor() as usize;
    let mut records = Vec::with_capacity(ticks);

    for k in 1..=ticks {
        let dt = scenario.tick;

        // Latch targets and find this tick's motion, if any.
        let mut motion: Option<&MotionPrimitive> = None;
        while plan_index < scenario.plan.len() {
            match &scenario.plan[plan_index] {
                MotionPrimitive::SetBend { module, theta, phi } => {
                    let m = modules.get_mut(*module).ok_or_else(|| {
                        Error::InvalidArgument(format!("SET_BEND module {module} out of range"))
                    })?;
                    check_joint_limits(&assembly.modules[*module], *theta, *phi)?;
                    m.target = BendState::new(*theta, *phi);
                    plan_index += 1;
                }
                MotionPrimitive::AdjustChainTension {
                    module,
                    slider_travel,
                } => {
                    let m = modules.get_mut(*module).ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "ADJUST_CHAIN_TENSION module {module} out of range"
                        ))
                    })?;
                    if slider_travel.abs() > DEFAULT_TRAVEL_LIMIT {
                        return Err(Error::TravelLimit {
                            travel_m: *slider_travel,
                            limit_m: DEFAULT_TRAVEL_LIMIT,
                        });
                    }
                    m.slider_target = *slider_travel;
                    plan_index += 1;
                }
                MotionPrimitive::AdjustSeaStiffness { joint, stiffness } => {
                    if *joint >= assembly.connectors.len() {
                        return Err(Error::InvalidArgument(format!(
                            "ADJUST_SEA_STIFFNESS joint {joint} out of range"
                        )));
                    }
                    if *stiffness <= 0.0 {
                        return Err(Error::InvalidArgument(format!(
                            "sea stiffness must be positive, got {stiffness}"
                        )));
                    }
                    // Stiffness changes are instantaneous and purely
                    // kinematic; nothing in the state slews.
                    plan_index += 1;
                }
                MotionPrimitive::RollAlongPipe { target_roll } => {
                    roll_target = *target_roll;
                    if roll == roll_target {
                        plan_index += 1;
                    } else {
                        break;
                    }
                }
                MotionPrimitive::TransformToCrawler => {
                    stance_target = crawler_stance;
                    if stance == stance_target {
                        plan_index += 1;
                    } else {
                        break;
                    }
                }
                prim => {
                    motion = Some(prim);
                    break;
                }
            }
        }

        // Displace the body frame with the pre-slew state (forward Euler).
        let yaw_sum: f64 = modules.iter().map(|m| m.bend.phi).sum();
        let eff = heading + yaw_sum;
        let (dx, dy) = match motion {
            Some(MotionPrimitive::Crawl { speed }) => {
                (speed * eff.cos() * dt, speed * eff.sin() * dt)
            }
            Some(MotionPrimitive::WheelDrive { speed }) => {
                (speed * heading.cos() * dt, speed * heading.sin() * dt)
            }
            Some(MotionPrimitive::SidewaysRoll { speed }) => {
                (-speed * eff.sin() * dt, speed * eff.cos() * dt)
            }
            Some(MotionPrimitive::LeggedStep { stride, .. }) => {
                // One step per tick, then move on in the plan.
                plan_index += 1;
                (stride * heading.cos(), stride * heading.sin())
            }
            _ => (0.0, 0.0),
        };
        x += dx;
        y += dy;
        distance += dx.hypot(dy);

        // Background slews toward latched targets.
        for m in &mut modules {
            m.bend.theta = slew(m.bend.theta, m.target.theta, scenario.joint_rate * dt);
            m.bend.phi = slew(m.bend.phi, m.target.phi, scenario.joint_rate * dt);
            m.slider = slew(m.slider, m.slider_target, scenario.slider_rate * dt);
        }
        roll = slew(roll, roll_target, scenario.roll_rate * dt);
        stance = slew(stance, stance_target, scenario.stance_rate * dt);

        // Ride the terrain.
        let z = scenario.env.height_at(x, y) + stance;

        let state: Vec<(BendState, f64)> =
            modules.iter().map(|m| (m.bend, m.slider)).collect();
        let flags = check_constraints(assembly, &scenario.env, &state, stance);
        records.push(TickRecord {
            time: k as f64 * dt,
            x,
            y,
            z,
            heading,
            roll,
            stance,
            modules: modules
                .iter()
                .zip(&assembly.modules)
                .map(|(m, p)| ModuleRecord {
                    theta: m.bend.theta,
                    phi: m.bend.phi,
                    slider: m.slider,
                    loop_delta: loop_delta(p, m.bend.phi),
                })
                .collect(),
            flags,
        });
    }

    Ok(SimTrace { records, distance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn scenario(json: &str) -> Scenario {
        Scenario::from_json(json).unwrap()
    }

    #[test]
    fn crawl_advances_uniformly() {
        let s = scenario(
            r#"{
            "robot": {"kind": "snake", "modules": 1},
            "env": {"type": "flat_terrain"},
            "plan": ["CRAWL speed=0.1"],
            "tick_s": 0.1,
            "duration_s": 0.1
        }"#,
        );
        let t = run(&s).unwrap();
        assert_eq!(t.records.len(), 1);
        assert_abs_diff_eq!(t.records[0].x, 0.01, epsilon = 1e-12);
        assert!(t.records[0].flags.is_empty());
    }

    #[test]
    fn set_bend_slews_at_joint_rate() {
        let s = scenario(
            r#"{
            "robot": {"kind": "snake", "modules": 1},
            "env": {"type": "flat_terrain"},
            "plan": ["SET_BEND module=0 theta_deg=32 phi_deg=0"],
            "tick_s": 1.0,
            "duration_s": 2.0,
            "joint_rate_deg_per_s": 16.0
        }"#,
        );
        let t = run(&s).unwrap();
        assert_abs_diff_eq!(
            t.records[0].modules[0].theta,
            16f64.to_radians(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            t.records[1].modules[0].theta,
            32f64.to_radians(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn zero_duration_gives_empty_trace() {
        let s = scenario(
            r#"{
            "robot": {"kind": "snake", "modules": 1},
            "env": {"type": "flat_terrain"},
            "plan": "auto",
            "tick_s": 0.1,
            "duration_s": 0.0
        }"#,
        );
        let t = run(&s).unwrap();
        assert!(t.records.is_empty());
        assert_eq!(t.summary().distance, 0.0);
    }

    #[test]
    fn untensioned_yaw_raises_tension_flag() {
        let s = scenario(
            r#"{
            "robot": {"kind": "snake", "modules": 1},
            "env": {"type": "flat_terrain"},
            "plan": ["SET_BEND module=0 theta_deg=0 phi_deg=32"],
            "tick_s": 1.0,
            "duration_s": 2.0,
            "joint_rate_deg_per_s": 16.0
        }"#,
        );
        let t = run(&s).unwrap();
        let last = t.records.last().unwrap();
        assert!(last.flags.iter().any(|f| f == "m0:tension_error"));
    }

    #[test]
    fn quadruped_transform_then_crawl_clears_corridor() {
        let s = scenario(
            r#"{
            "robot": {"kind": "quadruped"},
            "env": {"type": "corridor", "clearance_m": 0.10},
            "plan": "auto",
            "tick_s": 0.1,
            "duration_s": 8.0
        }"#,
        );
        let t = run(&s).unwrap();
        // Stance slews from standing height down to the crawler profile.
        let first = t.records.first().unwrap();
        let last = t.records.last().unwrap();
        assert!(first.stance > 0.10);
        assert!(first.flags.iter().any(|f| f == "corridor_clearance"));
        assert_abs_diff_eq!(last.stance, 0.03, epsilon = 1e-12);
        assert!(last.flags.is_empty());
        assert!(last.x > 0.0); // crawling resumed after the transform
    }

    #[test]
    fn determinism_and_csv_shape() {
        let json = r#"{
            "robot": {"kind": "snake", "modules": 2},
            "env": {"type": "flat_terrain"},
            "plan": ["SET_BEND module=0 theta_deg=10 phi_deg=0", "CRAWL speed=0.05"],
            "tick_s": 0.1,
            "duration_s": 0.3,
            "seed": 7
        }"#;
        let a = run(&scenario(json)).unwrap().to_csv(2);
        let b = run(&scenario(json)).unwrap().to_csv(2);
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 4); // header + 3 ticks
        assert!(a.starts_with("time_s,x_m,"));
    }
}

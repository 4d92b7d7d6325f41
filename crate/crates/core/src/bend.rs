//! Chain path-length geometry under pitch and yaw bending.
//!
//! The closed forms here describe how the guide-channel path across the
//! silicone gaps stretches and shrinks when a module bends, and how much the
//! screw tensioner must travel to keep each chain loop closed. A discrete
//! polyline oracle rebuilds the same channel from the plate frames and
//! measures it by brute force, independently of the closed forms.
//!
//! Sign conventions: positive pitch elongates the top (+z) channel edge;
//! positive yaw shortens the left (+y) chain and elongates the right one.

use nalgebra::{Isometry3, Point3, Translation3, UnitQuaternion, Vector3};
use serde::Serialize;

use crate::design::{check_joint_limits, DesignParams};
use crate::{Error, Result};

/// Below this bend angle the 0/0 closed forms are replaced by their
/// analytic limits.
pub const ANGLE_EPS: f64 = 1e-6;

/// Default mechanical travel limit of the tensioner slider (m).
pub const DEFAULT_TRAVEL_LIMIT: f64 = 0.02;

/// Per-joint-assembly bend state of one module (rad).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct BendState {
    /// Pitch bend about the Y axis.
    pub theta: f64,
    /// Yaw bend about the Z axis.
    pub phi: f64,
}

impl BendState {
    pub fn new(theta: f64, phi: f64) -> Self {
        BendState { theta, phi }
    }

    /// Validate against the joint limits of a design.
    pub fn check(&self, params: &DesignParams) -> Result<()> {
        check_joint_limits(params, self.theta, self.phi)
    }
}

/// Path lengths across one silicone gap under a pitch bend.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PitchPathReport {
    /// Half-opening angle on the elongating side (rad).
    pub alpha: f64,
    /// Half-opening angle on the shortening side (rad).
    pub beta: f64,
    /// Gap path length on the elongating (top, A) side (m).
    pub len_a: f64,
    /// Gap path length on the shortening (bottom, C) side (m).
    pub len_c: f64,
    /// `len_a - len_c`; how far the two sides have diverged (m).
    pub delta_diff: f64,
    /// False when the bend has left the formula's validity region
    /// (`2d <= L·sin|theta|`); raw values are still reported.
    pub domain_valid: bool,
}

/// Path-length changes of the two chain loops under a yaw bend.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct YawPathReport {
    /// Auxiliary groove angle (rad).
    pub gamma: f64,
    /// Per-side path length change magnitude (m).
    pub delta_y: f64,
    /// Side length on the shortening chain, `y - delta_y` (m).
    pub len_short_side: f64,
    /// Side length on the elongating chain, `y + delta_y` (m).
    pub len_long_side: f64,
    /// Loop length change of the shortening chain, `-2·delta_y` (m).
    pub loop_delta_short: f64,
    /// Loop length change of the elongating chain, `+2·delta_y` (m).
    pub loop_delta_long: f64,
    /// The closed form's raw value in the zero-bend limit is `m/4`, not 0;
    /// it is exposed here when the guarded limit was substituted.
    pub raw_zero_limit: Option<f64>,
}

/// Evaluate the pitch-bend path lengths across one gap.
///
/// For `|theta| < ANGLE_EPS` the analytic limit is returned: both sides
/// equal the plate separation `d`.
pub fn pitch_path(params: &DesignParams, theta: f64) -> Result<PitchPathReport> {
    check_joint_limits(params, theta, 0.0)?;
    let d = params.plate_separation;
    let l = params.chassis_segment_length;

    if theta.abs() < ANGLE_EPS {
        return Ok(PitchPathReport {
            alpha: 0.0,
            beta: 0.0,
            len_a: d,
            len_c: d,
            delta_diff: 0.0,
            domain_valid: true,
        });
    }

    let rise = l * (1.0 - theta.cos());
    let alpha = (rise / (2.0 * d + l * theta.sin())).atan();
    let beta = (rise / (2.0 * d - l * theta.sin())).atan();
    let len_a = rise / (2.0 * alpha.sin());
    let len_c = rise / (2.0 * beta.sin());
    let domain_valid = 2.0 * d - l * theta.abs().sin() > 0.0;

    // For theta < 0 the printed forms swap roles: alpha becomes the
    // shortening side. Report A as the elongating side either way.
    let (alpha, beta, len_a, len_c) = if theta >= 0.0 {
        (alpha, beta, len_a, len_c)
    } else {
        (beta, alpha, len_c, len_a)
    };

    Ok(PitchPathReport {
        alpha,
        beta,
        len_a,
        len_c,
        delta_diff: len_a - len_c,
        domain_valid,
    })
}

/// Evaluate the yaw-bend path-length changes.
///
/// `nominal_side_len` is the unbent side length `y` the deltas apply to.
/// For `|phi| < ANGLE_EPS` the physical limit `delta_y = 0` is returned and
/// the closed form's raw limit `m/4` is recorded in the report.
pub fn yaw_path(params: &DesignParams, phi: f64, nominal_side_len: f64) -> Result<YawPathReport> {
    check_joint_limits(params, 0.0, phi)?;
    if nominal_side_len <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "nominal_side_len must be positive, got {nominal_side_len}"
        )));
    }
    let m = params.chain_lateral_halfwidth;
    let y = nominal_side_len;

    if phi.abs() < ANGLE_EPS {
        return Ok(YawPathReport {
            gamma: 0.0,
            delta_y: 0.0,
            len_short_side: y,
            len_long_side: y,
            loop_delta_short: 0.0,
            loop_delta_long: 0.0,
            raw_zero_limit: Some(m / 4.0),
        });
    }

    // Mirror symmetry: a negative yaw swaps which chain shortens; the
    // magnitudes are those of |phi|.
    let a = phi.abs();
    let gamma = (2.0 * (1.0 - a.cos()) / (a.cos() + a.sin())).atan();
    let delta_y = m * (1.0 - a.cos()) / (2.0 * gamma.sin());

    Ok(YawPathReport {
        gamma,
        delta_y,
        len_short_side: y - delta_y,
        len_long_side: y + delta_y,
        loop_delta_short: -2.0 * delta_y,
        loop_delta_long: 2.0 * delta_y,
        raw_zero_limit: None,
    })
}

/// Slider travel that compensates a chain-loop length change. The chain
/// wraps both sides of the translated sprocket, so moving the slider by `x`
/// changes the loop by `2x`. Positive travel extends away from the module
/// center.
pub fn tensioner_displacement(loop_delta: f64) -> Result<f64> {
    tensioner_displacement_with_limit(loop_delta, DEFAULT_TRAVEL_LIMIT)
}

pub fn tensioner_displacement_with_limit(loop_delta: f64, travel_limit: f64) -> Result<f64> {
    let travel = loop_delta / 2.0;
    if travel.abs() > travel_limit {
        return Err(Error::TravelLimit {
            travel_m: travel,
            limit_m: travel_limit,
        });
    }
    Ok(travel)
}

/// Which of the two parallel chains a polyline describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChainSide {
    /// Chain at +y; shortens under positive yaw.
    Left,
    /// Chain at -y; elongates under positive yaw.
    Right,
}

impl ChainSide {
    fn lateral_sign(self) -> f64 {
        match self {
            ChainSide::Left => 1.0,
            ChainSide::Right => -1.0,
        }
    }
}

/// Discrete sample of one chain's guide path: top and bottom runs through
/// the three plate passages plus straight chords across the silicone gaps.
#[derive(Debug, Clone)]
pub struct ChannelPolyline {
    pub side: ChainSide,
    /// Sampled points of the top run, base plate first.
    pub top: Vec<Point3<f64>>,
    /// Sampled points of the bottom run, base plate first.
    pub bottom: Vec<Point3<f64>>,
    /// Chord lengths across the two gaps on the top run (m).
    pub top_gap_lengths: [f64; 2],
    /// Chord lengths across the two gaps on the bottom run (m).
    pub bottom_gap_lengths: [f64; 2],
    pub top_run_length: f64,
    pub bottom_run_length: f64,
    /// Constant sprocket wrap length at the two module ends (m).
    pub wrap_length: f64,
    /// Total loop length: both runs plus the wraps (m).
    pub arc_length: f64,
    /// Loop length of the same chain in the straight configuration (m).
    pub flat_loop_length: f64,
}

impl ChannelPolyline {
    /// Loop length change relative to the straight configuration (m).
    pub fn loop_delta(&self) -> f64 {
        self.arc_length - self.flat_loop_length
    }
}

fn polyline_length(points: &[Point3<f64>]) -> f64 {
    points.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
}

/// Build one chain's guide path for a bent module by composing the three
/// plate frames and sampling the channel through them.
///
/// Each of the two joint assemblies bends by the full `bend` angles, so the
/// gap chords are directly comparable with [`pitch_path`] / [`yaw_path`]
/// evaluated at the same angles. `links` is the total number of polyline
/// samples per run (minimum 16).
pub fn discrete_chain_oracle(
    params: &DesignParams,
    bend: BendState,
    side: ChainSide,
    links: usize,
) -> Result<ChannelPolyline> {
    if links < 16 {
        return Err(Error::InvalidArgument(format!(
            "oracle needs at least 16 links, got {links}"
        )));
    }
    bend.check(params)?;

    let g = params.plate_separation;
    let plate_len = (params.module_length - 2.0 * g) / 3.0;
    if plate_len <= 0.0 {
        return Err(Error::Geometry(format!(
            "module_length {} leaves no room for plates with gaps {}",
            params.module_length, g
        )));
    }
    // Channel radius implied by the pitch path model's lever arm.
    let rho = params.chassis_segment_length / 2.0;
    let m = params.chain_lateral_halfwidth;

    let ry = UnitQuaternion::from_axis_angle(&Vector3::y_axis(), bend.theta);
    let rz = UnitQuaternion::from_axis_angle(&Vector3::z_axis(), bend.phi);
    let pivot = |x: f64, rot: UnitQuaternion<f64>| -> Isometry3<f64> {
        Translation3::new(x, 0.0, 0.0)
            * Isometry3::from_parts(Translation3::identity(), rot)
            * Translation3::new(-x, 0.0, 0.0)
    };
    // Joint order mirrors the plate stack: yaw then pitch across the first
    // gap, pitch then yaw across the second.
    let t1 = Isometry3::identity();
    let t2 = pivot(plate_len + g / 2.0, rz * ry);
    let t3 = t2 * pivot(2.0 * plate_len + 1.5 * g, ry * rz);
    let bodies = [t1, t2, t3];
    let plate_starts = [0.0, plate_len + g, 2.0 * (plate_len + g)];

    let samples_per_plate = (links / 3).max(2);
    let run = |sz: f64| -> Result<(Vec<Point3<f64>>, [f64; 2])> {
        let offset = Vector3::new(0.0, side.lateral_sign() * m, sz * rho);
        let mut points = Vec::new();
        for (body, start) in bodies.iter().zip(plate_starts) {
            for k in 0..samples_per_plate {
                let x = start + plate_len * k as f64 / (samples_per_plate - 1) as f64;
                points.push(body * Point3::from(Vector3::new(x, 0.0, 0.0) + offset));
            }
        }
        let mut gaps = [0.0; 2];
        for i in 0..2 {
            let exit = points[(i + 1) * samples_per_plate - 1];
            let entry = points[(i + 1) * samples_per_plate];
            let chord = entry - exit;
            // Downstream plate face must stay in front of the upstream one.
            let face_normal = bodies[i].rotation * Vector3::x();
            if chord.dot(&face_normal) <= 0.0 {
                return Err(Error::Geometry(format!(
                    "plates interpenetrate at gap {i} (theta {:.4}, phi {:.4})",
                    bend.theta, bend.phi
                )));
            }
            gaps[i] = chord.norm();
        }
        Ok((points, gaps))
    };

    let (top, top_gap_lengths) = run(1.0)?;
    let (bottom, bottom_gap_lengths) = run(-1.0)?;
    let top_run_length = polyline_length(&top);
    let bottom_run_length = polyline_length(&bottom);
    // Sprocket wraps at the hemispherical ends do not deform with bends.
    let wrap_length = 2.0 * std::f64::consts::PI * rho;
    let flat_loop_length = 2.0 * params.module_length + wrap_length;

    Ok(ChannelPolyline {
        side,
        top,
        bottom,
        top_gap_lengths,
        bottom_gap_lengths,
        top_run_length,
        bottom_run_length,
        wrap_length,
        arc_length: top_run_length + bottom_run_length + wrap_length,
        flat_loop_length,
    })
}

/// Bend axis selector for sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BendAxis {
    Pitch,
    Yaw,
}

#[derive(Debug, Clone, Serialize)]
pub struct PitchSweepRow {
    pub angle: f64,
    pub len_a: f64,
    pub len_c: f64,
    pub len_a_oracle: Option<f64>,
    pub len_c_oracle: Option<f64>,
    pub delta_diff: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct YawSweepRow {
    pub angle: f64,
    pub delta_y: f64,
    pub loop_delta_short: f64,
    pub loop_delta_long: f64,
    pub delta_y_oracle: Option<f64>,
    pub loop_delta_short_oracle: Option<f64>,
    pub loop_delta_long_oracle: Option<f64>,
}

/// Tabulated path lengths over a monotone angle grid.
#[derive(Debug, Clone)]
pub enum SweepTable {
    Pitch(Vec<PitchSweepRow>),
    Yaw(Vec<YawSweepRow>),
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.9}")).unwrap_or_default()
}

impl SweepTable {
    /// Render as CSV with angles in degrees and lengths in metres. Oracle
    /// columns are left empty when the sweep ran without the oracle.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self {
            SweepTable::Pitch(rows) => {
                out.push_str(
                    "angle_deg,len_A_analytic_m,len_C_analytic_m,len_A_oracle_m,len_C_oracle_m,delta_diff_m\n",
                );
                for r in rows {
                    out.push_str(&format!(
                        "{:.6},{:.9},{:.9},{},{},{:.9}\n",
                        r.angle.to_degrees(),
                        r.len_a,
                        r.len_c,
                        fmt_opt(r.len_a_oracle),
                        fmt_opt(r.len_c_oracle),
                        r.delta_diff,
                    ));
                }
            }
            SweepTable::Yaw(rows) => {
                out.push_str(
                    "angle_deg,delta_y_m,loop_delta_short_m,loop_delta_long_m,delta_y_oracle_m,loop_delta_short_oracle_m,loop_delta_long_oracle_m\n",
                );
                for r in rows {
                    out.push_str(&format!(
                        "{:.6},{:.9},{:.9},{:.9},{},{},{}\n",
                        r.angle.to_degrees(),
                        r.delta_y,
                        r.loop_delta_short,
                        r.loop_delta_long,
                        fmt_opt(r.delta_y_oracle),
                        fmt_opt(r.loop_delta_short_oracle),
                        fmt_opt(r.loop_delta_long_oracle),
                    ));
                }
            }
        }
        out
    }
}

/// Mean oracle gap lengths over both chains for a pitch bend, and per-chain
/// loop deltas for a yaw bend.
fn oracle_row(params: &DesignParams, bend: BendState, links: usize) -> Result<(f64, f64, f64)> {
    let left = discrete_chain_oracle(params, bend, ChainSide::Left, links)?;
    let right = discrete_chain_oracle(params, bend, ChainSide::Right, links)?;
    let top = (left.top_gap_lengths.iter().sum::<f64>()
        + right.top_gap_lengths.iter().sum::<f64>())
        / 4.0;
    let bottom = (left.bottom_gap_lengths.iter().sum::<f64>()
        + right.bottom_gap_lengths.iter().sum::<f64>())
        / 4.0;
    // The yaw share is antisymmetric between the chains; half the loop
    // spread is the per-side delta (two gaps per run, two runs per loop).
    let delta_y = (right.loop_delta() - left.loop_delta()) / 8.0;
    Ok((top, bottom, delta_y))
}

/// Evaluate path lengths over `steps` evenly spaced angles in `[from, to]`.
///
/// `oracle_links`, when set, adds brute-force columns sampled with that many
/// links per run.
pub fn sweep(
    params: &DesignParams,
    axis: BendAxis,
    from: f64,
    to: f64,
    steps: usize,
    oracle_links: Option<usize>,
) -> Result<SweepTable> {
    if steps < 2 {
        return Err(Error::EmptyRange(format!("steps = {steps}, need at least 2")));
    }
    if to.partial_cmp(&from) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::EmptyRange(format!(
            "degenerate angle range [{from}, {to}]"
        )));
    }
    for end in [from, to] {
        match axis {
            BendAxis::Pitch => check_joint_limits(params, end, 0.0)?,
            BendAxis::Yaw => check_joint_limits(params, 0.0, end)?,
        }
    }

    let angle_at = |i: usize| from + (to - from) * i as f64 / (steps - 1) as f64;
    match axis {
        BendAxis::Pitch => {
            let mut rows = Vec::with_capacity(steps);
            for i in 0..steps {
                let angle = angle_at(i);
                let p = pitch_path(params, angle)?;
                let (len_a_oracle, len_c_oracle) = match oracle_links {
                    Some(links) => {
                        let (top, bottom, _) =
                            oracle_row(params, BendState::new(angle, 0.0), links)?;
                        (Some(top), Some(bottom))
                    }
                    None => (None, None),
                };
                rows.push(PitchSweepRow {
                    angle,
                    len_a: p.len_a,
                    len_c: p.len_c,
                    len_a_oracle,
                    len_c_oracle,
                    delta_diff: p.delta_diff,
                });
            }
            Ok(SweepTable::Pitch(rows))
        }
        BendAxis::Yaw => {
            let y = params.plate_separation;
            let mut rows = Vec::with_capacity(steps);
            for i in 0..steps {
                let angle = angle_at(i);
                let r = yaw_path(params, angle, y)?;
                let (delta_y_oracle, short_o, long_o) = match oracle_links {
                    Some(links) => {
                        let (_, _, dy) = oracle_row(params, BendState::new(0.0, angle), links)?;
                        (Some(dy), Some(-2.0 * dy), Some(2.0 * dy))
                    }
                    None => (None, None, None),
                };
                rows.push(YawSweepRow {
                    angle,
                    delta_y: r.delta_y,
                    loop_delta_short: r.loop_delta_short,
                    loop_delta_long: r.loop_delta_long,
                    delta_y_oracle,
                    loop_delta_short_oracle: short_o,
                    loop_delta_long_oracle: long_o,
                });
            }
            Ok(SweepTable::Yaw(rows))
        }
    }
}

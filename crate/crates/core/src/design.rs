//! Module design parameters and closed-form design constraints.
//!
//! A [`DesignParams`] value describes one crawler module. The constraint
//! checks here are pure arithmetic: the sprocket torque split across the two
//! chain drives, the minimum inter-lug separation imposed by the joint
//! limits, and basic geometric validity. Violations are reported as data,
//! never as errors, so a design explorer can chart infeasible regions.

use serde::{Deserialize, Serialize};

use crate::compliance::SiliconeSpec;
use crate::{Error, Result};

/// Complete parameter set for one module. Angles in radians, SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignParams {
    /// Mass of one module (kg).
    pub module_mass: f64,
    /// Overall module length (m).
    pub module_length: f64,
    /// Saturation torque of the geared drive motor (N·m).
    pub drive_motor_torque: f64,
    /// Saturation torque of the joint motors (N·m).
    pub joint_motor_torque: f64,
    /// Spur-gear train ratio between drive motor and sprockets.
    pub gear_ratio: f64,
    /// Diameter of each circular chassis plate (m).
    pub plate_diameter: f64,
    /// Axial separation between adjacent chassis plates (m).
    pub plate_separation: f64,
    /// Outer diameter of the module across the lugs (m).
    pub module_diameter: f64,
    /// Pitch joint limit (rad).
    pub joint_limit_pitch: f64,
    /// Yaw joint limit (rad).
    pub joint_limit_yaw: f64,
    /// Lug length along the chain (m).
    pub lug_length: f64,
    /// Lug height above the chain link (m).
    pub lug_height: f64,
    /// Separation between adjacent lugs (m).
    pub inter_lug_separation: f64,
    /// Thickness of the silicone channel wall (m).
    pub silicone_thickness: f64,
    /// Width of the silicone channel (m).
    pub silicone_width: f64,
    /// Rest length of one silicone gap segment (m).
    pub silicone_length: f64,
    /// Effective chassis segment length used by the bend path model (m).
    /// Not part of the published table; configurable, see `Default`.
    pub chassis_segment_length: f64,
    /// Lateral half-separation between the two chain runs (m).
    /// Not part of the published table; configurable, see `Default`.
    pub chain_lateral_halfwidth: f64,
    /// Silicone material model parameters.
    pub silicone: SiliconeSpec,
}

impl Default for DesignParams {
    /// The reference parameter set for the prototype module.
    fn default() -> Self {
        DesignParams {
            module_mass: 0.320,
            module_length: 0.24,
            drive_motor_torque: 1.5,
            joint_motor_torque: 1.5,
            gear_ratio: 1.25,
            plate_diameter: 0.040,
            plate_separation: 0.025,
            module_diameter: 0.060,
            joint_limit_pitch: 32f64.to_radians(),
            joint_limit_yaw: 32f64.to_radians(),
            lug_length: 0.010,
            lug_height: 0.035,
            inter_lug_separation: 0.018,
            silicone_thickness: 0.004,
            silicone_width: 0.010,
            silicone_length: 0.022,
            // The chassis segment length and chain half-width are free
            // parameters of the path-length model; these defaults put the
            // chain channel at the plate radius scale.
            chassis_segment_length: 0.05,
            chain_lateral_halfwidth: 0.025,
            silicone: SiliconeSpec::default(),
        }
    }
}

/// File-boundary mirror of [`DesignParams`]: identical keys, but the two
/// joint limits are given in degrees. Missing fields fall back to the
/// reference design.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DesignParamsFile {
    pub module_mass: f64,
    pub module_length: f64,
    pub drive_motor_torque: f64,
    pub joint_motor_torque: f64,
    pub gear_ratio: f64,
    pub plate_diameter: f64,
    pub plate_separation: f64,
    pub module_diameter: f64,
    pub joint_limit_pitch_deg: f64,
    pub joint_limit_yaw_deg: f64,
    pub lug_length: f64,
    pub lug_height: f64,
    pub inter_lug_separation: f64,
    pub silicone_thickness: f64,
    pub silicone_width: f64,
    pub silicone_length: f64,
    pub chassis_segment_length: f64,
    pub chain_lateral_halfwidth: f64,
    pub silicone: SiliconeSpec,
}

impl Default for DesignParamsFile {
    fn default() -> Self {
        DesignParamsFile::from(&DesignParams::default())
    }
}

impl From<&DesignParams> for DesignParamsFile {
    fn from(p: &DesignParams) -> Self {
        DesignParamsFile {
            module_mass: p.module_mass,
            module_length: p.module_length,
            drive_motor_torque: p.drive_motor_torque,
            joint_motor_torque: p.joint_motor_torque,
            gear_ratio: p.gear_ratio,
            plate_diameter: p.plate_diameter,
            plate_separation: p.plate_separation,
            module_diameter: p.module_diameter,
            joint_limit_pitch_deg: p.joint_limit_pitch.to_degrees(),
            joint_limit_yaw_deg: p.joint_limit_yaw.to_degrees(),
            lug_length: p.lug_length,
            lug_height: p.lug_height,
            inter_lug_separation: p.inter_lug_separation,
            silicone_thickness: p.silicone_thickness,
            silicone_width: p.silicone_width,
            silicone_length: p.silicone_length,
            chassis_segment_length: p.chassis_segment_length,
            chain_lateral_halfwidth: p.chain_lateral_halfwidth,
            silicone: p.silicone.clone(),
        }
    }
}

impl From<DesignParamsFile> for DesignParams {
    fn from(f: DesignParamsFile) -> Self {
        DesignParams {
            module_mass: f.module_mass,
            module_length: f.module_length,
            drive_motor_torque: f.drive_motor_torque,
            joint_motor_torque: f.joint_motor_torque,
            gear_ratio: f.gear_ratio,
            plate_diameter: f.plate_diameter,
            plate_separation: f.plate_separation,
            module_diameter: f.module_diameter,
            joint_limit_pitch: f.joint_limit_pitch_deg.to_radians(),
            joint_limit_yaw: f.joint_limit_yaw_deg.to_radians(),
            lug_length: f.lug_length,
            lug_height: f.lug_height,
            inter_lug_separation: f.inter_lug_separation,
            silicone_thickness: f.silicone_thickness,
            silicone_width: f.silicone_width,
            silicone_length: f.silicone_length,
            chassis_segment_length: f.chassis_segment_length,
            chain_lateral_halfwidth: f.chain_lateral_halfwidth,
            silicone: f.silicone,
        }
    }
}

impl DesignParams {
    /// Parse a design from its JSON file form.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: DesignParamsFile = serde_json::from_str(text)?;
        Ok(file.into())
    }

    /// Serialise to the JSON file form (joint limits in degrees).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DesignParamsFile::from(self))
            .expect("design params serialise")
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// One named constraint failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub name: String,
    pub detail: String,
}

impl Violation {
    fn new(name: &str, detail: String) -> Self {
        Violation {
            name: name.to_string(),
            detail,
        }
    }
}

/// Result of running all closed-form design checks.
///
/// `d1`/`d2` are the minimum inter-lug separations required by the pitch and
/// yaw joint limits with the lug height and length as levers, evaluated with
/// the printed pairing (height with pitch, length with yaw). `d1_swapped`/
/// `d2_swapped` evaluate the opposite pairing; the reference prototype's
/// quoted numbers (5 mm / 18 mm) match the swapped pairing, so both are
/// reported to keep the discrepancy visible.
#[derive(Debug, Clone, Serialize)]
pub struct DesignReport {
    pub sprocket_torque: f64,
    pub d1: f64,
    pub d2: f64,
    pub d_lug_required: f64,
    pub d1_swapped: f64,
    pub d2_swapped: f64,
    /// Shortfall of the configured lug separation against the requirement,
    /// positive when the separation is too small.
    pub d_lug_shortfall: f64,
    pub violations: Vec<Violation>,
}

/// Torque available at each of the two sprocket drives: the motor torque,
/// through the gear train, split over the two chains.
pub fn sprocket_torque(params: &DesignParams) -> f64 {
    params.gear_ratio * params.drive_motor_torque / 2.0
}

/// Minimum inter-lug separations `(d1, d2, d_lug)` so lugs clear each other
/// at the joint limits: `d1 = 2·h_lug·sin(θ_max/2)` for pitch,
/// `d2 = 2·l_lug·sin(φ_max/2)` for yaw, `d_lug = max(d1, d2)`.
pub fn lug_separation(params: &DesignParams) -> (f64, f64, f64) {
    lug_separation_at(params, params.joint_limit_pitch, params.joint_limit_yaw)
}

/// Same requirement evaluated at an arbitrary bend instead of the limits.
pub fn lug_separation_at(params: &DesignParams, theta: f64, phi: f64) -> (f64, f64, f64) {
    let d1 = 2.0 * params.lug_height * (theta.abs() / 2.0).sin();
    let d2 = 2.0 * params.lug_length * (phi.abs() / 2.0).sin();
    (d1, d2, d1.max(d2))
}

/// Run every closed-form check and report all failures by name.
pub fn validate_design(params: &DesignParams) -> DesignReport {
    let (d1, d2, d_lug_required) = lug_separation(params);
    // Opposite lever pairing, kept visible alongside the printed one.
    let d1_swapped = 2.0 * params.lug_length * (params.joint_limit_pitch / 2.0).sin();
    let d2_swapped = 2.0 * params.lug_height * (params.joint_limit_yaw / 2.0).sin();

    let mut violations = Vec::new();

    let lengths = [
        ("module_mass", params.module_mass),
        ("module_length", params.module_length),
        ("plate_diameter", params.plate_diameter),
        ("plate_separation", params.plate_separation),
        ("module_diameter", params.module_diameter),
        ("lug_length", params.lug_length),
        ("lug_height", params.lug_height),
        ("silicone_thickness", params.silicone_thickness),
        ("silicone_width", params.silicone_width),
        ("silicone_length", params.silicone_length),
        ("chassis_segment_length", params.chassis_segment_length),
        ("chain_lateral_halfwidth", params.chain_lateral_halfwidth),
    ];
    for (name, value) in lengths {
        if value <= 0.0 {
            violations.push(Violation::new(
                "non_positive_length",
                format!("{name} = {value}"),
            ));
        }
    }
    if params.gear_ratio <= 0.0 {
        violations.push(Violation::new(
            "non_positive_gear_ratio",
            format!("gear_ratio = {}", params.gear_ratio),
        ));
    }
    for (name, angle) in [
        ("joint_limit_pitch", params.joint_limit_pitch),
        ("joint_limit_yaw", params.joint_limit_yaw),
    ] {
        if angle <= 0.0 || angle >= std::f64::consts::FRAC_PI_2 {
            violations.push(Violation::new(
                "joint_limit_out_of_range",
                format!("{name} = {:.4} rad, expected (0, pi/2)", angle),
            ));
        }
    }
    if params.plate_separation >= params.module_length {
        violations.push(Violation::new(
            "plate_separation_exceeds_module_length",
            format!(
                "plate_separation {} >= module_length {}",
                params.plate_separation, params.module_length
            ),
        ));
    }
    if params.lug_height >= params.module_diameter {
        violations.push(Violation::new(
            "lug_taller_than_module",
            format!(
                "lug_height {} >= module_diameter {}",
                params.lug_height, params.module_diameter
            ),
        ));
    }
    let d_lug_shortfall = d_lug_required - params.inter_lug_separation;
    if d_lug_shortfall > 0.0 {
        violations.push(Violation::new(
            "lug_separation_below_minimum",
            format!(
                "inter_lug_separation {:.5} m < required {:.5} m (pitch lever {:.5} m, \
                 yaw lever {:.5} m; swapped-lever reading would require {:.5} m)",
                params.inter_lug_separation,
                d_lug_required,
                d1,
                d2,
                d1_swapped.max(d2_swapped),
            ),
        ));
    }

    DesignReport {
        sprocket_torque: sprocket_torque(params),
        d1,
        d2,
        d_lug_required,
        d1_swapped,
        d2_swapped,
        d_lug_shortfall,
        violations,
    }
}

/// Check a bend against the joint limits of a design.
pub fn check_joint_limits(params: &DesignParams, theta: f64, phi: f64) -> Result<()> {
    if theta.abs() > params.joint_limit_pitch + 1e-12 {
        return Err(Error::JointLimit {
            axis: "pitch",
            angle_rad: theta,
            limit_rad: params.joint_limit_pitch,
        });
    }
    if phi.abs() > params.joint_limit_yaw + 1e-12 {
        return Err(Error::JointLimit {
            axis: "yaw",
            angle_rad: phi,
            limit_rad: params.joint_limit_yaw,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sprocket_torque_reference_design() {
        let p = DesignParams::default();
        assert_eq!(sprocket_torque(&p), 0.9375);
    }

    #[test]
    fn sprocket_torque_zero_and_hand_values() {
        let p = DesignParams {
            drive_motor_torque: 0.0,
            ..DesignParams::default()
        };
        assert_eq!(sprocket_torque(&p), 0.0);
        let p = DesignParams {
            drive_motor_torque: 1.0,
            gear_ratio: 2.0,
            ..p
        };
        assert_eq!(sprocket_torque(&p), 1.0);
    }

    #[test]
    fn lug_separation_reference_design() {
        let p = DesignParams::default();
        let (d1, d2, d_lug) = lug_separation(&p);
        assert_abs_diff_eq!(d1, 0.019294614907189943, epsilon = 1e-12);
        assert_abs_diff_eq!(d2, 0.005512747116339984, epsilon = 1e-12);
        assert_eq!(d_lug, d1);
    }

    #[test]
    fn lug_separation_zero_and_symmetric() {
        let mut p = DesignParams::default();
        let (d1, d2, d_lug) = lug_separation_at(&p, 0.0, 0.0);
        assert_eq!((d1, d2, d_lug), (0.0, 0.0, 0.0));

        p.lug_height = 0.020;
        p.lug_length = 0.020;
        p.joint_limit_pitch = 60f64.to_radians();
        p.joint_limit_yaw = 60f64.to_radians();
        let (d1, d2, d_lug) = lug_separation(&p);
        assert_abs_diff_eq!(d1, 0.020, epsilon = 1e-12);
        assert_abs_diff_eq!(d2, 0.020, epsilon = 1e-12);
        assert_abs_diff_eq!(d_lug, 0.020, epsilon = 1e-12);
    }

    #[test]
    fn validate_flags_small_lug_separation() {
        let p = DesignParams::default(); // separation 0.018 < required 0.01929
        let report = validate_design(&p);
        assert!(report
            .violations
            .iter()
            .any(|v| v.name == "lug_separation_below_minimum"));
        assert!(report.d_lug_shortfall > 0.0);

        let mut ok = p.clone();
        ok.inter_lug_separation = 0.020;
        let report = validate_design(&ok);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn validate_flags_degenerate_lengths() {
        let p = DesignParams {
            lug_height: 0.0,
            ..DesignParams::default()
        };
        let report = validate_design(&p);
        assert!(report.violations.iter().any(|v| v.name == "non_positive_length"));
    }

    #[test]
    fn file_round_trip_uses_degrees() {
        let p = DesignParams::default();
        let json = p.to_json();
        assert!(json.contains("\"joint_limit_pitch_deg\": 32.0"));
        let back = DesignParams::from_json(&json).unwrap();
        assert_abs_diff_eq!(back.joint_limit_pitch, p.joint_limit_pitch, epsilon = 1e-15);
        assert_eq!(back, p);
    }
}

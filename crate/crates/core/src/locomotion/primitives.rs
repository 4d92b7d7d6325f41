//! The primitive vocabulary, locomotion-mode decomposition and the
//! line-oriented plan text format.
//!
//! One primitive per line, `NAME key=value ...`, angles in degrees at this
//! boundary (radians everywhere else).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// An atomic commanded action.
#[derive(Debug, Clone, PartialEq)]
pub enum MotionPrimitive {
    /// Longitudinal crawl along the body heading (m/s).
    Crawl { speed: f64 },
    /// Sideways roll perpendicular to the heading (m/s).
    SidewaysRoll { speed: f64 },
    /// Command one module's bend targets (rad).
    SetBend { module: usize, theta: f64, phi: f64 },
    /// Command one module's tensioner slider (m).
    AdjustChainTension { module: usize, slider_travel: f64 },
    /// Command one series-elastic connector's stiffness (N·m/rad).
    AdjustSeaStiffness { joint: usize, stiffness: f64 },
    /// Roll the whole body about its axis to a target angle (rad).
    RollAlongPipe { target_roll: f64 },
    /// Fold from standing to crawler configuration.
    TransformToCrawler,
    /// Single leg swing: lift, advance by `stride` (m), touch down.
    LeggedStep { leg: usize, swing: f64, stride: f64 },
    /// Drive on a hemispherical end like an omni-wheel (m/s).
    WheelDrive { speed: f64 },
}

/// Primitive template name, used in mode decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimitiveKind {
    Crawl,
    SidewaysRoll,
    SetBend,
    AdjustChainTension,
    AdjustSeaStiffness,
    RollAlongPipe,
    TransformToCrawler,
    LeggedStep,
    WheelDrive,
}

impl MotionPrimitive {
    pub fn kind(&self) -> PrimitiveKind {
        match self {
            MotionPrimitive::Crawl { .. } => PrimitiveKind::Crawl,
            MotionPrimitive::SidewaysRoll { .. } => PrimitiveKind::SidewaysRoll,
            MotionPrimitive::SetBend { .. } => PrimitiveKind::SetBend,
            MotionPrimitive::AdjustChainTension { .. } => PrimitiveKind::AdjustChainTension,
            MotionPrimitive::AdjustSeaStiffness { .. } => PrimitiveKind::AdjustSeaStiffness,
            MotionPrimitive::RollAlongPipe { .. } => PrimitiveKind::RollAlongPipe,
            MotionPrimitive::TransformToCrawler => PrimitiveKind::TransformToCrawler,
            MotionPrimitive::LeggedStep { .. } => PrimitiveKind::LeggedStep,
            MotionPrimitive::WheelDrive { .. } => PrimitiveKind::WheelDrive,
        }
    }

    /// Serialise to one plan line.
    pub fn to_line(&self) -> String {
        match self {
            MotionPrimitive::Crawl { speed } => format!("CRAWL speed={speed:.9}"),
            MotionPrimitive::SidewaysRoll { speed } => format!("SIDEWAYS_ROLL speed={speed:.9}"),
            MotionPrimitive::SetBend { module, theta, phi } => format!(
                "SET_BEND module={module} theta_deg={:.9} phi_deg={:.9}",
                theta.to_degrees(),
                phi.to_degrees()
            ),
            MotionPrimitive::AdjustChainTension {
                module,
                slider_travel,
            } => format!("ADJUST_CHAIN_TENSION module={module} slider={slider_travel:.9}"),
            MotionPrimitive::AdjustSeaStiffness { joint, stiffness } => {
                format!("ADJUST_SEA_STIFFNESS joint={joint} stiffness={stiffness:.9}")
            }
            MotionPrimitive::RollAlongPipe { target_roll } => {
                format!("ROLL_ALONG_PIPE target_roll_deg={:.9}", target_roll.to_degrees())
            }
            MotionPrimitive::TransformToCrawler => "TRANSFORM_TO_CRAWLER".to_string(),
            MotionPrimitive::LeggedStep { leg, swing, stride } => format!(
                "LEGGED_STEP leg={leg} swing_deg={:.9} stride={stride:.9}",
                swing.to_degrees()
            ),
            MotionPrimitive::WheelDrive { speed } => format!("WHEEL_DRIVE speed={speed:.9}"),
        }
    }

    /// Parse one plan line. `line_no` is used for diagnostics only.
    pub fn parse_line(line: &str, line_no: usize) -> Result<Self> {
        let mut parts = line.split_whitespace();
        let name = parts.next().ok_or(Error::Parse {
            line: line_no,
            msg: "empty line".to_string(),
        })?;
        let mut kv = HashMap::new();
        for part in parts {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse {
                line: line_no,
                msg: format!("expected key=value, got '{part}'"),
            })?;
            kv.insert(k, v);
        }
        let num = |key: &str| -> Result<f64> {
            kv.get(key)
                .ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: format!("{name} missing '{key}'"),
                })?
                .parse()
                .map_err(|e| Error::Parse {
                    line: line_no,
                    msg: format!("bad number for '{key}': {e}"),
                })
        };
        let idx = |key: &str| -> Result<usize> {
            kv.get(key)
                .ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: format!("{name} missing '{key}'"),
                })?
                .parse()
                .map_err(|e| Error::Parse {
                    line: line_no,
                    msg: format!("bad index for '{key}': {e}"),
                })
        };

        match name {
            "CRAWL" => Ok(MotionPrimitive::Crawl { speed: num("speed")? }),
            "SIDEWAYS_ROLL" => Ok(MotionPrimitive::SidewaysRoll { speed: num("speed")? }),
            "SET_BEND" => Ok(MotionPrimitive::SetBend {
                module: idx("module")?,
                theta: num("theta_deg")?.to_radians(),
                phi: num("phi_deg")?.to_radians(),
            }),
            "ADJUST_CHAIN_TENSION" => Ok(MotionPrimitive::AdjustChainTension {
                module: idx("module")?,
                slider_travel: num("slider")?,
            }),
            "ADJUST_SEA_STIFFNESS" => Ok(MotionPrimitive::AdjustSeaStiffness {
                joint: idx("joint")?,
                stiffness: num("stiffness")?,
            }),
            "ROLL_ALONG_PIPE" => Ok(MotionPrimitive::RollAlongPipe {
                target_roll: num("target_roll_deg")?.to_radians(),
            }),
            "TRANSFORM_TO_CRAWLER" => Ok(MotionPrimitive::TransformToCrawler),
            "LEGGED_STEP" => Ok(MotionPrimitive::LeggedStep {
                leg: idx("leg")?,
                swing: num("swing_deg")?.to_radians(),
                stride: num("stride")?,
            }),
            "WHEEL_DRIVE" => Ok(MotionPrimitive::WheelDrive { speed: num("speed")? }),
            other => Err(Error::Parse {
                line: line_no,
                msg: format!("unknown primitive '{other}'"),
            }),
        }
    }
}

/// Parse a whole plan, one primitive per non-empty line. `#` starts a
/// comment line.
pub fn parse_plan(text: &str) -> Result<Vec<MotionPrimitive>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(MotionPrimitive::parse_line(line, i + 1)?);
    }
    Ok(out)
}

pub fn plan_to_text(plan: &[MotionPrimitive]) -> String {
    let mut out = String::new();
    for p in plan {
        out.push_str(&p.to_line());
        out.push('\n');
    }
    out
}

/// The named locomotion modes and their primitive decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocomotionMode {
    /// Longitudinal crawl plus sideways roll: holonomic ground motion.
    Omnidirectional,
    /// Steering mode: joints control, chain tension adjustment, crawl.
    CompliantCrawling,
    /// Joints control plus sideways rolling.
    CompliantRolling,
    /// Joints control only.
    Legged,
    /// Driving on a hemispherical end.
    Wheeled,
}

impl LocomotionMode {
    /// Primitive templates the mode decomposes into, in execution order.
    pub fn decompose(self) -> &'static [PrimitiveKind] {
        match self {
            LocomotionMode::Omnidirectional => {
                &[PrimitiveKind::Crawl, PrimitiveKind::SidewaysRoll]
            }
            LocomotionMode::CompliantCrawling => &[
                PrimitiveKind::SetBend,
                PrimitiveKind::AdjustChainTension,
                PrimitiveKind::Crawl,
            ],
            LocomotionMode::CompliantRolling => {
                &[PrimitiveKind::SetBend, PrimitiveKind::SidewaysRoll]
            }
            LocomotionMode::Legged => &[PrimitiveKind::SetBend],
            LocomotionMode::Wheeled => &[PrimitiveKind::WheelDrive],
        }
    }

    pub const ALL: [LocomotionMode; 5] = [
        LocomotionMode::Omnidirectional,
        LocomotionMode::CompliantCrawling,
        LocomotionMode::CompliantRolling,
        LocomotionMode::Legged,
        LocomotionMode::Wheeled,
    ];
}

impl fmt::Display for LocomotionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LocomotionMode::Omnidirectional => "omnidirectional",
            LocomotionMode::CompliantCrawling => "compliant-crawling",
            LocomotionMode::CompliantRolling => "compliant-rolling",
            LocomotionMode::Legged => "legged",
            LocomotionMode::Wheeled => "wheeled",
        };
        f.write_str(name)
    }
}

impl FromStr for LocomotionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "omnidirectional" => Ok(LocomotionMode::Omnidirectional),
            "compliant-crawling" | "steering" => Ok(LocomotionMode::CompliantCrawling),
            "compliant-rolling" => Ok(LocomotionMode::CompliantRolling),
            "legged" => Ok(LocomotionMode::Legged),
            "wheeled" => Ok(LocomotionMode::Wheeled),
            other => Err(Error::InvalidArgument(format!(
                "unknown locomotion mode '{other}'"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompositions_match_mode_table() {
        use PrimitiveKind::*;
        assert_eq!(
            LocomotionMode::Omnidirectional.decompose(),
            &[Crawl, SidewaysRoll]
        );
        assert_eq!(
            LocomotionMode::CompliantCrawling.decompose(),
            &[SetBend, AdjustChainTension, Crawl]
        );
        assert_eq!(
            LocomotionMode::CompliantRolling.decompose(),
            &[SetBend, SidewaysRoll]
        );
        assert_eq!(LocomotionMode::Legged.decompose(), &[SetBend]);
        assert_eq!(LocomotionMode::Wheeled.decompose(), &[WheelDrive]);
    }

    #[test]
    fn unknown_mode_name_rejected() {
        assert!("hover".parse::<LocomotionMode>().is_err());
        assert_eq!(
            "steering".parse::<LocomotionMode>().unwrap(),
            LocomotionMode::CompliantCrawling
        );
    }

    #[test]
    fn plan_text_round_trip() {
        let plan = vec![
            MotionPrimitive::SetBend {
                module: 1,
                theta: 0.2,
                phi: -0.1,
            },
            MotionPrimitive::AdjustChainTension {
                module: 1,
                slider_travel: 0.00882,
            },
            MotionPrimitive::Crawl { speed: 0.05 },
            MotionPrimitive::TransformToCrawler,
        ];
        let text = plan_to_text(&plan);
        let back = parse_plan(&text).unwrap();
        assert_eq!(back.len(), plan.len());
        for (a, b) in plan.iter().zip(&back) {
            match (a, b) {
                (
                    MotionPrimitive::SetBend { theta: t1, phi: p1, .. },
                    MotionPrimitive::SetBend { theta: t2, phi: p2, .. },
                ) => {
                    assert!((t1 - t2).abs() < 1e-9);
                    assert!((p1 - p2).abs() < 1e-9);
                }
                _ => assert_eq!(a.kind(), b.kind()),
            }
        }
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = parse_plan("CRAWL speed=0.1\nBOGUS x=1\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}

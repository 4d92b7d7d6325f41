//! Silicone guide-channel compliance model.
//!
//! The soft segments bridging the plate gaps are modelled as an
//! incompressible neo-Hookean solid under uniaxial stretch. Elongation
//! narrows the channel cross-section; effective stretch below 1 means the
//! segment would have to compress, which it cannot — it bulges instead, and
//! that state is flagged rather than modelled.

use serde::{Deserialize, Serialize};

use crate::bend::{pitch_path, yaw_path, BendState, ChainSide};
use crate::design::DesignParams;
use crate::{Error, Result};

/// Material and geometry of one embedded silicone segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SiliconeSpec {
    /// Nominal stress at 100% elongation (Pa).
    pub modulus_100pct: f64,
    /// Wall thickness (m).
    pub thickness: f64,
    /// Channel width (m).
    pub width: f64,
    /// Rest length of one gap segment (m).
    pub rest_length: f64,
    /// Built-in pre-extension, >= 1. Embedding the rubber pre-stretched
    /// keeps it from bulging into the channel when the path shortens.
    pub pre_stretch: f64,
}

impl Default for SiliconeSpec {
    fn default() -> Self {
        SiliconeSpec {
            modulus_100pct: 69e3,
            thickness: 0.004,
            width: 0.010,
            rest_length: 0.022,
            pre_stretch: 1.1,
        }
    }
}

/// State of one channel segment at a given stretch.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ChannelState {
    /// Effective uniaxial stretch, pre-extension included.
    pub stretch: f64,
    /// Nominal (engineering) stress (Pa).
    pub nominal_stress: f64,
    /// Current channel width (m).
    pub channel_width: f64,
    /// Current channel height (m).
    pub channel_height: f64,
    /// True when the segment is effectively compressed and bulges.
    pub bulge: bool,
}

/// Shear modulus recovered from the 100%-elongation datum: at stretch 2 the
/// nominal stress is `mu·(2 - 1/4)`, so `mu = modulus_100pct / 1.75`.
pub fn shear_modulus(spec: &SiliconeSpec) -> f64 {
    const LAMBDA_100: f64 = 2.0;
    spec.modulus_100pct / (LAMBDA_100 - LAMBDA_100.powi(-2))
}

/// Incompressible neo-Hookean nominal stress `mu·(lambda - lambda^-2)`.
/// Negative below stretch 1; that regime is flagged as bulging, not applied.
pub fn uniaxial_stress(spec: &SiliconeSpec, lambda: f64) -> Result<f64> {
    if lambda <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "stretch must be positive, got {lambda}"
        )));
    }
    Ok(shear_modulus(spec) * (lambda - lambda.powi(-2)))
}

/// Channel geometry and stress for a gap currently `gap_length_now` long.
///
/// Incompressibility under uniaxial pull makes the transverse stretches
/// equal: width and height scale by `lambda^-1/2`.
pub fn channel_state(spec: &SiliconeSpec, gap_length_now: f64) -> Result<ChannelState> {
    if gap_length_now <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "gap length must be positive, got {gap_length_now}"
        )));
    }
    let lambda = spec.pre_stretch * gap_length_now / spec.rest_length;
    let transverse = lambda.powf(-0.5);
    Ok(ChannelState {
        stretch: lambda,
        nominal_stress: uniaxial_stress(spec, lambda)?,
        channel_width: spec.width * transverse,
        channel_height: spec.thickness * transverse,
        bulge: lambda < 1.0,
    })
}

/// Which run of a chain loop an edge belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChannelEdge {
    Top,
    Bottom,
}

/// Stretch state of one silicone edge path under a bend.
#[derive(Debug, Clone, Serialize)]
pub struct GapStretch {
    pub chain: ChainSide,
    pub edge: ChannelEdge,
    /// Current edge path length across the gap (m).
    pub edge_length: f64,
    pub state: ChannelState,
}

/// Map a bend onto the four silicone edge paths of one gap and return each
/// edge's stretch state.
///
/// Pitch moves the top and bottom edges apart; yaw shifts both edges of one
/// chain one way and the other chain the opposite way. The silicone strain
/// is taken equal to the edge-path strain over the gap.
pub fn gaps_from_bend(params: &DesignParams, bend: BendState) -> Result<Vec<GapStretch>> {
    bend.check(params)?;
    let d = params.plate_separation;
    let pitch = pitch_path(params, bend.theta)?;
    let yaw = yaw_path(params, bend.phi, d)?;

    let yaw_sign = if bend.phi < 0.0 { -1.0 } else { 1.0 };
    let mut out = Vec::with_capacity(4);
    for chain in [ChainSide::Left, ChainSide::Right] {
        let yaw_shift = match chain {
            ChainSide::Left => -yaw.delta_y,
            ChainSide::Right => yaw.delta_y,
        } * yaw_sign;
        for (edge, pitch_len) in [(ChannelEdge::Top, pitch.len_a), (ChannelEdge::Bottom, pitch.len_c)]
        {
            let edge_length = pitch_len + yaw_shift;
            let gap_now = params.silicone.rest_length * edge_length / d;
            out.push(GapStretch {
                chain,
                edge,
                edge_length,
                state: channel_state(&params.silicone, gap_now)?,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn shear_modulus_from_100pct_datum() {
        let spec = SiliconeSpec::default();
        assert_abs_diff_eq!(shear_modulus(&spec), 39428.571428571, epsilon = 1e-6);

        let unit = SiliconeSpec {
            modulus_100pct: 1.75,
            ..spec.clone()
        };
        assert_abs_diff_eq!(shear_modulus(&unit), 1.0, epsilon = 1e-12);

        let double = SiliconeSpec {
            modulus_100pct: 138e3,
            ..spec
        };
        assert_abs_diff_eq!(shear_modulus(&double), 78857.142857143, epsilon = 1e-6);
    }

    #[test]
    fn uniaxial_stress_values() {
        let spec = SiliconeSpec::default();
        assert_eq!(uniaxial_stress(&spec, 1.0).unwrap(), 0.0);
        // Closing the loop on the datum itself.
        assert_abs_diff_eq!(uniaxial_stress(&spec, 2.0).unwrap(), 69e3, epsilon = 1e-6);
        assert_abs_diff_eq!(
            uniaxial_stress(&spec, 1.5).unwrap(),
            41619.047619048,
            epsilon = 1e-6
        );
        assert!(uniaxial_stress(&spec, 0.0).is_err());
        assert!(uniaxial_stress(&spec, -1.0).is_err());
    }

    #[test]
    fn channel_state_scaling_and_bulge() {
        let spec = SiliconeSpec {
            pre_stretch: 1.0,
            ..SiliconeSpec::default()
        };
        let rest = channel_state(&spec, spec.rest_length).unwrap();
        assert_abs_diff_eq!(rest.stretch, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rest.channel_width, spec.width, epsilon = 1e-12);
        assert!(!rest.bulge);

        let pulled = channel_state(&spec, 1.21 * spec.rest_length).unwrap();
        assert_abs_diff_eq!(pulled.stretch, 1.21, epsilon = 1e-12);
        assert_abs_diff_eq!(pulled.channel_width / spec.width, 1.0 / 1.1, epsilon = 1e-9);

        let slack = channel_state(&spec, 0.9 * spec.rest_length).unwrap();
        assert!(slack.bulge);
    }

    #[test]
    fn pre_stretch_shifts_bulge_threshold() {
        let spec = SiliconeSpec::default(); // pre_stretch 1.1
        let shortened = channel_state(&spec, spec.rest_length * 0.92).unwrap();
        assert!(!shortened.bulge); // 1.1 * 0.92 > 1
        let more = channel_state(&spec, spec.rest_length * 0.90).unwrap();
        assert!(more.bulge); // 1.1 * 0.90 < 1
    }

    #[test]
    fn gaps_unbent_all_at_pre_stretch() {
        let p = DesignParams::default();
        let gaps = gaps_from_bend(&p, BendState::default()).unwrap();
        assert_eq!(gaps.len(), 4);
        for g in gaps {
            assert_abs_diff_eq!(g.state.stretch, p.silicone.pre_stretch, epsilon = 1e-12);
        }
    }

    #[test]
    fn gaps_pitch_splits_top_bottom() {
        let p = DesignParams::default();
        let gaps = gaps_from_bend(&p, BendState::new(10f64.to_radians(), 0.0)).unwrap();
        let lambda0 = p.silicone.pre_stretch;
        for g in gaps {
            match g.edge {
                ChannelEdge::Top => assert!(g.state.stretch > lambda0),
                ChannelEdge::Bottom => assert!(g.state.stretch < lambda0),
            }
        }
    }

    #[test]
    fn gaps_yaw_splits_chains() {
        let p = DesignParams::default();
        let gaps = gaps_from_bend(&p, BendState::new(0.0, 16f64.to_radians())).unwrap();
        let lambda0 = p.silicone.pre_stretch;
        for g in gaps {
            match g.chain {
                ChainSide::Left => assert!(g.state.stretch < lambda0),
                ChainSide::Right => assert!(g.state.stretch > lambda0),
            }
        }
    }
}

//! Randomised invariants over the kinematics, geometry and material models.

use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use crawler_core::bend::{pitch_path, yaw_path, BendState};
use crawler_core::compliance::{channel_state, uniaxial_stress, SiliconeSpec};
use crawler_core::design::{lug_separation_at, sprocket_torque, DesignParams};
use crawler_core::locomotion::{
    forward_kinematics, ik_bend, parse_plan, plan, plan_to_text, AssemblyState,
    EnvironmentDescriptor, MotionPrimitive, PlanConfig, RobotAssembly,
};

fn in_limit_angle() -> impl Strategy<Value = f64> {
    (-32f64..32f64).prop_map(f64::to_radians)
}

proptest! {
    #[test]
    fn sprocket_torque_is_bilinear(r in 0.1f64..10.0, tau in 0.0f64..50.0, k in 0.5f64..4.0) {
        let base = DesignParams {
            gear_ratio: r,
            drive_motor_torque: tau,
            ..DesignParams::default()
        };
        let scaled_ratio = DesignParams { gear_ratio: k * r, ..base.clone() };
        let scaled_torque = DesignParams { drive_motor_torque: k * tau, ..base.clone() };
        let t = sprocket_torque(&base);
        prop_assert!((sprocket_torque(&scaled_ratio) - k * t).abs() <= 1e-9 * (1.0 + t.abs()));
        prop_assert!((sprocket_torque(&scaled_torque) - k * t).abs() <= 1e-9 * (1.0 + t.abs()));
    }

    #[test]
    fn lug_separation_grows_with_angle_and_peaks_at_limits(
        theta in 0f64..32.0,
        phi in 0f64..32.0,
    ) {
        let p = DesignParams::default();
        let (d1, d2, req) = lug_separation_at(&p, theta.to_radians(), phi.to_radians());
        let (d1m, d2m, req_max) =
            lug_separation_at(&p, p.joint_limit_pitch, p.joint_limit_yaw);
        prop_assert!(d1 <= d1m + 1e-12);
        prop_assert!(d2 <= d2m + 1e-12);
        prop_assert!(req <= req_max + 1e-12);
        prop_assert!(req + 1e-15 >= d1.max(d2));
    }

    #[test]
    fn pitch_sides_swap_under_sign_flip(theta in in_limit_angle()) {
        let p = DesignParams::default();
        let fwd = pitch_path(&p, theta).unwrap();
        let rev = pitch_path(&p, -theta).unwrap();
        prop_assert!((fwd.len_a - rev.len_a).abs() < 1e-12);
        prop_assert!((fwd.len_c - rev.len_c).abs() < 1e-12);
    }

    #[test]
    fn yaw_deltas_balance(phi in in_limit_angle()) {
        let p = DesignParams::default();
        let r = yaw_path(&p, phi, p.plate_separation).unwrap();
        prop_assert!(r.delta_y >= 0.0);
        prop_assert!((r.len_long_side + r.len_short_side - 2.0 * p.plate_separation).abs() < 1e-12);
        prop_assert!((r.loop_delta_long + r.loop_delta_short).abs() < 1e-15);
    }

    #[test]
    fn silicone_volume_is_conserved(gap in 0.005f64..0.08) {
        let spec = SiliconeSpec::default();
        let s = channel_state(&spec, gap).unwrap();
        let volume_now = s.channel_width * s.channel_height * s.stretch * spec.rest_length
            / spec.pre_stretch;
        // Unstretched material length: the segment sits pre-stretched in a
        // rest_length gap.
        let volume_rest = spec.width * spec.thickness * spec.rest_length / spec.pre_stretch;
        prop_assert!((volume_now / volume_rest - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stress_monotone_in_stretch(lambda in 0.5f64..2.99) {
        let spec = SiliconeSpec::default();
        let h = 1e-6;
        let lo = uniaxial_stress(&spec, lambda).unwrap();
        let hi = uniaxial_stress(&spec, lambda + h).unwrap();
        prop_assert!(hi > lo);
    }

    #[test]
    fn planned_bends_respect_joint_limits(
        heights in proptest::collection::vec(
            proptest::collection::vec(-0.05f64..0.05, 6),
            3,
        ),
        cell in 0.05f64..0.3,
    ) {
        let assembly = RobotAssembly::snake(3, DesignParams::default()).unwrap();
        let env = EnvironmentDescriptor::UnevenTerrain3D { heights, cell_size: cell };
        let primitives = plan(&assembly, &env, &PlanConfig::default()).unwrap();
        for p in primitives {
            if let MotionPrimitive::SetBend { theta, phi, .. } = p {
                prop_assert!(theta.abs() <= 32f64.to_radians() + 1e-12);
                prop_assert!(phi.abs() <= 32f64.to_radians() + 1e-12);
            }
        }
    }

    #[test]
    fn fk_frames_are_orthonormal(
        bends in proptest::collection::vec((in_limit_angle(), in_limit_angle()), 3),
    ) {
        let assembly = RobotAssembly::snake(3, DesignParams::default()).unwrap();
        let state = AssemblyState {
            module_bends: bends.iter().map(|&(t, p)| BendState::new(t, p)).collect(),
            connector_angles: vec![0.0; 2],
        };
        let frames = forward_kinematics(&assembly, &state).unwrap();
        for f in &frames {
            let m = f.tip.rotation.to_rotation_matrix();
            let should_be_identity = m.matrix() * m.matrix().transpose();
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((should_be_identity[(i, j)] - want).abs() < 1e-10);
                }
            }
            prop_assert!((m.matrix().determinant() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn fk_composes_associatively(
        t in in_limit_angle(),
        p in in_limit_angle(),
    ) {
        // The chain built in one pass must equal composing per-module
        // transforms pairwise.
        let assembly = RobotAssembly::snake(2, DesignParams::default()).unwrap();
        let state = AssemblyState {
            module_bends: vec![BendState::new(t, p); 2],
            connector_angles: vec![0.0],
        };
        let frames = forward_kinematics(&assembly, &state).unwrap();
        let (_, tip) = crawler_core::locomotion::module_transform(
            &assembly.modules[0],
            BendState::new(t, p),
        );
        let composed = tip * tip;
        let direct = frames[1].tip;
        prop_assert!((composed.translation.vector - direct.translation.vector).norm() < 1e-10);
        prop_assert!(composed.rotation.angle_to(&direct.rotation) < 1e-10);
    }

    #[test]
    fn ik_round_trips_curvature(kappa in 0.01f64..2.3, plane in 0f64..std::f64::consts::TAU) {
        let params = DesignParams::default();
        let sol = ik_bend(&params, kappa, plane).unwrap();
        if !sol.saturated {
            let back = sol.bend.theta.hypot(sol.bend.phi) / params.module_length;
            prop_assert!((back - kappa).abs() <= 0.02 * kappa);
        }
    }

    #[test]
    fn plan_text_round_trips(speed in 0.001f64..1.0, theta in -32f64..32.0) {
        let original = vec![
            MotionPrimitive::SetBend {
                module: 1,
                theta: theta.to_radians(),
                phi: theta.to_radians() / 2.0,
            },
            MotionPrimitive::Crawl { speed },
        ];
        let parsed = parse_plan(&plan_to_text(&original)).unwrap();
        prop_assert_eq!(parsed.len(), 2);
        match (&parsed[0], &original[0]) {
            (
                MotionPrimitive::SetBend { theta: a, phi: b, module: m },
                MotionPrimitive::SetBend { theta: c, phi: d, module: n },
            ) => {
                prop_assert_eq!(m, n);
                prop_assert!((a - c).abs() < 1e-8);
                prop_assert!((b - d).abs() < 1e-8);
            }
            _ => prop_assert!(false, "primitive kind changed in round trip"),
        }
    }
}

#[test]
fn zero_bend_fk_equals_translation() {
    let assembly = RobotAssembly::snake(4, DesignParams::default()).unwrap();
    let frames =
        forward_kinematics(&assembly, &AssemblyState::neutral(&assembly)).unwrap();
    assert_abs_diff_eq!(
        frames.last().unwrap().tip.translation.x,
        4.0 * 0.24,
        epsilon = 1e-12
    );
}

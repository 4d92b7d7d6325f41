//! Kinematic design and simulation library for omnidirectional bendable
//! crawler modules.
//!
//! The crate is organised around the life cycle of a module design:
//!
//! * [`design`] — the parameter set describing one module and the closed-form
//!   design constraints (sprocket torque split, inter-lug separation,
//!   geometric validity).
//! * [`bend`] — chain path-length geometry under pitch and yaw bending, the
//!   tensioner correction, and a discrete-chain oracle that verifies the
//!   closed forms by brute force.
//! * [`compliance`] — the embedded silicone guide channel: incompressible
//!   neo-Hookean uniaxial response and per-gap stretch induced by bending.
//! * [`locomotion`] — motion primitives, locomotion-mode decomposition,
//!   the rule-table planner, simplified bend IK and forward kinematics of
//!   snake, in-pipe and quadruped assemblies.
//! * [`sim`] — a deterministic, tick-based kinematic simulator with
//!   per-tick constraint checking and CSV trace export.
//!
//! All angles are radians internally; degrees appear only at file and CLI
//! boundaries. Lengths are metres, forces newtons, stresses pascals.

pub mod bend;
pub mod compliance;
pub mod design;
pub mod error;
pub mod locomotion;
pub mod sim;

pub use error::{Error, Result};

//! The entanglement-enhancing prefix block: H(q0) · CRX(2πθ; q0→q1) · H(q0).
//!
//! `theta` is a fraction in [0, 0.5]: the block is the identity at 0 and maps
//! |00> to a maximally entangled state at 0.5.

use std::f64::consts::TAU;

use super::circuit::{Circuit, GateKind};
use super::AnsatzError;

pub const EE_THETA_MAX: f64 = 0.5;

pub fn build_ee_block(theta: f64) -> Result<Circuit, AnsatzError> {
    if !(0.0..=EE_THETA_MAX).contains(&theta) {
        return Err(AnsatzError::OutOfRange(theta));
    }
    let mut c = Circuit::new(2);
    c.push(GateKind::H, &[0], None)?;
    c.push(GateKind::CRX, &[0, 1], Some(TAU * theta))?;
    c.push(GateKind::H, &[0], None)?;
    Ok(c)
}

//! The architecture-search environment: one target state, one growing
//! circuit.

use super::{reward, QasConfig, QasError};
use crate::ansatz::{build_ee_block, encode, Circuit};
use crate::qcore::{apply_unitary, DensityMatrix};
use crate::vqsd::{is_admissible, optimize_params, CostEvaluator};

#[derive(Debug, Clone)]
pub struct EnvState {
    pub target_rho: DensityMatrix,
    /// `EE(θ) ρ EE(θ)†`, the state the searched circuit acts on.
    pub effective_rho: DensityMatrix,
    pub circuit: Circuit,
    pub step: usize,
    pub cost_now: f64,
    pub ee_theta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub cost: f64,
    pub reward: f64,
    pub success: bool,
    pub terminal: bool,
}

impl EnvState {
    pub fn new(target_rho: DensityMatrix, ee_theta: f64) -> Result<Self, QasError> {
        if target_rho.n_qubits() != 2 {
            return Err(QasError::Config("target state must have two qubits".into()));
        }
        let ee = build_ee_block(ee_theta)?;
        let effective_rho = apply_unitary(&target_rho, &ee.to_unitary()?)?;
        let mut env = Self {
            target_rho,
            effective_rho,
            circuit: Circuit::new(2),
            step: 0,
            cost_now: 0.0,
            ee_theta,
        };
        env.reset()?;
        Ok(env)
    }

    pub fn reset(&mut self) -> Result<(), QasError> {
        self.circuit = Circuit::new(2);
        self.step = 0;
        self.cost_now = crate::vqsd::cost(&self.effective_rho, &self.circuit)?;
        Ok(())
    }

    pub fn observation(&self, d_max: usize) -> Result<Vec<f64>, QasError> {
        Ok(encode(&self.circuit, d_max)?.values)
    }

    /// Appends the gate, retrains all parameters from the previous optimum
    /// and scores the result.
    pub fn step(&mut self, action: usize, cfg: &QasConfig) -> Result<StepOutcome, QasError> {
        if self.step >= cfg.d_max {
            return Err(QasError::Config("episode already at the step cap".into()));
        }
        self.circuit.push_action(action)?;
        self.step += 1;
        let report = optimize_params(&self.effective_rho, &self.circuit, cfg.budget, None)?;
        self.circuit.set_params(&report.params_opt)?;
        let cost = report.cost;
        let success = is_admissible(cost, cfg.zeta);
        let r = reward(cost, cfg.zeta, cfg.r_success);
        self.cost_now = cost;
        if success {
            self.polish(cfg)?;
        }
        Ok(StepOutcome {
            cost,
            reward: r,
            success,
            terminal: success || self.step >= cfg.d_max,
        })
    }

    /// One extra optimisation with ten times the budget after the first
    /// success; only the reported final cost benefits.
    fn polish(&mut self, cfg: &QasConfig) -> Result<(), QasError> {
        let report = optimize_params(&self.effective_rho, &self.circuit, cfg.budget * 10, None)?;
        if report.cost < self.cost_now {
            self.circuit.set_params(&report.params_opt)?;
            self.cost_now = report.cost;
        }
        debug_assert!({
            let e = CostEvaluator::new(&self.effective_rho, &self.circuit)?;
            (e.eval(self.circuit.params())? - self.cost_now).abs() < 1e-12
        });
        Ok(())
    }
}

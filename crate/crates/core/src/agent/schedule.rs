use serde::{Deserialize, Serialize};

/// Multiplicative ε decay with a floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonSchedule {
    pub value: f64,
    pub decay: f64,
    pub floor: f64,
}

impl Default for EpsilonSchedule {
    fn default() -> Self {
        Self {
            value: 1.0,
            decay: 0.99995,
            floor: 0.05,
        }
    }
}

impl EpsilonSchedule {
    pub fn new(start: f64, decay: f64, floor: f64) -> Self {
        Self {
            value: start.max(floor),
            decay,
            floor,
        }
    }

    pub fn fixed(value: f64) -> Self {
        Self {
            value,
            decay: 1.0,
            floor: value,
        }
    }

    pub fn step(&mut self) {
        self.value = (self.value * self.decay).max(self.floor);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_and_floor() {
        let mut e = EpsilonSchedule::default();
        for _ in 0..1000 {
            e.step();
        }
        assert!((e.value - 0.99995f64.powi(1000)).abs() < 1e-12);
        let t_floor = (0.05f64.ln() / 0.99995f64.ln()).ceil() as usize;
        assert!((59_000..60_000).contains(&t_floor));
        for _ in 1000..t_floor + 10 {
            e.step();
        }
        assert_eq!(e.value, 0.05);
    }
}

//! Nelder–Mead simplex with dimension-adaptive coefficients
//! (Gao & Han, 2012), used as the gradient-free parameter trainer.

/// Result of one minimisation.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub evals: usize,
}

#[derive(Debug, Clone)]
pub struct NelderMead {
    /// Initial simplex edge length.
    pub step: f64,
    /// Stop when the spread of simplex values falls below this.
    pub f_tol: f64,
    /// Restarts from the best vertex after convergence.
    pub restarts: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            step: 0.5,
            f_tol: 1e-8,
            restarts: 1,
        }
    }
}

struct Budgeted<F> {
    f: F,
    used: usize,
    budget: usize,
    best: (Vec<f64>, f64),
}

impl<F: FnMut(&[f64]) -> f64> Budgeted<F> {
    fn eval(&mut self, x: &[f64]) -> Option<f64> {
        if self.used >= self.budget {
            return None;
        }
        self.used += 1;
        let v = (self.f)(x);
        let v = if v.is_nan() { f64::INFINITY } else { v };
        if v < self.best.1 {
            self.best = (x.to_vec(), v);
        }
        Some(v)
    }
}

impl NelderMead {
    /// Minimises `f` from `x0` using at most `budget` evaluations. The
    /// returned point is never worse than `x0`.
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, f: F, x0: &[f64], budget: usize) -> Minimum {
        let budget = budget.max(1);
        let mut obj = Budgeted {
            f,
            used: 0,
            budget,
            best: (x0.to_vec(), f64::INFINITY),
        };
        let f0 = obj.eval(x0).expect("budget is at least one");
        if x0.is_empty() {
            return Minimum {
                x: Vec::new(),
                f: f0,
                evals: obj.used,
            };
        }
        let mut start = (x0.to_vec(), f0);
        for _ in 0..=self.restarts {
            if self.run(&mut obj, start).is_none() {
                break;
            }
            start = obj.best.clone();
        }
        Minimum {
            x: obj.best.0,
            f: obj.best.1,
            evals: obj.used,
        }
    }

    /// One simplex run. Returns `None` when the budget ran out.
    fn run<F: FnMut(&[f64]) -> f64>(&self, obj: &mut Budgeted<F>, start: (Vec<f64>, f64)) -> Option<()> {
        let n = start.0.len();
        let nf = n as f64;
        let alpha = 1.0;
        let beta = 1.0 + 2.0 / nf;
        let gamma = 0.75 - 1.0 / (2.0 * nf);
        let delta = 1.0 - 1.0 / nf;

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push(start.clone());
        for i in 0..n {
            let mut x = start.0.clone();
            x[i] += self.step;
            let v = obj.eval(&x)?;
            simplex.push((x, v));
        }

        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let spread = simplex[n].1 - simplex[0].1;
            if spread <= self.f_tol {
                return Some(());
            }
            let mut centroid = vec![0.0; n];
            for (x, _) in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / nf;
                }
            }
            let worst = simplex[n].clone();
            let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&worst.0).map(|(c, w)| c + t * (c - w)).collect() };

            let xr = along(alpha);
            let fr = obj.eval(&xr)?;
            if fr < simplex[0].1 {
                let xe = along(alpha * beta);
                let fe = obj.eval(&xe)?;
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < simplex[n - 1].1 {
                simplex[n] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr < worst.1 {
                let xc = along(alpha * gamma);
                let fc = obj.eval(&xc)?;
                (xc, fc)
            } else {
                let xc = along(-gamma);
                let fc = obj.eval(&xc)?;
                (xc, fc)
            };
            if fc < fr.min(worst.1) {
                simplex[n] = (xc, fc);
                continue;
            }
            // Shrink towards the best vertex.
            let best = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                let x: Vec<f64> = best.iter().zip(&vertex.0).map(|(b, v)| b + delta * (v - b)).collect();
                let v = obj.eval(&x)?;
                *vertex = (x, v);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let nm = NelderMead::default();
        let m = nm.minimize(|x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2), &[0.0, 0.0], 500);
        assert!(m.f < 1e-7, "{m:?}");
        assert!(m.evals <= 500);
    }

    #[test]
    fn rosenbrock() {
        let nm = NelderMead {
            f_tol: 1e-14,
            ..Default::default()
        };
        let m = nm.minimize(
            |x| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2),
            &[-1.2, 1.0],
            4000,
        );
        assert!((m.x[0] - 1.0).abs() < 1e-3 && (m.x[1] - 1.0).abs() < 1e-3, "{m:?}");
    }

    #[test]
    fn never_worse_than_start_and_respects_budget() {
        let nm = NelderMead::default();
        let f = |x: &[f64]| x.iter().map(|v| v.sin() + 1.0).sum::<f64>();
        let x0 = [0.3, -0.2, 0.9];
        let m = nm.minimize(f, &x0, 5);
        assert!(m.f <= f(&x0));
        assert_eq!(m.evals, 5);
    }

    #[test]
    fn empty_parameter_vector() {
        let m = NelderMead::default().minimize(|_| 4.2, &[], 100);
        assert_eq!(m.evals, 1);
        assert_eq!(m.f, 4.2);
    }

    #[test]
    fn larger_budget_is_never_worse() {
        let nm = NelderMead::default();
        let f = |x: &[f64]| {
            x.iter()
                .enumerate()
                .map(|(i, v)| (v - i as f64).powi(2) * (1.0 + v.cos()))
                .sum::<f64>()
        };
        let x0 = vec![0.5; 6];
        for b in [10, 37, 80, 150] {
            let small = nm.minimize(f, &x0, b);
            let large = nm.minimize(f, &x0, 2 * b);
            assert!(large.f <= small.f);
        }
    }
}

//! Derivative-free minimization (Nelder-Mead with dimension-adaptive
//! coefficients and restarts).

#[derive(Clone, Debug)]
pub struct NelderMead {
    /// Edge length of the initial simplex along each axis.
    pub initial_step: f64,
    /// Stop once the spread of function values over the simplex is below this.
    pub f_tol: f64,
    /// ...and every vertex is within this distance (max-norm) of the best.
    pub x_tol: f64,
    pub max_evaluations: usize,
    /// Fresh simplices built around the incumbent after convergence. The run
    /// ends when a restart improves the value by less than `f_tol`.
    pub max_restarts: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self { initial_step: 0.1, f_tol: 1e-12, x_tol: 1e-10, max_evaluations: 100_000, max_restarts: 20 }
    }
}

#[derive(Clone, Debug)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl NelderMead {
    pub fn minimize(&self, mut f: impl FnMut(&[f64]) -> f64, x0: &[f64]) -> Minimum {
        let mut evaluations = 0;
        let mut best = self.run_once(&mut f, x0, self.initial_step, &mut evaluations);
        for restart in 0..self.max_restarts {
            if evaluations >= self.max_evaluations {
                break;
            }
            let step = (self.initial_step * 0.5f64.powi(restart as i32 + 1)).max(self.x_tol * 10.0);
            let next = self.run_once(&mut f, &best.x, step, &mut evaluations);
            let improvement = best.value - next.value;
            let settled = next.converged && improvement < self.f_tol;
            if next.value < best.value {
                best = next;
            }
            if settled {
                best.converged = true;
                best.evaluations = evaluations;
                return best;
            }
        }
        best.converged = false;
        best.evaluations = evaluations;
        best
    }

    fn run_once(&self, f: &mut impl FnMut(&[f64]) -> f64, x0: &[f64], step: f64, evaluations: &mut usize) -> Minimum {
        let n = x0.len();
        let nf = n as f64;
        // Gao & Han coefficients keep the simplex from collapsing in higher dimensions.
        let (alpha, gamma, rho, sigma) = if n > 2 {
            (1.0, 1.0 + 2.0 / nf, 0.75 - 1.0 / (2.0 * nf), 1.0 - 1.0 / nf)
        } else {
            (1.0, 2.0, 0.5, 0.5)
        };

        let mut eval = |x: &[f64], count: &mut usize| {
            *count += 1;
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((x0.to_vec(), eval(x0, evaluations)));
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += step;
            let v = eval(&x, evaluations);
            simplex.push((x, v));
        }

        let mut converged = false;
        while *evaluations < self.max_evaluations {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let spread = simplex[n].1 - simplex[0].1;
            let size = simplex[1..]
                .iter()
                .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if spread <= self.f_tol && size <= self.x_tol {
                converged = true;
                break;
            }

            let centroid: Vec<f64> = (0..n).map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / nf).collect();
            let along = |t: f64, worst: &[f64]| -> Vec<f64> {
                centroid.iter().zip(worst).map(|(c, w)| c + t * (c - w)).collect()
            };
            let worst = simplex[n].0.clone();
            let reflected = along(alpha, &worst);
            let fr = eval(&reflected, evaluations);

            if fr < simplex[0].1 {
                let expanded = along(gamma, &worst);
                let fe = eval(&expanded, evaluations);
                simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            } else if fr < simplex[n - 1].1 {
                simplex[n] = (reflected, fr);
            } else {
                let (candidate, fc) = if fr < simplex[n].1 {
                    let c = along(rho, &worst);
                    let v = eval(&c, evaluations);
                    (c, v)
                } else {
                    let c = along(-rho, &worst);
                    let v = eval(&c, evaluations);
                    (c, v)
                };
                if fc < fr.min(simplex[n].1) {
                    simplex[n] = (candidate, fc);
                } else {
                    let best = simplex[0].0.clone();
                    for vertex in simplex.iter_mut().skip(1) {
                        let x: Vec<f64> = best.iter().zip(&vertex.0).map(|(b, v)| b + sigma * (v - b)).collect();
                        let v = eval(&x, evaluations);
                        *vertex = (x, v);
                    }
                }
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, value) = simplex.swap_remove(0);
        Minimum { x, value, evaluations: *evaluations, converged }
    }
}

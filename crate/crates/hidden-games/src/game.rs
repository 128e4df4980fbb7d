//! Bilinear zero-sum payoff matrices and their interior mixed equilibria.
//!
//! A game is just an `N x M` payoff matrix `U`; the minimizing player mixes
//! over rows, the maximizing player over columns. For `2x2` games the
//! interior equilibrium has closed forms in terms of
//! `v = u00 - u01 - u10 + u11`; for larger square games it is recovered by
//! solving the two bordered KKT systems. Both routes also produce the
//! Lagrange multipliers `lambda*`, `mu*` that the constrained multi-strategy
//! dynamics conserve energy around.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Tolerance on the KKT residuals of a computed equilibrium.
pub const KKT_TOL: f64 = 1e-10;

/// Residual ceiling for the least-squares route used on non-square games.
pub const LSTSQ_RESIDUAL_TOL: f64 = 1e-8;

/// An `N x M` bilinear zero-sum game. Immutable after construction.
#[derive(Debug, Clone)]
pub struct BilinearGame {
    u: Matrix,
}

impl BilinearGame {
    /// Validates and wraps a payoff matrix. Requires `N >= 2`, `M >= 2`
    /// and finite entries.
    pub fn new(rows: &[Vec<f64>]) -> Result<Self> {
        let u = Matrix::from_rows(rows)?;
        Self::from_matrix(u)
    }

    /// Same as [`BilinearGame::new`] but from a flat row-major slice.
    pub fn from_row_major(n: usize, m: usize, data: &[f64]) -> Result<Self> {
        let u = Matrix::from_row_major(n, m, data)?;
        Self::from_matrix(u)
    }

    fn from_matrix(u: Matrix) -> Result<Self> {
        if u.rows() < 2 || u.cols() < 2 {
            return Err(Error::Shape(format!(
                "payoff matrix must be at least 2x2, got {}x{}",
                u.rows(),
                u.cols()
            )));
        }
        if !u.is_finite() {
            return Err(Error::Domain("payoff matrix has non-finite entries".into()));
        }
        Ok(BilinearGame { u })
    }

    /// Builds the 2x2 game with interior equilibrium `(p, q)` and the given
    /// `v = u00 - u01 - u10 + u11`. One matrix per `(p, q, v)` is enough for
    /// experiments, so `u11` is fixed to zero:
    /// `U = [[v(1-p-q), -q v], [-p v, 0]]`.
    pub fn with_equilibrium(p: f64, q: f64, v: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || p == 0.0 || p == 1.0 {
            return Err(Error::Construction(format!("p = {p} must lie in (0, 1)")));
        }
        if !(0.0..=1.0).contains(&q) || q == 0.0 || q == 1.0 {
            return Err(Error::Construction(format!("q = {q} must lie in (0, 1)")));
        }
        if v == 0.0 || !v.is_finite() {
            return Err(Error::Construction("v must be finite and nonzero".into()));
        }
        BilinearGame::new(&[vec![v * (1.0 - p - q), -q * v], vec![-p * v, 0.0]])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.u.rows()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.u.cols()
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.u.get(i, j)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.u
    }

    /// `v = u00 - u01 - u10 + u11` for 2x2 games, `None` otherwise.
    pub fn v(&self) -> Option<f64> {
        if self.n() == 2 && self.m() == 2 {
            Some(self.entry(0, 0) - self.entry(0, 1) - self.entry(1, 0) + self.entry(1, 1))
        } else {
            None
        }
    }

    /// The bilinear payoff `xᵀ U y`.
    pub fn payoff(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        if x.len() != self.n() {
            return Err(Error::Shape(format!(
                "payoff: x has length {}, expected {}",
                x.len(),
                self.n()
            )));
        }
        if y.len() != self.m() {
            return Err(Error::Shape(format!(
                "payoff: y has length {}, expected {}",
                y.len(),
                self.m()
            )));
        }
        let mut acc = 0.0;
        for i in 0..self.n() {
            let mut row = 0.0;
            for j in 0..self.m() {
                row += self.entry(i, j) * y[j];
            }
            acc += x[i] * row;
        }
        Ok(acc)
    }

    /// Computes the interior mixed equilibrium and the KKT multipliers.
    ///
    /// For 2x2 games uses the closed forms `p = -(u10 - u11)/v`,
    /// `q = -(u01 - u11)/v`; otherwise solves the bordered systems
    /// `{Σ_i u_ij p_i + mu = 0 ∀j, Σ p_i = 1}` and
    /// `{Σ_j u_ij q_j + lambda = 0 ∀i, Σ q_j = 1}`. Non-square games fall
    /// back to least squares and are accepted only when the residual stays
    /// below [`LSTSQ_RESIDUAL_TOL`].
    pub fn solve_interior_equilibrium(&self) -> Result<InteriorEquilibrium> {
        let (n, m) = (self.n(), self.m());
        let eq = if n == 2 && m == 2 {
            let v = self.v().expect("2x2 game");
            if v.abs() <= 1e-14 * self.u.max_abs().max(1.0) {
                return Err(Error::NoInteriorEquilibrium);
            }
            let p0 = -(self.entry(1, 0) - self.entry(1, 1)) / v;
            let q0 = -(self.entry(0, 1) - self.entry(1, 1)) / v;
            let p = vec![p0, 1.0 - p0];
            let q = vec![q0, 1.0 - q0];
            let (lambda_star, mu_star) = self.multipliers_for(&p, &q)?;
            InteriorEquilibrium {
                p,
                q,
                lambda_star,
                mu_star,
                v: Some(v),
            }
        } else {
            // Column-player system: unknowns (q_1..q_M, lambda).
            let mut a_q = Matrix::zeros(n + 1, m + 1);
            let mut b_q = vec![0.0; n + 1];
            for i in 0..n {
                for j in 0..m {
                    a_q.set(i, j, self.entry(i, j));
                }
                a_q.set(i, m, 1.0);
            }
            for j in 0..m {
                a_q.set(n, j, 1.0);
            }
            b_q[n] = 1.0;

            // Row-player system: unknowns (p_1..p_N, mu).
            let mut a_p = Matrix::zeros(m + 1, n + 1);
            let mut b_p = vec![0.0; m + 1];
            for j in 0..m {
                for i in 0..n {
                    a_p.set(j, i, self.entry(i, j));
                }
                a_p.set(j, n, 1.0);
            }
            for i in 0..n {
                a_p.set(m, i, 1.0);
            }
            b_p[m] = 1.0;

            let sol_q = self.solve_bordered(&a_q, &b_q)?;
            let sol_p = self.solve_bordered(&a_p, &b_p)?;
            let q = sol_q[..m].to_vec();
            let lambda_star = sol_q[m];
            let p = sol_p[..n].to_vec();
            let mu_star = sol_p[n];
            InteriorEquilibrium {
                p,
                q,
                lambda_star,
                mu_star,
                v: None,
            }
        };
        eq.validate(self)?;
        Ok(eq)
    }

    fn solve_bordered(&self, a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
        if a.rows() == a.cols() {
            linalg::solve(a, b)
        } else {
            let (x, residual) = linalg::least_squares(a, b)?;
            if residual > LSTSQ_RESIDUAL_TOL {
                return Err(Error::SingularSystem { residual });
            }
            Ok(x)
        }
    }

    /// The multipliers implied by a fully mixed equilibrium:
    /// `lambda* = -Σ_j u_ij q_j` (identical over rows i) and
    /// `mu* = -Σ_i u_ij p_i` (identical over columns j).
    pub(crate) fn multipliers_for(&self, p: &[f64], q: &[f64]) -> Result<(f64, f64)> {
        let row_values = self.u.matvec(q)?;
        let col_values = self.u.transpose_matvec(p)?;
        let lambda_star = -row_values[0];
        let mu_star = -col_values[0];
        let mut deviation = 0.0f64;
        for rv in &row_values {
            deviation = deviation.max((rv + lambda_star).abs());
        }
        for cv in &col_values {
            deviation = deviation.max((cv + mu_star).abs());
        }
        if deviation > KKT_TOL {
            return Err(Error::NotAnEquilibrium { deviation });
        }
        Ok((lambda_star, mu_star))
    }
}

/// A fully mixed equilibrium `(p, q)` with its KKT multipliers. For 2x2
/// games `v` carries `u00 - u01 - u10 + u11`.
#[derive(Debug, Clone)]
pub struct InteriorEquilibrium {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub lambda_star: f64,
    pub mu_star: f64,
    pub v: Option<f64>,
}

impl InteriorEquilibrium {
    fn validate(&self, game: &BilinearGame) -> Result<()> {
        for (label, vec) in [("p", &self.p), ("q", &self.q)] {
            for (k, &x) in vec.iter().enumerate() {
                if !(x > 0.0 && x < 1.0) {
                    return Err(Error::NotFullyMixed(format!(
                        "{label}[{k}] = {x} is not strictly inside (0, 1)"
                    )));
                }
            }
            let sum: f64 = vec.iter().sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::NotFullyMixed(format!(
                    "{label} sums to {sum}, expected 1 within 1e-12"
                )));
            }
        }
        // KKT residuals at tolerance 1e-10.
        let row_values = game.matrix().matvec(&self.q)?;
        let col_values = game.matrix().transpose_matvec(&self.p)?;
        for rv in &row_values {
            if (rv + self.lambda_star).abs() > KKT_TOL {
                return Err(Error::NotAnEquilibrium {
                    deviation: (rv + self.lambda_star).abs(),
                });
            }
        }
        for cv in &col_values {
            if (cv + self.mu_star).abs() > KKT_TOL {
                return Err(Error::NotAnEquilibrium {
                    deviation: (cv + self.mu_star).abs(),
                });
            }
        }
        Ok(())
    }

    /// Equilibrium value `pᵀ U q`.
    pub fn value(&self, game: &BilinearGame) -> Result<f64> {
        game.payoff(&self.p, &self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matching_pennies() -> BilinearGame {
        BilinearGame::new(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap()
    }

    fn asymmetric() -> BilinearGame {
        BilinearGame::new(&[vec![2.0, -1.0], vec![-1.0, 1.0]]).unwrap()
    }

    fn rps() -> BilinearGame {
        BilinearGame::new(&[
            vec![0.0, -1.0, 1.0],
            vec![1.0, 0.0, -1.0],
            vec![-1.0, 1.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn payoff_pure_strategies() {
        let g = matching_pennies();
        assert_eq!(g.payoff(&[1.0, 0.0], &[1.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn payoff_equilibrium_row_is_indifferent() {
        let g = matching_pennies();
        assert_eq!(g.payoff(&[0.5, 0.5], &[0.3, 0.7]).unwrap(), 0.0);
    }

    #[test]
    fn payoff_asymmetric_hand_value() {
        // Hand triple product, cross-checked by brute-force summation below.
        let g = asymmetric();
        let x = [0.4, 0.6];
        let y = [0.4, 0.6];
        let got = g.payoff(&x, &y).unwrap();
        let mut brute = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                brute += x[i] * g.entry(i, j) * y[j];
            }
        }
        assert!((got - 0.2).abs() < 1e-15);
        assert!((got - brute).abs() < 1e-15);
    }

    #[test]
    fn payoff_shape_errors() {
        let g = matching_pennies();
        assert!(matches!(
            g.payoff(&[1.0, 0.0, 0.0], &[1.0, 0.0]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn matching_pennies_equilibrium() {
        let eq = matching_pennies().solve_interior_equilibrium().unwrap();
        assert!((eq.p[0] - 0.5).abs() < 1e-14);
        assert!((eq.q[0] - 0.5).abs() < 1e-14);
        assert_eq!(eq.v, Some(4.0));
        assert!(eq.lambda_star.abs() < 1e-14);
        assert!(eq.mu_star.abs() < 1e-14);
    }

    #[test]
    fn asymmetric_equilibrium_closed_forms() {
        // v = 5, p = q = (0.4, 0.6), lambda* = mu* = -0.2 by hand KKT rows.
        let eq = asymmetric().solve_interior_equilibrium().unwrap();
        assert_eq!(eq.v, Some(5.0));
        assert!((eq.p[0] - 0.4).abs() < 1e-14);
        assert!((eq.q[0] - 0.4).abs() < 1e-14);
        assert!((eq.lambda_star + 0.2).abs() < 1e-14);
        assert!((eq.mu_star + 0.2).abs() < 1e-14);
    }

    #[test]
    fn rps_equilibrium_from_bordered_system() {
        let eq = rps().solve_interior_equilibrium().unwrap();
        for k in 0..3 {
            assert!((eq.p[k] - 1.0 / 3.0).abs() < 1e-12);
            assert!((eq.q[k] - 1.0 / 3.0).abs() < 1e-12);
        }
        assert!(eq.lambda_star.abs() < 1e-12);
        assert!(eq.mu_star.abs() < 1e-12);
        assert_eq!(eq.v, None);
    }

    #[test]
    fn rps_matches_independent_dense_solve() {
        // Independent route: assemble the full 4x4 bordered system and solve
        // it directly, bypassing solve_interior_equilibrium.
        let g = rps();
        let mut a = Matrix::zeros(4, 4);
        for i in 0..3 {
            for j in 0..3 {
                a.set(i, j, g.entry(i, j));
            }
            a.set(i, 3, 1.0);
            a.set(3, i, 1.0);
        }
        let sol = linalg::solve(&a, &[0.0, 0.0, 0.0, 1.0]).unwrap();
        let eq = g.solve_interior_equilibrium().unwrap();
        for k in 0..3 {
            assert!((sol[k] - eq.q[k]).abs() < 1e-12);
        }
        assert!((sol[3] - eq.lambda_star).abs() < 1e-12);
    }

    #[test]
    fn degenerate_game_has_no_interior_equilibrium() {
        let g = BilinearGame::new(&[vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(
            g.solve_interior_equilibrium(),
            Err(Error::NoInteriorEquilibrium)
        ));
    }

    #[test]
    fn boundary_equilibrium_is_rejected() {
        // Dominant row strategy: p would leave (0, 1).
        let g = BilinearGame::new(&[vec![3.0, 1.0], vec![-1.0, 2.0]]).unwrap();
        let res = g.solve_interior_equilibrium();
        assert!(matches!(res, Err(Error::NotFullyMixed(_))));
    }

    #[test]
    fn equilibrium_indifference_across_rows() {
        let g = asymmetric();
        let eq = g.solve_interior_equilibrium().unwrap();
        let e0 = g.payoff(&[1.0, 0.0], &eq.q).unwrap();
        let e1 = g.payoff(&[0.0, 1.0], &eq.q).unwrap();
        assert!((e0 - e1).abs() < 1e-10);
        let c0 = g.payoff(&eq.p, &[1.0, 0.0]).unwrap();
        let c1 = g.payoff(&eq.p, &[0.0, 1.0]).unwrap();
        assert!((c0 - c1).abs() < 1e-10);
    }

    #[test]
    fn rescaling_scales_multipliers_only() {
        let g = asymmetric();
        let eq = g.solve_interior_equilibrium().unwrap();
        let scaled = BilinearGame::new(&[vec![6.0, -3.0], vec![-3.0, 3.0]]).unwrap();
        let eq3 = scaled.solve_interior_equilibrium().unwrap();
        for k in 0..2 {
            assert!((eq.p[k] - eq3.p[k]).abs() < 1e-10);
            assert!((eq.q[k] - eq3.q[k]).abs() < 1e-10);
        }
        assert!((eq3.lambda_star - 3.0 * eq.lambda_star).abs() < 1e-10);
        assert!((eq3.mu_star - 3.0 * eq.mu_star).abs() < 1e-10);
    }

    #[test]
    fn with_equilibrium_roundtrips() {
        let g = BilinearGame::with_equilibrium(0.7, 0.4, 10.0).unwrap();
        let eq = g.solve_interior_equilibrium().unwrap();
        assert!((eq.p[0] - 0.7).abs() < 1e-12);
        assert!((eq.q[0] - 0.4).abs() < 1e-12);
        assert_eq!(eq.v, Some(10.0));
    }

    #[test]
    fn brute_force_grid_saddle_agrees_with_closed_form() {
        // Grid oracle over mixtures (p̂, q̂) in steps of 1e-3: the row player
        // minimizes the worst case over columns, the column player maximizes
        // the worst case over rows. Uses only the raw payoff expression.
        let g = asymmetric();
        let eq = g.solve_interior_equilibrium().unwrap();
        let steps = 1000;
        let value = |p: f64, q: f64| {
            p * (g.entry(0, 0) * q + g.entry(0, 1) * (1.0 - q))
                + (1.0 - p) * (g.entry(1, 0) * q + g.entry(1, 1) * (1.0 - q))
        };
        let mut best_p = (f64::INFINITY, 0.0);
        let mut best_q = (f64::NEG_INFINITY, 0.0);
        for k in 0..=steps {
            let t = k as f64 / steps as f64;
            // Worst case over the opponent's grid.
            let mut worst_for_p = f64::NEG_INFINITY;
            let mut worst_for_q = f64::INFINITY;
            for l in 0..=steps {
                let s = l as f64 / steps as f64;
                worst_for_p = worst_for_p.max(value(t, s));
                worst_for_q = worst_for_q.min(value(s, t));
            }
            if worst_for_p < best_p.0 {
                best_p = (worst_for_p, t);
            }
            if worst_for_q > best_q.0 {
                best_q = (worst_for_q, t);
            }
        }
        let resolution = 1.0 / steps as f64;
        assert!((best_p.1 - eq.p[0]).abs() <= resolution + 1e-12);
        assert!((best_q.1 - eq.q[0]).abs() <= resolution + 1e-12);
    }
}

//! Dense two-phase simplex for small covering programs
//!
//! ```text
//! minimize  c · x   subject to  a_j · x >= b_j  (j = 0..m),  x ∈ R^D free
//! ```
//!
//! The program is solved through its dual `max b · y, Σ y_j a_j = c, y >= 0`,
//! which has only `D` equality rows, so every pivot costs `O(D m)`. Pivoting
//! follows Bland's rule, which makes the iteration sequence (and therefore the
//! result) a deterministic function of the input. The primal point is the
//! vector of simplex multipliers of the optimal dual basis.

use crate::error::{Error, Result};

/// Pivot entries below this fraction of the largest entry in their column
/// are treated as zero; accepting them would make the basis numerically
/// singular.
const PIVOT_TOL: f64 = 1e-9;
const MAX_ITERATIONS: usize = 50_000;

#[derive(Clone, Debug)]
pub struct LpSolution<const D: usize> {
    pub x: [f64; D],
    pub objective: f64,
    /// Constraints carrying positive dual weight in the final basis.
    pub active: Vec<usize>,
}

struct Tableau {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let cols = self.cols;
        let inv = 1.0 / self.at(pr, pc);
        for c in 0..cols {
            self.data[pr * cols + c] *= inv;
        }
        self.rhs[pr] *= inv;
        self.data[pr * cols + pc] = 1.0;
        for r in 0..self.rows {
            if r == pr {
                continue;
            }
            let f = self.at(r, pc);
            if f == 0.0 {
                continue;
            }
            for c in 0..cols {
                self.data[r * cols + c] -= f * self.data[pr * cols + c];
            }
            self.rhs[r] -= f * self.rhs[pr];
            self.data[r * cols + pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    /// Maximizes `cost · y` over the columns in `0..enterable` starting from
    /// the current feasible basis.
    fn optimize(&mut self, cost: &[f64], enterable: usize, tol: f64) -> Result<()> {
        let mut in_basis = vec![false; self.cols];
        for &b in &self.basis {
            in_basis[b] = true;
        }
        for _ in 0..MAX_ITERATIONS {
            let entering = (0..enterable).find(|&j| {
                if in_basis[j] {
                    return false;
                }
                let mut d = cost[j];
                for r in 0..self.rows {
                    d -= cost[self.basis[r]] * self.at(r, j);
                }
                d > tol
            });
            let Some(e) = entering else {
                return Ok(());
            };
            let col_max = (0..self.rows).map(|r| self.at(r, e).abs()).fold(0.0, f64::max);
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, e);
                if a <= PIVOT_TOL * col_max {
                    continue;
                }
                let ratio = self.rhs[r] / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((lr, lratio)) => {
                        let tie = (ratio - lratio).abs() <= 1e-12 * (1.0 + lratio.abs());
                        if ratio < lratio && !tie || tie && self.basis[r] < self.basis[lr] {
                            Some((r, ratio))
                        } else {
                            Some((lr, lratio))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                return Err(Error::SolverFailure("dual program is unbounded".into()));
            };
            in_basis[self.basis[r]] = false;
            in_basis[e] = true;
            self.pivot(r, e);
        }
        Err(Error::SolverFailure("iteration limit reached".into()))
    }
}

fn solve_linear<const D: usize>(mut m: [[f64; D]; D], mut v: [f64; D]) -> Option<[f64; D]> {
    for col in 0..D {
        let p = (col..D).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[p][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, p);
        v.swap(col, p);
        let pivot_row = m[col];
        for r in col + 1..D {
            let f = m[r][col] / pivot_row[col];
            for (x, p) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
            v[r] -= f * v[col];
        }
    }
    let mut x = [0.0; D];
    for r in (0..D).rev() {
        let mut s = v[r];
        for c in r + 1..D {
            s -= m[r][c] * x[c];
        }
        x[r] = s / m[r][r];
    }
    Some(x)
}

/// Solves `min cost · x` subject to `rows[j] · x >= rhs[j]`.
pub fn solve_covering<const D: usize>(
    rows: &[[f64; D]],
    rhs: &[f64],
    cost: &[f64; D],
) -> Result<LpSolution<D>> {
    let m = rows.len();
    assert_eq!(m, rhs.len(), "constraint and right-hand side counts differ");
    if m == 0 {
        return Err(Error::SolverFailure("no constraints".into()));
    }
    let scale = rhs.iter().fold(1.0f64, |s, b| s.max(b.abs()));
    let tol = 1e-12 * scale;

    // Dual equality system S·A^T y + art = S·c with S flipping rows so the
    // right-hand side is nonnegative.
    let sign: [f64; D] = std::array::from_fn(|k| if cost[k] < 0.0 { -1.0 } else { 1.0 });
    let cols = m + D;
    let mut data = vec![0.0; D * cols];
    for k in 0..D {
        for (j, row) in rows.iter().enumerate() {
            data[k * cols + j] = sign[k] * row[k];
        }
        data[k * cols + m + k] = 1.0;
    }
    let mut t = Tableau {
        rows: D,
        cols,
        data,
        rhs: (0..D).map(|k| sign[k] * cost[k]).collect(),
        basis: (m..m + D).collect(),
    };

    let mut phase1 = vec![0.0; cols];
    phase1[m..].iter_mut().for_each(|c| *c = -1.0);
    t.optimize(&phase1, m, 1e-12)?;
    let infeasibility: f64 = (0..D)
        .filter(|&r| t.basis[r] >= m)
        .map(|r| t.rhs[r].abs())
        .sum();
    if infeasibility > 1e-9 * (1.0 + cost.iter().fold(0.0f64, |s, c| s.max(c.abs()))) {
        return Err(Error::SolverFailure("primal program is unbounded".into()));
    }
    for r in 0..D {
        if t.basis[r] >= m {
            if let Some(j) = (0..m).find(|&j| !t.basis.contains(&j) && t.at(r, j).abs() > 1e-9) {
                t.pivot(r, j);
            }
        }
    }

    let mut phase2 = vec![0.0; cols];
    phase2[..m].copy_from_slice(rhs);
    t.optimize(&phase2, m, tol)?;

    // Simplex multipliers π solve B^T π = c_B in the sign-flipped system.
    let mut bt = [[0.0; D]; D];
    let mut cb = [0.0; D];
    for (r, &b) in t.basis.iter().enumerate() {
        for k in 0..D {
            bt[r][k] = if b < m {
                sign[k] * rows[b][k]
            } else if b - m == k {
                1.0
            } else {
                0.0
            };
        }
        cb[r] = if b < m { rhs[b] } else { 0.0 };
    }
    let pi = solve_linear(bt, cb)
        .ok_or_else(|| Error::SolverFailure("singular optimal basis".into()))?;
    let x: [f64; D] = std::array::from_fn(|k| sign[k] * pi[k]);
    let objective = (0..D).map(|k| cost[k] * x[k]).sum();
    let mut active: Vec<usize> = (0..D)
        .filter(|&r| t.basis[r] < m && t.rhs[r] > 0.0)
        .map(|r| t.basis[r])
        .collect();
    active.sort_unstable();
    Ok(LpSolution { x, objective, active })
}

use super::OracleError;

pub const DEFAULT_POINTS: usize = 20_000;
const MIN_POINTS: usize = 1_000;
const RENORM: f64 = 1e150;
/// Relative energy resolution of the bisection.
const BISECT_RTOL: f64 = 1e-13;

/// Uniform grid with hard walls at both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_lo: f64,
    pub r_hi: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn new(r_lo: f64, r_hi: f64, n_points: usize) -> Result<Self, OracleError> {
        if !(r_lo.is_finite() && r_hi.is_finite() && r_lo < r_hi) {
            return Err(OracleError::Grid(format!(
                "need finite r_lo < r_hi, got [{r_lo}, {r_hi}]"
            )));
        }
        if n_points < MIN_POINTS {
            return Err(OracleError::Grid(format!(
                "n_points must be at least {MIN_POINTS}, got {n_points}"
            )));
        }
        Ok(GridSpec {
            r_lo,
            r_hi,
            n_points,
        })
    }

    pub fn step(&self) -> f64 {
        (self.r_hi - self.r_lo) / (self.n_points - 1) as f64
    }

    /// Same interval with the step divided by `factor`; grid points nest.
    pub fn refined(&self, factor: usize) -> GridSpec {
        GridSpec {
            n_points: (self.n_points - 1) * factor + 1,
            ..*self
        }
    }

    pub fn point(&self, i: usize) -> f64 {
        self.r_lo + i as f64 * self.step()
    }
}

/// One eigenvalue with its node count. `grid_change` is the relative change
/// from the previous refinement pass (NaN for a single-grid solve).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen {
    pub e: f64,
    pub nodes: usize,
    pub grid_change: f64,
}

/// Potential samples on one grid, converted to g = (V − E₀)/conv later.
struct Sampled {
    v: Vec<f64>,
    h: f64,
    conv: f64,
}

impl Sampled {
    fn new<V: Fn(f64) -> f64>(potential: &V, grid: &GridSpec, conv: f64) -> Result<Self, OracleError> {
        let v = (0..grid.n_points)
            .map(|i| {
                let r = grid.point(i);
                let value = potential(r);
                if value.is_finite() {
                    Ok(value)
                } else {
                    Err(OracleError::Potential { r, value })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Sampled {
            v,
            h: grid.step(),
            conv,
        })
    }

    fn subsample(&self, stride: usize) -> Sampled {
        Sampled {
            v: self.v.iter().step_by(stride).copied().collect(),
            h: self.h * stride as f64,
            conv: self.conv,
        }
    }

    /// Outward Numerov solution with u(r_lo) = 0; returns its interior node
    /// count, which equals the number of eigenvalues below `e`.
    ///
    /// g is capped at 6/h² so the Numerov weights stay ≥ 1/2: in regions
    /// where the cap bites (the wall of a singular potential) the solution
    /// is already negligible, and an uncapped step would be unstable.
    fn count_below(&self, e: f64) -> usize {
        let h2 = self.h * self.h;
        let cap = 6.0 / h2;
        let weight = |v: f64| 1.0 - h2 / 12.0 * ((v - e) / self.conv).min(cap);
        let n = self.v.len();
        let mut f_prev = weight(self.v[0]);
        let mut f_cur = weight(self.v[1]);
        let mut y_prev = 0.0f64;
        let mut y_cur = self.h;
        let mut nodes = 0;
        let mut last_sign = 1.0f64;
        for i in 1..n - 1 {
            let f_next = weight(self.v[i + 1]);
            let y_next = ((12.0 - 10.0 * f_cur) * y_cur - f_prev * y_prev) / f_next;
            if y_next != 0.0 {
                let s = y_next.signum();
                if s != last_sign {
                    nodes += 1;
                    last_sign = s;
                }
            }
            y_prev = y_cur;
            y_cur = y_next;
            f_prev = f_cur;
            f_cur = f_next;
            if y_cur.abs() > RENORM {
                y_prev /= RENORM;
                y_cur /= RENORM;
            }
        }
        nodes
    }

    fn v_min(&self) -> f64 {
        self.v.iter().copied().fold(f64::INFINITY, f64::min)
    }

    #[cfg(test)]
    fn solution(&self, e: f64) -> Vec<f64> {
        let h2 = self.h * self.h;
        let cap = 6.0 / h2;
        let weight = |v: f64| 1.0 - h2 / 12.0 * ((v - e) / self.conv).min(cap);
        let n = self.v.len();
        let mut y = vec![0.0; n];
        y[1] = self.h;
        for i in 1..n - 1 {
            y[i + 1] = ((12.0 - 10.0 * weight(self.v[i])) * y[i] - weight(self.v[i - 1]) * y[i - 1])
                / weight(self.v[i + 1]);
            if y[i + 1].abs() > RENORM {
                for yj in &mut y[..=i + 1] {
                    *yj /= RENORM;
                }
            }
        }
        y
    }
}

fn solve_levels(
    s: &Sampled,
    e_max: f64,
    max_states: usize,
    hints: Option<&[f64]>,
) -> Result<Vec<Eigen>, OracleError> {
    let total = s.count_below(e_max).min(max_states);
    let e_floor = s.v_min();
    let scale = e_max.abs().max((e_max - e_floor).abs());
    let tol = BISECT_RTOL * scale;
    // known (energy, count) samples, kept sorted by energy
    let mut known: Vec<(f64, usize)> = vec![(e_floor, 0), (e_max, s.count_below(e_max))];
    let insert = |known: &mut Vec<(f64, usize)>, e: f64, c: usize| {
        let pos = known.partition_point(|&(x, _)| x < e);
        known.insert(pos, (e, c));
    };
    if let Some(h) = hints {
        for &e in h.iter().take(total) {
            let width = 1e-6 * scale;
            for probe in [e - width, e + width] {
                if probe > e_floor && probe < e_max {
                    let c = s.count_below(probe);
                    insert(&mut known, probe, c);
                }
            }
        }
    }
    let mut out = Vec::with_capacity(total);
    for k in 0..total {
        let lo_idx = known.iter().rposition(|&(_, c)| c <= k).unwrap_or(0);
        let hi_idx = known
            .iter()
            .position(|&(_, c)| c > k)
            .unwrap_or(known.len() - 1);
        let (mut lo, count_lo) = known[lo_idx];
        let (mut hi, count_hi) = known[hi_idx];
        if !(lo < hi && count_lo <= k && count_hi > k) {
            return Err(OracleError::Bracket {
                state: k,
                lo,
                hi,
                count_lo,
                count_hi,
            });
        }
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let c = s.count_below(mid);
            insert(&mut known, mid, c);
            if c > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(Eigen {
            e: 0.5 * (lo + hi),
            nodes: k,
            grid_change: f64::NAN,
        });
    }
    Ok(out)
}

/// Eigenvalues below `e_max` (at most `max_states`) on a single grid, by
/// node-count bisection.
pub fn numerov_eigen<V: Fn(f64) -> f64>(
    potential: V,
    grid: GridSpec,
    conv: f64,
    e_max: f64,
    max_states: usize,
) -> Result<Vec<Eigen>, OracleError> {
    let s = Sampled::new(&potential, &grid, conv)?;
    solve_levels(&s, e_max, max_states, None)
}

/// Solves on `grid` and on `passes` successively halved steps; returns the
/// finest-grid levels with the relative change from the previous pass.
///
/// The potential is sampled once on the finest grid. Only levels present
/// on every pass are returned.
pub fn numerov_eigen_refined<V: Fn(f64) -> f64>(
    potential: V,
    grid: GridSpec,
    conv: f64,
    e_max: f64,
    max_states: usize,
    passes: usize,
) -> Result<Vec<Eigen>, OracleError> {
    let factor = 1usize << passes;
    let finest = Sampled::new(&potential, &grid.refined(factor), conv)?;
    let mut prev: Option<Vec<Eigen>> = None;
    for pass in 0..=passes {
        let stride = factor >> pass;
        let s = if stride == 1 {
            None
        } else {
            Some(finest.subsample(stride))
        };
        let s_ref = s.as_ref().unwrap_or(&finest);
        let hints: Option<Vec<f64>> = prev.as_ref().map(|p| p.iter().map(|x| x.e).collect());
        let mut levels = solve_levels(s_ref, e_max, max_states, hints.as_deref())?;
        if let Some(p) = &prev {
            levels.truncate(p.len());
            for (lv, old) in levels.iter_mut().zip(p) {
                lv.grid_change = ((lv.e - old.e) / lv.e).abs();
            }
        }
        prev = Some(levels);
    }
    Ok(prev.unwrap_or_default())
}

/// Potential sampled once on a grid, for repeated Sturm counts.
pub struct NodeCounter {
    sampled: Sampled,
}

impl NodeCounter {
    pub fn new<V: Fn(f64) -> f64>(potential: V, grid: GridSpec, conv: f64) -> Result<Self, OracleError> {
        Ok(NodeCounter {
            sampled: Sampled::new(&potential, &grid, conv)?,
        })
    }

    /// Number of eigenvalues strictly below `e`.
    pub fn count_below(&self, e: f64) -> usize {
        self.sampled.count_below(e)
    }
}

/// Number of eigenvalues strictly below `e` on `grid`.
pub fn count_states_below<V: Fn(f64) -> f64>(
    potential: V,
    grid: GridSpec,
    conv: f64,
    e: f64,
) -> Result<usize, OracleError> {
    Ok(Sampled::new(&potential, &grid, conv)?.count_below(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::count_nodes;

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(0.0, 1.0, 999).is_err());
        assert!(GridSpec::new(1.0, 1.0, 5000).is_err());
        let g = GridSpec::new(0.0, 2.0, 1001).unwrap();
        assert_eq!(g.refined(2).n_points, 2001);
        assert!((g.refined(2).step() - g.step() / 2.0).abs() < 1e-18);
    }

    #[test]
    fn harmonic_oscillator() {
        // conv = 1, V = ω²(r − 5)²/4 ⇒ E_n = ω(n + 1/2)
        let omega = 4.0;
        let pot = |r: f64| omega * omega * (r - 5.0) * (r - 5.0) / 4.0;
        let grid = GridSpec::new(0.0, 10.0, 4000).unwrap();
        let levels = numerov_eigen_refined(pot, grid, 1.0, 40.0, 100, 2).unwrap();
        assert_eq!(levels.len(), 10);
        for (n, lv) in levels.iter().enumerate() {
            let want = omega * (n as f64 + 0.5);
            assert!(((lv.e - want) / want).abs() < 1e-6, "n={n}: {}", lv.e);
            assert_eq!(lv.nodes, n);
            assert!(lv.grid_change < 1e-7);
        }
    }

    #[test]
    fn particle_in_a_box() {
        let grid = GridSpec::new(0.0, 1.0, 2000).unwrap();
        let levels = numerov_eigen(|_| 0.0, grid, 1.0, 200.0, 3).unwrap();
        assert_eq!(levels.len(), 3);
        let e1 = std::f64::consts::PI.powi(2);
        assert!(((levels[0].e - e1) / e1).abs() < 1e-6, "{levels:?}");
        assert!((levels[1].e / levels[0].e - 4.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_non_finite_potential() {
        let grid = GridSpec::new(0.0, 1.0, 2000).unwrap();
        let err = numerov_eigen(|r: f64| if r > 0.5 { f64::NAN } else { 0.0 }, grid, 1.0, 10.0, 1);
        assert!(matches!(err, Err(OracleError::Potential { .. })));
    }

    #[test]
    fn solution_node_count_matches_counter() {
        let grid = GridSpec::new(0.0, 1.0, 2000).unwrap();
        let s = Sampled::new(&|_| 0.0, &grid, 1.0).unwrap();
        let e = 3.5f64.powi(2) * std::f64::consts::PI.powi(2);
        let y = s.solution(e);
        assert_eq!(count_nodes(&y[1..y.len() - 1]), 3);
        assert_eq!(s.count_below(e), 3);
    }
}

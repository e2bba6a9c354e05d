//! Independent numeric oracles: Riemann curvature by finite differences of a
//! metric given in coordinates.
#![allow(dead_code, clippy::needless_range_loop)]

use nalgebra::{DMatrix, Matrix3};
use num_complex::Complex64;

/// Metric coefficients `g_ab(x)` of a chart.
pub trait ChartMetric {
    fn dim(&self) -> usize;
    fn at(&self, x: &[f64]) -> DMatrix<f64>;
}

fn shifted(x: &[f64], a: usize, h: f64) -> Vec<f64> {
    let mut y = x.to_vec();
    y[a] += h;
    y
}

/// `Γ^a_{bc}` at `x`, indexed `[a][b][c]`, from central differences of `g`.
fn christoffel(m: &dyn ChartMetric, x: &[f64], h: f64) -> Vec<Vec<Vec<f64>>> {
    let d = m.dim();
    let dg: Vec<DMatrix<f64>> =
        (0..d).map(|c| (m.at(&shifted(x, c, h)) - m.at(&shifted(x, c, -h))) / (2.0 * h)).collect();
    let ginv = m.at(x).try_inverse().expect("nondegenerate metric");
    let mut gamma = vec![vec![vec![0.0; d]; d]; d];
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                gamma[a][b][c] =
                    0.5 * (0..d).map(|e| ginv[(a, e)] * (dg[b][(e, c)] + dg[c][(e, b)] - dg[e][(b, c)])).sum::<f64>();
            }
        }
    }
    gamma
}

/// `g(R(u, v) v, u) / (|u|²|v|² - g(u, v)²)` at `x`, with
/// `R^a_{bcd} = ∂_c Γ^a_{db} - ∂_d Γ^a_{cb} + Γ^a_{ce} Γ^e_{db} - Γ^a_{de} Γ^e_{cb}`.
fn fd_sectional_step(m: &dyn ChartMetric, x: &[f64], u: &[f64], v: &[f64], h: f64) -> f64 {
    let d = m.dim();
    let g = m.at(x);
    let gamma = christoffel(m, x, h);
    let dgamma: Vec<Vec<Vec<Vec<f64>>>> = (0..d)
        .map(|c| {
            let p = christoffel(m, &shifted(x, c, h), h);
            let q = christoffel(m, &shifted(x, c, -h), h);
            (0..d)
                .map(|a| (0..d).map(|b| (0..d).map(|e| (p[a][b][e] - q[a][b][e]) / (2.0 * h)).collect()).collect())
                .collect()
        })
        .collect();
    // R^a_{bcd} u^c v^d v^b
    let mut rv = vec![0.0; d];
    for a in 0..d {
        let mut s = 0.0;
        for b in 0..d {
            for c in 0..d {
                for dd in 0..d {
                    let mut r = dgamma[c][a][dd][b] - dgamma[dd][a][c][b];
                    for e in 0..d {
                        r += gamma[a][c][e] * gamma[e][dd][b] - gamma[a][dd][e] * gamma[e][c][b];
                    }
                    s += r * v[b] * u[c] * v[dd];
                }
            }
        }
        rv[a] = s;
    }
    let ip =
        |p: &[f64], q: &[f64]| -> f64 { (0..d).map(|a| (0..d).map(|b| g[(a, b)] * p[a] * q[b]).sum::<f64>()).sum() };
    ip(u, &rv) / (ip(u, u) * ip(v, v) - ip(u, v).powi(2))
}

/// `S³` near `1` via `x ↦ (1, x)/√(1 + |x|²)`, with the left-invariant metric
/// whose Gram matrix in the standard frame `X'_j` is `gram`.
pub struct Su2Chart {
    pub gram: Matrix3<f64>,
}

impl Su2Chart {
    fn point(x: &[f64]) -> [f64; 4] {
        let r = (1.0 + x.iter().map(|t| t * t).sum::<f64>()).sqrt();
        [1.0 / r, x[0] / r, x[1] / r, x[2] / r]
    }

    /// Standard left-invariant fields at `q = (a, b, c, d)`, `z = a + ib`, `w = c + id`.
    pub fn standard_fields(q: &[f64; 4]) -> [[f64; 4]; 3] {
        let [a, b, c, d] = *q;
        [[-b, a, -d, c], [-c, d, a, -b], [-d, -c, b, a]]
    }
}

impl ChartMetric for Su2Chart {
    fn dim(&self) -> usize {
        3
    }

    fn at(&self, x: &[f64]) -> DMatrix<f64> {
        let q = Self::point(x);
        let f = Self::standard_fields(&q);
        // ∂_a q_k = δ_{k,a+1}/r - y_k x_a/r³ with y = (1, x).
        let r = (1.0 + x.iter().map(|t| t * t).sum::<f64>()).sqrt();
        let y = [1.0, x[0], x[1], x[2]];
        let dq: Vec<[f64; 4]> = (0..3)
            .map(|a| std::array::from_fn(|k| if k == a + 1 { 1.0 / r } else { 0.0 } - y[k] * x[a] / (r * r * r)))
            .collect();
        let s = DMatrix::from_fn(3, 3, |a, j| (0..4).map(|k| dq[a][k] * f[j][k]).sum::<f64>());
        let g = DMatrix::from_fn(3, 3, |i, j| self.gram[(i, j)]);
        &s * g * s.transpose()
    }
}

/// `CPⁿ` in the affine chart `[1 : v]`, `v ∈ ℂⁿ` as `2n` reals, Fubini–Study
/// metric `Re h` with `h_{ab̄} = ((1 + |v|²) δ_ab - v̄_a v_b) / (1 + |v|²)²`.
pub struct FsChart {
    pub n: usize,
}

impl FsChart {
    pub fn complex(x: &[f64]) -> Vec<Complex64> {
        x.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect()
    }
}

impl ChartMetric for FsChart {
    fn dim(&self) -> usize {
        2 * self.n
    }

    fn at(&self, x: &[f64]) -> DMatrix<f64> {
        let v = Self::complex(x);
        let s = 1.0 + v.iter().map(|c| c.norm_sqr()).sum::<f64>();
        let h = |a: usize, b: usize| {
            let delta = if a == b { s } else { 0.0 };
            (Complex64::new(delta, 0.0) - v[a].conj() * v[b]) / (s * s)
        };
        // Real basis e_{2a} = ∂/∂x_a, e_{2a+1} = ∂/∂y_a, i.e. complex units 1 and i.
        let unit = |k: usize| if k.is_multiple_of(2) { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 1.0) };
        DMatrix::from_fn(2 * self.n, 2 * self.n, |p, q| {
            let (a, b) = (p / 2, q / 2);
            (unit(p) * unit(q).conj() * h(a, b)).re
        })
    }
}

/// Richardson extrapolation of the step-`h` and step-`h/2` estimates,
/// removing the `O(h²)` term.
pub fn fd_sectional(m: &dyn ChartMetric, x: &[f64], u: &[f64], v: &[f64], h: f64) -> f64 {
    let coarse = fd_sectional_step(m, x, u, v, h);
    let fine = fd_sectional_step(m, x, u, v, 0.5 * h);
    (4.0 * fine - coarse) / 3.0
}

/// Moves the largest component of `e` to the front; the same permutation
/// must be applied to every vector based at `e`.
pub fn chart_permutation(e: &[Complex64]) -> Vec<usize> {
    let top = (0..e.len()).max_by(|a, b| e[*a].norm().total_cmp(&e[*b].norm())).unwrap();
    std::iter::once(top).chain((0..e.len()).filter(|k| *k != top)).collect()
}

pub fn permuted(v: &[Complex64], perm: &[usize]) -> Vec<Complex64> {
    perm.iter().map(|k| v[*k]).collect()
}

/// Chart image of a horizontal vector `u` at the unit lift value `e`:
/// `dv_a = (u_a e_0 - e_a u_0) / e_0²`, as `2n` reals.
pub fn fs_chart_vector(e: &[Complex64], u: &[Complex64]) -> Vec<f64> {
    (1..e.len())
        .flat_map(|a| {
            let d = (u[a] * e[0] - e[a] * u[0]) / (e[0] * e[0]);
            [d.re, d.im]
        })
        .collect()
}

/// Chart coordinates of `[e]`.
pub fn fs_chart_point(e: &[Complex64]) -> Vec<f64> {
    (1..e.len()).flat_map(|a| [(e[a] / e[0]).re, (e[a] / e[0]).im]).collect()
}

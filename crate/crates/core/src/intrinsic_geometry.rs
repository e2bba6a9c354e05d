//! Levi-Civita connection, curvature and the round / Berger / generic split
//! for a left-invariant metric given by its structure matrix.
//!
//! Indices are 0-based throughout: `c(k, i, j)` is `c^{k+1}_{i+1, j+1}`.

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::su2_frames::{normalize, StructureMatrix};
use crate::tolerance::EIGEN_RELATIVE;

/// `table[i][j][k] = ω_{ij}(X_k)`, antisymmetric in `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionCoefficients {
    pub table: [[[f64; 3]; 3]; 3],
}

impl ConnectionCoefficients {
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.table[i][j][k]
    }

    /// Coefficients of `∇_{X_k} X_j` in the frame: `Σ_i ω_{ij}(X_k) X_i`.
    pub fn covariant(&self, k: usize, j: usize) -> [f64; 3] {
        [self.table[0][j][k], self.table[1][j][k], self.table[2][j][k]]
    }
}

/// Koszul formula for an orthonormal left-invariant frame:
/// `ω_{ij}(X_k) = ½ (c^k_{ij} - c^i_{jk} + c^j_{ik})`.
///
/// In particular `ω₁₂ = c¹₁₂ ω₁ + c²₁₂ ω₂ + (c³₁₂ + a) ω₃` and cyclic.
pub fn connection(c: &StructureMatrix) -> ConnectionCoefficients {
    let mut table = [[[0.0; 3]; 3]; 3];
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for k in 0..3 {
            let v = 0.5 * (c.c(k, i, j) - c.c(i, j, k) + c.c(j, i, k));
            table[i][j][k] = v;
            table[j][i][k] = -v;
        }
    }
    ConnectionCoefficients { table }
}

/// Riemann tensor `R_{ijlm}` in an orthonormal frame, with `R_{ijij}` the
/// sectional curvature of the `(X_i, X_j)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureTensor {
    pub r: [[[[f64; 3]; 3]; 3]; 3],
}

impl CurvatureTensor {
    pub fn get(&self, i: usize, j: usize, l: usize, m: usize) -> f64 {
        self.r[i][j][l][m]
    }

    /// `(R₁₂₁₂, R₁₃₁₃, R₂₃₂₃)`.
    pub fn sectional_diagonal(&self) -> [f64; 3] {
        [self.r[0][1][0][1], self.r[0][2][0][2], self.r[1][2][1][2]]
    }

    pub fn sectional(&self, i: usize, j: usize) -> f64 {
        self.r[i][j][i][j]
    }

    /// `R(u, v, u, v) / (|u|²|v|² - <u, v>²)` for a plane given in frame components.
    pub fn sectional_of_plane(&self, u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
        let mut num = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    for m in 0..3 {
                        num += self.r[i][j][l][m] * u[i] * v[j] * u[l] * v[m];
                    }
                }
            }
        }
        num / (u.norm_squared() * v.norm_squared() - u.dot(v).powi(2))
    }

    /// Components in the frame `X̃_a = Σ_i T_{ia} X_i`.
    pub fn transformed(&self, t: &Matrix3<f64>) -> CurvatureTensor {
        // Contract one index at a time.
        let mut cur = self.r;
        for slot in 0..4 {
            let mut next = [[[[0.0; 3]; 3]; 3]; 3];
            for a in 0..3 {
                for b in 0..3 {
                    for c in 0..3 {
                        for d in 0..3 {
                            let mut acc = 0.0;
                            for s in 0..3 {
                                let (idx, x) = match slot {
                                    0 => ([s, b, c, d], a),
                                    1 => ([a, s, c, d], b),
                                    2 => ([a, b, s, d], c),
                                    _ => ([a, b, c, s], d),
                                };
                                acc += t[(s, x)] * cur[idx[0]][idx[1]][idx[2]][idx[3]];
                            }
                            next[a][b][c][d] = acc;
                        }
                    }
                }
            }
            cur = next;
        }
        CurvatureTensor { r: cur }
    }

    /// Largest violation of the algebraic symmetries and the first Bianchi identity.
    pub fn symmetry_defect(&self) -> f64 {
        let r = &self.r;
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    for m in 0..3 {
                        let x = r[i][j][l][m];
                        worst = worst
                            .max((x + r[j][i][l][m]).abs())
                            .max((x + r[i][j][m][l]).abs())
                            .max((x - r[l][m][i][j]).abs())
                            .max((x + r[j][l][i][m] + r[l][i][j][m]).abs());
                    }
                }
            }
        }
        worst
    }
}

fn fill(r: &mut [[[[f64; 3]; 3]; 3]; 3], i: usize, j: usize, l: usize, m: usize, v: f64) {
    for (p, q, s1) in [(i, j, 1.0), (j, i, -1.0)] {
        for (x, y, s2) in [(l, m, 1.0), (m, l, -1.0)] {
            r[p][q][x][y] = s1 * s2 * v;
            r[x][y][p][q] = s1 * s2 * v;
        }
    }
}

/// Curvature directly from the structure constants, for distinct `i, j, m`:
///
/// ```text
/// R_{ijim} = c^j_{ij} (c^m_{ij} - c^i_{jm} + c^j_{mi}) - 2 c^i_{ij} c^i_{im}
/// R_{ijij} = a² + (c^i_{im})² - (c^i_{ij})² - (c^j_{ij})² - (c^m_{ij})² - c^i_{jm} c^j_{mi}
/// ```
pub fn curvature(c: &StructureMatrix) -> CurvatureTensor {
    let a = c.a();
    let cc = |k, i, j| c.c(k, i, j);
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for (i, j, m) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let v = a * a + cc(i, i, m).powi(2)
            - cc(i, i, j).powi(2)
            - cc(j, i, j).powi(2)
            - cc(m, i, j).powi(2)
            - cc(i, j, m) * cc(j, m, i);
        fill(&mut r, i, j, i, j, v);
    }
    for (i, j, m) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
        let v = cc(j, i, j) * (cc(m, i, j) - cc(i, j, m) + cc(j, m, i)) - 2.0 * cc(i, i, j) * cc(i, i, m);
        fill(&mut r, i, j, i, m, v);
    }
    CurvatureTensor { r }
}

/// Curvature through the second structure equation
/// `Ω_{ij} = dω_{ij} + Σ_k ω_{ik} ∧ ω_{kj}` with constant connection coefficients.
pub fn curvature_from_connection(c: &StructureMatrix) -> CurvatureTensor {
    let g = connection(c).table;
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for l in 0..3 {
                for m in 0..3 {
                    let mut v = 0.0;
                    for k in 0..3 {
                        v -= g[i][j][k] * c.c(k, l, m);
                        v += g[i][k][l] * g[k][j][m] - g[i][k][m] * g[k][j][l];
                    }
                    r[i][j][l][m] = v;
                }
            }
        }
    }
    CurvatureTensor { r }
}

/// Round / Berger / generic, decided on the normalized diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum MetricKind {
    Constant { c: f64 },
    Berger { b: f64, c: f64 },
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricClass {
    #[serde(flatten)]
    pub kind: MetricKind,
    pub normalized_diag: [f64; 3],
}

fn same(x: f64, y: f64, scale: f64) -> bool {
    (x - y).abs() <= EIGEN_RELATIVE * scale
}

/// Constant curvature iff the normalized `C` is a multiple of the identity;
/// Berger iff it has exactly two distinct eigenvalues.
///
/// Berger parameters: with `c₁ = -(simple eigenvalue)/2`, `c₂ = -(double)/2`
/// (both negated together if needed so that `c₁ > 0`), `c = c₁ c₂` and
/// `b = √(c₁ / c₂)`. A metric with `b = 1` is reported as constant curvature.
pub fn classify(c: &StructureMatrix) -> MetricClass {
    let (_, d) = normalize(c);
    let diag = [d.matrix()[(0, 0)], d.matrix()[(1, 1)], d.matrix()[(2, 2)]];
    let scale = diag.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let (e01, e12, e02) = (same(diag[0], diag[1], scale), same(diag[1], diag[2], scale), same(diag[0], diag[2], scale));
    let kind = if e01 && e12 && e02 {
        let mean = diag.iter().sum::<f64>() / 3.0;
        MetricKind::Constant { c: (mean / 2.0).powi(2) }
    } else if e01 || e12 || e02 {
        let (simple, double) = if e12 {
            (diag[0], 0.5 * (diag[1] + diag[2]))
        } else if e01 {
            (diag[2], 0.5 * (diag[0] + diag[1]))
        } else {
            (diag[1], 0.5 * (diag[0] + diag[2]))
        };
        let (mut c1, mut c2) = (-simple / 2.0, -double / 2.0);
        if c1 < 0.0 {
            c1 = -c1;
            c2 = -c2;
        }
        MetricKind::Berger { b: (c1 / c2).sqrt(), c: c1 * c2 }
    } else {
        MetricKind::Generic
    };
    MetricClass { kind, normalized_diag: diag }
}

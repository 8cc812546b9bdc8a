//! Skew-split convection on node-collocated fields. The trilinear form is
//! assembled as the pair (a₁, a₂) = (½∫(v·∇)u·φ, ½∫(v·∇)φ·u); the energy
//! estimate uses a₁ − a₂, which vanishes identically for φ = u no matter how
//! the derivatives are discretized.

use crate::fourier::Fourier1D;

use super::grid::Grid;

/// Vector field sampled at grid nodes (x_i, y_j), i periodic, j = 0..=ny.
#[derive(Debug, Clone)]
pub struct NodeField {
    pub grid: Grid,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl NodeField {
    pub fn from_fn(grid: Grid, fu: impl Fn(f64, f64) -> f64, fv: impl Fn(f64, f64) -> f64) -> Self {
        let n = grid.nx * (grid.ny + 1);
        let mut u = vec![0.0; n];
        let mut v = vec![0.0; n];
        for j in 0..=grid.ny {
            for i in 0..grid.nx {
                u[j * grid.nx + i] = fu(grid.x_face(i), grid.y_face(j));
                v[j * grid.nx + i] = fv(grid.x_face(i), grid.y_face(j));
            }
        }
        NodeField { grid, u, v }
    }

    pub fn len(&self) -> usize {
        self.grid.nx * (self.grid.ny + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Spectral ∂x per node row.
fn ddx(grid: Grid, f: &[f64]) -> Vec<f64> {
    let four = Fourier1D::new(grid.nx, grid.lx);
    let mut out = vec![0.0; f.len()];
    for j in 0..=grid.ny {
        let row = &f[j * grid.nx..(j + 1) * grid.nx];
        out[j * grid.nx..(j + 1) * grid.nx].copy_from_slice(&four.derivative(row, 1));
    }
    out
}

/// Second-order ∂y: centered inside, one-sided at the walls.
fn ddy(grid: Grid, f: &[f64]) -> Vec<f64> {
    let nx = grid.nx;
    let ny = grid.ny;
    let dy = grid.dy();
    let mut out = vec![0.0; f.len()];
    for i in 0..nx {
        out[i] = (-3.0 * f[i] + 4.0 * f[nx + i] - f[2 * nx + i]) / (2.0 * dy);
        out[ny * nx + i] = (3.0 * f[ny * nx + i] - 4.0 * f[(ny - 1) * nx + i]
            + f[(ny - 2) * nx + i])
            / (2.0 * dy);
        for j in 1..ny {
            out[j * nx + i] = (f[(j + 1) * nx + i] - f[(j - 1) * nx + i]) / (2.0 * dy);
        }
    }
    out
}

/// Quadrature weight of node (i, j): uniform in x, composite Simpson in y
/// (trapezoid fallback for odd ny).
fn node_weight(grid: Grid, j: usize) -> f64 {
    let wx = grid.dx();
    let wy = if grid.ny % 2 == 0 {
        let h = grid.dy() / 3.0;
        if j == 0 || j == grid.ny {
            h
        } else if j % 2 == 1 {
            4.0 * h
        } else {
            2.0 * h
        }
    } else if j == 0 || j == grid.ny {
        0.5 * grid.dy()
    } else {
        grid.dy()
    };
    wx * wy
}

/// The two halves of the skew-split convective form.
pub fn convection_skew(vel: &NodeField, u: &NodeField, phi: &NodeField) -> (f64, f64) {
    let grid = vel.grid;
    assert!(u.grid == grid && phi.grid == grid);
    let (ux, uy) = (ddx(grid, &u.u), ddy(grid, &u.u));
    let (vx, vy) = (ddx(grid, &u.v), ddy(grid, &u.v));
    let (px, py) = (ddx(grid, &phi.u), ddy(grid, &phi.u));
    let (qx, qy) = (ddx(grid, &phi.v), ddy(grid, &phi.v));
    let mut a1 = 0.0;
    let mut a2 = 0.0;
    for j in 0..=grid.ny {
        for i in 0..grid.nx {
            let n = j * grid.nx + i;
            let w = node_weight(grid, j);
            let (w1, w2) = (vel.u[n], vel.v[n]);
            a1 += w * ((w1 * ux[n] + w2 * uy[n]) * phi.u[n] + (w1 * vx[n] + w2 * vy[n]) * phi.v[n]);
            a2 += w * ((w1 * px[n] + w2 * py[n]) * u.u[n] + (w1 * qx[n] + w2 * qy[n]) * u.v[n]);
        }
    }
    (0.5 * a1, 0.5 * a2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn fields(n: usize) -> (NodeField, NodeField, NodeField) {
        let g = Grid::new(n, n, 2.0 * PI, 1.0);
        let v = NodeField::from_fn(g, |x, y| x.sin() * (1.0 + y), |x, y| x.cos() * y * (1.0 - y));
        let u = NodeField::from_fn(g, |x, y| (2.0 * x).cos() * y * y, |x, y| x.sin() * (1.0 - y));
        let phi = NodeField::from_fn(g, |x, y| (2.0 * x).sin() * y, |x, y| x.cos() * (y * y + 0.5));
        (v, u, phi)
    }

    #[test]
    fn energy_neutrality_exact() {
        let (v, u, _) = fields(24);
        let (a1, a2) = convection_skew(&v, &u, &u);
        assert_eq!(a1, a2);
    }

    #[test]
    fn zero_advecting_field() {
        let g = Grid::new(16, 16, 2.0 * PI, 1.0);
        let z = NodeField::from_fn(g, |_, _| 0.0, |_, _| 0.0);
        let (_, u, phi) = fields(16);
        let (a1, a2) = convection_skew(&z, &u, &phi);
        assert_eq!((a1, a2), (0.0, 0.0));
    }

    #[test]
    fn matches_refined_quadrature_oracle() {
        let (v, u, phi) = fields(64);
        let coarse = convection_skew(&v, &u, &phi);
        let (v4, u4, phi4) = fields(256);
        let fine = convection_skew(&v4, &u4, &phi4);
        assert!(
            (coarse.0 - fine.0).abs() < 1e-6 && (coarse.1 - fine.1).abs() < 1e-6,
            "coarse {coarse:?} fine {fine:?}"
        );
    }
}

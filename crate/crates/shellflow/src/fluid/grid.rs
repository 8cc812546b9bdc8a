//! Staggered (MAC) grid on the periodic channel reference box
//! [0, lx) x [0, ly]: u on vertical faces, v on horizontal faces, scalars on
//! cell centers. x is periodic; y = 0 is the rigid wall, y = ly the shell.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
}

impl Grid {
    pub fn new(nx: usize, ny: usize, lx: f64, ly: f64) -> Self {
        assert!(nx >= 4 && ny >= 4 && lx > 0.0 && ly > 0.0);
        Grid { nx, ny, lx, ly }
    }

    pub fn dx(&self) -> f64 {
        self.lx / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        self.ly / self.ny as f64
    }

    /// x at vertical face i (also node column i).
    pub fn x_face(&self, i: usize) -> f64 {
        self.dx() * i as f64
    }

    /// x at cell center i.
    pub fn x_center(&self, i: usize) -> f64 {
        self.dx() * (i as f64 + 0.5)
    }

    /// y at horizontal face / node row j (0..=ny).
    pub fn y_face(&self, j: usize) -> f64 {
        self.dy() * j as f64
    }

    /// y at cell center j.
    pub fn y_center(&self, j: usize) -> f64 {
        self.dy() * (j as f64 + 0.5)
    }

    pub fn n_cells(&self) -> usize {
        self.nx * self.ny
    }
}

/// MAC vector field: `u[j * nx + i]` at (x_i, y_{j+1/2}) for j in 0..ny,
/// `v[j * nx + i]` at (x_{i+1/2}, y_j) for j in 0..=ny.
#[derive(Debug, Clone)]
pub struct MacField {
    pub grid: Grid,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl MacField {
    pub fn zero(grid: Grid) -> Self {
        MacField {
            grid,
            u: vec![0.0; grid.nx * grid.ny],
            v: vec![0.0; grid.nx * (grid.ny + 1)],
        }
    }

    /// Sample analytic components at the face positions.
    pub fn from_fn(grid: Grid, fu: impl Fn(f64, f64) -> f64, fv: impl Fn(f64, f64) -> f64) -> Self {
        let mut f = MacField::zero(grid);
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                f.u[j * grid.nx + i] = fu(grid.x_face(i), grid.y_center(j));
            }
        }
        for j in 0..=grid.ny {
            for i in 0..grid.nx {
                f.v[j * grid.nx + i] = fv(grid.x_center(i), grid.y_face(j));
            }
        }
        f
    }
}

/// Discrete divergence at cell centers, second order on the staggered grid.
pub fn divergence(f: &MacField) -> Vec<f64> {
    let g = f.grid;
    let (dx, dy) = (g.dx(), g.dy());
    let mut d = vec![0.0; g.n_cells()];
    for j in 0..g.ny {
        for i in 0..g.nx {
            let ip = (i + 1) % g.nx;
            d[j * g.nx + i] = (f.u[j * g.nx + ip] - f.u[j * g.nx + i]) / dx
                + (f.v[(j + 1) * g.nx + i] - f.v[j * g.nx + i]) / dy;
        }
    }
    d
}

/// Symmetric velocity gradient Du at cell centers, second-order centered
/// differences with linear-extrapolation ghosts at the walls (u = 0 on the
/// rigid wall, the shell trace carries no tangential slip).
pub fn sym_gradient(f: &MacField) -> Vec<[[f64; 2]; 2]> {
    let g = f.grid;
    let (dx, dy) = (g.dx(), g.dy());
    let nx = g.nx;
    let mut out = vec![[[0.0; 2]; 2]; g.n_cells()];
    // off-diagonal term at nodes, then averaged to centers
    let mut d12n = vec![0.0; nx * (g.ny + 1)];
    for j in 0..=g.ny {
        for i in 0..nx {
            let im = (i + nx - 1) % nx;
            // ∂x v at node (i, j): centered over the two adjacent v faces
            let dvdx = (f.v[j * nx + i] - f.v[j * nx + im]) / dx;
            // ∂y u at node: centered over adjacent u positions; walls use
            // the no-slip / no-tangential-slip reflection ghost.
            let dudy = if j == 0 {
                (f.u[i] - (-f.u[i])) / dy
            } else if j == g.ny {
                ((-f.u[(g.ny - 1) * nx + i]) - f.u[(g.ny - 1) * nx + i]) / dy
            } else {
                (f.u[j * nx + i] - f.u[(j - 1) * nx + i]) / dy
            };
            d12n[j * nx + i] = 0.5 * (dudy + dvdx);
        }
    }
    for j in 0..g.ny {
        for i in 0..nx {
            let ip = (i + 1) % nx;
            let c = j * nx + i;
            out[c][0][0] = (f.u[j * nx + ip] - f.u[j * nx + i]) / dx;
            out[c][1][1] = (f.v[(j + 1) * nx + i] - f.v[j * nx + i]) / dy;
            let avg = 0.25
                * (d12n[j * nx + i]
                    + d12n[j * nx + ip]
                    + d12n[(j + 1) * nx + i]
                    + d12n[(j + 1) * nx + ip]);
            out[c][0][1] = avg;
            out[c][1][0] = avg;
        }
    }
    out
}

/// Fluid state on the reference box; the physical field is the pushforward
/// through the boundary transformation.
#[derive(Debug, Clone)]
pub struct FluidState {
    pub velocity: MacField,
    /// cell-centered, zero-mean
    pub pressure: Vec<f64>,
    pub time: f64,
    /// achieved max |div u| after the last projection
    pub div_tol: f64,
}

impl FluidState {
    pub fn at_rest(grid: Grid) -> Self {
        FluidState {
            velocity: MacField::zero(grid),
            pressure: vec![0.0; grid.n_cells()],
            time: 0.0,
            div_tol: 0.0,
        }
    }
}

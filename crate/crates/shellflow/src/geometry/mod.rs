//! Reference-surface differential geometry and the boundary transformation.

mod cutoff;
mod hanzawa;
mod surface;

pub use cutoff::{build_cutoff, Cutoff};
pub use hanzawa::HanzawaMap;
pub use surface::{
    area_distortion_normal, commutator_residual, gamma, AreaDistortion, CurvatureData,
    ShellDisplacement, SurfaceGeometry, SurfaceKind,
};

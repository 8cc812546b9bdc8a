pub mod error;
pub mod fourier;
pub mod geometry;
pub mod koiter;
pub mod quad;
pub mod sphere;

//! Exact arithmetic in the deformation parameter `q`.

mod interval;
mod params;
mod poly;
mod rational;
mod scalar;

pub use interval::{exp_enclosure, RationalInterval};
pub use params::{ModelParameters, QValue};
pub use poly::QPoly;
pub use rational::QRational;
pub use scalar::{ratio_to_f64, Scalar};

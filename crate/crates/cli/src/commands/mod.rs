pub mod kepler;
pub mod parametric;
pub mod simulate;
pub mod verify;

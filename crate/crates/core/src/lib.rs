pub mod angle;
pub mod cli;
pub mod families;
pub mod gaintheory;
pub mod graph;
pub mod spectral;
pub mod verify;
pub mod zeroforcing;

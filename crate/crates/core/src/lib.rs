pub mod classify;
pub mod fuchsian;
pub mod genvec;
pub mod group;
pub mod moves;
pub mod report;

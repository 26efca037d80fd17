pub mod exactreal;
pub mod interval;
pub mod latgeom;
pub mod poly;
pub mod maps;
pub mod verify;
pub mod minpoints;
pub mod structure;
pub mod constants;

pub mod automata;
pub mod bfs;
pub mod digits;
pub mod geodesic;
pub mod group;
pub mod growth;
pub mod shape_map;
pub mod spectral;
pub mod verify;

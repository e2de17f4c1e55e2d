pub mod bits;
pub mod cli;
pub mod clifford;
pub mod codes;
pub mod dense;
pub mod dfs;
pub mod dynamics;
pub mod group;
pub mod pauli;
pub mod renorm;
pub mod tiling;
pub mod toric;

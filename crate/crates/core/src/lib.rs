pub mod arith;
pub mod cartan;
pub mod km;
pub mod lie;
pub mod matrix;
pub mod electrical;

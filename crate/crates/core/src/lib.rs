pub mod congruence;
pub mod dual;
pub mod error;
pub mod matrix;
pub mod pencil;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod seed;

pub mod algebra;
pub mod corpus;
pub mod double;
pub mod error;
pub mod io;
pub mod linalg;
pub mod monoid;
pub mod pairing;
pub mod report;
pub mod repr;
pub mod scalar;
pub mod tensor;

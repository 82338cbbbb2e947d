pub mod certify;
pub mod cli;
pub mod forms;
pub mod intmatrix;
pub mod numtheory;
pub mod presentations;

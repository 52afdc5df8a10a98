pub mod agent;
pub mod analysis;
pub mod ansatz;
pub mod cli;
pub mod qas;
pub mod qcore;
pub mod vqsd;

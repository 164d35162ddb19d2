pub mod bpz;
pub mod cli;
pub mod error;
pub mod fuscat;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod scalars;
pub mod triplet;
pub mod verma;
pub mod zhu;

pub mod error;
pub mod law;
pub mod multiset;
pub mod proj;
pub mod scalar;
pub mod sampling;
pub mod elementary;
pub mod elliptic;
pub mod rational_kummer;
pub mod genus2;
pub mod ledger;
pub mod suites;
pub mod cli;

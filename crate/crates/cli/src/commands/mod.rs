pub mod ledger;
pub mod sis;
pub mod spectrum;
pub mod verify;
pub mod zeta;

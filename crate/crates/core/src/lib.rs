pub mod arith;
pub mod balg;
pub mod corpus;
pub mod kam;
pub mod logic;
pub mod pole;
pub mod term;
pub mod wedge;

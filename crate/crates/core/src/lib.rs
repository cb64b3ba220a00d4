pub mod cnf;
pub mod cube;
pub mod encoder;
pub mod error;
pub mod orchestrator;
pub mod planner;
pub mod sat;

pub mod analyzer;
pub mod checks;
pub mod covers;
pub mod demo;
pub mod engine;
pub mod one;
pub mod ordinal;
mod serde_util;
pub mod sets;
pub mod strategy;
pub mod targets;
pub mod two;

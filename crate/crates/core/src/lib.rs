//! Qualitative reasoning over temporal sequences of RCC8 relations.

pub mod error;
pub mod fragments;
pub mod network;
pub mod planner;
pub mod projection;
pub mod rcc8;
pub mod sequence;
pub mod verify;

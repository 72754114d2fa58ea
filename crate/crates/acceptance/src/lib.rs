//! Acceptance gate; see tests/acceptance.rs.

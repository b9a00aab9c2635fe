//! The two concrete finite models.

pub mod groupoid;
pub mod heyting;

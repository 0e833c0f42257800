pub mod band;
pub mod error;
pub mod generate;
pub mod geom;
pub mod io;
pub mod opening;
pub mod rm;
pub mod rotation;
pub mod svg;
pub mod unfold;
pub mod verify;

pub use error::{GeomError, Result};

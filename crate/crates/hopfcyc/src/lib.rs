//! Front end for the Hopf cyclic pipeline: model files, the `validate`,
//! `cohomology` and `realize` commands, golden-file comparison and the
//! acceptance run.

pub mod acceptance;
pub mod error;
pub mod golden;
pub mod model_file;
pub mod pipeline;
pub mod report;
pub mod validate;

pub use error::{CliError, Result};
pub use model_file::{load, parse_model, ModelFile};
pub use report::{CheckLine, Status};

pub mod bitmat;
pub mod bounds;
pub mod decompose;
pub mod error;
pub mod exact;
pub mod fps;
pub mod graph;
pub mod series_lang;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use fps::Gf2Series;
pub use graph::{Family, Graph, RiordanGraph};
pub use decompose::{Classification, DecompositionBlocks, Label};
pub use exact::{ExactSummary, Inertia};
pub use spectra::{GraphSpectra, SpectrumReport};

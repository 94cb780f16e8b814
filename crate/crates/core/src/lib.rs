//! Layout-aware multi-controlled Toffoli gates for IBM-style native gate sets.
//!
//! The crate synthesizes the `n`-qubit gate from `RZ`, `SX` and `CX` only,
//! places and routes it on a device coupling layout, and reports the
//! transpilation cost `TQC = N1 + N2 + XC + D`. A small dense simulator checks
//! that every produced circuit computes the AND of its controls into a target
//! prepared in `|0⟩`.
//!
//! ```
//! use latoffoli::{transpile, Mode, Preset};
//!
//! let t = transpile(&Preset::TLike5.layout(), 4, Mode::LayoutAware, None).unwrap();
//! assert_eq!(t.tqc.tqc, 38);
//! ```

pub mod angle;
pub mod circuit;
pub mod cost;
pub mod error;
pub mod optimizer;
pub mod qasm;
pub mod reference;
pub mod router;
pub mod synth;
pub mod topology;
pub mod transpile;
pub mod verifier;

pub use angle::Angle;
pub use circuit::{Circuit, Gate, GateCounts, QubitId};
pub use cost::{compute_tqc, CostReport, Mode, TqcReport};
pub use error::{Error, Result};
pub use optimizer::fuse_rz;
pub use router::{place, route, MappedCircuit};
pub use synth::{conventional_toffoli_3bit, layout_aware_core, layout_aware_toffoli, ToffoliSpec};
pub use topology::{classify, enumerate_configurations, preset_layout, CouplingLayout, NClass, Placement, Preset};
pub use transpile::{transpile, Transpiled};

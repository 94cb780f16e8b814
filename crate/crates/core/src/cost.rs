//! Transpilation quantum cost: `TQC = N1 + N2 + XC + D`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::router::MappedCircuit;
use crate::topology::Placement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TqcReport {
    /// Native single-qubit gates (`RZ`, `SX`).
    pub n1: usize,
    /// Native two-qubit gates (`CX`), SWAP expansions included.
    pub n2: usize,
    /// SWAP gates inserted by routing.
    pub xc: usize,
    pub depth: usize,
    pub tqc: usize,
}

impl TqcReport {
    pub fn from_components(n1: usize, n2: usize, xc: usize, depth: usize) -> TqcReport {
        TqcReport {
            n1,
            n2,
            xc,
            depth,
            tqc: n1 + n2 + xc + depth,
        }
    }

    pub fn components(&self) -> (usize, usize, usize, usize, usize) {
        (self.n1, self.n2, self.xc, self.depth, self.tqc)
    }
}

impl fmt::Display for TqcReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N1={} N2={} XC={} D={} TQC={}",
            self.n1, self.n2, self.xc, self.depth, self.tqc
        )
    }
}

pub fn compute_tqc(mapped: &MappedCircuit) -> Result<TqcReport> {
    let counts = mapped.circuit.gate_counts()?;
    Ok(TqcReport::from_components(
        counts.single,
        counts.double,
        mapped.swap_count,
        mapped.circuit.depth(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    LayoutAware,
    Conventional,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::LayoutAware => "layout-aware",
            Mode::Conventional => "conventional",
        })
    }
}

/// Serialized cost summary. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub layout: String,
    pub n: usize,
    pub mode: Mode,
    pub n1: usize,
    pub n2: usize,
    pub xc: usize,
    pub depth: usize,
    pub tqc: usize,
    pub placement: Placement,
}

impl CostReport {
    pub fn new(layout: &str, mode: Mode, placement: Placement, tqc: TqcReport) -> CostReport {
        CostReport {
            layout: layout.to_string(),
            n: placement.n(),
            mode,
            n1: tqc.n1,
            n2: tqc.n2,
            xc: tqc.xc,
            depth: tqc.depth,
            tqc: tqc.tqc,
            placement,
        }
    }

    pub fn tqc_report(&self) -> TqcReport {
        TqcReport {
            n1: self.n1,
            n2: self.n2,
            xc: self.xc,
            depth: self.depth,
            tqc: self.tqc,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

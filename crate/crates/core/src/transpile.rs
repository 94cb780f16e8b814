//! Synthesis → placement → routing → cost in one call.

use crate::cost::{compute_tqc, CostReport, Mode, TqcReport};
use crate::error::{Error, Result};
use crate::router::{place, route, MappedCircuit};
use crate::synth::{conventional_toffoli_3bit, layout_aware_toffoli, ToffoliSpec};
use crate::topology::{classify, CouplingLayout, NClass, Placement};

#[derive(Clone, Debug)]
pub struct Transpiled {
    pub mode: Mode,
    pub class: NClass,
    /// Logical gate specification (controls `0..m`, target `m`).
    pub logical: ToffoliSpec,
    pub placement: Placement,
    pub mapped: MappedCircuit,
    pub tqc: TqcReport,
}

impl Transpiled {
    /// Gate specification on the physical qubits of the routed circuit.
    pub fn physical_spec(&self) -> Result<ToffoliSpec> {
        self.mapped.physical_spec(&self.logical)
    }

    pub fn report(&self) -> CostReport {
        CostReport::new(self.mapped.layout.name(), self.mode, self.placement.clone(), self.tqc)
    }
}

/// Builds an `n`-qubit gate in `mode`, places it (or uses `placement`),
/// routes it onto `layout` and costs the result.
pub fn transpile(
    layout: &CouplingLayout,
    n: usize,
    mode: Mode,
    placement: Option<Placement>,
) -> Result<Transpiled> {
    let class = classify(layout, n)?;
    let logical = ToffoliSpec::logical(n)?;
    let placement = match placement {
        Some(p) => {
            if p.n() != n {
                return Err(Error::InvalidPlacement(format!(
                    "placement lists {} qubits but n = {n}",
                    p.n()
                )));
            }
            p.validate(layout)?;
            p
        }
        None => place(&logical, layout)?,
    };
    let circuit = match mode {
        Mode::LayoutAware => layout_aware_toffoli(&logical)?,
        Mode::Conventional => conventional_toffoli_3bit(&logical)?,
    };
    let mapped = route(&circuit, &placement, layout)?;
    let tqc = compute_tqc(&mapped)?;
    Ok(Transpiled {
        mode,
        class,
        logical,
        placement,
        mapped,
        tqc,
    })
}

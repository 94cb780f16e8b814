//! Placement and SWAP routing onto a coupling layout.
//!
//! A CNOT whose endpoints are not adjacent moves its control along the
//! shortest path until it neighbours the target. The moved control stays put
//! for as long as subsequent CNOTs remain legal; the detour is undone (SWAPs
//! replayed in reverse) the first time a CNOT is illegal under the displaced
//! mapping, and once more at the end of the circuit.

use crate::circuit::{Circuit, Gate, QubitId};
use crate::error::{Error, Result};
use crate::optimizer::fuse_rz;
use crate::synth::ToffoliSpec;
use crate::topology::{classify, enumerate_configurations, CouplingLayout, NClass, Placement};

/// A hardware-legal native circuit on the physical register of `layout`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappedCircuit {
    pub circuit: Circuit,
    pub layout: CouplingLayout,
    /// `initial_map[logical] = physical` before the first gate.
    pub initial_map: Vec<usize>,
    /// `final_map[logical] = physical` after the last gate.
    pub final_map: Vec<usize>,
    pub swap_count: usize,
}

impl MappedCircuit {
    /// The gate specification expressed on physical qubits at circuit end.
    pub fn physical_spec(&self, logical: &ToffoliSpec) -> Result<ToffoliSpec> {
        let phys = |q: QubitId| self.final_map[q.0];
        ToffoliSpec::new(
            logical.controls().iter().map(|&q| phys(q)),
            phys(logical.target()),
        )
    }
}

/// Chooses physical qubits for an `n`-qubit layout-aware gate.
///
/// Optimal-n cases take the first star configuration. Otherwise the target is
/// the lowest-index qubit of maximum degree and controls are handed out
/// busiest first (`controls[m-1]`) to the nearest free qubits.
pub fn place(spec: &ToffoliSpec, layout: &CouplingLayout) -> Result<Placement> {
    let n = spec.n();
    if classify(layout, n)? == NClass::OptimalN {
        let first = enumerate_configurations(layout, n)?
            .into_iter()
            .next()
            .expect("optimal-n has at least one configuration");
        return Ok(first);
    }

    let max_degree = layout.max_degree();
    let target = (0..layout.num_qubits())
        .find(|&q| layout.degree(q) == max_degree)
        .expect("layout is non-empty");
    let dist = layout.distances_from(target);
    let mut candidates: Vec<usize> = (0..layout.num_qubits()).filter(|&q| q != target).collect();
    candidates.sort_by_key(|&q| (dist[q], q));

    let m = spec.num_controls();
    let mut controls = vec![0; m];
    for (slot, &phys) in (0..m).rev().zip(&candidates) {
        controls[slot] = phys;
    }
    Ok(Placement::new(target, controls))
}

struct RouterState<'a> {
    layout: &'a CouplingLayout,
    l2p: Vec<usize>,
    p2l: Vec<Option<usize>>,
    pending: Vec<(usize, usize)>,
    out: Circuit,
    swaps: usize,
}

impl RouterState<'_> {
    fn swap(&mut self, a: usize, b: usize) -> Result<()> {
        self.out.push(Gate::swap(a, b))?;
        let (la, lb) = (self.p2l[a], self.p2l[b]);
        if let Some(l) = la {
            self.l2p[l] = b;
        }
        if let Some(l) = lb {
            self.l2p[l] = a;
        }
        self.p2l.swap(a, b);
        self.swaps += 1;
        Ok(())
    }

    fn restore(&mut self) -> Result<()> {
        while let Some((a, b)) = self.pending.pop() {
            self.swap(a, b)?;
        }
        Ok(())
    }

    fn two_qubit(&mut self, control: usize, target: usize) -> Result<()> {
        if !self.adjacent(control, target) {
            self.restore()?;
        }
        if !self.adjacent(control, target) {
            let path = self.layout.shortest_path(self.l2p[control], self.l2p[target])?;
            for hop in path.windows(2).take(path.len() - 2) {
                self.swap(hop[0], hop[1])?;
                self.pending.push((hop[0], hop[1]));
            }
        }
        self.out.push(Gate::cx(self.l2p[control], self.l2p[target]))
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.layout.are_adjacent(self.l2p[a], self.l2p[b])
    }
}

/// Relabels a logical circuit onto `placement`, inserts SWAPs where needed,
/// then expands macros and fuses RZ rotations.
///
/// Logical qubit `i < m` maps to `placement.controls[i]`, logical `m` to
/// `placement.target`, matching [`ToffoliSpec::logical`].
pub fn route(circuit: &Circuit, placement: &Placement, layout: &CouplingLayout) -> Result<MappedCircuit> {
    placement.validate(layout)?;
    if circuit.num_qubits() != placement.n() {
        return Err(Error::InvalidPlacement(format!(
            "circuit has {} qubits but the placement covers {}",
            circuit.num_qubits(),
            placement.n()
        )));
    }
    let initial_map = placement.logical_to_physical();
    let mut p2l = vec![None; layout.num_qubits()];
    for (logical, &phys) in initial_map.iter().enumerate() {
        p2l[phys] = Some(logical);
    }
    let mut state = RouterState {
        layout,
        l2p: initial_map.clone(),
        p2l,
        pending: Vec::new(),
        out: Circuit::new(layout.num_qubits())?,
        swaps: 0,
    };

    // Logical SWAPs are ordinary CNOT triples as far as routing is concerned.
    let lowered: Vec<Gate> = circuit
        .gates()
        .iter()
        .flat_map(|g| match g {
            Gate::Swap { .. } => Circuit::from_gates(circuit.num_qubits(), [*g])
                .expect("gate was already validated")
                .expand_macros()
                .gates()
                .to_vec(),
            other => vec![*other],
        })
        .collect();

    for gate in &lowered {
        match *gate {
            Gate::Cx { control, target } => state.two_qubit(control.0, target.0)?,
            single => {
                let l2p = &state.l2p;
                state.out.push(single.map_qubits(|q| QubitId(l2p[q.0])))?;
            }
        }
    }
    state.restore()?;

    let circuit = fuse_rz(&state.out.expand_macros())?;
    Ok(MappedCircuit {
        circuit,
        layout: layout.clone(),
        initial_map,
        final_map: state.l2p,
        swap_count: state.swaps,
    })
}

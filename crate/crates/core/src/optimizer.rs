//! RZ fusion.
//!
//! Two `RZ` gates on the same qubit merge when no gate in between touches
//! that qubit; rotations that sum to zero are dropped. Nothing else is
//! rewritten, so CNOT structure and SX placement are preserved exactly.

use crate::circuit::{Circuit, Gate};
use crate::error::Result;

pub fn fuse_rz(circuit: &Circuit) -> Result<Circuit> {
    circuit.require_native()?;

    let mut out: Vec<Gate> = Vec::with_capacity(circuit.len());
    // Index into `out` of an RZ that is still the last gate on its qubit.
    let mut open_rz: Vec<Option<usize>> = vec![None; circuit.num_qubits()];

    for gate in circuit.gates() {
        match *gate {
            Gate::Rz { qubit, angle } => match open_rz[qubit.0] {
                Some(slot) => {
                    if let Gate::Rz { angle: acc, .. } = &mut out[slot] {
                        *acc = *acc + angle;
                    }
                }
                None => {
                    open_rz[qubit.0] = Some(out.len());
                    out.push(*gate);
                }
            },
            other => {
                for q in other.qubits() {
                    open_rz[q.0] = None;
                }
                out.push(other);
            }
        }
    }

    // A zero slot only ever sits between non-RZ gates on its qubit, so
    // dropping it cannot expose a new fusion opportunity.
    out.retain(|g| !matches!(g, Gate::Rz { angle, .. } if angle.is_zero()));
    Circuit::from_gates(circuit.num_qubits(), out)
}

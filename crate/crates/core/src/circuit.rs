//! Gate-level circuit IR.
//!
//! A [`Circuit`] is a flat list of gates applied left to right. `RZ`, `SX` and
//! `CX` are the native set; `H` and `SWAP` are macros kept for readability and
//! lowered by [`Circuit::expand_macros`] before costing or simulation.

use std::fmt;

use arrayvec::ArrayVec;

use crate::angle::Angle;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitId(pub usize);

impl QubitId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

impl From<usize> for QubitId {
    fn from(index: usize) -> Self {
        QubitId(index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Rz { qubit: QubitId, angle: Angle },
    Sx { qubit: QubitId },
    Cx { control: QubitId, target: QubitId },
    H { qubit: QubitId },
    Swap { a: QubitId, b: QubitId },
}

impl Gate {
    pub fn rz(qubit: usize, angle: Angle) -> Gate {
        Gate::Rz {
            qubit: QubitId(qubit),
            angle,
        }
    }

    pub fn sx(qubit: usize) -> Gate {
        Gate::Sx {
            qubit: QubitId(qubit),
        }
    }

    pub fn cx(control: usize, target: usize) -> Gate {
        Gate::Cx {
            control: QubitId(control),
            target: QubitId(target),
        }
    }

    pub fn h(qubit: usize) -> Gate {
        Gate::H {
            qubit: QubitId(qubit),
        }
    }

    pub fn swap(a: usize, b: usize) -> Gate {
        Gate::Swap {
            a: QubitId(a),
            b: QubitId(b),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::Rz { .. } => "rz",
            Gate::Sx { .. } => "sx",
            Gate::Cx { .. } => "cx",
            Gate::H { .. } => "h",
            Gate::Swap { .. } => "swap",
        }
    }

    /// Operands in declaration order (control before target).
    pub fn qubits(&self) -> ArrayVec<QubitId, 2> {
        let mut out = ArrayVec::new();
        match *self {
            Gate::Rz { qubit, .. } | Gate::Sx { qubit } | Gate::H { qubit } => out.push(qubit),
            Gate::Cx { control, target } => {
                out.push(control);
                out.push(target);
            }
            Gate::Swap { a, b } => {
                out.push(a);
                out.push(b);
            }
        }
        out
    }

    pub fn acts_on(&self, q: QubitId) -> bool {
        self.qubits().contains(&q)
    }

    pub fn is_native(&self) -> bool {
        matches!(self, Gate::Rz { .. } | Gate::Sx { .. } | Gate::Cx { .. })
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cx { .. } | Gate::Swap { .. })
    }

    /// Same gate with every operand passed through `f`.
    pub fn map_qubits(&self, mut f: impl FnMut(QubitId) -> QubitId) -> Gate {
        match *self {
            Gate::Rz { qubit, angle } => Gate::Rz {
                qubit: f(qubit),
                angle,
            },
            Gate::Sx { qubit } => Gate::Sx { qubit: f(qubit) },
            Gate::Cx { control, target } => Gate::Cx {
                control: f(control),
                target: f(target),
            },
            Gate::H { qubit } => Gate::H { qubit: f(qubit) },
            Gate::Swap { a, b } => Gate::Swap { a: f(a), b: f(b) },
        }
    }

    fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        for &q in &qubits {
            if q.0 >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits,
                });
            }
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::RepeatedOperand(qubits[0]));
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Rz { qubit, angle } => write!(f, "rz({angle}) {qubit}"),
            Gate::Sx { qubit } => write!(f, "sx {qubit}"),
            Gate::Cx { control, target } => write!(f, "cx {control},{target}"),
            Gate::H { qubit } => write!(f, "h {qubit}"),
            Gate::Swap { a, b } => write!(f, "swap {a},{b}"),
        }
    }
}

/// Single- and two-qubit native gate totals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub single: usize,
    pub double: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Circuit> {
        if num_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        Ok(Circuit {
            num_qubits,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(num_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Circuit> {
        let mut circuit = Circuit::new(num_qubits)?;
        circuit.extend(gates)?;
        Ok(circuit)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for gate in gates {
            self.push(gate)?;
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn is_native(&self) -> bool {
        self.gates.iter().all(Gate::is_native)
    }

    /// Fails with the first macro gate found, if any.
    pub fn require_native(&self) -> Result<()> {
        match self.gates.iter().find(|g| !g.is_native()) {
            Some(g) => Err(Error::MacroGate(g.name())),
            None => Ok(()),
        }
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::CompositionMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        let mut gates = Vec::with_capacity(self.len() + other.len());
        gates.extend_from_slice(&self.gates);
        gates.extend_from_slice(&other.gates);
        Ok(Circuit {
            num_qubits: self.num_qubits,
            gates,
        })
    }

    /// Lowers `H` to `RZ(π/2)·SX·RZ(π/2)` and `SWAP(a, b)` to
    /// `CX(a, b)·CX(b, a)·CX(a, b)`. Native gates are copied unchanged.
    pub fn expand_macros(&self) -> Circuit {
        let quarter_turn = Angle::pi_over_pow2(1).expect("pi/2 is representable");
        let mut gates = Vec::with_capacity(self.len());
        for gate in &self.gates {
            match *gate {
                Gate::H { qubit } => gates.extend([
                    Gate::Rz {
                        qubit,
                        angle: quarter_turn,
                    },
                    Gate::Sx { qubit },
                    Gate::Rz {
                        qubit,
                        angle: quarter_turn,
                    },
                ]),
                Gate::Swap { a, b } => gates.extend([
                    Gate::Cx {
                        control: a,
                        target: b,
                    },
                    Gate::Cx {
                        control: b,
                        target: a,
                    },
                    Gate::Cx {
                        control: a,
                        target: b,
                    },
                ]),
                native => gates.push(native),
            }
        }
        Circuit {
            num_qubits: self.num_qubits,
            gates,
        }
    }

    /// Native single-qubit (`RZ` + `SX`) and two-qubit (`CX`) totals.
    pub fn gate_counts(&self) -> Result<GateCounts> {
        self.require_native()?;
        let double = self.gates.iter().filter(|g| g.is_two_qubit()).count();
        Ok(GateCounts {
            single: self.len() - double,
            double,
        })
    }

    /// Longest chain of gates that pairwise share a qubit, every gate taking
    /// one layer.
    pub fn depth(&self) -> usize {
        let mut frontier = vec![0usize; self.num_qubits];
        let mut depth = 0;
        for gate in &self.gates {
            let qubits = gate.qubits();
            let layer = qubits.iter().map(|q| frontier[q.0]).max().unwrap_or(0) + 1;
            for q in &qubits {
                frontier[q.0] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "circuit over {} qubits, {} gates", self.num_qubits, self.len())?;
        for gate in &self.gates {
            writeln!(f, "  {gate}")?;
        }
        Ok(())
    }
}

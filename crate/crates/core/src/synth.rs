//! Layout-aware multi-controlled Toffoli synthesis.
//!
//! The core for `m` controls is a balanced binary tree of 3-qubit cores: the
//! core for controls `C_1..C_{m-1}` is repeated on both sides of a single
//! `CX(C_0, t)`, with rotation magnitude `π/2^m` throughout. Every CNOT points
//! at the target, so no gate ever couples two controls.

use std::collections::BTreeSet;

use crate::angle::Angle;
use crate::circuit::{Circuit, Gate, QubitId};
use crate::error::{Error, Result};

/// Controls ordered outermost first: `controls[0]` drives one CNOT,
/// `controls[m-1]` drives `2^(m-1)` of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToffoliSpec {
    controls: Vec<QubitId>,
    target: QubitId,
}

impl ToffoliSpec {
    pub fn new(controls: impl IntoIterator<Item = usize>, target: usize) -> Result<ToffoliSpec> {
        let controls: Vec<QubitId> = controls.into_iter().map(QubitId).collect();
        if controls.len() < 2 {
            return Err(Error::TooFewControls(controls.len()));
        }
        let mut seen = BTreeSet::new();
        for &q in controls.iter().chain(std::iter::once(&QubitId(target))) {
            if !seen.insert(q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        Ok(ToffoliSpec {
            controls,
            target: QubitId(target),
        })
    }

    /// The logical `n`-qubit gate: controls on qubits `0..n-1`, target on `n-1`.
    pub fn logical(n: usize) -> Result<ToffoliSpec> {
        if n < 3 {
            return Err(Error::TooFewControls(n.saturating_sub(1)));
        }
        ToffoliSpec::new(0..n - 1, n - 1)
    }

    pub fn controls(&self) -> &[QubitId] {
        &self.controls
    }

    pub fn target(&self) -> QubitId {
        self.target
    }

    pub fn num_controls(&self) -> usize {
        self.controls.len()
    }

    /// Total qubits touched, `m + 1`.
    pub fn n(&self) -> usize {
        self.controls.len() + 1
    }

    /// Smallest register that holds every referenced qubit.
    pub fn span(&self) -> usize {
        self.controls
            .iter()
            .chain(std::iter::once(&self.target))
            .map(|q| q.0 + 1)
            .max()
            .unwrap_or(1)
    }
}

/// `θ = π / 2^m`; the paired clockwise angle is `-θ`.
pub fn rotation_angle(num_controls: usize) -> Result<Angle> {
    if num_controls < 2 {
        return Err(Error::TooFewControls(num_controls));
    }
    let k = u32::try_from(num_controls).map_err(|_| Error::AnglePrecision(u32::MAX))?;
    Angle::pi_over_pow2(k)
}

fn core_3bit_gates(outer: QubitId, inner: QubitId, target: QubitId, theta: Angle) -> [Gate; 7] {
    let rz = |angle| Gate::Rz {
        qubit: target,
        angle,
    };
    let cx = |control| Gate::Cx { control, target };
    [
        rz(theta),
        cx(inner),
        rz(-theta),
        cx(outer),
        rz(theta),
        cx(inner),
        rz(-theta),
    ]
}

/// The 7-gate 3-qubit core in application order:
/// `RZ(θ) CX(inner) RZ(-θ) CX(outer) RZ(θ) CX(inner) RZ(-θ)`.
///
/// `outer` drives the middle CNOT only; `inner` drives the two others.
pub fn core_3bit(outer: usize, inner: usize, target: usize, theta: Angle) -> Result<Circuit> {
    ToffoliSpec::new([outer, inner], target)?;
    let width = outer.max(inner).max(target) + 1;
    Circuit::from_gates(
        width,
        core_3bit_gates(QubitId(outer), QubitId(inner), QubitId(target), theta),
    )
}

/// Core of the layout-aware gate, without the enclosing Hadamards.
///
/// Contains `2^(m-1)` RZ and `2^(m-1) - 1` CNOT gates; `controls[i]` drives
/// exactly `2^i` of the CNOTs.
pub fn layout_aware_core(spec: &ToffoliSpec) -> Result<Circuit> {
    let m = spec.num_controls();
    let theta = rotation_angle(m)?;
    let target = spec.target;
    let controls = &spec.controls;

    let mut core: Vec<Gate> = core_3bit_gates(controls[m - 2], controls[m - 1], target, theta).to_vec();
    for r in (0..m - 2).rev() {
        let mut next = Vec::with_capacity(2 * core.len() + 1);
        next.extend_from_slice(&core);
        next.push(Gate::Cx {
            control: controls[r],
            target,
        });
        next.extend_from_slice(&core);
        core = next;
    }
    Circuit::from_gates(spec.span(), core)
}

/// `H(t) · core · H(t)` with the Hadamards left as macros.
pub fn layout_aware_toffoli(spec: &ToffoliSpec) -> Result<Circuit> {
    let core = layout_aware_core(spec)?;
    let t = spec.target.0;
    let mut circuit = Circuit::new(core.num_qubits())?;
    circuit.push(Gate::h(t))?;
    circuit.extend(core.gates().iter().copied())?;
    circuit.push(Gate::h(t))?;
    Ok(circuit)
}

/// Textbook 6-CNOT Toffoli with `T = RZ(π/4)`, used only as a baseline.
/// Exactly the Toffoli unitary (RZ here is `diag(1, e^{iλ})`, so `T` needs no
/// phase correction).
pub fn conventional_toffoli_3bit(spec: &ToffoliSpec) -> Result<Circuit> {
    if spec.num_controls() != 2 {
        return Err(Error::UnsupportedConventional(spec.num_controls()));
    }
    let (a, b) = (spec.controls[0].0, spec.controls[1].0);
    let t = spec.target.0;
    let tee = Angle::pi_over_pow2(2)?;
    let tdg = -tee;
    Circuit::from_gates(
        spec.span(),
        [
            Gate::h(t),
            Gate::cx(b, t),
            Gate::rz(t, tdg),
            Gate::cx(a, t),
            Gate::rz(t, tee),
            Gate::cx(b, t),
            Gate::rz(t, tdg),
            Gate::cx(a, t),
            Gate::rz(b, tee),
            Gate::rz(t, tee),
            Gate::h(t),
            Gate::cx(a, b),
            Gate::rz(a, tee),
            Gate::rz(b, tdg),
            Gate::cx(a, b),
        ],
    )
}

//! Dense statevector simulation and functional checks.
//!
//! Qubit `i` is bit `i` of the basis index. `RZ(λ) = diag(1, e^{iλ})` and
//! `SX = ½[[1+i, 1-i], [1-i, 1+i]]`.

use std::fmt;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::synth::{rotation_angle, ToffoliSpec};

pub const MAX_SIM_QUBITS: usize = 8;

/// Probability required on the expected basis state.
pub const AND_TOLERANCE: f64 = 1e-10;

pub type Matrix2 = [[Complex64; 2]; 2];

fn check_width(num_qubits: usize) -> Result<()> {
    if num_qubits > MAX_SIM_QUBITS {
        return Err(Error::TooManyQubits {
            max: MAX_SIM_QUBITS,
            actual: num_qubits,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    pub fn basis(num_qubits: usize, index: usize) -> Result<Statevector> {
        check_width(num_qubits)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Statevector {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        match *gate {
            Gate::Rz { qubit, angle } => {
                let bit = 1 << qubit.0;
                let phase = Complex64::from_polar(1.0, angle.radians());
                for (i, amp) in self.amplitudes.iter_mut().enumerate() {
                    if i & bit != 0 {
                        *amp *= phase;
                    }
                }
            }
            Gate::Sx { qubit } => {
                let bit = 1 << qubit.0;
                let p = Complex64::new(0.5, 0.5);
                let q = Complex64::new(0.5, -0.5);
                for i in 0..self.amplitudes.len() {
                    if i & bit == 0 {
                        let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | bit]);
                        self.amplitudes[i] = p * a0 + q * a1;
                        self.amplitudes[i | bit] = q * a0 + p * a1;
                    }
                }
            }
            Gate::Cx { control, target } => {
                let (cbit, tbit) = (1 << control.0, 1 << target.0);
                for i in 0..self.amplitudes.len() {
                    if i & cbit != 0 && i & tbit == 0 {
                        self.amplitudes.swap(i, i | tbit);
                    }
                }
            }
            Gate::H { .. } | Gate::Swap { .. } => return Err(Error::MacroGate(gate.name())),
        }
        Ok(())
    }

    pub fn run(&mut self, circuit: &Circuit) -> Result<()> {
        circuit.require_native()?;
        for gate in circuit.gates() {
            self.apply(gate)?;
        }
        Ok(())
    }
}

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl UnitaryMatrix {
    pub fn identity(dim: usize) -> UnitaryMatrix {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        UnitaryMatrix { dim, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> UnitaryMatrix {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        UnitaryMatrix {
            dim,
            data: rows.concat(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        assert_eq!(self.dim, rhs.dim);
        let dim = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let a = self.data[i * dim + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..dim {
                    data[i * dim + j] += a * rhs.data[k * dim + j];
                }
            }
        }
        UnitaryMatrix { dim, data }
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        let dim = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[j * dim + i] = self.data[i * dim + j].conj();
            }
        }
        UnitaryMatrix { dim, data }
    }

    /// Largest entrywise deviation from another matrix.
    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `U†U = I` entrywise within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint().mul(self).max_abs_diff(&UnitaryMatrix::identity(self.dim)) <= tol
    }

    pub fn approx_eq(&self, other: &UnitaryMatrix, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    pub fn approx_eq_up_to_phase(&self, other: &UnitaryMatrix, tol: f64) -> bool {
        self.dim == other.dim && equal_up_to_global_phase(&self.data, &other.data, tol)
    }
}

/// Entrywise comparison after aligning `b`'s phase to `a` at the
/// largest-magnitude entry of `a`.
pub fn equal_up_to_global_phase(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some((pivot, _)) = a
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, f64)>, (i, z)| match best {
            Some((_, m)) if m >= z.norm() => best,
            _ => Some((i, z.norm())),
        })
    else {
        return true;
    };
    let (pa, pb) = (a[pivot], b[pivot]);
    if pa.norm() <= tol {
        // `a` is numerically zero
        return b.iter().all(|z| z.norm() <= tol);
    }
    if pb.norm() <= tol {
        return false;
    }
    let align = (pa / pa.norm()) / (pb / pb.norm());
    a.iter().zip(b).all(|(x, y)| (x - y * align).norm() <= tol)
}

pub fn matrix2_eq_up_to_phase(a: &Matrix2, b: &Matrix2, tol: f64) -> bool {
    let flat = |m: &Matrix2| [m[0][0], m[0][1], m[1][0], m[1][1]];
    equal_up_to_global_phase(&flat(a), &flat(b), tol)
}

/// Full unitary of a native circuit, column `j` being the image of `|j⟩`.
pub fn unitary_of(circuit: &Circuit) -> Result<UnitaryMatrix> {
    check_width(circuit.num_qubits())?;
    circuit.require_native()?;
    let dim = 1usize << circuit.num_qubits();
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for col in 0..dim {
        let mut state = Statevector::basis(circuit.num_qubits(), col)?;
        state.run(circuit)?;
        for (row, amp) in state.amplitudes.iter().enumerate() {
            data[row * dim + col] = *amp;
        }
    }
    Ok(UnitaryMatrix { dim, data })
}

/// Exact `n`-qubit multi-controlled X with the target on qubit 0 and
/// controls on qubits `1..n`.
pub fn mcx_oracle(n: usize) -> Result<UnitaryMatrix> {
    if n < 3 {
        return Err(Error::TooFewQubits(n));
    }
    check_width(n)?;
    let dim = 1usize << n;
    let mut u = UnitaryMatrix::identity(dim);
    let (a, b) = (dim - 2, dim - 1);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    u.data[a * dim + a] = zero;
    u.data[b * dim + b] = zero;
    u.data[a * dim + b] = one;
    u.data[b * dim + a] = one;
    Ok(u)
}

/// Closed-form target operator when every control is `|1⟩`:
/// `½[[e^{iα}+e^{iβ}, -e^{iα}+e^{iβ}], [e^{iα}-e^{iβ}, -e^{iα}-e^{iβ}]]`
/// with `α = 2^{m-1}θ`, `β = -α`, `θ = π/2^m`.
pub fn target_operator_model(num_controls: usize) -> Result<Matrix2> {
    let theta = rotation_angle(num_controls)?.radians();
    let alpha = (num_controls as f64 - 1.0).exp2() * theta;
    let ea = Complex64::from_polar(1.0, alpha);
    let eb = Complex64::from_polar(1.0, -alpha);
    Ok([
        [(ea + eb) * 0.5, (-ea + eb) * 0.5],
        [(ea - eb) * 0.5, (-ea - eb) * 0.5],
    ])
}

fn control_basis_index(spec: &ToffoliSpec, assignment: &[bool]) -> Result<usize> {
    if assignment.len() != spec.num_controls() {
        return Err(Error::AssignmentLength {
            expected: spec.num_controls(),
            actual: assignment.len(),
        });
    }
    Ok(spec
        .controls()
        .iter()
        .zip(assignment)
        .filter(|(_, &on)| on)
        .fold(0, |acc, (q, _)| acc | (1 << q.0)))
}

fn check_spec_fits(circuit: &Circuit, spec: &ToffoliSpec) -> Result<()> {
    check_width(circuit.num_qubits())?;
    if spec.span() > circuit.num_qubits() {
        return Err(Error::QubitOutOfRange {
            qubit: crate::circuit::QubitId(spec.span() - 1),
            num_qubits: circuit.num_qubits(),
        });
    }
    Ok(())
}

/// The 2x2 operator `circuit` applies to the target with the controls fixed
/// to `assignment` (`assignment[i]` is control `i`) and all other qubits in
/// `|0⟩`. Fails if the controls or spectator qubits leave that basis state.
pub fn effective_target_operator(
    circuit: &Circuit,
    spec: &ToffoliSpec,
    assignment: &[bool],
) -> Result<Matrix2> {
    check_spec_fits(circuit, spec)?;
    let base = control_basis_index(spec, assignment)?;
    let tbit = 1usize << spec.target().0;
    let zero = Complex64::new(0.0, 0.0);
    let mut op = [[zero; 2]; 2];
    for (col, input) in [base, base | tbit].into_iter().enumerate() {
        let mut state = Statevector::basis(circuit.num_qubits(), input)?;
        state.run(circuit)?;
        let (a0, a1) = (state.amplitudes[base], state.amplitudes[base | tbit]);
        let leaked = 1.0 - a0.norm_sqr() - a1.norm_sqr();
        if leaked > AND_TOLERANCE {
            return Err(Error::ControlsDisturbed(leaked));
        }
        op[0][col] = a0;
        op[1][col] = a1;
    }
    Ok(op)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AndRow {
    /// `controls[i]` is the basis value of control `i`.
    pub controls: Vec<bool>,
    pub expected_target: bool,
    /// Probability of the expected output basis state.
    pub probability: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AndTruthTable {
    pub rows: Vec<AndRow>,
}

impl AndTruthTable {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AndRow> {
        self.rows.iter().filter(|r| !r.passed)
    }
}

impl fmt::Display for AndTruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.rows.first().map_or(0, |r| r.controls.len());
        let header: String = (0..m).map(|i| format!("C{i} ")).collect();
        writeln!(f, "{header}| target | probability | result")?;
        for row in &self.rows {
            let bits: String = row
                .controls
                .iter()
                .enumerate()
                .map(|(i, &b)| format!("{:<w$}", u8::from(b), w = format!("C{i} ").len()))
                .collect();
            writeln!(
                f,
                "{bits}| |{}>    | {:.12} | {}",
                u8::from(row.expected_target),
                row.probability,
                if row.passed { "pass" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Runs every control basis input with the target (and any spectator qubit)
/// in `|0⟩` and checks the output is the same basis state with the target set
/// to the AND of the controls.
pub fn check_and_behavior(circuit: &Circuit, spec: &ToffoliSpec) -> Result<AndTruthTable> {
    check_spec_fits(circuit, spec)?;
    circuit.require_native()?;
    let m = spec.num_controls();
    let tbit = 1usize << spec.target().0;
    let mut rows = Vec::with_capacity(1 << m);
    for pattern in 0usize..1 << m {
        let controls: Vec<bool> = (0..m).map(|i| pattern >> i & 1 == 1).collect();
        let expected_target = controls.iter().all(|&b| b);
        let input = control_basis_index(spec, &controls)?;
        let expected = if expected_target { input | tbit } else { input };
        let mut state = Statevector::basis(circuit.num_qubits(), input)?;
        state.run(circuit)?;
        let probability = state.probability(expected);
        rows.push(AndRow {
            controls,
            expected_target,
            probability,
            passed: probability >= 1.0 - AND_TOLERANCE,
        });
    }
    Ok(AndTruthTable { rows })
}

use thiserror::Error;

use crate::circuit::QubitId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("angle denominator 2^{0} exceeds the supported precision")]
    AnglePrecision(u32),

    #[error("invalid angle expression `{0}`")]
    AngleSyntax(String),

    #[error("circuit must have at least one qubit")]
    EmptyRegister,

    #[error("gate references {qubit} but the circuit has {num_qubits} qubits")]
    QubitOutOfRange { qubit: QubitId, num_qubits: usize },

    #[error("two-qubit gate acts twice on {0}")]
    RepeatedOperand(QubitId),

    #[error("cannot compose circuits over {left} and {right} qubits")]
    CompositionMismatch { left: usize, right: usize },

    #[error("macro gate `{0}` must be expanded before this operation")]
    MacroGate(&'static str),

    #[error("a Toffoli gate needs at least 2 controls, got {0}")]
    TooFewControls(usize),

    #[error("qubit {0} is used more than once in the gate specification")]
    DuplicateQubit(QubitId),

    #[error("the conventional decomposition is only available for 2 controls, got {0}")]
    UnsupportedConventional(usize),

    #[error("unknown layout `{0}` (expected linear5, tlike5, ilike7 or a JSON file)")]
    UnknownLayout(String),

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("optimal-n is only defined for 3 <= n <= 4, got n = {0}")]
    OptimalNUndefined(usize),

    #[error("n exceeds layout capacity ({n} > {capacity} qubits)")]
    ExceedsCapacity { n: usize, capacity: usize },

    #[error("gate size n = {0} is below the minimum of 3")]
    TooFewQubits(usize),

    #[error("invalid placement: {0}")]
    InvalidPlacement(String),

    #[error("no path between physical qubits {0} and {1}")]
    Disconnected(usize, usize),

    #[error("simulation supports at most {max} qubits, circuit has {actual}")]
    TooManyQubits { max: usize, actual: usize },

    #[error("controls did not stay in their basis state (leaked probability {0:e})")]
    ControlsDisturbed(f64),

    #[error("control assignment has {actual} bits, expected {expected}")]
    AssignmentLength { expected: usize, actual: usize },

    #[error("qasm line {line}: {message}")]
    Qasm { line: usize, message: String },

    #[error("layout json: {0}")]
    Json(String),
}

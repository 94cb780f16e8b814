//! Device coupling layouts and placement enumeration.
//!
//! Layouts are undirected: CNOT direction is free on every edge.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Built-in coupling graphs of the 5- and 7-qubit devices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preset {
    /// Path `0-1-2-3-4` (ibmq_manila).
    Linear5,
    /// `1` is a degree-3 hub; `3-4` hangs off it (ibmq_quito).
    TLike5,
    /// Two degree-3 hubs `1` and `5` joined through `3` (ibmq_perth).
    ILike7,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Linear5, Preset::TLike5, Preset::ILike7];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Linear5 => "linear5",
            Preset::TLike5 => "tlike5",
            Preset::ILike7 => "ilike7",
        }
    }

    pub fn device(self) -> &'static str {
        match self {
            Preset::Linear5 => "ibmq_manila",
            Preset::TLike5 => "ibmq_quito",
            Preset::ILike7 => "ibmq_perth",
        }
    }

    pub fn layout(self) -> CouplingLayout {
        let (num_qubits, edges): (usize, &[(usize, usize)]) = match self {
            Preset::Linear5 => (5, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
            Preset::TLike5 => (5, &[(0, 1), (1, 2), (1, 3), (3, 4)]),
            Preset::ILike7 => (7, &[(0, 1), (1, 2), (1, 3), (3, 5), (4, 5), (5, 6)]),
        };
        CouplingLayout::new(self.name(), num_qubits, edges.iter().copied())
            .expect("preset layouts are valid")
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Preset> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s) || p.device() == s)
            .ok_or_else(|| Error::UnknownLayout(s.to_string()))
    }
}

pub fn preset_layout(name: &str) -> Result<CouplingLayout> {
    Ok(name.parse::<Preset>()?.layout())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingLayout {
    name: String,
    num_qubits: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

/// On-disk layout document: `{"name", "num_qubits", "edges": [[a, b], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayoutDocument {
    name: String,
    num_qubits: usize,
    edges: Vec<[usize; 2]>,
}

/// Upper bound on qubits accepted from a layout document.
pub const MAX_LAYOUT_QUBITS: usize = 1 << 16;

impl CouplingLayout {
    /// Builds a layout, rejecting self-loops, out-of-range endpoints, repeated
    /// edges and disconnected graphs.
    pub fn new(
        name: impl Into<String>,
        num_qubits: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<CouplingLayout> {
        if num_qubits == 0 {
            return Err(Error::InvalidLayout("layout has no qubits".into()));
        }
        if num_qubits > MAX_LAYOUT_QUBITS {
            return Err(Error::InvalidLayout(format!(
                "{num_qubits} qubits exceeds the limit of {MAX_LAYOUT_QUBITS}"
            )));
        }
        let mut set = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); num_qubits];
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidLayout(format!("self-loop on qubit {a}")));
            }
            if a >= num_qubits || b >= num_qubits {
                return Err(Error::InvalidLayout(format!(
                    "edge {a}-{b} leaves the {num_qubits}-qubit register"
                )));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidLayout(format!("edge {a}-{b} listed twice")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let layout = CouplingLayout {
            name: name.into(),
            num_qubits,
            edges: set,
            adjacency,
        };
        if layout.distances_from(0).iter().any(Option::is_none) {
            return Err(Error::InvalidLayout("graph is not connected".into()));
        }
        Ok(layout)
    }

    pub fn from_json(text: &str) -> Result<CouplingLayout> {
        let doc: LayoutDocument = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        CouplingLayout::new(doc.name, doc.num_qubits, doc.edges.into_iter().map(|[a, b]| (a, b)))
    }

    pub fn to_json(&self) -> String {
        let doc = LayoutDocument {
            name: self.name.clone(),
            num_qubits: self.num_qubits,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        };
        serde_json::to_string(&doc).expect("layout serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Edges as `(low, high)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Neighbours in ascending order.
    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }

    pub fn degree(&self, q: usize) -> usize {
        self.adjacency[q].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.num_qubits).map(|q| self.degree(q)).max().unwrap_or(0)
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// BFS hop counts from `source`; `None` for unreachable qubits.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.num_qubits];
        let mut queue = VecDeque::from([source]);
        dist[source] = Some(0);
        while let Some(q) = queue.pop_front() {
            let d = dist[q].expect("queued qubits have a distance");
            for &nb in &self.adjacency[q] {
                if dist[nb].is_none() {
                    dist[nb] = Some(d + 1);
                    queue.push_back(nb);
                }
            }
        }
        dist
    }

    /// Lexicographically smallest shortest path, endpoints included.
    pub fn shortest_path(&self, from: usize, to: usize) -> Result<Vec<usize>> {
        let to_target = self.distances_from(to);
        let mut remaining = to_target[from].ok_or(Error::Disconnected(from, to))?;
        let mut path = vec![from];
        let mut here = from;
        while remaining > 0 {
            here = *self.adjacency[here]
                .iter()
                .find(|&&nb| to_target[nb] == Some(remaining - 1))
                .expect("a BFS predecessor exists on every shortest path");
            path.push(here);
            remaining -= 1;
        }
        Ok(path)
    }
}

impl fmt::Display for CouplingLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} qubits:", self.name, self.num_qubits)?;
        for (a, b) in self.edges() {
            write!(f, " {a}-{b}")?;
        }
        f.write_str(")")
    }
}

/// Physical qubits assigned to a gate's target and its ordered controls.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub target: usize,
    pub controls: Vec<usize>,
}

impl Placement {
    pub fn new(target: usize, controls: Vec<usize>) -> Placement {
        Placement { target, controls }
    }

    pub fn n(&self) -> usize {
        self.controls.len() + 1
    }

    /// Logical qubit `i < m` is control `i`; logical `m` is the target.
    pub fn logical_to_physical(&self) -> Vec<usize> {
        let mut map = self.controls.clone();
        map.push(self.target);
        map
    }

    pub fn validate(&self, layout: &CouplingLayout) -> Result<()> {
        let mut seen = BTreeSet::new();
        for &q in self.controls.iter().chain(std::iter::once(&self.target)) {
            if q >= layout.num_qubits() {
                return Err(Error::InvalidPlacement(format!(
                    "qubit {q} is outside the {}-qubit layout",
                    layout.num_qubits()
                )));
            }
            if !seen.insert(q) {
                return Err(Error::InvalidPlacement(format!("qubit {q} used twice")));
            }
        }
        if self.controls.len() < 2 {
            return Err(Error::InvalidPlacement("at least two controls are required".into()));
        }
        Ok(())
    }

    /// Every control adjacent to the target.
    pub fn is_star(&self, layout: &CouplingLayout) -> bool {
        self.controls.iter().all(|&c| layout.are_adjacent(c, self.target))
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={} c=[", self.target)?;
        for (i, c) in self.controls.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// Parses `target,c0,c1,...`.
impl FromStr for Placement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Placement> {
        let mut qubits = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let q = part
                .parse::<usize>()
                .map_err(|_| Error::InvalidPlacement(format!("`{part}` is not a qubit index")))?;
            qubits.push(q);
        }
        let target = qubits.remove(0);
        Ok(Placement::new(target, qubits))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NClass {
    OptimalN,
    CriticalN,
}

impl fmt::Display for NClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NClass::OptimalN => "optimal-n",
            NClass::CriticalN => "critical-n",
        })
    }
}

/// All star placements for an `n`-qubit gate: a target with at least `n-1`
/// neighbours and an ordered choice of `n-1` of them as controls. Sorted by
/// target, then lexicographically by control sequence.
pub fn enumerate_configurations(layout: &CouplingLayout, n: usize) -> Result<Vec<Placement>> {
    if !(3..=4).contains(&n) {
        return Err(Error::OptimalNUndefined(n));
    }
    let m = n - 1;
    let mut out = Vec::new();
    for target in 0..layout.num_qubits() {
        let neighbors = layout.neighbors(target);
        if neighbors.len() < m {
            continue;
        }
        let mut chosen = Vec::with_capacity(m);
        let mut used = vec![false; neighbors.len()];
        arrangements(neighbors, m, &mut chosen, &mut used, &mut |controls| {
            out.push(Placement::new(target, controls.to_vec()));
        });
    }
    Ok(out)
}

fn arrangements(
    pool: &[usize],
    k: usize,
    chosen: &mut Vec<usize>,
    used: &mut [bool],
    emit: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == k {
        emit(chosen);
        return;
    }
    for i in 0..pool.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        chosen.push(pool[i]);
        arrangements(pool, k, chosen, used, emit);
        chosen.pop();
        used[i] = false;
    }
}

pub fn classify(layout: &CouplingLayout, n: usize) -> Result<NClass> {
    if n < 3 {
        return Err(Error::TooFewQubits(n));
    }
    if n > layout.num_qubits() {
        return Err(Error::ExceedsCapacity {
            n,
            capacity: layout.num_qubits(),
        });
    }
    if n <= 4 && !enumerate_configurations(layout, n)?.is_empty() {
        Ok(NClass::OptimalN)
    } else {
        Ok(NClass::CriticalN)
    }
}

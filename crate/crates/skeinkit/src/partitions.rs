//! Partitions and their Young-diagram combinatorics: cells and contents,
//! addable and removable corners, transposition, and the up-down tableau
//! walks that index the branching rules downstream.
//!
//! Cells use 0-based (row, col) coordinates and the content of a cell is
//! col - row. Corner lists are reported top row first, which is the unique
//! ordering consistent with reading the diagram boundary once.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::RingElem;

// ---- Partitions ----

/// A partition: weakly decreasing positive parts, empty for the partition
/// of zero. Derived ordering is lexicographic on the part list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    /// Validate and build; parts must be weakly decreasing and positive
    /// (trailing zeros are stripped).
    pub fn try_new(mut parts: Vec<i64>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::BadInput(format!(
                    "partition parts must be weakly decreasing, got {parts:?}"
                )));
            }
        }
        if parts.iter().any(|&p| p <= 0) {
            return Err(Error::BadInput(format!(
                "partition parts must be positive, got {parts:?}"
            )));
        }
        Ok(Self { parts })
    }

    pub fn new(parts: Vec<i64>) -> Self {
        Self::try_new(parts).expect("valid partition")
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The number being partitioned.
    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Row length with zero padding past the last row.
    pub fn row(&self, i: usize) -> i64 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Diagram inclusion, row by row.
    pub fn contains(&self, other: &Self) -> bool {
        (0..other.len()).all(|i| self.row(i) >= other.row(i))
    }

    pub fn transpose(&self) -> Self {
        let rows = self.row(0);
        let parts = (0..rows)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count() as i64)
            .collect();
        Self { parts }
    }

    /// All cells of the diagram, row-major.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 0..p {
                out.push(Cell {
                    row: i as i64,
                    col: j,
                });
            }
        }
        out
    }

    /// Union of two part lists as a multiset, re-sorted decreasing.
    pub fn merge(&self, other: &Self) -> Self {
        let mut parts: Vec<i64> = self
            .parts
            .iter()
            .chain(other.parts.iter())
            .copied()
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.parts
                .iter()
                .map(|&p| serde_json::Value::from(p))
                .collect(),
        )
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

// ---- Cells ----

/// One box of a Young diagram at 0-based (row, col).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Cell {
    pub row: i64,
    pub col: i64,
}

impl Cell {
    /// Content col - row.
    pub fn content(&self) -> i64 {
        self.col - self.row
    }
}

// ---- Corner moves ----

/// Which corner move to enumerate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CornerMode {
    Add,
    Remove,
}

/// All one-box neighbors of `lambda` in the given direction, each paired with
/// the moved cell. Results are ordered by cell row, top first.
pub fn corners(lambda: &Partition, mode: CornerMode) -> Vec<(Partition, Cell)> {
    let mut out = Vec::new();
    match mode {
        CornerMode::Add => {
            for i in 0..=lambda.len() {
                let here = lambda.row(i);
                if i > 0 && here == lambda.row(i - 1) {
                    continue;
                }
                let mut parts = lambda.parts.clone();
                if i == lambda.len() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                out.push((
                    Partition { parts },
                    Cell {
                        row: i as i64,
                        col: here,
                    },
                ));
            }
        }
        CornerMode::Remove => {
            for i in 0..lambda.len() {
                let here = lambda.row(i);
                if here == lambda.row(i + 1) {
                    continue;
                }
                let mut parts = lambda.parts.clone();
                parts[i] -= 1;
                if parts[i] == 0 {
                    parts.pop();
                }
                out.push((
                    Partition { parts },
                    Cell {
                        row: i as i64,
                        col: here - 1,
                    },
                ));
            }
        }
    }
    out
}

/// Σ over cells of s^(sign · 2k · content); the empty diagram gives 0.
pub fn content_sum(lambda: &Partition, k: i64, sign: i64) -> RingElem {
    let mut out = RingElem::zero();
    for cell in lambda.cells() {
        out = out.add(&RingElem::s_pow(sign.signum() * 2 * k * cell.content()));
    }
    out
}

// ---- Up-down tableaux ----

/// A walk on Young's lattice starting at the one-box diagram, moving by one
/// box per step. Its length is the number of diagrams in the sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UpDownTableau {
    seq: Vec<Partition>,
}

impl UpDownTableau {
    pub fn try_new(seq: Vec<Partition>) -> Result<Self> {
        if seq.first() != Some(&Partition::new(vec![1])) {
            return Err(Error::BadInput(
                "up-down tableau must start at the one-box diagram".into(),
            ));
        }
        for w in seq.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let step_ok = (b.size() - a.size()).abs() == 1
                && (a.contains(b) || b.contains(a));
            if !step_ok {
                return Err(Error::BadInput(format!(
                    "illegal up-down step {a} -> {b}"
                )));
            }
        }
        Ok(Self { seq })
    }

    pub fn seq(&self) -> &[Partition] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn shape(&self) -> &Partition {
        self.seq.last().expect("nonempty sequence")
    }

    /// True when every step adds a box (a standard tableau read as a walk).
    pub fn is_standard(&self) -> bool {
        self.seq
            .windows(2)
            .all(|w| w[1].size() == w[0].size() + 1)
    }

    /// The cell moved at step t (1-based); step 1 is the initial box at the
    /// origin.
    pub fn moved_cell(&self, t: usize) -> Cell {
        if t == 1 {
            return Cell { row: 0, col: 0 };
        }
        let (a, b) = (&self.seq[t - 2], &self.seq[t - 1]);
        let (big, small) = if b.size() > a.size() { (b, a) } else { (a, b) };
        for i in 0..big.len() {
            if big.row(i) != small.row(i) {
                return Cell {
                    row: i as i64,
                    col: big.row(i) - 1,
                };
            }
        }
        unreachable!("consecutive diagrams differ by one box")
    }
}

fn neighbors(lambda: &Partition) -> Vec<Partition> {
    let mut out: Vec<Partition> = corners(lambda, CornerMode::Add)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    out.extend(
        corners(lambda, CornerMode::Remove)
            .into_iter()
            .map(|(p, _)| p),
    );
    out
}

/// Number of up-down tableaux with n diagrams ending at `lambda`, by dynamic
/// programming over Young's lattice.
pub fn up_down_count(n: usize, lambda: &Partition) -> u64 {
    assert!(n >= 1, "tableau length must be at least 1");
    let mut layer: std::collections::BTreeMap<Partition, u64> = std::collections::BTreeMap::new();
    layer.insert(Partition::new(vec![1]), 1);
    for _ in 1..n {
        let mut next: std::collections::BTreeMap<Partition, u64> = std::collections::BTreeMap::new();
        for (mu, count) in &layer {
            for nu in neighbors(mu) {
                *next.entry(nu).or_insert(0) += count;
            }
        }
        layer = next;
    }
    layer.get(lambda).copied().unwrap_or(0)
}

/// Every up-down tableau with n diagrams ending at `lambda`.
pub fn up_down_tableaux(n: usize, lambda: &Partition) -> Vec<UpDownTableau> {
    assert!(n >= 1, "tableau length must be at least 1");
    let mut out = Vec::new();
    let mut stack = vec![Partition::new(vec![1])];
    extend_walks(&mut stack, n, lambda, &mut out);
    out
}

fn extend_walks(
    stack: &mut Vec<Partition>,
    n: usize,
    target: &Partition,
    out: &mut Vec<UpDownTableau>,
) {
    if stack.len() == n {
        if stack.last() == Some(target) {
            out.push(UpDownTableau { seq: stack.clone() });
        }
        return;
    }
    // Prune walks that cannot reach the target size in the remaining steps.
    let remaining = (n - stack.len()) as i64;
    let gap = (target.size() - stack.last().unwrap().size()).abs();
    if gap > remaining || (remaining - gap) % 2 != 0 {
        return;
    }
    for nu in neighbors(stack.last().unwrap()) {
        stack.push(nu);
        extend_walks(stack, n, target, out);
        stack.pop();
    }
}

/// The add-only walks ending at `lambda`: standard tableaux of that shape.
pub fn standard_tableaux(lambda: &Partition) -> Vec<UpDownTableau> {
    let n = lambda.size();
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut stack = vec![Partition::new(vec![1])];
    extend_standard(&mut stack, lambda, &mut out);
    out
}

fn extend_standard(stack: &mut Vec<Partition>, target: &Partition, out: &mut Vec<UpDownTableau>) {
    let top = stack.last().unwrap();
    if top.size() == target.size() {
        if top == target {
            out.push(UpDownTableau { seq: stack.clone() });
        }
        return;
    }
    for (nu, _) in corners(top, CornerMode::Add) {
        if target.contains(&nu) {
            stack.push(nu);
            extend_standard(&mut *stack, target, out);
            stack.pop();
        }
    }
}

// ---- Enumeration ----

/// All partitions of exactly n, in descending lexicographic order.
pub fn partitions_of(n: i64) -> Vec<Partition> {
    fn go(remaining: i64, max_part: i64, prefix: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        let cap = remaining.min(max_part);
        for p in (1..=cap).rev() {
            prefix.push(p);
            go(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n.max(0), n.max(0), &mut Vec::new(), &mut out);
    if n == 0 {
        return vec![Partition::empty()];
    }
    out
}

/// All partitions of size at most `max`, smaller sizes first.
pub fn partitions_up_to(max: i64) -> Vec<Partition> {
    (0..=max).flat_map(partitions_of).collect()
}

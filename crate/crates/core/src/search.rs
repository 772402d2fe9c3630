//! Hamiltonian cycles on the 1-skeleton and the quasigeodesic angle condition.
//!
//! A closed edge path through every vertex is a quasigeodesic when, at each
//! vertex, the total face angle on either side of the path is at most π. The
//! angle at a vertex is known as soon as both of its path edges are, so the
//! backtracking search checks each vertex the moment it becomes interior to
//! the partial path.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::mesh::{Polyhedron, TOL_ANGLE};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CycleError {
    #[error("cannot parse cycle {0:?}")]
    Parse(String),
    #[error("cycle has {len} vertices but the polyhedron has {expected}")]
    WrongLength { len: usize, expected: usize },
    #[error("vertex {} is out of range", .0 + 1)]
    OutOfRange(usize),
    #[error("vertex {} is visited twice", .0 + 1)]
    Repeated(usize),
    #[error("{}-{} is not an edge", .0 + 1, .1 + 1)]
    NotAnEdge(usize, usize),
    #[error("vertex {} is not on the cycle", .0 + 1)]
    NotOnCycle(usize),
}

/// A Hamiltonian cycle on the skeleton, in a definite traversal direction.
///
/// Vertices are 0-based; `Display` and [`HamCycle::parse`] use 1-based labels
/// joined by dashes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HamCycle(Vec<usize>);

impl HamCycle {
    /// Checks that `order` visits every vertex once along edges of `p`.
    pub fn new(p: &Polyhedron, order: Vec<usize>) -> Result<Self, CycleError> {
        let n = p.num_vertices();
        if order.len() != n {
            return Err(CycleError::WrongLength { len: order.len(), expected: n });
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n {
                return Err(CycleError::OutOfRange(v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(CycleError::Repeated(v));
            }
        }
        let c = HamCycle(order);
        for (a, b) in c.edges() {
            if !p.has_edge(a, b) {
                return Err(CycleError::NotAnEdge(a, b));
            }
        }
        Ok(c)
    }

    /// Parses `"1-5-6-2"` (1-based), or the compact form `"1562"` when every
    /// label is a single digit.
    pub fn parse(p: &Polyhedron, text: &str) -> Result<Self, CycleError> {
        let text = text.trim();
        let labels: Vec<usize> = if text.contains('-') {
            text.split('-')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| CycleError::Parse(text.to_string()))?
        } else if !text.is_empty() && text.bytes().all(|b| b.is_ascii_digit()) {
            text.bytes().map(|b| (b - b'0') as usize).collect()
        } else {
            return Err(CycleError::Parse(text.to_string()));
        };
        if labels.contains(&0) {
            return Err(CycleError::Parse(text.to_string()));
        }
        HamCycle::new(p, labels.into_iter().map(|l| l - 1).collect())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Directed edges in traversal order, closing edge last.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (self.0[i], self.0[(i + 1) % n]))
    }

    /// Position of `v` in the traversal.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }

    /// `(incoming, outgoing)` neighbours of `v` along the traversal.
    pub fn neighbors_of(&self, v: usize) -> Option<(usize, usize)> {
        let n = self.0.len();
        self.position(v).map(|i| (self.0[(i + n - 1) % n], self.0[(i + 1) % n]))
    }

    /// Whether `{a, b}` is an edge of the cycle, and if so, in which direction
    /// it is traversed.
    pub fn directed_edge(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        self.edges().find(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    pub fn reversed(&self) -> HamCycle {
        let mut v = self.0.clone();
        v[1..].reverse();
        HamCycle(v)
    }

    /// Lexicographically smallest sequence over all rotations and both directions.
    pub fn canonical(&self) -> HamCycle {
        HamCycle(canonical_sequence(&self.0))
    }

    pub fn is_canonical(&self) -> bool {
        canonical_sequence(&self.0) == self.0
    }
}

impl fmt::Display for HamCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

pub fn canonical_sequence(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        for dir in [1isize, -1] {
            let cand: Vec<usize> = (0..n as isize)
                .map(|k| seq[(start as isize + dir * k).rem_euclid(n as isize) as usize])
                .collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("non-empty")
}

/// Side angles at one cycle vertex. `left` is the face angle to the left of the
/// traversal direction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VertexSplit {
    pub vertex: usize,
    pub left: f64,
    pub right: f64,
}

impl VertexSplit {
    pub fn satisfies(&self, tol: f64) -> bool {
        self.left <= PI + tol && self.right <= PI + tol
    }
}

/// Per-vertex side angles of a cycle, in traversal order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SideSplit(pub Vec<VertexSplit>);

impl SideSplit {
    pub fn get(&self, v: usize) -> Option<&VertexSplit> {
        self.0.iter().find(|s| s.vertex == v)
    }

    /// First vertex with a side angle above π + `tol`.
    pub fn first_violation(&self, tol: f64) -> Option<&VertexSplit> {
        self.0.iter().find(|s| !s.satisfies(tol))
    }
}

/// Face-angle prefix sums around each vertex in rotation order. Used for the
/// constant-time side angle lookups inside the search.
struct AngleTable {
    /// per vertex: neighbour -> index in rotation order
    slot: Vec<Vec<(usize, usize)>>,
    /// per vertex: prefix sums of wedge angles, length degree + 1
    prefix: Vec<Vec<f64>>,
}

impl AngleTable {
    fn new(p: &Polyhedron) -> Self {
        let mut slot = Vec::with_capacity(p.num_vertices());
        let mut prefix = Vec::with_capacity(p.num_vertices());
        for v in 0..p.num_vertices() {
            let rot = p.rotation_order(v);
            let mut s: Vec<(usize, usize)> = rot.iter().enumerate().map(|(i, w)| (w.neighbor, i)).collect();
            s.sort_unstable();
            let mut acc = vec![0.0];
            for w in rot {
                let a = p.corner_angle(w.face, v).expect("rotation faces contain their vertex");
                acc.push(acc.last().copied().unwrap_or(0.0) + a);
            }
            slot.push(s);
            prefix.push(acc);
        }
        AngleTable { slot, prefix }
    }

    fn index(&self, v: usize, neighbor: usize) -> Option<usize> {
        self.slot[v]
            .binary_search_by_key(&neighbor, |&(n, _)| n)
            .ok()
            .map(|k| self.slot[v][k].1)
    }

    /// (left, right) at `v` for a path arriving from `incoming` and leaving to `outgoing`.
    fn split(&self, v: usize, incoming: usize, outgoing: usize) -> Option<(f64, f64)> {
        let i_out = self.index(v, outgoing)?;
        let i_in = self.index(v, incoming)?;
        let pre = &self.prefix[v];
        let total = pre[pre.len() - 1];
        // counterclockwise from the outgoing edge to the incoming edge
        let left = if i_out <= i_in {
            pre[i_in] - pre[i_out]
        } else {
            total - pre[i_out] + pre[i_in]
        };
        Some((left, total - left))
    }
}

/// Side angles at `vertex`: faces met going counterclockwise (seen from outside)
/// from the outgoing cycle edge to the incoming one are on the left.
pub fn side_split(p: &Polyhedron, q: &HamCycle, vertex: usize) -> Result<(f64, f64), CycleError> {
    let (incoming, outgoing) = q.neighbors_of(vertex).ok_or(CycleError::NotOnCycle(vertex))?;
    let rot = p.rotation_order(vertex);
    let start = rot
        .iter()
        .position(|w| w.neighbor == outgoing)
        .ok_or(CycleError::NotAnEdge(vertex, outgoing))?;
    if !rot.iter().any(|w| w.neighbor == incoming) {
        return Err(CycleError::NotAnEdge(incoming, vertex));
    }
    let (mut left, mut right) = (0.0, 0.0);
    let mut on_left = true;
    for k in 0..rot.len() {
        let w = rot[(start + k) % rot.len()];
        if w.neighbor == incoming {
            on_left = false;
        }
        let a = p.corner_angle(w.face, vertex).expect("rotation faces contain their vertex");
        if on_left {
            left += a;
        } else {
            right += a;
        }
    }
    Ok((left, right))
}

/// The full side-angle table and whether every side is at most π (+ `TOL_ANGLE`).
pub fn is_quasigeodesic(p: &Polyhedron, q: &HamCycle) -> Result<(bool, SideSplit), CycleError> {
    let mut out = Vec::with_capacity(q.len());
    for &v in q.vertices() {
        let (left, right) = side_split(p, q, v)?;
        out.push(VertexSplit { vertex: v, left, right });
    }
    let split = SideSplit(out);
    Ok((split.first_violation(TOL_ANGLE).is_none(), split))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub limit: Option<usize>,
    /// Split the first branching level across the rayon pool.
    pub parallel: bool,
}

/// All canonical Hamiltonian quasigeodesics, in lexicographic order.
pub fn find_ham_quasigeodesics(p: &Polyhedron, limit: Option<usize>) -> Vec<HamCycle> {
    search(p, true, SearchOptions { limit, parallel: false })
}

/// All canonical Hamiltonian cycles, with no angle condition.
pub fn find_ham_cycles(p: &Polyhedron, limit: Option<usize>) -> Vec<HamCycle> {
    search(p, false, SearchOptions { limit, parallel: false })
}

/// Backtracking from vertex 0. A cycle is only completed when its second vertex
/// is smaller than its last, so every cycle comes out exactly once, already
/// canonical, and in lexicographic order (neighbours are tried ascending).
pub fn search(p: &Polyhedron, quasigeodesic: bool, opts: SearchOptions) -> Vec<HamCycle> {
    let n = p.num_vertices();
    if n < 3 || opts.limit == Some(0) {
        return Vec::new();
    }
    let ctx = Ctx {
        p,
        table: quasigeodesic.then(|| AngleTable::new(p)),
        limit: opts.limit.unwrap_or(usize::MAX),
    };
    let firsts: Vec<usize> = p.neighbors(0).to_vec();
    let run = |first: usize| {
        let mut st = State { path: vec![0, first], visited: vec![false; n], out: Vec::new() };
        st.visited[0] = true;
        st.visited[first] = true;
        ctx.extend(&mut st);
        st.out
    };
    let branches: Vec<Vec<Vec<usize>>> = if opts.parallel {
        firsts.par_iter().map(|&f| run(f)).collect()
    } else {
        let mut acc = Vec::new();
        let mut total = 0;
        for &f in &firsts {
            if total >= ctx.limit {
                break;
            }
            let b = run(f);
            total += b.len();
            acc.push(b);
        }
        acc
    };
    branches
        .into_iter()
        .flatten()
        .take(ctx.limit)
        .map(HamCycle)
        .collect()
}

struct Ctx<'a> {
    p: &'a Polyhedron,
    table: Option<AngleTable>,
    limit: usize,
}

struct State {
    path: Vec<usize>,
    visited: Vec<bool>,
    out: Vec<Vec<usize>>,
}

impl Ctx<'_> {
    fn ok_at(&self, v: usize, incoming: usize, outgoing: usize) -> bool {
        match &self.table {
            None => true,
            Some(t) => t
                .split(v, incoming, outgoing)
                .is_some_and(|(l, r)| l <= PI + TOL_ANGLE && r <= PI + TOL_ANGLE),
        }
    }

    fn extend(&self, st: &mut State) {
        if st.out.len() >= self.limit {
            return;
        }
        let n = st.visited.len();
        let len = st.path.len();
        let last = st.path[len - 1];
        let first = st.path[1];
        if len == n {
            if last > first && self.p.has_edge(last, 0) {
                let prev = st.path[len - 2];
                if self.ok_at(last, prev, 0) && self.ok_at(0, last, first) {
                    st.out.push(st.path.clone());
                }
            }
            return;
        }
        // the closing vertex must be an unvisited neighbour of 0 above `first`
        if !self.p.neighbors(0).iter().any(|&w| w > first && !st.visited[w]) {
            return;
        }
        let prev = st.path[len - 2];
        for &w in self.p.neighbors(last) {
            if st.visited[w] || !self.ok_at(last, prev, w) {
                continue;
            }
            st.visited[w] = true;
            st.path.push(w);
            self.extend(st);
            st.path.pop();
            st.visited[w] = false;
            if st.out.len() >= self.limit {
                return;
            }
        }
    }
}

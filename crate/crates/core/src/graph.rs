//! Exhaustive transition graphs of networks with finite state sets.
//!
//! Node `u` encodes the state whose neuron `i` takes the `d_i`-th element of
//! the activation's state set, where `d_0 d_1 ... d_{N-1}` are the base-|S|
//! digits of `u` with neuron 0 as the most significant digit.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::activation::StateSet;
use crate::error::{Error, Result};
use crate::network::{Network, StateVector};

pub const DEFAULT_NODE_CAP: usize = 1_000_000;

/// A single-neuron update that changes the network state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub neuron: usize,
}

#[derive(Clone, Debug)]
pub struct TransitionGraph {
    neurons: usize,
    dim: usize,
    states: Vec<Vec<f64>>,
    edges: Vec<Edge>,
    // edges[offsets[u]..offsets[u + 1]] leave node u
    offsets: Vec<usize>,
}

pub fn enumerate_graph(net: &Network) -> Result<TransitionGraph> {
    enumerate_graph_with_cap(net, DEFAULT_NODE_CAP)
}

pub fn enumerate_graph_with_cap(net: &Network, cap: usize) -> Result<TransitionGraph> {
    let states = match net.state_set() {
        StateSet::Finite(states) => states,
        StateSet::UnitSphere { .. } => {
            return Err(Error::InfiniteStateSet(net.activation().to_string()))
        }
    };
    let n = net.n();
    let radix = states.len();
    let nodes = (radix as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if nodes > cap as u128 {
        return Err(Error::NodeCapExceeded { nodes, cap });
    }
    let nodes = nodes as usize;
    let lookup: HashMap<Vec<u64>, usize> = states
        .iter()
        .enumerate()
        .map(|(k, s)| (bits(s), k))
        .collect();
    let mut graph = TransitionGraph {
        neurons: n,
        dim: net.dim(),
        states,
        edges: Vec::new(),
        offsets: Vec::with_capacity(nodes + 1),
    };
    for u in 0..nodes {
        graph.offsets.push(graph.edges.len());
        let x = graph.decode(u);
        for i in 0..n {
            let (next, changed) = net.step(&x, i)?;
            if !changed {
                continue;
            }
            let digit = *lookup
                .get(&bits(next.neuron(i)))
                .ok_or(Error::InvalidState { neuron: i })?;
            let place = graph.place(i);
            let old_digit = (u / place) % radix;
            let to = u - old_digit * place + digit * place;
            graph.edges.push(Edge { from: u, to, neuron: i });
        }
    }
    graph.offsets.push(graph.edges.len());
    Ok(graph)
}

fn bits(s: &[f64]) -> Vec<u64> {
    // -0.0 and 0.0 denote the same state
    s.iter().map(|&c| if c == 0.0 { 0 } else { c.to_bits() }).collect()
}

impl TransitionGraph {
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neurons(&self) -> usize {
        self.neurons
    }

    pub fn radix(&self) -> usize {
        self.states.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, u: usize) -> &[Edge] {
        &self.edges[self.offsets[u]..self.offsets[u + 1]]
    }

    fn place(&self, neuron: usize) -> usize {
        self.radix().pow((self.neurons - 1 - neuron) as u32)
    }

    pub fn decode(&self, u: usize) -> StateVector {
        let data = (0..self.neurons)
            .flat_map(|i| self.states[(u / self.place(i)) % self.radix()].iter().copied())
            .collect();
        StateVector::from_flat(self.dim, data).expect("consistent dimensions")
    }

    pub fn encode(&self, x: &StateVector) -> Option<usize> {
        if x.len() != self.neurons || x.dim() != self.dim {
            return None;
        }
        let mut u = 0;
        for i in 0..self.neurons {
            let b = bits(x.neuron(i));
            let digit = self.states.iter().position(|s| bits(s) == b)?;
            u = u * self.radix() + digit;
        }
        Some(u)
    }

    /// Nodes reachable from `start` (including `start`), in BFS order.
    pub fn reachable(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.node_count()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for e in self.out_edges(u) {
                if !seen[e.to] {
                    seen[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
        order
    }

    /// Fixed points reachable from `node`, sorted.
    pub fn basin(&self, node: usize) -> Vec<usize> {
        let mut fixed: Vec<usize> = self
            .reachable(node)
            .into_iter()
            .filter(|&u| self.out_edges(u).is_empty())
            .collect();
        fixed.sort_unstable();
        fixed
    }

    /// Length of the longest chain of state changes from `start`, or `None`
    /// when a cycle is reachable.
    pub fn longest_path_from(&self, start: usize) -> Option<usize> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut mark = vec![0u8; self.node_count()];
        let mut depth = vec![0usize; self.node_count()];
        let mut stack = vec![(start, 0usize)];
        mark[start] = 1;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            let out = self.out_edges(u);
            if *next < out.len() {
                let v = out[*next].to;
                *next += 1;
                match mark[v] {
                    0 => {
                        mark[v] = 1;
                        stack.push((v, 0));
                    }
                    1 => return None,
                    _ => {}
                }
            } else {
                depth[u] = out.iter().map(|e| depth[e.to] + 1).max().unwrap_or(0);
                mark[u] = 2;
                stack.pop();
            }
        }
        Some(depth[start])
    }

    /// True if mapping every node through `relabel` turns this graph's edge
    /// set into `other`'s.
    pub fn matches_under(&self, other: &TransitionGraph, relabel: impl Fn(usize) -> usize) -> bool {
        if self.node_count() != other.node_count() || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut mapped: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                from: relabel(e.from),
                to: relabel(e.to),
                neuron: e.neuron,
            })
            .collect();
        let mut theirs = other.edges.clone();
        mapped.sort_unstable();
        theirs.sort_unstable();
        mapped == theirs
    }

    fn state_label(&self, u: usize) -> String {
        let x = self.decode(u);
        let parts: Vec<String> = (0..self.neurons)
            .map(|i| {
                let c = x.neuron(i);
                let body: Vec<String> = c.iter().map(|v| format!("{v}")).collect();
                format!("({})", body.join(","))
            })
            .collect();
        parts.join(" ")
    }
}

/// Fixed points and nodes lying on directed cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub fixed_points: Vec<usize>,
    pub cyclic_nodes: Vec<usize>,
    pub counts: ClassificationCounts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationCounts {
    pub nodes: usize,
    pub edges: usize,
    pub fixed_points: usize,
    pub cyclic_nodes: usize,
}

impl Classification {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn classify(g: &TransitionGraph) -> Classification {
    let fixed_points: Vec<usize> = (0..g.node_count())
        .filter(|&u| g.out_edges(u).is_empty())
        .collect();
    let mut pg: DiGraph<(), ()> = DiGraph::with_capacity(g.node_count(), g.edges.len());
    for _ in 0..g.node_count() {
        pg.add_node(());
    }
    for e in &g.edges {
        pg.add_edge((e.from as u32).into(), (e.to as u32).into(), ());
    }
    // self-edges are never recorded, so a node is on a cycle iff its SCC has >= 2 nodes
    let mut cyclic_nodes: Vec<usize> = tarjan_scc(&pg)
        .into_iter()
        .filter(|scc| scc.len() >= 2)
        .flatten()
        .map(|ix| ix.index())
        .collect();
    cyclic_nodes.sort_unstable();
    Classification {
        counts: ClassificationCounts {
            nodes: g.node_count(),
            edges: g.edges.len(),
            fixed_points: fixed_points.len(),
            cyclic_nodes: cyclic_nodes.len(),
        },
        fixed_points,
        cyclic_nodes,
    }
}

/// Renders the graph as DOT. Edges reachable from `highlight` are red; fixed
/// points are drawn with a double circle.
pub fn to_dot(g: &TransitionGraph, highlight: Option<usize>) -> String {
    let mut hot = vec![false; g.node_count()];
    if let Some(start) = highlight.filter(|&s| s < g.node_count()) {
        for u in g.reachable(start) {
            hot[u] = true;
        }
    }
    let mut out = String::from("digraph transitions {\n");
    out.push_str("  node [shape=circle];\n");
    for u in 0..g.node_count() {
        let shape = if g.out_edges(u).is_empty() {
            ", shape=doublecircle"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  n{u} [label=\"{}\", tooltip=\"{}\"{shape}];",
            u + 1,
            g.state_label(u)
        );
    }
    for e in &g.edges {
        let color = if hot[e.from] { ", color=red" } else { "" };
        let _ = writeln!(
            out,
            "  n{} -> n{} [label=\"{}\"{color}];",
            e.from,
            e.to,
            e.neuron + 1
        );
    }
    out.push_str("}\n");
    out
}

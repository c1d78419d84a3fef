//! Explicit-state reachability graphs and exact dead/live transition sets.
//!
//! Everything here quantifies over the full reachability set, so queries on a
//! graph that was cut off by the state cap are refused rather than answered
//! approximately.

use std::collections::{HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;
use thiserror::Error;

use crate::net::{FireError, Marking, Net, TransitionId, TransitionSet};

pub const DEFAULT_MAX_STATES: usize = 100_000;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReachError {
    #[error("the state cap must be at least 1")]
    ZeroStateCap,
    #[error("reachability graph is incomplete; dead/live sets are undefined")]
    Incomplete,
    #[error("node {0} does not exist")]
    UnknownNode(NodeId),
    #[error(transparent)]
    Fire(#[from] FireError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: NodeId,
    pub transition: TransitionId,
    pub target: NodeId,
}

/// Markings reachable from an initial marking, explored breadth-first.
///
/// Node `0` is the initial marking. Node ids follow BFS discovery order and
/// `parent` links give a shortest firing sequence to every node.
#[derive(Clone, Debug)]
pub struct ReachGraph {
    markings: Vec<Marking>,
    index: HashMap<Marking, NodeId>,
    edges: Vec<Edge>,
    successors: Vec<Vec<usize>>,
    parent: Vec<Option<(NodeId, TransitionId)>>,
    complete: bool,
}

impl ReachGraph {
    pub const INITIAL: NodeId = 0;

    pub fn n_nodes(&self) -> usize {
        self.markings.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn marking(&self, node: NodeId) -> &Marking {
        &self.markings[node]
    }

    pub fn markings(&self) -> &[Marking] {
        &self.markings
    }

    pub fn node_of(&self, m: &Marking) -> Option<NodeId> {
        self.index.get(m).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, node: NodeId) -> impl Iterator<Item = &Edge> + '_ {
        self.successors[node].iter().map(move |&e| &self.edges[e])
    }

    /// Shortest firing sequence from the initial marking to `node`.
    pub fn trace_to(&self, node: NodeId) -> Vec<TransitionId> {
        let mut trace = Vec::new();
        let mut current = node;
        while let Some((prev, t)) = self.parent[current] {
            trace.push(t);
            current = prev;
        }
        trace.reverse();
        trace
    }

    fn check(&self, node: NodeId) -> Result<(), ReachError> {
        if !self.complete {
            return Err(ReachError::Incomplete);
        }
        if node >= self.n_nodes() {
            return Err(ReachError::UnknownNode(node));
        }
        Ok(())
    }

    /// Nodes reachable from `node` (including itself).
    pub fn forward_closure(&self, node: NodeId) -> Vec<bool> {
        let mut seen = vec![false; self.n_nodes()];
        let mut stack = vec![node];
        seen[node] = true;
        while let Some(u) = stack.pop() {
            for e in self.out_edges(u) {
                if !seen[e.target] {
                    seen[e.target] = true;
                    stack.push(e.target);
                }
            }
        }
        seen
    }

    /// Nodes from which some node in `targets` is reachable.
    pub fn backward_closure(&self, targets: &[bool]) -> Vec<bool> {
        let mut predecessors = vec![Vec::new(); self.n_nodes()];
        for e in &self.edges {
            predecessors[e.target].push(e.source);
        }
        let mut seen = targets.to_vec();
        let mut stack: Vec<NodeId> = (0..self.n_nodes()).filter(|&u| targets[u]).collect();
        while let Some(v) = stack.pop() {
            for &u in &predecessors[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }

    /// Graphviz rendering; nodes are labelled with their token vectors.
    pub fn to_dot(&self, net: &Net) -> String {
        let mut out = String::from("digraph reachability {\n");
        for (i, m) in self.markings.iter().enumerate() {
            let label = marking_label(net, m);
            let shape = if i == Self::INITIAL {
                "doublecircle"
            } else {
                "ellipse"
            };
            out.push_str(&format!("  n{i} [label=\"{label}\", shape={shape}];\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"];\n",
                e.source,
                e.target,
                net.transition_name(e.transition)
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// `{p1:1, p2:0}` style rendering, omitting nothing.
pub fn marking_label(net: &Net, m: &Marking) -> String {
    let parts: Vec<String> = net
        .places()
        .map(|p| format!("{}:{}", net.place_name(p), m[p]))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Breadth-first exploration from `m0`, stopping once `max_states` distinct
/// markings have been discovered and another one turns up.
pub fn explore(net: &Net, m0: &Marking, max_states: usize) -> Result<ReachGraph, ReachError> {
    if max_states == 0 {
        return Err(ReachError::ZeroStateCap);
    }
    let mut g = ReachGraph {
        markings: vec![m0.clone()],
        index: HashMap::from([(m0.clone(), 0)]),
        edges: Vec::new(),
        successors: vec![Vec::new()],
        parent: vec![None],
        complete: true,
    };
    let mut queue = VecDeque::from([0]);
    'bfs: while let Some(u) = queue.pop_front() {
        for t in net.transitions() {
            if !net.is_enabled(&g.markings[u], t) {
                continue;
            }
            let next = net.fire(&g.markings[u], t)?;
            let v = match g.index.get(&next) {
                Some(&v) => v,
                None => {
                    if g.markings.len() >= max_states {
                        g.complete = false;
                        break 'bfs;
                    }
                    let v = g.markings.len();
                    g.index.insert(next.clone(), v);
                    g.markings.push(next);
                    g.successors.push(Vec::new());
                    g.parent.push(Some((u, t)));
                    queue.push_back(v);
                    v
                }
            };
            g.successors[u].push(g.edges.len());
            g.edges.push(Edge {
                source: u,
                transition: t,
                target: v,
            });
        }
    }
    Ok(g)
}

/// `D_M`: transitions enabled at no marking reachable from `node`.
pub fn dead_set(net: &Net, g: &ReachGraph, node: NodeId) -> Result<TransitionSet, ReachError> {
    g.check(node)?;
    let reach = g.forward_closure(node);
    let mut dead = net.all_transitions();
    for (u, _) in reach.iter().enumerate().filter(|(_, &r)| r) {
        for t in net.enabled(g.marking(u)) {
            dead.remove(t);
        }
    }
    Ok(dead)
}

/// `L_M`: transitions that stay re-enableable from every marking reachable
/// from `node`.
///
/// For each `t`, the set of nodes that can still reach a `t`-enabling node
/// is computed by backward search; `t` is live iff it covers the forward
/// closure of `node`.
pub fn live_set(net: &Net, g: &ReachGraph, node: NodeId) -> Result<TransitionSet, ReachError> {
    g.check(node)?;
    let reach = g.forward_closure(node);
    let mut live = net.empty_transitions();
    for t in net.transitions() {
        let enabling: Vec<bool> = g.markings.iter().map(|m| net.is_enabled(m, t)).collect();
        let can_enable = g.backward_closure(&enabling);
        if reach.iter().zip(&can_enable).all(|(&r, &c)| !r || c) {
            live.insert(t);
        }
    }
    Ok(live)
}

/// Dead and live sets at one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LivenessSets {
    pub dead: TransitionSet,
    pub live: TransitionSet,
    pub at: NodeId,
}

impl LivenessSets {
    /// `D_M ∪ L_M = T`
    pub fn is_saturated(&self) -> bool {
        self.dead.union(&self.live).complement().is_empty()
    }
}

/// Dead and live sets for every node of a complete graph, computed over the
/// strongly connected component condensation.
///
/// A transition is dead at `u` iff no component reachable from `u` enables
/// it; it is live at `u` iff every bottom component reachable from `u`
/// enables it.
#[derive(Clone, Debug)]
pub struct LivenessTable {
    dead: Vec<TransitionSet>,
    live: Vec<TransitionSet>,
}

impl LivenessTable {
    pub fn compute(net: &Net, g: &ReachGraph) -> Result<Self, ReachError> {
        if !g.complete {
            return Err(ReachError::Incomplete);
        }
        let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(g.n_nodes(), g.n_edges());
        for _ in 0..g.n_nodes() {
            graph.add_node(());
        }
        for e in &g.edges {
            graph.add_edge(NodeIndex::new(e.source), NodeIndex::new(e.target), ());
        }
        // tarjan_scc yields components in reverse topological order: every
        // successor component comes before its predecessors.
        let components = tarjan_scc(&graph);
        let mut component_of = vec![0; g.n_nodes()];
        for (c, members) in components.iter().enumerate() {
            for n in members {
                component_of[n.index()] = c;
            }
        }
        let empty = net.empty_transitions();
        let mut may_enable: Vec<TransitionSet> = Vec::with_capacity(components.len());
        let mut live: Vec<TransitionSet> = Vec::with_capacity(components.len());
        for (c, members) in components.iter().enumerate() {
            let mut local = empty.clone();
            for n in members {
                for t in net.enabled(g.marking(n.index())) {
                    local.insert(t);
                }
            }
            let mut reach_enabled = local.clone();
            let mut live_here: Option<TransitionSet> = None;
            for n in members {
                for e in g.out_edges(n.index()) {
                    let d = component_of[e.target];
                    if d == c {
                        continue;
                    }
                    reach_enabled.union_with(&may_enable[d]);
                    live_here = Some(match live_here {
                        None => live[d].clone(),
                        Some(acc) => acc.intersection(&live[d]),
                    });
                }
            }
            // bottom component: live = whatever it enables itself
            live.push(live_here.unwrap_or(local));
            may_enable.push(reach_enabled);
        }
        Ok(LivenessTable {
            dead: component_of
                .iter()
                .map(|&c| may_enable[c].complement())
                .collect(),
            live: component_of.iter().map(|&c| live[c].clone()).collect(),
        })
    }

    pub fn dead(&self, node: NodeId) -> &TransitionSet {
        &self.dead[node]
    }

    pub fn live(&self, node: NodeId) -> &TransitionSet {
        &self.live[node]
    }

    pub fn at(&self, node: NodeId) -> LivenessSets {
        LivenessSets {
            dead: self.dead[node].clone(),
            live: self.live[node].clone(),
            at: node,
        }
    }

    /// First node in BFS order where `D ∪ L = T` and `D ≠ ∅`.
    pub fn first_dead_saturated(&self) -> Option<NodeId> {
        (0..self.dead.len()).find(|&u| {
            let sets = self.at(u);
            !sets.dead.is_empty() && sets.is_saturated()
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OracleVerdict {
    Live,
    NotLive,
    Inconclusive,
}

/// Decides `L_{m0} = T` by explicit exploration. Answers `Inconclusive` when
/// the graph does not fit in `max_states` markings.
pub fn liveness_oracle(net: &Net, m0: &Marking, max_states: usize) -> OracleVerdict {
    let Ok(g) = explore(net, m0, max_states.max(1)) else {
        return OracleVerdict::Inconclusive;
    };
    match live_set(net, &g, ReachGraph::INITIAL) {
        Ok(live) if live.len() == net.n_transitions() => OracleVerdict::Live,
        Ok(_) => OracleVerdict::NotLive,
        Err(_) => OracleVerdict::Inconclusive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::NetBuilder;
    use crate::testnets::{drain, marking, self_loop};

    fn source_net() -> Net {
        let mut b = NetBuilder::new();
        let p = b.add_place("p").unwrap();
        b.add_transition("t", &[], &[p]).unwrap();
        b.build()
    }

    #[test]
    fn explore_e2() {
        let net = drain();
        let g = explore(&net, &marking(&net, &[("p1", 1)]), 100).unwrap();
        assert!(g.is_complete());
        assert_eq!(g.n_nodes(), 3);
        assert_eq!(g.n_edges(), 3);
        let zero = g.node_of(&Marking::zero(&net)).unwrap();
        let t = |n| net.transition(n).unwrap();
        assert_eq!(g.trace_to(zero), vec![t("a"), t("c")]);
    }

    #[test]
    fn explore_self_loop_and_unbounded() {
        let net = self_loop();
        let g = explore(&net, &marking(&net, &[("p", 1)]), 100).unwrap();
        assert_eq!((g.n_nodes(), g.n_edges()), (1, 1));

        let net = source_net();
        let g = explore(&net, &Marking::zero(&net), 5).unwrap();
        assert!(!g.is_complete());
        assert_eq!(g.n_nodes(), 5);
        assert_eq!(dead_set(&net, &g, 0), Err(ReachError::Incomplete));
        assert_eq!(live_set(&net, &g, 0), Err(ReachError::Incomplete));
        assert!(matches!(
            explore(&net, &Marking::zero(&net), 0),
            Err(ReachError::ZeroStateCap)
        ));
    }

    #[test]
    fn dead_and_live_sets_e2() {
        let net = drain();
        let g = explore(&net, &marking(&net, &[("p1", 1)]), 100).unwrap();
        let zero = g.node_of(&Marking::zero(&net)).unwrap();
        assert_eq!(dead_set(&net, &g, zero).unwrap(), net.all_transitions());
        assert!(dead_set(&net, &g, 0).unwrap().is_empty());
        assert!(live_set(&net, &g, 0).unwrap().is_empty());
        assert!(live_set(&net, &g, zero).unwrap().is_empty());

        let table = LivenessTable::compute(&net, &g).unwrap();
        assert!(!table.at(0).is_saturated());
        assert!(table.at(zero).is_saturated());
        assert_eq!(table.first_dead_saturated(), Some(zero));
    }

    #[test]
    fn dead_and_live_sets_e1() {
        let net = self_loop();
        let g = explore(&net, &marking(&net, &[("p", 1)]), 100).unwrap();
        assert!(dead_set(&net, &g, 0).unwrap().is_empty());
        assert_eq!(live_set(&net, &g, 0).unwrap(), net.all_transitions());
    }

    #[test]
    fn oracle_verdicts() {
        let net = self_loop();
        assert_eq!(
            liveness_oracle(&net, &marking(&net, &[("p", 1)]), 100),
            OracleVerdict::Live
        );
        let net = drain();
        assert_eq!(
            liveness_oracle(&net, &marking(&net, &[("p1", 1)]), 100),
            OracleVerdict::NotLive
        );
        let net = source_net();
        assert_eq!(
            liveness_oracle(&net, &Marking::zero(&net), 10),
            OracleVerdict::Inconclusive
        );
    }

    #[test]
    fn table_matches_per_node_queries_on_drain_variants() {
        let net = drain();
        for tokens in 0..3 {
            let m0 = marking(&net, &[("p1", tokens), ("p2", 1)]);
            let g = explore(&net, &m0, 1000).unwrap();
            let table = LivenessTable::compute(&net, &g).unwrap();
            for u in 0..g.n_nodes() {
                assert_eq!(table.dead(u), &dead_set(&net, &g, u).unwrap());
                assert_eq!(table.live(u), &live_set(&net, &g, u).unwrap());
            }
        }
    }

    #[test]
    fn dot_output_mentions_every_edge() {
        let net = drain();
        let g = explore(&net, &marking(&net, &[("p1", 1)]), 100).unwrap();
        let dot = g.to_dot(&net);
        assert!(dot.starts_with("digraph reachability {"));
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert!(dot.contains("n0 [label=\"{p1:1, p2:0}\", shape=doublecircle]"));
    }
}

//! The quantum Bruhat graph of a multiplication table and the graph facts
//! the verification lemma consumes: strong connectivity, the period (index
//! of imprimitivity), and explicit cycle witnesses.
//!
//! Vertices are the basis classes in table order. There is an edge from
//! `alpha` to `beta` exactly when `beta` appears with positive coefficient
//! in `h * alpha`; the edge remembers that coefficient and the q power of
//! the term. All traversals visit vertices and neighbors in ascending index
//! order so every answer is deterministic.

use num_integer::gcd;
use thiserror::Error;

use crate::table::ChevalleyTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphEdge {
    pub source: usize,
    pub target: usize,
    pub weight: u64,
    pub q_power: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumBruhatGraph {
    pub(crate) name: String,
    pub(crate) names: Vec<String>,
    pub(crate) degrees: Vec<u32>,
    pub(crate) fano_index: u32,
    edges: Vec<GraphEdge>,
    out: Vec<Vec<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph is not strongly connected ({components} components)")]
    NotStronglyConnected { components: usize },
    #[error("period is undefined for a graph with no edges")]
    NoEdges,
}

impl QuantumBruhatGraph {
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.degrees[v]
    }

    pub fn fano_index(&self) -> u32 {
        self.fano_index
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Successors of `v` in ascending index order.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.out[from].binary_search(&to).is_ok()
    }

    /// Build a bare test graph: unit weights, zero q powers, all degrees 0,
    /// names `v0, v1, ...`. Duplicate pairs collapse to a single edge.
    pub fn from_edges(vertex_count: usize, pairs: &[(usize, usize)], fano_index: u32) -> Self {
        let mut sorted: Vec<(usize, usize)> = pairs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut out = vec![Vec::new(); vertex_count];
        let mut edges = Vec::with_capacity(sorted.len());
        for (source, target) in sorted {
            assert!(source < vertex_count && target < vertex_count);
            out[source].push(target);
            edges.push(GraphEdge {
                source,
                target,
                weight: 1,
                q_power: 0,
            });
        }
        QuantumBruhatGraph {
            name: "graph".to_string(),
            names: (0..vertex_count).map(|i| format!("v{i}")).collect(),
            degrees: vec![0; vertex_count],
            fano_index,
            edges,
            out,
        }
    }
}

/// One vertex per basis class, one edge per Chevalley term. The parser
/// rejects duplicate targets within a row, so ordered pairs are unique.
pub fn build_graph(table: &ChevalleyTable) -> QuantumBruhatGraph {
    let n = table.dim();
    let mut edges = Vec::new();
    let mut out = vec![Vec::new(); n];
    for (source, row) in table.rows.iter().enumerate() {
        for term in row {
            edges.push(GraphEdge {
                source,
                target: term.target,
                weight: term.coefficient,
                q_power: term.q_power,
            });
        }
    }
    edges.sort_unstable_by_key(|e| (e.source, e.target));
    for e in &edges {
        out[e.source].push(e.target);
    }
    QuantumBruhatGraph {
        name: table.name.clone(),
        names: table.basis.iter().map(|b| b.name.clone()).collect(),
        degrees: table.basis.iter().map(|b| b.degree).collect(),
        fano_index: table.fano_index,
        edges,
        out,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityResult {
    pub strongly_connected: bool,
    pub component_count: usize,
    /// Component id per vertex. Ids are assigned so that component k is the
    /// one whose lowest-numbered vertex is the k-th smallest; a relabeling
    /// of the input therefore permutes ids predictably.
    pub component_of: Vec<usize>,
}

/// Strongly connected components by Tarjan's algorithm.
pub fn strongly_connected(graph: &QuantumBruhatGraph) -> ConnectivityResult {
    let (component_count, component_of) = scc_component_of(&graph.out);
    ConnectivityResult {
        strongly_connected: component_count <= 1,
        component_count,
        component_of,
    }
}

/// Tarjan over an adjacency list, then component ids renumbered by each
/// component's lowest vertex index. Returns (count, component id per vertex).
pub(crate) fn scc_component_of(adj: &[Vec<usize>]) -> (usize, Vec<usize>) {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        lowlink: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next_index: usize,
        component_of: Vec<usize>,
        components: usize,
    }

    fn visit(s: &mut State, v: usize) {
        s.index[v] = Some(s.next_index);
        s.lowlink[v] = s.next_index;
        s.next_index += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for &w in s.adj[v].iter() {
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.lowlink[v] = s.lowlink[v].min(s.lowlink[w]);
                }
                Some(wi) if s.on_stack[w] => {
                    s.lowlink[v] = s.lowlink[v].min(wi);
                }
                _ => {}
            }
        }
        if s.lowlink[v] == s.index[v].unwrap() {
            loop {
                let w = s.stack.pop().unwrap();
                s.on_stack[w] = false;
                s.component_of[w] = s.components;
                if w == v {
                    break;
                }
            }
            s.components += 1;
        }
    }

    let n = adj.len();
    let mut s = State {
        adj,
        index: vec![None; n],
        lowlink: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next_index: 0,
        component_of: vec![0; n],
        components: 0,
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }

    // Renumber so that ids follow each component's lowest vertex.
    let count = s.components;
    let mut first_vertex = vec![usize::MAX; count];
    for v in (0..n).rev() {
        first_vertex[s.component_of[v]] = v;
    }
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_unstable_by_key(|&c| first_vertex[c]);
    let mut relabel = vec![0; count];
    for (new_id, &old_id) in order.iter().enumerate() {
        relabel[old_id] = new_id;
    }
    let component_of = s.component_of.iter().map(|&c| relabel[c]).collect();
    (count, component_of)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodResult {
    /// gcd of all closed-walk lengths (the index of imprimitivity).
    pub period: u32,
    pub divides_fano_index: bool,
    pub equals_fano_index: bool,
}

/// Period of a strongly connected graph: BFS from vertex 0 assigns levels,
/// and the period is the gcd of `level(u) + 1 - level(v)` over all edges
/// `u -> v`. Errors if the graph is not strongly connected or has no edges.
pub fn period(graph: &QuantumBruhatGraph) -> Result<PeriodResult, GraphError> {
    let raw = raw_period(graph)?;
    Ok(period_result(raw, graph.fano_index))
}

pub(crate) fn period_result(period: u32, fano_index: u32) -> PeriodResult {
    PeriodResult {
        period,
        divides_fano_index: fano_index.is_multiple_of(period),
        equals_fano_index: period == fano_index,
    }
}

pub(crate) fn raw_period(graph: &QuantumBruhatGraph) -> Result<u32, GraphError> {
    if graph.edges.is_empty() {
        return Err(GraphError::NoEdges);
    }
    let conn = strongly_connected(graph);
    if !conn.strongly_connected {
        return Err(GraphError::NotStronglyConnected {
            components: conn.component_count,
        });
    }
    let n = graph.vertex_count();
    let mut level = vec![i64::MIN; n];
    let mut queue = std::collections::VecDeque::new();
    level[0] = 0;
    queue.push_back(0usize);
    while let Some(v) = queue.pop_front() {
        for &w in graph.out_neighbors(v) {
            if level[w] == i64::MIN {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
        }
    }
    // Strong connectivity guarantees every vertex got a level.
    let mut g: i64 = 0;
    for e in &graph.edges {
        let diff = level[e.source] + 1 - level[e.target];
        g = gcd(g, diff.abs());
    }
    debug_assert!(g > 0, "a strongly connected graph with edges has a cycle");
    Ok(g as u32)
}

/// A closed walk witness. `vertices` lists the walk including the repeated
/// start, so a cycle of length L holds L + 1 entries. `simple` is true when
/// the walk repeats no vertex except the endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub simple: bool,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// First directed cycle of exactly `length` edges, searching start vertices
/// and successors in ascending order. Prefers a vertex-simple cycle; when
/// none exists, falls back to the lexicographically least closed walk of
/// that length and flags it as non-simple. Returns None when the graph has
/// no closed walk of the requested length (always for `length` 0).
pub fn find_cycle_of_length(graph: &QuantumBruhatGraph, length: usize) -> Option<Cycle> {
    if length == 0 {
        return None;
    }
    let n = graph.vertex_count();
    for start in 0..n {
        let mut path = vec![start];
        let mut on_path = vec![false; n];
        on_path[start] = true;
        if simple_cycle_from(graph, start, length, &mut path, &mut on_path) {
            return Some(Cycle {
                vertices: path,
                simple: true,
            });
        }
    }
    closed_walk_of_length(graph, length).map(|vertices| {
        debug_assert!(!is_simple_closed_walk(&vertices));
        Cycle {
            vertices,
            simple: false,
        }
    })
}

fn simple_cycle_from(
    graph: &QuantumBruhatGraph,
    start: usize,
    remaining: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
) -> bool {
    let current = *path.last().unwrap();
    if remaining == 1 {
        if graph.has_edge(current, start) {
            path.push(start);
            return true;
        }
        return false;
    }
    for &w in graph.out_neighbors(current) {
        if on_path[w] {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        if simple_cycle_from(graph, start, remaining - 1, path, on_path) {
            return true;
        }
        path.pop();
        on_path[w] = false;
    }
    false
}

/// Lexicographically least closed walk with exactly `length` edges, by
/// dynamic programming on "can reach the start in j steps".
fn closed_walk_of_length(graph: &QuantumBruhatGraph, length: usize) -> Option<Vec<usize>> {
    let n = graph.vertex_count();
    for start in 0..n {
        // reach[j][u] = a walk of exactly j edges leads from u to start.
        let mut reach = vec![vec![false; n]; length + 1];
        reach[0][start] = true;
        for j in 1..=length {
            for u in 0..n {
                reach[j][u] = graph.out_neighbors(u).iter().any(|&v| reach[j - 1][v]);
            }
        }
        if !reach[length][start] {
            continue;
        }
        let mut walk = vec![start];
        let mut current = start;
        for step in 0..length {
            let remaining = length - step - 1;
            let next = *graph
                .out_neighbors(current)
                .iter()
                .find(|&&v| reach[remaining][v])
                .expect("reachability table promised a continuation");
            walk.push(next);
            current = next;
        }
        return Some(walk);
    }
    None
}

fn is_simple_closed_walk(vertices: &[usize]) -> bool {
    let interior = &vertices[..vertices.len() - 1];
    let mut seen = std::collections::HashSet::new();
    interior.iter().all(|v| seen.insert(*v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::parse_table;

    fn ring(n: usize) -> QuantumBruhatGraph {
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        QuantumBruhatGraph::from_edges(n, &pairs, 1)
    }

    #[test]
    fn graph_from_table_has_one_edge_per_term() {
        let t = parse_table(
            "name t\nfano_index 2\nc1_multiple 2\nbasis one 0\nbasis h 1\nchev one : 1 q0 h\nchev h : 1 q1 one\n",
        )
        .unwrap();
        let g = build_graph(&t);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 0));
        assert_eq!(g.edges()[1].q_power, 1);
        assert_eq!(g.index_of("h"), Some(1));
    }

    #[test]
    fn three_cycle_is_strongly_connected_with_period_three() {
        let g = ring(3);
        let conn = strongly_connected(&g);
        assert!(conn.strongly_connected);
        assert_eq!(conn.component_count, 1);
        let p = period(&g).unwrap();
        assert_eq!(p.period, 3);
        assert!(!p.divides_fano_index);
        assert!(!p.equals_fano_index);
    }

    #[test]
    fn self_loop_forces_period_one() {
        let g = QuantumBruhatGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0), (1, 1)], 1);
        let p = period(&g).unwrap();
        assert_eq!(p.period, 1);
        assert!(p.divides_fano_index);
        assert!(p.equals_fano_index);
    }

    #[test]
    fn two_cycles_mix_to_gcd() {
        // Lengths 4 and 6 around a shared vertex: period gcd(4, 6) = 2.
        let g = QuantumBruhatGraph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (0, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 0),
            ],
            2,
        );
        let p = period(&g).unwrap();
        assert_eq!(p.period, 2);
        assert!(p.equals_fano_index);
    }

    #[test]
    fn period_errors_without_edges_or_connectivity() {
        let lonely = QuantumBruhatGraph::from_edges(1, &[], 1);
        assert!(strongly_connected(&lonely).strongly_connected);
        assert_eq!(period(&lonely), Err(GraphError::NoEdges));

        let split = QuantumBruhatGraph::from_edges(4, &[(0, 1), (1, 0), (2, 3), (3, 2)], 2);
        let conn = strongly_connected(&split);
        assert!(!conn.strongly_connected);
        assert_eq!(conn.component_count, 2);
        assert_eq!(conn.component_of, vec![0, 0, 1, 1]);
        assert_eq!(
            period(&split),
            Err(GraphError::NotStronglyConnected { components: 2 })
        );
    }

    #[test]
    fn component_ids_follow_lowest_vertex() {
        // A chain of three singleton components; ids must follow vertex order
        // regardless of Tarjan's completion order.
        let g = QuantumBruhatGraph::from_edges(3, &[(0, 1), (1, 2)], 1);
        let conn = strongly_connected(&g);
        assert_eq!(conn.component_count, 3);
        assert_eq!(conn.component_of, vec![0, 1, 2]);
    }

    #[test]
    fn finds_shortest_witnesses_deterministically() {
        let g = QuantumBruhatGraph::from_edges(4, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 1)], 2);
        let c2 = find_cycle_of_length(&g, 2).unwrap();
        assert_eq!(c2.vertices, vec![0, 1, 0]);
        assert!(c2.simple);
        let c3 = find_cycle_of_length(&g, 3).unwrap();
        assert_eq!(c3.vertices, vec![1, 2, 3, 1]);
        assert!(c3.simple);
        assert_eq!(find_cycle_of_length(&g, 0), None);
    }

    #[test]
    fn no_odd_cycle_in_bipartite_ring() {
        let g = ring(2);
        assert_eq!(find_cycle_of_length(&g, 3), None);
        assert_eq!(find_cycle_of_length(&g, 1), None);
        let c2 = find_cycle_of_length(&g, 2).unwrap();
        assert_eq!(c2.vertices, vec![0, 1, 0]);
    }

    #[test]
    fn closed_walk_fallback_when_no_simple_cycle_exists() {
        // Two triangles sharing vertex 0: closed walks of length 6 exist but
        // every one of them passes through 0 twice.
        let g =
            QuantumBruhatGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)], 3);
        let c = find_cycle_of_length(&g, 6).unwrap();
        assert!(!c.simple);
        assert_eq!(c.len(), 6);
        assert_eq!(c.vertices.first(), c.vertices.last());
        for pair in c.vertices.windows(2) {
            assert!(g.has_edge(pair[0], pair[1]));
        }
        assert_eq!(c.vertices, vec![0, 1, 2, 0, 1, 2, 0]);
    }

    #[test]
    fn self_loop_is_a_cycle_of_length_one() {
        let g = QuantumBruhatGraph::from_edges(2, &[(0, 1), (1, 1)], 1);
        let c = find_cycle_of_length(&g, 1).unwrap();
        assert_eq!(c.vertices, vec![1, 1]);
        assert!(c.simple);
    }
}

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{GameView, Player};

/// A strongly connected set of nodes, all of color at most `color`, that
/// contains a node of color `color` and at least one edge. Every node in it
/// lies on a cycle whose highest color is `color`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatedComponent {
    pub color: usize,
    pub nodes: Vec<usize>,
}

/// Components witnessing cycles dominated by `player`, found by scanning the
/// colors of that player's parity from highest to lowest.
///
/// A component found at a lower color that lies inside one reported at a
/// higher color is not reported again, so the result is pairwise disjoint.
pub fn dominated_cycle_components<G: GameView + ?Sized>(view: &G, player: Player) -> Vec<DominatedComponent> {
    let nodes = view.nodes();
    let Some(max_color) = nodes.iter().map(|&v| view.color(v)).max() else {
        return Vec::new();
    };
    let mut covered = vec![false; view.node_bound()];
    let mut found = Vec::new();
    let mut local = vec![NodeIndex::end(); view.node_bound()];

    for color in (0..=max_color).rev().filter(|&c| Player::of_color(c) == player) {
        let mut graph: DiGraph<usize, ()> = DiGraph::new();
        for &v in &nodes {
            if view.color(v) <= color {
                local[v] = graph.add_node(v);
            } else {
                local[v] = NodeIndex::end();
            }
        }
        for &v in &nodes {
            if local[v] == NodeIndex::end() {
                continue;
            }
            for &w in view.successors(v) {
                if local[w] != NodeIndex::end() {
                    graph.add_edge(local[v], local[w], ());
                }
            }
        }
        for scc in tarjan_scc(&graph) {
            let members: Vec<usize> = scc.iter().map(|&i| graph[i]).collect();
            if !members.iter().any(|&v| view.color(v) == color) {
                continue;
            }
            let has_edge = members.len() > 1 || view.successors(members[0]).contains(&members[0]);
            if !has_edge || members.iter().any(|&v| covered[v]) {
                continue;
            }
            let mut members = members;
            members.sort_unstable();
            for &v in &members {
                covered[v] = true;
            }
            found.push(DominatedComponent {
                color,
                nodes: members,
            });
        }
    }
    found
}

/// Nodes lying on some cycle whose highest color has `player`'s parity.
pub fn find_dominated_cycle_nodes<G: GameView + ?Sized>(view: &G, player: Player) -> Vec<usize> {
    let mut out: Vec<usize> = dominated_cycle_components(view, player)
        .into_iter()
        .flat_map(|c| c.nodes)
        .collect();
    out.sort_unstable();
    out
}

/// Nodes lying on some cycle whose highest color is odd.
pub fn find_one_dominated_cycle_nodes<G: GameView + ?Sized>(view: &G) -> Vec<usize> {
    find_dominated_cycle_nodes(view, Player::Odd)
}

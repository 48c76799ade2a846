use std::collections::HashMap;

use serde::Serialize;

use super::Graph;

/// True iff no four vertices induce `P_4`, `C_4` or `2K_2`.
///
/// Brute force over all 4-subsets. The three patterns are told apart by
/// edge count and degree profile alone.
pub fn is_forbidden_free(g: &Graph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if is_forbidden_quad(g, [a, b, c, d]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn is_forbidden_quad(g: &Graph, q: [usize; 4]) -> bool {
    let mut deg = [0usize; 4];
    let mut edges = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(q[i], q[j]) {
                deg[i] += 1;
                deg[j] += 1;
                edges += 1;
            }
        }
    }
    deg.sort_unstable();
    match edges {
        2 => deg == [1, 1, 1, 1],  // 2K_2
        3 => deg == [1, 1, 2, 2],  // P_4
        4 => deg == [2, 2, 2, 2],  // C_4
        _ => false,
    }
}

/// True iff for every pair `N(u) ⊆ N[v]` or `N(v) ⊆ N[u]`.
pub fn nested_neighborhoods(g: &Graph) -> bool {
    let n = g.n();
    let inside = |u: usize, v: usize| g.neighbors(u).iter().all(|&w| w == v || g.has_edge(w, v));
    (0..n).all(|u| (u + 1..n).all(|v| inside(u, v) || inside(v, u)))
}

/// Partition of the vertex set into maximal closed-twin classes
/// (`N[i] = N[j]`). Classes are sorted internally and ordered by their
/// smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwinPartition {
    pub classes: Vec<Vec<usize>>,
}

impl TwinPartition {
    pub fn class_of(&self, v: usize) -> Option<&[usize]> {
        self.classes.iter().find(|c| c.contains(&v)).map(Vec::as_slice)
    }
}

pub fn closed_twin_classes(g: &Graph) -> TwinPartition {
    let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.n() {
        let id = *index.entry(g.closed_row(v)).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[id].push(v);
    }
    TwinPartition { classes }
}

//! Exact solvers: maximum clique, maximum independent set, chromatic number.
//!
//! Clique search is branch and bound with a greedy-coloring upper bound on
//! every candidate set. Chromatic number runs iterative deepening over k,
//! seeded with a maximum clique as lower bound and symmetry anchor. Both are
//! single-threaded and deterministic: vertices are always processed in their
//! natural order, so the same input yields the same witness.
//!
//! Every search takes an explicit node budget. Exceeding it is an error,
//! never a silent approximation.

use crate::graph::Graph;

/// Default search-node cap. Far beyond anything the desk-scale inputs in
/// this crate need; a guard against runaway inputs, not a tuning knob.
pub const DEFAULT_MAX_NODES: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("search budget exhausted after {nodes} nodes (cap {cap})")]
    BudgetExhausted { nodes: u64, cap: u64 },
}

/// A proper coloring: `colors[v]` in `0..count`, adjacent vertices distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub count: usize,
    pub colors: Vec<usize>,
}

/// Adjacency as bit rows, built once per solve.
struct BitGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    fn build(g: &Graph) -> Self {
        let n = g.order();
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; n * words];
        for (u, v) in g.edges() {
            let (u, v) = (u as usize, v as usize);
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        BitGraph { n, words, rows }
    }

    #[inline]
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }
}

struct CliqueSearch<'a> {
    g: &'a BitGraph,
    cap: u64,
    nodes: u64,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl CliqueSearch<'_> {
    /// Greedy-color `cand` in order; return (vertex, color class count so
    /// far) flattened class by class, so bounds are nondecreasing.
    fn color_sort(&self, cand: &[usize]) -> Vec<(usize, usize)> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in cand {
            match classes
                .iter_mut()
                .find(|class| class.iter().all(|&u| !self.g.adjacent(u, v)))
            {
                Some(class) => class.push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut out = Vec::with_capacity(cand.len());
        for (ci, class) in classes.iter().enumerate() {
            for &v in class {
                out.push((v, ci + 1));
            }
        }
        out
    }

    fn expand(&mut self, cand: &[usize]) -> Result<(), SolveError> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(SolveError::BudgetExhausted {
                nodes: self.nodes,
                cap: self.cap,
            });
        }
        let colored = self.color_sort(cand);
        for i in (0..colored.len()).rev() {
            let (v, bound) = colored[i];
            // Bounds are nondecreasing along `colored`, so everything at or
            // before i is prunable too.
            if self.current.len() + bound <= self.best.len() {
                return Ok(());
            }
            self.current.push(v);
            let next: Vec<usize> = colored[..i]
                .iter()
                .map(|&(u, _)| u)
                .filter(|&u| self.g.adjacent(u, v))
                .collect();
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(&next)?;
            }
            self.current.pop();
        }
        Ok(())
    }
}

/// Maximum clique, as a sorted vertex list. Exact; errors out if the search
/// exceeds `max_nodes` nodes.
pub fn max_clique(g: &Graph, max_nodes: u64) -> Result<Vec<usize>, SolveError> {
    if g.order() == 0 {
        return Ok(Vec::new());
    }
    let bits = BitGraph::build(g);
    let mut search = CliqueSearch {
        g: &bits,
        cap: max_nodes,
        nodes: 0,
        current: Vec::new(),
        best: Vec::new(),
    };
    search.expand(&(0..g.order()).collect::<Vec<_>>())?;
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

/// Maximum independent set: maximum clique of the complement.
pub fn max_independent_set(g: &Graph, max_nodes: u64) -> Result<Vec<usize>, SolveError> {
    max_clique(&g.complement(), max_nodes)
}

/// Greedy coloring in natural vertex order. Proper, not necessarily optimal.
pub fn greedy_coloring(g: &Graph) -> Coloring {
    let n = g.order();
    let mut colors = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        let mut used = vec![false; count + 1];
        for &w in g.neighbors(v) {
            let c = colors[w as usize];
            if c != usize::MAX {
                used[c] = true;
            }
        }
        let c = (0..=count).find(|&c| !used[c]).unwrap();
        colors[v] = c;
        count = count.max(c + 1);
    }
    Coloring { count, colors }
}

struct ColorSearch<'a> {
    g: &'a BitGraph,
    order: Vec<usize>,
    k: usize,
    cap: u64,
    nodes: u64,
    colors: Vec<usize>,
}

impl ColorSearch<'_> {
    fn assign(&mut self, idx: usize, max_used: usize) -> Result<bool, SolveError> {
        if idx == self.order.len() {
            return Ok(true);
        }
        let v = self.order[idx];
        // Color k' > max_used + 1 is a renaming of max_used + 1, so cap there.
        let limit = self.k.min(max_used + 2);
        for c in 0..limit {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(SolveError::BudgetExhausted {
                    nodes: self.nodes,
                    cap: self.cap,
                });
            }
            let conflict = (0..self.g.n).any(|u| self.colors[u] == c && self.g.adjacent(u, v));
            if conflict {
                continue;
            }
            self.colors[v] = c;
            if self.assign(idx + 1, max_used.max(c))? {
                return Ok(true);
            }
            self.colors[v] = usize::MAX;
        }
        Ok(false)
    }
}

/// Chromatic number with a proper coloring witness. Iterative deepening from
/// the clique lower bound to the greedy upper bound; exact, budgeted.
///
/// `max_nodes` caps the clique preprocessing and the backtracking phase
/// separately; the backtracking counter is shared across all deepening steps.
pub fn chromatic_number(g: &Graph, max_nodes: u64) -> Result<Coloring, SolveError> {
    let n = g.order();
    if n == 0 {
        return Ok(Coloring {
            count: 0,
            colors: Vec::new(),
        });
    }
    if g.size() == 0 {
        return Ok(Coloring {
            count: 1,
            colors: vec![0; n],
        });
    }
    let clique = max_clique(g, max_nodes)?;
    let greedy = greedy_coloring(g);
    if clique.len() == greedy.count {
        return Ok(greedy);
    }
    let bits = BitGraph::build(g);
    // Backtrack over non-clique vertices, highest degree first; the clique
    // is pre-colored 0..lb-1, which is sound symmetry breaking: any proper
    // coloring gives the clique pairwise-distinct colors, and color names
    // can be permuted to match.
    let mut rest: Vec<usize> = (0..n).filter(|v| !clique.contains(v)).collect();
    rest.sort_by_key(|&v| (usize::MAX - g.degree(v), v));
    let mut nodes_used = 0;
    for k in clique.len()..greedy.count {
        let mut colors = vec![usize::MAX; n];
        for (c, &v) in clique.iter().enumerate() {
            colors[v] = c;
        }
        let mut search = ColorSearch {
            g: &bits,
            order: rest.clone(),
            k,
            cap: max_nodes,
            nodes: nodes_used,
            colors,
        };
        let found = search.assign(0, clique.len().saturating_sub(1))?;
        nodes_used = search.nodes;
        if found {
            return Ok(Coloring {
                count: k,
                colors: search.colors,
            });
        }
    }
    Ok(greedy)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Subset-enumeration oracle, good to ~20 vertices. The solvers above
    /// are checked against this on every graph the tests touch.
    fn brute_max_clique(g: &Graph) -> usize {
        let n = g.order();
        assert!(n <= 20);
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if verts.len() > best && g.is_clique(&verts) {
                best = verts.len();
            }
        }
        best
    }

    /// Minimum k admitting a proper k-coloring, by direct enumeration with
    /// prefix pruning.
    fn brute_chromatic(g: &Graph) -> usize {
        fn extend(g: &Graph, k: usize, colors: &mut Vec<usize>) -> bool {
            let v = colors.len();
            if v == g.order() {
                return true;
            }
            for c in 0..k {
                if g.neighbors(v)
                    .iter()
                    .all(|&w| (w as usize) >= v || colors[w as usize] != c)
                {
                    colors.push(c);
                    if extend(g, k, colors) {
                        return true;
                    }
                    colors.pop();
                }
            }
            false
        }
        if g.order() == 0 {
            return 0;
        }
        (1..=g.order())
            .find(|&k| extend(g, k, &mut Vec::new()))
            .unwrap()
    }

    fn petersen() -> Graph {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
            g.add_edge(i, 5 + i);
        }
        g
    }

    fn check_coloring(g: &Graph, coloring: &Coloring) {
        assert_eq!(coloring.colors.len(), g.order());
        for (u, v) in g.edges() {
            assert_ne!(coloring.colors[u as usize], coloring.colors[v as usize]);
        }
        assert!(coloring.colors.iter().all(|&c| c < coloring.count));
    }

    #[test]
    fn petersen_clique_number_is_2() {
        // Oracle value: brute force over all 2^10 subsets gives 2.
        let g = petersen();
        assert_eq!(brute_max_clique(&g), 2);
        let w = max_clique(&g, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(w.len(), 2);
        assert!(g.is_clique(&w));
    }

    #[test]
    fn petersen_chromatic_number_is_3() {
        // Oracle value: exhaustive 2-coloring refutation plus a 3-coloring.
        let g = petersen();
        assert_eq!(brute_chromatic(&g), 3);
        let coloring = chromatic_number(&g, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(coloring.count, 3);
        check_coloring(&g, &coloring);
    }

    #[test]
    fn petersen_independence_number_is_4() {
        let g = petersen();
        let w = max_independent_set(&g, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(w.len(), 4);
        assert!(g.complement().is_clique(&w));
    }

    #[test]
    fn complement_of_petersen_alpha_is_2() {
        // alpha(complement) = omega by complementation.
        let g = petersen().complement();
        assert_eq!(max_independent_set(&g, DEFAULT_MAX_NODES).unwrap().len(), 2);
    }

    #[test]
    fn empty_and_edgeless_graphs() {
        let empty = Graph::new(0);
        assert_eq!(max_clique(&empty, 1000).unwrap(), Vec::<usize>::new());
        assert_eq!(chromatic_number(&empty, 1000).unwrap().count, 0);
        let edgeless = Graph::new(4);
        assert_eq!(max_clique(&edgeless, 1000).unwrap().len(), 1);
        assert_eq!(chromatic_number(&edgeless, 1000).unwrap().count, 1);
        assert_eq!(max_independent_set(&edgeless, 1000).unwrap().len(), 4);
    }

    #[test]
    fn complete_graphs() {
        for n in 1..7 {
            let g = Graph::complete(n);
            assert_eq!(max_clique(&g, DEFAULT_MAX_NODES).unwrap().len(), n);
            let c = chromatic_number(&g, DEFAULT_MAX_NODES).unwrap();
            assert_eq!(c.count, n);
            check_coloring(&g, &c);
        }
    }

    #[test]
    fn odd_cycle_needs_three_colors() {
        let c7 = Graph::cycle(7);
        assert_eq!(chromatic_number(&c7, DEFAULT_MAX_NODES).unwrap().count, 3);
        assert_eq!(max_clique(&c7, DEFAULT_MAX_NODES).unwrap().len(), 2);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let g = petersen();
        match max_clique(&g, 1) {
            Err(SolveError::BudgetExhausted { nodes, cap: 1 }) => assert!(nodes > 1),
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn deterministic_witnesses() {
        let g = petersen();
        let a = max_clique(&g, DEFAULT_MAX_NODES).unwrap();
        let b = max_clique(&g, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(a, b);
        let ca = chromatic_number(&g, DEFAULT_MAX_NODES).unwrap();
        let cb = chromatic_number(&g, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(ca, cb);
    }

    #[test]
    fn solvers_match_brute_force_on_seeded_graphs() {
        // Mixed-density sweep over all graphs the oracle can handle quickly.
        let mut state = 0x243F6A88u64;
        for trial in 0..40 {
            let n = 3 + (trial % 6) as usize;
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    if state >> 33 & 0xff < 0x80 + 0x30 * (trial as u64 % 3) {
                        g.add_edge(u, v);
                    }
                }
            }
            let omega = max_clique(&g, DEFAULT_MAX_NODES).unwrap().len();
            assert_eq!(omega, brute_max_clique(&g), "clique mismatch on {g:?}");
            let coloring = chromatic_number(&g, DEFAULT_MAX_NODES).unwrap();
            assert_eq!(coloring.count, brute_chromatic(&g), "chi mismatch on {g:?}");
            check_coloring(&g, &coloring);
            let alpha = max_independent_set(&g, DEFAULT_MAX_NODES).unwrap().len();
            assert_eq!(alpha, brute_max_clique(&g.complement()));
        }
    }
}

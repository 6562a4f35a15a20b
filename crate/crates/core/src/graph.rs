//! Simple undirected graphs with the combinators the reduction pipeline
//! needs: complements, products, induced subgraphs, triangle graphs,
//! quotients by a partition, equitability checks, and r-fold cover checks.
//!
//! Vertices are `0..order`. No loops, no parallel edges. Adjacency is kept
//! as sorted neighbor lists; the solvers in [`crate::solve`] build their own
//! bit-level view when they run.

use std::collections::HashMap;

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("cell {cell} is empty")]
    EmptyCell { cell: usize },
    #[error("vertex {vertex} appears in cells {first} and {second}")]
    OverlappingCells {
        vertex: usize,
        first: usize,
        second: usize,
    },
    #[error("vertex {vertex} is not covered by any cell")]
    UncoveredVertex { vertex: usize },
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("partition is over {partition_order} vertices but the graph has {graph_order}")]
    OrderMismatch {
        partition_order: usize,
        graph_order: usize,
    },
    #[error("vertex map has {map_len} entries for a source of order {source_order}")]
    MapLengthMismatch { map_len: usize, source_order: usize },
}

/// An undirected simple graph on vertices `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Edgeless graph on `order` vertices. `order` may be 0.
    pub fn new(order: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); order],
        }
    }

    /// Graph with the given edges. Panics on loops or out-of-range vertices;
    /// duplicate edges are merged.
    pub fn from_edges(order: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Graph::new(order);
        for &(u, v) in edges {
            g.add_edge(u as usize, v as usize);
        }
        g
    }

    /// Complete graph on `order` vertices.
    pub fn complete(order: usize) -> Self {
        let mut g = Graph::new(order);
        for u in 0..order {
            for v in (u + 1)..order {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Cycle on `order` vertices (`order >= 3`).
    pub fn cycle(order: usize) -> Self {
        assert!(order >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::new(order);
        for u in 0..order {
            g.add_edge(u, (u + 1) % order);
        }
        g
    }

    /// Insert the edge `{u, v}`. Panics on loops or out-of-range vertices.
    /// Inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loops are not allowed");
        assert!(
            u < self.order() && v < self.order(),
            "vertex out of range: ({u}, {v}) in order-{} graph",
            self.order()
        );
        let (u, v) = (u as u32, v as u32);
        if let Err(pos) = self.adj[u as usize].binary_search(&v) {
            self.adj[u as usize].insert(pos, v);
            let pos_v = self.adj[v as usize].binary_search(&u).unwrap_err();
            self.adj[v as usize].insert(pos_v, u);
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.adj.len()).flat_map(move |u| {
            self.adj[u]
                .iter()
                .copied()
                .filter(move |&v| (u as u32) < v)
                .map(move |v| (u as u32, v))
        })
    }

    /// True when the listed vertices are pairwise adjacent and distinct.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if u == v || !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced on `vertices`, renumbered by position in the slice.
    /// Panics if the slice repeats a vertex or leaves the range.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = HashMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            assert!(v < self.order(), "vertex {v} out of range");
            let prev = index.insert(v, i);
            assert!(prev.is_none(), "vertex {v} listed twice");
        }
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for &w in self.neighbors(u) {
                if let Some(&j) = index.get(&(w as usize)) {
                    if i < j {
                        g.add_edge(i, j);
                    }
                }
            }
        }
        g
    }

    /// Cartesian product. Vertex `(a, x)` of `self x other` gets index
    /// `a * other.order() + x`; `(a, x) ~ (b, y)` iff `a = b` and `x ~ y`,
    /// or `x = y` and `a ~ b`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let n2 = other.order();
        let mut g = Graph::new(self.order() * n2);
        for a in 0..self.order() {
            for (x, y) in other.edges() {
                g.add_edge(a * n2 + x as usize, a * n2 + y as usize);
            }
        }
        for x in 0..n2 {
            for (a, b) in self.edges() {
                g.add_edge(a as usize * n2 + x, b as usize * n2 + x);
            }
        }
        g
    }

    /// Graph on the edges of `self`, two edges adjacent iff they lie in a
    /// common triangle. Vertex i is the i-th edge in lexicographic order
    /// (the order of [`Graph::edges`]). A subgraph of the line graph: edges
    /// sharing an endpoint are joined only when the other two endpoints are
    /// themselves adjacent.
    pub fn triangle_graph(&self) -> Graph {
        let edges: Vec<(u32, u32)> = self.edges().collect();
        let mut g = Graph::new(edges.len());
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                let shared = if a == c || a == d {
                    Some((a, b, if a == c { d } else { c }))
                } else if b == c || b == d {
                    Some((b, a, if b == c { d } else { c }))
                } else {
                    None
                };
                if let Some((_, x, y)) = shared {
                    if self.has_edge(x as usize, y as usize) {
                        g.add_edge(i, j);
                    }
                }
            }
        }
        g
    }

    /// Component label per vertex; labels are `0..count` in order of first
    /// appearance.
    pub fn connected_components(&self) -> (usize, Vec<usize>) {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push(start);
            while let Some(u) = queue.pop() {
                for &w in self.neighbors(u) {
                    if label[w as usize] == usize::MAX {
                        label[w as usize] = count;
                        queue.push(w as usize);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }
}

/// A partition of `0..order` into nonempty, disjoint, covering cells.
/// Cell order is the caller's; vertices within a cell are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    order: usize,
    cells: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(order: usize, cells: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut owner = vec![usize::MAX; order];
        for (ci, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(GraphError::EmptyCell { cell: ci });
            }
            for &v in cell {
                if v >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: v, order });
                }
                if owner[v] != usize::MAX {
                    return Err(GraphError::OverlappingCells {
                        vertex: v,
                        first: owner[v],
                        second: ci,
                    });
                }
                owner[v] = ci;
            }
        }
        if let Some(v) = owner.iter().position(|&c| c == usize::MAX) {
            return Err(GraphError::UncoveredVertex { vertex: v });
        }
        let mut cells = cells;
        for cell in &mut cells {
            cell.sort_unstable();
        }
        Ok(Partition { order, cells })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Cell index of each vertex.
    pub fn cell_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.order];
        for (ci, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                owner[v] = ci;
            }
        }
        owner
    }
}

/// Quotient of `g` by a partition: one vertex per cell, cells adjacent iff
/// some cross pair is adjacent in `g`. Intra-cell edges disappear.
pub fn quotient_by_partition(g: &Graph, partition: &Partition) -> Result<Graph, GraphError> {
    if partition.order() != g.order() {
        return Err(GraphError::OrderMismatch {
            partition_order: partition.order(),
            graph_order: g.order(),
        });
    }
    let owner = partition.cell_of();
    let mut q = Graph::new(partition.cells().len());
    for (u, v) in g.edges() {
        let (cu, cv) = (owner[u as usize], owner[v as usize]);
        if cu != cv {
            q.add_edge(cu, cv);
        }
    }
    Ok(q)
}

/// Witness that a partition is not equitable: two vertices of the same cell
/// with different neighbor counts into some (possibly equal) cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquitableViolation {
    pub cell: usize,
    pub counted_into: usize,
    pub vertex_a: usize,
    pub vertex_b: usize,
    pub count_a: usize,
    pub count_b: usize,
}

/// Check that every vertex of cell i has the same number of neighbors in
/// cell j, for every ordered pair (i, j).
pub fn is_equitable(
    g: &Graph,
    partition: &Partition,
) -> Result<(bool, Option<EquitableViolation>), GraphError> {
    if partition.order() != g.order() {
        return Err(GraphError::OrderMismatch {
            partition_order: partition.order(),
            graph_order: g.order(),
        });
    }
    let owner = partition.cell_of();
    let cell_count = partition.cells().len();
    for (ci, cell) in partition.cells().iter().enumerate() {
        let count_into = |v: usize| {
            let mut counts = vec![0usize; cell_count];
            for &w in g.neighbors(v) {
                counts[owner[w as usize]] += 1;
            }
            counts
        };
        let reference = count_into(cell[0]);
        for &v in &cell[1..] {
            let counts = count_into(v);
            if let Some(cj) = (0..cell_count).find(|&cj| counts[cj] != reference[cj]) {
                return Ok((
                    false,
                    Some(EquitableViolation {
                        cell: ci,
                        counted_into: cj,
                        vertex_a: cell[0],
                        vertex_b: v,
                        count_a: reference[cj],
                        count_b: counts[cj],
                    }),
                ));
            }
        }
    }
    Ok((true, None))
}

/// A total map from the vertices of a source graph into `0..target_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    image: Vec<usize>,
    target_order: usize,
}

impl VertexMap {
    pub fn new(image: Vec<usize>, target_order: usize) -> Result<Self, GraphError> {
        if let Some(&v) = image.iter().find(|&&v| v >= target_order) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: target_order,
            });
        }
        Ok(VertexMap {
            image,
            target_order,
        })
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }
}

/// Why a map fails to be an r-fold cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverViolation {
    /// An edge of the source maps to a non-edge (or collapses) in the target.
    EdgeNotPreserved { u: usize, v: usize },
    /// A fibre has the wrong size (size 0 means the map is not surjective).
    FibreSize {
        target_vertex: usize,
        size: usize,
        expected: usize,
    },
    /// Two neighbors of `u` share an image, so N(u) -> N(h(u)) is not injective.
    NeighborhoodCollision { u: usize, n1: usize, n2: usize },
    /// A neighbor of `h(u)` is missed, so N(u) -> N(h(u)) is not surjective.
    NeighborhoodMissed { u: usize, target_neighbor: usize },
}

/// Check that `map` is an r-fold covering map from `source` onto `target`:
/// a surjective homomorphism with all fibres of size `r` that restricts to
/// a bijection from each open neighbourhood N(u) onto N(map(u)).
pub fn is_r_fold_cover(
    source: &Graph,
    target: &Graph,
    map: &VertexMap,
    r: usize,
) -> Result<(bool, Option<CoverViolation>), GraphError> {
    if map.image.len() != source.order() {
        return Err(GraphError::MapLengthMismatch {
            map_len: map.image.len(),
            source_order: source.order(),
        });
    }
    if map.target_order != target.order() {
        return Err(GraphError::OrderMismatch {
            partition_order: map.target_order,
            graph_order: target.order(),
        });
    }
    for (u, v) in source.edges() {
        let (hu, hv) = (map.apply(u as usize), map.apply(v as usize));
        if hu == hv || !target.has_edge(hu, hv) {
            return Ok((
                false,
                Some(CoverViolation::EdgeNotPreserved {
                    u: u as usize,
                    v: v as usize,
                }),
            ));
        }
    }
    let mut fibre_size = vec![0usize; target.order()];
    for &h in &map.image {
        fibre_size[h] += 1;
    }
    for (t, &size) in fibre_size.iter().enumerate() {
        if size != r {
            return Ok((
                false,
                Some(CoverViolation::FibreSize {
                    target_vertex: t,
                    size,
                    expected: r,
                }),
            ));
        }
    }
    for u in 0..source.order() {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for &w in source.neighbors(u) {
            let hw = map.apply(w as usize);
            if let Some(&w0) = seen.get(&hw) {
                return Ok((
                    false,
                    Some(CoverViolation::NeighborhoodCollision {
                        u,
                        n1: w0,
                        n2: w as usize,
                    }),
                ));
            }
            seen.insert(hw, w as usize);
        }
        // Edges already map into N(h(u)); with injectivity, surjectivity
        // onto N(h(u)) is exactly a degree match.
        for &t in target.neighbors(map.apply(u)) {
            if !seen.contains_key(&(t as usize)) {
                return Ok((
                    false,
                    Some(CoverViolation::NeighborhoodMissed {
                        u,
                        target_neighbor: t as usize,
                    }),
                ));
            }
        }
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
            g.add_edge(i, 5 + i);
        }
        g
    }

    #[test]
    fn order_zero_everywhere() {
        let g = Graph::new(0);
        assert_eq!(g.order(), 0);
        assert_eq!(g.size(), 0);
        assert_eq!(g.complement(), g);
        assert_eq!(g.triangle_graph().order(), 0);
        assert_eq!(g.connected_components().0, 0);
    }

    #[test]
    fn petersen_basics() {
        let g = petersen();
        assert_eq!(g.order(), 10);
        assert_eq!(g.size(), 15);
        assert!(g.neighbors(0).iter().all(|&v| g.has_edge(0, v as usize)));
        assert_eq!(g.complement().size(), 45 - 15);
    }

    #[test]
    fn edges_are_lexicographic() {
        let g = Graph::from_edges(4, &[(2, 3), (0, 3), (0, 1)]);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 3), (2, 3)]);
    }

    #[test]
    #[should_panic(expected = "self-loops")]
    fn self_loop_rejected() {
        let mut g = Graph::new(2);
        g.add_edge(1, 1);
    }

    #[test]
    fn induced_subgraph_renumbers() {
        let g = petersen();
        let sub = g.induced_subgraph(&[0, 1, 2, 3, 4]);
        assert_eq!(sub, Graph::cycle(5));
    }

    #[test]
    fn cartesian_product_of_edges_is_a_square() {
        let k2 = Graph::complete(2);
        let c4 = k2.cartesian_product(&k2);
        assert_eq!(c4.order(), 4);
        assert_eq!(c4.size(), 4);
        assert_eq!(c4.degree(0), 2);
        assert!(!c4.has_edge(0, 3)); // (0,0) vs (1,1)
    }

    #[test]
    fn triangle_graph_of_k4_is_octahedron() {
        let t = Graph::complete(4).triangle_graph();
        assert_eq!(t.order(), 6);
        assert_eq!(t.size(), 12);
        assert!(t.neighbors(0).len() == 4);
        // Opposite edges of K4 share no endpoint, so they stay non-adjacent.
        let edges: Vec<_> = Graph::complete(4).edges().collect();
        for i in 0..6 {
            for j in (i + 1)..6 {
                let disjoint = {
                    let (a, b) = edges[i];
                    let (c, d) = edges[j];
                    a != c && a != d && b != c && b != d
                };
                assert_eq!(t.has_edge(i, j), !disjoint);
            }
        }
    }

    #[test]
    fn triangle_graph_of_triangle_free_graph_is_edgeless() {
        let t = petersen().triangle_graph();
        assert_eq!(t.order(), 15);
        assert_eq!(t.size(), 0);
    }

    #[test]
    fn quotient_collapses_cells() {
        // C6 quotiented by opposite pairs gives K3.
        let c6 = Graph::cycle(6);
        let p = Partition::new(6, vec![vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
        let q = quotient_by_partition(&c6, &p).unwrap();
        assert_eq!(q, Graph::complete(3));
    }

    #[test]
    fn quotient_by_singletons_is_identity() {
        let g = petersen();
        let p = Partition::new(10, (0..10).map(|v| vec![v]).collect()).unwrap();
        assert_eq!(quotient_by_partition(&g, &p).unwrap(), g);
    }

    #[test]
    fn partition_validation() {
        assert!(matches!(
            Partition::new(3, vec![vec![0, 1]]),
            Err(GraphError::UncoveredVertex { vertex: 2 })
        ));
        assert!(matches!(
            Partition::new(2, vec![vec![0, 1], vec![1]]),
            Err(GraphError::OverlappingCells { vertex: 1, .. })
        ));
        assert!(matches!(
            Partition::new(2, vec![vec![0, 1], vec![]]),
            Err(GraphError::EmptyCell { cell: 1 })
        ));
    }

    #[test]
    fn equitable_partition_of_cycle() {
        let c6 = Graph::cycle(6);
        let good = Partition::new(6, vec![vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        assert_eq!(is_equitable(&c6, &good).unwrap().0, true);
        let bad = Partition::new(6, vec![vec![0, 1, 2, 3, 4], vec![5]]).unwrap();
        let (ok, cert) = is_equitable(&c6, &bad).unwrap();
        assert!(!ok);
        let cert = cert.unwrap();
        assert_eq!(cert.cell, 0);
    }

    #[test]
    fn c6_double_covers_k3() {
        let c6 = Graph::cycle(6);
        let k3 = Graph::complete(3);
        let map = VertexMap::new(vec![0, 1, 2, 0, 1, 2], 3).unwrap();
        let (ok, cert) = is_r_fold_cover(&c6, &k3, &map, 2).unwrap();
        assert!(ok, "{cert:?}");
        // Wrong multiplicity is caught by the fibre check.
        let (ok, cert) = is_r_fold_cover(&c6, &k3, &map, 3).unwrap();
        assert!(!ok);
        assert!(matches!(cert, Some(CoverViolation::FibreSize { .. })));
    }

    #[test]
    fn k2_does_not_cover_k1() {
        // K1 has no loop, so the constant map is not a homomorphism.
        let k2 = Graph::complete(2);
        let k1 = Graph::new(1);
        let map = VertexMap::new(vec![0, 0], 1).unwrap();
        let (ok, cert) = is_r_fold_cover(&k2, &k1, &map, 2).unwrap();
        assert!(!ok);
        assert_eq!(cert, Some(CoverViolation::EdgeNotPreserved { u: 0, v: 1 }));
    }

    #[test]
    fn local_bijection_failure_detected() {
        // Path 0-1-2 mapped onto an edge: fibre sizes are wrong for r=1,
        // and with r folding fixed, vertex 1's neighbourhood collides.
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let k2 = Graph::complete(2);
        let map = VertexMap::new(vec![0, 1, 0, 1], 2).unwrap();
        let (ok, cert) = is_r_fold_cover(&path, &k2, &map, 2).unwrap();
        assert!(!ok);
        assert!(matches!(
            cert,
            Some(CoverViolation::NeighborhoodCollision { u: 1, .. })
                | Some(CoverViolation::NeighborhoodMissed { .. })
        ));
    }

    #[test]
    fn components_counted_in_first_seen_order() {
        let g = Graph::from_edges(5, &[(1, 2), (3, 4)]);
        let (count, label) = g.connected_components();
        assert_eq!(count, 3);
        assert_eq!(label, vec![0, 1, 1, 2, 2]);
    }
}

//! Cayley graphs presented by connection sets. A spec names a group power
//! (Z_p^n, or G^n for an explicit table) and a connection set closed under
//! inversion; vertices a and b are adjacent exactly when a*b^(-1) lies in
//! the connection set.
//!
//! Specs stay implicit until materialized under a size cap. Clique numbers
//! route through the neighbourhood of the identity: by vertex transitivity
//! the clique number of the whole graph is one more than the clique number
//! of that neighbourhood, which has only |C| vertices.

use crate::codes::{Distance, LinearCode};
use crate::fplinalg::BasisZpn;
use crate::gf::is_prime;
use crate::graph::{is_r_fold_cover, CoverViolation, Graph, Partition, VertexMap};
use crate::group::GroupTable;
use crate::solve::{self, SolveError};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

/// Default materialization cap (vertices).
pub const DEFAULT_VERTEX_CAP: u128 = 1 << 16;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CayleyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("a spec needs at least one coordinate")]
    ZeroCoordinates,
    #[error("connection element {element:?} has length {found}, expected {expected}")]
    ElementLength {
        element: Vec<u64>,
        found: usize,
        expected: usize,
    },
    #[error("connection element {element:?} has an entry >= {base}")]
    EntryOutOfRange { element: Vec<u64>, base: u64 },
    #[error("identity in the connection set (the graph would have loops)")]
    IdentityInConnection,
    #[error("connection set not closed under inversion: missing inverse of {element:?}")]
    NotInverseClosed { element: Vec<u64> },
    #[error("graph would have {order} vertices, cap is {cap}")]
    SizeCap { order: u128, cap: u128 },
    #[error("operation needs an elementary Z_p^n spec")]
    NotElementary,
    #[error("code is over p={code_p} length {code_n}, spec is over p={spec_p} with {spec_n} coordinates")]
    CodeSpecMismatch {
        code_p: u64,
        code_n: usize,
        spec_p: u64,
        spec_n: usize,
    },
    #[error("code lacks a distance certificate")]
    DistanceUncertified,
    #[error("code distance {have} is below the required {needed}")]
    DistanceTooSmall { needed: u64, have: Distance },
    #[error("basis does not extend the code (split must equal the rank and leading rows must be codewords)")]
    BasisMismatch,
    #[error("quotient collapsed the connection set: {input} elements became {output}")]
    QuotientNotBijective { input: usize, output: usize },
    #[error("vertices {0:?} are not a clique in the graph")]
    NotAClique(Vec<usize>),
    #[error("elements {0:?} are not a clique in the spec")]
    NotACliqueInSpec(Vec<Vec<u64>>),
    #[error("generator images for vertices {i} and {j} coincide")]
    GeneratorCollision { i: usize, j: usize },
    #[error("generator list has {found} entries for a graph on {expected} vertices")]
    GeneratorCount { found: usize, expected: usize },
    #[error("clique element {element:?} does not come from any arc of the graph")]
    ArcUnmapped { element: Vec<u64> },
    #[error("no anchor vertex found for a clique that is guaranteed one")]
    InternalNoAnchor,
    #[error("cover verification failed unexpectedly: {0:?}")]
    InternalCover(CoverViolation),
    #[error("group element {h} is out of range for a group of order {order}")]
    GroupElementOutOfRange { h: usize, order: usize },
    #[error("element {h} has order {found}, expected {expected}")]
    LiftOrder {
        h: usize,
        found: usize,
        expected: u64,
    },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// The group a spec lives over: Z_p^n, or the n-th power of a table group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    ZpPower { p: u64, n: usize },
    TablePower { table: Arc<GroupTable>, n: usize },
}

impl GroupKind {
    pub fn n(&self) -> usize {
        match self {
            GroupKind::ZpPower { n, .. } | GroupKind::TablePower { n, .. } => *n,
        }
    }

    /// Order of the base group (p, or the table's order).
    pub fn base(&self) -> u64 {
        match self {
            GroupKind::ZpPower { p, .. } => *p,
            GroupKind::TablePower { table, .. } => table.order() as u64,
        }
    }

    pub fn order(&self) -> u128 {
        (self.base() as u128).pow(self.n() as u32)
    }
}

/// A Cayley graph given implicitly by its group and connection set.
/// Connection elements are digit vectors (values mod p, or table indices),
/// stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleySpec {
    kind: GroupKind,
    connection: Vec<Vec<u64>>,
}

impl CayleySpec {
    pub fn new(kind: GroupKind, connection: Vec<Vec<u64>>) -> Result<CayleySpec, CayleyError> {
        if kind.n() == 0 {
            return Err(CayleyError::ZeroCoordinates);
        }
        if let GroupKind::ZpPower { p, .. } = kind {
            if !is_prime(p) {
                return Err(CayleyError::NotPrime(p));
            }
        }
        let base = kind.base();
        let n = kind.n();
        let mut connection = connection;
        connection.sort();
        connection.dedup();
        let spec = CayleySpec { kind, connection };
        for c in &spec.connection {
            if c.len() != n {
                return Err(CayleyError::ElementLength {
                    element: c.clone(),
                    found: c.len(),
                    expected: n,
                });
            }
            if c.iter().any(|&d| d >= base) {
                return Err(CayleyError::EntryOutOfRange {
                    element: c.clone(),
                    base,
                });
            }
            if c.iter().all(|&d| d == 0) {
                return Err(CayleyError::IdentityInConnection);
            }
        }
        for c in &spec.connection {
            if !spec.contains_connection(&spec.inv(c)) {
                return Err(CayleyError::NotInverseClosed { element: c.clone() });
            }
        }
        Ok(spec)
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.kind.n()
    }

    /// For elementary specs, the prime.
    pub fn p(&self) -> Option<u64> {
        match self.kind {
            GroupKind::ZpPower { p, .. } => Some(p),
            GroupKind::TablePower { .. } => None,
        }
    }

    pub fn order(&self) -> u128 {
        self.kind.order()
    }

    pub fn degree(&self) -> usize {
        self.connection.len()
    }

    pub fn connection(&self) -> &[Vec<u64>] {
        &self.connection
    }

    pub fn contains_connection(&self, element: &[u64]) -> bool {
        self.connection
            .binary_search_by(|c| c.as_slice().cmp(element))
            .is_ok()
    }

    pub fn identity(&self) -> Vec<u64> {
        vec![0; self.n()]
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        match &self.kind {
            GroupKind::ZpPower { p, .. } => a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect(),
            GroupKind::TablePower { table, .. } => a
                .iter()
                .zip(b)
                .map(|(&x, &y)| table.mul(x as usize, y as usize) as u64)
                .collect(),
        }
    }

    pub fn inv(&self, a: &[u64]) -> Vec<u64> {
        match &self.kind {
            GroupKind::ZpPower { p, .. } => a.iter().map(|&x| (p - x) % p).collect(),
            GroupKind::TablePower { table, .. } => {
                a.iter().map(|&x| table.inv(x as usize) as u64).collect()
            }
        }
    }

    /// a * b^(-1), the quantity adjacency tests.
    pub fn difference(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.mul(a, &self.inv(b))
    }

    pub fn adjacent(&self, a: &[u64], b: &[u64]) -> bool {
        self.contains_connection(&self.difference(a, b))
    }

    /// Neighbors of g: c*g for each connection element, in connection order.
    pub fn neighbor_query(&self, g: &[u64]) -> Vec<Vec<u64>> {
        self.connection.iter().map(|c| self.mul(c, g)).collect()
    }

    pub fn element_index(&self, e: &[u64]) -> u128 {
        let base = self.kind.base() as u128;
        let mut index = 0u128;
        for &d in e.iter().rev() {
            index = index * base + d as u128;
        }
        index
    }

    pub fn element_of_index(&self, mut index: u128) -> Vec<u64> {
        let base = self.kind.base() as u128;
        (0..self.n())
            .map(|_| {
                let d = (index % base) as u64;
                index /= base;
                d
            })
            .collect()
    }

    /// The whole graph, if it fits under the vertex cap.
    pub fn materialize(&self, cap: u128) -> Result<Graph, CayleyError> {
        let order = self.order();
        if order > cap {
            return Err(CayleyError::SizeCap { order, cap });
        }
        let mut g = Graph::new(order as usize);
        for a in 0..order as usize {
            let ea = self.element_of_index(a as u128);
            for c in &self.connection {
                let b = self.element_index(&self.mul(c, &ea)) as usize;
                if a < b {
                    g.add_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    /// The induced subgraph on the connection set: element i is the i-th
    /// connection element, adjacent to j when their difference is also a
    /// connection element. By vertex transitivity, every clique through the
    /// identity is the identity plus a clique in here.
    pub fn neighborhood_of_identity(&self) -> Graph {
        let m = self.connection.len();
        let mut g = Graph::new(m);
        for i in 0..m {
            for j in (i + 1)..m {
                if self.adjacent(&self.connection[i], &self.connection[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Exact clique number plus a witness clique (which always contains the
    /// identity), computed on the identity's neighbourhood.
    pub fn clique_number(&self, max_nodes: u64) -> Result<SpecClique, CayleyError> {
        let hood = self.neighborhood_of_identity();
        let inner = solve::max_clique(&hood, max_nodes)?;
        let mut elements = vec![self.identity()];
        elements.extend(inner.iter().map(|&i| self.connection[i].clone()));
        for (i, a) in elements.iter().enumerate() {
            for b in elements.iter().skip(i + 1) {
                debug_assert!(self.adjacent(a, b), "witness is not a clique");
            }
        }
        Ok(SpecClique {
            size: elements.len(),
            elements,
        })
    }
}

/// A verified clique in a spec's graph, listed as group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecClique {
    pub size: usize,
    pub elements: Vec<Vec<u64>>,
}

/// Standard basis vectors of Z_p^v: the generator images of the free spec.
pub fn free_generators(v: usize) -> Vec<Vec<u64>> {
    (0..v)
        .map(|i| {
            let mut e = vec![0u64; v];
            e[i] = 1;
            e
        })
        .collect()
}

/// Generator images after quotienting: the trailing coordinates of each
/// standard basis vector in the extended basis.
pub fn quotient_generators(basis: &BasisZpn) -> Vec<Vec<u64>> {
    free_generators(basis.n())
        .iter()
        .map(|e| basis.trailing_coordinates(e).expect("basis is square"))
        .collect()
}

/// The free Cayley connection set of a graph over Z_p^v: for each edge ij,
/// the difference of standard basis vectors e_i - e_j and its negation
/// (which coincide when p = 2, so |C| = |E| there and 2|E| otherwise).
pub fn free_connection_set(x: &Graph, p: u64) -> Result<CayleySpec, CayleyError> {
    if !is_prime(p) {
        return Err(CayleyError::NotPrime(p));
    }
    let v = x.order();
    let mut connection = Vec::new();
    for (i, j) in x.edges() {
        let (i, j) = (i as usize, j as usize);
        let mut c = vec![0u64; v];
        c[i] = 1;
        c[j] = p - 1;
        connection.push(c.clone());
        if p > 2 {
            c[i] = p - 1;
            c[j] = 1;
            connection.push(c);
        }
    }
    CayleySpec::new(GroupKind::ZpPower { p, n: v }, connection)
}

/// One coincidence between two formally different index sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumCollision {
    /// Sorted index multisets whose generator sums agree.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub value: Vec<u64>,
}

/// Outcome of checking the 2-sum and 3-sum distinctness a prime promises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumReport {
    pub p: u64,
    pub generators: usize,
    /// Collisions forced by the group structure (squares vanishing at p=2,
    /// cubes vanishing at p=3). Their presence is expected.
    pub permitted: Vec<SumCollision>,
    pub violations: Vec<SumCollision>,
}

impl SumReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the p-specific distinctness of generator sums by exhaustive
/// enumeration: for p >= 5 all 3-sums over index multisets are distinct;
/// for p = 3 only triple-repeats collide (all cubes are the identity);
/// for p = 2 squares vanish, so only the classes with one or three distinct
/// indices must stay distinct.
pub fn sum_distinctness_of(generators: &[Vec<u64>], p: u64) -> SumReport {
    let v = generators.len();
    let add = |a: &[u64], b: &[u64]| -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
    };
    let mut permitted = Vec::new();
    let mut violations = Vec::new();
    let handle = |sums: &BTreeMap<Vec<usize>, Vec<u64>>,
                  ok: &dyn Fn(&[usize], &[usize]) -> bool,
                  permitted: &mut Vec<SumCollision>,
                  violations: &mut Vec<SumCollision>| {
        let mut by_value: BTreeMap<Vec<u64>, Vec<&Vec<usize>>> = BTreeMap::new();
        for (indices, value) in sums {
            by_value.entry(value.clone()).or_default().push(indices);
        }
        for (value, groups) in by_value {
            for pair in 1..groups.len() {
                let collision = SumCollision {
                    left: groups[0].clone(),
                    right: groups[pair].clone(),
                    value: value.clone(),
                };
                if ok(groups[0], groups[pair]) {
                    permitted.push(collision);
                } else {
                    violations.push(collision);
                }
            }
        }
    };

    let mut two_sums = BTreeMap::new();
    for i in 0..v {
        for j in i..v {
            two_sums.insert(vec![i, j], add(&generators[i], &generators[j]));
        }
    }
    let two_ok: Box<dyn Fn(&[usize], &[usize]) -> bool> = match p {
        // Every g + g vanishes; those collisions are structural.
        2 => Box::new(|a: &[usize], b: &[usize]| a[0] == a[1] && b[0] == b[1]),
        _ => Box::new(|_: &[usize], _: &[usize]| false),
    };
    handle(&two_sums, &*two_ok, &mut permitted, &mut violations);

    let mut three_sums = BTreeMap::new();
    for i in 0..v {
        for j in i..v {
            for k in j..v {
                let sum = add(&add(&generators[i], &generators[j]), &generators[k]);
                three_sums.insert(vec![i, j, k], sum);
            }
        }
    }
    let distinct = |ix: &[usize]| {
        let mut s = ix.to_vec();
        s.dedup();
        s.len()
    };
    let three_ok: Box<dyn Fn(&[usize], &[usize]) -> bool> = match p {
        // g+g+h = h: any collision touching a two-distinct-index multiset
        // is structural; one- and three-index sums must stay distinct.
        2 => Box::new(move |a: &[usize], b: &[usize]| distinct(a) == 2 || distinct(b) == 2),
        // 3g = 0 for every generator: triple repeats all collide at zero.
        3 => Box::new(move |a: &[usize], b: &[usize]| distinct(a) == 1 && distinct(b) == 1),
        _ => Box::new(|_: &[usize], _: &[usize]| false),
    };
    handle(&three_sums, &*three_ok, &mut permitted, &mut violations);

    SumReport {
        p,
        generators: v,
        permitted,
        violations,
    }
}

/// Sum distinctness for the free generators e_1..e_v of a graph's free
/// connection set.
pub fn check_sum_distinctness(x: &Graph, p: u64) -> Result<SumReport, CayleyError> {
    if !is_prime(p) {
        return Err(CayleyError::NotPrime(p));
    }
    Ok(sum_distinctness_of(&free_generators(x.order()), p))
}

fn require_distance(code: &LinearCode, needed: u64) -> Result<(), CayleyError> {
    let cert = code
        .distance_cert()
        .ok_or(CayleyError::DistanceUncertified)?;
    if !cert.distance.at_least(needed) {
        return Err(CayleyError::DistanceTooSmall {
            needed,
            have: cert.distance,
        });
    }
    Ok(())
}

fn require_basis_extends(code: &LinearCode, basis: &BasisZpn) -> Result<(), CayleyError> {
    if basis.p() != code.p() || basis.n() != code.n() || basis.split() != code.k() {
        return Err(CayleyError::BasisMismatch);
    }
    if basis.leading().iter().any(|v| !code.contains(v)) {
        return Err(CayleyError::BasisMismatch);
    }
    Ok(())
}

/// Quotient an elementary spec by a code: express every connection element
/// in a basis whose leading block spans the code, and keep the trailing
/// coordinates. Requires certified distance >= 3 so the result is loopless,
/// and fails if the projection identifies two connection elements.
pub fn quotient_connection_set(
    spec: &CayleySpec,
    code: &LinearCode,
    basis: &BasisZpn,
) -> Result<CayleySpec, CayleyError> {
    let GroupKind::ZpPower { p, n } = spec.kind else {
        return Err(CayleyError::NotElementary);
    };
    if code.p() != p || code.n() != n {
        return Err(CayleyError::CodeSpecMismatch {
            code_p: code.p(),
            code_n: code.n(),
            spec_p: p,
            spec_n: n,
        });
    }
    require_distance(code, 3)?;
    require_basis_extends(code, basis)?;
    let projected: Vec<Vec<u64>> = spec
        .connection
        .iter()
        .map(|c| basis.trailing_coordinates(c).expect("lengths validated"))
        .collect();
    let mut deduped = projected.clone();
    deduped.sort();
    deduped.dedup();
    if deduped.len() != spec.connection.len() {
        return Err(CayleyError::QuotientNotBijective {
            input: spec.connection.len(),
            output: deduped.len(),
        });
    }
    CayleySpec::new(GroupKind::ZpPower { p, n: n - code.k() }, projected)
}

/// One adjacency disagreement found while checking an embedded copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyMismatch {
    pub i: usize,
    pub j: usize,
    /// True when the graph has the edge but the embedded pair lacks it.
    pub expected_edge: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedCopyReport {
    pub holds: bool,
    /// The candidate embedding: vertex i to the image of e_i.
    pub embedding: Vec<Vec<u64>>,
    pub mismatches: Vec<CopyMismatch>,
}

/// Check whether mapping vertex i to the image of e_i embeds x into the
/// quotient spec as an induced subgraph (edges and non-edges both exact).
/// Certified distance >= 5 guarantees success; with distance 3 or 4 the
/// check can fail, and then it reports false rather than erroring.
pub fn verify_induced_copy(
    x: &Graph,
    qspec: &CayleySpec,
    code: &LinearCode,
    basis: &BasisZpn,
) -> Result<InducedCopyReport, CayleyError> {
    require_distance(code, 3)?;
    require_basis_extends(code, basis)?;
    let embedding = quotient_generators(basis);
    if embedding.len() != x.order() {
        return Err(CayleyError::GeneratorCount {
            found: embedding.len(),
            expected: x.order(),
        });
    }
    let mut mismatches = Vec::new();
    for i in 0..x.order() {
        for j in (i + 1)..x.order() {
            if embedding[i] == embedding[j] {
                return Err(CayleyError::GeneratorCollision { i, j });
            }
            let has = qspec.adjacent(&embedding[i], &embedding[j]);
            let expected = x.has_edge(i, j);
            if has != expected {
                mismatches.push(CopyMismatch {
                    i,
                    j,
                    expected_edge: expected,
                });
            }
        }
    }
    Ok(InducedCopyReport {
        holds: mismatches.is_empty(),
        embedding,
        mismatches,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferDirection {
    Up,
    Down,
}

/// A verified pairing of a clique in a graph with a clique in a spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferCert {
    pub direction: TransferDirection,
    pub x_clique: Vec<usize>,
    pub spec_clique: Vec<Vec<u64>>,
    /// The vertex all transferred arcs share.
    pub anchor: usize,
}

/// Transfer a clique of the graph into the spec: fix the lowest-index
/// vertex as anchor and take the images of e_j - e_anchor, which include
/// the identity. The result has |s| elements, except that for p = 2 a
/// 3-clique's image extends by the remaining pair-sum to the 4-clique
/// that every cubelike triangle lies in.
pub fn clique_up(
    x: &Graph,
    s: &[usize],
    spec: &CayleySpec,
    generators: &[Vec<u64>],
) -> Result<TransferCert, CayleyError> {
    let GroupKind::ZpPower { p, .. } = spec.kind else {
        return Err(CayleyError::NotElementary);
    };
    if generators.len() != x.order() {
        return Err(CayleyError::GeneratorCount {
            found: generators.len(),
            expected: x.order(),
        });
    }
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() || !x.is_clique(&s) {
        return Err(CayleyError::NotAClique(s));
    }
    let anchor = s[0];
    let mut image = vec![spec.identity()];
    for &j in &s[1..] {
        image.push(spec.difference(&generators[j], &generators[anchor]));
    }
    if p == 2 && s.len() == 3 {
        let completion = spec.mul(&image[1], &image[2]);
        image.push(completion);
    }
    image.sort();
    let before = image.len();
    image.dedup();
    if image.len() != before {
        // Two generator differences agreed; find the offending vertices.
        for (a, &i) in s.iter().enumerate() {
            for &j in &s[a + 1..] {
                if spec.difference(&generators[i], &generators[anchor])
                    == spec.difference(&generators[j], &generators[anchor])
                {
                    return Err(CayleyError::GeneratorCollision { i, j });
                }
            }
        }
        return Err(CayleyError::InternalNoAnchor);
    }
    for (a, u) in image.iter().enumerate() {
        for w in image.iter().skip(a + 1) {
            if !spec.adjacent(u, w) {
                return Err(CayleyError::NotACliqueInSpec(image));
            }
        }
    }
    Ok(TransferCert {
        direction: TransferDirection::Up,
        x_clique: s,
        spec_clique: image,
        anchor,
    })
}

/// Why a clique could not be transferred down, and the exhaustive fallback
/// the caller should take instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaveatRegime {
    /// p = 2 with at most 4 elements: the image of a triangle is a 4-clique
    /// whose three arcs form a triangle with no shared vertex.
    P2SmallClique,
    /// p = 3 with exactly 3 elements of the form {0, c, -c}: both nonzero
    /// elements come from the same arc, traversed both ways.
    P3PlusMinusTriangle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueDownOutcome {
    Transferred(TransferCert),
    /// No anchor exists; the caller falls back to exhaustive search over
    /// small vertex subsets.
    Caveat(CaveatRegime),
}

/// Transfer a clique of the spec back into the graph. Each non-identity
/// element of (a translate of) the clique is traced to the arc it images;
/// when some translate, possibly negated, gives all arcs a common source
/// vertex, that vertex anchors a clique of the same size in the graph.
pub fn clique_down(
    t: &[Vec<u64>],
    x: &Graph,
    spec: &CayleySpec,
    generators: &[Vec<u64>],
) -> Result<CliqueDownOutcome, CayleyError> {
    let GroupKind::ZpPower { p, .. } = spec.kind else {
        return Err(CayleyError::NotElementary);
    };
    if generators.len() != x.order() {
        return Err(CayleyError::GeneratorCount {
            found: generators.len(),
            expected: x.order(),
        });
    }
    let mut t = t.to_vec();
    t.sort();
    t.dedup();
    if t.is_empty() {
        return Err(CayleyError::NotACliqueInSpec(t));
    }
    for (a, u) in t.iter().enumerate() {
        for w in t.iter().skip(a + 1) {
            if !spec.adjacent(u, w) {
                return Err(CayleyError::NotACliqueInSpec(t));
            }
        }
    }
    if t.len() == 1 {
        // A single element maps to a single vertex; no arcs constrain it.
        return Ok(CliqueDownOutcome::Transferred(TransferCert {
            direction: TransferDirection::Down,
            x_clique: vec![0],
            spec_clique: t,
            anchor: 0,
        }));
    }

    // Arc lookup: the image of e_i - e_j keys (i, j). For p = 2 both
    // orientations give the same image, so each edge is stored once.
    let mut arc_of: HashMap<Vec<u64>, (usize, usize)> = HashMap::new();
    for (i, j) in x.edges() {
        let (i, j) = (i as usize, j as usize);
        arc_of.insert(spec.difference(&generators[i], &generators[j]), (i, j));
        if p > 2 {
            arc_of.insert(spec.difference(&generators[j], &generators[i]), (j, i));
        }
    }

    let lookup = |e: &Vec<u64>| -> Result<(usize, usize), CayleyError> {
        arc_of
            .get(e)
            .copied()
            .ok_or_else(|| CayleyError::ArcUnmapped { element: e.clone() })
    };

    if p == 2 {
        // Arcs are unordered edges; the anchor is a vertex on all of them.
        // Translate so the identity is in the clique, then intersect.
        for shift in &t {
            let translated: Vec<Vec<u64>> = t
                .iter()
                .filter(|c| *c != shift)
                .map(|c| spec.difference(c, shift))
                .collect();
            let mut arcs = Vec::with_capacity(translated.len());
            for e in &translated {
                arcs.push(lookup(e)?);
            }
            let on_all = |a: usize| arcs.iter().all(|&(i, j)| i == a || j == a);
            let Some(anchor) = (0..x.order()).find(|&a| on_all(a)) else {
                continue;
            };
            let mut vertices = vec![anchor];
            vertices.extend(arcs.iter().map(|&(i, j)| if i == anchor { j } else { i }));
            vertices.sort_unstable();
            vertices.dedup();
            if vertices.len() == t.len() && x.is_clique(&vertices) {
                return Ok(CliqueDownOutcome::Transferred(TransferCert {
                    direction: TransferDirection::Down,
                    x_clique: vertices,
                    spec_clique: t,
                    anchor,
                }));
            }
        }
        if t.len() <= 4 {
            return Ok(CliqueDownOutcome::Caveat(CaveatRegime::P2SmallClique));
        }
        return Err(CayleyError::InternalNoAnchor);
    }

    // p >= 3: arcs are ordered. Try every translate of t, in both signs,
    // looking for a common source vertex.
    for shift in &t {
        for negate in [false, true] {
            let rest: Vec<Vec<u64>> = t
                .iter()
                .filter(|c| *c != shift)
                .map(|c| {
                    let d = spec.difference(c, shift);
                    if negate {
                        spec.inv(&d)
                    } else {
                        d
                    }
                })
                .collect();
            let mut arcs = Vec::with_capacity(rest.len());
            for e in &rest {
                arcs.push(lookup(e)?);
            }
            let anchor = arcs[0].0;
            if arcs.iter().any(|&(i, _)| i != anchor) {
                continue;
            }
            let mut vertices = vec![anchor];
            vertices.extend(arcs.iter().map(|&(_, j)| j));
            vertices.sort_unstable();
            vertices.dedup();
            if vertices.len() == t.len() && x.is_clique(&vertices) {
                return Ok(CliqueDownOutcome::Transferred(TransferCert {
                    direction: TransferDirection::Down,
                    x_clique: vertices,
                    spec_clique: t,
                    anchor,
                }));
            }
        }
    }
    if p == 3 && t.len() == 3 {
        // Check for the {0, c, -c} shape in some translate.
        for shift in &t {
            let rest: Vec<Vec<u64>> = t
                .iter()
                .filter(|c| *c != shift)
                .map(|c| spec.difference(c, shift))
                .collect();
            if rest.len() == 2 && rest[1] == spec.inv(&rest[0]) {
                return Ok(CliqueDownOutcome::Caveat(CaveatRegime::P3PlusMinusTriangle));
            }
        }
    }
    Err(CayleyError::InternalNoAnchor)
}

/// How the identity's neighbourhood relates to the triangle graph T(x)
/// (vertices the edges of x, joined when they span a common triangle).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverStructure {
    /// p = 2: the neighbourhood IS the triangle graph.
    Isomorphism { map: VertexMap },
    /// p >= 5: the neighbourhood double-covers the triangle graph by
    /// forgetting arc orientation.
    DoubleCover { map: VertexMap },
    /// p = 3: each arc is adjacent to its reverse; removing that perfect
    /// matching leaves a double cover.
    MatchingThenDoubleCover {
        matching: Vec<(usize, usize)>,
        map: VertexMap,
    },
}

/// Certify the structure of the identity's neighbourhood in the free spec
/// over the triangle graph of x, per the prime's regime.
pub fn cover_structure(x: &Graph, p: u64) -> Result<CoverStructure, CayleyError> {
    let spec = free_connection_set(x, p)?;
    let hood = spec.neighborhood_of_identity();
    let triangle = x.triangle_graph();
    let edge_index: HashMap<(usize, usize), usize> = x
        .edges()
        .enumerate()
        .map(|(k, (i, j))| ((i as usize, j as usize), k))
        .collect();
    // Connection element c = e_i - e_j (or e_i + e_j) maps to the edge ij.
    let image: Vec<usize> = spec
        .connection()
        .iter()
        .map(|c| {
            let i = c.iter().position(|&d| d == 1).expect("unit entry");
            let j = if p == 2 {
                c.iter().rposition(|&d| d == 1).expect("second unit entry")
            } else {
                c.iter().position(|&d| d == p - 1).expect("inverse entry")
            };
            let key = (i.min(j), i.max(j));
            edge_index[&key]
        })
        .collect();
    let map = VertexMap::new(image, triangle.order()).expect("edge indices in range");

    let check = |source: &Graph, r: usize, map: &VertexMap| -> Result<(), CayleyError> {
        let (ok, violation) =
            is_r_fold_cover(source, &triangle, map, r).expect("orders match by construction");
        if ok {
            Ok(())
        } else {
            Err(CayleyError::InternalCover(
                violation.expect("violation accompanies failure"),
            ))
        }
    };
    match p {
        2 => {
            check(&hood, 1, &map)?;
            Ok(CoverStructure::Isomorphism { map })
        }
        3 => {
            let conn = spec.connection();
            let mut matching = Vec::new();
            let mut stripped = Graph::new(hood.order());
            for (u, w) in hood.edges() {
                if conn[w as usize] == spec.inv(&conn[u as usize]) {
                    matching.push((u as usize, w as usize));
                } else {
                    stripped.add_edge(u as usize, w as usize);
                }
            }
            check(&stripped, 2, &map)?;
            Ok(CoverStructure::MatchingThenDoubleCover { matching, map })
        }
        _ => {
            check(&hood, 2, &map)?;
            Ok(CoverStructure::DoubleCover { map })
        }
    }
}

/// Lift an elementary spec into the n-th power of a table group along an
/// element h of order exactly p: the digit a becomes h^a.
pub fn lift_connection_set(
    spec: &CayleySpec,
    table: Arc<GroupTable>,
    h: usize,
) -> Result<CayleySpec, CayleyError> {
    let GroupKind::ZpPower { p, n } = spec.kind else {
        return Err(CayleyError::NotElementary);
    };
    if h >= table.order() {
        return Err(CayleyError::GroupElementOutOfRange {
            h,
            order: table.order(),
        });
    }
    let found = table.element_order(h);
    if found as u64 != p {
        return Err(CayleyError::LiftOrder {
            h,
            found,
            expected: p,
        });
    }
    let powers = table.powers(h, p as usize);
    let connection = spec
        .connection
        .iter()
        .map(|c| c.iter().map(|&d| powers[d as usize] as u64).collect())
        .collect();
    CayleySpec::new(GroupKind::TablePower { table, n }, connection)
}

/// What lifting did, checked directly on materialized graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport {
    pub copies: u128,
    pub copy_order: u128,
    pub components_input: usize,
    pub components_lifted: usize,
    pub edges_input: usize,
    pub edges_lifted: usize,
    /// Edges of the lifted graph not inside any copy. Zero means the copies
    /// are genuinely disjoint subgraphs.
    pub cross_edges: usize,
    /// Every coset copy checked isomorphic to the input via its explicit
    /// translation bijection.
    pub copies_isomorphic: bool,
    pub omega_input: usize,
    pub omega_lifted: usize,
}

/// Lift a spec and verify the copy structure: the lifted graph decomposes
/// into (|G|/p)^n translates of the input graph, each isomorphic to it via
/// an explicit coordinate bijection, with no edges in between.
pub fn verify_lift(
    spec: &CayleySpec,
    table: Arc<GroupTable>,
    h: usize,
    cap: u128,
    max_nodes: u64,
) -> Result<LiftReport, CayleyError> {
    let GroupKind::ZpPower { p, n } = spec.kind else {
        return Err(CayleyError::NotElementary);
    };
    let lifted = lift_connection_set(spec, table.clone(), h)?;
    let gx = spec.materialize(cap)?;
    let gl = lifted.materialize(cap)?;
    let powers = table.powers(h, p as usize);

    // Transversal of the right cosets of <h>: smallest element of each.
    let mut rep_of = vec![usize::MAX; table.order()];
    let mut reps = Vec::new();
    for g in 0..table.order() {
        if rep_of[g] != usize::MAX {
            continue;
        }
        reps.push(g);
        for &u in &powers {
            rep_of[table.mul(u, g)] = g;
        }
    }
    let copies = (reps.len() as u128).pow(n as u32);
    let copy_order = (p as u128).pow(n as u32);

    let mut covered = vec![false; gl.order()];
    let mut copies_isomorphic = true;
    for tuple_index in 0..copies {
        // Decode the coset tuple, low coordinate first.
        let mut rem = tuple_index;
        let coset: Vec<usize> = (0..n)
            .map(|_| {
                let r = reps[(rem % reps.len() as u128) as usize];
                rem /= reps.len() as u128;
                r
            })
            .collect();
        // psi(a) multiplies h^(a_i) onto the coset representative.
        let psi: Vec<usize> = (0..copy_order)
            .map(|a| {
                let digits = spec.element_of_index(a);
                let element: Vec<u64> = digits
                    .iter()
                    .zip(&coset)
                    .map(|(&d, &u)| table.mul(powers[d as usize], u) as u64)
                    .collect();
                lifted.element_index(&element) as usize
            })
            .collect();
        for &img in &psi {
            covered[img] = true;
        }
        for a in 0..copy_order as usize {
            for b in (a + 1)..copy_order as usize {
                if gx.has_edge(a, b) != gl.has_edge(psi[a], psi[b]) {
                    copies_isomorphic = false;
                }
            }
        }
    }
    assert!(covered.iter().all(|&c| c), "copies must cover every vertex");

    let (components_input, _) = gx.connected_components();
    let (components_lifted, _) = gl.connected_components();
    let cross = gl.size() - copies as usize * gx.size();
    Ok(LiftReport {
        copies,
        copy_order,
        components_input,
        components_lifted,
        edges_input: gx.size(),
        edges_lifted: gl.size(),
        cross_edges: cross,
        copies_isomorphic,
        omega_input: spec.clique_number(max_nodes)?.size,
        omega_lifted: lifted.clique_number(max_nodes)?.size,
    })
}

/// Partition of the vertices of G^n by right cosets of <h> coordinatewise.
pub fn coset_partition(
    table: &GroupTable,
    h: usize,
    n: usize,
    cap: u128,
) -> Result<Partition, CayleyError> {
    if h >= table.order() {
        return Err(CayleyError::GroupElementOutOfRange {
            h,
            order: table.order(),
        });
    }
    let base = table.order() as u128;
    let order = base.pow(n as u32);
    if order > cap {
        return Err(CayleyError::SizeCap { order, cap });
    }
    let k = table.element_order(h);
    let powers = table.powers(h, k);
    let mut rep_of = vec![usize::MAX; table.order()];
    for g in 0..table.order() {
        if rep_of[g] == usize::MAX {
            for &u in &powers {
                rep_of[table.mul(u, g)] = g;
            }
        }
    }
    let mut cells: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in 0..order as usize {
        let mut rem = v as u128;
        let key: Vec<usize> = (0..n)
            .map(|_| {
                let d = (rem % base) as usize;
                rem /= base;
                rep_of[d]
            })
            .collect();
        cells.entry(key).or_default().push(v);
    }
    Ok(
        Partition::new(order as usize, cells.into_values().collect())
            .expect("cells partition the vertex range"),
    )
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SpecFormatError {
    #[error("line {line}: expected `cayley kind=<zp|group> ...`, found {found:?}")]
    BadHeader { line: usize, found: String },
    #[error("line {line}: bad entry {found:?}")]
    BadEntry { line: usize, found: String },
    #[error("header is missing the {0} field")]
    MissingField(&'static str),
    #[error("could not load group table {path:?}: {message}")]
    GroupLoad { path: String, message: String },
    #[error(transparent)]
    Invalid(#[from] CayleyError),
}

/// Render a spec. Table-power specs need the group file name their header
/// should reference.
pub fn write_cayley_spec(spec: &CayleySpec, groupfile: Option<&str>) -> String {
    let mut out = String::new();
    match spec.kind() {
        GroupKind::ZpPower { p, n } => {
            writeln!(out, "cayley kind=zp p={p} n={n}").unwrap();
        }
        GroupKind::TablePower { n, .. } => {
            let file = groupfile.expect("table-power specs need a group file name");
            writeln!(out, "cayley kind=group n={n} groupfile={file}").unwrap();
        }
    }
    for c in spec.connection() {
        let digits: Vec<String> = c.iter().map(u64::to_string).collect();
        writeln!(out, "{}", digits.join(" ")).unwrap();
    }
    out
}

/// Parse a spec. When the header names a group file, `load_group` is called
/// with the file name and must produce the table.
pub fn parse_cayley_spec(
    text: &str,
    load_group: impl FnOnce(&str) -> Result<GroupTable, String>,
) -> Result<CayleySpec, SpecFormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(SpecFormatError::BadHeader {
        line: 1,
        found: String::new(),
    })?;
    let bad_header = || SpecFormatError::BadHeader {
        line: hline,
        found: header.to_string(),
    };
    let mut fields = header.split_whitespace();
    if fields.next() != Some("cayley") {
        return Err(bad_header());
    }
    let mut kv = HashMap::new();
    for field in fields {
        let (key, value) = field.split_once('=').ok_or_else(bad_header)?;
        kv.insert(key, value);
    }
    let n: usize = kv
        .get("n")
        .ok_or(SpecFormatError::MissingField("n"))?
        .parse()
        .map_err(|_| bad_header())?;
    let kind = match kv.get("kind").copied() {
        Some("zp") => {
            let p = kv
                .get("p")
                .ok_or(SpecFormatError::MissingField("p"))?
                .parse()
                .map_err(|_| bad_header())?;
            GroupKind::ZpPower { p, n }
        }
        Some("group") => {
            let path = kv
                .get("groupfile")
                .ok_or(SpecFormatError::MissingField("groupfile"))?;
            let table = load_group(path).map_err(|message| SpecFormatError::GroupLoad {
                path: path.to_string(),
                message,
            })?;
            GroupKind::TablePower {
                table: Arc::new(table),
                n,
            }
        }
        _ => return Err(bad_header()),
    };
    let mut connection = Vec::new();
    for (line, text) in lines {
        let digits: Result<Vec<u64>, _> = text
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>().map_err(|_| SpecFormatError::BadEntry {
                    line,
                    found: t.to_string(),
                })
            })
            .collect();
        connection.push(digits?);
    }
    Ok(CayleySpec::new(kind, connection)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fplinalg::extend_to_basis;
    use crate::solve::DEFAULT_MAX_NODES;

    fn vecs(rows: &[&[u64]]) -> Vec<Vec<u64>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn free_connection_sets() {
        let k3 = Graph::complete(3);
        let spec = free_connection_set(&k3, 2).unwrap();
        assert_eq!(
            spec.connection(),
            &vecs(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
        );

        let k2 = Graph::complete(2);
        let spec = free_connection_set(&k2, 3).unwrap();
        assert_eq!(spec.connection(), &vecs(&[&[1, 2], &[2, 1]]));

        let edgeless = Graph::new(4);
        assert_eq!(free_connection_set(&edgeless, 5).unwrap().degree(), 0);

        // Degree: |E| for p = 2, 2|E| beyond.
        assert_eq!(free_connection_set(&k3, 5).unwrap().degree(), 6);
        assert_eq!(free_connection_set(&k3, 2).unwrap().degree(), 3);
    }

    #[test]
    fn spec_validation() {
        let kind = GroupKind::ZpPower { p: 3, n: 2 };
        assert_eq!(
            CayleySpec::new(kind.clone(), vecs(&[&[0, 0]])).unwrap_err(),
            CayleyError::IdentityInConnection
        );
        assert_eq!(
            CayleySpec::new(kind.clone(), vecs(&[&[1, 2]])).unwrap_err(),
            CayleyError::NotInverseClosed {
                element: vec![1, 2]
            }
        );
        assert_eq!(
            CayleySpec::new(kind.clone(), vecs(&[&[3, 0]])).unwrap_err(),
            CayleyError::EntryOutOfRange {
                element: vec![3, 0],
                base: 3
            }
        );
        assert_eq!(
            CayleySpec::new(GroupKind::ZpPower { p: 4, n: 1 }, vec![]).unwrap_err(),
            CayleyError::NotPrime(4)
        );
        // Duplicates collapse.
        let spec = CayleySpec::new(kind, vecs(&[&[1, 2], &[2, 1], &[1, 2]])).unwrap();
        assert_eq!(spec.degree(), 2);
    }

    #[test]
    fn materialize_small_graphs() {
        let four_cycle =
            CayleySpec::new(GroupKind::ZpPower { p: 2, n: 2 }, vecs(&[&[0, 1], &[1, 0]])).unwrap();
        let g = four_cycle.materialize(DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!((g.order(), g.size()), (4, 4));
        // Index 0 = 00, 1 = 10, 2 = 01, 3 = 11 (low digit first).
        assert!(g.has_edge(0, 1) && g.has_edge(0, 2) && !g.has_edge(0, 3));

        let empty = CayleySpec::new(GroupKind::ZpPower { p: 5, n: 1 }, vec![]).unwrap();
        assert_eq!(empty.materialize(10).unwrap().size(), 0);

        let spec = free_connection_set(&Graph::complete(3), 2).unwrap();
        assert_eq!(
            spec.materialize(7).unwrap_err(),
            CayleyError::SizeCap { order: 8, cap: 7 }
        );
    }

    #[test]
    fn cube_with_diagonals_has_clique_four() {
        let spec = free_connection_set(&Graph::complete(3), 2).unwrap();
        let g = spec.materialize(DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.neighbors(0).len() == 3);
        let clique = solve::max_clique(&g, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(clique.len(), 4);
        // The shortcut agrees.
        assert_eq!(spec.clique_number(DEFAULT_MAX_NODES).unwrap().size, 4);
    }

    #[test]
    fn neighborhood_structures() {
        let k3 = Graph::complete(3);
        let hood2 = free_connection_set(&k3, 2)
            .unwrap()
            .neighborhood_of_identity();
        assert_eq!((hood2.order(), hood2.size()), (3, 3));

        let empty = CayleySpec::new(GroupKind::ZpPower { p: 2, n: 1 }, vec![]).unwrap();
        assert_eq!(empty.neighborhood_of_identity().order(), 0);

        // Over Z_5 the six arcs of a triangle close into a single 6-cycle.
        let hood5 = free_connection_set(&k3, 5)
            .unwrap()
            .neighborhood_of_identity();
        assert_eq!((hood5.order(), hood5.size()), (6, 6));
        assert!((0..6).all(|v| hood5.degree(v) == 2));
        assert_eq!(hood5.connected_components().0, 1);
    }

    #[test]
    fn clique_number_via_neighborhood_matches_materialized() {
        for (x, p) in [
            (Graph::complete(4), 5u64),
            (Graph::cycle(5), 2),
            (Graph::complete(3), 3),
            (Graph::new(3), 7),
        ] {
            let spec = free_connection_set(&x, p).unwrap();
            let direct = solve::max_clique(&spec.materialize(1 << 20).unwrap(), DEFAULT_MAX_NODES)
                .unwrap()
                .len();
            assert_eq!(
                spec.clique_number(DEFAULT_MAX_NODES).unwrap().size,
                direct,
                "shortcut disagreed for p={p}"
            );
        }
    }

    #[test]
    fn sum_distinctness_reports() {
        // p = 5: nothing may collide.
        let r = check_sum_distinctness(&Graph::complete(6), 5).unwrap();
        assert!(r.is_clean() && r.permitted.is_empty());

        // p = 3: the triple repeats all sum to zero, and nothing else.
        let r = check_sum_distinctness(&Graph::complete(2), 3).unwrap();
        assert!(r.is_clean());
        assert_eq!(r.permitted.len(), 1);
        assert_eq!(r.permitted[0].left, vec![0, 0, 0]);
        assert_eq!(r.permitted[0].right, vec![1, 1, 1]);
        assert_eq!(r.permitted[0].value, vec![0, 0]);

        // p = 2: squares vanish; the permitted classes show up, no violations.
        let r = check_sum_distinctness(&Graph::complete(3), 2).unwrap();
        assert!(r.is_clean());
        assert!(!r.permitted.is_empty());

        // A dependent generator list is caught as a violation.
        let bad = vecs(&[&[0, 1], &[1, 0], &[1, 1], &[0, 0]]);
        let r = sum_distinctness_of(&bad, 2);
        assert!(!r.is_clean());
    }

    fn certified(p: u64, n: usize, rows: &[&[u64]]) -> LinearCode {
        let mut code = LinearCode::from_generator(p, n, &vecs(rows)).unwrap();
        code.certify_distance(1 << 20).unwrap();
        code
    }

    #[test]
    fn quotient_of_triangle_by_repetition_code() {
        let k3 = Graph::complete(3);
        let spec = free_connection_set(&k3, 2).unwrap();
        let code = certified(2, 3, &[&[1, 1, 1]]);
        let basis = extend_to_basis(2, 3, &code.generator().row_vecs()).unwrap();
        let q = quotient_connection_set(&spec, &code, &basis).unwrap();
        assert_eq!(q.connection(), &vecs(&[&[0, 1], &[1, 0], &[1, 1]]));
        // All nonzero vectors of Z_2^2: the quotient graph is complete.
        let g = q.materialize(16).unwrap();
        assert_eq!((g.order(), g.size()), (4, 6));
    }

    #[test]
    fn quotient_by_trivial_code_is_identity() {
        let spec = free_connection_set(&Graph::cycle(4), 3).unwrap();
        let code = LinearCode::trivial(3, 4).unwrap();
        let basis = extend_to_basis(3, 4, &[]).unwrap();
        let q = quotient_connection_set(&spec, &code, &basis).unwrap();
        assert_eq!(q, spec);
    }

    #[test]
    fn quotient_preconditions() {
        let spec = free_connection_set(&Graph::complete(3), 2).unwrap();
        let uncertified = LinearCode::from_generator(2, 3, &vecs(&[&[1, 1, 1]])).unwrap();
        let basis = extend_to_basis(2, 3, &[vec![1, 1, 1]]).unwrap();
        assert_eq!(
            quotient_connection_set(&spec, &uncertified, &basis).unwrap_err(),
            CayleyError::DistanceUncertified
        );

        let weak = certified(2, 3, &[&[1, 1, 0]]);
        let weak_basis = extend_to_basis(2, 3, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(
            quotient_connection_set(&spec, &weak, &weak_basis).unwrap_err(),
            CayleyError::DistanceTooSmall {
                needed: 3,
                have: Distance::Finite(2)
            }
        );

        // Basis not matching the code.
        let code = certified(2, 3, &[&[1, 1, 1]]);
        let wrong = extend_to_basis(2, 3, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(
            quotient_connection_set(&spec, &code, &wrong).unwrap_err(),
            CayleyError::BasisMismatch
        );
    }

    #[test]
    fn induced_copy_of_five_cycle() {
        let c5 = Graph::cycle(5);
        let code = certified(2, 5, &[&[1, 1, 1, 1, 1]]);
        assert!(code.distance_cert().unwrap().distance.at_least(5));
        let basis = extend_to_basis(2, 5, &code.generator().row_vecs()).unwrap();
        let spec = free_connection_set(&c5, 2).unwrap();
        let q = quotient_connection_set(&spec, &code, &basis).unwrap();
        let report = verify_induced_copy(&c5, &q, &code, &basis).unwrap();
        assert!(report.holds, "mismatches: {:?}", report.mismatches);
        assert_eq!(report.embedding.len(), 5);
    }

    #[test]
    fn induced_copy_fails_at_distance_three() {
        // A single edge on 5 vertices, quotiented by a distance-3 code
        // containing the weight-4 word 11011: the non-edge between 3 and 4
        // lands on the image of the edge between 0 and 1.
        let mut x = Graph::new(5);
        x.add_edge(0, 1);
        let code = certified(2, 5, &[&[1, 1, 1, 0, 0], &[0, 0, 1, 1, 1]]);
        assert_eq!(code.distance_cert().unwrap().distance, Distance::Finite(3));
        let basis = extend_to_basis(2, 5, &code.generator().row_vecs()).unwrap();
        let spec = free_connection_set(&x, 2).unwrap();
        let q = quotient_connection_set(&spec, &code, &basis).unwrap();
        let report = verify_induced_copy(&x, &q, &code, &basis).unwrap();
        assert!(!report.holds);
        assert_eq!(
            report.mismatches,
            vec![CopyMismatch {
                i: 3,
                j: 4,
                expected_edge: false
            }]
        );
    }

    #[test]
    fn clique_up_examples() {
        let k3 = Graph::complete(3);
        let gens = free_generators(3);

        let spec2 = free_connection_set(&k3, 2).unwrap();
        let single = clique_up(&k3, &[1], &spec2, &gens).unwrap();
        assert_eq!(single.spec_clique, vecs(&[&[0, 0, 0]]));

        // A triangle's image completes to a 4-clique over Z_2.
        let cert = clique_up(&k3, &[0, 1, 2], &spec2, &gens).unwrap();
        assert_eq!(
            cert.spec_clique,
            vecs(&[&[0, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
        );
        assert_eq!(cert.anchor, 0);

        // Over Z_5 the image stays the same size.
        let spec5 = free_connection_set(&k3, 5).unwrap();
        let cert = clique_up(&k3, &[0, 1, 2], &spec5, &gens).unwrap();
        assert_eq!(cert.spec_clique.len(), 3);

        // Non-cliques are rejected.
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let specp = free_connection_set(&path, 2).unwrap();
        assert_eq!(
            clique_up(&path, &[0, 2], &specp, &gens).unwrap_err(),
            CayleyError::NotAClique(vec![0, 2])
        );
    }

    #[test]
    fn clique_round_trips() {
        // p = 5 on K_4: up then down recovers a 4-clique.
        let k4 = Graph::complete(4);
        let gens = free_generators(4);
        let spec = free_connection_set(&k4, 5).unwrap();
        let up = clique_up(&k4, &[0, 1, 2, 3], &spec, &gens).unwrap();
        match clique_down(&up.spec_clique, &k4, &spec, &gens).unwrap() {
            CliqueDownOutcome::Transferred(cert) => {
                assert_eq!(cert.x_clique, vec![0, 1, 2, 3]);
            }
            other => panic!("expected a transfer, got {other:?}"),
        }

        // p = 2 on K_5: a 5-clique (4 arcs sharing the anchor) comes back.
        let k5 = Graph::complete(5);
        let gens5 = free_generators(5);
        let spec5 = free_connection_set(&k5, 2).unwrap();
        let up = clique_up(&k5, &[0, 1, 2, 3, 4], &spec5, &gens5).unwrap();
        assert_eq!(up.spec_clique.len(), 5);
        match clique_down(&up.spec_clique, &k5, &spec5, &gens5).unwrap() {
            CliqueDownOutcome::Transferred(cert) => {
                assert_eq!(cert.x_clique.len(), 5);
                assert!(k5.is_clique(&cert.x_clique));
            }
            other => panic!("expected a transfer, got {other:?}"),
        }

        // p = 3 on K_3: the negated translate finds the anchor.
        let k3 = Graph::complete(3);
        let gens3 = free_generators(3);
        let spec3 = free_connection_set(&k3, 3).unwrap();
        let up = clique_up(&k3, &[0, 1, 2], &spec3, &gens3).unwrap();
        match clique_down(&up.spec_clique, &k3, &spec3, &gens3).unwrap() {
            CliqueDownOutcome::Transferred(cert) => {
                assert_eq!(cert.x_clique, vec![0, 1, 2]);
            }
            other => panic!("expected a transfer, got {other:?}"),
        }
    }

    #[test]
    fn clique_down_caveats() {
        // p = 2: the completed triangle image has arcs forming a triangle,
        // so no vertex lies on all of them.
        let k3 = Graph::complete(3);
        let gens = free_generators(3);
        let spec = free_connection_set(&k3, 2).unwrap();
        let up = clique_up(&k3, &[0, 1, 2], &spec, &gens).unwrap();
        assert_eq!(up.spec_clique.len(), 4);
        assert_eq!(
            clique_down(&up.spec_clique, &k3, &spec, &gens).unwrap(),
            CliqueDownOutcome::Caveat(CaveatRegime::P2SmallClique)
        );

        // p = 3: a single edge gives the triangle {0, c, -c}.
        let k2 = Graph::complete(2);
        let gens2 = free_generators(2);
        let spec2 = free_connection_set(&k2, 3).unwrap();
        let t = vecs(&[&[0, 0], &[1, 2], &[2, 1]]);
        assert_eq!(
            clique_down(&t, &k2, &spec2, &gens2).unwrap(),
            CliqueDownOutcome::Caveat(CaveatRegime::P3PlusMinusTriangle)
        );

        // A singleton transfers by convention.
        let t0 = vecs(&[&[1, 2]]);
        match clique_down(&t0, &k2, &spec2, &gens2).unwrap() {
            CliqueDownOutcome::Transferred(cert) => assert_eq!(cert.x_clique, vec![0]),
            other => panic!("expected a transfer, got {other:?}"),
        }
    }

    #[test]
    fn cover_structures_by_prime() {
        let k3 = Graph::complete(3);
        match cover_structure(&k3, 2).unwrap() {
            CoverStructure::Isomorphism { map } => assert_eq!(map.image().len(), 3),
            other => panic!("expected isomorphism, got {other:?}"),
        }
        match cover_structure(&k3, 5).unwrap() {
            CoverStructure::DoubleCover { map } => assert_eq!(map.image().len(), 6),
            other => panic!("expected a double cover, got {other:?}"),
        }
        match cover_structure(&k3, 3).unwrap() {
            CoverStructure::MatchingThenDoubleCover { matching, map } => {
                assert_eq!(matching.len(), 3);
                assert_eq!(map.image().len(), 6);
            }
            other => panic!("expected matching plus cover, got {other:?}"),
        }
        // Triangle-free input: T(x) is edgeless and everything still checks.
        let c5 = Graph::cycle(5);
        assert!(matches!(
            cover_structure(&c5, 3).unwrap(),
            CoverStructure::MatchingThenDoubleCover { .. }
        ));
        assert!(matches!(
            cover_structure(&c5, 2).unwrap(),
            CoverStructure::Isomorphism { .. }
        ));
    }

    #[test]
    fn lift_into_cyclic_group() {
        // K_2 over Z_2 lifted along the order-2 element of Z_4: two copies.
        let spec = CayleySpec::new(GroupKind::ZpPower { p: 2, n: 1 }, vecs(&[&[1]])).unwrap();
        let z4 = Arc::new(GroupTable::cyclic(4));
        let lifted = lift_connection_set(&spec, z4.clone(), 2).unwrap();
        assert_eq!(lifted.connection(), &vecs(&[&[2]]));
        let report = verify_lift(&spec, z4.clone(), 2, 1 << 10, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(report.copies, 2);
        assert_eq!(report.components_lifted, 2);
        assert_eq!(report.cross_edges, 0);
        assert!(report.copies_isomorphic);
        assert_eq!(report.omega_input, report.omega_lifted);

        // Wrong order rejected: 1 has order 4 in Z_4.
        assert_eq!(
            lift_connection_set(&spec, z4, 1).unwrap_err(),
            CayleyError::LiftOrder {
                h: 1,
                found: 4,
                expected: 2
            }
        );
    }

    #[test]
    fn lift_into_symmetric_group() {
        let spec = free_connection_set(&Graph::complete(2), 3).unwrap();
        let s3 = Arc::new(GroupTable::symmetric3());
        let h = crate::group::cauchy_element(&s3, 3).unwrap();
        let report = verify_lift(&spec, s3.clone(), h, 1 << 10, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(report.copies, 4);
        assert_eq!(report.copy_order, 9);
        assert!(report.copies_isomorphic);
        assert_eq!(report.cross_edges, 0);
        assert_eq!(
            report.components_lifted,
            report.copies as usize * report.components_input
        );
        assert_eq!(report.omega_input, report.omega_lifted);

        // The coordinatewise coset partition is equitable.
        let partition = coset_partition(&s3, h, 2, 1 << 10).unwrap();
        let lifted = lift_connection_set(&spec, s3, h).unwrap();
        let g = lifted.materialize(1 << 10).unwrap();
        let (ok, violation) = crate::graph::is_equitable(&g, &partition).unwrap();
        assert!(ok, "coset partition not equitable: {violation:?}");
    }

    #[test]
    fn spec_format_round_trips() {
        let spec = free_connection_set(&Graph::complete(3), 2).unwrap();
        let text = write_cayley_spec(&spec, None);
        assert!(text.starts_with("cayley kind=zp p=2 n=3\n"));
        let back = parse_cayley_spec(&text, |_| Err("no group".into())).unwrap();
        assert_eq!(back, spec);

        let z4 = Arc::new(GroupTable::cyclic(4));
        let lifted = lift_connection_set(
            &CayleySpec::new(GroupKind::ZpPower { p: 2, n: 1 }, vecs(&[&[1]])).unwrap(),
            z4,
            2,
        )
        .unwrap();
        let text = write_cayley_spec(&lifted, Some("z4.group"));
        assert!(text.starts_with("cayley kind=group n=1 groupfile=z4.group\n"));
        let back = parse_cayley_spec(&text, |path| {
            assert_eq!(path, "z4.group");
            Ok(GroupTable::cyclic(4))
        })
        .unwrap();
        assert_eq!(back, lifted);
    }

    #[test]
    fn spec_format_errors() {
        assert!(matches!(
            parse_cayley_spec("cayley kind=zp n=2\n1 1\n", |_| Err(String::new())),
            Err(SpecFormatError::MissingField("p"))
        ));
        assert!(matches!(
            parse_cayley_spec("cayley kind=group n=2\n", |_| Err(String::new())),
            Err(SpecFormatError::MissingField("groupfile"))
        ));
        assert!(matches!(
            parse_cayley_spec("cayley kind=weird p=2 n=2\n", |_| Err(String::new())),
            Err(SpecFormatError::BadHeader { .. })
        ));
        assert!(matches!(
            parse_cayley_spec("cayley kind=group n=1 groupfile=missing.group\n", |_| Err(
                "not found".to_string()
            )),
            Err(SpecFormatError::GroupLoad { .. })
        ));
        assert!(matches!(
            parse_cayley_spec("cayley kind=zp p=2 n=2\n1 x\n", |_| Err(String::new())),
            Err(SpecFormatError::BadEntry { .. })
        ));
        // Structural validation still applies after parsing.
        assert!(matches!(
            parse_cayley_spec("cayley kind=zp p=3 n=2\n1 2\n", |_| Err(String::new())),
            Err(SpecFormatError::Invalid(
                CayleyError::NotInverseClosed { .. }
            ))
        ));
    }
}

//! Colorings and nowhere-zero flows of loopless graphs, phrased as
//! covering questions.

use serde::Serialize;

use crate::abelian::{FiniteAbelianGroup, Subgroup};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::gf::linalg::{dot, index_vec, space_size};
use crate::gf::Field;
use crate::par;
use crate::parity::{cube_set, ElementaryGroup};

/// Loopless multigraph with oriented edges `(tail, head)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges are oriented from the lower to the higher endpoint.
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let norm: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        Self::oriented(vertices, &norm)
    }

    /// Keeps the given orientation.
    pub fn oriented(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidArgument(format!("edge {u}-{v} leaves the vertex set")));
            }
        }
        Ok(Graph {
            vertices,
            edges: edges.to_vec(),
        })
    }

    /// `V E` on the first line, then one `u v` line per edge.
    pub fn parse(text: &str) -> Result<Self> {
        let nums: Vec<usize> = text
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| Error::Parse(format!("not a vertex index: {w:?}"))))
            .collect::<Result<_>>()?;
        if nums.len() < 2 {
            return Err(Error::Parse("missing `V E` header".into()));
        }
        let (v, e) = (nums[0], nums[1]);
        if nums.len() != 2 + 2 * e {
            return Err(Error::Parse(format!("expected {e} edges")));
        }
        let edges: Vec<(usize, usize)> = nums[2..].chunks(2).map(|c| (c[0], c[1])).collect();
        Self::new(v, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.vertices, self.edges.len());
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph { vertices: n, edges }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).expect("n ≥ 2")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &edges).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Same graph with edge `e` reversed.
    pub fn flip(&self, e: usize) -> Graph {
        let mut g = self.clone();
        let (u, v) = g.edges[e];
        g.edges[e] = (v, u);
        g
    }

    pub fn without_edge(&self, e: usize) -> Graph {
        let mut g = self.clone();
        g.edges.remove(e);
        g
    }

    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut count = self.vertices;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }
}

/// `vₑ ∈ GF(q)^V`: `+1` at the tail, `−1` at the head.
pub fn edge_vectors(g: &Graph, f: &Field) -> Vec<Vec<u32>> {
    g.edges
        .iter()
        .map(|&(u, v)| {
            let mut x = vec![0; g.vertices];
            x[u] = 1;
            x[v] = f.neg(1);
            x
        })
        .collect()
}

/// Proper coloring with colors `0..q` by backtracking in vertex order.
pub fn colorable_naive(g: &Graph, q: u32) -> Option<Vec<u32>> {
    let mut adj = vec![Vec::new(); g.vertices];
    for &(u, v) in &g.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut colors: Vec<Option<u32>> = vec![None; g.vertices];
    fn rec(v: usize, q: u32, adj: &[Vec<usize>], colors: &mut [Option<u32>]) -> bool {
        if v == colors.len() {
            return true;
        }
        for c in 0..q {
            if adj[v].iter().all(|&w| colors[w] != Some(c)) {
                colors[v] = Some(c);
                if rec(v + 1, q, adj, colors) {
                    return true;
                }
            }
        }
        colors[v] = None;
        false
    }
    rec(0, q, &adj, &mut colors).then(|| colors.into_iter().map(|c| c.unwrap()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverColoring {
    /// First `w ∈ W` (index order) outside every `vₑ^⊥`; a proper coloring.
    pub witness: Option<Vec<u32>>,
    /// Number of vectors outside the union, i.e. of proper colorings.
    pub outside: usize,
    pub space_size: usize,
}

/// Colorability as non-coverage of `W = GF(q)^V` by the `vₑ^⊥`.
/// For `q = 1` the space is the single zero vector.
pub fn colorable_via_cover(g: &Graph, q: u32, limit: usize) -> Result<CoverColoring> {
    if q == 1 {
        let ok = g.edges.is_empty();
        return Ok(CoverColoring {
            witness: ok.then(|| vec![0; g.vertices]),
            outside: ok as usize,
            space_size: 1,
        });
    }
    let f = Field::new(q)?;
    let size = space_size(q, g.vertices, limit)?;
    let vs = edge_vectors(g, &f);
    let outside: Vec<bool> = par::map_range(size, |i| {
        let w = index_vec(q, g.vertices, i);
        vs.iter().all(|v| dot(&f, v, &w) != 0)
    });
    let first = outside.iter().position(|&b| b);
    Ok(CoverColoring {
        witness: first.map(|i| index_vec(q, g.vertices, i)),
        outside: outside.iter().filter(|&&b| b).count(),
        space_size: size,
    })
}

/// Some `w` has an odd number of 0-1 representations by the edge vectors,
/// each first multiplied by its entry of `scales` (all ones by default).
pub fn colorable_via_parity(g: &Graph, q: u32, scales: Option<&[u32]>, limit: usize) -> Result<bool> {
    let eg = ElementaryGroup::new(q, g.vertices.max(1), limit)?;
    eg.require_odd()?;
    let f = eg.field().clone();
    let mut vs = edge_vectors(g, &f);
    if g.vertices == 0 {
        vs = vec![vec![0]; g.edge_count()];
    }
    if let Some(s) = scales {
        if s.len() != vs.len() || s.iter().any(|&c| c == 0 || c >= q) {
            return Err(Error::InvalidArgument("scales must be nonzero, one per edge".into()));
        }
        for (v, &c) in vs.iter_mut().zip(s) {
            *v = crate::gf::linalg::vec_scale(&f, c, v);
        }
    }
    Ok(!cube_set(&eg, &vs)?.bits().is_empty())
}

/// The group of `A`-flows, parameterized by the values on the edges
/// outside a spanning forest.
#[derive(Clone, Debug)]
pub struct FlowSpace {
    graph: Graph,
    group: FiniteAbelianGroup,
    non_tree: Vec<usize>,
    /// Tree edges solved in order: (leaf vertex, edge).
    elimination: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
    size: usize,
}

impl FlowSpace {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// `|E| − |V| + m`
    pub fn dimension(&self) -> usize {
        self.non_tree.len()
    }

    pub fn non_tree_edges(&self) -> &[usize] {
        &self.non_tree
    }

    /// `|A|^dimension`
    pub fn size(&self) -> usize {
        self.size
    }

    /// Flow number `i`: non-tree values are the base-`|A|` digits of `i`,
    /// first non-tree edge least significant.
    pub fn flow(&self, mut i: usize) -> Vec<usize> {
        let a = &self.group;
        let mut values = vec![0; self.graph.edge_count()];
        for &e in &self.non_tree {
            values[e] = i % a.order();
            i /= a.order();
        }
        for &(v, te) in &self.elimination {
            let mut balance = 0;
            for &e in &self.incident[v] {
                if e == te {
                    continue;
                }
                let (tail, _) = self.graph.edges[e];
                balance = if tail == v {
                    a.add(balance, values[e])
                } else {
                    a.sub(balance, values[e])
                };
            }
            let (tail, _) = self.graph.edges[te];
            values[te] = if tail == v { a.neg(balance) } else { balance };
        }
        values
    }

    /// Out-flow minus in-flow is zero at every vertex.
    pub fn conserves(&self, values: &[usize]) -> bool {
        let a = &self.group;
        let mut bal = vec![0; self.graph.vertices];
        for (e, &(u, v)) in self.graph.edges.iter().enumerate() {
            bal[u] = a.add(bal[u], values[e]);
            bal[v] = a.sub(bal[v], values[e]);
        }
        bal.iter().all(|&b| b == 0)
    }

    /// `B ≅ A^d` as an explicit group, with `Bₑ` (flows vanishing on `e`)
    /// for every edge.
    pub fn edge_subgroups(&self) -> Result<(FiniteAbelianGroup, Vec<Subgroup>)> {
        let orders: Vec<u32> = (0..self.dimension())
            .flat_map(|_| self.group.cyclic_orders().to_vec())
            .collect();
        let b = FiniteAbelianGroup::new(orders, self.group.element_count_limit().max(self.size))?;
        let masks = self.vanishing_masks();
        let subs = (0..self.graph.edge_count())
            .map(|e| {
                Subgroup::from_bits_unchecked(BitSet::from_indices(
                    self.size,
                    (0..self.size).filter(|&i| masks[i].contains(e)),
                ))
            })
            .collect();
        Ok((b, subs))
    }

    /// Number of nowhere-zero flows.
    pub fn nowhere_zero_count(&self) -> usize {
        self.vanishing_masks().iter().filter(|m| m.is_empty()).count()
    }

    fn vanishing_masks(&self) -> Vec<BitSet> {
        let m = self.graph.edge_count();
        par::map_range(self.size, |i| {
            let vals = self.flow(i);
            BitSet::from_indices(m, (0..m).filter(|&e| vals[e] == 0))
        })
    }
}

/// Spanning forest by breadth-first search from the lowest unvisited
/// vertex, scanning edges in index order.
pub fn flow_space(g: &Graph, a: &FiniteAbelianGroup, limit: usize) -> Result<FlowSpace> {
    let mut incident = vec![Vec::new(); g.vertices];
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut seen = vec![false; g.vertices];
    let mut tree = vec![false; g.edge_count()];
    let mut tree_deg = vec![0usize; g.vertices];
    for root in 0..g.vertices {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &e in &incident[x] {
                let (u, v) = g.edges[e];
                let y = if u == x { v } else { u };
                if !seen[y] {
                    seen[y] = true;
                    tree[e] = true;
                    tree_deg[x] += 1;
                    tree_deg[y] += 1;
                    queue.push_back(y);
                }
            }
        }
    }
    let non_tree: Vec<usize> = (0..g.edge_count()).filter(|&e| !tree[e]).collect();
    let d = non_tree.len();
    debug_assert_eq!(d, g.edge_count() + g.components() - g.vertices);

    let mut size: u128 = 1;
    for _ in 0..d {
        size *= a.order() as u128;
        if size > limit as u128 {
            return Err(Error::LimitExceeded { order: size, limit });
        }
    }

    // peel leaves of the forest
    let mut alive = tree.clone();
    let mut elimination = Vec::new();
    let mut stack: Vec<usize> = (0..g.vertices).rev().filter(|&v| tree_deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if tree_deg[v] != 1 {
            continue;
        }
        let te = *incident[v].iter().find(|&&e| alive[e]).expect("one live tree edge");
        alive[te] = false;
        elimination.push((v, te));
        let (u, w) = g.edges[te];
        let other = if u == v { w } else { u };
        tree_deg[v] = 0;
        tree_deg[other] -= 1;
        if tree_deg[other] == 1 {
            stack.push(other);
        }
    }
    Ok(FlowSpace {
        graph: g.clone(),
        group: a.clone(),
        non_tree,
        elimination,
        incident,
        size: size as usize,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowReport {
    pub group: String,
    pub dimension: usize,
    pub flows_enumerated: usize,
    /// Whether the `Bₑ` cover `B`; equivalently, no nowhere-zero flow.
    pub subgroups_cover: bool,
    /// First nowhere-zero flow in enumeration order, as element indices of
    /// `A` per edge.
    pub flow: Option<Vec<usize>>,
    pub intersection_trivial: bool,
}

/// Nowhere-zero `A`-flow by enumerating `B` and testing coverage by the
/// subgroups `Bₑ`.
pub fn nz_flow_exists(g: &Graph, a: &FiniteAbelianGroup, limit: usize) -> Result<FlowReport> {
    let fs = flow_space(g, a, limit)?;
    let masks = fs.vanishing_masks();
    let mut union = BitSet::new(fs.size);
    let mut inter = BitSet::full(fs.size);
    for e in 0..g.edge_count() {
        let be = BitSet::from_indices(fs.size, (0..fs.size).filter(|&i| masks[i].contains(e)));
        union.union_with(&be);
        inter.intersect_with(&be);
    }
    let first = union.first_unset();
    let intersection_trivial = if g.edge_count() == 0 {
        fs.size == 1
    } else {
        inter.count() == 1 && inter.contains(0)
    };
    Ok(FlowReport {
        group: a.to_string(),
        dimension: fs.dimension(),
        flows_enumerated: fs.size,
        subgroups_cover: first.is_none(),
        flow: first.map(|i| fs.flow(i)),
        intersection_trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: usize = 4096;

    fn grp(s: &str) -> FiniteAbelianGroup {
        FiniteAbelianGroup::parse(s, L).unwrap()
    }

    #[test]
    fn edge_vector_examples() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(edge_vectors(&Graph::complete(2), &f3), vec![vec![1, 2]]);
        for v in edge_vectors(&Graph::complete(3), &f3) {
            let mut nz: Vec<u32> = v.into_iter().filter(|&x| x != 0).collect();
            nz.sort();
            assert_eq!(nz, vec![1, 2]);
        }
        assert!(Graph::new(2, &[(1, 1)]).is_err());
    }

    #[test]
    fn coloring_examples() {
        let tri = Graph::complete(3);
        let k4 = Graph::complete(4);
        assert!(colorable_naive(&tri, 3).is_some());
        assert!(colorable_naive(&k4, 3).is_none());
        assert!(colorable_naive(&Graph::new(3, &[]).unwrap(), 1).is_some());
        let c = colorable_via_cover(&tri, 3, L).unwrap();
        assert_eq!((c.outside, c.space_size), (6, 27));
        assert!(colorable_via_cover(&k4, 3, L).unwrap().witness.is_none());
        assert!(colorable_via_cover(&Graph::new(1, &[]).unwrap(), 1, L).unwrap().witness.is_some());
        assert!(colorable_via_parity(&tri, 3, None, L).unwrap());
        assert!(!colorable_via_parity(&k4, 3, None, L).unwrap());
        assert!(colorable_via_parity(&Graph::new(3, &[]).unwrap(), 3, None, L).unwrap());
        assert!(colorable_via_parity(&tri, 2, None, L).is_err());
    }

    #[test]
    fn flow_dimensions() {
        let a = grp("C3");
        assert_eq!(flow_space(&Graph::complete(4), &a, L).unwrap().dimension(), 3);
        assert_eq!(flow_space(&Graph::petersen(), &grp("C2"), L).unwrap().dimension(), 6);
        let tree = Graph::new(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let fs = flow_space(&tree, &a, L).unwrap();
        assert_eq!(fs.size(), 1);
        assert_eq!(fs.flow(0), vec![0, 0, 0]);
    }

    #[test]
    fn every_enumerated_flow_conserves() {
        for (g, a) in [(Graph::complete(4), "C2*C2"), (Graph::complete(5), "C3"), (Graph::cycle(4), "C5")] {
            let fs = flow_space(&g, &grp(a), L).unwrap();
            let flows: std::collections::HashSet<Vec<usize>> = (0..fs.size()).map(|i| fs.flow(i)).collect();
            assert_eq!(flows.len(), fs.size());
            assert!(flows.iter().all(|f| fs.conserves(f)));
        }
    }

    #[test]
    fn k4_flows() {
        let k4 = Graph::complete(4);
        assert!(nz_flow_exists(&k4, &grp("C3"), L).unwrap().flow.is_none());
        assert!(nz_flow_exists(&k4, &grp("C4"), L).unwrap().flow.is_some());
        let r = nz_flow_exists(&k4, &grp("C2*C2"), L).unwrap();
        assert_eq!(r.flows_enumerated, 64);
        assert!(r.intersection_trivial);
        let f = r.flow.unwrap();
        assert!(f.iter().all(|&x| x != 0));
    }

    #[test]
    fn bridge_blocks_flows() {
        // two triangles joined by the bridge 2-3
        let g = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(nz_flow_exists(&g, &grp("C5"), L).unwrap().flow.is_none());
    }

    #[test]
    fn edge_subgroups_are_subgroups() {
        let fs = flow_space(&Graph::complete(4), &grp("C3"), L).unwrap();
        let (b, subs) = fs.edge_subgroups().unwrap();
        assert_eq!(b.order(), 27);
        for s in subs {
            assert!(Subgroup::from_bits(&b, s.members().clone()).is_ok());
            assert_eq!(s.size(), 9);
        }
    }

    #[test]
    fn orientation_does_not_matter() {
        let g = Graph::complete(4);
        for a in ["C3", "C4", "C2*C2"] {
            let base = nz_flow_exists(&g, &grp(a), L).unwrap().flow.is_some();
            for e in 0..g.edge_count() {
                assert_eq!(nz_flow_exists(&g.flip(e), &grp(a), L).unwrap().flow.is_some(), base);
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        let g = Graph::parse("3 2\n0 1\n2 1\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        assert!(Graph::parse("3 2\n0 1\n").is_err());
        assert!(Graph::parse("2 1\n0 5\n").is_err());
    }
}

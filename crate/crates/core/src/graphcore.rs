//! Integer-indexed undirected graphs stored as sorted adjacency arrays, with
//! an optional sorted label array.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphStruct {
    pub adj: Vec<Vec<usize>>,
}

impl GraphStruct {
    pub fn new(adj: Vec<Vec<usize>>) -> Self {
        GraphStruct { adj }
    }

    /// Builds a graph from an undirected edge list, dropping self-loops and
    /// duplicates.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        GraphStruct { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|l| l.binary_search(&v).is_ok())
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Checks range, sortedness, loop-freeness and symmetry.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let n = self.adj.len();
        for (u, list) in self.adj.iter().enumerate() {
            for (k, &v) in list.iter().enumerate() {
                if v >= n {
                    return Err(format!("vertex {u}: neighbor {v} out of range"));
                }
                if v == u {
                    return Err(format!("vertex {u}: self-loop"));
                }
                if k > 0 && list[k - 1] >= v {
                    return Err(format!("vertex {u}: adjacency not strictly increasing"));
                }
            }
        }
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if !self.has_edge(v, u) {
                    return Err(format!("edge {u}-{v} not symmetric"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph<L> {
    pub structure: GraphStruct,
    pub labels: Vec<L>,
}

impl<L: Ord> LabeledGraph<L> {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }
}

/// Full structural check of a labeled graph: adjacency invariants plus
/// strictly increasing labels. The error names the first violation.
pub fn validate_graph<L: Ord>(g: &LabeledGraph<L>) -> std::result::Result<(), String> {
    if g.labels.len() != g.structure.vertex_count() {
        return Err(format!(
            "{} labels for {} vertices",
            g.labels.len(),
            g.structure.vertex_count()
        ));
    }
    g.structure.validate()?;
    if let Some(k) = g.labels.windows(2).position(|w| w[0] >= w[1]) {
        return Err(format!("labels {k} and {} not strictly increasing", k + 1));
    }
    Ok(())
}

/// Distance array from `source`; `usize::MAX` marks unreachable vertices.
pub fn bfs_distances(g: &GraphStruct, source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &v in &g.adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Largest shortest-path distance from `v`. Fails if some vertex is not
/// reachable.
pub fn bfs_eccentricity(g: &GraphStruct, v: usize) -> Result<usize> {
    if v >= g.vertex_count() {
        return Err(Error::Invalid(format!("vertex {v} out of range")));
    }
    let dist = bfs_distances(g, v);
    if dist.contains(&usize::MAX) {
        return Err(Error::Disconnected);
    }
    Ok(dist.into_iter().max().unwrap_or(0))
}

/// Eccentricity of every vertex, computed in parallel.
pub fn eccentricities(g: &GraphStruct) -> Result<Vec<usize>> {
    (0..g.vertex_count())
        .into_par_iter()
        .map(|v| bfs_eccentricity(g, v))
        .collect()
}

pub fn diameter(g: &GraphStruct) -> Result<usize> {
    if g.vertex_count() == 0 {
        return Err(Error::Disconnected);
    }
    Ok(eccentricities(g)?.into_iter().max().unwrap_or(0))
}

pub fn is_regular(g: &GraphStruct, k: usize) -> bool {
    g.adj.iter().all(|l| l.len() == k)
}

/// The empty graph counts as disconnected.
pub fn is_connected(g: &GraphStruct) -> bool {
    g.vertex_count() > 0 && !bfs_distances(g, 0).contains(&usize::MAX)
}

/// Image of `g` under `f`: vertices `f(V)`, edges `{f(u), f(v)}` for every
/// edge `{u, v}` with `f(u) ≠ f(v)`. Labels come out sorted and deduplicated.
pub fn graph_image<L, M, F>(g: &LabeledGraph<L>, f: F) -> LabeledGraph<M>
where
    M: Ord + Clone,
    F: Fn(&L) -> M,
{
    let images: Vec<M> = g.labels.iter().map(&f).collect();
    let mut labels = images.clone();
    labels.sort();
    labels.dedup();
    let index: Vec<usize> = images
        .iter()
        .map(|m| labels.binary_search(m).expect("image label present"))
        .collect();
    let edges: Vec<(usize, usize)> = g
        .structure
        .edges()
        .into_iter()
        .map(|(u, v)| (index[u], index[v]))
        .collect();
    LabeledGraph {
        structure: GraphStruct::from_edges(labels.len(), &edges),
        labels,
    }
}

/// Executable form of the subgraph lemma: `g` nonempty, `g ⊆ h` (matched by
/// label), `h` connected and `N_g(v) = N_h(v)` for every vertex of `g`.
/// Whenever this returns true, `g` and `h` coincide.
pub fn check_sub_gisof<L: Ord>(g: &LabeledGraph<L>, h: &LabeledGraph<L>) -> bool {
    if g.vertex_count() == 0 || !is_connected(&h.structure) {
        return false;
    }
    let mut to_h = Vec::with_capacity(g.vertex_count());
    for label in &g.labels {
        match h.index_of(label) {
            Some(i) => to_h.push(i),
            None => return false,
        }
    }
    for (u, hu) in to_h.iter().enumerate() {
        let mut mapped: Vec<usize> = g.structure.neighbors(u).iter().map(|&v| to_h[v]).collect();
        mapped.sort_unstable();
        if mapped != h.structure.neighbors(*hu) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path3() -> GraphStruct {
        GraphStruct::from_edges(3, &[(0, 1), (1, 2)])
    }

    fn complete(n: usize) -> GraphStruct {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        GraphStruct::from_edges(n, &edges)
    }

    fn hypercube(n: usize) -> GraphStruct {
        let edges: Vec<_> = (0..1usize << n)
            .flat_map(|u| (0..n).map(move |b| (u, u ^ (1 << b))))
            .collect();
        GraphStruct::from_edges(1 << n, &edges)
    }

    fn labeled(g: GraphStruct) -> LabeledGraph<usize> {
        let labels = (0..g.vertex_count()).collect();
        LabeledGraph { structure: g, labels }
    }

    /// Floyd–Warshall all-pairs distances.
    fn apsp(g: &GraphStruct) -> Vec<Vec<usize>> {
        let n = g.vertex_count();
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for (u, row) in d.iter_mut().enumerate() {
            row[u] = 0;
            for &v in g.neighbors(u) {
                row[v] = 1;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        d
    }

    #[test]
    fn validate_examples() {
        assert!(validate_graph(&labeled(GraphStruct::new(vec![vec![]]))).is_ok());
        let asym = LabeledGraph { structure: GraphStruct::new(vec![vec![1], vec![]]), labels: vec![0, 1] };
        assert!(validate_graph(&asym).unwrap_err().contains("symmetric"));
        let dup = LabeledGraph { structure: GraphStruct::new(vec![vec![], vec![]]), labels: vec![3, 3] };
        assert!(validate_graph(&dup).is_err());
        let loopy = labeled(GraphStruct::new(vec![vec![0]]));
        assert!(validate_graph(&loopy).is_err());
        let unsorted = labeled(GraphStruct::new(vec![vec![2, 1], vec![0], vec![0]]));
        assert!(validate_graph(&unsorted).is_err());
        let range = labeled(GraphStruct::new(vec![vec![5]]));
        assert!(validate_graph(&range).is_err());
    }

    #[test]
    fn eccentricity_examples() {
        assert_eq!(bfs_eccentricity(&GraphStruct::new(vec![vec![]]), 0).unwrap(), 0);
        assert_eq!(bfs_eccentricity(&path3(), 0).unwrap(), 2);
        let cube = hypercube(3);
        let d = apsp(&cube);
        for (v, row) in d.iter().enumerate() {
            let oracle = *row.iter().max().unwrap();
            assert_eq!(oracle, 3);
            assert_eq!(bfs_eccentricity(&cube, v).unwrap(), oracle);
        }
        let two = GraphStruct::new(vec![vec![], vec![]]);
        assert_eq!(bfs_eccentricity(&two, 0), Err(Error::Disconnected));
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&complete(4)).unwrap(), 1);
        assert_eq!(diameter(&hypercube(3)).unwrap(), 3);
        assert!(diameter(&GraphStruct::default()).is_err());
    }

    #[test]
    fn regularity_and_connectivity() {
        assert!(is_regular(&complete(4), 3));
        assert!(!is_regular(&path3(), 2));
        assert!(is_regular(&hypercube(4), 4));
        assert!(!is_connected(&GraphStruct::default()));
        assert!(!is_connected(&GraphStruct::new(vec![vec![], vec![]])));
        assert!(is_connected(&path3()));
    }

    #[test]
    fn image_examples() {
        let g = labeled(hypercube(3));
        let same = graph_image(&g, |&l| l);
        assert_eq!(same, g);
        let point = graph_image(&g, |_| 0u8);
        assert_eq!(point.vertex_count(), 1);
        assert_eq!(point.structure.edge_count(), 0);
        // collapsing the last coordinate of the 3-cube gives the square
        let square = graph_image(&g, |&l| l & 3);
        assert_eq!(square.labels, vec![0, 1, 2, 3]);
        assert_eq!(square.structure, hypercube(2));
    }

    #[test]
    fn sub_gisof_examples() {
        let k4 = labeled(complete(4));
        assert!(check_sub_gisof(&k4, &k4));
        let single = LabeledGraph { structure: GraphStruct::new(vec![vec![]]), labels: vec![0] };
        assert!(!check_sub_gisof(&single, &k4));
        let empty: LabeledGraph<usize> = LabeledGraph { structure: GraphStruct::default(), labels: vec![] };
        assert!(!check_sub_gisof(&empty, &k4));
    }

    fn connected_graph() -> impl Strategy<Value = GraphStruct> {
        (2usize..12).prop_flat_map(|n| {
            let tree = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
            let extra = proptest::collection::vec((0..n, 0..n), 0..2 * n);
            (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
                let mut edges: Vec<(usize, usize)> =
                    tree.iter().enumerate().map(|(i, ix)| (i + 1, ix.index(i + 1))).collect();
                edges.extend(extra);
                GraphStruct::from_edges(n, &edges)
            })
        })
    }

    proptest! {
        #[test]
        fn eccentricity_bounds(g in connected_graph()) {
            let d = apsp(&g);
            let oracle = d.iter().map(|r| *r.iter().max().unwrap()).max().unwrap();
            let diam = diameter(&g).unwrap();
            prop_assert_eq!(diam, oracle);
            for v in 0..g.vertex_count() {
                let e = bfs_eccentricity(&g, v).unwrap();
                prop_assert!(e <= diam && diam <= 2 * e);
            }
        }

        #[test]
        fn image_preserves_connectivity(g in connected_graph(), k in 1usize..5) {
            let lg = labeled(g);
            let img = graph_image(&lg, |&l| l % k);
            prop_assert!(img.vertex_count() <= lg.vertex_count());
            prop_assert!(is_connected(&img.structure));
            prop_assert!(validate_graph(&img).is_ok());
        }

        #[test]
        fn bfs_closure_recovers_whole_graph(g in connected_graph(), seed in any::<prop::sample::Index>()) {
            let h = labeled(g);
            let s = seed.index(h.vertex_count());
            // closure of the seed under full neighborhoods
            let mut keep = vec![false; h.vertex_count()];
            let mut stack = vec![s];
            keep[s] = true;
            while let Some(u) = stack.pop() {
                for &v in h.structure.neighbors(u) {
                    if !keep[v] {
                        keep[v] = true;
                        stack.push(v);
                    }
                }
            }
            let ids: Vec<usize> = (0..h.vertex_count()).filter(|&v| keep[v]).collect();
            let adj = ids.iter().map(|&u| {
                h.structure.neighbors(u).iter().map(|v| ids.binary_search(v).unwrap()).collect()
            }).collect();
            let sub = LabeledGraph { structure: GraphStruct::new(adj), labels: ids.clone() };
            prop_assert!(check_sub_gisof(&sub, &h));
            prop_assert_eq!(sub, h);
        }

        #[test]
        fn sub_gisof_true_implies_equal(g in connected_graph(), drop in any::<prop::sample::Index>()) {
            let h = labeled(g);
            // remove one vertex: the remainder can only pass if it equals h, which it cannot
            let d = drop.index(h.vertex_count());
            let ids: Vec<usize> = (0..h.vertex_count()).filter(|&v| v != d).collect();
            let adj = ids.iter().map(|&u| {
                h.structure.neighbors(u).iter().filter_map(|v| ids.binary_search(v).ok()).collect()
            }).collect();
            let sub = LabeledGraph { structure: GraphStruct::new(adj), labels: ids };
            prop_assert!(!check_sub_gisof(&sub, &h));
        }
    }
}

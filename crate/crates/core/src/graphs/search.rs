use std::collections::VecDeque;

use rayon::prelude::*;

pub const UNREACHED: u32 = u32::MAX;

/// Undirected simple graph on `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<u32>>,
}

/// Distances and shortest-path counts from one source.
#[derive(Debug, Clone)]
pub struct Bfs {
    pub dist: Vec<u32>,
    /// Number of geodesics from the source, saturating.
    pub count: Vec<u64>,
}

impl SimpleGraph {
    pub fn new(adj: Vec<Vec<u32>>) -> Self {
        Self { adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Every edge is listed from both ends and no vertex is its own neighbour.
    pub fn is_symmetric(&self) -> bool {
        self.adj.iter().enumerate().all(|(u, nb)| {
            nb.iter()
                .all(|&v| v as usize != u && self.has_edge(v, u as u32))
        })
    }

    pub fn bfs(&self, src: u32) -> Bfs {
        let n = self.adj.len();
        let mut dist = vec![UNREACHED; n];
        let mut count = vec![0u64; n];
        let mut queue = VecDeque::new();
        dist[src as usize] = 0;
        count[src as usize] = 1;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &v in &self.adj[u as usize] {
                let dv = &mut dist[v as usize];
                if *dv == UNREACHED {
                    *dv = du + 1;
                    queue.push_back(v);
                }
                if *dv == du + 1 {
                    count[v as usize] = count[v as usize].saturating_add(count[u as usize]);
                }
            }
        }
        Bfs { dist, count }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s as u32];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                for &v in &self.adj[u as usize] {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        comp.push(v);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Largest finite distance from `src`.
    pub fn eccentricity(&self, src: u32) -> u32 {
        self.bfs(src)
            .dist
            .into_iter()
            .filter(|&d| d != UNREACHED)
            .max()
            .unwrap_or(0)
    }

    /// Exact diameter of the component formed by `vertices`, one BFS per vertex.
    ///
    /// The BFS buffers are sized to the component, so many small components stay cheap.
    pub fn component_diameter(&self, vertices: &[u32]) -> u32 {
        match vertices.len() {
            0 | 1 => return 0,
            2 => return u32::from(self.has_edge(vertices[0], vertices[1])),
            _ => {}
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        let local = |v: u32| {
            sorted
                .binary_search(&v)
                .expect("neighbour outside component")
        };
        let adj: Vec<Vec<u32>> = sorted
            .iter()
            .map(|&u| {
                self.adj[u as usize]
                    .iter()
                    .map(|&v| local(v) as u32)
                    .collect()
            })
            .collect();
        let k = adj.len();
        (0..k)
            .into_par_iter()
            .map_init(
                || (vec![UNREACHED; k], VecDeque::new()),
                |(dist, queue), s| {
                    dist.fill(UNREACHED);
                    dist[s] = 0;
                    queue.push_back(s as u32);
                    let mut far = 0;
                    while let Some(u) = queue.pop_front() {
                        let du = dist[u as usize];
                        far = du;
                        for &v in &adj[u as usize] {
                            if dist[v as usize] == UNREACHED {
                                dist[v as usize] = du + 1;
                                queue.push_back(v);
                            }
                        }
                    }
                    far
                },
            )
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> SimpleGraph {
        SimpleGraph::new(
            (0..n)
                .map(|i| {
                    let mut v = Vec::new();
                    if i > 0 {
                        v.push(i - 1);
                    }
                    if i + 1 < n {
                        v.push(i + 1);
                    }
                    v
                })
                .collect(),
        )
    }

    #[test]
    fn path_graph() {
        let g = path(5);
        assert!(g.is_symmetric());
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.component_diameter(&[0, 1, 2, 3, 4]), 4);
        assert_eq!(g.bfs(0).count, vec![1; 5]);
    }

    #[test]
    fn four_cycle_has_two_geodesics_across() {
        let g = SimpleGraph::new(vec![vec![1, 3], vec![0, 2], vec![1, 3], vec![0, 2]]);
        let b = g.bfs(0);
        assert_eq!(b.dist, vec![0, 1, 2, 1]);
        assert_eq!(b.count[2], 2);
    }

    #[test]
    fn components_and_unreachable() {
        let g = SimpleGraph::new(vec![vec![1], vec![0], vec![]]);
        assert_eq!(g.components(), vec![vec![0, 1], vec![2]]);
        assert_eq!(g.bfs(0).dist[2], UNREACHED);
        assert_eq!(g.eccentricity(2), 0);
    }
}

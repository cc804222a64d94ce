//! Exact maximum clique by branch and bound with a greedy coloring bound.

/// Undirected graph as a dense adjacency matrix.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![vec![false; n]; n] }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i != j {
            self.adj[i][j] = true;
            self.adj[j][i] = true;
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    /// A clique of maximum size, as sorted vertex indices. Among maxima the
    /// first one found in the fixed search order is returned.
    pub fn max_clique(&self) -> Vec<usize> {
        let mut best = Vec::new();
        let mut current = Vec::new();
        let all: Vec<usize> = (0..self.len()).collect();
        self.expand(&mut current, all, &mut best);
        best.sort_unstable();
        best
    }

    /// Greedy clique over `vertices`, taken in the given order.
    pub fn greedy_clique(&self, vertices: &[usize]) -> Vec<usize> {
        let mut clique: Vec<usize> = Vec::new();
        for &v in vertices {
            if clique.iter().all(|&u| self.adj[u][v]) {
                clique.push(v);
            }
        }
        clique
    }

    /// Orders `cands` by greedy color class and returns the color bound of
    /// each prefix.
    fn color_sort(&self, cands: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in cands {
            match classes.iter_mut().find(|c| c.iter().all(|&u| !self.adj[u][v])) {
                Some(c) => c.push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut order = Vec::with_capacity(cands.len());
        let mut bounds = Vec::with_capacity(cands.len());
        for (k, c) in classes.into_iter().enumerate() {
            for v in c {
                order.push(v);
                bounds.push(k + 1);
            }
        }
        (order, bounds)
    }

    fn expand(&self, current: &mut Vec<usize>, cands: Vec<usize>, best: &mut Vec<usize>) {
        let (mut order, mut bounds) = self.color_sort(&cands);
        while let Some(v) = order.pop() {
            let bound = bounds.pop().unwrap();
            if current.len() + bound <= best.len() {
                return;
            }
            current.push(v);
            let next: Vec<usize> = order.iter().copied().filter(|&u| self.adj[v][u]).collect();
            if next.is_empty() {
                if current.len() > best.len() {
                    *best = current.clone();
                }
            } else {
                self.expand(current, next, best);
            }
            current.pop();
        }
    }
}

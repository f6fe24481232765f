//! Iterative SCC computation over implicit graphs with a fixed out-degree.
//!
//! This is Pearce's space-efficient variant of Tarjan's algorithm: a single
//! `u32` per node holds the DFS index while the node is active and its
//! component number once finished, and root flags live on the DFS stack.
//! The product square of a few-thousand-state automaton stays within a
//! few tens of megabytes.

use alloc::vec;
use alloc::vec::Vec;

/// Component ids per node. Ids are assigned in the order components are
/// completed, so every edge goes from a higher id to a lower or equal id.
#[derive(Clone, Debug)]
pub struct Sccs {
    pub component: Vec<u32>,
    pub sizes: Vec<u32>,
    /// Bit `v` is set when `v`'s component has more than one node.
    multi: Vec<u64>,
}

impl Sccs {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Is `v` in a component with at least two nodes?
    pub fn in_multi(&self, v: usize) -> bool {
        self.multi[v / 64] >> (v % 64) & 1 == 1
    }
}

/// Strongly connected components of the graph on `0..node_count` whose
/// node `v` has the `degree` successors `successor(v, 0..degree)`.
pub fn tarjan(node_count: usize, degree: usize, successor: impl Fn(usize, usize) -> usize) -> Sccs {
    assert!(node_count < u32::MAX as usize, "graph too large for u32 ids");
    if node_count == 0 {
        return Sccs {
            component: Vec::new(),
            sizes: Vec::new(),
            multi: Vec::new(),
        };
    }
    // 0: unvisited; below `next_component`: active DFS index; otherwise the
    // finished component, numbered downward from node_count - 1
    let mut rindex = vec![0u32; node_count];
    let mut index = 1u32;
    let mut next_component = (node_count - 1) as u32;
    let mut stack: Vec<u32> = Vec::new();
    // (node, next edge, still a root candidate)
    let mut frames: Vec<(u32, u32, bool)> = Vec::new();
    let mut sizes: Vec<u32> = Vec::new();
    let mut multi = vec![0u64; node_count.div_ceil(64)];

    for r in 0..node_count {
        if rindex[r] != 0 {
            continue;
        }
        rindex[r] = index;
        index += 1;
        frames.push((r as u32, 0, true));
        while let Some(frame) = frames.last_mut() {
            let v = frame.0 as usize;
            if (frame.1 as usize) < degree {
                let w = successor(v, frame.1 as usize);
                frame.1 += 1;
                if rindex[w] == 0 {
                    rindex[w] = index;
                    index += 1;
                    frames.push((w as u32, 0, true));
                } else if rindex[w] < rindex[v] {
                    rindex[v] = rindex[w];
                    frame.2 = false;
                }
                continue;
            }
            let root = frame.2;
            frames.pop();
            if root {
                index -= 1;
                let mut size = 1;
                while let Some(&w) = stack.last() {
                    if rindex[v] > rindex[w as usize] {
                        break;
                    }
                    stack.pop();
                    rindex[w as usize] = next_component;
                    multi[w as usize / 64] |= 1 << (w % 64);
                    index -= 1;
                    size += 1;
                }
                if size > 1 {
                    multi[v / 64] |= 1 << (v % 64);
                }
                rindex[v] = next_component;
                next_component = next_component.wrapping_sub(1);
                sizes.push(size);
            } else {
                stack.push(v as u32);
            }
            if let Some(parent) = frames.last_mut() {
                let p = parent.0 as usize;
                if rindex[v] < rindex[p] {
                    rindex[p] = rindex[v];
                    parent.2 = false;
                }
            }
        }
    }
    let last = (node_count - 1) as u32;
    for c in rindex.iter_mut() {
        *c = last - *c;
    }
    Sccs {
        component: rindex,
        sizes,
        multi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_lists(adj: &[Vec<usize>]) -> Sccs {
        // pad to a common degree by repeating the last successor (or a self loop)
        let d = adj.iter().map(Vec::len).max().unwrap_or(0);
        tarjan(adj.len(), d, |v, i| *adj[v].get(i).or(adj[v].last()).unwrap_or(&v))
    }

    #[test]
    fn cycle_and_tail() {
        // 0 -> 1 -> 2 -> 1, 3 -> 0
        let s = from_lists(&[vec![1], vec![2], vec![1], vec![0]]);
        assert_eq!(s.count(), 3);
        assert_eq!(s.component[1], s.component[2]);
        assert_ne!(s.component[0], s.component[1]);
        assert!(s.component[3] > s.component[0] && s.component[0] > s.component[1]);
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let n = 200_000;
        let s = tarjan(n, 1, |v, _| (v + 1).min(n - 1));
        assert_eq!(s.count(), n);
        let s = tarjan(n, 1, |v, _| (v + 1) % n);
        assert_eq!(s.count(), 1);
        assert_eq!(s.sizes[0] as usize, n);
    }

    #[test]
    fn matches_reachability_oracle() {
        // mutual reachability by transitive closure on small pseudo-random graphs
        let mut seed = 12345u64;
        for _ in 0..200 {
            let n = 1 + (seed % 9) as usize;
            let mut adj = vec![vec![0usize; 2]; n];
            for row in adj.iter_mut() {
                for slot in row.iter_mut() {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    *slot = (seed >> 33) as usize % n;
                }
            }
            let s = from_lists(&adj);
            let mut reach = vec![vec![false; n]; n];
            for v in 0..n {
                reach[v][v] = true;
                for &w in &adj[v] {
                    reach[v][w] = true;
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if reach[i][k] && reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(s.component[i] == s.component[j], reach[i][j] && reach[j][i]);
                    if reach[i][j] {
                        assert!(s.component[i] >= s.component[j]);
                    }
                }
            }
            let total: u32 = s.sizes.iter().sum();
            assert_eq!(total as usize, n);
            for (c, &size) in s.sizes.iter().enumerate() {
                assert_eq!(s.component.iter().filter(|&&x| x as usize == c).count(), size as usize);
            }
            for v in 0..n {
                assert_eq!(s.in_multi(v), s.sizes[s.component[v] as usize] > 1);
            }
        }
    }
}

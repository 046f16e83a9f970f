use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use super::{canonical_form, decode_canonical, Degree, Edge, FixedGraph, GraphError, GraphWithSymmetry};
use crate::gkm::{curve_between, fixed_points, Factor, FixedPoint, Target};

/// Unlabeled trees on `v` vertices, one per isomorphism class, each given as
/// a parent array in breadth-first order (`parent[i] < i` for `i > 0`).
pub fn free_trees(v: usize) -> Vec<Vec<usize>> {
    if v <= 2 {
        return vec![(0..v).map(|i| i.saturating_sub(1)).collect()];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut seq = vec![0usize; v - 2];
    loop {
        let adj = prufer_decode(&seq, v);
        let key = (0..v).map(|r| plain_code(&adj, r, usize::MAX)).min().unwrap();
        if seen.insert(key) {
            out.push(bfs_parents(&adj));
        }
        let mut i = 0;
        while i < seq.len() {
            seq[i] += 1;
            if seq[i] < v {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            break;
        }
    }
    out
}

fn prufer_decode(seq: &[usize], v: usize) -> Vec<Vec<usize>> {
    let mut deg = vec![1usize; v];
    for &x in seq {
        deg[x] += 1;
    }
    let mut adj = vec![Vec::new(); v];
    for &x in seq {
        let leaf = (0..v).find(|&i| deg[i] == 1).unwrap();
        adj[leaf].push(x);
        adj[x].push(leaf);
        deg[leaf] -= 1;
        deg[x] -= 1;
    }
    let rest: Vec<usize> = (0..v).filter(|&i| deg[i] == 1).collect();
    adj[rest[0]].push(rest[1]);
    adj[rest[1]].push(rest[0]);
    adj
}

fn plain_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| plain_code(adj, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn bfs_parents(adj: &[Vec<usize>]) -> Vec<usize> {
    let mut order = vec![0usize];
    let mut parent_of = vec![usize::MAX; adj.len()];
    parent_of[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in &adj[v] {
            if parent_of[w] == usize::MAX {
                parent_of[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut pos = vec![0; adj.len()];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    order.iter().map(|&v| pos[parent_of[v]]).collect()
}

/// Compositions of `total` into `parts` positive integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if (total as usize) < parts {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 1..=total - (parts as u32 - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

struct Job<'a> {
    target: Target,
    n: u32,
    degree: Degree,
    m: usize,
    parents: &'a [usize],
    points: &'a [FixedPoint],
    neighbors: &'a [Vec<usize>],
}

impl Job<'_> {
    fn run(&self, root: usize, found: &mut HashSet<Vec<u8>>) {
        let mut labels = vec![root];
        self.extend(&mut labels, found);
    }

    fn extend(&self, labels: &mut Vec<usize>, found: &mut HashSet<Vec<u8>>) {
        let i = labels.len();
        if i == self.parents.len() {
            self.with_degrees(labels, found);
            return;
        }
        for &q in &self.neighbors[labels[self.parents[i]]] {
            labels.push(q);
            self.extend(labels, found);
            labels.pop();
        }
    }

    fn with_degrees(&self, labels: &[usize], found: &mut HashSet<Vec<u8>>) {
        let pts: Vec<FixedPoint> = labels.iter().map(|&x| self.points[x]).collect();
        let e = pts.len() - 1;
        let factors: Vec<Factor> = (1..pts.len())
            .map(|i| curve_between(&pts[self.parents[i]], &pts[i]).unwrap())
            .collect();
        let assignments: Vec<Vec<u32>> = match self.degree {
            Degree::Total(d) => compositions(d, e),
            Degree::Bi(d1, d2) => {
                let first: Vec<usize> = (0..e).filter(|&k| factors[k] == Factor::First).collect();
                let second: Vec<usize> = (0..e).filter(|&k| factors[k] == Factor::Second).collect();
                let mut out = Vec::new();
                for a in compositions(d1, first.len()) {
                    for b in compositions(d2, second.len()) {
                        let mut degs = vec![0; e];
                        for (k, &x) in first.iter().zip(&a) {
                            degs[*k] = x;
                        }
                        for (k, &x) in second.iter().zip(&b) {
                            degs[*k] = x;
                        }
                        out.push(degs);
                    }
                }
                out
            }
        };
        let v = pts.len();
        for degs in assignments {
            let edges: Vec<Edge> = (1..v)
                .map(|i| Edge {
                    u: self.parents[i],
                    v: i,
                    degree: degs[i - 1],
                })
                .collect();
            let mut marks = vec![0usize; self.m];
            loop {
                let g = FixedGraph::new_unchecked(self.target, self.n, pts.clone(), edges.clone(), marks.clone());
                found.insert(canonical_form(&g));
                let mut k = 0;
                while k < self.m {
                    marks[k] += 1;
                    if marks[k] < v {
                        break;
                    }
                    marks[k] = 0;
                    k += 1;
                }
                if k == self.m {
                    break;
                }
            }
        }
    }
}

/// One representative per isomorphism class of fixed-locus graphs for
/// `M̄_{0,m}(target, degree)`, sorted by canonical form.
pub fn enumerate_graphs(
    target: Target,
    n: u32,
    degree: Degree,
    m: usize,
) -> Result<Vec<GraphWithSymmetry>, GraphError> {
    degree.check_target(target)?;
    let points = fixed_points(target, n)?;
    let total = degree.total();
    if total == 0 {
        if m < 3 {
            return Ok(Vec::new());
        }
        return Ok(points
            .iter()
            .map(|&p| {
                let g = FixedGraph::new_unchecked(target, n, vec![p], vec![], vec![0; m]);
                GraphWithSymmetry::new(decode_canonical(&canonical_form(&g)).unwrap())
            })
            .collect());
    }
    let neighbors: Vec<Vec<usize>> = points
        .iter()
        .map(|p| {
            (0..points.len())
                .filter(|&q| curve_between(p, &points[q]).is_some())
                .collect()
        })
        .collect();
    let shapes: Vec<Vec<usize>> = (2..=total as usize + 1).flat_map(free_trees).collect();
    let tasks: Vec<(usize, usize)> = (0..shapes.len())
        .flat_map(|s| (0..points.len()).map(move |r| (s, r)))
        .collect();
    let found: HashSet<Vec<u8>> = tasks
        .par_iter()
        .fold(HashSet::new, |mut acc, &(s, root)| {
            let job = Job {
                target,
                n,
                degree,
                m,
                parents: &shapes[s],
                points: &points,
                neighbors: &neighbors,
            };
            job.run(root, &mut acc);
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let sorted: BTreeSet<Vec<u8>> = found.into_iter().collect();
    Ok(sorted
        .par_iter()
        .map(|bytes| GraphWithSymmetry::new(decode_canonical(bytes).expect("own canonical form")))
        .collect())
}

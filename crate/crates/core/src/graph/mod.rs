//! Decorated trees indexing the torus-fixed loci of genus-zero stable maps.

mod cache;
mod canonical;
mod enumerate;

use std::fmt;

use thiserror::Error;

use crate::gkm::{curve_between, Factor, FixedPoint, Target};

pub use cache::{
    decode_cache, encode_cache, enumerate_cached, CacheError, CacheKey, CacheStatus, GraphCache, ALGORITHM_VERSION,
};
pub use canonical::{automorphism_order, canonical_form, decode_canonical, MAX_VERTICES};
pub use enumerate::{enumerate_graphs, free_trees};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("malformed canonical bytes: {0}")]
    Decode(String),
    #[error(transparent)]
    Target(#[from] crate::gkm::GkmError),
}

/// Curve class: a total degree for P^{n-1} and Gr(2,n), a bidegree for
/// (P^{n-1})^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    Total(u32),
    Bi(u32, u32),
}

impl Degree {
    pub fn total(&self) -> u32 {
        match *self {
            Degree::Total(d) => d,
            Degree::Bi(a, b) => a + b,
        }
    }

    /// The bidegree with the two factors swapped.
    pub fn transpose(&self) -> Self {
        match *self {
            Degree::Bi(a, b) => Degree::Bi(b, a),
            d => d,
        }
    }

    pub fn check_target(&self, target: Target) -> Result<(), GraphError> {
        match (target, self) {
            (Target::ProductPP, Degree::Bi(..)) => Ok(()),
            (Target::ProductPP, Degree::Total(_)) => {
                Err(GraphError::InvalidDegree("(P^(n-1))^2 needs a bidegree".into()))
            }
            (_, Degree::Total(_)) => Ok(()),
            (_, Degree::Bi(..)) => Err(GraphError::InvalidDegree(format!("{target} takes a single degree"))),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Total(d) => write!(f, "{d}"),
            Degree::Bi(a, b) => write!(f, "({a},{b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub degree: u32,
}

impl Edge {
    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A fixed-locus tree: labeled vertices, edges with covering degrees and
/// marked points `0..m` placed on vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedGraph {
    target: Target,
    n: u32,
    labels: Vec<FixedPoint>,
    edges: Vec<Edge>,
    marks: Vec<usize>,
}

impl FixedGraph {
    pub fn new(
        target: Target,
        n: u32,
        labels: Vec<FixedPoint>,
        edges: Vec<Edge>,
        marks: Vec<usize>,
    ) -> Result<Self, GraphError> {
        let g = FixedGraph {
            target,
            n,
            labels,
            edges,
            marks,
        };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn new_unchecked(
        target: Target,
        n: u32,
        labels: Vec<FixedPoint>,
        edges: Vec<Edge>,
        marks: Vec<usize>,
    ) -> Self {
        FixedGraph {
            target,
            n,
            labels,
            edges,
            marks,
        }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |msg: String| Err(GraphError::Invalid(msg));
        self.target.check_n(self.n)?;
        let v = self.labels.len();
        if v == 0 {
            return bad("no vertices".into());
        }
        if self.edges.len() + 1 != v {
            return bad(format!("{} vertices but {} edges", v, self.edges.len()));
        }
        for p in &self.labels {
            if p.target() != self.target || p.max_index() >= self.n {
                return bad(format!("label {p} invalid for {} with n = {}", self.target, self.n));
            }
            if let FixedPoint::Gr(i, j) = p {
                if i >= j {
                    return bad(format!("label {p} not normalized"));
                }
            }
        }
        let mut uf: Vec<usize> = (0..v).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for e in &self.edges {
            if e.u >= v || e.v >= v {
                return bad("edge endpoint out of range".into());
            }
            if e.degree == 0 {
                return bad("edge of degree 0".into());
            }
            if curve_between(&self.labels[e.u], &self.labels[e.v]).is_none() {
                return bad(format!(
                    "no invariant curve joins {} and {}",
                    self.labels[e.u], self.labels[e.v]
                ));
            }
            let (a, b) = (find(&mut uf, e.u), find(&mut uf, e.v));
            if a == b {
                return bad("graph has a cycle".into());
            }
            uf[a] = b;
        }
        if self.marks.iter().any(|&x| x >= v) {
            return bad("marking on a missing vertex".into());
        }
        Ok(())
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[FixedPoint] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> FixedPoint {
        self.labels[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `marks()[i]` is the vertex carrying marked point `i`.
    pub fn marks(&self) -> &[usize] {
        &self.marks
    }

    pub fn marking_count(&self) -> usize {
        self.marks.len()
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.labels.len()];
        for e in &self.edges {
            val[e.u] += 1;
            val[e.v] += 1;
        }
        val
    }

    pub fn marks_per_vertex(&self) -> Vec<usize> {
        let mut out = vec![0; self.labels.len()];
        for &v in &self.marks {
            out[v] += 1;
        }
        out
    }

    /// Edge indices at each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.labels.len()];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.u].push(i);
            out[e.v].push(i);
        }
        out
    }

    pub fn edge_factor(&self, e: &Edge) -> Factor {
        curve_between(&self.labels[e.u], &self.labels[e.v]).expect("validated edge")
    }

    pub fn degree(&self) -> Degree {
        match self.target {
            Target::ProductPP => {
                let (mut a, mut b) = (0, 0);
                for e in &self.edges {
                    match self.edge_factor(e) {
                        Factor::First => a += e.degree,
                        Factor::Second => b += e.degree,
                    }
                }
                Degree::Bi(a, b)
            }
            _ => Degree::Total(self.edges.iter().map(|e| e.degree).sum()),
        }
    }

    pub fn edge_degree_product(&self) -> u64 {
        self.edges.iter().map(|e| e.degree as u64).product()
    }

    /// Same tree with the listed vertices relabeled by `f`.
    pub fn relabel(&self, vertices: &[usize], f: impl Fn(FixedPoint) -> FixedPoint) -> Result<Self, GraphError> {
        let mut labels = self.labels.clone();
        for &v in vertices {
            labels[v] = f(labels[v]);
        }
        FixedGraph::new(self.target, self.n, labels, self.edges.clone(), self.marks.clone())
    }

    /// Same tree with edge `i` given a new degree.
    pub fn with_edge_degree(&self, i: usize, degree: u32) -> Result<Self, GraphError> {
        let mut edges = self.edges.clone();
        edges[i].degree = degree;
        FixedGraph::new(self.target, self.n, self.labels.clone(), edges, self.marks.clone())
    }
}

impl fmt::Display for FixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.target)?;
        for (i, p) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
            let here: Vec<String> = self
                .marks
                .iter()
                .enumerate()
                .filter(|&(_, &v)| v == i)
                .map(|(k, _)| k.to_string())
                .collect();
            if !here.is_empty() {
                write!(f, "{{{}}}", here.join(","))?;
            }
        }
        f.write_str(";")?;
        for e in &self.edges {
            write!(f, " {}-{}:{}", e.u, e.v, e.degree)?;
        }
        f.write_str("]")
    }
}

/// A graph together with `|Aut Γ|` and `a_Γ = |Aut Γ| · ∏ d_e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphWithSymmetry {
    pub graph: FixedGraph,
    pub aut_order: u64,
    pub divisor: u64,
}

impl GraphWithSymmetry {
    pub fn new(graph: FixedGraph) -> Self {
        let aut_order = automorphism_order(&graph);
        let divisor = aut_order * graph.edge_degree_product();
        GraphWithSymmetry {
            graph,
            aut_order,
            divisor,
        }
    }
}

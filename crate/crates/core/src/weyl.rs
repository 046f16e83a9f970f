//! Weyl classes of (P^{n-1})^2 graphs: explode at diagonal vertices, swap the
//! coordinates of each remaining component independently, and check that the
//! diagonal contributions cancel class by class.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::algebra::{AlgebraError, Field, Rational, Series, TFunction};
use crate::gkm::{is_diagonal, Factor, FixedPoint, Lambda, Target, WeightAssignment};
use crate::graph::{automorphism_order, canonical_form, Edge, FixedGraph, GraphError, GraphWithSymmetry};
use crate::localization::{insertion_value, inv_euler_class, twist_value, LocalizationError};
use crate::schubert::Partition2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("Weyl classes are defined for (P^(n-1))^2 graphs only")]
    WrongTarget,
    #[error("class does not touch the diagonal")]
    NotDiagonal,
    #[error("enumeration not closed under component swaps: {0}")]
    NotClosed(String),
    #[error("grouping disagrees with the orbit of {0}")]
    PartitionViolation(String),
    #[error("class members differ: {0}")]
    InvarianceViolation(String),
    #[error("class sum does not factor: {0}")]
    FactorizationMismatch(String),
    #[error("half-edge census fails: {0}")]
    CensusViolation(String),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A connected piece left after deleting the diagonal vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    /// Severed edge-ends, i.e. edges joining the piece to a diagonal vertex.
    pub half_edges: usize,
    /// Bidegree of the edges touching the piece.
    pub degree: (u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplodedGraph {
    /// `(vertex, label, valence)` for every diagonal vertex.
    pub diagonal: Vec<(usize, FixedPoint, usize)>,
    pub components: Vec<Component>,
}

impl ExplodedGraph {
    pub fn touches_diagonal(&self) -> bool {
        !self.diagonal.is_empty()
    }
}

fn diagonal_flags(g: &FixedGraph) -> Result<Vec<bool>, WeylError> {
    if g.target() != Target::ProductPP {
        return Err(WeylError::WrongTarget);
    }
    Ok(g.labels().iter().map(|p| is_diagonal(p).unwrap()).collect())
}

pub fn explode(g: &FixedGraph) -> Result<ExplodedGraph, WeylError> {
    let diag = diagonal_flags(g)?;
    let val = g.valences();
    let incidence = g.incidence();
    let mut comp_of = vec![usize::MAX; g.vertex_count()];
    let mut components = Vec::new();
    for start in 0..g.vertex_count() {
        if diag[start] || comp_of[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut stack = vec![start];
        let mut vertices = Vec::new();
        comp_of[start] = id;
        while let Some(v) = stack.pop() {
            vertices.push(v);
            for &e in &incidence[v] {
                let w = g.edges()[e].other(v);
                if !diag[w] && comp_of[w] == usize::MAX {
                    comp_of[w] = id;
                    stack.push(w);
                }
            }
        }
        vertices.sort();
        components.push(Component {
            vertices,
            half_edges: 0,
            degree: (0, 0),
        });
    }
    for e in g.edges() {
        let c = if diag[e.u] { comp_of[e.v] } else { comp_of[e.u] };
        let comp = &mut components[c];
        if diag[e.u] || diag[e.v] {
            comp.half_edges += 1;
        }
        match g.edge_factor(e) {
            Factor::First => comp.degree.0 += e.degree,
            Factor::Second => comp.degree.1 += e.degree,
        }
    }
    let diagonal = (0..g.vertex_count())
        .filter(|&v| diag[v])
        .map(|v| (v, g.label(v), val[v]))
        .collect();
    Ok(ExplodedGraph { diagonal, components })
}

/// Swap the coordinates of every vertex in `component`.
pub fn conjugate_component(g: &FixedGraph, component: &Component) -> Result<FixedGraph, WeylError> {
    Ok(g.relabel(&component.vertices, |p| p.conjugate())?)
}

fn flip_pattern(g: &FixedGraph, ex: &ExplodedGraph, mask: u64) -> Result<FixedGraph, WeylError> {
    let vertices: Vec<usize> = ex
        .components
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .flat_map(|(_, c)| c.vertices.iter().copied())
        .collect();
    Ok(g.relabel(&vertices, |p| p.conjugate())?)
}

/// The distinct graphs reachable by swapping components, sorted by
/// canonical form; `members[0]` is the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylClass {
    pub members: Vec<GraphWithSymmetry>,
    pub exploded: ExplodedGraph,
}

impl WeylClass {
    pub fn base(&self) -> &GraphWithSymmetry {
        &self.members[0]
    }

    pub fn touches_diagonal(&self) -> bool {
        self.exploded.touches_diagonal()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn orbit_codes(g: &FixedGraph) -> Result<BTreeMap<Vec<u8>, FixedGraph>, WeylError> {
    let ex = explode(g)?;
    let mut out = BTreeMap::new();
    for mask in 0..(1u64 << ex.components.len()) {
        let h = flip_pattern(g, &ex, mask)?;
        out.entry(canonical_form(&h)).or_insert(h);
    }
    Ok(out)
}

fn class_from_codes(codes: BTreeMap<Vec<u8>, FixedGraph>) -> Result<WeylClass, WeylError> {
    let members: Vec<GraphWithSymmetry> = codes
        .into_keys()
        .map(|c| GraphWithSymmetry::new(crate::graph::decode_canonical(&c).expect("own canonical form")))
        .collect();
    let exploded = explode(&members[0].graph)?;
    Ok(WeylClass { members, exploded })
}

pub fn weyl_class(g: &FixedGraph) -> Result<WeylClass, WeylError> {
    class_from_codes(orbit_codes(g)?)
}

/// Partition an enumerated list into Weyl classes by union-find over single
/// component swaps, checking closure and agreement with [`weyl_class`].
pub fn group_classes(graphs: &[GraphWithSymmetry]) -> Result<Vec<WeylClass>, WeylError> {
    let index: HashMap<Vec<u8>, usize> = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| (canonical_form(&g.graph), i))
        .collect();
    let mut parent: Vec<usize> = (0..graphs.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, g) in graphs.iter().enumerate() {
        let ex = explode(&g.graph)?;
        for c in &ex.components {
            let h = conjugate_component(&g.graph, c)?;
            let j = *index
                .get(&canonical_form(&h))
                .ok_or_else(|| WeylError::NotClosed(format!("{} -> {}", g.graph, h)))?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<Vec<u8>>> = BTreeMap::new();
    for (i, g) in graphs.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().insert(canonical_form(&g.graph));
    }
    groups
        .into_iter()
        .map(|(r, codes)| {
            let orbit = orbit_codes(&graphs[r].graph)?;
            if !orbit.keys().eq(codes.iter()) {
                return Err(WeylError::PartitionViolation(graphs[r].graph.to_string()));
            }
            class_from_codes(orbit)
        })
        .collect()
}

/// A vertex where `Σ 1/ω_F` vanishes identically under the small torus:
/// unmarked, two edges of equal degree running to `(j,j)` in the first factor
/// and to `(i,i)` in the second, from `(i,j)`.
pub fn is_bridge_vertex(g: &FixedGraph, v: usize) -> bool {
    let FixedPoint::PP(i, j) = g.label(v) else {
        return false;
    };
    if i == j || g.marks().contains(&v) {
        return false;
    }
    let inc = &g.incidence()[v];
    if inc.len() != 2 {
        return false;
    }
    let (e1, e2) = (&g.edges()[inc[0]], &g.edges()[inc[1]]);
    if e1.degree != e2.degree {
        return false;
    }
    let ends = [g.label(e1.other(v)), g.label(e2.other(v))];
    ends.contains(&FixedPoint::PP(j, j)) && ends.contains(&FixedPoint::PP(i, i))
}

pub fn has_bridge(g: &FixedGraph) -> bool {
    (0..g.vertex_count()).any(|v| is_bridge_vertex(g, v))
}

/// Checks that `1/e(N)` and the insertions agree across the class under the
/// small torus. Members that are singular there must all be singular.
pub fn class_invariance_check(
    class: &WeylClass,
    insertions: &[Partition2],
    w_small: &WeightAssignment,
) -> Result<bool, WeylError> {
    let lam = w_small
        .specialize()
        .map_err(LocalizationError::from)?
        .lambda::<Rational>();
    let eval = |g: &FixedGraph| -> Result<Option<(Rational, Rational)>, WeylError> {
        let ins = insertion_value(g, insertions, &lam)?;
        match inv_euler_class(g, &lam) {
            Ok(e) => Ok(Some((e, ins))),
            Err(LocalizationError::DegenerateWeights(_)) => Ok(None),
            Err(e) => Err(e.into()),
        }
    };
    let first = eval(&class.base().graph)?;
    for m in &class.members[1..] {
        let here = eval(&m.graph)?;
        let same = match (&first, &here) {
            (Some((e0, _)), Some((e1, _))) if e0 != e1 => false,
            (Some((_, i0)), Some((_, i1))) => i0 == i1,
            (None, None) => {
                insertion_value(&m.graph, insertions, &lam)? == insertion_value(&class.base().graph, insertions, &lam)?
            }
            _ => false,
        };
        if !same {
            return Err(WeylError::InvarianceViolation(format!(
                "{} vs {}",
                class.base().graph,
                m.graph
            )));
        }
    }
    Ok(true)
}

/// Twist of one component: `∏_{v} (t + Δ_v)(t − Δ_v)^(1 − val v)`, with all
/// `Δ` negated for the swapped lift.
fn component_twist(g: &FixedGraph, c: &Component, lam: &Lambda<Rational>, swapped: bool) -> TFunction {
    let val = g.valences();
    let mut acc = TFunction::one();
    for &v in &c.vertices {
        let mut delta = lam.delta(&g.label(v));
        if swapped {
            delta = -delta;
        }
        let plus = TFunction::t_plus(delta.clone());
        let minus = TFunction::t_plus(-delta);
        acc = &acc * &(&plus * &minus.try_pow(1 - val[v] as i64).expect("nonzero"));
    }
    acc
}

/// Automorphisms of the graph with coordinates forgotten off the diagonal.
fn unordered_aut(g: &FixedGraph) -> u64 {
    let labels = g
        .labels()
        .iter()
        .map(|p| {
            let (a, b) = p.indices();
            FixedPoint::PP(a.min(b), a.max(b))
        })
        .collect();
    let h = FixedGraph::new_unchecked(g.target(), g.n(), labels, g.edges().to_vec(), g.marks().to_vec());
    automorphism_order(&h)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassSum {
    /// `Σ_{Γ ∈ W} C(Γ)` in `t` under the small torus; absent when the members
    /// are singular there.
    pub function: Option<TFunction>,
    pub value_at_zero: Rational,
    pub singular: bool,
    /// `ord_t ∏_i (T(G_i) + T(Ḡ_i)) − Σ_{v ∈ D} (val v − 2)`.
    pub net_valuation: Option<i64>,
}

/// Sum of the class under the small torus, with the coin-flip factorization
/// checked. Classes whose members are singular there are evaluated at `t = 0`
/// along `λ^h = λ + ε μ^h` and the limit `ε → 0` is taken.
pub fn class_sum(class: &WeylClass, insertions: &[Partition2], w: &WeightAssignment) -> Result<ClassSum, WeylError> {
    let small = w.specialize().map_err(LocalizationError::from)?;
    let lam = small.lambda::<Rational>();
    let base = &class.base().graph;
    let ex = &class.exploded;

    let mut product = TFunction::one();
    for c in &ex.components {
        let s = &component_twist(base, c, &lam, false) + &component_twist(base, c, &lam, true);
        product = &product * &s;
    }
    let net_valuation = if ex.touches_diagonal() {
        let pole: i64 = ex.diagonal.iter().map(|&(_, _, val)| val as i64 - 2).sum();
        Some(if product.is_zero() {
            i64::MAX
        } else {
            product.valuation_at_zero()? - pole
        })
    } else {
        None
    };

    if class.members.iter().any(|m| has_bridge(&m.graph)) {
        let value_at_zero = epsilon_limit(class, insertions, w)?;
        return Ok(ClassSum {
            function: None,
            value_at_zero,
            singular: true,
            net_valuation,
        });
    }

    let lam_t = small.lambda::<TFunction>();
    let t = TFunction::t();
    let mut total = TFunction::zero();
    for m in &class.members {
        let k = inv_euler_class(&m.graph, &lam)? * insertion_value(&m.graph, insertions, &lam)?
            / Rational::from_i64(m.divisor as i64);
        if !k.is_zero() {
            total = &total + &(&twist_value(&m.graph, &lam_t, &t)? * &TFunction::constant(k));
        }
    }

    let common = inv_euler_class(base, &lam)? * insertion_value(base, insertions, &lam)?
        / Rational::from_i64((unordered_aut(base) * base.edge_degree_product()) as i64);
    let parity = base.degree().total() as i64 - base.edges().len() as i64;
    let sign = if parity % 2 == 0 { 1 } else { -1 };
    let mut expect = &product * &TFunction::constant(common * Rational::from_i64(sign));
    for &(_, _, val) in &ex.diagonal {
        expect = &expect * &TFunction::t().try_pow(2 - val as i64).expect("t is nonzero");
    }
    if expect != total {
        return Err(WeylError::FactorizationMismatch(format!(
            "{}: sum {} but factored {}",
            base, total, expect
        )));
    }
    let value_at_zero = total.eval_at_zero()?;
    Ok(ClassSum {
        function: Some(total),
        value_at_zero,
        singular: false,
        net_valuation,
    })
}

/// `Σ_{Γ ∈ W} C(Γ)|_{t=0}` at arbitrary weights.
fn class_sum_at<K: Field>(class: &WeylClass, insertions: &[Partition2], lam: &Lambda<K>) -> Result<K, WeylError> {
    let zero = K::zero();
    let mut total = K::zero();
    for m in &class.members {
        let e = inv_euler_class(&m.graph, lam)?;
        let term = e
            * insertion_value(&m.graph, insertions, lam)?
            * twist_value(&m.graph, lam, &zero)?
            * K::from_i64(m.divisor as i64).try_inv()?;
        total = total + term;
    }
    Ok(total)
}

fn lift<K: Field>(base: &[Rational], dir: &[Rational], var: &K) -> Vec<K> {
    base.iter()
        .zip(dir)
        .map(|(b, m)| K::from_rational(b) + var.clone() * K::from_rational(m))
        .collect()
}

/// `lim_{ε→0} Σ_{Γ ∈ W} C(Γ)|_{t=0}` with weights `λ_i + ε μ^h_i`.
fn epsilon_limit(class: &WeylClass, insertions: &[Partition2], w: &WeightAssignment) -> Result<Rational, WeylError> {
    let mut last = AlgebraError::PrecisionLoss;
    for rel in [8, 16, 32, 64] {
        let eps = Series::epsilon(rel);
        let lam = Lambda::new(
            lift(w.small_vector(), w.first(), &eps),
            lift(w.small_vector(), w.second(), &eps),
        );
        match class_sum_at(class, insertions, &lam).and_then(|s| Ok(s.eval_at_zero()?)) {
            Err(WeylError::Algebra(AlgebraError::PrecisionLoss))
            | Err(WeylError::Localization(LocalizationError::Algebra(AlgebraError::PrecisionLoss))) => {
                last = AlgebraError::PrecisionLoss
            }
            r => return r,
        }
    }
    Err(last.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    /// `ν_j`: number of components with `j` half-edges.
    pub nu: BTreeMap<usize, usize>,
    pub valences: Vec<usize>,
    /// `ν_1 + Σ_{v ∈ D} (2 − val v)`, equal to `2 + Σ_{j≥2} (j−2) ν_j`.
    pub bound: i64,
    pub inequality_holds: bool,
}

pub fn halfedge_census(class: &WeylClass) -> Result<Census, WeylError> {
    let ex = &class.exploded;
    if !ex.touches_diagonal() {
        return Err(WeylError::NotDiagonal);
    }
    let mut nu = BTreeMap::new();
    for c in &ex.components {
        *nu.entry(c.half_edges).or_insert(0usize) += 1;
    }
    let valences: Vec<usize> = ex.diagonal.iter().map(|&(_, _, v)| v).collect();
    let half: usize = nu.iter().map(|(&j, &k)| j * k).sum();
    if half != valences.iter().sum::<usize>() {
        return Err(WeylError::CensusViolation(
            "half-edges do not match diagonal valences".into(),
        ));
    }
    let tree: usize = 1 + nu.iter().map(|(&j, &k)| (j.saturating_sub(1)) * k).sum::<usize>();
    if nu.contains_key(&0) || tree != valences.len() {
        return Err(WeylError::CensusViolation(format!(
            "{} diagonal vertices but 1 + Σ (j-1) ν_j = {tree}",
            valences.len()
        )));
    }
    let nu1 = *nu.get(&1).unwrap_or(&0) as i64;
    let bound = nu1 + valences.iter().map(|&v| 2 - v as i64).sum::<i64>();
    let rhs = 2 + nu
        .iter()
        .filter(|(&j, _)| j >= 2)
        .map(|(&j, &k)| (j as i64 - 2) * k as i64)
        .sum::<i64>();
    if bound != rhs {
        return Err(WeylError::CensusViolation(format!("{bound} != {rhs}")));
    }
    Ok(Census {
        nu,
        valences,
        bound,
        inequality_holds: bound >= 2,
    })
}

/// Image of a graph avoiding the diagonal in Gr(2,n): `(a,b) ↦ ⟨ab⟩`.
pub fn grassmannian_image(g: &FixedGraph) -> Result<FixedGraph, WeylError> {
    let labels = g
        .labels()
        .iter()
        .map(|p| {
            let (a, b) = p.indices();
            FixedPoint::gr(a, b).ok_or(WeylError::InvarianceViolation(format!("{p} is diagonal")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let edges: Vec<Edge> = g.edges().to_vec();
    Ok(FixedGraph::new(
        Target::Grassmannian,
        g.n(),
        labels,
        edges,
        g.marks().to_vec(),
    )?)
}

/// For a class avoiding the diagonal: its small-torus value at `t = 0` and
/// twice the contribution of its Grassmannian image.
pub fn u_class_pair(
    class: &WeylClass,
    insertions: &[Partition2],
    w: &WeightAssignment,
) -> Result<(Rational, Rational), WeylError> {
    if class.touches_diagonal() {
        return Err(WeylError::InvarianceViolation("class touches the diagonal".into()));
    }
    let pp = class_sum(class, insertions, w)?.value_at_zero;
    let image = GraphWithSymmetry::new(grassmannian_image(&class.base().graph)?);
    let lam = w.specialize().map_err(LocalizationError::from)?.lambda::<Rational>();
    let gr = inv_euler_class(&image.graph, &lam)? * insertion_value(&image.graph, insertions, &lam)?
        / Rational::from_i64(image.divisor as i64);
    Ok((pp, gr * Rational::from_i64(2)))
}

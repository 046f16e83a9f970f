use rayon::prelude::*;

use crate::algebra::{Field, Rational, TFunction};
use crate::gkm::{is_diagonal, Target, WeightAssignment};
use crate::graph::{enumerate_graphs, Degree, GraphWithSymmetry};
use crate::schubert::Partition2;

use super::contribution::{insertion_value, inv_euler_class, twist_value};
use super::dimension::dimension_check;
use super::LocalizationError;

pub const MAX_RESEEDS: usize = 16;

/// Seed for the `attempt`-th draw; attempt 0 is the seed itself.
pub fn mix_seed(seed: u64, attempt: usize) -> u64 {
    seed ^ (attempt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Run `f` on seeded weights, redrawing while they turn out degenerate.
pub fn with_reseed<T>(
    seed: u64,
    n: u32,
    max_degree: u32,
    mut f: impl FnMut(&WeightAssignment) -> Result<T, LocalizationError>,
) -> Result<T, LocalizationError> {
    for attempt in 0..MAX_RESEEDS {
        let w = WeightAssignment::random(n, mix_seed(seed, attempt));
        if w.validate(max_degree).is_err() {
            continue;
        }
        match f(&w) {
            Err(LocalizationError::DegenerateWeights(_)) => continue,
            r => return r,
        }
    }
    Err(LocalizationError::RetriesExhausted(MAX_RESEEDS))
}

/// Per-graph factors that do not depend on the insertions, evaluated at one
/// weight assignment: `1/(e(N_Γ) a_Γ)`, times `T(Γ)|_{t=0}` when twisted.
#[derive(Debug, Clone)]
pub struct PreparedSum<'a> {
    graphs: Vec<&'a GraphWithSymmetry>,
    weights: WeightAssignment,
    base: Vec<Rational>,
}

impl<'a> PreparedSum<'a> {
    pub fn new(
        graphs: impl IntoIterator<Item = &'a GraphWithSymmetry>,
        weights: &WeightAssignment,
        twisted: bool,
    ) -> Result<Self, LocalizationError> {
        let graphs: Vec<&GraphWithSymmetry> = graphs.into_iter().collect();
        let lam = weights.lambda::<Rational>();
        let zero = Rational::zero();
        let base = graphs
            .par_iter()
            .map(|g| {
                let mut x = inv_euler_class(&g.graph, &lam)? / Rational::from_i64(g.divisor as i64);
                if twisted && !x.is_zero() {
                    x *= twist_value(&g.graph, &lam, &zero)?;
                }
                Ok(x)
            })
            .collect::<Result<Vec<_>, LocalizationError>>()?;
        Ok(PreparedSum {
            graphs,
            weights: weights.clone(),
            base,
        })
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn weights(&self) -> &WeightAssignment {
        &self.weights
    }

    pub fn evaluate(&self, insertions: &[Partition2]) -> Result<Rational, LocalizationError> {
        let lam = self.weights.lambda::<Rational>();
        let terms = self
            .graphs
            .par_iter()
            .zip(&self.base)
            .filter(|(_, b)| !b.is_zero())
            .map(|(g, b)| Ok(b * insertion_value(&g.graph, insertions, &lam)?))
            .collect::<Result<Vec<_>, LocalizationError>>()?;
        Ok(Rational::sum(terms))
    }
}

/// Turns an equivariant sum of λ-degree `k` into the numerical invariant:
/// `k < 0` must already be zero, `k > 0` is checked for homogeneity and gives 0.
fn finalize(
    k: i64,
    value: Rational,
    doubled: impl FnOnce() -> Result<Rational, LocalizationError>,
) -> Result<Rational, LocalizationError> {
    match k {
        0 => Ok(value),
        k if k < 0 => {
            if value.is_zero() {
                Ok(value)
            } else {
                Err(LocalizationError::DimensionViolation(format!(
                    "sum of negative degree {k} is {value}"
                )))
            }
        }
        k => {
            let scaled = doubled()?;
            let expect = value.clone() * Rational::from_i64(2).try_pow(k).unwrap();
            if scaled != expect {
                return Err(LocalizationError::DimensionViolation(format!(
                    "sum is not homogeneous of degree {k}"
                )));
            }
            Ok(Rational::zero())
        }
    }
}

fn check_insertions(n: u32, insertions: &[Partition2]) -> Result<(), LocalizationError> {
    for p in insertions {
        p.check_box(n)?;
    }
    Ok(())
}

fn codim_gap(n: u32, d: u32, insertions: &[Partition2]) -> i64 {
    let r = dimension_check(n, 2, d, insertions.len(), insertions);
    r.codim_sum - r.gr_vdim
}

/// `⟨σ_μ1, …, σ_μm⟩_{0,d}` of Gr(2,n) over an already enumerated graph list.
pub fn gr_invariant_with(
    graphs: &[GraphWithSymmetry],
    n: u32,
    d: u32,
    insertions: &[Partition2],
    seed: u64,
) -> Result<Rational, LocalizationError> {
    check_insertions(n, insertions)?;
    let k = codim_gap(n, d, insertions);
    with_reseed(seed, n, d, |w| {
        let w = w.specialize()?;
        let value = PreparedSum::new(graphs, &w, false)?.evaluate(insertions)?;
        finalize(k, value, || {
            PreparedSum::new(graphs, &w.scaled(&Rational::from_i64(2)), false)?.evaluate(insertions)
        })
    })
}

/// Genus-zero invariant of Gr(2,n) by localization under the small torus.
pub fn gr_invariant(n: u32, d: u32, insertions: &[Partition2], seed: u64) -> Result<Rational, LocalizationError> {
    let graphs = enumerate_graphs(Target::Grassmannian, n, Degree::Total(d), insertions.len())?;
    gr_invariant_with(&graphs, n, d, insertions, seed)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwistedValue {
    pub value_at_zero: Rational,
    /// The big-torus sum as a function of `t`, when requested.
    pub total: Option<TFunction>,
}

/// Twisted invariant of (P^{n-1})^2 in bidegree `(d1, d2)` over the big torus.
pub fn twisted_pp_invariant_with(
    graphs: &[GraphWithSymmetry],
    n: u32,
    (d1, d2): (u32, u32),
    insertions: &[Partition2],
    seed: u64,
    with_t: bool,
) -> Result<TwistedValue, LocalizationError> {
    check_insertions(n, insertions)?;
    let d = d1 + d2;
    let k = codim_gap(n, d, insertions);
    with_reseed(seed, n, d, |w| {
        let value = PreparedSum::new(graphs, w, true)?.evaluate(insertions)?;
        let value_at_zero = finalize(k, value, || {
            PreparedSum::new(graphs, &w.scaled(&Rational::from_i64(2)), true)?.evaluate(insertions)
        })?;
        let total = if with_t {
            Some(t_total(graphs, insertions, w)?)
        } else {
            None
        };
        Ok(TwistedValue { value_at_zero, total })
    })
}

fn t_total(
    graphs: &[GraphWithSymmetry],
    insertions: &[Partition2],
    w: &WeightAssignment,
) -> Result<TFunction, LocalizationError> {
    let lam = w.lambda::<Rational>();
    let lam_t = w.lambda::<TFunction>();
    let t = TFunction::t();
    let terms = graphs
        .par_iter()
        .map(|g| {
            let k = inv_euler_class(&g.graph, &lam)? * insertion_value(&g.graph, insertions, &lam)?
                / Rational::from_i64(g.divisor as i64);
            if k.is_zero() {
                return Ok(TFunction::zero());
            }
            Ok(&twist_value(&g.graph, &lam_t, &t)? * &TFunction::constant(k))
        })
        .collect::<Result<Vec<_>, LocalizationError>>()?;
    Ok(TFunction::sum(terms))
}

pub fn twisted_pp_invariant(
    n: u32,
    degree: (u32, u32),
    insertions: &[Partition2],
    seed: u64,
    with_t: bool,
) -> Result<TwistedValue, LocalizationError> {
    let graphs = enumerate_graphs(Target::ProductPP, n, Degree::Bi(degree.0, degree.1), insertions.len())?;
    twisted_pp_invariant_with(&graphs, n, degree, insertions, seed, with_t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrespondenceReport {
    pub gr_value: Rational,
    pub pp_value: Rational,
    pub per_bidegree: Vec<((u32, u32), Rational)>,
    pub equal: bool,
}

/// `⟨…⟩^{Gr(2,n)}_d` against `½ Σ_{d1+d2=d} ⟨…⟩^{(P^{n-1})^2, tw}_{(d1,d2)}|_{t=0}`.
pub fn correspondence_check(
    n: u32,
    d: u32,
    insertions: &[Partition2],
    seed: u64,
) -> Result<CorrespondenceReport, LocalizationError> {
    let gr_value = gr_invariant(n, d, insertions, seed)?;
    let mut per_bidegree = Vec::new();
    for d1 in 0..=d {
        let v = twisted_pp_invariant(n, (d1, d - d1), insertions, seed, false)?;
        per_bidegree.push(((d1, d - d1), v.value_at_zero));
    }
    let pp_value = Rational::sum(per_bidegree.iter().map(|(_, v)| v.clone())) / Rational::from_i64(2);
    Ok(CorrespondenceReport {
        equal: gr_value == pp_value,
        gr_value,
        pp_value,
        per_bidegree,
    })
}

/// Half the small-torus sum over graphs avoiding the diagonal, across all
/// bidegrees of total `d`, at `t = 0`.
pub fn u_half(
    families: &[Vec<GraphWithSymmetry>],
    n: u32,
    d: u32,
    insertions: &[Partition2],
    seed: u64,
) -> Result<Rational, LocalizationError> {
    check_insertions(n, insertions)?;
    let k = codim_gap(n, d, insertions);
    let inside: Vec<&GraphWithSymmetry> = families
        .iter()
        .flatten()
        .filter(|g| g.graph.labels().iter().all(|p| !is_diagonal(p).unwrap_or(true)))
        .collect();
    with_reseed(seed, n, d, |w| {
        let w = w.specialize()?;
        let half = |w: &WeightAssignment| -> Result<Rational, LocalizationError> {
            Ok(PreparedSum::new(inside.iter().copied(), w, true)?.evaluate(insertions)? / Rational::from_i64(2))
        };
        let value = half(&w)?;
        finalize(k, value, || half(&w.scaled(&Rational::from_i64(2))))
    })
}

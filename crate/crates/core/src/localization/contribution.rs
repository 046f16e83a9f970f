use crate::algebra::{AlgebraError, Field, Rational, TFunction};
use crate::gkm::{edge_summands, tangent_weights_in, Lambda, Target, WeightAssignment};
use crate::graph::{Edge, FixedGraph, GraphWithSymmetry};
use crate::schubert::{schur_eval, Partition2};

use super::LocalizationError;

fn degenerate(what: &str) -> impl Fn(AlgebraError) -> LocalizationError + '_ {
    move |e| match e {
        AlgebraError::PrecisionLoss => e.into(),
        _ => LocalizationError::DegenerateWeights(what.to_string()),
    }
}

fn inv<K: Field>(x: &K, what: &str) -> Result<K, LocalizationError> {
    x.try_inv().map_err(degenerate(what))
}

/// Tangent weight at `e.u` toward `e.v`.
fn edge_alpha<K: Field>(g: &FixedGraph, e: &Edge, lam: &Lambda<K>) -> K {
    edge_summands(&g.label(e.u), &g.label(e.v), lam)
        .expect("validated edge")
        .0
}

/// `1 / e(H^0 − H^1)` of the moving part of `f^*TX` over one edge.
///
/// A summand of weight `β` and degree `a` per unit contributes the weights
/// `β − (s/d)α`; for `a >= 0` these are `s = 0..=a d` in `H^0`, for `a < 0`
/// the interior `s` in `H^1`. The zero weight of the tangent summand is the
/// reparametrization direction and is dropped.
pub fn edge_factor<K: Field>(g: &FixedGraph, e: &Edge, lam: &Lambda<K>) -> Result<K, LocalizationError> {
    let (alpha, summands) = edge_summands(&g.label(e.u), &g.label(e.v), lam).expect("validated edge");
    let d = e.degree as i64;
    let mut num = K::one();
    let mut den = K::one();
    for s in &summands {
        let top = s.degree as i64 * d;
        let at = |k: i64| s.weight.clone() - K::from_rational(&Rational::new(k.into(), d.into())) * alpha.clone();
        if top >= 0 {
            for k in 0..=top {
                if s.tangent && k == d {
                    continue;
                }
                den = den * at(k);
            }
        } else {
            for k in 1..-top {
                num = num * at(k);
            }
        }
    }
    Ok(num * inv(&den, "edge weight")?)
}

/// `(∏ 1/ω_F) (Σ 1/ω_F)^(val + n − 3)` over the flags at `v`.
pub fn flag_factor<K: Field>(omegas: &[K], marks: usize) -> Result<K, LocalizationError> {
    if omegas.is_empty() {
        return Ok(if marks == 3 { K::one() } else { K::zero() });
    }
    let mut prod = K::one();
    let mut sum = K::zero();
    for w in omegas {
        let r = inv(w, "flag weight")?;
        prod = prod * r.clone();
        sum = sum + r;
    }
    let e = omegas.len() as i64 + marks as i64 - 3;
    let pow = sum.try_pow(e).map_err(degenerate("flag weights sum to zero"))?;
    Ok(prod * pow)
}

fn flag_omegas<K: Field>(g: &FixedGraph, v: usize, lam: &Lambda<K>, incidence: &[usize]) -> Vec<K> {
    incidence
        .iter()
        .map(|&i| {
            let e = &g.edges()[i];
            let a = edge_alpha(g, e, lam);
            let a = if e.u == v { a } else { -a };
            a * K::from_rational(&Rational::new(1.into(), (e.degree as i64).into()))
        })
        .collect()
}

/// Flag factor times `e(T_p X)^(val − 1)` at vertex `v`.
pub fn vertex_factor<K: Field>(g: &FixedGraph, v: usize, lam: &Lambda<K>) -> Result<K, LocalizationError> {
    let incidence = g.incidence();
    let marks = g.marks_per_vertex()[v];
    vertex_factor_inner(g, v, lam, &incidence[v], marks)
}

fn vertex_factor_inner<K: Field>(
    g: &FixedGraph,
    v: usize,
    lam: &Lambda<K>,
    incidence: &[usize],
    marks: usize,
) -> Result<K, LocalizationError> {
    let omegas = flag_omegas(g, v, lam, incidence);
    let flags = flag_factor(&omegas, marks)?;
    if flags.is_zero() {
        return Ok(flags);
    }
    let euler = K::product(tangent_weights_in(&g.label(v), lam));
    let tangent = euler
        .try_pow(incidence.len() as i64 - 1)
        .map_err(degenerate("tangent weight"))?;
    Ok(flags * tangent)
}

/// `1 / e(N_Γ)`, not yet divided by `a_Γ`.
pub fn inv_euler_class<K: Field>(g: &FixedGraph, lam: &Lambda<K>) -> Result<K, LocalizationError> {
    let incidence = g.incidence();
    let marks = g.marks_per_vertex();
    let mut acc = K::one();
    for v in 0..g.vertex_count() {
        acc = acc * vertex_factor_inner(g, v, lam, &incidence[v], marks[v])?;
        if acc.is_zero() {
            return Ok(acc);
        }
    }
    for e in g.edges() {
        acc = acc * edge_factor(g, e, lam)?;
    }
    Ok(acc)
}

/// `∏_i S_{μ_i}` evaluated at the vertex carrying marking `i`.
pub fn insertion_value<K: Field>(
    g: &FixedGraph,
    insertions: &[Partition2],
    lam: &Lambda<K>,
) -> Result<K, LocalizationError> {
    if insertions.len() != g.marking_count() {
        return Err(LocalizationError::InsertionCount {
            expected: g.marking_count(),
            got: insertions.len(),
        });
    }
    let mut acc = K::one();
    for (mu, &v) in insertions.iter().zip(g.marks()) {
        let (x1, x2) = lam.insertion_args(&g.label(v));
        acc = acc * schur_eval(*mu, &x1, &x2);
    }
    Ok(acc)
}

/// `(−1)^(d − |E|) ∏_v (t + Δ_v)(t − Δ_v)^(1 − val v)`.
pub fn twist_value<K: Field>(g: &FixedGraph, lam: &Lambda<K>, t: &K) -> Result<K, LocalizationError> {
    if g.target() != Target::ProductPP {
        return Err(LocalizationError::WrongTarget);
    }
    let val = g.valences();
    let mut acc = K::one();
    for (v, p) in g.labels().iter().enumerate() {
        let delta = lam.delta(p);
        let plus = t.clone() + delta.clone();
        let minus = t.clone() - delta;
        let pow = minus
            .try_pow(1 - val[v] as i64)
            .map_err(|_| LocalizationError::PoleAtZero)?;
        acc = acc * plus * pow;
    }
    let parity = g.degree().total() as i64 - g.edges().len() as i64;
    Ok(if parity.rem_euclid(2) == 1 { -acc } else { acc })
}

/// The pieces of one graph's contribution.
#[derive(Debug, Clone, PartialEq)]
pub struct Contribution {
    pub inv_euler: Rational,
    pub insertions: Rational,
    pub twist: TFunction,
    pub divisor: u64,
}

impl Contribution {
    pub fn total(&self) -> TFunction {
        let k = &self.inv_euler * &self.insertions / Rational::from_i64(self.divisor as i64);
        &self.twist * &TFunction::constant(k)
    }
}

pub fn contribution(
    g: &GraphWithSymmetry,
    insertions: &[Partition2],
    w: &WeightAssignment,
) -> Result<Contribution, LocalizationError> {
    let lam = w.lambda::<Rational>();
    let twist = if g.graph.target() == Target::ProductPP {
        twist_value(&g.graph, &w.lambda::<TFunction>(), &TFunction::t())?
    } else {
        TFunction::one()
    };
    Ok(Contribution {
        inv_euler: inv_euler_class(&g.graph, &lam)?,
        insertions: insertion_value(&g.graph, insertions, &lam)?,
        twist,
        divisor: g.divisor,
    })
}

/// `I(Γ) T(Γ) / (e(N_Γ) a_Γ)` as a function of `t`; `T ≡ 1` off (P^{n-1})^2.
pub fn graph_total(
    g: &GraphWithSymmetry,
    insertions: &[Partition2],
    w: &WeightAssignment,
) -> Result<TFunction, LocalizationError> {
    Ok(contribution(g, insertions, w)?.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::gkm::FixedPoint;

    fn r(x: i64) -> Rational {
        Rational::from_i64(x)
    }

    fn p1_line() -> FixedGraph {
        FixedGraph::new(
            Target::Projective,
            2,
            vec![FixedPoint::Proj(0), FixedPoint::Proj(1)],
            vec![Edge { u: 0, v: 1, degree: 1 }],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn p1_edge_factor() {
        let w = WeightAssignment::small_from_integers(&[3, 10]).unwrap();
        let lam = w.lambda::<Rational>();
        let g = p1_line();
        let a = r(3 - 10);
        assert_eq!(edge_factor(&g, &g.edges()[0], &lam).unwrap(), -(a.clone() * a).recip());
        // M̄_{0,0}(P^1, 1) is a point
        assert_eq!(inv_euler_class(&g, &lam).unwrap(), r(1));
    }

    #[test]
    fn flag_factor_examples() {
        assert_eq!(flag_factor(&[r(5)], 0).unwrap(), r(5));
        assert_eq!(flag_factor(&[r(5)], 1).unwrap(), r(1));
        assert_eq!(flag_factor(&[r(1), r(2), r(3)], 0).unwrap(), rational(1, 6));
        assert_eq!(flag_factor(&[r(2), r(3)], 0).unwrap(), rational(1, 5));
        assert_eq!(flag_factor::<Rational>(&[], 3).unwrap(), r(1));
        assert_eq!(flag_factor::<Rational>(&[], 4).unwrap(), r(0));
        assert!(flag_factor(&[r(2), r(-2)], 0).is_err());
    }

    #[test]
    fn pp_single_edge_matches_hand_product() {
        let w = WeightAssignment::from_integers(&[2, 7, -5], &[11, -3, 13]).unwrap();
        let lam = w.lambda::<Rational>();
        let g = FixedGraph::new(
            Target::ProductPP,
            3,
            vec![FixedPoint::PP(0, 1), FixedPoint::PP(1, 1)],
            vec![Edge { u: 0, v: 1, degree: 1 }],
            vec![],
        )
        .unwrap();
        let l1 = |i: usize| r([2, 7, -5][i]);
        let l2 = |i: usize| r([11, -3, 13][i]);
        let a = l1(0) - l1(1);
        // H^0 of the P^2 factor: weights a, -a and the two lines toward index 2
        let moving = a.clone() * (-a.clone()) * (l1(0) - l1(2)) * (l1(1) - l1(2));
        let fixed = (l2(1) - l2(0)) * (l2(1) - l2(2));
        assert_eq!(edge_factor(&g, &g.edges()[0], &lam).unwrap(), (moving * fixed).recip());
    }

    #[test]
    fn sign_flip_scales_by_dimension_parity() {
        let w = WeightAssignment::random(4, 2);
        let neg = w.scaled(&r(-1));
        let graphs = crate::graph::enumerate_graphs(Target::ProductPP, 4, crate::graph::Degree::Bi(1, 1), 1).unwrap();
        for g in graphs.iter().take(40) {
            let a = inv_euler_class(&g.graph, &w.lambda::<Rational>()).unwrap();
            let b = inv_euler_class(&g.graph, &neg.lambda::<Rational>()).unwrap();
            // dim N = dim M̄ = 2(n-1) + n d + m - 3 = 6 + 8 + 1 - 3
            assert_eq!(b, a);
        }
        let graphs = crate::graph::enumerate_graphs(Target::ProductPP, 4, crate::graph::Degree::Bi(1, 0), 0).unwrap();
        for g in &graphs {
            let a = inv_euler_class(&g.graph, &w.lambda::<Rational>()).unwrap();
            let b = inv_euler_class(&g.graph, &neg.lambda::<Rational>()).unwrap();
            assert_eq!(b, -a);
        }
    }

    #[test]
    fn insertions() {
        let w = WeightAssignment::from_integers(&[2, 7, -5, 4], &[11, -3, 13, 6]).unwrap();
        let lam = w.lambda::<Rational>();
        let g = FixedGraph::new(
            Target::ProductPP,
            4,
            vec![FixedPoint::PP(2, 3), FixedPoint::PP(0, 3)],
            vec![Edge { u: 0, v: 1, degree: 1 }],
            vec![0],
        )
        .unwrap();
        let s1 = Partition2::new(1, 0).unwrap();
        assert_eq!(insertion_value(&g, &[s1], &lam).unwrap(), r(-5 + 6));
        assert!(insertion_value(&g, &[], &lam).is_err());
        let bare = FixedGraph::new(Target::ProductPP, 4, g.labels().to_vec(), g.edges().to_vec(), vec![]).unwrap();
        assert_eq!(insertion_value(&bare, &[], &lam).unwrap(), r(1));
        let small = w.specialize().unwrap().lambda::<Rational>();
        let flipped = bare.relabel(&[0, 1], |p| p.conjugate()).unwrap();
        let a = FixedGraph::new(
            Target::ProductPP,
            4,
            bare.labels().to_vec(),
            bare.edges().to_vec(),
            vec![0],
        )
        .unwrap();
        let b = FixedGraph::new(
            Target::ProductPP,
            4,
            flipped.labels().to_vec(),
            flipped.edges().to_vec(),
            vec![0],
        )
        .unwrap();
        let mu = Partition2::new(2, 1).unwrap();
        assert_eq!(
            insertion_value(&a, &[mu], &small).unwrap(),
            insertion_value(&b, &[mu], &small).unwrap()
        );
    }

    #[test]
    fn twist_examples() {
        let w = WeightAssignment::from_integers(&[2, 7, -5], &[11, -3, 13]).unwrap();
        let lam = w.lambda::<TFunction>();
        let g = FixedGraph::new(
            Target::ProductPP,
            3,
            vec![FixedPoint::PP(0, 1), FixedPoint::PP(2, 1)],
            vec![Edge { u: 0, v: 1, degree: 1 }],
            vec![],
        )
        .unwrap();
        let d0 = r(2 - -3);
        let d1 = r(-5 - -3);
        let tw = twist_value(&g, &lam, &TFunction::t()).unwrap();
        let expect = &TFunction::t_plus(d0.clone()) * &TFunction::t_plus(d1.clone());
        assert_eq!(tw, expect);
        assert_eq!(tw.eval_at_zero().unwrap(), d0 * d1);

        let small = WeightAssignment::small_from_integers(&[2, 7, -5, 4]).unwrap();
        let star = FixedGraph::new(
            Target::ProductPP,
            4,
            vec![
                FixedPoint::PP(1, 1),
                FixedPoint::PP(0, 1),
                FixedPoint::PP(1, 2),
                FixedPoint::PP(1, 3),
            ],
            vec![
                Edge { u: 0, v: 1, degree: 1 },
                Edge { u: 0, v: 2, degree: 1 },
                Edge { u: 0, v: 3, degree: 1 },
            ],
            vec![],
        )
        .unwrap();
        let tw = twist_value(&star, &small.lambda::<TFunction>(), &TFunction::t()).unwrap();
        assert_eq!(tw.valuation_at_zero().unwrap(), -1);
        assert_eq!(
            twist_value(&star, &small.lambda::<Rational>(), &r(0)),
            Err(LocalizationError::PoleAtZero)
        );
        let gr = FixedGraph::new(
            Target::Grassmannian,
            4,
            vec![FixedPoint::Gr(0, 1), FixedPoint::Gr(0, 2)],
            vec![Edge { u: 0, v: 1, degree: 1 }],
            vec![],
        )
        .unwrap();
        assert_eq!(
            twist_value(&gr, &lam, &TFunction::t()),
            Err(LocalizationError::WrongTarget)
        );
    }
}

//! Fixed points, invariant curves and torus weights for P^{n-1},
//! (P^{n-1})^2 and Gr(2,n).
//!
//! Sign convention: the weight of the curve leaving `p` toward `q` is the
//! character of `p` minus the character of `q`. At `⟨ij⟩` the curve toward
//! `⟨kj⟩` has weight `λ_i − λ_k`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkmError {
    #[error("n = {0} is too small for this target")]
    InvalidDimension(u32),
    #[error("weights are not generic: {0}")]
    GenericityFailure(String),
    #[error("operation needs a point of (P^(n-1))^2")]
    WrongTarget,
    #[error("expected {expected} weights, got {got}")]
    WrongLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    /// A single projective space P^{n-1}.
    Projective,
    /// (P^{n-1})^2 with the big torus acting factorwise.
    ProductPP,
    /// Gr(2,n).
    Grassmannian,
}

impl Target {
    pub fn tag(self) -> u8 {
        match self {
            Target::Projective => 0,
            Target::ProductPP => 1,
            Target::Grassmannian => 2,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0 => Some(Target::Projective),
            1 => Some(Target::ProductPP),
            2 => Some(Target::Grassmannian),
            _ => None,
        }
    }

    pub fn min_n(self) -> u32 {
        match self {
            Target::Grassmannian => 3,
            _ => 2,
        }
    }

    pub fn check_n(self, n: u32) -> Result<(), GkmError> {
        if n < self.min_n() {
            Err(GkmError::InvalidDimension(n))
        } else {
            Ok(())
        }
    }

    pub fn dimension(self, n: u32) -> u32 {
        match self {
            Target::Projective => n - 1,
            Target::ProductPP => 2 * (n - 1),
            Target::Grassmannian => 2 * (n - 2),
        }
    }

    /// `∫ c_1 ∩ β` for a curve of total degree `d`.
    pub fn c1_degree(self, n: u32, d: u32) -> u32 {
        n * d
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Projective => "P",
            Target::ProductPP => "PP",
            Target::Grassmannian => "Gr",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FixedPoint {
    Proj(u32),
    /// `⟨ij⟩` with `i < j`.
    Gr(u32, u32),
    /// Ordered pair of coordinate points.
    PP(u32, u32),
}

impl FixedPoint {
    /// Unordered pair; `None` if `i == j`.
    pub fn gr(i: u32, j: u32) -> Option<Self> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => Some(FixedPoint::Gr(i, j)),
            std::cmp::Ordering::Greater => Some(FixedPoint::Gr(j, i)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn target(&self) -> Target {
        match self {
            FixedPoint::Proj(_) => Target::Projective,
            FixedPoint::Gr(..) => Target::Grassmannian,
            FixedPoint::PP(..) => Target::ProductPP,
        }
    }

    pub fn indices(&self) -> (u32, u32) {
        match *self {
            FixedPoint::Proj(i) => (i, i),
            FixedPoint::Gr(i, j) | FixedPoint::PP(i, j) => (i, j),
        }
    }

    pub fn max_index(&self) -> u32 {
        let (i, j) = self.indices();
        i.max(j)
    }

    /// Swap the coordinates of a point of (P^{n-1})^2.
    pub fn conjugate(&self) -> Self {
        match *self {
            FixedPoint::PP(i, j) => FixedPoint::PP(j, i),
            p => p,
        }
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedPoint::Proj(i) => write!(f, "{i}"),
            FixedPoint::Gr(i, j) => write!(f, "<{i}{j}>"),
            FixedPoint::PP(i, j) => write!(f, "({i},{j})"),
        }
    }
}

pub fn is_diagonal(p: &FixedPoint) -> Result<bool, GkmError> {
    match *p {
        FixedPoint::PP(i, j) => Ok(i == j),
        _ => Err(GkmError::WrongTarget),
    }
}

/// Which factor of (P^{n-1})^2 an invariant curve moves in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    First,
    Second,
}

impl Factor {
    pub fn other(self) -> Self {
        match self {
            Factor::First => Factor::Second,
            Factor::Second => Factor::First,
        }
    }

    pub fn row(self) -> usize {
        match self {
            Factor::First => 0,
            Factor::Second => 1,
        }
    }
}

/// The factor in which `p` and `q` are joined by an invariant curve, if they
/// are. Projective and Grassmannian curves report `Factor::First`.
pub fn curve_between(p: &FixedPoint, q: &FixedPoint) -> Option<Factor> {
    match (*p, *q) {
        (FixedPoint::Proj(i), FixedPoint::Proj(k)) => (i != k).then_some(Factor::First),
        (FixedPoint::Gr(a, b), FixedPoint::Gr(c, d)) => {
            let shared = [a == c, a == d, b == c, b == d].iter().filter(|&&x| x).count();
            (shared == 1).then_some(Factor::First)
        }
        (FixedPoint::PP(a, b), FixedPoint::PP(c, d)) => match (a == c, b == d) {
            (false, true) => Some(Factor::First),
            (true, false) => Some(Factor::Second),
            _ => None,
        },
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantEdge {
    pub a: FixedPoint,
    pub b: FixedPoint,
    pub factor: Factor,
}

pub fn fixed_points(target: Target, n: u32) -> Result<Vec<FixedPoint>, GkmError> {
    target.check_n(n)?;
    Ok(match target {
        Target::Projective => (0..n).map(FixedPoint::Proj).collect(),
        Target::Grassmannian => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| FixedPoint::Gr(i, j)))
            .collect(),
        Target::ProductPP => (0..n).flat_map(|i| (0..n).map(move |j| FixedPoint::PP(i, j))).collect(),
    })
}

pub fn invariant_edges(target: Target, n: u32) -> Result<Vec<InvariantEdge>, GkmError> {
    let pts = fixed_points(target, n)?;
    let mut out = Vec::new();
    for (x, a) in pts.iter().enumerate() {
        for b in &pts[x + 1..] {
            if let Some(factor) = curve_between(a, b) {
                out.push(InvariantEdge { a: *a, b: *b, factor });
            }
        }
    }
    Ok(out)
}

/// Torus characters lifted into a field `K`: row 0 holds `λ^1`, row 1 `λ^2`.
/// Single-factor targets read row 0 only.
#[derive(Debug, Clone, PartialEq)]
pub struct Lambda<K> {
    rows: [Vec<K>; 2],
}

impl<K: Field> Lambda<K> {
    pub fn new(first: Vec<K>, second: Vec<K>) -> Self {
        Lambda { rows: [first, second] }
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, row: usize, i: u32) -> &K {
        &self.rows[row][i as usize]
    }

    pub fn row(&self, row: usize) -> &[K] {
        &self.rows[row]
    }

    fn diff(&self, row: usize, i: u32, k: u32) -> K {
        self.get(row, i).clone() - self.get(row, k).clone()
    }

    /// `Δ = λ^1_a − λ^2_b` at the point `(a,b)`.
    pub fn delta(&self, p: &FixedPoint) -> K {
        let (a, b) = p.indices();
        self.get(0, a).clone() - self.get(1, b).clone()
    }

    /// The two coordinates at which Schur insertions are evaluated.
    pub fn insertion_args(&self, p: &FixedPoint) -> (K, K) {
        match *p {
            FixedPoint::Proj(i) => (self.get(0, i).clone(), K::zero()),
            FixedPoint::Gr(i, j) => (self.get(0, i).clone(), self.get(0, j).clone()),
            FixedPoint::PP(i, j) => (self.get(0, i).clone(), self.get(1, j).clone()),
        }
    }
}

/// Weights of `T_p X`.
pub fn tangent_weights_in<K: Field>(p: &FixedPoint, lam: &Lambda<K>) -> Vec<K> {
    let n = lam.n() as u32;
    match *p {
        FixedPoint::Proj(i) => (0..n).filter(|&k| k != i).map(|k| lam.diff(0, i, k)).collect(),
        FixedPoint::Gr(i, j) => {
            let others: Vec<u32> = (0..n).filter(|&k| k != i && k != j).collect();
            let mut out: Vec<K> = others.iter().map(|&k| lam.diff(0, i, k)).collect();
            out.extend(others.iter().map(|&k| lam.diff(0, j, k)));
            out
        }
        FixedPoint::PP(i, j) => {
            let mut out: Vec<K> = (0..n).filter(|&k| k != i).map(|k| lam.diff(0, i, k)).collect();
            out.extend((0..n).filter(|&k| k != j).map(|k| lam.diff(1, j, k)));
            out
        }
    }
}

pub fn tangent_weights(p: &FixedPoint, w: &WeightAssignment) -> Vec<Rational> {
    tangent_weights_in(p, &w.lambda())
}

/// A line subbundle of `f^*TX` over an invariant curve, seen from its `p` end:
/// fiber weight `weight` at `p` and degree `degree` per unit of curve degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Summand<K> {
    pub weight: K,
    pub degree: i32,
    pub tangent: bool,
}

/// Tangent weight `α` at `p` toward `q`, and the splitting of `TX` along the
/// curve into line bundles. `None` if `p` and `q` are not joined by a curve.
pub fn edge_summands<K: Field>(p: &FixedPoint, q: &FixedPoint, lam: &Lambda<K>) -> Option<(K, Vec<Summand<K>>)> {
    let n = lam.n() as u32;
    let factor = curve_between(p, q)?;
    let summand = |weight: K, degree: i32, tangent: bool| Summand {
        weight,
        degree,
        tangent,
    };
    match (*p, *q) {
        (FixedPoint::Proj(i), FixedPoint::Proj(k)) => {
            let alpha = lam.diff(0, i, k);
            let out = (0..n)
                .filter(|&l| l != i)
                .map(|l| {
                    if l == k {
                        summand(alpha.clone(), 2, true)
                    } else {
                        summand(lam.diff(0, i, l), 1, false)
                    }
                })
                .collect();
            Some((alpha, out))
        }
        (FixedPoint::Gr(a, b), FixedPoint::Gr(c, d)) => {
            let j = if a == c || a == d { a } else { b };
            let i = if a == j { b } else { a };
            let k = if c == j { d } else { c };
            let alpha = lam.diff(0, i, k);
            let mut out = Vec::with_capacity(2 * (n as usize - 2));
            for l in (0..n).filter(|&l| l != i && l != j) {
                out.push(if l == k {
                    summand(alpha.clone(), 2, true)
                } else {
                    summand(lam.diff(0, i, l), 1, false)
                });
            }
            for l in (0..n).filter(|&l| l != i && l != j) {
                out.push(if l == k {
                    summand(lam.diff(0, j, k), 1, false)
                } else {
                    summand(lam.diff(0, j, l), 0, false)
                });
            }
            Some((alpha, out))
        }
        (FixedPoint::PP(a, b), FixedPoint::PP(c, d)) => {
            let (h, i, k, stay, fixed) = match factor {
                Factor::First => (0, a, c, 1, b),
                Factor::Second => (1, b, d, 0, a),
            };
            let alpha = lam.diff(h, i, k);
            let mut out = Vec::with_capacity(2 * (n as usize - 1));
            for l in (0..n).filter(|&l| l != i) {
                out.push(if l == k {
                    summand(alpha.clone(), 2, true)
                } else {
                    summand(lam.diff(h, i, l), 1, false)
                });
            }
            for l in (0..n).filter(|&l| l != fixed) {
                out.push(summand(lam.diff(stay, fixed, l), 0, false));
            }
            Some((alpha, out))
        }
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusMode {
    BigTorus,
    SmallTorus,
}

/// Numeric torus weights: `big` rows for the two factors, and the small-torus
/// vector used after specialization.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightAssignment {
    big: [Vec<Rational>; 2],
    small: Vec<Rational>,
    mode: TorusMode,
}

pub const WEIGHT_BOUND: i64 = 1_000_000;

impl WeightAssignment {
    /// Big-torus weights; the small vector defaults to `first`.
    pub fn big(first: Vec<Rational>, second: Vec<Rational>) -> Result<Self, GkmError> {
        if first.len() != second.len() {
            return Err(GkmError::WrongLength {
                expected: first.len(),
                got: second.len(),
            });
        }
        let w = WeightAssignment {
            small: first.clone(),
            big: [first, second],
            mode: TorusMode::BigTorus,
        };
        w.check_distinct()?;
        Ok(w)
    }

    pub fn small(lambda: Vec<Rational>) -> Result<Self, GkmError> {
        let w = WeightAssignment {
            big: [lambda.clone(), lambda.clone()],
            small: lambda,
            mode: TorusMode::SmallTorus,
        };
        w.check_distinct()?;
        Ok(w)
    }

    pub fn from_integers(first: &[i64], second: &[i64]) -> Result<Self, GkmError> {
        let conv = |v: &[i64]| v.iter().map(|&x| Rational::from_i64(x)).collect();
        Self::big(conv(first), conv(second))
    }

    pub fn small_from_integers(lambda: &[i64]) -> Result<Self, GkmError> {
        Self::small(lambda.iter().map(|&x| Rational::from_i64(x)).collect())
    }

    /// Replace the vector used by `specialize`.
    pub fn with_small(mut self, small: Vec<Rational>) -> Result<Self, GkmError> {
        if small.len() != self.n() {
            return Err(GkmError::WrongLength {
                expected: self.n(),
                got: small.len(),
            });
        }
        self.small = small;
        if self.mode == TorusMode::SmallTorus {
            self.big = [self.small.clone(), self.small.clone()];
        }
        Ok(self)
    }

    /// Deterministic draw of big and small weights with `|λ| <= 10^6`.
    pub fn random(n: u32, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut draw = || -> Vec<Rational> {
                (0..n)
                    .map(|_| Rational::from_i64(rng.gen_range(-WEIGHT_BOUND..=WEIGHT_BOUND)))
                    .collect()
            };
            let (a, b, s) = (draw(), draw(), draw());
            if let Ok(w) = Self::big(a, b).and_then(|w| w.with_small(s)) {
                if w.specialize().is_ok() {
                    return w;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.small.len()
    }

    pub fn mode(&self) -> TorusMode {
        self.mode
    }

    pub fn first(&self) -> &[Rational] {
        &self.big[0]
    }

    pub fn second(&self) -> &[Rational] {
        &self.big[1]
    }

    pub fn small_vector(&self) -> &[Rational] {
        &self.small
    }

    /// Erase superscripts: both factors use the small vector.
    pub fn specialize(&self) -> Result<Self, GkmError> {
        Self::small(self.small.clone())
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        let sc = |v: &[Rational]| v.iter().map(|x| x * k).collect::<Vec<_>>();
        WeightAssignment {
            big: [sc(&self.big[0]), sc(&self.big[1])],
            small: sc(&self.small),
            mode: self.mode,
        }
    }

    pub fn lambda<K: Field>(&self) -> Lambda<K> {
        let lift = |v: &[Rational]| v.iter().map(K::from_rational).collect();
        Lambda::new(lift(&self.big[0]), lift(&self.big[1]))
    }

    fn check_distinct(&self) -> Result<(), GkmError> {
        for row in &self.big {
            for (i, x) in row.iter().enumerate() {
                if let Some(j) = row[i + 1..].iter().position(|y| y == x) {
                    return Err(GkmError::GenericityFailure(format!(
                        "lambda_{i} = lambda_{}",
                        i + 1 + j
                    )));
                }
            }
        }
        if self.mode == TorusMode::BigTorus {
            for (i, x) in self.big[0].iter().enumerate() {
                if let Some(j) = self.big[1].iter().position(|y| y == x) {
                    return Err(GkmError::GenericityFailure(format!("lambda^1_{i} = lambda^2_{j}")));
                }
            }
        }
        Ok(())
    }

    /// Certifies that no interpolated edge weight `a λ_x + b λ_y − (a+b) λ_z`
    /// with `a + b <= 2 max_degree` vanishes in any row in use.
    pub fn validate(&self, max_degree: u32) -> Result<(), GkmError> {
        self.check_distinct()?;
        let rows: &[Vec<Rational>] = match self.mode {
            TorusMode::BigTorus => &self.big,
            TorusMode::SmallTorus => &self.big[..1],
        };
        let cap = 2 * max_degree.max(1) as i64;
        for row in rows {
            let n = row.len();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if x == y || y == z || x == z {
                            continue;
                        }
                        for a in 1..=cap {
                            for b in 1..=cap - a {
                                let lhs = &row[x] * Rational::from_i64(a) + &row[y] * Rational::from_i64(b);
                                if lhs == &row[z] * Rational::from_i64(a + b) {
                                    return Err(GkmError::GenericityFailure(format!(
                                        "{a} lambda_{x} + {b} lambda_{y} = {} lambda_{z}",
                                        a + b
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;

    fn brute_edges(target: Target, n: u32) -> usize {
        let pts = fixed_points(target, n).unwrap();
        let mut c = 0;
        for a in &pts {
            for b in &pts {
                if a < b && curve_between(a, b).is_some() {
                    c += 1;
                }
            }
        }
        c
    }

    fn binom(n: u32, k: u32) -> usize {
        (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
    }

    #[test]
    fn counts() {
        assert_eq!(fixed_points(Target::Grassmannian, 4).unwrap().len(), 6);
        assert_eq!(fixed_points(Target::ProductPP, 4).unwrap().len(), 16);
        assert_eq!(fixed_points(Target::ProductPP, 3).unwrap().len(), 9);
        assert_eq!(invariant_edges(Target::Grassmannian, 4).unwrap().len(), 12);
        assert_eq!(invariant_edges(Target::ProductPP, 4).unwrap().len(), 48);
        assert_eq!(invariant_edges(Target::ProductPP, 3).unwrap().len(), 18);
        for n in 3..=6 {
            let gr = invariant_edges(Target::Grassmannian, n).unwrap().len();
            assert_eq!(gr, 3 * binom(n, 3));
            assert_eq!(gr, brute_edges(Target::Grassmannian, n));
            let pp = invariant_edges(Target::ProductPP, n).unwrap().len();
            assert_eq!(pp, (n * n * (n - 1)) as usize);
            assert_eq!(pp, brute_edges(Target::ProductPP, n));
        }
        assert_eq!(
            fixed_points(Target::Grassmannian, 2),
            Err(GkmError::InvalidDimension(2))
        );
    }

    #[test]
    fn diagonal() {
        assert_eq!(is_diagonal(&FixedPoint::PP(2, 2)), Ok(true));
        assert_eq!(is_diagonal(&FixedPoint::PP(0, 1)), Ok(false));
        assert_eq!(is_diagonal(&FixedPoint::Gr(0, 1)), Err(GkmError::WrongTarget));
    }

    #[test]
    fn tangent_counts_and_linearity() {
        let w = WeightAssignment::from_integers(&[3, 7, -2], &[11, -5, 4]).unwrap();
        assert_eq!(tangent_weights(&FixedPoint::PP(0, 1), &w).len(), 4);
        let g = WeightAssignment::small_from_integers(&[3, 7, -2, 19]).unwrap();
        assert_eq!(tangent_weights(&FixedPoint::Gr(0, 1), &g).len(), 4);
        let neg = w.scaled(&rational(-1, 1));
        for p in fixed_points(Target::ProductPP, 3).unwrap() {
            let a = tangent_weights(&p, &w);
            let b = tangent_weights(&p, &neg);
            assert!(a.iter().zip(&b).all(|(x, y)| x == &-y.clone()));
        }
    }

    #[test]
    fn big_torus_points_are_isolated() {
        let w = WeightAssignment::random(5, 17);
        for p in fixed_points(Target::ProductPP, 5).unwrap() {
            let ws = tangent_weights(&p, &w);
            assert!(ws.iter().all(|x| *x != Rational::from_i64(0)));
            for (i, x) in ws.iter().enumerate() {
                assert!(!ws[i + 1..].contains(x));
            }
        }
    }

    #[test]
    fn small_torus_diagonal_doubles_weights() {
        let w = WeightAssignment::random(4, 3).specialize().unwrap();
        for i in 0..4 {
            let ws = tangent_weights(&FixedPoint::PP(i, i), &w);
            for m in (0..4).filter(|&m| m != i) {
                let target = &w.small_vector()[m as usize] - &w.small_vector()[i as usize];
                let hits = ws.iter().filter(|x| **x == -target.clone()).count();
                assert_eq!(hits, 2);
            }
        }
    }

    #[test]
    fn specialization() {
        let primes = [2, 3, 5, 7];
        let w = WeightAssignment::from_integers(&primes, &[11, 13, 17, 19])
            .unwrap()
            .with_small(primes.iter().map(|&p| Rational::from_i64(p)).collect())
            .unwrap();
        let s = w.specialize().unwrap();
        assert_eq!(s.mode(), TorusMode::SmallTorus);
        assert_eq!(s.first(), s.second());
        assert_eq!(s.specialize().unwrap(), s);
        let bad = w.with_small([0, 1, 2, 2].iter().map(|&p| Rational::from_i64(p)).collect());
        assert!(matches!(bad.unwrap().specialize(), Err(GkmError::GenericityFailure(_))));
    }

    #[test]
    fn validation_catches_interpolation_zeros() {
        let w = WeightAssignment::small_from_integers(&[0, 2, 1, 10]).unwrap();
        assert!(w.validate(1).is_err());
        let w = WeightAssignment::small_from_integers(&[0, 3, 1, 10]).unwrap();
        assert!(w.validate(1).is_ok());
        assert!(w.validate(2).is_err());
        assert!(WeightAssignment::random(4, 9).validate(3).is_ok());
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(WeightAssignment::random(4, 5), WeightAssignment::random(4, 5));
        assert_ne!(WeightAssignment::random(4, 5), WeightAssignment::random(4, 6));
    }

    #[test]
    fn summands_have_full_rank() {
        let w = WeightAssignment::random(5, 1);
        let lam = w.lambda::<Rational>();
        for t in [Target::ProductPP, Target::Projective] {
            for e in invariant_edges(t, 5).unwrap() {
                let (alpha, s) = edge_summands(&e.a, &e.b, &lam).unwrap();
                assert_eq!(s.len(), t.dimension(5) as usize);
                assert_eq!(s.iter().filter(|x| x.tangent).count(), 1);
                let mut ws: Vec<Rational> = s.iter().map(|x| x.weight.clone()).collect();
                let mut tw = tangent_weights_in(&e.a, &lam);
                ws.sort();
                tw.sort();
                assert_eq!(ws, tw);
                assert!(s.iter().any(|x| x.tangent && x.weight == alpha));
            }
        }
        let g = w.specialize().unwrap().lambda::<Rational>();
        for e in invariant_edges(Target::Grassmannian, 5).unwrap() {
            for (p, q) in [(e.a, e.b), (e.b, e.a)] {
                let (_, s) = edge_summands(&p, &q, &g).unwrap();
                assert_eq!(s.iter().map(|x| x.degree).sum::<i32>(), 5);
                let mut ws: Vec<Rational> = s.iter().map(|x| x.weight.clone()).collect();
                let mut tw = tangent_weights_in(&p, &g);
                ws.sort();
                tw.sort();
                assert_eq!(ws, tw);
            }
        }
    }
}

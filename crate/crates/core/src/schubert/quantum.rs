//! Small quantum cohomology of Gr(2,n) from the quantum Pieri rule and the
//! two-row Giambelli determinant. Used only as an oracle for three-point
//! invariants; it never sees a torus weight.

use std::collections::BTreeMap;

use super::{partitions_in_box, Partition2, SchubertError};

/// Element of QH*(Gr(2,n)): coefficients keyed by `(q-degree, partition)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct QVector(BTreeMap<(u32, Partition2), i64>);

impl QVector {
    fn basis(mu: Partition2) -> Self {
        let mut v = QVector::default();
        v.add((0, mu), 1);
        v
    }

    fn add(&mut self, key: (u32, Partition2), c: i64) {
        if c == 0 {
            return;
        }
        let e = self.0.entry(key).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&key);
        }
    }

    fn axpy(&mut self, k: i64, other: &QVector) {
        for (&key, &c) in &other.0 {
            self.add(key, k * c);
        }
    }
}

/// σ_r * σ_(a,b): classical Pieri terms plus q times the terms
/// ν with |ν| = a + b + r − n and a − 1 ≥ ν1 ≥ b − 1 ≥ ν2 ≥ 0.
fn quantum_pieri(r: i64, mu: Partition2, n: u32) -> Vec<(u32, Partition2)> {
    let w = (n - 2) as i64;
    let mut out = Vec::new();
    if r < 0 || r > w {
        return out;
    }
    let (a, b) = (mu.mu1() as i64, mu.mu2() as i64);
    let total = a + b + r;
    for c in a..=w {
        let e = total - c;
        if e >= b && e <= a {
            out.push((0, Partition2::new(c as u32, e as u32).unwrap()));
        }
    }
    let qsize = total - n as i64;
    if qsize >= 0 {
        for nu1 in 0..a {
            let nu2 = qsize - nu1;
            if nu1 >= b - 1 && b > nu2 && nu2 >= 0 && nu1 >= nu2 {
                out.push((1, Partition2::new(nu1 as u32, nu2 as u32).unwrap()));
            }
        }
    }
    out
}

fn special_times(r: i64, x: &QVector, n: u32) -> QVector {
    let mut out = QVector::default();
    for (&(q, mu), &c) in &x.0 {
        for (dq, nu) in quantum_pieri(r, mu, n) {
            out.add((q + dq, nu), c);
        }
    }
    out
}

fn basis_times(mu: Partition2, x: &QVector, n: u32) -> QVector {
    let (a, b) = (mu.mu1() as i64, mu.mu2() as i64);
    let mut out = special_times(a, &special_times(b, x, n), n);
    let corr = special_times(a + 1, &special_times(b - 1, x, n), n);
    out.axpy(-1, &corr);
    out
}

/// Three-point genus-zero invariants of Gr(2,n) up to a given degree.
#[derive(Debug, Clone)]
pub struct QuantumTable {
    n: u32,
    d_max: u32,
    values: BTreeMap<(Partition2, Partition2, Partition2, u32), i64>,
}

impl QuantumTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    /// `⟨σ_a, σ_b, σ_c⟩_d`; zero whenever the codimensions do not add up.
    pub fn get(&self, a: Partition2, b: Partition2, c: Partition2, d: u32) -> i64 {
        let mut key = [a, b, c];
        key.sort();
        self.values.get(&(key[0], key[1], key[2], d)).copied().unwrap_or(0)
    }

    /// Nonzero entries with sorted triples.
    pub fn entries(&self) -> impl Iterator<Item = ((Partition2, Partition2, Partition2, u32), i64)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }
}

/// Reads `⟨σ_a, σ_b, σ_c⟩_d` off the quantum product `σ_a * σ_b` as the
/// coefficient of `q^d σ_{c^∨}`.
pub fn quantum_pieri_oracle(n: u32, d_max: u32) -> Result<QuantumTable, SchubertError> {
    let basis = partitions_in_box(n)?;
    let dim = 2 * (n - 2);
    let mut values = BTreeMap::new();
    for (ia, &a) in basis.iter().enumerate() {
        for (ib, &b) in basis.iter().enumerate().skip(ia) {
            let prod = basis_times(a, &QVector::basis(b), n);
            for &c in basis.iter().skip(ib) {
                for d in 0..=d_max {
                    if a.codimension() + b.codimension() + c.codimension() != dim + n * d {
                        continue;
                    }
                    let v = prod.0.get(&(d, c.dual(n))).copied().unwrap_or(0);
                    if v != 0 {
                        values.insert((a, b, c, d), v);
                    }
                }
            }
        }
    }
    Ok(QuantumTable { n, d_max, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schubert::gr_integral;

    fn p(a: u32, b: u32) -> Partition2 {
        Partition2::new(a, b).unwrap()
    }

    fn qprod(a: Partition2, b: Partition2, n: u32) -> QVector {
        basis_times(a, &QVector::basis(b), n)
    }

    #[test]
    fn gr24_products() {
        let mut expect = QVector::basis(p(2, 2));
        expect.add((1, p(0, 0)), 1);
        assert_eq!(qprod(p(1, 0), p(2, 1), 4), expect);
        assert_eq!(qprod(p(1, 1), p(1, 1), 4), QVector::basis(p(2, 2)));
        let mut s2s2 = QVector::basis(p(2, 2));
        s2s2.0.clear();
        s2s2.add((0, p(2, 2)), 1);
        assert_eq!(qprod(p(2, 0), p(2, 0), 4), s2s2);
        // σ_22 * σ_22 = q^2 in Gr(2,4)
        let mut pt2 = QVector::default();
        pt2.add((2, p(0, 0)), 1);
        assert_eq!(qprod(p(2, 2), p(2, 2), 4), pt2);
    }

    #[test]
    fn quantum_product_commutes_and_associates() {
        for n in 3..=6 {
            let basis = partitions_in_box(n).unwrap();
            for &a in &basis {
                for &b in &basis {
                    assert_eq!(qprod(a, b, n), qprod(b, a, n));
                    for &c in &basis {
                        let left = basis_times(a, &qprod(b, c, n), n);
                        let mut right = QVector::default();
                        for (&(q, mu), &k) in &qprod(a, b, n).0 {
                            for (&(q2, nu), &k2) in &basis_times(mu, &QVector::basis(c), n).0 {
                                right.add((q + q2, nu), k * k2);
                            }
                        }
                        assert_eq!(left, right, "n={n} {a} {b} {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn degree_zero_matches_classical() {
        for n in 3..=6 {
            let table = quantum_pieri_oracle(n, 0).unwrap();
            let basis = partitions_in_box(n).unwrap();
            for &a in &basis {
                for &b in &basis {
                    for &c in &basis {
                        assert_eq!(table.get(a, b, c, 0), gr_integral(&[a, b, c], n));
                    }
                }
            }
        }
    }

    #[test]
    fn known_invariants() {
        let t4 = quantum_pieri_oracle(4, 2).unwrap();
        assert_eq!(t4.get(p(1, 0), p(2, 1), p(2, 2), 1), 1);
        // two general lines of P^3 span no plane
        assert_eq!(t4.get(p(2, 2), p(2, 2), p(0, 0), 1), 0);
        assert_eq!(t4.get(p(2, 2), p(2, 2), p(2, 2), 2), 1);
        assert_eq!(t4.get(p(1, 0), p(1, 0), p(1, 0), 1), 0);
        let t3 = quantum_pieri_oracle(3, 2).unwrap();
        // Gr(2,3) is a projective plane: one line through two points
        assert_eq!(t3.get(p(1, 1), p(1, 1), p(1, 0), 1), 1);
        assert!(t4.entries().all(|(_, v)| v > 0));
    }
}

use crate::schubert::Partition2;

/// Virtual dimensions of the stable-map spaces of Gr(k,n) and (P^{n-1})^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub genus: u32,
    pub gr_vdim: i64,
    pub pp_vdim: i64,
    /// `pp_vdim − gr_vdim`; the rank of the twisting bundle in genus zero.
    pub difference: i64,
    pub codim_sum: i64,
    pub matches: bool,
    /// False outside genus zero with `k = 2`.
    pub in_scope: bool,
}

/// `c_1 · β + dim (1 − g) + 3g − 3 + m`.
fn vdim(c1_beta: i64, dim: i64, genus: i64, m: i64) -> i64 {
    c1_beta + dim * (1 - genus) + 3 * genus - 3 + m
}

pub fn dimension_check_genus(
    n: u32,
    k: u32,
    d: u32,
    m: usize,
    insertions: &[Partition2],
    genus: u32,
) -> DimensionReport {
    let (n, k, d, g) = (n as i64, k as i64, d as i64, genus as i64);
    let gr_vdim = vdim(n * d, k * (n - k), g, m as i64);
    let pp_vdim = vdim(n * d, k * (n - 1), g, m as i64);
    let codim_sum: i64 = insertions.iter().map(|p| p.codimension() as i64).sum();
    DimensionReport {
        genus,
        gr_vdim,
        pp_vdim,
        difference: pp_vdim - gr_vdim,
        codim_sum,
        matches: codim_sum == gr_vdim,
        in_scope: genus == 0 && k == 2,
    }
}

pub fn dimension_check(n: u32, k: u32, d: u32, m: usize, insertions: &[Partition2]) -> DimensionReport {
    dimension_check_genus(n, k, d, m, insertions, 0)
}

/// Total codimension an `m`-point degree-`d` invariant of Gr(2,n) needs.
pub fn expected_codimension(n: u32, d: u32, m: usize) -> i64 {
    dimension_check(n, 2, d, m, &[]).gr_vdim
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = dimension_check(4, 2, 1, 3, &[]);
        assert_eq!(r.gr_vdim, 8);
        assert_eq!(r.difference, 2);
        for (n, k, d, m) in [(3, 2, 1, 3), (5, 2, 3, 0), (4, 3, 2, 1), (6, 4, 1, 2)] {
            let r = dimension_check(n, k, d, m, &[]);
            assert_eq!(r.difference, (k * k - k) as i64);
        }
        let g1 = dimension_check_genus(4, 2, 1, 3, &[], 1);
        assert_eq!(g1.difference, 0);
        assert!(!g1.in_scope);
        let p = |a, b| Partition2::new(a, b).unwrap();
        assert!(dimension_check(4, 2, 1, 3, &[p(1, 0), p(2, 1), p(2, 2)]).matches);
        assert!(!dimension_check(4, 2, 1, 3, &[p(1, 0), p(1, 0), p(2, 2)]).matches);
    }
}

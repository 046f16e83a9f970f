//! Canonical byte codes for fixed-locus trees.
//!
//! Layout: target tag, `n`, `m`, then the code of the tree rooted at the
//! vertex giving the lexicographically least code. A rooted code is the root
//! label, its marking count and sorted markings, its child count, and then
//! `(edge degree, child code)` for each child in sorted order. All integers
//! are LEB128 varints.

use super::{Edge, FixedGraph, GraphError};
use crate::gkm::{FixedPoint, Target};

pub const MAX_VERTICES: usize = 256;
const MAX_N: u64 = 1 << 16;
const MAX_MARKS: u64 = 1 << 12;
const MAX_EDGE_DEGREE: u64 = 1 << 20;

fn put_varint(out: &mut Vec<u8>, mut x: u64) {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn varint(&mut self) -> Result<u64, GraphError> {
        let mut x: u64 = 0;
        for shift in (0..64).step_by(7) {
            let b = *self
                .bytes
                .get(self.pos)
                .ok_or_else(|| GraphError::Decode("truncated varint".into()))?;
            self.pos += 1;
            let chunk = (b & 0x7f) as u64;
            if shift == 63 && chunk > 1 {
                return Err(GraphError::Decode("varint overflow".into()));
            }
            x |= chunk << shift;
            if b & 0x80 == 0 {
                return Ok(x);
            }
        }
        Err(GraphError::Decode("varint too long".into()))
    }

    fn bounded(&mut self, max: u64, what: &str) -> Result<u64, GraphError> {
        let x = self.varint()?;
        if x > max {
            return Err(GraphError::Decode(format!("{what} {x} exceeds {max}")));
        }
        Ok(x)
    }

    fn byte(&mut self) -> Result<u8, GraphError> {
        let b = *self
            .bytes
            .get(self.pos)
            .ok_or_else(|| GraphError::Decode("empty input".into()))?;
        self.pos += 1;
        Ok(b)
    }
}

fn put_label(out: &mut Vec<u8>, p: &FixedPoint) {
    match *p {
        FixedPoint::Proj(i) => put_varint(out, i as u64),
        FixedPoint::Gr(i, j) | FixedPoint::PP(i, j) => {
            put_varint(out, i as u64);
            put_varint(out, j as u64);
        }
    }
}

struct Ctx<'a> {
    g: &'a FixedGraph,
    incidence: Vec<Vec<usize>>,
    marks_at: Vec<Vec<usize>>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a FixedGraph) -> Self {
        let mut marks_at = vec![Vec::new(); g.vertex_count()];
        for (i, &v) in g.marks().iter().enumerate() {
            marks_at[v].push(i);
        }
        Ctx {
            g,
            incidence: g.incidence(),
            marks_at,
        }
    }

    /// Rooted code of the subtree at `v` and the order of its rooted
    /// automorphism group.
    fn rooted(&self, v: usize, parent: Option<usize>) -> (Vec<u8>, u64) {
        let mut children: Vec<(u32, Vec<u8>, u64)> = self.incidence[v]
            .iter()
            .map(|&e| &self.g.edges()[e])
            .filter(|e| Some(e.other(v)) != parent)
            .map(|e| {
                let (code, aut) = self.rooted(e.other(v), Some(v));
                (e.degree, code, aut)
            })
            .collect();
        children.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

        let mut out = Vec::new();
        put_label(&mut out, &self.g.label(v));
        put_varint(&mut out, self.marks_at[v].len() as u64);
        for &m in &self.marks_at[v] {
            put_varint(&mut out, m as u64);
        }
        put_varint(&mut out, children.len() as u64);
        let mut aut: u64 = 1;
        let mut run = 0u64;
        for (i, (deg, code, child_aut)) in children.iter().enumerate() {
            put_varint(&mut out, *deg as u64);
            out.extend_from_slice(code);
            aut = aut.checked_mul(*child_aut).expect("automorphism order overflow");
            run = if i > 0 && children[i - 1].0 == *deg && &children[i - 1].1 == code {
                run + 1
            } else {
                1
            };
            aut = aut.checked_mul(run).expect("automorphism order overflow");
        }
        (out, aut)
    }

    fn header(&self) -> Vec<u8> {
        let mut out = vec![self.g.target().tag()];
        put_varint(&mut out, self.g.n() as u64);
        put_varint(&mut out, self.g.marking_count() as u64);
        out
    }

    /// Least rooted code, the number of roots attaining it, and the rooted
    /// automorphism order at one of them.
    fn best(&self) -> (Vec<u8>, u64, u64) {
        let mut best: Option<(Vec<u8>, u64, u64)> = None;
        for v in 0..self.g.vertex_count() {
            let (code, aut) = self.rooted(v, None);
            match &mut best {
                Some((b, count, _)) if *b == code => *count += 1,
                Some((b, _, _)) if *b < code => {}
                _ => best = Some((code, 1, aut)),
            }
        }
        best.expect("nonempty graph")
    }
}

/// Bytes that agree exactly for isomorphic graphs (isomorphisms preserve
/// labels, edge degrees and markings).
pub fn canonical_form(g: &FixedGraph) -> Vec<u8> {
    let ctx = Ctx::new(g);
    let mut out = ctx.header();
    out.extend(ctx.best().0);
    out
}

/// Order of the group of tree automorphisms preserving labels, degrees and
/// markings.
pub fn automorphism_order(g: &FixedGraph) -> u64 {
    let (_, roots, rooted) = Ctx::new(g).best();
    roots * rooted
}

/// Inverse of [`canonical_form`]. Rejects anything that is not the canonical
/// code of a valid graph. The returned graph lists its vertices in code order.
pub fn decode_canonical(bytes: &[u8]) -> Result<FixedGraph, GraphError> {
    let mut r = Reader { bytes, pos: 0 };
    let tag = r.byte()?;
    let target = Target::from_tag(tag).ok_or_else(|| GraphError::Decode(format!("target tag {tag}")))?;
    let n = r.bounded(MAX_N, "n")? as u32;
    let m = r.bounded(MAX_MARKS, "marking count")? as usize;

    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut marks = vec![usize::MAX; m];
    let mut stack: Vec<(usize, u64)> = Vec::new();

    let mut read_vertex =
        |r: &mut Reader, labels: &mut Vec<FixedPoint>, stack: &mut Vec<(usize, u64)>| -> Result<usize, GraphError> {
            if labels.len() >= MAX_VERTICES {
                return Err(GraphError::Decode("too many vertices".into()));
            }
            let idx = |r: &mut Reader| r.bounded(MAX_N, "index").map(|x| x as u32);
            let label = match target {
                Target::Projective => FixedPoint::Proj(idx(r)?),
                Target::Grassmannian => FixedPoint::Gr(idx(r)?, idx(r)?),
                Target::ProductPP => FixedPoint::PP(idx(r)?, idx(r)?),
            };
            let id = labels.len();
            labels.push(label);
            let k = r.bounded(m as u64, "markings at vertex")?;
            for _ in 0..k {
                let i = r.bounded(MAX_MARKS, "marking")? as usize;
                if i >= m || marks[i] != usize::MAX {
                    return Err(GraphError::Decode(format!("bad marking {i}")));
                }
                marks[i] = id;
            }
            let children = r.bounded(MAX_VERTICES as u64, "child count")?;
            stack.push((id, children));
            Ok(id)
        };

    read_vertex(&mut r, &mut labels, &mut stack)?;
    while let Some(top) = stack.last_mut() {
        if top.1 == 0 {
            stack.pop();
            continue;
        }
        top.1 -= 1;
        let parent = top.0;
        let degree = r.bounded(MAX_EDGE_DEGREE, "edge degree")? as u32;
        let child = read_vertex(&mut r, &mut labels, &mut stack)?;
        edges.push(Edge {
            u: parent,
            v: child,
            degree,
        });
    }
    if r.pos != bytes.len() {
        return Err(GraphError::Decode("trailing bytes".into()));
    }
    if marks.contains(&usize::MAX) {
        return Err(GraphError::Decode("unplaced marking".into()));
    }
    let g = FixedGraph::new(target, n, labels, edges, marks).map_err(|e| GraphError::Decode(e.to_string()))?;
    if canonical_form(&g) != bytes {
        return Err(GraphError::Decode("not in canonical form".into()));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkm::FixedPoint::PP;

    fn e(u: usize, v: usize, degree: u32) -> Edge {
        Edge { u, v, degree }
    }

    fn pp(labels: Vec<FixedPoint>, edges: Vec<Edge>, marks: Vec<usize>) -> FixedGraph {
        FixedGraph::new(Target::ProductPP, 4, labels, edges, marks).unwrap()
    }

    /// Count label-, degree- and marking-preserving permutations directly.
    fn brute_aut(g: &FixedGraph) -> u64 {
        let v = g.vertex_count();
        let mut perm: Vec<usize> = (0..v).collect();
        let mut edges: Vec<(usize, usize, u32)> = g
            .edges()
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v), e.degree))
            .collect();
        edges.sort();
        let mut count = 0;
        permute(&mut perm, 0, &mut |p| {
            if (0..v).any(|i| g.label(p[i]) != g.label(i)) {
                return;
            }
            if g.marks().iter().any(|&x| p[x] != x) {
                return;
            }
            let mut img: Vec<(usize, usize, u32)> = g
                .edges()
                .iter()
                .map(|e| (p[e.u].min(p[e.v]), p[e.u].max(p[e.v]), e.degree))
                .collect();
            img.sort();
            if img == edges {
                count += 1;
            }
        });
        count
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn storage_order_does_not_matter() {
        let a = pp(vec![PP(0, 1), PP(2, 1), PP(2, 3)], vec![e(0, 1, 1), e(1, 2, 2)], vec![]);
        let b = pp(vec![PP(2, 3), PP(0, 1), PP(2, 1)], vec![e(2, 0, 2), e(1, 2, 1)], vec![]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn markings_distinguish() {
        let a = pp(vec![PP(0, 1), PP(2, 1)], vec![e(0, 1, 1)], vec![0]);
        let b = pp(vec![PP(0, 1), PP(2, 1)], vec![e(0, 1, 1)], vec![1]);
        assert_ne!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn star_versus_path() {
        let star = pp(
            vec![PP(0, 1), PP(2, 1), PP(2, 1), PP(2, 1)],
            vec![e(0, 1, 1), e(0, 2, 1), e(0, 3, 1)],
            vec![],
        );
        let path = pp(
            vec![PP(2, 1), PP(0, 1), PP(2, 1), PP(0, 1)],
            vec![e(0, 1, 1), e(1, 2, 1), e(2, 3, 1)],
            vec![],
        );
        assert_ne!(canonical_form(&star), canonical_form(&path));
        assert_eq!(automorphism_order(&star), 6);
        assert_eq!(automorphism_order(&path), 1);
    }

    #[test]
    fn aut_examples() {
        let single = pp(vec![PP(0, 1), PP(2, 1)], vec![e(0, 1, 1)], vec![]);
        assert_eq!(automorphism_order(&single), 1);
        let distinct = pp(vec![PP(0, 1), PP(2, 1), PP(3, 1)], vec![e(0, 1, 1), e(0, 2, 1)], vec![]);
        assert_eq!(automorphism_order(&distinct), 1);
        let legs = pp(vec![PP(0, 1), PP(2, 1), PP(2, 1)], vec![e(0, 1, 1), e(0, 2, 1)], vec![]);
        assert_eq!(automorphism_order(&legs), 2);
        assert_eq!(brute_aut(&legs), 2);
        let marked = pp(
            vec![PP(0, 1), PP(2, 1), PP(2, 1)],
            vec![e(0, 1, 1), e(0, 2, 1)],
            vec![1],
        );
        assert_eq!(automorphism_order(&marked), 1);
        let degrees = pp(vec![PP(0, 1), PP(2, 1), PP(2, 1)], vec![e(0, 1, 1), e(0, 2, 2)], vec![]);
        assert_eq!(automorphism_order(&degrees), 1);
    }

    #[test]
    fn symmetric_path_has_a_flip() {
        let g = pp(vec![PP(0, 1), PP(2, 1), PP(0, 1)], vec![e(0, 1, 1), e(1, 2, 1)], vec![]);
        assert_eq!(automorphism_order(&g), 2);
        assert_eq!(brute_aut(&g), 2);
        // even path whose ends swap through the central edge
        let g = pp(
            vec![PP(1, 1), PP(0, 1), PP(0, 2), PP(1, 2)],
            vec![e(0, 1, 1), e(1, 2, 1), e(2, 3, 1)],
            vec![],
        );
        assert_eq!(automorphism_order(&g), brute_aut(&g));
    }

    #[test]
    fn round_trip() {
        let g = pp(
            vec![PP(0, 1), PP(2, 1), PP(2, 3), PP(2, 0)],
            vec![e(0, 1, 1), e(1, 2, 2), e(1, 3, 1)],
            vec![2, 0, 2],
        );
        let bytes = canonical_form(&g);
        let back = decode_canonical(&bytes).unwrap();
        assert_eq!(canonical_form(&back), bytes);
        assert_eq!(automorphism_order(&back), automorphism_order(&g));
    }

    #[test]
    fn decode_rejects_garbage() {
        assert!(decode_canonical(&[]).is_err());
        assert!(decode_canonical(&[9]).is_err());
        let g = pp(vec![PP(0, 1), PP(2, 1)], vec![e(0, 1, 1)], vec![0]);
        let mut bytes = canonical_form(&g);
        bytes.push(0);
        assert!(decode_canonical(&bytes).is_err());
        bytes.pop();
        bytes.pop();
        assert!(decode_canonical(&bytes).is_err());
        // a valid graph whose code is rooted at the wrong vertex
        let ctx = Ctx::new(&g);
        let best = canonical_form(&g);
        for root in 0..2 {
            let mut other = ctx.header();
            other.extend(ctx.rooted(root, None).0);
            assert_eq!(decode_canonical(&other).is_ok(), other == best);
        }
        assert!(decode_canonical(&[1, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0x7f]).is_err());
    }

    #[test]
    fn aut_matches_brute_force_on_random_trees() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let v = rng.gen_range(1..=7);
            let mut labels = vec![PP(rng.gen_range(0..3), rng.gen_range(0..3))];
            let mut edges = Vec::new();
            for w in 1..v {
                let parent = rng.gen_range(0..w);
                let PP(a, b) = labels[parent] else { unreachable!() };
                let label = if rng.gen_bool(0.5) {
                    PP((a + rng.gen_range(1..3)) % 3, b)
                } else {
                    PP(a, (b + rng.gen_range(1..3)) % 3)
                };
                labels.push(label);
                edges.push(e(parent, w, rng.gen_range(1..=2)));
            }
            let m = rng.gen_range(0..3);
            let marks = (0..m).map(|_| rng.gen_range(0..v)).collect();
            let g = FixedGraph::new(Target::ProductPP, 3, labels, edges, marks).unwrap();
            assert_eq!(automorphism_order(&g), brute_aut(&g), "{g}");
            let back = decode_canonical(&canonical_form(&g)).unwrap();
            assert_eq!(brute_aut(&back), brute_aut(&g));
        }
    }
}

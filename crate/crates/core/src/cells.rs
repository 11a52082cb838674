//! Trees of paths (cell labels), critical sets, and classification of
//! explicit representations into cells.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{rank_of_columns, Echelon};
use crate::path::{Path, PathOrder};
use crate::poly::Q;
use crate::quiver::{DimVector, FramedQuiver};
use crate::rep::{generated_dims, NumericRep};

/// A finite lower-closed set of paths. The root is implicit: `paths` holds
/// the non-root members in canonical (application-lex) order, so equality is
/// set equality independent of any [`PathOrder`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subtree {
    paths: Vec<Path>,
}

impl Subtree {
    pub fn root() -> Subtree {
        Subtree { paths: Vec::new() }
    }

    /// Checks composability and lower-closedness.
    pub fn new(fq: &FramedQuiver, paths: Vec<Path>) -> Result<Subtree> {
        let set: BTreeSet<Path> = paths.into_iter().filter(|p| !p.is_root()).collect();
        for p in &set {
            fq.validate_path(p)?;
            let parent = p.parent().expect("non-root");
            if !parent.is_root() && !set.contains(&parent) {
                return Err(Error::InvalidTree(format!(
                    "`{}` is present but its parent `{}` is not",
                    fq.display_path(p),
                    fq.display_path(&parent)
                )));
            }
        }
        Ok(Subtree {
            paths: set.into_iter().collect(),
        })
    }

    /// Comma-separated paths, e.g. `f,af,baf`; the root may be omitted.
    pub fn parse(fq: &FramedQuiver, s: &str) -> Result<Subtree> {
        let paths = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| fq.parse_path(t))
            .collect::<Result<Vec<_>>>()?;
        Subtree::new(fq, paths)
    }

    /// Non-root members in canonical order.
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn contains(&self, p: &Path) -> bool {
        p.is_root() || self.paths.binary_search(p).is_ok()
    }

    pub fn udim(&self, fq: &FramedQuiver) -> DimVector {
        let mut d = vec![0u32; fq.vertex_count()];
        for p in &self.paths {
            d[fq.target(p).expect("non-root")] += 1;
        }
        DimVector::new(d)
    }

    /// Non-root members sorted by `order`.
    pub fn sorted(&self, order: &PathOrder) -> Vec<Path> {
        let mut v = self.paths.clone();
        order.sort(&mut v);
        v
    }

    /// `S_i`, sorted by `order`.
    pub fn slice(&self, fq: &FramedQuiver, i: usize, order: &PathOrder) -> Vec<Path> {
        let mut v: Vec<Path> = self.paths.iter().filter(|p| fq.target(p) == Some(i)).cloned().collect();
        order.sort(&mut v);
        v
    }

    pub fn display(&self, fq: &FramedQuiver, order: &PathOrder) -> String {
        if self.paths.is_empty() {
            return "*".to_string();
        }
        self.sorted(order)
            .iter()
            .map(|p| fq.display_path(p))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A member `v` of `C(S)` together with `k_v = #{u ∈ S_{t(v)} : u < v}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPath {
    pub path: Path,
    pub k: u32,
}

/// `C(S)`: the minimal paths outside `S`, sorted by the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalSet {
    entries: Vec<CriticalPath>,
}

impl CriticalSet {
    pub fn entries(&self) -> &[CriticalPath] {
        &self.entries
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.entries.iter().map(|e| &e.path)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `C(S)_i`, in order.
    pub fn slice<'a>(&'a self, fq: &'a FramedQuiver, i: usize) -> impl Iterator<Item = &'a CriticalPath> {
        self.entries.iter().filter(move |e| fq.target(&e.path) == Some(i))
    }

    pub fn udim(&self, fq: &FramedQuiver) -> Vec<i64> {
        let mut d = vec![0i64; fq.vertex_count()];
        for e in &self.entries {
            d[fq.target(&e.path).expect("non-root")] += 1;
        }
        d
    }
}

pub fn critical_set(fq: &FramedQuiver, s: &Subtree, order: &PathOrder) -> CriticalSet {
    let mut paths: Vec<Path> = std::iter::once(Path::root())
        .chain(s.paths.iter().cloned())
        .flat_map(|u| fq.children(&u))
        .filter(|v| !s.contains(v))
        .collect();
    order.sort(&mut paths);
    let slices: Vec<Vec<Path>> = (0..fq.vertex_count()).map(|i| s.slice(fq, i, order)).collect();
    let entries = paths
        .into_iter()
        .map(|v| {
            let t = fq.target(&v).expect("non-root");
            let k = slices[t].iter().filter(|u| order.less(u, &v)).count() as u32;
            CriticalPath { path: v, k }
        })
        .collect();
    CriticalSet { entries }
}

/// `d(S) = Σ_{v ∈ C(S)} k_v`.
pub fn cell_dim(fq: &FramedQuiver, s: &Subtree, order: &PathOrder) -> u64 {
    critical_set(fq, s, order).entries.iter().map(|e| e.k as u64).sum()
}

/// The total order on trees of equal size: compare the sorted member lists
/// at the first position where they differ.
pub fn compare_trees(order: &PathOrder, a: &Subtree, b: &Subtree) -> Ordering {
    let (sa, sb) = (a.sorted(order), b.sorted(order));
    for (x, y) in sa.iter().zip(&sb) {
        match order.compare(x, y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    sa.len().cmp(&sb.len())
}

/// All trees with `udim = d`, sorted by [`compare_trees`].
///
/// Depth-first: a tree is grown by critical elements larger than its current
/// maximum, so every tree arises exactly once (each of its sorted prefixes is
/// again a tree).
pub fn enumerate_trees(fq: &FramedQuiver, d: &DimVector, order: &PathOrder) -> Result<Vec<Subtree>> {
    fq.check_dim(d)?;
    let expected = fq.critical_dim_vector(d)?;
    let mut out = Vec::new();
    let mut seq = Vec::new();
    let mut counts = vec![0u32; fq.vertex_count()];
    let mut crit = fq.children(&Path::root());
    order.sort(&mut crit);
    grow(fq, d, order, &mut seq, &mut counts, &crit, &mut out);
    for s in &out {
        assert_eq!(
            critical_set(fq, s, order).udim(fq),
            expected.0,
            "critical set dimension must be w - χ(d, -)"
        );
    }
    out.sort_by(|a, b| compare_trees(order, a, b));
    Ok(out)
}

fn grow(
    fq: &FramedQuiver,
    d: &DimVector,
    order: &PathOrder,
    seq: &mut Vec<Path>,
    counts: &mut Vec<u32>,
    crit: &[Path],
    out: &mut Vec<Subtree>,
) {
    if counts.as_slice() == d.entries() {
        let mut paths = seq.clone();
        paths.sort();
        out.push(Subtree { paths });
        return;
    }
    for (idx, v) in crit.iter().enumerate() {
        if seq.last().is_some_and(|m| !order.less(m, v)) {
            continue;
        }
        let t = fq.target(v).expect("non-root");
        if counts[t] >= d.0[t] {
            continue;
        }
        let mut next: Vec<Path> = crit[..idx].iter().chain(&crit[idx + 1..]).cloned().collect();
        next.extend(fq.children(v));
        order.sort(&mut next);
        seq.push(v.clone());
        counts[t] += 1;
        grow(fq, d, order, seq, counts, &next, out);
        counts[t] -= 1;
        seq.pop();
    }
}

/// The unique tree `S` with `M ∈ Z_S`: repeatedly adjoin the smallest
/// critical path whose vector is not yet in the span.
pub fn classify(fq: &FramedQuiver, rep: &NumericRep, order: &PathOrder) -> Result<Subtree> {
    if !order.is_monomial() {
        return Err(Error::NotMonomial("classification"));
    }
    let d = rep.dim().clone();
    let mut spans = vec![Echelon::new(); fq.vertex_count()];
    let mut members: Vec<Path> = Vec::new();
    // critical candidates with their vectors, kept sorted
    let mut crit: Vec<(Path, Vec<Q>)> = fq
        .children(&Path::root())
        .into_iter()
        .map(|p| {
            let v = rep.path_vector(&p);
            (p, v)
        })
        .collect();
    loop {
        crit.sort_by(|a, b| order.compare(&a.0, &b.0));
        let found = crit.iter().position(|(p, v)| {
            let t = fq.target(p).expect("non-root");
            !spans[t].contains(v)
        });
        let Some(idx) = found else { break };
        let (p, v) = crit.remove(idx);
        let t = fq.target(&p).expect("non-root");
        spans[t].insert(&v);
        for child in fq.children(&p) {
            let a = child.last_arrow().expect("non-root") as usize;
            let w = rep.apply(a, &v);
            crit.push((child, w));
        }
        members.push(p);
    }
    let reached: Vec<u32> = spans.iter().map(|s| s.rank() as u32).collect();
    if reached != d.0 {
        return Err(Error::NotStable {
            reached: generated_dims(fq, rep),
            expected: d.0,
        });
    }
    Subtree::new(fq, members)
}

/// `M ∈ Z_S`: the `m_u` (`u ∈ S`) form a basis and every critical `m_v` lies
/// in the span of the `m_u` with `u ∈ S_{t(v)}`, `u < v`.
pub fn in_cell(fq: &FramedQuiver, rep: &NumericRep, s: &Subtree, order: &PathOrder) -> bool {
    if s.udim(fq) != *rep.dim() {
        return false;
    }
    for i in 0..fq.vertex_count() {
        let vs: Vec<Vec<Q>> = s.slice(fq, i, order).iter().map(|u| rep.path_vector(u)).collect();
        let cols: Vec<&[Q]> = vs.iter().map(Vec::as_slice).collect();
        if rank_of_columns(&cols) != rep.dim().0[i] as usize {
            return false;
        }
    }
    let crit = critical_set(fq, s, order);
    crit.entries.iter().all(|e| {
        let t = fq.target(&e.path).expect("non-root");
        let mut span = Echelon::new();
        for u in s.slice(fq, t, order) {
            if order.less(&u, &e.path) {
                span.insert(&rep.path_vector(&u));
            }
        }
        span.contains(&rep.path_vector(&e.path))
    })
}

/// `M ∈ D_S`: for every `v ∈ C(S)` the vectors `m_u`, `u ∈ S(v)`, are
/// linearly dependent, where `S(v) = {u ∈ S_{t(v)} : u < v} ∪ {v}`.
pub fn in_degeneracy_locus(fq: &FramedQuiver, rep: &NumericRep, s: &Subtree, order: &PathOrder) -> bool {
    let crit = critical_set(fq, s, order);
    crit.entries.iter().all(|e| {
        let t = fq.target(&e.path).expect("non-root");
        let mut vs: Vec<Vec<Q>> = s
            .slice(fq, t, order)
            .iter()
            .filter(|u| order.less(u, &e.path))
            .map(|u| rep.path_vector(u))
            .collect();
        vs.push(rep.path_vector(&e.path));
        let cols: Vec<&[Q]> = vs.iter().map(Vec::as_slice).collect();
        rank_of_columns(&cols) < vs.len()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;
    use crate::rep::{int_matrix, random_cell_point, random_stable_reps};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn twoloop() -> FramedQuiver {
        FramedQuiver::loops(2, 1)
    }

    fn names(fq: &FramedQuiver, paths: impl IntoIterator<Item = Path>) -> Vec<String> {
        paths.into_iter().map(|p| fq.display_path(&p)).collect()
    }

    fn shown(fq: &FramedQuiver, trees: &[Subtree], order: &PathOrder) -> Vec<String> {
        trees.iter().map(|t| t.display(fq, order)).collect()
    }

    #[test]
    fn critical_sets_of_small_trees() {
        let fq = twoloop();
        let o = PathOrder::Shortlex;
        let s3 = Subtree::parse(&fq, "f,af,baf").unwrap();
        let c = critical_set(&fq, &s3, &o);
        assert_eq!(names(&fq, c.paths().cloned()), ["bf", "aaf", "abaf", "bbaf"]);

        let c = critical_set(&fq, &Subtree::root(), &o);
        assert_eq!(names(&fq, c.paths().cloned()), ["f"]);
        assert_eq!(c.entries()[0].k, 0);

        let s4 = Subtree::parse(&fq, "f,bf,abf").unwrap();
        let c = critical_set(&fq, &s4, &o);
        assert_eq!(names(&fq, c.paths().cloned()), ["af", "bbf", "aabf", "babf"]);
    }

    #[test]
    fn critical_set_matches_independent_resort() {
        let fq = twoloop();
        let o = PathOrder::Shortlex;
        let s4 = Subtree::parse(&fq, "f,bf,abf").unwrap();
        // oracle: brute-force minimal elements among all paths of length ≤ 4
        let mut expect: Vec<Path> = fq
            .paths_up_to(4)
            .into_iter()
            .filter(|p| !s4.contains(p) && p.parent().is_some_and(|q| s4.contains(&q)))
            .collect();
        expect.sort_by(|a, b| (a.len(), a.arrows()).cmp(&(b.len(), b.arrows())));
        let got: Vec<Path> = critical_set(&fq, &s4, &o).paths().cloned().collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn shortlex_trees_of_dimension_three() {
        let fq = twoloop();
        let o = PathOrder::Shortlex;
        let trees = enumerate_trees(&fq, &DimVector::new(vec![3]), &o).unwrap();
        assert_eq!(
            shown(&fq, &trees, &o),
            ["f,af,bf", "f,af,aaf", "f,af,baf", "f,bf,abf", "f,bf,bbf"]
        );
        let dims: Vec<u64> = trees.iter().map(|t| cell_dim(&fq, t, &o)).collect();
        assert_eq!(dims, [12, 11, 10, 10, 9]);
    }

    #[test]
    fn lex_trees_of_dimension_three() {
        let fq = twoloop();
        let o = PathOrder::Lex;
        let trees = enumerate_trees(&fq, &DimVector::new(vec![3]), &o).unwrap();
        assert_eq!(
            shown(&fq, &trees, &o),
            ["f,af,aaf", "f,af,baf", "f,af,bf", "f,bf,abf", "f,bf,bbf"]
        );
        let dims: Vec<u64> = trees.iter().map(|t| cell_dim(&fq, t, &o)).collect();
        assert_eq!(dims, [12, 11, 10, 10, 9]);
    }

    #[test]
    fn empty_and_trivial_cases() {
        let fq = FramedQuiver::vertex_only(1);
        assert!(enumerate_trees(&fq, &DimVector::new(vec![2]), &PathOrder::Shortlex)
            .unwrap()
            .is_empty());
        let trees = enumerate_trees(&fq, &DimVector::new(vec![0]), &PathOrder::Shortlex).unwrap();
        assert_eq!(trees, vec![Subtree::root()]);
        assert_eq!(cell_dim(&fq, &Subtree::root(), &PathOrder::Shortlex), 0);
    }

    #[test]
    fn cell_dims_from_tables() {
        let fq = twoloop();
        let o = PathOrder::Shortlex;
        assert_eq!(cell_dim(&fq, &Subtree::parse(&fq, "f,af,bf").unwrap(), &o), 12);
        assert_eq!(cell_dim(&fq, &Subtree::parse(&fq, "f,bf,bbf").unwrap(), &o), 9);

        let two = FramedQuiver::loops(2, 2);
        assert_eq!(cell_dim(&two, &Subtree::parse(&two, "e,f,bf").unwrap(), &o), 12);
        assert_eq!(cell_dim(&two, &Subtree::parse(&two, "e,ae,be").unwrap(), &o), 13);
    }

    #[test]
    fn rejects_non_trees() {
        let fq = twoloop();
        assert!(matches!(Subtree::parse(&fq, "f,abf"), Err(Error::InvalidTree(_))));
        assert!(Subtree::parse(&fq, "f,af").is_ok());
    }

    fn jordan_rep(fq: &FramedQuiver) -> NumericRep {
        let mut rep = NumericRep::zero(fq, &DimVector::new(vec![3])).unwrap();
        let b = fq.arrow_index("b").unwrap();
        rep.set_matrix(b, int_matrix(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]))
            .unwrap();
        rep.set_matrix(0, int_matrix(&[&[1], &[0], &[0]])).unwrap();
        rep
    }

    #[test]
    fn classify_jordan_block() {
        let fq = twoloop();
        let rep = jordan_rep(&fq);
        let s = classify(&fq, &rep, &PathOrder::Shortlex).unwrap();
        assert_eq!(s.display(&fq, &PathOrder::Shortlex), "f,bf,bbf");
        assert!(in_cell(&fq, &rep, &s, &PathOrder::Shortlex));
        assert!(matches!(
            classify(&fq, &rep, &PathOrder::Lex),
            Err(Error::NotMonomial(_))
        ));
    }

    #[test]
    fn jordan_block_degeneracy_against_explicit_ranks() {
        let fq = twoloop();
        let o = PathOrder::Shortlex;
        let rep = jordan_rep(&fq);
        let s1 = Subtree::parse(&fq, "f,af,bf").unwrap();
        // oracle: every critical path of (f,af,bf) is preceded by f, af, bf;
        // four vectors in a 3-dimensional space are always dependent
        let m = |s: &str| rep.path_vector(&fq.parse_path(s).unwrap());
        for v in ["aaf", "baf", "abf", "bbf"] {
            let cols = [m("f"), m("af"), m("bf"), m(v)];
            let refs: Vec<&[Q]> = cols.iter().map(Vec::as_slice).collect();
            assert!(rank_of_columns(&refs) < 4);
        }
        assert!(in_degeneracy_locus(&fq, &rep, &s1, &o));
        // (f,af,aaf): v = bf needs rank{m_f, m_af, m_bf} < 3, which holds as m_af = 0
        let s2 = Subtree::parse(&fq, "f,af,aaf").unwrap();
        assert!(in_degeneracy_locus(&fq, &rep, &s2, &o));
        // (f,bf,bbf) is the cell of the rep itself
        let s5 = Subtree::parse(&fq, "f,bf,bbf").unwrap();
        assert!(in_degeneracy_locus(&fq, &rep, &s5, &o));
        // (f,bf,abf): S(af) = {f, af} is dependent since m_af = 0, and
        // abf < bbf puts four vectors into S(bbf)
        let s4 = Subtree::parse(&fq, "f,bf,abf").unwrap();
        assert!(in_degeneracy_locus(&fq, &rep, &s4, &o));
    }

    #[test]
    fn degenerate_locus_trivial_for_zero_dim() {
        let fq = twoloop();
        let rep = NumericRep::zero(&fq, &DimVector::new(vec![0])).unwrap();
        assert!(in_degeneracy_locus(&fq, &rep, &Subtree::root(), &PathOrder::Shortlex));
        assert_eq!(classify(&fq, &rep, &PathOrder::Shortlex).unwrap(), Subtree::root());
    }

    #[test]
    fn classify_dimension_one() {
        let fq = FramedQuiver::loops(1, 2);
        let mut rep = NumericRep::zero(&fq, &DimVector::new(vec![1])).unwrap();
        rep.set_matrix(1, int_matrix(&[&[3]])).unwrap();
        let s = classify(&fq, &rep, &PathOrder::Shortlex).unwrap();
        assert_eq!(s.display(&fq, &PathOrder::Shortlex), "f");
    }

    #[test]
    fn classify_unstable_fails() {
        let fq = twoloop();
        let mut rep = NumericRep::zero(&fq, &DimVector::new(vec![2])).unwrap();
        rep.set_matrix(0, int_matrix(&[&[1], &[0]])).unwrap();
        match classify(&fq, &rep, &PathOrder::Shortlex) {
            Err(Error::NotStable { reached, expected }) => {
                assert_eq!(reached, vec![1]);
                assert_eq!(expected, vec![2]);
            }
            other => panic!("expected instability, got {other:?}"),
        }
    }

    #[test]
    fn generic_rep_lands_in_top_cell() {
        let fq = twoloop();
        let o = PathOrder::Shortlex;
        let mut rep = NumericRep::zero(&fq, &DimVector::new(vec![3])).unwrap();
        rep.set_matrix(0, int_matrix(&[&[1], &[2], &[-1]])).unwrap();
        rep.set_matrix(1, int_matrix(&[&[0, 1, 3], &[2, -1, 1], &[1, 1, 2]]))
            .unwrap();
        rep.set_matrix(2, int_matrix(&[&[1, 0, 2], &[-3, 1, 1], &[2, 2, 0]]))
            .unwrap();
        // oracle: (m_f, m_af, m_bf) independent
        let m = |s: &str| rep.path_vector(&fq.parse_path(s).unwrap());
        let cols = [m("f"), m("af"), m("bf")];
        let refs: Vec<&[Q]> = cols.iter().map(Vec::as_slice).collect();
        assert_eq!(rank_of_columns(&refs), 3);
        let s = classify(&fq, &rep, &o).unwrap();
        assert_eq!(s.display(&fq, &o), "f,af,bf");
        assert_eq!(cell_dim(&fq, &s, &o), 12);
        // S(bf) = {f, af, bf} is independent, so M avoids every D_S with S > S_1
        for t in ["f,af,aaf", "f,af,baf", "f,bf,abf", "f,bf,bbf"] {
            let t = Subtree::parse(&fq, t).unwrap();
            assert!(!in_degeneracy_locus(&fq, &rep, &t, &o));
        }
    }

    #[test]
    fn chart_points_classify_to_their_cell() {
        let fq = twoloop();
        let o = PathOrder::Shortlex;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for s in enumerate_trees(&fq, &DimVector::new(vec![3]), &o).unwrap() {
            for _ in 0..5 {
                let rep = random_cell_point(&fq, &s, &o, &mut rng).unwrap();
                assert!(in_cell(&fq, &rep, &s, &o));
                assert!(in_degeneracy_locus(&fq, &rep, &s, &o));
                assert_eq!(classify(&fq, &rep, &o).unwrap(), s);
            }
        }
    }

    #[test]
    fn cells_partition_random_reps() {
        let o = PathOrder::Shortlex;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (fq, d) in [
            (twoloop(), vec![3]),
            (FramedQuiver::a2(2, 0), vec![2, 1]),
            (FramedQuiver::loops(1, 2), vec![2]),
        ] {
            let d = DimVector::new(d);
            let trees = enumerate_trees(&fq, &d, &o).unwrap();
            for rep in random_stable_reps(&fq, &d, &o, 20, &mut rng).unwrap() {
                let s = classify(&fq, &rep, &o).unwrap();
                let hits: Vec<&Subtree> = trees.iter().filter(|t| in_cell(&fq, &rep, t, &o)).collect();
                assert_eq!(hits, vec![&s]);
                for t in &trees {
                    if in_degeneracy_locus(&fq, &rep, t, &o) {
                        assert_ne!(compare_trees(&o, &s, t), Ordering::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn weighted_order_classification() {
        let fq = twoloop();
        let o = PathOrder::weighted(&fq, vec![q(1), q(2), q(1)]).unwrap();
        let d = DimVector::new(vec![3]);
        let trees = enumerate_trees(&fq, &d, &o).unwrap();
        assert_eq!(trees.len(), 5);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for rep in random_stable_reps(&fq, &d, &o, 10, &mut rng).unwrap() {
            let s = classify(&fq, &rep, &o).unwrap();
            assert!(in_cell(&fq, &rep, &s, &o));
        }
    }

    #[test]
    fn invariants_over_fixtures() {
        let fixtures = [
            (FramedQuiver::loops(2, 1), vec![4]),
            (FramedQuiver::loops(3, 1), vec![3]),
            (FramedQuiver::loops(1, 2), vec![3]),
            (FramedQuiver::vertex_only(4), vec![2]),
            (FramedQuiver::a2(2, 0), vec![2, 2]),
            (FramedQuiver::a2(1, 1), vec![1, 2]),
        ];
        for (fq, d) in fixtures {
            let d = DimVector::new(d);
            let hilb = fq.hilb_dim(&d).unwrap();
            let mut multisets = Vec::new();
            for o in [PathOrder::Shortlex, PathOrder::Lex] {
                let trees = enumerate_trees(&fq, &d, &o).unwrap();
                let mut dims: Vec<u64> = trees.iter().map(|t| cell_dim(&fq, t, &o)).collect();
                if !trees.is_empty() {
                    assert_eq!(*dims.iter().max().unwrap() as i64, hilb);
                }
                for w in trees.windows(2) {
                    assert_eq!(compare_trees(&o, &w[0], &w[1]), Ordering::Less);
                }
                dims.sort();
                multisets.push(dims);
            }
            assert_eq!(multisets[0], multisets[1]);
        }
    }
}

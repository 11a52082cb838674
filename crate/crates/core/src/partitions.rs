//! Multipartitions satisfying condition (Phi) and their bijection with trees.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cells::{compare_trees, critical_set, Subtree};
use crate::error::{Error, Result};
use crate::path::{Path, PathOrder};
use crate::quiver::{DimVector, FramedQuiver};

/// One weakly decreasing list per vertex, of length `d_i` (trailing zeros
/// kept).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiPartition(pub Vec<Vec<u32>>);

impl MultiPartition {
    pub fn empty(d: &DimVector) -> MultiPartition {
        MultiPartition(d.0.iter().map(|&n| vec![0; n as usize]).collect())
    }

    pub fn shape(&self) -> DimVector {
        DimVector::new(self.0.iter().map(|p| p.len() as u32).collect())
    }

    /// `|λ|`.
    pub fn size(&self) -> u64 {
        self.0.iter().flatten().map(|&x| x as u64).sum()
    }

    pub fn parts(&self, i: usize) -> &[u32] {
        &self.0[i]
    }

    /// `λ^{(i)}_k` for `1 ≤ k ≤ d_i`; `None` stands for `λ_0 = +∞`.
    fn part(&self, i: usize, k: usize) -> Option<u32> {
        (k > 0).then(|| self.0[i][k - 1])
    }

    fn check_shape(&self, d: &DimVector) -> Result<()> {
        if self.shape() != *d {
            return Err(Error::arg(format!("multipartition {self} does not have shape ({d})")));
        }
        if self.0.iter().any(|p| p.windows(2).any(|w| w[0] < w[1])) {
            return Err(Error::arg(format!("{self} is not weakly decreasing")));
        }
        Ok(())
    }

    /// Reads `[2,1][0]` or `(2,1)`; groups may be shorter than `d_i` and are
    /// padded with zeros.
    pub fn parse(s: &str, d: &DimVector) -> Result<MultiPartition> {
        let groups = parse_groups(s)?;
        if groups.len() != d.len() {
            return Err(Error::arg(format!(
                "`{s}` has {} groups, the quiver has {} vertices",
                groups.len(),
                d.len()
            )));
        }
        let mut out = Vec::with_capacity(groups.len());
        for (g, &n) in groups.into_iter().zip(&d.0) {
            let mut g: Vec<u32> = g.into_iter().filter(|&x| x > 0).collect();
            if g.len() > n as usize {
                return Err(Error::arg(format!(
                    "`{s}` has more nonzero parts than the dimension allows"
                )));
            }
            g.resize(n as usize, 0);
            out.push(g);
        }
        let lam = MultiPartition(out);
        lam.check_shape(d)?;
        Ok(lam)
    }
}

/// Splits `[2,1][0]` into `[[2,1],[0]]`; parentheses work as brackets.
pub fn parse_groups(s: &str) -> Result<Vec<Vec<u32>>> {
    let mut groups = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let close = match rest.chars().next() {
            Some('[') => ']',
            Some('(') => ')',
            _ => return Err(Error::arg(format!("expected `[` or `(` in `{s}`"))),
        };
        let end = rest
            .find(close)
            .ok_or_else(|| Error::arg(format!("unbalanced brackets in `{s}`")))?;
        let body = &rest[1..end];
        let parts = body
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::arg(format!("bad part `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<u32>>>()?;
        groups.push(parts);
        rest = rest[end + 1..].trim_start();
    }
    if groups.is_empty() {
        return Err(Error::arg("empty multipartition string"));
    }
    Ok(groups)
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            let nz: Vec<String> = p.iter().filter(|&&x| x > 0).map(u32::to_string).collect();
            if nz.is_empty() && !p.is_empty() {
                f.write_str("[0]")?;
            } else {
                write!(f, "[{}]", nz.join(","))?;
            }
        }
        Ok(())
    }
}

/// Condition (Phi): for all `0 ≤ β < d` some vertex has
/// `λ^{(i)}_{d_i−β_i} < c(β)_i`.
pub fn satisfies_phi(fq: &FramedQuiver, d: &DimVector, lam: &MultiPartition) -> Result<bool> {
    fq.check_dim(d)?;
    lam.check_shape(d)?;
    Ok(phi_unchecked(fq, d, lam))
}

fn phi_unchecked(fq: &FramedQuiver, d: &DimVector, lam: &MultiPartition) -> bool {
    d.box_below().iter().filter(|b| *b != d).all(|beta| {
        let c = fq.critical_dim_vector(beta).expect("shape checked");
        (0..d.len()).any(|i| {
            let k = (d.0[i] - beta.0[i]) as usize;
            lam.part(i, k).is_some_and(|x| (x as i64) < c.0[i])
        })
    })
}

/// All of `S(d)`, found by brute force over the box `λ^{(i)}_1 ≤ max(0, c(d)_i)`
/// and sorted by the order induced from trees (for one vertex, this is
/// [`compare_partitions`] whatever the path order).
pub fn enumerate_partitions(fq: &FramedQuiver, d: &DimVector, order: &PathOrder) -> Result<Vec<MultiPartition>> {
    let mut out = partitions_unordered(fq, d)?;
    if fq.vertex_count() == 1 {
        out.sort_by(|a, b| compare_partitions(a, b).expect("single vertex"));
    } else {
        let mut keyed = out
            .into_iter()
            .map(|lam| partition_to_tree(fq, &lam, order).map(|t| (t, lam)))
            .collect::<Result<Vec<_>>>()?;
        keyed.sort_by(|a, b| compare_trees(order, &a.0, &b.0));
        out = keyed.into_iter().map(|(_, lam)| lam).collect();
    }
    Ok(out)
}

/// `S(d)` in enumeration order (lexicographic in the box), without the
/// tree round trip that sorting needs.
pub fn partitions_unordered(fq: &FramedQuiver, d: &DimVector) -> Result<Vec<MultiPartition>> {
    fq.check_dim(d)?;
    let c = fq.critical_dim_vector(d)?;
    let per_vertex: Vec<Vec<Vec<u32>>> =
        d.0.iter()
            .zip(&c.0)
            .map(|(&n, &ci)| decreasing_sequences(n as usize, ci.max(0) as u32))
            .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_vertex.len()];
    'outer: loop {
        let lam = MultiPartition(idx.iter().zip(&per_vertex).map(|(&k, opts)| opts[k].clone()).collect());
        if phi_unchecked(fq, d, &lam) {
            for (i, p) in lam.0.iter().enumerate() {
                assert!(
                    p.first().is_none_or(|&x| x as i64 <= c.0[i]),
                    "largest part bounded by the critical dimension"
                );
            }
            out.push(lam);
        }
        for (k, opts) in idx.iter_mut().zip(&per_vertex) {
            *k += 1;
            if *k < opts.len() {
                continue 'outer;
            }
            *k = 0;
        }
        break;
    }
    Ok(out)
}

/// Weakly decreasing sequences of length `n` with entries in `0..=max`.
fn decreasing_sequences(n: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let hi = cur.last().copied().unwrap_or(max);
        for x in 0..=hi {
            cur.push(x);
            go(n, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `λ^{(i)}_{d_i−k} = #{v ∈ C(S)_i : v < u_{i,k+1}}`.
pub fn tree_to_partition(fq: &FramedQuiver, s: &Subtree, order: &PathOrder) -> MultiPartition {
    let crit = critical_set(fq, s, order);
    let parts = (0..fq.vertex_count())
        .map(|i| {
            let slice = s.slice(fq, i, order);
            let n = slice.len();
            let mut lam = vec![0u32; n];
            for (k, u) in slice.iter().enumerate() {
                lam[n - k - 1] = crit.slice(fq, i).filter(|v| order.less(&v.path, u)).count() as u32;
            }
            lam
        })
        .collect();
    MultiPartition(parts)
}

/// Inverse of [`tree_to_partition`]: starting from the root, repeatedly take
/// for each eligible vertex `i` the `(m^{(i)}_{β_i}+1)`-st element of
/// `C(S')_i`, and adjoin the smallest of these.
pub fn partition_to_tree(fq: &FramedQuiver, lam: &MultiPartition, order: &PathOrder) -> Result<Subtree> {
    let d = lam.shape();
    fq.check_dim(&d)?;
    lam.check_shape(&d)?;
    if !phi_unchecked(fq, &d, lam) {
        return Err(Error::NotInS(lam.to_string()));
    }
    let mut members: Vec<Path> = Vec::new();
    let mut tree = Subtree::root();
    let mut beta = vec![0u32; d.len()];
    while beta != d.0 {
        let crit = critical_set(fq, &tree, order);
        let mut best: Option<(Path, usize)> = None;
        for (i, &di) in d.0.iter().enumerate() {
            if beta[i] >= di {
                continue;
            }
            let m = lam.0[i][(di - beta[i]) as usize - 1] as usize;
            let Some(v) = crit.slice(fq, i).nth(m) else {
                continue;
            };
            if best.as_ref().is_none_or(|(b, _)| order.less(&v.path, b)) {
                best = Some((v.path.clone(), i));
            }
        }
        let (v, i) = best.ok_or_else(|| Error::NotInS(lam.to_string()))?;
        members.push(v);
        beta[i] += 1;
        tree = Subtree::new(fq, members.clone())?;
    }
    Ok(tree)
}

/// For one vertex: `λ < μ` iff `λ_k < μ_k` at the largest `k` where they
/// differ. Multipartitions on several vertices have no order-free
/// comparison; use [`compare_partitions_induced`].
pub fn compare_partitions(lam: &MultiPartition, mu: &MultiPartition) -> Result<Ordering> {
    if lam.shape() != mu.shape() {
        return Err(Error::arg(format!("{lam} and {mu} have different shapes")));
    }
    if lam.0.len() != 1 {
        return Err(Error::arg("order-free partition comparison needs a one-vertex quiver"));
    }
    let (a, b) = (&lam.0[0], &mu.0[0]);
    Ok(a.iter()
        .zip(b)
        .rev()
        .find(|(x, y)| x != y)
        .map_or(Ordering::Equal, |(x, y)| x.cmp(y)))
}

/// The order transported from trees through the bijection for `order`.
pub fn compare_partitions_induced(
    fq: &FramedQuiver,
    order: &PathOrder,
    lam: &MultiPartition,
    mu: &MultiPartition,
) -> Result<Ordering> {
    let s = partition_to_tree(fq, lam, order)?;
    let t = partition_to_tree(fq, mu, order)?;
    Ok(compare_trees(order, &s, &t))
}

/// `w·d − χ(d,d) − |λ|`.
pub fn partition_cell_dim(fq: &FramedQuiver, d: &DimVector, lam: &MultiPartition) -> Result<i64> {
    Ok(fq.hilb_dim(d)? - lam.size() as i64)
}

/// The smallest dimension vector (by total, then entrywise) that makes the
/// given partition groups a member of `S(d)`; used when the CLI is not told
/// `--dim`. Search stops at `#parts + |λ| + 1` per vertex.
pub fn infer_dimension(fq: &FramedQuiver, s: &str) -> Result<(DimVector, MultiPartition)> {
    let groups = parse_groups(s)?;
    if groups.len() != fq.vertex_count() {
        return Err(Error::arg(format!(
            "`{s}` has {} groups, the quiver has {} vertices",
            groups.len(),
            fq.vertex_count()
        )));
    }
    let lower: Vec<u32> = groups
        .iter()
        .map(|g| g.iter().filter(|&&x| x > 0).count() as u32)
        .collect();
    let size: u32 = groups.iter().flatten().sum();
    let upper = DimVector::new(lower.iter().map(|&l| l + size + 1).collect());
    let mut candidates: Vec<DimVector> = upper
        .box_below()
        .into_iter()
        .filter(|b| b.0.iter().zip(&lower).all(|(x, l)| x >= l))
        .collect();
    candidates.sort_by_key(|b| (b.total(), b.0.clone()));
    for d in candidates {
        let lam = MultiPartition::parse(s, &d)?;
        if phi_unchecked(fq, &d, &lam) {
            return Ok((d, lam));
        }
    }
    Err(Error::NotInS(s.to_string()))
}

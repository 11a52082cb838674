//! The cohomological Hall algebra of a quiver as a shuffle algebra, its
//! module of framed stable representations, and the check that tautological
//! monomials give a basis.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{subsets, Echelon};
use crate::partitions::{partitions_unordered, MultiPartition};
use crate::poly::{Monomial, Poly, Q};
use crate::quiver::{DimVector, FramedQuiver, Quiver};

/// A polynomial in the variables `x_{i,k}` (`1 ≤ k ≤ d_i`), symmetric within
/// each vertex block. Variables are laid out block by block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    dim: DimVector,
    poly: Poly,
}

/// Elements of the CoHA are symmetric polynomials tagged with their
/// dimension vector.
pub type CohaElement = SymPoly;

fn offsets(d: &DimVector) -> Vec<usize> {
    d.0.iter()
        .scan(0usize, |acc, &n| {
            let o = *acc;
            *acc += n as usize;
            Some(o)
        })
        .collect()
}

impl SymPoly {
    /// Checks block symmetry.
    pub fn new(dim: DimVector, poly: Poly) -> Result<SymPoly> {
        assert_eq!(poly.nvars(), dim.total() as usize, "variable count");
        let s = SymPoly { dim, poly };
        if let Some(i) = s.asymmetric_block() {
            return Err(Error::NotSymmetric(i));
        }
        Ok(s)
    }

    pub(crate) fn new_unchecked(dim: DimVector, poly: Poly) -> SymPoly {
        debug_assert_eq!(poly.nvars(), dim.total() as usize);
        SymPoly { dim, poly }
    }

    pub fn one(dim: &DimVector) -> SymPoly {
        SymPoly::new_unchecked(dim.clone(), Poly::one(dim.total() as usize))
    }

    pub fn zero(dim: &DimVector) -> SymPoly {
        SymPoly::new_unchecked(dim.clone(), Poly::zero(dim.total() as usize))
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.poly.degree()
    }

    /// Index of the variable `x_{i,k}` (`k` is 1-based).
    pub fn var_index(dim: &DimVector, i: usize, k: usize) -> usize {
        offsets(dim)[i] + k - 1
    }

    /// First vertex whose block is not symmetric, if any. Invariance under
    /// adjacent transpositions suffices.
    pub fn asymmetric_block(&self) -> Option<usize> {
        let offs = offsets(&self.dim);
        for (i, &n) in self.dim.0.iter().enumerate() {
            for k in 1..n as usize {
                let (a, b) = (offs[i] + k - 1, offs[i] + k);
                for (m, c) in self.poly.terms() {
                    if m[a] == m[b] {
                        continue;
                    }
                    let mut sw = m.clone();
                    sw.swap(a, b);
                    if self.poly.coeff(&sw) != *c {
                        return Some(i);
                    }
                }
            }
        }
        None
    }

    pub fn display(&self) -> String {
        let names = var_names(&self.dim);
        self.poly.display_with(&names).to_string()
    }

    pub fn scale(&self, c: &Q) -> SymPoly {
        SymPoly::new_unchecked(self.dim.clone(), self.poly.scale(c))
    }

    pub fn add(&self, other: &SymPoly) -> Result<SymPoly> {
        same_dim(&self.dim, &other.dim)?;
        Ok(SymPoly::new_unchecked(self.dim.clone(), &self.poly + &other.poly))
    }
}

/// `x[i,k]` names, or `x[k]` on one-vertex quivers.
pub fn var_names(d: &DimVector) -> Vec<String> {
    let mut names = Vec::new();
    for (i, &n) in d.0.iter().enumerate() {
        for k in 1..=n {
            names.push(if d.len() == 1 {
                format!("x[{k}]")
            } else {
                format!("x[{i},{k}]")
            });
        }
    }
    names
}

fn same_dim(a: &DimVector, b: &DimVector) -> Result<()> {
    if a != b {
        return Err(Error::arg(format!("dimension vectors ({a}) and ({b}) differ")));
    }
    Ok(())
}

/// Ordinary product in `H_d`.
pub fn cup_product(f: &SymPoly, g: &SymPoly) -> Result<SymPoly> {
    same_dim(&f.dim, &g.dim)?;
    Ok(SymPoly::new_unchecked(f.dim.clone(), &f.poly * &g.poly))
}

/// `e^w_d = Π_i (x_{i,1} ⋯ x_{i,d_i})^{w_i}`.
pub fn framing_idempotent(fq: &FramedQuiver, d: &DimVector) -> SymPoly {
    let mut m: Monomial = Vec::with_capacity(d.total() as usize);
    for (i, &n) in d.0.iter().enumerate() {
        m.extend(std::iter::repeat_n(fq.framing().0[i], n as usize));
    }
    SymPoly::new_unchecked(d.clone(), Poly::monomial(m, Q::one()))
}

/// `e_k(x_{i,1}, …, x_{i,d_i})` as an element of `H_d`.
pub fn elementary(d: &DimVector, i: usize, k: usize) -> SymPoly {
    let n = d.total() as usize;
    let off = offsets(d)[i];
    let mut p = Poly::zero(n);
    for s in subsets(d.0[i] as usize, k) {
        let mut m = vec![0; n];
        for j in s {
            m[off + j] = 1;
        }
        p.add_term(m, Q::one());
    }
    SymPoly::new_unchecked(d.clone(), p)
}

/// The shuffle product `H_d ⊗ H_e → H_{d+e}`.
///
/// The shuffle sum of `f(x_A) g(x_B) Π (x_b − x_a)^{−χ(e_i,e_j)}` is computed
/// from the single polynomial `P = f(x_A) g(x_B) Π_{exponent ≥ 0} (x_b − x_a)^e`
/// for the identity shuffle. On a vertex with loops the sum is the
/// symmetrisation of `P` divided by `a! b!`. On a loopless vertex the
/// exponent is `−1` and the sum equals `Alt(P · x_A^δ x_B^δ) / V`, with `V`
/// the Vandermonde of the block; each sorted exponent then contributes one
/// Schur polynomial, so no division is ever carried out.
pub fn shuffle_product(q: &Quiver, f: &SymPoly, g: &SymPoly) -> SymPoly {
    let nv = q.vertex_count();
    assert_eq!(f.dim.len(), nv, "dimension vector of f");
    assert_eq!(g.dim.len(), nv, "dimension vector of g");
    let total = f.dim.add(&g.dim);
    let n = total.total() as usize;
    let offs = offsets(&total);
    let exps: Vec<Vec<i64>> = (0..nv)
        .map(|i| (0..nv).map(|j| -q.euler_simple(i, j)).collect())
        .collect();
    let loopless: Vec<bool> = (0..nv).map(|i| exps[i][i] < 0).collect();
    for (i, row) in exps.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            assert!(e >= 0 || (i == j && e == -1), "unexpected Euler form value");
        }
    }
    if f.is_zero() || g.is_zero() {
        return SymPoly::zero(&total);
    }

    // identity shuffle: f takes the first a_i slots of each block
    let offs_ref = &offs;
    let a_pos = |i: usize| (0..f.dim.0[i] as usize).map(move |p| offs_ref[i] + p);
    let b_pos = |i: usize| (f.dim.0[i] as usize..total.0[i] as usize).map(move |p| offs_ref[i] + p);
    let f_map: Vec<usize> = (0..nv).flat_map(a_pos).collect();
    let g_map: Vec<usize> = (0..nv).flat_map(b_pos).collect();

    let mut p = Poly::one(n);
    for (i, row) in exps.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            if e <= 0 {
                continue;
            }
            for a in a_pos(i) {
                for b in b_pos(j) {
                    let l = &Poly::var(n, b) - &Poly::var(n, a);
                    p = &p * &l.pow(e as u32);
                }
            }
        }
    }
    p = &p * &f.poly.rename(&f_map, n);
    p = &p * &g.poly.rename(&g_map, n);

    let mut shift = vec![0u32; n];
    for i in (0..nv).filter(|&i| loopless[i]) {
        for (k, pos) in a_pos(i).enumerate() {
            shift[pos] = k as u32;
        }
        for (k, pos) in b_pos(i).enumerate() {
            shift[pos] = k as u32;
        }
    }

    // collect sorted exponent blocks; loopless blocks carry the sign of the sort
    let mut keyed: HashMap<Monomial, Q> = HashMap::new();
    'terms: for (m, c) in p.terms() {
        let mut key: Monomial = m.iter().zip(&shift).map(|(x, s)| x + s).collect();
        let mut negate = false;
        for i in 0..nv {
            let block = &mut key[offs[i]..offs[i] + total.0[i] as usize];
            if loopless[i] {
                negate ^= inversions(block) % 2 == 1;
                block.sort_unstable();
                if block.windows(2).any(|w| w[0] == w[1]) {
                    continue 'terms;
                }
            } else {
                block.sort_unstable();
            }
        }
        let entry = keyed.entry(key).or_insert_with(Q::zero);
        if negate {
            *entry -= c;
        } else {
            *entry += c;
        }
    }

    let mut norm = Q::one();
    for i in (0..nv).filter(|&i| !loopless[i]) {
        norm *= Q::from_integer(factorial(f.dim.0[i]) * factorial(g.dim.0[i]));
    }
    let mut cache: HashMap<(bool, Vec<u32>), Poly> = HashMap::new();
    let mut result = Poly::zero(n);
    for (key, c) in keyed {
        if c.is_zero() {
            continue;
        }
        let mut acc: Vec<(Monomial, Q)> = vec![(Vec::with_capacity(n), c / &norm)];
        for i in 0..nv {
            let block = key[offs[i]..offs[i] + total.0[i] as usize].to_vec();
            let piece = cache.entry((loopless[i], block.clone())).or_insert_with(|| {
                if loopless[i] {
                    // exponents γ_1 < … < γ_m give the partition γ_k − (k − 1), reversed
                    let lam: Vec<u32> = block.iter().enumerate().rev().map(|(k, &x)| x - k as u32).collect();
                    schur(block.len(), &lam)
                } else {
                    symmetrisation(&block)
                }
            });
            acc = acc
                .iter()
                .flat_map(|(m, c)| {
                    piece.terms().map(move |(pm, pc)| {
                        let mut mm = m.clone();
                        mm.extend_from_slice(pm);
                        (mm, c * pc)
                    })
                })
                .collect();
        }
        for (m, c) in acc {
            result.add_term(m, c);
        }
    }
    SymPoly::new_unchecked(total, result)
}

fn inversions(v: &[u32]) -> usize {
    (0..v.len())
        .map(|k| v[k + 1..].iter().filter(|&&y| y < v[k]).count())
        .sum()
}

fn factorial(n: u32) -> num_bigint::BigInt {
    (1..=n).map(num_bigint::BigInt::from).product()
}

/// `Σ_{σ ∈ S_m} x^{σ(β)}`, which is `Π mult! · m_β`.
fn symmetrisation(beta: &[u32]) -> Poly {
    let m = beta.len();
    let mut mult = Q::one();
    let mut k = 0;
    while k < m {
        let run = beta[k..].iter().take_while(|&&x| x == beta[k]).count();
        mult *= Q::from_integer(factorial(run as u32));
        k += run;
    }
    Poly::from_terms(m, distinct_permutations(beta).into_iter().map(|p| (p, mult.clone())))
}

/// The Schur polynomial `s_λ(x_1, …, x_m)` as a sum over semistandard
/// tableaux.
pub fn schur(m: usize, lam: &[u32]) -> Poly {
    let shape: Vec<usize> = lam.iter().map(|&x| x as usize).filter(|&x| x > 0).collect();
    if shape.len() > m {
        return Poly::zero(m);
    }
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut out = Poly::zero(m);
    let mut tableau: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut content = vec![0u32; m];
    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        m: usize,
        t: &mut Vec<Vec<usize>>,
        content: &mut Vec<u32>,
        out: &mut Poly,
    ) {
        let Some(&(r, c)) = cells.get(k) else {
            out.add_term(content.clone(), Q::one());
            return;
        };
        let lo = if c > 0 { t[r][c - 1] } else { 0 };
        let lo = if r > 0 { lo.max(t[r - 1][c] + 1) } else { lo };
        for v in lo..m {
            t[r][c] = v;
            content[v] += 1;
            fill(k + 1, cells, m, t, content, out);
            content[v] -= 1;
        }
    }
    fill(0, &cells, m, &mut tableau, &mut content, &mut out);
    out
}

/// Partitions of `n` with at most `len` parts, largest part first, listed in
/// reverse lexicographic order.
pub fn partitions_of(n: u32, len: usize) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == len {
            return;
        }
        for x in (1..=rest.min(max)).rev() {
            cur.push(x);
            go(rest - x, x, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, len, &mut Vec::new(), &mut out);
    out
}

/// A basis of the degree-`n` slice of `H_d`: one monomial symmetric function
/// per vertex, labelled by the padded exponent partitions.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    dim: DimVector,
    degree: u32,
    labels: Vec<Vec<Vec<u32>>>,
    index: HashMap<Monomial, usize>,
}

impl SliceBasis {
    pub fn new(d: &DimVector, n: u32) -> SliceBasis {
        let mut labels: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
        let mut remaining_by_prefix: Vec<u32> = vec![n];
        for &di in &d.0 {
            let mut next = Vec::new();
            let mut rem = Vec::new();
            for (lab, &r) in labels.iter().zip(&remaining_by_prefix) {
                for k in 0..=r {
                    for mut p in partitions_of(k, di as usize) {
                        p.resize(di as usize, 0);
                        let mut l = lab.clone();
                        l.push(p);
                        next.push(l);
                        rem.push(r - k);
                    }
                }
            }
            labels = next;
            remaining_by_prefix = rem;
        }
        let labels: Vec<Vec<Vec<u32>>> = labels
            .into_iter()
            .zip(remaining_by_prefix)
            .filter(|(_, r)| *r == 0)
            .map(|(l, _)| l)
            .collect();
        let index = labels.iter().enumerate().map(|(k, l)| (l.concat(), k)).collect();
        SliceBasis {
            dim: d.clone(),
            degree: n,
            labels,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Vec<Vec<u32>>] {
        &self.labels
    }

    /// The basis element `Π_i m_{μ^{(i)}}(x_{i,·})`.
    pub fn element(&self, k: usize) -> SymPoly {
        let mut acc = Poly::one(self.dim.total() as usize);
        let offs = offsets(&self.dim);
        let n = self.dim.total() as usize;
        for (i, mu) in self.labels[k].iter().enumerate() {
            let mut block = Poly::zero(n);
            for perm in distinct_permutations(mu) {
                let mut m = vec![0; n];
                m[offs[i]..offs[i] + perm.len()].copy_from_slice(&perm);
                block.add_term(m, Q::one());
            }
            acc = &acc * &block;
        }
        SymPoly::new_unchecked(self.dim.clone(), acc)
    }

    /// Coordinates of a symmetric, homogeneous degree-`n` element: the
    /// coefficient of each label's sorted monomial.
    pub fn coordinates(&self, f: &SymPoly) -> Vec<Q> {
        assert_eq!(f.dim, self.dim);
        let mut v = vec![Q::zero(); self.labels.len()];
        for (m, c) in f.poly.terms() {
            debug_assert_eq!(m.iter().sum::<u32>(), self.degree, "homogeneous of the slice degree");
            if let Some(&k) = self.index.get(m) {
                v[k] = c.clone();
            }
        }
        v
    }
}

fn distinct_permutations(mu: &[u32]) -> Vec<Vec<u32>> {
    let mut v: Vec<u32> = mu.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // next lexicographic permutation
    while let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

/// A subspace of a graded slice of `H_d`, kept as a reduced echelon basis in
/// monomial-symmetric coordinates.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    pub dim: DimVector,
    pub degree: u32,
    pub basis: SliceBasis,
    pub span: Echelon,
}

impl GradedSubspace {
    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn contains(&self, f: &SymPoly) -> bool {
        self.span.contains(&self.basis.coordinates(f))
    }
}

/// The degree-`n` part of `Σ_{0 < d' ≤ d} H_{d−d'} * (e^w_{d'} ∪ H_{d'})`.
pub fn kernel_graded_piece(fq: &FramedQuiver, d: &DimVector, n: u32) -> Result<GradedSubspace> {
    fq.check_dim(d)?;
    let basis = SliceBasis::new(d, n);
    let mut span = Echelon::new();
    for dp in d.box_below() {
        if dp.is_zero() {
            continue;
        }
        let dpp = d.checked_sub(&dp).expect("inside the box");
        let e = framing_idempotent(fq, &dp);
        let wd = fq.framing().dot(&dp);
        let chi = fq.base().euler_form(&dpp, &dp)?;
        // p + q = n − w·d' + χ(d'', d')
        let budget = n as i64 - wd + chi;
        if budget < 0 {
            continue;
        }
        for p in 0..=budget as u32 {
            let q = budget as u32 - p;
            let left = SliceBasis::new(&dpp, p);
            let right = SliceBasis::new(&dp, q);
            if left.is_empty() || right.is_empty() {
                continue;
            }
            let rights: Vec<SymPoly> = (0..right.len())
                .map(|k| cup_product(&e, &right.element(k)).expect("same dimension"))
                .collect();
            for a in 0..left.len() {
                let f = left.element(a);
                for g in &rights {
                    let prod = shuffle_product(fq.base(), &f, g);
                    span.insert(&basis.coordinates(&prod));
                    if span.rank() == basis.len() {
                        return Ok(GradedSubspace {
                            dim: d.clone(),
                            degree: n,
                            basis,
                            span,
                        });
                    }
                }
            }
        }
    }
    Ok(GradedSubspace {
        dim: d.clone(),
        degree: n,
        basis,
        span,
    })
}

/// `Π_i Π_k e_k(x_{i,·})^{λ^{(i)}_k − λ^{(i)}_{k+1}}`; its degree is `|λ|`.
pub fn tautological_monomial(fq: &FramedQuiver, lam: &MultiPartition) -> Result<SymPoly> {
    let d = lam.shape();
    if !crate::partitions::satisfies_phi(fq, &d, lam)? {
        return Err(Error::NotInS(lam.to_string()));
    }
    let mut acc = SymPoly::one(&d);
    for (i, parts) in lam.0.iter().enumerate() {
        for k in 1..=parts.len() {
            let next = parts.get(k).copied().unwrap_or(0);
            let e = parts[k - 1] - next;
            if e == 0 {
                continue;
            }
            let ek = elementary(&d, i, k);
            acc = SymPoly::new_unchecked(d.clone(), &acc.poly * &ek.poly.pow(e));
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    pub degree: u32,
    pub h_dim: usize,
    pub kernel_dim: usize,
    pub quotient_dim: usize,
    pub partition_count: usize,
    pub independent: bool,
}

/// Checks in degree `n` that `dim H_d/ker = #{λ ∈ S(d) : |λ| = n}` and that
/// the tautological monomials of those `λ` are independent modulo the kernel.
pub fn verify_basis(fq: &FramedQuiver, d: &DimVector, n: u32) -> Result<BasisReport> {
    let kernel = kernel_graded_piece(fq, d, n)?;
    let lams: Vec<MultiPartition> = partitions_unordered(fq, d)?
        .into_iter()
        .filter(|l| l.size() == n as u64)
        .collect();
    let mut span = kernel.span.clone();
    let mut added = 0;
    for lam in &lams {
        let t = tautological_monomial(fq, lam)?;
        if span.insert(&kernel.basis.coordinates(&t)) {
            added += 1;
        }
    }
    let h_dim = kernel.basis.len();
    let kernel_dim = kernel.rank();
    let quotient_dim = h_dim - kernel_dim;
    Ok(BasisReport {
        degree: n,
        h_dim,
        kernel_dim,
        quotient_dim,
        partition_count: lams.len(),
        independent: quotient_dim == lams.len() && added == lams.len(),
    })
}

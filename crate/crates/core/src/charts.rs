//! Affine charts `U_S` with coordinates `c_{u,v}`, symbolic path vectors,
//! degeneracy minors and the local multiplicity extraction.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use crate::cells::{cell_dim, critical_set, Subtree};
use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, subsets};
use crate::path::{Path, PathOrder};
use crate::poly::{Poly, Q};
use crate::quiver::FramedQuiver;

/// Polynomials in the chart coordinates.
pub type ChartPoly = Poly;

/// Coordinates of `m_v` in the basis `(m_u)_{u ∈ S_i}`, `i = t(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicVector {
    pub vertex: usize,
    pub entries: Vec<ChartPoly>,
}

/// The chart `U_S`: `m_v = Σ_u c_{u,v} m_u` for `v ∈ C(S)`, `u ∈ S_{t(v)}`.
#[derive(Clone, Debug)]
pub struct Chart {
    tree: Subtree,
    basis: Vec<Vec<Path>>,
    critical: Vec<Vec<Path>>,
    coords: Vec<(Path, Path)>,
    labels: Vec<String>,
    index: HashMap<(Path, Path), usize>,
}

impl Chart {
    /// Coordinates are ordered by vertex, then critical path, then basis path.
    pub fn new(fq: &FramedQuiver, s: &Subtree, order: &PathOrder) -> Chart {
        let nv = fq.vertex_count();
        let basis: Vec<Vec<Path>> = (0..nv).map(|i| s.slice(fq, i, order)).collect();
        let crit = critical_set(fq, s, order);
        let critical: Vec<Vec<Path>> = (0..nv)
            .map(|i| crit.slice(fq, i).map(|e| e.path.clone()).collect())
            .collect();
        let mut coords = Vec::new();
        let mut labels = Vec::new();
        let small = basis.iter().chain(&critical).all(|v| v.len() <= 9);
        for t in 0..nv {
            for (j, v) in critical[t].iter().enumerate() {
                for (i, u) in basis[t].iter().enumerate() {
                    coords.push((u.clone(), v.clone()));
                    labels.push(match (nv, small) {
                        (1, true) => format!("c{}{}", i + 1, j + 1),
                        (1, false) => format!("c{}_{}", i + 1, j + 1),
                        _ => format!("c{}_{}_{}", t, i + 1, j + 1),
                    });
                }
            }
        }
        let index = coords.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
        Chart {
            tree: s.clone(),
            basis,
            critical,
            coords,
            labels,
            index,
        }
    }

    pub fn tree(&self) -> &Subtree {
        &self.tree
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    pub fn coordinates(&self) -> &[(Path, Path)] {
        &self.coords
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Variable index of `c_{u,v}`.
    pub fn var(&self, u: &Path, v: &Path) -> Option<usize> {
        self.index.get(&(u.clone(), v.clone())).copied()
    }

    /// Variable index by label, e.g. `c21`.
    pub fn var_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis(&self, vertex: usize) -> &[Path] {
        &self.basis[vertex]
    }

    pub fn critical(&self, vertex: usize) -> &[Path] {
        &self.critical[vertex]
    }

    /// Coordinates vanishing on the cell `Z_S ⊂ U_S`: `c_{u,v}` with `u > v`.
    pub fn cell_equations(&self, order: &PathOrder) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, (u, v))| order.less(v, u))
            .map(|(k, _)| k)
            .collect()
    }

    pub fn symbolic_vector(&self, fq: &FramedQuiver, v: &Path) -> Result<SymbolicVector> {
        fq.validate_path(v)?;
        let t = fq
            .target(v)
            .ok_or_else(|| Error::InvalidPath("the root has no vector".into()))?;
        let n = self.nvars();
        if let Some(k) = self.basis[t].iter().position(|u| u == v) {
            let mut entries = vec![Poly::zero(n); self.basis[t].len()];
            entries[k] = Poly::one(n);
            return Ok(SymbolicVector { vertex: t, entries });
        }
        if self.critical[t].contains(v) {
            let entries = self.basis[t]
                .iter()
                .map(|u| Poly::var(n, self.var(u, v).expect("chart coordinate")))
                .collect();
            return Ok(SymbolicVector { vertex: t, entries });
        }
        // v = a·u with u outside S ∪ C(S): m_v = Σ_k (m_u)_k m_{a u_k}
        let parent = v.parent().expect("children of the root are in S or C(S)");
        let a = v.last_arrow().expect("non-root");
        let src = fq.target(&parent).expect("parent of a non-framing path");
        let mu = self.symbolic_vector(fq, &parent)?;
        let mut entries = vec![Poly::zero(n); self.basis[t].len()];
        for (coef, u) in mu.entries.iter().zip(&self.basis[src]) {
            if coef.is_zero() {
                continue;
            }
            let image = self.symbolic_vector(fq, &u.extend(a))?;
            for (e, x) in entries.iter_mut().zip(&image.entries) {
                e.add_assign_ref(&(coef * x));
            }
        }
        Ok(SymbolicVector { vertex: t, entries })
    }
}

/// All `(u, v) ∈ ∪_i S_i × C(S)_i`.
pub fn chart_coordinates(fq: &FramedQuiver, s: &Subtree, order: &PathOrder) -> Vec<(Path, Path)> {
    Chart::new(fq, s, order).coords
}

pub fn symbolic_vector(fq: &FramedQuiver, s: &Subtree, order: &PathOrder, v: &Path) -> Result<SymbolicVector> {
    Chart::new(fq, s, order).symbolic_vector(fq, v)
}

/// One `(k_v+1)`-minor: rows (basis positions at `t(v)`) and its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub v: Path,
    pub rows: Vec<usize>,
    pub value: ChartPoly,
}

/// For every `v ∈ C(S)`, the maximal minors of the columns `m_u`,
/// `u ∈ S(v)`, expressed on the chart `U_{S'}`. Ordered by `v`, then rows.
pub fn membership_minors(fq: &FramedQuiver, target: &Subtree, chart: &Chart, order: &PathOrder) -> Result<Vec<Minor>> {
    let d = target.udim(fq);
    if d != chart.tree.udim(fq) {
        return Err(Error::arg(format!(
            "target has dimension vector ({d}), chart has ({})",
            chart.tree.udim(fq)
        )));
    }
    let n = chart.nvars();
    let mut out = Vec::new();
    for e in critical_set(fq, target, order).entries() {
        let t = fq.target(&e.path).expect("non-root");
        let size = e.k as usize + 1;
        let rows = d.0[t] as usize;
        if size > rows {
            continue;
        }
        let mut cols: Vec<SymbolicVector> = target
            .slice(fq, t, order)
            .iter()
            .filter(|u| order.less(u, &e.path))
            .map(|u| chart.symbolic_vector(fq, u))
            .collect::<Result<_>>()?;
        cols.push(chart.symbolic_vector(fq, &e.path)?);
        for rs in subsets(rows, size) {
            let m: Vec<Vec<Poly>> = rs
                .iter()
                .map(|&r| cols.iter().map(|c| c.entries[r].clone()).collect())
                .collect();
            out.push(Minor {
                v: e.path.clone(),
                rows: rs,
                value: det_bareiss(m, n),
            });
        }
    }
    Ok(out)
}

/// If `p = a·c^m` for a scalar `a` and a single coordinate `c`.
fn pure_power(p: &Poly) -> Option<(usize, u32)> {
    if p.len() != 1 {
        return None;
    }
    let (m, _) = p.terms().next()?;
    let mut vars = m.iter().enumerate().filter(|(_, &e)| e > 0);
    let (c, &e) = vars.next()?;
    vars.next().is_none().then_some((c, e))
}

/// A coordinate `c` with `p = a·c + q`, `a` scalar, `c` absent from `q`.
fn linear_pivot(p: &Poly, skip: &BTreeMap<usize, u32>) -> Option<(usize, Q, Poly)> {
    for c in p.support_vars() {
        if skip.contains_key(&c) || p.degree_in(c) != 1 {
            continue;
        }
        let with_c: Vec<_> = p.terms().filter(|(m, _)| m[c] > 0).collect();
        if with_c.len() != 1 {
            continue;
        }
        let (m, a) = with_c[0];
        if m.iter().sum::<u32>() != 1 {
            continue;
        }
        let mut rest = p.clone();
        rest.add_term(m.clone(), -a.clone());
        return Some((c, a.clone(), rest));
    }
    None
}

/// The local multiplicity of `D_S` along `Z_{S'}`, read off the chart
/// `U_{S'}` by elimination.
///
/// Minors are taken in order. A minor `a·c` forces `c = 0`; a minor
/// `a·c + q` with `c` absent from `q` is solved for `c`; a minor `a·c^m`
/// (`m ≥ 2`) is an obstruction of order `m`. Anything else makes the result
/// indeterminate (`None`). At the end the eliminated and obstructed
/// coordinates must be exactly the equations of `Z_{S'}`, with the solved
/// values vanishing there; the answer is the product of the obstruction
/// orders. A nonzero constant minor means `D_S` misses the chart: `Some(0)`.
pub fn multiplicity_power(
    fq: &FramedQuiver,
    target: &Subtree,
    chart_tree: &Subtree,
    order: &PathOrder,
) -> Result<Option<u64>> {
    let (ds, dc) = (cell_dim(fq, target, order), cell_dim(fq, chart_tree, order));
    if ds != dc {
        return Err(Error::arg(format!("cell dimensions differ: d(S) = {ds}, d(S') = {dc}")));
    }
    let chart = Chart::new(fq, chart_tree, order);
    let n = chart.nvars();
    let minors = membership_minors(fq, target, &chart, order)?;
    let mut images: Vec<Poly> = (0..n).map(|k| Poly::var(n, k)).collect();
    let mut solved: BTreeMap<usize, Poly> = BTreeMap::new();
    let mut obstructions: BTreeMap<usize, u32> = BTreeMap::new();
    for minor in minors {
        let p = minor.value.compose(&images, n);
        if p.is_zero() {
            continue;
        }
        if p.as_constant().is_some() {
            return Ok(Some(0));
        }
        let solution = match pure_power(&p) {
            Some((c, m)) if obstructions.contains_key(&c) => {
                let e = obstructions.get_mut(&c).expect("present");
                *e = (*e).min(m);
                None
            }
            Some((c, 1)) => Some((c, Poly::zero(n))),
            Some((c, m)) => {
                obstructions.insert(c, m);
                None
            }
            None => match linear_pivot(&p, &obstructions) {
                Some((c, a, rest)) => Some((c, rest.scale(&(-Q::one() / a)))),
                None => return Ok(None),
            },
        };
        if let Some((c, value)) = solution {
            for img in images.iter_mut() {
                *img = img.substitute(c, &value);
            }
            for v in solved.values_mut() {
                *v = v.substitute(c, &value);
            }
            images[c] = value.clone();
            solved.insert(c, value);
        }
    }
    let eqs = chart.cell_equations(order);
    let on_cell: Vec<Poly> = (0..n)
        .map(|k| {
            if eqs.contains(&k) {
                Poly::zero(n)
            } else {
                Poly::var(n, k)
            }
        })
        .collect();
    let consistent = solved.len() + obstructions.len() == eqs.len()
        && solved.keys().chain(obstructions.keys()).all(|c| eqs.contains(c))
        && solved.values().all(|v| v.compose(&on_cell, n).is_zero());
    if !consistent {
        return Ok(None);
    }
    Ok(Some(obstructions.values().map(|&m| m as u64).product()))
}

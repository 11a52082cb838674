//! Explicit framed representations with rational entries.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use rand::Rng;

use crate::cells::{critical_set, enumerate_trees, Subtree};
use crate::error::{Error, Result};
use crate::path::{Path, PathOrder};
use crate::poly::{parse_rational, q, Q};
use crate::quiver::{DimVector, FramedQuiver};

/// A matrix stored as rows.
pub type Matrix = Vec<Vec<Q>>;

/// One linear map per arrow of the framed quiver, indexed like
/// [`FramedQuiver::arrows`]. A framing arrow into vertex `i` is a `d_i × 1`
/// matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericRep {
    dim: DimVector,
    maps: Vec<Matrix>,
}

fn zero_matrix(rows: usize, cols: usize) -> Matrix {
    vec![vec![Q::zero(); cols]; rows]
}

impl NumericRep {
    pub fn zero(fq: &FramedQuiver, d: &DimVector) -> Result<NumericRep> {
        fq.check_dim(d)?;
        let maps = fq
            .arrows()
            .iter()
            .map(|a| {
                let cols = a.source.map_or(1, |s| d.0[s] as usize);
                zero_matrix(d.0[a.target] as usize, cols)
            })
            .collect();
        Ok(NumericRep { dim: d.clone(), maps })
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn matrix(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn set_matrix(&mut self, arrow: usize, m: Matrix) -> Result<()> {
        let cur = &self.maps[arrow];
        let cols = cur.first().map_or(0, Vec::len);
        if m.len() != cur.len() {
            return Err(Error::LengthMismatch {
                expected: cur.len(),
                got: m.len(),
            });
        }
        if let Some(bad) = m.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        self.maps[arrow] = m;
        Ok(())
    }

    pub fn apply(&self, arrow: usize, v: &[Q]) -> Vec<Q> {
        self.maps[arrow]
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `m_u = u·m_*`, with `m_* = 1` at the framing vertex.
    pub fn path_vector(&self, p: &Path) -> Vec<Q> {
        p.arrows()
            .iter()
            .fold(vec![Q::one()], |v, &a| self.apply(a as usize, &v))
    }

    /// Builds the representation of the affine chart `U_S` at the given
    /// coordinates: in the basis `(m_u)_{u∈S_i}`, `a·m_u = m_{au}` when
    /// `au ∈ S`, and `a·m_u = Σ c_{u',au} m_{u'}` when `au ∈ C(S)`. Missing
    /// coordinates are zero.
    pub fn from_chart(
        fq: &FramedQuiver,
        s: &Subtree,
        order: &PathOrder,
        coords: &BTreeMap<(Path, Path), Q>,
    ) -> Result<NumericRep> {
        let d = s.udim(fq);
        let mut rep = NumericRep::zero(fq, &d)?;
        let slices: Vec<Vec<Path>> = (0..fq.vertex_count()).map(|i| s.slice(fq, i, order)).collect();
        let position = |p: &Path| -> Option<(usize, usize)> {
            let t = fq.target(p)?;
            slices[t].iter().position(|x| x == p).map(|k| (t, k))
        };
        let mut sources: Vec<Path> = vec![Path::root()];
        sources.extend(s.paths().iter().cloned());
        for u in &sources {
            let col = match fq.target(u) {
                None => 0,
                Some(_) => position(u).expect("member of S").1,
            };
            for child in fq.children(u) {
                let a = child.last_arrow().expect("non-root child") as usize;
                let j = fq.arrows()[a].target;
                if let Some((_, row)) = position(&child) {
                    rep.maps[a][row][col] = Q::one();
                } else {
                    for (row, u2) in slices[j].iter().enumerate() {
                        if let Some(c) = coords.get(&(u2.clone(), child.clone())) {
                            rep.maps[a][row][col] = c.clone();
                        }
                    }
                }
            }
        }
        Ok(rep)
    }

    /// Parses the `rep` text format:
    ///
    /// ```text
    /// rep 3
    /// matrix b
    /// 0 0 0
    /// 1 0 0
    /// 0 1 0
    /// framing 0 1
    /// 1 0 0
    /// ```
    ///
    /// `framing <vertex> <copy>` is followed by the `d_vertex` entries of the
    /// framing vector (copies are 1-based). Blocks that are not given are
    /// zero.
    pub fn parse(fq: &FramedQuiver, text: &str) -> Result<NumericRep> {
        let mut rep: Option<NumericRep> = None;
        let mut block: Option<(usize, usize)> = None;
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let mut block_line = 0;

        let flush = |rep: &mut Option<NumericRep>,
                     block: Option<(usize, usize)>,
                     rows: &mut Vec<Vec<Q>>,
                     line: usize|
         -> Result<()> {
            let Some((arrow, _)) = block else {
                return Ok(());
            };
            let r = rep.as_mut().expect("header read");
            let target = &r.maps[arrow];
            let m = if fq.arrows()[arrow].is_framing() {
                let entries: Vec<Q> = rows.drain(..).flatten().collect();
                if entries.len() != target.len() {
                    return Err(Error::parse(
                        line,
                        format!("framing vector needs {} entries, got {}", target.len(), entries.len()),
                    ));
                }
                entries.into_iter().map(|x| vec![x]).collect()
            } else {
                std::mem::take(rows)
            };
            r.set_matrix(arrow, m)
                .map_err(|e| Error::parse(line, format!("matrix `{}`: {e}", fq.arrows()[arrow].name)))
        };

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut toks = content.split_whitespace();
            let head = toks.next().unwrap_or("");
            match head {
                "rep" => {
                    if rep.is_some() {
                        return Err(Error::parse(line, "duplicate `rep` header"));
                    }
                    let entries = toks
                        .flat_map(|t| t.split(','))
                        .filter(|t| !t.is_empty())
                        .map(|t| {
                            t.parse::<u32>()
                                .map_err(|_| Error::parse(line, format!("bad dimension `{t}`")))
                        })
                        .collect::<Result<Vec<u32>>>()?;
                    let d = DimVector::new(entries);
                    rep = Some(NumericRep::zero(fq, &d).map_err(|e| Error::parse(line, e.to_string()))?);
                }
                "matrix" | "framing" => {
                    if rep.is_none() {
                        return Err(Error::parse(line, "`rep` header must come first"));
                    }
                    flush(&mut rep, block, &mut rows, block_line)?;
                    let arrow = if head == "matrix" {
                        let name = toks
                            .next()
                            .ok_or_else(|| Error::parse(line, "`matrix` needs an arrow name"))?;
                        let a = fq
                            .arrow_index(name)
                            .filter(|&a| !fq.arrows()[a].is_framing())
                            .ok_or_else(|| Error::parse(line, format!("unknown base arrow `{name}`")))?;
                        a
                    } else {
                        let nums: Vec<usize> = toks
                            .map(|t| t.parse().map_err(|_| Error::parse(line, format!("bad index `{t}`"))))
                            .collect::<Result<_>>()?;
                        let [vertex, copy] = nums[..] else {
                            return Err(Error::parse(line, "`framing` needs a vertex and a copy index"));
                        };
                        fq.arrow_index(&format!("g{vertex}_{copy}"))
                            .ok_or_else(|| Error::parse(line, format!("no framing arrow {copy} at vertex {vertex}")))?
                    };
                    block = Some((arrow, line));
                    block_line = line;
                }
                _ => {
                    if block.is_none() {
                        return Err(Error::parse(line, format!("unexpected `{head}`")));
                    }
                    let row = content
                        .split_whitespace()
                        .map(|t| parse_rational(t).ok_or_else(|| Error::parse(line, format!("bad rational `{t}`"))))
                        .collect::<Result<Vec<Q>>>()?;
                    rows.push(row);
                }
            }
        }
        if rep.is_none() {
            return Err(Error::parse(text.lines().count().max(1), "missing `rep` header"));
        }
        flush(&mut rep, block, &mut rows, block_line)?;
        Ok(rep.expect("checked"))
    }

    pub fn serialize(&self, fq: &FramedQuiver) -> String {
        let mut out = String::new();
        let dims: Vec<String> = self.dim.0.iter().map(u32::to_string).collect();
        writeln!(out, "rep {}", dims.join(" ")).unwrap();
        for (a, arrow) in fq.arrows().iter().enumerate() {
            let m = &self.maps[a];
            if arrow.is_framing() {
                let copy = arrow.name.rsplit('_').next().unwrap_or("1");
                writeln!(out, "framing {} {}", arrow.target, copy).unwrap();
                let col: Vec<String> = m.iter().map(|r| r[0].to_string()).collect();
                writeln!(out, "{}", col.join(" ")).unwrap();
            } else {
                writeln!(out, "matrix {}", arrow.name).unwrap();
                for row in m {
                    let r: Vec<String> = row.iter().map(Q::to_string).collect();
                    writeln!(out, "{}", r.join(" ")).unwrap();
                }
            }
        }
        out
    }
}

/// Numerator in `-3..=3`, denominator in `1..=3`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Q {
    Q::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=3).into())
}

/// All entries independent small rationals.
pub fn random_rep<R: Rng>(fq: &FramedQuiver, d: &DimVector, rng: &mut R) -> Result<NumericRep> {
    let mut rep = NumericRep::zero(fq, d)?;
    for m in rep.maps.iter_mut() {
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = small_rational(rng);
            }
        }
    }
    Ok(rep)
}

/// A random point of the cell `Z_S`: chart coordinates `c_{u,v}` with
/// `u > v` are zero, the rest random.
pub fn random_cell_point<R: Rng>(fq: &FramedQuiver, s: &Subtree, order: &PathOrder, rng: &mut R) -> Result<NumericRep> {
    let crit = critical_set(fq, s, order);
    let mut coords = BTreeMap::new();
    for v in crit.paths() {
        let t = fq.target(v).expect("critical paths end at a vertex");
        for u in s.slice(fq, t, order) {
            if order.less(&u, v) {
                coords.insert((u, v.clone()), small_rational(rng));
            }
        }
    }
    NumericRep::from_chart(fq, s, order, &coords)
}

/// Random stable representations: half of them generic, half sampled from a
/// uniformly chosen cell so that small cells are hit too. Unstable generic
/// draws are discarded.
pub fn random_stable_reps<R: Rng>(
    fq: &FramedQuiver,
    d: &DimVector,
    order: &PathOrder,
    count: usize,
    rng: &mut R,
) -> Result<Vec<NumericRep>> {
    let trees = enumerate_trees(fq, d, order)?;
    if trees.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let rep = if rng.gen_bool(0.5) {
            let s = &trees[rng.gen_range(0..trees.len())];
            random_cell_point(fq, s, order, rng)?
        } else {
            random_rep(fq, d, rng)?
        };
        if is_stable(fq, &rep) {
            out.push(rep);
        }
    }
    Ok(out)
}

/// The framing vectors generate the whole representation.
pub fn is_stable(fq: &FramedQuiver, rep: &NumericRep) -> bool {
    generated_dims(fq, rep) == rep.dim().0
}

/// Dimension vector of the subrepresentation generated by the framing.
pub fn generated_dims(fq: &FramedQuiver, rep: &NumericRep) -> Vec<u32> {
    use crate::linalg::Echelon;
    let n = fq.vertex_count();
    let mut spans = vec![Echelon::new(); n];
    let mut queue: Vec<(usize, Vec<Q>)> = Vec::new();
    for (a, arrow) in fq.arrows().iter().enumerate() {
        if arrow.is_framing() {
            queue.push((arrow.target, rep.apply(a, &[Q::one()])));
        }
    }
    while let Some((i, v)) = queue.pop() {
        if !spans[i].insert(&v) {
            continue;
        }
        for (a, arrow) in fq.arrows().iter().enumerate() {
            if arrow.source == Some(i) {
                queue.push((arrow.target, rep.apply(a, &v)));
            }
        }
    }
    spans.iter().map(|s| s.rank() as u32).collect()
}

/// Convenience for tests and fixtures: integer matrix.
pub fn int_matrix(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

//! Quivers, framed quivers, dimension vectors and the Euler form.
//!
//! Vertices are dense indices `0..n`. A framed quiver adds a vertex `∞`
//! together with `w_i` arrows `∞ → i`; those framing arrows come first in the
//! arrow order, sorted by (target vertex, copy index), followed by the base
//! arrows in file order.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// A non-negative integer vector indexed by the vertices of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn dot(&self, other: &DimVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a as i64 * b as i64).sum()
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All vectors `e` with `0 ≤ e ≤ self` componentwise, in odometer order
    /// (first coordinate fastest).
    pub fn box_below(&self) -> Vec<DimVector> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.0.len()];
        loop {
            out.push(DimVector(cur.clone()));
            let mut i = 0;
            loop {
                if i == cur.len() {
                    return out;
                }
                if cur[i] < self.0[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// Parses `3` or `1,0` (commas or whitespace).
    pub fn parse(s: &str) -> Result<DimVector> {
        let entries = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::arg(format!("invalid dimension entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(Error::arg("empty dimension vector"));
        }
        Ok(DimVector(entries))
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl From<Vec<u32>> for DimVector {
    fn from(v: Vec<u32>) -> Self {
        DimVector(v)
    }
}

/// An integer vector that may have negative entries, e.g. `c(β) = w − χ(β, −)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedVector(pub Vec<i64>);

impl SignedVector {
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn dot(&self, d: &DimVector) -> i64 {
        self.0.iter().zip(&d.0).map(|(&a, &b)| a * b as i64).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Quiver> {
        let mut seen = HashSet::new();
        for a in &arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(Error::DuplicateArrow(a.name.clone()));
            }
            for idx in [a.source, a.target] {
                if idx >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        index: idx,
                        count: vertex_count,
                    });
                }
            }
            validate_arrow_name(&a.name)?;
        }
        Ok(Quiver { vertex_count, arrows })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    fn check_len(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.vertex_count {
            return Err(Error::LengthMismatch {
                expected: self.vertex_count,
                got: d.len(),
            });
        }
        Ok(())
    }

    /// `χ(d, e) = Σ_i d_i e_i − Σ_{a: i→j} d_i e_j`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.check_len(d)?;
        self.check_len(e)?;
        Ok(self.euler_unchecked(d, e))
    }

    pub(crate) fn euler_unchecked(&self, d: &DimVector, e: &DimVector) -> i64 {
        let diag = d.dot(e);
        let off: i64 = self
            .arrows
            .iter()
            .map(|a| d.0[a.source] as i64 * e.0[a.target] as i64)
            .sum();
        diag - off
    }

    /// `χ(e_i, e_j)` for simple roots.
    pub fn euler_simple(&self, i: usize, j: usize) -> i64 {
        let loops = self.arrows.iter().filter(|a| a.source == i && a.target == j).count() as i64;
        (i == j) as i64 - loops
    }
}

fn validate_arrow_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
    if ok {
        Ok(())
    } else {
        Err(Error::arg(format!(
            "arrow name `{name}` must start with a letter and contain only letters, digits and `_`"
        )))
    }
}

/// An arrow of the framed quiver `Q^w`. `source == None` means `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedArrow {
    /// Canonical name; framing arrows are called `g<vertex>_<copy>`.
    pub name: String,
    /// Short display name. Framing arrows get letters ending in `f`
    /// (`f`; `e,f`; ...) when these do not clash with base arrow names.
    pub label: String,
    pub source: Option<usize>,
    pub target: usize,
}

impl FramedArrow {
    pub fn is_framing(&self) -> bool {
        self.source.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedQuiver {
    base: Quiver,
    framing: DimVector,
    arrows: Vec<FramedArrow>,
}

impl FramedQuiver {
    pub fn new(base: Quiver, framing: DimVector) -> Result<FramedQuiver> {
        base.check_len(&framing)?;
        let total: u32 = framing.total();
        let base_names: HashSet<&str> = base.arrows.iter().map(|a| a.name.as_str()).collect();

        // letters ending at `f`, e.g. three framing arrows -> d, e, f
        let letters: Option<Vec<String>> = (total <= 6)
            .then(|| {
                (0..total)
                    .map(|k| ((b'f' - (total - 1 - k) as u8) as char).to_string())
                    .collect::<Vec<_>>()
            })
            .filter(|ls| ls.iter().all(|l| !base_names.contains(l.as_str())));

        let mut arrows = Vec::with_capacity(total as usize + base.arrows.len());
        for (i, &w) in framing.0.iter().enumerate() {
            for c in 1..=w {
                let name = format!("g{i}_{c}");
                if base_names.contains(name.as_str()) {
                    return Err(Error::DuplicateArrow(name));
                }
                let label = letters
                    .as_ref()
                    .map(|ls| ls[arrows.len()].clone())
                    .unwrap_or_else(|| name.clone());
                arrows.push(FramedArrow {
                    name,
                    label,
                    source: None,
                    target: i,
                });
            }
        }
        for a in &base.arrows {
            arrows.push(FramedArrow {
                name: a.name.clone(),
                label: a.name.clone(),
                source: Some(a.source),
                target: a.target,
            });
        }
        Ok(FramedQuiver { base, framing, arrows })
    }

    /// One vertex, `m` loops named `a, b, c, …`, framing `w`.
    pub fn loops(m: usize, w: u32) -> FramedQuiver {
        assert!(m <= 5, "at most five named loops");
        let arrows = (0..m)
            .map(|k| Arrow {
                name: ((b'a' + k as u8) as char).to_string(),
                source: 0,
                target: 0,
            })
            .collect();
        FramedQuiver::new(Quiver::new(1, arrows).unwrap(), DimVector(vec![w])).unwrap()
    }

    /// One vertex, no arrows: the Hilbert scheme is a Grassmannian.
    pub fn vertex_only(w: u32) -> FramedQuiver {
        FramedQuiver::loops(0, w)
    }

    /// `0 → 1` with a single arrow `a` and framing `(w0, w1)`.
    pub fn a2(w0: u32, w1: u32) -> FramedQuiver {
        let q = Quiver::new(
            2,
            vec![Arrow {
                name: "a".into(),
                source: 0,
                target: 1,
            }],
        )
        .unwrap();
        FramedQuiver::new(q, DimVector(vec![w0, w1])).unwrap()
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn framing(&self) -> &DimVector {
        &self.framing
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count
    }

    /// All arrows of `Q^w`, framing arrows first.
    pub fn arrows(&self) -> &[FramedArrow] {
        &self.arrows
    }

    pub fn framing_arrow_count(&self) -> usize {
        self.framing.total() as usize
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .or_else(|| self.arrows.iter().position(|a| a.label == name))
    }

    pub fn check_dim(&self, d: &DimVector) -> Result<()> {
        self.base.check_len(d)
    }

    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.base.euler_form(d, e)
    }

    /// `c(d)_i = w_i − χ(d, e_i)`, the dimension vector of every critical set
    /// of a tree with dimension vector `d`.
    pub fn critical_dim_vector(&self, d: &DimVector) -> Result<SignedVector> {
        self.check_dim(d)?;
        let n = self.vertex_count();
        Ok(SignedVector(
            (0..n)
                .map(|i| self.framing.0[i] as i64 - self.base.euler_unchecked(d, &DimVector::unit(n, i)))
                .collect(),
        ))
    }

    /// `w·d − χ(d, d)`; negative values mean the moduli space is empty.
    pub fn hilb_dim(&self, d: &DimVector) -> Result<i64> {
        self.check_dim(d)?;
        Ok(self.framing.dot(d) - self.base.euler_unchecked(d, d))
    }

    /// Parses the line-based quiver format:
    ///
    /// ```text
    /// # two loops, one framing arrow
    /// vertices 1
    /// arrow a 0 0
    /// arrow b 0 0
    /// framing 1
    /// ```
    pub fn parse(text: &[u8]) -> Result<FramedQuiver> {
        let text = std::str::from_utf8(text).map_err(|e| {
            let line = 1 + text[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count();
            Error::parse(line, "input is not valid UTF-8")
        })?;
        let mut vertices: Option<usize> = None;
        let mut arrows: Vec<Arrow> = Vec::new();
        let mut framing: Option<Vec<u32>> = None;
        let mut names = HashSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some((&head, rest)) = tokens.split_first() else {
                continue;
            };
            let parse_index = |t: &str| -> Result<usize> {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("expected a vertex index, got `{t}`")))
            };
            match head {
                "vertices" => {
                    if vertices.is_some() {
                        return Err(Error::parse(line_no, "duplicate `vertices` line"));
                    }
                    let [n] = rest else {
                        return Err(Error::parse(line_no, "expected `vertices <n>`"));
                    };
                    vertices = Some(
                        n.parse()
                            .map_err(|_| Error::parse(line_no, format!("invalid vertex count `{n}`")))?,
                    );
                }
                "arrow" => {
                    let Some(n) = vertices else {
                        return Err(Error::parse(line_no, "`arrow` before `vertices`"));
                    };
                    let [name, s, t] = rest else {
                        return Err(Error::parse(line_no, "expected `arrow <name> <src> <tgt>`"));
                    };
                    let (source, target) = (parse_index(s)?, parse_index(t)?);
                    for index in [source, target] {
                        if index >= n {
                            return Err(Error::parse(
                                line_no,
                                format!("vertex index {index} out of range (quiver has {n} vertices)"),
                            ));
                        }
                    }
                    if !names.insert(name.to_string()) {
                        return Err(Error::parse(line_no, format!("duplicate arrow name `{name}`")));
                    }
                    validate_arrow_name(name).map_err(|e| Error::parse(line_no, e.to_string()))?;
                    arrows.push(Arrow {
                        name: name.to_string(),
                        source,
                        target,
                    });
                }
                "framing" => {
                    let Some(n) = vertices else {
                        return Err(Error::parse(line_no, "`framing` before `vertices`"));
                    };
                    if framing.is_some() {
                        return Err(Error::parse(line_no, "duplicate `framing` line"));
                    }
                    if rest.len() != n {
                        return Err(Error::parse(
                            line_no,
                            format!("framing needs {n} entries, got {}", rest.len()),
                        ));
                    }
                    framing = Some(
                        rest.iter()
                            .map(|t| {
                                t.parse::<u32>()
                                    .map_err(|_| Error::parse(line_no, format!("invalid framing entry `{t}`")))
                            })
                            .collect::<Result<_>>()?,
                    );
                }
                other => {
                    return Err(Error::parse(line_no, format!("unknown directive `{other}`")));
                }
            }
        }
        let last = text.lines().count().max(1);
        let n = vertices.ok_or_else(|| Error::parse(last, "missing `vertices` line"))?;
        let framing = framing.ok_or_else(|| Error::parse(last, "missing `framing` line"))?;
        let base = Quiver::new(n, arrows)?;
        FramedQuiver::new(base, DimVector(framing))
    }

    /// Canonical serialization; `parse(serialize(q)) == q`.
    pub fn serialize(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count());
        for a in &self.base.arrows {
            out.push_str(&format!("arrow {} {} {}\n", a.name, a.source, a.target));
        }
        let w: Vec<String> = self.framing.0.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("framing {}\n", w.join(" ")));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn euler_form_examples() {
        let two_loop = FramedQuiver::loops(2, 1);
        assert_eq!(two_loop.euler_form(&dv(&[3]), &dv(&[3])).unwrap(), -9);
        let point = FramedQuiver::vertex_only(1);
        assert_eq!(point.euler_form(&dv(&[2]), &dv(&[3])).unwrap(), 6);
        let a2 = FramedQuiver::a2(1, 0);
        assert_eq!(a2.euler_form(&dv(&[1, 1]), &dv(&[1, 1])).unwrap(), 1);
        assert!(matches!(
            a2.euler_form(&dv(&[1]), &dv(&[1, 1])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn critical_dims() {
        let c = FramedQuiver::loops(2, 1).critical_dim_vector(&dv(&[2])).unwrap();
        assert_eq!(c.0, vec![3]);
        let c = FramedQuiver::vertex_only(4).critical_dim_vector(&dv(&[2])).unwrap();
        assert_eq!(c.0, vec![2]);
        let c = FramedQuiver::vertex_only(1).critical_dim_vector(&dv(&[2])).unwrap();
        assert_eq!(c.0, vec![-1]);
    }

    #[test]
    fn hilbert_dims() {
        assert_eq!(FramedQuiver::loops(2, 1).hilb_dim(&dv(&[3])).unwrap(), 12);
        assert_eq!(FramedQuiver::vertex_only(4).hilb_dim(&dv(&[2])).unwrap(), 4);
        assert_eq!(FramedQuiver::a2(2, 1).hilb_dim(&dv(&[0, 0])).unwrap(), 0);
    }

    #[test]
    fn parse_two_loop() {
        let fq = FramedQuiver::parse(b"vertices 1\narrow a 0 0\narrow b 0 0\nframing 1").unwrap();
        let names: Vec<&str> = fq.arrows().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["g0_1", "a", "b"]);
        assert_eq!(fq.arrows()[0].label, "f");
        assert_eq!(fq, FramedQuiver::loops(2, 1));
    }

    #[test]
    fn parse_a2_and_errors() {
        let fq = FramedQuiver::parse(b"vertices 2\narrow a 0 1\nframing 1 0").unwrap();
        assert_eq!(fq, FramedQuiver::a2(1, 0));

        let err = FramedQuiver::parse(b"vertices 1\narrow a 0 5\nframing 1").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(err.to_string().contains("out of range"));

        let err = FramedQuiver::parse(b"vertices 1\narrow a 0 0\narrow a 0 0\nframing 1").unwrap_err();
        assert!(err.to_string().contains("duplicate arrow"), "{err}");

        let err = FramedQuiver::parse(b"# no framing\nvertices 1\n").unwrap_err();
        assert!(err.to_string().contains("framing"));
    }

    #[test]
    fn framing_labels() {
        let fq = FramedQuiver::loops(2, 2);
        let labels: Vec<&str> = fq.arrows().iter().map(|a| a.label.as_str()).collect();
        assert_eq!(labels, ["e", "f", "a", "b"]);
        // letters would clash with the loop names
        let fq = FramedQuiver::loops(2, 5);
        assert_eq!(fq.arrows()[0].label, "g0_1");
    }

    #[test]
    fn box_enumeration() {
        let b = dv(&[1, 2]).box_below();
        assert_eq!(b.len(), 6);
        assert_eq!(b[0], dv(&[0, 0]));
        assert_eq!(b[1], dv(&[1, 0]));
        assert_eq!(b[5], dv(&[1, 2]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn quiver_strategy() -> impl Strategy<Value = Quiver> {
            (1usize..4).prop_flat_map(|n| {
                proptest::collection::vec((0..n, 0..n), 0..5).prop_map(move |pairs| {
                    let arrows = pairs
                        .into_iter()
                        .enumerate()
                        .map(|(k, (s, t))| Arrow {
                            name: format!("a{k}"),
                            source: s,
                            target: t,
                        })
                        .collect();
                    Quiver::new(n, arrows).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn euler_form_is_bilinear(q in quiver_strategy(), seed in proptest::collection::vec(0u32..5, 12)) {
                let n = q.vertex_count();
                let d = DimVector(seed[0..n].to_vec());
                let d2 = DimVector(seed[4..4 + n].to_vec());
                let e = DimVector(seed[8..8 + n].to_vec());
                prop_assert_eq!(
                    q.euler_form(&d.add(&d2), &e).unwrap(),
                    q.euler_form(&d, &e).unwrap() + q.euler_form(&d2, &e).unwrap()
                );
                prop_assert_eq!(
                    q.euler_form(&e, &d.add(&d2)).unwrap(),
                    q.euler_form(&e, &d).unwrap() + q.euler_form(&e, &d2).unwrap()
                );
            }

            #[test]
            fn critical_dims_match_hilb_dim(q in quiver_strategy(), seed in proptest::collection::vec(0u32..5, 8)) {
                let n = q.vertex_count();
                let w = DimVector(seed[0..n].to_vec());
                let d = DimVector(seed[4..4 + n].to_vec());
                let fq = FramedQuiver::new(q, w.clone()).unwrap();
                let c = fq.critical_dim_vector(&d).unwrap();
                for i in 0..n {
                    let e = DimVector::unit(n, i);
                    prop_assert_eq!(c.0[i], w.dot(&e) - fq.euler_form(&d, &e).unwrap());
                }
                prop_assert_eq!(fq.hilb_dim(&d).unwrap(), c.dot(&d));
            }

            #[test]
            fn serialize_roundtrip(q in quiver_strategy(), w in proptest::collection::vec(0u32..3, 4)) {
                let n = q.vertex_count();
                let fq = FramedQuiver::new(q, DimVector(w[..n].to_vec())).unwrap();
                let text = fq.serialize();
                let back = FramedQuiver::parse(text.as_bytes()).unwrap();
                prop_assert_eq!(back.serialize(), text);
                prop_assert_eq!(back, fq);
            }
        }
    }
}

//! Paths in the framed quiver starting at `∞`, and total orders on them.
//!
//! A [`Path`] stores arrow indices (into [`FramedQuiver::arrows`]) in the
//! order they are applied: `arrows[0]` is a framing arrow. The usual
//! right-to-left composition notation `b a f` therefore corresponds to the
//! stored sequence `[f, a, b]`. The empty path is the root `e_∞`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::quiver::FramedQuiver;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Path(Vec<u16>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn from_arrows(arrows: Vec<u16>) -> Path {
        Path(arrows)
    }

    pub fn arrows(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the root, the path with no arrows.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parent(&self) -> Option<Path> {
        if self.is_root() {
            None
        } else {
            Some(Path(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// The path `a·self`.
    pub fn extend(&self, arrow: u16) -> Path {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(arrow);
        Path(v)
    }

    /// The last applied arrow, i.e. `a` for `a·u`.
    pub fn last_arrow(&self) -> Option<u16> {
        self.0.last().copied()
    }

    /// `self ⪯ other` in the path poset: `other = w·self` for some path `w`.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl FramedQuiver {
    /// Target vertex of a path; `None` for the root (which sits at `∞`).
    pub fn target(&self, p: &Path) -> Option<usize> {
        p.last_arrow().map(|a| self.arrows()[a as usize].target)
    }

    /// Checks that the arrows compose and the first one leaves `∞`.
    pub fn validate_path(&self, p: &Path) -> Result<()> {
        let mut at: Option<usize> = None;
        for &a in p.arrows() {
            let arrow = self
                .arrows()
                .get(a as usize)
                .ok_or_else(|| Error::InvalidPath(format!("arrow index {a} out of range")))?;
            if arrow.source != at {
                return Err(Error::InvalidPath(format!(
                    "arrow `{}` does not compose with the preceding arrows",
                    arrow.label
                )));
            }
            at = Some(arrow.target);
        }
        Ok(())
    }

    /// All paths `a·u` for arrows `a` leaving `t(u)`; for the root, one child
    /// per framing arrow. Returned in arrow order.
    pub fn children(&self, u: &Path) -> Vec<Path> {
        let here = self.target(u);
        self.arrows()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.source == here)
            .map(|(i, _)| u.extend(i as u16))
            .collect()
    }

    /// Every path of length at most `max_len`, in shortlex order.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::root()];
        let mut frontier = vec![Path::root()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                next.extend(self.children(p));
            }
            next.sort_by(|a, b| PathOrder::Shortlex.compare(a, b));
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Renders a path right-to-left. Single-letter labels are concatenated
    /// (`baf`), longer labels are joined with dots (`b.a.g0_1`).
    pub fn display_path(&self, p: &Path) -> String {
        if p.is_root() {
            return "*".to_string();
        }
        let labels: Vec<&str> = p
            .arrows()
            .iter()
            .rev()
            .map(|&a| self.arrows()[a as usize].label.as_str())
            .collect();
        if labels.iter().all(|l| l.chars().count() == 1) {
            labels.concat()
        } else {
            labels.join(".")
        }
    }

    /// Dotted rendering, e.g. `b.b.a.f`.
    pub fn display_path_dotted(&self, p: &Path) -> String {
        if p.is_root() {
            return "*".to_string();
        }
        p.arrows()
            .iter()
            .rev()
            .map(|&a| self.arrows()[a as usize].label.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Parses `b.b.a.f`, the compact `bbaf`, or `b^2af`. Both canonical
    /// framing names (`g0_1`) and their short labels (`f`) are accepted;
    /// `*` is the root.
    pub fn parse_path(&self, s: &str) -> Result<Path> {
        let s = s.trim();
        if s == "*" || s.is_empty() {
            return Ok(Path::root());
        }
        let mut written: Vec<u16> = Vec::new();
        if s.contains('.') {
            for tok in s.split('.') {
                self.push_token(tok, &mut written)?;
            }
        } else {
            let mut rest = s;
            while !rest.is_empty() {
                let (name_len, idx) = self
                    .arrows()
                    .iter()
                    .enumerate()
                    .flat_map(|(i, a)| [(a.name.as_str(), i), (a.label.as_str(), i)])
                    .filter(|(n, _)| rest.starts_with(n))
                    .map(|(n, i)| (n.len(), i))
                    .max()
                    .ok_or_else(|| Error::InvalidPath(format!("cannot read arrow at `{rest}`")))?;
                rest = &rest[name_len..];
                let mut power = 1usize;
                if let Some(r) = rest.strip_prefix('^') {
                    let digits = r.chars().take_while(|c| c.is_ascii_digit()).count();
                    power = r[..digits]
                        .parse()
                        .map_err(|_| Error::InvalidPath(format!("bad exponent in `{s}`")))?;
                    rest = &r[digits..];
                }
                written.extend(std::iter::repeat_n(idx as u16, power));
            }
        }
        written.reverse();
        let p = Path(written);
        self.validate_path(&p)
            .map_err(|e| Error::InvalidPath(format!("`{s}`: {e}")))?;
        Ok(p)
    }

    fn push_token(&self, tok: &str, out: &mut Vec<u16>) -> Result<()> {
        let (name, power) = match tok.split_once('^') {
            Some((n, p)) => (
                n,
                p.parse::<usize>()
                    .map_err(|_| Error::InvalidPath(format!("bad exponent in `{tok}`")))?,
            ),
            None => (tok, 1),
        };
        let idx = self
            .arrow_index(name)
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))?;
        out.extend(std::iter::repeat_n(idx as u16, power));
        Ok(())
    }
}

/// An admissible total order on paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathOrder {
    /// Shorter paths first; equal lengths compared at the first differing
    /// applied arrow.
    Shortlex,
    /// Total arrow weight first, ties broken by shortlex. Weights are
    /// indexed like [`FramedQuiver::arrows`] and strictly positive.
    WeightedShortlex(Vec<BigRational>),
    /// First differing applied arrow; a proper prefix is smaller. Admissible
    /// but not monomial.
    Lex,
}

impl PathOrder {
    pub fn weighted(fq: &FramedQuiver, weights: Vec<BigRational>) -> Result<PathOrder> {
        if weights.len() != fq.arrows().len() {
            return Err(Error::InvalidOrder(format!(
                "need {} arrow weights, got {}",
                fq.arrows().len(),
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::InvalidOrder(format!(
                "weight of arrow `{}` must be positive",
                fq.arrows()[i].label
            )));
        }
        Ok(PathOrder::WeightedShortlex(weights))
    }

    /// `shortlex`, `lex` or `wshortlex` (the latter needs `weights`, given
    /// as `name=value` pairs; unspecified arrows weigh 1).
    pub fn parse(fq: &FramedQuiver, kind: &str, weights: Option<&str>) -> Result<PathOrder> {
        match kind {
            "shortlex" | "lex" if weights.is_some() => {
                Err(Error::InvalidOrder("weights are only meaningful for wshortlex".into()))
            }
            "shortlex" => Ok(PathOrder::Shortlex),
            "lex" => Ok(PathOrder::Lex),
            "wshortlex" | "weighted-shortlex" => {
                let mut ws = vec![BigRational::from_integer(1.into()); fq.arrows().len()];
                for item in weights.unwrap_or("").split(',').filter(|t| !t.trim().is_empty()) {
                    let (name, value) = item
                        .split_once('=')
                        .ok_or_else(|| Error::InvalidOrder(format!("weight `{item}` is not `arrow=value`")))?;
                    let idx = fq
                        .arrow_index(name.trim())
                        .ok_or_else(|| Error::UnknownArrow(name.trim().to_string()))?;
                    ws[idx] = crate::poly::parse_rational(value.trim())
                        .ok_or_else(|| Error::InvalidOrder(format!("invalid weight `{value}`")))?;
                }
                PathOrder::weighted(fq, ws)
            }
            other => Err(Error::InvalidOrder(format!("unknown order `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PathOrder::Shortlex => "shortlex",
            PathOrder::WeightedShortlex(_) => "wshortlex",
            PathOrder::Lex => "lex",
        }
    }

    /// Monomial orders additionally satisfy `u < v ⇒ au < av`.
    pub fn is_monomial(&self) -> bool {
        !matches!(self, PathOrder::Lex)
    }

    pub fn compare(&self, u: &Path, v: &Path) -> Ordering {
        match self {
            PathOrder::Shortlex => shortlex(u, v),
            PathOrder::Lex => u.0.cmp(&v.0),
            PathOrder::WeightedShortlex(w) => {
                let weight = |p: &Path| p.0.iter().fold(BigRational::zero(), |acc, &a| acc + &w[a as usize]);
                weight(u).cmp(&weight(v)).then_with(|| shortlex(u, v))
            }
        }
    }

    pub fn less(&self, u: &Path, v: &Path) -> bool {
        self.compare(u, v) == Ordering::Less
    }

    pub fn sort(&self, paths: &mut [Path]) {
        paths.sort_by(|a, b| self.compare(a, b));
    }
}

fn shortlex(u: &Path, v: &Path) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.0.cmp(&v.0))
}

/// Witness that an order violates `u < v ⇒ au < av`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialViolation {
    pub arrow: u16,
    pub u: Path,
    pub v: Path,
}

/// `u < v` but `au ≥ av`.
pub fn violates(order: &PathOrder, arrow: u16, u: &Path, v: &Path) -> bool {
    order.less(u, v) && !order.less(&u.extend(arrow), &v.extend(arrow))
}

/// Searches pairs `u < v` whose extensions by a common arrow stay within
/// `length_bound` for a violation of the monomial axiom. Pairs are scanned
/// with `u` outermost, both in shortlex order, then arrows in arrow order.
pub fn monomial_axiom_check(fq: &FramedQuiver, order: &PathOrder, length_bound: usize) -> Option<MonomialViolation> {
    if length_bound == 0 {
        return None;
    }
    let paths = fq.paths_up_to(length_bound - 1);
    for u in &paths {
        let tu = fq.target(u);
        for v in &paths {
            if fq.target(v) != tu || !order.less(u, v) {
                continue;
            }
            for (a, arrow) in fq.arrows().iter().enumerate() {
                if arrow.source != tu {
                    continue;
                }
                let (au, av) = (u.extend(a as u16), v.extend(a as u16));
                if !order.less(&au, &av) {
                    return Some(MonomialViolation {
                        arrow: a as u16,
                        u: u.clone(),
                        v: v.clone(),
                    });
                }
            }
        }
    }
    None
}

impl fmt::Display for PathOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_loop() -> FramedQuiver {
        FramedQuiver::loops(2, 1)
    }

    #[test]
    fn parse_and_display() {
        let fq = two_loop();
        let p = fq.parse_path("b^2af").unwrap();
        assert_eq!(fq.display_path(&p), "bbaf");
        assert_eq!(fq.display_path_dotted(&p), "b.b.a.f");
        assert_eq!(fq.parse_path("b.b.a.f").unwrap(), p);
        assert_eq!(fq.parse_path("bbaf").unwrap(), p);
        assert_eq!(fq.parse_path("b.b.a.g0_1").unwrap(), p);
        assert_eq!(p.arrows(), &[0, 1, 2, 2]);
        assert!(fq.parse_path("fa").is_err());
        assert!(fq.parse_path("zf").is_err());
    }

    #[test]
    fn shortlex_examples() {
        let fq = two_loop();
        let p = |s: &str| fq.parse_path(s).unwrap();
        let o = PathOrder::Shortlex;
        assert_eq!(o.compare(&p("af"), &p("bf")), Ordering::Less);
        assert_eq!(o.compare(&p("a^2f"), &p("baf")), Ordering::Less);
        assert_eq!(o.compare(&p("bf"), &p("a^2f")), Ordering::Less);
        assert_eq!(o.compare(&p("af"), &p("af")), Ordering::Equal);
    }

    #[test]
    fn lex_counterexample() {
        let fq = two_loop();
        let p = |s: &str| fq.parse_path(s).unwrap();
        let o = PathOrder::Lex;
        assert_eq!(o.compare(&p("af"), &p("a^2f")), Ordering::Less);
        assert_eq!(o.compare(&p("baf"), &p("ba^2f")), Ordering::Greater);
    }

    #[test]
    fn children_lists() {
        let fq = two_loop();
        let f = fq.parse_path("f").unwrap();
        assert_eq!(fq.children(&Path::root()), vec![f.clone()]);
        let kids: Vec<String> = fq.children(&f).iter().map(|c| fq.display_path(c)).collect();
        assert_eq!(kids, ["af", "bf"]);

        let a2 = FramedQuiver::a2(1, 0);
        let f = a2.parse_path("f").unwrap();
        let kids: Vec<String> = a2.children(&f).iter().map(|c| a2.display_path(c)).collect();
        assert_eq!(kids, ["af"]);
        assert!(a2.children(&a2.parse_path("af").unwrap()).is_empty());
    }

    #[test]
    fn monomial_axiom() {
        let fq = two_loop();
        assert_eq!(monomial_axiom_check(&fq, &PathOrder::Shortlex, 5), None);
        let w = |x: i64| BigRational::from_integer(x.into());
        let weighted = PathOrder::weighted(&fq, vec![w(1), w(1), w(2)]).unwrap();
        assert_eq!(monomial_axiom_check(&fq, &weighted, 5), None);

        let v = monomial_axiom_check(&fq, &PathOrder::Lex, 4).expect("lex is not monomial");
        assert_eq!(fq.arrows()[v.arrow as usize].label, "b");
        assert_eq!(fq.display_path(&v.u), "f");
        assert_eq!(fq.display_path(&v.v), "af");
        assert!(violates(&PathOrder::Lex, v.arrow, &v.u, &v.v));

        let p = |s: &str| fq.parse_path(s).unwrap();
        let b = fq.arrow_index("b").unwrap() as u16;
        assert!(violates(&PathOrder::Lex, b, &p("af"), &p("aaf")));
        assert!(!violates(&PathOrder::Shortlex, b, &p("af"), &p("aaf")));
    }

    #[test]
    fn weighted_order_rejects_bad_weights() {
        let fq = two_loop();
        let w = |x: i64| BigRational::from_integer(x.into());
        assert!(PathOrder::weighted(&fq, vec![w(1), w(0), w(2)]).is_err());
        assert!(PathOrder::weighted(&fq, vec![w(1)]).is_err());
        let o = PathOrder::parse(&fq, "wshortlex", Some("a=1,b=1/2")).unwrap();
        let p = |s: &str| fq.parse_path(s).unwrap();
        // bbf and af both weigh 2, so length decides
        assert_eq!(o.compare(&p("bf"), &p("af")), Ordering::Less);
        assert_eq!(o.compare(&p("bbf"), &p("af")), Ordering::Greater);
    }

    #[test]
    fn total_and_admissible_up_to_length_five() {
        let fq = two_loop();
        let paths = fq.paths_up_to(5);
        let w = |x: i64| BigRational::from_integer(x.into());
        let orders = [
            PathOrder::Shortlex,
            PathOrder::Lex,
            PathOrder::weighted(&fq, vec![w(1), w(1), w(2)]).unwrap(),
        ];
        for o in &orders {
            let mut sorted = paths.clone();
            o.sort(&mut sorted);
            for win in sorted.windows(2) {
                assert_eq!(o.compare(&win[0], &win[1]), Ordering::Less, "{o}");
            }
            for u in &paths {
                for v in &paths {
                    assert_eq!(o.compare(u, v), o.compare(v, u).reverse());
                    if u != v && u.is_prefix_of(v) {
                        assert!(o.less(u, v), "{o} not admissible");
                    }
                }
                for c in fq.children(u) {
                    assert_eq!(c.parent().as_ref(), Some(u));
                }
            }
        }
    }
}

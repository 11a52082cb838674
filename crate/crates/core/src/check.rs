//! The self-check suite behind `coha-lab check`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cells::{classify, enumerate_trees, in_cell};
use crate::charts::chart_coordinates;
use crate::coha::{shuffle_product, verify_basis, SliceBasis, SymPoly};
use crate::error::Result;
use crate::partitions::{partition_to_tree, partitions_unordered, tree_to_partition};
use crate::path::{monomial_axiom_check, PathOrder};
use crate::poly::q;
use crate::quiver::{DimVector, FramedQuiver};
use crate::rep::random_stable_reps;
use crate::series::{gaussian_binomial, motivic_class, motivic_class_from_trees};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

fn row(name: &'static str, outcome: Result<(usize, Option<String>)>) -> CheckRow {
    match outcome {
        Ok((cases, None)) => CheckRow {
            name,
            passed: true,
            cases,
            detail: String::new(),
        },
        Ok((cases, Some(detail))) => CheckRow {
            name,
            passed: false,
            cases,
            detail,
        },
        Err(e) => CheckRow {
            name,
            passed: false,
            cases: 0,
            detail: e.to_string(),
        },
    }
}

fn dims_up_to(fq: &FramedQuiver, bound: u32) -> Vec<DimVector> {
    DimVector::new(vec![bound; fq.vertex_count()]).box_below()
}

fn small_fixtures() -> Vec<FramedQuiver> {
    vec![
        FramedQuiver::vertex_only(3),
        FramedQuiver::loops(1, 2),
        FramedQuiver::loops(2, 1),
        FramedQuiver::loops(2, 2),
        FramedQuiver::a2(1, 1),
        FramedQuiver::a2(2, 0),
    ]
}

fn orders() -> [PathOrder; 2] {
    [PathOrder::Shortlex, PathOrder::Lex]
}

fn roundtrips() -> Result<(usize, Option<String>)> {
    let mut cases = 0;
    for fq in small_fixtures() {
        for d in dims_up_to(&fq, 3) {
            let lams = partitions_unordered(&fq, &d)?;
            for o in orders() {
                let trees = enumerate_trees(&fq, &d, &o)?;
                if trees.len() != lams.len() {
                    return Ok((
                        cases,
                        Some(format!("({d}): {} trees, {} partitions", trees.len(), lams.len())),
                    ));
                }
                for s in &trees {
                    cases += 1;
                    let lam = tree_to_partition(&fq, s, &o);
                    if partition_to_tree(&fq, &lam, &o)? != *s {
                        return Ok((cases, Some(format!("tree {} does not round-trip", s.display(&fq, &o)))));
                    }
                }
                for lam in &lams {
                    cases += 1;
                    let s = partition_to_tree(&fq, lam, &o)?;
                    if tree_to_partition(&fq, &s, &o) != *lam {
                        return Ok((cases, Some(format!("partition {lam} does not round-trip"))));
                    }
                }
            }
        }
    }
    Ok((cases, None))
}

fn order_independence() -> Result<(usize, Option<String>)> {
    let mut cases = 0;
    for fq in small_fixtures() {
        for d in dims_up_to(&fq, 3) {
            let m = motivic_class(&fq, &d)?;
            for o in orders() {
                cases += 1;
                let t = motivic_class_from_trees(&fq, &d, &o)?;
                if t != m {
                    return Ok((cases, Some(format!("({d}) {}: {t} vs {m}", o.name()))));
                }
            }
        }
    }
    Ok((cases, None))
}

fn q_binomials() -> Result<(usize, Option<String>)> {
    let mut cases = 0;
    for w in 0..=7 {
        for d in 0..=w {
            cases += 1;
            let m = motivic_class(&FramedQuiver::vertex_only(w), &DimVector::new(vec![d]))?;
            let g = gaussian_binomial(w, d);
            if m != g {
                return Ok((cases, Some(format!("Gr({d},{w}): {m} vs {g}"))));
            }
        }
    }
    Ok((cases, None))
}

fn basis_fixtures() -> Vec<(FramedQuiver, DimVector)> {
    let mut out = Vec::new();
    for w in 1..=4 {
        for d in 0..=2 {
            out.push((FramedQuiver::vertex_only(w), DimVector::new(vec![d])));
        }
    }
    for w in 1..=2 {
        for d in 0..=3 {
            out.push((FramedQuiver::loops(1, w), DimVector::new(vec![d])));
        }
    }
    for d in 0..=3 {
        out.push((FramedQuiver::loops(2, 1), DimVector::new(vec![d])));
    }
    let a2 = FramedQuiver::a2(2, 0);
    for d in dims_up_to(&a2, 2) {
        out.push((a2.clone(), d));
    }
    out
}

/// Every degree from 0 to one past the top nonzero degree.
pub fn basis_degrees(fq: &FramedQuiver, d: &DimVector) -> Result<u32> {
    Ok(fq.hilb_dim(d)?.max(0) as u32 + 1)
}

fn basis() -> Result<(usize, Option<String>)> {
    let mut cases = 0;
    for (fq, d) in basis_fixtures() {
        for n in 0..=basis_degrees(&fq, &d)? {
            cases += 1;
            let r = verify_basis(&fq, &d, n)?;
            if !r.independent {
                return Ok((cases, Some(format!("({d}) degree {n}: {r:?}"))));
            }
        }
    }
    Ok((cases, None))
}

/// A random element of `H_d` in degrees `≤ max_deg`.
pub fn random_element<R: Rng>(d: &DimVector, max_deg: u32, rng: &mut R) -> SymPoly {
    let mut acc = SymPoly::zero(d);
    for n in 0..=max_deg {
        let b = SliceBasis::new(d, n);
        for k in 0..b.len() {
            if rng.gen_bool(0.4) {
                let c = q(rng.gen_range(-3..=3));
                acc = acc.add(&b.element(k).scale(&c)).expect("same dimension");
            }
        }
    }
    acc
}

fn associativity(seed: u64) -> Result<(usize, Option<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    for fq in [
        FramedQuiver::vertex_only(1),
        FramedQuiver::loops(1, 1),
        FramedQuiver::loops(2, 1),
        FramedQuiver::a2(1, 0),
    ] {
        let q = fq.base();
        let nv = q.vertex_count();
        for _ in 0..8 {
            let el = |rng: &mut ChaCha8Rng| {
                let d = DimVector::new((0..nv).map(|_| rng.gen_range(0..=1)).collect());
                random_element(&d, 2, rng)
            };
            let (f, g, h) = (el(&mut rng), el(&mut rng), el(&mut rng));
            cases += 1;
            let left = shuffle_product(q, &shuffle_product(q, &f, &g), &h);
            let right = shuffle_product(q, &f, &shuffle_product(q, &g, &h));
            if left != right {
                return Ok((
                    cases,
                    Some(format!("({}) * ({}) * ({})", f.display(), g.display(), h.display())),
                ));
            }
        }
    }
    Ok((cases, None))
}

fn cell_partition(seed: u64) -> Result<(usize, Option<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    for (fq, d) in [
        (FramedQuiver::loops(2, 1), DimVector::new(vec![3])),
        (FramedQuiver::vertex_only(4), DimVector::new(vec![2])),
        (FramedQuiver::a2(2, 1), DimVector::new(vec![2, 1])),
    ] {
        let o = PathOrder::Shortlex;
        let trees = enumerate_trees(&fq, &d, &o)?;
        for rep in random_stable_reps(&fq, &d, &o, 25, &mut rng)? {
            cases += 1;
            let s = classify(&fq, &rep, &o)?;
            let hits = trees.iter().filter(|t| in_cell(&fq, &rep, t, &o)).count();
            if hits != 1 || !in_cell(&fq, &rep, &s, &o) {
                return Ok((cases, Some(format!("({d}): rep lies in {hits} cells"))));
            }
        }
    }
    Ok((cases, None))
}

fn chart_dimensions() -> Result<(usize, Option<String>)> {
    let mut cases = 0;
    for fq in small_fixtures() {
        for d in dims_up_to(&fq, 2) {
            for o in orders() {
                for s in enumerate_trees(&fq, &d, &o)? {
                    cases += 1;
                    let n = chart_coordinates(&fq, &s, &o).len() as i64;
                    if n != fq.hilb_dim(&d)? {
                        return Ok((
                            cases,
                            Some(format!("chart of {} has {n} coordinates", s.display(&fq, &o))),
                        ));
                    }
                }
            }
        }
    }
    Ok((cases, None))
}

fn monomial_axiom() -> Result<(usize, Option<String>)> {
    let fq = FramedQuiver::loops(2, 1);
    if let Some(v) = monomial_axiom_check(&fq, &PathOrder::Shortlex, 4) {
        return Ok((1, Some(format!("shortlex violates the axiom: {v:?}"))));
    }
    if monomial_axiom_check(&fq, &PathOrder::Lex, 4).is_none() {
        return Ok((2, Some("lex should violate the axiom".into())));
    }
    Ok((2, None))
}

/// Runs every check; `on_row` sees each result as soon as it is ready.
pub fn run_checks(seed: u64, mut on_row: impl FnMut(&CheckRow, u128)) -> Vec<CheckRow> {
    type Check = Box<dyn Fn(u64) -> Result<(usize, Option<String>)>>;
    let checks: Vec<(&'static str, Check)> = vec![
        ("bijection-roundtrip", Box::new(|_| roundtrips())),
        ("order-independence", Box::new(|_| order_independence())),
        ("q-binomial", Box::new(|_| q_binomials())),
        ("monomial-axiom", Box::new(|_| monomial_axiom())),
        ("chart-dimension", Box::new(|_| chart_dimensions())),
        ("cell-partition", Box::new(cell_partition)),
        ("shuffle-associativity", Box::new(associativity)),
        ("tautological-basis", Box::new(|_| basis())),
    ];
    checks
        .into_iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let r = row(name, f(seed));
            on_row(&r, start.elapsed().as_millis());
            r
        })
        .collect()
}

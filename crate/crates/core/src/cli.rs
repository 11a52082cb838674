//! The `coha-lab` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::cells::{cell_dim, classify, enumerate_trees, Subtree};
use crate::charts::{membership_minors, multiplicity_power, Chart};
use crate::check::{run_checks, DEFAULT_SEED};
use crate::coha::{shuffle_product, var_names, verify_basis};
use crate::error::{Error, Result};
use crate::expr::parse_element;
use crate::partitions::{
    enumerate_partitions, infer_dimension, partition_cell_dim, partition_to_tree, tree_to_partition, MultiPartition,
};
use crate::path::PathOrder;
use crate::quiver::{DimVector, FramedQuiver};
use crate::rep::NumericRep;
use crate::series::{betti_numbers, motivic_class};

#[derive(Debug, Parser)]
#[command(
    name = "coha-lab",
    version,
    about = "Cell decompositions of framed quiver moduli and CoHA computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Quiver file
    #[arg(short = 'q', long = "quiver")]
    quiver: PathBuf,
    /// Path order: shortlex, lex or wshortlex
    #[arg(long, default_value = "shortlex")]
    order: String,
    /// Arrow weights for wshortlex, e.g. `a=1,b=1/2`
    #[arg(long)]
    weights: Option<String>,
    /// Emit one JSON object per output row
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the trees of size d in increasing order
    Trees {
        #[command(flatten)]
        common: Common,
        /// Dimension vector, e.g. `3` or `2,1`
        #[arg(long)]
        dim: String,
    },
    /// List the multipartitions of S(d) in the order induced by the trees
    Partitions {
        #[command(flatten)]
        common: Common,
        /// Dimension vector, e.g. `3` or `2,1`
        #[arg(long)]
        dim: String,
    },
    /// Convert between a tree and its multipartition
    Bijection {
        #[command(flatten)]
        common: Common,
        /// Dimension vector; inferred from --partition when omitted
        #[arg(long)]
        dim: Option<String>,
        /// Multipartition, e.g. `[2,1]` or `[1][0]`
        #[arg(long, conflicts_with = "tree", required_unless_present = "tree")]
        partition: Option<String>,
        /// Tree as comma-separated paths, e.g. `f,af,baf`
        #[arg(long)]
        tree: Option<String>,
    },
    /// Motivic class of the moduli space as a polynomial in L
    Series {
        #[command(flatten)]
        common: Common,
        /// Dimension vector, e.g. `3` or `2,1`
        #[arg(long)]
        dim: String,
        /// Print Betti numbers instead
        #[arg(long)]
        betti: bool,
    },
    /// Betti numbers (degree, rank)
    Betti {
        #[command(flatten)]
        common: Common,
        /// Dimension vector, e.g. `3` or `2,1`
        #[arg(long)]
        dim: String,
    },
    /// Shuffle product of two CoHA elements written `d=<dims>:<poly>`
    Shuffle {
        #[command(flatten)]
        common: Common,
        /// Left factor, e.g. `d=1:x`
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        /// Right factor
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Check that tautological monomials form a basis, degree by degree
    VerifyBasis {
        #[command(flatten)]
        common: Common,
        /// Dimension vector, e.g. `3` or `2,1`
        #[arg(long)]
        dim: String,
        /// Highest degree checked; defaults to one past the top degree
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Degeneracy minors of a target tree on the chart of another tree
    Charts {
        #[command(flatten)]
        common: Common,
        /// Tree whose degeneracy locus is examined
        #[arg(long)]
        target: String,
        /// Tree whose chart carries the coordinates
        #[arg(long)]
        chart: String,
        /// Also extract the multiplicity power
        #[arg(long)]
        multiplicity: bool,
    },
    /// Find the cell of a representation
    Classify {
        #[command(flatten)]
        common: Common,
        /// Representation file
        rep: PathBuf,
    },
    /// Run the built-in property suite
    Check {
        /// Seed for the random fixtures
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
}

/// Exit status for an error: 1 for violated mathematical preconditions,
/// 2 for malformed input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotStable { .. } | Error::NotInS(_) | Error::NotMonomial(_) | Error::NotSymmetric(_) => 1,
        _ => 2,
    }
}

struct Ctx {
    fq: FramedQuiver,
    order: PathOrder,
    json: bool,
}

impl Ctx {
    fn load(c: &Common) -> Result<Ctx> {
        let text =
            std::fs::read(&c.quiver).map_err(|e| Error::arg(format!("cannot read {}: {e}", c.quiver.display())))?;
        let fq = FramedQuiver::parse(&text).map_err(|e| Error::arg(format!("{}: {e}", c.quiver.display())))?;
        let order = PathOrder::parse(&fq, &c.order, c.weights.as_deref())?;
        Ok(Ctx {
            fq,
            order,
            json: c.json,
        })
    }

    fn dim(&self, s: &str) -> Result<DimVector> {
        let d = DimVector::parse(s)?;
        self.fq.check_dim(&d)?;
        Ok(d)
    }

    fn tree(&self, s: &str) -> Result<Subtree> {
        Subtree::parse(&self.fq, s)
    }

    fn show(&self, s: &Subtree) -> String {
        s.display(&self.fq, &self.order)
    }
}

#[derive(Serialize)]
struct TreeRow {
    tree: String,
    dim: u64,
    partition: String,
}

#[derive(Serialize)]
struct PartitionRow {
    partition: String,
    dim: i64,
}

#[derive(Serialize)]
struct TermRow {
    degree: i64,
    coeff: String,
}

#[derive(Serialize)]
struct ElementRow {
    dim: String,
    poly: String,
}

#[derive(Serialize)]
struct MinorRow {
    v: String,
    rows: Vec<usize>,
    poly: String,
}

fn emit<W: Write>(out: &mut W, json: bool, row: &impl Serialize, text: impl FnOnce() -> String) -> Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string(row).expect("plain data serializes"))?;
    } else {
        writeln!(out, "{}", text())?;
    }
    Ok(())
}

fn tree_row(ctx: &Ctx, s: &Subtree) -> TreeRow {
    TreeRow {
        tree: ctx.show(s),
        dim: cell_dim(&ctx.fq, s, &ctx.order),
        partition: tree_to_partition(&ctx.fq, s, &ctx.order).to_string(),
    }
}

fn print_tree<W: Write>(out: &mut W, ctx: &Ctx, s: &Subtree) -> Result<()> {
    let r = tree_row(ctx, s);
    emit(out, ctx.json, &r, || {
        format!("{} dim={} partition={}", r.tree, r.dim, r.partition)
    })
}

fn dispatch<W: Write>(cmd: Command, out: &mut W) -> Result<i32> {
    match cmd {
        Command::Trees { common, dim } => {
            let ctx = Ctx::load(&common)?;
            let d = ctx.dim(&dim)?;
            for s in enumerate_trees(&ctx.fq, &d, &ctx.order)? {
                print_tree(out, &ctx, &s)?;
            }
        }
        Command::Partitions { common, dim } => {
            let ctx = Ctx::load(&common)?;
            let d = ctx.dim(&dim)?;
            for lam in enumerate_partitions(&ctx.fq, &d, &ctx.order)? {
                let r = PartitionRow {
                    partition: lam.to_string(),
                    dim: partition_cell_dim(&ctx.fq, &d, &lam)?,
                };
                emit(out, ctx.json, &r, || format!("{} dim={}", r.partition, r.dim))?;
            }
        }
        Command::Bijection {
            common,
            dim,
            partition,
            tree,
        } => {
            let ctx = Ctx::load(&common)?;
            if let Some(p) = partition {
                let lam = match &dim {
                    Some(d) => MultiPartition::parse(&p, &ctx.dim(d)?)?,
                    None => infer_dimension(&ctx.fq, &p)?.1,
                };
                let s = partition_to_tree(&ctx.fq, &lam, &ctx.order)?;
                print_tree(out, &ctx, &s)?;
            } else {
                let s = ctx.tree(tree.as_deref().expect("clap requires one of the two"))?;
                if let Some(d) = &dim {
                    let d = ctx.dim(d)?;
                    if s.udim(&ctx.fq) != d {
                        return Err(Error::arg(format!(
                            "tree has dimension vector ({}), not ({d})",
                            s.udim(&ctx.fq)
                        )));
                    }
                }
                print_tree(out, &ctx, &s)?;
            }
        }
        Command::Series { common, dim, betti } => {
            let ctx = Ctx::load(&common)?;
            let d = ctx.dim(&dim)?;
            if betti {
                print_betti(out, &ctx, &d)?;
            } else {
                let m = motivic_class(&ctx.fq, &d)?;
                if ctx.json {
                    for t in m.json_terms() {
                        emit(
                            out,
                            true,
                            &TermRow {
                                degree: t.degree,
                                coeff: t.coeff,
                            },
                            String::new,
                        )?;
                    }
                } else {
                    writeln!(out, "{m}")?;
                }
            }
        }
        Command::Betti { common, dim } => {
            let ctx = Ctx::load(&common)?;
            let d = ctx.dim(&dim)?;
            print_betti(out, &ctx, &d)?;
        }
        Command::Shuffle { common, left, right } => {
            let ctx = Ctx::load(&common)?;
            let nv = ctx.fq.vertex_count();
            let f = parse_element(&left, nv)?;
            let g = parse_element(&right, nv)?;
            let p = shuffle_product(ctx.fq.base(), &f, &g);
            let names = var_names(p.dim());
            let r = ElementRow {
                dim: p.dim().to_string(),
                poly: p.poly().display_with(&names).to_string(),
            };
            emit(out, ctx.json, &r, || format!("d={}:{}", r.dim, r.poly))?;
        }
        Command::VerifyBasis {
            common,
            dim,
            max_degree,
        } => {
            let ctx = Ctx::load(&common)?;
            let d = ctx.dim(&dim)?;
            let top = match max_degree {
                Some(n) => n,
                None => crate::check::basis_degrees(&ctx.fq, &d)?,
            };
            if !ctx.json {
                writeln!(out, "degree h_dim kernel_dim quotient_dim partitions independent")?;
            }
            let mut ok = true;
            for n in 0..=top {
                let r = verify_basis(&ctx.fq, &d, n)?;
                ok &= r.independent;
                emit(out, ctx.json, &r, || {
                    format!(
                        "{:>6} {:>5} {:>10} {:>12} {:>10} {}",
                        r.degree, r.h_dim, r.kernel_dim, r.quotient_dim, r.partition_count, r.independent
                    )
                })?;
            }
            if !ok {
                return Ok(1);
            }
        }
        Command::Charts {
            common,
            target,
            chart,
            multiplicity,
        } => {
            let ctx = Ctx::load(&common)?;
            let (s, sp) = (ctx.tree(&target)?, ctx.tree(&chart)?);
            let ch = Chart::new(&ctx.fq, &sp, &ctx.order);
            if !ctx.json {
                writeln!(out, "chart {} has {} coordinates", ctx.show(&sp), ch.nvars())?;
            }
            for m in membership_minors(&ctx.fq, &s, &ch, &ctx.order)? {
                let r = MinorRow {
                    v: ctx.fq.display_path(&m.v),
                    rows: m.rows.iter().map(|r| r + 1).collect(),
                    poly: m.value.display_with(ch.labels()).to_string(),
                };
                emit(out, ctx.json, &r, || {
                    let rows: Vec<String> = r.rows.iter().map(|x| x.to_string()).collect();
                    format!("v={} rows={}: {}", r.v, rows.join(","), r.poly)
                })?;
            }
            if multiplicity {
                let m = multiplicity_power(&ctx.fq, &s, &sp, &ctx.order)?;
                let text = m.map_or("indeterminate".to_string(), |m| m.to_string());
                if ctx.json {
                    writeln!(out, "{}", serde_json::json!({ "multiplicity": m }))?;
                } else {
                    writeln!(out, "multiplicity={text}")?;
                }
            }
        }
        Command::Classify { common, rep } => {
            let ctx = Ctx::load(&common)?;
            let text =
                std::fs::read_to_string(&rep).map_err(|e| Error::arg(format!("cannot read {}: {e}", rep.display())))?;
            let m = NumericRep::parse(&ctx.fq, &text)?;
            let s = classify(&ctx.fq, &m, &ctx.order)?;
            print_tree(out, &ctx, &s)?;
        }
        Command::Check { seed, json } => {
            let mut failed = false;
            if !json {
                writeln!(out, "{:<24} {:>6} {:>8}  result", "check", "cases", "ms")?;
            }
            let mut io: Result<()> = Ok(());
            run_checks(seed, |r, ms| {
                failed |= !r.passed;
                if io.is_err() {
                    return;
                }
                io = if json {
                    let mut v = serde_json::to_value(r).expect("plain data serializes");
                    v["ms"] = (ms as u64).into();
                    writeln!(out, "{v}").map_err(Error::from)
                } else {
                    let verdict = if r.passed {
                        "PASS".to_string()
                    } else {
                        format!("FAIL {}", r.detail)
                    };
                    writeln!(out, "{:<24} {:>6} {:>8}  {verdict}", r.name, r.cases, ms).map_err(Error::from)
                };
            });
            io?;
            if failed {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn print_betti<W: Write>(out: &mut W, ctx: &Ctx, d: &DimVector) -> Result<()> {
    for (deg, count) in betti_numbers(&ctx.fq, d)? {
        let r = TermRow {
            degree: deg as i64,
            coeff: count.to_string(),
        };
        emit(out, ctx.json, &r, || format!("b{deg} = {count}"))?;
    }
    Ok(())
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T, W, E>(argv: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        // a closed pipe (`| head`) is not worth a message
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

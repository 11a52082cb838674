//! C ABI over `coha-lab`.
//!
//! Every function returns a [`CohaStatus`]. On failure the message is
//! available from [`coha_last_error`] on the same thread. Strings handed out
//! through `char **` parameters are owned by the caller and released with
//! [`coha_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use coha_lab::cells::{cell_dim, classify, enumerate_trees, Subtree};
use coha_lab::coha::shuffle_product;
use coha_lab::expr::parse_element;
use coha_lab::partitions::{partition_to_tree, tree_to_partition, MultiPartition};
use coha_lab::rep::NumericRep;
use coha_lab::series::motivic_class;
use coha_lab::{DimVector, Error, FramedQuiver, PathOrder};
use num_traits::ToPrimitive;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CohaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    NotStable = 5,
    NotInS = 6,
    NotMonomial = 7,
    NotSymmetric = 8,
    BufferTooSmall = 9,
    Overflow = 10,
    Panic = 11,
}

/// A framed quiver. Create with `coha_quiver_parse`, release with
/// `coha_quiver_free`.
pub struct CohaQuiver(FramedQuiver);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(CohaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::Expr { .. } => CohaStatus::Parse,
            Error::NotStable { .. } => CohaStatus::NotStable,
            Error::NotInS(_) => CohaStatus::NotInS,
            Error::NotMonomial(_) => CohaStatus::NotMonomial,
            Error::NotSymmetric(_) => CohaStatus::NotSymmetric,
            _ => CohaStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Outcome) -> CohaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CohaStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| payload.downcast_ref::<&str>().copied())
                .unwrap_or("panic");
            set_error(&format!("internal error: {msg}"));
            CohaStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(CohaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CohaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn quiver<'a>(q: *const CohaQuiver) -> Result<&'a FramedQuiver, Failure> {
    q.as_ref().map(|q| &q.0).ok_or_else(|| null("quiver"))
}

/// A null `order` means shortlex.
unsafe fn order(fq: &FramedQuiver, order: *const c_char, weights: *const c_char) -> Result<PathOrder, Failure> {
    let kind = if order.is_null() {
        "shortlex"
    } else {
        text(order, "order")?
    };
    let weights = if weights.is_null() {
        None
    } else {
        Some(text(weights, "weights")?)
    };
    Ok(PathOrder::parse(fq, kind, weights)?)
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Outcome {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Failure(CohaStatus::InvalidArgument, "interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn coha_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn coha_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a quiver description (`vertices`, `arrow`, `framing` lines).
///
/// # Safety
/// `src` must be a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coha_quiver_parse(src: *const c_char, out: *mut *mut CohaQuiver) -> CohaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let fq = FramedQuiver::parse(text(src, "text")?.as_bytes())?;
        *out = Box::into_raw(Box::new(CohaQuiver(fq)));
        Ok(())
    })
}

/// # Safety
/// `q` must come from `coha_quiver_parse` and not have been freed. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn coha_quiver_free(q: *mut CohaQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn coha_quiver_vertex_count(q: *const CohaQuiver, out: *mut usize) -> CohaStatus {
    guard(|| {
        let fq = quiver(q)?;
        *out.as_mut().ok_or_else(|| null("output pointer"))? = fq.vertex_count();
        Ok(())
    })
}

/// Number of trees (equivalently cells) for dimension vector `dim`, e.g. `"3"`.
///
/// # Safety
/// Pointers must be valid; `order` and `weights` may be null.
#[no_mangle]
pub unsafe extern "C" fn coha_tree_count(
    q: *const CohaQuiver,
    dim: *const c_char,
    order_name: *const c_char,
    weights: *const c_char,
    out: *mut usize,
) -> CohaStatus {
    guard(|| {
        let fq = quiver(q)?;
        let d = DimVector::parse(text(dim, "dim")?)?;
        let o = order(fq, order_name, weights)?;
        let n = enumerate_trees(fq, &d, &o)?.len();
        *out.as_mut().ok_or_else(|| null("output pointer"))? = n;
        Ok(())
    })
}

/// The trees of size `dim` in increasing order, one per line as
/// `tree dim=<cell dimension> partition=<multipartition>`.
///
/// # Safety
/// Pointers must be valid; `order` and `weights` may be null.
#[no_mangle]
pub unsafe extern "C" fn coha_trees(
    q: *const CohaQuiver,
    dim: *const c_char,
    order_name: *const c_char,
    weights: *const c_char,
    out: *mut *mut c_char,
) -> CohaStatus {
    guard(|| {
        let fq = quiver(q)?;
        let d = DimVector::parse(text(dim, "dim")?)?;
        let o = order(fq, order_name, weights)?;
        let lines: Vec<String> = enumerate_trees(fq, &d, &o)?
            .iter()
            .map(|s| {
                format!(
                    "{} dim={} partition={}",
                    s.display(fq, &o),
                    cell_dim(fq, s, &o),
                    tree_to_partition(fq, s, &o)
                )
            })
            .collect();
        give_string(out, lines.join("\n"))
    })
}

/// Coefficients of the motivic class, constant term first. On
/// `BufferTooSmall` (or with `coeffs` null) `*len` holds the needed length.
///
/// # Safety
/// `coeffs` must have room for `cap` values or be null.
#[no_mangle]
pub unsafe extern "C" fn coha_motivic_class(
    q: *const CohaQuiver,
    dim: *const c_char,
    coeffs: *mut i64,
    cap: usize,
    len: *mut usize,
) -> CohaStatus {
    guard(|| {
        let fq = quiver(q)?;
        let d = DimVector::parse(text(dim, "dim")?)?;
        let m = motivic_class(fq, &d)?;
        let len = len.as_mut().ok_or_else(|| null("length pointer"))?;
        let top = m.degree().map_or(0, |t| t + 1) as usize;
        *len = top;
        if coeffs.is_null() || cap < top {
            return Err(Failure(
                CohaStatus::BufferTooSmall,
                format!("{top} coefficients needed"),
            ));
        }
        for k in 0..top {
            let c = m.coeff(k as i64);
            *coeffs.add(k) = c
                .to_i64()
                .ok_or_else(|| Failure(CohaStatus::Overflow, format!("coefficient {c} exceeds 64 bits")))?;
        }
        Ok(())
    })
}

/// The multipartition of a tree such as `"f,af,baf"`.
///
/// # Safety
/// Pointers must be valid; `order` and `weights` may be null.
#[no_mangle]
pub unsafe extern "C" fn coha_tree_to_partition(
    q: *const CohaQuiver,
    tree: *const c_char,
    order_name: *const c_char,
    weights: *const c_char,
    out: *mut *mut c_char,
) -> CohaStatus {
    guard(|| {
        let fq = quiver(q)?;
        let o = order(fq, order_name, weights)?;
        let s = Subtree::parse(fq, text(tree, "tree")?)?;
        give_string(out, tree_to_partition(fq, &s, &o).to_string())
    })
}

/// The tree of a multipartition such as `"[2,1]"` for dimension vector `dim`.
///
/// # Safety
/// Pointers must be valid; `order` and `weights` may be null.
#[no_mangle]
pub unsafe extern "C" fn coha_partition_to_tree(
    q: *const CohaQuiver,
    partition: *const c_char,
    dim: *const c_char,
    order_name: *const c_char,
    weights: *const c_char,
    out: *mut *mut c_char,
) -> CohaStatus {
    guard(|| {
        let fq = quiver(q)?;
        let o = order(fq, order_name, weights)?;
        let d = DimVector::parse(text(dim, "dim")?)?;
        let lam = MultiPartition::parse(text(partition, "partition")?, &d)?;
        let s = partition_to_tree(fq, &lam, &o)?;
        give_string(out, s.display(fq, &o))
    })
}

/// The cell of a representation given in the text format of `.rep` files.
///
/// # Safety
/// Pointers must be valid; `order` and `weights` may be null.
#[no_mangle]
pub unsafe extern "C" fn coha_classify(
    q: *const CohaQuiver,
    rep: *const c_char,
    order_name: *const c_char,
    weights: *const c_char,
    out: *mut *mut c_char,
) -> CohaStatus {
    guard(|| {
        let fq = quiver(q)?;
        let o = order(fq, order_name, weights)?;
        let m = NumericRep::parse(fq, text(rep, "rep")?)?;
        give_string(out, classify(fq, &m, &o)?.display(fq, &o))
    })
}

/// Shuffle product of two elements written `d=<dims>:<poly>`; the result
/// uses the same syntax.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn coha_shuffle(
    q: *const CohaQuiver,
    left: *const c_char,
    right: *const c_char,
    out: *mut *mut c_char,
) -> CohaStatus {
    guard(|| {
        let fq = quiver(q)?;
        let nv = fq.vertex_count();
        let f = parse_element(text(left, "left")?, nv)?;
        let g = parse_element(text(right, "right")?, nv)?;
        let p = shuffle_product(fq.base(), &f, &g);
        give_string(out, format!("d={}:{}", p.dim(), p.display()))
    })
}

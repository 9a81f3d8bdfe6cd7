//! Identity checkers for the Hom-algebra structures and the derived products.
//!
//! Every identity is written as a signed sum of terms in the structure
//! constants and evaluated on all basis tuples; multilinearity makes that
//! equivalent to checking all vectors. Residuals are exact `lhs - rhs`.

use num_traits::{One, Zero};

use crate::algmodel::{star_product, sum_product, BilinearOp, HomAlgebra, LinearMap, MUL};
use crate::error::{Error, Result};
use crate::exactlin::{zero_vector, Matrix, Rational, Vector};
use crate::report::CheckReport;

/// Which of `x, y, z` sits in each slot of a term.
pub(crate) type Slots = [usize; 3];
pub(crate) const XYZ: Slots = [0, 1, 2];

/// A cubic term of an identity, twisted once by the structure map.
#[derive(Clone, Copy)]
pub(crate) enum Term<'a> {
    /// `sign * (a inner b) outer alpha(c)`
    Left {
        sign: i64,
        inner: &'a BilinearOp,
        outer: &'a BilinearOp,
        slots: Slots,
    },
    /// `sign * alpha(a) outer (b inner c)`
    Right {
        sign: i64,
        inner: &'a BilinearOp,
        outer: &'a BilinearOp,
        slots: Slots,
    },
}

pub(crate) fn left<'a>(
    sign: i64,
    inner: &'a BilinearOp,
    outer: &'a BilinearOp,
    slots: Slots,
) -> Term<'a> {
    Term::Left {
        sign,
        inner,
        outer,
        slots,
    }
}

pub(crate) fn right<'a>(
    sign: i64,
    inner: &'a BilinearOp,
    outer: &'a BilinearOp,
    slots: Slots,
) -> Term<'a> {
    Term::Right {
        sign,
        inner,
        outer,
        slots,
    }
}

/// Coordinates of a sum of cubic terms at the basis triple `idx`.
pub(crate) fn cubic_residual(terms: &[Term<'_>], alpha: &Matrix, idx: [usize; 3]) -> Vector {
    let n = alpha.rows();
    let mut out = zero_vector(n);
    for term in terms {
        match *term {
            Term::Left {
                sign,
                inner,
                outer,
                slots,
            } => {
                let (a, b, c) = (idx[slots[0]], idx[slots[1]], idx[slots[2]]);
                let s = Rational::from_integer(sign.into());
                for p in 0..n {
                    let g = inner.get(a, b, p);
                    if g.is_zero() {
                        continue;
                    }
                    for q in 0..n {
                        let t = alpha.get(q, c);
                        if t.is_zero() {
                            continue;
                        }
                        let w = &s * g * t;
                        for (r, o) in out.iter_mut().enumerate() {
                            let h = outer.get(p, q, r);
                            if !h.is_zero() {
                                *o += &w * h;
                            }
                        }
                    }
                }
            }
            Term::Right {
                sign,
                inner,
                outer,
                slots,
            } => {
                let (a, b, c) = (idx[slots[0]], idx[slots[1]], idx[slots[2]]);
                let s = Rational::from_integer(sign.into());
                for p in 0..n {
                    let t = alpha.get(p, a);
                    if t.is_zero() {
                        continue;
                    }
                    for q in 0..n {
                        let g = inner.get(b, c, q);
                        if g.is_zero() {
                            continue;
                        }
                        let w = &s * t * g;
                        for (r, o) in out.iter_mut().enumerate() {
                            let h = outer.get(p, q, r);
                            if !h.is_zero() {
                                *o += &w * h;
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn check_cubic(
    report: &mut CheckReport,
    identity_id: &str,
    terms: &[Term<'_>],
    alpha: &Matrix,
) {
    let n = alpha.rows();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = cubic_residual(terms, alpha, [i, j, k]);
                report.record(identity_id, &[i, j, k], r);
            }
        }
    }
}

/// A bilinear term: `map(x . y)` or `m1(a) . m2(b)`; `None` maps are the identity.
#[derive(Clone, Copy)]
pub(crate) enum PairTerm<'a> {
    Post {
        sign: i64,
        map: Option<&'a Matrix>,
        op: &'a BilinearOp,
    },
    Pre {
        sign: i64,
        op: &'a BilinearOp,
        first: Option<&'a Matrix>,
        second: Option<&'a Matrix>,
        swap: bool,
    },
}

fn map_column(map: Option<&Matrix>, i: usize, n: usize) -> Vector {
    match map {
        Some(m) => m.column(i),
        None => {
            let mut v = zero_vector(n);
            v[i] = Rational::one();
            v
        }
    }
}

pub(crate) fn pair_residual(terms: &[PairTerm<'_>], n: usize, i: usize, j: usize) -> Vector {
    let mut out = zero_vector(n);
    for term in terms {
        match *term {
            PairTerm::Post { sign, map, op } => {
                let s = Rational::from_integer(sign.into());
                for p in 0..n {
                    let c = op.get(i, j, p);
                    if c.is_zero() {
                        continue;
                    }
                    match map {
                        Some(m) => {
                            for (r, o) in out.iter_mut().enumerate() {
                                let t = m.get(r, p);
                                if !t.is_zero() {
                                    *o += &s * c * t;
                                }
                            }
                        }
                        None => out[p] += &s * c,
                    }
                }
            }
            PairTerm::Pre {
                sign,
                op,
                first,
                second,
                swap,
            } => {
                let (a, b) = if swap { (j, i) } else { (i, j) };
                let fa = map_column(first, a, n);
                let sb = map_column(second, b, n);
                let s = Rational::from_integer(sign.into());
                for (p, u) in fa.iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    for (q, v) in sb.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let w = &s * u * v;
                        for (r, o) in out.iter_mut().enumerate() {
                            let h = op.get(p, q, r);
                            if !h.is_zero() {
                                *o += &w * h;
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn check_pair(
    report: &mut CheckReport,
    identity_id: &str,
    terms: &[PairTerm<'_>],
    n: usize,
) {
    for i in 0..n {
        for j in 0..n {
            report.record(identity_id, &[i, j], pair_residual(terms, n, i, j));
        }
    }
}

fn same_dim(op: &BilinearOp, map: &LinearMap) -> Result<()> {
    if op.dim() != map.dim() {
        return Err(Error::dims(format!(
            "product of dimension {} with a map of dimension {}",
            op.dim(),
            map.dim()
        )));
    }
    Ok(())
}

/// `alpha(x)(yz) = -(xy)alpha(z)`.
pub fn check_hom_anti_associative(mul: &BilinearOp, alpha: &LinearMap) -> Result<CheckReport> {
    same_dim(mul, alpha)?;
    let mut report = CheckReport::new("hom_anti_associative");
    let terms = [right(1, mul, mul, XYZ), left(1, mul, mul, XYZ)];
    check_cubic(&mut report, "anti_assoc", &terms, alpha.matrix());
    Ok(report)
}

/// `alpha(x . y) = alpha(x) . alpha(y)`.
pub fn check_multiplicativity(op: &BilinearOp, alpha: &LinearMap) -> Result<CheckReport> {
    same_dim(op, alpha)?;
    let mut report = CheckReport::new("multiplicativity");
    push_multiplicativity(&mut report, "mult", op, alpha);
    Ok(report)
}

pub(crate) fn push_multiplicativity(
    report: &mut CheckReport,
    id: &str,
    op: &BilinearOp,
    alpha: &LinearMap,
) {
    let a = Some(alpha.matrix());
    let terms = [
        PairTerm::Post {
            sign: 1,
            map: a,
            op,
        },
        PairTerm::Pre {
            sign: -1,
            op,
            first: a,
            second: a,
            swap: false,
        },
    ];
    check_pair(report, id, &terms, op.dim());
}

/// The three rhizaform identities plus multiplicativity of both products.
pub fn check_rhizaform(a: &HomAlgebra) -> Result<CheckReport> {
    let (s, p) = (a.succ()?, a.prec()?);
    let alpha = a.alpha().matrix();
    let mut report = CheckReport::new("rhizaform");
    // (x succ y + x prec y) succ alpha(z) = -alpha(x) succ (y succ z)
    let req1 = [left(1, s, s, XYZ), left(1, p, s, XYZ), right(1, s, s, XYZ)];
    // alpha(x) prec (y succ z + y prec z) = -(x prec y) prec alpha(z)
    let req2 = [right(1, s, p, XYZ), right(1, p, p, XYZ), left(1, p, p, XYZ)];
    // alpha(x) succ (y prec z) = -(x succ y) prec alpha(z)
    let req3 = [right(1, p, s, XYZ), left(1, s, p, XYZ)];
    check_cubic(&mut report, "req1", &req1, alpha);
    check_cubic(&mut report, "req2", &req2, alpha);
    check_cubic(&mut report, "req3", &req3, alpha);
    push_multiplicativity(&mut report, "mult_succ", s, a.alpha());
    push_multiplicativity(&mut report, "mult_prec", p, a.alpha());
    Ok(report)
}

/// The sign-free dendriform identities plus multiplicativity.
pub fn check_dendriform(a: &HomAlgebra) -> Result<CheckReport> {
    let (s, p) = (a.succ()?, a.prec()?);
    let alpha = a.alpha().matrix();
    let mut report = CheckReport::new("dendriform");
    // (x prec y) prec alpha(z) = alpha(x) prec (y prec z + y succ z)
    let den1 = [
        left(1, p, p, XYZ),
        right(-1, p, p, XYZ),
        right(-1, s, p, XYZ),
    ];
    // (x succ y) prec alpha(z) = alpha(x) succ (y prec z)
    let den2 = [left(1, s, p, XYZ), right(-1, p, s, XYZ)];
    // (x prec y + x succ y) succ alpha(z) = alpha(x) succ (y succ z)
    let den3 = [left(1, p, s, XYZ), left(1, s, s, XYZ), right(-1, s, s, XYZ)];
    check_cubic(&mut report, "den1", &den1, alpha);
    check_cubic(&mut report, "den2", &den2, alpha);
    check_cubic(&mut report, "den3", &den3, alpha);
    push_multiplicativity(&mut report, "mult_succ", s, a.alpha());
    push_multiplicativity(&mut report, "mult_prec", p, a.alpha());
    Ok(report)
}

/// Commutativity plus the cyclic `alpha`-twisted Jacobi-type sum.
pub fn check_jacobi_jordan(mul: &BilinearOp, alpha: &LinearMap) -> Result<CheckReport> {
    same_dim(mul, alpha)?;
    let mut report = CheckReport::new("jacobi_jordan");
    let comm = [
        PairTerm::Pre {
            sign: 1,
            op: mul,
            first: None,
            second: None,
            swap: false,
        },
        PairTerm::Pre {
            sign: -1,
            op: mul,
            first: None,
            second: None,
            swap: true,
        },
    ];
    check_pair(&mut report, "comm", &comm, mul.dim());
    let cyclic = [
        right(1, mul, mul, [0, 1, 2]),
        right(1, mul, mul, [1, 2, 0]),
        right(1, mul, mul, [2, 0, 1]),
    ];
    check_cubic(&mut report, "jj", &cyclic, alpha.matrix());
    Ok(report)
}

/// `(xy)alpha(z) + alpha(x)(yz) + (yx)alpha(z) + alpha(y)(xz) = 0`.
pub fn check_pre_jacobi_jordan(mul: &BilinearOp, alpha: &LinearMap) -> Result<CheckReport> {
    same_dim(mul, alpha)?;
    let mut report = CheckReport::new("pre_jacobi_jordan");
    let terms = [
        left(1, mul, mul, [0, 1, 2]),
        right(1, mul, mul, [0, 1, 2]),
        left(1, mul, mul, [1, 0, 2]),
        right(1, mul, mul, [1, 0, 2]),
    ];
    check_cubic(&mut report, "pjj", &terms, alpha.matrix());
    Ok(report)
}

/// `x o y = x succ y - y prec x`.
pub fn pre_jacobi_jordan_product(a: &HomAlgebra) -> Result<BilinearOp> {
    a.succ()?.sub(&a.prec()?.opposite())
}

/// `[x, y] = x * y + y * x` for the sum product.
pub fn subadjacent_bracket(a: &HomAlgebra) -> Result<BilinearOp> {
    let star = sum_product(a)?;
    star.add(&star.opposite())
}

/// `D(x . y) = D(x) . alpha(y) + alpha(x) . D(y)` for the named product.
///
/// `product_name` may be any product of `a`, or `"star"` for the sum product.
pub fn check_alpha_derivation(
    d: &LinearMap,
    a: &HomAlgebra,
    product_name: &str,
) -> Result<CheckReport> {
    if d.dim() != a.dim() {
        return Err(Error::dims(format!(
            "derivation of dimension {} on an algebra of dimension {}",
            d.dim(),
            a.dim()
        )));
    }
    let op = if product_name == "star" {
        star_product(a)?
    } else {
        a.product(product_name)?.clone()
    };
    let dm = Some(d.matrix());
    let am = Some(a.alpha().matrix());
    let terms = [
        PairTerm::Post {
            sign: 1,
            map: dm,
            op: &op,
        },
        PairTerm::Pre {
            sign: -1,
            op: &op,
            first: dm,
            second: am,
            swap: false,
        },
        PairTerm::Pre {
            sign: -1,
            op: &op,
            first: am,
            second: dm,
            swap: false,
        },
    ];
    let mut report = CheckReport::new(format!("alpha_derivation[{product_name}]"));
    check_pair(&mut report, product_name, &terms, a.dim());
    Ok(report)
}

/// Sign convention for inner derivations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdConvention {
    /// `ad_z(x) = z * x - x * z` with the sum product.
    Star,
    /// `ad_z(x) = z prec x - x succ z`.
    Mixed,
}

impl std::str::FromStr for AdConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star" => Ok(AdConvention::Star),
            "mixed" => Ok(AdConvention::Mixed),
            other => Err(Error::parse(
                "convention",
                format!("unknown convention `{other}`"),
            )),
        }
    }
}

pub fn inner_derivation(
    z: &[Rational],
    a: &HomAlgebra,
    convention: AdConvention,
) -> Result<LinearMap> {
    let n = a.dim();
    if z.len() != n {
        return Err(Error::dims("inner derivation element has the wrong length"));
    }
    let (lhs, rhs) = match convention {
        AdConvention::Star => {
            let s = star_product(a)?;
            (s.clone(), s)
        }
        AdConvention::Mixed => (a.prec()?.clone(), a.succ()?.clone()),
    };
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        // z lhs e_i - e_i rhs z, read off the structure constants
        let mut col = zero_vector(n);
        for (p, zp) in z.iter().enumerate() {
            if zp.is_zero() {
                continue;
            }
            for (k, c) in col.iter_mut().enumerate() {
                *c += zp * (lhs.get(p, i, k) - rhs.get(i, p, k));
            }
        }
        images.push(col);
    }
    LinearMap::from_images(&images)
}

/// Convenience: the derivation report of `ad_z` on every product of `a`.
pub fn inner_derivation_report(
    z: &[Rational],
    a: &HomAlgebra,
    convention: AdConvention,
) -> Result<CheckReport> {
    let d = inner_derivation(z, a, convention)?;
    let label = match convention {
        AdConvention::Star => "star",
        AdConvention::Mixed => "mixed",
    };
    let mut report = CheckReport::new(format!("inner_derivation[{label}]"));
    for name in a.products().keys() {
        report.absorb("", check_alpha_derivation(&d, a, name)?);
    }
    if a.products().len() > 1 {
        report.absorb("", check_alpha_derivation(&d, a, "star")?);
    }
    Ok(report)
}

/// The mono algebra named by `mul` if present, else the sum algebra.
pub fn as_mono(a: &HomAlgebra) -> Result<HomAlgebra> {
    if a.products().contains_key(MUL) {
        Ok(a.clone())
    } else {
        HomAlgebra::mono(sum_product(a)?, a.alpha().clone())
    }
}

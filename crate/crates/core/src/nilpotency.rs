//! Subspace arithmetic and the power series used to define nilpotency.

use serde::Serialize;

use crate::algmodel::{BilinearOp, HomAlgebra, MUL, PREC, SUCC};
use crate::axioms::{check_cubic, check_multiplicativity, left, right, XYZ};
use crate::error::{Error, Result};
use crate::exactlin::{basis_vector, Matrix, Vector};
use crate::report::CheckReport;

/// A subspace stored as its reduced row echelon basis, so equal subspaces
/// have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::dims(format!(
                "vectors must have length {ambient_dim}"
            )));
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(ambient_dim));
        }
        let (r, rank) = Matrix::from_rows(vectors.to_vec())?.rref();
        let rows = r.row_vectors().into_iter().take(rank).collect::<Vec<_>>();
        let basis = if rows.is_empty() {
            Matrix::zeros(0, ambient_dim)
        } else {
            Matrix::from_rows(rows)?
        };
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Subspace::span(self.ambient_dim, &vs)
    }

    pub fn contains_vector(&self, v: &[crate::exactlin::Rational]) -> bool {
        let mut vs = self.vectors();
        vs.push(v.to_vec());
        Subspace::span(self.ambient_dim, &vs)
            .map(|s| s.dim() == self.dim())
            .unwrap_or(false)
    }

    /// First basis vector of `other` outside `self`, if any.
    pub fn witness_outside(&self, other: &Subspace) -> Option<Vector> {
        other
            .vectors()
            .into_iter()
            .find(|v| !self.contains_vector(v))
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.witness_outside(other).is_none()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.basis.to_strings()
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// The products that enter `M ⋄ N`: both for a rhizaform algebra, `mul` otherwise.
fn diamond_ops(a: &HomAlgebra) -> Result<Vec<&BilinearOp>> {
    if a.products().contains_key(SUCC) {
        Ok(vec![a.succ()?, a.prec()?])
    } else {
        Ok(vec![a.product(MUL)?])
    }
}

fn diamond_with(m: &Subspace, n: &Subspace, ops: &[&BilinearOp]) -> Result<Subspace> {
    let dim = m.ambient_dim();
    if n.ambient_dim() != dim || ops.iter().any(|op| op.dim() != dim) {
        return Err(Error::dims("subspaces and products must share a dimension"));
    }
    let mut out = Vec::new();
    for x in m.vectors() {
        for y in n.vectors() {
            for op in ops {
                out.push(op.eval(&x, &y)?);
            }
        }
    }
    Subspace::span(dim, &out)
}

/// `M ⋄ N = M succ N + M prec N`.
pub fn diamond(m: &Subspace, n: &Subspace, a: &HomAlgebra) -> Result<Subspace> {
    diamond_with(m, n, &diamond_ops(a)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    /// `A<k+1> = A<k> ⋄ A`
    Right,
    /// `A{k+1} = A ⋄ A{k}`
    Left,
    /// `A^(k+1) = sum_i A^i ⋄ A^(k+1-i)`
    Full,
}

/// The first `count` terms (1-based `A^1 = A`), stopping early at zero.
fn raw_series(
    kind: SeriesKind,
    ops: &[&BilinearOp],
    n: usize,
    count: usize,
) -> Result<Vec<Subspace>> {
    let full = Subspace::full(n);
    let mut terms = vec![full.clone()];
    while terms.len() < count && !terms.last().expect("nonempty").is_zero() {
        let last = terms.last().expect("nonempty");
        let next = match kind {
            SeriesKind::Right => diamond_with(last, &full, ops)?,
            SeriesKind::Left => diamond_with(&full, last, ops)?,
            SeriesKind::Full => {
                let k = terms.len();
                let mut acc = Subspace::zero(n);
                for i in 1..=k {
                    acc = acc.sum(&diamond_with(&terms[i - 1], &terms[k - i], ops)?)?;
                }
                acc
            }
        };
        terms.push(next);
    }
    Ok(terms)
}

/// A computed series. `terms` ends at the first zero term, or at the first
/// repeated term when the series stabilizes without vanishing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Series {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub nilpotent: bool,
    /// First `k` with a zero `k`-th term.
    pub index: Option<usize>,
}

impl Series {
    /// The `k`-th term (1-based), extended past the computed prefix by its
    /// limit.
    pub fn term(&self, k: usize) -> &Subspace {
        let last = self.terms.len();
        &self.terms[k.clamp(1, last) - 1]
    }
}

fn series_with(kind: SeriesKind, ops: &[&BilinearOp], n: usize) -> Result<Series> {
    // every series is descending, so n + 2 terms either reach zero or repeat
    let mut terms = raw_series(kind, ops, n, n + 2)?;
    let index = terms.iter().position(Subspace::is_zero).map(|p| p + 1);
    if index.is_none() {
        if let Some(p) = (1..terms.len()).find(|&p| terms[p] == terms[p - 1]) {
            terms.truncate(p + 1);
        }
    }
    Ok(Series {
        kind,
        terms,
        nilpotent: index.is_some(),
        index,
    })
}

pub fn right_series(a: &HomAlgebra) -> Result<Series> {
    series_with(SeriesKind::Right, &diamond_ops(a)?, a.dim())
}

pub fn left_series(a: &HomAlgebra) -> Result<Series> {
    series_with(SeriesKind::Left, &diamond_ops(a)?, a.dim())
}

pub fn full_series(a: &HomAlgebra) -> Result<Series> {
    series_with(SeriesKind::Full, &diamond_ops(a)?, a.dim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Nilpotency {
    pub nilpotent: bool,
    pub index: Option<usize>,
}

impl From<&Series> for Nilpotency {
    fn from(s: &Series) -> Self {
        Nilpotency {
            nilpotent: s.nilpotent,
            index: s.index,
        }
    }
}

pub fn is_nilpotent(a: &HomAlgebra) -> Result<Nilpotency> {
    Ok((&full_series(a)?).into())
}

pub fn is_right_nilpotent(a: &HomAlgebra) -> Result<Nilpotency> {
    Ok((&right_series(a)?).into())
}

pub fn is_left_nilpotent(a: &HomAlgebra) -> Result<Nilpotency> {
    Ok((&left_series(a)?).into())
}

/// Nilpotency of the algebra carrying only the named product.
pub fn is_nilpotent_single(a: &HomAlgebra, product: &str) -> Result<Nilpotency> {
    let s = series_with(SeriesKind::Full, &[a.product(product)?], a.dim())?;
    Ok((&s).into())
}

pub const LEFT_SERIES_NOTE: &str =
    "left series computed as A{k+1} = A ⋄ A{k} (the recursion repeats the index as printed)";

/// Compares the right, left and full series termwise; with multiplicative
/// products also checks `alpha(A^k) ⊆ A^k`.
pub fn check_series_equality(a: &HomAlgebra) -> Result<CheckReport> {
    let ops = diamond_ops(a)?;
    let n = a.dim();
    let mut report = CheckReport::new("series_equality");
    report.note(LEFT_SERIES_NOTE);
    let len = n + 2;
    let full = raw_series(SeriesKind::Full, &ops, n, len)?;
    let term = |s: &[Subspace], k: usize| s.get(k).cloned().unwrap_or_else(|| Subspace::zero(n));
    for (id, kind) in [
        ("right_vs_full", SeriesKind::Right),
        ("left_vs_full", SeriesKind::Left),
    ] {
        let other = raw_series(kind, &ops, n, len)?;
        for g in 0..len {
            let (x, y) = (term(&other, g), term(&full, g));
            if x != y {
                let w = y.witness_outside(&x).or_else(|| x.witness_outside(&y));
                report.record(id, &[g], w.expect("unequal subspaces differ somewhere"));
            }
        }
    }
    let multiplicative = ops
        .iter()
        .map(|op| check_multiplicativity(op, a.alpha()).map(|r| r.passed()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|p| p);
    if multiplicative {
        for (g, t) in full.iter().enumerate() {
            for v in t.vectors() {
                let image = a.alpha().apply(&v)?;
                if !t.contains_vector(&image) {
                    report.record("alpha_invariant", &[g], image);
                }
            }
        }
    } else {
        report.note("alpha-invariance of the series not checked: products are not multiplicative");
    }
    Ok(report)
}

/// `A<g> ⋄ A<h> ⊆ A<g+h>` for `g, h <= max`, with the right series.
pub fn check_lemma_inclusions(a: &HomAlgebra, max: usize) -> Result<CheckReport> {
    let ops = diamond_ops(a)?;
    let n = a.dim();
    let series = raw_series(SeriesKind::Right, &ops, n, 2 * max)?;
    let term = |k: usize| {
        series
            .get(k - 1)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(n))
    };
    let mut report = CheckReport::new("lemma_inclusions");
    for g in 1..=max {
        for h in 1..=max {
            let lhs = diamond_with(&term(g), &term(h), &ops)?;
            if let Some(w) = term(g + h).witness_outside(&lhs) {
                report.record("inclusion", &[g, h], w);
            }
        }
    }
    Ok(report)
}

/// Every pattern `(x o1 y) o2 alpha(z)` and `alpha(x) o3 (y o4 z)` vanishes.
pub fn check_2_nilpotent(a: &HomAlgebra) -> Result<CheckReport> {
    let (s, p) = (a.succ()?, a.prec()?);
    let alpha = a.alpha().matrix();
    let mut report = CheckReport::new("two_nilpotent");
    let named = [("succ", s), ("prec", p)];
    for (n1, o1) in named {
        for (n2, o2) in named {
            check_cubic(
                &mut report,
                &format!("left_{n1}_{n2}"),
                &[left(1, o1, o2, XYZ)],
                alpha,
            );
            check_cubic(
                &mut report,
                &format!("right_{n1}_{n2}"),
                &[right(1, o1, o2, XYZ)],
                alpha,
            );
        }
    }
    Ok(report)
}

/// The algebra is nilpotent iff both one-product algebras are.
pub fn check_onesided_nilpotency_theorem(a: &HomAlgebra) -> Result<CheckReport> {
    let whole = is_nilpotent(a)?;
    let by_succ = is_nilpotent_single(a, SUCC)?;
    let by_prec = is_nilpotent_single(a, PREC)?;
    let mut report = CheckReport::new("onesided_nilpotency");
    let flag = |b: bool| crate::exactlin::int(i64::from(b));
    report.note(format!(
        "nilpotent: whole={} succ={} prec={}",
        whole.nilpotent, by_succ.nilpotent, by_prec.nilpotent
    ));
    if whole.nilpotent != (by_succ.nilpotent && by_prec.nilpotent) {
        report.record(
            "biconditional",
            &[],
            vec![
                flag(whole.nilpotent),
                flag(by_succ.nilpotent),
                flag(by_prec.nilpotent),
            ],
        );
    }
    Ok(report)
}

/// `e_i` as a subspace, for tests and callers building spans by hand.
pub fn line(ambient_dim: usize, i: usize) -> Subspace {
    Subspace::span(ambient_dim, &[basis_vector(ambient_dim, i)]).expect("valid basis vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmodel::LinearMap;
    use crate::exactlin::int;

    fn d2_a1() -> HomAlgebra {
        let succ = BilinearOp::from_entries(2, [(1, 1, 0, int(1))]);
        let alpha = LinearMap::from_images(&[vec![int(1), int(0)], vec![int(1), int(1)]]).unwrap();
        HomAlgebra::rhizaform(succ.clone(), succ, alpha).unwrap()
    }

    fn d2_a5() -> HomAlgebra {
        let op =
            BilinearOp::from_entries(2, [(0, 0, 1, int(1)), (0, 1, 1, int(1)), (1, 0, 1, int(1))]);
        let alpha = LinearMap::from_images(&[vec![int(0), int(0)], vec![int(0), int(1)]]).unwrap();
        HomAlgebra::rhizaform(op.clone(), op, alpha).unwrap()
    }

    fn zero(n: usize) -> HomAlgebra {
        HomAlgebra::rhizaform(
            BilinearOp::zero(n),
            BilinearOp::zero(n),
            LinearMap::identity(n),
        )
        .unwrap()
    }

    #[test]
    fn subspaces_are_canonical() {
        let a = Subspace::span(2, &[vec![int(2), int(4)], vec![int(1), int(2)]]).unwrap();
        let b = Subspace::span(2, &[vec![int(-1), int(-2)]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 1);
        assert!(Subspace::full(2).contains(&a));
        assert!(!a.contains(&Subspace::full(2)));
        assert!(a.contains(&Subspace::zero(2)));
    }

    #[test]
    fn diamond_examples() {
        let full = Subspace::full(2);
        assert!(diamond(&Subspace::zero(2), &full, &d2_a1())
            .unwrap()
            .is_zero());
        assert_eq!(diamond(&full, &full, &d2_a1()).unwrap(), line(2, 0));
        assert_eq!(diamond(&full, &full, &d2_a5()).unwrap(), line(2, 1));
    }

    #[test]
    fn series_examples() {
        let z = full_series(&zero(2)).unwrap();
        assert_eq!(z.terms, vec![Subspace::full(2), Subspace::zero(2)]);
        assert_eq!(is_nilpotent(&zero(2)).unwrap().index, Some(2));

        let s1 = full_series(&d2_a1()).unwrap();
        assert_eq!(
            s1.terms,
            vec![Subspace::full(2), line(2, 0), Subspace::zero(2)]
        );
        assert_eq!(
            is_nilpotent(&d2_a1()).unwrap(),
            Nilpotency {
                nilpotent: true,
                index: Some(3)
            }
        );
        assert_eq!(is_right_nilpotent(&d2_a1()).unwrap().index, Some(3));
        assert_eq!(is_left_nilpotent(&d2_a1()).unwrap().index, Some(3));

        let s5 = full_series(&d2_a5()).unwrap();
        assert_eq!(s5.terms, vec![Subspace::full(2), line(2, 1), line(2, 1)]);
        assert!(!s5.nilpotent);
        assert_eq!(s5.term(7), &line(2, 1));
    }

    #[test]
    fn series_equality_and_inclusions() {
        for a in [zero(2), d2_a1(), d2_a5()] {
            assert!(check_series_equality(&a).unwrap().passed());
            assert!(check_lemma_inclusions(&a, 4).unwrap().passed());
        }
    }

    #[test]
    fn right_and_left_series_can_differ_off_the_identities() {
        // e1 succ e2 = e2 only: A ⋄ A = span{e2}; right: span{e2} ⋄ A = 0,
        // left and full: A ⋄ span{e2} = span{e2}.
        let succ = BilinearOp::from_entries(2, [(0, 1, 1, int(1))]);
        let a = HomAlgebra::rhizaform(succ, BilinearOp::zero(2), LinearMap::identity(2)).unwrap();
        assert!(is_right_nilpotent(&a).unwrap().nilpotent);
        assert!(!is_left_nilpotent(&a).unwrap().nilpotent);
        let r = check_series_equality(&a).unwrap();
        assert_eq!(r.failing_identities(), vec!["right_vs_full".to_string()]);
    }

    #[test]
    fn two_nilpotency() {
        assert!(check_2_nilpotent(&zero(3)).unwrap().passed());
        let succ = BilinearOp::from_entries(2, [(0, 0, 1, int(1))]);
        let a7 = HomAlgebra::rhizaform(succ.clone(), succ.clone(), LinearMap::identity(2)).unwrap();
        assert!(check_2_nilpotent(&a7).unwrap().passed());
        // alpha kills e1, so every pattern of the 2-dim A5 lands on e2 o e2 = 0
        assert!(check_2_nilpotent(&d2_a5()).unwrap().passed());
        let e = BilinearOp::from_entries(1, [(0, 0, 0, int(1))]);
        let idem = HomAlgebra::rhizaform(e, BilinearOp::zero(1), LinearMap::identity(1)).unwrap();
        let r = check_2_nilpotent(&idem).unwrap();
        assert_eq!(
            r.failing_identities(),
            vec!["left_succ_succ".to_string(), "right_succ_succ".to_string()]
        );
    }

    #[test]
    fn onesided_theorem_examples() {
        for a in [zero(2), d2_a1(), d2_a5()] {
            assert!(check_onesided_nilpotency_theorem(&a).unwrap().passed());
        }
        assert!(!is_nilpotent_single(&d2_a5(), SUCC).unwrap().nilpotent);
    }
}

//! Connes cocycle spaces, scalar- and algebra-valued, and the rhizaform
//! structure carried by a nondegenerate scalar cocycle.

use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use crate::algmodel::{star_product, BilinearOp, HomAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, Matrix, Rational, Vector};
use crate::report::CheckReport;

/// A scalar bilinear form, `B(e_i, e_j) = matrix[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarForm {
    matrix: Matrix,
}

impl ScalarForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::dims("a bilinear form needs a square matrix"));
        }
        Ok(ScalarForm { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate() {
                acc += xi * yj * self.matrix.get(i, j);
            }
        }
        acc
    }

    pub fn add(&self, other: &ScalarForm) -> Result<ScalarForm> {
        ScalarForm::new(self.matrix.add(&other.matrix)?)
    }

    pub fn scale(&self, s: &Rational) -> ScalarForm {
        ScalarForm {
            matrix: self.matrix.scale(s),
        }
    }
}

/// An algebra-valued bilinear form, `omega(e_i, e_j) = sum_k coeffs[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorForm {
    coeffs: BilinearOp,
}

impl VectorForm {
    pub fn new(coeffs: BilinearOp) -> Self {
        VectorForm { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn coeffs(&self) -> &BilinearOp {
        &self.coeffs
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        self.coeffs.eval(x, y)
    }

    /// Nonzero components keyed `w(e_i,e_j)`, 1-based.
    pub fn to_value(&self) -> Value {
        let n = self.dim();
        let mut map = Map::new();
        for i in 0..n {
            for j in 0..n {
                let v = self.coeffs.basis_product(i, j);
                if v.iter().any(|c| !c.is_zero()) {
                    map.insert(
                        format!("w(e{},e{})", i + 1, j + 1),
                        Value::Array(
                            v.iter()
                                .map(|c| Value::String(format_rational(c)))
                                .collect(),
                        ),
                    );
                }
            }
        }
        Value::Object(map)
    }
}

fn unknown_row(cols: usize) -> Vec<Rational> {
    vec![Rational::zero(); cols]
}

/// Cyclic condition plus `B(alpha x, alpha y) = B(x, y)`, over the n^2 entries of B.
fn scalar_system(mul: &BilinearOp, alpha: &Matrix) -> Vec<Vec<Rational>> {
    let n = mul.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = unknown_row(n * n);
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let prod = mul.basis_product(a, b);
                    for p in 0..n {
                        if prod[p].is_zero() {
                            continue;
                        }
                        for q in 0..n {
                            row[p * n + q] += &prod[p] * alpha.get(q, c);
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let mut row = unknown_row(n * n);
            for p in 0..n {
                for q in 0..n {
                    row[p * n + q] += alpha.get(p, i) * alpha.get(q, j);
                }
            }
            row[i * n + j] -= Rational::one();
            rows.push(row);
        }
    }
    rows
}

/// Cyclic condition plus `alpha(w(x, y)) = w(alpha x, alpha y)`, over n^3 unknowns.
fn vector_system(mul: &BilinearOp, alpha: &Matrix) -> Vec<Vec<Rational>> {
    let n = mul.dim();
    let idx = |p: usize, q: usize, r: usize| (p * n + q) * n + r;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for r in 0..n {
                    let mut row = unknown_row(n * n * n);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let prod = mul.basis_product(a, b);
                        for p in 0..n {
                            if prod[p].is_zero() {
                                continue;
                            }
                            for q in 0..n {
                                row[idx(p, q, r)] += &prod[p] * alpha.get(q, c);
                            }
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for r in 0..n {
                let mut row = unknown_row(n * n * n);
                for k in 0..n {
                    row[idx(i, j, k)] += alpha.get(r, k);
                }
                for p in 0..n {
                    for q in 0..n {
                        row[idx(p, q, r)] -= alpha.get(p, i) * alpha.get(q, j);
                    }
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Rows of `B(x * y, z) - B(x, y * z) - B(y, z * x) = 0` on basis triples.
fn compatibility_rows(mul: &BilinearOp) -> Vec<Vec<Rational>> {
    let n = mul.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = unknown_row(n * n);
                for (p, c) in mul.basis_product(i, j).iter().enumerate() {
                    row[p * n + k] += c;
                }
                for (q, c) in mul.basis_product(j, k).iter().enumerate() {
                    row[i * n + q] -= c;
                }
                for (q, c) in mul.basis_product(k, i).iter().enumerate() {
                    row[j * n + q] -= c;
                }
                rows.push(row);
            }
        }
    }
    rows
}

fn solve(rows: Vec<Vec<Rational>>, unknowns: usize) -> Vec<Vector> {
    if rows.is_empty() {
        return (0..unknowns)
            .map(|i| crate::exactlin::basis_vector(unknowns, i))
            .collect();
    }
    Matrix::from_rows(rows)
        .expect("rows share a length")
        .nullspace_basis()
}

/// Basis of scalar Connes cocycles of the product `*` (the sum for rhizaform input).
pub fn scalar_cocycle_space(a: &HomAlgebra) -> Result<Vec<ScalarForm>> {
    let mul = star_product(a)?;
    let n = a.dim();
    let basis = solve(scalar_system(&mul, a.alpha().matrix()), n * n);
    basis
        .into_iter()
        .map(|v| ScalarForm::new(Matrix::new(n, n, v)?))
        .collect()
}

/// Scalar cocycles that also satisfy the compatibility identity checked by
/// [`check_cocycle_compatibility`]; these are the admissible inputs of
/// [`rhizaform_from_cocycle`] in strict mode.
pub fn compatible_cocycle_space(a: &HomAlgebra) -> Result<Vec<ScalarForm>> {
    let mul = star_product(a)?;
    let n = a.dim();
    let mut rows = scalar_system(&mul, a.alpha().matrix());
    rows.extend(compatibility_rows(&mul));
    solve(rows, n * n)
        .into_iter()
        .map(|v| ScalarForm::new(Matrix::new(n, n, v)?))
        .collect()
}

/// Basis of algebra-valued Connes cocycles.
pub fn vector_cocycle_space(a: &HomAlgebra) -> Result<Vec<VectorForm>> {
    let mul = star_product(a)?;
    let n = a.dim();
    let basis = solve(vector_system(&mul, a.alpha().matrix()), n * n * n);
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut op = BilinearOp::zero(n);
            for (t, c) in v.into_iter().enumerate() {
                op.set(t / (n * n), (t / n) % n, t % n, c);
            }
            VectorForm::new(op)
        })
        .collect())
}

pub fn is_nondegenerate(b: &ScalarForm) -> bool {
    b.matrix()
        .determinant()
        .map(|d| !d.is_zero())
        .unwrap_or(false)
}

/// Re-evaluates the defining conditions of a scalar cocycle directly.
pub fn check_scalar_cocycle(a: &HomAlgebra, b: &ScalarForm) -> Result<CheckReport> {
    let mul = star_product(a)?;
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::dims("form and algebra dimensions differ"));
    }
    let alpha = a.alpha();
    let mut report = CheckReport::new("scalar_cocycle");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut r = Rational::zero();
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    r += b.eval(mul.basis_product(x, y), &alpha.image(z));
                }
                report.record("cyclic", &[i, j, k], vec![r]);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let r = b.eval(&alpha.image(i), &alpha.image(j)) - b.matrix().get(i, j);
            report.record("invariance", &[i, j], vec![r]);
        }
    }
    Ok(report)
}

/// `B(x * y, z) = B(x, y * z) + B(y, z * x)`, the identity the construction of
/// [`rhizaform_from_cocycle`] relies on. It follows from the cyclic condition
/// for skew-symmetric forms when `alpha` is the identity, not in general.
pub fn check_cocycle_compatibility(a: &HomAlgebra, b: &ScalarForm) -> Result<CheckReport> {
    let mul = star_product(a)?;
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::dims("form and algebra dimensions differ"));
    }
    let e = |i: usize| crate::exactlin::basis_vector(n, i);
    let mut report = CheckReport::new("cocycle_compatibility");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = b.eval(mul.basis_product(i, j), &e(k))
                    - b.eval(&e(i), mul.basis_product(j, k))
                    - b.eval(&e(j), mul.basis_product(k, i));
                report.record("compat", &[i, j, k], vec![r]);
            }
        }
    }
    Ok(report)
}

/// Solves `B(x succ y, z) = B(y, z * x)` and `B(x prec y, z) = B(x, y * z)`.
///
/// In strict mode `B` must satisfy the cocycle conditions and the
/// compatibility identity, otherwise `NotACocycle`.
pub fn rhizaform_from_cocycle(a: &HomAlgebra, b: &ScalarForm, strict: bool) -> Result<HomAlgebra> {
    let mul = star_product(a)?;
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::dims("form and algebra dimensions differ"));
    }
    if strict
        && !(check_scalar_cocycle(a, b)?.passed() && check_cocycle_compatibility(a, b)?.passed())
    {
        return Err(Error::NotACocycle);
    }
    // B(v, e_k) = (B^T v)_k
    let solver = b.matrix().transpose().invert()?;
    let e = |i: usize| crate::exactlin::basis_vector(n, i);
    let mut succ = BilinearOp::zero(n);
    let mut prec = BilinearOp::zero(n);
    for i in 0..n {
        for j in 0..n {
            let rhs_succ: Vector = (0..n)
                .map(|k| b.eval(&e(j), mul.basis_product(k, i)))
                .collect();
            let rhs_prec: Vector = (0..n)
                .map(|k| b.eval(&e(i), mul.basis_product(j, k)))
                .collect();
            for (k, c) in solver.mul_vec(&rhs_succ)?.into_iter().enumerate() {
                succ.set(i, j, k, c);
            }
            for (k, c) in solver.mul_vec(&rhs_prec)?.into_iter().enumerate() {
                prec.set(i, j, k, c);
            }
        }
    }
    HomAlgebra::rhizaform(succ, prec, a.alpha().clone())
}

/// The general element of a space spanned by `basis`, written with free
/// constants `c1..cd`, e.g. `w(e2,e2) = c2 e1 + c1 e2`. Only nonzero
/// components are listed.
pub fn describe_vector_space(basis: &[VectorForm], n: usize) -> Vec<String> {
    let mut lines = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut terms = Vec::new();
            for k in 0..n {
                let coeff: Vec<(usize, &Rational)> = basis
                    .iter()
                    .enumerate()
                    .map(|(t, f)| (t, f.coeffs().get(i, j, k)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if coeff.is_empty() {
                    continue;
                }
                let combo = linear_combination(&coeff);
                if coeff.len() == 1 {
                    terms.push(format!("{combo} e{}", k + 1));
                } else {
                    terms.push(format!("({combo}) e{}", k + 1));
                }
            }
            if !terms.is_empty() {
                lines.push(format!("w(e{},e{}) = {}", i + 1, j + 1, terms.join(" + ")));
            }
        }
    }
    lines
}

fn linear_combination(coeff: &[(usize, &Rational)]) -> String {
    let mut out = String::new();
    for (pos, (t, c)) in coeff.iter().enumerate() {
        let name = format!("c{}", t + 1);
        let mag = c.abs();
        let body = if mag.is_one() {
            name
        } else {
            format!("{}*{name}", format_rational(&mag))
        };
        match (pos, c.is_negative()) {
            (0, false) => out.push_str(&body),
            (0, true) => out.push_str(&format!("-{body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
            (_, true) => out.push_str(&format!(" - {body}")),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmodel::{sum_product, LinearMap};
    use crate::axioms::check_rhizaform;
    use crate::exactlin::int;

    fn d2_a1() -> HomAlgebra {
        let succ = BilinearOp::from_entries(2, [(1, 1, 0, int(1))]);
        let alpha = LinearMap::from_images(&[vec![int(1), int(0)], vec![int(1), int(1)]]).unwrap();
        HomAlgebra::rhizaform(succ.clone(), succ, alpha).unwrap()
    }

    fn d2_a7() -> HomAlgebra {
        let succ = BilinearOp::from_entries(2, [(0, 0, 1, int(1))]);
        HomAlgebra::rhizaform(succ.clone(), succ, LinearMap::identity(2)).unwrap()
    }

    #[test]
    fn zero_product_has_full_scalar_space() {
        let a = HomAlgebra::mono(BilinearOp::zero(3), LinearMap::identity(3)).unwrap();
        assert_eq!(scalar_cocycle_space(&a).unwrap().len(), 9);
        assert_eq!(vector_cocycle_space(&a).unwrap().len(), 27);
    }

    #[test]
    fn scalar_spaces_of_small_entries() {
        // e1*e1 = 2e2, alpha = id: the cyclic triples (1,1,1) and the
        // permutations of (1,1,2) force B(e2,e1) = 0 and B(e2,e2) = 0.
        let s7 = scalar_cocycle_space(&d2_a7()).unwrap();
        assert_eq!(s7.len(), 2);
        for b in &s7 {
            assert!(b.matrix().get(1, 0).is_zero() && b.matrix().get(1, 1).is_zero());
            assert!(check_scalar_cocycle(&d2_a7(), b).unwrap().passed());
        }
        // alpha(e1) = e1, alpha(e2) = e1 + e2: invariance leaves B(e1,e1) = 0,
        // B(e1,e2) = -B(e2,e1); the cyclic triple (2,2,2) then gives B(e1,e2) = 0.
        let s1 = scalar_cocycle_space(&d2_a1()).unwrap();
        assert_eq!(s1.len(), 1);
        assert_eq!(s1[0].matrix(), &Matrix::from_ints(&[&[0, 0], &[0, 1]]));
    }

    #[test]
    fn vector_spaces_match_hand_solves() {
        let v1 = vector_cocycle_space(&d2_a1()).unwrap();
        assert_eq!(v1.len(), 2);
        let lines = describe_vector_space(&v1, 2);
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("w(e2,e1) = "));
        assert!(lines[1].starts_with("w(e2,e2) = "));
        assert_eq!(vector_cocycle_space(&d2_a7()).unwrap().len(), 4);
        for f in &v1 {
            assert!(!f.coeffs().is_zero());
        }
    }

    #[test]
    fn nondegeneracy() {
        assert!(is_nondegenerate(
            &ScalarForm::new(Matrix::identity(2)).unwrap()
        ));
        assert!(!is_nondegenerate(
            &ScalarForm::new(Matrix::zeros(2, 2)).unwrap()
        ));
        let skew = ScalarForm::new(Matrix::from_ints(&[&[0, 1], &[-1, 0]])).unwrap();
        assert!(is_nondegenerate(&skew));
    }

    #[test]
    fn construction_on_zero_product_and_degenerate_forms() {
        let a = HomAlgebra::mono(BilinearOp::zero(2), LinearMap::identity(2)).unwrap();
        let out = rhizaform_from_cocycle(&a, &ScalarForm::new(Matrix::identity(2)).unwrap(), true)
            .unwrap();
        assert!(out.succ().unwrap().is_zero() && out.prec().unwrap().is_zero());
        let degenerate = ScalarForm::new(Matrix::zeros(2, 2)).unwrap();
        assert_eq!(
            rhizaform_from_cocycle(&a, &degenerate, true),
            Err(Error::Singular)
        );
    }

    fn four_dim() -> HomAlgebra {
        // e1*e2 = -e3, e2*e2 = -e4
        let mul = BilinearOp::from_entries(4, [(0, 1, 2, int(-1)), (1, 1, 3, int(-1))]);
        HomAlgebra::mono(mul, LinearMap::identity(4)).unwrap()
    }

    #[test]
    fn skew_cocycle_yields_compatible_structure() {
        let a = four_dim();
        let b = ScalarForm::new(Matrix::from_ints(&[
            &[0, -1, 0, -4],
            &[1, 0, 4, 0],
            &[0, -4, 0, 0],
            &[4, 0, 0, 0],
        ]))
        .unwrap();
        assert!(is_nondegenerate(&b));
        assert!(check_scalar_cocycle(&a, &b).unwrap().passed());
        assert!(check_cocycle_compatibility(&a, &b).unwrap().passed());
        let out = rhizaform_from_cocycle(&a, &b, true).unwrap();
        assert!(check_rhizaform(&out).unwrap().passed());
        assert_eq!(&sum_product(&out).unwrap(), a.mul().unwrap());
    }

    #[test]
    fn incompatible_cocycles_are_rejected_in_strict_mode() {
        let a = four_dim();
        let space = scalar_cocycle_space(&a).unwrap();
        let compatible = compatible_cocycle_space(&a).unwrap();
        assert!(compatible.len() < space.len());
        for b in &compatible {
            assert!(check_scalar_cocycle(&a, b).unwrap().passed());
            assert!(check_cocycle_compatibility(&a, b).unwrap().passed());
        }
        let bad = space
            .iter()
            .find(|b| !check_cocycle_compatibility(&a, b).unwrap().passed())
            .unwrap();
        assert_eq!(
            rhizaform_from_cocycle(&a, bad, true),
            Err(Error::NotACocycle)
        );
    }
}

//! Bimodules, O-operators and Rota-Baxter operators, and the rhizaform
//! structures they induce.
//!
//! Actions are stored as matrices: `left[i]` is the matrix of `l(e_i)` on
//! the module, so `l(x) = sum_i x_i left[i]`.

use num_traits::Zero;

use crate::algmodel::{BilinearOp, HomAlgebra, LinearMap, PREC, SUCC};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Rational, Vector};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    alg_dim: usize,
    mod_dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
    beta: LinearMap,
}

impl Bimodule {
    pub fn new(left: Vec<Matrix>, right: Vec<Matrix>, beta: LinearMap) -> Result<Self> {
        let alg_dim = left.len();
        let mod_dim = beta.dim();
        if right.len() != alg_dim {
            return Err(Error::dims(format!(
                "{} left actions but {} right actions",
                alg_dim,
                right.len()
            )));
        }
        if left
            .iter()
            .chain(&right)
            .any(|m| m.rows() != mod_dim || m.cols() != mod_dim)
        {
            return Err(Error::dims(format!("actions must be {mod_dim}x{mod_dim}")));
        }
        Ok(Bimodule {
            alg_dim,
            mod_dim,
            left,
            right,
            beta,
        })
    }

    pub fn zero(alg_dim: usize, mod_dim: usize, beta: LinearMap) -> Result<Self> {
        let z = vec![Matrix::zeros(mod_dim, mod_dim); alg_dim];
        Bimodule::new(z.clone(), z, beta)
    }

    pub fn alg_dim(&self) -> usize {
        self.alg_dim
    }

    pub fn mod_dim(&self) -> usize {
        self.mod_dim
    }

    pub fn left(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right(&self) -> &[Matrix] {
        &self.right
    }

    pub fn beta(&self) -> &LinearMap {
        &self.beta
    }

    /// `l(x)` for an algebra element `x`.
    pub fn left_action(&self, x: &[Rational]) -> Matrix {
        combine(&self.left, x, self.mod_dim)
    }

    /// `r(x)` for an algebra element `x`.
    pub fn right_action(&self, x: &[Rational]) -> Matrix {
        combine(&self.right, x, self.mod_dim)
    }
}

fn combine(mats: &[Matrix], x: &[Rational], m: usize) -> Matrix {
    let mut out = Matrix::zeros(m, m);
    for (mat, c) in mats.iter().zip(x) {
        if !c.is_zero() {
            out = out.add(&mat.scale(c)).expect("same shape");
        }
    }
    out
}

/// A linear map between spaces of possibly different dimension;
/// `matrix` is `target_dim x source_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearOperator {
    matrix: Matrix,
}

impl LinearOperator {
    pub fn new(matrix: Matrix) -> Self {
        LinearOperator { matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearOperator::new(Matrix::identity(n))
    }

    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        LinearOperator::new(Matrix::zeros(target_dim, source_dim))
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vector> {
        self.matrix.mul_vec(v)
    }

    pub fn image(&self, i: usize) -> Vector {
        self.matrix.column(i)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        LinearOperator::new(self.matrix.scale(s))
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(LinearOperator::new(self.matrix.invert()?))
    }
}

impl From<LinearMap> for LinearOperator {
    fn from(m: LinearMap) -> Self {
        LinearOperator::new(m.matrix().clone())
    }
}

fn record_columns(report: &mut CheckReport, id: &str, prefix: &[usize], residual: &Matrix) {
    for col in 0..residual.cols() {
        let mut tuple = prefix.to_vec();
        tuple.push(col);
        report.record(id, &tuple, residual.column(col));
    }
}

fn require_mul(a: &HomAlgebra) -> Result<&BilinearOp> {
    a.mul()
}

/// The five bimodule identities as matrix equations on basis pairs.
pub fn check_bimodule(a: &HomAlgebra, m: &Bimodule) -> Result<CheckReport> {
    let mul = require_mul(a)?;
    let n = a.dim();
    if m.alg_dim() != n {
        return Err(Error::dims(format!(
            "bimodule over a {}-dim algebra used with a {n}-dim one",
            m.alg_dim()
        )));
    }
    let beta = m.beta().matrix();
    let alpha = a.alpha();
    let mut report = CheckReport::new("bimodule");
    let mut alt = Vec::new();
    for i in 0..n {
        let l_alpha_i = m.left_action(&alpha.image(i));
        let r_alpha_i = m.right_action(&alpha.image(i));
        for j in 0..n {
            let prod = mul.basis_product(i, j);
            let r_alpha_j = m.right_action(&alpha.image(j));
            // l(alpha(a)) l(b) = -l(a*b) beta
            let r1 = l_alpha_i
                .mul(&m.left[j])?
                .add(&m.left_action(prod).mul(beta)?)?;
            record_columns(&mut report, "bimod1", &[i, j], &r1);
            // r(alpha(b)) r(a) = -r(a*b) beta
            let r2 = r_alpha_j
                .mul(&m.right[i])?
                .add(&m.right_action(prod).mul(beta)?)?;
            record_columns(&mut report, "bimod2", &[i, j], &r2);
            // l(alpha(a)) r(b) = -r(alpha(b)) l(a)
            let r3 = l_alpha_i
                .mul(&m.right[j])?
                .add(&r_alpha_j.mul(&m.left[i])?)?;
            record_columns(&mut report, "bimod3", &[i, j], &r3);
            // alternative placement of the twist: l(a) r(alpha(b)) = -r(b) l(alpha(a))
            let r3_alt = m.left[i]
                .mul(&r_alpha_j)?
                .add(&m.right[j].mul(&l_alpha_i)?)?;
            if !r3_alt.is_zero() {
                alt.push(format!("({}, {})", i + 1, j + 1));
            }
        }
        // beta l(a) = l(alpha(a)) beta, and the same for r
        let r4 = beta.mul(&m.left[i])?.sub(&l_alpha_i.mul(beta)?)?;
        record_columns(&mut report, "bimod4", &[i], &r4);
        let r5 = beta.mul(&m.right[i])?.sub(&r_alpha_i.mul(beta)?)?;
        record_columns(&mut report, "bimod5", &[i], &r5);
    }
    if alt.is_empty() {
        report.note("bimod3_alt: l(a) r(alpha(b)) = -r(b) l(alpha(a)) holds on all basis pairs");
    } else {
        report.note(format!(
            "bimod3_alt: l(a) r(alpha(b)) = -r(b) l(alpha(a)) fails at {}",
            alt.join(" ")
        ));
    }
    Ok(report)
}

/// `l(x)(y) = x * y`, `r(x)(y) = y * x`, `beta = alpha`.
pub fn regular_bimodule(a: &HomAlgebra) -> Result<Bimodule> {
    let mul = require_mul(a)?;
    let n = a.dim();
    Bimodule::new(
        (0..n).map(|i| mul.left_mult(i)).collect(),
        (0..n).map(|i| mul.right_mult(i)).collect(),
        a.alpha().clone(),
    )
}

/// `L(x)(y) = x succ y`, `R(x)(y) = y prec x`, `beta = alpha`.
pub fn rhizaform_bimodule(a: &HomAlgebra) -> Result<Bimodule> {
    let (succ, prec) = (a.succ()?, a.prec()?);
    let n = a.dim();
    Bimodule::new(
        (0..n).map(|i| succ.left_mult(i)).collect(),
        (0..n).map(|i| prec.right_mult(i)).collect(),
        a.alpha().clone(),
    )
}

/// Dual module with left action `r^T`, right action `l^T` and map `beta^T`.
pub fn dual_bimodule(m: &Bimodule) -> Bimodule {
    Bimodule {
        alg_dim: m.alg_dim,
        mod_dim: m.mod_dim,
        left: m.right.iter().map(Matrix::transpose).collect(),
        right: m.left.iter().map(Matrix::transpose).collect(),
        beta: m.beta.transpose(),
    }
}

fn check_operator_shape(t: &LinearOperator, source: usize, target: usize) -> Result<()> {
    if t.source_dim() != source || t.target_dim() != target {
        return Err(Error::dims(format!(
            "operator is {}x{}, expected {target}x{source}",
            t.target_dim(),
            t.source_dim()
        )));
    }
    Ok(())
}

/// `T beta = alpha T` and `T(u) * T(v) = T(L(T(u)) v + R(T(v)) u)`.
pub fn check_o_operator(t: &LinearOperator, a: &HomAlgebra, m: &Bimodule) -> Result<CheckReport> {
    let mul = require_mul(a)?;
    let (n, md) = (a.dim(), m.mod_dim());
    if m.alg_dim() != n {
        return Err(Error::dims("bimodule and algebra dimensions differ"));
    }
    check_operator_shape(t, md, n)?;
    let mut report = CheckReport::new("o_operator");
    let comm = t
        .matrix()
        .mul(m.beta().matrix())?
        .sub(&a.alpha().matrix().mul(t.matrix())?)?;
    for u in 0..md {
        report.record("comm", &[u], comm.column(u));
    }
    for u in 0..md {
        let tu = t.image(u);
        let l_tu = m.left_action(&tu);
        for v in 0..md {
            let tv = t.image(v);
            let lhs = mul.eval(&tu, &tv)?;
            let inner = l_tu
                .column(v)
                .iter()
                .zip(m.right_action(&tv).column(u))
                .map(|(x, y)| x + y)
                .collect::<Vec<_>>();
            let rhs = t.apply(&inner)?;
            report.record(
                "o_op",
                &[u, v],
                lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect(),
            );
        }
    }
    Ok(report)
}

/// Weight-0 Rota-Baxter condition with `R alpha = alpha R`.
pub fn check_rota_baxter(r: &LinearOperator, a: &HomAlgebra) -> Result<CheckReport> {
    let mul = require_mul(a)?;
    let n = a.dim();
    check_operator_shape(r, n, n)?;
    let rm = r.matrix();
    let am = a.alpha().matrix();
    let mut report = CheckReport::new("rota_baxter");
    let comm = rm.mul(am)?.sub(&am.mul(rm)?)?;
    for i in 0..n {
        report.record("comm", &[i], comm.column(i));
    }
    // coordinates: R(e_i) * R(e_j) - R(R(e_i) * e_j + e_i * R(e_j))
    for i in 0..n {
        for j in 0..n {
            let mut res = vec![Rational::zero(); n];
            let mut inner = vec![Rational::zero(); n];
            for p in 0..n {
                let rpi = rm.get(p, i);
                for q in 0..n {
                    let rqj = rm.get(q, j);
                    for k in 0..n {
                        let c = mul.get(p, q, k);
                        if !c.is_zero() {
                            res[k] += rpi * rqj * c;
                        }
                    }
                }
                for k in 0..n {
                    inner[k] += rpi * mul.get(p, j, k) + rm.get(p, j) * mul.get(i, p, k);
                }
            }
            let image = rm.mul_vec(&inner)?;
            for (x, y) in res.iter_mut().zip(image) {
                *x -= y;
            }
            report.record("rb", &[i, j], res);
        }
    }
    Ok(report)
}

/// `u succ v = L(T(u)) v`, `u prec v = R(T(v)) u` on the module, with map `beta`.
pub fn induced_rhizaform_from_o_operator(
    t: &LinearOperator,
    a: &HomAlgebra,
    m: &Bimodule,
    strict: bool,
) -> Result<HomAlgebra> {
    if strict && !check_o_operator(t, a, m)?.passed() {
        return Err(Error::NotAnOOperator);
    }
    check_operator_shape(t, m.mod_dim(), a.dim())?;
    let md = m.mod_dim();
    let mut succ = BilinearOp::zero(md);
    let mut prec = BilinearOp::zero(md);
    for u in 0..md {
        let l_tu = m.left_action(&t.image(u));
        let r_tu = m.right_action(&t.image(u));
        for v in 0..md {
            for k in 0..md {
                succ.set(u, v, k, l_tu.get(k, v).clone());
                // v prec u = R(T(u)) v
                prec.set(v, u, k, r_tu.get(k, v).clone());
            }
        }
    }
    HomAlgebra::rhizaform(succ, prec, m.beta().clone())
}

/// `x succ y = R(x) * y`, `x prec y = x * R(y)`.
pub fn induced_rhizaform_from_rb(
    r: &LinearOperator,
    a: &HomAlgebra,
    strict: bool,
) -> Result<HomAlgebra> {
    if strict && !check_rota_baxter(r, a)?.passed() {
        return Err(Error::NotRotaBaxter);
    }
    let mul = require_mul(a)?;
    let n = a.dim();
    check_operator_shape(r, n, n)?;
    let rm = r.matrix();
    let mut succ = BilinearOp::zero(n);
    let mut prec = BilinearOp::zero(n);
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                let (rpi, rpj) = (rm.get(p, i), rm.get(p, j));
                for k in 0..n {
                    if !rpi.is_zero() {
                        let v = succ.get(i, j, k) + rpi * mul.get(p, j, k);
                        succ.set(i, j, k, v);
                    }
                    if !rpj.is_zero() {
                        let v = prec.get(i, j, k) + rpj * mul.get(i, p, k);
                        prec.set(i, j, k, v);
                    }
                }
            }
        }
    }
    HomAlgebra::rhizaform(succ, prec, a.alpha().clone())
}

/// `f(x o1 y) = f(x) o2 f(y)` for every product of `a1`, and `alpha2 f = f alpha1`.
pub fn check_homomorphism(
    f: &LinearOperator,
    a1: &HomAlgebra,
    a2: &HomAlgebra,
) -> Result<CheckReport> {
    check_operator_shape(f, a1.dim(), a2.dim())?;
    let fm = f.matrix();
    let mut report = CheckReport::new("homomorphism");
    let comm = a2
        .alpha()
        .matrix()
        .mul(fm)?
        .sub(&fm.mul(a1.alpha().matrix())?)?;
    for i in 0..a1.dim() {
        report.record("comm", &[i], comm.column(i));
    }
    for (name, op1) in a1.products() {
        let op2 = a2.product(name)?;
        let id = format!("hom_{name}");
        for i in 0..a1.dim() {
            let fi = fm.column(i);
            for j in 0..a1.dim() {
                let fj = fm.column(j);
                let lhs = fm.mul_vec(op1.basis_product(i, j))?;
                let rhs = op2.eval(&fi, &fj)?;
                report.record(
                    &id,
                    &[i, j],
                    lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect(),
                );
            }
        }
    }
    Ok(report)
}

/// Transports the induced structure on the module back to the algebra:
/// `x succ y = T(T^-1(x) succ_V T^-1(y))`, likewise `prec`.
pub fn compatible_from_invertible_o_operator(
    t: &LinearOperator,
    a: &HomAlgebra,
    m: &Bimodule,
    strict: bool,
) -> Result<HomAlgebra> {
    if !t.matrix().is_square() {
        return Err(Error::Singular);
    }
    let t_inv = t.inverse()?;
    let on_module = induced_rhizaform_from_o_operator(t, a, m, strict)?;
    let n = a.dim();
    let transport = |op: &BilinearOp| -> Result<BilinearOp> {
        let mut out = BilinearOp::zero(n);
        for i in 0..n {
            let u = t_inv.image(i);
            for j in 0..n {
                let v = t_inv.image(j);
                let w = t.apply(&op.eval(&u, &v)?)?;
                for (k, c) in w.into_iter().enumerate() {
                    out.set(i, j, k, c);
                }
            }
        }
        Ok(out)
    };
    HomAlgebra::rhizaform(
        transport(on_module.product(SUCC)?)?,
        transport(on_module.product(PREC)?)?,
        a.alpha().clone(),
    )
}

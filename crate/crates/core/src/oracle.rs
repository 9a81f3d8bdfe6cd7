//! A brute-force evaluator used to cross-check the checkers.
//!
//! Everything here is computed from `BilinearOp::eval`, `LinearMap::apply`
//! and matrix-vector products on basis vectors, never from the structure
//! constant contractions used by the checkers. A verdict is the set of
//! identity ids with a nonzero residual somewhere.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algmodel::{star_product, sum_product, BilinearOp, HomAlgebra, LinearMap};
use crate::axioms::{
    check_alpha_derivation, check_dendriform, check_hom_anti_associative, check_jacobi_jordan,
    check_multiplicativity, check_pre_jacobi_jordan, check_rhizaform, pre_jacobi_jordan_product,
    subadjacent_bracket,
};
use crate::cocycles::{
    check_cocycle_compatibility, scalar_cocycle_space, vector_cocycle_space, ScalarForm,
};
use crate::error::Result;
use crate::exactlin::{basis_vector, is_zero_vector, vec_add, vec_sub, Matrix, Rational, Vector};
use crate::family::{
    associated_family, check_anti_associative_family, check_rb_family, check_rhizaform_family,
    FamilyAlgebra, PairFamily, RBFamily, Semigroup,
};
use crate::nilpotency::{check_2_nilpotent, is_nilpotent, Nilpotency};
use crate::operators::{
    check_bimodule, check_o_operator, check_rota_baxter, dual_bimodule, regular_bimodule,
    rhizaform_bimodule, Bimodule, LinearOperator,
};
use crate::report::CheckReport;

pub type Verdict = BTreeSet<String>;

/// Collects failing ids.
struct Tally(Verdict);

impl Tally {
    fn new() -> Self {
        Tally(BTreeSet::new())
    }

    fn test(&mut self, id: &str, residual: &[Rational]) {
        if !is_zero_vector(residual) {
            self.0.insert(id.to_string());
        }
    }
}

fn e(n: usize, i: usize) -> Vector {
    basis_vector(n, i)
}

fn triples(n: usize) -> impl Iterator<Item = (Vector, Vector, Vector)> {
    (0..n * n * n).map(move |t| (e(n, t / (n * n)), e(n, (t / n) % n), e(n, t % n)))
}

fn pairs(n: usize) -> impl Iterator<Item = (Vector, Vector)> {
    (0..n * n).map(move |t| (e(n, t / n), e(n, t % n)))
}

fn ev(op: &BilinearOp, x: &[Rational], y: &[Rational]) -> Vector {
    op.eval(x, y).expect("oracle inputs share a dimension")
}

fn ap(m: &LinearMap, x: &[Rational]) -> Vector {
    m.apply(x).expect("oracle inputs share a dimension")
}

fn mv(m: &Matrix, x: &[Rational]) -> Vector {
    m.mul_vec(x).expect("oracle inputs share a dimension")
}

fn sum3(a: Vector, b: Vector, c: Vector) -> Vector {
    vec_add(&vec_add(&a, &b), &c)
}

fn test_mult(t: &mut Tally, id: &str, op: &BilinearOp, alpha: &LinearMap) {
    for (x, y) in pairs(op.dim()) {
        t.test(
            id,
            &vec_sub(
                &ap(alpha, &ev(op, &x, &y)),
                &ev(op, &ap(alpha, &x), &ap(alpha, &y)),
            ),
        );
    }
}

pub fn rhizaform(a: &HomAlgebra) -> Result<Verdict> {
    let (s, p, al) = (a.succ()?, a.prec()?, a.alpha());
    let mut t = Tally::new();
    for (x, y, z) in triples(a.dim()) {
        let (ax, az) = (ap(al, &x), ap(al, &z));
        let xy = vec_add(&ev(s, &x, &y), &ev(p, &x, &y));
        let yz = vec_add(&ev(s, &y, &z), &ev(p, &y, &z));
        t.test(
            "req1",
            &vec_add(&ev(s, &xy, &az), &ev(s, &ax, &ev(s, &y, &z))),
        );
        t.test(
            "req2",
            &vec_add(&ev(p, &ax, &yz), &ev(p, &ev(p, &x, &y), &az)),
        );
        t.test(
            "req3",
            &vec_add(&ev(s, &ax, &ev(p, &y, &z)), &ev(p, &ev(s, &x, &y), &az)),
        );
    }
    test_mult(&mut t, "mult_succ", s, al);
    test_mult(&mut t, "mult_prec", p, al);
    Ok(t.0)
}

pub fn dendriform(a: &HomAlgebra) -> Result<Verdict> {
    let (s, p, al) = (a.succ()?, a.prec()?, a.alpha());
    let mut t = Tally::new();
    for (x, y, z) in triples(a.dim()) {
        let (ax, az) = (ap(al, &x), ap(al, &z));
        let xy = vec_add(&ev(s, &x, &y), &ev(p, &x, &y));
        let yz = vec_add(&ev(s, &y, &z), &ev(p, &y, &z));
        t.test(
            "den1",
            &vec_sub(&ev(p, &ev(p, &x, &y), &az), &ev(p, &ax, &yz)),
        );
        t.test(
            "den2",
            &vec_sub(&ev(p, &ev(s, &x, &y), &az), &ev(s, &ax, &ev(p, &y, &z))),
        );
        t.test(
            "den3",
            &vec_sub(&ev(s, &xy, &az), &ev(s, &ax, &ev(s, &y, &z))),
        );
    }
    test_mult(&mut t, "mult_succ", s, al);
    test_mult(&mut t, "mult_prec", p, al);
    Ok(t.0)
}

pub fn anti_associative(mul: &BilinearOp, alpha: &LinearMap) -> Verdict {
    let mut t = Tally::new();
    for (x, y, z) in triples(mul.dim()) {
        let lhs = ev(mul, &ap(alpha, &x), &ev(mul, &y, &z));
        let rhs = ev(mul, &ev(mul, &x, &y), &ap(alpha, &z));
        t.test("anti_assoc", &vec_add(&lhs, &rhs));
    }
    t.0
}

pub fn multiplicativity(op: &BilinearOp, alpha: &LinearMap) -> Verdict {
    let mut t = Tally::new();
    test_mult(&mut t, "mult", op, alpha);
    t.0
}

pub fn jacobi_jordan(mul: &BilinearOp, alpha: &LinearMap) -> Verdict {
    let mut t = Tally::new();
    for (x, y) in pairs(mul.dim()) {
        t.test("comm", &vec_sub(&ev(mul, &x, &y), &ev(mul, &y, &x)));
    }
    for (x, y, z) in triples(mul.dim()) {
        let r = sum3(
            ev(mul, &ap(alpha, &x), &ev(mul, &y, &z)),
            ev(mul, &ap(alpha, &y), &ev(mul, &z, &x)),
            ev(mul, &ap(alpha, &z), &ev(mul, &x, &y)),
        );
        t.test("jj", &r);
    }
    t.0
}

pub fn pre_jacobi_jordan(mul: &BilinearOp, alpha: &LinearMap) -> Verdict {
    let mut t = Tally::new();
    for (x, y, z) in triples(mul.dim()) {
        let (ax, ay, az) = (ap(alpha, &x), ap(alpha, &y), ap(alpha, &z));
        let r = vec_add(
            &sum3(
                ev(mul, &ev(mul, &x, &y), &az),
                ev(mul, &ax, &ev(mul, &y, &z)),
                ev(mul, &ev(mul, &y, &x), &az),
            ),
            &ev(mul, &ay, &ev(mul, &x, &z)),
        );
        t.test("pjj", &r);
    }
    t.0
}

pub fn alpha_derivation(d: &LinearMap, a: &HomAlgebra, product_name: &str) -> Result<Verdict> {
    let op = if product_name == "star" {
        star_product(a)?
    } else {
        a.product(product_name)?.clone()
    };
    let al = a.alpha();
    let mut t = Tally::new();
    for (x, y) in pairs(a.dim()) {
        let lhs = ap(d, &ev(&op, &x, &y));
        let rhs = vec_add(
            &ev(&op, &ap(d, &x), &ap(al, &y)),
            &ev(&op, &ap(al, &x), &ap(d, &y)),
        );
        t.test(product_name, &vec_sub(&lhs, &rhs));
    }
    Ok(t.0)
}

fn act(mats: &[Matrix], x: &[Rational], v: &[Rational]) -> Vector {
    let mut out = vec![Rational::default(); v.len()];
    for (m, c) in mats.iter().zip(x) {
        let image = mv(m, v);
        for (o, w) in out.iter_mut().zip(image) {
            *o += c * w;
        }
    }
    out
}

pub fn bimodule(a: &HomAlgebra, m: &Bimodule) -> Result<Verdict> {
    let mul = a.mul()?;
    let (al, beta) = (a.alpha(), m.beta());
    let (l, r) = (m.left(), m.right());
    let n = a.dim();
    let mut t = Tally::new();
    for (x, y) in pairs(n) {
        let (ax, ay, xy) = (ap(al, &x), ap(al, &y), ev(mul, &x, &y));
        for u in 0..m.mod_dim() {
            let v = e(m.mod_dim(), u);
            let bv = ap(beta, &v);
            t.test(
                "bimod1",
                &vec_add(&act(l, &ax, &act(l, &y, &v)), &act(l, &xy, &bv)),
            );
            t.test(
                "bimod2",
                &vec_add(&act(r, &ay, &act(r, &x, &v)), &act(r, &xy, &bv)),
            );
            t.test(
                "bimod3",
                &vec_add(&act(l, &ax, &act(r, &y, &v)), &act(r, &ay, &act(l, &x, &v))),
            );
        }
    }
    for i in 0..n {
        let x = e(n, i);
        let ax = ap(al, &x);
        for u in 0..m.mod_dim() {
            let v = e(m.mod_dim(), u);
            let bv = ap(beta, &v);
            t.test(
                "bimod4",
                &vec_sub(&ap(beta, &act(l, &x, &v)), &act(l, &ax, &bv)),
            );
            t.test(
                "bimod5",
                &vec_sub(&ap(beta, &act(r, &x, &v)), &act(r, &ax, &bv)),
            );
        }
    }
    Ok(t.0)
}

pub fn o_operator(op: &LinearOperator, a: &HomAlgebra, m: &Bimodule) -> Result<Verdict> {
    let mul = a.mul()?;
    let md = m.mod_dim();
    let mut t = Tally::new();
    for u in 0..md {
        let v = e(md, u);
        t.test(
            "comm",
            &vec_sub(
                &mv(op.matrix(), &ap(m.beta(), &v)),
                &ap(a.alpha(), &mv(op.matrix(), &v)),
            ),
        );
    }
    for (u, v) in pairs(md) {
        let (tu, tv) = (mv(op.matrix(), &u), mv(op.matrix(), &v));
        let inner = vec_add(&act(m.left(), &tu, &v), &act(m.right(), &tv, &u));
        t.test(
            "o_op",
            &vec_sub(&ev(mul, &tu, &tv), &mv(op.matrix(), &inner)),
        );
    }
    Ok(t.0)
}

pub fn rota_baxter(r: &LinearOperator, a: &HomAlgebra) -> Result<Verdict> {
    let mul = a.mul()?;
    let rm = r.matrix();
    let mut t = Tally::new();
    for i in 0..a.dim() {
        let x = e(a.dim(), i);
        t.test(
            "comm",
            &vec_sub(&mv(rm, &ap(a.alpha(), &x)), &ap(a.alpha(), &mv(rm, &x))),
        );
    }
    for (x, y) in pairs(a.dim()) {
        let (rx, ry) = (mv(rm, &x), mv(rm, &y));
        let inner = vec_add(&ev(mul, &rx, &y), &ev(mul, &x, &ry));
        t.test("rb", &vec_sub(&ev(mul, &rx, &ry), &mv(rm, &inner)));
    }
    Ok(t.0)
}

pub fn homomorphism(f: &LinearOperator, a1: &HomAlgebra, a2: &HomAlgebra) -> Result<Verdict> {
    let fm = f.matrix();
    let mut t = Tally::new();
    for i in 0..a1.dim() {
        let x = e(a1.dim(), i);
        t.test(
            "comm",
            &vec_sub(&ap(a2.alpha(), &mv(fm, &x)), &mv(fm, &ap(a1.alpha(), &x))),
        );
    }
    for (name, op1) in a1.products() {
        let op2 = a2.product(name)?;
        for (x, y) in pairs(a1.dim()) {
            let r = vec_sub(
                &mv(fm, &ev(op1, &x, &y)),
                &ev(op2, &mv(fm, &x), &mv(fm, &y)),
            );
            t.test(&format!("hom_{name}"), &r);
        }
    }
    Ok(t.0)
}

pub fn two_nilpotent(a: &HomAlgebra) -> Result<Verdict> {
    let (s, p, al) = (a.succ()?, a.prec()?, a.alpha());
    let named = [("succ", s), ("prec", p)];
    let mut t = Tally::new();
    for (x, y, z) in triples(a.dim()) {
        for (n1, o1) in named {
            for (n2, o2) in named {
                t.test(
                    &format!("left_{n1}_{n2}"),
                    &ev(o2, &ev(o1, &x, &y), &ap(al, &z)),
                );
                t.test(
                    &format!("right_{n1}_{n2}"),
                    &ev(o2, &ap(al, &x), &ev(o1, &y, &z)),
                );
            }
        }
    }
    Ok(t.0)
}

pub fn rhizaform_family(f: &FamilyAlgebra) -> Verdict {
    let (sg, al) = (f.semigroup(), f.alpha());
    let mut t = Tally::new();
    for l in 0..sg.size() {
        for w in 0..sg.size() {
            let lw = sg.op(l, w);
            for (x, y, z) in triples(f.dim()) {
                let (ax, az) = (ap(al, &x), ap(al, &z));
                let lhs1 = ev(f.prec(w), &ev(f.prec(l), &x, &y), &az);
                let inner1 = vec_add(&ev(f.prec(w), &y, &z), &ev(f.succ(l), &y, &z));
                t.test("fam1", &vec_add(&lhs1, &ev(f.prec(lw), &ax, &inner1)));
                let lhs2 = ev(f.prec(w), &ev(f.succ(l), &x, &y), &az);
                t.test(
                    "fam2",
                    &vec_add(&lhs2, &ev(f.succ(l), &ax, &ev(f.prec(w), &y, &z))),
                );
                let inner3 = vec_add(&ev(f.prec(w), &x, &y), &ev(f.succ(l), &x, &y));
                let lhs3 = ev(f.succ(lw), &inner3, &az);
                t.test(
                    "fam3",
                    &vec_add(&lhs3, &ev(f.succ(l), &ax, &ev(f.succ(w), &y, &z))),
                );
            }
        }
    }
    for l in 0..sg.size() {
        test_mult(&mut t, "mult_succ", f.succ(l), al);
        test_mult(&mut t, "mult_prec", f.prec(l), al);
    }
    t.0
}

pub fn anti_associative_family(
    sg: &Semigroup,
    products: &PairFamily,
    alpha: &LinearMap,
) -> Verdict {
    let mut t = Tally::new();
    let n = alpha.dim();
    for l in 0..sg.size() {
        for w in 0..sg.size() {
            for g in 0..sg.size() {
                for (x, y, z) in triples(n) {
                    let lhs = ev(
                        &products[sg.op(l, w)][g],
                        &ev(&products[l][w], &x, &y),
                        &ap(alpha, &z),
                    );
                    let rhs = ev(
                        &products[l][sg.op(w, g)],
                        &ap(alpha, &x),
                        &ev(&products[w][g], &y, &z),
                    );
                    t.test("anti_assoc", &vec_add(&lhs, &rhs));
                }
            }
        }
    }
    t.0
}

pub fn rb_family(rf: &RBFamily, a: &HomAlgebra) -> Result<Verdict> {
    let mul = a.mul()?;
    let sg = rf.semigroup();
    let n = a.dim();
    let mut t = Tally::new();
    for l in 0..sg.size() {
        let rm = rf.operator(l).matrix();
        for i in 0..n {
            let x = e(n, i);
            t.test(
                "comm",
                &vec_sub(&ap(a.alpha(), &mv(rm, &x)), &mv(rm, &ap(a.alpha(), &x))),
            );
        }
    }
    for l in 0..sg.size() {
        for w in 0..sg.size() {
            let (rl, rw) = (rf.operator(l).matrix(), rf.operator(w).matrix());
            let rlw = rf.operator(sg.op(l, w)).matrix();
            for (x, y) in pairs(n) {
                let (rx, ry) = (mv(rl, &x), mv(rw, &y));
                let inner = vec_add(&ev(mul, &rx, &y), &ev(mul, &x, &ry));
                t.test("rb_family", &vec_sub(&ev(mul, &rx, &ry), &mv(rlw, &inner)));
            }
        }
    }
    Ok(t.0)
}

/// Cyclic condition and invariance for a scalar form.
pub fn scalar_cocycle(a: &HomAlgebra, b: &ScalarForm) -> Result<Verdict> {
    let mul = star_product(a)?;
    let al = a.alpha();
    let form = |x: &[Rational], y: &[Rational]| -> Rational {
        let bx = mv(&b.matrix().transpose(), x);
        bx.iter().zip(y).map(|(p, q)| p * q).sum()
    };
    let mut t = Tally::new();
    for (x, y, z) in triples(a.dim()) {
        let r = form(&ev(&mul, &x, &y), &ap(al, &z))
            + form(&ev(&mul, &y, &z), &ap(al, &x))
            + form(&ev(&mul, &z, &x), &ap(al, &y));
        t.test("cyclic", &[r]);
    }
    for (x, y) in pairs(a.dim()) {
        t.test(
            "invariance",
            &[form(&ap(al, &x), &ap(al, &y)) - form(&x, &y)],
        );
    }
    Ok(t.0)
}

/// Algebra-valued cocycle conditions for `omega` given by structure constants.
pub fn vector_cocycle(a: &HomAlgebra, omega: &BilinearOp) -> Result<Verdict> {
    let mul = star_product(a)?;
    let al = a.alpha();
    let mut t = Tally::new();
    for (x, y, z) in triples(a.dim()) {
        let r = sum3(
            ev(omega, &ev(&mul, &x, &y), &ap(al, &z)),
            ev(omega, &ev(&mul, &y, &z), &ap(al, &x)),
            ev(omega, &ev(&mul, &z, &x), &ap(al, &y)),
        );
        t.test("cyclic", &r);
    }
    for (x, y) in pairs(a.dim()) {
        t.test(
            "invariance",
            &vec_sub(
                &ap(al, &ev(omega, &x, &y)),
                &ev(omega, &ap(al, &x), &ap(al, &y)),
            ),
        );
    }
    Ok(t.0)
}

/// Nilpotency from spanning sets reduced by rank, not by canonical forms.
/// `B(x*y, z) = B(x, y*z) + B(y, z*x)` on every basis triple.
pub fn cocycle_compatibility(a: &HomAlgebra, b: &ScalarForm) -> Result<Verdict> {
    let star = star_product(a)?;
    let form = |u: &[Rational], v: &[Rational]| -> Rational {
        mv(b.matrix(), v).iter().zip(u).map(|(p, q)| p * q).sum()
    };
    let mut t = Tally::new();
    for (x, y, z) in triples(a.dim()) {
        let r = form(&ev(&star, &x, &y), &z)
            - form(&x, &ev(&star, &y, &z))
            - form(&y, &ev(&star, &z, &x));
        t.test("compat", &[r]);
    }
    Ok(t.0)
}

pub fn nilpotency(a: &HomAlgebra) -> Result<Nilpotency> {
    let ops: Vec<&BilinearOp> = a.products().values().collect();
    let n = a.dim();
    let reduce = |vs: Vec<Vector>| -> Vec<Vector> {
        let mut kept: Vec<Vector> = Vec::new();
        for v in vs {
            let mut trial = kept.clone();
            trial.push(v);
            if Matrix::from_rows(trial.clone())
                .map(|m| m.rank())
                .unwrap_or(0)
                > kept.len()
            {
                kept = trial;
            }
        }
        kept
    };
    let mut powers: Vec<Vec<Vector>> = vec![(0..n).map(|i| e(n, i)).collect()];
    for k in 1..n + 2 {
        if powers[k - 1].is_empty() {
            return Ok(Nilpotency {
                nilpotent: true,
                index: Some(k),
            });
        }
        let mut span = Vec::new();
        for i in 1..=k {
            for u in &powers[i - 1] {
                for v in &powers[k - i] {
                    for op in &ops {
                        span.push(ev(op, u, v));
                    }
                }
            }
        }
        powers.push(reduce(span));
    }
    let last = powers.len();
    Ok(if powers[last - 1].is_empty() {
        Nilpotency {
            nilpotent: true,
            index: Some(last),
        }
    } else {
        Nilpotency {
            nilpotent: false,
            index: None,
        }
    })
}

fn verdict_of(report: &CheckReport) -> Verdict {
    report.failing_identities().into_iter().collect()
}

/// One checker compared with the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub checker: String,
    pub library: Verdict,
    pub oracle: Verdict,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.library == self.oracle
    }
}

fn compare(out: &mut Vec<Comparison>, checker: &str, report: &CheckReport, oracle: Verdict) {
    out.push(Comparison {
        checker: checker.to_string(),
        library: verdict_of(report),
        oracle,
    });
}

/// Runs every checker that applies to a rhizaform algebra and the oracle
/// counterpart of each.
pub fn audit_rhizaform(a: &HomAlgebra) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    let n = a.dim();
    let al = a.alpha();
    let star = sum_product(a)?;
    let sum = HomAlgebra::mono(star.clone(), al.clone())?;
    compare(&mut out, "rhizaform", &check_rhizaform(a)?, rhizaform(a)?);
    compare(
        &mut out,
        "dendriform",
        &check_dendriform(a)?,
        dendriform(a)?,
    );
    compare(
        &mut out,
        "anti_associative",
        &check_hom_anti_associative(&star, al)?,
        anti_associative(&star, al),
    );
    for (name, op) in a.products() {
        compare(
            &mut out,
            &format!("multiplicativity[{name}]"),
            &check_multiplicativity(op, al)?,
            multiplicativity(op, al),
        );
    }
    let circ = pre_jacobi_jordan_product(a)?;
    compare(
        &mut out,
        "pre_jacobi_jordan",
        &check_pre_jacobi_jordan(&circ, al)?,
        pre_jacobi_jordan(&circ, al),
    );
    let bracket = subadjacent_bracket(a)?;
    compare(
        &mut out,
        "jacobi_jordan",
        &check_jacobi_jordan(&bracket, al)?,
        jacobi_jordan(&bracket, al),
    );
    compare(
        &mut out,
        "jacobi_jordan[star]",
        &check_jacobi_jordan(&star, al)?,
        jacobi_jordan(&star, al),
    );
    for name in ["succ", "prec", "star"] {
        compare(
            &mut out,
            &format!("alpha_derivation[{name}]"),
            &check_alpha_derivation(al, a, name)?,
            alpha_derivation(al, a, name)?,
        );
    }

    let rb = rhizaform_bimodule(a)?;
    let reg = regular_bimodule(&sum)?;
    compare(
        &mut out,
        "bimodule[rhizaform]",
        &check_bimodule(&sum, &rb)?,
        bimodule(&sum, &rb)?,
    );
    compare(
        &mut out,
        "bimodule[regular]",
        &check_bimodule(&sum, &reg)?,
        bimodule(&sum, &reg)?,
    );
    let dual = dual_bimodule(&reg);
    compare(
        &mut out,
        "bimodule[dual]",
        &check_bimodule(&sum, &dual)?,
        bimodule(&sum, &dual)?,
    );

    let id = LinearOperator::identity(n);
    compare(
        &mut out,
        "o_operator[identity,rhizaform]",
        &check_o_operator(&id, &sum, &rb)?,
        o_operator(&id, &sum, &rb)?,
    );
    compare(
        &mut out,
        "o_operator[identity,regular]",
        &check_o_operator(&id, &sum, &reg)?,
        o_operator(&id, &sum, &reg)?,
    );
    let alpha_op = LinearOperator::new(al.matrix().clone());
    for (label, r) in [("identity", &id), ("alpha", &alpha_op)] {
        compare(
            &mut out,
            &format!("rota_baxter[{label}]"),
            &check_rota_baxter(r, &sum)?,
            rota_baxter(r, &sum)?,
        );
        compare(
            &mut out,
            &format!("homomorphism[{label}]"),
            &crate::operators::check_homomorphism(r, a, a)?,
            homomorphism(r, a, a)?,
        );
    }
    compare(
        &mut out,
        "two_nilpotent",
        &check_2_nilpotent(a)?,
        two_nilpotent(a)?,
    );

    let fam = FamilyAlgebra::from_algebra(a)?;
    compare(
        &mut out,
        "rhizaform_family[trivial]",
        &check_rhizaform_family(&fam),
        rhizaform_family(&fam),
    );
    let assoc = associated_family(&fam);
    compare(
        &mut out,
        "anti_associative_family[trivial]",
        &check_anti_associative_family(fam.semigroup(), &assoc, al)?,
        anti_associative_family(fam.semigroup(), &assoc, al),
    );
    let single = RBFamily::new(Semigroup::trivial(), vec![alpha_op.clone()])?;
    compare(
        &mut out,
        "rb_family[alpha]",
        &check_rb_family(&single, &sum)?,
        rb_family(&single, &sum)?,
    );

    // solver outputs re-checked from scratch: every basis element must pass
    let scalar = scalar_cocycle_space(a)?;
    let mut bad: Vec<String> = Vec::new();
    for b in &scalar {
        bad.extend(scalar_cocycle(a, b)?);
    }
    out.push(Comparison {
        checker: "scalar_cocycle_space".into(),
        library: Verdict::new(),
        oracle: bad.into_iter().collect(),
    });
    let mut bad: Vec<String> = Vec::new();
    for w in vector_cocycle_space(a)? {
        bad.extend(vector_cocycle(a, w.coeffs())?);
    }
    out.push(Comparison {
        checker: "vector_cocycle_space".into(),
        library: Verdict::new(),
        oracle: bad.into_iter().collect(),
    });
    if let Some(b) = scalar.first() {
        compare(
            &mut out,
            "cocycle_compatibility",
            &check_cocycle_compatibility(a, b)?,
            cocycle_compatibility(a, b)?,
        );
    }

    let lib = is_nilpotent(a)?;
    let orc = nilpotency(a)?;
    out.push(Comparison {
        checker: "nilpotency".into(),
        library: [format!("{lib:?}")].into_iter().collect(),
        oracle: [format!("{orc:?}")].into_iter().collect(),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    #[test]
    fn oracle_agrees_on_small_algebras() {
        let succ = BilinearOp::from_entries(2, [(1, 1, 0, int(1))]);
        let alpha = LinearMap::from_images(&[vec![int(1), int(0)], vec![int(1), int(1)]]).unwrap();
        let a1 = HomAlgebra::rhizaform(succ.clone(), succ, alpha).unwrap();
        let e = BilinearOp::from_entries(1, [(0, 0, 0, int(1))]);
        let bad =
            HomAlgebra::rhizaform(e.clone(), e.scale(&int(-1)), LinearMap::identity(1)).unwrap();
        for a in [a1, bad] {
            for c in audit_rhizaform(&a).unwrap() {
                assert!(c.agrees(), "{c:?}");
            }
        }
    }

    #[test]
    fn oracle_sees_failures() {
        let e = BilinearOp::from_entries(1, [(0, 0, 0, int(1))]);
        let bad =
            HomAlgebra::rhizaform(e.clone(), e.scale(&int(-1)), LinearMap::identity(1)).unwrap();
        let v = rhizaform(&bad).unwrap();
        assert_eq!(v.into_iter().collect::<Vec<_>>(), ["req1", "req2", "req3"]);
        assert_eq!(
            nilpotency(&bad).unwrap(),
            Nilpotency {
                nilpotent: false,
                index: None
            }
        );
    }
}

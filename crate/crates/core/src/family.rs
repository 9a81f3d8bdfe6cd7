//! Structures indexed by a finite semigroup: rhizaform and anti-associative
//! families, Rota-Baxter families and the collapse onto `A ⊗ KΩ`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::algmodel::{
    algebra_from_value, document_params, document_text, matrix_value, parse_document, parse_matrix,
    parse_product, product_value, BilinearOp, HomAlgebra, LinearMap, PREC, SUCC,
};
use crate::axioms::{cubic_residual, left, pair_residual, right, PairTerm, Term, XYZ};
use crate::error::{Error, Result};
use crate::exactlin::{basis_vector, int, vec_add, vec_sub, Matrix, Rational};
use crate::operators::LinearOperator;
use crate::report::CheckReport;

/// A finite magma given by its table; `check_semigroup` validates associativity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    table: Vec<Vec<usize>>,
}

impl Semigroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let s = table.len();
        if s == 0 {
            return Err(Error::dims("a semigroup needs at least one element"));
        }
        if table
            .iter()
            .any(|row| row.len() != s || row.iter().any(|&x| x >= s))
        {
            return Err(Error::dims(format!(
                "table must be {s}x{s} with entries below {s}"
            )));
        }
        Ok(Semigroup { table })
    }

    pub fn trivial() -> Self {
        Semigroup {
            table: vec![vec![0]],
        }
    }

    /// Addition modulo `s`.
    pub fn cyclic(s: usize) -> Self {
        Semigroup {
            table: (0..s)
                .map(|a| (0..s).map(|b| (a + b) % s).collect())
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

pub fn check_semigroup(s: &Semigroup) -> CheckReport {
    let mut report = CheckReport::new("semigroup");
    let n = s.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (l, r) = (s.op(s.op(a, b), c), s.op(a, s.op(b, c)));
                if l != r {
                    // residual in the semigroup algebra: (ab)c - a(bc)
                    let mut v = vec![Rational::zero(); n];
                    v[l] += int(1);
                    v[r] -= int(1);
                    report.record_labeled("assoc", &[a, b, c], &[], v);
                }
            }
        }
    }
    report
}

/// Products `succ[λ]`, `prec[λ]` for each semigroup element, one structure map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyAlgebra {
    semigroup: Semigroup,
    succ: Vec<BilinearOp>,
    prec: Vec<BilinearOp>,
    alpha: LinearMap,
}

impl FamilyAlgebra {
    pub fn new(
        semigroup: Semigroup,
        succ: Vec<BilinearOp>,
        prec: Vec<BilinearOp>,
        alpha: LinearMap,
    ) -> Result<Self> {
        let s = semigroup.size();
        if succ.len() != s || prec.len() != s {
            return Err(Error::dims(format!("expected {s} products of each kind")));
        }
        let n = alpha.dim();
        if succ.iter().chain(&prec).any(|op| op.dim() != n) {
            return Err(Error::dims(format!("all products must be {n}-dimensional")));
        }
        Ok(FamilyAlgebra {
            semigroup,
            succ,
            prec,
            alpha,
        })
    }

    /// The one-element family carrying a rhizaform algebra.
    pub fn from_algebra(a: &HomAlgebra) -> Result<Self> {
        FamilyAlgebra::new(
            Semigroup::trivial(),
            vec![a.succ()?.clone()],
            vec![a.prec()?.clone()],
            a.alpha().clone(),
        )
    }

    pub fn dim(&self) -> usize {
        self.alpha.dim()
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn succ(&self, l: usize) -> &BilinearOp {
        &self.succ[l]
    }

    pub fn prec(&self, l: usize) -> &BilinearOp {
        &self.prec[l]
    }

    pub fn alpha(&self) -> &LinearMap {
        &self.alpha
    }
}

fn record_cubic(
    report: &mut CheckReport,
    id: &str,
    labels: &[usize],
    terms: &[Term<'_>],
    alpha: &Matrix,
) {
    let n = alpha.rows();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = cubic_residual(terms, alpha, [i, j, k]);
                report.record_labeled(id, labels, &[i, j, k], r);
            }
        }
    }
}

fn record_multiplicativity(
    report: &mut CheckReport,
    id: &str,
    label: usize,
    op: &BilinearOp,
    alpha: &Matrix,
) {
    let terms = [
        PairTerm::Post {
            sign: 1,
            map: Some(alpha),
            op,
        },
        PairTerm::Pre {
            sign: -1,
            op,
            first: Some(alpha),
            second: Some(alpha),
            swap: false,
        },
    ];
    let n = op.dim();
    for i in 0..n {
        for j in 0..n {
            report.record_labeled(id, &[label], &[i, j], pair_residual(&terms, n, i, j));
        }
    }
}

/// The family identities for all pairs `(λ, ω)`, plus multiplicativity of
/// every product.
pub fn check_rhizaform_family(f: &FamilyAlgebra) -> CheckReport {
    let alpha = f.alpha().matrix();
    let sg = f.semigroup();
    let mut report = CheckReport::new("rhizaform_family");
    for l in 0..sg.size() {
        for w in 0..sg.size() {
            let lw = sg.op(l, w);
            let (sl, pl) = (f.succ(l), f.prec(l));
            let (sw, pw) = (f.succ(w), f.prec(w));
            let (slw, plw) = (f.succ(lw), f.prec(lw));
            // (x prec_l y) prec_w alpha(z) = -alpha(x) prec_lw (y prec_w z + y succ_l z)
            let fam1 = [
                left(1, pl, pw, XYZ),
                right(1, pw, plw, XYZ),
                right(1, sl, plw, XYZ),
            ];
            // (x succ_l y) prec_w alpha(z) = -alpha(x) succ_l (y prec_w z)
            let fam2 = [left(1, sl, pw, XYZ), right(1, pw, sl, XYZ)];
            // (x prec_w y + x succ_l y) succ_lw alpha(z) = -alpha(x) succ_l (y succ_w z)
            let fam3 = [
                left(1, pw, slw, XYZ),
                left(1, sl, slw, XYZ),
                right(1, sw, sl, XYZ),
            ];
            record_cubic(&mut report, "fam1", &[l, w], &fam1, alpha);
            record_cubic(&mut report, "fam2", &[l, w], &fam2, alpha);
            record_cubic(&mut report, "fam3", &[l, w], &fam3, alpha);
        }
    }
    for l in 0..sg.size() {
        record_multiplicativity(&mut report, "mult_succ", l, f.succ(l), alpha);
        record_multiplicativity(&mut report, "mult_prec", l, f.prec(l), alpha);
    }
    report
}

/// Products `*_{λ,ω}` indexed by pairs, stored as `products[λ][ω]`.
pub type PairFamily = Vec<Vec<BilinearOp>>;

/// `(x *_{λ,ω} y) *_{λω,γ} alpha(z) = -alpha(x) *_{λ,ωγ} (y *_{ω,γ} z)`.
pub fn check_anti_associative_family(
    sg: &Semigroup,
    products: &PairFamily,
    alpha: &LinearMap,
) -> Result<CheckReport> {
    let s = sg.size();
    if products.len() != s || products.iter().any(|row| row.len() != s) {
        return Err(Error::dims(format!("expected {s}x{s} products")));
    }
    let am = alpha.matrix();
    let mut report = CheckReport::new("anti_associative_family");
    for l in 0..s {
        for w in 0..s {
            for g in 0..s {
                let terms = [
                    left(1, &products[l][w], &products[sg.op(l, w)][g], XYZ),
                    right(1, &products[w][g], &products[l][sg.op(w, g)], XYZ),
                ];
                record_cubic(&mut report, "anti_assoc", &[l, w, g], &terms, am);
            }
        }
    }
    Ok(report)
}

/// `x *_{λ,ω} y = x prec_ω y + x succ_λ y`.
pub fn associated_family(f: &FamilyAlgebra) -> PairFamily {
    let s = f.semigroup().size();
    (0..s)
        .map(|l| {
            (0..s)
                .map(|w| {
                    f.prec(w)
                        .add(f.succ(l))
                        .expect("family products share a dimension")
                })
                .collect()
        })
        .collect()
}

/// One operator `R_λ` per semigroup element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBFamily {
    semigroup: Semigroup,
    operators: Vec<LinearOperator>,
}

impl RBFamily {
    pub fn new(semigroup: Semigroup, operators: Vec<LinearOperator>) -> Result<Self> {
        if operators.len() != semigroup.size() {
            return Err(Error::dims(format!(
                "expected {} operators, got {}",
                semigroup.size(),
                operators.len()
            )));
        }
        if let Some(first) = operators.first() {
            let n = first.source_dim();
            if operators
                .iter()
                .any(|r| r.source_dim() != n || r.target_dim() != n)
            {
                return Err(Error::dims(format!("operators must all be {n}x{n}")));
            }
        }
        Ok(RBFamily {
            semigroup,
            operators,
        })
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn operators(&self) -> &[LinearOperator] {
        &self.operators
    }

    pub fn operator(&self, l: usize) -> &LinearOperator {
        &self.operators[l]
    }

    fn dim(&self) -> usize {
        self.operators[0].source_dim()
    }
}

fn check_family_dims(rf: &RBFamily, a: &HomAlgebra) -> Result<()> {
    if rf.dim() != a.dim() {
        return Err(Error::dims(format!(
            "{}-dim operators on a {}-dim algebra",
            rf.dim(),
            a.dim()
        )));
    }
    Ok(())
}

/// `alpha R_λ = R_λ alpha` and
/// `R_λ(a) * R_ω(b) = R_λω(R_λ(a) * b + a * R_ω(b))`.
pub fn check_rb_family(rf: &RBFamily, a: &HomAlgebra) -> Result<CheckReport> {
    check_family_dims(rf, a)?;
    let mul = a.mul()?;
    let n = a.dim();
    let am = a.alpha().matrix();
    let sg = rf.semigroup();
    let mut report = CheckReport::new("rb_family");
    for l in 0..sg.size() {
        let rm = rf.operator(l).matrix();
        let comm = am.mul(rm)?.sub(&rm.mul(am)?)?;
        for i in 0..n {
            report.record_labeled("comm", &[l], &[i], comm.column(i));
        }
    }
    for l in 0..sg.size() {
        for w in 0..sg.size() {
            let (rl, rw, rlw) = (rf.operator(l), rf.operator(w), rf.operator(sg.op(l, w)));
            for i in 0..n {
                let (ei, rli) = (basis_vector(n, i), rl.image(i));
                for j in 0..n {
                    let (ej, rwj) = (basis_vector(n, j), rw.image(j));
                    let lhs = mul.eval(&rli, &rwj)?;
                    let inner = vec_add(&mul.eval(&rli, &ej)?, &mul.eval(&ei, &rwj)?);
                    let rhs = rlw.apply(&inner)?;
                    report.record_labeled("rb_family", &[l, w], &[i, j], vec_sub(&lhs, &rhs));
                }
            }
        }
    }
    Ok(report)
}

/// `a prec_λ b = a * R_λ(b)`, `a succ_λ b = R_λ(a) * b`.
pub fn induced_family_rhizaform(
    rf: &RBFamily,
    a: &HomAlgebra,
    strict: bool,
) -> Result<FamilyAlgebra> {
    check_family_dims(rf, a)?;
    if strict && !check_rb_family(rf, a)?.passed() {
        return Err(Error::NotRotaBaxter);
    }
    let mul = a.mul()?;
    let n = a.dim();
    let mut succs = Vec::new();
    let mut precs = Vec::new();
    for r in rf.operators() {
        let mut succ = BilinearOp::zero(n);
        let mut prec = BilinearOp::zero(n);
        for i in 0..n {
            let (ei, ri) = (basis_vector(n, i), r.image(i));
            for j in 0..n {
                let (ej, rj) = (basis_vector(n, j), r.image(j));
                for (k, c) in mul.eval(&ri, &ej)?.into_iter().enumerate() {
                    succ.set(i, j, k, c);
                }
                for (k, c) in mul.eval(&ei, &rj)?.into_iter().enumerate() {
                    prec.set(i, j, k, c);
                }
            }
        }
        succs.push(succ);
        precs.push(prec);
    }
    FamilyAlgebra::new(rf.semigroup().clone(), succs, precs, a.alpha().clone())
}

/// The algebra on `A ⊗ KΩ` with `(e_i ⊗ λ)(e_j ⊗ η) = e_i e_j ⊗ λη`, the
/// map `alpha ⊗ id` and the operator `e_i ⊗ λ ↦ R_λ(e_i) ⊗ λ`. Basis
/// vector `e_i ⊗ λ` has index `i * s + λ`.
pub fn tensor_collapse(a: &HomAlgebra, rf: &RBFamily) -> Result<(HomAlgebra, LinearOperator)> {
    check_family_dims(rf, a)?;
    let mul = a.mul()?;
    let (n, sg) = (a.dim(), rf.semigroup());
    let s = sg.size();
    let at = |i: usize, l: usize| i * s + l;
    let mut big = BilinearOp::zero(n * s);
    for (i, j, k, c) in mul.nonzero_entries() {
        for l in 0..s {
            for e in 0..s {
                big.set(at(i, l), at(j, e), at(k, sg.op(l, e)), c.clone());
            }
        }
    }
    let mut alpha = Matrix::zeros(n * s, n * s);
    let mut r = Matrix::zeros(n * s, n * s);
    for l in 0..s {
        let rl = rf.operator(l).matrix();
        for i in 0..n {
            for k in 0..n {
                alpha.set(at(k, l), at(i, l), a.alpha().matrix().get(k, i).clone());
                r.set(at(k, l), at(i, l), rl.get(k, i).clone());
            }
        }
    }
    Ok((
        HomAlgebra::mono(big, LinearMap::new(alpha)?)?,
        LinearOperator::new(r),
    ))
}

/// A parsed family file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyDocument {
    Rhizaform(FamilyAlgebra),
    RotaBaxter {
        algebra: HomAlgebra,
        family: RBFamily,
    },
}

fn parse_semigroup(doc: &Value) -> Result<Semigroup> {
    let omega = doc
        .get("omega")
        .ok_or_else(|| Error::parse("omega", "missing `omega`"))?;
    let size = omega
        .get("size")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("omega.size", "expected a positive integer"))?
        as usize;
    let rows = omega
        .get("table")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("omega.table", "expected an array of rows"))?;
    let table = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| Error::parse(format!("omega.table[{i}]"), "expected an array"))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|x| x as usize)
                        .ok_or_else(|| Error::parse(format!("omega.table[{i}]"), "expected labels"))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if table.len() != size {
        return Err(Error::parse("omega.table", format!("expected {size} rows")));
    }
    Semigroup::new(table).map_err(|e| Error::parse("omega.table", e.to_string()))
}

/// Section keyed `"0".."s-1"`.
fn labeled<'a>(doc: &'a Value, name: &str, s: usize) -> Result<Vec<Option<&'a Value>>> {
    let Some(v) = doc.get(name) else {
        return Ok(vec![None; s]);
    };
    let obj = v
        .as_object()
        .ok_or_else(|| Error::parse(name, "expected an object keyed by element labels"))?;
    if let Some(bad) = obj
        .keys()
        .find(|k| k.parse::<usize>().map_or(true, |l| l >= s))
    {
        return Err(Error::parse(
            format!("{name}.{bad}"),
            format!("labels must lie in 0..{s}"),
        ));
    }
    Ok((0..s).map(|l| obj.get(&l.to_string())).collect())
}

/// Parses a family file: a rhizaform family (`succ`/`prec` keyed by label)
/// or a mono algebra with a Rota-Baxter family `R`.
pub fn parse_family(text: &str, bindings: &BTreeMap<String, Rational>) -> Result<FamilyDocument> {
    let doc = parse_document(text)?;
    let sg = parse_semigroup(&doc)?;
    let s = sg.size();
    let params = document_params(&doc, bindings)?;
    if doc.get("R").is_some() {
        let mut base = doc.clone();
        let obj = base.as_object_mut().expect("documents are objects");
        for key in ["omega", "R"] {
            obj.remove(key);
        }
        let algebra = algebra_from_value(&base, bindings)?;
        let ops = labeled(&doc, "R", s)?
            .into_iter()
            .enumerate()
            .map(|(l, v)| match v {
                Some(v) => Ok(LinearOperator::new(parse_matrix(
                    v,
                    &format!("R.{l}"),
                    &params,
                )?)),
                None => Ok(LinearOperator::zero(algebra.dim(), algebra.dim())),
            })
            .collect::<Result<Vec<_>>>()?;
        let family = RBFamily::new(sg, ops).map_err(|e| Error::parse("R", e.to_string()))?;
        check_family_dims(&family, &algebra).map_err(|e| Error::parse("R", e.to_string()))?;
        return Ok(FamilyDocument::RotaBaxter { algebra, family });
    }
    let dim = doc
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("dim", "expected a non-negative integer"))?
        as usize;
    let alpha = LinearMap::new(parse_matrix(
        doc.get("alpha")
            .ok_or_else(|| Error::parse("alpha", "missing `alpha`"))?,
        "alpha",
        &params,
    )?)?;
    let mut products = BTreeMap::new();
    for name in [SUCC, PREC] {
        let ops = labeled(&doc, name, s)?
            .into_iter()
            .enumerate()
            .map(|(l, v)| parse_product(v, &format!("{name}.{l}"), dim, &params))
            .collect::<Result<Vec<_>>>()?;
        products.insert(name, ops);
    }
    let f = FamilyAlgebra::new(
        sg,
        products.remove(SUCC).expect("parsed"),
        products.remove(PREC).expect("parsed"),
        alpha,
    )
    .map_err(|e| Error::parse("$", e.to_string()))?;
    Ok(FamilyDocument::Rhizaform(f))
}

/// Canonical text form of a rhizaform family; `parse_family` reads it back.
pub fn serialize_family(f: &FamilyAlgebra) -> String {
    let s = f.semigroup().size();
    let mut obj = Map::new();
    obj.insert("kind".into(), json!("rhizaform"));
    obj.insert("dim".into(), json!(f.dim()));
    obj.insert("alpha".into(), matrix_value(f.alpha().matrix()));
    obj.insert(
        "omega".into(),
        json!({"size": s, "table": f.semigroup().table()}),
    );
    for (name, get) in [
        (
            SUCC,
            FamilyAlgebra::succ as fn(&FamilyAlgebra, usize) -> &BilinearOp,
        ),
        (PREC, FamilyAlgebra::prec),
    ] {
        let section: Map<String, Value> = (0..s)
            .filter(|&l| !get(f, l).is_zero())
            .map(|l| (l.to_string(), product_value(get(f, l))))
            .collect();
        obj.insert(name.into(), Value::Object(section));
    }
    document_text(&Value::Object(obj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmodel::sum_product;
    use crate::axioms::{check_hom_anti_associative, check_rhizaform};
    use crate::operators::{check_rota_baxter, induced_rhizaform_from_rb};

    fn d2_a1() -> HomAlgebra {
        let succ = BilinearOp::from_entries(2, [(1, 1, 0, int(1))]);
        let alpha = LinearMap::from_images(&[vec![int(1), int(0)], vec![int(1), int(1)]]).unwrap();
        HomAlgebra::rhizaform(succ.clone(), succ, alpha).unwrap()
    }

    fn e1e1_e2() -> HomAlgebra {
        HomAlgebra::mono(
            BilinearOp::from_entries(2, [(0, 0, 1, int(2))]),
            LinearMap::identity(2),
        )
        .unwrap()
    }

    #[test]
    fn semigroups() {
        assert!(check_semigroup(&Semigroup::trivial()).passed());
        assert!(check_semigroup(&Semigroup::cyclic(2)).passed());
        // 0*0 = 1, everything else 0: (0*0)*1 = 0 but 0*(0*1) = 1
        let bad = Semigroup::new(vec![vec![1, 0], vec![0, 0]]).unwrap();
        let r = check_semigroup(&bad);
        assert!(!r.passed());
        assert!(r.violations().iter().any(|v| v.labels == [0, 0, 1]));
    }

    #[test]
    fn trivial_family_reduces_to_plain_check() {
        let a = d2_a1();
        let f = FamilyAlgebra::from_algebra(&a).unwrap();
        assert!(check_rhizaform_family(&f).passed());
        assert_eq!(
            check_rhizaform(&a).unwrap().passed(),
            check_rhizaform_family(&f).passed()
        );

        let assoc = associated_family(&f);
        assert_eq!(assoc[0][0], sum_product(&a).unwrap());
        let plain = check_hom_anti_associative(&assoc[0][0], a.alpha()).unwrap();
        let fam = check_anti_associative_family(f.semigroup(), &assoc, a.alpha()).unwrap();
        assert_eq!(plain.passed(), fam.passed());
    }

    #[test]
    fn zero_family_passes() {
        let z = BilinearOp::zero(2);
        let f = FamilyAlgebra::new(
            Semigroup::cyclic(2),
            vec![z.clone(), z.clone()],
            vec![z.clone(), z],
            LinearMap::identity(2),
        )
        .unwrap();
        assert!(check_rhizaform_family(&f).passed());
        assert!(associated_family(&f)
            .iter()
            .flatten()
            .all(BilinearOp::is_zero));
    }

    #[test]
    fn constant_family_has_constant_associated_products() {
        let a = d2_a1();
        let f = FamilyAlgebra::new(
            Semigroup::cyclic(2),
            vec![a.succ().unwrap().clone(); 2],
            vec![a.prec().unwrap().clone(); 2],
            a.alpha().clone(),
        )
        .unwrap();
        let assoc = associated_family(&f);
        assert!(assoc.iter().flatten().all(|op| op == &assoc[0][0]));
    }

    #[test]
    fn rb_family_reductions() {
        let a = e1e1_e2();
        let r = LinearOperator::new(Matrix::from_ints(&[&[0, 0], &[1, 0]]));
        let single = RBFamily::new(Semigroup::trivial(), vec![r.clone()]).unwrap();
        assert_eq!(
            check_rb_family(&single, &a).unwrap().passed(),
            check_rota_baxter(&r, &a).unwrap().passed()
        );
        let fam = induced_family_rhizaform(&single, &a, true).unwrap();
        let plain = induced_rhizaform_from_rb(&r, &a, true).unwrap();
        assert_eq!(fam.succ(0), plain.succ().unwrap());
        assert_eq!(fam.prec(0), plain.prec().unwrap());

        let bad = RBFamily::new(Semigroup::trivial(), vec![LinearOperator::identity(2)]).unwrap();
        assert!(!check_rb_family(&bad, &a).unwrap().passed());
        assert_eq!(
            induced_family_rhizaform(&bad, &a, true),
            Err(Error::NotRotaBaxter)
        );
    }

    #[test]
    fn z2_family_and_collapse() {
        let a = e1e1_e2();
        // R_0 = 0, R_1: e1 -> e2: every R_λ(x) * R_ω(y) and R_λω(...) vanish
        let rf = RBFamily::new(
            Semigroup::cyclic(2),
            vec![
                LinearOperator::zero(2, 2),
                LinearOperator::new(Matrix::from_ints(&[&[0, 0], &[1, 0]])),
            ],
        )
        .unwrap();
        assert!(check_rb_family(&rf, &a).unwrap().passed());
        let induced = induced_family_rhizaform(&rf, &a, true).unwrap();
        assert!(check_rhizaform_family(&induced).passed());
        let (big, r) = tensor_collapse(&a, &rf).unwrap();
        assert_eq!(big.dim(), 4);
        // (e1 ⊗ 1)(e1 ⊗ 1) = 2 e2 ⊗ 0, index 1*2 + 0
        assert_eq!(big.mul().unwrap().get(1, 1, 2), &int(2));
        assert!(check_rota_baxter(&r, &big).unwrap().passed());
        let zero =
            RBFamily::new(Semigroup::cyclic(2), vec![LinearOperator::zero(2, 2); 2]).unwrap();
        let (_, rz) = tensor_collapse(&a, &zero).unwrap();
        assert!(rz.matrix().is_zero());
    }

    #[test]
    fn trivial_collapse_is_a_copy() {
        let a = e1e1_e2();
        let r = LinearOperator::new(Matrix::from_ints(&[&[0, 0], &[1, 0]]));
        let rf = RBFamily::new(Semigroup::trivial(), vec![r.clone()]).unwrap();
        let (big, rb) = tensor_collapse(&a, &rf).unwrap();
        assert_eq!(big, a);
        assert_eq!(rb, r);
    }

    #[test]
    fn parses_family_files() {
        let text = r#"{
            "kind": "rhizaform", "dim": 2, "alpha": [[1, 0], [0, 1]],
            "omega": {"size": 2, "table": [[0, 1], [1, 0]]},
            "succ": {"0": [[1, 1, 2, 1]]},
            "prec": {"1": [[1, 1, 2, "eta"]]},
            "params": {"eta": "1/2"}
        }"#;
        let FamilyDocument::Rhizaform(f) = parse_family(text, &BTreeMap::new()).unwrap() else {
            panic!("expected a rhizaform family");
        };
        assert_eq!(f.succ(0).get(0, 0, 1), &int(1));
        assert!(f.succ(1).is_zero() && f.prec(0).is_zero());
        assert_eq!(f.prec(1).get(0, 0, 1), &crate::exactlin::frac(1, 2));

        let rb = r#"{
            "kind": "mono", "dim": 2, "alpha": [[1, 0], [0, 1]], "mul": [[1, 1, 2, 2]],
            "omega": {"size": 1, "table": [[0]]},
            "R": {"0": [[0, 0], [1, 0]]}
        }"#;
        let FamilyDocument::RotaBaxter { algebra, family } =
            parse_family(rb, &BTreeMap::new()).unwrap()
        else {
            panic!("expected a Rota-Baxter family");
        };
        assert_eq!(algebra, e1e1_e2());
        assert!(check_rb_family(&family, &algebra).unwrap().passed());

        let bad = r#"{"kind": "rhizaform", "dim": 1, "alpha": [[1]], "omega": {"size": 1, "table": [[0]]}, "succ": {"3": []}}"#;
        assert!(matches!(
            parse_family(bad, &BTreeMap::new()),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn family_round_trip() {
        let succ0 = BilinearOp::from_entries(2, [(1, 1, 0, int(1))]);
        let prec1 = BilinearOp::from_entries(2, [(0, 1, 1, int(-2))]);
        let f = FamilyAlgebra::new(
            Semigroup::cyclic(2),
            vec![succ0, BilinearOp::zero(2)],
            vec![BilinearOp::zero(2), prec1],
            LinearMap::identity(2),
        )
        .unwrap();
        let text = serialize_family(&f);
        assert_eq!(
            parse_family(&text, &BTreeMap::new()).unwrap(),
            FamilyDocument::Rhizaform(f)
        );
    }
}

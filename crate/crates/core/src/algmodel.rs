//! Structure-constant model of finite-dimensional Hom-algebras.
//!
//! Basis vectors are 0-based in memory and 1-based in files, so `e_1` in a
//! file is index 0 here.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactlin::{
    add_scaled, basis_vector, format_rational, is_zero_vector, parse_rational, zero_vector, Matrix,
    Rational, Vector,
};

/// A bilinear product given by `e_i . e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BilinearOp {
    dim: usize,
    coeffs: Vec<Rational>,
}

impl BilinearOp {
    pub fn zero(dim: usize) -> Self {
        BilinearOp {
            dim,
            coeffs: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Builds a product from `(i, j, k, c)` entries, 0-based.
    pub fn from_entries<I>(dim: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, usize, Rational)>,
    {
        let mut op = BilinearOp::zero(dim);
        for (i, j, k, c) in entries {
            op.coeffs[(i * dim + j) * dim + k] += c;
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.coeffs[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        self.coeffs[(i * self.dim + j) * self.dim + k] = value;
    }

    /// Coordinates of `e_i . e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.coeffs[start..start + self.dim]
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coeffs)
    }

    /// Nonzero structure constants in `(i, j, k)` lexicographic order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    /// Bilinear extension of the basis products.
    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::dims(format!(
                "product of dimension {} applied to vectors of length {} and {}",
                self.dim,
                x.len(),
                y.len()
            )));
        }
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                add_scaled(&mut out, &(xi * yj), self.basis_product(i, j));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &BilinearOp) -> Result<BilinearOp> {
        self.check_dim(other)?;
        Ok(BilinearOp {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &BilinearOp) -> Result<BilinearOp> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> BilinearOp {
        BilinearOp {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// The opposite product `x .op y = y . x`.
    pub fn opposite(&self) -> BilinearOp {
        let n = self.dim;
        let mut out = BilinearOp::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.set(i, j, k, self.get(j, i, k).clone());
                }
            }
        }
        out
    }

    /// Matrix of `y -> e_i . y`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                m.set(k, j, self.get(i, j, k).clone());
            }
        }
        m
    }

    /// Matrix of `y -> y . e_i`.
    pub fn right_mult(&self, i: usize) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                m.set(k, j, self.get(j, i, k).clone());
            }
        }
        m
    }

    fn check_dim(&self, other: &BilinearOp) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::dims(format!(
                "products of dimension {} and {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }
}

impl std::fmt::Debug for BilinearOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let entries: Vec<String> = self
            .nonzero_entries()
            .into_iter()
            .map(|(i, j, k, c)| format!("e{}e{}->{}e{}", i + 1, j + 1, format_rational(&c), k + 1))
            .collect();
        write!(f, "BilinearOp[{}]{{{}}}", self.dim, entries.join(", "))
    }
}

/// A linear endomorphism `alpha(e_i) = sum_j matrix[j][i] e_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::dims(format!(
                "structure map must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(LinearMap { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap {
            matrix: Matrix::identity(dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        LinearMap {
            matrix: Matrix::zeros(dim, dim),
        }
    }

    /// Builds the map from the images of the basis vectors.
    pub fn from_images(images: &[Vector]) -> Result<Self> {
        LinearMap::new(Matrix::from_columns(images)?)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vector> {
        self.matrix.mul_vec(v)
    }

    /// Coordinates of the image of `e_i`.
    pub fn image(&self, i: usize) -> Vector {
        self.matrix.column(i)
    }

    /// `self o other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        LinearMap::new(self.matrix.mul(&other.matrix)?)
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap {
            matrix: self.matrix.transpose(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AlgebraKind {
    /// Two products `succ` and `prec`.
    Rhizaform,
    /// A single product `mul`.
    Mono,
}

impl AlgebraKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraKind::Rhizaform => "rhizaform",
            AlgebraKind::Mono => "mono",
        }
    }
}

pub const SUCC: &str = "succ";
pub const PREC: &str = "prec";
pub const MUL: &str = "mul";

/// A finite-dimensional Hom-algebra with its named products.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomAlgebra {
    dim: usize,
    kind: AlgebraKind,
    products: BTreeMap<String, BilinearOp>,
    alpha: LinearMap,
    beta: Option<LinearMap>,
    params: BTreeMap<String, Rational>,
}

impl HomAlgebra {
    pub fn rhizaform(succ: BilinearOp, prec: BilinearOp, alpha: LinearMap) -> Result<Self> {
        let dim = alpha.dim();
        if succ.dim() != dim || prec.dim() != dim {
            return Err(Error::dims(format!(
                "succ/prec/alpha dimensions {}/{}/{}",
                succ.dim(),
                prec.dim(),
                dim
            )));
        }
        let products = BTreeMap::from([(SUCC.to_string(), succ), (PREC.to_string(), prec)]);
        Ok(HomAlgebra {
            dim,
            kind: AlgebraKind::Rhizaform,
            products,
            alpha,
            beta: None,
            params: BTreeMap::new(),
        })
    }

    pub fn mono(mul: BilinearOp, alpha: LinearMap) -> Result<Self> {
        let dim = alpha.dim();
        if mul.dim() != dim {
            return Err(Error::dims(format!(
                "mul/alpha dimensions {}/{}",
                mul.dim(),
                dim
            )));
        }
        Ok(HomAlgebra {
            dim,
            kind: AlgebraKind::Mono,
            products: BTreeMap::from([(MUL.to_string(), mul)]),
            alpha,
            beta: None,
            params: BTreeMap::new(),
        })
    }

    pub fn with_beta(mut self, beta: LinearMap) -> Result<Self> {
        if beta.dim() != self.dim {
            return Err(Error::dims("beta must act on the algebra"));
        }
        self.beta = Some(beta);
        Ok(self)
    }

    pub fn with_params(mut self, params: BTreeMap<String, Rational>) -> Self {
        self.params = params;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn alpha(&self) -> &LinearMap {
        &self.alpha
    }

    pub fn beta(&self) -> Option<&LinearMap> {
        self.beta.as_ref()
    }

    pub fn params(&self) -> &BTreeMap<String, Rational> {
        &self.params
    }

    pub fn products(&self) -> &BTreeMap<String, BilinearOp> {
        &self.products
    }

    pub fn product(&self, name: &str) -> Result<&BilinearOp> {
        self.products
            .get(name)
            .ok_or_else(|| Error::MissingProduct(name.to_string()))
    }

    pub fn succ(&self) -> Result<&BilinearOp> {
        self.product(SUCC)
    }

    pub fn prec(&self) -> Result<&BilinearOp> {
        self.product(PREC)
    }

    pub fn mul(&self) -> Result<&BilinearOp> {
        self.product(MUL)
    }

    /// Same algebra with a different structure map.
    pub fn with_alpha(&self, alpha: LinearMap) -> Result<Self> {
        if alpha.dim() != self.dim {
            return Err(Error::dims("replacement alpha has the wrong dimension"));
        }
        let mut out = self.clone();
        out.alpha = alpha;
        Ok(out)
    }
}

/// `x * y = x succ y + x prec y`.
pub fn sum_product(a: &HomAlgebra) -> Result<BilinearOp> {
    a.succ()?.add(a.prec()?)
}

/// The associated mono-product algebra `(A, *, alpha)`.
pub fn sum_algebra(a: &HomAlgebra) -> Result<HomAlgebra> {
    HomAlgebra::mono(sum_product(a)?, a.alpha().clone())
}

/// `x * y` for any algebra: the sum product of a rhizaform algebra, or `mul`.
pub fn star_product(a: &HomAlgebra) -> Result<BilinearOp> {
    match a.kind() {
        AlgebraKind::Rhizaform => sum_product(a),
        AlgebraKind::Mono => a.mul().cloned(),
    }
}

pub fn eval(op: &BilinearOp, x: &[Rational], y: &[Rational]) -> Result<Vector> {
    op.eval(x, y)
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// Parses an algebra file using only the bindings in its own `params`.
pub fn parse_algebra(text: &str) -> Result<HomAlgebra> {
    parse_algebra_with(text, &BTreeMap::new())
}

/// Parses an algebra file; `bindings` override the file's own `params`.
pub fn parse_algebra_with(text: &str, bindings: &BTreeMap<String, Rational>) -> Result<HomAlgebra> {
    let doc = parse_document(text)?;
    algebra_from_value(&doc, bindings)
}

pub(crate) fn parse_document(text: &str) -> Result<Value> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    if !doc.is_object() {
        return Err(Error::parse("$", "expected an object"));
    }
    Ok(doc)
}

/// Parameter bindings from a document's `params` merged with `overrides`.
pub(crate) fn document_params(
    doc: &Value,
    overrides: &BTreeMap<String, Rational>,
) -> Result<BTreeMap<String, Rational>> {
    let mut params = BTreeMap::new();
    if let Some(p) = doc.get("params") {
        let obj = p
            .as_object()
            .ok_or_else(|| Error::parse("params", "expected an object"))?;
        for (name, v) in obj {
            let pos = format!("params.{name}");
            let r = match v {
                Value::String(s) => parse_rational(s)
                    .map_err(|_| Error::parse(&pos, format!("`{s}` is not a rational literal")))?,
                Value::Number(_) => parse_number(v, &pos)?,
                _ => return Err(Error::parse(pos, "expected a rational")),
            };
            params.insert(name.clone(), r);
        }
    }
    for (k, v) in overrides {
        params.insert(k.clone(), v.clone());
    }
    Ok(params)
}

pub(crate) fn algebra_from_value(
    doc: &Value,
    bindings: &BTreeMap<String, Rational>,
) -> Result<HomAlgebra> {
    let params = document_params(doc, bindings)?;
    let dim = doc
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("dim", "expected a non-negative integer"))?
        as usize;
    let kind = match doc.get("kind").and_then(Value::as_str) {
        Some("rhizaform") => AlgebraKind::Rhizaform,
        Some("mono") => AlgebraKind::Mono,
        Some(other) => return Err(Error::parse("kind", format!("unknown kind `{other}`"))),
        None => return Err(Error::parse("kind", "missing `kind`")),
    };
    let alpha = match doc.get("alpha") {
        Some(v) => LinearMap::new(parse_matrix(v, "alpha", &params)?)?,
        None => return Err(Error::parse("alpha", "missing `alpha`")),
    };
    if alpha.dim() != dim {
        return Err(Error::parse(
            "alpha",
            format!("expected a {dim}x{dim} matrix"),
        ));
    }
    let mut algebra = match kind {
        AlgebraKind::Rhizaform => {
            if doc.get(MUL).is_some() {
                return Err(Error::parse(
                    MUL,
                    "`mul` is not allowed in a rhizaform algebra",
                ));
            }
            let succ = parse_product(doc.get(SUCC), SUCC, dim, &params)?;
            let prec = parse_product(doc.get(PREC), PREC, dim, &params)?;
            HomAlgebra::rhizaform(succ, prec, alpha)?
        }
        AlgebraKind::Mono => {
            for name in [SUCC, PREC] {
                if doc.get(name).is_some() {
                    return Err(Error::parse(name, "not allowed in a mono algebra"));
                }
            }
            let mul = parse_product(doc.get(MUL), MUL, dim, &params)?;
            HomAlgebra::mono(mul, alpha)?
        }
    };
    if let Some(b) = doc.get("beta") {
        let beta = LinearMap::new(parse_matrix(b, "beta", &params)?)?;
        if beta.dim() == dim {
            algebra = algebra.with_beta(beta)?;
        }
    }
    Ok(algebra.with_params(params))
}

fn parse_number(v: &Value, pos: &str) -> Result<Rational> {
    match v.as_i64() {
        Some(n) => Ok(crate::exactlin::int(n)),
        None => Err(Error::parse(pos, "only integer JSON numbers are accepted")),
    }
}

/// A coefficient: integer, `"p/q"`, a bound symbol, `"-symbol"` or `"p/q*symbol"`.
pub(crate) fn parse_coefficient(
    v: &Value,
    pos: &str,
    params: &BTreeMap<String, Rational>,
) -> Result<Rational> {
    match v {
        Value::Number(_) => parse_number(v, pos),
        Value::String(s) => {
            if let Ok(r) = parse_rational(s) {
                return Ok(r);
            }
            let s = s.trim();
            let (scale, sym) = match s.rsplit_once('*') {
                Some((c, sym)) => (
                    parse_rational(c)
                        .map_err(|_| Error::parse(pos, format!("bad coefficient `{s}`")))?,
                    sym.trim(),
                ),
                None => match s.strip_prefix('-') {
                    Some(rest) => (-Rational::one(), rest.trim()),
                    None => (Rational::one(), s),
                },
            };
            if !is_identifier(sym) {
                return Err(Error::parse(pos, format!("bad coefficient `{s}`")));
            }
            let value = params
                .get(sym)
                .ok_or_else(|| Error::UnboundParameter(sym.to_string()))?;
            Ok(scale * value)
        }
        _ => Err(Error::parse(pos, "expected a rational")),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Parses a matrix file: either an array of rows or `{"matrix": rows}`,
/// with optional `params`.
pub fn parse_matrix_text(text: &str, bindings: &BTreeMap<String, Rational>) -> Result<Matrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    match &v {
        Value::Array(_) => parse_matrix(&v, "matrix", bindings),
        Value::Object(_) => {
            let params = document_params(&v, bindings)?;
            let m = v
                .get("matrix")
                .ok_or_else(|| Error::parse("matrix", "missing `matrix`"))?;
            parse_matrix(m, "matrix", &params)
        }
        _ => Err(Error::parse("$", "expected a matrix")),
    }
}

pub(crate) fn parse_matrix(
    v: &Value,
    pos: &str,
    params: &BTreeMap<String, Rational>,
) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::parse(pos, "expected an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row_pos = format!("{pos}[{i}]");
        let cells = row
            .as_array()
            .ok_or_else(|| Error::parse(&row_pos, "expected an array"))?;
        let parsed = cells
            .iter()
            .enumerate()
            .map(|(j, c)| parse_coefficient(c, &format!("{row_pos}[{j}]"), params))
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    Matrix::from_rows(out).map_err(|_| Error::parse(pos, "rows have different lengths"))
}

pub(crate) fn parse_product(
    v: Option<&Value>,
    pos: &str,
    dim: usize,
    params: &BTreeMap<String, Rational>,
) -> Result<BilinearOp> {
    let mut op = BilinearOp::zero(dim);
    let Some(v) = v else {
        return Ok(op);
    };
    let entries = v
        .as_array()
        .ok_or_else(|| Error::parse(pos, "expected an array of [i, j, k, c] entries"))?;
    let mut seen = std::collections::BTreeSet::new();
    for (n, e) in entries.iter().enumerate() {
        let epos = format!("{pos}[{n}]");
        let parts = e
            .as_array()
            .filter(|p| p.len() == 4)
            .ok_or_else(|| Error::parse(&epos, "expected [i, j, k, c]"))?;
        let mut idx = [0usize; 3];
        for (slot, p) in idx.iter_mut().zip(parts) {
            let i = p
                .as_u64()
                .filter(|&i| i >= 1 && (i as usize) <= dim)
                .ok_or_else(|| Error::parse(&epos, format!("basis index must lie in 1..={dim}")))?;
            *slot = i as usize - 1;
        }
        if !seen.insert(idx) {
            return Err(Error::parse(&epos, "duplicate structure constant"));
        }
        let c = parse_coefficient(&parts[3], &epos, params)?;
        op.set(idx[0], idx[1], idx[2], c);
    }
    Ok(op)
}

pub(crate) fn rational_value(r: &Rational) -> Value {
    if r.is_integer() {
        if let Ok(n) = i64::try_from(r.numer()) {
            return json!(n);
        }
    }
    Value::String(format_rational(r))
}

pub(crate) fn matrix_value(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(rational_value).collect()))
            .collect(),
    )
}

pub(crate) fn product_value(op: &BilinearOp) -> Value {
    Value::Array(
        op.nonzero_entries()
            .into_iter()
            .map(|(i, j, k, c)| json!([i + 1, j + 1, k + 1, rational_value(&c)]))
            .collect(),
    )
}

pub(crate) fn algebra_value(a: &HomAlgebra) -> Value {
    let mut obj = Map::new();
    obj.insert("dim".into(), json!(a.dim()));
    obj.insert("kind".into(), json!(a.kind().as_str()));
    obj.insert("alpha".into(), matrix_value(a.alpha().matrix()));
    if let Some(b) = a.beta() {
        obj.insert("beta".into(), matrix_value(b.matrix()));
    }
    for (name, op) in a.products() {
        obj.insert(name.clone(), product_value(op));
    }
    if !a.params().is_empty() {
        let params: Map<String, Value> = a
            .params()
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(format_rational(v))))
            .collect();
        obj.insert("params".into(), Value::Object(params));
    }
    Value::Object(obj)
}

/// Canonical text form; `parse_algebra(serialize_algebra(a)) == a`.
pub fn serialize_algebra(a: &HomAlgebra) -> String {
    document_text(&algebra_value(a))
}

/// Object-per-line layout: top-level keys indented, each row of a matrix or
/// product table on its own line.
pub(crate) fn document_text(doc: &Value) -> String {
    fn inline(v: &Value) -> String {
        match v {
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(inline).collect();
                format!("[{}]", parts.join(", "))
            }
            _ => serde_json::to_string(v).expect("json values serialize"),
        }
    }
    let Value::Object(obj) = doc else {
        return inline(doc) + "\n";
    };
    let render = |v: &Value, indent: &str| -> String {
        match v {
            Value::Array(rows) if !rows.is_empty() && rows.iter().all(|r| r.is_array()) => {
                let body: Vec<String> = rows
                    .iter()
                    .map(|r| format!("{indent}  {}", inline(r)))
                    .collect();
                format!("[\n{}\n{indent}]", body.join(",\n"))
            }
            _ => inline(v),
        }
    };
    let fields: Vec<String> = obj
        .iter()
        .map(|(k, v)| {
            let text = match v {
                Value::Object(inner) if !inner.is_empty() => {
                    let body: Vec<String> = inner
                        .iter()
                        .map(|(ik, iv)| {
                            format!("    {}: {}", inline(&json!(ik)), render(iv, "    "))
                        })
                        .collect();
                    format!("{{\n{}\n  }}", body.join(",\n"))
                }
                _ => render(v, "  "),
            };
            format!("  {}: {text}", inline(&json!(k)))
        })
        .collect();
    format!("{{\n{}\n}}\n", fields.join(",\n"))
}

/// `e_i` as a vector of the algebra.
pub fn basis(a: &HomAlgebra, i: usize) -> Vector {
    basis_vector(a.dim(), i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, int};

    fn a1() -> HomAlgebra {
        let succ = BilinearOp::from_entries(2, [(1, 1, 0, int(1))]);
        let prec = BilinearOp::from_entries(2, [(1, 1, 0, int(1))]);
        let alpha = LinearMap::from_images(&[vec![int(1), int(0)], vec![int(1), int(1)]]).unwrap();
        HomAlgebra::rhizaform(succ, prec, alpha).unwrap()
    }

    #[test]
    fn eval_basis_and_linear_combination() {
        let a = a1();
        let succ = a.succ().unwrap();
        let e2 = basis(&a, 1);
        assert_eq!(succ.eval(&e2, &e2).unwrap(), vec![int(1), int(0)]);
        let e1_plus_e2 = vec![int(1), int(1)];
        assert_eq!(succ.eval(&e1_plus_e2, &e2).unwrap(), vec![int(1), int(0)]);
        assert_eq!(succ.eval(&zero_vector(2), &e2).unwrap(), zero_vector(2));
        assert!(matches!(
            succ.eval(&[int(1)], &e2),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn sum_product_examples() {
        let s = sum_product(&a1()).unwrap();
        assert_eq!(s.nonzero_entries(), vec![(1, 1, 0, int(2))]);

        let succ = BilinearOp::from_entries(2, [(0, 1, 1, int(3)), (1, 0, 0, frac(1, 2))]);
        let neg = succ.scale(&int(-1));
        let cancel = HomAlgebra::rhizaform(succ, neg, LinearMap::identity(2)).unwrap();
        assert!(sum_product(&cancel).unwrap().is_zero());

        let mono = HomAlgebra::mono(BilinearOp::zero(2), LinearMap::identity(2)).unwrap();
        assert_eq!(
            sum_product(&mono),
            Err(Error::MissingProduct("succ".into()))
        );
    }

    #[test]
    fn parse_with_parameter_and_round_trip() {
        let text = r#"{"dim": 3, "kind": "rhizaform",
            "alpha": [[0,1,0],[0,0,0],[0,0,1]],
            "succ": [[2,2,3,"eta"]], "prec": [[1,2,3,"-eta"], [2,2,2,1]],
            "params": {"eta": "1/4"}}"#;
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.succ().unwrap().get(1, 1, 2), &frac(1, 4));
        assert_eq!(a.prec().unwrap().get(0, 1, 2), &frac(-1, 4));
        assert_eq!(a.alpha().image(1), vec![int(1), int(0), int(0)]);
        let back = parse_algebra(&serialize_algebra(&a)).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn empty_products_are_zero() {
        let a =
            parse_algebra(r#"{"dim": 2, "kind": "rhizaform", "alpha": [[1,0],[0,1]]}"#).unwrap();
        assert!(a.succ().unwrap().is_zero());
        assert!(a.prec().unwrap().is_zero());
    }

    #[test]
    fn parse_errors() {
        let unbound = r#"{"dim": 1, "kind": "mono", "alpha": [[1]], "mul": [[1,1,1,"eta"]]}"#;
        assert_eq!(
            parse_algebra(unbound),
            Err(Error::UnboundParameter("eta".into()))
        );
        let mut b = BTreeMap::new();
        b.insert("eta".to_string(), int(2));
        assert_eq!(
            parse_algebra_with(unbound, &b)
                .unwrap()
                .mul()
                .unwrap()
                .get(0, 0, 0),
            &int(2)
        );

        for bad in [
            "not json",
            r#"{"dim": 1, "kind": "mono", "alpha": [[1]], "mul": [[1,1,2,"1"]]}"#,
            r#"{"dim": 1, "kind": "mono", "alpha": [[1]], "mul": [[1,1,1,"0.5"]]}"#,
            r#"{"dim": 1, "kind": "mono", "alpha": [[1]], "mul": [[1,1,1,1],[1,1,1,2]]}"#,
            r#"{"dim": 2, "kind": "mono", "alpha": [[1]]}"#,
            r#"{"dim": 1, "kind": "other", "alpha": [[1]]}"#,
            r#"{"dim": 1, "kind": "mono", "alpha": [[1]], "succ": []}"#,
        ] {
            assert!(
                matches!(parse_algebra(bad), Err(Error::Parse { .. })),
                "accepted {bad}"
            );
        }
    }
}

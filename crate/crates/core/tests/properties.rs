//! Invariants checked on generated structure tensors.

use proptest::prelude::*;

use rhiza::algmodel::{parse_algebra, serialize_algebra};
use rhiza::cocycles::{check_scalar_cocycle, scalar_cocycle_space, vector_cocycle_space};
use rhiza::exactlin::{int, vec_add, Vector};
use rhiza::family::{check_semigroup, Semigroup};
use rhiza::nilpotency::{full_series, left_series, right_series};
use rhiza::operators::{
    check_o_operator, check_rota_baxter, dual_bimodule, regular_bimodule, Bimodule, LinearOperator,
};
use rhiza::oracle::{audit_rhizaform, vector_cocycle};
use rhiza::{BilinearOp, HomAlgebra, LinearMap, Matrix};

fn unit() -> impl Strategy<Value = i64> {
    prop_oneof![3 => Just(0i64), 1 => Just(1i64), 1 => Just(-1i64)]
}

fn op(n: usize) -> impl Strategy<Value = BilinearOp> {
    prop::collection::vec(unit(), n * n * n).prop_map(move |c| {
        let mut op = BilinearOp::zero(n);
        for (idx, v) in c.into_iter().enumerate() {
            op.set(idx / (n * n), idx / n % n, idx % n, int(v));
        }
        op
    })
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(unit(), n * n).prop_map(move |c| {
        let rows = c
            .chunks(n)
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        Matrix::from_rows(rows).expect("square")
    })
}

fn alpha(n: usize) -> impl Strategy<Value = LinearMap> {
    prop_oneof![Just(Matrix::identity(n)), matrix(n)]
        .prop_map(|m| LinearMap::new(m).expect("square"))
}

fn rhizaform(n: usize) -> impl Strategy<Value = HomAlgebra> {
    (op(n), op(n), alpha(n))
        .prop_map(|(s, p, a)| HomAlgebra::rhizaform(s, p, a).expect("same dims"))
}

fn any_rhizaform() -> impl Strategy<Value = HomAlgebra> {
    prop_oneof![rhizaform(2), rhizaform(3)]
}

fn mono(n: usize) -> impl Strategy<Value = HomAlgebra> {
    (op(n), alpha(n)).prop_map(|(m, a)| HomAlgebra::mono(m, a).expect("same dims"))
}

fn vector(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-3i64..=3, n).prop_map(|v| v.into_iter().map(int).collect())
}

/// Relabels the basis by `perm`: `e_i` becomes `e_perm[i]`.
fn permuted(a: &HomAlgebra, perm: &[usize]) -> HomAlgebra {
    let n = a.dim();
    let relabel = |op: &BilinearOp| {
        let mut out = BilinearOp::zero(n);
        for (i, j, k, c) in op.nonzero_entries() {
            out.set(perm[i], perm[j], perm[k], c);
        }
        out
    };
    let mut al = Matrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            al.set(perm[k], perm[i], a.alpha().matrix().get(k, i).clone());
        }
    }
    HomAlgebra::rhizaform(
        relabel(a.succ().unwrap()),
        relabel(a.prec().unwrap()),
        LinearMap::new(al).unwrap(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_is_bilinear(o in op(3), x in vector(3), y in vector(3), z in vector(3), s in -3i64..=3) {
        let s = int(s);
        let xs: Vector = x.iter().map(|c| c * &s).collect();
        let lhs = o.eval(&vec_add(&xs, &y), &z).unwrap();
        let rhs: Vector = o
            .eval(&x, &z)
            .unwrap()
            .iter()
            .zip(o.eval(&y, &z).unwrap())
            .map(|(a, b)| a * &s + b)
            .collect();
        prop_assert_eq!(lhs, rhs);
        let right = o.eval(&z, &vec_add(&x, &y)).unwrap();
        prop_assert_eq!(right, vec_add(&o.eval(&z, &x).unwrap(), &o.eval(&z, &y).unwrap()));
    }

    #[test]
    fn serialization_round_trips(a in any_rhizaform()) {
        let text = serialize_algebra(&a);
        let back = parse_algebra(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(serialize_algebra(&back), text);
    }

    #[test]
    fn mono_serialization_round_trips(a in mono(3)) {
        prop_assert_eq!(parse_algebra(&serialize_algebra(&a)).unwrap(), a);
    }

    #[test]
    fn checkers_agree_with_oracle(a in any_rhizaform()) {
        for c in audit_rhizaform(&a).unwrap() {
            prop_assert!(c.agrees(), "{:?}", c);
        }
    }

    #[test]
    fn solution_spaces_recheck_to_zero(a in rhizaform(2)) {
        for b in scalar_cocycle_space(&a).unwrap() {
            prop_assert!(check_scalar_cocycle(&a, &b).unwrap().passed());
        }
        for w in vector_cocycle_space(&a).unwrap() {
            prop_assert!(vector_cocycle(&a, w.coeffs()).unwrap().is_empty());
        }
    }

    #[test]
    fn cocycle_dimension_ignores_basis_order(a in rhizaform(3), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let b = permuted(&a, &perm);
        prop_assert_eq!(
            vector_cocycle_space(&a).unwrap().len(),
            vector_cocycle_space(&b).unwrap().len()
        );
        prop_assert_eq!(
            scalar_cocycle_space(&a).unwrap().len(),
            scalar_cocycle_space(&b).unwrap().len()
        );
    }

    #[test]
    fn dual_of_dual_is_identity(
        left in prop::collection::vec(matrix(3), 2),
        right in prop::collection::vec(matrix(3), 2),
        beta in matrix(3),
    ) {
        let m = Bimodule::new(left, right, LinearMap::new(beta).unwrap()).unwrap();
        prop_assert_eq!(dual_bimodule(&dual_bimodule(&m)), m);
    }

    #[test]
    fn rota_baxter_is_o_operator_on_regular_bimodule(a in mono(2), r in matrix(2)) {
        let r = LinearOperator::new(r);
        let m = regular_bimodule(&a).unwrap();
        prop_assert_eq!(
            check_rota_baxter(&r, &a).unwrap().passed(),
            check_o_operator(&r, &a, &m).unwrap().passed()
        );
    }

    #[test]
    fn series_are_descending(a in any_rhizaform()) {
        for s in [full_series(&a).unwrap(), left_series(&a).unwrap(), right_series(&a).unwrap()] {
            for w in s.terms.windows(2) {
                prop_assert!(w[0].contains(&w[1]));
            }
            prop_assert_eq!(s.nilpotent, s.index.is_some());
        }
    }

    #[test]
    fn semigroup_check_matches_associativity(size in 1usize..=3, cells in prop::collection::vec(0usize..3, 9)) {
        let table: Vec<Vec<usize>> = (0..size)
            .map(|a| (0..size).map(|b| cells[a * 3 + b] % size).collect())
            .collect();
        let sg = Semigroup::new(table.clone()).unwrap();
        let assoc = (0..size).all(|a| {
            (0..size).all(|b| (0..size).all(|c| table[table[a][b]][c] == table[a][table[b][c]]))
        });
        prop_assert_eq!(check_semigroup(&sg).passed(), assoc);
    }

    #[test]
    fn cyclic_semigroups_are_associative(s in 1usize..6) {
        prop_assert!(check_semigroup(&Semigroup::cyclic(s)).passed());
    }
}

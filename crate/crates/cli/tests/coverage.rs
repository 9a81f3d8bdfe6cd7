//! Every library operation is reachable from some subcommand.
//!
//! Each public top-level function of the core modules must either be called
//! by the binary or be listed in `INDIRECT` with the operation that reaches
//! it. Every `--kind`, `--from` and `--action` value must be exercised by an
//! invocation below that runs to completion.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;

use common::rhiza;

const MODULES: &[&str] = &[
    "algmodel",
    "axioms",
    "operators",
    "cocycles",
    "nilpotency",
    "family",
    "catalog",
    "oracle",
];

/// (library function, the called function or subcommand that reaches it)
const INDIRECT: &[(&str, &str)] = &[
    ("sum_product", "sum_algebra, as_mono"),
    (
        "star_product",
        "scalar_cocycle_space, check_alpha_derivation",
    ),
    ("eval", "every checker"),
    ("parse_algebra", "parse_algebra_with"),
    ("diamond", "right_series, left_series, full_series"),
    ("is_right_nilpotent", "right_series (nilpotency subcommand)"),
    ("is_left_nilpotent", "left_series (nilpotency subcommand)"),
    ("is_nilpotent_single", "check_onesided_nilpotency_theorem"),
    ("entry_source", "load_entry"),
    ("load_catalog_entry", "load_entry, verify_entry"),
    ("verify_entry", "verify_all"),
    ("audit_rhizaform", "verify_all"),
];

const INVOCATIONS: &[&[&str]] = &[
    &["check", "--kind=rhizaform", "--oracle", "@d2_a7.json"],
    &["check", "--kind=dendriform", "--oracle", "@d2_a7.json"],
    &[
        "check",
        "--kind=anti-associative",
        "--oracle",
        "@d2_a1.json",
    ],
    &[
        "check",
        "--kind=multiplicativity",
        "--oracle",
        "@d3_a4_eta1.json",
    ],
    &["check", "--kind=jacobi-jordan", "--oracle", "@d2_a1.json"],
    &[
        "check",
        "--kind=pre-jacobi-jordan",
        "--oracle",
        "@d2_a1.json",
    ],
    &[
        "check",
        "--kind=derivation",
        "--operator",
        "@derivation.json",
        "--product",
        "succ",
        "--oracle",
        "@d2_a7.json",
    ],
    &[
        "check",
        "--kind=inner-derivation",
        "--element",
        "1,0",
        "--convention",
        "mixed",
        "--oracle",
        "@d2_a7.json",
    ],
    &[
        "check",
        "--kind=bimodule",
        "--module",
        "rhizaform",
        "--oracle",
        "@d2_a1.json",
    ],
    &[
        "check",
        "--kind=bimodule",
        "--module",
        "dual",
        "--oracle",
        "@nil_mono.json",
    ],
    &[
        "check",
        "--kind=o-operator",
        "--operator",
        "@rb_operator.json",
        "--module",
        "regular",
        "--oracle",
        "@nil_mono.json",
    ],
    &[
        "check",
        "--kind=rota-baxter",
        "--operator",
        "@rb_operator.json",
        "--oracle",
        "@nil_mono.json",
    ],
    &[
        "check",
        "--kind=homomorphism",
        "--operator",
        "@derivation.json",
        "--target",
        "@nil_mono.json",
        "--oracle",
        "@nil_mono.json",
    ],
    &["check", "--kind=two-nilpotent", "--oracle", "@d2_a1.json"],
    &[
        "check",
        "--kind=cocycle",
        "--form",
        "@skew_form.json",
        "--oracle",
        "@nil4_mono.json",
    ],
    &[
        "check",
        "--kind=compatibility",
        "--form",
        "@skew_form.json",
        "--oracle",
        "@nil4_mono.json",
    ],
    &["cocycles", "--vector", "--oracle", "@d2_a1.json"],
    &["cocycles", "--scalar", "--oracle", "@d2_a1.json"],
    &["cocycles", "--compatible", "--oracle", "@nil4_mono.json"],
    &["nilpotency", "--oracle", "@d2_a1.json"],
    &[
        "induce",
        "--from=rota-baxter",
        "--operator",
        "@rb_operator.json",
        "@nil_mono.json",
    ],
    &[
        "induce",
        "--from=o-operator",
        "--operator",
        "@rb_operator.json",
        "--module",
        "regular",
        "@nil_mono.json",
    ],
    &[
        "induce",
        "--from=invertible-o-operator",
        "--operator",
        "@derivation.json",
        "--module",
        "regular",
        "@nil_mono.json",
    ],
    &[
        "induce",
        "--from=cocycle",
        "--form",
        "@skew_form.json",
        "@nil4_mono.json",
    ],
    &["induce", "--from=sum", "@d2_a1.json"],
    &["induce", "--from=pre-jacobi-jordan", "@d2_a1.json"],
    &["induce", "--from=bracket", "@d2_a1.json"],
    &["family", "--action=check", "--oracle", "@rb_family.json"],
    &["family", "--action=induce", "--oracle", "@rb_family.json"],
    &["family", "--action=collapse", "--oracle", "@rb_family.json"],
    &["family", "--action=check", "--oracle", "@rhiza_family.json"],
    &[
        "family",
        "--action=associated",
        "--oracle",
        "@rhiza_family.json",
    ],
    &["catalog", "list"],
    &["catalog", "show", "d2.A1"],
    &["catalog", "verify", "--id", "d2.A1"],
];

fn public_functions(module: &str) -> Vec<String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../core/src/{module}.rs"));
    let text = std::fs::read_to_string(path).unwrap();
    text.lines()
        .filter_map(|l| l.strip_prefix("pub fn "))
        .map(|l| l.split(['(', '<']).next().unwrap().to_string())
        .collect()
}

#[test]
fn every_library_function_is_reachable() {
    let main =
        std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("src/main.rs"))
            .unwrap();
    let called = |name: &str| {
        main.match_indices(name).any(|(i, _)| {
            let before = main[..i]
                .chars()
                .last()
                .map_or(true, |c| !c.is_alphanumeric() && c != '_');
            let after = main[i + name.len()..]
                .chars()
                .next()
                .map_or(true, |c| !c.is_alphanumeric() && c != '_');
            before && after
        })
    };
    let indirect: BTreeSet<&str> = INDIRECT.iter().map(|(f, _)| *f).collect();
    let mut missing = Vec::new();
    for m in MODULES {
        for f in public_functions(m) {
            if !called(&f) && !indirect.contains(f.as_str()) {
                missing.push(format!("{m}::{f}"));
            }
        }
    }
    assert!(
        missing.is_empty(),
        "not reachable from the binary: {missing:?}"
    );
    for (f, via) in INDIRECT {
        assert!(
            via.split(", ")
                .any(|v| called(v.split(' ').next().unwrap()) || v == "every checker"),
            "{f}: `{via}` is not called by the binary"
        );
    }
}

fn possible_values(help: &str, flag: &str) -> Vec<String> {
    let start = help
        .find(&format!("      {flag} <"))
        .unwrap_or_else(|| panic!("{flag} not in help"));
    let rest = &help[start..];
    let list = rest
        .split("[possible values: ")
        .nth(1)
        .and_then(|s| s.split(']').next())
        .unwrap_or_else(|| panic!("{flag} lists no values"));
    list.split(',').map(|v| v.trim().to_string()).collect()
}

#[test]
fn every_value_is_exercised() {
    for (sub, flag) in [
        ("check", "--kind"),
        ("induce", "--from"),
        ("family", "--action"),
    ] {
        let help = rhiza(&[sub, "-h"]).stdout;
        for value in possible_values(&help, flag) {
            let used = INVOCATIONS
                .iter()
                .any(|args| args[0] == sub && args.iter().any(|a| *a == format!("{flag}={value}")));
            assert!(used, "{sub} {flag}={value} has no invocation");
        }
    }
}

#[test]
fn every_invocation_runs_and_agrees_with_the_oracle() {
    for args in INVOCATIONS {
        let out = rhiza(args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    }
}

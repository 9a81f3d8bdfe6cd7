mod common;

use common::rhiza;

#[test]
fn repeated_runs_are_byte_identical() {
    let invocations: &[&[&str]] = &[
        &[
            "catalog",
            "verify",
            "--param",
            "eta=1",
            "--format=structured",
        ],
        &["cocycles", "--format=structured", "@d2_a1.json"],
        &["nilpotency", "--format=structured", "@d2_a1.json"],
        &["family", "--action=induce", "@rb_family.json"],
    ];
    for args in invocations {
        let first = rhiza(args);
        let second = rhiza(args);
        assert_eq!(first.code, 0, "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn structured_output_is_pure_json() {
    let out = rhiza(&[
        "catalog",
        "verify",
        "--dim=2",
        "--param",
        "eta=1",
        "--format=structured",
    ]);
    serde_json::from_str::<serde_json::Value>(&out.stdout).expect("stdout parses as json");
    assert!(out.stderr.is_empty());
}

#[test]
fn output_round_trips_through_the_cli() {
    let shown = rhiza(&["catalog", "show", "d2.A1"]);
    let dir = std::env::temp_dir().join(format!("rhiza-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a1.json");
    std::fs::write(&path, &shown.stdout).unwrap();
    let path = path.to_string_lossy().into_owned();
    let again = rhiza(&["induce", "--from=sum", &path]);
    assert_eq!(again.code, 0);
    assert!(again.stdout.contains("\"mul\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

//! Golden-file tests for every subcommand and the exit-code contract.
//!
//! Regenerate with `UPDATE_GOLDEN=1 cargo test -p infcube-cli`.

use std::path::{Path, PathBuf};
use std::process::Command;

const CASES: &[(&str, &[&str])] = &[
    (
        "vertex_adjacent",
        &["vertex", "adjacent", "@a0.json", "@a0_flip_1.json"],
    ),
    (
        "vertex_not_adjacent",
        &["vertex", "adjacent", "@a0.json", "@alternating.json"],
    ),
    (
        "vertex_distance",
        &["vertex", "distance", "@a0.json", "@a0_flip_2_9.json"],
    ),
    (
        "vertex_distance_infinite",
        &["vertex", "distance", "@a0.json", "@alternating.json"],
    ),
    (
        "vertex_component",
        &["vertex", "component", "@a0.json", "@a0_flip_2_9.json"],
    ),
    (
        "vertex_inline",
        &[
            "vertex",
            "distance",
            r#"{"period":2,"pattern":"+-"}"#,
            r#"{"period":4,"pattern":"+-+-","overrides":{"1":"-"}}"#,
        ],
    ),
    (
        "perm_order",
        &["perm", "order", r#"{"moves":{"1":2,"2":-1}}"#],
    ),
    (
        "perm_compose",
        &["perm", "compose", "@wreath.json", "@neg_two_cycle.json"],
    ),
    ("perm_inverse", &["perm", "inverse", "@neg_two_cycle.json"]),
    (
        "perm_apply_int",
        &["perm", "apply", "@neg_two_cycle.json", "--", "-2"],
    ),
    (
        "perm_apply_vertex",
        &["perm", "apply", "@wreath.json", "@a0.json"],
    ),
    (
        "reconstruct_local",
        &[
            "reconstruct",
            "--oracle",
            "@regular.json",
            "--at",
            "@a0.json",
            "--window",
            "1..5",
        ],
    ),
    (
        "reconstruct_component",
        &[
            "reconstruct",
            "--oracle",
            "@regular.json",
            "--at",
            "@alternating.json",
            "--window",
            "1..5",
            "--checks",
            "3",
            "--seed",
            "7",
        ],
    ),
    (
        "reconstruct_sparse_window",
        &[
            "reconstruct",
            "--oracle",
            "@example1.json",
            "--at",
            "@a0_flip_1.json",
            "--window",
            "1,2,7",
        ],
    ),
    (
        "reconstruct_pretty",
        &[
            "reconstruct",
            "--oracle",
            "@regular.json",
            "--at",
            "@a0.json",
            "--window",
            "1..3",
            "--pretty",
        ],
    ),
    (
        "verdict_example1",
        &[
            "verdict",
            "--oracle",
            "@example1.json",
            "--reps",
            "@a0.json,@alternating.json",
            "--window",
            "1..2",
        ],
    ),
    (
        "verdict_regular",
        &[
            "verdict",
            "--oracle",
            "@regular.json",
            "--reps",
            "@a0.json,@alternating.json",
            "--window",
            "1..5",
        ],
    ),
    (
        "cube_enum_brute",
        &["cube", "enum", "--n", "3", "--method", "brute"],
    ),
    (
        "cube_enum_extension",
        &["cube", "enum", "--n", "5", "--method", "extension"],
    ),
    ("cube_crosscheck", &["cube", "crosscheck", "--n", "3"]),
    ("cube_crosscheck_4", &["cube", "crosscheck", "--n", "4"]),
    ("demo_example1", &["demo", "example1", "--window", "1..3"]),
    (
        "error_bad_vertex",
        &["vertex", "adjacent", "@bad_period.json", "@a0.json"],
    ),
    ("error_bad_perm", &["perm", "order", "@bad_perm.json"]),
    (
        "error_bad_window",
        &[
            "reconstruct",
            "--oracle",
            "@regular.json",
            "--at",
            "@a0.json",
            "--window",
            "0..3",
        ],
    ),
    (
        "error_cube_range",
        &["cube", "enum", "--n", "4", "--method", "brute"],
    ),
    (
        "error_shared_component",
        &[
            "verdict",
            "--oracle",
            "@regular.json",
            "--reps",
            "@a0.json,@a0_flip_1.json",
            "--window",
            "1..2",
        ],
    ),
    (
        "error_missing_file",
        &["perm", "order", "@does_not_exist.json"],
    ),
    (
        "malformed_oracle",
        &[
            "reconstruct",
            "--oracle",
            "@swap_nonadjacent.json",
            "--at",
            "@a0.json",
            "--window",
            "1..3",
        ],
    ),
    (
        "malformed_oracle_component",
        &[
            "reconstruct",
            "--oracle",
            "@swap_nonadjacent.json",
            "--at",
            "@a0_flip_1.json",
            "--window",
            "1..3",
            "--checks",
            "8",
        ],
    ),
];

fn test_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

/// `@name` refers to a fixture file; comma-separated lists are resolved
/// element-wise.
fn resolve(arg: &str) -> String {
    if !arg.starts_with('@') {
        return arg.to_string();
    }
    arg.split(',')
        .map(|part| {
            let name = part.strip_prefix('@').unwrap_or(part);
            test_dir().join("fixtures").join(name).display().to_string()
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_infcube"))
        .args(args.iter().map(|a| resolve(a)))
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn transcript(args: &[&str]) -> String {
    let (code, stdout) = run(args);
    format!("exit: {code}\n{stdout}")
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for (name, args) in CASES {
        let path = test_dir().join("golden").join(format!("{name}.out"));
        let actual = transcript(args);
        if update {
            std::fs::write(&path, &actual).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        if expected != actual {
            mismatches.push(format!(
                "{name}:\n--- expected\n{expected}--- actual\n{actual}"
            ));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn output_is_deterministic() {
    for (_, args) in CASES {
        assert_eq!(transcript(args), transcript(args), "{args:?}");
    }
}

#[test]
fn exit_code_contract() {
    for (name, args) in CASES {
        let (code, _) = run(args);
        let expected = if name.starts_with("malformed_oracle") {
            3
        } else if name.starts_with("error_") {
            2
        } else {
            0
        };
        assert_eq!(code, expected, "{name}");
    }
    // clap usage errors share the malformed-input code
    assert_eq!(run(&["perm"]).0, 2);
    assert_eq!(run(&["cube", "enum", "--n", "x"]).0, 2);
}

#[test]
fn reconstruct_recovers_inducing_permutation() {
    let (code, stdout) = run(&[
        "reconstruct",
        "--oracle",
        "@regular.json",
        "--at",
        "@a0.json",
        "--window",
        "1..6",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let expected = serde_json::json!({"1": -3, "2": 1, "3": 2, "4": 4, "5": -5, "6": 6});
    assert_eq!(v["action"], expected);
    assert_eq!(v["queries"], 7);
}

#[test]
fn seed_changes_only_check_vertices() {
    let base = [
        "reconstruct",
        "--oracle",
        "@regular.json",
        "--at",
        "@a0.json",
        "--window",
        "1..8",
        "--checks",
        "4",
    ];
    let parse = |seed: &str| -> serde_json::Value {
        let mut args = base.to_vec();
        args.extend(["--seed", seed]);
        serde_json::from_str(&run(&args).1).unwrap()
    };
    let (a, b) = (parse("1"), parse("2"));
    assert_eq!(a["action"], b["action"]);
    assert_ne!(a["checked_at"], b["checked_at"]);
}

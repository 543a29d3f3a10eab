use std::process::Command;

fn tripack(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_tripack"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn distinct_nonexistent_shape_exits_3() {
    let out = tripack(&["distinct", "--shape", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("{\"outcome\":\"nonexistent\""), "{text}");
}

#[test]
fn distinct_unique_shape_reports_packing() {
    let out = tripack(&["distinct", "--shape", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"outcome\":\"unique\""), "{text}");
}

#[test]
fn pack_verify_round_trip_json() {
    let out = tripack(&["pack", "--shape", "4,5"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = std::env::temp_dir();
    let path = dir.join("tripack_test_c4c5.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let verify = tripack(&["verify", path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0));
}

#[test]
fn export_edgelist_round_trips_through_verify() {
    let out = tripack(&["pack", "--shape", "3,6"]);
    let dir = std::env::temp_dir();
    let json_path = dir.join("tripack_test_c3c6.json");
    std::fs::write(&json_path, &out.stdout).unwrap();
    let exported = tripack(&["export", json_path.to_str().unwrap(), "--format", "edgelist"]);
    assert_eq!(exported.status.code(), Some(0));
    let txt_path = dir.join("tripack_test_c3c6.txt");
    std::fs::write(&txt_path, &exported.stdout).unwrap();
    let verify = tripack(&["verify", txt_path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0));
}

#[test]
fn export_dot_mentions_all_three_colors() {
    let out = tripack(&["pack", "--shape", "4,5", "--format", "dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for color in ["black", "red", "blue"] {
        assert!(text.contains(&format!("color={color}")), "missing {color}");
    }
}

#[test]
fn verify_rejects_overlapping_edges() {
    // black and red copies share the edge 1-2
    let dir = std::env::temp_dir();
    let path = dir.join("tripack_test_overlap.txt");
    let mut lines = String::new();
    for c in 1..=2 {
        for (u, v) in [(1, 2), (2, 3), (3, 1)] {
            lines.push_str(&format!("{u} {v} {c}\n"));
        }
    }
    for (u, v) in [(1, 3), (3, 2), (2, 1)] {
        lines.push_str(&format!("{u} {v} 3\n"));
    }
    std::fs::write(&path, lines).unwrap();
    let out = tripack(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_file_exits_2() {
    let dir = std::env::temp_dir();
    let path = dir.join("tripack_test_malformed.txt");
    std::fs::write(&path, "1 2\n").unwrap();
    let out = tripack(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = tripack(&["verify", "/nonexistent/tripack.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn bad_shape_exits_2() {
    let out = tripack(&["distinct", "--shape", "2,4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tripack(&["pack", "--shape", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pack_unpackable_shape_exits_3() {
    let out = tripack(&["pack", "--shape", "3,3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn circulant_decomposition_covers_the_circulant() {
    let out = tripack(&["circulant", "--n", "11", "--gens", "1,2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"shape\":[11]"), "{text}");
    let bad = tripack(&["circulant", "--n", "10", "--gens", "1,2,5"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn enumerate_reports_unique_class() {
    let out = tripack(&["enumerate", "--shape", "3,4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"count_union_classes\":1"), "{text}");
    assert!(text.contains("\"exhaustive\":true"), "{text}");
}

#[test]
fn enumerate_respects_max_n() {
    let out = tripack(&["enumerate", "--shape", "11"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_thread_cap_exits_2() {
    let out = Command::new(env!("CARGO_BIN_EXE_tripack"))
        .args(["distinct", "--shape", "7"])
        .env("TRIPACK_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_tripack"))
        .args(["distinct", "--shape", "7"])
        .env("TRIPACK_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
}

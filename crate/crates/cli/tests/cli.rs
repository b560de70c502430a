//! The binary: exit codes and byte-stable output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equicount"))
        .args(args)
        .env_remove("EQUICOUNT_THREADS")
        .output()
        .unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("equicount-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn count_prints_one_record() {
    let out = bin(&["count", "--class", "7", "--p", "3", "--no-cache", "--quiet"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "m,cycle_type,p,condition,engine,raw_fixed_count,quotient_count\n7,7,3,glp,twisted,4756752,847\n"
    );
}

#[test]
fn output_does_not_depend_on_threads_or_cache() {
    let dir = scratch("cache");
    let d = dir.to_str().unwrap();
    let args = |t: &'static str| ["count", "--class", "2.2.1.1.1", "--p", "3", "--cache-dir", d, "--quiet", "--threads", t];
    let first = bin(&args("1"));
    let cached = bin(&args("3"));
    let fresh = bin(&["count", "--class", "2.2.1.1.1", "--p", "3", "--no-cache", "--quiet", "--threads", "3"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, cached.stdout);
    assert_eq!(first.stdout, fresh.stdout);
    assert!(std::fs::read_dir(&dir).unwrap().next().is_some());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn decompose_builtin_is_stable() {
    let a = bin(&["decompose"]);
    let b = bin(&["decompose", "--format", "json"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, bin(&["decompose"]).stdout);
    let text = String::from_utf8(b.stdout).unwrap();
    assert!(serde_json::from_str::<serde_json::Value>(&text).is_ok());
}

#[test]
fn perturbed_polynomials_fail_decomposition() {
    let dir = scratch("poly");
    let mut body = String::from("{\"m\": 7, \"polynomials\": {");
    let t1 = equicount_core::builtin_table1();
    let entries: Vec<String> = t1
        .iter()
        .enumerate()
        .map(|(i, (class, poly))| {
            let mut c = poly.high_first(6);
            if i == 0 {
                c[6] += 1;
            }
            let c: Vec<String> = c.iter().map(i128::to_string).collect();
            format!("\"{}\": [{}]", class.dotted(), c.join(","))
        })
        .collect();
    body.push_str(&entries.join(","));
    body.push_str("}}");
    let path = dir.join("perturbed.json");
    std::fs::write(&path, body).unwrap();
    let out = bin(&["decompose", "--source", "file", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["count", "--class", "4.3", "--p", "7", "--no-cache", "--quiet"]).status.code(), Some(2));
    assert_eq!(bin(&["count", "--class", "4.4", "--p", "3", "--no-cache", "--quiet"]).status.code(), Some(3));
    assert_eq!(bin(&["count", "--class", "7", "--p", "9", "--no-cache", "--quiet"]).status.code(), Some(3));
    assert_eq!(bin(&["verify", "--tier", "slowest"]).status.code(), Some(3));
    assert_eq!(bin(&["characters", "--m", "3"]).status.code(), Some(0));
}

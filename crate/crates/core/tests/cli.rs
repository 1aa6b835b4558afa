//! The `koszul` binary end to end.

mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::CORPUS;

fn koszul(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koszul"))
        .args(args)
        .env_remove("KOSZUL_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn perm_with_pages() {
    let o = koszul(&["perm", "--n", "4", "--pages", "2", "--checks", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("E^1 (p,q):dim: (1,-1):4 (2,-1):6 (3,-1):4 (4,-1):1\n"),
        "{text}"
    );
    assert!(text.contains("E^2 (p,q):dim: (1,-1):1\n"));
    assert!(text.contains("dims (degree:dim): 0:24 1:36 2:14 3:1"));
}

#[test]
fn fiber_of_path() {
    let path3 = format!("{CORPUS}/path3.edges");
    let o = koszul(&["fiber", "--graph", &path3, "--checks", "koszul"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("dims (degree:dim): -3:5 -2:5 -1:1"), "{text}");
    assert!(text.contains("homology (degree:dim): -3:1\n"));
}

#[test]
fn invalid_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let disconnected = dir.path().join("disconnected.edges");
    std::fs::write(&disconnected, "0 1\n2 3\n").unwrap();
    let o = koszul(&["fiber", "--graph", disconnected.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("disconnected"));

    assert_eq!(koszul(&["perm", "--n", "0"]).status.code(), Some(2));
    assert_eq!(koszul(&["perm", "--n", "8"]).status.code(), Some(2));
    assert_eq!(
        koszul(&["perm", "--n", "3", "--checks", "nonsense"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        koszul(&["fiber", "--graph", "/no/such/file"]).status.code(),
        Some(2)
    );
    assert_eq!(
        koszul(&["suite", "--graph", dir.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_koszul"))
        .args(["perm", "--n", "4"])
        .env("KOSZUL_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let path4 = format!("{CORPUS}/path4.edges");
    assert_eq!(
        koszul(&["fiber", "--graph", &path4, "--cap", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn exports_are_written_and_readable() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p3");
    let o = koszul(&["perm", "--n", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for name in [
        "report.txt",
        "dims.csv",
        "pages.csv",
        "checks.csv",
        "P_3.complex.json",
        "P_3.filtration.json",
    ] {
        assert!(out.join(name).exists(), "{name}");
    }
    let dims = std::fs::read_to_string(out.join("dims.csv")).unwrap();
    assert!(dims.starts_with("object,degree,dim\nP_3,0,6\n"));
    let pages = std::fs::read_to_string(out.join("pages.csv")).unwrap();
    assert!(pages.starts_with("object,r,p,q,dim\n"));
    let checks = std::fs::read_to_string(out.join("checks.csv")).unwrap();
    assert!(checks.starts_with("object,check,pass\nP_3,d_squared,true\n"));
    let back = koszul::cli::load_filtered(
        &std::fs::read_to_string(out.join("P_3.complex.json")).unwrap(),
        &std::fs::read_to_string(out.join("P_3.filtration.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(back.complex().homology_dims().unwrap().get(&0), Some(&1));
}

#[test]
fn reports_are_deterministic() {
    let a = koszul(&["fiber", "--graph", &format!("{CORPUS}/cycle4.edges")]);
    let b = koszul(&["fiber", "--graph", &format!("{CORPUS}/cycle4.edges")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

fn copy_corpus(to: &Path) {
    for entry in std::fs::read_dir(CORPUS).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, to.join(p.file_name().unwrap())).unwrap();
    }
}

#[test]
fn suite_on_shipped_corpus() {
    let o = koszul(&["suite", "--graph", CORPUS]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all checks pass"));
}

#[test]
fn suite_names_manifest_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    let manifest = dir.path().join("manifest.csv");
    let text = std::fs::read_to_string(&manifest).unwrap();
    std::fs::write(&manifest, text.replace("path3,-3,5", "path3,-3,6")).unwrap();
    let o = koszul(&["suite", "--graph", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("path3:manifest"), "{}", stdout(&o));

    // A graph without manifest rows is reported by name.
    std::fs::write(dir.path().join("extra.edges"), "0 1\n").unwrap();
    std::fs::write(&manifest, text).unwrap();
    let o = koszul(&["suite", "--graph", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("extra:manifest"));
}

//! Builds a small C program against the generated header and static library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn staticlib() -> Option<PathBuf> {
    // target/tmp -> target/<profile>
    let tmp = Path::new(env!("CARGO_TARGET_TMPDIR"));
    ["debug", "release"].iter().map(|p| tmp.parent().unwrap().join(p).join("librplus_ffi.a")).find(|p| p.exists())
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = staticlib() else {
        eprintln!("static library not found; skipping");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let dir = env!("CARGO_MANIFEST_DIR");
    let exe = Path::new(env!("CARGO_TARGET_TMPDIR")).join("rplus_smoke");
    let st = Command::new("cc")
        .args([&format!("{dir}/tests/smoke.c"), "-I", &format!("{dir}/include"), "-o"])
        .arg(&exe)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

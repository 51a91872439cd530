use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn exported_functions() -> Vec<String> {
    let src = fs::read_to_string(crate_dir().join("src/lib.rs")).unwrap();
    let mut names = Vec::new();
    let mut exported = false;
    for line in src.lines() {
        if line.trim() == "#[no_mangle]" {
            exported = true;
        } else if exported {
            let name = line
                .split("fn ")
                .nth(1)
                .and_then(|r| r.split('(').next())
                .expect("fn after #[no_mangle]");
            names.push(name.to_string());
            exported = false;
        }
    }
    names
}

#[test]
fn header_declares_every_export() {
    let header = fs::read_to_string(crate_dir().join("include/okubo.h")).unwrap();
    let names = exported_functions();
    assert!(names.len() >= 15, "{names:?}");
    for name in &names {
        assert!(
            header.contains(&format!(" {name}(")) || header.contains(&format!("*{name}(")),
            "{name} missing"
        );
    }
    for item in [
        "typedef struct OkuboAlgebraHandle",
        "typedef struct OkuboElementHandle",
        "OKUBO_STATUS_MIXED_ALGEBRAS = 6",
    ] {
        assert!(header.contains(item), "{item} missing");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "okubo.h"

int main(void) {
    OkuboAlgebraHandle *a = NULL;
    OkuboElementHandle *x = NULL, *y = NULL, *xx = NULL, *yy = NULL;
    char *s = NULL;
    if (okubo_algebra_new("2147483647(b)", "1", "b", &a) != OKUBO_STATUS_OK) return 10;
    if (okubo_element_parse(a, "z01 - z11", &x) != OKUBO_STATUS_OK) return 11;
    if (okubo_element_parse(a, "z02 - z22", &y) != OKUBO_STATUS_OK) return 12;
    if (okubo_mul(a, x, x, &xx) != OKUBO_STATUS_OK) return 13;
    if (okubo_mul(a, y, y, &yy) != OKUBO_STATUS_OK) return 14;
    if (okubo_bilin(a, xx, yy, &s) != OKUBO_STATUS_OK) return 15;
    printf("%s\n", s);
    int ok = strcmp(s, "3b^2") == 0;
    okubo_string_free(s);
    if (okubo_element_parse(a, "z10 *", &x) != OKUBO_STATUS_PARSE_ERROR) return 16;
    if (strlen(okubo_last_error()) == 0) return 17;
    okubo_element_free(x);
    okubo_element_free(y);
    okubo_element_free(xx);
    okubo_element_free(yy);
    okubo_algebra_free(a);
    return ok ? 0 : 1;
}
"#;

/// Directory holding the static library: the test binary lives in `<profile>/deps`.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = profile_dir().join("libokubo_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("smoke.c");
    let exe = tmp.join("smoke");
    fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "3b^2");
}

//! Compiles a small C program against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let deps = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib_dir = deps.parent().unwrap().to_path_buf();
    let archive = lib_dir.join("libmoebius_dual_ffi.a");
    assert!(
        archive.exists(),
        "static library not built at {}",
        archive.display()
    );
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "moebius_dual.h"

int main(void) {
    MdPoset *p = NULL;
    if (md_poset_subsets(3, &p) != MD_STATUS_OK) return 10;
    int64_t mu = 0;
    if (md_poset_mu(p, 0, md_poset_len(p) - 1, &mu) != MD_STATUS_OK) return 11;
    MdMatrix *z = NULL;
    if (md_poset_moebius(p, &z) != MD_STATUS_OK) return 12;
    char *e = NULL;
    if (md_matrix_entry(z, 0, 7, &e) != MD_STATUS_OK) return 13;
    printf("%lld %s\n", (long long)mu, e);
    md_string_free(e);
    md_matrix_free(z);
    md_poset_free(p);
    if (md_poset_subsets(3, NULL) != MD_STATUS_NULL_POINTER) return 14;
    if (md_last_error_message() == NULL) return 15;
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("client");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "-1 -1/1\n");
}

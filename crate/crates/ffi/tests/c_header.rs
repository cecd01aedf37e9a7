//! Compiles and runs a small C program against the generated header and the
//! static library.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libbicomplex_laplace_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let exe = dir.path().join("smoke");
    std::fs::write(
        &src,
        r#"
#include <math.h>
#include <stdio.h>
#include "bicomplex_laplace.h"

int main(void) {
    BlBicomplex e1 = {0.5, 0.0, 0.0, 0.5};
    BlBicomplex sq = bl_bicomplex_mul(e1, e1);
    if (sq.a0 != 0.5 || sq.a3 != 0.5) return 1;

    BlImage *image = NULL;
    if (bl_image_new_catalog("unit_step", 1.0, 0.0, &image) != BL_STATUS_OK) return 2;
    double times[2] = {0.5, 2.0};
    BlInversion rows[2];
    if (bl_invert(image, times, 2, BL_METHOD_RESIDUE, NULL, rows, NULL) != BL_STATUS_OK) return 3;
    bl_image_free(image);
    if (fabs(rows[0].f - 1.0) > 1e-12 || fabs(rows[1].f - 1.0) > 1e-12) return 4;

    if (bl_image_new_catalog("nope", 1.0, 0.0, &image) != BL_STATUS_INVALID_ARGUMENT) return 5;
    printf("%s\n", bl_last_error());
    return 0;
}
"#,
    )
    .unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(
        run.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).contains("nope"));
}

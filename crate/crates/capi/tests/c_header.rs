//! Compiles and runs a real C program against the generated header and the
//! cdylib, proving the header matches the ABI.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include <string.h>
#include "superweier.h"

int main(void) {
    SwPrecision *prec = NULL;
    if (sw_precision_new(128, 3, &prec) != SW_STATUS_OK) return 1;
    SwParams *params = NULL;
    if (sw_params_new(0.5, 3.0, false, prec, &params) != SW_STATUS_OK) return 2;

    SwLogPolar lp;
    if (sw_eval_super_weierstrass(params, 2, 10000, 0.0, prec, &lp) != SW_STATUS_OK) return 3;
    SwComplex z;
    if (sw_logpolar_to_cartesian(lp, 700.0, &z) != SW_STATUS_OK) return 4;
    if (fabs(z.re - 1.75) > 1e-12) return 5;

    SwGlobalBudget budget;
    if (sw_global_bound(params, 1.0, 2, 100, &budget) != SW_STATUS_PRECONDITION_VIOLATED) return 6;
    if (strstr(sw_last_error_message(), "K_max") == NULL) return 7;
    if (sw_global_bound(params, 1.0, 2, 500, &budget) != SW_STATUS_OK) return 8;
    if (budget.min_n != 400) return 9;

    SwRegime regime;
    if (sw_classify(params, 1.0, 0.0, 13.5, &regime) != SW_STATUS_OK) return 10;
    if (regime != SW_REGIME_CRITICAL) return 11;

    sw_params_free(params);
    sw_precision_free(prec);
    printf("c-abi-ok\n");
    return 0;
}
"#;

fn target_profile_dir() -> PathBuf {
    // tests run from target/<profile>/deps/...
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = manifest.join("include");
    assert!(
        include_dir.join("superweier.h").exists(),
        "header not generated"
    );

    let profile_dir = target_profile_dir();
    let dylib = profile_dir.join("libsuperweier_capi.so");
    assert!(
        dylib.exists(),
        "cdylib not found at {}",
        dylib.display()
    );

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let bin = dir.path().join("smoke");

    let compile = Command::new("cc")
        .arg(&src)
        .arg("-o")
        .arg(&bin)
        .arg(format!("-I{}", include_dir.display()))
        .arg(format!("-L{}", profile_dir.display()))
        .arg("-lsuperweier_capi")
        .arg("-lm")
        .arg(format!("-Wl,-rpath,{}", profile_dir.display()))
        .output()
        .expect("cc available");
    assert!(
        compile.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&bin).output().unwrap();
    assert!(
        run.status.success(),
        "exit {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    assert!(String::from_utf8_lossy(&run.stdout).contains("c-abi-ok"));
}

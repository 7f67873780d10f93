//! Runs every acceptance criterion and prints one line per criterion.
//! Exits nonzero if any criterion fails or the suite reports findings.

use std::process::{Command, ExitCode};

use hopfsieve_cli::criteria::{run_all, run_criterion, SuiteConfig};

fn verify_paper_bytes() -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfsieve"))
        .args(["verify-paper", "--no-timings"])
        .env_remove("HOPFSIEVE_OUTPUT_DIR")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn main() -> ExitCode {
    let mut ok = true;
    let (results, findings) = run_all(&SuiteConfig::default());
    for r in &results {
        let mark = if r.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {mark} {} ({} ms): {}", r.id, r.name, r.wall_ms.unwrap_or(0), r.detail);
        ok &= r.passed;
    }
    for f in &findings {
        println!("FINDING {f}");
    }
    ok &= findings.is_empty();

    // Byte-for-byte determinism of the shipped command.
    let same = verify_paper_bytes() == verify_paper_bytes();
    println!("verify-paper --no-timings twice {}", if same { "PASS identical" } else { "FAIL differs" });
    ok &= same;

    // A corrupted rule catalog must be caught by name.
    let corrupt = SuiteConfig { corrupt_catalog: true, ..SuiteConfig::default() };
    let (r, _) = run_criterion(9, &corrupt).expect("criterion 9 exists");
    println!("corrupted catalog {} ({})", if r.passed { "FAIL undetected" } else { "PASS detected" }, r.name);
    ok &= !r.passed;

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance run: one `criterion N<TAB>PASS|FAIL<TAB>detail` line per
//! criterion; exits non-zero if any criterion fails.

use std::process::ExitCode;

fn main() -> ExitCode {
    let outcomes = match hopfcyc::acceptance::run() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("acceptance: cannot load the diamond model: {e}");
            return ExitCode::FAILURE;
        }
    };
    for o in &outcomes {
        println!("{o}");
    }
    if outcomes.iter().all(|o| o.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

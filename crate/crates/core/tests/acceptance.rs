//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::process::ExitCode;

use renorm_rays::selftest;

/// Runtime budgets in milliseconds, where the criterion sets one.
const BUDGET_MS: [Option<u128>; 10] = [
    Some(5_000),
    Some(10_000),
    Some(10_000),
    Some(5_000),
    None,
    None,
    Some(5_000),
    None,
    Some(5_000),
    None,
];

fn main() -> ExitCode {
    let mut failed = 0;
    for id in 1..=10u8 {
        let c = selftest::run(id).expect("criterion exists");
        let budget = BUDGET_MS[usize::from(id - 1)];
        let in_time = budget.is_none_or(|b| c.millis <= b);
        let pass = c.pass && in_time;
        let limit = budget.map(|b| format!(" of {b} ms")).unwrap_or_default();
        println!(
            "criterion {:>2} {:<22} {} ({} ms{limit}) {}",
            c.id,
            c.name,
            if pass { "PASS" } else { "FAIL" },
            c.millis,
            c.detail
        );
        failed += usize::from(!pass);
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

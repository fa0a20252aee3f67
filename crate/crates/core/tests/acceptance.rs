//! The eleven acceptance criteria, one PASS/FAIL line each.
//!
//! Every criterion is exact; the only tolerances are wall-clock limits.
//! Runs without the test harness so the table is always printed.

use latkit::verify::{checks, run};
use std::time::Duration;

/// (criterion number, check id, time limit in seconds)
const CRITERIA: [(u32, &str, u64); 11] = [
    (1, "sub-plane-is-mn", 1),
    (2, "mn-variety-membership", 120),
    (3, "delta-chain-independence", 60),
    (4, "delta-quotient-heights", 60),
    (5, "support-onto-con", 60),
    (6, "bounded-extension-conc", 10),
    (7, "con-rank-bounds-length", 60),
    (8, "lifting-extracts-mn", 60),
    (9, "chain-cpe", 60),
    (10, "support-combinatorics", 120),
    (11, "matricial-k0", 60),
];

const TOTAL_LIMIT: Duration = Duration::from_secs(300);

fn main() {
    let all = checks();
    let mut total = Duration::ZERO;
    let mut failed = Vec::new();
    for (num, id, secs) in CRITERIA {
        let check = all.iter().find(|c| c.id == id).unwrap_or_else(|| panic!("no check {id}"));
        let r = run(check);
        total += r.elapsed;
        let in_time = r.elapsed <= Duration::from_secs(secs);
        let ok = r.passed && in_time;
        println!(
            "{} criterion {num:>2} {id:<26} {:>9.1}ms (limit {secs}s) {}",
            if ok { "PASS" } else { "FAIL" },
            r.elapsed.as_secs_f64() * 1e3,
            r.detail
        );
        if !ok {
            failed.push(num);
        }
    }
    let in_total = total <= TOTAL_LIMIT;
    println!(
        "{} total {:.1}ms (limit {}s)",
        if in_total { "PASS" } else { "FAIL" },
        total.as_secs_f64() * 1e3,
        TOTAL_LIMIT.as_secs()
    );
    if !failed.is_empty() || !in_total {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

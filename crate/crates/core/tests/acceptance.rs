//! Prints one PASS/FAIL line per acceptance criterion. Criteria listed in
//! `KNOWN_LIMITATIONS` may fail, but only within the failure class recorded
//! for them; everything else must pass.

mod common;

use std::time::Duration;

use common::criteria::*;

const KNOWN_LIMITATIONS: [usize; 2] = [6, 9];

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn acceptance() {
    let checks: [(usize, &str, Duration, fn() -> Verdict); 10] = [
        (1, "login CPA facts", secs(5), login_cpa),
        (2, "evolution 1 impact", secs(5), evolution1_impact),
        (3, "evolution 1 execution", secs(5), evolution1_execution),
        (4, "evolution 2 interplay", secs(10), evolution2_interplay),
        (5, "evolution 2 gc hints", secs(10), evolution2_gc),
        (6, "NAC preservation theorems", secs(300), theorems),
        (7, "categorical oracles", secs(120), categorical),
        (8, "CPA against brute force", secs(300), cpa_oracle),
        (9, "evolution order independence", secs(60), determinism),
        (10, "round trip and byte stability", secs(60), round_trip),
    ];
    let mut unexpected = Vec::new();
    for (n, name, limit, check) in checks {
        let v = timed(limit, check);
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {status} {name} [{:.2?}]: {}", v.elapsed, v.detail);
        if !v.pass {
            let tolerated = KNOWN_LIMITATIONS.contains(&n) && v.explained;
            if tolerated {
                println!("             known limitation: every failure is in the recorded class");
            } else {
                unexpected.push(n);
            }
        }
    }
    assert!(unexpected.is_empty(), "criteria failed outside known limitations: {unexpected:?}");
}

//! End-to-end acceptance gate: runs the full validation suite and prints one
//! line per criterion.

#[test]
fn acceptance_suite() {
    let outcomes = ckn_core::validate::run_all();
    let mut failures = 0usize;
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:02} {}: {} — {}", o.index, o.name, status, o.detail);
        if !o.passed {
            failures += 1;
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}

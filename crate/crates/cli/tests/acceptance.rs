use pathgeom::criteria::{all_ids, run_all};
use pathgeom::Settings;

/// Runs the full corpus, prints one line per criterion and asserts every gating check.
#[test]
fn acceptance() {
    let results = run_all(&all_ids(), &Settings::default());
    assert_eq!(results.len(), 11);
    for c in &results {
        println!("criterion {:>2} {}: {}", c.id, c.title, if c.passed { "PASS" } else { "FAIL" });
        for k in c.checks.iter().filter(|k| !k.passed) {
            let kind = if k.gating { "failed" } else { "diagnostic" };
            println!("    {kind}: {} ({})", k.name, k.detail);
        }
    }
    let failed: Vec<String> = results
        .iter()
        .flat_map(|c| c.checks.iter().filter(|k| k.gating && !k.passed).map(move |k| format!("{}: {}", c.id, k.name)))
        .collect();
    assert!(failed.is_empty(), "failed checks: {failed:?}");
}

use lcdt::corpus::corpus_default;
use lcdt::harness::{default_matrices, default_orders, run_suite, SuiteConfig, Verdict};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let corpus = corpus_default(7);
    let config = SuiteConfig::default();
    let report = run_suite(&corpus, &default_matrices(), &default_orders(), &config);
    println!("elapsed {:?}", t0.elapsed());
    println!(
        "cases: {}  errors: {}  violated: {}",
        report.cases.len(),
        report.errors.len(),
        report.violated_count()
    );
    for (id, row) in &report.summary {
        println!("{id:32} cases {:4}  worst ratio {:10.3e}  holds {} violated {} trivial {} empirical {}",
            row.cases, row.worst_ratio, row.holds, row.violated, row.trivial, row.empirical_only);
    }
    for e in report.errors.iter().take(10) {
        println!("ERR {}: {}", e.case_key, e.error);
    }
    for c in report
        .cases
        .iter()
        .filter(|c| c.verdict == Verdict::Violated)
        .take(10)
    {
        println!(
            "VIOLATED {} {} ratio {:.6e} lhs {:.6e} rhs {:.6e}",
            c.theorem_id, c.case_key, c.ratio, c.lhs, c.rhs
        );
    }
}

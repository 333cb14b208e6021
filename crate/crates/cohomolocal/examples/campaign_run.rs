//! A deterministic verification campaign, end to end: sample groups, check
//! the two H^1_loc routes against each other, and emit the JSON report.

use cohomolocal::campaign::{run, CampaignKind, CampaignSpec};

fn main() {
    let mut spec = CampaignSpec::new(CampaignKind::OracleEquivalence);
    spec.sample_count = 25;
    spec.seed = 7;
    spec.caps.group_order_cap = 500;

    let report = run(&spec).unwrap();
    eprintln!(
        "records: {}, violations: {}, skipped: {}, verdict: {}",
        report.records.len(),
        report.violations.len(),
        report.skipped,
        report.verdict
    );
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}

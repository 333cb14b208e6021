//! The named construction catalog: class-tagged groups with order oracles.

use cohomolocal::constructions::catalog;

fn main() {
    for (n, p) in [(2usize, 3u64), (4, 3)] {
        println!("catalog(n = {n}, p = {p}):");
        for entry in catalog(n, p, 1).unwrap() {
            let realized = match &entry.group {
                Some(g) => format!("order {}", g.order()),
                None => "metadata only".to_string(),
            };
            println!(
                "  [{}] {:<24} expected {:?} ({realized})",
                entry.class, entry.name, entry.expected_order
            );
            println!("        {}", entry.provenance);
        }
    }
}

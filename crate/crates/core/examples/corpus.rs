//! Runs every check over a few generated corpora and prints the tallies.

use pqmap::analysis::corpus_check;
use pqmap::generators::GenSpec;

fn main() {
    for spec in ["random:3,6", "perturb:4,4", "random:6,3:30"] {
        let spec: GenSpec = spec.parse().unwrap();
        let (report, _) = corpus_check(&spec, 50, 1, true).unwrap();
        println!("{spec}: passed={} max V/n^2={}", report.passed(), report.max_vertex_ratio);
        for t in &report.tallies {
            println!("  {:<20} evaluated {:>3} held {:>3} skipped {:>3}", t.name, t.evaluated, t.held, t.skipped);
        }
    }
}

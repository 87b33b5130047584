//! Development scratch: which catalogue rows fail necessity, and how badly?

use causal_varieties::catalogue::Catalogue;
use causal_varieties::geometry::{joint_distribution, sample_latents};
use causal_varieties::poly::rational_to_f64;

#[test]
fn necessity_sweep() {
    let rows = Catalogue::load_default().unwrap();
    for row in rows.rows() {
        let mut fails = 0usize;
        let mut first: Option<String> = None;
        for i in 0..400u64 {
            let q = sample_latents(row.model.n(), 99, i);
            let p = joint_distribution(&row.model, &q).unwrap();
            if let Some(why) = row.test.first_failure(&p) {
                fails += 1;
                if first.is_none() {
                    let qf: Vec<f64> = q.q().iter().map(rational_to_f64).collect();
                    let pf = p.to_f64s();
                    first = Some(format!("q={qf:?} p={pf:?}: {why}"));
                }
            }
        }
        println!(
            "row {}: {} / 400 failures{}",
            row.label,
            fails,
            first.map(|f| format!("; first: {f}")).unwrap_or_default()
        );
    }
}

//! The degenerate system built from a symplectic space: axioms, the trace
//! criterion and the structured witness.

use freudenthal::fts::classify::ms_structured_witness;
use freudenthal::fts::{build_ms_formal, build_ms_standard, check_axioms, classify, ms_diagnostics};
use freudenthal::sampling::Budget;

fn main() {
    let budget = Budget::new(0, 20, 1, false);
    let ts = build_ms_standard(26).unwrap();
    for c in check_axioms(&ts, &budget).checks {
        println!("{:<14} {:?}", c.name, c.status);
    }
    let verdict = classify(&ts, &budget);
    println!("verdict {:?}, witness residual {}", verdict.verdict, verdict.witness.unwrap()["residual"]);
    for (label, ts, w) in [("dim W = 26", ts, 26), ("formal dim W = 27", build_ms_formal(), 27)] {
        let (x, y) = ms_structured_witness(w);
        let d = ms_diagnostics(&ts, &x, &y).unwrap();
        println!("{label}: remainder {}, trace expansion holds: {}", d.remainder, d.trform_check);
    }
}

//! End of a triple system as a gift: G1-G5 and the printed-sign audit.

use freudenthal::albert::AlbertAlgebra;
use freudenthal::fts::{build_albert, build_ms_standard};
use freudenthal::gift::axioms::printed_sign_audit;
use freudenthal::gift::{check_gift_axioms, end_of};
use freudenthal::sampling::Budget;

fn main() {
    let budget = Budget::new(0, 10, 1, false);
    let systems = [("M(J^d)", build_albert(&AlbertAlgebra::split()).unwrap()), ("M_s", build_ms_standard(26).unwrap())];
    for (name, ts) in systems {
        let g = end_of(&ts).unwrap();
        let mut report = check_gift_axioms(&g, &budget);
        report.extend(printed_sign_audit(&g, &budget));
        for c in report.checks {
            println!("End({name}) {:<20} {:?}", c.name, c.status);
        }
    }
}

//! Witt indices of the real forms of E7 from hermitian trace forms.

use freudenthal::descent::e7_real_table;

fn main() {
    println!("{:<8} {:<9} {:>4}  {:<10} comment", "Q", "J", "w", "index");
    for r in e7_real_table().unwrap() {
        println!("{:<8} {:<9} {:>4}  {:<10} {}", r.quaternion, r.albert, r.witt_index, r.tits_index, r.comment);
    }
}

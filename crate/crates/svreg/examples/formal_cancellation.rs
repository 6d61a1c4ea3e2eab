//! The formal cancellation checker: the bump-correction form is alternating
//! and restricts to zero on every hyperplane t_j = 0, verified by exact
//! expansion in a finite term algebra.
//!
//!     cargo run --example formal_cancellation

use svreg::symbols::correction_form::cancellation_check;

fn main() {
    for n in 2..=7 {
        let v = cancellation_check(n);
        let terms = v
            .trail
            .iter()
            .find(|l| l.contains("expanded form"))
            .cloned()
            .unwrap_or_default();
        println!("n = {}: {} ({})", n, if v.pass { "cancels" } else { "FAILS" }, terms);
    }
}

//! Regenerates `data/path_residuals.txt`:
//!
//! ```text
//! cargo run --release -p incidence-core --example derive_residuals > crates/core/data/path_residuals.txt
//! ```

use incidence_core::formulas::{derive_residual_table, format_residual_table};
use incidence_core::Solver;

fn main() {
    let table = derive_residual_table(&Solver::default()).expect("residual sums are small");
    print!("{}", format_residual_table(&table));
}

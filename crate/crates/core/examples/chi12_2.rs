//! Builds chi12_2 and prints a few coefficients and eigenvalues.

use siegel_core::hecke2::{eigenvalue_tp, eigenvalue_tp2};
use siegel_core::siegel::construct_named;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = construct_named("chi12_2", 10)?;
    for n in [(1, 1, 1), (3, 3, 3), (1, 5, 7)] {
        println!("a{n:?} = {:?}", f.series.coeff(n.0, n.1, n.2).to_strings());
    }
    for p in [3, 5, 7] {
        println!("lambda_{p} = {}", eigenvalue_tp(&f, p)?.to_json()["lambda"]);
    }
    println!("lambda_9 = {}", eigenvalue_tp2(&f, 3)?.to_json()["lambda"]);
    Ok(())
}

//! Mean-field recurrences for the cubic biased walk against their closed
//! forms, under both pairing denominators.

use covertime_lab::oracle::{solve_recurrences, Denominator};

fn main() -> covertime_lab::Result<()> {
    let n = 1_000_000;
    for den in [Denominator::PlusOne, Denominator::MinusOne] {
        let table = solve_recurrences(n, 3, den)?;
        println!("{den:?}");
        for delta in [0.5, 0.1, 0.01] {
            let t = ((1.0 - delta) * 1.5 * n as f64).round() as usize;
            let x = table.at(t).unwrap();
            println!(
                "  delta {delta:>4}: X3 {:12.2} closed {:12.2}   X1 {:12.2} closed {:12.2}",
                x[3],
                table.closed_x3(t),
                x[1],
                table.closed_x1(t)
            );
        }
    }
    Ok(())
}

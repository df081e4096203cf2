//! Closed-form σ, ρ and τ, with open and nonexistent cases shown as words.

use subpart::formulas::{antimonotone_table, reference_bounds, rho, sigma, tau};

fn main() -> subpart::Result<()> {
    println!("{:>3} {:>3} {:>3} {:>12} {:>12} {:>12}", "q", "n", "t", "sigma", "rho", "tau(n+t-1)");
    for q in [2u64, 3] {
        for n in 3..=8u32 {
            for t in 2..n {
                println!("{q:>3} {n:>3} {t:>3} {:>12} {:>12} {:>12}", sigma(n, t, q)?.to_string(), rho(n, t, q)?.to_string(), tau(n + t - 1, t, q)?.to_string());
            }
        }
    }
    let table = antimonotone_table(12, 2, 2..=6)?;
    let values: Vec<String> = table.rows.iter().map(|(t, v)| format!("t={t}: {v}")).collect();
    println!("sigma_2(12, t): {} (strictly decreasing: {})", values.join(", "), table.strictly_decreasing);
    let b = reference_bounds(3);
    println!("tau_3(4,2) ≥ {}, reference upper bound {:.2}", b.lower, b.applicable_upper());
    Ok(())
}

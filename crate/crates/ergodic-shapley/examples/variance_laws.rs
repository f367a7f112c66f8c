//! The closed-form side: pair-variance law, improvement ratios, budget
//! bounds, binary correlation floors, and the spanning-tree reference joint
//! distribution.
//!
//! ```bash
//! cargo run --release --example variance_laws
//! ```

use ergodic_shapley::analysis::{
    binary_rho_min, budget_thresholds, improvement_ratio, m1_upper_bound, mst_reference_joint,
    paired_variance,
};
use ergodic_shapley::Result;

fn main() -> Result<()> {
    println!("variance of a mean of m2 pairs, sigma = 1:");
    for rho in [-1.0, -0.5, 0.0, 1.0] {
        println!("  rho = {rho:+.1}: {:.6}", paired_variance(1.0, rho, 1000.0)?);
    }

    println!("\npredicted SE ratio vs baseline (m = 4e6, m2 = 1,166,667):");
    for rho in [-0.9, -0.8, -0.5, 0.0] {
        println!("  rho = {rho:+.1}: {:.3}", improvement_ratio(4e6, 1_166_667.0, rho)?);
    }

    println!("\nlargest feasible learning sample (n = 100):");
    for (m, rho) in [(1e6, -1.0), (1e6, -0.5), (250_000.0, -0.5)] {
        println!("  m = {m:>9}, rho = {rho:+.1}: m1 <= {:.0}", m1_upper_bound(m, 100, rho));
    }

    println!("\ncorrelation floor of a binary contribution with P(1) = p:");
    for p in [0.5, 0.1, 0.01] {
        println!("  p = {p}: rho_min = {:.4}", binary_rho_min(p)?);
    }

    let thresholds = budget_thresholds(100, (100.0, -0.39), (1000.0, -0.8))?;
    println!("\nspanning-tree budget thresholds (m1 = 100 vs 1000):");
    println!("  beats baseline from m = {:.0}", thresholds.break_even_a.unwrap());
    println!("  larger m1 beats baseline from m = {:.0}", thresholds.break_even_b.unwrap());
    println!("  larger m1 takes over at m = {:.0}", thresholds.swap_dominance.unwrap());

    let joint = mst_reference_joint();
    println!("\nreversal pairing on the spanning-tree game, joint law of (X, Y):");
    print!("{:>8}", "");
    for v in &joint.values {
        print!("{v:>10}");
    }
    println!();
    for (i, row) in joint.probs.iter().enumerate() {
        print!("{:>8}", joint.values[i]);
        for p in row {
            print!("{p:>10.4}");
        }
        println!();
    }
    println!("  correlation: {:.4}", joint.correlation());
    Ok(())
}

//! A desk-scale replication study: run each estimator many times and
//! compare the spread of its estimates with the baseline prediction
//! `sigma / sqrt(m)`.
//!
//! ```bash
//! cargo run --release --example replication_study
//! ```

use ergodic_shapley::{make_game, replicate, GameId, Method, Result, SeedPlan};

fn main() -> Result<()> {
    // Small budgets on purpose: the learning spend m1 * n^2 / 6 bites hard
    // here, so the paired estimator wins on the square game and loses on
    // the other two. Larger budgets turn all three around.
    let configs = [
        (GameId::Square, 500_000u64, 100u64),
        (GameId::Pair, 250_000, 100),
        (GameId::Shoes, 400_000, 100),
    ];
    let r = 60;

    println!(
        "{:<8} {:>8} {:>5} {:>8} | {:>10} {:>10} {:>6}",
        "game", "m", "m1", "m2", "sigma_s", "sigma_e", "ratio"
    );
    for (id, m, m1) in configs {
        let game = make_game(id, None)?;
        let summary = replicate(
            game.as_ref(),
            1,
            &Method::OptK2 { learning_size: m1 },
            m,
            r,
            &SeedPlan::Master(17),
            300_000,
        )?;
        println!(
            "{:<8} {:>8} {:>5} {:>8} | {:>10.3e} {:>10.3e} {:>6.2}",
            id.to_string(),
            m,
            m1,
            summary.m2.unwrap(),
            summary.sigma_s,
            summary.sigma_e,
            summary.ratio
        );
    }
    println!("\nratios below 1 mean the paired estimator beats independent sampling");
    Ok(())
}

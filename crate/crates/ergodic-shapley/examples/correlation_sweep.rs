//! How the learned correlation evolves with the learning sample size, on
//! three games with very different contribution distributions.
//!
//! The spanning-tree and pair games learn steadily stronger pairings; the
//! symmetric voting game bottoms out immediately because a rare binary
//! contribution admits almost no negative correlation.
//!
//! ```bash
//! cargo run --release --example correlation_sweep
//! ```

use ergodic_shapley::{learn_transformation, make_game, rng, GameId, Result};

fn main() -> Result<()> {
    let grid = [15u64, 40, 100, 250, 610];
    let seeds = 5u64;

    print!("{:<12}", "game \\ m1");
    for m1 in grid {
        print!("{m1:>8}");
    }
    println!();

    let mut counter = 0u64;
    for id in [GameId::Mst, GameId::Pair, GameId::VotingSym] {
        let game = make_game(id, None)?;
        print!("{:<12}", id.to_string());
        for m1 in grid {
            let mut total = 0.0;
            for _ in 0..seeds {
                let learned =
                    learn_transformation(game.as_ref(), 1, m1, &mut rng::substream(5, counter))?;
                total += learned.rho_hat_learning.unwrap_or(0.0);
                counter += 1;
            }
            print!("{:>+8.2}", total / seeds as f64);
        }
        println!();
    }
    Ok(())
}

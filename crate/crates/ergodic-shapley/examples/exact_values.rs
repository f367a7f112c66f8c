//! Exact Shapley values on small games: full enumeration against the known
//! closed forms.
//!
//! ```bash
//! cargo run --release --example exact_values
//! ```

use ergodic_shapley::{brute_force_shapley, exact_shapley, make_game, GameId, Result};

fn main() -> Result<()> {
    // Closed forms at full scale.
    println!("full-scale exact values:");
    for id in GameId::ALL {
        match exact_shapley(id, 1)? {
            Some(value) => println!("  {id:<12} player 1 -> {value}"),
            None => println!("  {id:<12} player 1 -> unknown"),
        }
    }

    // Enumeration at a reduced scale, where all n! orders fit in a blink.
    println!("\nscale-8 enumeration (and the efficiency identity):");
    for id in [GameId::Shoes, GameId::Airport, GameId::Mst, GameId::Bankruptcy, GameId::Pair] {
        let game = make_game(id, Some(8))?;
        let values: Vec<f64> =
            (1..=8).map(|p| brute_force_shapley(game.as_ref(), p)).collect::<Result<_>>()?;
        let total: f64 = values.iter().sum();
        let grand = game.value(&ergodic_shapley::Coalition::grand(8));
        println!("  {id:<12} sum = {total:.6}, v(N) = {grand:.6}");
        println!("    per player: {:?}", values.iter().map(|v| (v * 1e4).round() / 1e4).collect::<Vec<_>>());
    }
    Ok(())
}

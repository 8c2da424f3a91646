//! Erdős–Rényi graphs with self-loops, regenerated until connected.
//!
//! ```text
//! cargo run --example random_topology -- [n] [p] [seed]
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diffusim::topology::{generate_connected_erdos_renyi, MAX_TOPOLOGY_ATTEMPTS};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(20, |v| v.parse().expect("n"));
    let p: f64 = args.next().map_or(0.3, |v| v.parse().expect("p"));
    let seed: u64 = args.next().map_or(1, |v| v.parse().expect("seed"));

    let mut attempts = 0;
    let result = generate_connected_erdos_renyi(n, p, MAX_TOPOLOGY_ATTEMPTS, |attempt| {
        attempts = attempt + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        rng
    });
    match result {
        Ok(g) => {
            println!(
                "n={n} p={p}: connected after {attempts} draw(s), {} edges",
                g.edge_count()
            );
            for i in 0..n.min(10) {
                let nb = g.neighbors(i).expect("node index in range");
                println!("  node {i:>2}: degree {:>2} -> {nb:?}", nb.len() - 1);
            }
            if n > 10 {
                println!("  ...");
            }
        }
        Err(e) => println!("n={n} p={p}: {e}"),
    }
}

// Monte Carlo of the optimal mediator with a finite number of players.

use elfarol::simulate::{check_incentives, run, SimConfig};
use elfarol::{best_mediator, GameParams};

fn main() {
    let params = GameParams::new(2.0, 4.0, 10.0).unwrap();
    let med = best_mediator(&params);
    let dist = med.distribution().expect("not degenerate");

    let cfg = SimConfig::new(10_000, 5_000, 7).unwrap();
    let stats = run(&params, dist, cfg);
    let verdict = check_incentives(&params, dist, &stats, 3.0).unwrap();

    println!(
        "mean cost {:.5} +/- {:.5} (closed form {:.5})",
        stats.mean_per_capita_cost, stats.se_per_capita_cost, med.per_capita_cost
    );
    println!(
        "told to go:   going cost {:?} over {} rounds",
        stats.tagged_go_cost_mean, stats.rounds_go
    );
    println!(
        "told to stay: going would cost {:?} over {} rounds",
        stats.tagged_stay_hypothetical_go_mean, stats.rounds_stay
    );
    println!("incentives hold: {}", verdict.pass);
}

// Closed-form analysis of one game, and the same game with the stay cost
// scaled up.

use elfarol::{analyze, normalize, GameParams, RawGameParams};

fn main() {
    let params = GameParams::new(2.0, 4.0, 10.0).expect("valid parameters");
    let r = analyze(&params);

    println!(
        "c = {}, s1 = {}, s2 = {}",
        params.c(),
        params.s1(),
        params.s2()
    );
    println!("  optimum     y* = {:.4}  cost {:.4}", r.y_star, r.opt_cost);
    println!(
        "  best Nash   y  = {:.4}  cost {:.4}  ({:?})",
        r.nash.y, r.nash.per_capita_cost, r.nash.regime
    );
    println!(
        "  mediator    x* = {:.4}  p = {:.4}  cost {:.4}",
        r.mediator.x_star, r.mediator.p, r.mediator.per_capita_cost
    );
    println!("  MV = {:.4}, EV = {:.4}", r.mv, r.ev);

    // Doubling every cost, including the cost of staying, changes nothing.
    let raw = RawGameParams::new(4.0, 8.0, 20.0, 2.0).expect("valid raw parameters");
    let scaled = analyze(&normalize(&raw).expect("normalizable"));
    println!("stay cost 2: MV = {:.4}, EV = {:.4}", scaled.mv, scaled.ev);

    println!(
        "{}",
        serde_json::to_string_pretty(&r).expect("report serializes")
    );
}

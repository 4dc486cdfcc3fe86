// Cross-check the closed-form mediator against a brute-force grid LP.

use elfarol::oracle::compare_with_closed_form;
use elfarol::{make_family, Family, GameParams};

fn main() {
    let games = [
        GameParams::new(2.0, 4.0, 10.0).unwrap(),
        make_family(Family::UnboundedMv, 0.1).unwrap(),
        make_family(Family::UnboundedEv, 0.1).unwrap(),
        GameParams::new(0.5, 1.0, 1.0).unwrap(),
    ];
    for params in games {
        let cmp = compare_with_closed_form(&params, 201).expect("grid of 201 points");
        println!(
            "c={:.4} s1={:.4} s2={:.4}: oracle {:.6}  closed form {:.6}  |diff| {:.2e} <= {:.3}? {}",
            params.c(),
            params.s1(),
            params.s2(),
            cmp.oracle_cost,
            cmp.analytic_cost,
            cmp.difference,
            cmp.bound,
            cmp.within_bound
        );
        for s in &cmp.support {
            println!("    x = {:.4}  p = {:.6}", s.x, s.p);
        }
    }
}

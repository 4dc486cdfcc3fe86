// Two parameter families on which mediation (MV) or enforcement (EV) gains
// grow without bound as epsilon shrinks.

use elfarol::{analyze, make_family, Family};

fn main() {
    for kind in [Family::UnboundedMv, Family::UnboundedEv] {
        println!("{kind:?}");
        println!(
            "  {:>8} {:>10} {:>10} {:>10} {:>10}",
            "eps", "x*", "MED", "MV", "EV"
        );
        for eps in [0.2, 0.1, 0.05, 0.02, 0.01, 0.001] {
            let params = make_family(kind, eps).expect("eps in (0, 1)");
            let r = analyze(&params);
            println!(
                "  {:>8} {:>10.6} {:>10.6} {:>10.4} {:>10.4}",
                eps, r.mediator.x_star, r.mediator.per_capita_cost, r.mv, r.ev
            );
        }
    }
}

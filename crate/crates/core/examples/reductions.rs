// Shrink a many-configuration correlated equilibrium down to the
// two-configuration shape, one cost-reducing step at a time.

use elfarol::ce::{has_two_configuration_shape, reduce_to_fixpoint, verify_ce};
use elfarol::{expected_social_cost, ConfigDistribution, GameParams};

fn main() {
    let params = GameParams::new(2.0, 4.0, 10.0).unwrap();
    let dist = ConfigDistribution::from_pairs(&[
        (0.05, 0.2),
        (0.1, 0.2),
        (0.3, 0.1),
        (0.52, 0.25),
        (0.56, 0.25),
    ])
    .unwrap();
    assert!(verify_ce(&params, &dist, 1e-9).is_ce);
    println!(
        "start: cost {:.6}  {:?}",
        expected_social_cost(&params, &dist),
        dist.entries()
    );

    let fp = reduce_to_fixpoint(&params, &dist).expect("input is a CE with c > 1");
    for step in &fp.steps {
        println!("  {step:?}");
    }
    println!(
        "end:   cost {:.6}  {:?}  two-configuration shape: {}",
        expected_social_cost(&params, &fp.dist),
        fp.dist.entries(),
        has_two_configuration_shape(&params, &fp.dist)
    );
}

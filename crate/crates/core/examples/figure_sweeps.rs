// The metric sweeps over s1 and s2, written as CSV into the system temp
// directory.

use std::fs::File;

use elfarol::sweep::{run_sweep, write_csv, SweepSpec};

fn main() {
    let dir = std::env::temp_dir();
    for (name, spec) in [
        ("sweep_s1.csv", SweepSpec::figure_s1()),
        ("sweep_s2.csv", SweepSpec::figure_s2()),
    ] {
        let rows = run_sweep(&spec).unwrap();
        let path = dir.join(name);
        write_csv(&rows, File::create(&path).unwrap()).unwrap();
        let (first, last) = (rows[0], rows[rows.len() - 1]);
        println!(
            "{}: {} rows, MV {:.3} -> {:.3}, EV {:.3} -> {:.3}",
            path.display(),
            rows.len(),
            first.mv,
            last.mv,
            first.ev,
            last.ev
        );
    }
}

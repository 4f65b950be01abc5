//! Closure of the 3×3 corner block on an 8×8 grid with r = 3.

use lineperc::grid::cube;
use lineperc::{closure, GridSpec};

fn main() -> lineperc::Result<()> {
    let spec = GridSpec::uniform(8, 2, 3)?;
    let a = cube(3, 2);
    let state = closure(&spec, &a)?;
    println!("initial {} points, infected {} of {}", a.len(), state.infected_count(), spec.num_points());
    println!("percolates: {} after {} rounds", state.percolates(), state.trace().rounds());
    for event in state.trace().events() {
        println!("  round {}: line {}", event.round, spec.decode_line(event.line)?);
    }
    Ok(())
}

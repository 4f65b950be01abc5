//! Exhaustive search for the smallest percolating sets on tiny grids.

use lineperc::minset::min_percolating_size;
use lineperc::GridSpec;

fn main() -> lineperc::Result<()> {
    let specs = [
        GridSpec::uniform(3, 2, 2)?,
        GridSpec::uniform(4, 2, 3)?,
        GridSpec::uniform(2, 3, 2)?,
        GridSpec::new(4, vec![2, 3])?,
    ];
    for spec in &specs {
        let out = min_percolating_size(spec, None)?;
        let witness: Vec<String> = out.witness.iter().map(|p| p.to_string()).collect();
        println!(
            "n={} thresholds {:?}: minimum {:?} after {} subsets ({} pruned), e.g. {{{}}}",
            spec.n(),
            spec.thresholds(),
            out.min_size,
            out.subsets_examined,
            out.subsets_pruned,
            witness.join(" ")
        );
    }
    match min_percolating_size(&GridSpec::uniform(6, 3, 3)?, None) {
        Err(e) => println!("refused: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

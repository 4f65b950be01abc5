//! Vanishing-polynomial certificates for sets smaller than r^d.

use lineperc::grid::{cube, Point};
use lineperc::minset::{certify_non_percolation, eval_rank, verify_construction};
use lineperc::GridSpec;

fn main() -> lineperc::Result<()> {
    let spec = GridSpec::uniform(6, 2, 3)?;
    let mut a = cube(3, 2);
    a.truncate(7);
    a.push(Point(vec![5, 6]));
    let cert = certify_non_percolation(&spec, &a)?;
    println!("{} points, closure {} points, certificate P = {}", cert.initial_size, cert.closure_size, cert.polynomial);
    println!("rank of [3]^2: {}", eval_rank(&cube(3, 2), 3, 2)?);

    let report = verify_construction(&GridSpec::uniform(4, 3, 2)?, 200, 1)?;
    println!("3D r=2: cube percolates {}, {}/{} random sets certified", report.cube_percolates, report.certified, report.random_sets);
    Ok(())
}

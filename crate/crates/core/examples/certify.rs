//! Runs the smoothness certifier over every reference subdivision of Δ(5).

use spinortrop::fixtures::FixtureSource;
use spinortrop::strata::{certify_smooth, Certificate};

fn main() {
    let fixture = FixtureSource::bundled().appendix().unwrap();
    for e in &fixture.subdivisions {
        let sub = e.subdivision().unwrap();
        let cert = certify_smooth(&sub).unwrap();
        println!("{:>2}: {cert}", e.index);
        if let Certificate::Undecided { presentation, .. } = &cert {
            for line in presentation.to_string().lines() {
                println!("      {line}");
            }
        }
    }
}

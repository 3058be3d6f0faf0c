//! The closed-loop steering function on a few boundary value problems.
//!
//! ```text
//! cargo run --example steering
//! ```

use std::f64::consts::PI;

use grips::{State, Steering};

fn main() {
    let st = Steering::default();
    println!("minimum turning radius {:.2} m", st.params.min_turning_radius());
    let from = State::new(0.0, 0.0, 0.0);
    let targets = [
        ("straight ahead", State::new(5.0, 0.0, 0.0)),
        ("ahead and left", State::new(8.0, 4.0, PI / 4.0)),
        ("to the side", State::new(0.0, 6.0, PI / 2.0)),
        ("behind, facing back", State::new(-0.5, 0.0, PI)),
        ("ahead, facing back", State::new(10.0, 0.0, PI)),
    ];
    for (name, to) in targets {
        let r = st.steer(&from, 0.0, &to);
        let end = r.trajectory.end();
        println!(
            "{name:22} reached {:5}  steps {:3}  length {:6.2} m  end ({:6.2}, {:6.2}, {:+.2})",
            r.reached,
            r.trajectory.controls.len(),
            r.trajectory.length,
            end.x,
            end.y,
            end.theta
        );
    }
}

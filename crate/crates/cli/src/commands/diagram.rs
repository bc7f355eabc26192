//! `diagram`: direction sweep of one Cartesian component, CSV rows.

use polarlam::polar::Cartesian4;

use crate::commands::{fail_input, load};
use crate::report::g17;
use crate::{exit, DiagramArgs, TensorChoice};

pub fn run(args: &DiagramArgs) -> u8 {
    if !Cartesian4::COMPONENT_NAMES.contains(&args.component.as_str()) {
        return fail_input(&format!(
            "unknown component {:?}; expected one of {:?}",
            args.component,
            Cartesian4::COMPONENT_NAMES
        ));
    }
    if !args.step_deg.is_finite() || args.step_deg <= 0.0 {
        return fail_input("step-deg must be positive");
    }
    let built = match load(&args.common) {
        Ok(b) => b,
        Err(e) => return fail_input(&e),
    };
    let tensor = match args.tensor {
        TensorChoice::A => built.laminate.a(),
        TensorChoice::B => built.laminate.b(),
        TensorChoice::D => built.laminate.d(),
    };
    println!("theta_deg,value");
    let steps = (360.0 / args.step_deg).round() as usize;
    for i in 0..=steps {
        let theta_deg = i as f64 * args.step_deg;
        if theta_deg > 360.0 + 1e-9 {
            break;
        }
        let c = tensor.to_cartesian_at(theta_deg.to_radians());
        let value = c
            .component(&args.component)
            .expect("component name validated");
        println!("{theta_deg},{}", g17(value));
    }
    exit::OK
}

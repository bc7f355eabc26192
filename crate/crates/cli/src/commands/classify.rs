//! `classify`: symmetry classes of the layer and of the triple.

use serde::Serialize;

use polarlam::polar::DEFAULT_CLASSIFY_TOL;

use crate::commands::{fail_input, load};
use crate::report::{to_json, AnglesDocument, ToolInfo};
use crate::{exit, CommonArgs};

#[derive(Serialize)]
struct ClassifyDocument {
    tool: ToolInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    material: Option<String>,
    a: String,
    b: String,
    d: String,
    angles: AnglesDocument,
}

pub fn run(args: &CommonArgs) -> u8 {
    let built = match load(args) {
        Ok(b) => b,
        Err(e) => return fail_input(&e),
    };
    let lp = &built.laminate;
    let doc = ClassifyDocument {
        tool: ToolInfo::current(),
        material: built
            .material
            .map(|m| m.classify(DEFAULT_CLASSIFY_TOL).to_string()),
        a: lp.a().classify(DEFAULT_CLASSIFY_TOL).to_string(),
        b: lp.b().classify(DEFAULT_CLASSIFY_TOL).to_string(),
        d: lp.d().classify(DEFAULT_CLASSIFY_TOL).to_string(),
        angles: (&built.angles).into(),
    };
    if args.json {
        println!("{}", to_json(&doc));
    } else {
        if let Some(m) = &doc.material {
            println!("material: {m}");
        }
        println!("A: {}", doc.a);
        println!("B: {}", doc.b);
        println!("D: {}", doc.d);
        println!(
            "angles: Phi_A {:.4} Phi_B {:.4} Phi_D {:.4} delta_A {:.4} delta_D {:.4} (deg)",
            doc.angles.phi_a_deg,
            doc.angles.phi_b_deg,
            doc.angles.phi_d_deg,
            doc.angles.delta_a_deg,
            doc.angles.delta_d_deg
        );
    }
    exit::OK
}

//! `abd`: compute and print the laminate triple.

use serde::Serialize;

use crate::commands::{fail_input, load};
use crate::report::{to_json, LaminateDocument, ToolInfo};
use crate::{exit, CommonArgs};

#[derive(Serialize)]
struct AbdDocument {
    tool: ToolInfo,
    input: crate::input::InputDocument,
    laminate: LaminateDocument,
}

pub fn run(args: &CommonArgs) -> u8 {
    let built = match load(args) {
        Ok(b) => b,
        Err(e) => return fail_input(&e),
    };
    if built.stacking.is_none() {
        return fail_input("abd requires a stacking_deg input");
    }
    let doc = AbdDocument {
        tool: ToolInfo::current(),
        laminate: LaminateDocument::new(&built.laminate, &built.angles),
        input: built.document,
    };
    if args.json {
        println!("{}", to_json(&doc));
    } else {
        let l = &doc.laminate;
        println!("thickness: {}", l.thickness);
        for (name, t) in [("A", &l.a), ("B", &l.b), ("D", &l.d)] {
            println!(
                "{name}: T0 {:.6} T1 {:.6} R0 {:.6} R1 {:.6} Phi0 {:.4} deg Phi1 {:.4} deg  [{}]",
                t.t0, t.t1, t.r0, t.r1, t.phi0_deg, t.phi1_deg, t.symmetry
            );
            println!(
                "   cartesian: {:.6} {:.6} {:.6} {:.6} {:.6} {:.6}",
                t.cartesian.t1111,
                t.cartesian.t1112,
                t.cartesian.t1122,
                t.cartesian.t1212,
                t.cartesian.t1222,
                t.cartesian.t2222
            );
        }
        if l.coupling_is_zero {
            println!("coupling: exactly zero");
        }
        let a = &l.angles;
        println!(
            "angles: Phi_A {:.4} Phi_B {:.4} Phi_D {:.4} delta_A {:.4} delta_D {:.4} (deg)",
            a.phi_a_deg, a.phi_b_deg, a.phi_d_deg, a.delta_a_deg, a.delta_d_deg
        );
        if a.delta_a_conventional || a.delta_d_conventional {
            println!("note: shift angles rest on vanishing-modulus conventions");
        }
    }
    exit::OK
}
